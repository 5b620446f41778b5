//! Exact scalars: rationals, cyclotomic numbers, polynomials, truncated
//! series and rational functions in `q`.

pub mod cyclo;
pub mod field;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod scalar;
pub mod series;

pub use cyclo::{cyclo_conj, cyclo_reduce, Cyclo};
pub use field::{Field, Ring};
pub use poly::{cyclotomic_poly, Poly};
pub use ratfun::{ratfun_normalize, RatFun};
pub use rational::Q;
pub use scalar::Scalar;
pub use series::{series_div, QSeries};
