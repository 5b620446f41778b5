//! Rational functions in `q` over `Q`, kept reduced.
//!
//! Normal form: `gcd(num, den) = 1`, and the denominator has constant
//! term 1 when `q` does not divide it (otherwise it is monic). Equality is
//! therefore structural.

use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{Field, Ring};
use super::poly::{cyclotomic_poly, totient, Poly};
use super::rational::Q;
use super::series::QSeries;
use crate::error::{KostkaError, Result};
use crate::linalg::{solve, Mat};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly<Q>,
    den: Poly<Q>,
}

/// Reduce `num/den` to normal form.
pub fn ratfun_normalize(num: &Poly<Q>, den: &Poly<Q>) -> Result<RatFun> {
    if den.is_zero() {
        return Err(KostkaError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(RatFun::zero_value());
    }
    let g = num.gcd(den);
    let mut n = num.div_exact(&g).expect("gcd divides");
    let mut d = den.div_exact(&g).expect("gcd divides");
    let c0 = d.coeff(0);
    let lead = if c0.is_zero() { d.leading().cloned().expect("nonzero") } else { c0 };
    let li = lead.inv().expect("nonzero");
    n = n.scale(&li);
    d = d.scale(&li);
    Ok(RatFun { num: n, den: d })
}

impl RatFun {
    fn zero_value() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<Q>) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn from_q(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn new(num: &Poly<Q>, den: &Poly<Q>) -> Result<Self> {
        ratfun_normalize(num, den)
    }

    /// `1 / Π (1 - q^{k})` over the given exponents.
    pub fn molien(num: Poly<Q>, ks: &[usize]) -> Self {
        let den = ks.iter().fold(Poly::one(), |acc, &k| acc.mul(&Poly::one_minus(Q::ONE, k)));
        ratfun_normalize(&num, &den).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Poly<Q> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Q> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Power series expansion through `q^trunc`.
    pub fn expand(&self, trunc: usize) -> Result<QSeries<Q>> {
        QSeries::from_poly(&self.num, trunc).div(&QSeries::from_poly(&self.den, trunc))
    }

    /// Rewrite as `n' / Π(1 - q^{k_i})` when the denominator is a product of
    /// cyclotomic polynomials. Exponents are ascending.
    pub fn molien_form(&self) -> Option<(Poly<Q>, Vec<usize>)> {
        let deg = self.den.degree()?;
        if deg == 0 {
            return Some((self.num.clone(), Vec::new()));
        }
        if !self.den.coeff(0).is_one() {
            return None;
        }
        let mut rest = self.den.clone();
        let mut mult: Vec<usize> = vec![0; 2 * deg * deg + 3];
        for j in 1..mult.len() {
            if totient(j) > deg {
                continue;
            }
            let phi = cyclotomic_poly(j);
            while let Some(q) = rest.div_exact(&phi) {
                rest = q;
                mult[j] += 1;
            }
        }
        if rest.degree() != Some(0) {
            return None;
        }
        // Greedy: take the largest remaining index, remove all its divisors.
        let mut ks = Vec::new();
        while let Some(j) = (1..mult.len()).rev().find(|&j| mult[j] > 0) {
            ks.push(j);
            for d in 1..=j {
                if j % d == 0 && mult[d] > 0 {
                    mult[d] -= 1;
                }
            }
        }
        ks.sort_unstable();
        let big = ks.iter().fold(Poly::one(), |acc, &k| acc.mul(&Poly::one_minus(Q::ONE, k)));
        let cof = big.div_exact(&self.den)?;
        Some((self.num.mul(&cof), ks))
    }
}

/// Fit a rational function with `deg num ≤ a`, `deg den ≤ b`, `den(0) = 1`
/// to the series `s`; needs `a + b + 1 ≤ trunc`. The fit is checked
/// against every known coefficient.
pub fn fit_ratfun(s: &QSeries<Q>, a: usize, b: usize) -> Option<RatFun> {
    let t = s.trunc();
    if a + b + 1 > t {
        return None;
    }
    // Unknowns d_1..d_b: for k in a+1..=t, Σ_{j=0}^{b} d_j s_{k-j} = 0.
    let rows: Vec<Vec<Q>> = (a + 1..=t)
        .map(|k| (1..=b).map(|j| if j <= k { s.coeff(k - j).clone() } else { Q::ZERO }).collect())
        .collect();
    let rhs: Vec<Q> = (a + 1..=t).map(|k| -s.coeff(k)).collect();
    let d = if b == 0 { Vec::new() } else { solve(&Mat::from_rows(rows), &rhs)? };
    let mut den = vec![Q::ONE];
    den.extend(d);
    let den = Poly::new(den);
    let num = s.mul(&QSeries::from_poly(&den, t)).truncate(a).to_poly();
    let r = ratfun_normalize(&num, &den).ok()?;
    (r.expand(t).ok()? == *s).then_some(r)
}

impl Ring for RatFun {
    fn zero() -> Self {
        Self::zero_value()
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        if self.den == o.den {
            return ratfun_normalize(&self.num.add(&o.num), &self.den).expect("nonzero");
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        ratfun_normalize(&n, &self.den.mul(&o.den)).expect("nonzero")
    }
    fn rsub(&self, o: &Self) -> Self {
        self.radd(&o.rneg())
    }
    fn rmul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero_value();
        }
        ratfun_normalize(&self.num.mul(&o.num), &self.den.mul(&o.den)).expect("nonzero")
    }
    fn rneg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_q(q: &Q) -> Self {
        Self::from_q(q.clone())
    }
}

impl Field for RatFun {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        ratfun_normalize(&self.den, &self.num).ok()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |p: &Poly<Q>| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s }
        };
        if self.is_polynomial() {
            let c = self.den.coeff(0);
            return write!(f, "{}", self.num.scale(&c.inv().expect("nonzero")));
        }
        match self.molien_form() {
            Some((n, ks)) => {
                write!(f, "{}/", paren(&n))?;
                for k in ks {
                    if k == 1 {
                        write!(f, "(1 - q)")?;
                    } else {
                        write!(f, "(1 - q^{k})")?;
                    }
                }
                Ok(())
            }
            None => write!(f, "{}/{}", paren(&self.num), paren(&self.den)),
        }
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[i64]) -> Poly<Q> {
        Poly::new(v.iter().map(|&x| Q::from_int(x)).collect())
    }

    #[test]
    fn normalize_cancels() {
        // (q^2 - 1)/(q - 1) = 1 + q
        let r = ratfun_normalize(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(r, RatFun::from_poly(p(&[1, 1])));
        assert!(matches!(ratfun_normalize(&p(&[1]), &Poly::zero()), Err(KostkaError::DivisionByZero)));
    }

    #[test]
    fn molien_quotient_keeps_a_pole() {
        // (1-q^4)/((1-q)(1-q^2)) = (1+q^2)/(1-q)
        let r = ratfun_normalize(&p(&[1, 0, 0, 0, -1]), &p(&[1, -1]).mul(&p(&[1, 0, -1]))).unwrap();
        assert_eq!(r, ratfun_normalize(&p(&[1, 0, 1]), &p(&[1, -1])).unwrap());
        assert_eq!(r.to_string(), "(1 + q^2)/(1 - q)");
    }

    #[test]
    fn display_molien_form() {
        let r = RatFun::molien(Poly::one(), &[2, 3]);
        assert_eq!(r.to_string(), "1/(1 - q^2)(1 - q^3)");
        let r = RatFun::molien(p(&[0, 1]), &[2]);
        assert_eq!(r.to_string(), "q/(1 - q^2)");
        // (1+q)/(1-q^3)... denominator 1 - q^3 stays a single factor
        let r = RatFun::molien(p(&[1, 1]), &[3]);
        assert_eq!(r.molien_form().unwrap().1, vec![3]);
    }

    #[test]
    fn expand_geometric() {
        let r = RatFun::molien(Poly::one(), &[2]);
        let s = r.expand(5).unwrap();
        assert_eq!(s.coeffs(), &[1, 0, 1, 0, 1, 0].map(Q::from_int));
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (proptest::collection::vec(-4i64..4, 0..4), proptest::collection::vec(1usize..4, 0..3))
            .prop_map(|(n, ks)| RatFun::molien(p(&n), &ks))
    }

    proptest! {
        #[test]
        fn expand_then_refit(r in arb_ratfun()) {
            let s = r.expand(16).unwrap();
            prop_assert_eq!(fit_ratfun(&s, 3, 9), Some(r));
        }

        #[test]
        fn field_laws(a in arb_ratfun(), b in arb_ratfun()) {
            prop_assert_eq!(a.radd(&b).rsub(&b), a.clone());
            if let Some(bi) = b.inv() {
                prop_assert_eq!(a.rmul(&b).rmul(&bi), a);
            }
        }
    }
}
