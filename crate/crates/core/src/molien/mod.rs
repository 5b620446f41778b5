//! Graded multiplicities in `L_ψ ⊗ S h` by Molien sums: the pairing
//! matrix Ω, invariant degrees and fake degrees.

mod class;

use rayon::prelude::*;

pub use class::{Decomposition, GradedClass};

use crate::error::{KostkaError, Result};
use crate::linalg::Mat;
use crate::scalars::{ratfun_normalize, Cyclo, Poly, QSeries, RatFun, Ring, Q};
use crate::wgroup::{char_poly_h, CharacterTable, ReflectionGroup};

/// Per-class Molien data over the common denominator `(1 - q^E)^{dim h}`,
/// `E` the exponent of the group.
#[derive(Clone, Debug)]
pub struct MolienSums {
    den: Poly<Q>,
    /// `|c| · (1 - q^E)^{dim h} / det(1 - q w_c)` for each class `c`.
    weighted: Vec<Poly<Cyclo>>,
    order: usize,
}

impl MolienSums {
    pub fn new(g: &ReflectionGroup) -> Self {
        let e = g.exponent();
        let base = Poly::one_minus(Q::ONE, e).pow(g.dim_h());
        let base_c = base.map(|c| Cyclo::from_q(c.clone()));
        let weighted = g
            .classes()
            .par_iter()
            .map(|c| {
                let p = char_poly_h(g, c.rep);
                base_c.div_exact(&p).expect("eigenvalues are E-th roots of unity").scale(&Cyclo::from_int(c.size as i64))
            })
            .collect();
        MolienSums { den: base, weighted, order: g.order() }
    }

    /// `(1/|W|) Σ_c |c| f(c) / det(1 - q w_c)` for a class function `f`
    /// whose Molien sum has rational coefficients.
    pub fn sum(&self, f: &[Cyclo]) -> RatFun {
        let mut num = Poly::<Cyclo>::zero();
        for (w, v) in self.weighted.iter().zip(f) {
            if !v.is_zero() {
                num = num.add(&w.scale(v));
            }
        }
        let inv_order = Q::new(1, self.order as i64);
        let num: Poly<Q> = Poly::new(
            num.coeffs()
                .iter()
                .map(|c| c.as_rational().expect("Molien sum of a rational-valued pairing") * &inv_order)
                .collect(),
        );
        ratfun_normalize(&num, &self.den).expect("nonzero denominator")
    }
}

/// Class function `conj(χ) · ψ`.
fn pair_values(t: &CharacterTable, chi: usize, psi: usize) -> Vec<Cyclo> {
    t.row(chi).iter().zip(t.row(psi)).map(|(a, b)| a.conj().rmul(b)).collect()
}

/// `Ω_{χψ}(q) = Σ_k q^k [L_ψ ⊗ S^k h : L_χ]`.
pub fn molien_pairing(g: &ReflectionGroup, t: &CharacterTable, chi: usize, psi: usize) -> RatFun {
    MolienSums::new(g).sum(&pair_values(t, chi, psi))
}

/// The full matrix `Ω`, rows and columns in table order.
pub fn omega_matrix(g: &ReflectionGroup, t: &CharacterTable) -> Mat<RatFun> {
    let ms = MolienSums::new(g);
    let n = t.len();
    let entries: Vec<RatFun> = (0..n * n).into_par_iter().map(|ij| ms.sum(&pair_values(t, ij / n, ij % n))).collect();
    Mat::from_rows(entries.chunks(n).map(|r| r.to_vec()).collect())
}

/// Degrees `d_i` with `Ω_{triv,triv} = Π 1/(1 - q^{d_i})`, ascending.
pub fn invariant_degrees(g: &ReflectionGroup, t: &CharacterTable) -> Result<Vec<usize>> {
    let triv = t.trivial().ok_or_else(|| KostkaError::NotAReflectionGroup("table has no trivial character".into()))?;
    let mut r = molien_pairing(g, t, triv, triv);
    let bound = g.order() + 1;
    let mut degrees = Vec::new();
    while r != RatFun::one() {
        if degrees.len() >= g.dim_h() {
            return Err(KostkaError::NotAReflectionGroup(format!(
                "invariant ring is not polynomial: more than {} generators",
                g.dim_h()
            )));
        }
        let s = r.expand(bound)?;
        let Some(k) = (1..=bound).find(|&k| !s.coeff(k).is_zero()) else {
            return Err(KostkaError::NotAReflectionGroup("Molien series has no generator in degree <= |W|".into()));
        };
        let c = s.coeff(k);
        if !(c.is_integer() && !c.is_negative()) {
            return Err(KostkaError::NotAReflectionGroup(format!("Molien coefficient {c} in degree {k}")));
        }
        degrees.push(k);
        r = r.rmul(&RatFun::from_poly(Poly::one_minus(Q::ONE, k)));
    }
    let prod: usize = degrees.iter().product();
    if degrees.len() != g.dim_h() || prod != g.order() {
        return Err(KostkaError::NotAReflectionGroup(format!(
            "degrees {degrees:?} do not multiply to |W| = {} over dim h = {}",
            g.order(),
            g.dim_h()
        )));
    }
    Ok(degrees)
}

/// Graded multiplicity of `χ` in the coinvariant algebra.
pub fn fake_degree(g: &ReflectionGroup, t: &CharacterTable, degrees: &[usize], chi: usize) -> Result<Poly<Q>> {
    let triv = t.trivial().ok_or_else(|| KostkaError::NotAReflectionGroup("table has no trivial character".into()))?;
    let prod = degrees.iter().fold(Poly::one(), |acc, &d| acc.mul(&Poly::one_minus(Q::ONE, d)));
    let f = molien_pairing(g, t, chi, triv).rmul(&RatFun::from_poly(prod));
    if !f.is_polynomial() {
        return Err(KostkaError::NotAReflectionGroup(format!("fake degree of {} is not a polynomial", t.name(chi))));
    }
    let c = f.den().coeff(0).inv().expect("nonzero");
    Ok(f.num().scale(&c))
}

/// `2 Σ (d_i - 1) + 4`.
pub fn default_trunc(degrees: &[usize]) -> usize {
    2 * degrees.iter().map(|d| d - 1).sum::<usize>() + 4
}

/// Graded character of `S h`: `1 / det(1 - q w)` per class.
pub fn symmetric_algebra_class(g: &ReflectionGroup, trunc: usize) -> Result<GradedClass> {
    let series = g
        .classes()
        .iter()
        .map(|c| {
            let p = char_poly_h(g, c.rep);
            QSeries::one(trunc).div(&QSeries::from_poly(&p, trunc))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedClass::from_series(series))
}

/// Graded character of `P_χ = L_χ ⊗ S h`.
pub fn projective_class(g: &ReflectionGroup, t: &CharacterTable, chi: usize, trunc: usize) -> Result<GradedClass> {
    let s = symmetric_algebra_class(g, trunc)?;
    Ok(GradedClass::from_series(
        s.series().iter().zip(t.row(chi)).map(|(x, v)| x.scale(v)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_group;

    fn p(v: &[i64]) -> Poly<Q> {
        Poly::new(v.iter().map(|&x| Q::from_int(x)).collect())
    }

    #[test]
    fn s2_pairings() {
        let (g, t) = builtin_group("S2").unwrap();
        let (s, tr) = (t.resolve(&g, "sgn").unwrap(), t.resolve(&g, "triv").unwrap());
        assert_eq!(molien_pairing(&g, &t, tr, tr), RatFun::molien(Poly::one(), &[2]));
        assert_eq!(molien_pairing(&g, &t, tr, s), RatFun::molien(p(&[0, 1]), &[2]));
        assert_eq!(invariant_degrees(&g, &t).unwrap(), vec![2]);
        assert_eq!(fake_degree(&g, &t, &[2], tr).unwrap(), Poly::one());
        assert_eq!(fake_degree(&g, &t, &[2], s).unwrap(), p(&[0, 1]));
    }

    #[test]
    fn trivial_and_cyclic() {
        let (g, t) = builtin_group("trivial").unwrap();
        assert_eq!(omega_matrix(&g, &t)[(0, 0)], RatFun::molien(Poly::one(), &[1]));
        assert_eq!(invariant_degrees(&g, &t).unwrap(), vec![1]);
        let (g, t) = builtin_group("C3").unwrap();
        let om = omega_matrix(&g, &t);
        for i in 0..3 {
            assert_eq!(om[(i, i)], RatFun::molien(Poly::one(), &[3]));
        }
        assert_eq!(invariant_degrees(&g, &t).unwrap(), vec![3]);
    }

    #[test]
    fn s3_degrees_and_fake_degrees() {
        let (g, t) = builtin_group("S3").unwrap();
        let d = invariant_degrees(&g, &t).unwrap();
        assert_eq!(d, vec![2, 3]);
        let refl = t.resolve(&g, "2,1").unwrap();
        assert_eq!(fake_degree(&g, &t, &d, refl).unwrap(), p(&[0, 1, 1]));
    }

    #[test]
    fn degrees_of_all_builtins() {
        for (name, want) in [("S4", vec![2, 3, 4]), ("B2", vec![2, 4]), ("G2", vec![2, 6]), ("S5", vec![2, 3, 4, 5])] {
            let (g, t) = builtin_group(name).unwrap();
            assert_eq!(invariant_degrees(&g, &t).unwrap(), want, "{name}");
        }
    }
}
