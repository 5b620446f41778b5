//! Truncated power series `Σ_{k ≤ T} c_k q^k`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{Field, Ring};
use super::poly::{Poly, Terms};
use crate::error::{KostkaError, Result};

/// A power series known exactly through `q^trunc`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> QSeries<R> {
    pub fn zero(trunc: usize) -> Self {
        QSeries { coeffs: vec![R::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = R::one();
        s
    }

    /// Pads or truncates `coeffs` to length `trunc + 1`.
    pub fn from_coeffs(mut coeffs: Vec<R>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, R::zero());
        QSeries { coeffs }
    }

    pub fn from_poly(p: &Poly<R>, trunc: usize) -> Self {
        Self::from_coeffs(p.coeffs().iter().take(trunc + 1).cloned().collect(), trunc)
    }

    pub fn monomial(c: R, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: R) {
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Highest power with a nonzero coefficient.
    pub fn top(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc(), "cannot extend a truncated series");
        QSeries { coeffs: self.coeffs[..=trunc].to_vec() }
    }

    pub fn to_poly(&self) -> Poly<R> {
        Poly::new(self.coeffs.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let t = self.trunc().min(o.trunc());
        QSeries { coeffs: (0..=t).map(|k| self.coeffs[k].radd(&o.coeffs[k])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let t = self.trunc().min(o.trunc());
        QSeries { coeffs: (0..=t).map(|k| self.coeffs[k].rsub(&o.coeffs[k])).collect() }
    }

    pub fn neg(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|c| c.rneg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = self.trunc().min(o.trunc());
        let mut v = vec![R::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(t + 1 - i) {
                v[i + j].add_mul_assign(a, b);
            }
        }
        QSeries { coeffs: v }
    }

    pub fn scale(&self, c: &R) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|a| a.rmul(c)).collect() }
    }

    /// Multiply by `q^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let t = self.trunc();
        let mut v = vec![R::zero(); t + 1];
        for i in k..=t {
            v[i] = self.coeffs[i - k].clone();
        }
        QSeries { coeffs: v }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        QSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<F: Field> QSeries<F> {
    /// `c` with `c * b = a` through the common truncation.
    pub fn div(&self, b: &Self) -> Result<Self> {
        series_div(self, b)
    }

    pub fn inv(&self) -> Result<Self> {
        series_div(&Self::one(self.trunc()), self)
    }
}

/// Power-series division; the divisor needs an invertible constant term.
pub fn series_div<F: Field>(a: &QSeries<F>, b: &QSeries<F>) -> Result<QSeries<F>> {
    let t = a.trunc().min(b.trunc());
    let b0_inv = b.coeffs[0].inv().ok_or(KostkaError::NotAUnit)?;
    let mut c: Vec<F> = Vec::with_capacity(t + 1);
    for k in 0..=t {
        let mut acc = a.coeffs[k].clone();
        for j in 1..=k {
            acc.sub_mul_assign(&b.coeffs[j], &c[k - j]);
        }
        c.push(acc.rmul(&b0_inv));
    }
    Ok(QSeries { coeffs: c })
}

impl<R: Ring + fmt::Display> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", Terms(&self.coeffs, "q"), self.trunc() + 1)
    }
}

impl<R: Ring + fmt::Display> Serialize for QSeries<R> {
    /// Serialized as the array of coefficient strings `c_0 … c_T`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::Q;
    use proptest::prelude::*;

    fn s(v: &[i64], t: usize) -> QSeries<Q> {
        QSeries::from_coeffs(v.iter().map(|&x| Q::from_int(x)).collect(), t)
    }

    #[test]
    fn division_examples() {
        assert_eq!(series_div(&s(&[1], 3), &s(&[1, -1], 3)).unwrap(), s(&[1, 1, 1, 1], 3));
        assert_eq!(series_div(&s(&[1, 0, -1], 3), &s(&[1, -1], 3)).unwrap(), s(&[1, 1], 3));
        assert_eq!(series_div(&s(&[0, 1], 5), &s(&[1, 0, -1], 5)).unwrap(), s(&[0, 1, 0, 1, 0, 1], 5));
        assert!(matches!(series_div(&s(&[1], 3), &s(&[0, 1], 3)), Err(KostkaError::NotAUnit)));
    }

    #[test]
    fn truncation_never_extends() {
        let a = s(&[1, 2, 3], 5);
        let b = s(&[1, 1], 2);
        assert_eq!(a.mul(&b).trunc(), 2);
        assert_eq!(a.add(&b).trunc(), 2);
        assert_eq!(series_div(&a, &b).unwrap().trunc(), 2);
    }

    fn arb(t: usize) -> impl Strategy<Value = QSeries<Q>> {
        proptest::collection::vec(-9i64..9, t + 1).prop_map(move |v| s(&v, t))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb(6), b in arb(6), c in arb(6)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn div_inverts_mul(a in arb(6), mut b in arb(6)) {
            b.set_coeff(0, Q::from_int(3));
            prop_assert_eq!(series_div(&a.mul(&b), &b).unwrap(), a);
        }
    }
}
