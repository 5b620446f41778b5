//! Elements of the cyclotomic field `Q(ζ_N)` in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}`.
//!
//! Every element carries its conductor. Elements whose value is rational
//! combine freely with elements of any conductor; two genuinely irrational
//! elements must share a conductor.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::field::{Field, Ring};
use super::poly::{cyclotomic_poly, Poly, Terms};
use super::rational::Q;
use crate::error::{KostkaError, Result};

type Coeffs = SmallVec<[Q; 2]>;

const CACHED_CONDUCTORS: usize = 64;

/// Coefficients of the monic `Φ_n`, cached for small conductors.
fn phi_poly(n: u32) -> std::borrow::Cow<'static, [Q]> {
    static CACHE: [OnceLock<Vec<Q>>; CACHED_CONDUCTORS + 1] = [const { OnceLock::new() }; CACHED_CONDUCTORS + 1];
    let compute = || cyclotomic_poly(n as usize).into_coeffs();
    if (n as usize) <= CACHED_CONDUCTORS {
        std::borrow::Cow::Borrowed(CACHE[n as usize].get_or_init(compute).as_slice())
    } else {
        std::borrow::Cow::Owned(compute())
    }
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclo {
    conductor: u32,
    coeffs: Coeffs,
}

/// Reduce a coefficient vector (powers of `ζ_n`) modulo `Φ_n` in place.
fn reduce_in_place(v: &mut Vec<Q>, n: u32) {
    let phi = phi_poly(n);
    let d = phi.len() - 1;
    // x^n = 1 first, so the remaining division is short.
    if v.len() > n as usize {
        for k in (n as usize..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if !c.is_zero() {
                let t = &v[k % n as usize] + &c;
                v[k % n as usize] = t;
            }
        }
        v.truncate(n as usize);
    }
    if v.len() > d {
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                v[k - d + j].sub_mul_assign(&c, &phi[j]);
            }
        }
    }
    v.resize(d, Q::ZERO);
}

/// Residue of `Σ coeffs[i] ζ_n^i` modulo the `n`-th cyclotomic polynomial.
pub fn cyclo_reduce(coeffs: &[Q], n: i64) -> Result<Cyclo> {
    if n < 1 {
        return Err(KostkaError::InvalidConductor(n));
    }
    let n = u32::try_from(n).map_err(|_| KostkaError::InvalidConductor(n))?;
    let mut v = coeffs.to_vec();
    reduce_in_place(&mut v, n);
    Ok(Cyclo { conductor: n, coeffs: v.into() })
}

/// Complex conjugation `ζ_N ↦ ζ_N^{-1}`.
pub fn cyclo_conj(x: &Cyclo) -> Cyclo {
    x.conj()
}

impl Cyclo {
    pub fn from_q(q: Q) -> Cyclo {
        let mut coeffs = Coeffs::new();
        coeffs.push(q);
        Cyclo { conductor: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Cyclo {
        Cyclo::from_q(Q::from_int(n))
    }

    /// A rational number viewed inside `Q(ζ_n)`.
    pub fn rational_in(q: Q, n: u32) -> Cyclo {
        let d = phi_poly(n).len() - 1;
        let mut coeffs: Coeffs = SmallVec::from_elem(Q::ZERO, d);
        coeffs[0] = q;
        Cyclo { conductor: n, coeffs }
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> Cyclo {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Q::ZERO; e + 1];
        v[e] = Q::ONE;
        reduce_in_place(&mut v, n);
        Cyclo { conductor: n, coeffs: v.into() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-express in conductor `n`; only possible when rational or already there.
    pub fn with_conductor(&self, n: u32) -> Option<Cyclo> {
        if self.conductor == n {
            return Some(self.clone());
        }
        self.as_rational().map(|q| Cyclo::rational_in(q.clone(), n))
    }

    /// The same number written in `Q(ζ_n)`; requires the current conductor
    /// to divide `n` unless the value is rational.
    pub fn embed(&self, n: u32) -> Option<Cyclo> {
        if let Some(q) = self.as_rational() {
            return Some(Cyclo::rational_in(q.clone(), n));
        }
        if !n.is_multiple_of(self.conductor) {
            return None;
        }
        let step = (n / self.conductor) as usize;
        let mut v = vec![Q::ZERO; step * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        reduce_in_place(&mut v, n);
        Some(Cyclo { conductor: n, coeffs: v.into() })
    }

    pub fn conj(&self) -> Cyclo {
        let n = self.conductor;
        if self.is_rational() {
            return self.clone();
        }
        let mut v = vec![Q::ZERO; n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let j = (n as usize - i) % n as usize;
                v[j] = &v[j] + c;
            }
        }
        reduce_in_place(&mut v, n);
        Cyclo { conductor: n, coeffs: v.into() }
    }

    /// Common conductor for a binary operation, promoting rationals.
    fn align<'a>(a: &'a Cyclo, b: &'a Cyclo) -> (std::borrow::Cow<'a, Cyclo>, std::borrow::Cow<'a, Cyclo>) {
        use std::borrow::Cow;
        if a.conductor == b.conductor {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        if a.is_rational() {
            return (Cow::Owned(Cyclo::rational_in(a.coeffs[0].clone(), b.conductor)), Cow::Borrowed(b));
        }
        if b.is_rational() {
            return (Cow::Borrowed(a), Cow::Owned(Cyclo::rational_in(b.coeffs[0].clone(), a.conductor)));
        }
        panic!("mixed cyclotomic conductors {} and {}", a.conductor, b.conductor)
    }

    fn mul_impl(&self, o: &Cyclo) -> Cyclo {
        if let Some(q) = self.as_rational() {
            return o.scale(q);
        }
        if let Some(q) = o.as_rational() {
            return self.scale(q);
        }
        let (a, b) = Cyclo::align(self, o);
        let n = a.conductor;
        let mut v = vec![Q::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j].add_mul_assign(x, y);
            }
        }
        reduce_in_place(&mut v, n);
        Cyclo { conductor: n, coeffs: v.into() }
    }

    pub fn scale(&self, q: &Q) -> Cyclo {
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    fn zip(&self, o: &Cyclo, f: impl Fn(&Q, &Q) -> Q) -> Cyclo {
        let (a, b) = Cyclo::align(self, o);
        Cyclo {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(b.coeffs.iter()).map(|(x, y)| f(x, y)).collect(),
        }
    }

    pub fn inverse(&self) -> Option<Cyclo> {
        if let Some(q) = self.as_rational() {
            return q.inv().map(|i| Cyclo::rational_in(i, self.conductor));
        }
        let n = self.conductor;
        let phi = Poly::new(phi_poly(n).to_vec());
        let me = Poly::new(self.coeffs.to_vec());
        let (g, s, _) = me.ext_gcd(&phi);
        debug_assert!(g == Poly::one(), "cyclotomic polynomial is irreducible");
        let mut v = s.into_coeffs();
        reduce_in_place(&mut v, n);
        Some(Cyclo { conductor: n, coeffs: v.into() })
    }

    pub fn pow(&self, e: u32) -> Cyclo {
        let mut acc = Cyclo::from_int(1);
        for _ in 0..e {
            acc = acc.mul_impl(self);
        }
        acc
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        if self.conductor == o.conductor {
            return self.coeffs == o.coeffs;
        }
        match (self.as_rational(), o.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Cyclo {}

impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self.as_rational() {
            Some(q) => {
                1u32.hash(state);
                q.hash(state);
            }
            None => {
                self.conductor.hash(state);
                for c in &self.coeffs {
                    c.hash(state);
                }
            }
        }
    }
}

impl Ring for Cyclo {
    fn zero() -> Cyclo {
        Cyclo::from_q(Q::ZERO)
    }
    fn one() -> Cyclo {
        Cyclo::from_q(Q::ONE)
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn radd(&self, o: &Cyclo) -> Cyclo {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        self.zip(o, |x, y| x + y)
    }
    fn rsub(&self, o: &Cyclo) -> Cyclo {
        if o.is_zero() {
            return self.clone();
        }
        self.zip(o, |x, y| x - y)
    }
    fn rmul(&self, o: &Cyclo) -> Cyclo {
        self.mul_impl(o)
    }
    fn rneg(&self) -> Cyclo {
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn from_q(q: &Q) -> Cyclo {
        Cyclo::from_q(q.clone())
    }
    fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    fn sub_mul_assign(&mut self, a: &Cyclo, b: &Cyclo) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        // Fast path: everything rational in the same conductor.
        if self.conductor == a.conductor && a.conductor == b.conductor && self.coeffs.len() == 1 {
            let (x, y) = (&a.coeffs[0], &b.coeffs[0]);
            self.coeffs[0].sub_mul_assign(x, y);
            return;
        }
        let p = a.mul_impl(b);
        *self = self.rsub(&p);
    }

    fn add_mul_assign(&mut self, a: &Cyclo, b: &Cyclo) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if self.conductor == a.conductor && a.conductor == b.conductor && self.coeffs.len() == 1 {
            let (x, y) = (&a.coeffs[0], &b.coeffs[0]);
            self.coeffs[0].add_mul_assign(x, y);
            return;
        }
        let p = a.mul_impl(b);
        *self = self.radd(&p);
    }
}

impl Field for Cyclo {
    fn inv(&self) -> Option<Cyclo> {
        if self.is_zero() {
            None
        } else {
            self.inverse()
        }
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, o: &Cyclo) -> Cyclo {
        self.radd(o)
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, o: &Cyclo) -> Cyclo {
        self.rsub(o)
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, o: &Cyclo) -> Cyclo {
        self.rmul(o)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.rneg()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => {
                let var = format!("z{}", self.conductor);
                write!(f, "{}", Terms(&self.coeffs, &var))
            }
        }
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloDoc {
    conductor: i64,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloDoc {
            conductor: self.conductor as i64,
            coeffs: self.coeffs.iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect(),
        }
        .serialize(s)
    }
}

/// Accepted input shapes: the canonical object, a rational string, or an integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum CycloInput {
    Doc(CycloDoc),
    Text(String),
    Int(i64),
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Cyclo, D::Error> {
        use serde::de::Error;
        match CycloInput::deserialize(d)? {
            CycloInput::Int(n) => Ok(Cyclo::from_int(n)),
            CycloInput::Text(t) => t.trim().parse::<Q>().map(Cyclo::from_q).map_err(D::Error::custom),
            CycloInput::Doc(doc) => {
                let coeffs = doc
                    .coeffs
                    .iter()
                    .map(|[p, q]| format!("{p}/{q}").parse::<Q>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(D::Error::custom)?;
                cyclo_reduce(&coeffs, doc.conductor).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(cyclo_reduce(&[q(5)], 1).unwrap(), Cyclo::from_int(5));
        assert_eq!(cyclo_reduce(&[q(0), q(0), q(0), q(1)], 3).unwrap(), Cyclo::from_int(1));
        assert_eq!(cyclo_reduce(&[q(0), q(1), q(1)], 3).unwrap(), Cyclo::from_int(-1));
        assert!(matches!(cyclo_reduce(&[q(1)], 0), Err(KostkaError::InvalidConductor(0))));
    }

    #[test]
    fn conj_examples() {
        let r = Cyclo::from_q(Q::new(7, 2));
        assert_eq!(r.conj(), r);
        let z3 = Cyclo::zeta(3, 1);
        assert_eq!(z3.conj(), Cyclo::zeta(3, 2));
        assert_eq!(z3.conj(), cyclo_reduce(&[q(-1), q(-1)], 3).unwrap());
        // 1 + ζ5 ↦ 1 + ζ5^4 = 1 - (1 + ζ + ζ² + ζ³) = -ζ - ζ² - ζ³
        let x = cyclo_reduce(&[q(1), q(1)], 5).unwrap();
        let expected = cyclo_reduce(&[q(0), q(-1), q(-1), q(-1)], 5).unwrap();
        assert_eq!(x.conj(), expected);
        assert_eq!(expected, &Cyclo::from_int(1) + &Cyclo::zeta(5, 4));
    }

    #[test]
    fn zeta_has_order_n() {
        for n in [1u32, 2, 3, 4, 5, 6, 8, 12] {
            let z = Cyclo::zeta(n, 1);
            let mut acc = Cyclo::from_int(1);
            for k in 1..=n {
                acc = &acc * &z;
                assert_eq!(acc == Cyclo::from_int(1), k == n, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let x = cyclo_reduce(&[q(2), q(-3), q(1), q(5)], 5).unwrap();
        let xi = x.inv().unwrap();
        assert_eq!(&x * &xi, Cyclo::from_int(1));
    }

    #[test]
    fn json_roundtrip_shape() {
        let z = Cyclo::zeta(3, 2);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"conductor":3,"coeffs":[["-1","1"],["-1","1"]]}"#);
        let back: Cyclo = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }

    fn arb(n: u32) -> impl Strategy<Value = Cyclo> {
        let d = super::super::poly::totient(n as usize);
        proptest::collection::vec((-20i64..20, 1i64..6), d)
            .prop_map(move |v| cyclo_reduce(&v.iter().map(|(a, b)| Q::new(*a, *b)).collect::<Vec<_>>(), n as i64).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms_and_conj(a in arb(12), b in arb(12), c in arb(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn conductor_five(a in arb(5), b in arb(5)) {
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) * &b.inv().unwrap(), a);
            }
        }
    }
}
