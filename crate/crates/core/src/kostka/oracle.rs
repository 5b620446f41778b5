//! Matching the module-side `m` of a symmetric group against the charge
//! table, up to a normalization fixed once on `S_2`.

use serde::Serialize;

use super::charge::{conjugate_partition, kostka_foulkes_charge, n_statistic};
use crate::error::Result;
use crate::scalars::{Poly, Ring, Q};

/// Candidate dictionaries between `m_{λμ}` and `K_{λμ}(q)`, in order of
/// preference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `K_{λμ}(q)`
    Identity,
    /// `K_{μλ}(q)`
    Transpose,
    /// `K_{μ'λ'}(q)`
    Conjugate,
    /// `q^{n(μ)-n(λ)} K_{λμ}(q^{-1})`
    Cocharge,
    /// `q^{n(λ)-n(μ)} K_{μλ}(q^{-1})`
    TransposeCocharge,
}

impl Normalization {
    pub const ALL: [Normalization; 5] = [
        Normalization::Identity,
        Normalization::Transpose,
        Normalization::Conjugate,
        Normalization::Cocharge,
        Normalization::TransposeCocharge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Normalization::Identity => "identity",
            Normalization::Transpose => "transpose",
            Normalization::Conjugate => "conjugate",
            Normalization::Cocharge => "cocharge",
            Normalization::TransposeCocharge => "transpose-cocharge",
        }
    }

    /// Predicted `m_{λμ}`.
    pub fn predict(self, lambda: &[usize], mu: &[usize]) -> Result<Poly<Q>> {
        match self {
            Normalization::Identity => kostka_foulkes_charge(lambda, mu),
            Normalization::Transpose => kostka_foulkes_charge(mu, lambda),
            Normalization::Conjugate => kostka_foulkes_charge(&conjugate_partition(mu), &conjugate_partition(lambda)),
            Normalization::Cocharge => Ok(reverse(&kostka_foulkes_charge(lambda, mu)?, n_statistic(mu), n_statistic(lambda))),
            Normalization::TransposeCocharge => {
                Ok(reverse(&kostka_foulkes_charge(mu, lambda)?, n_statistic(lambda), n_statistic(mu)))
            }
        }
    }
}

/// `q^{a-b} p(q^{-1})`; zero stays zero.
fn reverse(p: &Poly<Q>, a: usize, b: usize) -> Poly<Q> {
    if p.is_zero() || a < b {
        return Poly::zero();
    }
    let top = a - b;
    let mut c = vec![Q::zero(); top + 1];
    for (i, x) in p.coeffs().iter().enumerate() {
        if i <= top {
            c[top - i] = x.clone();
        }
    }
    Poly::new(c)
}

/// Off-diagonal entries of `m` that disagree with the prediction.
pub fn mismatches(norm: Normalization, labels: &[Vec<usize>], m: &[Vec<Poly<Q>>]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (a, la) in labels.iter().enumerate() {
        for (b, lb) in labels.iter().enumerate() {
            if a == b {
                continue;
            }
            let want = norm.predict(la, lb)?;
            if want != m[a][b] {
                out.push(format!("m[{la:?}][{lb:?}] = {} but {} predicts {want}", m[a][b], norm.name()));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    /// The normalization fixed on `S_2` and applied here.
    pub normalization: Normalization,
    /// Every candidate consistent with `S_2`.
    pub consistent_on_s2: Vec<Normalization>,
    pub entries_checked: usize,
    pub mismatches: Vec<String>,
    pub passed: bool,
}

/// The first candidate consistent with the `S_2` data, and all of them.
pub fn choose_normalization(s2_labels: &[Vec<usize>], s2_m: &[Vec<Poly<Q>>]) -> Result<Option<(Normalization, Vec<Normalization>)>> {
    let mut ok = Vec::new();
    for norm in Normalization::ALL {
        if mismatches(norm, s2_labels, s2_m)?.is_empty() {
            ok.push(norm);
        }
    }
    Ok(ok.first().copied().map(|n| (n, ok)))
}

pub fn oracle_report(
    chosen: (Normalization, Vec<Normalization>),
    labels: &[Vec<usize>],
    m: &[Vec<Poly<Q>>],
) -> Result<OracleReport> {
    let mism = mismatches(chosen.0, labels, m)?;
    let n = labels.len();
    Ok(OracleReport {
        normalization: chosen.0,
        consistent_on_s2: chosen.1,
        entries_checked: n * n.saturating_sub(1),
        passed: mism.is_empty(),
        mismatches: mism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| Q::from_int(x)).collect())
    }

    #[test]
    fn s2_leaves_identity_and_conjugate() {
        let labels = vec![vec![1, 1], vec![2]];
        let m = vec![vec![poly(&[1]), Poly::zero()], vec![poly(&[0, 1]), poly(&[1])]];
        let (n, all) = choose_normalization(&labels, &m).unwrap().unwrap();
        assert_eq!(n, Normalization::Identity);
        assert_eq!(all, vec![Normalization::Identity, Normalization::Conjugate]);
    }

    #[test]
    fn cocharge_reverses() {
        // K_{(3),(111)} = q^3, n((111)) = 3.
        assert_eq!(Normalization::Cocharge.predict(&[3], &[1, 1, 1]).unwrap(), poly(&[1]));
        assert_eq!(Normalization::Cocharge.predict(&[2, 1], &[1, 1, 1]).unwrap(), poly(&[1, 1]));
        assert_eq!(Normalization::Cocharge.predict(&[1, 1, 1], &[3]).unwrap(), Poly::zero());
    }
}
