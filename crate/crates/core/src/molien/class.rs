use std::fmt;

use crate::scalars::{Cyclo, QSeries, Q};
use crate::wgroup::{inner_product, CharacterTable, ReflectionGroup};

/// A class function valued in truncated `q`-series, one series per
/// conjugacy class. Shifting by `⟨n⟩` is multiplication by `q^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedClass {
    series: Vec<QSeries<Cyclo>>,
}

impl GradedClass {
    pub fn zero(classes: usize, trunc: usize) -> Self {
        GradedClass { series: vec![QSeries::zero(trunc); classes] }
    }

    pub fn from_series(series: Vec<QSeries<Cyclo>>) -> Self {
        assert!(series.windows(2).all(|w| w[0].trunc() == w[1].trunc()));
        GradedClass { series }
    }

    /// Class function placed in grade `k`.
    pub fn from_grade(values: &[Cyclo], k: usize, trunc: usize) -> Self {
        GradedClass { series: values.iter().map(|v| QSeries::monomial(v.clone(), k, trunc)).collect() }
    }

    /// Build from per-grade class functions, `grades[k][class]`.
    pub fn from_grades(grades: &[Vec<Cyclo>], classes: usize, trunc: usize) -> Self {
        let mut c = Self::zero(classes, trunc);
        for (k, row) in grades.iter().enumerate().take(trunc + 1) {
            for (s, v) in c.series.iter_mut().zip(row) {
                s.set_coeff(k, v.clone());
            }
        }
        c
    }

    pub fn trunc(&self) -> usize {
        self.series.first().map_or(0, |s| s.trunc())
    }

    pub fn num_classes(&self) -> usize {
        self.series.len()
    }

    pub fn series(&self) -> &[QSeries<Cyclo>] {
        &self.series
    }

    /// The ordinary class function in grade `k`.
    pub fn grade(&self, k: usize) -> Vec<Cyclo> {
        self.series.iter().map(|s| s.coeff(k).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.series.iter().all(|s| s.is_zero())
    }

    pub fn grade_is_zero(&self, k: usize) -> bool {
        self.series.iter().all(|s| s.coeff(k).is_zero())
    }

    /// Highest nonzero grade.
    pub fn top(&self) -> Option<usize> {
        self.series.iter().filter_map(|s| s.top()).max()
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        GradedClass { series: self.series.iter().map(|s| s.truncate(trunc)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        GradedClass { series: self.series.iter().zip(&o.series).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GradedClass { series: self.series.iter().zip(&o.series).map(|(a, b)| a.sub(b)).collect() }
    }

    /// Multiply every class by the same scalar series.
    pub fn mul_series(&self, s: &QSeries<Cyclo>) -> Self {
        GradedClass { series: self.series.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        GradedClass { series: self.series.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn shift(&self, n: usize) -> Self {
        GradedClass { series: self.series.iter().map(|a| a.shift(n)).collect() }
    }

    /// Graded multiplicity of the irreducible `chi`.
    pub fn multiplicity(&self, g: &ReflectionGroup, t: &CharacterTable, chi: usize) -> QSeries<Cyclo> {
        let coeffs = (0..=self.trunc()).map(|k| inner_product(g, &self.grade(k), t.row(chi))).collect();
        QSeries::from_coeffs(coeffs, self.trunc())
    }

    /// Graded multiplicities of every irreducible, as rationals; `None` if
    /// some multiplicity is irrational.
    pub fn multiplicities(&self, g: &ReflectionGroup, t: &CharacterTable) -> Option<Vec<QSeries<Q>>> {
        (0..t.len())
            .map(|chi| {
                let s = self.multiplicity(g, t, chi);
                let c: Option<Vec<Q>> = s.coeffs().iter().map(|x| x.as_rational().cloned()).collect();
                c.map(|c| QSeries::from_coeffs(c, self.trunc()))
            })
            .collect()
    }

    /// Inverse of [`multiplicities`](Self::multiplicities): `Σ_χ m_χ(q) χ`.
    pub fn from_multiplicities(t: &CharacterTable, m: &[QSeries<Q>]) -> Self {
        let trunc = m.first().map_or(0, |s| s.trunc());
        let classes = t.class_labels().len();
        let mut out = Self::zero(classes, trunc);
        for (chi, s) in m.iter().enumerate() {
            let cs = s.map(|x| Cyclo::from_q(x.clone()));
            for (c, dst) in out.series.iter_mut().enumerate() {
                *dst = dst.add(&cs.scale(t.value(chi, c)));
            }
        }
        out
    }
}

/// Decomposition written as `Σ m_χ(q) χ`, skipping zero multiplicities.
pub struct Decomposition<'a> {
    pub table: &'a CharacterTable,
    pub mults: &'a [QSeries<Q>],
}

impl fmt::Display for Decomposition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (chi, m) in self.mults.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let p = m.to_poly();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 && p.leading().is_some_and(|c| c.is_one()) {
                let k = p.degree().unwrap_or(0);
                match k {
                    0 => write!(f, "{}", self.table.name(chi))?,
                    1 => write!(f, "q*{}", self.table.name(chi))?,
                    _ => write!(f, "q^{k}*{}", self.table.name(chi))?,
                }
            } else {
                write!(f, "({p})*{}", self.table.name(chi))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
