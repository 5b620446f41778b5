use std::fmt;

use super::ReflectionGroup;
use crate::error::{KostkaError, Result};
use crate::scalars::{Cyclo, Ring, Q};

/// Irreducible characters as rows of values on the conjugacy classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    names: Vec<String>,
    class_labels: Vec<String>,
    values: Vec<Vec<Cyclo>>,
}

impl CharacterTable {
    pub fn new(names: Vec<String>, class_labels: Vec<String>, values: Vec<Vec<Cyclo>>) -> Self {
        assert_eq!(names.len(), values.len());
        assert!(values.iter().all(|r| r.len() == class_labels.len()));
        CharacterTable { names, class_labels, values }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, chi: usize) -> &str {
        &self.names[chi]
    }

    pub fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    pub fn row(&self, chi: usize) -> &[Cyclo] {
        &self.values[chi]
    }

    pub fn value(&self, chi: usize, class: usize) -> &Cyclo {
        &self.values[chi][class]
    }

    /// `χ(1)`; the identity class is column 0.
    pub fn dim(&self, chi: usize) -> usize {
        self.values[chi][0].as_rational().and_then(|q| q.to_i64()).map_or(0, |d| d.max(0) as usize)
    }

    /// Index of the row with every value equal to 1.
    pub fn trivial(&self) -> Option<usize> {
        self.values.iter().position(|r| r.iter().all(|v| v.is_one()))
    }

    /// Resolve a label: a row name, `triv`, `sgn` (the determinant on `h`),
    /// or a partition written without parentheses.
    pub fn resolve(&self, g: &ReflectionGroup, label: &str) -> Result<usize> {
        let label = label.trim();
        if let Some(i) = self.names.iter().position(|n| n == label) {
            return Ok(i);
        }
        let bracketed = format!("({label})");
        if let Some(i) = self.names.iter().position(|n| *n == bracketed) {
            return Ok(i);
        }
        let found = match label {
            "triv" => self.trivial(),
            "sgn" | "det" => {
                let det = g.det_character();
                self.values.iter().position(|r| *r == det)
            }
            _ => None,
        };
        found.ok_or_else(|| KostkaError::InvalidInput(format!("unknown character label {label:?}")))
    }

    /// Permute columns so that column `j` of the result is column `perm[j]`.
    pub(crate) fn permute_columns(&self, perm: &[usize]) -> CharacterTable {
        CharacterTable {
            names: self.names.clone(),
            class_labels: perm.iter().map(|&j| self.class_labels[j].clone()).collect(),
            values: self.values.iter().map(|r| perm.iter().map(|&j| r[j].clone()).collect()).collect(),
        }
    }

    /// Table with one value replaced; used to exercise validation.
    pub fn with_value(&self, chi: usize, class: usize, v: Cyclo) -> CharacterTable {
        let mut t = self.clone();
        t.values[chi][class] = v;
        t
    }

    pub fn with_rows_swapped(&self, a: usize, b: usize) -> CharacterTable {
        let mut t = self.clone();
        t.values.swap(a, b);
        t.names.swap(a, b);
        t
    }
}

/// One identity checked during validation.
#[derive(Clone, Debug)]
pub struct Check {
    pub identity: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, identity: String, passed: bool) {
        self.checks.push(Check { identity, passed });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `Err(Validation)` naming the first failed identity.
    pub fn into_result(self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(c) => Err(KostkaError::Validation(c.identity.clone())),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.identity)?;
        }
        Ok(())
    }
}

/// `(1/|W|) Σ_c |c| a(c) conj(b(c))`.
pub(crate) fn class_inner(g: &ReflectionGroup, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
    let mut acc = Cyclo::zero();
    for ((c, x), y) in g.classes().iter().zip(a).zip(b) {
        acc = acc.radd(&x.rmul(&y.conj()).rmul(&Cyclo::from_int(c.size as i64)));
    }
    acc.rmul(&Cyclo::from_q(Q::new(1, g.order() as i64)))
}

/// Row and column orthogonality, the sum of squared degrees, and a
/// nonnegative integral decomposition of the character of `h`.
pub fn validate_character_table(g: &ReflectionGroup, t: &CharacterTable) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let k = g.num_classes();
    rep.push(format!("row count {} equals class count {k}", t.len()), t.len() == k);
    if t.len() != k || t.class_labels.len() != k {
        return rep;
    }
    let name = |i: usize| t.name(i).to_string();
    for a in 0..k {
        for b in a..k {
            let ip = class_inner(g, t.row(a), t.row(b));
            let want = if a == b { Cyclo::one() } else { Cyclo::zero() };
            rep.push(format!("row orthogonality <{}, {}> = {}", name(a), name(b), want), ip == want);
        }
    }
    for c in 0..k {
        for d in c..k {
            let mut s = Cyclo::zero();
            for i in 0..k {
                s = s.radd(&t.value(i, c).rmul(&t.value(i, d).conj()));
            }
            let want = if c == d {
                Cyclo::from_q(Q::new(g.order() as i64, g.classes()[c].size as i64))
            } else {
                Cyclo::zero()
            };
            rep.push(
                format!("column orthogonality <{}, {}> = {}", t.class_labels[c], t.class_labels[d], want),
                s == want,
            );
        }
    }
    let dims_integral = (0..k).all(|i| t.value(i, 0).as_rational().is_some_and(|q| q.is_integer() && !q.is_negative()));
    let sum_sq: usize = (0..k).map(|i| t.dim(i) * t.dim(i)).sum();
    rep.push(format!("sum of squared degrees = |W| = {}", g.order()), dims_integral && sum_sq == g.order());
    let refl = g.reflection_character();
    let mut nonneg = true;
    let mut total = Cyclo::zero();
    for i in 0..k {
        let m = class_inner(g, &refl, t.row(i));
        let ok = m.as_rational().is_some_and(|q| q.is_integer() && !q.is_negative());
        nonneg &= ok;
        total = total.radd(&m.rmul(t.value(i, 0)));
    }
    rep.push(
        "character of h decomposes with nonnegative integer multiplicities".to_string(),
        nonneg && total == Cyclo::from_int(g.dim_h() as i64),
    );
    rep
}

/// Index of the complex-conjugate character.
pub fn conjugate_character(t: &CharacterTable, chi: usize) -> Result<usize> {
    let conj: Vec<Cyclo> = t.row(chi).iter().map(Cyclo::conj).collect();
    (0..t.len())
        .find(|&i| t.row(i) == conj.as_slice())
        .ok_or_else(|| KostkaError::TableNotClosedUnderConjugation(t.name(chi).to_string()))
}

/// `⟨a, b⟩` for class functions given per class.
pub fn inner_product(g: &ReflectionGroup, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
    class_inner(g, a, b)
}
