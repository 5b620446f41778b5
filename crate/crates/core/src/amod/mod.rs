//! Graded modules over `A_W = C[W] # S h`, truncated at a top grade:
//! projective covers, costandard modules `∇_χ`, traces `∇̄_χ` and their
//! graded Hom spaces.

mod hom;
mod irrep;
mod module;
mod trace;

pub use hom::{hom_checks, hom_graded, HomCheck, HomRule};
pub use irrep::{Irrep, Split};
pub use module::{ambient_isotypic, GradedModule, GradedSubspace, ModuleKind};
pub use trace::{certified_trace, seeds_for, trace_module, trace_quotient, Mode, TraceModule};

use crate::error::Result;
use crate::linalg::Mat;
use crate::molien::GradedClass;
use crate::scalars::Scalar;
use crate::wgroup::{CharacterTable, ReflectionGroup};

/// Group data transported into the working field `F`.
pub struct Context<'a, F> {
    pub group: &'a ReflectionGroup,
    pub table: &'a CharacterTable,
    h_gens: Vec<Mat<F>>,
    /// Character values per element, `[χ][w]`.
    values: Vec<Vec<F>>,
    irreps: Vec<Irrep<F>>,
    splits: Vec<Split<F>>,
}

impl<'a, F: Scalar> Context<'a, F> {
    pub fn new(group: &'a ReflectionGroup, table: &'a CharacterTable) -> Result<Self> {
        let h_gens = group
            .generators()
            .iter()
            .map(|m| {
                let rows = (0..m.rows())
                    .map(|i| {
                        m.row(i)
                            .iter()
                            .map(|x| {
                                F::from_cyclo(x).ok_or_else(|| {
                                    crate::error::KostkaError::InvalidInput(format!("generator entry {x} does not lie in the working field"))
                                })
                            })
                            .collect::<Result<Vec<F>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Mat::from_rows(rows))
            })
            .collect::<Result<Vec<_>>>()?;
        let values = irrep::element_values(group, table)?;
        let irreps = irrep::realize_irreps(group, table, &values)?;
        let splits = irrep::split_all(group.dim_h(), &h_gens, &irreps)?;
        Ok(Context { group, table, h_gens, values, irreps, splits })
    }

    pub fn dim_h(&self) -> usize {
        self.group.dim_h()
    }

    pub fn num_gens(&self) -> usize {
        self.h_gens.len()
    }

    pub fn h_gens(&self) -> &[Mat<F>] {
        &self.h_gens
    }

    pub fn irrep(&self, chi: usize) -> &Irrep<F> {
        &self.irreps[chi]
    }

    pub(crate) fn split(&self, theta: usize) -> &Split<F> {
        &self.splits[theta]
    }

    pub(crate) fn value(&self, chi: usize, w: usize) -> &F {
        &self.values[chi][w]
    }
}

/// True iff the top `buffer` grades of `c` vanish.
pub fn certify_finite(c: &GradedClass, buffer: usize) -> bool {
    let n = c.trunc();
    let from = (n + 1).saturating_sub(buffer);
    (from..=n).all(|k| c.grade_is_zero(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_group;
    use crate::scalars::{Cyclo, Q};

    #[test]
    fn irreducibles_realize_every_builtin() {
        for name in ["trivial", "S2", "S3", "S4", "S5", "B2", "G2"] {
            let (g, t) = builtin_group(name).unwrap();
            let ctx = Context::<Q>::new(&g, &t).unwrap();
            for chi in 0..t.len() {
                assert_eq!(ctx.irrep(chi).dim, t.dim(chi), "{name}");
            }
        }
        let (g, t) = builtin_group("C3").unwrap();
        assert!(Context::<Q>::new(&g, &t).is_err());
        assert!(Context::<Cyclo>::new(&g, &t).is_ok());
    }

    #[test]
    fn certify_examples() {
        assert!(certify_finite(&GradedClass::zero(2, 5), 3));
        let one = GradedClass::from_grade(&[Cyclo::from_int(1), Cyclo::from_int(1)], 0, 5);
        assert!(certify_finite(&one, 3));
        assert!(!certify_finite(&one, 6));
        assert!(!certify_finite(&GradedClass::from_grade(&[Cyclo::from_int(1)], 5, 5), 1));
    }
}
