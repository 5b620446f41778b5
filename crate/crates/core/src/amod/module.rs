use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::irrep::word_matrix;
use super::Context;
use crate::error::{KostkaError, Result};
use crate::linalg::{column_space, Mat, Quotient, Subspace};
use crate::molien::GradedClass;
use crate::scalars::{Scalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Ambient,
    Projective,
    Costandard,
    Trace,
    Sub,
    Quotient,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModuleKind::Ambient => "ambient",
            ModuleKind::Projective => "projective",
            ModuleKind::Costandard => "costandard",
            ModuleKind::Trace => "trace",
            ModuleKind::Sub => "sub",
            ModuleKind::Quotient => "quotient",
        };
        f.write_str(s)
    }
}

/// A graded `A_W`-module stored up to grade `trunc`: per grade, one action
/// matrix per group generator, and per grade below the top, one
/// multiplication matrix per basis vector of `h`.
#[derive(Clone, Debug, Serialize)]
pub struct GradedModule<F> {
    pub meta: ModuleKind,
    dims: Vec<usize>,
    #[serde(skip)]
    action: Vec<Vec<Mat<F>>>,
    #[serde(skip)]
    mults: Vec<Vec<Mat<F>>>,
}

/// One subspace per grade of a parent module.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F> {
    pub spaces: Vec<Subspace<F>>,
}

impl<F: Scalar> GradedSubspace<F> {
    pub fn zero(m: &GradedModule<F>) -> Self {
        GradedSubspace { spaces: m.dims.iter().map(|&d| Subspace::new(d)).collect() }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }
}

impl<F: Scalar> GradedModule<F> {
    pub fn new(meta: ModuleKind, dims: Vec<usize>, action: Vec<Vec<Mat<F>>>, mults: Vec<Vec<Mat<F>>>) -> Self {
        assert_eq!(action.len(), dims.len());
        assert_eq!(mults.len() + 1, dims.len());
        GradedModule { meta, dims, action, mults }
    }

    pub fn trunc(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    /// Action of generator `gi` on grade `k`.
    pub fn action(&self, k: usize, gi: usize) -> &Mat<F> {
        &self.action[k][gi]
    }

    /// Multiplication by the `i`-th basis vector of `h`, grade `k → k+1`.
    pub fn mult(&self, k: usize, i: usize) -> &Mat<F> {
        &self.mults[k][i]
    }

    /// Highest grade with nonzero dimension.
    pub fn top(&self) -> Option<usize> {
        self.dims.iter().rposition(|&d| d > 0)
    }

    /// Action matrices of every group element on grade `k`.
    pub fn element_matrices(&self, ctx: &Context<F>, k: usize) -> Vec<Mat<F>> {
        (0..ctx.group.order()).map(|w| word_matrix(ctx.group, &self.action[k], self.dims[k], w)).collect()
    }

    /// `g(x_i m) = (g x_i)(g m)` for every generator, grade and basis vector.
    pub fn check_equivariance(&self, ctx: &Context<F>) -> Result<()> {
        let d = ctx.dim_h();
        for k in 0..self.trunc() {
            for (gi, hg) in ctx.h_gens().iter().enumerate() {
                for i in 0..d {
                    let lhs = self.action[k + 1][gi].mul(&self.mults[k][i]);
                    let mut rhs = Mat::zeros(self.dims[k + 1], self.dims[k]);
                    for j in 0..d {
                        if !hg[(j, i)].is_zero() {
                            rhs = rhs.add(&self.mults[k][j].scale(&hg[(j, i)]));
                        }
                    }
                    let rhs = rhs.mul(&self.action[k][gi]);
                    if lhs != rhs {
                        return Err(KostkaError::Validation(format!(
                            "{} module: generator {gi} does not commute with multiplication by x{i} from grade {k}",
                            self.meta
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Element matrices multiply like the group, grade by grade.
    pub fn check_representation(&self, ctx: &Context<F>) -> Result<()> {
        let g = ctx.group;
        for k in 0..=self.trunc() {
            let all = self.element_matrices(ctx, k);
            for w in 0..g.order() {
                for (gi, &ge) in g.generator_elements().iter().enumerate() {
                    if all[w].mul(&self.action[k][gi]) != all[g.mul(w, ge)] {
                        return Err(KostkaError::Validation(format!(
                            "{} module: grade {k} action is not a representation",
                            self.meta
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Trace of each class representative, per grade.
    pub fn graded_character(&self, ctx: &Context<F>) -> GradedClass {
        let grades: Vec<Vec<_>> = (0..=self.trunc())
            .map(|k| {
                ctx.group
                    .classes()
                    .iter()
                    .map(|c| word_matrix(ctx.group, &self.action[k], self.dims[k], c.rep).trace().to_cyclo())
                    .collect()
            })
            .collect();
        GradedClass::from_grades(&grades, ctx.group.num_classes(), self.trunc())
    }

    /// The `ψ`-isotypic subspace of grade `k`, by the character projector.
    pub fn isotypic_component(&self, ctx: &Context<F>, k: usize, psi: usize) -> Subspace<F> {
        let n = ctx.group.order();
        let c0 = F::from_q(&Q::new(ctx.table.dim(psi) as i64, n as i64));
        let mut proj = Mat::zeros(self.dims[k], self.dims[k]);
        for (w, m) in self.element_matrices(ctx, k).iter().enumerate() {
            let c = ctx.value(psi, w).conj().rmul(&c0);
            if !c.is_zero() {
                proj = proj.add(&m.scale(&c));
            }
        }
        column_space(&proj)
    }

    /// Smallest submodule containing `seeds`, assuming the seeds are stable
    /// under the group.
    pub fn generated_submodule(&self, seeds: &GradedSubspace<F>) -> GradedSubspace<F> {
        let mut spaces: Vec<Subspace<F>> = Vec::with_capacity(self.dims.len());
        for k in 0..=self.trunc() {
            let mut s = seeds.spaces[k].clone();
            if k > 0 {
                for b in spaces[k - 1].basis() {
                    for m in &self.mults[k - 1] {
                        if s.is_full() {
                            break;
                        }
                        s.insert(m.mul_vec(b));
                    }
                }
            }
            spaces.push(s);
        }
        GradedSubspace { spaces }
    }

    /// `self / sub` in the complement coordinates of each grade.
    pub fn quotient(&self, sub: &GradedSubspace<F>) -> GradedModule<F> {
        let qs: Vec<Quotient<F>> = sub.spaces.iter().map(|s| Quotient::new(s.clone())).collect();
        let induced = |m: &Mat<F>, from: &Quotient<F>, to: &Quotient<F>| {
            let cols = from.complement().iter().map(|&j| to.project(m.col(j))).collect();
            Mat::from_cols(to.dim(), cols)
        };
        let action = (0..=self.trunc())
            .map(|k| self.action[k].iter().map(|a| induced(a, &qs[k], &qs[k])).collect())
            .collect();
        let mults = (0..self.trunc())
            .map(|k| self.mults[k].iter().map(|m| induced(m, &qs[k], &qs[k + 1])).collect())
            .collect();
        GradedModule::new(ModuleKind::Quotient, qs.iter().map(|q| q.dim()).collect(), action, mults)
    }

    /// Grades `0..=n` only.
    pub fn truncate(&self, n: usize) -> GradedModule<F> {
        let n = n.min(self.trunc());
        GradedModule {
            meta: self.meta,
            dims: self.dims[..=n].to_vec(),
            action: self.action[..=n].to_vec(),
            mults: self.mults[..n].to_vec(),
        }
    }

    /// JSON document with dimensions and matrices, for inspection.
    pub fn dump(&self) -> serde_json::Value {
        let mat = |m: &Mat<F>| -> Vec<Vec<String>> { (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect() };
        serde_json::json!({
            "format": 1,
            "meta": self.meta,
            "dims": self.dims,
            "action": self.action.iter().map(|g| g.iter().map(mat).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "mults": self.mults.iter().map(|g| g.iter().map(mat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Exponent vectors of degree `k` in `d` variables, and their positions.
fn monomials(d: usize, k: usize) -> (Vec<Vec<u8>>, HashMap<Vec<u8>, usize>) {
    fn rec(d: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() + 1 == d {
            cur.push(k as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=k).rev() {
            cur.push(e as u8);
            rec(d, k - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(d, k, &mut Vec::new(), &mut out);
    } else if k == 0 {
        out.push(Vec::new());
    }
    let index = out.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    (out, index)
}

/// `E_χ = e_χ·C[W] ⊗ S^{≤N} h`, isomorphic to `dim χ` copies of `P_χ`.
/// Grade `k` has basis `b_a ⊗ x^α`, index `a·#monomials + α`.
pub fn ambient_isotypic<F: Scalar>(ctx: &Context<F>, chi: usize, trunc: usize) -> GradedModule<F> {
    let g = ctx.group;
    let n = g.order();
    let d = ctx.dim_h();
    let c0 = F::from_q(&Q::new(ctx.table.dim(chi) as i64, n as i64));
    let e: Vec<F> = (0..n).map(|w| ctx.value(chi, w).conj().rmul(&c0)).collect();

    // e_χ·C[W] as a left ideal: spanned by e_χ·u.
    let mut span = Subspace::new(n);
    for u in 0..n {
        let mut v = vec![F::zero(); n];
        for (w, c) in e.iter().enumerate() {
            if !c.is_zero() {
                v[g.mul(w, u)] = c.clone();
            }
        }
        span.insert(v);
    }
    let dv = span.dim();
    let v_gens: Vec<Mat<F>> = g
        .generator_elements()
        .iter()
        .map(|&ge| {
            let mut m = Mat::zeros(dv, dv);
            for (j, b) in span.basis().iter().enumerate() {
                let mut img = vec![F::zero(); n];
                for (w, c) in b.iter().enumerate() {
                    if !c.is_zero() {
                        img[g.mul(ge, w)] = c.clone();
                    }
                }
                for (r, &p) in span.pivots().iter().enumerate() {
                    m[(r, j)] = img[p].clone();
                }
            }
            m
        })
        .collect();

    let mons: Vec<_> = (0..=trunc + 1).map(|k| monomials(d, k)).collect();
    // Symmetric powers of each generator on h, column by column.
    let mut sym: Vec<Vec<Mat<F>>> = Vec::with_capacity(trunc + 1);
    for k in 0..=trunc {
        let nk = mons[k].0.len();
        let mats = ctx
            .h_gens()
            .iter()
            .enumerate()
            .map(|(gi, a)| {
                if k == 0 {
                    return Mat::identity(nk);
                }
                let prev: &Mat<F> = &sym[k - 1][gi];
                let mut m: Mat<F> = Mat::zeros(nk, nk);
                for (col, alpha) in mons[k].0.iter().enumerate() {
                    let j = alpha.iter().position(|&x| x > 0).expect("positive degree");
                    let mut beta = alpha.clone();
                    beta[j] -= 1;
                    let pc = mons[k - 1].1[&beta];
                    for r in 0..prev.rows() {
                        let c = &prev[(r, pc)];
                        if c.is_zero() {
                            continue;
                        }
                        for i in 0..d {
                            if a[(i, j)].is_zero() {
                                continue;
                            }
                            let mut gamma = mons[k - 1].0[r].clone();
                            gamma[i] += 1;
                            m[(mons[k].1[&gamma], col)].add_mul_assign(c, &a[(i, j)]);
                        }
                    }
                }
                m
            })
            .collect();
        sym.push(mats);
    }

    let dims: Vec<usize> = (0..=trunc).map(|k| dv * mons[k].0.len()).collect();
    let action = (0..=trunc).map(|k| v_gens.iter().zip(&sym[k]).map(|(v, s)| v.kron(s)).collect()).collect();
    let mults = (0..trunc)
        .map(|k| {
            (0..d)
                .map(|i| {
                    let (nk, nk1) = (mons[k].0.len(), mons[k + 1].0.len());
                    let mut m = Mat::zeros(dv * nk1, dv * nk);
                    for (col, alpha) in mons[k].0.iter().enumerate() {
                        let mut beta = alpha.clone();
                        beta[i] += 1;
                        let row = mons[k + 1].1[&beta];
                        for a in 0..dv {
                            m[(a * nk1 + row, a * nk + col)] = F::one();
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    GradedModule::new(ModuleKind::Ambient, dims, action, mults)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_group;
    use crate::scalars::Cyclo;

    fn s2() -> (crate::wgroup::ReflectionGroup, crate::wgroup::CharacterTable) {
        builtin_group("S2").unwrap()
    }

    #[test]
    fn trivial_group_ambient() {
        let (g, t) = builtin_group("trivial").unwrap();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        let e = ambient_isotypic(&ctx, 0, 2);
        assert_eq!(e.dims(), &[1, 1, 1]);
        e.check_equivariance(&ctx).unwrap();
    }

    #[test]
    fn s2_ambients() {
        let (g, t) = s2();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        let sgn = t.resolve(&g, "sgn").unwrap();
        let triv = t.resolve(&g, "triv").unwrap();
        let refl = g.classes().iter().position(|c| c.rep != 0).unwrap();

        let e = ambient_isotypic(&ctx, sgn, 3);
        assert_eq!(e.dims(), &[1, 1, 1, 1]);
        e.check_equivariance(&ctx).unwrap();
        e.check_representation(&ctx).unwrap();
        let ch = e.graded_character(&ctx);
        for k in 0..=3 {
            let want = if k % 2 == 0 { -1 } else { 1 };
            assert_eq!(ch.grade(k)[refl], Cyclo::from_int(want), "grade {k}");
        }

        let e = ambient_isotypic(&ctx, triv, 1);
        assert_eq!(e.dims(), &[1, 1]);
        assert_eq!(e.graded_character(&ctx).grade(1), t.row(sgn).to_vec());
        assert_eq!(e.isotypic_component(&ctx, 1, sgn).dim(), 1);
        assert_eq!(e.isotypic_component(&ctx, 1, triv).dim(), 0);
    }

    #[test]
    fn s2_generated_submodule() {
        let (g, t) = s2();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        let sgn = t.resolve(&g, "sgn").unwrap();
        let triv = t.resolve(&g, "triv").unwrap();
        let e = ambient_isotypic(&ctx, triv, 4);

        let mut seeds = GradedSubspace::zero(&e);
        seeds.spaces[1] = e.isotypic_component(&ctx, 1, sgn);
        assert_eq!(e.generated_submodule(&seeds).dims(), vec![0, 1, 1, 1, 1]);

        assert_eq!(e.generated_submodule(&GradedSubspace::zero(&e)).dims(), vec![0; 5]);

        let mut seeds = GradedSubspace::zero(&e);
        seeds.spaces[0] = Subspace::full(1);
        assert_eq!(e.generated_submodule(&seeds).dims(), vec![1; 5]);
    }

    #[test]
    fn isotypic_parts_exhaust_each_grade() {
        let (g, t) = builtin_group("S3").unwrap();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        for chi in 0..t.len() {
            let e = ambient_isotypic(&ctx, chi, 3);
            e.check_equivariance(&ctx).unwrap();
            for k in 0..=3 {
                let total: usize = (0..t.len()).map(|psi| e.isotypic_component(&ctx, k, psi).dim()).sum();
                assert_eq!(total, e.dim(k));
            }
        }
    }

    #[test]
    fn quotient_character_is_difference() {
        let (g, t) = builtin_group("S3").unwrap();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        let e = ambient_isotypic(&ctx, 1, 3);
        let mut seeds = GradedSubspace::zero(&e);
        seeds.spaces[2] = e.isotypic_component(&ctx, 2, 0);
        let sub = e.generated_submodule(&seeds);
        let q = e.quotient(&sub);
        q.check_equivariance(&ctx).unwrap();
        q.check_representation(&ctx).unwrap();
        let qc = q.graded_character(&ctx);
        let ec = e.graded_character(&ctx);
        for k in 0..=3 {
            assert_eq!(q.dim(k) + sub.spaces[k].dim(), e.dim(k));
            // the class of the identity carries the dimension
            assert_eq!(qc.grade(k)[0], Cyclo::from_int(q.dim(k) as i64));
            assert_eq!(ec.grade(k)[0], Cyclo::from_int(e.dim(k) as i64));
        }
    }
}
