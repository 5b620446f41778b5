//! Projective covers, costandard modules and traces, built grade by grade
//! in bases adapted to the isotypic decomposition.
//!
//! Grade `k` is stored as `⊕_ψ L_ψ ⊗ C^{r_ψ(k)}` with basis `b_t ⊗ e_j`,
//! position `offset_ψ + j·dim ψ + t`. Grade `k` is the quotient of
//! `h ⊗ (grade k-1)` by the commutativity relations
//! `x_i ⊗ x_j m - x_j ⊗ x_i m` and by its whole seed-isotypic part. Both
//! are W-stable, so the quotient is taken one multiplicity space at a time.

use serde::Serialize;

use super::module::{GradedModule, ModuleKind};
use super::Context;
use crate::error::{KostkaError, Result};
use crate::linalg::{Mat, Quotient, Subspace};
use crate::molien::GradedClass;
use crate::scalars::{QSeries, Scalar, Q};
use crate::wgroup::{validate_malle, Preorder};

/// Which lower characters are killed in positive grades.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Nothing: the projective cover `P_χ`.
    Free,
    /// `ψ ≺ χ`: the costandard module `∇_χ`.
    Strict,
    /// `ψ ≾ χ`: the trace `∇̄_χ`.
    Weak,
}

impl Mode {
    fn kind(self) -> ModuleKind {
        match self {
            Mode::Free => ModuleKind::Projective,
            Mode::Strict => ModuleKind::Costandard,
            Mode::Weak => ModuleKind::Trace,
        }
    }
}

/// Characters whose isotypic parts are killed in positive grades.
pub fn seeds_for(p: &Preorder, chi: usize, mode: Mode, n: usize) -> Vec<bool> {
    (0..n)
        .map(|psi| match mode {
            Mode::Free => false,
            Mode::Strict => p.lt(psi, chi),
            Mode::Weak => p.le(psi, chi),
        })
        .collect()
}

/// A module generated by `L_χ` in grade 0, in isotypic-adapted bases.
#[derive(Clone, Debug)]
pub struct TraceModule<F> {
    pub chi: usize,
    pub mode: Mode,
    trunc: usize,
    /// `[k][ψ]`
    mults: Vec<Vec<usize>>,
    offsets: Vec<Vec<usize>>,
    /// `[k][i]`, grade `k → k+1`, kept for `k < maps.len()`.
    maps: Vec<Vec<Mat<F>>>,
}

impl<F: Scalar> TraceModule<F> {
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn dim(&self, k: usize) -> usize {
        *self.offsets[k].last().expect("offsets end with the total")
    }

    /// Multiplicity of `L_ψ` in grade `k`.
    pub fn multiplicity(&self, k: usize, psi: usize) -> usize {
        self.mults[k][psi]
    }

    /// Graded multiplicity of each irreducible.
    pub fn multiplicities(&self) -> Vec<QSeries<Q>> {
        let n = self.mults[0].len();
        (0..n)
            .map(|psi| {
                QSeries::from_coeffs(self.mults.iter().map(|m| Q::from_int(m[psi] as i64)).collect(), self.trunc)
            })
            .collect()
    }

    pub fn character(&self, ctx: &Context<F>) -> GradedClass {
        GradedClass::from_multiplicities(ctx.table, &self.multiplicities())
    }

    /// Highest nonzero grade.
    pub fn top(&self) -> Option<usize> {
        (0..=self.trunc).rev().find(|&k| self.dim(k) > 0)
    }

    /// Explicit module on grades `0..=n`; needs the multiplication maps
    /// below `n` to have been kept.
    pub fn to_module(&self, ctx: &Context<F>, n: usize) -> Result<GradedModule<F>> {
        let n = n.min(self.trunc);
        if n > self.maps.len() {
            return Err(KostkaError::InvalidTruncation(format!(
                "multiplication maps kept up to grade {} only",
                self.maps.len()
            )));
        }
        let action = (0..=n)
            .map(|k| {
                (0..ctx.num_gens())
                    .map(|gi| {
                        let mut m = Mat::zeros(self.dim(k), self.dim(k));
                        for (psi, &r) in self.mults[k].iter().enumerate() {
                            let rep = &ctx.irrep(psi).gens[gi];
                            let d = rep.rows();
                            for j in 0..r {
                                let base = self.offsets[k][psi] + j * d;
                                for a in 0..d {
                                    for b in 0..d {
                                        m[(base + a, base + b)] = rep[(a, b)].clone();
                                    }
                                }
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        let dims = (0..=n).map(|k| self.dim(k)).collect();
        Ok(GradedModule::new(self.mode.kind(), dims, action, self.maps[..n].to_vec()))
    }
}

fn offsets_of(ctx: &Context<impl Scalar>, mults: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(mults.len() + 1);
    let mut acc = 0;
    for (psi, &r) in mults.iter().enumerate() {
        out.push(acc);
        acc += r * ctx.irrep(psi).dim;
    }
    out.push(acc);
    out
}

/// Build the module generated by `L_χ` in grade 0 to grade `trunc`,
/// killing the `seeds`-isotypic parts of every positive grade. The
/// multiplication maps out of grades `< keep` are retained.
pub fn trace_module<F: Scalar>(ctx: &Context<F>, chi: usize, mode: Mode, seeds: &[bool], trunc: usize, keep: usize) -> TraceModule<F> {
    let nchar = ctx.table.len();
    let d = ctx.dim_h();
    let mut m0 = vec![0; nchar];
    m0[chi] = 1;
    let mut mults = vec![m0.clone()];
    let mut offsets = vec![offsets_of(ctx, &m0)];
    let mut maps: Vec<Vec<Mat<F>>> = Vec::new();
    // Maps into the previous grade, needed for the relations.
    let mut prev_maps: Option<Vec<Mat<F>>> = None;

    for k in 1..=trunc {
        let (pm, po) = (&mults[k - 1], &offsets[k - 1]);
        let m_prev = *po.last().unwrap();
        if m_prev == 0 {
            let z = vec![0; nchar];
            offsets.push(offsets_of(ctx, &z));
            mults.push(z);
            let new_maps = vec![Mat::zeros(0, 0); d];
            if k - 1 < keep {
                maps.push(new_maps.clone());
            }
            prev_maps = Some(new_maps);
            continue;
        }

        // Candidate basis of each multiplicity space of h ⊗ (grade k-1):
        // (θ, j, part) ↦ index, with cand_of[θ][j][part].
        let mut cand_count = vec![0usize; nchar];
        let cand_of: Vec<Vec<Vec<usize>>> = (0..nchar)
            .map(|theta| {
                let parts = &ctx.split(theta).parts;
                (0..pm[theta])
                    .map(|_| {
                        parts
                            .iter()
                            .map(|&psi| {
                                cand_count[psi] += 1;
                                cand_count[psi] - 1
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let live: Vec<bool> = (0..nchar).map(|psi| !seeds[psi] && cand_count[psi] > 0).collect();
        let mut rels: Vec<Subspace<F>> = cand_count.iter().map(|&c| Subspace::new(c)).collect();

        // Commutativity relations, read off on the first basis vector of
        // each isotypic part.
        if let Some(pmaps) = prev_maps.as_ref().filter(|_| k >= 2) {
            let m2 = pmaps[0].cols();
            let cols: Vec<Vec<Vec<F>>> = pmaps.iter().map(|m| (0..m2).map(|b| m.col(b)).collect()).collect();
            for b in 0..m2 {
                for i in 0..d {
                    for j in i + 1..d {
                        let (ci, cj) = (&cols[i][b], &cols[j][b]);
                        let mut slices: Vec<Vec<F>> = cand_count.iter().map(|&c| vec![F::zero(); c]).collect();
                        let mut touched = vec![false; nchar];
                        for theta in 0..nchar {
                            let dt = ctx.irrep(theta).dim;
                            let sp = ctx.split(theta);
                            for jj in 0..pm[theta] {
                                let pos = po[theta] + jj * dt;
                                // y = x_i ⊗ (x_j m) - x_j ⊗ (x_i m) on this block
                                let mut y: Vec<(usize, F)> = Vec::new();
                                for t in 0..dt {
                                    if !cj[pos + t].is_zero() {
                                        y.push((i * dt + t, cj[pos + t].clone()));
                                    }
                                    if !ci[pos + t].is_zero() {
                                        y.push((j * dt + t, ci[pos + t].rneg()));
                                    }
                                }
                                if y.is_empty() {
                                    continue;
                                }
                                for (p, &psi) in sp.parts.iter().enumerate() {
                                    if !live[psi] {
                                        continue;
                                    }
                                    let row = sp.offset[p];
                                    let mut c = F::zero();
                                    for (idx, v) in &y {
                                        c.add_mul_assign(&sp.dinv[(row, *idx)], v);
                                    }
                                    if !c.is_zero() {
                                        slices[psi][cand_of[theta][jj][p]] = c;
                                        touched[psi] = true;
                                    }
                                }
                            }
                        }
                        for psi in 0..nchar {
                            if touched[psi] && !rels[psi].is_full() {
                                rels[psi].insert(std::mem::take(&mut slices[psi]));
                            }
                        }
                    }
                }
            }
        }

        // Quotient multiplicity spaces and the images of candidate units.
        let mut mk = vec![0usize; nchar];
        let mut unit_images: Vec<Vec<Vec<F>>> = vec![Vec::new(); nchar];
        for psi in 0..nchar {
            if !live[psi] {
                continue;
            }
            let q = Quotient::new(std::mem::replace(&mut rels[psi], Subspace::new(0)));
            mk[psi] = q.dim();
            unit_images[psi] = (0..cand_count[psi])
                .map(|c| {
                    let mut e = vec![F::zero(); cand_count[psi]];
                    e[c] = F::one();
                    q.project(e)
                })
                .collect();
        }
        let ok = offsets_of(ctx, &mk);
        let m_new = *ok.last().unwrap();

        // Multiplication maps grade k-1 → k.
        let mut new_maps: Vec<Mat<F>> = vec![Mat::zeros(m_new, m_prev); d];
        for theta in 0..nchar {
            let dt = ctx.irrep(theta).dim;
            let sp = ctx.split(theta);
            for jj in 0..pm[theta] {
                for tp in 0..dt {
                    let col = po[theta] + jj * dt + tp;
                    for (i, map) in new_maps.iter_mut().enumerate() {
                        for (p, &psi) in sp.parts.iter().enumerate() {
                            if !live[psi] || mk[psi] == 0 {
                                continue;
                            }
                            let img = &unit_images[psi][cand_of[theta][jj][p]];
                            let dp = ctx.irrep(psi).dim;
                            for t in 0..dp {
                                let coef = &sp.dinv[(sp.offset[p] + t, i * dt + tp)];
                                if coef.is_zero() {
                                    continue;
                                }
                                for (r, v) in img.iter().enumerate() {
                                    map[(ok[psi] + r * dp + t, col)].add_mul_assign(coef, v);
                                }
                            }
                        }
                    }
                }
            }
        }
        if k - 1 < keep {
            maps.push(new_maps.clone());
        }
        prev_maps = Some(new_maps);
        mults.push(mk);
        offsets.push(ok);
    }
    TraceModule { chi, mode, trunc, mults, offsets, maps }
}

/// Quotient defining `∇_χ` (strict) or `∇̄_χ` (weak) to grade `n`, with
/// its graded character.
pub fn trace_quotient<F: Scalar>(ctx: &Context<F>, p: &Preorder, chi: usize, mode: Mode, n: usize) -> Result<(GradedModule<F>, GradedClass)> {
    if n < 1 {
        return Err(KostkaError::InvalidTruncation("truncation must be at least 1".into()));
    }
    validate_malle(p, ctx.table)?;
    let seeds = seeds_for(p, chi, mode, ctx.table.len());
    let tm = trace_module(ctx, chi, mode, &seeds, n, n);
    let m = tm.to_module(ctx, n)?;
    Ok((m, tm.character(ctx)))
}

/// `∇̄_χ` built to `trunc`, retried once at `2·trunc` if the top `buffer`
/// grades do not vanish.
pub fn certified_trace<F: Scalar>(ctx: &Context<F>, p: &Preorder, chi: usize, trunc: usize, buffer: usize, keep: usize) -> Result<TraceModule<F>> {
    if trunc < 1 {
        return Err(KostkaError::InvalidTruncation("truncation must be at least 1".into()));
    }
    let seeds = seeds_for(p, chi, Mode::Weak, ctx.table.len());
    for n in [trunc, 2 * trunc] {
        let tm = trace_module(ctx, chi, Mode::Weak, &seeds, n, keep.min(n));
        if super::certify_finite(&tm.character(ctx), buffer) {
            return Ok(tm);
        }
    }
    Err(KostkaError::TruncationInsufficient {
        trunc: 2 * trunc,
        detail: format!("trace of {} has nonzero grades among the top {buffer}, also after retrying from {trunc}", ctx.table.name(chi)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amod::{ambient_isotypic, GradedSubspace};
    use crate::builtin::{builtin_group, builtin_preorder};
    use crate::molien::projective_class;
    use crate::scalars::Cyclo;

    fn mults_of(tm: &TraceModule<Q>, psi: usize) -> Vec<usize> {
        (0..=tm.trunc()).map(|k| tm.multiplicity(k, psi)).collect()
    }

    #[test]
    fn s2_traces() {
        let (g, t) = builtin_group("S2").unwrap();
        let p = builtin_preorder("dominance", &g, &t).unwrap();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        let sgn = t.resolve(&g, "sgn").unwrap();
        let triv = t.resolve(&g, "triv").unwrap();

        let (m, c) = trace_quotient(&ctx, &p, sgn, Mode::Weak, 6).unwrap();
        m.check_equivariance(&ctx).unwrap();
        assert_eq!(m.dims(), &[1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(c.grade(0), t.row(sgn).to_vec());
        assert_eq!(c.grade(1), t.row(triv).to_vec());
        assert!(crate::amod::certify_finite(&c, 3));

        let (m, c) = trace_quotient(&ctx, &p, triv, Mode::Weak, 6).unwrap();
        assert_eq!(m.dims(), &[1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(c.grade(0), t.row(triv).to_vec());

        let (m, c) = trace_quotient(&ctx, &p, sgn, Mode::Strict, 6).unwrap();
        assert_eq!(m.dims(), &[1; 7]);
        assert_eq!(c, projective_class(&g, &t, sgn, 6).unwrap());

        assert!(matches!(trace_quotient(&ctx, &p, sgn, Mode::Weak, 0), Err(KostkaError::InvalidTruncation(_))));
    }

    /// Free modules match the Molien count, and every construction is an
    /// equivariant representation.
    #[test]
    fn free_modules_match_molien() {
        for name in ["S3", "B2", "G2"] {
            let (g, t) = builtin_group(name).unwrap();
            let ctx = Context::<Q>::new(&g, &t).unwrap();
            let none = vec![false; t.len()];
            for chi in 0..t.len() {
                let tm = trace_module(&ctx, chi, Mode::Free, &none, 7, 7);
                assert_eq!(tm.character(&ctx), projective_class(&g, &t, chi, 7).unwrap(), "{name} {chi}");
                let m = tm.to_module(&ctx, 7).unwrap();
                m.check_equivariance(&ctx).unwrap();
                m.check_representation(&ctx).unwrap();
            }
        }
        let (g, t) = builtin_group("C3").unwrap();
        let ctx = Context::<Cyclo>::new(&g, &t).unwrap();
        for chi in 0..3 {
            let tm = trace_module(&ctx, chi, Mode::Free, &[false; 3], 6, 6);
            assert_eq!(tm.character(&ctx), projective_class(&g, &t, chi, 6).unwrap());
            tm.to_module(&ctx, 6).unwrap().check_equivariance(&ctx).unwrap();
        }
    }

    /// Independent route: seeds taken in the isotypic ambient, the generated
    /// submodule formed there, and characters divided by `dim χ`.
    #[test]
    fn agrees_with_ambient_quotient() {
        for name in ["S2", "S3"] {
            let (g, t) = builtin_group(name).unwrap();
            let p = builtin_preorder("dominance", &g, &t).unwrap();
            let ctx = Context::<Q>::new(&g, &t).unwrap();
            let n = 6;
            for chi in 0..t.len() {
                for mode in [Mode::Strict, Mode::Weak] {
                    let seeds = seeds_for(&p, chi, mode, t.len());
                    let e = ambient_isotypic(&ctx, chi, n);
                    let mut s = GradedSubspace::zero(&e);
                    for k in 1..=n {
                        for psi in (0..t.len()).filter(|&psi| seeds[psi]) {
                            for v in e.isotypic_component(&ctx, k, psi).basis() {
                                s.spaces[k].insert(v.clone());
                            }
                        }
                    }
                    let q = e.quotient(&e.generated_submodule(&s));
                    q.check_equivariance(&ctx).unwrap();
                    let dim = Cyclo::from_int(t.dim(chi) as i64);
                    let want = q.graded_character(&ctx);
                    let (_, got) = trace_quotient(&ctx, &p, chi, mode, n).unwrap();
                    assert_eq!(got.scale(&dim), want, "{name} {} {mode:?}", t.name(chi));
                }
            }
        }
    }

    #[test]
    fn trace_structure_on_s4() {
        let (g, t) = builtin_group("S4").unwrap();
        let p = builtin_preorder("dominance", &g, &t).unwrap();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        for chi in 0..t.len() {
            let tm = certified_trace(&ctx, &p, chi, 16, 3, 0).unwrap();
            assert_eq!(mults_of(&tm, chi)[0], 1);
            for psi in 0..t.len() {
                for (k, &m) in mults_of(&tm, psi).iter().enumerate() {
                    if m > 0 && (psi, k) != (chi, 0) {
                        assert!(p.lt(chi, psi) && k > 0, "{} in grade {k} of trace {}", t.name(psi), t.name(chi));
                    }
                }
            }
        }
    }

    #[test]
    fn tiny_truncation_is_not_certified() {
        let (g, t) = builtin_group("S3").unwrap();
        let p = builtin_preorder("dominance", &g, &t).unwrap();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        let e = certified_trace(&ctx, &p, 0, 1, 3, 0).unwrap_err();
        assert!(matches!(e, KostkaError::TruncationInsufficient { .. }));
    }
}
