//! Graded Hom from a module generated in grade 0 into a finite module.

use serde::Serialize;

use super::module::GradedModule;
use super::trace::{certified_trace, seeds_for, trace_module, Mode};
use super::Context;
use crate::error::{KostkaError, Result};
use crate::linalg::{inverse, Mat, Subspace};
use crate::scalars::Scalar;
use crate::wgroup::Preorder;

/// Right inverse of the surjection `[x_1 | … | x_d] : h ⊗ M_{j-1} → M_j`,
/// returned as one `dim M_{j-1} × dim M_j` block per `x_i`.
fn right_inverse<F: Scalar>(m: &GradedModule<F>, j: usize, d: usize) -> Result<Vec<Mat<F>>> {
    let (rows, prev) = (m.dim(j), m.dim(j - 1));
    let mut span = Subspace::new(rows);
    let mut chosen = Vec::new();
    'outer: for i in 0..d {
        for c in 0..prev {
            if span.dim() == rows {
                break 'outer;
            }
            if span.insert(m.mult(j - 1, i).col(c)) {
                chosen.push((i, c));
            }
        }
    }
    if span.dim() != rows {
        return Err(KostkaError::Validation(format!("source module is not generated in grade 0 (grade {j})")));
    }
    let b = Mat::from_cols(rows, chosen.iter().map(|&(i, c)| m.mult(j - 1, i).col(c)).collect());
    let binv = inverse(&b).expect("chosen columns are independent");
    let mut out = vec![Mat::zeros(prev, rows); d];
    for (r, &(i, c)) in chosen.iter().enumerate() {
        for s in 0..rows {
            out[i][(c, s)] = binv[(r, s)].clone();
        }
    }
    Ok(out)
}

/// `Σ_k dim Hom(M, N⟨-k⟩) q^k`, coefficients for `k = 0..=top(N)`.
///
/// A map is fixed by its grade-0 component `φ: M_0 → N_k`, which must be
/// equivariant, and is propagated by `F_j(x_i m) = x_i F_{j-1}(m)`; the
/// propagation is well defined exactly when the constraints collected here
/// hold.
pub fn hom_graded<F: Scalar>(ctx: &Context<F>, m: &GradedModule<F>, n: &GradedModule<F>) -> Result<Vec<usize>> {
    let (d, num_gens) = (ctx.dim_h(), ctx.num_gens());
    let Some(top) = n.top() else {
        return Ok(Vec::new());
    };
    if top >= n.trunc() {
        return Err(KostkaError::TruncationInsufficient {
            trunc: n.trunc(),
            detail: "target module is not certified finite: its top stored grade is nonzero".into(),
        });
    }
    if m.trunc() < top + 1 {
        return Err(KostkaError::TruncationInsufficient {
            trunc: m.trunc(),
            detail: format!("source must be stored past grade {top}"),
        });
    }
    let sigmas = (1..=top).map(|j| right_inverse(m, j, d)).collect::<Result<Vec<_>>>()?;
    let m0 = m.dim(0);
    let mut out = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let nk = n.dim(k);
        let unknowns = m0 * nk;
        if unknowns == 0 {
            out.push(0);
            continue;
        }
        let mut cons = Subspace::new(unknowns);
        // Collect entries of the per-unknown matrices `cs[u]` as rows.
        let absorb = |cs: &[Mat<F>], cons: &mut Subspace<F>| {
            let (r, c) = (cs[0].rows(), cs[0].cols());
            for a in 0..r {
                for b in 0..c {
                    if cons.is_full() {
                        return;
                    }
                    let row: Vec<F> = cs.iter().map(|x| x[(a, b)].clone()).collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        cons.insert(row);
                    }
                }
            }
        };
        let mut f: Vec<Mat<F>> = (0..unknowns)
            .map(|u| {
                let mut e = Mat::zeros(nk, m0);
                e[(u / m0, u % m0)] = F::one();
                e
            })
            .collect();
        for gi in 0..num_gens {
            let cs: Vec<Mat<F>> = f.iter().map(|e| e.mul(m.action(0, gi)).sub(&n.action(k, gi).mul(e))).collect();
            absorb(&cs, &mut cons);
        }
        for (j, sigma) in (1..=top - k).zip(&sigmas) {
            let next: Vec<Mat<F>> = f
                .iter()
                .map(|fu| {
                    let mut acc = Mat::zeros(n.dim(k + j), m.dim(j));
                    for (i, s) in sigma.iter().enumerate() {
                        acc = acc.add(&n.mult(k + j - 1, i).mul(fu).mul(s));
                    }
                    acc
                })
                .collect();
            for i in 0..d {
                let cs: Vec<Mat<F>> = next
                    .iter()
                    .zip(&f)
                    .map(|(fj, fp)| fj.mul(m.mult(j - 1, i)).sub(&n.mult(k + j - 1, i).mul(fp)))
                    .collect();
                absorb(&cs, &mut cons);
            }
            f = next;
        }
        out.push(unknowns - cons.dim());
    }
    Ok(out)
}

/// Which vanishing statement a Hom computation tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomRule {
    /// `Hom(∇_χ, ∇̄_ψ) = δ_{χψ}` (concentrated in degree 0) for `χ ∼ ψ`.
    CostandardTraceSamePhylum,
    /// `Hom(∇_χ, ∇̄_ψ) = 0` for `χ ≁ ψ`.
    CostandardTraceAcrossPhyla,
    /// `Hom(∇̄_χ, ∇̄_ψ) = 0` for `χ ≺ ψ`.
    TraceTraceLower,
    /// Degree-0 part of `Hom(∇̄_χ, ∇̄_ψ)` is `δ_{χψ}` for `χ ∼ ψ`.
    TraceTraceSamePhylum,
}

impl HomRule {
    pub fn name(self) -> &'static str {
        match self {
            HomRule::CostandardTraceSamePhylum => "costandard-trace-same-phylum",
            HomRule::CostandardTraceAcrossPhyla => "costandard-trace-across-phyla",
            HomRule::TraceTraceLower => "trace-trace-lower",
            HomRule::TraceTraceSamePhylum => "trace-trace-same-phylum",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub rule: HomRule,
    pub source: String,
    pub target: String,
    /// `dim Hom(M, N⟨-k⟩)` for `k = 0, 1, …`
    pub dims: Vec<usize>,
    pub passed: bool,
}

/// Every Hom statement above, for all ordered pairs it applies to.
pub fn hom_checks<F: Scalar>(ctx: &Context<F>, p: &Preorder, trunc: usize, buffer: usize) -> Result<Vec<HomCheck>> {
    let n = ctx.table.len();
    let traces = (0..n)
        .map(|chi| {
            let tm = certified_trace(ctx, p, chi, trunc, buffer, usize::MAX)?;
            let top = tm.top().unwrap_or(0);
            tm.to_module(ctx, top + 1)
        })
        .collect::<Result<Vec<_>>>()?;
    let reach = traces.iter().map(|m| m.top().unwrap_or(0)).max().unwrap_or(0) + 1;
    let trace_src = (0..n)
        .map(|chi| trace_module(ctx, chi, Mode::Weak, &seeds_for(p, chi, Mode::Weak, n), reach, reach).to_module(ctx, reach))
        .collect::<Result<Vec<_>>>()?;
    let costd = (0..n)
        .map(|chi| trace_module(ctx, chi, Mode::Strict, &seeds_for(p, chi, Mode::Strict, n), reach, reach).to_module(ctx, reach))
        .collect::<Result<Vec<_>>>()?;
    let delta = |a: usize, b: usize| usize::from(a == b);
    let name = |c: usize| ctx.table.name(c).to_string();
    let mut out = Vec::new();
    for chi in 0..n {
        for psi in 0..n {
            let dims = hom_graded(ctx, &costd[chi], &traces[psi])?;
            let (rule, passed) = if p.equiv(chi, psi) {
                let ok = dims.iter().enumerate().all(|(k, &d)| d == if k == 0 { delta(chi, psi) } else { 0 });
                (HomRule::CostandardTraceSamePhylum, ok)
            } else {
                (HomRule::CostandardTraceAcrossPhyla, dims.iter().all(|&d| d == 0))
            };
            out.push(HomCheck { rule, source: name(chi), target: name(psi), dims, passed });
            if p.lt(chi, psi) || p.equiv(chi, psi) {
                let dims = hom_graded(ctx, &trace_src[chi], &traces[psi])?;
                let (rule, passed) = if p.lt(chi, psi) {
                    (HomRule::TraceTraceLower, dims.iter().all(|&d| d == 0))
                } else {
                    (HomRule::TraceTraceSamePhylum, dims.first().copied().unwrap_or(0) == delta(chi, psi))
                };
                out.push(HomCheck { rule, source: name(chi), target: name(psi), dims, passed });
            }
        }
    }
    Ok(out)
}
