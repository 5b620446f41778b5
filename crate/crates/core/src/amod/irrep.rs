//! Explicit irreducible matrices and the splitting of `h ⊗ L_θ`.
//!
//! `L_χ` is realized as a minimal left ideal `C[W]·e_χ·p`, where `p` is the
//! idempotent of a linear character `λ` on a subgroup `H` generated by at
//! most two elements, chosen with `⟨χ|_H, λ⟩ = 1`.

use std::collections::HashSet;

use crate::error::{KostkaError, Result};
use crate::linalg::{inverse, nullspace, Mat, Subspace};
use crate::scalars::{Scalar, Q};
use crate::wgroup::{CharacterTable, ReflectionGroup};

/// Generator matrices of one irreducible.
#[derive(Clone, Debug)]
pub struct Irrep<F> {
    pub dim: usize,
    pub gens: Vec<Mat<F>>,
}

/// `h ⊗ L_θ ≅ ⊕ L_ψ ⊗ C^{a_ψ}` with an explicit change of basis.
///
/// Part `p` is an embedding `L_ψ → h ⊗ L_θ`; its image of the basis vector
/// `b_t` is column `offset[p] + t` of the decomposition matrix, whose
/// inverse is stored. Coordinates on `h ⊗ L_θ` are `i·dim θ + t`.
#[derive(Clone, Debug)]
pub struct Split<F> {
    pub parts: Vec<usize>,
    pub offset: Vec<usize>,
    pub dinv: Mat<F>,
}

/// Subgroups generated by at most two elements, smallest first.
fn small_subgroups(g: &ReflectionGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x..n {
            let mut members = vec![0usize];
            let mut inside = vec![false; n];
            inside[0] = true;
            let mut k = 0;
            while k < members.len() {
                let a = members[k];
                for b in [x, y] {
                    let c = g.mul(a, b);
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            if seen.insert(members.clone()) {
                out.push(members);
            }
        }
    }
    out.sort_by_key(|m| m.len());
    out
}

fn convert<F: Scalar>(x: &crate::scalars::Cyclo) -> Result<F> {
    F::from_cyclo(x).ok_or_else(|| KostkaError::InvalidInput(format!("value {x} does not lie in the working field")))
}

/// Character values per element, `[χ][w]`.
pub(crate) fn element_values<F: Scalar>(g: &ReflectionGroup, t: &CharacterTable) -> Result<Vec<Vec<F>>> {
    (0..t.len())
        .map(|chi| {
            let per_class = t.row(chi).iter().map(convert).collect::<Result<Vec<F>>>()?;
            Ok((0..g.order()).map(|w| per_class[g.class_of(w)].clone()).collect())
        })
        .collect()
}

/// Realize every irreducible of `t` by generator matrices.
pub(crate) fn realize_irreps<F: Scalar>(g: &ReflectionGroup, t: &CharacterTable, values: &[Vec<F>]) -> Result<Vec<Irrep<F>>> {
    let n = g.order();
    let subgroups = small_subgroups(g);
    let linear: Vec<usize> = (0..t.len()).filter(|&l| t.dim(l) == 1).collect();
    let mut out = Vec::with_capacity(t.len());
    for chi in 0..t.len() {
        let d = t.dim(chi);
        let found = subgroups.iter().find_map(|h| {
            let inv_h = F::from_q(&Q::new(1, h.len() as i64));
            linear.iter().find_map(|&l| {
                let mut s = F::zero();
                for &x in h {
                    s.add_mul_assign(&values[chi][x], &values[l][x].conj());
                }
                s.rmul(&inv_h).is_one().then_some((h, l))
            })
        });
        let Some((h, lam)) = found else {
            return Err(KostkaError::InvalidInput(format!(
                "no subgroup on two generators isolates {} with multiplicity one",
                t.name(chi)
            )));
        };

        // a = e_χ · p in the group algebra.
        let ec = F::from_q(&Q::new(d as i64, n as i64));
        let ph = F::from_q(&Q::new(1, h.len() as i64));
        let mut a = vec![F::zero(); n];
        for w in 0..n {
            let ew = values[chi][w].conj().rmul(&ec);
            if ew.is_zero() {
                continue;
            }
            for &x in h {
                let px = values[lam][x].conj().rmul(&ph);
                a[g.mul(w, x)].add_mul_assign(&ew, &px);
            }
        }
        let left = |u: usize, v: &[F]| {
            let mut out = vec![F::zero(); n];
            for (w, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out[g.mul(u, w)] = c.clone();
                }
            }
            out
        };
        let mut span = Subspace::new(n);
        for u in 0..n {
            if span.dim() == d {
                break;
            }
            span.insert(left(u, &a));
        }
        if span.dim() != d {
            return Err(KostkaError::InvalidInput(format!("left ideal for {} has dimension {}", t.name(chi), span.dim())));
        }
        let gens = g
            .generator_elements()
            .iter()
            .map(|&ge| {
                let mut m = Mat::zeros(d, d);
                for (j, b) in span.basis().iter().enumerate() {
                    let img = left(ge, b);
                    for (r, &p) in span.pivots().iter().enumerate() {
                        m[(r, j)] = img[p].clone();
                    }
                }
                m
            })
            .collect();
        let rep = Irrep { dim: d, gens };
        check_character(g, &rep, &values[chi]).map_err(|e| KostkaError::InvalidInput(format!("{}: {e}", t.name(chi))))?;
        out.push(rep);
    }
    Ok(out)
}

/// Matrix of an arbitrary element as a product along its word.
pub(crate) fn word_matrix<F: Scalar>(g: &ReflectionGroup, gens: &[Mat<F>], dim: usize, w: usize) -> Mat<F> {
    g.word(w).iter().fold(Mat::identity(dim), |acc, &i| acc.mul(&gens[i]))
}

fn check_character<F: Scalar>(g: &ReflectionGroup, rep: &Irrep<F>, values: &[F]) -> std::result::Result<(), String> {
    for c in g.classes() {
        let tr = word_matrix(g, &rep.gens, rep.dim, c.rep).trace();
        if tr != values[c.rep] {
            return Err(format!("realized trace {tr} differs from table value {} on class of {}", values[c.rep], c.rep));
        }
    }
    Ok(())
}

/// Equivariant embeddings `L_ψ → X`, as `dim X × dim ψ` matrices, for `X`
/// given by generator matrices.
pub(crate) fn embeddings<F: Scalar>(dx: usize, x_gens: &[Mat<F>], psi: &Irrep<F>) -> Vec<Mat<F>> {
    let dp = psi.dim;
    let unknowns = dx * dp;
    if x_gens.is_empty() {
        // No constraints: every matrix is equivariant.
        return (0..unknowns)
            .map(|u| {
                let mut e = Mat::zeros(dx, dp);
                e[(u / dp, u % dp)] = F::one();
                e
            })
            .collect();
    }
    let mut sys: Mat<F> = Mat::zeros(x_gens.len() * unknowns, unknowns);
    for (gi, (xg, pg)) in x_gens.iter().zip(&psi.gens).enumerate() {
        let base = gi * unknowns;
        for r in 0..dx {
            for c in 0..dp {
                let row = base + r * dp + c;
                for s in 0..dx {
                    sys[(row, s * dp + c)].add_assign(&xg[(r, s)]);
                }
                for u in 0..dp {
                    let v = pg[(u, c)].rneg();
                    sys[(row, r * dp + u)].add_assign(&v);
                }
            }
        }
    }
    nullspace(&sys)
        .into_iter()
        .map(|v| Mat::from_rows(v.chunks(dp).map(|r| r.to_vec()).collect()))
        .collect()
}

/// Split `h ⊗ L_θ` for every `θ`.
pub(crate) fn split_all<F: Scalar>(dim_h: usize, h_gens: &[Mat<F>], irreps: &[Irrep<F>]) -> Result<Vec<Split<F>>> {
    irreps
        .iter()
        .enumerate()
        .map(|(theta, th)| {
            let x_gens: Vec<Mat<F>> = h_gens.iter().zip(&th.gens).map(|(a, b)| a.kron(b)).collect();
            let dx = dim_h * th.dim;
            let mut parts = Vec::new();
            let mut offset = Vec::new();
            let mut cols: Vec<Vec<F>> = Vec::new();
            for (psi, ps) in irreps.iter().enumerate() {
                for e in embeddings(dx, &x_gens, ps) {
                    parts.push(psi);
                    offset.push(cols.len());
                    for t in 0..ps.dim {
                        cols.push(e.col(t));
                    }
                }
            }
            if cols.len() != dx {
                return Err(KostkaError::InvalidInput(format!(
                    "h ⊗ irreducible {theta} splits into dimension {} instead of {dx}",
                    cols.len()
                )));
            }
            let d = Mat::from_cols(dx, cols);
            let dinv = inverse(&d).ok_or_else(|| KostkaError::InvalidInput(format!("embeddings into h ⊗ irreducible {theta} are dependent")))?;
            Ok(Split { parts, offset, dinv })
        })
        .collect()
}
