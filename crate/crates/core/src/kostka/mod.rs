//! Filtration multiplicities `m`, `n`, `K` read off from graded characters,
//! the block factorization of Ω, and the orthogonality checks tying them
//! together.
//!
//! All matrices are indexed by the phylum-ascending ordering of the
//! preorder (table order inside a phylum). Rows are modules, columns the
//! filtration pieces: `K_{χψ} = [P_χ : ∇̄_ψ]`.

mod charge;
mod ldl;
mod oracle;
mod report;
mod series;

pub use charge::{charge, conjugate_partition, kostka_foulkes_charge, n_statistic, reading_word, ssyt, MAX_CHARGE_SIZE};
pub use ldl::{block_ldl, conjugate_indices, dagger, is_hermitian, ldl_consistency, ldl_reconstructs, Blocks};
pub use oracle::{choose_normalization, mismatches, oracle_report, Normalization, OracleReport};
pub use report::{render_csv, render_text, Flags, KostkaReport, MATRIX_NAMES};
pub use series::SeriesMat;

use rayon::prelude::*;
use serde::Serialize;

use crate::amod::{certified_trace, hom_checks, seeds_for, trace_module, Context, HomCheck, Mode};
use crate::error::{KostkaError, Result};
use crate::linalg::Mat;
use crate::molien::{default_trunc, invariant_degrees, omega_matrix, GradedClass};
use crate::scalars::{Cyclo, QSeries, RatFun, Scalar, Q};
use crate::wgroup::{conjugate_character, parse_partition, validate_malle, CharacterTable, Preorder, ReflectionGroup};

/// Truncation used when none is given: the default, raised to 12.
pub fn working_trunc(g: &ReflectionGroup, t: &CharacterTable) -> Result<usize> {
    Ok(default_trunc(&invariant_degrees(g, t)?).max(12))
}

/// Whether the group can be handled over `Q`.
pub fn is_rational(g: &ReflectionGroup, t: &CharacterTable) -> bool {
    let gens = g.generators().iter().all(|m| (0..m.rows()).all(|i| m.row(i).iter().all(Cyclo::is_rational)));
    gens && (0..t.len()).all(|chi| t.row(chi).iter().all(Cyclo::is_rational))
}

/// Graded multiplicities `[X_χ : L_ψ]` of the three module families, in
/// table order, to a common truncation.
#[derive(Clone, Debug)]
pub struct ModuleTables {
    pub trunc: usize,
    /// `P_χ`, from Ω.
    pub proj: SeriesMat,
    /// `∇_χ`
    pub costd: SeriesMat,
    /// `∇̄_χ`, certified finite.
    pub trace: SeriesMat,
}

fn tables_over<F: Scalar>(g: &ReflectionGroup, t: &CharacterTable, p: &Preorder, trunc: usize, buffer: usize) -> Result<(SeriesMat, SeriesMat)> {
    let ctx = Context::<F>::new(g, t)?;
    let n = t.len();
    let rows = (0..n)
        .into_par_iter()
        .map(|chi| {
            let seeds = seeds_for(p, chi, Mode::Strict, n);
            let nab = trace_module(&ctx, chi, Mode::Strict, &seeds, trunc, 0).multiplicities();
            let bar = certified_trace(&ctx, p, chi, trunc, buffer, 0)?.multiplicities();
            Ok((nab, bar.iter().map(|s| s.truncate(trunc)).collect::<Vec<_>>()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (costd, trace): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    Ok((SeriesMat::from_rows(costd), SeriesMat::from_rows(trace)))
}

/// Build the module tables, over `Q` when possible and over the
/// cyclotomic field otherwise.
pub fn module_tables(
    g: &ReflectionGroup,
    t: &CharacterTable,
    p: &Preorder,
    omega: &Mat<RatFun>,
    trunc: usize,
    buffer: usize,
) -> Result<ModuleTables> {
    if trunc < 1 {
        return Err(KostkaError::InvalidTruncation("truncation must be at least 1".into()));
    }
    validate_malle(p, t)?;
    let (costd, trace) = if is_rational(g, t) {
        tables_over::<Q>(g, t, p, trunc, buffer)?
    } else {
        tables_over::<Cyclo>(g, t, p, trunc, buffer)?
    };
    // [P_χ : L_ψ] = Ω_{ψχ}.
    let proj = SeriesMat::from_ratfun(&omega.transpose(), trunc)?;
    Ok(ModuleTables { trunc, proj, costd, trace })
}

/// Graded multiplicities of `∇_χ` and `∇̄_χ` for one `χ`.
#[derive(Clone, Debug, Serialize)]
pub struct TraceSummary {
    pub chi: String,
    /// `[∇_χ : L_ψ]` per `ψ` in table order.
    pub costandard: Vec<QSeries<Q>>,
    /// `[∇̄_χ : L_ψ]`
    pub trace: Vec<QSeries<Q>>,
    /// Highest nonzero grade of `∇̄_χ`.
    pub top: usize,
    /// Truncation at which `∇̄_χ` was certified finite.
    pub certified_at: usize,
    /// `L_χ` once, in grade 0; every other constituent `L_θ⟨m⟩` has
    /// `θ ≻ χ` and `m > 0`.
    pub structure: bool,
}

fn summaries_over<F: Scalar>(g: &ReflectionGroup, t: &CharacterTable, p: &Preorder, chis: &[usize], trunc: usize, buffer: usize) -> Result<Vec<TraceSummary>> {
    let ctx = Context::<F>::new(g, t)?;
    let n = t.len();
    chis.par_iter()
        .map(|&chi| {
            let costandard = trace_module(&ctx, chi, Mode::Strict, &seeds_for(p, chi, Mode::Strict, n), trunc, 0).multiplicities();
            let tm = certified_trace(&ctx, p, chi, trunc, buffer, 0)?;
            let trace = tm.multiplicities();
            let structure = (0..n).all(|theta| {
                let s = &trace[theta];
                if theta == chi {
                    *s == QSeries::one(s.trunc())
                } else {
                    s.is_zero() || (p.lt(chi, theta) && s.coeff(0).is_zero())
                }
            }) && trace.iter().all(|s| s.coeffs().iter().all(|c| !c.is_negative()));
            Ok(TraceSummary {
                chi: t.name(chi).to_string(),
                costandard,
                trace,
                top: tm.top().unwrap_or(0),
                certified_at: tm.trunc(),
                structure,
            })
        })
        .collect()
}

/// Summaries for the given characters (all when `chis` is empty).
pub fn trace_summaries(g: &ReflectionGroup, t: &CharacterTable, p: &Preorder, chis: &[usize], trunc: usize, buffer: usize) -> Result<Vec<TraceSummary>> {
    if trunc < 1 {
        return Err(KostkaError::InvalidTruncation("truncation must be at least 1".into()));
    }
    validate_malle(p, t)?;
    let all: Vec<usize> = if chis.is_empty() { (0..t.len()).collect() } else { chis.to_vec() };
    if is_rational(g, t) {
        summaries_over::<Q>(g, t, p, &all, trunc, buffer)
    } else {
        summaries_over::<Cyclo>(g, t, p, &all, trunc, buffer)
    }
}

/// Hom orthogonality checks, over `Q` when possible.
pub fn orthogonality(g: &ReflectionGroup, t: &CharacterTable, p: &Preorder, trunc: usize, buffer: usize) -> Result<Vec<HomCheck>> {
    validate_malle(p, t)?;
    if is_rational(g, t) {
        hom_checks(&Context::<Q>::new(g, t)?, p, trunc, buffer)
    } else {
        hom_checks(&Context::<Cyclo>::new(g, t)?, p, trunc, buffer)
    }
}

/// Coefficients `c` with `target = Σ_ψ c_ψ · basis_ψ` to the common
/// truncation, solved grade by grade on multiplicities.
pub fn expand_in_barnabla(g: &ReflectionGroup, t: &CharacterTable, target: &GradedClass, basis: &[GradedClass]) -> Result<Vec<QSeries<Q>>> {
    let mults = |c: &GradedClass| {
        c.multiplicities(g, t)
            .ok_or_else(|| KostkaError::BasisIncomplete("a graded character has irrational multiplicities".into()))
    };
    let tgt = SeriesMat::from_rows(vec![mults(target)?]);
    let b = SeriesMat::from_rows(basis.iter().map(mults).collect::<Result<Vec<_>>>()?);
    Ok(tgt.solve_left(&b)?.row(0).to_vec())
}

/// `m`, `n`, `K = m·n` and the direct expansion of `P` in the `∇̄` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    pub m: SeriesMat,
    pub n: SeriesMat,
    pub k: SeriesMat,
    pub k_direct: SeriesMat,
}

pub fn filtration_matrices(tables: &ModuleTables) -> Result<Filtration> {
    let m = tables.proj.solve_left(&tables.costd)?;
    let n = tables.costd.solve_left(&tables.trace)?;
    let k = m.mul(&n);
    let k_direct = tables.proj.solve_left(&tables.trace)?;
    Ok(Filtration { m, n, k, k_direct })
}

/// Phylum blocks and the conjugation involution in ordering positions.
pub fn blocks_for(p: &Preorder, t: &CharacterTable) -> Result<Blocks> {
    let ord = p.ordering();
    let mut pos = vec![0; ord.len()];
    for (i, &chi) in ord.iter().enumerate() {
        pos[chi] = i;
    }
    let bar = ord.iter().map(|&chi| conjugate_character(t, chi).map(|b| pos[b])).collect::<Result<Vec<_>>>()?;
    let mut ranges = Vec::with_capacity(p.num_phyla());
    let mut start = 0;
    for ph in p.phyla() {
        ranges.push(start..start + ph.len());
        start += ph.len();
    }
    Ok(Blocks { ranges, bar })
}

/// `Λ = K^{-1}·X·(K^‡)^{-1}` and whether it is block diagonal, where `X`
/// is the multiplicity matrix `[P_χ : L_ψ]` (that is, `Ω` transposed).
pub fn lambda_check(k: &SeriesMat, omega: &SeriesMat, blocks: &Blocks) -> Result<(SeriesMat, bool)> {
    let kinv = k.inverse()?;
    let kd_inv = k.dagger(&blocks.bar).inverse()?;
    let lambda = kinv.mul(omega).mul(&kd_inv);
    let n = lambda.rows();
    let diag = (0..n).all(|a| (0..n).all(|b| blocks.block_of(a) == blocks.block_of(b) || lambda.get(a, b).is_zero()));
    Ok((lambda, diag))
}

/// Everything except the oracle comparison.
pub fn analyze(g: &ReflectionGroup, t: &CharacterTable, p: &Preorder, trunc: usize, buffer: usize) -> Result<KostkaReport> {
    let omega_tab = omega_matrix(g, t);
    let tables = module_tables(g, t, p, &omega_tab, trunc, buffer)?;
    let ord = p.ordering();
    let blocks = blocks_for(p, t)?;
    let omega = omega_tab.select(&ord, &ord);
    let perm = |s: &SeriesMat| s.select(&ord, &ord);
    let tables = ModuleTables {
        trunc,
        proj: perm(&tables.proj),
        costd: perm(&tables.costd),
        trace: perm(&tables.trace),
    };
    let f = filtration_matrices(&tables)?;
    let (l, d) = block_ldl(&omega, &blocks)?;
    // K has modules in its rows, so it factors [P_χ : L_ψ] = Ω_{ψχ}.
    let graded_proj = SeriesMat::from_ratfun(&omega.transpose(), trunc)?;
    let (lambda, block_diagonal) = lambda_check(&f.k, &graded_proj, &blocks)?;
    let flags = Flags::compute(&f, &lambda, block_diagonal, &omega, &graded_proj, &l, &d, &blocks, buffer)?;
    Ok(KostkaReport {
        group: g.name().to_string(),
        preorder: p.labels(t),
        ordering: ord.iter().map(|&i| t.name(i).to_string()).collect(),
        trunc,
        buffer,
        field: if is_rational(g, t) { "Q".into() } else { format!("Q(zeta_{})", g.conductor()) },
        omega: rows_of(&omega),
        l: rows_of(&l),
        d: rows_of(&d),
        m: f.m.map_entries(|s| s.to_poly()),
        n: f.n,
        k: f.k,
        lambda,
        flags,
        oracle: None,
        hom_checks: None,
    })
}

fn rows_of(m: &Mat<RatFun>) -> Vec<Vec<RatFun>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Partition labels of the ordering, when every row is one.
fn partition_labels(r: &KostkaReport) -> Option<Vec<Vec<usize>>> {
    r.ordering.iter().map(|s| parse_partition(s)).collect()
}

/// Normalization fixed on `S_2` with its dominance preorder.
pub fn s2_normalization() -> Result<(Normalization, Vec<Normalization>)> {
    let (g, t) = crate::builtin::builtin_group("S2")?;
    let p = crate::builtin::builtin_preorder("dominance", &g, &t)?;
    let r = analyze(&g, &t, &p, working_trunc(&g, &t)?, 3)?;
    let labels = partition_labels(&r).expect("S2 rows are partitions");
    choose_normalization(&labels, &r.m)?
        .ok_or_else(|| KostkaError::Validation("no candidate normalization matches the charge table on S2".into()))
}

/// Full report; symmetric groups under dominance also get the oracle
/// comparison.
pub fn kostka_report(g: &ReflectionGroup, t: &CharacterTable, p: &Preorder, trunc: usize, buffer: usize) -> Result<KostkaReport> {
    let mut r = analyze(g, t, p, trunc, buffer)?;
    let rank = crate::builtin::symmetric_rank(g.name()).filter(|&n| (2..=MAX_CHARGE_SIZE).contains(&n));
    if let Some(n) = rank {
        let dom = crate::wgroup::dominance_preorder_sn(t, n).ok();
        if dom.as_ref() == Some(p) {
            if let Some(labels) = partition_labels(&r) {
                r.oracle = Some(oracle_report(s2_normalization()?, &labels, &r.m)?);
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin_group, builtin_preorder};
    use crate::molien::projective_class;
    use crate::scalars::{Poly, Ring};

    fn s(c: &[i64], t: usize) -> QSeries<Q> {
        QSeries::from_coeffs(c.iter().map(|&x| Q::from_int(x)).collect(), t)
    }

    fn even(t: usize) -> QSeries<Q> {
        QSeries::from_coeffs((0..=t).map(|k| Q::from_int(((k + 1) % 2) as i64)).collect(), t)
    }

    fn poly(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| Q::from_int(x)).collect())
    }

    #[test]
    fn s2_golden() {
        let (g, t) = builtin_group("S2").unwrap();
        let p = builtin_preorder("dominance", &g, &t).unwrap();
        let tr = working_trunc(&g, &t).unwrap();
        assert_eq!(tr, 12);
        let r = kostka_report(&g, &t, &p, tr, 3).unwrap();
        assert_eq!(r.ordering, vec!["(1,1)", "(2)"]);
        assert_eq!(r.m, vec![vec![poly(&[1]), Poly::zero()], vec![poly(&[0, 1]), poly(&[1])]]);
        assert_eq!(r.n.get(0, 0), &even(tr));
        assert_eq!(r.n.get(1, 1), &s(&[1], tr));
        assert!(r.n.get(0, 1).is_zero() && r.n.get(1, 0).is_zero());
        assert_eq!(r.l[1][0].to_string(), "q");
        assert_eq!(r.d[0][0].to_string(), "1/(1 - q^2)");
        assert_eq!(r.d[1][1].to_string(), "1");
        // Λ comes out as diag(1 - q², 1).
        assert_eq!(r.lambda.get(0, 0), &s(&[1, 0, -1], tr));
        assert_eq!(r.lambda.get(1, 1), &s(&[1], tr));
        assert!(r.flags.all(), "{:?}", r.flags);
        let o = r.oracle.unwrap();
        assert_eq!(o.normalization, Normalization::Identity);
        assert!(o.passed);
    }

    #[test]
    fn s2_expansions() {
        let (g, t) = builtin_group("S2").unwrap();
        let p = builtin_preorder("dominance", &g, &t).unwrap();
        let ctx = Context::<Q>::new(&g, &t).unwrap();
        let tr = 12;
        let sgn = t.resolve(&g, "sgn").unwrap();
        let triv = t.resolve(&g, "triv").unwrap();
        let bars: Vec<GradedClass> = [sgn, triv]
            .iter()
            .map(|&c| certified_trace(&ctx, &p, c, tr, 3, 0).unwrap().character(&ctx).truncate(tr))
            .collect();
        let c = expand_in_barnabla(&g, &t, &projective_class(&g, &t, sgn, tr).unwrap(), &bars).unwrap();
        assert_eq!(c, vec![even(tr), QSeries::zero(tr)]);
        let c = expand_in_barnabla(&g, &t, &projective_class(&g, &t, triv, tr).unwrap(), &bars).unwrap();
        assert_eq!(c, vec![even(tr).shift(1), s(&[1], tr)]);
        let c = expand_in_barnabla(&g, &t, &bars[1], &bars).unwrap();
        assert_eq!(c, vec![QSeries::zero(tr), s(&[1], tr)]);
        assert!(matches!(
            expand_in_barnabla(&g, &t, &bars[0], &bars[1..]),
            Err(KostkaError::BasisIncomplete(_))
        ));
    }

    #[test]
    fn trivial_group() {
        let (g, t) = builtin_group("trivial").unwrap();
        let p = builtin_preorder("springer", &g, &t).unwrap();
        let r = kostka_report(&g, &t, &p, 12, 3).unwrap();
        assert_eq!(r.m, vec![vec![poly(&[1])]]);
        // ∇̄ is the line in grade 0, so P = C[x] has a ∇̄-filtration of
        // length 1/(1 - q), and Λ = (1 - q)^2 / (1 - q).
        assert_eq!(r.n.get(0, 0), &s(&[1; 13], 12));
        assert_eq!(r.k.get(0, 0), &s(&[1; 13], 12));
        assert_eq!(r.lambda.get(0, 0), &s(&[1, -1], 12));
        assert!(r.flags.all());
    }

    #[test]
    fn one_phylum_gives_identity_l() {
        let (g, t) = builtin_group("S2").unwrap();
        let p = builtin_preorder("one-phylum", &g, &t).unwrap();
        let r = kostka_report(&g, &t, &p, 12, 3).unwrap();
        assert_eq!(r.l, vec![vec![RatFun::one(), RatFun::zero()], vec![RatFun::zero(), RatFun::one()]]);
        assert_eq!(r.d, r.omega);
        assert!(r.oracle.is_none());
    }

    #[test]
    fn corrupted_k_breaks_block_diagonality() {
        let (g, t) = builtin_group("S2").unwrap();
        let p = builtin_preorder("dominance", &g, &t).unwrap();
        let r = analyze(&g, &t, &p, 12, 3).unwrap();
        let blocks = blocks_for(&p, &t).unwrap();
        let om = SeriesMat::from_ratfun(&Mat::from_rows(r.omega.clone()), 12).unwrap();
        let mut k = r.k.clone();
        k.set(1, 0, s(&[0, 2], 12));
        let (_, ok) = lambda_check(&k, &om, &blocks).unwrap();
        assert!(!ok);
        let (_, ok) = lambda_check(&r.k, &om, &blocks).unwrap();
        assert!(ok);
    }

    #[test]
    fn s3_matches_charge_table() {
        let (g, t) = builtin_group("S3").unwrap();
        let p = builtin_preorder("dominance", &g, &t).unwrap();
        let r = kostka_report(&g, &t, &p, 12, 3).unwrap();
        assert_eq!(r.ordering, vec!["(1,1,1)", "(2,1)", "(3)"]);
        assert_eq!(r.m[1][0], poly(&[0, 1, 1]));
        assert_eq!(r.m[2][1], poly(&[0, 1]));
        assert_eq!(r.m[2][0], poly(&[0, 0, 0, 1]));
        assert!(r.flags.all(), "{:?}", r.flags);
        assert!(r.oracle.unwrap().passed);
    }

    /// `C_3` on a line: `P_χ = χ ⊗ C[x]` with `x` of character `chi1`, so
    /// `∇_chi1 = chi1 + chi2⟨1⟩` and `∇_chi2 = chi2` by hand, while every
    /// `∇̄_χ` is one-dimensional.
    #[test]
    fn c3_by_hand() {
        let (g, t) = builtin_group("C3").unwrap();
        let p = builtin_preorder("springer", &g, &t).unwrap();
        let r = analyze(&g, &t, &p, 12, 3).unwrap();
        assert_eq!(r.ordering, vec!["chi0", "chi1", "chi2"]);
        assert!(r.flags.all(), "{:?}", r.flags.failures());
        assert_eq!(r.m[1][0], poly(&[0, 0, 1]));
        assert_eq!(r.m[2][0], poly(&[0, 1]));
        assert_eq!(r.n.get(1, 2), &QSeries::from_coeffs(vec![Q::ZERO, Q::ONE], 12));
        assert!(r.n.get(2, 1).is_zero());
        let one_minus_q3 = QSeries::from_coeffs(vec![Q::ONE, Q::ZERO, Q::ZERO, -Q::ONE], 12);
        assert_eq!(r.lambda.get(0, 0), &one_minus_q3);
        assert_eq!(r.lambda.get(1, 2), &QSeries::from_coeffs(vec![Q::ZERO, -Q::ONE], 12));
        assert!(r.lambda.get(2, 1).is_zero());
    }
}
