use kostka_core::builtin::{builtin_group, builtin_preorder};
use kostka_core::kostka::{kostka_report, orthogonality, trace_summaries, working_trunc, SeriesMat};
use kostka_core::scalars::{QSeries, Q};
use kostka_core::KostkaError;
use proptest::prelude::*;

const GROUPS: [&str; 7] = ["trivial", "S2", "S3", "S4", "B2", "G2", "C3"];

#[test]
fn every_shipped_pair_passes_all_flags() {
    for g in GROUPS {
        let (grp, t) = builtin_group(g).unwrap();
        for p in ["springer", "one-phylum"] {
            let pre = builtin_preorder(p, &grp, &t).unwrap();
            let r = kostka_report(&grp, &t, &pre, working_trunc(&grp, &t).unwrap(), 3).unwrap();
            assert!(r.passed(), "{g} {p}: {:?}", r.flags.failures());
            assert_eq!(r.ordering.len(), t.len());
        }
    }
}

#[test]
fn traces_are_finite_with_lower_triangular_structure() {
    for g in GROUPS {
        let (grp, t) = builtin_group(g).unwrap();
        let p = builtin_preorder("springer", &grp, &t).unwrap();
        for s in trace_summaries(&grp, &t, &p, &[], working_trunc(&grp, &t).unwrap(), 3).unwrap() {
            assert!(s.structure, "{g} {}", s.chi);
            assert!(s.top + 3 <= s.certified_at, "{g} {}", s.chi);
        }
    }
}

/// The rules that follow from the orthogonality results hold; the rule
/// comparing costandards with traces across phyla fails exactly when the
/// source phylum lies above the target.
#[test]
fn hom_rules() {
    for g in ["S2", "S3", "B2", "C3"] {
        let (grp, t) = builtin_group(g).unwrap();
        let p = builtin_preorder("springer", &grp, &t).unwrap();
        let idx = |name: &str| t.resolve(&grp, name).unwrap();
        for c in orthogonality(&grp, &t, &p, working_trunc(&grp, &t).unwrap(), 3).unwrap() {
            if c.rule.name() == "costandard-trace-across-phyla" {
                if p.lt(idx(&c.source), idx(&c.target)) {
                    assert!(c.passed, "{g} {c:?}");
                }
            } else {
                assert!(c.passed, "{g} {c:?}");
            }
        }
    }
}

#[test]
fn sabotaged_truncation_is_reported() {
    let (g, t) = builtin_group("S3").unwrap();
    let p = builtin_preorder("dominance", &g, &t).unwrap();
    assert!(matches!(kostka_report(&g, &t, &p, 1, 3), Err(KostkaError::TruncationInsufficient { .. })));
    assert!(matches!(kostka_report(&g, &t, &p, 0, 3), Err(KostkaError::InvalidTruncation(_))));
}

fn unitriangular(n: usize, t: usize) -> impl Strategy<Value = SeriesMat> {
    proptest::collection::vec(proptest::collection::vec(-3i64..4, t + 1), n * n).prop_map(move |cs| {
        SeriesMat::from_rows(
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let mut c: Vec<Q> = cs[a * n + b].iter().map(|&x| Q::from_int(x)).collect();
                            c[0] = Q::from_int(i64::from(a == b));
                            if b > a {
                                c.iter_mut().for_each(|x| *x = Q::ZERO);
                            }
                            QSeries::from_coeffs(c, t)
                        })
                        .collect()
                })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_inverse_and_solve(m in unitriangular(4, 6), b in unitriangular(4, 6)) {
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.mul(&inv), SeriesMat::identity(4, 6));
        // x·m = b
        let x = b.solve_left(&m).unwrap();
        prop_assert_eq!(x.mul(&m), b);
    }
}
