use kostka_core::builtin::{builtin_group, builtin_preorder};
use kostka_core::kostka::{block_ldl, blocks_for, Blocks};
use kostka_core::linalg::Mat;
use kostka_core::molien::{fake_degree, invariant_degrees, omega_matrix};
use kostka_core::scalars::{Cyclo, Poly, RatFun, Ring, Q};
use kostka_core::wgroup::{conjugate_character, validate_character_table, Preorder};
use proptest::prelude::*;

const GROUPS: [&str; 7] = ["trivial", "S2", "S3", "S4", "B2", "G2", "C3"];

/// `[d]_q = 1 + q + … + q^{d-1}`
fn q_integer(d: usize) -> Poly<Q> {
    Poly::new(vec![Q::ONE; d])
}

#[test]
fn order_is_product_of_degrees() {
    for (name, order, degrees) in [
        ("trivial", 1, vec![1]),
        ("S2", 2, vec![2]),
        ("S3", 6, vec![2, 3]),
        ("S4", 24, vec![2, 3, 4]),
        ("B2", 8, vec![2, 4]),
        ("G2", 12, vec![2, 6]),
        ("C3", 3, vec![3]),
    ] {
        let (g, t) = builtin_group(name).unwrap();
        assert_eq!(g.order(), order, "{name}");
        assert!(validate_character_table(&g, &t).passed(), "{name}");
        let d = invariant_degrees(&g, &t).unwrap();
        assert_eq!(d, degrees, "{name}");
        assert_eq!(d.iter().product::<usize>(), order);
    }
}

#[test]
fn c3_conjugation_swaps_the_nontrivial_characters() {
    let (g, t) = builtin_group("C3").unwrap();
    let z = t.resolve(&g, "chi1").unwrap();
    let zb = conjugate_character(&t, z).unwrap();
    assert_eq!(t.name(zb), "chi2");
    assert_eq!(conjugate_character(&t, zb).unwrap(), z);
    for (a, b) in t.row(z).iter().zip(t.row(zb)) {
        assert_eq!(a.conj(), *b);
    }
    assert_eq!(t.row(z)[1], Cyclo::zeta(3, 1));
}

/// `Ω_{χψ} = Ω_{ψ̄χ̄}` and nonnegative integer expansions.
#[test]
fn omega_duality_and_positivity() {
    for name in GROUPS {
        let (g, t) = builtin_group(name).unwrap();
        let om = omega_matrix(&g, &t);
        let bar: Vec<usize> = (0..t.len()).map(|c| conjugate_character(&t, c).unwrap()).collect();
        for a in 0..t.len() {
            for b in 0..t.len() {
                assert_eq!(om[(a, b)], om[(bar[b], bar[a])], "{name}");
                let s = om[(a, b)].expand(12).unwrap();
                assert!(s.coeffs().iter().all(|c| c.is_integer() && !c.is_negative()), "{name}");
            }
        }
    }
}

/// Fake degrees weighted by dimension give the coinvariant Hilbert series
/// `Π [d_i]_q`, and the trivial fake degree is 1.
#[test]
fn fake_degrees_sum_to_coinvariant_series() {
    for name in GROUPS {
        let (g, t) = builtin_group(name).unwrap();
        let degrees = invariant_degrees(&g, &t).unwrap();
        let mut total = Poly::zero();
        for chi in 0..t.len() {
            let f = fake_degree(&g, &t, &degrees, chi).unwrap();
            total = total.add(&f.scale(&Q::from_int(t.dim(chi) as i64)));
        }
        let want = degrees.iter().fold(Poly::one(), |acc, &d| acc.mul(&q_integer(d)));
        assert_eq!(total, want, "{name}");
        let triv = t.trivial().unwrap();
        assert_eq!(fake_degree(&g, &t, &degrees, triv).unwrap(), Poly::one(), "{name}");
    }
}

fn permuted(m: &Mat<RatFun>, perm: &[usize]) -> Mat<RatFun> {
    m.select(perm, perm)
}

fn coarse_s4() -> (Mat<RatFun>, Blocks) {
    let (g, t) = builtin_group("S4").unwrap();
    let idx = |l: &str| t.resolve(&g, l).unwrap();
    let p = Preorder::new(
        t.len(),
        vec![vec![idx("(1,1,1,1)"), idx("(2,1,1)")], vec![idx("(2,2)")], vec![idx("(3,1)"), idx("(4)")]],
    )
    .unwrap();
    let ord = p.ordering();
    (omega_matrix(&g, &t).select(&ord, &ord), blocks_for(&p, &t).unwrap())
}

fn shipped(name: &str) -> (Mat<RatFun>, Blocks) {
    let (g, t) = builtin_group(name).unwrap();
    let p = builtin_preorder("springer", &g, &t).unwrap();
    let ord = p.ordering();
    (omega_matrix(&g, &t).select(&ord, &ord), blocks_for(&p, &t).unwrap())
}

/// A permutation of `0..n` moving indices only within their block.
fn block_permutation(blocks: &Blocks, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..blocks.len()).collect();
    let mut s = seed;
    for r in &blocks.ranges {
        for i in (r.start + 1..r.end).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = r.start + (s >> 33) as usize % (i - r.start + 1);
            perm.swap(i, j);
        }
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Reordering characters inside a phylum permutes `L` and `D` the same way.
    #[test]
    fn ldl_is_blockwise_well_defined(which in 0usize..4, seed in any::<u64>()) {
        let (om, blocks) = match which {
            0 => coarse_s4(),
            1 => shipped("B2"),
            2 => shipped("G2"),
            _ => shipped("C3"),
        };
        let perm = block_permutation(&blocks, seed);
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let bar: Vec<usize> = perm.iter().map(|&p| inv[blocks.bar[p]]).collect();
        let pblocks = Blocks { ranges: blocks.ranges.clone(), bar };
        let (l, d) = block_ldl(&om, &blocks).unwrap();
        let (lp, dp) = block_ldl(&permuted(&om, &perm), &pblocks).unwrap();
        prop_assert_eq!(lp, permuted(&l, &perm));
        prop_assert_eq!(dp, permuted(&d, &perm));
    }

    /// The Molien pairing is linear in the second character: summing the
    /// columns weighted by dimension gives the series of `S(h) ⊗ C[W]`.
    #[test]
    fn regular_column_sum(which in 0usize..7, row in 0usize..8) {
        let (g, t) = builtin_group(GROUPS[which]).unwrap();
        let chi = row % t.len();
        let om = omega_matrix(&g, &t);
        let mut sum = RatFun::zero();
        for psi in 0..t.len() {
            sum.add_mul_assign(&om[(chi, psi)], &RatFun::from_q(Q::from_int(t.dim(psi) as i64)));
        }
        // [L_χ : S(h) ⊗ C[W]] = dim χ · 1/(1-q)^{dim h}
        let den = (0..g.dim_h()).fold(Poly::one(), |acc: Poly<Q>, _| acc.mul(&Poly::one_minus(Q::ONE, 1)));
        let want = RatFun::new(&Poly::constant(Q::from_int(t.dim(chi) as i64)), &den).unwrap();
        prop_assert_eq!(sum, want);
    }
}
