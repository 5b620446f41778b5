//! Block `L·D·L^‡` factorization of Ω over `Q(q)`, one phylum at a time.

use crate::error::{KostkaError, Result};
use crate::linalg::{inverse, Mat};
use crate::scalars::RatFun;

use super::series::SeriesMat;

/// Phylum blocks as contiguous index ranges of a phylum-ascending ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub ranges: Vec<std::ops::Range<usize>>,
    /// Index involution `a ↦ ā`, preserving each block.
    pub bar: Vec<usize>,
}

impl Blocks {
    pub fn block_of(&self, a: usize) -> usize {
        self.ranges.iter().position(|r| r.contains(&a)).expect("index inside some block")
    }

    pub fn len(&self) -> usize {
        self.bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bar.is_empty()
    }
}

fn sub_block(m: &Mat<RatFun>, r: &std::ops::Range<usize>, c: &std::ops::Range<usize>) -> Mat<RatFun> {
    m.select(&r.clone().collect::<Vec<_>>(), &c.clone().collect::<Vec<_>>())
}

fn put_block(m: &mut Mat<RatFun>, r: &std::ops::Range<usize>, c: &std::ops::Range<usize>, b: &Mat<RatFun>) {
    for (i, a) in r.clone().enumerate() {
        for (j, bb) in c.clone().enumerate() {
            m[(a, bb)] = b[(i, j)].clone();
        }
    }
}

/// `(X^‡)_{ab} = X_{b̄ ā}`.
pub fn dagger(x: &Mat<RatFun>, bar: &[usize]) -> Mat<RatFun> {
    let n = x.rows();
    Mat::from_rows((0..n).map(|a| (0..n).map(|b| x[(bar[b], bar[a])].clone()).collect()).collect())
}

/// `X_{āb̄}`. By duality `Ω^T` is `Ω` with its indices conjugated, so this
/// turns the factors of `Ω` into those of `Ω^T`.
pub fn conjugate_indices(x: &Mat<RatFun>, bar: &[usize]) -> Mat<RatFun> {
    let n = x.rows();
    Mat::from_rows((0..n).map(|a| (0..n).map(|b| x[(bar[a], bar[b])].clone()).collect()).collect())
}

/// Unique `L` (block lower unitriangular) and `D` (block diagonal) with
/// `L·D·L^‡ = Ω`.
pub fn block_ldl(omega: &Mat<RatFun>, blocks: &Blocks) -> Result<(Mat<RatFun>, Mat<RatFun>)> {
    let n = omega.rows();
    let mut s = omega.clone();
    let mut l: Mat<RatFun> = Mat::identity(n);
    let mut d: Mat<RatFun> = Mat::zeros(n, n);
    for (bi, b) in blocks.ranges.iter().enumerate() {
        let db = sub_block(&s, b, b);
        let dinv = inverse(&db).ok_or_else(|| KostkaError::FactorizationFailed(format!("diagonal block {bi} is singular")))?;
        put_block(&mut d, b, b, &db);
        for b2 in &blocks.ranges[bi + 1..] {
            put_block(&mut l, b2, b, &sub_block(&s, b2, b).mul(&dinv));
        }
        // Schur complement on the remaining blocks.
        let rest = b.end..n;
        if rest.is_empty() {
            break;
        }
        let lr = sub_block(&l, &rest, b);
        // (L^‡)_{B, rest} with a ∈ B, c ∈ rest: L_{c̄ ā}.
        let ld: Mat<RatFun> = Mat::from_rows(
            b.clone().map(|a| rest.clone().map(|c| l[(blocks.bar[c], blocks.bar[a])].clone()).collect()).collect(),
        );
        let upd = lr.mul(&db).mul(&ld);
        let cur = sub_block(&s, &rest, &rest);
        put_block(&mut s, &rest, &rest, &cur.sub(&upd));
    }
    Ok((l, d))
}

/// `L_{B'B} = K_{B'B}·K_{BB}^{-1}` for every pair of blocks, with `L`
/// expanded to the truncation of `K`.
pub fn ldl_consistency(l: &Mat<RatFun>, k: &SeriesMat, blocks: &Blocks) -> Result<bool> {
    let t = k.trunc();
    let ls = SeriesMat::from_ratfun(l, t)?;
    for (bi, b) in blocks.ranges.iter().enumerate() {
        let bidx: Vec<usize> = b.clone().collect();
        let kbb_inv = k.select(&bidx, &bidx).inverse()?;
        for (bj, b2) in blocks.ranges.iter().enumerate() {
            let b2idx: Vec<usize> = b2.clone().collect();
            let lhs = ls.select(&b2idx, &bidx);
            let want = if bj >= bi {
                k.select(&b2idx, &bidx).mul(&kbb_inv)
            } else {
                SeriesMat::zeros(b2idx.len(), bidx.len(), t)
            };
            if lhs != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `L·D·L^‡ = Ω` exactly.
pub fn ldl_reconstructs(l: &Mat<RatFun>, d: &Mat<RatFun>, omega: &Mat<RatFun>, bar: &[usize]) -> bool {
    l.mul(d).mul(&dagger(l, bar)) == *omega
}

/// `Ω_{ab} = Ω_{b̄ ā}`.
pub fn is_hermitian(m: &Mat<RatFun>, bar: &[usize]) -> bool {
    dagger(m, bar) == *m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Poly, Ring, Q};

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        let p = |c: &[i64]| Poly::new(c.iter().map(|&x| Q::from_int(x)).collect());
        RatFun::new(&p(num), &p(den)).unwrap()
    }

    fn s2_omega() -> Mat<RatFun> {
        let a = rf(&[1], &[1, 0, -1]);
        let b = rf(&[0, 1], &[1, 0, -1]);
        Mat::from_rows(vec![vec![a.clone(), b.clone()], vec![b, a]])
    }

    fn singletons(n: usize) -> Blocks {
        Blocks { ranges: (0..n).map(|i| i..i + 1).collect(), bar: (0..n).collect() }
    }

    #[test]
    fn s2_factorization() {
        let om = s2_omega();
        let (l, d) = block_ldl(&om, &singletons(2)).unwrap();
        assert_eq!(l[(1, 0)], rf(&[0, 1], &[1]));
        assert_eq!(l[(0, 1)], RatFun::zero());
        assert_eq!(d[(0, 0)], rf(&[1], &[1, 0, -1]));
        assert_eq!(d[(1, 1)], RatFun::one());
        assert_eq!(d[(1, 0)], RatFun::zero());
        assert!(ldl_reconstructs(&l, &d, &om, &[0, 1]));
    }

    #[test]
    fn trivial_shapes() {
        let id: Mat<RatFun> = Mat::identity(3);
        let (l, d) = block_ldl(&id, &singletons(3)).unwrap();
        assert_eq!((l.clone(), d), (id.clone(), id.clone()));
        let om = s2_omega();
        let one = Blocks { ranges: vec![0..2], bar: vec![0, 1] };
        let (l, d) = block_ldl(&om, &one).unwrap();
        assert_eq!(l, Mat::identity(2));
        assert_eq!(d, om);
    }

    #[test]
    fn singular_block_names_its_index() {
        let z = Mat::from_rows(vec![vec![RatFun::one(), RatFun::one()], vec![RatFun::one(), RatFun::one()]]);
        match block_ldl(&z, &singletons(2)) {
            Err(KostkaError::FactorizationFailed(msg)) => assert!(msg.contains("block 1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn consistency_detects_corruption() {
        let om = s2_omega();
        let (mut l, _) = block_ldl(&om, &singletons(2)).unwrap();
        let t = 8;
        let k = SeriesMat::from_ratfun(
            &Mat::from_rows(vec![vec![rf(&[1], &[1, 0, -1]), RatFun::zero()], vec![rf(&[0, 1], &[1, 0, -1]), RatFun::one()]]),
            t,
        )
        .unwrap();
        assert!(ldl_consistency(&l, &k, &singletons(2)).unwrap());
        l[(1, 0)] = rf(&[0, 2], &[1]);
        assert!(!ldl_consistency(&l, &k, &singletons(2)).unwrap());
    }
}
