//! Square and rectangular matrices of truncated power series over `Q`.

use serde::Serialize;

use crate::error::{KostkaError, Result};
use crate::linalg::{inverse, Mat};
use crate::scalars::{QSeries, RatFun, Ring, Q};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SeriesMat {
    rows: Vec<Vec<QSeries<Q>>>,
}

impl SeriesMat {
    pub fn zeros(rows: usize, cols: usize, trunc: usize) -> Self {
        SeriesMat { rows: vec![vec![QSeries::zero(trunc); cols]; rows] }
    }

    pub fn identity(n: usize, trunc: usize) -> Self {
        let mut m = Self::zeros(n, n, trunc);
        for i in 0..n {
            m.rows[i][i] = QSeries::one(trunc);
        }
        m
    }

    /// All entries must share one truncation.
    pub fn from_rows(rows: Vec<Vec<QSeries<Q>>>) -> Self {
        SeriesMat { rows }
    }

    pub fn from_ratfun(m: &Mat<RatFun>, trunc: usize) -> Result<Self> {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().map(|r| r.expand(trunc)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesMat { rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn trunc(&self) -> usize {
        self.rows.first().and_then(|r| r.first()).map_or(0, |s| s.trunc())
    }

    pub fn get(&self, i: usize, j: usize) -> &QSeries<Q> {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: QSeries<Q>) {
        self.rows[i][j] = s;
    }

    pub fn row(&self, i: usize) -> &[QSeries<Q>] {
        &self.rows[i]
    }

    /// Coefficient matrix of `q^k`.
    pub fn grade(&self, k: usize) -> Mat<Q> {
        Mat::from_rows(self.rows.iter().map(|r| r.iter().map(|s| s.coeff(k).clone()).collect()).collect())
    }

    pub fn from_grades(grades: &[Mat<Q>], trunc: usize) -> Self {
        let (r, c) = grades.first().map_or((0, 0), |g| (g.rows(), g.cols()));
        let rows = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| QSeries::from_coeffs(grades.iter().map(|g| g[(i, j)].clone()).collect(), trunc))
                    .collect()
            })
            .collect();
        SeriesMat { rows }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let rows = (0..self.rows())
            .map(|i| {
                (0..o.cols())
                    .map(|j| {
                        let mut acc = QSeries::zero(self.trunc());
                        for (l, a) in self.rows[i].iter().enumerate() {
                            if !a.is_zero() && !o.rows[l][j].is_zero() {
                                acc = acc.add(&a.mul(&o.rows[l][j]));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        SeriesMat { rows }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let rows = self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()).collect();
        SeriesMat { rows }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        SeriesMat { rows: rows.iter().map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect()).collect() }
    }

    /// `X ↦ X^‡`, `(X^‡)_{ab} = X_{b̄ ā}`.
    pub fn dagger(&self, bar: &[usize]) -> Self {
        let n = self.rows();
        SeriesMat { rows: (0..n).map(|a| (0..n).map(|b| self.rows[bar[b]][bar[a]].clone()).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|s| s.is_zero())
    }

    /// Grade-by-grade inverse; needs the constant term to be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let t = self.trunc();
        let a0inv = inverse(&self.grade(0)).ok_or(KostkaError::NotAUnit)?;
        let grades: Vec<Mat<Q>> = (0..=t).map(|k| self.grade(k)).collect();
        let mut x: Vec<Mat<Q>> = vec![a0inv.clone()];
        for k in 1..=t {
            let mut s = Mat::zeros(self.rows(), self.rows());
            for j in 1..=k {
                if !grades[j].is_zero() {
                    s = s.add(&grades[j].mul(&x[k - j]));
                }
            }
            x.push(a0inv.mul(&s).scale(&Q::ONE.rneg()));
        }
        Ok(Self::from_grades(&x, t))
    }

    /// The unique `C` with `C·B = self`, solved grade by grade.
    ///
    /// `B` may have fewer rows than columns; its constant term must then
    /// have full row rank, and each grade must be consistent.
    pub fn solve_left(&self, b: &Self) -> Result<Self> {
        let t = self.trunc();
        let r = b.rows();
        let b0 = b.grade(0);
        // Pick r independent columns of B_0 to invert on.
        let cols = independent_columns(&b0.transpose());
        if cols.len() != r {
            return Err(KostkaError::BasisIncomplete(format!(
                "constant term of the basis has rank {} but {r} elements",
                cols.len()
            )));
        }
        let all_rows: Vec<usize> = (0..r).collect();
        let sq_inv = inverse(&b0.select(&all_rows, &cols)).expect("chosen columns are independent");
        let bg: Vec<Mat<Q>> = (0..=t).map(|k| b.grade(k)).collect();
        let mut c: Vec<Mat<Q>> = Vec::with_capacity(t + 1);
        for k in 0..=t {
            let mut rhs = self.grade(k);
            for j in 1..=k {
                if !bg[j].is_zero() {
                    rhs = rhs.sub(&c[k - j].mul(&bg[j]));
                }
            }
            let ck = rhs.select(&(0..rhs.rows()).collect::<Vec<_>>(), &cols).mul(&sq_inv);
            if ck.mul(&b0) != rhs {
                return Err(KostkaError::BasisIncomplete(format!("grade {k} is not in the span of the basis")));
            }
            c.push(ck);
        }
        Ok(Self::from_grades(&c, t))
    }

    pub fn map_entries<T>(&self, f: impl Fn(&QSeries<Q>) -> T) -> Vec<Vec<T>> {
        self.rows.iter().map(|r| r.iter().map(&f).collect()).collect()
    }
}

/// Indices of a maximal independent set of rows of `m.transpose()`, i.e.
/// columns of `m`, greedily from the left.
fn independent_columns(mt: &Mat<Q>) -> Vec<usize> {
    let mut span = crate::linalg::Subspace::new(mt.cols());
    (0..mt.rows()).filter(|&i| span.insert(mt.row(i).to_vec())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Poly;

    fn s(c: &[i64], t: usize) -> QSeries<Q> {
        QSeries::from_coeffs(c.iter().map(|&x| Q::from_int(x)).collect(), t)
    }

    #[test]
    fn inverse_of_unitriangular() {
        let t = 6;
        let m = SeriesMat::from_rows(vec![vec![s(&[1, 0, -1], t), s(&[], t)], vec![s(&[0, 1], t), s(&[1], t)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SeriesMat::identity(2, t));
        assert_eq!(inv.get(0, 0), &s(&[1, 0, 1, 0, 1, 0, 1], t));
    }

    #[test]
    fn solve_left_recovers_coefficients() {
        let t = 5;
        let b = SeriesMat::from_rows(vec![vec![s(&[1], t), s(&[0, 1], t)], vec![s(&[], t), s(&[1], t)]]);
        let c = SeriesMat::from_rows(vec![vec![s(&[1, 2], t), s(&[0, 0, 3], t)]]);
        assert_eq!(c.mul(&b).solve_left(&b).unwrap(), c);
        let thin = b.select(&[0], &[0, 1]);
        let target = SeriesMat::from_rows(vec![vec![s(&[0], t), s(&[1], t)]]);
        assert!(matches!(target.solve_left(&thin), Err(KostkaError::BasisIncomplete(_))));
    }

    #[test]
    fn dagger_uses_the_involution() {
        let t = 2;
        let m = SeriesMat::from_rows(vec![
            vec![s(&[1], t), s(&[2], t), s(&[3], t)],
            vec![s(&[4], t), s(&[5], t), s(&[6], t)],
            vec![s(&[7], t), s(&[8], t), s(&[9], t)],
        ]);
        assert_eq!(m.dagger(&[0, 1, 2]).get(0, 1), &s(&[4], t));
        // bar swaps 1 and 2: (X^‡)_{01} = X_{2 0}.
        assert_eq!(m.dagger(&[0, 2, 1]).get(0, 1), &s(&[7], t));
        let r = Mat::from_rows(vec![vec![RatFun::new(&Poly::one(), &Poly::one_minus(Q::ONE, 1)).unwrap()]]);
        assert_eq!(SeriesMat::from_ratfun(&r, 3).unwrap().get(0, 0), &s(&[1, 1, 1, 1], 3));
    }
}
