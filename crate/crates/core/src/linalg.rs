//! Dense exact linear algebra over any [`Field`].
//!
//! Rank decisions are made by exact zero tests; there are no tolerances.

use crate::scalars::field::{Field, Ring};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Ring> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Build from columns of length `rows`.
    pub fn from_cols(rows: usize, cols: Vec<Vec<F>>) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                let out_row = &mut out.data[i * o.cols..(i + 1) * o.cols];
                for (dst, b) in out_row.iter_mut().zip(orow) {
                    dst.add_mul_assign(a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.radd(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.rsub(b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.rmul(c))
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        let mut acc = F::zero();
        for i in 0..self.rows {
            acc.add_assign(&self[(i, i)]);
        }
        acc
    }

    /// Kronecker product `self ⊗ o`, indexed `(i, k) ↦ i * o.rows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out[(i * o.rows + k, j * o.cols + l)] = a.rmul(&o[(k, l)]);
                    }
                }
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }
}

impl<F> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// A subspace of `F^n` held as fully reduced row-echelon rows.
///
/// Coordinates of a member vector in this basis are its entries at the
/// pivot columns.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::new(ambient);
        for i in 0..ambient {
            let mut v = vec![F::zero(); ambient];
            v[i] = F::one();
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn spanned_by<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vecs: I) -> Self {
        let mut s = Self::new(ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtract the span from `v` in place; the result is zero on every pivot.
    pub fn reduce(&self, v: &mut [F]) {
        debug_assert_eq!(v.len(), self.ambient);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row.iter()) {
                if !r.is_zero() {
                    x.sub_mul_assign(&c, r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Add `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.rmul(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(v.iter()) {
                if !r.is_zero() {
                    x.sub_mul_assign(&c, r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Columns that are not pivots: the canonical complement basis.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut it = self.pivots.iter().peekable();
        for j in 0..self.ambient {
            if it.peek() == Some(&&j) {
                it.next();
            } else {
                out.push(j);
            }
        }
        out
    }

    pub fn intersect_dim(&self, o: &Self) -> usize {
        let mut sum = self.clone();
        for r in &o.rows {
            sum.insert(r.clone());
        }
        self.dim() + o.dim() - sum.dim()
    }
}

/// Quotient `F^n / S` with basis the non-pivot coordinate vectors of `S`.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    sub: Subspace<F>,
    complement: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn new(sub: Subspace<F>) -> Self {
        let complement = sub.non_pivots();
        Quotient { sub, complement }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient()
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.sub
    }

    /// Ambient coordinates of the representatives of the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Image of an ambient vector in quotient coordinates.
    pub fn project(&self, mut v: Vec<F>) -> Vec<F> {
        self.sub.reduce(&mut v);
        self.complement.iter().map(|&j| std::mem::replace(&mut v[j], F::zero())).collect()
    }

    /// Canonical lift of a quotient vector to the ambient space.
    pub fn lift(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.ambient()];
        for (x, &j) in v.iter().zip(&self.complement) {
            out[j] = x.clone();
        }
        out
    }
}

/// Rank via elimination on a copy.
pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    Subspace::spanned_by(m.cols(), m.row_vecs()).dim()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Mat<F>) -> Vec<Vec<F>> {
    let s = Subspace::spanned_by(m.cols(), m.row_vecs());
    let free = s.non_pivots();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); m.cols()];
            x[f] = F::one();
            for (row, &p) in s.basis().iter().zip(s.pivots()) {
                x[p] = row[f].rneg();
            }
            x
        })
        .collect()
}

/// Column space basis (as column vectors) of `m`.
pub fn column_space<F: Field>(m: &Mat<F>) -> Subspace<F> {
    Subspace::spanned_by(m.rows(), (0..m.cols()).map(|j| m.col(j)))
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<F: Field>(m: &Mat<F>) -> Option<Mat<F>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut inv: Mat<F> = Mat::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&r| !a[(r, c)].is_zero())?;
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = std::mem::replace(&mut a[(c, j)], t);
                let t = inv[(p, j)].clone();
                inv[(p, j)] = std::mem::replace(&mut inv[(c, j)], t);
            }
        }
        let piv_inv = a[(c, c)].inv()?;
        for j in 0..n {
            a[(c, j)] = a[(c, j)].rmul(&piv_inv);
            inv[(c, j)] = inv[(c, j)].rmul(&piv_inv);
        }
        for r in 0..n {
            if r == c || a[(r, c)].is_zero() {
                continue;
            }
            let f = a[(r, c)].clone();
            for j in 0..n {
                let (x, y) = (a[(c, j)].clone(), inv[(c, j)].clone());
                a[(r, j)].sub_mul_assign(&f, &x);
                inv[(r, j)].sub_mul_assign(&f, &y);
            }
        }
    }
    Some(inv)
}

/// Solve `m x = b`, returning one solution if consistent.
pub fn solve<F: Field>(m: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(m.rows(), b.len());
    // Eliminate on the augmented matrix [m | b].
    let aug: Vec<Vec<F>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let s = Subspace::spanned_by(m.cols() + 1, aug);
    if s.pivots().contains(&m.cols()) {
        return None;
    }
    let mut x = vec![F::zero(); m.cols()];
    for (row, &p) in s.basis().iter().zip(s.pivots()) {
        x[p] = row[m.cols()].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::Q;
    use proptest::prelude::*;

    fn m(v: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(v.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
    }

    #[test]
    fn rank_nullspace_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        assert!(inverse(&a).is_none());
        let b = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.mul(&inverse(&b).unwrap()), Mat::identity(2));
    }

    #[test]
    fn quotient_projection() {
        let s = Subspace::spanned_by(3, vec![vec![Q::ONE, Q::ONE, Q::ZERO]]);
        let q = Quotient::new(s);
        assert_eq!(q.dim(), 2);
        // (1,1,0) maps to zero; (0,1,0) ≡ -(1,0,0)
        assert!(q.project(vec![Q::ONE, Q::ONE, Q::ZERO]).iter().all(|x| x.is_zero()));
        let a = q.project(vec![Q::ZERO, Q::ONE, Q::ZERO]);
        let b = q.project(vec![Q::ONE, Q::ZERO, Q::ZERO]);
        assert_eq!(a, b.iter().map(|x| -x).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn solve_is_consistent(v in proptest::collection::vec(-5i64..5, 12), b in proptest::collection::vec(-5i64..5, 3)) {
            let a: Mat<Q> = Mat::from_rows(v.chunks(4).map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect());
            let b: Vec<Q> = b.iter().map(|&x| Q::from_int(x)).collect();
            match solve(&a, &b) {
                Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
                None => prop_assert!(rank(&a) < 3),
            }
        }
    }
}
