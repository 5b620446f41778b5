use std::fmt::Debug;

use super::rational::Q;

/// Commutative ring operations used by the generic polynomial, series and
/// matrix code. Method names avoid clashing with `std::ops`.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn from_q(q: &Q) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.rsub(&a.rmul(b));
    }

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.radd(&a.rmul(b));
    }

    fn add_assign(&mut self, o: &Self) {
        if !o.is_zero() {
            *self = self.radd(o);
        }
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn rdiv(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.rmul(&i))
    }
}

impl Ring for Q {
    fn zero() -> Q {
        Q::ZERO
    }
    fn one() -> Q {
        Q::ONE
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
    fn radd(&self, o: &Q) -> Q {
        self + o
    }
    fn rsub(&self, o: &Q) -> Q {
        self - o
    }
    fn rmul(&self, o: &Q) -> Q {
        self * o
    }
    fn rneg(&self) -> Q {
        -self
    }
    fn from_q(q: &Q) -> Q {
        q.clone()
    }
    fn is_one(&self) -> bool {
        Q::is_one(self)
    }
    fn sub_mul_assign(&mut self, a: &Q, b: &Q) {
        Q::sub_mul_assign(self, a, b)
    }
    fn add_mul_assign(&mut self, a: &Q, b: &Q) {
        Q::add_mul_assign(self, a, b)
    }
}

impl Field for Q {
    fn inv(&self) -> Option<Q> {
        Q::inv(self)
    }
}
