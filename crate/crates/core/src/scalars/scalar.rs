//! Coefficient fields that can host character values.

use std::fmt::Display;
use std::hash::Hash;

use super::cyclo::Cyclo;
use super::field::Field;
use super::rational::Q;

/// A field containing the character values of the group at hand.
///
/// Rational groups run over `Q`; groups with irrational characters run over
/// `Cyclo`. `from_cyclo` returns `None` when the value does not fit.
pub trait Scalar: Field + Display + Eq + Hash {
    fn from_cyclo(c: &Cyclo) -> Option<Self>;
    fn to_cyclo(&self) -> Cyclo;
    fn conj(&self) -> Self;
}

impl Scalar for Q {
    fn from_cyclo(c: &Cyclo) -> Option<Q> {
        c.as_rational().cloned()
    }
    fn to_cyclo(&self) -> Cyclo {
        Cyclo::from_q(self.clone())
    }
    fn conj(&self) -> Q {
        self.clone()
    }
}

impl Scalar for Cyclo {
    fn from_cyclo(c: &Cyclo) -> Option<Cyclo> {
        Some(c.clone())
    }
    fn to_cyclo(&self) -> Cyclo {
        self.clone()
    }
    fn conj(&self) -> Cyclo {
        Cyclo::conj(self)
    }
}
