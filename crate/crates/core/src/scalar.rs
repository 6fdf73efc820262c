//! Scalar abstractions shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Float, Num};

/// A commutative ring with unity. Enough structure for division-free
/// determinant and characteristic-polynomial algorithms.
pub trait Ring: Clone + Debug + PartialEq + Num + Neg<Output = Self> {}

impl<T> Ring for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> {}

/// Floating-point scalar accepted by the numeric eigensolver.
pub trait RealScalar: Float + Debug + Send + Sync {}

impl<T> RealScalar for T where T: Float + Debug + Send + Sync {}
