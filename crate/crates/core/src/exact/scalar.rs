use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::GaussRat;

/// Coefficient field shared by the exact and the floating polynomial paths.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_gauss(g: &GaussRat) -> Self;
    fn to_c64(&self) -> Complex64;
    /// A square root, when one exists in the field.
    fn sqrt_opt(&self) -> Option<Self>;
    /// A cube root, when one exists in the field.
    fn cbrt_opt(&self) -> Option<Self>;
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        GaussRat::zero()
    }
    fn one() -> Self {
        GaussRat::one()
    }
    fn is_zero(&self) -> bool {
        GaussRat::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        GaussRat::from_int(n)
    }
    fn from_gauss(g: &GaussRat) -> Self {
        g.clone()
    }
    fn to_c64(&self) -> Complex64 {
        GaussRat::to_c64(self)
    }
    fn sqrt_opt(&self) -> Option<Self> {
        self.sqrt()
    }
    fn cbrt_opt(&self) -> Option<Self> {
        self.cbrt()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_gauss(g: &GaussRat) -> Self {
        g.to_c64()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn sqrt_opt(&self) -> Option<Self> {
        Some(self.sqrt())
    }
    fn cbrt_opt(&self) -> Option<Self> {
        Some(self.cbrt())
    }
}
