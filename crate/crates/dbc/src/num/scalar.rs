use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type C64 = Complex64;

/// Scalars the matrix kernels are generic over: plain complex numbers and
/// forward-mode jets. Pivot decisions and convergence tests look only at the
/// value part, so factorization code runs unchanged under differentiation.
pub trait Scalar:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(z: C64) -> Self;
    /// Value part (the underlying complex number, derivatives dropped).
    fn val(&self) -> C64;
    /// Modulus of the value part, used for pivoting.
    fn modulus(&self) -> f64 {
        self.val().norm()
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_c64(z: C64) -> Self {
        z
    }
    fn val(&self) -> C64 {
        *self
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}
