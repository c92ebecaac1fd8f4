//! Truncated formal power series.
//!
//! A [`PowerSeries`] of order `M` stores the coefficients of `q^0..=q^M`;
//! everything above `q^M` is unknown and never read. The type is generic
//! over the coefficient scalar. Integer scalars (`i64`, `BigInt`) support
//! ring operations and eta products; field scalars implementing
//! [`Coefficient`] also support inversion and the logarithmic derivative.
//! The exact case, `BigRational`, routes those through integer kernels in
//! [`exact`].

pub mod eta;
pub mod exact;
pub mod product;

use std::fmt::Debug;
use std::ops::Neg;

use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num};

use crate::error::{Error, Result};

pub use eta::EtaQuotient;
pub use product::expand_product;

/// Ring-valued coefficient.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

/// Field-valued coefficient. The default kernels are the textbook
/// recurrences; implementations may substitute faster exact routes.
pub trait Coefficient: Scalar {
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        schoolbook_mul(a, b)
    }

    /// Inverse of `a`, assuming `a[0] != 0`.
    fn invert_coeffs(a: &[Self]) -> Vec<Self> {
        let order = a.len();
        let mut out: Vec<Self> = Vec::with_capacity(order);
        out.push(Self::one() / a[0].clone());
        for n in 1..order {
            let mut acc = Self::zero();
            for k in 1..=n {
                acc = acc + a[k].clone() * out[n - k].clone();
            }
            out.push(-acc / a[0].clone());
        }
        out
    }

    /// `q·a'/a`, assuming `a[0] != 0`.
    fn log_deriv_coeffs(a: &[Self]) -> Vec<Self> {
        let order = a.len();
        let mut out: Vec<Self> = vec![Self::zero(); order];
        for n in 1..order {
            let mut acc = scale(&a[n], n);
            for k in 1..n {
                acc = acc - out[k].clone() * a[n - k].clone();
            }
            out[n] = acc / a[0].clone();
        }
        out
    }
}

impl Coefficient for f32 {}
impl Coefficient for f64 {}
impl Coefficient for Ratio<i64> {}

impl Coefficient for BigRational {
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        exact::mul(a, b)
    }

    fn invert_coeffs(a: &[Self]) -> Vec<Self> {
        exact::invert(a)
    }

    fn log_deriv_coeffs(a: &[Self]) -> Vec<Self> {
        exact::log_deriv(a)
    }
}

fn scale<T: Scalar>(x: &T, n: usize) -> T {
    x.clone() * T::from_usize(n).expect("index representable in scalar type")
}

fn schoolbook_mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let len = a.len();
    (0..len)
        .map(|n| (0..=n).fold(T::zero(), |acc, k| acc + a[k].clone() * b[n - k].clone()))
        .collect()
}

/// Truncated series `∑_{n=0}^{M} a(n) q^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> PowerSeries<T> {
    /// Builds a series from `M + 1` coefficients.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape("a series needs at least the constant term".into()));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, T::one())
    }

    /// `coeff · q^degree`, truncated at `order` (so `degree > order` gives zero).
    pub fn monomial(order: usize, degree: usize, coeff: T) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = coeff;
        }
        s
    }

    /// Pads with zeros or truncates to `order + 1` coefficients. Only valid
    /// for padding when the caller knows the missing tail is zero.
    pub fn from_prefix(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        PowerSeries { coeffs }
    }

    /// Truncation order `M`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` above the truncation order.
    pub fn get(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Shape(format!(
                "cannot raise truncation order from {} to {order}",
                self.order()
            )));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        })
    }

    /// Cauchy product, truncated at the shared order. Ring-generic; field
    /// scalars should prefer [`PowerSeries::mul`].
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: schoolbook_mul(&self.coeffs, &other.coeffs),
        })
    }

    /// `q · d/dq`, i.e. `a(n) ↦ n·a(n)`.
    pub fn theta(&self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(n, x)| scale(x, n)).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Shape(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Err(Error::NonUnit)
        } else {
            Ok(())
        }
    }
}

impl<T: Coefficient> PowerSeries<T> {
    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: T::mul_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        self.check_unit()?;
        Ok(PowerSeries {
            coeffs: T::invert_coeffs(&self.coeffs),
        })
    }

    /// Logarithmic derivative `q·a'/a`. The constant term is always zero.
    pub fn log_deriv(&self) -> Result<Self> {
        self.check_unit()?;
        Ok(PowerSeries {
            coeffs: T::log_deriv_coeffs(&self.coeffs),
        })
    }
}
