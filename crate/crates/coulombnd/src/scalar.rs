//! The scalar abstraction shared by jets and field-coefficient evaluation.
//!
//! The same generic code runs over double/single-precision floats and over
//! exact rationals. Rationals implement the transcendental hooks partially:
//! an operation whose result would be irrational reports
//! [`NumericError::Irrational`] instead of silently approximating. Exact
//! verification paths avoid those hooks entirely by working with
//! gauge-reduced series and angle variables given by rational sine/cosine
//! pairs.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{exact_pow, rint, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value")]
    NegativeSqrt,
    #[error("logarithm of a non-positive value")]
    NonPositiveLog,
    #[error("fractional power of a negative or zero value")]
    BadPowBase,
    #[error("exact arithmetic cannot represent {0}")]
    Irrational(String),
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("jet order too low: need {need}, have {have}")]
    InsufficientOrder { need: usize, have: usize },
    #[error("variable {0} is specified only through its sine/cosine at this point")]
    AngleOnly(usize),
    #[error("no sine/cosine data for variable {0} at this point")]
    MissingTrig(usize),
    #[error("arity mismatch: {0}")]
    Arity(String),
}

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True when arithmetic is exact and zero-tolerance comparisons apply.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn try_recip(&self) -> Result<Self, NumericError>;
    fn try_sqrt(&self) -> Result<Self, NumericError>;
    fn try_exp(&self) -> Result<Self, NumericError>;
    fn try_ln(&self) -> Result<Self, NumericError>;
    fn try_sin(&self) -> Result<Self, NumericError>;
    fn try_cos(&self) -> Result<Self, NumericError>;
    /// `self` raised to a rational exponent.
    fn try_pow(&self, e: &Rational) -> Result<Self, NumericError>;

    /// Magnitude as a double, used for residual accounting and reports.
    fn abs_approx(&self) -> f64;
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(q: &Rational) -> Self {
                q.to_f64().expect("rational out of float range") as $t
            }

            fn try_recip(&self) -> Result<Self, NumericError> {
                if *self == 0.0 {
                    Err(NumericError::DivisionByZero)
                } else {
                    Ok(1.0 / self)
                }
            }

            fn try_sqrt(&self) -> Result<Self, NumericError> {
                if *self < 0.0 {
                    Err(NumericError::NegativeSqrt)
                } else {
                    Ok(self.sqrt())
                }
            }

            fn try_exp(&self) -> Result<Self, NumericError> {
                Ok(self.exp())
            }

            fn try_ln(&self) -> Result<Self, NumericError> {
                if *self <= 0.0 {
                    Err(NumericError::NonPositiveLog)
                } else {
                    Ok(self.ln())
                }
            }

            fn try_sin(&self) -> Result<Self, NumericError> {
                Ok(self.sin())
            }

            fn try_cos(&self) -> Result<Self, NumericError> {
                Ok(self.cos())
            }

            fn try_pow(&self, e: &Rational) -> Result<Self, NumericError> {
                if e.is_integer() {
                    let k: i32 = e
                        .to_integer()
                        .to_i32()
                        .ok_or_else(|| NumericError::Irrational("huge exponent".into()))?;
                    if *self == 0.0 && k < 0 {
                        return Err(NumericError::DivisionByZero);
                    }
                    return Ok(self.powi(k));
                }
                if *self <= 0.0 {
                    return Err(NumericError::BadPowBase);
                }
                Ok(self.powf(e.to_f64().expect("rational exponent out of range") as $t))
            }

            fn abs_approx(&self) -> f64 {
                (*self as f64).abs()
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn try_recip(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            Err(NumericError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn try_sqrt(&self) -> Result<Self, NumericError> {
        if self.is_negative() {
            return Err(NumericError::NegativeSqrt);
        }
        exact_pow(self, &Rational::new(1.into(), 2.into()))
            .ok_or_else(|| NumericError::Irrational(format!("sqrt({self})")))
    }

    fn try_exp(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            Ok(Rational::one())
        } else {
            Err(NumericError::Irrational(format!("exp({self})")))
        }
    }

    fn try_ln(&self) -> Result<Self, NumericError> {
        if !self.is_positive() {
            Err(NumericError::NonPositiveLog)
        } else if self.is_one() {
            Ok(Rational::zero())
        } else {
            Err(NumericError::Irrational(format!("ln({self})")))
        }
    }

    fn try_sin(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            Ok(Rational::zero())
        } else {
            Err(NumericError::Irrational(format!("sin({self})")))
        }
    }

    fn try_cos(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            Ok(Rational::one())
        } else {
            Err(NumericError::Irrational(format!("cos({self})")))
        }
    }

    fn try_pow(&self, e: &Rational) -> Result<Self, NumericError> {
        if self.is_zero() && e.is_negative() {
            return Err(NumericError::DivisionByZero);
        }
        exact_pow(self, e).ok_or_else(|| NumericError::Irrational(format!("({self})^({e})")))
    }

    fn abs_approx(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
}

/// Convenience: the rational `n` as any scalar.
pub fn from_int<S: Scalar>(n: i64) -> S {
    S::from_rational(&rint(n))
}
