//! Symbolic scalar fields: the coefficient functions of differential
//! operators in curvilinear or Cartesian coordinates.
//!
//! A `FieldCoef` is a small expression tree over named variables. It is not
//! simplified beyond constant folding; its job is to be differentiated
//! symbolically (for operator composition) and expanded into jets at a
//! point (for operator application). Structural equality is decidable but
//! carries no algebraic meaning.

use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::jet::{Jet, JetPoint};
use crate::rational::{rint, Rational};
use crate::scalar::{NumericError, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub enum FieldCoef {
    Const(Rational),
    Var(usize),
    Add(Box<FieldCoef>, Box<FieldCoef>),
    Mul(Box<FieldCoef>, Box<FieldCoef>),
    Div(Box<FieldCoef>, Box<FieldCoef>),
    Pow(Box<FieldCoef>, Rational),
    Exp(Box<FieldCoef>),
    Sin(Box<FieldCoef>),
    Cos(Box<FieldCoef>),
}

use FieldCoef::*;

/// Constructors with constant folding.
pub mod fc {
    use super::*;

    pub fn c(q: Rational) -> FieldCoef {
        Const(q)
    }

    pub fn ci(n: i64) -> FieldCoef {
        Const(rint(n))
    }

    pub fn var(i: usize) -> FieldCoef {
        Var(i)
    }

    pub fn add(a: FieldCoef, b: FieldCoef) -> FieldCoef {
        match (a, b) {
            (Const(x), Const(y)) => Const(x + y),
            (Const(x), b) if x.is_zero() => b,
            (a, Const(y)) if y.is_zero() => a,
            (a, b) => Add(Box::new(a), Box::new(b)),
        }
    }

    pub fn sum(terms: impl IntoIterator<Item = FieldCoef>) -> FieldCoef {
        terms.into_iter().fold(ci(0), add)
    }

    pub fn neg(a: FieldCoef) -> FieldCoef {
        mul(ci(-1), a)
    }

    pub fn sub(a: FieldCoef, b: FieldCoef) -> FieldCoef {
        add(a, neg(b))
    }

    pub fn mul(a: FieldCoef, b: FieldCoef) -> FieldCoef {
        match (a, b) {
            (Const(x), Const(y)) => Const(x * y),
            (Const(x), _) if x.is_zero() => Const(Rational::zero()),
            (_, Const(y)) if y.is_zero() => Const(Rational::zero()),
            (Const(x), b) if x.is_one() => b,
            (a, Const(y)) if y.is_one() => a,
            (a, b) => Mul(Box::new(a), Box::new(b)),
        }
    }

    pub fn prod(terms: impl IntoIterator<Item = FieldCoef>) -> FieldCoef {
        terms.into_iter().fold(ci(1), mul)
    }

    pub fn div(a: FieldCoef, b: FieldCoef) -> FieldCoef {
        match (a, b) {
            (Const(x), Const(y)) if !y.is_zero() => Const(x / y),
            (a, Const(y)) if y.is_one() => a,
            (a, b) => Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn pow(a: FieldCoef, e: Rational) -> FieldCoef {
        if e.is_zero() {
            return ci(1);
        }
        if e.is_one() {
            return a;
        }
        if let Const(x) = &a {
            if let Some(v) = crate::rational::exact_pow(x, &e) {
                return Const(v);
            }
        }
        Pow(Box::new(a), e)
    }

    pub fn powi(a: FieldCoef, k: i64) -> FieldCoef {
        pow(a, rint(k))
    }

    pub fn sqrt(a: FieldCoef) -> FieldCoef {
        pow(a, Rational::new(1.into(), 2.into()))
    }

    pub fn recip(a: FieldCoef) -> FieldCoef {
        powi(a, -1)
    }

    pub fn exp(a: FieldCoef) -> FieldCoef {
        if let Const(x) = &a {
            if x.is_zero() {
                return ci(1);
            }
        }
        Exp(Box::new(a))
    }

    pub fn sin(a: FieldCoef) -> FieldCoef {
        Sin(Box::new(a))
    }

    pub fn cos(a: FieldCoef) -> FieldCoef {
        Cos(Box::new(a))
    }

    /// `tan(x_i)` as sin/cos.
    pub fn tan_var(i: usize) -> FieldCoef {
        div(sin(var(i)), cos(var(i)))
    }

    /// `cot(x_i)` as cos/sin.
    pub fn cot_var(i: usize) -> FieldCoef {
        div(cos(var(i)), sin(var(i)))
    }
}

impl FieldCoef {
    /// Symbolic partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> FieldCoef {
        match self {
            Const(_) => fc::ci(0),
            Var(j) => {
                if *j == i {
                    fc::ci(1)
                } else {
                    fc::ci(0)
                }
            }
            Add(a, b) => fc::add(a.derivative(i), b.derivative(i)),
            Mul(a, b) => fc::add(
                fc::mul(a.derivative(i), (**b).clone()),
                fc::mul((**a).clone(), b.derivative(i)),
            ),
            Div(a, b) => fc::sub(
                fc::div(a.derivative(i), (**b).clone()),
                fc::div(
                    fc::mul((**a).clone(), b.derivative(i)),
                    fc::mul((**b).clone(), (**b).clone()),
                ),
            ),
            Pow(a, e) => fc::mul(
                fc::mul(fc::c(e.clone()), fc::pow((**a).clone(), e - rint(1))),
                a.derivative(i),
            ),
            Exp(a) => fc::mul(fc::exp((**a).clone()), a.derivative(i)),
            Sin(a) => fc::mul(fc::cos((**a).clone()), a.derivative(i)),
            Cos(a) => fc::neg(fc::mul(fc::sin((**a).clone()), a.derivative(i))),
        }
    }

    /// Expands the field into a jet at the point. Sines and cosines of bare
    /// variables use the point's `(sin, cos)` data when present, so exact
    /// points with rational angle pairs stay in the rational field.
    pub fn lift<S: Scalar>(
        &self,
        point: &Arc<JetPoint<S>>,
        order: usize,
    ) -> Result<Jet<S>, NumericError> {
        match self {
            Const(q) => Ok(Jet::constant(point.clone(), order, S::from_rational(q))),
            Var(i) => Jet::variable(point.clone(), order, *i),
            Add(a, b) => Ok(a.lift(point, order)?.add(&b.lift(point, order)?)),
            Mul(a, b) => Ok(a.lift(point, order)?.mul(&b.lift(point, order)?)),
            Div(a, b) => {
                let den = b.lift(point, order)?;
                if den.value().is_zero() {
                    return Err(NumericError::SingularPoint(format!(
                        "denominator {} vanishes",
                        b.display_indices()
                    )));
                }
                a.lift(point, order)?.div(&den)
            }
            Pow(a, e) => {
                let base = a.lift(point, order)?;
                if base.value().is_zero() && (e.is_negative() || !e.is_integer()) {
                    return Err(NumericError::SingularPoint(format!(
                        "power base {} vanishes (exponent {e})",
                        a.display_indices()
                    )));
                }
                base.pow(e)
            }
            Exp(a) => a.lift(point, order)?.exp(),
            Sin(a) => {
                if let Var(i) = **a {
                    Jet::sin_of_var(point, order, i)
                } else {
                    a.lift(point, order)?.sin()
                }
            }
            Cos(a) => {
                if let Var(i) = **a {
                    Jet::cos_of_var(point, order, i)
                } else {
                    a.lift(point, order)?.cos()
                }
            }
        }
    }

    /// Value at a point (order-zero lift).
    pub fn eval<S: Scalar>(&self, point: &Arc<JetPoint<S>>) -> Result<S, NumericError> {
        Ok(self.lift(point, 0)?.value())
    }

    /// Rendering with `x{i}` placeholders for variables.
    pub fn display_indices(&self) -> String {
        self.render(&|i| format!("x{i}"))
    }

    /// Rendering with the supplied variable names.
    pub fn display_named(&self, vars: &[String]) -> String {
        self.render(&|i| vars[i].clone())
    }

    fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        match self {
            Const(q) => {
                if q.is_negative() {
                    format!("({q})")
                } else {
                    format!("{q}")
                }
            }
            Var(i) => name(*i),
            Add(a, b) => format!("({} + {})", a.render(name), b.render(name)),
            Mul(a, b) => format!("{}*{}", a.render(name), b.render(name)),
            Div(a, b) => format!("{}/{}", a.render(name), b.render(name)),
            Pow(a, e) => format!("{}^({e})", a.render(name)),
            Exp(a) => format!("exp({})", a.render(name)),
            Sin(a) => format!("sin({})", a.render(name)),
            Cos(a) => format!("cos({})", a.render(name)),
        }
    }
}

impl fmt::Display for FieldCoef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_indices())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;
    use crate::rational::rat;

    #[test]
    fn folding_keeps_trees_small() {
        let e = fc::add(fc::ci(0), fc::mul(fc::ci(1), fc::var(0)));
        assert_eq!(e, Var(0));
        assert_eq!(fc::pow(fc::ci(4), rat(1, 2)), Const(rint(2)));
        assert_eq!(fc::mul(fc::ci(0), fc::exp(fc::var(1))), Const(rint(0)));
    }

    #[test]
    fn derivative_of_inverse_distance() {
        // d/dx0 (x0^2 + x1^2)^(-1/2) evaluated at (3, 4) = -3/125
        let r2 = fc::add(fc::powi(fc::var(0), 2), fc::powi(fc::var(1), 2));
        let inv_r = fc::pow(r2, rat(-1, 2));
        let d = inv_r.derivative(0);
        let p = JetPoint::cartesian(vec![rint(3), rint(4)]);
        assert_eq!(d.eval(&p).unwrap(), rat(-3, 125));
    }

    #[test]
    fn lift_matches_symbolic_derivative() {
        // first-order jet coefficients are the symbolic partials
        let e = fc::div(
            fc::exp(fc::mul(fc::var(0), fc::var(1))),
            fc::add(fc::ci(1), fc::powi(fc::var(0), 2)),
        );
        let p = JetPoint::real(vec![0.7, -0.3]);
        let jet = e.lift(&p, 1).unwrap();
        for i in 0..2 {
            let grad = e.derivative(i).eval(&p).unwrap();
            let coeff = jet.coeff(&MultiIndex::unit(2, i));
            assert!((grad - coeff).abs() < 1e-13, "i={i}");
        }
    }

    #[test]
    fn singular_evaluations_name_the_factor() {
        let inv = fc::recip(fc::var(0));
        let p = JetPoint::cartesian(vec![rint(0)]);
        match inv.eval(&p) {
            Err(NumericError::SingularPoint(msg)) => assert!(msg.contains("x0")),
            other => panic!("expected singular point error, got {other:?}"),
        }
        let s = fc::sqrt(fc::var(0));
        assert!(matches!(s.eval(&p), Err(NumericError::SingularPoint(_))));
    }

    #[test]
    fn trig_uses_angle_pairs() {
        // 1/cos^2(theta) at (sin, cos) = (3/5, 4/5): 25/16 exactly
        let sec2 = fc::recip(fc::powi(fc::cos(fc::var(0)), 2));
        let p = JetPoint::with_angles(vec![rint(0)], &[(0, rat(3, 5), rat(4, 5))]);
        assert_eq!(sec2.eval(&p).unwrap(), rat(25, 16));
        // tan at the same point: 3/4, derivative sec^2 = 25/16
        let t = fc::tan_var(0);
        let jet = t.lift(&p, 1).unwrap();
        assert_eq!(jet.value(), rat(3, 4));
        assert_eq!(jet.coeff(&MultiIndex::unit(1, 0)), rat(25, 16));
    }

    #[test]
    fn finite_differences_confirm_first_order_jets() {
        // randomized composite expressions from a domain-safe grammar
        let mut rng = crate::verify::rng::SplitMix64::new(0xfd);
        for case in 0..100 {
            let depth = 1 + (rng.next_u64() % 3) as u32;
            let e = random_expr(&mut rng, depth);
            let x = rng.uniform(0.4, 1.6);
            let y = rng.uniform(0.4, 1.6);
            let p = JetPoint::real(vec![x, y]);
            let jet = match e.lift(&p, 1) {
                Ok(j) => j,
                Err(_) => continue,
            };
            let h = 1e-5;
            for i in 0..2 {
                let mut hi = vec![x, y];
                let mut lo = vec![x, y];
                hi[i] += h;
                lo[i] -= h;
                let fhi = e.eval(&JetPoint::real(hi)).unwrap();
                let flo = e.eval(&JetPoint::real(lo)).unwrap();
                let fd = (fhi - flo) / (2.0 * h);
                let an = jet.coeff(&MultiIndex::unit(2, i));
                let scale = fd.abs().max(an.abs()).max(1.0);
                assert!(
                    (fd - an).abs() / scale < 1e-6,
                    "case {case}: var {i}: fd {fd} vs jet {an} in {e}"
                );
            }
        }
    }

    /// Expression grammar whose values stay in safe domains on (0, 2)^2.
    fn random_expr(rng: &mut crate::verify::rng::SplitMix64, depth: u32) -> FieldCoef {
        if depth == 0 {
            return match rng.next_u64() % 3 {
                0 => fc::var(0),
                1 => fc::var(1),
                _ => fc::c(rng.rational_coeff()),
            };
        }
        let a = random_expr(rng, depth - 1);
        let b = random_expr(rng, depth - 1);
        match rng.next_u64() % 7 {
            0 => fc::add(a, b),
            1 => fc::mul(a, b),
            // strictly positive denominators / bases
            2 => fc::div(a, fc::add(fc::ci(2), fc::mul(b.clone(), b))),
            3 => fc::sqrt(fc::add(fc::ci(1), fc::mul(a.clone(), a))),
            4 => fc::exp(fc::div(a, fc::ci(4))),
            5 => fc::sin(a),
            _ => fc::cos(a),
        }
    }
}
