//! Truncated multivariate Taylor expansions ("jets") over a generic scalar.
//!
//! Coefficients are stored in Taylor normalization: the entry at multi-index
//! `a` is `d^a f(x0) / a!`, the coefficient of `prod_i (x_i - x0_i)^(a_i)`.
//! Applying a differential operator is then a pure shift-and-scale on the
//! coefficient map.
//!
//! Angle variables may be specified at a point by an exact `(sin, cos)` pair
//! instead of a value; sines and cosines of such variables expand into
//! series with coefficients in the base field, which is what makes fully
//! rational (zero-tolerance) evaluation of trigonometric operator
//! coefficients possible at suitable points.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::Zero;

use crate::multi_index::MultiIndex;
use crate::poly::MultiPoly;
use crate::rational::{binom_rational, factorial, rint, Rational};
use crate::scalar::{NumericError, Scalar};

/// An expansion point. Each variable carries either a plain value or, for
/// angle variables, a `(sin, cos)` pair (the value slot is then unusable).
#[derive(Clone, PartialEq)]
pub struct JetPoint<S> {
    coords: Vec<S>,
    trig: Vec<Option<(S, S)>>,
    angle_only: Vec<bool>,
}

impl<S: Scalar> JetPoint<S> {
    /// A point with plain coordinate values and no trig data.
    pub fn cartesian(coords: Vec<S>) -> Arc<Self> {
        let n = coords.len();
        Arc::new(JetPoint {
            coords,
            trig: vec![None; n],
            angle_only: vec![false; n],
        })
    }

    /// A point where the listed variables are angles given by `(sin, cos)`
    /// pairs. For exact scalars the pair must satisfy `sin^2 + cos^2 = 1`.
    pub fn with_angles(coords: Vec<S>, angles: &[(usize, S, S)]) -> Arc<Self> {
        let n = coords.len();
        let mut point = JetPoint {
            coords,
            trig: vec![None; n],
            angle_only: vec![false; n],
        };
        for (i, s, c) in angles {
            assert!(*i < n, "angle index out of range");
            if S::EXACT {
                let unit = s.clone() * s.clone() + c.clone() * c.clone();
                assert!(
                    unit == S::one(),
                    "exact angle pair must lie on the unit circle: ({s}, {c})"
                );
            }
            point.trig[*i] = Some((s.clone(), c.clone()));
            point.angle_only[*i] = true;
        }
        Arc::new(point)
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> Result<&S, NumericError> {
        if self.angle_only[i] {
            Err(NumericError::AngleOnly(i))
        } else {
            Ok(&self.coords[i])
        }
    }

    pub fn trig(&self, i: usize) -> Option<&(S, S)> {
        self.trig[i].as_ref()
    }
}

impl JetPoint<f64> {
    /// A double-precision point with sine/cosine data filled in for every
    /// coordinate, so any variable can be used as an angle.
    pub fn real(coords: Vec<f64>) -> Arc<Self> {
        let n = coords.len();
        let trig = coords.iter().map(|&x| Some((x.sin(), x.cos()))).collect();
        Arc::new(JetPoint {
            coords,
            trig,
            angle_only: vec![false; n],
        })
    }
}

#[derive(Clone, PartialEq)]
pub struct Jet<S: Scalar> {
    point: Arc<JetPoint<S>>,
    order: usize,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> Jet<S> {
    pub fn zero(point: Arc<JetPoint<S>>, order: usize) -> Self {
        Jet {
            point,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(point: Arc<JetPoint<S>>, order: usize, value: S) -> Self {
        let mut jet = Self::zero(point, order);
        jet.set(MultiIndex::zero(jet.arity()), value);
        jet
    }

    /// The coordinate function `x_i` expanded at the point.
    pub fn variable(point: Arc<JetPoint<S>>, order: usize, i: usize) -> Result<Self, NumericError> {
        let value = point.coord(i)?.clone();
        let arity = point.arity();
        let mut jet = Self::constant(point, order, value);
        if order >= 1 {
            jet.set(MultiIndex::unit(arity, i), S::one());
        }
        Ok(jet)
    }

    /// The increment `x_i - x0_i` (defined even for angle-only variables).
    pub fn increment(point: Arc<JetPoint<S>>, order: usize, i: usize) -> Self {
        let arity = point.arity();
        let mut jet = Self::zero(point, order);
        if order >= 1 {
            jet.set(MultiIndex::unit(arity, i), S::one());
        }
        jet
    }

    pub fn point(&self) -> &Arc<JetPoint<S>> {
        &self.point
    }

    pub fn arity(&self) -> usize {
        self.point.arity()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `prod (x_i - x0_i)^(a_i)`.
    pub fn coeff(&self, idx: &MultiIndex) -> S {
        self.terms.get(idx).cloned().unwrap_or_else(S::zero)
    }

    /// Value at the base point.
    pub fn value(&self) -> S {
        self.coeff(&MultiIndex::zero(self.arity()))
    }

    fn set(&mut self, idx: MultiIndex, value: S) {
        if value.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, value);
        }
    }

    fn accumulate(&mut self, idx: MultiIndex, value: S) {
        if value.is_zero() {
            return;
        }
        let cur = self.coeff(&idx);
        self.set(idx, cur + value);
    }

    fn same_context(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.point, &other.point) || *self.point == *other.point,
            "jets expanded at different points"
        );
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Jet {
            point: self.point.clone(),
            order,
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.degree() as usize <= order)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_context(other);
        let order = self.order.min(other.order);
        let mut out = self.truncate(order);
        for (idx, c) in other.terms.iter() {
            if idx.degree() as usize <= order {
                out.accumulate(idx.clone(), c.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Jet {
            point: self.point.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.point.clone(), self.order);
        }
        let mut out = Self::zero(self.point.clone(), self.order);
        for (idx, c) in &self.terms {
            out.set(idx.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn scale_rat(&self, q: &Rational) -> Self {
        self.scale(&S::from_rational(q))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_context(other);
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.point.clone(), order);
        for (i1, c1) in &self.terms {
            if i1.degree() as usize > order {
                continue;
            }
            for (i2, c2) in &other.terms {
                if (i1.degree() + i2.degree()) as usize > order {
                    continue;
                }
                out.accumulate(i1.add(i2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Mixed partial `d^g`, lowering the order by `|g|`.
    pub fn deriv(&self, g: &MultiIndex) -> Result<Self, NumericError> {
        let need = g.degree() as usize;
        if self.order < need {
            return Err(NumericError::InsufficientOrder {
                need,
                have: self.order,
            });
        }
        let mut out = Self::zero(self.point.clone(), self.order - need);
        for (idx, c) in &self.terms {
            if let Some(lower) = idx.checked_sub(g) {
                let scale = S::from_rational(&Rational::from_integer(lower.deriv_scale(g)));
                out.accumulate(lower, c.clone() * scale);
            }
        }
        Ok(out)
    }

    /// Largest coefficient magnitude (as a double).
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs_approx())
            .fold(0.0, f64::max)
    }

    /// `sum_k c_k w^k` truncated at the jet order; `w` must have zero value.
    /// The coefficient stream is rational, so the result stays in the base
    /// field — this is the common core of all elementary functions.
    pub fn series_in(w: &Self, mut coeff: impl FnMut(usize) -> Rational) -> Self {
        debug_assert!(w.value().is_zero(), "series argument must vanish at the point");
        let mut acc = Self::zero(w.point.clone(), w.order);
        let mut power = Self::constant(w.point.clone(), w.order, S::one());
        for k in 0..=w.order {
            let c = coeff(k);
            if !c.is_zero() {
                acc = acc.add(&power.scale_rat(&c));
            }
            if k < w.order {
                power = power.mul(w);
            }
        }
        acc
    }

    fn increment_part(&self) -> Self {
        let mut w = self.clone();
        w.set(MultiIndex::zero(self.arity()), S::zero());
        w
    }

    /// `(1 + w)^e` for `w` with zero value.
    pub fn pow1p(w: &Self, e: &Rational) -> Self {
        Self::series_in(w, |k| binom_rational(e, k as u32))
    }

    /// `exp(w)` for `w` with zero value.
    pub fn exp0(w: &Self) -> Self {
        Self::series_in(w, |k| {
            Rational::from_integer(factorial(k as u32)).recip()
        })
    }

    /// `sin(w)` for `w` with zero value.
    pub fn sin0(w: &Self) -> Self {
        Self::series_in(w, |k| {
            if k % 2 == 0 {
                Rational::zero()
            } else {
                let c = Rational::from_integer(factorial(k as u32)).recip();
                if k % 4 == 1 {
                    c
                } else {
                    -c
                }
            }
        })
    }

    /// `cos(w)` for `w` with zero value.
    pub fn cos0(w: &Self) -> Self {
        Self::series_in(w, |k| {
            if k % 2 == 1 {
                Rational::zero()
            } else {
                let c = Rational::from_integer(factorial(k as u32)).recip();
                if k % 4 == 0 {
                    c
                } else {
                    -c
                }
            }
        })
    }

    /// `ln(1 + w)` for `w` with zero value.
    pub fn ln1p(w: &Self) -> Self {
        Self::series_in(w, |k| {
            if k == 0 {
                Rational::zero()
            } else {
                let c = rint(k as i64).recip();
                if k % 2 == 1 {
                    c
                } else {
                    -c
                }
            }
        })
    }

    pub fn recip(&self) -> Result<Self, NumericError> {
        let v = self.value();
        let inv = v.try_recip()?;
        let w = self.increment_part().scale(&inv);
        Ok(Self::pow1p(&w, &rint(-1)).scale(&inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self, NumericError> {
        Ok(self.mul(&other.recip()?))
    }

    /// `self^e` for a rational exponent. Non-negative integer exponents are
    /// plain products (valid even when the value vanishes); anything else
    /// needs an invertible value.
    pub fn pow(&self, e: &Rational) -> Result<Self, NumericError> {
        if e.is_integer() && *e >= Rational::zero() {
            let k: u32 = e
                .to_integer()
                .try_into()
                .map_err(|_| NumericError::Irrational("huge exponent".into()))?;
            let mut acc = Self::constant(self.point.clone(), self.order, S::one());
            for _ in 0..k {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        let v = self.value();
        if v.is_zero() {
            return Err(NumericError::SingularPoint(format!(
                "power with exponent {e} of a vanishing value"
            )));
        }
        let prefactor = v.try_pow(e)?;
        Ok(self.pow_reduced(e)?.scale(&prefactor))
    }

    /// `(self / value)^e`: the power series with the constant prefactor
    /// `value^e` dropped. Stays in the base field for rational scalars.
    pub fn pow_reduced(&self, e: &Rational) -> Result<Self, NumericError> {
        let v = self.value();
        let inv = v.try_recip().map_err(|_| {
            NumericError::SingularPoint(format!("power with exponent {e} of a vanishing value"))
        })?;
        let w = self.increment_part().scale(&inv);
        Ok(Self::pow1p(&w, e))
    }

    pub fn sqrt(&self) -> Result<Self, NumericError> {
        self.pow(&Rational::new(1.into(), 2.into()))
    }

    pub fn exp(&self) -> Result<Self, NumericError> {
        let prefactor = self.value().try_exp()?;
        Ok(self.exp_reduced().scale(&prefactor))
    }

    /// `exp(self - value)`: the exponential with `exp(value)` dropped.
    pub fn exp_reduced(&self) -> Self {
        Self::exp0(&self.increment_part())
    }

    pub fn ln(&self) -> Result<Self, NumericError> {
        let v = self.value();
        let head = v.try_ln()?;
        let inv = v.try_recip()?;
        let w = self.increment_part().scale(&inv);
        Ok(Self::ln1p(&w).add(&Self::constant(
            self.point.clone(),
            self.order,
            head,
        )))
    }

    pub fn sin(&self) -> Result<Self, NumericError> {
        let v = self.value();
        let (s, c) = (v.try_sin()?, v.try_cos()?);
        let w = self.increment_part();
        Ok(Self::cos0(&w).scale(&s).add(&Self::sin0(&w).scale(&c)))
    }

    pub fn cos(&self) -> Result<Self, NumericError> {
        let v = self.value();
        let (s, c) = (v.try_sin()?, v.try_cos()?);
        let w = self.increment_part();
        Ok(Self::cos0(&w).scale(&c).sub(&Self::sin0(&w).scale(&s)))
    }

    /// `sin(x_i)` expanded at the point, preferring stored `(sin, cos)`
    /// data so that angle variables work over exact scalars.
    pub fn sin_of_var(
        point: &Arc<JetPoint<S>>,
        order: usize,
        i: usize,
    ) -> Result<Self, NumericError> {
        match point.trig(i) {
            Some((s, c)) => {
                let h = Self::increment(point.clone(), order, i);
                Ok(Self::cos0(&h)
                    .scale(s)
                    .add(&Self::sin0(&h).scale(c)))
            }
            None => Self::variable(point.clone(), order, i)?.sin(),
        }
    }

    /// `cos(x_i)` expanded at the point; see [`Jet::sin_of_var`].
    pub fn cos_of_var(
        point: &Arc<JetPoint<S>>,
        order: usize,
        i: usize,
    ) -> Result<Self, NumericError> {
        match point.trig(i) {
            Some((s, c)) => {
                let h = Self::increment(point.clone(), order, i);
                Ok(Self::cos0(&h)
                    .scale(c)
                    .sub(&Self::sin0(&h).scale(s)))
            }
            None => Self::variable(point.clone(), order, i)?.cos(),
        }
    }

    /// Substitutes jets for the polynomial's variables. All argument jets
    /// must share a point; exact for rational scalars.
    pub fn of_poly(p: &MultiPoly, args: &[Self]) -> Self {
        assert_eq!(
            p.arity(),
            args.len(),
            "polynomial arity does not match substitution arguments"
        );
        assert!(!args.is_empty(), "need at least one argument jet");
        let point = args[0].point.clone();
        let order = args.iter().map(|j| j.order).min().unwrap();
        // power tables per variable
        let mut tables: Vec<Vec<Jet<S>>> = Vec::with_capacity(args.len());
        for (i, arg) in args.iter().enumerate() {
            let maxe = p.degree_in(i) as usize;
            let mut table = Vec::with_capacity(maxe + 1);
            table.push(Self::constant(point.clone(), order, S::one()));
            for k in 1..=maxe {
                let prev = &table[k - 1];
                table.push(prev.mul(arg));
            }
            tables.push(table);
        }
        let mut acc = Self::zero(point, order);
        for (idx, c) in p.terms() {
            let mut term = Self::constant(acc.point.clone(), order, S::from_rational(c));
            for (i, &e) in idx.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&tables[i][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// The Taylor expansion of a polynomial in the point's own variables;
    /// exact for rational scalars and degree-complete up to the order.
    pub fn lift_poly(
        p: &MultiPoly,
        point: &Arc<JetPoint<S>>,
        order: usize,
    ) -> Result<Self, NumericError> {
        if p.arity() != point.arity() {
            return Err(NumericError::Arity(format!(
                "polynomial has {} variables, point has {}",
                p.arity(),
                point.arity()
            )));
        }
        let args: Vec<Self> = (0..p.arity())
            .map(|i| Self::variable(point.clone(), order, i))
            .collect::<Result<_, _>>()?;
        Ok(Self::of_poly(p, &args))
    }
}

impl<S: Scalar> fmt::Debug for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet(order {}; ", self.order)?;
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c} h^{idx:?}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    fn rpoint(coords: &[i64]) -> Arc<JetPoint<Rational>> {
        JetPoint::cartesian(coords.iter().map(|&c| rint(c)).collect())
    }

    #[test]
    fn polynomial_jets_reproduce_derivatives() {
        // x^2 at x = 3, order 2: [9, 6, 1]
        let p = JetPoint::cartesian(vec![rint(3)]);
        let x = Jet::variable(p, 2, 0).unwrap();
        let sq = x.mul(&x);
        assert_eq!(sq.coeff(&MultiIndex::new(vec![0])), rint(9));
        assert_eq!(sq.coeff(&MultiIndex::new(vec![1])), rint(6));
        assert_eq!(sq.coeff(&MultiIndex::new(vec![2])), rint(1));
    }

    #[test]
    fn inverse_distance_gradient() {
        // 1/r at (1,2,2): value 1/3, gradient (-1/27, -2/27, -2/27)
        let p = rpoint(&[1, 2, 2]);
        let mut r2 = Jet::zero(p.clone(), 3);
        for i in 0..3 {
            let x = Jet::variable(p.clone(), 3, i).unwrap();
            r2 = r2.add(&x.mul(&x));
        }
        let inv_r = r2.pow(&rat(-1, 2)).unwrap();
        assert_eq!(inv_r.value(), rat(1, 3));
        assert_eq!(inv_r.coeff(&MultiIndex::unit(3, 0)), rat(-1, 27));
        assert_eq!(inv_r.coeff(&MultiIndex::unit(3, 1)), rat(-2, 27));
        assert_eq!(inv_r.coeff(&MultiIndex::unit(3, 2)), rat(-2, 27));
    }

    #[test]
    fn exponential_at_zero() {
        let p = JetPoint::real(vec![0.0]);
        let x = Jet::variable(p, 2, 0).unwrap();
        let e = x.exp().unwrap();
        assert_eq!(e.coeff(&MultiIndex::new(vec![0])), 1.0);
        assert_eq!(e.coeff(&MultiIndex::new(vec![1])), 1.0);
        assert_eq!(e.coeff(&MultiIndex::new(vec![2])), 0.5);
    }

    #[test]
    fn sine_series() {
        // sin(x) at 0, order 3: [0, 1, 0, -1/6]
        let p = JetPoint::real(vec![0.0]);
        let x = Jet::variable(p, 3, 0).unwrap();
        let s = x.sin().unwrap();
        assert_eq!(s.coeff(&MultiIndex::new(vec![0])), 0.0);
        assert_eq!(s.coeff(&MultiIndex::new(vec![1])), 1.0);
        assert_eq!(s.coeff(&MultiIndex::new(vec![2])), 0.0);
        assert!((s.coeff(&MultiIndex::new(vec![3])) + 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn reciprocal_geometric_series() {
        // 1/(1+x) at 0, order 2: [1, -1, 1]
        let p = rpoint(&[0]);
        let x = Jet::variable(p.clone(), 2, 0).unwrap();
        let r = x.add(&Jet::constant(p, 2, rint(1))).recip().unwrap();
        assert_eq!(r.coeff(&MultiIndex::new(vec![0])), rint(1));
        assert_eq!(r.coeff(&MultiIndex::new(vec![1])), rint(-1));
        assert_eq!(r.coeff(&MultiIndex::new(vec![2])), rint(1));
    }

    #[test]
    fn square_root_matches_binomial_series() {
        // sqrt(x) at 2, order 3 (floats): binomial series around 2
        let p = JetPoint::real(vec![2.0]);
        let x = Jet::variable(p, 3, 0).unwrap();
        let s = x.pow(&rat(1, 2)).unwrap();
        let r2 = 2.0f64.sqrt();
        let expect = [r2, 0.5 / r2, -1.0 / (8.0 * 2.0 * r2), 1.0 / (16.0 * 4.0 * r2)];
        for (k, e) in expect.iter().enumerate() {
            let got = s.coeff(&MultiIndex::new(vec![k as u32]));
            assert!((got - e).abs() < 1e-14, "k={k} got={got} expect={e}");
        }
        // exact at a perfect square
        let p = rpoint(&[4]);
        let x = Jet::variable(p, 2, 0).unwrap();
        let s = x.sqrt().unwrap();
        assert_eq!(s.value(), rint(2));
        assert_eq!(s.coeff(&MultiIndex::new(vec![1])), rat(1, 4));
        assert_eq!(s.coeff(&MultiIndex::new(vec![2])), rat(-1, 64));
    }

    #[test]
    fn angle_pairs_give_rational_trig_jets() {
        // sin/cos of an angle with (sin, cos) = (3/5, 4/5)
        let p = JetPoint::with_angles(vec![rint(0)], &[(0, rat(3, 5), rat(4, 5))]);
        let s = Jet::sin_of_var(&p, 2, 0).unwrap();
        let c = Jet::cos_of_var(&p, 2, 0).unwrap();
        assert_eq!(s.value(), rat(3, 5));
        assert_eq!(s.coeff(&MultiIndex::new(vec![1])), rat(4, 5));
        assert_eq!(s.coeff(&MultiIndex::new(vec![2])), rat(-3, 10));
        assert_eq!(c.value(), rat(4, 5));
        assert_eq!(c.coeff(&MultiIndex::new(vec![1])), rat(-3, 5));
        // sin^2 + cos^2 = 1 to the truncation order
        let one = s.mul(&s).add(&c.mul(&c));
        assert_eq!(one.value(), rint(1));
        assert_eq!(one.coeff(&MultiIndex::new(vec![1])), rint(0));
        assert_eq!(one.coeff(&MultiIndex::new(vec![2])), rint(0));
        // plain variable access is refused for angle-only variables
        assert!(matches!(
            Jet::<Rational>::variable(p, 2, 0),
            Err(NumericError::AngleOnly(0))
        ));
    }

    #[test]
    fn truncation_monotonicity() {
        let p = JetPoint::real(vec![1.3, 0.4]);
        let x = Jet::variable(p.clone(), 5, 0).unwrap();
        let y = Jet::variable(p, 5, 1).unwrap();
        let f = x.mul(&y).add(&x).exp().unwrap();
        let g = f.truncate(3);
        let h = {
            let x = f.clone();
            x.truncate(3)
        };
        assert_eq!(g, h);
        // computing at order 5 then discarding equals computing at order 3
        let x3 = Jet::variable(g.point().clone(), 3, 0).unwrap();
        let y3 = Jet::variable(g.point().clone(), 3, 1).unwrap();
        let direct = x3.mul(&y3).add(&x3).exp().unwrap();
        for (idx, c) in direct.terms() {
            assert!((g.coeff(idx) - c).abs() < 1e-14);
        }
        assert_eq!(g.terms().count(), direct.terms().count());
    }

    #[test]
    fn chain_rule_exact_for_polynomials() {
        // f(g(x,y)) lifted directly equals f evaluated on the lifted g
        let vars = crate::poly::var_list(&["u"]);
        let u = MultiPoly::var(vars, 0);
        let f = &(&u * &u) + &u.scale(&rat(1, 2)); // f(u) = u^2 + u/2
        let gvars = crate::poly::var_list(&["x", "y"]);
        let x = MultiPoly::var(gvars.clone(), 0);
        let y = MultiPoly::var(gvars, 1);
        let g = &(&x * &y) - &y.scale(&rint(3)); // g = xy - 3y
        let point = rpoint(&[2, 5]);
        let g_jet = Jet::lift_poly(&g, &point, 4).unwrap();
        let composed_via_jets = Jet::of_poly(&f, &[g_jet]);
        // substitute g into f as polynomials, then lift
        let fg = &(&g * &g) + &g.scale(&rat(1, 2));
        let lifted = Jet::lift_poly(&fg, &point, 4).unwrap();
        assert_eq!(composed_via_jets, lifted);
    }

    #[test]
    fn derivative_shift_and_scale() {
        // d^2/dx^2 of x^3 at 1: jet [6, 6] at order 1
        let p = rpoint(&[1]);
        let x = Jet::variable(p, 3, 0).unwrap();
        let cube = x.mul(&x).mul(&x);
        let d2 = cube.deriv(&MultiIndex::new(vec![2])).unwrap();
        assert_eq!(d2.order(), 1);
        assert_eq!(d2.value(), rint(6));
        assert_eq!(d2.coeff(&MultiIndex::new(vec![1])), rint(6));
        assert!(matches!(
            cube.deriv(&MultiIndex::new(vec![4])),
            Err(NumericError::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn reduced_operations_drop_constant_factors() {
        // exp(x) at 1 reduced = exp(x - 1); pow reduced = (x/x0)^e
        let p = rpoint(&[1]);
        let x = Jet::variable(p.clone(), 3, 0).unwrap();
        let reduced = x.exp_reduced();
        assert_eq!(reduced.value(), rint(1));
        assert_eq!(reduced.coeff(&MultiIndex::new(vec![1])), rint(1));
        assert_eq!(reduced.coeff(&MultiIndex::new(vec![2])), rat(1, 2));
        let pr = x.pow_reduced(&rat(1, 3)).unwrap();
        assert_eq!(pr.value(), rint(1));
        assert_eq!(pr.coeff(&MultiIndex::new(vec![1])), rat(1, 3));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_jet() -> impl Strategy<Value = Jet<Rational>> {
            proptest::collection::vec((0i64..5, -9i64..9, 1i64..5), 1..6).prop_map(|entries| {
                let p = rpoint(&[1, 2]);
                let mut jet = Jet::zero(p, 4);
                for (slot, n, d) in entries {
                    let idx = MultiIndex::new(vec![slot as u32 % 3, slot as u32 / 3]);
                    if idx.degree() <= 4 {
                        let cur = jet.coeff(&idx);
                        jet.set(idx, cur + rat(n, d));
                    }
                }
                jet
            })
        }

        proptest! {
            #[test]
            fn mul_commutes(a in arb_jet(), b in arb_jet()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
            }

            #[test]
            fn mul_associates_to_order(a in arb_jet(), b in arb_jet(), c in arb_jet()) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }

            #[test]
            fn truncate_commutes_with_mul(a in arb_jet(), b in arb_jet()) {
                prop_assert_eq!(a.mul(&b).truncate(2), a.truncate(2).mul(&b.truncate(2)));
            }
        }
    }
}

#[cfg(test)]
mod power_laws {
    use super::*;
    use crate::rational::{rat, rint};

    #[test]
    fn exponent_addition_law() {
        // u^(a+b) = u^a u^b for rational exponents on a positive-value jet
        let p = JetPoint::cartesian(vec![rat(9, 4)]);
        let u = Jet::variable(p, 4, 0).unwrap();
        for (a, b) in [
            (rat(1, 2), rat(3, 2)),
            (rat(-1, 2), rint(2)),
            (rat(1, 2), rat(-1, 2)),
        ] {
            let lhs = u.pow(&(&a + &b)).unwrap();
            let rhs = u.pow(&a).unwrap().mul(&u.pow(&b).unwrap());
            assert_eq!(lhs, rhs, "a={a} b={b}");
        }
        // and over floats at an irrational-root point
        let p = JetPoint::real(vec![1.7]);
        let u = Jet::variable(p, 4, 0).unwrap();
        let lhs = u.pow(&rat(5, 6)).unwrap();
        let rhs = u.pow(&rat(1, 2)).unwrap().mul(&u.pow(&rat(1, 3)).unwrap());
        for (idx, c) in lhs.terms() {
            assert!((rhs.coeff(idx) - c).abs() < 1e-14);
        }
    }

    #[test]
    fn reduced_and_full_powers_differ_by_the_value_factor() {
        let p = JetPoint::cartesian(vec![rat(16, 9)]);
        let u = Jet::variable(p, 3, 0).unwrap();
        let e = rat(3, 2);
        let full = u.pow(&e).unwrap();
        let reduced = u.pow_reduced(&e).unwrap();
        let factor = rat(16, 9).try_pow(&e).unwrap(); // (4/3)^3 = 64/27
        assert_eq!(factor, rat(64, 27));
        assert_eq!(full, reduced.scale(&factor));
    }
}
