//! Sparse multivariate polynomials over exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Zero};
use thiserror::Error;

use crate::multi_index::MultiIndex;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VarMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

/// A polynomial in the declared variables, stored as a canonical map from
/// exponent multi-index to nonzero rational coefficient. Variable order is
/// the declared list order; two polynomials are equal iff their variable
/// lists and term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<MultiIndex, Rational>,
}

pub fn var_list(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

impl MultiPoly {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<Vec<String>>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(MultiIndex::zero(p.arity()), c);
        }
        p
    }

    pub fn one(vars: Arc<Vec<String>>) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable with index `i`.
    pub fn var(vars: Arc<Vec<String>>, i: usize) -> Self {
        let arity = vars.len();
        assert!(i < arity, "variable index {i} out of arity {arity}");
        let mut p = Self::zero(vars);
        p.terms.insert(MultiIndex::unit(arity, i), Rational::one());
        p
    }

    /// The variable named `name`.
    pub fn var_named(vars: Arc<Vec<String>>, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn from_terms(
        vars: Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (idx, c) in terms {
            p.add_term(idx, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Rational {
        self.terms.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.arity()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.get(var)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: Rational) {
        assert_eq!(idx.arity(), self.arity(), "term arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    fn vars_key(&self) -> String {
        self.vars.join(",")
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch {
                left: self.vars_key(),
                right: other.vars_key(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars.clone());
        for (i1, c1) in &self.terms {
            for (i2, c2) in &other.terms {
                out.add_term(i1.add(i2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg_ref(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (i.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(i, q)| (i.clone(), q * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.vars.clone());
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same variable list");
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Self {
        assert!(var < self.arity());
        let mut out = Self::zero(self.vars.clone());
        let unit = MultiIndex::unit(self.arity(), var);
        for (idx, c) in &self.terms {
            if let Some(lower) = idx.checked_sub(&unit) {
                let e = idx.get(var);
                out.add_term(lower, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Iterated partial derivative `d^g`.
    pub fn diff_multi(&self, g: &MultiIndex) -> Self {
        assert_eq!(g.arity(), self.arity());
        let mut out = Self::zero(self.vars.clone());
        for (idx, c) in &self.terms {
            if let Some(lower) = idx.checked_sub(g) {
                out.add_term(lower.clone(), c * Rational::from_integer(lower.deriv_scale(g)));
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity(), "evaluation point arity mismatch");
        let mut acc = Rational::zero();
        for (idx, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in idx.exps().iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Re-declares the polynomial over a larger (or reordered) variable
    /// list; every current variable must appear there by name.
    pub fn embed(&self, new_vars: Arc<Vec<String>>) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                new_vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| PolyError::UnknownVariable(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(new_vars.clone());
        for (idx, c) in &self.terms {
            let mut exps = vec![0u32; new_vars.len()];
            for (i, &e) in idx.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(MultiIndex::new(exps), c.clone());
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial variable mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial variable mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial variable mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

/// Serialization: `coeff * v1^e1*v2^e2` terms joined by ` + `, coefficients
/// printed as `num/den` (bare numerator when the denominator is 1), terms in
/// graded-lex order. The zero polynomial prints as `0`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let mono: Vec<String> = idx
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.vars[i].clone()
                        } else {
                            format!("{}^{}", self.vars[i], e)
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c} * {}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
