//! Linear differential operators with polynomial coefficients, closed under
//! composition and commutator, acting exactly on multivariate polynomials.
//!
//! Normal form: a map from derivative multi-index (graded-lex ordered) to a
//! canonical polynomial coefficient, all coefficients standing to the left
//! of the derivatives, zero coefficients dropped. Operator equality is
//! therefore map equality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::multi_index::MultiIndex;
use crate::poly::{MultiPoly, PolyError};
use crate::rational::Rational;

#[derive(Clone, PartialEq)]
pub struct PolyDiffOp {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<MultiIndex, MultiPoly>,
}

impl PolyDiffOp {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        PolyDiffOp {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplication operator by `coef` composed with `d^deriv`.
    pub fn term(coef: MultiPoly, deriv: MultiIndex) -> Self {
        assert_eq!(coef.arity(), deriv.arity(), "operator term arity mismatch");
        let mut op = Self::zero(coef.vars().clone());
        op.add_term(coef, deriv);
        op
    }

    /// Multiplication by a constant polynomial `c`.
    pub fn identity_scaled(vars: Arc<Vec<String>>, c: Rational) -> Self {
        let arity = vars.len();
        Self::term(
            MultiPoly::constant(vars, c),
            MultiIndex::zero(arity),
        )
    }

    /// `d/dx_i`.
    pub fn d(vars: Arc<Vec<String>>, i: usize) -> Self {
        let arity = vars.len();
        Self::term(MultiPoly::one(vars), MultiIndex::unit(arity, i))
    }

    /// `x_i d/dx_j`.
    pub fn x_d(vars: Arc<Vec<String>>, i: usize, j: usize) -> Self {
        let arity = vars.len();
        Self::term(
            MultiPoly::var(vars, i),
            MultiIndex::unit(arity, j),
        )
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative total order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|d| d.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, coef: MultiPoly, deriv: MultiIndex) {
        if coef.is_zero() {
            return;
        }
        assert_eq!(deriv.arity(), self.arity(), "operator term arity mismatch");
        let entry = self
            .terms
            .entry(deriv.clone())
            .or_insert_with(|| MultiPoly::zero(self.vars.clone()));
        *entry = &*entry + &coef;
        if entry.is_zero() {
            self.terms.remove(&deriv);
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other).expect("operator variable mismatch");
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(c.clone(), d.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&crate::rational::rint(-1)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (d, c) in &self.terms {
            out.add_term(c.scale(q), d.clone());
        }
        out
    }

    /// Left multiplication by a polynomial (as a function, not an operator
    /// composition on the right).
    pub fn mul_poly_left(&self, p: &MultiPoly) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (d, c) in &self.terms {
            out.add_term(p * c, d.clone());
        }
        out
    }

    /// Exact application to a polynomial.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.vars != *p.vars() {
            return Err(PolyError::VarMismatch {
                left: self.vars.join(","),
                right: p.vars().join(","),
            });
        }
        let mut out = MultiPoly::zero(self.vars.clone());
        for (d, c) in &self.terms {
            out = &out + &(c * &p.diff_multi(d));
        }
        Ok(out)
    }

    /// Operator composition `self . other` via the Leibniz expansion:
    /// `d^a (c g) = sum_{b <= a} C(a, b) d^b(c) d^(a-b) g`.
    pub fn compose(&self, other: &Self) -> Self {
        self.check_vars(other).expect("operator variable mismatch");
        let mut out = Self::zero(self.vars.clone());
        for (a, c1) in &self.terms {
            for (b_deriv, c2) in &other.terms {
                for g in lower_indices(a) {
                    let db_c2 = c2.diff_multi(&g);
                    if db_c2.is_zero() {
                        continue;
                    }
                    let coef = (c1 * &db_c2)
                        .scale(&Rational::from_integer(a.binom(&g)));
                    let deriv = a
                        .checked_sub(&g)
                        .expect("lower index exceeds upper")
                        .add(b_deriv);
                    out.add_term(coef, deriv);
                }
            }
        }
        out
    }

    /// `[self, other] = self.other - other.self`, exact.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }
}

/// All multi-indices `g <= a` pointwise.
fn lower_indices(a: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::zero(a.arity())];
    for slot in 0..a.arity() {
        let mut next = Vec::with_capacity(out.len() * (a.get(slot) as usize + 1));
        for base in &out {
            for v in 0..=a.get(slot) {
                let mut exps: Vec<u32> = base.exps().to_vec();
                exps[slot] = v;
                next.push(MultiIndex::new(exps));
            }
        }
        out = next;
    }
    out
}

/// `coef · D[a1,...,ak]` terms joined by ` + `.
impl fmt::Display for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let exps: Vec<String> = d.exps().iter().map(|e| e.to_string()).collect();
                format!("({c}) · D[{}]", exps.join(","))
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for PolyDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
