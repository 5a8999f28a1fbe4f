//! Linear differential operators with symbolic field coefficients, applied
//! numerically to jets at a point.
//!
//! Commutators of these operators are never expanded symbolically into a
//! rational-function ring; they are evaluated on test jets by nested
//! application, which checks the same relations pointwise (exactly so over
//! rational scalars at suitable points).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::expr::{fc, FieldCoef};
use crate::jet::Jet;
use crate::multi_index::MultiIndex;
use crate::polyop::PolyDiffOp;
use crate::rational::Rational;
use crate::scalar::{NumericError, Scalar};

#[derive(Clone, PartialEq)]
pub struct FieldDiffOp {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<MultiIndex, FieldCoef>,
}

impl FieldDiffOp {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        FieldDiffOp {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(vars: Arc<Vec<String>>, coef: FieldCoef, deriv: MultiIndex) -> Self {
        assert_eq!(deriv.arity(), vars.len(), "operator term arity mismatch");
        let mut op = Self::zero(vars);
        op.add_term(coef, deriv);
        op
    }

    /// `d/dx_i`.
    pub fn d(vars: Arc<Vec<String>>, i: usize) -> Self {
        let arity = vars.len();
        Self::term(vars, fc::ci(1), MultiIndex::unit(arity, i))
    }

    /// `d^2/dx_i^2`.
    pub fn d2(vars: Arc<Vec<String>>, i: usize) -> Self {
        let arity = vars.len();
        Self::term(vars, fc::ci(1), MultiIndex::single(arity, i, 2))
    }

    /// Multiplication by a scalar field.
    pub fn mul_op(vars: Arc<Vec<String>>, coef: FieldCoef) -> Self {
        let arity = vars.len();
        Self::term(vars, coef, MultiIndex::zero(arity))
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &FieldCoef)> {
        self.terms.iter()
    }

    /// Highest derivative total order.
    pub fn order(&self) -> usize {
        self.terms
            .keys()
            .map(|d| d.degree() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, coef: FieldCoef, deriv: MultiIndex) {
        if let FieldCoef::Const(q) = &coef {
            if num::Zero::is_zero(q) {
                return;
            }
        }
        assert_eq!(deriv.arity(), self.arity(), "operator term arity mismatch");
        match self.terms.remove(&deriv) {
            Some(existing) => {
                self.terms.insert(deriv, fc::add(existing, coef));
            }
            None => {
                self.terms.insert(deriv, coef);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "operator variable mismatch");
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(c.clone(), d.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_rat(&crate::rational::rint(-1)))
    }

    pub fn scale_rat(&self, q: &Rational) -> Self {
        self.scale(&fc::c(q.clone()))
    }

    /// Left multiplication by a scalar field.
    pub fn scale(&self, coef: &FieldCoef) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (d, c) in &self.terms {
            out.add_term(fc::mul(coef.clone(), c.clone()), d.clone());
        }
        out
    }

    /// Operator composition `self . other`, expanding coefficients by the
    /// Leibniz rule with symbolic differentiation.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "operator variable mismatch");
        let mut out = Self::zero(self.vars.clone());
        for (a, c1) in &self.terms {
            for (b, c2) in &other.terms {
                for g in lower_indices(a) {
                    let dc2 = diff_multi(c2, &g);
                    if matches!(&dc2, FieldCoef::Const(q) if num::Zero::is_zero(q)) {
                        continue;
                    }
                    let binom = Rational::from_integer(a.binom(&g));
                    let coef = fc::mul(fc::c(binom), fc::mul(c1.clone(), dc2));
                    let deriv = a.checked_sub(&g).unwrap().add(b);
                    out.add_term(coef, deriv);
                }
            }
        }
        out
    }

    /// Applies the operator to a jet, lowering the order by the operator
    /// order. Coefficients are expanded at the jet's own point.
    pub fn apply<S: Scalar>(&self, f: &Jet<S>) -> Result<Jet<S>, NumericError> {
        let ord = self.order();
        if f.order() < ord {
            return Err(NumericError::InsufficientOrder {
                need: ord,
                have: f.order(),
            });
        }
        let out_order = f.order() - ord;
        let mut acc = Jet::zero(f.point().clone(), out_order);
        for (d, c) in &self.terms {
            let df = f.deriv(d)?.truncate(out_order);
            let coef = c.lift(f.point(), out_order)?;
            acc = acc.add(&coef.mul(&df));
        }
        Ok(acc)
    }

    /// `[a, b] f = a(b f) - b(a f)` by nested application.
    pub fn commutator_apply<S: Scalar>(
        a: &Self,
        b: &Self,
        f: &Jet<S>,
    ) -> Result<Jet<S>, NumericError> {
        let ab = a.apply(&b.apply(f)?)?;
        let ba = b.apply(&a.apply(f)?)?;
        Ok(ab.sub(&ba))
    }
}

/// Symbolic `d^g` of a field coefficient.
fn diff_multi(c: &FieldCoef, g: &MultiIndex) -> FieldCoef {
    let mut out = c.clone();
    for (i, &e) in g.exps().iter().enumerate() {
        for _ in 0..e {
            out = out.derivative(i);
        }
    }
    out
}

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

impl From<&PolyDiffOp> for FieldDiffOp {
    fn from(op: &PolyDiffOp) -> Self {
        let mut out = FieldDiffOp::zero(op.vars().clone());
        for (deriv, coef) in op.terms() {
            let tree = fc::sum(coef.terms().map(|(idx, q)| {
                fc::prod(
                    std::iter::once(fc::c(q.clone())).chain(
                        idx.exps()
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(i, &e)| fc::powi(fc::var(i), e as i64)),
                    ),
                )
            }));
            out.add_term(tree, deriv.clone());
        }
        out
    }
}

impl fmt::Display for FieldDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let exps: Vec<String> = d.exps().iter().map(|e| e.to_string()).collect();
                format!(
                    "({}) · D[{}]",
                    c.display_named(&self.vars),
                    exps.join(",")
                )
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for FieldDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
