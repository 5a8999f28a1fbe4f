//! Operators in Cartesian coordinates `x_1 .. x_n`: the Hamiltonian with
//! Coulomb and inverse-square terms, angular momentum, the Runge-Lenz
//! vector of the pure Coulomb case, and the two complete commuting families
//! built from them.

use std::sync::Arc;

use num::Zero;

use crate::expr::{fc, FieldCoef};
use crate::fieldop::FieldDiffOp;
use crate::multi_index::MultiIndex;
use crate::rational::{rat, rint, Rational};

use super::{ModelError, ModelParams};

pub fn cartesian_vars(n: usize) -> Arc<Vec<String>> {
    Arc::new((1..=n).map(|i| format!("x{i}")).collect())
}

/// `r^2 = sum x_i^2` as a coefficient tree.
fn r_squared(n: usize) -> FieldCoef {
    fc::sum((0..n).map(|i| fc::powi(fc::var(i), 2)))
}

/// `1/r` as `(r^2)^(-1/2)`; exact at points with rational `r`.
fn inv_r(n: usize) -> FieldCoef {
    fc::pow(r_squared(n), rat(-1, 2))
}

/// `H = -(1/2) Laplacian - gamma/r + sum_i beta_i / x_i^2`.
pub fn cartesian_h(params: &ModelParams) -> FieldDiffOp {
    let n = params.n();
    let vars = cartesian_vars(n);
    let mut op = FieldDiffOp::zero(vars.clone());
    for i in 0..n {
        op.add_term(fc::c(rat(-1, 2)), MultiIndex::single(n, i, 2));
    }
    op.add_term(
        fc::mul(fc::c(-params.gamma().clone()), inv_r(n)),
        MultiIndex::zero(n),
    );
    for i in 0..n - 1 {
        let beta = params.beta(i);
        if !beta.is_zero() {
            op.add_term(
                fc::mul(fc::c(beta), fc::powi(fc::var(i), -2)),
                MultiIndex::zero(n),
            );
        }
    }
    op
}

/// `L_ab = x_a d_b - x_b d_a` (0-based indices).
pub fn angular_momentum(n: usize, a: usize, b: usize) -> FieldDiffOp {
    assert!(a < n && b < n && a != b);
    let vars = cartesian_vars(n);
    let mut op = FieldDiffOp::zero(vars);
    op.add_term(fc::var(a), MultiIndex::unit(n, b));
    op.add_term(fc::neg(fc::var(b)), MultiIndex::unit(n, a));
    op
}

/// Runge-Lenz component `A_i = (1/2) sum_a (p_a L_ia + L_ia p_a) + gamma x_i / r`,
/// expanded to `sum_{a != i} [ x_i d_a^2 - x_a d_a d_i - (1/2) d_i ] + gamma x_i / r`.
/// Defined only for the pure Coulomb case.
pub fn runge_lenz(params: &ModelParams, i: usize) -> Result<FieldDiffOp, ModelError> {
    if !params.is_coulomb() {
        return Err(ModelError::RungeLenzRequiresCoulomb);
    }
    let n = params.n();
    assert!(i < n);
    let vars = cartesian_vars(n);
    let mut op = FieldDiffOp::zero(vars);
    for a in 0..n {
        if a == i {
            continue;
        }
        op.add_term(fc::var(i), MultiIndex::single(n, a, 2));
        let mut mixed = MultiIndex::unit(n, a);
        mixed = mixed.add(&MultiIndex::unit(n, i));
        op.add_term(fc::neg(fc::var(a)), mixed);
        op.add_term(fc::c(rat(-1, 2)), MultiIndex::unit(n, i));
    }
    op.add_term(
        fc::mul(fc::mul(fc::c(params.gamma().clone()), fc::var(i)), inv_r(n)),
        MultiIndex::zero(n),
    );
    Ok(op)
}

/// The distinguished second-order operator of the parabolic family in
/// Cartesian form:
/// `X = (1/2) sum_{k<n} (L_nk p_k + p_k L_nk) + 2 x_n (gamma/(2r) - sum beta_i/x_i^2)`.
pub fn cartesian_x(params: &ModelParams) -> FieldDiffOp {
    let n = params.n();
    let vars = cartesian_vars(n);
    let last = n - 1;
    let mut op = FieldDiffOp::zero(vars);
    for k in 0..n - 1 {
        op.add_term(fc::var(last), MultiIndex::single(n, k, 2));
        let mixed = MultiIndex::unit(n, k).add(&MultiIndex::unit(n, last));
        op.add_term(fc::neg(fc::var(k)), mixed);
        op.add_term(fc::c(rat(-1, 2)), MultiIndex::unit(n, last));
    }
    op.add_term(
        fc::mul(
            fc::mul(fc::c(params.gamma().clone()), fc::var(last)),
            inv_r(n),
        ),
        MultiIndex::zero(n),
    );
    for i in 0..n - 1 {
        let beta = params.beta(i);
        if !beta.is_zero() {
            op.add_term(
                fc::mul(
                    fc::mul(fc::c(rint(-2) * beta), fc::var(last)),
                    fc::powi(fc::var(i), -2),
                ),
                MultiIndex::zero(n),
            );
        }
    }
    op
}

/// Sum of squared angular momenta over 0-based index range `[lo, hi]`.
fn casimir_block(n: usize, lo: usize, hi: usize) -> FieldDiffOp {
    let vars = cartesian_vars(n);
    let mut op = FieldDiffOp::zero(vars);
    for a in lo..=hi {
        for b in (a + 1)..=hi {
            let l = angular_momentum(n, a, b);
            op = op.add(&l.compose(&l));
        }
    }
    op
}

/// `Z_l = sum_{i<k<=l+1} L_ik^2 - 2 (sum_{i<=l+1} x_i^2)(sum_{k<=l+1} beta_k/x_k^2)`
/// for `l` in `1..=n-2` (1-based, as in the chain of parabolic separation
/// constants).
pub fn cartesian_z(params: &ModelParams, l: usize) -> FieldDiffOp {
    let n = params.n();
    assert!((1..=n - 2).contains(&l), "Z_l needs 1 <= l <= n-2");
    let hi = l; // 0-based top index
    let mut op = casimir_block(n, 0, hi);
    let coords = fc::sum((0..=hi).map(|i| fc::powi(fc::var(i), 2)));
    let pot = fc::sum((0..=hi).filter_map(|k| {
        let beta = params.beta(k);
        if beta.is_zero() {
            None
        } else {
            Some(fc::mul(fc::c(beta), fc::powi(fc::var(k), -2)))
        }
    }));
    let weight = fc::mul(fc::ci(-2), fc::mul(coords, pot));
    if !matches!(&weight, FieldCoef::Const(q) if q.is_zero()) {
        op.add_term(weight, MultiIndex::zero(n));
    }
    op
}

/// `Y_p = sum_{p<=i<k<=n} L_ik^2 - 2 (sum_{i>=p} x_i^2)(sum_{k=p}^{n-1} beta_k/x_k^2)`
/// for `p` in `1..=n-1` (1-based).
pub fn cartesian_y(params: &ModelParams, p: usize) -> FieldDiffOp {
    let n = params.n();
    assert!((1..=n - 1).contains(&p), "Y_p needs 1 <= p <= n-1");
    let lo = p - 1; // 0-based
    let mut op = casimir_block(n, lo, n - 1);
    let coords = fc::sum((lo..n).map(|i| fc::powi(fc::var(i), 2)));
    let pot = fc::sum((lo..n - 1).filter_map(|k| {
        let beta = params.beta(k);
        if beta.is_zero() {
            None
        } else {
            Some(fc::mul(fc::c(beta), fc::powi(fc::var(k), -2)))
        }
    }));
    let weight = fc::mul(fc::ci(-2), fc::mul(coords, pot));
    if !matches!(&weight, FieldCoef::Const(q) if q.is_zero()) {
        op.add_term(weight, MultiIndex::zero(n));
    }
    op
}

/// The four inequivalent commuting pairs `(X1, X2)` of the n = 3 Coulomb
/// problem, with the free constants `a` (second pair) and `f` (fourth pair)
/// supplied by the caller. Pair order matches the separating coordinate
/// systems: parabolic rotational, shifted spheroidal, spherical,
/// spheroconical.
pub fn commuting_pairs_n3(
    params: &ModelParams,
    a: &Rational,
    f: &Rational,
) -> Result<Vec<(FieldDiffOp, FieldDiffOp)>, ModelError> {
    if params.n() != 3 {
        return Err(ModelError::Dimension {
            n: params.n(),
            min: 3,
        });
    }
    if !params.is_coulomb() {
        return Err(ModelError::RungeLenzRequiresCoulomb);
    }
    let n = 3;
    let a3 = runge_lenz(params, 2)?;
    let l12 = angular_momentum(n, 0, 1);
    let l23 = angular_momentum(n, 1, 2);
    let l31 = angular_momentum(n, 0, 2);
    let l12sq = l12.compose(&l12);
    let l23sq = l23.compose(&l23);
    let l31sq = l31.compose(&l31);
    let casimir = l12sq.add(&l23sq).add(&l31sq);
    Ok(vec![
        (a3.clone(), l12sq.clone()),
        (a3.add(&casimir.scale_rat(a)), l12sq.clone()),
        (casimir.clone(), l12sq),
        (casimir, l23sq.add(&l31sq.scale_rat(f))),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{Jet, JetPoint};
    use crate::poly::{var_list, MultiPoly};

    #[test]
    fn free_hamiltonian_in_two_dimensions() {
        // gamma = 0, p = 0: H is -(1/2)(d1^2 + d2^2)
        let params = ModelParams::coulomb(2, rint(0));
        let h = cartesian_h(&params);
        let point = JetPoint::cartesian(vec![rat(1, 2), rat(3, 4)]);
        let vars = var_list(&["x1", "x2"]);
        let x = MultiPoly::var(vars.clone(), 0);
        let y = MultiPoly::var(vars, 1);
        let f = &x.pow(3) + &(&x * &y.pow(2)).scale(&rint(2));
        let jet = Jet::lift_poly(&f, &point, 4).unwrap();
        let got = h.apply(&jet).unwrap();
        // -(1/2)(6x + 4x) = -5x at the point
        let expect = Jet::lift_poly(&x.scale(&rint(-5)), &point, 2).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn inverse_square_strengths_enter_via_beta() {
        // H(p) - H(0) is multiplication by beta_1/x_1^2 + beta_2/x_2^2
        let with = ModelParams::new(3, rint(1), vec![rint(2), rint(3)]).unwrap();
        let without = ModelParams::coulomb(3, rint(1));
        let diff = cartesian_h(&with).sub(&cartesian_h(&without));
        let point = JetPoint::cartesian(vec![rint(1), rint(2), rint(2)]);
        let one = Jet::constant(point.clone(), 2, rint(1));
        let got = diff.apply(&one).unwrap();
        // beta_1 = 1, beta_2 = 3: 1/1 + 3/4 = 7/4
        assert_eq!(got.value(), rat(7, 4));
    }

    #[test]
    fn runge_lenz_requires_pure_coulomb() {
        let params = ModelParams::new(3, rint(1), vec![rat(1, 2), rint(0)]).unwrap();
        assert!(matches!(
            runge_lenz(&params, 2),
            Err(ModelError::RungeLenzRequiresCoulomb)
        ));
        // p_i in {0, 1} is still Coulomb: beta = 0
        let ok = ModelParams::new(3, rint(1), vec![rint(1), rint(0)]).unwrap();
        assert!(runge_lenz(&ok, 2).is_ok());
    }

    #[test]
    fn x_reduces_to_runge_lenz_for_coulomb() {
        let params = ModelParams::coulomb(4, rat(3, 2));
        let x = cartesian_x(&params);
        let a_last = runge_lenz(&params, 3).unwrap();
        let point = JetPoint::cartesian(vec![rint(1), rint(2), rint(2), rint(4)]);
        let vars = cartesian_vars(4);
        let poly_vars = var_list(&vars.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let f = {
            let x1 = MultiPoly::var(poly_vars.clone(), 0);
            let x4 = MultiPoly::var(poly_vars, 3);
            &x1.pow(2) * &x4
        };
        let jet = Jet::lift_poly(&f, &point, 4).unwrap();
        let lhs = x.apply(&jet).unwrap();
        let rhs = a_last.apply(&jet).unwrap();
        assert_eq!(lhs, rhs);
    }
}
