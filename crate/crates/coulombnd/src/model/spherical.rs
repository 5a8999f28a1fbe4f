//! Operators and coordinates of the spherical family.
//!
//! Variables are `r, theta_1 .. theta_{n-1}` (jet indices 0 and `l` for
//! `theta_l`). The angular sector is the nested chain `V_l` acting on the
//! angles `theta_l .. theta_{n-1}`; `V_1` is the full angular part of the
//! Hamiltonian, and `Y_l` comes in resolved form (printed, with the inner
//! eigenvalue `k_{l+1}` substituted) and chain form (`V_l` itself).

use std::sync::Arc;

use num::Zero;

use crate::expr::fc;
use crate::fieldop::FieldDiffOp;
use crate::jet::JetPoint;
use crate::multi_index::MultiIndex;
use crate::rational::{rat, rint, Rational};
use crate::scalar::{NumericError, Scalar};

use super::ModelParams;

pub fn spherical_vars(n: usize) -> Arc<Vec<String>> {
    let mut names = vec!["r".to_string()];
    names.extend((1..=n - 1).map(|i| format!("theta{i}")));
    Arc::new(names)
}

fn two_beta(params: &ModelParams, i_one_based: usize) -> Rational {
    rint(2) * params.beta(i_one_based - 1)
}

/// The nested angular operator `V_l` on angles `theta_l .. theta_{n-1}`:
///
/// `V_{n-1} = d^2 - 2 b_{n-1} / cos^2`,
/// `V_l = d^2 + (n-l-1) cot(theta_l) d - 2 b_l / cos^2 + V_{l+1} / sin^2`.
pub fn spherical_v_chain(params: &ModelParams, l: usize) -> FieldDiffOp {
    let n = params.n();
    assert!((1..=n - 1).contains(&l), "V_l needs 1 <= l <= n-1");
    let vars = spherical_vars(n);
    let v = l; // theta_l sits at jet index l
    let mut op = FieldDiffOp::zero(vars);
    op.add_term(fc::ci(1), MultiIndex::single(n, v, 2));
    let b = two_beta(params, l);
    if !b.is_zero() {
        op.add_term(
            fc::mul(fc::c(-b), fc::powi(fc::cos(fc::var(v)), -2)),
            MultiIndex::zero(n),
        );
    }
    if l < n - 1 {
        op.add_term(
            fc::mul(fc::ci(n as i64 - l as i64 - 1), fc::cot_var(v)),
            MultiIndex::unit(n, v),
        );
        let inner = spherical_v_chain(params, l + 1);
        op = op.add(&inner.scale(&fc::powi(fc::sin(fc::var(v)), -2)));
    }
    op
}

/// The Hamiltonian in spherical coordinates (chain form).
pub fn spherical_h(params: &ModelParams) -> FieldDiffOp {
    let n = params.n();
    let vars = spherical_vars(n);
    let mut op = FieldDiffOp::zero(vars);
    op.add_term(fc::c(rat(-1, 2)), MultiIndex::single(n, 0, 2));
    op.add_term(
        fc::mul(fc::c(rat(-(n as i64 - 1), 2)), fc::powi(fc::var(0), -1)),
        MultiIndex::unit(n, 0),
    );
    op.add_term(
        fc::mul(fc::c(-params.gamma().clone()), fc::powi(fc::var(0), -1)),
        MultiIndex::zero(n),
    );
    let v1 = spherical_v_chain(params, 1);
    let weight = fc::mul(fc::c(rat(-1, 2)), fc::powi(fc::var(0), -2));
    op.add(&v1.scale(&weight))
}

/// The printed single-angle operator `Y_l` with the inner eigenvalue
/// `k_{l+1}` substituted (ignored for `l = n-1`, which has no inner sector).
pub fn spherical_y_resolved(
    params: &ModelParams,
    l: usize,
    k_next: &Rational,
) -> FieldDiffOp {
    let n = params.n();
    assert!((1..=n - 1).contains(&l), "Y_l needs 1 <= l <= n-1");
    let vars = spherical_vars(n);
    let v = l;
    let mut op = FieldDiffOp::zero(vars);
    op.add_term(fc::ci(1), MultiIndex::single(n, v, 2));
    let b = two_beta(params, l);
    if !b.is_zero() {
        op.add_term(
            fc::mul(fc::c(-b), fc::powi(fc::cos(fc::var(v)), -2)),
            MultiIndex::zero(n),
        );
    }
    if l < n - 1 {
        op.add_term(
            fc::mul(fc::ci(n as i64 - l as i64 - 1), fc::cot_var(v)),
            MultiIndex::unit(n, v),
        );
        if !k_next.is_zero() {
            op.add_term(
                fc::mul(fc::c(k_next.clone()), fc::powi(fc::sin(fc::var(v)), -2)),
                MultiIndex::zero(n),
            );
        }
    }
    op
}

/// The chain form of `Y_l`: the nested operator `V_l` itself.
pub fn spherical_y_chain(params: &ModelParams, l: usize) -> FieldDiffOp {
    spherical_v_chain(params, l)
}

fn sincos<S: Scalar>(point: &JetPoint<S>, i: usize) -> Result<(S, S), NumericError> {
    if let Some((s, c)) = point.trig(i) {
        return Ok((s.clone(), c.clone()));
    }
    let v = point.coord(i)?;
    Ok((v.try_sin()?, v.try_cos()?))
}

/// Forward coordinate map: `x_1 = r cos(theta_1)`,
/// `x_a = r sin(theta_1) .. sin(theta_{a-1}) cos(theta_a)`,
/// `x_n = r sin(theta_1) .. sin(theta_{n-1})`.
pub fn spherical_to_cartesian<S: Scalar>(point: &JetPoint<S>) -> Result<Vec<S>, NumericError> {
    let n = point.arity();
    if n < 2 {
        return Err(NumericError::Arity(
            "spherical point needs at least 2 variables".into(),
        ));
    }
    let r = point.coord(0)?.clone();
    let trig: Vec<(S, S)> = (1..=n - 1)
        .map(|l| sincos(point, l))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(n);
    let mut sines = r;
    for (s, c) in trig.iter() {
        out.push(sines.clone() * c.clone());
        sines = sines * s.clone();
    }
    out.push(sines);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    #[test]
    fn last_angle_operator_is_printed_form() {
        // n = 3: Y_2 = d^2/dalpha^2 - 2 b_2 / cos^2(alpha)
        let params = ModelParams::new(3, rint(1), vec![rint(0), rint(3)]).unwrap();
        let y2 = spherical_y_resolved(&params, 2, &rint(0));
        let point = JetPoint::with_angles(
            vec![rint(1), rint(0), rint(0)],
            &[(1, rat(3, 5), rat(4, 5)), (2, rat(5, 13), rat(12, 13))],
        );
        let f = Jet::constant(point, 2, rint(1));
        // -2*3 / (144/169) = -1014/144 = -169/24
        assert_eq!(y2.apply(&f).unwrap().value(), rat(-169, 24));
    }

    #[test]
    fn first_order_coefficient_counts_remaining_angles() {
        // n = 5, l = 1: coefficient of d/dtheta_1 is 3 cot(theta_1)
        let params = ModelParams::coulomb(5, rint(1));
        let y1 = spherical_y_resolved(&params, 1, &rint(0));
        let mut angles = Vec::new();
        for i in 1..=4usize {
            angles.push((i, rat(3, 5), rat(4, 5)));
        }
        let point = JetPoint::with_angles(vec![rint(1); 5], &angles);
        let f = Jet::increment(point, 3, 1); // theta_1 increment
        // cot = 4/3, so Y_1 f = 3 * 4/3 = 4
        assert_eq!(y1.apply(&f).unwrap().value(), rint(4));
    }

    #[test]
    fn radial_part_for_coulomb() {
        // n = 3, p = 0: H on a radial function is -(1/2)(f'' + 2 f'/r + 2 gamma f / r)
        let params = ModelParams::coulomb(3, rint(1));
        let h = spherical_h(&params);
        let point = JetPoint::with_angles(
            vec![rint(2), rint(0), rint(0)],
            &[(1, rat(3, 5), rat(4, 5)), (2, rat(5, 13), rat(12, 13))],
        );
        // f = r^2: H f = -(1/2)(2 + 4 + 2r) = -3 - r at r = 2 -> -5
        let r = Jet::variable(point, 4, 0).unwrap();
        let f = r.mul(&r);
        assert_eq!(h.apply(&f).unwrap().value(), rint(-5));
    }

    #[test]
    fn coordinate_map_plug_ins() {
        // (r, theta, alpha) = (2, pi/2, 0) -> (0, 2, 0)
        let p = JetPoint::with_angles(
            vec![rint(2), rint(0), rint(0)],
            &[(1, rint(1), rint(0)), (2, rint(0), rint(1))],
        );
        assert_eq!(
            spherical_to_cartesian(&p).unwrap(),
            vec![rint(0), rint(2), rint(0)]
        );
        // generic Pythagorean point keeps |x| = r exactly
        let p = JetPoint::with_angles(
            vec![rint(7), rint(0), rint(0)],
            &[(1, rat(3, 5), rat(4, 5)), (2, rat(5, 13), rat(12, 13))],
        );
        let x = spherical_to_cartesian(&p).unwrap();
        let r2: Rational = x.iter().map(|v| v * v).sum();
        assert_eq!(r2, rint(49));
    }
}
