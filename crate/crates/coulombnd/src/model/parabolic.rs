//! Operators and coordinates of the parabolic-rotational family.
//!
//! Variables are `mu, nu, theta_1 .. theta_{n-2}` (jet indices 0, 1, and
//! `1 + i` for `theta_i`). The angular sector is the chain of nested sphere
//! operators `W_l` acting on the last `l` angles; `W_{n-2}` is the full
//! angular bracket of the Hamiltonian, and the separation operator `Z_l` is
//! either that chain truncated at depth `l` ("chain" form) or the printed
//! single-angle operator with the inner eigenvalue `k_{l-1}` substituted
//! ("resolved" form).

use std::sync::Arc;

use num::Zero;

use crate::expr::{fc, FieldCoef};
use crate::fieldop::FieldDiffOp;
use crate::jet::JetPoint;
use crate::multi_index::MultiIndex;
use crate::rational::{rat, rint, Rational};
use crate::scalar::{NumericError, Scalar};

use super::{ModelError, ModelParams};

pub fn parabolic_vars(n: usize) -> Arc<Vec<String>> {
    let mut names = vec!["mu".to_string(), "nu".to_string()];
    names.extend((1..=n - 2).map(|i| format!("theta{i}")));
    Arc::new(names)
}

/// Jet-variable index of `theta_i` (1-based angle label).
fn theta_index(i: usize) -> usize {
    1 + i
}

fn check_dimension(params: &ModelParams) -> Result<(), ModelError> {
    if params.n() < 3 {
        return Err(ModelError::Dimension {
            n: params.n(),
            min: 3,
        });
    }
    Ok(())
}

/// `2 beta_i` with the 1-based label `i`: the strength `p_i (p_i - 1)`.
fn two_beta(params: &ModelParams, i_one_based: usize) -> Rational {
    rint(2) * params.beta(i_one_based - 1)
}

/// The nested angular operator `W_l`, acting on the last `l` angles:
///
/// `W_1 = d^2/dv^2 - 2 b_1 / cos^2 v - 2 b_2 / sin^2 v` with `v = theta_{n-2}`,
/// `W_l = d^2/dv^2 - (l-1) tan v d/dv + W_{l-1} / cos^2 v - 2 b_{l+1} / sin^2 v`
/// with `v = theta_{n-l-1}`.
pub fn parabolic_w_chain(params: &ModelParams, l: usize) -> Result<FieldDiffOp, ModelError> {
    check_dimension(params)?;
    let n = params.n();
    assert!((1..=n - 2).contains(&l), "W_l needs 1 <= l <= n-2");
    let vars = parabolic_vars(n);
    let v = theta_index(n - l - 1);
    let mut op = FieldDiffOp::zero(vars.clone());
    op.add_term(fc::ci(1), MultiIndex::single(n, v, 2));
    if l == 1 {
        let b1 = two_beta(params, 1);
        if !b1.is_zero() {
            op.add_term(
                fc::mul(fc::c(-b1), fc::powi(fc::cos(fc::var(v)), -2)),
                MultiIndex::zero(n),
            );
        }
    } else {
        op.add_term(
            fc::mul(fc::ci(-(l as i64 - 1)), fc::tan_var(v)),
            MultiIndex::unit(n, v),
        );
        let inner = parabolic_w_chain(params, l - 1)?;
        op = op.add(&inner.scale(&fc::powi(fc::cos(fc::var(v)), -2)));
    }
    let b_top = two_beta(params, l + 1);
    if !b_top.is_zero() {
        op.add_term(
            fc::mul(fc::c(-b_top), fc::powi(fc::sin(fc::var(v)), -2)),
            MultiIndex::zero(n),
        );
    }
    Ok(op)
}

/// The radial-pair second-order block `d^2/dw^2 + (n-2)/w d/dw` in `mu` or `nu`.
fn radial_block(n: usize, w: usize) -> FieldDiffOp {
    let vars = parabolic_vars(n);
    let mut op = FieldDiffOp::zero(vars);
    op.add_term(fc::ci(1), MultiIndex::single(n, w, 2));
    op.add_term(
        fc::mul(fc::ci(n as i64 - 2), fc::powi(fc::var(w), -1)),
        MultiIndex::unit(n, w),
    );
    op
}

fn mu2_plus_nu2() -> FieldCoef {
    fc::add(fc::powi(fc::var(0), 2), fc::powi(fc::var(1), 2))
}

fn mu2_minus_nu2() -> FieldCoef {
    fc::sub(fc::powi(fc::var(0), 2), fc::powi(fc::var(1), 2))
}

fn mu2_nu2() -> FieldCoef {
    fc::mul(fc::powi(fc::var(0), 2), fc::powi(fc::var(1), 2))
}

/// The Hamiltonian in parabolic-rotational coordinates (chain form: the
/// angular bracket is the full operator `W_{n-2}`).
pub fn parabolic_h(params: &ModelParams) -> Result<FieldDiffOp, ModelError> {
    check_dimension(params)?;
    let n = params.n();
    let mut kin = radial_block(n, 0).add(&radial_block(n, 1));
    kin.add_term(
        fc::c(rint(4) * params.gamma().clone()),
        MultiIndex::zero(n),
    );
    let conformal = fc::mul(fc::c(rat(-1, 2)), fc::recip(mu2_plus_nu2()));
    let mut op = kin.scale(&conformal);
    let w = parabolic_w_chain(params, n - 2)?;
    let angular_weight = fc::mul(fc::c(rat(-1, 2)), fc::recip(mu2_nu2()));
    op = op.add(&w.scale(&angular_weight));
    Ok(op)
}

/// The distinguished operator `X` in parabolic coordinates (chain form).
pub fn parabolic_x(params: &ModelParams) -> Result<FieldDiffOp, ModelError> {
    check_dimension(params)?;
    let n = params.n();
    let mu_block = radial_block(n, 0).scale(&fc::neg(fc::powi(fc::var(1), 2)));
    let nu_block = radial_block(n, 1).scale(&fc::powi(fc::var(0), 2));
    let conformal = fc::mul(fc::c(rat(1, 2)), fc::recip(mu2_plus_nu2()));
    let mut op = mu_block.add(&nu_block).scale(&conformal);
    op.add_term(
        fc::mul(
            fc::c(params.gamma().clone()),
            fc::div(mu2_minus_nu2(), mu2_plus_nu2()),
        ),
        MultiIndex::zero(n),
    );
    let w = parabolic_w_chain(params, n - 2)?;
    let angular_weight = fc::mul(
        fc::c(rat(1, 2)),
        fc::div(mu2_minus_nu2(), mu2_nu2()),
    );
    op = op.add(&w.scale(&angular_weight));
    Ok(op)
}

/// The printed single-angle separation operator `Z_l`, with the inner
/// eigenvalue `k_{l-1}` substituted as a number (use
/// [`super::k_zero`] for `l = 1`).
pub fn parabolic_z_resolved(
    params: &ModelParams,
    l: usize,
    k_prev: &Rational,
) -> Result<FieldDiffOp, ModelError> {
    check_dimension(params)?;
    let n = params.n();
    assert!((1..=n - 2).contains(&l), "Z_l needs 1 <= l <= n-2");
    let vars = parabolic_vars(n);
    let v = theta_index(n - l - 1);
    let mut op = FieldDiffOp::zero(vars);
    op.add_term(fc::ci(1), MultiIndex::single(n, v, 2));
    if l > 1 {
        op.add_term(
            fc::mul(fc::ci(-(l as i64 - 1)), fc::tan_var(v)),
            MultiIndex::unit(n, v),
        );
    }
    if !k_prev.is_zero() {
        op.add_term(
            fc::mul(fc::c(k_prev.clone()), fc::powi(fc::cos(fc::var(v)), -2)),
            MultiIndex::zero(n),
        );
    }
    let b_top = two_beta(params, l + 1);
    if !b_top.is_zero() {
        op.add_term(
            fc::mul(fc::c(-b_top), fc::powi(fc::sin(fc::var(v)), -2)),
            MultiIndex::zero(n),
        );
    }
    Ok(op)
}

/// The chain form of `Z_l`: the nested operator `W_l` itself.
pub fn parabolic_z_chain(params: &ModelParams, l: usize) -> Result<FieldDiffOp, ModelError> {
    parabolic_w_chain(params, l)
}

/// The conformally regularized pair at energy `E`:
/// `Q_0 = (mu^2 + nu^2)(H - E) + 2 gamma`,
/// `Q_1 = 2 X + (mu^2 - nu^2)(H - E)`.
pub fn parabolic_q_ops(
    params: &ModelParams,
    energy: &Rational,
) -> Result<(FieldDiffOp, FieldDiffOp), ModelError> {
    let n = params.n();
    let h = parabolic_h(params)?;
    let x = parabolic_x(params)?;
    let mut h_minus_e = h;
    h_minus_e.add_term(fc::c(-energy.clone()), MultiIndex::zero(n));
    let mut q0 = h_minus_e.scale(&mu2_plus_nu2());
    q0.add_term(
        fc::c(rint(2) * params.gamma().clone()),
        MultiIndex::zero(n),
    );
    let q1 = x.scale_rat(&rint(2)).add(&h_minus_e.scale(&mu2_minus_nu2()));
    Ok((q0, q1))
}

/// Sine and cosine of variable `i`, from stored pair data or the value.
fn sincos<S: Scalar>(point: &JetPoint<S>, i: usize) -> Result<(S, S), NumericError> {
    if let Some((s, c)) = point.trig(i) {
        return Ok((s.clone(), c.clone()));
    }
    let v = point.coord(i)?;
    Ok((v.try_sin()?, v.try_cos()?))
}

/// Forward coordinate map to Cartesian:
/// `x_a = mu nu sigma_a(theta)` for `a < n` and `x_n = (mu^2 - nu^2)/2`.
pub fn parabolic_to_cartesian<S: Scalar>(point: &JetPoint<S>) -> Result<Vec<S>, NumericError> {
    let n = point.arity();
    if n < 3 {
        return Err(NumericError::Arity(format!(
            "parabolic point needs at least 3 variables, got {n}"
        )));
    }
    let mu = point.coord(0)?.clone();
    let nu = point.coord(1)?.clone();
    let trig: Vec<(S, S)> = (1..=n - 2)
        .map(|i| sincos(point, theta_index(i)))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(n);
    // x_1 carries the full cosine product; x_a (a >= 2) swaps the cosine of
    // theta_{n-a} for its sine and drops the later angles.
    let radial = mu.clone() * nu.clone();
    let mut x1 = radial.clone();
    for (_, c) in trig.iter() {
        x1 = x1 * c.clone();
    }
    out.push(x1);
    for a in 2..=n - 1 {
        let mut x = radial.clone() * trig[n - a - 1].0.clone();
        for (_, c) in trig.iter().take(n - a - 1) {
            x = x * c.clone();
        }
        out.push(x);
    }
    let half = S::from_rational(&rat(1, 2));
    out.push((mu.clone() * mu - nu.clone() * nu) * half);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::spectrum::k_zero;

    fn coulomb3() -> ModelParams {
        ModelParams::coulomb(3, rint(1))
    }

    #[test]
    fn printed_single_angle_operator() {
        // n = 3: Z_1 = d^2/dphi^2 - 2 b1 / cos^2 - 2 b2 / sin^2; the chain
        // and resolved forms coincide.
        let params = ModelParams::new(3, rint(1), vec![rint(2), rint(3)]).unwrap();
        let chain = parabolic_z_chain(&params, 1).unwrap();
        let resolved = parabolic_z_resolved(&params, 1, &k_zero(&params)).unwrap();
        let point = JetPoint::with_angles(
            vec![rint(1), rint(2), rint(0)],
            &[(2, rat(3, 5), rat(4, 5))],
        );
        let f = crate::jet::Jet::constant(point, 3, rint(1));
        let a = chain.apply(&f).unwrap();
        let b = resolved.apply(&f).unwrap();
        assert_eq!(a, b);
        // -2 b1 / cos^2 - 2 b2 / sin^2 = -2/(16/25) - 6/(9/25)
        assert_eq!(a.value(), rat(-25, 8) - rat(50, 3));
    }

    #[test]
    fn coulomb_case_has_no_potential_terms_in_the_angle() {
        let params = coulomb3();
        let z = parabolic_z_chain(&params, 1).unwrap();
        // only the second-derivative term survives
        assert_eq!(z.terms().count(), 1);
    }

    #[test]
    fn tan_coefficient_in_higher_chains() {
        // n = 4, l = 2: first-order coefficient is -tan(theta_1)
        let params = ModelParams::coulomb(4, rint(1));
        let z2 = parabolic_z_chain(&params, 2).unwrap();
        let point = JetPoint::with_angles(
            vec![rint(1), rint(1), rint(0), rint(0)],
            &[(2, rat(3, 5), rat(4, 5)), (3, rat(5, 13), rat(12, 13))],
        );
        // apply to f = theta_1 increment: W_2 f = -(2-1) tan(theta_1) * 1
        let f = crate::jet::Jet::increment(point, 3, 2);
        let got = z2.apply(&f).unwrap();
        assert_eq!(got.value(), rat(-3, 4));
    }

    #[test]
    fn coordinate_map_plug_ins() {
        // (mu, nu, phi) = (1, 1, 0) -> (1, 0, 0)
        let p = JetPoint::with_angles(vec![rint(1), rint(1), rint(0)], &[(2, rint(0), rint(1))]);
        assert_eq!(
            parabolic_to_cartesian(&p).unwrap(),
            vec![rint(1), rint(0), rint(0)]
        );
        // (2, 1, pi/2) -> (0, 2, 3/2)
        let p = JetPoint::with_angles(vec![rint(2), rint(1), rint(0)], &[(2, rint(1), rint(0))]);
        assert_eq!(
            parabolic_to_cartesian(&p).unwrap(),
            vec![rint(0), rint(2), rat(3, 2)]
        );
        // n = 4 with two Pythagorean angles: consistency r^2 = |x|^2
        let p = JetPoint::with_angles(
            vec![rint(2), rint(3), rint(0), rint(0)],
            &[(2, rat(3, 5), rat(4, 5)), (3, rat(5, 13), rat(12, 13))],
        );
        let x = parabolic_to_cartesian(&p).unwrap();
        let r2: Rational = x.iter().map(|v| v * v).sum();
        // r = (mu^2 + nu^2)/2 = 13/2
        assert_eq!(r2, rat(169, 4));
    }

    #[test]
    fn dimension_guard() {
        let params = ModelParams::coulomb(2, rint(1));
        assert!(matches!(
            parabolic_h(&params),
            Err(ModelError::Dimension { min: 3, .. })
        ));
    }
}
