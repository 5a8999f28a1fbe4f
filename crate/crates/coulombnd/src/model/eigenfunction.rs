//! Closed-form bound-state eigenfunctions: a gauge prefactor described by
//! exact exponent data times a polynomial part in gauged variables.
//!
//! The polynomial part lives in `s = sqrt(-2E) mu^2`, `t = sqrt(-2E) nu^2`
//! and `z_l = cos 2 theta_(n-l-1)` for the parabolic family, and in
//! `u = 2 sqrt(-2E) r` and `z_l = cos 2 theta_l` for the spherical one.
//!
//! Evaluation produces jets in the original coordinates. In reduced mode
//! every gauge factor is normalized by its (possibly irrational) value at
//! the expansion point, so the result stays in the scalar field; since the
//! dropped prefactor is a nonzero constant, all linear eigenvalue residuals
//! are unaffected, and over rational scalars they vanish identically when
//! the claims hold.

use std::sync::Arc;

use num::Zero;

use crate::jet::{Jet, JetPoint};
use crate::orthopoly::{jacobi, laguerre};
use crate::poly::MultiPoly;
use crate::rational::{rat, rint, Rational};
use crate::scalar::{NumericError, Scalar};

use super::params::{ModelParams, QuantumNumbers, System};
use super::spectrum::{spectrum, EigenvalueRecord};
use super::ModelError;

/// One factor of the gauge prefactor. Variable indices refer to the
/// coordinate variables of the state's system.
#[derive(Clone, PartialEq, Debug)]
pub enum GaugeFactor {
    /// `x_var ^ exp`
    VarPow { var: usize, exp: Rational },
    /// `sin(x_var) ^ exp`
    SinPow { var: usize, exp: Rational },
    /// `cos(x_var) ^ exp`
    CosPow { var: usize, exp: Rational },
    /// `exp(coeff * sum_i x_i^2)`
    ExpQuad { coeff: Rational, vars: Vec<usize> },
    /// `exp(coeff * x_var)`
    ExpVar { coeff: Rational, var: usize },
}

impl GaugeFactor {
    pub fn display(&self, names: &[String]) -> String {
        match self {
            GaugeFactor::VarPow { var, exp } => format!("{}^({exp})", names[*var]),
            GaugeFactor::SinPow { var, exp } => format!("sin({})^({exp})", names[*var]),
            GaugeFactor::CosPow { var, exp } => format!("cos({})^({exp})", names[*var]),
            GaugeFactor::ExpQuad { coeff, vars } => {
                let quad: Vec<String> = vars.iter().map(|v| format!("{}^2", names[*v])).collect();
                format!("exp(({coeff}) * ({}))", quad.join(" + "))
            }
            GaugeFactor::ExpVar { coeff, var } => {
                format!("exp(({coeff}) * {})", names[*var])
            }
        }
    }

    fn jet<S: Scalar>(
        &self,
        point: &Arc<JetPoint<S>>,
        order: usize,
        reduced: bool,
    ) -> Result<Jet<S>, NumericError> {
        match self {
            GaugeFactor::VarPow { var, exp } => {
                let base = Jet::variable(point.clone(), order, *var)?;
                raise(base, exp, reduced)
            }
            GaugeFactor::SinPow { var, exp } => {
                let base = Jet::sin_of_var(point, order, *var)?;
                raise(base, exp, reduced)
            }
            GaugeFactor::CosPow { var, exp } => {
                let base = Jet::cos_of_var(point, order, *var)?;
                raise(base, exp, reduced)
            }
            GaugeFactor::ExpQuad { coeff, vars } => {
                let mut q = Jet::zero(point.clone(), order);
                for v in vars {
                    let x = Jet::variable(point.clone(), order, *v)?;
                    q = q.add(&x.mul(&x));
                }
                let arg = q.scale_rat(coeff);
                if reduced {
                    Ok(arg.exp_reduced())
                } else {
                    arg.exp()
                }
            }
            GaugeFactor::ExpVar { coeff, var } => {
                let arg = Jet::variable(point.clone(), order, *var)?.scale_rat(coeff);
                if reduced {
                    Ok(arg.exp_reduced())
                } else {
                    arg.exp()
                }
            }
        }
    }
}

fn raise<S: Scalar>(base: Jet<S>, exp: &Rational, reduced: bool) -> Result<Jet<S>, NumericError> {
    if exp.is_zero() {
        return Ok(Jet::constant(base.point().clone(), base.order(), S::one()));
    }
    if reduced {
        base.pow_reduced(exp)
    } else {
        base.pow(exp)
    }
}

/// A constructed bound state.
#[derive(Clone, Debug)]
pub struct Eigenfunction {
    pub params: ModelParams,
    pub qn: QuantumNumbers,
    pub record: EigenvalueRecord,
    /// Names of the coordinate variables the state lives in.
    pub coord_vars: Arc<Vec<String>>,
    pub gauge: Vec<GaugeFactor>,
    /// Polynomial part over the gauged variables.
    pub polypart: MultiPoly,
}

pub fn gauged_parabolic_vars(n: usize) -> Arc<Vec<String>> {
    let mut names = vec!["s".to_string(), "t".to_string()];
    names.extend((1..=n - 2).map(|l| format!("z{l}")));
    Arc::new(names)
}

pub fn gauged_spherical_vars(n: usize) -> Arc<Vec<String>> {
    let mut names = vec!["u".to_string()];
    names.extend((1..=n - 1).map(|l| format!("z{l}")));
    Arc::new(names)
}

/// Builds the closed-form eigenfunction for the given quantum numbers.
pub fn eigenfunction(
    params: &ModelParams,
    qn: &QuantumNumbers,
) -> Result<Eigenfunction, ModelError> {
    let record = spectrum(params, qn)?;
    let n = params.n();
    match qn {
        QuantumNumbers::Parabolic { n1, n2, j } => {
            let coord_vars = super::parabolic::parabolic_vars(n);
            let pvars = gauged_parabolic_vars(n);
            let m_top = record.m[n - 2].clone();
            let mut poly = laguerre(*n1 as i64, &m_top, "s")
                .embed(pvars.clone())?
                .checked_mul(&laguerre(*n2 as i64, &m_top, "t").embed(pvars.clone())?)?;
            for l in 1..=n - 2 {
                let alpha = params.p(l) - rat(1, 2); // p_(l+1) - 1/2
                let beta = record.m[l - 1].clone();
                let zname = format!("z{l}");
                let factor = jacobi(j[l - 1] as i64, &alpha, &beta, &zname).embed(pvars.clone())?;
                poly = poly.checked_mul(&factor)?;
            }
            // sigma = 2 sum J + sum p
            let sigma = rint(2 * j.iter().sum::<u32>() as i64) + params.p_sum();
            let mut gauge = vec![
                GaugeFactor::VarPow {
                    var: 0,
                    exp: sigma.clone(),
                },
                GaugeFactor::VarPow { var: 1, exp: sigma },
            ];
            for l in 1..=n - 2 {
                let v = 1 + (n - l - 1); // theta_(n-l-1)
                gauge.push(GaugeFactor::SinPow {
                    var: v,
                    exp: params.p(l).clone(),
                });
                gauge.push(GaugeFactor::CosPow {
                    var: v,
                    exp: &record.m[l - 1] + rint(1) - rat(l as i64, 2),
                });
            }
            gauge.push(GaugeFactor::ExpQuad {
                coeff: -&record.sqrt_minus_2e / rint(2),
                vars: vec![0, 1],
            });
            Ok(Eigenfunction {
                params: params.clone(),
                qn: qn.clone(),
                record,
                coord_vars,
                gauge,
                polypart: poly,
            })
        }
        QuantumNumbers::Spherical { nr, j } => {
            let coord_vars = super::spherical::spherical_vars(n);
            let pvars = gauged_spherical_vars(n);
            let two_m1 = rint(2) * &record.m[0];
            let mut poly = laguerre(*nr as i64, &two_m1, "u").embed(pvars.clone())?;
            for l in 1..=n - 1 {
                let alpha = record.m[l].clone(); // m_(l+1)
                let beta = params.p(l - 1) - rat(1, 2); // p_l - 1/2
                let zname = format!("z{l}");
                let factor = jacobi(j[l - 1] as i64, &alpha, &beta, &zname).embed(pvars.clone())?;
                poly = poly.checked_mul(&factor)?;
            }
            let mut gauge = vec![
                GaugeFactor::VarPow {
                    var: 0,
                    exp: &record.m[0] - rat(n as i64 - 2, 2),
                },
                GaugeFactor::ExpVar {
                    coeff: -record.sqrt_minus_2e.clone(),
                    var: 0,
                },
            ];
            for l in 1..=n - 1 {
                gauge.push(GaugeFactor::SinPow {
                    var: l,
                    exp: &record.m[l] + rint(1) - rat(n as i64 - l as i64, 2),
                });
                gauge.push(GaugeFactor::CosPow {
                    var: l,
                    exp: params.p(l - 1).clone(),
                });
            }
            Ok(Eigenfunction {
                params: params.clone(),
                qn: qn.clone(),
                record,
                coord_vars,
                gauge,
                polypart: poly,
            })
        }
    }
}

impl Eigenfunction {
    pub fn system(&self) -> System {
        self.qn.system()
    }

    /// Jets of the gauged variables (`s, t, z..` or `u, z..`) at a point in
    /// the original coordinates.
    pub fn gauged_argument_jets<S: Scalar>(
        &self,
        point: &Arc<JetPoint<S>>,
        order: usize,
    ) -> Result<Vec<Jet<S>>, NumericError> {
        let n = self.params.n();
        let sm2e = &self.record.sqrt_minus_2e;
        let mut args = Vec::new();
        match self.system() {
            System::Parabolic => {
                for v in 0..2 {
                    let x = Jet::variable(point.clone(), order, v)?;
                    args.push(x.mul(&x).scale_rat(sm2e));
                }
                for l in 1..=n - 2 {
                    let v = 1 + (n - l - 1);
                    args.push(cos_double(point, order, v)?);
                }
            }
            System::Spherical => {
                let r = Jet::variable(point.clone(), order, 0)?;
                args.push(r.scale_rat(&(rint(2) * sm2e)));
                for l in 1..=n - 1 {
                    args.push(cos_double(point, order, l)?);
                }
            }
        }
        Ok(args)
    }

    /// The wavefunction as a jet at `point`.
    ///
    /// With `reduced = true` each gauge factor is divided by its value at
    /// the point (see the module docs); with `reduced = false` the true
    /// value is computed, which over exact rationals is only possible when
    /// every prefactor value is itself rational.
    pub fn jet<S: Scalar>(
        &self,
        point: &Arc<JetPoint<S>>,
        order: usize,
        reduced: bool,
    ) -> Result<Jet<S>, NumericError> {
        if point.arity() != self.coord_vars.len() {
            return Err(NumericError::Arity(format!(
                "state lives in {} coordinates, point has {}",
                self.coord_vars.len(),
                point.arity()
            )));
        }
        let args = self.gauged_argument_jets(point, order)?;
        let mut acc = Jet::of_poly(&self.polypart, &args);
        for factor in &self.gauge {
            acc = acc.mul(&factor.jet(point, order, reduced)?);
        }
        Ok(acc)
    }

    /// True pointwise value over doubles.
    pub fn value(&self, point: &Arc<JetPoint<f64>>) -> Result<f64, NumericError> {
        Ok(self.jet(point, 0, false)?.value())
    }

    /// Gauge factors rendered with the coordinate names.
    pub fn gauge_display(&self) -> Vec<String> {
        self.gauge
            .iter()
            .map(|g| g.display(&self.coord_vars))
            .collect()
    }
}

/// `cos(2 x_v)` as `cos^2 - sin^2`, valid for angle-pair variables.
fn cos_double<S: Scalar>(
    point: &Arc<JetPoint<S>>,
    order: usize,
    v: usize,
) -> Result<Jet<S>, NumericError> {
    let s = Jet::sin_of_var(point, order, v)?;
    let c = Jet::cos_of_var(point, order, v)?;
    Ok(c.mul(&c).sub(&s.mul(&s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multi_index::MultiIndex;

    fn coulomb3() -> ModelParams {
        ModelParams::coulomb(3, rint(1))
    }

    #[test]
    fn parabolic_ground_state_is_pure_gauge() {
        let ef = eigenfunction(
            &coulomb3(),
            &QuantumNumbers::Parabolic { n1: 0, n2: 0, j: vec![0] },
        )
        .unwrap();
        assert_eq!(ef.polypart.to_string(), "1");
        // all power exponents vanish; the exponential carries -1/2 (mu^2+nu^2)
        for g in &ef.gauge {
            match g {
                GaugeFactor::ExpQuad { coeff, vars } => {
                    assert_eq!(coeff, &rat(-1, 2));
                    assert_eq!(vars, &vec![0, 1]);
                }
                GaugeFactor::VarPow { exp, .. }
                | GaugeFactor::SinPow { exp, .. }
                | GaugeFactor::CosPow { exp, .. } => assert!(exp.is_zero()),
                GaugeFactor::ExpVar { .. } => panic!("no linear exponential here"),
            }
        }
    }

    #[test]
    fn first_excited_polypart() {
        let ef = eigenfunction(
            &coulomb3(),
            &QuantumNumbers::Parabolic { n1: 1, n2: 0, j: vec![0] },
        )
        .unwrap();
        assert_eq!(ef.polypart.to_string(), "1 + -1 * s");
        assert_eq!(ef.record.sqrt_minus_2e, rat(1, 2));
    }

    #[test]
    fn spherical_ground_state_gauge() {
        let ef = eigenfunction(
            &coulomb3(),
            &QuantumNumbers::Spherical { nr: 0, j: vec![0, 0] },
        )
        .unwrap();
        assert_eq!(ef.polypart.to_string(), "1");
        // radial power r^(m1 - 1/2) with m1 = 1/2: exponent zero
        match &ef.gauge[0] {
            GaugeFactor::VarPow { var: 0, exp } => assert!(exp.is_zero()),
            other => panic!("unexpected leading factor {other:?}"),
        }
        match &ef.gauge[1] {
            GaugeFactor::ExpVar { coeff, var: 0 } => assert_eq!(coeff, &rint(-1)),
            other => panic!("unexpected exponential factor {other:?}"),
        }
    }

    #[test]
    fn parabolic_angular_exponents_match_closed_forms() {
        // p = (2, 3), n = 3: sin power p_2 = 3, cos power m_0 + 1/2 = p_1 = 2
        let params = ModelParams::new(3, rint(1), vec![rint(2), rint(3)]).unwrap();
        let ef = eigenfunction(
            &params,
            &QuantumNumbers::Parabolic { n1: 0, n2: 0, j: vec![0] },
        )
        .unwrap();
        let sin_pows: Vec<_> = ef
            .gauge
            .iter()
            .filter_map(|g| match g {
                GaugeFactor::SinPow { exp, .. } => Some(exp.clone()),
                _ => None,
            })
            .collect();
        let cos_pows: Vec<_> = ef
            .gauge
            .iter()
            .filter_map(|g| match g {
                GaugeFactor::CosPow { exp, .. } => Some(exp.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(sin_pows, vec![rint(3)]);
        assert_eq!(cos_pows, vec![rint(2)]);
        // (mu nu)^sigma with sigma = p_1 + p_2 = 5
        match &ef.gauge[0] {
            GaugeFactor::VarPow { var: 0, exp } => assert_eq!(exp, &rint(5)),
            other => panic!("unexpected factor {other:?}"),
        }
    }

    #[test]
    fn reduced_jet_value_is_one_for_pure_gauge() {
        // ground state: polypart 1, so the reduced jet has value exactly 1
        let ef = eigenfunction(
            &coulomb3(),
            &QuantumNumbers::Parabolic { n1: 0, n2: 0, j: vec![0] },
        )
        .unwrap();
        let point = JetPoint::with_angles(
            vec![rint(1), rat(1, 2), rint(0)],
            &[(2, rat(3, 5), rat(4, 5))],
        );
        let jet = ef.jet(&point, 2, true).unwrap();
        assert_eq!(jet.value(), rint(1));
        // gradient in mu of the normalized gauge e^{-(mu^2+nu^2)/2} is -mu
        assert_eq!(jet.coeff(&MultiIndex::unit(3, 0)), rint(-1));
    }

    #[test]
    fn full_float_value_matches_formula() {
        let ef = eigenfunction(
            &coulomb3(),
            &QuantumNumbers::Parabolic { n1: 1, n2: 0, j: vec![0] },
        )
        .unwrap();
        let (mu, nu, phi) = (1.0f64, 0.5, std::f64::consts::PI / 5.0);
        let point = JetPoint::real(vec![mu, nu, phi]);
        let got = ef.value(&point).unwrap();
        // psi = e^{-(mu^2+nu^2)/4} (1 - mu^2/2)
        let expect = (-(mu * mu + nu * nu) / 4.0).exp() * (1.0 - mu * mu / 2.0);
        assert!((got - expect).abs() < 1e-14, "{got} vs {expect}");
    }
}
