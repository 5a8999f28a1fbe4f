//! Closed-form spectra: the shifted Balmer energy, the ladder of separation
//! constants, and level-degeneracy enumeration.

use num::Signed;

use crate::rational::{rat, rint, Rational};

use super::{ModelError, ModelParams, QuantumNumbers, System};

/// Exact eigenvalue data of one bound state.
///
/// Conventions: `E = -gamma^2 / (2 D^2)` with the principal denominator
/// `D = N1 + N2 + 2 sum J + sum p + (n-1)/2` (parabolic; `Nr` replaces
/// `N1 + N2` in the spherical family) and `sqrt(-2E) = gamma / D` exactly.
///
/// Separation-constant storage:
/// * parabolic: `m[l] = m_l` for `l = 0..=n-2` (so `m[0] = p_1 - 1/2` and the
///   Laguerre parameter is `m[n-2]`); `k[l-1] = k_l` for `l = 1..=n-2`.
/// * spherical: `m[l-1] = m_l` for `l = 1..=n` (the last entry is the
///   sentinel `m_n = -1/2`); `k[l-1] = k_l` for `l = 1..=n-1`.
#[derive(Clone, PartialEq, Debug)]
pub struct EigenvalueRecord {
    pub system: System,
    pub energy: Rational,
    /// Eigenvalue of the parabolic operator X; absent for spherical states.
    pub lambda: Option<Rational>,
    pub k: Vec<Rational>,
    pub m: Vec<Rational>,
    pub sqrt_minus_2e: Rational,
    pub principal: Rational,
}

impl EigenvalueRecord {
    /// The Laguerre parameter of the polynomial part: `m_{n-2}` (parabolic)
    /// or `2 m_1` (spherical).
    pub fn laguerre_parameter(&self) -> Rational {
        match self.system {
            System::Parabolic => self.m.last().expect("nonempty").clone(),
            System::Spherical => rint(2) * &self.m[0],
        }
    }
}

/// Exact spectrum data for a state of either family.
pub fn spectrum(
    params: &ModelParams,
    qn: &QuantumNumbers,
) -> Result<EigenvalueRecord, ModelError> {
    qn.validate(params.n())?;
    let n = params.n();
    let gamma = params.gamma();
    let principal = match qn {
        QuantumNumbers::Parabolic { n1, n2, j } => {
            rint(*n1 as i64 + *n2 as i64)
                + rint(2 * j.iter().sum::<u32>() as i64)
                + params.p_sum()
                + rat(n as i64 - 1, 2)
        }
        QuantumNumbers::Spherical { nr, j } => {
            rint(*nr as i64)
                + rint(2 * j.iter().sum::<u32>() as i64)
                + params.p_sum()
                + rat(n as i64 - 1, 2)
        }
    };
    if !principal.is_positive() {
        return Err(ModelError::UnboundState(principal.to_string()));
    }
    let sqrt_minus_2e = gamma / &principal;
    let energy = -(gamma * gamma) / (rint(2) * &principal * &principal);

    let (lambda, m, k) = match qn {
        QuantumNumbers::Parabolic { n1, n2, j } => {
            let lambda = gamma * rint(*n1 as i64 - *n2 as i64) / &principal;
            // m_l = 2 (J_1 + .. + J_l) + (p_1 + .. + p_{l+1}) + (l-1)/2
            let mut m = Vec::with_capacity(n - 1);
            for l in 0..=n - 2 {
                let jsum: i64 = j.iter().take(l).map(|&v| v as i64).sum();
                let psum: Rational = params.p_all().iter().take(l + 1).sum();
                m.push(rint(2 * jsum) + psum + rat(l as i64 - 1, 2));
            }
            // k_l = (l-1)^2/4 - m_l^2, l = 1..=n-2
            let k = (1..=n - 2)
                .map(|l| rat((l as i64 - 1) * (l as i64 - 1), 4) - &m[l] * &m[l])
                .collect();
            (Some(lambda), m, k)
        }
        QuantumNumbers::Spherical { j, .. } => {
            // m_l = 2 (J_l + .. + J_{n-1}) + (p_l + .. + p_{n-1}) + (n-l-1)/2
            let mut m = Vec::with_capacity(n);
            for l in 1..=n - 1 {
                let jsum: i64 = j.iter().skip(l - 1).map(|&v| v as i64).sum();
                let psum: Rational = params.p_all().iter().skip(l - 1).sum();
                m.push(rint(2 * jsum) + psum + rat(n as i64 - l as i64 - 1, 2));
            }
            m.push(rat(-1, 2)); // m_n
            let k = (1..=n - 1)
                .map(|l| {
                    let d = n as i64 - l as i64 - 1;
                    rat(d * d, 4) - &m[l - 1] * &m[l - 1]
                })
                .collect();
            (None, m, k)
        }
    };

    Ok(EigenvalueRecord {
        system: qn.system(),
        energy,
        lambda,
        k,
        m,
        sqrt_minus_2e,
        principal,
    })
}

/// `k_0 = -p_1 (p_1 - 1)`, the seed of the parabolic angular ladder.
pub fn k_zero(params: &ModelParams) -> Rational {
    -(params.p(0) * (params.p(0) - rint(1)))
}

/// All states of the given family at level `q`, with their count. The
/// enumeration is exhaustive over `N1 + N2 + 2 sum J = q` (parabolic) or
/// `Nr + 2 sum J = q` (spherical), in lexicographic order.
pub fn degeneracy(params: &ModelParams, system: System, q: u32) -> (usize, Vec<QuantumNumbers>) {
    let n = params.n();
    let mut out = Vec::new();
    let jlen = match system {
        System::Parabolic => n - 2,
        System::Spherical => n - 1,
    };
    let mut j = vec![0u32; jlen];
    fn fill(
        j: &mut Vec<u32>,
        slot: usize,
        left: u32,
        system: System,
        q: u32,
        out: &mut Vec<QuantumNumbers>,
    ) {
        if slot == j.len() {
            let used = 2 * j.iter().sum::<u32>();
            let budget = q - used;
            match system {
                System::Parabolic => {
                    for n1 in 0..=budget {
                        out.push(QuantumNumbers::Parabolic {
                            n1,
                            n2: budget - n1,
                            j: j.clone(),
                        });
                    }
                }
                System::Spherical => {
                    out.push(QuantumNumbers::Spherical {
                        nr: budget,
                        j: j.clone(),
                    });
                }
            }
            return;
        }
        for v in 0..=left {
            j[slot] = v;
            fill(j, slot + 1, left - v, system, q, out);
            j[slot] = 0;
        }
    }
    fill(&mut j, 0, q / 2, system, q, &mut out);
    out.sort();
    (out.len(), out)
}

/// All states with level `q <= qmax`.
pub fn states_up_to(params: &ModelParams, system: System, qmax: u32) -> Vec<QuantumNumbers> {
    (0..=qmax)
        .flat_map(|q| degeneracy(params, system, q).1)
        .collect()
}
