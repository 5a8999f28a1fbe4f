//! Model parameters and quantum-number bookkeeping.

use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{rint, Rational};

use super::ModelError;

/// Coupling data: dimension `n`, Coulomb strength `gamma`, and the n-1
/// potential exponents `p_i`. The inverse-square strengths are derived as
/// `beta_i = p_i (p_i - 1) / 2` and never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct ModelParams {
    n: usize,
    gamma: Rational,
    p: Vec<Rational>,
}

impl ModelParams {
    pub fn new(n: usize, gamma: Rational, p: Vec<Rational>) -> Result<Self, ModelError> {
        if n < 2 {
            return Err(ModelError::Dimension { n, min: 2 });
        }
        if p.len() != n - 1 {
            return Err(ModelError::PLength {
                expected: n - 1,
                got: p.len(),
            });
        }
        Ok(ModelParams { n, gamma, p })
    }

    /// Pure Coulomb problem in dimension `n`.
    pub fn coulomb(n: usize, gamma: Rational) -> Self {
        ModelParams::new(n, gamma, vec![Rational::zero(); n - 1]).expect("n >= 2")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// `p_i`, 0-based (`i` in `0..n-1`).
    pub fn p(&self, i: usize) -> &Rational {
        &self.p[i]
    }

    pub fn p_all(&self) -> &[Rational] {
        &self.p
    }

    pub fn p_sum(&self) -> Rational {
        self.p.iter().sum()
    }

    /// `beta_i = p_i (p_i - 1) / 2`, 0-based.
    pub fn beta(&self, i: usize) -> Rational {
        &self.p[i] * (&self.p[i] - rint(1)) / rint(2)
    }

    /// True when every inverse-square term vanishes (each `p_i` is 0 or 1).
    pub fn is_coulomb(&self) -> bool {
        self.p.iter().all(|p| {
            let b = p * (p - rint(1));
            b.is_zero()
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Parabolic,
    Spherical,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Parabolic => write!(f, "parabolic"),
            System::Spherical => write!(f, "spherical"),
        }
    }
}

/// Bound-state labels. Parabolic states carry two Laguerre indices and n-2
/// Jacobi indices; spherical states carry one radial Laguerre index and n-1
/// Jacobi indices.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum QuantumNumbers {
    Parabolic { n1: u32, n2: u32, j: Vec<u32> },
    Spherical { nr: u32, j: Vec<u32> },
}

impl QuantumNumbers {
    pub fn system(&self) -> System {
        match self {
            QuantumNumbers::Parabolic { .. } => System::Parabolic,
            QuantumNumbers::Spherical { .. } => System::Spherical,
        }
    }

    /// The level `q`: Laguerre indices plus twice the Jacobi indices. All
    /// states of equal level share the principal denominator and the energy.
    pub fn level(&self) -> u32 {
        match self {
            QuantumNumbers::Parabolic { n1, n2, j } => n1 + n2 + 2 * j.iter().sum::<u32>(),
            QuantumNumbers::Spherical { nr, j } => nr + 2 * j.iter().sum::<u32>(),
        }
    }

    pub fn j(&self) -> &[u32] {
        match self {
            QuantumNumbers::Parabolic { j, .. } => j,
            QuantumNumbers::Spherical { j, .. } => j,
        }
    }

    pub fn validate(&self, n: usize) -> Result<(), ModelError> {
        let (need, got, what) = match self {
            QuantumNumbers::Parabolic { j, .. } => (n - 2, j.len(), "parabolic"),
            QuantumNumbers::Spherical { j, .. } => (n - 1, j.len(), "spherical"),
        };
        if need != got {
            return Err(ModelError::QnShape {
                n,
                detail: format!("{what} state needs {need} Jacobi indices, got {got}"),
            });
        }
        if matches!(self, QuantumNumbers::Parabolic { .. }) && n < 3 {
            return Err(ModelError::Dimension { n, min: 3 });
        }
        Ok(())
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumNumbers::Parabolic { n1, n2, j } => {
                let js: Vec<String> = j.iter().map(|v| v.to_string()).collect();
                write!(f, "({n1},{n2},[{}])", js.join(","))
            }
            QuantumNumbers::Spherical { nr, j } => {
                let js: Vec<String> = j.iter().map(|v| v.to_string()).collect();
                write!(f, "({nr},[{}])", js.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn p_length_is_enforced() {
        assert!(ModelParams::new(3, rint(1), vec![rint(0); 2]).is_ok());
        assert!(matches!(
            ModelParams::new(3, rint(1), vec![rint(0); 3]),
            Err(ModelError::PLength { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn beta_derivation() {
        let params = ModelParams::new(3, rint(2), vec![rint(2), rint(3)]).unwrap();
        assert_eq!(params.beta(0), rint(1));
        assert_eq!(params.beta(1), rint(3));
        assert!(!params.is_coulomb());
        let half = ModelParams::new(3, rint(1), vec![rat(1, 2), rint(0)]).unwrap();
        assert_eq!(half.beta(0), rat(-1, 8));
        assert!(ModelParams::new(4, rint(1), vec![rint(1), rint(0), rint(1)])
            .unwrap()
            .is_coulomb());
    }

    #[test]
    fn level_and_validation() {
        let qn = QuantumNumbers::Parabolic {
            n1: 1,
            n2: 0,
            j: vec![2],
        };
        assert_eq!(qn.level(), 5);
        assert!(qn.validate(3).is_ok());
        assert!(qn.validate(4).is_err());
        let sph = QuantumNumbers::Spherical { nr: 2, j: vec![1, 0] };
        assert_eq!(sph.level(), 4);
        assert!(sph.validate(3).is_ok());
        assert_eq!(sph.to_string(), "(2,[1,0])");
    }
}
