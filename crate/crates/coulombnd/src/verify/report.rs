//! Check specifications and machine-readable reports.
//!
//! Reports serialize to JSON with a stable field order (struct declaration
//! order). Given equal seeds two runs produce identical reports except for
//! `wall_ms`, which is excluded from the reproducibility contract;
//! [`SuiteReport::canonicalize`] zeroes it for golden-file comparison.

use serde::{Deserialize, Serialize};

use crate::model::System;
use crate::rational::Rational;

/// Serialize rationals as `num/den` strings.
mod rational_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        crate::rational::parse_rational(&raw).map_err(D::Error::custom)
    }
}

mod rational_vec {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(|q| q.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| crate::rational::parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    ExactEigen,
    NumericEigen,
    CommutatorZero,
    CommutatorNonzero,
    CommutatorIdentity,
    Tridiagonal,
    SpectrumSet,
    Degeneracy,
    GeneratorDecomposition,
    Mutation,
}

impl CheckKind {
    /// Exact kinds must run with tolerance zero; a nonzero tolerance on an
    /// exact kind is reported as a build error, never silently accepted.
    pub fn is_exact(self) -> bool {
        matches!(
            self,
            CheckKind::ExactEigen
                | CheckKind::Tridiagonal
                | CheckKind::SpectrumSet
                | CheckKind::Degeneracy
                | CheckKind::GeneratorDecomposition
                | CheckKind::Mutation
        )
    }
}

/// Scope echo carried inside every spec and report.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CheckParams {
    pub n: usize,
    #[serde(with = "rational_string")]
    pub gamma: Rational,
    #[serde(with = "rational_vec")]
    pub p: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub system: Option<System>,
    pub qmax: u32,
    pub points: u32,
    /// Kind-specific selector (commutator family, mutation target, ...).
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CheckSpec {
    pub name: String,
    pub kind: CheckKind,
    pub params: CheckParams,
    pub seed: u64,
    pub tolerance: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: CheckKind,
    pub params: CheckParams,
    pub seed: u64,
    pub tolerance: f64,
    pub status: CheckStatus,
    pub worst_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub wall_ms: u64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    pub fn from_checks(mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let summary = SuiteSummary {
            total: checks.len(),
            pass: checks.iter().filter(|c| c.status == CheckStatus::Pass).count(),
            fail: checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
            error: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Error)
                .count(),
        };
        SuiteReport { checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    /// Zeroes wall-clock fields; everything left is seed-determined.
    pub fn canonicalize(&mut self) {
        for c in &mut self.checks {
            c.wall_ms = 0;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    #[test]
    fn report_json_roundtrip() {
        let spec = CheckSpec {
            name: "eigen/exact-parabolic".into(),
            kind: CheckKind::ExactEigen,
            params: CheckParams {
                n: 3,
                gamma: rat(3, 2),
                p: vec![rat(1, 2), rint(3)],
                system: Some(System::Parabolic),
                qmax: 4,
                points: 0,
                detail: String::new(),
            },
            seed: 42,
            tolerance: 0.0,
        };
        let report = CheckReport {
            name: spec.name.clone(),
            kind: spec.kind,
            params: spec.params.clone(),
            seed: spec.seed,
            tolerance: spec.tolerance,
            status: CheckStatus::Pass,
            worst_residual: 0.0,
            witness: None,
            wall_ms: 17,
        };
        let suite = SuiteReport::from_checks(vec![report]);
        let json = suite.to_json();
        let back: SuiteReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, suite);
        assert!(json.contains("\"gamma\": \"3/2\""));
        assert!(json.contains("\"kind\": \"exact-eigen\""));
    }

    #[test]
    fn canonicalization_is_wall_clock_only() {
        let mk = |wall| CheckReport {
            name: "x".into(),
            kind: CheckKind::Degeneracy,
            params: CheckParams {
                n: 3,
                gamma: rint(1),
                p: vec![rint(0), rint(0)],
                system: None,
                qmax: 2,
                points: 0,
                detail: String::new(),
            },
            seed: 1,
            tolerance: 0.0,
            status: CheckStatus::Pass,
            worst_residual: 0.0,
            witness: None,
            wall_ms: wall,
        };
        let mut a = SuiteReport::from_checks(vec![mk(5)]);
        let mut b = SuiteReport::from_checks(vec![mk(9)]);
        a.canonicalize();
        b.canonicalize();
        assert_eq!(a, b);
    }
}
