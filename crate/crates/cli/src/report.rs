//! Machine-readable results.

use std::collections::BTreeMap;
use std::time::Duration;

use bogomolov::zlattice::AbelianInvariants;
use serde::Serialize;

use crate::source::GroupDescriptor;

pub const TAG_EXACT: &str = "exact";
pub const TAG_LOWER_BOUND: &str = "lower-bound";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    Class2,
    UpperBoundCertificate,
    CentralProductFormula,
    TransgressionLowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Inconclusive,
}

/// One computed result. `factors` is absent exactly when the verdict is
/// inconclusive; the non-trivial upper bound is then reported as `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub group: GroupDescriptor,
    pub method: Method,
    pub verdict: Verdict,
    pub factors: Option<AbelianInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<AbelianInvariants>,
    pub tag: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
    pub wall_clock_ms: Option<u64>,
    pub versions: BTreeMap<String, String>,
}

pub fn versions() -> BTreeMap<String, String> {
    BTreeMap::from([
        ("bogomolov".to_string(), bogomolov::VERSION.to_string()),
        ("b0-cli".to_string(), env!("CARGO_PKG_VERSION").to_string()),
    ])
}

impl Report {
    /// An exact or lower-bound result.
    pub fn computed(
        group: GroupDescriptor,
        method: Method,
        factors: AbelianInvariants,
        tag: &str,
    ) -> Self {
        let verdict = if factors.is_trivial() {
            Verdict::Trivial
        } else {
            Verdict::Nontrivial
        };
        Self {
            group,
            method,
            verdict,
            factors: Some(factors),
            bound: None,
            tag: tag.to_string(),
            details: BTreeMap::new(),
            wall_clock_ms: None,
            versions: versions(),
        }
    }

    /// A sound upper bound: trivial bounds are results, others prove nothing.
    pub fn upper_bound(group: GroupDescriptor, bound: AbelianInvariants, tag: &str) -> Self {
        let trivial = bound.is_trivial();
        Self {
            group,
            method: Method::UpperBoundCertificate,
            verdict: if trivial {
                Verdict::Trivial
            } else {
                Verdict::Inconclusive
            },
            factors: trivial.then(AbelianInvariants::trivial),
            bound: (!trivial).then_some(bound),
            tag: tag.to_string(),
            details: BTreeMap::new(),
            wall_clock_ms: None,
            versions: versions(),
        }
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable detail"),
        );
        self
    }

    pub fn timed(mut self, elapsed: Option<Duration>) -> Self {
        self.wall_clock_ms = elapsed.map(|d| d.as_millis() as u64);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
