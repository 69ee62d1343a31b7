//! Serializable run reports. Field order is the struct order and is stable.

use serde::Serialize;

use crate::conditions::{B1Branch, BoundRoute, ClassReport, SigmaCondition};
use crate::convolution::ConvolutionReport;
use crate::document::MapDocument;
use crate::extension::AnalyticBounds;
use crate::verify::{GridRegion, VerificationReport, PRNG_NAME};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub input: MapDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input2: Option<MapDocument>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub class_reports: Vec<ClassEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<BoundsEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convolution: Option<ConvolutionEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, input: MapDocument) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            input,
            input2: None,
            class_reports: Vec::new(),
            sigma: None,
            extension: None,
            verification: None,
            convolution: None,
            violations: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub value: f64,
    pub k1: f64,
    pub k2: f64,
    pub route: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassEntry {
    pub profile: String,
    pub weighted_sum: f64,
    pub member: bool,
    pub b1_branch: &'static str,
    pub minimal_k: Option<f64>,
    pub dilatation_bound: Option<BoundEntry>,
}

impl From<&ClassReport<f64>> for ClassEntry {
    fn from(r: &ClassReport<f64>) -> Self {
        ClassEntry {
            profile: r.profile.clone(),
            weighted_sum: r.weighted_sum,
            member: r.member,
            b1_branch: match r.b1_branch {
                B1Branch::B1Zero => "b1_zero",
                B1Branch::B1Nonzero => "b1_nonzero",
            },
            minimal_k: r.minimal_k,
            dilatation_bound: r.dilatation_bound.map(|b| BoundEntry {
                value: b.value,
                k1: b.k1,
                k2: b.k2,
                route: match b.route {
                    BoundRoute::Cond1 => "cond1",
                    BoundRoute::Cond2 => "cond2",
                },
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaEntry {
    pub minimal_k: f64,
    pub member: bool,
}

impl From<&SigmaCondition<f64>> for SigmaEntry {
    fn from(s: &SigmaCondition<f64>) -> Self {
        SigmaEntry {
            minimal_k: s.minimal_k,
            member: s.member_of.is_some(),
        }
    }
}

/// `null` marks a bound that is unavailable because its denominator degenerates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsEntry {
    pub inner_bound: Option<f64>,
    pub outer_bound: Option<f64>,
    pub overall_k: Option<f64>,
}

impl From<AnalyticBounds<f64>> for BoundsEntry {
    fn from(b: AnalyticBounds<f64>) -> Self {
        BoundsEntry {
            inner_bound: b.inner,
            outer_bound: b.outer,
            overall_k: b.overall(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridEntry {
    pub region: &'static str,
    pub radii: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub angles_per_circle: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiLipschitzEntry {
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub pair_count: usize,
    /// Constant `k` of the sandwich `[(1-k)|alpha|, (1+k)|alpha|]`.
    pub k: f64,
    pub lower_limit: f64,
    pub upper_limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationEntry {
    pub grid: GridEntry,
    pub seed: u64,
    pub prng: &'static str,
    pub sup_mu: f64,
    pub argmax_point: [f64; 2],
    pub sup_mu_inner: Option<f64>,
    pub sup_mu_outer: Option<f64>,
    pub skipped_points: usize,
    pub asymptotic_mu: f64,
    pub bilipschitz: BiLipschitzEntry,
    pub min_jacobian: f64,
    pub max_starlike_angle: Option<f64>,
    pub starlike_angle_limit: Option<f64>,
}

impl VerificationEntry {
    pub fn new(v: &VerificationReport<f64>, k: f64, leading_modulus: f64, starlike_angle_limit: Option<f64>) -> Self {
        let radii = v.grid.radii();
        VerificationEntry {
            grid: GridEntry {
                region: match v.grid.region() {
                    GridRegion::Inner => "inner",
                    GridRegion::Outer => "outer",
                    GridRegion::Both => "both",
                },
                radii: radii.len(),
                r_min: radii[0],
                r_max: radii[radii.len() - 1],
                angles_per_circle: v.grid.angles_per_circle(),
            },
            seed: v.seed,
            prng: PRNG_NAME,
            sup_mu: v.sup_mu,
            argmax_point: [v.argmax_point.re, v.argmax_point.im],
            sup_mu_inner: v.sup_mu_inner,
            sup_mu_outer: v.sup_mu_outer,
            skipped_points: v.skipped_points,
            asymptotic_mu: v.asymptotic_mu,
            bilipschitz: BiLipschitzEntry {
                min_ratio: v.bilipschitz.min_ratio,
                max_ratio: v.bilipschitz.max_ratio,
                pair_count: v.bilipschitz.pair_count,
                k,
                lower_limit: (1.0 - k) * leading_modulus,
                upper_limit: (1.0 + k) * leading_modulus,
            },
            min_jacobian: v.min_jacobian,
            max_starlike_angle: v.max_starlike_angle,
            starlike_angle_limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvolutionEntry {
    pub product: MapDocument,
    pub k1: f64,
    pub k2: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub bound: f64,
    pub within_bound: bool,
}

impl From<&ConvolutionReport<f64>> for ConvolutionEntry {
    fn from(r: &ConvolutionReport<f64>) -> Self {
        ConvolutionEntry {
            product: MapDocument::from_exterior(&r.product),
            k1: r.k1,
            k2: r.k2,
            m: r.m,
            bound: r.bound,
            within_bound: r.within_bound,
        }
    }
}
