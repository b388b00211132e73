//! Stable JSON shape for density results.
//!
//! Rationals travel as `"p/q"` strings and big counts as decimal strings, so
//! reports survive any JSON parser without precision loss.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::density::{format_ratio, parse_ratio, DensityKind, DensitySequences, RationalDensity, SubgroupDensity};
use crate::stallings::SubgroupIndex;

/// Exact rational serialized as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(pub BigRational);

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ratio(&self.0))
    }
}

impl FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Ratio, String> {
        parse_ratio(s).map(Ratio).ok_or_else(|| format!("not a rational: {s:?}"))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Ratio, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Arbitrary-size count serialized as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Count, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map(Count).map_err(|_| serde::de::Error::custom(format!("not a count: {text:?}")))
    }
}

pub fn counts(values: &[BigUint]) -> Vec<Count> {
    values.iter().cloned().map(Count).collect()
}

fn ratios(values: &[Option<BigRational>]) -> Vec<Option<Ratio>> {
    values.iter().map(|r| r.clone().map(Ratio)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Zero,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequencesReport {
    pub n_max: usize,
    pub counts: Vec<Count>,
    pub reference_counts: Vec<Count>,
    pub sphere_ratio: Vec<Option<Ratio>>,
    pub ball_ratio: Vec<Option<Ratio>>,
    pub cesaro_sphere: Vec<Option<Ratio>>,
    pub cesaro_ball: Vec<Option<Ratio>>,
}

impl From<&DensitySequences> for SequencesReport {
    fn from(s: &DensitySequences) -> SequencesReport {
        SequencesReport {
            n_max: s.n_max(),
            counts: counts(s.numerator.as_slice()),
            reference_counts: counts(s.denominator.as_slice()),
            sphere_ratio: ratios(&s.sphere_ratio),
            ball_ratio: ratios(&s.ball_ratio),
            cesaro_sphere: ratios(&s.cesaro_sphere),
            cesaro_ball: ratios(&s.cesaro_ball),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueTailReport {
    pub modulus: usize,
    pub residue: usize,
    pub sup: Ratio,
    pub inf: Ratio,
    pub stabilized: bool,
}

/// Finite-horizon tail summary for languages without closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailsReport {
    pub sphere_tail: Option<Ratio>,
    pub ball_tail: Option<Ratio>,
    pub residues: Vec<ResidueTailReport>,
}

impl From<&DensitySequences> for TailsReport {
    fn from(s: &DensitySequences) -> TailsReport {
        TailsReport {
            sphere_tail: s.sphere_tail().map(Ratio),
            ball_tail: s.ball_tail().map(Ratio),
            residues: s
                .tails()
                .into_iter()
                .map(|t| ResidueTailReport {
                    modulus: t.modulus,
                    residue: t.residue,
                    sup: Ratio(t.sup),
                    inf: Ratio(t.inf),
                    stabilized: t.stabilized,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<SubgroupIndex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converges: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere_sup: Option<Ratio>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere_inf: Option<Ratio>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball_sup: Option<Ratio>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball_inf: Option<Ratio>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub average: Option<Ratio>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weak: Option<Ratio>,
    pub sequences: SequencesReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tails: Option<TailsReport>,
}

impl DensityReport {
    fn with_kind(kind: &DensityKind, sequences: &DensitySequences) -> DensityReport {
        let (k, witness, cover) = match kind {
            DensityKind::Zero { witness } => (Kind::Zero, Some(witness.to_string()), None),
            DensityKind::Positive { cover } => {
                (Kind::Positive, None, Some(cover.iter().map(|p| (p.prefix.to_string(), p.suffix.to_string())).collect()))
            }
        };
        DensityReport {
            kind: k,
            witness,
            cover,
            index: None,
            converges: None,
            sphere_sup: None,
            sphere_inf: None,
            ball_sup: None,
            ball_inf: None,
            average: None,
            weak: None,
            sequences: sequences.into(),
            tails: None,
        }
    }
}

impl From<&SubgroupDensity> for DensityReport {
    fn from(d: &SubgroupDensity) -> DensityReport {
        let r = |x: &BigRational| Some(Ratio(x.clone()));
        DensityReport {
            index: Some(d.index),
            converges: Some(d.converges),
            sphere_sup: r(&d.sphere_sup),
            sphere_inf: r(&d.sphere_inf),
            ball_sup: r(&d.ball_sup),
            ball_inf: r(&d.ball_inf),
            average: r(&d.average),
            weak: r(&d.weak),
            ..DensityReport::with_kind(&d.kind, &d.sequences)
        }
    }
}

impl From<&RationalDensity> for DensityReport {
    fn from(d: &RationalDensity) -> DensityReport {
        DensityReport { tails: Some((&d.sequences).into()), ..DensityReport::with_kind(&d.kind, &d.sequences) }
    }
}
