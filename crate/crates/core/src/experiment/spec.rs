use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::channel::{MultiUserConfig, MultiUserMode, TrialBudget};
use crate::code::{CodeSpec, DictionarySpec, SchemeKind};
use crate::decoding::Decoder;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DictFamily {
    Gold,
    Mub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimMode {
    #[default]
    Single,
    Mac,
    Broadcast,
    Interference,
}

/// One decoder name or several run on shared trials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DecoderList {
    One(String),
    Many(Vec<String>),
}

/// Eb/N0 points in dB: an inclusive `start..=stop` range or an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sweep {
    Range { start: f64, stop: f64, step: f64 },
    Points(Vec<f64>),
}

impl Sweep {
    pub fn points(&self) -> Result<Vec<f64>> {
        let pts = match *self {
            Sweep::Points(ref p) => p.clone(),
            Sweep::Range { start, stop, step } => {
                if !step.is_finite() || step <= 0.0 || !start.is_finite() || !stop.is_finite() || stop < start {
                    return Err(Error::config(format!(
                        "sweep needs finite start <= stop and step > 0; got {start}..{stop} step {step}"
                    )));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| start + i as f64 * step).collect()
            }
        };
        if pts.is_empty() {
            return Err(Error::config("sweep has no points"));
        }
        if pts.iter().any(|p| p.is_nan()) {
            return Err(Error::config("sweep points must be numbers"));
        }
        Ok(pts)
    }
}

fn default_decoder() -> DecoderList {
    DecoderList::One("mad".into())
}
fn default_max_trials() -> u64 {
    TrialBudget::default().max_trials
}
fn default_max_errors() -> u64 {
    TrialBudget::default().max_errors
}
fn default_seed() -> u64 {
    1
}
fn is_false(b: &bool) -> bool {
    !b
}

/// A complete experiment as one flat JSON document.
///
/// ```json
/// {"dict": "mub", "n": 6, "scheme": "sse", "K": 6, "M": 4, "offset": true,
///  "decoder": "pmad", "T": 16, "sweep": {"start": 2, "stop": 6, "step": 1}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub dict: DictFamily,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_column: Option<usize>,
    pub scheme: SchemeKind,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub offset: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    #[serde(default = "default_decoder")]
    pub decoder: DecoderList,
    /// Paths for `pmad` entries that do not name a count.
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub sweep: Sweep,
    #[serde(default = "default_max_trials")]
    pub max_trials: u64,
    #[serde(default = "default_max_errors")]
    pub max_errors: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub mode: SimMode,
    /// Sub-blocks of each user; one each by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub users: Option<Vec<Vec<usize>>>,
    /// Interference gains `h[i][j]` from transmitter `j` to receiver `i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gains: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub common_noise: bool,
    /// Output directory; not part of the experiment's identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

/// Parses and validates an experiment document.
pub fn parse_spec(text: &str) -> Result<ExperimentSpec> {
    let spec: ExperimentSpec =
        serde_json::from_str(text).map_err(|e| Error::config(format!("experiment spec: {e}")))?;
    spec.validate()?;
    Ok(spec)
}

impl ExperimentSpec {
    pub fn code_spec(&self) -> CodeSpec {
        CodeSpec {
            dict: match self.dict {
                DictFamily::Gold => DictionarySpec::Gold { n: self.n },
                DictFamily::Mub => DictionarySpec::Mub { n: self.n },
            },
            columns: self.columns,
            identity_column: self.identity_column,
            scheme: self.scheme,
            k: self.k,
            m: self.m,
            offset: self.offset,
            partition: self.partition.clone(),
        }
    }

    pub fn decoders(&self) -> Result<Vec<Decoder>> {
        let names = match &self.decoder {
            DecoderList::One(s) => vec![s.clone()],
            DecoderList::Many(v) => v.clone(),
        };
        if names.is_empty() {
            return Err(Error::config("no decoder given"));
        }
        names
            .iter()
            .map(|s| {
                let d: Decoder = s.parse()?;
                Ok(match (d, s.eq_ignore_ascii_case("pmad"), self.t) {
                    (Decoder::Pmad { .. }, true, Some(t)) => Decoder::Pmad { paths: t },
                    _ => d,
                })
            })
            .collect()
    }

    pub fn budget(&self) -> TrialBudget {
        TrialBudget {
            max_trials: self.max_trials,
            max_errors: self.max_errors,
        }
    }

    /// Multi-user layout, or `None` for single-user runs.
    pub fn multiuser(&self) -> Option<MultiUserConfig> {
        let mode = match self.mode {
            SimMode::Single => return None,
            SimMode::Mac => MultiUserMode::Mac,
            SimMode::Broadcast => MultiUserMode::Broadcast,
            SimMode::Interference => MultiUserMode::Interference {
                gains: self.gains.clone().unwrap_or_default(),
            },
        };
        Some(MultiUserConfig {
            users: self.users.clone().unwrap_or_else(|| (0..self.k).map(|b| vec![b]).collect()),
            mode,
            common_noise: self.common_noise,
        })
    }

    /// Checks everything that does not require building the dictionary.
    pub fn validate(&self) -> Result<()> {
        self.code_spec().validate()?;
        let decoders = self.decoders()?;
        if self.t == Some(0) {
            return Err(Error::config("T must be at least 1"));
        }
        self.sweep.points()?;
        if self.max_trials == 0 {
            return Err(Error::config("max_trials must be at least 1"));
        }
        if self.max_errors == 0 {
            return Err(Error::config("max_errors must be at least 1"));
        }
        if self.mode != SimMode::Single {
            if self.scheme != SchemeKind::Sse {
                return Err(Error::config("multi-user modes need the sse scheme"));
            }
            if decoders.len() != 1 {
                return Err(Error::config("multi-user modes take exactly one decoder"));
            }
        }
        if (self.mode == SimMode::Interference) != self.gains.is_some() {
            return Err(Error::config("gains are given exactly when mode is interference"));
        }
        if self.mode == SimMode::Single && (self.users.is_some() || self.common_noise) {
            return Err(Error::config("users and common_noise apply to multi-user modes only"));
        }
        Ok(())
    }

    /// Canonical JSON: keys sorted, defaults filled, output path dropped.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("spec serializes");
        if let Some(map) = v.as_object_mut() {
            map.remove("output");
        }
        // serde_json's default map is ordered by key.
        serde_json::to_string(&v).expect("value serializes")
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical_json().as_bytes());
        hex::encode(&hash[..8])
    }
}
