//! Flat `key = value` scenario files.
//!
//! ```text
//! # comment
//! mode = cluster
//! [cluster]
//! r_bar = 1e-8
//! ```
//!
//! Keys before any `[section]` header are resolved against the schema of the
//! selected mode. Values are checked line by line as soon as they are read, so
//! range errors are reported before schema errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use droplet_core::cluster::{heavy_mass, DEFAULT_BRACKET};
use droplet_core::constants;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Kinematics,
    Dispersion,
    Cluster,
    Sweep,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Kinematics => "kinematics",
            Mode::Dispersion => "dispersion",
            Mode::Cluster => "cluster",
            Mode::Sweep => "sweep",
        }
    }

    fn sections(self) -> &'static [Section] {
        match self {
            Mode::Kinematics => &[Section::Top, Section::Output, Section::Kinematics],
            Mode::Dispersion => &[Section::Top, Section::Output, Section::Dispersion],
            Mode::Cluster => &[Section::Top, Section::Output, Section::Cluster],
            Mode::Sweep => &[Section::Top, Section::Output, Section::Cluster, Section::Sweep],
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "kinematics" => Ok(Mode::Kinematics),
            "dispersion" => Ok(Mode::Dispersion),
            "cluster" => Ok(Mode::Cluster),
            "sweep" => Ok(Mode::Sweep),
            _ => Err(format!("unknown mode '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}', expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Top,
    Output,
    Kinematics,
    Dispersion,
    Cluster,
    Sweep,
}

impl Section {
    fn header(name: &str) -> Option<Section> {
        Some(match name {
            "output" => Section::Output,
            "kinematics" => Section::Kinematics,
            "dispersion" => Section::Dispersion,
            "cluster" => Section::Cluster,
            "sweep" => Section::Sweep,
            _ => return None,
        })
    }
}

/// A parsed config value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(u64),
    Real(f64),
    Text(String),
    Vector(Vec<f64>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Real(v) => write!(f, "{v:?}"),
            Value::Text(s) => f.write_str(s),
            Value::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
                f.write_str(&parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Positive,
    NonNegative,
    /// `(0, 1]`
    Fraction,
    Count { min: u64, max: u64 },
    Choice(&'static [&'static str]),
    Vector,
    Path,
    /// Name of a sweepable cluster key.
    SweepKey,
    Real,
}

#[derive(Debug, Clone, Copy)]
enum Fallback {
    Required,
    Optional,
    Fixed(f64),
    Count(u64),
    Text(&'static str),
    /// Computed from other keys once the whole file is read.
    Derived,
}

#[derive(Debug, Clone, Copy)]
struct KeySpec {
    section: Section,
    name: &'static str,
    unit: &'static str,
    kind: Kind,
    default: Fallback,
}

const fn key(section: Section, name: &'static str, unit: &'static str, kind: Kind, default: Fallback) -> KeySpec {
    KeySpec {
        section,
        name,
        unit,
        kind,
        default,
    }
}

/// Cluster keys that a sweep may vary.
pub const SWEEPABLE: &[&str] = &[
    "T",
    "r_bar",
    "delta_r",
    "omega",
    "m_eff",
    "N_total",
    "K_clusters",
    "mean_fill",
    "fugacity",
];

const MODES: &[&str] = &["kinematics", "dispersion", "cluster", "sweep"];
const FORMATS: &[&str] = &["csv", "json"];
const INERTON: &[&str] = &["zero", "isotropic", "nearest_neighbor"];
const SCALES: &[&str] = &["linear", "log"];

use Fallback as D;
use Kind as K;
use Section as S;

static KEYS: &[KeySpec] = &[
    key(S::Top, "mode", "", K::Choice(MODES), D::Required),
    key(S::Output, "out", "", K::Path, D::Optional),
    key(S::Output, "format", "", K::Choice(FORMATS), D::Text("csv")),
    // kinematics
    key(S::Kinematics, "mass", "kg", K::Positive, D::Derived),
    key(S::Kinematics, "v", "m/s", K::Positive, D::Required),
    key(S::Kinematics, "omega", "rad/s", K::Positive, D::Required),
    key(S::Kinematics, "omega_tilde", "rad/s", K::NonNegative, D::Fixed(0.0)),
    key(S::Kinematics, "periods", "1", K::Positive, D::Fixed(1.0)),
    key(S::Kinematics, "samples", "1", K::Count { min: 2, max: 10_000_000 }, D::Count(101)),
    // dispersion
    key(S::Dispersion, "dim", "1", K::Count { min: 1, max: 3 }, D::Count(1)),
    key(S::Dispersion, "mass", "kg", K::Positive, D::Required),
    key(S::Dispersion, "a", "m", K::Positive, D::Required),
    key(S::Dispersion, "coupling", "N/m", K::Positive, D::Required),
    key(S::Dispersion, "transverse_coupling", "N/m", K::NonNegative, D::Fixed(0.0)),
    key(S::Dispersion, "inerton", "", K::Choice(INERTON), D::Text("zero")),
    key(S::Dispersion, "inerton_strength", "N/m", K::Real, D::Fixed(0.0)),
    key(S::Dispersion, "k_start", "1/m", K::Vector, D::Derived),
    key(S::Dispersion, "k_end", "1/m", K::Vector, D::Derived),
    key(S::Dispersion, "n_k", "1", K::Count { min: 2, max: 10_000_000 }, D::Count(101)),
    // cluster
    key(S::Cluster, "T", "K", K::Positive, D::Required),
    key(S::Cluster, "r_bar", "m", K::Positive, D::Required),
    key(S::Cluster, "delta_r", "m", K::Positive, D::Required),
    key(S::Cluster, "omega", "rad/s", K::Positive, D::Required),
    key(S::Cluster, "m_eff", "kg", K::Positive, D::Derived),
    key(S::Cluster, "N_total", "1", K::Positive, D::Optional),
    key(S::Cluster, "K_clusters", "1", K::Positive, D::Fixed(1.0)),
    key(S::Cluster, "mean_fill", "1", K::Fraction, D::Fixed(0.5)),
    key(S::Cluster, "fugacity", "1", K::Positive, D::Fixed(1.0)),
    key(S::Cluster, "aleph_lo", "1", K::Positive, D::Fixed(DEFAULT_BRACKET.0)),
    key(S::Cluster, "aleph_hi", "1", K::Positive, D::Fixed(DEFAULT_BRACKET.1)),
    // sweep
    key(S::Sweep, "sweep_key", "", K::SweepKey, D::Required),
    key(S::Sweep, "sweep_start", "", K::Real, D::Required),
    key(S::Sweep, "sweep_stop", "", K::Real, D::Required),
    key(S::Sweep, "sweep_count", "1", K::Count { min: 2, max: 1_000_000 }, D::Required),
    key(S::Sweep, "sweep_scale", "", K::Choice(SCALES), D::Text("linear")),
];

/// Unit of a cluster key, for sweep column headers.
pub fn cluster_unit(name: &str) -> &'static str {
    KEYS.iter()
        .find(|k| k.section == S::Cluster && k.name == name)
        .map_or("", |k| k.unit)
}

fn parse_real(raw: &str) -> Result<f64, String> {
    let v: f64 = raw.parse().map_err(|_| format!("expected a real number, got '{raw}'"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("value must be finite, got '{raw}'"))
    }
}

fn parse_value(spec: &KeySpec, raw: &str) -> Result<Value, String> {
    let name = spec.name;
    match spec.kind {
        K::Positive => {
            let v = parse_real(raw)?;
            if v > 0.0 {
                Ok(Value::Real(v))
            } else {
                Err(format!("{name} must be positive (> 0), got {raw}"))
            }
        }
        K::NonNegative => {
            let v = parse_real(raw)?;
            if v >= 0.0 {
                Ok(Value::Real(v))
            } else {
                Err(format!("{name} must be non-negative (>= 0), got {raw}"))
            }
        }
        K::Fraction => {
            let v = parse_real(raw)?;
            if v > 0.0 && v <= 1.0 {
                Ok(Value::Real(v))
            } else {
                Err(format!("{name} must lie in (0, 1], got {raw}"))
            }
        }
        K::Real => parse_real(raw).map(Value::Real),
        K::Count { min, max } => {
            let v: u64 = raw
                .parse()
                .map_err(|_| format!("{name} must be an integer, got '{raw}'"))?;
            if (min..=max).contains(&v) {
                Ok(Value::Int(v))
            } else {
                Err(format!("{name} must lie in [{min}, {max}], got {v}"))
            }
        }
        K::Choice(options) => {
            if options.contains(&raw) {
                Ok(Value::Text(raw.to_string()))
            } else {
                Err(format!("{name} must be one of {}, got '{raw}'", options.join("|")))
            }
        }
        K::SweepKey => {
            if SWEEPABLE.contains(&raw) {
                Ok(Value::Text(raw.to_string()))
            } else {
                Err(format!("{name} must be one of {}, got '{raw}'", SWEEPABLE.join("|")))
            }
        }
        K::Vector => raw
            .split(',')
            .map(|part| parse_real(part.trim()))
            .collect::<Result<Vec<f64>, String>>()
            .map(Value::Vector),
        K::Path => {
            if raw.is_empty() {
                Err(format!("{name} must not be empty"))
            } else {
                Ok(Value::Text(raw.to_string()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub key: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl SweepAxis {
    /// Axis points; the last one is `stop` exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.stop;
                }
                let s = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * s,
                    Scale::Log => self.start * (self.stop / self.start).powf(s),
                }
            })
            .collect()
    }
}

/// A validated scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub mode: Mode,
    /// Every key of the mode schema that has a value, defaults included.
    pub values: BTreeMap<String, Value>,
    /// Keys whose values were filled in by defaults.
    pub defaults_applied: BTreeSet<String>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub sweep: Option<SweepAxis>,
}

impl ScenarioConfig {
    pub fn real(&self, name: &str) -> Option<f64> {
        match self.values.get(name) {
            Some(Value::Real(v)) => Some(*v),
            Some(Value::Int(v)) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn count(&self, name: &str) -> Option<usize> {
        match self.values.get(name) {
            Some(Value::Int(v)) => Some(*v as usize),
            _ => None,
        }
    }

    pub fn text(&self, name: &str) -> Option<&str> {
        match self.values.get(name) {
            Some(Value::Text(s)) => Some(s),
            _ => None,
        }
    }

    pub fn vector(&self, name: &str) -> Option<&[f64]> {
        match self.values.get(name) {
            Some(Value::Vector(v)) => Some(v),
            _ => None,
        }
    }
}

struct Line {
    number: usize,
    section: Section,
    key: String,
    value: Value,
}

/// Parses and validates a scenario file.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let mut section = Section::Top;
    let mut lines: Vec<Line> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let number = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| LabError::at(number, format!("malformed section header '{content}'")))?
                .trim();
            section = Section::header(name)
                .ok_or_else(|| LabError::at(number, format!("unknown section [{name}]")))?;
            continue;
        }
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| LabError::at(number, format!("expected 'key = value', got '{content}'")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(LabError::at(number, "missing key before '='"));
        }
        // Value checks do not depend on the mode, so run them now.
        let spec = KEYS
            .iter()
            .find(|s| s.name == k && (section == S::Top || s.section == section))
            .ok_or_else(|| match section {
                S::Top => LabError::at(number, format!("unknown key '{k}'")),
                _ => LabError::at(number, format!("unknown key '{k}' in section [{}]", section_name(section))),
            })?;
        let value = parse_value(spec, v).map_err(|m| LabError::at(number, m))?;
        if let Some(previous) = lines.iter().find(|l| l.key == k) {
            return Err(LabError::at(
                number,
                format!("duplicate key '{k}' (first set on line {})", previous.number),
            ));
        }
        lines.push(Line {
            number,
            section,
            key: k.to_string(),
            value,
        });
    }

    let mode: Mode = match lines.iter().find(|l| l.key == "mode") {
        Some(Line {
            value: Value::Text(m), ..
        }) => m.parse().map_err(LabError::config)?,
        _ => return Err(LabError::config("missing required key: mode")),
    };
    let allowed = mode.sections();

    let mut values = BTreeMap::new();
    let mut lines_by_key = BTreeMap::new();
    for line in &lines {
        let spec = KEYS.iter().find(|s| {
            s.name == line.key
                && allowed.contains(&s.section)
                && (line.section == S::Top || line.section == s.section)
        });
        if spec.is_none() {
            return Err(LabError::at(
                line.number,
                format!("key '{}' is not part of the {} schema", line.key, mode.as_str()),
            ));
        }
        values.insert(line.key.clone(), line.value.clone());
        lines_by_key.insert(line.key.clone(), line.number);
    }

    let swept = match values.get("sweep_key") {
        Some(Value::Text(k)) => Some(k.clone()),
        _ => None,
    };
    if let Some(k) = &swept {
        if let Some(line) = lines_by_key.get(k) {
            return Err(LabError::at(*line, format!("'{k}' is swept and must not also be set")));
        }
    }

    let mut defaults_applied = BTreeSet::new();
    for spec in KEYS.iter().filter(|s| allowed.contains(&s.section)) {
        if values.contains_key(spec.name) || swept.as_deref() == Some(spec.name) {
            continue;
        }
        let value = match spec.default {
            D::Required => return Err(LabError::config(format!("missing required key: {}", spec.name))),
            D::Optional | D::Derived => continue,
            D::Fixed(v) => Value::Real(v),
            D::Count(v) => Value::Int(v),
            D::Text(s) => Value::Text(s.to_string()),
        };
        values.insert(spec.name.to_string(), value);
        defaults_applied.insert(spec.name.to_string());
    }
    apply_derived(mode, swept.as_deref(), &mut values, &mut defaults_applied)?;

    let sweep = match swept {
        Some(key) => {
            let axis = SweepAxis {
                start: real(&values, "sweep_start"),
                stop: real(&values, "sweep_stop"),
                count: match values.get("sweep_count") {
                    Some(Value::Int(n)) => *n as usize,
                    _ => unreachable!("sweep_count is required"),
                },
                scale: match values.get("sweep_scale") {
                    Some(Value::Text(s)) if s == "log" => Scale::Log,
                    _ => Scale::Linear,
                },
                key,
            };
            if axis.scale == Scale::Log && !(axis.start > 0.0 && axis.stop > 0.0) {
                let line = lines_by_key.get("sweep_scale").copied();
                return Err(LabError::Config {
                    line,
                    message: "a log sweep needs positive sweep_start and sweep_stop".into(),
                });
            }
            Some(axis)
        }
        None => None,
    };

    let out = match values.get("out") {
        Some(Value::Text(p)) => Some(PathBuf::from(p)),
        _ => None,
    };
    let format = match values.get("format") {
        Some(Value::Text(f)) => f.parse().map_err(LabError::config)?,
        _ => Format::Csv,
    };

    Ok(ScenarioConfig {
        mode,
        values,
        defaults_applied,
        out,
        format,
        sweep,
    })
}

fn real(values: &BTreeMap<String, Value>, name: &str) -> f64 {
    match values.get(name) {
        Some(Value::Real(v)) => *v,
        Some(Value::Int(v)) => *v as f64,
        _ => f64::NAN,
    }
}

/// Defaults that depend on other keys.
fn apply_derived(
    mode: Mode,
    swept: Option<&str>,
    values: &mut BTreeMap<String, Value>,
    applied: &mut BTreeSet<String>,
) -> Result<()> {
    fn set(values: &mut BTreeMap<String, Value>, applied: &mut BTreeSet<String>, name: &str, value: Value) {
        if !values.contains_key(name) {
            values.insert(name.to_string(), value);
            applied.insert(name.to_string());
        }
    }
    match mode {
        Mode::Kinematics => set(values, applied, "mass", Value::Real(constants().m0)),
        Mode::Cluster | Mode::Sweep => {
            if values.contains_key("m_eff") {
                return Ok(());
            }
            if matches!(swept, Some("omega" | "delta_r")) {
                // Recomputed at every sweep point.
                set(values, applied, "m_eff", Value::Text(HEAVY_MASS_TAG.to_string()));
            } else {
                let m = heavy_mass(real(values, "omega"), real(values, "delta_r"))
                    .map_err(LabError::model("default m_eff"))?;
                set(values, applied, "m_eff", Value::Real(m.m_star));
            }
        }
        Mode::Dispersion => {
            let dim = match values.get("dim") {
                Some(Value::Int(d)) => *d as usize,
                _ => 1,
            };
            let a = real(values, "a");
            for name in ["k_start", "k_end"] {
                if let Some(Value::Vector(v)) = values.get(name) {
                    if v.len() != dim {
                        return Err(LabError::config(format!(
                            "{name} has {} components but dim = {dim}",
                            v.len()
                        )));
                    }
                }
            }
            set(values, applied, "k_start", Value::Vector(vec![0.0; dim]));
            let mut end = vec![0.0; dim];
            end[0] = std::f64::consts::PI / a;
            set(values, applied, "k_end", Value::Vector(end));
        }
    }
    Ok(())
}

/// Echoed in place of `m_eff` when the heavy mass changes along a sweep.
pub const HEAVY_MASS_TAG: &str = "heavy: 2*hbar/(omega*delta_r^2)";

fn section_name(s: Section) -> &'static str {
    match s {
        S::Top => "",
        S::Output => "output",
        S::Kinematics => "kinematics",
        S::Dispersion => "dispersion",
        S::Cluster => "cluster",
        S::Sweep => "sweep",
    }
}

/// Key table of one mode: `(section, key, unit, default)` for documentation.
pub fn schema(mode: Mode) -> Vec<(&'static str, &'static str, &'static str, String)> {
    KEYS.iter()
        .filter(|s| mode.sections().contains(&s.section))
        .map(|s| {
            let default = match s.default {
                D::Required => "required".to_string(),
                D::Optional => "optional".to_string(),
                D::Derived => "derived".to_string(),
                D::Fixed(v) => format!("{v:?}"),
                D::Count(v) => v.to_string(),
                D::Text(t) => t.to_string(),
            };
            (section_name(s.section), s.name, s.unit, default)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cluster_example() {
        let c = parse_config("mode = cluster\nr_bar = 1e-8\nomega = 1e6\ndelta_r = 1e-9\nT = 300").unwrap();
        assert_eq!(c.mode, Mode::Cluster);
        assert_eq!(c.real("r_bar"), Some(1e-8));
        assert_eq!(c.real("mean_fill"), Some(0.5));
        assert_eq!(c.real("fugacity"), Some(1.0));
        assert!(c.defaults_applied.contains("m_eff"));
        assert!(c.defaults_applied.contains("aleph_hi"));
        assert!(!c.values.contains_key("N_total"));
    }

    #[test]
    fn empty_text_needs_mode() {
        let err = parse_config("").unwrap_err();
        assert_eq!(err.to_string(), "missing required key: mode");
    }

    #[test]
    fn negative_omega_names_constraint() {
        let err = parse_config("omega = -1").unwrap_err().to_string();
        assert!(err.contains("line 1") && err.contains("positive"), "{err}");
    }

    #[test]
    fn unknown_and_misplaced_keys() {
        let err = parse_config("mode = cluster\nfoo = 1").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("unknown key 'foo'"), "{err}");
        let err = parse_config("mode = cluster\nv = 1").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("cluster schema"), "{err}");
        let err = parse_config("mode = cluster\n[dispersion]\nomega = 1").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let err = parse_config("[nope]").unwrap_err().to_string();
        assert!(err.contains("unknown section"), "{err}");
    }

    #[test]
    fn sections_and_comments() {
        let text = "# scenario\nmode = kinematics  # inline\n[kinematics]\nv = 1e5\nomega = 1e12\n[output]\nformat = json\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.real("mass"), Some(constants().m0));
        assert_eq!(c.count("samples"), Some(101));
    }

    #[test]
    fn duplicates_and_types() {
        let err = parse_config("mode = cluster\nT = 1\nT = 2").unwrap_err().to_string();
        assert!(err.contains("line 3") && err.contains("duplicate"), "{err}");
        let err = parse_config("mode = kinematics\nsamples = 2.5").unwrap_err().to_string();
        assert!(err.contains("integer"), "{err}");
        let err = parse_config("mode = kinematics\nv = abc").unwrap_err().to_string();
        assert!(err.contains("real number"), "{err}");
    }

    #[test]
    fn missing_required_key() {
        let err = parse_config("mode = cluster\nT = 300").unwrap_err().to_string();
        assert!(err.contains("missing required key"), "{err}");
    }

    #[test]
    fn sweep_axis() {
        let text = "mode = sweep\nT = 300\nr_bar = 1e-8\ndelta_r = 1e-9\n[sweep]\nsweep_key = omega\nsweep_start = 1e4\nsweep_stop = 1e8\nsweep_count = 5\nsweep_scale = log\n";
        let c = parse_config(text).unwrap();
        let axis = c.sweep.clone().unwrap();
        let pts = axis.points();
        assert_eq!(pts.len(), 5);
        assert_eq!(pts[0], 1e4);
        assert_eq!(pts[4], 1e8);
        assert!((pts[2] - 1e6).abs() / 1e6 < 1e-12);
        assert_eq!(c.text("m_eff"), Some(HEAVY_MASS_TAG));
        let err = parse_config(&text.replace("sweep_count = 5", "sweep_count = 1")).unwrap_err();
        assert!(err.to_string().contains("sweep_count"));
        let err = parse_config(&text.replace("[sweep]\n", "omega = 1e6\n[sweep]\n")).unwrap_err();
        assert!(err.to_string().contains("swept"));
    }

    #[test]
    fn dispersion_defaults() {
        let c = parse_config("mode = dispersion\nmass = 1\na = 2\ncoupling = 3\ndim = 2").unwrap();
        assert_eq!(c.vector("k_start"), Some(&[0.0, 0.0][..]));
        assert_eq!(c.vector("k_end"), Some(&[std::f64::consts::PI / 2.0, 0.0][..]));
        let err = parse_config("mode = dispersion\nmass = 1\na = 2\ncoupling = 3\nk_end = 1, 2").unwrap_err();
        assert!(err.to_string().contains("dim"));
    }
}
