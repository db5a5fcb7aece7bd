//! Measure files: JSON descriptions of a base weight plus point masses.
//!
//! ```json
//! {
//!   "family": "legendre",
//!   "normalized": false,
//!   "masses": [{ "a": "1/2", "M": 1 }],
//!   "moving": 0,
//!   "arithmetic": "float",
//!   "precision_bits": 106
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings (`"p/q"`, decimals); floats are read
//! through their shortest decimal form. Explicit bases add `"moments"` and an
//! optional `"support": {"lower": .., "upper": ..}`.

use num::BigRational;
use opz_core::scalar::{format_rational, parse_rational, rational_from_f64};
use opz_core::{Arithmetic, Family, MomentFunctional, PerturbedMeasure, PointMass, Support};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Text(String),
    Float(f64),
}

impl Number {
    fn to_rational(&self, field: &str) -> Result<BigRational, CliError> {
        let parsed = match self {
            Number::Text(s) => parse_rational(s),
            Number::Float(x) => rational_from_f64(*x),
        };
        parsed.map_err(|e| CliError::Config(format!("field \"{field}\": {e}")))
    }

    fn exact(q: &BigRational) -> Self {
        Number::Text(format_rational(q))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassSpec {
    pub a: Number,
    #[serde(rename = "M")]
    pub mass: Number,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Number>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub family: String,
    #[serde(default)]
    pub normalized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<SupportSpec>,
    pub masses: Vec<MassSpec>,
    #[serde(default)]
    pub moving: Option<usize>,
    #[serde(default = "default_mode")]
    pub arithmetic: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
}

fn default_mode() -> Mode {
    Mode::Float
}

pub fn parse_family(name: &str) -> Result<Family, CliError> {
    match name {
        "legendre" => Ok(Family::Legendre),
        "chebyshev1" => Ok(Family::ChebyshevFirstKind),
        "laguerre" => Ok(Family::Laguerre),
        "hermite" => Ok(Family::Hermite),
        "explicit" => Ok(Family::ExplicitMoments),
        other => Err(CliError::Config(format!(
            "field \"family\": unknown family {other:?} (legendre, chebyshev1, laguerre, hermite, explicit)"
        ))),
    }
}

impl MeasureFile {
    /// Legendre weight with a unit mass at the origin, marked as moving.
    pub fn default_config() -> Self {
        MeasureFile {
            family: "legendre".into(),
            normalized: false,
            moments: None,
            support: None,
            masses: vec![MassSpec {
                a: Number::Text("0".into()),
                mass: Number::Text("1".into()),
            }],
            moving: Some(0),
            arithmetic: Mode::Float,
            precision_bits: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("measure file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("measure file serializes");
        s.push('\n');
        s
    }

    pub fn arithmetic(&self) -> Result<Arithmetic, CliError> {
        match (self.arithmetic, self.precision_bits) {
            (Mode::Exact, None) => Ok(Arithmetic::ExactRational),
            (Mode::Exact, Some(_)) => Err(CliError::Config(
                "field \"precision_bits\": only valid with \"arithmetic\": \"float\"".into(),
            )),
            (Mode::Float, bits) => Ok(Arithmetic::Float(bits.unwrap_or(106)).validate()?),
        }
    }

    pub fn build(&self) -> Result<PerturbedMeasure, CliError> {
        let family = parse_family(&self.family)?;
        let arithmetic = self.arithmetic()?;
        let base = if family == Family::ExplicitMoments {
            let moments = self
                .moments
                .as_ref()
                .ok_or_else(|| CliError::Config("field \"moments\": required for the explicit family".into()))?
                .iter()
                .map(|m| m.to_rational("moments"))
                .collect::<Result<Vec<_>, _>>()?;
            let support = match &self.support {
                None => Support::real_line(),
                Some(s) => Support::new(
                    s.lower.as_ref().map(|x| x.to_rational("support.lower")).transpose()?,
                    s.upper.as_ref().map(|x| x.to_rational("support.upper")).transpose()?,
                ),
            };
            MomentFunctional::explicit(moments, support, arithmetic)?
        } else {
            if self.moments.is_some() || self.support.is_some() {
                return Err(CliError::Config(
                    "fields \"moments\" and \"support\" apply only to the explicit family".into(),
                ));
            }
            MomentFunctional::classical(family, self.normalized, arithmetic)?
        };
        let masses = self
            .masses
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let a = m.a.to_rational(&format!("masses[{i}].a"))?;
                let mass = m.mass.to_rational(&format!("masses[{i}].M"))?;
                PointMass::new(a, mass).map_err(|e| CliError::Config(format!("field \"masses[{i}].M\": {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PerturbedMeasure::new(base, masses, self.moving)?)
    }

    /// Canonical file for a measure: exact strings throughout, moving mass
    /// last.
    pub fn from_measure(m: &PerturbedMeasure) -> Self {
        let base = m.base();
        let explicit = base.family() == Family::ExplicitMoments;
        let spec = |p: &PointMass| MassSpec {
            a: Number::exact(p.location()),
            mass: Number::exact(p.mass()),
        };
        let mut masses: Vec<MassSpec> = m.fixed_masses().iter().map(spec).collect();
        let moving = m.moving_mass().map(|p| {
            masses.push(spec(p));
            masses.len() - 1
        });
        let (arithmetic, precision_bits) = match base.arithmetic() {
            Arithmetic::ExactRational => (Mode::Exact, None),
            Arithmetic::Float(bits) => (Mode::Float, Some(bits)),
        };
        MeasureFile {
            family: base.family().name().into(),
            normalized: base.normalized(),
            moments: explicit.then(|| base.explicit_moments().iter().map(Number::exact).collect()),
            support: explicit.then(|| SupportSpec {
                lower: base.support().lower.as_ref().map(Number::exact),
                upper: base.support().upper.as_ref().map(Number::exact),
            }),
            masses,
            moving,
            arithmetic,
            precision_bits,
        }
    }
}
