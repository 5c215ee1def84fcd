//! Serializable inputs: equation coefficients and solution specs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::form::ProfileKind;
use super::{CatalogError, FamilyId};

/// Coefficients of the single equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleCoefficients {
    pub a: f64,
    pub c: f64,
}

/// Coefficients of the coupled pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoupledCoefficients {
    pub a1: f64,
    pub b1: f64,
    pub c1: f64,
    pub a2: f64,
    pub b2: f64,
    pub c2: f64,
}

impl CoupledCoefficients {
    /// `a1·b2 − a2·b1`
    pub fn determinant(&self) -> f64 {
        self.a1 * self.b2 - self.a2 * self.b1
    }

    /// Coefficients of the system obtained by exchanging the roles of the
    /// two fields: the self- and cross-coupling constants trade places.
    pub fn exchanged(&self) -> Self {
        Self { a1: self.b2, b1: self.a2, c1: self.c2, a2: self.b1, b2: self.a1, c2: self.c1 }
    }
}

/// PDE coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Physics {
    Single(SingleCoefficients),
    Coupled(CoupledCoefficients),
}

impl Physics {
    pub fn single(a: f64, c: f64) -> Self {
        Physics::Single(SingleCoefficients { a, c })
    }

    pub fn coupled(a1: f64, b1: f64, c1: f64, a2: f64, b2: f64, c2: f64) -> Self {
        Physics::Coupled(CoupledCoefficients { a1, b1, c1, a2, b2, c2 })
    }

    pub fn is_coupled(&self) -> bool {
        matches!(self, Physics::Coupled(_))
    }

    /// Number of fields: 1 or 2.
    pub fn components(&self) -> usize {
        if self.is_coupled() { 2 } else { 1 }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |what: &str| Err(CatalogError::InvalidPhysics(what.to_string()));
        match *self {
            Physics::Single(SingleCoefficients { a, c }) => {
                if !(a.is_finite() && c.is_finite()) {
                    return bad("coefficients must be finite");
                }
                if a == 0.0 {
                    return bad("a must be nonzero");
                }
                if c == 0.0 {
                    return bad("c must be nonzero");
                }
            }
            Physics::Coupled(k) => {
                if ![k.a1, k.b1, k.c1, k.a2, k.b2, k.c2].iter().all(|v| v.is_finite()) {
                    return bad("coefficients must be finite");
                }
                if k.c1 == 0.0 || k.c2 == 0.0 {
                    return bad("c1 and c2 must be nonzero");
                }
            }
        }
        Ok(())
    }
}

/// Sign choice `ε ∈ {+1, −1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Sign(i8);

impl Sign {
    pub const PLUS: Sign = Sign(1);
    pub const MINUS: Sign = Sign(-1);

    pub fn value(self) -> f64 {
        self.0 as f64
    }
}

impl TryFrom<i32> for Sign {
    type Error = String;

    fn try_from(v: i32) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Sign::PLUS),
            -1 => Ok(Sign::MINUS),
            other => Err(format!("sign must be +1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i32 {
    fn from(s: Sign) -> i32 {
        s.0 as i32
    }
}

fn default_signs() -> [Sign; 2] {
    [Sign::PLUS, Sign::PLUS]
}

fn is_default_signs(s: &[Sign; 2]) -> bool {
    *s == default_signs()
}

/// Denominator of the heat-kernel phase in the log-phase coupled families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HeatDenominator {
    /// `x² / 4c·t`, the form that solves the equation.
    #[default]
    #[serde(rename = "4c")]
    Quarter,
    /// `x² / 2c·t`
    #[serde(rename = "2c")]
    Half,
}

/// Dispersion coefficient used in the phase rate of the second field of the
/// coupled `dn` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DnSecondRate {
    #[default]
    #[serde(rename = "c2")]
    Own,
    #[serde(rename = "c1")]
    First,
}

/// Alternative readings of a few closed forms; the defaults are the ones
/// that solve the equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Variant {
    pub heat_denominator: HeatDenominator,
    pub dn_second_rate: DnSecondRate,
}

impl Variant {
    fn is_default(&self) -> bool {
        *self == Variant::default()
    }
}

/// A family id plus everything needed to instantiate it. This is the JSON
/// document accepted by the CLI, e.g.
/// `{"family": "S7", "phys": {"a": -2.0, "c": 1.0}, "params": {"m": 0.5}, "signs": [1, 1]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSpec {
    pub family: FamilyId,
    pub phys: Physics,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default = "default_signs", skip_serializing_if = "is_default_signs")]
    pub signs: [Sign; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileKind>,
    #[serde(default, skip_serializing_if = "Variant::is_default")]
    pub variant: Variant,
}

impl SolutionSpec {
    pub fn new(family: FamilyId, phys: Physics) -> Self {
        Self {
            family,
            phys,
            params: BTreeMap::new(),
            signs: default_signs(),
            profile: None,
            variant: Variant::default(),
        }
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn signs(mut self, e1: Sign, e2: Sign) -> Self {
        self.signs = [e1, e2];
        self
    }

    pub fn profile(mut self, profile: ProfileKind) -> Self {
        self.profile = Some(profile);
        self
    }

    pub fn variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }
}
