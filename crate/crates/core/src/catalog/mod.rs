//! Closed-form solution families of the single and coupled equations.
//!
//! A [`SolutionSpec`] names a family and its parameters; [`instantiate`]
//! validates it and produces an immutable [`SolutionInstance`] that can be
//! evaluated pointwise, split into amplitude and phase, and asked for its
//! distance to the nearest singular surface.

mod coupled;
mod family;
mod form;
mod single;
mod spec;

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

pub use family::{FamilyDescriptor, FamilyId, Propagation, SystemKind};
pub use form::{ProfileKind, TimeDomain};
pub use spec::{
    CoupledCoefficients, DnSecondRate, HeatDenominator, Physics, Sign, SingleCoefficients, SolutionSpec, Variant,
};

use crate::field::{Components, Polar, Solution};
use crate::geometry::{Point, SingularLocus};
use crate::special::{complete_k, EllipticModulus};
use form::{domain_and_locus, ComponentForm};

/// Default minimum distance to a singular surface accepted by [`SolutionInstance::evaluate`].
pub const DEFAULT_EXCLUSION: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("UnknownFamily: {0}")]
    UnknownFamily(String),
    #[error("PhysicsMismatch: {family} is a {expected:?} family")]
    PhysicsMismatch { family: FamilyId, expected: SystemKind },
    #[error("InvalidPhysics: {0}")]
    InvalidPhysics(String),
    #[error("MissingParameter: {family} needs '{name}'")]
    MissingParameter { family: FamilyId, name: String },
    #[error("UnexpectedParameter: {family} does not use '{name}'")]
    UnexpectedParameter { family: FamilyId, name: String },
    #[error("InvalidParameter: {name}: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("SignConditionViolated: requires {predicate}")]
    SignConditionViolated { family: FamilyId, predicate: String },
    #[error("DegenerateParams: requires {predicate}")]
    DegenerateParams { family: FamilyId, predicate: String },
    #[error("MissingProfile: {0} needs a profile (tan, sec, coth, csch, sn, cn, dn)")]
    MissingProfile(FamilyId),
    #[error("InapplicableOption: {family} does not take '{option}'")]
    InapplicableOption { family: FamilyId, option: &'static str },
    #[error("InconsistentAmplitudes: residual {0:e} in the amplitude equations")]
    InconsistentAmplitudes(f64),
    #[error("OutOfDomain: t = {t} outside {domain:?}")]
    OutOfDomain { t: f64, domain: TimeDomain },
    #[error("SingularPoint: distance {distance:e} to the singular locus is below {exclusion:e}")]
    SingularPoint { distance: f64, exclusion: f64 },
}

/// Every family in `kind`, in tag order.
pub fn list_families(kind: SystemKind) -> Vec<&'static FamilyDescriptor> {
    FamilyId::all(kind).into_iter().map(FamilyId::descriptor).collect()
}

/// Validated parameter lookup handed to the family builders.
pub(crate) struct Params<'a> {
    family: FamilyId,
    values: &'a BTreeMap<String, f64>,
}

impl Params<'_> {
    pub fn get(&self, name: &str) -> Result<f64, CatalogError> {
        self.values
            .get(name)
            .copied()
            .ok_or_else(|| CatalogError::MissingParameter { family: self.family, name: name.to_string() })
    }

    pub fn modulus(&self) -> Result<EllipticModulus, CatalogError> {
        EllipticModulus::new(self.get("m")?)
            .map_err(|e| CatalogError::InvalidParameter { name: "m".into(), reason: e.to_string() })
    }

    pub fn require(&self, ok: bool, predicate: &str) -> Result<(), CatalogError> {
        if ok {
            Ok(())
        } else {
            Err(CatalogError::SignConditionViolated { family: self.family, predicate: predicate.to_string() })
        }
    }

    pub fn nondegenerate(&self, ok: bool, predicate: &str) -> Result<(), CatalogError> {
        if ok {
            Ok(())
        } else {
            Err(CatalogError::DegenerateParams { family: self.family, predicate: predicate.to_string() })
        }
    }
}

/// Output of a family builder.
pub(crate) struct Built {
    pub forms: Vec<ComponentForm>,
    pub iota: Option<[f64; 2]>,
    pub x_period: Option<f64>,
}

/// How a profile enters the amplitude law `ι² = f·g·θ·P`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ProfileLaw {
    /// `+1` when the admissible sign of `P` is nonnegative, `−1` otherwise.
    pub class: f64,
    /// Phase rate per unit dispersion for the stationary form.
    pub rate: f64,
}

pub(crate) fn profile_law(kind: ProfileKind, m: Option<EllipticModulus>) -> ProfileLaw {
    let m2 = m.map_or(0.0, |m| m.parameter());
    let (class, rate) = match kind {
        ProfileKind::Tan => (1.0, 2.0),
        ProfileKind::Sec => (1.0, -1.0),
        ProfileKind::Coth => (1.0, -2.0),
        ProfileKind::Csch => (1.0, 1.0),
        ProfileKind::Sn => (1.0, -(1.0 + m2)),
        ProfileKind::Cn => (-1.0, 2.0 * m2 - 1.0),
        ProfileKind::Dn => (-1.0, 2.0 - m2),
    };
    ProfileLaw { class, rate }
}

/// Spatial period in x of a stationary elliptic profile, when it has one.
pub(crate) fn elliptic_period(kind: ProfileKind, m: EllipticModulus) -> Option<f64> {
    let k = complete_k(m).ok()?;
    match kind {
        ProfileKind::Sn | ProfileKind::Cn => Some(4.0 * k),
        ProfileKind::Dn => Some(2.0 * k),
        _ => None,
    }
}

/// A validated family instance.
#[derive(Debug, Clone)]
pub struct SolutionInstance {
    spec: SolutionSpec,
    forms: Vec<ComponentForm>,
    iota: Option<[f64; 2]>,
    x_period: Option<f64>,
    domain: TimeDomain,
    locus: SingularLocus,
}

/// Validates `spec` and builds the closed form it names.
pub fn instantiate(spec: &SolutionSpec) -> Result<SolutionInstance, CatalogError> {
    let id = spec.family;
    let desc = id.descriptor();
    match (desc.kind, spec.phys) {
        (SystemKind::Single, Physics::Single(_)) | (SystemKind::Coupled, Physics::Coupled(_)) => {}
        _ => return Err(CatalogError::PhysicsMismatch { family: id, expected: desc.kind }),
    }
    spec.phys.validate()?;

    let elliptic_profile = spec.profile.map(ProfileKind::is_elliptic);
    if desc.uses_profile && spec.profile.is_none() {
        return Err(CatalogError::MissingProfile(id));
    }
    if !desc.uses_profile && spec.profile.is_some() {
        return Err(CatalogError::InapplicableOption { family: id, option: "profile" });
    }
    if !desc.uses_signs && spec.signs != [Sign::PLUS, Sign::PLUS] {
        return Err(CatalogError::InapplicableOption { family: id, option: "signs" });
    }
    let v = spec.variant;
    if v.heat_denominator != HeatDenominator::default() && !matches!(id, FamilyId::Coupled(6 | 7)) {
        return Err(CatalogError::InapplicableOption { family: id, option: "variant.heat_denominator" });
    }
    if v.dn_second_rate != DnSecondRate::default()
        && !(id == FamilyId::Coupled(3) && spec.profile == Some(ProfileKind::Dn))
    {
        return Err(CatalogError::InapplicableOption { family: id, option: "variant.dn_second_rate" });
    }

    let expected: Vec<&str> = desc
        .params
        .iter()
        .copied()
        .filter(|&name| !(desc.uses_profile && name == "m" && elliptic_profile == Some(false)))
        .collect();
    for name in &expected {
        match spec.params.get(*name) {
            None => return Err(CatalogError::MissingParameter { family: id, name: name.to_string() }),
            Some(v) if !v.is_finite() => {
                return Err(CatalogError::InvalidParameter { name: name.to_string(), reason: "not finite".into() })
            }
            Some(_) => {}
        }
    }
    if let Some(extra) = spec.params.keys().find(|k| !expected.contains(&k.as_str())) {
        return Err(CatalogError::UnexpectedParameter { family: id, name: extra.clone() });
    }

    let params = Params { family: id, values: &spec.params };
    let built = match (id, spec.phys) {
        (FamilyId::Single(n), Physics::Single(k)) => single::build(n, k, &params)?,
        (FamilyId::Coupled(n), Physics::Coupled(k)) => coupled::build(n, k, spec, &params)?,
        _ => unreachable!("kind checked above"),
    };
    let (domain, locus) = domain_and_locus(&built.forms);
    Ok(SolutionInstance {
        spec: spec.clone(),
        forms: built.forms,
        iota: built.iota,
        x_period: built.x_period,
        domain,
        locus,
    })
}

impl SolutionInstance {
    pub fn spec(&self) -> &SolutionSpec {
        &self.spec
    }

    pub fn family(&self) -> FamilyId {
        self.spec.family
    }

    pub fn time_domain(&self) -> TimeDomain {
        self.domain
    }

    pub fn locus(&self) -> &SingularLocus {
        &self.locus
    }

    /// Derived coupled amplitudes `(ι1, ι2)`, signs included, for the
    /// families that have them.
    pub fn iota(&self) -> Option<[f64; 2]> {
        self.iota
    }

    /// Spatial period in x for the bounded periodic families.
    pub fn x_period(&self) -> Option<f64> {
        self.x_period
    }

    /// `Ok(period)` when this instance can seed the periodic propagator,
    /// otherwise the reason it cannot.
    pub fn propagation_period(&self) -> Result<f64, String> {
        match self.spec.family.descriptor().propagation {
            Propagation::Ineligible(reason) => Err(reason.to_string()),
            Propagation::ProfileDependent if !self.spec.profile.is_some_and(ProfileKind::is_elliptic) => {
                Err("unbounded: the selected profile has real poles".to_string())
            }
            _ => self.x_period.ok_or_else(|| "non-periodic: modulus m = 1 has no finite period".to_string()),
        }
    }

    fn check(&self, p: Point, exclusion: f64) -> Result<(), CatalogError> {
        if !self.domain.contains(p.t) {
            return Err(CatalogError::OutOfDomain { t: p.t, domain: self.domain });
        }
        let distance = self.locus.distance(p);
        if distance < exclusion {
            return Err(CatalogError::SingularPoint { distance, exclusion });
        }
        Ok(())
    }

    fn polar_unchecked(&self, p: Point) -> Components<Polar> {
        match self.forms.as_slice() {
            [f] => Components::Single(f.polar(p)),
            [f, g] => Components::Coupled(f.polar(p), g.polar(p)),
            _ => unreachable!("one or two components"),
        }
    }

    /// Closed-form value; fails outside the time domain or within
    /// `exclusion` of the singular locus.
    pub fn evaluate(&self, p: Point, exclusion: f64) -> Result<Components<Complex64>, CatalogError> {
        self.check(p, exclusion)?;
        Ok(self.value_at(p))
    }

    /// `(ξ, φ)` per component with the phase left unwrapped.
    pub fn amplitude_phase(&self, p: Point, exclusion: f64) -> Result<Components<Polar>, CatalogError> {
        self.check(p, exclusion)?;
        Ok(self.polar_unchecked(p))
    }

    pub fn singular_distance(&self, p: Point) -> f64 {
        self.locus.distance(p)
    }
}

impl Solution for SolutionInstance {
    fn physics(&self) -> Physics {
        self.spec.phys
    }

    fn value_at(&self, p: Point) -> Components<Complex64> {
        self.polar_unchecked(p).map(Polar::to_complex)
    }

    fn polar_at(&self, p: Point) -> Option<Components<Polar>> {
        Some(self.polar_unchecked(p))
    }

    fn in_domain(&self, p: Point) -> bool {
        self.domain.contains(p.t)
    }

    fn singular_distance(&self, p: Point) -> f64 {
        self.locus.distance(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(id: u8, a: f64, c: f64) -> SolutionSpec {
        SolutionSpec::new(FamilyId::Single(id), Physics::single(a, c))
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(list_families(SystemKind::Single).len(), 21);
        assert_eq!(list_families(SystemKind::Coupled).len(), 17);
        let s9 = FamilyId::Single(9).descriptor();
        assert!(s9.conditions.contains(&"ac>0"));
        let c1 = FamilyId::Coupled(1).descriptor();
        assert!(c1.conditions.contains(&"a1b2−a2b1≠0"));
    }

    #[test]
    fn s1_value() {
        let inst = instantiate(&single(1, -2.0, 1.0)).unwrap();
        let v = inst.evaluate(Point::new(3.0, 1.0, -7.0), DEFAULT_EXCLUSION).unwrap().first();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(inst.singular_distance(Point::new(0.0, 0.5, 2.0)), 0.5);
    }

    #[test]
    fn s3_value_and_pole() {
        let inst = instantiate(&single(3, -2.0, 1.0)).unwrap();
        let v = inst.evaluate(Point::new(0.0, std::f64::consts::FRAC_PI_4, 0.0), DEFAULT_EXCLUSION).unwrap();
        assert!((v.first() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(inst.singular_distance(Point::new(0.0, std::f64::consts::FRAC_PI_2, 0.0)) < 1e-15);
        assert!(matches!(
            inst.evaluate(Point::new(0.0, std::f64::consts::FRAC_PI_2, 0.0), DEFAULT_EXCLUSION),
            Err(CatalogError::SingularPoint { .. })
        ));
    }

    #[test]
    fn sign_condition_message() {
        let err = instantiate(&single(9, -1.0, 1.0).param("m", 0.5)).unwrap_err();
        assert_eq!(err.to_string(), "SignConditionViolated: requires ac>0");
    }

    #[test]
    fn degenerate_plane() {
        let spec = single(12, -1.0, 1.0).param("l1", 0.0).param("l2", 0.0).param("l3", 1.0);
        assert!(matches!(instantiate(&spec), Err(CatalogError::DegenerateParams { .. })));
    }

    #[test]
    fn parameter_arity_enforced() {
        assert!(matches!(
            instantiate(&single(7, -2.0, 1.0)),
            Err(CatalogError::MissingParameter { .. })
        ));
        assert!(matches!(
            instantiate(&single(1, -2.0, 1.0).param("m", 0.5)),
            Err(CatalogError::UnexpectedParameter { .. })
        ));
        assert!(matches!(
            instantiate(&SolutionSpec::new(FamilyId::Single(1), Physics::coupled(1.0, 1.0, 1.0, 1.0, 1.0, 1.0))),
            Err(CatalogError::PhysicsMismatch { .. })
        ));
    }

    #[test]
    fn s10_amplitude_phase_at_unit_time() {
        let inst = instantiate(&single(10, 1.0, 1.0).param("b", 1.0)).unwrap();
        let polar = inst.amplitude_phase(Point::new(1.0, 0.0, 0.4), DEFAULT_EXCLUSION).unwrap().first();
        assert_eq!(polar.amplitude, 1.0);
        assert_eq!(polar.phase, 0.0);
        assert!(matches!(
            inst.evaluate(Point::new(-0.5, 0.0, 0.0), DEFAULT_EXCLUSION),
            Err(CatalogError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn s0_phase() {
        let inst = instantiate(&single(0, 1.0, 1.0).param("d", 1.0)).unwrap();
        let p = Point::new(0.5, 0.3, -0.7);
        let polar = inst.amplitude_phase(p, DEFAULT_EXCLUSION).unwrap().first();
        assert!((polar.amplitude - 2.0).abs() < 1e-15);
        let expected = (0.09 + 0.49) / (4.0 * 0.5) - 1.0 / 0.5;
        assert!((polar.phase - expected).abs() < 1e-14);
    }

    #[test]
    fn c1_worked_amplitudes() {
        let spec = SolutionSpec::new(FamilyId::Coupled(1), Physics::coupled(1.0, -1.0, 1.0, 3.0, -2.0, 1.0));
        let inst = instantiate(&spec).unwrap();
        let [i1, i2] = inst.iota().unwrap();
        assert!((i1 * i1 - 2.0).abs() < 1e-14);
        assert!((i2 * i2 - 4.0).abs() < 1e-14);
    }

    #[test]
    fn propagation_eligibility() {
        let s9 = instantiate(&single(9, 1.0, 1.0).param("m", 0.5)).unwrap();
        let k = complete_k(EllipticModulus::new(0.5).unwrap()).unwrap();
        assert_eq!(s9.propagation_period().unwrap(), 2.0 * k);
        let s5 = instantiate(&single(5, -1.0, 1.0)).unwrap();
        assert!(s5.propagation_period().unwrap_err().contains("unbounded"));
    }
}
