//! Closed-form building blocks.
//!
//! Every catalog component has the shape
//!
//! ```text
//! ξ = scale · Π (t − τ_j)^{p_j} · shape(t, x, y),     φ = Σ phase terms
//! ```
//!
//! which is enough to express all families and to read off their time
//! domain and singular set mechanically.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::field::Polar;
use crate::geometry::{Point, SingularLocus, Surface};
use crate::special::{jacobi, EllipticModulus, JacobiTriple};

/// User-selectable profile for the coupled profile families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Tan,
    Sec,
    Coth,
    Csch,
    Sn,
    Cn,
    Dn,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 7] = [
        ProfileKind::Tan,
        ProfileKind::Sec,
        ProfileKind::Coth,
        ProfileKind::Csch,
        ProfileKind::Sn,
        ProfileKind::Cn,
        ProfileKind::Dn,
    ];

    pub fn is_elliptic(self) -> bool {
        matches!(self, ProfileKind::Sn | ProfileKind::Cn | ProfileKind::Dn)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Tan => "tan",
            ProfileKind::Sec => "sec",
            ProfileKind::Coth => "coth",
            ProfileKind::Csch => "csch",
            ProfileKind::Sn => "sn",
            ProfileKind::Cn => "cn",
            ProfileKind::Dn => "dn",
        }
    }
}

/// One-variable profile `P(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Profile {
    Tan,
    Sec,
    Coth,
    Csch,
    Sn(EllipticModulus),
    Cn(EllipticModulus),
    Dn(EllipticModulus),
    Sin,
    Cos,
    Cosh,
    Sinh,
    /// `1/s`
    Reciprocal,
}

impl Profile {
    pub fn from_kind(kind: ProfileKind, m: Option<EllipticModulus>) -> Profile {
        let m = || m.expect("elliptic profile requires a modulus");
        match kind {
            ProfileKind::Tan => Profile::Tan,
            ProfileKind::Sec => Profile::Sec,
            ProfileKind::Coth => Profile::Coth,
            ProfileKind::Csch => Profile::Csch,
            ProfileKind::Sn => Profile::Sn(m()),
            ProfileKind::Cn => Profile::Cn(m()),
            ProfileKind::Dn => Profile::Dn(m()),
        }
    }

    pub fn eval(self, s: f64) -> f64 {
        let elliptic = |m| jacobi(s, m).unwrap_or(JacobiTriple { sn: f64::NAN, cn: f64::NAN, dn: f64::NAN });
        match self {
            Profile::Tan => s.tan(),
            Profile::Sec => 1.0 / s.cos(),
            Profile::Coth => 1.0 / s.tanh(),
            Profile::Csch => 1.0 / s.sinh(),
            Profile::Sn(m) => elliptic(m).sn,
            Profile::Cn(m) => elliptic(m).cn,
            Profile::Dn(m) => elliptic(m).dn,
            Profile::Sin => s.sin(),
            Profile::Cos => s.cos(),
            Profile::Cosh => s.cosh(),
            Profile::Sinh => s.sinh(),
            Profile::Reciprocal => 1.0 / s,
        }
    }

    /// Coefficient `g` of the cubic term in `P'' = 2g·P³ + (linear in P)`.
    pub fn cubic_coefficient(self) -> f64 {
        match self {
            Profile::Tan | Profile::Sec | Profile::Coth | Profile::Csch | Profile::Reciprocal => 1.0,
            Profile::Sn(m) => m.parameter(),
            Profile::Cn(m) => -m.parameter(),
            Profile::Dn(_) => -1.0,
            Profile::Sin | Profile::Cos | Profile::Cosh | Profile::Sinh => 0.0,
        }
    }

    /// Real poles of `P`: `None`, the single pole `s = 0`, or a lattice.
    fn poles(self) -> Poles {
        match self {
            Profile::Tan | Profile::Sec => Poles::Lattice { start: FRAC_PI_2, step: PI },
            Profile::Coth | Profile::Csch | Profile::Reciprocal => Poles::Origin,
            _ => Poles::None,
        }
    }
}

enum Poles {
    None,
    Origin,
    Lattice { start: f64, step: f64 },
}

/// What the profile is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Argument {
    /// `s = x`
    X,
    /// `s = ϖ = (l1·x + l2·y + l3·t) / t`
    SelfSimilar { l1: f64, l2: f64, l3: f64 },
}

impl Argument {
    fn eval(self, p: Point) -> f64 {
        match self {
            Argument::X => p.x,
            Argument::SelfSimilar { l1, l2, l3 } => (l1 * p.x + l2 * p.y + l3 * p.t) / p.t,
        }
    }

    /// The level set `s = const` is the plane `(n0 + s·n1)·p = 0` (plus an
    /// offset affine in `s`); returns `(n0, n1, o0, o1)`.
    fn level_planes(self) -> ([f64; 3], [f64; 3], f64, f64) {
        match self {
            Argument::X => ([0.0, 1.0, 0.0], [0.0; 3], 0.0, -1.0),
            Argument::SelfSimilar { l1, l2, l3 } => ([l3, l1, l2], [-1.0, 0.0, 0.0], 0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Shape {
    Unit,
    Profile(Profile, Argument),
    /// `1 / √((x − vx·t)² + (y − vy·t)²)`
    InverseRadius { vx: f64, vy: f64 },
}

impl Shape {
    fn eval(self, p: Point) -> f64 {
        match self {
            Shape::Unit => 1.0,
            Shape::Profile(profile, arg) => profile.eval(arg.eval(p)),
            Shape::InverseRadius { vx, vy } => 1.0 / (p.x - vx * p.t).hypot(p.y - vy * p.t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Amplitude {
    pub scale: f64,
    /// `(τ, exponent)` factors `(t − τ)^exponent`.
    pub powers: Vec<(f64, f64)>,
    pub shape: Shape,
}

impl Amplitude {
    pub fn new(scale: f64, shape: Shape) -> Self {
        Self { scale, powers: Vec::new(), shape }
    }

    pub fn power(mut self, tau: f64, exponent: f64) -> Self {
        self.powers.push((tau, exponent));
        self
    }

    fn eval(&self, p: Point) -> f64 {
        let mut v = self.scale * self.shape.eval(p);
        for &(tau, e) in &self.powers {
            let base = p.t - tau;
            v *= if e == -1.0 { 1.0 / base } else { base.powf(e) };
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum PhaseTerm {
    /// `rate · t`
    Rate(f64),
    /// `coeff / (t − τ)`
    Pole { coeff: f64, tau: f64 },
    /// `coeff · ln(t − τ)`
    Log { coeff: f64, tau: f64 },
    /// `(q − centre)² / (denom · (t − τ))` for `q ∈ {x, y}`
    Heat { axis: Axis, centre: f64, denom: f64, tau: f64 },
}

impl PhaseTerm {
    fn eval(self, p: Point) -> f64 {
        match self {
            PhaseTerm::Rate(r) => r * p.t,
            PhaseTerm::Pole { coeff, tau } => coeff / (p.t - tau),
            PhaseTerm::Log { coeff, tau } => coeff * (p.t - tau).ln(),
            PhaseTerm::Heat { axis, centre, denom, tau } => {
                let q = match axis {
                    Axis::X => p.x,
                    Axis::Y => p.y,
                } - centre;
                q * q / (denom * (p.t - tau))
            }
        }
    }

    fn time_singularity(self) -> Option<f64> {
        match self {
            PhaseTerm::Rate(_) => None,
            PhaseTerm::Pole { tau, .. } | PhaseTerm::Log { tau, .. } | PhaseTerm::Heat { tau, .. } => Some(tau),
        }
    }
}

/// Closed form of one field component.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ComponentForm {
    pub amplitude: Amplitude,
    pub phase: Vec<PhaseTerm>,
}

impl ComponentForm {
    pub fn new(amplitude: Amplitude) -> Self {
        Self { amplitude, phase: Vec::new() }
    }

    pub fn with(mut self, term: PhaseTerm) -> Self {
        self.phase.push(term);
        self
    }

    /// `(x² + y²) / (denom·t)` heat-kernel phase centred at the origin.
    pub fn radial_heat(self, denom: f64) -> Self {
        self.with(PhaseTerm::Heat { axis: Axis::X, centre: 0.0, denom, tau: 0.0 })
            .with(PhaseTerm::Heat { axis: Axis::Y, centre: 0.0, denom, tau: 0.0 })
    }

    pub fn polar(&self, p: Point) -> Polar {
        Polar {
            amplitude: self.amplitude.eval(p),
            phase: self.phase.iter().map(|term| term.eval(p)).sum(),
        }
    }

    /// Times `τ` at which some factor of this component breaks down; the
    /// component is defined for `t > max τ`.
    pub fn time_singularities(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.amplitude.powers.iter().map(|&(tau, _)| tau).collect();
        out.extend(self.phase.iter().filter_map(|term| term.time_singularity()));
        if matches!(self.amplitude.shape, Shape::Profile(_, Argument::SelfSimilar { .. })) {
            out.push(0.0);
        }
        out
    }

    /// Spatial singular surfaces (time planes are added by the caller).
    pub fn spatial_surfaces(&self) -> Vec<Surface> {
        match self.amplitude.shape {
            Shape::Unit => Vec::new(),
            Shape::InverseRadius { vx, vy } => vec![Surface::Line { point: [0.0; 3], direction: [1.0, vx, vy] }],
            Shape::Profile(profile, arg) => {
                let (n0, n1, o0, o1) = arg.level_planes();
                match profile.poles() {
                    Poles::None => Vec::new(),
                    Poles::Origin => vec![Surface::Plane { normal: n0, offset: o0 }],
                    Poles::Lattice { start, step } => {
                        vec![Surface::PlaneLattice { n0, n1, o0, o1, start, step }]
                    }
                }
            }
        }
    }
}

/// Admissible times for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TimeDomain {
    All,
    /// `t > bound`
    After { bound: f64 },
}

impl TimeDomain {
    pub fn contains(self, t: f64) -> bool {
        match self {
            TimeDomain::All => t.is_finite(),
            TimeDomain::After { bound } => t > bound && t.is_finite(),
        }
    }
}

/// Time domain and singular locus of a set of components.
pub(crate) fn domain_and_locus(components: &[ComponentForm]) -> (TimeDomain, SingularLocus) {
    let bound = components
        .iter()
        .flat_map(|c| c.time_singularities())
        .fold(None, |acc: Option<f64>, tau| Some(acc.map_or(tau, |a| a.max(tau))));
    let mut locus = SingularLocus::default();
    let domain = match bound {
        Some(b) => {
            locus.push(SingularLocus::time_plane(b));
            TimeDomain::After { bound: b }
        }
        None => TimeDomain::All,
    };
    for c in components {
        for s in c.spatial_surfaces() {
            if !locus.surfaces().contains(&s) {
                locus.push(s);
            }
        }
    }
    (domain, locus)
}
