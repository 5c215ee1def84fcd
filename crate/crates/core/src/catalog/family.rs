//! Family identifiers and their static descriptors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub const SINGLE_COUNT: u8 = 21;
pub const COUPLED_COUNT: u8 = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Single,
    Coupled,
}

/// `S0 … S20` (single equation) or `C1 … C17` (coupled pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Single(u8),
    Coupled(u8),
}

impl FamilyId {
    pub fn kind(self) -> SystemKind {
        match self {
            FamilyId::Single(_) => SystemKind::Single,
            FamilyId::Coupled(_) => SystemKind::Coupled,
        }
    }

    pub fn all(kind: SystemKind) -> Vec<FamilyId> {
        match kind {
            SystemKind::Single => (0..SINGLE_COUNT).map(FamilyId::Single).collect(),
            SystemKind::Coupled => (1..=COUPLED_COUNT).map(FamilyId::Coupled).collect(),
        }
    }

    pub fn descriptor(self) -> &'static FamilyDescriptor {
        match self {
            FamilyId::Single(i) => &SINGLE[i as usize],
            FamilyId::Coupled(i) => &COUPLED[i as usize - 1],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Single(i) => write!(f, "S{i}"),
            FamilyId::Coupled(i) => write!(f, "C{i}"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unknown family '{s}'");
        let (head, tail) = s.split_at(s.len().min(1));
        let n: u8 = tail.parse().map_err(|_| bad())?;
        match head {
            "S" | "s" if n < SINGLE_COUNT => Ok(FamilyId::Single(n)),
            "C" | "c" if (1..=COUPLED_COUNT).contains(&n) => Ok(FamilyId::Coupled(n)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Whether a family can seed the periodic spectral propagator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "reason")]
pub enum Propagation {
    /// Bounded and x-periodic for every admissible parameter set with `m < 1`.
    Eligible,
    /// Eligible exactly when the selected profile is `sn`, `cn` or `dn`.
    ProfileDependent,
    Ineligible(&'static str),
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyDescriptor {
    pub id: FamilyId,
    pub kind: SystemKind,
    /// Real parameters the formula references, by JSON key.
    pub params: &'static [&'static str],
    /// Admissibility predicates checked at instantiation.
    pub conditions: &'static [&'static str],
    pub formula: &'static str,
    pub uses_signs: bool,
    pub uses_profile: bool,
    pub propagation: Propagation,
}

const UNBOUNDED: Propagation = Propagation::Ineligible("unbounded: the profile has real poles");
const SELF_SIMILAR: Propagation =
    Propagation::Ineligible("non-periodic: amplitude decays like a power of t and the spatial scale changes with t");
const DISPERSIVE: Propagation = Propagation::Ineligible("non-periodic: heat-kernel phase quadratic in x");

macro_rules! single {
    ($i:expr, $params:expr, [$($c:expr),*], $f:expr, $prop:expr) => {
        FamilyDescriptor {
            id: FamilyId::Single($i),
            kind: SystemKind::Single,
            params: &$params,
            conditions: &[$($c),*],
            formula: $f,
            uses_signs: false,
            uses_profile: false,
            propagation: $prop,
        }
    };
}

macro_rules! coupled {
    ($i:expr, $params:expr, [$($c:expr),*], $f:expr, $signs:expr, $profile:expr, $prop:expr) => {
        FamilyDescriptor {
            id: FamilyId::Coupled($i),
            kind: SystemKind::Coupled,
            params: &$params,
            conditions: &[$($c),*],
            formula: $f,
            uses_signs: $signs,
            uses_profile: $profile,
            propagation: $prop,
        }
    };
}

const PLANE: [&str; 3] = ["l1", "l2", "l3"];
const PLANE_M: [&str; 4] = ["l1", "l2", "l3", "m"];

pub static SINGLE: [FamilyDescriptor; SINGLE_COUNT as usize] = [
    single!(0, ["d"], [], "ψ = (d/t)·exp(i[(x²+y²)/4ct − a·d²/t]), t>0", SELF_SIMILAR),
    single!(1, [], ["ac<0"], "ψ = √(−2c/a) / x", UNBOUNDED),
    single!(2, [], ["ac<0"], "ψ = √(−c/(a(x²+y²)))", UNBOUNDED),
    single!(3, [], ["ac<0"], "ψ = √(−2c/a)·tan x·e^{2ict}", UNBOUNDED),
    single!(4, [], ["ac<0"], "ψ = √(−2c/a)·sec x·e^{−ict}", UNBOUNDED),
    single!(5, [], ["ac<0"], "ψ = √(−2c/a)·coth x·e^{−2ict}", UNBOUNDED),
    single!(6, [], ["ac<0"], "ψ = √(−2c/a)·csch x·e^{ict}", UNBOUNDED),
    single!(7, ["m"], ["ac<0"], "ψ = m·√(−2c/a)·sn(x|m)·e^{−i(1+m²)ct}", Propagation::Eligible),
    single!(8, ["m"], ["ac>0"], "ψ = m·√(2c/a)·cn(x|m)·e^{i(2m²−1)ct}", Propagation::Eligible),
    single!(9, ["m"], ["ac>0"], "ψ = √(2c/a)·dn(x|m)·e^{i(2−m²)ct}", Propagation::Eligible),
    single!(10, ["b"], [], "ψ = b·t^{iab²−1/2}·e^{ix²/4ct}, t>0", DISPERSIVE),
    single!(
        11,
        ["b", "d"],
        ["d≠0"],
        "ψ = b·t^{−iab²/d−1/2}·(t−d)^{iab²/d−1/2}·e^{i[x²/4ct + y²/4c(t−d)]}, t>max(0,d)",
        DISPERSIVE
    ),
    single!(
        12,
        PLANE,
        ["ac<0", "(l1,l2)≠(0,0)"],
        "ψ = √(−2c(l1²+l2²)/a) / (l1x+l2y+l3t)·e^{i(x²+y²)/4ct}, t>0",
        SELF_SIMILAR
    ),
    single!(
        13,
        ["l4", "l5"],
        ["ac<0"],
        "ψ = √(−c/(a((x−l4t)²+(y−l5t)²)))·e^{i(x²+y²)/4ct}, t>0",
        SELF_SIMILAR
    ),
    single!(
        14,
        PLANE,
        ["ac<0", "(l1,l2)≠(0,0)"],
        "ψ = √(−2cL/a)·(1/t)·tan ϖ·exp(i[(x²+y²)/4ct − 2cL/t]), ϖ=(l1x+l2y+l3t)/t, L=l1²+l2²",
        SELF_SIMILAR
    ),
    single!(
        15,
        PLANE,
        ["ac<0", "(l1,l2)≠(0,0)"],
        "ψ = √(−2cL/a)·(1/t)·sec ϖ·exp(i[(x²+y²)/4ct + cL/t])",
        SELF_SIMILAR
    ),
    single!(
        16,
        PLANE,
        ["ac<0", "(l1,l2)≠(0,0)"],
        "ψ = √(−2cL/a)·(1/t)·coth ϖ·exp(i[(x²+y²)/4ct + 2cL/t])",
        SELF_SIMILAR
    ),
    single!(
        17,
        PLANE,
        ["ac<0", "(l1,l2)≠(0,0)"],
        "ψ = √(−2cL/a)·(1/t)·csch ϖ·exp(i[(x²+y²)/4ct − cL/t])",
        SELF_SIMILAR
    ),
    single!(
        18,
        PLANE_M,
        ["ac<0", "(l1,l2)≠(0,0)"],
        "ψ = m·√(−2cL/a)·(1/t)·sn(ϖ|m)·exp(i[(x²+y²)/4ct + (1+m²)cL/t])",
        SELF_SIMILAR
    ),
    single!(
        19,
        PLANE_M,
        ["ac>0", "(l1,l2)≠(0,0)"],
        "ψ = m·√(2cL/a)·(1/t)·cn(ϖ|m)·exp(i[(x²+y²)/4ct − (2m²−1)cL/t])",
        SELF_SIMILAR
    ),
    single!(
        20,
        PLANE_M,
        ["ac>0", "(l1,l2)≠(0,0)"],
        "ψ = √(2cL/a)·(1/t)·dn(ϖ|m)·exp(i[(x²+y²)/4ct − (2−m²)cL/t])",
        SELF_SIMILAR
    ),
];

const DET: &str = "a1b2−a2b1≠0";
const RAD: &str = "(b1c2−b2c1)/(a1b2−a2b1)≥0 and (a2c1−a1c2)/(a1b2−a2b1)≥0 (negated for cn, dn)";

pub static COUPLED: [FamilyDescriptor; COUPLED_COUNT as usize] = [
    coupled!(
        1,
        [],
        [DET, "(b1c2−b2c1)/(a1b2−a2b1)≥0", "(a2c1−a1c2)/(a1b2−a2b1)≥0"],
        "ψ = ε1·ι1/x, φ = ε2·ι2/x, ι1² = 2(b1c2−b2c1)/(a1b2−a2b1), ι2² = 2(a2c1−a1c2)/(a1b2−a2b1)",
        true,
        false,
        UNBOUNDED
    ),
    coupled!(
        2,
        [],
        [DET, "(b1c2−b2c1)/(a1b2−a2b1)≥0", "(a2c1−a1c2)/(a1b2−a2b1)≥0"],
        "ψ = ε1·√((b1c2−b2c1)/((a1b2−a2b1)(x²+y²))), φ = ε2·√((a2c1−a1c2)/((a1b2−a2b1)(x²+y²)))",
        true,
        false,
        UNBOUNDED
    ),
    coupled!(
        3,
        ["m"],
        [DET, RAD],
        "ψ = ε1·ι1·P(x)·e^{ik c1 t}, φ = ε2·ι2·P(x)·e^{ik c2 t}, P ∈ {tan, sec, coth, csch, sn, cn, dn} \
         with k = 2, −1, −2, 1, −(1+m²), 2m²−1, 2−m²; m only for sn, cn, dn",
        true,
        true,
        Propagation::ProfileDependent
    ),
    coupled!(
        4,
        ["d", "l"],
        ["b1=a1·d²", "b2=a2·d²"],
        "ψ = d·l·sin x·e^{i(a1(dl)²−c1)t}, φ = l·cos x·e^{i(a2(dl)²−c2)t}",
        false,
        false,
        Propagation::Eligible
    ),
    coupled!(
        5,
        ["d", "l"],
        ["b1=−a1·d²", "b2=−a2·d²"],
        "ψ = d·l·cosh x·e^{i(a1(dl)²+c1)t}, φ = l·sinh x·e^{i(a2(dl)²+c2)t}",
        false,
        false,
        Propagation::Ineligible("unbounded: cosh/sinh grow exponentially")
    ),
    coupled!(
        6,
        ["d", "l", "k1", "k2"],
        [],
        "ψ = k1·t^{i a1k1²−1/2}(t−l)^{i b1k2²}·e^{ix²/4c1t}, \
         φ = k2·t^{i a2k1²}(t−l)^{i b2k2²−1/2}·e^{i(x−d)²/4c2(t−l)}, t>max(0,l)",
        false,
        false,
        DISPERSIVE
    ),
    coupled!(
        7,
        ["l", "k1", "k2"],
        [],
        "ψ = k1·t^{i a1k1²−1/2}(t−l)^{i b1k2²}·e^{ix²/4c1t}, \
         φ = k2·t^{i a2k1²}(t−l)^{i b2k2²−1/2}·e^{iy²/4c2(t−l)}, t>max(0,l)",
        false,
        false,
        DISPERSIVE
    ),
    coupled!(
        8,
        ["d", "d1", "d2", "k1", "k2"],
        ["d1≠d2"],
        "ψ = k1·t^{i a1k1²−1/2}·((t−d1)/(t−d2))^{iB1}·e^{ix²/4c1t}, \
         φ = k2·t^{i a2k1²}(t−d1)^{iB2−1/2}(t−d2)^{−iB2−1/2}·e^{i[(x−d)²/4c2(t−d1) + y²/4c2(t−d2)]}, \
         B_j = b_j·k2²/(d1−d2), t>max(0,d1,d2)",
        false,
        false,
        DISPERSIVE
    ),
    coupled!(
        9,
        ["d", "d1", "k1", "k2"],
        [],
        "ψ = k1·t^{i a1k1²−1/2}·exp(i[x²/4c1t − b1k2²/(t−d1)]), \
         φ = k2·t^{i a2k1²}/(t−d1)·exp(i[(x−d)²+y²−4c2b2k2²]/4c2(t−d1)), t>max(0,d1)",
        false,
        false,
        DISPERSIVE
    ),
    coupled!(
        10,
        ["l1", "d1", "d2", "k1", "k2"],
        [],
        "ψ = (k1/t)·exp(i[(x²+y²−4c1a1k1²)/4c1t − b1k2²/(t−l1)]), \
         φ = k2/(t−l1)·exp(i[((x−d1)²+(y−d2)²−4c2b2k2²)/4c2(t−l1) − a2k1²/t]), t>max(0,l1)",
        false,
        false,
        DISPERSIVE
    ),
    coupled!(
        11,
        ["l1", "l2", "d1", "d2", "k1", "k2"],
        ["l1≠l2"],
        "ψ = (k1/t)·((t−l1)/(t−l2))^{iB1}·exp(i(x²+y²−4c1a1k1²)/4c1t), \
         φ = k2(t−l1)^{iB2−1/2}(t−l2)^{−iB2−1/2}·exp(i[(x−d1)²/4c2(t−l1) + (y−d2)²/4c2(t−l2) − a2k1²/t]), \
         B_j = b_j·k2²/(l1−l2)",
        false,
        false,
        DISPERSIVE
    ),
    coupled!(
        12,
        ["l", "l1", "l2", "d1", "d2", "k1", "k2"],
        ["l≠0", "l1≠l2"],
        "ψ = k1·t^{−iA1−1/2}(t−l)^{iA1−1/2}((t−l1)/(t−l2))^{iB1}·exp(i[x²/4c1t + y²/4c1(t−l)]), \
         φ = k2·t^{−iA2}(t−l)^{iA2}(t−l1)^{iB2−1/2}(t−l2)^{−iB2−1/2}·exp(i[(x−d1)²/4c2(t−l1) + (y−d2)²/4c2(t−l2)]), \
         A_j = a_j·k1²/l, B_j = b_j·k2²/(l1−l2)",
        false,
        false,
        DISPERSIVE
    ),
    coupled!(
        13,
        ["d", "l", "l1", "l2", "l3"],
        ["b1=a1·d²", "b2=a2·d²"],
        "ψ = d·l·sin ϖ/t·exp(i[(x²+y²)/4c1t + (c1L − a1(dl)²)/t]), \
         φ = l·cos ϖ/t·exp(i[(x²+y²)/4c2t + (c2L − a2(dl)²)/t])",
        false,
        false,
        SELF_SIMILAR
    ),
    coupled!(
        14,
        ["d", "l", "l1", "l2", "l3"],
        ["b1=−a1·d²", "b2=−a2·d²"],
        "ψ = d·l·cosh ϖ/t·exp(i[(x²+y²)/4c1t − (c1L + a1(dl)²)/t]), \
         φ = l·sinh ϖ/t·exp(i[(x²+y²)/4c2t − (c2L + a2(dl)²)/t])",
        false,
        false,
        SELF_SIMILAR
    ),
    coupled!(
        15,
        PLANE,
        [DET, "(l1,l2)≠(0,0)", "(b1c2−b2c1)/(a1b2−a2b1)≥0", "(a2c1−a1c2)/(a1b2−a2b1)≥0"],
        "ψ = ε1·ι1·e^{i(x²+y²)/4c1t}/(l1x+l2y+l3t), φ = ε2·ι2·e^{i(x²+y²)/4c2t}/(l1x+l2y+l3t), \
         ι_j² = 2L·(…)/(a1b2−a2b1)",
        true,
        false,
        SELF_SIMILAR
    ),
    coupled!(
        16,
        ["d1", "d2"],
        [DET, "(b1c2−b2c1)/(a1b2−a2b1)≥0", "(a2c1−a1c2)/(a1b2−a2b1)≥0"],
        "ψ = ε1·e^{i(x²+y²)/4c1t}·√((b1c2−b2c1)/((a1b2−a2b1)((x−d1t)²+(y−d2t)²))), φ analogous with c2",
        true,
        false,
        SELF_SIMILAR
    ),
    coupled!(
        17,
        PLANE_M,
        [DET, "(l1,l2)≠(0,0)", RAD],
        "ψ = ε1·ι1·(1/t)·P(ϖ)·exp(i[(x²+y²)/4c1t − k·c1L/t]), φ analogous with ε2, ι2, c2; \
         P and k as for C3; m only for sn, cn, dn",
        true,
        true,
        SELF_SIMILAR
    ),
];
