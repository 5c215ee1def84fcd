//! Default certification matrix: two admissible parameter sets per family,
//! every profile for the profile-selecting coupled families.

use crate::catalog::{FamilyId, Physics, ProfileKind, SolutionSpec};

#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub label: String,
    pub spec: SolutionSpec,
}

fn s(n: u8, a: f64, c: f64) -> SolutionSpec {
    SolutionSpec::new(FamilyId::Single(n), Physics::single(a, c))
}

fn c(n: u8, k: [f64; 6]) -> SolutionSpec {
    SolutionSpec::new(FamilyId::Coupled(n), Physics::coupled(k[0], k[1], k[2], k[3], k[4], k[5]))
}

fn with(mut spec: SolutionSpec, params: &[(&str, f64)]) -> SolutionSpec {
    for &(k, v) in params {
        spec = spec.param(k, v);
    }
    spec
}

/// Coupled coefficients with `(P1, P2) = (1, 2)` (the worked example).
pub const WORKED: [f64; 6] = [1.0, -1.0, 1.0, 3.0, -2.0, 1.0];
/// `P1, P2 > 0`, dispersions large enough for the heat-kernel phases.
const POS_A: [f64; 6] = [1.0, -1.0, 2.0, 3.0, -2.0, 2.0];
const POS_B: [f64; 6] = [-4.0, 0.5, 3.25, 0.5, -3.0, 4.0];
/// `P1, P2 < 0`, for cn and dn.
const NEG_A: [f64; 6] = [-1.0, 1.0, 2.0, -3.0, 2.0, 2.0];
const NEG_B: [f64; 6] = [-4.0, 0.5, -3.25, 0.5, -3.0, -4.0];
const GENERIC_A: [f64; 6] = [1.0, 0.5, 2.0, -0.5, 1.0, 2.5];
const GENERIC_B: [f64; 6] = [-1.0, 2.0, -2.2, 0.3, -0.6, -2.0];

fn single_cases() -> Vec<SolutionSpec> {
    let mut v = vec![
        with(s(0, 1.0, 2.0), &[("d", 1.0)]),
        with(s(0, -1.5, 2.5), &[("d", 0.7)]),
        s(1, -2.0, 1.0),
        s(1, 1.0, -0.5),
        s(2, -2.0, 1.0),
        s(2, 0.5, -1.5),
    ];
    for n in 3..=6 {
        v.push(s(n, -2.0, 1.0));
        v.push(s(n, 1.0, -0.7));
    }
    v.extend([
        with(s(7, -2.0, 1.0), &[("m", 0.3)]),
        with(s(7, 1.5, -1.0), &[("m", 0.8)]),
        with(s(8, 1.0, 1.0), &[("m", 0.3)]),
        with(s(8, -1.0, -2.0), &[("m", 0.8)]),
        with(s(9, 1.0, 1.0), &[("m", 0.3)]),
        with(s(9, -2.0, -0.5), &[("m", 0.8)]),
        with(s(10, 1.0, 1.0), &[("b", 1.0)]),
        with(s(10, -2.0, 1.5), &[("b", 0.6)]),
        with(s(11, 1.0, 1.0), &[("b", 1.0), ("d", -0.5)]),
        with(s(11, -1.0, 2.0), &[("b", 0.8), ("d", -1.2)]),
        with(s(12, -1.0, 2.0), &[("l1", 0.5), ("l2", -0.3), ("l3", 0.8)]),
        with(s(12, 2.0, -2.5), &[("l1", 0.0), ("l2", 0.4), ("l3", -0.2)]),
        with(s(13, -1.0, 2.0), &[("l4", 0.5), ("l5", -0.3)]),
        with(s(13, 1.0, -2.0), &[("l4", 0.0), ("l5", 0.0)]),
    ]);
    let plane_a = [("l1", 0.3), ("l2", 0.2), ("l3", 0.5)];
    let plane_b = [("l1", -0.2), ("l2", 0.25), ("l3", 1.0)];
    for n in 14..=17 {
        v.push(with(s(n, -1.0, 2.0), &plane_a));
        v.push(with(s(n, 1.5, -2.0), &plane_b));
    }
    v.push(with(s(18, -1.0, 2.0), &[plane_a.as_slice(), &[("m", 0.3)]].concat()));
    v.push(with(s(18, 1.5, -2.0), &[plane_b.as_slice(), &[("m", 0.8)]].concat()));
    for n in 19..=20 {
        v.push(with(s(n, 1.0, 2.0), &[plane_a.as_slice(), &[("m", 0.3)]].concat()));
        v.push(with(s(n, -1.0, -2.5), &[plane_b.as_slice(), &[("m", 0.8)]].concat()));
    }
    v
}

fn profile_pair(n: u8, kind: ProfileKind, extra: &[(&str, f64)]) -> [SolutionSpec; 2] {
    let (ka, kb) = match kind {
        ProfileKind::Cn | ProfileKind::Dn => (NEG_A, NEG_B),
        _ if n == 3 => (WORKED, POS_B),
        _ => (POS_A, POS_B),
    };
    [(ka, 0.3), (kb, 0.8)].map(|(k, m)| {
        let mut spec = with(c(n, k), extra).profile(kind);
        if kind.is_elliptic() {
            spec = spec.param("m", m);
        }
        spec
    })
}

fn coupled_cases() -> Vec<SolutionSpec> {
    let mut v = vec![c(1, WORKED), c(1, POS_B), c(2, WORKED), c(2, POS_B)];
    for kind in ProfileKind::ALL {
        v.extend(profile_pair(3, kind, &[]));
    }
    let plane = [("l1", 0.3), ("l2", 0.2), ("l3", 0.5)];
    v.extend([
        with(c(4, [1.0, 0.25, 1.0, -2.0, -0.5, 1.5]), &[("d", 0.5), ("l", 1.2)]),
        with(c(4, [0.8, 1.8, -1.0, 1.0, 2.25, 0.7]), &[("d", 1.5), ("l", 0.4)]),
        with(c(5, [1.0, -0.25, 1.0, -2.0, 0.5, 1.5]), &[("d", 0.5), ("l", 1.0)]),
        with(c(5, [0.5, -0.72, -1.0, 1.0, -1.44, 0.8]), &[("d", 1.2), ("l", 0.3)]),
        with(c(6, GENERIC_A), &[("d", 0.5), ("l", -0.5), ("k1", 1.0), ("k2", 0.7)]),
        with(c(6, GENERIC_B), &[("d", -1.0), ("l", -1.0), ("k1", 0.6), ("k2", 1.1)]),
        with(c(7, GENERIC_A), &[("l", -0.5), ("k1", 1.0), ("k2", 0.7)]),
        with(c(7, GENERIC_B), &[("l", -1.0), ("k1", 0.6), ("k2", 1.1)]),
        with(c(8, GENERIC_A), &[("d", 0.3), ("d1", -0.4), ("d2", -1.0), ("k1", 1.0), ("k2", 0.8)]),
        with(c(8, GENERIC_B), &[("d", -0.5), ("d1", -1.5), ("d2", -0.2), ("k1", 0.7), ("k2", 1.2)]),
        with(c(9, GENERIC_A), &[("d", 0.3), ("d1", -0.4), ("k1", 1.0), ("k2", 0.8)]),
        with(c(9, GENERIC_B), &[("d", -0.5), ("d1", -1.5), ("k1", 0.7), ("k2", 1.2)]),
        with(c(10, GENERIC_A), &[("l1", -0.5), ("d1", 0.3), ("d2", -0.2), ("k1", 1.0), ("k2", 0.7)]),
        with(c(10, GENERIC_B), &[("l1", -1.0), ("d1", -0.6), ("d2", 0.4), ("k1", 0.6), ("k2", 1.1)]),
        with(
            c(11, GENERIC_A),
            &[("l1", -0.3), ("l2", -0.9), ("d1", 0.3), ("d2", -0.2), ("k1", 1.0), ("k2", 0.7)],
        ),
        with(
            c(11, GENERIC_B),
            &[("l1", -1.2), ("l2", -0.4), ("d1", -0.6), ("d2", 0.4), ("k1", 0.6), ("k2", 1.1)],
        ),
        with(
            c(12, GENERIC_A),
            &[("l", -0.5), ("l1", -0.3), ("l2", -0.9), ("d1", 0.3), ("d2", -0.2), ("k1", 1.0), ("k2", 0.7)],
        ),
        with(
            c(12, GENERIC_B),
            &[("l", -1.1), ("l1", -1.2), ("l2", -0.4), ("d1", -0.6), ("d2", 0.4), ("k1", 0.6), ("k2", 1.1)],
        ),
        with(c(13, [1.0, 0.25, 2.0, -2.0, -0.5, 2.5]), &[&[("d", 0.5), ("l", 1.2)], plane.as_slice()].concat()),
        with(c(13, [0.8, 1.8, -2.0, 1.0, 2.25, 3.0]), &[&[("d", 1.5), ("l", 0.4)], plane.as_slice()].concat()),
        with(c(14, [1.0, -0.25, 2.0, -2.0, 0.5, 2.5]), &[&[("d", 0.5), ("l", 1.0)], plane.as_slice()].concat()),
        with(c(14, [0.5, -0.72, -2.2, 1.0, -1.44, 2.0]), &[&[("d", 1.2), ("l", 0.3)], plane.as_slice()].concat()),
        with(c(15, POS_A), &plane),
        with(c(15, POS_B), &[("l1", 0.0), ("l2", 0.4), ("l3", -0.2)]),
        with(c(16, POS_A), &[("d1", 0.5), ("d2", -0.3)]),
        with(c(16, POS_B), &[("d1", 0.0), ("d2", 0.0)]),
    ]);
    for kind in ProfileKind::ALL {
        v.extend(profile_pair(17, kind, &plane));
    }
    v
}

fn label(spec: &SolutionSpec) -> String {
    match spec.profile {
        Some(p) => format!("{}:{}", spec.family, p.name()),
        None => spec.family.to_string(),
    }
}

/// Every single-equation case (42 instances).
pub fn single_matrix() -> Vec<SuiteCase> {
    single_cases().into_iter().map(|spec| SuiteCase { label: label(&spec), spec }).collect()
}

/// Every coupled case.
pub fn coupled_matrix() -> Vec<SuiteCase> {
    coupled_cases().into_iter().map(|spec| SuiteCase { label: label(&spec), spec }).collect()
}
