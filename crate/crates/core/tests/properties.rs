use nls_core::catalog::{instantiate, FamilyId, Physics, ProfileKind, Sign, SolutionSpec, DEFAULT_EXCLUSION};
use nls_core::fd::{first_derivative, FdOrder};
use nls_core::geometry::Point;
use nls_core::special::{complete_k, jacobi, EllipticModulus};
use nls_core::suite::{coupled_matrix, single_matrix};
use nls_core::symmetry::{SolutionDocument, SymmetryOp};
use nls_core::field::Solution;
use proptest::prelude::*;

fn modulus(m: f64) -> EllipticModulus {
    EllipticModulus::new(m).unwrap()
}

proptest! {
    #[test]
    fn pythagorean_identities(u in -50.0f64..50.0, m in 0.0f64..=1.0) {
        let j = jacobi(u, modulus(m)).unwrap();
        prop_assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() <= 1e-12);
        prop_assert!((j.dn * j.dn + m * m * j.sn * j.sn - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn periods(u in -10.0f64..10.0, m in 0.0f64..0.99) {
        let k = complete_k(modulus(m)).unwrap();
        let (a, b, c) = (jacobi(u, modulus(m)).unwrap(), jacobi(u + 4.0 * k, modulus(m)).unwrap(), jacobi(u + 2.0 * k, modulus(m)).unwrap());
        prop_assert!((a.sn - b.sn).abs() < 1e-10 && (a.cn - b.cn).abs() < 1e-10);
        prop_assert!((a.sn + c.sn).abs() < 1e-10 && (a.dn - c.dn).abs() < 1e-10);
    }

    #[test]
    fn parity(u in -10.0f64..10.0, m in 0.0f64..1.0) {
        let (a, b) = (jacobi(u, modulus(m)).unwrap(), jacobi(-u, modulus(m)).unwrap());
        prop_assert_eq!(a.sn, -b.sn);
        prop_assert_eq!((a.cn, a.dn), (b.cn, b.dn));
    }

    #[test]
    fn hyperbolic_limit(u in -4.0f64..4.0) {
        let j = jacobi(u, modulus(1.0 - 1e-9)).unwrap();
        let sech = 1.0 / u.cosh();
        prop_assert!((j.sn - u.tanh()).abs() < 1e-7);
        prop_assert!((j.cn - sech).abs() < 1e-7 && (j.dn - sech).abs() < 1e-7);
    }

    #[test]
    fn circular_limit(u in -10.0f64..10.0) {
        let j = jacobi(u, modulus(1e-9)).unwrap();
        prop_assert!((j.sn - u.sin()).abs() < 1e-9 && (j.cn - u.cos()).abs() < 1e-9 && (j.dn - 1.0).abs() < 1e-15);
    }

    #[test]
    fn first_derivatives(u in -8.0f64..8.0, m in 0.0f64..0.999) {
        let f = |v: f64| { let j = jacobi(v, modulus(m)).unwrap(); [j.sn, j.cn, j.dn] };
        let d = |k: usize| first_derivative(|v| f(v)[k], u, 1e-3, FdOrder::Eight);
        let [s, c, n] = f(u);
        prop_assert!((d(0) - c * n).abs() < 1e-9);
        prop_assert!((d(1) + s * n).abs() < 1e-9);
        prop_assert!((d(2) + m * m * s * c).abs() < 1e-9);
    }
}

fn coupled_spec(n: u8, k: [f64; 6], profile: Option<ProfileKind>, m: f64) -> SolutionSpec {
    let mut spec = SolutionSpec::new(FamilyId::Coupled(n), Physics::coupled(k[0], k[1], k[2], k[3], k[4], k[5]));
    if let Some(p) = profile {
        spec = spec.profile(p);
        if p.is_elliptic() {
            spec = spec.param("m", m);
        }
    }
    spec
}

fn exchanged(spec: &SolutionSpec) -> SolutionSpec {
    let Physics::Coupled(k) = spec.phys else { unreachable!() };
    let mut out = spec.clone();
    out.phys = Physics::Coupled(k.exchanged());
    out.signs = [spec.signs[1], spec.signs[0]];
    out
}

fn profile_strategy() -> impl Strategy<Value = Option<ProfileKind>> {
    prop::sample::select(ProfileKind::ALL.to_vec()).prop_map(Some)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Exchanging the two equations' coefficients exchanges the fields.
    #[test]
    fn swap_symmetry(
        k in prop::array::uniform6(-3.0f64..3.0),
        which in 0usize..3,
        profile in profile_strategy(),
        m in 0.05f64..0.95,
        e1 in prop::bool::ANY,
        p in (0.1f64..1.0, -3.0f64..3.0, -3.0f64..3.0),
    ) {
        let n = [1u8, 2, 3][which];
        let mut spec = coupled_spec(n, k, (n == 3).then_some(profile).flatten(), m);
        spec.signs = [if e1 { Sign::PLUS } else { Sign::MINUS }, Sign::PLUS];
        let Ok(inst) = instantiate(&spec) else { return Err(TestCaseError::reject("inadmissible")) };
        let twin = instantiate(&exchanged(&spec)).unwrap();
        let p = Point::new(p.0, p.1, p.2);
        let Ok(v) = inst.evaluate(p, 1e-6) else { return Err(TestCaseError::reject("near a pole")) };
        prop_assert_eq!(twin.evaluate(p, 1e-6).unwrap(), v.swapped());
    }

    /// Each field of a profile pair is the single-equation solution with the
    /// effective self-interaction felt by that field.
    #[test]
    fn coupled_reduces_to_single(
        k in prop::array::uniform6(-3.0f64..3.0),
        profile in profile_strategy(),
        m in 0.05f64..0.95,
        p in (0.1f64..1.0, -3.0f64..3.0, -3.0f64..3.0),
    ) {
        let kind = profile.unwrap();
        let Ok(inst) = instantiate(&coupled_spec(3, k, profile, m)) else {
            return Err(TestCaseError::reject("inadmissible"));
        };
        let [i1, i2] = inst.iota().unwrap();
        let single = [ProfileKind::Tan, ProfileKind::Sec, ProfileKind::Coth, ProfileKind::Csch, ProfileKind::Sn, ProfileKind::Cn, ProfileKind::Dn]
            .iter()
            .position(|&q| q == kind)
            .unwrap() as u8 + 3;
        let (a_eff, c) = ((k[0] * i1 * i1 + k[1] * i2 * i2) / (i1 * i1), k[2]);
        let mut s = SolutionSpec::new(FamilyId::Single(single), Physics::single(a_eff, c));
        if kind.is_elliptic() {
            s = s.param("m", m);
        }
        let reduced = instantiate(&s).unwrap();
        let p = Point::new(p.0, p.1, p.2);
        let (Ok(v), Ok(w)) = (inst.evaluate(p, 1e-6), reduced.evaluate(p, 1e-6)) else {
            return Err(TestCaseError::reject("near a pole"));
        };
        let (v, w) = (v.first(), w.first());
        prop_assert!((v - w).norm() <= 1e-12 * (1.0 + w.norm()), "{v} vs {w}");
    }

    #[test]
    fn document_json_round_trip(
        case in 0usize..100,
        d in 0.5f64..2.0,
        r in prop::array::uniform4(-2.0f64..2.0),
    ) {
        let cases: Vec<_> = single_matrix().into_iter().chain(coupled_matrix()).collect();
        let spec = cases[case % cases.len()].spec.clone();
        let mut transforms = vec![SymmetryOp::T1 { d, d1: r[0], d2: r[1], d3: r[2], d4: r[3] }, SymmetryOp::boost(r[3], r[2], r[1], r[0])];
        if spec.phys.is_coupled() {
            transforms.push(SymmetryOp::Swap);
        }
        let doc = SolutionDocument { spec, transforms };
        let text = serde_json::to_string(&doc).unwrap();
        let back: SolutionDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn modulus_of_value_equals_amplitude() {
    let mut checked = 0;
    for case in single_matrix().into_iter().chain(coupled_matrix()) {
        let inst = instantiate(&case.spec).unwrap();
        for i in 0..20 {
            let s = i as f64 / 20.0;
            let p = Point::new(0.1 + 0.9 * s, -3.0 + 6.0 * ((7.0 * s) % 1.0), -3.0 + 6.0 * ((13.0 * s) % 1.0));
            let (Ok(v), Ok(polar)) = (inst.evaluate(p, DEFAULT_EXCLUSION), inst.amplitude_phase(p, DEFAULT_EXCLUSION)) else {
                continue;
            };
            for (z, q) in v.to_vec().into_iter().zip(polar.to_vec()) {
                assert!((z.norm() - q.amplitude.abs()).abs() <= 1e-13 * (1.0 + z.norm()), "{}", case.label);
                assert!((z - q.to_complex()).norm() <= 1e-12 * (1.0 + z.norm()), "{}", case.label);
            }
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn evaluator_and_polar_channel_agree_through_transforms() {
    let inst = instantiate(&SolutionSpec::new(FamilyId::Single(9), Physics::single(1.0, 1.0)).param("m", 0.4)).unwrap();
    let ts = nls_core::symmetry::apply_all(&[SymmetryOp::scaling(1.5), SymmetryOp::boost(0.4, 0.1, -0.3, 0.2)], inst).unwrap();
    let p = Point::new(0.3, 0.7, -1.1);
    let polar = ts.polar_at(p).unwrap().first();
    assert!((polar.to_complex() - ts.value_at(p).first()).norm() < 1e-13);
}
