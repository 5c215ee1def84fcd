use std::f64::consts::TAU;

use super::form::{Amplitude, Argument, Axis, ComponentForm, PhaseTerm, Profile, ProfileKind, Shape};
use super::{
    elliptic_period, profile_law, Built, CatalogError, CoupledCoefficients, DnSecondRate, HeatDenominator, Params,
    SolutionSpec,
};

const PROPORTIONAL_TOL: f64 = 1e-12;

/// `P1 = (b1c2 − b2c1)/D` and `P2 = (a2c1 − a1c2)/D`, `D = a1b2 − a2b1`.
fn ratios(k: &CoupledCoefficients, p: &Params) -> Result<[f64; 2], CatalogError> {
    let det = k.determinant();
    p.require(det != 0.0, "a1b2−a2b1≠0")?;
    Ok([(k.b1 * k.c2 - k.b2 * k.c1) / det, (k.a2 * k.c1 - k.a1 * k.c2) / det])
}

/// Amplitudes `ι_j = ε_j·√(factor·g·θ·P_j)` after checking the sign of each
/// `P_j` against the profile class, then substituting back into
/// `a_j·ι1² + b_j·ι2² + factor·g·c_j·θ = 0`.
fn amplitudes(
    k: &CoupledCoefficients,
    spec: &SolutionSpec,
    p: &Params,
    class: f64,
    factor: f64,
    g: f64,
    theta: f64,
) -> Result<[f64; 2], CatalogError> {
    let ratio = ratios(k, p)?;
    let rel = if class > 0.0 { "≥0" } else { "≤0" };
    p.require(class * ratio[0] >= 0.0, &format!("(b1c2−b2c1)/(a1b2−a2b1){rel}"))?;
    p.require(class * ratio[1] >= 0.0, &format!("(a2c1−a1c2)/(a1b2−a2b1){rel}"))?;
    let iota = [0, 1].map(|j| spec.signs[j].value() * (factor * g * theta * ratio[j]).sqrt());
    let sq = iota.map(|v| v * v);
    let r1 = k.a1 * sq[0] + k.b1 * sq[1] + factor * g * k.c1 * theta;
    let r2 = k.a2 * sq[0] + k.b2 * sq[1] + factor * g * k.c2 * theta;
    let scale = [k.a1 * sq[0], k.b1 * sq[1], k.a2 * sq[0], k.b2 * sq[1], factor * g * theta * k.c1, factor * g * theta * k.c2]
        .iter()
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let worst = r1.abs().max(r2.abs()) / scale;
    if worst > 1e-12 {
        return Err(CatalogError::InconsistentAmplitudes(worst));
    }
    Ok(iota)
}

fn proportional(p: &Params, b: f64, a: f64, d2: f64, predicate: &str) -> Result<(), CatalogError> {
    let target = a * d2;
    let scale = b.abs().max(target.abs());
    p.require((b - target).abs() <= PROPORTIONAL_TOL * scale, predicate)
}

fn heat(axis: Axis, centre: f64, denom: f64, tau: f64) -> PhaseTerm {
    PhaseTerm::Heat { axis, centre, denom, tau }
}

fn log(coeff: f64, tau: f64) -> PhaseTerm {
    PhaseTerm::Log { coeff, tau }
}

fn pole(coeff: f64, tau: f64) -> PhaseTerm {
    PhaseTerm::Pole { coeff, tau }
}

fn unit(scale: f64) -> Amplitude {
    Amplitude::new(scale, Shape::Unit)
}

pub(super) fn build(n: u8, k: CoupledCoefficients, spec: &SolutionSpec, p: &Params) -> Result<Built, CatalogError> {
    let CoupledCoefficients { a1, b1, c1, a2, b2, c2 } = k;
    let mut iota = None;
    let mut x_period = None;

    let forms = match n {
        1 => {
            let i = amplitudes(&k, spec, p, 1.0, 2.0, 1.0, 1.0)?;
            iota = Some(i);
            let shape = Shape::Profile(Profile::Reciprocal, Argument::X);
            vec![ComponentForm::new(Amplitude::new(i[0], shape)), ComponentForm::new(Amplitude::new(i[1], shape))]
        }
        2 | 16 => {
            let (vx, vy) = if n == 16 { (p.get("d1")?, p.get("d2")?) } else { (0.0, 0.0) };
            let i = amplitudes(&k, spec, p, 1.0, 1.0, 1.0, 1.0)?;
            iota = Some(i);
            let shape = Shape::InverseRadius { vx, vy };
            let mut psi = ComponentForm::new(Amplitude::new(i[0], shape));
            let mut phi = ComponentForm::new(Amplitude::new(i[1], shape));
            if n == 16 {
                psi = psi.radial_heat(4.0 * c1);
                phi = phi.radial_heat(4.0 * c2);
            }
            vec![psi, phi]
        }
        3 | 17 => {
            let kind = spec.profile.expect("profile presence checked by instantiate");
            let m = if kind.is_elliptic() { Some(p.modulus()?) } else { None };
            let law = profile_law(kind, m);
            let profile = Profile::from_kind(kind, m);
            let g = profile.cubic_coefficient();
            if n == 3 {
                let i = amplitudes(&k, spec, p, law.class, 2.0, g, 1.0)?;
                iota = Some(i);
                if let Some(m) = m {
                    x_period = elliptic_period(kind, m);
                }
                let second_rate = match (kind, spec.variant.dn_second_rate) {
                    (ProfileKind::Dn, DnSecondRate::First) => law.rate * c1,
                    _ => law.rate * c2,
                };
                let shape = Shape::Profile(profile, Argument::X);
                vec![
                    ComponentForm::new(Amplitude::new(i[0], shape)).with(PhaseTerm::Rate(law.rate * c1)),
                    ComponentForm::new(Amplitude::new(i[1], shape)).with(PhaseTerm::Rate(second_rate)),
                ]
            } else {
                let (l1, l2, l3) = (p.get("l1")?, p.get("l2")?, p.get("l3")?);
                p.nondegenerate(l1 != 0.0 || l2 != 0.0, "(l1,l2)≠(0,0)")?;
                let big_l = l1 * l1 + l2 * l2;
                let i = amplitudes(&k, spec, p, law.class, 2.0, g, big_l)?;
                iota = Some(i);
                let shape = Shape::Profile(profile, Argument::SelfSimilar { l1, l2, l3 });
                [(i[0], c1), (i[1], c2)]
                    .map(|(amp, c)| {
                        ComponentForm::new(Amplitude::new(amp, shape).power(0.0, -1.0))
                            .radial_heat(4.0 * c)
                            .with(pole(-law.rate * c * big_l, 0.0))
                    })
                    .to_vec()
            }
        }
        4 | 5 | 13 | 14 => {
            let (d, l) = (p.get("d")?, p.get("l")?);
            let trig = matches!(n, 4 | 13);
            let (sign, pred1, pred2) =
                if trig { (1.0, "b1=a1·d²", "b2=a2·d²") } else { (-1.0, "b1=−a1·d²", "b2=−a2·d²") };
            proportional(p, b1, a1, sign * d * d, pred1)?;
            proportional(p, b2, a2, sign * d * d, pred2)?;
            let (first, second) = if trig { (Profile::Sin, Profile::Cos) } else { (Profile::Cosh, Profile::Sinh) };
            let dl2 = (d * l) * (d * l);
            // Stationary rate of the unit-gradient form is a_j(dl)² − sign·c_j.
            if n <= 5 {
                if trig {
                    x_period = Some(TAU);
                }
                vec![
                    ComponentForm::new(Amplitude::new(d * l, Shape::Profile(first, Argument::X)))
                        .with(PhaseTerm::Rate(a1 * dl2 - sign * c1)),
                    ComponentForm::new(Amplitude::new(l, Shape::Profile(second, Argument::X)))
                        .with(PhaseTerm::Rate(a2 * dl2 - sign * c2)),
                ]
            } else {
                let (l1, l2, l3) = (p.get("l1")?, p.get("l2")?, p.get("l3")?);
                let big_l = l1 * l1 + l2 * l2;
                let arg = Argument::SelfSimilar { l1, l2, l3 };
                vec![
                    ComponentForm::new(Amplitude::new(d * l, Shape::Profile(first, arg)).power(0.0, -1.0))
                        .radial_heat(4.0 * c1)
                        .with(pole(sign * c1 * big_l - a1 * dl2, 0.0)),
                    ComponentForm::new(Amplitude::new(l, Shape::Profile(second, arg)).power(0.0, -1.0))
                        .radial_heat(4.0 * c2)
                        .with(pole(sign * c2 * big_l - a2 * dl2, 0.0)),
                ]
            }
        }
        6 | 7 => {
            let (l, k1, k2) = (p.get("l")?, p.get("k1")?, p.get("k2")?);
            let d = if n == 6 { p.get("d")? } else { 0.0 };
            let q = match spec.variant.heat_denominator {
                HeatDenominator::Quarter => 4.0,
                HeatDenominator::Half => 2.0,
            };
            let (s1, s2) = (k1 * k1, k2 * k2);
            let second_heat = if n == 6 { heat(Axis::X, d, q * c2, l) } else { heat(Axis::Y, 0.0, q * c2, l) };
            vec![
                ComponentForm::new(unit(k1).power(0.0, -0.5))
                    .with(log(a1 * s1, 0.0))
                    .with(log(b1 * s2, l))
                    .with(heat(Axis::X, 0.0, q * c1, 0.0)),
                ComponentForm::new(unit(k2).power(l, -0.5))
                    .with(log(a2 * s1, 0.0))
                    .with(log(b2 * s2, l))
                    .with(second_heat),
            ]
        }
        8 => {
            let (d, d1, d2, k1, k2) = (p.get("d")?, p.get("d1")?, p.get("d2")?, p.get("k1")?, p.get("k2")?);
            p.nondegenerate(d1 != d2, "d1≠d2")?;
            let (s1, s2) = (k1 * k1, k2 * k2);
            let big_b = [b1, b2].map(|b| b * s2 / (d1 - d2));
            vec![
                ComponentForm::new(unit(k1).power(0.0, -0.5))
                    .with(log(a1 * s1, 0.0))
                    .with(log(big_b[0], d1))
                    .with(log(-big_b[0], d2))
                    .with(heat(Axis::X, 0.0, 4.0 * c1, 0.0)),
                ComponentForm::new(unit(k2).power(d1, -0.5).power(d2, -0.5))
                    .with(log(a2 * s1, 0.0))
                    .with(log(big_b[1], d1))
                    .with(log(-big_b[1], d2))
                    .with(heat(Axis::X, d, 4.0 * c2, d1))
                    .with(heat(Axis::Y, 0.0, 4.0 * c2, d2)),
            ]
        }
        9 => {
            let (d, d1, k1, k2) = (p.get("d")?, p.get("d1")?, p.get("k1")?, p.get("k2")?);
            let (s1, s2) = (k1 * k1, k2 * k2);
            vec![
                ComponentForm::new(unit(k1).power(0.0, -0.5))
                    .with(log(a1 * s1, 0.0))
                    .with(pole(-b1 * s2, d1))
                    .with(heat(Axis::X, 0.0, 4.0 * c1, 0.0)),
                ComponentForm::new(unit(k2).power(d1, -1.0))
                    .with(log(a2 * s1, 0.0))
                    .with(pole(-b2 * s2, d1))
                    .with(heat(Axis::X, d, 4.0 * c2, d1))
                    .with(heat(Axis::Y, 0.0, 4.0 * c2, d1)),
            ]
        }
        10 => {
            let (l1, d1, d2, k1, k2) = (p.get("l1")?, p.get("d1")?, p.get("d2")?, p.get("k1")?, p.get("k2")?);
            let (s1, s2) = (k1 * k1, k2 * k2);
            vec![
                ComponentForm::new(unit(k1).power(0.0, -1.0))
                    .radial_heat(4.0 * c1)
                    .with(pole(-a1 * s1, 0.0))
                    .with(pole(-b1 * s2, l1)),
                ComponentForm::new(unit(k2).power(l1, -1.0))
                    .with(heat(Axis::X, d1, 4.0 * c2, l1))
                    .with(heat(Axis::Y, d2, 4.0 * c2, l1))
                    .with(pole(-a2 * s1, 0.0))
                    .with(pole(-b2 * s2, l1)),
            ]
        }
        11 | 12 => {
            let (l1, l2, d1, d2) = (p.get("l1")?, p.get("l2")?, p.get("d1")?, p.get("d2")?);
            let (k1, k2) = (p.get("k1")?, p.get("k2")?);
            let l = if n == 12 { p.get("l")? } else { 0.0 };
            if n == 12 {
                p.nondegenerate(l != 0.0, "l≠0")?;
            }
            p.nondegenerate(l1 != l2, "l1≠l2")?;
            let (s1, s2) = (k1 * k1, k2 * k2);
            let big_b = [b1, b2].map(|b| b * s2 / (l1 - l2));
            let psi = if n == 11 {
                ComponentForm::new(unit(k1).power(0.0, -1.0))
                    .radial_heat(4.0 * c1)
                    .with(pole(-a1 * s1, 0.0))
            } else {
                let big_a = a1 * s1 / l;
                ComponentForm::new(unit(k1).power(0.0, -0.5).power(l, -0.5))
                    .with(log(-big_a, 0.0))
                    .with(log(big_a, l))
                    .with(heat(Axis::X, 0.0, 4.0 * c1, 0.0))
                    .with(heat(Axis::Y, 0.0, 4.0 * c1, l))
            };
            let mut phi = ComponentForm::new(unit(k2).power(l1, -0.5).power(l2, -0.5))
                .with(heat(Axis::X, d1, 4.0 * c2, l1))
                .with(heat(Axis::Y, d2, 4.0 * c2, l2));
            phi = if n == 11 {
                phi.with(pole(-a2 * s1, 0.0))
            } else {
                let big_a = a2 * s1 / l;
                phi.with(log(-big_a, 0.0)).with(log(big_a, l))
            };
            vec![
                psi.with(log(big_b[0], l1)).with(log(-big_b[0], l2)),
                phi.with(log(big_b[1], l1)).with(log(-big_b[1], l2)),
            ]
        }
        15 => {
            let (l1, l2, l3) = (p.get("l1")?, p.get("l2")?, p.get("l3")?);
            p.nondegenerate(l1 != 0.0 || l2 != 0.0, "(l1,l2)≠(0,0)")?;
            let big_l = l1 * l1 + l2 * l2;
            let i = amplitudes(&k, spec, p, 1.0, 2.0, 1.0, big_l)?;
            iota = Some(i);
            let shape = Shape::Profile(Profile::Reciprocal, Argument::SelfSimilar { l1, l2, l3 });
            vec![
                ComponentForm::new(Amplitude::new(i[0], shape).power(0.0, -1.0)).radial_heat(4.0 * c1),
                ComponentForm::new(Amplitude::new(i[1], shape).power(0.0, -1.0)).radial_heat(4.0 * c2),
            ]
        }
        _ => unreachable!("family ids are range-checked"),
    };
    Ok(Built { forms, iota, x_period })
}
