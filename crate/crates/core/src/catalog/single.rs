use super::form::{Amplitude, Argument, Axis, ComponentForm, PhaseTerm, Profile, ProfileKind, Shape};
use super::{elliptic_period, profile_law, Built, CatalogError, Params, SingleCoefficients};

const X_PROFILES: [ProfileKind; 7] = [
    ProfileKind::Tan,
    ProfileKind::Sec,
    ProfileKind::Coth,
    ProfileKind::Csch,
    ProfileKind::Sn,
    ProfileKind::Cn,
    ProfileKind::Dn,
];

fn heat(axis: Axis, c: f64, tau: f64) -> PhaseTerm {
    PhaseTerm::Heat { axis, centre: 0.0, denom: 4.0 * c, tau }
}

pub(super) fn build(n: u8, k: SingleCoefficients, p: &Params) -> Result<Built, CatalogError> {
    let SingleCoefficients { a, c } = k;
    // Linear coefficient in the amplitude law ι² = f·g·θ·P for one field.
    let lin = -c / a;
    let mut x_period = None;

    let form = match n {
        0 => {
            let d = p.get("d")?;
            ComponentForm::new(Amplitude::new(d, Shape::Unit).power(0.0, -1.0))
                .radial_heat(4.0 * c)
                .with(PhaseTerm::Pole { coeff: -a * d * d, tau: 0.0 })
        }
        1 => {
            p.require(a * c < 0.0, "ac<0")?;
            ComponentForm::new(Amplitude::new((2.0 * lin).sqrt(), Shape::Profile(Profile::Reciprocal, Argument::X)))
        }
        2 => {
            p.require(a * c < 0.0, "ac<0")?;
            ComponentForm::new(Amplitude::new(lin.sqrt(), Shape::InverseRadius { vx: 0.0, vy: 0.0 }))
        }
        3..=9 => {
            let kind = X_PROFILES[n as usize - 3];
            let m = if kind.is_elliptic() { Some(p.modulus()?) } else { None };
            let law = profile_law(kind, m);
            p.require(law.class * lin > 0.0, if law.class > 0.0 { "ac<0" } else { "ac>0" })?;
            let profile = Profile::from_kind(kind, m);
            if let Some(m) = m {
                x_period = elliptic_period(kind, m);
            }
            let scale = (2.0 * profile.cubic_coefficient() * lin).sqrt();
            ComponentForm::new(Amplitude::new(scale, Shape::Profile(profile, Argument::X)))
                .with(PhaseTerm::Rate(law.rate * c))
        }
        10 => {
            let b = p.get("b")?;
            ComponentForm::new(Amplitude::new(b, Shape::Unit).power(0.0, -0.5))
                .with(PhaseTerm::Log { coeff: a * b * b, tau: 0.0 })
                .with(heat(Axis::X, c, 0.0))
        }
        11 => {
            let b = p.get("b")?;
            let d = p.get("d")?;
            p.nondegenerate(d != 0.0, "d≠0")?;
            let s = a * b * b / d;
            ComponentForm::new(Amplitude::new(b, Shape::Unit).power(0.0, -0.5).power(d, -0.5))
                .with(PhaseTerm::Log { coeff: -s, tau: 0.0 })
                .with(PhaseTerm::Log { coeff: s, tau: d })
                .with(heat(Axis::X, c, 0.0))
                .with(heat(Axis::Y, c, d))
        }
        12 => {
            let (l1, l2, l3) = (p.get("l1")?, p.get("l2")?, p.get("l3")?);
            p.require(a * c < 0.0, "ac<0")?;
            p.nondegenerate(l1 != 0.0 || l2 != 0.0, "(l1,l2)≠(0,0)")?;
            let big_l = l1 * l1 + l2 * l2;
            let arg = Argument::SelfSimilar { l1, l2, l3 };
            ComponentForm::new(
                Amplitude::new((2.0 * big_l * lin).sqrt(), Shape::Profile(Profile::Reciprocal, arg)).power(0.0, -1.0),
            )
            .radial_heat(4.0 * c)
        }
        13 => {
            let (vx, vy) = (p.get("l4")?, p.get("l5")?);
            p.require(a * c < 0.0, "ac<0")?;
            ComponentForm::new(Amplitude::new(lin.sqrt(), Shape::InverseRadius { vx, vy })).radial_heat(4.0 * c)
        }
        14..=20 => {
            let kind = X_PROFILES[n as usize - 14];
            let (l1, l2, l3) = (p.get("l1")?, p.get("l2")?, p.get("l3")?);
            let m = if kind.is_elliptic() { Some(p.modulus()?) } else { None };
            let law = profile_law(kind, m);
            p.require(law.class * lin > 0.0, if law.class > 0.0 { "ac<0" } else { "ac>0" })?;
            p.nondegenerate(l1 != 0.0 || l2 != 0.0, "(l1,l2)≠(0,0)")?;
            let big_l = l1 * l1 + l2 * l2;
            let profile = Profile::from_kind(kind, m);
            let scale = (2.0 * profile.cubic_coefficient() * big_l * lin).sqrt();
            let arg = Argument::SelfSimilar { l1, l2, l3 };
            ComponentForm::new(Amplitude::new(scale, Shape::Profile(profile, arg)).power(0.0, -1.0))
                .radial_heat(4.0 * c)
                .with(PhaseTerm::Pole { coeff: -law.rate * c * big_l, tau: 0.0 })
        }
        _ => unreachable!("family ids are range-checked"),
    };
    Ok(Built { forms: vec![form], iota: None, x_period })
}
