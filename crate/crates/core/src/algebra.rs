//! Mass functionals as values, their scaling thresholds `λᵢ`, and the
//! twisted product `(m₁ * m₂)(Σ, γ, H) = m₁(Σ, γ, (λ₁/λ₂) H)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::critical;
use crate::error::{Error, Result};
use crate::masses::{self, BoundaryIntegrals};
use crate::schwarzschild;
use crate::surface::{self, BartnikData};

/// Relative tolerance on bisected thresholds.
pub const LAMBDA_TOLERANCE: f64 = 1e-10;
const DOUBLING_CAP: i32 = 64;
/// Allowed disagreement between a bisected star threshold and `λ₂`.
const THRESHOLD_CROSS_CHECK: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaRule {
    ClosedFormHawking,
    ClosedFormBrownYork,
    CriticalParameter,
    Bisection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MassFunctional {
    Hawking,
    BrownYork,
    Miao,
    /// `√(|Σ|/16π)(1 − 1/λ₀²)`.
    Critical,
    /// Bartnik inner mass; available on round data with constant `H`, where
    /// it is the areal Schwarzschild mass.
    Inner,
    Star(Box<MassFunctional>, Box<MassFunctional>),
}

/// A mass value, with an enclosing interval when it depends on a
/// bracketed `λ₀`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[f64; 2]>,
}

impl Evaluation {
    fn point(value: f64) -> Self {
        Evaluation {
            value,
            bounds: None,
        }
    }

    fn lower(&self) -> f64 {
        self.bounds.map_or(self.value, |b| b[0])
    }

    fn upper(&self) -> f64 {
        self.bounds.map_or(self.value, |b| b[1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[f64; 2]>,
}

impl Threshold {
    fn point(value: f64) -> Self {
        Threshold {
            value,
            bounds: None,
        }
    }

    fn lower(&self) -> f64 {
        self.bounds.map_or(self.value, |b| b[0])
    }

    fn upper(&self) -> f64 {
        self.bounds.map_or(self.value, |b| b[1])
    }
}

pub fn star(f1: MassFunctional, f2: MassFunctional) -> MassFunctional {
    MassFunctional::Star(Box::new(f1), Box::new(f2))
}

pub fn critical_functional() -> MassFunctional {
    MassFunctional::Critical
}

impl MassFunctional {
    pub fn lambda_rule(&self) -> LambdaRule {
        match self {
            MassFunctional::Hawking => LambdaRule::ClosedFormHawking,
            MassFunctional::BrownYork => LambdaRule::ClosedFormBrownYork,
            MassFunctional::Critical | MassFunctional::Inner => LambdaRule::CriticalParameter,
            MassFunctional::Miao | MassFunctional::Star(..) => LambdaRule::Bisection,
        }
    }

    pub fn evaluate(&self, data: &BartnikData) -> Result<Evaluation> {
        match self {
            MassFunctional::Hawking => Ok(Evaluation::point(masses::hawking(data)?.value)),
            MassFunctional::BrownYork => Ok(Evaluation::point(masses::brown_york(data)?.value)),
            MassFunctional::Miao => Ok(Evaluation::point(masses::miao(data)?.value)),
            MassFunctional::Critical => {
                let area = surface::area(&data.profile);
                let t = critical_threshold(data)?;
                let m = |l| masses::mass_from_parameter(area, l);
                Ok(Evaluation {
                    value: m(t.value),
                    bounds: t.bounds.map(|[lo, hi]| [m(lo), m(hi)]),
                })
            }
            MassFunctional::Inner => {
                let h = round_h(data).ok_or(Error::InnerMassUnavailable)?;
                let matched = schwarzschild::match_round_data(surface::area(&data.profile), h)?;
                Ok(Evaluation::point(matched.m_areal))
            }
            MassFunctional::Star(f1, f2) => {
                let t1 = lambda_of(f1, data)?;
                let t2 = lambda_of(f2, data)?;
                let center = f1.evaluate(&surface::scale_h(data, t1.value / t2.value)?)?;
                if t1.bounds.is_none() && t2.bounds.is_none() {
                    return Ok(center);
                }
                // f1 decreases in its H scale, so the extreme ratios give
                // the extreme values.
                let low = f1.evaluate(&surface::scale_h(data, t1.upper() / t2.lower())?)?;
                let high = f1.evaluate(&surface::scale_h(data, t1.lower() / t2.upper())?)?;
                Ok(Evaluation {
                    value: center.value,
                    bounds: Some([
                        low.lower().min(center.lower()),
                        high.upper().max(center.upper()),
                    ]),
                })
            }
        }
    }
}

impl fmt::Display for MassFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MassFunctional::Hawking => write!(f, "hawking"),
            MassFunctional::BrownYork => write!(f, "brown-york"),
            MassFunctional::Miao => write!(f, "miao"),
            MassFunctional::Critical => write!(f, "critical"),
            MassFunctional::Inner => write!(f, "inner"),
            MassFunctional::Star(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

impl FromStr for MassFunctional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hawking" => Ok(MassFunctional::Hawking),
            "brown-york" | "brown_york" => Ok(MassFunctional::BrownYork),
            "miao" => Ok(MassFunctional::Miao),
            "critical" => Ok(MassFunctional::Critical),
            "inner" => Ok(MassFunctional::Inner),
            other => Err(Error::InvalidSpec(format!("unknown functional `{other}`"))),
        }
    }
}

fn round_h(data: &BartnikData) -> Option<f64> {
    let report = surface::validate(data);
    if report.diagnostics.is_empty() && report.is_round && report.is_constant_h {
        let h = data.profile.mean_curvature();
        Some(h.iter().sum::<f64>() / h.len() as f64)
    } else {
        None
    }
}

/// `λ₀` exactly on round data, otherwise the certified bracket with the
/// upper end as representative.
fn critical_threshold(data: &BartnikData) -> Result<Threshold> {
    if round_h(data).is_some() {
        return Ok(Threshold::point(critical::exact_round(data)?));
    }
    let b = critical::bracket(data)?;
    match b.exact {
        Some(x) => Ok(Threshold::point(x)),
        None => Ok(Threshold {
            value: b.upper,
            bounds: Some([b.lower, b.upper]),
        }),
    }
}

/// `λᵢ = sup{λ > 0 : mᵢ(Σ, γ, λH) ≥ 0}`.
pub fn lambda_of(f: &MassFunctional, data: &BartnikData) -> Result<Threshold> {
    match f {
        MassFunctional::Hawking => {
            let i = BoundaryIntegrals::of(data);
            Ok(Threshold::point(
                (16.0 * std::f64::consts::PI / i.total_h_sq).sqrt(),
            ))
        }
        MassFunctional::BrownYork => Ok(Threshold::point(critical::shi_tam_upper(data)?)),
        MassFunctional::Critical => critical_threshold(data),
        MassFunctional::Inner => {
            if round_h(data).is_none() {
                return Err(Error::InnerMassUnavailable);
            }
            critical_threshold(data)
        }
        MassFunctional::Miao => bisect_threshold(f, data),
        MassFunctional::Star(_, f2) => {
            let expected = lambda_of(f2, data)?;
            if expected.bounds.is_some() {
                return Ok(expected);
            }
            let bisected = bisect_threshold(f, data)?;
            if (bisected.value - expected.value).abs() > THRESHOLD_CROSS_CHECK * expected.value {
                return Err(Error::ThresholdMismatch {
                    name: f.to_string(),
                    bisected: bisected.value,
                    expected: expected.value,
                });
            }
            Ok(bisected)
        }
    }
}

/// Sign-change search on `λ ↦ m(Σ, γ, λH)`: doubling or halving from 1,
/// then bisection to a relative width of `LAMBDA_TOLERANCE`.
fn bisect_threshold(f: &MassFunctional, data: &BartnikData) -> Result<Threshold> {
    let g =
        |lambda: f64| -> Result<f64> { Ok(f.evaluate(&surface::scale_h(data, lambda)?)?.value) };
    let (mut lo, mut hi);
    let at_one = g(1.0)?;
    if at_one >= 0.0 {
        lo = 1.0;
        hi = 2.0;
        let mut k = 1;
        while g(hi)? >= 0.0 {
            lo = hi;
            hi *= 2.0;
            k += 1;
            if k > DOUBLING_CAP {
                return Err(Error::NoSignChange(format!(
                    "{f} stays nonnegative up to 2^64"
                )));
            }
        }
    } else {
        hi = 1.0;
        lo = 0.5;
        let mut k = 1;
        while g(lo)? < 0.0 {
            hi = lo;
            lo *= 0.5;
            k += 1;
            if k > DOUBLING_CAP {
                return Err(Error::NoSignChange(format!(
                    "{f} stays negative down to 2^-64"
                )));
            }
        }
    }
    let (g_lo, g_hi) = (g(lo)?, g(hi)?);
    while hi - lo > LAMBDA_TOLERANCE * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = 0.5 * (lo + hi);
    // Spot-check that the sign change comes from a decreasing function.
    let g_mid = g(lambda)?;
    let slack = 1e-12 * (g_lo.abs() + g_hi.abs() + 1.0);
    if !(g_lo + slack >= g_mid && g_mid + slack >= g_hi) {
        return Err(Error::NotDecreasing(format!(
            "{f}: m({lo}) = {g_lo}, m({lambda}) = {g_mid}, m({hi}) = {g_hi}"
        )));
    }
    Ok(Threshold::point(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratorKind, GeneratorSpec};
    use MassFunctional::*;

    fn gen(kind: GeneratorKind) -> BartnikData {
        generate(&GeneratorSpec::new(kind, 512)).unwrap()
    }

    fn schwarzschild() -> BartnikData {
        gen(GeneratorKind::Schwarzschild { mass: 1.0, r: 2.0 })
    }

    #[test]
    fn closed_form_thresholds() {
        let unit = gen(GeneratorKind::Round {
            radius: 1.0,
            h: 2.0,
        });
        assert!((lambda_of(&Hawking, &unit).unwrap().value - 1.0).abs() < 1e-10);
        let s = schwarzschild();
        assert!((lambda_of(&Hawking, &s).unwrap().value - 5.0 / 3.0).abs() < 1e-8);
        assert!((lambda_of(&BrownYork, &s).unwrap().value - 5.0 / 3.0).abs() < 1e-8);
        assert!((lambda_of(&Critical, &s).unwrap().value - 5.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn miao_threshold_matches_brown_york() {
        let e = gen(GeneratorKind::Ellipsoid { a: 1.0, c: 1.5 });
        let bisected = lambda_of(&Miao, &e).unwrap().value;
        let closed = lambda_of(&BrownYork, &e).unwrap().value;
        assert!((bisected - closed).abs() < 1e-9 * closed);
    }

    #[test]
    fn star_examples() {
        let s = schwarzschild();
        let hb = star(Hawking, BrownYork).evaluate(&s).unwrap().value;
        assert!((hb - 1.0).abs() < 1e-6);
        let hh = star(Hawking, Hawking).evaluate(&s).unwrap().value;
        assert!((hh - Hawking.evaluate(&s).unwrap().value).abs() < 1e-10);
    }

    #[test]
    fn critical_is_hawking_star_inner() {
        for kind in [
            GeneratorKind::Schwarzschild { mass: 1.0, r: 2.0 },
            GeneratorKind::Round {
                radius: 1.0,
                h: 2.0,
            },
            GeneratorKind::Round {
                radius: 1.0,
                h: 1.0,
            },
        ] {
            let d = gen(kind);
            let a = Critical.evaluate(&d).unwrap().value;
            let b = star(Hawking, Inner).evaluate(&d).unwrap().value;
            assert!((a - b).abs() < 1e-10, "{kind:?}: {a} vs {b}");
        }
        let unit = gen(GeneratorKind::Round {
            radius: 1.0,
            h: 1.0,
        });
        assert!((Critical.evaluate(&unit).unwrap().value - 0.375).abs() < 1e-10);
    }

    #[test]
    fn inner_needs_round_data() {
        let e = gen(GeneratorKind::Ellipsoid { a: 1.0, c: 2.0 });
        assert_eq!(Inner.evaluate(&e), Err(Error::InnerMassUnavailable));
        let s = schwarzschild();
        assert!((Inner.evaluate(&s).unwrap().value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn ellipsoid_witnesses_non_commutativity() {
        let e = gen(GeneratorKind::Ellipsoid { a: 1.0, c: 2.0 });
        let hb = star(Hawking, BrownYork).evaluate(&e).unwrap().value;
        let bh = star(BrownYork, Hawking).evaluate(&e).unwrap().value;
        assert!(hb.abs() < 1e-6);
        assert!(bh < -1e-3);
    }

    #[test]
    fn star_threshold_is_the_right_factor() {
        let e = gen(GeneratorKind::Ellipsoid { a: 1.0, c: 1.5 });
        let t = lambda_of(&star(Hawking, BrownYork), &e).unwrap().value;
        let expected = lambda_of(&BrownYork, &e).unwrap().value;
        assert!((t - expected).abs() < 1e-8 * expected);
    }

    #[test]
    fn names_round_trip() {
        for name in ["hawking", "brown-york", "miao", "critical", "inner"] {
            assert_eq!(name.parse::<MassFunctional>().unwrap().to_string(), name);
        }
        assert!("bartnik".parse::<MassFunctional>().is_err());
        assert_eq!(star(Hawking, Miao).to_string(), "(hawking * miao)");
    }
}
