//! Canonical datasets: round spheres, Schwarzschild coordinate spheres,
//! ellipsoids of revolution and perturbed round spheres. Every generator
//! samples `t ∈ [0, π]` uniformly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schwarzschild::SchwarzschildSphere;
use crate::stencil;
use crate::surface::{self, BartnikData, Provenance, RadialProfile};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Round sphere of the given radius with constant `H`.
    Round { radius: f64, h: f64 },
    /// Coordinate sphere `|x| = r` of the mass-`m` Schwarzschild metric.
    Schwarzschild { mass: f64, r: f64 },
    /// Spheroid with equatorial semi-axis `a` and polar semi-axis `c`,
    /// carrying its Euclidean mean curvature.
    Ellipsoid { a: f64, c: f64 },
    /// Star-shaped sphere `|x| = radius (1 + amplitude P_mode(cos θ))` with
    /// constant `H`.
    PerturbedRound {
        radius: f64,
        h: f64,
        amplitude: f64,
        mode: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub samples: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, samples: usize) -> Self {
        GeneratorSpec { kind, samples }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

fn round_profile(radius: f64, h: f64, n: usize) -> Result<RadialProfile> {
    let t = stencil::linspace(0.0, PI, n);
    let beta: Vec<f64> = stencil::polar_trig(n)
        .0
        .iter()
        .map(|s| radius * s)
        .collect();
    RadialProfile::new(t, vec![radius; n], beta, vec![h; n])
}

/// Legendre polynomial and its derivative at `x`.
fn legendre(mode: u32, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    let (mut d_prev, mut d) = (0.0, 1.0);
    if mode == 0 {
        return (1.0, 0.0);
    }
    for k in 1..mode {
        let k = k as f64;
        let p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
        let d_next = d_prev + (2.0 * k + 1.0) * p;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    (p, d)
}

pub fn generate(spec: &GeneratorSpec) -> Result<BartnikData> {
    let n = spec.samples;
    if n < surface::MIN_SAMPLES {
        return Err(Error::InvalidSpec(format!(
            "samples must be at least {}, got {n}",
            surface::MIN_SAMPLES
        )));
    }
    let data = match spec.kind {
        GeneratorKind::Round { radius, h } => {
            positive("radius", radius)?;
            positive("H", h)?;
            BartnikData::new(
                round_profile(radius, h, n)?,
                format!("round(radius={radius}, H={h})"),
                Provenance::Round,
            )
        }
        GeneratorKind::Schwarzschild { mass, r } => {
            let sphere = SchwarzschildSphere::new(mass, r)
                .map_err(|_| Error::InvalidSpec(format!("need r > |m|/2, got m={mass}, r={r}")))?;
            BartnikData::new(
                round_profile(sphere.areal_radius(), sphere.mean_curvature(), n)?,
                format!("schwarzschild(m={mass}, r={r})"),
                Provenance::Schwarzschild,
            )
        }
        GeneratorKind::Ellipsoid { a, c } => {
            positive("a", a)?;
            positive("c", c)?;
            let t = stencil::linspace(0.0, PI, n);
            let (sin, cos) = stencil::polar_trig(n);
            let speed: Vec<f64> = (0..n)
                .map(|i| (a * a * cos[i] * cos[i] + c * c * sin[i] * sin[i]).sqrt())
                .collect();
            let beta = sin.iter().map(|s| a * s).collect();
            let h = speed
                .iter()
                .map(|v| a * c / v.powi(3) + c / (a * v))
                .collect();
            BartnikData::new(
                RadialProfile::new(t, speed, beta, h)?,
                format!("ellipsoid(a={a}, c={c})"),
                Provenance::Ellipsoid,
            )
        }
        GeneratorKind::PerturbedRound {
            radius,
            h,
            amplitude,
            mode,
        } => {
            positive("radius", radius)?;
            positive("H", h)?;
            if mode == 0 {
                return Err(Error::InvalidSpec("mode must be at least 1".into()));
            }
            if !(amplitude.abs() < 1.0) {
                return Err(Error::InvalidSpec(format!(
                    "|amp| must be below 1, got {amplitude}"
                )));
            }
            let t = stencil::linspace(0.0, PI, n);
            let (sin, cos) = stencil::polar_trig(n);
            let mut alpha = Vec::with_capacity(n);
            let mut beta = Vec::with_capacity(n);
            for i in 0..n {
                let (p, dp) = legendre(mode, cos[i]);
                let r = radius * (1.0 + amplitude * p);
                let dr = -radius * amplitude * dp * sin[i];
                alpha.push(r.hypot(dr));
                beta.push(r * sin[i]);
            }
            BartnikData::new(
                RadialProfile::new(t, alpha, beta, vec![h; n])?,
                format!("perturbed(radius={radius}, H={h}, amp={amplitude}, mode={mode})"),
                Provenance::PerturbedRound,
            )
        }
    };
    let report = surface::validate(&data);
    if !report.diagnostics.is_empty() {
        return Err(Error::InvalidSpec(report.diagnostics.join("; ")));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_values() {
        let (p, d) = legendre(2, 0.3);
        assert!((p - 0.5 * (3.0 * 0.09 - 1.0)).abs() < 1e-15);
        assert!((d - 0.9).abs() < 1e-15);
        let (p, d) = legendre(3, -0.7);
        assert!((p - 0.5 * (5.0 * (-0.343) - 3.0 * (-0.7))).abs() < 1e-14);
        assert!((d - 0.5 * (15.0 * 0.49 - 3.0)).abs() < 1e-14);
    }

    #[test]
    fn round_and_schwarzschild() {
        let unit = generate(&GeneratorSpec::new(
            GeneratorKind::Round {
                radius: 1.0,
                h: 2.0,
            },
            1024,
        ))
        .unwrap();
        let r = surface::validate(&unit);
        assert!(r.is_round && r.is_constant_h);
        let s = generate(&GeneratorSpec::new(
            GeneratorKind::Schwarzschild { mass: 1.0, r: 2.0 },
            1024,
        ))
        .unwrap();
        let r = surface::validate(&s);
        assert!((r.areal_radius - 3.125).abs() < 1e-9);
        assert!((r.h_min - 0.384).abs() < 1e-15 && (r.h_max - 0.384).abs() < 1e-15);
    }

    #[test]
    fn ellipsoid_is_convex_not_round() {
        let e = generate(&GeneratorSpec::new(
            GeneratorKind::Ellipsoid { a: 1.0, c: 2.0 },
            1024,
        ))
        .unwrap();
        let r = surface::validate(&e);
        assert!(!r.is_round && r.k_min > 0.0);
    }

    #[test]
    fn invalid_specs_name_the_constraint() {
        let cases = [
            GeneratorKind::Round {
                radius: -1.0,
                h: 2.0,
            },
            GeneratorKind::Round {
                radius: 1.0,
                h: 0.0,
            },
            GeneratorKind::Schwarzschild { mass: 1.0, r: 0.5 },
            GeneratorKind::Ellipsoid { a: 0.0, c: 1.0 },
            GeneratorKind::PerturbedRound {
                radius: 1.0,
                h: 2.0,
                amplitude: 0.9,
                mode: 2,
            },
            GeneratorKind::PerturbedRound {
                radius: 1.0,
                h: 2.0,
                amplitude: 0.1,
                mode: 0,
            },
        ];
        for kind in cases {
            let err = generate(&GeneratorSpec::new(kind, 256)).unwrap_err();
            assert!(matches!(err, Error::InvalidSpec(_)), "{kind:?}: {err}");
        }
        assert!(generate(&GeneratorSpec::new(
            GeneratorKind::Round {
                radius: 1.0,
                h: 2.0
            },
            8
        ))
        .is_err());
    }

    #[test]
    fn perturbed_round_is_valid_and_not_round() {
        let d = generate(&GeneratorSpec::new(
            GeneratorKind::PerturbedRound {
                radius: 1.0,
                h: 2.0,
                amplitude: 0.1,
                mode: 2,
            },
            1024,
        ))
        .unwrap();
        let r = surface::validate(&d);
        assert!(!r.is_round && r.is_constant_h);
    }
}
