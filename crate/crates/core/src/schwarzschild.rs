//! Closed forms for coordinate spheres of the Schwarzschild metric
//! `g = (1 + m/2r)⁴ δ` in isotropic coordinates.
//!
//! Internally everything is expressed through the areal radius
//! `R = r(1 + m/2r)²`, where the matching of round data to a coordinate
//! sphere is rational.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{self, GeneratorKind, GeneratorSpec};
use crate::surface::BartnikData;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// A coordinate sphere `{|x| = r}` of the mass-`m` metric.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchwarzschildSphere {
    pub m: f64,
    pub r: f64,
}

impl SchwarzschildSphere {
    pub fn new(m: f64, r: f64) -> Result<Self> {
        let ok = m.is_finite()
            && r.is_finite()
            && r > 0.0
            && 1.0 + m / (2.0 * r) > 0.0
            && (m <= 0.0 || 1.0 - m / (2.0 * r) > 0.0);
        if ok {
            Ok(SchwarzschildSphere { m, r })
        } else {
            Err(Error::InsideHorizon { m, r })
        }
    }

    fn psi(&self) -> f64 {
        1.0 + self.m / (2.0 * self.r)
    }

    pub fn areal_radius(&self) -> f64 {
        self.r * self.psi().powi(2)
    }

    pub fn area(&self) -> f64 {
        FOUR_PI * self.areal_radius().powi(2)
    }

    /// `H_r = (2/r)ψ⁻² − (2m/r²)ψ⁻³`.
    pub fn mean_curvature(&self) -> f64 {
        let psi = self.psi();
        2.0 / (self.r * psi * psi) - 2.0 * self.m / (self.r * self.r * psi.powi(3))
    }

    /// Mean curvature of the same round sphere in flat space.
    pub fn euclidean_mean_curvature(&self) -> f64 {
        2.0 / (self.r * self.psi().powi(2))
    }

    /// `λ_r = (1 + m/2r)/(1 − m/2r)`.
    pub fn critical_parameter(&self) -> f64 {
        let x = self.m / (2.0 * self.r);
        (1.0 + x) / (1.0 - x)
    }
}

pub fn coordinate_sphere_data(m: f64, r: f64, samples: usize) -> Result<BartnikData> {
    SchwarzschildSphere::new(m, r)?;
    generators::generate(&GeneratorSpec {
        kind: GeneratorKind::Schwarzschild { mass: m, r },
        samples,
    })
}

pub fn lambda_exact(m: f64, r: f64) -> Result<f64> {
    Ok(SchwarzschildSphere::new(m, r)?.critical_parameter())
}

/// Inner mass of `(S_r, γ, λH_r)`:
/// `m(λ) = (r/2)((1 + m/2r)² − λ²(1 − m/2r)²)` for `0 < λ ≤ λ_r`.
pub fn inner_mass_curve(m: f64, r: f64, lambda: f64) -> Result<f64> {
    let sphere = SchwarzschildSphere::new(m, r)?;
    if !(m > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "inner mass curve needs m > 0, got {m}"
        )));
    }
    let max = sphere.critical_parameter();
    if !(lambda > 0.0 && lambda <= max) {
        return Err(Error::LambdaOutOfRange { lambda, max });
    }
    let x = m / (2.0 * r);
    Ok(0.5 * r * ((1.0 + x).powi(2) - lambda * lambda * (1.0 - x).powi(2)))
}

/// Round data of area `A` and constant `H`, identified with a Schwarzschild
/// coordinate sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RoundMatch {
    pub areal_radius: f64,
    pub m_areal: f64,
    pub lambda0: f64,
    /// Isotropic radius of the matching sphere, when it lies outside the
    /// horizon (`m_areal < R/2`).
    pub isotropic_radius: Option<f64>,
}

pub fn match_round_data(area: f64, h: f64) -> Result<RoundMatch> {
    if !(area > 0.0 && h > 0.0) {
        return Err(Error::NotBartnikData(vec![format!(
            "round matching needs positive area and H, got {area}, {h}"
        )]));
    }
    let radius = (area / FOUR_PI).sqrt();
    let half = 0.5 * h * radius;
    let m_areal = 0.5 * radius * (1.0 - half * half);
    let isotropic_radius = (m_areal < 0.5 * radius)
        .then(|| 0.5 * (radius - m_areal + (radius * radius - 2.0 * m_areal * radius).sqrt()));
    Ok(RoundMatch {
        areal_radius: radius,
        m_areal,
        lambda0: 2.0 / (h * radius),
        isotropic_radius,
    })
}
