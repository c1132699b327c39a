//! Isometric embedding of a metric of revolution into Euclidean space.
//!
//! The profile curve is `(ρ, z)` with `ρ = β` and `z' = √(α² − β'²)`, so the
//! embedding is explicit once `β'` is known.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::stencil::{self, Boundary};
use crate::surface::RadialProfile;

/// Relative slack allowed on `α² − β'² ≥ 0`.
pub const EMBEDDING_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedProfile {
    pub t: Vec<f64>,
    pub rho: Vec<f64>,
    pub z: Vec<f64>,
    /// Line element `α` of the source metric.
    pub alpha: Vec<f64>,
    /// Euclidean mean curvature, outward normal.
    pub h0: Vec<f64>,
    pub meridian_curvature: Vec<f64>,
    pub parallel_curvature: Vec<f64>,
}

impl EmbeddedProfile {
    fn step(&self) -> f64 {
        (self.t[self.t.len() - 1] - self.t[0]) / (self.t.len() - 1) as f64
    }

    /// Largest `|ρ'² + z'² − α²|` relative to `max α²`, with both
    /// derivatives taken numerically from the embedded curve.
    pub fn metric_recovery_residual(&self, profile: &RadialProfile) -> f64 {
        let h = self.step();
        let drho = stencil::derivative(&self.rho, h, Boundary::Odd, Boundary::Odd);
        let dz = stencil::derivative(&self.z, h, Boundary::Even, Boundary::Even);
        let scale = profile.alpha().iter().fold(0.0f64, |m, a| m.max(a * a));
        (0..self.t.len())
            .map(|i| (drho[i].powi(2) + dz[i].powi(2) - profile.alpha()[i].powi(2)).abs())
            .fold(0.0, f64::max)
            / scale
    }

    /// Writes `t,rho,z,H0` rows with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,rho,z,H0")?;
        for i in 0..self.t.len() {
            writeln!(
                out,
                "{},{},{},{}",
                fmt_f64(self.t[i]),
                fmt_f64(self.rho[i]),
                fmt_f64(self.z[i]),
                fmt_f64(self.h0[i])
            )?;
        }
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> std::io::Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

/// Solves the embedding problem for a metric of revolution.
///
/// `z(0) = 0` and `z` increases along the grid. The slope uses
/// `1 − cos²θ` rewritten as `(c₀ − c)(c − c_L)` with `c = β'/α` and the
/// computed pole values `c₀ ≈ 1`, `c_L ≈ −1`, so that the truncation error in
/// `β'` does not leak into `z'` near the poles.
pub fn embed_revolution(profile: &RadialProfile) -> Result<EmbeddedProfile> {
    let n = profile.len();
    let h = profile.step();
    let slope = profile.beta_slope();
    let alpha = profile.alpha();

    for i in 0..n {
        let deficit = alpha[i] * alpha[i] - slope[i] * slope[i];
        if deficit < -EMBEDDING_TOLERANCE * alpha[i] * alpha[i] {
            return Err(Error::NotEmbeddableAsRevolution { index: i, deficit });
        }
    }

    let cos: Vec<f64> = (0..n).map(|i| slope[i] / alpha[i]).collect();
    let (c0, cl) = (cos[0], cos[n - 1]);
    if !(c0 > 0.0 && cl < 0.0) {
        return Err(Error::PoleSingularity(format!(
            "pole direction cosines {c0}, {cl}"
        )));
    }
    let norm = (0.5 * (c0 - cl)).powi(2);
    let z_slope: Vec<f64> = (0..n)
        .map(|i| {
            let s2 = ((c0 - cos[i]) * (cos[i] - cl) / norm).max(0.0);
            alpha[i] * s2.sqrt()
        })
        .collect();
    let z = stencil::cumulative(&z_slope, h, Boundary::Odd, Boundary::Odd);

    let curve = CurveSamples {
        t: profile.t().to_vec(),
        rho: profile.beta().to_vec(),
        z,
    };
    let (h0, km, kp) = curve.curvatures()?;
    Ok(EmbeddedProfile {
        t: curve.t,
        rho: curve.rho,
        z: curve.z,
        alpha: alpha.to_vec(),
        h0,
        meridian_curvature: km,
        parallel_curvature: kp,
    })
}

struct CurveSamples {
    t: Vec<f64>,
    rho: Vec<f64>,
    z: Vec<f64>,
}

impl CurveSamples {
    /// Principal curvatures of the surface swept by `(ρ, z)`: meridian
    /// `θ'/|γ'|` and parallel `sin θ / ρ`, with `θ` the tangent angle.
    /// At the poles both equal the meridian value.
    fn curvatures(&self) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        let n = self.t.len();
        let h = (self.t[n - 1] - self.t[0]) / (n - 1) as f64;
        let drho = stencil::derivative(&self.rho, h, Boundary::Odd, Boundary::Odd);
        let dz = stencil::derivative(&self.z, h, Boundary::Even, Boundary::Even);
        let speed: Vec<f64> = (0..n).map(|i| drho[i].hypot(dz[i])).collect();
        if let Some(i) = speed.iter().position(|&s| !(s > 0.0)) {
            return Err(Error::DegenerateProfile(i));
        }
        let mut theta: Vec<f64> = (0..n).map(|i| dz[i].atan2(drho[i])).collect();
        theta[0] = 0.0;
        theta[n - 1] = std::f64::consts::PI;
        let dtheta = stencil::derivative(&theta, h, Boundary::Odd, Boundary::Odd);

        let meridian: Vec<f64> = (0..n).map(|i| dtheta[i] / speed[i]).collect();
        let mut parallel: Vec<f64> = (0..n).map(|i| theta[i].sin() / self.rho[i]).collect();
        parallel[0] = meridian[0];
        parallel[n - 1] = meridian[n - 1];
        let h0 = (0..n).map(|i| meridian[i] + parallel[i]).collect();
        Ok((h0, meridian, parallel))
    }
}

/// Mean curvature of the embedded surface, recomputed from `(ρ, z)`.
pub fn euclidean_mean_curvature(embedded: &EmbeddedProfile) -> Result<Vec<f64>> {
    let curve = CurveSamples {
        t: embedded.t.clone(),
        rho: embedded.rho.clone(),
        z: embedded.z.clone(),
    };
    Ok(curve.curvatures()?.0)
}

/// `(∫H₀ dA)² − 16π|Σ|`; nonnegative for convex surfaces, zero when round.
pub fn minkowski_residual(embedded: &EmbeddedProfile) -> f64 {
    let h = embedded.step();
    let two_pi = 2.0 * std::f64::consts::PI;
    let n = embedded.t.len();
    let total_h0: Vec<f64> = (0..n)
        .map(|i| two_pi * embedded.h0[i] * embedded.rho[i] * embedded.alpha[i])
        .collect();
    let area: Vec<f64> = (0..n)
        .map(|i| two_pi * embedded.rho[i] * embedded.alpha[i])
        .collect();
    let total_h0 = stencil::simpson(&total_h0, h);
    total_h0 * total_h0 - 16.0 * std::f64::consts::PI * stencil::simpson(&area, h)
}
