//! Discretized rotationally symmetric boundary data.
//!
//! A profile samples the metric of revolution `γ = α(t)² dt² + β(t)² dφ²`
//! on a uniform grid `t ∈ [0, L]` together with the mean curvature `H(t)`.
//! Both ends of the grid are poles of the sphere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stencil::{self, Boundary};

/// Pole closure tolerance (relative).
pub const POLE_TOLERANCE: f64 = 1e-6;
/// Relative spread below which K or H counts as constant.
pub const ROUNDNESS_TOLERANCE: f64 = 1e-8;
pub const MIN_SAMPLES: usize = 16;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    t: Vec<f64>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    mean_curvature: Vec<f64>,
}

impl RadialProfile {
    /// Builds a profile, resampling to a uniform grid when `t` is not
    /// uniform. Rejects short or non-monotone grids, non-positive `α` and
    /// profiles whose ends do not close smoothly at the poles.
    pub fn new(
        t: Vec<f64>,
        alpha: Vec<f64>,
        beta: Vec<f64>,
        mean_curvature: Vec<f64>,
    ) -> Result<Self> {
        let n = t.len();
        for other in [alpha.len(), beta.len(), mean_curvature.len()] {
            if other != n {
                return Err(Error::GridMismatch {
                    expected: n,
                    found: other,
                });
            }
        }
        if n < MIN_SAMPLES {
            return Err(Error::TooFewSamples(n));
        }
        for (name, v) in [
            ("t", &t),
            ("alpha", &alpha),
            ("beta", &beta),
            ("H", &mean_curvature),
        ] {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite(name));
            }
        }
        if let Some(i) = t.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NonMonotoneGrid(i + 1));
        }
        if let Some((index, &value)) = alpha.iter().enumerate().find(|(_, a)| **a <= 0.0) {
            return Err(Error::NonPositiveAlpha { index, value });
        }

        let profile = if stencil::is_uniform(&t) {
            RadialProfile {
                t,
                alpha,
                beta,
                mean_curvature,
            }
        } else {
            let uniform = stencil::linspace(t[0], t[n - 1], n);
            let alpha = stencil::pchip(&t, &alpha, &uniform);
            let beta = stencil::pchip(&t, &beta, &uniform);
            let mean_curvature = stencil::pchip(&t, &mean_curvature, &uniform);
            if let Some((index, &value)) = alpha.iter().enumerate().find(|(_, a)| **a <= 0.0) {
                return Err(Error::NonPositiveAlpha { index, value });
            }
            RadialProfile {
                t: uniform,
                alpha,
                beta,
                mean_curvature,
            }
        };
        profile.check_poles()?;
        Ok(profile)
    }

    fn check_poles(&self) -> Result<()> {
        let n = self.len();
        let scale = self.beta.iter().fold(0.0f64, |m, b| m.max(b.abs()));
        if scale <= 0.0 {
            return Err(Error::NonClosedPole("beta vanishes identically".into()));
        }
        for (end, value) in [("start", self.beta[0]), ("end", self.beta[n - 1])] {
            if value.abs() > POLE_TOLERANCE * scale {
                return Err(Error::NonClosedPole(format!("beta({end}) = {value:e}")));
            }
        }
        let h = self.step();
        let start = pole_slope(&self.beta, h) / self.alpha[0];
        let reversed: Vec<f64> = self.beta.iter().rev().copied().collect();
        let end = -pole_slope(&reversed, h) / self.alpha[n - 1];
        if (start - 1.0).abs() > POLE_TOLERANCE {
            return Err(Error::NonClosedPole(format!(
                "beta'/alpha = {start} at start, expected 1"
            )));
        }
        if (end + 1.0).abs() > POLE_TOLERANCE {
            return Err(Error::NonClosedPole(format!(
                "beta'/alpha = {end} at end, expected -1"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn mean_curvature(&self) -> &[f64] {
        &self.mean_curvature
    }

    /// Uniform grid spacing.
    pub fn step(&self) -> f64 {
        (self.t[self.len() - 1] - self.t[0]) / (self.len() - 1) as f64
    }

    /// `β'(t)`, with `β` odd about both poles.
    pub fn beta_slope(&self) -> Vec<f64> {
        stencil::derivative(&self.beta, self.step(), Boundary::Odd, Boundary::Odd)
    }

    /// Same metric, new mean curvature samples.
    pub fn with_mean_curvature(&self, mean_curvature: Vec<f64>) -> Result<Self> {
        if mean_curvature.len() != self.len() {
            return Err(Error::GridMismatch {
                expected: self.len(),
                found: mean_curvature.len(),
            });
        }
        if mean_curvature.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("H"));
        }
        Ok(RadialProfile {
            mean_curvature,
            ..self.clone()
        })
    }

    /// Evaluates `(1/(αβ)) p'` for a flux `p` that is even about both
    /// poles, filling the pole nodes with the limit `p''/(α β')`.
    pub(crate) fn divergence(&self, flux: &[f64], beta_slope: &[f64]) -> Vec<f64> {
        let h = self.step();
        let n = self.len();
        let dp = stencil::derivative(flux, h, Boundary::Even, Boundary::Even);
        let mut out: Vec<f64> = (0..n)
            .map(|i| dp[i] / (self.alpha[i] * self.beta[i]))
            .collect();
        let d2p = stencil::second_derivative(flux, h, Boundary::Even, Boundary::Even);
        out[0] = d2p[0] / (self.alpha[0] * beta_slope[0]);
        out[n - 1] = d2p[n - 1] / (self.alpha[n - 1] * beta_slope[n - 1]);
        out
    }
}

/// Sixth-order one-sided estimate of `f'(0)` for `f` odd about `f(0)`.
fn pole_slope(f: &[f64], h: f64) -> f64 {
    let d = |k: usize| f[k] - f[0];
    let fine = (16.0 * d(1) - 2.0 * d(2)) / (12.0 * h);
    let coarse = (16.0 * d(2) - 2.0 * d(4)) / (24.0 * h);
    (16.0 * fine - coarse) / 15.0
}

/// Where a dataset came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Round,
    Schwarzschild,
    Ellipsoid,
    PerturbedRound,
    File,
}

/// Boundary data `(Σ, γ, H)` with a label.
#[derive(Clone, Debug, PartialEq)]
pub struct BartnikData {
    pub profile: RadialProfile,
    pub label: String,
    pub provenance: Provenance,
}

impl BartnikData {
    pub fn new(profile: RadialProfile, label: impl Into<String>, provenance: Provenance) -> Self {
        BartnikData {
            profile,
            label: label.into(),
            provenance,
        }
    }

    /// Fails with the full diagnostic list unless `K > 0` and `H > 0`.
    pub fn require_valid(&self) -> Result<GeometryReport> {
        let report = validate(self);
        if report.diagnostics.is_empty() {
            Ok(report)
        } else {
            Err(Error::NotBartnikData(report.diagnostics))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryReport {
    pub area: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub areal_radius: f64,
    pub is_round: bool,
    pub round_residual: f64,
    pub is_constant_h: bool,
    pub h_residual: f64,
    pub diagnostics: Vec<String>,
}

/// Gauss curvature `K = -(1/(αβ)) d/dt(β'/α)`.
pub fn gauss_curvature(profile: &RadialProfile) -> Vec<f64> {
    let slope = profile.beta_slope();
    let q: Vec<f64> = slope
        .iter()
        .zip(profile.alpha())
        .map(|(s, a)| -s / a)
        .collect();
    profile.divergence(&q, &slope)
}

/// Laplace–Beltrami operator of `γ` applied to a rotationally symmetric
/// function: `Δf = (1/(αβ)) d/dt((β/α) f')`.
pub fn laplacian(profile: &RadialProfile, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != profile.len() {
        return Err(Error::GridMismatch {
            expected: profile.len(),
            found: f.len(),
        });
    }
    let h = profile.step();
    let df = stencil::derivative(f, h, Boundary::Even, Boundary::Even);
    let flux: Vec<f64> = (0..profile.len())
        .map(|i| profile.beta()[i] / profile.alpha()[i] * df[i])
        .collect();
    Ok(profile.divergence(&flux, &profile.beta_slope()))
}

/// `∫_Σ f dA_γ = ∫ 2π f β α dt` by composite Simpson.
pub fn integrate_scalar(profile: &RadialProfile, f: &[f64]) -> Result<f64> {
    if f.len() != profile.len() {
        return Err(Error::GridMismatch {
            expected: profile.len(),
            found: f.len(),
        });
    }
    let integrand: Vec<f64> = (0..profile.len())
        .map(|i| TWO_PI * f[i] * profile.beta[i] * profile.alpha[i])
        .collect();
    Ok(stencil::simpson(&integrand, profile.step()))
}

pub fn area(profile: &RadialProfile) -> f64 {
    let ones = vec![1.0; profile.len()];
    integrate_scalar(profile, &ones).expect("matching grid")
}

pub fn areal_radius(area: f64) -> f64 {
    (area / FOUR_PI).sqrt()
}

fn spread(values: &[f64]) -> (f64, f64, f64) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let residual = if mean != 0.0 {
        (max - min) / mean.abs()
    } else {
        f64::INFINITY
    };
    (min, max, residual)
}

/// Checks the standing hypotheses and summarizes the geometry. Violations
/// are collected rather than returned as an error.
pub fn validate(data: &BartnikData) -> GeometryReport {
    let profile = &data.profile;
    let k = gauss_curvature(profile);
    let area = area(profile);
    let (k_min, k_max, round_residual) = spread(&k);
    let (h_min, h_max, h_residual) = spread(profile.mean_curvature());

    let mut diagnostics = Vec::new();
    let n = profile.len();
    if let Some(i) = (1..n - 1).find(|&i| profile.beta[i] <= 0.0) {
        diagnostics.push(format!("beta must be positive on the interior (index {i})"));
    }
    if let Some(i) = k.iter().position(|&v| !(v > 0.0)) {
        diagnostics.push(format!(
            "Gauss curvature {:e} is not positive at index {i}",
            k[i]
        ));
    }
    if let Some(i) = profile.mean_curvature.iter().position(|&v| !(v > 0.0)) {
        diagnostics.push(format!(
            "mean curvature {:e} is not positive at index {i}",
            profile.mean_curvature[i]
        ));
    }

    GeometryReport {
        area,
        k_min,
        k_max,
        h_min,
        h_max,
        areal_radius: areal_radius(area),
        is_round: round_residual <= ROUNDNESS_TOLERANCE,
        round_residual,
        is_constant_h: h_residual <= ROUNDNESS_TOLERANCE,
        h_residual,
        diagnostics,
    }
}

/// `(Σ, γ, H) ↦ (Σ, γ, λH)`.
pub fn scale_h(data: &BartnikData, lambda: f64) -> Result<BartnikData> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositiveLambda(lambda));
    }
    let scaled = data
        .profile
        .mean_curvature()
        .iter()
        .map(|h| lambda * h)
        .collect();
    Ok(BartnikData {
        profile: data.profile.with_mean_curvature(scaled)?,
        label: data.label.clone(),
        provenance: data.provenance,
    })
}
