//! Residual reports for the curvature identities in [`crate::metric_tools`].

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorKind, GeneratorSpec};
use crate::metric_tools::{self as mt, RadialThreeMetric, WarpedFamily};
use crate::surface::RadialProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Foliation,
    Conformal,
    Collar,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "foliation" => Ok(Suite::Foliation),
            "conformal" => Ok(Suite::Conformal),
            "collar" => Ok(Suite::Collar),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidSpec(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Upper limit, or lower limit when `at_least` is set.
    pub limit: f64,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub at_least: bool,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            limit,
            at_least: false,
            passed: value <= limit,
        }
    }

    fn at_least(name: &str, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            limit,
            at_least: true,
            passed: value >= limit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collar: Option<CollarCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Largest `|R|` of isotropic Schwarzschild `m = 1` on `r ∈ [1, 8]`.
pub fn schwarzschild_foliation_residual(samples: usize) -> Result<f64> {
    let g = RadialThreeMetric::schwarzschild(1.0, 1.0, 8.0, samples)?;
    Ok(max_abs(&mt::foliation_scalar_curvature(&g)?))
}

/// Residual ratios over successive doublings `n → 2n − 1`, starting at
/// `start`.
pub fn convergence_ratios(start: usize, doublings: usize) -> Result<Vec<f64>> {
    let mut n = start;
    let mut prev = schwarzschild_foliation_residual(n)?;
    let mut out = Vec::with_capacity(doublings);
    for _ in 0..doublings {
        n = 2 * n - 1;
        let next = schwarzschild_foliation_residual(n)?;
        out.push(prev / next);
        prev = next;
    }
    Ok(out)
}

fn foliation_checks(samples: usize) -> Result<Vec<Check>> {
    let ratios = convergence_ratios(65, 4)?;
    let worst = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let flat = RadialThreeMetric::flat(1.0, 8.0, samples)?;
    Ok(vec![
        Check::at_most(
            "schwarzschild_scalar_residual",
            schwarzschild_foliation_residual(samples)?,
            1e-4,
        ),
        Check::at_least("convergence_ratio_min", worst, 3.5),
        Check::at_most(
            "flat_scalar_residual",
            max_abs(&mt::foliation_scalar_curvature(&flat)?),
            1e-8,
        ),
    ])
}

fn conformal_checks(samples: usize) -> Result<Vec<Check>> {
    let m = 1.0;
    let flat = RadialThreeMetric::flat(1.0, 8.0, samples)?;
    let u: Vec<f64> = flat.r().iter().map(|r| 1.0 + m / (2.0 * r)).collect();
    let harmonic = max_abs(&mt::conformal_scalar(&flat, &u)?);

    let r0: f64 = 2.0;
    let psi = 1.0 + m / (2.0 * r0);
    let h_bar = mt::conformal_mean_curvature(2.0 / r0, psi, -m / (2.0 * r0 * r0))?;
    let h_r = 2.0 / (r0 * psi * psi) - 2.0 * m / (r0 * r0 * psi * psi * psi);

    // (u₁u₂)⁴δ = u₂⁴(u₁⁴δ)
    let u1 = |r: f64| 1.0 + 0.5 / r;
    let u2 = |r: f64| 1.2 + 0.3 * (r / 4.0).sin();
    let product: Vec<f64> = flat.r().iter().map(|&r| u1(r) * u2(r)).collect();
    let direct = mt::conformal_scalar(&flat, &product)?;
    let inner =
        RadialThreeMetric::from_fn(1.0, 8.0, samples, |r| (u1(r).powi(2), r * u1(r).powi(2)))?;
    let second: Vec<f64> = flat.r().iter().map(|&r| u2(r)).collect();
    let twice = mt::conformal_scalar(&inner, &second)?;
    let composition = direct
        .iter()
        .zip(&twice)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));

    Ok(vec![
        Check::at_most("harmonic_factor_residual", harmonic, 1e-5),
        Check::at_most("mean_curvature_law_error", (h_bar - h_r).abs(), 1e-8),
        Check::at_most("composition_gap", composition, 1e-6),
        Check::at_most(
            "minimal_stays_minimal",
            mt::conformal_mean_curvature(0.0, 1.7, 0.0)?.abs(),
            0.0,
        ),
    ])
}

fn round_base(radius: f64, samples: usize) -> Result<RadialProfile> {
    Ok(generate(&GeneratorSpec::new(
        GeneratorKind::Round {
            radius,
            h: 2.0 / radius,
        },
        samples,
    ))?
    .profile)
}

/// Isotropic Schwarzschild between `|x| = r0 − depth` and `|x| = r0` as a
/// warped family over the round sphere `|x| = r0`.
pub fn schwarzschild_family(
    m: f64,
    r0: f64,
    depth: f64,
    nx: usize,
    nt: usize,
) -> Result<WarpedFamily> {
    let b = |r: f64| r * (1.0 + m / (2.0 * r)).powi(2);
    let b0 = b(r0);
    WarpedFamily::from_fn(
        round_base(b0, nx)?,
        depth,
        nt,
        |t| (1.0 + m / (2.0 * (r0 + t))).powi(2),
        |_, t| (b(r0 + t) / b0).powi(2),
    )
}

/// Largest `|R_stretched − R_collar|` on an `x`-independent family.
pub fn stretched_collar_gap(nx: usize, nt: usize) -> Result<f64> {
    let base = round_base(1.0, nx)?;
    let family = WarpedFamily::from_fn(
        base,
        0.5,
        nt,
        |t| 1.0 + 0.4 * t * t - 0.3 * t,
        |_, t| (1.0 + 0.6 * t).powi(2),
    )?;
    let unit = family.with_unit_lapse();
    let leaves = mt::collar_curvatures(&unit, Default::default())?;
    let collar = mt::collar_scalar_curvature(&family)?;
    let nx = family.base().len();
    let column = |v: &[f64], i: usize| -> Vec<f64> {
        (0..family.t().len()).map(|j| v[j * nx + i]).collect()
    };
    let mut gap = 0.0f64;
    for i in [0, nx / 3, nx / 2, nx - 1] {
        let stretched = mt::stretched_scalar_curvature(
            family.t(),
            &column(&leaves.scalar, i),
            &column(&leaves.gauss, i),
            &column(&leaves.mean, i),
            family.rho(),
        )?;
        let exact = column(&collar, i);
        gap = stretched
            .iter()
            .zip(&exact)
            .fold(gap, |m, (a, b)| m.max((a - b).abs()));
    }
    Ok(gap)
}

/// Stretched Schwarzschild foliation with lapse
/// `ρ = 1 + (1/λ − 1)((t + t₀)/t₀)³`: returns `(min R̃, R̃ at Σ)`.
pub fn cubic_lapse_minimum(lambda: f64, depth: f64, samples: usize) -> Result<(f64, f64)> {
    let fol = mt::schwarzschild_distance_foliation(1.0, 2.0, depth, samples)?;
    let rho: Vec<f64> = fol
        .t
        .iter()
        .map(|t| 1.0 + (1.0 / lambda - 1.0) * ((t + depth) / depth).powi(3))
        .collect();
    let zero = vec![0.0; samples];
    let r = mt::stretched_scalar_curvature(&fol.t, &zero, &fol.gauss, &fol.mean, &rho)?;
    Ok((
        r.iter().copied().fold(f64::INFINITY, f64::min),
        r[samples - 1],
    ))
}

/// Positive collar `ρ(t)²dt² + (1 + tH₂)γ` over the unit sphere with the
/// linear lapse `ρ = 1 + σt`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CollarCheck {
    pub sigma: f64,
    pub depth: f64,
    pub min_scalar_curvature: f64,
}

pub fn linear_lapse_collar(h2: f64, nx: usize, nt: usize) -> Result<CollarCheck> {
    let base = round_base(1.0, nx)?;
    let mut sigma: f64 = 0.25;
    for _ in 0..40 {
        let depth = (0.5 / sigma).min(0.5 / h2);
        let family = WarpedFamily::from_fn(
            base.clone(),
            depth,
            nt,
            |t| 1.0 + sigma * t,
            |_, t| 1.0 + t * h2,
        )?;
        let min = mt::collar_scalar_curvature(&family)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min > 0.0 {
            return Ok(CollarCheck {
                sigma,
                depth,
                min_scalar_curvature: min,
            });
        }
        sigma *= 2.0;
    }
    Err(Error::CertificateFailed)
}

fn collar_checks(samples: usize) -> Result<(Vec<Check>, CollarCheck)> {
    let nx = samples.min(256);
    let product = WarpedFamily::from_fn(round_base(1.0, nx)?, 1.0, 64, |_| 1.0, |_, _| 1.0)?;
    let product_gap = mt::collar_scalar_curvature(&product)?
        .iter()
        .fold(0.0f64, |m, v| m.max((v - 2.0).abs()));
    let schwarzschild = max_abs(&mt::collar_scalar_curvature(&schwarzschild_family(
        1.0, 4.0, 2.0, nx, samples,
    )?)?);
    let (cubic_min, cubic_surface) = cubic_lapse_minimum(0.8, 1.0, samples)?;
    let collar = linear_lapse_collar(1.0, nx, 128)?;
    Ok((
        vec![
            Check::at_most("product_collar_gap", product_gap, 1e-8),
            Check::at_most("schwarzschild_collar_residual", schwarzschild, 1e-4),
            Check::at_most(
                "stretched_vs_collar_gap",
                stretched_collar_gap(nx, samples)?,
                1e-6,
            ),
            Check::at_least("stretched_lapse_min", cubic_min, -1e-10),
            Check::at_least(
                "stretched_lapse_at_surface",
                cubic_surface,
                f64::MIN_POSITIVE,
            ),
            Check::at_least(
                "linear_lapse_collar_min",
                collar.min_scalar_curvature,
                f64::MIN_POSITIVE,
            ),
        ],
        collar,
    ))
}

pub fn run_suite(suite: Suite, samples: usize) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let mut collar = None;
    if matches!(suite, Suite::Foliation | Suite::All) {
        checks.extend(foliation_checks(samples)?);
    }
    if matches!(suite, Suite::Conformal | Suite::All) {
        checks.extend(conformal_checks(samples)?);
    }
    if matches!(suite, Suite::Collar | Suite::All) {
        let (c, report) = collar_checks(samples)?;
        checks.extend(c);
        collar = Some(report);
    }
    Ok(VerifyReport { checks, collar })
}
