//! Scalar curvature of rotationally symmetric 3-metrics, evaluated through
//! the foliation identity
//! `R = −2∂_τH + 2K − H² − |h|²` with umbilic leaves (`|h|² = H²/2`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::stencil::{self, Boundary};
use crate::surface::{self, RadialProfile};

/// `g = A(r)² dr² + B(r)² g_round`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialThreeMetric {
    r: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

fn check_grid(grid: &[f64]) -> Result<f64> {
    if grid.len() < surface::MIN_SAMPLES {
        return Err(Error::TooFewSamples(grid.len()));
    }
    if let Some(i) = grid.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::NonMonotoneGrid(i + 1));
    }
    if !stencil::is_uniform(grid) {
        return Err(Error::InvalidSpec("radial grids must be uniform".into()));
    }
    Ok((grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64)
}

fn same_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::GridMismatch { expected, found })
    }
}

impl RadialThreeMetric {
    pub fn new(r: Vec<f64>, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        check_grid(&r)?;
        same_len(r.len(), a.len())?;
        same_len(r.len(), b.len())?;
        if let Some(i) = a.iter().position(|&v| !(v > 0.0)) {
            return Err(Error::NonPositiveAlpha {
                index: i,
                value: a[i],
            });
        }
        if let Some(i) = b.iter().position(|&v| !(v > 0.0)) {
            return Err(Error::DegenerateLeaf {
                index: i,
                value: b[i],
            });
        }
        Ok(RadialThreeMetric { r, a, b })
    }

    /// Samples `r ↦ (A, B)` on `n` uniform points of `[r0, r1]`.
    pub fn from_fn(r0: f64, r1: f64, n: usize, f: impl Fn(f64) -> (f64, f64)) -> Result<Self> {
        let r = stencil::linspace(r0, r1, n);
        let (a, b) = r.iter().map(|&x| f(x)).unzip();
        Self::new(r, a, b)
    }

    /// `δ` in polar coordinates.
    pub fn flat(r0: f64, r1: f64, n: usize) -> Result<Self> {
        Self::from_fn(r0, r1, n, |r| (1.0, r))
    }

    /// Isotropic Schwarzschild, `(1 + m/2r)⁴ δ`.
    pub fn schwarzschild(m: f64, r0: f64, r1: f64, n: usize) -> Result<Self> {
        Self::from_fn(r0, r1, n, |r| {
            let psi = 1.0 + m / (2.0 * r);
            (psi * psi, r * psi * psi)
        })
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    fn step(&self) -> f64 {
        (self.r[self.r.len() - 1] - self.r[0]) / (self.r.len() - 1) as f64
    }

    fn d(&self, f: &[f64]) -> Vec<f64> {
        stencil::derivative(f, self.step(), Boundary::OneSided, Boundary::OneSided)
    }

    fn d2(&self, f: &[f64]) -> Vec<f64> {
        stencil::second_derivative(f, self.step(), Boundary::OneSided, Boundary::OneSided)
    }

    /// Leaf mean curvature `H = 2B'/(AB)`.
    pub fn leaf_mean_curvature(&self) -> Vec<f64> {
        let db = self.d(&self.b);
        (0..self.r.len())
            .map(|i| 2.0 * db[i] / (self.a[i] * self.b[i]))
            .collect()
    }
}

/// Scalar curvature of `A²dr² + B² g_round` through the foliation by
/// spheres, with `∂_τ = A⁻¹∂_r` and `K = 1/B²`.
pub fn foliation_scalar_curvature(metric: &RadialThreeMetric) -> Result<Vec<f64>> {
    let (a, b) = (&metric.a, &metric.b);
    let (da, db, d2b) = (metric.d(a), metric.d(b), metric.d2(b));
    Ok((0..a.len())
        .map(|i| {
            let h = 2.0 * db[i] / (a[i] * b[i]);
            let dh = 2.0 * d2b[i] / (a[i] * b[i])
                - 2.0 * db[i] * da[i] / (a[i] * a[i] * b[i])
                - 2.0 * db[i] * db[i] / (a[i] * b[i] * b[i]);
            -2.0 * dh / a[i] + 2.0 / (b[i] * b[i]) - 1.5 * h * h
        })
        .collect())
}

/// `R̄ = u⁻⁵(−8Δu + Ru)` for `ḡ = u⁴g`, radial `u`.
pub fn conformal_scalar(metric: &RadialThreeMetric, u: &[f64]) -> Result<Vec<f64>> {
    same_len(metric.r.len(), u.len())?;
    if let Some(&bad) = u.iter().find(|&&v| !(v > 0.0)) {
        return Err(Error::NonPositiveConformalFactor(bad));
    }
    let scalar = foliation_scalar_curvature(metric)?;
    let (a, b) = (&metric.a, &metric.b);
    let (da, db) = (metric.d(a), metric.d(b));
    let (du, d2u) = (metric.d(u), metric.d2(u));
    Ok((0..u.len())
        .map(|i| {
            let a2 = a[i] * a[i];
            let lap = d2u[i] / a2 + (2.0 * db[i] / (a2 * b[i]) - da[i] / (a2 * a[i])) * du[i];
            (-8.0 * lap + scalar[i] * u[i]) / u[i].powi(5)
        })
        .collect())
}

/// `H̄ = u⁻²H + 4u⁻³ ∂_ν u`.
pub fn conformal_mean_curvature(h: f64, u: f64, du_dn: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::NonPositiveConformalFactor(u));
    }
    Ok(h / (u * u) + 4.0 * du_dn / (u * u * u))
}

/// `R/ρ² + 2K(1 − ρ⁻²) + 2ρ'H/ρ³` for `ρ²dt² + G_t` given the curvature
/// data of `dt² + G_t`.
pub fn stretched_scalar_curvature(
    t: &[f64],
    base_scalar: &[f64],
    k: &[f64],
    h: &[f64],
    rho: &[f64],
) -> Result<Vec<f64>> {
    let step = check_grid(t)?;
    for len in [base_scalar.len(), k.len(), h.len(), rho.len()] {
        same_len(t.len(), len)?;
    }
    if let Some(&bad) = rho.iter().find(|&&v| !(v > 0.0)) {
        return Err(Error::InvalidSpec(format!(
            "lapse must be positive, got {bad}"
        )));
    }
    let drho = stencil::derivative(rho, step, Boundary::OneSided, Boundary::OneSided);
    Ok((0..t.len())
        .map(|i| {
            let r2 = rho[i] * rho[i];
            base_scalar[i] / r2
                + 2.0 * k[i] * (1.0 - 1.0 / r2)
                + 2.0 * drho[i] * h[i] / (r2 * rho[i])
        })
        .collect())
}

/// `g = ρ(t)² dt² + f(x, t) γ(x)` on `Σ × [−T, 0]`. `factor` is stored
/// row-major with the `t` index outermost.
#[derive(Clone, Debug, PartialEq)]
pub struct WarpedFamily {
    t: Vec<f64>,
    rho: Vec<f64>,
    base: RadialProfile,
    factor: Vec<f64>,
}

impl WarpedFamily {
    pub fn new(t: Vec<f64>, rho: Vec<f64>, base: RadialProfile, factor: Vec<f64>) -> Result<Self> {
        check_grid(&t)?;
        same_len(t.len(), rho.len())?;
        same_len(t.len() * base.len(), factor.len())?;
        if let Some(&bad) = rho.iter().find(|&&v| !(v > 0.0)) {
            return Err(Error::InvalidSpec(format!(
                "lapse must be positive, got {bad}"
            )));
        }
        let nx = base.len();
        if let Some(idx) = factor.iter().position(|&v| !(v > 0.0)) {
            return Err(Error::FactorNonPositive {
                t_index: idx / nx,
                x_index: idx % nx,
                value: factor[idx],
            });
        }
        Ok(WarpedFamily {
            t,
            rho,
            base,
            factor,
        })
    }

    /// Tabulates `ρ(t)` and `f(x, t)` on `n` uniform points of `[−depth, 0]`.
    pub fn from_fn(
        base: RadialProfile,
        depth: f64,
        n: usize,
        rho: impl Fn(f64) -> f64,
        factor: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let t = stencil::linspace(-depth, 0.0, n);
        let rho = t.iter().map(|&s| rho(s)).collect();
        let mut f = Vec::with_capacity(n * base.len());
        for &s in &t {
            f.extend(base.t().iter().map(|&x| factor(x, s)));
        }
        Self::new(t, rho, base, f)
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn base(&self) -> &RadialProfile {
        &self.base
    }

    pub fn factor(&self) -> &[f64] {
        &self.factor
    }

    /// The same family with unit lapse.
    pub fn with_unit_lapse(&self) -> Self {
        WarpedFamily {
            rho: vec![1.0; self.t.len()],
            ..self.clone()
        }
    }
}

/// Per-node leaf data of a warped family, laid out like the factor.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafCurvatures {
    pub gauss: Vec<f64>,
    pub mean: Vec<f64>,
    pub scalar: Vec<f64>,
}

pub fn collar_scalar_curvature(family: &WarpedFamily) -> Result<Vec<f64>> {
    Ok(collar_curvatures(family, Exec::default())?.scalar)
}

/// Leaf Gauss curvature `e^{−2w}(K_γ − Δ_γ w)` with `w = ½ log f`, leaf mean
/// curvature `∂_t f/(ρ f)`, and the scalar curvature they assemble to.
pub fn collar_curvatures(family: &WarpedFamily, exec: Exec) -> Result<LeafCurvatures> {
    let base = &family.base;
    let (nx, nt) = (base.len(), family.t.len());
    let step = (family.t[nt - 1] - family.t[0]) / (nt - 1) as f64;
    let k_base = surface::gauss_curvature(base);
    let drho = stencil::derivative(&family.rho, step, Boundary::OneSided, Boundary::OneSided);

    // Leaf Gauss curvature, one row per t.
    let rows: Vec<Result<Vec<f64>>> = exec.map(nt, |j| {
        let f = &family.factor[j * nx..(j + 1) * nx];
        let w: Vec<f64> = f.iter().map(|v| 0.5 * v.ln()).collect();
        let lap = surface::laplacian(base, &w)?;
        Ok((0..nx).map(|i| (k_base[i] - lap[i]) / f[i]).collect())
    });
    let mut gauss = vec![0.0; nx * nt];
    for (j, row) in rows.into_iter().enumerate() {
        gauss[j * nx..(j + 1) * nx].copy_from_slice(&row?);
    }

    // t-derivatives of the factor, one column per x.
    let columns: Vec<(Vec<f64>, Vec<f64>)> = exec.map(nx, |i| {
        let col: Vec<f64> = (0..nt).map(|j| family.factor[j * nx + i]).collect();
        (
            stencil::derivative(&col, step, Boundary::OneSided, Boundary::OneSided),
            stencil::second_derivative(&col, step, Boundary::OneSided, Boundary::OneSided),
        )
    });

    let node = |idx: usize| {
        let (j, i) = (idx / nx, idx % nx);
        let f = family.factor[idx];
        let (ft, ftt) = (columns[i].0[j], columns[i].1[j]);
        let rho = family.rho[j];
        let h = ft / (rho * f);
        let dh = ftt / (rho * f) - ft * drho[j] / (rho * rho * f) - ft * ft / (rho * f * f);
        (h, -2.0 * dh / rho + 2.0 * gauss[idx] - 1.5 * h * h)
    };
    let (mean, scalar) = exec.map(nx * nt, node).into_iter().unzip();
    Ok(LeafCurvatures {
        gauss,
        mean,
        scalar,
    })
}

/// Inverse of the isotropic Schwarzschild distance
/// `s(r) = r + m ln r − m²/(4r)`, by bisection on `[lo, hi]`.
pub fn isotropic_radius_at_distance(m: f64, s: f64, lo: f64, hi: f64) -> f64 {
    let dist = |r: f64| r + m * r.ln() - m * m / (4.0 * r);
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dist(mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Round leaves of isotropic Schwarzschild sampled at uniform geodesic
/// distance on `[−depth, 0]` from the sphere `|x| = r0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistanceFoliation {
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub gauss: Vec<f64>,
    pub mean: Vec<f64>,
}

pub fn schwarzschild_distance_foliation(
    m: f64,
    r0: f64,
    depth: f64,
    n: usize,
) -> Result<DistanceFoliation> {
    if !(m > 0.0 && r0 > m / 2.0 && depth > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "need m > 0, r0 > m/2, depth > 0; got {m}, {r0}, {depth}"
        )));
    }
    let dist = |r: f64| r + m * r.ln() - m * m / (4.0 * r);
    let s0 = dist(r0);
    let horizon = m / 2.0;
    if dist(horizon) >= s0 - depth {
        return Err(Error::InvalidSpec(format!(
            "depth {depth} reaches the horizon"
        )));
    }
    let t = stencil::linspace(-depth, 0.0, n);
    let r: Vec<f64> = t
        .iter()
        .map(|&s| isotropic_radius_at_distance(m, s0 + s, horizon, r0))
        .collect();
    let (gauss, mean) = r
        .iter()
        .map(|&x| {
            let psi = 1.0 + m / (2.0 * x);
            let b = x * psi * psi;
            // dB/dr = ψ(1 − m/2r), and ds/dr = ψ².
            (
                1.0 / (b * b),
                2.0 * (1.0 - m / (2.0 * x)) / (x * psi * psi * psi),
            )
        })
        .unzip();
    Ok(DistanceFoliation { t, r, gauss, mean })
}
