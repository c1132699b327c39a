//! Bounds on the critical parameter `λ₀`.
//!
//! The upper bound is the Shi–Tam ratio `∫H₀ dA / ∫H dA`. The lower bound is
//! certified by building a fill-in of `(Σ, γ, εH)`: on the product
//! `Σ × [−1, 0]` with `g = dt² + γ` take `u = 1 + εv`, `v = (H/4) φ(t)`, and
//! check that `u⁴g` has positive scalar curvature
//! `u⁻⁵(−8εΔv + 2K u)` everywhere on the grid. Since `∂_t v = H/4` on `Σ`,
//! the boundary mean curvature of `u⁴g` is `εH`.

use serde::Serialize;

use crate::embedding;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::stencil;
use crate::surface::{self, BartnikData};

/// Collar nodes on `[−1, 0]`.
pub const COLLAR_NODES: usize = 256;
const BISECTION_STEPS: usize = 60;
const SAFETY: f64 = 0.99;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FillInCertificate {
    pub epsilon: f64,
    #[serde(skip)]
    pub collar_t: Vec<f64>,
    #[serde(skip)]
    pub phi_profile: Vec<f64>,
    pub min_scalar_curvature: f64,
    pub min_conformal_factor: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaBracket {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
    pub lower: f64,
    pub upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FillInCertificate>,
}

impl LambdaBracket {
    pub fn new(lower: f64, upper: f64, exact: Option<f64>) -> Result<Self> {
        if !(lower > 0.0) {
            return Err(Error::NonPositiveLambda(lower));
        }
        if lower > upper {
            return Err(Error::EmptyBracket { lower, upper });
        }
        if let Some(x) = exact {
            if x < lower || x > upper {
                return Err(Error::EmptyBracket {
                    lower: x.max(lower),
                    upper: x.min(upper),
                });
            }
        }
        Ok(LambdaBracket {
            lower,
            upper,
            exact,
            certificate: None,
        })
    }
}

/// `∫H₀ dA / ∫H dA`; every `λ` of positive type satisfies `λ ≤` this.
pub fn shi_tam_upper(data: &BartnikData) -> Result<f64> {
    let p = &data.profile;
    let embedded = embedding::embed_revolution(p)?;
    let total_h0 = surface::integrate_scalar(p, &embedded.h0)?;
    let total_h = surface::integrate_scalar(p, p.mean_curvature())?;
    Ok(total_h0 / total_h)
}

/// Quintic smoothstep cutoff: 0 for `t ≤ −1/2`, 1 for `t ≥ −1/4`.
/// Returns `(χ, χ', χ'')`.
fn cutoff(t: f64) -> (f64, f64, f64) {
    let x = (t + 0.5) * 4.0;
    if x <= 0.0 {
        (0.0, 0.0, 0.0)
    } else if x >= 1.0 {
        (1.0, 0.0, 0.0)
    } else {
        let s = x * x * x * (x * (6.0 * x - 15.0) + 10.0);
        let ds = 30.0 * x * x * (x - 1.0) * (x - 1.0);
        let d2s = 60.0 * x * (2.0 * x - 1.0) * (x - 1.0);
        (s, 4.0 * ds, 16.0 * d2s)
    }
}

/// `φ(t) = t χ(t)` and `φ''(t)` on the collar grid.
fn collar_profile(nodes: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let t = stencil::linspace(-1.0, 0.0, nodes);
    let (phi, phi_dd) = t
        .iter()
        .map(|&s| {
            let (c, dc, d2c) = cutoff(s);
            (s * c, 2.0 * dc + s * d2c)
        })
        .unzip();
    (t, phi, phi_dd)
}

/// Per-node coefficients of the affine map `ε ↦ −8εΔv + 2K(1 + εv)`.
struct Collar {
    nx: usize,
    nt: usize,
    /// `2K` at each surface node.
    base: Vec<f64>,
    /// Slope in `ε` at node `(i, j)`, row-major over surface index.
    slope: Vec<f64>,
    v: Vec<f64>,
    phi: Vec<f64>,
    t: Vec<f64>,
    max_laplacian: f64,
    k_min: f64,
}

impl Collar {
    fn build(data: &BartnikData, nodes: usize) -> Result<Self> {
        data.require_valid()?;
        if nodes < 8 {
            return Err(Error::InvalidSpec(format!(
                "collar resolution {nodes} below 8"
            )));
        }
        let p = &data.profile;
        let k = surface::gauss_curvature(p);
        let h = p.mean_curvature();
        let lap_h = surface::laplacian(p, h)?;
        let (t, phi, phi_dd) = collar_profile(nodes);
        let (nx, nt) = (p.len(), nodes);
        let mut slope = Vec::with_capacity(nx * nt);
        let mut v = Vec::with_capacity(nx * nt);
        let mut max_laplacian = 0.0f64;
        for i in 0..nx {
            for j in 0..nt {
                let vij = 0.25 * h[i] * phi[j];
                let lap_v = 0.25 * h[i] * phi_dd[j] + 0.25 * phi[j] * lap_h[i];
                max_laplacian = max_laplacian.max(lap_v.abs());
                slope.push(-8.0 * lap_v + 2.0 * k[i] * vij);
                v.push(vij);
            }
        }
        let k_min = k.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(Collar {
            nx,
            nt,
            base: k.iter().map(|x| 2.0 * x).collect(),
            slope,
            v,
            phi,
            t,
            max_laplacian,
            k_min,
        })
    }

    fn len(&self) -> usize {
        self.nx * self.nt
    }

    fn scalar_numerator(&self, idx: usize, eps: f64) -> f64 {
        self.base[idx / self.nt] + eps * self.slope[idx]
    }

    /// `(min R_ε, min u_ε)` over the grid.
    fn minima(&self, eps: f64, exec: Exec) -> (f64, f64) {
        let min_u = exec.min(self.len(), |idx| 1.0 + eps * self.v[idx]);
        let min_r = exec.min(self.len(), |idx| {
            let u = 1.0 + eps * self.v[idx];
            self.scalar_numerator(idx, eps) / u.powi(5)
        });
        (min_r, min_u)
    }

    fn feasible(&self, eps: f64, exec: Exec) -> bool {
        // u > 0 and the numerator > 0 at every node, in one pass.
        exec.min(self.len(), |idx| {
            (1.0 + eps * self.v[idx]).min(self.scalar_numerator(idx, eps))
        }) > 0.0
    }
}

pub fn fillin_certificate(
    data: &BartnikData,
    collar_resolution: usize,
) -> Result<FillInCertificate> {
    fillin_certificate_with(data, collar_resolution, Exec::default())
}

/// Largest grid-certified `ε` (times a 0.99 safety factor) found by
/// doubling then 60 bisection steps.
pub fn fillin_certificate_with(
    data: &BartnikData,
    collar_resolution: usize,
    exec: Exec,
) -> Result<FillInCertificate> {
    let collar = Collar::build(data, collar_resolution)?;
    let mut lo = 0.0;
    let mut hi = 8.0 * collar.k_min / (8.0 * collar.max_laplacian + 1.0);
    let mut doublings = 0;
    while collar.feasible(hi, exec) {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 2000 || !hi.is_finite() {
            return Err(Error::CertificateFailed);
        }
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if collar.feasible(mid, exec) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let epsilon = SAFETY * lo;
    if !(epsilon > f64::MIN_POSITIVE) {
        return Err(Error::CertificateFailed);
    }
    let (min_scalar_curvature, min_conformal_factor) = collar.minima(epsilon, exec);
    if !(min_scalar_curvature > 0.0 && min_conformal_factor > 0.0) {
        return Err(Error::CertificateFailed);
    }
    Ok(FillInCertificate {
        epsilon,
        collar_t: collar.t,
        phi_profile: collar.phi,
        min_scalar_curvature,
        min_conformal_factor,
    })
}

/// Recomputes the grid minima for a given `ε`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertificateCheck {
    pub min_scalar_curvature: f64,
    pub min_conformal_factor: f64,
}

impl CertificateCheck {
    pub fn passes(&self) -> bool {
        self.min_scalar_curvature > 0.0 && self.min_conformal_factor > 0.0
    }
}

pub fn verify_certificate(
    data: &BartnikData,
    epsilon: f64,
    collar_resolution: usize,
) -> Result<CertificateCheck> {
    let collar = Collar::build(data, collar_resolution)?;
    let (min_scalar_curvature, min_conformal_factor) = collar.minima(epsilon, Exec::default());
    Ok(CertificateCheck {
        min_scalar_curvature,
        min_conformal_factor,
    })
}

/// `λ₀ = 2/(H R)` for round data with constant `H`.
pub fn exact_round(data: &BartnikData) -> Result<f64> {
    let report = surface::validate(data);
    if !report.diagnostics.is_empty() {
        return Err(Error::NotBartnikData(report.diagnostics));
    }
    if !(report.is_round && report.is_constant_h) {
        return Err(Error::NotRound {
            round_residual: report.round_residual,
            h_residual: report.h_residual,
        });
    }
    let h = data.profile.mean_curvature();
    let mean_h = h.iter().sum::<f64>() / h.len() as f64;
    Ok(2.0 / (mean_h * report.areal_radius))
}

pub fn bracket(data: &BartnikData) -> Result<LambdaBracket> {
    bracket_with(data, Exec::default())
}

/// Certificate lower bound, Shi–Tam upper bound and, for round constant-H
/// data, the exact value. On the exact path the upper bound is raised to
/// `λ₀` if quadrature left it a few ulps below.
pub fn bracket_with(data: &BartnikData, exec: Exec) -> Result<LambdaBracket> {
    let report = data.require_valid()?;
    let certificate = fillin_certificate_with(data, COLLAR_NODES, exec)?;
    let mut upper = shi_tam_upper(data)?;
    let exact = if report.is_round && report.is_constant_h {
        Some(exact_round(data)?)
    } else {
        None
    };
    if let Some(x) = exact {
        upper = upper.max(x);
    }
    let mut out = LambdaBracket::new(certificate.epsilon, upper, exact)?;
    out.certificate = Some(certificate);
    Ok(out)
}

/// Brackets a batch of datasets, one per worker.
pub fn bracket_many(data: &[BartnikData], exec: Exec) -> Vec<Result<LambdaBracket>> {
    exec.map(data.len(), |i| bracket_with(&data[i], Exec::Sequential))
}
