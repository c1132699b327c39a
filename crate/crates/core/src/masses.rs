//! Quasi-local mass functionals on boundary data.

use std::f64::consts::PI;

use serde::Serialize;

use crate::critical::LambdaBracket;
use crate::embedding;
use crate::error::{Error, Result};
use crate::surface::{self, BartnikData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Bracketed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MassValue {
    pub value: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[f64; 2]>,
}

impl MassValue {
    pub fn exact(value: f64, method: Method) -> Self {
        MassValue {
            value,
            method,
            bracket: None,
        }
    }
}

/// The boundary integrals every functional is built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryIntegrals {
    pub area: f64,
    /// `∫ H dA`
    pub total_h: f64,
    /// `∫ H² dA`
    pub total_h_sq: f64,
}

impl BoundaryIntegrals {
    pub fn of(data: &BartnikData) -> Self {
        let p = &data.profile;
        let h = p.mean_curvature();
        let h_sq: Vec<f64> = h.iter().map(|v| v * v).collect();
        BoundaryIntegrals {
            area: surface::area(p),
            total_h: surface::integrate_scalar(p, h).expect("matching grid"),
            total_h_sq: surface::integrate_scalar(p, &h_sq).expect("matching grid"),
        }
    }

    /// `√(|Σ|/16π)`
    pub fn area_radius_factor(&self) -> f64 {
        (self.area / (16.0 * PI)).sqrt()
    }
}

/// `∫ H₀ dA` of the Euclidean embedding.
pub fn total_euclidean_h(data: &BartnikData) -> Result<f64> {
    let embedded = embedding::embed_revolution(&data.profile)?;
    surface::integrate_scalar(&data.profile, &embedded.h0)
}

/// `m_H = √(|Σ|/16π) (1 − (1/16π) ∫H² dA)`
pub fn hawking(data: &BartnikData) -> Result<MassValue> {
    let i = BoundaryIntegrals::of(data);
    let value = i.area_radius_factor() * (1.0 - i.total_h_sq / (16.0 * PI));
    Ok(MassValue::exact(value, Method::Quadrature))
}

/// `m_BY = (1/8π) ∫(H₀ − H) dA`
pub fn brown_york(data: &BartnikData) -> Result<MassValue> {
    let i = BoundaryIntegrals::of(data);
    let total_h0 = total_euclidean_h(data)?;
    Ok(MassValue::exact(
        (total_h0 - i.total_h) / (8.0 * PI),
        Method::Quadrature,
    ))
}

/// `√(|Σ|/16π) (1 − (∫H dA / ∫H₀ dA)²)`
pub fn miao(data: &BartnikData) -> Result<MassValue> {
    let i = BoundaryIntegrals::of(data);
    let ratio = i.total_h / total_euclidean_h(data)?;
    Ok(MassValue::exact(
        i.area_radius_factor() * (1.0 - ratio * ratio),
        Method::Quadrature,
    ))
}

/// `√(|Σ|/16π) (1 − 1/λ²)`, increasing in `λ`.
pub fn mass_from_parameter(area: f64, lambda: f64) -> f64 {
    (area / (16.0 * PI)).sqrt() * (1.0 - 1.0 / (lambda * lambda))
}

/// Critical-parameter mass. Exact when the bracket carries `λ₀`; otherwise
/// the value at the upper bound together with the image of the bracket.
pub fn critical_mass(data: &BartnikData, bracket: &LambdaBracket) -> Result<MassValue> {
    if bracket.lower > bracket.upper {
        return Err(Error::EmptyBracket {
            lower: bracket.lower,
            upper: bracket.upper,
        });
    }
    if !(bracket.lower > 0.0) {
        return Err(Error::NonPositiveLambda(bracket.lower));
    }
    let area = surface::area(&data.profile);
    Ok(match bracket.exact {
        Some(lambda0) => MassValue::exact(mass_from_parameter(area, lambda0), Method::ClosedForm),
        None => MassValue {
            value: mass_from_parameter(area, bracket.upper),
            method: Method::Bracketed,
            bracket: Some([
                mass_from_parameter(area, bracket.lower),
                mass_from_parameter(area, bracket.upper),
            ]),
        },
    })
}
