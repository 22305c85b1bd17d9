//! Path-following performance indices computed from a finished run.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{closest_on_polyline, polyline_length, wrap_pi, Point};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("at least two waypoints are required")]
    TooFewWaypoints,
    #[error("reference speed must be positive")]
    ZeroSpeed,
    #[error("at least two samples are required")]
    TooFewSamples,
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("reference path needs at least two points")]
    DegeneratePath,
}

/// Planned length of the waypoint route.
pub fn nominal_distance(wps: &[Point]) -> Result<f64, MetricsError> {
    if wps.len() < 2 {
        return Err(MetricsError::TooFewWaypoints);
    }
    Ok(polyline_length(wps))
}

pub fn nominal_time(d_nominal: f64, v_ref: f64) -> Result<f64, MetricsError> {
    if !(v_ref > 0.0) {
        return Err(MetricsError::ZeroSpeed);
    }
    Ok(d_nominal / v_ref)
}

/// Distance sailed along the logged positions.
pub fn actual_distance(positions: &[Point]) -> Result<f64, MetricsError> {
    if positions.len() < 2 {
        return Err(MetricsError::TooFewSamples);
    }
    Ok(polyline_length(positions))
}

pub fn actual_time(iterations: usize, dt: f64) -> f64 {
    iterations as f64 * dt
}

/// Signed and absolute time integrals of the wrapped heading error.
pub fn cumulative_heading_error(psi: &[f64], psi_d: &[f64], dt: f64) -> Result<(f64, f64), MetricsError> {
    if psi.len() != psi_d.len() {
        return Err(MetricsError::LengthMismatch(psi.len(), psi_d.len()));
    }
    let (mut signed, mut abs) = (0.0, 0.0);
    for (a, b) in psi.iter().zip(psi_d) {
        let e = wrap_pi(a - b);
        signed += e * dt;
        abs += e.abs() * dt;
    }
    Ok((signed, abs))
}

/// Time integral of the distance from each logged position to the closest
/// point of the reference path.
pub fn cxte(positions: &[Point], path: &[Point], dt: f64) -> Result<f64, MetricsError> {
    if path.len() < 2 {
        return Err(MetricsError::DegeneratePath);
    }
    let mut total = 0.0;
    for &p in positions {
        let (_, d) = closest_on_polyline(p, path).ok_or(MetricsError::DegeneratePath)?;
        total += d * dt;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    #[serde(rename = "D_nominal")]
    pub d_nominal: f64,
    #[serde(rename = "T_nominal")]
    pub t_nominal: f64,
    #[serde(rename = "D_actual")]
    pub d_actual: f64,
    #[serde(rename = "T_actual")]
    pub t_actual: f64,
    pub psi_e_c_signed: f64,
    pub psi_e_c_abs: f64,
    #[serde(rename = "CXTE")]
    pub cxte: f64,
}

/// Evaluates every index for one run.
pub fn compute_report(
    wps: &[Point],
    v_ref: f64,
    positions: &[Point],
    psi: &[f64],
    psi_d: &[f64],
    dt: f64,
) -> Result<MetricsReport, MetricsError> {
    let d_nominal = nominal_distance(wps)?;
    let (psi_e_c_signed, psi_e_c_abs) = cumulative_heading_error(psi, psi_d, dt)?;
    Ok(MetricsReport {
        d_nominal,
        t_nominal: nominal_time(d_nominal, v_ref)?,
        d_actual: actual_distance(positions)?,
        t_actual: actual_time(positions.len(), dt),
        psi_e_c_signed,
        psi_e_c_abs,
        cxte: cxte(positions, wps, dt)?,
    })
}
