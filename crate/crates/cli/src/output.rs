//! Run artifacts: trajectory CSV, metrics JSON and route GeoJSON.

use std::io::Write;
use std::path::Path;

use absim_core::chart::Projection;
use absim_core::metrics::MetricsReport;
use absim_core::planner::PlannedRoute;
use absim_core::sim::{Outcome, SimLog};
use serde_json::{json, Value};

/// Fixed own-ship columns of the trajectory CSV.
pub const CSV_COLUMNS: [&str; 21] = [
    "t", "x", "y", "psi", "u", "v", "r", "chi_d", "chi_m", "U_m", "psi_d", "r_d", "delta_c", "delta", "X_H", "Y_H",
    "N_H", "X_P", "X_R", "Y_R", "N_R",
];

/// Per-target column suffixes, repeated as `tgt<i>_<suffix>`.
pub const TARGET_COLUMNS: [&str; 4] = ["x", "y", "course", "speed"];

/// Formats `v` with nine significant digits, switching to exponent notation
/// for very large or very small magnitudes, like C's `%.9g`.
pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..9).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_header(targets: usize) -> String {
    let mut cols: Vec<String> = CSV_COLUMNS.iter().map(|c| c.to_string()).collect();
    for i in 0..targets {
        cols.extend(TARGET_COLUMNS.iter().map(|c| format!("tgt{i}_{c}")));
    }
    cols.join(",")
}

pub fn trajectory_csv(log: &SimLog) -> String {
    let targets = log.target_count();
    let mut out = csv_header(targets);
    out.push('\n');
    for r in &log.records {
        let s = &r.state;
        let f = &r.forces;
        let mut row = vec![
            r.t,
            s.x,
            s.y,
            s.psi,
            s.u,
            s.v,
            s.r,
            r.chi_d,
            r.decision.chi_m,
            r.decision.u_m,
            r.psi_d,
            r.r_d,
            r.delta_c,
            r.delta,
            f.hull.x,
            f.hull.y,
            f.hull.n,
            f.propeller,
            f.rudder.x,
            f.rudder.y,
            f.rudder.n,
        ];
        for o in r.targets.iter().take(targets) {
            row.extend([o.x, o.y, o.course, o.speed]);
        }
        let cells: Vec<String> = row.into_iter().map(fmt_sig9).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Metrics document; the indices are `null` when the run was too short.
pub fn metrics_json(metrics: Option<&MetricsReport>, outcome: Outcome, fault: Option<&str>) -> Value {
    let mut doc = match metrics {
        Some(m) => serde_json::to_value(m).expect("metrics serialize"),
        None => json!({
            "D_nominal": null, "T_nominal": null, "D_actual": null, "T_actual": null,
            "psi_e_c_signed": null, "psi_e_c_abs": null, "CXTE": null,
        }),
    };
    doc["outcome"] = json!(outcome.as_str());
    if let Some(f) = fault {
        doc["fault"] = json!(f);
    }
    doc
}

/// Route as a GeoJSON Feature with a LineString geometry. Coordinates are
/// `[lon, lat]` when a projection is given and local metres otherwise.
pub fn route_geojson(route: &PlannedRoute, projection: Option<&Projection>) -> Value {
    let coords: Vec<[f64; 2]> = route
        .path_points
        .iter()
        .map(|&p| match projection {
            Some(pr) => {
                let g = pr.inverse(p);
                [g.x, g.y]
            }
            None => [p.x, p.y],
        })
        .collect();
    json!({
        "type": "Feature",
        "geometry": { "type": "LineString", "coordinates": coords },
        "properties": {
            "depths": route.path_depths,
            "units": if projection.is_some() { "degrees" } else { "metres" },
        },
    })
}

/// Writes `contents` to a temporary file next to `path` and renames it into
/// place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
