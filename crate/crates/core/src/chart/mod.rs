//! Chart ingestion: shapefile and JSON decoding, projection to the local
//! frame, and categorization into per-class layers.

mod axes;
mod dbf;
mod json;
mod memory;
mod projection;
mod shapefile;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;

pub use axes::{clean_waterway_axes, AxisSegment};
pub use dbf::{parse_dbf, DbfTable};
pub use json::{load_chart_json, parse_chart_json, write_chart_json};
pub use memory::{
    build_chart_memory, ChartFeatureSet, ClassRegistry, FeatureInfo, Layer, LineRecord, PointRecord, PolygonRecord,
    DEFAULT_CLASSES,
};
pub use projection::Projection;
pub use shapefile::{decode_shapefile, parse_shapefile, ShapeType};

#[derive(Debug, Error)]
pub enum ChartError {
    #[error("not a shapefile: file code {0} (expected 9994)")]
    BadMagic(i32),
    #[error("unsupported shape type {0}")]
    UnsupportedShapeType(i32),
    #[error("record count mismatch: {shp} shapes vs {dbf} attribute rows")]
    RecordCountMismatch { shp: usize, dbf: usize },
    #[error("truncated file: {0}")]
    TruncatedFile(String),
    #[error("chart schema error: {0}")]
    SchemaError(String),
    #[error("invalid geometry: {0}")]
    GeometryError(String),
    #[error("unknown feature class `{0}`")]
    UnknownClass(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Point,
    Polyline,
    Polygon,
}

/// Attribute value read from a dBASE column or a JSON chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AttrValue {
    Number(f64),
    Text(String),
}

impl AttrValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            AttrValue::Number(v) => Some(*v),
            AttrValue::Text(s) => s.trim().parse().ok(),
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            AttrValue::Text(s) => Some(s),
            AttrValue::Number(_) => None,
        }
    }
}

impl fmt::Display for AttrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttrValue::Number(v) => write!(f, "{v}"),
            AttrValue::Text(s) => f.write_str(s),
        }
    }
}

pub type Attributes = BTreeMap<String, AttrValue>;

/// One decoded chart record before categorization.
///
/// `parts` holds a single one-point part for points, the parts of a
/// polyline, or the rings of a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct RawFeature {
    pub kind: GeometryKind,
    pub parts: Vec<Vec<Point>>,
    pub attributes: Attributes,
}

impl RawFeature {
    /// Checks the ring/part invariants for the geometry kind.
    pub fn validate(&self) -> Result<(), ChartError> {
        match self.kind {
            GeometryKind::Point => {
                if self.parts.len() != 1 || self.parts[0].len() != 1 {
                    return Err(ChartError::GeometryError("point feature must hold exactly one vertex".into()));
                }
            }
            GeometryKind::Polyline => {
                if self.parts.is_empty() {
                    return Err(ChartError::GeometryError("polyline without parts".into()));
                }
                if let Some(part) = self.parts.iter().find(|p| p.len() < 2) {
                    return Err(ChartError::GeometryError(format!("polyline part with {} vertices", part.len())));
                }
            }
            GeometryKind::Polygon => {
                if self.parts.is_empty() {
                    return Err(ChartError::GeometryError("polygon without rings".into()));
                }
                for ring in &self.parts {
                    if ring.len() < 4 {
                        return Err(ChartError::GeometryError(format!(
                            "polygon ring with {} vertices (need at least 4)",
                            ring.len()
                        )));
                    }
                    if ring.first() != ring.last() {
                        return Err(ChartError::GeometryError("polygon ring is not closed".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Point> {
        self.parts.iter().flatten()
    }
}

/// A raw feature tagged with its chart class (`depare`, `wtwaxs`, ...).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedFeature {
    pub class: String,
    pub feature: RawFeature,
}

/// Loads every `<class>.shp`/`<class>.dbf` pair in a directory.
///
/// Coordinates are projected about the centre of the combined extent of all
/// files. The projection used is returned alongside the features.
pub fn load_shapefile_dir(dir: &std::path::Path) -> Result<(Vec<ClassifiedFeature>, Projection), ChartError> {
    let io_err = |path: &std::path::Path, source| ChartError::Io { path: path.display().to_string(), source };
    let mut stems = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| io_err(dir, e))? {
        let path = entry.map_err(|e| io_err(dir, e))?.path();
        if path.extension().and_then(|e| e.to_str()) == Some("shp") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                stems.push(stem.to_string());
            }
        }
    }
    stems.sort();

    let mut decoded = Vec::new();
    for stem in stems {
        let shp_path = dir.join(format!("{stem}.shp"));
        let dbf_path = dir.join(format!("{stem}.dbf"));
        let shp = std::fs::read(&shp_path).map_err(|e| io_err(&shp_path, e))?;
        let dbf = std::fs::read(&dbf_path).map_err(|e| io_err(&dbf_path, e))?;
        let features = decode_shapefile(&shp, &dbf)?;
        decoded.push((stem.to_lowercase(), features));
    }

    let projection = Projection::about_centroid(decoded.iter().flat_map(|(_, f)| f.iter())).unwrap_or_default();
    let features = decoded
        .into_iter()
        .flat_map(|(class, feats)| {
            feats.into_iter().map(move |f| ClassifiedFeature { class: class.clone(), feature: f })
        })
        .map(|mut cf| {
            projection.project_feature(&mut cf.feature);
            cf
        })
        .collect();
    Ok((features, projection))
}
