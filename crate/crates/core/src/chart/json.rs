//! JSON chart documents.
//!
//! ```json
//! { "origin": [3.72, 51.05],
//!   "features": [
//!     { "class": "depare",
//!       "geometry": { "kind": "polygon", "rings": [[[3.71, 51.04], ...]] },
//!       "attributes": { "SOUACC": 4.0, "region": "gent-01" } } ] }
//! ```
//!
//! Coordinates are longitude/latitude degrees. Points use
//! `"coordinates": [lon, lat]`, polylines `"parts"`, polygons `"rings"`.
//! `origin` is optional and pins the projection reference point.

use serde::{Deserialize, Serialize};

use super::{Attributes, ChartError, ChartFeatureSet, ClassifiedFeature, GeometryKind, Projection, RawFeature};
use crate::geometry::Point;

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum GeometryDoc {
    Point { coordinates: Point },
    Polyline { parts: Vec<Vec<Point>> },
    Polygon { rings: Vec<Vec<Point>> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FeatureDoc {
    class: String,
    geometry: GeometryDoc,
    attributes: Attributes,
}

#[derive(Debug, Serialize, Deserialize)]
struct ChartDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<Point>,
    features: Vec<FeatureDoc>,
}

fn to_feature(doc: FeatureDoc) -> Result<ClassifiedFeature, ChartError> {
    let (kind, parts) = match doc.geometry {
        GeometryDoc::Point { coordinates } => (GeometryKind::Point, vec![vec![coordinates]]),
        GeometryDoc::Polyline { parts } => (GeometryKind::Polyline, parts),
        GeometryDoc::Polygon { rings } => (GeometryKind::Polygon, rings),
    };
    let feature = RawFeature { kind, parts, attributes: doc.attributes };
    feature.validate()?;
    Ok(ClassifiedFeature { class: doc.class, feature })
}

fn decode(text: &str) -> Result<(Vec<ClassifiedFeature>, Option<Point>), ChartError> {
    let doc: ChartDoc = serde_json::from_str(text).map_err(|e| ChartError::SchemaError(e.to_string()))?;
    let features = doc.features.into_iter().map(to_feature).collect::<Result<Vec<_>, _>>()?;
    Ok((features, doc.origin))
}

/// Parses a JSON chart and projects it with the given projection.
pub fn parse_chart_json(text: &str, projection: &Projection) -> Result<Vec<ClassifiedFeature>, ChartError> {
    let (mut features, _) = decode(text)?;
    for f in &mut features {
        projection.project_feature(&mut f.feature);
    }
    Ok(features)
}

/// Parses a JSON chart, choosing the projection from the document's `origin`
/// or, failing that, the centre of the chart extent.
pub fn load_chart_json(text: &str) -> Result<(Vec<ClassifiedFeature>, Projection), ChartError> {
    let (mut features, origin) = decode(text)?;
    let projection = match origin {
        Some(o) => Projection::new(o.x, o.y),
        None => Projection::about_centroid(features.iter().map(|f| &f.feature)).unwrap_or_default(),
    };
    for f in &mut features {
        projection.project_feature(&mut f.feature);
    }
    Ok((features, projection))
}

/// Serializes a chart back to the JSON format (degrees, origin pinned).
pub fn write_chart_json(set: &ChartFeatureSet) -> String {
    let proj = set.projection;
    let unproject = |pts: &[Point]| pts.iter().map(|p| proj.inverse(*p)).collect::<Vec<_>>();
    let mut features = Vec::new();
    for (class, layer) in &set.layers {
        for p in &layer.points {
            features.push(FeatureDoc {
                class: class.clone(),
                geometry: GeometryDoc::Point { coordinates: proj.inverse(p.point) },
                attributes: p.info.attributes.clone(),
            });
        }
        for l in &layer.lines {
            features.push(FeatureDoc {
                class: class.clone(),
                geometry: GeometryDoc::Polyline { parts: l.parts.iter().map(|p| unproject(p)).collect() },
                attributes: l.info.attributes.clone(),
            });
        }
        for pg in &layer.polygons {
            features.push(FeatureDoc {
                class: class.clone(),
                geometry: GeometryDoc::Polygon { rings: pg.rings.iter().map(|r| unproject(r)).collect() },
                attributes: pg.info.attributes.clone(),
            });
        }
    }
    let doc = ChartDoc { origin: Some(Point::new(proj.lon0, proj.lat0)), features };
    serde_json::to_string_pretty(&doc).expect("chart document serializes")
}
