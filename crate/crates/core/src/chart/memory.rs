use std::collections::{BTreeMap, BTreeSet};

use super::{Attributes, ChartError, ClassifiedFeature, GeometryKind, Projection};
use crate::geometry::{BoundingBox, Point};

/// Classes known out of the box: depth areas, waterway axes, bridges, land.
pub const DEFAULT_CLASSES: [&str; 4] = ["depare", "wtwaxs", "bridge", "lndare"];

/// The set of feature classes the chart memory accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRegistry {
    classes: BTreeSet<String>,
}

impl Default for ClassRegistry {
    fn default() -> Self {
        Self { classes: DEFAULT_CLASSES.iter().map(|s| s.to_string()).collect() }
    }
}

impl ClassRegistry {
    pub fn register(&mut self, class: impl Into<String>) {
        self.classes.insert(class.into().to_lowercase());
    }

    pub fn contains(&self, class: &str) -> bool {
        self.classes.contains(class)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(String::as_str)
    }
}

/// Per-entity attributes. `attributes` keeps every source attribute verbatim;
/// the other fields are derived from it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureInfo {
    pub souacc: Option<f64>,
    pub verdat: Option<f64>,
    /// Resolved depth in meters (depth areas only).
    pub depth: Option<f64>,
    pub boundingbox: Option<BoundingBox>,
    pub region: Option<String>,
    pub attributes: Attributes,
}

impl FeatureInfo {
    fn from_attributes(attributes: Attributes, bbox: Option<BoundingBox>) -> Self {
        let num = |k: &str| attributes.get(k).and_then(|v| v.as_f64());
        let region = attributes.get("region").or_else(|| attributes.get("sourcefile")).map(|v| v.to_string());
        FeatureInfo { souacc: num("SOUACC"), verdat: num("VERDAT"), depth: None, boundingbox: bbox, region, attributes }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    pub point: Point,
    pub info: FeatureInfo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineRecord {
    pub parts: Vec<Vec<Point>>,
    pub info: FeatureInfo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonRecord {
    pub rings: Vec<Vec<Point>>,
    pub info: FeatureInfo,
}

impl PolygonRecord {
    /// Resolved depth, 0 when the record carries none.
    pub fn depth(&self) -> f64 {
        self.info.depth.unwrap_or(0.0)
    }

    pub fn contains(&self, p: Point) -> bool {
        crate::geometry::point_in_polygon(p, &self.rings)
    }
}

/// One feature class worth of geometry.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Layer {
    pub points: Vec<PointRecord>,
    pub lines: Vec<LineRecord>,
    pub polygons: Vec<PolygonRecord>,
}

impl Layer {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty() && self.polygons.is_empty()
    }
}

/// Categorized chart geometry keyed by class name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChartFeatureSet {
    pub layers: BTreeMap<String, Layer>,
    pub projection: Projection,
}

impl ChartFeatureSet {
    pub fn layer(&self, class: &str) -> Option<&Layer> {
        self.layers.get(class)
    }

    /// The depth-area layer, or an empty layer when the chart has none.
    pub fn depare(&self) -> &Layer {
        static EMPTY: Layer = Layer { points: Vec::new(), lines: Vec::new(), polygons: Vec::new() };
        self.layers.get("depare").unwrap_or(&EMPTY)
    }

    /// Extent of all geometry in the chart.
    pub fn extent(&self) -> Option<BoundingBox> {
        let mut pts: Vec<&Point> = Vec::new();
        for layer in self.layers.values() {
            pts.extend(layer.points.iter().map(|p| &p.point));
            pts.extend(layer.lines.iter().flat_map(|l| l.parts.iter().flatten()));
            pts.extend(layer.polygons.iter().flat_map(|p| p.rings.iter().flatten()));
        }
        BoundingBox::of(pts)
    }
}

/// Depth precedence: SOUACC, then VERDAT, else 0 (non-navigable).
fn resolve_depth(info: &FeatureInfo) -> f64 {
    match info.souacc.or(info.verdat) {
        Some(d) => d.max(0.0),
        None => {
            log::warn!("depth area (region {:?}) has neither SOUACC nor VERDAT; treating as depth 0", info.region);
            0.0
        }
    }
}

/// Routes classified features into per-class layers.
///
/// Every registered class gets a layer, even when empty.
pub fn build_chart_memory(
    features: Vec<ClassifiedFeature>,
    registry: &ClassRegistry,
    projection: Projection,
) -> Result<ChartFeatureSet, ChartError> {
    let mut layers: BTreeMap<String, Layer> = registry.iter().map(|c| (c.to_string(), Layer::default())).collect();

    for ClassifiedFeature { class, feature } in features {
        let class = class.to_lowercase();
        let layer = layers.get_mut(&class).ok_or_else(|| ChartError::UnknownClass(class.clone()))?;
        feature.validate()?;
        let bbox = BoundingBox::of(feature.vertices());
        let mut info = FeatureInfo::from_attributes(feature.attributes, bbox);
        match feature.kind {
            GeometryKind::Point => layer.points.push(PointRecord { point: feature.parts[0][0], info }),
            GeometryKind::Polyline => layer.lines.push(LineRecord { parts: feature.parts, info }),
            GeometryKind::Polygon => {
                if class == "depare" {
                    info.depth = Some(resolve_depth(&info));
                }
                layer.polygons.push(PolygonRecord { rings: feature.parts, info });
            }
        }
    }

    Ok(ChartFeatureSet { layers, projection })
}
