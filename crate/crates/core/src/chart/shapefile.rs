//! ESRI shapefile (`.shp`) geometry decoding.
//!
//! Only the planar variants Point, PolyLine and Polygon are accepted. Null
//! records are skipped together with their attribute row.

use super::dbf::parse_dbf;
use super::{ChartError, GeometryKind, Projection, RawFeature};
use crate::geometry::Point;

const FILE_CODE: i32 = 9994;
const HEADER_LEN: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeType {
    Null,
    Point,
    PolyLine,
    Polygon,
}

impl ShapeType {
    pub fn from_code(code: i32) -> Result<Self, ChartError> {
        match code {
            0 => Ok(ShapeType::Null),
            1 => Ok(ShapeType::Point),
            3 => Ok(ShapeType::PolyLine),
            5 => Ok(ShapeType::Polygon),
            other => Err(ChartError::UnsupportedShapeType(other)),
        }
    }

    pub fn code(self) -> i32 {
        match self {
            ShapeType::Null => 0,
            ShapeType::Point => 1,
            ShapeType::PolyLine => 3,
            ShapeType::Polygon => 5,
        }
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ChartError> {
        if self.pos + n > self.end {
            return Err(ChartError::TruncatedFile(format!(
                "shp record content ends at byte {} but {} more bytes were needed",
                self.end,
                self.pos + n - self.end
            )));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn i32_le(&mut self) -> Result<i32, ChartError> {
        Ok(i32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64_le(&mut self) -> Result<f64, ChartError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn point(&mut self) -> Result<Point, ChartError> {
        let x = self.f64_le()?;
        let y = self.f64_le()?;
        Ok(Point::new(x, y))
    }
}

fn be_i32(buf: &[u8], at: usize) -> i32 {
    i32::from_be_bytes(buf[at..at + 4].try_into().unwrap())
}

fn le_i32(buf: &[u8], at: usize) -> i32 {
    i32::from_le_bytes(buf[at..at + 4].try_into().unwrap())
}

fn read_multipart(c: &mut Cursor<'_>) -> Result<Vec<Vec<Point>>, ChartError> {
    c.take(32)?; // bounding box, recomputed downstream
    let n_parts = c.i32_le()?;
    let n_points = c.i32_le()?;
    if n_parts < 0 || n_points < 0 {
        return Err(ChartError::GeometryError(format!("negative part/point count ({n_parts}, {n_points})")));
    }
    let (n_parts, n_points) = (n_parts as usize, n_points as usize);
    let mut starts = Vec::with_capacity(n_parts);
    for _ in 0..n_parts {
        let s = c.i32_le()?;
        if s < 0 || s as usize > n_points {
            return Err(ChartError::GeometryError(format!("part index {s} out of range")));
        }
        starts.push(s as usize);
    }
    let mut points = Vec::with_capacity(n_points);
    for _ in 0..n_points {
        points.push(c.point()?);
    }
    let mut parts = Vec::with_capacity(n_parts);
    for (i, &s) in starts.iter().enumerate() {
        let e = starts.get(i + 1).copied().unwrap_or(n_points);
        if e < s {
            return Err(ChartError::GeometryError("part indices not ascending".into()));
        }
        parts.push(points[s..e].to_vec());
    }
    Ok(parts)
}

/// Decodes a `.shp`/`.dbf` pair without projecting: coordinates stay in the
/// file's own units (degrees for S-57 exports).
pub fn decode_shapefile(shp: &[u8], dbf: &[u8]) -> Result<Vec<RawFeature>, ChartError> {
    if shp.len() < HEADER_LEN {
        return Err(ChartError::TruncatedFile(format!("shp header needs {HEADER_LEN} bytes, got {}", shp.len())));
    }
    let code = be_i32(shp, 0);
    if code != FILE_CODE {
        return Err(ChartError::BadMagic(code));
    }
    let declared = be_i32(shp, 24) as i64 * 2;
    if declared < HEADER_LEN as i64 || declared as usize > shp.len() {
        return Err(ChartError::TruncatedFile(format!("shp declares {declared} bytes, buffer holds {}", shp.len())));
    }
    let file_end = declared as usize;
    ShapeType::from_code(le_i32(shp, 32))?;

    let table = parse_dbf(dbf)?;

    let mut features = Vec::new();
    let mut n_records = 0usize;
    let mut pos = HEADER_LEN;
    while pos < file_end {
        if pos + 8 > file_end {
            return Err(ChartError::TruncatedFile("shp record header".into()));
        }
        let content_len = be_i32(shp, pos + 4);
        if content_len < 2 {
            return Err(ChartError::TruncatedFile(format!(
                "shp record {} declares {content_len} words",
                n_records + 1
            )));
        }
        let start = pos + 8;
        let end = start + content_len as usize * 2;
        if end > file_end {
            return Err(ChartError::TruncatedFile(format!("shp record {} runs past end of file", n_records + 1)));
        }
        let mut c = Cursor { buf: shp, pos: start, end };
        let record_index = n_records;
        n_records += 1;
        pos = end;

        let shape = ShapeType::from_code(c.i32_le()?)?;
        let (kind, parts) = match shape {
            ShapeType::Null => continue,
            ShapeType::Point => (GeometryKind::Point, vec![vec![c.point()?]]),
            ShapeType::PolyLine => (GeometryKind::Polyline, read_multipart(&mut c)?),
            ShapeType::Polygon => (GeometryKind::Polygon, read_multipart(&mut c)?),
        };
        let attributes = table.rows.get(record_index).cloned().unwrap_or_default();
        let feature = RawFeature { kind, parts, attributes };
        feature.validate()?;
        features.push(feature);
    }

    if n_records != table.rows.len() {
        return Err(ChartError::RecordCountMismatch { shp: n_records, dbf: table.rows.len() });
    }
    Ok(features)
}

/// Decodes a `.shp`/`.dbf` pair and projects coordinates (degrees) into the
/// local metric frame.
pub fn parse_shapefile(shp: &[u8], dbf: &[u8], projection: &Projection) -> Result<Vec<RawFeature>, ChartError> {
    let mut features = decode_shapefile(shp, dbf)?;
    for f in &mut features {
        projection.project_feature(f);
    }
    Ok(features)
}
