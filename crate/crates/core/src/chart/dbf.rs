//! dBASE III attribute tables.
//!
//! Character (`C`) columns are decoded as trimmed text, numeric (`N`, `F`)
//! columns as numbers. Any other column type is kept as trimmed text.

use super::{AttrValue, Attributes, ChartError};

#[derive(Debug, Clone, PartialEq)]
struct FieldDescriptor {
    name: String,
    kind: u8,
    length: usize,
}

/// Decoded attribute rows, one per record, in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DbfTable {
    pub field_names: Vec<String>,
    pub rows: Vec<Attributes>,
}

fn truncated(what: &str) -> ChartError {
    ChartError::TruncatedFile(format!("dbf {what}"))
}

fn decode_text(bytes: &[u8]) -> String {
    match std::str::from_utf8(bytes) {
        Ok(s) => s.to_string(),
        // Latin-1 fallback: every byte maps to the code point of the same value.
        Err(_) => bytes.iter().map(|&b| b as char).collect(),
    }
}

pub fn parse_dbf(bytes: &[u8]) -> Result<DbfTable, ChartError> {
    if bytes.len() < 32 {
        return Err(truncated("header"));
    }
    let n_records = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let header_len = u16::from_le_bytes(bytes[8..10].try_into().unwrap()) as usize;
    let record_len = u16::from_le_bytes(bytes[10..12].try_into().unwrap()) as usize;
    if header_len > bytes.len() {
        return Err(truncated("field descriptors"));
    }

    let mut fields = Vec::new();
    let mut off = 32;
    while off < header_len && bytes[off] != 0x0D {
        if off + 32 > header_len {
            return Err(truncated("field descriptor"));
        }
        let d = &bytes[off..off + 32];
        let name_end = d[..11].iter().position(|&b| b == 0).unwrap_or(11);
        fields.push(FieldDescriptor {
            name: decode_text(&d[..name_end]).trim().to_string(),
            kind: d[11].to_ascii_uppercase(),
            length: d[16] as usize,
        });
        off += 32;
    }

    let needed = header_len + n_records * record_len;
    if needed > bytes.len() {
        return Err(truncated("records"));
    }

    let mut rows = Vec::with_capacity(n_records);
    for i in 0..n_records {
        let rec = &bytes[header_len + i * record_len..header_len + (i + 1) * record_len];
        // Byte 0 is the deletion flag; deleted rows still pair with a shape record.
        let mut pos = 1;
        let mut attrs = Attributes::new();
        for f in &fields {
            if pos + f.length > rec.len() {
                return Err(truncated("record field"));
            }
            let raw = decode_text(&rec[pos..pos + f.length]);
            pos += f.length;
            let text = raw.trim();
            let value = match f.kind {
                b'N' | b'F' => match text.parse::<f64>() {
                    Ok(v) => AttrValue::Number(v),
                    // Blank or overflow-filled ("****") numerics carry no value.
                    Err(_) => continue,
                },
                _ => AttrValue::Text(text.to_string()),
            };
            attrs.insert(f.name.clone(), value);
        }
        rows.push(attrs);
    }

    Ok(DbfTable { field_names: fields.into_iter().map(|f| f.name).collect(), rows })
}
