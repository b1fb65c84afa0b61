use serde::{Deserialize, Serialize};

use super::{ComplexBuilder, CubeComplex, Sign, SignedPermMap};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    cubes: Vec<CubeRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeRecord {
    id: String,
    dim: usize,
    #[serde(default)]
    facets: Vec<FacetRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetRecord {
    coord: usize,
    sign: i64,
    target: String,
    map: Vec<i64>,
}

fn record_error(index: usize, message: String) -> Error {
    Error::Parse {
        line: 0,
        column: index,
        message,
    }
}

/// Parses the JSON text format. Structural problems inside a record are
/// reported as [`Error::Parse`] with `line == 0` and `column` set to the
/// record's position in the `cubes` array.
pub fn parse(text: &str) -> Result<CubeComplex> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut builder = ComplexBuilder::new();
    for rec in &doc.cubes {
        builder.add_cube(rec.id.clone(), rec.dim)?;
    }
    for (pos, rec) in doc.cubes.iter().enumerate() {
        for f in &rec.facets {
            if f.coord == 0 || f.coord > rec.dim {
                return Err(record_error(
                    pos,
                    format!("facet coord {} on `{}` of dimension {}", f.coord, rec.id, rec.dim),
                ));
            }
            let sign = Sign::from_i64(f.sign)
                .ok_or_else(|| record_error(pos, format!("facet sign {} is not ±1", f.sign)))?;
            if f.map.len() != rec.dim || f.map[f.coord - 1] != 0 {
                return Err(record_error(
                    pos,
                    format!("facet map of `{}` must have length {} with 0 at coord {}", rec.id, rec.dim, f.coord),
                ));
            }
            if f.map.iter().enumerate().any(|(j, &v)| (v == 0) != (j + 1 == f.coord)) {
                return Err(record_error(pos, format!("facet map of `{}` has a stray 0", rec.id)));
            }
            let map = SignedPermMap::from_signed_ints(&f.map, rec.dim.saturating_sub(1))
                .ok_or_else(|| record_error(pos, "unreadable facet map".to_string()))?;
            if !builder.contains(&f.target) {
                return Err(Error::UnknownTargetId(f.target.clone()));
            }
            builder.set_facet(&rec.id, f.coord - 1, sign, f.target.clone(), map)?;
        }
    }
    builder.build().map_err(|e| match e {
        Error::Malformed(message) => Error::Parse {
            line: 0,
            column: 0,
            message,
        },
        other => other,
    })
}

/// Serialises to the JSON text format; cubes appear by `(dim, id)` and
/// facets by `(coord, sign)`, so output is deterministic.
pub fn serialize(complex: &CubeComplex) -> String {
    let doc = Document {
        cubes: complex
            .cubes()
            .iter()
            .map(|c| CubeRecord {
                id: c.id().to_string(),
                dim: c.dim(),
                facets: c
                    .facets()
                    .map(|(coord, sign, f)| FacetRecord {
                        coord: coord + 1,
                        sign: sign.to_i64(),
                        target: complex.id(f.target).to_string(),
                        map: f.map.to_signed_ints(),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document is serialisable");
    text.push('\n');
    text
}
