use serde::Serialize;

use super::{all_sign_vectors, CubeComplex, CubeIdx, Sign, SignedPermMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationEntry {
    DimensionMismatch {
        cube: String,
        coord: usize,
        sign: i64,
        target: String,
    },
    BadMap {
        cube: String,
        coord: usize,
        sign: i64,
    },
    Codim2Inconsistent {
        cube: String,
        first: (usize, i64),
        second: (usize, i64),
    },
    IllDefinedCorner {
        cube: String,
        corner: Vec<i64>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.entries.is_empty()
    }
}

fn structurally_sound(x: &CubeComplex, idx: CubeIdx) -> bool {
    let c = x.cube(idx);
    c.facets().all(|(coord, _, f)| {
        x.dim(f.target) + 1 == c.dim()
            && f.map.source_dim() == c.dim()
            && f.map.target_dim() + 1 == c.dim()
            && f.map.image(coord).is_none()
            && f.map.omitted().count() == 1
            && f.map.is_bijective_on_retained()
    })
}

fn descend_in_order(
    x: &CubeComplex,
    idx: CubeIdx,
    order: &[usize],
    signs: &[Sign],
) -> Option<(CubeIdx, SignedPermMap)> {
    let mut current = idx;
    let mut map = SignedPermMap::identity(x.dim(idx));
    for &j in order {
        if !structurally_sound(x, current) {
            return None;
        }
        let img = map.image(j)?;
        let facet = x.facet(current, img.coord, img.sign * signs[j]);
        map = map.then(&facet.map);
        current = facet.target;
    }
    Some((current, map))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Checks facet dimensions, facet maps, codimension-2 consistency and
/// that every corner resolves to one vertex regardless of descent order.
pub fn validate(x: &CubeComplex) -> ValidationReport {
    let mut entries = Vec::new();
    let mut sound = vec![true; x.len()];
    for idx in 0..x.len() {
        let c = x.cube(idx);
        for (coord, sign, f) in c.facets() {
            if x.dim(f.target) + 1 != c.dim() {
                entries.push(ValidationEntry::DimensionMismatch {
                    cube: c.id().to_string(),
                    coord: coord + 1,
                    sign: sign.to_i64(),
                    target: x.id(f.target).to_string(),
                });
                sound[idx] = false;
            } else if !(f.map.source_dim() == c.dim()
                && f.map.target_dim() + 1 == c.dim()
                && f.map.image(coord).is_none()
                && f.map.omitted().count() == 1
                && f.map.is_bijective_on_retained())
            {
                entries.push(ValidationEntry::BadMap {
                    cube: c.id().to_string(),
                    coord: coord + 1,
                    sign: sign.to_i64(),
                });
                sound[idx] = false;
            }
        }
    }
    for idx in 0..x.len() {
        if !sound[idx] {
            continue;
        }
        let c = x.cube(idx);
        let n = c.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for eps in Sign::BOTH {
                    for delta in Sign::BOTH {
                        let mut signs = vec![Sign::Plus; n];
                        signs[i] = eps;
                        signs[j] = delta;
                        let a = descend_in_order(x, idx, &[i, j], &signs);
                        let b = descend_in_order(x, idx, &[j, i], &signs);
                        if a.is_none() || b.is_none() {
                            continue;
                        }
                        if a != b {
                            entries.push(ValidationEntry::Codim2Inconsistent {
                                cube: c.id().to_string(),
                                first: (i + 1, eps.to_i64()),
                                second: (j + 1, delta.to_i64()),
                            });
                        }
                    }
                }
            }
        }
        if n >= 2 {
            let orders = permutations(n);
            for signs in all_sign_vectors(n) {
                let mut results = orders
                    .iter()
                    .filter_map(|o| descend_in_order(x, idx, o, &signs).map(|r| r.0));
                let Some(first) = results.next() else { continue };
                if results.any(|v| v != first) {
                    entries.push(ValidationEntry::IllDefinedCorner {
                        cube: c.id().to_string(),
                        corner: signs.iter().map(|s| s.to_i64()).collect(),
                    });
                }
            }
        }
    }
    ValidationReport { entries }
}
