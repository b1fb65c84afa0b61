use super::{CubeComplex, CubeIdx, Sign, SignedPermMap};

/// Image of one cube: a target cube of the same dimension and a signed
/// permutation of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeImage {
    pub cube: CubeIdx,
    pub map: SignedPermMap,
}

/// Dimension-preserving cubical map, stored as the image of every source
/// cube. The complexes themselves are passed to the methods that need them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicalMap {
    pub images: Vec<CubeImage>,
}

impl CubicalMap {
    pub fn identity(x: &CubeComplex) -> Self {
        CubicalMap {
            images: (0..x.len())
                .map(|c| CubeImage {
                    cube: c,
                    map: SignedPermMap::identity(x.dim(c)),
                })
                .collect(),
        }
    }

    pub fn image(&self, cube: CubeIdx) -> &CubeImage {
        &self.images[cube]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(c, img)| img.cube == c && img.map.is_identity())
    }

    /// Image of an edge as `(edge, orientation)`.
    pub fn edge_action(&self, edge: CubeIdx) -> (CubeIdx, Sign) {
        let img = &self.images[edge];
        (img.cube, img.map.image(0).expect("edge map is total").sign)
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &CubicalMap) -> CubicalMap {
        CubicalMap {
            images: self
                .images
                .iter()
                .map(|img| {
                    let next = &then.images[img.cube];
                    CubeImage {
                        cube: next.cube,
                        map: img.map.then(&next.map),
                    }
                })
                .collect(),
        }
    }

    /// Inverse of a bijective self-map.
    pub fn inverse(&self) -> CubicalMap {
        let mut images = self.images.clone();
        for (c, img) in self.images.iter().enumerate() {
            images[img.cube] = CubeImage {
                cube: c,
                map: img.map.inverse(),
            };
        }
        CubicalMap { images }
    }

    /// Checks dimensions and that the map commutes with every facet
    /// inclusion. Returns a description of the first failure.
    pub fn check(&self, source: &CubeComplex, target: &CubeComplex) -> std::result::Result<(), String> {
        if self.images.len() != source.len() {
            return Err(format!("{} images for {} cubes", self.images.len(), source.len()));
        }
        for (c, img) in self.images.iter().enumerate() {
            let n = source.dim(c);
            if img.cube >= target.len() || target.dim(img.cube) != n {
                return Err(format!("cube `{}` maps to a cube of another dimension", source.id(c)));
            }
            if img.map.source_dim() != n || img.map.target_dim() != n || !img.map.is_bijective_on_retained() {
                return Err(format!("cube `{}` has a non-bijective coordinate map", source.id(c)));
            }
            for (coord, sign, f) in source.cube(c).facets() {
                let sc = img.map.image(coord).expect("total map");
                let tf = target.facet(img.cube, sc.coord, sc.sign * sign);
                // Required image of the facet: f.map^-1, then img.map, then tf.map.
                let expected = img.map.then(&tf.map);
                let actual = f.map.then(&self.images[f.target].map);
                if self.images[f.target].cube != tf.target || expected != actual {
                    return Err(format!(
                        "facet ({}, {}) of `{}` does not commute",
                        coord + 1,
                        sign,
                        source.id(c)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self, target: &CubeComplex) -> bool {
        let mut hit = vec![false; target.len()];
        for img in &self.images {
            if hit[img.cube] {
                return false;
            }
            hit[img.cube] = true;
        }
        hit.into_iter().all(|h| h)
    }
}
