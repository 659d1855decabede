//! Subcomplexes of a standard simplex presented by generating faces, and
//! the extension problems they pose inside an ambient simplicial set.

use std::collections::HashMap;

use thiserror::Error;

use crate::delta::OrdinalMap;

use super::fin_sset::{subset_complex, FinSSet, SimplexRef};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("shape has {expect} generators but {got} images were given")]
    ImageCount { expect: usize, got: usize },
    #[error("image {slot} should have dimension {expect}, got {got}")]
    ImageDim {
        slot: usize,
        expect: usize,
        got: usize,
    },
    #[error("images {i} and {j} disagree on the overlap of their generators")]
    Incompatible { i: usize, j: usize },
    #[error("invalid generator list: {0}")]
    BadGenerators(String),
}

/// A subcomplex of the standard `ambient_dim`-simplex spanned by a list
/// of generating faces, each given by its ascending vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubShape {
    ambient_dim: usize,
    generators: Vec<Vec<usize>>,
}

impl SubShape {
    pub fn new(ambient_dim: usize, generators: Vec<Vec<usize>>) -> Result<Self, ShapeError> {
        if generators.is_empty() {
            return Err(ShapeError::BadGenerators("no generators".into()));
        }
        for g in &generators {
            if g.is_empty() || g.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ShapeError::BadGenerators(format!(
                    "generator {g:?} is not a strictly ascending vertex set"
                )));
            }
            if *g.last().unwrap() > ambient_dim {
                return Err(ShapeError::BadGenerators(format!(
                    "generator {g:?} exceeds ambient dimension {ambient_dim}"
                )));
            }
        }
        Ok(SubShape {
            ambient_dim,
            generators,
        })
    }

    /// The boundary of the `n`-simplex: all facets.
    pub fn boundary(n: usize) -> Self {
        assert!(n >= 1);
        let generators = (0..=n)
            .map(|i| (0..=n).filter(|&v| v != i).collect())
            .collect();
        SubShape {
            ambient_dim: n,
            generators,
        }
    }

    /// The horn missing face `k`: all facets except the one opposite
    /// vertex `k`.
    pub fn horn(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k <= n);
        let generators = (0..=n)
            .filter(|&i| i != k)
            .map(|i| (0..=n).filter(|&v| v != i).collect())
            .collect();
        SubShape {
            ambient_dim: n,
            generators,
        }
    }

    /// The spine of a necklace inside the simplex on its total vertex
    /// set: one generator per bead, consecutive beads sharing a vertex.
    pub fn necklace_spine(bead_dims: &[usize]) -> Self {
        assert!(!bead_dims.is_empty() && bead_dims.iter().all(|&d| d >= 1));
        let total: usize = bead_dims.iter().sum();
        let mut generators = Vec::with_capacity(bead_dims.len());
        let mut at = 0usize;
        for &d in bead_dims {
            generators.push((at..=at + d).collect());
            at += d;
        }
        SubShape {
            ambient_dim: total,
            generators,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Materialize the subcomplex as a simplicial set of its own: every
    /// face of the ambient simplex contained in some generator.
    pub fn complex(&self) -> FinSSet {
        subset_complex(self.ambient_dim, |s| {
            self.generators
                .iter()
                .any(|g| s.iter().all(|v| g.contains(v)))
        })
    }

    /// Check that prescribed generator images agree on every pairwise
    /// overlap, which for subsets of a simplex pins down a map on the
    /// whole subcomplex.
    pub fn check_images(&self, x: &FinSSet, images: &[SimplexRef]) -> Result<(), ShapeError> {
        if images.len() != self.generators.len() {
            return Err(ShapeError::ImageCount {
                expect: self.generators.len(),
                got: images.len(),
            });
        }
        for (slot, (g, img)) in self.generators.iter().zip(images).enumerate() {
            if img.dim() + 1 != g.len() {
                return Err(ShapeError::ImageDim {
                    slot,
                    expect: g.len() - 1,
                    got: img.dim(),
                });
            }
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let common: Vec<usize> = self.generators[i]
                    .iter()
                    .copied()
                    .filter(|v| self.generators[j].contains(v))
                    .collect();
                if common.is_empty() {
                    continue;
                }
                let rel = |g: &[usize]| {
                    let positions: Vec<usize> = common
                        .iter()
                        .map(|v| g.iter().position(|w| w == v).unwrap())
                        .collect();
                    OrdinalMap::inclusion(&positions, g.len() - 1)
                };
                let a = x.act(&rel(&self.generators[i]), &images[i]);
                let b = x.act(&rel(&self.generators[j]), &images[j]);
                if a != b {
                    return Err(ShapeError::Incompatible { i, j });
                }
            }
        }
        Ok(())
    }

    fn restriction_map(&self, slot: usize) -> OrdinalMap {
        OrdinalMap::inclusion(&self.generators[slot], self.ambient_dim)
    }

    /// The tuple of generator restrictions of an ambient simplex.
    pub fn restrict(&self, x: &FinSSet, c: &SimplexRef) -> Vec<SimplexRef> {
        (0..self.generators.len())
            .map(|slot| x.act(&self.restriction_map(slot), c))
            .collect()
    }
}

/// All simplices of `x` in the shape's ambient dimension whose generator
/// restrictions equal the prescribed images. Images are first checked
/// for compatibility.
pub fn solve_extension(
    x: &FinSSet,
    shape: &SubShape,
    images: &[SimplexRef],
) -> Result<Vec<SimplexRef>, ShapeError> {
    shape.check_images(x, images)?;
    let mut out = Vec::new();
    for c in x.all_simplices(shape.ambient_dim()) {
        if shape.restrict(x, &c) == images {
            out.push(c);
        }
    }
    Ok(out)
}

/// A cache of extension tables. For each shape, every ambient simplex is
/// bucketed by its generator restrictions once, and subsequent queries
/// are lookups. An index is only valid for the complex it was built
/// against.
#[derive(Default)]
pub struct ExtensionIndex {
    cache: HashMap<SubShape, HashMap<Vec<SimplexRef>, Vec<SimplexRef>>>,
}

impl ExtensionIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solve(
        &mut self,
        x: &FinSSet,
        shape: &SubShape,
        images: &[SimplexRef],
    ) -> Result<Vec<SimplexRef>, ShapeError> {
        shape.check_images(x, images)?;
        let table = self.cache.entry(shape.clone()).or_insert_with(|| {
            let mut table: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
            for c in x.all_simplices(shape.ambient_dim()) {
                table.entry(shape.restrict(x, &c)).or_default().push(c);
            }
            table
        });
        Ok(table.get(images).cloned().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_complex_counts() {
        let b = SubShape::boundary(3).complex();
        assert_eq!(
            (0..=3).map(|k| b.nondeg_count(k)).collect::<Vec<_>>(),
            vec![4, 6, 4, 0]
        );
        b.validate().unwrap();
        let h = SubShape::horn(2, 1).complex();
        assert_eq!(
            (0..=2).map(|k| h.nondeg_count(k)).collect::<Vec<_>>(),
            vec![3, 2, 0]
        );
        let s = SubShape::necklace_spine(&[2, 1]).complex();
        // Vertices 0..3, the triangle 0-1-2 with its edges, and the edge
        // 2-3.
        assert_eq!(
            (0..=3).map(|k| s.nondeg_count(k)).collect::<Vec<_>>(),
            vec![4, 4, 1, 0]
        );
    }

    #[test]
    fn horn_extension_in_standard_simplex() {
        let x = FinSSet::standard(3);
        let top = SimplexRef::nondeg(x.find(3, "0-1-2-3").unwrap());
        let shape = SubShape::horn(3, 1);
        let images = shape.restrict(&x, &top);
        let solutions = solve_extension(&x, &shape, &images).unwrap();
        assert_eq!(solutions, vec![top]);
    }

    #[test]
    fn spine_extension_soundness() {
        let x = FinSSet::standard(2);
        let shape = SubShape::necklace_spine(&[1, 1]);
        for c in x.all_simplices(2) {
            let images = shape.restrict(&x, &c);
            let solutions = solve_extension(&x, &shape, &images).unwrap();
            assert!(solutions.contains(&c), "lost {c:?}");
        }
        // The genuine spine of the triangle extends only over the
        // triangle itself.
        let top = SimplexRef::nondeg(x.find(2, "0-1-2").unwrap());
        let images = shape.restrict(&x, &top);
        assert_eq!(solve_extension(&x, &shape, &images).unwrap(), vec![top]);
    }

    #[test]
    fn incompatible_images_rejected() {
        let x = FinSSet::standard(2);
        let e01 = SimplexRef::nondeg(x.find(1, "0-1").unwrap());
        let e02 = SimplexRef::nondeg(x.find(1, "0-2").unwrap());
        let shape = SubShape::necklace_spine(&[1, 1]);
        // Second bead must start where the first one ends.
        let err = solve_extension(&x, &shape, &[e01.clone(), e02]).unwrap_err();
        assert_eq!(err, ShapeError::Incompatible { i: 0, j: 1 });
        let err = solve_extension(&x, &shape, &[e01]).unwrap_err();
        assert!(matches!(err, ShapeError::ImageCount { .. }));
    }

    #[test]
    fn extension_index_matches_direct_search() {
        let x = FinSSet::standard(3);
        let shape = SubShape::horn(3, 2);
        let mut index = ExtensionIndex::new();
        for c in x.all_simplices(3) {
            let images = shape.restrict(&x, &c);
            assert_eq!(
                index.solve(&x, &shape, &images).unwrap(),
                solve_extension(&x, &shape, &images).unwrap()
            );
        }
    }
}
