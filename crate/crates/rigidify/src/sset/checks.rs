//! Global properties of a finite simplicial set: inner horn fillability,
//! coskeletality, coskeletal completion, and recognizing nerves.

use thiserror::Error;

use super::category::{CatError, FinCategory};
use super::fin_sset::{FinSSet, SimplexRef};
use super::search::{enumerate_horns, enumerate_spheres, FaceAssignment, FillerIndex};

/// Default ceiling on sphere and horn enumerations.
pub const SEARCH_LIMIT: usize = 100_000;

/// An inner horn with no filler: the witness that a complex is not a
/// quasi-category.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("horn of dimension {dim} missing face {missing} has no filler")]
pub struct UnfilledHorn {
    pub dim: usize,
    pub missing: usize,
    /// Present faces in slot order, the missing slot skipped.
    pub faces: Vec<SimplexRef>,
}

/// Why a complex fails to be coskeletal at the requested level.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoskViolation {
    #[error("a sphere of dimension {dim} has no filler")]
    Unfilled { dim: usize, faces: Vec<SimplexRef> },
    #[error("a sphere of dimension {dim} has {} fillers", fillers.len())]
    Multiple {
        dim: usize,
        faces: Vec<SimplexRef>,
        fillers: Vec<SimplexRef>,
    },
    #[error("more than {limit} spheres in dimension {dim}, giving up")]
    Budget { dim: usize, limit: usize },
}

/// Check that every inner horn of dimension `2..=up_to` has a filler.
/// `up_to` may not exceed the truncation cap, since fillers above it
/// cannot be represented.
pub fn is_quasicategory(x: &FinSSet, up_to: usize) -> Result<(), UnfilledHorn> {
    assert!(
        up_to <= x.dim_cap(),
        "cannot check horns of dimension {} in a complex truncated at {}",
        up_to,
        x.dim_cap()
    );
    let mut index = FillerIndex::new();
    for k in 2..=up_to {
        for missing in 1..k {
            let (complete, horns) = enumerate_horns(x, k, missing, SEARCH_LIMIT);
            assert!(complete, "more than {SEARCH_LIMIT} horns in dimension {k}");
            for faces in horns {
                let fa = FaceAssignment::horn(k, missing, faces.clone());
                if index.fillers(x, &fa).is_empty() {
                    return Err(UnfilledHorn {
                        dim: k,
                        missing,
                        faces,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Check that every sphere of dimension `n+1..=up_to` has exactly one
/// filler, the defining property of an `n`-coskeletal complex within the
/// truncation.
pub fn is_coskeletal(x: &FinSSet, n: usize, up_to: usize, limit: usize) -> Result<(), CoskViolation> {
    assert!(up_to <= x.dim_cap());
    let mut index = FillerIndex::new();
    for k in n + 1..=up_to {
        let list = enumerate_spheres(x, k, limit);
        if !list.complete {
            return Err(CoskViolation::Budget { dim: k, limit });
        }
        for faces in list.spheres {
            let fa = FaceAssignment::sphere(k, faces.clone());
            let fillers = index.fillers(x, &fa);
            match fillers.len() {
                0 => return Err(CoskViolation::Unfilled { dim: k, faces }),
                1 => {}
                _ => {
                    return Err(CoskViolation::Multiple {
                        dim: k,
                        faces,
                        fillers,
                    })
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Error)]
pub enum CompletionError {
    #[error("sphere budget exceeded in dimension {dim}")]
    Budget { dim: usize },
    #[error("assembly failed: {0}")]
    Complex(#[from] super::fin_sset::SsetError),
}

/// Freely fill every unfilled sphere above dimension `n`, level by
/// level, producing the coskeletal completion of the truncation up to
/// the new cap. New cells are labeled `fill{dim}_{count}`.
pub fn coskeletal_completion(
    x: &FinSSet,
    n: usize,
    new_cap: usize,
) -> Result<FinSSet, CompletionError> {
    assert!(new_cap >= x.dim_cap());
    let mut y = FinSSet::new(new_cap);
    for dim in 0..=x.dim_cap() {
        for id in x.nondeg_ids(dim) {
            let faces = (0..=dim)
                .filter(|_| dim > 0)
                .map(|i| x.face(&SimplexRef::nondeg(id), i))
                .collect();
            y.add_simplex(dim, x.label_of(id), faces)?;
        }
    }
    for k in n + 1..=new_cap {
        let list = enumerate_spheres(&y, k, SEARCH_LIMIT);
        if !list.complete {
            return Err(CompletionError::Budget { dim: k });
        }
        let mut index = FillerIndex::new();
        let mut added = 0usize;
        for faces in list.spheres {
            let fa = FaceAssignment::sphere(k, faces.clone());
            if index.fillers(&y, &fa).is_empty() {
                y.add_simplex(k, format!("fill{k}_{added}"), faces)?;
                added += 1;
            }
        }
    }
    Ok(y)
}

#[derive(Debug, Error)]
pub enum NerveFailure {
    #[error("not a quasi-category: {0}")]
    NotQuasi(UnfilledHorn),
    #[error("not 2-coskeletal: {0}")]
    NotCoskeletal(CoskViolation),
    #[error("horn of dimension {dim} missing face {missing} has {} fillers", fillers.len())]
    HornNotUnique {
        dim: usize,
        missing: usize,
        faces: Vec<SimplexRef>,
        fillers: Vec<SimplexRef>,
    },
    #[error("extracted composition table is not a category: {0}")]
    Extraction(CatError),
    #[error("nerve of the extracted category disagrees with the complex in dimension {dim}")]
    Mismatch { dim: usize },
}

/// Decide whether a complex is the nerve of a category, and extract that
/// category if so.
///
/// The criterion: a quasi-category is a nerve exactly when it is
/// 2-coskeletal and its inner horns in dimensions 2 and 3 fill uniquely.
/// The extracted category has the vertices as objects and the edges as
/// morphisms, degenerate edges giving identities; composition reads off
/// the long edge of the unique triangle over each composable pair.
pub fn is_nerve_like(x: &FinSSet) -> Result<FinCategory, NerveFailure> {
    let cap = x.dim_cap();
    is_quasicategory(x, cap).map_err(NerveFailure::NotQuasi)?;
    is_coskeletal(x, 2, cap, SEARCH_LIMIT).map_err(NerveFailure::NotCoskeletal)?;
    let mut index = FillerIndex::new();
    for (k, missing) in [(2, 1), (3, 1), (3, 2)] {
        if k > cap {
            continue;
        }
        let (complete, horns) = enumerate_horns(x, k, missing, SEARCH_LIMIT);
        assert!(complete, "horn budget exceeded in dimension {k}");
        for faces in horns {
            let fa = FaceAssignment::horn(k, missing, faces.clone());
            let fillers = index.fillers(x, &fa);
            if fillers.len() != 1 {
                return Err(NerveFailure::HornNotUnique {
                    dim: k,
                    missing,
                    faces,
                    fillers,
                });
            }
        }
    }

    // Objects and morphisms.
    let objects: Vec<String> = (0..x.nondeg_count(0))
        .map(|i| x.label_of(super::fin_sset::NondegId { dim: 0, idx: i }).to_string())
        .collect();
    let mut cat = FinCategory::new(&objects);
    let mut edge_mor: Vec<usize> = Vec::new();
    for id in x.nondeg_ids(1) {
        let e = SimplexRef::nondeg(id);
        let src = x.vertex_at(&e, 0);
        let tgt = x.vertex_at(&e, 1);
        let m = cat
            .add_morphism(x.label_of(id), &objects[src], &objects[tgt])
            .map_err(NerveFailure::Extraction)?;
        edge_mor.push(m);
    }
    let mor_of_edge = |e: &SimplexRef, cat: &FinCategory| -> usize {
        if e.is_nondegenerate() {
            edge_mor[e.id.idx]
        } else {
            cat.identity_of(e.id.idx)
        }
    };

    // Composition via the inner horn on each composable pair of
    // nondegenerate edges.
    for fid in x.nondeg_ids(1).collect::<Vec<_>>() {
        for gid in x.nondeg_ids(1).collect::<Vec<_>>() {
            let f = SimplexRef::nondeg(fid);
            let g = SimplexRef::nondeg(gid);
            if x.vertex_at(&f, 1) != x.vertex_at(&g, 0) {
                continue;
            }
            let fa = FaceAssignment::horn(2, 1, vec![g.clone(), f.clone()]);
            let fillers = index.fillers(x, &fa);
            debug_assert_eq!(fillers.len(), 1);
            let long_edge = x.face(&fillers[0], 1);
            let (gm, fm) = (mor_of_edge(&g, &cat), mor_of_edge(&f, &cat));
            let gf = mor_of_edge(&long_edge, &cat);
            cat.set_composite(gm, fm, gf)
                .map_err(NerveFailure::Extraction)?;
        }
    }
    cat.validate().map_err(NerveFailure::Extraction)?;

    // The nerve of the extraction must reproduce the complex level by
    // level; counting nondegenerate simplices suffices once the filler
    // uniqueness above has been established.
    let nerve = cat.nerve(cap).map_err(|_| NerveFailure::Mismatch { dim: 0 })?;
    for k in 0..=cap {
        if nerve.complex.nondeg_count(k) != x.nondeg_count(k) {
            return Err(NerveFailure::Mismatch { dim: k });
        }
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::fin_sset::NondegId;
    use crate::sset::shapes::SubShape;

    #[test]
    fn standard_simplices_are_quasicategories() {
        for n in 1..=4usize {
            let x = FinSSet::standard(n);
            is_quasicategory(&x, n).unwrap();
        }
    }

    #[test]
    fn horn_complex_is_not_a_quasicategory() {
        // The inner 2-horn itself has a composable pair with nothing to
        // fill it.
        let x = SubShape::horn(2, 1).complex();
        let err = is_quasicategory(&x, 2).unwrap_err();
        assert_eq!(err.dim, 2);
        assert_eq!(err.missing, 1);
    }

    #[test]
    fn standard_simplex_coskeletality() {
        // The n-simplex is the nerve of a poset, so it is 2-coskeletal;
        // in fact coskeletal at every level >= 2 within its cap.
        for n in 2..=4usize {
            let x = FinSSet::standard(n);
            is_coskeletal(&x, 2, n, SEARCH_LIMIT).unwrap();
        }
        // But the boundary of the tetrahedron is not: its top sphere is
        // empty.
        let b = SubShape::boundary(3).complex();
        let err = is_coskeletal(&b, 2, 3, SEARCH_LIMIT).unwrap_err();
        assert!(matches!(err, CoskViolation::Unfilled { dim: 3, .. }));
    }

    #[test]
    fn completing_the_tetrahedron_boundary() {
        let b = SubShape::boundary(3).complex();
        let y = coskeletal_completion(&b, 2, 4).unwrap();
        // Exactly the missing top cell appears, and nothing above it.
        assert_eq!(y.nondeg_count(3), 1);
        assert_eq!(y.nondeg_count(4), 0);
        y.validate().unwrap();
        is_coskeletal(&y, 2, 4, SEARCH_LIMIT).unwrap();
        // The result has the same counts as the standard simplex.
        let std = FinSSet::standard(3);
        for k in 0..=3 {
            assert_eq!(y.nondeg_count(k), std.nondeg_count(k));
        }
    }

    #[test]
    fn nerve_detection_on_a_poset_nerve() {
        let cat = FinCategory::poset_chain(3);
        let nerve = cat.nerve(3).unwrap();
        let found = is_nerve_like(&nerve.complex).unwrap();
        assert_eq!(found.object_count(), 4);
        assert_eq!(found.morphism_count(), cat.morphism_count());
        found.validate().unwrap();
    }

    #[test]
    fn nerve_detection_rejects_the_boundary() {
        let b = SubShape::boundary(3).complex();
        // The boundary is a quasi-category in low dimensions but not
        // 2-coskeletal within its cap.
        let err = is_nerve_like(&b).unwrap_err();
        assert!(matches!(
            err,
            NerveFailure::NotCoskeletal(_) | NerveFailure::NotQuasi(_)
        ));
        let _ = NondegId { dim: 0, idx: 0 };
    }
}
