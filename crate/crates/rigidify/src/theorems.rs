//! Fillers and non-fillers in the hom-spaces of a simplicial category:
//! a deterministic filler for inner 2-horns, the level-by-level filler
//! for spheres of dimension four and up, pinned 3-horns with no filler
//! built from pairs of simplices that agree on too many faces, and a
//! pipeline deciding whether a complex is the nerve of a category with
//! an explicit certificate either way.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delta::OrdinalMap;
use crate::necklace::{
    hom_degeneracy, hom_face, hom_space, tnd_quotient, HomSimplex, HomSpace, Necklace,
    NecklaceMap,
};
use crate::sset::{
    enumerate_horns, find_fillers, is_coskeletal, is_nerve_like, is_quasicategory,
    solve_extension, CoskViolation, FaceAssignment, FillerIndex, FinCategory, FinSSet,
    SimplexRef, SubShape, UnfilledHorn, SEARCH_LIMIT,
};

/// How a merge step overlaps the accumulated simplex: on its initial
/// vertex, its final vertex, or an interior one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MergeKind {
    OverlapFirst,
    OverlapMiddle,
    OverlapLast,
}

/// One merge performed by [`fill_composition_horn`]: the accumulated
/// simplex and one cell of the outer face were glued along a shared
/// edge and extended to a single simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeStep {
    /// Which bead of the inner face was being rebuilt.
    pub region: usize,
    pub kind: MergeKind,
    /// Dimension of the simplex solved for.
    pub target_dim: usize,
    /// How many extensions the search found; the first nondegenerate
    /// one is taken, else the first.
    pub candidates: usize,
    pub nondegenerate: bool,
}

/// A record of the work done by [`fill_composition_horn`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct FillTrace {
    pub steps: Vec<MergeStep>,
    /// Cells of the outer face that became beads of their own.
    pub standalone: usize,
    /// Degenerate cells absorbed by repeating a vertex of their region.
    pub thickened: usize,
}

#[derive(Debug, Error)]
pub enum FillError {
    #[error("horn faces must be 1-simplices, got dimensions {0} and {1}")]
    Dimension(usize, usize),
    #[error("the faces are not a horn: {0}")]
    Incompatible(String),
    #[error("the filler needs a simplex of dimension {needed}, above the truncation cap {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error(
        "no {dim}-simplex extends a {kind:?} merge; \
         the complex has an unfilled inner horn in that dimension"
    )]
    NoExtension { dim: usize, kind: MergeKind },
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// One unit of the alignment between the spine of the inner face and
/// the beads of the outer face.
#[derive(Clone, Copy)]
enum Cell {
    /// Bead `u` of the outer face travels the same edge as spine step
    /// `t` of the inner face.
    Matched { u: usize, t: usize },
    /// A bead of the outer face whose long edge is degenerate, standing
    /// over a single vertex of the inner face's path.
    Extra { u: usize },
    /// A degenerate spine step of the inner face not covered by any
    /// bead of the outer face.
    Inserted { t: usize },
}

/// Fill the inner horn of dimension 2 in a hom-space: given the slot-0
/// face `f0` and the slot-2 face `f2` (1-simplices with `d_0 f2 = d_1
/// f0`), produce a 2-simplex with those faces. Its long edge is the
/// composite of the two.
///
/// The construction aligns the spine of `f2` with the bead diagonals of
/// `f0`, then rebuilds each bead of `f2` by absorbing the matching
/// beads of `f0` one at a time, every merge solved by an exhaustive
/// extension search. It succeeds on any complex whose inner horns fill
/// within the truncation; the trace records each merge.
pub fn fill_composition_horn(
    x: &FinSSet,
    f0: &HomSimplex,
    f2: &HomSimplex,
) -> Result<(HomSimplex, FillTrace), FillError> {
    if f0.dim() != 1 || f2.dim() != 1 {
        return Err(FillError::Dimension(f0.dim(), f2.dim()));
    }
    let u = tnd_quotient(f0);
    let t = tnd_quotient(f2);
    if hom_face(x, &t, 0) != hom_face(x, &u, 1) {
        return Err(FillError::Incompatible(
            "d_0 of the slot-2 face differs from d_1 of the slot-0 face".into(),
        ));
    }

    // Spine steps of the inner face: the edge each unit step crosses,
    // and the bead it lives in.
    let t_map = &t.map;
    let p = t_map.shape.total_dim();
    let mut t_steps: Vec<(SimplexRef, usize)> = Vec::with_capacity(p);
    for step in 0..p {
        let bead = (0..t_map.shape.bead_count())
            .find(|&i| {
                let (a, b) = t_map.shape.bead_range(i);
                a <= step && step < b
            })
            .expect("every step lies in a bead");
        let (a, b) = t_map.shape.bead_range(bead);
        let edge = x.act(
            &OrdinalMap::inclusion(&[step - a, step - a + 1], b - a),
            &t_map.images[bead],
        );
        t_steps.push((edge, bead));
    }

    // Cells of the outer face: each bead with its long edge.
    let u_map = &u.map;
    let q = u_map.shape.bead_count();
    let mut u_cells: Vec<(SimplexRef, SimplexRef, usize)> = Vec::with_capacity(q);
    for j in 0..q {
        let d = u_map.shape.bead_dims()[j];
        let diag = x.act(&OrdinalMap::inclusion(&[0, d], d), &u_map.images[j]);
        u_cells.push((u_map.images[j].clone(), diag, d));
    }

    // Align the two walks. Nondegenerate steps and diagonals must pair
    // up in order; degenerate material on either side never moves the
    // base point, so it can be interleaved greedily.
    let mut cells: Vec<Cell> = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    while i < p || j < q {
        let t_live = i < p;
        let u_live = j < q;
        let t_nd = t_live && t_steps[i].0.is_nondegenerate();
        let u_nd = u_live && u_cells[j].1.is_nondegenerate();
        if u_live && !u_nd && (!t_live || t_nd) {
            cells.push(Cell::Extra { u: j });
            j += 1;
        } else if t_live && !t_nd && (!u_live || u_nd) {
            cells.push(Cell::Inserted { t: i });
            i += 1;
        } else if t_live && u_live {
            if t_nd && u_nd && t_steps[i].0 != u_cells[j].1 {
                return Err(FillError::Incompatible(format!(
                    "spine step {i} of the inner face differs from the diagonal of bead {j} \
                     of the outer face"
                )));
            }
            cells.push(Cell::Matched { u: j, t: i });
            i += 1;
            j += 1;
        } else {
            return Err(FillError::Incompatible(
                "the faces do not reduce to the same vertex path".into(),
            ));
        }
    }

    // Assign each cell to a bead of the inner face. Extras caught
    // between two cells of the same bead thicken that bead; extras at a
    // bead boundary stand alone.
    let base: Vec<Option<usize>> = cells
        .iter()
        .map(|c| match c {
            Cell::Matched { t, .. } | Cell::Inserted { t } => Some(t_steps[*t].1),
            Cell::Extra { .. } => None,
        })
        .collect();
    let mut region = base.clone();
    for idx in 0..cells.len() {
        if base[idx].is_none() {
            let prev = base[..idx].iter().rev().find_map(|&r| r);
            let next = base[idx + 1..].iter().find_map(|&r| r);
            if prev.is_some() && prev == next {
                region[idx] = prev;
            }
        }
    }

    // Walk the cells, emitting one bead per standalone extra and one
    // per contiguous region, and marking every cell boundary.
    let mut trace = FillTrace::default();
    let mut beads: Vec<SimplexRef> = Vec::new();
    let mut bead_dims: Vec<usize> = Vec::new();
    let mut markers: BTreeSet<usize> = BTreeSet::new();
    markers.insert(0);
    let mut offset = 0usize;
    let mut idx = 0usize;
    while idx < cells.len() {
        match region[idx] {
            None => {
                let Cell::Extra { u: uj } = cells[idx] else {
                    unreachable!("only extras lack a region");
                };
                let (img, _, d) = &u_cells[uj];
                beads.push(img.clone());
                bead_dims.push(*d);
                offset += d;
                markers.insert(offset);
                trace.standalone += 1;
                idx += 1;
            }
            Some(k) => {
                let start = idx;
                while idx < cells.len() && region[idx] == Some(k) {
                    idx += 1;
                }
                let (acc, widths) = fill_region(
                    x,
                    k,
                    &cells[start..idx],
                    &t_steps,
                    &u_cells,
                    t_map,
                    &mut trace,
                )?;
                bead_dims.push(acc.dim());
                beads.push(acc);
                for w in widths {
                    offset += w;
                    markers.insert(offset);
                }
            }
        }
    }

    let shape = Necklace::new(bead_dims)
        .map_err(|e| FillError::Internal(format!("assembled necklace: {e}")))?;
    let map = NecklaceMap::new(x, shape, beads, t.map.src, u.map.tgt)
        .map_err(|e| FillError::Internal(format!("assembled necklace map: {e}")))?;
    let joins = map.shape.joins();
    let vertices = map.shape.vertices();
    if !joins.is_subset(&markers) {
        return Err(FillError::Internal(
            "a bead boundary is not a cell boundary".into(),
        ));
    }
    let simplex = HomSimplex::new(map, vec![joins, markers, vertices])
        .map_err(|e| FillError::Internal(format!("assembled flag: {e}")))?;
    let filler = tnd_quotient(&simplex);
    if hom_face(x, &filler, 0) != u {
        return Err(FillError::Internal(
            "face 0 of the filler differs from the slot-0 face".into(),
        ));
    }
    if hom_face(x, &filler, 2) != t {
        return Err(FillError::Internal(
            "face 2 of the filler differs from the slot-2 face".into(),
        ));
    }
    Ok((filler, trace))
}

/// Rebuild one bead of the inner face: thicken it with a degeneracy for
/// every interior extra, then absorb the cells left to right. Returns
/// the merged simplex and the cell widths in order.
fn fill_region(
    x: &FinSSet,
    k: usize,
    group: &[Cell],
    t_steps: &[(SimplexRef, usize)],
    u_cells: &[(SimplexRef, SimplexRef, usize)],
    t_map: &NecklaceMap,
    trace: &mut FillTrace,
) -> Result<(SimplexRef, Vec<usize>), FillError> {
    let (bead_start, _) = t_map.shape.bead_range(k);
    let mut sigma = t_map.images[k].clone();
    let mut inserted = 0usize;
    let mut items: Vec<(SimplexRef, usize)> = Vec::with_capacity(group.len());
    for (pos, c) in group.iter().enumerate() {
        match c {
            Cell::Matched { u, .. } | Cell::Extra { u } => {
                let (img, _, d) = &u_cells[*u];
                items.push((img.clone(), *d));
            }
            Cell::Inserted { t } => {
                items.push((t_steps[*t].0.clone(), 1));
            }
        }
        if let Cell::Extra { .. } = c {
            // The extra sits on the vertex where the next covered step
            // begins; repeat that vertex, shifted by earlier repeats.
            let t_right = group[pos + 1..]
                .iter()
                .find_map(|c2| match c2 {
                    Cell::Matched { t, .. } | Cell::Inserted { t } => Some(*t),
                    Cell::Extra { .. } => None,
                })
                .expect("an interior extra has a covered step to its right");
            sigma = x.degeneracy(&sigma, t_right - bead_start + inserted);
            inserted += 1;
            trace.thickened += 1;
        }
    }
    debug_assert_eq!(sigma.dim(), items.len());

    let mut acc = sigma;
    let mut e = 0usize;
    let widths: Vec<usize> = items.iter().map(|(_, w)| *w).collect();
    for (img, c) in items {
        if c == 1 {
            let edge = x.act(&OrdinalMap::inclusion(&[e, e + 1], acc.dim()), &acc);
            if edge != img {
                return Err(FillError::Internal(format!(
                    "spine edge {e} of the accumulator disagrees with its cell"
                )));
            }
            e += 1;
            continue;
        }
        let target = acc.dim() + c - 1;
        if target > x.dim_cap() {
            return Err(FillError::CapExceeded {
                needed: target,
                cap: x.dim_cap(),
            });
        }
        let kind = if e == 0 {
            MergeKind::OverlapFirst
        } else if e + 1 == acc.dim() {
            MergeKind::OverlapLast
        } else {
            MergeKind::OverlapMiddle
        };
        let acc_verts: Vec<usize> = (0..=e).chain(e + c..=target).collect();
        let cell_verts: Vec<usize> = (e..=e + c).collect();
        let shape = SubShape::new(target, vec![acc_verts, cell_verts])
            .map_err(|err| FillError::Internal(format!("merge shape: {err}")))?;
        let sols = solve_extension(x, &shape, &[acc.clone(), img.clone()])
            .map_err(|err| FillError::Internal(format!("merge images: {err}")))?;
        let found = sols
            .iter()
            .find(|s| s.is_nondegenerate())
            .or_else(|| sols.first())
            .cloned()
            .ok_or(FillError::NoExtension { dim: target, kind })?;
        trace.steps.push(MergeStep {
            region: k,
            kind,
            target_dim: target,
            candidates: sols.len(),
            nondegenerate: found.is_nondegenerate(),
        });
        acc = found;
        e += c;
    }
    debug_assert_eq!(e, acc.dim());
    Ok((acc, widths))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SphereFillError {
    #[error(
        "spheres of dimension {0} can be obstructed; only dimension 4 and up fill by levels"
    )]
    TooLow(usize),
    #[error("face {slot} has dimension {got}, expected {expect}")]
    FaceDim {
        slot: usize,
        got: usize,
        expect: usize,
    },
    #[error("the faces are not a sphere: {0}")]
    NotASphere(String),
}

/// Fill a sphere of dimension at least 4 in a hom-space. The faces
/// determine the filler outright: every inner face carries its necklace
/// map, and each flag level survives into all inner faces but one, so
/// the filler is assembled level by level and then checked against all
/// of its faces. Spheres of dimension 3 are refused: their middle flag
/// levels come from different faces and need not nest.
pub fn fill_high_sphere(x: &FinSSet, faces: &[HomSimplex]) -> Result<HomSimplex, SphereFillError> {
    if faces.len() < 5 {
        return Err(SphereFillError::TooLow(faces.len().saturating_sub(1)));
    }
    let n = faces.len() - 1;
    let faces: Vec<HomSimplex> = faces.iter().map(tnd_quotient).collect();
    for (i, f) in faces.iter().enumerate() {
        if f.dim() != n - 1 {
            return Err(SphereFillError::FaceDim {
                slot: i,
                got: f.dim(),
                expect: n - 1,
            });
        }
    }
    let map = faces[1].map.clone();
    for (i, f) in faces.iter().enumerate().take(n).skip(2) {
        if f.map != map {
            return Err(SphereFillError::NotASphere(format!(
                "inner faces 1 and {i} carry different necklace maps"
            )));
        }
    }
    let mut flag: Vec<BTreeSet<usize>> = Vec::with_capacity(n + 1);
    flag.push(map.shape.joins());
    for k in 1..n {
        // Read level k back from an inner face that kept it.
        let i = if k == 1 { 2 } else { 1 };
        let level = if i > k {
            faces[i].flag[k].clone()
        } else {
            faces[i].flag[k - 1].clone()
        };
        flag.push(level);
    }
    flag.push(map.shape.vertices());
    let candidate = HomSimplex::new(map, flag)
        .map_err(|e| SphereFillError::NotASphere(format!("assembled flag: {e}")))?;
    for (i, f) in faces.iter().enumerate() {
        if &hom_face(x, &candidate, i) != f {
            return Err(SphereFillError::NotASphere(format!(
                "face {i} of the assembled simplex differs from the given face"
            )));
        }
    }
    Ok(candidate)
}

/// A horn inside a hom-space, stored as plain triples so that it exists
/// independently of any materialized truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornInHom {
    pub src: usize,
    pub tgt: usize,
    pub dim: usize,
    pub missing: usize,
    /// Present faces in slot order, the missing slot skipped.
    pub faces: Vec<HomSimplex>,
}

impl HornInHom {
    pub fn slots(&self) -> Vec<usize> {
        (0..=self.dim).filter(|&i| i != self.missing).collect()
    }

    /// Check the face compatibility relations between all present
    /// slots.
    pub fn validate(&self, x: &FinSSet) -> Result<(), String> {
        let slots = self.slots();
        for (a, &i) in slots.iter().enumerate() {
            for (b, &j) in slots.iter().enumerate().skip(a + 1) {
                if hom_face(x, &self.faces[b], i) != hom_face(x, &self.faces[a], j - 1) {
                    return Err(format!(
                        "d_{i} of the slot-{j} face differs from d_{} of the slot-{i} face",
                        j - 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// The horn as a face assignment in a materialized hom-space;
    /// `None` when a face lies outside its caps.
    pub fn assignment(&self, hom: &HomSpace) -> Option<FaceAssignment> {
        let faces = self
            .faces
            .iter()
            .map(|f| hom.ref_of_hom(f))
            .collect::<Option<Vec<_>>>()?;
        Some(FaceAssignment::horn(self.dim, self.missing, faces))
    }

    /// Caps sufficient to certify this horn: its own dimension, and the
    /// largest necklace among its faces. A filler of an inner horn
    /// carries the necklace of its inner faces, so no larger necklace
    /// can fill it.
    pub fn natural_caps(&self) -> (usize, usize) {
        let size = self
            .faces
            .iter()
            .map(|f| f.map.shape.total_dim())
            .max()
            .unwrap_or(0);
        (self.dim, size)
    }
}

/// Proof record that an exhaustive search found no filler.
#[derive(Clone, Debug, Serialize)]
pub struct UnfillableCertificate {
    pub dim_cap: usize,
    pub size_cap: usize,
    /// Simplices of the horn's dimension inspected; none fills it.
    pub candidates: usize,
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("a filler exists: {0:?}")]
    FillerFound(SimplexRef),
    #[error("a horn face lies outside the hom-space caps ({dim_cap}, {size_cap})")]
    OutsideCaps { dim_cap: usize, size_cap: usize },
}

/// Materialize the hom-space up to the given caps and search every
/// simplex of the horn's dimension for a filler; return a certificate
/// when there is none. For an inner horn with an inner face of maximal
/// necklace, [`HornInHom::natural_caps`] already covers every possible
/// filler.
pub fn certify_unfillable(
    x: &FinSSet,
    horn: &HornInHom,
    dim_cap: usize,
    size_cap: usize,
) -> Result<UnfillableCertificate, CertifyError> {
    let hom = hom_space(x, horn.src, horn.tgt, dim_cap, size_cap);
    let fa = horn
        .assignment(&hom)
        .ok_or(CertifyError::OutsideCaps { dim_cap, size_cap })?;
    let fillers = find_fillers(&hom.space, &fa);
    if let Some(f) = fillers.first() {
        return Err(CertifyError::FillerFound(f.clone()));
    }
    Ok(UnfillableCertificate {
        dim_cap,
        size_cap,
        candidates: hom.space.count_simplices(horn.dim),
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PinError {
    #[error("the two simplices must be distinct")]
    Equal,
    #[error("need dimension at least 3, got {0}")]
    LowDim(usize),
    #[error("the simplices have dimensions {0} and {1}, expected equal")]
    DimMismatch(usize, usize),
    #[error("the cut set must lie strictly between the endpoints and all vertices")]
    BadCut,
    #[error("neither simplex is nondegenerate")]
    NoNondegenerate,
    #[error("the pair does not share the faces the cut requires: {0}")]
    FacesDiffer(String),
    #[error("assembly failed: {0}")]
    Assembly(String),
}

/// The inner 3-horn in `hom(v_0, v_n)` pinned by a pair of distinct
/// `n`-simplices that agree on every face the cut set `j` touches: the
/// slot-2 and slot-3 faces run the two simplices as single beads under
/// the flag `endpoints <= j <= all`, and the slot-0 face splits along
/// `j`. A filler would have to restrict the slot-3 necklace onto the
/// slot-2 one, which the pair's disagreement rules out, so the horn has
/// no filler; [`certify_unfillable`] verifies that by search.
///
/// At least one of the pair must be nondegenerate; it is placed in
/// slot 3, the other in slot 2 (collapsed to its normal form).
pub fn pinned_horn(
    x: &FinSSet,
    sigma: &SimplexRef,
    tau: &SimplexRef,
    j: &BTreeSet<usize>,
) -> Result<HornInHom, PinError> {
    if sigma == tau {
        return Err(PinError::Equal);
    }
    let n = sigma.dim();
    if tau.dim() != n {
        return Err(PinError::DimMismatch(n, tau.dim()));
    }
    if n < 3 {
        return Err(PinError::LowDim(n));
    }
    let ends: BTreeSet<usize> = [0, n].into_iter().collect();
    let full: BTreeSet<usize> = (0..=n).collect();
    if !ends.is_subset(j) || !j.is_subset(&full) || *j == ends || *j == full {
        return Err(PinError::BadCut);
    }
    let (sigma, tau) = if tau.is_nondegenerate() {
        (sigma.clone(), tau.clone())
    } else if sigma.is_nondegenerate() {
        (tau.clone(), sigma.clone())
    } else {
        return Err(PinError::NoNondegenerate);
    };
    let src = x.vertex_at(&sigma, 0);
    let tgt = x.vertex_at(&sigma, n);
    let bead = |r: &SimplexRef| -> Result<NecklaceMap, PinError> {
        NecklaceMap::new(
            x,
            Necklace::new(vec![n]).expect("positive bead"),
            vec![r.clone()],
            src,
            tgt,
        )
        .map_err(|e| PinError::Assembly(e.to_string()))
    };
    let triple = |m: NecklaceMap, flag: Vec<BTreeSet<usize>>| -> Result<HomSimplex, PinError> {
        Ok(tnd_quotient(
            &HomSimplex::new(m, flag).map_err(|e| PinError::Assembly(e.to_string()))?,
        ))
    };
    let f2 = triple(
        bead(&sigma)?,
        vec![ends.clone(), j.clone(), full.clone()],
    )?;
    let f3 = triple(bead(&tau)?, vec![ends.clone(), j.clone(), full.clone()])?;
    let f0 = triple(
        bead(&tau)?.split(x, j),
        vec![j.clone(), full.clone(), full.clone()],
    )?;
    if f2 == f3 {
        return Err(PinError::Equal);
    }
    let horn = HornInHom {
        src,
        tgt,
        dim: 3,
        missing: 1,
        faces: vec![f0, f2, f3],
    };
    horn.validate(x).map_err(PinError::FacesDiffer)?;
    Ok(horn)
}

/// [`pinned_horn`] for a pair of 3-simplices, choosing the cut from
/// their shared faces: `{0,1,3}` when faces 0 and 2 agree, else
/// `{0,2,3}` when faces 1 and 3 agree.
pub fn pinned_horn3(
    x: &FinSSet,
    sigma: &SimplexRef,
    tau: &SimplexRef,
) -> Result<HornInHom, PinError> {
    if sigma.dim() != 3 || tau.dim() != 3 {
        return Err(PinError::DimMismatch(sigma.dim(), tau.dim()));
    }
    let shares = |i: usize| x.face(sigma, i) == x.face(tau, i);
    let j: BTreeSet<usize> = if shares(0) && shares(2) {
        [0, 1, 3].into_iter().collect()
    } else if shares(1) && shares(3) {
        [0, 2, 3].into_iter().collect()
    } else {
        return Err(PinError::FacesDiffer(
            "the pair shares neither faces {0,2} nor faces {1,3}".into(),
        ));
    };
    pinned_horn(x, sigma, tau, &j)
}

/// The two outer horns a 2-simplex of any complex induces by exchanging
/// a face: missing slot 0 with `(d_2 s, d_1 s)` at slots 1 and 2, and
/// missing slot 2 with `(d_1 s, d_0 s)` at slots 0 and 1. Both are
/// compatible by the simplicial identities. In hom-spaces whose edges
/// have no inverses they have no filler, witnessing that inner horn
/// filling does not extend to outer horns there.
pub fn outer_horn_assignments(space: &FinSSet, s: &SimplexRef) -> (FaceAssignment, FaceAssignment) {
    assert_eq!(s.dim(), 2, "outer horn pair is built from a 2-simplex");
    let d0 = space.face(s, 0);
    let d1 = space.face(s, 1);
    let d2 = space.face(s, 2);
    let h0 = FaceAssignment::horn(2, 0, vec![d2, d1.clone()]);
    let h2 = FaceAssignment::horn(2, 2, vec![d1, d0]);
    (h0, h2)
}

/// The two unfillable inner horns in `hom(x, y)` of the simplicial
/// category of the retract nerve: the walk `s|r|s` supports a 2-simplex
/// `alpha` over a single 3-bead whose slot-0 face `u` crosses two
/// beads. Pairing `alpha` with degeneracies of `u` pins any would-be
/// filler to both necklaces at once. Returns the horns missing slots 1
/// and 2; `None` when the complex has no `s|r|s` chain.
pub fn retract_horns(x: &FinSSet) -> Option<(HornInHom, HornInHom)> {
    let chain = SimplexRef::nondeg(x.find(3, "s|r|s")?);
    let src = x.vertex_at(&chain, 0);
    let tgt = x.vertex_at(&chain, 3);
    let ends: BTreeSet<usize> = [0, 3].into_iter().collect();
    let mid: BTreeSet<usize> = [0, 2, 3].into_iter().collect();
    let full: BTreeSet<usize> = (0..=3).collect();
    let map = NecklaceMap::new(
        x,
        Necklace::new(vec![3]).expect("positive bead"),
        vec![chain],
        src,
        tgt,
    )
    .ok()?;
    let alpha = HomSimplex::new(map, vec![ends, mid, full]).ok()?;
    let u = hom_face(x, &alpha, 0);
    let s0u = hom_degeneracy(&u, 0);
    let s1u = hom_degeneracy(&u, 1);
    let v = hom_face(x, &u, 1);
    let s0s0v = hom_degeneracy(&hom_degeneracy(&v, 0), 0);
    let horn1 = HornInHom {
        src,
        tgt,
        dim: 3,
        missing: 1,
        faces: vec![s1u, s0u.clone(), alpha.clone()],
    };
    let horn2 = HornInHom {
        src,
        tgt,
        dim: 3,
        missing: 2,
        faces: vec![alpha, s0u, s0s0v],
    };
    Some((horn1, horn2))
}

/// The verdict of [`detect_nerve`].
#[derive(Debug)]
pub enum NerveDetection {
    /// The complex is the nerve of this category.
    Nerve(FinCategory),
    /// It is not, witnessed by an unfillable inner horn in a hom-space
    /// of its simplicial category.
    NotNerve(NerveObstruction),
}

#[derive(Debug, Serialize)]
pub struct NerveObstruction {
    /// What failed at the level of the complex itself.
    pub reason: String,
    pub horn: HornInHom,
    pub certificate: UnfillableCertificate,
}

#[derive(Debug, Error)]
pub enum DetectError {
    #[error("not a quasi-category: {0}")]
    NotQuasi(UnfilledHorn),
    #[error("search budget exceeded in dimension {dim}")]
    Budget { dim: usize },
    #[error("certification failed: {0}")]
    Certify(#[from] CertifyError),
    #[error("horn construction failed: {0}")]
    Pin(#[from] PinError),
    #[error("nerve extraction failed: {0}")]
    Extraction(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("the truncation cap {cap} is below the requested level {up_to}")]
    Cap { up_to: usize, cap: usize },
}

/// Decide whether a quasi-category is the nerve of a category. A nerve
/// is returned with its category; anything else is returned with an
/// unfillable inner horn in a hom-space of the simplicial category,
/// certified by exhaustive search. The failure is always traced to one
/// of: a sphere with no filler, a sphere with several, or an inner horn
/// with several, each of which pins such a horn.
pub fn detect_nerve(x: &FinSSet, up_to: usize) -> Result<NerveDetection, DetectError> {
    if up_to > x.dim_cap() {
        return Err(DetectError::Cap {
            up_to,
            cap: x.dim_cap(),
        });
    }
    if up_to < 3 {
        return Err(DetectError::Unsupported(
            "deciding nervehood needs dimension 3 available".into(),
        ));
    }
    is_quasicategory(x, up_to).map_err(DetectError::NotQuasi)?;

    match is_coskeletal(x, 2, up_to, SEARCH_LIMIT) {
        Ok(()) => {}
        Err(CoskViolation::Budget { dim, .. }) => return Err(DetectError::Budget { dim }),
        Err(CoskViolation::Multiple { dim, fillers, .. }) => {
            let (a, b) = distinct_pair(&fillers);
            let horn = obstruction_from_pair(x, &a, &b)?;
            let reason = format!("a sphere of dimension {dim} has more than one filler");
            return finish(x, horn, reason);
        }
        Err(CoskViolation::Unfilled { dim, faces }) => {
            // Inner horns fill here, so forget face 1 and fill the rest;
            // the new face 1 disagrees with the sphere's.
            let present: Vec<SimplexRef> = faces
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != 1)
                .map(|(_, f)| f.clone())
                .collect();
            let fa = FaceAssignment::horn(dim, 1, present);
            let fillers = find_fillers(x, &fa);
            let filler = fillers.first().ok_or_else(|| {
                DetectError::Unsupported(
                    "an inner horn of a verified quasi-category found no filler".into(),
                )
            })?;
            let horn = obstruction_from_pair(x, &x.face(filler, 1), &faces[1])?;
            let reason = format!("a sphere of dimension {dim} has no filler");
            return finish(x, horn, reason);
        }
    }

    let mut index = FillerIndex::new();
    for (k, missing) in [(2usize, 1usize), (3, 1), (3, 2)] {
        if k > up_to {
            continue;
        }
        let (complete, horns) = enumerate_horns(x, k, missing, SEARCH_LIMIT);
        if !complete {
            return Err(DetectError::Budget { dim: k });
        }
        for faces in horns {
            let fa = FaceAssignment::horn(k, missing, faces);
            let fillers = index.fillers(x, &fa);
            if fillers.len() >= 2 {
                let (a, b) = distinct_pair(&fillers);
                let horn = obstruction_from_pair(x, &a, &b)?;
                let reason = format!(
                    "the inner horn of dimension {k} missing face {missing} has {} fillers",
                    fillers.len()
                );
                return finish(x, horn, reason);
            }
        }
    }

    match is_nerve_like(x) {
        Ok(cat) => Ok(NerveDetection::Nerve(cat)),
        Err(e) => Err(DetectError::Extraction(e.to_string())),
    }
}

/// Pick a distinct pair from a list of two or more, preferring a
/// nondegenerate second element for the slot-3 position downstream.
fn distinct_pair(fillers: &[SimplexRef]) -> (SimplexRef, SimplexRef) {
    let b = fillers
        .iter()
        .find(|f| f.is_nondegenerate())
        .unwrap_or(&fillers[1])
        .clone();
    let a = fillers
        .iter()
        .find(|f| **f != b)
        .expect("the fillers are distinct")
        .clone();
    (a, b)
}

/// Turn a pair of distinct simplices with the required shared faces
/// into a pinned unfillable horn. Dimension 3 and up pins directly; a
/// pair of 2-simplices sharing faces 0 and 2 is first lifted: the
/// degeneracy that repeats the last vertex of one pairs with a
/// nondegenerate filler of the horn `(s_1 d_0 g, g, g')`.
fn obstruction_from_pair(
    x: &FinSSet,
    a: &SimplexRef,
    b: &SimplexRef,
) -> Result<HornInHom, DetectError> {
    let d = a.dim();
    if d >= 4 {
        let j: BTreeSet<usize> = [0, 1, d].into_iter().collect();
        return Ok(pinned_horn(x, a, b, &j)?);
    }
    if d == 3 {
        return Ok(pinned_horn3(x, a, b)?);
    }
    if d != 2 {
        return Err(DetectError::Unsupported(format!(
            "pair of simplices of dimension {d}"
        )));
    }
    let (g, gp) = if b.is_nondegenerate() {
        (a.clone(), b.clone())
    } else if a.is_nondegenerate() {
        (b.clone(), a.clone())
    } else {
        return Err(DetectError::Unsupported(
            "two degenerate simplices with the same faces".into(),
        ));
    };
    if x.dim_cap() < 3 {
        return Err(DetectError::Cap {
            up_to: 3,
            cap: x.dim_cap(),
        });
    }
    let s1d0 = x.degeneracy(&x.face(&g, 0), 1);
    let fa = FaceAssignment::horn(3, 1, vec![s1d0, g.clone(), gp.clone()]);
    let fillers = find_fillers(x, &fa);
    let f2 = fillers.iter().find(|f| f.is_nondegenerate()).ok_or_else(|| {
        DetectError::Unsupported("no nondegenerate completion of the lifted pair".into())
    })?;
    let sigma = x.degeneracy(&g, 2);
    Ok(pinned_horn3(x, &sigma, f2)?)
}

fn finish(
    x: &FinSSet,
    horn: HornInHom,
    reason: String,
) -> Result<NerveDetection, DetectError> {
    let (dim_cap, size_cap) = horn.natural_caps();
    let certificate = certify_unfillable(x, &horn, dim_cap, size_cap)?;
    Ok(NerveDetection::NotNerve(NerveObstruction {
        reason,
        horn,
        certificate,
    }))
}
