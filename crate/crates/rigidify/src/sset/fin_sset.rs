//! Finite truncated simplicial sets with simplices in normal form.
//!
//! Only nondegenerate simplices are stored; an arbitrary simplex is a
//! [`SimplexRef`], a degeneracy word applied to a nondegenerate simplex.
//! By the normal-form theorem for simplicial sets this representation is
//! unique, so refs compare by equality. All operator actions reduce to
//! [`FinSSet::act`], which pulls a simplex back along an arbitrary
//! ordinal map.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delta::{compose, DegeneracyWord, OrdinalMap};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SsetError {
    #[error("dimension {dim} exceeds the truncation cap {cap}")]
    AboveCap { dim: usize, cap: usize },
    #[error("simplex of dimension {dim} needs {} faces, got {got}", dim + 1)]
    FaceCount { dim: usize, got: usize },
    #[error("face {slot} of `{label}` should have dimension {expect}, got {got}")]
    FaceDim {
        label: String,
        slot: usize,
        expect: usize,
        got: usize,
    },
    #[error("face {slot} of `{label}` references a missing simplex {id:?}")]
    DanglingFace {
        label: String,
        slot: usize,
        id: NondegId,
    },
    #[error("face {slot} of `{label}` carries an invalid degeneracy word")]
    BadWord { label: String, slot: usize },
    #[error("duplicate label `{label}` in dimension {dim}")]
    DuplicateLabel { label: String, dim: usize },
    #[error(
        "simplicial identity fails on `{label}`: d_{i} d_{j} != d_{} d_{i}", j - 1
    )]
    FaceIdentity { label: String, i: usize, j: usize },
}

/// Index of a nondegenerate simplex: its dimension and position within
/// that dimension's list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NondegId {
    pub dim: usize,
    pub idx: usize,
}

impl std::fmt::Debug for NondegId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.dim, self.idx)
    }
}

/// A simplex in normal form: a degeneracy word applied to a
/// nondegenerate simplex. The empty word is the simplex itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub word: DegeneracyWord,
    pub id: NondegId,
}

impl SimplexRef {
    pub fn nondeg(id: NondegId) -> Self {
        SimplexRef {
            word: DegeneracyWord::empty(),
            id,
        }
    }

    pub fn dim(&self) -> usize {
        self.id.dim + self.word.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }
}

impl std::fmt::Debug for SimplexRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.word.is_empty() {
            write!(f, "{:?}", self.id)
        } else {
            write!(f, "{:?}.{:?}", self.word, self.id)
        }
    }
}

#[derive(Clone, Debug)]
struct NondegData {
    label: String,
    /// Face `i` of this simplex; empty for vertices.
    faces: Vec<SimplexRef>,
}

/// A finite simplicial set truncated above `dim_cap`: nondegenerate
/// simplices exist only in dimensions `0..=dim_cap`, while degenerate
/// simplices are available in every dimension.
#[derive(Clone, Debug)]
pub struct FinSSet {
    dim_cap: usize,
    levels: Vec<Vec<NondegData>>,
    by_label: Vec<HashMap<String, usize>>,
}

impl FinSSet {
    pub fn new(dim_cap: usize) -> Self {
        FinSSet {
            dim_cap,
            levels: vec![Vec::new(); dim_cap + 1],
            by_label: vec![HashMap::new(); dim_cap + 1],
        }
    }

    /// The standard simplex of dimension `n`: one nondegenerate simplex
    /// per nonempty subset of `{0, .., n}`, labeled like `0-2-3`.
    pub fn standard(n: usize) -> Self {
        subset_complex(n, |_| true)
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn nondeg_count(&self, dim: usize) -> usize {
        if dim <= self.dim_cap {
            self.levels[dim].len()
        } else {
            0
        }
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<NondegId, SsetError> {
        self.add_simplex(0, label, vec![])
    }

    /// Insert a nondegenerate simplex with the given faces. The faces
    /// must already satisfy every simplicial identity; this is checked.
    pub fn add_simplex(
        &mut self,
        dim: usize,
        label: impl Into<String>,
        faces: Vec<SimplexRef>,
    ) -> Result<NondegId, SsetError> {
        let label = label.into();
        if dim > self.dim_cap {
            return Err(SsetError::AboveCap {
                dim,
                cap: self.dim_cap,
            });
        }
        let expect = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expect {
            return Err(SsetError::FaceCount {
                dim,
                got: faces.len(),
            });
        }
        for (slot, face) in faces.iter().enumerate() {
            if face.dim() + 1 != dim {
                return Err(SsetError::FaceDim {
                    label,
                    slot,
                    expect: dim - 1,
                    got: face.dim(),
                });
            }
            if !self.id_exists(face.id) {
                return Err(SsetError::DanglingFace {
                    label,
                    slot,
                    id: face.id,
                });
            }
            if !word_valid_for(&face.word, face.id.dim) {
                return Err(SsetError::BadWord { label, slot });
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j, evaluated on the new simplex.
        // Vacuous below dimension 2, where faces are vertices.
        if dim >= 2 {
            for j in 1..faces.len() {
                for i in 0..j {
                    if self.face(&faces[j], i) != self.face(&faces[i], j - 1) {
                        return Err(SsetError::FaceIdentity { label, i, j });
                    }
                }
            }
        }
        if self.by_label[dim].contains_key(&label) {
            return Err(SsetError::DuplicateLabel { label, dim });
        }
        let idx = self.levels[dim].len();
        self.by_label[dim].insert(label.clone(), idx);
        self.levels[dim].push(NondegData { label, faces });
        Ok(NondegId { dim, idx })
    }

    fn id_exists(&self, id: NondegId) -> bool {
        id.dim <= self.dim_cap && id.idx < self.levels[id.dim].len()
    }

    pub fn label_of(&self, id: NondegId) -> &str {
        &self.levels[id.dim][id.idx].label
    }

    pub fn find(&self, dim: usize, label: &str) -> Option<NondegId> {
        let idx = *self.by_label.get(dim)?.get(label)?;
        Some(NondegId { dim, idx })
    }

    /// Locate a nondegenerate simplex by label alone, searching every
    /// dimension. Returns the lowest-dimensional match.
    pub fn find_any(&self, label: &str) -> Option<NondegId> {
        (0..=self.dim_cap).find_map(|dim| self.find(dim, label))
    }

    pub fn describe(&self, r: &SimplexRef) -> String {
        if r.word.is_empty() {
            self.label_of(r.id).to_string()
        } else {
            format!("{:?}.{}", r.word, self.label_of(r.id))
        }
    }

    pub fn nondeg_ids(&self, dim: usize) -> impl Iterator<Item = NondegId> + '_ {
        let count = self.nondeg_count(dim);
        (0..count).map(move |idx| NondegId { dim, idx })
    }

    /// Pull a simplex back along an ordinal map `f : [m] -> [dim r]`,
    /// producing an `m`-simplex. This is the right action of the simplex
    /// category and subsumes faces, degeneracies, and vertex extraction.
    pub fn act(&self, f: &OrdinalMap, r: &SimplexRef) -> SimplexRef {
        assert_eq!(
            f.target_dim(),
            r.dim(),
            "cannot act by {f:?} on a simplex of dimension {}",
            r.dim()
        );
        let g = compose(f, &r.word.to_map(r.id.dim));
        let (epi, mono) = g.epi_mono_factor();
        let mut cur = SimplexRef::nondeg(r.id);
        for b in mono.missing_indices() {
            cur = self.face(&cur, b);
        }
        let total = compose(&epi, &cur.word.to_map(cur.id.dim));
        SimplexRef {
            word: DegeneracyWord::from_surjection(&total),
            id: cur.id,
        }
    }

    /// Face `i` of a simplex of positive dimension.
    pub fn face(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let dim = r.dim();
        assert!(dim >= 1 && i <= dim, "face d_{i} undefined in dimension {dim}");
        if r.is_nondegenerate() {
            self.levels[r.id.dim][r.id.idx].faces[i].clone()
        } else {
            self.act(&OrdinalMap::coface(dim, i), r)
        }
    }

    /// Degeneracy `s_i` of a simplex.
    pub fn degeneracy(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let dim = r.dim();
        assert!(i <= dim, "degeneracy s_{i} undefined in dimension {dim}");
        let mut raw = Vec::with_capacity(r.word.len() + 1);
        raw.push(i);
        raw.extend_from_slice(r.word.indices());
        SimplexRef {
            word: DegeneracyWord::normalize(&raw),
            id: r.id,
        }
    }

    /// The nondegenerate vertex at position `i` of the simplex.
    pub fn vertex_at(&self, r: &SimplexRef, i: usize) -> usize {
        let v = self.act(&OrdinalMap::vertex(r.dim(), i), r);
        debug_assert!(v.word.is_empty() && v.id.dim == 0);
        v.id.idx
    }

    pub fn vertex_ids(&self, r: &SimplexRef) -> Vec<usize> {
        (0..=r.dim()).map(|i| self.vertex_at(r, i)).collect()
    }

    /// Every `n`-simplex, degenerate ones included, in a deterministic
    /// order: by base dimension, then base index, then word.
    pub fn all_simplices(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for m in 0..=n.min(self.dim_cap) {
            for idx in 0..self.levels[m].len() {
                for word in crate::delta::words_between(m, n) {
                    out.push(SimplexRef {
                        word,
                        id: NondegId { dim: m, idx },
                    });
                }
            }
        }
        out
    }

    pub fn count_simplices(&self, n: usize) -> usize {
        (0..=n.min(self.dim_cap))
            .map(|m| self.levels[m].len() * binomial(n, n - m))
            .sum()
    }

    /// Full consistency check: face bookkeeping, label uniqueness, and
    /// every instance of the face identity on stored simplices.
    pub fn validate(&self) -> Result<(), SsetError> {
        for dim in 1..=self.dim_cap {
            for idx in 0..self.levels[dim].len() {
                let data = &self.levels[dim][idx];
                if data.faces.len() != dim + 1 {
                    return Err(SsetError::FaceCount {
                        dim,
                        got: data.faces.len(),
                    });
                }
                for (slot, face) in data.faces.iter().enumerate() {
                    if face.dim() + 1 != dim {
                        return Err(SsetError::FaceDim {
                            label: data.label.clone(),
                            slot,
                            expect: dim - 1,
                            got: face.dim(),
                        });
                    }
                    if !self.id_exists(face.id) {
                        return Err(SsetError::DanglingFace {
                            label: data.label.clone(),
                            slot,
                            id: face.id,
                        });
                    }
                    if !word_valid_for(&face.word, face.id.dim) {
                        return Err(SsetError::BadWord {
                            label: data.label.clone(),
                            slot,
                        });
                    }
                }
                if dim >= 2 {
                    let r = SimplexRef::nondeg(NondegId { dim, idx });
                    for j in 1..=dim {
                        for i in 0..j {
                            if self.face(&self.face(&r, j), i)
                                != self.face(&self.face(&r, i), j - 1)
                            {
                                return Err(SsetError::FaceIdentity {
                                    label: data.label.clone(),
                                    i,
                                    j,
                                });
                            }
                        }
                    }
                }
            }
        }
        for dim in 0..=self.dim_cap {
            if self.by_label[dim].len() != self.levels[dim].len() {
                let label = self.levels[dim]
                    .iter()
                    .map(|d| d.label.clone())
                    .find(|l| {
                        self.levels[dim].iter().filter(|d| &d.label == l).count() > 1
                    })
                    .unwrap_or_default();
                return Err(SsetError::DuplicateLabel { label, dim });
            }
        }
        Ok(())
    }
}

/// Whether a word may sit on a base of the given dimension: the largest
/// letter acts last, on dimension `base + len - 1`.
fn word_valid_for(word: &DegeneracyWord, base_dim: usize) -> bool {
    word.indices()
        .first()
        .is_none_or(|&i| i < base_dim + word.len())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k.min(n - k) {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Build the subcomplex of the standard `n`-simplex spanned by the
/// nonempty vertex subsets accepted by `keep`, which must be closed
/// under passing to subsets. Returns the complex; subset labels join
/// vertices with `-`.
pub(crate) fn subset_complex(n: usize, keep: impl Fn(&[usize]) -> bool) -> FinSSet {
    let mut x = FinSSet::new(n);
    let mut ids: HashMap<Vec<usize>, NondegId> = HashMap::new();
    for size in 1..=n + 1 {
        for subset in subsets_of_size(n, size) {
            if !keep(&subset) {
                continue;
            }
            let label = subset
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("-");
            let faces: Vec<SimplexRef> = if size == 1 {
                vec![]
            } else {
                (0..size)
                    .map(|i| {
                        let mut sub = subset.clone();
                        sub.remove(i);
                        SimplexRef::nondeg(
                            *ids.get(&sub).expect("keep predicate not downward closed"),
                        )
                    })
                    .collect()
            };
            let id = x.add_simplex(size - 1, label, faces).expect("subset complex");
            ids.insert(subset, id);
        }
    }
    x
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(n, size, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, size, 0, &mut cur, &mut out);
    out
}
