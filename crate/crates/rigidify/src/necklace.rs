//! Necklaces, necklace maps, and the hom-spaces of the simplicial
//! category of a finite simplicial set.
//!
//! A necklace is a finite wedge of standard simplices joined end to end.
//! A simplex of the hom-space `hom(x, y)` is represented by a triple: a
//! necklace, a map sending each bead to a simplex of the ambient complex
//! (consecutive beads agreeing at the joins), and a flag of vertex
//! subsets ascending from the join set to the full vertex set. Every
//! such triple has a unique totally nondegenerate normal form, computed
//! by [`tnd_quotient`], with every bead image nondegenerate and no
//! collapsed beads.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delta::OrdinalMap;
use crate::sset::{FinSSet, NondegId, SimplexRef};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NecklaceError {
    #[error("bead {0} has dimension zero")]
    EmptyBead(usize),
    #[error("bead image {slot} should have dimension {expect}, got {got}")]
    BeadDim {
        slot: usize,
        expect: usize,
        got: usize,
    },
    #[error("bead images {0} and {1} do not share their join vertex")]
    JoinMismatch(usize, usize),
    #[error("endpoint vertex does not match the bead images")]
    EndpointMismatch,
    #[error("flag must ascend from the join set to the full vertex set")]
    BadFlag,
    #[error("necklace has {got} beads but {expect} images were given")]
    ImageCount { expect: usize, got: usize },
}

/// The shape of a necklace: bead dimensions in order, each at least 1.
/// The empty necklace is a single point. Vertices are numbered `0..=n`
/// across the wedge, consecutive beads sharing one vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Necklace {
    bead_dims: Vec<usize>,
}

impl std::fmt::Debug for Necklace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N{:?}", self.bead_dims)
    }
}

impl Necklace {
    pub fn new(bead_dims: Vec<usize>) -> Result<Self, NecklaceError> {
        if let Some(i) = bead_dims.iter().position(|&d| d == 0) {
            return Err(NecklaceError::EmptyBead(i));
        }
        Ok(Necklace { bead_dims })
    }

    /// The single-point necklace.
    pub fn trivial() -> Self {
        Necklace { bead_dims: vec![] }
    }

    pub fn bead_dims(&self) -> &[usize] {
        &self.bead_dims
    }

    pub fn bead_count(&self) -> usize {
        self.bead_dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.bead_dims.iter().sum()
    }

    /// First and last vertex of bead `i`.
    pub fn bead_range(&self, i: usize) -> (usize, usize) {
        let a: usize = self.bead_dims[..i].iter().sum();
        (a, a + self.bead_dims[i])
    }

    /// The join set: vertex 0, every wedge point, and the last vertex.
    pub fn joins(&self) -> BTreeSet<usize> {
        let mut at = 0usize;
        let mut out = BTreeSet::new();
        out.insert(0);
        for &d in &self.bead_dims {
            at += d;
            out.insert(at);
        }
        out
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        (0..=self.total_dim()).collect()
    }

    /// Refine the bead structure so that every vertex of `at` becomes a
    /// join. `at` must contain the current joins. All vertices survive.
    pub fn split(&self, at: &BTreeSet<usize>) -> Necklace {
        debug_assert!(self.joins().is_subset(at) && at.iter().all(|&v| v <= self.total_dim()));
        let cuts: Vec<usize> = at.iter().copied().collect();
        Necklace {
            bead_dims: cuts.windows(2).map(|w| w[1] - w[0]).collect(),
        }
    }

    /// The necklace on the vertex subset `to`, which must contain the
    /// joins: each bead is replaced by its face spanned by the surviving
    /// vertices. Vertices are renumbered along `to`.
    pub fn restrict(&self, to: &BTreeSet<usize>) -> Necklace {
        debug_assert!(self.joins().is_subset(to));
        let bead_dims = (0..self.bead_count())
            .map(|i| {
                let (a, b) = self.bead_range(i);
                to.range(a..=b).count() - 1
            })
            .collect();
        Necklace { bead_dims }
    }

    /// Split at every vertex: the necklace of edges along the same path.
    pub fn spine(&self) -> Necklace {
        self.split(&self.vertices())
    }

    /// Restrict to the joins: one edge per bead.
    pub fn diagonal(&self) -> Necklace {
        self.restrict(&self.joins())
    }
}

/// A map from a necklace into a complex: one simplex per bead, with
/// consecutive beads agreeing at their shared vertex. The endpoints are
/// stored so the single-point necklace still knows where it sits.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NecklaceMap {
    pub shape: Necklace,
    pub images: Vec<SimplexRef>,
    pub src: usize,
    pub tgt: usize,
}

impl std::fmt::Debug for NecklaceMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}->{:?}@{}..{}", self.shape, self.images, self.src, self.tgt)
    }
}

impl NecklaceMap {
    pub fn new(
        x: &FinSSet,
        shape: Necklace,
        images: Vec<SimplexRef>,
        src: usize,
        tgt: usize,
    ) -> Result<Self, NecklaceError> {
        if images.len() != shape.bead_count() {
            return Err(NecklaceError::ImageCount {
                expect: shape.bead_count(),
                got: images.len(),
            });
        }
        for (i, (d, img)) in shape.bead_dims().iter().zip(&images).enumerate() {
            if img.dim() != *d {
                return Err(NecklaceError::BeadDim {
                    slot: i,
                    expect: *d,
                    got: img.dim(),
                });
            }
        }
        for i in 1..images.len() {
            let prev_end = x.vertex_at(&images[i - 1], images[i - 1].dim());
            let next_start = x.vertex_at(&images[i], 0);
            if prev_end != next_start {
                return Err(NecklaceError::JoinMismatch(i - 1, i));
            }
        }
        let map = NecklaceMap {
            shape,
            images,
            src,
            tgt,
        };
        if map.images.is_empty() {
            if src != tgt {
                return Err(NecklaceError::EndpointMismatch);
            }
        } else {
            if map.vertex(x, 0) != src || map.vertex(x, map.shape.total_dim()) != tgt {
                return Err(NecklaceError::EndpointMismatch);
            }
        }
        Ok(map)
    }

    pub fn trivial(at: usize) -> Self {
        NecklaceMap {
            shape: Necklace::trivial(),
            images: vec![],
            src: at,
            tgt: at,
        }
    }

    /// The ambient vertex under necklace vertex `v`.
    pub fn vertex(&self, x: &FinSSet, v: usize) -> usize {
        if self.images.is_empty() {
            return self.src;
        }
        for (i, img) in self.images.iter().enumerate() {
            let (a, b) = self.shape.bead_range(i);
            if v >= a && v <= b {
                return x.vertex_at(img, v - a);
            }
        }
        unreachable!("vertex {v} outside the necklace");
    }

    /// Transport along a bead refinement: each new bead is the face of
    /// its enclosing old bead on the corresponding vertex range.
    pub fn split(&self, x: &FinSSet, at: &BTreeSet<usize>) -> NecklaceMap {
        let shape = self.shape.split(at);
        let mut images = Vec::with_capacity(shape.bead_count());
        for n in 0..shape.bead_count() {
            let (c, d) = shape.bead_range(n);
            let old = (0..self.shape.bead_count())
                .find(|&i| {
                    let (a, b) = self.shape.bead_range(i);
                    a <= c && d <= b
                })
                .expect("split stays within a bead");
            let (a, b) = self.shape.bead_range(old);
            let positions: Vec<usize> = (c - a..=d - a).collect();
            images.push(x.act(&OrdinalMap::inclusion(&positions, b - a), &self.images[old]));
        }
        NecklaceMap {
            shape,
            images,
            src: self.src,
            tgt: self.tgt,
        }
    }

    /// Transport along a restriction of the vertex set: each bead is
    /// pulled back along the inclusion of its surviving vertices.
    pub fn restrict(&self, x: &FinSSet, to: &BTreeSet<usize>) -> NecklaceMap {
        let shape = self.shape.restrict(to);
        let images = (0..self.shape.bead_count())
            .map(|i| {
                let (a, b) = self.shape.bead_range(i);
                let positions: Vec<usize> =
                    to.range(a..=b).map(|&v| v - a).collect();
                x.act(&OrdinalMap::inclusion(&positions, b - a), &self.images[i])
            })
            .collect();
        NecklaceMap {
            shape,
            images,
            src: self.src,
            tgt: self.tgt,
        }
    }

    /// Whether every bead image is nondegenerate of positive dimension.
    pub fn is_totally_nondegenerate(&self) -> bool {
        self.images.iter().all(|img| img.is_nondegenerate())
    }
}

/// A simplex of a hom-space: a necklace map together with a flag of
/// vertex subsets `T0 <= T1 <= .. <= Tn`, where `T0` is the join set and
/// `Tn` the full vertex set. The simplex dimension is `n`; it is
/// nondegenerate exactly when the flag is strictly ascending.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomSimplex {
    pub map: NecklaceMap,
    pub flag: Vec<BTreeSet<usize>>,
}

impl std::fmt::Debug for HomSimplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, flag ", self.map)?;
        for s in &self.flag {
            write!(f, "{:?}", s.iter().collect::<Vec<_>>())?;
        }
        write!(f, ")")
    }
}

impl HomSimplex {
    pub fn new(map: NecklaceMap, flag: Vec<BTreeSet<usize>>) -> Result<Self, NecklaceError> {
        if flag.is_empty()
            || flag[0] != map.shape.joins()
            || *flag.last().unwrap() != map.shape.vertices()
            || flag.windows(2).any(|w| !w[0].is_subset(&w[1]))
        {
            return Err(NecklaceError::BadFlag);
        }
        Ok(HomSimplex { map, flag })
    }

    pub fn dim(&self) -> usize {
        self.flag.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.flag.windows(2).all(|w| w[0] != w[1])
    }

    /// The unit `k`-simplex at a vertex: the single-point necklace under
    /// the constant flag.
    pub fn unit(at: usize, dim: usize) -> Self {
        let map = NecklaceMap::trivial(at);
        let flag = vec![map.shape.joins(); dim + 1];
        HomSimplex { map, flag }
    }
}

/// Normal form of a necklace-and-flag triple: collapse every bead image
/// to its nondegenerate base, drop beads that collapse to a point, and
/// push the flag forward along the induced vertex surjection. Idempotent,
/// and the identity on triples already in normal form.
pub fn tnd_quotient(s: &HomSimplex) -> HomSimplex {
    if s.map.is_totally_nondegenerate() {
        return s.clone();
    }
    let shape = &s.map.shape;
    // Vertex map q from the old necklace onto the quotient, built bead
    // by bead from each image's collapse pattern.
    let total = shape.total_dim();
    let mut q: Vec<usize> = vec![0; total + 1];
    let mut new_dims: Vec<usize> = Vec::new();
    let mut new_images: Vec<SimplexRef> = Vec::new();
    let mut new_base = 0usize;
    for (i, img) in s.map.images.iter().enumerate() {
        let (a, _) = shape.bead_range(i);
        let eps = img.word.to_map(img.id.dim);
        for t in 0..=shape.bead_dims()[i] {
            q[a + t] = new_base + eps.apply(t);
        }
        if img.id.dim >= 1 {
            new_dims.push(img.id.dim);
            new_images.push(SimplexRef::nondeg(img.id));
        }
        new_base += img.id.dim;
    }
    let map = NecklaceMap {
        shape: Necklace {
            bead_dims: new_dims,
        },
        images: new_images,
        src: s.map.src,
        tgt: s.map.tgt,
    };
    let flag = s
        .flag
        .iter()
        .map(|set| set.iter().map(|&v| q[v]).collect())
        .collect();
    HomSimplex { map, flag }
}

/// Face `i` of a hom-simplex, in normal form.
///
/// Dropping an inner flag level leaves the map alone. Dropping level 0
/// splits the necklace at the next level, making its vertices joins.
/// Dropping the top level restricts the necklace to the previous level.
pub fn hom_face(x: &FinSSet, s: &HomSimplex, i: usize) -> HomSimplex {
    let n = s.dim();
    assert!(n >= 1 && i <= n, "face d_{i} undefined in dimension {n}");
    if i == 0 {
        let map = s.map.split(x, &s.flag[1]);
        let flag = s.flag[1..].to_vec();
        tnd_quotient(&HomSimplex { map, flag })
    } else if i == n {
        let keep = &s.flag[n - 1];
        let map = s.map.restrict(x, keep);
        let renumber: HashMap<usize, usize> = keep
            .iter()
            .enumerate()
            .map(|(pos, &v)| (v, pos))
            .collect();
        let flag = s.flag[..n]
            .iter()
            .map(|set| set.iter().map(|v| renumber[v]).collect())
            .collect();
        tnd_quotient(&HomSimplex { map, flag })
    } else {
        let mut flag = s.flag.clone();
        flag.remove(i);
        HomSimplex {
            map: s.map.clone(),
            flag,
        }
    }
}

/// Degeneracy `s_i` of a hom-simplex: repeat flag level `i`.
pub fn hom_degeneracy(s: &HomSimplex, i: usize) -> HomSimplex {
    assert!(i <= s.dim());
    let mut flag = s.flag.clone();
    flag.insert(i, flag[i].clone());
    HomSimplex {
        map: s.map.clone(),
        flag,
    }
}

/// Normal form at the simplex level: strip repeated flag levels into a
/// degeneracy word, leaving a nondegenerate hom-simplex.
pub fn hom_ez(s: &HomSimplex) -> (crate::delta::DegeneracyWord, HomSimplex) {
    let indices: Vec<usize> = (0..s.dim())
        .rev()
        .filter(|&t| s.flag[t] == s.flag[t + 1])
        .collect();
    let mut flag = s.flag.clone();
    flag.dedup();
    let word = crate::delta::DegeneracyWord::new(indices).expect("descending by construction");
    (
        word,
        HomSimplex {
            map: s.map.clone(),
            flag,
        },
    )
}

/// Concatenate two hom-simplices of equal dimension end to end: the
/// composition of the hom-category. Joins, beads, and flags of the
/// second operand shift past the first.
pub fn concatenate(f: &HomSimplex, g: &HomSimplex) -> HomSimplex {
    assert_eq!(f.dim(), g.dim(), "composition needs equal dimensions");
    assert_eq!(f.map.tgt, g.map.src, "endpoint mismatch");
    let offset = f.map.shape.total_dim();
    let mut bead_dims = f.map.shape.bead_dims().to_vec();
    bead_dims.extend_from_slice(g.map.shape.bead_dims());
    let mut images = f.map.images.clone();
    images.extend(g.map.images.iter().cloned());
    let map = NecklaceMap {
        shape: Necklace { bead_dims },
        images,
        src: f.map.src,
        tgt: g.map.tgt,
    };
    let flag = f
        .flag
        .iter()
        .zip(&g.flag)
        .map(|(a, b)| {
            let mut set = a.clone();
            set.extend(b.iter().map(|&v| v + offset));
            set
        })
        .collect();
    HomSimplex { map, flag }
}

/// All totally nondegenerate necklace maps from `src` to `tgt` whose
/// total dimension is at most `size_cap`, in a deterministic order.
pub fn enumerate_necklaces(
    x: &FinSSet,
    src: usize,
    tgt: usize,
    size_cap: usize,
) -> Vec<NecklaceMap> {
    // Beads starting at each vertex, ordered by dimension then index.
    let mut beads_from: HashMap<usize, Vec<SimplexRef>> = HashMap::new();
    for dim in 1..=x.dim_cap() {
        for id in x.nondeg_ids(dim) {
            let r = SimplexRef::nondeg(id);
            beads_from
                .entry(x.vertex_at(&r, 0))
                .or_default()
                .push(r);
        }
    }
    let mut out = Vec::new();
    if src == tgt {
        out.push(NecklaceMap::trivial(src));
    }
    let mut stack: Vec<SimplexRef> = Vec::new();
    necklace_dfs(x, src, tgt, size_cap, &beads_from, &mut stack, &mut out);
    out
}

fn necklace_dfs(
    x: &FinSSet,
    at: usize,
    tgt: usize,
    budget: usize,
    beads_from: &HashMap<usize, Vec<SimplexRef>>,
    stack: &mut Vec<SimplexRef>,
    out: &mut Vec<NecklaceMap>,
) {
    let Some(candidates) = beads_from.get(&at) else {
        return;
    };
    for bead in candidates {
        let d = bead.dim();
        if d > budget {
            continue;
        }
        let end = x.vertex_at(bead, d);
        stack.push(bead.clone());
        if end == tgt {
            let shape = Necklace {
                bead_dims: stack.iter().map(|b| b.dim()).collect(),
            };
            out.push(NecklaceMap {
                shape,
                images: stack.clone(),
                src: x.vertex_at(&stack[0], 0),
                tgt,
            });
        }
        necklace_dfs(x, end, tgt, budget - d, beads_from, stack, out);
        stack.pop();
    }
}

/// A fully materialized hom-space: the simplicial set of necklace
/// triples from `src` to `tgt`, truncated at `dim_cap`, with necklaces
/// bounded by `size_cap` total dimension. Nondegenerate simplices can be
/// traded for their triples in both directions.
pub struct HomSpace {
    pub space: FinSSet,
    pub src: usize,
    pub tgt: usize,
    pub dim_cap: usize,
    pub size_cap: usize,
    /// Whether some necklace admits flags longer than the truncation,
    /// i.e. nondegenerate simplices above `dim_cap` were cut off.
    pub dim_truncated: bool,
    by_id: Vec<Vec<HomSimplex>>,
    lookup: HashMap<HomSimplex, NondegId>,
}

impl HomSpace {
    pub fn nondeg(&self, id: NondegId) -> &HomSimplex {
        &self.by_id[id.dim][id.idx]
    }

    pub fn id_of(&self, s: &HomSimplex) -> Option<NondegId> {
        self.lookup.get(s).copied()
    }

    /// The triple of an arbitrary simplex of the space, degeneracies
    /// expanded into repeated flag levels.
    pub fn hom_of_ref(&self, r: &SimplexRef) -> HomSimplex {
        let mut s = self.by_id[r.id.dim][r.id.idx].clone();
        // The rightmost letter acts first.
        for &i in r.word.indices().iter().rev() {
            s = hom_degeneracy(&s, i);
        }
        s
    }

    /// Normal form lookup: `None` when the triple's base lies outside
    /// the materialized caps.
    pub fn ref_of_hom(&self, s: &HomSimplex) -> Option<SimplexRef> {
        let (word, base) = hom_ez(s);
        let id = self.id_of(&base)?;
        Some(SimplexRef { word, id })
    }
}

/// Materialize `hom(src, tgt)` of the simplicial category of `x`.
///
/// Nondegenerate `k`-simplices are the totally nondegenerate necklace
/// maps paired with strictly ascending flags of length `k + 1`; faces
/// are computed by the splitting, dropping, and restriction operators
/// and re-normalized.
pub fn hom_space(
    x: &FinSSet,
    src: usize,
    tgt: usize,
    dim_cap: usize,
    size_cap: usize,
) -> HomSpace {
    let necklaces = enumerate_necklaces(x, src, tgt, size_cap);
    let mut dim_truncated = false;
    let mut space = FinSSet::new(dim_cap);
    let mut by_id: Vec<Vec<HomSimplex>> = vec![Vec::new(); dim_cap + 1];
    let mut lookup: HashMap<HomSimplex, NondegId> = HashMap::new();
    for k in 0..=dim_cap {
        for map in &necklaces {
            let joins = map.shape.joins();
            let vertices = map.shape.vertices();
            let free: Vec<usize> = vertices.difference(&joins).copied().collect();
            if free.len() > dim_cap {
                dim_truncated = true;
            }
            for flag in flags_of_length(&joins, &free, k) {
                let s = HomSimplex {
                    map: map.clone(),
                    flag,
                };
                let faces = if k == 0 {
                    vec![]
                } else {
                    (0..=k)
                        .map(|i| {
                            let f = hom_face(x, &s, i);
                            let (word, base) = hom_ez(&f);
                            let id = *lookup
                                .get(&base)
                                .unwrap_or_else(|| panic!("face of {s:?} not materialized"));
                            SimplexRef { word, id }
                        })
                        .collect()
                };
                let label = hom_label(x, &s);
                let id = space
                    .add_simplex(k, label, faces)
                    .expect("hom-space assembly");
                by_id[k].push(s.clone());
                lookup.insert(s, id);
            }
        }
    }
    HomSpace {
        space,
        src,
        tgt,
        dim_cap,
        size_cap,
        dim_truncated,
        by_id,
        lookup,
    }
}

/// Strictly ascending flags `J = T0 < T1 < .. < Tk = V` enumerated by
/// assigning each free vertex the first level containing it.
fn flags_of_length(
    joins: &BTreeSet<usize>,
    free: &[usize],
    k: usize,
) -> Vec<Vec<BTreeSet<usize>>> {
    let mut out = Vec::new();
    if k == 0 {
        if free.is_empty() {
            out.push(vec![joins.clone()]);
        }
        return out;
    }
    // Surjective level assignments free -> {1..k}.
    let mut levels = vec![1usize; free.len()];
    loop {
        let mut seen = vec![false; k + 1];
        for &l in &levels {
            seen[l] = true;
        }
        if (1..=k).all(|l| seen[l]) {
            let mut flag = Vec::with_capacity(k + 1);
            flag.push(joins.clone());
            for j in 1..=k {
                let mut set = flag[j - 1].clone();
                for (v, &l) in free.iter().zip(&levels) {
                    if l == j {
                        set.insert(*v);
                    }
                }
                flag.push(set);
            }
            out.push(flag);
        }
        // Odometer step.
        let mut pos = 0;
        loop {
            if pos == levels.len() {
                return out;
            }
            if levels[pos] < k {
                levels[pos] += 1;
                for l in levels[..pos].iter_mut() {
                    *l = 1;
                }
                break;
            }
            pos += 1;
        }
    }
}

/// Canonical label of a hom-simplex, unique per dimension: bead shape,
/// bead image labels, and the flag.
fn hom_label(x: &FinSSet, s: &HomSimplex) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    write!(out, "{:?}[", s.map.shape).unwrap();
    for (i, img) in s.map.images.iter().enumerate() {
        if i > 0 {
            out.push('|');
        }
        out.push_str(&x.describe(img));
    }
    out.push(']');
    if s.map.images.is_empty() {
        write!(out, "@{}", s.map.src).unwrap();
    }
    for set in &s.flag {
        let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        write!(out, "{{{}}}", items.join(",")).unwrap();
    }
    out
}
