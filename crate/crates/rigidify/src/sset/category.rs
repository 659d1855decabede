//! Finite categories presented by explicit composition tables, and their
//! nerves as finite truncated simplicial sets.

use std::collections::HashMap;

use thiserror::Error;

use crate::delta::{DegeneracyWord, OrdinalMap};

use super::fin_sset::{FinSSet, NondegId, SimplexRef};

pub type MorId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("composite of `{g}` after `{f}` is not defined")]
    MissingComposite { g: String, f: String },
    #[error("`{g}` after `{f}` is not composable")]
    NotComposable { g: String, f: String },
    #[error("composite `{gf}` of `{g}` after `{f}` has the wrong endpoints")]
    BadEndpoints { g: String, f: String, gf: String },
    #[error("associativity fails on `{h}`, `{g}`, `{f}`")]
    NotAssociative { h: String, g: String, f: String },
    #[error("identity law fails on `{0}`")]
    BadIdentity(String),
    #[error("graph has a directed cycle through `{0}`, free category is infinite")]
    CyclicGraph(String),
}

#[derive(Clone, Debug)]
struct MorData {
    label: String,
    src: usize,
    tgt: usize,
}

/// A finite category: objects, morphisms, and a composition table.
/// Identities are created automatically, one per object, and composition
/// with an identity never needs a table entry.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    identity: Vec<MorId>,
    comp: HashMap<(MorId, MorId), MorId>,
    mor_by_label: HashMap<String, MorId>,
}

impl FinCategory {
    pub fn new<S: AsRef<str>>(objects: &[S]) -> Self {
        let mut cat = FinCategory {
            objects: Vec::new(),
            morphisms: Vec::new(),
            identity: Vec::new(),
            comp: HashMap::new(),
            mor_by_label: HashMap::new(),
        };
        for o in objects {
            let obj = cat.objects.len();
            cat.objects.push(o.as_ref().to_string());
            let label = format!("id_{}", o.as_ref());
            let id = cat.push_morphism(label, obj, obj);
            cat.identity.push(id);
        }
        cat
    }

    fn push_morphism(&mut self, label: String, src: usize, tgt: usize) -> MorId {
        let id = self.morphisms.len();
        self.mor_by_label.insert(label.clone(), id);
        self.morphisms.push(MorData { label, src, tgt });
        id
    }

    pub fn add_morphism(
        &mut self,
        label: impl Into<String>,
        src: &str,
        tgt: &str,
    ) -> Result<MorId, CatError> {
        let label = label.into();
        if self.mor_by_label.contains_key(&label) {
            return Err(CatError::DuplicateLabel(label));
        }
        let src = self.object_by_label(src)?;
        let tgt = self.object_by_label(tgt)?;
        Ok(self.push_morphism(label, src, tgt))
    }

    /// Record `g` after `f` as `gf`. Endpoints are checked.
    pub fn set_composite(&mut self, g: MorId, f: MorId, gf: MorId) -> Result<(), CatError> {
        if self.morphisms[f].tgt != self.morphisms[g].src {
            return Err(CatError::NotComposable {
                g: self.mor_label(g).to_string(),
                f: self.mor_label(f).to_string(),
            });
        }
        if self.morphisms[gf].src != self.morphisms[f].src
            || self.morphisms[gf].tgt != self.morphisms[g].tgt
        {
            return Err(CatError::BadEndpoints {
                g: self.mor_label(g).to_string(),
                f: self.mor_label(f).to_string(),
                gf: self.mor_label(gf).to_string(),
            });
        }
        self.comp.insert((g, f), gf);
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_label(&self, obj: usize) -> &str {
        &self.objects[obj]
    }

    pub fn object_by_label(&self, label: &str) -> Result<usize, CatError> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| CatError::UnknownObject(label.to_string()))
    }

    pub fn object_labels(&self) -> impl Iterator<Item = &str> {
        self.objects.iter().map(|s| s.as_str())
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        0..self.morphisms.len()
    }

    pub fn mor_label(&self, m: MorId) -> &str {
        &self.morphisms[m].label
    }

    pub fn mor_by_label(&self, label: &str) -> Option<MorId> {
        self.mor_by_label.get(label).copied()
    }

    pub fn src(&self, m: MorId) -> usize {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: MorId) -> usize {
        self.morphisms[m].tgt
    }

    pub fn identity_of(&self, obj: usize) -> MorId {
        self.identity[obj]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.morphisms[m].src] == m
    }

    /// `g` after `f`, or `None` when the pair is composable but missing
    /// from the table. Panics if the endpoints do not line up.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        assert_eq!(
            self.morphisms[f].tgt, self.morphisms[g].src,
            "compose endpoints"
        );
        if self.is_identity(g) {
            return Some(f);
        }
        if self.is_identity(f) {
            return Some(g);
        }
        self.comp.get(&(g, f)).copied()
    }

    /// Check that composition is total on composable pairs, respects
    /// endpoints, and is associative.
    pub fn validate(&self) -> Result<(), CatError> {
        let pair_err = |g: MorId, f: MorId| CatError::MissingComposite {
            g: self.mor_label(g).to_string(),
            f: self.mor_label(f).to_string(),
        };
        for g in self.morphism_ids() {
            for f in self.morphism_ids() {
                if self.morphisms[f].tgt != self.morphisms[g].src {
                    continue;
                }
                let gf = self.compose(g, f).ok_or_else(|| pair_err(g, f))?;
                if self.morphisms[gf].src != self.morphisms[f].src
                    || self.morphisms[gf].tgt != self.morphisms[g].tgt
                {
                    return Err(CatError::BadEndpoints {
                        g: self.mor_label(g).to_string(),
                        f: self.mor_label(f).to_string(),
                        gf: self.mor_label(gf).to_string(),
                    });
                }
            }
        }
        for h in self.morphism_ids() {
            for g in self.morphism_ids() {
                if self.morphisms[g].tgt != self.morphisms[h].src {
                    continue;
                }
                let hg = self.compose(h, g).unwrap();
                for f in self.morphism_ids() {
                    if self.morphisms[f].tgt != self.morphisms[g].src {
                        continue;
                    }
                    let gf = self.compose(g, f).unwrap();
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CatError::NotAssociative {
                            h: self.mor_label(h).to_string(),
                            g: self.mor_label(g).to_string(),
                            f: self.mor_label(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The poset category on the chain `0 < 1 < .. < n`, with one
    /// morphism `i<j` for each strict pair.
    pub fn poset_chain(n: usize) -> Self {
        let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (0..=n)
            .flat_map(|i| (i..=n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        Self::from_poset(&labels, |i, j| i <= j, &pairs).expect("chain poset")
    }

    /// The category of a finite poset: one morphism `a<b` for each strict
    /// relation in `pairs`, composed by uniqueness. `leq` must contain
    /// every listed pair and be transitive on them.
    pub fn from_poset<S: AsRef<str>>(
        labels: &[S],
        leq: impl Fn(usize, usize) -> bool,
        pairs: &[(usize, usize)],
    ) -> Result<Self, CatError> {
        let mut cat = FinCategory::new(labels);
        let mut mor: HashMap<(usize, usize), MorId> = HashMap::new();
        for &(a, b) in pairs {
            assert!(a != b && leq(a, b), "not a strict relation: {a}, {b}");
            let label = format!("{}<{}", labels[a].as_ref(), labels[b].as_ref());
            let id = cat.add_morphism(label, labels[a].as_ref(), labels[b].as_ref())?;
            mor.insert((a, b), id);
        }
        for (&(a, b), &f) in &mor {
            for (&(b2, c), &g) in &mor {
                if b2 != b {
                    continue;
                }
                let gf = *mor
                    .get(&(a, c))
                    .unwrap_or_else(|| panic!("poset relations not transitive at {a},{b},{c}"));
                cat.set_composite(g, f, gf)?;
            }
        }
        Ok(cat)
    }

    /// The free category on a finite acyclic multigraph: morphisms are
    /// directed edge paths, composed by concatenation. Path labels join
    /// edge labels with `*`, later edges first.
    pub fn free_on_acyclic_graph<S: AsRef<str>>(
        objects: &[S],
        edges: &[(&str, usize, usize)],
    ) -> Result<Self, CatError> {
        let mut cat = FinCategory::new(objects);
        // Paths, shortest first, as edge index sequences.
        let mut paths: Vec<(Vec<usize>, usize, usize, MorId)> = Vec::new();
        let mut by_seq: HashMap<Vec<usize>, MorId> = HashMap::new();
        for (i, &(label, src, tgt)) in edges.iter().enumerate() {
            let id = cat.add_morphism(
                label,
                objects[src].as_ref(),
                objects[tgt].as_ref(),
            )?;
            paths.push((vec![i], src, tgt, id));
            by_seq.insert(vec![i], id);
        }
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (seq, src, tgt, _) in &frontier {
                for (i, &(elabel, esrc, etgt)) in edges.iter().enumerate() {
                    if esrc != *tgt {
                        continue;
                    }
                    let mut nseq = seq.clone();
                    nseq.push(i);
                    if etgt == *src {
                        return Err(CatError::CyclicGraph(
                            objects[*src].as_ref().to_string(),
                        ));
                    }
                    // Any path longer than the edge count repeats an edge
                    // and therefore sits on a cycle.
                    if nseq.len() > edges.len() {
                        return Err(CatError::CyclicGraph(elabel.to_string()));
                    }
                    let label = nseq
                        .iter()
                        .rev()
                        .map(|&e| edges[e].0)
                        .collect::<Vec<_>>()
                        .join("*");
                    let id = cat.add_morphism(label, objects[*src].as_ref(), objects[etgt].as_ref())?;
                    by_seq.insert(nseq.clone(), id);
                    next.push((nseq, *src, etgt, id));
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        for (seq_f, fsrc, ftgt, f) in &paths {
            for (seq_g, gsrc, _, g) in &paths {
                if gsrc != ftgt {
                    continue;
                }
                let mut seq = seq_f.clone();
                seq.extend_from_slice(seq_g);
                let gf = *by_seq.get(&seq).expect("path closure");
                let _ = fsrc;
                cat.set_composite(*g, *f, gf)?;
            }
        }
        Ok(cat)
    }

    /// The nerve, truncated at `dim_cap`: nondegenerate `k`-simplices are
    /// the composable chains of `k` non-identity morphisms.
    pub fn nerve(&self, dim_cap: usize) -> Result<NerveComplex, NerveBuildError> {
        self.validate().map_err(NerveBuildError::Category)?;
        let mut complex = FinSSet::new(dim_cap);
        let mut chains: Vec<Vec<Vec<MorId>>> = vec![Vec::new(); dim_cap + 1];
        let mut index: HashMap<Vec<MorId>, NondegId> = HashMap::new();
        for obj in 0..self.object_count() {
            let id = complex
                .add_vertex(self.object_label(obj))
                .map_err(NerveBuildError::Complex)?;
            debug_assert_eq!(id.idx, obj);
        }
        for k in 1..=dim_cap {
            let prev: Vec<Vec<MorId>> = if k == 1 {
                vec![vec![]]
            } else {
                chains[k - 1].clone()
            };
            for stem in prev {
                for m in self.morphism_ids() {
                    if self.is_identity(m) {
                        continue;
                    }
                    if let Some(&last) = stem.last() {
                        if self.tgt(last) != self.src(m) {
                            continue;
                        }
                    }
                    let mut chain = stem.clone();
                    chain.push(m);
                    let label = chain
                        .iter()
                        .map(|&m| self.mor_label(m))
                        .collect::<Vec<_>>()
                        .join("|");
                    let faces = (0..=k)
                        .map(|i| self.chain_face_ref(&chain, i, &index))
                        .collect();
                    let id = complex
                        .add_simplex(k, label, faces)
                        .map_err(NerveBuildError::Complex)?;
                    index.insert(chain.clone(), id);
                    chains[k].push(chain);
                }
            }
        }
        Ok(NerveComplex {
            category: self.clone(),
            complex,
            chains,
            index,
        })
    }

    /// Face `i` of a composable chain, in normal form: dropping an outer
    /// morphism or composing around an inner object, then stripping any
    /// identities into a degeneracy word.
    fn chain_face_ref(
        &self,
        chain: &[MorId],
        i: usize,
        index: &HashMap<Vec<MorId>, NondegId>,
    ) -> SimplexRef {
        let k = chain.len();
        let mut result: Vec<MorId> = Vec::with_capacity(k - 1);
        if i == 0 {
            result.extend_from_slice(&chain[1..]);
        } else if i == k {
            result.extend_from_slice(&chain[..k - 1]);
        } else {
            result.extend_from_slice(&chain[..i - 1]);
            let composite = self
                .compose(chain[i], chain[i - 1])
                .expect("validated category");
            result.push(composite);
            result.extend_from_slice(&chain[i + 1..]);
        }
        let start = if i == 0 {
            self.tgt(chain[0])
        } else {
            self.src(chain[0])
        };
        self.normalize_chain(&result, start, index)
    }

    /// Normal form of a chain that may contain identities.
    fn normalize_chain(
        &self,
        chain: &[MorId],
        start_obj: usize,
        index: &HashMap<Vec<MorId>, NondegId>,
    ) -> SimplexRef {
        let stripped: Vec<MorId> = chain
            .iter()
            .copied()
            .filter(|&m| !self.is_identity(m))
            .collect();
        let id = if stripped.is_empty() {
            NondegId {
                dim: 0,
                idx: start_obj,
            }
        } else {
            *index.get(&stripped).expect("lower chain present")
        };
        // Vertex v of the chain collapses to the count of non-identity
        // entries before it.
        let mut values = Vec::with_capacity(chain.len() + 1);
        let mut seen = 0usize;
        values.push(0);
        for &m in chain {
            if !self.is_identity(m) {
                seen += 1;
            }
            values.push(seen);
        }
        let epi = OrdinalMap::new(values, stripped.len() + 1).unwrap();
        SimplexRef {
            word: DegeneracyWord::from_surjection(&epi),
            id,
        }
    }
}

#[derive(Debug, Error)]
pub enum NerveBuildError {
    #[error("category is not valid: {0}")]
    Category(CatError),
    #[error("nerve assembly failed: {0}")]
    Complex(super::fin_sset::SsetError),
}

/// The nerve of a finite category, with the chain structure retained so
/// simplices can be traded for morphism chains in both directions.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub category: FinCategory,
    pub complex: FinSSet,
    chains: Vec<Vec<Vec<MorId>>>,
    index: HashMap<Vec<MorId>, NondegId>,
}

impl NerveComplex {
    /// The morphism chain of a nondegenerate simplex of positive
    /// dimension.
    pub fn chain_of(&self, id: NondegId) -> &[MorId] {
        &self.chains[id.dim][id.idx]
    }

    pub fn id_of_chain(&self, chain: &[MorId]) -> Option<NondegId> {
        self.index.get(chain).copied()
    }

    pub fn vertex_of_object(&self, obj: usize) -> NondegId {
        NondegId { dim: 0, idx: obj }
    }

    /// Normal form of an arbitrary composable chain, identities allowed.
    pub fn ref_of_chain(&self, chain: &[MorId], start_obj: usize) -> SimplexRef {
        self.category.normalize_chain(chain, start_obj, &self.index)
    }

    /// The chain of any simplex, identities reinstated for degeneracies:
    /// entry `v` is the morphism from vertex `v` to vertex `v + 1`.
    pub fn expanded_chain(&self, r: &SimplexRef) -> Vec<MorId> {
        let dim = r.dim();
        if dim == 0 {
            return vec![];
        }
        let map = r.word.to_map(r.id.dim);
        let base_chain: &[MorId] = if r.id.dim == 0 {
            &[]
        } else {
            self.chain_of(r.id)
        };
        let base_start = if r.id.dim == 0 {
            r.id.idx
        } else {
            self.category.src(base_chain[0])
        };
        (0..dim)
            .map(|v| {
                let (a, b) = (map.apply(v), map.apply(v + 1));
                if a == b {
                    let obj = if a == 0 {
                        base_start
                    } else {
                        self.category.tgt(base_chain[a - 1])
                    };
                    self.category.identity_of(obj)
                } else {
                    debug_assert_eq!(b, a + 1);
                    base_chain[a]
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_poset_nerve_is_standard_simplex() {
        for n in 1..=4usize {
            let cat = FinCategory::poset_chain(n);
            cat.validate().unwrap();
            let nerve = cat.nerve(n).unwrap();
            let std = FinSSet::standard(n);
            for k in 0..=n {
                assert_eq!(
                    nerve.complex.nondeg_count(k),
                    std.nondeg_count(k),
                    "dim {k} of nerve of chain {n}"
                );
            }
            nerve.complex.validate().unwrap();
            // Simplices in both are determined by their vertex lists, and
            // faces must agree through that correspondence.
            for k in 1..=n {
                for id in nerve.complex.nondeg_ids(k).collect::<Vec<_>>() {
                    let r = SimplexRef::nondeg(id);
                    let verts = nerve.complex.vertex_ids(&r);
                    let std_id = std
                        .find(
                            k,
                            &verts
                                .iter()
                                .map(|v| v.to_string())
                                .collect::<Vec<_>>()
                                .join("-"),
                        )
                        .expect("matching subset simplex");
                    let std_r = SimplexRef::nondeg(std_id);
                    for i in 0..=k {
                        assert_eq!(
                            nerve.complex.vertex_ids(&nerve.complex.face(&r, i)),
                            std.vertex_ids(&std.face(&std_r, i))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn involution_monoid_nerve_truncates() {
        // One object, one non-identity endomorphism squaring to the
        // identity. Chains of any length are composable, so each level
        // has exactly one nondegenerate simplex.
        let mut cat = FinCategory::new(&["x"]);
        let e = cat.add_morphism("e", "x", "x").unwrap();
        let id_x = cat.identity_of(0);
        cat.set_composite(e, e, id_x).unwrap();
        cat.validate().unwrap();
        let nerve = cat.nerve(3).unwrap();
        for k in 0..=3 {
            assert_eq!(nerve.complex.nondeg_count(k), 1);
        }
        // The inner face of (e, e) composes to the identity and collapses
        // onto a degenerate edge.
        let ee = nerve.id_of_chain(&[e, e]).unwrap();
        let r = SimplexRef::nondeg(ee);
        let d1 = nerve.complex.face(&r, 1);
        assert_eq!(d1.id.dim, 0);
        assert_eq!(d1.word.indices(), &[0]);
        assert_eq!(nerve.complex.face(&r, 0), nerve.complex.face(&r, 2));
        nerve.complex.validate().unwrap();
    }

    #[test]
    fn expanded_chain_roundtrip() {
        let mut cat = FinCategory::new(&["x", "y"]);
        let f = cat.add_morphism("f", "x", "y").unwrap();
        cat.validate().unwrap();
        let nerve = cat.nerve(3).unwrap();
        let fr = SimplexRef::nondeg(nerve.id_of_chain(&[f]).unwrap());
        let s0f = nerve.complex.degeneracy(&fr, 0);
        let chain = nerve.expanded_chain(&s0f);
        assert_eq!(chain, vec![cat.identity_of(0), f]);
        let back = nerve.ref_of_chain(&chain, 0);
        assert_eq!(back, s0f);
        let s1f = nerve.complex.degeneracy(&fr, 1);
        assert_eq!(
            nerve.expanded_chain(&s1f),
            vec![f, cat.identity_of(1)]
        );
    }

    #[test]
    fn validate_rejects_broken_tables() {
        let mut cat = FinCategory::new(&["x"]);
        let a = cat.add_morphism("a", "x", "x").unwrap();
        let b = cat.add_morphism("b", "x", "x").unwrap();
        // Missing composites.
        assert!(matches!(
            cat.validate(),
            Err(CatError::MissingComposite { .. })
        ));
        cat.set_composite(a, a, b).unwrap();
        cat.set_composite(b, a, b).unwrap();
        cat.set_composite(a, b, a).unwrap();
        cat.set_composite(b, b, b).unwrap();
        // (a a) a = b a = b but a (a a) = a b = a.
        assert!(matches!(
            cat.validate(),
            Err(CatError::NotAssociative { .. })
        ));
    }

    #[test]
    fn free_category_on_a_fence() {
        let cat = FinCategory::free_on_acyclic_graph(
            &["0", "1", "2"],
            &[("f", 0, 1), ("u", 1, 2), ("v", 1, 2)],
        )
        .unwrap();
        cat.validate().unwrap();
        // Identities 3, edges 3, paths of length two 2.
        assert_eq!(cat.morphism_count(), 8);
        let f = cat.mor_by_label("f").unwrap();
        let u = cat.mor_by_label("u").unwrap();
        let uf = cat.compose(u, f).unwrap();
        assert_eq!(cat.mor_label(uf), "u*f");
        let cyclic = FinCategory::free_on_acyclic_graph(&["0"], &[("e", 0, 0)]);
        assert!(matches!(cyclic, Err(CatError::CyclicGraph(_))));
    }
}
