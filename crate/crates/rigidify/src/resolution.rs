//! Simplicial categories presented four ways: the free resolution of an
//! ordinary category, the subset-interval model of a finite total order,
//! the hom-spaces of a nerve composed by necklace concatenation, and
//! discrete enrichment. Every presentation exposes the same interface
//! (`SimpCategory`), every simplex has a backend-independent normal form
//! (`CanonicalSimplex`), and `iso_check` aligns two presentations cell by
//! cell through those forms. `hc_nerve` assembles the coherent nerve of a
//! simplicial category up to dimension three.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::delta::DegeneracyWord;
use crate::necklace::{
    concatenate, hom_space, tnd_quotient, HomSimplex, HomSpace, Necklace, NecklaceMap,
};
use crate::sset::io::{sset_to_doc, SSetDoc};
use crate::sset::{
    CatError, FinCategory, FinSSet, MorId, NerveBuildError, NerveComplex, NondegId, SimplexRef,
    SsetError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter `{0}` is an identity, words keep identities implicit")]
    IdentityLetter(String),
    #[error("letter `{0}` does not start at `{1}`")]
    NotComposable(String, String),
    #[error("nesting level {0} is not a set of block boundaries for this word")]
    BadLevel(usize),
    #[error("nesting levels must refine from coarse to fine")]
    NotNested,
}

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("invalid category: {0}")]
    Category(#[from] CatError),
    #[error("hom-space assembly failed: {0}")]
    Assembly(#[from] SsetError),
    #[error("nerve construction failed: {0}")]
    Nerve(#[from] NerveBuildError),
}

/// A simplex of the free resolution of a category: a composable word of
/// non-identity morphisms together with one nesting level per dimension.
///
/// Level `k` is a set of cut positions between the letters, always
/// containing `0` and the word length, and levels refine as `k` grows.
/// A vertex carries no levels. The identity at an object is the empty
/// word, kept distinct from every one-letter word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParenWord {
    src: usize,
    morphisms: Vec<MorId>,
    levels: Vec<BTreeSet<usize>>,
}

impl ParenWord {
    pub fn new(
        cat: &FinCategory,
        src: usize,
        morphisms: Vec<MorId>,
        levels: Vec<BTreeSet<usize>>,
    ) -> Result<Self, WordError> {
        let mut at = src;
        for &m in &morphisms {
            if cat.is_identity(m) {
                return Err(WordError::IdentityLetter(cat.mor_label(m).to_string()));
            }
            if cat.src(m) != at {
                return Err(WordError::NotComposable(
                    cat.mor_label(m).to_string(),
                    cat.object_label(at).to_string(),
                ));
            }
            at = cat.tgt(m);
        }
        let p = morphisms.len();
        for (k, level) in levels.iter().enumerate() {
            if !level.contains(&0) || !level.contains(&p) || level.iter().any(|&v| v > p) {
                return Err(WordError::BadLevel(k));
            }
        }
        if levels.windows(2).any(|w| !w[0].is_subset(&w[1])) {
            return Err(WordError::NotNested);
        }
        Ok(ParenWord {
            src,
            morphisms,
            levels,
        })
    }

    /// The identity at `src` as a simplex of dimension `dim`.
    pub fn unit(src: usize, dim: usize) -> Self {
        ParenWord {
            src,
            morphisms: Vec::new(),
            levels: vec![BTreeSet::from([0]); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn tgt(&self, cat: &FinCategory) -> usize {
        self.morphisms.last().map_or(self.src, |&m| cat.tgt(m))
    }

    pub fn morphisms(&self) -> &[MorId] {
        &self.morphisms
    }

    pub fn levels(&self) -> &[BTreeSet<usize>] {
        &self.levels
    }

    fn full_set(&self) -> BTreeSet<usize> {
        (0..=self.morphisms.len()).collect()
    }

    /// The levels closed off with the one-letter decomposition; one set
    /// per flag position, `dim() + 1` in total.
    pub fn full_flag(&self) -> Vec<BTreeSet<usize>> {
        let mut flag = self.levels.clone();
        flag.push(self.full_set());
        flag
    }

    pub fn is_nondegenerate(&self) -> bool {
        let flag = self.full_flag();
        flag.windows(2).all(|w| w[0] != w[1])
    }

    /// Face `d_i`. For `i < dim` this forgets level `i`; the top face
    /// composes the innermost blocks in the category and erases identity
    /// composites, renumbering the remaining levels through the surviving
    /// cut positions.
    pub fn face(&self, cat: &FinCategory, i: usize) -> ParenWord {
        let n = self.dim();
        assert!(n >= 1 && i <= n, "face d_{i} undefined in dimension {n}");
        if i < n {
            let mut levels = self.levels.clone();
            levels.remove(i);
            return ParenWord {
                src: self.src,
                morphisms: self.morphisms.clone(),
                levels,
            };
        }
        let cuts: Vec<usize> = self.levels[n - 1].iter().copied().collect();
        let mut word = Vec::new();
        let mut pos = HashMap::new();
        pos.insert(cuts[0], 0usize);
        for pair in cuts.windows(2) {
            let block = &self.morphisms[pair[0]..pair[1]];
            let mut comp = block[0];
            for &m in &block[1..] {
                comp = cat.compose(m, comp).expect("category composition is total");
            }
            if !cat.is_identity(comp) {
                word.push(comp);
            }
            pos.insert(pair[1], word.len());
        }
        let levels = self.levels[..n - 1]
            .iter()
            .map(|level| level.iter().map(|v| pos[v]).collect())
            .collect();
        ParenWord {
            src: self.src,
            morphisms: word,
            levels,
        }
    }

    /// Degeneracy `s_i`: repeat level `i`, or close the flag with the
    /// finest decomposition when `i == dim`.
    pub fn degeneracy(&self, i: usize) -> ParenWord {
        let n = self.dim();
        assert!(i <= n, "degeneracy s_{i} undefined in dimension {n}");
        let mut levels = self.levels.clone();
        let inserted = if i == n {
            self.full_set()
        } else {
            levels[i].clone()
        };
        levels.insert(i, inserted);
        ParenWord {
            src: self.src,
            morphisms: self.morphisms.clone(),
            levels,
        }
    }

    /// Normal form: the degeneracy word that peels repeated flag levels
    /// off a nondegenerate base.
    pub fn ez(&self) -> (DegeneracyWord, ParenWord) {
        let flag = self.full_flag();
        let indices: Vec<usize> = (0..self.dim())
            .rev()
            .filter(|&t| flag[t] == flag[t + 1])
            .collect();
        let word = DegeneracyWord::new(indices).expect("indices are strictly decreasing");
        let mut levels = Vec::new();
        for t in 0..self.dim() {
            if flag[t] != flag[t + 1] {
                levels.push(flag[t].clone());
            }
        }
        (
            word,
            ParenWord {
                src: self.src,
                morphisms: self.morphisms.clone(),
                levels,
            },
        )
    }

    /// The fully parenthesized display form, one paren pair per block per
    /// level. The empty word renders as the identity's label.
    pub fn render(&self, cat: &FinCategory) -> String {
        if self.morphisms.is_empty() {
            return cat.mor_label(cat.identity_of(self.src)).to_string();
        }
        self.render_range(cat, 0, 0, self.morphisms.len())
    }

    fn render_range(&self, cat: &FinCategory, depth: usize, a: usize, b: usize) -> String {
        if depth == self.levels.len() {
            return self.morphisms[a..b]
                .iter()
                .map(|&m| cat.mor_label(m))
                .collect::<Vec<_>>()
                .join(" ");
        }
        let cuts: Vec<usize> = self.levels[depth]
            .iter()
            .copied()
            .filter(|&v| a <= v && v <= b)
            .collect();
        cuts.windows(2)
            .map(|w| format!("({})", self.render_range(cat, depth + 1, w[0], w[1])))
            .collect()
    }

    /// Paste `self` then `other`, shifting the second word's cut
    /// positions. This is composition of hom-simplices in the free
    /// resolution and it is strictly associative and unital.
    pub fn then(&self, cat: &FinCategory, other: &ParenWord) -> ParenWord {
        assert_eq!(self.dim(), other.dim(), "composition needs equal dimensions");
        assert_eq!(self.tgt(cat), other.src, "endpoints do not match");
        let p = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .chain(&other.morphisms)
            .copied()
            .collect();
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| {
                a.iter()
                    .copied()
                    .chain(b.iter().map(|&v| v + p))
                    .collect()
            })
            .collect();
        ParenWord {
            src: self.src,
            morphisms,
            levels,
        }
    }

    /// The necklace-and-flag triple of this simplex inside the hom-space
    /// of the nerve of the same category.
    pub fn to_hom(&self, nerve: &NerveComplex) -> HomSimplex {
        if self.morphisms.is_empty() {
            return HomSimplex::unit(self.src, self.dim());
        }
        let flag = self.full_flag();
        let joins: Vec<usize> = flag[0].iter().copied().collect();
        let mut dims = Vec::new();
        let mut images = Vec::new();
        for pair in joins.windows(2) {
            let chain = &self.morphisms[pair[0]..pair[1]];
            let id = nerve.id_of_chain(chain).expect("chain lies in the nerve");
            dims.push(pair[1] - pair[0]);
            images.push(SimplexRef::nondeg(id));
        }
        let shape = Necklace::new(dims).expect("blocks are nonempty");
        let map = NecklaceMap::new(
            &nerve.complex,
            shape,
            images,
            self.src,
            self.tgt(&nerve.category),
        )
        .expect("bead endpoints match");
        HomSimplex::new(map, flag).expect("flag fits the necklace")
    }

    /// Back from a totally nondegenerate triple: concatenate the bead
    /// chains and read the levels straight off the flag.
    pub fn from_hom(nerve: &NerveComplex, s: &HomSimplex) -> ParenWord {
        let mut morphisms = Vec::new();
        for img in &s.map.images {
            morphisms.extend_from_slice(nerve.chain_of(img.id));
        }
        let n = s.dim();
        ParenWord {
            src: s.map.src,
            morphisms,
            levels: s.flag[..n].to_vec(),
        }
    }
}

/// Backend-independent normal form of a hom-simplex: endpoint labels,
/// the morphism labels in path order, and the full boundary flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalSimplex {
    pub src: String,
    pub tgt: String,
    pub word: Vec<String>,
    pub flag: Vec<BTreeSet<usize>>,
}

impl std::fmt::Display for CanonicalSimplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}->{} [{}]", self.src, self.tgt, self.word.join(" "))?;
        for set in &self.flag {
            let cuts: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            write!(f, " {{{}}}", cuts.join(","))?;
        }
        Ok(())
    }
}

fn canonical_of_word(cat: &FinCategory, w: &ParenWord) -> CanonicalSimplex {
    CanonicalSimplex {
        src: cat.object_label(w.src()).to_string(),
        tgt: cat.object_label(w.tgt(cat)).to_string(),
        word: w
            .morphisms()
            .iter()
            .map(|&m| cat.mor_label(m).to_string())
            .collect(),
        flag: w.full_flag(),
    }
}

/// One hom-object of the interval model: the nerve of the poset of
/// subsets of `{i..=j}` that contain both endpoints.
struct IntervalHom {
    subsets: Vec<BTreeSet<usize>>,
    index: HashMap<BTreeSet<usize>, usize>,
    mor: HashMap<(usize, usize), MorId>,
    nerve: NerveComplex,
}

enum Backend {
    Resolution {
        cat: FinCategory,
        homs: Vec<Vec<FinSSet>>,
        words: Vec<Vec<Vec<Vec<ParenWord>>>>,
        lookup: Vec<Vec<HashMap<ParenWord, NondegId>>>,
    },
    Interval {
        cells: Vec<Vec<Option<IntervalHom>>>,
        empty: FinSSet,
    },
    Rigidified {
        nerve: NerveComplex,
        spaces: Vec<Vec<HomSpace>>,
    },
    Discrete {
        cat: FinCategory,
        homs: Vec<Vec<FinSSet>>,
    },
}

/// A simplicial category with finitely many objects and truncated,
/// finitely presented hom-spaces. Composition is strictly associative and
/// unital; it returns `None` when the composite falls outside the
/// materialized caps.
pub struct SimpCategory {
    objects: Vec<String>,
    pub dim_cap: usize,
    pub size_cap: usize,
    backend: Backend,
}

fn resolution_word(
    words: &[Vec<Vec<Vec<ParenWord>>>],
    x: usize,
    y: usize,
    r: &SimplexRef,
) -> ParenWord {
    let mut w = words[x][y][r.id.dim][r.id.idx].clone();
    for &i in r.word.indices().iter().rev() {
        w = w.degeneracy(i);
    }
    w
}

impl SimpCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_by_label(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|l| l == label)
    }

    pub fn hom(&self, x: usize, y: usize) -> &FinSSet {
        match &self.backend {
            Backend::Resolution { homs, .. } | Backend::Discrete { homs, .. } => &homs[x][y],
            Backend::Interval { cells, empty } => cells[x][y]
                .as_ref()
                .map_or(empty, |c| &c.nerve.complex),
            Backend::Rigidified { spaces, .. } => &spaces[x][y].space,
        }
    }

    /// The identity vertex of `hom(x, x)`.
    pub fn unit(&self, x: usize) -> SimplexRef {
        match &self.backend {
            Backend::Resolution { lookup, .. } => {
                SimplexRef::nondeg(lookup[x][x][&ParenWord::unit(x, 0)])
            }
            Backend::Interval { .. } => SimplexRef::nondeg(NondegId { dim: 0, idx: 0 }),
            Backend::Rigidified { spaces, .. } => spaces[x][x]
                .ref_of_hom(&HomSimplex::unit(x, 0))
                .expect("unit vertex exists"),
            Backend::Discrete { cat, homs } => SimplexRef::nondeg(
                homs[x][x]
                    .find(0, cat.mor_label(cat.identity_of(x)))
                    .expect("identity vertex exists"),
            ),
        }
    }

    /// Compose `g` after `f` for `f` in `hom(x, y)` and `g` in
    /// `hom(y, z)` of equal dimension. `None` means the composite falls
    /// outside the materialized caps; within caps it always exists.
    pub fn compose(
        &self,
        x: usize,
        y: usize,
        z: usize,
        g: &SimplexRef,
        f: &SimplexRef,
    ) -> Option<SimplexRef> {
        assert_eq!(f.dim(), g.dim(), "composition needs equal dimensions");
        match &self.backend {
            Backend::Resolution {
                cat, words, lookup, ..
            } => {
                let fw = resolution_word(words, x, y, f);
                let gw = resolution_word(words, y, z, g);
                let c = fw.then(cat, &gw);
                if c.len() > self.size_cap {
                    return None;
                }
                let (dword, base) = c.ez();
                let id = lookup[x][z]
                    .get(&base)
                    .copied()
                    .expect("composite within caps is materialized");
                Some(SimplexRef { word: dword, id })
            }
            Backend::Interval { cells, .. } => {
                if x == y {
                    return Some(g.clone());
                }
                if y == z {
                    return Some(f.clone());
                }
                let fc = cells[x][y].as_ref()?;
                let gc = cells[y][z].as_ref()?;
                let tc = cells[x][z].as_ref().expect("interval spans the endpoints");
                let n = f.dim();
                let chain_objs: Vec<usize> = (0..=n)
                    .map(|m| {
                        let a = &fc.subsets[fc.nerve.complex.vertex_at(f, m)];
                        let b = &gc.subsets[gc.nerve.complex.vertex_at(g, m)];
                        let union: BTreeSet<usize> = a.union(b).copied().collect();
                        tc.index[&union]
                    })
                    .collect();
                let chain: Vec<MorId> = chain_objs
                    .windows(2)
                    .map(|w| {
                        if w[0] == w[1] {
                            tc.nerve.category.identity_of(w[0])
                        } else {
                            tc.mor[&(w[0], w[1])]
                        }
                    })
                    .collect();
                Some(tc.nerve.ref_of_chain(&chain, chain_objs[0]))
            }
            Backend::Rigidified { spaces, .. } => {
                let fh = spaces[x][y].hom_of_ref(f);
                let gh = spaces[y][z].hom_of_ref(g);
                spaces[x][z].ref_of_hom(&tnd_quotient(&concatenate(&fh, &gh)))
            }
            Backend::Discrete { cat, homs } => {
                let fm = cat
                    .mor_by_label(homs[x][y].label_of(f.id))
                    .expect("hom vertex names a morphism");
                let gm = cat
                    .mor_by_label(homs[y][z].label_of(g.id))
                    .expect("hom vertex names a morphism");
                let gf = cat.compose(gm, fm).expect("category composition is total");
                let id = homs[x][z]
                    .find(0, cat.mor_label(gf))
                    .expect("composite vertex exists");
                Some(SimplexRef {
                    word: f.word.clone(),
                    id,
                })
            }
        }
    }

    /// The backend-independent normal form of any simplex of `hom(x, y)`,
    /// degeneracies expanded into repeated flag levels.
    pub fn canonical(&self, x: usize, y: usize, r: &SimplexRef) -> CanonicalSimplex {
        match &self.backend {
            Backend::Resolution { cat, words, .. } => {
                canonical_of_word(cat, &resolution_word(words, x, y, r))
            }
            Backend::Interval { cells, .. } => {
                let n = r.dim();
                if x == y {
                    return CanonicalSimplex {
                        src: self.objects[x].clone(),
                        tgt: self.objects[y].clone(),
                        word: Vec::new(),
                        flag: vec![BTreeSet::from([0]); n + 1],
                    };
                }
                let cell = cells[x][y].as_ref().expect("simplex lives in a nonempty hom");
                let chain: Vec<&BTreeSet<usize>> = (0..=n)
                    .map(|m| &cell.subsets[cell.nerve.complex.vertex_at(r, m)])
                    .collect();
                let top: Vec<usize> = chain[n].iter().copied().collect();
                let rank: HashMap<usize, usize> =
                    top.iter().enumerate().map(|(k, &v)| (v, k)).collect();
                CanonicalSimplex {
                    src: self.objects[x].clone(),
                    tgt: self.objects[y].clone(),
                    word: top.windows(2).map(|w| format!("{}<{}", w[0], w[1])).collect(),
                    flag: chain
                        .iter()
                        .map(|s| s.iter().map(|v| rank[v]).collect())
                        .collect(),
                }
            }
            Backend::Rigidified { nerve, spaces } => canonical_of_word(
                &nerve.category,
                &ParenWord::from_hom(nerve, &spaces[x][y].hom_of_ref(r)),
            ),
            Backend::Discrete { cat, homs } => {
                let n = r.dim();
                let m = cat
                    .mor_by_label(homs[x][y].label_of(r.id))
                    .expect("hom vertex names a morphism");
                if cat.is_identity(m) {
                    CanonicalSimplex {
                        src: self.objects[x].clone(),
                        tgt: self.objects[y].clone(),
                        word: Vec::new(),
                        flag: vec![BTreeSet::from([0]); n + 1],
                    }
                } else {
                    CanonicalSimplex {
                        src: self.objects[x].clone(),
                        tgt: self.objects[y].clone(),
                        word: vec![cat.mor_label(m).to_string()],
                        flag: vec![BTreeSet::from([0, 1]); n + 1],
                    }
                }
            }
        }
    }

    /// Serializable snapshot: every hom-space plus the composition tables
    /// up to `table_dim`.
    pub fn export(&self, table_dim: usize) -> SimpCatDoc {
        let nobj = self.object_count();
        let mut homs = Vec::new();
        let mut composition = Vec::new();
        for x in 0..nobj {
            for y in 0..nobj {
                homs.push(HomDoc {
                    src: self.objects[x].clone(),
                    tgt: self.objects[y].clone(),
                    space: sset_to_doc(self.hom(x, y)),
                });
            }
        }
        for x in 0..nobj {
            for y in 0..nobj {
                for z in 0..nobj {
                    for dim in 0..=table_dim.min(self.dim_cap) {
                        let fs = self.hom(x, y).all_simplices(dim);
                        let gs = self.hom(y, z).all_simplices(dim);
                        if fs.is_empty() || gs.is_empty() {
                            continue;
                        }
                        let mut entries = Vec::new();
                        for f in &fs {
                            for g in &gs {
                                entries.push(CompositionEntry {
                                    f: self.hom(x, y).describe(f),
                                    g: self.hom(y, z).describe(g),
                                    composite: self
                                        .compose(x, y, z, g, f)
                                        .map(|c| self.hom(x, z).describe(&c)),
                                });
                            }
                        }
                        composition.push(CompositionDoc {
                            src: self.objects[x].clone(),
                            mid: self.objects[y].clone(),
                            tgt: self.objects[z].clone(),
                            dim,
                            entries,
                        });
                    }
                }
            }
        }
        SimpCatDoc {
            objects: self.objects.clone(),
            dim_cap: self.dim_cap,
            size_cap: (self.size_cap != usize::MAX).then_some(self.size_cap),
            homs,
            composition,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SimpCatDoc {
    pub objects: Vec<String>,
    pub dim_cap: usize,
    pub size_cap: Option<usize>,
    pub homs: Vec<HomDoc>,
    pub composition: Vec<CompositionDoc>,
}

#[derive(Debug, Serialize)]
pub struct HomDoc {
    pub src: String,
    pub tgt: String,
    pub space: SSetDoc,
}

#[derive(Debug, Serialize)]
pub struct CompositionDoc {
    pub src: String,
    pub mid: String,
    pub tgt: String,
    pub dim: usize,
    pub entries: Vec<CompositionEntry>,
}

#[derive(Debug, Serialize)]
pub struct CompositionEntry {
    pub f: String,
    pub g: String,
    pub composite: Option<String>,
}

/// Strictly refining chains of `k` boundary sets over a word of length
/// `p`, each strictly coarser than the one-letter decomposition, in a
/// fixed deterministic order.
fn level_chains(p: usize, k: usize) -> Vec<Vec<BTreeSet<usize>>> {
    fn set_of(mask: u64, p: usize) -> BTreeSet<usize> {
        let mut s = BTreeSet::from([0, p]);
        for b in 0..p.saturating_sub(1) {
            if mask >> b & 1 == 1 {
                s.insert(b + 1);
            }
        }
        s
    }
    fn rec(
        depth: usize,
        k: usize,
        full: u64,
        p: usize,
        stack: &mut Vec<u64>,
        out: &mut Vec<Vec<BTreeSet<usize>>>,
    ) {
        if depth == k {
            out.push(stack.iter().map(|&m| set_of(m, p)).collect());
            return;
        }
        for mask in 0..full {
            let ok = match stack.last() {
                None => true,
                Some(&prev) => mask & prev == prev && mask != prev,
            };
            if ok {
                stack.push(mask);
                rec(depth + 1, k, full, p, stack, out);
                stack.pop();
            }
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    let interior = p.saturating_sub(1);
    assert!(interior < 63, "word too long to enumerate nesting levels");
    let full = (1u64 << interior) - 1;
    let mut out = Vec::new();
    rec(0, k, full, p, &mut Vec::new(), &mut out);
    out
}

/// One assembled hom-space: the complex, its words by dimension, and
/// the word-to-cell index.
type PairAssembly = (FinSSet, Vec<Vec<ParenWord>>, HashMap<ParenWord, NondegId>);

fn assemble_pair(
    cat: &FinCategory,
    src: usize,
    words: &[Vec<MorId>],
    dim_cap: usize,
) -> Result<PairAssembly, ResolutionError> {
    let mut sset = FinSSet::new(dim_cap);
    let mut by_dim: Vec<Vec<ParenWord>> = vec![Vec::new(); dim_cap + 1];
    let mut lookup: HashMap<ParenWord, NondegId> = HashMap::new();
    for k in 0..=dim_cap {
        for word in words {
            for levels in level_chains(word.len(), k) {
                let w = ParenWord {
                    src,
                    morphisms: word.clone(),
                    levels,
                };
                let label = w.render(cat);
                let id = if k == 0 {
                    sset.add_vertex(label)?
                } else {
                    let faces = (0..=k)
                        .map(|i| {
                            let (dword, base) = w.face(cat, i).ez();
                            let fid = lookup
                                .get(&base)
                                .copied()
                                .expect("face was assembled in a lower pass");
                            SimplexRef {
                                word: dword,
                                id: fid,
                            }
                        })
                        .collect();
                    sset.add_simplex(k, label, faces)?
                };
                by_dim[k].push(w.clone());
                lookup.insert(w, id);
            }
        }
    }
    Ok((sset, by_dim, lookup))
}

/// The free resolution of a category. Hom `(x, y)` has a vertex for
/// every composable word of non-identity morphisms from `x` to `y` of
/// length at most `size_cap`, an `n`-simplex for every strictly refining
/// chain of `n` nesting levels over such a word, inner faces forgetting
/// a level and the top face composing innermost blocks. `dim_cap`
/// truncates simplex dimensions; the length cap keeps categories with
/// cycles finite, with the same meaning as the size cap on nerve
/// hom-spaces.
pub fn free_resolution(
    cat: &FinCategory,
    dim_cap: usize,
    size_cap: usize,
) -> Result<SimpCategory, ResolutionError> {
    cat.validate()?;
    let nobj = cat.object_count();
    let non_id: Vec<MorId> = cat.morphism_ids().filter(|&m| !cat.is_identity(m)).collect();
    let mut pair_words: Vec<Vec<Vec<Vec<MorId>>>> = vec![vec![Vec::new(); nobj]; nobj];
    let mut frontier: Vec<(usize, usize, Vec<MorId>)> =
        (0..nobj).map(|x| (x, x, Vec::new())).collect();
    for (x, y, w) in &frontier {
        pair_words[*x][*y].push(w.clone());
    }
    for _ in 1..=size_cap {
        let mut next = Vec::new();
        for (x, at, w) in &frontier {
            for &m in &non_id {
                if cat.src(m) != *at {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(m);
                pair_words[*x][cat.tgt(m)].push(w2.clone());
                next.push((*x, cat.tgt(m), w2));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    let mut homs = Vec::with_capacity(nobj);
    let mut words = Vec::with_capacity(nobj);
    let mut lookup = Vec::with_capacity(nobj);
    for x in 0..nobj {
        let mut row_h = Vec::new();
        let mut row_w = Vec::new();
        let mut row_l = Vec::new();
        for y in 0..nobj {
            let (sset, wlist, lmap) = assemble_pair(cat, x, &pair_words[x][y], dim_cap)?;
            row_h.push(sset);
            row_w.push(wlist);
            row_l.push(lmap);
        }
        homs.push(row_h);
        words.push(row_w);
        lookup.push(row_l);
    }
    Ok(SimpCategory {
        objects: cat.object_labels().map(str::to_string).collect(),
        dim_cap,
        size_cap,
        backend: Backend::Resolution {
            cat: cat.clone(),
            homs,
            words,
            lookup,
        },
    })
}

fn interval_hom(i: usize, j: usize, dim_cap: usize) -> IntervalHom {
    let interior: Vec<usize> = (i + 1..j).collect();
    let mut subsets: Vec<BTreeSet<usize>> = (0..1u64 << interior.len())
        .map(|mask| {
            let mut s = BTreeSet::from([i, j]);
            for (b, &v) in interior.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s.insert(v);
                }
            }
            s
        })
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    let labels: Vec<String> = subsets
        .iter()
        .map(|s| {
            s.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("-")
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..subsets.len())
        .flat_map(|a| (0..subsets.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && subsets[a].is_subset(&subsets[b]))
        .collect();
    let cat = FinCategory::from_poset(&labels, |a, b| subsets[a].is_subset(&subsets[b]), &pairs)
        .expect("subset poset is a valid category");
    let nerve = cat.nerve(dim_cap).expect("poset nerve");
    let index = subsets
        .iter()
        .cloned()
        .enumerate()
        .map(|(idx, s)| (s, idx))
        .collect();
    let mor = pairs
        .iter()
        .map(|&(a, b)| {
            let label = format!("{}<{}", labels[a], labels[b]);
            ((a, b), cat.mor_by_label(&label).expect("poset morphism"))
        })
        .collect();
    IntervalHom {
        subsets,
        index,
        mor,
        nerve,
    }
}

/// The simplicial category of the total order `0 < 1 < ... < n` in its
/// subset-interval presentation: hom `(i, j)` is the nerve of the poset
/// of subsets of `{i..=j}` containing both endpoints, a cube of dimension
/// `j - i - 1`, and composition is union of vertex subsets.
pub fn rigid_delta(n: usize) -> SimpCategory {
    let dim_cap = 2usize.max(n.saturating_sub(1));
    let mut cells: Vec<Vec<Option<IntervalHom>>> = Vec::new();
    for i in 0..=n {
        let mut row = Vec::new();
        for j in 0..=n {
            row.push((i <= j).then(|| interval_hom(i, j, dim_cap)));
        }
        cells.push(row);
    }
    SimpCategory {
        objects: (0..=n).map(|i| i.to_string()).collect(),
        dim_cap,
        size_cap: usize::MAX,
        backend: Backend::Interval {
            cells,
            empty: FinSSet::new(dim_cap),
        },
    }
}

/// Hom-spaces of the nerve of `cat`, packaged as a simplicial category
/// composing by necklace concatenation.
pub fn rigidify_nerve(
    cat: &FinCategory,
    dim_cap: usize,
    size_cap: usize,
) -> Result<SimpCategory, ResolutionError> {
    cat.validate()?;
    let nerve = cat.nerve(size_cap.max(1))?;
    let nobj = cat.object_count();
    let spaces: Vec<Vec<HomSpace>> = (0..nobj)
        .map(|x| {
            (0..nobj)
                .map(|y| hom_space(&nerve.complex, x, y, dim_cap, size_cap))
                .collect()
        })
        .collect();
    Ok(SimpCategory {
        objects: cat.object_labels().map(str::to_string).collect(),
        dim_cap,
        size_cap,
        backend: Backend::Rigidified { nerve, spaces },
    })
}

/// The discrete enrichment of a category: each hom is the constant
/// simplicial set on the morphism set, identities included.
pub fn discrete(cat: &FinCategory) -> Result<SimpCategory, ResolutionError> {
    cat.validate()?;
    let nobj = cat.object_count();
    let mut homs = Vec::new();
    for x in 0..nobj {
        let mut row = Vec::new();
        for y in 0..nobj {
            let mut sset = FinSSet::new(2);
            for m in cat.morphism_ids() {
                if cat.src(m) == x && cat.tgt(m) == y {
                    sset.add_vertex(cat.mor_label(m))?;
                }
            }
            row.push(sset);
        }
        homs.push(row);
    }
    Ok(SimpCategory {
        objects: cat.object_labels().map(str::to_string).collect(),
        dim_cap: 2,
        size_cap: usize::MAX,
        backend: Backend::Discrete {
            cat: cat.clone(),
            homs,
        },
    })
}

/// A verified isomorphism of simplicial categories: matching object
/// lists, a dimensionwise bijection of hom-simplices through their
/// canonical forms, and commutation with faces, degeneracies, units, and
/// composition.
#[derive(Debug, Serialize)]
pub struct IsoWitness {
    pub pairs: Vec<PairReport>,
    pub unit_checks: usize,
    pub face_checks: usize,
    pub degeneracy_checks: usize,
    pub composition_checks: usize,
    /// Composable pairs where both sides put the composite outside caps.
    pub composition_skipped: usize,
    /// True when some composition block exceeded the budget and was
    /// stride-sampled instead of checked exhaustively.
    pub composition_sampled: bool,
    pub table: Vec<TableRow>,
}

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub src: String,
    pub tgt: String,
    pub nondeg_by_dim: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub dim: usize,
    pub left: String,
    pub right: String,
    pub form: String,
}

#[derive(Debug, Error)]
pub enum IsoFailure {
    #[error("object lists differ: {left:?} vs {right:?}")]
    ObjectMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("dimension cap {requested} exceeds a side's materialized cap {cap}")]
    CapTooHigh { requested: usize, cap: usize },
    #[error("hom({src},{tgt}) has {left} vs {right} nondegenerate {dim}-simplices")]
    CountMismatch {
        src: String,
        tgt: String,
        dim: usize,
        left: usize,
        right: usize,
    },
    #[error("hom({src},{tgt}) dimension {dim}: the {side} side repeats the form {form}")]
    DuplicateForm {
        src: String,
        tgt: String,
        dim: usize,
        side: &'static str,
        form: String,
    },
    #[error("hom({src},{tgt}) dimension {dim}: no counterpart for {form}")]
    MissingCounterpart {
        src: String,
        tgt: String,
        dim: usize,
        form: String,
    },
    #[error("face {face} of `{label}` in hom({src},{tgt}) does not commute with the matching")]
    FaceMismatch {
        src: String,
        tgt: String,
        label: String,
        face: usize,
    },
    #[error("degeneracy {deg} of `{label}` in hom({src},{tgt}) does not commute with the matching")]
    DegeneracyMismatch {
        src: String,
        tgt: String,
        label: String,
        deg: usize,
    },
    #[error("identity vertices at `{object}` have different forms")]
    UnitMismatch { object: String },
    #[error("composition over ({x},{y},{z}) at dimension {dim} disagrees at (`{f}`, `{g}`): {detail}")]
    CompositionMismatch {
        x: String,
        y: String,
        z: String,
        dim: usize,
        f: String,
        g: String,
        detail: String,
    },
}

/// Check that two simplicial categories are isomorphic up to `dim_cap`
/// by matching canonical forms. Composition blocks larger than
/// `comp_budget` pairs are stride-sampled deterministically; everything
/// else is exhaustive.
pub fn iso_check(
    left: &SimpCategory,
    right: &SimpCategory,
    dim_cap: usize,
    comp_budget: usize,
) -> Result<IsoWitness, Box<IsoFailure>> {
    if left.objects != right.objects {
        return Err(Box::new(IsoFailure::ObjectMismatch {
            left: left.objects.clone(),
            right: right.objects.clone(),
        }));
    }
    for cap in [left.dim_cap, right.dim_cap] {
        if dim_cap > cap {
            return Err(Box::new(IsoFailure::CapTooHigh {
                requested: dim_cap,
                cap,
            }));
        }
    }
    let nobj = left.object_count();
    let mut witness = IsoWitness {
        pairs: Vec::new(),
        unit_checks: 0,
        face_checks: 0,
        degeneracy_checks: 0,
        composition_checks: 0,
        composition_skipped: 0,
        composition_sampled: false,
        table: Vec::new(),
    };
    let mut phi: Vec<Vec<Vec<Vec<NondegId>>>> = vec![vec![Vec::new(); nobj]; nobj];

    for x in 0..nobj {
        for y in 0..nobj {
            let lh = left.hom(x, y);
            let rh = right.hom(x, y);
            let mut by_dim = Vec::new();
            for d in 0..=dim_cap {
                let (lc, rc) = (lh.nondeg_count(d), rh.nondeg_count(d));
                if lc != rc {
                    return Err(Box::new(IsoFailure::CountMismatch {
                        src: left.objects[x].clone(),
                        tgt: left.objects[y].clone(),
                        dim: d,
                        left: lc,
                        right: rc,
                    }));
                }
                let mut rmap: HashMap<CanonicalSimplex, NondegId> = HashMap::with_capacity(rc);
                for idx in 0..rc {
                    let id = NondegId { dim: d, idx };
                    let form = right.canonical(x, y, &SimplexRef::nondeg(id));
                    if rmap.insert(form.clone(), id).is_some() {
                        return Err(Box::new(IsoFailure::DuplicateForm {
                            src: left.objects[x].clone(),
                            tgt: left.objects[y].clone(),
                            dim: d,
                            side: "right",
                            form: form.to_string(),
                        }));
                    }
                }
                let mut level_map = Vec::with_capacity(lc);
                let mut used = vec![false; rc];
                for idx in 0..lc {
                    let id = NondegId { dim: d, idx };
                    let form = left.canonical(x, y, &SimplexRef::nondeg(id));
                    let Some(&rid) = rmap.get(&form) else {
                        return Err(Box::new(IsoFailure::MissingCounterpart {
                            src: left.objects[x].clone(),
                            tgt: left.objects[y].clone(),
                            dim: d,
                            form: form.to_string(),
                        }));
                    };
                    if std::mem::replace(&mut used[rid.idx], true) {
                        return Err(Box::new(IsoFailure::DuplicateForm {
                            src: left.objects[x].clone(),
                            tgt: left.objects[y].clone(),
                            dim: d,
                            side: "left",
                            form: form.to_string(),
                        }));
                    }
                    witness.table.push(TableRow {
                        dim: d,
                        left: lh.label_of(id).to_string(),
                        right: rh.label_of(rid).to_string(),
                        form: form.to_string(),
                    });
                    level_map.push(rid);
                }
                phi[x][y].push(level_map);
                by_dim.push(lc);
            }
            witness.pairs.push(PairReport {
                src: left.objects[x].clone(),
                tgt: left.objects[y].clone(),
                nondeg_by_dim: by_dim,
            });
        }
    }

    let transport = |x: usize, y: usize, r: &SimplexRef| SimplexRef {
        word: r.word.clone(),
        id: phi[x][y][r.id.dim][r.id.idx],
    };

    for x in 0..nobj {
        for y in 0..nobj {
            let lh = left.hom(x, y);
            let rh = right.hom(x, y);
            for d in 0..=dim_cap {
                for idx in 0..lh.nondeg_count(d) {
                    let lref = SimplexRef::nondeg(NondegId { dim: d, idx });
                    let rref = transport(x, y, &lref);
                    for i in 0..=d {
                        if d >= 1 {
                            let lf = lh.face(&lref, i);
                            let rf = rh.face(&rref, i);
                            if left.canonical(x, y, &lf) != right.canonical(x, y, &rf) {
                                return Err(Box::new(IsoFailure::FaceMismatch {
                                    src: left.objects[x].clone(),
                                    tgt: left.objects[y].clone(),
                                    label: lh.label_of(lref.id).to_string(),
                                    face: i,
                                }));
                            }
                            witness.face_checks += 1;
                        }
                        if d < dim_cap {
                            let ls = lh.degeneracy(&lref, i);
                            let rs = rh.degeneracy(&rref, i);
                            if left.canonical(x, y, &ls) != right.canonical(x, y, &rs) {
                                return Err(Box::new(IsoFailure::DegeneracyMismatch {
                                    src: left.objects[x].clone(),
                                    tgt: left.objects[y].clone(),
                                    label: lh.label_of(lref.id).to_string(),
                                    deg: i,
                                }));
                            }
                            witness.degeneracy_checks += 1;
                        }
                    }
                }
            }
        }
    }

    for x in 0..nobj {
        if left.canonical(x, x, &left.unit(x)) != right.canonical(x, x, &right.unit(x)) {
            return Err(Box::new(IsoFailure::UnitMismatch {
                object: left.objects[x].clone(),
            }));
        }
        witness.unit_checks += 1;
    }

    for x in 0..nobj {
        for y in 0..nobj {
            for z in 0..nobj {
                for d in 0..=dim_cap {
                    let fs = left.hom(x, y).all_simplices(d);
                    let gs = left.hom(y, z).all_simplices(d);
                    let total = fs.len().saturating_mul(gs.len());
                    if total == 0 {
                        continue;
                    }
                    let step = if total <= comp_budget {
                        1
                    } else {
                        witness.composition_sampled = true;
                        total / comp_budget + 1
                    };
                    let mut t = 0;
                    while t < total {
                        let f = &fs[t / gs.len()];
                        let g = &gs[t % gs.len()];
                        let lc = left.compose(x, y, z, g, f);
                        let rc = right.compose(x, y, z, &transport(y, z, g), &transport(x, y, f));
                        match (lc, rc) {
                            (None, None) => witness.composition_skipped += 1,
                            (Some(a), Some(b)) => {
                                if left.canonical(x, z, &a) != right.canonical(x, z, &b) {
                                    return Err(Box::new(IsoFailure::CompositionMismatch {
                                        x: left.objects[x].clone(),
                                        y: left.objects[y].clone(),
                                        z: left.objects[z].clone(),
                                        dim: d,
                                        f: left.hom(x, y).describe(f),
                                        g: left.hom(y, z).describe(g),
                                        detail: "the composites have different forms".into(),
                                    }));
                                }
                                witness.composition_checks += 1;
                            }
                            (l, _) => {
                                let detail = if l.is_some() {
                                    "only the left side has the composite"
                                } else {
                                    "only the right side has the composite"
                                };
                                return Err(Box::new(IsoFailure::CompositionMismatch {
                                    x: left.objects[x].clone(),
                                    y: left.objects[y].clone(),
                                    z: left.objects[z].clone(),
                                    dim: d,
                                    f: left.hom(x, y).describe(f),
                                    g: left.hom(y, z).describe(g),
                                    detail: detail.into(),
                                }));
                            }
                        }
                        t += step;
                    }
                }
            }
        }
    }
    Ok(witness)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HcError {
    #[error("the coherent nerve is assembled only up to dimension 3, got {0}")]
    CapTooHigh(usize),
    #[error("hom-spaces must be materialized at least to dimension 2, got cap {0}")]
    HomCapTooLow(usize),
    #[error("tuple enumeration exceeded the budget of {0}")]
    Budget(usize),
    #[error("assembly failed: {0}")]
    Assembly(String),
}

fn vref(idx: usize) -> SimplexRef {
    SimplexRef::nondeg(NondegId { dim: 0, idx })
}

fn fresh_label(hc: &FinSSet, dim: usize, base: String, richer: String) -> String {
    if hc.find(dim, &base).is_none() {
        return base;
    }
    let mut label = richer;
    while hc.find(dim, &label).is_some() {
        label.push('\'');
    }
    label
}

#[allow(clippy::too_many_arguments)]
fn two_cell_ref(
    c: &SimpCategory,
    hc: &FinSSet,
    edge: &HashMap<(usize, usize, usize), SimplexRef>,
    tri: &HashMap<(usize, usize, usize, usize, usize, SimplexRef), SimplexRef>,
    units: &[SimplexRef],
    x0: usize,
    x1: usize,
    x2: usize,
    f01: usize,
    f12: usize,
    h: &SimplexRef,
) -> SimplexRef {
    let h02 = c.hom(x0, x2);
    if x0 == x1 && units[x0].id.idx == f01 && *h == h02.degeneracy(&vref(f12), 0) {
        return hc.degeneracy(&edge[&(x1, x2, f12)], 0);
    }
    if x1 == x2 && units[x1].id.idx == f12 && *h == h02.degeneracy(&vref(f01), 0) {
        return hc.degeneracy(&edge[&(x0, x1, f01)], 1);
    }
    tri[&(x0, x1, x2, f01, f12, h.clone())].clone()
}

#[allow(clippy::too_many_arguments)]
fn degenerate_three_datum(
    c: &SimpCategory,
    units: &[SimplexRef],
    x: [usize; 4],
    f: [usize; 3],
    h02: &SimplexRef,
    h13: &SimplexRef,
    t1: &SimplexRef,
    t2: &SimplexRef,
) -> bool {
    let s0v = |a: usize, b: usize, v: usize| c.hom(a, b).degeneracy(&vref(v), 0);
    let h03 = c.hom(x[0], x[3]);
    if x[0] == x[1]
        && units[x[0]].id.idx == f[0]
        && *h02 == s0v(x[0], x[2], f[1])
        && *t1 == h03.degeneracy(h13, 0)
        && *t2 == h03.degeneracy(h13, 1)
    {
        return true;
    }
    if x[1] == x[2]
        && units[x[1]].id.idx == f[1]
        && *h02 == s0v(x[0], x[2], f[0])
        && *h13 == s0v(x[1], x[3], f[2])
        && t1 == t2
        && *t1 == h03.degeneracy(&h03.face(t1, 2), 1)
    {
        return true;
    }
    if x[2] == x[3]
        && units[x[2]].id.idx == f[2]
        && *h13 == s0v(x[1], x[3], f[1])
        && *t1 == h03.degeneracy(h02, 1)
        && *t2 == h03.degeneracy(h02, 0)
    {
        return true;
    }
    false
}

/// The coherent nerve of a simplicial category, assembled up to
/// dimension 3.
///
/// Vertices are objects. Edges are hom-vertices, with identity vertices
/// collapsing onto degenerate edges. A 2-simplex is a composable pair of
/// edges together with a hom-edge from a chosen long composite to the
/// pointwise one. A 3-simplex fills the square of composites: two
/// hom-triangles with a common diagonal whose outer edges are whiskered
/// interpolants. `budget` caps the number of candidate tuples inspected;
/// `n_cap` may be at most 3.
pub fn hc_nerve(c: &SimpCategory, n_cap: usize, budget: usize) -> Result<FinSSet, HcError> {
    if n_cap > 3 {
        return Err(HcError::CapTooHigh(n_cap));
    }
    if n_cap >= 2 && c.dim_cap < 2 {
        return Err(HcError::HomCapTooLow(c.dim_cap));
    }
    let err = |e: SsetError| HcError::Assembly(e.to_string());
    let nobj = c.object_count();
    let units: Vec<SimplexRef> = (0..nobj).map(|x| c.unit(x)).collect();
    let mut hc = FinSSet::new(n_cap);
    let mut spent = 0usize;

    for x in 0..nobj {
        hc.add_vertex(c.object_label(x)).map_err(err)?;
    }
    if n_cap == 0 {
        return Ok(hc);
    }

    let mut edge: HashMap<(usize, usize, usize), SimplexRef> = HashMap::new();
    for x in 0..nobj {
        for y in 0..nobj {
            let h = c.hom(x, y);
            for v in 0..h.nondeg_count(0) {
                if x == y && units[x].id.idx == v {
                    let unit_edge = hc.degeneracy(&vref(x), 0);
                    edge.insert((x, y, v), unit_edge);
                    continue;
                }
                let base = h.label_of(NondegId { dim: 0, idx: v }).to_string();
                let label = fresh_label(&hc, 1, base.clone(), format!("{base}[{x}>{y}]"));
                let id = hc
                    .add_simplex(1, label, vec![vref(y), vref(x)])
                    .map_err(err)?;
                edge.insert((x, y, v), SimplexRef::nondeg(id));
            }
        }
    }
    if n_cap == 1 {
        return Ok(hc);
    }

    let mut tri: HashMap<(usize, usize, usize, usize, usize, SimplexRef), SimplexRef> =
        HashMap::new();
    for x0 in 0..nobj {
        for x1 in 0..nobj {
            for x2 in 0..nobj {
                let h01 = c.hom(x0, x1);
                let h12 = c.hom(x1, x2);
                let h02 = c.hom(x0, x2);
                let hedges = h02.all_simplices(1);
                for f01 in 0..h01.nondeg_count(0) {
                    for f12 in 0..h12.nondeg_count(0) {
                        spent += hedges.len().max(1);
                        if spent > budget {
                            return Err(HcError::Budget(budget));
                        }
                        let Some(comp) = c.compose(x0, x1, x2, &vref(f12), &vref(f01)) else {
                            continue;
                        };
                        for h in &hedges {
                            if h02.vertex_at(h, 1) != comp.id.idx {
                                continue;
                            }
                            let s0_f12 = x0 == x1
                                && units[x0].id.idx == f01
                                && *h == h02.degeneracy(&vref(f12), 0);
                            let s1_f01 = x1 == x2
                                && units[x1].id.idx == f12
                                && *h == h02.degeneracy(&vref(f01), 0);
                            if s0_f12 || s1_f01 {
                                continue;
                            }
                            let d0 = edge[&(x1, x2, f12)].clone();
                            let d1 = edge[&(x0, x2, h02.vertex_at(h, 0))].clone();
                            let d2 = edge[&(x0, x1, f01)].clone();
                            let mut base = format!(
                                "{}|{}",
                                h01.label_of(NondegId { dim: 0, idx: f01 }),
                                h12.label_of(NondegId { dim: 0, idx: f12 })
                            );
                            if h.is_nondegenerate() {
                                base = format!("{base}~{}", h02.label_of(h.id));
                            }
                            let label =
                                fresh_label(&hc, 2, base.clone(), format!("{base}[{x0}>{x1}>{x2}]"));
                            let id = hc.add_simplex(2, label, vec![d0, d1, d2]).map_err(err)?;
                            tri.insert((x0, x1, x2, f01, f12, h.clone()), SimplexRef::nondeg(id));
                        }
                    }
                }
            }
        }
    }
    if n_cap == 2 {
        return Ok(hc);
    }

    for x0 in 0..nobj {
        for x1 in 0..nobj {
            for x2 in 0..nobj {
                for x3 in 0..nobj {
                    let h01 = c.hom(x0, x1);
                    let h12 = c.hom(x1, x2);
                    let h23 = c.hom(x2, x3);
                    let h02 = c.hom(x0, x2);
                    let h13 = c.hom(x1, x3);
                    let h03 = c.hom(x0, x3);
                    let e02 = h02.all_simplices(1);
                    let e13 = h13.all_simplices(1);
                    let t03 = h03.all_simplices(2);
                    for f01 in 0..h01.nondeg_count(0) {
                        for f12 in 0..h12.nondeg_count(0) {
                            for f23 in 0..h23.nondeg_count(0) {
                                spent += 1;
                                if spent > budget {
                                    return Err(HcError::Budget(budget));
                                }
                                let Some(c01) = c.compose(x0, x1, x2, &vref(f12), &vref(f01))
                                else {
                                    continue;
                                };
                                let Some(c12) = c.compose(x1, x2, x3, &vref(f23), &vref(f12))
                                else {
                                    continue;
                                };
                                let s0_f01 = h01.degeneracy(&vref(f01), 0);
                                let s0_f23 = h23.degeneracy(&vref(f23), 0);
                                for h02v in &e02 {
                                    if h02.vertex_at(h02v, 1) != c01.id.idx {
                                        continue;
                                    }
                                    let Some(e2) = c.compose(x0, x2, x3, &s0_f23, h02v) else {
                                        continue;
                                    };
                                    for h13v in &e13 {
                                        spent += 1;
                                        if spent > budget {
                                            return Err(HcError::Budget(budget));
                                        }
                                        if h13.vertex_at(h13v, 1) != c12.id.idx {
                                            continue;
                                        }
                                        let Some(e1) = c.compose(x0, x1, x3, h13v, &s0_f01)
                                        else {
                                            continue;
                                        };
                                        for t1 in &t03 {
                                            if h03.face(t1, 0) != e1 {
                                                continue;
                                            }
                                            let diag = h03.face(t1, 1);
                                            for t2 in &t03 {
                                                spent += 1;
                                                if spent > budget {
                                                    return Err(HcError::Budget(budget));
                                                }
                                                if h03.face(t2, 0) != e2
                                                    || h03.face(t2, 1) != diag
                                                {
                                                    continue;
                                                }
                                                if degenerate_three_datum(
                                                    c,
                                                    &units,
                                                    [x0, x1, x2, x3],
                                                    [f01, f12, f23],
                                                    h02v,
                                                    h13v,
                                                    t1,
                                                    t2,
                                                ) {
                                                    continue;
                                                }
                                                let faces = vec![
                                                    two_cell_ref(
                                                        c, &hc, &edge, &tri, &units, x1, x2, x3,
                                                        f12, f23, h13v,
                                                    ),
                                                    two_cell_ref(
                                                        c,
                                                        &hc,
                                                        &edge,
                                                        &tri,
                                                        &units,
                                                        x0,
                                                        x2,
                                                        x3,
                                                        h02.vertex_at(h02v, 0),
                                                        f23,
                                                        &h03.face(t2, 2),
                                                    ),
                                                    two_cell_ref(
                                                        c,
                                                        &hc,
                                                        &edge,
                                                        &tri,
                                                        &units,
                                                        x0,
                                                        x1,
                                                        x3,
                                                        f01,
                                                        h13.vertex_at(h13v, 0),
                                                        &h03.face(t1, 2),
                                                    ),
                                                    two_cell_ref(
                                                        c, &hc, &edge, &tri, &units, x0, x1, x2,
                                                        f01, f12, h02v,
                                                    ),
                                                ];
                                                let base = format!(
                                                    "{}|{}|{}",
                                                    h01.label_of(NondegId { dim: 0, idx: f01 }),
                                                    h12.label_of(NondegId { dim: 0, idx: f12 }),
                                                    h23.label_of(NondegId { dim: 0, idx: f23 })
                                                );
                                                let richer = format!(
                                                    "{base}~{}~{}~{}~{}",
                                                    h02.describe(h02v),
                                                    h13.describe(h13v),
                                                    h03.describe(t1),
                                                    h03.describe(t2)
                                                );
                                                let label = fresh_label(&hc, 3, base, richer);
                                                hc.add_simplex(3, label, faces).map_err(err)?;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(hc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{free_five, rs_category};
    use proptest::prelude::*;

    fn bset(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    #[test]
    fn paren_words_validate_and_render() {
        let cat = FinCategory::poset_chain(2);
        let f = cat.mor_by_label("0<1").unwrap();
        let g = cat.mor_by_label("1<2").unwrap();

        let v = ParenWord::new(&cat, 0, vec![f, g], vec![]).unwrap();
        assert_eq!(v.render(&cat), "0<1 1<2");
        assert_eq!(v.tgt(&cat), 2);
        assert!(v.is_nondegenerate());

        let e = ParenWord::new(&cat, 0, vec![f, g], vec![bset(&[0, 2])]).unwrap();
        assert_eq!(e.render(&cat), "(0<1 1<2)");
        assert!(e.is_nondegenerate());

        let id0 = cat.identity_of(0);
        assert_eq!(
            ParenWord::new(&cat, 0, vec![id0], vec![]),
            Err(WordError::IdentityLetter("id_0".into()))
        );
        assert!(matches!(
            ParenWord::new(&cat, 0, vec![g], vec![]),
            Err(WordError::NotComposable(..))
        ));
        assert_eq!(
            ParenWord::new(&cat, 0, vec![f, g], vec![bset(&[0, 1])]),
            Err(WordError::BadLevel(0))
        );
        assert_eq!(
            ParenWord::new(&cat, 0, vec![f, g], vec![bset(&[0, 1, 2]), bset(&[0, 2])]),
            Err(WordError::NotNested)
        );

        let rs = rs_category();
        let x = rs.object_by_label("x").unwrap();
        let s = rs.mor_by_label("s").unwrap();
        let e_loop = rs.mor_by_label("e").unwrap();
        let r = rs.mor_by_label("r").unwrap();
        let w = ParenWord::new(
            &rs,
            x,
            vec![s, e_loop, r],
            vec![bset(&[0, 3]), bset(&[0, 1, 3])],
        )
        .unwrap();
        assert_eq!(w.render(&rs), "((s)(e r))");

        assert_eq!(ParenWord::unit(0, 2).render(&cat), "id_0");
    }

    #[test]
    fn paren_word_faces_compose_blocks() {
        let rs = rs_category();
        let x = rs.object_by_label("x").unwrap();
        let s = rs.mor_by_label("s").unwrap();
        let r = rs.mor_by_label("r").unwrap();

        // The word s r composes to the identity at x, so its top face is
        // the identity vertex.
        let sr = ParenWord::new(&rs, x, vec![s, r], vec![bset(&[0, 2])]).unwrap();
        assert_eq!(sr.face(&rs, 1), ParenWord::unit(x, 0));
        let d0 = sr.face(&rs, 0);
        assert_eq!(d0.dim(), 0);
        assert_eq!(d0.len(), 2);

        // The word s r s composes blockwise to s when the outer level
        // groups everything.
        let srs = ParenWord::new(
            &rs,
            x,
            vec![s, r, s],
            vec![bset(&[0, 3]), bset(&[0, 2, 3])],
        )
        .unwrap();
        let top = srs.face(&rs, 2);
        assert_eq!(top.morphisms(), &[s]);
        assert_eq!(top.levels(), &[bset(&[0, 1])]);

        // ez strips repeated levels back off degeneracies.
        let e = ParenWord::new(&rs, x, vec![s, r], vec![bset(&[0, 2])]).unwrap();
        let deg = e.degeneracy(0);
        assert!(!deg.is_nondegenerate());
        let (word, base) = deg.ez();
        assert_eq!(word.indices(), &[0]);
        assert_eq!(base, e);
    }

    #[test]
    fn resolution_of_the_two_chain_has_the_stated_cells() {
        let cat = FinCategory::poset_chain(2);
        let res = free_resolution(&cat, 2, 2).unwrap();
        let h02 = res.hom(0, 2);
        assert_eq!(h02.nondeg_count(0), 2);
        assert_eq!(h02.nondeg_count(1), 1);
        assert_eq!(h02.all_simplices(1).len(), 3);
        assert!(h02.find(0, "0<2").is_some());
        assert!(h02.find(0, "0<1 1<2").is_some());
        assert!(h02.find(1, "(0<1 1<2)").is_some());
        assert_eq!(res.hom(0, 0).nondeg_count(0), 1);
        assert_eq!(res.hom(0, 1).nondeg_count(0), 1);
        assert_eq!(res.hom(2, 0).nondeg_count(0), 0);
    }

    #[test]
    fn resolution_words_satisfy_the_simplicial_identities() {
        let rs = rs_category();
        let res = free_resolution(&rs, 3, 4).unwrap();
        let Backend::Resolution { cat, words, .. } = &res.backend else {
            unreachable!()
        };
        let mut checked = 0usize;
        for x in 0..2 {
            for y in 0..2 {
                for dim in 0..=3usize {
                    for w in &words[x][y][dim] {
                        if dim >= 2 {
                            for j in 1..=dim {
                                for i in 0..j {
                                    assert_eq!(
                                        w.face(cat, j).face(cat, i),
                                        w.face(cat, i).face(cat, j - 1)
                                    );
                                    checked += 1;
                                }
                            }
                        }
                        for i in 0..=dim {
                            for j in i..=dim {
                                assert_eq!(
                                    w.degeneracy(j).degeneracy(i),
                                    w.degeneracy(i).degeneracy(j + 1)
                                );
                            }
                        }
                        for j in 0..=dim {
                            let sj = w.degeneracy(j);
                            for i in 0..=dim + 1 {
                                let dij = sj.face(cat, i);
                                if i < j {
                                    assert_eq!(dij, w.face(cat, i).degeneracy(j - 1));
                                } else if i == j || i == j + 1 {
                                    assert_eq!(&dij, w);
                                } else {
                                    assert_eq!(dij, w.face(cat, i - 1).degeneracy(j));
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 500, "only {checked} identities checked");
    }

    #[test]
    fn resolution_composition_is_associative_and_unital() {
        let rs = rs_category();
        let res = free_resolution(&rs, 2, 5).unwrap();
        for dim in 0..=1usize {
            for x in 0..2 {
                for y in 0..2 {
                    let fs = res.hom(x, y).all_simplices(dim);
                    let mut u_left = res.unit(x);
                    let mut u_right = res.unit(y);
                    for _ in 0..dim {
                        u_left = res.hom(x, x).degeneracy(&u_left, 0);
                        u_right = res.hom(y, y).degeneracy(&u_right, 0);
                    }
                    for f in &fs {
                        assert_eq!(res.compose(x, y, y, &u_right, f).as_ref(), Some(f));
                        assert_eq!(res.compose(x, x, y, f, &u_left).as_ref(), Some(f));
                    }
                    for z in 0..2 {
                        let gs = res.hom(y, z).all_simplices(dim);
                        for t in 0..2 {
                            let hs = res.hom(z, t).all_simplices(dim);
                            for f in fs.iter().take(10) {
                                for g in gs.iter().take(10) {
                                    for h in hs.iter().take(10) {
                                        let gf = res.compose(x, y, z, g, f);
                                        let hg = res.compose(y, z, t, h, g);
                                        let left =
                                            gf.and_then(|gf| res.compose(x, z, t, h, &gf));
                                        let right =
                                            hg.and_then(|hg| res.compose(x, y, t, &hg, f));
                                        // Composites can fall outside the
                                        // size cap, but both bracketings
                                        // stand or fall together.
                                        assert_eq!(left, right);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interval_homs_are_cubes() {
        let d3 = rigid_delta(3);
        let h03 = d3.hom(0, 3);
        assert_eq!(h03.nondeg_count(0), 4);
        assert_eq!(h03.nondeg_count(1), 5);
        assert_eq!(h03.nondeg_count(2), 2);
        let totals: Vec<usize> = (0..=2).map(|n| h03.count_simplices(n)).collect();
        assert_eq!(totals, vec![4, 9, 16]);
        assert!(h03.find(0, "0-3").is_some());
        assert!(h03.find(0, "0-1-2-3").is_some());
        assert!(h03.find(1, "0-3<0-1-3").is_some());

        let d1 = rigid_delta(1);
        assert_eq!(d1.hom(0, 1).nondeg_count(0), 1);
        assert_eq!(d1.hom(0, 1).nondeg_count(1), 0);
        assert_eq!(d1.hom(1, 0).nondeg_count(0), 0);
        assert_eq!(d1.hom(0, 0).nondeg_count(0), 1);

        let d4 = rigid_delta(4);
        for i in 0..=4 {
            for j in i..=4 {
                let expect = if i == j { 1 } else { 1usize << (j - i - 1) };
                assert_eq!(d4.hom(i, j).nondeg_count(0), expect, "hom({i},{j})");
            }
        }
    }

    #[test]
    fn interval_composition_is_associative_and_unital() {
        let d4 = rigid_delta(4);
        for dim in 0..=1usize {
            for i in 0..=4 {
                for j in i..=4 {
                    let fs = d4.hom(i, j).all_simplices(dim);
                    let mut u_left = d4.unit(i);
                    let mut u_right = d4.unit(j);
                    for _ in 0..dim {
                        u_left = d4.hom(i, i).degeneracy(&u_left, 0);
                        u_right = d4.hom(j, j).degeneracy(&u_right, 0);
                    }
                    for f in &fs {
                        assert_eq!(d4.compose(i, j, j, &u_right, f).as_ref(), Some(f));
                        assert_eq!(d4.compose(i, i, j, f, &u_left).as_ref(), Some(f));
                    }
                    for k in j..=4 {
                        let gs = d4.hom(j, k).all_simplices(dim);
                        for l in k..=4 {
                            let hs = d4.hom(k, l).all_simplices(dim);
                            for f in &fs {
                                for g in &gs {
                                    for h in &hs {
                                        let gf = d4.compose(i, j, k, g, f).unwrap();
                                        let hg = d4.compose(j, k, l, h, g).unwrap();
                                        assert_eq!(
                                            d4.compose(i, k, l, h, &gf),
                                            d4.compose(i, j, l, &hg, f)
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn resolution_matches_the_rigidified_nerve() {
        let chain3 = FinCategory::poset_chain(3);
        let left = free_resolution(&chain3, 3, 3).unwrap();
        let right = rigidify_nerve(&chain3, 3, 3).unwrap();
        let w = iso_check(&left, &right, 3, 100_000).unwrap();
        assert_eq!(w.pairs.len(), 16);
        assert!(w.face_checks > 0);
        assert!(w.degeneracy_checks > 0);
        assert!(w.composition_checks > 0);
        assert_eq!(w.unit_checks, 4);
        assert!(!w.table.is_empty());

        let rs = rs_category();
        let left = free_resolution(&rs, 3, 5).unwrap();
        let right = rigidify_nerve(&rs, 3, 5).unwrap();
        let w = iso_check(&left, &right, 3, 2_000).unwrap();
        assert!(w.composition_checks > 0);
    }

    #[test]
    fn resolution_matches_the_interval_model() {
        for n in 1..=4usize {
            let d = 2usize.max(n.saturating_sub(1));
            let left = free_resolution(&FinCategory::poset_chain(n), d, n).unwrap();
            let w = iso_check(&left, &rigid_delta(n), d, 50_000).unwrap();
            assert!(w.composition_checks > 0, "n = {n}");
        }
    }

    #[test]
    fn iso_check_rejects_mismatches() {
        let rs = rs_category();
        let chain2 = FinCategory::poset_chain(2);
        let chain3 = FinCategory::poset_chain(3);
        let e = iso_check(
            &free_resolution(&chain2, 2, 2).unwrap(),
            &free_resolution(&chain3, 2, 2).unwrap(),
            2,
            100,
        )
        .unwrap_err();
        assert!(matches!(*e, IsoFailure::ObjectMismatch { .. }));

        let e = iso_check(
            &free_resolution(&rs, 2, 3).unwrap(),
            &free_resolution(&rs, 2, 4).unwrap(),
            2,
            10_000,
        )
        .unwrap_err();
        assert!(matches!(*e, IsoFailure::CountMismatch { .. }));

        let e = iso_check(
            &free_resolution(&rs, 2, 3).unwrap(),
            &free_resolution(&rs, 2, 3).unwrap(),
            3,
            100,
        )
        .unwrap_err();
        assert!(matches!(*e, IsoFailure::CapTooHigh { .. }));
    }

    #[test]
    fn resolution_words_agree_with_nerve_hom_spaces() {
        let rs = rs_category();
        let nerve = rs.nerve(4).unwrap();
        let res = free_resolution(&rs, 2, 4).unwrap();
        let Backend::Resolution { words, .. } = &res.backend else {
            unreachable!()
        };
        for x in 0..2 {
            for y in 0..2 {
                let space = hom_space(&nerve.complex, x, y, 2, 4);
                for dim in 0..=2usize {
                    assert_eq!(space.space.nondeg_count(dim), words[x][y][dim].len());
                    for w in &words[x][y][dim] {
                        let h = w.to_hom(&nerve);
                        assert!(space.id_of(&h).is_some(), "missing triple for a word");
                        assert_eq!(ParenWord::from_hom(&nerve, &h), *w);
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_enrichment_nerve_matches_the_category_nerve() {
        for cat in [FinCategory::poset_chain(2), rs_category(), free_five()] {
            let disc = discrete(&cat).unwrap();
            let hc = hc_nerve(&disc, 3, 10_000_000).unwrap();
            let nerve = cat.nerve(3).unwrap();
            for dim in 0..=3usize {
                assert_eq!(
                    hc.nondeg_count(dim),
                    nerve.complex.nondeg_count(dim),
                    "dimension {dim}"
                );
                for id in nerve.complex.nondeg_ids(dim) {
                    let label = nerve.complex.label_of(id);
                    let hid = hc
                        .find(dim, label)
                        .unwrap_or_else(|| panic!("missing `{label}` in dimension {dim}"));
                    if dim > 0 {
                        for i in 0..=dim {
                            assert_eq!(
                                hc.describe(&hc.face(&SimplexRef::nondeg(hid), i)),
                                nerve
                                    .complex
                                    .describe(&nerve.complex.face(&SimplexRef::nondeg(id), i)),
                                "face {i} of `{label}`"
                            );
                        }
                    }
                }
            }
        }
    }

    /// Counts of all coherent-nerve tuples in each dimension, including
    /// the ones that land on degenerate simplices. Reimplements the
    /// defining constraints with no degeneracy detection, so the builder
    /// can be cross-checked by inclusion-exclusion.
    fn hc_tuple_totals(c: &SimpCategory, upto: usize) -> [usize; 4] {
        let nobj = c.object_count();
        let t0 = nobj;
        let mut t1 = 0;
        for x in 0..nobj {
            for y in 0..nobj {
                t1 += c.hom(x, y).nondeg_count(0);
            }
        }
        let mut t2 = 0;
        if upto >= 2 {
            for x0 in 0..nobj {
                for x1 in 0..nobj {
                    for x2 in 0..nobj {
                        let h02 = c.hom(x0, x2);
                        let hedges = h02.all_simplices(1);
                        for f01 in 0..c.hom(x0, x1).nondeg_count(0) {
                            for f12 in 0..c.hom(x1, x2).nondeg_count(0) {
                                let Some(comp) = c.compose(x0, x1, x2, &vref(f12), &vref(f01))
                                else {
                                    continue;
                                };
                                t2 += hedges
                                    .iter()
                                    .filter(|h| h02.vertex_at(h, 1) == comp.id.idx)
                                    .count();
                            }
                        }
                    }
                }
            }
        }
        let mut t3 = 0;
        if upto >= 3 {
            for x0 in 0..nobj {
                for x1 in 0..nobj {
                    for x2 in 0..nobj {
                        for x3 in 0..nobj {
                            let h02 = c.hom(x0, x2);
                            let h13 = c.hom(x1, x3);
                            let h03 = c.hom(x0, x3);
                            let e02 = h02.all_simplices(1);
                            let e13 = h13.all_simplices(1);
                            let t03 = h03.all_simplices(2);
                            for f01 in 0..c.hom(x0, x1).nondeg_count(0) {
                                for f12 in 0..c.hom(x1, x2).nondeg_count(0) {
                                    for f23 in 0..c.hom(x2, x3).nondeg_count(0) {
                                        let Some(c01) =
                                            c.compose(x0, x1, x2, &vref(f12), &vref(f01))
                                        else {
                                            continue;
                                        };
                                        let Some(c12) =
                                            c.compose(x1, x2, x3, &vref(f23), &vref(f12))
                                        else {
                                            continue;
                                        };
                                        let s0_f01 = c.hom(x0, x1).degeneracy(&vref(f01), 0);
                                        let s0_f23 = c.hom(x2, x3).degeneracy(&vref(f23), 0);
                                        for h02v in &e02 {
                                            if h02.vertex_at(h02v, 1) != c01.id.idx {
                                                continue;
                                            }
                                            let Some(e2) =
                                                c.compose(x0, x2, x3, &s0_f23, h02v)
                                            else {
                                                continue;
                                            };
                                            for h13v in &e13 {
                                                if h13.vertex_at(h13v, 1) != c12.id.idx {
                                                    continue;
                                                }
                                                let Some(e1) =
                                                    c.compose(x0, x1, x3, h13v, &s0_f01)
                                                else {
                                                    continue;
                                                };
                                                for t1c in &t03 {
                                                    if h03.face(t1c, 0) != e1 {
                                                        continue;
                                                    }
                                                    let diag = h03.face(t1c, 1);
                                                    t3 += t03
                                                        .iter()
                                                        .filter(|t2c| {
                                                            h03.face(t2c, 0) == e2
                                                                && h03.face(t2c, 1) == diag
                                                        })
                                                        .count();
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        [t0, t1, t2, t3]
    }

    #[test]
    fn coherent_nerve_of_the_one_interval_is_the_one_simplex() {
        let hc = hc_nerve(&rigid_delta(1), 3, 100_000).unwrap();
        assert_eq!(hc.nondeg_count(0), 2);
        assert_eq!(hc.nondeg_count(1), 1);
        assert_eq!(hc.nondeg_count(2), 0);
        assert_eq!(hc.nondeg_count(3), 0);
        let e = hc.find(1, "0-1").unwrap();
        let r = SimplexRef::nondeg(e);
        assert_eq!(hc.vertex_at(&r, 0), 0);
        assert_eq!(hc.vertex_at(&r, 1), 1);
    }

    #[test]
    fn coherent_nerve_of_the_two_interval() {
        let d2 = rigid_delta(2);
        let hc = hc_nerve(&d2, 3, 1_000_000).unwrap();
        assert_eq!(hc.nondeg_count(0), 3);
        assert_eq!(hc.nondeg_count(1), 4);
        assert_eq!(hc.nondeg_count(2), 4);
        let [t0, t1, t2, t3] = hc_tuple_totals(&d2, 3);
        assert_eq!(hc.nondeg_count(2), t2 - (2 * t1 - t0));
        assert_eq!(hc.nondeg_count(3), t3 - (3 * t2 - 3 * t1 + t0));
    }

    #[test]
    fn coherent_nerve_of_the_three_interval() {
        let d3 = rigid_delta(3);
        let hc = hc_nerve(&d3, 3, 10_000_000).unwrap();
        let [t0, t1, t2, t3] = hc_tuple_totals(&d3, 3);
        assert_eq!(hc.nondeg_count(2), t2 - (2 * t1 - t0));
        assert_eq!(hc.nondeg_count(3), t3 - (3 * t2 - 3 * t1 + t0));
        // Three-cells over the strictly ascending quadruple: one choice
        // of square per interpolant pair.
        let on_full = hc
            .nondeg_ids(3)
            .filter(|&id| {
                let r = SimplexRef::nondeg(id);
                (0..=3).map(|m| hc.vertex_at(&r, m)).collect::<Vec<_>>() == vec![0, 1, 2, 3]
            })
            .count();
        assert_eq!(on_full, 9);
    }

    #[test]
    fn coherent_nerve_reports_cap_and_budget_errors() {
        assert_eq!(
            hc_nerve(&rigid_delta(1), 4, 10).unwrap_err(),
            HcError::CapTooHigh(4)
        );
        assert_eq!(
            hc_nerve(&rigid_delta(2), 3, 3).unwrap_err(),
            HcError::Budget(3)
        );
        let thin = free_resolution(&FinCategory::poset_chain(1), 1, 1).unwrap();
        assert_eq!(hc_nerve(&thin, 2, 100).unwrap_err(), HcError::HomCapTooLow(1));
    }

    #[test]
    fn export_serializes_whole_categories() {
        let doc = rigid_delta(2).export(1);
        assert_eq!(doc.objects, ["0", "1", "2"]);
        assert_eq!(doc.homs.len(), 9);
        assert_eq!(doc.size_cap, None);
        assert!(doc.composition.iter().any(|c| !c.entries.is_empty()));
        serde_json::to_string(&doc).unwrap();

        let rdoc = free_resolution(&rs_category(), 2, 3).unwrap().export(0);
        assert_eq!(rdoc.size_cap, Some(3));
        assert!(rdoc
            .composition
            .iter()
            .flat_map(|c| &c.entries)
            .any(|e| e.composite.is_none()));
    }

    proptest! {
        #[test]
        fn degeneracies_normalize_back(seq in proptest::collection::vec(0usize..4, 0..4)) {
            let rs = rs_category();
            let x = rs.object_by_label("x").unwrap();
            let s = rs.mor_by_label("s").unwrap();
            let e = rs.mor_by_label("e").unwrap();
            let r = rs.mor_by_label("r").unwrap();
            let w = ParenWord::new(
                &rs,
                x,
                vec![s, e, r],
                vec![bset(&[0, 3]), bset(&[0, 1, 3])],
            )
            .unwrap();
            let mut cur = w.clone();
            for &i in &seq {
                cur = cur.degeneracy(i.min(cur.dim()));
            }
            let (dword, base) = cur.ez();
            prop_assert_eq!(&base, &w);
            prop_assert_eq!(dword.len(), seq.len());
            let mut again = base;
            for &i in dword.indices().iter().rev() {
                again = again.degeneracy(i);
            }
            prop_assert_eq!(again, cur);
        }
    }
}
