//! Arithmetic of the simplex category: weakly monotone maps between finite
//! ordinals, epi-mono factorization, and normalized degeneracy words.
//!
//! Conventions used throughout the crate:
//!
//! * The ordinal `[n]` is `{0, 1, .., n}` and has size `n + 1`. We index
//!   maps by the dimension `n`, not the size.
//! * [`compose`] is diagrammatic: `compose(f, g)` is "`f` then `g`".
//! * A simplicial set acts on the right: pulling a simplex back along
//!   `compose(f, g)` applies the operator of `g` first, then `f`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("ordinal map must have a nonempty value list")]
    EmptySource,
    #[error("ordinal map values must be weakly increasing, got {0:?}")]
    NotMonotone(Vec<usize>),
    #[error("value {value} out of range for target of size {target_size}")]
    ValueOutOfRange { value: usize, target_size: usize },
    #[error("degeneracy word indices must be strictly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
}

/// A weakly monotone map `[m] -> [n]` between finite ordinals.
///
/// `values[i]` is the image of `i`; the target is `[target_size - 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdinalMap {
    values: Vec<usize>,
    target_size: usize,
}

impl std::fmt::Debug for OrdinalMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}->[{}]", self.values, self.target_dim())
    }
}

impl OrdinalMap {
    pub fn new(values: Vec<usize>, target_size: usize) -> Result<Self, DeltaError> {
        if values.is_empty() {
            return Err(DeltaError::EmptySource);
        }
        if let Some(w) = values.windows(2).find(|w| w[0] > w[1]) {
            let _ = w;
            return Err(DeltaError::NotMonotone(values));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= target_size) {
            return Err(DeltaError::ValueOutOfRange {
                value: v,
                target_size,
            });
        }
        Ok(OrdinalMap {
            values,
            target_size,
        })
    }

    /// Identity on `[n]`.
    pub fn identity(n: usize) -> Self {
        OrdinalMap {
            values: (0..=n).collect(),
            target_size: n + 1,
        }
    }

    /// The coface `d_i : [n-1] -> [n]`, the injection missing `i`.
    ///
    /// Requires `n >= 1` and `i <= n`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface d_{i} undefined into [{n}]");
        let values = (0..=n).filter(|&j| j != i).collect();
        OrdinalMap {
            values,
            target_size: n + 1,
        }
    }

    /// The codegeneracy `s_i : [n+1] -> [n]`, the surjection hitting `i`
    /// twice. Requires `i <= n`.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "codegeneracy s_{i} undefined onto [{n}]");
        let values = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        OrdinalMap {
            values,
            target_size: n + 1,
        }
    }

    /// The vertex inclusion `[0] -> [n]` picking out `v`.
    pub fn vertex(n: usize, v: usize) -> Self {
        assert!(v <= n);
        OrdinalMap {
            values: vec![v],
            target_size: n + 1,
        }
    }

    /// The monotone map `[k] -> [n]` with the given ascending image,
    /// where `k + 1` is the subset size. Requires a strictly increasing
    /// nonempty subset of `{0, .., n}`.
    pub fn inclusion(subset: &[usize], n: usize) -> Self {
        assert!(!subset.is_empty());
        assert!(subset.windows(2).all(|w| w[0] < w[1]), "subset not sorted");
        assert!(*subset.last().unwrap() <= n);
        OrdinalMap {
            values: subset.to_vec(),
            target_size: n + 1,
        }
    }

    /// The constant map `[m] -> [n]` at `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        assert!(v <= n);
        OrdinalMap {
            values: vec![v; m + 1],
            target_size: n + 1,
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn target_dim(&self) -> usize {
        self.target_size - 1
    }

    pub fn is_identity(&self) -> bool {
        self.source_size() == self.target_size && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Injective, i.e. strictly increasing.
    pub fn is_mono(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// Surjective onto the target ordinal.
    pub fn is_epi(&self) -> bool {
        // Monotone, so surjectivity means hitting 0, the top, and never
        // jumping by more than one.
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target_size - 1
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Factor as an epi followed by a mono: returns `(epi, mono)` with
    /// `compose(&epi, &mono) == *self`. The factorization is the unique
    /// one through the image.
    pub fn epi_mono_factor(&self) -> (OrdinalMap, OrdinalMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let epi_values = self
            .values
            .iter()
            .map(|v| image.binary_search(v).unwrap())
            .collect();
        let epi = OrdinalMap {
            values: epi_values,
            target_size: image.len(),
        };
        let mono = OrdinalMap {
            values: image,
            target_size: self.target_size,
        };
        (epi, mono)
    }

    /// Target indices not in the image, in descending order. For a mono,
    /// pulling back along `self` is the same as taking the face at each
    /// returned index in order.
    pub fn missing_indices(&self) -> Vec<usize> {
        let mut present = vec![false; self.target_size];
        for &v in &self.values {
            present[v] = true;
        }
        (0..self.target_size).rev().filter(|&i| !present[i]).collect()
    }
}

impl std::fmt::Display for OrdinalMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")->[{}]", self.target_dim())
    }
}

/// Diagrammatic composition: `f : [a] -> [b]` then `g : [b] -> [c]`.
pub fn compose(f: &OrdinalMap, g: &OrdinalMap) -> OrdinalMap {
    assert_eq!(
        f.target_size,
        g.source_size(),
        "cannot compose {f:?} then {g:?}"
    );
    OrdinalMap {
        values: f.values.iter().map(|&i| g.values[i]).collect(),
        target_size: g.target_size,
    }
}

/// A normalized word of degeneracy operators `s_{i_1} s_{i_2} .. s_{i_p}`
/// with `i_1 > i_2 > .. > i_p`, applied to a simplex rightmost first.
///
/// Every iterated degeneracy has exactly one such normal form, so words
/// compare by equality. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegeneracyWord {
    indices: Vec<usize>,
}

impl std::fmt::Debug for DegeneracyWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "1");
        }
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl DegeneracyWord {
    pub fn empty() -> Self {
        DegeneracyWord { indices: vec![] }
    }

    pub fn new(indices: Vec<usize>) -> Result<Self, DeltaError> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(DeltaError::NotDecreasing(indices));
        }
        Ok(DegeneracyWord { indices })
    }

    /// Bring an arbitrary operator word (leftmost applied last) into
    /// normal form using `s_i s_j = s_{j+1} s_i` for `i <= j`.
    pub fn normalize(raw: &[usize]) -> Self {
        let mut w = raw.to_vec();
        loop {
            let mut changed = false;
            for t in 0..w.len().saturating_sub(1) {
                let (a, b) = (w[t], w[t + 1]);
                if a <= b {
                    w[t] = b + 1;
                    w[t + 1] = a;
                    changed = true;
                }
            }
            if !changed {
                return DegeneracyWord { indices: w };
            }
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The underlying surjection `[m + p] -> [m]` when applied to a
    /// simplex of dimension `m`, with `p` the word length.
    pub fn to_map(&self, base_dim: usize) -> OrdinalMap {
        let p = self.indices.len();
        // Rightmost letter acts first on the simplex, so as ordinal maps
        // the leftmost codegeneracy is applied first.
        let mut map = OrdinalMap::identity(base_dim + p);
        let mut cur_dim = base_dim + p;
        for &i in &self.indices {
            cur_dim -= 1;
            map = compose(&map, &OrdinalMap::codegeneracy(cur_dim, i));
        }
        map
    }

    /// Recover the word of a monotone surjection. Inverse to
    /// [`DegeneracyWord::to_map`].
    pub fn from_surjection(epi: &OrdinalMap) -> Self {
        assert!(epi.is_epi(), "not a surjection: {epi:?}");
        let indices = (0..epi.source_dim())
            .rev()
            .filter(|&i| epi.values[i] == epi.values[i + 1])
            .collect();
        DegeneracyWord { indices }
    }
}

/// All weakly monotone maps `[src_dim] -> [tgt_dim]`, lexicographically
/// ordered. Intended for exhaustive checks at small dimensions.
pub fn all_maps(src_dim: usize, tgt_dim: usize) -> Vec<OrdinalMap> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::with_capacity(src_dim + 1)];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == src_dim + 1 {
            out.push(OrdinalMap {
                values: prefix,
                target_size: tgt_dim + 1,
            });
            continue;
        }
        let lo = prefix.last().copied().unwrap_or(0);
        // Push in reverse so the pop order is lexicographic.
        for v in (lo..=tgt_dim).rev() {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out
}

/// All normalized degeneracy words from dimension `m` up to dimension `n`,
/// i.e. all monotone surjections `[n] -> [m]`.
pub fn words_between(m: usize, n: usize) -> Vec<DegeneracyWord> {
    assert!(m <= n);
    let p = n - m;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(p);
    descending_subsets(n, p, &mut current, &mut out);
    out
}

fn descending_subsets(
    n: usize,
    remaining: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<DegeneracyWord>,
) {
    if remaining == 0 {
        out.push(DegeneracyWord {
            indices: current.clone(),
        });
        return;
    }
    // Next entry must stay below the previous one and leave room for the
    // rest of the strictly decreasing tail.
    let hi = current.last().map(|&x| x - 1).unwrap_or(n - 1);
    for v in (remaining - 1..=hi).rev() {
        current.push(v);
        descending_subsets(n, remaining - 1, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    #[test]
    fn new_rejects_bad_maps() {
        assert!(OrdinalMap::new(vec![], 3).is_err());
        assert!(OrdinalMap::new(vec![1, 0], 3).is_err());
        assert!(OrdinalMap::new(vec![0, 3], 3).is_err());
        assert!(OrdinalMap::new(vec![0, 2], 3).is_ok());
    }

    #[test]
    fn compose_is_diagrammatic() {
        // d_0 : [0] -> [1] then d_2 : [1] -> [2] lands on vertex 1 of the
        // triangle.
        let f = OrdinalMap::coface(1, 0);
        let g = OrdinalMap::coface(2, 2);
        assert_eq!(compose(&f, &g).values(), &[1]);

        // Two collapses compose to the constant map.
        let s0_from2 = OrdinalMap::codegeneracy(1, 0);
        let s0_from1 = OrdinalMap::codegeneracy(0, 0);
        assert_eq!(
            compose(&s0_from2, &s0_from1),
            OrdinalMap::constant(2, 0, 0)
        );
    }

    #[test]
    fn compose_associative_exhaustive() {
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    for f in all_maps(a, b) {
                        for g in all_maps(b, c) {
                            for h in all_maps(c, 2) {
                                assert_eq!(
                                    compose(&compose(&f, &g), &h),
                                    compose(&f, &compose(&g, &h))
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_laws() {
        for f in all_maps(3, 2) {
            assert_eq!(compose(&OrdinalMap::identity(3), &f), f);
            assert_eq!(compose(&f, &OrdinalMap::identity(2)), f);
        }
    }

    #[test]
    fn cosimplicial_identities() {
        // In diagrammatic order: doing d_i then d_j (i < j) equals doing
        // d_{j-1} then d_i, and the familiar mixed relations follow suit.
        for n in 1..=5usize {
            for i in 0..=n {
                for j in 0..=n + 1 {
                    let lhs = compose(&OrdinalMap::coface(n, i), &OrdinalMap::coface(n + 1, j));
                    if i < j {
                        let rhs =
                            compose(&OrdinalMap::coface(n, j - 1), &OrdinalMap::coface(n + 1, i));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        for n in 1..=5usize {
            for i in 0..n {
                for j in 0..n {
                    let lhs = compose(
                        &OrdinalMap::codegeneracy(n, i),
                        &OrdinalMap::codegeneracy(n - 1, j),
                    );
                    if i <= j {
                        let rhs = compose(
                            &OrdinalMap::codegeneracy(n, j + 1),
                            &OrdinalMap::codegeneracy(n - 1, i),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        // Mixed: d_i then s_j.
        for n in 1..=5usize {
            for i in 0..=n {
                for j in 0..n {
                    let lhs = compose(
                        &OrdinalMap::coface(n, i),
                        &OrdinalMap::codegeneracy(n - 1, j),
                    );
                    if i < j {
                        let rhs = compose(
                            &OrdinalMap::codegeneracy(n - 2, j - 1),
                            &OrdinalMap::coface(n - 1, i),
                        );
                        assert_eq!(lhs, rhs);
                    } else if i == j || i == j + 1 {
                        assert!(lhs.is_identity());
                    } else {
                        let rhs = compose(
                            &OrdinalMap::codegeneracy(n - 2, j),
                            &OrdinalMap::coface(n - 1, i - 1),
                        );
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn epi_mono_factor_exhaustive() {
        for a in 0..=4 {
            for b in 0..=4 {
                for f in all_maps(a, b) {
                    let (epi, mono) = f.epi_mono_factor();
                    assert!(epi.is_epi(), "{epi:?} not epi, from {f:?}");
                    assert!(mono.is_mono(), "{mono:?} not mono, from {f:?}");
                    assert_eq!(compose(&epi, &mono), f);
                    // Any other epi-mono factorization through the same
                    // middle ordinal must coincide.
                    if f.is_mono() {
                        assert!(epi.is_identity());
                    }
                    if f.is_epi() {
                        assert!(mono.is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn word_map_roundtrip() {
        for m in 0..=4usize {
            for n in m..=6 {
                let words = words_between(m, n);
                assert_eq!(words.len(), binomial(n, n - m));
                let mut seen = std::collections::HashSet::new();
                for w in &words {
                    let map = w.to_map(m);
                    assert_eq!(map.source_dim(), n);
                    assert_eq!(map.target_dim(), m);
                    assert!(map.is_epi());
                    assert_eq!(&DegeneracyWord::from_surjection(&map), w);
                    assert!(seen.insert(map), "duplicate word {w:?}");
                }
                // Every surjection [n] -> [m] arises from some word.
                let epis = all_maps(n, m).into_iter().filter(|f| f.is_epi()).count();
                assert_eq!(epis, words.len());
            }
        }
    }

    #[test]
    fn from_surjection_examples() {
        let eta = OrdinalMap::new(vec![0, 0, 1], 2).unwrap();
        assert_eq!(DegeneracyWord::from_surjection(&eta).indices(), &[0]);
        let constant = OrdinalMap::constant(2, 0, 0);
        assert_eq!(DegeneracyWord::from_surjection(&constant).indices(), &[1, 0]);
    }

    /// Reference semantics for an arbitrary operator word: compose the
    /// codegeneracies directly, leftmost letter acting first on the
    /// ordinal side.
    fn raw_word_map(raw: &[usize], base_dim: usize) -> OrdinalMap {
        let mut map = OrdinalMap::identity(base_dim + raw.len());
        let mut cur = base_dim + raw.len();
        for &i in raw {
            cur -= 1;
            map = compose(&map, &OrdinalMap::codegeneracy(cur, i));
        }
        map
    }

    #[test]
    fn normalize_agrees_with_map_semantics() {
        // All operator words of length <= 3 over a base dimension <= 3,
        // with only positionally valid letters.
        for base in 0..=3usize {
            let mut raws: Vec<Vec<usize>> = vec![vec![]];
            for len in 1..=3usize {
                let mut level = Vec::new();
                let mut stack: Vec<Vec<usize>> = vec![vec![]];
                while let Some(prefix) = stack.pop() {
                    if prefix.len() == len {
                        level.push(prefix);
                        continue;
                    }
                    // Letter at position t acts on dimension
                    // base + len - 1 - t.
                    let dim_here = base + len - 1 - prefix.len();
                    for i in 0..=dim_here {
                        let mut next = prefix.clone();
                        next.push(i);
                        stack.push(next);
                    }
                }
                raws.extend(level);
            }
            for raw in raws {
                let normal = DegeneracyWord::normalize(&raw);
                assert!(normal
                    .indices()
                    .windows(2)
                    .all(|w| w[0] > w[1]));
                assert_eq!(normal.to_map(base), raw_word_map(&raw, base));
                // Idempotent on already-normal words.
                assert_eq!(DegeneracyWord::normalize(normal.indices()), normal);
            }
        }
    }

    #[test]
    fn missing_indices_order() {
        let v = OrdinalMap::vertex(2, 1);
        assert_eq!(v.missing_indices(), vec![2, 0]);
        let id = OrdinalMap::identity(3);
        assert!(id.missing_indices().is_empty());
    }

    proptest! {
        #[test]
        fn prop_epi_mono_roundtrip(values in proptest::collection::vec(0usize..8, 1..9)) {
            let mut sorted = values.clone();
            sorted.sort_unstable();
            let f = OrdinalMap::new(sorted, 8).unwrap();
            let (epi, mono) = f.epi_mono_factor();
            prop_assert_eq!(compose(&epi, &mono), f);
            let word = DegeneracyWord::from_surjection(&epi);
            prop_assert_eq!(word.to_map(epi.target_dim()), epi);
        }

        #[test]
        fn prop_normalize_stable(raw in proptest::collection::vec(0usize..4, 0..5)) {
            // Shift letters so every position is valid over base 4.
            let base = 4usize;
            let raw: Vec<usize> = raw;
            let ok = raw.iter().enumerate().all(|(t, &i)| i <= base + raw.len() - 1 - t);
            prop_assume!(ok);
            let n1 = DegeneracyWord::normalize(&raw);
            let n2 = DegeneracyWord::normalize(n1.indices());
            prop_assert_eq!(n1, n2);
        }
    }
}
