//! Horn and sphere search: enumerating compatible face tuples and
//! finding the simplices that fill them.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fin_sset::{FinSSet, SimplexRef};

/// A partial boundary for a prospective simplex: prescribed faces by
/// slot, `None` for free slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceAssignment {
    pub dim: usize,
    pub faces: Vec<Option<SimplexRef>>,
}

impl FaceAssignment {
    pub fn sphere(dim: usize, faces: Vec<SimplexRef>) -> Self {
        assert_eq!(faces.len(), dim + 1);
        FaceAssignment {
            dim,
            faces: faces.into_iter().map(Some).collect(),
        }
    }

    pub fn horn(dim: usize, missing: usize, mut faces: Vec<SimplexRef>) -> Self {
        assert_eq!(faces.len(), dim);
        assert!(missing <= dim);
        let mut all: Vec<Option<SimplexRef>> = Vec::with_capacity(dim + 1);
        for i in 0..=dim {
            if i == missing {
                all.push(None);
            } else {
                all.push(Some(faces.remove(0)));
            }
        }
        FaceAssignment { dim, faces: all }
    }

    fn mask(&self) -> u64 {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_some())
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    fn present(&self) -> Vec<SimplexRef> {
        self.faces.iter().flatten().cloned().collect()
    }
}

/// All simplices whose faces match the assignment on its prescribed
/// slots.
pub fn find_fillers(x: &FinSSet, fa: &FaceAssignment) -> Vec<SimplexRef> {
    let mut out = Vec::new();
    'outer: for c in x.all_simplices(fa.dim) {
        for (i, want) in fa.faces.iter().enumerate() {
            if let Some(want) = want {
                if &x.face(&c, i) != want {
                    continue 'outer;
                }
            }
        }
        out.push(c);
    }
    out
}

/// A cache of filler tables, bucketing every simplex of a dimension by
/// the tuple of its faces at a fixed slot set. Only valid for the
/// complex it was built against.
#[derive(Default)]
pub struct FillerIndex {
    cache: HashMap<(usize, u64), HashMap<Vec<SimplexRef>, Vec<SimplexRef>>>,
}

impl FillerIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fillers(&mut self, x: &FinSSet, fa: &FaceAssignment) -> Vec<SimplexRef> {
        let key = (fa.dim, fa.mask());
        let slots: Vec<usize> = fa
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_some())
            .map(|(i, _)| i)
            .collect();
        let table = self.cache.entry(key).or_insert_with(|| {
            let mut table: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
            for c in x.all_simplices(fa.dim) {
                let tuple: Vec<SimplexRef> = slots.iter().map(|&i| x.face(&c, i)).collect();
                table.entry(tuple).or_default().push(c);
            }
            table
        });
        table.get(&fa.present()).cloned().unwrap_or_default()
    }
}

/// The result of a bounded sphere enumeration.
#[derive(Clone, Debug)]
pub struct SphereList {
    /// Whether the enumeration saw every sphere of the dimension.
    pub complete: bool,
    pub spheres: Vec<Vec<SimplexRef>>,
}

/// Enumerate compatible `(k+1)`-tuples of `(k-1)`-simplices, the
/// candidate boundaries of `k`-simplices, stopping after `limit`.
pub fn enumerate_spheres(x: &FinSSet, k: usize, limit: usize) -> SphereList {
    assert!(k >= 1);
    let mut spheres = Vec::new();
    let complete = sphere_dfs(x, k, limit, None, &mut spheres);
    SphereList { complete, spheres }
}

/// Sample spheres in a reproducible random order until `count` are found
/// or the search space is exhausted. Distinct tuples by construction.
pub fn sample_spheres(x: &FinSSet, k: usize, count: usize, seed: u64) -> Vec<Vec<SimplexRef>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spheres = Vec::new();
    sphere_dfs(x, k, count, Some(&mut rng), &mut spheres);
    spheres
}

/// Backtracking enumeration shared by the exhaustive and sampled walks.
/// Slot `j` candidates come from an index over face 0, since any filled
/// tuple must satisfy `d_0 f_j = d_{j-1} f_0`. Returns whether the walk
/// finished without hitting `limit`.
fn sphere_dfs(
    x: &FinSSet,
    k: usize,
    limit: usize,
    mut rng: Option<&mut ChaCha8Rng>,
    out: &mut Vec<Vec<SimplexRef>>,
) -> bool {
    let candidates = x.all_simplices(k - 1);
    if k == 1 {
        // Boundaries of edges are plain vertex pairs.
        let mut order: Vec<(usize, usize)> = (0..candidates.len())
            .flat_map(|a| (0..candidates.len()).map(move |b| (a, b)))
            .collect();
        if let Some(rng) = rng.as_deref_mut() {
            order.shuffle(rng);
        }
        for (a, b) in order {
            if out.len() >= limit {
                return false;
            }
            out.push(vec![candidates[a].clone(), candidates[b].clone()]);
        }
        return true;
    }
    let mut by_d0: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
    for c in &candidates {
        by_d0.entry(x.face(c, 0)).or_default().push(c.clone());
    }
    let empty: Vec<SimplexRef> = Vec::new();
    let mut stack: Vec<SimplexRef> = Vec::with_capacity(k + 1);
    let mut first = candidates.clone();
    if let Some(rng) = rng.as_deref_mut() {
        first.shuffle(rng);
    }
    for f0 in first {
        stack.push(f0);
        let done = extend_sphere(x, k, limit, &by_d0, &empty, &mut stack, &mut rng, out);
        stack.pop();
        if !done {
            return false;
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn extend_sphere(
    x: &FinSSet,
    k: usize,
    limit: usize,
    by_d0: &HashMap<SimplexRef, Vec<SimplexRef>>,
    empty: &Vec<SimplexRef>,
    stack: &mut Vec<SimplexRef>,
    rng: &mut Option<&mut ChaCha8Rng>,
    out: &mut Vec<Vec<SimplexRef>>,
) -> bool {
    let j = stack.len();
    if j == k + 1 {
        if out.len() >= limit {
            return false;
        }
        out.push(stack.clone());
        return true;
    }
    let want_d0 = x.face(&stack[0], j - 1);
    let mut bucket: Vec<&SimplexRef> = by_d0.get(&want_d0).unwrap_or(empty).iter().collect();
    if let Some(rng) = rng.as_deref_mut() {
        bucket.shuffle(rng);
    }
    'cand: for fj in bucket {
        for i in 1..j {
            if x.face(fj, i) != x.face(&stack[i], j - 1) {
                continue 'cand;
            }
        }
        stack.push(fj.clone());
        let done = extend_sphere(x, k, limit, by_d0, empty, stack, rng, out);
        stack.pop();
        if !done {
            return false;
        }
    }
    true
}

/// Enumerate the face tuples of inner and outer horns: compatible
/// tuples with slot `missing` absent. Entries are in slot order with the
/// missing slot skipped.
pub fn enumerate_horns(
    x: &FinSSet,
    k: usize,
    missing: usize,
    limit: usize,
) -> (bool, Vec<Vec<SimplexRef>>) {
    assert!(k >= 1 && missing <= k);
    let candidates = x.all_simplices(k - 1);
    let mut out = Vec::new();
    if k == 1 {
        for c in &candidates {
            if out.len() >= limit {
                return (false, out);
            }
            out.push(vec![c.clone()]);
        }
        return (true, out);
    }
    let slots: Vec<usize> = (0..=k).filter(|&i| i != missing).collect();
    let mut by_d0: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
    for c in &candidates {
        by_d0.entry(x.face(c, 0)).or_default().push(c.clone());
    }
    let empty: Vec<SimplexRef> = Vec::new();
    let mut stack: Vec<SimplexRef> = Vec::new();
    let complete = horn_dfs(
        x, &slots, limit, &candidates, &by_d0, &empty, &mut stack, &mut out,
    );
    (complete, out)
}

#[allow(clippy::too_many_arguments)]
fn horn_dfs(
    x: &FinSSet,
    slots: &[usize],
    limit: usize,
    candidates: &[SimplexRef],
    by_d0: &HashMap<SimplexRef, Vec<SimplexRef>>,
    empty: &Vec<SimplexRef>,
    stack: &mut Vec<SimplexRef>,
    out: &mut Vec<Vec<SimplexRef>>,
) -> bool {
    let t = stack.len();
    if t == slots.len() {
        if out.len() >= limit {
            return false;
        }
        out.push(stack.clone());
        return true;
    }
    let j = slots[t];
    let bucket: Vec<&SimplexRef> = if t == 0 {
        candidates.iter().collect()
    } else if slots[0] == 0 {
        // Face 0 is present, so slot j is pinned through d_0.
        by_d0
            .get(&x.face(&stack[0], j - 1))
            .unwrap_or(empty)
            .iter()
            .collect()
    } else {
        candidates.iter().collect()
    };
    'cand: for fj in bucket {
        for (s, fi) in slots[..t].iter().zip(stack.iter()) {
            let (lo, hi) = (*s, j);
            debug_assert!(lo < hi);
            if lo == 0 && slots[0] == 0 {
                // Already enforced by the bucket choice.
                continue;
            }
            if x.face(fj, lo) != x.face(fi, hi - 1) {
                continue 'cand;
            }
        }
        stack.push((*fj).clone());
        let done = horn_dfs(x, slots, limit, candidates, by_d0, empty, stack, out);
        stack.pop();
        if !done {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::fin_sset::NondegId;

    #[test]
    fn fillers_of_the_triangle_boundary() {
        let x = FinSSet::standard(2);
        let top = SimplexRef::nondeg(x.find(2, "0-1-2").unwrap());
        let faces: Vec<SimplexRef> = (0..=2).map(|i| x.face(&top, i)).collect();
        let fa = FaceAssignment::sphere(2, faces);
        assert_eq!(find_fillers(&x, &fa), vec![top.clone()]);
        let mut idx = FillerIndex::new();
        assert_eq!(idx.fillers(&x, &fa), vec![top]);
    }

    #[test]
    fn filler_index_agrees_with_direct_search() {
        let x = FinSSet::standard(3);
        let mut idx = FillerIndex::new();
        for c in x.all_simplices(2) {
            for missing in 0..=2usize {
                let faces: Vec<Option<SimplexRef>> = (0..=2)
                    .map(|i| (i != missing).then(|| x.face(&c, i)))
                    .collect();
                let fa = FaceAssignment { dim: 2, faces };
                assert_eq!(idx.fillers(&x, &fa), find_fillers(&x, &fa));
            }
        }
    }

    #[test]
    fn sphere_enumeration_on_the_triangle() {
        let x = FinSSet::standard(2);
        // 2-spheres: every one must satisfy the edge relations, and the
        // boundary of each 2-simplex must appear.
        let list = enumerate_spheres(&x, 2, 100_000);
        assert!(list.complete);
        for c in x.all_simplices(2) {
            let boundary: Vec<SimplexRef> = (0..=2).map(|i| x.face(&c, i)).collect();
            assert!(list.spheres.contains(&boundary));
        }
        for sph in &list.spheres {
            for j in 1..=2usize {
                for i in 0..j {
                    assert_eq!(x.face(&sph[j], i), x.face(&sph[i], j - 1));
                }
            }
        }
        // Spheres are distinct tuples.
        let set: std::collections::HashSet<_> = list.spheres.iter().cloned().collect();
        assert_eq!(set.len(), list.spheres.len());
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let x = FinSSet::standard(3);
        let a = sample_spheres(&x, 2, 10, 42);
        let b = sample_spheres(&x, 2, 10, 42);
        assert_eq!(a, b);
        let c = sample_spheres(&x, 2, 10, 43);
        assert_ne!(a, c);
        let full = enumerate_spheres(&x, 2, 1_000_000);
        assert!(full.complete);
        for sph in &a {
            assert!(full.spheres.contains(sph));
        }
        // Exhausting the space returns every sphere, any seed.
        let all = sample_spheres(&x, 2, usize::MAX, 7);
        assert_eq!(all.len(), full.spheres.len());
    }

    #[test]
    fn horn_enumeration_counts() {
        let x = FinSSet::standard(2);
        // Inner 2-horns: pairs (f_0, f_2) with d_0 f_2 = d_1 f_0, i.e.
        // composable edge pairs. Edges of the triangle: 3 nondegenerate
        // plus 3 degenerate.
        let (complete, horns) = enumerate_horns(&x, 2, 1, 100_000);
        assert!(complete);
        for h in &horns {
            assert_eq!(x.face(&h[1], 0), x.face(&h[0], 1));
        }
        // Cross-check: count composable pairs directly.
        let edges = x.all_simplices(1);
        let expect = edges
            .iter()
            .flat_map(|f0| edges.iter().map(move |f2| (f0, f2)))
            .filter(|(f0, f2)| x.face(f2, 0) == x.face(f0, 1))
            .count();
        assert_eq!(horns.len(), expect);
        let _ = NondegId { dim: 0, idx: 0 };
    }
}
