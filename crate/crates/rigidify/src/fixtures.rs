//! Small categories and complexes used across the test suites and the
//! demo subcommand: a retract pair with an idempotent, a non-linear
//! poset, a free category with a parallel pair, and hand-built complexes
//! exercising coskeletality and horn filling in hom-spaces.

use crate::sset::{coskeletal_completion, FinCategory, FinSSet, SimplexRef};

/// The walking retract: `s : x -> y`, `r : y -> x` with `r` after `s`
/// the identity, and the resulting idempotent `e = s r` on `y`.
pub fn rs_category() -> FinCategory {
    let mut cat = FinCategory::new(&["x", "y"]);
    let s = cat.add_morphism("s", "x", "y").unwrap();
    let r = cat.add_morphism("r", "y", "x").unwrap();
    let e = cat.add_morphism("e", "y", "y").unwrap();
    let id_x = cat.identity_of(0);
    cat.set_composite(r, s, id_x).unwrap();
    cat.set_composite(s, r, e).unwrap();
    cat.set_composite(e, e, e).unwrap();
    cat.set_composite(e, s, s).unwrap();
    cat.set_composite(r, e, r).unwrap();
    cat.validate().expect("retract category");
    cat
}

/// The square poset `{0,1} x {0,1}`: two incomparable middle objects,
/// so some hom-spaces of its rigidification have more than one vertex.
pub fn grid_poset() -> FinCategory {
    let labels = ["00", "01", "10", "11"];
    let bits = |i: usize| (i / 2, i % 2);
    let leq = |i: usize, j: usize| {
        let (a, b) = bits(i);
        let (c, d) = bits(j);
        a <= c && b <= d
    };
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && leq(i, j))
        .collect();
    FinCategory::from_poset(&labels, leq, &pairs).expect("grid poset")
}

/// The free category on `0 -> 1 => 2 -> 3 -> 4` with a parallel pair
/// `u, v` in the middle.
pub fn free_five() -> FinCategory {
    FinCategory::free_on_acyclic_graph(
        &["0", "1", "2", "3", "4"],
        &[("f", 0, 1), ("u", 1, 2), ("v", 1, 2), ("g", 2, 3), ("h", 3, 4)],
    )
    .expect("free category")
}

/// Two triangles `alpha`, `beta` with the same three boundary edges
/// `a : v0 -> v1`, `b : v1 -> v2`, `c : v0 -> v2`. Truncated at
/// dimension 2; see [`two_triangle`] for the coskeletal closure.
pub fn two_triangle_base() -> FinSSet {
    let mut x = FinSSet::new(2);
    let v0 = SimplexRef::nondeg(x.add_vertex("v0").unwrap());
    let v1 = SimplexRef::nondeg(x.add_vertex("v1").unwrap());
    let v2 = SimplexRef::nondeg(x.add_vertex("v2").unwrap());
    let a = SimplexRef::nondeg(
        x.add_simplex(1, "a", vec![v1.clone(), v0.clone()]).unwrap(),
    );
    let b = SimplexRef::nondeg(
        x.add_simplex(1, "b", vec![v2.clone(), v1.clone()]).unwrap(),
    );
    let c = SimplexRef::nondeg(
        x.add_simplex(1, "c", vec![v2.clone(), v0.clone()]).unwrap(),
    );
    x.add_simplex(2, "alpha", vec![b.clone(), c.clone(), a.clone()])
        .unwrap();
    x.add_simplex(2, "beta", vec![b, c, a]).unwrap();
    x
}

/// The 2-coskeletal closure of [`two_triangle_base`] up to `dim_cap`:
/// every sphere above dimension 2 is filled once. A quasi-category that
/// is not the nerve of any category.
pub fn two_triangle(dim_cap: usize) -> FinSSet {
    coskeletal_completion(&two_triangle_base(), 2, dim_cap).expect("closure")
}

/// Two 3-simplices `0-1-2-3` and `tau` sharing their entire boundary,
/// closed 3-coskeletally up to `dim_cap`. The equal-boundary pair feeds
/// the unfillable-horn construction for non-coskeletal complexes.
pub fn two_tetra(dim_cap: usize) -> FinSSet {
    let mut x = FinSSet::standard(3);
    let faces: Vec<SimplexRef> = (0..4usize)
        .map(|i| {
            // Face i of 0-1-2-3 omits vertex i.
            let label: Vec<String> = (0..4usize)
                .filter(|&v| v != i)
                .map(|v| v.to_string())
                .collect();
            SimplexRef::nondeg(x.find(2, &label.join("-")).unwrap())
        })
        .collect();
    x.add_simplex(3, "tau", faces).unwrap();
    coskeletal_completion(&x, 3, dim_cap).expect("closure")
}

/// A 3-truncated complex with two parallel edges `f, g : x -> y`, one
/// triangle `alpha` witnessing `g` as a composite of `f` with the
/// identity, and one 3-simplex `sigma` gluing `alpha` to itself. Its
/// hom-space from `x` to `y` carries a 3-sphere with no filler even
/// though all inner flag data agree.
pub fn cosk_sphere() -> FinSSet {
    let mut x = FinSSet::new(3);
    let vx = SimplexRef::nondeg(x.add_vertex("x").unwrap());
    let vy = SimplexRef::nondeg(x.add_vertex("y").unwrap());
    let f = SimplexRef::nondeg(
        x.add_simplex(1, "f", vec![vy.clone(), vx.clone()]).unwrap(),
    );
    let g = SimplexRef::nondeg(
        x.add_simplex(1, "g", vec![vy.clone(), vx.clone()]).unwrap(),
    );
    let idy = x.degeneracy(&vy, 0);
    let alpha = SimplexRef::nondeg(
        x.add_simplex(2, "alpha", vec![idy, g.clone(), f.clone()])
            .unwrap(),
    );
    let s0g = x.degeneracy(&g, 0);
    let s0f = x.degeneracy(&f, 0);
    x.add_simplex(3, "sigma", vec![alpha.clone(), alpha, s0g, s0f])
        .unwrap();
    x.validate().expect("sphere fixture");
    x
}

/// Named complexes for the demo subcommand.
pub const FIXTURE_NAMES: &[&str] = &["cosk-sphere", "rs-horns", "two-triangle"];

/// Look up one of the named complexes from `FIXTURE_NAMES`.
pub fn fixture_by_name(name: &str) -> Option<FinSSet> {
    match name {
        "cosk-sphere" => Some(cosk_sphere()),
        "rs-horns" => Some(rs_category().nerve(4).expect("retract nerve").complex),
        "two-triangle" => Some(two_triangle(4)),
        _ => None,
    }
}
