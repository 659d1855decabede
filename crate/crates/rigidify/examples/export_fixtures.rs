//! Dump the built-in categories and complexes as JSON input files for
//! the command line tool. Usage: `export_fixtures <outdir>`.

use std::env;
use std::fs;
use std::path::PathBuf;

use rigidify::fixtures;
use rigidify::sset::io::{category_to_json, sset_to_json};
use rigidify::sset::FinCategory;

fn main() {
    let out: PathBuf = env::args()
        .nth(1)
        .expect("usage: export_fixtures <outdir>")
        .into();
    fs::create_dir_all(&out).expect("create output directory");
    let cats = [
        ("chain1", FinCategory::poset_chain(1)),
        ("chain2", FinCategory::poset_chain(2)),
        ("chain3", FinCategory::poset_chain(3)),
        ("retract", fixtures::rs_category()),
        ("grid", fixtures::grid_poset()),
        ("free-five", fixtures::free_five()),
    ];
    for (name, cat) in cats {
        fs::write(out.join(format!("{name}.category.json")), category_to_json(&cat))
            .expect("write category");
    }
    let retract_nerve = fixtures::rs_category()
        .nerve(4)
        .expect("nerve of the retract");
    let complexes = [
        ("standard3", rigidify::sset::FinSSet::standard(3)),
        ("two-triangle", fixtures::two_triangle(4)),
        ("two-tetra", fixtures::two_tetra(4)),
        ("cosk-sphere", fixtures::cosk_sphere()),
        ("retract-nerve", retract_nerve.complex),
    ];
    for (name, x) in complexes {
        fs::write(out.join(format!("{name}.complex.json")), sset_to_json(&x))
            .expect("write complex");
    }
    println!("wrote fixtures to {}", out.display());
}
