//! Batch front end: ingest categories and simplicial sets as JSON, run
//! the hom-space computations and checkers, and emit human or JSON
//! reports. Exit codes: 0 success, 1 mathematical negative, 2 cap or
//! budget insufficiency, 3 input error.

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use rigidify::delta::DegeneracyWord;
use rigidify::fixtures;
use rigidify::necklace::{hom_face, hom_space, HomSimplex, Necklace, NecklaceMap};
use rigidify::resolution::{
    discrete, free_resolution, hc_nerve, iso_check, rigid_delta, rigidify_nerve, HcError,
    IsoFailure, ResolutionError, SimpCategory,
};
use rigidify::sset::io::{category_from_json, category_to_doc, sset_from_json, sset_to_doc, SSetDoc};
use rigidify::sset::{
    find_fillers, is_coskeletal, is_quasicategory, CoskViolation, FaceAssignment, FinCategory,
    FinSSet, NondegId, SimplexRef,
};
use rigidify::theorems::{
    certify_unfillable, detect_nerve, fill_composition_horn, fill_high_sphere, retract_horns,
    CertifyError, DetectError, FillError, HornInHom, NerveDetection, SphereFillError,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_CAPS: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rigidify",
    version,
    about = "Hom-spaces of simplicial categories via necklaces and flags"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation dimension for materialized hom-spaces and resolutions.
    #[arg(long, global = true, default_value_t = 3)]
    dim_cap: usize,
    /// Cap on necklace total dimension, equivalently word length.
    #[arg(long, global = true, default_value_t = 6)]
    size_cap: usize,
    /// Enumeration budget for searches and nerve assembly.
    #[arg(long, global = true, default_value_t = 200_000)]
    budget: usize,
    /// Seed for sampled searches; reports echo it for reproducibility.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker cap. Accepted for compatibility; work runs on one thread.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    /// Free resolution of the category.
    Resolution,
    /// Discrete enrichment on the morphism sets.
    Discrete,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize and export the hom-space between two vertices of a
    /// complex.
    Hom {
        complex: PathBuf,
        /// Source vertex, by label or by index.
        src: String,
        /// Target vertex, by label or by index.
        tgt: String,
    },
    /// Check that every inner horn of the complex has a filler.
    CheckQcat { complex: PathBuf },
    /// Check that the complex is n-coskeletal.
    CheckCosk { complex: PathBuf, n: usize },
    /// Fill a horn or sphere in a hom-space, or certify that nothing
    /// fills it.
    FillHorn { file: PathBuf },
    /// Build the free resolution of a category and export it.
    Resolve { category: PathBuf },
    /// Build the interval model of the total order 0 < 1 < ... < n.
    RigidDelta { n: usize },
    /// Check that the free resolution of a category is isomorphic to
    /// the hom-spaces of its nerve.
    Iso { category: PathBuf },
    /// Assemble the coherent nerve of a simplicial category built from
    /// a category file.
    HcNerve {
        category: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Resolution)]
        model: Model,
    },
    /// Decide whether a complex is the nerve of a category.
    DetectNerve { complex: PathBuf },
    /// Run an embedded fixture end to end and compare the computed
    /// verdict with the expected one. `list` prints the names.
    Demo { name: String },
}

struct Report {
    code: u8,
    verdict: String,
    data: Value,
    lines: Vec<String>,
}

impl Report {
    fn ok(verdict: impl Into<String>) -> Self {
        Report {
            code: EXIT_OK,
            verdict: verdict.into(),
            data: Value::Null,
            lines: Vec::new(),
        }
    }

    fn at(code: u8, verdict: impl Into<String>) -> Self {
        Report {
            code,
            verdict: verdict.into(),
            data: Value::Null,
            lines: Vec::new(),
        }
    }

    fn data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    fn line(mut self, line: impl Into<String>) -> Self {
        self.lines.push(line.into());
        self
    }

    fn lines(mut self, lines: impl IntoIterator<Item = String>) -> Self {
        self.lines.extend(lines);
        self
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    let mut out = io::BufWriter::new(io::stdout().lock());
    let written = match cli.format {
        Format::Human => write_human(&mut out, &report),
        Format::Json => write_json(&mut out, &cli, &report),
    };
    match written.and_then(|()| out.flush()) {
        Ok(()) => {}
        // A closed pipe, e.g. `rigidify ... | head`, cuts output short
        // but does not change the verdict.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("cannot write output: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(report.code)
}

fn write_human(out: &mut impl Write, report: &Report) -> io::Result<()> {
    writeln!(out, "{}", report.verdict)?;
    for line in &report.lines {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn write_json(out: &mut impl Write, cli: &Cli, report: &Report) -> io::Result<()> {
    let envelope = json!({
        "command": command_name(&cli.command),
        "config": {
            "dim_cap": cli.dim_cap,
            "size_cap": cli.size_cap,
            "budget": cli.budget,
            "seed": cli.seed,
            "jobs": cli.jobs,
        },
        "verdict": report.verdict,
        "exit": report.code,
        "data": report.data,
    });
    let text = serde_json::to_string_pretty(&envelope).expect("serialize report");
    writeln!(out, "{text}")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hom { .. } => "hom",
        Command::CheckQcat { .. } => "check-qcat",
        Command::CheckCosk { .. } => "check-cosk",
        Command::FillHorn { .. } => "fill-horn",
        Command::Resolve { .. } => "resolve",
        Command::RigidDelta { .. } => "rigid-delta",
        Command::Iso { .. } => "iso",
        Command::HcNerve { .. } => "hc-nerve",
        Command::DetectNerve { .. } => "detect-nerve",
        Command::Demo { .. } => "demo",
    }
}

fn run(cli: &Cli) -> Report {
    match &cli.command {
        Command::Hom { complex, src, tgt } => cmd_hom(cli, complex, src, tgt),
        Command::CheckQcat { complex } => cmd_check_qcat(cli, complex),
        Command::CheckCosk { complex, n } => cmd_check_cosk(cli, complex, *n),
        Command::FillHorn { file } => cmd_fill_horn(cli, file),
        Command::Resolve { category } => cmd_resolve(cli, category),
        Command::RigidDelta { n } => cmd_rigid_delta(cli, *n),
        Command::Iso { category } => cmd_iso(cli, category),
        Command::HcNerve { category, model } => cmd_hc_nerve(cli, category, *model),
        Command::DetectNerve { complex } => cmd_detect_nerve(cli, complex),
        Command::Demo { name } => cmd_demo(cli, name),
    }
}

fn load_sset(path: &Path) -> Result<FinSSet, Report> {
    let text = fs::read_to_string(path)
        .map_err(|e| Report::at(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let x = sset_from_json(&text)
        .map_err(|e| Report::at(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    x.validate()
        .map_err(|e| Report::at(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(x)
}

fn load_category(path: &Path) -> Result<FinCategory, Report> {
    let text = fs::read_to_string(path)
        .map_err(|e| Report::at(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let cat = category_from_json(&text)
        .map_err(|e| Report::at(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    cat.validate()
        .map_err(|e| Report::at(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(cat)
}

fn vertex_index(x: &FinSSet, which: &str) -> Result<usize, Report> {
    if let Some(id) = x.find(0, which) {
        return Ok(id.idx);
    }
    match which.parse::<usize>() {
        Ok(i) if i < x.nondeg_count(0) => Ok(i),
        _ => Err(Report::at(
            EXIT_INPUT,
            format!("no vertex `{which}` in the complex"),
        )),
    }
}

fn flag_string(flag: &[BTreeSet<usize>]) -> String {
    flag.iter()
        .map(|level| {
            let inner: Vec<String> = level.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" < ")
}

fn show_hom(x: &FinSSet, s: &HomSimplex) -> String {
    let beads: Vec<String> = s.map.images.iter().map(|r| x.describe(r)).collect();
    format!(
        "beads [{}] flag {}",
        beads.join(" v "),
        flag_string(&s.flag)
    )
}

fn doc_value(doc: &SSetDoc) -> Value {
    serde_json::to_value(doc).expect("serialize complex document")
}

fn cmd_hom(cli: &Cli, path: &Path, src: &str, tgt: &str) -> Report {
    let x = match load_sset(path) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let (xi, yi) = match (vertex_index(&x, src), vertex_index(&x, tgt)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(r), _) | (_, Err(r)) => return r,
    };
    let hom = hom_space(&x, xi, yi, cli.dim_cap, cli.size_cap);
    let counts: Vec<usize> = (0..=hom.space.dim_cap())
        .map(|d| hom.space.nondeg_count(d))
        .collect();
    let mut report = Report::ok(format!(
        "hom-space from `{src}` to `{tgt}` materialized under caps ({}, {})",
        cli.dim_cap, cli.size_cap
    ));
    for (d, c) in counts.iter().enumerate() {
        report = report.line(format!("dimension {d}: {c} nondegenerate"));
    }
    if hom.dim_truncated {
        report = report.line(format!(
            "note: simplices above dimension {} were cut off",
            cli.dim_cap
        ));
    }
    report.data(json!({
        "src": xi,
        "tgt": yi,
        "dim_truncated": hom.dim_truncated,
        "nondegenerate_by_dim": counts,
        "space": doc_value(&sset_to_doc(&hom.space)),
    }))
}

fn cmd_check_qcat(cli: &Cli, path: &Path) -> Report {
    let x = match load_sset(path) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let up_to = cli.dim_cap.min(x.dim_cap());
    match is_quasicategory(&x, up_to) {
        Ok(()) => Report::ok(format!(
            "quasi-category: every inner horn fills up to dimension {up_to}"
        ))
        .data(json!({"up_to": up_to})),
        Err(h) => {
            let faces: Vec<String> = h.faces.iter().map(|f| x.describe(f)).collect();
            Report::at(
                EXIT_NEGATIVE,
                format!(
                    "not a quasi-category: an inner horn of dimension {} (slot {}) has no filler",
                    h.dim, h.missing
                ),
            )
            .lines(faces.iter().map(|f| format!("face: {f}")))
            .data(json!({
                "up_to": up_to,
                "horn": {"dim": h.dim, "missing": h.missing, "faces": faces},
            }))
        }
    }
}

fn cmd_check_cosk(cli: &Cli, path: &Path, n: usize) -> Report {
    let x = match load_sset(path) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let up_to = cli.dim_cap.min(x.dim_cap());
    match is_coskeletal(&x, n, up_to, cli.budget) {
        Ok(()) => Report::ok(format!(
            "{n}-coskeletal: spheres above dimension {n} fill uniquely up to dimension {up_to}"
        ))
        .data(json!({"n": n, "up_to": up_to})),
        Err(CoskViolation::Budget { dim, limit }) => Report::at(
            EXIT_CAPS,
            format!("budget exhausted: more than {limit} spheres in dimension {dim}"),
        )
        .data(json!({"dim": dim, "limit": limit})),
        Err(CoskViolation::Unfilled { dim, faces }) => {
            let faces: Vec<String> = faces.iter().map(|f| x.describe(f)).collect();
            Report::at(
                EXIT_NEGATIVE,
                format!("not {n}-coskeletal: a sphere of dimension {dim} has no filler"),
            )
            .lines(faces.iter().map(|f| format!("face: {f}")))
            .data(json!({"dim": dim, "faces": faces, "fillers": 0}))
        }
        Err(CoskViolation::Multiple { dim, faces, fillers }) => {
            let faces: Vec<String> = faces.iter().map(|f| x.describe(f)).collect();
            let fillers: Vec<String> = fillers.iter().map(|f| x.describe(f)).collect();
            Report::at(
                EXIT_NEGATIVE,
                format!(
                    "not {n}-coskeletal: a sphere of dimension {dim} has {} fillers",
                    fillers.len()
                ),
            )
            .lines(faces.iter().map(|f| format!("face: {f}")))
            .lines(fillers.iter().map(|f| format!("filler: {f}")))
            .data(json!({"dim": dim, "faces": faces, "fillers": fillers}))
        }
    }
}

/// On-disk description of a horn or sphere inside a hom-space. `dim` is
/// the dimension of the sought filler; a horn omits slot `missing`, a
/// sphere gives all `dim + 1` faces and no `missing` field. Beads refer
/// to simplices of the complex by label or index, optionally under a
/// degeneracy word; a face with no beads is the identity at `src`.
#[derive(Deserialize)]
struct HornFile {
    complex: SSetDoc,
    src: usize,
    tgt: usize,
    dim: usize,
    #[serde(default)]
    missing: Option<usize>,
    faces: Vec<FaceSpec>,
}

#[derive(Deserialize)]
struct FaceSpec {
    #[serde(default)]
    beads: Vec<BeadSpec>,
    flag: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct BeadSpec {
    dim: usize,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    idx: Option<usize>,
    #[serde(default)]
    word: Vec<usize>,
}

fn build_face(x: &FinSSet, src: usize, tgt: usize, spec: &FaceSpec) -> Result<HomSimplex, String> {
    let flag: Vec<BTreeSet<usize>> = spec
        .flag
        .iter()
        .map(|level| level.iter().copied().collect())
        .collect();
    if flag.is_empty() {
        return Err("a face needs at least one flag level".into());
    }
    if spec.beads.is_empty() {
        if src != tgt {
            return Err("a face with no beads must sit at a single vertex".into());
        }
        let unit = HomSimplex::unit(src, flag.len() - 1);
        if unit.flag != flag {
            return Err("the identity face carries only singleton flags".into());
        }
        return Ok(unit);
    }
    let mut images = Vec::new();
    let mut dims = Vec::new();
    for bead in &spec.beads {
        let base = match (&bead.label, bead.idx) {
            (Some(label), _) => x
                .find(bead.dim, label)
                .ok_or_else(|| format!("no {}-simplex labeled `{label}`", bead.dim))?,
            (None, Some(idx)) if idx < x.nondeg_count(bead.dim) => NondegId {
                dim: bead.dim,
                idx,
            },
            _ => return Err("each bead needs a resolvable label or index".into()),
        };
        let word = DegeneracyWord::new(bead.word.clone())
            .map_err(|_| format!("degeneracy word {:?} is not strictly decreasing", bead.word))?;
        let r = SimplexRef { word, id: base };
        dims.push(r.dim());
        images.push(r);
    }
    let shape = Necklace::new(dims).map_err(|e| e.to_string())?;
    let map = NecklaceMap::new(x, shape, images, src, tgt).map_err(|e| e.to_string())?;
    HomSimplex::new(map, flag).map_err(|e| e.to_string())
}

fn cmd_fill_horn(cli: &Cli, path: &Path) -> Report {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return Report::at(EXIT_INPUT, format!("cannot read {}: {e}", path.display()))
        }
    };
    let file: HornFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => return Report::at(EXIT_INPUT, format!("{}: {e}", path.display())),
    };
    let x = match rigidify::sset::io::sset_from_doc(&file.complex) {
        Ok(x) => x,
        Err(e) => return Report::at(EXIT_INPUT, format!("{}: {e}", path.display())),
    };
    if let Err(e) = x.validate() {
        return Report::at(EXIT_INPUT, format!("{}: {e}", path.display()));
    }
    let mut faces = Vec::new();
    for (i, spec) in file.faces.iter().enumerate() {
        match build_face(&x, file.src, file.tgt, spec) {
            Ok(f) => faces.push(f),
            Err(e) => return Report::at(EXIT_INPUT, format!("face {i}: {e}")),
        }
    }
    for f in &faces {
        if f.dim() + 1 != file.dim {
            return Report::at(
                EXIT_INPUT,
                format!(
                    "faces of a {}-dimensional filler must have dimension {}",
                    file.dim,
                    file.dim - 1
                ),
            );
        }
    }
    match file.missing {
        Some(missing) => fill_horn_case(cli, &x, file.src, file.tgt, file.dim, missing, faces),
        None => fill_sphere_case(cli, &x, file.src, file.tgt, file.dim, faces),
    }
}

fn fill_horn_case(
    cli: &Cli,
    x: &FinSSet,
    src: usize,
    tgt: usize,
    dim: usize,
    missing: usize,
    faces: Vec<HomSimplex>,
) -> Report {
    if missing > dim || faces.len() != dim {
        return Report::at(
            EXIT_INPUT,
            format!("a {dim}-horn needs {dim} faces and a missing slot at most {dim}"),
        );
    }
    let horn = HornInHom {
        src,
        tgt,
        dim,
        missing,
        faces,
    };
    if let Err(e) = horn.validate(x) {
        return Report::at(EXIT_INPUT, format!("not a horn: {e}"));
    }
    if dim == 2 && missing == 1 {
        return match fill_composition_horn(x, &horn.faces[0], &horn.faces[1]) {
            Ok((filler, trace)) => {
                let mut report = Report::ok("filled: the composition horn has the filler below")
                    .line(show_hom(x, &filler));
                report = report.line(format!(
                    "merges: {}, standalone beads: {}, thickened cells: {}",
                    trace.steps.len(),
                    trace.standalone,
                    trace.thickened
                ));
                report.data(json!({
                    "filler": filler,
                    "trace": trace,
                    "long_edge": show_hom(x, &hom_face(x, &filler, 1)),
                }))
            }
            Err(FillError::CapExceeded { needed, cap }) => Report::at(
                EXIT_CAPS,
                format!("the filler needs dimension {needed}, above the truncation cap {cap}"),
            ),
            Err(e @ FillError::NoExtension { .. }) => {
                Report::at(EXIT_NEGATIVE, format!("no filler: {e}"))
            }
            Err(e) => Report::at(EXIT_INPUT, format!("rejected: {e}")),
        };
    }
    let (nat_dim, nat_size) = horn.natural_caps();
    let dim_cap = cli.dim_cap.max(nat_dim);
    let size_cap = cli.size_cap.max(nat_size);
    let hom = hom_space(x, src, tgt, dim_cap, size_cap);
    let Some(fa) = horn.assignment(&hom) else {
        return Report::at(
            EXIT_CAPS,
            format!("a horn face lies outside the hom-space caps ({dim_cap}, {size_cap})"),
        );
    };
    let fillers = find_fillers(&hom.space, &fa);
    if !fillers.is_empty() {
        let shown: Vec<String> = fillers.iter().map(|f| hom.space.describe(f)).collect();
        return Report::ok(format!("filled: {} filler(s) found", fillers.len()))
            .lines(shown.iter().map(|f| format!("filler: {f}")))
            .data(json!({"fillers": shown}));
    }
    match certify_unfillable(x, &horn, dim_cap, size_cap) {
        Ok(cert) => Report::at(
            EXIT_NEGATIVE,
            format!(
                "no filler: {} candidate simplices searched under caps ({}, {})",
                cert.candidates, cert.dim_cap, cert.size_cap
            ),
        )
        .data(json!({"certificate": cert})),
        Err(CertifyError::OutsideCaps { dim_cap, size_cap }) => Report::at(
            EXIT_CAPS,
            format!("a horn face lies outside the hom-space caps ({dim_cap}, {size_cap})"),
        ),
        Err(CertifyError::FillerFound(f)) => Report::ok(format!(
            "filled: {} fills the horn",
            hom.space.describe(&f)
        )),
    }
}

fn fill_sphere_case(
    cli: &Cli,
    x: &FinSSet,
    src: usize,
    tgt: usize,
    dim: usize,
    faces: Vec<HomSimplex>,
) -> Report {
    if faces.len() != dim + 1 {
        return Report::at(
            EXIT_INPUT,
            format!("a {dim}-sphere needs {} faces", dim + 1),
        );
    }
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if hom_face(x, &faces[j], i) != hom_face(x, &faces[i], j - 1) {
                return Report::at(
                    EXIT_INPUT,
                    format!("not a sphere: relation ({i},{j}) fails"),
                );
            }
        }
    }
    if dim >= 4 {
        return match fill_high_sphere(x, &faces) {
            Ok(filler) => Report::ok("filled: the sphere determines the filler below")
                .line(show_hom(x, &filler))
                .data(json!({"filler": filler})),
            Err(e @ SphereFillError::TooLow(_)) => {
                Report::at(EXIT_INPUT, format!("rejected: {e}"))
            }
            Err(e) => Report::at(EXIT_NEGATIVE, format!("no filler: {e}")),
        };
    }
    let size_needed = faces
        .iter()
        .map(|f| f.map.shape.total_dim())
        .max()
        .unwrap_or(0);
    let dim_cap = cli.dim_cap.max(dim);
    let size_cap = cli.size_cap.max(size_needed);
    let hom = hom_space(x, src, tgt, dim_cap, size_cap);
    let refs: Option<Vec<SimplexRef>> = faces.iter().map(|f| hom.ref_of_hom(f)).collect();
    let Some(refs) = refs else {
        return Report::at(
            EXIT_CAPS,
            format!("a sphere face lies outside the hom-space caps ({dim_cap}, {size_cap})"),
        );
    };
    let fa = FaceAssignment::sphere(dim, refs);
    let fillers = find_fillers(&hom.space, &fa);
    if fillers.is_empty() {
        Report::at(
            EXIT_NEGATIVE,
            format!(
                "no filler: {} candidate simplices searched under caps ({dim_cap}, {size_cap})",
                hom.space.count_simplices(dim)
            ),
        )
        .data(json!({"candidates": hom.space.count_simplices(dim)}))
    } else {
        let shown: Vec<String> = fillers.iter().map(|f| hom.space.describe(f)).collect();
        Report::ok(format!("filled: {} filler(s) found", fillers.len()))
            .lines(shown.iter().map(|f| format!("filler: {f}")))
            .data(json!({"fillers": shown}))
    }
}

fn resolution_report(err: ResolutionError) -> Report {
    match err {
        ResolutionError::Category(e) => Report::at(EXIT_INPUT, format!("invalid category: {e}")),
        ResolutionError::Assembly(e) => {
            Report::at(EXIT_INPUT, format!("hom-space assembly failed: {e}"))
        }
        ResolutionError::Nerve(e) => Report::at(EXIT_INPUT, format!("nerve construction: {e}")),
    }
}

fn summarize(sc: &SimpCategory) -> Vec<String> {
    let mut lines = Vec::new();
    for x in 0..sc.object_count() {
        for y in 0..sc.object_count() {
            let h = sc.hom(x, y);
            let counts: Vec<String> = (0..=h.dim_cap())
                .map(|d| h.nondeg_count(d).to_string())
                .collect();
            lines.push(format!(
                "hom({}, {}): nondegenerate by dimension [{}]",
                sc.object_label(x),
                sc.object_label(y),
                counts.join(", ")
            ));
        }
    }
    lines
}

fn cmd_resolve(cli: &Cli, path: &Path) -> Report {
    let cat = match load_category(path) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let res = match free_resolution(&cat, cli.dim_cap, cli.size_cap) {
        Ok(r) => r,
        Err(e) => return resolution_report(e),
    };
    let doc = res.export(1);
    Report::ok(format!(
        "free resolution materialized under caps ({}, {})",
        cli.dim_cap, cli.size_cap
    ))
    .lines(summarize(&res))
    .data(serde_json::to_value(&doc).expect("serialize resolution"))
}

fn cmd_rigid_delta(_cli: &Cli, n: usize) -> Report {
    let sc = rigid_delta(n);
    let doc = sc.export(1);
    let mut report = Report::ok(format!(
        "interval model of the total order on {} objects",
        n + 1
    ));
    report = report.lines(summarize(&sc));
    if n >= 1 {
        let h = sc.hom(0, n);
        let totals: Vec<usize> = (0..=2.min(h.dim_cap()))
            .map(|d| h.count_simplices(d))
            .collect();
        let shown: Vec<String> = totals.iter().map(|t| t.to_string()).collect();
        report = report.line(format!(
            "hom(0, {n}) simplices by dimension, degenerate included: {}",
            shown.join(" / ")
        ));
        report.data(json!({
            "export": serde_json::to_value(&doc).expect("serialize model"),
            "hom_0_n_totals": totals,
        }))
    } else {
        report.data(json!({
            "export": serde_json::to_value(&doc).expect("serialize model"),
        }))
    }
}

fn cmd_iso(cli: &Cli, path: &Path) -> Report {
    let cat = match load_category(path) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let left = match free_resolution(&cat, cli.dim_cap, cli.size_cap) {
        Ok(r) => r,
        Err(e) => return resolution_report(e),
    };
    let right = match rigidify_nerve(&cat, cli.dim_cap, cli.size_cap) {
        Ok(r) => r,
        Err(e) => return resolution_report(e),
    };
    match iso_check(&left, &right, cli.dim_cap, cli.budget) {
        Ok(w) => {
            let mut report = Report::ok(format!(
                "isomorphic: the free resolution matches the rigidified nerve up to dimension {}",
                cli.dim_cap
            ));
            report = report.line(format!(
                "checks: {} faces, {} degeneracies, {} units, {} compositions ({} skipped outside caps{})",
                w.face_checks,
                w.degeneracy_checks,
                w.unit_checks,
                w.composition_checks,
                w.composition_skipped,
                if w.composition_sampled {
                    ", sampled"
                } else {
                    ""
                }
            ));
            report = report.line(format!("matched cells: {}", w.table.len()));
            for row in &w.table {
                report = report.line(format!(
                    "dim {}: {} <-> {} :: {}",
                    row.dim, row.left, row.right, row.form
                ));
            }
            report.data(serde_json::to_value(&w).expect("serialize witness"))
        }
        Err(e) => match *e {
            IsoFailure::CapTooHigh { requested, cap } => Report::at(
                EXIT_CAPS,
                format!("dimension cap {requested} exceeds the materialized cap {cap}"),
            ),
            other => Report::at(EXIT_NEGATIVE, format!("not isomorphic: {other}")),
        },
    }
}

fn cmd_hc_nerve(cli: &Cli, path: &Path, model: Model) -> Report {
    let cat = match load_category(path) {
        Ok(c) => c,
        Err(r) => return r,
    };
    let sc = match model {
        Model::Resolution => match free_resolution(&cat, cli.dim_cap, cli.size_cap) {
            Ok(r) => r,
            Err(e) => return resolution_report(e),
        },
        Model::Discrete => match discrete(&cat) {
            Ok(r) => r,
            Err(e) => return resolution_report(e),
        },
    };
    let n_cap = cli.dim_cap.min(3);
    match hc_nerve(&sc, n_cap, cli.budget) {
        Ok(hc) => {
            let counts: Vec<usize> = (0..=n_cap).map(|d| hc.nondeg_count(d)).collect();
            let mut report = Report::ok(format!(
                "coherent nerve assembled up to dimension {n_cap}"
            ));
            for (d, c) in counts.iter().enumerate() {
                report = report.line(format!("dimension {d}: {c} nondegenerate"));
            }
            report.data(json!({
                "nondegenerate_by_dim": counts,
                "space": doc_value(&sset_to_doc(&hc)),
            }))
        }
        Err(e @ HcError::Budget(_))
        | Err(e @ HcError::CapTooHigh(_))
        | Err(e @ HcError::HomCapTooLow(_)) => Report::at(EXIT_CAPS, e.to_string()),
        Err(e) => Report::at(EXIT_INPUT, e.to_string()),
    }
}

fn cmd_detect_nerve(cli: &Cli, path: &Path) -> Report {
    let x = match load_sset(path) {
        Ok(x) => x,
        Err(r) => return r,
    };
    let up_to = cli.dim_cap.max(3);
    match detect_nerve(&x, up_to) {
        Ok(NerveDetection::Nerve(cat)) => Report::ok(format!(
            "nerve: the complex is the nerve of a category with {} objects and {} morphisms",
            cat.object_count(),
            cat.morphism_count()
        ))
        .data(json!({
            "category": serde_json::to_value(category_to_doc(&cat)).expect("serialize category"),
        })),
        Ok(NerveDetection::NotNerve(o)) => Report::at(
            EXIT_NEGATIVE,
            format!("not a nerve: {}", o.reason),
        )
        .line(format!(
            "obstruction: an inner horn of dimension {} (slot {}) in hom({}, {}) with no filler",
            o.horn.dim, o.horn.missing, o.horn.src, o.horn.tgt
        ))
        .line(format!(
            "certified by searching {} candidates under caps ({}, {})",
            o.certificate.candidates, o.certificate.dim_cap, o.certificate.size_cap
        ))
        .data(serde_json::to_value(&o).expect("serialize obstruction")),
        Err(DetectError::NotQuasi(h)) => Report::at(
            EXIT_NEGATIVE,
            format!(
                "not a nerve: not even a quasi-category, an inner horn of dimension {} has no filler",
                h.dim
            ),
        ),
        Err(e @ DetectError::Budget { .. }) | Err(e @ DetectError::Cap { .. }) => {
            Report::at(EXIT_CAPS, e.to_string())
        }
        Err(DetectError::Certify(CertifyError::OutsideCaps { dim_cap, size_cap })) => Report::at(
            EXIT_CAPS,
            format!("certification needs caps above ({dim_cap}, {size_cap})"),
        ),
        Err(e) => Report::at(EXIT_INPUT, e.to_string()),
    }
}

fn cmd_demo(cli: &Cli, name: &str) -> Report {
    match name {
        "list" => {
            let mut report = Report::ok("available demos");
            for n in fixtures::FIXTURE_NAMES {
                report = report.line(*n);
            }
            report.data(json!({ "names": fixtures::FIXTURE_NAMES }))
        }
        "cosk-sphere" => demo_cosk_sphere(),
        "rs-horns" => demo_rs_horns(),
        "two-triangle" => demo_two_triangle(cli),
        other => Report::at(
            EXIT_INPUT,
            format!("unknown demo `{other}`; try `demo list`"),
        ),
    }
}

fn triple(
    x: &FinSSet,
    beads: &[(usize, &str)],
    flag: &[&[usize]],
) -> Result<HomSimplex, String> {
    let refs: Vec<SimplexRef> = beads
        .iter()
        .map(|(d, l)| {
            x.find(*d, l)
                .map(SimplexRef::nondeg)
                .ok_or_else(|| format!("no {d}-simplex `{l}`"))
        })
        .collect::<Result<_, _>>()?;
    let dims: Vec<usize> = beads.iter().map(|(d, _)| *d).collect();
    let src = x.vertex_at(&refs[0], 0);
    let last = refs.last().expect("at least one bead");
    let tgt = x.vertex_at(last, last.dim());
    let map = NecklaceMap::new(
        x,
        Necklace::new(dims).map_err(|e| e.to_string())?,
        refs,
        src,
        tgt,
    )
    .map_err(|e| e.to_string())?;
    HomSimplex::new(map, flag.iter().map(|l| l.iter().copied().collect()).collect())
        .map_err(|e| e.to_string())
}

fn demo_cosk_sphere() -> Report {
    let x = fixtures::cosk_sphere();
    let t1 = triple(&x, &[(3, "sigma")], &[&[0, 3], &[0, 2, 3], &[0, 1, 2, 3]]);
    let t2 = triple(&x, &[(3, "sigma")], &[&[0, 3], &[0, 1, 3], &[0, 1, 2, 3]]);
    let alpha = triple(&x, &[(2, "alpha")], &[&[0, 2], &[0, 1, 2]]);
    let (t1, t2, alpha) = match (t1, t2, alpha) {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return Report::at(EXIT_INPUT, "fixture assembly failed"),
    };
    let t0 = rigidify::necklace::hom_degeneracy(&alpha, 1);
    let t3 = rigidify::necklace::hom_degeneracy(&alpha, 0);
    let faces = [t0, t1, t2, t3];
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if hom_face(&x, &faces[j], i) != hom_face(&x, &faces[i], j - 1) {
                return Report::at(EXIT_INPUT, format!("sphere relation ({i},{j}) fails"));
            }
        }
    }
    let hom = hom_space(&x, 0, 1, 3, 4);
    let refs: Option<Vec<SimplexRef>> = faces.iter().map(|f| hom.ref_of_hom(f)).collect();
    let Some(refs) = refs else {
        return Report::at(EXIT_CAPS, "a sphere face fell outside caps (3, 4)");
    };
    let fillers = find_fillers(&hom.space, &FaceAssignment::sphere(3, refs));
    let computed = if fillers.is_empty() { "no filler" } else { "filled" };
    let expected = "no filler";
    let mut report = Report::at(
        if computed == expected { EXIT_OK } else { EXIT_NEGATIVE },
        format!("{computed}: {}", if computed == expected { "confirmed" } else { "MISMATCH" }),
    );
    report = report.line("a 3-sphere in the hom-space of a 3-truncated complex:");
    for (i, f) in faces.iter().enumerate() {
        report = report.line(format!("face {i}: {}", show_hom(&x, f)));
    }
    report = report.line(format!("expected: {expected}"));
    report = report.line(format!("computed: {computed}"));
    let flags: Vec<String> = faces.iter().map(|f| flag_string(&f.flag)).collect();
    report.data(json!({
        "expected": expected,
        "computed": computed,
        "flags": flags,
        "candidates": hom.space.count_simplices(3),
    }))
}

fn demo_rs_horns() -> Report {
    let nerve = match fixtures::rs_category().nerve(4) {
        Ok(n) => n,
        Err(e) => return Report::at(EXIT_INPUT, e.to_string()),
    };
    let x = &nerve.complex;
    let Some((h1, h2)) = retract_horns(x) else {
        return Report::at(EXIT_INPUT, "horn construction failed");
    };
    let mut lines = Vec::new();
    let mut computed = "both horns unfillable";
    let mut certs = Vec::new();
    for horn in [&h1, &h2] {
        if let Err(e) = horn.validate(x) {
            return Report::at(EXIT_INPUT, format!("not a horn: {e}"));
        }
        lines.push(format!(
            "inner horn of dimension {} missing slot {} in hom({}, {}):",
            horn.dim, horn.missing, horn.src, horn.tgt
        ));
        for (slot, f) in horn.slots().iter().zip(&horn.faces) {
            lines.push(format!("  slot {slot}: {}", show_hom(x, f)));
        }
        let (dc, sc) = horn.natural_caps();
        match certify_unfillable(x, horn, dc, sc) {
            Ok(cert) => lines.push(format!(
                "  no filler among {} candidates under caps ({}, {})",
                cert.candidates, cert.dim_cap, cert.size_cap
            )),
            Err(e) => {
                computed = "a horn filled";
                lines.push(format!("  unexpected: {e}"));
            }
        }
        certs.push(json!({"dim": horn.dim, "missing": horn.missing}));
    }
    let expected = "both horns unfillable";
    let ok = computed == expected;
    Report::at(
        if ok { EXIT_OK } else { EXIT_NEGATIVE },
        format!("{computed}: {}", if ok { "confirmed" } else { "MISMATCH" }),
    )
    .lines(lines)
    .line(format!("expected: {expected}"))
    .line(format!("computed: {computed}"))
    .data(json!({"expected": expected, "computed": computed, "horns": certs}))
}

fn demo_two_triangle(cli: &Cli) -> Report {
    let x = fixtures::two_triangle(4);
    let up_to = cli.dim_cap.max(4).min(x.dim_cap());
    let expected = "not a nerve";
    match detect_nerve(&x, up_to) {
        Ok(NerveDetection::NotNerve(o)) => Report::ok(format!("{expected}: confirmed"))
            .line("two triangles on one boundary form a quasi-category that is not a nerve")
            .line(format!("reason: {}", o.reason))
            .line(format!(
                "witness: an unfillable inner horn of dimension {} (slot {}) in hom({}, {})",
                o.horn.dim, o.horn.missing, o.horn.src, o.horn.tgt
            ))
            .line(format!(
                "certified by searching {} candidates",
                o.certificate.candidates
            ))
            .line(format!("expected: {expected}"))
            .line("computed: not a nerve")
            .data(json!({
                "expected": expected,
                "computed": "not a nerve",
                "reason": o.reason,
            })),
        Ok(NerveDetection::Nerve(_)) => Report::at(
            EXIT_NEGATIVE,
            "nerve: MISMATCH, the fixture was accepted as a nerve",
        ),
        Err(e) => Report::at(EXIT_CAPS, e.to_string()),
    }
}
