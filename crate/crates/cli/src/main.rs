use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use khcube::burnside::{face_coherence, face_paths, LadybugConvention};
use khcube::complex::HomologyTable;
use khcube::cube::{EdgeKind, FaceShape, ResolutionCube};
use khcube::diagram::{parse_pd, ArcId, LinkDiagram, MoveSpec};
use khcube::khovanov::khovanov_complex;
use khcube::lab;
use khcube::spin::{FaceLabel, SpinMove, SpinProjection};

#[derive(Parser, Debug)]
#[command(name = "khcube", version, about = "Khovanov homology from the cube of resolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Inline PD code, e.g. "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]".
    #[arg(long, global = true, conflicts_with = "file")]
    pd: Option<String>,
    /// File holding a PD code or a JSON diagram document.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[arg(long, global = true, default_value = "right")]
    ladybug: LadybugConvention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer Khovanov homology of the diagram.
    Homology,
    /// Apply Reidemeister moves and compare homology before and after each.
    Invariance {
        /// Moves separated by ';' or newlines, e.g. "R2 over=1 under=4; R1+ arc=2".
        #[arg(long, conflicts_with = "script")]
        moves: Option<String>,
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Dump the resolution cube and check face coherence.
    Cube,
    /// Spin face labels, admissibility and the admissible fix-up.
    Spin {
        /// JSON file with edge_bits, crossing_bits and component_spin.
        #[arg(long, conflicts_with = "random")]
        bits: Option<PathBuf>,
        /// Draw the bits from the seeded generator.
        #[arg(long)]
        random: bool,
    },
    /// Torus matrices, word functoriality, the Λ[x] Dehn twist and the operad probe.
    Lab {
        #[arg(long, default_value_t = 6)]
        word_length: usize,
        #[arg(long, default_value_t = 5)]
        max_value: i64,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
}

/// Input errors exit with 2; failed property checks come back as a report
/// with `ok == false` and exit with 1.
enum Failure {
    Input(String),
}

struct Report {
    json: String,
    table: String,
    ok: bool,
}

impl Report {
    fn new<T: Serialize>(value: &T, table: String, ok: bool) -> Self {
        Report {
            json: serde_json::to_string_pretty(value).expect("reports serialize"),
            table,
            ok,
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn load_diagram(cli: &Cli) -> Result<LinkDiagram, Failure> {
    let (text, origin) = match (&cli.pd, &cli.file) {
        (Some(pd), _) => (pd.clone(), "--pd".to_string()),
        (None, Some(path)) => (
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
            path.display().to_string(),
        ),
        (None, None) => return Err(Failure::Input("no diagram given: pass --pd or --file".into())),
    };
    let parsed = if text.trim_start().starts_with('{') {
        LinkDiagram::from_json(&text)
    } else {
        parse_pd(&text)
    };
    parsed.map_err(|e| Failure::Input(format!("{origin}: {e}")))
}

fn homology(d: &LinkDiagram) -> Result<HomologyTable, Failure> {
    khovanov_complex(d).and_then(|c| c.homology().map_err(Into::into)).map_err(input)
}

fn cmd_homology(cli: &Cli) -> Result<Report, Failure> {
    let d = load_diagram(cli)?;
    let table = homology(&d)?;
    Ok(Report::new(&table, table.to_text(), true))
}

#[derive(Serialize)]
struct InvarianceStep {
    #[serde(rename = "move")]
    mv: String,
    crossings: usize,
    homology: HomologyTable,
    equal_to_start: bool,
}

#[derive(Serialize)]
struct InvarianceReport {
    start: HomologyTable,
    steps: Vec<InvarianceStep>,
    invariant: bool,
}

fn cmd_invariance(cli: &Cli, moves: &Option<String>, script: &Option<PathBuf>) -> Result<Report, Failure> {
    let text = match (moves, script) {
        (Some(m), _) => m.clone(),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(Failure::Input("no moves given: pass --moves or --script".into())),
    };
    let mut d = load_diagram(cli)?;
    let start = homology(&d)?;
    let mut steps = Vec::new();
    for (line, token) in text.split([';', '\n']).enumerate() {
        let token = token.trim();
        if token.is_empty() || token.starts_with('#') {
            continue;
        }
        let mv = MoveSpec::parse(token).map_err(|e| Failure::Input(format!("move {}: {e}", line + 1)))?;
        d = d
            .apply_move(&mv)
            .map_err(|e| Failure::Input(format!("move {} ({token}): {e}", line + 1)))?;
        let h = homology(&d)?;
        steps.push(InvarianceStep {
            mv: token.to_string(),
            crossings: d.crossing_count(),
            equal_to_start: h == start,
            homology: h,
        });
    }
    let invariant = steps.iter().all(|s| s.equal_to_start);
    let mut table = format!("start\n{}", start.to_text());
    for s in &steps {
        table += &format!(
            "\n{} ({} crossings): {}\n",
            s.mv,
            s.crossings,
            if s.equal_to_start { "equal" } else { "DIFFERENT" }
        );
        if !s.equal_to_start {
            table += &s.homology.to_text();
        }
    }
    let report = InvarianceReport { start, steps, invariant };
    Ok(Report::new(&report, table, invariant))
}

#[derive(Serialize)]
struct VertexRow {
    bits: String,
    circles: usize,
}

#[derive(Serialize)]
struct EdgeRow {
    from: String,
    coordinate: usize,
    kind: &'static str,
}

#[derive(Serialize)]
struct FaceRow {
    base: String,
    i: usize,
    j: usize,
    shape: FaceShape,
    coherent: bool,
    commutes: bool,
}

#[derive(Serialize)]
struct CubeReport {
    dimension: usize,
    convention: LadybugConvention,
    vertices: Vec<VertexRow>,
    edges: Vec<EdgeRow>,
    faces: Vec<FaceRow>,
    ladybug_faces: usize,
    all_coherent: bool,
}

fn bit_string(bits: Vec<u8>) -> String {
    bits.iter().map(|b| b.to_string()).collect()
}

fn cmd_cube(cli: &Cli) -> Result<Report, Failure> {
    let d = load_diagram(cli)?;
    let cube = ResolutionCube::new(&d).map_err(input)?;
    let vertices: Vec<VertexRow> = cube
        .vertices()
        .map(|v| VertexRow {
            bits: bit_string(v.bits()),
            circles: cube.resolution(v).circle_count(),
        })
        .collect();
    let edges: Vec<EdgeRow> = cube
        .edges()
        .iter()
        .map(|e| EdgeRow {
            from: bit_string(e.from.bits()),
            coordinate: e.coordinate,
            kind: match e.kind {
                EdgeKind::Merge { .. } => "merge",
                EdgeKind::Split { .. } => "split",
            },
        })
        .collect();
    let faces: Vec<FaceRow> = cube
        .faces()
        .iter()
        .map(|f| {
            let (pi, pj) = face_paths(&cube, f);
            let commutes = pi.cardinality() == pj.cardinality();
            FaceRow {
                base: bit_string(f.base.bits()),
                i: f.i,
                j: f.j,
                shape: f.shape,
                coherent: face_coherence(&cube, f, cli.ladybug).is_ok(),
                commutes,
            }
        })
        .collect();
    let ladybug_faces = faces.iter().filter(|f| f.shape == FaceShape::Ladybug).count();
    let all_coherent = faces.iter().all(|f| f.coherent && f.commutes);
    let mut table = format!(
        "dimension {}  vertices {}  edges {}  faces {}  ladybug {}  convention {}\n",
        cube.dimension(),
        vertices.len(),
        edges.len(),
        faces.len(),
        ladybug_faces,
        cli.ladybug
    );
    for v in &vertices {
        table += &format!("vertex {:>12}  circles {}\n", v.bits, v.circles);
    }
    for e in &edges {
        table += &format!("edge   {:>12}  +e{}  {}\n", e.from, e.coordinate, e.kind);
    }
    for f in &faces {
        table += &format!(
            "face   {:>12}  ({},{})  {:?}  {}\n",
            f.base,
            f.i,
            f.j,
            f.shape,
            if f.coherent && f.commutes { "coherent" } else { "INCOHERENT" }
        );
    }
    let report = CubeReport {
        dimension: cube.dimension(),
        convention: cli.ladybug,
        vertices,
        edges,
        faces,
        ladybug_faces,
        all_coherent,
    };
    Ok(Report::new(&report, table, all_coherent))
}

#[derive(Deserialize)]
struct SpinBits {
    edge_bits: BTreeMap<ArcId, bool>,
    crossing_bits: Vec<bool>,
    component_spin: Vec<bool>,
}

#[derive(Serialize)]
struct SpinReport {
    face_labels: Vec<FaceLabel>,
    periodic_faces: Vec<usize>,
    admissible: bool,
    moves: Vec<SpinMove>,
    result_admissible: bool,
    result: SpinProjection,
}

fn cmd_spin(cli: &Cli, bits: &Option<PathBuf>, random: bool) -> Result<Report, Failure> {
    let d = load_diagram(cli)?;
    let sp = match bits {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let b: SpinBits =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            SpinProjection::new(d, b.edge_bits, b.crossing_bits, b.component_spin).map_err(input)?
        }
        None if random => SpinProjection::random(d, &mut ChaCha8Rng::seed_from_u64(cli.seed)),
        None => SpinProjection::zero(d),
    };
    let labels = sp.face_labels();
    let (moves, result) = sp.make_admissible();
    let result_admissible = result.is_admissible();
    let mut table = String::from("face  label\n");
    for (k, l) in labels.labels.iter().enumerate() {
        table += &format!("{k:>4}  {l:?}\n");
    }
    table += &format!("admissible: {}\n", sp.is_admissible());
    let script: Vec<String> = moves.iter().map(|m| format!("{:?} arc={}", m.kind, m.arc)).collect();
    table += &format!("fix-up: {}\n", if script.is_empty() { "none".into() } else { script.join("; ") });
    table += &format!("after fix-up admissible: {result_admissible}\n");
    let report = SpinReport {
        periodic_faces: labels.periodic_faces(),
        face_labels: labels.labels,
        admissible: sp.is_admissible(),
        moves,
        result_admissible,
        result,
    };
    Ok(Report::new(&report, table, result_admissible))
}

#[derive(Serialize)]
struct MatrixRow {
    case: lab::TorusCase,
    entries: String,
    unitary: bool,
    symmetric: bool,
}

#[derive(Serialize)]
struct LabReport {
    matrices: Vec<MatrixRow>,
    group_table: Vec<Vec<Option<usize>>>,
    closed: bool,
    words: lab::WordReport,
    dehn: lab::DehnReport,
    operad: lab::OperadReport,
}

fn cmd_lab(word_length: usize, max_value: i64, max_arity: usize) -> Result<Report, Failure> {
    let matrices: Vec<MatrixRow> = lab::TORUS_CASES
        .iter()
        .map(|&c| {
            let m = c.matrix();
            MatrixRow {
                case: c,
                entries: m.to_string().trim_end().replace('\n', " "),
                unitary: m.is_unitary(),
                symmetric: m.is_symmetric(),
            }
        })
        .collect();
    let group_table = lab::group_table();
    let closed = group_table.iter().flatten().all(Option::is_some);
    let words = lab::word_functoriality(word_length);
    let dehn = lab::dehn_demo();
    let operad = lab::operad_probe(max_value, max_arity);
    let ok = closed && matrices.iter().all(|m| m.unitary) && words.failures.is_empty();

    let names = ["I", "swap", "F", "Fbar"];
    let mut table = String::new();
    for m in &matrices {
        table += &format!("{:?}: {}  unitary {}  symmetric {}\n", m.case, m.entries, m.unitary, m.symmetric);
    }
    table += "\n   ·  ";
    table += &names.map(|n| format!("{n:>5}")).join("");
    table += "\n";
    for (r, row) in group_table.iter().enumerate() {
        table += &format!("{:>5} ", names[r]);
        for e in row {
            table += &format!("{:>5}", e.map_or("-", |k| names[k]));
        }
        table += "\n";
    }
    table += &format!(
        "\nwords up to length {word_length}: {} checked, {} failures\n",
        words.words_checked,
        words.failures.len()
    );
    let composite: Vec<String> = dehn.composite.iter().map(|(w, c)| format!("{c}{w}")).collect();
    table += &format!(
        "m∘Δ(1) = {}  paths {}  swap nontrivial {}  swap² = id {}\n",
        composite.join(" + "),
        dehn.paths.join(", "),
        !dehn.swap_is_identity,
        dehn.swap_squared_is_identity
    );
    table += &format!(
        "operad: {} cases, {} failures, associative {}\n",
        operad.cases_checked, operad.failures, operad.associative
    );
    if let Some(w) = &operad.witness {
        table += &format!(
            "  witness x={} ys={:?} zs={:?}: {} vs {}\n",
            w.x, w.ys, w.zs, w.grafted_after, w.grafted_before
        );
    }
    if let Some((x, ys, v)) = &operad.negative_witness {
        table += &format!("  leaves the naturals: x={x} ys={ys:?} gives {v}\n");
    }
    let report = LabReport {
        matrices,
        group_table,
        closed,
        words,
        dehn,
        operad,
    };
    Ok(Report::new(&report, table, ok))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Homology => cmd_homology(cli),
        Command::Invariance { moves, script } => cmd_invariance(cli, moves, script),
        Command::Cube => cmd_cube(cli),
        Command::Spin { bits, random } => cmd_spin(cli, bits, *random),
        Command::Lab {
            word_length,
            max_value,
            max_arity,
        } => cmd_lab(*word_length, *max_value, *max_arity),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.json),
                Format::Table => print!("{}", report.table),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
