//! Command-line front end. `execute` is the whole program as a pure function
//! from argv to (stdout, stderr, exit code), so the binary and the tests
//! share one code path. Reports are built as JSON values with sorted keys and
//! rendered to text from the same value, which keeps both formats carrying
//! identical numbers and byte-identical across runs.

use std::io::Read as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::caps_bounds::{
    b2_zero_bound_check, cy_exact_filling_bounds, kodaira_dimension, novikov_sum,
    stein_filling_bounds, strong_filling_bounds, uniruled_e_sigma, CapInvariants, Sign,
};
use crate::cotangent::{complement_profile, exact_filling_profile, torsion_match};
use crate::error::{Error, Result};
use crate::lattice::{
    build_lattice, classify_indefinite_unimodular, cokernel_group, enumerate_forms_by_cokernel,
    equivalence_search_small, form_invariants, orthogonal_complement, smith_decomposition,
    CokernelGroup, Definiteness, FormInvariants, IntegerLattice, Parity,
};
use crate::lefschetz::{
    cap_b1_from_cycles, cycle_quotient, lefschetz_euler, stein_constant_check, Base,
    MonodromyData,
};
use crate::matrix::{format_rational, parse_rational, Int, Rat};
use crate::plumbing::{
    builtin_graph, chern_coefficients, classify_cap, gs_feasible, intersection_matrix,
    plumbing_topology, AugmentedGraph, ChernSolution, GsMode, Vertex,
};
use crate::surfaces::{
    adjunction_genus, base_genus_bound, min_copies_adjunction, resolve_copies, resolve_pair,
    riemann_hurwitz_bound, ruled_square, uniruled_certificate, weiyi_check, RuledClass,
    SurfaceClass,
};

#[derive(Debug)]
pub struct CliOutcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Positive,
    Negative,
}

impl From<Mode> for GsMode {
    fn from(m: Mode) -> GsMode {
        match m {
            Mode::Positive => GsMode::Positive,
            Mode::Negative => GsMode::Negative,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Neg,
    Zero,
    Pos,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Neg => Sign::Neg,
            SignArg::Zero => Sign::Zero,
            SignArg::Pos => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Parser, Debug)]
#[command(name = "capcalc", version, disable_help_subcommand = true)]
#[command(about = "Exact cap calculus: plumbing caps, lattice invariants, filling bounds")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a plumbing graph from a JSON file ("-" for stdin).
    Analyze {
        file: String,
        /// Concavity feasibility mode to test (requires areas).
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Comma-separated areas applied in vertex order, e.g. "3,1,1,1".
        #[arg(long)]
        with_areas: Option<String>,
        /// Exit with a domain error when the feasibility test fails.
        #[arg(long)]
        require_feasible: bool,
    },
    /// Analyze (or emit) a built-in example graph.
    Example {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        /// Print the graph as JSON instead of analyzing it.
        #[arg(long)]
        emit: bool,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        with_areas: Option<String>,
        #[arg(long)]
        require_feasible: bool,
    },
    /// Lattice operations on symmetric integer forms.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Surface-class arithmetic.
    Surfaces {
        #[command(subcommand)]
        op: SurfacesOp,
    },
    /// Filling-bound engines.
    Bounds {
        #[command(subcommand)]
        op: BoundsOp,
    },
    /// The unit-cotangent-bundle derivation for a genus-g surface.
    Cotangent {
        #[arg(long)]
        genus: u32,
    },
    /// Invariants of a Lefschetz fibration from monodromy JSON ("-" for stdin).
    Lefschetz { file: String },
}

#[derive(Subcommand, Debug)]
enum LatticeOp {
    /// Build a lattice expression and print its Gram matrix and invariants.
    Build { expr: String },
    /// Smith normal form of the Gram matrix of a lattice expression.
    Smith { expr: String },
    /// Cokernel of the Gram matrix of a lattice expression.
    Cokernel { expr: String },
    /// Orthogonal complement of the given vectors ("1,0,...;0,1,...").
    Complement { expr: String, vectors: String },
    /// Classification of an indefinite unimodular form.
    Classify {
        #[arg(allow_negative_numbers = true)]
        rank: usize,
        #[arg(allow_negative_numbers = true)]
        signature: i64,
        #[arg(value_enum)]
        parity: ParityArg,
    },
    /// Bounded search for a unimodular equivalence between two lattices.
    Equivalence {
        expr1: String,
        expr2: String,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Enumerate small symmetric forms grouped by cokernel invariants.
    Enumerate { size: usize, entry_bound: i64 },
}

#[derive(Subcommand, Debug)]
enum SurfacesOp {
    /// Genus from the adjunction formula.
    AdjunctionGenus {
        #[arg(allow_negative_numbers = true)]
        square: i64,
        #[arg(allow_negative_numbers = true)]
        c1_pairing: i64,
    },
    /// Smooth n parallel copies into one surface.
    ResolveCopies {
        genus: u64,
        #[arg(allow_negative_numbers = true)]
        square: i64,
        n: u64,
    },
    /// Smooth two surfaces meeting in m points.
    ResolvePair {
        g1: u64,
        #[arg(allow_negative_numbers = true)]
        s1: i64,
        g2: u64,
        #[arg(allow_negative_numbers = true)]
        s2: i64,
        m: u64,
    },
    /// Smallest copy count making square >= genus - 1.
    MinCopies {
        genus: u64,
        #[arg(allow_negative_numbers = true)]
        square: i64,
    },
    /// Adjunction-inequality certificate test.
    UniruledCertificate {
        genus: u64,
        #[arg(allow_negative_numbers = true)]
        square: i64,
        #[arg(long)]
        nontrivial: bool,
    },
    /// Self-intersection of a class in a blown-up ruled manifold.
    RuledSquare {
        #[arg(long, allow_negative_numbers = true)]
        f: i64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        /// Comma-separated exceptional coefficients.
        #[arg(long, default_value = "")]
        e: String,
    },
    /// Base-genus bound from a positive-square ruled class.
    BaseGenusBound {
        #[arg(long, allow_negative_numbers = true)]
        f: i64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, default_value = "")]
        e: String,
        #[arg(long)]
        surface_genus: u64,
    },
    /// Largest base genus allowed by the covering-degree inequality.
    RiemannHurwitz {
        #[arg(allow_negative_numbers = true)]
        total_genus: i64,
        degree: i64,
    },
    /// Evaluate (K + D)^2 and test nonnegativity.
    Weiyi {
        #[arg(allow_negative_numbers = true)]
        c1_sq: i64,
        #[arg(allow_negative_numbers = true)]
        c1_dot_d: i64,
        #[arg(allow_negative_numbers = true)]
        d_sq: i64,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsOp {
    /// Interval for e + sigma of strong fillings.
    Strong {
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        #[arg(long, allow_negative_numbers = true)]
        sigma: i64,
        #[arg(long, allow_negative_numbers = true)]
        b1: i64,
        #[arg(long, allow_negative_numbers = true)]
        b1_plus_b3: i64,
        #[arg(long, allow_negative_numbers = true)]
        g_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        g_min: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        b1_y: i64,
    },
    /// Stein-filling interval from b1 of the cap.
    Stein {
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        #[arg(long, allow_negative_numbers = true)]
        sigma: i64,
        #[arg(long, allow_negative_numbers = true)]
        b1: i64,
        #[arg(long, allow_negative_numbers = true)]
        b1_plus_b3: i64,
        #[arg(long, allow_negative_numbers = true)]
        g_min: Option<i64>,
    },
    /// Kodaira dimension from the signs of K.[omega] and K.K.
    Kodaira {
        #[arg(value_enum)]
        k_dot_omega: SignArg,
        #[arg(value_enum)]
        k_sq: SignArg,
    },
    /// Betti bounds for exact fillings through a Calabi-Yau cap.
    Cy {
        #[arg(long)]
        genus: u64,
        #[arg(long, allow_negative_numbers = true)]
        square: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        b1_y: i64,
    },
    /// e + sigma of a closed uniruled manifold from its base genus.
    UniruledESigma {
        #[arg(allow_negative_numbers = true)]
        base_genus: i64,
    },
    /// Componentwise (e, sigma) sum, pairs as "e,sigma;e,sigma;...".
    Novikov { parts: String },
    /// Check b2^0 <= b1 of the boundary.
    B2Zero {
        #[arg(allow_negative_numbers = true)]
        b2_zero: i64,
        #[arg(allow_negative_numbers = true)]
        b1_boundary: i64,
    },
}

// ---------------------------------------------------------------------------
// graph file format

#[derive(Debug, Deserialize)]
struct GraphFileVertex {
    id: String,
    genus: u32,
    self_intersection: i64,
    #[serde(default)]
    area: Option<String>,
}

#[derive(Debug, Deserialize)]
struct GraphFile {
    vertices: Vec<GraphFileVertex>,
    edges: Vec<(String, String)>,
}

fn graph_from_file(text: &str) -> Result<AugmentedGraph> {
    let file: GraphFile = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("malformed graph JSON: {e}")))?;
    let mut vertices = Vec::with_capacity(file.vertices.len());
    for v in file.vertices {
        let area = v.area.as_deref().map(parse_rational).transpose()?;
        vertices.push(Vertex { id: v.id, genus: v.genus, self_intersection: v.self_intersection, area });
    }
    AugmentedGraph::new(vertices, &file.edges)
}

fn graph_to_json(g: &AugmentedGraph) -> Value {
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .map(|v| {
            let mut m = Map::new();
            m.insert("id".into(), json!(v.id));
            m.insert("genus".into(), json!(v.genus));
            m.insert("self_intersection".into(), json!(v.self_intersection));
            if let Some(a) = &v.area {
                m.insert("area".into(), json!(format_rational(a)));
            }
            Value::Object(m)
        })
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|&(a, b)| json!([g.vertices()[a].id, g.vertices()[b].id]))
        .collect();
    json!({ "vertices": vertices, "edges": edges })
}

fn parse_area_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|t| parse_rational(t.trim())).collect()
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::input(format!("invalid integer '{}'", t.trim())))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// report rendering

fn rat_json(r: &Rat) -> Value {
    Value::String(format_rational(r))
}

fn rats_json(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_json).collect())
}

fn int_json(i: &Int) -> Value {
    match i64::try_from(i) {
        Ok(v) => json!(v),
        Err(_) => Value::String(i.to_string()),
    }
}

fn invariants_json(inv: &FormInvariants) -> Value {
    let (p, z, m) = inv.signature;
    json!({
        "rank": inv.rank,
        "corank": inv.corank,
        "signature": [p, z, m],
        "sigma": inv.sigma(),
        "parity": match inv.parity { Parity::Even => "even", Parity::Odd => "odd" },
        "determinant": int_json(&inv.determinant),
        "definiteness": definiteness_str(inv.definiteness),
        "unimodular": inv.is_unimodular(),
    })
}

fn definiteness_str(d: Definiteness) -> &'static str {
    match d {
        Definiteness::PositiveDefinite => "positive_definite",
        Definiteness::NegativeDefinite => "negative_definite",
        Definiteness::PositiveSemidefinite => "positive_semidefinite",
        Definiteness::NegativeSemidefinite => "negative_semidefinite",
        Definiteness::Indefinite => "indefinite",
        Definiteness::Zero => "zero",
    }
}

fn cokernel_json(c: &CokernelGroup) -> Value {
    json!({
        "free_rank": c.free_rank,
        "torsion_coefficients": c.torsion_coefficients,
        "torsion_order": c.torsion_order,
        "group": c.to_string(),
    })
}

fn gram_json(l: &IntegerLattice) -> Value {
    Value::Array(
        (0..l.size())
            .map(|i| Value::Array((0..l.size()).map(|j| int_json(l.gram().get(i, j))).collect()))
            .collect(),
    )
}

/// Deterministic plain-text rendering of a JSON report.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}: {}\n", inline(val)));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", inline(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn finish(report: Value, format: Format) -> CliOutcome {
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            render_text(&report, 0, &mut s);
            s
        }
    };
    CliOutcome { stdout, stderr: String::new(), code: 0 }
}

// ---------------------------------------------------------------------------
// entry point

pub fn execute<I, S>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                CliOutcome { stdout: rendered, stderr: String::new(), code: 0 }
            } else {
                CliOutcome { stdout: String::new(), stderr: rendered, code: 1 }
            };
        }
    };
    let format = cli.format;
    match run(cli.command, format) {
        Ok(outcome) => outcome,
        Err(e) => CliOutcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn read_input(file: &str) -> Result<String> {
    if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::input(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| Error::input(format!("cannot read '{file}': {e}")))
    }
}

fn run(command: Command, format: Format) -> Result<CliOutcome> {
    match command {
        Command::Analyze { file, mode, with_areas, require_feasible } => {
            let mut graph = graph_from_file(&read_input(&file)?)?;
            if let Some(a) = with_areas {
                graph = graph.with_areas(&parse_area_list(&a)?)?;
            }
            let report = analyze_report(&graph, mode, require_feasible)?;
            Ok(finish(report, format))
        }
        Command::Example { name, params, emit, mode, with_areas, require_feasible } => {
            let mut graph = builtin_graph(&name, &params)?;
            if let Some(a) = with_areas {
                graph = graph.with_areas(&parse_area_list(&a)?)?;
            }
            if emit {
                let mut s = serde_json::to_string_pretty(&graph_to_json(&graph))
                    .expect("graph serializes");
                s.push('\n');
                return Ok(CliOutcome { stdout: s, stderr: String::new(), code: 0 });
            }
            let report = analyze_report(&graph, mode, require_feasible)?;
            Ok(finish(report, format))
        }
        Command::Lattice { op } => Ok(finish(lattice_report(op)?, format)),
        Command::Surfaces { op } => Ok(finish(surfaces_report(op)?, format)),
        Command::Bounds { op } => Ok(finish(bounds_report(op)?, format)),
        Command::Cotangent { genus } => Ok(finish(cotangent_report(genus)?, format)),
        Command::Lefschetz { file } => {
            let data: MonodromyData = serde_json::from_str(&read_input(&file)?)
                .map_err(|e| Error::input(format!("malformed monodromy JSON: {e}")))?;
            Ok(finish(lefschetz_report(data.validated()?)?, format))
        }
    }
}

fn analyze_report(
    graph: &AugmentedGraph,
    mode: Option<Mode>,
    require_feasible: bool,
) -> Result<Value> {
    let topo = plumbing_topology(graph);
    let q = intersection_matrix(graph);
    let inv = form_invariants(&q);
    let classification = classify_cap(graph);

    let chern = match chern_coefficients(graph) {
        ChernSolution::Unique(x) => json!({ "kind": "unique", "coefficients": rats_json(&x) }),
        ChernSolution::Affine { particular, kernel } => json!({
            "kind": "affine",
            "particular": rats_json(&particular),
            "kernel": Value::Array(kernel.iter().map(|k| rats_json(k)).collect()),
        }),
        ChernSolution::Inconsistent => json!({ "kind": "inconsistent" }),
    };

    let has_areas = graph.vertices().iter().all(|v| v.area.is_some());
    let gs = if has_areas {
        let m = mode.unwrap_or(Mode::Positive);
        let result = gs_feasible(graph, m.into())?;
        if require_feasible && result.is_none() {
            return Err(Error::domain(format!(
                "no {} solution of the concavity system exists",
                match m {
                    Mode::Positive => "strictly positive",
                    Mode::Negative => "nonpositive",
                }
            )));
        }
        json!({
            "mode": match m { Mode::Positive => "positive", Mode::Negative => "negative" },
            "feasible": result.is_some(),
            "solution": result.map(|z| rats_json(&z)).unwrap_or(Value::Null),
        })
    } else {
        if mode.is_some() {
            return Err(Error::input("the feasibility test needs areas on every vertex"));
        }
        if require_feasible {
            return Err(Error::input("--require-feasible needs areas on every vertex"));
        }
        json!({ "skipped": "no areas declared" })
    };

    let certificates: Vec<Value> = classification
        .certificates
        .iter()
        .map(|c| json!({ "subject": c.subject, "rule": c.rule }))
        .collect();

    Ok(json!({
        "graph": {
            "vertices": graph.vertices().len(),
            "edges": graph.edges().len(),
            "total_genus": graph.total_genus(),
        },
        "topology": {
            "e": topo.e,
            "sigma": topo.sigma,
            "e_plus_sigma": topo.e + topo.sigma,
            "betti": [topo.betti.0, topo.betti.1, topo.betti.2, topo.betti.3],
            "boundary_b1": topo.boundary_b1,
            "boundary_h1": cokernel_json(&topo.boundary_h1),
        },
        "intersection_form": invariants_json(&inv),
        "chern": chern,
        "gs": gs,
        "classification": {
            "calabi_yau": classification.is_calabi_yau,
            "uniruled": classification.uniruled,
            "adjunction": classification.adjunction,
            "concave_after_deformation": classification.concave.as_str(),
            "certificates": certificates,
            "c1_dot_symplectic_class": classification
                .gs_pairing
                .as_ref()
                .map(rat_json)
                .unwrap_or(Value::Null),
        },
    }))
}

fn parse_vectors(spec: &str, dim: usize) -> Result<Vec<Vec<Int>>> {
    spec.split(';')
        .map(|row| {
            let v = parse_i64_list(row)?;
            if v.len() != dim {
                return Err(Error::input(format!(
                    "vector '{row}' must have {dim} coordinates"
                )));
            }
            Ok(v.into_iter().map(Int::from).collect())
        })
        .collect()
}

fn lattice_report(op: LatticeOp) -> Result<Value> {
    match op {
        LatticeOp::Build { expr } => {
            let l = build_lattice(&expr)?;
            Ok(json!({
                "expr": expr,
                "gram": gram_json(&l),
                "invariants": invariants_json(&form_invariants(&l)),
            }))
        }
        LatticeOp::Smith { expr } => {
            let l = build_lattice(&expr)?;
            let snf = smith_decomposition(l.gram());
            Ok(json!({
                "expr": expr,
                "diagonal": Value::Array(snf.d.diagonal().iter().map(int_json).collect()),
                "rank": snf.rank(),
            }))
        }
        LatticeOp::Cokernel { expr } => {
            let l = build_lattice(&expr)?;
            Ok(json!({
                "expr": expr,
                "cokernel": cokernel_json(&cokernel_group(l.gram())),
            }))
        }
        LatticeOp::Complement { expr, vectors } => {
            let l = build_lattice(&expr)?;
            let vs = parse_vectors(&vectors, l.size())?;
            let comp = orthogonal_complement(&l, &vs)?;
            let inv = form_invariants(&comp);
            let name = if inv.is_unimodular() && inv.corank == 0 && inv.rank > 0 {
                classify_indefinite_unimodular(inv.rank, inv.sigma(), inv.parity)
                    .map(|c| Value::String(c.to_string()))
                    .unwrap_or(Value::Null)
            } else {
                Value::Null
            };
            Ok(json!({
                "expr": expr,
                "complement_gram": gram_json(&comp),
                "invariants": invariants_json(&inv),
                "classification": name,
            }))
        }
        LatticeOp::Classify { rank, signature, parity } => {
            let p = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            let c = classify_indefinite_unimodular(rank, signature, p)?;
            Ok(json!({
                "rank": rank,
                "signature": signature,
                "classification": c.to_string(),
            }))
        }
        LatticeOp::Equivalence { expr1, expr2, bound } => {
            let l1 = build_lattice(&expr1)?;
            let l2 = build_lattice(&expr2)?;
            let t = equivalence_search_small(&l1, &l2, bound);
            Ok(json!({
                "equivalent_within_bound": t.is_some(),
                "bound": bound,
                "change_of_basis": t
                    .map(|m| Value::Array(
                        (0..m.nrows())
                            .map(|i| Value::Array((0..m.ncols()).map(|j| int_json(m.get(i, j))).collect()))
                            .collect(),
                    ))
                    .unwrap_or(Value::Null),
            }))
        }
        LatticeOp::Enumerate { size, entry_bound } => {
            let e = enumerate_forms_by_cokernel(size, entry_bound)?;
            Ok(json!({
                "size": e.size,
                "entry_bound": e.entry_bound,
                "total_forms": e.total_forms,
                "groups": e.groups,
            }))
        }
    }
}

fn surfaces_report(op: SurfacesOp) -> Result<Value> {
    match op {
        SurfacesOp::AdjunctionGenus { square, c1_pairing } => {
            let g = adjunction_genus(square, c1_pairing)?;
            Ok(json!({ "genus": g, "square": square, "c1_pairing": c1_pairing }))
        }
        SurfacesOp::ResolveCopies { genus, square, n } => {
            let r = resolve_copies(&SurfaceClass { genus, square }, n)?;
            Ok(json!({ "genus": r.genus, "square": r.square, "copies": n }))
        }
        SurfacesOp::ResolvePair { g1, s1, g2, s2, m } => {
            let r = resolve_pair(
                &SurfaceClass { genus: g1, square: s1 },
                &SurfaceClass { genus: g2, square: s2 },
                m,
            )?;
            Ok(json!({ "genus": r.genus, "square": r.square, "intersections": m }))
        }
        SurfacesOp::MinCopies { genus, square } => {
            let n = min_copies_adjunction(&SurfaceClass { genus, square })?;
            Ok(json!({ "min_copies": n }))
        }
        SurfacesOp::UniruledCertificate { genus, square, nontrivial } => {
            let ok = uniruled_certificate(&SurfaceClass { genus, square }, nontrivial);
            Ok(json!({ "certificate": ok }))
        }
        SurfacesOp::RuledSquare { f, s, e } => {
            let c = RuledClass { base_genus: 0, coeff_f: f, coeff_s: s, coeff_e: parse_i64_list(&e)? };
            Ok(json!({ "square": ruled_square(&c) }))
        }
        SurfacesOp::BaseGenusBound { f, s, e, surface_genus } => {
            let c = RuledClass { base_genus: 0, coeff_f: f, coeff_s: s, coeff_e: parse_i64_list(&e)? };
            let b = base_genus_bound(&c, surface_genus)?;
            Ok(json!({ "degree": b.degree, "base_genus_upper": b.base_genus_upper }))
        }
        SurfacesOp::RiemannHurwitz { total_genus, degree } => {
            let h = riemann_hurwitz_bound(total_genus, degree)?;
            Ok(json!({ "base_genus_upper": h }))
        }
        SurfacesOp::Weiyi { c1_sq, c1_dot_d, d_sq } => {
            let w = weiyi_check(c1_sq, c1_dot_d, d_sq);
            Ok(json!({
                "value": w.value,
                "satisfied": w.satisfied,
                "note": "hypotheses on exceptional-class pairings are not checked here",
            }))
        }
    }
}

fn bounds_report(op: BoundsOp) -> Result<Value> {
    match op {
        BoundsOp::Strong { e, sigma, b1, b1_plus_b3, g_max, g_min, b1_y } => {
            let cap = CapInvariants {
                e,
                sigma,
                b1,
                b1_plus_b3,
                g_max: Some(g_max),
                g_min: Some(g_min),
                g_s_upper: None,
            }
            .validated()?;
            let b = strong_filling_bounds(&cap, b1_y)?;
            Ok(json!({
                "alpha": cap.alpha(),
                "e_plus_sigma_interval": [b.e_plus_sigma_interval.0, b.e_plus_sigma_interval.1],
                "b1_plus_b3_upper": b.b1_plus_b3_upper,
                "notes": b.notes,
            }))
        }
        BoundsOp::Stein { e, sigma, b1, b1_plus_b3, g_min } => {
            let cap = CapInvariants {
                e,
                sigma,
                b1,
                b1_plus_b3,
                g_max: None,
                g_min,
                g_s_upper: None,
            };
            let s = stein_filling_bounds(&cap)?;
            Ok(json!({
                "alpha": cap.alpha(),
                "g_stein_max_upper": s.g_stein_max_upper,
                "e_plus_sigma_interval": [
                    s.bounds.e_plus_sigma_interval.0,
                    s.bounds.e_plus_sigma_interval.1
                ],
                "notes": s.bounds.notes,
            }))
        }
        BoundsOp::Kodaira { k_dot_omega, k_sq } => {
            let k = kodaira_dimension(k_dot_omega.into(), k_sq.into())?;
            Ok(json!({ "kodaira_dimension": k.as_str() }))
        }
        BoundsOp::Cy { genus, square, b1_y } => {
            let b = cy_exact_filling_bounds(&SurfaceClass { genus, square }, (0, 1, 0), b1_y)?;
            Ok(json!({
                "c1_square_lower": b.c1_square_lower,
                "uniruled_profile": [b.uniruled_profile.0, b.uniruled_profile.1],
                "cy_profile": [b.cy_profile.0, b.cy_profile.1],
                "x_betti_upper": [b.x_betti_upper.0, b.x_betti_upper.1, b.x_betti_upper.2],
                "filling_betti_upper": [
                    b.filling_betti_upper.0,
                    b.filling_betti_upper.1,
                    b.filling_betti_upper.2
                ],
                "notes": b.notes,
            }))
        }
        BoundsOp::UniruledESigma { base_genus } => {
            Ok(json!({ "e_plus_sigma": uniruled_e_sigma(base_genus)? }))
        }
        BoundsOp::Novikov { parts } => {
            let pairs: Vec<(i64, i64)> = parts
                .split(';')
                .map(|p| {
                    let nums = parse_i64_list(p)?;
                    if nums.len() != 2 {
                        return Err(Error::input(format!("'{p}' is not an e,sigma pair")));
                    }
                    Ok((nums[0], nums[1]))
                })
                .collect::<Result<_>>()?;
            let (e, sigma) = novikov_sum(&pairs)?;
            Ok(json!({ "e": e, "sigma": sigma, "e_plus_sigma": e + sigma }))
        }
        BoundsOp::B2Zero { b2_zero, b1_boundary } => {
            Ok(json!({ "satisfied": b2_zero_bound_check(b2_zero, b1_boundary) }))
        }
    }
}

fn cotangent_report(genus: u32) -> Result<Value> {
    let data = crate::cotangent::cap_lattice_data(genus)?;
    let ambient = crate::lattice::k3();
    let profile = complement_profile(genus)?;
    let filling = exact_filling_profile(genus)?;
    let torsion = torsion_match(genus, 1)?;
    let torsion_reject = torsion_match(genus, 2)?;
    Ok(json!({
        "genus": genus,
        "cap": {
            "rank": data.cap_form.size(),
            "l_square": int_json(&ambient.pair(&data.l, &data.l)),
            "orth_class_square": int_json(&ambient.pair(&data.orth_class, &data.orth_class)),
            "e": filling.cap_e,
            "sigma": filling.cap_sigma,
        },
        "complement": {
            "first": profile.first_name,
            "first_invariants": invariants_json(&profile.first_invariants),
            "second": profile.second_name,
            "second_invariants": invariants_json(&profile.second_invariants),
        },
        "filling": {
            "e": filling.e,
            "sigma": filling.sigma,
            "H1": filling.h1,
            "H2": filling.h2,
            "H3": filling.h3,
            "generator_square": filling.generator_square,
            "c1_vanishes": filling.c1_vanishes,
            "notes": filling.notes,
        },
        "novikov": {
            "e_total": filling.cap_e + filling.e,
            "sigma_total": filling.cap_sigma + filling.sigma,
        },
        "torsion_check": {
            "k1_accepted": torsion.accept,
            "k1_group": torsion.computed.to_string(),
            "k2_accepted": torsion_reject.accept,
            "k2_group": torsion_reject.computed.to_string(),
        },
    }))
}

fn lefschetz_report(data: MonodromyData) -> Result<Value> {
    let n = data.cycles.len() as i64;
    let b1 = cap_b1_from_cycles(data.g, &data.cycles)?;
    let quotient = cycle_quotient(data.g, &data.cycles)?;
    let e_disk = lefschetz_euler(data.g as i64, n, Base::Disk, data.k as i64)?;
    let e_sphere = lefschetz_euler(data.g as i64, n, Base::Sphere, 0)?;
    Ok(json!({
        "g": data.g,
        "k": data.k,
        "exponents": data.exponents,
        "singular_fibers": n,
        "euler_disk_base": e_disk,
        "euler_sphere_base": e_sphere,
        "cap_b1": b1,
        "cycle_quotient": cokernel_json(&quotient),
        "stein_constant_e_plus_sigma": stein_constant_check(b1 as i64),
    }))
}
