//! Command-line front end: generation, property checks, isomorphism,
//! reachability, cuts, classification and the acceptance suite.

pub mod document;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chdigraph::ball::DEFAULT_MARGIN;
use chdigraph::classify::classify_digraph;
use chdigraph::cuts::{ball_cut_system, build_structure_tree, Check, CutSystem};
use chdigraph::families::{generate_with_order, CyclicOrder};
use chdigraph::reach::{all_classes, reachability_class, reachability_digraph};
use chdigraph::symmetry::{
    check_arc_transitivity, check_homogeneity, check_local_c_homogeneity, Mode, SymmetryVerdict, Witness,
    DEFAULT_MAX_SIZE,
};
use chdigraph::{BallDigraph, FamilySpec};
use clap::{Parser, Subcommand, ValueEnum};

use document::{ball_to_dot, DigraphDocument};

/// Exit code for usage and input errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "chdg", version, about = "Connected-homogeneous digraph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Prop {
    TriangleFree,
    CHomog,
    Homog,
    ArcTrans,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a catalog member, e.g. "M(kappa=3,m=2,r=4)"
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Seed for the cyclic orders of M, or the seed of generic_bipartite
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a property of a stored digraph
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        prop: Prop,
        #[arg(long, default_value_t = DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Largest arc length for arc-transitivity
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: usize,
    },
    /// Decide isomorphism of two stored digraphs
    Iso {
        first: PathBuf,
        second: PathBuf,
        /// Map boundary vertices only to boundary vertices
        #[arg(long)]
        respect_boundary: bool,
    },
    /// Reachability classes and the reachability digraph
    Reach {
        file: PathBuf,
        /// Report the class of this edge, given as "u,v"
        #[arg(long, value_parser = parse_edge)]
        edge: Option<(usize, usize)>,
    },
    /// Cut system, blocks and structure tree
    Cuts {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_order: usize,
        /// Write the structure tree as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Locate a digraph in the catalog
    Classify { file: PathBuf },
    /// Run the acceptance suite
    VerifyPaper,
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s.split_once(',').ok_or("expected u,v")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad vertex {t:?}: {e}"));
    Ok((parse(u)?, parse(v)?))
}

/// A failure carrying its exit code.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line `args` (program name first) and returns the exit
/// code; output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Gen {
            spec,
            output,
            format,
            seed,
        } => gen(&spec, output.as_deref(), format, seed, out),
        Command::Check {
            file,
            prop,
            max_size,
            k,
            margin,
        } => check(&file, prop, max_size, k, margin, out),
        Command::Iso {
            first,
            second,
            respect_boundary,
        } => iso(&first, &second, respect_boundary, out),
        Command::Reach { file, edge } => reach(&file, edge, out),
        Command::Cuts { file, max_order, dot } => cuts(&file, max_order, dot.as_deref(), out),
        Command::Classify { file } => classify(&file, out),
        Command::VerifyPaper => verify_paper(out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure(1, format!("cannot write output: {e}")))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        emit($out, &format!("{}\n", format_args!($($arg)*)))
    };
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<BallDigraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = DigraphDocument::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    doc.to_ball().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn gen(spec: &str, output: Option<&Path>, format: OutputFormat, seed: Option<u64>, out: &mut dyn Write) -> CmdResult {
    let mut parsed: FamilySpec = spec.parse().map_err(|e| usage(format!("{e}")))?;
    let mut order = CyclicOrder::Generation;
    if let Some(s) = seed {
        match &mut parsed {
            FamilySpec::M { .. } => order = CyclicOrder::Seeded(s),
            FamilySpec::GenericBipartite { seed: own, .. } => {
                if spec.contains("seed=") && *own != s {
                    return Err(usage(format!("--seed {s} conflicts with seed={own} in the spec")));
                }
                *own = s;
            }
            _ => return Err(usage(format!("--seed has no effect on {}", parsed.kind_name()))),
        }
    }
    let generated = generate_with_order(&parsed, order).map_err(|e| usage(format!("{e}")))?;
    let text = match format {
        OutputFormat::Json => {
            let mut doc = DigraphDocument::from_ball(&generated.ball);
            doc.spec = Some(generated.spec.to_string());
            doc.notes = generated.notes.clone();
            if let CyclicOrder::Seeded(s) = order {
                doc.notes.push(format!("cyclic orders drawn from seed {s}"));
            }
            doc.to_json()
        }
        OutputFormat::Dot => ball_to_dot(&generated.ball),
    };
    match output {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(0)
}

fn labels(b: &BallDigraph, vs: &[usize]) -> String {
    let names: Vec<String> = vs.iter().map(|&v| b.digraph.label(v)).collect();
    format!("[{}]", names.join(", "))
}

fn describe_witness(b: &BallDigraph, w: &Witness) -> String {
    match w {
        Witness::Extension { x, y, map } => {
            let pairs: Vec<String> = map
                .pairs()
                .map(|(a, c)| format!("{}->{}", b.digraph.label(a), b.digraph.label(c)))
                .collect();
            format!(
                "isomorphism {} -> {} ({}) does not extend",
                labels(b, x),
                labels(b, y),
                pairs.join(", ")
            )
        }
        Witness::Arcs { base, other } => {
            format!("no automorphism maps arc {} onto {}", labels(b, base), labels(b, other))
        }
    }
}

fn report_verdict(b: &BallDigraph, v: &SymmetryVerdict, out: &mut dyn Write) -> Result<bool, Failure> {
    let mut line = format!("{:?}: {} ({} examined", v.property, v.outcome, v.examined);
    if let Some(s) = v.max_size {
        line += &format!(", max size {s}");
    }
    if let Some(m) = v.margin {
        line += &format!(", margin {m}");
    }
    if v.vacuous {
        line += ", vacuous";
    }
    line.push(')');
    say!(out, "{line}")?;
    if let Some(w) = &v.witness {
        say!(out, "witness: {}", describe_witness(b, w))?;
    }
    Ok(v.outcome.passed())
}

fn check(file: &Path, prop: Prop, max_size: usize, k: usize, margin: usize, out: &mut dyn Write) -> CmdResult {
    let b = load(file)?;
    let passed = match prop {
        Prop::TriangleFree => {
            let count = b.digraph.triangle_count();
            say!(out, "triangles: {count}")?;
            say!(out, "triangle-free: {}", if count == 0 { "pass" } else { "fail" })?;
            count == 0
        }
        Prop::Homog => {
            if !b.is_exact() {
                return Err(usage("homogeneity needs a finite digraph, not a truncated ball"));
            }
            let v = check_homogeneity(&b.digraph, Mode::Homogeneous, max_size);
            report_verdict(&b, &v, out)?
        }
        Prop::CHomog => {
            let v = if b.is_exact() {
                check_homogeneity(&b.digraph, Mode::CHomogeneous, max_size)
            } else {
                check_local_c_homogeneity(&b, max_size, margin).map_err(|e| usage(format!("{e}")))?
            };
            report_verdict(&b, &v, out)?
        }
        Prop::ArcTrans => {
            let verdicts = check_arc_transitivity(&b, k, margin).map_err(|e| usage(format!("{e}")))?;
            let mut all = true;
            for (i, v) in verdicts.iter().enumerate() {
                say!(out, "k={i}:")?;
                all &= report_verdict(&b, v, out)?;
            }
            all
        }
    };
    Ok(if passed { 0 } else { 1 })
}

fn iso(first: &Path, second: &Path, respect_boundary: bool, out: &mut dyn Write) -> CmdResult {
    let a = load(first)?;
    let b = load(second)?;
    let found = if respect_boundary {
        verify::balls_isomorphic(&a, &b)
    } else {
        matches!(
            chdigraph::find_isomorphism(&a.digraph, &b.digraph, Default::default()),
            Ok(Some(_))
        )
    };
    say!(out, "{}", if found { "isomorphic" } else { "not isomorphic" })?;
    Ok(if found { 0 } else { 1 })
}

fn edges_text(b: &BallDigraph, edges: &[(usize, usize)]) -> String {
    let parts: Vec<String> = edges
        .iter()
        .map(|&(u, v)| format!("{}->{}", b.digraph.label(u), b.digraph.label(v)))
        .collect();
    parts.join(" ")
}

fn reach(file: &Path, edge: Option<(usize, usize)>, out: &mut dyn Write) -> CmdResult {
    let b = load(file)?;
    let d = &b.digraph;
    if let Some(e) = edge {
        let class = reachability_class(d, e).map_err(|err| usage(format!("{err}")))?;
        say!(
            out,
            "class of {}->{}: {} vertices, {} edges, universal {}",
            d.label(e.0),
            d.label(e.1),
            class.vertices.len(),
            class.edges.len(),
            class.universal
        )?;
        say!(out, "vertices: {}", labels(&b, &class.vertices))?;
        say!(out, "edges: {}", edges_text(&b, &class.edges))?;
        return Ok(0);
    }
    let classes = all_classes(d);
    say!(out, "classes: {}", classes.len())?;
    let report = reachability_digraph(d, &b.boundary_mask(), (!b.is_exact()).then_some(b.root), usize::MAX)
        .map_err(|e| usage(format!("{e}")))?;
    let delta = &report.delta.delta;
    let g = delta.underlying_graph();
    let family = chdigraph::classify::classify_reachability_graph(&g, None)
        .map(|l| l.to_string())
        .unwrap_or_else(|e| format!("unclassified ({e})"));
    say!(
        out,
        "reachability digraph: {} vertices, {} edges, {family}",
        delta.vertex_count(),
        delta.edge_count()
    )?;
    say!(
        out,
        "interior classes: {}, compared {}, all isomorphic {}",
        report.interior_class_count,
        report.compared,
        report.all_isomorphic
    )?;
    if let Some(c) = &report.caveat {
        say!(out, "note: {c}")?;
    }
    Ok(0)
}

fn check_text(c: Check) -> &'static str {
    match c {
        Check::Holds => "holds",
        Check::Fails => "fails",
        Check::Unverified => "unverified",
    }
}

fn cuts(file: &Path, max_order: usize, dot: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let b = load(file)?;
    let system: CutSystem = ball_cut_system(&b, max_order).map_err(|e| Failure(1, format!("{e}")))?;
    say!(
        out,
        "cuts: {} of order {}",
        system.cuts().len(),
        system.order().map_or("-".to_string(), |o| o.to_string())
    )?;
    let report = &system.report;
    say!(
        out,
        "essential {}, minimal {}, nested {}, ends separated {}",
        report.all_essential,
        report.minimal,
        report.nested,
        report.ends_separated
    )?;
    say!(
        out,
        "conditions: (i) {}, (ii) {}, (iii) {}; automorphism invariant {}, separators transitive {}",
        report.condition_i,
        report.condition_ii,
        report.condition_iii,
        check_text(report.aut_invariant),
        check_text(report.separator_transitive)
    )?;
    let tree = build_structure_tree(&system).map_err(|e| Failure(1, format!("{e}")))?;
    say!(
        out,
        "structure tree: {} separators, {} blocks, {} edges",
        tree.separators.len(),
        tree.blocks.len(),
        tree.edges.len()
    )?;
    for (i, s) in tree.separators.iter().enumerate() {
        say!(out, "separator {i}: {} degree {}", labels(&b, s), tree.separator_degree(i))?;
    }
    for (j, blk) in tree.blocks.iter().enumerate() {
        say!(out, "block {j}: {} vertices, degree {}", blk.len(), tree.block_degree(j))?;
    }
    if let Some(path) = dot {
        write_file(path, &tree.to_dot(|v| b.digraph.label(v)))?;
    }
    Ok(0)
}

fn classify(file: &Path, out: &mut dyn Write) -> CmdResult {
    let b = load(file)?;
    let label = classify_digraph(&b).map_err(|e| usage(format!("{e}")))?;
    say!(out, "{label}")?;
    Ok(0)
}

fn verify_paper(out: &mut dyn Write) -> CmdResult {
    let results = verify::run_all();
    for r in &results {
        say!(out, "{}", r.line())?;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    say!(out, "{passed}/{} checks passed", results.len())?;
    Ok(if passed == results.len() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("chdg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_bad_usage() {
        assert_eq!(run_str(&["--help"]).0, 0);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["gen", "Q(x=1)"]).0, EXIT_USAGE);
    }

    #[test]
    fn seed_rules() {
        assert_eq!(run_str(&["gen", "generic_bipartite(n=4,t=1,seed=3)", "--seed", "4"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["gen", "CP(kappa=3)", "--seed", "4"]).0, EXIT_USAGE);
        let (code, text, _) = run_str(&["gen", "M(kappa=3,m=2,r=2)", "--seed", "4"]);
        assert_eq!(code, 0);
        assert!(text.contains("seed 4"));
    }

    #[test]
    fn edge_parser() {
        assert_eq!(parse_edge("3, 4"), Ok((3, 4)));
        assert!(parse_edge("3").is_err());
    }
}
