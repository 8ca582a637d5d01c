//! The `afcore` command-line front end.
//!
//! Every subcommand writes one JSON document to stdout. Exit status is 0 on
//! success, 1 when a computed property fails (a relation residual is
//! non-zero, no move sequence or isomorphism exists, …) and 2 on bad input.
//! Vertex and move indices are 1-based on this interface.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::coxeter::{self, CartanInput, DEFAULT_MAX_SIZE};
use crate::dimension::{self, K0Element, DEFAULT_K_CHECK};
use crate::graph::{DagRelation, MultiGraph};
use crate::matrix::IntMatrix;
use crate::moves::{self, DEFAULT_MAX_DEPTH};
use crate::operator::check::{all_pass, check_ck_family, check_relations, RelationResult};
use crate::operator::images::{
    generator_interior, grassmann_core_images, grassmann_projection_relations, lens_iso_images,
    plucker_relations, plucker_rep, x6_generator_images, x6_relations,
};
use crate::operator::InteriorSpec;
use crate::projective::{self, PolyModX};

/// Environment variable overriding the Weyl group enumeration bound.
pub const MAX_GROUP_ENV: &str = "AFCORE_MAX_GROUP";

#[derive(Debug, Parser)]
#[command(
    name = "afcore",
    version,
    about = "Invariants of amplified graph C*-algebras and their AF cores"
)]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transitive closure of a relation.
    Closure(GraphArg),
    /// Transitive reduction (Hasse diagram) of a relation.
    Reduce(GraphArg),
    /// E_R: add a loop at every vertex.
    Loops(GraphArg),
    /// F_R: replace every arrow by infinitely many.
    Amplify(GraphArg),
    /// Dimension group of C*(F_R), or of the core of C*(E_R) with --core.
    K0 {
        #[command(flatten)]
        graph: GraphArg,
        /// Also compute and verify the walk-counting certificate.
        #[arg(long)]
        core: bool,
        /// Largest power k checked in (Γᵏ)_{v,w} ≥ k.
        #[arg(long, default_value_t = DEFAULT_K_CHECK)]
        k_check: u32,
    },
    /// Positive-cone membership of a K0 element.
    Cone {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated coefficients in vertex order.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Search for an order isomorphism between two dimension groups.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Flag-manifold relation from Cartan data.
    Flag {
        /// Dynkin type A, B, C or D.
        #[arg(long = "type", conflicts_with = "input")]
        kind: Option<String>,
        #[arg(long, requires = "kind")]
        rank: Option<usize>,
        /// Comma-separated 1-based nodes of S.
        #[arg(long, value_delimiter = ',')]
        subset: Vec<usize>,
        /// JSON file with {"cartan": [[..]], "subset": [..]} or
        /// {"type": "A", "rank": 3, "subset": [..]}.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Row-addition moves between the B-matrices of two graphs.
    Moves {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Exact relation checks in truncated representations.
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        /// Truncation level (default 6, or 8 for lens).
        #[arg(long)]
        truncation: Option<usize>,
        /// Number of copies of each infinite edge checked (lens).
        #[arg(long, default_value_t = 4)]
        ncap: usize,
        /// Weight r of the lens space.
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Interior distance from the truncation boundary (default 3).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Positivity in K⁰(ℂPⁿ⁻¹) = ℤ[x]/(xⁿ).
    Cp {
        #[arg(long)]
        n: usize,
        /// Comma-separated coefficients a₀,a₁,…
        #[arg(long, allow_hyphen_values = true, required_unless_present = "refute")]
        element: Option<String>,
        #[arg(long, default_value_t = 10)]
        search_bound: i64,
        /// Print the report ruling out injective unital maps from the quantum
        /// dimension group instead.
        #[arg(long)]
        refute: bool,
    },
}

#[derive(Debug, clap::Args)]
pub struct GraphArg {
    /// Relation or graph JSON file; loops are ignored when reading a graph
    /// as a relation.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Plucker,
    X6,
    Lens,
    GrassmannCore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

/// Failure of a command: bad input (exit 2) or a property that does not
/// hold (exit 1, with the JSON result still printed).
enum Outcome {
    Ok(Value),
    Failed(Value),
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let (value, code) = match execute(&cli.command) {
        Ok(Outcome::Ok(v)) => (v, 0),
        Ok(Outcome::Failed(v)) => (v, 1),
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let text = if cli.pretty {
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    }
    .expect("JSON values always serialize");
    let _ = writeln!(out, "{text}");
    code
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Reads a relation, or a graph whose loops are dropped.
fn load_relation(path: &Path) -> Result<DagRelation, InputError> {
    let text = read(path)?;
    if let Ok(r) = DagRelation::from_json(&text) {
        return Ok(r);
    }
    let g = MultiGraph::from_json(&text)?;
    Ok(DagRelation::from_graph_without_loops(&g)?)
}

fn load_graph(path: &Path) -> Result<MultiGraph, InputError> {
    Ok(MultiGraph::from_json(&read(path)?)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn execute(cmd: &Command) -> Result<Outcome, InputError> {
    match cmd {
        Command::Closure(g) => Ok(Outcome::Ok(to_value(
            &load_relation(&g.graph)?.transitive_closure(),
        ))),
        Command::Reduce(g) => Ok(Outcome::Ok(to_value(
            &load_relation(&g.graph)?.transitive_reduction(),
        ))),
        Command::Loops(g) => Ok(Outcome::Ok(to_value(&load_relation(&g.graph)?.add_loops()))),
        Command::Amplify(g) => Ok(Outcome::Ok(to_value(&load_relation(&g.graph)?.amplify()))),
        Command::K0 {
            graph,
            core,
            k_check,
        } => k0(&load_relation(&graph.graph)?, *core, *k_check),
        Command::Cone { graph, element } => {
            let dg = dimension::k0_amplified(&load_relation(&graph.graph)?);
            let x: K0Element = element.parse()?;
            Ok(Outcome::Ok(json!({ "member": dg.contains(&x)? })))
        }
        Command::Iso { a, b } => iso(&load_relation(a)?, &load_relation(b)?),
        Command::Flag {
            kind,
            rank,
            subset,
            input,
        } => flag(kind.as_deref(), *rank, subset, input.as_deref()),
        Command::Moves {
            from,
            to,
            max_depth,
        } => move_search(&load_graph(from)?, &load_graph(to)?, *max_depth),
        Command::Verify {
            target,
            truncation,
            ncap,
            r,
            budget,
            format: Format::Json,
        } => verify(*target, *truncation, *ncap, *r, *budget),
        Command::Cp {
            n,
            element,
            search_bound,
            refute,
        } => cp(*n, element.as_deref(), *search_bound, *refute),
    }
}

fn k0(r: &DagRelation, core: bool, k_check: u32) -> Result<Outcome, InputError> {
    if !core {
        return Ok(Outcome::Ok(json!({ "group": dimension::k0_amplified(r) })));
    }
    let (group, certificate) = dimension::k0_core(r, k_check)?;
    let agrees = group == dimension::k0_amplified(r);
    let value = json!({
        "group": group,
        "certificate": certificate,
        "agrees_with_amplified": agrees,
    });
    Ok(if agrees {
        Outcome::Ok(value)
    } else {
        Outcome::Failed(value)
    })
}

fn iso(a: &DagRelation, b: &DagRelation) -> Result<Outcome, InputError> {
    let ga = dimension::k0_amplified(a);
    let gb = dimension::k0_amplified(b);
    Ok(match dimension::find_order_isomorphism(&ga, &gb) {
        Some(map) => {
            let bijection: serde_json::Map<String, Value> = map
                .iter()
                .enumerate()
                .map(|(v, &w)| (ga.vertices()[v].clone(), json!(gb.vertices()[w])))
                .collect();
            Outcome::Ok(json!({ "isomorphic": true, "bijection": bijection }))
        }
        None => Outcome::Failed(json!({ "isomorphic": false, "bijection": null })),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagInput {
    cartan: Option<IntMatrix>,
    #[serde(rename = "type")]
    kind: Option<String>,
    rank: Option<usize>,
    #[serde(default)]
    subset: Vec<usize>,
}

fn max_group_size() -> Result<usize, InputError> {
    match std::env::var(MAX_GROUP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| InputError(format!("{MAX_GROUP_ENV} must be a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_SIZE),
    }
}

fn flag(
    kind: Option<&str>,
    rank: Option<usize>,
    subset: &[usize],
    input: Option<&Path>,
) -> Result<Outcome, InputError> {
    let c = match (input, kind) {
        (Some(path), _) => {
            let spec: FlagInput = serde_json::from_str(&read(path)?)?;
            match (spec.cartan, spec.kind, spec.rank) {
                (Some(m), None, None) => CartanInput::new(m, &spec.subset)?,
                (None, Some(k), Some(r)) => CartanInput::dynkin(&k, r, &spec.subset)?,
                _ => {
                    return Err(InputError(
                        "flag input needs either `cartan` or `type` and `rank`".into(),
                    ))
                }
            }
        }
        (None, Some(k)) => {
            let r = rank.ok_or_else(|| InputError("--type needs --rank".into()))?;
            CartanInput::dynkin(k, r, subset)?
        }
        (None, None) => return Err(InputError("give --type/--rank or --input".into())),
    };
    let max = max_group_size()?;
    let group = coxeter::enumerate_group(&c, max)?;
    let sub = coxeter::parabolic_subgroup(&c, &group);
    let reps = coxeter::min_coset_reps(&group, &sub)?;
    let fg = coxeter::weak_order_graph(&group, &reps)?;
    Ok(Outcome::Ok(json!({
        "group_order": group.len(),
        "parabolic_order": sub.len(),
        "relation": fg.relation,
        "reps": fg.rep_table(),
    })))
}

fn move_search(from: &MultiGraph, to: &MultiGraph, depth: usize) -> Result<Outcome, InputError> {
    let before = moves::b_matrix(from)?;
    let target = moves::b_matrix(to)?;
    Ok(match moves::find_move_sequence(from, to, depth)? {
        Some(seq) => {
            let after = moves::replay(&before, &seq)?;
            let one_based: Vec<[usize; 2]> = seq.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
            Outcome::Ok(json!({
                "moves": one_based,
                "before": before.matrix(),
                "after": after.matrix(),
            }))
        }
        None => Outcome::Failed(json!({
            "moves": null,
            "before": before.matrix(),
            "target": target.matrix(),
        })),
    })
}

fn verify(
    target: Target,
    truncation: Option<usize>,
    n_cap: usize,
    r: usize,
    budget: Option<usize>,
) -> Result<Outcome, InputError> {
    let interior = budget.map_or_else(generator_interior, InteriorSpec::uniform);
    let (name, trunc, interior, results, extra): (_, _, _, Vec<RelationResult>, Value) =
        match target {
            Target::Plucker => {
                let n = truncation.unwrap_or(6);
                let rep = plucker_rep(n)?;
                let res = check_relations(&rep, &plucker_relations(), interior)?;
                ("plucker", n, interior, res, Value::Null)
            }
            Target::X6 => {
                let n = truncation.unwrap_or(6);
                let rep = x6_generator_images(n)?;
                let res = check_relations(&rep, &x6_relations(), interior)?;
                ("x6", n, interior, res, Value::Null)
            }
            Target::GrassmannCore => {
                let n = truncation.unwrap_or(6);
                let core = grassmann_core_images(n)?;
                let mut res = check_ck_family(&core.family, &core.graph, 0, interior)?;
                res.extend(check_relations(
                    &core.family.rep,
                    &grassmann_projection_relations(),
                    InteriorSpec::everything(),
                )?);
                ("grassmann-core", n, interior, res, Value::Null)
            }
            Target::Lens => {
                let n = truncation.unwrap_or(8);
                let iso = lens_iso_images(r, n_cap, n)?;
                let interior = budget.map_or_else(|| iso.interior(), InteriorSpec::uniform);
                let mut res = check_ck_family(&iso.family, &iso.target, n_cap, interior)?;
                res.extend(check_relations(
                    &iso.family.rep,
                    &iso.telescoping_relations(),
                    interior,
                )?);
                ("lens", n, interior, res, json!({ "r": r, "ncap": n_cap }))
            }
        };
    let pass = all_pass(&results);
    let mut report = json!({
        "target": name,
        "truncation": trunc,
        "interior": interior,
        "relations": results,
        "all_pass": pass,
    });
    if let Value::Object(params) = extra {
        report["parameters"] = Value::Object(params);
    }
    Ok(if pass {
        Outcome::Ok(report)
    } else {
        Outcome::Failed(report)
    })
}

fn cp(n: usize, element: Option<&str>, bound: i64, refute: bool) -> Result<Outcome, InputError> {
    if refute {
        if n < 2 {
            return Err(InputError("--refute needs --n at least 2".into()));
        }
        return Ok(Outcome::Ok(to_value(
            &projective::refute_unital_order_embedding(n),
        )));
    }
    if bound < 1 {
        return Err(InputError("--search-bound must be at least 1".into()));
    }
    let element = element.ok_or_else(|| InputError("--element is required".into()))?;
    let p = PolyModX::parse(n, element)?;
    Ok(Outcome::Ok(to_value(&projective::cone_report(&p, bound))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("afcore").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn unknown_flags_are_input_errors() {
        let (code, out, err) = run_capture(&["closure", "--bogus"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn flag_from_type() {
        let (code, out, _) =
            run_capture(&["flag", "--type", "A", "--rank", "3", "--subset", "1,3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["relation"]["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(v["group_order"], 24);
    }

    #[test]
    fn cp_refute_and_report() {
        let (code, out, _) = run_capture(&["cp", "--n", "3", "--element", "1,1,0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["certificate"], Value::Null);
        assert_eq!(v["proof_of_nonmembership"]["multiplier"], 1);
        let (code, out, _) = run_capture(&["cp", "--n", "2", "--refute"]);
        assert_eq!(code, 0);
        assert!(out.contains("kills [P_n]"));
    }
}
