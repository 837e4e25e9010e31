use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use forestpoly::arrangement::{
    intersection_lattice, multigraph_isf_polynomial, perfect_labeling_violation,
    signed_chromatic_count, topology_report, verify_multigraph, verify_signed, LabeledMultigraph,
};
use forestpoly::graph::{
    self, chromatic_polynomial, default_edge_weights, find_peo, is_peo, isf_polynomial,
    isf_weighted, nbc_sets, verify_isf_nbc, whitney_polynomial, Budgets, EdgeOrder, Graph,
    DEFAULT_ENUMERATION_BUDGET,
};
use forestpoly::patterns::{
    is_qpo, tf_integer_roots_classification, tf_polynomial, tight_permutation_count,
    verify_tf_theorems, RootedLabeledForest,
};
use forestpoly::random;
use forestpoly::simplicial::{
    cf_polynomial, cf_weighted, default_facet_weights, is_simplicial_peo, structure_report,
    upper_links, verify_product_formula, PureComplex, SpanningSubcomplex,
};
use forestpoly::{Error, Report};
use serde_json::{json, Value};

/// Exact generating functions for increasing and tight spanning forests,
/// cage-free subcomplexes and multigraph arrangements.
#[derive(Parser)]
#[command(name = "forestpoly", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simple graphs: {"n": 4, "edges": [[1, 2], ...]}
    Graph {
        action: GraphAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Pure complexes: {"n": 4, "d": 2, "facets": [[1, 2, 3], ...]}
    Complex {
        action: ComplexAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Labeled multigraphs: {"n": 3, "zero_edges": [1], "edges": [[1, 2, {"re": "2"}], ...]}
    Multigraph {
        action: MultigraphAction,
        #[command(flatten)]
        opts: Opts,
        /// Color bound for `signed`: colors run over -s..=s
        #[arg(long)]
        s: Option<u64>,
    },
    /// Tight forests of a graph, or (`tight`) a rooted forest
    /// {"labels": [...], "parents": {"v": "p" or null}}
    Forest {
        action: ForestAction,
        #[command(flatten)]
        opts: Opts,
        /// Permutation length for `count`
        #[arg(long)]
        k: Option<usize>,
    },
    /// Random instance as JSON
    Gen {
        kind: GenKind,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Edge cap for multigraphs
        #[arg(long, default_value_t = 7)]
        max_edges: usize,
    },
}

#[derive(Args)]
struct Opts {
    /// Input JSON file, or `-` for stdin
    input: Option<PathBuf>,
    /// Edge, facet or hyperplane limit for brute-force paths
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: usize,
    /// Seed for randomized choices such as edge orders
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex ordering: the i-th entry becomes vertex i
    #[arg(long, value_parser = parse_ordering)]
    ordering: Option<Ordering>,
    /// Weighted generating function instead of the plain polynomial
    #[arg(long)]
    weighted: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphAction {
    Isf,
    Chromatic,
    Nbc,
    Peo,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexAction {
    Cf,
    Links,
    Peo,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum MultigraphAction {
    Chi,
    Isf,
    Perfect,
    Verify,
    Regions,
    Signed,
}

#[derive(Clone, Copy, ValueEnum)]
enum ForestAction {
    Tf,
    Qpo,
    Verify,
    Roots,
    Tight,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Graph,
    Complex,
    Multigraph,
}

#[derive(Clone, Debug)]
struct Ordering(Vec<u32>);

fn parse_ordering(s: &str) -> Result<Ordering, String> {
    let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
    trimmed
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("bad ordering entry {p:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Ordering)
}

/// Failures mapped to exit codes.
enum Failure {
    Input(String),
    Assertion(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Disagreement(_) => Failure::Assertion(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// What a command produced: plain JSON, or a report that may fail.
enum Output {
    Value(Value, String),
    Report(Report),
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, Failure> {
    let text = match path {
        None => return Err(Failure::Input("missing input file".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            s
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))
}

fn inverse(ordering: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; ordering.len()];
    for (i, &v) in ordering.iter().enumerate() {
        if let Some(slot) = inv.get_mut(v.wrapping_sub(1) as usize) {
            *slot = i as u32 + 1;
        }
    }
    inv
}

fn load_graph(opts: &Opts) -> Result<Graph, Failure> {
    let g = Graph::from_json(&read_input(&opts.input)?)?;
    Ok(match &opts.ordering {
        Some(o) => g.relabel_by_ordering(&o.0)?,
        None => g,
    })
}

fn budgets(opts: &Opts) -> Budgets {
    Budgets {
        enumeration: opts.budget,
        ..Budgets::default()
    }
}

fn run_graph(action: GraphAction, opts: &Opts) -> Result<Output, Failure> {
    let g = load_graph(opts)?;
    Ok(match action {
        GraphAction::Isf if opts.weighted => {
            let w = isf_weighted(&g, &default_edge_weights(&g));
            Output::Value(json!(w), format!("ISF = {w}"))
        }
        GraphAction::Isf => {
            let p = isf_polynomial(&g);
            Output::Value(json!(p), format!("ISF = {p}"))
        }
        GraphAction::Chromatic => {
            let p = chromatic_polynomial(&g)?;
            Output::Value(json!(p), format!("P = {p}"))
        }
        GraphAction::Nbc => {
            let order = if opts.seed == 0 {
                EdgeOrder::lex(&g)
            } else {
                EdgeOrder::random(&g, &mut random::rng(opts.seed))
            };
            let nbc = nbc_sets(&g, &order, opts.budget)?;
            let w = whitney_polynomial(g.n(), &nbc.counts);
            let order: Vec<[u32; 2]> = order.sequence().iter().map(|e| [e.lo, e.hi]).collect();
            Output::Value(
                json!({ "edge_order": order, "counts": nbc.counts, "whitney": w }),
                format!("nbc counts {:?}, alternating sum {w}", nbc.counts),
            )
        }
        GraphAction::Peo => {
            let natural: Vec<u32> = g.vertices().collect();
            let holds = is_peo(&g, &natural)?;
            let found = find_peo(&g);
            Output::Value(
                json!({ "is_peo": holds, "chordal": found.is_some(), "peo": found }),
                format!("natural order is a PEO: {holds}"),
            )
        }
        GraphAction::Verify => Output::Report(verify_isf_nbc(&g, budgets(opts))?),
    })
}

fn run_complex(action: ComplexAction, opts: &Opts) -> Result<Output, Failure> {
    let c = PureComplex::from_json(&read_input(&opts.input)?)?;
    let c = match &opts.ordering {
        Some(o) => c.relabel(&inverse(&o.0))?,
        None => c,
    };
    Ok(match action {
        ComplexAction::Cf if opts.weighted => {
            let w = cf_weighted(&c, &default_facet_weights(&c));
            Output::Value(json!(w), format!("CF = {w}"))
        }
        ComplexAction::Cf => {
            let p = cf_polynomial(&c);
            Output::Value(json!(p), format!("CF = {p}"))
        }
        ComplexAction::Links => {
            let links = upper_links(&c);
            Output::Value(links.to_json(), format!("{} effective peaks", links.effective.len()))
        }
        ComplexAction::Peo => {
            let identity: Vec<u32> = (1..=c.n() as u32).collect();
            let holds = is_simplicial_peo(&c, &identity)?;
            Output::Value(json!({ "is_simplicial_peo": holds }), format!("simplicial PEO: {holds}"))
        }
        ComplexAction::Verify => {
            let mut r = verify_product_formula(&c, budgets(opts))?;
            r.absorb("structure", structure_report(&SpanningSubcomplex::full(&c))?);
            Output::Report(r)
        }
    })
}

fn run_multigraph(action: MultigraphAction, opts: &Opts, s: Option<u64>) -> Result<Output, Failure> {
    let g = LabeledMultigraph::from_json(&read_input(&opts.input)?)?;
    let budget = opts.budget;
    Ok(match action {
        MultigraphAction::Chi => {
            let l = intersection_lattice(&g, budget)?;
            let chi = l.characteristic_polynomial();
            Output::Value(
                json!({ "chi": chi, "rank": l.rank(), "n": g.n(), "lattice_size": l.len() }),
                format!("chi = {chi} (rank {}, n {})", l.rank(), g.n()),
            )
        }
        MultigraphAction::Isf => {
            let p = multigraph_isf_polynomial(&g);
            Output::Value(json!(p), format!("ISF = {p}"))
        }
        MultigraphAction::Perfect => {
            let v = perfect_labeling_violation(&g);
            let holds = v.is_none();
            Output::Value(
                json!({ "perfectly_labeled": holds, "violation": v }),
                format!("perfectly labeled: {holds}"),
            )
        }
        MultigraphAction::Verify => Output::Report(verify_multigraph(&g, budget)?),
        MultigraphAction::Regions => {
            let (topo, r) = topology_report(&g, budget)?;
            if !r.passed() {
                return Ok(Output::Report(r));
            }
            Output::Value(json!(topo), format!("betti {:?}, regions {:?}", topo.betti, topo.regions))
        }
        MultigraphAction::Signed => match s {
            Some(s) => {
                let count = signed_chromatic_count(&g, s)?;
                Output::Value(json!({ "s": s, "count": count }), format!("{count} colorings with s = {s}"))
            }
            None => Output::Report(verify_signed(&g, &[0, 1, 2, 3])?),
        },
    })
}

fn run_forest(action: ForestAction, opts: &Opts, k: Option<usize>) -> Result<Output, Failure> {
    if let ForestAction::Count = action {
        let k = k.ok_or_else(|| Failure::Input("count needs --k".into()))?;
        let c = tight_permutation_count(k)?;
        return Ok(Output::Value(json!({ "k": k, "count": c }), format!("{c} tight permutations of length {k}")));
    }
    if let ForestAction::Tight = action {
        let f = RootedLabeledForest::from_json(&read_input(&opts.input)?)?;
        let tight = f.is_tight()?;
        return Ok(Output::Value(
            json!({ "tight": tight, "increasing": f.is_increasing(), "leaf_paths": f.leaf_paths() }),
            format!("tight: {tight}"),
        ));
    }
    let g = load_graph(opts)?;
    Ok(match action {
        ForestAction::Tf => {
            let p = tf_polynomial(&g, opts.budget)?;
            Output::Value(json!(p), format!("TF = {p}"))
        }
        ForestAction::Qpo => {
            let q = is_qpo(&g)?;
            Output::Value(json!(q), format!("QPO: {}", q.is_qpo))
        }
        ForestAction::Verify => Output::Report(verify_tf_theorems(&g, opts.budget)?),
        ForestAction::Roots => Output::Report(tf_integer_roots_classification(&g, opts.budget)?),
        ForestAction::Tight | ForestAction::Count => unreachable!("handled above"),
    })
}

fn run_gen(kind: GenKind, seed: u64, n: usize, max_edges: usize) -> Result<Output, Failure> {
    if n == 0 || n > graph::MAX_VERTICES {
        return Err(Failure::Input(format!("--n must be in 1..={}", graph::MAX_VERTICES)));
    }
    let mut rng = random::rng(seed);
    Ok(match kind {
        GenKind::Graph => {
            let g = random::random_graph(&mut rng, n);
            Output::Value(g.to_json(), format!("{g}"))
        }
        GenKind::Complex => {
            let c = random::random_complex(&mut rng, n);
            Output::Value(c.to_json(), format!("{c}"))
        }
        GenKind::Multigraph => {
            let g = random::random_multigraph(&mut rng, n, max_edges);
            Output::Value(g.to_json(), format!("{g}"))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Graph { action, opts } => run_graph(*action, opts),
        Command::Complex { action, opts } => run_complex(*action, opts),
        Command::Multigraph { action, opts, s } => run_multigraph(*action, opts, *s),
        Command::Forest { action, opts, k } => run_forest(*action, opts, *k),
        Command::Gen { kind, seed, n, max_edges } => run_gen(*kind, *seed, *n, *max_edges),
    };
    match result {
        Ok(Output::Value(v, summary)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("JSON value"));
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            println!("{}", r.to_json_string());
            eprint!("{r}");
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Assertion(msg)) => {
            eprintln!("assertion failed: {msg}");
            ExitCode::from(1)
        }
    }
}
