//! Command-line front end: exact coloring counts, bound evaluation, degree
//! searches, and batch verification sweeps, with machine-readable output.
//!
//! Exit codes: 0 success, 1 assertion or hypothesis failure, 2 usage error,
//! 3 budget exceeded / partial result.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;

use slabel_core::bounds::{self, FamilyId, FamilyParams, HypStatus};
use slabel_core::counting::{
    chromatic_poly_delcon, chromatic_value, count_colorings, dp_chromatic_leq, dp_color_function,
    full_palette, linear_chromatic_leq, linear_color_function, signed_color_function,
    SearchOptions, Witness,
};
use slabel_core::covering::{
    alon_furedi_exact, alon_furedi_weak, count_nonzeros, for_each_point, graph_cover_polynomial,
    CoverMode,
};
use slabel_core::degree_search::{
    min_cover_degree, min_cover_degree_anchored, min_cover_degree_product_of_l, transposition_01,
    worst_case_degree, SearchWitness,
};
use slabel_core::field::{Field, FieldElement};
use slabel_core::graph::{parse_edge_list, parse_graph6, spanning_tree, tree_from_edges};
use slabel_core::labeling::{format_labeling, parse_labeling, Permutation};
use slabel_core::verify::{
    replicate_degree_searches, verify_linear_dp_conjecture, verify_theorem_soundness, SweepSpec,
    TheoremId,
};
use slabel_core::{Error, Multigraph, SLabeling};

#[derive(Parser)]
#[command(
    name = "slabel",
    version,
    about = "Exact coloring counts of S-labeled graphs, covering-polynomial bounds, and degree searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args)]
struct GraphInput {
    /// graph6 string.
    #[arg(long)]
    g6: Option<String>,
    /// Inline edge list, lines separated by ';' or newlines: "u v [mult]".
    #[arg(long)]
    edges: Option<String>,
    /// File holding a graph6 line or an edge list.
    #[arg(long)]
    graph: Option<PathBuf>,
}

impl GraphInput {
    fn given(&self) -> bool {
        self.g6.is_some() || self.edges.is_some() || self.graph.is_some()
    }

    fn load(&self) -> anyhow::Result<Arc<Multigraph>> {
        let g = match (&self.g6, &self.edges, &self.graph) {
            (Some(s), None, None) => parse_graph6(s)?,
            (None, Some(s), None) => parse_edge_list(&s.replace(';', "\n"))?,
            (None, None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                let trimmed = text.trim();
                if trimmed.lines().count() == 1 && !trimmed.contains(' ') {
                    parse_graph6(trimmed)?
                } else {
                    parse_edge_list(&text)?
                }
            }
            _ => anyhow::bail!("supply exactly one of --g6, --edges, --graph"),
        };
        Ok(Arc::new(g))
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum CountMode {
    Dp,
    Linear,
    Signed,
    Classical,
}

#[derive(Copy, Clone, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimized coloring counts (or the count of one explicit labeling).
    Count {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CountMode::Dp)]
        mode: CountMode,
        /// Labeling literal file: count this labeling instead of minimizing.
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OnOff::On)]
        dedup: OnOff,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
    /// Is the graph S-k-colorable for every labeling of the family?
    Colorable {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CountMode::Dp)]
        mode: CountMode,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
    /// Evaluate a lower-bound theorem at (n, m, k).
    Bound {
        /// main-i | main-ii | linear | list | signed | signed-sigma | general-c
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
        /// Color count for general-c.
        #[arg(long)]
        c: Option<u64>,
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
    /// Evaluate a planar-family bound.
    Family {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 0)]
        genus: u64,
        /// Sparsity constant as a fraction "p/q" (triangle-free-planar-dp).
        #[arg(long, value_name = "P/Q")]
        c_frac: Option<String>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Build the covering polynomial of a labeling and evaluate the bound chain.
    Cover {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        k: u64,
        /// Labeling literal file (default: all-identity).
        #[arg(long)]
        labeling: Option<PathBuf>,
        #[arg(long)]
        anchored: bool,
        /// Override the BFS spanning tree: "u-v,u-v,...".
        #[arg(long)]
        tree_edges: Option<String>,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Minimal covering degrees of permutations (rank-based searches).
    SearchDegree {
        /// Field order (a prime power); alternatively give --p and --r.
        #[arg(long, required_unless_present = "p")]
        k: Option<u64>,
        /// Field characteristic, with --r the extension degree.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// One-line permutation (digits then a-z); otherwise the worst case
        /// over all permutations is reported.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        anchored: bool,
        /// Anchor "a,b" (element indices); with a --perm this pins the
        /// anchored search to one pair.
        #[arg(long)]
        anchor: Option<String>,
        /// Search products of L-polynomials instead of general polynomials.
        #[arg(long)]
        product_l: bool,
        /// Run the 01-transposition anchored at (0,0) over GF(p) for this prime.
        #[arg(long)]
        transposition_prime: Option<u64>,
        #[arg(long, default_value_t = 10_000_000_000)]
        budget: u64,
    },
    /// Batch verification sweeps over all small connected graphs.
    Sweep {
        /// conjecture | soundness | degree-replication
        #[arg(long)]
        check: String,
        /// Theorem for soundness sweeps: main-ii | linear | signed | general-c-<c>.
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        /// Comma-separated k values.
        #[arg(long, default_value = "3")]
        k: String,
        #[arg(long)]
        max_cycle_rank: Option<usize>,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = OnOff::On)]
        dedup: OnOff,
        /// Extended degree replication (primes through 53).
        #[arg(long)]
        extended: bool,
        /// Keep at most this many graphs per vertex count (seeded sample).
        #[arg(long)]
        sample: Option<usize>,
        /// Seed for sampled sweeps.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write JSON-lines records here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_ratio(s: &str) -> anyhow::Result<Ratio<i64>> {
    if let Some((p, q)) = s.split_once('/') {
        Ok(Ratio::new(p.trim().parse()?, q.trim().parse()?))
    } else {
        Ok(Ratio::from_integer(s.trim().parse()?))
    }
}

fn parse_anchor(s: &str) -> anyhow::Result<(u16, u16)> {
    let (a, b) = s.split_once(',').ok_or_else(|| anyhow::anyhow!("anchor must be 'a,b'"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn print_bound(b: &bounds::BoundValue, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string(b)?),
        Format::Csv => {
            println!("theorem,base,exponent_num,exponent_den,floor,applicable,approx");
            println!(
                "{},{},{},{},{},{},{:.6}",
                b.theorem,
                b.base,
                b.exponent.numer(),
                b.exponent.denom(),
                b.floor,
                b.applicable(),
                b.approx()
            );
        }
        Format::Table => {
            println!("theorem     : {}", b.theorem);
            println!("bound       : {}^({}) >= {}", b.base, b.exponent, b.floor);
            println!("approx      : {:.6}", b.approx());
            println!("applicable  : {}", b.applicable());
            for h in &b.hypotheses {
                println!("  [{}] {} ({})", if h.satisfied { "ok" } else { "XX" }, h.name, h.detail);
            }
            if let Some(n) = &b.note {
                println!("note        : {n}");
            }
        }
    }
    Ok(())
}

fn witness_string(w: &Witness) -> String {
    match w {
        Witness::Labeling(l) => format_labeling(l),
        Witness::Signs(sg) => sg
            .signs()
            .iter()
            .zip(sg.graph().edge_records())
            .map(|(s, e)| format!("{} {} {}", e.u, e.v, if *s > 0 { "+" } else { "-" }))
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().ok();
    }
    match cli.command {
        Command::Count { graph, k, mode, labeling, dedup, budget } => {
            let g = graph.load()?;
            if let Some(path) = labeling {
                let text = std::fs::read_to_string(path)?;
                let l = parse_labeling(&text, g)?;
                if l.k() != k {
                    anyhow::bail!("labeling has k = {}, got --k {k}", l.k());
                }
                let value = count_colorings(&l, &full_palette(k))?;
                println!("{}", json!({"mode": "labeling", "k": k, "value": value}));
                return Ok(ExitCode::SUCCESS);
            }
            let opts = SearchOptions { budget, dedup: matches!(dedup, OnOff::On) };
            let (report, label) = match mode {
                CountMode::Dp => (dp_color_function(&g, k, &opts)?, "dp"),
                CountMode::Linear => (linear_color_function(&g, k, &opts)?, "linear"),
                CountMode::Signed => (signed_color_function(&g, k, &opts)?, "signed"),
                CountMode::Classical => {
                    let value = chromatic_value(&g, k)?;
                    let delcon = chromatic_poly_delcon(&g, k as u64);
                    let agree = (value as u128) == delcon;
                    println!(
                        "{}",
                        json!({"mode": "classical", "k": k, "value": value,
                               "deletion_contraction": delcon.to_string(), "agree": agree})
                    );
                    return Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(1) });
                }
            };
            println!(
                "{}",
                json!({
                    "mode": label,
                    "k": k,
                    "value": report.value,
                    "labelings_examined": report.labelings_examined,
                    "dedup_factor": report.dedup_factor,
                    "partial": report.partial,
                    "witness": report.witness.as_ref().map(witness_string),
                })
            );
            Ok(if report.partial { ExitCode::from(3) } else { ExitCode::SUCCESS })
        }
        Command::Colorable { graph, k, mode, budget } => {
            let g = graph.load()?;
            let opts = SearchOptions { budget, dedup: true };
            let result = match mode {
                CountMode::Dp => dp_chromatic_leq(&g, k, &opts),
                CountMode::Linear => linear_chromatic_leq(&g, k, &opts),
                _ => anyhow::bail!("--mode must be dp or linear for colorable"),
            };
            match result {
                Ok(ok) => {
                    println!("{}", json!({"k": k, "colorable": ok}));
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::BudgetExceeded { budget }) => {
                    println!("{}", json!({"k": k, "error": "budget exceeded", "budget": budget}));
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Bound { theorem, n, m, k, c, graph, budget } => {
            let concrete = if graph.given() { Some(graph.load()?) } else { None };
            if let Some(g) = &concrete {
                if g.vertex_count() as u64 != n || g.edge_count() as u64 != m {
                    anyhow::bail!(
                        "--graph has n = {}, m = {}, which disagrees with --n {n} --m {m}",
                        g.vertex_count(),
                        g.edge_count()
                    );
                }
            }
            let opts = SearchOptions { budget, dedup: true };
            let verify_dp = |threshold: usize| -> anyhow::Result<HypStatus> {
                match &concrete {
                    None => Ok(HypStatus::Assumed),
                    Some(g) => match dp_chromatic_leq(g, threshold, &opts) {
                        Ok(true) => Ok(HypStatus::Verified),
                        Ok(false) => Ok(HypStatus::Refuted),
                        Err(Error::BudgetExceeded { .. }) => Ok(HypStatus::Assumed),
                        Err(e) => Err(e.into()),
                    },
                }
            };
            let b = match theorem.as_str() {
                "main-ii" => bounds::bound_main_ii(n, m, k, verify_dp(k as usize)?),
                "main-i" => {
                    // the hypothesis lives on the parallel-edge multigraph
                    let chi = match &concrete {
                        None => HypStatus::Assumed,
                        Some(g) => {
                            let tree = spanning_tree(g)?;
                            let expanded = Arc::new(slabel_core::graph::add_parallel_edges(
                                g,
                                &tree,
                                (k as usize / 2).saturating_sub(1),
                            )?);
                            match dp_chromatic_leq(&expanded, k as usize, &opts) {
                                Ok(true) => HypStatus::Verified,
                                Ok(false) => HypStatus::Refuted,
                                Err(Error::BudgetExceeded { .. }) => HypStatus::Assumed,
                                Err(e) => return Err(e.into()),
                            }
                        }
                    };
                    bounds::bound_main_i(n, m, k, chi)
                }
                "linear" => {
                    let chi = match &concrete {
                        None => HypStatus::Assumed,
                        Some(g) => match linear_chromatic_leq(g, k as usize, &opts) {
                            Ok(true) => HypStatus::Verified,
                            Ok(false) => HypStatus::Refuted,
                            Err(Error::BudgetExceeded { .. }) => HypStatus::Assumed,
                            Err(e) => return Err(e.into()),
                        },
                    };
                    bounds::bound_linear(n, m, k, chi)
                }
                "list" => bounds::bound_list(n, m, k, HypStatus::Assumed),
                "signed" => bounds::bound_signed(n, m, k, false, HypStatus::Assumed),
                "signed-sigma" => bounds::bound_signed(n, m, k, true, HypStatus::Assumed),
                "general-c" => {
                    let c = c.ok_or_else(|| anyhow::anyhow!("general-c needs --c"))?;
                    bounds::bound_general_c(n, m, c, k, verify_dp(c as usize)?)
                }
                other => anyhow::bail!("unknown theorem '{other}'"),
            };
            print_bound(&b, cli.format)?;
            Ok(if b.applicable() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Family { family, n, k, genus, c_frac, m } => {
            let id = FamilyId::parse(&family)?;
            let mut params = FamilyParams::new(n, k);
            params.genus = genus;
            params.m = m;
            if let Some(c) = c_frac {
                params.c = Some(parse_ratio(&c)?);
            }
            let b = bounds::family_bound(id, &params)?;
            print_bound(&b, cli.format)?;
            Ok(if b.applicable() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Cover { graph, k, labeling, anchored, tree_edges, budget } => {
            let g = graph.load()?;
            let field = Field::of_order(k)?;
            let l = match labeling {
                Some(path) => parse_labeling(&std::fs::read_to_string(path)?, g.clone())?,
                None => SLabeling::identity(g.clone(), field.order()),
            };
            let tree = match tree_edges {
                Some(spec) => {
                    let pairs: Vec<(usize, usize)> = spec
                        .split(',')
                        .map(|p| {
                            let (u, v) = p
                                .split_once('-')
                                .ok_or_else(|| anyhow::anyhow!("tree edge must be u-v"))?;
                            Ok::<_, anyhow::Error>((u.trim().parse()?, v.trim().parse()?))
                        })
                        .collect::<anyhow::Result<_>>()?;
                    tree_from_edges(&g, &pairs)?
                }
                None => spanning_tree(&g)?,
            };
            let normalized = l.normalize_tree(&tree)?;
            let n = g.vertex_count();
            let mode = if anchored {
                // first proper coloring in point order
                let mut found: Option<Vec<FieldElement>> = None;
                for_each_point(&field, n, |point| {
                    if found.is_some() {
                        return;
                    }
                    let proper = normalized.tuples().iter().enumerate().all(|(ei, tup)| {
                        let (t, h) = normalized.orientation().arcs[ei];
                        tup.iter().all(|p| p.apply(point[t].0) != point[h].0)
                    });
                    if proper {
                        found = Some(point.to_vec());
                    }
                });
                let kappa =
                    found.ok_or_else(|| anyhow::anyhow!("labeling admits no proper coloring"))?;
                CoverMode::Anchored(kappa)
            } else {
                CoverMode::HalfK
            };
            let cover = graph_cover_polynomial(&field, &normalized, &tree, &mode)?;
            let nonzeros = count_nonzeros(&field, &cover, budget)?;
            let sizes = vec![field.order() as u64; n];
            let exact = alon_furedi_exact(&sizes, cover.degree as u64);
            let weak = alon_furedi_weak(
                n as u64,
                (field.order() * n) as u64,
                field.order() as u64,
                cover.degree as u64,
            );
            println!(
                "{}",
                json!({
                    "k": k,
                    "mode": if anchored { "anchored" } else { "halfk" },
                    "degree": cover.degree,
                    "nonzeros": nonzeros,
                    "alon_furedi_exact": exact,
                    "alon_furedi_weak": serde_json::to_value(&weak)?,
                })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::SearchDegree { k, p, r, perm, anchored, anchor, product_l, transposition_prime, budget } => {
            let k = match (k, p) {
                (Some(k), None) => k,
                (None, Some(p)) => p.pow(r),
                (Some(_), Some(_)) => anyhow::bail!("give either --k or --p/--r, not both"),
                (None, None) => unreachable!("clap enforces one of --k / --p"),
            };
            if let Some(p) = transposition_prime {
                let field = Field::of_order(p)?;
                let perm = transposition_01(p as usize);
                let r =
                    min_cover_degree_anchored(&field, &perm, FieldElement(0), FieldElement(0))?;
                println!(
                    "{}",
                    json!({"p": p, "perm": perm.to_string(), "anchor": [0, 0],
                           "degree": r.degree, "expected": p - 2})
                );
                return Ok(if r.degree == (p - 2) as usize {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                });
            }
            let field = Field::of_order(k)?;
            let anchor_elems = match &anchor {
                Some(s) => {
                    let (a, b) = parse_anchor(s)?;
                    Some((FieldElement(a), FieldElement(b)))
                }
                None => None,
            };
            match perm {
                Some(p) => {
                    let perm = Permutation::parse_one_line(&p)?;
                    if perm.degree() != field.order() {
                        anyhow::bail!("permutation degree does not match k");
                    }
                    let r = if product_l {
                        min_cover_degree_product_of_l(&field, &perm, anchor_elems)?
                    } else if let Some((a, b)) = anchor_elems {
                        min_cover_degree_anchored(&field, &perm, a, b)?
                    } else {
                        min_cover_degree(&field, &perm)
                    };
                    let witness = match &r.witness {
                        SearchWitness::Poly(p) => json!({"type": "poly", "degree": p.degree()}),
                        SearchWitness::Factors(fs) => json!({
                            "type": "l-factors",
                            "pairs": fs.iter().map(|f| vec![f.i.0, f.j.0]).collect::<Vec<_>>(),
                        }),
                    };
                    println!(
                        "{}",
                        json!({"k": k, "perm": perm.to_string(), "degree": r.degree,
                               "mode": format!("{:?}", r.mode), "witness": witness})
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    if product_l {
                        anyhow::bail!("--product-l needs --perm");
                    }
                    match worst_case_degree(&field, anchored, budget) {
                        Ok((max, witnesses)) => {
                            for w in witnesses.iter() {
                                println!(
                                    "{}",
                                    json!({"k": k, "perm": w.perm.to_string(),
                                           "degree": w.degree,
                                           "mode": format!("{:?}", w.mode)})
                                );
                            }
                            println!(
                                "{}",
                                json!({"k": k, "worst_case_degree": max,
                                       "achievers": witnesses.len(), "anchored": anchored})
                            );
                            Ok(ExitCode::SUCCESS)
                        }
                        Err(Error::BudgetExceeded { budget }) => {
                            eprintln!("budget {budget} exceeded");
                            Ok(ExitCode::from(3))
                        }
                        Err(e) => Err(e.into()),
                    }
                }
            }
        }
        Command::Sweep {
            check,
            theorem,
            n_max,
            k,
            max_cycle_rank,
            budget,
            dedup,
            extended,
            sample,
            seed,
            out,
        } => {
            let ks: Vec<u64> = k
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|e| anyhow::anyhow!("bad --k list: {e}"))?;
            let mut spec = SweepSpec::new(n_max, ks);
            spec.max_cycle_rank = max_cycle_rank;
            spec.budget = budget;
            spec.dedup = matches!(dedup, OnOff::On);
            spec.sample = sample.map(|count| (seed, count));
            match check.as_str() {
                "conjecture" => {
                    let report = verify_linear_dp_conjecture(&spec)?;
                    if let Some(path) = out {
                        slabel_core::verify::write_jsonl(&path, &report.records)?;
                    }
                    println!(
                        "{}",
                        json!({"check": "conjecture", "checked": report.checked,
                               "skipped": report.skipped,
                               "counterexamples": report.counterexamples})
                    );
                    Ok(match (report.counterexamples, report.skipped) {
                        (0, 0) => ExitCode::SUCCESS,
                        (0, _) => ExitCode::from(3),
                        _ => ExitCode::from(1),
                    })
                }
                "soundness" => {
                    let t = theorem
                        .ok_or_else(|| anyhow::anyhow!("soundness sweeps need --theorem"))?;
                    let report = verify_theorem_soundness(&spec, TheoremId::parse(&t)?)?;
                    if let Some(path) = out {
                        slabel_core::verify::write_jsonl(&path, &report.records)?;
                    }
                    println!(
                        "{}",
                        json!({"check": "soundness", "theorem": report.theorem,
                               "checked": report.checked, "skipped": report.skipped,
                               "violations": report.violations})
                    );
                    Ok(if report.violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
                "degree-replication" => {
                    let report = replicate_degree_searches(extended)?;
                    if let Some(path) = out {
                        slabel_core::verify::write_jsonl(&path, &report.records)?;
                    }
                    for r in &report.records {
                        println!("{}", serde_json::to_string(r)?);
                    }
                    Ok(if report.all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
                }
                other => anyhow::bail!("unknown check '{other}'"),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.downcast_ref::<Error>().is_some_and(|e| matches!(e, Error::BudgetExceeded { .. }))
            {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
