use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use grpchoose::detectors::{
    find_config, lookup, verify_unavoidability, ConfigurationMatch, Outcome, UnavoidabilityReport,
};
use grpchoose::discharge::{
    apply_charg_rules, rule_masters, verify_lemma_charg, ChargReport, Charge, ChargeLedger, TwoMasterMap,
};
use grpchoose::graph::graph6::encode_graph6;
use grpchoose::graph::{line_graph, Graph};
use grpchoose::solver::{
    is_k_group_choosable_bounded, kernelize_low_degree, BoundedOptions, LowerWitness, PeelCertificate, SearchConfig,
    SolverError, Verdict,
};
use serde::Serialize;

use crate::cache::Cache;
use crate::input::{read_catalog, read_embedding, read_graphs};
use crate::survey::{run_survey, Bounds, Claim, OrderBound, RefutationBundle, SurveyOptions};
use crate::{CliError, EXIT_ANOMALY, EXIT_OK, EXIT_PARTIAL, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "grpchoose",
    version,
    about = "Group choosability solver and verification harness"
)]
pub struct Cli {
    /// Compact single-line JSON instead of pretty-printed reports.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a claim on every graph of a catalog.
    Survey(SurveyArgs),
    /// Bounded group choice number of each input graph.
    ChiGl(ChiArgs),
    /// Bounded group choice number of each input graph's line graph.
    ChiGlEdge(ChiArgs),
    /// Find configurations and check unavoidability lemmas.
    Detect(DetectArgs),
    /// Apply the discharging rules to an embedded graph.
    Discharge(DischargeArgs),
    /// Peel edges at vertices of degree at most 2.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// Largest group order searched.
    #[arg(long, conflicts_with_all = ["orders", "order_margin"])]
    pub max_order: Option<usize>,
    /// Exact list of group orders, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "order_margin")]
    pub orders: Option<Vec<usize>>,
    /// Search orders k..=k+margin. Used when no other bound is given.
    #[arg(long, default_value_t = 2)]
    pub order_margin: usize,
    /// Search node budget per group; 0 means unlimited.
    #[arg(long, default_value_t = 200_000_000)]
    pub max_nodes: u64,
}

impl OrderArgs {
    fn order_bound(&self) -> OrderBound {
        match (&self.orders, self.max_order) {
            (Some(os), _) => OrderBound::Explicit(os.clone()),
            (None, Some(m)) => OrderBound::MaxOrder(m),
            (None, None) => OrderBound::Margin(self.order_margin),
        }
    }

    fn max_nodes(&self) -> Option<u64> {
        (self.max_nodes > 0).then_some(self.max_nodes)
    }
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    /// graph6 file, or gen:n for every connected graph on at most n vertices.
    #[arg(long, required_unless_present = "query")]
    pub catalog: Option<String>,
    /// conj3, conj4 or thm5.
    #[arg(long)]
    pub claim: String,
    #[command(flatten)]
    pub bounds: OrderArgs,
    /// Random instances per graph instead of exhaustive search.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Seed for sampling; implies sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Leave out graphs of larger maximum degree.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Append-only record file; graphs already recorded are skipped.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Print the cached records for the claim and exit.
    #[arg(long, requires = "cache")]
    pub query: bool,
    #[arg(long, default_value_t = 64)]
    pub chunk: usize,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    /// graph6 text or a file of graph6 lines.
    pub graph: String,
    #[command(flatten)]
    pub bounds: OrderArgs,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Rotation-system file. Required for lemmas and face configurations.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
    /// graph6 text or file, for configurations without face constraints.
    #[arg(long, conflicts_with = "embedding")]
    pub graph: Option<String>,
    #[arg(long)]
    pub lemma: Vec<String>,
    #[arg(long)]
    pub config: Vec<String>,
}

#[derive(Debug, Args)]
pub struct DischargeArgs {
    /// Rotation-system file.
    #[arg(long)]
    pub embedding: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// graph6 text or a file of graph6 lines.
    pub graph: String,
    /// Slack over the maximum degree that the kernel bound speaks about.
    #[arg(long, default_value_t = 1)]
    pub l: usize,
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let json = cli.json;
    let result = match cli.command {
        Command::Survey(a) => survey(a, json, out, err),
        Command::ChiGl(a) => chi(a, false, json, out),
        Command::ChiGlEdge(a) => chi(a, true, json, out),
        Command::Detect(a) => detect(a, json, out),
        Command::Discharge(a) => discharge(a, json, out),
        Command::Reduce(a) => reduce(a, json, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) | CliError::Input(_) => EXIT_USAGE,
                CliError::Io(_) => EXIT_USAGE,
            }
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T, json: bool) -> Result<(), CliError> {
    let text = if json {
        serde_json::to_string(value)
    } else {
        serde_json::to_string_pretty(value)
    }
    .map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn survey(a: SurveyArgs, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let claim = Claim::parse(&a.claim)
        .ok_or_else(|| CliError::Usage(format!("unknown claim {:?}; expected conj3, conj4 or thm5", a.claim)))?;
    let mut cache = match &a.cache {
        Some(p) => Some(Cache::open(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?),
        None => None,
    };
    if a.query {
        let c = cache.as_ref().expect("clap enforces --cache");
        let mut count = 0;
        for r in c.query(claim.name()) {
            emit(out, r, true)?;
            count += 1;
        }
        let _ = writeln!(
            err,
            "query {}: {count} records, {} quarantined",
            claim.name(),
            c.quarantined()
        );
        return Ok(EXIT_OK);
    }
    let sampling = match (a.samples, a.seed) {
        (None, None) => None,
        (s, seed) => Some((s.unwrap_or(10_000), seed.unwrap_or(0))),
    };
    let opts = SurveyOptions {
        claim,
        bounds: Bounds {
            orders: a.bounds.order_bound(),
            sampling,
            max_nodes: a.bounds.max_nodes(),
        },
        max_degree: a.max_degree,
        chunk: a.chunk,
    };
    let entries = read_catalog(a.catalog.as_deref().expect("clap enforces --catalog"))?;
    let run = run_survey(&entries, &opts, cache.as_mut(), out)?;
    if let Some(rec) = &run.refutation {
        let bundle = RefutationBundle::from_record(rec);
        #[derive(Serialize)]
        struct Line<'a> {
            refutation: &'a Option<RefutationBundle>,
        }
        emit(out, &Line { refutation: &bundle }, true)?;
        let _ = writeln!(err, "REFUTATION of {} on {}; survey halted", rec.claim, rec.graph);
    }
    let s = &run.summary;
    if json {
        let _ = writeln!(err, "{}", serde_json::to_string(s).unwrap_or_default());
    } else {
        let _ = writeln!(
            err,
            "survey {}: computed {}, cached {}, refuted {}, skipped {}, errors {}, filtered {}, quarantined {}",
            claim.name(),
            s.computed,
            s.cached,
            s.refuted,
            s.skipped,
            s.errors,
            s.filtered,
            s.quarantined
        );
    }
    Ok(if s.refuted > 0 {
        EXIT_ANOMALY
    } else if s.errors > 0 {
        EXIT_PARTIAL
    } else {
        EXIT_OK
    })
}

#[derive(Debug, Serialize)]
struct ChiReport {
    graph: String,
    /// "vertices" for the choice number, "edges" for the choice index.
    of: &'static str,
    /// Smallest k without a refutation, when one was reached.
    value: Option<usize>,
    /// True when the upper verdict is a theorem.
    exact: bool,
    lower: Vec<LowerWitness>,
    upper: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial: Option<String>,
}

fn chi(a: ChiArgs, edges: bool, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let entries = read_graphs(&a.graph)?;
    let opts = BoundedOptions {
        fast_path: true,
        search: SearchConfig {
            max_nodes: a.bounds.max_nodes(),
            ..SearchConfig::default()
        },
    };
    let bound = a.bounds.order_bound();
    let mut code = EXIT_OK;
    for e in entries {
        let g = e.graph.map_err(|r| CliError::Input(format!("line {}: {r}", e.line)))?;
        let graph = encode_graph6(&g).map_err(|e| CliError::Input(e.to_string()))?;
        let h = if edges {
            line_graph(&g).map_err(|e| CliError::Input(format!("{graph}: {e}")))?
        } else {
            g
        };
        let mut report = ChiReport {
            graph,
            of: if edges { "edges" } else { "vertices" },
            value: None,
            exact: false,
            lower: Vec::new(),
            upper: None,
            partial: None,
        };
        // the greedy bound ends the loop by k = degeneracy + 1
        for k in 1.. {
            let max_order = match &bound {
                OrderBound::MaxOrder(m) => *m,
                OrderBound::Margin(d) => k + d,
                OrderBound::Explicit(os) => os.iter().copied().max().unwrap_or(0),
            };
            if max_order < k {
                report.partial = Some(format!("k = {k} exceeds the largest group order {max_order}"));
                break;
            }
            let verdict = match &bound {
                OrderBound::Explicit(_) => {
                    let orders = Bounds {
                        orders: bound.clone(),
                        sampling: None,
                        max_nodes: None,
                    }
                    .orders_for(k);
                    explicit_orders(&h, k, &orders, &opts)
                }
                _ => is_k_group_choosable_bounded(&h, k, max_order, &opts),
            };
            match verdict {
                Ok(Verdict::Refuted { witness }) => report.lower.push(LowerWitness { k, witness: *witness }),
                Ok(v) => {
                    report.value = Some(k);
                    report.exact = matches!(v, Verdict::HoldsByTheorem { .. });
                    report.upper = Some(v);
                    break;
                }
                Err(SolverError::Budget(p)) => {
                    report.partial = Some(format!("k = {k}: search budget exhausted: {p}"));
                    break;
                }
                Err(e) => return Err(CliError::Input(e.to_string())),
            }
        }
        if report.partial.is_some() {
            code = EXIT_PARTIAL;
        }
        emit(out, &report, json)?;
    }
    Ok(code)
}

fn explicit_orders(h: &Graph, k: usize, orders: &[usize], opts: &BoundedOptions) -> Result<Verdict, SolverError> {
    if opts.fast_path && grpchoose::graph::degeneracy_order(h).degeneracy < k {
        return Ok(Verdict::HoldsByTheorem { rule: "greedy".into() });
    }
    grpchoose::solver::check_reducible(h, &vec![k; h.n()], orders, opts)
}

#[derive(Debug, Serialize)]
struct ConfigReport {
    config: String,
    matches: Vec<ConfigurationMatch>,
}

#[derive(Debug, Serialize)]
struct DetectReport {
    graph: String,
    lemmas: Vec<UnavoidabilityReport>,
    configs: Vec<ConfigReport>,
}

fn detect(a: DetectArgs, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.lemma.is_empty() && a.config.is_empty() {
        return Err(CliError::Usage("nothing to detect; pass --lemma or --config".into()));
    }
    let plane = a.embedding.as_deref().map(read_embedding).transpose()?;
    if plane.is_none() && !a.lemma.is_empty() {
        return Err(CliError::Usage(
            "lemma checks need a plane embedding; pass --embedding <rotation file>".into(),
        ));
    }
    let graph = match (&plane, &a.graph) {
        (Some(pg), _) => pg.graph().clone(),
        (None, Some(arg)) => {
            let mut entries = read_graphs(arg)?;
            if entries.len() != 1 {
                return Err(CliError::Usage(format!(
                    "--graph must name one graph, got {}",
                    entries.len()
                )));
            }
            let e = entries.remove(0);
            e.graph.map_err(|r| CliError::Input(format!("line {}: {r}", e.line)))?
        }
        (None, None) => {
            return Err(CliError::Usage(
                "pass --embedding <rotation file> or --graph <graph6>".into(),
            ))
        }
    };
    let mut report = DetectReport {
        graph: encode_graph6(&graph).map_err(|e| CliError::Input(e.to_string()))?,
        lemmas: Vec::new(),
        configs: Vec::new(),
    };
    for name in &a.config {
        let spec = lookup(name).ok_or_else(|| CliError::Usage(format!("unknown configuration {name:?}")))?;
        let matches = match &plane {
            Some(pg) => find_config(pg, spec),
            None if spec.requires_plane() => {
                return Err(CliError::Usage(format!(
                    "configuration {name} constrains faces; pass --embedding <rotation file>"
                )))
            }
            None => find_config(&graph, spec),
        }
        .map_err(|e| CliError::Input(e.to_string()))?;
        report.configs.push(ConfigReport {
            config: spec.name.clone(),
            matches,
        });
    }
    let mut code = EXIT_OK;
    if let Some(pg) = &plane {
        for name in &a.lemma {
            let r = verify_unavoidability(pg, name).map_err(|e| CliError::Usage(e.to_string()))?;
            if matches!(r.outcome, Outcome::Counterexample { .. }) {
                code = EXIT_ANOMALY;
            }
            report.lemmas.push(r);
        }
    }
    emit(out, &report, json)?;
    Ok(code)
}

#[derive(Debug, Serialize)]
struct DischargeReport {
    graph: String,
    masters: Option<TwoMasterMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    masters_error: Option<String>,
    ledger: Option<ChargeLedger>,
    total_initial: Option<Charge>,
    total_final: Option<Charge>,
    conserved: Option<bool>,
    replay_ok: Option<bool>,
    lemma: ChargReport,
}

fn discharge(a: DischargeArgs, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = a.embedding.ok_or_else(|| {
        CliError::Usage("discharging needs a plane embedding; pass --embedding <rotation file>".into())
    })?;
    let pg = read_embedding(&path)?;
    let lemma = verify_lemma_charg(&pg).map_err(|e| CliError::Input(e.to_string()))?;
    let mut report = DischargeReport {
        graph: encode_graph6(pg.graph()).map_err(|e| CliError::Input(e.to_string()))?,
        masters: None,
        masters_error: None,
        ledger: None,
        total_initial: None,
        total_final: None,
        conserved: None,
        replay_ok: None,
        lemma,
    };
    let mut code = match report.lemma {
        ChargReport::DischargeContradiction { .. } | ChargReport::NoTwoMasters { .. } => EXIT_ANOMALY,
        _ => EXIT_OK,
    };
    match rule_masters(&pg) {
        Ok(masters) => {
            let ledger = apply_charg_rules(&pg, &masters).map_err(|e| CliError::Input(e.to_string()))?;
            let conserved = ledger.total_initial() == ledger.total_final();
            let replay_ok = ledger.replay() == ledger.final_charges;
            if !conserved || !replay_ok {
                code = EXIT_ANOMALY;
            }
            report.total_initial = Some(ledger.total_initial());
            report.total_final = Some(ledger.total_final());
            report.conserved = Some(conserved);
            report.replay_ok = Some(replay_ok);
            report.masters = Some(masters);
            report.ledger = Some(ledger);
        }
        Err(e) => report.masters_error = Some(e.to_string()),
    }
    emit(out, &report, json)?;
    Ok(code)
}

#[derive(Debug, Serialize)]
struct ReduceReport {
    graph: String,
    l: usize,
    /// List size the certificate transfers: Δ + l.
    bound: usize,
    kernel: String,
    kernel_edges: usize,
    certificate: PeelCertificate,
}

fn reduce(a: ReduceArgs, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    for e in read_graphs(&a.graph)? {
        let g = e.graph.map_err(|r| CliError::Input(format!("line {}: {r}", e.line)))?;
        let (kernel, certificate) = kernelize_low_degree(&g, a.l).map_err(|e| CliError::Usage(e.to_string()))?;
        let report = ReduceReport {
            graph: encode_graph6(&g).map_err(|e| CliError::Input(e.to_string()))?,
            l: a.l,
            bound: certificate.bound(),
            kernel: encode_graph6(&kernel).map_err(|e| CliError::Input(e.to_string()))?,
            kernel_edges: kernel.m(),
            certificate,
        };
        emit(out, &report, json)?;
    }
    Ok(EXIT_OK)
}
