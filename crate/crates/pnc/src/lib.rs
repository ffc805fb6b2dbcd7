//! Experiment runner behind the `pnc` binary. Every subcommand writes one
//! JSON document to stdout (and, with `--out`, a directory of files); the
//! verdict never affects the exit status, only bad input or IO does.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use analysis::{
    bound_report, check_fig2_infeasibility, estimate_decode_success, labels, measure_throughput, ratio_f64,
    sample_determinant_vanishing, staggered_nodes, trial_seeds, verify_grid, GridTrials, LadderOptions, Ratio, TrialCoeffs,
};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coloring::{ColoredGraph, HamiltonianNumbering};
use engine::{run, RunOptions};
use gf2s::Field;
use log::info;
use netgraph::{Exec, Network, TopologyFile};
use schemes::{CoeffMode, SchemeConfig, SchemeKind};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "pnc", version, about = "Broadcast schedules with physical-layer network coding: bounds, simulation, checks")]
pub struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cut-based throughput bounds for a topology.
    Bound {
        #[command(flatten)]
        topo: TopologyArgs,
    },
    /// Run a schedule and report W_D and D/W_D per trial.
    Simulate(SimulateArgs),
    /// Look for disjoint shortest-path pairs under a grid numbering.
    VerifyConjecture {
        #[command(flatten)]
        grid: GridArgs,
        /// Do not fall back to the mirrored numbering (or anything later).
        #[arg(long)]
        no_flip: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive slot-assignment search on the small four-relay network.
    CheckFig2 {
        #[arg(long, default_value_t = 3)]
        period: usize,
        /// Throughput target as a fraction, e.g. 2/3.
        #[arg(long, default_value = "2/3", value_parser = parse_ratio)]
        target: Ratio<u64>,
    },
    /// Monte-Carlo decode-success rate of the grid schedule against its bound.
    EstimateProb {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "D", default_value_t = 50)]
        d: usize,
        #[arg(long = "s", default_value_t = 16)]
        s: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Coeffs::Random)]
        coeffs: Coeffs,
        #[arg(long)]
        slot_cap: Option<usize>,
    },
    /// Sample how often the 2×2 coefficient determinant vanishes.
    DetSample {
        #[command(flatten)]
        grid: GridArgs,
        /// Node label (as printed by verify-conjecture); default: every
        /// node with staggered path lengths.
        #[arg(long)]
        node: Option<String>,
        #[arg(long = "s", default_value_t = 16)]
        s: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct TopologyArgs {
    #[arg(long, value_parser = parse_dims)]
    pub grid: Option<(usize, usize)>,
    #[arg(long)]
    pub ring: Option<usize>,
    #[arg(long)]
    pub line: Option<usize>,
    #[arg(long)]
    pub chord_ring: bool,
    #[arg(long)]
    pub fig2: bool,
    /// JSON topology: {"nodes": n, "edges": [[u, v], ...], "source": x}.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Grid source cell as R,C.
    #[arg(long, value_parser = parse_cell, default_value = "1,1")]
    pub source: (usize, usize),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = parse_dims)]
    pub grid: (usize, usize),
    #[arg(long, value_parser = parse_cell, default_value = "1,1")]
    pub source: (usize, usize),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Load the whole experiment from a JSON config instead of flags.
    #[arg(long, conflicts_with_all = ["grid", "ring", "line", "chord_ring", "fig2", "file"])]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub topo: TopologyArgs,
    /// Defaults to the natural schedule for the topology.
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    #[arg(long, value_enum, default_value_t = Coeffs::Ones)]
    pub coeffs: Coeffs,
    #[arg(long = "D", default_value_t = 200)]
    pub d: usize,
    #[arg(long = "s", default_value_t = 16)]
    pub s: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long)]
    pub slot_cap: Option<usize>,
    /// Directory for config.json, summary.json and per-trial files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write trace-<i>.csv per trial (requires --out).
    #[arg(long, requires = "out")]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coeffs {
    Ones,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    LinePnc,
    LineStoreForward,
    RingTable,
    ChordRingTable,
    GridTernary,
}

impl From<SchemeArg> for SchemeKind {
    fn from(s: SchemeArg) -> SchemeKind {
        match s {
            SchemeArg::LinePnc => SchemeKind::LinePnc,
            SchemeArg::LineStoreForward => SchemeKind::LineStoreForward,
            SchemeArg::RingTable => SchemeKind::RingTable,
            SchemeArg::ChordRingTable => SchemeKind::ChordRingTable,
            SchemeArg::GridTernary => SchemeKind::GridTernary,
        }
    }
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected MxN, got {s:?}"))?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_cell(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected R,C, got {s:?}"))?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let (a, b): (u64, u64) = (a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?);
    if b == 0 {
        return Err("zero denominator".into());
    }
    Ok(Ratio::new(a, b))
}

/// A topology by constructor name, or a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologySpec {
    Grid { rows: usize, cols: usize, source: (usize, usize) },
    Ring { n: usize },
    Line { n: usize },
    ChordRing,
    Fig2,
    File { path: PathBuf },
}

impl TopologySpec {
    fn from_flags(
        grid: Option<(usize, usize)>,
        ring: Option<usize>,
        line: Option<usize>,
        chord_ring: bool,
        fig2: bool,
        file: Option<&Path>,
        source: (usize, usize),
    ) -> Result<TopologySpec> {
        let picked = [grid.is_some(), ring.is_some(), line.is_some(), chord_ring, fig2, file.is_some()];
        match picked.iter().filter(|&&b| b).count() {
            0 => bail!("pick a topology: --grid, --ring, --line, --chord-ring, --fig2 or --file"),
            1 => {}
            _ => bail!("pick only one topology"),
        }
        Ok(if let Some((rows, cols)) = grid {
            TopologySpec::Grid { rows, cols, source }
        } else if let Some(n) = ring {
            TopologySpec::Ring { n }
        } else if let Some(n) = line {
            TopologySpec::Line { n }
        } else if chord_ring {
            TopologySpec::ChordRing
        } else if fig2 {
            TopologySpec::Fig2
        } else {
            TopologySpec::File { path: file.unwrap().to_path_buf() }
        })
    }

    pub fn build(&self) -> Result<Network> {
        Ok(match self {
            TopologySpec::Grid { rows, cols, source } => Network::grid(*rows, *cols, *source)?,
            TopologySpec::Ring { n } => Network::ring(*n)?,
            TopologySpec::Line { n } => Network::line(*n)?,
            TopologySpec::ChordRing => Network::chord_ring(),
            TopologySpec::Fig2 => Network::fig2(),
            TopologySpec::File { path } => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let tf: TopologyFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                tf.to_network()?
            }
        })
    }

    fn default_scheme(&self) -> Result<SchemeKind> {
        Ok(match self {
            TopologySpec::Grid { .. } => SchemeKind::GridTernary,
            TopologySpec::Ring { n: 6 } => SchemeKind::RingTable,
            TopologySpec::Line { .. } => SchemeKind::LinePnc,
            TopologySpec::ChordRing => SchemeKind::ChordRingTable,
            _ => bail!("no default schedule for this topology; pass --scheme"),
        })
    }
}

impl TopologyArgs {
    fn spec(&self) -> Result<TopologySpec> {
        TopologySpec::from_flags(self.grid, self.ring, self.line, self.chord_ring, self.fig2, self.file.as_deref(), self.source)
    }
}

/// Everything a simulation depends on; the same config gives the same output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub topology: TopologySpec,
    pub scheme: SchemeKind,
    pub coeffs: Coeffs,
    #[serde(rename = "D")]
    pub d: usize,
    pub s: u32,
    pub seed: u64,
    pub trials: usize,
    pub slot_cap: Option<usize>,
}

impl SimulateArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()));
        }
        let topology = self.topo.spec()?;
        let scheme = match self.scheme {
            Some(s) => s.into(),
            None => topology.default_scheme()?,
        };
        Ok(ExperimentConfig {
            topology,
            scheme,
            coeffs: self.coeffs,
            d: self.d,
            s: self.s,
            seed: self.seed,
            trials: self.trials,
            slot_cap: self.slot_cap,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialResult {
    pub index: usize,
    /// Coefficient seed, when coefficients are random.
    pub seed: Option<u64>,
    pub slots: usize,
    pub w_d: Option<usize>,
    pub throughput: Option<String>,
    pub throughput_f64: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationSummary {
    pub config: ExperimentConfig,
    pub slot_cap: usize,
    pub decoded: usize,
    pub min_throughput: Option<f64>,
    pub mean_throughput: Option<f64>,
    pub trials: Vec<TrialResult>,
}

/// Runs every trial of `cfg`; with `out`, also writes per-trial files.
pub fn simulate(cfg: &ExperimentConfig, exec: Exec, out: Option<&Path>, csv: bool) -> Result<SimulationSummary> {
    if cfg.trials == 0 {
        bail!("need at least one trial");
    }
    let net = cfg.topology.build()?;
    let field = Field::with_width(cfg.s)?;
    let base = SchemeConfig { kind: cfg.scheme, coeff_mode: CoeffMode::AllOnes, d: cfg.d };
    let cap = cfg.slot_cap.unwrap_or_else(|| base.default_slot_cap(&net));
    let seeds = trial_seeds(cfg.seed, cfg.trials);
    info!("simulating {:?} on {} nodes, D={}, {} trial(s), cap {cap}", cfg.scheme, net.node_count(), cfg.d, cfg.trials);
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        write_json(&dir.join("config.json"), cfg)?;
    }
    let results = exec.map_range(cfg.trials, |i| -> Result<TrialResult> {
        let seed = (cfg.coeffs == Coeffs::Random).then_some(seeds[i]);
        let sc = SchemeConfig { coeff_mode: seed.map_or(CoeffMode::AllOnes, |seed| CoeffMode::IidRandom { seed }), ..base.clone() };
        let mut scheme = sc.build(&net)?;
        let opts = RunOptions { record: csv, ..RunOptions::new(cap) };
        let trace = run(&net, scheme.as_mut(), &field, &opts)?;
        if let Some(dir) = out {
            fs::write(dir.join(format!("trial-{i}.json")), trace.summary_json())?;
            if csv {
                let f = fs::File::create(dir.join(format!("trace-{i}.csv")))?;
                trace.write_csv(std::io::BufWriter::new(f))?;
            }
        }
        let tp = measure_throughput(&trace).ok();
        Ok(TrialResult {
            index: i,
            seed,
            slots: trace.slots,
            w_d: trace.w_d,
            throughput: tp.map(|r| r.to_string()),
            throughput_f64: tp.map(ratio_f64),
        })
    });
    let trials = results.into_iter().collect::<Result<Vec<_>>>()?;
    let tps: Vec<f64> = trials.iter().filter_map(|t| t.throughput_f64).collect();
    let summary = SimulationSummary {
        config: cfg.clone(),
        slot_cap: cap,
        decoded: tps.len(),
        min_throughput: tps.iter().copied().reduce(f64::min),
        mean_throughput: (!tps.is_empty()).then(|| tps.iter().sum::<f64>() / tps.len() as f64),
        trials,
    };
    if let Some(dir) = out {
        write_json(&dir.join("summary.json"), &summary)?;
    }
    Ok(summary)
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(v)?).with_context(|| format!("writing {}", path.display()))
}

fn grid_coloring(net: &Network) -> Result<Option<ColoredGraph>> {
    let Some(g) = net.grid_shape() else { return Ok(None) };
    let h = HamiltonianNumbering::build(g.rows, g.cols, g.source)?;
    Ok(Some(ColoredGraph::new(net, h.coloring(net)?)?))
}

/// Executes one parsed command and returns its JSON report.
pub fn execute(cli: &Cli) -> Result<Value> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    Ok(match &cli.command {
        Command::Bound { topo } => {
            let net = topo.spec()?.build()?;
            let cg = grid_coloring(&net)?;
            serde_json::to_value(bound_report(&net, cg.as_ref(), exec)?)?
        }
        Command::Simulate(args) => {
            let cfg = args.config()?;
            serde_json::to_value(simulate(&cfg, exec, args.out.as_deref(), args.trace)?)?
        }
        Command::VerifyConjecture { grid, no_flip, out } => {
            let opts = if *no_flip { LadderOptions { allow_flip: false, extended: false, ..Default::default() } } else { LadderOptions::default() };
            let (rows, cols) = grid.grid;
            let rep = verify_grid(rows, cols, grid.source, &opts, exec)?;
            if let Some(dir) = out {
                fs::create_dir_all(dir)?;
                write_json(&dir.join("report.json"), &rep)?;
                fs::write(dir.join("paths.txt"), rep.table())?;
                fs::write(dir.join("numbering.txt"), &rep.picture)?;
            }
            let mut v = serde_json::to_value(&rep)?;
            v["passed"] = json!(rep.passed());
            v
        }
        Command::CheckFig2 { period, target } => serde_json::to_value(check_fig2_infeasibility(*period, *target)?)?,
        Command::EstimateProb { grid, d, s, trials, seed, coeffs, slot_cap } => {
            let cfg = GridTrials {
                rows: grid.grid.0,
                cols: grid.grid.1,
                source: grid.source,
                d: *d,
                s: *s,
                coeffs: match coeffs {
                    Coeffs::Ones => TrialCoeffs::Ones,
                    Coeffs::Random => TrialCoeffs::Random,
                },
                slot_cap: *slot_cap,
            };
            let est = estimate_decode_success(&cfg, *trials, *seed, exec)?;
            let mut v = serde_json::to_value(&est)?;
            v["consistent_3sigma"] = json!(est.consistent_with_bound(3.0));
            v
        }
        Command::DetSample { grid, node, s, trials, seed } => {
            let (rows, cols) = grid.grid;
            let h = HamiltonianNumbering::build(rows, cols, grid.source)?;
            let net = Network::grid(rows, cols, grid.source)?;
            let nodes = match node {
                Some(label) => {
                    let names = labels(&h, &net)?;
                    vec![names.iter().position(|l| l == label).ok_or_else(|| anyhow!("no node labelled {label:?}"))?]
                }
                None => staggered_nodes(&h)?,
            };
            let samples = nodes
                .iter()
                .map(|&k| sample_determinant_vanishing(&h, k, *s, *trials, *seed, exec))
                .collect::<Result<Vec<_>, _>>()?;
            let within = samples.iter().all(|d| d.within_bound(3.0));
            json!({ "samples": samples, "within_3sigma": within })
        }
    })
}

/// Parses `args` (program name first), executes, and prints the report.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let v = execute(&cli)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    Ok(())
}
