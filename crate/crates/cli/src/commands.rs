use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use edss::metrics::{
    bipartition_report, carrier_certificate_details, discord_landscape, discord_with, measured_entropy, BipartitionFamily,
    DiscordOptions,
};
use edss::prelude::*;
use edss::protocol::post_select;
use edss::tensor::von_neumann_entropy;

use crate::config::{parse_pairs, OutputFormat, RunConfig, TopologyFile, TopologyKindName, TopologySpec};
use crate::golden::{golden_rows, DEFAULT_EIGENVALUE_TOLERANCE};
use crate::report::{report_csv, trend_csv, Check, DecompositionOutcome, ReportDocument, Timing, TrendRow};

/// Overrides the dense register limit, in qubits.
pub const MAX_QUBITS_ENV: &str = "EDSS_MAX_QUBITS";

#[derive(Debug, Parser)]
#[command(name = "edss", version, about = "Entanglement distribution via separable carriers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one protocol and report negativities and carrier certificates.
    Simulate(SimulateArgs),
    /// Check the simulator against the reference eigenvalue tables.
    Tables(TablesArgs),
    /// Ring single-carrier averages for growing node counts.
    Trend(TrendArgs),
    /// Relative entropy of discord of a two-qubit state.
    Discord(DiscordArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// TOML topology file; explicit flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// linear | ring | star | custom | appendixA
    #[arg(long)]
    pub topology: Option<TopologyKindName>,
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Star center (1-based).
    #[arg(long)]
    pub center: Option<usize>,
    /// Custom edges, e.g. `1-2,2-3`.
    #[arg(long)]
    pub pairs: Option<String>,
    /// single | multi | qudit | relay
    #[arg(long)]
    pub variant: Option<Variant>,
    /// nodes | all
    #[arg(long, default_value = "nodes")]
    pub family: BipartitionFamily,
    #[arg(long, default_value_t = DEFAULT_EIGENVALUE_TOLERANCE)]
    pub tolerance: f64,
    /// Post-select carriers on |A⟩ and fit the node state onto the Bell-mixture ansatz.
    #[arg(long)]
    pub decompose: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Eigenvalue and average tolerance.
    #[arg(long, default_value_t = DEFAULT_EIGENVALUE_TOLERANCE)]
    pub tolerance: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TrendArgs {
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(3..=10))]
    pub max_nodes: u8,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    /// The discordant pair seed.
    Seed,
    /// A product of two mixed qubits.
    Product,
    /// `½(|00⟩⟨00| + |11⟩⟨11|)`.
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    #[arg(long, value_enum, default_value = "seed")]
    pub state: StateArg,
    #[arg(long, value_enum, default_value = "2")]
    pub base: BaseArg,
    /// Qubit that is measured: A or B.
    #[arg(long, default_value = "B")]
    pub measured: String,
    /// Re-evaluate the entropy at the reported angles.
    #[arg(long)]
    pub report_angles: bool,
    /// Also emit the landscape on a GRID × GRID angle lattice.
    #[arg(long, value_name = "GRID")]
    pub sweep: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

/// What `main` should do with a finished command.
pub struct Outcome {
    pub text: String,
    pub out: Option<PathBuf>,
    pub success: bool,
}

/// Argument combinations clap cannot reject on its own.
#[derive(Debug)]
pub struct UsageError(pub anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| UsageError(e).into())
}

/// Applies `EDSS_MAX_QUBITS` if set.
pub fn apply_environment() -> Result<()> {
    if let Ok(v) = std::env::var(MAX_QUBITS_ENV) {
        let q: u32 = usage(v.trim().parse().with_context(|| format!("{MAX_QUBITS_ENV}={v:?} is not a qubit count")))?;
        if !(1..=30).contains(&q) {
            return usage(Err(anyhow::anyhow!("{MAX_QUBITS_ENV} must be between 1 and 30, got {q}")));
        }
        edss::tolerance::set_max_dimension(1 << q);
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<Outcome> {
    apply_environment()?;
    match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Tables(a) => tables(a),
        Command::Trend(a) => trend(a),
        Command::Discord(a) => discord_cmd(a),
    }
}

fn finish(mut doc: ReportDocument, output: &Output, started: Instant, csv: Option<String>) -> Outcome {
    if output.timing {
        doc.timing = Some(Timing { elapsed_seconds: started.elapsed().as_secs_f64() });
    }
    let success = doc.passed();
    let text = match (output.format, csv) {
        (FormatArg::Csv, Some(csv)) => csv,
        _ => doc.to_json(),
    };
    Outcome { text, out: output.out.clone(), success }
}

fn resolve_config(a: &SimulateArgs) -> Result<RunConfig> {
    let file = match &a.config {
        Some(path) => Some(TopologyFile::load(path)?),
        None => None,
    };
    let kind = a.topology.or(file.as_ref().map(|f| f.kind)).context("--topology (or --config) is required")?;
    let nodes = a.nodes.or(file.as_ref().map(|f| f.nodes)).context("--nodes (or --config) is required")?;
    let center = a.center.or(file.as_ref().and_then(|f| f.center));
    let pairs = match &a.pairs {
        Some(text) => Some(parse_pairs(text)?),
        None => file.as_ref().and_then(|f| f.pairs.clone()),
    };
    let variant = match (a.variant, file.as_ref().and_then(|f| f.variant.as_deref())) {
        (Some(v), _) => v,
        (None, Some(text)) => text.parse()?,
        (None, None) => Variant::SingleCarrier,
    };
    RunConfig::new(
        TopologySpec { kind, nodes, center, pairs },
        variant,
        a.family,
        a.output.format.into(),
        a.output.out.as_ref().map(|p| p.display().to_string()),
        a.tolerance,
        a.decompose,
    )
}

fn simulate(a: SimulateArgs) -> Result<Outcome> {
    let started = Instant::now();
    let config = usage(resolve_config(&a))?;
    let topology = usage(config.topology.build())?;
    let schedule = build_schedule(&topology, config.variant)?;
    let trace = run(&schedule, &initial_state(&topology, config.variant)?).context("protocol run failed")?;
    let final_state = trace.final_state();
    let report = bipartition_report(final_state, config.family)?;

    let mut doc = ReportDocument::new("simulate");
    doc.certificates = carrier_certificate_details(&trace);
    for c in doc.certificates.iter().filter(|c| !c.zero_negativity) {
        let worst = c.cuts.iter().max_by(|x, y| x.negativity.total_cmp(&y.negativity)).expect("nonempty");
        doc.notes.push(format!(
            "carriers are entangled with the network after {}: N({}|rest) = {:.6e}",
            c.label,
            worst.carriers.concat(),
            worst.negativity
        ));
    }
    if config.topology.kind == TopologyKindName::Star && config.topology.nodes == 4 && config.variant == Variant::SingleCarrier {
        doc.notes.push(format!(
            "star single-carrier average {:.7} is the geometric mean of this run's spectra; \
             the reference value 0.019268 differs from the mean of the reference table spectra (0.0190268)",
            report.geometric_average
        ));
    }

    if config.decompose {
        let carriers = final_state.register().labels_with_role(Role::Carrier);
        let selected = post_select(final_state, &carriers, Ket::A)?;
        doc.decomposition = Some(match decompose_final_state(&selected.state, &topology) {
            Ok(d) => DecompositionOutcome { probability: selected.probability, fits: true, decomposition: d },
            Err(Error::Decomposition { residual, decomposition, .. }) => {
                doc.notes.push(format!("post-selected state does not fit the ansatz (residual {residual:.6e})"));
                DecompositionOutcome { probability: selected.probability, fits: false, decomposition: *decomposition }
            }
            Err(e) => return Err(e.into()),
        });
    }

    let csv = report_csv(&report);
    doc.report = Some(report);
    doc.config = Some(config);
    Ok(finish(doc, &a.output, started, Some(csv)))
}

fn golden_csv(doc: &ReportDocument) -> String {
    let join = |v: &[f64]| v.iter().map(|&x| crate::report::sig12(x)).collect::<Vec<_>>().join(";");
    let mut out = String::from("id,status,tolerance,expected,actual\n");
    for r in &doc.golden {
        let status = serde_json::to_value(r.status).expect("status serializes");
        out.push_str(&format!(
            "{},{},{:e},{},{}\n",
            r.id,
            status.as_str().unwrap_or_default(),
            r.tolerance,
            join(&r.expected),
            join(&r.actual)
        ));
    }
    out
}

fn tables(a: TablesArgs) -> Result<Outcome> {
    let started = Instant::now();
    if !(a.tolerance > 0.0 && a.tolerance.is_finite()) {
        return usage(Err(anyhow::anyhow!("tolerance must be positive, got {}", a.tolerance)));
    }
    let mut doc = ReportDocument::new("tables");
    doc.golden = golden_rows(a.tolerance)?;
    for r in doc.golden.iter().filter(|r| !r.note.is_empty()) {
        doc.notes.push(format!("{}: {}", r.id, r.note));
    }
    let csv = golden_csv(&doc);
    Ok(finish(doc, &a.output, started, Some(csv)))
}

fn trend(a: TrendArgs) -> Result<Outcome> {
    let started = Instant::now();
    let mut doc = ReportDocument::new("trend");
    for n in 3..=a.max_nodes as usize {
        let attempt = Topology::ring(n).and_then(|topology| {
            let trace = run(
                &build_schedule(&topology, Variant::SingleCarrier)?,
                &initial_state(&topology, Variant::SingleCarrier)?,
            )?;
            bipartition_report(trace.final_state(), BipartitionFamily::NodeBipartitions)
        });
        match attempt {
            Ok(r) => doc.trend.push(TrendRow { n, geometric_average: r.geometric_average, total: r.total }),
            Err(e) if is_resource(&e) => {
                doc.notes.push(format!("truncated at N={}: {e}", n - 1));
                doc.checks.push(Check { name: "complete".into(), passed: false, detail: format!("stopped before N={n}") });
                break;
            }
            Err(e) => return Err(e.into()),
        }
    }
    for w in doc.trend.windows(2) {
        doc.checks.push(Check {
            name: format!("average decreases N={}→{}", w[0].n, w[1].n),
            passed: w[1].geometric_average < w[0].geometric_average,
            detail: String::new(),
        });
    }
    if let Some(reference) = doc.trend.iter().find(|r| r.n == 4).map(|r| r.total) {
        for r in &doc.trend {
            doc.checks.push(Check {
                name: format!("total N={} within 5% of N=4", r.n),
                passed: ((r.total - reference) / reference).abs() <= 0.05,
                detail: String::new(),
            });
        }
    }
    let csv = trend_csv(&doc.trend);
    Ok(finish(doc, &a.output, started, Some(csv)))
}

fn is_resource(e: &Error) -> bool {
    match e {
        Error::Resource { .. } => true,
        Error::Step { source, .. } => is_resource(source),
        _ => false,
    }
}

fn discord_state(which: StateArg) -> Result<DensityMatrix> {
    Ok(match which {
        StateArg::Seed => pair_seed_state("A", "B")?,
        StateArg::Product => {
            let a = ComplexOperator::from_real(2, &[0.7, 0.2, 0.2, 0.3])?;
            let b = ComplexOperator::from_real(2, &[0.4, -0.1, -0.1, 0.6])?;
            DensityMatrix::new(Register::qubits(&["A", "B"], Role::Node)?, kron(&a, &b)?)?
        }
        StateArg::Classical => {
            let op = ComplexOperator::from_real(4, &[0.5, 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 0.5])?;
            DensityMatrix::new(Register::qubits(&["A", "B"], Role::Node)?, op)?
        }
    })
}

fn discord_cmd(a: DiscordArgs) -> Result<Outcome> {
    let started = Instant::now();
    if a.measured != "A" && a.measured != "B" {
        return usage(Err(anyhow::anyhow!("--measured must be A or B")));
    }
    if a.sweep.is_some_and(|g| g < 2) {
        return usage(Err(anyhow::anyhow!("--sweep needs at least 2 points per angle")));
    }
    let base = match a.base {
        BaseArg::Two => EntropyBase::Two,
        BaseArg::E => EntropyBase::E,
    };
    let rho = discord_state(a.state)?;
    let d = discord_with(&rho, &a.measured, base, DiscordOptions::default()).context("discord optimization failed")?;

    let mut doc = ReportDocument::new("discord");
    match a.state {
        StateArg::Seed if base == EntropyBase::Two => doc.checks.push(Check {
            name: "seed discord 0.0612781 ± 1e-4".into(),
            passed: (d.value - 0.0612781).abs() <= crate::golden::DISCORD_TOLERANCE,
            detail: format!("{:.9}", d.value),
        }),
        StateArg::Product | StateArg::Classical => doc.checks.push(Check {
            name: "zero discord ± 1e-8".into(),
            passed: d.value.abs() <= 1e-8,
            detail: format!("{:e}", d.value),
        }),
        StateArg::Seed => {}
    }
    if a.report_angles {
        let again = measured_entropy(&rho, &a.measured, d.theta, d.phi, base)? - von_neumann_entropy(&rho, base)?;
        doc.checks.push(Check {
            name: "angles re-evaluate to the minimum within 1e-8".into(),
            passed: (again - d.value).abs() <= 1e-8,
            detail: format!("theta {:.9}, phi {:.9}, value {again:.12}", d.theta, d.phi),
        });
    }
    let mut csv = None;
    if let Some(grid) = a.sweep {
        let land = discord_landscape(&rho, &a.measured, base, grid)?;
        let mut text = String::from("theta,phi,value\n");
        for &(t, p, v) in &land {
            use crate::report::sig12;
            text.push_str(&format!("{},{},{}\n", sig12(t), sig12(p), sig12(v)));
        }
        doc.landscape = land.into_iter().map(|(t, p, v)| [t, p, v]).collect();
        csv = Some(text);
    }
    doc.discord.push(d);
    let csv = csv.or_else(|| {
        let d = &doc.discord[0];
        Some(format!(
            "measured,base,value,theta,phi\n{},{},{},{},{}\n",
            d.measured,
            if d.base == EntropyBase::Two { "2" } else { "e" },
            crate::report::sig12(d.value),
            crate::report::sig12(d.theta),
            crate::report::sig12(d.phi)
        ))
    });
    Ok(finish(doc, &a.output, started, csv))
}

/// Error for commands whose arguments parse but cannot be honored.
pub fn is_usage_error(e: &anyhow::Error) -> bool {
    e.downcast_ref::<UsageError>().is_some()
}

pub fn ensure_writable(out: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = out {
        if p.is_dir() {
            bail!("--out {} is a directory", p.display());
        }
    }
    Ok(())
}
