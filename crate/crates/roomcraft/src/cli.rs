//! The `roomcraft` command line. Diagnostics go to stderr as one JSON object
//! per line; results go to `--out` or stdout.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use roomcraft_core::constraints::{compile_constraints_with, ConstraintTuple};
use roomcraft_core::graph::build_graph;
use roomcraft_core::metrics::{coherence_score, oob_flag_with, orientation_correctness_with};
use roomcraft_core::placement::PlacementError;
use serde_json::{json, Value};

use crate::bench::{bench_csv, run_bench, run_sweep, sweep_csv, BenchConfig, BenchRow, SweepRow, DEFAULT_DENSITIES, DEFAULT_RATIOS};
use crate::config::RunConfig;
use crate::extraction::{Attachment, ExtractionError, ExtractionProvider, Extractor, HttpProvider, MockProvider};
use crate::layout_io::{constraint_from_json, correction_trace_json, item_trace_block, parse_layout, serialize_layout, to_pretty};
use crate::pipeline::{correct, exit, generate, PipelineError};
use crate::render::{graph_dot, layout_svg};
use crate::spec::{parse_scene_spec, serialize_scene_spec, SpecError, Warning};

#[derive(Debug, Parser)]
#[command(name = "roomcraft", version, about = "Constraint-driven room layout generation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scene spec → layout JSON + SVG (+ correction trace with --trace).
    Generate(GenerateArgs),
    /// Free text → scene spec, through the mock or an HTTP provider.
    Extract(ExtractArgs),
    /// Parse and check a scene spec.
    Validate(ValidateArgs),
    /// Run the correction loop on an existing layout.
    Optimize(OptimizeArgs),
    /// OOB / orientation / coherence for one or more layouts.
    Metrics(MetricsArgs),
    /// Draw a layout file.
    Render(RenderArgs),
    /// The spatial relation graph of a spec.
    Graph(GraphArgs),
    /// CAPS vs fixed weights vs random placement on generated scenes.
    Bench(BenchArgs),
    /// The bench at several α/β ratios.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Svg => "svg",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// TOML config; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Output directory for layout.json, layout.svg and trace.json.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also write the correction trace.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProviderKind {
    Mock,
    Http,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Description text; `-` or no value reads stdin.
    pub text: Option<String>,
    #[arg(long, conflicts_with = "text")]
    pub input: Option<PathBuf>,
    /// Image sent to the provider with every prompt (HTTP provider only).
    #[arg(long)]
    pub image: Vec<PathBuf>,
    /// Defaults to `http` when ROOMCRAFT_LLM_URL is set, else `mock`.
    #[arg(long, value_enum)]
    pub provider: Option<ProviderKind>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub layout: PathBuf,
    /// Spec whose relations are compiled into constraints.
    #[arg(long, required_unless_present = "constraints")]
    pub spec: Option<PathBuf>,
    /// JSON array of constraint tuples, used instead of --spec.
    #[arg(long, conflicts_with = "spec")]
    pub constraints: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the correction trace.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(required = true)]
    pub layouts: Vec<PathBuf>,
    /// Spec supplying the constraints for orientation and coherence.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub layout: PathBuf,
    #[arg(long, value_enum, default_value = "svg")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Graphviz DOT instead of JSON.
    #[arg(long)]
    pub dot: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Scenes per density.
    #[arg(long, default_value_t = crate::bench::DEFAULT_SCENES)]
    pub scenes: usize,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DENSITIES.to_vec())]
    pub densities: Vec<f64>,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_RATIOS.to_vec())]
    pub ratios: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub scenes: usize,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DENSITIES.to_vec())]
    pub densities: Vec<f64>,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed command: exit code plus the stderr record.
#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
    pub extra: Value,
}

impl Failure {
    fn new(exit: i32, code: &str, message: impl Into<String>) -> Self {
        Self {
            exit,
            code: code.into(),
            message: message.into(),
            extra: Value::Null,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(exit::USAGE, "Usage", message)
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let mut f = Failure::new(e.exit_code(), e.code(), e.to_string());
        if let PipelineError::Placement(PlacementError::ItemUnplaceable { trace, .. }) = &e {
            f.extra = json!({ "trace": item_trace_block(trace) });
        }
        f
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        PipelineError::Spec(e).into()
    }
}

/// One JSON object per line on stderr.
pub fn diagnostic(level: &str, fields: Value) -> String {
    let mut obj = serde_json::Map::new();
    obj.insert("level".into(), Value::from(level));
    if let Value::Object(m) = fields {
        obj.extend(m);
    }
    Value::Object(obj).to_string()
}

fn emit(level: &str, fields: Value) {
    let _ = writeln!(std::io::stderr().lock(), "{}", diagnostic(level, fields));
}

fn warn_all(warnings: &[Warning]) {
    for w in warnings {
        emit("warning", json!({ "code": "UnknownField", "path": w.path, "message": w.message }));
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(exit::USAGE, "Io", format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| Failure::new(exit::USAGE, "Io", format!("cannot write {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_file(p, content),
        None => std::io::stdout()
            .lock()
            .write_all(content.as_bytes())
            .map_err(|e| Failure::new(exit::USAGE, "Io", format!("cannot write stdout: {e}"))),
    }
}

fn load_config(args: &ConfigArgs) -> Result<RunConfig, Failure> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::load(p).map_err(|e| Failure::new(exit::USAGE, "InvalidConfig", e.to_string()))?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.caps.seed = seed;
    }
    Ok(cfg)
}

fn load_spec(path: &Path) -> Result<roomcraft_core::scene::SceneOrganization, Failure> {
    let (org, warnings) = parse_scene_spec(&read(path)?)?;
    warn_all(&warnings);
    Ok(org)
}

fn bench_config(args: &ConfigArgs, scenes: usize, densities: &[f64]) -> Result<BenchConfig, Failure> {
    let cfg = load_config(args)?;
    Ok(BenchConfig {
        scenes,
        densities: densities.to_vec(),
        seed: args.seed.unwrap_or(1),
        caps: cfg.caps,
        constraints: cfg.constraints,
        metrics: cfg.metrics,
        ..BenchConfig::default()
    })
}

fn wrong_format(cmd: &str, f: Format) -> Failure {
    Failure::usage(format!("`{cmd}` cannot produce --format {}", f.name()))
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<i32, Failure> {
    let cfg = load_config(&args.config)?;
    let org = load_spec(&args.spec)?;
    let g = generate(&org, &cfg)?;
    fs::create_dir_all(&args.out).map_err(|e| Failure::new(exit::USAGE, "Io", format!("cannot create {}: {e}", args.out.display())))?;
    let layout_path = args.out.join("layout.json");
    let svg_path = args.out.join("layout.svg");
    write_file(&layout_path, &serialize_layout(&g.layout, Some(&g.placement_trace)))?;
    write_file(&svg_path, &layout_svg(&g.layout))?;
    let mut written = vec![layout_path.display().to_string(), svg_path.display().to_string()];
    if args.trace {
        let trace_path = args.out.join("trace.json");
        write_file(&trace_path, &to_pretty(&correction_trace_json(&g.correction, &g.residual)))?;
        written.push(trace_path.display().to_string());
    }
    emit(
        "info",
        json!({
            "event": "generated",
            "items": g.layout.items.len(),
            "correction_rounds": g.correction.rounds.len(),
            "residual": g.residual.len(),
            "files": written,
        }),
    );
    if g.has_essential_residual() {
        let ids: Vec<String> = g
            .residual
            .iter()
            .filter(|v| v.constraint.essential)
            .map(|v| v.constraint.objects.join(","))
            .collect();
        return Err(Failure::new(
            exit::ESSENTIAL_RESIDUAL,
            "EssentialResidual",
            format!("essential constraints still violated: {}", ids.join("; ")),
        ));
    }
    Ok(exit::OK)
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Failure::new(exit::USAGE, "Io", format!("cannot read stdin: {e}")))?;
    Ok(s)
}

fn media_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("png") => "image/png",
        Some("jpg" | "jpeg") => "image/jpeg",
        Some("gif") => "image/gif",
        Some("webp") => "image/webp",
        _ => "application/octet-stream",
    }
}

fn run_extract<P: ExtractionProvider>(provider: P, text: &str, attachments: &[Attachment], out: Option<&Path>) -> Result<i32, Failure> {
    let name = provider.name().to_owned();
    let result = Extractor::new(provider).extract(text, attachments).map_err(|e| {
        let code = match &e {
            ExtractionError::EmptyInput => "EmptyInput",
            ExtractionError::ExtractionFailed { .. } => "ExtractionFailed",
            ExtractionError::ProviderUnavailable(_) => "ProviderUnavailable",
        };
        Failure::new(exit::EXTRACTION, code, e.to_string())
    })?;
    warn_all(&result.warnings);
    write_output(out, &serialize_scene_spec(&result.organization))?;
    emit(
        "info",
        json!({
            "event": "extracted",
            "provider": name,
            "items": result.organization.furniture.len(),
            "relations": result.organization.relations.len(),
        }),
    );
    Ok(exit::OK)
}

pub fn cmd_extract(args: &ExtractArgs) -> Result<i32, Failure> {
    let text = match (&args.text, &args.input) {
        (_, Some(p)) => read(p)?,
        (Some(t), None) if t != "-" => t.clone(),
        _ => read_stdin()?,
    };
    let mut attachments = Vec::new();
    for p in &args.image {
        let data = fs::read(p).map_err(|e| Failure::new(exit::USAGE, "Io", format!("cannot read {}: {e}", p.display())))?;
        attachments.push(Attachment {
            media_type: media_type(p).into(),
            data,
        });
    }
    let env_provider = HttpProvider::from_env();
    let kind = args.provider.unwrap_or(if env_provider.is_some() { ProviderKind::Http } else { ProviderKind::Mock });
    match kind {
        ProviderKind::Mock => {
            if !attachments.is_empty() {
                emit("warning", json!({ "code": "AttachmentsIgnored", "message": "the mock provider reads text only" }));
            }
            run_extract(MockProvider, &text, &[], args.out.as_deref())
        }
        ProviderKind::Http => {
            let provider = env_provider.ok_or_else(|| Failure::new(exit::EXTRACTION, "ProviderUnavailable", "ROOMCRAFT_LLM_URL is not set"))?;
            run_extract(provider, &text, &attachments, args.out.as_deref())
        }
    }
}

pub fn cmd_validate(args: &ValidateArgs) -> Result<i32, Failure> {
    let org = load_spec(&args.spec)?;
    crate::spec::check_organization(&org)?;
    build_graph(&org).map_err(PipelineError::from)?;
    org.build_room().map_err(PipelineError::from)?;
    let summary = json!({
        "valid": true,
        "room_type": org.room_type.as_str(),
        "furniture": org.furniture.len(),
        "relations": org.relations.len(),
    });
    write_output(None, &format!("{summary}\n"))?;
    Ok(exit::OK)
}

fn load_constraints(spec: Option<&Path>, file: Option<&Path>, cfg: &RunConfig) -> Result<Vec<ConstraintTuple>, Failure> {
    if let Some(p) = file {
        let v: Value = serde_json::from_str(&read(p)?).map_err(|e| Failure::from(SpecError::MalformedDocument(e.to_string())))?;
        let arr = v
            .as_array()
            .ok_or_else(|| Failure::from(SpecError::SchemaViolation("constraints file must hold a JSON array".into())))?;
        return arr.iter().map(|c| constraint_from_json(c).map_err(Failure::from)).collect();
    }
    match spec {
        Some(p) => {
            let org = load_spec(p)?;
            compile_constraints_with(&org, &cfg.constraints).map_err(|e| PipelineError::from(e).into())
        }
        None => Ok(Vec::new()),
    }
}

pub fn cmd_optimize(args: &OptimizeArgs) -> Result<i32, Failure> {
    let cfg = load_config(&args.config)?;
    let layout = parse_layout(&read(&args.layout)?)?;
    let constraints = load_constraints(args.spec.as_deref(), args.constraints.as_deref(), &cfg)?;
    let (fixed, trace, residual) = correct(&layout, &constraints, &cfg).map_err(PipelineError::Action)?;
    write_output(args.out.as_deref(), &serialize_layout(&fixed, None))?;
    if let Some(p) = &args.trace {
        write_file(p, &to_pretty(&correction_trace_json(&trace, &residual)))?;
    }
    emit(
        "info",
        json!({
            "event": "optimized",
            "rounds": trace.rounds.len(),
            "initial_total": trace.initial_total,
            "final_total": trace.final_total,
            "residual": residual.len(),
        }),
    );
    if residual.iter().any(|v| v.constraint.essential) {
        return Err(Failure::new(exit::ESSENTIAL_RESIDUAL, "EssentialResidual", "essential constraints still violated"));
    }
    Ok(exit::OK)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub name: String,
    pub oob: bool,
    pub ori: f64,
    pub coherence: f64,
}

pub const METRICS_HEADER: &str = "layout,oob,ori,coherence";

/// Per-layout rows (`oob` as 0/1), then an `all` row whose `oob` column is
/// the OOB rate in percent and whose other columns are means.
pub fn metrics_csv(rows: &[MetricsRow]) -> String {
    let mut s = String::from(METRICS_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{:.4},{:.6}", r.name.replace(',', "_"), u8::from(r.oob), r.ori, r.coherence);
    }
    if !rows.is_empty() {
        let n = rows.len() as f64;
        let rate = 100.0 * rows.iter().filter(|r| r.oob).count() as f64 / n;
        let ori = rows.iter().map(|r| r.ori).sum::<f64>() / n;
        let coh = rows.iter().map(|r| r.coherence).sum::<f64>() / n;
        let _ = writeln!(s, "all,{rate:.4},{ori:.4},{coh:.6}");
    }
    s
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<i32, Failure> {
    let cfg = load_config(&args.config)?;
    let constraints = load_constraints(args.spec.as_deref(), None, &cfg)?;
    let mut rows = Vec::new();
    for p in &args.layouts {
        let layout = parse_layout(&read(p)?)?;
        rows.push(MetricsRow {
            name: p.display().to_string(),
            oob: oob_flag_with(&layout, &cfg.metrics).flagged,
            ori: orientation_correctness_with(&layout, &constraints, &cfg.metrics),
            coherence: coherence_score(&layout, &constraints),
        });
    }
    let text = match args.format {
        Format::Csv => metrics_csv(&rows),
        Format::Json => to_pretty(&Value::Array(
            rows.iter()
                .map(|r| json!({ "layout": r.name, "oob": r.oob, "ori": r.ori, "coherence": r.coherence }))
                .collect(),
        )),
        f => return Err(wrong_format("metrics", f)),
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(exit::OK)
}

pub fn cmd_render(args: &RenderArgs) -> Result<i32, Failure> {
    let layout = parse_layout(&read(&args.layout)?)?;
    let text = match args.format {
        Format::Svg => layout_svg(&layout),
        Format::Json => serialize_layout(&layout, None),
        f => return Err(wrong_format("render", f)),
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(exit::OK)
}

pub fn cmd_graph(args: &GraphArgs) -> Result<i32, Failure> {
    let org = load_spec(&args.spec)?;
    let graph = build_graph(&org).map_err(PipelineError::from)?;
    let text = if args.dot {
        graph_dot(&graph)
    } else {
        let nodes = graph.nodes();
        to_pretty(&json!({
            "nodes": nodes.iter().map(|n| n.id.clone()).collect::<Vec<_>>(),
            "edges": graph.edges().iter().map(|e| json!({
                "subject": nodes[e.subject].id,
                "object": nodes[e.object].id,
                "relation": e.relation.as_str(),
                "weight": e.weight,
            })).collect::<Vec<_>>(),
        }))
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(exit::OK)
}

fn bench_rows_json(rows: &[BenchRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "strategy": r.strategy.as_str(),
                    "density": r.density,
                    "scenes": r.scenes,
                    "items": r.items,
                    "oob_rate": r.oob_rate,
                    "ori": r.ori,
                    "completeness": r.completeness,
                    "coherence": r.coherence,
                })
            })
            .collect(),
    )
}

fn sweep_rows_json(rows: &[SweepRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({ "ratio": r.ratio, "alpha": r.alpha, "beta": r.beta, "coherence": r.coherence, "oob_rate": r.oob_rate, "ori": r.ori }))
            .collect(),
    )
}

pub fn cmd_bench(args: &BenchArgs) -> Result<i32, Failure> {
    let cfg = bench_config(&args.config, args.scenes, &args.densities)?;
    let report = run_bench(&cfg).map_err(|e| Failure::usage(e.to_string()))?;
    let text = match args.format {
        Format::Csv => bench_csv(&report.rows),
        Format::Json => to_pretty(&bench_rows_json(&report.rows)),
        f => return Err(wrong_format("bench", f)),
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(exit::OK)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<i32, Failure> {
    let cfg = bench_config(&args.config, args.scenes, &args.densities)?;
    let rows = run_sweep(&args.ratios, &cfg).map_err(|e| Failure::usage(e.to_string()))?;
    let text = match args.format {
        Format::Csv => sweep_csv(&rows),
        Format::Json => to_pretty(&sweep_rows_json(&rows)),
        f => return Err(wrong_format("sweep", f)),
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(exit::OK)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Render(a) => cmd_render(a),
        Command::Graph(a) => cmd_graph(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let mut fields = json!({ "code": f.code, "message": f.message, "exit": f.exit });
            if let (Value::Object(m), Value::Object(extra)) = (&mut fields, f.extra) {
                m.extend(extra);
            }
            emit("error", fields);
            f.exit
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metrics_csv_aggregate_row() {
        let rows = vec![
            MetricsRow {
                name: "a.json".into(),
                oob: true,
                ori: 50.0,
                coherence: 0.5,
            },
            MetricsRow {
                name: "b.json".into(),
                oob: false,
                ori: 100.0,
                coherence: 1.0,
            },
        ];
        let csv = metrics_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], METRICS_HEADER);
        assert_eq!(lines[1], "a.json,1,50.0000,0.500000");
        assert_eq!(lines[3], "all,50.0000,75.0000,0.750000");
    }

    #[test]
    fn diagnostics_are_single_line_json() {
        let line = diagnostic("error", json!({ "code": "X", "message": "two\nlines" }));
        assert!(!line.contains('\n'));
        let v: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["level"], "error");
        assert_eq!(v["code"], "X");
    }

    #[test]
    fn parses_every_subcommand() {
        for args in [
            vec!["roomcraft", "generate", "--spec", "s.json", "--seed", "7", "--trace"],
            vec!["roomcraft", "extract", "a bed"],
            vec!["roomcraft", "validate", "--spec", "s.json"],
            vec!["roomcraft", "optimize", "--layout", "l.json", "--spec", "s.json"],
            vec!["roomcraft", "metrics", "a.json", "b.json", "--format", "json"],
            vec!["roomcraft", "render", "--layout", "l.json", "--format", "svg"],
            vec!["roomcraft", "graph", "--spec", "s.json", "--dot"],
            vec!["roomcraft", "bench", "--scenes", "2", "--densities", "0.1,0.2"],
            vec!["roomcraft", "sweep", "--ratios", "0.5,2"],
        ] {
            Cli::try_parse_from(&args).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        }
        assert!(Cli::try_parse_from(["roomcraft", "optimize", "--layout", "l.json"]).is_err());
    }
}
