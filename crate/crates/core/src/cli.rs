//! Command-line front end.
//!
//! Every command resolves a [`RunConfig`] (JSON file from `--config`, then
//! flags on top), writes its outputs into `--out` together with a
//! `provenance.json`, and maps failures to exit codes 2 (input), 3
//! (shape/contract) and 4 (numeric/degenerate) with a one-line diagnostic.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::da::{self, DaKind, DomainData, ScenarioManifest, DEFAULT_HIST_FRACTION};
use crate::error::{Error, Result};
use crate::io::{load_raw_csv, load_tensor_any, save_tensor};
use crate::measures::timing::timed;
use crate::measures::{run_suite, MeasureConfig, MeasureReport};
use crate::preprocess::{run_pipeline, PreprocessConfig, SeqLen};
use crate::provenance::Provenance;
use crate::rank::{analyze, ScoreTable, DEFAULT_ALPHA};
use crate::registry::registry;
use crate::sine::{run_robustness, PhaseSharing, RobustnessProfile};
use crate::viz::{distribution_data, tsne_embed, DistributionMode, TsneConfig};

pub const OUT_DIR_ENV: &str = "TSGEVAL_OUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RobustnessSettings {
    pub profile: RobustnessProfile,
    pub seq_len: usize,
    pub r_count: usize,
    pub dim_count: usize,
    pub sharing: PhaseSharing,
}

impl Default for RobustnessSettings {
    fn default() -> Self {
        Self {
            profile: RobustnessProfile::Calibrated,
            seq_len: 24,
            r_count: 10_000,
            dim_count: 5,
            sharing: PhaseSharing::Independent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DistributionSettings {
    pub bins: usize,
    pub mode: DistributionMode,
}

impl Default for DistributionSettings {
    fn default() -> Self {
        Self {
            bins: 50,
            mode: DistributionMode::Histogram,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DaSettings {
    pub hist_fraction: f64,
    pub seed: u64,
}

impl Default for DaSettings {
    fn default() -> Self {
        Self {
            hist_fraction: DEFAULT_HIST_FRACTION,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RankSettings {
    pub alpha: f64,
}

impl Default for RankSettings {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
        }
    }
}

/// Parameters of every command; the JSON file given with `--config` mirrors it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Global seed; overrides every section's seed when set.
    pub seed: Option<u64>,
    pub preprocess: PreprocessConfig,
    /// Measure settings; the robustness command uses its profile's settings instead.
    pub measures: MeasureConfig,
    pub robustness: RobustnessSettings,
    pub tsne: TsneConfig,
    pub distribution: DistributionSettings,
    pub da: DaSettings,
    pub rank: RankSettings,
}

impl RunConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    fn apply_seed(&mut self, seed: u64) {
        self.seed = Some(seed);
        self.preprocess.shuffle_seed = seed;
        self.measures.seed = seed;
        self.tsne.seed = seed;
        self.da.seed = seed;
    }
}

fn parse_enum<T: DeserializeOwned>(s: &str) -> std::result::Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.replace('-', "_")))
        .map_err(|e| format!("invalid value {s:?}: {e}"))
}

fn parse_seq_len(s: &str) -> std::result::Result<SeqLen, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(SeqLen::Auto);
    }
    s.parse()
        .map(SeqLen::Fixed)
        .map_err(|_| format!("expected \"auto\" or a positive integer, got {s:?}"))
}

#[derive(Debug, Parser)]
#[command(
    name = "tsgeval",
    version,
    about = "Evaluate synthetic time-series generators"
)]
pub struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Global seed applied to every seeded step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = "tsgeval-out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Window, shuffle, split and normalize a raw CSV series.
    Preprocess(PreprocessArgs),
    /// Score a generated tensor against an original tensor.
    Evaluate(EvaluateArgs),
    /// Run the sine-wave robustness experiment.
    Robustness(RobustnessArgs),
    /// Domain-adaptation scenarios.
    #[command(subcommand)]
    Da(DaCmd),
    /// Friedman test, Conover post-hoc and critical-difference tiers.
    Rank(RankArgs),
    /// Plot data for t-SNE and value distributions.
    #[command(subcommand)]
    Viz(VizCmd),
    /// Print the dataset registry.
    Datasets {
        #[arg(long)]
        json: bool,
    },
    /// Run an external generator, time it, and optionally score its output.
    RunExternal(RunExternalArgs),
}

#[derive(Debug, Args)]
pub struct PreprocessArgs {
    /// Raw CSV, one column per dimension.
    #[arg(long)]
    pub input: PathBuf,
    /// The CSV has no header row.
    #[arg(long)]
    pub no_header: bool,
    /// Window length or "auto".
    #[arg(long, value_parser = parse_seq_len)]
    pub seq_len: Option<SeqLen>,
    #[arg(long)]
    pub stride: Option<usize>,
    #[arg(long)]
    pub split_ratio: Option<f64>,
    #[arg(long)]
    pub no_normalize: bool,
}

#[derive(Debug, Args, Default)]
pub struct MeasureArgs {
    /// Index pairing, density histograms, per-dimension ED, squared-cost DTW.
    #[arg(long)]
    pub calibrated: bool,
    /// index | nearest_neighbor
    #[arg(long, value_parser = parse_enum::<crate::measures::Pairing>)]
    pub pairing: Option<crate::measures::Pairing>,
    #[arg(long)]
    pub bins: Option<usize>,
    /// frequency | density
    #[arg(long, value_parser = parse_enum::<crate::measures::HistogramScale>)]
    pub histogram_scale: Option<crate::measures::HistogramScale>,
    #[arg(long)]
    pub max_lag: Option<usize>,
    #[arg(long)]
    pub repeats: Option<usize>,
    #[arg(long)]
    pub nn_subsample: Option<usize>,
}

impl MeasureArgs {
    fn resolve(&self, mut cfg: MeasureConfig) -> MeasureConfig {
        if self.calibrated {
            cfg = MeasureConfig {
                repeats: cfg.repeats,
                nn_subsample: cfg.nn_subsample,
                seed: cfg.seed,
                ..MeasureConfig::calibrated()
            };
        }
        if let Some(p) = self.pairing {
            cfg.pairing = p;
        }
        if let Some(b) = self.bins {
            cfg.histogram_bins = b;
        }
        if let Some(s) = self.histogram_scale {
            cfg.histogram_scale = s;
        }
        if self.max_lag.is_some() {
            cfg.acf_max_lag = self.max_lag;
        }
        if let Some(r) = self.repeats {
            cfg.repeats = r;
        }
        if self.nn_subsample.is_some() {
            cfg.nn_subsample = self.nn_subsample;
        }
        cfg
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub orig: PathBuf,
    #[arg(long)]
    pub gen: PathBuf,
    #[command(flatten)]
    pub measures: MeasureArgs,
}

#[derive(Debug, Args)]
pub struct RobustnessArgs {
    /// Window length.
    #[arg(short = 'l', long)]
    pub seq_len: Option<usize>,
    /// calibrated | literal
    #[arg(long, value_parser = parse_enum::<RobustnessProfile>)]
    pub profile: Option<RobustnessProfile>,
    #[arg(long)]
    pub windows: Option<usize>,
    #[arg(long)]
    pub dims: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum DaCmd {
    /// Write training sets, ground truth and manifests for DA scenarios.
    Build(DaBuildArgs),
    /// Score a generator's output for one scenario manifest.
    Evaluate(DaEvaluateArgs),
}

#[derive(Debug, Args)]
pub struct DaBuildArgs {
    #[arg(long)]
    pub source_train: PathBuf,
    /// Defaults to the source training tensor.
    #[arg(long)]
    pub source_test: Option<PathBuf>,
    /// All target-domain windows; split into history and ground truth.
    #[arg(long)]
    pub target: PathBuf,
    /// single | cross | reference; all three when omitted.
    #[arg(long, value_parser = parse_enum::<DaKind>)]
    pub kind: Option<DaKind>,
    #[arg(long)]
    pub hist_fraction: Option<f64>,
    #[arg(long, default_value = "source")]
    pub source_name: String,
    #[arg(long, default_value = "target")]
    pub target_name: String,
}

#[derive(Debug, Args)]
pub struct DaEvaluateArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Generated tensor; defaults to the manifest's generated path.
    #[arg(long)]
    pub gen: Option<PathBuf>,
    #[command(flatten)]
    pub measures: MeasureArgs,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// CSV with header `method,<dataset>...`, one row per method, lower is better.
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum VizCmd {
    Tsne(TsneArgs),
    Dist(DistArgs),
}

#[derive(Debug, Args)]
pub struct TsneArgs {
    #[arg(long)]
    pub orig: PathBuf,
    #[arg(long)]
    pub gen: PathBuf,
    #[arg(long)]
    pub perplexity: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Maximum windows per source.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub orig: PathBuf,
    #[arg(long)]
    pub gen: PathBuf,
    #[arg(long)]
    pub bins: Option<usize>,
    /// histogram | kde
    #[arg(long, value_parser = parse_enum::<DistributionMode>)]
    pub mode: Option<DistributionMode>,
}

#[derive(Debug, Args)]
pub struct RunExternalArgs {
    /// Scenario manifest; its paths are exported to the command and its
    /// generated tensor is scored afterwards.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[command(flatten)]
    pub measures: MeasureArgs,
    /// Generator command and its arguments.
    #[arg(last = true, required = true)]
    pub command: Vec<String>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let recorded = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match run(cli, recorded) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "error kind={} code={} msg={}",
                e.kind(),
                e.exit_code(),
                e.to_string().replace('\n', " ")
            );
            ExitCode::from(e.exit_code())
        }
    }
}

/// Executes a parsed command; `args` is recorded verbatim in the provenance.
pub fn run(cli: Cli, args: Vec<String>) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed.or(cfg.seed) {
        cfg.apply_seed(seed);
    }
    let ctx = Ctx {
        out: cli.out,
        args,
        config_path: cli.config,
    };
    match cli.command {
        Cmd::Preprocess(a) => cmd_preprocess(&ctx, cfg, a),
        Cmd::Evaluate(a) => cmd_evaluate(&ctx, cfg, a),
        Cmd::Robustness(a) => cmd_robustness(&ctx, cfg, a),
        Cmd::Da(DaCmd::Build(a)) => cmd_da_build(&ctx, cfg, a),
        Cmd::Da(DaCmd::Evaluate(a)) => cmd_da_evaluate(&ctx, cfg, a),
        Cmd::Rank(a) => cmd_rank(&ctx, cfg, a),
        Cmd::Viz(VizCmd::Tsne(a)) => cmd_tsne(&ctx, cfg, a),
        Cmd::Viz(VizCmd::Dist(a)) => cmd_dist(&ctx, cfg, a),
        Cmd::Datasets { json } => cmd_datasets(json),
        Cmd::RunExternal(a) => cmd_run_external(&ctx, cfg, a),
    }
}

struct Ctx {
    out: PathBuf,
    args: Vec<String>,
    config_path: Option<PathBuf>,
}

impl Ctx {
    fn out_dir(&self) -> Result<&Path> {
        fs::create_dir_all(&self.out).map_err(|e| Error::io(&self.out, e))?;
        Ok(&self.out)
    }

    fn write(&self, name: impl AsRef<Path>, contents: impl AsRef<[u8]>) -> Result<PathBuf> {
        let path = self.out_dir()?.join(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    fn provenance(&self, command: &str, config: impl Serialize) -> Result<Provenance> {
        let p = Provenance::new(command, self.args.clone(), serde_json::to_value(config)?);
        match &self.config_path {
            Some(c) => p.input(c),
            None => Ok(p),
        }
    }

    fn finish(&self, p: Provenance) -> Result<()> {
        p.write_to(self.out_dir()?)?;
        Ok(())
    }
}

fn json(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn cmd_preprocess(ctx: &Ctx, cfg: RunConfig, a: PreprocessArgs) -> Result<()> {
    let mut pc = cfg.preprocess;
    if let Some(l) = a.seq_len {
        pc.seq_len = l;
    }
    if let Some(s) = a.stride {
        pc.stride = s;
    }
    if let Some(r) = a.split_ratio {
        pc.split_ratio = r;
    }
    if a.no_normalize {
        pc.normalize = false;
    }
    let raw = load_raw_csv(&a.input, !a.no_header)?;
    let out = run_pipeline(&raw, &pc)?;
    save_tensor(&out.train, ctx.out_dir()?.join("train.tsgt"))?;
    save_tensor(&out.test, ctx.out_dir()?.join("test.tsgt"))?;
    if let Some(s) = &out.scaler {
        ctx.write("scaler.csv", s.to_text())?;
    }
    let summary = serde_json::json!({
        "seq_len": out.seq_len,
        "dims": out.train.dims(),
        "train_windows": out.train.windows(),
        "test_windows": out.test.windows(),
        "columns": raw.columns(),
    });
    ctx.write("summary.json", json(&summary)?)?;
    let seed = pc.shuffle_seed;
    ctx.finish(
        ctx.provenance("preprocess", &pc)?
            .seed("shuffle", seed)
            .input(&a.input)?,
    )
}

fn cmd_evaluate(ctx: &Ctx, cfg: RunConfig, a: EvaluateArgs) -> Result<()> {
    let mc = a.measures.resolve(cfg.measures);
    let orig = load_tensor_any(&a.orig)?;
    let gen = load_tensor_any(&a.gen)?;
    let report = run_suite(&orig, &gen, &mc)?;
    ctx.write("report.json", report.to_json()? + "\n")?;
    let p = ctx
        .provenance("evaluate", &mc)?
        .seed("measures", mc.seed)
        .input(&a.orig)?
        .input(&a.gen)?;
    ctx.finish(p)
}

fn cmd_robustness(ctx: &Ctx, cfg: RunConfig, a: RobustnessArgs) -> Result<()> {
    let mut rs = cfg.robustness;
    if let Some(l) = a.seq_len {
        rs.seq_len = l;
    }
    if let Some(p) = a.profile {
        rs.profile = p;
    }
    if let Some(r) = a.windows {
        rs.r_count = r;
    }
    if let Some(n) = a.dims {
        rs.dim_count = n;
    }
    let seed = cfg.seed.unwrap_or(0);
    let mut sine = rs.profile.sine(rs.seq_len, seed);
    sine.r_count = rs.r_count;
    sine.dim_count = rs.dim_count;
    sine.sharing = rs.sharing;
    let table = run_robustness(&sine, &rs.profile.measures())?;
    ctx.write("robustness.csv", table.to_csv())?;
    ctx.write("robustness.json", table.to_json()? + "\n")?;
    let p = ctx
        .provenance("robustness", &rs)?
        .seed("original", seed)
        .seed("random_sampling", seed.wrapping_add(1));
    ctx.finish(p)
}

fn cmd_da_build(ctx: &Ctx, cfg: RunConfig, a: DaBuildArgs) -> Result<()> {
    let mut ds = cfg.da;
    if let Some(f) = a.hist_fraction {
        ds.hist_fraction = f;
    }
    let source_train = load_tensor_any(&a.source_train)?;
    let source_test = match &a.source_test {
        Some(p) => load_tensor_any(p)?,
        None => source_train.clone(),
    };
    let target = load_tensor_any(&a.target)?;
    let (hist, gt) = da::split_domain(&target, ds.hist_fraction, ds.seed)?;
    let data = DomainData {
        source_name: a.source_name.clone(),
        target_name: a.target_name.clone(),
        source_train,
        source_test,
        target_hist: Some(hist.clone()),
        target_gt: gt.clone(),
    };
    data.validate()?;
    let out = ctx.out_dir()?;
    save_tensor(&gt, out.join("ground_truth.tsgt"))?;
    save_tensor(&hist, out.join("target_history.tsgt"))?;

    let kinds = match a.kind {
        Some(k) => vec![k],
        None => DaKind::ALL.to_vec(),
    };
    for kind in kinds {
        let scenario = da::build(&data, kind, ds.seed)?;
        let dir = out.join(kind.as_str());
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        save_tensor(&scenario.training_set, dir.join("training.tsgt"))?;
        // Paths are relative to the manifest's directory.
        let manifest = ScenarioManifest {
            kind,
            source_name: data.source_name.clone(),
            target_name: data.target_name.clone(),
            training_path: "training.tsgt".into(),
            ground_truth_path: "../ground_truth.tsgt".into(),
            generated_path: "generated.tsgt".into(),
            hist_fraction: ds.hist_fraction,
            seed: ds.seed,
            training_windows: scenario.training_set.windows(),
            ground_truth_windows: scenario.eval_gt.windows(),
        };
        ctx.write(
            Path::new(kind.as_str()).join("manifest.json"),
            manifest.to_json()? + "\n",
        )?;
    }
    let mut p = ctx
        .provenance("da build", &ds)?
        .seed("da", ds.seed)
        .input(&a.source_train)?
        .input(&a.target)?;
    if let Some(t) = &a.source_test {
        p = p.input(t)?;
    }
    ctx.finish(p)
}

fn resolve_near(manifest: &Path, rel: &Path) -> PathBuf {
    match manifest.parent() {
        Some(dir) if rel.is_relative() => dir.join(rel),
        _ => rel.to_path_buf(),
    }
}

fn load_manifest(path: &Path) -> Result<ScenarioManifest> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ScenarioManifest::from_json(&text)
}

fn score_manifest(
    manifest_path: &Path,
    gen_override: Option<&Path>,
    mc: &MeasureConfig,
) -> Result<(MeasureReport, PathBuf, PathBuf)> {
    let m = load_manifest(manifest_path)?;
    let gt_path = resolve_near(manifest_path, &m.ground_truth_path);
    let gen_path = match gen_override {
        Some(g) => g.to_path_buf(),
        None => resolve_near(manifest_path, &m.generated_path),
    };
    let gt = load_tensor_any(&gt_path)?;
    let gen = load_tensor_any(&gen_path)?;
    let scenario = da::DaScenario {
        kind: m.kind,
        training_set: gt.clone(),
        eval_gt: gt,
    };
    Ok((da::evaluate_da(&gen, &scenario, mc)?, gt_path, gen_path))
}

fn cmd_da_evaluate(ctx: &Ctx, cfg: RunConfig, a: DaEvaluateArgs) -> Result<()> {
    let mc = a.measures.resolve(cfg.measures);
    let (report, gt_path, gen_path) = score_manifest(&a.manifest, a.gen.as_deref(), &mc)?;
    ctx.write("report.json", report.to_json()? + "\n")?;
    let p = ctx
        .provenance("da evaluate", &mc)?
        .seed("measures", mc.seed)
        .input(&a.manifest)?
        .input(&gt_path)?
        .input(&gen_path)?;
    ctx.finish(p)
}

fn cmd_rank(ctx: &Ctx, cfg: RunConfig, a: RankArgs) -> Result<()> {
    let alpha = a.alpha.unwrap_or(cfg.rank.alpha);
    let file = fs::File::open(&a.scores).map_err(|e| Error::io(&a.scores, e))?;
    let table = ScoreTable::read_csv(file)?;
    let analysis = analyze(&table, alpha)?;
    ctx.write("rank.json", analysis.to_json()? + "\n")?;
    ctx.write("rank.csv", analysis.to_csv())?;
    ctx.finish(
        ctx.provenance("rank", RankSettings { alpha })?
            .input(&a.scores)?,
    )
}

fn cmd_tsne(ctx: &Ctx, cfg: RunConfig, a: TsneArgs) -> Result<()> {
    let mut tc = cfg.tsne;
    if let Some(p) = a.perplexity {
        tc.perplexity = p;
    }
    if let Some(i) = a.iterations {
        tc.iterations = i;
    }
    if let Some(c) = a.cap {
        tc.cap = c;
    }
    let orig = load_tensor_any(&a.orig)?;
    let gen = load_tensor_any(&a.gen)?;
    let emb = tsne_embed(&orig, &gen, &tc)?;
    ctx.write("tsne.csv", emb.to_csv())?;
    let mut trace = String::from("iteration,kl\n");
    for (it, kl) in &emb.kl_trace {
        trace.push_str(&format!("{it},{kl:?}\n"));
    }
    ctx.write("kl_trace.csv", trace)?;
    let p = ctx
        .provenance("viz tsne", &tc)?
        .seed("tsne", tc.seed)
        .input(&a.orig)?
        .input(&a.gen)?;
    ctx.finish(p)
}

fn cmd_dist(ctx: &Ctx, cfg: RunConfig, a: DistArgs) -> Result<()> {
    let mut dc = cfg.distribution;
    if let Some(b) = a.bins {
        dc.bins = b;
    }
    if let Some(m) = a.mode {
        dc.mode = m;
    }
    let orig = load_tensor_any(&a.orig)?;
    let gen = load_tensor_any(&a.gen)?;
    let data = distribution_data(&orig, &gen, dc.bins, dc.mode)?;
    ctx.write("distribution.csv", data.to_csv())?;
    let p = ctx
        .provenance("viz dist", &dc)?
        .input(&a.orig)?
        .input(&a.gen)?;
    ctx.finish(p)
}

fn cmd_datasets(as_json: bool) -> Result<()> {
    if as_json {
        print!("{}", json(&registry())?);
        return Ok(());
    }
    println!("{:<12} {:>7} {:>4} {:>3}  domain", "dataset", "R", "l", "N");
    for d in registry() {
        println!(
            "{:<12} {:>7} {:>4} {:>3}  {}",
            d.name, d.r_count, d.seq_len, d.dim_count, d.domain
        );
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ExternalRun<'a> {
    command: &'a [String],
    status: Option<i32>,
    seconds: f64,
}

fn cmd_run_external(ctx: &Ctx, cfg: RunConfig, a: RunExternalArgs) -> Result<()> {
    let mc = a.measures.resolve(cfg.measures);
    let (program, rest) = a
        .command
        .split_first()
        .ok_or_else(|| Error::Parameter("no command given".into()))?;
    let mut cmd = Command::new(program);
    cmd.args(rest);
    if let Some(m) = &a.manifest {
        let manifest = load_manifest(m)?;
        cmd.env("TSGEVAL_MANIFEST", m)
            .env("TSGEVAL_TRAINING", resolve_near(m, &manifest.training_path))
            .env(
                "TSGEVAL_GENERATED",
                resolve_near(m, &manifest.generated_path),
            )
            .env("TSGEVAL_SEED", manifest.seed.to_string());
    }
    let (status, timing) = timed("generation", || cmd.status());
    let status = status.map_err(|e| Error::External(format!("{program}: {e}")))?;
    ctx.write(
        "timing.json",
        json(&ExternalRun {
            command: &a.command,
            status: status.code(),
            seconds: timing.seconds,
        })?,
    )?;
    if !status.success() {
        return Err(Error::External(format!("{program} exited with {status}")));
    }
    let mut p = ctx
        .provenance("run-external", &mc)?
        .seed("measures", mc.seed);
    if let Some(m) = &a.manifest {
        let (report, gt_path, gen_path) = score_manifest(m, None, &mc)?;
        ctx.write(
            "report.json",
            report.with_wall_clock(timing).to_json()? + "\n",
        )?;
        p = p.input(m)?.input(&gt_path)?.input(&gen_path)?;
    }
    ctx.finish(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip_and_partial() {
        let cfg = RunConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
        let partial: RunConfig =
            serde_json::from_str(r#"{"measures": {"repeats": 2}, "seed": 9}"#).unwrap();
        assert_eq!(partial.measures.repeats, 2);
        assert_eq!(partial.measures.histogram_bins, 50);
        assert_eq!(partial.seed, Some(9));
    }

    #[test]
    fn flags_override_config() {
        let args = MeasureArgs {
            calibrated: true,
            repeats: Some(1),
            ..MeasureArgs::default()
        };
        let mc = args.resolve(MeasureConfig {
            seed: 4,
            ..MeasureConfig::default()
        });
        assert_eq!(mc.pairing, crate::measures::Pairing::Index);
        assert_eq!(mc.repeats, 1);
        assert_eq!(mc.seed, 4);
    }

    #[test]
    fn enum_and_seq_len_parsers() {
        assert_eq!(parse_seq_len("auto").unwrap(), SeqLen::Auto);
        assert_eq!(parse_seq_len("24").unwrap(), SeqLen::Fixed(24));
        assert!(parse_seq_len("x").is_err());
        assert_eq!(
            parse_enum::<crate::measures::Pairing>("nearest-neighbor").unwrap(),
            crate::measures::Pairing::NearestNeighbor
        );
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
