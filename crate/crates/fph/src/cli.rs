//! The `fph` command line.
//!
//! Stages talk through files: `mine` writes a pattern file that `filtrate`,
//! `persist`, `features`, `bottleneck` and `export` read back, and
//! `classify` consumes feature CSVs. Failures print one line,
//! `fph: error[<kind>]: <message>`, and exit with 2 (config), 3 (data) or
//! 4 (internal).

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use fph_core::{
    perturb_graph, ClassifyError, ComplexError, GraphDataset, KnnConfig, MiningConfig, MiningError, PatternSet,
    PerturbError, PerturbMode, RobustnessConfig,
};
use serde::{Serialize, Serializer};

use crate::error::DataError;
use crate::formats::{self, Header};
use crate::pipeline::{self, Filtration};
use crate::tudataset::{load_tudataset, write_tudataset};

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Data(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Data(_) => 3,
            Self::Internal(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            Self::Config(m) => ("config", m),
            Self::Data(m) => ("data", m),
            Self::Internal(m) => ("internal", m),
        };
        write!(f, "fph: error[{kind}]: {}", msg.replace('\n', " "))
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Self::Data(e.to_string())
    }
}

impl From<MiningError> for Failure {
    fn from(e: MiningError) -> Self {
        match e {
            MiningError::EmptyDataset => Self::Data(e.to_string()),
            MiningError::DuplicatePattern(_) | MiningError::InvalidPattern => Self::Internal(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Self::Internal(e.to_string())
    }
}

impl From<PerturbError> for Failure {
    fn from(e: PerturbError) -> Self {
        match e {
            PerturbError::InsufficientNonEdges { .. } => Self::Data(e.to_string()),
            _ => Self::Config(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::TooFewFolds(_) | ClassifyError::ZeroNeighbors => Self::Config(e.to_string()),
            _ => Self::Data(e.to_string()),
        }
    }
}

/// Embedding budget: a positive count, or `inf` for exact mining.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub Option<usize>);

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "none" => Ok(Self(None)),
            n => match n.parse::<usize>() {
                Ok(0) | Err(_) => Err(format!("budget must be a positive integer or `inf`, got `{n}`")),
                Ok(b) => Ok(Self(Some(b))),
            },
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(b) => write!(f, "{b}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for Budget {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Homology dimensions as `0-2` or `0,1,3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dims(pub Vec<usize>);

impl FromStr for Dims {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid dimensions `{s}` (expected e.g. `0-2` or `0,1`)");
        let mut dims = Vec::new();
        for part in s.split(',') {
            match part.split_once('-') {
                Some((a, b)) => {
                    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                    if a > b {
                        return Err(bad());
                    }
                    dims.extend(a..=b);
                }
                None => dims.push(part.trim().parse().map_err(|_| bad())?),
            }
        }
        dims.sort_unstable();
        dims.dedup();
        Ok(Self(dims))
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, String>
where
    T::Err: fmt::Display,
{
    s.split(',').map(|x| x.trim().parse().map_err(|e: T::Err| format!("`{x}`: {e}"))).collect()
}

#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_list(s).map(Self)
    }
}

#[derive(Parser, Debug)]
#[command(name = "fph", version, about = "Frequent-subgraph persistent homology for labeled graph datasets")]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mine MNI-frequent patterns and write a pattern file plus stats JSON.
    Mine(MineArgs),
    /// Dump each graph's filtered complex.
    Filtrate(FiltrateArgs),
    /// Write persistence diagrams as CSV.
    Persist(PersistArgs),
    /// Write the feature CSV.
    Features(FeaturesArgs),
    /// Bottleneck stability under edge perturbation.
    Bottleneck(BottleneckArgs),
    /// Write a perturbed copy of a dataset.
    Perturb(PerturbArgs),
    /// Cross-validated k-NN accuracy of a feature CSV.
    Classify(ClassifyArgs),
    /// Write FPH and degree-baseline feature CSVs side by side.
    Export(ExportArgs),
    /// Mine under a sweep of embedding budgets.
    BenchBudget(BenchArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct DataArgs {
    /// Directory holding the dataset files, or their parent.
    #[arg(long, env = "FPH_DATA_DIR", default_value = ".")]
    pub data_dir: PathBuf,
    #[arg(long)]
    pub dataset: String,
    /// Restrict to a class-stratified sample of this many graphs.
    #[arg(long)]
    pub subset: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub subset_seed: u64,
}

impl DataArgs {
    pub fn load(&self) -> Result<GraphDataset, Failure> {
        let nested = self.data_dir.join(&self.dataset);
        let dir = if nested.is_dir() { nested } else { self.data_dir.clone() };
        let dataset = load_tudataset(&dir, &self.dataset)?;
        log::info!("loaded {} graphs from {}", dataset.len(), dir.display());
        Ok(match self.subset {
            Some(0) => return Err(Failure::Config("--subset must be positive".into())),
            Some(n) => dataset.subset(&pipeline::stratified_subset(dataset.class_labels(), n, self.subset_seed)),
            None => dataset,
        })
    }
}

#[derive(Args, Debug, Serialize)]
pub struct MineArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Minimum MNI support.
    #[arg(long, required_unless_present = "min_patterns")]
    pub sigma: Option<u32>,
    /// Choose the largest halving-schedule sigma that yields this many patterns.
    #[arg(long, conflicts_with = "sigma")]
    pub min_patterns: Option<usize>,
    /// Maximum pattern vertex count.
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "inf")]
    pub budget: Budget,
    #[arg(long, default_value = "patterns.tsv")]
    pub out: PathBuf,
    /// Stats JSON; defaults to the pattern file with a `.stats.json` suffix.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct FiltrationArgs {
    #[arg(long, value_enum, default_value = "fph")]
    pub filtration: Filtration,
    /// Pattern file from `mine` (needed for the fph filtration).
    #[arg(long)]
    pub patterns: Option<PathBuf>,
    /// Largest pattern size used; defaults to the pattern file's k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Per-pattern embedding cap while building complexes.
    #[arg(long)]
    pub cap: Option<usize>,
}

impl FiltrationArgs {
    /// Pattern set (empty for the degree filtration) and the k to build with.
    fn resolve(&self) -> Result<(PatternSet, usize), Failure> {
        let patterns = match (&self.patterns, self.filtration) {
            (Some(path), _) => formats::read_patterns(path)?,
            (None, Filtration::Dph) => PatternSet::from_patterns(Vec::new(), MiningConfig::new(1, 2))?,
            (None, Filtration::Fph) => return Err(Failure::Config("the fph filtration needs --patterns".into())),
        };
        let k = match (self.k, self.filtration) {
            (Some(k), _) if k < 2 => return Err(Failure::Config(format!("k must be at least 2, got {k}"))),
            (Some(k), _) => k,
            (None, Filtration::Fph) => patterns.config().k,
            (None, Filtration::Dph) => 2,
        };
        if self.cap == Some(0) {
            return Err(Failure::Config("--cap must be positive".into()));
        }
        Ok((patterns, k))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct FiltrateArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub filtration: FiltrationArgs,
    /// One `graph_<id>.tsv` per graph is written here.
    #[arg(long, default_value = "complexes")]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct PersistArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub filtration: FiltrationArgs,
    #[arg(long, default_value = "diagrams.csv")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub filtration: FiltrationArgs,
    /// Reuse a diagram CSV from `persist` instead of recomputing.
    #[arg(long)]
    pub diagrams: Option<PathBuf>,
    /// Homology dimensions, e.g. `0-2`; defaults to every computed dimension.
    #[arg(long)]
    pub dims: Option<Dims>,
    #[arg(long, default_value = "features.csv")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct BottleneckArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub filtration: FiltrationArgs,
    #[arg(long, default_value = "remove,add")]
    pub modes: List<PerturbMode>,
    #[arg(long, default_value = "0.05,0.1")]
    pub ratios: List<f64>,
    /// Dimensions compared; defaults to 1 up to k-1.
    #[arg(long)]
    pub dims: Option<Dims>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "robustness.csv")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct PerturbArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long)]
    pub mode: PerturbMode,
    #[arg(long)]
    pub ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "perturbed")]
    pub out_dir: PathBuf,
    /// Name of the written dataset; defaults to `<dataset>_<mode>_<ratio>`.
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub neighbors: usize,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub shuffle_labels: bool,
    #[arg(long, default_value = "cv.json")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct ExportArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Pattern file from `mine`.
    #[arg(long)]
    pub patterns: PathBuf,
    #[arg(long)]
    pub cap: Option<usize>,
    /// FPH dimensions; defaults to 0 up to k-1.
    #[arg(long)]
    pub dims: Option<Dims>,
    #[arg(long, default_value = "export")]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct BenchArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long)]
    pub sigma: u32,
    #[arg(long)]
    pub k: usize,
    /// Must include `inf`, the normalization reference.
    #[arg(long, default_value = "5000,10000,20000,50000,inf")]
    pub budgets: List<Budget>,
    #[arg(long, default_value = "budget.csv")]
    pub out: PathBuf,
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", Failure::Config(first.to_string()));
            return 2;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}

pub fn execute(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Config("--threads must be positive".into()));
        }
        // A second call in the same process (tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Mine(a) => mine(&a),
        Command::Filtrate(a) => filtrate(&a),
        Command::Persist(a) => persist(&a),
        Command::Features(a) => features(&a),
        Command::Bottleneck(a) => bottleneck(&a),
        Command::Perturb(a) => perturb(&a),
        Command::Classify(a) => classify(&a),
        Command::Export(a) => export(&a),
        Command::BenchBudget(a) => bench_budget(&a),
    }
}

#[derive(Serialize)]
struct MiningReport {
    sigma: u32,
    pattern_count: usize,
    patterns_explored: u64,
    embeddings_retained: u64,
    runtime_seconds: f64,
    peak_rss_kib: Option<u64>,
}

fn mine(a: &MineArgs) -> Result<(), Failure> {
    let header = Header::new("mine", a);
    let dataset = a.data.load()?;
    let start = std::time::Instant::now();
    let (sigma, mut set) = match (a.sigma, a.min_patterns) {
        (Some(sigma), _) => (sigma, pipeline::mine_timed(&dataset, MiningConfig::new(sigma, a.k).with_budget(a.budget.0))?),
        (None, Some(n)) => {
            MiningConfig::new(1, a.k).with_budget(a.budget.0).validate()?;
            let (sigma, _) = pipeline::sigma_for_pattern_count(&dataset, a.k, n)?;
            log::info!("sigma {sigma} yields at least {n} patterns");
            (sigma, pipeline::mine_timed(&dataset, MiningConfig::new(sigma, a.k).with_budget(a.budget.0))?)
        }
        (None, None) => return Err(Failure::Config("need --sigma or --min-patterns".into())),
    };
    set.stats_mut().wall_time = Some(start.elapsed());
    formats::write_file(&a.out, |w| formats::write_patterns(w, &header, &set))?;
    let report = MiningReport {
        sigma,
        pattern_count: set.len(),
        patterns_explored: set.stats().patterns_explored,
        embeddings_retained: set.stats().embeddings_retained,
        runtime_seconds: set.stats().wall_time.unwrap_or_default().as_secs_f64(),
        peak_rss_kib: pipeline::peak_rss_kib(),
    };
    let stats = a.stats.clone().unwrap_or_else(|| suffixed(&a.out, ".stats.json"));
    formats::write_file(&stats, |w| formats::write_json(w, &header, &report))?;
    log::info!("{} patterns at sigma {sigma} in {:.3}s", set.len(), report.runtime_seconds);
    Ok(())
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn filtrate(a: &FiltrateArgs) -> Result<(), Failure> {
    let header = Header::new("filtrate", a);
    let dataset = a.data.load()?;
    let (patterns, k) = a.filtration.resolve()?;
    let complexes = pipeline::complexes(&dataset, a.filtration.filtration, &patterns, k, a.filtration.cap);
    for (g, c) in complexes.iter().enumerate() {
        c.check()?;
        let path = a.out_dir.join(format!("graph_{g}.tsv"));
        formats::write_file(&path, |w| formats::write_complex(w, &header, c))?;
    }
    Ok(())
}

fn persist(a: &PersistArgs) -> Result<(), Failure> {
    let header = Header::new("persist", a);
    let dataset = a.data.load()?;
    let (patterns, k) = a.filtration.resolve()?;
    let diagrams = pipeline::diagrams(&dataset, a.filtration.filtration, &patterns, k, a.filtration.cap)?;
    formats::write_file(&a.out, |w| formats::write_diagrams(w, &header, &diagrams))?;
    Ok(())
}

fn check_dims(dims: &[usize], max_dim: usize) -> Result<(), Failure> {
    match dims.iter().find(|&&d| d > max_dim) {
        Some(d) => Err(Failure::Config(format!("dimension {d} exceeds the highest computed dimension {max_dim}"))),
        None if dims.is_empty() => Err(Failure::Config("no dimensions selected".into())),
        None => Ok(()),
    }
}

fn features(a: &FeaturesArgs) -> Result<(), Failure> {
    let header = Header::new("features", a);
    let dataset = a.data.load()?;
    let (diagrams, dims) = match &a.diagrams {
        Some(path) => {
            let diagrams = formats::read_diagrams(path)?;
            if diagrams.len() != dataset.len() {
                return Err(Failure::Data(format!(
                    "{}: {} diagrams for {} graphs",
                    path.display(),
                    diagrams.len(),
                    dataset.len()
                )));
            }
            let dims = match (&a.dims, &a.filtration.patterns) {
                (Some(d), _) => d.0.clone(),
                (None, Some(_)) => {
                    let (_, k) = a.filtration.resolve()?;
                    (0..=a.filtration.filtration.max_dim(k)).collect()
                }
                (None, None) => return Err(Failure::Config("--diagrams without --patterns needs --dims".into())),
            };
            (diagrams, dims)
        }
        None => {
            let (patterns, k) = a.filtration.resolve()?;
            let max_dim = a.filtration.filtration.max_dim(k);
            let dims = a.dims.as_ref().map_or_else(|| (0..=max_dim).collect(), |d| d.0.clone());
            check_dims(&dims, max_dim)?;
            (pipeline::diagrams(&dataset, a.filtration.filtration, &patterns, k, a.filtration.cap)?, dims)
        }
    };
    let fv = pipeline::features(&diagrams, &dims);
    formats::write_file(&a.out, |w| formats::write_features(w, &header, &fv, dataset.class_labels()))?;
    Ok(())
}

fn bottleneck(a: &BottleneckArgs) -> Result<(), Failure> {
    let header = Header::new("bottleneck", a);
    let dataset = a.data.load()?;
    let (patterns, k) = a.filtration.resolve()?;
    if a.filtration.filtration != Filtration::Fph {
        return Err(Failure::Config("bottleneck stability is defined for the fph filtration".into()));
    }
    let max_dim = k - 1;
    let dims = a.dims.as_ref().map_or_else(|| (1..=max_dim).collect(), |d| d.0.clone());
    check_dims(&dims, max_dim)?;
    let config = RobustnessConfig {
        modes: a.modes.0.clone(),
        ratios: a.ratios.0.clone(),
        dims,
        seed: a.seed,
        k,
        cap: a.filtration.cap,
    };
    let report = pipeline::robustness(&dataset, &patterns, &config)?;
    formats::write_file(&a.out, |w| formats::write_robustness(w, &header, &a.data.dataset, dataset.len(), &report))?;
    Ok(())
}

#[derive(Serialize)]
struct PerturbSummary {
    graphs: usize,
    unchanged_for_lack_of_non_edges: Vec<usize>,
}

fn perturb(a: &PerturbArgs) -> Result<(), Failure> {
    let header = Header::new("perturb", a);
    let dataset = a.data.load()?;
    let mut skipped = Vec::new();
    let mut graphs = Vec::with_capacity(dataset.len());
    for (i, g) in dataset.graphs().iter().enumerate() {
        match perturb_graph(g, a.mode, a.ratio, fph_core::robustness::trial_seed(a.seed, i, 0)) {
            Ok(p) => graphs.push(p),
            Err(PerturbError::InsufficientNonEdges { .. }) => {
                log::warn!("graph {i} has too few non-edges; left unchanged");
                skipped.push(i);
                graphs.push(g.clone());
            }
            Err(e) => return Err(e.into()),
        }
    }
    let perturbed = GraphDataset::with_alphabet(graphs, dataset.class_labels().to_vec(), dataset.label_alphabet())
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let name = a.name.clone().unwrap_or_else(|| format!("{}_{}_{}", a.data.dataset, a.mode.as_str(), a.ratio));
    write_tudataset(&perturbed, &a.out_dir, &name)?;
    let summary = PerturbSummary { graphs: perturbed.len(), unchanged_for_lack_of_non_edges: skipped };
    formats::write_file(&a.out_dir.join(format!("{name}_fph.json")), |w| formats::write_json(w, &header, &summary))?;
    Ok(())
}

fn classify(a: &ClassifyArgs) -> Result<(), Failure> {
    let header = Header::new("classify", a);
    let table = formats::read_features(&a.features)?;
    let config = KnnConfig { k_neighbors: a.neighbors, folds: a.folds, seed: a.seed, shuffle_labels: a.shuffle_labels };
    let report = pipeline::cross_validate(&table.rows, &table.classes, &config)?;
    #[derive(Serialize)]
    struct Doc<'a> {
        folds: &'a [f64],
        mean: f64,
        std: f64,
        config: &'a KnnConfig,
        feature_count: usize,
    }
    let doc = Doc { folds: &report.fold_accuracies, mean: report.mean, std: report.std, config: &report.config, feature_count: report.feature_count };
    formats::write_file(&a.out, |w| formats::write_json(w, &header, &doc))?;
    log::info!("mean accuracy {:.4} (std {:.4})", report.mean, report.std);
    Ok(())
}

fn export(a: &ExportArgs) -> Result<(), Failure> {
    let header = Header::new("export", a);
    let dataset = a.data.load()?;
    let patterns = formats::read_patterns(&a.patterns)?;
    let k = patterns.config().k;
    let dims = a.dims.as_ref().map_or_else(|| (0..k).collect(), |d| d.0.clone());
    check_dims(&dims, k - 1)?;
    for (filtration, dims, file) in [
        (Filtration::Fph, dims.clone(), "fph_features.csv"),
        (Filtration::Dph, vec![0, 1], "dph_features.csv"),
    ] {
        let diagrams = pipeline::diagrams(&dataset, filtration, &patterns, k, a.cap)?;
        let fv = pipeline::features(&diagrams, &dims);
        formats::write_file(&a.out_dir.join(file), |w| formats::write_features(w, &header, &fv, dataset.class_labels()))?;
    }
    Ok(())
}

fn bench_budget(a: &BenchArgs) -> Result<(), Failure> {
    let header = Header::new("bench-budget", a);
    if !a.budgets.0.contains(&Budget(None)) {
        return Err(Failure::Config("--budgets must include `inf`".into()));
    }
    let dataset = a.data.load()?;
    let budgets: Vec<Option<usize>> = a.budgets.0.iter().map(|b| b.0).collect();
    let rows = pipeline::budget_sweep(&dataset, a.sigma, a.k, &budgets)?;
    let exact = &rows.iter().find(|(r, _)| r.budget.is_none()).expect("inf present").0;
    let ratio = |x: f64, y: f64| if y > 0.0 { x / y } else { 0.0 };
    formats::write_file(&a.out, |w| {
        use std::io::Write;
        header.write(w)?;
        writeln!(w, "budget,runtime_seconds,patterns,embeddings_retained,runtime_norm,patterns_norm,embeddings_norm")?;
        for (r, _) in &rows {
            let secs = r.runtime.as_secs_f64();
            writeln!(
                w,
                "{},{secs},{},{},{},{},{}",
                Budget(r.budget),
                r.patterns,
                r.embeddings_retained,
                ratio(secs, exact.runtime.as_secs_f64()),
                ratio(r.patterns as f64, exact.patterns as f64),
                ratio(r.embeddings_retained as f64, exact.embeddings_retained as f64),
            )?;
        }
        Ok(())
    })?;
    Ok(())
}
