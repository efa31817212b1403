use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use groupdt::{
    build_grouped, build_id3, classify, compare, compare_holdout, extract_rules,
    generate_synthetic, parse_csv, parse_unlabeled, rules_to_text, ClassSelector, Dataset,
    DecisionTree, InductionParams,
};

/// Decision tree induction with ID3 and per-node group escalation.
#[derive(Debug, Parser)]
#[command(name = "groupdt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a tree from a labeled CSV and write it as JSON.
    Train(TrainArgs),
    /// Predict a label for every row of a CSV, one per line.
    Classify(ClassifyArgs),
    /// Build both trees on a CSV and report accuracy and tree size.
    Compare(CompareArgs),
    /// Write a tree as Graphviz DOT.
    ExportDot(ExportArgs),
    /// Write a tree as IF-THEN rules.
    ExportRules(ExportArgs),
    /// Write a seeded, class-separable synthetic CSV.
    GenSynthetic(SynthArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Id3,
    Grouped,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Labeled CSV input.
    #[arg(long = "input")]
    input_path: PathBuf,
    /// Class column: `last`, a zero-based index, or a column name.
    #[arg(long, default_value = "last")]
    class_column: ClassSelector,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Upper bound on the number of equal-width groups tried per node.
    #[arg(long, default_value_t = 10)]
    max_groups: usize,
    /// Majority fraction at which a grouped node becomes a leaf.
    #[arg(long, default_value_t = 1.0)]
    purity: f64,
    /// Global equal-width bins for numeric attributes under ID3.
    #[arg(long, default_value_t = 3)]
    id3_bins: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<InductionParams, CliError> {
        let p = InductionParams {
            max_groups: self.max_groups,
            purity_threshold: self.purity,
            id3_fixed_bins: self.id3_bins,
        };
        p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(p)
    }
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, value_enum, default_value = "grouped")]
    algorithm: AlgorithmArg,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "output")]
    output_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Tree JSON written by `train`.
    #[arg(long)]
    tree: PathBuf,
    /// CSV whose header names the tree's attributes; other columns are ignored.
    #[arg(long = "input")]
    input_path: PathBuf,
    #[arg(long = "output")]
    output_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Train on a seeded 70% of rows and report on the remaining 30%.
    #[arg(long)]
    holdout: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long = "output")]
    output_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Tree JSON written by `train`.
    #[arg(long)]
    tree: Option<PathBuf>,
    /// Labeled CSV to train on first.
    #[arg(long = "input")]
    input_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "last")]
    class_column: ClassSelector,
    #[arg(long, value_enum, default_value = "grouped")]
    algorithm: AlgorithmArg,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long = "output")]
    output_path: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 50)]
    rows: usize,
    #[arg(long, default_value_t = 4)]
    attrs: usize,
    #[arg(long, default_value_t = 2)]
    classes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "output")]
    output_path: Option<PathBuf>,
}

enum CliError {
    /// Bad flags or parameter values; exit status 1.
    Usage(String),
    /// Unreadable or invalid input; exit status 2.
    Data(String),
}

fn data_err(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Data(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, class_column: &ClassSelector) -> Result<Dataset, CliError> {
    parse_csv(&read(path)?, class_column)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn build(
    d: &Dataset,
    algorithm: AlgorithmArg,
    params: &InductionParams,
) -> Result<DecisionTree, CliError> {
    match algorithm {
        AlgorithmArg::Id3 => build_id3(d, params),
        AlgorithmArg::Grouped => build_grouped(d, params),
    }
    .map_err(data_err)
}

fn load_tree(path: &Path) -> Result<DecisionTree, CliError> {
    DecisionTree::from_json(&read(path)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn export_tree(args: &ExportArgs) -> Result<DecisionTree, CliError> {
    let params = args.params.params()?;
    match (&args.source.tree, &args.source.input_path) {
        (Some(tree), _) => load_tree(tree),
        (None, Some(input)) => build(&load(input, &args.class_column)?, args.algorithm, &params),
        (None, None) => Err(CliError::Usage(
            "one of --tree or --input is required".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(a) => {
            let params = a.params.params()?;
            let d = load(&a.data.input_path, &a.data.class_column)?;
            let mut json = build(&d, a.algorithm, &params)?.to_json();
            json.push('\n');
            emit(a.output_path.as_deref(), &json)
        }
        Command::Classify(a) => {
            let tree = load_tree(&a.tree)?;
            let rows = parse_unlabeled(&read(&a.input_path)?, &tree.schema).map_err(data_err)?;
            let mut out = String::new();
            for row in &rows {
                out.push_str(classify(&tree, row).map_err(data_err)?);
                out.push('\n');
            }
            emit(a.output_path.as_deref(), &out)
        }
        Command::Compare(a) => {
            let params = a.params.params()?;
            let d = load(&a.data.input_path, &a.data.class_column)?;
            let report = if a.holdout {
                compare_holdout(&d, &params, 0.7, a.seed)
            } else {
                compare(&d, &params)
            }
            .map_err(data_err)?;
            let mut text = match a.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            emit(a.output_path.as_deref(), &text)
        }
        Command::ExportDot(a) => {
            let tree = export_tree(&a)?;
            emit(a.output_path.as_deref(), &tree.to_dot())
        }
        Command::ExportRules(a) => {
            let tree = export_tree(&a)?;
            emit(
                a.output_path.as_deref(),
                &rules_to_text(&extract_rules(&tree), &tree.schema),
            )
        }
        Command::GenSynthetic(a) => {
            let d = generate_synthetic(a.rows, a.attrs, a.classes, a.seed)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            emit(a.output_path.as_deref(), &d.to_csv())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
