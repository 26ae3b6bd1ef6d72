//! `mcda` command-line interface.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 method error, 4 network
//! error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mcda::aggregation::{aggregate, Rule};
use mcda::analysis::{
    build_comparison, correlation_matrix, heatmap_svg, parse_correlation_csv, read_table, Coefficient,
    ComparisonTable, CorrelationMatrix, LabeledRow, TableKind,
};
use mcda::llm::{self, ChatConfig, PromptContext, PromptContexts, TEMPLATES};
use mcda::method::{MethodSpec, DEFAULT_SEED};
use mcda::output::write_atomic;
use mcda::outranking::ec_promethee;
use mcda::problem::load_problem;
use mcda::specfile::RunSpec;
use mcda::weighting::{BwmComparisons, WeightingMethodId};
use mcda::{DecisionProblem, ErrorKind, McdaError, MethodOutput};

#[derive(Parser, Debug)]
#[command(name = "mcda", version, about = "Multicriteria decision analysis toolkit")]
struct Cli {
    /// Decision problem (CSV, JSON or TOML).
    #[arg(long, global = true)]
    problem: Option<PathBuf>,
    /// Output file (a directory for `prompts`, a path stem for `heatmap`).
    /// Standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for stochastic methods.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank the alternatives with one method.
    Rank {
        /// Method token, e.g. topsis, vikor, promethee_ii, ec_promethee.
        #[arg(long)]
        method: String,
        /// Parameter file in the spec format (`methods` line optional).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Criterion weights from one weighting method or all of them.
    Weights {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        /// entropy, critic, cilos, idocriw, merec or bwm.
        method: Option<String>,
        /// Run every weighting method into one table.
        #[arg(long)]
        all: bool,
        /// BWM best-to-others comparisons, comma separated.
        #[arg(long, value_delimiter = ',')]
        mic: Vec<u32>,
        /// BWM others-to-worst comparisons, comma separated.
        #[arg(long, value_delimiter = ',')]
        lic: Vec<u32>,
        /// Parameter file in the spec format (`methods` line optional).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run every method of a spec file into one comparison table.
    Compare {
        /// Spec file: a `methods = ...` line plus `method.param = value` lines.
        #[arg(long)]
        spec: PathBuf,
        /// Reference tables appended as external rows, comma separated.
        #[arg(long, value_delimiter = ',')]
        external: Vec<PathBuf>,
    },
    /// Consensus ranking over a ranks table.
    Aggregate {
        /// mode, borda or copeland.
        #[arg(long, default_value = "mode")]
        rule: String,
        /// Ranks table (`# kind=ranks`).
        table: PathBuf,
    },
    /// Correlation matrix between the rows of a table.
    Correlate {
        /// kendall or pearson; defaults to kendall for ranks, pearson for weights.
        #[arg(long)]
        coefficient: Option<String>,
        /// Ranks, scores or weights table.
        table: PathBuf,
    },
    /// SVG heatmap (plus CSV) of a correlation matrix or of a table.
    Heatmap {
        /// Coefficient used when INPUT is a table (see `correlate`).
        #[arg(long)]
        coefficient: Option<String>,
        /// A table or a correlation matrix written by `correlate`.
        input: PathBuf,
    },
    /// Render analysis prompts; with --dump, one file per template.
    Prompts {
        #[command(flatten)]
        contexts: ContextArgs,
        /// Template ids, comma separated; all templates with a context by default.
        #[arg(long, value_delimiter = ',')]
        template: Vec<String>,
        /// Write one `<template>.txt` per prompt into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Send one prompt to a chat-completions endpoint.
    Chat {
        #[command(flatten)]
        contexts: ContextArgs,
        /// Template id to render with the given contexts.
        #[arg(long, conflicts_with = "prompt_file", required_unless_present = "prompt_file")]
        template: Option<String>,
        /// Send this file verbatim instead of a template.
        #[arg(long)]
        prompt_file: Option<PathBuf>,
        /// Full chat-completions URL, e.g. https://host/v1/chat/completions.
        #[arg(long)]
        endpoint: String,
        #[arg(long)]
        model: String,
        /// Environment variable holding the API key.
        #[arg(long, default_value = llm::DEFAULT_API_KEY_ENV)]
        api_key_env: String,
        #[arg(long, default_value_t = 0.0)]
        temperature: f64,
        /// Request timeout in seconds.
        #[arg(long, default_value_t = 60.0)]
        timeout: f64,
        /// Save the transcript (prompt, response, settings; never the key) here.
        #[arg(long)]
        transcripts_dir: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ContextArgs {
    /// Ranks table; its Kendall matrix is derived unless --rank-corr is given.
    #[arg(long)]
    ranks: Option<PathBuf>,
    /// Weights table; its Pearson matrix is derived unless --weight-corr is given.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Precomputed rank correlation CSV.
    #[arg(long)]
    rank_corr: Option<PathBuf>,
    /// Precomputed weight correlation CSV.
    #[arg(long)]
    weight_corr: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(McdaError),
}

impl From<McdaError> for Failure {
    fn from(e: McdaError) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(ErrorKind::Usage.exit_code() as u8)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.kind().exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Rank { method, config } => cmd_rank(cli, method, config.as_deref()),
        Command::Weights {
            method,
            all,
            mic,
            lic,
            config,
        } => cmd_weights(cli, method.as_deref(), *all, mic, lic, config.as_deref()),
        Command::Compare { spec, external } => cmd_compare(cli, spec, external),
        Command::Aggregate { rule, table } => cmd_aggregate(cli, rule, table),
        Command::Correlate { coefficient, table } => cmd_correlate(cli, coefficient.as_deref(), table),
        Command::Heatmap { coefficient, input } => cmd_heatmap(cli, coefficient.as_deref(), input),
        Command::Prompts {
            contexts,
            template,
            dump,
        } => cmd_prompts(cli, contexts, template, dump.as_deref()),
        Command::Chat { .. } => cmd_chat(cli),
    }
}

fn seed(cli: &Cli) -> u64 {
    cli.seed.unwrap_or(DEFAULT_SEED)
}

/// `#` lines naming the tool, the invocation and the seed.
fn header(cli: &Cli, params: &[String]) -> String {
    let mut h = format!("# mcda {}\n", env!("CARGO_PKG_VERSION"));
    let args: Vec<String> = std::env::args().skip(1).collect();
    let _ = writeln!(h, "# command: mcda {}", args.join(" "));
    let _ = writeln!(h, "# seed: {}", seed(cli));
    for p in params {
        let _ = writeln!(h, "# param: {p}");
    }
    h
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(path) => Ok(write_atomic(path, text.as_bytes())?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require_problem(cli: &Cli) -> CliResult<DecisionProblem> {
    let path = cli
        .problem
        .as_ref()
        .ok_or_else(|| Failure::Usage("this command needs --problem".into()))?;
    Ok(load_problem(path)?)
}

fn load_config(path: Option<&Path>) -> CliResult<RunSpec> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| McdaError::Io {
                path: p.display().to_string(),
                source: e,
            })?;
            Ok(RunSpec::parse_config(&text)?)
        }
        None => Ok(RunSpec::default()),
    }
}

fn spec_params(spec: &RunSpec) -> Vec<String> {
    spec.params.iter().map(|(k, v)| format!("{k} = {v}")).collect()
}

fn text_grid(table: &ComparisonTable) -> CliResult<String> {
    Ok(llm::serialize_context(PromptContext::Table(table))?)
}

fn write_table(cli: &Cli, table: &ComparisonTable, params: &[String]) -> CliResult<()> {
    for d in &table.diagnostics {
        eprintln!("warning: {} failed: {}", d.label, d.message);
    }
    let body = match cli.format {
        Format::Csv => table.to_csv(),
        Format::Text => {
            let mut s = if table.is_empty() { String::new() } else { text_grid(table)? };
            for d in &table.diagnostics {
                let _ = writeln!(s, "failed {}: {}", d.label, d.message);
            }
            s
        }
    };
    emit(cli, &(header(cli, params) + &body))
}

fn cmd_rank(cli: &Cli, method: &str, config: Option<&Path>) -> CliResult<()> {
    let problem = require_problem(cli)?;
    let mut spec = load_config(config)?;
    let token = method.trim().to_ascii_lowercase();
    if token.parse::<WeightingMethodId>().is_ok() {
        return Err(Failure::Usage(format!("{method} is a weighting method; use `weights`")));
    }
    spec.methods = vec![token];
    let resolved = spec.resolve(&problem, Some(seed(cli))).map_err(|e| match e {
        McdaError::UnknownMethod(m) => Failure::Usage(format!("unknown method {m:?}")),
        other => Failure::Lib(other),
    })?;
    let ms = &resolved[0];
    let mut params = spec_params(&spec);
    params.insert(0, format!("method = {}", ms.label()));

    let labels = problem.alternatives();
    let mut head = vec!["alternative".to_string(), "score".to_string(), "rank".to_string()];
    let mut rows: Vec<Vec<String>> = Vec::new();
    if let MethodSpec::EcPromethee {
        thresholds,
        functions,
        config,
    } = ms
    {
        let ec = ec_promethee(&problem, thresholds, functions, config)?;
        head.extend(["mean_rank".into(), "modal_rank".into(), "multimodal".into()]);
        head.extend((1..=labels.len()).map(|r| format!("freq_{r}")));
        for i in 0..labels.len() {
            let mut r = vec![
                labels[i].clone(),
                format!("{}", ec.ranking.scores[i]),
                ec.ranking.ranks.as_slice()[i].to_string(),
                format!("{}", ec.mean_ranks[i]),
                ec.modal_ranks[i].to_string(),
                ec.multimodal[i].to_string(),
            ];
            r.extend(ec.frequencies[i].iter().map(|f| f.to_string()));
            rows.push(r);
        }
    } else {
        let MethodOutput::Ranking(r) = ms.run(&problem)? else {
            unreachable!("ranking methods return rankings")
        };
        for i in 0..labels.len() {
            rows.push(vec![
                labels[i].clone(),
                format!("{}", r.scores[i]),
                r.ranks.as_slice()[i].to_string(),
            ]);
        }
    }
    let body = match cli.format {
        Format::Csv => csv_text(&head, &rows),
        Format::Text => plain_grid(&head, &rows),
    };
    emit(cli, &(header(cli, &params) + &body))
}

fn csv_text(head: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(head).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn plain_grid(head: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = head.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(head).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(j, (c, w))| if j == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn cmd_weights(
    cli: &Cli,
    method: Option<&str>,
    all: bool,
    mic: &[u32],
    lic: &[u32],
    config: Option<&Path>,
) -> CliResult<()> {
    let problem = require_problem(cli)?;
    let mut spec = load_config(config)?;
    if mic.is_empty() != lic.is_empty() {
        return Err(Failure::Usage("--mic and --lic must be given together".into()));
    }
    let ids: Vec<WeightingMethodId> = if all {
        WeightingMethodId::ALL.to_vec()
    } else {
        let m = method.expect("clap requires --method without --all");
        vec![m.parse().map_err(|_| Failure::Usage(format!("unknown weighting method {m:?}")))?]
    };
    spec.methods = ids.iter().map(|id| id.token().to_string()).collect();
    let mut specs = spec.resolve(&problem, Some(seed(cli)))?;
    if !mic.is_empty() {
        let cmp = BwmComparisons {
            mic: mic.to_vec(),
            lic: lic.to_vec(),
        };
        for s in &mut specs {
            if let MethodSpec::Weighting { bwm, .. } = s {
                *bwm = Some(cmp.clone());
            }
        }
    }
    let mut params = spec_params(&spec);
    if !mic.is_empty() {
        params.push(format!("bwm.mic = {}", join(mic)));
        params.push(format!("bwm.lic = {}", join(lic)));
    }
    let table = if all {
        build_comparison(&problem, &specs, &[])?
    } else {
        // run directly so the error keeps its kind (and exit code)
        let MethodOutput::Weights(w) = specs[0].run(&problem)? else {
            unreachable!("weighting methods return weights")
        };
        for warning in &w.warnings {
            eprintln!("warning: {warning}");
        }
        let columns = problem.criteria().iter().map(|c| c.name.clone()).collect();
        let mut t = ComparisonTable::new(TableKind::Weights, columns);
        t.push_row(LabeledRow::new(specs[0].label(), w.weights))?;
        t
    };
    write_table(cli, &table, &params)
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

fn cmd_compare(cli: &Cli, spec_path: &Path, external: &[PathBuf]) -> CliResult<()> {
    let problem = require_problem(cli)?;
    let spec = RunSpec::parse_file(spec_path)?;
    let specs = spec.resolve(&problem, Some(seed(cli)))?;
    let refs = external.iter().map(read_table).collect::<mcda::Result<Vec<_>>>()?;
    let table = build_comparison(&problem, &specs, &refs)?;
    let mut params = vec![format!("methods = {}", spec.methods.join(", "))];
    params.extend(spec_params(&spec));
    write_table(cli, &table, &params)
}

fn cmd_aggregate(cli: &Cli, rule: &str, path: &Path) -> CliResult<()> {
    let rule: Rule = rule
        .parse()
        .map_err(|_| Failure::Usage(format!("unknown rule {rule:?} (expected mode, borda or copeland)")))?;
    let table = read_table(path)?;
    let ranks = table.rank_table()?;
    let result = aggregate(&ranks, rule)?;
    let labels = &table.columns;
    let order: Vec<&str> = result.order.order().iter().map(|&i| labels[i].as_str()).collect();
    let mut params = vec![format!("rule = {rule:?}").to_lowercase(), format!("rows = {}", table.len())];
    for t in &result.ties {
        let names: Vec<&str> = t.iter().map(|&i| labels[i].as_str()).collect();
        params.push(format!("tie = {}", names.join(" ")));
        eprintln!("warning: the rule could not separate {}", names.join(", "));
    }
    let head = vec![
        "alternative".to_string(),
        "consensus_rank".to_string(),
        "score".to_string(),
        "multimodal".to_string(),
    ];
    let rows: Vec<Vec<String>> = (0..labels.len())
        .map(|i| {
            vec![
                labels[i].clone(),
                result.order.as_slice()[i].to_string(),
                format!("{}", result.scores[i]),
                result.multimodal[i].to_string(),
            ]
        })
        .collect();
    let mut body = format!("# consensus: {}\n", order.join(", "));
    body.push_str(&match cli.format {
        Format::Csv => csv_text(&head, &rows),
        Format::Text => plain_grid(&head, &rows),
    });
    emit(cli, &(header(cli, &params) + &body))
}

fn parse_coefficient(s: Option<&str>, kind: TableKind) -> CliResult<Coefficient> {
    match s {
        Some(c) => c.parse().map_err(|_| Failure::Usage(format!("unknown coefficient {c:?}"))),
        None => Ok(Coefficient::default_for(kind)),
    }
}

fn correlate_table(coefficient: Option<&str>, table: &ComparisonTable) -> CliResult<CorrelationMatrix> {
    let coef = parse_coefficient(coefficient, table.kind)?;
    let m = correlation_matrix(table, coef)?;
    for w in &m.warnings {
        eprintln!("warning: {w}");
    }
    Ok(m)
}

fn matrix_body(cli: &Cli, m: &CorrelationMatrix) -> CliResult<String> {
    Ok(match cli.format {
        Format::Csv => m.to_csv(),
        Format::Text => llm::serialize_context(PromptContext::Correlation(m))?,
    })
}

fn cmd_correlate(cli: &Cli, coefficient: Option<&str>, path: &Path) -> CliResult<()> {
    let table = read_table(path)?;
    let m = correlate_table(coefficient, &table)?;
    let params = vec![format!("coefficient = {}", m.coefficient.token())];
    emit(cli, &(header(cli, &params) + &matrix_body(cli, &m)?))
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Failure::Lib(McdaError::Io {
            path: path.display().to_string(),
            source: e,
        })
    })
}

/// A correlation CSV carries a `# coefficient=` line; anything else is read
/// as a table and correlated.
fn load_matrix(coefficient: Option<&str>, path: &Path) -> CliResult<CorrelationMatrix> {
    let text = read_text(path)?;
    if text.lines().any(|l| l.trim_start().starts_with("# coefficient=")) {
        if coefficient.is_some() {
            return Err(Failure::Usage(format!("{} is already a correlation matrix", path.display())));
        }
        Ok(parse_correlation_csv(&text)?)
    } else {
        correlate_table(coefficient, &mcda::analysis::parse_table(&text)?)
    }
}

fn cmd_heatmap(cli: &Cli, coefficient: Option<&str>, input: &Path) -> CliResult<()> {
    let out = cli
        .out
        .as_ref()
        .ok_or_else(|| Failure::Usage("heatmap needs --out (path stem for the .csv and .svg files)".into()))?;
    let m = load_matrix(coefficient, input)?;
    let params = vec![format!("coefficient = {}", m.coefficient.token())];
    let head = header(cli, &params);
    let csv_path = out.with_extension("csv");
    let svg_path = out.with_extension("svg");
    write_atomic(&csv_path, (head.clone() + &m.to_csv()).as_bytes())?;
    let comment: String = head.lines().map(|l| format!("<!-- {} -->\n", l.trim_start_matches("# ").replace("--", "- -"))).collect();
    write_atomic(&svg_path, (comment + &heatmap_svg(&m)).as_bytes())?;
    println!("{}", csv_path.display());
    println!("{}", svg_path.display());
    Ok(())
}

struct LoadedContexts {
    rank_table: Option<ComparisonTable>,
    weight_table: Option<ComparisonTable>,
    rank_corr: Option<CorrelationMatrix>,
    weight_corr: Option<CorrelationMatrix>,
}

impl LoadedContexts {
    fn load(args: &ContextArgs) -> CliResult<Self> {
        let table = |p: &Option<PathBuf>, want: TableKind| -> CliResult<Option<ComparisonTable>> {
            match p {
                Some(p) => {
                    let t = read_table(p)?;
                    if t.kind != want {
                        return Err(Failure::Usage(format!("{} is not a {} table", p.display(), want.token())));
                    }
                    Ok(Some(t))
                }
                None => Ok(None),
            }
        };
        let rank_table = table(&args.ranks, TableKind::Ranks)?;
        let weight_table = table(&args.weights, TableKind::Weights)?;
        let corr = |p: &Option<PathBuf>, t: &Option<ComparisonTable>| -> CliResult<Option<CorrelationMatrix>> {
            match (p, t) {
                (Some(p), _) => Ok(Some(load_matrix(None, p)?)),
                (None, Some(t)) => Ok(Some(correlate_table(None, t)?)),
                (None, None) => Ok(None),
            }
        };
        let rank_corr = corr(&args.rank_corr, &rank_table)?;
        let weight_corr = corr(&args.weight_corr, &weight_table)?;
        Ok(LoadedContexts {
            rank_table,
            weight_table,
            rank_corr,
            weight_corr,
        })
    }

    fn view(&self) -> PromptContexts<'_> {
        PromptContexts {
            rank_table: self.rank_table.as_ref(),
            weight_table: self.weight_table.as_ref(),
            rank_corr: self.rank_corr.as_ref(),
            weight_corr: self.weight_corr.as_ref(),
        }
    }
}

fn cmd_prompts(cli: &Cli, args: &ContextArgs, ids: &[String], dump: Option<&Path>) -> CliResult<()> {
    let loaded = LoadedContexts::load(args)?;
    let contexts = loaded.view();
    let ids: Vec<&str> = if ids.is_empty() {
        TEMPLATES
            .iter()
            .filter(|t| contexts.for_kind(t.required_context).is_some())
            .map(|t| t.id)
            .collect()
    } else {
        ids.iter().map(String::as_str).collect()
    };
    if ids.is_empty() {
        return Err(Failure::Usage(
            "no prompt context given (use --ranks, --weights, --rank-corr or --weight-corr)".into(),
        ));
    }
    match dump {
        Some(dir) => {
            for p in llm::dump_prompts(&ids, &contexts, dir)? {
                println!("{}", p.display());
            }
            Ok(())
        }
        None => {
            let mut out = String::new();
            for id in &ids {
                let t = llm::template(id).ok_or_else(|| McdaError::UnknownTemplate(id.to_string()))?;
                let ctx = contexts
                    .for_kind(t.required_context)
                    .ok_or_else(|| McdaError::Data(format!("no {:?} context supplied for template {id}", t.required_context)))?;
                let _ = writeln!(out, "=== {id} ===");
                out.push_str(&llm::render_prompt(id, ctx)?);
            }
            emit(cli, &out)
        }
    }
}

fn cmd_chat(cli: &Cli) -> CliResult<()> {
    let Command::Chat {
        contexts,
        template,
        prompt_file,
        endpoint,
        model,
        api_key_env,
        temperature,
        timeout,
        transcripts_dir,
    } = &cli.command
    else {
        unreachable!()
    };
    if !(timeout.is_finite() && *timeout > 0.0) {
        return Err(Failure::Usage(format!("--timeout must be positive, got {timeout}")));
    }
    let mut config = ChatConfig::new(endpoint.clone(), model.clone());
    config.api_key_env = api_key_env.clone();
    config.temperature = *temperature;
    config.timeout = Duration::from_secs_f64(*timeout);
    config.validate().map_err(|e| Failure::Lib(e.into()))?;

    let (name, prompt) = match (template, prompt_file) {
        (Some(id), _) => {
            let t = llm::template(id).ok_or_else(|| McdaError::UnknownTemplate(id.clone()))?;
            let loaded = LoadedContexts::load(contexts)?;
            let view = loaded.view();
            let ctx = view.for_kind(t.required_context).ok_or_else(|| {
                Failure::Usage(format!("template {id} needs a {:?} context", t.required_context))
            })?;
            (id.clone(), llm::render_prompt(id, ctx)?)
        }
        (None, Some(path)) => ("prompt".to_string(), read_text(path)?),
        (None, None) => unreachable!("clap requires --template or --prompt-file"),
    };
    let transcript = llm::ask(&config, &prompt).map_err(|e| Failure::Lib(e.into()))?;
    if let Some(dir) = transcripts_dir {
        std::fs::create_dir_all(dir).map_err(|e| McdaError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
        let stamp = transcript.timestamp.replace([':', '.'], "-");
        let path = dir.join(format!("{name}-{stamp}.json"));
        let json = serde_json::to_string_pretty(&transcript).expect("transcript serializes");
        write_atomic(&path, json.as_bytes())?;
        eprintln!("transcript: {}", path.display());
    }
    let mut text = transcript.response.clone();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(cli, &text)
}
