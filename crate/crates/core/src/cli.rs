//! The `treelabel` command line.
//!
//! Exit status is 0 on success, 1 on any data or I/O error and 2 on usage
//! errors.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use rayon::prelude::*;

use crate::decoding::decode;
use crate::encoding::{encode, encode_leaf_unaries_psi, EncodingScheme, LabeledSentence, Scale, UnaryStrategy};
use crate::eval::{default_deleted_labels, encode_for_comparison, evaluate_trees};
use crate::labelfile::{read_labeled, read_psi, read_tagged, write_labeled, write_psi};
use crate::tagger::{
    load_model, save_model, train, train_psi_chains, train_two_pass, Pass, Pipeline, TaggerModel, TrainConfig,
};
use crate::treebank::{
    binarize, collapse_unaries, debinarize, read_treebank, serialize_bracketed, uncollapse_unaries, validate_symbols,
    Token, Tree,
};

/// Sentences handed to the worker pool at a time.
const CHUNK: usize = 512;

#[derive(Debug, Parser)]
#[command(name = "treelabel", version, about = "Constituent parsing as sequence labeling")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode bracketed trees as label files
    Encode {
        /// Treebank file, one tree per line ("-" for stdin)
        trees: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Binarize trees (right-branching) before encoding
        #[arg(long)]
        binarize: bool,
        /// Output label file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Leaf-chain label file for two-pass encoding (default: <output>.psi)
        #[arg(long)]
        psi: Option<PathBuf>,
    },
    /// Decode a label file into bracketed trees
    Decode {
        /// Label file ("-" for stdin)
        labels: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Output treebank file (default: stdout)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Train a tagger on a label file
    Train {
        /// Label file; for --pass psi, a leaf-chain (.psi) file is also accepted
        labels: PathBuf,
        /// Which labels to learn: psi (leaf chains), phi (n|c) or phi-prime (n|c|u)
        #[arg(long, default_value = "phi")]
        pass: Pass,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 20)]
        epochs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Where to write the model
        #[arg(long)]
        model: PathBuf,
        /// With --pass phi, also write the leaf-chain model trained alongside
        #[arg(long)]
        psi_model: Option<PathBuf>,
    },
    /// Predict labels for PoS-tagged sentences
    Predict {
        /// Model file(s): a PSI model, a PHI model, both, or a PHI_PRIME model
        #[arg(long = "model", required = true)]
        models: Vec<PathBuf>,
        /// Input with one `word<TAB>pos` per line, blank line between sentences
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Predict labels and decode them into trees
    Parse {
        /// Model file(s): PSI and PHI, or a single PHI_PRIME (or PHI) model
        #[arg(long = "model", required = true)]
        models: Vec<PathBuf>,
        /// Input with one `word<TAB>pos` per line, blank line between sentences
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Score predicted trees against gold trees
    Eval {
        gold: PathBuf,
        pred: PathBuf,
        /// Comma-separated labels to ignore (default: TOP,S1,-NONE-,",",:,``,'',.)
        #[arg(long, value_delimiter = ',')]
        delete_labels: Option<Vec<String>>,
        /// Print only the one-line summary
        #[arg(long)]
        machine: bool,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Check that decoding inverts encoding over a treebank
    Roundtrip {
        trees: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Decode this label file instead of encoding the trees
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

#[derive(Debug, Args, Clone)]
struct SchemeArgs {
    /// Encoding scale: abs, rel, rel-root or kary
    #[arg(long, default_value = "rel-root")]
    scale: String,
    /// Branching factor for --scale kary
    #[arg(long)]
    k: Option<usize>,
    /// Leaf unary chains: two-pass (separate PSI labels) or extended (n|c|u labels)
    #[arg(long)]
    unaries: Option<UnaryStrategy>,
    /// Collapse unary chains before encoding and expand them after decoding (default)
    #[arg(long, overrides_with = "no_collapse")]
    collapse: bool,
    /// Leave unary chains alone
    #[arg(long)]
    no_collapse: bool,
}

impl SchemeArgs {
    fn scheme(&self, default_unaries: UnaryStrategy) -> EncodingScheme {
        let scale = match (self.scale.parse::<Scale>(), self.k) {
            (Ok(Scale::KAry(_)), Some(k)) if k >= 2 => Scale::KAry(k),
            (Ok(_), Some(_)) => usage("--k needs --scale kary and a value of at least 2"),
            (Ok(scale), None) => scale,
            (Err(e), _) => usage(&e.to_string()),
        };
        EncodingScheme::new(scale, self.unaries.unwrap_or(default_unaries))
    }

    fn collapse(&self) -> bool {
        !self.no_collapse
    }
}

fn usage(msg: &str) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn open(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(Box::new(BufReader::new(file)))
}

fn create(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Maps `f` over `items` in parallel chunks, handing results to `sink` in
/// input order.
fn par_map<T, U>(
    items: impl Iterator<Item = Result<T>>,
    f: impl Fn(T) -> Result<U> + Sync,
    mut sink: impl FnMut(U) -> Result<()>,
) -> Result<()>
where
    T: Send,
    U: Send,
{
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk = items.by_ref().take(CHUNK).collect::<Result<Vec<T>>>()?;
        let results: Vec<Result<U>> = chunk.into_par_iter().map(&f).collect();
        for r in results {
            sink(r?)?;
        }
    }
    Ok(())
}

fn trees(path: &Path) -> Result<impl Iterator<Item = Result<(usize, Tree)>>> {
    Ok(read_treebank(open(path)?).map(|r| r.map_err(anyhow::Error::from)))
}

/// Validates, then collapses and binarizes as requested.
fn prepare(tree: &Tree, collapse: bool, binarized: bool) -> Result<Tree> {
    validate_symbols(tree)?;
    let mut tree = if collapse {
        collapse_unaries(tree).into_inner()
    } else {
        tree.clone()
    };
    if binarized {
        tree = binarize(&tree);
    }
    Ok(tree)
}

/// Decoded labels back to a full tree.
fn restore(tokens: &[Token], labeled: &LabeledSentence, scheme: &EncodingScheme, collapse: bool) -> Result<Tree> {
    let mut tree = decode(tokens, &labeled.labels, scheme)?;
    if matches!(scheme.scale, Scale::KAry(_)) {
        tree = debinarize(&tree);
    }
    Ok(if collapse { uncollapse_unaries(&tree) } else { tree })
}

fn cmd_encode(
    path: &Path,
    args: &SchemeArgs,
    binarized: bool,
    output: Option<&Path>,
    psi: Option<&Path>,
) -> Result<()> {
    let scheme = args.scheme(UnaryStrategy::TwoPass);
    let mut out = create(output)?;
    let psi_path = match (psi, output) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(o)) if scheme.unaries == UnaryStrategy::TwoPass => {
            let mut p = o.as_os_str().to_owned();
            p.push(".psi");
            Some(PathBuf::from(p))
        }
        _ => None,
    };
    let mut psi_out = match &psi_path {
        Some(p) if scheme.unaries == UnaryStrategy::TwoPass => Some(create(Some(p))?),
        _ => None,
    };
    let collapse = args.collapse();
    par_map(
        trees(path)?,
        |(line, tree)| {
            let tree = prepare(&tree, collapse, binarized).with_context(|| format!("line {line}"))?;
            let seq = encode(&tree, &scheme).with_context(|| format!("line {line}"))?;
            Ok((seq, encode_leaf_unaries_psi(&tree)))
        },
        |(seq, chains)| {
            write_labeled(&mut out, &seq)?;
            if let Some(p) = psi_out.as_mut() {
                write_psi(p, &seq.tokens, &chains)?;
            }
            Ok(())
        },
    )?;
    out.flush()?;
    if let Some(mut p) = psi_out {
        p.flush()?;
    }
    Ok(())
}

fn cmd_decode(path: &Path, args: &SchemeArgs, output: Option<&Path>) -> Result<()> {
    let scheme = args.scheme(UnaryStrategy::TwoPass);
    let mut out = create(output)?;
    let collapse = args.collapse();
    let sentences = read_labeled(open(path)?).map(|r| r.map_err(anyhow::Error::from));
    par_map(
        sentences,
        |(line, s)| restore(&s.tokens, &s, &scheme, collapse).with_context(|| format!("line {line}")),
        |tree| Ok(writeln!(out, "{}", serialize_bracketed(&tree))?),
    )?;
    Ok(out.flush()?)
}

/// A third column without `|` marks a leaf-chain file.
fn is_psi_file(path: &Path) -> Result<bool> {
    for line in open(path)?.lines() {
        let line = line?;
        if let Some(label) = line.split('\t').nth(2) {
            return Ok(!label.contains('|'));
        }
    }
    Ok(false)
}

#[allow(clippy::too_many_arguments)]
fn cmd_train(
    path: &Path,
    pass: Pass,
    args: &SchemeArgs,
    epochs: usize,
    seed: u64,
    model: &Path,
    psi_model: Option<&Path>,
) -> Result<()> {
    let default_unaries = match pass {
        Pass::PhiPrime => UnaryStrategy::Extended,
        _ => UnaryStrategy::TwoPass,
    };
    let config = TrainConfig {
        pass,
        scheme: args.scheme(default_unaries),
        epochs,
        seed,
    };
    if psi_model.is_some() && pass != Pass::Phi {
        bail!("--psi-model only applies to --pass phi");
    }
    if pass == Pass::Psi && is_psi_file(path)? {
        let sentences = read_psi(open(path)?)
            .map(|r| r.map(|(_, tokens, chains)| (tokens, chains)))
            .collect::<Result<Vec<_>, _>>()?;
        save_model(&train_psi_chains(&sentences, &config)?, model)?;
        return Ok(());
    }
    let corpus: Vec<LabeledSentence> = read_labeled(open(path)?)
        .map(|r| r.map(|(_, s)| s))
        .collect::<Result<_, _>>()?;
    match (pass, psi_model) {
        (Pass::Phi, Some(psi_path)) => {
            let (psi, phi) = train_two_pass(&corpus, &config)?;
            save_model(&psi, psi_path)?;
            save_model(&phi, model)?;
        }
        _ => save_model(&train(&corpus, &config)?, model)?,
    }
    Ok(())
}

fn load_models(paths: &[PathBuf]) -> Result<Vec<TaggerModel>> {
    paths.iter().map(|p| Ok(load_model(p)?)).collect()
}

fn tagged(path: &Path) -> Result<impl Iterator<Item = Result<(usize, Vec<Token>)>>> {
    Ok(read_tagged(open(path)?).map(|r| r.map_err(anyhow::Error::from)))
}

fn cmd_predict(models: &[PathBuf], input: &Path, output: Option<&Path>) -> Result<()> {
    let mut models = load_models(models)?;
    let mut out = create(output)?;
    if models.len() == 1 && models[0].meta.pass == Pass::Psi {
        let psi = models.remove(0);
        par_map(
            tagged(input)?,
            |(_, tokens)| {
                let chains = psi.predict_psi(&tokens);
                Ok((tokens, chains))
            },
            |(tokens, chains)| Ok(write_psi(&mut out, &tokens, &chains)?),
        )?;
    } else {
        let pipeline = Pipeline::new(models).map_err(|e| anyhow!(e))?;
        par_map(
            tagged(input)?,
            |(_, tokens)| Ok(pipeline.label(&tokens)),
            |s| Ok(write_labeled(&mut out, &s)?),
        )?;
    }
    Ok(out.flush()?)
}

fn cmd_parse(models: &[PathBuf], input: &Path, output: Option<&Path>) -> Result<()> {
    let pipeline = Pipeline::new(load_models(models)?).map_err(|e| anyhow!(e))?;
    let mut out = create(output)?;
    par_map(
        tagged(input)?,
        |(line, tokens)| pipeline.parse(&tokens).with_context(|| format!("line {line}")),
        |tree| Ok(writeln!(out, "{}", serialize_bracketed(&tree))?),
    )?;
    Ok(out.flush()?)
}

fn cmd_eval(gold: &Path, pred: &Path, delete: Option<Vec<String>>, machine: bool, args: &SchemeArgs) -> Result<()> {
    let deleted: HashSet<String> = match delete {
        Some(labels) => labels.into_iter().filter(|l| !l.is_empty()).collect(),
        None => default_deleted_labels(),
    };
    let read_all = |p: &Path| -> Result<Vec<Tree>> { trees(p)?.map(|r| r.map(|(_, t)| t)).collect() };
    let gold = read_all(gold)?;
    let pred = read_all(pred)?;
    let report = evaluate_trees(&gold, &pred, &deleted, &args.scheme(UnaryStrategy::TwoPass))?;
    if machine {
        println!("{}", report.summary_line());
    } else {
        println!("{report}");
        println!("{}", report.summary_line());
    }
    Ok(())
}

fn cmd_roundtrip(path: &Path, args: &SchemeArgs, labels: Option<&Path>) -> Result<()> {
    let scheme = args.scheme(UnaryStrategy::TwoPass);
    let collapse = args.collapse();
    let mut count = 0usize;
    match labels {
        None => {
            for item in trees(path)? {
                let (line, tree) = item?;
                let binarized = matches!(scheme.scale, Scale::KAry(2));
                let prepared = prepare(&tree, collapse, binarized).with_context(|| format!("line {line}"))?;
                let seq = encode(&prepared, &scheme).with_context(|| format!("line {line}"))?;
                let back = restore(&seq.tokens, &seq, &scheme, collapse)?;
                if back != tree {
                    bail!("line {line}: decoding gives {back}");
                }
                count += 1;
            }
        }
        Some(label_path) => {
            let mut sentences = read_labeled(open(label_path)?);
            for item in trees(path)? {
                let (line, tree) = item?;
                let (label_line, s) = sentences
                    .next()
                    .ok_or_else(|| anyhow!("line {line}: no labels left for this tree"))??;
                let back = restore(&s.tokens, &s, &scheme, collapse).with_context(|| format!("line {label_line}"))?;
                if back != tree {
                    let offending = encode_for_comparison(&tree, &scheme)
                        .and_then(|expected| {
                            expected
                                .labels
                                .iter()
                                .zip(&s.labels)
                                .position(|(a, b)| a.to_string() != b.to_string())
                        })
                        .map_or(label_line, |i| label_line + i);
                    bail!("line {offending}: labels decode to {back}, expected tree on line {line}");
                }
                count += 1;
            }
            if let Some(extra) = sentences.next() {
                let (label_line, _) = extra?;
                bail!("line {label_line}: more label blocks than trees");
            }
        }
    }
    eprintln!("{count} trees round-tripped");
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Encode {
            trees,
            scheme,
            binarize,
            output,
            psi,
        } => cmd_encode(&trees, &scheme, binarize, output.as_deref(), psi.as_deref()),
        Command::Decode { labels, scheme, output } => cmd_decode(&labels, &scheme, output.as_deref()),
        Command::Train {
            labels,
            pass,
            scheme,
            epochs,
            seed,
            model,
            psi_model,
        } => cmd_train(&labels, pass, &scheme, epochs, seed, &model, psi_model.as_deref()),
        Command::Predict { models, input, output } => cmd_predict(&models, &input, output.as_deref()),
        Command::Parse { models, input, output } => cmd_parse(&models, &input, output.as_deref()),
        Command::Eval {
            gold,
            pred,
            delete_labels,
            machine,
            scheme,
        } => cmd_eval(&gold, &pred, delete_labels, machine, &scheme),
        Command::Roundtrip { trees, scheme, labels } => cmd_roundtrip(&trees, &scheme, labels.as_deref()),
    }
}

/// Output piped into e.g. `head` that exits early.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

/// Parses `std::env::args` and runs the requested command.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
