//! Line-oriented model files.
//!
//! ```text
//! treelabel-model
//! version=1
//! pass=PHI
//! scale=rel-root
//! unaries=two-pass
//! epochs=20
//! seed=42
//! label=+1|S
//! label=...
//! feature<TAB>label<TAB>weight
//! ...
//! ```
//!
//! Labels are listed in inventory order. Rows are sorted by feature, then
//! by inventory order, and only nonzero weights are written.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use super::{ModelMeta, Pass, TaggerModel};
use crate::encoding::EncodingScheme;

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "treelabel-model";

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model: {0}")]
    UnreadableFile(String),
    #[error("unsupported model header: {0}")]
    VersionMismatch(String),
}

impl From<io::Error> for ModelError {
    fn from(e: io::Error) -> Self {
        ModelError::UnreadableFile(e.to_string())
    }
}

pub fn write_model<W: Write>(model: &TaggerModel, mut out: W) -> io::Result<()> {
    let meta = &model.meta;
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "version={FORMAT_VERSION}")?;
    writeln!(out, "pass={}", meta.pass)?;
    writeln!(out, "scale={}", meta.scheme.scale)?;
    writeln!(out, "unaries={}", meta.scheme.unaries)?;
    writeln!(out, "epochs={}", meta.epochs)?;
    writeln!(out, "seed={}", meta.seed)?;
    for label in model.labels() {
        writeln!(out, "label={label}")?;
    }
    let mut features: Vec<&String> = model.weights().keys().collect();
    features.sort();
    for feature in features {
        let row = &model.weights()[feature];
        for (label, &w) in model.labels().iter().zip(row) {
            if w != 0.0 {
                writeln!(out, "{feature}\t{label}\t{w}")?;
            }
        }
    }
    out.flush()
}

pub fn save_model(model: &TaggerModel, path: impl AsRef<Path>) -> Result<(), ModelError> {
    let file = File::create(path)?;
    write_model(model, BufWriter::new(file))?;
    Ok(())
}

pub fn read_model<R: BufRead>(reader: R) -> Result<TaggerModel, ModelError> {
    let mut lines = reader.lines();
    let bad = |msg: String| ModelError::UnreadableFile(msg);

    match lines.next().transpose()? {
        Some(l) if l == MAGIC => {}
        other => {
            return Err(ModelError::VersionMismatch(format!(
                "expected {MAGIC:?}, found {other:?}"
            )))
        }
    }
    match lines.next().transpose()? {
        Some(l) if l == format!("version={FORMAT_VERSION}") => {}
        other => {
            return Err(ModelError::VersionMismatch(format!(
                "expected version={FORMAT_VERSION}, found {other:?}"
            )))
        }
    }

    let mut header: HashMap<String, String> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut label_index: HashMap<String, usize> = HashMap::new();
    let mut weights: HashMap<String, Vec<f64>> = HashMap::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let line_no = idx + 3;
        if line.contains('\t') {
            let mut cols = line.split('\t');
            let (Some(feature), Some(label), Some(weight), None) = (cols.next(), cols.next(), cols.next(), cols.next())
            else {
                return Err(bad(format!("line {line_no}: expected three columns")));
            };
            let &label = label_index
                .get(label)
                .ok_or_else(|| bad(format!("line {line_no}: unknown label {label:?}")))?;
            let weight: f64 = weight
                .parse()
                .map_err(|_| bad(format!("line {line_no}: bad weight {weight:?}")))?;
            weights
                .entry(feature.to_owned())
                .or_insert_with(|| vec![0.0; labels.len()])[label] = weight;
        } else if let Some(label) = line.strip_prefix("label=") {
            if !weights.is_empty() {
                return Err(bad(format!("line {line_no}: label after weight rows")));
            }
            label_index.insert(label.to_owned(), labels.len());
            labels.push(label.to_owned());
        } else if let Some((key, value)) = line.split_once('=') {
            header.insert(key.to_owned(), value.to_owned());
        } else {
            return Err(bad(format!("line {line_no}: unexpected {line:?}")));
        }
    }

    let field = |key: &str| {
        header
            .get(key)
            .ok_or_else(|| ModelError::VersionMismatch(format!("missing header field {key:?}")))
    };
    let pass: Pass = field("pass")?.parse().map_err(bad)?;
    let scheme = EncodingScheme::new(
        field("scale")?.parse().map_err(|e| bad(format!("{e}")))?,
        field("unaries")?.parse().map_err(|e| bad(format!("{e}")))?,
    );
    let epochs = field("epochs")?.parse().map_err(|_| bad("bad epochs".into()))?;
    let seed = field("seed")?.parse().map_err(|_| bad("bad seed".into()))?;
    let meta = ModelMeta {
        pass,
        scheme,
        epochs,
        seed,
    };
    TaggerModel::from_parts(meta, labels, weights).map_err(bad)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<TaggerModel, ModelError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| ModelError::UnreadableFile(format!("{}: {e}", path.display())))?;
    read_model(BufReader::new(file))
}
