//! Label prediction with an averaged perceptron over local features.
//!
//! Three kinds of models are trained, one per pass:
//! - `PSI` predicts the leaf unary chain of each word (or `NONE`);
//! - `PHI` predicts `n|c` labels from PoS tags enriched with `PSI` output;
//! - `PHI_PRIME` predicts `n|c|u` labels in a single pass.

mod features;
mod model_io;
mod perceptron;
mod pipeline;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::decoding::merge_psi;
use crate::encoding::{unary_from_str, unary_to_string, EncodingScheme, ExtendedLabel, LabeledSentence, UnaryStrategy};
use crate::treebank::Token;

pub use features::{extract_features, is_capitalized, is_number, is_uppercased, pad, FeatureVector, BOS, EOS};
pub use model_io::{load_model, read_model, save_model, write_model, ModelError, FORMAT_VERSION};
pub use perceptron::AveragedPerceptron;
pub use pipeline::Pipeline;

/// Which labelling function a model implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pass {
    Psi,
    Phi,
    PhiPrime,
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pass::Psi => "PSI",
            Pass::Phi => "PHI",
            Pass::PhiPrime => "PHI_PRIME",
        })
    }
}

impl FromStr for Pass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "PSI" => Ok(Pass::Psi),
            "PHI" => Ok(Pass::Phi),
            "PHI_PRIME" => Ok(Pass::PhiPrime),
            _ => Err(format!("unknown pass {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrainConfig {
    pub pass: Pass,
    pub scheme: EncodingScheme,
    pub epochs: usize,
    pub seed: u64,
}

impl TrainConfig {
    pub fn new(pass: Pass, scheme: EncodingScheme) -> Self {
        TrainConfig {
            pass,
            scheme,
            epochs: 20,
            seed: 42,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrainError {
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("sentence {sentence}, position {position}: label {label:?} does not fit scheme {scheme}")]
    MixedSchemes {
        sentence: usize,
        position: usize,
        label: String,
        scheme: EncodingScheme,
    },
    #[error("pass {pass} cannot be trained with unary strategy {unaries}")]
    PassSchemeMismatch { pass: Pass, unaries: UnaryStrategy },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelMeta {
    pub pass: Pass,
    pub scheme: EncodingScheme,
    pub epochs: usize,
    pub seed: u64,
}

/// A trained tagger: label inventory plus averaged weights.
#[derive(Clone, Debug, PartialEq)]
pub struct TaggerModel {
    pub meta: ModelMeta,
    labels: Vec<String>,
    /// Parsed main-pass labels; `None` for PSI models.
    parsed: Vec<Option<ExtendedLabel>>,
    weights: HashMap<String, Vec<f64>>,
}

impl TaggerModel {
    pub(crate) fn from_parts(
        meta: ModelMeta,
        labels: Vec<String>,
        weights: HashMap<String, Vec<f64>>,
    ) -> Result<Self, String> {
        let parsed = if meta.pass == Pass::Psi {
            vec![None; labels.len()]
        } else {
            labels
                .iter()
                .map(|l| l.parse::<ExtendedLabel>().map(Some).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?
        };
        if let Some((f, row)) = weights.iter().find(|(_, row)| row.len() != labels.len()) {
            return Err(format!(
                "weight row for {f:?} has {} entries, expected {}",
                row.len(),
                labels.len()
            ));
        }
        Ok(TaggerModel {
            meta,
            labels,
            parsed,
            weights,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn weights(&self) -> &HashMap<String, Vec<f64>> {
        &self.weights
    }

    pub fn weight(&self, feature: &str, label: &str) -> f64 {
        let Some(idx) = self.labels.iter().position(|l| l == label) else {
            return 0.0;
        };
        self.weights.get(feature).map_or(0.0, |row| row[idx])
    }

    /// Averaged scores for one position; unseen features contribute 0.
    pub fn scores(&self, features: &FeatureVector) -> Vec<f64> {
        let mut scores = vec![0.0; self.labels.len()];
        for f in features.iter() {
            if let Some(row) = self.weights.get(f) {
                for (s, w) in scores.iter_mut().zip(row) {
                    *s += w;
                }
            }
        }
        scores
    }

    fn is_final_label(&self, idx: usize) -> bool {
        self.parsed[idx].as_ref().is_some_and(ExtendedLabel::is_eos)
    }

    /// Predicted label strings, one per token.
    ///
    /// For main-pass models the last position only considers dummy labels
    /// and the others never do.
    pub fn predict_tags(&self, sentence: &[Token]) -> Vec<String> {
        let padded = pad(sentence);
        let n = sentence.len();
        (1..=n)
            .map(|i| {
                let scores = self.scores(&extract_features(&padded, i));
                let last = i == n;
                let constrained = self.meta.pass != Pass::Psi;
                let best = perceptron::argmax(&scores, |idx| !constrained || self.is_final_label(idx) == last);
                match best {
                    Some(idx) => self.labels[idx].clone(),
                    None if constrained && last => ExtendedLabel::eos().to_string(),
                    None => self
                        .labels
                        .first()
                        .cloned()
                        .unwrap_or_else(|| unary_to_string(None).to_owned()),
                }
            })
            .collect()
    }

    /// Main-pass prediction. The last label is always the dummy.
    pub fn predict(&self, sentence: &[Token]) -> Vec<ExtendedLabel> {
        self.predict_tags(sentence)
            .iter()
            .map(|s| s.parse().unwrap_or_else(|_| ExtendedLabel::eos()))
            .collect()
    }

    /// Leaf-unary-chain prediction for a PSI model.
    pub fn predict_psi(&self, sentence: &[Token]) -> Vec<Option<String>> {
        self.predict_tags(sentence).iter().map(|s| unary_from_str(s)).collect()
    }
}

/// Tokens with their collapsed leaf chains removed from the PoS.
pub fn strip_chains(tokens: &[Token]) -> Vec<Token> {
    tokens
        .iter()
        .map(|t| Token::new(t.word.clone(), t.plain_pos()))
        .collect()
}

fn psi_targets(sentence: &LabeledSentence) -> Vec<String> {
    sentence
        .tokens
        .iter()
        .zip(&sentence.labels)
        .map(|(t, l)| unary_to_string(t.leaf_chain().or(l.unary.as_deref())).to_owned())
        .collect()
}

fn check_corpus(corpus: &[LabeledSentence], config: &TrainConfig) -> Result<(), TrainError> {
    if corpus.is_empty() {
        return Err(TrainError::EmptyCorpus);
    }
    let unaries = config.scheme.unaries;
    match (config.pass, unaries) {
        (Pass::Psi | Pass::Phi, UnaryStrategy::TwoPass) | (Pass::PhiPrime, UnaryStrategy::Extended) => {}
        (pass, unaries) => return Err(TrainError::PassSchemeMismatch { pass, unaries }),
    }
    for (sentence, s) in corpus.iter().enumerate() {
        for (position, label) in s.labels.iter().enumerate() {
            let last = position + 1 == s.labels.len();
            let fits = if last {
                label.is_eos()
            } else {
                config.scheme.scale.accepts(label.level())
            } && (unaries == UnaryStrategy::Extended || label.unary.is_none())
                && s.tokens.len() == s.labels.len();
            if !fits {
                return Err(TrainError::MixedSchemes {
                    sentence,
                    position,
                    label: label.to_string(),
                    scheme: config.scheme,
                });
            }
        }
    }
    Ok(())
}

/// Trains on `(tokens, tags)` pairs.
fn fit(instances: &[(Vec<Token>, Vec<String>)], meta: ModelMeta) -> TaggerModel {
    let mut label_index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    for (_, tags) in instances {
        for tag in tags {
            if !label_index.contains_key(tag.as_str()) {
                label_index.insert(tag, labels.len());
                labels.push(tag.clone());
            }
        }
    }

    let mut feature_index: HashMap<String, usize> = HashMap::new();
    let mut feature_names: Vec<String> = Vec::new();
    let encoded: Vec<Vec<(Vec<usize>, usize)>> = instances
        .iter()
        .map(|(tokens, tags)| {
            let padded = pad(tokens);
            (1..=tokens.len())
                .map(|i| {
                    let mut ids: Vec<usize> = extract_features(&padded, i)
                        .0
                        .into_iter()
                        .map(|f| {
                            *feature_index.entry(f).or_insert_with_key(|f| {
                                feature_names.push(f.clone());
                                feature_names.len() - 1
                            })
                        })
                        .collect();
                    ids.dedup();
                    (ids, label_index[tags[i - 1].as_str()])
                })
                .collect()
        })
        .collect();

    let constrained = meta.pass != Pass::Psi;
    let is_final: Vec<bool> = labels
        .iter()
        .map(|l| constrained && l.parse::<ExtendedLabel>().is_ok_and(|l| l.is_eos()))
        .collect();

    let mut model = AveragedPerceptron::new(feature_names.len(), labels.len());
    let mut rng = ChaCha8Rng::seed_from_u64(meta.seed);
    let mut order: Vec<usize> = (0..encoded.len()).collect();
    for _ in 0..meta.epochs {
        order.shuffle(&mut rng);
        for &s in &order {
            let sentence = &encoded[s];
            for (i, (feats, truth)) in sentence.iter().enumerate() {
                let last = i + 1 == sentence.len();
                // a tie with the gold label counts as a mistake
                let scores = model.scores(feats);
                let rival = perceptron::argmax(&scores, |idx| idx != *truth && (!constrained || is_final[idx] == last));
                let guess = match rival {
                    Some(r) if scores[r] >= scores[*truth] => r,
                    _ => *truth,
                };
                model.update(*truth, guess, feats);
            }
        }
    }

    let weights = feature_names
        .into_iter()
        .zip(model.averaged())
        .filter(|(_, row)| row.iter().any(|&w| w != 0.0))
        .collect();
    TaggerModel::from_parts(meta, labels, weights).expect("labels come from serialized labels")
}

fn meta_for(config: &TrainConfig, pass: Pass) -> ModelMeta {
    ModelMeta {
        pass,
        scheme: config.scheme,
        epochs: config.epochs,
        seed: config.seed,
    }
}

fn train_psi(corpus: &[LabeledSentence], config: &TrainConfig) -> TaggerModel {
    let instances: Vec<_> = corpus
        .iter()
        .map(|s| (strip_chains(&s.tokens), psi_targets(s)))
        .collect();
    fit(&instances, meta_for(config, Pass::Psi))
}

/// Trains a PSI model from tokens paired with their leaf chains, as read
/// from a PSI label file.
pub fn train_psi_chains(
    sentences: &[(Vec<Token>, Vec<Option<String>>)],
    config: &TrainConfig,
) -> Result<TaggerModel, TrainError> {
    if sentences.is_empty() {
        return Err(TrainError::EmptyCorpus);
    }
    let instances: Vec<_> = sentences
        .iter()
        .map(|(tokens, chains)| {
            let tags = chains
                .iter()
                .map(|c| unary_to_string(c.as_deref()).to_owned())
                .collect();
            (strip_chains(tokens), tags)
        })
        .collect();
    Ok(fit(&instances, meta_for(config, Pass::Psi)))
}

/// Trains the PSI model, then the PHI model on PoS tags enriched with the
/// PSI model's own predictions on the training data.
pub fn train_two_pass(
    corpus: &[LabeledSentence],
    config: &TrainConfig,
) -> Result<(TaggerModel, TaggerModel), TrainError> {
    let config = TrainConfig {
        pass: Pass::Phi,
        ..*config
    };
    check_corpus(corpus, &config)?;
    let psi = train_psi(corpus, &config);
    let instances: Vec<_> = corpus
        .iter()
        .map(|s| {
            let plain = strip_chains(&s.tokens);
            let enriched = merge_psi(&plain, &psi.predict_psi(&plain));
            let tags = s.labels.iter().map(|l| l.core.to_string()).collect();
            (enriched, tags)
        })
        .collect();
    let phi = fit(&instances, meta_for(&config, Pass::Phi));
    Ok((psi, phi))
}

/// Trains one model for `config.pass`.
pub fn train(corpus: &[LabeledSentence], config: &TrainConfig) -> Result<TaggerModel, TrainError> {
    check_corpus(corpus, config)?;
    match config.pass {
        Pass::Psi => Ok(train_psi(corpus, config)),
        Pass::Phi => train_two_pass(corpus, config).map(|(_, phi)| phi),
        Pass::PhiPrime => {
            let instances: Vec<_> = corpus
                .iter()
                .map(|s| {
                    let tags = s
                        .labels
                        .iter()
                        .zip(&s.tokens)
                        .map(|(l, t)| {
                            let unary = l.unary.clone().or_else(|| t.leaf_chain().map(str::to_owned));
                            ExtendedLabel::new(l.core.clone(), unary).to_string()
                        })
                        .collect();
                    (strip_chains(&s.tokens), tags)
                })
                .collect();
            Ok(fit(&instances, meta_for(config, Pass::PhiPrime)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{encode, Scale};
    use crate::treebank::{collapse_unaries, parse_bracketed};

    fn corpus(lines: &[&str], scheme: &EncodingScheme) -> Vec<LabeledSentence> {
        lines
            .iter()
            .map(|l| encode(&collapse_unaries(&parse_bracketed(l).unwrap()), scheme).unwrap())
            .collect()
    }

    const TREE: &str = "(S (NP (PRP She)) (VP (VBD saw) (NP (DT the) (JJ red) (NN toy))) (. .))";

    #[test]
    fn memorizes_one_sentence() {
        let scheme = EncodingScheme::default();
        let data = corpus(&[TREE], &scheme);
        let mut config = TrainConfig::new(Pass::Phi, scheme);
        config.epochs = 5;
        let (psi, phi) = train_two_pass(&data, &config).unwrap();
        let plain = strip_chains(&data[0].tokens);
        let psi_pred = psi.predict_psi(&plain);
        assert_eq!(psi_pred[0].as_deref(), Some("NP"));
        let enriched = merge_psi(&plain, &psi_pred);
        assert_eq!(enriched, data[0].tokens);
        assert_eq!(phi.predict(&enriched), data[0].labels);

        let ext = EncodingScheme::new(Scale::RelativeWithRoot, UnaryStrategy::Extended);
        let data = corpus(&[TREE], &ext);
        let mut config = TrainConfig::new(Pass::PhiPrime, ext);
        config.epochs = 5;
        let model = train(&data, &config).unwrap();
        assert_eq!(model.predict(&data[0].tokens), data[0].labels);
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let scheme = EncodingScheme::default();
        let data = corpus(
            &[
                TREE,
                "(S (NP (DT a) (NN dog)) (VP (VBZ runs)) (. .))",
                "(S (NP (NNP Kim)) (VP (VBD left)))",
            ],
            &scheme,
        );
        let config = TrainConfig::new(Pass::Phi, scheme);
        let a = train(&data, &config).unwrap();
        let b = train(&data, &config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_words_get_the_bias_label() {
        let scheme = EncodingScheme::new(Scale::Relative, UnaryStrategy::TwoPass);
        let data = corpus(
            &[TREE, "(S (NP (DT a) (NN dog)) (VP (VBZ runs) (ADVP (RB fast))) (. .))"],
            &scheme,
        );
        let model = train(&data, &TrainConfig::new(Pass::Phi, scheme)).unwrap();
        let sentence: Vec<Token> = (0..7).map(|i| Token::new(format!("zz{i}"), "UNK")).collect();
        let tags = model.predict_tags(&sentence);
        // positions 2..=5 see only the bias and the (unseen) word features
        let bias_best = model
            .labels()
            .iter()
            .filter(|l| !l.starts_with("EOS"))
            .fold(None::<&String>, |best, l| match best {
                Some(b) if model.weight("bias", b) >= model.weight("bias", l) => Some(b),
                _ => Some(l),
            })
            .unwrap();
        for tag in &tags[2..5] {
            assert_eq!(tag, bias_best);
        }
        assert_eq!(tags[6], "EOS|EOS");
        assert_eq!(tags, model.predict_tags(&sentence));
    }

    #[test]
    fn corpus_checks() {
        let scheme = EncodingScheme::default();
        assert_eq!(
            train(&[], &TrainConfig::new(Pass::Phi, scheme)),
            Err(TrainError::EmptyCorpus)
        );
        let mut data = corpus(&[TREE], &scheme);
        data.extend(corpus(
            &[TREE],
            &EncodingScheme::new(Scale::Absolute, UnaryStrategy::TwoPass),
        ));
        assert!(matches!(
            train(&data, &TrainConfig::new(Pass::Phi, scheme)),
            Err(TrainError::MixedSchemes { sentence: 1, .. })
        ));
        assert!(matches!(
            train(&data[..1], &TrainConfig::new(Pass::PhiPrime, scheme)),
            Err(TrainError::PassSchemeMismatch { .. })
        ));
    }

    #[test]
    fn pass_names() {
        for p in [Pass::Psi, Pass::Phi, Pass::PhiPrime] {
            assert_eq!(p.to_string().parse::<Pass>().unwrap(), p);
        }
        assert_eq!("phi-prime".parse::<Pass>().unwrap(), Pass::PhiPrime);
    }
}
