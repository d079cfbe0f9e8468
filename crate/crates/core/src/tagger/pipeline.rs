use super::{Pass, TaggerModel};
use crate::decoding::{decode, merge_psi, DecodeError};
use crate::encoding::{EncodingScheme, LabeledSentence, Scale};
use crate::treebank::{debinarize, uncollapse_unaries, Token, Tree};

/// Tagging followed by decoding: either PSI then PHI, or a single PHI_PRIME
/// model. A lone PHI model is also accepted and leaves PoS tags as given.
#[derive(Clone, Debug)]
pub struct Pipeline {
    psi: Option<TaggerModel>,
    main: TaggerModel,
}

impl Pipeline {
    pub fn new(models: Vec<TaggerModel>) -> Result<Self, String> {
        let mut psi = None;
        let mut main = None;
        for model in models {
            let slot = if model.meta.pass == Pass::Psi {
                &mut psi
            } else {
                &mut main
            };
            if slot.is_some() {
                return Err(format!("more than one {} model", model.meta.pass));
            }
            *slot = Some(model);
        }
        let main = main.ok_or("no PHI or PHI_PRIME model given")?;
        if main.meta.pass == Pass::PhiPrime && psi.is_some() {
            return Err("a PHI_PRIME model does not take a PSI model".to_owned());
        }
        Ok(Pipeline { psi, main })
    }

    pub fn two_pass(psi: TaggerModel, phi: TaggerModel) -> Self {
        Pipeline {
            psi: Some(psi),
            main: phi,
        }
    }

    pub fn scheme(&self) -> EncodingScheme {
        self.main.meta.scheme
    }

    /// Predicted labels; the returned tokens carry any PSI enrichment.
    pub fn label(&self, tokens: &[Token]) -> LabeledSentence {
        let tokens = match &self.psi {
            Some(psi) => merge_psi(tokens, &psi.predict_psi(tokens)),
            None => tokens.to_vec(),
        };
        let labels = self.main.predict(&tokens);
        LabeledSentence::new(tokens, labels)
    }

    /// Parses PoS-tagged tokens into a full tree (unary chains expanded).
    pub fn parse(&self, tokens: &[Token]) -> Result<Tree, DecodeError> {
        let labeled = self.label(tokens);
        let scheme = self.scheme();
        let mut tree = decode(&labeled.tokens, &labeled.labels, &scheme)?;
        if matches!(scheme.scale, Scale::KAry(_)) {
            tree = debinarize(&tree);
        }
        Ok(uncollapse_unaries(&tree))
    }
}
