use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use treelabel::encoding::{encode, EncodingScheme, LabeledSentence};
use treelabel::labelfile::read_blocks;
use treelabel::tagger::{
    extract_features, load_model, pad, read_model, save_model, train, train_two_pass, write_model, Pass, Pipeline,
    TaggerModel, TrainConfig,
};
use treelabel::toy::toy_corpus;
use treelabel::treebank::{collapse_unaries, parse_bracketed};
use treelabel::{Token, Tree};

fn testdata(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata").join(name)
}

fn encode_all(trees: &[Tree], scheme: &EncodingScheme) -> Vec<LabeledSentence> {
    trees
        .iter()
        .map(|t| encode(&collapse_unaries(t), scheme).unwrap())
        .collect()
}

fn model_bytes(model: &TaggerModel) -> Vec<u8> {
    let mut buf = Vec::new();
    write_model(model, &mut buf).unwrap();
    buf
}

#[test]
fn features_match_golden_file() {
    let file = BufReader::new(File::open(testdata("features.golden")).unwrap());
    let blocks: Vec<_> = read_blocks(file, 3).collect::<Result<_, _>>().unwrap();
    assert_eq!(blocks.len(), 3);
    for block in blocks {
        let tokens: Vec<Token> = block.rows.iter().map(|r| Token::new(&r[0], &r[1])).collect();
        let padded = pad(&tokens);
        for (i, row) in block.rows.iter().enumerate() {
            let expected: Vec<&str> = row[2].split(' ').collect();
            let got = extract_features(&padded, i + 1);
            assert_eq!(got.iter().collect::<Vec<_>>(), expected, "{} at {}", row[0], i + 1);
        }
    }
}

#[test]
fn memorizes_a_repeated_sentence() {
    let scheme = EncodingScheme::default();
    let tree = parse_bracketed("(S (NP (DT The) (NN dog)) (VP (VBD saw) (NP (PRP it))) (. .))").unwrap();
    let corpus = vec![encode(&collapse_unaries(&tree), &scheme).unwrap(); 4];
    let config = TrainConfig {
        epochs: 5,
        ..TrainConfig::new(Pass::Phi, scheme)
    };
    let (psi, phi) = train_two_pass(&corpus, &config).unwrap();
    let pipeline = Pipeline::two_pass(psi, phi);
    let plain = tree.tokens();
    assert_eq!(pipeline.label(&plain).labels, corpus[0].labels);
    assert_eq!(pipeline.parse(&plain).unwrap(), tree);
}

#[test]
fn training_is_deterministic_and_models_round_trip() {
    let scheme = EncodingScheme::default();
    let (train_trees, test_trees) = toy_corpus(7, 300, 50);
    let corpus = encode_all(&train_trees, &scheme);
    let config = TrainConfig {
        epochs: 5,
        ..TrainConfig::new(Pass::Phi, scheme)
    };
    let (psi, phi) = train_two_pass(&corpus, &config).unwrap();
    let (psi2, phi2) = train_two_pass(&corpus, &config).unwrap();
    assert_eq!(model_bytes(&psi), model_bytes(&psi2));
    assert_eq!(model_bytes(&phi), model_bytes(&phi2));
    let other_seed = TrainConfig { seed: 43, ..config };
    assert_ne!(model_bytes(&train(&corpus, &other_seed).unwrap()), model_bytes(&phi));

    let dir = tempfile::tempdir().unwrap();
    let (psi_path, phi_path) = (dir.path().join("psi.model"), dir.path().join("phi.model"));
    save_model(&psi, &psi_path).unwrap();
    save_model(&phi, &phi_path).unwrap();
    let (psi_back, phi_back) = (load_model(&psi_path).unwrap(), load_model(&phi_path).unwrap());
    assert_eq!(phi_back, phi);
    assert_eq!(model_bytes(&phi_back), model_bytes(&phi));

    let original = Pipeline::two_pass(psi, phi);
    let loaded = Pipeline::two_pass(psi_back, phi_back);
    for tree in &test_trees {
        let tokens = tree.tokens();
        assert_eq!(original.label(&tokens), loaded.label(&tokens));
        assert_eq!(original.parse(&tokens).unwrap(), loaded.parse(&tokens).unwrap());
    }
}

#[test]
fn phi_prime_pipeline_is_total() {
    let scheme = EncodingScheme::new(treelabel::Scale::RelativeWithRoot, treelabel::UnaryStrategy::Extended);
    let (train_trees, test_trees) = toy_corpus(11, 200, 100);
    let corpus = encode_all(&train_trees, &scheme);
    let config = TrainConfig {
        epochs: 3,
        ..TrainConfig::new(Pass::PhiPrime, scheme)
    };
    let pipeline = Pipeline::new(vec![train(&corpus, &config).unwrap()]).unwrap();
    for tree in &test_trees {
        let tokens = tree.tokens();
        assert_eq!(pipeline.parse(&tokens).unwrap().tokens(), tokens);
    }
    // unseen words and tags everywhere
    let odd: Vec<Token> = (0..6).map(|i| Token::new(format!("zq{i}x"), "ZZ")).collect();
    assert_eq!(pipeline.parse(&odd).unwrap().tokens(), odd);
}

#[test]
fn unknown_words_get_the_most_biased_label() {
    let scheme = EncodingScheme::default();
    let (train_trees, _) = toy_corpus(3, 200, 0);
    let config = TrainConfig {
        epochs: 3,
        ..TrainConfig::new(Pass::Phi, scheme)
    };
    let model = train(&encode_all(&train_trees, &scheme), &config).unwrap();
    let sentence: Vec<Token> = (0..7).map(|i| Token::new(format!("qqz{i}q"), "UNSEEN")).collect();
    let predicted = model.predict_tags(&sentence);

    // interior positions see no known feature except the bias
    let mut best: Option<(&str, f64)> = None;
    for label in model.labels() {
        let w = model.weight("bias", label);
        if label != "EOS|EOS" && best.is_none_or(|(_, b)| w > b) {
            best = Some((label, w));
        }
    }
    for tag in &predicted[2..5] {
        assert_eq!(tag, best.unwrap().0);
    }
    assert_eq!(predicted.last().unwrap(), "EOS|EOS");
    assert_eq!(model.predict_tags(&sentence), predicted);
}

#[test]
fn predictions_do_not_depend_on_batch_order() {
    let scheme = EncodingScheme::default();
    let (train_trees, test_trees) = toy_corpus(5, 150, 40);
    let config = TrainConfig {
        epochs: 3,
        ..TrainConfig::new(Pass::Phi, scheme)
    };
    let (psi, phi) = train_two_pass(&encode_all(&train_trees, &scheme), &config).unwrap();
    let pipeline = Pipeline::two_pass(psi, phi);
    let forward: Vec<_> = test_trees.iter().map(|t| pipeline.label(&t.tokens())).collect();
    let mut backward: Vec<_> = test_trees.iter().rev().map(|t| pipeline.label(&t.tokens())).collect();
    backward.reverse();
    assert_eq!(forward, backward);
}

#[test]
fn corrupted_model_text() {
    let scheme = EncodingScheme::default();
    let (train_trees, _) = toy_corpus(3, 20, 0);
    let config = TrainConfig {
        epochs: 1,
        ..TrainConfig::new(Pass::Phi, scheme)
    };
    let model = train(&encode_all(&train_trees, &scheme), &config).unwrap();
    let text = String::from_utf8(model_bytes(&model)).unwrap();
    assert!(read_model(text.as_bytes()).is_ok());
    let truncated_row = format!("{text}bias\t+1|S\n");
    assert!(read_model(truncated_row.as_bytes()).is_err());
}
