//! Label sequences that encode no tree still decode to a valid one.

use treelabel::{decode, EncodingScheme, ExtendedLabel, Level, Scale, Token, UnaryStrategy};

fn show(title: &str, scale: Scale, levels: &[(Level, &str)]) {
    let tokens: Vec<Token> = (1..=levels.len() + 1)
        .map(|i| Token::new(format!("w{i}"), format!("T{i}")))
        .collect();
    let mut labels: Vec<ExtendedLabel> = levels.iter().map(|(l, c)| ExtendedLabel::plain(*l, *c)).collect();
    labels.push(ExtendedLabel::eos());
    let scheme = EncodingScheme::new(scale, UnaryStrategy::TwoPass);
    let shown: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    println!(
        "{title}\n  {}\n  -> {}\n",
        shown.join(" "),
        decode(&tokens, &labels, &scheme).unwrap()
    );
}

fn main() {
    show(
        "generated unary node (Y above w2/w3 is opened twice)",
        Scale::Absolute,
        &[
            (Level::Absolute(1), "S"),
            (Level::Absolute(3), "Y"),
            (Level::Absolute(1), "S"),
            (Level::Absolute(1), "S"),
        ],
    );
    show(
        "conflicting nonterminals for one node: the first wins",
        Scale::Absolute,
        &[(Level::Absolute(1), "S"), (Level::Absolute(1), "X")],
    );
    show(
        "counts below 1 are clamped",
        Scale::Relative,
        &[
            (Level::Relative(2), "NP"),
            (Level::Relative(-5), "S"),
            (Level::Relative(0), "VP"),
        ],
    );
}
