//! Multiclass averaged perceptron over interned features.

/// Training-time state. Averages are kept lazily: each weight remembers the
/// step at which it last changed, and its accumulated total is brought up
/// to date only when it changes again or when averaging.
#[derive(Clone, Debug)]
pub struct AveragedPerceptron {
    n_labels: usize,
    weights: Vec<Vec<f64>>,
    totals: Vec<Vec<f64>>,
    stamps: Vec<Vec<u64>>,
    steps: u64,
}

impl AveragedPerceptron {
    pub fn new(n_features: usize, n_labels: usize) -> Self {
        AveragedPerceptron {
            n_labels,
            weights: vec![vec![0.0; n_labels]; n_features],
            totals: vec![vec![0.0; n_labels]; n_features],
            stamps: vec![vec![1; n_labels]; n_features],
            steps: 0,
        }
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Current (non-averaged) scores.
    pub fn scores(&self, features: &[usize]) -> Vec<f64> {
        let mut scores = vec![0.0; self.n_labels];
        for &f in features {
            for (s, w) in scores.iter_mut().zip(&self.weights[f]) {
                *s += w;
            }
        }
        scores
    }

    /// Highest-scoring allowed label; ties go to the lowest index.
    pub fn best(&self, features: &[usize], allowed: impl Fn(usize) -> bool) -> Option<usize> {
        argmax(&self.scores(features), allowed)
    }

    /// One training step: counts as a step whether or not weights move.
    pub fn update(&mut self, truth: usize, guess: usize, features: &[usize]) {
        self.steps += 1;
        if truth == guess {
            return;
        }
        for &f in features {
            self.bump(f, truth, 1.0);
            self.bump(f, guess, -1.0);
        }
    }

    fn bump(&mut self, feature: usize, label: usize, delta: f64) {
        let stamp = &mut self.stamps[feature][label];
        let weight = &mut self.weights[feature][label];
        // snapshots taken after steps stamp..steps-1 all held the old weight
        self.totals[feature][label] += (self.steps - *stamp) as f64 * *weight;
        *stamp = self.steps;
        *weight += delta;
    }

    /// Mean of the weight vectors after each step so far.
    pub fn averaged(&self) -> Vec<Vec<f64>> {
        if self.steps == 0 {
            return self.weights.clone();
        }
        self.weights
            .iter()
            .zip(&self.totals)
            .zip(&self.stamps)
            .map(|((w, t), s)| {
                w.iter()
                    .zip(t)
                    .zip(s)
                    .map(|((&w, &t), &s)| (t + (self.steps + 1 - s) as f64 * w) / self.steps as f64)
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn argmax(scores: &[f64], allowed: impl Fn(usize) -> bool) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (idx, &score) in scores.iter().enumerate() {
        if !allowed(idx) {
            continue;
        }
        if best.is_none_or(|(_, b)| score > b) {
            best = Some((idx, score));
        }
    }
    best.map(|(idx, _)| idx)
}
