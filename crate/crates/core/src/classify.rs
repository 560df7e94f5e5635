//! Stratified k-fold cross-validation of a k-nearest-neighbour classifier.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::rng::{mix, seeded};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("class {class} has {count} members, fewer than the {folds} folds")]
    ClassTooSmall { class: u32, count: usize, folds: usize },
    #[error("{rows} feature rows but {labels} labels")]
    LengthMismatch { rows: usize, labels: usize },
    #[error("feature row {row} has {len} columns, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("need at least 2 folds (got {0})")]
    TooFewFolds(usize),
    #[error("neighbour count must be positive")]
    ZeroNeighbors,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnnConfig {
    pub k_neighbors: usize,
    pub folds: usize,
    pub seed: u64,
    /// Permute the labels once (seeded) before folding: a chance-level control.
    pub shuffle_labels: bool,
}

impl Default for KnnConfig {
    fn default() -> Self {
        Self { k_neighbors: 5, folds: 10, seed: 0, shuffle_labels: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub fold_accuracies: Vec<f64>,
    pub mean: f64,
    /// Population standard deviation of the fold accuracies.
    pub std: f64,
    pub config: KnnConfig,
    pub feature_count: usize,
}

/// Assigns each row a fold in `0..folds`, stratified by label.
///
/// Each class's rows are shuffled and dealt round-robin, continuing the
/// rotation from class to class, so fold sizes differ by at most one and each
/// fold holds `floor` or `ceil` of `count / folds` members of every class.
pub fn stratified_folds(labels: &[u32], folds: usize, seed: u64) -> Result<Vec<usize>, ClassifyError> {
    if folds < 2 {
        return Err(ClassifyError::TooFewFolds(folds));
    }
    let mut by_class: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    if let Some((&class, rows)) = by_class.iter().find(|(_, rows)| rows.len() < folds) {
        return Err(ClassifyError::ClassTooSmall { class, count: rows.len(), folds });
    }
    let mut rng = seeded(mix(seed, 0xF01D));
    let mut assignment = vec![0; labels.len()];
    let mut next = 0;
    for rows in by_class.values_mut() {
        rows.shuffle(&mut rng);
        for &row in rows.iter() {
            assignment[row] = next % folds;
            next += 1;
        }
    }
    Ok(assignment)
}

/// Per-column z-score scaling fitted on training rows only.
#[derive(Clone, Debug, PartialEq)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    /// Columns with zero variance get scale 1.
    pub fn fit<'a, I>(rows: I, width: usize) -> Self
    where
        I: IntoIterator<Item = &'a [f64]> + Clone,
    {
        let mut mean = vec![0.0; width];
        let mut n = 0usize;
        for row in rows.clone() {
            mean.iter_mut().zip(row).for_each(|(m, x)| *m += x);
            n += 1;
        }
        let n = n.max(1) as f64;
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; width];
        for row in rows {
            var.iter_mut().zip(row.iter().zip(&mean)).for_each(|(v, (x, m))| *v += (x - m) * (x - m));
        }
        let scale = var.into_iter().map(|v| libm::sqrt(v / n)).map(|s| if s > 0.0 { s } else { 1.0 }).collect();
        Self { mean, scale }
    }

    pub fn transform(&self, row: &[f64]) -> Vec<f64> {
        row.iter().zip(self.mean.iter().zip(&self.scale)).map(|(x, (m, s))| (x - m) / s).collect()
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Majority vote among the `k` nearest training rows; a tied vote goes to the
/// tied class holding the nearest neighbour. Distance ties break by row order.
pub fn knn_predict(train: &[(Vec<f64>, u32)], query: &[f64], k: usize) -> u32 {
    let mut order: Vec<(f64, usize)> = train.iter().enumerate().map(|(i, (x, _))| (squared_distance(x, query), i)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let nearest = &order[..k.min(order.len())];
    let mut votes: BTreeMap<u32, usize> = BTreeMap::new();
    for &(_, i) in nearest {
        *votes.entry(train[i].1).or_default() += 1;
    }
    let top = votes.values().copied().max().unwrap_or(0);
    nearest
        .iter()
        .map(|&(_, i)| train[i].1)
        .find(|c| votes[c] == top)
        .expect("at least one neighbour")
}

/// Accuracy on fold `fold` of a classifier trained on every other fold.
pub fn fold_accuracy(features: &[Vec<f64>], labels: &[u32], assignment: &[usize], fold: usize, k: usize) -> f64 {
    let width = features.first().map_or(0, Vec::len);
    let train_rows = (0..features.len()).filter(|&i| assignment[i] != fold);
    let scaler = Standardizer::fit(train_rows.clone().map(|i| features[i].as_slice()).collect::<Vec<_>>(), width);
    let train: Vec<(Vec<f64>, u32)> = train_rows.map(|i| (scaler.transform(&features[i]), labels[i])).collect();
    let test: Vec<usize> = (0..features.len()).filter(|&i| assignment[i] == fold).collect();
    if test.is_empty() {
        return 0.0;
    }
    let correct = test.iter().filter(|&&i| knn_predict(&train, &scaler.transform(&features[i]), k) == labels[i]).count();
    correct as f64 / test.len() as f64
}

/// Validated labels and fold assignment for a cross-validation run.
pub fn prepare(features: &[Vec<f64>], labels: &[u32], config: &KnnConfig) -> Result<(Vec<u32>, Vec<usize>), ClassifyError> {
    if features.len() != labels.len() {
        return Err(ClassifyError::LengthMismatch { rows: features.len(), labels: labels.len() });
    }
    if config.k_neighbors == 0 {
        return Err(ClassifyError::ZeroNeighbors);
    }
    let expected = features.first().map_or(0, Vec::len);
    if let Some((row, f)) = features.iter().enumerate().find(|(_, f)| f.len() != expected) {
        return Err(ClassifyError::RaggedRow { row, len: f.len(), expected });
    }
    let mut labels = labels.to_vec();
    if config.shuffle_labels {
        labels.shuffle(&mut seeded(mix(config.seed, 0x5EED)));
    }
    let assignment = stratified_folds(&labels, config.folds, config.seed)?;
    Ok((labels, assignment))
}

/// Builds the report from per-fold accuracies.
pub fn report(fold_accuracies: Vec<f64>, config: KnnConfig, feature_count: usize) -> CvReport {
    let n = fold_accuracies.len().max(1) as f64;
    let mean = fold_accuracies.iter().sum::<f64>() / n;
    let std = libm::sqrt(fold_accuracies.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / n);
    CvReport { fold_accuracies, mean, std, config, feature_count }
}

/// Stratified k-fold cross-validated accuracy of Euclidean k-NN on
/// standardized features.
pub fn knn_cross_validate(features: &[Vec<f64>], labels: &[u32], config: &KnnConfig) -> Result<CvReport, ClassifyError> {
    let (labels, assignment) = prepare(features, labels, config)?;
    let accs = (0..config.folds).map(|f| fold_accuracy(features, &labels, &assignment, f, config.k_neighbors)).collect();
    Ok(report(accs, *config, features.first().map_or(0, Vec::len)))
}
