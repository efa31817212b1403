//! Training-set evaluation and the ID3 vs. grouped comparison.

use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::Dataset;
use crate::induction::{
    build_grouped, build_id3, classify, tree_stats, Algorithm, BuildError, ClassifyError,
    DecisionTree, InductionParams, TreeStats,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("dataset schema does not match the tree schema")]
    SchemaMismatch,
    #[error("cannot evaluate on an empty dataset")]
    EmptyDataset,
    #[error("holdout split leaves an empty side")]
    EmptySplit,
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub misclassification_ratio: f64,
    /// Row and column labels of `confusion`: the tree's class labels followed
    /// by any label seen only in the evaluated data.
    pub labels: Vec<String>,
    /// `confusion[true][predicted]`.
    pub confusion: Vec<Vec<usize>>,
    pub tree_stats: TreeStats,
}

pub fn evaluate(t: &DecisionTree, d: &Dataset) -> Result<EvalReport, EvalError> {
    if d.schemas() != t.schema.as_slice() {
        return Err(EvalError::SchemaMismatch);
    }
    if d.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    let mut labels = t.class_labels.clone();
    for l in d.class_labels() {
        if !labels.contains(l) {
            labels.push(l.clone());
        }
    }
    let index = |l: &str| labels.iter().position(|x| x == l).expect("label collected");
    let mut confusion = vec![vec![0; labels.len()]; labels.len()];
    for row in d.rows() {
        let truth = index(&d.class_labels()[row.label]);
        let predicted = index(classify(t, &row.values)?);
        confusion[truth][predicted] += 1;
    }
    let correct: usize = (0..labels.len()).map(|i| confusion[i][i]).sum();
    let accuracy = correct as f64 / d.len() as f64;
    Ok(EvalReport {
        algorithm: t.algorithm,
        n: d.len(),
        correct,
        accuracy,
        misclassification_ratio: 1.0 - accuracy,
        labels,
        confusion,
        tree_stats: tree_stats(t),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub id3: EvalReport,
    pub grouped: EvalReport,
}

fn build_both(
    train: &Dataset,
    params: &InductionParams,
) -> Result<(DecisionTree, DecisionTree), EvalError> {
    let (id3, grouped) = std::thread::scope(|s| {
        let id3 = s.spawn(|| build_id3(train, params));
        let grouped = build_grouped(train, params);
        (id3.join().expect("id3 build panicked"), grouped)
    });
    Ok((id3?, grouped?))
}

/// Builds both trees on `d` and evaluates each on the same rows.
pub fn compare(d: &Dataset, params: &InductionParams) -> Result<Comparison, EvalError> {
    let (id3, grouped) = build_both(d, params)?;
    Ok(Comparison {
        id3: evaluate(&id3, d)?,
        grouped: evaluate(&grouped, d)?,
    })
}

/// Seeded shuffle, train on the first `train_fraction` of rows, evaluate on
/// the rest.
pub fn compare_holdout(
    d: &Dataset,
    params: &InductionParams,
    train_fraction: f64,
    seed: u64,
) -> Result<Comparison, EvalError> {
    let mut order = d.all_rows();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let cut = (d.len() as f64 * train_fraction).round() as usize;
    if cut == 0 || cut >= d.len() {
        return Err(EvalError::EmptySplit);
    }
    let train = d.subset(&order[..cut]);
    let test = d.subset(&order[cut..]);
    let (id3, grouped) = build_both(&train, params)?;
    Ok(Comparison {
        id3: evaluate(&id3, &test)?,
        grouped: evaluate(&grouped, &test)?,
    })
}

impl EvalReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "algorithm: {}", self.algorithm).unwrap();
        writeln!(out, "rows: {}", self.n).unwrap();
        writeln!(out, "accuracy: {:.6}", self.accuracy).unwrap();
        writeln!(
            out,
            "misclassification: {:.6}",
            self.misclassification_ratio
        )
        .unwrap();
        writeln!(out, "depth: {}", self.tree_stats.depth).unwrap();
        writeln!(out, "nodes: {}", self.tree_stats.node_count).unwrap();
        writeln!(out, "leaves: {}", self.tree_stats.leaf_count).unwrap();
        let width = self
            .labels
            .iter()
            .map(String::len)
            .chain(self.confusion.iter().flatten().map(|c| c.to_string().len()))
            .max()
            .unwrap_or(1);
        writeln!(out, "confusion (rows = true, columns = predicted):").unwrap();
        write!(out, "  {:>width$}", "").unwrap();
        for l in &self.labels {
            write!(out, " {l:>width$}").unwrap();
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.confusion) {
            write!(out, "  {l:>width$}").unwrap();
            for c in row {
                write!(out, " {c:>width$}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl Comparison {
    pub fn to_text(&self) -> String {
        format!("{}\n{}", self.id3.to_text(), self.grouped.to_text())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
