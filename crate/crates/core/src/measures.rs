//! Entropy and information gain, in bits.

use thiserror::Error;

use crate::dataset::ClassCounts;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("partition has no non-empty block")]
    EmptyPartition,
    #[error("partition does not sum to the parent counts")]
    PartitionMismatch,
}

/// Class counts of each outcome of a split, in child order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<ClassCounts>,
}

impl Partition {
    pub fn new(blocks: Vec<ClassCounts>) -> Self {
        Self { blocks }
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().map(ClassCounts::total).sum()
    }

    /// Per-class sums over all blocks.
    pub fn merged(&self) -> Vec<usize> {
        let width = self
            .blocks
            .iter()
            .map(ClassCounts::n_classes)
            .max()
            .unwrap_or(0);
        let mut out = vec![0; width];
        for b in &self.blocks {
            for (o, &c) in out.iter_mut().zip(b.counts()) {
                *o += c;
            }
        }
        out
    }
}

/// `-Σ p_i log2 p_i` with `0 log2 0 = 0`; zero for an empty set.
pub fn info(c: &ClassCounts) -> f64 {
    if c.total() == 0 {
        return 0.0;
    }
    let total = c.total() as f64;
    let h: f64 = c
        .counts()
        .iter()
        .filter(|&&n| n > 0)
        .map(|&n| {
            let p = n as f64 / total;
            -p * p.log2()
        })
        .sum();
    // A pure set sums to -0.0.
    h.max(0.0)
}

/// Weighted mean entropy of the blocks, `Σ |D_j|/|D| · info(D_j)`.
pub fn expected_info(p: &Partition) -> Result<f64, MeasureError> {
    let total = p.total();
    if total == 0 {
        return Err(MeasureError::EmptyPartition);
    }
    let total = total as f64;
    Ok(p.blocks
        .iter()
        .filter(|b| b.total() > 0)
        .map(|b| b.total() as f64 / total * info(b))
        .sum())
}

/// `info(parent) - expected_info(p)`.
pub fn gain(parent: &ClassCounts, p: &Partition) -> Result<f64, MeasureError> {
    let mut merged = p.merged();
    merged.resize(merged.len().max(parent.n_classes()), 0);
    let mut expected = parent.counts().to_vec();
    expected.resize(merged.len(), 0);
    if merged != expected {
        return Err(MeasureError::PartitionMismatch);
    }
    Ok(info(parent) - expected_info(p)?)
}
