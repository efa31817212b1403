use crate::dataset::{AttrKind, ClassCounts, Dataset};
use crate::discretize::{
    compute_range, distinct_numeric, partition_by_category, partition_by_groups, GroupSpec,
};
use crate::measures::{gain, Partition};
use crate::GAIN_EPSILON;

use super::{Algorithm, BuildError, DecisionTree, InductionParams, Split, TreeNode};

/// Classic ID3: multi-way splits on the max-gain attribute, numeric
/// attributes pre-binned once into `id3_fixed_bins` groups over their global
/// range.
pub fn build_id3(d: &Dataset, params: &InductionParams) -> Result<DecisionTree, BuildError> {
    params.validate()?;
    if d.is_empty() {
        return Err(BuildError::EmptyDataset);
    }
    let rows = d.all_rows();
    let bins = (0..d.n_attributes())
        .map(|a| match d.schemas()[a].kind {
            AttrKind::Numeric => {
                let (lo, hi) = compute_range(d, &rows, a)?;
                Ok(Some(GroupSpec::new(a, lo, hi, params.id3_fixed_bins)?))
            }
            AttrKind::Categorical => Ok(None),
        })
        .collect::<Result<Vec<_>, BuildError>>()?;
    let builder = Builder {
        d,
        params,
        strategy: Strategy::Id3 { bins },
    };
    Ok(builder.finish(Algorithm::Id3, &rows))
}

/// Group-escalation induction.
///
/// At every node, numeric attributes are re-grouped over the node's local
/// range with k = 2, 3, ... groups. For each k the max-gain attribute is
/// chosen; the first k whose best split leaves every child at or above the
/// purity threshold wins. If no k up to `max_groups` gets there, the best
/// split seen across all k is used and recursion continues below it.
pub fn build_grouped(d: &Dataset, params: &InductionParams) -> Result<DecisionTree, BuildError> {
    params.validate()?;
    if d.is_empty() {
        return Err(BuildError::EmptyDataset);
    }
    if d.n_attributes() == 0 {
        return Err(BuildError::NoAttributes);
    }
    let builder = Builder {
        d,
        params,
        strategy: Strategy::Grouped,
    };
    Ok(builder.finish(Algorithm::Grouped, &d.all_rows()))
}

enum Strategy {
    Id3 { bins: Vec<Option<GroupSpec>> },
    Grouped,
}

#[derive(Clone)]
struct Candidate {
    attr: usize,
    split: Split,
    children: Vec<Vec<usize>>,
    child_counts: Vec<ClassCounts>,
    gain: f64,
}

impl Candidate {
    fn beats(&self, other: &Option<Candidate>) -> bool {
        match other {
            None => true,
            Some(o) => self.gain > o.gain + GAIN_EPSILON,
        }
    }
}

struct Builder<'a> {
    d: &'a Dataset,
    params: &'a InductionParams,
    strategy: Strategy,
}

impl Builder<'_> {
    fn finish(&self, algorithm: Algorithm, rows: &[usize]) -> DecisionTree {
        let attrs: Vec<usize> = (0..self.d.n_attributes()).collect();
        DecisionTree {
            algorithm,
            params: *self.params,
            schema: self.d.schemas().to_vec(),
            class_labels: self.d.class_labels().to_vec(),
            root: self.grow(rows, &attrs),
        }
    }

    fn label(&self, idx: usize) -> String {
        self.d.class_labels()[idx].clone()
    }

    fn leaf(&self, counts: ClassCounts, majority: usize) -> TreeNode {
        TreeNode::Leaf {
            label: self.label(majority),
            support: counts,
        }
    }

    /// `rows` is non-empty; `available` is sorted ascending.
    fn grow(&self, rows: &[usize], available: &[usize]) -> TreeNode {
        let counts = self.d.class_counts(rows);
        let majority = counts.majority().expect("non-empty node");
        let settled = match self.strategy {
            Strategy::Id3 { .. } => counts.is_pure(),
            Strategy::Grouped => counts.majority_fraction() >= self.params.purity_threshold,
        };
        if settled || available.is_empty() {
            return self.leaf(counts, majority);
        }

        let best = match &self.strategy {
            Strategy::Id3 { bins } => self.best_id3(rows, available, &counts, bins),
            Strategy::Grouped => self.best_grouped(rows, available, &counts),
        };
        let Some(best) = best.filter(|c| c.gain > GAIN_EPSILON) else {
            return self.leaf(counts, majority);
        };

        let rest: Vec<usize> = available
            .iter()
            .copied()
            .filter(|&a| a != best.attr)
            .collect();
        let n_classes = self.d.class_labels().len();
        let children = best
            .children
            .iter()
            .map(|sub| {
                if sub.is_empty() {
                    self.leaf(ClassCounts::zeros(n_classes), majority)
                } else {
                    self.grow(sub, &rest)
                }
            })
            .collect();
        TreeNode::Internal {
            attribute_index: best.attr,
            split: best.split,
            fallback_label: self.label(majority),
            children,
        }
    }

    fn candidate(
        &self,
        attr: usize,
        split: Split,
        children: Vec<Vec<usize>>,
        parent: &ClassCounts,
    ) -> Candidate {
        let child_counts: Vec<ClassCounts> =
            children.iter().map(|c| self.d.class_counts(c)).collect();
        let gain = gain(parent, &Partition::new(child_counts.clone()))
            .expect("children partition the parent");
        Candidate {
            attr,
            split,
            children,
            child_counts,
            gain,
        }
    }

    fn categorical(&self, rows: &[usize], attr: usize, parent: &ClassCounts) -> Candidate {
        let parts = partition_by_category(self.d, rows, attr).expect("categorical attribute");
        let (values, children) = parts.into_iter().unzip();
        self.candidate(attr, Split::Categorical { values }, children, parent)
    }

    fn grouped(&self, rows: &[usize], spec: GroupSpec, parent: &ClassCounts) -> Candidate {
        let children = partition_by_groups(self.d, rows, &spec);
        self.candidate(spec.attribute_index, Split::Grouped(spec), children, parent)
    }

    fn best_id3(
        &self,
        rows: &[usize],
        available: &[usize],
        parent: &ClassCounts,
        bins: &[Option<GroupSpec>],
    ) -> Option<Candidate> {
        let mut best = None;
        for &a in available {
            let c = match &bins[a] {
                Some(spec) => self.grouped(rows, spec.clone(), parent),
                None => self.categorical(rows, a, parent),
            };
            if c.beats(&best) {
                best = Some(c);
            }
        }
        best
    }

    fn best_grouped(
        &self,
        rows: &[usize],
        available: &[usize],
        parent: &ClassCounts,
    ) -> Option<Candidate> {
        // Per numeric attribute: local range and the largest k worth trying.
        let mut numeric = Vec::new();
        let mut categorical = Vec::new();
        for &a in available {
            match self.d.schemas()[a].kind {
                AttrKind::Numeric => {
                    let (lo, hi) = compute_range(self.d, rows, a).expect("numeric, non-empty");
                    if lo < hi {
                        let cap = self
                            .params
                            .max_groups
                            .min(distinct_numeric(self.d, rows, a));
                        numeric.push((a, lo, hi, cap));
                    }
                }
                AttrKind::Categorical => categorical.push(self.categorical(rows, a, parent)),
            }
        }
        let k_limit = numeric.iter().map(|n| n.3).max().unwrap_or(2).max(2);

        let mut overall: Option<Candidate> = None;
        for k in 2..=k_limit {
            let mut round: Option<Candidate> = None;
            for &a in available {
                let c = if let Some(c) = categorical.iter().find(|c| c.attr == a) {
                    c.clone()
                } else if let Some(&(_, lo, hi, cap)) = numeric.iter().find(|n| n.0 == a) {
                    if k > cap {
                        continue;
                    }
                    let spec = GroupSpec::new(a, lo, hi, k).expect("valid local range");
                    self.grouped(rows, spec, parent)
                } else {
                    continue;
                };
                if c.beats(&round) {
                    round = Some(c);
                }
            }
            let Some(round) = round else { continue };
            let threshold = self.params.purity_threshold;
            if round.gain > GAIN_EPSILON
                && round
                    .child_counts
                    .iter()
                    .all(|c| c.majority_fraction() >= threshold)
            {
                return Some(round);
            }
            if round.beats(&overall) {
                overall = Some(round);
            }
        }
        overall
    }
}
