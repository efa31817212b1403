//! Decision tree types, the two builders, and classification.

mod build;
mod dot;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{AttrKind, AttributeSchema, ClassCounts, DataError, Value};
use crate::discretize::{assign_group, GroupSpec};

pub use build::{build_grouped, build_id3};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("empty dataset")]
    EmptyDataset,
    #[error("dataset has no attributes")]
    NoAttributes,
    #[error("invalid induction parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Data(#[from] DataError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("row has {found} values, tree expects {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("value for attribute `{0}` has the wrong kind")]
    KindMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Id3,
    Grouped,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Id3 => "id3",
            Algorithm::Grouped => "grouped",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InductionParams {
    /// Cap on the number of equal-width groups tried per node.
    pub max_groups: usize,
    /// Majority-class fraction at which a grouped node is accepted as a leaf.
    pub purity_threshold: f64,
    /// Global equal-width bins applied to numeric attributes under ID3.
    pub id3_fixed_bins: usize,
}

impl Default for InductionParams {
    fn default() -> Self {
        Self {
            max_groups: 10,
            purity_threshold: 1.0,
            id3_fixed_bins: 3,
        }
    }
}

impl InductionParams {
    pub fn validate(&self) -> Result<(), BuildError> {
        if self.max_groups < 2 {
            return Err(BuildError::InvalidParams(
                "max_groups must be at least 2".into(),
            ));
        }
        if !(self.purity_threshold > 0.5 && self.purity_threshold <= 1.0) {
            return Err(BuildError::InvalidParams(
                "purity_threshold must lie in (0.5, 1.0]".into(),
            ));
        }
        if self.id3_fixed_bins < 2 {
            return Err(BuildError::InvalidParams(
                "id3_fixed_bins must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

/// The test applied at an internal node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Split {
    /// One child per listed category value, in the same order.
    Categorical { values: Vec<String> },
    /// One child per group of the spec.
    Grouped(GroupSpec),
}

impl Split {
    pub fn arity(&self) -> usize {
        match self {
            Split::Categorical { values } => values.len(),
            Split::Grouped(spec) => spec.k,
        }
    }

    /// Child index for a value, `None` for an unseen category.
    pub fn route(&self, value: &Value) -> Option<usize> {
        match (self, value) {
            (Split::Categorical { values }, Value::Cat(v)) => values.iter().position(|c| c == v),
            (Split::Grouped(spec), Value::Num(v)) => Some(assign_group(spec, *v)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum TreeNode {
    Leaf {
        label: String,
        support: ClassCounts,
    },
    Internal {
        attribute_index: usize,
        split: Split,
        /// Majority class of the node's training rows.
        fallback_label: String,
        children: Vec<TreeNode>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub algorithm: Algorithm,
    pub params: InductionParams,
    pub schema: Vec<AttributeSchema>,
    pub class_labels: Vec<String>,
    pub root: TreeNode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStats {
    pub depth: usize,
    pub node_count: usize,
    pub leaf_count: usize,
}

impl DecisionTree {
    /// Majority class of the whole training set.
    pub fn root_majority(&self) -> &str {
        match &self.root {
            TreeNode::Leaf { label, .. } => label,
            TreeNode::Internal { fallback_label, .. } => fallback_label,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    /// Parses and structurally validates a tree produced by [`to_json`](Self::to_json).
    pub fn from_json(text: &str) -> Result<Self, DataError> {
        let tree: DecisionTree = serde_json::from_str(text)
            .map_err(|e| DataError::Inconsistent(format!("invalid tree JSON: {e}")))?;
        tree.check_node(&tree.root)?;
        Ok(tree)
    }

    fn check_node(&self, node: &TreeNode) -> Result<(), DataError> {
        let bad = |msg: String| Err(DataError::Inconsistent(msg));
        match node {
            TreeNode::Leaf { label, support } => {
                if !self.class_labels.contains(label) {
                    return bad(format!("leaf label `{label}` is not a class label"));
                }
                if support.n_classes() != self.class_labels.len()
                    || support.counts().iter().sum::<usize>() != support.total()
                {
                    return bad("leaf support does not match the class labels".into());
                }
                Ok(())
            }
            TreeNode::Internal {
                attribute_index,
                split,
                fallback_label,
                children,
            } => {
                let Some(schema) = self.schema.get(*attribute_index) else {
                    return bad(format!("attribute index {attribute_index} out of range"));
                };
                match split {
                    Split::Categorical { .. } if schema.kind != AttrKind::Categorical => {
                        return bad(format!("categorical split on numeric `{}`", schema.name))
                    }
                    Split::Grouped(spec)
                        if schema.kind != AttrKind::Numeric
                            || spec.attribute_index != *attribute_index
                            || !spec.is_valid() =>
                    {
                        return bad(format!("invalid grouped split on `{}`", schema.name))
                    }
                    _ => {}
                }
                if children.len() != split.arity() {
                    return bad("child count does not match split arity".into());
                }
                if !self.class_labels.contains(fallback_label) {
                    return bad(format!("fallback `{fallback_label}` is not a class label"));
                }
                children.iter().try_for_each(|c| self.check_node(c))
            }
        }
    }

    pub fn to_dot(&self) -> String {
        dot::to_dot(self)
    }
}

/// Routes a row to its leaf and returns the leaf's label. Unseen categories
/// stop at the node they miss and yield its fallback label.
pub fn classify<'t>(t: &'t DecisionTree, row: &[Value]) -> Result<&'t str, ClassifyError> {
    if row.len() != t.schema.len() {
        return Err(ClassifyError::LengthMismatch {
            expected: t.schema.len(),
            found: row.len(),
        });
    }
    if let Some(s) = t.schema.iter().zip(row).find(|(s, v)| s.kind != v.kind()) {
        return Err(ClassifyError::KindMismatch(s.0.name.clone()));
    }
    let mut node = &t.root;
    loop {
        match node {
            TreeNode::Leaf { label, .. } => return Ok(label),
            TreeNode::Internal {
                attribute_index,
                split,
                fallback_label,
                children,
            } => match split.route(&row[*attribute_index]) {
                Some(i) => node = &children[i],
                None => return Ok(fallback_label),
            },
        }
    }
}

pub fn tree_stats(t: &DecisionTree) -> TreeStats {
    fn walk(node: &TreeNode, depth: usize, s: &mut TreeStats) {
        s.node_count += 1;
        s.depth = s.depth.max(depth);
        match node {
            TreeNode::Leaf { .. } => s.leaf_count += 1,
            TreeNode::Internal { children, .. } => {
                for c in children {
                    walk(c, depth + 1, s);
                }
            }
        }
    }
    let mut s = TreeStats {
        depth: 0,
        node_count: 0,
        leaf_count: 0,
    };
    walk(&t.root, 0, &mut s);
    s
}
