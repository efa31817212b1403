//! Decision tree induction over tabular classification data.
//!
//! Two builders share one recursive core:
//!
//! * [`build_id3`] is classic ID3. Numeric attributes are pre-binned once
//!   into a fixed number of equal-width groups over the global range.
//! * [`build_grouped`] discretizes numeric attributes per node, escalating
//!   the number of equal-width groups from 2 up to a cap until the best
//!   split yields (nearly) pure children.
//!
//! Built trees can be classified with directly, flattened into IF-THEN
//! [`Rule`]s, exported to JSON or Graphviz DOT, and evaluated with
//! [`evaluate`] / [`compare`].

pub mod dataset;
pub mod discretize;
pub mod eval;
pub mod induction;
pub mod measures;
pub mod rules;

pub use dataset::{
    class_distribution, generate_synthetic, iris_dataset, parse_csv, parse_unlabeled, AttrKind,
    AttributeSchema, ClassCounts, ClassSelector, DataError, Dataset, Row, Value, IRIS_CSV,
};
pub use discretize::{
    assign_group, compute_range, partition_by_category, partition_by_groups, GroupSpec,
};
pub use eval::{compare, compare_holdout, evaluate, Comparison, EvalError, EvalReport};
pub use induction::{
    build_grouped, build_id3, classify, tree_stats, Algorithm, BuildError, ClassifyError,
    DecisionTree, InductionParams, Split, TreeNode, TreeStats,
};
pub use measures::{expected_info, gain, info, MeasureError, Partition};
pub use rules::{extract_rules, rules_classify, rules_to_text, Condition, Rule, Test};

/// Gain differences at or below this are treated as ties.
pub const GAIN_EPSILON: f64 = 1e-12;
