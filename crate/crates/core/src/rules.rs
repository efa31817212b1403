//! IF-THEN rules read off a decision tree, one per leaf.

use std::fmt::Write;

use crate::dataset::{AttributeSchema, ClassCounts, Value};
use crate::discretize::{assign_group, GroupSpec};
use crate::induction::{DecisionTree, Split, TreeNode};

/// The test of one rule condition.
#[derive(Debug, Clone, PartialEq)]
pub enum Test {
    /// `value = category`
    Equals(String),
    /// `value` falls in group `group` of `spec`: `[lower, upper)`, or
    /// `[lower, max]` for the last group. Evaluated with the same clamping
    /// as tree routing.
    InGroup { spec: GroupSpec, group: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub attribute_index: usize,
    pub test: Test,
}

impl Condition {
    pub fn holds(&self, row: &[Value]) -> bool {
        match (&self.test, row.get(self.attribute_index)) {
            (Test::Equals(c), Some(Value::Cat(v))) => c == v,
            (Test::InGroup { spec, group }, Some(Value::Num(v))) => {
                assign_group(spec, *v) == *group
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub conditions: Vec<Condition>,
    pub label: String,
    pub support: ClassCounts,
}

impl Rule {
    pub fn matches(&self, row: &[Value]) -> bool {
        self.conditions.iter().all(|c| c.holds(row))
    }
}

/// One rule per leaf, left to right, with the root-to-leaf tests in path order.
pub fn extract_rules(t: &DecisionTree) -> Vec<Rule> {
    fn walk(node: &TreeNode, path: &mut Vec<Condition>, out: &mut Vec<Rule>) {
        match node {
            TreeNode::Leaf { label, support } => out.push(Rule {
                conditions: path.clone(),
                label: label.clone(),
                support: support.clone(),
            }),
            TreeNode::Internal {
                attribute_index,
                split,
                children,
                ..
            } => {
                for (i, child) in children.iter().enumerate() {
                    let test = match split {
                        Split::Categorical { values } => Test::Equals(values[i].clone()),
                        Split::Grouped(spec) => Test::InGroup {
                            spec: spec.clone(),
                            group: i,
                        },
                    };
                    path.push(Condition {
                        attribute_index: *attribute_index,
                        test,
                    });
                    walk(child, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(&t.root, &mut Vec::new(), &mut out);
    out
}

/// Label of the first rule whose conditions all hold, else `fallback`.
pub fn rules_classify<'a>(rules: &'a [Rule], fallback: &'a str, row: &[Value]) -> &'a str {
    rules
        .iter()
        .find(|r| r.matches(row))
        .map_or(fallback, |r| r.label.as_str())
}

pub(crate) fn format_number(v: f64) -> String {
    format!("{v}")
}

fn write_condition(out: &mut String, c: &Condition, schema: &[AttributeSchema]) {
    let name = &schema[c.attribute_index].name;
    match &c.test {
        Test::Equals(v) => write!(out, "{name} = {v}").unwrap(),
        Test::InGroup { spec, group } => {
            let close = if group + 1 == spec.k { ']' } else { ')' };
            write!(
                out,
                "{name} in [{}, {}{close}",
                format_number(spec.lower(*group)),
                format_number(spec.upper(*group))
            )
            .unwrap()
        }
    }
}

/// One line per rule:
/// `IF <attr> in [lo, hi) AND ... THEN <class> (support: n)`.
/// A rule without conditions reads `IF true THEN ...`.
pub fn rules_to_text(rules: &[Rule], schema: &[AttributeSchema]) -> String {
    let mut out = String::new();
    for r in rules {
        out.push_str("IF ");
        if r.conditions.is_empty() {
            out.push_str("true");
        }
        for (i, c) in r.conditions.iter().enumerate() {
            if i > 0 {
                out.push_str(" AND ");
            }
            write_condition(&mut out, c, schema);
        }
        writeln!(out, " THEN {} (support: {})", r.label, r.support.total()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_csv, ClassSelector};
    use crate::induction::{build_grouped, build_id3, classify, InductionParams};

    #[test]
    fn single_leaf_gives_one_unconditional_rule() {
        let d = parse_csv("x,class\n1,a\n2,a\n", &ClassSelector::Last).unwrap();
        let t = build_grouped(&d, &InductionParams::default()).unwrap();
        let rules = extract_rules(&t);
        assert_eq!(rules.len(), 1);
        assert!(rules[0].conditions.is_empty());
        assert_eq!(
            rules_to_text(&rules, &t.schema),
            "IF true THEN a (support: 2)\n"
        );
    }

    #[test]
    fn three_children_three_rules() {
        let d = parse_csv("c,class\nr,a\ng,b\nb,c\nr,a\n", &ClassSelector::Last).unwrap();
        let t = build_id3(&d, &InductionParams::default()).unwrap();
        let rules = extract_rules(&t);
        assert_eq!(rules.len(), 3);
        assert!(rules.iter().all(|r| r.conditions.len() == 1));
        assert_eq!(rules_classify(&rules, "z", &d.rows()[1].values), "b");
        assert_eq!(
            rules_classify(&rules, "z", &[Value::Cat("violet".into())]),
            "z"
        );
        assert_eq!(
            rules_to_text(&rules, &t.schema),
            "IF c = r THEN a (support: 2)\nIF c = g THEN b (support: 1)\nIF c = b THEN c (support: 1)\n"
        );
    }

    #[test]
    fn interval_text_and_agreement() {
        let d = parse_csv(
            "x,class\n0,a\n1,a\n2,a\n3,a\n7,b\n8,b\n9,b\n10,b\n",
            &ClassSelector::Last,
        )
        .unwrap();
        let t = build_grouped(&d, &InductionParams::default()).unwrap();
        let rules = extract_rules(&t);
        assert_eq!(
            rules_to_text(&rules, &t.schema),
            "IF x in [0, 5) THEN a (support: 4)\nIF x in [5, 10] THEN b (support: 4)\n"
        );
        for v in [-5.0, 0.0, 4.999, 5.0, 10.0, 42.0] {
            let row = [Value::Num(v)];
            assert_eq!(
                rules_classify(&rules, t.root_majority(), &row),
                classify(&t, &row).unwrap()
            );
        }
    }
}
