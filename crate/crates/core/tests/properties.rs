mod common;

use common::*;
use groupdt::{
    assign_group, build_grouped, build_id3, class_distribution, classify, evaluate, expected_info,
    extract_rules, gain, info, parse_csv, partition_by_groups, rules_classify, tree_stats,
    AttrKind, AttributeSchema, ClassCounts, ClassSelector, Dataset, DecisionTree, GroupSpec,
    InductionParams, Partition, Row, TreeNode, Value,
};
use proptest::prelude::*;

fn counts() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..12, 1..5)
}

/// A small mixed dataset: numeric columns on a coarse grid, categorical
/// columns over three values, 2–3 classes.
fn dataset(max_rows: usize) -> impl Strategy<Value = Dataset> {
    (
        prop::collection::vec(any::<bool>(), 1..4),
        2usize..4,
        1..=max_rows,
    )
        .prop_flat_map(|(kinds, n_classes, n_rows)| {
            let row = (
                kinds
                    .iter()
                    .map(|&numeric| {
                        if numeric {
                            (0i32..20).prop_map(|v| Value::Num(v as f64 / 2.0)).boxed()
                        } else {
                            prop::sample::select(vec!["p", "q", "r"])
                                .prop_map(|s| Value::Cat(s.to_string()))
                                .boxed()
                        }
                    })
                    .collect::<Vec<_>>(),
                0..n_classes,
            );
            let kinds = kinds.clone();
            prop::collection::vec(row, n_rows).prop_map(move |rows| {
                let schemas = kinds
                    .iter()
                    .enumerate()
                    .map(|(i, &numeric)| {
                        let kind = if numeric {
                            AttrKind::Numeric
                        } else {
                            AttrKind::Categorical
                        };
                        AttributeSchema::new(format!("a{i}"), kind)
                    })
                    .collect();
                // Labels in first-occurrence order, as parsing produces them.
                let mut order: Vec<usize> = Vec::new();
                let rows = rows
                    .into_iter()
                    .map(|(values, raw)| {
                        let label = order.iter().position(|&l| l == raw).unwrap_or_else(|| {
                            order.push(raw);
                            order.len() - 1
                        });
                        Row { values, label }
                    })
                    .collect();
                let labels = order.iter().map(|c| format!("k{c}")).collect();
                Dataset::new(schemas, "class", labels, rows).unwrap()
            })
        })
}

fn paths_ok(node: &TreeNode, used: &mut Vec<usize>) -> bool {
    match node {
        TreeNode::Leaf { .. } => true,
        TreeNode::Internal {
            attribute_index,
            children,
            ..
        } => {
            if used.contains(attribute_index) {
                return false;
            }
            used.push(*attribute_index);
            let ok = children.iter().all(|c| paths_ok(c, used));
            used.pop();
            ok
        }
    }
}

fn leaf_support_sum(node: &TreeNode, acc: &mut Vec<usize>) {
    match node {
        TreeNode::Leaf { support, .. } => {
            for (a, c) in acc.iter_mut().zip(support.counts()) {
                *a += c;
            }
        }
        TreeNode::Internal { children, .. } => {
            children.iter().for_each(|c| leaf_support_sum(c, acc))
        }
    }
}

fn builds(d: &Dataset) -> Vec<DecisionTree> {
    let p = InductionParams::default();
    vec![build_id3(d, &p).unwrap(), build_grouped(d, &p).unwrap()]
}

proptest! {
    #[test]
    fn info_bounds_and_oracle(c in counts()) {
        let cc = ClassCounts::from_counts(c.clone());
        let h = info(&cc);
        let m = cc.nonzero().max(1) as f64;
        prop_assert!(h >= 0.0);
        prop_assert!(h <= m.log2() + 1e-12);
        prop_assert!((h - brute_entropy(&expand(&c))).abs() < 1e-9);
        if cc.nonzero() <= 1 {
            prop_assert_eq!(h, 0.0);
        }
        let mut rev = c.clone();
        rev.reverse();
        prop_assert!((info(&ClassCounts::from_counts(rev)) - h).abs() < 1e-12);
    }

    #[test]
    fn gain_bounds(blocks in prop::collection::vec(prop::collection::vec(0usize..8, 3), 1..5)) {
        let parent: Vec<usize> = (0..3).map(|i| blocks.iter().map(|b| b[i]).sum()).collect();
        prop_assume!(parent.iter().sum::<usize>() > 0);
        let pc = ClassCounts::from_counts(parent);
        let p = Partition::new(blocks.iter().map(|b| ClassCounts::from_counts(b.clone())).collect());
        let g = gain(&pc, &p).unwrap();
        prop_assert!(g >= -1e-12);
        prop_assert!(g <= info(&pc) + 1e-12);
        prop_assert!(expected_info(&p).unwrap() <= info(&pc) + 1e-12);

        let mut reversed = p.blocks.clone();
        reversed.reverse();
        let r = expected_info(&Partition::new(reversed)).unwrap();
        prop_assert!((r - expected_info(&p).unwrap()).abs() < 1e-12);

        let label_blocks: Vec<Vec<usize>> = blocks.iter().map(|b| expand(b)).collect();
        prop_assert!((g - brute_gain(&label_blocks)).abs() < 1e-9);
    }

    #[test]
    fn refining_a_block_never_lowers_gain(
        blocks in prop::collection::vec(prop::collection::vec(0usize..8, 3), 1..4),
        which in 0usize..4,
        cut in prop::collection::vec(0usize..8, 3),
    ) {
        let parent: Vec<usize> = (0..3).map(|i| blocks.iter().map(|b| b[i]).sum()).collect();
        prop_assume!(parent.iter().sum::<usize>() > 0);
        let which = which % blocks.len();
        let left: Vec<usize> = blocks[which].iter().zip(&cut).map(|(&b, &c)| b.min(c)).collect();
        let right: Vec<usize> = blocks[which].iter().zip(&left).map(|(&b, &l)| b - l).collect();
        let mut refined = blocks.clone();
        refined[which] = left;
        refined.push(right);

        let g = |bs: &Vec<Vec<usize>>| brute_gain(&bs.iter().map(|b| expand(b)).collect::<Vec<_>>());
        prop_assert!(g(&refined) >= g(&blocks) - 1e-12);
        let pc = ClassCounts::from_counts(parent);
        let lib = |bs: &Vec<Vec<usize>>| gain(&pc, &Partition::new(
            bs.iter().map(|b| ClassCounts::from_counts(b.clone())).collect())).unwrap();
        prop_assert!(lib(&refined) >= lib(&blocks) - 1e-12);
    }

    #[test]
    fn assign_group_monotone_and_matches_intervals(
        lo in -50.0f64..50.0, span in 0.0f64..100.0, k in 1usize..33,
        mut vs in prop::collection::vec(-200.0f64..200.0, 2..20),
    ) {
        let spec = GroupSpec::new(0, lo, lo + span, k).unwrap();
        vs.sort_by(f64::total_cmp);
        let gs: Vec<usize> = vs.iter().map(|&v| assign_group(&spec, v)).collect();
        prop_assert!(gs.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(gs.iter().all(|&g| g < k));
        for (&v, &g) in vs.iter().zip(&gs) {
            if span > 0.0 && v >= spec.min && v <= spec.max {
                prop_assert_eq!(g, brute_group(spec.min, spec.max, k, v));
            }
        }
    }

    #[test]
    fn group_partition_covers(d in dataset(30), k in 1usize..33) {
        prop_assume!(d.schemas()[0].kind == AttrKind::Numeric);
        let rows = d.all_rows();
        let (lo, hi) = groupdt::compute_range(&d, &rows, 0).unwrap();
        let parts = partition_by_groups(&d, &rows, &GroupSpec::new(0, lo, hi, k).unwrap());
        prop_assert_eq!(parts.len(), k);
        let mut all: Vec<usize> = parts.concat();
        all.sort();
        prop_assert_eq!(all, rows);
    }

    #[test]
    fn equally_spaced_values_get_their_own_group(n in 2usize..20, step in 1u32..5, offset in -10i32..10) {
        let mut text = String::from("x,class\n");
        for i in 0..n {
            text.push_str(&format!("{},c\n", offset as f64 + (i as u32 * step) as f64));
        }
        let d = csv(&text);
        let rows = d.all_rows();
        let (lo, hi) = groupdt::compute_range(&d, &rows, 0).unwrap();
        let parts = partition_by_groups(&d, &rows, &GroupSpec::new(0, lo, hi, n).unwrap());
        prop_assert!(parts.iter().all(|p| p.len() == 1));
    }

    #[test]
    fn csv_round_trip_and_kind_stability(d in dataset(25), seed in any::<u64>()) {
        let back = parse_csv(&d.to_csv(), &ClassSelector::Last).unwrap();
        // A categorical column may only change kind if all its values look
        // numeric, which the generator never produces.
        prop_assert_eq!(&back, &d);

        let mut order = d.all_rows();
        let n = order.len();
        for i in (1..n).rev() {
            order.swap(i, (seed as usize).wrapping_add(i * 7) % (i + 1));
        }
        let shuffled = parse_csv(&d.subset(&order).to_csv(), &ClassSelector::Last).unwrap();
        prop_assert_eq!(shuffled.schemas(), d.schemas());
    }

    #[test]
    fn tree_invariants(d in dataset(20)) {
        let dist = class_distribution(&d);
        prop_assert_eq!(dist.total(), d.len());
        for t in builds(&d) {
            prop_assert!(paths_ok(&t.root, &mut Vec::new()));
            prop_assert!(tree_stats(&t).depth <= d.n_attributes());
            let mut sums = vec![0; d.class_labels().len()];
            leaf_support_sum(&t.root, &mut sums);
            prop_assert_eq!(&sums[..], dist.counts());

            let again = if t.algorithm == groupdt::Algorithm::Id3 {
                build_id3(&d, &t.params).unwrap()
            } else {
                build_grouped(&d, &t.params).unwrap()
            };
            prop_assert_eq!(again.to_json(), t.to_json());

            let rules = extract_rules(&t);
            prop_assert_eq!(rules.len(), tree_stats(&t).leaf_count);
            for row in d.rows() {
                let by_tree = classify(&t, &row.values).unwrap();
                prop_assert_eq!(rules_classify(&rules, t.root_majority(), &row.values), by_tree);
                // Exactly one rule covers each training row.
                prop_assert_eq!(rules.iter().filter(|r| r.matches(&row.values)).count(), 1);
            }

            let r = evaluate(&t, &d).unwrap();
            prop_assert_eq!(r.accuracy + r.misclassification_ratio, 1.0);
            prop_assert_eq!(r.confusion.iter().flatten().sum::<usize>(), d.len());
            let rev: Vec<usize> = d.all_rows().into_iter().rev().collect();
            prop_assert_eq!(evaluate(&t, &d.subset(&rev)).unwrap(), r);
        }
    }

    #[test]
    fn pure_grouped_trees_recall_training_rows(d in dataset(20)) {
        let t = build_grouped(&d, &InductionParams::default()).unwrap();
        fn all_pure(n: &TreeNode) -> bool {
            match n {
                TreeNode::Leaf { support, .. } => support.is_pure(),
                TreeNode::Internal { children, .. } => children.iter().all(all_pure),
            }
        }
        if all_pure(&t.root) {
            prop_assert_eq!(evaluate(&t, &d).unwrap().accuracy, 1.0);
        }
    }

    #[test]
    fn id3_root_matches_exhaustive_argmax(d in dataset(12)) {
        prop_assume!(d.schemas().iter().all(|s| s.kind == AttrKind::Categorical));
        let t = build_id3(&d, &InductionParams::default()).unwrap();
        let gains: Vec<f64> = (0..d.n_attributes())
            .map(|a| {
                let mut blocks: Vec<(String, Vec<usize>)> = Vec::new();
                for row in d.rows() {
                    let v = row.values[a].to_string();
                    match blocks.iter_mut().find(|(k, _)| *k == v) {
                        Some((_, b)) => b.push(row.label),
                        None => blocks.push((v, vec![row.label])),
                    }
                }
                brute_gain(&blocks.into_iter().map(|(_, b)| b).collect::<Vec<_>>())
            })
            .collect();
        let best = gains.iter().cloned().fold(f64::MIN, f64::max);
        match &t.root {
            TreeNode::Internal { attribute_index, .. } => {
                let first = gains.iter().position(|&g| g >= best - 1e-9).unwrap();
                prop_assert_eq!(*attribute_index, first);
            }
            TreeNode::Leaf { .. } => {
                prop_assert!(d.class_counts(&d.all_rows()).is_pure() || best <= 1e-9);
            }
        }
    }

    #[test]
    fn routing_is_total(d in dataset(15), probes in prop::collection::vec((any::<i16>(), 0usize..5), 1..20)) {
        let cats = ["p", "q", "r", "unseen", ""];
        for t in builds(&d) {
            for &(num, cat) in &probes {
                let row: Vec<Value> = t.schema.iter().map(|s| match s.kind {
                    AttrKind::Numeric => Value::Num(num as f64 / 3.0),
                    AttrKind::Categorical => Value::Cat(cats[cat].to_string()),
                }).collect();
                let label = classify(&t, &row).unwrap();
                prop_assert!(t.class_labels.iter().any(|l| l == label));
            }
        }
    }
}
