//! Test-only oracles and fixtures, written independently of the library's
//! measure and routing code.
#![allow(dead_code)]

use groupdt::{parse_csv, ClassSelector, Dataset};

/// Entropy from raw label lists, via `log2(n) - Σ c·log2(c) / n` in natural
/// logs. Shares no code with `groupdt::info`.
pub fn brute_entropy<T: PartialEq>(labels: &[T]) -> f64 {
    if labels.is_empty() {
        return 0.0;
    }
    let mut seen: Vec<(&T, usize)> = Vec::new();
    for l in labels {
        match seen.iter_mut().find(|(x, _)| *x == l) {
            Some((_, c)) => *c += 1,
            None => seen.push((l, 1)),
        }
    }
    let n = labels.len() as f64;
    let weighted: f64 = seen
        .iter()
        .map(|&(_, c)| (c as f64) * (c as f64).ln())
        .sum();
    (n.ln() - weighted / n) / std::f64::consts::LN_2
}

/// Weighted child entropy over explicit blocks of labels.
pub fn brute_expected<T: PartialEq>(blocks: &[Vec<T>]) -> f64 {
    let n: usize = blocks.iter().map(Vec::len).sum();
    blocks
        .iter()
        .map(|b| b.len() as f64 / n as f64 * brute_entropy(b))
        .sum()
}

pub fn brute_gain<T: PartialEq + Clone>(blocks: &[Vec<T>]) -> f64 {
    let all: Vec<T> = blocks.iter().flatten().cloned().collect();
    brute_entropy(&all) - brute_expected(blocks)
}

/// Expands per-class counts into a label list.
pub fn expand(counts: &[usize]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(label, &c)| std::iter::repeat_n(label, c))
        .collect()
}

/// Group membership by explicit interval comparison against
/// `[lo + i·w, lo + (i+1)·w)` with the last interval closed.
pub fn brute_group(lo: f64, hi: f64, k: usize, v: f64) -> usize {
    let w = (hi - lo) / k as f64;
    for i in 0..k {
        let a = lo + i as f64 * w;
        let b = lo + (i + 1) as f64 * w;
        if i + 1 == k || (v >= a && v < b) {
            return i;
        }
    }
    unreachable!()
}

pub fn csv(text: &str) -> Dataset {
    parse_csv(text, &ClassSelector::Last).expect("fixture parses")
}

/// The classic 14-row weather fixture: 4 categorical attributes, 2 classes.
pub const PLAY_CSV: &str = "\
outlook,temperature,humidity,wind,play
sunny,hot,high,weak,no
sunny,hot,high,strong,no
overcast,hot,high,weak,yes
rain,mild,high,weak,yes
rain,cool,normal,weak,yes
rain,cool,normal,strong,no
overcast,cool,normal,strong,yes
sunny,mild,high,weak,no
sunny,cool,normal,weak,yes
rain,mild,normal,weak,yes
sunny,mild,normal,strong,yes
overcast,mild,high,strong,yes
overcast,hot,normal,weak,yes
rain,mild,high,strong,no
";

/// Three classes occupying consecutive thirds of one attribute's range.
pub const THIRDS_CSV: &str = "\
x,class
0,a
1,a
2,a
3,b
4,b
5,b
6,c
7,c
8,c
9,c
";
