//! Equal-width grouping of numeric attributes and category partitioning.
//!
//! Row subsets are passed as slices of row indices into a [`Dataset`], so the
//! recursive builders never copy rows.

use serde::{Deserialize, Serialize};

use crate::dataset::{AttrKind, DataError, Dataset, Value};

/// `k` equal-width groups over `[min, max]` of one numeric attribute.
///
/// Group `i < k - 1` is `[min + i·width, min + (i+1)·width)`; the last group
/// is closed and ends at `max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub attribute_index: usize,
    pub min: f64,
    pub max: f64,
    pub k: usize,
    pub width: f64,
}

impl GroupSpec {
    pub fn new(attribute_index: usize, min: f64, max: f64, k: usize) -> Result<Self, DataError> {
        if k == 0 {
            return Err(DataError::InvalidParameters(
                "group count must be at least 1",
            ));
        }
        if !(min.is_finite() && max.is_finite()) || min > max {
            return Err(DataError::InvalidParameters(
                "group range must satisfy min <= max",
            ));
        }
        Ok(Self {
            attribute_index,
            min,
            max,
            k,
            width: (max - min) / k as f64,
        })
    }

    /// Lower bound of group `i`.
    pub fn lower(&self, i: usize) -> f64 {
        self.min + i as f64 * self.width
    }

    /// Upper bound of group `i`; exclusive except for the last group.
    pub fn upper(&self, i: usize) -> f64 {
        if i + 1 >= self.k {
            self.max
        } else {
            self.min + (i + 1) as f64 * self.width
        }
    }

    pub fn assign(&self, value: f64) -> usize {
        assign_group(self, value)
    }

    pub(crate) fn is_valid(&self) -> bool {
        self.k >= 1 && self.min <= self.max && self.width >= 0.0
    }
}

/// `floor((value - min) / width)` clamped to `[0, k-1]`. A zero-width spec
/// sends everything to group 0.
///
/// The floor estimate is corrected by one step where rounding puts a value on
/// the wrong side of a bound, so the result always agrees with
/// [`GroupSpec::lower`] / [`GroupSpec::upper`].
pub fn assign_group(spec: &GroupSpec, value: f64) -> usize {
    if spec.width <= 0.0 || value <= spec.min || value.is_nan() {
        return 0;
    }
    let last = spec.k - 1;
    let g = ((value - spec.min) / spec.width).floor();
    let mut g = if g >= last as f64 { last } else { g as usize };
    if g > 0 && value < spec.lower(g) {
        g -= 1;
    } else if g < last && value >= spec.upper(g) {
        g += 1;
    }
    g
}

fn numeric_value(d: &Dataset, row: usize, attr: usize) -> f64 {
    match &d.rows()[row].values[attr] {
        Value::Num(v) => *v,
        Value::Cat(_) => unreachable!("attribute kind checked by caller"),
    }
}

fn check_kind(d: &Dataset, attr: usize, kind: AttrKind) -> Result<(), DataError> {
    match d.schemas().get(attr) {
        None => Err(DataError::Inconsistent(format!(
            "no attribute at index {attr}"
        ))),
        Some(s) if s.kind != kind => Err(DataError::Inconsistent(format!(
            "attribute `{}` is not {}",
            s.name,
            match kind {
                AttrKind::Numeric => "numeric",
                AttrKind::Categorical => "categorical",
            }
        ))),
        Some(_) => Ok(()),
    }
}

/// Observed `(min, max)` of a numeric attribute over the given rows.
pub fn compute_range(d: &Dataset, rows: &[usize], attr: usize) -> Result<(f64, f64), DataError> {
    check_kind(d, attr, AttrKind::Numeric)?;
    if rows.is_empty() {
        return Err(DataError::NoRows);
    }
    Ok(rows
        .iter()
        .map(|&r| numeric_value(d, r, attr))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        }))
}

/// Number of distinct values of a numeric attribute over the given rows.
pub(crate) fn distinct_numeric(d: &Dataset, rows: &[usize], attr: usize) -> usize {
    let mut vals: Vec<f64> = rows.iter().map(|&r| numeric_value(d, r, attr)).collect();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    vals.len()
}

/// Splits rows into `spec.k` subsets by group, preserving row order.
pub fn partition_by_groups(d: &Dataset, rows: &[usize], spec: &GroupSpec) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); spec.k];
    for &r in rows {
        out[assign_group(spec, numeric_value(d, r, spec.attribute_index))].push(r);
    }
    out
}

/// One subset per distinct category value, in first-occurrence order.
pub fn partition_by_category(
    d: &Dataset,
    rows: &[usize],
    attr: usize,
) -> Result<Vec<(String, Vec<usize>)>, DataError> {
    check_kind(d, attr, AttrKind::Categorical)?;
    let mut out: Vec<(String, Vec<usize>)> = Vec::new();
    for &r in rows {
        let v = match &d.rows()[r].values[attr] {
            Value::Cat(s) => s,
            Value::Num(_) => unreachable!(),
        };
        match out.iter_mut().find(|(c, _)| c == v) {
            Some((_, members)) => members.push(r),
            None => out.push((v.clone(), vec![r])),
        }
    }
    Ok(out)
}
