//! Tabular classification datasets: CSV parsing, class distributions and
//! seeded synthetic generation.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DataError {
    #[error("empty input")]
    EmptyInput,
    #[error("header has an empty column name at position {0}")]
    EmptyColumnName(usize),
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),
    #[error("ragged row at line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("quoted field at line {line}, column {column}: quoting is not supported")]
    QuotedField { line: usize, column: usize },
    #[error("missing value at line {line}, column `{column}`")]
    MissingValue { line: usize, column: String },
    #[error("class column not found: {0}")]
    ClassColumnNotFound(String),
    #[error("column with zero rows")]
    NoRows,
    #[error("n_classes > n_rows")]
    TooManyClasses,
    #[error("invalid synthetic parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("inconsistent dataset: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttrKind {
    Categorical,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AttributeSchema {
    pub name: String,
    pub kind: AttrKind,
}

impl AttributeSchema {
    pub fn new(name: impl Into<String>, kind: AttrKind) -> Self {
        Self {
            name: name.into(),
            kind,
        }
    }
}

/// A single attribute value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Cat(String),
}

impl Value {
    pub fn kind(&self) -> AttrKind {
        match self {
            Value::Num(_) => AttrKind::Numeric,
            Value::Cat(_) => AttrKind::Categorical,
        }
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Value::Num(v) => Some(*v),
            Value::Cat(_) => None,
        }
    }

    pub fn as_cat(&self) -> Option<&str> {
        match self {
            Value::Cat(s) => Some(s),
            Value::Num(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(v) => write!(f, "{v}"),
            Value::Cat(s) => f.write_str(s),
        }
    }
}

/// One tuple: attribute values aligned with the schema plus the index of its
/// class label in [`Dataset::class_labels`].
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub values: Vec<Value>,
    pub label: usize,
}

/// Which CSV column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ClassSelector {
    #[default]
    Last,
    Index(usize),
    Name(String),
}

impl std::str::FromStr for ClassSelector {
    type Err = std::convert::Infallible;

    /// `last`, a zero-based column index, or a column name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(if s.eq_ignore_ascii_case("last") {
            ClassSelector::Last
        } else if let Ok(i) = s.parse::<usize>() {
            ClassSelector::Index(i)
        } else {
            ClassSelector::Name(s.to_string())
        })
    }
}

/// Per-class tuple counts, indexed like the owning dataset's class labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    counts: Vec<usize>,
    total: usize,
}

impl ClassCounts {
    pub fn zeros(n_classes: usize) -> Self {
        Self {
            counts: vec![0; n_classes],
            total: 0,
        }
    }

    pub fn from_counts(counts: Vec<usize>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn add(&mut self, label: usize) {
        self.counts[label] += 1;
        self.total += 1;
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn get(&self, label: usize) -> usize {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn n_classes(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Number of labels with a nonzero count.
    pub fn nonzero(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn is_pure(&self) -> bool {
        self.nonzero() <= 1
    }

    /// Most frequent label; ties go to the lowest label index.
    pub fn majority(&self) -> Option<usize> {
        if self.total == 0 {
            return None;
        }
        let mut best = 0;
        for (i, &c) in self.counts.iter().enumerate() {
            if c > self.counts[best] {
                best = i;
            }
        }
        Some(best)
    }

    /// Fraction of rows carrying the majority label; 1.0 for an empty set.
    pub fn majority_fraction(&self) -> f64 {
        match self.majority() {
            Some(m) => self.counts[m] as f64 / self.total as f64,
            None => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schemas: Vec<AttributeSchema>,
    class_name: String,
    class_labels: Vec<String>,
    rows: Vec<Row>,
}

impl Dataset {
    /// Builds a dataset from already-typed parts, checking every invariant.
    pub fn new(
        schemas: Vec<AttributeSchema>,
        class_name: impl Into<String>,
        class_labels: Vec<String>,
        rows: Vec<Row>,
    ) -> Result<Self, DataError> {
        let class_name = class_name.into();
        let mut names = HashSet::new();
        for (i, s) in schemas.iter().enumerate() {
            if s.name.is_empty() {
                return Err(DataError::EmptyColumnName(i));
            }
            if !names.insert(s.name.as_str()) || s.name == class_name {
                return Err(DataError::DuplicateColumn(s.name.clone()));
            }
        }
        let distinct: HashSet<&str> = class_labels.iter().map(String::as_str).collect();
        if distinct.len() != class_labels.len() {
            return Err(DataError::Inconsistent("duplicate class label".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.values.len() != schemas.len() {
                return Err(DataError::Inconsistent(format!(
                    "row {r} has {} values for {} attributes",
                    row.values.len(),
                    schemas.len()
                )));
            }
            if row.label >= class_labels.len() {
                return Err(DataError::Inconsistent(format!(
                    "row {r} has unknown label index {}",
                    row.label
                )));
            }
            for (v, s) in row.values.iter().zip(&schemas) {
                if v.kind() != s.kind {
                    return Err(DataError::Inconsistent(format!(
                        "row {r}: value {v} does not match kind of `{}`",
                        s.name
                    )));
                }
            }
        }
        Ok(Self {
            schemas,
            class_name,
            class_labels,
            rows,
        })
    }

    pub fn schemas(&self) -> &[AttributeSchema] {
        &self.schemas
    }

    pub fn class_name(&self) -> &str {
        &self.class_name
    }

    pub fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n_attributes(&self) -> usize {
        self.schemas.len()
    }

    /// Indices of every row, in order.
    pub fn all_rows(&self) -> Vec<usize> {
        (0..self.rows.len()).collect()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.class_labels.iter().position(|l| l == label)
    }

    /// Class counts over a subset of rows given by index.
    pub fn class_counts(&self, rows: &[usize]) -> ClassCounts {
        let mut c = ClassCounts::zeros(self.class_labels.len());
        for &r in rows {
            c.add(self.rows[r].label);
        }
        c
    }

    /// A new dataset holding the given rows (in the given order) with the same
    /// schema and label set.
    pub fn subset(&self, rows: &[usize]) -> Dataset {
        Dataset {
            schemas: self.schemas.clone(),
            class_name: self.class_name.clone(),
            class_labels: self.class_labels.clone(),
            rows: rows.iter().map(|&r| self.rows[r].clone()).collect(),
        }
    }

    /// Serializes to the comma-separated dialect accepted by [`parse_csv`],
    /// with the class column last and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for s in &self.schemas {
            out.push_str(&s.name);
            out.push(',');
        }
        out.push_str(&self.class_name);
        out.push('\n');
        for row in &self.rows {
            for v in &row.values {
                out.push_str(&v.to_string());
                out.push(',');
            }
            out.push_str(&self.class_labels[row.label]);
            out.push('\n');
        }
        out
    }
}

fn split_fields(line: &str, line_no: usize) -> Result<Vec<&str>, DataError> {
    line.split(',')
        .enumerate()
        .map(|(i, f)| {
            if f.contains('"') {
                Err(DataError::QuotedField {
                    line: line_no,
                    column: i,
                })
            } else {
                Ok(f.trim())
            }
        })
        .collect()
}

fn parse_number(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses CSV text (header row first, comma separated, no quoting).
///
/// The selected class column is removed from the attribute list. A column is
/// numeric iff every value in it parses as a finite real number.
pub fn parse_csv(text: &str, class_column: &ClassSelector) -> Result<Dataset, DataError> {
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(DataError::EmptyInput)?;
    let header = split_fields(header, header_line)?;
    let mut seen = HashSet::new();
    for (i, name) in header.iter().enumerate() {
        if name.is_empty() {
            return Err(DataError::EmptyColumnName(i));
        }
        if !seen.insert(*name) {
            return Err(DataError::DuplicateColumn(name.to_string()));
        }
    }

    let class_idx = match class_column {
        ClassSelector::Last => header.len() - 1,
        ClassSelector::Index(i) if *i < header.len() => *i,
        ClassSelector::Index(i) => return Err(DataError::ClassColumnNotFound(i.to_string())),
        ClassSelector::Name(n) => header
            .iter()
            .position(|h| h == n)
            .ok_or_else(|| DataError::ClassColumnNotFound(n.clone()))?,
    };

    let mut raw: Vec<Vec<&str>> = Vec::new();
    for (line_no, line) in lines {
        let fields = split_fields(line, line_no)?;
        if fields.len() != header.len() {
            return Err(DataError::RaggedRow {
                line: line_no,
                expected: header.len(),
                found: fields.len(),
            });
        }
        if let Some(col) = fields.iter().position(|f| f.is_empty()) {
            return Err(DataError::MissingValue {
                line: line_no,
                column: header[col].to_string(),
            });
        }
        raw.push(fields);
    }
    if raw.is_empty() {
        return Err(DataError::NoRows);
    }

    let attr_cols: Vec<usize> = (0..header.len()).filter(|&c| c != class_idx).collect();
    let schemas: Vec<AttributeSchema> = attr_cols
        .iter()
        .map(|&c| {
            let numeric = raw.iter().all(|r| parse_number(r[c]).is_some());
            let kind = if numeric {
                AttrKind::Numeric
            } else {
                AttrKind::Categorical
            };
            AttributeSchema::new(header[c], kind)
        })
        .collect();

    let mut class_labels: Vec<String> = Vec::new();
    let mut rows = Vec::with_capacity(raw.len());
    for r in &raw {
        let label_text = r[class_idx];
        let label = match class_labels.iter().position(|l| l == label_text) {
            Some(i) => i,
            None => {
                class_labels.push(label_text.to_string());
                class_labels.len() - 1
            }
        };
        let values = attr_cols
            .iter()
            .zip(&schemas)
            .map(|(&c, s)| match s.kind {
                AttrKind::Numeric => Value::Num(parse_number(r[c]).expect("checked numeric")),
                AttrKind::Categorical => Value::Cat(r[c].to_string()),
            })
            .collect();
        rows.push(Row { values, label });
    }

    Dataset::new(schemas, header[class_idx], class_labels, rows)
}

/// Parses rows to classify against a known schema. Columns are matched to
/// the schema by header name; extra columns (such as a class column) are
/// ignored.
pub fn parse_unlabeled(
    text: &str,
    schema: &[AttributeSchema],
) -> Result<Vec<Vec<Value>>, DataError> {
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines.next().ok_or(DataError::EmptyInput)?;
    let header = split_fields(header, header_line)?;
    let columns = schema
        .iter()
        .map(|s| {
            header
                .iter()
                .position(|h| *h == s.name)
                .ok_or_else(|| DataError::Inconsistent(format!("missing column `{}`", s.name)))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows = Vec::new();
    for (line_no, line) in lines {
        let fields = split_fields(line, line_no)?;
        if fields.len() != header.len() {
            return Err(DataError::RaggedRow {
                line: line_no,
                expected: header.len(),
                found: fields.len(),
            });
        }
        let values = schema
            .iter()
            .zip(&columns)
            .map(|(s, &c)| {
                let f = fields[c];
                if f.is_empty() {
                    return Err(DataError::MissingValue {
                        line: line_no,
                        column: s.name.clone(),
                    });
                }
                match s.kind {
                    AttrKind::Categorical => Ok(Value::Cat(f.to_string())),
                    AttrKind::Numeric => parse_number(f).map(Value::Num).ok_or_else(|| {
                        DataError::Inconsistent(format!(
                            "line {line_no}: `{f}` is not a number for `{}`",
                            s.name
                        ))
                    }),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(values);
    }
    Ok(rows)
}

/// Class counts over every row of `d`.
pub fn class_distribution(d: &Dataset) -> ClassCounts {
    let mut c = ClassCounts::zeros(d.class_labels.len());
    for row in &d.rows {
        c.add(row.label);
    }
    c
}

/// Generates a seeded dataset whose classes occupy disjoint intervals on every
/// attribute, so a perfect classifier exists.
///
/// Row `i` has class `i % n_classes`. On attribute `a`, class `c` draws from
/// slot `(c + a) % n_classes`, slot `s` covering `[10s + 1, 10s + 9]`.
pub fn generate_synthetic(
    n_rows: usize,
    n_numeric_attrs: usize,
    n_classes: usize,
    seed: u64,
) -> Result<Dataset, DataError> {
    if n_rows == 0 {
        return Err(DataError::InvalidParameters("n_rows must be positive"));
    }
    if n_numeric_attrs == 0 {
        return Err(DataError::InvalidParameters(
            "n_numeric_attrs must be positive",
        ));
    }
    if n_classes < 2 {
        return Err(DataError::InvalidParameters("n_classes must be at least 2"));
    }
    if n_classes > n_rows {
        return Err(DataError::TooManyClasses);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let schemas = (0..n_numeric_attrs)
        .map(|a| AttributeSchema::new(format!("x{a}"), AttrKind::Numeric))
        .collect();
    let class_labels = (0..n_classes).map(|c| format!("class_{c}")).collect();
    let rows = (0..n_rows)
        .map(|i| {
            let label = i % n_classes;
            let values = (0..n_numeric_attrs)
                .map(|a| {
                    let slot = ((label + a) % n_classes) as f64;
                    let v: f64 = rng.gen_range(10.0 * slot + 1.0..=10.0 * slot + 9.0);
                    Value::Num((v * 100.0).round() / 100.0)
                })
                .collect();
            Row { values, label }
        })
        .collect();
    Dataset::new(schemas, "class", class_labels, rows)
}

/// The 150-row Iris dataset (4 numeric attributes, 3 classes), bundled as CSV.
pub const IRIS_CSV: &str = include_str!("../data/iris.csv");

pub fn iris_dataset() -> Dataset {
    parse_csv(IRIS_CSV, &ClassSelector::Last).expect("bundled iris parses")
}
