//! The tables of `⟨M, N⟩_t` and `⟨M, N⟩_1` over all indecomposable pairs,
//! each entry checked against the printed case law.
//!
//! Entries are indexed by a row module `M = X_{l,k}` and a column module
//! `N = Y_{i,j}` and hold `⟨M, N⟩`. The printed cases are transcribed
//! verbatim below, including ones that never match or that overlap; the
//! comparison reports such cells instead of repairing them.

#![allow(unused_variables, clippy::int_plus_one)]

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{EulerSeries, ResolutionStore};
use crate::error::Result;
use crate::field::Q;
use crate::quiverrep::IndecType;

type Cond = fn(usize, usize, usize, usize) -> bool;

struct Case {
    cond: &'static str,
    holds: Cond,
    t_num: &'static [i64],
    t_den: &'static [i64],
    one: (i64, i64),
}

const Z: &[i64] = &[];
const ONE: &[i64] = &[1];
const TWO: &[i64] = &[2];
const MT: &[i64] = &[0, -1];
const M2T: &[i64] = &[0, -2];
const OMT: &[i64] = &[1, -1];
const O2T: &[i64] = &[1, -2];
const TMT: &[i64] = &[2, -1];
const GEOM: &[i64] = &[1, 1];

macro_rules! case {
    ($c:expr, |$l:ident, $k:ident, $i:ident, $j:ident| $e:expr, $num:expr, $v:expr) => {
        case!($c, |$l, $k, $i, $j| $e, $num, ONE, ($v, 1))
    };
    ($c:expr, |$l:ident, $k:ident, $i:ident, $j:ident| $e:expr, $num:expr, $den:expr, $v:expr) => {
        Case {
            cond: $c,
            holds: |$l, $k, $i, $j| $e,
            t_num: $num,
            t_den: $den,
            one: $v,
        }
    };
}

const OTHER_ZERO: Case = case!("other", |l, k, i, j| true, Z, 0);

// Rows U_{l,k} with k ≤ l < n.
const U_LOW_U: &[Case] = &[
    case!("l<min{i,j}", |l, k, i, j| l < i.min(j), M2T, -2),
    case!("k<j≤l<i", |l, k, i, j| k < j && j <= l && l < i, MT, -1),
    case!("k<i≤l<j", |l, k, i, j| k < i && i <= l && l < j, MT, -1),
    case!("k<i≤j≤l", |l, k, i, j| k < i && i <= j && j <= l, Z, 0),
    case!("k<j<i≤l", |l, k, i, j| k < j && j < i && i <= l, Z, 0),
    case!("j≤k≤l<i", |l, k, i, j| j <= k && k <= l && l < i, Z, 0),
    case!("j≤k<i≤l", |l, k, i, j| j <= k && k < i && i <= l, ONE, 1),
    case!("i≤k≤l<j", |l, k, i, j| i <= k && k <= l && l < j, OMT, 0),
    case!("i≤k<j≤l", |l, k, i, j| i <= k && k < j && j <= l, ONE, 1),
    case!("max{i,j}≤k", |l, k, i, j| i.max(j) <= k, TWO, 2),
];
const U_LOW_V: &[Case] = &[
    case!("k≤l<i", |l, k, i, j| k <= l && l < i, MT, -1),
    case!("k<i≤l", |l, k, i, j| k < i && i <= l, Z, 0),
    case!("i≤k≤l", |l, k, i, j| i <= k && k <= l, ONE, 1),
];
const U_LOW_W: &[Case] = &[
    case!("k<i≤l≤j", |l, k, i, j| k < i && i <= l && l <= j, ONE, 1),
    case!("i≤k≤l≤j", |l, k, i, j| i <= k && k <= l && l <= j, TWO, 2),
    case!("i≤k≤j<l", |l, k, i, j| i <= k && k <= j && j < l, ONE, 1),
];

// Rows U_{l,k} with l < k ≤ n.
const U_UP_U: &[Case] = &[
    case!("k<min{i,j}", |l, k, i, j| k < i.min(j), M2T, -2),
    case!("l<j≤k<i", |l, k, i, j| l < j && j <= k && k < i, MT, -1),
    case!("l<i≤k<j", |l, k, i, j| l < i && i <= k && k < j, O2T, -1),
    case!("l<i≤j≤k", |l, k, i, j| l < i && i <= j && j <= k, OMT, 0),
    case!("l<j<i≤k", |l, k, i, j| l < j && j < i && i <= k, OMT, 0),
    case!("j≤l<k<i", |l, k, i, j| j <= l && l < k && k < i, Z, 0),
    case!("j≤l<i≤k", |l, k, i, j| j <= l && l < i && i <= k, ONE, 1),
    case!("i≤l<k<j", |l, k, i, j| i <= l && l < k && k < j, OMT, 0),
    case!("i≤l<j≤k", |l, k, i, j| i <= l && l < j && j <= k, TMT, 1),
    case!("max{i,j}≤l", |l, k, i, j| i.max(j) <= l, TWO, 2),
];
const U_UP_V: &[Case] = &[
    case!("l<k<i", |l, k, i, j| l < k && k < i, MT, -1),
    case!("l<i≤k", |l, k, i, j| l < i && i <= k, OMT, 0),
    case!("i≤l<k", |l, k, i, j| i <= l && l < k, ONE, 1),
];
const U_UP_W: &[Case] = &[
    case!("l<i≤k≤j", |l, k, i, j| l < i && i <= k && k <= j, ONE, 1),
    case!("i≤l<k≤j", |l, k, i, j| i <= l && l < k && k <= j, TWO, 2),
    case!("i≤l≤j<k", |l, k, i, j| i <= l && l <= j && j < k, ONE, 1),
];

// Rows U_{n,k}.
const U_TOP_U: &[Case] = &[
    case!("k<min{i,j}", |l, k, i, j| k < i.min(j), Z, 0),
    case!("j≤k<i", |l, k, i, j| j <= k && k < i, ONE, 1),
    case!("i≤k<j", |l, k, i, j| i <= k && k < j, ONE, 1),
    case!("max{i,j}≤k", |l, k, i, j| i.max(j) <= k, TWO, 2),
];
const U_TOP_V: &[Case] = &[
    case!("k<i", |l, k, i, j| k < i, Z, 0),
    case!("i≤k", |l, k, i, j| i <= k, ONE, 1),
];
const U_TOP_W: &[Case] = &[case!("i≤k≤j", |l, k, i, j| i <= k && k <= j, ONE, 1)];

// Rows V_l.
const V_U: &[Case] = &[
    case!("l<min{i,j}", |l, k, i, j| l < i.min(j), MT, -1),
    case!("j≤l<i", |l, k, i, j| j <= l && l < i, Z, 0),
    case!("i≤l<j", |l, k, i, j| i <= l && l < j, OMT, 0),
    case!("max{i,j}≤l", |l, k, i, j| i.max(j) <= l, ONE, 1),
];
const V_V: &[Case] = &[
    case!("i≤l", |l, k, i, j| i <= l, ONE, GEOM, (1, 2)),
    case!("l<i", |l, k, i, j| l < i, MT, GEOM, (-1, 2)),
];
const V_W: &[Case] = &[case!("i≤l≤j", |l, k, i, j| i <= l && l <= j, ONE, 1)];

// Rows W_{l,k} with k < n.
const W_U: &[Case] = &[
    case!("l<k+1<min{i,j}", |l, k, i, j| l < k + 1 && k + 1 < i.min(j), Z, 0),
    case!("l<j≤k+1<i", |l, k, i, j| l < j && j <= k + 1 && k + 1 < i, MT, -1),
    case!("l<i≤k+1<j", |l, k, i, j| l < i && i <= k + 1 && k + 1 < j, MT, -1),
    case!("l<i≤j≤k+1", |l, k, i, j| l < i && i <= j && j <= k + 1, M2T, -2),
    case!("l<j<i≤k+1", |l, k, i, j| l < j && j < i && i <= k + 1, M2T, -2),
    case!("j≤l<k+1<i", |l, k, i, j| j <= l && l < k + 1 && k + 1 < i, Z, 0),
    case!("j≤l<i≤k+1", |l, k, i, j| j <= l && l < i && i <= k + 1, MT, -1),
    case!("i≤l<k+1<j", |l, k, i, j| i <= l && l < k + 1 && k + 1 < j, Z, 0),
    case!("i≤l<j≤k+1", |l, k, i, j| i <= l && l < j && j <= k + 1, MT, -1),
    case!("max{i,j}≤l", |l, k, i, j| i.max(j) <= l, Z, 0),
];
const W_V: &[Case] = &[
    case!("l<k+1<i", |l, k, i, j| l < k + 1 && k + 1 < i, Z, 0),
    case!("l<i≤k+1", |l, k, i, j| l < i && i <= k + 1, MT, -1),
    case!("i≤l<k+1", |l, k, i, j| i <= l && l < k + 1, Z, 0),
];
const W_W: &[Case] = &[
    case!("i≤l≤j<k+1", |l, k, i, j| i <= l && l <= j && j < k + 1, ONE, 1),
    case!("l<i≤k+1≤j", |l, k, i, j| l < i && i <= k + 1 && k + 1 <= j, MT, -1),
    case!("i≤l<k+1≤j", |l, k, i, j| i <= l && l < k + 1 && k + 1 <= j, Z, 0),
];

/// The block of cases for a cell, whether it has an "other" fallback, and
/// the index pairs `(l, k)`, `(i, j)`.
fn block(n: usize, row: IndecType, col: IndecType) -> (&'static [Case], bool, (usize, usize), (usize, usize)) {
    use IndecType::*;
    let (rl, rk) = match row {
        U(l, k) | W(l, k) => (l, k),
        V(l) => (l, l),
    };
    let (ci, cj) = match col {
        U(i, j) | W(i, j) => (i, j),
        V(i) => (i, i),
    };
    let (cases, other) = match (row, col) {
        (U(l, k), U(..)) if k <= l && l < n => (U_LOW_U, false),
        (U(l, k), V(_)) if k <= l && l < n => (U_LOW_V, false),
        (U(l, k), W(..)) if k <= l && l < n => (U_LOW_W, true),
        (U(l, k), U(..)) if l < k => (U_UP_U, false),
        (U(l, k), V(_)) if l < k => (U_UP_V, false),
        (U(l, k), W(..)) if l < k => (U_UP_W, true),
        (U(..), U(..)) => (U_TOP_U, false),
        (U(..), V(_)) => (U_TOP_V, false),
        (U(..), W(..)) => (U_TOP_W, true),
        (V(_), U(..)) => (V_U, false),
        (V(_), V(_)) => (V_V, false),
        (V(_), W(..)) => (V_W, true),
        (W(..), U(..)) => (W_U, false),
        (W(..), V(_)) => (W_V, false),
        (W(..), W(..)) => (W_W, true),
    };
    (cases, other, (rl, rk), (ci, cj))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedCase {
    pub condition: &'static str,
    pub series: EulerSeries,
    pub value: Q,
}

impl From<&Case> for PrintedCase {
    fn from(c: &Case) -> Self {
        PrintedCase {
            condition: c.cond,
            series: EulerSeries::rational(c.t_num, c.t_den),
            value: Q::new(c.one.0 as i128, c.one.1 as i128),
        }
    }
}

/// Printed cases whose condition holds for `⟨row, col⟩`; the "other" case
/// only when nothing else matches. Empty when the case law has a gap.
pub fn printed_cases(n: usize, row: IndecType, col: IndecType) -> Vec<PrintedCase> {
    let (cases, other, (l, k), (i, j)) = block(n, row, col);
    let hits: Vec<PrintedCase> = cases
        .iter()
        .filter(|c| (c.holds)(l, k, i, j))
        .map(PrintedCase::from)
        .collect();
    if hits.is_empty() && other {
        vec![PrintedCase::from(&OTHER_ZERO)]
    } else {
        hits
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    /// `⟨M, N⟩_t`.
    Series,
    /// `⟨M, N⟩_1`.
    AtOne,
}

impl TableKind {
    pub fn number(self) -> u8 {
        match self {
            TableKind::Series => 1,
            TableKind::AtOne => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    Agrees,
    Mismatch,
    Uncovered,
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub row: IndecType,
    pub col: IndecType,
    pub series: EulerSeries,
    pub value_at_1: Q,
    pub status: FindingKind,
    /// Whether the printed cell would agree with `⟨col, row⟩` instead.
    pub agrees_transposed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub table: u8,
    pub row: IndecType,
    pub col: IndecType,
    pub kind: FindingKind,
    pub printed: Vec<String>,
    pub computed: String,
    /// `dim Ext^p(row, col)` for small `p`.
    pub ext_dims: Vec<usize>,
    pub computed_transposed: String,
}

/// Serialized form of one cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub col_type: String,
    pub row_type: String,
    pub numerator_coeffs: Vec<i64>,
    pub denominator_coeffs: Vec<i64>,
    pub value_at_1_num: i64,
    pub value_at_1_den: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub kind: TableKind,
    pub n: usize,
    pub types: Vec<IndecType>,
    pub entries: Vec<TableEntry>,
    pub findings: Vec<Finding>,
}

const WITNESS_DEGREES: usize = 6;

fn classify(kind: TableKind, printed: &[PrintedCase], series: &EulerSeries, value: &Q) -> FindingKind {
    if printed.is_empty() {
        return FindingKind::Uncovered;
    }
    let agrees = |c: &PrintedCase| match kind {
        TableKind::Series => c.series == *series,
        TableKind::AtOne => c.value == *value,
    };
    let distinct = match kind {
        TableKind::Series => printed.iter().any(|c| c.series != printed[0].series),
        TableKind::AtOne => printed.iter().any(|c| c.value != printed[0].value),
    };
    if distinct {
        FindingKind::Ambiguous
    } else if agrees(&printed[0]) {
        FindingKind::Agrees
    } else {
        FindingKind::Mismatch
    }
}

pub fn generate_table(kind: TableKind, store: &ResolutionStore) -> Result<Table> {
    let n = store.rank();
    let types: Vec<IndecType> = store.types().collect();
    let pairs: Vec<(IndecType, IndecType)> = types
        .iter()
        .flat_map(|&r| types.iter().map(move |&c| (r, c)))
        .collect();
    let cells: Vec<(TableEntry, Option<Finding>)> = pairs
        .par_iter()
        .map(|&(row, col)| -> Result<_> {
            let series = store.euler_series(row, col)?;
            let value = store.euler_at_one(row, col)?;
            let back = store.euler_series(col, row)?;
            let back_value = store.euler_at_one(col, row)?;
            let printed = printed_cases(n, row, col);
            let status = classify(kind, &printed, &series, &value);
            let agrees_transposed = classify(kind, &printed, &back, &back_value) == FindingKind::Agrees;
            let show = |s: &EulerSeries, v: &Q| match kind {
                TableKind::Series => s.to_string(),
                TableKind::AtOne => v.to_string(),
            };
            let finding = (status != FindingKind::Agrees)
                .then(|| -> Result<Finding> {
                    Ok(Finding {
                        table: kind.number(),
                        row,
                        col,
                        kind: status,
                        printed: printed
                            .iter()
                            .map(|c| format!("{}: {}", c.condition, show(&c.series, &c.value)))
                            .collect(),
                        computed: show(&series, &value),
                        ext_dims: store.ext_dims(row, col, WITNESS_DEGREES)?,
                        computed_transposed: show(&back, &back_value),
                    })
                })
                .transpose()?;
            Ok((
                TableEntry {
                    row,
                    col,
                    series,
                    value_at_1: value,
                    status,
                    agrees_transposed,
                },
                finding,
            ))
        })
        .collect::<Result<_>>()?;
    let (entries, findings): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
    Ok(Table {
        kind,
        n,
        types,
        entries,
        findings: findings.into_iter().flatten().collect(),
    })
}

impl Table {
    pub fn entry(&self, row: IndecType, col: IndecType) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.row == row && e.col == col)
    }

    pub fn agreements(&self) -> usize {
        self.entries.iter().filter(|e| e.status == FindingKind::Agrees).count()
    }

    pub fn agreements_transposed(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees_transposed).count()
    }

    pub fn rows(&self) -> Vec<TableRow> {
        self.entries
            .iter()
            .map(|e| TableRow {
                col_type: e.col.to_string(),
                row_type: e.row.to_string(),
                numerator_coeffs: e.series.numerator.clone(),
                denominator_coeffs: e.series.denominator.clone(),
                value_at_1_num: e.value_at_1.numer() as i64,
                value_at_1_den: e.value_at_1.denom() as i64,
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let join = |c: &[i64]| c.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "table",
            "row_type",
            "col_type",
            "numerator_coeffs",
            "denominator_coeffs",
            "value_at_1",
            "status",
        ])
        .expect("in-memory write");
        for e in &self.entries {
            w.write_record([
                self.kind.number().to_string(),
                e.row.to_string(),
                e.col.to_string(),
                join(&e.series.numerator),
                join(&e.series.denominator),
                e.value_at_1.to_string(),
                format!("{:?}", e.status).to_lowercase(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    /// One `tabular` with rows `M`, columns `N` and cells `⟨M, N⟩`.
    pub fn to_latex(&self) -> String {
        let label = |t: &IndecType| match t {
            IndecType::U(a, b) => format!("$U_{{{a},{b}}}$"),
            IndecType::V(a) => format!("$V_{{{a}}}$"),
            IndecType::W(a, b) => format!("$W_{{{a},{b}}}$"),
        };
        let mut s = String::new();
        let _ = writeln!(s, "\\begin{{tabular}}{{|c|{}}}", "c|".repeat(self.types.len()));
        s.push_str("\\hline\n");
        let header: Vec<String> = self.types.iter().map(label).collect();
        let _ = writeln!(s, " & {} \\\\ \\hline", header.join(" & "));
        for (r, row) in self.types.iter().enumerate() {
            let cells: Vec<String> = self.entries[r * self.types.len()..(r + 1) * self.types.len()]
                .iter()
                .map(|e| match self.kind {
                    TableKind::Series => format!("${}$", e.series.to_latex()),
                    TableKind::AtOne => {
                        if e.value_at_1.is_integer() {
                            format!("${}$", e.value_at_1)
                        } else {
                            format!("$\\frac{{{}}}{{{}}}$", e.value_at_1.numer(), e.value_at_1.denom())
                        }
                    }
                })
                .collect();
            let _ = writeln!(s, "{} & {} \\\\ \\hline", label(row), cells.join(" & "));
        }
        s.push_str("\\end{tabular}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::all_indecomposables;
    use IndecType::*;

    #[test]
    fn printed_series_and_values_are_consistent() {
        for n in 1..=6 {
            for r in all_indecomposables(n) {
                for c in all_indecomposables(n) {
                    for case in printed_cases(n, r, c) {
                        assert_eq!(case.series.value_at_one(), Some(case.value.clone()), "{r} {c} {}", case.condition);
                    }
                }
            }
        }
    }

    #[test]
    fn printed_examples() {
        let cases = printed_cases(3, W(1, 1), U(2, 3));
        assert_eq!(cases.len(), 1);
        assert_eq!(cases[0].series, EulerSeries::polynomial(&[0, -1]));
        let cases = printed_cases(3, V(2), V(1));
        assert_eq!(cases[0].series.to_string(), "1/(1+t)");
        assert_eq!(cases[0].value, Q::new(1, 2));
    }

    #[test]
    fn computed_table_examples() {
        let st = ResolutionStore::new(3).unwrap();
        let t1 = generate_table(TableKind::Series, &st).unwrap();
        assert_eq!(t1.entries.len(), 225);
        let e = t1.entry(W(1, 1), U(2, 3)).unwrap();
        assert_eq!(e.series, EulerSeries::polynomial(&[0, -1]));
        let t2 = generate_table(TableKind::AtOne, &st).unwrap();
        assert_eq!(t2.entry(V(3), V(1)).unwrap().value_at_1, Q::new(1, 2));
        assert!(t2.to_latex().contains("\\frac{1}{2}"));
        assert_eq!(t1.rows().len(), 225);
    }
}
