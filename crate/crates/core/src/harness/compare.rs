use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::harness::campaign::VerificationRecord;
use crate::harness::HarnessError;
use crate::operator::Operator;

/// Families ranked at one (domain, k); larger lower bounds rank first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub domain: String,
    pub k: u64,
    pub ranking: Vec<(String, f64)>,
    pub winner: String,
}

/// How two families compare over the (domain, k) points where both have a value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dominance {
    pub a: String,
    pub b: String,
    pub a_larger: u64,
    pub b_larger: u64,
    pub ties: u64,
    /// `a` is never below `b` and strictly above somewhere.
    pub a_dominates: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub operator: Operator,
    pub rows: Vec<ComparisonRow>,
    pub dominance: Vec<Dominance>,
}

/// Column name for a record: the family id, with its parameters when it has any.
pub fn column_label(r: &VerificationRecord) -> String {
    if r.params.is_empty() {
        r.family.to_string()
    } else {
        format!("{}[{}]", r.family, r.params)
    }
}

/// Ranks the bound values of the given records per (domain, k). All records must share an operator.
pub fn compare_families(records: &[VerificationRecord]) -> Result<ComparisonTable, HarnessError> {
    let Some(first) = records.first() else {
        return Err(HarnessError::Compare("no records to compare".into()));
    };
    let operator = first.operator;
    if let Some(other) = records.iter().find(|r| r.operator != operator) {
        return Err(HarnessError::Compare(format!(
            "cannot rank {} bounds against {} bounds",
            operator, other.operator
        )));
    }
    let mut grid: BTreeMap<(String, u64), BTreeMap<String, f64>> = BTreeMap::new();
    let mut columns = BTreeSet::new();
    for r in records {
        if let Some(v) = r.bound {
            let label = column_label(r);
            columns.insert(label.clone());
            grid.entry((r.domain.clone(), r.k)).or_default().insert(label, v);
        }
    }
    let rows = grid
        .iter()
        .map(|((domain, k), values)| {
            let mut ranking: Vec<(String, f64)> = values.iter().map(|(l, &v)| (l.clone(), v)).collect();
            ranking.sort_by(|x, y| y.1.total_cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
            let winner = ranking[0].0.clone();
            ComparisonRow { domain: domain.clone(), k: *k, ranking, winner }
        })
        .collect();
    let columns: Vec<String> = columns.into_iter().collect();
    let mut dominance = Vec::new();
    for (i, a) in columns.iter().enumerate() {
        for b in &columns[i + 1..] {
            let (mut a_larger, mut b_larger, mut ties) = (0, 0, 0);
            for values in grid.values() {
                if let (Some(va), Some(vb)) = (values.get(a), values.get(b)) {
                    match va.total_cmp(vb) {
                        std::cmp::Ordering::Greater => a_larger += 1,
                        std::cmp::Ordering::Less => b_larger += 1,
                        std::cmp::Ordering::Equal => ties += 1,
                    }
                }
            }
            dominance.push(Dominance {
                a: a.clone(),
                b: b.clone(),
                a_larger,
                b_larger,
                ties,
                a_dominates: b_larger == 0 && a_larger > 0,
            });
        }
    }
    Ok(ComparisonTable { operator, rows, dominance })
}

/// Splits the records by operator and ranks each group.
pub fn compare_by_operator(records: &[VerificationRecord]) -> Result<Vec<ComparisonTable>, HarnessError> {
    [Operator::Laplace, Operator::Bilaplace]
        .into_iter()
        .map(|op| records.iter().filter(|r| r.operator == op).cloned().collect::<Vec<_>>())
        .filter(|group| !group.is_empty())
        .map(|group| compare_families(&group))
        .collect()
}
