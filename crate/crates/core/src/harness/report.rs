use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{TreeRecord, SCHEMA_VERSION};
use crate::graph::{canonical_code, generate_path, CanonicalCode};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyExtreme {
    pub code: CanonicalCode,
    pub le: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSummary {
    pub n: usize,
    pub trees: u64,
    pub violations: u64,
    pub equality_cases: u64,
    /// Whether the path on `n` vertices is an equality case; `None` when it is
    /// not among the records.
    pub path_is_equality: Option<bool>,
    /// Smallest `m_below_avg - threshold` seen.
    pub min_margin: i64,
    /// Trees with an eigenvalue strictly between the average degree and 2.
    pub between_avg_and_2: u64,
    pub between_example: Option<CanonicalCode>,
    pub min_le: Option<EnergyExtreme>,
    pub max_le: Option<EnergyExtreme>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub trees: u64,
    pub violations: u64,
    pub orders: Vec<OrderSummary>,
}

/// Aggregates records, from any number of shards, per order.
pub fn build_report(records: &[TreeRecord]) -> Report {
    let mut by_n: BTreeMap<usize, Vec<&TreeRecord>> = BTreeMap::new();
    for r in records {
        by_n.entry(r.n).or_default().push(r);
    }
    let mut orders = Vec::new();
    for (n, mut rs) in by_n {
        rs.sort_by(|a, b| a.code.levels().cmp(b.code.levels()));
        rs.dedup_by(|a, b| a.code == b.code);
        let path = generate_path(n).ok().map(|p| canonical_code(&p));
        let mut s = OrderSummary {
            n,
            trees: rs.len() as u64,
            violations: 0,
            equality_cases: 0,
            path_is_equality: None,
            min_margin: i64::MAX,
            between_avg_and_2: 0,
            between_example: None,
            min_le: None,
            max_le: None,
        };
        let mut lo: Option<(Scalar, &TreeRecord)> = None;
        let mut hi: Option<(Scalar, &TreeRecord)> = None;
        for r in &rs {
            s.violations += r.violations.len() as u64;
            s.equality_cases += u64::from(r.equality);
            if Some(&r.code) == path.as_ref() {
                s.path_is_equality = Some(r.equality);
            }
            s.min_margin = s.min_margin.min(r.m_below_avg as i64 - r.threshold as i64);
            if r.m_between_avg_and_2 > 0 {
                s.between_avg_and_2 += 1;
                s.between_example.get_or_insert_with(|| r.code.clone());
            }
            if let Some(le) = r.le.as_deref().and_then(|v| v.parse::<Scalar>().ok()) {
                if lo.as_ref().map_or(true, |(v, _)| le < *v) {
                    lo = Some((le.clone(), r));
                }
                if hi.as_ref().map_or(true, |(v, _)| le > *v) {
                    hi = Some((le, r));
                }
            }
        }
        let extreme = |e: Option<(Scalar, &TreeRecord)>| {
            e.map(|(_, r)| EnergyExtreme { code: r.code.clone(), le: r.le.clone().unwrap_or_default() })
        };
        s.min_le = extreme(lo);
        s.max_le = extreme(hi);
        orders.push(s);
    }
    Report {
        schema_version: SCHEMA_VERSION,
        trees: orders.iter().map(|o| o.trees).sum(),
        violations: orders.iter().map(|o| o.violations).sum(),
        orders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_verify, VerifyOptions};

    #[test]
    fn report_small_range() {
        let mut o = VerifyOptions::new(3, 7);
        o.cache_dir = None;
        let mut buf = Vec::new();
        run_verify(&o, &mut buf).unwrap();
        let records: Vec<TreeRecord> =
            String::from_utf8(buf).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        let rep = build_report(&records);
        assert_eq!(rep.trees, 1 + 2 + 3 + 6 + 11);
        assert_eq!(rep.violations, 0);
        for o in &rep.orders {
            assert_eq!(o.path_is_equality, Some(true), "n = {}", o.n);
            assert!(o.min_margin >= 0);
            let star = canonical_code(&crate::graph::generate_star(o.n).unwrap());
            assert_eq!(o.max_le.as_ref().unwrap().code, star);
        }
    }
}
