use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::diagonalize::diagonalize_laplacian;
use crate::graph::{generate_diameter4, root_at};
use crate::scalar::Scalar;
use crate::spectral::average_degree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem7Row {
    pub r: usize,
    pub n: usize,
    pub internal_value: Scalar,
    pub root_value: Scalar,
    pub leaf_value: Scalar,
    pub internal_ok: bool,
    pub root_ok: bool,
    pub leaves_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem7Report {
    pub schema_version: u32,
    pub rows: Vec<Theorem7Row>,
    pub ok: bool,
}

/// `(n^2 + 2n - 4) / (n (n - 2))`.
pub fn internal_closed_form(n: usize) -> Scalar {
    let n = n as i64;
    Scalar::new(n * n + 2 * n - 4, n * (n - 2))
}

/// `-2 (n - 1)(3n - 4) / (n (n^2 + 2n - 4))`.
pub fn root_closed_form(n: usize) -> Scalar {
    let n = n as i64;
    Scalar::new(-2 * (n - 1) * (3 * n - 4), n * (n * n + 2 * n - 4))
}

/// For each `r` in `2..=r_max`, diagonalizes the Laplacian of the diameter-4
/// tree with `r` single-leaf branches and no root leaves at `x = -avg` and
/// compares every value with its closed form.
pub fn theorem7_closed_form_check(r_max: usize) -> Result<Theorem7Report, HarnessError> {
    if r_max < 2 {
        return Err(HarnessError::BadRange(format!("r_max must be at least 2, got {}", r_max)));
    }
    let mut rows = Vec::new();
    for r in 2..=r_max {
        let t = generate_diameter4(0, &vec![1; r])?;
        let n = t.order();
        let rt = root_at(&t, 0)?;
        let d = diagonalize_laplacian(&rt, &-average_degree(n));
        let internal = internal_closed_form(n);
        let root = root_closed_form(n);
        let leaf = Scalar::new(2, n as i64) - Scalar::one();
        let internal_ok = (1..=r).all(|v| d.values[v] == internal);
        let leaves_ok = (r + 1..n).all(|v| d.values[v] == leaf) && leaf < 0;
        let root_ok = d.values[0] == root && root < 0;
        rows.push(Theorem7Row {
            r,
            n,
            internal_value: d.values[1].clone(),
            root_value: d.values[0].clone(),
            leaf_value: d.values[n - 1].clone(),
            internal_ok,
            root_ok,
            leaves_ok,
        });
    }
    let ok = rows.iter().all(|w| w.internal_ok && w.root_ok && w.leaves_ok);
    Ok(Theorem7Report { schema_version: super::SCHEMA_VERSION, rows, ok })
}
