use serde::{Deserialize, Serialize};

use super::{Check, CheckSet, HarnessError};
use crate::diagonalize::MatrixKind;
use crate::graph::{CanonicalCode, Tree};
use crate::invariants::{diameter, domination_number, leaf_count};
use crate::oracle::{dense_eigs, tree_spectrum_oracle, SimpleGraph};
use crate::scalar::Scalar;
use crate::spectral::{average_degree, default_tolerance, laplacian_energy, Counter};

/// Digits after the point in the serialized Laplacian energy.
pub const LE_DIGITS: usize = 12;

/// One verified tree. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub code: CanonicalCode,
    pub n: usize,
    pub diameter: usize,
    pub leaf_count: usize,
    pub gamma: usize,
    /// Laplacian eigenvalues in `[0, avg)`.
    pub m_below_avg: usize,
    /// `ceil(n/2)`.
    pub threshold: usize,
    pub conjecture_ok: bool,
    /// Laplacian eigenvalues in `[0, 2)`.
    pub m_below_2: usize,
    /// Laplacian eigenvalues in `(2, n]`.
    pub m_above_2: usize,
    /// `m_below_avg == threshold`.
    pub equality: bool,
    /// Laplacian eigenvalues strictly between the average degree and 2.
    pub m_between_avg_and_2: usize,
    pub le: Option<String>,
    /// Names of the checks this tree fails.
    pub violations: Vec<String>,
}

/// Computes the record for `t` and runs the selected checks. Requires `n >= 2`.
pub fn evaluate(t: &Tree, checks: &CheckSet) -> Result<TreeRecord, HarnessError> {
    let n = t.order();
    if n < 2 {
        return Err(HarnessError::BadRange(format!("order {} is below 2", n)));
    }
    let code = crate::graph::canonical_code(t);
    let counter = Counter::new(t, MatrixKind::Laplacian);
    let avg = average_degree(n);
    let at_avg = counter.at(&avg);
    let at_one = counter.at(&Scalar::one());
    let at_two = counter.at(&Scalar::from_int(2));
    let diam = diameter(t);
    let gamma = domination_number(t);
    let threshold = n.div_ceil(2);
    let m_below_avg = at_avg.less;

    let mut violations = Vec::new();
    let mut fail = |c: Check| violations.push(c.name().to_string());
    if checks.contains(Check::Conjecture) && m_below_avg < threshold {
        fail(Check::Conjecture);
    }
    if checks.contains(Check::Theorem5) && at_one.less > gamma {
        fail(Check::Theorem5);
    }
    if checks.contains(Check::Below2) && at_two.less < threshold {
        fail(Check::Below2);
    }
    if checks.contains(Check::Above2Diameter) && at_two.greater < diam / 2 {
        fail(Check::Above2Diameter);
    }
    if checks.contains(Check::Theorem4) && !spectral_radius_at_least(t, n.div_ceil(gamma))? {
        fail(Check::Theorem4);
    }
    if checks.contains(Check::Theorem1) {
        let distinct = tree_spectrum_oracle(t, MatrixKind::Adjacency)?.distinct_roots();
        if distinct < diam + 1 {
            fail(Check::Theorem1);
        }
    }
    let mut le = None;
    if checks.contains(Check::Energy) {
        let tol = default_tolerance();
        let e = laplacian_energy(t, &tol)?;
        let bound = Scalar::from_int(2 * n as i64) * &tol;
        if (&e.le_direct - &e.le_sigma).abs() > bound {
            fail(Check::Energy);
        }
        le = Some(e.le_direct.to_decimal_string(LE_DIGITS));
    }

    Ok(TreeRecord {
        code,
        n,
        diameter: diam,
        leaf_count: leaf_count(t),
        gamma,
        m_below_avg,
        threshold,
        conjecture_ok: m_below_avg >= threshold,
        m_below_2: at_two.less,
        m_above_2: at_two.greater,
        equality: m_below_avg == threshold,
        m_between_avg_and_2: at_two.less - at_avg.less - at_avg.multiplicity,
        le,
        violations,
    })
}

/// Whether the largest Laplacian eigenvalue is at least `k`. Decided in
/// floating point unless within `1e-9` of `k`, where Sturm counts on the
/// exact characteristic polynomial settle it.
pub fn spectral_radius_at_least(t: &Tree, k: usize) -> Result<bool, HarnessError> {
    let g = SimpleGraph::from_tree(t);
    let eig = dense_eigs(&g.laplacian_matrix().to_f64(), 1e-14)?;
    let mu1 = eig.first().copied().unwrap_or(0.0);
    let kf = k as f64;
    if (mu1 - kf).abs() > 1e-9 {
        return Ok(mu1 > kf);
    }
    let oracle = tree_spectrum_oracle(t, MatrixKind::Laplacian)?;
    let c = oracle.counts(&num_rational::BigRational::from_integer(k.into()));
    Ok(c.greater + c.multiplicity > 0)
}
