//! Eigenvalue counting in intervals, bisection localization and Laplacian
//! energy, all driven by exact inertia counts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagonalize::{count_rooted, Inertia, MatrixKind};
use crate::graph::{root_at, RootedTree, Tree};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("interval bounds out of order: {a} > {b}")]
    BadInterval { a: Box<Scalar>, b: Box<Scalar> },
    #[error("order {n} is below the minimum of 2")]
    OrderTooSmall { n: usize },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(Box<Scalar>),
}

/// Number of eigenvalues in the half-open interval `[a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalCount {
    pub a: Scalar,
    pub b: Scalar,
    pub count: usize,
    pub matrix_kind: MatrixKind,
}

/// Bracket holding `multiplicity` eigenvalues: the closed point `[lo, lo]`
/// when `exact`, otherwise the open interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedEigenvalue {
    pub lo: Scalar,
    pub hi: Scalar,
    pub multiplicity: usize,
    pub exact: bool,
}

impl LocalizedEigenvalue {
    pub fn midpoint(&self) -> Scalar {
        self.lo.midpoint(&self.hi)
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyReport {
    /// `sum |mu_i - avg|` over bracket midpoints.
    pub le_direct: Scalar,
    /// `2 * sum_{i <= sigma} mu_i - 2 * sigma * avg`.
    pub le_sigma: Scalar,
    /// Number of eigenvalues at least the average degree.
    pub sigma: usize,
    pub avg_degree: Scalar,
    pub tolerance: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCheck {
    pub holds: bool,
    pub m: usize,
    pub threshold: usize,
}

/// Default localization tolerance, `2^-40`.
pub fn default_tolerance() -> Scalar {
    Scalar::from_bigs(1.into(), num_bigint::BigInt::from(1u64 << 40))
}

/// Average degree `2 - 2/n` of a tree on `n` vertices.
pub fn average_degree(n: usize) -> Scalar {
    Scalar::from_int(2) - Scalar::new(2, n as i64)
}

/// Wraps a rooted tree to answer repeated counting queries without
/// re-rooting.
pub struct Counter<'t> {
    rooted: RootedTree<'t>,
    kind: MatrixKind,
}

impl<'t> Counter<'t> {
    pub fn new(t: &'t Tree, kind: MatrixKind) -> Self {
        Counter { rooted: root_at(t, 0).expect("vertex 0 exists"), kind }
    }

    pub fn at(&self, alpha: &Scalar) -> Inertia {
        count_rooted(&self.rooted, self.kind, alpha)
    }

    pub fn n(&self) -> usize {
        self.rooted.len()
    }
}

/// `m[a, b)`: eigenvalues `mu` with `a <= mu < b`, as `less(b) - less(a)`.
pub fn m_interval(t: &Tree, a: &Scalar, b: &Scalar, kind: MatrixKind) -> Result<IntervalCount, SpectralError> {
    if a > b {
        return Err(SpectralError::BadInterval { a: Box::new(a.clone()), b: Box::new(b.clone()) });
    }
    let c = Counter::new(t, kind);
    let count = c.at(b).less - c.at(a).less;
    Ok(IntervalCount { a: a.clone(), b: b.clone(), count, matrix_kind: kind })
}

/// Laplacian eigenvalues in `[0, 2 - 2/n)`.
pub fn m_below_average(t: &Tree) -> Result<usize, SpectralError> {
    let n = t.order();
    if n < 2 {
        return Err(SpectralError::OrderTooSmall { n });
    }
    // Laplacian spectra are nonnegative, so less(0) = 0.
    Ok(Counter::new(t, MatrixKind::Laplacian).at(&average_degree(n)).less)
}

/// Whether at least `ceil(n/2)` Laplacian eigenvalues lie below the average
/// degree.
pub fn check_conjecture(t: &Tree) -> Result<ConjectureCheck, SpectralError> {
    let m = m_below_average(t)?;
    let threshold = t.order().div_ceil(2);
    Ok(ConjectureCheck { holds: m >= threshold, m, threshold })
}

#[derive(Clone)]
struct Probe {
    at: Scalar,
    less: usize,
    zero: usize,
}

/// Brackets every Laplacian eigenvalue to width `tol` by bisection on exact
/// counts. The search starts on `[0, 2^k]` with `2^k >= n`, so every probe
/// is dyadic and integer eigenvalues are hit exactly.
pub fn localize_laplacian(t: &Tree, tol: &Scalar) -> Result<Vec<LocalizedEigenvalue>, SpectralError> {
    if tol.sign() != crate::scalar::Sign::Positive {
        return Err(SpectralError::BadTolerance(Box::new(tol.clone())));
    }
    let counter = Counter::new(t, MatrixKind::Laplacian);
    let n = t.order();
    let probe = |at: Scalar| {
        let i = counter.at(&at);
        Probe { at, less: i.less, zero: i.multiplicity }
    };
    let lo = probe(Scalar::zero());
    let hi = probe(Scalar::from_int(n.next_power_of_two() as i64));

    let mut out = Vec::new();
    if lo.zero > 0 {
        out.push(exact(&lo));
    }
    let inside = hi.less - lo.less - lo.zero;
    bisect(&probe, lo, hi.clone(), inside, tol, &mut out);
    if hi.zero > 0 {
        out.push(exact(&hi));
    }
    Ok(out)
}

fn exact(p: &Probe) -> LocalizedEigenvalue {
    LocalizedEigenvalue { lo: p.at.clone(), hi: p.at.clone(), multiplicity: p.zero, exact: true }
}

/// Emits brackets for the `inside` eigenvalues strictly between `lo.at` and
/// `hi.at`, in ascending order.
fn bisect<F: Fn(Scalar) -> Probe>(
    probe: &F,
    lo: Probe,
    hi: Probe,
    inside: usize,
    tol: &Scalar,
    out: &mut Vec<LocalizedEigenvalue>,
) {
    if inside == 0 {
        return;
    }
    if &(&hi.at - &lo.at) <= tol {
        out.push(LocalizedEigenvalue { lo: lo.at, hi: hi.at, multiplicity: inside, exact: false });
        return;
    }
    let mid = probe(lo.at.midpoint(&hi.at));
    let left = mid.less - lo.less - lo.zero;
    let right = inside - left - mid.zero;
    bisect(probe, lo, mid.clone(), left, tol, out);
    if mid.zero > 0 {
        out.push(exact(&mid));
    }
    bisect(probe, mid, hi, right, tol, out);
}

/// Laplacian energy from localized eigenvalues, computed two ways.
pub fn laplacian_energy(t: &Tree, tol: &Scalar) -> Result<EnergyReport, SpectralError> {
    let n = t.order();
    let brackets = localize_laplacian(t, tol)?;
    let avg = average_degree(n);
    // spectrum, descending, one entry per eigenvalue
    let mut mids: Vec<Scalar> = Vec::with_capacity(n);
    for b in brackets.iter().rev() {
        let m = b.midpoint();
        for _ in 0..b.multiplicity {
            mids.push(m.clone());
        }
    }
    let at_avg = Counter::new(t, MatrixKind::Laplacian).at(&avg);
    let sigma = at_avg.greater + at_avg.multiplicity;

    let mut le_direct = Scalar::zero();
    for m in &mids {
        le_direct += &(m - &avg).abs();
    }
    let mut top = Scalar::zero();
    for m in mids.iter().take(sigma) {
        top += m;
    }
    let two = Scalar::from_int(2);
    let le_sigma = &two * &top - &two * &Scalar::from_int(sigma as i64) * &avg;
    Ok(EnergyReport { le_direct, le_sigma, sigma, avg_degree: avg, tolerance: tol.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_path, generate_star};

    fn example_tree() -> Tree {
        Tree::from_edges(5, &[(4, 2), (4, 3), (2, 0), (2, 1)]).unwrap()
    }

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    #[test]
    fn interval_counts() {
        let t = example_tree();
        let l = MatrixKind::Laplacian;
        assert_eq!(m_interval(&t, &s("0"), &s("8/5"), l).unwrap().count, 3);
        assert_eq!(m_interval(&t, &s("0"), &s("6"), l).unwrap().count, 5);
        let p4 = generate_path(4).unwrap();
        assert_eq!(m_interval(&p4, &s("0"), &s("2"), l).unwrap().count, 2);
        assert!(matches!(m_interval(&t, &s("2"), &s("1"), l), Err(SpectralError::BadInterval { .. })));
    }

    #[test]
    fn below_average_examples() {
        assert_eq!(m_below_average(&generate_path(2).unwrap()).unwrap(), 1);
        assert_eq!(m_below_average(&example_tree()).unwrap(), 3);
        assert_eq!(m_below_average(&generate_star(5).unwrap()).unwrap(), 4);
        assert!(matches!(m_below_average(&Tree::single_vertex()), Err(SpectralError::OrderTooSmall { n: 1 })));
    }

    #[test]
    fn conjecture_on_example_tree() {
        let c = check_conjecture(&example_tree()).unwrap();
        assert_eq!(c, ConjectureCheck { holds: true, m: 3, threshold: 3 });
    }

    #[test]
    fn localize_star() {
        let t = generate_star(4).unwrap();
        let b = localize_laplacian(&t, &s("1/1024")).unwrap();
        let summary: Vec<_> = b.iter().map(|e| (e.lo.clone(), e.multiplicity, e.exact)).collect();
        assert_eq!(summary, vec![(s("0"), 1, true), (s("1"), 2, true), (s("4"), 1, true)]);
    }

    #[test]
    fn localize_hits_one_on_example_tree() {
        let b = localize_laplacian(&example_tree(), &s("1/4096")).unwrap();
        let one: Vec<_> = b.iter().filter(|e| e.exact && e.lo == 1).collect();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].multiplicity, 1);
        assert_eq!(b.iter().map(|e| e.multiplicity).sum::<usize>(), 5);
        for e in b.iter().filter(|e| !e.exact) {
            assert!(e.width() <= s("1/4096"));
            assert!(e.lo.is_dyadic() && e.hi.is_dyadic());
        }
    }

    #[test]
    fn localize_single_edge_and_vertex() {
        let b = localize_laplacian(&generate_path(2).unwrap(), &s("1/8")).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|e| e.exact));
        assert_eq!((b[0].lo.clone(), b[1].lo.clone()), (s("0"), s("2")));
        let single = localize_laplacian(&Tree::single_vertex(), &s("1/8")).unwrap();
        assert_eq!(single.len(), 1);
        assert!(localize_laplacian(&example_tree(), &s("0")).is_err());
    }

    #[test]
    fn energy_exact_cases() {
        let tol = default_tolerance();
        let p2 = laplacian_energy(&generate_path(2).unwrap(), &tol).unwrap();
        assert_eq!(p2.le_direct, s("2"));
        assert_eq!(p2.le_sigma, s("2"));
        assert_eq!(p2.sigma, 1);
        let s4 = laplacian_energy(&generate_star(4).unwrap(), &tol).unwrap();
        assert_eq!(s4.le_direct, s("5"));
        assert_eq!(s4.le_sigma, s("5"));
    }

    #[test]
    fn average_degree_values() {
        assert_eq!(average_degree(5), s("8/5"));
        assert_eq!(average_degree(2), s("1"));
    }
}
