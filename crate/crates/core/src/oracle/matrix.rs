use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntPolynomial, OracleError};
use crate::graph::Tree;

/// Undirected simple graph, used by the oracle for non-tree checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, OracleError> {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n || u == v || !seen.insert((u.min(v), u.max(v))) {
                return Err(OracleError::InvalidGraph(format!("bad edge {}-{}", u, v)));
            }
        }
        Ok(SimpleGraph { n, edges: seen.into_iter().collect() })
    }

    pub fn from_tree(t: &Tree) -> Self {
        SimpleGraph { n: t.order(), edges: t.edges() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        SimpleGraph { n, edges }
    }

    pub fn cycle(n: usize) -> Result<Self, OracleError> {
        if n < 3 {
            return Err(OracleError::InvalidGraph("a cycle needs 3 vertices".into()));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Triangle count by brute force over vertex triples.
    pub fn triangles(&self) -> usize {
        let a = self.adjacency_bits();
        let mut t = 0;
        for (i, ai) in a.iter().enumerate() {
            for j in i + 1..self.n {
                if ai[j] {
                    t += (j + 1..self.n).filter(|&k| ai[k] && a[j][k]).count();
                }
            }
        }
        t
    }

    fn adjacency_bits(&self) -> Vec<Vec<bool>> {
        let mut a = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = true;
            a[v][u] = true;
        }
        a
    }

    pub fn adjacency_matrix(&self) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, BigRational::one());
        }
        m
    }

    pub fn laplacian_matrix(&self) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(self.n);
        for &(u, v) in &self.edges {
            m.set(u, v, -BigRational::one());
        }
        for (v, d) in self.degrees().into_iter().enumerate() {
            m.set(v, v, BigRational::from_integer(BigInt::from(d)));
        }
        m
    }
}

/// Dense symmetric matrix with exact rational entries. Writes through
/// [`DenseSymMatrix::set`] keep both triangles equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSymMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl DenseSymMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseSymMatrix { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[j * self.n + i] = v.clone();
        self.entries[i * self.n + j] = v;
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_f64().unwrap_or(f64::NAN)).collect()).collect()
    }

    fn to_integer(&self) -> Result<Vec<Vec<BigInt>>, OracleError> {
        if !self.entries.iter().all(|e| e.is_integer()) {
            return Err(OracleError::NotInteger);
        }
        Ok(self
            .entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.iter().map(|e| e.to_integer()).collect())
            .collect())
    }
}

pub const MAX_EXACT_ORDER: usize = 64;
pub const MAX_FLOAT_ORDER: usize = 512;

/// `det(xI - M)` for an integer-valued matrix, by Faddeev–LeVerrier.
pub fn char_poly(m: &DenseSymMatrix) -> Result<IntPolynomial, OracleError> {
    let n = m.n();
    if n > MAX_EXACT_ORDER {
        return Err(OracleError::TooLarge { n, max: MAX_EXACT_ORDER });
    }
    let a = m.to_integer()?;
    // sparse rows of A
    let rows: Vec<Vec<(usize, BigInt)>> = a
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
        .collect();
    // c[k] is the coefficient of x^k
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // M_0 = 0; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut am = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter().enumerate() {
            for (l, v) in row {
                for j in 0..n {
                    if !mk[*l][j].is_zero() {
                        am[i][j] += v * &mk[*l][j];
                    }
                }
            }
        }
        for (i, r) in am.iter_mut().enumerate() {
            r[i] += &c[n - k + 1];
        }
        mk = am;
        let mut trace = BigInt::zero();
        for (i, row) in rows.iter().enumerate() {
            for (l, v) in row {
                trace += v * &mk[*l][i];
            }
        }
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        c[n - k] = q;
    }
    Ok(IntPolynomial::new(c))
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Number of spanning trees, as a cofactor of the Laplacian. Zero for a
/// disconnected graph.
pub fn spanning_tree_count(g: &SimpleGraph) -> Result<BigInt, OracleError> {
    let n = g.order();
    if n > MAX_EXACT_ORDER {
        return Err(OracleError::TooLarge { n, max: MAX_EXACT_ORDER });
    }
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let l = g.laplacian_matrix().to_integer()?;
    let minor: Vec<Vec<BigInt>> = l[1..].iter().map(|r| r[1..].to_vec()).collect();
    Ok(bareiss_determinant(minor))
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// descending. Converges when the off-diagonal Frobenius norm drops below
/// `tol * ||m||_F`.
pub fn dense_eigs(m: &[Vec<f64>], tol: f64) -> Result<Vec<f64>, OracleError> {
    let n = m.len();
    if n > MAX_FLOAT_ORDER {
        return Err(OracleError::TooLarge { n, max: MAX_FLOAT_ORDER });
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let norm: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let threshold = tol * norm.max(f64::MIN_POSITIVE);
    const MAX_SWEEPS: usize = 100;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
            eig.sort_by(|x, y| y.total_cmp(x));
            return Ok(eig);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (top, bottom) = a.split_at_mut(q);
                for (apk, aqk) in top[p].iter_mut().zip(bottom[0].iter_mut()) {
                    let (x, y) = (*apk, *aqk);
                    *apk = c * x - s * y;
                    *aqk = s * x + c * y;
                }
            }
        }
    }
    Err(OracleError::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Outcome of the coefficient and trace identity checks for a graph's
/// adjacency spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub n: usize,
    pub edges: usize,
    pub triangles: usize,
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub trace1: f64,
    pub trace2: f64,
    pub trace3: f64,
    pub coefficients_ok: bool,
    pub traces_ok: bool,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.coefficients_ok && self.traces_ok
    }
}

/// Checks `a1 = 0`, `a2 = -m`, `a3 = -2t` on the characteristic polynomial
/// and `sum l = 0`, `sum l^2 = 2m`, `sum l^3 = 6t` on the spectrum.
pub fn coefficient_identities(g: &SimpleGraph) -> Result<IdentityReport, OracleError> {
    let n = g.order();
    let p = char_poly(&g.adjacency_matrix())?;
    let coeff = |k: usize| if k <= n { p.coeff(n - k) } else { BigInt::zero() };
    let (a1, a2, a3) = (coeff(1), coeff(2), coeff(3));
    let m = g.size();
    let t = g.triangles();
    let eig = dense_eigs(&g.adjacency_matrix().to_f64(), 1e-14)?;
    let trace1: f64 = eig.iter().sum();
    let trace2: f64 = eig.iter().map(|l| l * l).sum();
    let trace3: f64 = eig.iter().map(|l| l * l * l).sum();
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-8 * (1.0 + y.abs());
    let coefficients_ok = a1.is_zero() && a2 == -BigInt::from(m) && a3 == -BigInt::from(2 * t);
    let traces_ok = close(trace1, 0.0) && close(trace2, 2.0 * m as f64) && close(trace3, 6.0 * t as f64);
    Ok(IdentityReport { n, edges: m, triangles: t, a1, a2, a3, trace1, trace2, trace3, coefficients_ok, traces_ok })
}

/// Laplacian characteristic polynomial of a tree.
pub fn laplacian_char_poly(t: &Tree) -> Result<IntPolynomial, OracleError> {
    char_poly(&SimpleGraph::from_tree(t).laplacian_matrix())
}

/// Adjacency characteristic polynomial of a tree.
pub fn adjacency_char_poly(t: &Tree) -> Result<IntPolynomial, OracleError> {
    char_poly(&SimpleGraph::from_tree(t).adjacency_matrix())
}

/// Product of the nonzero eigenvalues, for Matrix-Tree cross-checks.
pub fn nonzero_product(eigs: &[f64], zero_tol: f64) -> f64 {
    eigs.iter().filter(|v| v.abs() > zero_tol).product()
}

/// Whether every entry of `m` equals its transpose partner.
pub fn is_symmetric(m: &[Vec<f64>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, v)| *v == m[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_tree() -> Tree {
        Tree::from_edges(5, &[(4, 2), (4, 3), (2, 0), (2, 1)]).unwrap()
    }

    #[test]
    fn adjacency_char_poly_example_tree() {
        let p = adjacency_char_poly(&example_tree()).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[0, 2, 0, -4, 0, 1]));
    }

    #[test]
    fn cospectral_pair() {
        let star = SimpleGraph::from_tree(&crate::graph::generate_star(5).unwrap());
        let c4_plus_k1 = SimpleGraph::new(5, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let want = IntPolynomial::from_i64(&[0, 0, 0, -4, 0, 1]);
        assert_eq!(char_poly(&star.adjacency_matrix()).unwrap(), want);
        assert_eq!(char_poly(&c4_plus_k1.adjacency_matrix()).unwrap(), want);
    }

    #[test]
    fn laplacian_char_poly_p2() {
        let p = laplacian_char_poly(&crate::graph::generate_path(2).unwrap()).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[0, -2, 1]));
    }

    #[test]
    fn rejects_non_integer_matrix() {
        let mut m = DenseSymMatrix::zeros(2);
        m.set(0, 1, BigRational::new(1.into(), 2.into()));
        assert_eq!(char_poly(&m), Err(OracleError::NotInteger));
    }

    #[test]
    fn jacobi_star_and_complete() {
        let s4 = SimpleGraph::from_tree(&crate::graph::generate_star(4).unwrap());
        let e = dense_eigs(&s4.laplacian_matrix().to_f64(), 1e-14).unwrap();
        for (got, want) in e.iter().zip([4.0, 1.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-10, "{:?}", e);
        }
        let k5 = SimpleGraph::complete(5);
        let e = dense_eigs(&k5.laplacian_matrix().to_f64(), 1e-14).unwrap();
        for (got, want) in e.iter().zip([5.0, 5.0, 5.0, 5.0, 0.0]) {
            assert!((got - want).abs() < 1e-10, "{:?}", e);
        }
        let z = dense_eigs(&vec![vec![0.0; 3]; 3], 1e-14).unwrap();
        assert_eq!(z, vec![0.0; 3]);
    }

    #[test]
    fn spanning_trees() {
        assert_eq!(spanning_tree_count(&SimpleGraph::complete(4)).unwrap(), BigInt::from(16));
        assert_eq!(spanning_tree_count(&SimpleGraph::cycle(4).unwrap()).unwrap(), BigInt::from(4));
        assert_eq!(spanning_tree_count(&SimpleGraph::from_tree(&example_tree())).unwrap(), BigInt::one());
        let split = SimpleGraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(spanning_tree_count(&split).unwrap(), BigInt::zero());
        // Cayley: n^(n-2)
        assert_eq!(spanning_tree_count(&SimpleGraph::complete(7)).unwrap(), BigInt::from(16807));
    }

    #[test]
    fn identities() {
        let r = coefficient_identities(&SimpleGraph::from_tree(&example_tree())).unwrap();
        assert_eq!(r.a2, BigInt::from(-4));
        assert_eq!(r.a3, BigInt::zero());
        assert!(r.ok());
        let k3 = coefficient_identities(&SimpleGraph::complete(3)).unwrap();
        assert_eq!(k3.a3, BigInt::from(-2));
        assert_eq!(k3.triangles, 1);
        assert!(k3.ok());
    }

    #[test]
    fn graph_validation() {
        assert!(SimpleGraph::new(3, &[(0, 0)]).is_err());
        assert!(SimpleGraph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(3, &[(0, 3)]).is_err());
        assert!(SimpleGraph::cycle(2).is_err());
    }
}
