use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::OracleError;

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of every coefficient.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive();
        if p.leading().is_some_and(Signed::is_negative) {
            -p
        } else {
            p
        }
    }

    /// Sign of `p(x)` for rational `x`, evaluated without fractions.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let (num, den) = (x.numer(), x.denom());
        // sum c_i num^i den^(d-i); den > 0 so the sign matches p(x)
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for i in (0..=d).rev() {
            acc = acc * num + &self.coeffs[i] * &den_pow;
            den_pow *= den;
        }
        match acc.sign() {
            BigSign::Minus => -1,
            BigSign::NoSign => 0,
            BigSign::Plus => 1,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Pseudo-remainder scaled by `|lc(b)|^(deg a - deg b + 1)`, so that the
    /// result is a positive multiple of the true remainder.
    fn positive_prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("divisor is nonzero");
        let Some(da) = self.degree() else { return Self::zero() };
        if da < db {
            return self.clone();
        }
        let lc = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = 0;
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &lr * bc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps += 1;
        }
        let exp = (da - db + 1) as u32;
        let extra = exp - steps;
        if extra > 0 {
            let f = num_traits::pow(lc.clone(), extra as usize);
            for c in r.iter_mut() {
                *c *= &f;
            }
        }
        let mut out = Self::new(r);
        if lc.is_negative() && exp % 2 == 1 {
            out = -out;
        }
        out
    }

    /// Exact quotient up to a positive scalar; `None` if `b` does not divide
    /// `self` over the rationals.
    pub fn divide_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let Some(da) = self.degree() else { return Some(Self::zero()) };
        if da < db {
            return None;
        }
        let lc = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        // Scale the dividend once so every quotient coefficient is integral.
        let scale = num_traits::pow(lc.abs(), da - db + 1);
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for k in (0..=da - db).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &qk * bc;
            }
            q[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q).primitive())
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_prem(&b).primitive();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// Largest square-free divisor (one factor per distinct root).
    pub fn square_free_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divide_exact(&g).expect("gcd divides").normalized()
    }

    /// Factors `self = c * prod f_k^k` with each `f_k` square-free and
    /// pairwise coprime. Returns `(f_k, k)` for nonconstant `f_k`.
    pub fn square_free_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        // f_1 = p, f_{k+1} = gcd(f_k, f_k'); roots of f_k/f_{k+1} are those of
        // multiplicity >= k, so consecutive quotients isolate multiplicity k.
        let mut layers = Vec::new();
        let mut f = self.normalized();
        while f.degree().unwrap_or(0) > 0 {
            let next = f.gcd(&f.derivative());
            layers.push(f.divide_exact(&next).expect("gcd divides").normalized());
            f = next;
        }
        let mut out = Vec::new();
        for k in 0..layers.len() {
            let exact = match layers.get(k + 1) {
                Some(next) => layers[k].divide_exact(next).expect("nested layers divide").normalized(),
                None => layers[k].clone(),
            };
            if exact.degree().unwrap_or(0) > 0 {
                out.push((exact, k + 1));
            }
        }
        out
    }

    /// Integer `B` with every complex root strictly inside `|z| < B`.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.leading().map(|c| c.abs()).unwrap_or_else(BigInt::one);
        let max = self.coeffs.iter().rev().skip(1).map(|c| c.abs()).max().unwrap_or_default();
        BigInt::one() + max.div_ceil(&lc) + BigInt::one()
    }
}

impl std::ops::Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{}x", mag)?,
                (_, true) => write!(f, "x^{}", i)?,
                (_, false) => write!(f, "{}x^{}", mag, i)?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Result<Self, OracleError> {
        if p.is_zero() {
            return Err(OracleError::DegeneratePolynomial);
        }
        let mut chain = vec![p.primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let k = chain.len();
            let r = chain[k - 2].positive_prem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-r).primitive());
        }
        Ok(SturmChain { chain })
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in `(a, b]` of the chain's polynomial.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.chain[0]
    }
}

/// Distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> Result<usize, OracleError> {
    if a >= b {
        return Err(OracleError::BadInterval);
    }
    if p.degree().is_none() {
        return Err(OracleError::DegeneratePolynomial);
    }
    let sf = p.square_free_part();
    Ok(SturmChain::new(&sf)?.count(a, b))
}

/// Root counts of a real-rooted polynomial relative to a threshold,
/// with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootCounts {
    pub greater: usize,
    pub less: usize,
    pub multiplicity: usize,
}

/// Square-free factors with their Sturm chains, reusable across many
/// thresholds.
#[derive(Clone, Debug)]
pub struct SpectrumOracle {
    factors: Vec<(SturmChain, usize)>,
    lower: BigRational,
    upper: BigRational,
    degree: usize,
}

impl SpectrumOracle {
    pub fn new(p: &IntPolynomial) -> Result<Self, OracleError> {
        let degree = p.degree().ok_or(OracleError::DegeneratePolynomial)?;
        let mut b = BigInt::one();
        while b < p.root_bound() {
            b <<= 1;
        }
        let factors = p
            .square_free_decomposition()
            .into_iter()
            .map(|(f, k)| SturmChain::new(&f).map(|c| (c, k)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpectrumOracle {
            factors,
            lower: BigRational::from_integer(-b.clone()),
            upper: BigRational::from_integer(b),
            degree,
        })
    }

    pub fn counts(&self, alpha: &BigRational) -> RootCounts {
        let mut c = RootCounts { greater: 0, less: 0, multiplicity: 0 };
        for (chain, k) in &self.factors {
            let at = usize::from(chain.polynomial().sign_at(alpha) == 0);
            let up_to = if alpha <= &self.lower { 0 } else { chain.count(&self.lower, alpha) };
            let above = if alpha >= &self.upper { 0 } else { chain.count(alpha, &self.upper) };
            c.less += k * (up_to - at);
            c.multiplicity += k * at;
            c.greater += k * above;
        }
        c
    }

    /// Number of distinct roots.
    pub fn distinct_roots(&self) -> usize {
        self.factors.iter().map(|(c, _)| c.polynomial().degree().unwrap_or(0)).sum()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Isolates every distinct real root to width `tol`; returns
    /// `(lo, hi, multiplicity)` triples sorted ascending. `lo == hi` marks an
    /// exact rational root.
    pub fn isolate(&self, tol: &BigRational) -> Vec<(BigRational, BigRational, usize)> {
        let mut out = Vec::new();
        for (chain, k) in &self.factors {
            let mut stack = vec![(self.lower.clone(), self.upper.clone())];
            while let Some((a, b)) = stack.pop() {
                let c = chain.count(&a, &b);
                if c == 0 {
                    continue;
                }
                if c == 1 {
                    if chain.polynomial().sign_at(&b) == 0 {
                        out.push((b.clone(), b, *k));
                        continue;
                    }
                    if &b - &a <= *tol {
                        out.push((a, b, *k));
                        continue;
                    }
                }
                let mid = (&a + &b) / BigInt::from(2);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sign_at_rationals() {
        // x^2 - 2x
        let p = IntPolynomial::from_i64(&[0, -2, 1]);
        assert_eq!(p.sign_at(&q(0, 1)), 0);
        assert_eq!(p.sign_at(&q(1, 1)), -1);
        assert_eq!(p.sign_at(&q(5, 2)), 1);
        assert_eq!(p.sign_at(&q(-1, 3)), 1);
        // 3x - 1 at 1/3
        assert_eq!(IntPolynomial::from_i64(&[-1, 3]).sign_at(&q(1, 3)), 0);
    }

    #[test]
    fn sturm_simple() {
        let p = IntPolynomial::from_i64(&[0, -2, 1]);
        assert_eq!(sturm_count(&p, &q(-1, 1), &q(1, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(-1, 1), &q(2, 1)).unwrap(), 2);
        assert_eq!(sturm_count(&p, &q(0, 1), &q(2, 1)).unwrap(), 1);
        assert!(sturm_count(&p, &q(1, 1), &q(1, 1)).is_err());
        assert!(sturm_count(&IntPolynomial::zero(), &q(0, 1), &q(1, 1)).is_err());
    }

    #[test]
    fn adjacency_poly_of_five_vertex_tree() {
        // x^5 - 4x^3 + 2x, roots 0, +-sqrt(2 +- sqrt 2), all inside (-2, 2)
        let p = IntPolynomial::from_i64(&[0, 2, 0, -4, 0, 1]);
        assert_eq!(sturm_count(&p, &q(-3, 1), &q(3, 1)).unwrap(), 5);
        assert_eq!(sturm_count(&p, &q(-2, 1), &q(2, 1)).unwrap(), 5);
        assert_eq!(sturm_count(&p, &q(0, 1), &q(3, 1)).unwrap(), 2);
    }

    #[test]
    fn square_free_decomposition_star() {
        // Laplacian of S_4: x (x-1)^2 (x-4) = x^4 - 6x^3 + 9x^2 - 4x
        let p = IntPolynomial::from_i64(&[0, -4, 9, -6, 1]);
        let dec = p.square_free_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (IntPolynomial::from_i64(&[0, -4, 1]), 1));
        assert_eq!(dec[1], (IntPolynomial::from_i64(&[-1, 1]), 2));
        let o = SpectrumOracle::new(&p).unwrap();
        assert_eq!(o.distinct_roots(), 3);
        let c = o.counts(&q(1, 1));
        assert_eq!((c.greater, c.less, c.multiplicity), (1, 1, 2));
        let c = o.counts(&q(3, 2));
        assert_eq!((c.greater, c.less, c.multiplicity), (1, 3, 0));
        let c = o.counts(&q(-100, 1));
        assert_eq!((c.greater, c.less, c.multiplicity), (4, 0, 0));
    }

    #[test]
    fn gcd_and_division() {
        // (x-1)^2 (x+2) and (x-1)(x+3)
        let a = IntPolynomial::from_i64(&[2, -3, 0, 1]);
        let b = IntPolynomial::from_i64(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(a.divide_exact(&IntPolynomial::from_i64(&[-1, 1])), Some(IntPolynomial::from_i64(&[-2, 1, 1])));
        assert_eq!(a.divide_exact(&IntPolynomial::from_i64(&[5, 1])), None);
        // non-monic divisor: (2x - 1)(x + 1) / (2x - 1)
        let c = IntPolynomial::from_i64(&[-1, 1, 2]);
        assert_eq!(c.divide_exact(&IntPolynomial::from_i64(&[-1, 2])), Some(IntPolynomial::from_i64(&[1, 1])));
    }

    #[test]
    fn isolate_roots() {
        let p = IntPolynomial::from_i64(&[0, -4, 9, -6, 1]);
        let o = SpectrumOracle::new(&p).unwrap();
        let roots = o.isolate(&q(1, 1 << 20));
        let exact: Vec<_> = roots.iter().map(|(a, b, k)| (a == b, a.clone(), *k)).collect();
        assert_eq!(exact, vec![(true, q(0, 1), 1), (true, q(1, 1), 2), (true, q(4, 1), 1)]);
        // x^2 - 2
        let r2 = SpectrumOracle::new(&IntPolynomial::from_i64(&[-2, 0, 1])).unwrap().isolate(&q(1, 1 << 30));
        assert_eq!(r2.len(), 2);
        let hi = &r2[1];
        let mid = num_traits::ToPrimitive::to_f64(&((&hi.0 + &hi.1) / BigInt::from(2))).unwrap();
        assert!((mid - 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64(&[0, 2, 0, -4, 0, 1]).to_string(), "x^5 - 4x^3 + 2x");
        assert_eq!(IntPolynomial::from_i64(&[-1]).to_string(), "-1");
    }
}
