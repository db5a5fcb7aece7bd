//! Monic orthogonal polynomials from a moment sequence.
//!
//! Two independent routes: the determinant (Hankel) representation, used as
//! the exact oracle, and the Chebyshev moment algorithm producing
//! three-term recurrence coefficients for the Jacobi-matrix path.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Degree limits and the float near-singularity threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub exact_degree_cap: usize,
    pub float_degree_cap: usize,
    /// A float Hankel pivot below this fraction of its diagonal entry is
    /// treated as singular.
    pub near_singular: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            exact_degree_cap: 12,
            float_degree_cap: 30,
            near_singular: 1e-12,
        }
    }
}

impl EngineConfig {
    pub fn check_degree<S: Scalar>(&self, n: usize) -> Result<()> {
        let (cap, mode) = if S::EXACT {
            (self.exact_degree_cap, "exact")
        } else {
            (self.float_degree_cap, "float")
        };
        if n > cap {
            return Err(Error::DegreeCap { n, cap, mode });
        }
        Ok(())
    }
}

/// x^n + c_{n−1} x^{n−1} + … + c_0.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> MonicPolynomial<S> {
    /// `lower` holds c_0..c_{n−1}.
    pub fn new(lower: Vec<S>) -> Self {
        MonicPolynomial { coeffs: lower }
    }

    pub fn one() -> Self {
        MonicPolynomial { coeffs: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// c_0..c_{n−1}, without the implicit leading 1.
    pub fn lower_coefficients(&self) -> &[S] {
        &self.coeffs
    }

    /// c_0..c_n including the leading 1.
    pub fn coefficients(&self) -> Vec<S> {
        let mut c = self.coeffs.clone();
        c.push(S::one());
        c
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::one(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Σ_i c_i m_{i+j} for j = 0..n−1: the functional applied to x^j p_n.
    pub fn orthogonality_residuals(&self, moments: &[S]) -> Result<Vec<S>> {
        let n = self.degree();
        if n > 0 && moments.len() < 2 * n {
            return Err(Error::NotEnoughMoments {
                needed: 2 * n,
                got: moments.len(),
            });
        }
        let full = self.coefficients();
        Ok((0..n)
            .map(|j| {
                full.iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (i, c)| acc + c.clone() * moments[i + j].clone())
            })
            .collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MonicPolynomial<T> {
        MonicPolynomial {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Monic p_n from the determinant whose rows are (m_i, …, m_{i+n}) for
/// i = 0..n−1 and (1, x, …, x^n), divided by the Hankel minor det(m_{i+j})_{0..n−1}.
pub fn hankel_polynomial<S: Scalar>(
    moments: &[S],
    n: usize,
    cfg: &EngineConfig,
) -> Result<MonicPolynomial<S>> {
    cfg.check_degree::<S>(n)?;
    if n == 0 {
        return Ok(MonicPolynomial::one());
    }
    if moments.len() < 2 * n {
        return Err(Error::NotEnoughMoments {
            needed: 2 * n,
            got: moments.len(),
        });
    }
    check_leading_minors(moments, n, cfg)?;

    let hankel_minor = determinant(
        (0..n)
            .map(|i| (0..n).map(|j| moments[i + j].clone()).collect())
            .collect(),
    );
    // Cofactor expansion along the monomial row: the coefficient of x^j is
    // (−1)^(n+j) times the minor with column j removed.
    let coeffs = (0..n)
        .map(|col| {
            let minor: Vec<Vec<S>> = (0..n)
                .map(|i| {
                    (0..=n)
                        .filter(|&j| j != col)
                        .map(|j| moments[i + j].clone())
                        .collect()
                })
                .collect();
            let d = determinant(minor);
            let signed = if (n + col) % 2 == 0 { d } else { -d };
            signed / hankel_minor.clone()
        })
        .collect();
    Ok(MonicPolynomial::new(coeffs))
}

/// Eliminates the leading n×n Hankel block without pivoting; pivot k is the
/// ratio of the leading minors of orders k+1 and k.
fn check_leading_minors<S: Scalar>(moments: &[S], n: usize, cfg: &EngineConfig) -> Result<()> {
    let mut h: Vec<Vec<S>> = (0..n)
        .map(|i| (0..n).map(|j| moments[i + j].clone()).collect())
        .collect();
    for k in 0..n {
        let pivot = h[k][k].clone();
        let singular = if S::EXACT {
            pivot.is_zero()
        } else {
            let scale = moments[2 * k].abs().as_f64();
            !(pivot.abs().as_f64() > cfg.near_singular * scale)
        };
        if singular {
            return Err(Error::SingularHankel { order: k + 1 });
        }
        for i in k + 1..n {
            let factor = h[i][k].clone() / pivot.clone();
            for j in k..n {
                let delta = factor.clone() * h[k][j].clone();
                h[i][j] = h[i][j].clone() - delta;
            }
        }
    }
    Ok(())
}

/// Gaussian elimination with partial pivoting by magnitude.
fn determinant<S: Scalar>(mut a: Vec<Vec<S>>) -> S {
    let n = a.len();
    let mut det = S::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| {
                a[i][k]
                    .abs()
                    .partial_cmp(&a[j][k].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if a[pivot_row][k].is_zero() {
            return S::zero();
        }
        if pivot_row != k {
            a.swap(pivot_row, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            let factor = a[i][k].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let delta = factor.clone() * a[k][j].clone();
                a[i][j] = a[i][j].clone() - delta;
            }
        }
        det = det * pivot;
    }
    det
}

/// α_k and β_k of p_{k+1} = (x − α_k) p_k − β_k p_{k−1}, with β_0 = m_0.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoefficients<S> {
    alpha: Vec<S>,
    /// `beta[0]` is m_0.
    beta: Vec<S>,
}

impl<S: Scalar> RecurrenceCoefficients<S> {
    /// Checks β_k > 0 for k ≥ 1.
    pub fn new(alpha: Vec<S>, beta: Vec<S>) -> Result<Self> {
        if beta.len() != alpha.len().max(1) {
            return Err(Error::DegreeMismatch {
                expected: alpha.len().max(1),
                got: beta.len(),
            });
        }
        for (k, b) in beta.iter().enumerate() {
            if !b.is_positive() {
                return Err(Error::NonPositiveBeta {
                    k,
                    value: format!("{:e}", b.as_f64()),
                });
            }
        }
        Ok(RecurrenceCoefficients { alpha, beta })
    }

    /// Number of α's, i.e. the highest degree the recurrence reaches.
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alphas(&self) -> &[S] {
        &self.alpha
    }

    /// β_1..β_{n−1}.
    pub fn betas(&self) -> &[S] {
        &self.beta[1..]
    }

    pub fn beta0(&self) -> &S {
        &self.beta[0]
    }

    pub fn beta(&self, k: usize) -> &S {
        &self.beta[k]
    }

    /// Coefficients of monic p_n generated by the recurrence.
    pub fn polynomial(&self, n: usize) -> Result<MonicPolynomial<S>> {
        self.check_len(n)?;
        // full coefficient vectors, low to high
        let mut prev: Vec<S> = Vec::new();
        let mut cur: Vec<S> = vec![S::one()];
        for k in 0..n {
            let mut next = vec![S::zero(); k + 2];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone();
                next[i] = next[i].clone() - self.alpha[k].clone() * c.clone();
            }
            if k > 0 {
                for (i, c) in prev.iter().enumerate() {
                    next[i] = next[i].clone() - self.beta[k].clone() * c.clone();
                }
            }
            prev = std::mem::replace(&mut cur, next);
        }
        cur.pop();
        Ok(MonicPolynomial::new(cur))
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n > self.len() {
            return Err(Error::DegreeMismatch {
                expected: self.len(),
                got: n,
            });
        }
        Ok(())
    }
}

/// Chebyshev's algorithm: recurrence coefficients α_0..α_{n−1}, β_0..β_{n−1}
/// from the moments m_0..m_{2n−1}, via the mixed moments
/// σ_k(l) = ∫ p_k x^l.
pub fn moments_to_recurrence<S: Scalar>(
    moments: &[S],
    n: usize,
    cfg: &EngineConfig,
) -> Result<RecurrenceCoefficients<S>> {
    cfg.check_degree::<S>(n)?;
    let needed = (2 * n).max(1);
    if moments.len() < needed {
        return Err(Error::NotEnoughMoments {
            needed,
            got: moments.len(),
        });
    }
    if n == 0 {
        return RecurrenceCoefficients::new(Vec::new(), vec![moments[0].clone()]);
    }
    let width = 2 * n;
    let mut sigma_prev = vec![S::zero(); width];
    let mut sigma: Vec<S> = moments[..width].to_vec();
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    check_beta(0, &moments[0])?;
    alpha.push(moments[1].clone() / moments[0].clone());
    beta.push(moments[0].clone());

    for k in 1..n {
        let mut next = vec![S::zero(); width];
        for l in k..width - k {
            next[l] = sigma[l + 1].clone()
                - alpha[k - 1].clone() * sigma[l].clone()
                - beta[k - 1].clone() * sigma_prev[l].clone();
        }
        let b = next[k].clone() / sigma[k - 1].clone();
        check_beta(k, &b)?;
        alpha.push(next[k + 1].clone() / next[k].clone() - sigma[k].clone() / sigma[k - 1].clone());
        beta.push(b);
        sigma_prev = std::mem::replace(&mut sigma, next);
    }
    RecurrenceCoefficients::new(alpha, beta)
}

fn check_beta<S: Scalar>(k: usize, b: &S) -> Result<()> {
    if !b.is_positive() {
        return Err(Error::NonPositiveBeta {
            k,
            value: format!("{:e}", b.as_f64()),
        });
    }
    Ok(())
}

/// Monic p_n(x) via p_{−1} = 0, p_0 = 1 and the three-term recurrence.
pub fn evaluate<S: Scalar>(rc: &RecurrenceCoefficients<S>, n: usize, x: &S) -> Result<S> {
    rc.check_len(n)?;
    let mut prev = S::zero();
    let mut cur = S::one();
    for k in 0..n {
        let next = (x.clone() - rc.alpha[k].clone()) * cur.clone()
            - if k > 0 {
                rc.beta[k].clone() * prev.clone()
            } else {
                S::zero()
            };
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Symmetric tridiagonal matrix with diagonal α_k and off-diagonal √β_k.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
}

impl JacobiMatrix {
    /// Off-diagonal entries must be strictly positive.
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if off_diagonal.len() + 1 != diagonal.len().max(1) {
            return Err(Error::DegreeMismatch {
                expected: diagonal.len().saturating_sub(1),
                got: off_diagonal.len(),
            });
        }
        if let Some(k) = off_diagonal.iter().position(|e| !(*e > 0.0)) {
            return Err(Error::NonPositiveBeta {
                k: k + 1,
                value: format!("{:e}", off_diagonal[k] * off_diagonal[k]),
            });
        }
        Ok(JacobiMatrix {
            diagonal,
            off_diagonal,
        })
    }

    pub fn order(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.order();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1] } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i] } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    /// max |entry|-row sum, the ∞-norm.
    pub fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }
}

pub fn jacobi_matrix<S: Scalar>(rc: &RecurrenceCoefficients<S>, n: usize) -> Result<JacobiMatrix> {
    rc.check_len(n)?;
    let diagonal = rc.alpha[..n].iter().map(Scalar::as_f64).collect();
    let off_diagonal = (1..n).map(|k| rc.beta[k].sqrt_f64()).collect();
    JacobiMatrix::new(diagonal, off_diagonal)
}
