//! Zeros of p_n: Sturm-count bisection on the Jacobi matrix (float path) and
//! Sturm-sequence isolation over the rationals (exact path).

use std::cmp::Ordering;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::measure::{MollifiedMeasure, MomentSource, PerturbedMeasure};
use crate::opoly::{
    hankel_polynomial, jacobi_matrix, moments_to_recurrence, EngineConfig, JacobiMatrix,
    MonicPolynomial,
};
use crate::scalar::{Arithmetic, Scalar};

/// Relative agreement demanded between the exact and float paths.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-10;

/// Bisection width target on the float path, relative to 1 + |x|.
pub const JACOBI_BRACKET_WIDTH: f64 = 1e-13;

/// Exact-path refinement stops once a bracket is this many halvings below
/// the initial isolating interval.
pub const EXACT_REFINEMENT_BITS: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroMethod {
    JacobiBisection,
    SturmExact,
    /// Exact path, confirmed by the float path.
    CrossChecked,
}

impl ZeroMethod {
    pub fn name(self) -> &'static str {
        match self {
            ZeroMethod::JacobiBisection => "jacobi-bisection",
            ZeroMethod::SturmExact => "sturm-exact",
            ZeroMethod::CrossChecked => "cross-checked",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    zeros: Vec<f64>,
    brackets: Option<Vec<(BigRational, BigRational)>>,
    method: ZeroMethod,
    certified_accuracy: f64,
}

impl ZeroSet {
    fn new(
        zeros: Vec<f64>,
        brackets: Option<Vec<(BigRational, BigRational)>>,
        method: ZeroMethod,
        certified_accuracy: f64,
    ) -> Result<Self> {
        for (k, w) in zeros.windows(2).enumerate() {
            if !(w[1] - w[0] > certified_accuracy) {
                return Err(Error::CoincidentZeros { k });
            }
        }
        Ok(ZeroSet {
            zeros,
            brackets,
            method,
            certified_accuracy,
        })
    }

    pub fn empty(method: ZeroMethod) -> Self {
        ZeroSet {
            zeros: Vec::new(),
            brackets: None,
            method,
            certified_accuracy: 0.0,
        }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Increasing.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Rational isolating brackets `[lo, hi]`, present on the exact path.
    pub fn brackets(&self) -> Option<&[(BigRational, BigRational)]> {
        self.brackets.as_deref()
    }

    pub fn method(&self) -> ZeroMethod {
        self.method
    }

    /// Upper bound on |computed − true| for every zero.
    pub fn certified_accuracy(&self) -> f64 {
        self.certified_accuracy
    }
}

/// Number of eigenvalues of `j` strictly below `x`, from the signs of the
/// LDLᵀ pivots of J − xI.
pub fn sturm_count(j: &JacobiMatrix, x: f64) -> usize {
    let d = j.diagonal();
    let e = j.off_diagonal();
    let max_e2 = e.iter().fold(1.0f64, |m, v| m.max(v * v));
    let pivmin = f64::MIN_POSITIVE * max_e2;
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        q = if i == 0 {
            d[0] - x
        } else {
            d[i] - x - e[i - 1] * e[i - 1] / q
        };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

pub fn zeros_from_jacobi(j: &JacobiMatrix) -> Result<ZeroSet> {
    zeros_from_jacobi_within(j, (None, None))
}

/// Bisection for every eigenvalue, starting from the Gershgorin interval
/// intersected with `window` (either end may be open).
pub fn zeros_from_jacobi_within(
    j: &JacobiMatrix,
    window: (Option<f64>, Option<f64>),
) -> Result<ZeroSet> {
    let n = j.order();
    if n == 0 {
        return Ok(ZeroSet::empty(ZeroMethod::JacobiBisection));
    }
    let (glo, ghi) = j.gershgorin();
    let pad = |v: f64| 4.0 * f64::EPSILON * (1.0 + v.abs());
    let (glo, ghi) = (glo - pad(glo), ghi + pad(ghi));
    let mut lo = window.0.map_or(glo, |w| w.max(glo));
    let mut hi = window.1.map_or(ghi, |w| w.min(ghi));
    if !(lo < hi) || sturm_count(j, lo) != 0 || sturm_count(j, hi) != n {
        lo = glo;
        hi = ghi;
    }

    // Relative resolution, plus an absolute floor far below the backward
    // error so zeros at the origin do not bisect into subnormals.
    let floor = 1e-3 * f64::EPSILON * j.norm().max(1.0);
    let mut zeros = Vec::with_capacity(n);
    let mut half_width: f64 = 0.0;
    for k in 0..n {
        // invariant: count(a) ≤ k < count(b)
        let mut a = zeros.last().copied().map_or(lo, |z: f64| z.max(lo)).min(hi);
        if sturm_count(j, a) > k {
            a = lo;
        }
        let mut b = hi;
        loop {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b || b - a <= floor {
                break;
            }
            if sturm_count(j, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        half_width = half_width.max(0.5 * (b - a));
        debug_assert!(b - a <= JACOBI_BRACKET_WIDTH * (1.0 + b.abs()));
        // a bracket around the origin reports the origin itself
        zeros.push(if a <= 0.0 && 0.0 <= b { 0.0 } else { 0.5 * (a + b) });
    }
    // Backward error of the pivot recursion.
    let rounding = 2.0 * n as f64 * f64::EPSILON * j.norm();
    ZeroSet::new(zeros, None, ZeroMethod::JacobiBisection, half_width + rounding)
}

/// Integer polynomial, low to high, obtained from a rational one by a
/// positive scaling (signs are preserved).
#[derive(Debug, Clone)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn from_rational(coeffs: &[BigRational]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() || content.is_one() {
            return IntPoly(ints);
        }
        IntPoly(ints.into_iter().map(|c| c / &content).collect())
    }

    /// Sign of p(u/v), via the homogenized form Σ c_i u^i v^(n−i) with v > 0.
    fn sign_at(&self, x: &BigRational) -> Ordering {
        let u = x.numer();
        let v = x.denom();
        let n = self.0.len();
        if n == 0 {
            return Ordering::Equal;
        }
        let mut acc = self.0[n - 1].clone();
        let mut v_pow = BigInt::one();
        for c in self.0[..n - 1].iter().rev() {
            v_pow *= v;
            acc = acc * u + c * &v_pow;
        }
        acc.sign_ordering()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

fn poly_rem(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let lead = &den[dn];
    while r.len() > dn && !r.is_empty() {
        let top = r.len() - 1;
        let factor = &r[top] / lead;
        for (i, d) in den.iter().enumerate() {
            let delta = &factor * d;
            r[top - dn + i] -= delta;
        }
        r.pop();
    }
    while r.last().is_some_and(Zero::is_zero) {
        r.pop();
    }
    r
}

struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    fn new(p: &[BigRational]) -> Self {
        let derivative: Vec<BigRational> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        let mut chain = vec![p.to_vec(), derivative];
        loop {
            let len = chain.len();
            if chain[len - 1].len() <= 1 {
                break;
            }
            let r = poly_rem(&chain[len - 2], &chain[len - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        SturmChain {
            polys: chain.iter().map(|c| IntPoly::from_rational(c)).collect(),
        }
    }

    /// Sign changes at x, zeros skipped.
    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.polys {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

/// Rational brackets for every real zero of an exact monic polynomial.
pub fn zeros_exact(p: &MonicPolynomial<BigRational>, cfg: &EngineConfig) -> Result<ZeroSet> {
    let n = p.degree();
    cfg.check_degree::<BigRational>(n)?;
    if n == 0 {
        return Ok(ZeroSet::empty(ZeroMethod::SturmExact));
    }
    let coeffs = p.coefficients();
    let poly = IntPoly::from_rational(&coeffs);
    let chain = SturmChain::new(&coeffs);

    // Cauchy bound: every zero satisfies |x| < 1 + max |c_i|.
    let max_coeff = p
        .lower_coefficients()
        .iter()
        .map(|c| c.abs())
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    let bound = BigRational::from_integer(max_coeff.ceil().to_integer() + 1);
    let lo = -bound.clone();
    let hi = bound;

    let v_lo = chain.variations(&lo);
    let v_hi = chain.variations(&hi);
    let found = v_lo - v_hi;
    if found != n {
        return Err(Error::NotRealRooted { degree: n, found });
    }

    // Isolation: intervals (l, r] holding exactly one zero; p(l), p(r) ≠ 0.
    let mut isolated = Vec::with_capacity(n);
    let mut stack = vec![(lo, hi, v_lo, v_hi)];
    while let Some((l, r, vl, vr)) = stack.pop() {
        match vl - vr {
            0 => {}
            1 => isolated.push((l, r)),
            _ => {
                let mid = split_point(&poly, &l, &r);
                let vm = chain.variations(&mid);
                stack.push((l, mid.clone(), vl, vm));
                stack.push((mid, r, vm, vr));
            }
        }
    }
    isolated.sort_by(|a, b| a.0.cmp(&b.0));

    let mut brackets = Vec::with_capacity(n);
    for (l, r) in isolated {
        brackets.push(refine(&poly, l, r));
    }
    let mut zeros = Vec::with_capacity(n);
    let mut accuracy: f64 = 0.0;
    for (l, r) in &brackets {
        let mid: BigRational = (l + r) / BigRational::from_integer(2.into());
        let z = mid.to_f64().unwrap_or(f64::NAN);
        let half = ((r - l) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN);
        accuracy = accuracy.max(half + f64::EPSILON * z.abs());
        zeros.push(z);
    }
    ZeroSet::new(zeros, Some(brackets), ZeroMethod::SturmExact, accuracy)
}

/// A point of (l, r) where p does not vanish, preferring the midpoint.
fn split_point(p: &IntPoly, l: &BigRational, r: &BigRational) -> BigRational {
    let width = r - l;
    for denom in 2i64.. {
        for numer in 1..denom {
            let x = l + &width * BigRational::new(numer.into(), denom.into());
            if p.sign_at(&x) != Ordering::Equal {
                return x;
            }
        }
    }
    unreachable!("a polynomial has finitely many zeros")
}

fn refine(p: &IntPoly, mut l: BigRational, mut r: BigRational) -> (BigRational, BigRational) {
    if p.sign_at(&r) == Ordering::Equal {
        return (r.clone(), r);
    }
    let target = (&r - &l) / BigRational::from_integer(BigInt::one() << EXACT_REFINEMENT_BITS);
    let mut checked_simplest = false;
    let sign_l = p.sign_at(&l);
    let two = BigRational::from_integer(2.into());
    while &r - &l > target {
        let mid = (&l + &r) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => return (mid.clone(), mid),
            s if s == sign_l => l = mid,
            _ => r = mid,
        }
        // Rational zeros with small denominators are exposed as the simplest
        // rational of a narrow bracket.
        if !checked_simplest && &r - &l <= target.clone() * BigRational::from_integer(BigInt::one() << 30) {
            checked_simplest = true;
            let s = simplest_rational(&l, &r);
            if p.sign_at(&s) == Ordering::Equal {
                return (s.clone(), s);
            }
        }
    }
    let s = simplest_rational(&l, &r);
    if p.sign_at(&s) == Ordering::Equal {
        return (s.clone(), s);
    }
    (l, r)
}

/// The rational with the smallest denominator in [l, r] (continued fractions).
fn simplest_rational(l: &BigRational, r: &BigRational) -> BigRational {
    if !l.is_positive() && !r.is_negative() {
        return BigRational::zero();
    }
    if r.is_negative() {
        return -simplest_rational(&-r, &-l);
    }
    let fl = l.floor();
    if &fl == l {
        return fl;
    }
    let next = &fl + BigRational::one();
    if &next <= r {
        return next;
    }
    let inner = simplest_rational(&(r - &fl).recip(), &(l - &fl).recip());
    fl + inner.recip()
}

fn jacobi_path<S: Scalar>(
    moments: &[S],
    n: usize,
    window: (Option<f64>, Option<f64>),
    cfg: &EngineConfig,
) -> Result<ZeroSet> {
    let rc = moments_to_recurrence(moments, n, cfg)?;
    let j = jacobi_matrix(&rc, n)?;
    zeros_from_jacobi_within(&j, window)
}

fn float_path<M: MomentSource>(
    m: &M,
    bits: u32,
    n: usize,
    window: (Option<f64>, Option<f64>),
    cfg: &EngineConfig,
) -> Result<ZeroSet> {
    if bits == 53 {
        jacobi_path(&m.moments::<f64>(2 * n)?, n, window, cfg)
    } else {
        jacobi_path(&m.moments::<TwoFloat>(2 * n)?, n, window, cfg)
    }
}

/// Zeros of p_n for a point-mass measure: exact Sturm path (cross-checked
/// against the Jacobi path) in exact mode, Jacobi path otherwise.
pub fn measure_zeros(m: &PerturbedMeasure, n: usize, cfg: &EngineConfig) -> Result<ZeroSet> {
    if n == 0 {
        let method = if m.arithmetic().is_exact() {
            ZeroMethod::CrossChecked
        } else {
            ZeroMethod::JacobiBisection
        };
        return Ok(ZeroSet::empty(method));
    }
    let (hull_lo, hull_hi) = m.hull();
    let window = (hull_lo.map(|v| v - 1.0), hull_hi.map(|v| v + 1.0));
    let bits = match m.arithmetic() {
        Arithmetic::Float(bits) => bits,
        Arithmetic::ExactRational => 106,
    };
    let float = float_path(m, bits, n, window, cfg)?;
    if !m.arithmetic().is_exact() {
        return Ok(float);
    }

    let moments: Vec<BigRational> = m.moments(2 * n)?;
    let p = hankel_polynomial(&moments, n, cfg)?;
    let exact = zeros_exact(&p, cfg)?;
    cross_check(&exact, &float)?;
    Ok(ZeroSet {
        method: ZeroMethod::CrossChecked,
        ..exact
    })
}

fn cross_check(exact: &ZeroSet, float: &ZeroSet) -> Result<()> {
    for (k, (e, f)) in exact.zeros.iter().zip(&float.zeros).enumerate() {
        let tol = CROSS_CHECK_TOLERANCE * (1.0 + e.abs())
            + exact.certified_accuracy
            + float.certified_accuracy;
        if !((e - f).abs() <= tol) {
            return Err(Error::PathDisagreement {
                k,
                exact: *e,
                float: *f,
            });
        }
    }
    Ok(())
}

/// Zeros of p_n for the mollified measure; always the float path, at the
/// base's float precision (106 bits when the base is exact).
pub fn mollified_zeros(m: &MollifiedMeasure, n: usize, cfg: &EngineConfig) -> Result<ZeroSet> {
    if n == 0 {
        return Ok(ZeroSet::empty(ZeroMethod::JacobiBisection));
    }
    let bits = match m.base().arithmetic() {
        Arithmetic::Float(bits) => bits,
        Arithmetic::ExactRational => 106,
    };
    float_path(m, bits, n, (None, None), cfg)
}
