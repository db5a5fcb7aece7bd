//! Base measures, point-mass perturbations and Gaussian mollifiers, together
//! with their moment sequences.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Arithmetic, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Weight 1 on (−1, 1).
    Legendre,
    /// Weight (1 − x²)^(−1/2) on (−1, 1).
    ChebyshevFirstKind,
    /// Weight e^(−x) on (0, ∞).
    Laguerre,
    /// Weight e^(−x²) on ℝ.
    Hermite,
    ExplicitMoments,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Legendre => "legendre",
            Family::ChebyshevFirstKind => "chebyshev1",
            Family::Laguerre => "laguerre",
            Family::Hermite => "hermite",
            Family::ExplicitMoments => "explicit",
        }
    }

    pub fn is_symmetric(self) -> bool {
        matches!(
            self,
            Family::Legendre | Family::ChebyshevFirstKind | Family::Hermite
        )
    }
}

/// Interval endpoints; `None` stands for an infinite end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub lower: Option<BigRational>,
    pub upper: Option<BigRational>,
}

impl Support {
    pub fn new(lower: Option<BigRational>, upper: Option<BigRational>) -> Self {
        Support { lower, upper }
    }

    pub fn real_line() -> Self {
        Support::new(None, None)
    }

    fn finite(lower: i64, upper: i64) -> Self {
        Support::new(Some(int(lower)), Some(int(upper)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    One,
    Pi,
    SqrtPi,
}

/// Moment functional of a base measure.
///
/// With `normalized` set, the weight is scaled to total mass 1. This turns the
/// Chebyshev and Hermite moments (multiples of π and √π) into rationals and
/// makes exact arithmetic available for them.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentFunctional {
    family: Family,
    normalized: bool,
    support: Support,
    arithmetic: Arithmetic,
    explicit: Vec<BigRational>,
}

impl MomentFunctional {
    pub fn classical(family: Family, normalized: bool, arithmetic: Arithmetic) -> Result<Self> {
        let support = match family {
            Family::Legendre | Family::ChebyshevFirstKind => Support::finite(-1, 1),
            Family::Laguerre => Support::new(Some(BigRational::zero()), None),
            Family::Hermite => Support::real_line(),
            Family::ExplicitMoments => {
                return Err(Error::Parse(
                    "explicit moments need a moment list; use MomentFunctional::explicit".into(),
                ))
            }
        };
        let f = MomentFunctional {
            family,
            normalized,
            support,
            arithmetic: arithmetic.validate()?,
            explicit: Vec::new(),
        };
        f.check_arithmetic()?;
        Ok(f)
    }

    /// A user-supplied moment list. Positive definiteness of every Hankel
    /// matrix the list can fill is verified here.
    pub fn explicit(
        moments: Vec<BigRational>,
        support: Support,
        arithmetic: Arithmetic,
    ) -> Result<Self> {
        check_positive_definite(&moments)?;
        Ok(MomentFunctional {
            family: Family::ExplicitMoments,
            normalized: false,
            support,
            arithmetic: arithmetic.validate()?,
            explicit: moments,
        })
    }

    /// Legendre weight in the default float precision.
    pub fn legendre() -> Self {
        Self::classical(Family::Legendre, false, Arithmetic::DEFAULT_FLOAT).expect("valid")
    }

    pub fn with_arithmetic(&self, arithmetic: Arithmetic) -> Result<Self> {
        let mut f = self.clone();
        f.arithmetic = arithmetic.validate()?;
        f.check_arithmetic()?;
        Ok(f)
    }

    fn check_arithmetic(&self) -> Result<()> {
        if self.arithmetic.is_exact() && !self.is_rational() {
            return Err(Error::ExactUnavailable(format!(
                "{} moments are irrational unless the weight is normalized",
                self.family.name()
            )));
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn arithmetic(&self) -> Arithmetic {
        self.arithmetic
    }

    pub fn explicit_moments(&self) -> &[BigRational] {
        &self.explicit
    }

    /// True when every moment is rational.
    pub fn is_rational(&self) -> bool {
        self.factor() == Factor::One
    }

    pub fn is_symmetric(&self) -> bool {
        if self.family == Family::ExplicitMoments {
            return self.explicit.iter().skip(1).step_by(2).all(Zero::is_zero);
        }
        self.family.is_symmetric()
    }

    /// Number of moments available; `None` when unbounded.
    pub fn moment_count(&self) -> Option<usize> {
        (self.family == Family::ExplicitMoments).then_some(self.explicit.len())
    }

    fn factor(&self) -> Factor {
        match (self.family, self.normalized) {
            (Family::ChebyshevFirstKind, false) => Factor::Pi,
            (Family::Hermite, false) => Factor::SqrtPi,
            _ => Factor::One,
        }
    }

    /// Moment divided by the transcendental factor (π or √π) when there is one.
    fn rational_part(&self, k: usize) -> Result<BigRational> {
        let odd_zero = k % 2 == 1;
        let r = match self.family {
            Family::Legendre => {
                if odd_zero {
                    BigRational::zero()
                } else {
                    let total = if self.normalized { 1 } else { 2 };
                    BigRational::new(total.into(), (k as i64 + 1).into())
                }
            }
            Family::ChebyshevFirstKind => {
                if odd_zero {
                    BigRational::zero()
                } else {
                    // (k−1)!!/k!!
                    (1..=k / 2).fold(BigRational::one(), |acc, i| {
                        acc * BigRational::new((2 * i as i64 - 1).into(), (2 * i as i64).into())
                    })
                }
            }
            Family::Laguerre => BigRational::from_integer((1..=k as u64).map(BigInt::from).product()),
            Family::Hermite => {
                if odd_zero {
                    BigRational::zero()
                } else {
                    // Γ((k+1)/2)/√π = (k−1)!!/2^(k/2)
                    (1..=k / 2).fold(BigRational::one(), |acc, i| {
                        acc * BigRational::new((2 * i as i64 - 1).into(), 2.into())
                    })
                }
            }
            Family::ExplicitMoments => {
                self.explicit
                    .get(k)
                    .cloned()
                    .ok_or(Error::MomentOutOfRange {
                        k,
                        available: self.explicit.len(),
                    })?
            }
        };
        Ok(r)
    }

    /// m_k of the base weight.
    pub fn moment<S: Scalar>(&self, k: usize) -> Result<S> {
        let r = S::from_rational(&self.rational_part(k)?);
        let factor = match self.factor() {
            Factor::One => return Ok(r),
            Factor::Pi => S::pi(),
            Factor::SqrtPi => S::sqrt_pi(),
        };
        factor.map(|c| r * c).ok_or_else(|| {
            Error::ExactUnavailable(format!("moment {k} of {} is irrational", self.family.name()))
        })
    }

    pub fn description(&self) -> String {
        match (self.family, self.normalized) {
            (Family::ExplicitMoments, _) => format!("explicit[{}]", self.explicit.len()),
            (f, true) => format!("{}(normalized)", f.name()),
            (f, false) => f.name().to_string(),
        }
    }
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Checks positivity of the leading principal minors of (m_{i+j}) for every
/// order the moment list can fill.
fn check_positive_definite(moments: &[BigRational]) -> Result<()> {
    if moments.is_empty() {
        return Err(Error::NotPositiveDefinite {
            order: 1,
            detail: "missing (no moments supplied)".into(),
        });
    }
    let order = moments.len().div_ceil(2);
    let mut h: Vec<Vec<BigRational>> = (0..order)
        .map(|i| (0..order).map(|j| moments[i + j].clone()).collect())
        .collect();
    // Gaussian elimination without pivoting: the k-th pivot is the ratio of
    // consecutive leading minors.
    for k in 0..order {
        let pivot = h[k][k].clone();
        if !pivot.is_positive() {
            return Err(Error::NotPositiveDefinite {
                order: k + 1,
                detail: format!("non-positive (pivot {})", format_rational(&pivot)),
            });
        }
        for i in k + 1..order {
            let factor = &h[i][k] / &pivot;
            for j in k..order {
                let delta = &factor * &h[k][j];
                h[i][j] -= delta;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMass {
    location: BigRational,
    mass: BigRational,
}

impl PointMass {
    pub fn new(location: BigRational, mass: BigRational) -> Result<Self> {
        if !mass.is_positive() {
            return Err(Error::NonPositiveMass(format_rational(&mass)));
        }
        Ok(PointMass { location, mass })
    }

    pub fn location(&self) -> &BigRational {
        &self.location
    }

    pub fn mass(&self) -> &BigRational {
        &self.mass
    }
}

/// Base measure plus finitely many atoms, one of which may be designated as
/// the moving mass of a location sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedMeasure {
    base: MomentFunctional,
    /// As supplied, without the moving mass.
    fixed: Vec<PointMass>,
    moving: Option<PointMass>,
    /// Atoms with coincident locations merged.
    merged: Vec<PointMass>,
    moving_index: Option<usize>,
}

impl PerturbedMeasure {
    /// Atoms at the same location are merged by summing their masses; the
    /// moving index is remapped onto the merged list.
    pub fn new(
        base: MomentFunctional,
        masses: Vec<PointMass>,
        moving_index: Option<usize>,
    ) -> Result<Self> {
        if let Some(index) = moving_index {
            if index >= masses.len() {
                return Err(Error::BadMovingIndex {
                    index,
                    count: masses.len(),
                });
            }
        }
        let mut fixed = Vec::with_capacity(masses.len());
        let mut moving = None;
        for (i, m) in masses.into_iter().enumerate() {
            if Some(i) == moving_index {
                moving = Some(m);
            } else {
                fixed.push(m);
            }
        }
        Ok(Self::assemble(base, fixed, moving))
    }

    fn assemble(base: MomentFunctional, fixed: Vec<PointMass>, moving: Option<PointMass>) -> Self {
        let mut merged: Vec<PointMass> = Vec::with_capacity(fixed.len() + 1);
        let mut merge = |m: &PointMass| -> usize {
            match merged.iter().position(|p| p.location == m.location) {
                Some(pos) => {
                    merged[pos].mass += &m.mass;
                    pos
                }
                None => {
                    merged.push(m.clone());
                    merged.len() - 1
                }
            }
        };
        for m in &fixed {
            merge(m);
        }
        let moving_index = moving.as_ref().map(&mut merge);
        PerturbedMeasure {
            base,
            fixed,
            moving,
            merged,
            moving_index,
        }
    }

    pub fn unperturbed(base: MomentFunctional) -> Self {
        Self::assemble(base, Vec::new(), None)
    }

    pub fn base(&self) -> &MomentFunctional {
        &self.base
    }

    /// The merged atom list.
    pub fn masses(&self) -> &[PointMass] {
        &self.merged
    }

    pub fn moving_index(&self) -> Option<usize> {
        self.moving_index
    }

    /// The moving atom on its own, before merging with any fixed atom.
    pub fn moving_mass(&self) -> Option<&PointMass> {
        self.moving.as_ref()
    }

    pub fn fixed_masses(&self) -> &[PointMass] {
        &self.fixed
    }

    pub fn arithmetic(&self) -> Arithmetic {
        self.base.arithmetic
    }

    pub fn with_arithmetic(&self, arithmetic: Arithmetic) -> Result<Self> {
        let base = self.base.with_arithmetic(arithmetic)?;
        Ok(Self::assemble(base, self.fixed.clone(), self.moving.clone()))
    }

    /// The same measure with the moving atom relocated to `a`.
    pub fn with_moving_location(&self, a: &BigRational) -> Result<Self> {
        let moving = self.moving.as_ref().ok_or(Error::NoMovingMass)?;
        let relocated = PointMass::new(a.clone(), moving.mass.clone())?;
        Ok(Self::assemble(
            self.base.clone(),
            self.fixed.clone(),
            Some(relocated),
        ))
    }

    pub fn moment<S: Scalar>(&self, k: usize) -> Result<S> {
        let mut total = self.base.moment::<S>(k)?;
        for m in &self.merged {
            let a = S::from_rational(&m.location);
            total = total + S::from_rational(&m.mass) * pow(&a, k);
        }
        Ok(total)
    }

    /// Convex hull of the base support and all atom locations.
    pub fn hull(&self) -> (Option<f64>, Option<f64>) {
        let locations = self.merged.iter().map(|m| m.location.to_f64().unwrap_or(f64::NAN));
        let lower = self
            .base
            .support
            .lower
            .as_ref()
            .map(|l| locations.clone().fold(l.to_f64().unwrap_or(f64::NAN), f64::min));
        let upper = self
            .base
            .support
            .upper
            .as_ref()
            .map(|u| locations.fold(u.to_f64().unwrap_or(f64::NAN), f64::max));
        (lower, upper)
    }

    /// True when the measure is invariant under x ↦ −x.
    pub fn is_symmetric(&self) -> bool {
        self.base.is_symmetric()
            && self.merged.iter().all(|m| {
                let mirror = -m.location.clone();
                self.merged
                    .iter()
                    .any(|p| p.location == mirror && p.mass == m.mass)
            })
    }

    pub fn description(&self) -> String {
        let mut s = self.base.description();
        for (i, m) in self.merged.iter().enumerate() {
            let tag = if Some(i) == self.moving_index { "*" } else { "" };
            s.push_str(&format!(
                " + {}δ({}){tag}",
                format_rational(&m.mass),
                format_rational(&m.location)
            ));
        }
        s
    }
}

/// N(x; a, γ) = e^(−((x−a)/γ)²)/(√π γ), scaled by `mass`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianMollifier {
    center: BigRational,
    width: BigRational,
    mass: BigRational,
}

impl GaussianMollifier {
    pub fn new(center: BigRational, width: BigRational, mass: BigRational) -> Result<Self> {
        if !width.is_positive() {
            return Err(Error::NonPositiveWidth(format_rational(&width)));
        }
        if !mass.is_positive() {
            return Err(Error::NonPositiveMass(format_rational(&mass)));
        }
        Ok(GaussianMollifier {
            center,
            width,
            mass,
        })
    }

    pub fn center(&self) -> &BigRational {
        &self.center
    }

    pub fn width(&self) -> &BigRational {
        &self.width
    }

    pub fn mass(&self) -> &BigRational {
        &self.mass
    }

    /// k-th moment of N(x; a, γ) per unit mass:
    /// Σ_{j even} C(k,j) · Γ((j+1)/2)/√π · a^(k−j) γ^j.
    pub fn moment<S: Scalar>(&self, k: usize) -> S {
        let a = S::from_rational(&self.center);
        let gamma = S::from_rational(&self.width);
        let gamma_sq = gamma.clone() * gamma;
        let mut total = S::zero();
        let mut gamma_pow = S::one();
        for j in (0..=k).step_by(2) {
            let coeff = binomial(k, j) * half_integer_gamma_ratio(j);
            total = total + S::from_rational(&coeff) * pow(&a, k - j) * gamma_pow.clone();
            gamma_pow = gamma_pow * gamma_sq.clone();
        }
        total
    }
}

/// Γ((j+1)/2)/√π for even j, built from Γ(1/2) = √π and Γ(z+1) = zΓ(z);
/// zero for odd j, where the (1 + (−1)^j)/2 factor vanishes.
pub fn half_integer_gamma_ratio(j: usize) -> BigRational {
    if j % 2 == 1 {
        return BigRational::zero();
    }
    let mut ratio = BigRational::one();
    let mut z = BigRational::new(1.into(), 2.into());
    for _ in 0..j / 2 {
        ratio *= &z;
        z += BigRational::one();
    }
    ratio
}

pub(crate) fn binomial(n: usize, k: usize) -> BigRational {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(c)
}

pub(crate) fn pow<S: Scalar>(x: &S, k: usize) -> S {
    let mut r = S::one();
    for _ in 0..k {
        r = r * x.clone();
    }
    r
}

/// Base weight plus M·N(x; a, γ).
#[derive(Debug, Clone, PartialEq)]
pub struct MollifiedMeasure {
    base: MomentFunctional,
    mollifier: GaussianMollifier,
}

impl MollifiedMeasure {
    pub fn new(base: MomentFunctional, mollifier: GaussianMollifier) -> Self {
        MollifiedMeasure { base, mollifier }
    }

    pub fn base(&self) -> &MomentFunctional {
        &self.base
    }

    pub fn mollifier(&self) -> &GaussianMollifier {
        &self.mollifier
    }

    pub fn moment<S: Scalar>(&self, k: usize) -> Result<S> {
        let base = self.base.moment::<S>(k)?;
        Ok(base + S::from_rational(&self.mollifier.mass) * self.mollifier.moment::<S>(k))
    }

    pub fn description(&self) -> String {
        format!(
            "{} + {}N(x;{},{})",
            self.base.description(),
            format_rational(&self.mollifier.mass),
            format_rational(&self.mollifier.center),
            format_rational(&self.mollifier.width)
        )
    }
}

/// Anything with a moment sequence.
pub trait MomentSource {
    fn moments<S: Scalar>(&self, count: usize) -> Result<Vec<S>>;
}

impl MomentSource for PerturbedMeasure {
    fn moments<S: Scalar>(&self, count: usize) -> Result<Vec<S>> {
        (0..count).map(|k| self.moment(k)).collect()
    }
}

impl MomentSource for MollifiedMeasure {
    fn moments<S: Scalar>(&self, count: usize) -> Result<Vec<S>> {
        (0..count).map(|k| self.moment(k)).collect()
    }
}

pub fn base_moment<S: Scalar>(f: &MomentFunctional, k: usize) -> Result<S> {
    f.moment(k)
}

pub fn gaussian_moment<S: Scalar>(g: &GaussianMollifier, k: usize) -> S {
    g.moment(k)
}

pub fn perturbed_moment<S: Scalar>(m: &PerturbedMeasure, k: usize) -> Result<S> {
    m.moment(k)
}

pub fn mollified_moment<S: Scalar>(
    f: &MomentFunctional,
    g: &GaussianMollifier,
    k: usize,
) -> Result<S> {
    f.moment::<S>(k).map(|b| b + S::from_rational(&g.mass) * g.moment::<S>(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use twofloat::TwoFloat;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn exact(family: Family) -> MomentFunctional {
        MomentFunctional::classical(family, false, Arithmetic::ExactRational).unwrap()
    }

    fn legendre_plus_half() -> PerturbedMeasure {
        PerturbedMeasure::new(
            exact(Family::Legendre),
            vec![PointMass::new(q(1, 2), q(1, 1)).unwrap()],
            Some(0),
        )
        .unwrap()
    }

    #[test]
    fn legendre_base_moments() {
        let f = exact(Family::Legendre);
        assert_eq!(f.moment::<BigRational>(0).unwrap(), q(2, 1));
        assert_eq!(f.moment::<BigRational>(1).unwrap(), q(0, 1));
        assert_eq!(f.moment::<BigRational>(2).unwrap(), q(2, 3));
    }

    #[test]
    fn classical_moments_against_closed_forms() {
        let lag = exact(Family::Laguerre);
        assert_eq!(lag.moment::<BigRational>(5).unwrap(), q(120, 1));
        let cheb = MomentFunctional::classical(Family::ChebyshevFirstKind, false, Arithmetic::Float(53)).unwrap();
        assert!((cheb.moment::<f64>(0).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!((cheb.moment::<f64>(4).unwrap() - 3.0 * std::f64::consts::PI / 8.0).abs() < 1e-15);
        let her = MomentFunctional::classical(Family::Hermite, false, Arithmetic::Float(53)).unwrap();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((her.moment::<f64>(2).unwrap() - sqrt_pi / 2.0).abs() < 1e-15);
        assert!((her.moment::<f64>(4).unwrap() - 0.75 * sqrt_pi).abs() < 1e-15);
        assert_eq!(her.moment::<f64>(3).unwrap(), 0.0);
    }

    #[test]
    fn exact_mode_requires_rational_moments() {
        for family in [Family::ChebyshevFirstKind, Family::Hermite] {
            assert!(matches!(
                MomentFunctional::classical(family, false, Arithmetic::ExactRational),
                Err(Error::ExactUnavailable(_))
            ));
            let normalized =
                MomentFunctional::classical(family, true, Arithmetic::ExactRational).unwrap();
            assert_eq!(normalized.moment::<BigRational>(0).unwrap(), q(1, 1));
        }
        let her = MomentFunctional::classical(Family::Hermite, true, Arithmetic::ExactRational).unwrap();
        assert_eq!(her.moment::<BigRational>(2).unwrap(), q(1, 2));
        assert_eq!(her.moment::<BigRational>(6).unwrap(), q(15, 8));
    }

    #[test]
    fn explicit_moments_range_and_definiteness() {
        let f = MomentFunctional::explicit(
            vec![q(2, 1), q(0, 1), q(2, 3)],
            Support::real_line(),
            Arithmetic::ExactRational,
        )
        .unwrap();
        assert_eq!(f.moment::<BigRational>(2).unwrap(), q(2, 3));
        assert!(matches!(
            f.moment::<BigRational>(3),
            Err(Error::MomentOutOfRange { k: 3, available: 3 })
        ));
        // m_0 m_2 − m_1² < 0
        let err = MomentFunctional::explicit(
            vec![q(1, 1), q(2, 1), q(1, 1)],
            Support::real_line(),
            Arithmetic::ExactRational,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { order: 2, .. }));
        assert!(MomentFunctional::explicit(vec![q(-1, 1)], Support::real_line(), Arithmetic::ExactRational).is_err());
    }

    #[test]
    fn perturbed_moments_add_atoms() {
        let m = legendre_plus_half();
        assert_eq!(m.moment::<BigRational>(0).unwrap(), q(3, 1));
        assert_eq!(m.moment::<BigRational>(1).unwrap(), q(1, 2));
        assert_eq!(m.moment::<BigRational>(2).unwrap(), q(11, 12));
    }

    #[test]
    fn zero_mass_rejected() {
        assert!(matches!(
            PointMass::new(q(0, 1), q(0, 1)),
            Err(Error::NonPositiveMass(_))
        ));
        assert!(PointMass::new(q(0, 1), q(-1, 1)).is_err());
    }

    #[test]
    fn duplicate_locations_merge() {
        let masses = vec![
            PointMass::new(q(1, 2), q(1, 1)).unwrap(),
            PointMass::new(q(-1, 2), q(2, 1)).unwrap(),
            PointMass::new(q(1, 2), q(3, 1)).unwrap(),
        ];
        let m = PerturbedMeasure::new(exact(Family::Legendre), masses, Some(2)).unwrap();
        assert_eq!(m.masses().len(), 2);
        assert_eq!(m.masses()[0].mass(), &q(4, 1));
        assert_eq!(m.moving_index(), Some(0));
        assert_eq!(m.moving_mass().unwrap().mass(), &q(3, 1));
        assert_eq!(m.moment::<BigRational>(0).unwrap(), q(8, 1));

        // relocating the moving atom splits the merged one again
        let moved = m.with_moving_location(&q(1, 1)).unwrap();
        assert_eq!(moved.masses().len(), 3);
        assert_eq!(moved.masses()[0].mass(), &q(1, 1));
        assert_eq!(moved.moving_index(), Some(2));
    }

    #[test]
    fn bad_moving_index() {
        let masses = vec![PointMass::new(q(0, 1), q(1, 1)).unwrap()];
        assert!(matches!(
            PerturbedMeasure::new(exact(Family::Legendre), masses, Some(1)),
            Err(Error::BadMovingIndex { index: 1, count: 1 })
        ));
    }

    #[test]
    fn nonpositive_width_rejected() {
        assert!(matches!(
            GaussianMollifier::new(q(0, 1), q(0, 1), q(1, 1)),
            Err(Error::NonPositiveWidth(_))
        ));
        assert!(GaussianMollifier::new(q(0, 1), q(-1, 10), q(1, 1)).is_err());
    }

    #[test]
    fn gaussian_moment_examples() {
        let g = GaussianMollifier::new(q(3, 7), q(2, 5), q(1, 1)).unwrap();
        assert_eq!(g.moment::<BigRational>(0), q(1, 1));
        assert_eq!(g.moment::<BigRational>(1), q(3, 7));
        let std = GaussianMollifier::new(q(0, 1), q(1, 1), q(1, 1)).unwrap();
        assert_eq!(std.moment::<BigRational>(2), q(1, 2));
        // E[(γZ/√2)^4] = 3γ⁴/4
        assert_eq!(std.moment::<BigRational>(4), q(3, 4));
    }

    #[test]
    fn half_integer_gamma_recursion() {
        assert_eq!(half_integer_gamma_ratio(0), q(1, 1));
        assert_eq!(half_integer_gamma_ratio(1), q(0, 1));
        assert_eq!(half_integer_gamma_ratio(2), q(1, 2));
        assert_eq!(half_integer_gamma_ratio(4), q(3, 4));
        assert_eq!(half_integer_gamma_ratio(6), q(15, 8));
    }

    #[test]
    fn mollified_moment_examples() {
        let f = exact(Family::Legendre);
        let g = GaussianMollifier::new(q(0, 1), q(1, 1), q(1, 1)).unwrap();
        assert_eq!(mollified_moment::<BigRational>(&f, &g, 0).unwrap(), q(3, 1));
        assert_eq!(mollified_moment::<BigRational>(&f, &g, 2).unwrap(), q(7, 6));
        let mm = MollifiedMeasure::new(f, g);
        assert_eq!(mm.moments::<BigRational>(3).unwrap(), vec![q(3, 1), q(0, 1), q(7, 6)]);
    }

    #[test]
    fn mollified_approaches_point_mass() {
        let f = MomentFunctional::legendre();
        let pm = PerturbedMeasure::new(
            f.clone(),
            vec![PointMass::new(q(1, 2), q(1, 1)).unwrap()],
            Some(0),
        )
        .unwrap();
        let target: f64 = pm.moment::<TwoFloat>(4).unwrap().as_f64();
        let mut prev = f64::INFINITY;
        for e in 1..8 {
            let g = GaussianMollifier::new(q(1, 2), q(1, 1 << e), q(1, 1)).unwrap();
            let d = (mollified_moment::<TwoFloat>(&f, &g, 4).unwrap().as_f64() - target).abs();
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn symmetry_detection() {
        let f = exact(Family::Legendre);
        let pair = vec![
            PointMass::new(q(1, 2), q(1, 1)).unwrap(),
            PointMass::new(q(-1, 2), q(1, 1)).unwrap(),
        ];
        assert!(PerturbedMeasure::new(f.clone(), pair, None).unwrap().is_symmetric());
        assert!(!legendre_plus_half().is_symmetric());
        assert!(!PerturbedMeasure::unperturbed(exact(Family::Laguerre)).is_symmetric());
    }

    #[test]
    fn hull_includes_atoms() {
        let m = PerturbedMeasure::new(
            exact(Family::Laguerre),
            vec![PointMass::new(q(-3, 2), q(1, 1)).unwrap()],
            Some(0),
        )
        .unwrap();
        assert_eq!(m.hull(), (Some(-1.5), None));
    }

    proptest! {
        #[test]
        fn normalization_is_exact(p in -50i64..50, d in 1i64..20, w in 1i64..40) {
            let g = GaussianMollifier::new(q(p, d), q(w, 10), q(1, 1)).unwrap();
            prop_assert_eq!(g.moment::<BigRational>(0), q(1, 1));
        }

        // Moments about a + t equal the binomial expansion of moments about a shifted by t.
        #[test]
        fn translation_covariance(p in -20i64..20, t in -20i64..20, w in 1i64..20, k in 0usize..9) {
            let a = q(p, 7);
            let shift = q(t, 5);
            let gamma = q(w, 9);
            let shifted = GaussianMollifier::new(&a + &shift, gamma.clone(), q(1, 1)).unwrap();
            let base = GaussianMollifier::new(a, gamma, q(1, 1)).unwrap();
            let expanded = (0..=k).fold(BigRational::zero(), |acc, j| {
                acc + binomial(k, j) * pow(&shift, k - j) * base.moment::<BigRational>(j)
            });
            prop_assert_eq!(shifted.moment::<BigRational>(k), expanded);
        }
    }
}
