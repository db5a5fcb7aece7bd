//! Monotonicity experiments: sweeps of the mass location, Markov-criterion
//! sweeps of the mollified family at fixed width, and convergence of the
//! mollified zeros to the point-mass zeros as the width shrinks.
//!
//! Grid points and widths are independent work items and are fanned out on a
//! rayon pool; results are assembled by index, so tables do not depend on the
//! thread count.

use num::{BigRational, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::{GaussianMollifier, MollifiedMeasure, MomentFunctional, PerturbedMeasure, PointMass};
use crate::opoly::EngineConfig;
use crate::scalar::{format_rational, Arithmetic};
use crate::zeros::{measure_zeros, mollified_zeros, ZeroSet};

pub const DEFAULT_STRICTNESS_MARGIN: f64 = 1e-11;

/// Number of trailing convergence-table rows checked for monotone decrease.
pub const CONVERGENCE_TAIL: usize = 4;

/// Highest k in the companion |m_k(a,γ) − a^k| columns.
pub const MOMENT_ERROR_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabOptions {
    pub engine: EngineConfig,
    pub strictness_margin: f64,
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
}

impl Default for LabOptions {
    fn default() -> Self {
        LabOptions {
            engine: EngineConfig::default(),
            strictness_margin: DEFAULT_STRICTNESS_MARGIN,
            threads: None,
        }
    }
}

/// lo, lo + step, … up to and including hi.
pub fn uniform_grid(lo: &BigRational, hi: &BigRational, step: &BigRational) -> Result<Vec<BigRational>> {
    if !step.is_positive() {
        return Err(Error::InvalidGrid(format!("step must be positive, got {}", format_rational(step))));
    }
    if hi < lo {
        return Err(Error::InvalidGrid(format!(
            "upper end {} below lower end {}",
            format_rational(hi),
            format_rational(lo)
        )));
    }
    let count = ((hi - lo) / step).floor().to_usize().unwrap_or(0) + 1;
    Ok((0..count)
        .map(|i| lo + step * BigRational::from_integer(i.into()))
        .collect())
}

pub fn check_grid(points: &[BigRational]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidGrid("no grid points".into()));
    }
    if let Some(i) = points.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!(
            "points {} and {} are not strictly increasing",
            i,
            i + 1
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    StrictlyIncreasing,
    /// Zero index k (0-based) fails to increase between grid points i and i+1.
    Violated { k: usize, i: usize },
    /// Increase below the strictness margin (float mode only).
    Inconclusive { k: usize, i: usize },
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::StrictlyIncreasing => "StrictlyIncreasing",
            Verdict::Violated { .. } => "Violated",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn offending(self) -> Option<(usize, usize)> {
        match self {
            Verdict::StrictlyIncreasing => None,
            Verdict::Violated { k, i } | Verdict::Inconclusive { k, i } => Some((k, i)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub description: String,
    pub degree: usize,
    pub a_grid: Vec<BigRational>,
    /// `trajectories[k][i]` is x_{n,k+1}(a_i).
    pub trajectories: Vec<Vec<f64>>,
    /// Exact isolating brackets, `[k][i]`, when every point ran the exact path.
    pub brackets: Option<Vec<Vec<(BigRational, BigRational)>>>,
    pub verdict: Verdict,
    /// min over (k, i) of x_k(a_{i+1}) − x_k(a_i); `None` for a single point.
    pub margin: Option<f64>,
    /// Certified lower bound on the increase, from the exact brackets.
    pub exact_margin: Option<BigRational>,
}

impl SweepResult {
    /// Validates the table shape and evaluates the verdict.
    pub fn from_trajectories(
        description: String,
        a_grid: Vec<BigRational>,
        trajectories: Vec<Vec<f64>>,
        brackets: Option<Vec<Vec<(BigRational, BigRational)>>>,
        strictness_margin: f64,
    ) -> Result<Self> {
        check_grid(&a_grid)?;
        let cols = a_grid.len();
        if let Some(k) = trajectories.iter().position(|row| row.len() != cols) {
            return Err(Error::DegreeMismatch {
                expected: cols,
                got: trajectories[k].len(),
            });
        }
        if let Some(b) = &brackets {
            if b.len() != trajectories.len() || b.iter().any(|row| row.len() != cols) {
                return Err(Error::InvalidGrid("bracket table shape mismatch".into()));
            }
        }
        let margin = trajectories
            .iter()
            .flat_map(|row| row.windows(2).map(|w| w[1] - w[0]))
            .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.min(d))));
        let exact_margin = brackets.as_ref().and_then(|b| {
            b.iter()
                .flat_map(|row| row.windows(2).map(|w| &w[1].0 - &w[0].1))
                .min()
        });
        let mut s = SweepResult {
            description,
            degree: trajectories.len(),
            a_grid,
            trajectories,
            brackets,
            verdict: Verdict::StrictlyIncreasing,
            margin,
            exact_margin,
        };
        s.verdict = check_monotone(&s, strictness_margin);
        Ok(s)
    }

    pub fn is_exact(&self) -> bool {
        self.brackets.is_some()
    }
}

/// First violation in (k, i) order wins; otherwise the first step below
/// `strictness_margin` is Inconclusive. With exact brackets the test is
/// literal: the next bracket must start strictly above the previous one.
pub fn check_monotone(s: &SweepResult, strictness_margin: f64) -> Verdict {
    if let Some(brackets) = &s.brackets {
        for (k, row) in brackets.iter().enumerate() {
            for (i, w) in row.windows(2).enumerate() {
                if !(w[1].0 > w[0].1) {
                    return Verdict::Violated { k, i };
                }
            }
        }
        return Verdict::StrictlyIncreasing;
    }
    let mut inconclusive = None;
    for (k, row) in s.trajectories.iter().enumerate() {
        for (i, w) in row.windows(2).enumerate() {
            let d = w[1] - w[0];
            if !(d > 0.0) {
                return Verdict::Violated { k, i };
            }
            if d < strictness_margin && inconclusive.is_none() {
                inconclusive = Some(Verdict::Inconclusive { k, i });
            }
        }
    }
    inconclusive.unwrap_or(Verdict::StrictlyIncreasing)
}

fn par_map<T, U, F>(threads: Option<usize>, items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    let run = || items.par_iter().map(&f).collect::<Vec<Result<U>>>();
    let results = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(run),
        None => run(),
    };
    // first error by index, independent of scheduling
    results.into_iter().collect()
}

fn assemble(
    description: String,
    grid: &[BigRational],
    n: usize,
    sets: Vec<ZeroSet>,
    strictness_margin: f64,
) -> Result<SweepResult> {
    let trajectories: Vec<Vec<f64>> = (0..n)
        .map(|k| sets.iter().map(|z| z.zeros()[k]).collect())
        .collect();
    let brackets = if sets.iter().all(|z| z.brackets().is_some()) {
        Some(
            (0..n)
                .map(|k| sets.iter().map(|z| z.brackets().expect("checked")[k].clone()).collect())
                .collect(),
        )
    } else {
        None
    };
    SweepResult::from_trajectories(description, grid.to_vec(), trajectories, brackets, strictness_margin)
}

/// Moves the designated mass across `grid` and records every zero of p_n.
pub fn sweep_mass_location(
    m: &PerturbedMeasure,
    grid: &[BigRational],
    n: usize,
    opts: &LabOptions,
) -> Result<SweepResult> {
    check_grid(grid)?;
    if m.moving_mass().is_none() {
        return Err(Error::NoMovingMass);
    }
    let sets = par_map(opts.threads, grid, |a| {
        m.with_moving_location(a)
            .and_then(|moved| measure_zeros(&moved, n, &opts.engine))
            .map_err(|e| Error::AtGridPoint {
                a: format_rational(a),
                source: Box::new(e),
            })
    })?;
    assemble(m.description(), grid, n, sets, opts.strictness_margin)
}

/// Sweeps the center of M·N(x; a, γ) at fixed γ over `grid`.
pub fn markov_criterion_sweep(
    base: &MomentFunctional,
    mass: &BigRational,
    gamma: &BigRational,
    grid: &[BigRational],
    n: usize,
    opts: &LabOptions,
) -> Result<SweepResult> {
    check_grid(grid)?;
    // validates γ and M once, before fanning out
    GaussianMollifier::new(BigRational::zero(), gamma.clone(), mass.clone())?;
    let sets = par_map(opts.threads, grid, |a| {
        GaussianMollifier::new(a.clone(), gamma.clone(), mass.clone())
            .and_then(|g| mollified_zeros(&MollifiedMeasure::new(base.clone(), g), n, &opts.engine))
            .map_err(|e| Error::AtGridPoint {
                a: format_rational(a),
                source: Box::new(e),
            })
    })?;
    let description = format!(
        "{} + {}N(x;a,{})",
        base.description(),
        format_rational(mass),
        format_rational(gamma)
    );
    assemble(description, grid, n, sets, opts.strictness_margin)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub description: String,
    pub center: BigRational,
    pub mass: BigRational,
    pub degree: usize,
    pub gammas: Vec<BigRational>,
    /// Zeros of the point-mass limit.
    pub reference: ZeroSet,
    /// `errors[g][k]` = |x_k(a, γ_g) − x_k(a)|.
    pub errors: Vec<Vec<f64>>,
    pub worst_error: Vec<f64>,
    /// `moment_errors[g][k]` = |m_k(a, γ_g) − a^k| for k ≤ 4.
    pub moment_errors: Vec<Vec<f64>>,
}

impl ConvergenceTable {
    /// worst_error is nonincreasing over the last four rows (or all rows when
    /// there are fewer).
    pub fn tail_nonincreasing(&self) -> bool {
        let start = self.worst_error.len().saturating_sub(CONVERGENCE_TAIL);
        self.worst_error[start..].windows(2).all(|w| w[1] <= w[0])
    }
}

pub fn check_gammas(gammas: &[BigRational]) -> Result<()> {
    if gammas.is_empty() {
        return Err(Error::InvalidGammas("empty schedule".into()));
    }
    if let Some(g) = gammas.iter().find(|g| !g.is_positive()) {
        return Err(Error::InvalidGammas(format!("gamma {} is not positive", format_rational(g))));
    }
    if gammas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidGammas("schedule must be strictly decreasing".into()));
    }
    Ok(())
}

/// Dyadic schedule 2^-1, …, 2^-count.
pub fn dyadic_gammas(count: u32) -> Vec<BigRational> {
    (1..=count)
        .map(|e| BigRational::new(1.into(), num::BigInt::from(1u8) << e))
        .collect()
}

/// Zeros of base + M·N(x; a, γ) for each γ against those of base + M·δ(x − a).
/// The reference comes from the exact path whenever the base moments are
/// rational.
pub fn mollifier_convergence(
    base: &MomentFunctional,
    mass: &BigRational,
    a: &BigRational,
    gammas: &[BigRational],
    n: usize,
    opts: &LabOptions,
) -> Result<ConvergenceTable> {
    check_gammas(gammas)?;
    let reference_base = if base.is_rational() {
        base.with_arithmetic(Arithmetic::ExactRational)?
    } else {
        base.clone()
    };
    let point = PerturbedMeasure::new(
        reference_base,
        vec![PointMass::new(a.clone(), mass.clone())?],
        Some(0),
    )?;
    let reference = measure_zeros(&point, n, &opts.engine)?;
    let float_base = if base.arithmetic().is_exact() {
        base.with_arithmetic(Arithmetic::DEFAULT_FLOAT)?
    } else {
        base.clone()
    };

    let rows = par_map(opts.threads, gammas, |gamma| {
        let at = |e: Error| Error::AtGamma {
            gamma: format_rational(gamma),
            source: Box::new(e),
        };
        let g = GaussianMollifier::new(a.clone(), gamma.clone(), mass.clone()).map_err(at)?;
        let z = mollified_zeros(&MollifiedMeasure::new(float_base.clone(), g.clone()), n, &opts.engine)
            .map_err(at)?;
        let errors: Vec<f64> = z
            .zeros()
            .iter()
            .zip(reference.zeros())
            .map(|(x, r)| (x - r).abs())
            .collect();
        // exact rational differences, rounded once
        let moment_errors = (0..=MOMENT_ERROR_ORDER)
            .map(|k| {
                let d = g.moment::<BigRational>(k) - num::pow(a.clone(), k);
                d.abs().to_f64().unwrap_or(f64::NAN)
            })
            .collect();
        Ok((errors, moment_errors))
    })?;

    let (errors, moment_errors): (Vec<Vec<f64>>, Vec<Vec<f64>>) = rows.into_iter().unzip();
    let worst_error = errors
        .iter()
        .map(|row| row.iter().copied().fold(0.0, f64::max))
        .collect();
    Ok(ConvergenceTable {
        description: format!(
            "{} + {}N(x;{},γ)",
            base.description(),
            format_rational(mass),
            format_rational(a)
        ),
        center: a.clone(),
        mass: mass.clone(),
        degree: n,
        gammas: gammas.to_vec(),
        reference,
        errors,
        worst_error,
        moment_errors,
    })
}

/// x_{n+1,k} < x_{n,k} < x_{n+1,k+1} for every k.
pub fn interlacing_check(z_n: &ZeroSet, z_next: &ZeroSet) -> Result<bool> {
    if z_next.degree() != z_n.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: z_n.degree() + 1,
            got: z_next.degree(),
        });
    }
    let inner = z_n.zeros();
    let outer = z_next.zeros();
    Ok(inner
        .iter()
        .enumerate()
        .all(|(k, x)| outer[k] < *x && *x < outer[k + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Family;
    use crate::scalar::parse_rational;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    fn legendre_mass(mass: BigRational, arithmetic: Arithmetic) -> PerturbedMeasure {
        PerturbedMeasure::new(
            MomentFunctional::classical(Family::Legendre, false, arithmetic).unwrap(),
            vec![PointMass::new(q(0, 1), mass).unwrap()],
            Some(0),
        )
        .unwrap()
    }

    fn synthetic(rows: Vec<Vec<f64>>) -> SweepResult {
        let grid = (0..rows[0].len()).map(|i| q(i as i64, 1)).collect();
        SweepResult::from_trajectories("synthetic".into(), grid, rows, None, DEFAULT_STRICTNESS_MARGIN).unwrap()
    }

    #[test]
    fn uniform_grid_counts() {
        let g = uniform_grid(&q(-3, 2), &q(3, 2), &q(1, 20)).unwrap();
        assert_eq!(g.len(), 61);
        assert_eq!(g[60], q(3, 2));
        assert_eq!(uniform_grid(&q(0, 1), &q(1, 1), &q(2, 1)).unwrap(), vec![q(0, 1)]);
        assert!(uniform_grid(&q(0, 1), &q(1, 1), &q(0, 1)).is_err());
        assert!(uniform_grid(&q(1, 1), &q(0, 1), &q(1, 1)).is_err());
        assert!(check_grid(&[q(0, 1), q(0, 1)]).is_err());
    }

    #[test]
    fn degree_one_sweep_follows_a_over_three() {
        let m = legendre_mass(q(1, 1), Arithmetic::Float(106));
        let grid = vec![q(0, 1), parse_rational("0.6").unwrap(), parse_rational("0.9").unwrap()];
        let s = sweep_mass_location(&m, &grid, 1, &LabOptions::default()).unwrap();
        for (x, want) in s.trajectories[0].iter().zip([0.0, 0.2, 0.3]) {
            assert!((x - want).abs() < 1e-15);
        }
        assert_eq!(s.verdict, Verdict::StrictlyIncreasing);
    }

    #[test]
    fn exact_degree_one_margin() {
        let m = legendre_mass(q(1, 1), Arithmetic::ExactRational);
        let grid = uniform_grid(&q(-3, 2), &q(3, 2), &q(1, 20)).unwrap();
        let s = sweep_mass_location(&m, &grid, 1, &LabOptions::default()).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.verdict, Verdict::StrictlyIncreasing);
        assert_eq!(s.exact_margin, Some(q(1, 60)));
    }

    #[test]
    fn constant_trajectories_are_violations() {
        let s = synthetic(vec![vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]]);
        assert_eq!(s.verdict, Verdict::Violated { k: 0, i: 0 });
    }

    #[test]
    fn injected_decrease_is_located() {
        let s = synthetic(vec![vec![0.0, 0.1, 0.2, 0.3], vec![1.0, 1.1, 1.05, 1.2]]);
        assert_eq!(s.verdict, Verdict::Violated { k: 1, i: 1 });
        assert!((s.margin.unwrap() + 0.05).abs() < 1e-12);
    }

    #[test]
    fn tiny_increase_is_inconclusive() {
        let s = synthetic(vec![vec![0.0, 1e-13, 1.0]]);
        assert_eq!(s.verdict, Verdict::Inconclusive { k: 0, i: 0 });
        // violations take precedence
        let s = synthetic(vec![vec![0.0, 1e-13, 1.0], vec![2.0, 3.0, 2.5]]);
        assert_eq!(s.verdict, Verdict::Violated { k: 1, i: 1 });
    }

    #[test]
    fn exact_brackets_decide_without_margin() {
        let grid = vec![q(0, 1), q(1, 1)];
        let brackets = vec![vec![(q(0, 1), q(0, 1)), (q(1, 10u64.pow(15) as i64), q(1, 10u64.pow(15) as i64))]];
        let s = SweepResult::from_trajectories("exact".into(), grid.clone(), vec![vec![0.0, 1e-15]], Some(brackets), DEFAULT_STRICTNESS_MARGIN)
            .unwrap();
        assert_eq!(s.verdict, Verdict::StrictlyIncreasing);
        let overlap = vec![vec![(q(0, 1), q(2, 1)), (q(1, 1), q(3, 1))]];
        let s = SweepResult::from_trajectories("exact".into(), grid, vec![vec![1.0, 2.0]], Some(overlap), DEFAULT_STRICTNESS_MARGIN)
            .unwrap();
        assert_eq!(s.verdict, Verdict::Violated { k: 0, i: 0 });
    }

    #[test]
    fn single_point_grid_is_vacuous() {
        let base = MomentFunctional::legendre();
        let s = markov_criterion_sweep(&base, &q(1, 1), &q(3, 10), &[q(0, 1)], 3, &LabOptions::default()).unwrap();
        assert_eq!(s.verdict, Verdict::StrictlyIncreasing);
        assert_eq!(s.margin, None);
    }

    #[test]
    fn markov_sweep_increases_for_wide_mollifiers() {
        let base = MomentFunctional::legendre();
        let grid = uniform_grid(&q(-1, 1), &q(1, 1), &q(1, 10)).unwrap();
        for gamma in [q(10, 1), q(1, 1)] {
            let s = markov_criterion_sweep(&base, &q(1, 1), &gamma, &grid, 3, &LabOptions::default()).unwrap();
            assert_eq!(s.verdict, Verdict::StrictlyIncreasing, "gamma {gamma}");
        }
    }

    // Reference zeros from direct 40-digit quadrature of the mollified weight.
    #[test]
    fn narrow_mollifier_pulls_smallest_zero_backwards() {
        let base = MomentFunctional::legendre();
        let grid = vec![parse_rational("-0.3").unwrap(), parse_rational("-0.2").unwrap()];
        let s = markov_criterion_sweep(&base, &q(1, 1), &q(3, 10), &grid, 3, &LabOptions::default()).unwrap();
        let want = [
            [-0.731717687750985, -0.739136501080071],
            [-0.0873845210955723, -0.064983305751648],
            [0.762231083044582, 0.761729938492734],
        ];
        for (row, w) in s.trajectories.iter().zip(want) {
            for (x, y) in row.iter().zip(w) {
                assert!((x - y).abs() < 1e-13, "{x} vs {y}");
            }
        }
        assert_eq!(s.verdict, Verdict::Violated { k: 0, i: 0 });
    }

    #[test]
    fn sweep_without_moving_mass() {
        let m = PerturbedMeasure::unperturbed(MomentFunctional::legendre());
        assert!(matches!(
            sweep_mass_location(&m, &[q(0, 1)], 2, &LabOptions::default()),
            Err(Error::NoMovingMass)
        ));
    }

    #[test]
    fn grid_errors_carry_location() {
        let m = legendre_mass(q(1, 1), Arithmetic::Float(106));
        let opts = LabOptions {
            engine: EngineConfig {
                float_degree_cap: 2,
                ..EngineConfig::default()
            },
            ..LabOptions::default()
        };
        let err = sweep_mass_location(&m, &[q(1, 2)], 3, &opts).unwrap_err();
        assert!(matches!(err, Error::AtGridPoint { ref a, .. } if a == "1/2"), "{err}");
    }

    #[test]
    fn reflection_symmetry() {
        for family in [Family::Legendre, Family::ChebyshevFirstKind, Family::Hermite] {
            let base = MomentFunctional::classical(family, false, Arithmetic::Float(106)).unwrap();
            let m = PerturbedMeasure::new(base, vec![PointMass::new(q(0, 1), q(1, 1)).unwrap()], Some(0)).unwrap();
            let grid = uniform_grid(&q(-3, 2), &q(3, 2), &q(1, 4)).unwrap();
            let mirrored: Vec<BigRational> = grid.iter().rev().map(|a| -a).collect();
            let n = 4;
            let s = sweep_mass_location(&m, &grid, n, &LabOptions::default()).unwrap();
            let r = sweep_mass_location(&m, &mirrored, n, &LabOptions::default()).unwrap();
            let cols = grid.len();
            for k in 0..n {
                for i in 0..cols {
                    let lhs = s.trajectories[k][i];
                    let rhs = -r.trajectories[n - 1 - k][cols - 1 - i];
                    assert!((lhs - rhs).abs() < 1e-13, "{family:?} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn hermite_convergence_is_trivial_at_origin() {
        let base = MomentFunctional::classical(Family::Hermite, false, Arithmetic::Float(106)).unwrap();
        let t = mollifier_convergence(&base, &q(1, 1), &q(0, 1), &dyadic_gammas(3), 1, &LabOptions::default()).unwrap();
        assert!(t.worst_error.iter().all(|e| *e < 1e-15));
    }

    #[test]
    fn convergence_table_shape() {
        let base = MomentFunctional::legendre();
        let t = mollifier_convergence(&base, &q(1, 1), &q(1, 2), &dyadic_gammas(10), 3, &LabOptions::default()).unwrap();
        assert_eq!(t.errors.len(), 10);
        assert_eq!(t.moment_errors[0].len(), MOMENT_ERROR_ORDER + 1);
        assert!(t.tail_nonincreasing());
        // m_0 and m_1 are reproduced exactly
        assert!(t.moment_errors.iter().all(|row| row[0] == 0.0 && row[1] == 0.0));
        assert!(t.moment_errors.windows(2).all(|w| w[1][2] < w[0][2]));
        let one = mollifier_convergence(&base, &q(1, 1), &q(1, 2), &[q(1, 8)], 3, &LabOptions::default()).unwrap();
        assert_eq!(one.errors.len(), 1);
    }

    #[test]
    fn gamma_schedule_validation() {
        assert!(check_gammas(&[]).is_err());
        assert!(check_gammas(&[q(1, 2), q(1, 2)]).is_err());
        assert!(check_gammas(&[q(1, 2), q(0, 1)]).is_err());
        assert!(check_gammas(&[q(1, 4), q(1, 2)]).is_err());
        assert!(check_gammas(&dyadic_gammas(10)).is_ok());
    }

    #[test]
    fn interlacing_examples() {
        let base = MomentFunctional::classical(Family::Legendre, false, Arithmetic::ExactRational).unwrap();
        let pure = PerturbedMeasure::unperturbed(base.clone());
        let cfg = EngineConfig::default();
        let z1 = measure_zeros(&pure, 1, &cfg).unwrap();
        let z2 = measure_zeros(&pure, 2, &cfg).unwrap();
        assert!(interlacing_check(&z1, &z2).unwrap());
        assert!(!interlacing_check(&z2, &z2).unwrap_or(false));
        assert!(matches!(interlacing_check(&z2, &z2), Err(Error::DegreeMismatch { .. })));
        let m = PerturbedMeasure::new(base, vec![PointMass::new(q(1, 2), q(1, 1)).unwrap()], Some(0)).unwrap();
        let z2 = measure_zeros(&m, 2, &cfg).unwrap();
        let z3 = measure_zeros(&m, 3, &cfg).unwrap();
        assert!(interlacing_check(&z2, &z3).unwrap());
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let m = legendre_mass(q(1, 1), Arithmetic::Float(106));
        let grid = uniform_grid(&q(-3, 2), &q(3, 2), &q(1, 20)).unwrap();
        let one = sweep_mass_location(&m, &grid, 4, &LabOptions { threads: Some(1), ..LabOptions::default() }).unwrap();
        let four = sweep_mass_location(&m, &grid, 4, &LabOptions { threads: Some(4), ..LabOptions::default() }).unwrap();
        assert_eq!(one, four);
    }
}
