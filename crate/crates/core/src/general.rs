//! Moments of any order up to [`MAX_ORDER`] by solving, for each order `r`,
//! the square system that ties `r + 1` projection moments of order `r` to
//! the `r + 1` unknowns `M_{r,0}, M_{r-1,1}, ..., M_{0,r}`.
//!
//! For slope `a:b`, `(a*i + b*j)^r = sum_p C(r,p) a^p b^(r-p) i^p j^(r-p)`,
//! so row `t` of the system has coefficients `C(r,p) a_t^p b_t^(r-p)`. Rows
//! from pairwise direction-distinct slopes make the matrix nonsingular.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{MomentError, Result};
use crate::image::{fits_i128, Image};
use crate::moments::{MomentSet, MAX_ORDER};
use crate::projection::{moments_1d_batch_with_tally, project_with_tally, Moment1D};
use crate::slope::SlopeRatio;
use crate::tally::OpTally;

/// Lowest order handled by a solved system; 0 and 1 come straight from the
/// axis projections.
pub const MIN_PLAN_ORDER: u32 = 2;

const fn s(a: i64, b: i64) -> SlopeRatio {
    // only used on literals below, all in lowest terms
    match SlopeRatio::new_const(a, b) {
        Some(s) => s,
        None => panic!("invalid slope literal"),
    }
}

/// Preference order for plan slopes: small `|a| + |b|` first, positive
/// quadrant before reflections.
const SLOPE_PREFERENCE: [SlopeRatio; 12] =
    [s(1, 0), s(0, 1), s(1, 1), s(-1, 1), s(1, 2), s(2, 1), s(-1, 2), s(2, -1), s(1, 3), s(3, 1), s(-1, 3), s(3, -1)];

/// Slopes used to resolve the moments of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopePlan {
    order: u32,
    slopes: Vec<SlopeRatio>,
}

impl SlopePlan {
    pub fn new(order: u32, slopes: Vec<SlopeRatio>) -> Result<Self> {
        check_plan_order(order)?;
        if slopes.len() != order as usize + 1 {
            return Err(MomentError::InvalidPlan(format!(
                "order {order} needs {} slopes, got {}",
                order + 1,
                slopes.len()
            )));
        }
        for (t, a) in slopes.iter().enumerate() {
            if let Some(b) = slopes[t + 1..].iter().find(|b| a.same_direction(b)) {
                return Err(MomentError::InvalidPlan(format!("slopes {a} and {b} share a direction")));
            }
        }
        for axis in [SlopeRatio::HORIZONTAL, SlopeRatio::VERTICAL] {
            if !slopes.iter().any(|sl| sl.same_direction(&axis)) {
                return Err(MomentError::InvalidPlan(format!("plan lacks the {axis} projection")));
            }
        }
        Ok(SlopePlan { order, slopes })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn slopes(&self) -> &[SlopeRatio] {
        &self.slopes
    }

    /// Determinant of the plan's coefficient matrix, by fraction-free
    /// elimination.
    pub fn determinant(&self) -> BigInt {
        let rows = coefficient_matrix(self.order, &self.slopes);
        bareiss_determinant(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }
}

fn check_plan_order(order: u32) -> Result<()> {
    if !(MIN_PLAN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(MomentError::OrderOutOfRange { order, min: MIN_PLAN_ORDER, max: MAX_ORDER });
    }
    Ok(())
}

/// `1:0, 0:1, 1:1, -1:1, 1:2, 2:1, -1:2, 2:-1, 1:3`, truncated to `r + 1`.
pub fn default_slope_plan(r: u32) -> Result<SlopePlan> {
    check_plan_order(r)?;
    let plan = SlopePlan::new(r, SLOPE_PREFERENCE[..r as usize + 1].to_vec())?;
    debug_assert!(!plan.determinant().is_zero());
    Ok(plan)
}

/// Distinct slopes projected by [`moments_general`] for orders up to `r_max`.
pub fn general_slope_union(r_max: u32) -> Result<Vec<SlopeRatio>> {
    check_plan_order(r_max)?;
    // default plans are nested prefixes, so the largest one covers the rest
    Ok(default_slope_plan(r_max)?.slopes)
}

/// `C(r,p) * a^p * b^(r-p)`.
pub fn binomial_coefficient(r: u32, p: u32, slope: SlopeRatio) -> i128 {
    binomial(r as i128, p as i128) * (slope.a() as i128).pow(p) * (slope.b() as i128).pow(r - p)
}

fn coefficient_matrix(order: u32, slopes: &[SlopeRatio]) -> Vec<Vec<i128>> {
    slopes.iter().map(|&sl| (0..=order).rev().map(|p| binomial_coefficient(order, p, sl)).collect()).collect()
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Linear system for one order: `matrix * [M_{r,0}, ..., M_{0,r}] = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialSystem {
    pub order: u32,
    /// Row `t`, column `c` holds the coefficient of `M_{r-c, c}` for slope `t`.
    pub matrix: Vec<Vec<i128>>,
    pub rhs: Vec<i128>,
}

pub fn build_system(plan: &SlopePlan, moments: &[Moment1D]) -> Result<BinomialSystem> {
    if moments.len() != plan.slopes.len() {
        return Err(MomentError::InvalidPlan(format!(
            "{} slopes but {} 1-D moments",
            plan.slopes.len(),
            moments.len()
        )));
    }
    for (m, &sl) in moments.iter().zip(&plan.slopes) {
        if m.slope != sl {
            return Err(MomentError::SlopeMismatch { expected: sl, actual: m.slope });
        }
        if m.order != plan.order {
            return Err(MomentError::MomentOrderMismatch { expected: plan.order, actual: m.order });
        }
    }
    Ok(BinomialSystem {
        order: plan.order,
        matrix: coefficient_matrix(plan.order, &plan.slopes),
        rhs: moments.iter().map(|m| m.value).collect(),
    })
}

/// Solves by Gaussian elimination over exact rationals. Returns
/// `(p, r - p, M_{p,r-p})` for `p = r, r-1, ..., 0`.
pub fn solve_exact(sys: &BinomialSystem) -> Result<Vec<(u32, u32, i128)>> {
    solve_exact_with_tally(sys, &mut ())
}

pub fn solve_exact_with_tally<T: OpTally>(sys: &BinomialSystem, tally: &mut T) -> Result<Vec<(u32, u32, i128)>> {
    let n = sys.order as usize + 1;
    if sys.matrix.len() != n || sys.rhs.len() != n || sys.matrix.iter().any(|r| r.len() != n) {
        return Err(MomentError::InvalidPlan(format!("system is not {n}x{n}")));
    }
    let q = |v: i128| BigRational::from_integer(BigInt::from(v));
    let mut aug: Vec<Vec<BigRational>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, &b)| row.iter().map(|&v| q(v)).chain(std::iter::once(q(b))).collect())
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| MomentError::InvalidPlan("singular system matrix".into()))?;
        aug.swap(col, pivot);
        for row in col + 1..n {
            if aug[row][col].is_zero() {
                continue;
            }
            let factor = &aug[row][col] / &aug[col][col];
            let (upper, lower) = aug.split_at_mut(row);
            for (target, source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= &factor * source;
            }
            tally.mul((n + 1 - col) as u64);
            tally.add((n + 1 - col) as u64);
        }
    }

    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = aug[i][n].clone();
        for c in i + 1..n {
            acc -= &aug[i][c] * &x[c];
        }
        tally.mul((n - 1 - i) as u64);
        tally.add((n - 1 - i) as u64);
        x[i] = acc / &aug[i][i];
    }

    let r = sys.order;
    x.into_iter()
        .enumerate()
        .map(|(c, v)| {
            let (p, qq) = (r - c as u32, c as u32);
            if !v.is_integer() {
                return Err(MomentError::Inconsistent(format!("M{p}{qq} solved to non-integer {v}")));
            }
            let value = v
                .to_integer()
                .to_i128()
                .ok_or_else(|| MomentError::Inconsistent(format!("M{p}{qq} exceeds 128 bits")))?;
            Ok((p, qq, value))
        })
        .collect()
}

/// Every moment up to `r_max` via the default plans. Each slope in the
/// union of plans is projected exactly once.
pub fn moments_general(img: &Image, r_max: u32) -> Result<MomentSet> {
    moments_general_with_tally(img, r_max, &mut ())
}

pub fn moments_general_with_tally<T: OpTally>(img: &Image, r_max: u32, tally: &mut T) -> Result<MomentSet> {
    let slopes = general_slope_union(r_max)?;
    let (width, height) = (img.width(), img.height());
    let reach = slopes
        .iter()
        .map(|sl| {
            (sl.a().unsigned_abs() as u128) * (width as u128 - 1)
                + (sl.b().unsigned_abs() as u128) * (height as u128 - 1)
        })
        .max()
        .unwrap_or(0);
    if !fits_i128(255 * width as u128 * height as u128, reach, r_max) {
        return Err(MomentError::Overflow { order: r_max, width, height });
    }

    // per_slope[t][r] = order-r moment of slope t
    let per_slope: Vec<Vec<Moment1D>> = slopes
        .iter()
        .map(|&sl| moments_1d_batch_with_tally(&project_with_tally(img, sl, tally), r_max, tally))
        .collect::<Result<_>>()?;

    let mut ms = MomentSet::zeros(r_max);
    ms.set(0, 0, per_slope[0][0].value);
    ms.set(1, 0, per_slope[0][1].value);
    ms.set(0, 1, per_slope[1][1].value);
    for r in MIN_PLAN_ORDER..=r_max {
        let plan = default_slope_plan(r)?;
        let moments: Vec<Moment1D> = (0..plan.slopes.len()).map(|t| per_slope[t][r as usize]).collect();
        let sys = build_system(&plan, &moments)?;
        for (p, q, v) in solve_exact_with_tally(&sys, tally)? {
            ms.set(p, q, v);
        }
    }
    Ok(ms)
}
