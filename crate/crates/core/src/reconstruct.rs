//! All fifteen raw moments up to order 4 from five projections.
//!
//! With `d`, `a`, `s` the 1-D moments of the `1:1`, `-1:1` and `1:2`
//! projections, expanding `(i+j)^r`, `(j-i)^r` and `(i+2j)^r` gives
//!
//! ```text
//! M11 = (d2 - M20 - M02) / 2
//! M21 = (d3 + a3 - 2 M03) / 6
//! M12 = (d3 - a3 - 2 M30) / 6
//! M22 = (d4 + a4 - 2 M40 - 2 M04) / 12
//! M13 = (s4 - 2 d4 + M40 - 14 M04 - 12 M22) / 24
//! M31 = (s4 - M40 - 16 M04 - 32 M13 - 24 M22) / 8
//! ```
//!
//! while `M_r0` and `M_0r` are the plain moments of the `1:0` and `0:1`
//! projections. Every division is exact.

use crate::error::{MomentError, Result};
use crate::image::Image;
use crate::moments::MomentSet;
use crate::projection::{project_all_order4_with_tally, Projection};
use crate::slope::SlopeRatio;
use crate::tally::{OpCounts, OpTally};

/// Slopes expected by [`reconstruct_order4`], in order.
pub const ORDER4_SLOPES: [SlopeRatio; 5] = [
    SlopeRatio::HORIZONTAL,
    SlopeRatio::VERTICAL,
    SlopeRatio::DIAGONAL,
    SlopeRatio::ANTI_DIAGONAL,
    SlopeRatio::ONE_TWO,
];

/// One exact division performed during reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactDivision {
    pub moment: &'static str,
    pub numerator: i128,
    pub divisor: i128,
}

impl ExactDivision {
    pub fn remainder(&self) -> i128 {
        self.numerator % self.divisor
    }
}

/// The 1-D moments the reconstruction actually consumes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Order4Moments1D {
    /// `1:0`, orders 0 through 4.
    pub horizontal: [i128; 5],
    /// `0:1`, orders 1 through 4 at indices 1..=4; index 0 is unused.
    pub vertical: [i128; 5],
    /// `1:1`, orders 2, 3, 4.
    pub diagonal: [i128; 3],
    /// `-1:1`, orders 3, 4.
    pub anti_diagonal: [i128; 2],
    /// `1:2`, order 4.
    pub slope2: i128,
}

/// Computes exactly the 1-D moments listed in [`Order4Moments1D`], sharing
/// one table of `k^2, k^3, k^4` across all five projections.
pub fn order4_moments_1d<T: OpTally>(projs: &[Projection; 5], tally: &mut T) -> Result<Order4Moments1D> {
    validate(projs)?;
    let [h, v, d, a, s] = projs;

    let sq: Vec<i128> = (0..s.len() as i128).map(|k| k * k).collect();
    let quart: Vec<i128> = sq.iter().map(|&x| x * x).collect();
    let cube: Vec<i128> = (0..d.len()).map(|k| sq[k] * k as i128).collect();
    tally.mul(2 * s.len() as u64 + d.len() as u64);

    let mut out = Order4Moments1D::default();

    for (k, &bin) in h.sums().iter().enumerate() {
        let bin = bin as i128;
        out.horizontal[0] += bin;
        out.horizontal[1] += bin * k as i128;
        out.horizontal[2] += bin * sq[k];
        out.horizontal[3] += bin * cube[k];
        out.horizontal[4] += bin * quart[k];
    }
    tally.mul(4 * h.len() as u64);
    tally.add(5 * h.len() as u64);

    for (k, &bin) in v.sums().iter().enumerate() {
        let bin = bin as i128;
        out.vertical[1] += bin * k as i128;
        out.vertical[2] += bin * sq[k];
        out.vertical[3] += bin * cube[k];
        out.vertical[4] += bin * quart[k];
    }
    tally.mul(4 * v.len() as u64);
    tally.add(4 * v.len() as u64);

    for (k, &bin) in d.sums().iter().enumerate() {
        let bin = bin as i128;
        out.diagonal[0] += bin * sq[k];
        out.diagonal[1] += bin * cube[k];
        out.diagonal[2] += bin * quart[k];
    }
    tally.mul(3 * d.len() as u64);
    tally.add(3 * d.len() as u64);

    // Negative k contribute with sign (-1)^r; accumulate both halves by |k|.
    let zero = (-a.offset()) as usize;
    let (negative, non_negative) = a.sums().split_at(zero);
    let (mut neg3, mut neg4, mut pos3, mut pos4) = (0i128, 0i128, 0i128, 0i128);
    for (idx, &bin) in negative.iter().enumerate() {
        let k = zero - idx;
        neg3 += bin as i128 * cube[k];
        neg4 += bin as i128 * quart[k];
    }
    for (k, &bin) in non_negative.iter().enumerate() {
        pos3 += bin as i128 * cube[k];
        pos4 += bin as i128 * quart[k];
    }
    out.anti_diagonal = [pos3 - neg3, pos4 + neg4];
    tally.mul(2 * a.len() as u64);
    tally.add(2 * a.len() as u64 + 2);

    for (k, &bin) in s.sums().iter().enumerate() {
        out.slope2 += bin as i128 * quart[k];
    }
    tally.mul(s.len() as u64);
    tally.add(s.len() as u64);

    Ok(out)
}

fn validate(projs: &[Projection; 5]) -> Result<()> {
    for (p, &want) in projs.iter().zip(&ORDER4_SLOPES) {
        if p.slope() != want {
            return Err(MomentError::SlopeMismatch { expected: want, actual: p.slope() });
        }
    }
    let (width, height) = (projs[0].len(), projs[1].len());
    let shapes = [
        (projs[0].offset(), projs[0].len(), 0, width),
        (projs[1].offset(), projs[1].len(), 0, height),
        (projs[2].offset(), projs[2].len(), 0, width + height - 1),
        (projs[3].offset(), projs[3].len(), 1 - width as i64, width + height - 1),
        (projs[4].offset(), projs[4].len(), 0, width + 2 * height - 2),
    ];
    if width == 0 || height == 0 || shapes.iter().any(|&(o, l, wo, wl)| o != wo || l != wl) {
        return Err(MomentError::Inconsistent(format!("projections do not describe one {width}x{height} image")));
    }
    let mass = projs[0].total_mass();
    if projs.iter().any(|p| p.total_mass() != mass) {
        return Err(MomentError::Inconsistent("projection masses differ".into()));
    }
    Ok(())
}

/// Rebuilds `M_pq` for all `p + q <= 4` from the projections returned by
/// [`project_all_order4`](crate::projection::project_all_order4).
pub fn reconstruct_order4(projs: &[Projection; 5]) -> Result<MomentSet> {
    reconstruct_order4_with_tally(projs, &mut ())
}

pub fn reconstruct_order4_with_tally<T: OpTally>(projs: &[Projection; 5], tally: &mut T) -> Result<MomentSet> {
    let m1d = order4_moments_1d(projs, tally)?;
    assemble(&m1d, tally, None)
}

/// Same as [`reconstruct_order4`], also returning every exact division it
/// performed.
pub fn reconstruct_order4_traced(projs: &[Projection; 5]) -> Result<(MomentSet, Vec<ExactDivision>)> {
    let m1d = order4_moments_1d(projs, &mut ())?;
    let mut trace = Vec::with_capacity(6);
    let ms = assemble(&m1d, &mut (), Some(&mut trace))?;
    Ok((ms, trace))
}

fn assemble<T: OpTally>(
    m1d: &Order4Moments1D,
    tally: &mut T,
    mut trace: Option<&mut Vec<ExactDivision>>,
) -> Result<MomentSet> {
    let mut divide = |moment: &'static str, numerator: i128, divisor: i128| {
        let div = ExactDivision { moment, numerator, divisor };
        if let Some(t) = trace.as_deref_mut() {
            t.push(div);
        }
        if div.remainder() != 0 {
            return Err(MomentError::Inconsistent(format!(
                "{moment} numerator {numerator} not divisible by {divisor}"
            )));
        }
        Ok(numerator / divisor)
    };

    let h = &m1d.horizontal;
    let v = &m1d.vertical;
    let [d2, d3, d4] = m1d.diagonal;
    let [a3, a4] = m1d.anti_diagonal;
    let s4 = m1d.slope2;

    let mut ms = MomentSet::zeros(4);
    ms.set(0, 0, h[0]);
    for r in 1..=4u32 {
        ms.set(r, 0, h[r as usize]);
        ms.set(0, r, v[r as usize]);
    }
    let (m20, m02, m30, m03, m40, m04) = (h[2], v[2], h[3], v[3], h[4], v[4]);

    let m11 = divide("M11", d2 - m20 - m02, 2)?;
    let m21 = divide("M21", d3 + a3 - 2 * m03, 6)?;
    let m12 = divide("M12", d3 - a3 - 2 * m30, 6)?;
    tally.add(2 + 2 + 2);
    tally.mul(1 + 1);

    let m22 = divide("M22", d4 + a4 - 2 * m40 - 2 * m04, 12)?;
    let m13 = divide("M13", s4 - 2 * d4 + m40 - 14 * m04 - 12 * m22, 24)?;
    let m31 = divide("M31", s4 - m40 - 16 * m04 - 32 * m13 - 24 * m22, 8)?;
    tally.add(3 + 4 + 4);
    tally.mul(2 + 3 + 3);

    ms.set(1, 1, m11);
    ms.set(2, 1, m21);
    ms.set(1, 2, m12);
    ms.set(2, 2, m22);
    ms.set(1, 3, m13);
    ms.set(3, 1, m31);
    Ok(ms)
}

/// Projection route end to end: project, then reconstruct.
pub fn moments_order4(img: &Image) -> Result<MomentSet> {
    moments_order4_with_tally(img, &mut ())
}

pub fn moments_order4_with_tally<T: OpTally>(img: &Image, tally: &mut T) -> Result<MomentSet> {
    let projs = project_all_order4_with_tally(img, tally);
    reconstruct_order4_with_tally(&projs, tally)
}

/// Operation counts [`moments_order4_with_tally`] reports for a
/// `width` x `height` image:
///
/// * additions `5*M*N + 11*M + 11*N + 12`
/// * multiplications `13*M + 16*N - 2`, of which `10*M + 11*N - 7` weight a
///   bin by a power of `k` and `3*M + 5*N - 5` build the power table
pub fn order4_op_model(width: usize, height: usize) -> OpCounts {
    let (m, n) = (width as u64, height as u64);
    OpCounts::new(13 * m + 16 * n - 2, 5 * m * n + 11 * m + 11 * n + 12)
}
