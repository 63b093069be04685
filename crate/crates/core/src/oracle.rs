//! Direct double-loop evaluation of `M_pq = sum I(i,j) * i^p * j^q`.
//!
//! This is the ground truth for every other pipeline and the baseline for
//! benchmarks, so it stays deliberately plain: one pass over the pixels,
//! incremental powers, nothing else. It is single-threaded on purpose;
//! parallelizing it would skew timing comparisons against the projection
//! path.

use crate::error::{MomentError, Result};
use crate::image::{fits_i128, Image};
use crate::moments::{moment_count, slot, MomentSet, MAX_ORDER};
use crate::tally::OpTally;

pub fn oracle_moments(img: &Image, r_max: u32) -> Result<MomentSet> {
    oracle_moments_with_tally(img, r_max, &mut ())
}

/// Per pixel this performs `r_max` multiplications for `v*i^p` and
/// `r_max*(r_max+1)/2` more for the `j^q` chains (14 at order 4), plus one
/// addition per moment.
pub fn oracle_moments_with_tally<T: OpTally>(img: &Image, r_max: u32, tally: &mut T) -> Result<MomentSet> {
    if r_max > MAX_ORDER {
        return Err(MomentError::OrderOutOfRange { order: r_max, min: 0, max: MAX_ORDER });
    }
    let (width, height) = (img.width(), img.height());
    let reach = (width.max(height) - 1) as u128;
    if !fits_i128(255 * width as u128 * height as u128, reach, r_max) {
        return Err(MomentError::Overflow { order: r_max, width, height });
    }

    let acc = match r_max {
        0 => accumulate::<0, _>(img, tally),
        1 => accumulate::<1, _>(img, tally),
        2 => accumulate::<2, _>(img, tally),
        3 => accumulate::<3, _>(img, tally),
        4 => accumulate::<4, _>(img, tally),
        5 => accumulate::<5, _>(img, tally),
        6 => accumulate::<6, _>(img, tally),
        7 => accumulate::<7, _>(img, tally),
        _ => accumulate::<8, _>(img, tally),
    };

    let mut ms = MomentSet::zeros(r_max);
    for p in 0..=r_max {
        for q in 0..=r_max - p {
            ms.set(p, q, acc[slot(p, q)]);
        }
    }
    Ok(ms)
}

/// The double loop itself, with the order fixed at compile time so the
/// exponent loops unroll.
fn accumulate<const R: u32, T: OpTally>(img: &Image, tally: &mut T) -> [i128; moment_count(MAX_ORDER)] {
    let width = img.width();
    let mut acc = [0i128; moment_count(MAX_ORDER)];
    let rm = R as u64;
    for (j, row) in img.rows().enumerate() {
        let j = j as i128;
        for (i, &v) in row.iter().enumerate() {
            let i = i as i128;
            let mut vip = v as i128;
            for p in 0..=R {
                if p > 0 {
                    vip *= i;
                }
                let mut term = vip;
                for q in 0..=R - p {
                    if q > 0 {
                        term *= j;
                    }
                    acc[slot(p, q)] += term;
                }
            }
        }
        tally.mul(width as u64 * (rm + rm * (rm + 1) / 2));
        tally.add(width as u64 * moment_count(R) as u64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tally::OpCounts;

    #[test]
    fn two_by_two_ones() {
        let img = Image::new(2, 2, vec![1; 4]).unwrap();
        let ms = oracle_moments(&img, 4).unwrap();
        for (p, q, want) in [(0, 0, 4), (1, 0, 2), (0, 1, 2), (1, 1, 1), (2, 0, 2), (0, 2, 2), (4, 0, 2), (2, 2, 1)] {
            assert_eq!(ms.m(p, q), want, "M{p}{q}");
        }
    }

    #[test]
    fn single_pixel() {
        let img = Image::from_fn(4, 5, |i, j| if (i, j) == (2, 3) { 5 } else { 0 }).unwrap();
        let ms = oracle_moments(&img, 4).unwrap();
        assert_eq!(ms.m(3, 1), 120);
        assert_eq!(ms.m(1, 3), 270);
    }

    #[test]
    fn zero_image() {
        let ms = oracle_moments(&Image::zeros(5, 3).unwrap(), 8).unwrap();
        assert!(ms.iter().all(|(_, _, v)| v == 0));
    }

    #[test]
    fn op_count_per_pixel() {
        let img = Image::zeros(10, 7).unwrap();
        let mut c = OpCounts::default();
        oracle_moments_with_tally(&img, 4, &mut c).unwrap();
        assert_eq!(c, OpCounts::new(14 * 70, 15 * 70));
    }

    #[test]
    fn order_limits() {
        let img = Image::zeros(2, 2).unwrap();
        assert!(matches!(oracle_moments(&img, 9), Err(MomentError::OrderOutOfRange { .. })));
        let big = Image::zeros(8192, 8192).unwrap();
        assert!(matches!(oracle_moments(&big, 8), Err(MomentError::Overflow { .. })));
    }
}
