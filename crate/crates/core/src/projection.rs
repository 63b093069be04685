//! Discrete Radon projections and their 1-D moments.

use crate::error::{MomentError, Result};
use crate::image::{fits_i128, Image};
use crate::slope::SlopeRatio;
use crate::tally::OpTally;

/// Highest 1-D moment order accepted by [`moment_1d`] and [`moments_1d_batch`].
pub const MAX_ORDER_1D: u32 = 8;

/// Line sums of an image along one slope. `sums[k - offset]` holds the sum
/// of all pixels with `a*i + b*j == k`; `offset` is the smallest such `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Projection {
    slope: SlopeRatio,
    offset: i64,
    sums: Vec<u64>,
}

impl Projection {
    pub fn new(slope: SlopeRatio, offset: i64, sums: Vec<u64>) -> Self {
        Projection { slope, offset, sums }
    }

    pub fn slope(&self) -> SlopeRatio {
        self.slope
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn sums(&self) -> &[u64] {
        &self.sums
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Bin value at signed index `k`, zero outside the stored range.
    pub fn at(&self, k: i64) -> u64 {
        usize::try_from(k - self.offset).ok().and_then(|idx| self.sums.get(idx).copied()).unwrap_or(0)
    }

    /// `(k, sum)` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.sums.iter().enumerate().map(move |(idx, &s)| (self.offset + idx as i64, s))
    }

    pub fn total_mass(&self) -> u64 {
        self.sums.iter().sum()
    }

    fn max_abs_index(&self) -> u128 {
        let last = self.offset + self.sums.len().saturating_sub(1) as i64;
        self.offset.unsigned_abs().max(last.unsigned_abs()) as u128
    }
}

/// Order-`r` moment of one projection, `sum_k R[k] * k^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Moment1D {
    pub slope: SlopeRatio,
    pub order: u32,
    pub value: i128,
}

#[inline]
fn add_row(dst: &mut [u64], row: &[u8]) {
    for (d, &v) in dst.iter_mut().zip(row) {
        *d += v as u64;
    }
}

#[inline]
fn add_row_reversed(dst: &mut [u64], row: &[u8]) {
    for (d, &v) in dst.iter_mut().zip(row.iter().rev()) {
        *d += v as u64;
    }
}

#[inline]
fn row_sum(row: &[u8]) -> u64 {
    row.iter().map(|&v| v as u64).sum()
}

/// Projects `img` along `slope`.
pub fn project(img: &Image, slope: SlopeRatio) -> Projection {
    project_with_tally(img, slope, &mut ())
}

pub fn project_with_tally<T: OpTally>(img: &Image, slope: SlopeRatio, tally: &mut T) -> Projection {
    let (width, height) = (img.width(), img.height());
    let (k_min, k_max) = slope.bin_range(width, height);
    let mut sums = vec![0u64; (k_max - k_min + 1) as usize];
    let a = slope.a();
    for (j, row) in img.rows().enumerate() {
        // bin of pixel (0, j), relative to k_min
        let base = (slope.b() * j as i64 - k_min) as usize;
        match a {
            0 => sums[base] += row_sum(row),
            1 => add_row(&mut sums[base..base + width], row),
            -1 => add_row_reversed(&mut sums[base + 1 - width..=base], row),
            _ => {
                for (i, &v) in row.iter().enumerate() {
                    sums[(base as i64 + a * i as i64) as usize] += v as u64;
                }
            }
        }
        tally.add(width as u64);
    }
    debug_assert_eq!(sums.iter().sum::<u64>(), img.total_mass());
    Projection { slope, offset: k_min, sums }
}

/// The five projections needed for every moment up to order 4, in the order
/// `1:0, 0:1, 1:1, -1:1, 1:2`. Computed in one pass over the rows.
pub fn project_all_order4(img: &Image) -> [Projection; 5] {
    project_all_order4_with_tally(img, &mut ())
}

pub fn project_all_order4_with_tally<T: OpTally>(img: &Image, tally: &mut T) -> [Projection; 5] {
    let (width, height) = (img.width(), img.height());
    let mut columns = vec![0u64; width];
    let mut rows = vec![0u64; height];
    let mut diagonal = vec![0u64; width + height - 1];
    // k = j - i, stored at j - i + width - 1
    let mut anti = vec![0u64; width + height - 1];
    let mut slope2 = vec![0u64; width + 2 * height - 2];
    for (j, row) in img.rows().enumerate() {
        add_row(&mut columns, row);
        rows[j] = row_sum(row);
        add_row(&mut diagonal[j..j + width], row);
        add_row_reversed(&mut anti[j..j + width], row);
        add_row(&mut slope2[2 * j..2 * j + width], row);
        tally.add(5 * width as u64);
    }
    [
        Projection { slope: SlopeRatio::HORIZONTAL, offset: 0, sums: columns },
        Projection { slope: SlopeRatio::VERTICAL, offset: 0, sums: rows },
        Projection { slope: SlopeRatio::DIAGONAL, offset: 0, sums: diagonal },
        Projection { slope: SlopeRatio::ANTI_DIAGONAL, offset: 1 - width as i64, sums: anti },
        Projection { slope: SlopeRatio::ONE_TWO, offset: 0, sums: slope2 },
    ]
}

fn check_order(r: u32) -> Result<()> {
    if r > MAX_ORDER_1D {
        return Err(MomentError::OrderOutOfRange { order: r, min: 0, max: MAX_ORDER_1D });
    }
    Ok(())
}

fn check_fits(proj: &Projection, r: u32) -> Result<()> {
    if fits_i128(proj.total_mass() as u128, proj.max_abs_index(), r) {
        Ok(())
    } else {
        Err(MomentError::Overflow { order: r, width: proj.len(), height: 1 })
    }
}

/// `sum_k R[k] * k^r` over the true signed indices, with `0^0 = 1`.
pub fn moment_1d(proj: &Projection, r: u32) -> Result<Moment1D> {
    check_order(r)?;
    check_fits(proj, r)?;
    let value = proj.iter().map(|(k, s)| s as i128 * (k as i128).pow(r)).sum();
    Ok(Moment1D { slope: proj.slope, order: r, value })
}

/// All moments of orders `0..=r_max`, sharing one incremental power chain
/// per bin.
pub fn moments_1d_batch(proj: &Projection, r_max: u32) -> Result<Vec<Moment1D>> {
    moments_1d_batch_with_tally(proj, r_max, &mut ())
}

pub fn moments_1d_batch_with_tally<T: OpTally>(proj: &Projection, r_max: u32, tally: &mut T) -> Result<Vec<Moment1D>> {
    check_order(r_max)?;
    check_fits(proj, r_max)?;
    let mut acc = vec![0i128; r_max as usize + 1];
    for (k, s) in proj.iter() {
        let (k, s) = (k as i128, s as i128);
        acc[0] += s;
        let mut power = k;
        for (r, slot) in acc.iter_mut().enumerate().skip(1) {
            if r > 1 {
                power *= k;
            }
            *slot += s * power;
        }
    }
    let bins = proj.len() as u64;
    let rm = r_max as u64;
    tally.mul(bins * (rm.saturating_sub(1) + rm));
    tally.add(bins * (rm + 1));
    Ok(acc.into_iter().enumerate().map(|(r, value)| Moment1D { slope: proj.slope, order: r as u32, value }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tally::OpCounts;

    fn ones(w: usize, h: usize) -> Image {
        Image::new(w, h, vec![1; w * h]).unwrap()
    }

    #[test]
    fn two_by_two_ones() {
        let img = ones(2, 2);
        let d = project(&img, SlopeRatio::DIAGONAL);
        assert_eq!((d.offset(), d.sums()), (0, &[1, 2, 1][..]));
        let a = project(&img, SlopeRatio::ANTI_DIAGONAL);
        assert_eq!((a.offset(), a.sums()), (-1, &[1, 2, 1][..]));
        let s = project(&img, SlopeRatio::ONE_TWO);
        assert_eq!((s.offset(), s.sums()), (0, &[1, 1, 1, 1][..]));
    }

    #[test]
    fn horizontal_is_column_sums() {
        let img = Image::from_fn(3, 2, |i, j| (1 + i + 3 * j) as u8).unwrap();
        let h = project(&img, SlopeRatio::HORIZONTAL);
        assert_eq!(h.sums(), &[1 + 4, 2 + 5, 3 + 6]);
        let v = project(&img, SlopeRatio::VERTICAL);
        assert_eq!(v.sums(), &[6, 15]);
    }

    #[test]
    fn tight_lengths() {
        let img = ones(7, 5);
        assert_eq!(project(&img, SlopeRatio::DIAGONAL).len(), 7 + 5 - 1);
        assert_eq!(project(&img, SlopeRatio::ONE_TWO).len(), 7 + 10 - 2);
        assert_eq!(project(&img, SlopeRatio::new(-1, 2).unwrap()).len(), 6 + 8 + 1);
    }

    #[test]
    fn order4_single_pixel_and_zero() {
        let img = image_from(1, 1, &[9]);
        for p in project_all_order4(&img) {
            assert_eq!(p.sums(), &[9]);
        }
        for p in project_all_order4(&Image::zeros(4, 3).unwrap()) {
            assert!(p.sums().iter().all(|&s| s == 0));
        }
    }

    fn image_from(w: usize, h: usize, px: &[u8]) -> Image {
        Image::new(w, h, px.to_vec()).unwrap()
    }

    #[test]
    fn moment_1d_examples() {
        let p = Projection::new(SlopeRatio::HORIZONTAL, 0, vec![1, 2, 3]);
        assert_eq!(moment_1d(&p, 2).unwrap().value, 14);
        assert_eq!(moment_1d(&p, 0).unwrap().value, 6);
        let anti = Projection::new(SlopeRatio::ANTI_DIAGONAL, -1, vec![1, 2, 1]);
        assert_eq!(moment_1d(&anti, 3).unwrap().value, 0);
        assert!(moment_1d(&p, 9).is_err());
    }

    #[test]
    fn batch_examples() {
        let p = Projection::new(SlopeRatio::HORIZONTAL, 0, vec![1, 2, 3]);
        let vals: Vec<i128> = moments_1d_batch(&p, 2).unwrap().iter().map(|m| m.value).collect();
        assert_eq!(vals, [6, 8, 14]);
        let single = Projection::new(SlopeRatio::VERTICAL, 0, vec![11]);
        let vals: Vec<i128> = moments_1d_batch(&single, 5).unwrap().iter().map(|m| m.value).collect();
        assert_eq!(vals, [11, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn batch_op_counts() {
        let p = Projection::new(SlopeRatio::HORIZONTAL, 0, vec![1; 10]);
        let mut c = OpCounts::default();
        moments_1d_batch_with_tally(&p, 4, &mut c).unwrap();
        assert_eq!(c, OpCounts::new(10 * 7, 10 * 5));
    }

    #[test]
    fn project_counts_one_add_per_pixel() {
        let img = ones(6, 4);
        let mut c = OpCounts::default();
        project_with_tally(&img, SlopeRatio::new(2, -1).unwrap(), &mut c);
        assert_eq!(c.additions, 24);
        c.reset();
        project_all_order4_with_tally(&img, &mut c);
        assert_eq!(c, OpCounts::new(0, 5 * 24));
    }
}
