use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{MomentError, Result};
use crate::moments::{moment_count, slot, MomentSet};

/// Central moments `mu_pq` about the centroid, as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralMoments {
    order: u32,
    values: Vec<BigRational>,
}

impl CentralMoments {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, p: u32, q: u32) -> Option<&BigRational> {
        (p + q <= self.order).then(|| &self.values[slot(p, q)])
    }

    /// Same ordering as [`MomentSet::iter`].
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> + '_ {
        (0..=self.order).flat_map(move |r| (0..=r).rev().map(move |p| (p, r - p, &self.values[slot(p, r - p)])))
    }
}

/// `num/den` in lowest terms, always with an explicit denominator.
pub fn fraction_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * (n - k) / (k + 1);
        row.push(next);
    }
    row
}

/// Expands `mu_pq = sum_{s<=p, t<=q} C(p,s) C(q,t) (-x)^(p-s) (-y)^(q-t) M_st`
/// with `x = M10/M00`, `y = M01/M00`.
pub fn central_moments(ms: &MomentSet) -> Result<CentralMoments> {
    let order = ms.order();
    if ms.total_mass() <= 0 {
        return Err(MomentError::EmptyImage);
    }
    let m = |p: u32, q: u32| BigRational::from_integer(BigInt::from(ms.m(p, q)));
    let mass = m(0, 0);
    let (neg_x, neg_y) =
        if order >= 1 { (-m(1, 0) / &mass, -m(0, 1) / &mass) } else { (BigRational::zero(), BigRational::zero()) };
    let powers = |base: &BigRational| {
        let mut v = vec![BigRational::one()];
        for e in 0..order as usize {
            let next = &v[e] * base;
            v.push(next);
        }
        v
    };
    let (px, py) = (powers(&neg_x), powers(&neg_y));
    let binom: Vec<Vec<BigInt>> = (0..=order).map(binomial_row).collect();

    let mut values = vec![BigRational::zero(); moment_count(order)];
    for p in 0..=order {
        for q in 0..=order - p {
            let mut acc = BigRational::zero();
            for s in 0..=p {
                for t in 0..=q {
                    let c = BigRational::from_integer(&binom[p as usize][s as usize] * &binom[q as usize][t as usize]);
                    acc += c * &px[(p - s) as usize] * &py[(q - t) as usize] * m(s, t);
                }
            }
            values[slot(p, q)] = acc;
        }
    }
    Ok(CentralMoments { order, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::Image;
    use crate::oracle::oracle_moments;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn point_mass_is_centred() {
        let img = Image::from_fn(6, 4, |i, j| if (i, j) == (4, 1) { 9 } else { 0 }).unwrap();
        let mu = central_moments(&oracle_moments(&img, 4).unwrap()).unwrap();
        for (p, q, v) in mu.iter() {
            let want = if p + q == 0 { ratio(9, 1) } else { ratio(0, 1) };
            assert_eq!(*v, want, "mu{p}{q}");
        }
    }

    #[test]
    fn two_by_two_ones() {
        let img = Image::new(2, 2, vec![1; 4]).unwrap();
        let mu = central_moments(&oracle_moments(&img, 4).unwrap()).unwrap();
        assert_eq!(mu.get(2, 0).unwrap(), &ratio(1, 1));
        assert_eq!(mu.get(0, 2).unwrap(), &ratio(1, 1));
        assert_eq!(mu.get(1, 1).unwrap(), &ratio(0, 1));
        assert_eq!(mu.get(2, 2).unwrap(), &ratio(1, 4));
        assert_eq!(fraction_string(mu.get(2, 2).unwrap()), "1/4");
        assert_eq!(fraction_string(mu.get(1, 0).unwrap()), "0/1");
    }

    #[test]
    fn empty_image_is_an_error() {
        let ms = oracle_moments(&Image::zeros(3, 3).unwrap(), 4).unwrap();
        assert_eq!(central_moments(&ms), Err(MomentError::EmptyImage));
    }

    #[test]
    fn binomials() {
        let row: Vec<i64> = binomial_row(4).iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(row, [1, 4, 6, 4, 1]);
    }
}
