use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{MomentError, Result};

/// Integer projection direction `a:b`. A pixel `(i, j)` falls into bin
/// `k = a*i + b*j`.
///
/// Always stored in lowest terms and never `0:0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlopeRatio {
    a: i64,
    b: i64,
}

impl SlopeRatio {
    /// Horizontal projection, one bin per column.
    pub const HORIZONTAL: SlopeRatio = SlopeRatio { a: 1, b: 0 };
    /// Vertical projection, one bin per row.
    pub const VERTICAL: SlopeRatio = SlopeRatio { a: 0, b: 1 };
    pub const DIAGONAL: SlopeRatio = SlopeRatio { a: 1, b: 1 };
    pub const ANTI_DIAGONAL: SlopeRatio = SlopeRatio { a: -1, b: 1 };
    /// Slope 2 (about 63.4 degrees), bins `k = i + 2j`.
    pub const ONE_TWO: SlopeRatio = SlopeRatio { a: 1, b: 2 };

    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(MomentError::InvalidSlope { a, b, reason: "both components are zero" });
        }
        if a.gcd(&b) != 1 {
            return Err(MomentError::InvalidSlope { a, b, reason: "not in lowest terms" });
        }
        Ok(SlopeRatio { a, b })
    }

    pub(crate) const fn new_const(a: i64, b: i64) -> Option<Self> {
        let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        if x == 1 {
            Some(SlopeRatio { a, b })
        } else {
            None
        }
    }

    /// Divides out the common factor of `a` and `b`.
    pub fn reduced(a: i64, b: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(MomentError::InvalidSlope { a, b, reason: "both components are zero" });
        }
        let g = a.gcd(&b);
        Ok(SlopeRatio { a: a / g, b: b / g })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn negated(&self) -> Self {
        SlopeRatio { a: -self.a, b: -self.b }
    }

    /// True when both slopes sum pixels along the same family of lines.
    pub fn same_direction(&self, other: &SlopeRatio) -> bool {
        self == other || *self == other.negated()
    }

    /// Display-only angle `atan2(b, a)` in degrees.
    pub fn angle_degrees(&self) -> f64 {
        (self.b as f64).atan2(self.a as f64).to_degrees()
    }

    /// Bin index of pixel `(i, j)`.
    #[inline]
    pub fn bin(&self, i: i64, j: i64) -> i64 {
        self.a * i + self.b * j
    }

    /// Smallest and largest bin index over a `width` x `height` grid.
    pub fn bin_range(&self, width: usize, height: usize) -> (i64, i64) {
        let xs = self.a * (width as i64 - 1);
        let ys = self.b * (height as i64 - 1);
        (xs.min(0) + ys.min(0), xs.max(0) + ys.max(0))
    }
}

impl fmt::Display for SlopeRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

impl FromStr for SlopeRatio {
    type Err = MomentError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || MomentError::InvalidSlope { a: 0, b: 0, reason: "expected `a:b` with integer components" };
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        SlopeRatio::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_unreduced() {
        assert!(SlopeRatio::new(0, 0).is_err());
        assert!(SlopeRatio::new(2, 4).is_err());
        assert!(SlopeRatio::new(0, 2).is_err());
        assert_eq!(SlopeRatio::reduced(2, 4).unwrap(), SlopeRatio::ONE_TWO);
        assert_eq!(SlopeRatio::reduced(-3, 0).unwrap(), SlopeRatio::new(-1, 0).unwrap());
    }

    #[test]
    fn direction_equality() {
        let s = SlopeRatio::new(-1, 2).unwrap();
        assert!(s.same_direction(&SlopeRatio::new(1, -2).unwrap()));
        assert!(!s.same_direction(&SlopeRatio::ONE_TWO));
        assert!(SlopeRatio::ANTI_DIAGONAL.same_direction(&SlopeRatio::new(1, -1).unwrap()));
    }

    #[test]
    fn angle_is_display_only() {
        assert!((SlopeRatio::ONE_TWO.angle_degrees() - 63.4349).abs() < 1e-3);
        assert!((SlopeRatio::ANTI_DIAGONAL.angle_degrees() - 135.0).abs() < 1e-9);
    }

    #[test]
    fn bin_range_covers_extremes() {
        assert_eq!(SlopeRatio::DIAGONAL.bin_range(4, 3), (0, 5));
        assert_eq!(SlopeRatio::ANTI_DIAGONAL.bin_range(4, 3), (-3, 2));
        assert_eq!(SlopeRatio::ONE_TWO.bin_range(4, 3), (0, 7));
        assert_eq!(SlopeRatio::new(2, -1).unwrap().bin_range(4, 3), (-2, 6));
    }

    #[test]
    fn parse_and_display() {
        let s: SlopeRatio = "-1:2".parse().unwrap();
        assert_eq!(s.to_string(), "-1:2");
        assert!("1x2".parse::<SlopeRatio>().is_err());
        assert!("2:2".parse::<SlopeRatio>().is_err());
    }
}
