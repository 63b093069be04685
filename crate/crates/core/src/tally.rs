//! Arithmetic operation tallies.
//!
//! Every pipeline is generic over an [`OpTally`]. The unit type `()` records
//! nothing and compiles away, so the production and instrumented variants
//! share one body. Only value arithmetic on pixels, bins and moments is
//! counted; index arithmetic and loop bookkeeping are not.

use std::ops::AddAssign;

pub trait OpTally {
    fn mul(&mut self, n: u64);
    fn add(&mut self, n: u64);
}

impl OpTally for () {
    #[inline(always)]
    fn mul(&mut self, _n: u64) {}
    #[inline(always)]
    fn add(&mut self, _n: u64) {}
}

/// Multiplication and addition counts for one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounts {
    pub multiplications: u64,
    pub additions: u64,
}

impl OpCounts {
    pub fn new(multiplications: u64, additions: u64) -> Self {
        OpCounts { multiplications, additions }
    }

    pub fn reset(&mut self) {
        *self = OpCounts::default();
    }
}

impl OpTally for OpCounts {
    #[inline]
    fn mul(&mut self, n: u64) {
        self.multiplications += n;
    }
    #[inline]
    fn add(&mut self, n: u64) {
        self.additions += n;
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        self.multiplications += rhs.multiplications;
        self.additions += rhs.additions;
    }
}
