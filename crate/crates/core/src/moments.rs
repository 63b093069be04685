/// Highest 2-D moment order supported anywhere in the crate.
pub const MAX_ORDER: u32 = 8;

/// Number of `(p, q)` pairs with `p + q <= order`.
pub const fn moment_count(order: u32) -> usize {
    let n = order as usize + 1;
    n * (n + 1) / 2
}

/// Position of `(p, q)` in the triangular layout: grouped by `p + q`, then
/// by increasing `q`.
#[inline]
pub(crate) const fn slot(p: u32, q: u32) -> usize {
    let r = (p + q) as usize;
    r * (r + 1) / 2 + q as usize
}

/// Raw moments `M_pq` for every `p + q <= order`, held exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MomentSet {
    order: u32,
    values: Vec<i128>,
}

impl MomentSet {
    pub fn zeros(order: u32) -> Self {
        MomentSet { order, values: vec![0; moment_count(order)] }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `M_pq`, or `None` when `p + q` exceeds the set's order.
    pub fn get(&self, p: u32, q: u32) -> Option<i128> {
        (p + q <= self.order).then(|| self.values[slot(p, q)])
    }

    /// Like [`get`](Self::get) but panics on an out-of-range pair.
    pub fn m(&self, p: u32, q: u32) -> i128 {
        self.get(p, q).unwrap_or_else(|| panic!("M{p}{q} exceeds order {}", self.order))
    }

    pub(crate) fn set(&mut self, p: u32, q: u32, value: i128) {
        assert!(p + q <= self.order);
        self.values[slot(p, q)] = value;
    }

    pub fn total_mass(&self) -> i128 {
        self.values[0]
    }

    /// `(p, q, M_pq)` ordered by total order, then by decreasing `p`:
    /// `M00, M10, M01, M20, M11, M02, ...`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, i128)> + '_ {
        (0..=self.order).flat_map(move |r| (0..=r).rev().map(move |p| (p, r - p, self.values[slot(p, r - p)])))
    }

    /// The moments of exactly order `r`, `M_{r,0}, M_{r-1,1}, ..., M_{0,r}`.
    pub fn row(&self, r: u32) -> Vec<i128> {
        (0..=r).rev().map(|p| self.m(p, r - p)).collect()
    }

    /// Moments up to `order`, dropping the rest.
    pub fn truncated(&self, order: u32) -> MomentSet {
        let order = order.min(self.order);
        MomentSet { order, values: self.values[..moment_count(order)].to_vec() }
    }
}
