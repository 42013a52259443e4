//! Interval-valued cohomology tables with an exact Euler characteristic.

use std::fmt;

use serde::Serialize;

/// A closed range of possible dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DimRange {
    pub lo: i64,
    pub hi: i64,
}

impl DimRange {
    pub const ZERO: DimRange = DimRange { lo: 0, hi: 0 };

    pub fn exact(n: i64) -> Self {
        Self { lo: n, hi: n }
    }

    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(0 <= lo && lo <= hi, "invalid dimension range [{lo},{hi}]");
        Self { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<i64> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn is_zero(&self) -> bool {
        self.hi == 0
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

/// Cohomology dimensions in degrees `0..N`, each known up to a range, with the
/// Euler characteristic known exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CohInterval<const N: usize> {
    #[serde(with = "dims_serde")]
    pub dims: [DimRange; N],
    pub chi: i64,
}

mod dims_serde {
    use super::DimRange;
    use serde::Serializer;

    pub fn serialize<S: Serializer, const N: usize>(
        dims: &[DimRange; N],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(dims.iter())
    }
}

pub type CohInterval3 = CohInterval<3>;
pub type CohInterval4 = CohInterval<4>;

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl<const N: usize> CohInterval<N> {
    pub fn zero() -> Self {
        Self {
            dims: [DimRange::ZERO; N],
            chi: 0,
        }
    }

    pub fn exact(values: [i64; N]) -> Self {
        let chi = values.iter().enumerate().map(|(i, v)| sign(i) * v).sum();
        Self {
            dims: values.map(DimRange::exact),
            chi,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.dims.iter().all(DimRange::is_exact)
    }

    pub fn exact_values(&self) -> Option<[i64; N]> {
        self.is_exact().then(|| self.dims.map(|d| d.lo))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(DimRange::is_zero)
    }

    /// Range of `sum (-1)^i h^i` over all assignments inside the box.
    pub fn alternating_range(&self) -> (i64, i64) {
        self.dims
            .iter()
            .enumerate()
            .fold((0, 0), |(lo, hi), (i, d)| {
                if sign(i) > 0 {
                    (lo + d.lo, hi + d.hi)
                } else {
                    (lo - d.hi, hi - d.lo)
                }
            })
    }

    /// True when some assignment inside the box has alternating sum `chi`.
    pub fn is_consistent(&self) -> bool {
        let (lo, hi) = self.alternating_range();
        self.dims.iter().all(|d| 0 <= d.lo && d.lo <= d.hi) && lo <= self.chi && self.chi <= hi
    }

    /// Shrinks each range using the exact Euler characteristic until stable.
    pub fn tighten(mut self) -> Self {
        loop {
            let mut changed = false;
            for i in 0..N {
                let (mut lo, mut hi) = (0i64, 0i64);
                for (j, d) in self.dims.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    if sign(j) > 0 {
                        lo += d.lo;
                        hi += d.hi;
                    } else {
                        lo -= d.hi;
                        hi -= d.lo;
                    }
                }
                let (new_lo, new_hi) = if sign(i) > 0 {
                    (self.chi - hi, self.chi - lo)
                } else {
                    (lo - self.chi, hi - self.chi)
                };
                let d = &mut self.dims[i];
                let lo2 = d.lo.max(new_lo);
                let hi2 = d.hi.min(new_hi);
                if (lo2, hi2) != (d.lo, d.hi) {
                    d.lo = lo2;
                    d.hi = hi2;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        assert!(
            self.dims.iter().all(|d| d.lo <= d.hi),
            "cohomology interval became empty: {self}"
        );
        self
    }

    /// Bounds for the middle term of `0 -> sub -> M -> quot -> 0`.
    pub fn extension(sub: &Self, quot: &Self) -> Self {
        let mut dims = [DimRange::ZERO; N];
        for (i, slot) in dims.iter_mut().enumerate() {
            let q_prev_hi = if i > 0 { quot.dims[i - 1].hi } else { 0 };
            let s_next_hi = if i + 1 < N { sub.dims[i + 1].hi } else { 0 };
            let lo = (sub.dims[i].lo - q_prev_hi).max(0) + (quot.dims[i].lo - s_next_hi).max(0);
            let hi = sub.dims[i].hi + quot.dims[i].hi;
            *slot = DimRange { lo, hi };
        }
        Self {
            dims,
            chi: sub.chi + quot.chi,
        }
        .tighten()
    }

    /// Folds a filtration with the given graded pieces, innermost first.
    pub fn filtered<I: IntoIterator<Item = Self>>(pieces: I) -> Option<Self> {
        let mut it = pieces.into_iter();
        let first = it.next()?;
        Some(it.fold(first.tighten(), |acc, q| Self::extension(&acc, &q)))
    }

    /// Table of the Serre-dual class on a variety of dimension `N - 1`.
    pub fn serre_dual(&self) -> Self {
        let mut dims = self.dims;
        dims.reverse();
        let chi = if (N - 1).is_multiple_of(2) {
            self.chi
        } else {
            -self.chi
        };
        Self { dims, chi }
    }
}

impl CohInterval3 {
    /// Places a surface table into degrees `0..=2` of a 3-fold table.
    pub fn lift(&self) -> CohInterval4 {
        CohInterval4 {
            dims: [self.dims[0], self.dims[1], self.dims[2], DimRange::ZERO],
            chi: self.chi,
        }
    }

    /// Places a surface table into degrees `1..=3` of a 3-fold table.
    pub fn shift_up(&self) -> CohInterval4 {
        CohInterval4 {
            dims: [DimRange::ZERO, self.dims[0], self.dims[1], self.dims[2]],
            chi: -self.chi,
        }
    }
}

impl<const N: usize> fmt::Display for CohInterval<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "; chi={})", self.chi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        assert_eq!(DimRange::exact(3).to_string(), "3");
        assert_eq!(DimRange::new(2, 5).to_string(), "[2,5]");
        assert_eq!(
            CohInterval3::exact([0, 3, 0]).to_string(),
            "(0, 3, 0; chi=-3)"
        );
    }

    #[test]
    fn forced_extension_is_exact() {
        let sub = CohInterval3::exact([0, 4, 0]);
        let quot = CohInterval3::exact([0, 6, 0]);
        assert_eq!(
            CohInterval3::extension(&sub, &quot),
            CohInterval3::exact([0, 10, 0])
        );
    }

    #[test]
    fn connecting_map_leaves_a_range() {
        let sub = CohInterval3::exact([0, 5, 0]);
        let quot = CohInterval3::exact([1, 0, 0]);
        let m = CohInterval3::extension(&sub, &quot);
        assert_eq!(m.dims[0], DimRange::new(0, 1));
        assert_eq!(m.dims[1], DimRange::new(4, 5));
        assert_eq!(m.chi, -4);
    }

    #[test]
    fn serre_dual_flips_chi_in_odd_dimension() {
        let a = CohInterval4::exact([1, 0, 2, 0]);
        assert_eq!(a.serre_dual(), CohInterval4::exact([0, 2, 0, 1]));
        assert_eq!(a.serre_dual().chi, -a.chi);
        let s = CohInterval3::exact([2, 1, 0]);
        assert_eq!(s.serre_dual().chi, s.chi);
    }

    fn exact3() -> impl Strategy<Value = CohInterval3> {
        prop::array::uniform3(0i64..6).prop_map(CohInterval3::exact)
    }

    proptest! {
        #[test]
        fn extension_of_exact_tables_contains_every_realisable_middle(
            s in exact3(), q in exact3(), r0 in 0i64..6, r1 in 0i64..6
        ) {
            // Connecting maps H^0(Q) -> H^1(S), H^1(Q) -> H^2(S) of ranks r0, r1.
            let (s, q) = (s.exact_values().unwrap(), q.exact_values().unwrap());
            let r0 = r0.min(q[0]).min(s[1]);
            let r1 = r1.min(q[1]).min(s[2]);
            let m = [s[0] + q[0] - r0, s[1] - r0 + q[1] - r1, s[2] - r1 + q[2]];
            let bound = CohInterval3::extension(&CohInterval3::exact(s), &CohInterval3::exact(q));
            for (d, v) in bound.dims.iter().zip(m) {
                prop_assert!(d.contains(v));
            }
            prop_assert!(bound.is_consistent());
        }
    }
}
