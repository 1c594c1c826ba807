//! Exhaustive subset scans with Gray-code incremental sums.
//!
//! The ground set is split into a high part enumerated per block and a low
//! part walked in Gray-code order, so blocks can run in parallel. Each step
//! flips one element and updates every running total by one integer add.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::linalg::{common_denominator, primitive_integer};
use super::Q;

/// Hard ceiling on scanned ground sets.
pub const MAX_SCAN_BITS: usize = 40;

const BLOCK_BITS: usize = 6;

/// Integer data for one scan.
pub struct ScanInput {
    n: usize,
    /// `dirs[e]` holds the coordinate of element `e` in every direction
    dirs: Vec<Vec<i64>>,
    values: Vec<i128>,
    /// values are scaled by this common denominator
    pub scale: BigInt,
}

impl ScanInput {
    /// `directions` are scaled to primitive integer vectors; `values` are
    /// scaled by the lcm of their denominators.
    pub fn new(n: usize, directions: &[Vec<Q>], values: &[Q]) -> Result<ScanInput> {
        if n > MAX_SCAN_BITS {
            return Err(Error::TooLarge {
                what: "ground set",
                size: n,
                limit: MAX_SCAN_BITS,
            });
        }
        let too_large = || Error::TooLarge {
            what: "scaled subset totals (bits)",
            size: 127,
            limit: 126,
        };
        let mut dirs = vec![Vec::with_capacity(directions.len()); n];
        for d in directions {
            let ints = primitive_integer(d);
            let total: BigInt = ints.iter().map(|x| x.abs()).sum();
            if total.to_i64().is_none() {
                return Err(too_large());
            }
            for (e, x) in ints.iter().enumerate() {
                dirs[e].push(x.to_i64().expect("bounded by total"));
            }
        }
        let scale = common_denominator(values);
        let scaled: Vec<BigInt> = values
            .iter()
            .map(|v| (v * Q::from(scale.clone())).to_integer())
            .collect();
        let total: BigInt = scaled.iter().map(|x| x.abs()).sum();
        if total.to_i128().is_none() {
            return Err(too_large());
        }
        Ok(ScanInput {
            n,
            dirs,
            values: scaled.iter().map(|x| x.to_i128().expect("bounded")).collect(),
            scale,
        })
    }

    /// The scale as an `i128` (always fits when construction succeeded and
    /// some value is nonzero).
    pub fn scale_i128(&self) -> Option<i128> {
        self.scale.to_i128()
    }

    /// Among nonempty subsets orthogonal to every direction, the one
    /// accepted by `accept(mask, scaled_total)` that is smallest by
    /// (size, mask). Returns it with its scaled total.
    pub fn find_min<F>(&self, accept: F) -> Option<(u64, i128)>
    where
        F: Fn(u64, i128) -> bool + Sync,
    {
        let n = self.n;
        let high = n.saturating_sub(BLOCK_BITS.max(n / 2)).min(BLOCK_BITS);
        let low = n - high;
        (0u64..1 << high)
            .into_par_iter()
            .filter_map(|h| self.scan_block(h << low, low, &accept))
            .min_by_key(|&(mask, _)| (mask.count_ones(), mask))
    }

    fn scan_block<F>(&self, base: u64, low: usize, accept: &F) -> Option<(u64, i128)>
    where
        F: Fn(u64, i128) -> bool,
    {
        let d = self.dirs.first().map_or(0, Vec::len);
        let mut acc = vec![0i64; d];
        let mut val = 0i128;
        for e in 0..self.n {
            if base >> e & 1 == 1 {
                for (a, x) in acc.iter_mut().zip(&self.dirs[e]) {
                    *a += x;
                }
                val += self.values[e];
            }
        }
        let mut nonzero = acc.iter().filter(|a| **a != 0).count();
        let mut best: Option<(u64, i128)> = None;
        let consider = |mask: u64, val: i128, best: &mut Option<(u64, i128)>| {
            if mask != 0 && accept(mask, val) {
                let key = (mask.count_ones(), mask);
                if best.is_none_or(|(b, _)| key < (b.count_ones(), b)) {
                    *best = Some((mask, val));
                }
            }
        };
        let mut mask = base;
        if nonzero == 0 {
            consider(mask, val, &mut best);
        }
        for i in 1u64..1 << low {
            let bit = i.trailing_zeros() as usize;
            mask ^= 1 << bit;
            let adding = mask >> bit & 1 == 1;
            for (a, &x) in acc.iter_mut().zip(&self.dirs[bit]) {
                if x != 0 {
                    let was = *a != 0;
                    if adding {
                        *a += x;
                    } else {
                        *a -= x;
                    }
                    match (was, *a != 0) {
                        (true, false) => nonzero -= 1,
                        (false, true) => nonzero += 1,
                        _ => {}
                    }
                }
            }
            if adding {
                val += self.values[bit];
            } else {
                val -= self.values[bit];
            }
            if nonzero == 0 {
                consider(mask, val, &mut best);
            }
        }
        best
    }
}

/// Scaled total of `mask` for values already multiplied by `scale`.
pub fn total_of(values: &[Q], mask: u64) -> Q {
    values
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(Q::zero(), |a, (_, v)| a + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use proptest::prelude::*;

    fn brute(n: usize, dirs: &[Vec<Q>], values: &[Q], target: &Q) -> Option<u64> {
        (1u64..1 << n)
            .filter(|&m| dirs.iter().all(|d| total_of(d, m).is_zero()))
            .filter(|&m| total_of(values, m) == *target)
            .min_by_key(|&m| (m.count_ones(), m))
    }

    #[test]
    fn finds_smallest_unit_subset() {
        let values = vec![q(1, 2), q(1, 3), q(2, 3), q(1, 2)];
        let s = ScanInput::new(4, &[], &values).unwrap();
        let d = s.scale_i128().unwrap();
        let hit = s.find_min(|_, v| v == d).unwrap();
        assert_eq!(hit.0, 0b0110);
    }

    #[test]
    fn rejects_huge_ground() {
        assert!(ScanInput::new(41, &[], &vec![q(1, 1); 41]).is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            n in 1usize..11,
            raw in proptest::collection::vec(-3i64..4, 33),
            vals in proptest::collection::vec(0i64..5, 11),
            ndirs in 0usize..3,
        ) {
            let dirs: Vec<Vec<Q>> = (0..ndirs)
                .map(|k| (0..n).map(|e| q(raw[k * 11 + e], 1)).collect())
                .filter(|d: &Vec<Q>| d.iter().any(|x| !x.is_zero()))
                .collect();
            let values: Vec<Q> = (0..n).map(|e| q(vals[e], 4)).collect();
            let s = ScanInput::new(n, &dirs, &values).unwrap();
            let scale = Q::from(s.scale.clone());
            let target = q(1, 1);
            let want = (target.clone() * &scale).to_integer().to_i128().unwrap();
            let got = s.find_min(|_, v| v == want).map(|x| x.0);
            prop_assert_eq!(got, brute(n, &dirs, &values, &target));
        }
    }
}
