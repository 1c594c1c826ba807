//! Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Q;

/// Result of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Consistent {
        /// Free variables set to zero.
        particular: Vec<Q>,
        /// One vector per free column; linearly independent.
        kernel: Vec<Vec<Q>>,
    },
    /// `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Inconsistent { combination: Vec<Q> },
}

/// Solves `a x = b` (rows of `a` are equations over `cols` unknowns) by
/// reduction to row echelon form, pivoting on the first usable row and
/// scanning columns left to right.
pub fn solve(a: &[Vec<Q>], b: &[Q], cols: usize) -> Solution {
    let rows = a.len();
    assert_eq!(rows, b.len());
    // [A | b | I]
    let mut t: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r.extend((0..rows).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !t[i][c].is_zero()) else {
            continue;
        };
        t.swap(r, p);
        let inv = t[r][c].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = std::mem::take(&mut t[r]);
        for row in t.iter_mut().filter(|row| !row.is_empty() && !row[c].is_zero()) {
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        t[r] = pivot;
        pivots.push(c);
        r += 1;
    }

    for row in &t[r..] {
        if !row[cols].is_zero() {
            return Solution::Inconsistent {
                combination: row[cols + 1..].to_vec(),
            };
        }
    }

    let mut particular = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = t[i][cols].clone();
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -t[i][f].clone();
            }
            v
        })
        .collect();
    Solution::Consistent { particular, kernel }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Q>], cols: usize) -> usize {
    match solve(a, &vec![Q::zero(); a.len()], cols) {
        Solution::Consistent { kernel, .. } => cols - kernel.len(),
        Solution::Inconsistent { .. } => unreachable!("homogeneous systems are consistent"),
    }
}

/// Scales `v` to a primitive integer vector (same direction, gcd 1).
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let l = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

pub fn is_zero_vector(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn max_abs(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
}
