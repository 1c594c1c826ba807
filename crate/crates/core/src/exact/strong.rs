//! The strong variant: over the polytope `{φ ≥ 0, every member sums to 1}`,
//! is some non-member subset pinned to a constant total `γ ≤ 1`?
//!
//! A subset's total is constant on the polytope exactly when its
//! characteristic vector is orthogonal to the directions of the polytope's
//! affine hull. That hull is cut out by the unit equations plus `φₑ = 0` for
//! the elements that vanish everywhere on the polytope, so one kernel and one
//! scan settle every subset at once; each witness is then confirmed by
//! minimising and maximising its total.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::verdict::Verdict;

use super::certificate::solve_unit_system;
use super::decide::{find_obstruction, PositivityObstruction};
use super::linalg::{rank, solve, Solution};
use super::scan::ScanInput;
use super::simplex::{Direction, LinearProgram, LpOutcome, Relation};
use super::system::{mask_elements, SetSystem};
use super::Q;

/// Default largest ground set for [`strong_check`].
pub const DEFAULT_STRONG_LIMIT: usize = 16;

/// `φ(target)` equals `gamma` at every point of the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantTotal {
    pub target: Vec<usize>,
    pub gamma: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongRefutation {
    /// No nonnegative weighting gives every member total 1.
    EmptyPolytope(PositivityObstruction),
    Constant(ConstantTotal),
}

impl StrongRefutation {
    /// Re-checks the refutation; a constant total is confirmed by two
    /// linear programs.
    pub fn verify(&self, s: &SetSystem) -> bool {
        match self {
            StrongRefutation::EmptyPolytope(o) => o.proves_empty(s),
            StrongRefutation::Constant(c) => {
                let lo = total_range(s, &c.target, Direction::Minimize);
                let hi = total_range(s, &c.target, Direction::Maximize);
                !c.target.is_empty()
                    && s.find_member(&c.target).is_none()
                    && c.gamma <= Q::one()
                    && lo.as_ref() == Some(&c.gamma)
                    && hi.as_ref() == Some(&c.gamma)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongYes {
    /// Elements that are zero on the whole polytope.
    pub zero_elements: Vec<usize>,
    /// Dimension of the polytope.
    pub dimension: usize,
}

impl StrongYes {
    /// Re-derives the vanishing elements, one linear program each, and the
    /// dimension from the rank of the hull equations.
    pub fn verify(&self, s: &SetSystem) -> bool {
        let n = s.ground_size();
        let lp = polytope(s);
        let zero: Vec<usize> = (0..n)
            .filter(|&e| {
                let mut c = vec![Q::zero(); n];
                c[e] = Q::one();
                lp.optimize(&c, Direction::Maximize).value().is_some_and(Zero::is_zero)
            })
            .collect();
        if zero != self.zero_elements {
            return false;
        }
        let mut rows = s.incidence_rows();
        for &e in &zero {
            let mut r = vec![Q::zero(); n];
            r[e] = Q::one();
            rows.push(r);
        }
        n - rank(&rows, n) == self.dimension
    }
}

fn polytope(s: &SetSystem) -> LinearProgram {
    let n = s.ground_size();
    let mut lp = LinearProgram::new(n);
    for m in s.family() {
        let mut row = vec![Q::zero(); n];
        for &x in m {
            row[x] = Q::one();
        }
        lp.constrain(row, Relation::Eq, Q::one());
    }
    lp
}

/// Minimum or maximum of `φ(target)` over the polytope; `None` when the
/// polytope is empty or the total unbounded.
pub fn total_range(s: &SetSystem, target: &[usize], direction: Direction) -> Option<Q> {
    let mut c = vec![Q::zero(); s.ground_size()];
    for &x in target {
        c[x] = Q::one();
    }
    polytope(s).optimize(&c, direction).value().cloned()
}

/// Decides strong equistarability/equistability of the system.
///
/// `limit` bounds the ground size (default [`DEFAULT_STRONG_LIMIT`]).
pub fn strong_check(s: &SetSystem, limit: usize) -> Result<Verdict<StrongYes, StrongRefutation>> {
    let n = s.ground_size();
    if n > limit {
        return Err(Error::TooLarge {
            what: "ground set",
            size: n,
            limit,
        });
    }
    let lp = polytope(s);
    let point = match lp.optimize(&vec![Q::zero(); n], Direction::Minimize) {
        LpOutcome::Optimal { point, .. } => point,
        _ => {
            let o = match solve_unit_system(s) {
                Err(proof) => {
                    let sum: Q = proof.combination.iter().sum();
                    let flip = sum > Q::zero();
                    PositivityObstruction {
                        combination: proof
                            .combination
                            .into_iter()
                            .map(|y| if flip { -y } else { y })
                            .collect(),
                    }
                }
                Ok(_) => find_obstruction(s, true).expect("Farkas certificate exists"),
            };
            let r = StrongRefutation::EmptyPolytope(o);
            assert!(r.verify(s), "emptiness certificate failed verification");
            return Ok(Verdict::No(r));
        }
    };

    let zero: Vec<usize> = (0..n)
        .filter(|&e| {
            let mut c = vec![Q::zero(); n];
            c[e] = Q::one();
            lp.optimize(&c, Direction::Maximize).value().is_some_and(Zero::is_zero)
        })
        .collect();

    // affine hull: unit equations plus φₑ = 0 on `zero`
    let mut rows = s.incidence_rows();
    let mut rhs = vec![Q::one(); rows.len()];
    for &e in &zero {
        let mut r = vec![Q::zero(); n];
        r[e] = Q::one();
        rows.push(r);
        rhs.push(Q::zero());
    }
    let kernel = match solve(&rows, &rhs, n) {
        Solution::Consistent { kernel, .. } => kernel,
        Solution::Inconsistent { .. } => unreachable!("the polytope is nonempty"),
    };

    let scan = ScanInput::new(n, &kernel, &point)?;
    let unit = scan.scale_i128().ok_or(Error::TooLarge {
        what: "point denominators (bits)",
        size: scan.scale.bits() as usize,
        limit: 126,
    })?;
    let mut members = s.member_masks();
    members.sort_unstable();
    let hit = scan.find_min(|mask, v| v <= unit && members.binary_search(&mask).is_err());
    match hit {
        Some((mask, v)) => {
            let gamma = Q::new(v.into(), scan.scale.clone());
            let r = StrongRefutation::Constant(ConstantTotal {
                target: mask_elements(mask),
                gamma,
            });
            assert!(r.verify(s), "constant total failed LP confirmation");
            Ok(Verdict::No(r))
        }
        None => Ok(Verdict::Yes(StrongYes {
            zero_elements: zero,
            dimension: kernel.len(),
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::exact::system::{stable_system, star_system};
    use crate::generate::{generate, Family};

    /// Two LPs per non-member subset.
    fn brute_force(s: &SetSystem) -> Option<(Vec<usize>, Q)> {
        let n = s.ground_size();
        if polytope(s)
            .optimize(&vec![Q::zero(); n], Direction::Minimize)
            .value()
            .is_none()
        {
            return Some((vec![], Q::zero()));
        }
        let mut masks: Vec<u64> = (1u64..1 << n).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        for m in masks {
            let t = mask_elements(m);
            if s.find_member(&t).is_some() {
                continue;
            }
            let lo = total_range(s, &t, Direction::Minimize).unwrap();
            let hi = total_range(s, &t, Direction::Maximize).unwrap();
            if lo == hi && lo <= Q::one() {
                return Some((t, lo));
            }
        }
        None
    }

    fn check(s: &SetSystem) -> Verdict<StrongYes, StrongRefutation> {
        let v = strong_check(s, 16).unwrap();
        let want = brute_force(s);
        match (&v, &want) {
            (Verdict::Yes(_), None) => {}
            (Verdict::No(StrongRefutation::EmptyPolytope(_)), Some((t, _))) if t.is_empty() => {}
            (Verdict::No(StrongRefutation::Constant(c)), Some((t, g))) => {
                assert_eq!((&c.target, &c.gamma), (t, g));
            }
            _ => panic!("strong check {v:?} disagrees with brute force {want:?}"),
        }
        v
    }

    #[test]
    fn c4_is_strong() {
        let g = generate(&Family::Cycle(4)).unwrap();
        assert!(check(&star_system(&g).unwrap()).is_yes());
    }

    #[test]
    fn k3_stable_sets_are_strong() {
        let g = generate(&Family::Complete(3)).unwrap();
        let s = stable_system(&g, 1000).unwrap();
        match check(&s) {
            Verdict::Yes(y) => {
                assert_eq!(y.dimension, 0);
                assert!(y.verify(&s));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn small_graphs_agree_with_brute_force() {
        for f in [
            Family::Cycle(5),
            Family::Cycle(6),
            Family::Path(4),
            Family::Path(5),
            Family::Star(3),
            Family::CompleteBipartite(2, 3),
            Family::CompleteBipartite(3, 3),
            Family::KmnPlus(2, 3),
        ] {
            let g = generate(&f).unwrap();
            check(&star_system(&g).unwrap());
        }
    }

    #[test]
    fn empty_polytope() {
        let g = generate(&Family::CompleteBipartite(2, 3)).unwrap();
        let v = check(&star_system(&g).unwrap());
        assert!(matches!(v, Verdict::No(StrongRefutation::EmptyPolytope(_))));
        // feasible unit system, but only with a negative weight
        let g = generate(&Family::KmnPlus(3, 2)).unwrap();
        let s = star_system(&g).unwrap();
        assert!(solve_unit_system(&s).is_ok());
        assert!(matches!(check(&s), Verdict::No(StrongRefutation::EmptyPolytope(_))));
    }

    #[test]
    fn emptiness_needs_a_large_combination() {
        // an obstruction for some of these needs a column total above 1
        for g in crate::enumerate::connected_triangle_free(7).unwrap() {
            if g.n() < 2 {
                continue;
            }
            let s = star_system(&g).unwrap();
            match strong_check(&s, 16).unwrap() {
                Verdict::Yes(y) => assert!(y.verify(&s)),
                Verdict::No(r) => assert!(r.verify(&s)),
                Verdict::Unknown(u) => panic!("{u:?}"),
            }
        }
    }

    #[test]
    fn c6_pair_is_pinned() {
        let g = generate(&Family::Cycle(6)).unwrap();
        match check(&star_system(&g).unwrap()) {
            Verdict::No(StrongRefutation::Constant(c)) => assert_eq!(c.gamma, q(1, 1)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn too_large() {
        let g = generate(&Family::Petersen).unwrap();
        assert!(strong_check(&star_system(&g).unwrap(), 14).is_err());
    }
}
