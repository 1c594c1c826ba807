//! The unit system "every family member sums to 1", its solution space, and
//! forced-value certificates.

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::linalg::{dot, is_zero_vector, rank, solve, Solution};
use super::system::SetSystem;
use super::Q;

/// All solutions of the unit system: `particular + span(kernel_basis)`,
/// with `particular` the solution orthogonal to the kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    pub particular: Vec<Q>,
    pub kernel_basis: Vec<Vec<Q>>,
}

impl AffineSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn verify(&self, s: &SetSystem) -> bool {
        let n = s.ground_size();
        let rows = s.incidence_rows();
        self.particular.len() == n
            && rows.iter().all(|r| dot(r, &self.particular).is_one())
            && self
                .kernel_basis
                .iter()
                .all(|k| k.len() == n && rows.iter().all(|r| dot(r, k).is_zero()))
            && rank(&self.kernel_basis, n) == self.kernel_basis.len()
            // dimension matches the rank of the family
            && n - rank(&rows, n) == self.kernel_basis.len()
    }

    /// `particular + Σ coeffs[i] · kernel_basis[i]`.
    pub fn point(&self, coeffs: &[Q]) -> Vec<Q> {
        let mut p = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel_basis) {
            for (x, y) in p.iter_mut().zip(k) {
                *x += c * y;
            }
        }
        p
    }
}

/// Coefficients `y` on the family with `Σ yᵢ χ^{Fᵢ} = 0` but `Σ yᵢ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityProof {
    pub combination: Vec<Q>,
}

impl InfeasibilityProof {
    pub fn verify(&self, s: &SetSystem) -> bool {
        self.combination.len() == s.family().len()
            && is_zero_vector(&combine(s, &self.combination))
            && !self.combination.iter().fold(Q::zero(), |a, x| a + x).is_zero()
    }
}

/// `Σ λᵢ χ^{Fᵢ}` as a vector over the ground set.
pub(crate) fn combine(s: &SetSystem, coeffs: &[Q]) -> Vec<Q> {
    let mut v = vec![Q::zero(); s.ground_size()];
    for (m, c) in s.family().iter().zip(coeffs) {
        if !c.is_zero() {
            for &x in m {
                v[x] += c;
            }
        }
    }
    v
}

/// Solves the unit system exactly.
pub fn solve_unit_system(s: &SetSystem) -> std::result::Result<AffineSolutionSpace, InfeasibilityProof> {
    let rows = s.incidence_rows();
    let ones = vec![Q::one(); rows.len()];
    match solve(&rows, &ones, s.ground_size()) {
        Solution::Consistent { particular, kernel } => {
            let space = AffineSolutionSpace {
                particular: least_norm(particular, &kernel),
                kernel_basis: kernel,
            };
            debug_assert!(space.verify(s));
            Ok(space)
        }
        Solution::Inconsistent { combination } => {
            let proof = InfeasibilityProof { combination };
            assert!(proof.verify(s), "infeasibility proof failed verification");
            Err(proof)
        }
    }
}

/// Moves `p` within `p + span(kernel)` to the point orthogonal to the span.
fn least_norm(p: Vec<Q>, kernel: &[Vec<Q>]) -> Vec<Q> {
    if kernel.is_empty() {
        return p;
    }
    // Gram system (KᵀK) c = Kᵀp
    let gram: Vec<Vec<Q>> = kernel
        .iter()
        .map(|a| kernel.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Q> = kernel.iter().map(|a| dot(a, &p)).collect();
    let c = match solve(&gram, &rhs, kernel.len()) {
        Solution::Consistent { particular, .. } => particular,
        Solution::Inconsistent { .. } => unreachable!("Gram matrix of a basis is invertible"),
    };
    let mut out = p;
    for (ci, k) in c.iter().zip(kernel) {
        for (x, y) in out.iter_mut().zip(k) {
            *x -= ci * y;
        }
    }
    out
}

/// `χ^T = Σ λᵢ χ^{Fᵢ}`, so every unit weighting gives `T` the total `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedValueCertificate {
    /// sorted element ids
    pub target: Vec<usize>,
    /// one coefficient per family member
    pub coefficients: Vec<Q>,
    pub value: Q,
}

impl ForcedValueCertificate {
    /// Coordinatewise identity check plus `value = Σ λ`.
    pub fn verify(&self, s: &SetSystem) -> bool {
        if self.coefficients.len() != s.family().len()
            || self.target.is_empty()
            || self.target.iter().any(|&x| x >= s.ground_size())
            || self.target.windows(2).any(|w| w[0] >= w[1])
        {
            return false;
        }
        let v = combine(s, &self.coefficients);
        let mut chi = vec![Q::zero(); s.ground_size()];
        for &x in &self.target {
            chi[x] = Q::one();
        }
        v == chi && self.coefficients.iter().fold(Q::zero(), |a, x| a + x) == self.value
    }
}

/// A kernel vector `d` with `d · χ^T ≠ 0`: moving along `d` changes the
/// total of `T` while keeping every member at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotForced {
    pub target: Vec<usize>,
    pub direction: Vec<Q>,
}

impl NotForced {
    pub fn verify(&self, s: &SetSystem) -> bool {
        let d = &self.direction;
        d.len() == s.ground_size()
            && s.family()
                .iter()
                .all(|m| m.iter().fold(Q::zero(), |a, &x| a + &d[x]).is_zero())
            && !self.target.iter().fold(Q::zero(), |a, &x| a + &d[x]).is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForcedOutcome {
    Forced(ForcedValueCertificate),
    NotForced(NotForced),
}

impl ForcedOutcome {
    pub fn verify(&self, s: &SetSystem) -> bool {
        match self {
            ForcedOutcome::Forced(c) => c.verify(s),
            ForcedOutcome::NotForced(n) => n.verify(s),
        }
    }
}

/// Decides whether the total of `target` is the same for every solution of
/// the unit system, with a certificate either way.
pub fn forced_value(s: &SetSystem, target: &[usize]) -> Result<ForcedOutcome> {
    let space = solve_unit_system(s).map_err(|_| Error::InfeasibleSystem)?;
    forced_value_in(s, &space, target)
}

/// [`forced_value`] with a precomputed solution space.
pub fn forced_value_in(s: &SetSystem, space: &AffineSolutionSpace, target: &[usize]) -> Result<ForcedOutcome> {
    let mut t = target.to_vec();
    t.sort_unstable();
    t.dedup();
    if t.is_empty() {
        return Err(Error::InvalidParameter("empty target".into()));
    }
    if let Some(&x) = t.iter().find(|&&x| x >= s.ground_size()) {
        return Err(Error::VertexOutOfRange {
            id: x,
            n: s.ground_size(),
        });
    }
    let total = |v: &[Q]| t.iter().fold(Q::zero(), |a, &x| a + &v[x]);
    if let Some(k) = space.kernel_basis.iter().find(|k| !total(k).is_zero()) {
        let out = NotForced {
            target: t,
            direction: k.clone(),
        };
        assert!(out.verify(s));
        return Ok(ForcedOutcome::NotForced(out));
    }
    // χ^T lies in the row space: solve Aᵀ λ = χ^T
    let k = s.family().len();
    let mut at = vec![vec![Q::zero(); k]; s.ground_size()];
    for (i, m) in s.family().iter().enumerate() {
        for &x in m {
            at[x][i] = Q::one();
        }
    }
    let mut chi = vec![Q::zero(); s.ground_size()];
    for &x in &t {
        chi[x] = Q::one();
    }
    let lambda = match solve(&at, &chi, k) {
        Solution::Consistent { particular, .. } => particular,
        Solution::Inconsistent { .. } => unreachable!("target orthogonal to the kernel"),
    };
    let value = lambda.iter().fold(Q::zero(), |a, x| a + x);
    assert_eq!(value, total(&space.particular));
    let cert = ForcedValueCertificate {
        target: t,
        coefficients: lambda,
        value,
    };
    assert!(cert.verify(s), "forced-value certificate failed verification");
    Ok(ForcedOutcome::Forced(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::exact::system::star_system;
    use crate::generate::{generate, Family};
    use crate::graph::Graph;
    use num_traits::Signed;

    fn stars(f: Family) -> (Graph, SetSystem) {
        let g = generate(&f).unwrap();
        let s = star_system(&g).unwrap();
        (g, s)
    }

    fn edges(g: &Graph, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| g.edge_by_label(n).unwrap()).collect()
    }

    #[test]
    fn k43_is_infeasible() {
        let (_, s) = stars(Family::CompleteBipartite(4, 3));
        let proof = solve_unit_system(&s).unwrap_err();
        assert!(proof.verify(&s));
    }

    #[test]
    fn c4_space() {
        let (g, s) = stars(Family::Cycle(4));
        let space = solve_unit_system(&s).unwrap();
        assert!(space.verify(&s));
        assert_eq!(space.particular, vec![q(1, 2); 4]);
        assert_eq!(space.dimension(), 1);
        // consecutive edges of the cycle alternate in sign
        let k = &space.kernel_basis[0];
        let around = edges(&g, &["1-2", "2-3", "3-4", "1-4"]);
        for w in around.windows(2) {
            assert_eq!(k[w[0]], -k[w[1]].clone());
        }
    }

    #[test]
    fn k2_space() {
        let (_, s) = stars(Family::Path(2));
        let space = solve_unit_system(&s).unwrap();
        assert_eq!(space.particular, vec![q(1, 1)]);
        assert_eq!(space.dimension(), 0);
    }

    #[test]
    fn c6_forced() {
        let (g, s) = stars(Family::Cycle(6));
        match forced_value(&s, &edges(&g, &["1-2", "4-5"])).unwrap() {
            ForcedOutcome::Forced(c) => assert_eq!(c.value, q(1, 1)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn kmn_plus_leaves_forced() {
        let (g, s) = stars(Family::KmnPlus(2, 3));
        let leaves = edges(&g, &["b1-l1", "b2-l2", "b3-l3"]);
        match forced_value(&s, &leaves).unwrap() {
            ForcedOutcome::Forced(c) => {
                assert_eq!(c.value, q(1, 1));
                assert!(c.verify(&s));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn c4_opposite_not_forced() {
        let (g, s) = stars(Family::Cycle(4));
        match forced_value(&s, &edges(&g, &["1-2", "3-4"])).unwrap() {
            ForcedOutcome::NotForced(n) => {
                let dot: Q = n.target.iter().map(|&x| n.direction[x].clone()).sum();
                assert_eq!(dot.abs(), q(2, 1) * n.direction[0].abs());
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn forced_value_errors() {
        let (_, s) = stars(Family::CompleteBipartite(4, 3));
        assert_eq!(forced_value(&s, &[0]), Err(Error::InfeasibleSystem));
        let (_, s) = stars(Family::Cycle(4));
        assert!(forced_value(&s, &[]).is_err());
    }

    #[test]
    fn tampered_certificate_rejected() {
        let (g, s) = stars(Family::Cycle(6));
        let ForcedOutcome::Forced(mut c) = forced_value(&s, &edges(&g, &["1-2", "4-5"])).unwrap() else {
            panic!()
        };
        c.value = q(1, 2);
        assert!(!c.verify(&s));
    }
}
