//! Weighting verification and the exact equistarability/equistability
//! decision over a set system.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::verdict::{Exhausted, Verdict};

use super::certificate::{
    combine, forced_value_in, solve_unit_system, ForcedOutcome, ForcedValueCertificate, InfeasibilityProof,
};
use super::linalg::max_abs;
use super::scan::ScanInput;
use super::simplex::{Direction, LinearProgram, LpOutcome, Relation};
use super::system::{mask_elements, mask_of, SetSystem};
use super::Q;

/// Largest ground set scanned exhaustively by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

const RETRIES_PER_BOUND: usize = 64;
const ESCALATIONS: usize = 6;

/// A weight per ground element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    pub weights: Vec<Q>,
}

impl WeightFunction {
    pub fn new(weights: Vec<Q>) -> Self {
        WeightFunction { weights }
    }

    pub fn total(&self, set: &[usize]) -> Q {
        set.iter().fold(Q::zero(), |a, &x| a + &self.weights[x])
    }
}

/// Why a weighting does not single out the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightingFailure {
    WrongLength {
        expected: usize,
        got: usize,
    },
    NonPositive {
        element: usize,
    },
    MemberTotal {
        member: usize,
        total: Q,
    },
    /// A subset outside the family with total exactly 1.
    NonMemberUnit {
        subset: Vec<usize>,
    },
}

impl WeightingFailure {
    /// Re-checks the failure against the weighting.
    pub fn verify(&self, s: &SetSystem, phi: &WeightFunction) -> bool {
        match self {
            WeightingFailure::WrongLength { expected, got } => {
                *expected == s.ground_size() && *got == phi.weights.len() && expected != got
            }
            WeightingFailure::NonPositive { element } => phi.weights.get(*element).is_some_and(|w| !w.is_positive()),
            WeightingFailure::MemberTotal { member, total } => {
                *member < s.family().len() && phi.total(s.member(*member)) == *total && !total.is_one()
            }
            WeightingFailure::NonMemberUnit { subset } => {
                !subset.is_empty()
                    && subset.iter().all(|&x| x < s.ground_size())
                    && s.find_member(subset).is_none()
                    && phi.total(subset).is_one()
            }
        }
    }
}

/// Evidence that a verification scan passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightingChecked {
    pub subsets: u64,
}

/// Exhaustive check that `phi` is strictly positive and that the subsets
/// with total exactly 1 are precisely the family members.
pub fn verify_weighting(
    s: &SetSystem,
    phi: &WeightFunction,
    limit: usize,
) -> Result<Verdict<WeightingChecked, WeightingFailure>> {
    let n = s.ground_size();
    if n > limit {
        return Err(Error::TooLarge {
            what: "ground set",
            size: n,
            limit,
        });
    }
    if phi.weights.len() != n {
        return Ok(Verdict::No(WeightingFailure::WrongLength {
            expected: n,
            got: phi.weights.len(),
        }));
    }
    if let Some(element) = phi.weights.iter().position(|w| !w.is_positive()) {
        return Ok(Verdict::No(WeightingFailure::NonPositive { element }));
    }
    for (member, m) in s.family().iter().enumerate() {
        let total = phi.total(m);
        if !total.is_one() {
            return Ok(Verdict::No(WeightingFailure::MemberTotal { member, total }));
        }
    }
    let scan = ScanInput::new(n, &[], &phi.weights)?;
    let Some(unit) = scan.scale_i128() else {
        return Err(Error::TooLarge {
            what: "weight denominators (bits)",
            size: scan.scale.bits() as usize,
            limit: 126,
        });
    };
    let mut members = s.member_masks();
    members.sort_unstable();
    let hit = scan.find_min(|mask, v| v == unit && members.binary_search(&mask).is_err());
    Ok(match hit {
        Some((mask, _)) => Verdict::No(WeightingFailure::NonMemberUnit {
            subset: mask_elements(mask),
        }),
        None => Verdict::Yes(WeightingChecked {
            subsets: (1u64 << n) - 1,
        }),
    })
}

/// Coefficients `y` on the family whose combination `s = Σ yᵢ χ^{Fᵢ}` is
/// nonnegative, with `Σ yᵢ < 0`, or `Σ yᵢ ≤ 0` and `s ≠ 0`.
///
/// For any nonnegative unit weighting `φ`, `s · φ = Σ yᵢ`. The first form
/// rules out nonnegative weightings entirely; the second forces `φ` to
/// vanish wherever `s` is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityObstruction {
    pub combination: Vec<Q>,
}

impl PositivityObstruction {
    fn parts(&self, s: &SetSystem) -> Option<(Vec<Q>, Q)> {
        if self.combination.len() != s.family().len() {
            return None;
        }
        let v = combine(s, &self.combination);
        if v.iter().any(Signed::is_negative) {
            return None;
        }
        Some((v, self.combination.iter().fold(Q::zero(), |a, x| a + x)))
    }

    /// Proves that no strictly positive unit weighting exists.
    pub fn verify(&self, s: &SetSystem) -> bool {
        match self.parts(s) {
            Some((v, sum)) => sum.is_negative() || (!sum.is_positive() && v.iter().any(|x| !x.is_zero())),
            None => false,
        }
    }

    /// Proves that no nonnegative unit weighting exists.
    pub fn proves_empty(&self, s: &SetSystem) -> bool {
        self.parts(s).is_some_and(|(_, sum)| sum.is_negative())
    }

    /// Elements forced to weight 0 by this obstruction.
    pub fn zero_elements(&self, s: &SetSystem) -> Vec<usize> {
        combine(s, &self.combination)
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_positive())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Why no weighting singles out the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquiRefutation {
    Infeasible(InfeasibilityProof),
    NoPositiveSolution(PositivityObstruction),
    Forced(ForcedValueCertificate),
}

impl EquiRefutation {
    pub fn verify(&self, s: &SetSystem) -> bool {
        match self {
            EquiRefutation::Infeasible(p) => p.verify(s),
            EquiRefutation::NoPositiveSolution(o) => o.verify(s),
            EquiRefutation::Forced(c) => c.verify(s) && c.value.is_one() && s.find_member(&c.target).is_none(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    pub seed: u64,
    pub exhaustive_limit: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            seed: 0,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }
}

/// Variables: one weight per element, then `t`.
fn max_min_program(s: &SetSystem) -> LinearProgram {
    let n = s.ground_size();
    let mut lp = LinearProgram::new(n + 1);
    for m in s.family() {
        let mut row = vec![Q::zero(); n + 1];
        for &x in m {
            row[x] = Q::one();
        }
        lp.constrain(row, Relation::Eq, Q::one());
    }
    for e in 0..n {
        let mut row = vec![Q::zero(); n + 1];
        row[e] = Q::one();
        row[n] = -Q::one();
        lp.constrain(row, Relation::Ge, Q::zero());
    }
    let mut cap = vec![Q::zero(); n + 1];
    cap[n] = Q::one();
    lp.constrain(cap, Relation::Le, Q::one());
    lp
}

/// Maximises `Σ sₑ` over `s = Aᵀy`, `0 ≤ s ≤ 1`, `Σ y ≤ 0` (or `= -1` when
/// `strict`), with `y` free. A positive optimum (or feasibility, when
/// strict) yields an obstruction.
pub(crate) fn find_obstruction(s: &SetSystem, strict: bool) -> Option<PositivityObstruction> {
    let n = s.ground_size();
    let k = s.family().len();
    // y = y⁺ - y⁻
    let mut lp = LinearProgram::new(2 * k);
    let col = |e: usize| -> Vec<Q> {
        let mut row = vec![Q::zero(); 2 * k];
        for (i, m) in s.family().iter().enumerate() {
            if m.binary_search(&e).is_ok() {
                row[i] = Q::one();
                row[k + i] = -Q::one();
            }
        }
        row
    };
    let mut objective = vec![Q::zero(); 2 * k];
    for e in 0..n {
        let row = col(e);
        for (o, r) in objective.iter_mut().zip(&row) {
            *o += r;
        }
        lp.constrain(row.clone(), Relation::Ge, Q::zero());
        // the cap keeps the objective bounded; a strict search fixes the
        // scale through the sum instead
        if !strict {
            lp.constrain(row, Relation::Le, Q::one());
        }
    }
    if strict {
        objective = vec![Q::zero(); 2 * k];
    }
    let mut sum = vec![Q::one(); k];
    sum.extend(vec![-Q::one(); k]);
    if strict {
        lp.constrain(sum, Relation::Eq, -Q::one());
    } else {
        lp.constrain(sum, Relation::Le, Q::zero());
    }
    match lp.optimize(&objective, Direction::Maximize) {
        LpOutcome::Optimal { value, point } if strict || value.is_positive() => {
            let y: Vec<Q> = (0..k).map(|i| &point[i] - &point[k + i]).collect();
            Some(PositivityObstruction { combination: y })
        }
        _ => None,
    }
}

/// Decides whether some strictly positive weighting gives total 1 exactly
/// to the family members.
///
/// Every `yes` carries a weighting that passed [`verify_weighting`]; every
/// `no` carries a refutation that passed [`EquiRefutation::verify`].
pub fn decide_equi_exact(s: &SetSystem, opts: &DecideOptions) -> Result<Verdict<WeightFunction, EquiRefutation>> {
    let n = s.ground_size();
    if n > opts.exhaustive_limit {
        return Err(Error::TooLarge {
            what: "ground set",
            size: n,
            limit: opts.exhaustive_limit,
        });
    }
    let space = match solve_unit_system(s) {
        Ok(space) => space,
        Err(proof) => return Ok(Verdict::No(EquiRefutation::Infeasible(proof))),
    };

    let (t_star, phi0) = match max_min_program(s).optimize(&unit_objective(n), Direction::Maximize) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(n);
            (value, point)
        }
        _ => {
            let o = find_obstruction(s, false).expect("positivity obstruction exists");
            assert!(o.verify(s), "positivity obstruction failed verification");
            return Ok(Verdict::No(EquiRefutation::NoPositiveSolution(o)));
        }
    };

    // a non-member subset whose total is 1 on the whole solution space
    let scan = ScanInput::new(n, &space.kernel_basis, &space.particular)?;
    if let Some(unit) = scan.scale_i128() {
        let mut members = s.member_masks();
        members.sort_unstable();
        let hit = scan.find_min(|mask, v| v == unit && members.binary_search(&mask).is_err());
        if let Some((mask, _)) = hit {
            match forced_value_in(s, &space, &mask_elements(mask))? {
                ForcedOutcome::Forced(cert) => {
                    let refutation = EquiRefutation::Forced(cert);
                    assert!(refutation.verify(s), "forced certificate failed verification");
                    return Ok(Verdict::No(refutation));
                }
                ForcedOutcome::NotForced(_) => unreachable!("scan found an orthogonal subset"),
            }
        }
    }

    // sample interior points until one avoids every unit hyperplane
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bound: i64 = 1_000;
    for _ in 0..=ESCALATIONS {
        for _ in 0..RETRIES_PER_BOUND {
            let phi = WeightFunction::new(sample(&space, &phi0, &t_star, bound, &mut rng));
            if verify_weighting(s, &phi, opts.exhaustive_limit)?.is_yes() {
                return Ok(Verdict::Yes(phi));
            }
        }
        bound = bound.saturating_mul(10);
    }
    Ok(Verdict::Unknown(Exhausted {
        budget: (RETRIES_PER_BOUND * (ESCALATIONS + 1)) as u64,
    }))
}

fn unit_objective(n: usize) -> Vec<Q> {
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    c
}

/// `phi0 + ε Σ rᵢ kᵢ` with `rᵢ = pᵢ / q` random and `ε` small enough to keep
/// every weight at least `t* / 2`.
fn sample(
    space: &super::certificate::AffineSolutionSpace,
    phi0: &[Q],
    t_star: &Q,
    bound: i64,
    rng: &mut ChaCha8Rng,
) -> Vec<Q> {
    let denom = rng.gen_range(1..=bound);
    let coeffs: Vec<Q> = space
        .kernel_basis
        .iter()
        .map(|_| Q::new(BigInt::from(rng.gen_range(-bound..=bound)), BigInt::from(denom)))
        .collect();
    let mut d = vec![Q::zero(); phi0.len()];
    for (c, k) in coeffs.iter().zip(&space.kernel_basis) {
        for (x, y) in d.iter_mut().zip(k) {
            *x += c * y;
        }
    }
    let m = max_abs(&d);
    if m.is_zero() {
        return phi0.to_vec();
    }
    let eps = t_star / (Q::from(m.ceil().to_integer()) * Q::from(BigInt::from(2)));
    phi0.iter().zip(&d).map(|(p, x)| p + &eps * x).collect()
}

/// Forced total of a subset given as a mask, for diagnostics.
pub fn forced_total(s: &SetSystem, mask: u64) -> Result<ForcedOutcome> {
    let space = solve_unit_system(s).map_err(|_| Error::InfeasibleSystem)?;
    forced_value_in(s, &space, &mask_elements(mask))
}

/// Mask of a sorted element list; `None` beyond 64 elements.
pub fn subset_mask(set: &[usize]) -> Option<u64> {
    set.iter().all(|&x| x < 64).then(|| mask_of(set))
}

/// Exact `num / den` of a rational as `i64` pair when both fit.
pub fn small_parts(x: &Q) -> Option<(i64, i64)> {
    Some((x.numer().to_i64()?, x.denom().to_i64()?))
}
