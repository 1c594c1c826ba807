//! Exact two-phase simplex with Bland's rule.
//!
//! All variables are nonnegative. Constraints may be `≤`, `≥` or `=`.

use num_traits::{One, Signed, Zero};

use super::linalg::dot;
use super::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Q, point: Vec<Q> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Q> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// `optimize c·x subject to rows, x ≥ 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    vars: usize,
    rows: Vec<(Vec<Q>, Relation, Q)>,
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constrain(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) -> &mut Self {
        assert_eq!(coeffs.len(), self.vars);
        self.rows.push((coeffs, rel, rhs));
        self
    }

    /// Exact feasibility check of a point.
    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        x.len() == self.vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|(a, rel, b)| {
                let lhs = dot(a, x);
                match rel {
                    Relation::Le => lhs <= *b,
                    Relation::Ge => lhs >= *b,
                    Relation::Eq => lhs == *b,
                }
            })
    }

    pub fn optimize(&self, objective: &[Q], direction: Direction) -> LpOutcome {
        assert_eq!(objective.len(), self.vars);
        let out = Tableau::build(self).solve(objective, direction);
        if let LpOutcome::Optimal { value, point } = &out {
            assert!(self.satisfied_by(point), "simplex optimizer violates constraints");
            assert_eq!(&dot(objective, point), value);
        }
        out
    }
}

struct Tableau {
    /// rows × (cols + 1); last column is the right-hand side
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
    original: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.rows.len();
        let slacks = lp.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let original = lp.vars;
        let first_artificial = original + slacks;
        let cols = first_artificial + m;
        let mut t = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = original;
        for (i, (a, rel, b)) in lp.rows.iter().enumerate() {
            let mut row = vec![Q::zero(); cols + 1];
            row[..original].clone_from_slice(a);
            match rel {
                Relation::Le => {
                    row[slack] = Q::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Q::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[cols] = b.clone();
            if b.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[first_artificial + i] = Q::one();
            basis.push(first_artificial + i);
            t.push(row);
        }
        Tableau {
            t,
            basis,
            cols,
            original,
            first_artificial,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for x in self.t[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..self.t.len() {
            if i != r && !self.t[i][c].is_zero() {
                let f = self.t[i][c].clone();
                for j in 0..=self.cols {
                    let d = &f * &self.t[r][j];
                    self.t[i][j] -= d;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimises `cost · x` over columns `< limit`. Returns false if unbounded.
    fn run(&mut self, cost: &[Q], limit: usize) -> bool {
        loop {
            // Bland: smallest column with negative reduced cost
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &bv) in self.basis.iter().enumerate() {
                    if !cost[bv].is_zero() && !self.t[i][j].is_zero() {
                        r -= &cost[bv] * &self.t[i][j];
                    }
                }
                r.is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.t.len() {
                if self.t[i][c].is_positive() {
                    let ratio = &self.t[i][self.cols] / &self.t[i][c];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn value_of(&self, cost: &[Q]) -> Q {
        self.basis
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (i, &b)| acc + &cost[b] * &self.t[i][self.cols])
    }

    fn solve(mut self, objective: &[Q], direction: Direction) -> LpOutcome {
        // phase 1: minimise the sum of artificials
        let mut cost1 = vec![Q::zero(); self.cols];
        for c in cost1[self.first_artificial..].iter_mut() {
            *c = Q::one();
        }
        let bounded = self.run(&cost1, self.cols);
        debug_assert!(bounded);
        if self.value_of(&cost1).is_positive() {
            return LpOutcome::Infeasible;
        }
        // drive zero-level artificials out, dropping redundant rows
        let mut i = 0;
        while i < self.t.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.t[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.t.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        // phase 2
        let mut cost2 = vec![Q::zero(); self.cols];
        for (j, c) in objective.iter().enumerate() {
            cost2[j] = match direction {
                Direction::Minimize => c.clone(),
                Direction::Maximize => -c.clone(),
            };
        }
        if !self.run(&cost2, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Q::zero(); self.original];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.original {
                point[b] = self.t[i][self.cols].clone();
            }
        }
        let value = dot(objective, &point);
        LpOutcome::Optimal { value, point }
    }
}
