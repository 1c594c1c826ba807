//! Ground sets with a distinguished family of subsets.

use serde::Serialize;

use crate::cliques::enumerate_maximal_stable_sets;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::Q;
use num_traits::{One, Zero};

/// Where a set system came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Edges of a graph with its maximal stars.
    Stars,
    /// Vertices of a graph with its maximal stable sets.
    StableSets,
    Custom,
}

/// A ground set `0..n` with a family of nonempty, distinct, pairwise
/// incomparable subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetSystem {
    element_names: Vec<String>,
    /// sorted element ids per member
    family: Vec<Vec<usize>>,
    member_names: Vec<String>,
    source: Source,
}

impl SetSystem {
    /// Validates and builds a system. Members are sorted and must be
    /// nonempty, distinct and pairwise incomparable.
    pub fn new(
        element_names: Vec<String>,
        family: Vec<Vec<usize>>,
        member_names: Vec<String>,
        source: Source,
    ) -> Result<SetSystem> {
        let n = element_names.len();
        if member_names.len() != family.len() {
            return Err(Error::InvalidParameter("one name per family member".into()));
        }
        let mut fam = Vec::with_capacity(family.len());
        for mut m in family {
            m.sort_unstable();
            m.dedup();
            if m.is_empty() {
                return Err(Error::InvalidParameter("empty family member".into()));
            }
            if let Some(&x) = m.iter().find(|&&x| x >= n) {
                return Err(Error::VertexOutOfRange { id: x, n });
            }
            fam.push(m);
        }
        for (i, a) in fam.iter().enumerate() {
            for b in &fam[i + 1..] {
                if is_subset(a, b) || is_subset(b, a) {
                    return Err(Error::InvalidParameter(format!(
                        "family members {a:?} and {b:?} are comparable"
                    )));
                }
            }
        }
        Ok(SetSystem {
            element_names,
            family: fam,
            member_names,
            source,
        })
    }

    /// Unnamed system over `0..n`, for tests and ad-hoc use.
    pub fn from_family(n: usize, family: Vec<Vec<usize>>) -> Result<SetSystem> {
        let names = family.iter().map(|m| set_name(m, |x| x.to_string())).collect();
        SetSystem::new((0..n).map(|i| i.to_string()).collect(), family, names, Source::Custom)
    }

    pub fn ground_size(&self) -> usize {
        self.element_names.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }

    pub fn member(&self, i: usize) -> &[usize] {
        &self.family[i]
    }

    pub fn member_names(&self) -> &[String] {
        &self.member_names
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|x| x == name)
    }

    pub fn member_by_name(&self, name: &str) -> Option<usize> {
        self.member_names.iter().position(|x| x == name)
    }

    /// Index of the member equal to `set` (sorted).
    pub fn find_member(&self, set: &[usize]) -> Option<usize> {
        self.family.iter().position(|m| m == set)
    }

    /// Bit masks of the members; requires `ground_size() <= 64`.
    pub fn member_masks(&self) -> Vec<u64> {
        assert!(self.ground_size() <= 64);
        self.family.iter().map(|m| mask_of(m)).collect()
    }

    /// Rows of the incidence matrix, one per member.
    pub fn incidence_rows(&self) -> Vec<Vec<Q>> {
        self.family
            .iter()
            .map(|m| {
                let mut row = vec![Q::zero(); self.ground_size()];
                for &x in m {
                    row[x] = Q::one();
                }
                row
            })
            .collect()
    }

    /// Same system with element `i` renamed to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SetSystem {
        let n = self.ground_size();
        assert_eq!(perm.len(), n);
        let mut names = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = self.element_names[i].clone();
        }
        let family = self
            .family
            .iter()
            .map(|m| {
                let mut v: Vec<usize> = m.iter().map(|&x| perm[x]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        SetSystem::new(names, family, self.member_names.clone(), self.source).expect("permutation preserves validity")
    }

    /// Element names of a subset given as a mask.
    pub fn mask_names(&self, mask: u64) -> Vec<String> {
        (0..self.ground_size())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.element_names[i].clone())
            .collect()
    }
}

pub(crate) fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &x| m | 1 << x)
}

pub(crate) fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn set_name(m: &[usize], name: impl Fn(usize) -> String) -> String {
    let parts: Vec<String> = m.iter().map(|&x| name(x)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Edges of `g` with its maximal stars.
///
/// `E(v)` is maximal for every vertex of degree at least 2; a leaf's star is
/// maximal only inside a `K2` component, where the two stars coincide and
/// are kept once (under the smaller endpoint).
pub fn star_system(g: &Graph) -> Result<SetSystem> {
    g.require_no_isolated()?;
    let mut family = Vec::new();
    let mut names = Vec::new();
    for v in 0..g.n() {
        let keep = match g.degree(v) {
            1 => {
                let w = g.neighbors(v)[0];
                g.degree(w) == 1 && v < w
            }
            _ => true,
        };
        if keep {
            let mut star = g.incident(v).to_vec();
            star.sort_unstable();
            family.push(star);
            names.push(format!("E({})", g.label(v)));
        }
    }
    let elements = (0..g.m()).map(|e| g.edge_label(e)).collect();
    SetSystem::new(elements, family, names, Source::Stars)
}

/// Vertices of `g` with its maximal stable sets.
pub fn stable_system(g: &Graph, budget: u64) -> Result<SetSystem> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("graph has no vertices".into()));
    }
    let family = enumerate_maximal_stable_sets(g, budget)?;
    let names = family.iter().map(|s| set_name(s, |v| g.label(v).to_string())).collect();
    SetSystem::new(g.labels().to_vec(), family, names, Source::StableSets)
}

impl SetSystem {
    pub fn stars(g: &Graph) -> Result<SetSystem> {
        star_system(g)
    }

    pub fn stable_sets(g: &Graph, budget: u64) -> Result<SetSystem> {
        stable_system(g, budget)
    }
}
