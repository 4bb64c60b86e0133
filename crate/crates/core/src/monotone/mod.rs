//! Monotone random utility: dominance partial orders, the equality rows
//! that zero out dominated Möbius mass, the restricted-order oracle, and
//! the two-good budget patch construction.

pub mod patches;

pub use patches::{build_patches_2goods, Budget, HalfSide, Patch, PatchArrangement, PatchError};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::choice::{enumerate_orders, LinearOrder, Menu, RandomChoiceRule};
use crate::hrep::{self, HrepError, PairIndexer, QFeasibility};
use crate::lp::{self, FeasibilityResult};
use crate::{limits, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonotoneError {
    #[error("size {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("dominance relation contains a cycle through {through}")]
    CyclicDominance { through: usize },
}

/// A strict partial order (irreflexive, transitive) over alternative
/// indices; stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrder {
    n: usize,
    dominates: Vec<bool>, // row-major n×n, [a*n+b] ⇔ a dominates b
}

impl PartialOrder {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            dominates: vec![false; n * n],
        }
    }

    /// Transitive closure of the given pairs; rejects cycles.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, MonotoneError> {
        let mut dom = vec![false; n * n];
        for &(a, b) in pairs {
            assert!(a < n && b < n, "dominance pair out of range");
            dom[a * n + b] = true;
        }
        // Floyd–Warshall closure
        for k in 0..n {
            for a in 0..n {
                if dom[a * n + k] {
                    for b in 0..n {
                        if dom[k * n + b] {
                            dom[a * n + b] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            if dom[x * n + x] {
                return Err(MonotoneError::CyclicDominance { through: x });
            }
        }
        Ok(Self { n, dominates: dom })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.dominates[a * self.n + b]
    }

    pub fn is_empty_relation(&self) -> bool {
        self.dominates.iter().all(|&d| !d)
    }

    /// All dominance pairs `(dominator, dominated)`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.dominates(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Bitmask of alternatives dominating `x`.
    pub fn upper_mask(&self, x: usize) -> u32 {
        let mut mask = 0u32;
        for y in 0..self.n {
            if self.dominates(y, x) {
                mask |= 1 << y;
            }
        }
        mask
    }
}

/// The set of alternatives strictly dominating `x`.
pub fn upper_set(order: &PartialOrder, x: usize) -> Vec<usize> {
    (0..order.n()).filter(|&y| order.dominates(y, x)).collect()
}

/// The first observed dominated choice with positive probability, if any.
pub fn monotonicity_violation(
    p: &RandomChoiceRule,
    order: &PartialOrder,
) -> Option<(usize, usize, Menu)> {
    for &(x, menu) in &p.observed_pairs() {
        if p.prob(x, menu).is_zero() {
            continue;
        }
        let dominators = order.upper_mask(x) & menu.mask();
        if dominators != 0 {
            let dominator = dominators.trailing_zeros() as usize;
            return Some((dominator, x, menu));
        }
    }
    None
}

/// True iff `p(y,A) = 0` whenever some `x ∈ A` dominates `y`.
pub fn is_monotone_rcr(p: &RandomChoiceRule, order: &PartialOrder) -> bool {
    monotonicity_violation(p, order).is_none()
}

/// Equality rows over the Möbius-slack variables zeroing all mass of `x` on
/// menus that contain a dominator of `x`; at most `n − 1` rows.
pub fn monotone_constraint_rows(order: &PartialOrder, n: usize) -> Vec<lp::Row> {
    let indexer = PairIndexer::new(n);
    let mut rows = Vec::new();
    for x in 0..n {
        let upper = order.upper_mask(x);
        if upper == 0 {
            continue;
        }
        let mut coeffs = Vec::new();
        for mask in 1..(1u32 << n) {
            if mask & (1 << x) != 0 && mask & upper != 0 {
                let menu = Menu::from_mask(mask).unwrap();
                coeffs.push((indexer.index(x, menu), Rational::one()));
            }
        }
        rows.push(lp::Row {
            label: format!("monotone({x})"),
            coeffs,
            rhs: Rational::zero(),
        });
    }
    rows
}

/// Rationalizability by dominance-respecting utilities: the Möbius-slack
/// system plus the monotonicity rows.
pub fn monotone_feasible(
    p: &RandomChoiceRule,
    order: &PartialOrder,
) -> Result<QFeasibility, MonotoneError> {
    let n = p.num_alternatives();
    limits::check_cap(n, limits::MAX_HREP_SOLVE)
        .map_err(|cap| MonotoneError::TooLarge { n, cap })?;
    let mut qsys = match hrep::build_q_system(p) {
        Ok(q) => q,
        Err(HrepError::TooLarge { n, cap }) => {
            return Err(MonotoneError::TooLarge { n, cap })
        }
    };
    for row in monotone_constraint_rows(order, n) {
        qsys.system.push_eq(row.label, row.coeffs, row.rhs);
    }
    Ok(match lp::solve_feasibility(&qsys.system) {
        FeasibilityResult::Feasible(v) => QFeasibility::Feasible(qsys.solution_to_lattice(&v)),
        FeasibilityResult::Infeasible(cert) => QFeasibility::Infeasible(cert),
    })
}

/// All linear extensions of the partial order, in lexicographic order.
pub fn monotone_orders(
    order: &PartialOrder,
    n: usize,
) -> Result<Vec<LinearOrder>, MonotoneError> {
    limits::check_cap(n, limits::MAX_ORDER_ENUMERATION)
        .map_err(|cap| MonotoneError::TooLarge { n, cap })?;
    let pairs = order.pairs();
    let all = enumerate_orders(n).map_err(|_| MonotoneError::TooLarge {
        n,
        cap: limits::effective_cap(limits::MAX_ORDER_ENUMERATION),
    })?;
    Ok(all
        .into_iter()
        .filter(|o| pairs.iter().all(|&(a, b)| o.prefers(a, b)))
        .collect())
}
