//! Half-space route: decide rationalizability by extending the observed
//! rule to the full menu lattice with slack variables.
//!
//! Two slack parameterizations are built. The primary one works in Möbius
//! space: variables `q̃(x,A)` on every lattice pair, consistency rows tying
//! accumulated sums to observed probabilities, inflow/outflow balance rows
//! at unobserved menus, a normalization row when the full set is
//! unobserved, and `q̃ ≥ 0` — nonnegativity of single variables is the only
//! inequality. The secondary one keeps slacks in probability space
//! (`p̃(x,A)` on unobserved pairs) at the price of one inequality row per
//! lattice pair; it serves as an internal cross-check of the first.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::choice::{canonical_pairs, Menu, MenuCollection, RandomChoiceRule};
use crate::lp::{self, FarkasCertificate, FeasibilityResult, LinearSystem};
use crate::mobius::{FullRule, LatticeFunction};
use crate::{limits, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HrepError {
    #[error("size {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// O(1)-memory position of a pair `(x, A)` in the canonical variable order:
/// cardinality descending, then menu mask ascending, then alternative
/// ascending. Mask-ascending within a cardinality class is exactly the
/// colexicographic subset order, so ranks come from the combinatorial
/// number system.
#[derive(Debug, Clone)]
pub struct PairIndexer {
    n: usize,
    binom: Vec<Vec<u64>>,
    /// `offsets[k]`: pairs whose menu has cardinality `> k`.
    offsets: Vec<u64>,
}

impl PairIndexer {
    pub fn new(n: usize) -> Self {
        let mut binom = vec![vec![0u64; n + 1]; n + 1];
        for i in 0..=n {
            binom[i][0] = 1;
            for j in 1..=i {
                binom[i][j] = binom[i - 1][j - 1] + if j <= i - 1 { binom[i - 1][j] } else { 0 };
            }
        }
        // offsets[k] = Σ_{j>k} j·C(n,j)
        let mut offsets = vec![0u64; n + 2];
        for k in (0..n).rev() {
            offsets[k] = offsets[k + 1] + (k as u64 + 1) * binom[n][k + 1];
        }
        Self { n, binom, offsets }
    }

    pub fn num_pairs(&self) -> u64 {
        self.offsets[0]
    }

    /// Colexicographic rank of `menu` among subsets of its own cardinality.
    fn colex_rank(&self, menu: Menu) -> u64 {
        menu.members()
            .enumerate()
            .map(|(t, member)| self.binom[member][t + 1])
            .sum()
    }

    pub fn index(&self, x: usize, menu: Menu) -> usize {
        debug_assert!(menu.contains(x));
        let k = menu.len();
        let within = (menu.mask() & ((1u32 << x) - 1)).count_ones() as u64;
        (self.offsets[k] + self.colex_rank(menu) * k as u64 + within) as usize
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

fn pair_label(prefix: &str, x: usize, menu: Menu) -> String {
    format!("{prefix}({x},{menu})")
}

/// Unobserved proper nonempty menus plus (last, if unobserved) the full
/// menu, in canonical row order.
fn unobserved_split(n: usize, menus: &MenuCollection) -> (Vec<Menu>, bool) {
    let full = Menu::full(n);
    let mut proper: Vec<Menu> = menus
        .unobserved(n)
        .into_iter()
        .filter(|&m| m != full)
        .collect();
    proper.sort_by_key(|m| (std::cmp::Reverse(m.len()), m.mask()));
    (proper, !menus.contains(full))
}

/// The Möbius-space slack system for an observed rule.
#[derive(Debug, Clone)]
pub struct QSystem {
    pub system: LinearSystem,
    n: usize,
    /// All lattice pairs in variable order.
    pairs: Vec<(usize, Menu)>,
}

impl QSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, Menu)] {
        &self.pairs
    }

    pub fn solution_to_lattice(&self, v: &[Rational]) -> LatticeFunction {
        let mut q = LatticeFunction::zeros(self.n);
        for (&(x, m), val) in self.pairs.iter().zip(v) {
            q.set(x, m, val.clone());
        }
        q
    }
}

/// Builds the Möbius-space system: consistency rows on observed pairs,
/// balance rows on unobserved proper menus, a normalization row when the
/// full menu is unobserved, and `q̃ ≥ 0` bounds.
pub fn build_q_system(p: &RandomChoiceRule) -> Result<QSystem, HrepError> {
    let n = p.num_alternatives();
    limits::check_cap(n, limits::MAX_HREP_BUILD).map_err(|cap| HrepError::TooLarge { n, cap })?;
    let indexer = PairIndexer::new(n);
    let pairs = canonical_pairs(MenuCollection::full_domain(n).iter());
    debug_assert_eq!(pairs.len() as u64, indexer.num_pairs());
    let labels = pairs
        .iter()
        .map(|&(x, m)| pair_label("q", x, m))
        .collect();
    let mut sys = LinearSystem::with_var_labels(labels);

    for &(x, menu) in &p.observed_pairs() {
        let coeffs: Vec<(usize, Rational)> = menu
            .supersets(n)
            .map(|b| (indexer.index(x, b), Rational::one()))
            .collect();
        sys.push_eq(
            pair_label("consistency", x, menu),
            coeffs,
            p.prob(x, menu).clone(),
        );
    }

    let (proper_unobserved, full_unobserved) = unobserved_split(n, p.domain());
    for menu in proper_unobserved {
        let mut coeffs: Vec<(usize, Rational)> = menu
            .members()
            .map(|x| (indexer.index(x, menu), Rational::one()))
            .collect();
        for y in menu.non_members(n) {
            coeffs.push((indexer.index(y, menu.with(y)), -Rational::one()));
        }
        sys.push_eq(format!("balance({menu})"), coeffs, Rational::zero());
    }
    if full_unobserved {
        let full = Menu::full(n);
        let coeffs = full
            .members()
            .map(|x| (indexer.index(x, full), Rational::one()))
            .collect();
        sys.push_eq("normalization", coeffs, Rational::one());
    }

    Ok(QSystem {
        system: sys,
        n,
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QFeasibility {
    Feasible(LatticeFunction),
    Infeasible(FarkasCertificate),
}

impl QFeasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, QFeasibility::Feasible(_))
    }
}

/// Decides rationalizability through the Möbius-space slack system.
pub fn hrep_feasible(p: &RandomChoiceRule) -> Result<QFeasibility, HrepError> {
    let n = p.num_alternatives();
    limits::check_cap(n, limits::MAX_HREP_SOLVE).map_err(|cap| HrepError::TooLarge { n, cap })?;
    let qsys = build_q_system(p)?;
    Ok(match lp::solve_feasibility(&qsys.system) {
        FeasibilityResult::Feasible(v) => QFeasibility::Feasible(qsys.solution_to_lattice(&v)),
        FeasibilityResult::Infeasible(cert) => QFeasibility::Infeasible(cert),
    })
}

/// The probability-space slack system.
#[derive(Debug, Clone)]
pub struct PSystem {
    pub system: LinearSystem,
    n: usize,
    /// Unobserved pairs in variable order.
    vars: Vec<(usize, Menu)>,
}

impl PSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &[(usize, Menu)] {
        &self.vars
    }

    /// Merge an LP solution with the observed rule into a full-domain rule.
    pub fn solution_to_full_rule(&self, p: &RandomChoiceRule, v: &[Rational]) -> FullRule {
        let mut observations: Vec<(Menu, Vec<(usize, Rational)>)> = Vec::new();
        for menu in p.domain().iter() {
            observations.push((
                menu,
                menu.members().map(|x| (x, p.prob(x, menu).clone())).collect(),
            ));
        }
        let mut extension: std::collections::BTreeMap<Menu, Vec<(usize, Rational)>> =
            std::collections::BTreeMap::new();
        for (&(x, m), val) in self.vars.iter().zip(v) {
            extension.entry(m).or_default().push((x, val.clone()));
        }
        observations.extend(extension);
        let rule = RandomChoiceRule::new(self.n, observations)
            .expect("sum and nonnegativity rows make the extension a valid rule");
        FullRule::new(rule).expect("extension covers every unobserved menu")
    }
}

/// Builds the probability-space system: sum-to-one rows per unobserved
/// menu, one accumulated-sign inequality per lattice pair (observed terms
/// on the right-hand side), and `p̃ ≥ 0` bounds.
pub fn build_p_system(p: &RandomChoiceRule) -> Result<PSystem, HrepError> {
    let n = p.num_alternatives();
    limits::check_cap(n, limits::MAX_HREP_BUILD).map_err(|cap| HrepError::TooLarge { n, cap })?;
    let observed = p.domain();
    let mut unobserved = observed.unobserved(n);
    unobserved.sort_by_key(|m| (std::cmp::Reverse(m.len()), m.mask()));
    let vars = canonical_pairs(unobserved.iter().copied());
    let var_pos: std::collections::HashMap<(usize, u32), usize> = vars
        .iter()
        .enumerate()
        .map(|(i, &(x, m))| ((x, m.mask()), i))
        .collect();
    let var_of = |x: usize, m: Menu| -> usize { var_pos[&(x, m.mask())] };
    let labels = vars.iter().map(|&(x, m)| pair_label("p", x, m)).collect();
    let mut sys = LinearSystem::with_var_labels(labels);

    for &menu in &unobserved {
        let coeffs = menu
            .members()
            .map(|x| (var_of(x, menu), Rational::one()))
            .collect();
        sys.push_eq(format!("sum({menu})"), coeffs, Rational::one());
    }

    for &(x, menu) in &canonical_pairs(MenuCollection::full_domain(n).iter()) {
        let mut coeffs: Vec<(usize, Rational)> = Vec::new();
        let mut rhs = Rational::zero();
        for sup in menu.supersets(n) {
            let sign = if (sup.len() - menu.len()) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            if observed.contains(sup) {
                // constant term moves to the right-hand side
                rhs -= sign * p.prob(x, sup);
            } else {
                coeffs.push((var_of(x, sup), sign));
            }
        }
        sys.push_ineq(pair_label("accumulated", x, menu), coeffs, rhs);
    }

    Ok(PSystem {
        system: sys,
        n,
        vars,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PFeasibility {
    Feasible(FullRule),
    Infeasible(FarkasCertificate),
}

impl PFeasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, PFeasibility::Feasible(_))
    }
}

/// Decides rationalizability through the probability-space slack system.
pub fn pslack_feasible(p: &RandomChoiceRule) -> Result<PFeasibility, HrepError> {
    let n = p.num_alternatives();
    limits::check_cap(n, limits::MAX_HREP_SOLVE).map_err(|cap| HrepError::TooLarge { n, cap })?;
    let psys = build_p_system(p)?;
    Ok(match lp::solve_feasibility(&psys.system) {
        FeasibilityResult::Feasible(v) => {
            PFeasibility::Feasible(psys.solution_to_full_rule(p, &v))
        }
        FeasibilityResult::Infeasible(cert) => PFeasibility::Infeasible(cert),
    })
}

/// Closed-form row count of the Möbius-space system:
/// `n·2^(n−1) − Σ_{A unobserved} (|A| − 1)`, computed from the observed side
/// as `(2^n − 1) + Σ_{A observed} (|A| − 1)` so nothing is enumerated.
pub fn predicted_row_count(n: usize, menus: &MenuCollection) -> u64 {
    let base = (1u64 << n) - 1;
    let observed_extra: u64 = menus.iter().map(|m| m.len() as u64 - 1).sum();
    base + observed_extra
}

/// Column count of the Möbius-space system: one variable per lattice pair.
pub fn lattice_pair_count(n: usize) -> u64 {
    n as u64 * (1u64 << (n - 1))
}
