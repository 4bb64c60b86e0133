//! Vertex-representation machinery: the 0/1 matrix of order-by-pair choice
//! indicators, feasibility of nonnegative order weights reproducing the
//! data, an L∞ distance statistic with the same zero set, column generation
//! over a restricted order set, and the sequence-inequality search.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::choice::{
    canonical_pairs, enumerate_orders, LinearOrder, Menu, MenuCollection, PreferenceDistribution,
    RandomChoiceRule,
};
use crate::lp::{self, FarkasCertificate, FeasibilityResult, LinearSystem};
use crate::{limits, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VrepError {
    #[error("size {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("column generation needs a nonempty seed")]
    EmptySeed,
}

/// The choice-indicator matrix: rows indexed by linear orders, columns by
/// observed pairs `(x, A)`; the entry is 1 iff `x` is the best element of
/// `A` under the row's order. Stored compressed as the argmax per menu.
#[derive(Debug, Clone)]
pub struct VRepMatrix {
    orders: Vec<LinearOrder>,
    menus: Vec<Menu>,
    pairs: Vec<(usize, Menu)>,
    menu_pos: HashMap<u32, usize>,
    /// `choices[row][menu_slot]` = maximal alternative of that menu.
    choices: Vec<Vec<u8>>,
}

impl VRepMatrix {
    pub fn num_rows(&self) -> usize {
        self.orders.len()
    }

    pub fn num_cols(&self) -> usize {
        self.pairs.len()
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    /// Observed pairs in canonical column order.
    pub fn pairs(&self) -> &[(usize, Menu)] {
        &self.pairs
    }

    /// Observed menus in canonical order (cardinality descending, then mask).
    pub fn menus(&self) -> &[Menu] {
        &self.menus
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        let (x, menu) = self.pairs[col];
        self.choices[row][self.menu_pos[&menu.mask()]] == x as u8
    }
}

/// Builds the indicator matrix for all `n!` orders over the observed menus.
pub fn build_m_matrix(n: usize, menus: &MenuCollection) -> Result<VRepMatrix, VrepError> {
    limits::check_cap(n, limits::MAX_VREP).map_err(|cap| VrepError::TooLarge { n, cap })?;
    let orders = enumerate_orders(n).map_err(|_| VrepError::TooLarge {
        n,
        cap: limits::effective_cap(limits::MAX_ORDER_ENUMERATION),
    })?;
    let pairs = canonical_pairs(menus.iter());
    let mut menu_list: Vec<Menu> = Vec::new();
    for &(_, m) in &pairs {
        if menu_list.last() != Some(&m) {
            menu_list.push(m);
        }
    }
    let menu_pos: HashMap<u32, usize> = menu_list
        .iter()
        .enumerate()
        .map(|(i, m)| (m.mask(), i))
        .collect();
    let choices = orders
        .iter()
        .map(|o| menu_list.iter().map(|&m| o.maximal(m) as u8).collect())
        .collect();
    Ok(VRepMatrix {
        orders,
        menus: menu_list,
        pairs,
        menu_pos,
        choices,
    })
}

/// The equality system `Σ_≻ ν(≻)·1{maximal(≻,A)=x} = p(x,A)` over the given
/// subset of rows, one variable per included order.
pub fn restricted_system(
    matrix: &VRepMatrix,
    p: &RandomChoiceRule,
    included: &[usize],
) -> LinearSystem {
    let labels = included
        .iter()
        .map(|&row| format!("nu{:?}", matrix.orders[row].ranking()))
        .collect();
    let mut sys = LinearSystem::with_var_labels(labels);
    for &(x, menu) in &matrix.pairs {
        let slot = matrix.menu_pos[&menu.mask()];
        let coeffs: Vec<(usize, Rational)> = included
            .iter()
            .enumerate()
            .filter(|&(_, &row)| matrix.choices[row][slot] == x as u8)
            .map(|(col, _)| (col, Rational::one()))
            .collect();
        sys.push_eq(format!("match({x},{menu})"), coeffs, p.prob(x, menu).clone());
    }
    sys
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VrepOutcome {
    Feasible(PreferenceDistribution),
    Infeasible(FarkasCertificate),
}

impl VrepOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, VrepOutcome::Feasible(_))
    }
}

fn weights_to_distribution(
    matrix: &VRepMatrix,
    included: &[usize],
    weights: &[Rational],
) -> PreferenceDistribution {
    let entries: Vec<(LinearOrder, Rational)> = included
        .iter()
        .zip(weights)
        .filter(|(_, w)| !w.is_zero())
        .map(|(&row, w)| (matrix.orders[row].clone(), w.clone()))
        .collect();
    let total: Rational = entries.iter().map(|(_, w)| w).sum();
    if total.is_one() {
        PreferenceDistribution::new(entries).expect("weights are nonnegative and sum to one")
    } else {
        // with no observed menus the row sums cannot pin the total mass
        PreferenceDistribution::relaxed(entries).expect("weights are nonnegative")
    }
}

/// Does some nonnegative weighting of all linear orders reproduce `p`?
pub fn vrep_feasible(p: &RandomChoiceRule) -> Result<VrepOutcome, VrepError> {
    let matrix = build_m_matrix(p.num_alternatives(), p.domain())?;
    let included: Vec<usize> = (0..matrix.num_rows()).collect();
    let sys = restricted_system(&matrix, p, &included);
    Ok(match lp::solve_feasibility(&sys) {
        FeasibilityResult::Feasible(w) => {
            VrepOutcome::Feasible(weights_to_distribution(&matrix, &included, &w))
        }
        FeasibilityResult::Infeasible(cert) => VrepOutcome::Infeasible(cert),
    })
}

/// Same verdict as [`vrep_feasible`] over a restricted order set that grows
/// by pricing excluded orders against the infeasibility certificate.
#[derive(Debug, Clone)]
pub struct ColumnGenerationRun {
    pub outcome: VrepOutcome,
    /// Restricted solves performed.
    pub rounds: usize,
    /// Orders in the final restricted set.
    pub final_size: usize,
}

pub fn column_generation(
    p: &RandomChoiceRule,
    seed_orders: &[LinearOrder],
) -> Result<ColumnGenerationRun, VrepError> {
    if seed_orders.is_empty() {
        return Err(VrepError::EmptySeed);
    }
    let matrix = build_m_matrix(p.num_alternatives(), p.domain())?;
    let row_of: HashMap<&[usize], usize> = matrix
        .orders
        .iter()
        .enumerate()
        .map(|(i, o)| (o.ranking(), i))
        .collect();
    let mut in_set = vec![false; matrix.num_rows()];
    for seed in seed_orders {
        let row = row_of
            .get(seed.ranking())
            .copied()
            .expect("seed orders must range over the rule's alternatives");
        in_set[row] = true;
    }
    let mut rounds = 0;
    loop {
        let included: Vec<usize> = (0..matrix.num_rows()).filter(|&r| in_set[r]).collect();
        let sys = restricted_system(&matrix, p, &included);
        rounds += 1;
        match lp::solve_feasibility(&sys) {
            FeasibilityResult::Feasible(w) => {
                return Ok(ColumnGenerationRun {
                    outcome: VrepOutcome::Feasible(weights_to_distribution(
                        &matrix, &included, &w,
                    )),
                    rounds,
                    final_size: included.len(),
                });
            }
            FeasibilityResult::Infeasible(cert) => {
                // price excluded orders in lexicographic sequence; add the
                // first one whose column has positive certificate value
                let mut added = false;
                'scan: for row in 0..matrix.num_rows() {
                    if in_set[row] {
                        continue;
                    }
                    let mut score = Rational::zero();
                    for (col, &(x, menu)) in matrix.pairs.iter().enumerate() {
                        let slot = matrix.menu_pos[&menu.mask()];
                        if matrix.choices[row][slot] == x as u8 {
                            score += &cert.multipliers[col];
                        }
                    }
                    if score.is_positive() {
                        in_set[row] = true;
                        added = true;
                        break 'scan;
                    }
                }
                if !added {
                    // no excluded order prices out: the certificate is valid
                    // for the unrestricted system
                    return Ok(ColumnGenerationRun {
                        outcome: VrepOutcome::Infeasible(cert),
                        rounds,
                        final_size: in_set.iter().filter(|&&b| b).count(),
                    });
                }
            }
        }
    }
}

/// `min_{ν ≥ 0} ‖νᵀM − p‖_∞` as an exact LP; zero exactly when `p` is
/// rationalizable.
pub fn linf_statistic(p: &RandomChoiceRule) -> Result<Rational, VrepError> {
    let matrix = build_m_matrix(p.num_alternatives(), p.domain())?;
    let n_orders = matrix.num_rows();
    let mut labels: Vec<String> = matrix
        .orders
        .iter()
        .map(|o| format!("nu{:?}", o.ranking()))
        .collect();
    labels.push("deviation".into());
    let t = n_orders;
    let mut sys = LinearSystem::with_var_labels(labels);
    for &(x, menu) in &matrix.pairs {
        let slot = matrix.menu_pos[&menu.mask()];
        let hits: Vec<usize> = (0..n_orders)
            .filter(|&row| matrix.choices[row][slot] == x as u8)
            .collect();
        // ν·m − p ≤ t  ⇔  t − ν·m ≥ −p
        let mut upper: Vec<(usize, Rational)> =
            hits.iter().map(|&row| (row, -Rational::one())).collect();
        upper.push((t, Rational::one()));
        sys.push_ineq(
            format!("dev_hi({x},{menu})"),
            upper,
            -p.prob(x, menu).clone(),
        );
        // ν·m − p ≥ −t  ⇔  ν·m + t ≥ p
        let mut lower: Vec<(usize, Rational)> =
            hits.iter().map(|&row| (row, Rational::one())).collect();
        lower.push((t, Rational::one()));
        sys.push_ineq(
            format!("dev_lo({x},{menu})"),
            lower,
            p.prob(x, menu).clone(),
        );
    }
    let mut objective = vec![Rational::zero(); n_orders + 1];
    objective[t] = Rational::one();
    match lp::minimize(&sys, &objective).expect("objective matches system width") {
        lp::MinimizeOutcome::Optimal { value, .. } => Ok(value),
        lp::MinimizeOutcome::Infeasible(_) | lp::MinimizeOutcome::Unbounded => {
            unreachable!("the deviation program is feasible and bounded below by zero")
        }
    }
}

/// A sequence of observed pairs whose probabilities sum above the best
/// deterministic count, disproving rationalizability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceViolation {
    pub sequence: Vec<(usize, Menu)>,
    pub lhs: Rational,
    pub rhs: Rational,
}

/// Searches sequences (with repetition) over observed pairs up to
/// `max_len`, comparing `Σ p(x_i, A_i)` with the best achievable count over
/// all orders. Returns the first violation in deterministic order, if any.
pub fn arsp_search(
    p: &RandomChoiceRule,
    max_len: usize,
) -> Result<Option<SequenceViolation>, VrepError> {
    let n = p.num_alternatives();
    limits::check_cap(n, limits::MAX_ARSP_N).map_err(|cap| VrepError::TooLarge { n, cap })?;
    limits::check_cap(max_len, limits::MAX_ARSP_LEN).map_err(|cap| VrepError::TooLarge {
        n: max_len,
        cap,
    })?;
    let orders = enumerate_orders(n).map_err(|_| VrepError::TooLarge {
        n,
        cap: limits::effective_cap(limits::MAX_ORDER_ENUMERATION),
    })?;
    let pairs = p.observed_pairs();
    // supports[o][i]: order o picks x_i from A_i
    let supports: Vec<Vec<bool>> = orders
        .iter()
        .map(|o| pairs.iter().map(|&(x, m)| o.maximal(m) == x).collect())
        .collect();
    for len in 1..=max_len {
        for combo in (0..pairs.len()).combinations_with_replacement(len) {
            let lhs: Rational = combo.iter().map(|&i| p.prob(pairs[i].0, pairs[i].1)).sum();
            let rhs_count = supports
                .iter()
                .map(|s| combo.iter().filter(|&&i| s[i]).count())
                .max()
                .unwrap_or(0);
            let rhs = Rational::from_integer((rhs_count as i64).into());
            if lhs > rhs {
                return Ok(Some(SequenceViolation {
                    sequence: combo.into_iter().map(|i| pairs[i]).collect(),
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::induce_rcr;
    use crate::rat;

    fn menu(bits: &[usize]) -> Menu {
        Menu::from_members(bits.iter().copied()).unwrap()
    }

    fn condorcet() -> RandomChoiceRule {
        RandomChoiceRule::new(
            3,
            vec![
                (menu(&[0, 1]), vec![(0, rat(1, 1))]),
                (menu(&[1, 2]), vec![(1, rat(1, 1))]),
                (menu(&[0, 2]), vec![(2, rat(1, 1))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn matrix_row_counts_match_factorials() {
        let m = build_m_matrix(3, &MenuCollection::full_domain(3)).unwrap();
        assert_eq!(m.num_rows(), 6);
        assert_eq!(m.num_cols(), 12);
        let m = build_m_matrix(4, &MenuCollection::full_domain(4)).unwrap();
        assert_eq!(m.num_rows(), 24);
        assert_eq!(m.num_cols(), 32);
    }

    #[test]
    fn matrix_guard() {
        assert!(matches!(
            build_m_matrix(9, &MenuCollection::full_domain(3)),
            Err(VrepError::TooLarge { .. })
        ));
    }

    #[test]
    fn two_alternative_single_menu_matrix() {
        let menus = MenuCollection::from_menus(vec![menu(&[0, 1])]).unwrap();
        let m = build_m_matrix(2, &menus).unwrap();
        assert_eq!(m.num_rows(), 2);
        assert_eq!(m.num_cols(), 2);
        // each order picks exactly its top
        for row in 0..2 {
            let ones: Vec<usize> = (0..2).filter(|&c| m.entry(row, c)).collect();
            assert_eq!(ones.len(), 1);
        }
    }

    #[test]
    fn row_block_property_one_hit_per_menu() {
        let m = build_m_matrix(4, &MenuCollection::full_domain(4)).unwrap();
        for row in 0..m.num_rows() {
            let mut per_menu: HashMap<u32, usize> = HashMap::new();
            for (col, &(_, mm)) in m.pairs().iter().enumerate() {
                if m.entry(row, col) {
                    *per_menu.entry(mm.mask()).or_default() += 1;
                }
            }
            assert!(per_menu.values().all(|&c| c == 1));
            assert_eq!(per_menu.len(), m.menus.len());
        }
    }

    #[test]
    fn induced_rules_are_feasible() {
        let orders = enumerate_orders(3).unwrap();
        let nu = PreferenceDistribution::new(vec![
            (orders[0].clone(), rat(2, 5)),
            (orders[3].clone(), rat(3, 5)),
        ])
        .unwrap();
        let p = induce_rcr(&nu, &MenuCollection::full_domain(3)).unwrap();
        match vrep_feasible(&p).unwrap() {
            VrepOutcome::Feasible(found) => {
                let reproduced = induce_rcr(&found, p.domain()).unwrap();
                assert_eq!(reproduced, p);
            }
            VrepOutcome::Infeasible(_) => panic!("constructed rule must be feasible"),
        }
    }

    #[test]
    fn condorcet_cycle_is_infeasible() {
        match vrep_feasible(&condorcet()).unwrap() {
            VrepOutcome::Infeasible(_) => {}
            VrepOutcome::Feasible(_) => panic!("cycle must be infeasible"),
        }
    }

    #[test]
    fn acyclic_binary_data_is_feasible() {
        let p = RandomChoiceRule::new(
            3,
            vec![
                (menu(&[0, 1]), vec![(0, rat(1, 1))]),
                (menu(&[1, 2]), vec![(1, rat(1, 1))]),
                (menu(&[0, 2]), vec![(0, rat(1, 1))]),
            ],
        )
        .unwrap();
        assert!(vrep_feasible(&p).unwrap().is_feasible());
    }

    #[test]
    fn linf_zero_iff_feasible() {
        let p = condorcet();
        // forced by the menu mass identities: three unit targets, each order
        // matching at most two, so the best uniform cycle mix deviates by 1/3
        assert_eq!(linf_statistic(&p).unwrap(), rat(1, 3));

        let orders = enumerate_orders(3).unwrap();
        let nu = PreferenceDistribution::new(vec![(orders[0].clone(), rat(1, 1))]).unwrap();
        let good = induce_rcr(&nu, &MenuCollection::full_domain(3)).unwrap();
        assert_eq!(linf_statistic(&good).unwrap(), rat(0, 1));
    }

    #[test]
    fn linf_singleton_menu_is_zero() {
        let p = RandomChoiceRule::new(2, vec![(menu(&[0]), vec![(0, rat(1, 1))])]).unwrap();
        assert_eq!(linf_statistic(&p).unwrap(), rat(0, 1));
    }

    #[test]
    fn column_generation_matches_full_solve() {
        let orders = enumerate_orders(3).unwrap();
        // feasible instance seeded with its true support resolves immediately
        let nu = PreferenceDistribution::new(vec![
            (orders[1].clone(), rat(1, 2)),
            (orders[4].clone(), rat(1, 2)),
        ])
        .unwrap();
        let p = induce_rcr(&nu, &MenuCollection::full_domain(3)).unwrap();
        let run =
            column_generation(&p, &[orders[1].clone(), orders[4].clone()]).unwrap();
        assert!(run.outcome.is_feasible());
        assert_eq!(run.rounds, 1);

        // infeasible instance from a single-order seed stays bounded by n!
        let run = column_generation(&condorcet(), &[orders[0].clone()]).unwrap();
        assert!(!run.outcome.is_feasible());
        assert!(run.final_size <= 6);

        // seeding everything is the unrestricted solve
        let run = column_generation(&condorcet(), &orders).unwrap();
        assert!(!run.outcome.is_feasible());
        assert_eq!(run.rounds, 1);
    }

    #[test]
    fn colgen_rejects_empty_seed() {
        assert!(matches!(
            column_generation(&condorcet(), &[]),
            Err(VrepError::EmptySeed)
        ));
    }

    #[test]
    fn complementary_pair_is_never_violated() {
        let p = RandomChoiceRule::new(
            2,
            vec![(menu(&[0, 1]), vec![(0, rat(1, 2)), (1, rat(1, 2))])],
        )
        .unwrap();
        assert_eq!(arsp_search(&p, 2).unwrap(), None);
    }

    #[test]
    fn condorcet_sequence_violation_at_length_three() {
        let hit = arsp_search(&condorcet(), 3).unwrap().expect("violation");
        assert_eq!(hit.sequence.len(), 3);
        assert_eq!(hit.lhs, rat(3, 1));
        assert_eq!(hit.rhs, rat(2, 1));
    }

    #[test]
    fn rationalizable_rules_pass_sequence_test() {
        let orders = enumerate_orders(3).unwrap();
        let nu = PreferenceDistribution::new(vec![
            (orders[0].clone(), rat(1, 3)),
            (orders[5].clone(), rat(2, 3)),
        ])
        .unwrap();
        let p = induce_rcr(&nu, &MenuCollection::full_domain(3)).unwrap();
        assert_eq!(arsp_search(&p, 3).unwrap(), None);
    }

    #[test]
    fn arsp_guards() {
        assert!(matches!(
            arsp_search(&condorcet(), 5),
            Err(VrepError::TooLarge { .. })
        ));
    }
}
