//! The Möbius inverse of a full-domain choice rule, its inverse transform,
//! and the exact characterization of which lattice functions arise as the
//! Möbius inverse of a valid full-domain rule.
//!
//! The Möbius inverse is `q(x,A) = Σ_{B ⊇ A} (−1)^{|B∖A|} p(x,B)`
//! (the Block–Marschak polynomial at `(x,A)`); the inverse direction is the
//! superset accumulation `f(x,A) = Σ_{B ⊇ A} q(x,B)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::choice::{canonical_pairs, Menu, MenuCollection, RandomChoiceRule};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MobiusError {
    #[error("rule domain is not the full menu lattice ({observed} of {expected} menus)")]
    IncompleteDomain { observed: usize, expected: usize },
}

/// A choice rule observed on *every* nonempty menu.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullRule(RandomChoiceRule);

impl FullRule {
    pub fn new(rule: RandomChoiceRule) -> Result<Self, MobiusError> {
        if !rule.is_full_domain() {
            return Err(MobiusError::IncompleteDomain {
                observed: rule.domain().len(),
                expected: (1usize << rule.num_alternatives()) - 1,
            });
        }
        Ok(Self(rule))
    }

    pub fn rule(&self) -> &RandomChoiceRule {
        &self.0
    }

    pub fn num_alternatives(&self) -> usize {
        self.0.num_alternatives()
    }

    pub fn prob(&self, x: usize, menu: Menu) -> &Rational {
        self.0.prob(x, menu)
    }
}

/// A rational value for every pair `(x, A)` with `x ∈ A ⊆ X`, `A` nonempty.
///
/// Stores both Möbius inverses and accumulated (choice-probability-shaped)
/// functions; the semantics live at the call sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFunction {
    n: usize,
    // index: mask * n + x, valid only when x ∈ mask
    values: Vec<Rational>,
}

impl LatticeFunction {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            values: vec![Rational::zero(); n << n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: usize, menu: Menu) -> &Rational {
        debug_assert!(menu.contains(x));
        &self.values[menu.mask() as usize * self.n + x]
    }

    pub fn set(&mut self, x: usize, menu: Menu, v: Rational) {
        debug_assert!(menu.contains(x));
        self.values[menu.mask() as usize * self.n + x] = v;
    }

    /// All pairs in canonical order (cardinality descending, mask, index).
    pub fn pairs(&self) -> Vec<(usize, Menu)> {
        canonical_pairs(MenuCollection::full_domain(self.n).iter())
    }

    /// First pair carrying a negative value, scanning canonical order.
    pub fn first_negative(&self) -> Option<(usize, Menu)> {
        self.pairs()
            .into_iter()
            .find(|&(x, m)| self.value(x, m) < &Rational::zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Reinterpret as a full-domain rule, validating the rule invariants.
    pub fn to_full_rule(&self) -> Result<FullRule, crate::choice::ChoiceError> {
        let observations = MenuCollection::full_domain(self.n)
            .iter()
            .map(|m| {
                (
                    m,
                    m.members().map(|x| (x, self.value(x, m).clone())).collect(),
                )
            })
            .collect();
        let rule = RandomChoiceRule::new(self.n, observations)?;
        Ok(FullRule(rule))
    }
}

/// In-place superset-sum transform per alternative:
/// `f(x,A) ← Σ_{B ⊇ A} f(x,B)`.
fn superset_accumulate(values: &mut [Rational], n: usize) {
    for x in 0..n {
        for bit in 0..n {
            if bit == x {
                continue;
            }
            let b = 1usize << bit;
            for mask in 0..(1usize << n) {
                if mask & (1 << x) != 0 && mask & b == 0 {
                    let hi = values[(mask | b) * n + x].clone();
                    values[mask * n + x] += hi;
                }
            }
        }
    }
}

/// Inverse of [`superset_accumulate`]:
/// `f(x,A) ← Σ_{B ⊇ A} (−1)^{|B∖A|} f(x,B)`.
fn superset_difference(values: &mut [Rational], n: usize) {
    for x in 0..n {
        for bit in 0..n {
            if bit == x {
                continue;
            }
            let b = 1usize << bit;
            for mask in 0..(1usize << n) {
                if mask & (1 << x) != 0 && mask & b == 0 {
                    let hi = values[(mask | b) * n + x].clone();
                    values[mask * n + x] -= hi;
                }
            }
        }
    }
}

/// The Möbius inverse `q(x,A) = Σ_{B ⊇ A} (−1)^{|B∖A|} p(x,B)`.
pub fn mobius_inverse(p: &FullRule) -> LatticeFunction {
    let n = p.num_alternatives();
    let mut out = LatticeFunction::zeros(n);
    for (menu, x, v) in p.rule().entries() {
        out.set(x, menu, v.clone());
    }
    superset_difference(&mut out.values, n);
    out
}

/// Superset accumulation `f(x,A) = Σ_{B ⊇ A} q(x,B)`; exact inverse of
/// [`mobius_inverse`].
pub fn accumulate(q: &LatticeFunction) -> LatticeFunction {
    let mut out = q.clone();
    superset_accumulate(&mut out.values, q.n);
    out
}

/// True iff `Σ_{x∈A} f(x,A)` takes the same value on every nonempty menu.
pub fn is_set_constant(f: &LatticeFunction) -> bool {
    let n = f.n;
    let full = Menu::full(n);
    let reference: Rational = full.members().map(|x| f.value(x, full)).sum();
    for mask in 1..(1u32 << n) {
        let menu = Menu::from_mask(mask).unwrap();
        let total: Rational = menu.members().map(|x| f.value(x, menu)).sum();
        if total != reference {
            return false;
        }
    }
    true
}

/// Which characterization condition a candidate Möbius inverse failed.
///
/// Checked in the fixed order: normalization at the full set, then the
/// inflow/outflow balance on proper menus, then nonnegative accumulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QtopViolation {
    /// `Σ_x q(x,X) ≠ 1`.
    Normalization { total: Rational },
    /// `Σ_{x∈A} q(x,A) ≠ Σ_{y∉A} q(y,A∪{y})` at `A`.
    Balance { menu: Menu },
    /// `Σ_{B⊇A} q(x,B) < 0` at `(x,A)`.
    NegativeAccumulation { x: usize, menu: Menu },
}

/// Decides whether `q` is the Möbius inverse of some full-domain rule,
/// reporting the first failed condition otherwise.
pub fn satisfies_qtop(q: &LatticeFunction) -> Result<(), QtopViolation> {
    let n = q.n;
    let full = Menu::full(n);

    let total: Rational = full.members().map(|x| q.value(x, full)).sum();
    if !total.is_one() {
        return Err(QtopViolation::Normalization { total });
    }

    // proper nonempty menus in canonical order
    let mut proper: Vec<Menu> = (1..full.mask()).map(|m| Menu::from_mask(m).unwrap()).collect();
    proper.sort_by_key(|m| (std::cmp::Reverse(m.len()), m.mask()));
    for menu in proper {
        let inflow: Rational = menu.members().map(|x| q.value(x, menu)).sum();
        let outflow: Rational = menu
            .non_members(n)
            .map(|y| q.value(y, menu.with(y)))
            .sum();
        if inflow != outflow {
            return Err(QtopViolation::Balance { menu });
        }
    }

    let acc = accumulate(q);
    if let Some((x, menu)) = acc.first_negative() {
        return Err(QtopViolation::NegativeAccumulation { x, menu });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::{enumerate_orders, induce_rcr, LinearOrder, PreferenceDistribution};
    use crate::rat;

    fn uniform_rule(n: usize) -> FullRule {
        let observations = MenuCollection::full_domain(n)
            .iter()
            .map(|m| {
                (
                    m,
                    m.members()
                        .map(|x| (x, rat(1, m.len() as i64)))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        FullRule::new(RandomChoiceRule::new(n, observations).unwrap()).unwrap()
    }

    /// Brute-force alternating sum, the independent oracle for the fast
    /// transform.
    fn mobius_by_alternating_sum(p: &FullRule) -> LatticeFunction {
        let n = p.num_alternatives();
        let mut out = LatticeFunction::zeros(n);
        for menu in MenuCollection::full_domain(n).iter() {
            for x in menu.members() {
                let mut total = Rational::zero();
                for sup in menu.supersets(n) {
                    let sign = if (sup.len() - menu.len()) % 2 == 0 {
                        rat(1, 1)
                    } else {
                        rat(-1, 1)
                    };
                    total += sign * p.prob(x, sup);
                }
                out.set(x, menu, total);
            }
        }
        out
    }

    #[test]
    fn singleton_mobius_is_one() {
        let rule = FullRule::new(
            RandomChoiceRule::new(1, vec![(Menu::full(1), vec![(0, rat(1, 1))])]).unwrap(),
        )
        .unwrap();
        let q = mobius_inverse(&rule);
        assert_eq!(q.value(0, Menu::full(1)), &rat(1, 1));
    }

    #[test]
    fn uniform_three_alternative_values() {
        // frozen from the alternating-sum oracle
        let q = mobius_inverse(&uniform_rule(3));
        let full = Menu::full(3);
        for x in 0..3 {
            assert_eq!(q.value(x, full), &rat(1, 3));
            assert_eq!(q.value(x, Menu::singleton(x)), &rat(1, 3));
        }
        for x in 0..3usize {
            for y in 0..3usize {
                if x != y {
                    let m = Menu::from_members([x, y]).unwrap();
                    assert_eq!(q.value(x, m), &rat(1, 6));
                }
            }
        }
        assert_eq!(q, mobius_by_alternating_sum(&uniform_rule(3)));
    }

    #[test]
    fn degenerate_rule_concentrates_on_contour_sets() {
        let order = LinearOrder::new(vec![0, 1, 2]).unwrap();
        let nu = PreferenceDistribution::new(vec![(order, rat(1, 1))]).unwrap();
        let rule = FullRule::new(
            induce_rcr(&nu, &MenuCollection::full_domain(3)).unwrap(),
        )
        .unwrap();
        let q = mobius_inverse(&rule);
        // the top alternative collects all mass at the full set
        assert_eq!(q.value(0, Menu::full(3)), &rat(1, 1));
        assert_eq!(q.value(0, Menu::from_members([0, 1]).unwrap()), &rat(0, 1));
        assert_eq!(q.value(0, Menu::from_members([0, 2]).unwrap()), &rat(0, 1));
        assert_eq!(q.value(0, Menu::singleton(0)), &rat(0, 1));
        // the middle alternative's mass sits where the better one is absent
        assert_eq!(q.value(1, Menu::from_members([1, 2]).unwrap()), &rat(1, 1));
        assert_eq!(q, mobius_by_alternating_sum(&rule));
    }

    #[test]
    fn fast_transform_matches_alternating_sum_on_random_rules() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5usize {
            for _ in 0..10 {
                let observations = MenuCollection::full_domain(n)
                    .iter()
                    .map(|m| {
                        let mut weights: Vec<i64> =
                            m.members().map(|_| rng.gen_range(0..6)).collect();
                        if weights.iter().all(|&w| w == 0) {
                            weights[0] = 1;
                        }
                        let total: i64 = weights.iter().sum();
                        (
                            m,
                            m.members()
                                .zip(&weights)
                                .map(|(x, &w)| (x, rat(w, total)))
                                .collect::<Vec<_>>(),
                        )
                    })
                    .collect();
                let rule =
                    FullRule::new(RandomChoiceRule::new(n, observations).unwrap()).unwrap();
                assert_eq!(mobius_inverse(&rule), mobius_by_alternating_sum(&rule));
            }
        }
    }

    #[test]
    fn accumulate_round_trips() {
        let p = uniform_rule(3);
        let q = mobius_inverse(&p);
        let back = accumulate(&q);
        for menu in MenuCollection::full_domain(3).iter() {
            for x in menu.members() {
                assert_eq!(back.value(x, menu), p.prob(x, menu));
            }
        }
    }

    #[test]
    fn accumulate_zeros_and_top_mass() {
        let z = LatticeFunction::zeros(3);
        assert_eq!(accumulate(&z), z);

        let mut q = LatticeFunction::zeros(3);
        for x in 0..3 {
            q.set(x, Menu::full(3), rat(1, 3));
        }
        let f = accumulate(&q);
        for menu in MenuCollection::full_domain(3).iter() {
            for x in menu.members() {
                assert_eq!(f.value(x, menu), &rat(1, 3));
            }
        }
    }

    #[test]
    fn set_constant_checks() {
        let p = uniform_rule(3);
        let mut as_fn = LatticeFunction::zeros(3);
        for (m, x, v) in p.rule().entries() {
            as_fn.set(x, m, v.clone());
        }
        assert!(is_set_constant(&as_fn));

        let mut ones = LatticeFunction::zeros(3);
        for menu in MenuCollection::full_domain(3).iter() {
            for x in menu.members() {
                ones.set(x, menu, rat(1, 1));
            }
        }
        assert!(!is_set_constant(&ones));

        let mut inv = LatticeFunction::zeros(3);
        for menu in MenuCollection::full_domain(3).iter() {
            for x in menu.members() {
                inv.set(x, menu, rat(1, menu.len() as i64));
            }
        }
        assert!(is_set_constant(&inv));
    }

    #[test]
    fn qtop_accepts_true_mobius_inverses() {
        for n in 1..=4usize {
            let q = mobius_inverse(&uniform_rule(n));
            assert_eq!(satisfies_qtop(&q), Ok(()));
        }
    }

    #[test]
    fn qtop_rejects_bad_normalization() {
        let mut q = mobius_inverse(&uniform_rule(3));
        q.set(0, Menu::full(3), rat(5, 3));
        match satisfies_qtop(&q) {
            Err(QtopViolation::Normalization { total }) => assert_eq!(total, rat(7, 3)),
            other => panic!("expected normalization failure, got {other:?}"),
        }
    }

    #[test]
    fn qtop_reports_normalization_before_nonnegativity() {
        // one alternative, q(x,{x}) = −1: both the normalization and the
        // accumulation conditions fail; the fixed check order reports
        // normalization.
        let mut q = LatticeFunction::zeros(1);
        q.set(0, Menu::full(1), rat(-1, 1));
        assert!(matches!(
            satisfies_qtop(&q),
            Err(QtopViolation::Normalization { .. })
        ));
    }

    #[test]
    fn qtop_balance_failure_reported() {
        let mut q = LatticeFunction::zeros(2);
        // normalization fine, balance broken at a singleton
        q.set(0, Menu::full(2), rat(1, 2));
        q.set(1, Menu::full(2), rat(1, 2));
        q.set(0, Menu::singleton(0), rat(1, 4));
        match satisfies_qtop(&q) {
            Err(QtopViolation::Balance { menu }) => assert_eq!(menu, Menu::singleton(0)),
            other => panic!("expected balance failure, got {other:?}"),
        }
    }

    #[test]
    fn mobius_top_equals_rule_top() {
        let orders = enumerate_orders(4).unwrap();
        let nu = PreferenceDistribution::new(
            orders
                .into_iter()
                .enumerate()
                .map(|(i, o)| (o, if i == 0 { rat(23, 24) } else { rat(1, 552) }))
                .collect(),
        )
        .unwrap();
        let rule =
            FullRule::new(induce_rcr(&nu, &MenuCollection::full_domain(4)).unwrap()).unwrap();
        let q = mobius_inverse(&rule);
        let full = Menu::full(4);
        for x in 0..4 {
            assert_eq!(q.value(x, full), rule.prob(x, full));
        }
    }
}
