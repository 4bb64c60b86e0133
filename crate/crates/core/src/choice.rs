//! Ground types: alternatives, menus, random choice rules, linear orders,
//! and distributions over orders.
//!
//! Menus are bitmasks over alternative indices (at most
//! [`limits::MAX_ALTERNATIVES`] alternatives), so subset arithmetic is cheap
//! and deterministic. Probabilities are exact rationals throughout.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::limits;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChoiceError {
    #[error("probability of {alternative} on menu {menu} is negative")]
    NegativeProbability { alternative: String, menu: String },
    #[error("probabilities on menu {menu} sum to {total}, not 1")]
    SumNotOne { menu: String, total: String },
    #[error("alternative {alternative} does not belong to menu {menu}")]
    UnknownAlternative { alternative: String, menu: String },
    #[error("unknown alternative label {label}")]
    UnknownLabel { label: String },
    #[error("menu {menu} listed more than once")]
    DuplicateMenu { menu: String },
    #[error("duplicate alternative label {label}")]
    DuplicateLabel { label: String },
    #[error("menu must be nonempty")]
    EmptyMenu,
    #[error("alternative set must have between 1 and {max} members, got {got}")]
    BadAlternativeCount { got: usize, max: usize },
    #[error("size {n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("ranking is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("weights do not form a probability distribution: {reason}")]
    NotADistribution { reason: String },
    #[error("alternative index {index} out of range for {n} alternatives")]
    IndexOutOfRange { index: usize, n: usize },
}

/// The finite set of alternatives; labels are unique and index positions are
/// stable for the lifetime of the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternativeSet {
    labels: Vec<String>,
}

impl AlternativeSet {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<Self, ChoiceError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > limits::MAX_ALTERNATIVES {
            return Err(ChoiceError::BadAlternativeCount {
                got: labels.len(),
                max: limits::MAX_ALTERNATIVES,
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(ChoiceError::DuplicateLabel { label: l.clone() });
            }
        }
        Ok(Self { labels })
    }

    /// `a`, `b`, `c`, ... — the default labels used by generators.
    pub fn with_default_labels(n: usize) -> Result<Self, ChoiceError> {
        let labels: Vec<String> = (0..n)
            .map(|i| {
                if n <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("x{i}")
                }
            })
            .collect();
        Self::new(labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_menu(&self) -> Menu {
        Menu::full(self.len())
    }
}

/// A nonempty subset of the alternatives, as a bitmask over indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Menu(u32);

impl Menu {
    pub fn from_mask(mask: u32) -> Result<Self, ChoiceError> {
        if mask == 0 {
            return Err(ChoiceError::EmptyMenu);
        }
        Ok(Self(mask))
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Result<Self, ChoiceError> {
        let mut mask = 0u32;
        for m in members {
            if m >= limits::MAX_ALTERNATIVES {
                return Err(ChoiceError::IndexOutOfRange {
                    index: m,
                    n: limits::MAX_ALTERNATIVES,
                });
            }
            mask |= 1 << m;
        }
        Self::from_mask(mask)
    }

    pub fn singleton(alt: usize) -> Self {
        Self(1 << alt)
    }

    /// The full menu over `n` alternatives.
    pub fn full(n: usize) -> Self {
        debug_assert!(n >= 1 && n <= limits::MAX_ALTERNATIVES);
        Self(((1u64 << n) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false // nonempty by construction
    }

    pub fn contains(self, alt: usize) -> bool {
        self.0 & (1 << alt) != 0
    }

    pub fn is_subset_of(self, other: Menu) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, alt: usize) -> Menu {
        Menu(self.0 | (1 << alt))
    }

    /// Members in ascending index order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32u32).filter_map(move |i| (mask & (1 << i) != 0).then_some(i as usize))
    }

    /// Alternatives in `0..n` that are *not* members.
    pub fn non_members(self, n: usize) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..n).filter(move |i| mask & (1 << i) == 0)
    }

    /// All supersets of `self` within `0..n`, in ascending mask order.
    pub fn supersets(self, n: usize) -> impl Iterator<Item = Menu> {
        let base = self.0;
        let complement = Menu::full(n).0 & !base;
        // enumerate submasks of the complement, ascending
        SubmaskIter::new(complement).map(move |s| Menu(base | s))
    }

    pub fn describe(self, alts: &AlternativeSet) -> String {
        let names: Vec<&str> = self.members().map(|i| alts.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Debug for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.members().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

impl fmt::Display for Menu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Ascending enumeration of all submasks of a mask, including 0 and the mask
/// itself.
struct SubmaskIter {
    mask: u32,
    current: u32,
    done: bool,
}

impl SubmaskIter {
    fn new(mask: u32) -> Self {
        Self {
            mask,
            current: 0,
            done: false,
        }
    }
}

impl Iterator for SubmaskIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let out = self.current;
        if self.current == self.mask {
            self.done = true;
        } else {
            self.current = (self.current.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

/// A duplicate-free set of nonempty menus.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MenuCollection {
    menus: BTreeSet<Menu>,
}

impl MenuCollection {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_menus<I: IntoIterator<Item = Menu>>(menus: I) -> Result<Self, ChoiceError> {
        let mut set = BTreeSet::new();
        for m in menus {
            if !set.insert(m) {
                return Err(ChoiceError::DuplicateMenu {
                    menu: format!("{m:?}"),
                });
            }
        }
        Ok(Self { menus: set })
    }

    /// Every nonempty subset of `0..n`.
    pub fn full_domain(n: usize) -> Self {
        let menus = (1..(1u64 << n) as u32).map(Menu).collect();
        Self { menus }
    }

    /// All two-element menus over `0..n`.
    pub fn binary_menus(n: usize) -> Self {
        let mut menus = BTreeSet::new();
        for i in 0..n {
            for j in (i + 1)..n {
                menus.insert(Menu((1 << i) | (1 << j)));
            }
        }
        Self { menus }
    }

    pub fn len(&self) -> usize {
        self.menus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.menus.is_empty()
    }

    pub fn contains(&self, menu: Menu) -> bool {
        self.menus.contains(&menu)
    }

    /// Menus in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = Menu> + '_ {
        self.menus.iter().copied()
    }

    pub fn is_full_domain(&self, n: usize) -> bool {
        self.menus.len() == (1usize << n) - 1
    }

    /// Menus of `0..n` *not* in the collection, ascending mask order.
    pub fn unobserved(&self, n: usize) -> Vec<Menu> {
        (1..(1u64 << n) as u32)
            .map(Menu)
            .filter(|m| !self.menus.contains(m))
            .collect()
    }
}

/// Observed choice probabilities `p(x, A)` on a menu collection.
///
/// Exact invariants: every probability is nonnegative and every menu's
/// probabilities sum to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomChoiceRule {
    n: usize,
    domain: MenuCollection,
    probs: BTreeMap<(Menu, usize), Rational>,
}

impl RandomChoiceRule {
    /// Validates and builds a rule from per-menu probability maps over
    /// alternative indices. Missing entries inside a menu default to zero.
    pub fn new(
        n: usize,
        observations: Vec<(Menu, Vec<(usize, Rational)>)>,
    ) -> Result<Self, ChoiceError> {
        let mut domain = BTreeSet::new();
        let mut probs = BTreeMap::new();
        for (menu, entries) in &observations {
            if !domain.insert(*menu) {
                return Err(ChoiceError::DuplicateMenu {
                    menu: format!("{menu:?}"),
                });
            }
            if menu.mask() >= (1u64 << n) as u32 {
                return Err(ChoiceError::IndexOutOfRange {
                    index: 31 - menu.mask().leading_zeros() as usize,
                    n,
                });
            }
            let mut total = Rational::zero();
            let mut seen = BTreeSet::new();
            for (alt, p) in entries {
                if !menu.contains(*alt) {
                    return Err(ChoiceError::UnknownAlternative {
                        alternative: alt.to_string(),
                        menu: format!("{menu:?}"),
                    });
                }
                if !seen.insert(*alt) {
                    return Err(ChoiceError::DuplicateLabel {
                        label: alt.to_string(),
                    });
                }
                if p < &Rational::zero() {
                    return Err(ChoiceError::NegativeProbability {
                        alternative: alt.to_string(),
                        menu: format!("{menu:?}"),
                    });
                }
                total += p;
            }
            if !total.is_one() {
                return Err(ChoiceError::SumNotOne {
                    menu: format!("{menu:?}"),
                    total: total.to_string(),
                });
            }
            for member in menu.members() {
                probs.insert((*menu, member), Rational::zero());
            }
            for (alt, p) in entries {
                probs.insert((*menu, *alt), p.clone());
            }
        }
        Ok(Self {
            n,
            domain: MenuCollection { menus: domain },
            probs,
        })
    }

    pub fn num_alternatives(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &MenuCollection {
        &self.domain
    }

    pub fn prob(&self, alt: usize, menu: Menu) -> &Rational {
        &self.probs[&(menu, alt)]
    }

    pub fn is_full_domain(&self) -> bool {
        self.domain.is_full_domain(self.n)
    }

    /// Observed pairs `(x, A)` in canonical order: menu cardinality
    /// descending, then menu mask ascending, then alternative ascending.
    pub fn observed_pairs(&self) -> Vec<(usize, Menu)> {
        canonical_pairs(self.domain.iter())
    }

    /// Iterate `(menu, alternative, probability)` in map order.
    pub fn entries(&self) -> impl Iterator<Item = (Menu, usize, &Rational)> {
        self.probs.iter().map(|(&(m, x), p)| (m, x, p))
    }
}

/// Canonical pair ordering shared by all system builders: cardinality
/// descending, mask ascending, alternative ascending.
pub fn canonical_pairs<I: IntoIterator<Item = Menu>>(menus: I) -> Vec<(usize, Menu)> {
    let mut menus: Vec<Menu> = menus.into_iter().collect();
    menus.sort_by_key(|m| (std::cmp::Reverse(m.len()), m.mask()));
    let mut pairs = Vec::new();
    for menu in menus {
        for x in menu.members() {
            pairs.push((x, menu));
        }
    }
    pairs
}

/// Label-level observation used at the parsing boundary.
#[derive(Debug, Clone)]
pub struct RawObservation {
    pub menu: Vec<String>,
    pub probabilities: Vec<(String, Rational)>,
}

/// Validates a label-keyed dataset into a [`RandomChoiceRule`].
pub fn validate_rcr(
    alternatives: &AlternativeSet,
    raw: &[RawObservation],
) -> Result<RandomChoiceRule, ChoiceError> {
    let mut observations = Vec::with_capacity(raw.len());
    for obs in raw {
        if obs.menu.is_empty() {
            return Err(ChoiceError::EmptyMenu);
        }
        let mut members = Vec::with_capacity(obs.menu.len());
        for label in &obs.menu {
            let idx = alternatives
                .index_of(label)
                .ok_or_else(|| ChoiceError::UnknownLabel {
                    label: label.clone(),
                })?;
            members.push(idx);
        }
        let menu = Menu::from_members(members)?;
        let mut entries = Vec::with_capacity(obs.probabilities.len());
        for (label, p) in &obs.probabilities {
            let idx = alternatives
                .index_of(label)
                .ok_or_else(|| ChoiceError::UnknownAlternative {
                    alternative: label.clone(),
                    menu: menu.describe(alternatives),
                })?;
            entries.push((idx, p.clone()));
        }
        observations.push((menu, entries));
    }
    RandomChoiceRule::new(alternatives.len(), observations)
}

/// A strict preference: a permutation of alternative indices, best first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearOrder {
    ranking: Vec<usize>,
}

impl LinearOrder {
    pub fn new(ranking: Vec<usize>) -> Result<Self, ChoiceError> {
        let n = ranking.len();
        let mut seen = vec![false; n];
        for &r in &ranking {
            if r >= n || seen[r] {
                return Err(ChoiceError::NotAPermutation { n });
            }
            seen[r] = true;
        }
        Ok(Self { ranking })
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    /// The unique best-ranked member of `menu`.
    pub fn maximal(&self, menu: Menu) -> usize {
        for &alt in &self.ranking {
            if menu.contains(alt) {
                return alt;
            }
        }
        unreachable!("menus are nonempty and rankings are permutations")
    }

    /// Does this order rank `a` above `b`?
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        for &alt in &self.ranking {
            if alt == a {
                return true;
            }
            if alt == b {
                return false;
            }
        }
        false
    }

    pub fn describe(&self, alts: &AlternativeSet) -> String {
        let names: Vec<&str> = self.ranking.iter().map(|&i| alts.label(i)).collect();
        names.join(">")
    }
}

/// The unique best-ranked member of `menu` under `order`.
pub fn maximal(order: &LinearOrder, menu: Menu) -> usize {
    order.maximal(menu)
}

/// All `n!` linear orders over `0..n` in lexicographic ranking order.
pub fn enumerate_orders(n: usize) -> Result<Vec<LinearOrder>, ChoiceError> {
    limits::check_cap(n, limits::MAX_ORDER_ENUMERATION)
        .map_err(|cap| ChoiceError::TooLarge { n, cap })?;
    if n == 0 {
        return Err(ChoiceError::BadAlternativeCount {
            got: 0,
            max: limits::MAX_ALTERNATIVES,
        });
    }
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(LinearOrder {
            ranking: current.clone(),
        });
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

/// In-place lexicographic successor; `false` once the last permutation is
/// reached.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Sparse nonnegative weights over linear orders. `is_distribution` records
/// whether the weights sum to exactly one (the cone relaxation drops that
/// constraint but keeps nonnegativity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceDistribution {
    weights: BTreeMap<LinearOrder, Rational>,
    is_distribution: bool,
}

impl PreferenceDistribution {
    /// A proper probability distribution: nonnegative weights summing to one.
    pub fn new(weights: Vec<(LinearOrder, Rational)>) -> Result<Self, ChoiceError> {
        let built = Self::relaxed(weights)?;
        let total: Rational = built.weights.values().sum();
        if !total.is_one() {
            return Err(ChoiceError::NotADistribution {
                reason: format!("weights sum to {total}"),
            });
        }
        Ok(Self {
            is_distribution: true,
            ..built
        })
    }

    /// Nonnegative weights with no sum constraint (the cone relaxation).
    pub fn relaxed(weights: Vec<(LinearOrder, Rational)>) -> Result<Self, ChoiceError> {
        let mut map = BTreeMap::new();
        for (order, w) in weights {
            if w < Rational::zero() {
                return Err(ChoiceError::NotADistribution {
                    reason: format!("negative weight on {:?}", order.ranking()),
                });
            }
            if w.is_zero() {
                continue;
            }
            *map.entry(order).or_insert_with(Rational::zero) += w;
        }
        Ok(Self {
            weights: map,
            is_distribution: false,
        })
    }

    pub fn is_distribution(&self) -> bool {
        self.is_distribution
    }

    pub fn weights(&self) -> impl Iterator<Item = (&LinearOrder, &Rational)> {
        self.weights.iter()
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }
}

/// The rule induced by choosing the best element of each menu under a
/// preference drawn from `nu`.
pub fn induce_rcr(
    nu: &PreferenceDistribution,
    menus: &MenuCollection,
) -> Result<RandomChoiceRule, ChoiceError> {
    if !nu.is_distribution() {
        return Err(ChoiceError::NotADistribution {
            reason: "cone weights were not normalized".into(),
        });
    }
    let n = nu
        .weights
        .keys()
        .next()
        .map(|o| o.len())
        .unwrap_or_else(|| {
            menus
                .iter()
                .map(|m| 32 - m.mask().leading_zeros() as usize)
                .max()
                .unwrap_or(1)
        });
    let mut observations = Vec::new();
    for menu in menus.iter() {
        let mut entries: BTreeMap<usize, Rational> = BTreeMap::new();
        for (order, w) in nu.weights() {
            *entries
                .entry(order.maximal(menu))
                .or_insert_with(Rational::zero) += w;
        }
        observations.push((menu, entries.into_iter().collect()));
    }
    RandomChoiceRule::new(n, observations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn menu(bits: &[usize]) -> Menu {
        Menu::from_members(bits.iter().copied()).unwrap()
    }

    #[test]
    fn singleton_rule_is_valid() {
        let rule =
            RandomChoiceRule::new(1, vec![(menu(&[0]), vec![(0, rat(1, 1))])]).unwrap();
        assert!(rule.is_full_domain());
        assert_eq!(rule.prob(0, menu(&[0])), &rat(1, 1));
    }

    #[test]
    fn symmetric_split_is_valid() {
        let rule = RandomChoiceRule::new(
            2,
            vec![(menu(&[0, 1]), vec![(0, rat(1, 2)), (1, rat(1, 2))])],
        )
        .unwrap();
        assert_eq!(rule.prob(1, menu(&[0, 1])), &rat(1, 2));
    }

    #[test]
    fn sum_not_one_rejected() {
        let err = RandomChoiceRule::new(
            2,
            vec![(menu(&[0, 1]), vec![(0, rat(1, 2)), (1, rat(1, 3))])],
        )
        .unwrap_err();
        assert!(matches!(err, ChoiceError::SumNotOne { .. }));
    }

    #[test]
    fn negative_probability_rejected() {
        let err = RandomChoiceRule::new(
            2,
            vec![(menu(&[0, 1]), vec![(0, rat(3, 2)), (1, rat(-1, 2))])],
        )
        .unwrap_err();
        assert!(matches!(err, ChoiceError::NegativeProbability { .. }));
    }

    #[test]
    fn alternative_outside_menu_rejected() {
        let err = RandomChoiceRule::new(
            3,
            vec![(menu(&[0, 1]), vec![(2, rat(1, 1))])],
        )
        .unwrap_err();
        assert!(matches!(err, ChoiceError::UnknownAlternative { .. }));
    }

    #[test]
    fn duplicate_menu_rejected() {
        let err = RandomChoiceRule::new(
            2,
            vec![
                (menu(&[0, 1]), vec![(0, rat(1, 1))]),
                (menu(&[0, 1]), vec![(1, rat(1, 1))]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, ChoiceError::DuplicateMenu { .. }));
    }

    #[test]
    fn order_counts_match_factorials() {
        assert_eq!(enumerate_orders(1).unwrap().len(), 1);
        assert_eq!(enumerate_orders(3).unwrap().len(), 6);
        assert_eq!(enumerate_orders(5).unwrap().len(), 120);
    }

    #[test]
    fn orders_are_distinct_and_lexicographic() {
        let orders = enumerate_orders(4).unwrap();
        let mut seen = BTreeSet::new();
        for o in &orders {
            assert!(seen.insert(o.ranking().to_vec()));
        }
        let mut sorted: Vec<_> = orders.iter().map(|o| o.ranking().to_vec()).collect();
        sorted.sort();
        assert_eq!(
            sorted,
            orders.iter().map(|o| o.ranking().to_vec()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn enumerate_orders_guard() {
        assert!(matches!(
            enumerate_orders(9),
            Err(ChoiceError::TooLarge { .. })
        ));
    }

    #[test]
    fn maximal_picks_best_member() {
        let order = LinearOrder::new(vec![0, 1, 2]).unwrap();
        assert_eq!(order.maximal(menu(&[1, 2])), 1);
        assert_eq!(order.maximal(menu(&[0])), 0);
        let order = LinearOrder::new(vec![2, 0, 1]).unwrap();
        assert_eq!(order.maximal(menu(&[0, 1, 2])), 2);
    }

    #[test]
    fn degenerate_distribution_induces_deterministic_choice() {
        let order = LinearOrder::new(vec![0, 1, 2]).unwrap();
        let nu = PreferenceDistribution::new(vec![(order, rat(1, 1))]).unwrap();
        let rule = induce_rcr(&nu, &MenuCollection::full_domain(3)).unwrap();
        for m in MenuCollection::full_domain(3).iter() {
            if m.contains(0) {
                assert_eq!(rule.prob(0, m), &rat(1, 1), "menu {m:?}");
            }
        }
    }

    #[test]
    fn uniform_distribution_induces_uniform_rule() {
        let orders = enumerate_orders(3).unwrap();
        let nu = PreferenceDistribution::new(
            orders.into_iter().map(|o| (o, rat(1, 6))).collect(),
        )
        .unwrap();
        let rule = induce_rcr(&nu, &MenuCollection::full_domain(3)).unwrap();
        for m in MenuCollection::full_domain(3).iter() {
            for x in m.members() {
                assert_eq!(rule.prob(x, m), &rat(1, m.len() as i64));
            }
        }
    }

    #[test]
    fn two_order_mixture_splits_extremes() {
        let fwd = LinearOrder::new(vec![0, 1, 2]).unwrap();
        let bwd = LinearOrder::new(vec![2, 1, 0]).unwrap();
        let nu =
            PreferenceDistribution::new(vec![(fwd, rat(1, 2)), (bwd, rat(1, 2))]).unwrap();
        let full = Menu::full(3);
        let rule = induce_rcr(
            &nu,
            &MenuCollection::from_menus(vec![full]).unwrap(),
        )
        .unwrap();
        assert_eq!(rule.prob(0, full), &rat(1, 2));
        assert_eq!(rule.prob(1, full), &rat(0, 1));
        assert_eq!(rule.prob(2, full), &rat(1, 2));
    }

    #[test]
    fn submask_iteration_is_complete_and_ascending() {
        let m = menu(&[0, 2]);
        let sups: Vec<u32> = m.supersets(3).map(|s| s.mask()).collect();
        assert_eq!(sups, vec![0b101, 0b111]);
        let m = menu(&[1]);
        let sups: Vec<u32> = m.supersets(3).map(|s| s.mask()).collect();
        assert_eq!(sups, vec![0b010, 0b011, 0b110, 0b111]);
    }

    #[test]
    fn canonical_pair_order_is_cardinality_major() {
        let pairs = canonical_pairs(MenuCollection::full_domain(2).iter());
        let described: Vec<(usize, u32)> = pairs.iter().map(|&(x, m)| (x, m.mask())).collect();
        assert_eq!(described, vec![(0, 3), (1, 3), (0, 1), (1, 2)]);
    }
}
