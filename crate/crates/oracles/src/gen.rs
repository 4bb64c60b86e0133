//! Seeded random instance generators shared by the test suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rum_core::choice::{
    enumerate_orders, induce_rcr, LinearOrder, Menu, MenuCollection, PreferenceDistribution,
    RandomChoiceRule,
};
use rum_core::lp::LinearSystem;
use rum_core::monotone::PartialOrder;
use rum_core::{rat, Rational};

pub type TestRng = ChaCha8Rng;

/// A random small system with integer data: mixed equality/inequality rows,
/// random nonnegativity mask, coefficients in −3..=3, right-hand sides in
/// −4..=4.
pub fn random_system(rng: &mut TestRng, max_vars: usize, max_rows: usize) -> LinearSystem {
    let nvars = rng.gen_range(1..=max_vars);
    let nrows = rng.gen_range(1..=max_rows);
    let mut sys = LinearSystem::new(nvars);
    for k in 0..nvars {
        if rng.gen_bool(0.3) {
            sys.mark_free(k);
        }
    }
    for r in 0..nrows {
        let mut coeffs = Vec::new();
        for k in 0..nvars {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 && rng.gen_bool(0.8) {
                coeffs.push((k, rat(c, 1)));
            }
        }
        let rhs = rat(rng.gen_range(-4..=4), 1);
        if rng.gen_bool(0.5) {
            sys.push_eq(format!("e{r}"), coeffs, rhs);
        } else {
            sys.push_ineq(format!("i{r}"), coeffs, rhs);
        }
    }
    sys
}

/// A nonempty random collection of nonempty menus over `0..n`.
pub fn random_menu_collection(rng: &mut TestRng, n: usize, max_menus: usize) -> MenuCollection {
    let all: Vec<u32> = (1..(1u64 << n) as u32).collect();
    let count = rng.gen_range(1..=max_menus.min(all.len()));
    let picked = all.choose_multiple(rng, count).copied();
    MenuCollection::from_menus(picked.map(|m| Menu::from_mask(m).unwrap())).unwrap()
}

/// A random rule on the given menus: small random integer weights,
/// normalized per menu.
pub fn random_rule(rng: &mut TestRng, n: usize, menus: &MenuCollection) -> RandomChoiceRule {
    let observations = menus
        .iter()
        .map(|m| {
            let mut weights: Vec<i64> = m.members().map(|_| rng.gen_range(0..=5)).collect();
            if weights.iter().all(|&w| w == 0) {
                weights[0] = 1;
            }
            let total: i64 = weights.iter().sum();
            (
                m,
                m.members()
                    .zip(&weights)
                    .map(|(x, &w)| (x, rat(w, total)))
                    .collect::<Vec<(usize, Rational)>>(),
            )
        })
        .collect();
    RandomChoiceRule::new(n, observations).unwrap()
}

/// A rationalizable rule built from a random preference distribution with
/// the given support size; returns the ground-truth distribution too.
pub fn random_rationalizable_rule(
    rng: &mut TestRng,
    n: usize,
    menus: &MenuCollection,
    support: usize,
) -> (RandomChoiceRule, PreferenceDistribution) {
    let orders = enumerate_orders(n).expect("generator sizes stay within caps");
    let support = support.clamp(1, orders.len());
    let chosen: Vec<LinearOrder> = orders
        .choose_multiple(rng, support)
        .cloned()
        .collect();
    let weights: Vec<i64> = (0..support).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let nu = PreferenceDistribution::new(
        chosen
            .into_iter()
            .zip(&weights)
            .map(|(o, &w)| (o, rat(w, total)))
            .collect(),
    )
    .unwrap();
    let rule = induce_rcr(&nu, menus).unwrap();
    (rule, nu)
}

/// A random partial order over `0..n` (transitive closure of random pairs).
pub fn random_partial_order(rng: &mut TestRng, n: usize) -> PartialOrder {
    // sample pairs consistent with a random permutation so the relation is
    // automatically acyclic
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.3) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    PartialOrder::from_pairs(n, &pairs).unwrap()
}

/// The three-alternative cyclic dataset on binary menus: each alternative is
/// picked with certainty against the next one around the cycle.
pub fn condorcet_rule() -> RandomChoiceRule {
    let menu = |a: usize, b: usize| Menu::from_members([a, b]).unwrap();
    RandomChoiceRule::new(
        3,
        vec![
            (menu(0, 1), vec![(0, rat(1, 1)), (1, rat(0, 1))]),
            (menu(1, 2), vec![(1, rat(1, 1)), (2, rat(0, 1))]),
            (menu(0, 2), vec![(2, rat(1, 1)), (0, rat(0, 1))]),
        ],
    )
    .unwrap()
}
