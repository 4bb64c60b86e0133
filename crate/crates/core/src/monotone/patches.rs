//! Two-good budget lines partitioned into patches by their crossing points,
//! with the componentwise dominance relation between patches.
//!
//! Scope: generic arrangements only — pairwise distinct budgets whose
//! crossings (if any) lie strictly inside the positive quadrant, with no
//! triple crossings. Crossings on an axis, coincident budget lines, and
//! coinciding crossing points are rejected. Line crossings outside the
//! positive quadrant never touch the budget segments and are ignored.

use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{MonotoneError, PartialOrder};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatchError {
    #[error("budgets need exactly 2 goods, got {got}")]
    WrongDimension { got: usize },
    #[error("prices and wealth must be strictly positive")]
    NonPositiveBudget,
    #[error("degenerate arrangement: {reason}")]
    DegenerateArrangement { reason: String },
}

pub type Point = [Rational; 2];

/// A linear budget `p·g = w` over two goods, `p, w > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    prices: [Rational; 2],
    wealth: Rational,
}

impl Budget {
    pub fn new(prices: &[Rational], wealth: Rational) -> Result<Self, PatchError> {
        if prices.len() != 2 {
            return Err(PatchError::WrongDimension { got: prices.len() });
        }
        if !prices[0].is_positive() || !prices[1].is_positive() || !wealth.is_positive() {
            return Err(PatchError::NonPositiveBudget);
        }
        Ok(Self {
            prices: [prices[0].clone(), prices[1].clone()],
            wealth,
        })
    }

    pub fn prices(&self) -> &[Rational; 2] {
        &self.prices
    }

    pub fn wealth(&self) -> &Rational {
        &self.wealth
    }

    /// Cost of a bundle at this budget's prices.
    fn cost(&self, point: &Point) -> Rational {
        &self.prices[0] * &point[0] + &self.prices[1] * &point[1]
    }

    /// Budget-line endpoints: `(0, w/p2)` and `(w/p1, 0)`.
    fn intercepts(&self) -> (Point, Point) {
        (
            [Rational::zero(), &self.wealth / &self.prices[1]],
            [&self.wealth / &self.prices[0], Rational::zero()],
        )
    }

    /// True iff the two budgets describe the same line.
    fn same_line(&self, other: &Budget) -> bool {
        &self.prices[0] * &other.wealth == &other.prices[0] * &self.wealth
            && &self.prices[1] * &other.wealth == &other.prices[1] * &self.wealth
    }
}

/// Which side of another budget a patch lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfSide {
    Above,
    On,
    Below,
}

/// A maximal crossing-free piece of one budget line.
#[derive(Debug, Clone)]
pub struct Patch {
    pub label: String,
    /// Index of the budget the patch lies on.
    pub budget: usize,
    /// Closure endpoints, ordered by the first good ascending.
    pub endpoints: [Point; 2],
    /// Side taken relative to every other budget, by budget index.
    pub signs: Vec<(usize, HalfSide)>,
}

impl Patch {
    fn midpoint(&self) -> Point {
        let half = crate::rat(1, 2);
        [
            (&self.endpoints[0][0] + &self.endpoints[1][0]) * &half,
            (&self.endpoints[0][1] + &self.endpoints[1][1]) * &half,
        ]
    }

    /// Is `point` componentwise dominated by some point of this patch's
    /// closure? The lower set of a downward-sloping segment is convex, so
    /// the membership test is a two-piece height comparison.
    fn lower_set_contains(&self, point: &Point) -> bool {
        let [left, right] = &self.endpoints;
        if point[0] > right[0] {
            return false;
        }
        if point[0] <= left[0] {
            return point[1] <= left[1];
        }
        // interpolated height at point[0]; denominator positive by ordering
        let run = &right[0] - &left[0];
        let rise = &right[1] - &left[1];
        let height = &left[1] + &rise * (&point[0] - &left[0]) / &run;
        point[1] <= height
    }

    fn dominates(&self, other: &Patch) -> bool {
        other
            .endpoints
            .iter()
            .all(|endpoint| self.lower_set_contains(endpoint))
    }
}

/// A full arrangement: labeled patches in canonical order plus their
/// dominance partial order (indices aligned with `patches`).
#[derive(Debug, Clone)]
pub struct PatchArrangement {
    pub patches: Vec<Patch>,
    pub dominance: PartialOrder,
}

impl PatchArrangement {
    pub fn label_of(&self, index: usize) -> &str {
        &self.patches[index].label
    }

    /// Dominance pairs as `(dominator, dominated)` labels.
    pub fn dominance_pairs(&self) -> Vec<(String, String)> {
        self.dominance
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                (
                    self.patches[a].label.clone(),
                    self.patches[b].label.clone(),
                )
            })
            .collect()
    }

    pub fn patches_on_budget(&self, budget: usize) -> Vec<&Patch> {
        self.patches.iter().filter(|p| p.budget == budget).collect()
    }
}

/// Patch labels: `w, x, y, z, a, b, …` wrapping through the alphabet, with
/// numeric suffixes beyond 26 patches.
fn patch_label(i: usize) -> String {
    let letter = (b'a' + ((22 + i) % 26) as u8) as char;
    match (22 + i) / 26 {
        0 => letter.to_string(),
        round => format!("{letter}{round}"),
    }
}

/// Splits each budget line at its interior crossings with the others and
/// derives the dominance order between the resulting patches.
pub fn build_patches_2goods(budgets: &[Budget]) -> Result<PatchArrangement, PatchError> {
    for (i, a) in budgets.iter().enumerate() {
        for b in budgets.iter().skip(i + 1) {
            if a.same_line(b) {
                return Err(PatchError::DegenerateArrangement {
                    reason: format!("budgets {i} and {} coincide", i + 1),
                });
            }
        }
    }

    // interior crossing points per budget
    let mut crossings: Vec<Vec<Point>> = vec![Vec::new(); budgets.len()];
    for i in 0..budgets.len() {
        for j in (i + 1)..budgets.len() {
            let (bi, bj) = (&budgets[i], &budgets[j]);
            let det = &bi.prices[0] * &bj.prices[1] - &bi.prices[1] * &bj.prices[0];
            if det.is_zero() {
                continue; // parallel, distinct
            }
            let g1 = (&bi.wealth * &bj.prices[1] - &bj.wealth * &bi.prices[1]) / &det;
            let g2 = (&bi.prices[0] * &bj.wealth - &bj.prices[0] * &bi.wealth) / &det;
            if g1.is_negative() || g2.is_negative() {
                continue; // lines cross outside the commodity space
            }
            if g1.is_zero() || g2.is_zero() {
                return Err(PatchError::DegenerateArrangement {
                    reason: format!("budgets {i} and {j} cross on an axis"),
                });
            }
            crossings[i].push([g1.clone(), g2.clone()]);
            crossings[j].push([g1, g2]);
        }
    }

    let mut raw: Vec<Patch> = Vec::new();
    for (b, budget) in budgets.iter().enumerate() {
        let mut points = crossings[b].clone();
        points.sort_by(|p, q| p[0].cmp(&q[0]));
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(PatchError::DegenerateArrangement {
                    reason: format!("triple crossing on budget {b}"),
                });
            }
        }
        let (top, bottom) = budget.intercepts();
        let mut stops = vec![top];
        stops.extend(points);
        stops.push(bottom);
        for pair in stops.windows(2) {
            raw.push(Patch {
                label: String::new(),
                budget: b,
                endpoints: [pair[0].clone(), pair[1].clone()],
                signs: Vec::new(),
            });
        }
    }

    for patch in raw.iter_mut() {
        let mid = patch.midpoint();
        for (j, other) in budgets.iter().enumerate() {
            if j == patch.budget {
                continue;
            }
            let cost = other.cost(&mid);
            let side = match cost.cmp(&other.wealth) {
                std::cmp::Ordering::Greater => HalfSide::Above,
                std::cmp::Ordering::Less => HalfSide::Below,
                std::cmp::Ordering::Equal => {
                    return Err(PatchError::DegenerateArrangement {
                        reason: format!(
                            "patch midpoint on budget {j} without a recorded crossing"
                        ),
                    })
                }
            };
            patch.signs.push((j, side));
        }
    }

    // canonical order: outermost layer first (fewest budgets strictly
    // above), then left to right
    raw.sort_by(|p, q| {
        let below = |patch: &Patch| {
            patch
                .signs
                .iter()
                .filter(|(_, s)| *s == HalfSide::Below)
                .count()
        };
        let pm = p.midpoint();
        let qm = q.midpoint();
        below(p)
            .cmp(&below(q))
            .then_with(|| pm[0].cmp(&qm[0]))
            .then_with(|| qm[1].cmp(&pm[1]))
            .then_with(|| p.budget.cmp(&q.budget))
    });
    for (i, patch) in raw.iter_mut().enumerate() {
        patch.label = patch_label(i);
    }

    let mut pairs = Vec::new();
    for (a, pa) in raw.iter().enumerate() {
        for (b, pb) in raw.iter().enumerate() {
            if a != b && pa.dominates(pb) {
                pairs.push((a, b));
            }
        }
    }
    let dominance = PartialOrder::from_pairs(raw.len(), &pairs).map_err(|e| match e {
        MonotoneError::CyclicDominance { through } => PatchError::DegenerateArrangement {
            reason: format!("dominance cycle through patch {through}"),
        },
        MonotoneError::TooLarge { .. } => unreachable!("patch counts stay small"),
    })?;

    Ok(PatchArrangement {
        patches: raw,
        dominance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn budget(p1: i64, p2: i64, w: i64) -> Budget {
        Budget::new(&[rat(p1, 1), rat(p2, 1)], rat(w, 1)).unwrap()
    }

    fn crossing_pair() -> Vec<Budget> {
        vec![budget(2, 1, 2), budget(1, 2, 2)]
    }

    #[test]
    fn crossing_pair_yields_four_patches() {
        let arr = build_patches_2goods(&crossing_pair()).unwrap();
        assert_eq!(arr.patches.len(), 4);
        let labels: Vec<&str> = arr.patches.iter().map(|p| p.label.as_str()).collect();
        assert_eq!(labels, vec!["w", "x", "y", "z"]);
        // the steep budget's upper patch is labeled w and runs from the
        // intercept (0,2) to the crossing (2/3,2/3)
        let w = &arr.patches[0];
        assert_eq!(w.budget, 0);
        assert_eq!(w.endpoints[0], [rat(0, 1), rat(2, 1)]);
        assert_eq!(w.endpoints[1], [rat(2, 3), rat(2, 3)]);
        assert_eq!(w.signs, vec![(1, HalfSide::Above)]);
    }

    #[test]
    fn crossing_pair_dominance() {
        let arr = build_patches_2goods(&crossing_pair()).unwrap();
        let mut pairs = arr.dominance_pairs();
        pairs.sort();
        assert_eq!(
            pairs,
            vec![
                ("w".to_string(), "y".to_string()),
                ("x".to_string(), "z".to_string())
            ]
        );
    }

    #[test]
    fn single_budget_single_patch() {
        let arr = build_patches_2goods(&[budget(1, 1, 1)]).unwrap();
        assert_eq!(arr.patches.len(), 1);
        assert_eq!(arr.patches[0].label, "w");
        assert!(arr.dominance_pairs().is_empty());
    }

    #[test]
    fn parallel_budgets_outer_dominates_inner() {
        let arr = build_patches_2goods(&[budget(1, 1, 1), budget(1, 1, 2)]).unwrap();
        assert_eq!(arr.patches.len(), 2);
        let pairs = arr.dominance_pairs();
        assert_eq!(pairs.len(), 1);
        // outer budget's patch is the canonical first
        assert_eq!(pairs[0], ("w".to_string(), "x".to_string()));
        assert_eq!(arr.patches[0].budget, 1);
    }

    #[test]
    fn coincident_budgets_rejected() {
        let err = build_patches_2goods(&[budget(1, 1, 1), budget(2, 2, 2)]).unwrap_err();
        assert!(matches!(err, PatchError::DegenerateArrangement { .. }));
    }

    #[test]
    fn axis_crossing_rejected() {
        // both lines pass through (1, 0)
        let err = build_patches_2goods(&[budget(1, 1, 1), budget(1, 2, 1)]).unwrap_err();
        assert!(matches!(err, PatchError::DegenerateArrangement { .. }));
    }

    #[test]
    fn triple_crossing_rejected() {
        // three lines through (1/2, 1/2)
        let err = build_patches_2goods(&[
            budget(1, 1, 1),
            budget(1, 3, 2),
            budget(3, 1, 2),
        ])
        .unwrap_err();
        assert!(matches!(err, PatchError::DegenerateArrangement { .. }));
    }

    #[test]
    fn crossing_outside_quadrant_ignored() {
        // lines cross at g1 = −1: segments never meet, two whole patches
        let b1 = Budget::new(&[rat(1, 1), rat(1, 1)], rat(1, 1)).unwrap();
        let b2 = Budget::new(&[rat(1, 1), rat(2, 1)], rat(3, 1)).unwrap();
        let arr = build_patches_2goods(&[b1, b2]).unwrap();
        assert_eq!(arr.patches.len(), 2);
        // the larger budget dominates everywhere on the smaller one
        assert_eq!(arr.dominance_pairs().len(), 1);
    }

    #[test]
    fn wrong_dimension_and_nonpositive_budgets() {
        assert!(matches!(
            Budget::new(&[rat(1, 1)], rat(1, 1)),
            Err(PatchError::WrongDimension { got: 1 })
        ));
        assert!(matches!(
            Budget::new(&[rat(1, 1), rat(0, 1)], rat(1, 1)),
            Err(PatchError::NonPositiveBudget)
        ));
    }

    #[test]
    fn each_budget_contributes_crossings_plus_one() {
        // three pairwise-crossing budgets in generic position: every budget
        // carries two interior crossings, hence three patches
        let budgets = vec![budget(4, 1, 4), budget(1, 1, 2), budget(1, 4, 4)];
        let arr = build_patches_2goods(&budgets).unwrap();
        for (b, _) in budgets.iter().enumerate() {
            assert_eq!(arr.patches_on_budget(b).len(), 3);
        }
        assert_eq!(arr.patches.len(), 9);
    }
}
