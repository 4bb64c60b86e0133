//! Brute-force reference implementations used by the test suites.
//!
//! Nothing here shares code with the solver paths it checks: feasibility is
//! decided by Fourier–Motzkin elimination over the raw rows, reading only
//! the public shape of a [`LinearSystem`].

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use rum_core::lp::LinearSystem;
use rum_core::Rational;

pub mod gen;

/// Exact Fourier–Motzkin feasibility for a [`LinearSystem`].
///
/// Equality rows are split into opposing inequalities and nonnegativity
/// bounds become explicit rows; variables are then eliminated one at a time,
/// keeping every pairwise combination. Feasible iff no contradictory
/// constant row ever appears.
pub fn fourier_motzkin_feasible(sys: &LinearSystem) -> bool {
    let n = sys.num_vars();
    // (coeffs, rhs) meaning coeffs · v ≥ rhs
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let dense = |row: &rum_core::lp::Row| {
        let mut v = vec![Rational::zero(); n];
        for (i, c) in &row.coeffs {
            v[*i] += c;
        }
        v
    };
    for row in sys.eq_rows() {
        let d = dense(row);
        let neg: Vec<Rational> = d.iter().map(|c| -c.clone()).collect();
        rows.push((d, row.rhs.clone()));
        rows.push((neg, -row.rhs.clone()));
    }
    for row in sys.ineq_rows() {
        rows.push((dense(row), row.rhs.clone()));
    }
    for k in 0..n {
        if sys.is_nonneg(k) {
            let mut bound = vec![Rational::zero(); n];
            bound[k] = Rational::from_integer(1.into());
            rows.push((bound, Rational::zero()));
        }
    }

    let mut remaining: Vec<usize> = (0..n).collect();
    loop {
        rows = normalize_and_dedupe(rows);
        // constant rows decide immediately
        let mut pending = Vec::with_capacity(rows.len());
        for (coeffs, rhs) in rows {
            if coeffs.iter().all(Zero::is_zero) {
                if rhs.is_positive() {
                    return false;
                }
            } else {
                pending.push((coeffs, rhs));
            }
        }
        rows = pending;
        if remaining.is_empty() || rows.is_empty() {
            return true;
        }

        // eliminate the variable with the cheapest positive/negative pairing
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .map(|(slot, &var)| {
                let pos = rows.iter().filter(|(c, _)| c[var].is_positive()).count();
                let neg = rows.iter().filter(|(c, _)| c[var].is_negative()).count();
                (slot, pos * neg)
            })
            .min_by_key(|&(slot, cost)| (cost, slot))
            .unwrap();
        let var = remaining.remove(pick);

        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        let mut rest = Vec::new();
        for row in rows {
            if row.0[var].is_positive() {
                lowers.push(row);
            } else if row.0[var].is_negative() {
                uppers.push(row);
            } else {
                rest.push(row);
            }
        }
        for (pc, prhs) in &lowers {
            for (qc, qrhs) in &uppers {
                // (−q_k)·p + p_k·q cancels the variable; both scales positive
                let a = -qc[var].clone();
                let b = pc[var].clone();
                let coeffs: Vec<Rational> = pc
                    .iter()
                    .zip(qc)
                    .map(|(pcoef, qcoef)| &a * pcoef + &b * qcoef)
                    .collect();
                debug_assert!(coeffs[var].is_zero());
                rest.push((coeffs, &a * prhs + &b * qrhs));
            }
        }
        rows = rest;
    }
}

/// Scale each row so the leading nonzero coefficient is ±1, then drop exact
/// duplicates. Keeps the projection fast enough at test scale.
fn normalize_and_dedupe(
    rows: Vec<(Vec<Rational>, Rational)>,
) -> Vec<(Vec<Rational>, Rational)> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for (mut coeffs, mut rhs) in rows {
        if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
            let scale = first.abs();
            for c in coeffs.iter_mut() {
                *c /= &scale;
            }
            rhs /= &scale;
        } else if rhs.is_positive() {
            // keep one canonical contradiction row
            coeffs.iter_mut().for_each(|c| c.set_zero());
            rhs = Rational::from_integer(1.into());
        } else {
            continue; // vacuous constant row
        }
        if seen.insert((coeffs.clone(), rhs.clone())) {
            out.push((coeffs, rhs));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rum_core::rat;

    #[test]
    fn simple_feasible_and_infeasible() {
        let mut sys = LinearSystem::new(2);
        sys.push_eq("s", vec![(0, rat(1, 1)), (1, rat(1, 1))], rat(1, 1));
        assert!(fourier_motzkin_feasible(&sys));
        sys.push_ineq("lb", vec![(0, rat(1, 1))], rat(2, 1));
        assert!(!fourier_motzkin_feasible(&sys));
    }

    #[test]
    fn free_variable_sign() {
        let mut sys = LinearSystem::new(1);
        sys.push_eq("fix", vec![(0, rat(1, 1))], rat(-1, 1));
        assert!(!fourier_motzkin_feasible(&sys));
        let mut sys = LinearSystem::new(1);
        sys.mark_free(0);
        sys.push_eq("fix", vec![(0, rat(1, 1))], rat(-1, 1));
        assert!(fourier_motzkin_feasible(&sys));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert!(fourier_motzkin_feasible(&LinearSystem::new(0)));
        assert!(fourier_motzkin_feasible(&LinearSystem::new(3)));
    }
}
