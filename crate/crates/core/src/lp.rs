//! Exact rational LP feasibility with Farkas certificates.
//!
//! A [`LinearSystem`] holds equality rows `a·v = b`, inequality rows
//! `c·v ≥ d`, and a per-variable nonnegativity mask. [`solve_feasibility`]
//! decides the system by a two-phase primal simplex over exact rationals
//! with Bland's anti-cycling rule, returning either an exact solution or a
//! [`FarkasCertificate`] — a row-multiplier vector `r` with free entries on
//! equality rows and nonnegative entries on inequality rows such that
//! `rᵀA ≤ 0` on nonnegative variables, `rᵀA = 0` on free variables, and
//! `rᵀb > 0`. Any such `r` proves infeasibility, and every emitted
//! certificate is re-checked by [`verify_certificate`] before being
//! returned.
//!
//! Internally, inequality rows become equalities with named nonnegative
//! surplus variables and free variables are split into differences of
//! nonnegative parts, so certificates map back to the original rows
//! one-to-one.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// One constraint row: sparse coefficients and a right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

/// An exact equality/inequality system with variable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    num_vars: usize,
    var_labels: Vec<String>,
    nonneg: Vec<bool>,
    eq_rows: Vec<Row>,
    ineq_rows: Vec<Row>,
}

impl LinearSystem {
    /// A system over `num_vars` variables, all constrained `≥ 0` and labeled
    /// `v0, v1, ...` until told otherwise.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            var_labels: (0..num_vars).map(|i| format!("v{i}")).collect(),
            nonneg: vec![true; num_vars],
            eq_rows: Vec::new(),
            ineq_rows: Vec::new(),
        }
    }

    pub fn with_var_labels(labels: Vec<String>) -> Self {
        let mut sys = Self::new(labels.len());
        sys.var_labels = labels;
        sys
    }

    /// Drop the `≥ 0` bound on `var`.
    pub fn mark_free(&mut self, var: usize) {
        self.nonneg[var] = false;
    }

    pub fn push_eq(
        &mut self,
        label: impl Into<String>,
        coeffs: Vec<(usize, Rational)>,
        rhs: Rational,
    ) {
        debug_assert!(coeffs.iter().all(|&(i, _)| i < self.num_vars));
        self.eq_rows.push(Row {
            label: label.into(),
            coeffs,
            rhs,
        });
    }

    /// `coeffs · v ≥ rhs`.
    pub fn push_ineq(
        &mut self,
        label: impl Into<String>,
        coeffs: Vec<(usize, Rational)>,
        rhs: Rational,
    ) {
        debug_assert!(coeffs.iter().all(|&(i, _)| i < self.num_vars));
        self.ineq_rows.push(Row {
            label: label.into(),
            coeffs,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_rows(&self) -> usize {
        self.eq_rows.len() + self.ineq_rows.len()
    }

    pub fn eq_rows(&self) -> &[Row] {
        &self.eq_rows
    }

    pub fn ineq_rows(&self) -> &[Row] {
        &self.ineq_rows
    }

    pub fn var_label(&self, var: usize) -> &str {
        &self.var_labels[var]
    }

    pub fn var_labels(&self) -> &[String] {
        &self.var_labels
    }

    pub fn is_nonneg(&self, var: usize) -> bool {
        self.nonneg[var]
    }

    /// Row labels in certificate order: equality rows then inequality rows.
    pub fn row_labels(&self) -> Vec<&str> {
        self.eq_rows
            .iter()
            .chain(&self.ineq_rows)
            .map(|r| r.label.as_str())
            .collect()
    }

    /// Exact check of every row and bound against a candidate assignment.
    pub fn check_solution(&self, v: &[Rational]) -> bool {
        if v.len() != self.num_vars {
            return false;
        }
        for (k, val) in v.iter().enumerate() {
            if self.nonneg[k] && val.is_negative() {
                return false;
            }
        }
        let dot = |row: &Row| -> Rational {
            row.coeffs
                .iter()
                .map(|(i, c)| c * &v[*i])
                .fold(Rational::zero(), |a, b| a + b)
        };
        self.eq_rows.iter().all(|r| dot(r) == r.rhs)
            && self.ineq_rows.iter().all(|r| dot(r) >= r.rhs)
    }
}

/// Row multipliers proving infeasibility; indexed like
/// [`LinearSystem::row_labels`] (equality rows first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }
}

/// Exact verification of the alternative system: nonnegative multipliers on
/// inequality rows, `rᵀA ≤ 0` on nonnegative variables (`= 0` on free ones),
/// and `rᵀb > 0`.
pub fn verify_certificate(
    sys: &LinearSystem,
    cert: &FarkasCertificate,
) -> Result<bool, LpError> {
    let expected = sys.num_rows();
    if cert.multipliers.len() != expected {
        return Err(LpError::DimensionMismatch {
            expected,
            got: cert.multipliers.len(),
        });
    }
    let n_eq = sys.eq_rows.len();
    for r in &cert.multipliers[n_eq..] {
        if r.is_negative() {
            return Ok(false);
        }
    }
    let mut col_sums = vec![Rational::zero(); sys.num_vars];
    let mut rhs_sum = Rational::zero();
    for (row, r) in sys
        .eq_rows
        .iter()
        .chain(&sys.ineq_rows)
        .zip(&cert.multipliers)
    {
        if r.is_zero() {
            continue;
        }
        for (i, c) in &row.coeffs {
            col_sums[*i] += r * c;
        }
        rhs_sum += r * &row.rhs;
    }
    for (k, s) in col_sums.iter().enumerate() {
        if sys.nonneg[k] {
            if s.is_positive() {
                return Ok(false);
            }
        } else if !s.is_zero() {
            return Ok(false);
        }
    }
    Ok(rhs_sum.is_positive())
}

/// Decide the system exactly. Every returned solution satisfies all rows and
/// bounds; every returned certificate passes [`verify_certificate`].
pub fn solve_feasibility(sys: &LinearSystem) -> FeasibilityResult {
    let mut tableau = Tableau::build(sys);
    match tableau.phase_one() {
        PhaseOne::Feasible => {
            let v = tableau.read_solution();
            assert!(sys.check_solution(&v), "solver returned an invalid point");
            FeasibilityResult::Feasible(v)
        }
        PhaseOne::Infeasible(cert) => {
            assert_eq!(
                verify_certificate(sys, &cert),
                Ok(true),
                "solver emitted an invalid certificate"
            );
            FeasibilityResult::Infeasible(cert)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimizeOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible(FarkasCertificate),
    Unbounded,
}

/// Minimize `objective · v` subject to the system; `objective` is indexed by
/// the system's variables.
pub fn minimize(sys: &LinearSystem, objective: &[Rational]) -> Result<MinimizeOutcome, LpError> {
    if objective.len() != sys.num_vars {
        return Err(LpError::DimensionMismatch {
            expected: sys.num_vars,
            got: objective.len(),
        });
    }
    let mut tableau = Tableau::build(sys);
    match tableau.phase_one() {
        PhaseOne::Infeasible(cert) => {
            assert_eq!(verify_certificate(sys, &cert), Ok(true));
            Ok(MinimizeOutcome::Infeasible(cert))
        }
        PhaseOne::Feasible => match tableau.phase_two(objective) {
            PhaseTwo::Unbounded => Ok(MinimizeOutcome::Unbounded),
            PhaseTwo::Optimal => {
                let point = tableau.read_solution();
                assert!(sys.check_solution(&point));
                let value = objective
                    .iter()
                    .zip(&point)
                    .map(|(c, v)| c * v)
                    .fold(Rational::zero(), |a, b| a + b);
                Ok(MinimizeOutcome::Optimal { value, point })
            }
        },
    }
}

// ---------------------------------------------------------------------------
// simplex internals
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColKind {
    /// `+1 ×` original variable.
    Plus(usize),
    /// `−1 ×` original variable (free-variable split).
    Minus(usize),
    /// Surplus of inequality row (local index into `ineq_rows`).
    Surplus(usize),
}

enum PhaseOne {
    Feasible,
    Infeasible(FarkasCertificate),
}

enum PhaseTwo {
    Optimal,
    Unbounded,
}

struct Tableau {
    cols: Vec<ColKind>,
    /// First artificial column index; artificial `i` sits at `art_start + i`.
    art_start: usize,
    /// `rows × (total_cols + 1)`, right-hand side last.
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row, same width as `rows` entries; the last entry holds
    /// `−z`.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    /// `true` where the canonical row is the negated original row.
    flipped: Vec<bool>,
    n_eq: usize,
    num_vars: usize,
}

impl Tableau {
    fn build(sys: &LinearSystem) -> Self {
        let mut cols = Vec::new();
        let mut plus_col = vec![0usize; sys.num_vars];
        let mut minus_col = vec![usize::MAX; sys.num_vars];
        // variable columns in index order, minus-part immediately after its
        // plus-part so Bland's ordering stays tied to the original indexing
        for k in 0..sys.num_vars {
            plus_col[k] = cols.len();
            cols.push(ColKind::Plus(k));
            if !sys.nonneg[k] {
                minus_col[k] = cols.len();
                cols.push(ColKind::Minus(k));
            }
        }
        let surplus_start = cols.len();
        for t in 0..sys.ineq_rows.len() {
            cols.push(ColKind::Surplus(t));
        }
        let art_start = cols.len();
        let m = sys.num_rows();
        let total = art_start + m;

        let mut rows = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for (ri, row) in sys.eq_rows.iter().chain(&sys.ineq_rows).enumerate() {
            let mut dense = vec![Rational::zero(); total + 1];
            for (k, c) in &row.coeffs {
                dense[plus_col[*k]] += c;
                if minus_col[*k] != usize::MAX {
                    dense[minus_col[*k]] -= c;
                }
            }
            if ri >= sys.eq_rows.len() {
                let t = ri - sys.eq_rows.len();
                dense[surplus_start + t] = -Rational::one();
            }
            dense[total] = row.rhs.clone();
            let flip = dense[total].is_negative();
            if flip {
                for e in dense.iter_mut() {
                    *e = -std::mem::take(e);
                }
            }
            dense[art_start + ri] = Rational::one();
            rows.push(dense);
            flipped.push(flip);
        }

        // phase-1 reduced costs: 0 − Σ_i a_ij for structural columns, 0 for
        // artificials; last entry −z = −Σ b
        let mut cost = vec![Rational::zero(); total + 1];
        for row in &rows {
            for (j, c) in cost.iter_mut().enumerate().take(art_start) {
                *c -= &row[j];
            }
        }
        let mut z = Rational::zero();
        for row in &rows {
            z += &row[total];
        }
        cost[total] = -z;

        Self {
            cols,
            art_start,
            rows,
            cost,
            basis: (art_start..total).collect(),
            flipped,
            n_eq: sys.eq_rows.len(),
            num_vars: sys.num_vars,
        }
    }

    fn total_cols(&self) -> usize {
        self.art_start + self.rows.len()
    }

    fn pivot(&mut self, r: usize, jc: usize) {
        let width = self.total_cols() + 1;
        let pivot_val = self.rows[r][jc].clone();
        debug_assert!(!pivot_val.is_zero());
        if !pivot_val.is_one() {
            for e in self.rows[r].iter_mut() {
                if !e.is_zero() {
                    *e /= &pivot_val;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][jc].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..width {
                if !pivot_row[j].is_zero() {
                    let delta = &factor * &pivot_row[j];
                    self.rows[i][j] -= delta;
                }
            }
        }
        let factor = self.cost[jc].clone();
        if !factor.is_zero() {
            for j in 0..width {
                if !pivot_row[j].is_zero() {
                    let delta = &factor * &pivot_row[j];
                    self.cost[j] -= delta;
                }
            }
        }
        self.basis[r] = jc;
    }

    /// Bland's rule: entering column = lowest index with negative reduced
    /// cost; leaving row = minimum ratio, ties broken by lowest basic index.
    fn bland_step(&mut self, allow_artificial_entering: bool) -> Option<bool> {
        let rhs_col = self.total_cols();
        let limit = if allow_artificial_entering {
            self.total_cols()
        } else {
            self.art_start
        };
        let entering = (0..limit).find(|&j| self.cost[j].is_negative())?;
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][entering];
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.rows[i][rhs_col] / a;
            match &leave {
                None => leave = Some((i, ratio)),
                Some((best_i, best)) => {
                    if ratio < *best
                        || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    {
                        leave = Some((i, ratio));
                    }
                }
            }
        }
        match leave {
            Some((r, _)) => {
                self.pivot(r, entering);
                Some(true)
            }
            None => Some(false), // entering column unbounded
        }
    }

    fn phase_one(&mut self) -> PhaseOne {
        loop {
            match self.bland_step(true) {
                Some(true) => continue,
                Some(false) => unreachable!("phase-1 objective is bounded below by zero"),
                None => break,
            }
        }
        let rhs_col = self.total_cols();
        let z = -self.cost[rhs_col].clone();
        debug_assert!(!z.is_negative());
        if z.is_positive() {
            // duals: y_i = 1 − reduced cost of artificial i; certificate
            // multipliers undo the row sign flips
            let mut multipliers = Vec::with_capacity(self.rows.len());
            for i in 0..self.rows.len() {
                let y = Rational::one() - &self.cost[self.art_start + i];
                multipliers.push(if self.flipped[i] { -y } else { y });
            }
            PhaseOne::Infeasible(FarkasCertificate { multipliers })
        } else {
            self.evict_basic_artificials();
            PhaseOne::Feasible
        }
    }

    /// After a zero-cost phase 1, degenerate-pivot artificials out of the
    /// basis wherever a structural column is available; rows with none are
    /// redundant and keep their artificial pinned at zero.
    fn evict_basic_artificials(&mut self) {
        for i in 0..self.rows.len() {
            if self.basis[i] < self.art_start {
                continue;
            }
            let jc = (0..self.art_start).find(|&j| !self.rows[i][j].is_zero());
            if let Some(jc) = jc {
                self.pivot(i, jc);
            }
        }
    }

    fn phase_two(&mut self, objective: &[Rational]) -> PhaseTwo {
        let rhs_col = self.total_cols();
        let mut cost = vec![Rational::zero(); rhs_col + 1];
        for (j, col) in self.cols.iter().enumerate() {
            match col {
                ColKind::Plus(k) => cost[j] = objective[*k].clone(),
                ColKind::Minus(k) => cost[j] = -objective[*k].clone(),
                ColKind::Surplus(_) => {}
            }
        }
        // reduce against the current basis
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..=rhs_col {
                if !self.rows[i][j].is_zero() {
                    let delta = &cb * &self.rows[i][j];
                    cost[j] -= delta;
                }
            }
        }
        self.cost = cost;
        loop {
            match self.bland_step(false) {
                Some(true) => continue,
                Some(false) => return PhaseTwo::Unbounded,
                None => return PhaseTwo::Optimal,
            }
        }
    }

    fn read_solution(&self) -> Vec<Rational> {
        let rhs_col = self.total_cols();
        let mut v = vec![Rational::zero(); self.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.art_start {
                debug_assert!(self.rows[i][rhs_col].is_zero());
                continue;
            }
            match self.cols[b] {
                ColKind::Plus(k) => v[k] += &self.rows[i][rhs_col],
                ColKind::Minus(k) => v[k] -= &self.rows[i][rhs_col],
                ColKind::Surplus(_) => {}
            }
        }
        v
    }
}
