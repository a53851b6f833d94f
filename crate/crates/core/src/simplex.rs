//! Dense bounded-variable primal simplex.
//!
//! Solves `min c'x  s.t.  A x = b,  l <= x <= u` where every lower bound is
//! finite. Upper bounds may be infinite. Pivoting is deterministic: Dantzig
//! pricing with lowest-index ties, a Harris two-pass ratio test, and a
//! switch to Bland's rule after a run of degenerate pivots.
//!
//! Several objectives can be optimized lexicographically: after each level
//! the nonbasic columns with nonzero reduced cost are frozen, so later
//! levels only move along the optimal face of earlier ones.

use std::fmt;

const FEAS_TOL: f64 = 1e-9;
const OPT_TOL: f64 = 1e-11;
const PIV_TOL: f64 = 1e-9;
const FACE_TOL: f64 = 1e-9;
const PHASE1_TOL: f64 = 1e-7;
const DEGENERATE_RUN: usize = 50;

/// Equality-form LP with sparse rows.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub num_cols: usize,
    pub rows: Vec<Vec<(usize, f64)>>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LinearProgram {
    pub fn new(num_cols: usize) -> Self {
        Self {
            num_cols,
            rows: Vec::new(),
            rhs: Vec::new(),
            lower: vec![0.0; num_cols],
            upper: vec![f64::INFINITY; num_cols],
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, rhs: f64) {
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
    IterationLimit,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::Infeasible => write!(f, "infeasible"),
            LpError::Unbounded => write!(f, "unbounded"),
            LpError::IterationLimit => write!(f, "iteration limit reached"),
        }
    }
}

impl std::error::Error for LpError {}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    /// Value of each objective level at the returned point.
    pub objectives: Vec<f64>,
    pub iterations: usize,
}

/// Solve `lp` lexicographically over `objectives` (each of length
/// `lp.num_cols`). `crash` optionally names one basic column per row; it is
/// used as the starting basis when it yields a feasible point, otherwise
/// the solver falls back to an artificial-variable phase one.
pub fn solve_lexicographic(
    lp: &LinearProgram,
    objectives: &[&[f64]],
    crash: Option<&[usize]>,
) -> Result<LpSolution, LpError> {
    assert!(!objectives.is_empty());
    debug_assert!(lp.lower.iter().all(|l| l.is_finite()));

    let mut tab = match crash.and_then(|c| Tableau::from_crash(lp, c)) {
        Some(t) => t,
        None => {
            let mut t = Tableau::with_artificials(lp);
            t.phase_one()?;
            t
        }
    };

    let mut values = Vec::with_capacity(objectives.len());
    for (level, obj) in objectives.iter().enumerate() {
        debug_assert_eq!(obj.len(), lp.num_cols);
        let cost = tab.padded(obj);
        tab.optimize(&cost)?;
        values.push(tab.objective(&cost));
        if level + 1 < objectives.len() {
            tab.freeze_off_face();
        }
    }
    let x = tab.primal();
    // report every level at the final point; earlier levels can drift by
    // roundoff while later ones pivot along the face
    let objectives = objectives
        .iter()
        .map(|c| c.iter().zip(&x).map(|(c, x)| c * x).sum())
        .collect();
    Ok(LpSolution {
        x,
        objectives,
        iterations: tab.iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Basic,
    Lower,
    Upper,
}

struct Tableau {
    m: usize,
    /// structural columns
    n: usize,
    /// row stride, `n` plus artificials
    w: usize,
    tab: Vec<f64>,
    beta: Vec<f64>,
    basis: Vec<usize>,
    row_of: Vec<usize>,
    state: Vec<State>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    frozen: Vec<bool>,
    d: Vec<f64>,
    iterations: usize,
    max_iterations: usize,
    scratch: Vec<usize>,
}

impl Tableau {
    fn empty(lp: &LinearProgram, w: usize) -> Self {
        let m = lp.rows.len();
        let n = lp.num_cols;
        let mut tab = vec![0.0; m * w];
        for (i, row) in lp.rows.iter().enumerate() {
            for &(j, a) in row {
                tab[i * w + j] += a;
            }
        }
        let mut lower = lp.lower.clone();
        let mut upper = lp.upper.clone();
        lower.resize(w, 0.0);
        upper.resize(w, f64::INFINITY);
        Self {
            m,
            n,
            w,
            tab,
            beta: vec![0.0; m],
            basis: vec![usize::MAX; m],
            row_of: vec![usize::MAX; w],
            state: vec![State::Lower; w],
            lower,
            upper,
            frozen: vec![false; w],
            d: vec![0.0; w],
            iterations: 0,
            max_iterations: 50 * (m + w) + 1000,
            scratch: Vec::with_capacity(w),
        }
    }

    fn from_crash(lp: &LinearProgram, crash: &[usize]) -> Option<Self> {
        let mut t = Self::empty(lp, lp.num_cols);
        if crash.len() != t.m {
            return None;
        }
        let mut rhs = lp.rhs.clone();
        for (r, &q) in crash.iter().enumerate() {
            if q >= t.n || t.row_of[q] != usize::MAX {
                return None;
            }
            let piv = t.tab[r * t.w + q];
            if piv.abs() < PIV_TOL {
                return None;
            }
            t.eliminate(r, q, Some(&mut rhs));
            t.basis[r] = q;
            t.row_of[q] = r;
            t.state[q] = State::Basic;
        }
        for j in 0..t.n {
            if t.state[j] == State::Basic {
                continue;
            }
            let xj = t.lower[j];
            if xj != 0.0 {
                for i in 0..t.m {
                    rhs[i] -= t.tab[i * t.w + j] * xj;
                }
            }
        }
        for (i, &v) in rhs.iter().enumerate() {
            let b = t.basis[i];
            if v < t.lower[b] - FEAS_TOL || v > t.upper[b] + FEAS_TOL {
                return None;
            }
        }
        t.beta = rhs;
        Some(t)
    }

    fn with_artificials(lp: &LinearProgram) -> Self {
        let m = lp.rows.len();
        let n = lp.num_cols;
        let mut t = Self::empty(lp, n + m);
        for i in 0..m {
            let mut r = lp.rhs[i];
            for &(j, a) in &lp.rows[i] {
                r -= a * lp.lower[j];
            }
            if r < 0.0 {
                for v in &mut t.tab[i * t.w..i * t.w + n] {
                    *v = -*v;
                }
            }
            let art = n + i;
            t.tab[i * t.w + art] = 1.0;
            t.beta[i] = r.abs();
            t.basis[i] = art;
            t.row_of[art] = i;
            t.state[art] = State::Basic;
        }
        t
    }

    fn phase_one(&mut self) -> Result<(), LpError> {
        let mut cost = vec![0.0; self.w];
        for c in &mut cost[self.n..] {
            *c = 1.0;
        }
        self.optimize(&cost)?;
        let infeas: f64 = (0..self.m)
            .filter(|&i| self.basis[i] >= self.n)
            .map(|i| self.beta[i])
            .sum();
        if infeas > PHASE1_TOL {
            return Err(LpError::Infeasible);
        }
        // drive zero-level artificials out of the basis where possible
        for r in 0..self.m {
            let art = self.basis[r];
            if art < self.n {
                continue;
            }
            let row = &self.tab[r * self.w..r * self.w + self.n];
            let mut best = None;
            let mut best_abs = PIV_TOL;
            for (j, &a) in row.iter().enumerate() {
                if self.state[j] != State::Basic && a.abs() > best_abs {
                    best_abs = a.abs();
                    best = Some(j);
                }
            }
            if let Some(q) = best {
                let xq = self.nonbasic_value(q);
                self.eliminate(r, q, None);
                self.set_basic(r, q, State::Lower);
                self.beta[r] = xq;
            }
        }
        for j in self.n..self.w {
            self.upper[j] = 0.0;
            self.frozen[j] = true;
            if self.state[j] == State::Basic {
                self.beta[self.row_of[j]] = 0.0;
            }
        }
        Ok(())
    }

    fn padded(&self, obj: &[f64]) -> Vec<f64> {
        let mut c = obj.to_vec();
        c.resize(self.w, 0.0);
        c
    }

    fn nonbasic_value(&self, j: usize) -> f64 {
        match self.state[j] {
            State::Lower => self.lower[j],
            State::Upper => self.upper[j],
            State::Basic => self.beta[self.row_of[j]],
        }
    }

    fn set_basic(&mut self, r: usize, q: usize, leaving_state: State) {
        let leaving = self.basis[r];
        self.state[leaving] = leaving_state;
        self.row_of[leaving] = usize::MAX;
        self.basis[r] = q;
        self.row_of[q] = r;
        self.state[q] = State::Basic;
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        (0..self.w).map(|j| cost[j] * self.nonbasic_value(j)).sum()
    }

    fn primal(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| self.nonbasic_value(j).clamp(self.lower[j], self.upper[j]))
            .collect()
    }

    fn reduced_costs(&mut self, cost: &[f64]) {
        self.d.copy_from_slice(cost);
        for i in 0..self.m {
            let cb = cost[self.basis[i]];
            if cb == 0.0 {
                continue;
            }
            let row = &self.tab[i * self.w..(i + 1) * self.w];
            for (dj, &a) in self.d.iter_mut().zip(row) {
                *dj -= cb * a;
            }
        }
        for i in 0..self.m {
            self.d[self.basis[i]] = 0.0;
        }
    }

    fn freeze_off_face(&mut self) {
        for j in 0..self.w {
            if self.state[j] != State::Basic && self.d[j].abs() > FACE_TOL {
                self.frozen[j] = true;
            }
        }
    }

    /// Gauss-Jordan elimination on pivot (r, q). `extra` receives the same
    /// row operations.
    fn eliminate(&mut self, r: usize, q: usize, extra: Option<&mut Vec<f64>>) {
        let w = self.w;
        let piv = self.tab[r * w + q];
        let inv = 1.0 / piv;
        self.scratch.clear();
        for j in 0..w {
            let v = &mut self.tab[r * w + j];
            if *v != 0.0 {
                *v *= inv;
                self.scratch.push(j);
            }
        }
        self.tab[r * w + q] = 1.0;
        let mut extra = extra;
        if let Some(v) = extra.as_deref_mut() {
            v[r] *= inv;
        }
        let (before, rest) = self.tab.split_at_mut(r * w);
        let (pivot_row, after) = rest.split_at_mut(w);
        let nz = &self.scratch;
        let mut apply = |i: usize, row: &mut [f64]| {
            let f = row[q];
            if f == 0.0 {
                return;
            }
            for &j in nz {
                row[j] -= f * pivot_row[j];
            }
            row[q] = 0.0;
            if let Some(v) = extra.as_deref_mut() {
                v[i] -= f * v[r];
            }
        };
        for (i, row) in before.chunks_exact_mut(w).enumerate() {
            apply(i, row);
        }
        for (k, row) in after.chunks_exact_mut(w).enumerate() {
            apply(r + 1 + k, row);
        }
    }

    fn optimize(&mut self, cost: &[f64]) -> Result<(), LpError> {
        self.reduced_costs(cost);
        let mut degenerate = 0usize;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(LpError::IterationLimit);
            }
            let bland = degenerate > DEGENERATE_RUN;
            let Some(q) = self.price(bland) else {
                return Ok(());
            };
            let dir = if self.state[q] == State::Lower { 1.0 } else { -1.0 };
            let flip = self.upper[q] - self.lower[q];
            let leave = self.ratio_test(q, dir, bland);

            let (theta, pivot_row) = match leave {
                Some((r, t)) if t < flip => (t, Some(r)),
                _ if flip.is_finite() => (flip, None),
                _ => return Err(LpError::Unbounded),
            };
            self.iterations += 1;
            if theta <= FEAS_TOL {
                degenerate += 1;
            } else {
                degenerate = 0;
            }

            if theta != 0.0 {
                let w = self.w;
                for i in 0..self.m {
                    let a = self.tab[i * w + q];
                    if a != 0.0 {
                        self.beta[i] -= dir * a * theta;
                    }
                }
            }
            match pivot_row {
                None => {
                    self.state[q] = if dir > 0.0 { State::Upper } else { State::Lower };
                }
                Some(r) => {
                    let entering_value = self.nonbasic_value(q) + dir * theta;
                    let leaving = self.basis[r];
                    let delta = -dir * self.tab[r * self.w + q];
                    let leaving_state = if delta < 0.0 { State::Lower } else { State::Upper };
                    let _ = leaving;
                    self.eliminate(r, q, None);
                    self.set_basic(r, q, leaving_state);
                    self.beta[r] = entering_value;
                    let dq = self.d[q];
                    if dq != 0.0 {
                        let row = &self.tab[r * self.w..(r + 1) * self.w];
                        for &j in &self.scratch {
                            self.d[j] -= dq * row[j];
                        }
                    }
                    self.d[q] = 0.0;
                }
            }
        }
    }

    fn price(&self, bland: bool) -> Option<usize> {
        let mut best = None;
        let mut best_score = OPT_TOL;
        for j in 0..self.w {
            if self.frozen[j] {
                continue;
            }
            let score = match self.state[j] {
                State::Basic => continue,
                State::Lower => -self.d[j],
                State::Upper => self.d[j],
            };
            if score <= OPT_TOL || self.upper[j] - self.lower[j] <= 0.0 {
                continue;
            }
            if bland {
                return Some(j);
            }
            if score > best_score {
                best_score = score;
                best = Some(j);
            }
        }
        best
    }

    /// Returns the leaving row and step length, or `None` if no basic
    /// variable limits the move.
    fn ratio_test(&self, q: usize, dir: f64, bland: bool) -> Option<(usize, f64)> {
        let w = self.w;
        let ratio = |i: usize, slack: f64| -> Option<f64> {
            let a = self.tab[i * w + q];
            if a.abs() <= PIV_TOL {
                return None;
            }
            let delta = -dir * a;
            let b = self.basis[i];
            if delta < 0.0 {
                Some(((self.beta[i] - self.lower[b] + slack) / -delta).max(0.0))
            } else if self.upper[b].is_finite() {
                Some(((self.upper[b] - self.beta[i] + slack) / delta).max(0.0))
            } else {
                None
            }
        };

        if bland {
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.m {
                if let Some(t) = ratio(i, 0.0) {
                    best = match best {
                        Some((bi, bt))
                            if bt < t - 1e-12 || ((bt - t).abs() <= 1e-12 && self.basis[bi] < self.basis[i]) =>
                        {
                            Some((bi, bt))
                        }
                        _ => Some((i, t)),
                    };
                }
            }
            return best;
        }

        // Harris pass one: largest step with bounds relaxed by FEAS_TOL
        let mut relaxed = f64::INFINITY;
        for i in 0..self.m {
            if let Some(t) = ratio(i, FEAS_TOL) {
                relaxed = relaxed.min(t);
            }
        }
        if !relaxed.is_finite() {
            return None;
        }
        // pass two: among rows within the relaxed step, take the largest pivot
        let mut best: Option<(usize, f64, f64)> = None;
        for i in 0..self.m {
            if let Some(t) = ratio(i, 0.0) {
                if t <= relaxed {
                    let a = self.tab[i * w + q].abs();
                    if best.is_none_or(|(_, _, ba)| a > ba) {
                        best = Some((i, t, a));
                    }
                }
            }
        }
        best.map(|(i, t, _)| (i, t))
    }
}
