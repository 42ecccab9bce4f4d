//! Self-contained dense simplex for small equality-form LPs:
//! `min c.x  s.t.  A x = b, x >= 0`.
//!
//! Two-phase, Dantzig pricing with lowest-index tie breaking, switching to
//! Bland's rule after `10 * (rows + cols)` degenerate pivots. Rows are
//! equilibrated internally; infeasibility returns a Farkas separator for the
//! original row space. Everything is deterministic for a fixed input.
//!
//! Generic over [`Scalar`] (`f32`/`f64`); the pipeline instantiates `f64`.

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error("empty program")]
    Empty,
    #[error("column {0} has length {1}, expected {2}")]
    ColumnShape(usize, usize, usize),
    #[error("objective is unbounded below")]
    Unbounded,
    #[error("iteration limit {0} exceeded")]
    Stalled(usize),
}

#[derive(Clone, Debug)]
pub struct LpSolution<S> {
    /// Structural variable values.
    pub x: Vec<S>,
    pub objective: S,
}

/// Farkas certificate: `separator . column_j <= tol` for every column while
/// `separator . rhs = violation > tol`.
#[derive(Clone, Debug)]
pub struct InfeasibilityCertificate<S> {
    pub separator: Vec<S>,
    pub violation: S,
}

#[derive(Clone, Debug)]
pub enum LpOutcome<S> {
    Optimal(LpSolution<S>),
    Infeasible(InfeasibilityCertificate<S>),
}

struct Tableau<S> {
    rows: usize,
    structural: usize,
    stride: usize,
    t: Vec<S>,
    basis: Vec<usize>,
    row_scale: Vec<S>,
}

impl<S: Scalar> Tableau<S> {
    fn entry(&self, r: usize, c: usize) -> S {
        self.t[r * self.stride + c]
    }

    fn rhs_col(&self) -> usize {
        self.stride - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let stride = self.stride;
        let inv = S::one() / self.t[r * stride + c];
        for j in 0..stride {
            self.t[r * stride + j] = self.t[r * stride + j] * inv;
        }
        self.t[r * stride + c] = S::one();
        for i in 0..self.rows + 1 {
            if i == r {
                continue;
            }
            let factor = self.t[i * stride + c];
            if factor == S::zero() {
                continue;
            }
            for j in 0..stride {
                let delta = factor * self.t[r * stride + j];
                self.t[i * stride + j] -= delta;
            }
            self.t[i * stride + c] = S::zero();
        }
        self.basis[r] = c;
    }
}

/// Solve `min c.x : A x = b, x >= 0`, columns given column-major.
pub fn minimize<S: Scalar>(columns: &[Vec<S>], costs: &[S], rhs: &[S]) -> Result<LpOutcome<S>, SimplexError> {
    let rows = rhs.len();
    let n = columns.len();
    if rows == 0 || n == 0 {
        return Err(SimplexError::Empty);
    }
    for (j, col) in columns.iter().enumerate() {
        if col.len() != rows {
            return Err(SimplexError::ColumnShape(j, col.len(), rows));
        }
    }
    debug_assert_eq!(costs.len(), n);

    let stride = n + rows + 1;
    let mut t = vec![S::zero(); (rows + 1) * stride];
    let mut row_scale = vec![S::one(); rows];

    for i in 0..rows {
        let mut max_abs = rhs[i].abs();
        for col in columns {
            max_abs = max_abs.max(col[i].abs());
        }
        let norm = if max_abs > S::zero() { max_abs } else { S::one() };
        let flip = if rhs[i] < S::zero() { -S::one() } else { S::one() };
        let d = flip / norm;
        row_scale[i] = d;
        for (j, col) in columns.iter().enumerate() {
            t[i * stride + j] = col[i] * d;
        }
        t[i * stride + n + i] = S::one();
        t[i * stride + stride - 1] = rhs[i] * d;
    }

    let mut tab = Tableau { rows, structural: n, stride, t, basis: (n..n + rows).collect(), row_scale };

    // phase 1: minimise the artificial mass
    for i in 0..rows {
        tab.t[rows * stride + n + i] = S::one();
    }
    for i in 0..rows {
        for j in 0..stride {
            let v = tab.t[i * stride + j];
            tab.t[rows * stride + j] -= v;
        }
    }
    run_simplex(&mut tab, n + rows, true)?;

    let feas_tol = S::of(1e-9);
    let infeas = -tab.entry(rows, tab.rhs_col());
    if infeas > feas_tol {
        // Farkas separator from the phase-1 duals: y_i = 1 - redcost(artificial_i)
        let mut separator = vec![S::zero(); rows];
        for i in 0..rows {
            let rc = tab.entry(rows, n + i);
            separator[i] = (S::one() - rc) * tab.row_scale[i];
        }
        return Ok(LpOutcome::Infeasible(InfeasibilityCertificate { separator, violation: infeas }));
    }

    // drive any basic artificials out on a structural pivot; rows that stay
    // artificial are redundant and keep value 0
    for r in 0..rows {
        if tab.basis[r] >= n {
            let pivot_eps = S::of(1e-9);
            if let Some(c) = (0..n).find(|&c| tab.entry(r, c).abs() > pivot_eps) {
                tab.pivot(r, c);
            }
        }
    }

    // phase 2: rebuild the cost row for the real objective
    for j in 0..stride {
        tab.t[rows * stride + j] = S::zero();
    }
    for (j, &cost) in costs.iter().enumerate() {
        tab.t[rows * stride + j] = cost;
    }
    for r in 0..rows {
        let b = tab.basis[r];
        let cb = if b < n { costs[b] } else { S::zero() };
        if cb == S::zero() {
            continue;
        }
        for j in 0..stride {
            let v = tab.t[r * stride + j];
            tab.t[rows * stride + j] -= cb * v;
        }
    }
    run_simplex(&mut tab, n, false)?;

    let mut x = vec![S::zero(); n];
    for r in 0..rows {
        if tab.basis[r] < n {
            x[tab.basis[r]] = tab.entry(r, tab.rhs_col());
        }
    }
    let objective = -tab.entry(rows, tab.rhs_col());
    Ok(LpOutcome::Optimal(LpSolution { x, objective }))
}

/// Price-and-pivot loop over the first `col_limit` columns.
fn run_simplex<S: Scalar>(tab: &mut Tableau<S>, col_limit: usize, phase_one: bool) -> Result<(), SimplexError> {
    let rows = tab.rows;
    let redcost_eps = S::of(1e-9);
    let pivot_eps = S::of(1e-11);
    let degenerate_limit = 10 * (rows + tab.structural);
    let iteration_limit = 50 * (rows + tab.structural) + 1000;

    let mut bland = false;
    let mut degenerate = 0usize;
    for iter in 0.. {
        if iter > iteration_limit {
            return Err(SimplexError::Stalled(iteration_limit));
        }
        let mut entering = None;
        if bland {
            for c in 0..col_limit {
                if tab.entry(rows, c) < -redcost_eps {
                    entering = Some(c);
                    break;
                }
            }
        } else {
            let mut best = -redcost_eps;
            for c in 0..col_limit {
                let rc = tab.entry(rows, c);
                if rc < best {
                    best = rc;
                    entering = Some(c);
                }
            }
        }
        let Some(c) = entering else {
            return Ok(());
        };

        let mut leaving: Option<(usize, S)> = None;
        for r in 0..rows {
            let a = tab.entry(r, c);
            if a <= pivot_eps {
                continue;
            }
            let ratio = tab.entry(r, tab.rhs_col()) / a;
            match leaving {
                None => leaving = Some((r, ratio)),
                Some((lr, lratio)) => {
                    if ratio < lratio - S::of(1e-12) || (ratio <= lratio + S::of(1e-12) && tab.basis[r] < tab.basis[lr]) {
                        leaving = Some((r, ratio));
                    }
                }
            }
        }
        let Some((r, ratio)) = leaving else {
            if phase_one {
                // phase-1 objective is bounded below by 0; numerically stuck
                return Err(SimplexError::Stalled(iter));
            }
            return Err(SimplexError::Unbounded);
        };
        if ratio.abs() <= S::of(1e-12) {
            degenerate += 1;
            if degenerate > degenerate_limit {
                bland = true;
            }
        } else {
            degenerate = 0;
        }
        tab.pivot(r, c);
    }
    unreachable!()
}

/// Outcome of a convex-hull membership test.
#[derive(Clone, Debug)]
pub enum Membership<S> {
    /// Convex weights over the hull columns reproducing the point.
    Inside { weights: Vec<S> },
    /// Separating functional: `w . point > max_j w . column_j`.
    Outside { separator: Vec<S> },
}

/// Decide `point in conv(columns)` via the feasibility LP
/// `min 0 : Q lambda = p, lambda >= 0`; the affine row (index 0 equal to 1 on
/// every column and on the point) makes the weights sum to one.
pub fn membership<S: Scalar>(point: &[S], columns: &[Vec<S>]) -> Result<Membership<S>, SimplexError> {
    let costs = vec![S::zero(); columns.len()];
    match minimize(columns, &costs, point)? {
        LpOutcome::Optimal(sol) => Ok(Membership::Inside { weights: sol.x }),
        LpOutcome::Infeasible(cert) => Ok(Membership::Outside { separator: cert.separator }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(v: &[&[f64]]) -> Vec<Vec<f64>> {
        v.iter().map(|c| c.to_vec()).collect()
    }

    #[test]
    fn solves_tiny_lp() {
        // min x0 + x1 : x0 + 2 x1 = 4, x0 - x1 = 1  ->  x = (2, 1)
        let columns = cols(&[&[1.0, 1.0], &[2.0, -1.0]]);
        let out = minimize(&columns, &[1.0, 1.0], &[4.0, 1.0]).unwrap();
        let LpOutcome::Optimal(sol) = out else { panic!("expected optimal") };
        assert!((sol.x[0] - 2.0).abs() < 1e-9);
        assert!((sol.x[1] - 1.0).abs() < 1e-9);
        assert!((sol.objective - 3.0).abs() < 1e-9);
    }

    #[test]
    fn prefers_cheap_column() {
        // min u + v : u - v = 1, free split; optimum picks u = 1
        let columns = cols(&[&[1.0], &[-1.0]]);
        let out = minimize(&columns, &[1.0, 1.0], &[1.0]).unwrap();
        let LpOutcome::Optimal(sol) = out else { panic!() };
        assert!((sol.objective - 1.0).abs() < 1e-9);
        assert!((sol.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible_with_certificate() {
        // x0 = 1 and x0 = 2 cannot both hold
        let columns = cols(&[&[1.0, 1.0]]);
        let out = minimize(&columns, &[0.0], &[1.0, 2.0]).unwrap();
        let LpOutcome::Infeasible(cert) = out else { panic!("expected infeasible") };
        let w = &cert.separator;
        let against_col = w[0] + w[1];
        let against_rhs = w[0] + 2.0 * w[1];
        assert!(against_rhs > against_col + 1e-10);
    }

    #[test]
    fn membership_examples() {
        // midpoint of two vertices
        let q = cols(&[&[1.0, 1.0], &[1.0, -1.0]]);
        match membership(&[1.0, 0.0], &q).unwrap() {
            Membership::Inside { weights } => {
                assert!((weights[0] - 0.5).abs() < 1e-9);
                assert!((weights[1] - 0.5).abs() < 1e-9);
            }
            _ => panic!("midpoint is inside"),
        }

        // point strictly outside exposes coordinate 1
        let q = cols(&[&[1.0, 0.0], &[1.0, -1.0]]);
        match membership(&[1.0, 1.0], &q).unwrap() {
            Membership::Outside { separator } => {
                let p = separator[0] + separator[1];
                let best_col = separator[0].max(separator[0] - separator[1]);
                assert!(p > best_col + 1e-10);
            }
            _ => panic!("point is outside"),
        }

        // off-centre combination: quarter/three-quarter weights
        let q = cols(&[&[1.0, 0.0, 2.0], &[1.0, 0.0, -2.0]]);
        match membership(&[1.0, 0.0, -1.0], &q).unwrap() {
            Membership::Inside { weights } => {
                assert!((weights[0] - 0.25).abs() < 1e-9);
                assert!((weights[1] - 0.75).abs() < 1e-9);
            }
            _ => panic!("inside"),
        }
    }

    #[test]
    fn membership_generic_over_f32() {
        let q: Vec<Vec<f32>> = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
        match membership(&[1.0f32, 0.0], &q).unwrap() {
            Membership::Inside { weights } => assert!((weights[0] - 0.5).abs() < 1e-5),
            _ => panic!("inside"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // many coincident ratios force degenerate pivots
        let columns = cols(&[
            &[1.0, 1.0, 1.0],
            &[1.0, 1.0, 0.0],
            &[1.0, 0.0, 1.0],
            &[0.0, 1.0, 1.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0],
        ]);
        let out = minimize(&columns, &[3.0, 2.0, 2.0, 2.0, 1.0, 1.0], &[1.0, 1.0, 1.0]).unwrap();
        let LpOutcome::Optimal(sol) = out else { panic!() };
        assert!((sol.objective - 3.0).abs() < 1e-9);
    }
}
