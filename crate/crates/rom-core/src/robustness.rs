//! Assembly and exact solution of the symmetry-reduced l1-minimisation,
//! the closed-form dual lower bound, and decomposition post-processing.
//!
//! The LP is the standard split `min 1.(u + v) : V(u - v) = b, u, v >= 0`
//! over the scaled vertex columns. Row 0 of every column is 1, so the affine
//! constraint (coefficients sum to one) is the first equality row.

use crate::enumerator::TargetVector;
use crate::polytope::{ProjectedPolytope, VertexLabel};
use crate::simplex::{self, LpOutcome, SimplexError};
use crate::Mode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("problem mismatch: vertices are ({0}, n={1}), target is ({2}, n={3})")]
    ProblemMismatch(Mode, usize, Mode, usize),
    #[error("target lies outside the affine span of the columns (violation {violation:.3e})")]
    Infeasible { certificate: Vec<f64>, violation: f64 },
    #[error(transparent)]
    Solver(#[from] SimplexError),
    #[error("robustness value {0} below 1")]
    ValueBelowOne(f64),
    #[error("decomposition failed validation: {0}")]
    Validation(String),
}

/// Scaled l1 problem: columns are vertex coordinates times `s^{-i/2}`.
#[derive(Clone, Debug)]
pub struct L1Problem {
    pub mode: Mode,
    pub n: usize,
    pub columns: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub labels: Vec<VertexLabel>,
}

/// Diagonal scaling applied to coordinate `i`.
pub fn coordinate_scale(mode: Mode, i: usize) -> f64 {
    mode.scaling_base().powf(-(i as f64) / 2.0)
}

pub fn scale_coords(mode: Mode, coords: &[i64]) -> Vec<f64> {
    coords.iter().enumerate().map(|(i, &c)| c as f64 * coordinate_scale(mode, i)).collect()
}

/// Assemble the LP from any labeled integer point set. Vertex columns carry
/// the `s^{-i/2}` scaling; the target coefficients are already expressed in
/// the scaled basis and enter as plain reals.
pub fn assemble_problem(
    mode: Mode,
    n: usize,
    points: &[(Vec<i64>, VertexLabel)],
    target: &TargetVector,
) -> Result<L1Problem, SolveError> {
    if target.mode() != mode || target.n() != n {
        return Err(SolveError::ProblemMismatch(mode, n, target.mode(), target.n()));
    }
    let rhs = target.coeffs().iter().map(|&c| c as f64).collect();
    Ok(assemble_raw(mode, n, points, rhs))
}

fn assemble_raw(mode: Mode, n: usize, points: &[(Vec<i64>, VertexLabel)], rhs: Vec<f64>) -> L1Problem {
    let columns: Vec<Vec<f64>> = points.iter().map(|(c, _)| scale_coords(mode, c)).collect();
    let labels = points.iter().map(|(_, l)| l.clone()).collect();
    L1Problem { mode, n, columns, rhs, labels }
}

#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub coefficient: f64,
    pub label: VertexLabel,
    /// Unscaled integer coordinates of the vertex (kept for splitting and
    /// reconstruction checks).
    pub coords: Vec<i64>,
}

/// Optimal affine combination over labeled vertices.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub mode: Mode,
    pub n: usize,
    pub terms: Vec<DecompositionTerm>,
    /// The l1 norm, i.e. the robustness value.
    pub value: f64,
    /// Max-norm reconstruction error of the scaled system.
    pub residual: f64,
}

impl Decomposition {
    pub fn coefficient_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient).sum()
    }

    pub fn negative_mass(&self) -> f64 {
        -self.terms.iter().map(|t| t.coefficient.min(0.0)).sum::<f64>()
    }
}

/// Coefficients below this are dropped from the reported support.
const SUPPORT_EPS: f64 = 1e-10;

/// Solve the l1 minimisation over an arbitrary labeled point set.
pub fn solve_l1_points(
    mode: Mode,
    n: usize,
    points: &[(Vec<i64>, VertexLabel)],
    target: &TargetVector,
) -> Result<Decomposition, SolveError> {
    let problem = assemble_problem(mode, n, points, target)?;
    solve_assembled(points, problem)
}

/// As [`solve_l1_points`] with a vertex's enumerator coordinates as the
/// target (for faithfulness checks: the rhs gets the same column scaling).
pub fn solve_l1_vertex_target(
    mode: Mode,
    n: usize,
    points: &[(Vec<i64>, VertexLabel)],
    vertex_coords: &[i64],
) -> Result<Decomposition, SolveError> {
    let problem = assemble_raw(mode, n, points, scale_coords(mode, vertex_coords));
    solve_assembled(points, problem)
}

fn solve_assembled(
    points: &[(Vec<i64>, VertexLabel)],
    problem: L1Problem,
) -> Result<Decomposition, SolveError> {
    let (mode, n) = (problem.mode, problem.n);
    let v = problem.columns.len();
    let mut lp_columns = Vec::with_capacity(2 * v);
    lp_columns.extend(problem.columns.iter().cloned());
    lp_columns.extend(problem.columns.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<f64>>()));
    let costs = vec![1.0; 2 * v];

    match simplex::minimize(&lp_columns, &costs, &problem.rhs)? {
        LpOutcome::Infeasible(cert) => Err(SolveError::Infeasible {
            certificate: cert.separator,
            violation: cert.violation,
        }),
        LpOutcome::Optimal(sol) => {
            let mut terms = Vec::new();
            let mut reconstruction = vec![0.0f64; n + 1];
            for j in 0..v {
                let coeff = sol.x[j] - sol.x[j + v];
                if coeff.abs() < SUPPORT_EPS {
                    continue;
                }
                for (row, col) in reconstruction.iter_mut().zip(&problem.columns[j]) {
                    *row += coeff * col;
                }
                terms.push(DecompositionTerm {
                    coefficient: coeff,
                    label: problem.labels[j].clone(),
                    coords: points[j].0.clone(),
                });
            }
            let residual = reconstruction
                .iter()
                .zip(&problem.rhs)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let decomposition =
                Decomposition { mode, n, terms, value: sol.objective, residual };
            validate(&decomposition)?;
            Ok(decomposition)
        }
    }
}

/// Solve the l1 minimisation over the projected polytope's vertices.
pub fn solve_l1(
    polytope: &ProjectedPolytope,
    target: &TargetVector,
) -> Result<Decomposition, SolveError> {
    if polytope.mode != target.mode() || polytope.n != target.n() {
        return Err(SolveError::ProblemMismatch(polytope.mode, polytope.n, target.mode(), target.n()));
    }
    let points: Vec<(Vec<i64>, VertexLabel)> = polytope
        .vertices
        .iter()
        .map(|v| (v.coords.coeffs().to_vec(), v.label.clone()))
        .collect();
    solve_l1_points(polytope.mode, polytope.n, &points, target)
}

fn validate(d: &Decomposition) -> Result<(), SolveError> {
    let sum = d.coefficient_sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(SolveError::Validation(format!("coefficients sum to {sum}, expected 1")));
    }
    if d.residual > 1e-8 {
        return Err(SolveError::Validation(format!("residual {} above 1e-8", d.residual)));
    }
    if d.value < 1.0 - 1e-9 {
        return Err(SolveError::Validation(format!("value {} below 1", d.value)));
    }
    Ok(())
}

/// Single-qubit Pauli l1 mass of the target, multiplicative over tensor
/// powers; a feasible dual point, hence a lower bound on the robustness.
pub fn st_norm(mode: Mode, n: usize) -> f64 {
    assert!(n >= 1);
    let single = match mode {
        Mode::H => (1.0 + 2.0f64.sqrt()) / 2.0,
        Mode::T => (1.0 + 3.0f64.sqrt()) / 2.0,
    };
    single.powi(n as i32)
}

/// The affine bridge between the l1 value and the total robustness.
pub fn robustness_conversion(value: f64) -> Result<f64, SolveError> {
    if value < 1.0 - 1e-9 {
        return Err(SolveError::ValueBelowOne(value));
    }
    Ok(((value - 1.0) / 2.0).max(0.0))
}

/// The two convex combinations of an optimal affine decomposition.
#[derive(Clone, Debug)]
pub struct SplitDecomposition {
    /// Convex weights over the positively contributing vertices.
    pub sigma_plus: Vec<(f64, VertexLabel)>,
    /// Convex weights over the negatively contributing vertices; absent for
    /// stabiliser targets (value = 1).
    pub sigma_minus: Option<Vec<(f64, VertexLabel)>>,
    /// Total robustness R = (value - 1) / 2.
    pub total_robustness: f64,
}

pub fn split_decomposition(d: &Decomposition) -> Result<SplitDecomposition, SolveError> {
    let r = robustness_conversion(d.value)?;
    let value = d.value;
    if value <= 1.0 + 1e-9 {
        let sigma_plus = d
            .terms
            .iter()
            .filter(|t| t.coefficient > 0.0)
            .map(|t| (t.coefficient, t.label.clone()))
            .collect();
        return Ok(SplitDecomposition { sigma_plus, sigma_minus: None, total_robustness: 0.0 });
    }
    let plus_scale = 2.0 / (value + 1.0);
    let minus_scale = -2.0 / (value - 1.0);
    let sigma_plus: Vec<(f64, VertexLabel)> = d
        .terms
        .iter()
        .filter(|t| t.coefficient > 0.0)
        .map(|t| (plus_scale * t.coefficient, t.label.clone()))
        .collect();
    let sigma_minus: Vec<(f64, VertexLabel)> = d
        .terms
        .iter()
        .filter(|t| t.coefficient < 0.0)
        .map(|t| (minus_scale * t.coefficient, t.label.clone()))
        .collect();
    for (name, combo) in [("sigma+", &sigma_plus), ("sigma-", &sigma_minus)] {
        let total: f64 = combo.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-8 {
            return Err(SolveError::Validation(format!("{name} weights sum to {total}")));
        }
        if combo.iter().any(|(w, _)| *w < -1e-12) {
            return Err(SolveError::Validation(format!("{name} has a negative weight")));
        }
    }
    Ok(SplitDecomposition { sigma_plus, sigma_minus: Some(sigma_minus), total_robustness: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::target_vector;
    use crate::graph::Catalog;
    use crate::polytope::build_polytope;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn h_single_qubit_value_and_support() {
        let cat = Catalog::builtin();
        let p = build_polytope(1, Mode::H, &cat, None).unwrap();
        let d = solve_l1(&p, &target_vector(Mode::H, 1)).unwrap();
        assert!((d.value - SQRT2).abs() < 1e-9);
        assert_eq!(d.terms.len(), 2);
        // x = ((1 + sqrt2)/2, (1 - sqrt2)/2) over the (1,1) / (1,-1) vertices
        for t in &d.terms {
            let expected = match t.coords.as_slice() {
                [1, 1] => (1.0 + SQRT2) / 2.0,
                [1, -1] => (1.0 - SQRT2) / 2.0,
                other => panic!("unexpected vertex {other:?}"),
            };
            assert!((t.coefficient - expected).abs() < 1e-9);
        }
        assert!(d.residual < 1e-12);
    }

    #[test]
    fn t_single_qubit_value() {
        let cat = Catalog::builtin();
        let p = build_polytope(1, Mode::T, &cat, None).unwrap();
        let d = solve_l1(&p, &target_vector(Mode::T, 1)).unwrap();
        assert!((d.value - 3.0f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn h_two_qubit_value() {
        let cat = Catalog::builtin();
        let p = build_polytope(2, Mode::H, &cat, None).unwrap();
        let d = solve_l1(&p, &target_vector(Mode::H, 2)).unwrap();
        assert!((d.value - 1.74754).abs() < 1e-4, "got {}", d.value);
        // l1 = 1 + 2 * negative mass
        assert!((d.value - (1.0 + 2.0 * d.negative_mass())).abs() < 1e-9);
    }

    #[test]
    fn faithfulness_on_vertices() {
        // replacing the target by any single vertex gives value 1
        let cat = Catalog::builtin();
        for mode in [Mode::H, Mode::T] {
            let p = build_polytope(2, mode, &cat, None).unwrap();
            let points: Vec<(Vec<i64>, VertexLabel)> = p
                .vertices
                .iter()
                .map(|u| (u.coords.coeffs().to_vec(), u.label.clone()))
                .collect();
            for v in &p.vertices {
                let d = solve_l1_vertex_target(mode, 2, &points, v.coords.coeffs()).unwrap();
                assert!((d.value - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn st_norm_values() {
        assert!((st_norm(Mode::H, 1) - 1.20711).abs() < 1e-5);
        assert!((st_norm(Mode::T, 1) - 1.36603).abs() < 1e-5);
        assert!((st_norm(Mode::H, 2) - 1.45711).abs() < 1e-5);
    }

    #[test]
    fn conversion() {
        assert_eq!(robustness_conversion(1.0).unwrap(), 0.0);
        assert!((robustness_conversion(SQRT2).unwrap() - 0.20710678).abs() < 1e-7);
        assert!((robustness_conversion(1.74754).unwrap() - 0.37377).abs() < 1e-5);
        assert!(robustness_conversion(0.5).is_err());
    }

    #[test]
    fn split_single_qubit() {
        let cat = Catalog::builtin();
        let p = build_polytope(1, Mode::H, &cat, None).unwrap();
        let d = solve_l1(&p, &target_vector(Mode::H, 1)).unwrap();
        let split = split_decomposition(&d).unwrap();
        assert!((split.total_robustness - (SQRT2 - 1.0) / 2.0).abs() < 1e-9);
        assert_eq!(split.sigma_plus.len(), 1);
        let minus = split.sigma_minus.unwrap();
        assert_eq!(minus.len(), 1);
        assert!((split.sigma_plus[0].0 - 1.0).abs() < 1e-9);
        assert!((minus[0].0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn h3_sigma_plus_is_plus_power() {
        // the positive side is carried by the empty-graph vertex alone
        let cat = Catalog::builtin();
        let p = build_polytope(3, Mode::H, &cat, None).unwrap();
        let d = solve_l1(&p, &target_vector(Mode::H, 3)).unwrap();
        let split = split_decomposition(&d).unwrap();
        assert_eq!(split.sigma_plus.len(), 1);
        let plus_term = d.terms.iter().find(|t| t.coefficient > 0.0).unwrap();
        assert_eq!(plus_term.coords, vec![1, 3, 3, 1]);
    }

    #[test]
    fn sandwich_small_n() {
        let cat = Catalog::builtin();
        for mode in [Mode::H, Mode::T] {
            for n in 1..=3usize {
                let p = build_polytope(n, mode, &cat, None).unwrap();
                let d = solve_l1(&p, &target_vector(mode, n)).unwrap();
                assert!(st_norm(mode, n) <= d.value + 1e-9, "mode {mode} n {n}");
            }
        }
    }

    #[test]
    fn submultiplicative_two_copies() {
        let cat = Catalog::builtin();
        for mode in [Mode::H, Mode::T] {
            let p1 = build_polytope(1, mode, &cat, None).unwrap();
            let p2 = build_polytope(2, mode, &cat, None).unwrap();
            let v1 = solve_l1(&p1, &target_vector(mode, 1)).unwrap().value;
            let v2 = solve_l1(&p2, &target_vector(mode, 2)).unwrap().value;
            assert!(v2 < v1 * v1 - 1e-6, "mode {mode}");
        }
    }
}
