//! Polynomial-size upper-bound relaxations: the pair-state polytopes and the
//! k-partite hierarchy.
//!
//! The pair-state relaxation restricts the vertex set to products of the two
//! extremal 2-qubit pair projections and all-equal single-qubit states; the
//! level-k hierarchy restricts to partition products of fully entangled
//! vertices with parts of size at most k. Both yield rigorous upper bounds;
//! infeasibility (the target leaving the affine span) is a legitimate
//! reported outcome, not an error.

use crate::enumerator::{complete_enumerator, convolve_coeffs, reduce, target_vector, ReducedEnumerator};
use crate::pauli::{PauliElement, StabiliserGroup};
use crate::polytope::{PartRef, PolytopeError, ProjectedPolytope, VertexLabel};
use crate::robustness::{solve_l1_points, Decomposition, SolveError};
use crate::Mode;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HierarchyError {
    #[error("partition bounds need 1 <= k <= n, got n = {n}, k = {k}")]
    BadBounds { n: usize, k: usize },
    #[error("missing vertex set for part size {0}")]
    MissingVertexSet(usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Descending partition of n with parts bounded by k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join("+"))
    }
}

/// All partitions of `n` with parts at most `k`, in lexicographically
/// descending order.
pub fn partitions_bounded(n: usize, k: usize) -> Result<Vec<Partition>, HierarchyError> {
    if k == 0 || k > n {
        return Err(HierarchyError::BadBounds { n, k });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, k, &mut current, &mut out);
    Ok(out)
}

/// The two extremal 2-qubit pair projections, `[plus, minus]`: the +/-2
/// points in H-mode, the gamma+/- projections in T-mode. Computed from their
/// stabiliser groups.
pub fn special_pair_vertices(mode: Mode) -> Vec<ReducedEnumerator> {
    let gens = |words: [&str; 2]| {
        StabiliserGroup::new(words.iter().map(|w| w.parse::<PauliElement>().unwrap()).collect())
            .expect("valid pair group")
    };
    let groups = match mode {
        Mode::H => [gens(["XX", "-ZZ"]), gens(["-XX", "-ZZ"])],
        Mode::T => [gens(["XZ", "ZX"]), gens(["-XZ", "-ZY"])],
    };
    groups
        .iter()
        .map(|g| reduce(mode, &complete_enumerator(g).expect("two qubits")))
        .collect()
}

/// Vertex candidates of the pair-state polytope: tuples (i, j, k) with
/// i + j + k = floor(n/2) give i plus-pairs, j minus-pairs and
/// 2k + n - 2*floor(n/2) all-plus or all-minus singles. Deduplicated on
/// exact coordinates; the count is bounded by (m+1)(m+2).
pub fn approx_vertices(mode: Mode, n: usize) -> Vec<(Vec<i64>, VertexLabel)> {
    assert!(n >= 1);
    let pairs = special_pair_vertices(mode);
    let m = n / 2;
    let mut dedup: HashMap<Vec<i64>, VertexLabel> = HashMap::new();
    for i in 0..=m {
        for j in 0..=m - i {
            let k = m - i - j;
            let singles = 2 * k + n - 2 * m;
            let sign_choices: &[bool] = if singles == 0 { &[false] } else { &[false, true] };
            for &singles_minus in sign_choices {
                let mut coeffs = vec![1i64];
                for _ in 0..i {
                    coeffs = convolve_coeffs(&coeffs, pairs[0].coeffs());
                }
                for _ in 0..j {
                    coeffs = convolve_coeffs(&coeffs, pairs[1].coeffs());
                }
                let single = if singles_minus { [1i64, -1] } else { [1i64, 1] };
                for _ in 0..singles {
                    coeffs = convolve_coeffs(&coeffs, &single);
                }
                dedup.entry(coeffs).or_insert(VertexLabel::PairProduct {
                    plus_pairs: i,
                    minus_pairs: j,
                    singles,
                    singles_minus,
                });
            }
        }
    }
    let mut out: Vec<(Vec<i64>, VertexLabel)> = dedup.into_iter().collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A relaxation solve either produces a decomposition or reports that the
/// target left the affine span of the restricted vertex set.
#[derive(Clone, Debug)]
pub enum RelaxationOutcome {
    Feasible(Decomposition),
    Infeasible { certificate: Vec<f64>, violation: f64 },
}

impl RelaxationOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            RelaxationOutcome::Feasible(d) => Some(d.value),
            RelaxationOutcome::Infeasible { .. } => None,
        }
    }
}

/// Upper bound from the pair-state polytope.
pub fn approx_robustness(mode: Mode, n: usize) -> Result<RelaxationOutcome, HierarchyError> {
    let points = approx_vertices(mode, n);
    relaxation_solve(mode, n, &points)
}

fn relaxation_solve(
    mode: Mode,
    n: usize,
    points: &[(Vec<i64>, VertexLabel)],
) -> Result<RelaxationOutcome, HierarchyError> {
    match solve_l1_points(mode, n, points, &target_vector(mode, n)) {
        Ok(d) => Ok(RelaxationOutcome::Feasible(d)),
        Err(SolveError::Infeasible { certificate, violation }) => {
            Ok(RelaxationOutcome::Infeasible { certificate, violation })
        }
        Err(e) => Err(e.into()),
    }
}

/// Level-k hierarchy: partition products of fully entangled extremal
/// vertices with parts at most k. `vertex_sets[i - 1]` must be the built
/// polytope for i qubits, i = 1..=k; only `Connected`-labeled vertices are
/// drawn from each.
pub fn level_robustness(
    mode: Mode,
    n: usize,
    k: usize,
    vertex_sets: &[ProjectedPolytope],
) -> Result<RelaxationOutcome, HierarchyError> {
    if k == 0 || k > n {
        return Err(HierarchyError::BadBounds { n, k });
    }
    for i in 1..=k {
        if vertex_sets.get(i - 1).map(|p| (p.n, p.mode)) != Some((i, mode)) {
            return Err(HierarchyError::MissingVertexSet(i));
        }
    }
    let connected: Vec<Vec<usize>> =
        vertex_sets[..k].iter().map(|p| p.connected_vertex_indices()).collect();

    let mut dedup: HashMap<Vec<i64>, VertexLabel> = HashMap::new();
    for partition in partitions_bounded(n, k)? {
        let parts = partition.parts().to_vec();
        let mut selection = Vec::with_capacity(parts.len());
        multiset_products(&parts, &connected, vertex_sets, &mut selection, &mut dedup);
    }
    let points: Vec<(Vec<i64>, VertexLabel)> = {
        let mut v: Vec<_> = dedup.into_iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        v
    };
    relaxation_solve(mode, n, &points)
}

fn multiset_products(
    parts: &[usize],
    connected: &[Vec<usize>],
    vertex_sets: &[ProjectedPolytope],
    selection: &mut Vec<usize>,
    dedup: &mut HashMap<Vec<i64>, VertexLabel>,
) {
    let slot = selection.len();
    if slot == parts.len() {
        let mut coeffs = vec![1i64];
        let mut refs = Vec::with_capacity(parts.len());
        for (s, &part) in parts.iter().enumerate() {
            let idx = connected[part - 1][selection[s]];
            coeffs = convolve_coeffs(&coeffs, vertex_sets[part - 1].vertices[idx].coords.coeffs());
            refs.push(PartRef { n: part, index: idx });
        }
        dedup.entry(coeffs).or_insert(VertexLabel::Product { parts: refs });
        return;
    }
    let start = if slot > 0 && parts[slot] == parts[slot - 1] { selection[slot - 1] } else { 0 };
    for choice in start..connected[parts[slot] - 1].len() {
        selection.push(choice);
        multiset_products(parts, connected, vertex_sets, selection, dedup);
        selection.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Catalog;
    use crate::polytope::build_polytope;
    use crate::robustness::solve_l1;

    #[test]
    fn partition_examples() {
        let p42: Vec<String> = partitions_bounded(4, 2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(p42, vec!["2+2", "2+1+1", "1+1+1+1"]);
        let p33: Vec<String> = partitions_bounded(3, 3).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(p33, vec!["3", "2+1", "1+1+1"]);
        let p51: Vec<String> = partitions_bounded(5, 1).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(p51, vec!["1+1+1+1+1"]);
        assert!(partitions_bounded(3, 0).is_err());
        assert!(partitions_bounded(3, 4).is_err());
        // p_2(n) = floor(n/2) + 1
        for n in 2..=10 {
            assert_eq!(partitions_bounded(n, 2).unwrap().len(), n / 2 + 1);
        }
    }

    #[test]
    fn special_pairs() {
        let h = special_pair_vertices(Mode::H);
        assert_eq!(h[0].coeffs(), &[1, 0, 2]);
        assert_eq!(h[1].coeffs(), &[1, 0, -2]);
        let t = special_pair_vertices(Mode::T);
        assert_eq!(t[0].coeffs(), &[1, 0, 3]);
        assert_eq!(t[1].coeffs(), &[1, 0, -3]);
    }

    #[test]
    fn approx_vertex_sets_small() {
        let h2: Vec<Vec<i64>> = approx_vertices(Mode::H, 2).into_iter().map(|(c, _)| c).collect();
        assert_eq!(h2, vec![vec![1, -2, 1], vec![1, 0, -2], vec![1, 0, 2], vec![1, 2, 1]]);
        let t2: Vec<Vec<i64>> = approx_vertices(Mode::T, 2).into_iter().map(|(c, _)| c).collect();
        assert_eq!(t2, vec![vec![1, -2, 1], vec![1, 0, -3], vec![1, 0, 3], vec![1, 2, 1]]);
        for mode in [Mode::H, Mode::T] {
            for n in 1..=12usize {
                let m = n / 2;
                assert!(approx_vertices(mode, n).len() <= (m + 1) * (m + 2), "mode {mode} n {n}");
            }
        }
    }

    #[test]
    fn approx_equals_exact_small_n() {
        let cat = Catalog::builtin();
        for (mode, limit) in [(Mode::H, 3usize), (Mode::T, 3usize)] {
            for n in 1..=limit {
                let p = build_polytope(n, mode, &cat, None).unwrap();
                let exact = solve_l1(&p, &target_vector(mode, n)).unwrap().value;
                let approx = approx_robustness(mode, n).unwrap().value().expect("feasible");
                assert!((approx - exact).abs() < 1e-9, "mode {mode} n {n}");
            }
        }
    }

    #[test]
    fn level_equals_exact_at_k_equals_n() {
        let cat = Catalog::builtin();
        for mode in [Mode::H, Mode::T] {
            let sets: Vec<ProjectedPolytope> =
                (1..=3).map(|m| build_polytope(m, mode, &cat, None).unwrap()).collect();
            for n in 1..=3usize {
                let exact = solve_l1(&sets[n - 1], &target_vector(mode, n)).unwrap().value;
                let level = level_robustness(mode, n, n, &sets[..n]).unwrap().value().expect("feasible");
                assert!((level - exact).abs() < 1e-9, "mode {mode} n {n}");
            }
        }
    }

    #[test]
    fn hierarchy_monotone_small() {
        let cat = Catalog::builtin();
        for mode in [Mode::H, Mode::T] {
            let sets: Vec<ProjectedPolytope> =
                (1..=4).map(|m| build_polytope(m, mode, &cat, None).unwrap()).collect();
            let mut previous = f64::INFINITY;
            for k in 1..=4usize {
                let value = level_robustness(mode, 4, k, &sets[..k]).unwrap().value().expect("feasible");
                assert!(value <= previous + 1e-9, "mode {mode} k {k}");
                previous = value;
            }
        }
    }

    #[test]
    fn pair_polytope_is_contained_in_level_two() {
        // every pair-polytope vertex is a k = 2 partition product
        let cat = Catalog::builtin();
        for mode in [Mode::H, Mode::T] {
            let sets: Vec<ProjectedPolytope> =
                (1..=2).map(|m| build_polytope(m, mode, &cat, None).unwrap()).collect();
            for n in [2usize, 3, 4, 5] {
                let connected: Vec<Vec<usize>> = sets.iter().map(|p| p.connected_vertex_indices()).collect();
                let mut dedup: HashMap<Vec<i64>, VertexLabel> = HashMap::new();
                for partition in partitions_bounded(n, 2).unwrap() {
                    let parts = partition.parts().to_vec();
                    let mut sel = Vec::new();
                    multiset_products(&parts, &connected, &sets, &mut sel, &mut dedup);
                }
                for (coords, _) in approx_vertices(mode, n) {
                    assert!(dedup.contains_key(&coords), "mode {mode} n {n} missing {coords:?}");
                }
            }
        }
    }
}
