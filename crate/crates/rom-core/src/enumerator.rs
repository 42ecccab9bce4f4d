//! Complete, partial and total signed quantum weight enumerators, the
//! product-state convolution, and target coordinate vectors.
//!
//! Everything here is exact integer arithmetic. The irrational basis
//! scalings 2^{-i/2} / 3^{-i/2} are applied only when LP columns are
//! assembled, so enumerator vectors double as exact dedup keys.

use crate::pauli::{PauliError, StabiliserGroup};
use crate::Mode;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumeratorError {
    #[error("group on {0} qubits exceeds the enumeration limit {1}")]
    TooManyQubits(usize, usize),
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Cost guard for the 2^n element sweep.
pub const MAX_ENUMERATOR_QUBITS: usize = 20;

/// Signed counts of group elements by Pauli letter weights: entry (i, j, k)
/// sums the element signs over elements with X-weight i, Y-weight j,
/// Z-weight k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteEnumerator {
    n: usize,
    entries: BTreeMap<(u8, u8, u8), i64>,
}

impl CompleteEnumerator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: u8, j: u8, k: u8) -> i64 {
        self.entries.get(&(i, j, k)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(u8, u8, u8), i64> {
        &self.entries
    }

    pub fn total_absolute_mass(&self) -> i64 {
        self.entries.values().map(|v| v.abs()).sum()
    }
}

/// Signed weight enumerator of every group element, computed by a Gray-code
/// walk over generator subsets.
pub fn complete_enumerator(group: &StabiliserGroup) -> Result<CompleteEnumerator, EnumeratorError> {
    let n = group.n();
    if n > MAX_ENUMERATOR_QUBITS {
        return Err(EnumeratorError::TooManyQubits(n, MAX_ENUMERATOR_QUBITS));
    }
    let mut entries: BTreeMap<(u8, u8, u8), i64> = BTreeMap::new();
    for_each_element_bits(group, |x, z, phase| {
        let wy = (x & z).count_ones();
        let wx = (x & !z).count_ones();
        let wz = (z & !x).count_ones();
        let sign = element_sign(phase, wy);
        *entries.entry((wx as u8, wy as u8, wz as u8)).or_insert(0) += sign as i64;
    });
    entries.retain(|_, v| *v != 0);
    Ok(CompleteEnumerator { n, entries })
}

/// Walk all 2^n elements of the group as raw (x, z, phase) triples in Gray
/// order. Shared by the enumerators and the polytope sweep kernel.
pub(crate) fn for_each_element_bits(group: &StabiliserGroup, mut visit: impl FnMut(u64, u64, u8)) {
    let n = group.n();
    let gens = group.generators();
    let mut x = 0u64;
    let mut z = 0u64;
    let mut phase = 0u32;
    visit(x, z, phase as u8);
    // Gray order: step s toggles generator trailing_zeros(s)
    for step in 1u64..1 << n {
        let flip = step.trailing_zeros() as usize;
        let g = &gens[flip];
        // current * generator, exact phase tracking
        phase = (phase + g.phase() as u32 + 2 * (z & g.x_bits()).count_ones()) & 3;
        x ^= g.x_bits();
        z ^= g.z_bits();
        visit(x, z, phase as u8);
    }
}

/// Hermitian sign of `i^phase X^x Z^z` with `wy` Y letters; group elements
/// always have a real sign.
pub(crate) fn element_sign(phase: u8, wy: u32) -> i32 {
    debug_assert!((phase as u32).wrapping_sub(wy) & 1 == 0, "group element with imaginary sign");
    if (phase as u32).wrapping_sub(wy) & 2 == 0 {
        1
    } else {
        -1
    }
}

/// Length-(n+1) integer coordinate vector of a projected stabiliser state:
/// the partial (H) or total (T) signed weight enumerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedEnumerator {
    n: usize,
    mode: Mode,
    coeffs: Vec<i64>,
}

impl ReducedEnumerator {
    pub fn from_coeffs(mode: Mode, coeffs: Vec<i64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { n: coeffs.len() - 1, mode, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Integer convolution; the result lives on the combined register.
    pub fn convolve(&self, rhs: &Self) -> Result<Self, EnumeratorError> {
        if self.mode != rhs.mode {
            return Err(EnumeratorError::ModeMismatch(self.mode, rhs.mode));
        }
        Ok(Self::from_coeffs(self.mode, convolve_coeffs(&self.coeffs, rhs.coeffs())))
    }
}

pub(crate) fn convolve_coeffs(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Partial signed enumerator: B_i sums signs of Z-free elements with
/// X+Y weight i.
pub fn reduce_h(a: &CompleteEnumerator) -> ReducedEnumerator {
    let mut coeffs = vec![0i64; a.n() + 1];
    for (&(i, j, k), &v) in a.entries() {
        if k == 0 {
            coeffs[(i + j) as usize] += v;
        }
    }
    ReducedEnumerator::from_coeffs(Mode::H, coeffs)
}

/// Total signed enumerator: C_i sums signs of all elements with total
/// weight i.
pub fn reduce_t(a: &CompleteEnumerator) -> ReducedEnumerator {
    let mut coeffs = vec![0i64; a.n() + 1];
    for (&(i, j, k), &v) in a.entries() {
        coeffs[(i + j + k) as usize] += v;
    }
    ReducedEnumerator::from_coeffs(Mode::T, coeffs)
}

pub fn reduce(mode: Mode, a: &CompleteEnumerator) -> ReducedEnumerator {
    match mode {
        Mode::H => reduce_h(a),
        Mode::T => reduce_t(a),
    }
}

/// Coordinates of the magic-state tensor power in the reduced basis:
/// binomial(n, i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetVector {
    n: usize,
    mode: Mode,
    coeffs: Vec<i64>,
}

impl TargetVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

pub fn target_vector(mode: Mode, n: usize) -> TargetVector {
    assert!(n >= 1, "target needs at least one qubit");
    let mut coeffs = vec![0i64; n + 1];
    coeffs[0] = 1;
    for i in 1..=n {
        // C(n, i) with exact integer arithmetic
        coeffs[i] = coeffs[i - 1] * (n as i64 - i as i64 + 1) / i as i64;
    }
    TargetVector { n, mode, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{graph_state_group, PauliElement};
    use crate::graph::Graph;

    fn group(gens: &[&str]) -> StabiliserGroup {
        StabiliserGroup::new(gens.iter().map(|s| s.parse::<PauliElement>().unwrap()).collect()).unwrap()
    }

    #[test]
    fn complete_enumerator_examples() {
        let plus = complete_enumerator(&group(&["X"])).unwrap();
        assert_eq!(plus.entry(0, 0, 0), 1);
        assert_eq!(plus.entry(1, 0, 0), 1);
        assert_eq!(plus.total_absolute_mass(), 2);

        let bell = complete_enumerator(&group(&["XX", "ZZ"])).unwrap();
        assert_eq!(bell.entry(0, 0, 0), 1);
        assert_eq!(bell.entry(2, 0, 0), 1);
        assert_eq!(bell.entry(0, 0, 2), 1);
        assert_eq!(bell.entry(0, 2, 0), -1);

        let zero = complete_enumerator(&group(&["Z"])).unwrap();
        assert_eq!(zero.entry(0, 0, 0), 1);
        assert_eq!(zero.entry(0, 0, 1), 1);
    }

    #[test]
    fn identity_cell_is_one_and_mass_bounded() {
        for n in 1..=4usize {
            for seed in 0..30u64 {
                let g = StabiliserGroup::random(n, seed);
                let a = complete_enumerator(&g).unwrap();
                assert_eq!(a.entry(0, 0, 0), 1);
                assert!(a.total_absolute_mass() <= 1 << n);
            }
        }
    }

    #[test]
    fn reduce_h_examples() {
        let b = |gens: &[&str]| reduce_h(&complete_enumerator(&group(gens)).unwrap());
        assert_eq!(b(&["X"]).coeffs(), &[1, 1]);
        assert_eq!(b(&["-X"]).coeffs(), &[1, -1]);
        assert_eq!(b(&["Z"]).coeffs(), &[1, 0]);
        assert_eq!(b(&["XX", "-ZZ"]).coeffs(), &[1, 0, 2]);
        assert_eq!(b(&["XZ", "ZX"]).coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn reduce_t_examples() {
        let c = |gens: &[&str]| reduce_t(&complete_enumerator(&group(gens)).unwrap());
        assert_eq!(c(&["X"]).coeffs(), &[1, 1]);
        assert_eq!(c(&["Z"]).coeffs(), &[1, 1]);
        assert_eq!(c(&["-X"]).coeffs(), &[1, -1]);
        assert_eq!(c(&["XZ", "ZX"]).coeffs(), &[1, 0, 3]);
    }

    #[test]
    fn convolution_examples() {
        let u = ReducedEnumerator::from_coeffs(Mode::H, vec![1, 1]);
        let v = ReducedEnumerator::from_coeffs(Mode::H, vec![1, -1]);
        assert_eq!(u.convolve(&u).unwrap().coeffs(), &[1, 2, 1]);
        assert_eq!(u.convolve(&v).unwrap().coeffs(), &[1, 0, -1]);

        let w = ReducedEnumerator::from_coeffs(Mode::H, vec![1, 0, 2]);
        assert_eq!(w.convolve(&u).unwrap().coeffs(), &[1, 1, 2, 2]);

        let t = ReducedEnumerator::from_coeffs(Mode::T, vec![1, 1]);
        assert!(u.convolve(&t).is_err());
    }

    #[test]
    fn convolution_matches_product_group() {
        // cross-check (1,0,2) * (1,1) against the 3-qubit product group
        let a = group(&["XX", "-ZZ"]);
        let b = group(&["X"]);
        let prod = a.product(&b).unwrap();
        let direct = reduce_h(&complete_enumerator(&prod).unwrap());
        let conv = reduce_h(&complete_enumerator(&a).unwrap())
            .convolve(&reduce_h(&complete_enumerator(&b).unwrap()))
            .unwrap();
        assert_eq!(direct, conv);
    }

    #[test]
    fn convolution_equivalence_random_groups() {
        // product projections factor through the convolution in both modes
        for seed in 0..60u64 {
            let n1 = 1 + (seed % 4) as usize;
            let n2 = 1 + ((seed / 4) % 4) as usize;
            if n1 + n2 > 8 {
                continue;
            }
            let a = StabiliserGroup::random(n1, seed);
            let b = StabiliserGroup::random(n2, seed.wrapping_add(7777));
            let prod = a.product(&b).unwrap();
            let ca = complete_enumerator(&a).unwrap();
            let cb = complete_enumerator(&b).unwrap();
            let cp = complete_enumerator(&prod).unwrap();
            for mode in [Mode::H, Mode::T] {
                let direct = reduce(mode, &cp);
                let conv = reduce(mode, &ca).convolve(&reduce(mode, &cb)).unwrap();
                assert_eq!(direct, conv, "seed {seed} mode {mode}");
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        // relabelling qubits permutes generators and bit positions only
        let g = graph_state_group(&Graph::new(3, &[(0, 1), (1, 2)]).unwrap());
        let permuted = graph_state_group(&Graph::new(3, &[(2, 1), (1, 0)]).unwrap());
        assert_eq!(complete_enumerator(&g).unwrap(), complete_enumerator(&permuted).unwrap());
    }

    #[test]
    fn b1_vanishes_for_entangled_two_qubit_groups() {
        for seed in 0..200u64 {
            let g = StabiliserGroup::random(2, seed);
            let has_weight1_zfree = g
                .elements()
                .unwrap()
                .iter()
                .any(|e| e.weight() == 1 && e.weight_z() == 0);
            let b = reduce_h(&complete_enumerator(&g).unwrap());
            if !has_weight1_zfree {
                assert_eq!(b.coeffs()[1], 0, "seed {seed}");
            }
        }
    }

    #[test]
    fn target_vectors() {
        assert_eq!(target_vector(Mode::H, 1).coeffs(), &[1, 1]);
        assert_eq!(target_vector(Mode::H, 2).coeffs(), &[1, 2, 1]);
        assert_eq!(target_vector(Mode::T, 3).coeffs(), &[1, 3, 3, 1]);
        let t = target_vector(Mode::T, 9);
        let c = t.coeffs();
        for i in 0..=9 {
            assert_eq!(c[i], c[9 - i]);
        }
        assert_eq!(c[0], 1);
    }
}
