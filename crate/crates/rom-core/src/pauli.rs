//! Exact binary-symplectic arithmetic for signed Pauli operators, stabiliser
//! groups, graph-state generators and local Clifford coset actions.
//!
//! A [`PauliElement`] stores an n-qubit operator as `i^phase * prod_j
//! X_j^{x_j} Z_j^{z_j}` with per-qubit normal ordering (X before Z) and the
//! phase tracked exactly mod 4. Under this convention the single-qubit word
//! with both bits set is `XZ = -iY`, so a Hermitian +/- Pauli satisfies
//! `phase = wt_Y (mod 2)`; [`PauliElement::sign`] exposes the Hermitian sign.

use crate::graph::Graph;
use crate::Mode;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("qubit count {0} out of range (expected 1..={1})")]
    UnsupportedQubitCount(usize, usize),
    #[error("stabiliser group needs exactly n = {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("generators {0} and {1} anticommute")]
    NonCommuting(usize, usize),
    #[error("generators are not GF(2)-independent (rank {rank} < {n})")]
    DependentGenerators { rank: usize, n: usize },
    #[error("generator {0} has imaginary sign i^{1}")]
    ImaginarySign(usize, u8),
    #[error("coset op {op:?} is not in the {mode} alphabet")]
    ModeMismatch { op: CosetOp, mode: Mode },
    #[error("cannot parse `{0}` as a Pauli word")]
    Parse(String),
}

/// Qubit counts supported by the bitmask representation.
pub const MAX_QUBITS: usize = 32;
/// Largest n for which [`StabiliserGroup::elements`] will materialise all 2^n
/// elements.
pub const MAX_MATERIALISED_QUBITS: usize = 16;

/// A signed n-qubit Pauli operator `i^phase * X^x Z^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliElement {
    n: usize,
    x_bits: u64,
    z_bits: u64,
    phase: u8,
}

impl PauliElement {
    pub fn new(n: usize, x_bits: u64, z_bits: u64, phase: u8) -> Result<Self, PauliError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(PauliError::UnsupportedQubitCount(n, MAX_QUBITS));
        }
        let mask = Self::bit_mask(n);
        debug_assert!(x_bits & !mask == 0 && z_bits & !mask == 0, "bits outside register");
        Ok(Self { n, x_bits: x_bits & mask, z_bits: z_bits & mask, phase: phase & 3 })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, x_bits: 0, z_bits: 0, phase: 0 }
    }

    fn bit_mask(n: usize) -> u64 {
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x_bits
    }

    pub fn z_bits(&self) -> u64 {
        self.z_bits
    }

    /// Phase exponent of the `i^phase * X^x Z^z` normal form, mod 4.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn weight_x(&self) -> u32 {
        (self.x_bits & !self.z_bits).count_ones()
    }

    pub fn weight_y(&self) -> u32 {
        (self.x_bits & self.z_bits).count_ones()
    }

    pub fn weight_z(&self) -> u32 {
        (self.z_bits & !self.x_bits).count_ones()
    }

    pub fn weight(&self) -> u32 {
        (self.x_bits | self.z_bits).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x_bits == 0 && self.z_bits == 0 && self.phase == 0
    }

    /// Hermitian sign relative to the conventional Pauli word (Y letters
    /// literal): `Some(+1)` or `Some(-1)` when the operator is `+/- P`,
    /// `None` when it is `+/- i P`.
    pub fn sign(&self) -> Option<i8> {
        match (self.phase as u32).wrapping_sub(self.weight_y()) & 3 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn negated(&self) -> Self {
        Self { phase: (self.phase + 2) & 3, ..*self }
    }

    /// Exact operator product. X/Z parts XOR; the phase picks up
    /// `2 * |z_a AND x_b|` from commuting Z factors of `self` past X factors
    /// of `rhs`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, PauliError> {
        if self.n != rhs.n {
            return Err(PauliError::LengthMismatch(self.n, rhs.n));
        }
        Ok(self.multiply_unchecked(rhs))
    }

    pub(crate) fn multiply_unchecked(&self, rhs: &Self) -> Self {
        let phase = (self.phase as u32 + rhs.phase as u32 + 2 * (self.z_bits & rhs.x_bits).count_ones()) & 3;
        Self {
            n: self.n,
            x_bits: self.x_bits ^ rhs.x_bits,
            z_bits: self.z_bits ^ rhs.z_bits,
            phase: phase as u8,
        }
    }

    /// 0 iff the operators commute.
    pub fn symplectic_product(&self, rhs: &Self) -> Result<u8, PauliError> {
        if self.n != rhs.n {
            return Err(PauliError::LengthMismatch(self.n, rhs.n));
        }
        Ok((((self.x_bits & rhs.z_bits).count_ones() + (self.z_bits & rhs.x_bits).count_ones()) & 1) as u8)
    }

    pub fn commutes_with(&self, rhs: &Self) -> Result<bool, PauliError> {
        Ok(self.symplectic_product(rhs)? == 0)
    }

    /// Conjugate by the Hadamard on `qubit`: swaps the X and Z bits, sign
    /// flips when the qubit carried Y.
    pub(crate) fn conjugate_h(&mut self, qubit: usize) {
        let bit = 1u64 << qubit;
        let x = self.x_bits & bit;
        let z = self.z_bits & bit;
        if x != 0 && z != 0 {
            self.phase = (self.phase + 2) & 3;
        }
        self.x_bits = (self.x_bits & !bit) | if z != 0 { bit } else { 0 };
        self.z_bits = (self.z_bits & !bit) | if x != 0 { bit } else { 0 };
    }

    /// Conjugate by the phase gate S on `qubit`: X -> Y, Z fixed.
    pub(crate) fn conjugate_s(&mut self, qubit: usize) {
        let bit = 1u64 << qubit;
        if self.x_bits & bit != 0 {
            self.phase = (self.phase + 1) & 3;
            self.z_bits ^= bit;
        }
    }

    /// Conjugate by Z on `qubit`: flips the sign iff the qubit carries X or Y.
    pub(crate) fn conjugate_z(&mut self, qubit: usize) {
        if self.x_bits & (1u64 << qubit) != 0 {
            self.phase = (self.phase + 2) & 3;
        }
    }
}

impl std::fmt::Display for PauliElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.phase as u32).wrapping_sub(self.weight_y()) & 3 {
            0 => write!(f, "+")?,
            1 => write!(f, "+i")?,
            2 => write!(f, "-")?,
            _ => write!(f, "-i")?,
        }
        for q in 0..self.n {
            let x = self.x_bits >> q & 1;
            let z = self.z_bits >> q & 1;
            f.write_str(match (x, z) {
                (0, 0) => "I",
                (1, 0) => "X",
                (0, 1) => "Z",
                _ => "Y",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliElement {
    type Err = PauliError;

    /// Parses words like `XZ`, `-YY`, `+IXI`. Y letters enter as `i XZ`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negate, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if body.is_empty() || body.len() > MAX_QUBITS {
            return Err(PauliError::Parse(s.to_string()));
        }
        let mut x_bits = 0u64;
        let mut z_bits = 0u64;
        let mut phase = 0u8;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' | 'i' => {}
                'X' | 'x' => x_bits |= 1 << q,
                'Z' | 'z' => z_bits |= 1 << q,
                'Y' | 'y' => {
                    x_bits |= 1 << q;
                    z_bits |= 1 << q;
                    phase = (phase + 1) & 3;
                }
                _ => return Err(PauliError::Parse(s.to_string())),
            }
        }
        if negate {
            phase = (phase + 2) & 3;
        }
        PauliElement::new(body.len(), x_bits, z_bits, phase)
    }
}

/// n independent, commuting, real-signed Pauli generators on n qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabiliserGroup {
    n: usize,
    generators: Vec<PauliElement>,
}

impl StabiliserGroup {
    pub fn new(generators: Vec<PauliElement>) -> Result<Self, PauliError> {
        let n = generators.first().map(|g| g.n()).unwrap_or(0);
        if n == 0 || generators.len() != n {
            return Err(PauliError::GeneratorCount { expected: n.max(1), got: generators.len() });
        }
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(PauliError::LengthMismatch(n, g.n()));
            }
            if g.sign().is_none() {
                return Err(PauliError::ImaginarySign(i, g.phase()));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if generators[i].symplectic_product(&generators[j])? != 0 {
                    return Err(PauliError::NonCommuting(i, j));
                }
            }
        }
        let rank = gf2_rank(generators.iter().map(|g| (g.x_bits(), g.z_bits())));
        if rank != n {
            return Err(PauliError::DependentGenerators { rank, n });
        }
        Ok(Self { n, generators })
    }

    /// Construct without invariant checks; callers guarantee validity.
    pub(crate) fn new_unchecked(generators: Vec<PauliElement>) -> Self {
        let n = generators.len();
        debug_assert!(StabiliserGroup::new(generators.clone()).is_ok());
        Self { n, generators }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliElement] {
        &self.generators
    }

    /// All 2^n group elements with exact signs, ordered by ascending
    /// generator-subset bitmask.
    pub fn elements(&self) -> Result<Vec<PauliElement>, PauliError> {
        if self.n > MAX_MATERIALISED_QUBITS {
            return Err(PauliError::UnsupportedQubitCount(self.n, MAX_MATERIALISED_QUBITS));
        }
        let mut out = Vec::with_capacity(1 << self.n);
        out.push(PauliElement::identity(self.n));
        for mask in 1usize..1 << self.n {
            let low = mask.trailing_zeros() as usize;
            let rest = out[mask & (mask - 1)];
            out.push(rest.multiply_unchecked(&self.generators[low]));
        }
        Ok(out)
    }

    /// Row-reduced echelon form over GF(2) of the (x|z) generator matrix with
    /// exact phase propagation. Two groups are equal as signed element sets
    /// iff their canonical generator lists are identical.
    pub fn canonical(&self) -> Self {
        let mut rows = self.generators.clone();
        let n = self.n;
        let mut r = 0;
        for col in 0..2 * n {
            let bit_of = |g: &PauliElement| -> bool {
                if col < n {
                    g.x_bits() >> col & 1 == 1
                } else {
                    g.z_bits() >> (col - n) & 1 == 1
                }
            };
            let Some(pivot) = (r..n).find(|&i| bit_of(&rows[i])) else {
                continue;
            };
            rows.swap(r, pivot);
            for i in 0..n {
                if i != r && bit_of(&rows[i]) {
                    rows[i] = rows[i].multiply_unchecked(&rows[r]);
                }
            }
            r += 1;
            if r == n {
                break;
            }
        }
        Self { n, generators: rows }
    }

    /// Deterministic pseudo-random valid stabiliser group: a random graph
    /// state conjugated by random per-qubit symplectics and sign flips.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = crate::rng::SplitMix64::new(seed ^ (n as u64).wrapping_mul(0xa076_1d64_78bd_642f));
        let edge_count = n * (n - 1) / 2;
        let graph = loop {
            let mask = if edge_count == 0 { 0 } else { rng.next_u64() & ((1u64 << edge_count) - 1) };
            let g = Graph::from_upper_tri(n, mask).expect("mask within range");
            break g;
        };
        let mut gens = graph_state_group(&graph).generators.clone();
        for q in 0..n {
            // 6 cosets of Sp(2,Z2) as words in H and S
            match rng.below(6) {
                0 => {}
                1 => gens.iter_mut().for_each(|g| g.conjugate_h(q)),
                2 => gens.iter_mut().for_each(|g| g.conjugate_s(q)),
                3 => gens.iter_mut().for_each(|g| {
                    g.conjugate_s(q);
                    g.conjugate_h(q);
                }),
                4 => gens.iter_mut().for_each(|g| {
                    g.conjugate_h(q);
                    g.conjugate_s(q);
                }),
                _ => gens.iter_mut().for_each(|g| {
                    g.conjugate_s(q);
                    g.conjugate_h(q);
                    g.conjugate_s(q);
                }),
            }
            if rng.next_u64() & 1 == 1 {
                gens.iter_mut().for_each(|g| g.conjugate_z(q));
            }
        }
        Self::new_unchecked(gens)
    }

    /// Tensor product of two groups on disjoint registers.
    pub fn product(&self, rhs: &Self) -> Result<Self, PauliError> {
        let n = self.n + rhs.n;
        if n > MAX_QUBITS {
            return Err(PauliError::UnsupportedQubitCount(n, MAX_QUBITS));
        }
        let mut gens = Vec::with_capacity(n);
        for g in &self.generators {
            gens.push(PauliElement::new(n, g.x_bits(), g.z_bits(), g.phase())?);
        }
        for g in &rhs.generators {
            gens.push(PauliElement::new(n, g.x_bits() << self.n, g.z_bits() << self.n, g.phase())?);
        }
        Ok(Self { n, generators: gens })
    }
}

fn gf2_rank(rows: impl Iterator<Item = (u64, u64)>) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for (x, z) in rows {
        let mut v = (x as u128) << 64 | z as u128;
        for b in &basis {
            let high = 127 - b.leading_zeros();
            if v >> high & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

/// Stabiliser group of the graph state: generator j is `X_j prod_k
/// Z_k^{theta_jk}` with phase 0.
pub fn graph_state_group(graph: &Graph) -> StabiliserGroup {
    let n = graph.n();
    let generators = (0..n)
        .map(|j| {
            PauliElement::new(n, 1u64 << j, graph.neighbours(j) as u64, 0).expect("graph register fits")
        })
        .collect();
    StabiliserGroup::new_unchecked(generators)
}

/// Per-qubit symplectic coset element applied on top of a graph state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CosetOp {
    I,
    /// Hadamard.
    H,
    /// Hadamard after phase gate (conjugation applies S first, then H).
    HS,
    /// Phase gate.
    S,
}

impl CosetOp {
    /// Coset representatives of Sp(2,Z2) modulo the per-qubit symmetry of the
    /// mode's magic state.
    pub fn alphabet(mode: Mode) -> &'static [CosetOp] {
        match mode {
            Mode::H => &[CosetOp::I, CosetOp::H, CosetOp::HS],
            Mode::T => &[CosetOp::I, CosetOp::S],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CosetOp::I => "I",
            CosetOp::H => "H",
            CosetOp::HS => "HS",
            CosetOp::S => "S",
        }
    }

    fn apply(self, g: &mut PauliElement, qubit: usize) {
        match self {
            CosetOp::I => {}
            CosetOp::H => g.conjugate_h(qubit),
            CosetOp::HS => {
                g.conjugate_s(qubit);
                g.conjugate_h(qubit);
            }
            CosetOp::S => g.conjugate_s(qubit),
        }
    }
}

/// Per-qubit coset assignment plus sign bits. Sign bits act as Z
/// pre-applications: generator signs flip by the X support of the original
/// generators before the coset conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalOpAssignment {
    mode: Mode,
    ops: Vec<CosetOp>,
    signs: u64,
}

impl LocalOpAssignment {
    pub fn new(mode: Mode, ops: Vec<CosetOp>, signs: u64) -> Result<Self, PauliError> {
        for &op in &ops {
            if !CosetOp::alphabet(mode).contains(&op) {
                return Err(PauliError::ModeMismatch { op, mode });
            }
        }
        let n = ops.len();
        Ok(Self { mode, ops, signs: signs & PauliElement::bit_mask(n.max(1)) })
    }

    /// Decode an assignment from a mixed-radix coset index and a sign
    /// bitmask; `coset_index` digit q (base = alphabet size) selects the op
    /// on qubit q.
    pub fn from_indices(mode: Mode, n: usize, coset_index: u64, signs: u64) -> Self {
        let alphabet = CosetOp::alphabet(mode);
        let base = alphabet.len() as u64;
        let mut rem = coset_index;
        let ops = (0..n)
            .map(|_| {
                let d = (rem % base) as usize;
                rem /= base;
                alphabet[d]
            })
            .collect();
        Self { mode, ops, signs: signs & PauliElement::bit_mask(n) }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[CosetOp] {
        &self.ops
    }

    pub fn signs(&self) -> u64 {
        self.signs
    }
}

/// Conjugate every generator by the per-qubit assignment: Z pre-action sign
/// flips, then the coset ops qubit by qubit.
pub fn apply_local_assignment(
    group: &StabiliserGroup,
    assignment: &LocalOpAssignment,
) -> Result<StabiliserGroup, PauliError> {
    if group.n() != assignment.n() {
        return Err(PauliError::LengthMismatch(group.n(), assignment.n()));
    }
    let mut gens = group.generators().to_vec();
    for g in &mut gens {
        if (g.x_bits() & assignment.signs).count_ones() & 1 == 1 {
            *g = g.negated();
        }
    }
    for (q, &op) in assignment.ops.iter().enumerate() {
        for g in &mut gens {
            op.apply(g, q);
        }
    }
    Ok(StabiliserGroup::new_unchecked(gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str) -> PauliElement {
        s.parse().unwrap()
    }

    fn group(gens: &[&str]) -> StabiliserGroup {
        StabiliserGroup::new(gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn element_set(g: &StabiliserGroup) -> HashSet<(u64, u64, u8)> {
        g.elements().unwrap().iter().map(|e| (e.x_bits(), e.z_bits(), e.phase())).collect()
    }

    #[test]
    fn multiply_single_qubit_convention() {
        let x = p("X");
        let z = p("Z");
        let xz = x.multiply(&z).unwrap();
        assert_eq!((xz.x_bits(), xz.z_bits(), xz.phase()), (1, 1, 0)); // XZ = -iY
        let zx = z.multiply(&x).unwrap();
        assert_eq!((zx.x_bits(), zx.z_bits(), zx.phase()), (1, 1, 2)); // -XZ = +iY
        let xx = x.multiply(&x).unwrap();
        assert!(xx.is_identity());
    }

    #[test]
    fn multiply_rejects_length_mismatch() {
        assert!(p("X").multiply(&p("XX")).is_err());
        assert!(p("X").symplectic_product(&p("XX")).is_err());
    }

    #[test]
    fn symplectic_products() {
        assert_eq!(p("X").symplectic_product(&p("Z")).unwrap(), 1);
        assert_eq!(p("X").symplectic_product(&p("X")).unwrap(), 0);
        assert_eq!(p("XZ").symplectic_product(&p("ZX")).unwrap(), 0);
    }

    #[test]
    fn y_word_parses_with_real_sign() {
        let y = p("Y");
        assert_eq!((y.x_bits(), y.z_bits(), y.phase()), (1, 1, 1));
        assert_eq!(y.sign(), Some(1));
        assert_eq!(p("-Y").sign(), Some(-1));
        assert_eq!(format!("{}", p("-Y")), "-Y");
        assert_eq!(format!("{}", p("X").multiply(&p("Z")).unwrap()), "-iY");
    }

    #[test]
    fn group_elements_single_generator() {
        let g = group(&["X"]);
        let els = g.elements().unwrap();
        assert_eq!(els.len(), 2);
        assert_eq!(els[0], PauliElement::identity(1));
        assert_eq!(els[1], p("X"));
    }

    #[test]
    fn group_elements_xx_zz() {
        // brute-force oracle: multiply out all four subset products by hand
        let g = group(&["XX", "ZZ"]);
        let expect: HashSet<_> = ["II", "XX", "ZZ", "-YY"].iter().map(|s| p(s)).map(|e| (e.x_bits(), e.z_bits(), e.phase())).collect();
        assert_eq!(element_set(&g), expect);
    }

    #[test]
    fn group_elements_xz_zx() {
        let g = group(&["XZ", "ZX"]);
        let expect: HashSet<_> = ["II", "XZ", "ZX", "YY"].iter().map(|s| p(s)).map(|e| (e.x_bits(), e.z_bits(), e.phase())).collect();
        assert_eq!(element_set(&g), expect);
    }

    #[test]
    fn group_rejects_invalid() {
        assert!(StabiliserGroup::new(vec![p("X"), p("Z")]).is_err()); // anticommute + wrong count
        let e = StabiliserGroup::new(vec![p("XX"), p("ZZ"), p("YY")]);
        assert!(e.is_err()); // 3 generators on 2 qubits
        let dep = StabiliserGroup::new(vec![p("XX"), p("-YY")].into_iter().chain([]).collect::<Vec<_>>());
        assert!(dep.is_ok()); // independent pair
        let dep2 = StabiliserGroup::new(vec![p("XI"), p("XI")]);
        assert!(matches!(dep2, Err(PauliError::DependentGenerators { .. })));
    }

    #[test]
    fn graph_state_groups() {
        let single = Graph::new(1, &[]).unwrap();
        assert_eq!(graph_state_group(&single).generators(), &[p("X")]);

        let edge = Graph::new(2, &[(0, 1)]).unwrap();
        let g = graph_state_group(&edge);
        assert_eq!(g.generators(), &[p("XZ"), p("ZX")]);

        let empty3 = Graph::new(3, &[]).unwrap();
        assert_eq!(graph_state_group(&empty3).generators(), &[p("XII"), p("IXI"), p("IIX")]);
    }

    #[test]
    fn local_assignment_hadamard_and_signs() {
        let g = group(&["X"]);
        let h = LocalOpAssignment::new(Mode::H, vec![CosetOp::H], 0).unwrap();
        assert_eq!(apply_local_assignment(&g, &h).unwrap().generators(), &[p("Z")]);

        let s = LocalOpAssignment::new(Mode::H, vec![CosetOp::I], 1).unwrap();
        assert_eq!(apply_local_assignment(&g, &s).unwrap().generators(), &[p("-X")]);
    }

    #[test]
    fn local_assignment_hadamard_on_second_qubit() {
        let g = group(&["XZ", "ZX"]);
        let a = LocalOpAssignment::new(Mode::H, vec![CosetOp::I, CosetOp::H], 0).unwrap();
        let out = apply_local_assignment(&g, &a).unwrap();
        assert_eq!(out.canonical(), group(&["ZZ", "XX"]).canonical());
    }

    #[test]
    fn local_assignment_mode_mismatch() {
        assert!(LocalOpAssignment::new(Mode::H, vec![CosetOp::S], 0).is_err());
        assert!(LocalOpAssignment::new(Mode::T, vec![CosetOp::H], 0).is_err());
        let g = group(&["X"]);
        let a = LocalOpAssignment::new(Mode::T, vec![CosetOp::S, CosetOp::S], 0).unwrap();
        assert!(apply_local_assignment(&g, &a).is_err()); // length mismatch
    }

    #[test]
    fn canonical_is_order_independent() {
        assert_eq!(group(&["ZZ", "XX"]).canonical(), group(&["XX", "ZZ"]).canonical());
        assert_eq!(group(&["XX", "-YY"]).canonical(), group(&["XX", "ZZ"]).canonical());
        assert_eq!(group(&["X"]).canonical().generators(), &[p("X")]);
        assert_ne!(group(&["XX", "-ZZ"]).canonical(), group(&["XX", "ZZ"]).canonical());
    }

    #[test]
    fn canonical_equality_matches_element_sets() {
        for seed in 0..200u64 {
            let a = StabiliserGroup::random(3, seed);
            let b = StabiliserGroup::random(3, seed / 2);
            let equal_sets = element_set(&a) == element_set(&b);
            let equal_canon = a.canonical() == b.canonical();
            assert_eq!(equal_sets, equal_canon, "seed {seed}");
        }
        for seed in 0..100u64 {
            let a = StabiliserGroup::random(4, seed);
            // regenerate the same group from shuffled products of its generators
            let gens = a.generators();
            let mixed = vec![
                gens[1].multiply(&gens[0]).unwrap(),
                gens[2].multiply(&gens[3]).unwrap().multiply(&gens[1]).unwrap(),
                gens[2],
                gens[3].multiply(&gens[0]).unwrap(),
            ];
            if let Ok(b) = StabiliserGroup::new(mixed) {
                assert_eq!(a.canonical(), b.canonical(), "seed {seed}");
                assert_eq!(element_set(&a), element_set(&b));
            }
        }
    }

    #[test]
    fn random_groups_have_real_signed_elements() {
        for n in 1..=4usize {
            for seed in 0..50 {
                let g = StabiliserGroup::random(n, seed);
                let els = g.elements().unwrap();
                assert_eq!(els.len(), 1 << n);
                let distinct: HashSet<_> = els.iter().map(|e| (e.x_bits(), e.z_bits())).collect();
                assert_eq!(distinct.len(), 1 << n, "distinct bit patterns");
                assert!(els.iter().all(|e| e.sign().is_some()), "real Hermitian signs");
            }
        }
    }
}
