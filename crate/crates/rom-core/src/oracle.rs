//! Dense from-first-principles verification for up to three qubits: explicit
//! Hermitian matrices, explicit group-averaged projections, and the direct
//! l1 minimisation over every stabiliser state.
//!
//! Nothing here reuses the reduced pipeline: states are dense complex
//! matrices, projections are literal group averages over the symmetry
//! unitaries and permutation operators, and the robustness LP runs in the
//! full Pauli coordinate space. Complex algebra is plain vectors and loops;
//! at 8x8 nothing more is warranted.

use crate::pauli::{PauliElement, StabiliserGroup};
use crate::rng::SplitMix64;
use crate::simplex::{self, LpOutcome, Membership};
use crate::Mode;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("oracle supports n <= {1}, got {0}")]
    TooLarge(usize, usize),
    #[error("state failed validation: {0}")]
    InvalidState(String),
    #[error("lp failure: {0}")]
    Simplex(#[from] simplex::SimplexError),
}

pub const MAX_ORACLE_QUBITS: usize = 3;

type Matrix = Vec<Complex64>;

/// Dense density matrix with its defining stabiliser group.
#[derive(Clone, Debug)]
pub struct DenseState {
    n: usize,
    mat: Matrix,
    group: StabiliserGroup,
}

impl DenseState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.mat
    }

    pub fn group(&self) -> &StabiliserGroup {
        &self.group
    }
}

fn dim(n: usize) -> usize {
    1 << n
}

fn mat_zero(d: usize) -> Matrix {
    vec![Complex64::ZERO; d * d]
}

fn mat_mul(a: &[Complex64], b: &[Complex64], d: usize) -> Matrix {
    let mut out = mat_zero(d);
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == Complex64::ZERO {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

fn dagger(a: &[Complex64], d: usize) -> Matrix {
    let mut out = mat_zero(d);
    for i in 0..d {
        for j in 0..d {
            out[j * d + i] = a[i * d + j].conj();
        }
    }
    out
}

fn trace(a: &[Complex64], d: usize) -> Complex64 {
    (0..d).map(|i| a[i * d + i]).sum()
}

fn trace_product(a: &[Complex64], b: &[Complex64], d: usize) -> Complex64 {
    let mut t = Complex64::ZERO;
    for i in 0..d {
        for j in 0..d {
            t += a[i * d + j] * b[j * d + i];
        }
    }
    t
}

fn kron(a: &[Complex64], da: usize, b: &[Complex64], db: usize) -> Matrix {
    let d = da * db;
    let mut out = mat_zero(d);
    for i in 0..da {
        for j in 0..da {
            let aij = a[i * da + j];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k) * d + (j * db + l)] = aij * b[k * db + l];
                }
            }
        }
    }
    out
}

const I2: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::ZERO,
    Complex64::ZERO,
    Complex64::new(1.0, 0.0),
];

fn pauli_x() -> Matrix {
    vec![Complex64::ZERO, Complex64::ONE, Complex64::ONE, Complex64::ZERO]
}

fn pauli_y() -> Matrix {
    vec![Complex64::ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::ZERO]
}

fn pauli_z() -> Matrix {
    vec![Complex64::ONE, Complex64::ZERO, Complex64::ZERO, Complex64::new(-1.0, 0.0)]
}

/// Dense matrix of `i^phase X^x Z^z`; qubit 0 is the first tensor factor.
fn pauli_dense(p: &PauliElement) -> Matrix {
    let mut m = vec![Complex64::new(0.0, 1.0).powu(p.phase() as u32)];
    let mut d = 1;
    for q in 0..p.n() {
        let x = p.x_bits() >> q & 1 == 1;
        let z = p.z_bits() >> q & 1 == 1;
        let single: Matrix = match (x, z) {
            (false, false) => I2.to_vec(),
            (true, false) => pauli_x(),
            (false, true) => pauli_z(),
            // XZ = [[0,-1],[1,0]]
            (true, true) => vec![
                Complex64::ZERO,
                Complex64::new(-1.0, 0.0),
                Complex64::ONE,
                Complex64::ZERO,
            ],
        };
        m = kron(&m, d, &single, 2);
        d *= 2;
    }
    m
}

/// Rank-1 projector of the group's stabilised state:
/// `(1/2^n) sum_g sgn(g) g`.
fn projector_of_group(group: &StabiliserGroup) -> Result<Matrix, OracleError> {
    let n = group.n();
    let d = dim(n);
    let mut mat = mat_zero(d);
    for element in group.elements().map_err(|e| OracleError::InvalidState(e.to_string()))? {
        let dense = pauli_dense(&element);
        for (o, v) in mat.iter_mut().zip(&dense) {
            *o += v / d as f64;
        }
    }
    Ok(mat)
}

fn validated_state(n: usize, group: StabiliserGroup) -> Result<DenseState, OracleError> {
    let d = dim(n);
    let mat = projector_of_group(&group)?;
    let dag = dagger(&mat, d);
    let herm_err = mat.iter().zip(&dag).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if herm_err > 1e-12 {
        return Err(OracleError::InvalidState(format!("hermiticity error {herm_err}")));
    }
    let tr = trace(&mat, d);
    if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
        return Err(OracleError::InvalidState(format!("trace {tr}")));
    }
    let purity = trace_product(&mat, &mat, d);
    if (purity.re - 1.0).abs() > 1e-10 {
        return Err(OracleError::InvalidState(format!("purity {purity}")));
    }
    Ok(DenseState { n, mat, group })
}

/// Every maximal abelian Pauli subgroup modulo signs, as canonical GF(2)
/// generator bases.
fn all_group_bases(n: usize) -> Vec<Vec<(u64, u64)>> {
    let codes: Vec<(u64, u64)> = (1..1u64 << (2 * n)).map(|c| (c >> n, c & ((1 << n) - 1))).collect();
    let commute = |a: (u64, u64), b: (u64, u64)| ((a.0 & b.1).count_ones() + (a.1 & b.0).count_ones()) & 1 == 0;

    let mut bases: Vec<Vec<(u64, u64)>> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<(u64, u64)>> = Default::default();
    let mut stack: Vec<(u64, u64)> = Vec::new();

    fn span(rows: &[(u64, u64)]) -> Vec<(u64, u64)> {
        let mut out = vec![(0u64, 0u64)];
        for &(x, z) in rows {
            let mut extra: Vec<(u64, u64)> = out.iter().map(|&(a, b)| (a ^ x, b ^ z)).collect();
            out.append(&mut extra);
        }
        out
    }

    fn rref_key(rows: &[(u64, u64)], n: usize) -> Vec<(u64, u64)> {
        let mut rows: Vec<(u64, u64)> = rows.to_vec();
        let mut r = 0;
        for col in 0..2 * n {
            let bit = |row: &(u64, u64)| {
                if col < n {
                    row.0 >> col & 1 == 1
                } else {
                    row.1 >> (col - n) & 1 == 1
                }
            };
            let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i])) else { continue };
            rows.swap(r, p);
            for i in 0..rows.len() {
                if i != r && bit(&rows[i]) {
                    rows[i] = (rows[i].0 ^ rows[r].0, rows[i].1 ^ rows[r].1);
                }
            }
            r += 1;
        }
        rows
    }

    fn rec(
        n: usize,
        codes: &[(u64, u64)],
        commute: &dyn Fn((u64, u64), (u64, u64)) -> bool,
        start: usize,
        stack: &mut Vec<(u64, u64)>,
        seen: &mut std::collections::HashSet<Vec<(u64, u64)>>,
        bases: &mut Vec<Vec<(u64, u64)>>,
    ) {
        if stack.len() == n {
            let key = rref_key(stack, n);
            if seen.insert(key.clone()) {
                bases.push(key);
            }
            return;
        }
        let current_span = span(stack);
        for (i, &c) in codes.iter().enumerate().skip(start) {
            if current_span.contains(&c) {
                continue;
            }
            if stack.iter().any(|&s| !commute(s, c)) {
                continue;
            }
            stack.push(c);
            rec(n, codes, commute, i + 1, stack, seen, bases);
            stack.pop();
        }
    }

    rec(n, &codes, &commute, 0, &mut stack, &mut seen, &mut bases);
    bases.sort_unstable();
    bases
}

/// All |stab(n)| stabiliser states as dense rank-1 projectors (6, 60, 1080
/// for n = 1, 2, 3).
pub fn all_stabiliser_states(n: usize) -> Result<Vec<DenseState>, OracleError> {
    if n == 0 || n > MAX_ORACLE_QUBITS {
        return Err(OracleError::TooLarge(n, MAX_ORACLE_QUBITS));
    }
    let mut states = Vec::new();
    for basis in all_group_bases(n) {
        for signs in 0..1u64 << n {
            let generators: Vec<PauliElement> = basis
                .iter()
                .enumerate()
                .map(|(i, &(x, z))| {
                    let wy = (x & z).count_ones() as u8;
                    let phase = (wy + 2 * ((signs >> i & 1) as u8)) & 3;
                    PauliElement::new(n, x, z, phase).expect("register fits")
                })
                .collect();
            let group = StabiliserGroup::new(generators).expect("valid basis");
            states.push(validated_state(n, group)?);
        }
    }
    Ok(states)
}

/// Dense |H><H| or |T><T| tensor power.
pub fn magic_target_dense(mode: Mode, n: usize) -> Matrix {
    let single: Matrix = {
        let x = pauli_x();
        let y = pauli_y();
        let z = pauli_z();
        let mut m = I2.to_vec();
        let weight = 1.0 / mode.scaling_base().sqrt();
        for i in 0..4 {
            let direction = match mode {
                Mode::H => x[i] + y[i],
                Mode::T => x[i] + y[i] + z[i],
            };
            m[i] = (m[i] + weight * direction) / 2.0;
        }
        m
    };
    let mut out = vec![Complex64::ONE];
    let mut d = 1;
    for _ in 0..n {
        out = kron(&out, d, &single, 2);
        d *= 2;
    }
    out
}

fn unitary_conjugate(u: &[Complex64], rho: &[Complex64], d: usize) -> Matrix {
    mat_mul(&mat_mul(u, rho, d), &dagger(u, d), d)
}

/// Single-qubit symmetry generator in matrix form: SX (H) or SH (T).
fn symmetry_unitary(mode: Mode) -> Matrix {
    let i = Complex64::new(0.0, 1.0);
    match mode {
        // S X = [[0, 1], [i, 0]]
        Mode::H => vec![Complex64::ZERO, Complex64::ONE, i, Complex64::ZERO],
        // S H = (1/sqrt2) [[1, 1], [i, -i]]
        Mode::T => {
            let s = 1.0 / 2.0f64.sqrt();
            vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0), i * s, -i * s]
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out.sort_unstable();
    out
}

/// Permutation operator sending qubit q to position perm[q] (qubit 0 is the
/// first tensor factor).
fn permutation_matrix(perm: &[usize]) -> Matrix {
    let n = perm.len();
    let d = dim(n);
    let mut m = mat_zero(d);
    for b in 0..d {
        let mut target = 0usize;
        for q in 0..n {
            // bit of qubit q in index b (qubit 0 = most significant factor)
            let bit = b >> (n - 1 - q) & 1;
            target |= bit << (n - 1 - perm[q]);
        }
        m[target * d + b] = Complex64::ONE;
    }
    m
}

/// Group-average a density matrix over the mode's full symmetry group
/// (local symmetry tensor powers and qubit permutations).
fn project_dense(rho: &[Complex64], n: usize, mode: Mode) -> Matrix {
    let d = dim(n);
    let u = symmetry_unitary(mode);
    let order = match mode {
        Mode::H => 2usize,
        Mode::T => 3usize,
    };
    let mut powers: Vec<Matrix> = vec![I2.to_vec()];
    for _ in 1..order {
        powers.push(mat_mul(&powers.last().unwrap().clone(), &u, 2));
    }

    // local average
    let mut local_avg = mat_zero(d);
    let assignments = order.pow(n as u32);
    for a in 0..assignments {
        let mut big = vec![Complex64::ONE];
        let mut bd = 1;
        let mut rem = a;
        for _ in 0..n {
            big = kron(&big, bd, &powers[rem % order], 2);
            bd *= 2;
            rem /= order;
        }
        let conj = unitary_conjugate(&big, rho, d);
        for (o, v) in local_avg.iter_mut().zip(&conj) {
            *o += v / assignments as f64;
        }
    }

    // permutation average
    let perms = permutations(n);
    let mut out = mat_zero(d);
    for perm in &perms {
        let p = permutation_matrix(perm);
        let conj = unitary_conjugate(&p, &local_avg, d);
        for (o, v) in out.iter_mut().zip(&conj) {
            *o += v / perms.len() as f64;
        }
    }
    out
}

/// Single-qubit invariant axis operator E1 for the mode.
fn e1(mode: Mode) -> Matrix {
    let x = pauli_x();
    let y = pauli_y();
    let z = pauli_z();
    let w = 1.0 / mode.scaling_base().sqrt();
    (0..4)
        .map(|i| match mode {
            Mode::H => w * (x[i] + y[i]),
            Mode::T => w * (x[i] + y[i] + z[i]),
        })
        .collect()
}

/// Symmetrised occupation basis element with `i` E1 factors.
fn basis_element(mode: Mode, n: usize, count: usize) -> Matrix {
    let d = dim(n);
    let e = e1(mode);
    let perms = permutations(n);
    let mut out = mat_zero(d);
    for perm in &perms {
        // word with E1 at positions perm[q] < count
        let mut m = vec![Complex64::ONE];
        let mut md = 1;
        for q in 0..n {
            let factor: Matrix = if perm[q] < count { e.clone() } else { I2.to_vec() };
            m = kron(&m, md, &factor, 2);
            md *= 2;
        }
        for (o, v) in out.iter_mut().zip(&m) {
            *o += v / perms.len() as f64;
        }
    }
    out
}

/// Coordinates of the symmetry-projected state in the occupation basis
/// built on the mode's invariant axis.
pub fn dense_project(rho: &[Complex64], n: usize, mode: Mode) -> Result<Vec<f64>, OracleError> {
    if n == 0 || n > MAX_ORACLE_QUBITS {
        return Err(OracleError::TooLarge(n, MAX_ORACLE_QUBITS));
    }
    let d = dim(n);
    let projected = project_dense(rho, n, mode);
    let mut coords = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let basis = basis_element(mode, n, i);
        let num = trace_product(&basis, &projected, d);
        let den = trace_product(&basis, &basis, d);
        coords.push(num.re / den.re);
    }
    Ok(coords)
}

/// Pauli coefficient vector `tr(rho w) / 2^n` over all 4^n Hermitian words.
fn pauli_coordinates(rho: &[Complex64], n: usize) -> Vec<f64> {
    let d = dim(n);
    let mut out = Vec::with_capacity(d * d);
    for code in 0..1u64 << (2 * n) {
        let (x, z) = (code >> n, code & ((1 << n) - 1));
        let wy = (x & z).count_ones() as u8;
        let w = pauli_dense(&PauliElement::new(n, x, z, wy & 3).expect("register fits"));
        let t = trace_product(rho, &w, d);
        debug_assert!(t.im.abs() < 1e-10);
        out.push(t.re / d as f64);
    }
    out
}

/// Exact robustness by direct l1 minimisation over every stabiliser state in
/// the full Pauli coordinate space.
pub fn dense_rom(rho: &[Complex64], n: usize) -> Result<f64, OracleError> {
    if n == 0 || n > MAX_ORACLE_QUBITS {
        return Err(OracleError::TooLarge(n, MAX_ORACLE_QUBITS));
    }
    let states = all_stabiliser_states(n)?;
    let columns: Vec<Vec<f64>> = states.iter().map(|s| pauli_coordinates(&s.mat, n)).collect();
    let rhs = pauli_coordinates(rho, n);
    let mut lp_columns = Vec::with_capacity(2 * columns.len());
    lp_columns.extend(columns.iter().cloned());
    lp_columns.extend(columns.iter().map(|c| c.iter().map(|v| -v).collect::<Vec<f64>>()));
    let costs = vec![1.0; lp_columns.len()];
    match simplex::minimize(&lp_columns, &costs, &rhs)? {
        LpOutcome::Optimal(sol) => Ok(sol.objective),
        LpOutcome::Infeasible(_) => Err(OracleError::InvalidState(
            "stabiliser states failed to span the target".into(),
        )),
    }
}

/// One verification item of the oracle suite.
#[derive(Clone, Debug)]
pub struct OracleCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl OracleCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

/// Full oracle suite up to `max_n` qubits (2 for quick runs, 3 for full).
pub fn run_suite(max_n: usize, catalog: &crate::graph::Catalog) -> Vec<OracleCheck> {
    use crate::enumerator::{complete_enumerator, reduce, target_vector};
    use crate::polytope::{build_polytope, membership_lp};
    use crate::robustness::solve_l1;

    let max_n = max_n.min(MAX_ORACLE_QUBITS);
    let mut checks = Vec::new();

    // state counts
    let expected_counts = [6usize, 60, 1080];
    for n in 1..=max_n {
        match all_stabiliser_states(n) {
            Ok(states) => {
                let ok = states.len() == expected_counts[n - 1];
                checks.push(OracleCheck::new(
                    format!("stabiliser state count n={n}"),
                    ok,
                    format!("{} states (expected {})", states.len(), expected_counts[n - 1]),
                ));

                // projection equivalence against the enumerator pipeline
                for mode in [Mode::H, Mode::T] {
                    let scale_base = mode.scaling_base();
                    let mut worst = 0.0f64;
                    for s in &states {
                        let dense = match dense_project(&s.mat, n, mode) {
                            Ok(c) => c,
                            Err(e) => {
                                checks.push(OracleCheck::new(
                                    format!("dense projection n={n} mode={mode}"),
                                    false,
                                    e.to_string(),
                                ));
                                continue;
                            }
                        };
                        let reduced = reduce(mode, &complete_enumerator(s.group()).expect("n <= 3"));
                        for (i, (&d, &b)) in dense.iter().zip(reduced.coeffs()).enumerate() {
                            let expected = b as f64 * scale_base.powf(-(i as f64) / 2.0) / dim(n) as f64;
                            worst = worst.max((d - expected).abs());
                        }
                    }
                    checks.push(OracleCheck::new(
                        format!("projection equivalence n={n} mode={mode}"),
                        worst < 1e-10,
                        format!("max deviation {worst:.3e}"),
                    ));
                }
            }
            Err(e) => checks.push(OracleCheck::new(format!("stabiliser states n={n}"), false, e.to_string())),
        }
    }

    // robustness equivalence: dense LP vs symmetry-reduced LP
    for mode in [Mode::H, Mode::T] {
        for n in 1..=max_n {
            let dense_value = dense_rom(&magic_target_dense(mode, n), n);
            let reduced_value = build_polytope(n, mode, catalog, None)
                .map_err(|e| e.to_string())
                .and_then(|p| solve_l1(&p, &target_vector(mode, n)).map_err(|e| e.to_string()))
                .map(|d| d.value);
            match (dense_value, reduced_value) {
                (Ok(dv), Ok(rv)) => {
                    let diff = (dv - rv).abs();
                    checks.push(OracleCheck::new(
                        format!("rom equivalence mode={mode} n={n}"),
                        diff < 1e-6,
                        format!("dense {dv:.7} vs reduced {rv:.7} (|diff| {diff:.2e})"),
                    ));
                }
                (d, r) => checks.push(OracleCheck::new(
                    format!("rom equivalence mode={mode} n={n}"),
                    false,
                    format!("dense: {d:?}, reduced: {r:?}"),
                )),
            }
        }
    }

    // faithfulness on a few stabiliser states
    if let Ok(states) = all_stabiliser_states(1) {
        let mut worst = 0.0f64;
        for s in &states {
            if let Ok(v) = dense_rom(&s.mat, 1) {
                worst = worst.max((v - 1.0).abs());
            }
        }
        checks.push(OracleCheck::new(
            "faithfulness on stabiliser states",
            worst < 1e-9,
            format!("max |value - 1| = {worst:.3e}"),
        ));
    }

    // projected polytope equals polytope intersected with the invariant
    // subspace: projections of random hull points stay inside the hull of
    // the projected states
    for mode in [Mode::H, Mode::T] {
        for n in 1..=max_n.min(2) {
            let result = (|| -> Result<f64, String> {
                let states = all_stabiliser_states(n).map_err(|e| e.to_string())?;
                let projections: Vec<Vec<i64>> = {
                    let mut set = std::collections::HashSet::new();
                    for s in &states {
                        let reduced =
                            reduce(mode, &complete_enumerator(s.group()).map_err(|e| e.to_string())?);
                        set.insert(reduced.coeffs().to_vec());
                    }
                    set.into_iter().collect()
                };
                let d = dim(n);
                let mut rng = SplitMix64::new(0x6f2c_97ab ^ n as u64);
                let mut worst = 0.0f64;
                for _ in 0..1000 {
                    // random convex combination of a handful of states
                    let picks = 2 + (rng.below(4) as usize);
                    let mut weights = Vec::with_capacity(picks);
                    let mut total = 0.0;
                    for _ in 0..picks {
                        let w = rng.unit_f64() + 1e-3;
                        weights.push(w);
                        total += w;
                    }
                    let mut rho = mat_zero(d);
                    for w in &weights {
                        let s = &states[rng.below(states.len() as u64) as usize];
                        for (o, v) in rho.iter_mut().zip(&s.mat) {
                            *o += (w / total) * v;
                        }
                    }
                    let coords = dense_project(&rho, n, mode).map_err(|e| e.to_string())?;
                    // back to enumerator coordinates, fractional for mixtures
                    let unscaled: Vec<f64> = coords
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| c * d as f64 * mode.scaling_base().powf(i as f64 / 2.0))
                        .collect();
                    worst = worst.max((unscaled[0] - 1.0).abs());
                    let hull: Vec<Vec<f64>> = projections
                        .iter()
                        .map(|p| p.iter().map(|&v| v as f64).collect())
                        .collect();
                    match simplex::membership(&unscaled, &hull).map_err(|e| e.to_string())? {
                        Membership::Inside { .. } => {}
                        Membership::Outside { .. } => {
                            return Err(format!("projected point {unscaled:?} left the hull"));
                        }
                    }
                }
                Ok(worst)
            })();
            match result {
                Ok(worst) => checks.push(OracleCheck::new(
                    format!("polytope intersection sample mode={mode} n={n}"),
                    true,
                    format!("1000 samples inside, max affine error {worst:.3e}"),
                )),
                Err(msg) => checks.push(OracleCheck::new(
                    format!("polytope intersection sample mode={mode} n={n}"),
                    false,
                    msg,
                )),
            }
        }
    }

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_counts() {
        assert_eq!(all_stabiliser_states(1).unwrap().len(), 6);
        assert_eq!(all_stabiliser_states(2).unwrap().len(), 60);
        assert!(all_stabiliser_states(4).is_err());
    }

    #[test]
    fn dense_multiplication_matches_bit_arithmetic() {
        // multiply is associative and phase-exact against dense products
        let words = ["X", "Z", "Y", "-X"];
        for a in words {
            for b in words {
                let pa: PauliElement = a.parse().unwrap();
                let pb: PauliElement = b.parse().unwrap();
                let bit_product = pauli_dense(&pa.multiply(&pb).unwrap());
                let dense_product = mat_mul(&pauli_dense(&pa), &pauli_dense(&pb), 2);
                for (x, y) in bit_product.iter().zip(&dense_product) {
                    assert!((x - y).norm() < 1e-12, "{a} * {b}");
                }
            }
        }
        for seed in 0..20u64 {
            let g = StabiliserGroup::random(2, seed);
            let [a, b] = [g.generators()[0], g.generators()[1]];
            let ab = pauli_dense(&a.multiply(&b).unwrap());
            let dense = mat_mul(&pauli_dense(&a), &pauli_dense(&b), 4);
            for (x, y) in ab.iter().zip(&dense) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn projection_of_plus_state() {
        let plus = all_stabiliser_states(1)
            .unwrap()
            .into_iter()
            .find(|s| s.group().generators()[0] == "X".parse().unwrap())
            .unwrap();
        let coords = dense_project(&plus.mat, 1, Mode::H).unwrap();
        assert!((coords[0] - 0.5).abs() < 1e-12);
        assert!((coords[1] - 0.5 / 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn projection_of_maximally_mixed() {
        let d = 4;
        let mut rho = mat_zero(d);
        for i in 0..d {
            rho[i * d + i] = Complex64::new(0.25, 0.0);
        }
        for mode in [Mode::H, Mode::T] {
            let coords = dense_project(&rho, 2, mode).unwrap();
            assert!((coords[0] - 0.25).abs() < 1e-12);
            assert!(coords[1].abs() < 1e-12 && coords[2].abs() < 1e-12);
        }
    }

    #[test]
    fn projection_of_magic_target_gives_binomials() {
        // the target is already invariant; its occupation-basis coordinates
        // are the binomials over 2^n
        let rho = magic_target_dense(Mode::H, 2);
        let coords = dense_project(&rho, 2, Mode::H).unwrap();
        for (i, expected) in [1.0, 2.0, 1.0].iter().enumerate() {
            assert!((coords[i] * 4.0 - expected).abs() < 1e-10, "i={i}");
        }
    }

    #[test]
    fn dense_rom_single_qubit() {
        let v = dense_rom(&magic_target_dense(Mode::H, 1), 1).unwrap();
        assert!((v - 2.0f64.sqrt()).abs() < 1e-7);
        let t = dense_rom(&magic_target_dense(Mode::T, 1), 1).unwrap();
        assert!((t - 3.0f64.sqrt()).abs() < 1e-7);

        let plus = all_stabiliser_states(1).unwrap().remove(0);
        let f = dense_rom(&plus.mat, 1).unwrap();
        assert!((f - 1.0).abs() < 1e-9);
    }
}
