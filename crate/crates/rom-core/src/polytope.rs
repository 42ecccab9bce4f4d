//! Vertex generation for the projected stabiliser polytope: the connected
//! sweep over graph representatives x coset assignments x sign patterns,
//! product points convolved from lower extremal vertex sets, and the
//! output-sensitive extreme-point filter.
//!
//! The sweep works on raw generator bit rows. For one (representative, coset)
//! pair the 2^n sign patterns are evaluated at once: a Gray-code walk buckets
//! every group element by its reduced index and X support, and a
//! Walsh-Hadamard transform over the X-support axis yields the coordinate
//! vector of every sign pattern. Deduplication is exact on the integer
//! coordinates, which also absorbs graph-automorphism redundancy.

use crate::enumerator::{self, convolve_coeffs, ReducedEnumerator};
use crate::graph::{Catalog, Graph, GraphError};
use crate::hierarchy::partitions_bounded;
use crate::pauli::{
    apply_local_assignment, graph_state_group, CosetOp, LocalOpAssignment, PauliError,
};
use crate::simplex::{membership, Membership, SimplexError};
use crate::Mode;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Enumerator(#[from] enumerator::EnumeratorError),
    #[error("lp failure during extremal filtering: {0}")]
    Simplex(#[from] SimplexError),
    #[error("missing lower vertex set for {0} qubits")]
    MissingLowerSet(usize),
    #[error("point dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("no points to filter")]
    EmptyInput,
    #[error("vertex label for {coords:?} recomputes to {recomputed:?}")]
    LabelMismatch { coords: Vec<i64>, recomputed: Vec<i64> },
    #[error("cache io: {0}")]
    Io(#[from] std::io::Error),
}

/// Provenance of a projected point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VertexLabel {
    /// Projection of a fully entangled stabiliser state: graph representative
    /// plus per-qubit coset ops and sign bits.
    Connected { edges: Vec<(usize, usize)>, cosets: Vec<CosetOp>, signs: Vec<u8> },
    /// Convolution of lower extremal vertices, referenced by qubit count and
    /// index into that polytope's vertex order.
    Product { parts: Vec<PartRef> },
    /// Product of projected pair states and all-equal single-qubit states
    /// used by the polynomial approximations.
    PairProduct { plus_pairs: usize, minus_pairs: usize, singles: usize, singles_minus: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartRef {
    pub n: usize,
    pub index: usize,
}

/// A projected point with provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledVector {
    pub coords: ReducedEnumerator,
    pub label: VertexLabel,
}

/// Extremal vertex set of the projected stabiliser polytope plus pre-filter
/// statistics.
#[derive(Clone, Debug)]
pub struct ProjectedPolytope {
    pub n: usize,
    pub mode: Mode,
    /// Extreme points only, sorted by coordinate vector.
    pub vertices: Vec<LabeledVector>,
    /// Distinct projections of fully entangled states.
    pub connected_count: usize,
    /// Distinct product projections (before the union with connected ones).
    pub product_count: usize,
    /// Distinct points fed to the extremal filter.
    pub all_points_count: usize,
}

impl ProjectedPolytope {
    pub fn vertex_coords(&self) -> Vec<Vec<i64>> {
        self.vertices.iter().map(|v| v.coords.coeffs().to_vec()).collect()
    }

    /// Indices of vertices whose label is `Connected` (fully entangled
    /// representatives), as used by the hierarchy levels.
    pub fn connected_vertex_indices(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| matches!(v.label, VertexLabel::Connected { .. }))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Sweep cap: coordinates must stay within the 12-bit packing of the dedup
/// key, which holds for n <= 10 (|B_i| <= 2^n).
const MAX_SWEEP_QUBITS: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct CompactLabel {
    rep: u32,
    coset: u32,
    signs: u32,
}

fn unpack_key(mut key: u128, len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    out[0] = 1;
    for i in (1..len).rev() {
        out[i] = (key & 0xfff) as i64 - 2048;
        key >>= 12;
    }
    out
}

/// All distinct projections of fully entangled stabiliser states on `n`
/// qubits: representatives x coset assignments (3^n for H, 2^n for T) x sign
/// patterns (2^n), deduplicated by exact integer coordinates. Labels record
/// the first producer in (representative, coset, signs) order.
pub fn connected_projections(
    n: usize,
    mode: Mode,
    catalog: &Catalog,
) -> Result<Vec<LabeledVector>, PolytopeError> {
    assert!(n >= 1 && n <= MAX_SWEEP_QUBITS, "sweep supports 1..={MAX_SWEEP_QUBITS} qubits");
    let reps = catalog.representatives(n)?;
    let mut merged: HashMap<u128, CompactLabel> = HashMap::new();
    let chunk = rayon::current_num_threads().max(1) * 2;
    for (chunk_idx, reps_chunk) in reps.chunks(chunk).enumerate() {
        let chunk_start = chunk_idx * chunk;
        let locals: Vec<HashMap<u128, CompactLabel>> = reps_chunk
            .par_iter()
            .enumerate()
            .map(|(off, rep)| sweep_representative(n, mode, (chunk_start + off) as u32, rep))
            .collect();
        for local in locals {
            for (key, label) in local {
                merged.entry(key).or_insert(label);
            }
        }
    }

    let mut out: Vec<(Vec<i64>, CompactLabel)> =
        merged.into_iter().map(|(k, l)| (unpack_key(k, n + 1), l)).collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(out
        .into_iter()
        .map(|(coeffs, label)| LabeledVector {
            coords: ReducedEnumerator::from_coeffs(mode, coeffs),
            label: decode_label(mode, n, label, reps),
        })
        .collect())
}

fn decode_label(mode: Mode, n: usize, label: CompactLabel, reps: &[Graph]) -> VertexLabel {
    let assignment = LocalOpAssignment::from_indices(mode, n, label.coset as u64, label.signs as u64);
    VertexLabel::Connected {
        edges: reps[label.rep as usize].edges(),
        cosets: assignment.ops().to_vec(),
        signs: (0..n).map(|q| (label.signs >> q & 1) as u8).collect(),
    }
}

/// One representative: every coset assignment, all sign patterns at once via
/// the Walsh-Hadamard transform over the element X supports.
fn sweep_representative(n: usize, mode: Mode, rep_idx: u32, rep: &Graph) -> HashMap<u128, CompactLabel> {
    let base = graph_state_group(rep);
    let alphabet = CosetOp::alphabet(mode);
    let coset_count = (alphabet.len() as u64).pow(n as u32);
    let size = 1usize << n;
    let mut buckets = vec![vec![0i32; size]; n + 1];
    let mut local: HashMap<u128, CompactLabel> = HashMap::new();

    // sign bits are Z pre-actions: pattern s flips element T by
    // (-1)^{|x_orig(T) & s|} with the *unconjugated* X support, so the walk
    // tracks the original X bits alongside the conjugated element
    let orig_x: Vec<u64> = base.generators().iter().map(|g| g.x_bits()).collect();

    for coset in 0..coset_count {
        let assignment = LocalOpAssignment::from_indices(mode, n, coset, 0);
        let group = apply_local_assignment(&base, &assignment).expect("matching register");
        let gens = group.generators();

        for b in buckets.iter_mut() {
            b.iter_mut().for_each(|v| *v = 0);
        }
        let mut x = 0u64;
        let mut z = 0u64;
        let mut xo = 0u64;
        let mut phase = 0u32;
        let mut bucket_element = |x: u64, z: u64, phase: u32, xo: u64| {
            let idx = match mode {
                Mode::H => {
                    if z & !x != 0 {
                        return; // carries a Z letter, orthogonal to the invariant subspace
                    }
                    x.count_ones() as usize
                }
                Mode::T => (x | z).count_ones() as usize,
            };
            buckets[idx][xo as usize] += enumerator::element_sign(phase as u8, (x & z).count_ones());
        };
        bucket_element(x, z, phase, xo);
        for step in 1u64..1 << n {
            let flip = step.trailing_zeros() as usize;
            let g = &gens[flip];
            phase = (phase + g.phase() as u32 + 2 * (z & g.x_bits()).count_ones()) & 3;
            x ^= g.x_bits();
            z ^= g.z_bits();
            xo ^= orig_x[flip];
            bucket_element(x, z, phase, xo);
        }
        drop(bucket_element);
        for b in buckets.iter_mut() {
            walsh_hadamard(b);
        }

        for s in 0..size {
            let mut key = 0u128;
            for b in buckets[1..].iter() {
                key = key << 12 | (b[s] as i64 + 2048) as u128;
            }
            debug_assert_eq!(buckets[0][s], 1);
            local
                .entry(key)
                .or_insert(CompactLabel { rep: rep_idx, coset: coset as u32, signs: s as u32 });
        }
    }
    local
}

fn walsh_hadamard(data: &mut [i32]) {
    let n = data.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let a = data[i];
                let b = data[i + h];
                data[i] = a + b;
                data[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Distinct projections of product states assembled from lower extremal
/// vertex sets: one vertex from each part of every partition of `n` into
/// parts smaller than `n`.
pub fn product_projections(
    n: usize,
    mode: Mode,
    lower: &[&ProjectedPolytope],
) -> Result<Vec<LabeledVector>, PolytopeError> {
    for m in 1..n {
        if lower.get(m - 1).map(|p| (p.n, p.mode)) != Some((m, mode)) {
            return Err(PolytopeError::MissingLowerSet(m));
        }
    }
    let mut dedup: HashMap<Vec<i64>, VertexLabel> = HashMap::new();
    if n >= 2 {
        for partition in partitions_bounded(n, n - 1).expect("1 <= k < n") {
            let parts = partition.parts().to_vec();
            for_each_multiset_selection(&parts, &|size| lower[size - 1].vertices.len(), &mut |selection| {
                let mut coeffs = vec![1i64];
                let mut refs = Vec::with_capacity(parts.len());
                for (slot, &part) in parts.iter().enumerate() {
                    let vertex = &lower[part - 1].vertices[selection[slot]];
                    coeffs = convolve_coeffs(&coeffs, vertex.coords.coeffs());
                    refs.push(PartRef { n: part, index: selection[slot] });
                }
                dedup.entry(coeffs).or_insert(VertexLabel::Product { parts: refs });
            });
        }
    }
    let mut out: Vec<(Vec<i64>, VertexLabel)> = dedup.into_iter().collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(out
        .into_iter()
        .map(|(coeffs, label)| LabeledVector { coords: ReducedEnumerator::from_coeffs(mode, coeffs), label })
        .collect())
}

/// Enumerate index selections, nondecreasing across slots holding equal part
/// sizes so repeated parts pick multisets rather than tuples.
fn for_each_multiset_selection(
    parts: &[usize],
    limit_for: &dyn Fn(usize) -> usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    fn rec(
        parts: &[usize],
        limit_for: &dyn Fn(usize) -> usize,
        selection: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let slot = selection.len();
        if slot == parts.len() {
            visit(selection);
            return;
        }
        let start = if slot > 0 && parts[slot] == parts[slot - 1] { selection[slot - 1] } else { 0 };
        for idx in start..limit_for(parts[slot]) {
            selection.push(idx);
            rec(parts, limit_for, selection, visit);
            selection.pop();
        }
    }
    rec(parts, limit_for, &mut Vec::with_capacity(parts.len()), visit);
}

/// Convex-hull membership of `point` in `hull`: the convex weights when
/// inside, the separating functional when outside.
pub fn membership_lp(point: &[i64], hull: &[Vec<i64>]) -> Result<Membership<f64>, PolytopeError> {
    for q in hull {
        if q.len() != point.len() {
            return Err(PolytopeError::DimensionMismatch(q.len(), point.len()));
        }
    }
    let p: Vec<f64> = point.iter().map(|&v| v as f64).collect();
    let cols: Vec<Vec<f64>> = hull.iter().map(|q| q.iter().map(|&v| v as f64).collect()).collect();
    Ok(membership(&p, &cols)?)
}

/// Output-sensitive extreme-point filter (frame algorithm): grow a frame of
/// certified extreme points, test each candidate against it, and promote the
/// point maximising the separating functional whenever the candidate falls
/// outside. Input order is fixed to lexicographically sorted coordinates;
/// output is sorted the same way.
pub fn extremal_filter(
    mut points: Vec<(Vec<i64>, VertexLabel)>,
) -> Result<Vec<(Vec<i64>, VertexLabel)>, PolytopeError> {
    if points.is_empty() {
        return Err(PolytopeError::EmptyInput);
    }
    let dim = points[0].0.len();
    for (coords, _) in &points {
        if coords.len() != dim {
            return Err(PolytopeError::DimensionMismatch(coords.len(), dim));
        }
    }
    points.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    points.dedup_by(|a, b| a.0 == b.0);

    let float_points: Vec<Vec<f64>> =
        points.iter().map(|(c, _)| c.iter().map(|&v| v as f64).collect()).collect();

    let mut in_frame = vec![false; points.len()];
    let mut frame_cols: Vec<Vec<f64>> = Vec::new();
    let mut frame_idx: Vec<usize> = Vec::new();

    // the lexicographic maximum is extreme
    let last = points.len() - 1;
    in_frame[last] = true;
    frame_cols.push(float_points[last].clone());
    frame_idx.push(last);

    for p in 0..points.len() {
        while !in_frame[p] {
            match membership(&float_points[p], &frame_cols)? {
                Membership::Inside { .. } => break,
                Membership::Outside { separator } => {
                    let score = |q: &[f64]| separator.iter().zip(q).map(|(w, v)| w * v).sum::<f64>();
                    let mut best = 0usize;
                    let mut best_score = score(&float_points[0]);
                    for (i, fp) in float_points.iter().enumerate().skip(1) {
                        let s = score(fp);
                        let tol = 1e-9 * best_score.abs().max(1.0);
                        if s > best_score + tol || (s >= best_score - tol && points[i].0 > points[best].0) {
                            if s > best_score {
                                best_score = s;
                            }
                            best = i;
                        }
                    }
                    if in_frame[best] {
                        // numerically borderline candidate: hull already covers it
                        break;
                    }
                    in_frame[best] = true;
                    frame_cols.push(float_points[best].clone());
                    frame_idx.push(best);
                }
            }
        }
    }

    frame_idx.sort_unstable();
    Ok(frame_idx.into_iter().map(|i| points[i].clone()).collect())
}

/// Reference filter: a point is extreme iff it lies outside the hull of all
/// the others. Quadratic; cross-checks [`extremal_filter`] on small inputs.
pub fn naive_extremal_filter(
    mut points: Vec<(Vec<i64>, VertexLabel)>,
) -> Result<Vec<(Vec<i64>, VertexLabel)>, PolytopeError> {
    if points.is_empty() {
        return Err(PolytopeError::EmptyInput);
    }
    points.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    points.dedup_by(|a, b| a.0 == b.0);
    let float_points: Vec<Vec<f64>> =
        points.iter().map(|(c, _)| c.iter().map(|&v| v as f64).collect()).collect();
    let mut keep = Vec::new();
    for i in 0..points.len() {
        let others: Vec<Vec<f64>> = float_points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, c)| c.clone())
            .collect();
        if matches!(membership(&float_points[i], &others)?, Membership::Outside { .. }) {
            keep.push(points[i].clone());
        }
    }
    Ok(keep)
}

const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    n: usize,
    mode: Mode,
    coeffs: Vec<i64>,
    label: VertexLabel,
}

#[derive(Serialize, Deserialize)]
struct CacheMeta {
    version: u32,
    n: usize,
    mode: Mode,
    connected: usize,
    products: usize,
    all_points: usize,
    vertices: usize,
}

pub fn cache_file_name(mode: Mode, n: usize) -> String {
    format!("vertices_{mode}{n}.jsonl")
}

fn meta_file_name(mode: Mode, n: usize) -> String {
    format!("vertices_{mode}{n}.meta.json")
}

pub fn save_cache(polytope: &ProjectedPolytope, dir: &Path) -> Result<(), PolytopeError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(polytope.mode, polytope.n));
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for v in &polytope.vertices {
        let record = VertexRecord {
            n: polytope.n,
            mode: polytope.mode,
            coeffs: v.coords.coeffs().to_vec(),
            label: v.label.clone(),
        };
        serde_json::to_writer(&mut file, &record).map_err(std::io::Error::other)?;
        file.write_all(b"\n")?;
    }
    file.flush()?;
    let meta = CacheMeta {
        version: CACHE_VERSION,
        n: polytope.n,
        mode: polytope.mode,
        connected: polytope.connected_count,
        products: polytope.product_count,
        all_points: polytope.all_points_count,
        vertices: polytope.vertices.len(),
    };
    std::fs::write(
        dir.join(meta_file_name(polytope.mode, polytope.n)),
        serde_json::to_string_pretty(&meta).map_err(std::io::Error::other)?,
    )?;
    Ok(())
}

/// Load a cached polytope; `Ok(None)` when absent, stale-versioned or
/// malformed (callers rebuild).
pub fn load_cache(mode: Mode, n: usize, dir: &Path) -> Result<Option<ProjectedPolytope>, PolytopeError> {
    let meta_path = dir.join(meta_file_name(mode, n));
    let data_path = dir.join(cache_file_name(mode, n));
    if !meta_path.exists() || !data_path.exists() {
        return Ok(None);
    }
    let Ok(meta) = serde_json::from_str::<CacheMeta>(&std::fs::read_to_string(&meta_path)?) else {
        return Ok(None);
    };
    if meta.version != CACHE_VERSION || meta.n != n || meta.mode != mode {
        return Ok(None);
    }
    let mut vertices = Vec::with_capacity(meta.vertices);
    for line in std::io::BufReader::new(std::fs::File::open(&data_path)?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let Ok(record) = serde_json::from_str::<VertexRecord>(&line) else {
            return Ok(None);
        };
        if record.n != n || record.mode != mode {
            return Ok(None);
        }
        vertices.push(LabeledVector {
            coords: ReducedEnumerator::from_coeffs(mode, record.coeffs),
            label: record.label,
        });
    }
    if vertices.len() != meta.vertices {
        return Ok(None);
    }
    Ok(Some(ProjectedPolytope {
        n,
        mode,
        vertices,
        connected_count: meta.connected,
        product_count: meta.products,
        all_points_count: meta.all_points,
    }))
}

/// Build (or load) the projected polytope for `n` qubits, recursing over the
/// lower vertex sets. `cache_dir` persists every level.
pub fn build_polytope(
    n: usize,
    mode: Mode,
    catalog: &Catalog,
    cache_dir: Option<&Path>,
) -> Result<ProjectedPolytope, PolytopeError> {
    let mut lowers: Vec<ProjectedPolytope> = Vec::new();
    for m in 1..=n {
        if let Some(dir) = cache_dir {
            if let Some(cached) = load_cache(mode, m, dir)? {
                lowers.push(cached);
                continue;
            }
        }
        let built = build_level(m, mode, catalog, &lowers)?;
        if let Some(dir) = cache_dir {
            save_cache(&built, dir)?;
        }
        lowers.push(built);
    }
    Ok(lowers.pop().expect("n >= 1"))
}

fn build_level(
    n: usize,
    mode: Mode,
    catalog: &Catalog,
    lowers: &[ProjectedPolytope],
) -> Result<ProjectedPolytope, PolytopeError> {
    let connected = connected_projections(n, mode, catalog)?;
    let lower_refs: Vec<&ProjectedPolytope> = lowers.iter().collect();
    let products = product_projections(n, mode, &lower_refs)?;
    let connected_count = connected.len();
    let product_count = products.len();

    let mut union: HashMap<Vec<i64>, VertexLabel> =
        HashMap::with_capacity(connected_count + product_count);
    for v in connected {
        union.insert(v.coords.coeffs().to_vec(), v.label);
    }
    for v in products {
        union.entry(v.coords.coeffs().to_vec()).or_insert(v.label);
    }
    let all_points_count = union.len();

    let extremal = extremal_filter(union.into_iter().collect())?;
    Ok(ProjectedPolytope {
        n,
        mode,
        vertices: extremal
            .into_iter()
            .map(|(coeffs, label)| LabeledVector {
                coords: ReducedEnumerator::from_coeffs(mode, coeffs),
                label,
            })
            .collect(),
        connected_count,
        product_count,
        all_points_count,
    })
}

/// Recompute a vertex's coordinates from its label. `lowers[m - 1]` must hold
/// the m-qubit polytope for product labels.
pub fn recompute_label_coords(
    n: usize,
    mode: Mode,
    label: &VertexLabel,
    lowers: &[ProjectedPolytope],
) -> Result<Vec<i64>, PolytopeError> {
    match label {
        VertexLabel::Connected { edges, cosets, signs } => {
            for &op in cosets {
                if !CosetOp::alphabet(mode).contains(&op) {
                    return Err(PauliError::ModeMismatch { op, mode }.into());
                }
            }
            let graph = Graph::new(n, edges)?;
            let mut sign_mask = 0u64;
            for (q, &s) in signs.iter().enumerate() {
                sign_mask |= (s as u64 & 1) << q;
            }
            let assignment = LocalOpAssignment::new(mode, cosets.clone(), sign_mask)?;
            let group = apply_local_assignment(&graph_state_group(&graph), &assignment)?;
            let complete = enumerator::complete_enumerator(&group)?;
            Ok(enumerator::reduce(mode, &complete).coeffs().to_vec())
        }
        VertexLabel::Product { parts } => {
            let mut coeffs = vec![1i64];
            for part in parts {
                let lower = lowers
                    .get(part.n - 1)
                    .filter(|p| p.n == part.n)
                    .ok_or(PolytopeError::MissingLowerSet(part.n))?;
                let vertex = lower
                    .vertices
                    .get(part.index)
                    .ok_or(PolytopeError::MissingLowerSet(part.n))?;
                coeffs = convolve_coeffs(&coeffs, vertex.coords.coeffs());
            }
            Ok(coeffs)
        }
        VertexLabel::PairProduct { plus_pairs, minus_pairs, singles, singles_minus } => {
            let pair = crate::hierarchy::special_pair_vertices(mode);
            let mut coeffs = vec![1i64];
            for _ in 0..*plus_pairs {
                coeffs = convolve_coeffs(&coeffs, pair[0].coeffs());
            }
            for _ in 0..*minus_pairs {
                coeffs = convolve_coeffs(&coeffs, pair[1].coeffs());
            }
            let single = if *singles_minus { [1i64, -1] } else { [1i64, 1] };
            for _ in 0..*singles {
                coeffs = convolve_coeffs(&coeffs, &single);
            }
            Ok(coeffs)
        }
    }
}

/// Check that every vertex label reproduces its coordinates exactly.
pub fn verify_labels(
    polytope: &ProjectedPolytope,
    lowers: &[ProjectedPolytope],
) -> Result<(), PolytopeError> {
    for v in &polytope.vertices {
        let recomputed = recompute_label_coords(polytope.n, polytope.mode, &v.label, lowers)?;
        if recomputed != v.coords.coeffs() {
            return Err(PolytopeError::LabelMismatch {
                coords: v.coords.coeffs().to_vec(),
                recomputed,
            });
        }
    }
    Ok(())
}
