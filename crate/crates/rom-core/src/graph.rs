//! Simple graphs, local complementation, and connected representatives of
//! graph(n) modulo local complementation and isomorphism.
//!
//! Representatives for n <= 6 come from brute-force orbit closure over all
//! labelled graphs; larger n are classified by one-vertex extension of the
//! (n-1)-representatives (every connected graph has a non-cut vertex, so the
//! extension candidates hit every orbit) and shipped as catalog files.
//!
//! Isomorphism canonical forms use equitable refinement plus
//! individualization backtracking; the canonical key is the lexicographically
//! minimal upper-triangle adjacency bitstring over all relabellings.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex count {0} out of range (expected 1..={1})")]
    UnsupportedVertexCount(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{origin}:{line}: {msg}")]
    CatalogParse { origin: String, line: usize, msg: String },
    #[error("{origin}:{line}: graph is disconnected")]
    Disconnected { origin: String, line: usize },
    #[error("catalog has no representatives for n = {0}")]
    CatalogGap(usize),
    #[error("orbit enumeration supports n <= {limit}, got {0}", limit = .1)]
    OrbitLimit(usize, usize),
    #[error("catalog io: {0}")]
    Io(#[from] std::io::Error),
}

/// Largest n representable in the u32 adjacency rows.
pub const MAX_VERTICES: usize = 32;
/// Largest n for which canonical forms / orbit walks are supported (the
/// upper-triangle key must fit in a u64).
pub const MAX_CANONICAL_VERTICES: usize = 11;
/// Brute-force representative enumeration cap.
pub const MAX_ENUMERATION_VERTICES: usize = 6;
/// Exhaustive orbit-equality cap.
pub const MAX_ORBIT_WALK_VERTICES: usize = 8;

/// Simple undirected graph: symmetric adjacency with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::UnsupportedVertexCount(n, MAX_VERTICES));
        }
        let mut adj = vec![0u32; n];
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Self { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let mut rest = self.adj[a] & !((1u32 << (a + 1)) - 1);
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push((a, b));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0u32;
            let mut rest = frontier;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// Toggle every edge inside the neighbourhood of `v`. Involutive.
    pub fn local_complement(&self, v: usize) -> Result<Self, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut out = self.clone();
        let nv = self.adj[v];
        let mut rest = nv;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out.adj[a] ^= nv & !(1 << a);
        }
        out
            .adj
            .iter()
            .enumerate()
            .for_each(|(i, r)| debug_assert!(r >> i & 1 == 0, "diagonal stays zero"));
        Ok(out)
    }

    fn edge_bit(n: usize, a: usize, b: usize) -> u64 {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        let total = n * (n - 1) / 2;
        // sequential index of (i, j) in row-major upper-triangle order
        let idx = i * n - i * (i + 1) / 2 + (j - i - 1);
        1u64 << (total - 1 - idx)
    }

    /// Upper-triangle adjacency packed so that integer order equals
    /// lexicographic order on the row-major edge string.
    pub fn upper_tri_mask(&self) -> u64 {
        assert!(self.n <= MAX_CANONICAL_VERTICES);
        let mut mask = 0u64;
        for (a, b) in self.edges() {
            mask |= Self::edge_bit(self.n, a, b);
        }
        mask
    }

    pub fn from_upper_tri(n: usize, mask: u64) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_CANONICAL_VERTICES {
            return Err(GraphError::UnsupportedVertexCount(n, MAX_CANONICAL_VERTICES));
        }
        let mut adj = vec![0u32; n];
        for i in 0..n {
            for j in i + 1..n {
                if mask & Self::edge_bit(n, i, j) != 0 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        Ok(Self { n, adj })
    }

    /// Canonical key under vertex relabelling: the minimal
    /// [`Graph::upper_tri_mask`] over all permutations, computed by equitable
    /// refinement with individualization backtracking.
    pub fn canonical_form(&self) -> u64 {
        assert!(self.n <= MAX_CANONICAL_VERTICES);
        let mut best = u64::MAX;
        let cells: Vec<u8> = vec![0; self.n];
        self.canon_search(cells, 1, &mut best);
        best
    }

    fn refine(&self, cells: &mut Vec<u8>, cell_count: &mut usize) {
        let n = self.n;
        loop {
            let mut masks = vec![0u32; *cell_count];
            for v in 0..n {
                masks[cells[v] as usize] |= 1 << v;
            }
            let mut sigs: Vec<(u64, usize)> = (0..n)
                .map(|v| {
                    let mut sig = (cells[v] as u64) << 48;
                    for (c, m) in masks.iter().enumerate() {
                        sig |= ((self.adj[v] & m).count_ones() as u64) << (4 * c);
                    }
                    (sig, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut new_cells = vec![0u8; n];
            let mut id = 0u8;
            for w in 0..n {
                if w > 0 && sigs[w].0 != sigs[w - 1].0 {
                    id += 1;
                }
                new_cells[sigs[w].1] = id;
            }
            let new_count = id as usize + 1;
            if new_count == *cell_count {
                *cells = new_cells;
                return;
            }
            *cells = new_cells;
            *cell_count = new_count;
        }
    }

    fn canon_search(&self, mut cells: Vec<u8>, mut cell_count: usize, best: &mut u64) {
        self.refine(&mut cells, &mut cell_count);
        if cell_count == self.n {
            // discrete: position of v is its cell id
            let mut at = vec![0usize; self.n];
            for v in 0..self.n {
                at[cells[v] as usize] = v;
            }
            let mut mask = 0u64;
            for i in 0..self.n {
                for j in i + 1..self.n {
                    if self.has_edge(at[i], at[j]) {
                        mask |= Self::edge_bit(self.n, i, j);
                    }
                }
            }
            *best = (*best).min(mask);
            return;
        }
        let target = (0..cell_count as u8)
            .find(|&c| cells.iter().filter(|&&x| x == c).count() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        for v in 0..self.n {
            if cells[v] != target {
                continue;
            }
            let branched: Vec<u8> = cells
                .iter()
                .enumerate()
                .map(|(u, &c)| {
                    if u == v {
                        c
                    } else if c > target {
                        c + 1
                    } else if c == target {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            self.canon_search(branched, cell_count + 1, best);
        }
    }

    fn lc_neighbour_classes(&self, visit: &mut impl FnMut(Graph)) {
        for v in 0..self.n {
            if self.degree(v) >= 2 {
                visit(self.local_complement(v).expect("vertex in range"));
            }
        }
    }
}

/// Breadth-first closure of the LC+isomorphism orbit of `start`, keyed by
/// canonical form. Returns the visited form set and the minimal form.
fn orbit_closure(start: &Graph, mut on_form: impl FnMut(u64)) -> u64 {
    let mut min_form = start.canonical_form();
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(min_form);
    on_form(min_form);
    let mut queue: VecDeque<Graph> = VecDeque::new();
    queue.push_back(start.clone());
    while let Some(g) = queue.pop_front() {
        g.lc_neighbour_classes(&mut |h| {
            let form = h.canonical_form();
            if seen.insert(form) {
                on_form(form);
                min_form = min_form.min(form);
                queue.push_back(h);
            }
        });
    }
    min_form
}

/// One connected representative per orbit of graph(n) under local
/// complementation + isomorphism, n <= 6 by exhaustive closure over all
/// labelled graphs. Representatives are the lexicographically minimal
/// adjacency over the whole orbit, returned in ascending key order.
pub fn enumerate_representatives(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n == 0 || n > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::OrbitLimit(n, MAX_ENUMERATION_VERTICES));
    }
    let edge_bits = n * (n - 1) / 2;
    let mut visited: HashSet<u64> = HashSet::new();
    let mut reps: Vec<u64> = Vec::new();
    for mask in 0..1u64 << edge_bits {
        let g = Graph::from_upper_tri(n, mask)?;
        if !g.is_connected() {
            continue;
        }
        if visited.contains(&g.canonical_form()) {
            continue;
        }
        let min_form = orbit_closure(&g, |form| {
            visited.insert(form);
        });
        reps.push(min_form);
    }
    reps.sort_unstable();
    reps.into_iter().map(|m| Graph::from_upper_tri(n, m)).collect()
}

/// True iff the graphs lie in the same LC+isomorphism orbit (exhaustive walk,
/// n <= 8).
pub fn graph_orbit_equal(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    if a.n() != b.n() {
        return Ok(false);
    }
    if a.n() > MAX_ORBIT_WALK_VERTICES {
        return Err(GraphError::OrbitLimit(a.n(), MAX_ORBIT_WALK_VERTICES));
    }
    let target = b.canonical_form();
    if a.canonical_form() == target {
        return Ok(true);
    }
    let mut found = false;
    orbit_closure(a, |form| {
        if form == target {
            found = true;
        }
    });
    Ok(found)
}

/// Classify connected LC+isomorphism orbits for any n <= 11 by extending the
/// (n-1)-representatives with one vertex. Matches
/// [`enumerate_representatives`] for n <= 6. Used to generate catalogs.
pub fn classify_representatives(n: usize, mut progress: Option<&mut dyn FnMut(usize, usize)>) -> Result<Vec<Graph>, GraphError> {
    if n == 0 || n > MAX_CANONICAL_VERTICES {
        return Err(GraphError::OrbitLimit(n, MAX_CANONICAL_VERTICES));
    }
    if n == 1 {
        return Ok(vec![Graph::new(1, &[])?]);
    }
    let prev = classify_representatives(n - 1, None)?;
    let mut visited: HashSet<u64> = HashSet::new();
    let mut reps: Vec<u64> = Vec::new();
    let total = prev.len() * ((1usize << (n - 1)) - 1);
    let mut done = 0usize;
    for base in &prev {
        for hood in 1u32..1 << (n - 1) {
            done += 1;
            if let Some(cb) = progress.as_deref_mut() {
                if done % 4096 == 0 {
                    cb(done, total);
                }
            }
            let mut adj = base.adj.clone();
            adj.push(hood);
            for (v, row) in adj.iter_mut().enumerate().take(n - 1) {
                if hood >> v & 1 == 1 {
                    *row |= 1 << (n - 1);
                }
            }
            let candidate = Graph { n, adj };
            if visited.contains(&candidate.canonical_form()) {
                continue;
            }
            let min_form = orbit_closure(&candidate, |form| {
                visited.insert(form);
            });
            reps.push(min_form);
        }
    }
    reps.sort_unstable();
    reps.into_iter().map(|m| Graph::from_upper_tri(n, m)).collect()
}

/// Connected orbit representatives keyed by vertex count, loaded from catalog
/// files or built in.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<usize, Vec<Graph>>,
    pub warnings: Vec<String>,
}

impl Catalog {
    /// Parse the line-per-record format `n=<int>; edges=[(a,b),...]`.
    /// `#` starts a comment. Disconnected graphs and self-loops are rejected;
    /// duplicate-orbit entries are dropped with a warning (orbit-exact for
    /// n <= 8, isomorphism-exact beyond).
    pub fn parse(text: &str, origin: &str) -> Result<Self, GraphError> {
        let mut catalog = Catalog::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let graph = parse_record(line, origin, line_no)?;
            if !graph.is_connected() {
                return Err(GraphError::Disconnected { origin: origin.to_string(), line: line_no });
            }
            catalog.insert_checked(graph, origin, line_no)?;
        }
        Ok(catalog)
    }

    fn insert_checked(&mut self, graph: Graph, origin: &str, line_no: usize) -> Result<(), GraphError> {
        let n = graph.n();
        let bucket = self.entries.entry(n).or_default();
        let duplicate = if n <= MAX_ORBIT_WALK_VERTICES {
            bucket.iter().try_fold(false, |acc, kept| {
                Ok::<bool, GraphError>(acc || graph_orbit_equal(kept, &graph)?)
            })?
        } else {
            let form = graph.canonical_form();
            bucket.iter().any(|kept| kept.canonical_form() == form)
        };
        if duplicate {
            self.warnings.push(format!("{origin}:{line_no}: duplicate orbit entry for n={n} dropped"));
        } else {
            bucket.push(graph);
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, GraphError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Built-in representatives: n <= 6 enumerated on the fly, n = 7..10 from
    /// the shipped catalog data.
    pub fn builtin() -> Self {
        let mut catalog = Catalog::default();
        for n in 1..=MAX_ENUMERATION_VERTICES {
            catalog.entries.insert(n, enumerate_representatives(n).expect("n <= 6 enumerable"));
        }
        for (n, text) in [
            (7usize, include_str!("../data/catalogs/graphs_n7.cat")),
            (8, include_str!("../data/catalogs/graphs_n8.cat")),
            (9, include_str!("../data/catalogs/graphs_n9.cat")),
            (10, include_str!("../data/catalogs/graphs_n10.cat")),
        ] {
            let mut graphs = Vec::new();
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let g = parse_record(line, "builtin", idx + 1).expect("builtin catalog parses");
                debug_assert!(g.n() == n && g.is_connected());
                graphs.push(g);
            }
            if !graphs.is_empty() {
                catalog.entries.insert(n, graphs);
            }
        }
        catalog
    }

    pub fn covers(&self, n: usize) -> bool {
        self.entries.contains_key(&n)
    }

    pub fn max_n(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn representatives(&self, n: usize) -> Result<&[Graph], GraphError> {
        self.entries.get(&n).map(|v| v.as_slice()).ok_or(GraphError::CatalogGap(n))
    }

    pub fn insert(&mut self, n: usize, graphs: Vec<Graph>) {
        self.entries.insert(n, graphs);
    }

    /// Merge records from `other`, replacing whole-n buckets.
    pub fn extend_from(&mut self, other: Catalog) {
        for (n, graphs) in other.entries {
            self.entries.insert(n, graphs);
        }
        self.warnings.extend(other.warnings);
    }

    pub fn format_records(n: usize, graphs: &[Graph]) -> String {
        let mut out = String::new();
        out.push_str(&format!("# connected LC+isomorphism orbit representatives, n={n}, count={}\n", graphs.len()));
        for g in graphs {
            let edges: Vec<String> = g.edges().iter().map(|(a, b)| format!("({a},{b})")).collect();
            out.push_str(&format!("n={n}; edges=[{}]\n", edges.join(",")));
        }
        out
    }
}

fn parse_record(line: &str, origin: &str, line_no: usize) -> Result<Graph, GraphError> {
    let err = |msg: &str| GraphError::CatalogParse {
        origin: origin.to_string(),
        line: line_no,
        msg: msg.to_string(),
    };
    let (n_part, edges_part) = line.split_once(';').ok_or_else(|| err("expected `n=<int>; edges=[...]`"))?;
    let n: usize = n_part
        .trim()
        .strip_prefix("n=")
        .ok_or_else(|| err("missing `n=`"))?
        .trim()
        .parse()
        .map_err(|_| err("bad vertex count"))?;
    let body = edges_part
        .trim()
        .strip_prefix("edges=[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err("missing `edges=[...]`"))?;
    let mut edges = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| err("expected `(a,b)`"))?;
        let (pair, tail) = open.split_once(')').ok_or_else(|| err("unterminated edge pair"))?;
        let (a, b) = pair.split_once(',').ok_or_else(|| err("edge needs two vertices"))?;
        let a: usize = a.trim().parse().map_err(|_| err("bad vertex index"))?;
        let b: usize = b.trim().parse().map_err(|_| err("bad vertex index"))?;
        edges.push((a, b));
        rest = tail.trim().strip_prefix(',').unwrap_or(tail).trim();
    }
    Graph::new(n, &edges).map_err(|e| err(&e.to_string()))
}
