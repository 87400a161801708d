//! The Aztec graph of order `n`: face coordinates, perfect-matching
//! enumeration (the brute-force oracle of the whole crate), weight
//! evaluation, and the correspondence between matchings and pairs of
//! alternating sign matrices.
//!
//! Coordinates: faces sit at integer points `(k, l)` with `|k| + |l| <= n`;
//! the vertex stored as `(i, j)` is centered at `(i + 1/2, j + 1/2)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::asm::{compatible, Asm};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

const DEFAULT_MAX_MATCHING_ORDER: usize = 5;

pub fn max_matching_order() -> usize {
    std::env::var("LAMDET_MAX_MATCHING_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_MATCHING_ORDER)
}

/// Vertex of the Aztec graph, centered at `(i + 1/2, j + 1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex(pub i32, pub i32);

/// Undirected unit edge; kept with endpoints in sorted order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.0 .0 == self.1 .0
    }

    /// The row label `a` of a vertical dimer, or the column label `b` of a
    /// horizontal one (the shared coordinate of its two adjacent faces).
    pub fn bias_index(&self) -> i32 {
        if self.is_vertical() {
            self.0 .1.max(self.1 .1) // = j + 1 for edge (i,j)-(i,j+1)
        } else {
            self.0 .0.max(self.1 .0)
        }
    }
}

/// Face center `(k, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(pub i32, pub i32);

/// Which weight matrix a face belongs to, with its 1-based matrix indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceKind {
    P(usize, usize),
    Q(usize, usize),
}

#[derive(Clone, Copy, Debug)]
pub struct AztecGraph {
    n: usize,
}

impl AztecGraph {
    pub fn new(n: usize) -> AztecGraph {
        assert!(n >= 1);
        AztecGraph { n }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (2 * v.0 + 1).unsigned_abs() + (2 * v.1 + 1).unsigned_abs() <= 2 * self.n as u32
    }

    /// Vertices sorted by (row, column).
    pub fn vertices(&self) -> Vec<Vertex> {
        let n = self.n as i32;
        let mut out = Vec::new();
        for j in -n..n {
            for i in -n..n {
                let v = Vertex(i, j);
                if self.contains_vertex(v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for v in self.vertices() {
            for w in [Vertex(v.0 + 1, v.1), Vertex(v.0, v.1 + 1)] {
                if self.contains_vertex(w) {
                    out.push(Edge::new(v, w));
                }
            }
        }
        out.sort();
        out
    }

    pub fn faces(&self) -> Vec<Face> {
        let n = self.n as i32;
        let mut out = Vec::new();
        for k in -n..=n {
            for l in -n..=n {
                if k.abs() + l.abs() <= n {
                    out.push(Face(k, l));
                }
            }
        }
        out
    }

    pub fn is_boundary_face(&self, f: Face) -> bool {
        f.0.abs() + f.1.abs() == self.n as i32
    }

    /// The edges of the graph bordering the unit square of face `f`.
    pub fn face_edges(&self, f: Face) -> Vec<Edge> {
        let (k, l) = (f.0, f.1);
        let corners = [
            Vertex(k - 1, l - 1),
            Vertex(k, l - 1),
            Vertex(k - 1, l),
            Vertex(k, l),
        ];
        let candidates = [
            Edge::new(corners[0], corners[1]), // south
            Edge::new(corners[2], corners[3]), // north
            Edge::new(corners[0], corners[2]), // west
            Edge::new(corners[1], corners[3]), // east
        ];
        candidates
            .into_iter()
            .filter(|e| self.contains_vertex(e.0) && self.contains_vertex(e.1))
            .collect()
    }

    /// Classifies a face as a `P` or `Q` entry. `p_ij` sits at
    /// `(i + j - n - 2, j - i)` and `q_ij` at `(i + j - n - 1, j - i)`.
    pub fn face_kind(&self, f: Face) -> FaceKind {
        let n = self.n as i32;
        let (k, l) = (f.0, f.1);
        if (k + l - n).rem_euclid(2) == 0 {
            let i = (k + n + 2 - l) / 2;
            let j = (k + n + 2 + l) / 2;
            FaceKind::P(i as usize, j as usize)
        } else {
            let i = (k + n + 1 - l) / 2;
            let j = (k + n + 1 + l) / 2;
            FaceKind::Q(i as usize, j as usize)
        }
    }

    pub fn p_face(&self, i: usize, j: usize) -> Face {
        let n = self.n as i32;
        Face(i as i32 + j as i32 - n - 2, j as i32 - i as i32)
    }

    pub fn q_face(&self, i: usize, j: usize) -> Face {
        let n = self.n as i32;
        Face(i as i32 + j as i32 - n - 1, j as i32 - i as i32)
    }
}

/// Vertical/horizontal bias attached to dimers.
#[derive(Clone, Debug)]
pub enum Bias {
    /// Weight `sqrt(lambda)` per vertical dimer.
    Homogeneous(Scalar),
    /// Weight `sqrt(lambda_a)` per vertical dimer in row `a` and
    /// `sqrt(mu_b)` per horizontal dimer in column `b`; vectors are indexed
    /// by `a + (n-1)` and have length `2n - 1`.
    Inhomogeneous {
        lambdas: Vec<Scalar>,
        mus: Vec<Scalar>,
    },
}

/// Face weights `(P, Q)` plus an edge bias.
#[derive(Clone, Debug)]
pub struct AztecWeighting {
    pub n: usize,
    pub p: SquareMatrix,
    pub q: SquareMatrix,
    pub bias: Bias,
}

impl AztecWeighting {
    pub fn new(p: SquareMatrix, q: SquareMatrix, bias: Bias) -> Result<AztecWeighting> {
        let n = q.order();
        if p.order() != n + 1 {
            return Err(Error::SizeMismatch(format!(
                "P has order {}, expected {}",
                p.order(),
                n + 1
            )));
        }
        if let Bias::Inhomogeneous { lambdas, mus } = &bias {
            if lambdas.len() != 2 * n - 1 || mus.len() != 2 * n - 1 {
                return Err(Error::SizeMismatch(format!(
                    "bias vectors must have length {}",
                    2 * n - 1
                )));
            }
        }
        Ok(AztecWeighting { n, p, q, bias })
    }

    pub fn uniform(n: usize, lambda: Scalar) -> AztecWeighting {
        AztecWeighting {
            n,
            p: SquareMatrix::all_ones(n + 1),
            q: SquareMatrix::all_ones(n),
            bias: Bias::Homogeneous(lambda),
        }
    }

    /// Builds the `(P, Q)` matrices from a weight per face.
    pub fn from_face_fn(
        n: usize,
        mut f: impl FnMut(Face) -> Scalar,
        bias: Bias,
    ) -> AztecWeighting {
        let g = AztecGraph::new(n);
        let p = SquareMatrix::from_fn(n + 1, |i, j| f(g.p_face(i, j)));
        let q = SquareMatrix::from_fn(n, |i, j| f(g.q_face(i, j)));
        AztecWeighting { n, p, q, bias }
    }

    pub fn face_weight(&self, g: &AztecGraph, f: Face) -> &Scalar {
        match g.face_kind(f) {
            FaceKind::P(i, j) => self.p.get(i, j),
            FaceKind::Q(i, j) => self.q.get(i, j),
        }
    }

    fn bias_factor(&self, vertical_by_row: &HashMap<i32, u32>, horizontal_by_col: &HashMap<i32, u32>) -> Result<Scalar> {
        let n = self.n as i32;
        let mut acc = Scalar::one();
        match &self.bias {
            Bias::Homogeneous(lambda) => {
                let total: u32 = vertical_by_row.values().sum();
                debug_assert!(total.is_multiple_of(2));
                acc = acc.mul(&lambda.pow((total / 2) as i64)?);
            }
            Bias::Inhomogeneous { lambdas, mus } => {
                for (&a, &cnt) in vertical_by_row {
                    debug_assert!(cnt % 2 == 0);
                    let idx = (a + n - 1) as usize;
                    acc = acc.mul(&lambdas[idx].pow((cnt / 2) as i64)?);
                }
                for (&b, &cnt) in horizontal_by_col {
                    debug_assert!(cnt % 2 == 0);
                    let idx = (b + n - 1) as usize;
                    acc = acc.mul(&mus[idx].pow((cnt / 2) as i64)?);
                }
            }
        }
        Ok(acc)
    }
}

/// A perfect matching of the order-`n` Aztec graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PerfectMatching {
    n: usize,
    dimers: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    n: usize,
    dimers: Vec<[[i32; 2]; 2]>,
}

impl PerfectMatching {
    /// Validates that the edge set is a perfect matching of the order-`n`
    /// graph.
    pub fn new(n: usize, mut dimers: Vec<Edge>) -> Result<PerfectMatching> {
        let g = AztecGraph::new(n);
        dimers.sort();
        let mut covered: HashMap<Vertex, u32> = HashMap::new();
        for e in &dimers {
            let dx = (e.1 .0 - e.0 .0).abs();
            let dy = (e.1 .1 - e.0 .1).abs();
            if dx + dy != 1 || !g.contains_vertex(e.0) || !g.contains_vertex(e.1) {
                return Err(Error::SizeMismatch(format!("bad edge {e:?}")));
            }
            *covered.entry(e.0).or_insert(0) += 1;
            *covered.entry(e.1).or_insert(0) += 1;
        }
        let vs = g.vertices();
        if covered.len() != vs.len() || covered.values().any(|&c| c != 1) {
            return Err(Error::SizeMismatch(
                "edge set does not cover every vertex exactly once".into(),
            ));
        }
        Ok(PerfectMatching { n, dimers })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn dimers(&self) -> &[Edge] {
        &self.dimers
    }

    /// Number of dimers adjacent to each face.
    pub fn face_counts(&self) -> HashMap<Face, u32> {
        let g = AztecGraph::new(self.n);
        let set: std::collections::HashSet<Edge> = self.dimers.iter().copied().collect();
        let mut out = HashMap::new();
        for f in g.faces() {
            let cnt = g
                .face_edges(f)
                .into_iter()
                .filter(|e| set.contains(e))
                .count() as u32;
            out.insert(f, cnt);
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatchingJson {
            n: self.n,
            dimers: self
                .dimers
                .iter()
                .map(|e| [[e.0 .0, e.0 .1], [e.1 .0, e.1 .1]])
                .collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<PerfectMatching> {
        let parsed: MatchingJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let dimers = parsed
            .dimers
            .iter()
            .map(|d| Edge::new(Vertex(d[0][0], d[0][1]), Vertex(d[1][0], d[1][1])))
            .collect();
        PerfectMatching::new(parsed.n, dimers)
    }

    /// Rotates the two dimers around a face adjacent to exactly two
    /// parallel dimers.
    pub fn flip(&self, f: Face) -> Option<PerfectMatching> {
        let g = AztecGraph::new(self.n);
        let edges = g.face_edges(f);
        if edges.len() != 4 {
            return None;
        }
        let present: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| self.dimers.binary_search(e).is_ok())
            .collect();
        if present.len() != 2 || present[0].is_vertical() != present[1].is_vertical() {
            return None;
        }
        let mut dimers: Vec<Edge> = self
            .dimers
            .iter()
            .copied()
            .filter(|e| !present.contains(e))
            .collect();
        for e in edges {
            if !present.contains(&e) {
                dimers.push(e);
            }
        }
        PerfectMatching::new(self.n, dimers).ok()
    }
}

/// Every perfect matching of the order-`n` Aztec graph, in a deterministic
/// order (exact-cover recursion over vertices in (row, column) order).
pub fn enumerate_matchings(n: usize) -> Result<Vec<PerfectMatching>> {
    let bound = max_matching_order();
    if n == 0 || n > bound {
        return Err(Error::SizeTooLarge(n, bound));
    }
    let g = AztecGraph::new(n);
    let vertices = g.vertices();
    let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut covered = vec![false; vertices.len()];
    let mut chosen: Vec<Edge> = Vec::with_capacity(vertices.len() / 2);
    let mut out = Vec::new();
    fn recurse(
        g: &AztecGraph,
        vertices: &[Vertex],
        index: &HashMap<Vertex, usize>,
        covered: &mut Vec<bool>,
        chosen: &mut Vec<Edge>,
        out: &mut Vec<PerfectMatching>,
    ) {
        let next = match covered.iter().position(|&c| !c) {
            Some(k) => k,
            None => {
                out.push(PerfectMatching {
                    n: g.order(),
                    dimers: {
                        let mut d = chosen.clone();
                        d.sort();
                        d
                    },
                });
                return;
            }
        };
        let v = vertices[next];
        covered[next] = true;
        // Partners in (row, column) order.
        for w in [
            Vertex(v.0, v.1 - 1),
            Vertex(v.0 - 1, v.1),
            Vertex(v.0 + 1, v.1),
            Vertex(v.0, v.1 + 1),
        ] {
            if let Some(&wi) = index.get(&w) {
                if !covered[wi] {
                    covered[wi] = true;
                    chosen.push(Edge::new(v, w));
                    recurse(g, vertices, index, covered, chosen, out);
                    chosen.pop();
                    covered[wi] = false;
                }
            }
        }
        covered[next] = false;
    }
    recurse(&g, &vertices, &index, &mut covered, &mut chosen, &mut out);
    Ok(out)
}

/// Weight of a matching: product over faces of `x^(1-N)` times the bias.
pub fn matching_weight(m: &PerfectMatching, w: &AztecWeighting) -> Result<Scalar> {
    if m.order() != w.n {
        return Err(Error::OrderMismatch);
    }
    let g = AztecGraph::new(w.n);
    let counts = m.face_counts();
    let mut acc = Scalar::one();
    for f in g.faces() {
        let x = w.face_weight(&g, f);
        let e = 1 - counts[&f] as i64;
        if e == 0 {
            continue;
        }
        if x.is_zero() {
            if e > 0 {
                return Ok(Scalar::zero());
            }
            return Err(Error::DivisionByZero);
        }
        acc = acc.mul(&x.pow(e)?);
    }
    let mut vertical_by_row: HashMap<i32, u32> = HashMap::new();
    let mut horizontal_by_col: HashMap<i32, u32> = HashMap::new();
    for e in m.dimers() {
        if e.is_vertical() {
            *vertical_by_row.entry(e.bias_index()).or_insert(0) += 1;
        } else {
            *horizontal_by_col.entry(e.bias_index()).or_insert(0) += 1;
        }
    }
    Ok(acc.mul(&w.bias_factor(&vertical_by_row, &horizontal_by_col)?))
}

/// Brute-force partition function: the project-wide oracle.
pub fn partition_brute(w: &AztecWeighting) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for m in enumerate_matchings(w.n)? {
        acc = acc.add(&matching_weight(&m, w)?);
    }
    Ok(acc)
}

/// Reads off the pair of alternating sign matrices of a matching:
/// `b_ij = 1 - N` on P faces, `b'_ij = N - 1` on Q faces.
pub fn matching_to_asm_pair(m: &PerfectMatching) -> (Asm, Asm) {
    let g = AztecGraph::new(m.order());
    let counts = m.face_counts();
    let n = m.order();
    let b_rows: Vec<Vec<i64>> = (1..=n + 1)
        .map(|i| {
            (1..=n + 1)
                .map(|j| 1 - counts[&g.p_face(i, j)] as i64)
                .collect()
        })
        .collect();
    let bp_rows: Vec<Vec<i64>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| counts[&g.q_face(i, j)] as i64 - 1)
                .collect()
        })
        .collect();
    let b = Asm::validate(&b_rows).expect("P-face counts of a matching form an ASM");
    let bp = Asm::validate(&bp_rows).expect("Q-face counts of a matching form an ASM");
    debug_assert!(compatible(&b, &bp).unwrap());
    (b, bp)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeState {
    Unknown,
    Dimer,
    Free,
}

/// Reconstructs the unique matching associated with a compatible pair by
/// constraint propagation on the face adjacency counts.
pub fn asm_pair_to_matching(b: &Asm, bp: &Asm) -> Result<PerfectMatching> {
    if !compatible(b, bp)? {
        return Err(Error::Incompatible);
    }
    let n = bp.order();
    let g = AztecGraph::new(n);
    let edges = g.edges();
    let index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    // Per-face target counts and edge lists.
    let faces = g.faces();
    let mut face_edges: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
    let mut target: Vec<u32> = Vec::with_capacity(faces.len());
    for &f in &faces {
        face_edges.push(g.face_edges(f).iter().map(|e| index[e]).collect());
        let t = match g.face_kind(f) {
            FaceKind::P(i, j) => 1 - b.get(i, j) as i32,
            FaceKind::Q(i, j) => 1 + bp.get(i, j) as i32,
        };
        target.push(t as u32);
    }
    let vertices = g.vertices();
    let vindex: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut vertex_edges: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (ei, e) in edges.iter().enumerate() {
        vertex_edges[vindex[&e.0]].push(ei);
        vertex_edges[vindex[&e.1]].push(ei);
    }

    let mut state = vec![EdgeState::Unknown; edges.len()];
    solve(&face_edges, &target, &vertex_edges, &mut state).ok_or(Error::Incompatible)?;
    let dimers: Vec<Edge> = edges
        .iter()
        .enumerate()
        .filter(|(i, _)| state[*i] == EdgeState::Dimer)
        .map(|(_, &e)| e)
        .collect();
    PerfectMatching::new(n, dimers)
}

fn solve(
    face_edges: &[Vec<usize>],
    target: &[u32],
    vertex_edges: &[Vec<usize>],
    state: &mut [EdgeState],
) -> Option<()> {
    if !propagate(face_edges, target, vertex_edges, state) {
        return None;
    }
    let unknown = state.iter().position(|&s| s == EdgeState::Unknown);
    let ei = match unknown {
        None => return Some(()),
        Some(ei) => ei,
    };
    // Theory gives uniqueness; the branch is a safety net for propagation
    // stalls.
    for guess in [EdgeState::Dimer, EdgeState::Free] {
        let mut copy = state.to_vec();
        copy[ei] = guess;
        if solve(face_edges, target, vertex_edges, &mut copy).is_some() {
            state.copy_from_slice(&copy);
            return Some(());
        }
    }
    None
}

fn propagate(
    face_edges: &[Vec<usize>],
    target: &[u32],
    vertex_edges: &[Vec<usize>],
    state: &mut [EdgeState],
) -> bool {
    loop {
        let mut changed = false;
        for (fi, es) in face_edges.iter().enumerate() {
            let dimers = es.iter().filter(|&&e| state[e] == EdgeState::Dimer).count() as u32;
            let unknown: Vec<usize> = es
                .iter()
                .copied()
                .filter(|&e| state[e] == EdgeState::Unknown)
                .collect();
            let t = target[fi];
            if dimers > t || dimers + (unknown.len() as u32) < t {
                return false;
            }
            if unknown.is_empty() {
                continue;
            }
            if dimers == t {
                for e in unknown {
                    state[e] = EdgeState::Free;
                }
                changed = true;
            } else if dimers + (unknown.len() as u32) == t {
                for e in unknown {
                    state[e] = EdgeState::Dimer;
                }
                changed = true;
            }
        }
        for es in vertex_edges {
            let dimers = es.iter().filter(|&&e| state[e] == EdgeState::Dimer).count();
            let unknown: Vec<usize> = es
                .iter()
                .copied()
                .filter(|&e| state[e] == EdgeState::Unknown)
                .collect();
            if dimers > 1 || (dimers == 0 && unknown.is_empty()) {
                return false;
            }
            if dimers == 1 && !unknown.is_empty() {
                for e in unknown {
                    state[e] = EdgeState::Free;
                }
                changed = true;
            } else if dimers == 0 && unknown.len() == 1 {
                state[unknown[0]] = EdgeState::Dimer;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}
