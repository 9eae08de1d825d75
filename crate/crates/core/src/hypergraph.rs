//! Core combinatorial objects: triples, loose paths, loose cycles.
//!
//! A loose path of length `l` is a vertex sequence `u_0, u_1, ..., u_{2l}`
//! whose i-th edge is `{u_{2i}, u_{2i+1}, u_{2i+2}}`; consecutive edges share
//! exactly one vertex (the connector) and non-consecutive edges are disjoint.
//! A loose cycle reads the sequence cyclically over `2l` vertices.
//! Vertices are dense 0-based indices.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge vertices must be distinct: {{{0}, {1}, {2}}}")]
    DegenerateEdge(usize, usize, usize),
    #[error("not a loose path: {0}")]
    NotALoosePath(String),
    #[error("not a loose cycle: {0}")]
    NotALooseCycle(String),
    #[error("bridge edge #{index} {edge:?} does not contain the running end vertex {end}")]
    BridgeMismatch { index: usize, edge: [usize; 3], end: usize },
    #[error("second path does not start at the bridge end vertex {0}")]
    TailMismatch(usize),
    #[error("prefix length {want} out of range 1..={have}")]
    PrefixOutOfRange { want: usize, have: usize },
    #[error("window [{start}, {start}+5) does not fit a host on {host_len} vertices")]
    WindowOutOfRange { start: usize, host_len: usize },
}

/// An unordered triple stored strictly ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: usize,
    b: usize,
    c: usize,
}

impl Edge {
    pub fn new(x: usize, y: usize, z: usize) -> Result<Self, HypergraphError> {
        if x == y || y == z || x == z {
            return Err(HypergraphError::DegenerateEdge(x, y, z));
        }
        let mut v = [x, y, z];
        v.sort_unstable();
        Ok(Edge { a: v[0], b: v[1], c: v[2] })
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    pub fn max_vertex(&self) -> usize {
        self.c
    }
}

/// True iff `vertices` spells a loose path: odd length >= 3, all entries distinct.
pub fn is_loose_path(vertices: &[usize]) -> bool {
    if vertices.len() < 3 || vertices.len().is_multiple_of(2) {
        return false;
    }
    let mut seen = vertices.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// A loose path held as its vertex sequence. Edge `i` is
/// `{verts[2i], verts[2i+1], verts[2i+2]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoosePath {
    verts: Vec<usize>,
}

impl LoosePath {
    pub fn new(verts: Vec<usize>) -> Result<Self, HypergraphError> {
        if !is_loose_path(&verts) {
            return Err(HypergraphError::NotALoosePath(format!(
                "sequence of {} vertices is not odd >= 3 with distinct entries",
                verts.len()
            )));
        }
        Ok(LoosePath { verts })
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        (self.verts.len() - 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.verts
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        *self.verts.last().unwrap()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    /// Edges in path order, each sorted ascending.
    pub fn edges(&self) -> Vec<Edge> {
        self.verts
            .windows(3)
            .step_by(2)
            .map(|w| Edge::new(w[0], w[1], w[2]).expect("validated on construction"))
            .collect()
    }

    /// Same path walked from the other end.
    pub fn reversed(&self) -> LoosePath {
        let mut v = self.verts.clone();
        v.reverse();
        LoosePath { verts: v }
    }
}

/// First `len` edges of `p` as a path.
pub fn prefix(p: &LoosePath, len: usize) -> Result<LoosePath, HypergraphError> {
    if len < 1 || len > p.len() {
        return Err(HypergraphError::PrefixOutOfRange { want: len, have: p.len() });
    }
    LoosePath::new(p.vertices()[..2 * len + 1].to_vec())
}

/// Joins `p1`, a run of bridge edges, and optionally `p2` into one path.
///
/// Each bridge edge must contain the running end vertex; of its two remaining
/// vertices the one shared with the next element (next bridge edge, or the
/// first vertex of `p2`) becomes the new connector, ascending order breaking
/// ties when nothing follows. The combined sequence is re-validated, so any
/// structural violation is rejected.
pub fn concat(
    p1: &LoosePath,
    bridge: &[Edge],
    p2: Option<&LoosePath>,
) -> Result<LoosePath, HypergraphError> {
    let mut seq = p1.vertices().to_vec();
    for (index, e) in bridge.iter().enumerate() {
        let end = *seq.last().unwrap();
        if !e.contains(end) {
            return Err(HypergraphError::BridgeMismatch { index, edge: e.vertices(), end });
        }
        let rest: Vec<usize> = e.vertices().iter().copied().filter(|&v| v != end).collect();
        let in_next = |v: usize| -> bool {
            if index + 1 < bridge.len() {
                bridge[index + 1].contains(v)
            } else if let Some(p) = p2 {
                v == p.first()
            } else {
                false
            }
        };
        let (interior, connector) = if in_next(rest[1]) && !in_next(rest[0]) {
            (rest[0], rest[1])
        } else if in_next(rest[0]) && !in_next(rest[1]) {
            (rest[1], rest[0])
        } else {
            (rest[0], rest[1])
        };
        seq.push(interior);
        seq.push(connector);
    }
    if let Some(p) = p2 {
        let end = *seq.last().unwrap();
        if p.first() != end {
            return Err(HypergraphError::TailMismatch(end));
        }
        seq.extend_from_slice(&p.vertices()[1..]);
    }
    LoosePath::new(seq)
}

/// A loose cycle held as `2l` vertices read cyclically; edge `i` is
/// `{verts[2i], verts[2i+1], verts[(2i+2) mod 2l]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooseCycle {
    verts: Vec<usize>,
}

impl LooseCycle {
    pub fn new(verts: Vec<usize>) -> Result<Self, HypergraphError> {
        if verts.len() < 6 || !verts.len().is_multiple_of(2) {
            return Err(HypergraphError::NotALooseCycle(format!(
                "sequence of {} vertices is not even >= 6",
                verts.len()
            )));
        }
        let mut seen = verts.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(HypergraphError::NotALooseCycle("repeated vertex".into()));
        }
        Ok(LooseCycle { verts })
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    /// Edges in cyclic order; the last edge wraps back to `verts[0]`.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.len();
        (0..n)
            .map(|i| {
                Edge::new(
                    self.verts[2 * i],
                    self.verts[2 * i + 1],
                    self.verts[(2 * i + 2) % self.verts.len()],
                )
                .expect("validated on construction")
            })
            .collect()
    }
}

/// Five consecutive vertices of a host path, addressed by start offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexWindow {
    pub start: usize,
}

impl VertexWindow {
    pub fn vertices(&self, host: &LoosePath) -> Result<[usize; 5], HypergraphError> {
        let hv = host.vertices();
        if self.start + 5 > hv.len() {
            return Err(HypergraphError::WindowOutOfRange {
                start: self.start,
                host_len: hv.len(),
            });
        }
        Ok([
            hv[self.start],
            hv[self.start + 1],
            hv[self.start + 2],
            hv[self.start + 3],
            hv[self.start + 4],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn loose_path_predicate() {
        assert!(is_loose_path(&[0, 1, 2, 3, 4]));
        assert!(!is_loose_path(&[0, 1, 2, 2, 4]));
        assert!(!is_loose_path(&[0, 1, 2, 3]));
        assert!(!is_loose_path(&[0]));
        assert!(is_loose_path(&[5, 0, 3]));
    }

    #[test]
    fn path_edges_in_order() {
        let p = LoosePath::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(
            p.edges(),
            vec![Edge::new(0, 1, 2).unwrap(), Edge::new(2, 3, 4).unwrap()]
        );
        let single = LoosePath::new(vec![5, 0, 3]).unwrap();
        assert_eq!(single.edges(), vec![Edge::new(0, 3, 5).unwrap()]);
        let p3 = LoosePath::new(vec![0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(p3.edges().len(), 3);
        assert_eq!(p3.edges()[2], Edge::new(4, 5, 6).unwrap());
    }

    #[test]
    fn cycle_edges_wrap() {
        let c = LooseCycle::new(vec![0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(
            c.edges(),
            vec![
                Edge::new(0, 1, 2).unwrap(),
                Edge::new(2, 3, 4).unwrap(),
                Edge::new(0, 4, 5).unwrap(),
            ]
        );
        let c4 = LooseCycle::new((0..8).collect()).unwrap();
        assert_eq!(c4.edges().len(), 4);
        assert_eq!(c4.edges()[3], Edge::new(0, 6, 7).unwrap());
        assert!(LooseCycle::new(vec![0, 1, 2, 3]).is_err());
    }

    #[test]
    fn concat_examples() {
        let p = LoosePath::new(vec![0, 1, 2]).unwrap();
        let out = concat(&p, &[Edge::new(2, 3, 4).unwrap()], None).unwrap();
        assert_eq!(out.vertices(), &[0, 1, 2, 3, 4]);

        let tail = LoosePath::new(vec![6, 7, 8]).unwrap();
        let out = concat(&p, &[Edge::new(2, 5, 6).unwrap()], Some(&tail)).unwrap();
        assert_eq!(out.vertices(), &[0, 1, 2, 5, 6, 7, 8]);

        let err = concat(&p, &[Edge::new(5, 6, 7).unwrap()], None);
        assert!(matches!(err, Err(HypergraphError::BridgeMismatch { index: 0, .. })));
    }

    #[test]
    fn prefix_examples() {
        let p = LoosePath::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(prefix(&p, 1).unwrap().vertices(), &[0, 1, 2]);
        assert_eq!(prefix(&p, 2).unwrap(), p);
        let short = LoosePath::new(vec![0, 1, 2]).unwrap();
        assert!(prefix(&short, 2).is_err());
    }

    #[test]
    fn window_bounds() {
        let p = LoosePath::new((0..7).collect()).unwrap();
        assert_eq!(VertexWindow { start: 1 }.vertices(&p).unwrap(), [1, 2, 3, 4, 5]);
        assert!(VertexWindow { start: 3 }.vertices(&p).is_err());
    }

    fn arb_path() -> impl Strategy<Value = LoosePath> {
        // Random length 1..=6 over a shuffled label pool.
        (1usize..=6).prop_flat_map(|l| {
            Just((0..40usize).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(move |verts| LoosePath::new(verts[..2 * l + 1].to_vec()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn path_edge_overlap_structure(p in arb_path()) {
            let es = p.edges();
            for i in 0..es.len() {
                for j in i + 1..es.len() {
                    let vi = es[i].vertices();
                    let shared = es[j].vertices().iter().filter(|v| vi.contains(v)).count();
                    if j == i + 1 {
                        prop_assert_eq!(shared, 1);
                    } else {
                        prop_assert_eq!(shared, 0);
                    }
                }
            }
        }

        #[test]
        fn prefix_is_valid_path(p in arb_path(), cut in 1usize..=6) {
            if cut <= p.len() {
                let q = prefix(&p, cut).unwrap();
                prop_assert_eq!(q.len(), cut);
                prop_assert_eq!(q.edges(), p.edges()[..cut].to_vec());
            }
        }

        #[test]
        fn cycle_vertex_degrees(l in 3usize..=8) {
            let c = LooseCycle::new((0..2 * l).collect()).unwrap();
            let es = c.edges();
            prop_assert_eq!(es.len(), l);
            for v in 0..2 * l {
                let deg = es.iter().filter(|e| e.contains(v)).count();
                // Connectors sit in two edges, interior vertices in one.
                if v % 2 == 0 { prop_assert_eq!(deg, 2); } else { prop_assert_eq!(deg, 1); }
            }
        }

        #[test]
        fn concat_edge_lists_append(l1 in 1usize..=3, l2 in 1usize..=3) {
            let p1 = LoosePath::new((0..2 * l1 + 1).collect()).unwrap();
            let base = 2 * l1 + 1;
            let bridge = Edge::new(2 * l1, base, base + 1).unwrap();
            let p2 = LoosePath::new((base + 1..base + 2 + 2 * l2).collect()).unwrap();
            let joined = concat(&p1, &[bridge], Some(&p2)).unwrap();
            let mut expect = p1.edges();
            expect.push(bridge);
            expect.extend(p2.edges());
            prop_assert_eq!(joined.edges(), expect);
        }
    }
}
