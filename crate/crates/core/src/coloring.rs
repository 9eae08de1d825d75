//! Total red/blue colorings of complete 3-uniform hypergraphs, indexed by
//! colex rank, plus the extremal lower-bound construction and seeded
//! deterministic instance generators.

use crate::hypergraph::{Edge, HypergraphError, LooseCycle};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("uniformity k must be >= 2, got {0}")]
    BadUniformity(usize),
    #[error("path lengths must satisfy n >= m >= 1, got n={n} m={m}")]
    BadLengths { n: usize, m: usize },
    #[error("planted cycle of length {len} needs {} vertices, host has {have}", 2 * len)]
    CycleTooLarge { len: usize, have: usize },
    #[error("cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("rank {rank} out of range for {total} edges")]
    RankOutOfRange { rank: usize, total: usize },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Color::Red => write!(f, "red"),
            Color::Blue => write!(f, "blue"),
        }
    }
}

/// Binomial coefficient, small inputs only.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: usize = 1;
    for i in 1..=k {
        out = out * (n - (k - i)) / i;
    }
    out
}

/// Colex rank of a triple {a<b<c}: C(c,3) + C(b,2) + C(a,1).
pub fn rank(e: Edge) -> usize {
    let [a, b, c] = e.vertices();
    binomial(c, 3) + binomial(b, 2) + a
}

/// Inverse of [`rank`] over the triples of `0..n`.
pub fn unrank(r: usize, n: usize) -> Result<Edge, ColoringError> {
    if n < 3 {
        return Err(ColoringError::TooFewVertices(n));
    }
    let total = binomial(n, 3);
    if r >= total {
        return Err(ColoringError::RankOutOfRange { rank: r, total });
    }
    let mut rest = r;
    let mut c = 2;
    while binomial(c + 1, 3) <= rest {
        c += 1;
    }
    rest -= binomial(c, 3);
    let mut b = 1;
    while binomial(b + 1, 2) <= rest {
        b += 1;
    }
    rest -= binomial(b, 2);
    Ok(Edge::new(rest, b, c).expect("rank arithmetic keeps a < b < c"))
}

/// A total 2-coloring of all triples of an `n`-vertex set. Bit `r` of the
/// backing store is 1 iff the edge of colex rank `r` is red.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoring {
    n_vertices: usize,
    bits: Vec<u64>,
}

impl TwoColoring {
    pub fn monochromatic(n_vertices: usize, color: Color) -> Result<Self, ColoringError> {
        if n_vertices < 3 {
            return Err(ColoringError::TooFewVertices(n_vertices));
        }
        let edges = binomial(n_vertices, 3);
        let words = edges.div_ceil(64);
        let fill = match color {
            Color::Red => u64::MAX,
            Color::Blue => 0,
        };
        let mut bits = vec![fill; words];
        if color == Color::Red && !edges.is_multiple_of(64) {
            // Keep unused tail bits zero so encodings are canonical.
            *bits.last_mut().unwrap() = (1u64 << (edges % 64)) - 1;
        }
        Ok(TwoColoring { n_vertices, bits })
    }

    /// Builds from the low `C(n,3)` bits of a u64 counter (enumeration order).
    pub fn from_bitmap(n_vertices: usize, bitmap: u64) -> Result<Self, ColoringError> {
        let mut c = TwoColoring::monochromatic(n_vertices, Color::Blue)?;
        let edges = binomial(n_vertices, 3);
        assert!(edges <= 64, "bitmap constructor is for tiny instances");
        c.bits[0] = bitmap & if edges == 64 { u64::MAX } else { (1u64 << edges) - 1 };
        Ok(c)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        binomial(self.n_vertices, 3)
    }

    pub fn color(&self, e: Edge) -> Color {
        assert!(e.max_vertex() < self.n_vertices, "edge {e:?} outside vertex range");
        let r = rank(e);
        if self.bits[r / 64] >> (r % 64) & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn color_of(&self, x: usize, y: usize, z: usize) -> Color {
        self.color(Edge::new(x, y, z).expect("distinct vertices"))
    }

    pub fn set_color(&mut self, e: Edge, color: Color) {
        assert!(e.max_vertex() < self.n_vertices, "edge {e:?} outside vertex range");
        let r = rank(e);
        match color {
            Color::Red => self.bits[r / 64] |= 1 << (r % 64),
            Color::Blue => self.bits[r / 64] &= !(1 << (r % 64)),
        }
    }

    pub fn count(&self, color: Color) -> usize {
        let red: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        match color {
            Color::Red => red,
            Color::Blue => self.edge_count() - red,
        }
    }

    /// Red edges ascending by colex rank.
    pub fn red_edges(&self) -> Vec<Edge> {
        (0..self.edge_count())
            .filter(|r| self.bits[r / 64] >> (r % 64) & 1 == 1)
            .map(|r| unrank(r, self.n_vertices).unwrap())
            .collect()
    }

    /// Restriction to the lowest `n` vertices. Colex ranks are prefix-stable,
    /// so this is a truncation of the bit store.
    pub fn restrict(&self, n: usize) -> Result<TwoColoring, ColoringError> {
        if n < 3 {
            return Err(ColoringError::TooFewVertices(n));
        }
        assert!(n <= self.n_vertices, "restriction cannot grow the vertex set");
        let edges = binomial(n, 3);
        let words = edges.div_ceil(64);
        let mut bits = self.bits[..words].to_vec();
        if !edges.is_multiple_of(64) {
            *bits.last_mut().unwrap() &= (1u64 << (edges % 64)) - 1;
        }
        Ok(TwoColoring { n_vertices: n, bits })
    }
}

/// The published splitmix64 generator; pinned here so that identical seeds
/// give bit-identical streams in every implementation.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// Seeded coloring: edge of rank `r` is red iff the r-th splitmix64 draw is
/// strictly below `red_prob_numerator` (both as unsigned 64-bit values).
pub fn random_coloring(
    n_vertices: usize,
    seed: u64,
    red_prob_numerator: u64,
) -> Result<TwoColoring, ColoringError> {
    let mut c = TwoColoring::monochromatic(n_vertices, Color::Blue)?;
    let mut rng = SplitMix64::new(seed);
    for r in 0..c.edge_count() {
        if rng.next_u64() < red_prob_numerator {
            c.bits[r / 64] |= 1 << (r % 64);
        }
    }
    Ok(c)
}

/// Parameters of the lower-bound coloring: parts A (low indices, |A|=(k-1)n)
/// and B (high indices, |B|=floor((m+1)/2)-1) on (k-1)n + floor((m+1)/2) - 1
/// vertices; an edge is blue iff it meets B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalSpec {
    pub k: usize,
    pub n: usize,
    pub m: usize,
}

impl ExtremalSpec {
    pub fn validate(&self) -> Result<(), ColoringError> {
        if self.k < 2 {
            return Err(ColoringError::BadUniformity(self.k));
        }
        if self.m < 1 || self.n < self.m {
            return Err(ColoringError::BadLengths { n: self.n, m: self.m });
        }
        Ok(())
    }

    pub fn part_a(&self) -> usize {
        (self.k - 1) * self.n
    }

    pub fn part_b(&self) -> usize {
        self.m.div_ceil(2) - 1
    }

    pub fn total_vertices(&self) -> usize {
        self.part_a() + self.part_b()
    }
}

/// The 3-uniform extremal coloring as a [`TwoColoring`].
pub fn extremal_coloring(n: usize, m: usize) -> Result<TwoColoring, ColoringError> {
    let spec = ExtremalSpec { k: 3, n, m };
    spec.validate()?;
    let total = spec.total_vertices();
    let boundary = spec.part_a();
    let mut c = TwoColoring::monochromatic(total, Color::Blue)?;
    for r in 0..c.edge_count() {
        let e = unrank(r, total).unwrap();
        if e.max_vertex() < boundary {
            c.set_color(e, Color::Red);
        }
    }
    Ok(c)
}

/// The general-k extremal construction as an explicit edge/color listing
/// (ascending k-subsets in lexicographic order).
pub fn extremal_edge_list(spec: ExtremalSpec) -> Result<Vec<(Vec<usize>, Color)>, ColoringError> {
    spec.validate()?;
    let total = spec.total_vertices();
    let boundary = spec.part_a();
    if total < spec.k {
        return Ok(Vec::new());
    }
    let mut combo: Vec<usize> = (0..spec.k).collect();
    let mut out = Vec::new();
    loop {
        let color = if combo.iter().any(|&v| v >= boundary) { Color::Blue } else { Color::Red };
        out.push((combo.clone(), color));
        // Next k-subset in lexicographic order.
        let mut i = spec.k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if combo[i] < total - (spec.k - i) {
                combo[i] += 1;
                for j in i + 1..spec.k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Random coloring with the canonical cycle on vertices `0..2*cycle_len`
/// forced red.
pub fn plant_red_cycle(
    n_vertices: usize,
    cycle_len: usize,
    seed: u64,
    red_prob_numerator: u64,
) -> Result<(TwoColoring, LooseCycle), ColoringError> {
    if cycle_len < 3 {
        return Err(ColoringError::CycleTooShort(cycle_len));
    }
    if 2 * cycle_len > n_vertices {
        return Err(ColoringError::CycleTooLarge { len: cycle_len, have: n_vertices });
    }
    let mut c = random_coloring(n_vertices, seed, red_prob_numerator)?;
    let cyc = LooseCycle::new((0..2 * cycle_len).collect())?;
    for e in cyc.edges() {
        c.set_color(e, Color::Red);
    }
    Ok((c, cyc))
}
