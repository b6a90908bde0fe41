//! Bitset hypergraphs, exact matching numbers, and an exact weak chromatic
//! number solver.
//!
//! Vertices are 1-based (`1..=n`) to match the usual `[n]` convention; bit
//! `i-1` of a mask represents vertex `i`. Edges are kept deduplicated and
//! sorted by mask value, so equal hypergraphs have equal encodings.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// Largest supported vertex count (one `u64` mask).
pub const MAX_VERTICES: usize = 64;

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A set of 1-based vertices encoded as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> VertexSet {
        let mut mask = 0u64;
        for v in vs {
            debug_assert!((1..=MAX_VERTICES).contains(&v));
            mask |= 1u64 << (v - 1);
        }
        VertexSet(mask)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_VERTICES && (self.0 >> (v - 1)) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        self.0 |= 1u64 << (v - 1);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    /// Ascending 1-based vertices.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// ExtendedNat
// ---------------------------------------------------------------------------

/// A nonnegative integer extended with an absorbing `Infinity`.
///
/// Used for chromatic numbers (`+∞` on singleton hyperedges) and for
/// palette-size minima that are unreachable.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ExtendedNat {
    Finite(usize),
    Infinity,
}

impl ExtendedNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedNat::Finite(k) => Some(k),
            ExtendedNat::Infinity => None,
        }
    }
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedNat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use ExtendedNat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => std::cmp::Ordering::Less,
            (Infinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
        }
    }
}

impl std::ops::Add for ExtendedNat {
    type Output = ExtendedNat;
    fn add(self, rhs: ExtendedNat) -> ExtendedNat {
        use ExtendedNat::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinity,
        }
    }
}

impl From<usize> for ExtendedNat {
    fn from(k: usize) -> Self {
        ExtendedNat::Finite(k)
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(k) => write!(f, "{k}"),
            ExtendedNat::Infinity => write!(f, "infinity"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedNat::Finite(k) => s.serialize_u64(*k as u64),
            ExtendedNat::Infinity => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(ExtendedNat::Finite(k as usize)),
            Raw::Str(s) if s == "infinity" => Ok(ExtendedNat::Infinity),
            Raw::Str(s) => Err(D::Error::custom(format!(
                "expected a number or \"infinity\", got {s:?}"
            ))),
        }
    }
}

// ---------------------------------------------------------------------------
// Hypergraph
// ---------------------------------------------------------------------------

/// A hypergraph on vertices `1..=n` with a canonical (mask-sorted,
/// deduplicated) edge list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    /// Builds a hypergraph, validating, deduplicating, and sorting edges.
    pub fn new(n: usize, mut edges: Vec<VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(format!(
                "vertex count {n} exceeds the {MAX_VERTICES}-vertex bitmask limit"
            )));
        }
        let all = VertexSet::full(n);
        for e in &edges {
            if e.is_empty() {
                return Err(Error::InvalidInput("hyperedge is empty".into()));
            }
            if !e.is_subset_of(all) {
                return Err(Error::InvalidInput(format!(
                    "hyperedge {e:?} contains a vertex outside 1..={n}"
                )));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, edges })
    }

    pub fn from_vertex_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        for list in lists {
            for &v in list {
                if v < 1 || v > n {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} outside 1..={n}"
                    )));
                }
            }
        }
        Hypergraph::new(
            n,
            lists
                .iter()
                .map(|l| VertexSet::from_vertices(l.iter().copied()))
                .collect(),
        )
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Hypergraph::new(n, Vec::new())
    }

    /// The complete k-uniform hypergraph on `[n]`, with edges in canonical
    /// order. Rejects `k = 0` and `k > n`.
    pub fn complete_uniform(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Precondition(format!(
                "complete_uniform requires 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        let mut edges = Vec::new();
        let mut current: Vec<usize> = (1..=k).collect();
        loop {
            edges.push(VertexSet::from_vertices(current.iter().copied()));
            // next k-combination of {1..n} in lexicographic order
            let mut i = k;
            while i > 0 && current[i - 1] == n - (k - i) {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            current[i - 1] += 1;
            for j in i..k {
                current[j] = current[j - 1] + 1;
            }
        }
        Hypergraph::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_singleton_edge(&self) -> bool {
        self.edges.iter().any(|e| e.len() == 1)
    }

    /// Subhypergraph induced by the vertex set `s`: same ambient vertex
    /// count, edges exactly those contained in `s`.
    pub fn induced(&self, s: VertexSet) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| e.is_subset_of(s))
                .collect(),
        }
    }

    /// True iff some edge is contained in `s`.
    pub fn has_edge_within(&self, s: VertexSet) -> bool {
        self.edges.iter().any(|e| e.is_subset_of(s))
    }

    /// For each vertex, the indices of edges containing it.
    pub fn edges_by_vertex(&self) -> Vec<Vec<usize>> {
        let mut by_vertex = vec![Vec::new(); self.n + 1];
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.vertices() {
                by_vertex[v].push(i);
            }
        }
        by_vertex
    }

    /// Exact maximum matching number ν(H) by branch and bound.
    pub fn matching_number(&self) -> usize {
        max_matching(&self.edges, usize::MAX)
    }

    /// True iff ν(H) >= m; stops at the first witness.
    pub fn has_matching_of_size(&self, m: usize) -> bool {
        if m == 0 {
            return true;
        }
        max_matching(&self.edges, m) >= m
    }
}

/// Decision form: does the edge list contain `target` pairwise disjoint
/// members? Allocation-free, short-circuits on the first witness.
pub(crate) fn exists_matching(edges: &[VertexSet], target: usize) -> bool {
    fn rec(edges: &[VertexSet], start: usize, used: VertexSet, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        for i in start..edges.len() {
            if edges.len() - i < remaining {
                return false;
            }
            if !edges[i].intersects(used) && rec(edges, i + 1, used.union(edges[i]), remaining - 1)
            {
                return true;
            }
        }
        false
    }
    target == 0 || rec(edges, 0, VertexSet::EMPTY, target)
}

/// Branch-and-bound maximum matching over a slice of edge masks, stopping
/// early once `target` disjoint edges are found. Edges are processed sorted
/// by lowest vertex; the bound is matched-so-far plus a greedy estimate on
/// the remaining suffix.
pub(crate) fn max_matching(edges: &[VertexSet], target: usize) -> usize {
    if edges.is_empty() || target == 0 {
        return 0;
    }
    let mut order: Vec<VertexSet> = edges.to_vec();
    order.sort_unstable_by_key(|e| (e.bits().trailing_zeros(), e.bits()));
    let mut best = 0;
    rec_matching(&order, 0, VertexSet::EMPTY, 0, &mut best, target);
    best
}

fn rec_matching(
    edges: &[VertexSet],
    start: usize,
    used: VertexSet,
    count: usize,
    best: &mut usize,
    target: usize,
) {
    // Greedy disjoint extension of the suffix is itself a matching; use it
    // to lift the incumbent before branching.
    let mut greedy_used = used;
    let mut greedy_add = 0;
    for e in &edges[start..] {
        if !e.intersects(greedy_used) {
            greedy_used = greedy_used.union(*e);
            greedy_add += 1;
        }
    }
    if count + greedy_add > *best {
        *best = count + greedy_add;
    }
    if *best >= target || greedy_add == 0 {
        return;
    }
    for i in start..edges.len() {
        if count + (edges.len() - i) <= *best {
            break;
        }
        if !edges[i].intersects(used) {
            rec_matching(edges, i + 1, used.union(edges[i]), count + 1, best, target);
            if *best >= target {
                return;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Weak chromatic number
// ---------------------------------------------------------------------------

/// Result of the exact chromatic solver. `witness` maps vertex `i` to the
/// color (`1..=k`) at position `i-1`; it is `None` exactly when the value
/// is `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub value: ExtendedNat,
    pub witness: Option<Vec<usize>>,
}

/// Vertex budget for the exact coloring DFS.
pub const MAX_COLORING_VERTICES: usize = 16;

/// Exact weak chromatic number: the least number of colors such that every
/// edge of size >= 2 sees at least two colors. A singleton edge forces
/// `Infinity`. The edgeless hypergraph needs one color (zero when `n = 0`).
pub fn chromatic_number(h: &Hypergraph) -> Result<ChromaticResult> {
    if h.has_singleton_edge() {
        return Ok(ChromaticResult {
            value: ExtendedNat::Infinity,
            witness: None,
        });
    }
    if h.n() == 0 {
        return Ok(ChromaticResult {
            value: ExtendedNat::Finite(0),
            witness: Some(Vec::new()),
        });
    }
    if h.n() > MAX_COLORING_VERTICES {
        return Err(Error::TooLarge(format!(
            "chromatic solver is limited to {MAX_COLORING_VERTICES} vertices, got {}",
            h.n()
        )));
    }
    for k in 1..=h.n() {
        if let Some(witness) = colorable_with(h, k) {
            return Ok(ChromaticResult {
                value: ExtendedNat::Finite(k),
                witness: Some(witness),
            });
        }
    }
    Err(Error::Internal(
        "n distinct colors must properly color a singleton-free hypergraph".into(),
    ))
}

/// Searches for a proper weak coloring with exactly `k` colors available.
/// Returns a witness (colors `1..=k` per vertex) or `None` if none exists.
///
/// DFS over vertices in index order with the standard symmetry break: a
/// vertex may reuse any color seen so far or open exactly the next fresh one.
pub fn colorable_with(h: &Hypergraph, k: usize) -> Option<Vec<usize>> {
    if h.n() == 0 {
        return Some(Vec::new());
    }
    if k == 0 || h.has_singleton_edge() {
        return None;
    }
    // Edges checked when their maximum vertex gets colored; the edge is then
    // fully colored and must not be monochromatic.
    let mut edges_by_max: Vec<Vec<VertexSet>> = vec![Vec::new(); h.n() + 1];
    for e in h.edges() {
        if e.len() >= 2 {
            let max_v = 64 - e.bits().leading_zeros() as usize;
            edges_by_max[max_v].push(*e);
        }
    }
    let mut colors = vec![0usize; h.n()];
    if rec_color(h.n(), k, &edges_by_max, &mut colors, 0, 0) {
        Some(colors)
    } else {
        None
    }
}

fn rec_color(
    n: usize,
    k: usize,
    edges_by_max: &[Vec<VertexSet>],
    colors: &mut [usize],
    next: usize,
    used: usize,
) -> bool {
    if next == n {
        return true;
    }
    let v = next + 1;
    for c in 1..=k.min(used + 1) {
        colors[next] = c;
        let ok = edges_by_max[v].iter().all(|e| {
            // monochromatic iff every other vertex of e already has color c
            !e.vertices().all(|u| colors[u - 1] == c)
        });
        if ok && rec_color(n, k, edges_by_max, colors, next + 1, used.max(c)) {
            return true;
        }
    }
    colors[next] = 0;
    false
}

/// Checks that `colors` (vertex `i` -> `colors[i-1]`) is a proper weak
/// coloring: right length, and no edge of size >= 2 is monochromatic.
/// A hypergraph with a singleton edge admits no proper coloring.
pub fn is_proper_coloring(h: &Hypergraph, colors: &[usize]) -> bool {
    if colors.len() != h.n() || h.has_singleton_edge() {
        return false;
    }
    h.edges().iter().all(|e| {
        if e.len() < 2 {
            return true;
        }
        let mut vs = e.vertices();
        let first = colors[vs.next().unwrap() - 1];
        !vs.all(|v| colors[v - 1] == first)
    })
}

// ---------------------------------------------------------------------------
// JSON encoding
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphJson {
            n: self.n,
            edges: self.edges.iter().map(|e| e.to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HypergraphJson::deserialize(d)?;
        Hypergraph::from_vertex_lists(raw.n, &raw.edges).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize, r: usize) -> Hypergraph {
        Hypergraph::complete_uniform(n, r).unwrap()
    }

    #[test]
    fn complete_uniform_counts() {
        let t = k(3, 2);
        assert_eq!(t.edge_count(), 3);
        let want: Vec<VertexSet> = vec![
            VertexSet::from_vertices([1, 2]),
            VertexSet::from_vertices([1, 3]),
            VertexSet::from_vertices([2, 3]),
        ];
        assert_eq!(t.edges(), &want[..]);
        assert_eq!(k(5, 2).edge_count(), 10);
        assert_eq!(k(6, 3).edge_count(), 20);
    }

    #[test]
    fn complete_uniform_rejects_bad_k() {
        assert!(Hypergraph::complete_uniform(3, 0).is_err());
        assert!(Hypergraph::complete_uniform(3, 4).is_err());
    }

    #[test]
    fn edges_are_deduplicated_and_sorted() {
        let h = Hypergraph::from_vertex_lists(4, &[vec![3, 4], vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert!(h.edges().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn induced_matches_smaller_complete() {
        let h = k(4, 2).induced(VertexSet::from_vertices([1, 2, 3]));
        assert_eq!(h.edges(), k(3, 2).edges());

        let empty = k(4, 2).induced(VertexSet::EMPTY);
        assert_eq!(empty.edge_count(), 0);

        let single = k(5, 2).induced(VertexSet::from_vertices([1, 3]));
        assert_eq!(single.edges(), &[VertexSet::from_vertices([1, 3])]);
    }

    #[test]
    fn matching_number_examples() {
        assert_eq!(k(5, 2).matching_number(), 2);
        assert_eq!(k(3, 2).matching_number(), 1);
        assert_eq!(k(6, 3).matching_number(), 2);
        assert_eq!(Hypergraph::edgeless(4).unwrap().matching_number(), 0);
    }

    #[test]
    fn matching_number_of_complete_uniform_is_floor() {
        for n in 1..=9 {
            for r in 1..=n {
                assert_eq!(k(n, r).matching_number(), n / r, "K_{n}^{r}");
            }
        }
    }

    #[test]
    fn has_matching_of_size_examples() {
        assert!(k(4, 2).has_matching_of_size(2));
        assert!(!k(3, 2).has_matching_of_size(2));
        assert!(k(3, 2).has_matching_of_size(0));
        assert!(Hypergraph::edgeless(2).unwrap().has_matching_of_size(0));
    }

    #[test]
    fn chromatic_number_examples() {
        let singleton = Hypergraph::from_vertex_lists(2, &[vec![1]]).unwrap();
        let res = chromatic_number(&singleton).unwrap();
        assert_eq!(res.value, ExtendedNat::Infinity);
        assert!(res.witness.is_none());

        let res = chromatic_number(&k(3, 2)).unwrap();
        assert_eq!(res.value, ExtendedNat::Finite(3));
        assert!(is_proper_coloring(&k(3, 2), res.witness.as_ref().unwrap()));
        assert!(colorable_with(&k(3, 2), 2).is_none());

        // Brute-force oracle for K_4^3: try all 2-colorings of 4 vertices.
        let k43 = k(4, 3);
        let oracle_2_colorable = (0..16u32).any(|bits| {
            let colors: Vec<usize> = (0..4).map(|i| ((bits >> i) & 1) as usize + 1).collect();
            is_proper_coloring(&k43, &colors)
        });
        assert!(oracle_2_colorable);
        let res = chromatic_number(&k43).unwrap();
        assert_eq!(res.value, ExtendedNat::Finite(2));
        assert!(colorable_with(&k43, 1).is_none());
    }

    #[test]
    fn chromatic_number_edgeless() {
        let res = chromatic_number(&Hypergraph::edgeless(3).unwrap()).unwrap();
        assert_eq!(res.value, ExtendedNat::Finite(1));
        let res = chromatic_number(&Hypergraph::edgeless(0).unwrap()).unwrap();
        assert_eq!(res.value, ExtendedNat::Finite(0));
    }

    #[test]
    fn extended_nat_order_and_arithmetic() {
        use ExtendedNat::*;
        assert!(Finite(5) < Infinity);
        assert!(Finite(2) < Finite(3));
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(2) + Infinity, Infinity);
        assert_eq!(Infinity + Infinity, Infinity);
    }

    #[test]
    fn json_round_trip() {
        let h = k(5, 2);
        let json = serde_json::to_string(&h).unwrap();
        let back: Hypergraph = serde_json::from_str(&json).unwrap();
        assert_eq!(h, back);

        let parsed: Hypergraph =
            serde_json::from_str(r#"{"n": 5, "edges": [[1,2],[3,4]]}"#).unwrap();
        assert_eq!(parsed.edge_count(), 2);
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n": 2, "edges": [[3]]}"#).is_err());
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n": 2, "edges": [[]]}"#).is_err());
    }
}
