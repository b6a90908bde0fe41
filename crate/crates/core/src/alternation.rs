//! Signed vectors over `Z_p ∪ {0}`, the alternation count `alt(X)`, and the
//! exact alternation number of a hypergraph.
//!
//! A signed vector stores, per coordinate, either the zero symbol (`0`) or
//! an exponent `j ∈ {1..=p}` standing for `ω^j` (the group identity is
//! `ω^p`, kept distinct from the zero symbol). `alt(X)` is the length of
//! the longest alternating subsequence of the nonzero entries, which equals
//! the number of maximal runs of equal consecutive nonzero values.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::Result;

/// Default vertex budget for the exact ordering search.
pub const DEFAULT_ORDERING_SEARCH_LIMIT: usize = 9;

// ---------------------------------------------------------------------------
// SignedVector
// ---------------------------------------------------------------------------

/// An element of `(Z_p ∪ {0})^n`. Entry `0` is the zero symbol; entry
/// `j ∈ {1..=p}` encodes `ω^j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedVector {
    p: usize,
    entries: Vec<u8>,
}

impl SignedVector {
    pub fn new(p: usize, entries: Vec<u8>) -> Result<Self> {
        if p < 2 {
            return Err(Error::Precondition(format!(
                "group order must be at least 2, got {p}"
            )));
        }
        if p > 255 {
            return Err(Error::TooLarge(format!("group order {p} exceeds 255")));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e as usize > p) {
            return Err(Error::InvalidInput(format!(
                "entry {bad} outside 0..={p}"
            )));
        }
        Ok(SignedVector { p, entries })
    }

    pub fn zero(p: usize, n: usize) -> Result<Self> {
        SignedVector::new(p, vec![0; n])
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// The index set `X^ε = { i : x_i = ε }` for `ε = ω^value`, as 1-based
    /// positions.
    pub fn class(&self, value: usize) -> VertexSet {
        debug_assert!((1..=self.p).contains(&value));
        VertexSet::from_vertices(
            self.entries
                .iter()
                .enumerate()
                .filter(|(_, &e)| e as usize == value)
                .map(|(i, _)| i + 1),
        )
    }

    /// 1-based positions carrying a nonzero entry.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.entries
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, _)| i + 1),
        )
    }

    /// The ω-action: multiplies every nonzero entry by `ω^j`. `j = p` is the
    /// identity; zero entries stay zero.
    pub fn rotated(&self, j: usize) -> SignedVector {
        debug_assert!((1..=self.p).contains(&j));
        let entries = self
            .entries
            .iter()
            .map(|&e| {
                if e == 0 {
                    0
                } else {
                    ((e as usize + j - 1) % self.p + 1) as u8
                }
            })
            .collect();
        SignedVector {
            p: self.p,
            entries,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SignedVectorJson {
    p: usize,
    x: Vec<u8>,
}

impl Serialize for SignedVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SignedVectorJson {
            p: self.p,
            x: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SignedVectorJson::deserialize(d)?;
        SignedVector::new(raw.p, raw.x).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// VertexOrdering
// ---------------------------------------------------------------------------

/// An injective map `σ: [n] -> V(H)`, stored as the sequence
/// `σ(1), ..., σ(n)` of 1-based vertices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexOrdering {
    map: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(n_vertices: usize, map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n_vertices + 1];
        for &v in &map {
            if v < 1 || v > n_vertices {
                return Err(Error::InvalidInput(format!(
                    "ordering entry {v} outside 1..={n_vertices}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidInput(format!(
                    "ordering repeats vertex {v}"
                )));
            }
            seen[v] = true;
        }
        Ok(VertexOrdering { map })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            map: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

// ---------------------------------------------------------------------------
// alt(X)
// ---------------------------------------------------------------------------

/// Length of the longest alternating subsequence of the nonzero entries of
/// `X`: the number of maximal runs of equal consecutive nonzero values.
/// The all-zero vector has alt 0.
pub fn alt_of_vector(x: &SignedVector) -> usize {
    let mut runs = 0;
    let mut last = 0u8;
    for &e in x.entries() {
        if e != 0 {
            if e != last {
                runs += 1;
            }
            last = e;
        }
    }
    runs
}

// ---------------------------------------------------------------------------
// alt_p(H, σ) and alt_p(H)
// ---------------------------------------------------------------------------

/// Result of evaluating `alt_p(H, σ)`: the maximum value together with a
/// signed vector achieving it.
#[derive(Clone, Debug)]
pub struct OrderingAlt {
    pub value: usize,
    pub witness: SignedVector,
}

struct AltSearch {
    p: usize,
    edges: Vec<VertexSet>,
    edges_by_vertex: Vec<Vec<usize>>,
}

impl AltSearch {
    fn new(h: &Hypergraph, p: usize) -> Self {
        AltSearch {
            p,
            edges: h.edges().to_vec(),
            edges_by_vertex: h.edges_by_vertex(),
        }
    }

    /// Adding `vertex` to the class with mask `class_mask` completes an edge?
    fn creates_edge(&self, class_mask: VertexSet, vertex: usize) -> bool {
        let grown = class_mask.union(VertexSet::singleton(vertex));
        self.edges_by_vertex[vertex]
            .iter()
            .any(|&ei| self.edges[ei].is_subset_of(grown))
    }

    /// Maximum `alt(X)` over vectors supported on the positions of
    /// `sigma_prefix` whose classes induce no edge, truncated at `stop_at`:
    /// returns early once a vector with alt >= stop_at is found. Records a
    /// witness when `witness` is given.
    fn max_alt(
        &self,
        sigma_prefix: &[usize],
        stop_at: usize,
        witness: Option<&mut (usize, Vec<u8>)>,
    ) -> usize {
        let mut classes = vec![VertexSet::EMPTY; self.p + 1];
        let mut entries = vec![0u8; sigma_prefix.len()];
        let mut state = SearchState {
            best: 0,
            stop_at,
            witness,
        };
        self.rec(sigma_prefix, 0, 0, 0, &mut classes, &mut entries, &mut state);
        state.best
    }

    fn rec(
        &self,
        sigma_prefix: &[usize],
        pos: usize,
        last: u8,
        runs: usize,
        classes: &mut Vec<VertexSet>,
        entries: &mut Vec<u8>,
        state: &mut SearchState<'_>,
    ) {
        let prefix_len = sigma_prefix.len();
        if runs > state.best {
            state.best = runs;
            if let Some(w) = state.witness.as_deref_mut() {
                w.0 = runs;
                w.1.clear();
                w.1.extend_from_slice(entries);
            }
        }
        if state.best >= state.stop_at {
            return;
        }
        if pos == prefix_len || runs + (prefix_len - pos) <= state.best {
            return;
        }
        let vertex = sigma_prefix[pos];
        // Global Z_p rotation preserves both alt and the edge-free
        // constraint, so the first nonzero value can be pinned to ω^1.
        let value_cap = if runs == 0 { 1 } else { self.p };
        for value in 0..=value_cap {
            if value == 0 {
                entries[pos] = 0;
                self.rec(sigma_prefix, pos + 1, last, runs, classes, entries, state);
            } else {
                let class_mask = classes[value];
                if self.creates_edge(class_mask, vertex) {
                    continue;
                }
                classes[value] = class_mask.union(VertexSet::singleton(vertex));
                entries[pos] = value as u8;
                let new_runs = if value as u8 != last { runs + 1 } else { runs };
                self.rec(
                    sigma_prefix,
                    pos + 1,
                    value as u8,
                    new_runs,
                    classes,
                    entries,
                    state,
                );
                classes[value] = class_mask;
            }
            entries[pos] = 0;
            if state.best >= state.stop_at {
                return;
            }
        }
    }
}

struct SearchState<'w> {
    best: usize,
    stop_at: usize,
    witness: Option<&'w mut (usize, Vec<u8>)>,
}

/// Exact `alt_p(H, σ)`: the maximum of `alt(X)` over all
/// `X ∈ (Z_p ∪ {0})^n` such that no value class `σ(X^ε)` contains a
/// hyperedge. Exhaustive over `(p+1)^n` vectors with prefix pruning.
pub fn alt_with_ordering(h: &Hypergraph, p: usize, sigma: &VertexOrdering) -> Result<OrderingAlt> {
    if p < 2 {
        return Err(Error::Precondition(format!(
            "group order must be at least 2, got {p}"
        )));
    }
    if sigma.len() != h.n() {
        return Err(Error::InvalidInput(format!(
            "ordering has {} entries for a hypergraph on {} vertices",
            sigma.len(),
            h.n()
        )));
    }
    let search = AltSearch::new(h, p);
    let mut witness = (0usize, vec![0u8; h.n()]);
    let value = search.max_alt(sigma.as_slice(), usize::MAX, Some(&mut witness));
    debug_assert_eq!(value, witness.0);
    witness.1.resize(h.n(), 0);
    Ok(OrderingAlt {
        value,
        witness: SignedVector::new(p, witness.1)?,
    })
}

// ---------------------------------------------------------------------------
// alternation number
// ---------------------------------------------------------------------------

/// Result of the exact alternation-number search: the minimum value and an
/// ordering attaining it.
#[derive(Clone, Debug)]
pub struct AlternationNumber {
    pub value: usize,
    pub ordering: VertexOrdering,
}

/// Exact `alt_p(H) = min_σ alt_p(H, σ)` with the default vertex budget.
pub fn alternation_number(h: &Hypergraph, p: usize) -> Result<AlternationNumber> {
    alternation_number_with_limit(h, p, DEFAULT_ORDERING_SEARCH_LIMIT)
}

/// Exact alternation number with an explicit vertex budget. The search is a
/// branch and bound over orderings: a prefix that already admits a vector
/// with alt >= incumbent cannot lead to a strictly better ordering and is
/// pruned; vertices interchangeable under an edge-set-preserving
/// transposition are tried only once per level.
pub fn alternation_number_with_limit(
    h: &Hypergraph,
    p: usize,
    limit: usize,
) -> Result<AlternationNumber> {
    if p < 2 {
        return Err(Error::Precondition(format!(
            "group order must be at least 2, got {p}"
        )));
    }
    let n = h.n();
    if n > limit {
        return Err(Error::TooLarge(format!(
            "ordering search over {n}! permutations exceeds the budget of {limit} vertices"
        )));
    }
    if n == 0 {
        return Ok(AlternationNumber {
            value: 0,
            ordering: VertexOrdering::identity(0),
        });
    }

    let classes = transposition_classes(h);
    let identity = VertexOrdering::identity(n);
    let seed = alt_with_ordering(h, p, &identity)?;
    let mut best = seed.value;
    let mut best_ordering = identity;

    let search = AltSearch::new(h, p);
    let mut prefix: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    search_orderings(
        &search,
        n,
        &classes,
        &mut prefix,
        &mut used,
        &mut best,
        &mut best_ordering,
    );

    Ok(AlternationNumber {
        value: best,
        ordering: best_ordering,
    })
}

#[allow(clippy::too_many_arguments)]
fn search_orderings(
    search: &AltSearch,
    n: usize,
    classes: &[usize],
    prefix: &mut Vec<usize>,
    used: &mut Vec<bool>,
    best: &mut usize,
    best_ordering: &mut VertexOrdering,
) {
    if *best == 0 {
        return;
    }
    if prefix.len() == n {
        // Exact value for this complete ordering, cut off at the incumbent.
        let value = search.max_alt(prefix, *best, None);
        if value < *best {
            *best = value;
            *best_ordering = VertexOrdering {
                map: prefix.clone(),
            };
        }
        return;
    }
    // A vector supported on the prefix stays feasible under any completion,
    // so reaching the incumbent already rules out strict improvement.
    if !prefix.is_empty() && search.max_alt(prefix, *best, None) >= *best {
        return;
    }
    let mut tried = vec![false; n + 1];
    for v in 1..=n {
        if used[v] || tried[classes[v]] {
            continue;
        }
        tried[classes[v]] = true;
        used[v] = true;
        prefix.push(v);
        search_orderings(search, n, classes, prefix, used, best, best_ordering);
        prefix.pop();
        used[v] = false;
    }
}

/// Partitions vertices into classes where `u ~ v` iff the transposition
/// `(u v)` maps the edge set onto itself. Swapping two unused equivalent
/// vertices maps the completions of one prefix bijectively onto the other's
/// with equal alt, so one representative per class suffices per level.
fn transposition_classes(h: &Hypergraph) -> Vec<usize> {
    let n = h.n();
    let mut repr: Vec<usize> = (0..=n).collect();
    for u in 1..=n {
        for v in (u + 1)..=n {
            if repr[v] == v && transposition_fixes_edges(h, u, v) {
                repr[v] = repr[u];
            }
        }
    }
    repr
}

fn transposition_fixes_edges(h: &Hypergraph, u: usize, v: usize) -> bool {
    let bu = VertexSet::singleton(u).bits();
    let bv = VertexSet::singleton(v).bits();
    let mut swapped: Vec<u64> = h
        .edges()
        .iter()
        .map(|e| {
            let bits = e.bits();
            let has_u = bits & bu != 0;
            let has_v = bits & bv != 0;
            if has_u == has_v {
                bits
            } else {
                bits ^ bu ^ bv
            }
        })
        .collect();
    swapped.sort_unstable();
    swapped == h.edges().iter().map(|e| e.bits()).collect::<Vec<_>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(p: usize, entries: &[u8]) -> SignedVector {
        SignedVector::new(p, entries.to_vec()).unwrap()
    }

    fn k(n: usize, r: usize) -> Hypergraph {
        Hypergraph::complete_uniform(n, r).unwrap()
    }

    #[test]
    fn alt_examples() {
        assert_eq!(alt_of_vector(&sv(3, &[2, 0, 2, 1, 0, 3])), 3);
        assert_eq!(alt_of_vector(&sv(3, &[0, 0, 0, 0])), 0);
        assert_eq!(alt_of_vector(&sv(2, &[1, 1, 1])), 1);
    }

    /// Independent O(2^n) oracle: maximum length of a subsequence of the
    /// nonzero entries in which consecutive values differ.
    fn alt_oracle(x: &SignedVector) -> usize {
        let nonzero: Vec<u8> = x.entries().iter().copied().filter(|&e| e != 0).collect();
        let m = nonzero.len();
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let mut len = 0;
            let mut last = 0u8;
            let mut alternating = true;
            for (i, &v) in nonzero.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if len > 0 && v == last {
                        alternating = false;
                        break;
                    }
                    last = v;
                    len += 1;
                }
            }
            if alternating {
                best = best.max(len);
            }
        }
        best
    }

    #[test]
    fn alt_matches_subsequence_oracle_exhaustively() {
        // all vectors with n <= 5, p <= 3; plus a sweep of n = 8, p = 2
        for p in 2..=3usize {
            for n in 0..=5usize {
                let total = (p + 1).pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut entries = vec![0u8; n];
                    for e in entries.iter_mut() {
                        *e = (c % (p + 1)) as u8;
                        c /= p + 1;
                    }
                    let x = sv(p, &entries);
                    assert_eq!(alt_of_vector(&x), alt_oracle(&x), "x = {entries:?}");
                }
            }
        }
        for code in 0..3u32.pow(8) {
            let mut c = code;
            let mut entries = vec![0u8; 8];
            for e in entries.iter_mut() {
                *e = (c % 3) as u8;
                c /= 3;
            }
            let x = sv(2, &entries);
            assert_eq!(alt_of_vector(&x), alt_oracle(&x));
        }
    }

    #[test]
    fn rotation_preserves_alt() {
        let x = sv(3, &[2, 0, 2, 1, 0, 3]);
        for j in 1..=3 {
            assert_eq!(alt_of_vector(&x.rotated(j)), alt_of_vector(&x));
        }
        // p applications of ω return the original
        let mut y = x.clone();
        for _ in 0..3 {
            y = y.rotated(1);
        }
        assert_eq!(x, y);
        assert_eq!(x.rotated(3), x);
    }

    #[test]
    fn rotation_example() {
        // p = 3: (ω², 0, ω³) · ω = (ω³, 0, ω¹)
        assert_eq!(sv(3, &[2, 0, 3]).rotated(1), sv(3, &[3, 0, 1]));
    }

    #[test]
    fn classes_partition_support() {
        let x = sv(3, &[2, 0, 2, 1, 0, 3]);
        assert_eq!(x.class(2), VertexSet::from_vertices([1, 3]));
        assert_eq!(x.class(1), VertexSet::from_vertices([4]));
        assert_eq!(x.class(3), VertexSet::from_vertices([6]));
        assert_eq!(x.support(), VertexSet::from_vertices([1, 3, 4, 6]));
    }

    /// Plain exhaustive oracle for alt_p(H, σ): no pruning, no symmetry.
    fn alt_with_ordering_oracle(h: &Hypergraph, p: usize, sigma: &VertexOrdering) -> usize {
        let n = h.n();
        let total = (p + 1).pow(n as u32);
        let mut best = 0;
        'vectors: for code in 0..total {
            let mut c = code;
            let mut entries = vec![0u8; n];
            for e in entries.iter_mut() {
                *e = (c % (p + 1)) as u8;
                c /= p + 1;
            }
            let x = sv(p, &entries);
            for value in 1..=p {
                let class = VertexSet::from_vertices(
                    x.class(value).vertices().map(|i| sigma.apply(i)),
                );
                if h.has_edge_within(class) {
                    continue 'vectors;
                }
            }
            best = best.max(alt_of_vector(&x));
        }
        best
    }

    #[test]
    fn alt_with_ordering_examples() {
        let id5 = VertexOrdering::identity(5);
        let got = alt_with_ordering(&k(5, 2), 2, &id5).unwrap();
        assert_eq!(alt_with_ordering_oracle(&k(5, 2), 2, &id5), 2);
        assert_eq!(got.value, 2);

        let edgeless = Hypergraph::edgeless(3).unwrap();
        let id3 = VertexOrdering::identity(3);
        assert_eq!(alt_with_ordering(&edgeless, 2, &id3).unwrap().value, 3);

        let id4 = VertexOrdering::identity(4);
        assert_eq!(alt_with_ordering_oracle(&k(4, 2), 2, &id4), 2);
        assert_eq!(alt_with_ordering(&k(4, 2), 2, &id4).unwrap().value, 2);
    }

    #[test]
    fn alt_with_ordering_witness_is_valid() {
        let h = k(5, 2);
        let id = VertexOrdering::identity(5);
        let got = alt_with_ordering(&h, 2, &id).unwrap();
        assert_eq!(alt_of_vector(&got.witness), got.value);
        for value in 1..=2 {
            let class = VertexSet::from_vertices(
                got.witness.class(value).vertices().map(|i| id.apply(i)),
            );
            assert!(!h.has_edge_within(class));
        }
    }

    #[test]
    fn alt_with_ordering_matches_oracle_on_random_orderings() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let hs = vec![k(4, 2), k(5, 2), k(4, 3), Hypergraph::edgeless(4).unwrap()];
        for h in &hs {
            for p in 2..=3 {
                for _ in 0..3 {
                    let mut perm: Vec<usize> = (1..=h.n()).collect();
                    perm.shuffle(&mut rng);
                    let sigma = VertexOrdering::new(h.n(), perm).unwrap();
                    assert_eq!(
                        alt_with_ordering(h, p, &sigma).unwrap().value,
                        alt_with_ordering_oracle(h, p, &sigma),
                    );
                }
            }
        }
    }

    #[test]
    fn alternation_number_examples() {
        assert_eq!(alternation_number(&k(5, 2), 2).unwrap().value, 2);
        assert_eq!(alternation_number(&k(7, 2), 3).unwrap().value, 3);
        let edgeless = Hypergraph::edgeless(4).unwrap();
        assert_eq!(alternation_number(&edgeless, 2).unwrap().value, 4);
        assert_eq!(alternation_number(&edgeless, 3).unwrap().value, 4);
    }

    #[test]
    fn alternation_number_of_complete_uniform_is_r_times_k_minus_1() {
        for r in 2..=3usize {
            for kk in 2..=3usize {
                for n in (r * (kk - 1)).max(kk)..=8 {
                    let got = alternation_number(&k(n, kk), r).unwrap();
                    assert_eq!(got.value, r * (kk - 1), "K_{n}^{kk}, r={r}");
                }
            }
        }
    }

    #[test]
    fn alternation_number_is_min_over_sampled_orderings() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let h = Hypergraph::from_vertex_lists(
            5,
            &[vec![1, 2], vec![2, 3, 4], vec![4, 5], vec![1, 5]],
        )
        .unwrap();
        for p in 2..=3 {
            let min = alternation_number(&h, p).unwrap();
            let reached = alt_with_ordering(&h, p, &min.ordering).unwrap().value;
            assert_eq!(reached, min.value);
            for _ in 0..10 {
                let mut perm: Vec<usize> = (1..=5).collect();
                perm.shuffle(&mut rng);
                let sigma = VertexOrdering::new(5, perm).unwrap();
                assert!(min.value <= alt_with_ordering(&h, p, &sigma).unwrap().value);
            }
        }
    }

    #[test]
    fn alternation_number_rejects_oversized_instances() {
        let h = Hypergraph::edgeless(10).unwrap();
        assert!(matches!(
            alternation_number(&h, 2),
            Err(Error::TooLarge(_))
        ));
        assert!(alternation_number_with_limit(&h, 2, 10).is_ok());
    }

    #[test]
    fn rejects_p_below_two() {
        assert!(SignedVector::new(1, vec![0]).is_err());
        let h = k(3, 2);
        assert!(alt_with_ordering(&h, 1, &VertexOrdering::identity(3)).is_err());
        assert!(alternation_number(&h, 1).is_err());
    }

    #[test]
    fn signed_vector_json_round_trip() {
        let x = sv(3, &[2, 0, 2, 1, 0, 3]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"p":3,"x":[2,0,2,1,0,3]}"#);
        let back: SignedVector = serde_json::from_str(&json).unwrap();
        assert_eq!(x, back);
        assert!(serde_json::from_str::<SignedVector>(r#"{"p":2,"x":[3]}"#).is_err());
    }
}
