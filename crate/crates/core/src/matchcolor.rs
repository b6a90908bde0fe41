//! Color-frequency mappings, (A,τ)-matching colorings, the exact τ-matching
//! chromatic number, and the sharp lower-bound machinery around it.
//!
//! A color-frequency mapping caps, per color `a`, the size of a
//! monochromatic matching: a coloring of the hyperedges is an
//! (A,τ)-matching coloring when no color class contains τ(a)+1 pairwise
//! disjoint edges. The exact solver searches palettes by total cap
//! multiset; only the multiset of τ-values matters, and a pointwise-larger
//! multiset admits every coloring a smaller one does, so for each palette
//! size it suffices to test the strongest available multiset.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::budget::Budget;
use crate::error::Error;
use crate::hypergraph::{exists_matching, Hypergraph, VertexSet};
use crate::ExtendedNat;
use crate::Result;

// ---------------------------------------------------------------------------
// ColorFrequencyMap
// ---------------------------------------------------------------------------

/// Finite encoding of a total map τ: ℕ -> {0..r−1}: explicit values for the
/// ids in `table`, `default` for every other id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorFrequencyMap {
    r: usize,
    default: usize,
    table: BTreeMap<usize, usize>,
}

impl ColorFrequencyMap {
    pub fn new(r: usize, default: usize, table: BTreeMap<usize, usize>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Precondition(
                "frequency bound r must be positive".into(),
            ));
        }
        if default >= r {
            return Err(Error::InvalidInput(format!(
                "default value {default} outside 0..={}",
                r - 1
            )));
        }
        for (&id, &v) in &table {
            if v >= r {
                return Err(Error::InvalidInput(format!(
                    "tau({id}) = {v} outside 0..={}",
                    r - 1
                )));
            }
        }
        Ok(ColorFrequencyMap { r, default, table })
    }

    /// The constant map τ ≡ `value`.
    pub fn constant(r: usize, value: usize) -> Result<Self> {
        ColorFrequencyMap::new(r, value, BTreeMap::new())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn default_value(&self) -> usize {
        self.default
    }

    pub fn table(&self) -> &BTreeMap<usize, usize> {
        &self.table
    }

    /// τ(id).
    pub fn value_of(&self, id: usize) -> usize {
        self.table.get(&id).copied().unwrap_or(self.default)
    }

    /// Is `v` in the image τ(ℕ)? The default is always attained (the table
    /// is finite, ℕ is not).
    pub fn has_value(&self, v: usize) -> bool {
        self.default == v || self.table.values().any(|&tv| tv == v)
    }

    /// All attainable values with finite multiplicity accounting: table
    /// entries are usable once per id, the default infinitely often.
    fn table_values_desc(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.table.values().copied().collect();
        vs.sort_unstable_by(|a, b| b.cmp(a));
        vs
    }

    /// The pointwise-largest multiset of `t` values drawable from the pool
    /// (each table id once, the default without limit), descending.
    fn strongest_palette(&self, t: usize) -> Vec<usize> {
        let mut pool = self.table_values_desc();
        pool.extend(std::iter::repeat(self.default).take(t));
        pool.sort_unstable_by(|a, b| b.cmp(a));
        pool.truncate(t);
        pool
    }

    /// Picks distinct color ids realizing the given value multiset: table
    /// ids first (smallest id per value), then fresh non-table naturals for
    /// copies of the default.
    fn realize_palette_ids(&self, caps: &[usize]) -> Result<Vec<usize>> {
        let mut used: Vec<usize> = Vec::with_capacity(caps.len());
        let mut fresh = 1usize;
        for &cap in caps {
            let from_table = self
                .table
                .iter()
                .find(|(id, &v)| v == cap && !used.contains(id))
                .map(|(&id, _)| id);
            let id = match from_table {
                Some(id) => id,
                None => {
                    if cap != self.default {
                        return Err(Error::Internal(format!(
                            "palette value {cap} is neither a free table value nor the default"
                        )));
                    }
                    while self.table.contains_key(&fresh) || used.contains(&fresh) {
                        fresh += 1;
                    }
                    fresh
                }
            };
            used.push(id);
        }
        Ok(used)
    }
}

#[derive(Serialize, Deserialize)]
struct TauJson {
    r: usize,
    default: usize,
    #[serde(default)]
    table: BTreeMap<usize, usize>,
}

impl Serialize for ColorFrequencyMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TauJson {
            r: self.r,
            default: self.default,
            table: self.table.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColorFrequencyMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TauJson::deserialize(d)?;
        ColorFrequencyMap::new(raw.r, raw.default, raw.table).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// EdgeColoring
// ---------------------------------------------------------------------------

/// A color id per hyperedge, aligned to the canonical edge order of the
/// target hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    target: Hypergraph,
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(target: Hypergraph, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != target.edge_count() {
            return Err(Error::InvalidInput(format!(
                "{} colors for {} edges",
                colors.len(),
                target.edge_count()
            )));
        }
        Ok(EdgeColoring { target, colors })
    }

    pub fn target(&self) -> &Hypergraph {
        &self.target
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// The set A of color ids actually used.
    pub fn palette(&self) -> Vec<usize> {
        let mut p = self.colors.clone();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// Edges of one color class.
    pub fn class_edges(&self, color: usize) -> Vec<VertexSet> {
        self.target
            .edges()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &c)| c == color)
            .map(|(e, _)| *e)
            .collect()
    }
}

impl Serialize for EdgeColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct ColorsJson<'a> {
            colors: &'a [usize],
        }
        ColorsJson {
            colors: &self.colors,
        }
        .serialize(s)
    }
}

/// Wire form of an edge coloring; pair with the hypergraph to rebuild.
#[derive(Serialize, Deserialize)]
pub struct EdgeColoringJson {
    pub colors: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Partition
// ---------------------------------------------------------------------------

/// An ordered partition S_1, ..., S_t of `[n]`; blocks may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    ground: usize,
    blocks: Vec<VertexSet>,
}

impl Partition {
    pub fn new(ground: usize, blocks: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for b in &blocks {
            if b.intersects(seen) {
                return Err(Error::InvalidInput("partition blocks overlap".into()));
            }
            seen = seen.union(*b);
        }
        if seen != VertexSet::full(ground) {
            return Err(Error::InvalidInput(format!(
                "partition blocks do not cover 1..={ground}"
            )));
        }
        Ok(Partition { ground, blocks })
    }

    /// Greedy filling: vertices 1..=n in order, block i takes up to
    /// `capacities[i]` of them, the final block takes the remainder.
    pub fn greedy_fill(ground: usize, capacities: &[usize]) -> Result<Self> {
        if capacities.is_empty() {
            return Err(Error::Precondition(
                "partition needs at least one block".into(),
            ));
        }
        let t = capacities.len();
        let mut blocks = vec![VertexSet::EMPTY; t];
        let mut v = 1;
        for i in 0..t - 1 {
            let mut taken = 0;
            while taken < capacities[i] && v <= ground {
                blocks[i].insert(v);
                v += 1;
                taken += 1;
            }
        }
        while v <= ground {
            blocks[t - 1].insert(v);
            v += 1;
        }
        Partition::new(ground, blocks)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    /// c(e) = min{ i : e ∩ S_i ≠ ∅ }, 1-based block indices per edge.
    pub fn min_block_coloring(&self, h: &Hypergraph) -> Result<Vec<usize>> {
        h.edges()
            .iter()
            .map(|e| {
                self.blocks
                    .iter()
                    .position(|b| b.intersects(*e))
                    .map(|i| i + 1)
                    .ok_or_else(|| {
                        Error::Internal(format!("edge {e:?} meets no partition block"))
                    })
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// (A, τ)-matching colorings
// ---------------------------------------------------------------------------

/// True iff for every used color `a`, the a-colored edges contain no
/// (τ(a)+1)-matching.
pub fn is_matching_coloring(coloring: &EdgeColoring, tau: &ColorFrequencyMap) -> bool {
    coloring.palette().into_iter().all(|a| {
        let class = coloring.class_edges(a);
        !exists_matching(&class, tau.value_of(a) + 1)
    })
}

/// Searches for an assignment of `caps.len()` color classes to the edges of
/// `h` such that class `j` never contains a (caps[j]+1)-matching. Returns
/// the class index per edge (canonical order), or `None` when infeasible.
///
/// Symmetry breaking: classes with equal caps are interchangeable, so an
/// empty class may be opened only if every earlier equal-cap class is
/// already in use. With `fix_first_edge` the first edge is committed to the
/// lowest class with a positive cap — sound for vertex-transitive
/// hypergraphs such as K_n^r (an automorphism moves some edge of that class
/// onto the first edge, or the class is empty and the first edge can be
/// moved into it), but not for general targets.
pub(crate) fn find_caps_coloring(
    h: &Hypergraph,
    caps: &[usize],
    fix_first_edge: bool,
    budget: &mut Budget,
    context: &str,
) -> Result<Option<Vec<usize>>> {
    let edges = h.edges();
    if edges.is_empty() {
        return Ok(Some(Vec::new()));
    }
    if caps.iter().all(|&c| c == 0) {
        return Ok(None);
    }
    let mut classes: Vec<Vec<VertexSet>> = vec![Vec::new(); caps.len()];
    let mut assignment = vec![0usize; edges.len()];
    let found = caps_dfs(
        edges,
        caps,
        fix_first_edge,
        0,
        &mut classes,
        &mut assignment,
        budget,
        context,
    )?;
    Ok(if found { Some(assignment) } else { None })
}

#[allow(clippy::too_many_arguments)]
fn caps_dfs(
    edges: &[VertexSet],
    caps: &[usize],
    fix_first_edge: bool,
    i: usize,
    classes: &mut [Vec<VertexSet>],
    assignment: &mut [usize],
    budget: &mut Budget,
    context: &str,
) -> Result<bool> {
    budget.tick(context)?;
    if i == edges.len() {
        return Ok(true);
    }
    let e = edges[i];
    for j in 0..caps.len() {
        if caps[j] == 0 {
            continue;
        }
        if classes[j].is_empty()
            && (0..j).any(|j2| caps[j2] == caps[j] && classes[j2].is_empty())
        {
            continue;
        }
        classes[j].push(e);
        let within_cap = !exists_matching(&classes[j], caps[j] + 1);
        if within_cap {
            assignment[i] = j;
            if caps_dfs(
                edges,
                caps,
                fix_first_edge,
                i + 1,
                classes,
                assignment,
                budget,
                context,
            )? {
                classes[j].pop();
                return Ok(true);
            }
        }
        classes[j].pop();
        if i == 0 && fix_first_edge {
            break;
        }
    }
    Ok(false)
}

/// Exact τ-matching chromatic number with a witness coloring when finite.
#[derive(Clone, Debug)]
pub struct MatchingChromatic {
    pub value: ExtendedNat,
    pub witness: Option<EdgeColoring>,
}

/// Least palette size admitting an (A,τ)-matching coloring of `h`, or
/// `Infinity` when no finite palette works (every usable cap is zero and an
/// edge exists). Iterates palette sizes upward, testing the strongest value
/// multiset of each size.
pub fn matching_chromatic_number(
    h: &Hypergraph,
    tau: &ColorFrequencyMap,
    budget: &mut Budget,
) -> Result<MatchingChromatic> {
    if h.edge_count() == 0 {
        return Ok(MatchingChromatic {
            value: ExtendedNat::Finite(0),
            witness: Some(EdgeColoring::new(h.clone(), Vec::new())?),
        });
    }
    // With a positive default, |E| singleton classes always work; with a
    // zero default only positive table values can ever carry edges.
    let t_max = if tau.default_value() >= 1 {
        h.edge_count()
    } else {
        tau.table().values().filter(|&&v| v >= 1).count()
    };
    for t in 1..=t_max {
        let caps = tau.strongest_palette(t);
        let context = format!("matching chromatic search at palette size {t} (sizes below {t} proved infeasible)");
        if let Some(assignment) = find_caps_coloring(h, &caps, false, budget, &context)? {
            let ids = tau.realize_palette_ids(&caps)?;
            let colors = assignment.into_iter().map(|j| ids[j]).collect();
            let witness = EdgeColoring::new(h.clone(), colors)?;
            debug_assert!(is_matching_coloring(&witness, tau));
            return Ok(MatchingChromatic {
                value: ExtendedNat::Finite(t),
                witness: Some(witness),
            });
        }
    }
    Ok(MatchingChromatic {
        value: ExtendedNat::Infinity,
        witness: None,
    })
}

// ---------------------------------------------------------------------------
// Lower bounds and constructions
// ---------------------------------------------------------------------------

/// min |A| over finite A ⊆ ℕ with Σ_{a∈A} τ(a) >= n − alt, taking the
/// largest available values first (table ids once each, the default without
/// limit); `Infinity` when no finite sum reaches the target. With
/// `require_nonempty`, A = ∅ is excluded even when the target is zero.
pub fn theorem3_lower_bound(
    n_vertices: usize,
    alt: usize,
    tau: &ColorFrequencyMap,
    require_nonempty: bool,
) -> Result<ExtendedNat> {
    if alt > n_vertices {
        return Err(Error::Precondition(format!(
            "alternation number {alt} exceeds vertex count {n_vertices}"
        )));
    }
    let need = n_vertices - alt;
    if need == 0 {
        return Ok(ExtendedNat::Finite(if require_nonempty { 1 } else { 0 }));
    }
    let table_values = tau.table_values_desc();
    let mut next_table = 0;
    let mut sum = 0usize;
    let mut count = 0usize;
    loop {
        let table_candidate = table_values.get(next_table).copied();
        let take = match table_candidate {
            Some(v) if v >= tau.default_value() => {
                next_table += 1;
                v
            }
            _ => tau.default_value(),
        };
        if take == 0 {
            return Ok(ExtendedNat::Infinity);
        }
        sum += take;
        count += 1;
        if sum >= need {
            return Ok(ExtendedNat::Finite(count));
        }
    }
}

/// Which sharpness statement to evaluate: the variant allowing an empty
/// palette, or the nonempty-palette variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaletteMode {
    AllowEmpty,
    Nonempty,
}

/// Closed-form τ-matching chromatic number of K_n^k: delegates to
/// `theorem3_lower_bound` with alt = r(k−1). Preconditions per mode:
/// `AllowEmpty` needs n >= r(k−1) (so the alternation value is exact);
/// `Nonempty` needs n >= k and n >= r(k−1). Both need r >= 2 and
/// r−1 ∈ τ(ℕ).
pub fn corollary5_value(
    n: usize,
    k: usize,
    r: usize,
    tau: &ColorFrequencyMap,
    mode: PaletteMode,
) -> Result<ExtendedNat> {
    if r < 2 {
        return Err(Error::Precondition(format!("requires r >= 2, got {r}")));
    }
    if k == 0 {
        return Err(Error::Precondition("requires k >= 1".into()));
    }
    if !tau.has_value(r - 1) {
        return Err(Error::Precondition(format!(
            "requires r-1 = {} in the image of tau",
            r - 1
        )));
    }
    if n < r * (k - 1) {
        return Err(Error::Precondition(format!(
            "requires n >= r(k-1): {n} < {}",
            r * (k - 1)
        )));
    }
    if mode == PaletteMode::Nonempty && n < k {
        return Err(Error::Precondition(format!(
            "requires n >= k: {n} < {k}"
        )));
    }
    theorem3_lower_bound(n, r * (k - 1), tau, mode == PaletteMode::Nonempty)
}

/// The block construction behind the sharpness upper bound: substitutes a
/// top color of cap r−1 into the palette if needed, greedily fills blocks
/// S_1..S_{t-1} up to their caps with the last block capped at rk−1, and
/// colors each edge of K_n^k by the first block it meets.
pub fn proposition5_coloring(
    n: usize,
    k: usize,
    r: usize,
    tau: &ColorFrequencyMap,
    palette: &[usize],
) -> Result<EdgeColoring> {
    if r < 2 {
        return Err(Error::Precondition(format!("requires r >= 2, got {r}")));
    }
    if k == 0 || n < k {
        return Err(Error::Precondition(format!(
            "requires n >= k >= 1, got n={n}, k={k}"
        )));
    }
    if n < r * (k - 1) {
        return Err(Error::Precondition(format!(
            "requires n - r(k-1) >= 0: {n} < {}",
            r * (k - 1)
        )));
    }
    if !tau.has_value(r - 1) {
        return Err(Error::Precondition(format!(
            "requires r-1 = {} in the image of tau",
            r - 1
        )));
    }
    if palette.is_empty() {
        return Err(Error::Precondition("palette must be nonempty".into()));
    }
    let mut sorted = palette.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != palette.len() {
        return Err(Error::Precondition("palette ids must be distinct".into()));
    }
    let sum: usize = sorted.iter().map(|&a| tau.value_of(a)).sum();
    if sum < n - r * (k - 1) {
        return Err(Error::Precondition(format!(
            "requires sum of tau over the palette >= n - r(k-1): {sum} < {}",
            n - r * (k - 1)
        )));
    }
    // Order by cap, then substitute a cap-(r−1) color for the top one if it
    // falls short: the sum can only grow.
    sorted.sort_by_key(|&a| (tau.value_of(a), a));
    let t = sorted.len();
    if tau.value_of(sorted[t - 1]) != r - 1 {
        let replacement = tau
            .table()
            .iter()
            .find(|(id, &v)| v == r - 1 && !sorted.contains(id))
            .map(|(&id, _)| id)
            .or_else(|| {
                if tau.default_value() == r - 1 {
                    let mut fresh = 1usize;
                    while tau.table().contains_key(&fresh) || sorted.contains(&fresh) {
                        fresh += 1;
                    }
                    Some(fresh)
                } else {
                    None
                }
            })
            .ok_or_else(|| {
                Error::Internal("no substitutable color of cap r-1 available".into())
            })?;
        sorted[t - 1] = replacement;
    }
    let caps: Vec<usize> = sorted[..t - 1]
        .iter()
        .map(|&a| tau.value_of(a))
        .collect();

    let h = Hypergraph::complete_uniform(n, k)?;
    let mut capacities = caps;
    capacities.push(n); // remainder block; size bound checked below
    let partition = Partition::greedy_fill(n, &capacities)?;
    let last = partition.blocks()[t - 1];
    if last.len() > r * k - 1 {
        return Err(Error::Precondition(format!(
            "requires the final block to have at most rk-1 = {} vertices, got {}",
            r * k - 1,
            last.len()
        )));
    }
    let block_indices = partition.min_block_coloring(&h)?;
    let colors = block_indices.into_iter().map(|i| sorted[i - 1]).collect();
    let coloring = EdgeColoring::new(h, colors)?;
    if !is_matching_coloring(&coloring, tau) {
        return Err(Error::Internal(
            "block construction produced an invalid matching coloring".into(),
        ));
    }
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize, r: usize) -> Hypergraph {
        Hypergraph::complete_uniform(n, r).unwrap()
    }

    fn tau_const(r: usize, v: usize) -> ColorFrequencyMap {
        ColorFrequencyMap::constant(r, v).unwrap()
    }

    #[test]
    fn tau_lookup_and_validation() {
        let tau = ColorFrequencyMap::new(2, 1, BTreeMap::from([(3, 0)])).unwrap();
        assert_eq!(tau.value_of(3), 0);
        assert_eq!(tau.value_of(1), 1);
        assert_eq!(tau.value_of(99), 1);
        assert!(tau.has_value(0));
        assert!(tau.has_value(1));
        assert!(ColorFrequencyMap::new(2, 2, BTreeMap::new()).is_err());
        assert!(ColorFrequencyMap::new(2, 0, BTreeMap::from([(1, 5)])).is_err());
    }

    #[test]
    fn tau_json_round_trip() {
        let tau = ColorFrequencyMap::new(2, 1, BTreeMap::from([(3, 0)])).unwrap();
        let json = serde_json::to_string(&tau).unwrap();
        assert_eq!(json, r#"{"r":2,"default":1,"table":{"3":0}}"#);
        let back: ColorFrequencyMap = serde_json::from_str(&json).unwrap();
        assert_eq!(tau, back);
    }

    #[test]
    fn matching_coloring_examples() {
        // the bad coloring of K_4^2: edges at vertex 1 get color 1, rest color 2
        let h = k(4, 2);
        let colors: Vec<usize> = h
            .edges()
            .iter()
            .map(|e| if e.contains(1) { 1 } else { 2 })
            .collect();
        let c = EdgeColoring::new(h.clone(), colors).unwrap();
        assert!(is_matching_coloring(&c, &tau_const(2, 1)));

        let mono = EdgeColoring::new(h.clone(), vec![7; 6]).unwrap();
        assert!(!is_matching_coloring(&mono, &tau_const(2, 1)));

        let edgeless = Hypergraph::edgeless(3).unwrap();
        let empty = EdgeColoring::new(edgeless, vec![]).unwrap();
        assert!(is_matching_coloring(&empty, &tau_const(2, 0)));
    }

    #[test]
    fn matching_chromatic_examples() {
        let mut budget = Budget::unlimited();
        let got = matching_chromatic_number(&k(6, 2), &tau_const(2, 1), &mut budget).unwrap();
        assert_eq!(got.value, ExtendedNat::Finite(4));
        let w = got.witness.unwrap();
        assert!(is_matching_coloring(&w, &tau_const(2, 1)));
        assert_eq!(w.palette().len(), 4);

        let edgeless = Hypergraph::edgeless(5).unwrap();
        let got = matching_chromatic_number(&edgeless, &tau_const(3, 0), &mut budget).unwrap();
        assert_eq!(got.value, ExtendedNat::Finite(0));

        let got = matching_chromatic_number(&k(4, 2), &tau_const(2, 1), &mut budget).unwrap();
        assert_eq!(got.value, ExtendedNat::Finite(2));
    }

    #[test]
    fn matching_chromatic_optimality_certificate() {
        // palette one smaller than the optimum is infeasible
        let mut budget = Budget::unlimited();
        let tau = tau_const(2, 1);
        let caps3 = tau.strongest_palette(3);
        assert!(
            find_caps_coloring(&k(6, 2), &caps3, false, &mut budget, "cert").unwrap().is_none()
        );
    }

    #[test]
    fn matching_chromatic_infinite_when_all_caps_zero() {
        let mut budget = Budget::unlimited();
        let got = matching_chromatic_number(&k(3, 2), &tau_const(2, 0), &mut budget).unwrap();
        assert_eq!(got.value, ExtendedNat::Infinity);
        assert!(got.witness.is_none());
    }

    #[test]
    fn matching_chromatic_with_limited_table() {
        // default 0, table gives a single usable color of cap 2:
        // K_5^2 has nu = 2, so one class suffices
        let mut budget = Budget::unlimited();
        let tau = ColorFrequencyMap::new(3, 0, BTreeMap::from([(4, 2)])).unwrap();
        let got = matching_chromatic_number(&k(5, 2), &tau, &mut budget).unwrap();
        assert_eq!(got.value, ExtendedNat::Finite(1));
        assert_eq!(got.witness.unwrap().palette(), vec![4]);

        // K_7^2 has nu = 3 > 2 and no second positive cap: infinite
        let got = matching_chromatic_number(&k(7, 2), &tau, &mut budget).unwrap();
        assert_eq!(got.value, ExtendedNat::Infinity);
    }

    /// Oracle: minimum |A| by direct enumeration over subsets of a candidate
    /// id universe (table ids plus enough fresh default ids).
    fn theorem3_oracle(
        n_vertices: usize,
        alt: usize,
        tau: &ColorFrequencyMap,
        require_nonempty: bool,
    ) -> ExtendedNat {
        let need = n_vertices - alt;
        let mut ids: Vec<usize> = tau.table().keys().copied().collect();
        let mut fresh = 1;
        for _ in 0..need.max(1) {
            while tau.table().contains_key(&fresh) || ids.contains(&fresh) {
                fresh += 1;
            }
            ids.push(fresh);
        }
        let mut best: Option<usize> = None;
        for mask in 0u32..(1 << ids.len()) {
            let chosen: Vec<usize> = (0..ids.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ids[i])
                .collect();
            if require_nonempty && chosen.is_empty() {
                continue;
            }
            let sum: usize = chosen.iter().map(|&a| tau.value_of(a)).sum();
            if sum >= need && best.map_or(true, |b| chosen.len() < b) {
                best = Some(chosen.len());
            }
        }
        best.map_or(ExtendedNat::Infinity, ExtendedNat::Finite)
    }

    #[test]
    fn theorem3_lower_bound_examples() {
        // need 4, table {1 -> 1, 2 -> 3}, default 0: {1, 2} reaches 4
        let tau = ColorFrequencyMap::new(4, 0, BTreeMap::from([(1, 1), (2, 3)])).unwrap();
        assert_eq!(
            theorem3_lower_bound(4, 0, &tau, false).unwrap(),
            ExtendedNat::Finite(2)
        );
        assert_eq!(theorem3_oracle(4, 0, &tau, false), ExtendedNat::Finite(2));

        assert_eq!(
            theorem3_lower_bound(5, 5, &tau_const(2, 0), false).unwrap(),
            ExtendedNat::Finite(0)
        );
        assert_eq!(
            theorem3_lower_bound(5, 4, &tau_const(2, 0), false).unwrap(),
            ExtendedNat::Infinity
        );
        assert_eq!(
            theorem3_lower_bound(5, 5, &tau_const(2, 0), true).unwrap(),
            ExtendedNat::Finite(1)
        );
    }

    #[test]
    fn theorem3_lower_bound_matches_oracle() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let r = rng.random_range(2..=4);
            let default = rng.random_range(0..r);
            let mut table = BTreeMap::new();
            for id in 1..=rng.random_range(0..4usize) {
                table.insert(id, rng.random_range(0..r));
            }
            let tau = ColorFrequencyMap::new(r, default, table).unwrap();
            let n = rng.random_range(0..=8usize);
            let alt = rng.random_range(0..=n);
            let nonempty = rng.random_bool(0.5);
            assert_eq!(
                theorem3_lower_bound(n, alt, &tau, nonempty).unwrap(),
                theorem3_oracle(n, alt, &tau, nonempty),
                "n={n}, alt={alt}, tau={tau:?}, nonempty={nonempty}"
            );
        }
    }

    #[test]
    fn corollary5_examples() {
        assert_eq!(
            corollary5_value(6, 2, 2, &tau_const(2, 1), PaletteMode::AllowEmpty).unwrap(),
            ExtendedNat::Finite(4)
        );
        assert_eq!(
            corollary5_value(4, 2, 2, &tau_const(2, 1), PaletteMode::Nonempty).unwrap(),
            ExtendedNat::Finite(2)
        );
        // n = r(k-1): the requirement is zero and the empty palette attains it
        assert_eq!(
            corollary5_value(2, 2, 2, &tau_const(2, 1), PaletteMode::AllowEmpty).unwrap(),
            ExtendedNat::Finite(0)
        );
        assert!(corollary5_value(1, 2, 2, &tau_const(2, 1), PaletteMode::AllowEmpty).is_err());
        assert!(corollary5_value(1, 2, 2, &tau_const(2, 0), PaletteMode::Nonempty).is_err());
    }

    #[test]
    fn proposition5_examples() {
        let tau = tau_const(2, 1);
        let c = proposition5_coloring(4, 2, 2, &tau, &[1, 2]).unwrap();
        assert!(is_matching_coloring(&c, &tau));
        assert_eq!(c.palette(), vec![1, 2]);
        // S_1 = {1}, S_2 = {2,3,4}: edges at vertex 1 take the first color
        for (e, &color) in c.target().edges().iter().zip(c.colors()) {
            assert_eq!(color == 1, e.contains(1));
        }

        let c = proposition5_coloring(6, 2, 2, &tau, &[1, 2, 3, 4]).unwrap();
        assert!(is_matching_coloring(&c, &tau));
        assert_eq!(c.palette().len(), 4);
    }

    #[test]
    fn proposition5_boundary() {
        // single color of cap r-1 = 1: n = rk is rejected, n = rk-1 works
        let tau = tau_const(2, 1);
        assert!(proposition5_coloring(4, 2, 2, &tau, &[1]).is_err());
        let c = proposition5_coloring(3, 2, 2, &tau, &[1]).unwrap();
        assert!(is_matching_coloring(&c, &tau));
        assert_eq!(c.palette(), vec![1]);
    }

    #[test]
    fn proposition5_substitutes_top_color() {
        // tau: ids 1, 2 -> 0, default 1 = r-1. At n = r(k-1) the sum
        // requirement is zero, but the top color must still be swapped for
        // one of cap r-1 before the final block can hold rk-1 vertices.
        let tau = ColorFrequencyMap::new(2, 1, BTreeMap::from([(1, 0), (2, 0)])).unwrap();
        let c = proposition5_coloring(2, 2, 2, &tau, &[1, 2]).unwrap();
        assert!(is_matching_coloring(&c, &tau));
        let palette = c.palette();
        assert!(palette.iter().all(|&a| tau.value_of(a) == 1));
        assert!(!palette.contains(&1) && !palette.contains(&2));
    }

    #[test]
    fn proposition5_rejects_insufficient_sum() {
        let tau = tau_const(2, 1);
        let err = proposition5_coloring(6, 2, 2, &tau, &[1, 2]).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("sum of tau")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn greedy_partition_respects_caps() {
        let p = Partition::greedy_fill(6, &[1, 2, 6]).unwrap();
        assert_eq!(p.blocks()[0], VertexSet::from_vertices([1]));
        assert_eq!(p.blocks()[1], VertexSet::from_vertices([2, 3]));
        assert_eq!(p.blocks()[2], VertexSet::from_vertices([4, 5, 6]));
        assert!(Partition::new(3, vec![VertexSet::from_vertices([1, 2])]).is_err());
        assert!(Partition::new(
            2,
            vec![
                VertexSet::from_vertices([1, 2]),
                VertexSet::from_vertices([2])
            ]
        )
        .is_err());
    }

    #[test]
    fn coloring_serializes_colors_only() {
        let h = k(3, 2);
        let c = EdgeColoring::new(h, vec![1, 2, 2]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"colors":[1,2,2]}"#);
    }
}
