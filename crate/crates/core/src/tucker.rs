//! The generalized Z_p-Tucker machinery: equivariant label maps on signed
//! vectors, chain-condition checking by dynamic programming over the subset
//! DAG, the explicit construction from a matching coloring, the classical
//! γ specialization, and an exhaustive counterexample hunt.
//!
//! Signed vectors are indexed by a big-endian radix code over `p + 1`
//! digits, so numeric code order is lexicographic order on entry tuples.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::alternation::{
    alt_with_ordering, alternation_number, SignedVector, VertexOrdering,
};
use crate::budget::Budget;
use crate::error::Error;
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::matchcolor::{is_matching_coloring, ColorFrequencyMap, EdgeColoring};
use crate::ramsey::is_prime;
use crate::Result;

/// Hard cap on the dense table size `(p+1)^n`.
const MAX_TABLE: usize = 2_000_000;

/// Cap on the counterexample hunt's table size.
const MAX_HUNT_TABLE: usize = 250_000;

// ---------------------------------------------------------------------------
// Radix codes
// ---------------------------------------------------------------------------

/// Dense indexing of `(Z_p ∪ {0})^n` by base-(p+1) codes, most significant
/// digit first.
#[derive(Clone, Debug)]
struct Codes {
    n: usize,
    p: usize,
    pow: Vec<usize>,
}

impl Codes {
    fn new(n: usize, p: usize) -> Result<Self> {
        let mut pow = vec![1usize; n + 1];
        for i in 1..=n {
            pow[i] = pow[i - 1].checked_mul(p + 1).ok_or_else(|| {
                Error::TooLarge(format!("({}+1)^{n} overflows", p))
            })?;
            if pow[i] > MAX_TABLE {
                return Err(Error::TooLarge(format!(
                    "dense table of ({}+1)^{n} signed vectors exceeds {MAX_TABLE}",
                    p
                )));
            }
        }
        Ok(Codes { n, p, pow })
    }

    fn total(&self) -> usize {
        self.pow[self.n]
    }

    /// Digit at 0-based position `i` (most significant first).
    fn digit(&self, code: usize, i: usize) -> usize {
        code / self.pow[self.n - 1 - i] % (self.p + 1)
    }

    fn decode(&self, code: usize) -> Vec<u8> {
        (0..self.n).map(|i| self.digit(code, i) as u8).collect()
    }

    fn encode(&self, digits: &[u8]) -> usize {
        digits
            .iter()
            .enumerate()
            .map(|(i, &d)| d as usize * self.pow[self.n - 1 - i])
            .sum()
    }

    /// Support as a bitmask over 0-based positions.
    fn support(&self, code: usize) -> u64 {
        let mut mask = 0u64;
        for i in 0..self.n {
            if self.digit(code, i) != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Zeroes every position outside `keep` (bitmask over 0-based positions).
    fn restrict(&self, code: usize, keep: u64) -> usize {
        let mut out = 0usize;
        for i in 0..self.n {
            if keep >> i & 1 == 1 {
                out += self.digit(code, i) * self.pow[self.n - 1 - i];
            }
        }
        out
    }

    /// The ω-action on codes: every nonzero digit shifted by `j`.
    fn rotate(&self, code: usize, j: usize) -> usize {
        let mut out = 0usize;
        for i in 0..self.n {
            let d = self.digit(code, i);
            if d != 0 {
                out += ((d + j - 1) % self.p + 1) * self.pow[self.n - 1 - i];
            }
        }
        out
    }

    /// Number of maximal runs of equal consecutive nonzero digits.
    fn alt(&self, code: usize) -> usize {
        let mut runs = 0;
        let mut last = 0;
        for i in 0..self.n {
            let d = self.digit(code, i);
            if d != 0 {
                if d != last {
                    runs += 1;
                }
                last = d;
            }
        }
        runs
    }

    fn to_vector(&self, code: usize) -> SignedVector {
        SignedVector::new(self.p, self.decode(code)).expect("codes stay in range")
    }
}

// ---------------------------------------------------------------------------
// LambdaMap
// ---------------------------------------------------------------------------

/// A total map λ = (λ1, λ2) on the nonzero signed vectors, together with
/// the per-level caps γ. λ1 is a group element as an exponent in `1..=p`,
/// λ2 a level in `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMap {
    n: usize,
    p: usize,
    m: usize,
    gamma: Vec<usize>,
    codes: Codes,
    entries: Vec<Option<(u8, u32)>>,
}

impl PartialEq for Codes {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.p == other.p
    }
}
impl Eq for Codes {}

impl LambdaMap {
    pub fn new(
        n: usize,
        p: usize,
        gamma: Vec<usize>,
        entries: Vec<Option<(u8, u32)>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition(
                "lambda maps need at least one coordinate".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let m = gamma.len();
        if m == 0 {
            return Err(Error::Precondition("at least one level is required".into()));
        }
        for (i, &g) in gamma.iter().enumerate() {
            if g == 0 || g > p - 1 {
                return Err(Error::InvalidInput(format!(
                    "gamma_{} = {g} outside 1..={}",
                    i + 1,
                    p - 1
                )));
            }
        }
        let codes = Codes::new(n, p)?;
        if entries.len() != codes.total() {
            return Err(Error::InvalidInput(format!(
                "table has {} slots, expected {}",
                entries.len(),
                codes.total()
            )));
        }
        if entries[0].is_some() {
            return Err(Error::InvalidInput(
                "the zero vector must not carry a label".into(),
            ));
        }
        for (code, entry) in entries.iter().enumerate().skip(1) {
            match entry {
                None => {
                    return Err(Error::InvalidInput(format!(
                        "table is not total: vector {:?} is unlabeled",
                        codes.decode(code)
                    )))
                }
                Some((l1, l2)) => {
                    if *l1 == 0 || *l1 as usize > p {
                        return Err(Error::InvalidInput(format!(
                            "lambda1 = {l1} outside 1..={p}"
                        )));
                    }
                    if *l2 == 0 || *l2 as usize > m {
                        return Err(Error::InvalidInput(format!(
                            "lambda2 = {l2} outside 1..={m}"
                        )));
                    }
                }
            }
        }
        Ok(LambdaMap {
            n,
            p,
            m,
            gamma,
            codes,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gamma(&self) -> &[usize] {
        &self.gamma
    }

    /// λ(X) as (exponent of λ1, level λ2).
    pub fn get(&self, x: &SignedVector) -> Result<(usize, usize)> {
        if x.p() != self.p || x.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "vector has p={}, n={}, map has p={}, n={}",
                x.p(),
                x.len(),
                self.p,
                self.n
            )));
        }
        let code = self.codes.encode(x.entries());
        self.entries[code]
            .map(|(l1, l2)| (l1 as usize, l2 as usize))
            .ok_or_else(|| Error::InvalidInput("the zero vector carries no label".into()))
    }

    fn at(&self, code: usize) -> (usize, usize) {
        let (l1, l2) = self.entries[code].expect("validated total table");
        (l1 as usize, l2 as usize)
    }
}

// ---------------------------------------------------------------------------
// Poset and action primitives
// ---------------------------------------------------------------------------

/// The ω^j action on a signed vector; `j = p` is the identity.
pub fn multiply(x: &SignedVector, j: usize) -> Result<SignedVector> {
    if j == 0 || j > x.p() {
        return Err(Error::Precondition(format!(
            "exponent {j} outside 1..={}",
            x.p()
        )));
    }
    Ok(x.rotated(j))
}

/// `X1 ⊂ X2` in the signed-vector order: every nonzero entry of X1 equals
/// the corresponding entry of X2 (reflexive).
pub fn subset_relation(x1: &SignedVector, x2: &SignedVector) -> Result<bool> {
    if x1.p() != x2.p() || x1.len() != x2.len() {
        return Err(Error::InvalidInput(format!(
            "mismatched vectors: p={}/{}, n={}/{}",
            x1.p(),
            x2.p(),
            x1.len(),
            x2.len()
        )));
    }
    Ok(x1
        .entries()
        .iter()
        .zip(x2.entries())
        .all(|(&a, &b)| a == 0 || a == b))
}

// ---------------------------------------------------------------------------
// Hypothesis checking
// ---------------------------------------------------------------------------

/// First equivariance violation, if any: a vector X and exponent j with
/// λ(ω^j X) ≠ (ω^j λ1(X), λ2(X)).
pub fn equivariance_witness(lambda: &LambdaMap) -> Option<(SignedVector, usize)> {
    let codes = &lambda.codes;
    for code in 1..codes.total() {
        let (l1, l2) = lambda.at(code);
        for j in 1..lambda.p {
            let rotated = codes.rotate(code, j);
            let (r1, r2) = lambda.at(rotated);
            let expected = (l1 + j - 1) % lambda.p + 1;
            if r1 != expected || r2 != l2 {
                return Some((codes.to_vector(code), j));
            }
        }
    }
    None
}

/// True iff λ1 rotates with the action and λ2 is invariant under it.
pub fn check_equivariance(lambda: &LambdaMap) -> bool {
    equivariance_witness(lambda).is_none()
}

/// Maximum number of distinct λ1 values over ⊂-chains of distinct vectors
/// whose λ2 all equal `level`. Dynamic programming over the subset DAG in
/// support-size order; per vector the achievable sets of seen λ1 values are
/// kept as a bitset of subsets of Z_p.
pub fn max_distinct_lambda1_on_chains(lambda: &LambdaMap, level: usize) -> Result<usize> {
    if level == 0 || level > lambda.m {
        return Err(Error::Precondition(format!(
            "level {level} outside 1..={}",
            lambda.m
        )));
    }
    let codes = &lambda.codes;
    let mut order: Vec<usize> = (1..codes.total()).collect();
    order.sort_unstable_by_key(|&c| (codes.support(c).count_ones(), c));
    let mut achievable: Vec<u32> = vec![0; codes.total()];
    let mut best = 0usize;
    for &code in &order {
        let (l1, l2) = lambda.at(code);
        if l2 != level {
            continue;
        }
        let own = 1u32 << (l1 - 1); // the set {λ1(code)} as a bitmask over Z_p
        let mut acc: u32 = 1 << own;
        let sup = codes.support(code);
        // proper nonempty submasks of the support
        let mut sub = (sup - 1) & sup;
        while sub != 0 {
            let y = codes.restrict(code, sub);
            let mut sets = achievable[y];
            while sets != 0 {
                let s = sets.trailing_zeros();
                sets &= sets - 1;
                acc |= 1 << (s | own);
            }
            sub = (sub - 1) & sup;
        }
        achievable[code] = acc;
        let mut sets = acc;
        while sets != 0 {
            let s = sets.trailing_zeros();
            sets &= sets - 1;
            best = best.max(s.count_ones() as usize);
        }
    }
    Ok(best)
}

/// Verdict for one level of the chain condition.
#[derive(Clone, Debug, Serialize)]
pub struct LevelCheck {
    pub level: usize,
    pub gamma: usize,
    pub max_distinct: usize,
    pub ok: bool,
}

/// Full hypothesis report: equivariance, per-level chain conditions, and
/// the conclusion Σγ >= n. `hypotheses_hold` covers equivariance plus the
/// chain conditions; a map with holding hypotheses but a failing conclusion
/// would contradict the lemma.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesesReport {
    pub n: usize,
    pub p: usize,
    pub m: usize,
    pub equivariant: bool,
    pub equivariance_witness: Option<(SignedVector, usize)>,
    pub levels: Vec<LevelCheck>,
    pub gamma_sum: usize,
    pub chain_conditions_hold: bool,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
}

pub fn check_hypotheses(lambda: &LambdaMap) -> Result<HypothesesReport> {
    let witness = equivariance_witness(lambda);
    let equivariant = witness.is_none();
    let mut levels = Vec::with_capacity(lambda.m);
    for level in 1..=lambda.m {
        let max_distinct = max_distinct_lambda1_on_chains(lambda, level)?;
        let gamma = lambda.gamma[level - 1];
        levels.push(LevelCheck {
            level,
            gamma,
            max_distinct,
            ok: max_distinct <= gamma,
        });
    }
    let chain_conditions_hold = levels.iter().all(|l| l.ok);
    let gamma_sum: usize = lambda.gamma.iter().sum();
    Ok(HypothesesReport {
        n: lambda.n,
        p: lambda.p,
        m: lambda.m,
        equivariant,
        equivariance_witness: witness,
        levels,
        gamma_sum,
        chain_conditions_hold,
        hypotheses_hold: equivariant && chain_conditions_hold,
        conclusion_holds: gamma_sum >= lambda.n,
    })
}

/// The classical parameterization: γ_1 = ... = γ_α = 1 and
/// γ_{α+1} = ... = γ_m = p − 1.
pub fn classical_gamma(alpha: usize, m: usize, p: usize) -> Result<Vec<usize>> {
    if alpha > m {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} exceeds m = {m}"
        )));
    }
    if p < 2 {
        return Err(Error::Precondition(format!("requires p >= 2, got {p}")));
    }
    Ok((0..m).map(|i| if i < alpha { 1 } else { p - 1 }).collect())
}

// ---------------------------------------------------------------------------
// The construction from a matching coloring
// ---------------------------------------------------------------------------

/// The total order ≼ on subsets of `[n]` used to pick λ1 in the
/// high-alternation case. The construction is sound for any total order;
/// two are provided so that independence can be demonstrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOrder {
    /// Compare characteristic bitmasks numerically (largest element first).
    Colex,
    /// Compare sorted element sequences (smallest element first).
    Lex,
}

fn cmp_sets(a: VertexSet, b: VertexSet, order: SetOrder) -> Ordering {
    match order {
        SetOrder::Colex => a.bits().cmp(&b.bits()),
        SetOrder::Lex => {
            let mut ia = a.vertices();
            let mut ib = b.vertices();
            loop {
                match (ia.next(), ib.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some(x), Some(y)) => match x.cmp(&y) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                }
            }
        }
    }
}

/// Builds the label map of the lower-bound proof from an (A,τ)-matching
/// coloring, with the colexicographic class order.
///
/// For `alt(X) <= alt_p(H,σ)` the label is (first nonzero entry, alt(X));
/// above that threshold some class covers an edge, λ2 is the largest
/// color index whose class is covered plus the alternation offset, and λ1
/// is the ≼-largest covering class. The levels get γ = 1 on the
/// alternation range and γ = τ(a_j) beyond it. σ must attain the
/// alternation number of H.
pub fn build_lambda_from_coloring(
    h: &Hypergraph,
    sigma: &VertexOrdering,
    coloring: &EdgeColoring,
    tau: &ColorFrequencyMap,
    p: usize,
) -> Result<LambdaMap> {
    build_lambda_from_coloring_with_order(h, sigma, coloring, tau, p, SetOrder::Colex)
}

pub fn build_lambda_from_coloring_with_order(
    h: &Hypergraph,
    sigma: &VertexOrdering,
    coloring: &EdgeColoring,
    tau: &ColorFrequencyMap,
    p: usize,
    order: SetOrder,
) -> Result<LambdaMap> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if coloring.target() != h {
        return Err(Error::InvalidInput(
            "coloring targets a different hypergraph".into(),
        ));
    }
    if sigma.len() != h.n() {
        return Err(Error::InvalidInput(format!(
            "ordering has {} entries for {} vertices",
            sigma.len(),
            h.n()
        )));
    }
    if h.n() == 0 {
        return Err(Error::Precondition(
            "the construction needs at least one vertex".into(),
        ));
    }
    if !is_matching_coloring(coloring, tau) {
        return Err(Error::Precondition(
            "the coloring is not a matching coloring for tau".into(),
        ));
    }
    let palette = coloring.palette();
    for &a in &palette {
        if tau.value_of(a) > p - 1 {
            return Err(Error::Precondition(format!(
                "tau({a}) = {} exceeds p-1 = {}",
                tau.value_of(a),
                p - 1
            )));
        }
    }
    let alt_sigma = alt_with_ordering(h, p, sigma)?.value;
    let alt_exact = alternation_number(h, p)?.value;
    if alt_sigma != alt_exact {
        return Err(Error::Precondition(format!(
            "sigma attains alt {alt_sigma}, but the alternation number is {alt_exact}"
        )));
    }

    let t = palette.len();
    let mut gamma = vec![1usize; alt_sigma];
    gamma.extend(palette.iter().map(|&a| tau.value_of(a)));

    // per color (in palette order) the vertex masks of its edges
    let class_edge_masks: Vec<Vec<VertexSet>> = palette
        .iter()
        .map(|&a| coloring.class_edges(a))
        .collect();

    let codes = Codes::new(h.n(), p)?;
    let mut entries: Vec<Option<(u8, u32)>> = vec![None; codes.total()];
    for code in 1..codes.total() {
        let alt = codes.alt(code);
        let label = if alt <= alt_sigma {
            let first = (0..h.n())
                .map(|i| codes.digit(code, i))
                .find(|&d| d != 0)
                .expect("nonzero vector has a nonzero digit");
            (first as u8, alt as u32)
        } else {
            // classes as position sets and as vertex sets through sigma
            let mut class_positions = vec![VertexSet::EMPTY; p + 1];
            for i in 0..h.n() {
                let d = codes.digit(code, i);
                if d != 0 {
                    class_positions[d].insert(i + 1);
                }
            }
            let covered_by = |value: usize, j: usize| -> bool {
                let vertex_set = VertexSet::from_vertices(
                    class_positions[value].vertices().map(|i| sigma.apply(i)),
                );
                class_edge_masks[j]
                    .iter()
                    .any(|e| e.is_subset_of(vertex_set))
            };
            let zeta = (0..t)
                .rev()
                .find(|&j| (1..=p).any(|value| covered_by(value, j)))
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "vector {:?} exceeds alt_p(H, sigma) but no class covers an edge",
                        codes.decode(code)
                    ))
                })?;
            let l1 = (1..=p)
                .filter(|&value| covered_by(value, zeta))
                .max_by(|&a, &b| cmp_sets(class_positions[a], class_positions[b], order))
                .expect("zeta guarantees a covering class");
            (l1 as u8, (alt_sigma + zeta + 1) as u32)
        };
        entries[code] = Some(label);
    }
    LambdaMap::new(h.n(), p, gamma, entries)
}

// ---------------------------------------------------------------------------
// Counterexample hunt
// ---------------------------------------------------------------------------

/// Exhaustively enumerates equivariant label maps with the given γ vector
/// (free choice on one representative per ω-orbit, extended by the action),
/// pruning on chain-condition violations as labels are placed. Returns the
/// first map satisfying every hypothesis — which would contradict the
/// lemma, since the caller must supply Σγ < n — or `None` after exhausting
/// the space.
pub fn search_counterexample(
    n: usize,
    p: usize,
    gamma: &[usize],
    budget: &mut Budget,
) -> Result<Option<LambdaMap>> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let m = gamma.len();
    if m == 0 {
        return Err(Error::Precondition("at least one level is required".into()));
    }
    for (i, &g) in gamma.iter().enumerate() {
        if g == 0 || g > p - 1 {
            return Err(Error::Precondition(format!(
                "gamma_{} = {g} outside 1..={}",
                i + 1,
                p - 1
            )));
        }
    }
    let gamma_sum: usize = gamma.iter().sum();
    if gamma_sum >= n {
        return Err(Error::Precondition(format!(
            "sum of gamma = {gamma_sum} >= n = {n}: the lemma claims nothing here"
        )));
    }
    let codes = Codes::new(n, p)?;
    if codes.total() > MAX_HUNT_TABLE {
        return Err(Error::TooLarge(format!(
            "hunt over ({}+1)^{n} vectors exceeds {MAX_HUNT_TABLE}",
            p
        )));
    }

    // Orbits of the free ω-action, keyed by the numerically (= lexically)
    // least member, processed in support-size order.
    let total = codes.total();
    let mut orbit_of = vec![usize::MAX; total];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for code in 1..total {
        if orbit_of[code] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (1..=p).map(|j| codes.rotate(code, j)).collect();
        let rep = *members.iter().min().unwrap();
        debug_assert_eq!(rep, code, "codes are visited in increasing order");
        for &member in &members {
            orbit_of[member] = orbits.len();
        }
        orbits.push(members);
    }
    orbits.sort_by_key(|members| {
        let rep = *members.iter().min().unwrap();
        (codes.support(rep).count_ones(), rep)
    });

    let mut state = HuntState {
        codes: &codes,
        gamma,
        m,
        p,
        entries: vec![None; total],
        achievable: vec![0u32; total],
        budget,
    };
    if state.place(&orbits, 0)? {
        let entries = state.entries;
        return Ok(Some(LambdaMap::new(n, p, gamma.to_vec(), entries)?));
    }
    Ok(None)
}

struct HuntState<'a> {
    codes: &'a Codes,
    gamma: &'a [usize],
    m: usize,
    p: usize,
    entries: Vec<Option<(u8, u32)>>,
    achievable: Vec<u32>,
    budget: &'a mut Budget,
}

impl HuntState<'_> {
    fn place(&mut self, orbits: &[Vec<usize>], index: usize) -> Result<bool> {
        if index == orbits.len() {
            return Ok(true);
        }
        let members = &orbits[index];
        let rep = *members.iter().min().unwrap();
        for l1 in 1..=self.p {
            for l2 in 1..=self.m {
                self.budget.tick("equivariant map hunt")?;
                // label the whole orbit: rotating the vector rotates lambda1
                let mut ok = true;
                for (offset, &member) in members.iter().enumerate() {
                    // members[offset] = rotate(rep, offset + 1); ω^{offset+1}
                    let shifted = (l1 + offset) % self.p + 1;
                    self.entries[member] = Some((shifted as u8, l2 as u32));
                }
                for &member in members.iter() {
                    if !self.admissible(member) {
                        ok = false;
                        break;
                    }
                }
                if ok && self.place(orbits, index + 1)? {
                    return Ok(true);
                }
                for &member in members.iter() {
                    self.entries[member] = None;
                    self.achievable[member] = 0;
                }
            }
        }
        let _ = rep;
        Ok(false)
    }

    /// Computes the achievable seen-sets for a freshly labeled vector and
    /// checks the chain cap of its level. All strict subsets carry labels
    /// already (orbits are placed in support-size order).
    fn admissible(&mut self, code: usize) -> bool {
        let (l1, l2) = self.entries[code].expect("just placed");
        let own = 1u32 << (l1 - 1);
        let mut acc: u32 = 1 << own;
        let sup = self.codes.support(code);
        let mut sub = (sup - 1) & sup;
        while sub != 0 {
            let y = self.codes.restrict(code, sub);
            if let Some((_, y2)) = self.entries[y] {
                if y2 == l2 {
                    let mut sets = self.achievable[y];
                    while sets != 0 {
                        let s = sets.trailing_zeros();
                        sets &= sets - 1;
                        acc |= 1 << (s | own);
                    }
                }
            }
            sub = (sub - 1) & sup;
        }
        self.achievable[code] = acc;
        let cap = self.gamma[l2 as usize - 1];
        let mut sets = acc;
        while sets != 0 {
            let s = sets.trailing_zeros();
            sets &= sets - 1;
            if s.count_ones() as usize > cap {
                return false;
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// JSON encoding
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct LambdaEntryJson {
    x: Vec<u8>,
    l1: usize,
    l2: usize,
}

#[derive(Serialize, Deserialize)]
struct LambdaMapJson {
    n: usize,
    p: usize,
    m: usize,
    gamma: Vec<usize>,
    entries: Vec<LambdaEntryJson>,
}

impl Serialize for LambdaMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (1..self.codes.total())
            .map(|code| {
                let (l1, l2) = self.at(code);
                LambdaEntryJson {
                    x: self.codes.decode(code),
                    l1,
                    l2,
                }
            })
            .collect();
        LambdaMapJson {
            n: self.n,
            p: self.p,
            m: self.m,
            gamma: self.gamma.clone(),
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = LambdaMapJson::deserialize(d)?;
        if raw.gamma.len() != raw.m {
            return Err(D::Error::custom(format!(
                "m = {} but gamma has {} entries",
                raw.m,
                raw.gamma.len()
            )));
        }
        let codes = Codes::new(raw.n, raw.p).map_err(D::Error::custom)?;
        let mut entries: Vec<Option<(u8, u32)>> = vec![None; codes.total()];
        for e in &raw.entries {
            if e.x.len() != raw.n {
                return Err(D::Error::custom(format!(
                    "entry vector {:?} has wrong length",
                    e.x
                )));
            }
            if e.x.iter().any(|&d| d as usize > raw.p) {
                return Err(D::Error::custom(format!(
                    "entry vector {:?} has digits above p",
                    e.x
                )));
            }
            let code = codes.encode(&e.x);
            if entries[code].is_some() {
                return Err(D::Error::custom(format!(
                    "duplicate entry for vector {:?}",
                    e.x
                )));
            }
            entries[code] = Some((e.l1 as u8, e.l2 as u32));
        }
        LambdaMap::new(raw.n, raw.p, raw.gamma, entries).map_err(D::Error::custom)
    }
}
