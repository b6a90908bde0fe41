//! The general Kneser hypergraph KG^r(H) and the alternation-number lower
//! bound on its chromatic number.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::Result;

/// KG^r(H) together with the vertex-to-edge correspondence: vertex `i` of
/// the Kneser hypergraph stands for `correspondence[i-1]`, the i-th edge of
/// the source hypergraph in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneserPower {
    pub hypergraph: Hypergraph,
    pub correspondence: Vec<VertexSet>,
}

/// One row of the correspondence table in wire format.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceRow {
    pub vertex: usize,
    pub edge: Vec<usize>,
}

impl KneserPower {
    pub fn correspondence_rows(&self) -> Vec<CorrespondenceRow> {
        self.correspondence
            .iter()
            .enumerate()
            .map(|(i, e)| CorrespondenceRow {
                vertex: i + 1,
                edge: e.to_vec(),
            })
            .collect()
    }
}

/// Builds KG^r(H): vertices index E(H) in canonical order, hyperedges are
/// the r-subsets of E(H) whose members are pairwise disjoint. Enumeration
/// extends partial disjoint families instead of filtering all
/// |E| choose r subsets.
pub fn kneser_power(h: &Hypergraph, r: usize) -> Result<KneserPower> {
    if r < 2 {
        return Err(Error::Precondition(format!(
            "Kneser power requires r >= 2, got {r}"
        )));
    }
    let source_edges = h.edges();
    let m = source_edges.len();
    let mut kneser_edges: Vec<VertexSet> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    extend_disjoint(
        source_edges,
        r,
        0,
        VertexSet::EMPTY,
        &mut chosen,
        &mut kneser_edges,
    );
    Ok(KneserPower {
        hypergraph: Hypergraph::new(m, kneser_edges)?,
        correspondence: source_edges.to_vec(),
    })
}

fn extend_disjoint(
    edges: &[VertexSet],
    r: usize,
    start: usize,
    used: VertexSet,
    chosen: &mut Vec<usize>,
    out: &mut Vec<VertexSet>,
) {
    if chosen.len() == r {
        out.push(VertexSet::from_vertices(chosen.iter().map(|&i| i + 1)));
        return;
    }
    let needed = r - chosen.len();
    for i in start..edges.len() {
        if edges.len() - i < needed {
            break;
        }
        if !edges[i].intersects(used) {
            chosen.push(i);
            extend_disjoint(edges, r, i + 1, used.union(edges[i]), chosen, out);
            chosen.pop();
        }
    }
}

/// The lower bound ⌈(|V(H)| − alt_r(H)) / (r − 1)⌉ on χ(KG^r(H)).
pub fn theorem1_lower_bound(n_vertices: usize, alt: usize, r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::Precondition(format!(
            "lower bound requires r >= 2, got {r}"
        )));
    }
    if alt > n_vertices {
        return Err(Error::Precondition(format!(
            "alternation number {alt} exceeds vertex count {n_vertices}"
        )));
    }
    Ok((n_vertices - alt).div_ceil(r - 1))
}
