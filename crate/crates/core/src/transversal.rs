//! Minimal transversals (minimal hitting sets) of small hypergraphs.

use crate::index_set::IndexSet;

/// Drops duplicate edges and edges that contain another edge; the minimal
/// transversals are unchanged by this.
pub fn reduce_edges(edges: &[IndexSet]) -> Vec<IndexSet> {
    let mut sorted: Vec<IndexSet> = edges.to_vec();
    sorted.sort_by_key(|e| (e.len(), *e));
    sorted.dedup();
    let mut kept: Vec<IndexSet> = Vec::with_capacity(sorted.len());
    for e in sorted {
        if !kept.iter().any(|k| k.is_subset(e)) {
            kept.push(e);
        }
    }
    kept
}

fn is_transversal(set: IndexSet, edges: &[IndexSet]) -> bool {
    edges.iter().all(|e| e.intersects(set))
}

/// All inclusion-minimal sets meeting every edge, in canonical order.
///
/// Branches on the smallest uncovered edge and prunes any partial set that
/// already contains a transversal found earlier. With no edges the only
/// minimal transversal is the empty set; an empty edge admits none.
pub fn minimal_transversals(edges: &[IndexSet]) -> Vec<IndexSet> {
    let edges = reduce_edges(edges);
    if edges.first().is_some_and(|e| e.is_empty()) {
        return Vec::new();
    }
    let mut found = Vec::new();
    branch(IndexSet::EMPTY, &edges, &mut found);
    found.sort();
    found
}

fn branch(partial: IndexSet, edges: &[IndexSet], found: &mut Vec<IndexSet>) {
    if found.iter().any(|t| t.is_subset(partial)) {
        return;
    }
    match edges.iter().find(|e| !e.intersects(partial)) {
        None => {
            let minimal = partial
                .iter()
                .all(|v| !is_transversal(partial.without(v), edges));
            if minimal {
                found.push(partial);
            }
        }
        Some(edge) => {
            for v in edge.iter() {
                branch(partial.with(v), edges, found);
            }
        }
    }
}

/// Exhaustive oracle over every subset of `ground`.
pub fn minimal_transversals_brute_force(edges: &[IndexSet], ground: IndexSet) -> Vec<IndexSet> {
    let hitting: Vec<IndexSet> = ground
        .subsets()
        .filter(|s| is_transversal(*s, edges))
        .collect();
    let mut out: Vec<IndexSet> = hitting
        .iter()
        .filter(|s| !hitting.iter().any(|t| t != *s && t.is_subset(**s)))
        .copied()
        .collect();
    out.sort();
    out
}
