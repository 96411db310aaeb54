//! Canonical forms and isomorphism testing for small graphs.
//!
//! Colour refinement splits vertices by iterated neighbourhood colour
//! multisets; remaining ties are broken by individualizing each vertex of
//! the first non-singleton cell in turn. The canonical form is the
//! lexicographically smallest relabelled edge list over all leaves of that
//! search tree, so it is exact, not heuristic.

use std::collections::HashMap;

use crate::distance::Graph;

/// Relabelled, sorted edge list; equal forms mean isomorphic graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Refines `colors` to the coarsest equitable partition finer than it.
///
/// New colours are ranks of `(old colour, sorted neighbour colours)`, which
/// depend only on the graph structure, never on vertex labels.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let mut classes = count_classes(&colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..g.n_vertices())
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank: HashMap<&(usize, Vec<usize>), usize> =
            distinct.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        colors = signatures.iter().map(|s| rank[s]).collect();
        let now = distinct.len();
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn relabel(g: &Graph, colors: &[usize]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (colors[a], colors[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<(usize, usize)>>) {
    let colors = refine(g, colors);
    let n = g.n_vertices();
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| sizes[c] > 1) else {
        let form = relabel(g, &colors);
        if best.as_ref().is_none_or(|b| form < *b) {
            *best = Some(form);
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == target) {
        // v keeps a colour strictly below the rest of its cell
        let split = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| 2 * c + usize::from(c == target && w != v))
            .collect();
        search(g, split, best);
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let mut best = None;
    if g.n_vertices() > 0 {
        search(g, vec![0; g.n_vertices()], &mut best);
    }
    CanonicalForm {
        n_vertices: g.n_vertices(),
        edges: best.unwrap_or_default(),
    }
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges() {
        return false;
    }
    let (mut da, mut db) = (a.degrees(), b.degrees());
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn permuted(g: &Graph, perm: &[usize]) -> Graph {
        let edges: Vec<_> = g.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
        Graph::from_edges(g.n_vertices(), &edges).unwrap()
    }

    #[test]
    fn relabelling_preserves_form() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5)]).unwrap();
        let h = permuted(&g, &[5, 3, 0, 2, 4, 1]);
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn regular_graphs_are_separated() {
        // two 6-cycles vs the 12-cycle: colour refinement alone cannot tell
        let twelve = cycle(12);
        let mut edges: Vec<_> = (0..6).map(|v| (v, (v + 1) % 6)).collect();
        edges.extend((0..6).map(|v| (6 + v, 6 + (v + 1) % 6)));
        let two_sixes = Graph::from_edges(12, &edges).unwrap();
        assert!(!are_isomorphic(&twelve, &two_sixes));
        assert!(are_isomorphic(&twelve, &permuted(&twelve, &[3, 7, 1, 0, 11, 2, 9, 4, 10, 5, 8, 6])));
    }

    #[test]
    fn small_cases() {
        let empty = Graph::from_edges(0, &[]).unwrap();
        assert!(are_isomorphic(&empty, &empty));
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let star = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert!(are_isomorphic(&path, &star));
        assert!(!are_isomorphic(&path, &cycle(3)));
    }
}
