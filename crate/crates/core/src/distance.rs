//! Graph distances, Wiener indices and higher distance moments.
//!
//! `wiener_moment_bfs` is the reference computation: breadth-first search
//! from every vertex. `wiener_moment_symdiff` uses `d(p, q) = |p △ q|`,
//! which holds in the Hasse diagram of any distributive lattice of ideals.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::poset::IdealLattice;

/// Undirected simple graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n_vertices];
        for &(a, b) in edges {
            if a >= n_vertices || b >= n_vertices {
                return invalid(format!("edge ({a},{b}) out of range"));
            }
            if a == b {
                return invalid(format!("loop at vertex {a}"));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("multiple edge at vertex {v}"));
            }
        }
        Ok(Graph { adjacency })
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices() == 0 {
            return true;
        }
        self.bfs(0).iter().all(|d| d.is_some())
    }

    /// Distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n_vertices()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest path between `a` and `b`, if any.
    pub fn distance(&self, a: usize, b: usize) -> Option<u32> {
        self.bfs(a)[b]
    }
}

/// How a Wiener-type value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Bfs,
    SymmetricDifference,
    ClosedForm,
    Series,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WienerReport {
    pub moment_order: u32,
    #[serde(serialize_with = "crate::real::serialize_display")]
    pub value: BigUint,
    pub method: Method,
}

/// Counts of ordered vertex pairs by distance.
pub type Histogram = BTreeMap<u32, u64>;

fn merge(into: &mut Vec<u64>, from: &[u64]) {
    if into.len() < from.len() {
        into.resize(from.len(), 0);
    }
    for (a, b) in into.iter_mut().zip(from) {
        *a += b;
    }
}

fn source_histogram(g: &Graph, source: usize) -> Result<Vec<u64>> {
    let mut counts = Vec::new();
    for d in g.bfs(source) {
        let d = d.ok_or(Error::Disconnected)? as usize;
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    Ok(counts)
}

fn dense_bfs_histogram(g: &Graph) -> Result<Vec<u64>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let partials: Vec<Vec<u64>> = (0..g.n_vertices())
            .into_par_iter()
            .map(|s| source_histogram(g, s))
            .collect::<Result<_>>()?;
        let mut total = Vec::new();
        for p in &partials {
            merge(&mut total, p);
        }
        Ok(total)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut total = Vec::new();
        for s in 0..g.n_vertices() {
            merge(&mut total, &source_histogram(g, s)?);
        }
        Ok(total)
    }
}

fn to_histogram(dense: &[u64]) -> Histogram {
    dense
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(d, &c)| (d as u32, c))
        .collect()
}

/// `Σ dist^r · count` over a histogram.
pub fn moment_from_histogram(h: &Histogram, r: u32) -> BigUint {
    h.iter().fold(BigUint::zero(), |acc, (&d, &c)| {
        acc + BigUint::from(d).pow(r) * BigUint::from(c)
    })
}

/// Distance histogram over all ordered pairs, by BFS from every vertex.
pub fn distance_histogram(g: &Graph) -> Result<Histogram> {
    Ok(to_histogram(&dense_bfs_histogram(g)?))
}

/// `Σ_{(p,q) ∈ V×V} d(p,q)^r` by BFS from every vertex.
pub fn wiener_moment_bfs(g: &Graph, r: u32) -> Result<BigUint> {
    if r == 0 {
        return invalid("moment order must be at least 1");
    }
    Ok(moment_from_histogram(&distance_histogram(g)?, r))
}

/// Distance histogram of an ideal lattice from `|p △ q|` over ordered pairs.
pub fn symdiff_histogram(l: &IdealLattice) -> Histogram {
    let ideals = l.ideals();
    let row = |i: usize| {
        let mut counts = vec![0u64; l.n_elements() + 1];
        for j in i + 1..ideals.len() {
            counts[ideals[i].symmetric_difference_len(&ideals[j]) as usize] += 2;
        }
        counts
    };
    #[cfg(feature = "parallel")]
    let partials: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        (0..ideals.len()).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Vec<u64>> = (0..ideals.len()).map(row).collect();

    let mut total = vec![0u64; l.n_elements() + 1];
    total[0] = ideals.len() as u64;
    for p in &partials {
        merge(&mut total, p);
    }
    to_histogram(&total)
}

/// `Σ |p △ q|^r` over ordered pairs of ideals.
pub fn wiener_moment_symdiff(l: &IdealLattice, r: u32) -> BigUint {
    moment_from_histogram(&symdiff_histogram(l), r)
}

pub fn report(value: BigUint, r: u32, method: Method) -> WienerReport {
    WienerReport {
        moment_order: r,
        value,
        method,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{
        double_tailed_diamond_lattice, order_ideals, rectangle_poset, staircase_poset,
    };

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn golden_values() {
        let rect = order_ideals(&rectangle_poset(2, 2).unwrap()).unwrap();
        assert_eq!(wiener_moment_bfs(&rect.hasse_graph(), 1).unwrap(), 56u32.into());
        assert_eq!(wiener_moment_symdiff(&rect, 1), 56u32.into());
        let stair = order_ideals(&staircase_poset(3).unwrap()).unwrap();
        assert_eq!(wiener_moment_bfs(&stair.hasse_graph(), 1).unwrap(), 140u32.into());
        assert_eq!(wiener_moment_symdiff(&stair, 2), 456u32.into());
    }

    #[test]
    fn single_vertex_is_zero() {
        let g = Graph::from_edges(1, &[]).unwrap();
        for r in 1..4 {
            assert!(wiener_moment_bfs(&g, r).unwrap().is_zero());
        }
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(wiener_moment_bfs(&g, 1), Err(Error::Disconnected));
    }

    #[test]
    fn rejects_non_simple_graphs() {
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn histograms() {
        let h = distance_histogram(&path_graph(2)).unwrap();
        assert_eq!(h, Histogram::from([(0, 2), (1, 2)]));
        let rect = order_ideals(&rectangle_poset(2, 2).unwrap()).unwrap();
        let h = distance_histogram(&rect.hasse_graph()).unwrap();
        assert_eq!(h.values().sum::<u64>(), 36);
        assert_eq!(moment_from_histogram(&h, 1), 56u32.into());
        let h = distance_histogram(&double_tailed_diamond_lattice(0)).unwrap();
        assert_eq!(moment_from_histogram(&h, 1), 16u32.into());
    }

    #[test]
    fn path_graph_wiener() {
        for n in 1..30u64 {
            let expected = 2 * (n + 1) * n * (n - 1) / 6;
            assert_eq!(wiener_moment_bfs(&path_graph(n as usize), 1).unwrap(), expected.into());
        }
    }

    #[test]
    fn chains_are_paths() {
        for k in 1..8 {
            let l = order_ideals(&rectangle_poset(1, k).unwrap()).unwrap();
            assert_eq!(l.hasse_graph(), path_graph(k + 1));
        }
    }

    #[test]
    fn bfs_matches_symdiff_small() {
        for (m, k) in [(1, 1), (2, 3), (3, 3), (4, 2)] {
            let l = order_ideals(&rectangle_poset(m, k).unwrap()).unwrap();
            assert_eq!(
                distance_histogram(&l.hasse_graph()).unwrap(),
                symdiff_histogram(&l)
            );
        }
    }

    #[test]
    fn symmetry_and_triangle_inequality() {
        let l = order_ideals(&staircase_poset(4).unwrap()).unwrap();
        let g = l.hasse_graph();
        let all: Vec<Vec<Option<u32>>> = (0..g.n_vertices()).map(|s| g.bfs(s)).collect();
        let n = g.n_vertices();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(all[a][b], all[b][a]);
                for c in (0..n).step_by(3) {
                    assert!(all[a][c].unwrap() <= all[a][b].unwrap() + all[b][c].unwrap());
                }
            }
        }
    }
}
