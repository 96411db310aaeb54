//! Finite posets, their order ideals, and the Hasse diagrams of the
//! distributive lattices `J(P)`.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use crate::distance::Graph;
use crate::error::{invalid, Error, Result};

/// Default cap on the number of ideals `order_ideals` will enumerate.
pub const DEFAULT_IDEAL_CAP: usize = 1 << 22;

/// Fixed-width bit set over poset elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mask {
    words: Box<[u64]>,
}

impl Mask {
    pub fn empty(n_bits: usize) -> Self {
        Mask {
            words: vec![0; n_bits.div_ceil(64).max(1)].into_boxed_slice(),
        }
    }

    #[inline]
    pub fn contains(&self, bit: usize) -> bool {
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, bit: usize) {
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    #[inline]
    pub fn remove(&mut self, bit: usize) {
        self.words[bit / 64] &= !(1 << (bit % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `|self △ other|`.
    #[inline]
    pub fn symmetric_difference_len(&self, other: &Mask) -> u32 {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    pub fn union(&self, other: &Mask) -> Mask {
        Mask {
            words: self.words.iter().zip(other.words.iter()).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &Mask) -> Mask {
        Mask {
            words: self.words.iter().zip(other.words.iter()).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    /// Compares masks as unsigned integers (bit 0 least significant).
    fn cmp_value(&self, other: &Mask) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

/// Canonical ideal order: by size, then by mask value.
impl Ord for Mask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp_value(other))
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite poset given by its cover relations `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n_elements: usize,
    covers: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds a poset, checking that the covers are acyclic and irredundant.
    pub fn new(n_elements: usize, covers: Vec<(usize, usize)>) -> Result<Self> {
        let mut lower_covers = vec![Vec::new(); n_elements];
        let mut upper = vec![Vec::new(); n_elements];
        for &(a, b) in &covers {
            if a >= n_elements || b >= n_elements {
                return invalid(format!("cover ({a},{b}) out of range"));
            }
            if a == b {
                return invalid(format!("self-cover at {a}"));
            }
            if lower_covers[b].contains(&a) {
                return invalid(format!("duplicate cover ({a},{b})"));
            }
            lower_covers[b].push(a);
            upper[a].push(b);
        }
        let order = topological_order(n_elements, &upper, &lower_covers)
            .ok_or_else(|| Error::InvalidArgument("cover relation has a cycle".into()))?;

        // below[v] = strict down-set of v
        let mut below = vec![Mask::empty(n_elements); n_elements];
        for &v in &order {
            let mut acc = Mask::empty(n_elements);
            for &l in &lower_covers[v] {
                acc = acc.union(&below[l]);
                acc.insert(l);
            }
            below[v] = acc;
        }
        for &(a, b) in &covers {
            // (a,b) is implied if a lies strictly below another lower cover of b
            if lower_covers[b].iter().any(|&c| c != a && below[c].contains(a)) {
                return invalid(format!("cover ({a},{b}) is implied by transitivity"));
            }
        }
        for l in &mut lower_covers {
            l.sort_unstable();
        }
        Ok(Poset {
            n_elements,
            covers,
            lower_covers,
        })
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.lower_covers[v]
    }
}

fn topological_order(n: usize, upper: &[Vec<usize>], lower: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &upper[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Index of element `(i, j)` of the rectangle `[m] × [k]` (0-based coordinates).
pub fn rectangle_index(k: usize, i: usize, j: usize) -> usize {
    i * k + j
}

/// The product of chains `[m] × [k]` with componentwise order.
pub fn rectangle_poset(m: usize, k: usize) -> Result<Poset> {
    if m == 0 || k == 0 {
        return invalid(format!("rectangle dimensions must be positive, got {m}x{k}"));
    }
    let mut covers = Vec::new();
    for i in 0..m {
        for j in 0..k {
            let v = rectangle_index(k, i, j);
            if i + 1 < m {
                covers.push((v, rectangle_index(k, i + 1, j)));
            }
            if j + 1 < k {
                covers.push((v, rectangle_index(k, i, j + 1)));
            }
        }
    }
    Poset::new(m * k, covers)
}

/// Elements `(i, j)` with `1 ≤ i ≤ j ≤ n`, listed in row-major order.
pub fn staircase_elements(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

/// The shifted staircase `{(i, j) : 1 ≤ i ≤ j ≤ n}` under componentwise order.
pub fn staircase_poset(n: usize) -> Result<Poset> {
    if n == 0 {
        return invalid("staircase size must be positive");
    }
    let elems = staircase_elements(n);
    let index: HashMap<(usize, usize), usize> =
        elems.iter().enumerate().map(|(ix, &e)| (e, ix)).collect();
    let mut covers = Vec::new();
    for (ix, &(i, j)) in elems.iter().enumerate() {
        for next in [(i + 1, j), (i, j + 1)] {
            if let Some(&t) = index.get(&next) {
                covers.push((ix, t));
            }
        }
    }
    Poset::new(elems.len(), covers)
}

/// Chain of `t` elements, two incomparable elements, chain of `t` elements.
/// Its ideal lattice is the double-tailed diamond with tail length `t`.
pub fn double_tailed_diamond_poset(t: usize) -> Poset {
    // 0..t bottom chain, t and t+1 the middle pair, t+2.. top chain
    let n = 2 * t + 2;
    let mut covers = Vec::new();
    for c in 1..t {
        covers.push((c - 1, c));
    }
    if t > 0 {
        for mid in [t, t + 1] {
            covers.push((t - 1, mid));
            covers.push((mid, t + 2));
        }
    }
    for c in t + 3..n {
        covers.push((c - 1, c));
    }
    Poset::new(n, covers).expect("double-tailed diamond poset is well formed")
}

/// The distributive lattice of order ideals of a poset, with its Hasse diagram.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    n_elements: usize,
    ideals: Vec<Mask>,
    hasse_edges: Vec<(usize, usize)>,
}

impl IdealLattice {
    pub fn ideals(&self) -> &[Mask] {
        &self.ideals
    }

    /// Edges `(i, j)` with `ideals[i] ⊂ ideals[j]` and one element of difference.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse_edges
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn index_of(&self, ideal: &Mask) -> Option<usize> {
        self.ideals.binary_search(ideal).ok()
    }

    pub fn hasse_graph(&self) -> Graph {
        Graph::from_edges(self.len(), &self.hasse_edges).expect("Hasse edges are simple")
    }
}

/// Enumerates all order ideals of `p` with the default size cap.
pub fn order_ideals(p: &Poset) -> Result<IdealLattice> {
    order_ideals_capped(p, DEFAULT_IDEAL_CAP)
}

/// Enumerates all order ideals of `p`, breadth first from the empty ideal.
///
/// Ideals come back sorted by size and then by mask value; Hasse edges are
/// reported with the smaller ideal first and sorted.
pub fn order_ideals_capped(p: &Poset, cap: usize) -> Result<IdealLattice> {
    let n = p.n_elements();
    let mut seen: HashMap<Mask, usize> = HashMap::new();
    let mut found: Vec<Mask> = Vec::new();
    let mut raw_edges: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::new();

    let start = Mask::empty(n);
    seen.insert(start.clone(), 0);
    found.push(start);
    queue.push_back(0usize);

    while let Some(ix) = queue.pop_front() {
        let ideal = found[ix].clone();
        for e in 0..n {
            if ideal.contains(e) || !p.lower_covers(e).iter().all(|&l| ideal.contains(l)) {
                continue;
            }
            let mut next = ideal.clone();
            next.insert(e);
            let target = match seen.get(&next) {
                Some(&t) => t,
                None => {
                    if found.len() >= cap {
                        return Err(Error::ResourceLimit(format!(
                            "more than {cap} order ideals"
                        )));
                    }
                    let t = found.len();
                    seen.insert(next.clone(), t);
                    found.push(next);
                    queue.push_back(t);
                    t
                }
            };
            raw_edges.push((ix, target));
        }
    }

    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| found[a].cmp(&found[b]));
    let mut rank = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut hasse_edges: Vec<(usize, usize)> =
        raw_edges.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
    hasse_edges.sort_unstable();
    let mut slots: Vec<Option<Mask>> = found.into_iter().map(Some).collect();
    let ideals = order.iter().map(|&old| slots[old].take().unwrap()).collect();
    Ok(IdealLattice {
        n_elements: n,
        ideals,
        hasse_edges,
    })
}

/// The double-tailed diamond built directly as a graph: a chain of `t`
/// edges, a diamond, and another chain of `t` edges (`2t + 4` vertices).
pub fn double_tailed_diamond_lattice(t: usize) -> Graph {
    // vertices 0..=t bottom chain, t+1 and t+2 the middle pair, t+3 diamond top,
    // then the upper tail
    let n = 2 * t + 4;
    let mut edges = Vec::with_capacity(n);
    for v in 0..t {
        edges.push((v, v + 1));
    }
    edges.push((t, t + 1));
    edges.push((t, t + 2));
    edges.push((t + 1, t + 3));
    edges.push((t + 2, t + 3));
    for v in t + 3..n - 1 {
        edges.push((v, v + 1));
    }
    Graph::from_edges(n, &edges).expect("diamond edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn rectangle_shapes() {
        let p = rectangle_poset(1, 1).unwrap();
        assert_eq!((p.n_elements(), p.covers().len()), (1, 0));
        let p = rectangle_poset(2, 2).unwrap();
        assert_eq!((p.n_elements(), p.covers().len()), (4, 4));
        let p = rectangle_poset(2, 3).unwrap();
        assert_eq!((p.n_elements(), p.covers().len()), (6, 7));
        assert!(matches!(rectangle_poset(0, 3), Err(Error::InvalidArgument(_))));
        assert!(matches!(rectangle_poset(2, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn staircase_shapes() {
        let p = staircase_poset(1).unwrap();
        assert_eq!((p.n_elements(), p.covers().len()), (1, 0));
        let p = staircase_poset(2).unwrap();
        // (1,1) < (1,2) < (2,2)
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        let p = staircase_poset(3).unwrap();
        assert_eq!(p.n_elements(), 6);
        // three horizontal unit steps plus three vertical ones
        assert_eq!(p.covers().len(), 6);
        assert!(staircase_poset(0).is_err());
    }

    #[test]
    fn rejects_bad_covers() {
        assert!(Poset::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(Poset::new(3, vec![(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(Poset::new(2, vec![(0, 0)]).is_err());
        assert!(Poset::new(2, vec![(0, 5)]).is_err());
    }

    #[test]
    fn small_ideal_counts() {
        assert_eq!(order_ideals(&rectangle_poset(2, 2).unwrap()).unwrap().len(), 6);
        assert_eq!(order_ideals(&staircase_poset(3).unwrap()).unwrap().len(), 8);
        let empty = Poset::new(0, vec![]).unwrap();
        let l = order_ideals(&empty).unwrap();
        assert_eq!(l.len(), 1);
        assert!(l.ideals()[0].is_empty());
        assert!(l.hasse_edges().is_empty());
    }

    #[test]
    fn rectangle_counts_are_binomial() {
        for m in 1..=6 {
            for k in 1..=6 {
                let l = order_ideals(&rectangle_poset(m, k).unwrap()).unwrap();
                assert_eq!(l.len() as u64, binom((m + k) as u64, k as u64), "{m}x{k}");
            }
        }
    }

    #[test]
    fn staircase_counts_are_powers_of_two() {
        for n in 1..=12 {
            let l = order_ideals(&staircase_poset(n).unwrap()).unwrap();
            assert_eq!(l.len(), 1 << n);
        }
    }

    #[test]
    fn ideals_are_down_closed_and_edges_are_single_additions() {
        let p = staircase_poset(4).unwrap();
        let l = order_ideals(&p).unwrap();
        for ideal in l.ideals() {
            for e in ideal.iter() {
                assert!(p.lower_covers(e).iter().all(|&c| ideal.contains(c)));
            }
        }
        for &(a, b) in l.hasse_edges() {
            let (ia, ib) = (&l.ideals()[a], &l.ideals()[b]);
            assert!(ia.is_subset(ib));
            assert_eq!(ib.len(), ia.len() + 1);
        }
        let mut expected = 0;
        for ia in l.ideals() {
            for ib in l.ideals() {
                if ia.is_subset(ib) && ib.len() == ia.len() + 1 {
                    expected += 1;
                }
            }
        }
        assert_eq!(l.hasse_edges().len(), expected);
    }

    #[test]
    fn canonical_order_is_sorted() {
        let l = order_ideals(&rectangle_poset(3, 3).unwrap()).unwrap();
        assert!(l.ideals().windows(2).all(|w| w[0] < w[1]));
        assert!(l.ideals()[0].is_empty());
        assert_eq!(l.ideals().last().unwrap().len(), 9);
    }

    #[test]
    fn closed_under_union_and_intersection() {
        for l in [
            order_ideals(&rectangle_poset(3, 4).unwrap()).unwrap(),
            order_ideals(&staircase_poset(5).unwrap()).unwrap(),
            order_ideals(&double_tailed_diamond_poset(3)).unwrap(),
        ] {
            for a in l.ideals() {
                for b in l.ideals() {
                    assert!(l.index_of(&a.union(b)).is_some());
                    assert!(l.index_of(&a.intersection(b)).is_some());
                }
            }
        }
    }

    #[test]
    fn hasse_graph_is_connected_and_graded() {
        let l = order_ideals(&rectangle_poset(3, 3).unwrap()).unwrap();
        let g = l.hasse_graph();
        assert!(g.is_connected());
        for &(a, b) in l.hasse_edges() {
            assert_ne!(l.ideals()[a].len() % 2, l.ideals()[b].len() % 2);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = staircase_poset(6).unwrap();
        assert!(matches!(order_ideals_capped(&p, 63), Err(Error::ResourceLimit(_))));
        assert_eq!(order_ideals_capped(&p, 64).unwrap().len(), 64);
    }

    #[test]
    fn diamond_lattice_shapes() {
        let g = double_tailed_diamond_lattice(0);
        assert_eq!((g.n_vertices(), g.n_edges()), (4, 4));
        assert!(g.degrees().iter().all(|&d| d == 2));
        let g = double_tailed_diamond_lattice(1);
        assert_eq!((g.n_vertices(), g.n_edges()), (6, 6));
        let g = double_tailed_diamond_lattice(2);
        assert_eq!((g.n_vertices(), g.n_edges()), (8, 8));
        let mut deg = g.degrees();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 1, 2, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn diamond_poset_lattice_sizes() {
        for t in 0..=4 {
            let l = order_ideals(&double_tailed_diamond_poset(t)).unwrap();
            assert_eq!(l.len(), 2 * t + 4);
            assert_eq!(l.hasse_edges().len(), 2 * t + 4);
        }
    }
}
