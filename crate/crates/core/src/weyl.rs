//! Minuscule lattices built from root-system data.
//!
//! Weights live in fundamental-weight coordinates, and the simple root
//! `α_i` is the `i`-th column of the Cartan matrix (Bourbaki numbering).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::distance::Graph;
use crate::error::{invalid, Error, Result};
use crate::formulas::{binomial, Family};
use crate::iso::are_isomorphic;
use crate::poset::{double_tailed_diamond_lattice, order_ideals, rectangle_poset, staircase_poset};

/// Orbits larger than this are refused.
pub const MAX_ORBIT: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E6,
    E7,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E6 => "E6",
            CartanType::E7 => "E7",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E6" => Ok(CartanType::E6),
            "E7" => Ok(CartanType::E7),
            _ => invalid(format!("unknown Cartan type {s:?}")),
        }
    }
}

impl CartanType {
    /// The only rank allowed for exceptional types.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            CartanType::E6 => Some(6),
            CartanType::E7 => Some(7),
            _ => None,
        }
    }

    /// Node used when none is given: the 27- and 56-dimensional
    /// representations for `E6` and `E7`, node 1 otherwise.
    pub fn default_node(self, rank: usize) -> usize {
        match self {
            CartanType::E7 => 7,
            CartanType::B => rank,
            _ => 1,
        }
    }
}

/// `A[i][j] = ⟨α_j, α_i^∨⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    kind: CartanType,
    entries: Vec<Vec<i32>>,
}

impl CartanMatrix {
    /// Validates the shape and sign invariants of a generalized Cartan matrix.
    pub fn new(kind: CartanType, entries: Vec<Vec<i32>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return invalid("Cartan matrix must be square");
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return invalid("Cartan diagonal entries must be 2");
                }
                if i != j && !(-3..=0).contains(&a) {
                    return invalid(format!("off-diagonal entry {a} out of range"));
                }
                if i != j && (a == 0) != (entries[j][i] == 0) {
                    return invalid("Cartan zero pattern must be symmetric");
                }
            }
        }
        Ok(CartanMatrix { kind, entries })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i32>] {
        &self.entries
    }

    /// `α_i` (0-based) in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Vec<i32> {
        self.entries.iter().map(|row| row[i]).collect()
    }
}

/// Standard Cartan matrix in Bourbaki numbering.
pub fn cartan(kind: CartanType, rank: usize) -> Result<CartanMatrix> {
    let min = match kind {
        CartanType::A => 1,
        CartanType::B | CartanType::C => 2,
        CartanType::D => 3,
        CartanType::E6 | CartanType::E7 => 0,
    };
    if let Some(r) = kind.fixed_rank() {
        if rank != r {
            return invalid(format!("{kind} has rank {r}, not {rank}"));
        }
    } else if rank < min {
        return invalid(format!("{kind}_{rank} is not a valid type (rank ≥ {min})"));
    }
    let n = rank;
    let mut a = vec![vec![0i32; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut bond = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    match kind {
        CartanType::A | CartanType::B | CartanType::C => {
            for i in 1..n {
                bond(i, i + 1);
            }
        }
        CartanType::D => {
            for i in 1..n - 1 {
                bond(i, i + 1);
            }
            bond(n - 2, n);
        }
        CartanType::E6 | CartanType::E7 => {
            bond(1, 3);
            bond(2, 4);
            for i in 3..n {
                bond(i, i + 1);
            }
        }
    }
    match kind {
        // α_n short: ⟨α_{n−1}, α_n^∨⟩ = −2
        CartanType::B => a[n - 1][n - 2] = -2,
        // α_n long: ⟨α_n, α_{n−1}^∨⟩ = −2
        CartanType::C => a[n - 2][n - 1] = -2,
        _ => {}
    }
    CartanMatrix::new(kind, a)
}

/// Nodes whose fundamental weight is minuscule (1-based).
pub fn minuscule_nodes(kind: CartanType, rank: usize) -> Vec<usize> {
    match kind {
        CartanType::A => (1..=rank).collect(),
        CartanType::B => vec![rank],
        CartanType::C => vec![1],
        CartanType::D => vec![1, rank - 1, rank],
        CartanType::E6 => vec![1, 6],
        CartanType::E7 => vec![7],
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub coords: Vec<i32>,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(i32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A minuscule weight poset: weights listed top-down in discovery order,
/// covers as `(lower, upper)` index pairs with `upper = lower + α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLattice {
    pub weights: Vec<Weight>,
    pub covers: Vec<(usize, usize)>,
}

impl WeightLattice {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn hasse_graph(&self) -> Graph {
        Graph::from_edges(self.weights.len(), &self.covers).expect("covers form a simple graph")
    }

    /// Coordinatewise sum over the orbit.
    pub fn weight_sum(&self) -> Vec<i64> {
        let rank = self.weights.first().map_or(0, |w| w.coords.len());
        let mut sum = vec![0i64; rank];
        for w in &self.weights {
            for (s, &c) in sum.iter_mut().zip(&w.coords) {
                *s += i64::from(c);
            }
        }
        sum
    }
}

/// Orbit of `ω_node` with its cover relations.
///
/// Generated downward from the highest weight by `μ ↦ μ − α_i` whenever
/// `μ_i = 1`. A coordinate outside `{−1, 0, 1}` means the weight is not
/// minuscule.
pub fn minuscule_weight_lattice(c: &CartanMatrix, node: usize) -> Result<WeightLattice> {
    let rank = c.rank();
    if node == 0 || node > rank {
        return invalid(format!("node {node} out of range 1..={rank}"));
    }
    let roots: Vec<Vec<i32>> = (0..rank).map(|i| c.simple_root(i)).collect();
    let mut top = vec![0; rank];
    top[node - 1] = 1;
    let top = Weight { coords: top };

    let mut index: HashMap<Weight, usize> = HashMap::from([(top.clone(), 0)]);
    let mut weights = vec![top];
    let mut covers = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let mu = weights[at].clone();
        for (i, root) in roots.iter().enumerate() {
            if mu.coords[i] != 1 {
                continue;
            }
            let lower = Weight {
                coords: mu.coords.iter().zip(root).map(|(m, a)| m - a).collect(),
            };
            if let Some(bad) = lower.coords.iter().find(|x| x.abs() > 1) {
                return Err(Error::NotMinuscule(format!(
                    "ω_{node} of {}_{rank}: weight {lower} has coordinate {bad}",
                    c.kind()
                )));
            }
            let j = match index.get(&lower) {
                Some(&j) => j,
                None => {
                    if weights.len() >= MAX_ORBIT {
                        return Err(Error::ResourceLimit(format!(
                            "orbit exceeds {MAX_ORBIT} weights"
                        )));
                    }
                    let j = weights.len();
                    index.insert(lower.clone(), j);
                    weights.push(lower);
                    queue.push_back(j);
                    j
                }
            };
            covers.push((j, at));
        }
    }
    if !minuscule_nodes(c.kind(), rank).contains(&node) {
        return Err(Error::Domain(format!(
            "ω_{node} of {}_{rank} passed the orbit check but is not in the minuscule table",
            c.kind()
        )));
    }
    Ok(WeightLattice { weights, covers })
}

/// Identifies a lattice among rectangles, staircases and double-tailed
/// diamonds of the same size, by graph isomorphism.
pub fn recognize(g: &Graph) -> Option<Family> {
    let size = g.n_vertices();
    let mut candidates = Vec::new();
    for m in 1..size as u64 {
        for k in m..size as u64 {
            let c = binomial(m + k, m);
            if c > size.into() {
                break;
            }
            if c == size.into() {
                candidates.push(Family::Rect { m, k });
            }
        }
    }
    if size.is_power_of_two() && size >= 2 {
        candidates.push(Family::Stair { n: size.trailing_zeros() as u64 });
    }
    if size >= 4 && size.is_multiple_of(2) {
        candidates.push(Family::Diamond { t: (size as u64 - 4) / 2 });
    }
    candidates.into_iter().find(|&f| {
        let model = match f {
            Family::Rect { m, k } => rectangle_poset(m as usize, k as usize),
            Family::Stair { n } => staircase_poset(n as usize),
            Family::Diamond { t } => return are_isomorphic(g, &double_tailed_diamond_lattice(t as usize)),
        };
        model
            .and_then(|p| order_ideals(&p))
            .is_ok_and(|l| are_isomorphic(g, &l.hasse_graph()))
    })
}
