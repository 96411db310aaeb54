//! Lattice-path models of rectangle and shifted-staircase ideal lattices,
//! the stepwise bijection from pairs of paths to Motzkin words, and the area
//! statistics on Motzkin words.
//!
//! Paths serialize as ASCII: `U`, `D` for up and down steps, `1` and `2` for
//! the two colored flat steps.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};
use crate::poset::Mask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

impl Step {
    fn delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
        }
    }
}

/// A path over `{U, D}` starting at height 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UDPath {
    steps: Vec<Step>,
}

impl UDPath {
    pub fn new(steps: Vec<Step>) -> Self {
        UDPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count_up(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::U).count()
    }

    pub fn count_down(&self) -> usize {
        self.len() - self.count_up()
    }

    /// Heights `p_1, …, p_n` after each step.
    pub fn heights(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.delta();
                Some(*h)
            })
            .collect()
    }

    /// Componentwise comparison of heights.
    pub fn is_below(&self, other: &UDPath) -> bool {
        self.len() == other.len()
            && self.heights().iter().zip(other.heights()).all(|(a, b)| *a <= b)
    }
}

impl fmt::Display for UDPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::U => "U",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for UDPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                other => invalid(format!("unexpected path step {other:?}")),
            })
            .collect::<Result<Vec<_>>>()
            .map(UDPath::new)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotzkinStep {
    U,
    D,
    O1,
    O2,
}

impl MotzkinStep {
    fn delta(self) -> i64 {
        match self {
            MotzkinStep::U => 1,
            MotzkinStep::D => -1,
            MotzkinStep::O1 | MotzkinStep::O2 => 0,
        }
    }

    pub const ALL: [MotzkinStep; 4] = [MotzkinStep::U, MotzkinStep::D, MotzkinStep::O1, MotzkinStep::O2];
}

/// A word over `{U, D, O1, O2}` read as a path from the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotzkinWord {
    steps: Vec<MotzkinStep>,
}

impl MotzkinWord {
    pub fn new(steps: Vec<MotzkinStep>) -> Self {
        MotzkinWord { steps }
    }

    pub fn steps(&self) -> &[MotzkinStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `r_0 = 0, r_1, …, r_n`.
    pub fn heights(&self) -> Vec<i64> {
        std::iter::once(0)
            .chain(self.steps.iter().scan(0i64, |h, s| {
                *h += s.delta();
                Some(*h)
            }))
            .collect()
    }

    pub fn final_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    /// Number of steps that are `U` or `O1`.
    pub fn k_statistic(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, MotzkinStep::U | MotzkinStep::O1))
            .count()
    }
}

impl fmt::Display for MotzkinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                MotzkinStep::U => "U",
                MotzkinStep::D => "D",
                MotzkinStep::O1 => "1",
                MotzkinStep::O2 => "2",
            })?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'U' => Ok(MotzkinStep::U),
                'D' => Ok(MotzkinStep::D),
                '1' => Ok(MotzkinStep::O1),
                '2' => Ok(MotzkinStep::O2),
                other => invalid(format!("unexpected Motzkin step {other:?}")),
            })
            .collect::<Result<Vec<_>>>()
            .map(MotzkinWord::new)
    }
}

/// Maps the `i`-th pair of steps of `(p, q)` to one Motzkin step:
/// `(D,U) → U`, `(U,D) → D`, `(U,U) → O1`, `(D,D) → O2`.
pub fn bijection_a(p: &UDPath, q: &UDPath) -> Result<MotzkinWord> {
    if p.len() != q.len() {
        return invalid(format!("path lengths differ: {} vs {}", p.len(), q.len()));
    }
    Ok(MotzkinWord::new(
        p.steps()
            .iter()
            .zip(q.steps())
            .map(|pair| match pair {
                (Step::D, Step::U) => MotzkinStep::U,
                (Step::U, Step::D) => MotzkinStep::D,
                (Step::U, Step::U) => MotzkinStep::O1,
                (Step::D, Step::D) => MotzkinStep::O2,
            })
            .collect(),
    ))
}

pub fn bijection_a_inverse(w: &MotzkinWord) -> (UDPath, UDPath) {
    let (p, q) = w
        .steps()
        .iter()
        .map(|s| match s {
            MotzkinStep::U => (Step::D, Step::U),
            MotzkinStep::D => (Step::U, Step::D),
            MotzkinStep::O1 => (Step::U, Step::U),
            MotzkinStep::O2 => (Step::D, Step::D),
        })
        .unzip();
    (UDPath::new(p), UDPath::new(q))
}

/// `|r_0| + … + |r_{n−1}| + ½|r_n|`.
pub fn area_d(w: &MotzkinWord) -> Ratio<i64> {
    let h = w.heights();
    let last = *h.last().unwrap();
    let body: i64 = h[..h.len() - 1].iter().map(|r| r.abs()).sum();
    Ratio::from_integer(body) + Ratio::new(last.abs(), 2)
}

/// `|r_0| + … + |r_n|`.
pub fn area_dbar(w: &MotzkinWord) -> u64 {
    w.heights().iter().map(|r| r.unsigned_abs()).sum()
}

fn half_abs_height_gap(p: &UDPath, q: &UDPath) -> u64 {
    // heights of paths with equal length have equal parity
    p.heights()
        .iter()
        .zip(q.heights())
        .map(|(a, b)| (b - a).unsigned_abs() / 2)
        .sum()
}

/// Distance in the rectangle lattice: `Σ |(q_i − p_i)/2|`.
pub fn rect_distance(p: &UDPath, q: &UDPath) -> Result<u64> {
    if p.len() != q.len() || p.count_up() != q.count_up() {
        return invalid(format!("paths {p} and {q} belong to different rectangles"));
    }
    Ok(half_abs_height_gap(p, q))
}

/// Distance in the shifted-staircase lattice: `Σ |(q_i − p_i)/2|` over
/// `i = 1..n`, with no ½ prefactor.
pub fn stair_distance(p: &UDPath, q: &UDPath) -> Result<u64> {
    if p.len() != q.len() {
        return invalid(format!("path lengths differ: {} vs {}", p.len(), q.len()));
    }
    Ok(half_abs_height_gap(p, q))
}

/// Membership of a Motzkin word in the four path classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordClass {
    /// Ends on the axis.
    pub bilateral: bool,
    /// Ends on the axis and never goes below it.
    pub bicolored: bool,
    /// Every word is a bilateral prefix.
    pub bilateral_prefix: bool,
    /// Never goes below the axis.
    pub bicolored_prefix: bool,
    pub n: usize,
    pub k: usize,
}

pub fn classify(w: &MotzkinWord) -> WordClass {
    let h = w.heights();
    let nonneg = h.iter().all(|&r| r >= 0);
    let closed = *h.last().unwrap() == 0;
    WordClass {
        bilateral: closed,
        bicolored: closed && nonneg,
        bilateral_prefix: true,
        bicolored_prefix: nonneg,
        n: w.len(),
        k: w.k_statistic(),
    }
}

/// All `{U, D}` paths with `ups` up steps and `downs` down steps, in
/// lexicographic order (`U < D`).
pub fn rect_paths(ups: usize, downs: usize) -> Vec<UDPath> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ups + downs);
    fn rec(u: usize, d: usize, cur: &mut Vec<Step>, out: &mut Vec<UDPath>) {
        if u == 0 && d == 0 {
            out.push(UDPath::new(cur.clone()));
            return;
        }
        if u > 0 {
            cur.push(Step::U);
            rec(u - 1, d, cur, out);
            cur.pop();
        }
        if d > 0 {
            cur.push(Step::D);
            rec(u, d - 1, cur, out);
            cur.pop();
        }
    }
    rec(ups, downs, &mut cur, &mut out);
    out
}

/// All `2^n` paths of length `n`.
pub fn stair_paths(n: usize) -> Vec<UDPath> {
    (0..1u64 << n)
        .map(|bits| {
            UDPath::new(
                (0..n)
                    .map(|i| if bits >> (n - 1 - i) & 1 == 0 { Step::U } else { Step::D })
                    .collect(),
            )
        })
        .collect()
}

/// All `4^n` Motzkin words of length `n`.
pub fn motzkin_words(n: usize) -> Vec<MotzkinWord> {
    (0..1u64 << (2 * n))
        .map(|code| {
            MotzkinWord::new(
                (0..n)
                    .map(|i| MotzkinStep::ALL[(code >> (2 * (n - 1 - i)) & 3) as usize])
                    .collect(),
            )
        })
        .collect()
}

/// Boundary path of an ideal of `[m] × [k]`.
///
/// Row `i` of the ideal has length `λ_i`; the `i`-th up step is preceded by
/// exactly `k − λ_i` down steps. The empty ideal is `D^k U^m`, the full
/// ideal `U^m D^k`, and ideal containment matches height comparison.
pub fn rect_path_from_ideal(ideal: &Mask, m: usize, k: usize) -> UDPath {
    let rows: Vec<usize> = (0..m)
        .map(|i| (0..k).filter(|&j| ideal.contains(crate::poset::rectangle_index(k, i, j))).count())
        .collect();
    let mut steps = Vec::with_capacity(m + k);
    let mut downs = 0;
    for &len in &rows {
        while downs < k - len {
            steps.push(Step::D);
            downs += 1;
        }
        steps.push(Step::U);
    }
    steps.resize(m + k, Step::D);
    UDPath::new(steps)
}
