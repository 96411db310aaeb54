//! Self-checks run by `wiener verify`: every closed formula, bijection,
//! series identity and construction is recomputed independently and
//! compared.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::distance::{wiener_moment_bfs, wiener_moment_symdiff};
use crate::error::{Error, Result};
use crate::formulas::{
    binomial, rect_mean_limit, scaled_mean, second_moment_rectangle, second_moment_staircase,
    stair_mean_limit, staircase_recurrence_residual, wiener_diamond, wiener_exceptional,
    wiener_rectangle, wiener_staircase, Exceptional, Family,
};
use crate::iso::are_isomorphic;
use crate::montecarlo::{exhaustive_mean_stair, run_experiment, SampleFamily};
use crate::paths::{
    area_d, area_dbar, bijection_a, bijection_a_inverse, classify, motzkin_words, rect_distance,
    rect_paths, stair_distance, stair_paths, MotzkinWord,
};
use crate::poset::{
    double_tailed_diamond_lattice, order_ideals, rectangle_poset, staircase_poset, IdealLattice,
};
use crate::real::Real;
use crate::series::{series_m, Route, SeriesName, SeriesSet, TruncatedSeries};
use crate::weyl::{cartan, minuscule_weight_lattice, CartanType, WeightLattice};

/// Series order used by the series suite.
pub const SERIES_ORDER: usize = 20;
/// Seed used by the Monte Carlo checks.
pub const MOMENTS_SEED: u64 = 20_240_601;
pub const MOMENTS_N: u64 = 400;
pub const MOMENTS_SAMPLES: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Bijection,
    Series,
    Formulas,
    Weyl,
    Moments,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Formulas,
        Suite::Bijection,
        Suite::Series,
        Suite::Weyl,
        Suite::Moments,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Bijection => "bijection",
            Suite::Series => "series",
            Suite::Formulas => "formulas",
            Suite::Weyl => "weyl",
            Suite::Moments => "moments",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::EACH)
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<Suite>,
    pub passed: bool,
    pub n_checks: usize,
    pub n_failed: usize,
    pub checks: Vec<Check>,
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Recorder {
            suite,
            checks: Vec::new(),
        }
    }

    fn eq<T: fmt::Display + PartialEq>(&mut self, name: impl Into<String>, expected: T, actual: T) {
        let passed = expected == actual;
        self.push(name, expected.to_string(), actual.to_string(), passed);
    }

    fn holds(&mut self, name: impl Into<String>, passed: bool, actual: impl fmt::Display) {
        self.push(name, "true".into(), actual.to_string(), passed);
    }

    fn result<T: fmt::Display + PartialEq>(&mut self, name: impl Into<String>, expected: T, actual: Result<T>) {
        match actual {
            Ok(a) => self.eq(name, expected, a),
            Err(e) => self.push(name, expected.to_string(), format!("error: {e}"), false),
        }
    }

    fn push(&mut self, name: impl Into<String>, expected: String, actual: String, passed: bool) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            expected,
            actual,
            passed,
        });
    }
}

pub fn run(suite: Suite) -> VerifyReport {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let checks: Vec<Check> = suites
        .iter()
        .flat_map(|&s| match s {
            Suite::Formulas => formulas_suite(),
            Suite::Bijection => bijection_suite(),
            Suite::Series => series_suite(SERIES_ORDER),
            Suite::Weyl => weyl_suite(),
            Suite::Moments => moments_suite(),
            Suite::All => unreachable!(),
        })
        .collect();
    let n_failed = checks.iter().filter(|c| !c.passed).count();
    VerifyReport {
        suites,
        passed: n_failed == 0,
        n_checks: checks.len(),
        n_failed,
        checks,
    }
}

fn lattice(p: Result<crate::poset::Poset>) -> Result<IdealLattice> {
    order_ideals(&p?)
}

fn bfs_moment(l: &Result<IdealLattice>, r: u32) -> Result<BigUint> {
    match l {
        Ok(l) => wiener_moment_bfs(&l.hasse_graph(), r),
        Err(e) => Err(e.clone()),
    }
}

fn coeff_natural(s: &TruncatedSeries, n: usize, k: usize) -> Result<BigRational> {
    s.coefficient(n, k)
}

fn nat(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Golden constants by every method, formulas against BFS, and the exact
/// trend of scaled means toward their limits.
pub fn formulas_suite() -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Formulas);

    let rect = lattice(rectangle_poset(2, 2));
    let stair = lattice(staircase_poset(3));
    let series = SeriesSet::closed_form(6);
    rec.result("rect(2,2) wiener == 56 [bfs]", 56u32.into(), bfs_moment(&rect, 1));
    rec.result("rect(2,2) wiener == 56 [symmetric difference]", 56u32.into(), rect.as_ref().map(|l| wiener_moment_symdiff(l, 1)).map_err(Clone::clone));
    rec.result("rect(2,2) wiener == 56 [closed form]", 56u32.into(), wiener_rectangle(2, 2));
    rec.result(
        "rect(2,2) wiener == 56 [series]",
        BigRational::from_integer(56.into()),
        series.as_ref().map_err(Clone::clone).and_then(|s| coeff_natural(&s.wbold, 4, 2)),
    );
    rec.result("stair(3) wiener == 140 [bfs]", 140u32.into(), bfs_moment(&stair, 1));
    rec.result("stair(3) wiener == 140 [symmetric difference]", 140u32.into(), stair.as_ref().map(|l| wiener_moment_symdiff(l, 1)).map_err(Clone::clone));
    rec.result("stair(3) wiener == 140 [closed form]", 140u32.into(), wiener_staircase(3));
    rec.result(
        "stair(3) wiener == 140 [series]",
        BigRational::from_integer(140.into()),
        series.as_ref().map_err(Clone::clone).and_then(|s| coeff_natural(&s.vbold, 3, 0)),
    );

    for m in 1..=6u64 {
        for k in 1..=6u64 {
            let l = lattice(rectangle_poset(m as usize, k as usize));
            if let Ok(w) = wiener_rectangle(m, k) {
                rec.result(format!("wiener_rectangle({m},{k}) == bfs"), w, bfs_moment(&l, 1));
            }
            if m <= 5 && k <= 5 {
                if let Ok(d2) = second_moment_rectangle(m, k) {
                    rec.result(format!("second_moment_rectangle({m},{k}) == bfs"), d2, bfs_moment(&l, 2));
                }
            }
        }
    }
    for n in 1..=12u64 {
        let l = lattice(staircase_poset(n as usize));
        if let Ok(w) = wiener_staircase(n) {
            rec.result(format!("wiener_staircase({n}) == bfs"), w, bfs_moment(&l, 1));
        }
        if n <= 10 {
            if let Ok(d2) = second_moment_staircase(n) {
                rec.result(format!("second_moment_staircase({n}) == bfs"), d2, bfs_moment(&l, 2));
            }
        }
    }
    for t in 0..=10u64 {
        rec.result(
            format!("wiener_diamond({t}) == bfs"),
            wiener_diamond(t),
            wiener_moment_bfs(&double_tailed_diamond_lattice(t as usize), 1),
        );
    }

    trend_checks(&mut rec, "rect alpha=1", rect_mean_limit(&BigRational::one()), |n| Family::Rect { m: n, k: n });
    trend_checks(&mut rec, "stair", stair_mean_limit(), |n| Family::Stair { n });
    rec.checks
}

fn trend_checks(rec: &mut Recorder, label: &str, limit: Real, family: impl Fn(u64) -> Family) {
    let rel_err = |n: u64| -> Result<Real> {
        let s = scaled_mean(family(n))?;
        Ok(s.div(&limit).sub(&crate::real::one()).abs())
    };
    match (rel_err(25), rel_err(100)) {
        (Ok(e25), Ok(e100)) => {
            let tenth = Real::ratio(1, 10);
            rec.holds(
                format!("{label}: scaled mean within 10% of limit at n=100"),
                e100 < tenth,
                format!("relative error {}", e100.to_significant(6)),
            );
            rec.holds(
                format!("{label}: closer to limit at n=100 than at n=25"),
                e100 < e25,
                format!("{} < {}", e100.to_significant(6), e25.to_significant(6)),
            );
        }
        (a, b) => {
            let err = a.err().or(b.err()).map(|e| e.to_string()).unwrap_or_default();
            rec.push(format!("{label}: scaled mean trend"), "true".into(), format!("error: {err}"), false);
        }
    }
}

/// Checks the bijection A on every pair of paths of total length `≤ max_len`.
pub fn bijection_suite() -> Vec<Check> {
    bijection_checks(8)
}

pub fn bijection_checks(max_len: usize) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Bijection);
    for len in 0..=max_len {
        let words = motzkin_words(len);
        let index = |w: &MotzkinWord| words.binary_search_by(|x| steps_key(x).cmp(&steps_key(w)));

        // rectangles: all shapes with m + k = len
        for m in 0..=len {
            let k = len - m;
            let paths = rect_paths(m, k);
            let mut hit = vec![false; words.len()];
            let (mut ok_inverse, mut ok_distance, mut ok_order, mut injective) = (true, true, true, true);
            for p in &paths {
                for q in &paths {
                    let w = bijection_a(p, q).expect("equal lengths");
                    let i = index(&w).expect("every word is enumerated");
                    injective &= !std::mem::replace(&mut hit[i], true);
                    ok_inverse &= bijection_a_inverse(&w) == (p.clone(), q.clone());
                    let d = rect_distance(p, q).expect("same rectangle");
                    ok_distance &= BigRational::from_integer(d.into()) == ratio(area_d(&w));
                    let c = classify(&w);
                    ok_order &= c.bilateral && c.k == m && (p.is_below(q) == c.bicolored);
                }
            }
            // the image is exactly the bilateral words with k-statistic m
            let image_exact = words.iter().zip(&hit).all(|(w, &h)| {
                let c = classify(w);
                h == (c.bilateral && c.k == m)
            });
            let below_pairs = paths.iter().flat_map(|p| paths.iter().filter(move |q| p.is_below(q))).count();
            let bicolored = words.iter().filter(|w| {
                let c = classify(w);
                c.bicolored && c.k == m
            });
            let tag = format!("rect({m},{k})");
            rec.holds(format!("{tag}: A is injective with image W_{{{len},{m}}}"), injective && image_exact, paths.len().pow(2));
            rec.holds(format!("{tag}: A^-1 . A = id"), ok_inverse, ok_inverse);
            rec.holds(format!("{tag}: d(p,q) == d(A(p,q))"), ok_distance, ok_distance);
            rec.holds(format!("{tag}: p <= q iff A(p,q) in M"), ok_order, ok_order);
            rec.eq(format!("{tag}: |{{p <= q}}| == |M_{{{len},{m}}}|"), bicolored.count(), below_pairs);
        }

        // staircases: all paths of length len
        let paths = stair_paths(len);
        let mut hit = vec![false; words.len()];
        let (mut ok_inverse, mut ok_distance, mut ok_order, mut injective) = (true, true, true, true);
        let mut below_pairs = 0usize;
        for p in &paths {
            for q in &paths {
                let w = bijection_a(p, q).expect("equal lengths");
                let i = index(&w).expect("every word is enumerated");
                injective &= !std::mem::replace(&mut hit[i], true);
                ok_inverse &= bijection_a_inverse(&w) == (p.clone(), q.clone());
                ok_distance &= stair_distance(p, q).expect("same length") == area_dbar(&w);
                let below = p.is_below(q);
                below_pairs += usize::from(below);
                ok_order &= below == classify(&w).bicolored_prefix;
            }
        }
        let surjective = hit.iter().all(|&h| h);
        let prefixes = words.iter().filter(|w| classify(w).bicolored_prefix).count();
        let tag = format!("stair({len})");
        rec.holds(format!("{tag}: A is a bijection onto V_{len}"), injective && surjective, words.len());
        rec.holds(format!("{tag}: A^-1 . A = id"), ok_inverse, ok_inverse);
        rec.holds(format!("{tag}: d(p,q) == dbar(A(p,q))"), ok_distance, ok_distance);
        rec.holds(format!("{tag}: p <= q iff A(p,q) in N"), ok_order, ok_order);
        rec.eq(format!("{tag}: |{{p <= q}}| == |N_{len}|"), prefixes, below_pairs);
    }
    rec.checks
}

fn steps_key(w: &MotzkinWord) -> Vec<usize> {
    w.steps()
        .iter()
        .map(|s| crate::paths::MotzkinStep::ALL.iter().position(|x| x == s).unwrap())
        .collect()
}

fn ratio(r: num_rational::Ratio<i64>) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

/// Dual-route agreement and coefficient identities at the given order.
pub fn series_suite(order: usize) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Series);
    let fixed = SeriesSet::compute(Route::FixedPoint, order);
    let closed = SeriesSet::compute(Route::ClosedForm, order);
    let (fixed, closed) = match (fixed, closed) {
        (Ok(f), Ok(c)) => (f, c),
        (f, c) => {
            let err = f.err().or(c.err()).map(|e| e.to_string()).unwrap_or_default();
            rec.push("series construction", "ok".into(), format!("error: {err}"), false);
            return rec.checks;
        }
    };
    for name in SeriesName::ALL {
        let (a, b) = (fixed.get(name), closed.get(name));
        let mismatch = (0..=order)
            .flat_map(|n| (0..=n).map(move |k| (n, k)))
            .find(|&(n, k)| a.coeff(n, k) != b.coeff(n, k));
        rec.holds(
            format!("{name}: fixed point == closed form to order {order}"),
            mismatch.is_none(),
            mismatch.map_or("all coefficients agree".to_string(), |(n, k)| format!("differ at x^{n} u^{k}")),
        );
        rec.holds(
            format!("{name}: u-degree of [x^n] at most n"),
            a.check_degree_bound().is_ok(),
            a.check_degree_bound().err().map_or("ok".to_string(), |e| e.to_string()),
        );
    }

    let s = &closed;
    for n in 0..=order {
        let bad = (0..=n).find(|&k| s.w.coeff(n, k) != nat(binomial(n as u64, k as u64).pow(2)));
        rec.holds(format!("[x^{n} u^k] W == C({n},k)^2"), bad.is_none(), bad.map_or("all k".into(), |k| format!("fails at k={k}")));
    }
    for len in 2..=order as u64 {
        for m in 1..len {
            let k = len - m;
            if let Ok(w) = wiener_rectangle(m, k) {
                rec.eq(format!("[x^{len} u^{k}] Wbold == wiener_rectangle({m},{k})"), nat(w), s.wbold.coeff(len as usize, k as usize));
            }
            if let Ok(d2) = second_moment_rectangle(m, k) {
                rec.eq(format!("[x^{len} u^{k}] W2 == second_moment_rectangle({m},{k})"), nat(d2), s.w2.coeff(len as usize, k as usize));
            }
        }
    }
    let vbold: Vec<BigRational> = (0..=order).map(|n| s.vbold.coeff(n, 0)).collect();
    for n in 1..=order as u64 {
        if let Ok(w) = wiener_staircase(n) {
            rec.eq(format!("[x^{n}] Vbold == wiener_staircase({n})"), nat(w), vbold[n as usize].clone());
        }
    }
    for n in 0..=(order as u64).saturating_sub(2) {
        rec.eq(format!("staircase recurrence at n={n}"), BigRational::zero(), staircase_recurrence_residual(n, &vbold));
    }

    let w4 = s.w.pow(4).shift_x(2).shift_u(1).scale_int(2).truncate(order);
    let diff = (0..=order)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .find(|&(n, k)| w4.coeff(n, k) != s.wbold.coeff(n, k));
    rec.holds(
        format!("Wbold == 2 u x^2 W^4 to order {order}"),
        diff.is_none(),
        diff.map_or("all coefficients agree".to_string(), |(n, k)| format!("differ at x^{n} u^{k}")),
    );

    if let Ok(m) = series_m(order) {
        let lin = TruncatedSeries::from_terms(order, &[(1, 0, 1), (1, 1, 1)]);
        let quad = TruncatedSeries::from_terms(order, &[(2, 1, 1)]);
        let residual = &(&m - &TruncatedSeries::one(order)) - &(&(&lin * &m) + &(&quad * &(&m * &m)));
        rec.holds(
            format!("M - 1 - x(1+u)M - u x^2 M^2 == 0 mod x^{}", order + 1),
            residual == TruncatedSeries::zero(order),
            "residual",
        );
    }
    rec.checks
}

fn weyl_lattice(kind: CartanType, rank: usize, node: usize) -> Result<WeightLattice> {
    minuscule_weight_lattice(&cartan(kind, rank)?, node)
}

/// The exceptional lattices and the classical constructions against their
/// combinatorial models.
pub fn weyl_suite() -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Weyl);
    for (kind, node, size, ex) in [
        (CartanType::E6, 1, 27usize, Exceptional::E6),
        (CartanType::E7, 7, 56, Exceptional::E7),
    ] {
        let rank = kind.fixed_rank().unwrap();
        match weyl_lattice(kind, rank, node) {
            Ok(l) => {
                rec.eq(format!("{kind} size == {size}"), size, l.len());
                rec.result(format!("{kind} wiener == {}", wiener_exceptional(ex)), wiener_exceptional(ex), wiener_moment_bfs(&l.hasse_graph(), 1));
                rec.holds(format!("{kind} weights sum to zero"), l.weight_sum().iter().all(|&s| s == 0), format!("{:?}", l.weight_sum()));
            }
            Err(e) => rec.push(format!("{kind} orbit"), "ok".into(), format!("error: {e}"), false),
        }
    }

    let mut compare = |label: String, built: Result<WeightLattice>, model: Result<crate::distance::Graph>, wiener: Result<BigUint>| {
        match (built, model) {
            (Ok(l), Ok(g)) => {
                let h = l.hasse_graph();
                rec.holds(format!("{label}: isomorphic to model"), are_isomorphic(&h, &g), format!("{} vertices", h.n_vertices()));
                match wiener {
                    Ok(w) => rec.result(format!("{label}: wiener == {w}"), w.clone(), wiener_moment_bfs(&h, 1)),
                    Err(e) => rec.push(format!("{label}: wiener"), "formula".into(), format!("error: {e}"), false),
                }
            }
            (b, g) => {
                let err = b.err().or(g.err()).map(|e| e.to_string()).unwrap_or_default();
                rec.push(label, "ok".into(), format!("error: {err}"), false);
            }
        }
    };
    for total in 2..=8usize {
        for m in 1..total {
            let k = total - m;
            compare(
                format!("A_{} omega_{m} vs rect({m},{k})", total - 1),
                weyl_lattice(CartanType::A, total - 1, m),
                lattice(rectangle_poset(m, k)).map(|l| l.hasse_graph()),
                wiener_rectangle(m as u64, k as u64),
            );
        }
    }
    for n in 3..=8usize {
        compare(
            format!("D_{n} omega_{n} vs stair({})", n - 1),
            weyl_lattice(CartanType::D, n, n),
            lattice(staircase_poset(n - 1)).map(|l| l.hasse_graph()),
            wiener_staircase(n as u64 - 1),
        );
        compare(
            format!("D_{n} omega_1 vs diamond({})", n - 2),
            weyl_lattice(CartanType::D, n, 1),
            Ok(double_tailed_diamond_lattice(n - 2)),
            Ok(wiener_diamond(n as u64 - 2)),
        );
    }
    rec.checks
}

/// Monte Carlo limit laws at `n = 400`, plus exact exhaustive means.
pub fn moments_suite() -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Moments);
    for n in [4usize, 8, 10] {
        if let Ok(w) = wiener_staircase(n as u64) {
            let exact = BigRational::new(BigInt::from(w), BigInt::one() << (2 * n));
            rec.eq(format!("stair({n}) exhaustive mean == wiener/4^{n}"), exact, exhaustive_mean_stair(n));
        }
    }
    let one = BigRational::one();
    for (family, label) in [(SampleFamily::Rect, "rect alpha=1"), (SampleFamily::Stair, "stair")] {
        match run_experiment(family, MOMENTS_N, &one, 3, MOMENTS_SAMPLES, MOMENTS_SEED) {
            Ok(report) => {
                for m in &report.scaled_moments {
                    rec.push(
                        format!("{label} n={MOMENTS_N}: scaled moment r={} within tolerance", m.r),
                        format!("{:.6} +- {:.6}", m.target, m.tolerance),
                        format!("{:.6} (se {:.6})", m.empirical, m.standard_error),
                        m.within_tolerance,
                    );
                }
            }
            Err(e) => rec.push(format!("{label} sampling"), "ok".into(), format!("error: {e}"), false),
        }
    }
    rec.checks
}
