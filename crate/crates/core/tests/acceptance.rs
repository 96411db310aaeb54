//! Acceptance criteria, one block per criterion. Each prints a PASS/FAIL
//! line with its elapsed time; the process fails if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use wiener_core::distance::{wiener_moment_bfs, wiener_moment_symdiff, Graph};
use wiener_core::formulas::{
    binomial, rect_mean_limit, scaled_mean, second_moment_rectangle, second_moment_staircase,
    stair_mean_limit, staircase_recurrence_residual, wiener_diamond, wiener_rectangle,
    wiener_staircase, Family,
};
use wiener_core::iso::are_isomorphic;
use wiener_core::montecarlo::{run_experiment, SampleFamily};
use wiener_core::paths::{
    area_d, area_dbar, bijection_a, bijection_a_inverse, motzkin_words, rect_distance, rect_paths,
    stair_distance, stair_paths, MotzkinWord,
};
use wiener_core::poset::{
    double_tailed_diamond_lattice, order_ideals, rectangle_poset, staircase_poset, IdealLattice,
};
use wiener_core::real::Real;
use wiener_core::series::{SeriesName, SeriesSet, TruncatedSeries};
use wiener_core::weyl::{cartan, minuscule_weight_lattice, CartanType};

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, expected: T, actual: T) {
        if expected != actual {
            self.failures.push(format!("{what}: expected {expected:?}, got {actual:?}"));
        }
    }
}

fn rect(m: usize, k: usize) -> IdealLattice {
    order_ideals(&rectangle_poset(m, k).unwrap()).unwrap()
}

fn stair(n: usize) -> IdealLattice {
    order_ideals(&staircase_poset(n).unwrap()).unwrap()
}

fn bfs(l: &IdealLattice, r: u32) -> BigUint {
    wiener_moment_bfs(&l.hasse_graph(), r).unwrap()
}

fn nat(v: impl Into<BigUint>) -> BigRational {
    BigRational::from_integer(BigInt::from(v.into()))
}

fn ratio(r: num_rational::Ratio<i64>) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

fn criterion_1(o: &mut Outcome) {
    let series = SeriesSet::closed_form(4).unwrap();
    let fixed = SeriesSet::fixed_point(4);
    let r = rect(2, 2);
    o.eq("rect bfs", BigUint::from(56u32), bfs(&r, 1));
    o.eq("rect symdiff", BigUint::from(56u32), wiener_moment_symdiff(&r, 1));
    o.eq("rect closed form", BigUint::from(56u32), wiener_rectangle(2, 2).unwrap());
    o.eq("rect series", nat(56u32), series.wbold.coefficient(4, 2).unwrap());
    o.eq("rect series (fixed point)", nat(56u32), fixed.wbold.coefficient(4, 2).unwrap());
    let s = stair(3);
    o.eq("stair bfs", BigUint::from(140u32), bfs(&s, 1));
    o.eq("stair symdiff", BigUint::from(140u32), wiener_moment_symdiff(&s, 1));
    o.eq("stair closed form", BigUint::from(140u32), wiener_staircase(3).unwrap());
    o.eq("stair series", nat(140u32), series.vbold.coefficient(3, 0).unwrap());
    o.eq("stair series (fixed point)", nat(140u32), fixed.vbold.coefficient(3, 0).unwrap());

    let e6 = minuscule_weight_lattice(&cartan(CartanType::E6, 6).unwrap(), 1).unwrap();
    o.eq("E6 size", 27, e6.len());
    o.eq("E6 wiener", BigUint::from(3584u32), wiener_moment_bfs(&e6.hasse_graph(), 1).unwrap());
    let e7 = minuscule_weight_lattice(&cartan(CartanType::E7, 7).unwrap(), 7).unwrap();
    o.eq("E7 size", 56, e7.len());
    o.eq("E7 wiener", BigUint::from(24048u32), wiener_moment_bfs(&e7.hasse_graph(), 1).unwrap());
}

fn criterion_2(o: &mut Outcome) {
    for m in 1..=6 {
        for k in 1..=6 {
            let l = rect(m, k);
            o.eq(&format!("wiener rect({m},{k})"), wiener_rectangle(m as u64, k as u64).unwrap(), bfs(&l, 1));
            if m <= 5 && k <= 5 {
                o.eq(
                    &format!("second moment rect({m},{k})"),
                    second_moment_rectangle(m as u64, k as u64).unwrap(),
                    bfs(&l, 2),
                );
            }
        }
    }
    for n in 1..=12 {
        let l = stair(n);
        o.eq(&format!("wiener stair({n})"), wiener_staircase(n as u64).unwrap(), bfs(&l, 1));
        if n <= 10 {
            o.eq(&format!("second moment stair({n})"), second_moment_staircase(n as u64).unwrap(), bfs(&l, 2));
        }
    }
    for t in 0..=10 {
        let g = double_tailed_diamond_lattice(t);
        o.eq(&format!("wiener diamond({t})"), wiener_diamond(t as u64), wiener_moment_bfs(&g, 1).unwrap());
    }
}

/// Index of a Motzkin word in `motzkin_words(len)`, which lists words in
/// base-4 order of their steps.
fn word_index(w: &MotzkinWord) -> usize {
    use wiener_core::paths::MotzkinStep;
    w.steps().iter().fold(0, |acc, s| {
        4 * acc + MotzkinStep::ALL.iter().position(|x| x == s).unwrap()
    })
}

fn heights_nonnegative(w: &MotzkinWord) -> bool {
    w.heights().iter().all(|&h| h >= 0)
}

fn criterion_3(o: &mut Outcome) {
    for len in 0..=8usize {
        let words = motzkin_words(len);
        // rectangles: every shape with m + k = len
        for m in 0..=len {
            let k = len - m;
            let paths = rect_paths(m, k);
            let mut seen = vec![false; words.len()];
            let mut below = 0usize;
            for p in &paths {
                for q in &paths {
                    let w = bijection_a(p, q).unwrap();
                    let i = word_index(&w);
                    o.check(!seen[i], || format!("rect({m},{k}): {p},{q} collides"));
                    seen[i] = true;
                    o.check(bijection_a_inverse(&w) == (p.clone(), q.clone()), || format!("rect inverse {p},{q}"));
                    o.check(
                        nat(rect_distance(p, q).unwrap()) == ratio(area_d(&w)),
                        || format!("rect({m},{k}): d({p},{q}) != d({w})"),
                    );
                    o.check(p.is_below(q) == heights_nonnegative(&w), || format!("rect order {p},{q}"));
                    below += usize::from(p.is_below(q));
                }
            }
            // image: closed words with m steps in {U, O1}
            for (w, &hit) in words.iter().zip(&seen) {
                let in_class = w.final_height() == 0 && w.k_statistic() == m;
                o.check(hit == in_class, || format!("rect({m},{k}) image wrong at {w}"));
            }
            let bicolored = words
                .iter()
                .filter(|w| w.final_height() == 0 && w.k_statistic() == m && heights_nonnegative(w))
                .count();
            o.eq(&format!("rect({m},{k}) restricted image size"), bicolored, below);
        }
        // staircases
        let paths = stair_paths(len);
        let mut seen = vec![false; words.len()];
        let mut below = 0usize;
        for p in &paths {
            for q in &paths {
                let w = bijection_a(p, q).unwrap();
                let i = word_index(&w);
                o.check(!seen[i], || format!("stair({len}): {p},{q} collides"));
                seen[i] = true;
                o.check(bijection_a_inverse(&w) == (p.clone(), q.clone()), || format!("stair inverse {p},{q}"));
                o.check(stair_distance(p, q).unwrap() == area_dbar(&w), || format!("stair d({p},{q}) != dbar({w})"));
                o.check(p.is_below(q) == heights_nonnegative(&w), || format!("stair order {p},{q}"));
                below += usize::from(p.is_below(q));
            }
        }
        o.check(seen.iter().all(|&s| s), || format!("stair({len}): A not surjective"));
        let prefixes = words.iter().filter(|w| heights_nonnegative(w)).count();
        o.eq(&format!("stair({len}) restricted image size"), prefixes, below);
    }
}

fn criterion_4(o: &mut Outcome) {
    const N: usize = 20;
    let fixed = SeriesSet::fixed_point(N);
    let closed = SeriesSet::closed_form(N).unwrap();
    for name in SeriesName::ALL {
        o.check(fixed.get(name) == closed.get(name), || format!("{name}: routes differ"));
    }
    let s = &closed;
    for n in 0..=N {
        for k in 0..=n {
            o.eq(&format!("[x^{n}u^{k}]W"), nat(binomial(n as u64, k as u64).pow(2)), s.w.coeff(n, k));
        }
    }
    for m in 1..N {
        for k in 1..=N - m {
            let len = m + k;
            o.eq(
                &format!("[x^{len}u^{k}]Wbold"),
                nat(wiener_rectangle(m as u64, k as u64).unwrap()),
                s.wbold.coeff(len, k),
            );
            o.eq(
                &format!("[x^{len}u^{k}]W2"),
                nat(second_moment_rectangle(m as u64, k as u64).unwrap()),
                s.w2.coeff(len, k),
            );
        }
    }
    let v: Vec<BigRational> = (0..=N).map(|n| s.vbold.coeff(n, 0)).collect();
    for (n, vn) in v.iter().enumerate().skip(1) {
        o.eq(&format!("[x^{n}]Vbold"), nat(wiener_staircase(n as u64).unwrap()), vn.clone());
    }
    for n in 0..=18u64 {
        o.check(staircase_recurrence_residual(n, &v).is_zero(), || format!("recurrence fails at n={n}"));
    }
    let w4 = s.w.pow(4).shift_x(2).shift_u(1).scale_int(2).truncate(N);
    o.check(w4 == s.wbold, || "Wbold != 2ux^2 W^4".to_string());
    o.check(
        w4 == TruncatedSeries::from_terms(N, &[(2, 1, 2)]) * s.w.pow(4),
        || "shifted product disagrees with direct product".to_string(),
    );
}

type LimitCase = (&'static str, Real, fn(u64) -> Family);

fn relative_error(value: &Real, limit: &Real) -> Real {
    value.div(limit).sub(&Real::from_integer(1)).abs()
}

fn criterion_5(o: &mut Outcome) {
    let cases: [LimitCase; 2] = [
        ("rect", rect_mean_limit(&BigRational::one()), |n| Family::Rect { m: n, k: n }),
        ("stair", stair_mean_limit(), |n| Family::Stair { n }),
    ];
    for (label, limit, family) in cases {
        let e25 = relative_error(&scaled_mean(family(25)).unwrap(), &limit);
        let e100 = relative_error(&scaled_mean(family(100)).unwrap(), &limit);
        o.check(e100 < Real::ratio(1, 10), || format!("{label}: error {e100} at n=100"));
        o.check(e100 < e25, || format!("{label}: not closer at n=100 ({e100} vs {e25})"));
    }
    // α = 1 limit equals √(2π)/4
    let alt = Real::from_integer(2).mul(&Real::pi()).sqrt().div(&Real::from_integer(4));
    o.check(
        relative_error(&rect_mean_limit(&BigRational::one()), &alt) < Real::ratio(1, 1_000_000_000),
        || "rect limit constant".to_string(),
    );
}

fn criterion_6(o: &mut Outcome) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let runs = [
        ("rect alpha=1", SampleFamily::Rect, &one),
        ("rect alpha=2", SampleFamily::Rect, &two),
        ("stair", SampleFamily::Stair, &one),
    ];
    for (label, family, alpha) in runs {
        let report = pool.install(|| run_experiment(family, 400, alpha, 3, 100_000, 2024).unwrap());
        for m in &report.scaled_moments {
            let bias = if m.r <= 2 { 0.05 } else { 0.08 };
            let allowed = 4.0 * m.standard_error + bias * m.target;
            o.check((m.empirical - m.target).abs() <= allowed, || {
                format!("{label} r={}: {} vs {} (allowed {allowed})", m.r, m.empirical, m.target)
            });
            println!(
                "    {label} r={}: empirical {:.6} target {:.6} se {:.6}",
                m.r, m.empirical, m.target, m.standard_error
            );
        }
    }
    let stated = [(SampleFamily::Rect, 1, 0.6266571), (SampleFamily::Rect, 2, 7.0 / 15.0), (SampleFamily::Stair, 1, 0.3761264), (SampleFamily::Stair, 2, 0.1875)];
    for (family, r, value) in stated {
        let t = wiener_core::montecarlo::limit_moments(family, &one, r).unwrap().to_f64();
        o.check((t - value).abs() < 1e-6, || format!("{family} r={r} target {t}"));
    }
}

fn criterion_7(o: &mut Outcome) {
    let check = |o: &mut Outcome, label: String, built: Graph, model: Graph, wiener: BigUint| {
        o.check(are_isomorphic(&built, &model), || format!("{label}: not isomorphic"));
        o.eq(&format!("{label} wiener"), wiener, wiener_moment_bfs(&built, 1).unwrap());
    };
    for total in 2..=8usize {
        for m in 1..total {
            let k = total - m;
            let l = minuscule_weight_lattice(&cartan(CartanType::A, total - 1).unwrap(), m).unwrap();
            check(o, format!("A_{} w_{m}", total - 1), l.hasse_graph(), rect(m, k).hasse_graph(), wiener_rectangle(m as u64, k as u64).unwrap());
        }
    }
    for n in 3..=8usize {
        let d = cartan(CartanType::D, n).unwrap();
        let spin = minuscule_weight_lattice(&d, n).unwrap();
        o.eq(&format!("D_{n} spin size"), 1usize << (n - 1), spin.len());
        check(o, format!("D_{n} w_{n}"), spin.hasse_graph(), stair(n - 1).hasse_graph(), wiener_staircase(n as u64 - 1).unwrap());
        let vector = minuscule_weight_lattice(&d, 1).unwrap();
        check(o, format!("D_{n} w_1"), vector.hasse_graph(), double_tailed_diamond_lattice(n - 2), wiener_diamond(n as u64 - 2));
    }
}

type Criterion = (&'static str, fn(&mut Outcome), Duration);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 golden constants", criterion_1, Duration::from_secs(5)),
        ("2 formulas equal brute force", criterion_2, Duration::from_secs(60)),
        ("3 bijection suite", criterion_3, Duration::from_secs(30)),
        ("4 series suite at order 20", criterion_4, Duration::from_secs(60)),
        ("5 exact asymptotic trend", criterion_5, Duration::from_secs(10)),
        ("6 Monte Carlo limit laws", criterion_6, Duration::from_secs(300)),
        ("7 cross-construction", criterion_7, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let mut o = Outcome::new();
        let start = Instant::now();
        run(&mut o);
        let elapsed = start.elapsed();
        o.check(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}"));
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {name}: {status} ({:.2}s)", elapsed.as_secs_f64());
        for f in o.failures.iter().take(10) {
            println!("    {f}");
        }
        failed += usize::from(!o.failures.is_empty());
    }
    println!("acceptance: {} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
