use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use wiener_core::distance::wiener_moment_bfs;
use wiener_core::formulas::{self, Family};
use wiener_core::montecarlo::{self, SampleFamily};
use wiener_core::poset::double_tailed_diamond_lattice;
use wiener_core::series::{self, Route, SeriesName};
use wiener_core::verify::{self, Suite};
use wiener_core::weyl::{self, CartanType};
use wiener_core::Error;

use crate::cli::{
    Format, RouteArg, SampleArgs, SampleFamilyArg, SeriesArgs, TableArgs, TableFamily, VerifyArgs,
    WeylArgs,
};

pub const MAX_RECT_SIDE: u64 = 12;
pub const MAX_STAIR: u64 = 16;
pub const MAX_DIAMOND_TAIL: u64 = 1000;
pub const MAX_SERIES_ORDER: usize = series::MAX_ORDER;
pub const MAX_WEYL_ORBIT: usize = 50_000;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or arguments; exit status 1.
    Usage(String),
    /// The computation itself failed; exit status 2.
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(msg) => Failure::Usage(msg),
            other => Failure::Domain(other.to_string()),
        }
    }
}

/// What a command prints, and the exit status that goes with it.
pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Failure::Usage(msg.into()))
}

fn json_only(format: Option<Format>, command: &str) -> Result<()> {
    match format {
        Some(Format::Csv) => usage(format!("{command} output is JSON only")),
        _ => Ok(()),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn within(flag: &str, r: &RangeInclusive<u64>, min: u64, cap: Option<u64>) -> Result<()> {
    if *r.start() < min {
        return usage(format!("--{flag} must be at least {min}"));
    }
    if let Some(cap) = cap {
        if *r.end() > cap {
            return usage(format!("--{flag} above {cap} needs --unsafe-caps"));
        }
    }
    Ok(())
}

struct Row {
    family: &'static str,
    m: Option<u64>,
    k: Option<u64>,
    n: Option<u64>,
    t: Option<u64>,
    count: BigUint,
    wiener: BigUint,
    d2: BigUint,
    mean: BigRational,
}

fn table_row(family: Family) -> Result<Row> {
    let wiener = formulas::wiener(family)?;
    let count = formulas::count(family);
    let mean = formulas::mean_distance_exact(family)?;
    let (name, m, k, n, t, d2) = match family {
        Family::Rect { m, k } => ("rect", Some(m), Some(k), None, None, formulas::second_moment_rectangle(m, k)?),
        Family::Stair { n } => ("stair", None, None, Some(n), None, formulas::second_moment_staircase(n)?),
        Family::Diamond { t } => {
            let d2 = wiener_moment_bfs(&double_tailed_diamond_lattice(t as usize), 2)?;
            ("diamond", None, None, None, Some(t), d2)
        }
    };
    Ok(Row { family: name, m, k, n, t, count, wiener, d2, mean })
}

pub fn table(args: &TableArgs, format: Option<Format>, unsafe_caps: bool) -> Result<Outcome> {
    let cap = |c: u64| (!unsafe_caps).then_some(c);
    let reject = |flag: &str, given: bool| -> Result<()> {
        if given {
            usage(format!("--{flag} does not apply to this family"))
        } else {
            Ok(())
        }
    };
    let need = |flag: &str, r: &Option<RangeInclusive<u64>>| -> Result<RangeInclusive<u64>> {
        r.clone().ok_or_else(|| Failure::Usage(format!("--{flag} is required for this family")))
    };
    let families: Vec<Family> = match args.family {
        TableFamily::Rect => {
            reject("n", args.n.is_some())?;
            reject("t", args.t.is_some())?;
            let (ms, ks) = (need("m", &args.m)?, need("k", &args.k)?);
            within("m", &ms, 1, cap(MAX_RECT_SIDE))?;
            within("k", &ks, 1, cap(MAX_RECT_SIDE))?;
            ms.flat_map(|m| ks.clone().map(move |k| Family::Rect { m, k })).collect()
        }
        TableFamily::Stair => {
            reject("m", args.m.is_some())?;
            reject("k", args.k.is_some())?;
            reject("t", args.t.is_some())?;
            let ns = need("n", &args.n)?;
            within("n", &ns, 1, cap(MAX_STAIR))?;
            ns.map(|n| Family::Stair { n }).collect()
        }
        TableFamily::Diamond => {
            reject("m", args.m.is_some())?;
            reject("k", args.k.is_some())?;
            reject("n", args.n.is_some())?;
            let ts = need("t", &args.t)?;
            within("t", &ts, 0, cap(MAX_DIAMOND_TAIL))?;
            ts.map(|t| Family::Diamond { t }).collect()
        }
    };
    let rows = families.into_iter().map(table_row).collect::<Result<Vec<_>>>()?;

    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from("family,m,k,n,t,count,wiener,d2,mean_num,mean_den\n");
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.family,
                    opt(r.m),
                    opt(r.k),
                    opt(r.n),
                    opt(r.t),
                    r.count,
                    r.wiener,
                    r.d2,
                    r.mean.numer(),
                    r.mean.denom()
                )
                .unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "family": r.family,
                        "m": r.m, "k": r.k, "n": r.n, "t": r.t,
                        "count": r.count.to_string(),
                        "wiener": r.wiener.to_string(),
                        "d2": r.d2.to_string(),
                        "mean_num": r.mean.numer().to_string(),
                        "mean_den": r.mean.denom().to_string(),
                    })
                })
                .collect();
            Ok(Outcome::ok(pretty(&rows)))
        }
    }
}

pub fn verify(args: &VerifyArgs, format: Option<Format>) -> Result<Outcome> {
    json_only(format, "verify")?;
    if args.suite.trim().is_empty() {
        return usage("no suite selected");
    }
    let suite: Suite = args.suite.parse()?;
    let report = verify::run(suite);
    eprintln!("verify {suite}: {} checks, {} failed", report.n_checks, report.n_failed);
    Ok(Outcome {
        text: pretty(&report),
        status: if report.passed { 0 } else { 3 },
    })
}

pub fn series(args: &SeriesArgs, format: Option<Format>, unsafe_caps: bool) -> Result<Outcome> {
    let name: SeriesName = args.name.parse()?;
    if args.order > MAX_SERIES_ORDER && !unsafe_caps {
        return usage(format!("--order above {MAX_SERIES_ORDER} needs --unsafe-caps"));
    }
    let route = match args.route {
        RouteArg::Fixed => Route::FixedPoint,
        RouteArg::Closed => Route::ClosedForm,
    };
    let s = series::series(name, route, args.order)?;
    let univariate = name.is_univariate();
    let entries: Vec<(usize, usize, BigRational)> = if univariate {
        (0..=args.order).map(|n| (n, 0, s.coeff(n, 0))).collect()
    } else {
        s.triangle()
    };
    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from(if univariate { "n,num,den\n" } else { "n,k,num,den\n" });
            for (n, k, c) in &entries {
                if univariate {
                    writeln!(out, "{n},{},{}", c.numer(), c.denom()).unwrap();
                } else {
                    writeln!(out, "{n},{k},{},{}", c.numer(), c.denom()).unwrap();
                }
            }
            Ok(Outcome::ok(out))
        }
        Format::Json => {
            let coefficients: Vec<Value> = entries
                .iter()
                .map(|(n, k, c)| {
                    let mut v = json!({ "n": n, "num": c.numer().to_string(), "den": c.denom().to_string() });
                    if !univariate {
                        v["k"] = json!(k);
                    }
                    v
                })
                .collect();
            Ok(Outcome::ok(pretty(&json!({
                "name": name.as_str(),
                "order": args.order,
                "route": route,
                "univariate": univariate,
                "coefficients": coefficients,
            }))))
        }
    }
}

pub fn sample(args: &SampleArgs, format: Option<Format>) -> Result<Outcome> {
    json_only(format, "sample")?;
    let alpha: BigRational = args
        .alpha
        .parse()
        .map_err(|_| Failure::Usage(format!("--alpha {:?} is not a rational number", args.alpha)))?;
    let family = match args.family {
        SampleFamilyArg::Rect => SampleFamily::Rect,
        SampleFamilyArg::Stair => SampleFamily::Stair,
    };
    let report = montecarlo::run_experiment(family, args.n, &alpha, args.r_max, args.num_samples, args.seed)?;
    Ok(Outcome::ok(pretty(&report)))
}

fn family_label(f: Family) -> String {
    match f {
        Family::Rect { m, k } => format!("rect({m},{k})"),
        Family::Stair { n } => format!("stair({n})"),
        Family::Diamond { t } => format!("diamond({t})"),
    }
}

pub fn weyl(args: &WeylArgs, format: Option<Format>, unsafe_caps: bool) -> Result<Outcome> {
    json_only(format, "weyl")?;
    let kind: CartanType = args.kind.parse()?;
    let rank = match (kind.fixed_rank(), args.rank) {
        (Some(r), None) => r,
        (_, Some(r)) => r,
        (None, None) => return usage(format!("--rank is required for type {kind}")),
    };
    let c = weyl::cartan(kind, rank)?;
    let node = args.node.unwrap_or_else(|| kind.default_node(rank));
    if node == 0 || node > rank {
        return usage(format!("--node must lie in 1..={rank}"));
    }
    let lattice = match weyl::minuscule_weight_lattice(&c, node) {
        Ok(l) => l,
        Err(Error::NotMinuscule(msg)) => {
            let body = json!({
                "type": kind.to_string(),
                "rank": rank,
                "node": node,
                "is_minuscule": false,
                "error": msg,
            });
            return Ok(Outcome { text: pretty(&body), status: 2 });
        }
        Err(e) => return Err(e.into()),
    };
    if lattice.len() > MAX_WEYL_ORBIT && !unsafe_caps {
        return Err(Failure::Domain(format!(
            "orbit has {} weights; above {MAX_WEYL_ORBIT} needs --unsafe-caps",
            lattice.len()
        )));
    }
    let graph = lattice.hasse_graph();
    let wiener = wiener_moment_bfs(&graph, 1)?;
    let recognized = weyl::recognize(&graph).map(family_label);
    let body = json!({
        "type": kind.to_string(),
        "rank": rank,
        "node": node,
        "is_minuscule": true,
        "size": lattice.len(),
        "covers": lattice.covers.len(),
        "wiener": wiener.to_string(),
        "highest_weight": lattice.weights.first().map(|w| &w.coords),
        "lowest_weight": lattice.weights.last().map(|w| &w.coords),
        "recognized": recognized,
    });
    Ok(Outcome::ok(pretty(&body)))
}
