//! Browser bindings. Each export returns a JSON string or throws a message.

use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use wiener_core::distance::{distance_histogram as bfs_histogram, symdiff_histogram, Histogram};
use wiener_core::formulas::{self, Family};
use wiener_core::montecarlo::{self, SampleFamily};
use wiener_core::poset::{double_tailed_diamond_lattice, order_ideals, rectangle_poset, staircase_poset};

pub const MAX_TABLE: u64 = 30;
pub const MAX_HIST_RECT_SIDE: u64 = 7;
pub const MAX_HIST_STAIR: u64 = 12;
pub const MAX_HIST_DIAMOND: u64 = 200;
pub const MAX_SAMPLES: u64 = 200_000;
pub const MAX_SAMPLE_N: u64 = 5_000;

type Out = Result<String, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn check(name: &str, v: u64, min: u64, max: u64) -> Result<(), String> {
    if (min..=max).contains(&v) {
        Ok(())
    } else {
        Err(format!("{name} must lie in {min}..={max}"))
    }
}

fn families(family: &str, size: u64) -> Result<Vec<Family>, String> {
    check("size", size, 1, MAX_TABLE)?;
    Ok(match family {
        "rect" => (1..=size).flat_map(|m| (1..=size).map(move |k| Family::Rect { m, k })).collect(),
        "stair" => (1..=size).map(|n| Family::Stair { n }).collect(),
        "diamond" => (0..=size).map(|t| Family::Diamond { t }).collect(),
        other => return Err(format!("unknown family {other:?}")),
    })
}

/// Closed-form counts, Wiener indices and mean distances for every member up to `size`.
pub fn table_json(family: &str, size: u64) -> Out {
    let rows = families(family, size)?
        .into_iter()
        .map(|f| {
            let (m, k, n, t) = match f {
                Family::Rect { m, k } => (Some(m), Some(k), None, None),
                Family::Stair { n } => (None, None, Some(n), None),
                Family::Diamond { t } => (None, None, None, Some(t)),
            };
            let mean = formulas::mean_distance_exact(f).map_err(err)?;
            let scaled = match f {
                Family::Diamond { .. } => None,
                _ => Some(formulas::scaled_mean(f).map_err(err)?.to_f64()),
            };
            Ok(json!({
                "m": m, "k": k, "n": n, "t": t,
                "count": formulas::count(f).to_string(),
                "wiener": formulas::wiener(f).map_err(err)?.to_string(),
                "mean": format!("{}/{}", mean.numer(), mean.denom()),
                "scaled_mean": scaled,
            }))
        })
        .collect::<Result<Vec<Value>, String>>()?;
    Ok(Value::Array(rows).to_string())
}

/// Ordered-pair distance histogram of one lattice. `b` is ignored except for rectangles.
pub fn histogram_json(family: &str, a: u64, b: u64) -> Out {
    let hist: Histogram = match family {
        "rect" => {
            check("m", a, 1, MAX_HIST_RECT_SIDE)?;
            check("k", b, 1, MAX_HIST_RECT_SIDE)?;
            symdiff_histogram(&order_ideals(&rectangle_poset(a as usize, b as usize).map_err(err)?).map_err(err)?)
        }
        "stair" => {
            check("n", a, 1, MAX_HIST_STAIR)?;
            symdiff_histogram(&order_ideals(&staircase_poset(a as usize).map_err(err)?).map_err(err)?)
        }
        "diamond" => {
            check("t", a, 0, MAX_HIST_DIAMOND)?;
            bfs_histogram(&double_tailed_diamond_lattice(a as usize)).map_err(err)?
        }
        other => return Err(format!("unknown family {other:?}")),
    };
    let vertices: u64 = hist.get(&0).copied().unwrap_or(0);
    let wiener: u64 = hist.iter().map(|(&d, &c)| u64::from(d) * c).sum::<u64>();
    let bins: Vec<Value> = hist.iter().map(|(d, c)| json!({ "distance": d, "pairs": c })).collect();
    Ok(json!({ "vertices": vertices, "wiener": wiener.to_string(), "bins": bins }).to_string())
}

/// Monte Carlo scaled moments against their limits.
pub fn sample_json(family: &str, n: u64, alpha: &str, samples: u64, seed: u64) -> Out {
    check("n", n, 1, MAX_SAMPLE_N)?;
    check("samples", samples, montecarlo::MIN_SAMPLES, MAX_SAMPLES)?;
    let family: SampleFamily = family.parse().map_err(err)?;
    let alpha: BigRational = alpha.parse().map_err(|_| format!("alpha {alpha:?} is not a rational number"))?;
    let report = montecarlo::run_experiment(family, n, &alpha, 3, samples, seed).map_err(err)?;
    serde_json::to_string(&report).map_err(err)
}

fn js(r: Out) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn wiener_table(family: &str, size: u32) -> Result<String, JsValue> {
    js(table_json(family, u64::from(size)))
}

#[wasm_bindgen]
pub fn distance_histogram(family: &str, a: u32, b: u32) -> Result<String, JsValue> {
    js(histogram_json(family, u64::from(a), u64::from(b)))
}

#[wasm_bindgen]
pub fn sample_moments(family: &str, n: u32, alpha: &str, samples: u32, seed: u32) -> Result<String, JsValue> {
    js(sample_json(family, u64::from(n), alpha, u64::from(samples), u64::from(seed)))
}
