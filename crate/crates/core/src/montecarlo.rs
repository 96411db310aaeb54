//! Uniform sampling of lattice elements and empirical scaled distance
//! moments, compared against the Brownian limit constants.
//!
//! Samples are drawn in fixed-size chunks; chunk `c` uses its own ChaCha8
//! stream `c` under the user seed, so results do not depend on how chunks
//! are scheduled across threads.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::paths::{rect_distance, stair_distance, stair_paths, rect_paths, Step, UDPath};
use crate::real::Real;

/// Name of the generator recorded in every report.
pub const RNG_NAME: &str = "ChaCha8Rng(seed_from_u64(seed), stream = chunk index)";
/// Samples per RNG stream.
pub const CHUNK_SIZE: usize = 1024;
pub const MIN_SAMPLES: u64 = 1000;
pub const MAX_SAMPLES: u64 = 100_000_000;
/// Longest path the sampler accepts.
pub const MAX_PATH_LEN: u64 = 1 << 20;
/// Standard errors allowed on top of the bias tolerance.
pub const SE_MULTIPLIER: u32 = 4;

/// Relative finite-size bias allowed at moment order `r`.
pub fn bias_tolerance(r: u32) -> f64 {
    if r <= 2 {
        0.05
    } else {
        0.08
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleFamily {
    Rect,
    Stair,
}

impl fmt::Display for SampleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleFamily::Rect => "rect",
            SampleFamily::Stair => "stair",
        })
    }
}

impl FromStr for SampleFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rect" => Ok(SampleFamily::Rect),
            "stair" => Ok(SampleFamily::Stair),
            _ => invalid(format!("unknown sampling family {s:?}")),
        }
    }
}

/// Two independent uniform elements of the `m × k` rectangle lattice, as
/// shuffles of `m` up steps and `k` down steps.
pub fn sample_rect_pair<R: Rng + ?Sized>(m: usize, k: usize, rng: &mut R) -> (UDPath, UDPath) {
    let mut draw = || {
        let mut steps: Vec<Step> = std::iter::repeat_n(Step::U, m)
            .chain(std::iter::repeat_n(Step::D, k))
            .collect();
        steps.shuffle(rng);
        UDPath::new(steps)
    };
    let p = draw();
    (p, draw())
}

/// Two independent uniform elements of the staircase lattice of size `n`.
pub fn sample_stair_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (UDPath, UDPath) {
    let mut draw = || UDPath::new((0..n).map(|_| if rng.gen() { Step::U } else { Step::D }).collect());
    let p = draw();
    (p, draw())
}

/// Limit of `n^(−3r/2) E[dist^r]`.
///
/// Rectangles `P_{αn, n}`: `√(πα(1+α))/4`, `7α(1+α)/30`,
/// `(21/256)√π (α(1+α))^(3/2)`. Staircases: `2/(3√π)`, `3/16`,
/// `263/(1260√π)`.
pub fn limit_moments(family: SampleFamily, alpha: &BigRational, r: u32) -> Result<Real> {
    let sqrt_pi = Real::pi().sqrt();
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match family {
        SampleFamily::Rect => {
            if *alpha <= BigRational::zero() {
                return invalid("alpha must be positive");
            }
            let a = alpha * (alpha + BigRational::one());
            let ra = Real::from_rational(&a);
            match r {
                1 => Ok(ra.sqrt().mul(&sqrt_pi).mul_rational(&q(1, 4))),
                2 => Ok(Real::from_rational(&(a * q(7, 30)))),
                3 => Ok(ra.mul(&ra.sqrt()).mul(&sqrt_pi).mul_rational(&q(21, 256))),
                _ => invalid(format!("no limit constant for moment order {r}")),
            }
        }
        SampleFamily::Stair => match r {
            1 => Ok(Real::from_integer(2).div(&sqrt_pi.mul_rational(&q(3, 1)))),
            2 => Ok(Real::ratio(3, 16)),
            3 => Ok(Real::from_integer(263).div(&sqrt_pi.mul_rational(&q(1260, 1)))),
            _ => invalid(format!("no limit constant for moment order {r}")),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub r: u32,
    pub empirical: f64,
    pub standard_error: f64,
    pub target: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitTarget {
    pub r: u32,
    /// Decimal expansion to 30 significant digits.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub standard_errors: u32,
    pub bias_r_le_2: f64,
    pub bias_r_3: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleReport {
    pub family: SampleFamily,
    pub n: u64,
    /// Aspect ratio `m/k` as `"p/q"`; rectangles only.
    pub alpha: Option<String>,
    /// Rectangle sides; rectangles only.
    pub m: Option<u64>,
    pub k: Option<u64>,
    pub num_samples: u64,
    pub seed: u64,
    pub rng: String,
    pub chunk_size: usize,
    pub scaled_moments: Vec<MomentEstimate>,
    pub limit_targets: Vec<LimitTarget>,
    pub tolerances: Tolerances,
}

impl SampleReport {
    pub fn all_within_tolerance(&self) -> bool {
        self.scaled_moments.iter().all(|m| m.within_tolerance)
    }
}

/// Per-chunk power sums `Σ d^j` for `j = 1..=2·r_max`.
fn chunk_sums(
    family: SampleFamily,
    m: usize,
    k: usize,
    seed: u64,
    chunk: u64,
    count: usize,
    r_max: u32,
) -> Vec<u128> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut sums = vec![0u128; 2 * r_max as usize];
    for _ in 0..count {
        let d = match family {
            SampleFamily::Rect => {
                let (p, q) = sample_rect_pair(m, k, &mut rng);
                rect_distance(&p, &q).expect("sampled paths share a rectangle")
            }
            SampleFamily::Stair => {
                let (p, q) = sample_stair_pair(m, &mut rng);
                stair_distance(&p, &q).expect("sampled paths share a length")
            }
        };
        let mut power = 1u128;
        for s in sums.iter_mut() {
            power *= u128::from(d);
            *s += power;
        }
    }
    sums
}

/// Samples `num_samples` independent pairs and reports scaled moments
/// `n^(−3r/2) · mean(dist^r)` for `r = 1..=r_max`.
///
/// For rectangles the lattice is `P_{αn, n}`, so `αn` must be an integer.
pub fn run_experiment(
    family: SampleFamily,
    n: u64,
    alpha: &BigRational,
    r_max: u32,
    num_samples: u64,
    seed: u64,
) -> Result<SampleReport> {
    if n == 0 {
        return invalid("n must be positive");
    }
    if !(1..=3).contains(&r_max) {
        return invalid("r_max must be 1, 2 or 3");
    }
    if num_samples < MIN_SAMPLES {
        return invalid(format!("num_samples must be at least {MIN_SAMPLES}"));
    }
    if num_samples > MAX_SAMPLES {
        return Err(Error::ResourceLimit(format!("num_samples above {MAX_SAMPLES}")));
    }
    let (m, k, alpha_str) = match family {
        SampleFamily::Rect => {
            if *alpha <= BigRational::zero() {
                return invalid("alpha must be positive");
            }
            let m = alpha * BigRational::from_integer(n.into());
            if !m.is_integer() {
                return invalid(format!("alpha·n = {m} is not an integer"));
            }
            let m = m.to_integer().to_u64().ok_or_else(|| Error::ResourceLimit("alpha·n too large".into()))?;
            (m, n, Some(alpha.to_string()))
        }
        SampleFamily::Stair => (n, 0, None),
    };
    if m + k > MAX_PATH_LEN {
        return Err(Error::ResourceLimit(format!("paths longer than {MAX_PATH_LEN} steps")));
    }
    let max_distance = match family {
        SampleFamily::Rect => m * k,
        SampleFamily::Stair => n * n,
    };
    u128::from(max_distance)
        .checked_pow(2 * r_max)
        .and_then(|p| p.checked_mul(CHUNK_SIZE as u128))
        .ok_or_else(|| Error::ResourceLimit("moment sums would overflow 128 bits".into()))?;

    let chunks = num_samples.div_ceil(CHUNK_SIZE as u64);
    let size = |c: u64| (num_samples - c * CHUNK_SIZE as u64).min(CHUNK_SIZE as u64) as usize;
    let run = |c: u64| chunk_sums(family, m as usize, k as usize, seed, c, size(c), r_max);
    #[cfg(feature = "parallel")]
    let partials: Vec<Vec<u128>> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Vec<u128>> = (0..chunks).map(run).collect();

    let mut totals = vec![BigUint::zero(); 2 * r_max as usize];
    for p in &partials {
        for (t, s) in totals.iter_mut().zip(p) {
            *t += BigUint::from(*s);
        }
    }

    let big_n = BigInt::from(num_samples);
    let n3 = BigInt::from(n).pow(3);
    let mut scaled_moments = Vec::new();
    let mut limit_targets = Vec::new();
    for r in 1..=r_max {
        let mean = BigRational::new(BigInt::from(totals[r as usize - 1].clone()), big_n.clone());
        let mean_sq = BigRational::new(BigInt::from(totals[2 * r as usize - 1].clone()), big_n.clone());
        // unbiased sample variance of d^r
        let var = (&mean_sq - &mean * &mean) * BigRational::new(big_n.clone(), &big_n - 1);
        let scale = BigRational::from_integer(n3.pow(r));
        let empirical = Real::from_rational(&(&mean * &mean / &scale)).sqrt();
        let se = Real::from_rational(&(var / (&scale * BigRational::from_integer(big_n.clone())))).sqrt();
        let target = limit_moments(family, alpha, r)?;
        let (empirical, se, target_f) = (empirical.to_f64(), se.to_f64(), target.to_f64());
        let tolerance = f64::from(SE_MULTIPLIER) * se + bias_tolerance(r) * target_f;
        scaled_moments.push(MomentEstimate {
            r,
            empirical,
            standard_error: se,
            target: target_f,
            tolerance,
            within_tolerance: (empirical - target_f).abs() <= tolerance,
        });
        limit_targets.push(LimitTarget {
            r,
            value: target.to_significant(30),
        });
    }

    Ok(SampleReport {
        family,
        n,
        alpha: alpha_str,
        m: (family == SampleFamily::Rect).then_some(m),
        k: (family == SampleFamily::Rect).then_some(k),
        num_samples,
        seed,
        rng: RNG_NAME.to_string(),
        chunk_size: CHUNK_SIZE,
        scaled_moments,
        limit_targets,
        tolerances: Tolerances {
            standard_errors: SE_MULTIPLIER,
            bias_r_le_2: bias_tolerance(2),
            bias_r_3: bias_tolerance(3),
        },
    })
}

/// Mean distance over all ordered pairs of staircase paths of length `n`.
pub fn exhaustive_mean_stair(n: usize) -> BigRational {
    let paths = stair_paths(n);
    let total: u64 = paths
        .iter()
        .flat_map(|p| paths.iter().map(move |q| stair_distance(p, q).unwrap()))
        .sum();
    let count = paths.len() as u64;
    BigRational::new(total.into(), (count * count).into())
}

/// Mean distance over all ordered pairs of `m × k` rectangle paths.
pub fn exhaustive_mean_rect(m: usize, k: usize) -> BigRational {
    let paths = rect_paths(m, k);
    let total: u64 = paths
        .iter()
        .flat_map(|p| paths.iter().map(move |q| rect_distance(p, q).unwrap()))
        .sum();
    let count = paths.len() as u64;
    BigRational::new(total.into(), (count * count).into())
}
