//! Truncated bivariate formal power series in `x` and `u` with exact
//! rational coefficients, and the generating functions of Motzkin-type
//! paths weighted by count, area and squared area.
//!
//! Every generating function is built two independent ways: by iterating
//! its functional equation to a fixed point, and from its explicit solution
//! in radicals. The two must agree coefficientwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 20;
/// Largest order the CLI accepts without `--unsafe-caps`.
pub const MAX_ORDER: usize = 40;

type Poly = Vec<BigRational>;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out: Poly = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_mul_acc(acc: &mut Poly, a: &[BigRational], b: &[BigRational]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    if acc.len() < a.len() + b.len() - 1 {
        acc.resize(a.len() + b.len() - 1, BigRational::zero());
    }
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                acc[i + j] += x * y;
            }
        }
    }
}

fn poly_scale(a: &[BigRational], c: &BigRational) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Returns the scalar value of a polynomial in `u` of degree 0.
fn as_constant(p: &[BigRational]) -> Option<BigRational> {
    match p.len() {
        0 => Some(BigRational::zero()),
        1 => Some(p[0].clone()),
        _ => None,
    }
}

/// A power series `Σ_{n ≤ order} Σ_k c[n][k] x^n u^k`, known exactly up to
/// `x^order`.
///
/// Binary operations take the smaller of the two orders, so truncation
/// error never leaks into reported coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![Vec::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = vec![c];
        trim(&mut s.coeffs[0]);
        s
    }

    /// Builds a polynomial from `(x-degree, u-degree, coefficient)` terms;
    /// terms beyond `order` are dropped.
    pub fn from_terms(order: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut s = Self::zero(order);
        for &(n, k, c) in terms {
            if n <= order {
                let row = &mut s.coeffs[n];
                if row.len() <= k {
                    row.resize(k + 1, BigRational::zero());
                }
                row[k] += q(c);
            }
        }
        for row in &mut s.coeffs {
            trim(row);
        }
        s
    }

    /// Univariate polynomial `Σ c_n x^n`.
    pub fn from_x_poly(order: usize, cs: &[i64]) -> Self {
        let terms: Vec<_> = cs.iter().enumerate().map(|(n, &c)| (n, 0, c)).collect();
        Self::from_terms(order, &terms)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^n u^k`; zero outside the stored support.
    pub fn coeff(&self, n: usize, k: usize) -> BigRational {
        self.coeffs
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `x^n u^k`, with range checks.
    pub fn coefficient(&self, n: usize, k: usize) -> Result<BigRational> {
        if n > self.order {
            return invalid(format!("x-degree {n} exceeds truncation order {}", self.order));
        }
        if k > n {
            return invalid(format!("u-degree {k} exceeds x-degree {n}"));
        }
        Ok(self.coeff(n, k))
    }

    /// Polynomial in `u` multiplying `x^n`.
    pub fn x_coeff(&self, n: usize) -> &[BigRational] {
        &self.coeffs[n]
    }

    pub fn u_degree(&self, n: usize) -> Option<usize> {
        let row = &self.coeffs[n];
        (!row.is_empty()).then(|| row.len() - 1)
    }

    pub fn is_univariate(&self) -> bool {
        self.coeffs.iter().all(|row| row.len() <= 1)
    }

    /// Checks that the `x^n` coefficient has `u`-degree at most `n`.
    pub fn check_degree_bound(&self) -> Result<()> {
        for n in 0..=self.order {
            if let Some(d) = self.u_degree(n) {
                if d > n {
                    return Err(Error::Domain(format!(
                        "coefficient of x^{n} has u-degree {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Raises the order, treating the new coefficients as zero.
    fn extend(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(self.order) + 1, Vec::new());
        TruncatedSeries {
            order: order.max(self.order),
            coeffs,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|row| poly_scale(row, c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&q(c))
    }

    /// Multiplication by `x^j`; known coefficients move up with it.
    pub fn shift_x(&self, j: usize) -> Self {
        let mut coeffs = vec![Vec::new(); j];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries {
            order: self.order + j,
            coeffs,
        }
    }

    /// Division by `x^j`; the first `j` coefficients must vanish.
    pub fn unshift_x(&self, j: usize) -> Result<Self> {
        if j > self.order {
            return invalid("cannot divide by a power of x beyond the truncation order");
        }
        if self.coeffs[..j].iter().any(|row| !row.is_empty()) {
            return Err(Error::Domain(format!("series is not divisible by x^{j}")));
        }
        Ok(TruncatedSeries {
            order: self.order - j,
            coeffs: self.coeffs[j..].to_vec(),
        })
    }

    /// Multiplication by `u^j`.
    pub fn shift_u(&self, j: usize) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| {
                    if row.is_empty() {
                        Vec::new()
                    } else {
                        let mut r = vec![BigRational::zero(); j];
                        r.extend(row.iter().cloned());
                        r
                    }
                })
                .collect(),
        }
    }

    /// Division by `u^j`; every coefficient must be divisible.
    pub fn unshift_u(&self, j: usize) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, row) in self.coeffs.iter().enumerate() {
            if row.iter().take(j).any(|c| !c.is_zero()) {
                return Err(Error::Domain(format!(
                    "coefficient of x^{n} is not divisible by u^{j}"
                )));
            }
            coeffs.push(row.iter().skip(j).cloned().collect());
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs,
        })
    }

    /// `∂/∂x`; the result is known to one order less.
    pub fn dx(&self) -> Self {
        if self.order == 0 {
            // derivative of a constant, nothing known beyond it
            return TruncatedSeries {
                order: 0,
                coeffs: vec![Vec::new()],
            };
        }
        TruncatedSeries {
            order: self.order - 1,
            coeffs: (1..=self.order)
                .map(|n| poly_scale(&self.coeffs[n], &q(n as i64)))
                .collect(),
        }
    }

    /// `∂/∂x (x · F)`, which multiplies the `x^n` coefficient by `n + 1` and
    /// keeps the full order.
    pub fn theta(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, row)| poly_scale(row, &q(n as i64 + 1)))
                .collect(),
        }
    }

    /// Substitutes a value for `u`.
    pub fn eval_u(&self, value: &BigRational) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| {
                    let mut acc = BigRational::zero();
                    for c in row.iter().rev() {
                        acc = acc * value + c;
                    }
                    let mut r = vec![acc];
                    trim(&mut r);
                    r
                })
                .collect(),
        }
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if as_constant(&self.coeffs[0]) != Some(BigRational::one()) {
            return Err(Error::Domain("sqrt needs constant term exactly 1".into()));
        }
        let mut g: Vec<Poly> = vec![vec![BigRational::one()]];
        let half = BigRational::new(1.into(), 2.into());
        for n in 1..=self.order {
            // 2 g_n = f_n − Σ_{0<i<n} g_i g_{n−i}
            let mut cross = Vec::new();
            for i in 1..n {
                poly_mul_acc(&mut cross, &g[i], &g[n - i]);
            }
            let neg: Poly = cross.iter().map(|c| -c).collect();
            let mut gn = poly_scale(&poly_add(&self.coeffs[n], &neg), &half);
            trim(&mut gn);
            g.push(gn);
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: g,
        })
    }

    /// Multiplicative inverse; the constant term must be a nonzero scalar.
    pub fn inv(&self) -> Result<Self> {
        let c0 = as_constant(&self.coeffs[0])
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Domain("inverse needs a nonzero scalar constant term".into()))?;
        let inv0 = c0.recip();
        let neg_inv0 = -&inv0;
        let mut g: Vec<Poly> = vec![vec![inv0]];
        for n in 1..=self.order {
            let mut acc = Vec::new();
            for i in 1..=n {
                poly_mul_acc(&mut acc, &self.coeffs[i], &g[n - i]);
            }
            let mut gn = poly_scale(&acc, &neg_inv0);
            trim(&mut gn);
            g.push(gn);
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: g,
        })
    }

    pub fn div(&self, other: &TruncatedSeries) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(n, k, coefficient)` for `0 ≤ k ≤ n ≤ order`.
    pub fn triangle(&self) -> Vec<(usize, usize, BigRational)> {
        (0..=self.order)
            .flat_map(|n| (0..=n).map(move |k| (n, k, self.coeff(n, k))))
            .collect()
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries {
            order,
            coeffs: (0..=order)
                .map(|n| poly_add(&self.coeffs[n], &rhs.coeffs[n]))
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale_int(-1)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = Vec::new();
                for i in 0..=n {
                    poly_mul_acc(&mut acc, &self.coeffs[i], &rhs.coeffs[n - i]);
                }
                trim(&mut acc);
                acc
            })
            .collect();
        TruncatedSeries { order, coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $f(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The ten generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SeriesName {
    /// Bicolored Motzkin paths by length and number of `U`/`O1` steps.
    M,
    /// Same, weighted by area.
    Mbold,
    /// Bilateral Motzkin paths.
    W,
    /// Bilateral Motzkin paths weighted by area.
    Wbold,
    /// Bicolored Motzkin prefixes (univariate).
    N,
    /// Bicolored prefixes weighted by the closed area statistic.
    Nbold,
    /// Bilateral Motzkin prefixes (univariate).
    V,
    /// Bilateral prefixes weighted by the closed area statistic.
    Vbold,
    /// Bicolored Motzkin paths weighted by squared area.
    M2,
    /// Bilateral Motzkin paths weighted by squared area.
    W2,
}

impl SeriesName {
    pub const ALL: [SeriesName; 10] = [
        SeriesName::M,
        SeriesName::Mbold,
        SeriesName::W,
        SeriesName::Wbold,
        SeriesName::N,
        SeriesName::Nbold,
        SeriesName::V,
        SeriesName::Vbold,
        SeriesName::M2,
        SeriesName::W2,
    ];

    pub fn is_univariate(self) -> bool {
        matches!(
            self,
            SeriesName::N | SeriesName::Nbold | SeriesName::V | SeriesName::Vbold
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SeriesName::M => "M",
            SeriesName::Mbold => "Mbold",
            SeriesName::W => "W",
            SeriesName::Wbold => "Wbold",
            SeriesName::N => "N",
            SeriesName::Nbold => "Nbold",
            SeriesName::V => "V",
            SeriesName::Vbold => "Vbold",
            SeriesName::M2 => "M2",
            SeriesName::W2 => "W2",
        }
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeriesName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown series {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    FixedPoint,
    ClosedForm,
}

/// All ten generating functions, computed by one route to a common order.
#[derive(Clone, Debug)]
pub struct SeriesSet {
    pub route: Route,
    pub order: usize,
    pub m: TruncatedSeries,
    pub mbold: TruncatedSeries,
    pub w: TruncatedSeries,
    pub wbold: TruncatedSeries,
    pub n: TruncatedSeries,
    pub nbold: TruncatedSeries,
    pub v: TruncatedSeries,
    pub vbold: TruncatedSeries,
    pub m2: TruncatedSeries,
    pub w2: TruncatedSeries,
}

impl SeriesSet {
    pub fn get(&self, name: SeriesName) -> &TruncatedSeries {
        match name {
            SeriesName::M => &self.m,
            SeriesName::Mbold => &self.mbold,
            SeriesName::W => &self.w,
            SeriesName::Wbold => &self.wbold,
            SeriesName::N => &self.n,
            SeriesName::Nbold => &self.nbold,
            SeriesName::V => &self.v,
            SeriesName::Vbold => &self.vbold,
            SeriesName::M2 => &self.m2,
            SeriesName::W2 => &self.w2,
        }
    }

    pub fn compute(route: Route, order: usize) -> Result<Self> {
        match route {
            Route::FixedPoint => Ok(Self::fixed_point(order)),
            Route::ClosedForm => Self::closed_form(order),
        }
    }

    /// Iterates every functional equation from zero for `order + 1` rounds.
    pub fn fixed_point(order: usize) -> Self {
        let m = fixed::m(order);
        let mbold = fixed::mbold(order, &m);
        let w = fixed::w(order, &m);
        let wbold = fixed::wbold(order, &m, &mbold, &w);
        let m1 = m.eval_u(&BigRational::one());
        let mbold1 = mbold.eval_u(&BigRational::one());
        let n = fixed::n(order, &m1);
        let nbold = fixed::nbold(order, &m1, &mbold1, &n);
        let v = fixed::v(order, &m1, &n);
        let vbold = fixed::vbold(order, &m1, &mbold1, &n, &nbold, &v);
        let m2 = fixed::m2(order, &m, &mbold);
        let w2 = fixed::w2(order, &m, &mbold, &w, &wbold, &m2);
        SeriesSet {
            route: Route::FixedPoint,
            order,
            m,
            mbold,
            w,
            wbold,
            n,
            nbold,
            v,
            vbold,
            m2,
            w2,
        }
    }

    /// Expands every explicit solution.
    pub fn closed_form(order: usize) -> Result<Self> {
        Ok(SeriesSet {
            route: Route::ClosedForm,
            order,
            m: closed::m(order)?,
            mbold: closed::mbold(order)?,
            w: closed::w(order)?,
            wbold: closed::wbold(order)?,
            n: closed::n(order)?,
            nbold: closed::nbold(order)?,
            v: closed::v(order)?,
            vbold: closed::vbold(order)?,
            m2: closed::m2(order)?,
            w2: closed::w2(order)?,
        })
    }
}

/// One generating function by one route.
pub fn series(name: SeriesName, route: Route, order: usize) -> Result<TruncatedSeries> {
    match route {
        Route::FixedPoint => Ok(SeriesSet::fixed_point(order).get(name).clone()),
        Route::ClosedForm => match name {
            SeriesName::M => closed::m(order),
            SeriesName::Mbold => closed::mbold(order),
            SeriesName::W => closed::w(order),
            SeriesName::Wbold => closed::wbold(order),
            SeriesName::N => closed::n(order),
            SeriesName::Nbold => closed::nbold(order),
            SeriesName::V => closed::v(order),
            SeriesName::Vbold => closed::vbold(order),
            SeriesName::M2 => closed::m2(order),
            SeriesName::W2 => closed::w2(order),
        },
    }
}

/// Closed-form `M(x, u)`.
pub fn series_m(order: usize) -> Result<TruncatedSeries> {
    closed::m(order)
}

/// `M(x, u)` from its quadratic functional equation.
pub fn series_m_fixedpoint(order: usize) -> TruncatedSeries {
    fixed::m(order)
}

/// Functional-equation solutions. Each update raises the `x`-valuation of
/// the error by at least one, so `order + 1` rounds reach the fixed point.
mod fixed {
    use super::TruncatedSeries as S;

    /// Round `j` only needs the estimate through `x^j`, so the working
    /// order grows by one per round.
    fn iterate(order: usize, step: impl Fn(&S) -> S) -> S {
        let mut cur = S::zero(0);
        for j in 0..=order {
            cur = step(&cur.extend(j)).truncate(j);
        }
        cur
    }

    /// `x(1+u)`
    fn x_one_plus_u(order: usize) -> S {
        S::from_terms(order, &[(1, 0, 1), (1, 1, 1)])
    }

    /// `u x²` times an integer
    fn ux2(order: usize, c: i64) -> S {
        S::from_terms(order, &[(2, 1, c)])
    }

    fn x(order: usize, c: i64) -> S {
        S::from_terms(order, &[(1, 0, c)])
    }

    fn x2(order: usize, c: i64) -> S {
        S::from_terms(order, &[(2, 0, c)])
    }

    /// `M = 1 + x(1+u)M + u x² M²`
    pub fn m(order: usize) -> S {
        let one = S::one(order);
        let lin = x_one_plus_u(order);
        let quad = ux2(order, 1);
        iterate(order, |m| &(&one + &(&lin * m)) + &(&quad * &(m * m)))
    }

    /// `𝐌 = x(1+u)𝐌 + u x² (2M𝐌 + M·θM)`
    pub fn mbold(order: usize, m: &S) -> S {
        let lin = x_one_plus_u(order);
        let quad = ux2(order, 1);
        let m_theta_m = m * &m.theta();
        iterate(order, |mb| {
            &(&lin * mb) + &(&quad * &(&(m * mb).scale_int(2) + &m_theta_m))
        })
    }

    /// `W = 1 + x(1+u)W + 2u x² M W`
    pub fn w(order: usize, m: &S) -> S {
        let one = S::one(order);
        let lin = x_one_plus_u(order);
        let quad = &ux2(order, 2) * m;
        iterate(order, |w| &(&one + &(&lin * w)) + &(&quad * w))
    }

    /// `𝐖 = x(1+u)𝐖 + 2u x² (M𝐖 + 𝐌W + W·θM)`
    pub fn wbold(order: usize, m: &S, mbold: &S, w: &S) -> S {
        let lin = x_one_plus_u(order);
        let quad = ux2(order, 2);
        let fixed_part = &(mbold * w) + &(w * &m.theta());
        iterate(order, |wb| &(&lin * wb) + &(&quad * &(&(m * wb) + &fixed_part)))
    }

    /// `N = 1 + 3xN + x² M(x,1) N`
    pub fn n(order: usize, m1: &S) -> S {
        let one = S::one(order);
        let lin = x(order, 3);
        let quad = &x2(order, 1) * m1;
        iterate(order, |n| &(&one + &(&lin * n)) + &(&quad * n))
    }

    /// `𝐍 = 2x𝐍 + x²(𝐌₁N + M₁𝐍 + N·θM₁) + x𝐍 + x·θN`
    pub fn nbold(order: usize, m1: &S, mbold1: &S, n: &S) -> S {
        let lin = x(order, 3);
        let quad = x2(order, 1);
        let fixed_part = &(&quad * &(&(mbold1 * n) + &(n * &m1.theta()))) + &(&x(order, 1) * &n.theta());
        let quad_m1 = &quad * m1;
        iterate(order, |nb| &(&(&lin * nb) + &(&quad_m1 * nb)) + &fixed_part)
    }

    /// `V = 1 + 2xN + 2xV + 2x² M₁ V`
    pub fn v(order: usize, m1: &S, n: &S) -> S {
        let base = &S::one(order) + &(&x(order, 2) * n);
        let lin = x(order, 2);
        let quad = &x2(order, 2) * m1;
        iterate(order, |v| &(&base + &(&lin * v)) + &(&quad * v))
    }

    /// `𝐕 = 2x𝐕 + 2x²(𝐌₁V + M₁𝐕 + V·θM₁) + 2x𝐍 + 2x·θN`
    pub fn vbold(order: usize, m1: &S, mbold1: &S, n: &S, nbold: &S, v: &S) -> S {
        let lin = x(order, 2);
        let quad = x2(order, 2);
        let fixed_part = &(&quad * &(&(mbold1 * v) + &(v * &m1.theta())))
            + &(&x(order, 2) * &(nbold + &n.theta()));
        let quad_m1 = &quad * m1;
        iterate(order, |vb| &(&(&lin * vb) + &(&quad_m1 * vb)) + &fixed_part)
    }

    /// `𝕄 = x(u+1)𝕄 + u x² Σ` with
    /// `Σ = 2𝕄M + M·θ²M + 2M·θ𝐌 + 2𝐌·θM + 2𝐌²`.
    pub fn m2(order: usize, m: &S, mbold: &S) -> S {
        let lin = x_one_plus_u(order);
        let quad = ux2(order, 1);
        let rest = &(&(m * &m.theta().theta()) + &(m * &mbold.theta()).scale_int(2))
            + &(&(mbold * &m.theta()).scale_int(2) + &(mbold * mbold).scale_int(2));
        iterate(order, |mm| &(&lin * mm) + &(&quad * &(&(mm * m).scale_int(2) + &rest)))
    }

    /// `𝕎 = x(u+1)𝕎 + 2u x² Σ′` with
    /// `Σ′ = 𝕄W + 𝕎M + W·θ²M + 2W·θ𝐌 + 2𝐖·θM + 2𝐌𝐖`.
    pub fn w2(order: usize, m: &S, mbold: &S, w: &S, wbold: &S, m2: &S) -> S {
        let lin = x_one_plus_u(order);
        let quad = ux2(order, 2);
        let rest = &(&(m2 * w) + &(w * &m.theta().theta()))
            + &(&(&(w * &mbold.theta()) + &(wbold * &m.theta())) + &(mbold * wbold)).scale_int(2);
        iterate(order, |ww| &(&lin * ww) + &(&quad * &(&(ww * m) + &rest)))
    }
}

/// Explicit solutions in radicals, expanded directly. None of these call
/// into `fixed`.
mod closed {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    use super::TruncatedSeries as S;
    use crate::error::Result;

    fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    /// `R = (u−1)²x² − 2(u+1)x + 1 = (ux + x − 1)² − 4ux²`
    fn radicand(order: usize) -> S {
        S::from_terms(
            order,
            &[(0, 0, 1), (1, 0, -2), (1, 1, -2), (2, 0, 1), (2, 1, -2), (2, 2, 1)],
        )
    }

    /// `(1 − (u+1)x − √R) / (2u x²)`
    pub fn m(order: usize) -> Result<S> {
        let wide = order + 2;
        let num = &S::from_terms(wide, &[(0, 0, 1), (1, 0, -1), (1, 1, -1)]) - &radicand(wide).sqrt()?;
        Ok(num.unshift_x(2)?.unshift_u(1)?.scale(&half()))
    }

    /// `[(u²+1)x² − (u+1)x + ((u+1)x − 1)(√R − 1)] / (2u x² R)`
    pub fn mbold(order: usize) -> Result<S> {
        let wide = order + 2;
        let sqrt_r = radicand(wide).sqrt()?;
        let lead = S::from_terms(wide, &[(2, 2, 1), (2, 0, 1), (1, 0, -1), (1, 1, -1)]);
        let factor = S::from_terms(wide, &[(1, 0, 1), (1, 1, 1), (0, 0, -1)]);
        let num = &lead + &(&factor * &(&sqrt_r - &S::one(wide)));
        let reduced = num.unshift_x(2)?.unshift_u(1)?;
        Ok(reduced.div(&radicand(order))?.scale(&half()))
    }

    /// `R^(−1/2)`
    pub fn w(order: usize) -> Result<S> {
        radicand(order).sqrt()?.inv()
    }

    /// `2u x² / R²`
    pub fn wbold(order: usize) -> Result<S> {
        let r = radicand(order);
        Ok((&r * &r).inv()?.shift_x(2).shift_u(1).scale_int(2).truncate(order))
    }

    /// `2u x² ((u−1)²(u+1)x³ − ((u−8)u+1)x² − (u+1)x + 1) / R^(7/2)`
    pub fn w2(order: usize) -> Result<S> {
        let r = radicand(order);
        let r72 = &r.pow(3) * &r.sqrt()?;
        // (u−1)²(u+1) = u³ − u² − u + 1 ; (u−8)u + 1 = u² − 8u + 1
        let poly = S::from_terms(
            order,
            &[
                (3, 3, 1),
                (3, 2, -1),
                (3, 1, -1),
                (3, 0, 1),
                (2, 2, -1),
                (2, 1, 8),
                (2, 0, -1),
                (1, 1, -1),
                (1, 0, -1),
                (0, 0, 1),
            ],
        );
        Ok(poly.div(&r72)?.shift_x(2).shift_u(1).scale_int(2).truncate(order))
    }

    /// `2𝕄 = 20ux²Q^(−5/2) + 2ux Q^(−3/2) + 2x Q^(−3/2) + √Q/(u(x−1)x²) + 1/(ux²)
    ///      + 4/Q + 8(ux+x−1)/Q² + 6Q^(−3/2) − u/((x−1)√Q) + 3/((x−1)√Q)
    ///      + 1/((x−1)x√Q)` with `Q = R`.
    ///
    /// Multiplied through by `u x²` so every term is a power series, then
    /// divided back.
    pub fn m2(order: usize) -> Result<S> {
        let wide = order + 2;
        let r = radicand(wide);
        let sqrt_r = r.sqrt()?;
        let inv_sqrt_r = sqrt_r.inv()?;
        let inv_r = r.inv()?;
        let inv_r32 = &inv_r * &inv_sqrt_r;
        let inv_r52 = &inv_r32 * &inv_r;
        let inv_x_minus_1 = S::from_x_poly(wide, &[-1, 1]).inv()?;
        let over_xm1_sqrt = &inv_x_minus_1 * &inv_sqrt_r;
        let t = |s: &S, xs: usize, us: usize, c: i64| s.shift_x(xs).shift_u(us).scale_int(c);

        let terms = [
            t(&inv_r52, 4, 2, 20),
            t(&inv_r32, 3, 2, 2),
            t(&inv_r32, 3, 1, 2),
            &sqrt_r * &inv_x_minus_1,
            S::one(wide),
            t(&inv_r, 2, 1, 4),
            t(&(&S::from_terms(wide, &[(1, 1, 1), (1, 0, 1), (0, 0, -1)]) * &(&inv_r * &inv_r)), 2, 1, 8),
            t(&inv_r32, 2, 1, 6),
            t(&over_xm1_sqrt, 2, 2, -1),
            t(&over_xm1_sqrt, 2, 1, 3),
            t(&over_xm1_sqrt, 1, 1, 1),
        ];
        let mut total = S::zero(wide);
        for term in &terms {
            total = &total + term;
        }
        Ok(total.unshift_x(2)?.unshift_u(1)?.scale(&half()).truncate(order))
    }

    fn s_1_minus_4x(order: usize) -> Result<S> {
        S::from_x_poly(order, &[1, -4]).sqrt()
    }

    /// `1 − 4x + √(1−4x)`
    fn base(order: usize, s: &S) -> S {
        &S::from_x_poly(order, &[1, -4]) + s
    }

    /// `2 / (1 − 4x + √(1−4x))`
    pub fn n(order: usize) -> Result<S> {
        let s = s_1_minus_4x(order)?;
        Ok(base(order, &s).inv()?.scale_int(2))
    }

    /// `4x(1 + s − x(1 − s)) / (s (1 − 4x + s)³)` with `s = √(1−4x)`
    pub fn nbold(order: usize) -> Result<S> {
        let s = s_1_minus_4x(order)?;
        let one = S::one(order);
        let x = S::from_x_poly(order, &[0, 1]);
        let num = &(&(&one + &s) - &(&x * &(&one - &s))) * &x.scale_int(4);
        let den = &s * &base(order, &s).pow(3);
        num.div(&den)
    }

    /// `(1 + s) / (s (1 − 4x + s))`
    pub fn v(order: usize) -> Result<S> {
        let s = s_1_minus_4x(order)?;
        let num = &S::one(order) + &s;
        num.div(&(&s * &base(order, &s)))
    }

    /// `8x(1 + s − x(3 + s)) / ((1 − 4x)(1 − 4x + s)³)`
    pub fn vbold(order: usize) -> Result<S> {
        let s = s_1_minus_4x(order)?;
        let one = S::one(order);
        let x = S::from_x_poly(order, &[0, 1]);
        let three_plus_s = &one.scale_int(3) + &s;
        let num = &(&(&one + &s) - &(&x * &three_plus_s)) * &x.scale_int(8);
        let den = &S::from_x_poly(order, &[1, -4]) * &base(order, &s).pow(3);
        num.div(&den)
    }
}

/// `Σ` over the coefficient sequence `[x^n]` of a univariate series.
pub fn univariate_coefficients(s: &TruncatedSeries) -> Vec<BigRational> {
    (0..=s.order()).map(|n| s.coeff(n, 0)).collect()
}

/// Nonnegative integer value of a coefficient, if it is one.
pub fn as_natural(c: &BigRational) -> Option<num_bigint::BigUint> {
    (c.is_integer() && !c.is_negative()).then(|| c.to_integer().to_biguint().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::binomial;
    use crate::paths::{area_d, area_dbar, classify, motzkin_words};

    fn r(v: i64) -> BigRational {
        q(v)
    }

    /// Exhaustive sums over Motzkin words of length `n`, weighted by `u^k`.
    fn brute(n: usize, keep: impl Fn(&crate::paths::WordClass) -> bool, weight: impl Fn(&crate::paths::MotzkinWord) -> BigRational) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); n + 1];
        for w in motzkin_words(n) {
            let c = classify(&w);
            if keep(&c) {
                out[c.k] += weight(&w);
            }
        }
        out
    }

    fn area(w: &crate::paths::MotzkinWord) -> BigRational {
        let a = area_d(w);
        BigRational::new((*a.numer()).into(), (*a.denom()).into())
    }

    fn row(s: &TruncatedSeries, n: usize) -> Vec<BigRational> {
        (0..=n).map(|k| s.coeff(n, k)).collect()
    }

    #[test]
    fn sqrt_matches_binomial_series() {
        let s = TruncatedSeries::from_x_poly(12, &[1, -4]).sqrt().unwrap();
        assert_eq!(s.coeff(1, 0), r(-2));
        // C(1/2, n)(−4)^n = −2 C(2n−2, n−1)/n for n ≥ 1
        for n in 1..=12u64 {
            let cat = BigRational::new(
                BigInt::from(binomial(2 * n - 2, n - 1)) * 2,
                BigInt::from(n),
            );
            assert_eq!(s.coeff(n as usize, 0), -cat);
        }
    }

    #[test]
    fn arithmetic_identities() {
        let f = closed::m(6).unwrap();
        assert_eq!(&f * &TruncatedSeries::one(6), f);
        assert_eq!(&f - &f, TruncatedSeries::zero(6));
        let xm = f.shift_x(1);
        assert_eq!(xm.dx().eval_u(&r(1)).coeff(0, 0), r(1));
        assert_eq!(xm.dx().truncate(6), f.theta());
        assert_eq!(f.div(&f).unwrap(), TruncatedSeries::one(6));
        let g = closed::w(5).unwrap();
        assert_eq!((&f * &g).coeff(0, 0), f.coeff(0, 0) * g.coeff(0, 0));
    }

    #[test]
    fn domain_errors() {
        let two = TruncatedSeries::constant(3, r(2));
        assert!(two.sqrt().is_err());
        assert!(TruncatedSeries::zero(3).inv().is_err());
        let u = TruncatedSeries::from_terms(3, &[(0, 1, 1)]);
        assert!(u.inv().is_err());
        assert!(TruncatedSeries::one(3).unshift_x(1).is_err());
        assert!(TruncatedSeries::one(3).unshift_u(1).is_err());
        let m = closed::m(4).unwrap();
        assert!(m.coefficient(5, 0).is_err());
        assert!(m.coefficient(2, 3).is_err());
    }

    #[test]
    fn m_coefficients() {
        let m = series_m(6).unwrap();
        assert_eq!(m.coeff(0, 0), r(1));
        assert_eq!(m.coeff(1, 0), r(1));
        assert_eq!(m.coeff(1, 1), r(1));
        assert_eq!(m.coeff(2, 1), r(3));
        assert_eq!(m, series_m_fixedpoint(6));
    }

    #[test]
    fn quadratic_residual_vanishes() {
        let order = 15;
        let m = series_m(order).unwrap();
        let rhs = &(&TruncatedSeries::one(order)
            + &(&TruncatedSeries::from_terms(order, &[(1, 0, 1), (1, 1, 1)]) * &m))
            + &(&TruncatedSeries::from_terms(order, &[(2, 1, 1)]) * &(&m * &m));
        assert_eq!(&m - &rhs, TruncatedSeries::zero(order));
    }

    #[test]
    fn routes_agree_at_moderate_order() {
        let order = 10;
        let fp = SeriesSet::fixed_point(order);
        let cf = SeriesSet::closed_form(order).unwrap();
        for name in SeriesName::ALL {
            assert_eq!(fp.get(name), cf.get(name), "{name}");
            fp.get(name).check_degree_bound().unwrap();
            assert_eq!(fp.get(name).is_univariate(), name.is_univariate() || fp.get(name).order() == 0);
        }
    }

    #[test]
    fn enumerative_ground_truth() {
        let order = 7;
        let set = SeriesSet::fixed_point(order);
        let one = |_: &crate::paths::MotzkinWord| BigRational::one();
        let dbar = |w: &crate::paths::MotzkinWord| r(area_dbar(w) as i64);
        for n in 0..=order {
            assert_eq!(row(&set.m, n), brute(n, |c| c.bicolored, one), "M n={n}");
            assert_eq!(row(&set.w, n), brute(n, |c| c.bilateral, one), "W n={n}");
            assert_eq!(row(&set.mbold, n), brute(n, |c| c.bicolored, area), "Mbold n={n}");
            assert_eq!(row(&set.wbold, n), brute(n, |c| c.bilateral, area), "Wbold n={n}");
            let sq = |w: &crate::paths::MotzkinWord| area(w) * area(w);
            assert_eq!(row(&set.m2, n), brute(n, |c| c.bicolored, sq), "M2 n={n}");
            assert_eq!(row(&set.w2, n), brute(n, |c| c.bilateral, sq), "W2 n={n}");
            let total = |v: Vec<BigRational>| v.into_iter().fold(BigRational::zero(), |a, b| a + b);
            assert_eq!(set.n.coeff(n, 0), total(brute(n, |c| c.bicolored_prefix, one)), "N n={n}");
            assert_eq!(set.v.coeff(n, 0), total(brute(n, |c| c.bilateral_prefix, one)), "V n={n}");
            assert_eq!(set.nbold.coeff(n, 0), total(brute(n, |c| c.bicolored_prefix, dbar)), "Nbold n={n}");
            assert_eq!(set.vbold.coeff(n, 0), total(brute(n, |c| c.bilateral_prefix, dbar)), "Vbold n={n}");
        }
    }

    #[test]
    fn small_coefficients() {
        let set = SeriesSet::closed_form(4).unwrap();
        assert_eq!(set.mbold.coeff(2, 1), r(1));
        assert!(set.mbold.x_coeff(0).is_empty());
        assert!(set.wbold.x_coeff(0).is_empty());
        assert!(set.m2.x_coeff(0).is_empty());
        assert_eq!(set.w2.coeff(2, 1), r(2));
        assert_eq!(set.v.coeff(1, 0), r(4));
        assert_eq!(set.n.coeff(1, 0), r(3));
        assert_eq!(set.w.coefficient(4, 2).unwrap(), r(36));
        assert_eq!(set.vbold.coeff(3, 0), r(140));
    }

    #[test]
    fn parsing_names() {
        for name in SeriesName::ALL {
            assert_eq!(name.as_str().parse::<SeriesName>().unwrap(), name);
        }
        assert!("Q".parse::<SeriesName>().is_err());
    }
}
