//! Numeric growth checks of the truncated integral
//!
//! ```text
//! F(R) = integral over [1, R]^e of dy / psi(y)^s
//! ```
//!
//! which is the non-bridge part of the local integral after the substitution
//! `y_e = -ln|z_e|`, up to positive constants. Integration runs in log
//! coordinates `u = ln y` on `[0, ln R]^e`, where the integrand is
//! `exp(sum u - s ln psi(e^u))`. `F(R_0)` is integrated over a box and each
//! increment `F(R_{k+1}) - F(R_k)` directly over the shell between the two
//! cubes, split into `e` disjoint boxes, so increments keep their own
//! relative accuracy even when they are tiny.
//!
//! Only real `s` is handled: `|psi^s| = psi^Re(s)`, so the real part alone
//! governs convergence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, Multigraph};
use crate::kirchhoff;
use crate::poly::IntPolynomial;

pub const DEFAULT_SEED: u64 = 0x6d6f_6467_7261_7068;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const MIN_MC_SAMPLES: usize = 1_000;
pub const MAX_MC_VARS: usize = 6;
pub const MAX_QUADRATURE_VARS: usize = 4;
pub const QUADRATURE_NODES: usize = 32;

/// Last-increment ratio below which growth is called saturating.
pub const SATURATING_BELOW: f64 = 0.6;
/// Last-increment ratio at or above which growth is called diverging.
pub const DIVERGING_AT_LEAST: f64 = 0.85;
/// Largest accepted standard error of an increment, relative to the increment.
pub const MAX_RELATIVE_STDERR: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarlo,
    TensorQuadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeConfig {
    pub s: f64,
    pub r_grid: Vec<f64>,
    /// Monte Carlo points per integration box, or nodes per axis for quadrature.
    pub samples: usize,
    pub seed: u64,
    pub method: Method,
}

/// `e^4, e^6, e^8, e^10`.
pub fn default_grid() -> Vec<f64> {
    [4.0f64, 6.0, 8.0, 10.0].iter().map(|k| k.exp()).collect()
}

impl ProbeConfig {
    pub fn new(s: f64) -> Self {
        ProbeConfig {
            s,
            r_grid: default_grid(),
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            method: Method::MonteCarlo,
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if !self.s.is_finite() || self.s <= 0.0 {
            return bad("s must be positive and finite");
        }
        if self.r_grid.len() < 3 {
            return bad("R grid needs at least 3 points");
        }
        if self.r_grid.iter().any(|&r| !(r >= std::f64::consts::E && r.is_finite())) {
            return bad("every R must be finite and at least e");
        }
        if self.r_grid.windows(2).any(|w| w[0] >= w[1]) {
            return bad("R grid must be strictly increasing");
        }
        match self.method {
            Method::MonteCarlo => {
                if self.samples < MIN_MC_SAMPLES {
                    return bad("Monte Carlo needs at least 1000 samples per box");
                }
                if nvars > MAX_MC_VARS {
                    return Err(Error::TooLarge {
                        what: "probe dimension",
                        actual: nvars,
                        limit: MAX_MC_VARS,
                    });
                }
            }
            Method::TensorQuadrature => {
                if self.samples < 2 || self.samples > 64 {
                    return bad("quadrature nodes per axis must be in 2..=64");
                }
                if nvars > MAX_QUADRATURE_VARS {
                    return Err(Error::TooLarge {
                        what: "quadrature dimension",
                        actual: nvars,
                        limit: MAX_QUADRATURE_VARS,
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Saturating,
    Diverging,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthVerdict {
    pub s: f64,
    pub method: Method,
    pub samples: usize,
    pub seed: u64,
    pub r_grid: Vec<f64>,
    /// `F(R_k)`.
    pub values: Vec<f64>,
    pub stderrs: Vec<f64>,
    /// `F(R_{k+1}) - F(R_k)`.
    pub increments: Vec<f64>,
    pub increment_stderrs: Vec<f64>,
    /// Ratio of the last increment to the one before it.
    pub decay_ratio: Option<f64>,
    pub verdict: Verdict,
}

impl GrowthVerdict {
    /// `R,F,stderr` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R,F,stderr\n");
        for ((r, f), se) in self.r_grid.iter().zip(&self.values).zip(&self.stderrs) {
            out.push_str(&format!("{r:.17e},{f:.17e},{se:.17e}\n"));
        }
        out
    }
}

/// Applies the fixed verdict rule to a sequence of increments.
pub fn classify(increments: &[f64], stderrs: &[f64]) -> (Verdict, Option<f64>) {
    let k = increments.len();
    if k < 2 || stderrs.len() != k {
        return (Verdict::Inconclusive, None);
    }
    let (prev, last) = (increments[k - 2], increments[k - 1]);
    if prev.is_nan() || last.is_nan() || prev <= 0.0 || last < 0.0 {
        return (Verdict::Inconclusive, None);
    }
    let ratio = last / prev;
    let noisy = [(prev, stderrs[k - 2]), (last, stderrs[k - 1])]
        .iter()
        .any(|&(d, se)| se.is_nan() || se > MAX_RELATIVE_STDERR * d.abs());
    let verdict = if noisy {
        Verdict::Inconclusive
    } else if ratio < SATURATING_BELOW {
        Verdict::Saturating
    } else if ratio >= DIVERGING_AT_LEAST {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    };
    (verdict, Some(ratio))
}

/// `psi` in a form suited to evaluating `ln psi(e^u)` by log-sum-exp.
struct LogPoly {
    terms: Vec<(f64, Vec<(usize, f64)>)>,
}

impl LogPoly {
    fn new(p: &IntPolynomial) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let c = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::Internal(
                    "polynomial has a non-positive coefficient; it is not positive on the orthant".into(),
                ));
            }
            let exps = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| (i, x as f64))
                .collect();
            terms.push((c.ln(), exps));
        }
        if terms.is_empty() {
            return Err(Error::Internal("zero polynomial".into()));
        }
        Ok(LogPoly { terms })
    }

    fn ln_eval(&self, u: &[f64], buf: &mut Vec<f64>) -> f64 {
        buf.clear();
        let mut hi = f64::NEG_INFINITY;
        for (lc, exps) in &self.terms {
            let v = lc + exps.iter().map(|&(i, k)| k * u[i]).sum::<f64>();
            hi = hi.max(v);
            buf.push(v);
        }
        hi + buf.iter().map(|v| (v - hi).exp()).sum::<f64>().ln()
    }
}

struct Integrand<'a> {
    psi: &'a LogPoly,
    s: f64,
}

impl Integrand<'_> {
    fn at(&self, u: &[f64], buf: &mut Vec<f64>) -> f64 {
        (u.iter().sum::<f64>() - self.s * self.psi.ln_eval(u, buf)).exp()
    }
}

type Bounds = Vec<(f64, f64)>;

/// Boxes covering `[0, hi]^n` minus `[0, lo]^n`.
fn shell_boxes(n: usize, lo: f64, hi: f64) -> Vec<Bounds> {
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| match i.cmp(&j) {
                    std::cmp::Ordering::Less => (0.0, lo),
                    std::cmp::Ordering::Equal => (lo, hi),
                    std::cmp::Ordering::Greater => (0.0, hi),
                })
                .collect()
        })
        .collect()
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Stratified Monte Carlo over one box. Each stratum draws from its own
/// stream, so the estimate does not depend on the number of worker threads.
fn mc_box(f: &Integrand, bounds: &Bounds, samples: usize, stream: u64) -> (f64, f64) {
    let n = bounds.len();
    let budget = (samples / 8).max(1);
    let mut h = 0.25f64;
    let cells: Vec<usize> = loop {
        let c: Vec<usize> = bounds
            .iter()
            .map(|&(a, b)| ((b - a) / h).ceil().max(1.0) as usize)
            .collect();
        if c.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x)).is_some_and(|p| p <= budget) {
            break c;
        }
        h *= 1.25;
    };
    let strata: usize = cells.iter().product();
    let per = samples / strata;
    let widths: Vec<f64> = bounds
        .iter()
        .zip(&cells)
        .map(|(&(a, b), &c)| (b - a) / c as f64)
        .collect();
    let vol: f64 = widths.iter().product();
    let parts: Vec<(f64, f64)> = (0..strata)
        .into_par_iter()
        .map(|idx| {
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix(stream ^ splitmix(idx as u64)));
            let mut lo = vec![0.0; n];
            let mut rest = idx;
            for i in 0..n {
                lo[i] = bounds[i].0 + (rest % cells[i]) as f64 * widths[i];
                rest /= cells[i];
            }
            let mut u = vec![0.0; n];
            let mut buf = Vec::new();
            let (mut mean, mut m2) = (0.0f64, 0.0f64);
            for k in 0..per {
                for i in 0..n {
                    u[i] = lo[i] + widths[i] * rng.gen::<f64>();
                }
                let v = f.at(&u, &mut buf);
                let delta = v - mean;
                mean += delta / (k + 1) as f64;
                m2 += delta * (v - mean);
            }
            let var = if per > 1 { m2 / (per - 1) as f64 } else { 0.0 };
            (vol * mean, vol * vol * var / per as f64)
        })
        .collect();
    parts
        .iter()
        .fold((0.0, 0.0), |(e, v), &(pe, pv)| (e + pe, v + pv))
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, 0.0f64);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

fn quad_box_with(f: &Integrand, bounds: &Bounds, nodes: usize) -> f64 {
    let n = bounds.len();
    let (x, w) = gauss_legendre(nodes);
    let total = nodes.pow(n as u32);
    let chunks: Vec<f64> = (0..nodes)
        .into_par_iter()
        .map(|first| {
            let mut u = vec![0.0; n];
            let mut buf = Vec::new();
            let mut acc = 0.0;
            for idx in 0..total / nodes {
                let mut rest = idx;
                let mut weight = 1.0;
                for i in 0..n {
                    let k = if i == 0 { first } else { let k = rest % nodes; rest /= nodes; k };
                    let (a, b) = bounds[i];
                    let half = 0.5 * (b - a);
                    u[i] = a + half * (x[k] + 1.0);
                    weight *= half * w[k];
                }
                acc += weight * f.at(&u, &mut buf);
            }
            acc
        })
        .collect();
    chunks.iter().sum()
}

/// Tensor Gauss-Legendre; the error estimate is the difference to the rule
/// with half as many nodes.
fn quad_box(f: &Integrand, bounds: &Bounds, nodes: usize) -> (f64, f64) {
    let fine = quad_box_with(f, bounds, nodes);
    let coarse = quad_box_with(f, bounds, (nodes / 2).max(1));
    let err = (fine - coarse).abs();
    (fine, err * err)
}

/// Growth classification of `F(R)` for an explicit polynomial.
pub fn truncated_j_poly(psi: &IntPolynomial, cfg: &ProbeConfig) -> Result<GrowthVerdict> {
    let n = psi.nvars();
    cfg.validate(n)?;
    if n == 0 {
        return Err(Error::InvalidArgument("no integration variables".into()));
    }
    let lp = LogPoly::new(psi)?;
    let f = Integrand { psi: &lp, s: cfg.s };
    let logs: Vec<f64> = cfg.r_grid.iter().map(|r| r.ln()).collect();
    let mut regions: Vec<Vec<Bounds>> = vec![vec![vec![(0.0, logs[0]); n]]];
    for w in logs.windows(2) {
        regions.push(shell_boxes(n, w[0], w[1]));
    }
    let mut parts = Vec::with_capacity(regions.len());
    for (ri, boxes) in regions.iter().enumerate() {
        let (mut est, mut var) = (0.0, 0.0);
        for (bi, b) in boxes.iter().enumerate() {
            let (e, v) = match cfg.method {
                Method::MonteCarlo => {
                    let stream = splitmix(cfg.seed ^ splitmix(((ri as u64) << 32) | bi as u64));
                    mc_box(&f, b, cfg.samples, stream)
                }
                Method::TensorQuadrature => quad_box(&f, b, cfg.samples),
            };
            est += e;
            var += v;
        }
        parts.push((est, var));
    }
    let increments: Vec<f64> = parts[1..].iter().map(|p| p.0).collect();
    let increment_stderrs: Vec<f64> = parts[1..].iter().map(|p| p.1.sqrt()).collect();
    let mut values = Vec::with_capacity(parts.len());
    let mut stderrs = Vec::with_capacity(parts.len());
    let (mut acc, mut acc_var) = (0.0, 0.0);
    for p in &parts {
        acc += p.0;
        acc_var += p.1;
        values.push(acc);
        stderrs.push(acc_var.sqrt());
    }
    let (verdict, decay_ratio) = classify(&increments, &increment_stderrs);
    Ok(GrowthVerdict {
        s: cfg.s,
        method: cfg.method,
        samples: cfg.samples,
        seed: cfg.seed,
        r_grid: cfg.r_grid.clone(),
        values,
        stderrs,
        increments,
        increment_stderrs,
        decay_ratio,
        verdict,
    })
}

/// Growth classification of `F(R)` for the Kirchhoff polynomial of a
/// bridgeless graph.
pub fn truncated_j(g: &Multigraph, cfg: &ProbeConfig) -> Result<GrowthVerdict> {
    let br = graph::bridges(g);
    if !br.is_empty() {
        return Err(Error::HasBridges(br));
    }
    if graph::betti(g) == 0 {
        return Err(Error::NoCycles);
    }
    cfg.validate(g.num_edges())?;
    truncated_j_poly(&kirchhoff::psi_trees(g), cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelMode {
    /// Integrand `(y_1 ... y_n)^{-s}`.
    Product,
    /// Integrand `(y_1 + ... + y_n)^{-s}`.
    Sum,
}

/// Model integral over `[1, R]^n`. The sum mode uses an exact closed form for
/// integer `s` and tensor quadrature in log coordinates otherwise.
pub fn model_integral(n: usize, mode: ModelMode, s: f64, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(r > std::f64::consts::E && r.is_finite()) {
        return Err(Error::InvalidArgument("R must be finite and greater than e".into()));
    }
    if !s.is_finite() {
        return Err(Error::InvalidArgument("s must be finite".into()));
    }
    match mode {
        ModelMode::Product => {
            let one_dim = if s == 1.0 {
                r.ln()
            } else {
                (r.powf(1.0 - s) - 1.0) / (1.0 - s)
            };
            Ok(one_dim.powi(n as i32))
        }
        ModelMode::Sum if s.fract() == 0.0 => Ok(sum_closed_form(n, s as i64, r)),
        ModelMode::Sum => {
            if n > MAX_QUADRATURE_VARS {
                return Err(Error::TooLarge {
                    what: "quadrature dimension",
                    actual: n,
                    limit: MAX_QUADRATURE_VARS,
                });
            }
            Ok(sum_quadrature(n, s, r))
        }
    }
}

/// `n`-th forward difference (step `R - 1`, origin `n`) of an `n`-fold
/// antiderivative of `t^{-s}`: one antiderivative per variable of
/// `y_1 + ... + y_n` integrated over `[1, R]`.
fn sum_closed_form(n: usize, s: i64, r: f64) -> f64 {
    let nn = n as i64;
    let anti: Box<dyn Fn(f64) -> f64> = if (1..=nn).contains(&s) {
        // s - 1 power steps down to 1/t, then m + 1 steps through the log.
        let m = (nn - s) as i32;
        let harmonic: f64 = (1..=m).map(|j| 1.0 / j as f64).sum();
        let lead = if (s - 1) % 2 == 0 { 1.0 } else { -1.0 } / factorial(s - 1) / factorial(m as i64);
        Box::new(move |t: f64| lead * t.powi(m) * (t.ln() - harmonic))
    } else {
        let denom: f64 = (1..=nn).map(|j| (j - s) as f64).product();
        let p = (nn - s) as i32;
        Box::new(move |t: f64| t.powi(p) / denom)
    };
    let mut binom = 1.0f64;
    let mut acc = 0.0;
    for k in 0..=n {
        let sign = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * binom * anti(n as f64 + k as f64 * (r - 1.0));
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

fn factorial(k: i64) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

fn sum_quadrature(n: usize, s: f64, r: f64) -> f64 {
    let psi = {
        let mut p = IntPolynomial::zero(n);
        for i in 0..n {
            p = p.add(&IntPolynomial::var(n, i));
        }
        p
    };
    let lp = LogPoly::new(&psi).expect("sum of variables has positive coefficients");
    let f = Integrand { psi: &lp, s };
    // Composite rule: panels of length at most 1 in log coordinates.
    let l = r.ln();
    let panels = l.ceil() as usize;
    let edges: Vec<f64> = (0..=panels).map(|k| (k as f64).min(l)).collect();
    let mut total = 0.0;
    let count = panels.pow(n as u32);
    for idx in 0..count {
        let mut rest = idx;
        let bounds: Bounds = (0..n)
            .map(|_| {
                let k = rest % panels;
                rest /= panels;
                (edges[k], edges[k + 1])
            })
            .collect();
        total += quad_box_with(&f, &bounds, 16);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(8);
        let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((integral - 2.0 / 15.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn verdict_rule() {
        assert_eq!(classify(&[1.0, 1.0, 1.0], &[0.0; 3]).0, Verdict::Diverging);
        assert_eq!(classify(&[1.0, 0.3, 0.1], &[0.0; 3]).0, Verdict::Saturating);
        assert_eq!(classify(&[1.0, 1.0, 0.7], &[0.0; 3]).0, Verdict::Inconclusive);
        assert_eq!(classify(&[1.0, 1.0, 1.0], &[0.0, 0.2, 0.0]).0, Verdict::Inconclusive);
        assert_eq!(classify(&[1.0], &[0.0]).0, Verdict::Inconclusive);
    }

    #[test]
    fn config_validation() {
        let mut c = ProbeConfig::new(2.0);
        assert!(c.validate(3).is_ok());
        assert!(c.validate(7).is_err());
        c.samples = 10;
        assert!(c.validate(3).is_err());
        let mut c = ProbeConfig::new(2.0);
        c.r_grid = vec![10.0, 5.0, 20.0];
        assert!(c.validate(3).is_err());
        c.r_grid = vec![2.0, 5.0, 20.0];
        assert!(c.validate(3).is_err());
        assert!(ProbeConfig::new(-1.0).validate(3).is_err());
    }

    #[test]
    fn shell_boxes_tile_the_shell() {
        let vol: f64 = shell_boxes(3, 2.0, 5.0)
            .iter()
            .map(|b| b.iter().map(|(a, c)| c - a).product::<f64>())
            .sum();
        assert!((vol - (125.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn product_mode_closed_form() {
        let v = model_integral(1, ModelMode::Product, 2.0, 1e12).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
        let v = model_integral(2, ModelMode::Product, 1.0, 10f64.exp()).unwrap();
        assert!((v - 100.0).abs() < 1e-9);
    }

    #[test]
    fn sum_mode_log_divergence_at_s_equal_n() {
        let f: Vec<f64> = [4.0f64, 6.0, 8.0, 10.0]
            .iter()
            .map(|k| model_integral(2, ModelMode::Sum, 2.0, k.exp()).unwrap())
            .collect();
        let inc: Vec<f64> = f.windows(2).map(|w| w[1] - w[0]).collect();
        assert!((inc[2] / inc[1] - 1.0).abs() < 0.01, "{inc:?}");
        // Closed form ln((R+1)^2 / 4R).
        let r = 6f64.exp();
        assert!((f[1] - ((r + 1.0).powi(2) / (4.0 * r)).ln()).abs() < 1e-12);
    }

    #[test]
    fn sum_mode_bounded_above_n() {
        let f: Vec<f64> = [4.0f64, 6.0, 8.0, 10.0]
            .iter()
            .map(|k| model_integral(2, ModelMode::Sum, 3.0, k.exp()).unwrap())
            .collect();
        let inc: Vec<f64> = f.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(inc[2] < 0.2 * inc[1] && inc[1] < 0.2 * inc[0], "{inc:?}");
        // Limit is 1/2 * 1/2: integrate (y1 + y2)^-3 over [1, inf)^2.
        assert!((f[3] - 0.25).abs() < 1e-3);
    }

    #[test]
    fn model_integral_rejects_bad_input() {
        assert!(model_integral(0, ModelMode::Sum, 2.0, 100.0).is_err());
        assert!(model_integral(2, ModelMode::Sum, 2.0, 2.0).is_err());
        assert!(model_integral(5, ModelMode::Sum, 2.5, 100.0).is_err());
    }

    #[test]
    fn single_loop_quadrature_matches_closed_form() {
        let g = parse_graph("0 0").unwrap();
        let mut cfg = ProbeConfig::new(1.5);
        cfg.method = Method::TensorQuadrature;
        cfg.samples = 32;
        let v = truncated_j(&g, &cfg).unwrap();
        for (r, f) in cfg.r_grid.iter().zip(&v.values) {
            let exact = 2.0 * (1.0 - r.powf(-0.5));
            assert!((f - exact).abs() < 1e-10 * exact, "{f} vs {exact}");
        }
        assert_eq!(v.verdict, Verdict::Saturating);
    }

    #[test]
    fn rejects_graphs_with_bridges() {
        let g = parse_graph("0 0\n0 1\n1 1").unwrap();
        assert!(matches!(truncated_j(&g, &ProbeConfig::new(2.0)), Err(Error::HasBridges(_))));
    }
}
