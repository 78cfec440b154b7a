//! Random edge colourings of `Q_n` and a deletion-method construction of
//! `C_2ℓ`-free subgraphs.
//!
//! Each edge gets one of `num_colors ≈ 1/p` colours independently and
//! uniformly, with `p = c · n^{-a}` and `a = (ℓ-1)/(2ℓ-1)`. The largest colour
//! class is kept and one edge is removed from each of its remaining
//! `2ℓ`-cycles, which leaves a certified cycle-free subgraph.
//!
//! Randomness comes from ChaCha8 seeded with `seed` through `seed_from_u64`;
//! trial `t` uses stream `t` of that generator. Colours are drawn for the
//! edges of `Q_n` in canonical edge order.

use std::f64::consts::E;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{lower_bound_exponent, Exponent};
use crate::budget::Budget;
use crate::cube::{build_qn, cube_edge_count, edge_slot, Subgraph, MAX_DIM};
use crate::cycles::{census, check_length, enumerate_cycles, is_cycle_free};
use crate::error::{Error, Result};

/// Largest dimension for which [`lll_report`] runs a full census.
pub const LLL_EXACT_MAX_DIM: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColoringParams {
    pub n: u32,
    pub ell: u32,
    pub c: f64,
    /// `(ℓ-1)/(2ℓ-1)`.
    pub a: Exponent,
    /// `c · n^{-a}`.
    pub p: f64,
    /// `max(1, round(1/p))`.
    pub num_colors: u32,
    pub seed: u64,
}

fn check_common(n: u32, ell: u32) -> Result<()> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::invalid(format!("n = {n} outside 2..={MAX_DIM}")));
    }
    if ell < 2 {
        return Err(Error::invalid(format!("ell = {ell} must be at least 2")));
    }
    Ok(())
}

fn exponent_a(ell: u32) -> Exponent {
    let ell = i64::from(ell);
    Exponent::from(Ratio::new(ell - 1, 2 * ell - 1))
}

/// Parameters from the constant `c`; fails when `p = c · n^{-a}` exceeds 1.
pub fn make_params(n: u32, ell: u32, c: f64, seed: u64) -> Result<ColoringParams> {
    check_common(n, ell)?;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::invalid(format!("c = {c} must be positive")));
    }
    let a = exponent_a(ell);
    let p = c * f64::from(n).powf(-a.to_f64());
    if p > 1.0 {
        return Err(Error::invalid(format!(
            "p = {p:.6} > 1; c = {c} is too large for n = {n}"
        )));
    }
    let num_colors = ((1.0 / p).round() as u32).max(1);
    Ok(ColoringParams {
        n,
        ell,
        c,
        a,
        p,
        num_colors,
        seed,
    })
}

/// Parameters with an explicit colour count; `p = 1/num_colors` and `c` follows.
pub fn params_with_colors(n: u32, ell: u32, num_colors: u32, seed: u64) -> Result<ColoringParams> {
    check_common(n, ell)?;
    if num_colors == 0 {
        return Err(Error::invalid("need at least one colour"));
    }
    let a = exponent_a(ell);
    let p = 1.0 / f64::from(num_colors);
    let c = p * f64::from(n).powf(a.to_f64());
    Ok(ColoringParams {
        n,
        ell,
        c,
        a,
        p,
        num_colors,
        seed,
    })
}

impl ColoringParams {
    pub fn two_ell(&self) -> usize {
        2 * self.ell as usize
    }

    /// Generator for trial `trial`.
    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    /// Colour of every edge of `Q_n`, in canonical edge order.
    pub fn coloring(&self, trial: u64) -> Vec<u32> {
        let mut rng = self.rng(trial);
        (0..cube_edge_count(self.n))
            .map(|_| rng.random_range(0..self.num_colors))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionResult {
    pub params: ColoringParams,
    pub trial: u64,
    pub largest_color: u32,
    /// Size of the largest colour class.
    pub edges_before_deletion: usize,
    /// Monochromatic `2ℓ`-cycles inside the largest class.
    pub mono_cycles_found: usize,
    pub deletions: usize,
    pub kept_edge_count: usize,
    #[serde(skip)]
    pub kept_edges: Subgraph,
    /// Result of an independent cycle scan of `kept_edges`.
    pub certified: bool,
    /// `kept / (n^{1/2 + 1/(4ℓ-2)} 2^n)`.
    pub density_ratio: f64,
}

/// Trial 0 of [`run_trial`].
pub fn run_construction(params: &ColoringParams, budget: Budget) -> Result<ConstructionResult> {
    run_trial(params, 0, budget)
}

/// Colours `Q_n`, keeps the largest class, then walks its `2ℓ`-cycles in
/// canonical order and deletes the smallest edge of each cycle still intact.
pub fn run_trial(
    params: &ColoringParams,
    trial: u64,
    budget: Budget,
) -> Result<ConstructionResult> {
    let two_ell = params.two_ell();
    check_length(two_ell)?;
    let qn = build_qn(params.n)?;
    let colors = params.coloring(trial);
    let mut sizes = vec![0usize; params.num_colors as usize];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let largest_color = (0..params.num_colors)
        .max_by(|&x, &y| sizes[x as usize].cmp(&sizes[y as usize]).then(y.cmp(&x)))
        .expect("at least one colour");
    let class = Subgraph::from_edges(
        params.n,
        qn.edges()
            .zip(&colors)
            .filter(|(_, &c)| c == largest_color)
            .map(|(e, _)| e),
    )?;
    let cycles = enumerate_cycles(&class, two_ell, None, budget)?;
    let mut kept = class.clone();
    let mut deletions = 0;
    for cyc in &cycles {
        if cyc.lies_in(&kept) {
            let smallest = cyc.edges().into_iter().min().expect("cycle has edges");
            kept.remove(smallest);
            deletions += 1;
        }
    }
    let certified = is_cycle_free(&kept, two_ell, budget)?.is_free();
    let scale = f64::from(params.n).powf(lower_bound_exponent(params.ell)?.to_f64())
        * 2f64.powi(params.n as i32);
    Ok(ConstructionResult {
        params: *params,
        trial,
        largest_color,
        edges_before_deletion: class.len(),
        mono_cycles_found: cycles.len(),
        deletions,
        kept_edge_count: kept.len(),
        density_ratio: kept.len() as f64 / scale,
        kept_edges: kept,
        certified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Per-edge count from a full census.
    Exact,
    /// `x = N · 2ℓ / (n 2^{n-1})` with a closed-form `N` (4- and 6-cycles).
    Formula,
    /// `x ≈ n^{ℓ-1}`.
    Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LLLReport {
    /// `p^{2ℓ-1}`.
    pub p_bound: f64,
    /// `2ℓ`-cycles through a fixed edge.
    pub x: f64,
    pub x_mode: CountMode,
    /// `2ℓ · x`.
    pub d_bound: f64,
    /// `P (D + 1) e`.
    pub condition: f64,
    /// `condition < 1`. A sufficient condition only; never an existence claim.
    pub satisfied: bool,
}

/// Closed-form `N(Q_n, C_4) = C(n,2) 2^{n-2}` and `N(Q_n, C_6) = 16 C(n,3) 2^{n-3}`.
pub fn closed_form_cycle_count(n: u32, two_ell: usize) -> Option<u128> {
    let n128 = u128::from(n);
    match two_ell {
        4 if n >= 2 => Some((n128 * (n128 - 1) / 2) << (n - 2)),
        6 if n >= 3 => Some((16 * (n128 * (n128 - 1) * (n128 - 2) / 6)) << (n - 3)),
        4 | 6 => Some(0),
        _ => None,
    }
}

fn cycles_per_edge(n: u32, two_ell: usize, budget: Budget) -> (f64, CountMode) {
    if n <= LLL_EXACT_MAX_DIM {
        if let Ok(c) = census(n, two_ell, budget) {
            if let Some(x) = c.uniform_count() {
                return (x as f64, CountMode::Exact);
            }
        }
    }
    if let Some(total) = closed_form_cycle_count(n, two_ell) {
        return (
            total as f64 * two_ell as f64 / cube_edge_count(n) as f64,
            CountMode::Formula,
        );
    }
    (
        f64::from(n).powi(two_ell as i32 / 2 - 1),
        CountMode::Estimate,
    )
}

pub fn lll_report(params: &ColoringParams, budget: Budget) -> LLLReport {
    let two_ell = params.two_ell();
    let p_bound = params.p.powi(two_ell as i32 - 1);
    let (x, x_mode) = cycles_per_edge(params.n, two_ell, budget);
    let d_bound = two_ell as f64 * x;
    let condition = p_bound * (d_bound + 1.0) * E;
    LLLReport {
        p_bound,
        x,
        x_mode,
        d_bound,
        condition,
        satisfied: condition < 1.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonoStats {
    pub trials: u64,
    /// `N(Q_n, C_2ℓ)`.
    pub total_cycles: u64,
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`; zero for a single trial.
    pub std_error: f64,
    /// `N · num_colors^{-(2ℓ-1)}`, the exact expectation.
    pub expected: f64,
    /// `N · p^{2ℓ-1}`.
    pub expected_p_bound: f64,
    /// Per-trial monochromatic cycle counts.
    #[serde(skip)]
    pub counts: Vec<u64>,
}

impl MonoStats {
    /// Distance of the mean from the expectation in standard errors.
    pub fn z_score(&self) -> Option<f64> {
        (self.std_error > 0.0).then(|| (self.mean - self.expected) / self.std_error)
    }
}

/// Monochromatic `2ℓ`-cycles of `Q_n` over `trials` independent colourings.
pub fn mono_cycle_stats(params: &ColoringParams, trials: u64, budget: Budget) -> Result<MonoStats> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let two_ell = params.two_ell();
    let n = params.n;
    let qn = build_qn(n)?;
    // Dense edge slot -> position in canonical edge order.
    let mut position = vec![usize::MAX; (n as usize) << n];
    for (i, e) in qn.edges().enumerate() {
        position[edge_slot(n, e.lo().mask(), e.element() - 1)] = i;
    }
    let cycles: Vec<Vec<usize>> = enumerate_cycles(&qn, two_ell, None, budget)?
        .iter()
        .map(|c| {
            c.edges()
                .into_iter()
                .map(|e| position[edge_slot(n, e.lo().mask(), e.element() - 1)])
                .collect()
        })
        .collect();
    let counts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let colors = params.coloring(t);
            cycles
                .iter()
                .filter(|cyc| cyc.iter().all(|&i| colors[i] == colors[cyc[0]]))
                .count() as u64
        })
        .collect();
    let mean = counts.iter().sum::<u64>() as f64 / trials as f64;
    let std_error = if trials > 1 {
        let var = counts
            .iter()
            .map(|&c| (c as f64 - mean).powi(2))
            .sum::<f64>()
            / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    let total = cycles.len() as u64;
    Ok(MonoStats {
        trials,
        total_cycles: total,
        mean,
        std_error,
        expected: total as f64 * f64::from(params.num_colors).powi(-(two_ell as i32 - 1)),
        expected_p_bound: total as f64 * params.p.powi(two_ell as i32 - 1),
        counts,
    })
}
