//! Exponent recurrences for the extremal growth rate of pattern-avoiding
//! simple matrices, and their numeric fixed points.
//!
//! Three step maps drive `γ_{n+1} = step(γ_n)`:
//!
//! * `k2`:        γ' = γ / (k-1+γ), starting at γ_0 = 1, limit 0.
//! * `quadratic`: γ' = (-2γ-1 + √((2γ+1)² + 8γ(k-1))) / 2, starting at
//!   γ_0 = k-1, limit α = 2k/3 - 1.
//! * `exact`:     γ' is the root of k-1-x = Σ_{j=1}^{⌊x+1⌋} (x-j+1)/γ,
//!   found by bisection on [0, k-1]. Its fixed point improves on α from
//!   k = 4 upward (1.618… for k = 4, 2.3028… for k = 5).
//!
//! A contribution-count exponent `a` converts to the column-count exponent
//! bound `2k-1-a`; the k2 mode contributes `a = 1-γ_∞`, the other modes
//! `a = k-1-γ_∞`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const DEFAULT_BISECTION_TOL: f64 = 1e-12;
pub const DEFAULT_ITERATION_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Slack for floating-point domain checks at interval endpoints.
const DOMAIN_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ExponentError {
    #[error("k must be at least 2, got {k}")]
    KTooSmall { k: usize },
    #[error("gamma {gamma} outside [{lo}, {hi}]")]
    GammaOutOfRange { gamma: f64, lo: f64, hi: f64 },
    #[error("tolerance must be positive, got {tol}")]
    NonPositiveTolerance { tol: f64 },
    #[error("contribution exponent {value} outside [0, {hi}]")]
    ExponentOutOfRange { value: f64, hi: f64 },
    #[error("no sign change over [0, k-1]; the step equation has no root there")]
    NoSignChange,
    #[error("no convergence within {max_iter} iterations; last gamma {last}")]
    NonConvergence {
        max_iter: usize,
        last: f64,
        gamma_sequence: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceMode {
    K2,
    Quadratic,
    Exact,
}

impl RecurrenceMode {
    pub fn name(&self) -> &'static str {
        match self {
            RecurrenceMode::K2 => "k2",
            RecurrenceMode::Quadratic => "quadratic",
            RecurrenceMode::Exact => "exact",
        }
    }

    /// Starting point of the iteration: the contribution condition holds
    /// trivially at γ = 1 for the k2 recurrence and at γ = k-1 otherwise.
    pub fn gamma_start(&self, k: usize) -> f64 {
        match self {
            RecurrenceMode::K2 => 1.0,
            _ => (k - 1) as f64,
        }
    }
}

impl fmt::Display for RecurrenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RecurrenceMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "k2" => Ok(RecurrenceMode::K2),
            "quadratic" => Ok(RecurrenceMode::Quadratic),
            "exact" => Ok(RecurrenceMode::Exact),
            other => Err(format!(
                "unknown mode {other:?}; expected k2, quadratic, or exact"
            )),
        }
    }
}

/// Outcome of iterating one recurrence to its fixed point.
#[derive(Debug, Clone)]
pub struct ExponentState {
    pub k: usize,
    pub mode: RecurrenceMode,
    /// γ_0, γ_1, …, ending with the converged value.
    pub gamma_sequence: Vec<f64>,
    pub limit: f64,
    /// Column-count exponent bound derived from the limit.
    pub fs_exponent: f64,
    /// Quadratic-mode reference fixed point 2k/3 - 1.
    pub alpha: f64,
}

impl ExponentState {
    pub fn iterations(&self) -> usize {
        self.gamma_sequence.len() - 1
    }
}

fn check_k(k: usize) -> Result<(), ExponentError> {
    if k < 2 {
        return Err(ExponentError::KTooSmall { k });
    }
    Ok(())
}

/// One step of the k=2 recurrence: γ/(k-1+γ).
pub fn gamma_step_k2(gamma: f64, k: usize) -> Result<f64, ExponentError> {
    check_k(k)?;
    if !(gamma > 0.0 && gamma <= 1.0 + DOMAIN_EPS) {
        return Err(ExponentError::GammaOutOfRange {
            gamma,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(gamma / ((k - 1) as f64 + gamma))
}

/// One step of the quadratic recurrence h(γ).
pub fn gamma_step_quadratic(gamma: f64, k: usize) -> Result<f64, ExponentError> {
    check_k(k)?;
    let hi = (k - 1) as f64;
    if !(gamma >= 0.0 && gamma <= hi + DOMAIN_EPS) {
        return Err(ExponentError::GammaOutOfRange {
            gamma,
            lo: 0.0,
            hi,
        });
    }
    let b = 2.0 * gamma + 1.0;
    Ok((-b + (b * b + 8.0 * gamma * (k - 1) as f64).sqrt()) / 2.0)
}

/// The exact-step right-hand side: Σ_{j=1}^{⌊x+1⌋} (x-j+1)/γ. Continuous in
/// x because the newly admitted term at integer x enters with weight zero.
pub fn exact_step_sum(x: f64, gamma: f64) -> f64 {
    let terms = (x + 1.0).floor() as i64;
    (1..=terms).map(|j| x - j as f64 + 1.0).sum::<f64>() / gamma
}

/// One step of the exact recurrence: the unique root in [0, k-1] of
/// k-1-x = exact_step_sum(x, γ), by bisection to `tol`. The left side falls
/// from k-1 to 0 while the right side rises from 0, so the root is unique.
pub fn gamma_step_exact(gamma: f64, k: usize, tol: f64) -> Result<f64, ExponentError> {
    check_k(k)?;
    let hi = (k - 1) as f64;
    if !(gamma > 0.0 && gamma <= hi + DOMAIN_EPS) {
        return Err(ExponentError::GammaOutOfRange {
            gamma,
            lo: 0.0,
            hi,
        });
    }
    if tol <= 0.0 {
        return Err(ExponentError::NonPositiveTolerance { tol });
    }
    let g = |x: f64| hi - x - exact_step_sum(x, gamma);
    let (mut lo_x, mut hi_x) = (0.0f64, hi);
    if g(lo_x) <= 0.0 || g(hi_x) >= 0.0 {
        return Err(ExponentError::NoSignChange);
    }
    while hi_x - lo_x > tol {
        let mid = 0.5 * (lo_x + hi_x);
        if g(mid) > 0.0 {
            lo_x = mid;
        } else {
            hi_x = mid;
        }
    }
    Ok(0.5 * (lo_x + hi_x))
}

/// 2k-1-a: the column-count exponent bound from contribution exponent `a`.
pub fn fs_exponent_bound(k: usize, contribution_exponent: f64) -> Result<f64, ExponentError> {
    check_k(k)?;
    let hi = (k - 1) as f64;
    if !(contribution_exponent >= -DOMAIN_EPS && contribution_exponent <= hi + DOMAIN_EPS) {
        return Err(ExponentError::ExponentOutOfRange {
            value: contribution_exponent,
            hi,
        });
    }
    let a = contribution_exponent.clamp(0.0, hi);
    Ok((2 * k - 1) as f64 - a)
}

/// Iterates the chosen recurrence from its starting point until successive
/// values differ by less than `tol`, then converts the limit to an
/// fs-exponent bound.
pub fn iterate_to_limit(
    k: usize,
    mode: RecurrenceMode,
    tol: f64,
    max_iter: usize,
) -> Result<ExponentState, ExponentError> {
    check_k(k)?;
    if tol <= 0.0 {
        return Err(ExponentError::NonPositiveTolerance { tol });
    }
    let bisect_tol = (tol * 0.1).min(DEFAULT_BISECTION_TOL);
    let mut gamma = mode.gamma_start(k);
    let mut seq = vec![gamma];
    let mut converged = false;
    for _ in 0..max_iter {
        let next = match mode {
            RecurrenceMode::K2 => gamma_step_k2(gamma, k)?,
            RecurrenceMode::Quadratic => gamma_step_quadratic(gamma, k)?,
            RecurrenceMode::Exact => gamma_step_exact(gamma, k, bisect_tol)?,
        };
        debug_assert!(next <= gamma + bisect_tol, "sequence must not increase");
        seq.push(next);
        let done = (gamma - next).abs() < tol;
        gamma = next;
        if done {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(ExponentError::NonConvergence {
            max_iter,
            last: gamma,
            gamma_sequence: seq,
        });
    }
    let contribution_exponent = match mode {
        RecurrenceMode::K2 => 1.0 - gamma,
        _ => (k - 1) as f64 - gamma,
    };
    let fs_exponent = fs_exponent_bound(k, contribution_exponent)?;
    Ok(ExponentState {
        k,
        mode,
        gamma_sequence: seq,
        limit: gamma,
        fs_exponent,
        alpha: 2.0 * k as f64 / 3.0 - 1.0,
    })
}
