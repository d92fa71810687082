use crate::{Error, Result};

use super::report::{KnapsackBoundInputs, MaxSatBoundInputs, TspBoundInputs};

/// `1 − e^{−x}` without cancellation for small `x`.
pub fn one_minus_exp_neg(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// Partial harmonic sum `Σ_{x=1}^{s} 1/x`, summed smallest term first.
pub fn harmonic(s: u64) -> f64 {
    (1..=s).rev().map(|x| 1.0 / x as f64).sum()
}

fn positive(value: f64, what: &str) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Argument(format!(
            "{what} must be positive, got {value}"
        )))
    }
}

/// Lower bound on the one-generation expected gain of the knapsack engine:
/// `(1 − e^{−λ(p1 + n(1−p1))/(μn²e)})·(p1·d_min + p2·v_min)`.
fn knapsack_drift(inp: &KnapsackBoundInputs) -> Result<f64> {
    let n = inp.n as f64;
    let exponent = inp.lambda as f64 * (inp.p1 + n * (1.0 - inp.p1))
        / (inp.mu as f64 * n * n * std::f64::consts::E);
    let success = one_minus_exp_neg(exponent);
    let step = inp.p1 * inp.d_min + inp.p2 * inp.v_min;
    positive(success * step, "knapsack drift denominator")
}

pub fn knapsack_avg_bound(inp: &KnapsackBoundInputs) -> Result<f64> {
    inp.validate()?;
    Ok((inp.y0 - inp.r0) / knapsack_drift(inp)?)
}

pub fn knapsack_klow(inp: &KnapsackBoundInputs) -> Result<f64> {
    inp.validate()?;
    Ok(inp.beta / knapsack_drift(inp)?)
}

pub fn knapsack_worst_bound(inp: &KnapsackBoundInputs, k: f64) -> Result<f64> {
    inp.validate()?;
    worst_case_bound(k, inp.y0, inp.r0, inp.alpha)
}

/// `1 − e^{−λ·N_opt/2^n}`: chance that one generation of uniform offspring
/// contains an optimum, bounded from below.
fn maxsat_success(inp: &MaxSatBoundInputs) -> Result<f64> {
    if inp.n_opt == 0 {
        return Err(Error::Argument("N_opt must be at least 1".into()));
    }
    let x = inp.lambda as f64 * inp.n_opt as f64 / 2f64.powi(inp.n as i32);
    positive(one_minus_exp_neg(x), "MAX-SAT success probability")
}

pub fn maxsat_avg_bound(inp: &MaxSatBoundInputs) -> Result<f64> {
    inp.validate()?;
    Ok(harmonic(inp.clause_count) / maxsat_success(inp)?)
}

pub fn maxsat_klow(inp: &MaxSatBoundInputs) -> Result<f64> {
    inp.validate()?;
    Ok(inp.beta / maxsat_success(inp)?)
}

pub fn maxsat_worst_bound(inp: &MaxSatBoundInputs, k: f64) -> Result<f64> {
    inp.validate()?;
    worst_case_bound(k, inp.y0, inp.r0, inp.alpha)
}

/// Numerator and denominator of
/// `g = (−(n−2)(n−5) + 2(n−3)(n−4)) / ((n−2)²(n−3))`, unreduced.
pub fn tsp_g_fraction(n: u64) -> Result<(i128, i128)> {
    if n <= 5 {
        return Err(Error::Domain(format!("g is defined for n > 5, got {n}")));
    }
    let n = n as i128;
    let num = -(n - 2) * (n - 5) + 2 * (n - 3) * (n - 4);
    let den = (n - 2) * (n - 2) * (n - 3);
    Ok((num, den))
}

pub fn tsp_g(n: u64) -> Result<f64> {
    let (num, den) = tsp_g_fraction(n)?;
    Ok(num as f64 / den as f64)
}

/// `μ·e^{λp}·C(n,2)/(λ·λp)`.
fn tsp_waiting_term(inp: &TspBoundInputs) -> Result<f64> {
    let lambda_p = positive(inp.lambda_p, "Poisson parameter")?;
    let lambda = positive(inp.lambda as f64, "offspring count")?;
    let n = inp.n as f64;
    let pairs = n * (n - 1.0) / 2.0;
    Ok(inp.mu as f64 * lambda_p.exp() * pairs / (lambda * lambda_p))
}

pub fn tsp_avg_bound(inp: &TspBoundInputs) -> Result<f64> {
    inp.validate()?;
    let g = tsp_g(inp.n)?;
    let l = inp.l as f64;
    Ok(2.0 / (1.0 + g) * (l + tsp_waiting_term(inp)? * harmonic(inp.l)))
}

pub fn tsp_klow(inp: &TspBoundInputs) -> Result<f64> {
    inp.validate()?;
    let g = tsp_g(inp.n)?;
    Ok(inp.beta * (1.0 + tsp_waiting_term(inp)?) / (1.0 + g))
}

pub fn tsp_worst_bound(inp: &TspBoundInputs, k: f64) -> Result<f64> {
    inp.validate()?;
    worst_case_bound(k, inp.l as f64, inp.r0, inp.alpha)
}

/// `k·(Y0 − r0)/α`: the hitting-time bound when every `k` generations gain at
/// least one fitness gap in expectation.
pub fn worst_case_bound(k: f64, y0: f64, r0: f64, alpha: f64) -> Result<f64> {
    positive(alpha, "alpha")?;
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::Argument(format!("k must be non-negative, got {k}")));
    }
    Ok(k * (y0 - r0) / alpha)
}
