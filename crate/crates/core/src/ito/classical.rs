//! The classical random walk obtained by replacing the operator weights with
//! step probabilities `p, q, r, s` (`p + q + r + s = 1`).
//!
//! Paired steps `(v₁ⱼ, v₂ⱼ)` for `j ≤ min(n, n′)` carry `(−,−) ↦ p`,
//! `(−,+) ↦ q`, `(+,−) ↦ r`, `(+,+) ↦ s`, mirroring `P = p₁⊗p₁`, `Q = p₁⊗q₁`,
//! `R = q₁⊗p₁`, `S = q₁⊗q₁`. Steps beyond the shorter path use the marginal
//! of the longer one: `p + q` / `r + s` for the first path, `p + r` / `q + s`
//! for the second.

use std::collections::BTreeMap;

use crate::coin::ClassicalWeights;
use crate::error::Result;
use crate::linalg::C64;
use crate::paths::{all_paths, check_pair_guard, Path1D, PathPair};

use super::checks::{local_terms, telescoped_terms, ItoTerms};
use super::registry::LatticeFunction;
use super::report::{IdentityReport, Params, Value};
use super::{Axis, SCALAR_TOL};

fn step_pair_probability(w: &ClassicalWeights, first: i64, second: i64) -> f64 {
    match (first > 0, second > 0) {
        (false, false) => w.p,
        (false, true) => w.q,
        (true, false) => w.r,
        (true, true) => w.s,
    }
}

fn measure(w: &ClassicalWeights, first: &Path1D, second: &Path1D) -> f64 {
    let (n, n_prime) = (first.len(), second.len());
    let mut prob = 1.0;
    for j in 1..=n.max(n_prime) {
        prob *= match (j <= n, j <= n_prime) {
            (true, true) => step_pair_probability(w, first.increment(j), second.increment(j)),
            (true, false) if first.increment(j) < 0 => w.p + w.q,
            (true, false) => w.r + w.s,
            (false, true) if second.increment(j) < 0 => w.p + w.r,
            (false, true) => w.q + w.s,
            (false, false) => unreachable!("j never exceeds both lengths"),
        };
    }
    prob
}

/// Probability of one path pair under the classical walk.
pub fn classical_pair_measure(weights: &ClassicalWeights, pair: &PathPair) -> f64 {
    measure(weights, &pair.first, &pair.second)
}

/// Law of the endpoint `(w₁(n), w₂(n′))` under the classical walk.
pub fn classical_endpoint_law(
    weights: &ClassicalWeights,
    n: usize,
    n_prime: usize,
) -> Result<BTreeMap<(i64, i64), f64>> {
    check_pair_guard(n, n_prime)?;
    let firsts = all_paths(n)?;
    let seconds = all_paths(n_prime)?;
    let mut law = BTreeMap::new();
    for a in &firsts {
        for b in &seconds {
            *law.entry((a.endpoint(), b.endpoint())).or_insert(0.0) += measure(weights, a, b);
        }
    }
    Ok(law)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Product of two symmetric binomial laws on `{−n, −n+2, …, n} × {−n′, …, n′}`.
pub fn binomial_product_law(n: usize, n_prime: usize) -> BTreeMap<(i64, i64), f64> {
    let scale = 0.5f64.powi((n + n_prime) as i32);
    let mut law = BTreeMap::new();
    for a in 0..=n {
        for b in 0..=n_prime {
            let site = (2 * a as i64 - n as i64, 2 * b as i64 - n_prime as i64);
            law.insert(site, binomial(n, a) * binomial(n_prime, b) * scale);
        }
    }
    law
}

fn is_uniform(w: &ClassicalWeights) -> bool {
    [w.p, w.q, w.r, w.s].iter().all(|&v| v == 0.25)
}

/// Scalar analogue of the operator-weighted Itô formula.
///
/// Instances folded into the report: total path measure against 1; every
/// local `(m, m′, axis)` identity and both telescoped identities with each
/// side averaged over the path measure; for uniform weights, the endpoint law
/// against [`binomial_product_law`] site by site. All at the scalar tolerance.
pub fn check_classical_reduction(
    weights: &ClassicalWeights,
    f: &LatticeFunction,
    n: usize,
    n_prime: usize,
) -> Result<IdentityReport> {
    check_pair_guard(n, n_prime)?;
    let firsts = all_paths(n)?;
    let seconds = all_paths(n_prime)?;

    let local_keys: Vec<(usize, usize, Axis)> = (0..n)
        .flat_map(|m| (0..n_prime).flat_map(move |mp| Axis::BOTH.map(|axis| (m, mp, axis))))
        .collect();
    let zero = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    let mut local = vec![zero; local_keys.len()];
    let mut summed = [zero; 2];
    let mut total = 0.0;

    let add = |slot: &mut (C64, C64), t: ItoTerms, prob: f64| {
        slot.0 += t.lhs * prob;
        slot.1 += t.rhs() * prob;
    };
    for a in &firsts {
        for b in &seconds {
            let prob = measure(weights, a, b);
            total += prob;
            for (slot, &(m, mp, axis)) in local.iter_mut().zip(&local_keys) {
                add(slot, local_terms(f, a, b, m, mp, axis), prob);
            }
            for (slot, axis) in summed.iter_mut().zip(Axis::BOTH) {
                add(slot, telescoped_terms(f, a, b, axis), prob);
            }
        }
    }

    let scalar = |name: &str, params: Params, lhs: C64, rhs: C64| {
        IdentityReport::new(name, params, Value::Scalar(lhs), Value::Scalar(rhs), SCALAR_TOL, false)
    };
    let mut instances = vec![scalar(
        "measure_total",
        Params::new().text("part", "measure_total"),
        C64::new(total, 0.0),
        C64::new(1.0, 0.0),
    )];
    for ((m, mp, axis), (lhs, rhs)) in local_keys.into_iter().zip(local) {
        let params = Params::new()
            .text("part", "local")
            .int("m", m)
            .int("m_prime", mp)
            .text("axis", axis.as_str());
        instances.push(scalar("local", params, lhs, rhs));
    }
    for (axis, (lhs, rhs)) in Axis::BOTH.into_iter().zip(summed) {
        instances.push(scalar(
            "summed",
            Params::new().text("part", "summed").text("axis", axis.as_str()),
            lhs,
            rhs,
        ));
    }
    if is_uniform(weights) {
        let law = classical_endpoint_law(weights, n, n_prime)?;
        for (site, expected) in binomial_product_law(n, n_prime) {
            let got = law.get(&site).copied().unwrap_or(0.0);
            let params = Params::new()
                .text("part", "endpoint_law")
                .int("x", site.0)
                .int("y", site.1);
            instances.push(scalar(
                "endpoint_law",
                params,
                C64::new(got, 0.0),
                C64::new(expected, 0.0),
            ));
        }
    }

    let params = Params::new()
        .text("function", f.name())
        .int("n", n)
        .int("n_prime", n_prime)
        .real("p", weights.p)
        .real("q", weights.q)
        .real("r", weights.r)
        .real("s", weights.s);
    Ok(IdentityReport::aggregate(
        "classical_reduction",
        params,
        instances,
        SCALAR_TOL,
        false,
        SCALAR_TOL,
    ))
}
