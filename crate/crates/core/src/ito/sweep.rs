//! Parameter sweeps behind the verification suites.
//!
//! Each sweep folds many instances into a few aggregated reports. Work runs in
//! parallel but results are always combined in sweep order, so output does
//! not depend on the thread count. Counterexamples are listed in parameter
//! order: function name, then `n, n′, k, k′, m, m′, axis` as applicable.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::coin::{build_walk_operators, ClassicalWeights, Coin};
use crate::error::{Error, Result};
use crate::fourier::{default_grid_size, evolve_fourier, invert, lemma_residual, transform};
use crate::linalg::{frobenius_distance, C64};
use crate::paths::{all_paths, check_pair_guard, prob_from_xi, xi_bruteforce, xi_recursive, Path1D};
use crate::position::{distribution, init_state, step, Qubit4};

use super::checks::{
    conjecture6_terms, cor5_report, local_keys, local_terms, tanaka_batch, telescoped_terms, thm3_batch, Cor5Variant,
    PairSpace,
};
use super::classical::check_classical_reduction;
use super::registry::{function_registry, LatticeFunction};
use super::report::{IdentityReport, Params, Tally, Value};
use super::{Axis, COUNTEREXAMPLE_THRESHOLD, OPERATOR_TOL, SCALAR_TOL};

pub const PROP2_MAX: usize = 6;
pub const THM3_MAX: usize = 5;
pub const TANAKA_MAX: usize = 5;
pub const COR5_MAX: usize = 6;
pub const LEMMA1_MAX: usize = 20;
pub const XI_ORACLE_MAX: usize = 8;
pub const CLASSICAL_MAX: usize = 5;
/// Largest `n` or `n′` accepted by the conjecture sweep.
pub const CONJECTURE6_MAX: usize = 8;
/// Counterexamples kept per report; the total is still counted.
pub const COUNTEREXAMPLE_CAP: usize = 100_000;
/// Tolerance of `P + Q + R + S = U⊗U`, which holds entrywise without rounding.
pub const DECOMPOSITION_TOL: f64 = 1e-14;
/// Tolerance of the path-sum law against the position walk.
pub const XI_LAW_TOL: f64 = 1e-11;
/// Seed of the initial state used by the evolution checks.
pub const DEFAULT_STATE_SEED: u64 = 20_240_607;

/// `{−π, −π/2, 0, π/2, π}`, sampled on both axes.
pub const COR5_GRID: [f64; 5] = [-PI, -PI / 2.0, 0.0, PI / 2.0, PI];

/// Named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Prop2,
    Thm3,
    Tanaka,
    Cor5,
    Lemma1,
    XiOracle,
    Classical,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Prop2,
        Suite::Thm3,
        Suite::Tanaka,
        Suite::Cor5,
        Suite::Lemma1,
        Suite::XiOracle,
        Suite::Classical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop2 => "prop2",
            Suite::Thm3 => "thm3",
            Suite::Tanaka => "tanaka",
            Suite::Cor5 => "cor5",
            Suite::Lemma1 => "lemma1",
            Suite::XiOracle => "xi-oracle",
            Suite::Classical => "classical",
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            Suite::Prop2 => PROP2_MAX,
            Suite::Thm3 => THM3_MAX,
            Suite::Tanaka => TANAKA_MAX,
            Suite::Cor5 => COR5_MAX,
            Suite::Lemma1 => LEMMA1_MAX,
            Suite::XiOracle => XI_ORACLE_MAX,
            Suite::Classical => CLASSICAL_MAX,
        }
    }

    /// Parses a suite selection; `"all"` expands to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.parse().map(|suite| vec![suite])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|suite| suite.name()).collect();
            Error::Config(format!(
                "unknown suite {s:?}; expected one of {}, all",
                names.join(", ")
            ))
        })
    }
}

/// A coin together with the label it is reported under.
#[derive(Clone, Debug)]
pub struct LabeledCoin {
    pub label: String,
    pub coin: Coin,
}

impl LabeledCoin {
    pub fn new(label: impl Into<String>, coin: Coin) -> Self {
        LabeledCoin {
            label: label.into(),
            coin,
        }
    }

    fn params(&self) -> Params {
        Params::new()
            .text("coin_label", self.label.clone())
            .coin("coin", self.coin.to_json())
    }
}

/// Registry sorted by name, the order counterexamples are listed in.
fn sorted_registry() -> Vec<LatticeFunction> {
    let mut family = function_registry();
    family.sort_by(|a, b| a.name().cmp(b.name()));
    family
}

fn length_pairs(max_n: usize) -> Vec<(usize, usize)> {
    (0..=max_n).flat_map(|n| (0..=max_n).map(move |np| (n, np))).collect()
}

fn scalar(z: C64) -> Value {
    Value::Scalar(z)
}

/// Discrete Itô formula on single path pairs, every registry function, every
/// pair with `n, n′ ≤ max_n`, every valid `(m, m′)`, both axes. Two reports
/// per function: local and telescoped.
pub fn sweep_prop2(max_n: usize) -> Result<Vec<IdentityReport>> {
    check_pair_guard(max_n, max_n)?;
    let paths: Vec<Vec<Path1D>> = (0..=max_n).map(all_paths).collect::<Result<_>>()?;
    let family = sorted_registry();
    let reports: Vec<[IdentityReport; 2]> = family
        .par_iter()
        .map(|f| {
            let mut local = Tally::new(SCALAR_TOL, COUNTEREXAMPLE_CAP);
            let mut telescoped = Tally::new(SCALAR_TOL, COUNTEREXAMPLE_CAP);
            for (n, n_prime) in length_pairs(max_n) {
                let keys = local_keys(n, n_prime);
                for a in &paths[n] {
                    for b in &paths[n_prime] {
                        let at = |p: Params| {
                            p.int("n", n)
                                .int("n_prime", n_prime)
                                .int("k", a.index())
                                .int("k_prime", b.index())
                        };
                        for &(m, mp, axis) in &keys {
                            let t = local_terms(f, a, b, m, mp, axis);
                            local.record(scalar(t.lhs), scalar(t.rhs()), || {
                                at(Params::new())
                                    .int("m", m)
                                    .int("m_prime", mp)
                                    .text("axis", axis.as_str())
                            });
                        }
                        for axis in Axis::BOTH {
                            let t = telescoped_terms(f, a, b, axis);
                            telescoped.record(scalar(t.lhs), scalar(t.rhs()), || {
                                at(Params::new()).text("axis", axis.as_str())
                            });
                        }
                    }
                }
            }
            let params = Params::new().text("function", f.name()).int("max_n", max_n);
            [
                local.finish("prop2_local", params.clone(), SCALAR_TOL, false),
                telescoped.finish("prop2_telescoped", params, SCALAR_TOL, false),
            ]
        })
        .collect();
    Ok(reports.into_iter().flatten().collect())
}

fn pair_spaces(coin: &Coin, lengths: &[(usize, usize)]) -> Result<Vec<PairSpace>> {
    lengths.iter().map(|&(n, np)| PairSpace::new(coin, n, np)).collect()
}

/// Operator-weighted Itô formula for every `(n, n′)` with `n, n′ ≤ max_n`
/// over the full registry: reports `thm3_local` and `thm3_summed` per length pair.
pub fn sweep_thm3(coin: &LabeledCoin, max_n: usize) -> Result<Vec<IdentityReport>> {
    check_pair_guard(max_n, max_n)?;
    let lengths = length_pairs(max_n);
    let spaces = pair_spaces(&coin.coin, &lengths)?;
    let family = sorted_registry();
    let tasks: Vec<(usize, usize)> = (0..spaces.len())
        .flat_map(|s| (0..family.len()).map(move |fi| (s, fi)))
        .collect();
    let sums: Vec<_> = tasks
        .par_iter()
        .map(|&(s, fi)| thm3_batch(&spaces[s], &family[fi]))
        .collect();

    let mut reports = Vec::new();
    for (s, &(n, n_prime)) in lengths.iter().enumerate() {
        let keys = local_keys(n, n_prime);
        let mut local = Tally::new(OPERATOR_TOL, COUNTEREXAMPLE_CAP);
        let mut summed = Tally::new(OPERATOR_TOL, COUNTEREXAMPLE_CAP);
        for (fi, f) in family.iter().enumerate() {
            let batch = &sums[s * family.len() + fi];
            for (&(m, mp, axis), (lhs, rhs)) in keys.iter().zip(batch) {
                local.record(Value::Matrix(*lhs), Value::Matrix(*rhs), || {
                    Params::new()
                        .text("function", f.name())
                        .int("m", m)
                        .int("m_prime", mp)
                        .text("axis", axis.as_str())
                });
            }
            for (axis, (lhs, rhs)) in Axis::BOTH.into_iter().zip(&batch[keys.len()..]) {
                summed.record(Value::Matrix(*lhs), Value::Matrix(*rhs), || {
                    Params::new().text("function", f.name()).text("axis", axis.as_str())
                });
            }
        }
        let params = coin.params().int("n", n).int("n_prime", n_prime);
        reports.push(local.finish("thm3_local", params.clone(), OPERATOR_TOL, false));
        reports.push(summed.finish("thm3_summed", params, OPERATOR_TOL, false));
    }
    Ok(reports)
}

/// Tanaka-type formula for every `(n, n′)` with `n, n′ ≤ max_n`, every valid
/// `(m, m′)`, both axes: `tanaka_corrected` (pass/fail) and `tanaka_literal`
/// (report-only) per length pair.
pub fn sweep_tanaka(coin: &LabeledCoin, max_n: usize) -> Result<Vec<IdentityReport>> {
    check_pair_guard(max_n, max_n)?;
    let lengths = length_pairs(max_n);
    let spaces = pair_spaces(&coin.coin, &lengths)?;
    let sums: Vec<_> = spaces.par_iter().map(tanaka_batch).collect();

    let mut reports = Vec::new();
    for ((n, n_prime), batch) in lengths.into_iter().zip(sums) {
        let keys = local_keys(n, n_prime);
        let mut corrected = Tally::new(OPERATOR_TOL, COUNTEREXAMPLE_CAP);
        let mut literal = Tally::new(COUNTEREXAMPLE_THRESHOLD, COUNTEREXAMPLE_CAP);
        for (&(m, mp, axis), pair) in keys.iter().zip(batch.chunks(2)) {
            let at = || Params::new().int("m", m).int("m_prime", mp).text("axis", axis.as_str());
            let rhs = pair[0].1;
            corrected.record(Value::Matrix(pair[0].0), Value::Matrix(rhs), at);
            literal.record(Value::Matrix(pair[1].0), Value::Matrix(rhs), at);
        }
        let params = coin.params().int("n", n).int("n_prime", n_prime);
        reports.push(corrected.finish("tanaka_corrected", params.clone(), OPERATOR_TOL, false));
        reports.push(literal.finish("tanaka_literal", params, OPERATOR_TOL, true));
    }
    Ok(reports)
}

/// Momentum-space expansion for `n ≤ max_n` on the 5×5 grid [`COR5_GRID`]²:
/// `cor5_tensor` (pass/fail) and `cor5_literal` (report-only) per `n`.
pub fn sweep_cor5(coin: &LabeledCoin, max_n: usize) -> Result<Vec<IdentityReport>> {
    check_pair_guard(max_n, max_n)?;
    let base = coin.params();
    let points: Vec<(f64, f64)> = COR5_GRID
        .iter()
        .flat_map(|&xi| COR5_GRID.iter().map(move |&eta| (xi, eta)))
        .collect();
    let per_n: Vec<[IdentityReport; 2]> = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let space = PairSpace::new(&coin.coin, n, n)?;
            let instances: Vec<[IdentityReport; 2]> = points
                .par_iter()
                .map(|&(xi, eta)| {
                    [Cor5Variant::Tensor, Cor5Variant::Literal]
                        .map(|variant| cor5_report(&space, &coin.coin, xi, eta, variant, &Params::new()))
                })
                .collect();
            let mut tensor = Tally::new(OPERATOR_TOL, COUNTEREXAMPLE_CAP);
            let mut literal = Tally::new(COUNTEREXAMPLE_THRESHOLD, COUNTEREXAMPLE_CAP);
            for [t, l] in instances {
                let at = |r: &IdentityReport| {
                    let mut p = Params::new();
                    for key in ["xi", "eta"] {
                        if let Some(v) = r.params.get(key) {
                            p = p.with(key, v.clone());
                        }
                    }
                    p
                };
                let (pt, pl) = (at(&t), at(&l));
                tensor.record(t.lhs, t.rhs, || pt);
                literal.record(l.lhs, l.rhs, || pl);
            }
            let params = base.clone().int("n", n);
            Ok([
                tensor.finish("cor5_tensor", params.clone(), OPERATOR_TOL, false),
                literal.finish("cor5_literal", params, OPERATOR_TOL, true),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

/// Fourier-side checks for `n ≤ max_n` from the initial state seeded by
/// `state_seed`: `operator_decomposition`, `lemma1` (one step in momentum
/// space, grid `2n+2`) and `evolution_fourier` (position law against the
/// inverted momentum-space evolution).
pub fn sweep_lemma1(coin: &LabeledCoin, max_n: usize, state_seed: u64) -> Result<Vec<IdentityReport>> {
    let base = coin.params().int("max_n", max_n).int("state_seed", state_seed);
    let phi = Qubit4::random(state_seed);
    let ops = build_walk_operators(&coin.coin);

    let decomposition = frobenius_distance(&ops.sum(), &coin.coin.tensor_square())?;
    let mut tally = Tally::new(DECOMPOSITION_TOL, COUNTEREXAMPLE_CAP);
    tally.record_residual(decomposition, Params::new);
    let mut reports = vec![tally.finish("operator_decomposition", coin.params(), DECOMPOSITION_TOL, false)];

    let states: Vec<_> = std::iter::successors(Some(init_state(&phi)), |s| Some(step(s, &ops)))
        .take(max_n + 1)
        .collect();

    let lemma: Vec<f64> = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let size = default_grid_size(n);
            let before = transform(&states[n - 1], size)?;
            let after = transform(&states[n], size)?;
            Ok(lemma_residual(&before, &after, &coin.coin))
        })
        .collect::<Result<_>>()?;
    let mut tally = Tally::new(SCALAR_TOL, COUNTEREXAMPLE_CAP);
    for (n, residual) in (1..=max_n).zip(lemma) {
        tally.record_residual(residual, || Params::new().int("n", n).int("grid", default_grid_size(n)));
    }
    reports.push(tally.finish("lemma1", base.clone(), SCALAR_TOL, false));

    let evolution: Vec<f64> = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let size = default_grid_size(n);
            let grid = evolve_fourier(&transform(&states[0], size)?, &coin.coin, n);
            let from_fourier = distribution(&invert(&grid)?);
            Ok(distribution(&states[n]).max_abs_diff(&from_fourier))
        })
        .collect::<Result<_>>()?;
    let mut tally = Tally::new(OPERATOR_TOL, COUNTEREXAMPLE_CAP);
    for (n, residual) in evolution.into_iter().enumerate() {
        tally.record_residual(residual, || Params::new().int("n", n));
    }
    reports.push(tally.finish("evolution_fourier", base, OPERATOR_TOL, false));
    Ok(reports)
}

/// Path-sum table checks for `n ≤ max_n`: `xi_oracle` (recursion against
/// brute-force enumeration) and `evolution_xi` (path-sum law against the
/// position walk).
pub fn sweep_xi_oracle(coin: &LabeledCoin, max_n: usize, state_seed: u64) -> Result<Vec<IdentityReport>> {
    let base = coin.params().int("max_n", max_n).int("state_seed", state_seed);
    let phi = Qubit4::random(state_seed);
    let ops = build_walk_operators(&coin.coin);
    let states: Vec<_> = std::iter::successors(Some(init_state(&phi)), |s| Some(step(s, &ops)))
        .take(max_n + 1)
        .collect();
    let results: Vec<(f64, f64)> = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let recursive = xi_recursive(&coin.coin, n)?;
            let brute = xi_bruteforce(&coin.coin, n)?;
            let law = prob_from_xi(&recursive, &phi);
            Ok((
                recursive.max_abs_diff(&brute),
                law.max_abs_diff(&distribution(&states[n])),
            ))
        })
        .collect::<Result<_>>()?;
    let mut oracle = Tally::new(SCALAR_TOL, COUNTEREXAMPLE_CAP);
    let mut law = Tally::new(XI_LAW_TOL, COUNTEREXAMPLE_CAP);
    for (n, (table, prob)) in results.into_iter().enumerate() {
        oracle.record_residual(table, || Params::new().int("n", n));
        law.record_residual(prob, || Params::new().int("n", n));
    }
    Ok(vec![
        oracle.finish("xi_oracle", base.clone(), SCALAR_TOL, false),
        law.finish("evolution_xi", base, XI_LAW_TOL, false),
    ])
}

/// The weights swept by the classical suite: uniform and `(0.4, 0.3, 0.2, 0.1)`.
pub fn classical_weight_sets() -> [ClassicalWeights; 2] {
    [
        ClassicalWeights::uniform(),
        ClassicalWeights {
            p: 0.4,
            q: 0.3,
            r: 0.2,
            s: 0.1,
        },
    ]
}

/// Classical reduction over the registry and all `n, n′ ≤ max_n`, one
/// `classical_reduction` report per weight set.
pub fn sweep_classical(max_n: usize) -> Result<Vec<IdentityReport>> {
    check_pair_guard(max_n, max_n)?;
    let family = sorted_registry();
    let lengths = length_pairs(max_n);
    classical_weight_sets()
        .iter()
        .map(|weights| {
            let tasks: Vec<(usize, usize, usize)> = (0..family.len())
                .flat_map(|fi| lengths.iter().map(move |&(n, np)| (fi, n, np)))
                .collect();
            let instances: Vec<IdentityReport> = tasks
                .par_iter()
                .map(|&(fi, n, np)| check_classical_reduction(weights, &family[fi], n, np))
                .collect::<Result<_>>()?;
            let mut tally = Tally::new(SCALAR_TOL, COUNTEREXAMPLE_CAP);
            for r in instances {
                tally.record_report(r);
            }
            let params = Params::new()
                .int("max_n", max_n)
                .real("p", weights.p)
                .real("q", weights.q)
                .real("r", weights.r)
                .real("s", weights.s);
            Ok(tally.finish("classical_reduction", params, SCALAR_TOL, false))
        })
        .collect()
}

/// The conjectured two-index formula over the registry, all path pairs of
/// lengths `(n, n′)`, and all `1 ≤ m < n`, `1 ≤ m′ < n′`. Report-only; the
/// counterexamples are the instances with residual above
/// [`COUNTEREXAMPLE_THRESHOLD`], in parameter order, at most
/// [`COUNTEREXAMPLE_CAP`] of them.
pub fn sweep_conjecture6(n: usize, n_prime: usize) -> Result<IdentityReport> {
    if n > CONJECTURE6_MAX || n_prime > CONJECTURE6_MAX {
        return Err(Error::GuardExceeded {
            what: format!("conjecture sweep with n = {n}, n' = {n_prime}"),
            limit: CONJECTURE6_MAX.to_string(),
        });
    }
    let firsts = all_paths(n)?;
    let seconds = all_paths(n_prime)?;
    let family = sorted_registry();
    let tallies: Vec<Tally> = family
        .par_iter()
        .map(|f| {
            let mut tally = Tally::new(COUNTEREXAMPLE_THRESHOLD, COUNTEREXAMPLE_CAP);
            for a in &firsts {
                for b in &seconds {
                    for m in 1..n {
                        for mp in 1..n_prime {
                            let (lhs, rhs) = conjecture6_terms(f, a, b, m, mp);
                            tally.record(scalar(lhs), scalar(rhs), || {
                                Params::new()
                                    .text("function", f.name())
                                    .int("k", a.index())
                                    .int("k_prime", b.index())
                                    .int("m", m)
                                    .int("m_prime", mp)
                            });
                        }
                    }
                }
            }
            tally
        })
        .collect();
    let tally = tallies
        .into_iter()
        .reduce(Tally::merge)
        .unwrap_or_else(|| Tally::new(COUNTEREXAMPLE_THRESHOLD, COUNTEREXAMPLE_CAP));
    let flagged = tally.flagged();
    let params = Params::new()
        .int("n", n)
        .int("n_prime", n_prime)
        .int("counterexample_count", flagged);
    Ok(tally.finish("conjecture6", params, SCALAR_TOL, true))
}

/// Runs one suite at its default range, or with `max_n` overriding the
/// largest length.
pub fn run_suite(
    suite: Suite,
    coin: &LabeledCoin,
    max_n: Option<usize>,
    state_seed: u64,
) -> Result<Vec<IdentityReport>> {
    let n = max_n.unwrap_or_else(|| suite.default_max_n());
    match suite {
        Suite::Prop2 => sweep_prop2(n),
        Suite::Thm3 => sweep_thm3(coin, n),
        Suite::Tanaka => sweep_tanaka(coin, n),
        Suite::Cor5 => sweep_cor5(coin, n),
        Suite::Lemma1 => sweep_lemma1(coin, n, state_seed),
        Suite::XiOracle => sweep_xi_oracle(coin, n, state_seed),
        Suite::Classical => sweep_classical(n),
    }
}

/// Runs suites in the given order and concatenates their reports.
pub fn run_suites(
    suites: &[Suite],
    coin: &LabeledCoin,
    max_n: Option<usize>,
    state_seed: u64,
) -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();
    for &suite in suites {
        reports.extend(run_suite(suite, coin, max_n, state_seed)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{coin_hadamard, coin_random};
    use crate::ito::checks::{check_tanaka, check_thm3};
    use crate::ito::{suite_passed, Verdict};
    use crate::paths::PathPair;

    fn hadamard() -> LabeledCoin {
        LabeledCoin::new("hadamard", coin_hadamard())
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert_eq!(Suite::parse_selection("all").unwrap().len(), 7);
        assert!(Suite::parse_selection("thm4").is_err());
    }

    #[test]
    fn batches_match_single_checks() {
        let coin = coin_random(5);
        let space = PairSpace::new(&coin, 3, 2).unwrap();
        let f = crate::ito::lookup("xy").unwrap();
        let batch = thm3_batch(&space, &f);
        let keys = local_keys(3, 2);
        for (&(m, mp, axis), (lhs, rhs)) in keys.iter().zip(&batch) {
            let single = check_thm3(&f, &coin, 3, 2, m, mp, axis, false).unwrap();
            assert_eq!(single.lhs, Value::Matrix(*lhs));
            assert_eq!(single.rhs, Value::Matrix(*rhs));
        }
        let tanaka = tanaka_batch(&space);
        for (&(m, mp, axis), pair) in keys.iter().zip(tanaka.chunks(2)) {
            let corrected = check_tanaka(&coin, 3, 2, m, mp, axis, false).unwrap();
            let literal = check_tanaka(&coin, 3, 2, m, mp, axis, true).unwrap();
            assert!(corrected.lhs.distance(&Value::Matrix(pair[0].0)) < 1e-15);
            assert!(literal.lhs.distance(&Value::Matrix(pair[1].0)) < 1e-15);
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let coin = hadamard();
        assert!(suite_passed(&sweep_prop2(3).unwrap()));
        assert!(suite_passed(&sweep_thm3(&coin, 2).unwrap()));
        assert!(suite_passed(&sweep_tanaka(&coin, 3).unwrap()));
        assert!(suite_passed(&sweep_cor5(&coin, 2).unwrap()));
        assert!(suite_passed(&sweep_lemma1(&coin, 4, 1).unwrap()));
        assert!(suite_passed(&sweep_xi_oracle(&coin, 3, 1).unwrap()));
        assert!(suite_passed(&sweep_classical(2).unwrap()));
    }

    #[test]
    fn literal_reports_never_fail() {
        let coin = LabeledCoin::new("seed:3", coin_random(3));
        let reports = sweep_tanaka(&coin, 2).unwrap();
        let literal: Vec<_> = reports.iter().filter(|r| r.check_name == "tanaka_literal").collect();
        assert_eq!(literal.len(), 9);
        assert!(literal.iter().all(|r| r.verdict == Verdict::ReportOnly));
        // n = n' = 1: the lone instance has |w(1)| = 1 everywhere on the left.
        assert!(literal.iter().any(|r| !r.counterexamples.is_empty()));
    }

    #[test]
    fn conjecture6_sweep_is_deterministic_and_sorted() {
        let a = sweep_conjecture6(3, 3).unwrap();
        let b = sweep_conjecture6(3, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.verdict, Verdict::ReportOnly);
        let names: Vec<String> = a
            .counterexamples
            .iter()
            .map(|c| match c.params.get("function") {
                Some(crate::ito::report::Param::Text(s)) => s.clone(),
                _ => panic!("missing function"),
            })
            .collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(sweep_conjecture6(9, 2).is_err());
    }

    #[test]
    fn conjecture6_sweep_agrees_with_single_checks() {
        let family = sorted_registry();
        let report = sweep_conjecture6(2, 3).unwrap();
        let mut count = 0;
        for f in &family {
            for k in 0..4 {
                for kp in 0..8 {
                    let pair = PathPair::from_indices(2, k, 3, kp).unwrap();
                    for mp in 1..3 {
                        let r = crate::ito::check_conjecture6(f, &pair, 1, mp).unwrap();
                        count += usize::from(r.residual > COUNTEREXAMPLE_THRESHOLD);
                    }
                }
            }
        }
        assert_eq!(report.counterexamples.len(), count);
    }
}
