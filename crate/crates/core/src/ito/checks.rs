use crate::coin::{build_walk_operators, Coin};
use crate::error::{Error, Result};
use crate::fourier::build_u_kxi;
use crate::linalg::{kron2, mat_power, CMat, Dim, C64};
use crate::paths::{check_pair_guard, Path1D, PathPair, WeightedPaths};

use super::registry::LatticeFunction;
use super::report::{IdentityReport, Params, Value};
use super::{indicator_zero, shift, sign0, Axis, OPERATOR_TOL, SCALAR_TOL};

/// Both sides of one discrete Itô step:
/// `lhs = f(next) − f(w)` and `rhs = first_difference + second_difference`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct ItoTerms {
    pub lhs: C64,
    pub first_difference: C64,
    pub second_difference: C64,
}

impl ItoTerms {
    #[inline]
    pub fn rhs(&self) -> C64 {
        self.first_difference + self.second_difference
    }

    fn zero() -> Self {
        let z = C64::new(0.0, 0.0);
        ItoTerms {
            lhs: z,
            first_difference: z,
            second_difference: z,
        }
    }

    fn accumulate(&mut self, other: ItoTerms) {
        self.lhs += other.lhs;
        self.first_difference += other.first_difference;
        self.second_difference += other.second_difference;
    }
}

pub(crate) fn validate_local(n: usize, n_prime: usize, m: usize, m_prime: usize) -> Result<()> {
    if m >= n || m_prime >= n_prime {
        return Err(Error::IndexOutOfRange(format!(
            "need 0 <= m < n and 0 <= m' < n', got m = {m}, n = {n}, m' = {m_prime}, n' = {n_prime}"
        )));
    }
    Ok(())
}

/// One step of the discrete Itô formula at `(m, m′)` along `axis`.
#[inline]
pub(crate) fn local_terms(
    f: &LatticeFunction,
    first: &Path1D,
    second: &Path1D,
    m: usize,
    m_prime: usize,
    axis: Axis,
) -> ItoTerms {
    let w = (first.position(m), second.position(m_prime));
    let (next, delta) = match axis {
        Axis::First => ((first.position(m + 1), w.1), first.position(m + 1) - w.0),
        Axis::Second => ((w.0, second.position(m_prime + 1)), second.position(m_prime + 1) - w.1),
    };
    let e = axis.unit();
    let f0 = f.at(w);
    let fp = f.at(shift(w, e, 1));
    let fm = f.at(shift(w, e, -1));
    ItoTerms {
        lhs: f.at(next) - f0,
        first_difference: 0.5 * (fp - fm) * delta as f64,
        second_difference: 0.5 * (fp - 2.0 * f0 + fm),
    }
}

/// Telescoped form: `f(w(n,n′)) − f(w(0,n′))` against the `m`-sum at `m′ = n′`
/// (axis first), or `f(w(n,n′)) − f(w(n,0))` against the `m′`-sum at `m = n`.
pub(crate) fn telescoped_terms(f: &LatticeFunction, first: &Path1D, second: &Path1D, axis: Axis) -> ItoTerms {
    let (n, n_prime) = (first.len(), second.len());
    let mut total = ItoTerms::zero();
    match axis {
        Axis::First => {
            for m in 0..n {
                total.accumulate(local_terms(f, first, second, m, n_prime, axis));
            }
        }
        Axis::Second => {
            for m_prime in 0..n_prime {
                total.accumulate(local_terms(f, first, second, n, m_prime, axis));
            }
        }
    }
    let end = (first.endpoint(), second.endpoint());
    let start = match axis {
        Axis::First => (first.position(0), end.1),
        Axis::Second => (end.0, second.position(0)),
    };
    total.lhs = f.at(end) - f.at(start);
    total
}

fn pair_params(f: &LatticeFunction, pair: &PathPair) -> Params {
    Params::new()
        .text("function", f.name())
        .int("n", pair.first.len())
        .int("n_prime", pair.second.len())
        .int("k", pair.first.index())
        .int("k_prime", pair.second.index())
}

/// Single-step discrete Itô formula on one path pair.
pub fn check_prop2_local(
    f: &LatticeFunction,
    pair: &PathPair,
    m: usize,
    m_prime: usize,
    axis: Axis,
) -> Result<IdentityReport> {
    validate_local(pair.first.len(), pair.second.len(), m, m_prime)?;
    let t = local_terms(f, &pair.first, &pair.second, m, m_prime, axis);
    let params = pair_params(f, pair)
        .int("m", m)
        .int("m_prime", m_prime)
        .text("axis", axis.as_str());
    Ok(IdentityReport::new(
        "prop2_local",
        params,
        Value::Scalar(t.lhs),
        Value::Scalar(t.rhs()),
        SCALAR_TOL,
        false,
    ))
}

/// Summed (telescoped) discrete Itô formula on one path pair.
pub fn check_prop2_telescoped(f: &LatticeFunction, pair: &PathPair, axis: Axis) -> IdentityReport {
    let t = telescoped_terms(f, &pair.first, &pair.second, axis);
    let params = pair_params(f, pair).text("axis", axis.as_str());
    IdentityReport::new(
        "prop2_telescoped",
        params,
        Value::Scalar(t.lhs),
        Value::Scalar(t.rhs()),
        SCALAR_TOL,
        false,
    )
}

/// All path pairs of lengths `(n, n′)` with their 1D weights for one coin.
#[derive(Clone, Debug)]
pub(crate) struct PairSpace {
    pub firsts: WeightedPaths,
    pub seconds: WeightedPaths,
}

impl PairSpace {
    pub fn new(coin: &Coin, n: usize, n_prime: usize) -> Result<Self> {
        check_pair_guard(n, n_prime)?;
        let ops = build_walk_operators(coin);
        Ok(PairSpace {
            firsts: WeightedPaths::new(&ops, n)?,
            seconds: WeightedPaths::new(&ops, n_prime)?,
        })
    }

    pub fn n(&self) -> usize {
        self.firsts.paths[0].len()
    }

    pub fn n_prime(&self) -> usize {
        self.seconds.paths[0].len()
    }

    /// `(Σ a(k,k′)·P^{(k,k′)}, Σ b(k,k′)·P^{(k,k′)})` in index order.
    pub fn accumulate2<F>(&self, coefficients: F) -> (CMat, CMat)
    where
        F: Fn(&Path1D, &Path1D) -> (C64, C64),
    {
        let mut left = CMat::zeros(Dim::Four);
        let mut right = CMat::zeros(Dim::Four);
        for (p1, w1) in self.firsts.paths.iter().zip(&self.firsts.weights) {
            for (p2, w2) in self.seconds.paths.iter().zip(&self.seconds.weights) {
                let (a, b) = coefficients(p1, p2);
                if a == C64::new(0.0, 0.0) && b == C64::new(0.0, 0.0) {
                    continue;
                }
                let w = kron2(w1, w2);
                left.add_scaled(a, &w);
                right.add_scaled(b, &w);
            }
        }
        (left, right)
    }

    /// Like [`accumulate2`](Self::accumulate2) for `count` coefficient pairs at
    /// once, so each `P^{(k,k′)}` is formed a single time.
    pub fn accumulate_many<F>(&self, count: usize, coefficients: F) -> Vec<(CMat, CMat)>
    where
        F: Fn(&Path1D, &Path1D, &mut [(C64, C64)]),
    {
        let zero = C64::new(0.0, 0.0);
        let mut sums = vec![(CMat::zeros(Dim::Four), CMat::zeros(Dim::Four)); count];
        let mut buf = vec![(zero, zero); count];
        for (p1, w1) in self.firsts.paths.iter().zip(&self.firsts.weights) {
            for (p2, w2) in self.seconds.paths.iter().zip(&self.seconds.weights) {
                buf.iter_mut().for_each(|c| *c = (zero, zero));
                coefficients(p1, p2, &mut buf);
                let w = kron2(w1, w2);
                for ((left, right), &(a, b)) in sums.iter_mut().zip(&buf) {
                    if a != zero {
                        left.add_scaled(a, &w);
                    }
                    if b != zero {
                        right.add_scaled(b, &w);
                    }
                }
            }
        }
        sums
    }
}

/// Valid local indices `(m, m′, axis)` for lengths `(n, n′)`, in sweep order.
pub(crate) fn local_keys(n: usize, n_prime: usize) -> Vec<(usize, usize, Axis)> {
    (0..n)
        .flat_map(|m| (0..n_prime).flat_map(move |mp| Axis::BOTH.map(|axis| (m, mp, axis))))
        .collect()
}

/// Operator sums of every local instance (keyed as [`local_keys`]) followed by
/// the two telescoped forms, in one pass over the pairs.
pub(crate) fn thm3_batch(space: &PairSpace, f: &LatticeFunction) -> Vec<(CMat, CMat)> {
    let keys = local_keys(space.n(), space.n_prime());
    space.accumulate_many(keys.len() + 2, |a, b, out| {
        for (slot, &(m, mp, axis)) in out.iter_mut().zip(&keys) {
            let t = local_terms(f, a, b, m, mp, axis);
            *slot = (t.lhs, t.rhs());
        }
        for (slot, axis) in out[keys.len()..].iter_mut().zip(Axis::BOTH) {
            let t = telescoped_terms(f, a, b, axis);
            *slot = (t.lhs, t.rhs());
        }
    })
}

/// Per local key: `(corrected lhs, rhs)` then `(literal lhs, unused)`.
pub(crate) fn tanaka_batch(space: &PairSpace) -> Vec<(CMat, CMat)> {
    let keys = local_keys(space.n(), space.n_prime());
    space.accumulate_many(2 * keys.len(), |a, b, out| {
        for (slots, &(m, mp, axis)) in out.chunks_mut(2).zip(&keys) {
            let (current, next) = match axis {
                Axis::First => (a.position(m), a.position(m + 1)),
                Axis::Second => (b.position(mp), b.position(mp + 1)),
            };
            let rhs = sign0(current) * (next - current) as f64 + indicator_zero(current);
            slots[0] = (C64::new((next.abs() - current.abs()) as f64, 0.0), C64::new(rhs, 0.0));
            slots[1] = (C64::new(next.abs() as f64, 0.0), C64::new(0.0, 0.0));
        }
    })
}

pub(crate) fn thm3_report(
    space: &PairSpace,
    f: &LatticeFunction,
    m: usize,
    m_prime: usize,
    axis: Axis,
    summed: bool,
    base: &Params,
) -> Result<IdentityReport> {
    let (n, n_prime) = (space.n(), space.n_prime());
    let mut params = base.clone().merged(
        &Params::new()
            .text("function", f.name())
            .int("n", n)
            .int("n_prime", n_prime)
            .text("axis", axis.as_str()),
    );
    let (lhs, rhs) = if summed {
        space.accumulate2(|a, b| {
            let t = telescoped_terms(f, a, b, axis);
            (t.lhs, t.rhs())
        })
    } else {
        validate_local(n, n_prime, m, m_prime)?;
        params = params.int("m", m).int("m_prime", m_prime);
        space.accumulate2(|a, b| {
            let t = local_terms(f, a, b, m, m_prime, axis);
            (t.lhs, t.rhs())
        })
    };
    let name = if summed { "thm3_summed" } else { "thm3_local" };
    Ok(IdentityReport::new(
        name,
        params,
        Value::Matrix(lhs),
        Value::Matrix(rhs),
        OPERATOR_TOL,
        false,
    ))
}

fn coin_params(coin: &Coin) -> Params {
    Params::new().coin("coin", coin.to_json())
}

/// Operator-weighted discrete Itô formula: every term of the scalar identity is
/// multiplied by `P^{(k,k′)}` and summed over all `2^{n+n′}` pairs. With
/// `summed = true` the telescoped form is used and `m, m′` are ignored.
#[allow(clippy::too_many_arguments)]
pub fn check_thm3(
    f: &LatticeFunction,
    coin: &Coin,
    n: usize,
    n_prime: usize,
    m: usize,
    m_prime: usize,
    axis: Axis,
    summed: bool,
) -> Result<IdentityReport> {
    let space = PairSpace::new(coin, n, n_prime)?;
    thm3_report(&space, f, m, m_prime, axis, summed, &coin_params(coin))
}

pub(crate) fn tanaka_report(
    space: &PairSpace,
    m: usize,
    m_prime: usize,
    axis: Axis,
    literal: bool,
    base: &Params,
) -> Result<IdentityReport> {
    let (n, n_prime) = (space.n(), space.n_prime());
    validate_local(n, n_prime, m, m_prime)?;
    let (lhs, rhs) = space.accumulate2(|a, b| {
        let (current, next) = match axis {
            Axis::First => (a.position(m), a.position(m + 1)),
            Axis::Second => (b.position(m_prime), b.position(m_prime + 1)),
        };
        let delta = (next - current) as f64;
        let left = if literal {
            next.abs() as f64
        } else {
            (next.abs() - current.abs()) as f64
        };
        let right = sign0(current) * delta + indicator_zero(current);
        (C64::new(left, 0.0), C64::new(right, 0.0))
    });
    let params = base.clone().merged(
        &Params::new()
            .int("n", n)
            .int("n_prime", n_prime)
            .int("m", m)
            .int("m_prime", m_prime)
            .text("axis", axis.as_str()),
    );
    let name = if literal { "tanaka_literal" } else { "tanaka_corrected" };
    Ok(IdentityReport::new(
        name,
        params,
        Value::Matrix(lhs),
        Value::Matrix(rhs),
        OPERATOR_TOL,
        literal,
    ))
}

/// Tanaka-type formula with `f = |x|` (axis first) or `|y|` (axis second).
///
/// The pass/fail form uses the increment `|w(m+1)| − |w(m)|`; `literal = true`
/// evaluates `|w(m+1)|` alone on the left and is report-only.
pub fn check_tanaka(
    coin: &Coin,
    n: usize,
    n_prime: usize,
    m: usize,
    m_prime: usize,
    axis: Axis,
    literal: bool,
) -> Result<IdentityReport> {
    let space = PairSpace::new(coin, n, n_prime)?;
    tanaka_report(&space, m, m_prime, axis, literal, &coin_params(coin))
}

/// Which form of the momentum-space expansion to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cor5Variant {
    /// `U(ξ,η)ⁿ` against `(U⊗²)ⁿ` plus the sin/cos-weighted path sums as
    /// displayed. Report-only.
    Literal,
    /// `Σ e^{iξw₁(n)+iηw₂(n)} P^{(k,k′)} = (D(ξ)U)ⁿ ⊗ (D(η)U)ⁿ`. Pass/fail.
    Tensor,
}

impl Cor5Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Cor5Variant::Literal => "literal",
            Cor5Variant::Tensor => "tensor",
        }
    }
}

/// `D(θ)·U` with `D(θ) = Diag(e^{−iθ}, e^{iθ})`.
fn phased_coin(coin: &Coin, theta: f64) -> CMat {
    let d = CMat::diag(&[C64::from_polar(1.0, -theta), C64::from_polar(1.0, theta)]).expect("2x2 diagonal");
    d * coin.matrix()
}

pub(crate) fn cor5_report(
    space: &PairSpace,
    coin: &Coin,
    xi: f64,
    eta: f64,
    variant: Cor5Variant,
    base: &Params,
) -> IdentityReport {
    let n = space.n();
    let params = base.clone().merged(
        &Params::new()
            .int("n", n)
            .real("xi", xi)
            .real("eta", eta)
            .text("variant", variant.as_str()),
    );
    match variant {
        Cor5Variant::Tensor => {
            let (lhs, _) = space.accumulate2(|a, b| {
                let phase = C64::from_polar(1.0, xi * a.endpoint() as f64 + eta * b.endpoint() as f64);
                (phase, C64::new(0.0, 0.0))
            });
            let rhs = kron2(
                &mat_power(&phased_coin(coin, xi), n as u32),
                &mat_power(&phased_coin(coin, eta), n as u32),
            );
            IdentityReport::new(
                "cor5_tensor",
                params,
                Value::Matrix(lhs),
                Value::Matrix(rhs),
                OPERATOR_TOL,
                false,
            )
        }
        Cor5Variant::Literal => {
            let lhs = mat_power(&build_u_kxi(coin, xi, eta), n as u32);
            // Phase as printed, e^{iξ·w(m′,·) + iη·w(·,m)}: ξ on the first path at
            // index m′, η on the second path at index m.
            let (first_order, second_order) = space.accumulate2(|a, b| {
                let mut s1 = C64::new(0.0, 0.0);
                let mut s2 = C64::new(0.0, 0.0);
                for m in 0..n {
                    let delta = (a.position(m + 1) - a.position(m)) as f64;
                    for m_prime in 0..n {
                        let phase = C64::from_polar(1.0, xi * a.position(m_prime) as f64 + eta * b.position(m) as f64);
                        s1 += phase * delta;
                        s2 += phase;
                    }
                }
                (s1, s2)
            });
            let theta = xi + eta;
            let mut rhs = mat_power(&coin.tensor_square(), n as u32);
            rhs.add_scaled(C64::new(0.0, theta.sin()), &first_order);
            rhs.add_scaled(C64::new(theta.cos() - 1.0, 0.0), &second_order);
            IdentityReport::new(
                "cor5_literal",
                params,
                Value::Matrix(lhs),
                Value::Matrix(rhs),
                OPERATOR_TOL,
                true,
            )
        }
    }
}

/// Momentum-space expansion of the path sum; both path lengths equal `n`.
pub fn check_cor5(coin: &Coin, n: usize, xi: f64, eta: f64, variant: Cor5Variant) -> Result<IdentityReport> {
    let space = PairSpace::new(coin, n, n)?;
    Ok(cor5_report(&space, coin, xi, eta, variant, &coin_params(coin)))
}

/// The conjectured two-index formula, evaluated with unit steps along the
/// coordinate whose index is shifted in each term. Report-only.
pub fn check_conjecture6(f: &LatticeFunction, pair: &PathPair, m: usize, m_prime: usize) -> Result<IdentityReport> {
    let (n, n_prime) = (pair.first.len(), pair.second.len());
    if m < 1 || m >= n || m_prime < 1 || m_prime >= n_prime {
        return Err(Error::IndexOutOfRange(format!(
            "need 1 <= m < n and 1 <= m' < n', got m = {m}, n = {n}, m' = {m_prime}, n' = {n_prime}"
        )));
    }
    let t = conjecture6_terms(f, &pair.first, &pair.second, m, m_prime);
    let params = pair_params(f, pair).int("m", m).int("m_prime", m_prime);
    Ok(IdentityReport::new(
        "conjecture6",
        params,
        Value::Scalar(t.0),
        Value::Scalar(t.1),
        SCALAR_TOL,
        true,
    ))
}

/// `(lhs, rhs)` of the conjectured formula; indices must already be valid.
pub(crate) fn conjecture6_terms(
    f: &LatticeFunction,
    first: &Path1D,
    second: &Path1D,
    m: usize,
    m_prime: usize,
) -> (C64, C64) {
    let (ex, ey) = (Axis::First.unit(), Axis::Second.unit());
    let w = (first.position(m), second.position(m_prime));
    let up = (first.position(m), second.position(m_prime + 1));
    let down = (first.position(m), second.position(m_prime - 1));
    let ahead = (first.position(m + 1), second.position(m_prime));
    let behind = (first.position(m - 1), second.position(m_prime));

    let lhs = f.at((first.position(m + 1), second.position(m_prime + 1))) - f.at(w);

    let f_up = f.at(shift(up, ey, 1));
    let f_down = f.at(shift(down, ey, -1));
    let f_ahead = f.at(shift(ahead, ex, 1));
    let f_behind = f.at(shift(behind, ex, -1));
    let d_second = (up.1 - w.1) as f64;
    let d_first = (ahead.0 - w.0) as f64;

    let term1 = 0.5 * (f_up - f_down) * d_second;
    let term2 = 0.5 * (f_ahead - f_behind) * d_first;
    let term3 = 0.5 * (f_up + f_down - 4.0 * f.at(w) + f_ahead - f_behind);
    (lhs, term1 + term2 + term3)
}

pub(crate) fn sigma_in(space: &PairSpace, f: &LatticeFunction) -> CMat {
    space
        .accumulate2(|a, b| (f.eval(a.endpoint(), b.endpoint()), C64::new(0.0, 0.0)))
        .0
}

/// `σ_{n,n′}(f) = Σ_{k,k′} f(w₁(n), w₂(n′)) P^{(k,k′)}`.
pub fn path_integral_sigma(f: &LatticeFunction, coin: &Coin, n: usize, n_prime: usize) -> Result<CMat> {
    let space = PairSpace::new(coin, n, n_prime)?;
    Ok(sigma_in(&space, f))
}
