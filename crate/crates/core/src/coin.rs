//! Coins `U ∈ U(2)` and the shift-coin operators derived from them.
//!
//! A coin is parametrized by `(a, b, Δ)`; the second row is always derived as
//! `c = −Δ·b̄`, `d = Δ·ā`, so the unitarity constraints hold by construction.
//!
//! The chirality basis is `(L, R, D, U)` = rows 1–4 of the 4×4 operators. Note
//! that the x-moves pair the `P₁` factor first (`P₁⊗P₁`, `P₁⊗Q₁`) while the
//! y-moves pair `Q₁` first (`Q₁⊗P₁`, `Q₁⊗Q₁`).
//!
//! # Seeded coins
//!
//! [`coin_random`] draws from a SplitMix64 stream seeded with the given
//! integer. Each uniform deviate is `(next_u64() >> 11) · 2⁻⁵³ ∈ [0, 1)`. Four
//! deviates are consumed in order: `θ = u₁·π/2`, `φ₁ = u₂·2π`, `φ₂ = u₃·2π`,
//! `δ = u₄·2π`, giving `a = cos θ·e^{iφ₁}`, `b = sin θ·e^{iφ₂}`, `Δ = e^{iδ}`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{sci_array, Sci};
use crate::linalg::{kron2, CMat, C64, ONE, ZERO};

/// Input tolerance accepted by [`make_coin`].
pub const COIN_INPUT_TOL: f64 = 1e-9;

/// A 2×2 unitary `[[a, b], [c, d]]` with determinant `Δ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coin {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
    delta: C64,
}

impl Coin {
    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    pub fn d(&self) -> C64 {
        self.d
    }

    pub fn delta(&self) -> C64 {
        self.delta
    }

    pub fn matrix(&self) -> CMat {
        CMat::from_rows2([[self.a, self.b], [self.c, self.d]])
    }

    /// `U⊗U`, the 4×4 one-step coin of the two-dimensional walk.
    pub fn tensor_square(&self) -> CMat {
        let u = self.matrix();
        kron2(&u, &u)
    }

    /// Largest violation of the unitarity constraints on `(a, b, c, d, Δ)`.
    pub fn constraint_violation(&self) -> f64 {
        let Coin { a, b, c, d, delta } = *self;
        [
            (a.norm_sqr() + b.norm_sqr() - 1.0).abs(),
            (c.norm_sqr() + d.norm_sqr() - 1.0).abs(),
            (a * c.conj() + b * d.conj()).norm(),
            (c + delta * b.conj()).norm(),
            (d - delta * a.conj()).norm(),
            (delta.norm() - 1.0).abs(),
            (a * d - b * c - delta).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> CoinJson {
        CoinJson {
            a: sci_array([self.a.re, self.a.im]),
            b: sci_array([self.b.re, self.b.im]),
            delta: sci_array([self.delta.re, self.delta.im]),
        }
    }
}

/// Report serialization of a coin: `{a:[re,im], b:[re,im], delta:[re,im]}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoinJson {
    pub a: [Sci; 2],
    pub b: [Sci; 2],
    pub delta: [Sci; 2],
}

/// Builds a coin from its first row and determinant.
///
/// Inputs within [`COIN_INPUT_TOL`] of the unit constraints are accepted and
/// then projected exactly onto them (`(a, b)` rescaled to unit norm, `Δ` to
/// unit modulus), so the derived coin satisfies every invariant to roundoff.
pub fn make_coin(a: C64, b: C64, delta: C64) -> Result<Coin> {
    if !(a.is_finite() && b.is_finite() && delta.is_finite()) {
        return Err(Error::CoinConstraint("entries must be finite".into()));
    }
    let row_norm = a.norm_sqr() + b.norm_sqr();
    if (row_norm - 1.0).abs() > COIN_INPUT_TOL {
        return Err(Error::CoinConstraint(format!("|a|^2 + |b|^2 = {row_norm}, expected 1")));
    }
    let det_mod = delta.norm();
    if (det_mod - 1.0).abs() > COIN_INPUT_TOL {
        return Err(Error::CoinConstraint(format!("|delta| = {det_mod}, expected 1")));
    }
    let (a, b) = if row_norm == 1.0 {
        (a, b)
    } else {
        let s = row_norm.sqrt();
        (a / s, b / s)
    };
    let delta = if det_mod == 1.0 { delta } else { delta / det_mod };
    Ok(Coin {
        a,
        b,
        c: -delta * b.conj(),
        d: delta * a.conj(),
        delta,
    })
}

pub fn coin_identity() -> Coin {
    make_coin(ONE, ZERO, ONE).expect("identity coin is unitary")
}

/// `a = b = c = 1/√2`, `d = −1/√2`, `Δ = −1`.
pub fn coin_hadamard() -> Coin {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    Coin {
        a: h,
        b: h,
        c: h,
        d: -h,
        delta: C64::new(-1.0, 0.0),
    }
}

/// Deterministic pseudo-random coin; see the module docs for the generator.
pub fn coin_random(seed: u64) -> Coin {
    let mut rng = SplitMix64::new(seed);
    let theta = rng.next_f64() * FRAC_PI_2;
    let phi1 = rng.next_f64() * TAU;
    let phi2 = rng.next_f64() * TAU;
    let delta = rng.next_f64() * TAU;
    let a = C64::from_polar(theta.cos(), phi1);
    let b = C64::from_polar(theta.sin(), phi2);
    let delta = C64::from_polar(1.0, delta);
    Coin {
        a,
        b,
        c: -delta * b.conj(),
        d: delta * a.conj(),
        delta,
    }
}

/// SplitMix64 (Steele, Lea & Flood). Kept in-crate because the exact stream
/// is part of the reproducibility contract for seeded coins and states.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// The 1D factors and the four shift-coin operators of a coin.
#[derive(Clone, Copy, Debug)]
pub struct WalkOperators {
    pub coin: Coin,
    /// `[[a, b], [0, 0]]`
    pub p1: CMat,
    /// `[[0, 0], [c, d]]`
    pub q1: CMat,
    /// `P₍₋₁,₀₎ = P₁⊗P₁`, moves left.
    pub p_left: CMat,
    /// `Q₍₁,₀₎ = P₁⊗Q₁`, moves right.
    pub q_right: CMat,
    /// `R₍₀,₋₁₎ = Q₁⊗P₁`, moves down.
    pub r_down: CMat,
    /// `S₍₀,₁₎ = Q₁⊗Q₁`, moves up.
    pub s_up: CMat,
}

impl WalkOperators {
    pub fn sum(&self) -> CMat {
        self.p_left + self.q_right + self.r_down + self.s_up
    }

    /// The four 4×4 operators in chirality order (L, R, D, U).
    pub fn directional(&self) -> [CMat; 4] {
        [self.p_left, self.q_right, self.r_down, self.s_up]
    }
}

pub fn build_walk_operators(coin: &Coin) -> WalkOperators {
    let p1 = CMat::from_rows2([[coin.a, coin.b], [ZERO, ZERO]]);
    let q1 = CMat::from_rows2([[ZERO, ZERO], [coin.c, coin.d]]);
    WalkOperators {
        coin: *coin,
        p1,
        q1,
        p_left: kron2(&p1, &p1),
        q_right: kron2(&p1, &q1),
        r_down: kron2(&q1, &p1),
        s_up: kron2(&q1, &q1),
    }
}

/// Step probabilities of the classical walk obtained by replacing
/// `P, Q, R, S` with scalars `p, q, r, s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassicalWeights {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
}

impl ClassicalWeights {
    pub fn new(p: f64, q: f64, r: f64, s: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q), ("r", r), ("s", s)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidWeights(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        let total = p + q + r + s;
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!("p + q + r + s = {total}, expected 1")));
        }
        Ok(ClassicalWeights { p, q, r, s })
    }

    pub fn uniform() -> Self {
        ClassicalWeights {
            p: 0.25,
            q: 0.25,
            r: 0.25,
            s: 0.25,
        }
    }
}
