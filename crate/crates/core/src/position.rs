//! Position-space evolution of the walker on Z².
//!
//! Amplitudes live in a dense `(2n+1)²` array indexed by `(x+n, y+n)`. Nothing
//! is pruned: sites outside the light cone or of the wrong parity simply stay
//! exactly zero.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::coin::{SplitMix64, WalkOperators};
use crate::error::{Error, Result};
use crate::format::{fmt_sci, Sci};
use crate::linalg::{CVec, Dim, C64};

/// Accepted deviation of `‖φ‖²` from one for initial states.
pub const QUBIT_NORM_TOL: f64 = 1e-9;

/// Initial chirality state `α|L⟩ + β|R⟩ + γ|D⟩ + λ|U⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Qubit4 {
    amps: [C64; 4],
}

impl Qubit4 {
    pub fn new(alpha: C64, beta: C64, gamma: C64, lambda: C64) -> Result<Self> {
        let amps = [alpha, beta, gamma, lambda];
        if amps.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > QUBIT_NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Qubit4 { amps })
    }

    /// From eight reals `re₀, im₀, …, re₃, im₃`.
    pub fn from_reals(parts: &[f64]) -> Result<Self> {
        if parts.len() != 8 {
            return Err(Error::Config(format!(
                "initial state needs 8 reals (4 re/im pairs), got {}",
                parts.len()
            )));
        }
        let z = |i: usize| C64::new(parts[2 * i], parts[2 * i + 1]);
        Qubit4::new(z(0), z(1), z(2), z(3))
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [C64::new(0.0, 0.0); 4];
        amps[index] = C64::new(1.0, 0.0);
        Qubit4 { amps }
    }

    /// `(1/2, i/2, i/2, −1/2)`, the state used for symmetric Hadamard runs.
    pub fn symmetric() -> Self {
        Qubit4 {
            amps: [
                C64::new(0.5, 0.0),
                C64::new(0.0, 0.5),
                C64::new(0.0, 0.5),
                C64::new(-0.5, 0.0),
            ],
        }
    }

    /// Seeded random state (components uniform in the unit square, then normalized).
    pub fn random(seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let mut amps = [C64::new(0.0, 0.0); 4];
        for z in amps.iter_mut() {
            *z = C64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0);
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        Qubit4 {
            amps: amps.map(|z| z / norm),
        }
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        self.amps
    }

    pub fn to_cvec(&self) -> CVec {
        CVec::new4(self.amps)
    }
}

/// Wavefunction `Ψₙ` on the diamond `|x| + |y| ≤ n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeState {
    time: usize,
    amps: Vec<CVec>,
}

impl LatticeState {
    pub(crate) fn zeros(time: usize) -> Self {
        let side = 2 * time + 1;
        LatticeState {
            time,
            amps: vec![CVec::zeros(Dim::Four); side * side],
        }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Half-width of the storage box; equal to the time.
    pub fn radius(&self) -> i64 {
        self.time as i64
    }

    #[inline]
    fn side(&self) -> usize {
        2 * self.time + 1
    }

    #[inline]
    fn index(&self, x: i64, y: i64) -> Option<usize> {
        let n = self.radius();
        if x.abs() > n || y.abs() > n {
            return None;
        }
        Some((x + n) as usize * self.side() + (y + n) as usize)
    }

    /// `Ψₙ(x, y)`; zero outside the storage box.
    pub fn amplitude(&self, x: i64, y: i64) -> CVec {
        match self.index(x, y) {
            Some(i) => self.amps[i],
            None => CVec::zeros(Dim::Four),
        }
    }

    pub(crate) fn set(&mut self, x: i64, y: i64, v: CVec) {
        let i = self.index(x, y).expect("site inside storage box");
        self.amps[i] = v;
    }

    /// Sites of the diamond `|x| + |y| ≤ n`, lexicographic in `(x, y)`.
    pub fn sites(&self) -> impl Iterator<Item = (i64, i64)> {
        let n = self.radius();
        (-n..=n).flat_map(move |x| {
            let rest = n - x.abs();
            (-rest..=rest).map(move |y| (x, y))
        })
    }

    pub fn total_probability(&self) -> f64 {
        self.amps.iter().map(|v| v.norm_sqr()).sum()
    }

    /// Largest componentwise amplitude difference over the union of both boxes.
    pub fn max_abs_diff(&self, other: &LatticeState) -> f64 {
        let n = self.radius().max(other.radius());
        let mut worst = 0.0f64;
        for x in -n..=n {
            for y in -n..=n {
                worst = worst.max(self.amplitude(x, y).max_abs_diff(&other.amplitude(x, y)));
            }
        }
        worst
    }

    /// Amplitude dump rows `{x, y, re:[4], im:[4]}` over the diamond.
    pub fn amplitude_rows(&self) -> Vec<AmplitudeRow> {
        self.sites()
            .map(|(x, y)| {
                let v = self.amplitude(x, y);
                let e = v.entries();
                AmplitudeRow {
                    x,
                    y,
                    re: [Sci(e[0].re), Sci(e[1].re), Sci(e[2].re), Sci(e[3].re)],
                    im: [Sci(e[0].im), Sci(e[1].im), Sci(e[2].im), Sci(e[3].im)],
                }
            })
            .collect()
    }

    pub fn write_amplitudes_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.amplitude_rows())?;
        writeln!(out)?;
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AmplitudeRow {
    pub x: i64,
    pub y: i64,
    pub re: [Sci; 4],
    pub im: [Sci; 4],
}

pub fn init_state(phi: &Qubit4) -> LatticeState {
    let mut state = LatticeState::zeros(0);
    state.set(0, 0, phi.to_cvec());
    state
}

/// One step of the master equation
/// `Ψₙ₊₁(x,y) = Q Ψₙ(x−1,y) + P Ψₙ(x+1,y) + S Ψₙ(x,y−1) + R Ψₙ(x,y+1)`.
pub fn step(state: &LatticeState, ops: &WalkOperators) -> LatticeState {
    let mut next = LatticeState::zeros(state.time + 1);
    let n1 = next.radius();
    let side = next.side();
    next.amps.par_chunks_mut(side).enumerate().for_each(|(row, column)| {
        let x = row as i64 - n1;
        let reach = n1 - x.abs();
        for y in -reach..=reach {
            let from_left = state.amplitude(x - 1, y);
            let from_right = state.amplitude(x + 1, y);
            let from_below = state.amplitude(x, y - 1);
            let from_above = state.amplitude(x, y + 1);
            column[(y + n1) as usize] = ops.q_right.apply_unchecked(&from_left)
                + ops.p_left.apply_unchecked(&from_right)
                + ops.s_up.apply_unchecked(&from_below)
                + ops.r_down.apply_unchecked(&from_above);
        }
    });
    next
}

pub fn evolve(state: &LatticeState, ops: &WalkOperators, steps: usize) -> LatticeState {
    let mut current = state.clone();
    for _ in 0..steps {
        current = step(&current, ops);
    }
    current
}

/// Position law `P(Xₙ = x, Yₙ = y)`; sites of exactly zero probability are omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    pub time: usize,
    pub probs: BTreeMap<(i64, i64), f64>,
}

impl Distribution {
    pub fn prob(&self, x: i64, y: i64) -> f64 {
        self.probs.get(&(x, y)).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Largest pointwise difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.probs
            .keys()
            .chain(other.probs.keys())
            .map(|&(x, y)| (self.prob(x, y) - other.prob(x, y)).abs())
            .fold(0.0, f64::max)
    }

    pub fn summary(&self) -> MomentSummary {
        let mean_x = moments(self, 1, 0);
        let mean_y = moments(self, 0, 1);
        MomentSummary {
            time: self.time,
            total: Sci(self.total()),
            mean_x: Sci(mean_x),
            mean_y: Sci(mean_y),
            var_x: Sci(moments(self, 2, 0) - mean_x * mean_x),
            var_y: Sci(moments(self, 0, 2) - mean_y * mean_y),
        }
    }

    /// CSV with header `x,y,p`, rows sorted by `(x, y)`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "x,y,p")?;
        for (&(x, y), &p) in &self.probs {
            writeln!(out, "{},{},{}", x, y, fmt_sci(p))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentSummary {
    pub time: usize,
    pub total: Sci,
    pub mean_x: Sci,
    pub mean_y: Sci,
    pub var_x: Sci,
    pub var_y: Sci,
}

pub fn distribution(state: &LatticeState) -> Distribution {
    let probs = state
        .sites()
        .filter_map(|(x, y)| {
            let p = state.amplitude(x, y).norm_sqr();
            (p != 0.0).then_some(((x, y), p))
        })
        .collect();
    Distribution {
        time: state.time,
        probs,
    }
}

/// `Σ x^kx y^ky P(x, y)`.
pub fn moments(dist: &Distribution, kx: u32, ky: u32) -> f64 {
    dist.probs
        .iter()
        .map(|(&(x, y), &p)| (x as f64).powi(kx as i32) * (y as f64).powi(ky as i32) * p)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{build_walk_operators, coin_hadamard, coin_identity, coin_random};

    #[test]
    fn init_state_places_phi_at_origin() {
        let state = init_state(&Qubit4::basis(0));
        assert_eq!(state.time(), 0);
        assert_eq!(state.amplitude(0, 0).get(0), C64::new(1.0, 0.0));
        assert_eq!(distribution(&state).probs.len(), 1);
        assert_eq!(distribution(&state).prob(0, 0), 1.0);
    }

    #[test]
    fn qubit_normalization_is_enforced() {
        let h = C64::new(0.5, 0.0);
        let ih = C64::new(0.0, 0.5);
        assert!(Qubit4::new(h, ih, ih, -h).is_ok());
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        assert!(matches!(
            Qubit4::new(one, one, zero, zero),
            Err(Error::NotNormalized { .. })
        ));
        assert!(Qubit4::from_reals(&[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn hadamard_single_step_spreads_evenly() {
        let ops = build_walk_operators(&coin_hadamard());
        let dist = distribution(&step(&init_state(&Qubit4::basis(0)), &ops));
        assert_eq!(dist.probs.len(), 4);
        for site in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
            assert!((dist.prob(site.0, site.1) - 0.25).abs() < 1e-15, "{site:?}");
        }
        assert!((moments(&dist, 2, 0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn identity_coin_moves_left_chirality_left() {
        let ops = build_walk_operators(&coin_identity());
        let state = evolve(&init_state(&Qubit4::basis(0)), &ops, 1);
        assert_eq!(
            distribution(&state).probs.into_iter().collect::<Vec<_>>(),
            vec![((-1, 0), 1.0)]
        );
        let state = evolve(&init_state(&Qubit4::basis(3)), &ops, 3);
        assert_eq!(
            distribution(&state).probs.into_iter().collect::<Vec<_>>(),
            vec![((0, 3), 1.0)]
        );
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let ops = build_walk_operators(&coin_random(4));
        let s = evolve(&init_state(&Qubit4::random(9)), &ops, 3);
        assert_eq!(evolve(&s, &ops, 0), s);
    }

    #[test]
    fn norm_parity_and_cone() {
        for seed in 0..50 {
            let ops = build_walk_operators(&coin_random(seed));
            let mut state = init_state(&Qubit4::random(1000 + seed));
            for n in 1..=8usize {
                state = step(&state, &ops);
                assert!((state.total_probability() - 1.0).abs() < 1e-12);
                let r = n as i64;
                for x in -r..=r {
                    for y in -r..=r {
                        let amp = state.amplitude(x, y).norm_sqr();
                        if x.abs() + y.abs() > r || (x + y - r).rem_euclid(2) != 0 {
                            assert_eq!(amp, 0.0, "seed {seed} n {n} ({x},{y})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_hadamard_walk_is_centered() {
        let ops = build_walk_operators(&coin_hadamard());
        let dist = distribution(&evolve(&init_state(&Qubit4::symmetric()), &ops, 10));
        assert!((dist.total() - 1.0).abs() < 1e-12);
        assert!(moments(&dist, 1, 0).abs() < 1e-10);
        assert!(moments(&dist, 0, 1).abs() < 1e-10);
        assert!((moments(&dist, 0, 0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_is_sorted_with_header() {
        let ops = build_walk_operators(&coin_hadamard());
        let dist = distribution(&step(&init_state(&Qubit4::basis(0)), &ops));
        let mut buf = Vec::new();
        dist.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,p");
        assert!(lines[1].starts_with("-1,0,2.50000000000000"));
        assert!(lines[2].starts_with("0,-1,2.50000000000000"));
        assert!(lines[4].starts_with("1,0,"));
        assert_eq!(lines.len(), 5);
    }
}
