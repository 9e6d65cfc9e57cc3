//! Momentum-space dynamics: `Ψ̂ₙ₊₁(ξ,η) = U(ξ,η) Ψ̂ₙ(ξ,η)`.
//!
//! The transform is sampled on a uniform `M × M` grid `ξⱼ = −π + 2πj/M`,
//! `ηₗ = −π + 2πl/M`. Since `Ψ̂ₙ` is a trigonometric polynomial of degree at
//! most `n` in each variable, the `M`-point Riemann sum inverts it exactly once
//! `M ≥ 2n+1`.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::coin::{build_walk_operators, Coin};
use crate::error::{Error, Result};
use crate::format::Sci;
use crate::linalg::{mat_power, CMat, CVec, Dim, C64};
use crate::position::LatticeState;

#[derive(Clone, Debug, PartialEq)]
pub struct FourierGrid {
    size: usize,
    time: usize,
    samples: Vec<CVec>,
}

impl FourierGrid {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn time(&self) -> usize {
        self.time
    }

    pub fn sample(&self, j: usize, l: usize) -> CVec {
        self.samples[j * self.size + l]
    }

    /// `(ξⱼ, ηₗ)` for grid index `(j, l)`.
    pub fn point(&self, j: usize, l: usize) -> (f64, f64) {
        (grid_angle(j, self.size), grid_angle(l, self.size))
    }

    /// `(1/M²) Σ ‖Ψ̂‖²`, equal to the total probability by Parseval.
    pub fn parseval(&self) -> f64 {
        let m2 = (self.size * self.size) as f64;
        self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() / m2
    }

    pub fn max_abs_diff(&self, other: &FourierGrid) -> f64 {
        assert_eq!(self.size, other.size, "grid sizes differ");
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Debug dump rows `{j, l, xi, eta, re:[4], im:[4]}`.
    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        let rows: Vec<GridRow> = (0..self.size)
            .flat_map(|j| (0..self.size).map(move |l| (j, l)))
            .map(|(j, l)| {
                let (xi, eta) = self.point(j, l);
                let e = self.sample(j, l);
                let e = e.entries();
                GridRow {
                    j,
                    l,
                    xi: Sci(xi),
                    eta: Sci(eta),
                    re: [Sci(e[0].re), Sci(e[1].re), Sci(e[2].re), Sci(e[3].re)],
                    im: [Sci(e[0].im), Sci(e[1].im), Sci(e[2].im), Sci(e[3].im)],
                }
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &rows)?;
        writeln!(out)?;
        Ok(())
    }
}

#[derive(Serialize)]
struct GridRow {
    j: usize,
    l: usize,
    xi: Sci,
    eta: Sci,
    re: [Sci; 4],
    im: [Sci; 4],
}

#[inline]
fn grid_angle(j: usize, size: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / size as f64
}

/// Smallest grid that resolves a state at time `n`.
pub fn min_grid_size(time: usize) -> usize {
    2 * time + 1
}

/// Fails unless an `M×M` grid resolves a state at time `n`.
pub fn check_grid(size: usize, time: usize) -> Result<()> {
    if size < min_grid_size(time) {
        return Err(Error::GridUnderResolved {
            size,
            time,
            required: min_grid_size(time),
        });
    }
    Ok(())
}

/// Default grid size `2n + 2`.
pub fn default_grid_size(time: usize) -> usize {
    2 * time + 2
}

/// `U(ξ,η) = e^{−iξ}P + e^{iξ}Q + e^{−iη}R + e^{iη}S`.
pub fn build_u_kxi(coin: &Coin, xi: f64, eta: f64) -> CMat {
    let ops = build_walk_operators(coin);
    let mut u = CMat::zeros(Dim::Four);
    u.add_scaled(C64::from_polar(1.0, -xi), &ops.p_left);
    u.add_scaled(C64::from_polar(1.0, xi), &ops.q_right);
    u.add_scaled(C64::from_polar(1.0, -eta), &ops.r_down);
    u.add_scaled(C64::from_polar(1.0, eta), &ops.s_up);
    u
}

/// Second construction of `U(ξ,η)`: `Diag(e^{−iξ}, e^{iξ}, e^{−iη}, e^{iη})·U⊗²`.
pub fn build_u_kxi_diag(coin: &Coin, xi: f64, eta: f64) -> CMat {
    let phases = [
        C64::from_polar(1.0, -xi),
        C64::from_polar(1.0, xi),
        C64::from_polar(1.0, -eta),
        C64::from_polar(1.0, eta),
    ];
    let d = CMat::diag(&phases).expect("length-4 diagonal");
    d * coin.tensor_square()
}

/// Phase table `table[j][x + n] = e^{sign·i·θⱼ·x}` for `x ∈ [−n, n]`.
fn phase_table(size: usize, radius: i64, sign: f64) -> Vec<Vec<C64>> {
    (0..size)
        .map(|j| {
            let theta = grid_angle(j, size);
            (-radius..=radius)
                .map(|x| C64::from_polar(1.0, sign * theta * x as f64))
                .collect()
        })
        .collect()
}

/// Sampled `Ψ̂ₙ(ξ,η) = Σ e^{iξx+iηy} Ψₙ(x,y)`.
pub fn transform(state: &LatticeState, size: usize) -> Result<FourierGrid> {
    let time = state.time();
    check_grid(size, time)?;
    let n = state.radius();
    let width = (2 * n + 1) as usize;
    let phases = phase_table(size, n, 1.0);

    // partial[x][l] = Σ_y e^{iη_l y} Ψ(x, y)
    let partial: Vec<Vec<CVec>> = (-n..=n)
        .into_par_iter()
        .map(|x| {
            (0..size)
                .map(|l| {
                    let mut acc = CVec::zeros(Dim::Four);
                    let reach = n - x.abs();
                    for y in -reach..=reach {
                        acc += state.amplitude(x, y).scale(phases[l][(y + n) as usize]);
                    }
                    acc
                })
                .collect()
        })
        .collect();

    let samples: Vec<CVec> = (0..size * size)
        .into_par_iter()
        .map(|idx| {
            let (j, l) = (idx / size, idx % size);
            let mut acc = CVec::zeros(Dim::Four);
            for xi in 0..width {
                acc += partial[xi][l].scale(phases[j][xi]);
            }
            acc
        })
        .collect();
    Ok(FourierGrid { size, time, samples })
}

/// Multiplies every sample by `U(ξⱼ,ηₗ)^steps`.
pub fn evolve_fourier(grid: &FourierGrid, coin: &Coin, steps: usize) -> FourierGrid {
    if steps == 0 {
        return grid.clone();
    }
    let size = grid.size;
    let samples = grid
        .samples
        .par_iter()
        .enumerate()
        .map(|(idx, v)| {
            let (xi, eta) = grid.point(idx / size, idx % size);
            let u = mat_power(&build_u_kxi(coin, xi, eta), steps as u32);
            u.apply_unchecked(v)
        })
        .collect();
    FourierGrid {
        size,
        time: grid.time + steps,
        samples,
    }
}

/// Discrete inversion `(1/M²) Σⱼₗ e^{−iξⱼx−iηₗy} Ψ̂(ξⱼ,ηₗ)` on the diamond.
pub fn invert(grid: &FourierGrid) -> Result<LatticeState> {
    let (size, time) = (grid.size, grid.time);
    check_grid(size, time)?;
    let n = time as i64;
    let phases = phase_table(size, n, -1.0);
    let norm = C64::new(1.0 / (size * size) as f64, 0.0);

    // partial[j][y] = Σ_l e^{−iη_l y} Ψ̂(ξ_j, η_l)
    let partial: Vec<Vec<CVec>> = (0..size)
        .into_par_iter()
        .map(|j| {
            (-n..=n)
                .map(|y| {
                    let mut acc = CVec::zeros(Dim::Four);
                    for (l, row) in phases.iter().enumerate() {
                        acc += grid.sample(j, l).scale(row[(y + n) as usize]);
                    }
                    acc
                })
                .collect()
        })
        .collect();

    let mut state = LatticeState::zeros(time);
    let sites: Vec<(i64, i64)> = state.sites().collect();
    let values: Vec<CVec> = sites
        .par_iter()
        .map(|&(x, y)| {
            let mut acc = CVec::zeros(Dim::Four);
            for j in 0..size {
                acc += partial[j][(y + n) as usize].scale(phases[j][(x + n) as usize]);
            }
            acc.scale(norm)
        })
        .collect();
    for ((x, y), v) in sites.into_iter().zip(values) {
        state.set(x, y, v);
    }
    Ok(state)
}

/// Largest entry of `transform(step(s)) − U(ξ,η)·transform(s)` over the grid.
pub fn lemma_residual(before: &FourierGrid, after: &FourierGrid, coin: &Coin) -> f64 {
    let predicted = evolve_fourier(before, coin, 1);
    predicted.max_abs_diff(after)
}
