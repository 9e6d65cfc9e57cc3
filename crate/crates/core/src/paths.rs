//! Path sums.
//!
//! Two families live here:
//!
//! * the four-direction path sum `Ξₙ(l,r,d,u)`, built both by its one-step
//!   recursion and by brute-force enumeration of all `4ⁿ` step sequences;
//! * binary-indexed ±1 paths. Step `j` of a length-`n` path is `+1` iff bit
//!   `j−1` of the index `k` is set (least significant bit = first step). A
//!   path's operator weight is the ordered product `F(vₙ)⋯F(v₁)` with the
//!   earliest step rightmost, `F(−1) = P₁`, `F(+1) = Q₁`.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::coin::{build_walk_operators, Coin, WalkOperators};
use crate::error::{Error, Result};
use crate::format::Sci;
use crate::linalg::{kron2, CMat, CVec, Dim};
use crate::position::{Distribution, Qubit4};

/// Longest single path that can be indexed.
pub const MAX_PATH_LEN: usize = 30;
/// Pair sweeps enumerate at most `2^PAIR_GUARD_BITS` pairs.
pub const PAIR_GUARD_BITS: usize = 24;
/// Largest `n` accepted by [`xi_recursive`].
pub const XI_RECURSIVE_MAX: usize = 12;
/// Largest `n` accepted by [`xi_bruteforce`].
pub const XI_BRUTEFORCE_MAX: usize = 10;

/// A ±1 walk of length `n` encoded by its index `k ∈ [0, 2ⁿ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path1D {
    len: usize,
    index: u64,
    positions: Vec<i64>,
}

impl Path1D {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Increment `v(j) ∈ {−1, +1}` for `j ∈ 1..=n`.
    pub fn increment(&self, j: usize) -> i64 {
        assert!(
            (1..=self.len).contains(&j),
            "increment index {j} outside 1..={}",
            self.len
        );
        if (self.index >> (j - 1)) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn increments(&self) -> Vec<i64> {
        (1..=self.len).map(|j| self.increment(j)).collect()
    }

    /// Position `w(m)` for `m ∈ 0..=n`, with `w(0) = 0`.
    #[inline]
    pub fn position(&self, m: usize) -> i64 {
        self.positions[m]
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn endpoint(&self) -> i64 {
        self.positions[self.len]
    }
}

/// Recovers the index from a sequence of ±1 increments.
pub fn index_from_increments(increments: &[i64]) -> u64 {
    increments
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 1)
        .map(|(j, _)| 1u64 << j)
        .sum()
}

pub fn path_from_index(len: usize, index: u64) -> Result<Path1D> {
    if len > MAX_PATH_LEN {
        return Err(Error::GuardExceeded {
            what: format!("path length {len}"),
            limit: MAX_PATH_LEN.to_string(),
        });
    }
    if index >= 1u64 << len {
        return Err(Error::IndexOutOfRange(format!("k = {index} is not below 2^{len}")));
    }
    let mut positions = Vec::with_capacity(len + 1);
    positions.push(0);
    let mut w = 0i64;
    for j in 0..len {
        w += if (index >> j) & 1 == 1 { 1 } else { -1 };
        positions.push(w);
    }
    Ok(Path1D { len, index, positions })
}

/// All `2ⁿ` paths of length `n`, in index order.
pub fn all_paths(len: usize) -> Result<Vec<Path1D>> {
    if len > PAIR_GUARD_BITS {
        return Err(Error::GuardExceeded {
            what: format!("2^{len} paths"),
            limit: format!("2^{PAIR_GUARD_BITS}"),
        });
    }
    (0..1u64 << len).map(|k| path_from_index(len, k)).collect()
}

/// Checks the pair-enumeration guard `2^(n+n′) ≤ 2^24`.
pub fn check_pair_guard(len: usize, len_prime: usize) -> Result<()> {
    if len + len_prime > PAIR_GUARD_BITS {
        return Err(Error::GuardExceeded {
            what: format!("2^(n+n') path pairs with n = {len}, n' = {len_prime}"),
            limit: format!("2^{PAIR_GUARD_BITS}"),
        });
    }
    Ok(())
}

/// Two paths of lengths `n` and `n′`; `w(m, m′) = (w₁(m), w₂(m′))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathPair {
    pub first: Path1D,
    pub second: Path1D,
}

impl PathPair {
    pub fn new(first: Path1D, second: Path1D) -> Self {
        PathPair { first, second }
    }

    pub fn from_indices(len: usize, index: u64, len_prime: usize, index_prime: u64) -> Result<Self> {
        Ok(PathPair {
            first: path_from_index(len, index)?,
            second: path_from_index(len_prime, index_prime)?,
        })
    }

    pub fn position(&self, m: usize, m_prime: usize) -> (i64, i64) {
        (self.first.position(m), self.second.position(m_prime))
    }

    pub fn endpoint(&self) -> (i64, i64) {
        (self.first.endpoint(), self.second.endpoint())
    }
}

/// `P_w = F(vₙ)⋯F(v₁)`.
pub fn weight_1d(coin: &Coin, path: &Path1D) -> CMat {
    let ops = build_walk_operators(coin);
    weight_1d_with(&ops, path)
}

pub(crate) fn weight_1d_with(ops: &WalkOperators, path: &Path1D) -> CMat {
    let mut w = CMat::identity2();
    for j in 1..=path.len() {
        let factor = if path.increment(j) == 1 { &ops.q1 } else { &ops.p1 };
        w = factor * &w;
    }
    w
}

/// `P_w^{(k,k′)} = P_{w₁}^{(k)} ⊗ P_{w₂}^{(k′)}`.
pub fn weight_2d(coin: &Coin, pair: &PathPair) -> CMat {
    let ops = build_walk_operators(coin);
    kron2(&weight_1d_with(&ops, &pair.first), &weight_1d_with(&ops, &pair.second))
}

/// Paths of one length together with their 1D weights, for repeated pair sweeps.
#[derive(Clone, Debug)]
pub struct WeightedPaths {
    pub paths: Vec<Path1D>,
    pub weights: Vec<CMat>,
}

impl WeightedPaths {
    pub fn new(ops: &WalkOperators, len: usize) -> Result<Self> {
        let paths = all_paths(len)?;
        let weights = paths.iter().map(|p| weight_1d_with(ops, p)).collect();
        Ok(WeightedPaths { paths, weights })
    }
}

type Tuple = (usize, usize, usize, usize);

/// `Ξₙ(l, r, d, u)` for every `(l, r, d, u)` with `l + r + d + u = n`.
#[derive(Clone, Debug, PartialEq)]
pub struct XiTable {
    n: usize,
    entries: BTreeMap<Tuple, CMat>,
}

impl XiTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, l: usize, r: usize, d: usize, u: usize) -> Option<&CMat> {
        self.entries.get(&(l, r, d, u))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tuple, &CMat)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ Ξₙ(l,r,d,u)`, which must equal `(U⊗²)ⁿ`.
    pub fn total(&self) -> CMat {
        let mut acc = CMat::zeros(Dim::Four);
        for m in self.entries.values() {
            acc += *m;
        }
        acc
    }

    /// Largest entrywise modulus difference; tuples missing on one side count as zero.
    pub fn max_abs_diff(&self, other: &XiTable) -> f64 {
        let zero = CMat::zeros(Dim::Four);
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|key| {
                let a = self.entries.get(key).unwrap_or(&zero);
                let b = other.entries.get(key).unwrap_or(&zero);
                a.entries()
                    .iter()
                    .zip(b.entries())
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// Dump rows `{l, r, d, u, re:[16], im:[16]}`, row-major matrix order.
    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        let rows: Vec<XiRow> = self
            .entries
            .iter()
            .map(|(&(l, r, d, u), m)| XiRow {
                l,
                r,
                d,
                u,
                re: m.entries().iter().map(|z| Sci(z.re)).collect(),
                im: m.entries().iter().map(|z| Sci(z.im)).collect(),
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &rows)?;
        writeln!(out)?;
        Ok(())
    }
}

#[derive(Serialize)]
struct XiRow {
    l: usize,
    r: usize,
    d: usize,
    u: usize,
    re: Vec<Sci>,
    im: Vec<Sci>,
}

/// `Ξₙ₊₁(l,r,d,u) = PΞₙ(l−1,r,d,u) + QΞₙ(l,r−1,d,u) + RΞₙ(l,r,d−1,u) + SΞₙ(l,r,d,u−1)`
/// starting from `Ξ₀(0,0,0,0) = I`.
pub fn xi_recursive(coin: &Coin, n: usize) -> Result<XiTable> {
    if n > XI_RECURSIVE_MAX {
        return Err(Error::GuardExceeded {
            what: format!("recursive path-sum table for n = {n}; disable the brute-force Xi oracle for large n"),
            limit: XI_RECURSIVE_MAX.to_string(),
        });
    }
    let ops = build_walk_operators(coin);
    let mut table = BTreeMap::new();
    table.insert((0, 0, 0, 0), CMat::identity4());
    for step in 1..=n {
        let mut next = BTreeMap::new();
        for l in 0..=step {
            for r in 0..=step - l {
                for d in 0..=step - l - r {
                    let u = step - l - r - d;
                    let mut acc = CMat::zeros(Dim::Four);
                    let mut add = |op: &CMat, key: Option<Tuple>| {
                        if let Some(prev) = key.and_then(|k| table.get(&k)) {
                            acc += op * prev;
                        }
                    };
                    add(&ops.p_left, l.checked_sub(1).map(|l1| (l1, r, d, u)));
                    add(&ops.q_right, r.checked_sub(1).map(|r1| (l, r1, d, u)));
                    add(&ops.r_down, d.checked_sub(1).map(|d1| (l, r, d1, u)));
                    add(&ops.s_up, u.checked_sub(1).map(|u1| (l, r, d, u1)));
                    next.insert((l, r, d, u), acc);
                }
            }
        }
        table = next;
    }
    Ok(XiTable { n, entries: table })
}

/// Accumulates the ordered product of each of the `4ⁿ` step sequences into its
/// `(l, r, d, u)` bucket.
pub fn xi_bruteforce(coin: &Coin, n: usize) -> Result<XiTable> {
    if n > XI_BRUTEFORCE_MAX {
        return Err(Error::GuardExceeded {
            what: format!("4^{n} step sequences"),
            limit: format!("4^{XI_BRUTEFORCE_MAX}"),
        });
    }
    let ops = build_walk_operators(coin);
    let directional = ops.directional();
    let mut entries = BTreeMap::new();

    // Depth-first over sequences, carrying the prefix product (latest step leftmost).
    fn descend(
        remaining: usize,
        prefix: CMat,
        counts: [usize; 4],
        directional: &[CMat; 4],
        entries: &mut BTreeMap<Tuple, CMat>,
    ) {
        if remaining == 0 {
            let key = (counts[0], counts[1], counts[2], counts[3]);
            let slot = entries.entry(key).or_insert_with(|| CMat::zeros(Dim::Four));
            *slot += prefix;
            return;
        }
        for (dir, op) in directional.iter().enumerate() {
            let mut next_counts = counts;
            next_counts[dir] += 1;
            descend(remaining - 1, op * &prefix, next_counts, directional, entries);
        }
    }

    descend(n, CMat::identity4(), [0; 4], &directional, &mut entries);
    Ok(XiTable { n, entries })
}

/// Position law from a path-sum table.
///
/// Several `(l, r, d, u)` share a site `(x, y) = (r − l, u − d)`; their
/// amplitudes `Ξφ` are added before squaring, giving `‖Ψₙ(x, y)‖²`.
pub fn prob_from_xi(table: &XiTable, phi: &Qubit4) -> Distribution {
    let phi = phi.to_cvec();
    let mut amplitudes: BTreeMap<(i64, i64), CVec> = BTreeMap::new();
    for (&(l, r, d, u), m) in &table.entries {
        let site = (r as i64 - l as i64, u as i64 - d as i64);
        let v = m.apply_unchecked(&phi);
        *amplitudes.entry(site).or_insert_with(|| CVec::zeros(Dim::Four)) += v;
    }
    let probs = amplitudes
        .into_iter()
        .filter_map(|(site, v)| {
            let p = v.norm_sqr();
            (p != 0.0).then_some((site, p))
        })
        .collect();
    Distribution { time: table.n, probs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{coin_hadamard, coin_identity, coin_random};
    use crate::linalg::{frobenius_distance, mat_power, tensor_product};
    use crate::position::{distribution, evolve, init_state};

    #[test]
    fn path_encoding_examples() {
        let p = path_from_index(3, 0).unwrap();
        assert_eq!(p.increments(), vec![-1, -1, -1]);
        assert_eq!(p.positions(), &[0, -1, -2, -3]);
        let p = path_from_index(3, 5).unwrap();
        assert_eq!(p.increments(), vec![1, -1, 1]);
        assert_eq!(p.positions(), &[0, 1, 0, 1]);
        assert!(matches!(path_from_index(3, 8), Err(Error::IndexOutOfRange(_))));
        assert!(path_from_index(31, 0).is_err());
    }

    #[test]
    fn encoding_is_bijective() {
        for n in 0..=12 {
            for k in 0..1u64 << n {
                let p = path_from_index(n, k).unwrap();
                assert_eq!(index_from_increments(&p.increments()), k);
                assert_eq!(p.position(0), 0);
                for m in 0..n {
                    assert_eq!((p.position(m + 1) - p.position(m)).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn weight_ordering_puts_first_step_rightmost() {
        let coin = coin_random(3);
        let ops = build_walk_operators(&coin);
        assert_eq!(weight_1d(&coin, &path_from_index(0, 0).unwrap()), CMat::identity2());
        // k = 1: v = (+1, −1) -> P₁·Q₁
        let w = weight_1d(&coin, &path_from_index(2, 1).unwrap());
        assert_eq!(w, ops.p1 * ops.q1);
        assert_ne!(w, ops.q1 * ops.p1);
    }

    #[test]
    fn one_dimensional_weights_sum_to_coin_power() {
        let coin = coin_random(8);
        for n in 0..=10 {
            let mut acc = CMat::zeros(Dim::Two);
            for p in all_paths(n).unwrap() {
                acc += weight_1d(&coin, &p);
            }
            let d = frobenius_distance(&acc, &mat_power(&coin.matrix(), n as u32)).unwrap();
            assert!(d < 1e-13, "n = {n}: {d}");
        }
    }

    #[test]
    fn pair_weights_sum_to_tensor_of_powers() {
        let coin = coin_hadamard();
        let u = coin.matrix();
        let empty = PathPair::from_indices(0, 0, 0, 0).unwrap();
        assert_eq!(weight_2d(&coin, &empty), CMat::identity4());
        for n in 0..=6 {
            for n_prime in 0..=6 {
                let mut acc = CMat::zeros(Dim::Four);
                for a in all_paths(n).unwrap() {
                    for b in all_paths(n_prime).unwrap() {
                        acc += weight_2d(&coin, &PathPair::new(a.clone(), b));
                    }
                }
                let expected = tensor_product(&mat_power(&u, n as u32), &mat_power(&u, n_prime as u32)).unwrap();
                assert!(frobenius_distance(&acc, &expected).unwrap() < 1e-12);
                if n == n_prime {
                    let walk = mat_power(&coin.tensor_square(), n as u32);
                    assert!(frobenius_distance(&acc, &walk).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn xi_single_and_double_steps() {
        let coin = coin_random(4);
        let ops = build_walk_operators(&coin);
        let t1 = xi_recursive(&coin, 1).unwrap();
        assert_eq!(t1.get(1, 0, 0, 0), Some(&ops.p_left));
        assert_eq!(t1.get(0, 1, 0, 0), Some(&ops.q_right));
        assert_eq!(t1.get(0, 0, 1, 0), Some(&ops.r_down));
        assert_eq!(t1.get(0, 0, 0, 1), Some(&ops.s_up));
        assert_eq!(xi_bruteforce(&coin, 1).unwrap(), t1);

        let t2 = xi_recursive(&coin, 2).unwrap();
        let expected = ops.p_left * ops.q_right + ops.q_right * ops.p_left;
        assert!(frobenius_distance(t2.get(1, 1, 0, 0).unwrap(), &expected).unwrap() < 1e-15);
    }

    #[test]
    fn xi_tables_agree_and_sum_to_walk_power() {
        for coin in [coin_hadamard(), coin_random(17)] {
            for n in 0..=6 {
                let rec = xi_recursive(&coin, n).unwrap();
                let brute = xi_bruteforce(&coin, n).unwrap();
                assert!(rec.max_abs_diff(&brute) < 1e-12);
                let walk = mat_power(&coin.tensor_square(), n as u32);
                assert!(frobenius_distance(&rec.total(), &walk).unwrap() < 1e-12);
                let ops = build_walk_operators(&coin);
                let pure_left = mat_power(&ops.p_left, n as u32);
                assert!(frobenius_distance(brute.get(n, 0, 0, 0).unwrap(), &pure_left).unwrap() < 1e-14);
            }
        }
    }

    #[test]
    fn xi_guards() {
        assert!(matches!(
            xi_recursive(&coin_hadamard(), 13),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            xi_bruteforce(&coin_hadamard(), 11),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(check_pair_guard(12, 12).is_ok());
        assert!(check_pair_guard(12, 13).is_err());
    }

    #[test]
    fn xi_probabilities() {
        let had = coin_hadamard();
        let dist = prob_from_xi(&xi_recursive(&had, 1).unwrap(), &Qubit4::basis(0));
        for site in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
            assert!((dist.prob(site.0, site.1) - 0.25).abs() < 1e-15);
        }
        let dist = prob_from_xi(&xi_recursive(&coin_identity(), 5).unwrap(), &Qubit4::basis(0));
        assert_eq!(dist.probs.into_iter().collect::<Vec<_>>(), vec![((-5, 0), 1.0)]);

        let coin = coin_random(99);
        let ops = build_walk_operators(&coin);
        let phi = Qubit4::random(5);
        for n in 0..=6 {
            let from_xi = prob_from_xi(&xi_recursive(&coin, n).unwrap(), &phi);
            let direct = distribution(&evolve(&init_state(&phi), &ops, n));
            assert!(from_xi.max_abs_diff(&direct) < 1e-11, "n = {n}");
            assert!((from_xi.total() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn xi_dump_has_sixteen_entries_per_row() {
        let mut buf = Vec::new();
        xi_recursive(&coin_hadamard(), 1).unwrap().write_json(&mut buf).unwrap();
        let rows: Vec<serde_json::Value> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0]["re"].as_array().unwrap().len(), 16);
    }
}
