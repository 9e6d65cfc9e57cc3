//! Fixed-size dense complex matrices and vectors (2×2 and 4×4 only).
//!
//! Storage is a flat row-major `[Complex64; 16]` regardless of dimension so
//! that every kernel is allocation-free. For a 2×2 matrix only the first four
//! slots are meaningful; the rest are kept at zero.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Matrix/vector dimension. Only the two sizes the walk ever needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dim {
    Two,
    Four,
}

impl Dim {
    #[inline]
    pub fn size(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Four => 4,
        }
    }

    pub fn from_size(n: usize) -> Result<Dim> {
        match n {
            2 => Ok(Dim::Two),
            4 => Ok(Dim::Four),
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.size())
    }
}

/// Dense complex square matrix of dimension 2 or 4, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct CMat {
    dim: Dim,
    data: [C64; 16],
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim.size();
        writeln!(f, "CMat{}x{} [", n, n)?;
        for i in 0..n {
            write!(f, "  ")?;
            for j in 0..n {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMat {
    pub fn zeros(dim: Dim) -> Self {
        CMat { dim, data: [ZERO; 16] }
    }

    pub fn identity(dim: Dim) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim.size() {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn identity2() -> Self {
        Self::identity(Dim::Two)
    }

    pub fn identity4() -> Self {
        Self::identity(Dim::Four)
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be 4 or 16.
    pub fn from_row_major(entries: &[C64]) -> Result<Self> {
        let dim = match entries.len() {
            4 => Dim::Two,
            16 => Dim::Four,
            n => return Err(Error::UnsupportedDimension(n)),
        };
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut m = Self::zeros(dim);
        m.data[..entries.len()].copy_from_slice(entries);
        Ok(m)
    }

    pub fn from_rows2(rows: [[C64; 2]; 2]) -> Self {
        let mut m = Self::zeros(Dim::Two);
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                m.set(i, j, *z);
            }
        }
        m
    }

    pub fn from_rows4(rows: [[C64; 4]; 4]) -> Self {
        let mut m = Self::zeros(Dim::Four);
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                m.set(i, j, *z);
            }
        }
        m
    }

    /// Diagonal matrix with the given diagonal (length 2 or 4).
    pub fn diag(entries: &[C64]) -> Result<Self> {
        let mut m = Self::zeros(Dim::from_size(entries.len())?);
        for (i, z) in entries.iter().enumerate() {
            m.set(i, i, *z);
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim.size() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        let n = self.dim.size();
        self.data[i * n + j] = z;
    }

    /// Row-major view of the meaningful entries (length dim²).
    #[inline]
    pub fn entries(&self) -> &[C64] {
        let n = self.dim.size();
        &self.data[..n * n]
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }

    pub fn scale(&self, s: C64) -> CMat {
        let mut out = *self;
        for z in out.data.iter_mut() {
            *z *= s;
        }
        out
    }

    /// `self += s * other`; the hot accumulation step of every path sum.
    #[inline]
    pub fn add_scaled(&mut self, s: C64, other: &CMat) {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim.size();
        for (a, b) in self.data[..n * n].iter_mut().zip(&other.data[..n * n]) {
            *a += s * *b;
        }
    }

    pub fn apply(&self, v: &CVec) -> Result<CVec> {
        if self.dim != v.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim.size(),
                right: v.dim.size(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    #[inline]
    pub(crate) fn apply_unchecked(&self, v: &CVec) -> CVec {
        let n = self.dim.size();
        let mut out = CVec::zeros(self.dim);
        for i in 0..n {
            let mut acc = ZERO;
            for j in 0..n {
                acc += self.data[i * n + j] * v.data[j];
            }
            out.data[i] = acc;
        }
        out
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, rhs: &CMat) -> CMat {
        let n = self.dim.size();
        let mut out = CMat::zeros(self.dim);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

/// Standard matrix product. Bit-for-bit deterministic for fixed input.
pub fn mat_mul(a: &CMat, b: &CMat) -> Result<CMat> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim.size(),
            right: b.dim.size(),
        });
    }
    Ok(a.mul_unchecked(b))
}

/// Kronecker product of two 2×2 matrices, block order (a₁₁b | a₁₂b ; a₂₁b | a₂₂b).
pub fn tensor_product(a: &CMat, b: &CMat) -> Result<CMat> {
    if a.dim != Dim::Two || b.dim != Dim::Two {
        return Err(Error::TensorOperands {
            left: a.dim.size(),
            right: b.dim.size(),
        });
    }
    Ok(kron2(a, b))
}

#[inline]
pub(crate) fn kron2(a: &CMat, b: &CMat) -> CMat {
    let mut out = CMat::zeros(Dim::Four);
    for ai in 0..2 {
        for aj in 0..2 {
            let s = a.data[ai * 2 + aj];
            for bi in 0..2 {
                for bj in 0..2 {
                    out.data[(2 * ai + bi) * 4 + 2 * aj + bj] = s * b.data[bi * 2 + bj];
                }
            }
        }
    }
    out
}

/// Conjugate transpose.
pub fn adjoint(m: &CMat) -> CMat {
    let n = m.dim.size();
    let mut out = CMat::zeros(m.dim);
    for i in 0..n {
        for j in 0..n {
            out.data[j * n + i] = m.data[i * n + j].conj();
        }
    }
    out
}

/// `mⁿ` by repeated squaring; `m⁰ = I`.
pub fn mat_power(m: &CMat, n: u32) -> CMat {
    let mut result = CMat::identity(m.dim);
    let mut base = *m;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul_unchecked(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul_unchecked(&base);
        }
    }
    result
}

/// √Σ|aᵢⱼ − bᵢⱼ|². Residual metric for every operator identity.
pub fn frobenius_distance(a: &CMat, b: &CMat) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim.size(),
            right: b.dim.size(),
        });
    }
    Ok(frobenius_unchecked(a, b))
}

#[inline]
pub(crate) fn frobenius_unchecked(a: &CMat, b: &CMat) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn is_unitary(m: &CMat, tol: f64) -> bool {
    let product = adjoint(m).mul_unchecked(m);
    frobenius_unchecked(&product, &CMat::identity(m.dim)) <= tol
}

impl Mul for CMat {
    type Output = CMat;

    /// Panics on dimension mismatch; use [`mat_mul`] for the fallible form.
    fn mul(self, rhs: CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        self.mul_unchecked(&rhs)
    }
}

impl Mul for &CMat {
    type Output = CMat;

    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Add for CMat {
    type Output = CMat;

    fn add(mut self, rhs: CMat) -> CMat {
        self += rhs;
        self
    }
}

impl AddAssign for CMat {
    fn add_assign(&mut self, rhs: CMat) {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += *b;
        }
    }
}

impl Sub for CMat {
    type Output = CMat;

    fn sub(mut self, rhs: CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a -= *b;
        }
        self
    }
}

/// Complex vector of dimension 2 or 4.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CVec {
    dim: Dim,
    data: [C64; 4],
}

impl CVec {
    pub fn zeros(dim: Dim) -> Self {
        CVec { dim, data: [ZERO; 4] }
    }

    pub fn from_slice(entries: &[C64]) -> Result<Self> {
        let dim = Dim::from_size(entries.len())?;
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut v = Self::zeros(dim);
        v.data[..entries.len()].copy_from_slice(entries);
        Ok(v)
    }

    pub fn new4(entries: [C64; 4]) -> Self {
        CVec {
            dim: Dim::Four,
            data: entries,
        }
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.data[..self.dim.size()]
    }

    #[inline]
    pub fn get(&self, i: usize) -> C64 {
        self.data[i]
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&self, s: C64) -> CVec {
        let mut out = *self;
        for z in out.data.iter_mut() {
            *z *= s;
        }
        out
    }

    /// Largest componentwise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &CVec) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for CVec {
    type Output = CVec;

    fn add(mut self, rhs: CVec) -> CVec {
        self += rhs;
        self
    }
}

impl AddAssign for CVec {
    fn add_assign(&mut self, rhs: CVec) {
        assert_eq!(self.dim, rhs.dim, "vector dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += *b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn hadamard() -> CMat {
        let h = FRAC_1_SQRT_2;
        CMat::from_rows2([[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]])
    }

    fn sample4() -> CMat {
        let mut entries = [ZERO; 16];
        for (i, z) in entries.iter_mut().enumerate() {
            *z = c(i as f64 * 0.3 - 1.0, (i as f64).sin());
        }
        CMat::from_row_major(&entries).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = sample4();
        assert_eq!(mat_mul(&CMat::identity4(), &m).unwrap(), m);
        assert_eq!(mat_mul(&m, &CMat::identity4()).unwrap(), m);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let err = mat_mul(&CMat::identity2(), &CMat::identity4()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { left: 2, right: 4 }));
        assert!(frobenius_distance(&CMat::identity2(), &CMat::identity4()).is_err());
        assert!(tensor_product(&CMat::identity4(), &CMat::identity2()).is_err());
        assert!(CMat::from_row_major(&[ONE; 9]).is_err());
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let mut entries = [ZERO; 4];
        entries[2] = c(f64::NAN, 0.0);
        assert!(matches!(CMat::from_row_major(&entries), Err(Error::NonFinite)));
    }

    #[test]
    fn kron_identity() {
        let i4 = tensor_product(&CMat::identity2(), &CMat::identity2()).unwrap();
        assert_eq!(i4, CMat::identity4());
    }

    #[test]
    fn kron_block_order() {
        // a = [[1,2],[3,4]], b = [[0,1],[1,0]] -> rows (0 1 0 2),(1 0 2 0),(0 3 0 4),(3 0 4 0)
        let a = CMat::from_rows2([[c(1.0, 0.0), c(2.0, 0.0)], [c(3.0, 0.0), c(4.0, 0.0)]]);
        let b = CMat::from_rows2([[ZERO, ONE], [ONE, ZERO]]);
        let k = tensor_product(&a, &b).unwrap();
        let expected: [f64; 16] = [0., 1., 0., 2., 1., 0., 2., 0., 0., 3., 0., 4., 3., 0., 4., 0.];
        for (z, e) in k.entries().iter().zip(expected) {
            assert_eq!(*z, c(e, 0.0));
        }
    }

    #[test]
    fn adjoint_is_involution_and_inverts_unitaries() {
        let m = sample4();
        assert_eq!(adjoint(&adjoint(&m)), m);
        assert_eq!(adjoint(&CMat::identity4()), CMat::identity4());
        let h = hadamard();
        let prod = mat_mul(&adjoint(&h), &h).unwrap();
        assert!(frobenius_distance(&prod, &CMat::identity2()).unwrap() < 1e-14);
        let h4 = tensor_product(&h, &h).unwrap();
        let prod = mat_mul(&h4, &adjoint(&h4)).unwrap();
        assert!(frobenius_distance(&prod, &CMat::identity4()).unwrap() < 1e-14);
    }

    #[test]
    fn power_matches_sequential_products() {
        let m = sample4().scale(c(0.25, 0.0));
        assert_eq!(mat_power(&m, 0), CMat::identity4());
        assert_eq!(mat_power(&m, 1), m);
        let mut naive = CMat::identity4();
        for n in 0..=16u32 {
            let fast = mat_power(&m, n);
            let scale = naive.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
            assert!(frobenius_distance(&fast, &naive).unwrap() <= 1e-12 * scale, "n = {n}");
            naive = mat_mul(&naive, &m).unwrap();
        }
    }

    #[test]
    fn frobenius_basics() {
        let m = sample4();
        assert_eq!(frobenius_distance(&m, &m).unwrap(), 0.0);
        let d = frobenius_distance(&CMat::identity2(), &CMat::zeros(Dim::Two)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let other = CMat::identity4();
        assert_eq!(
            frobenius_distance(&m, &other).unwrap(),
            frobenius_distance(&other, &m).unwrap()
        );
    }

    #[test]
    fn unitarity_predicate() {
        assert!(is_unitary(&CMat::identity4(), 1e-12));
        assert!(!is_unitary(&CMat::identity2().scale(c(2.0, 0.0)), 1e-12));
        assert!(is_unitary(&hadamard(), 1e-12));
    }

    #[test]
    fn apply_matches_manual_sum() {
        let m = sample4();
        let v = CVec::new4([c(1.0, 0.5), c(-0.25, 0.0), c(0.0, 2.0), c(3.0, -1.0)]);
        let out = m.apply(&v).unwrap();
        for i in 0..4 {
            let mut acc = ZERO;
            for j in 0..4 {
                acc += m.get(i, j) * v.get(j);
            }
            assert_eq!(out.get(i), acc);
        }
        assert!(CMat::identity2().apply(&v).is_err());
    }
}
