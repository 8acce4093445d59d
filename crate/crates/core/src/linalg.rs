// SPDX-License-Identifier: Apache-2.0

//! Dense real 4×4 kernel.
//!
//! Storage is row-major throughout the crate: `m[r][c]` is row `r`, column
//! `c`, and index 0 is the identity component of the Bloch basis
//! `(𝟙, σx, σy, σz)`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec4(pub [f64; 4]);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Vec4([a0, a1, a2, a3])
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(components: [f64; 4]) -> Result<Self> {
        let v = Vec4(components);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("Vec4 components".into()))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn norm(&self) -> f64 {
        dot(self, self).sqrt()
    }

    /// Euclidean norm of the (a1, a2, a3) part.
    pub fn spatial_norm(&self) -> f64 {
        self.0[1..].iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Vec4) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec4 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        Vec4(v.0.map(|x| self * x))
    }
}

impl Mat4 {
    pub const ZERO: Mat4 = Mat4([[0.0; 4]; 4]);

    pub const IDENTITY: Mat4 = Mat4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(rows: [[f64; 4]; 4]) -> Result<Self> {
        let m = Mat4(rows);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite("Mat4 entries".into()))
        }
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = Mat4::ZERO;
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = x;
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4(std::array::from_fn(|r| std::array::from_fn(|c| self.0[c][r])))
    }

    pub fn scale(&self, s: f64) -> Mat4 {
        Mat4(self.0.map(|row| row.map(|x| s * x)))
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..4)
            .map(|c| (0..4).map(|r| self.0[r][c].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Induced ∞-norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        (*self - *other).max_abs()
    }

    /// Antisymmetric part `(M − Mᵀ)/2`.
    pub fn antisymmetric_part(&self) -> Mat4 {
        (*self - self.transpose()).scale(0.5)
    }

    /// Symmetric part `(M + Mᵀ)/2`.
    pub fn symmetric_part(&self) -> Mat4 {
        (*self + self.transpose()).scale(0.5)
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.0[r][c]
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][c] + rhs.0[r][c])
        }))
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][c] - rhs.0[r][c])
        }))
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        Mat4(std::array::from_fn(|r| {
            std::array::from_fn(|c| (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
        }))
    }
}

impl Mul<Vec4> for Mat4 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|r| {
            (0..4).map(|c| self.0[r][c] * v.0[c]).sum()
        }))
    }
}

pub fn mat_vec(m: &Mat4, v: &Vec4) -> Vec4 {
    *m * *v
}

pub fn dot(u: &Vec4, v: &Vec4) -> f64 {
    u.0.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum()
}

/// Scaled argument norm bound for the Taylor core.
const TAYLOR_THETA: f64 = 0.5;
/// Truncation degree; `0.5^19 / 19!` is far below one ulp.
const TAYLOR_DEGREE: usize = 18;

/// `exp(M·t)` by scaling and squaring around a degree-18 Taylor polynomial.
///
/// The argument is scaled by `2^-s` until its 1-norm is at most 0.5, the
/// polynomial is evaluated by Horner's rule, and the result is squared `s`
/// times. Zero rows of `M` stay exactly zero rows of `exp(M t) − I`.
pub fn mat_exp(m: &Mat4, t: f64) -> Result<Mat4> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("mat_exp: time {t} is not finite")));
    }
    if !m.is_finite() {
        return Err(Error::InvalidArgument("mat_exp: matrix has non-finite entries".into()));
    }
    let a = m.scale(t);
    let norm = a.norm_one();
    if norm == 0.0 {
        return Ok(Mat4::IDENTITY);
    }
    let squarings = if norm > TAYLOR_THETA {
        (norm / TAYLOR_THETA).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale((-squarings as f64).exp2());

    // I + A(I + A/2(I + A/3(...)))
    let mut p = Mat4::IDENTITY;
    for k in (1..=TAYLOR_DEGREE).rev() {
        p = Mat4::IDENTITY + (a * p).scale(1.0 / k as f64);
    }
    for _ in 0..squarings {
        p = p * p;
    }
    if !p.is_finite() {
        return Err(Error::NonFinite("mat_exp result".into()));
    }
    Ok(p)
}
