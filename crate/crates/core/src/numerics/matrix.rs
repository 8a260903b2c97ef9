use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::NumericsError;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix of dimension 2 or 3, stored row-major.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    dim: usize,
    data: [Complex64; 9],
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self, NumericsError> {
        check_dim(dim)?;
        Ok(Self { dim, data: [ZERO; 9] })
    }

    pub fn identity(dim: usize) -> Result<Self, NumericsError> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be 4 or 9.
    pub fn from_row_major(entries: &[Complex64]) -> Result<Self, NumericsError> {
        let dim = match entries.len() {
            4 => 2,
            9 => 3,
            n => return Err(NumericsError::EntryCount(n)),
        };
        let mut data = [ZERO; 9];
        data[..entries.len()].copy_from_slice(entries);
        Ok(Self { dim, data })
    }

    pub fn from_rows2(rows: [[Complex64; 2]; 2]) -> Self {
        let mut data = [ZERO; 9];
        data[0] = rows[0][0];
        data[1] = rows[0][1];
        data[2] = rows[1][0];
        data[3] = rows[1][1];
        Self { dim: 2, data }
    }

    pub fn from_rows3(rows: [[Complex64; 3]; 3]) -> Self {
        let mut data = [ZERO; 9];
        for (i, row) in rows.iter().enumerate() {
            data[3 * i..3 * i + 3].copy_from_slice(row);
        }
        Self { dim: 3, data }
    }

    pub fn from_real2(rows: [[f64; 2]; 2]) -> Self {
        Self::from_rows2(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn from_real3(rows: [[f64; 3]; 3]) -> Self {
        Self::from_rows3(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    /// Real 2x2 rotation `[[cos t, sin t], [-sin t, cos t]]`.
    pub fn rotation2(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::from_real2([[c, s], [-s, c]])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self[(row, col)]
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    pub fn determinant(&self) -> Complex64 {
        let m = |i, j| self[(i, j)];
        match self.dim {
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            _ => {
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, NumericsError> {
        if self.dim != rhs.dim {
            return Err(NumericsError::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        let n = self.dim;
        let mut out = Self { dim: n, data: [ZERO; 9] };
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self.data[i * n + k] * rhs.data[k * n + j];
                }
                out.data[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
        if v.len() != self.dim {
            return Err(NumericsError::DimensionMismatch { left: self.dim, right: v.len() });
        }
        let n = self.dim;
        Ok((0..n)
            .map(|i| (0..n).map(|k| self.data[i * n + k] * v[k]).sum())
            .collect())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = *self;
        for z in out.data.iter_mut() {
            *z *= k;
        }
        out
    }
}

fn check_dim(dim: usize) -> Result<(), NumericsError> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(NumericsError::Dimension(dim))
    }
}

/// `m^n` by binary exponentiation. `n = 0` gives the identity.
pub fn mat_power(m: &ComplexMatrix, mut n: u64) -> ComplexMatrix {
    let mut result = ComplexMatrix::identity(m.dim).expect("valid dim");
    let mut base = *m;
    while n > 0 {
        if n & 1 == 1 {
            result = result * base;
        }
        n >>= 1;
        if n > 0 {
            base = base * base;
        }
    }
    result
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("dimension mismatch in matrix product")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Complex64]> = self.entries().chunks(self.dim).collect();
        f.debug_struct("ComplexMatrix").field("dim", &self.dim).field("rows", &rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn repeated(m: &ComplexMatrix, n: u64) -> ComplexMatrix {
        let mut acc = ComplexMatrix::identity(m.dim()).unwrap();
        for _ in 0..n {
            acc = acc * *m;
        }
        acc
    }

    fn arb_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(|v| {
            let e: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            ComplexMatrix::from_row_major(&e).unwrap()
        })
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(ComplexMatrix::zeros(4).is_err());
        assert!(ComplexMatrix::from_row_major(&[ZERO; 5]).is_err());
    }

    #[test]
    fn identity_power() {
        let id = ComplexMatrix::identity(3).unwrap();
        assert_eq!(mat_power(&id, 7), id);
        assert_eq!(mat_power(&ComplexMatrix::rotation2(0.3), 0), ComplexMatrix::identity(2).unwrap());
    }

    #[test]
    fn rotation_additivity() {
        let r = mat_power(&ComplexMatrix::rotation2(PI / 20.0), 10);
        assert!(r.max_abs_diff(&ComplexMatrix::rotation2(PI / 2.0)) < 1e-12);
        assert!((ComplexMatrix::rotation2(0.7).determinant().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn real_random_nine_fold() {
        let m = ComplexMatrix::from_real3([[0.3, -0.9, 0.1], [0.75, 0.2, -0.4], [-0.6, 0.5, 0.95]]);
        assert!(mat_power(&m, 9).max_abs_diff(&repeated(&m, 9)) < 1e-10);
    }

    #[test]
    fn determinant_3x3() {
        let m = ComplexMatrix::from_real3([[2.0, 0.0, 1.0], [1.0, 3.0, 2.0], [1.0, 1.0, 2.0]]);
        assert!((m.determinant() - Complex64::new(6.0, 0.0)).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn power_matches_repeated(m in arb_matrix(3), n in 1u64..12) {
            let oracle = repeated(&m, n);
            let scale = oracle.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(mat_power(&m, n).max_abs_diff(&oracle) / scale < 1e-10);
        }

        #[test]
        fn power_splits(theta in -PI..PI, xi in 0.0f64..3.0, a in 0u64..=64, b in 0u64..=64) {
            // damped rotation keeps entries bounded for exponents up to 128
            let (s, c) = theta.sin_cos();
            let e = (-xi).exp();
            let m = ComplexMatrix::from_real2([[c, s], [-e * s, e * c]]);
            let lhs = mat_power(&m, a + b);
            let rhs = mat_power(&m, a) * mat_power(&m, b);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        }

        #[test]
        fn power_splits_random(m in arb_matrix(3), a in 0u64..=64, b in 0u64..=64) {
            // normalise so the Frobenius norm bounds every power by 1
            let fro = m.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
            let m = m.scale(Complex64::new(1.0 / fro, 0.0));
            let lhs = mat_power(&m, a + b);
            let rhs = mat_power(&m, a) * mat_power(&m, b);
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        }
    }
}
