//! Dense matrices over F = k(t), with the exact kernels the lattice and
//! group modules need: multiplication, inverse, determinant, solving.

use crate::field::BaseField;
use crate::scalars::RationalScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    field: BaseField,
    rows: usize,
    cols: usize,
    data: Vec<RationalScalar>,
}

impl Mat {
    pub fn zero(field: BaseField, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![RationalScalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: BaseField, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = RationalScalar::one(field);
        }
        m
    }

    /// Builds a matrix from columns.
    pub fn from_cols(field: BaseField, cols: &[Vec<RationalScalar>]) -> Mat {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Mat::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> Vec<RationalScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut m = Mat::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    m[(i, j)] = m[(i, j)].add(&self[(i, k)].mul(&other[(k, j)]));
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[RationalScalar]) -> Vec<RationalScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = RationalScalar::zero(self.field);
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self[(i, j)].mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &RationalScalar) -> Mat {
        let mut m = self.clone();
        for x in &mut m.data {
            *x = x.mul(c);
        }
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (x, y) in m.data.iter_mut().zip(&other.data) {
            *x = x.add(y);
        }
        m
    }

    pub fn det(&self) -> RationalScalar {
        assert_eq!(self.rows, self.cols);
        let mut a = self.clone();
        let n = self.rows;
        let mut det = RationalScalar::one(self.field);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a[(i, k)].is_zero());
            let Some(p) = pivot else {
                return RationalScalar::zero(self.field);
            };
            if p != k {
                a.swap_rows(p, k);
                det = det.neg();
            }
            det = det.mul(&a[(k, k)]);
            let inv = a[(k, k)].inv().unwrap();
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].mul(&inv);
                for j in k..n {
                    let s = a[(k, j)].mul(&f);
                    a[(i, j)] = a[(i, j)].sub(&s);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(self.field, n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            if p != k {
                a.swap_rows(p, k);
                inv.swap_rows(p, k);
            }
            let d = a[(k, k)].inv().unwrap();
            for j in 0..n {
                a[(k, j)] = a[(k, j)].mul(&d);
                inv[(k, j)] = inv[(k, j)].mul(&d);
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let s = a[(k, j)].mul(&f);
                    a[(i, j)] = a[(i, j)].sub(&s);
                    let s = inv[(k, j)].mul(&f);
                    inv[(i, j)] = inv[(i, j)].sub(&s);
                }
            }
        }
        Some(inv)
    }

    /// Solves the square system `self * x = b`; None if singular.
    pub fn solve(&self, b: &[RationalScalar]) -> Option<Vec<RationalScalar>> {
        Some(self.inverse()?.mul_vec(b))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = RationalScalar;
    fn index(&self, (i, j): (usize, usize)) -> &RationalScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RationalScalar {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    const F5: BaseField = BaseField::Prime(5);

    fn m2(entries: [[&str; 2]; 2]) -> Mat {
        let mut m = Mat::zero(F5, 2, 2);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = parse_scalar(entries[i][j], F5).unwrap();
            }
        }
        m
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m2([["1+t", "t"], ["t^2", "2"]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(F5, 2));
        assert_eq!(inv.mul(&a), Mat::identity(F5, 2));
    }

    #[test]
    fn det_multiplicative() {
        let a = m2([["1+t", "t"], ["t^2", "2"]]);
        let b = m2([["t^-1", "1"], ["0", "3+t"]]);
        assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
    }

    #[test]
    fn singular_matrix() {
        let a = m2([["1", "2"], ["2", "4"]]);
        assert!(a.det().is_zero());
        assert!(a.inverse().is_none());
    }
}
