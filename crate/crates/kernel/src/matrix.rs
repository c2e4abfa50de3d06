//! Exact square matrices over the rationals, characteristic polynomials,
//! and generic Gaussian elimination over any exact field.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::KernelError;
use crate::numfield::FieldScalar;
use crate::poly::RatPoly;
use crate::rational::{rat_int, Rational};

/// Square matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self, KernelError> {
        if n == 0 || entries.len() != n * n {
            return Err(KernelError::NotSquare);
        }
        Ok(RationalMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, KernelError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(KernelError::NotSquare);
        }
        Ok(RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .expect("square integer rows")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        };
        for i in 0..n {
            *m.at_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = d[i].clone();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn add(&self, o: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, o.n);
        RationalMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, o.n);
        RationalMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, o: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a * o.at(k, j);
                    *out.at_mut(i, j) += v;
                }
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut s = BigRational::zero();
                for j in 0..self.n {
                    s += self.at(i, j) * &v[j];
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> RationalMatrix {
        let mut acc = Self::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn det(&self) -> Rational {
        let mut rows = self.rows();
        let n = self.n;
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !rows[r][col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return BigRational::zero(),
            };
            if pivot != col {
                rows.swap(pivot, col);
                det = -det;
            }
            let p = rows[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] / &p;
                for c in col..n {
                    let v = &factor * &rows[col][c];
                    rows[r][c] -= v;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.n;
        let mut rows: Vec<Vec<Rational>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                let mut aug = vec![BigRational::zero(); n];
                aug[i] = BigRational::one();
                r.extend(aug);
                r
            })
            .collect();
        let pivots = rref_field(&mut rows);
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = rows[i][n + j].clone();
            }
        }
        Some(out)
    }

    /// Monic characteristic polynomial via the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> RatPoly {
        let n = self.n;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut mk = self.clone();
        for k in 1..=n {
            let ck = -mk.trace() / rat_int(k as i64);
            coeffs[n - k] = ck.clone();
            if k < n {
                let mut adj = mk;
                for i in 0..n {
                    *adj.at_mut(i, i) += &ck;
                }
                mk = self.mul(&adj);
            }
        }
        RatPoly::new(coeffs)
    }

    /// Evaluates a rational polynomial at this matrix.
    pub fn apply_poly(&self, p: &RatPoly) -> RationalMatrix {
        let n = self.n;
        let mut acc = Self::zero(n);
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                *acc.at_mut(i, i) += c;
            }
        }
        acc
    }

    /// Basis of the kernel as rows.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        kernel_field(&self.rows())
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        rref_field(&mut rows).len()
    }
}

/// Reduced row echelon form over any exact field; returns pivot columns.
pub fn rref_field<T: FieldScalar>(rows: &mut Vec<Vec<T>>) -> Vec<usize> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = vec![];
    let mut r = 0usize;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let pivot = (r..rows.len()).find(|&i| !rows[i][c].is_zero_elem());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].inv_elem();
        for j in c..ncols {
            rows[r][j] = rows[r][j].mul_elem(&inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero_elem() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..ncols {
                let v = f.mul_elem(&rows[r][j]);
                rows[i][j] = rows[i][j].sub_elem(&v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero_elem()));
    pivots
}

/// Kernel basis (as row vectors) of a rectangular matrix over an exact field.
pub fn kernel_field<T: FieldScalar>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let sample = rows[0][0].clone();
    let mut work = rows.to_vec();
    let pivots = rref_field(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = vec![];
    for &fc in &free {
        let mut v = vec![sample.zero_elem(); ncols];
        v[fc] = sample.one_elem();
        for (ri, &pc) in pivots.iter().enumerate() {
            // pivot var = -sum(free coefficients)
            v[pc] = work[ri][fc].neg_elem();
        }
        basis.push(v);
    }
    basis
}

/// Rank over an exact field.
pub fn rank_field<T: FieldScalar>(rows: &[Vec<T>]) -> usize {
    let mut work = rows.to_vec();
    rref_field(&mut work).len()
}

/// Solves A x = b over an exact field; None if inconsistent.
pub fn solve_field<T: FieldScalar>(rows: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    if rows.is_empty() {
        return if b.iter().all(|x| x.is_zero_elem()) {
            Some(vec![])
        } else {
            None
        };
    }
    let ncols = rows[0].len();
    let sample = rows[0][0].clone();
    let mut aug: Vec<Vec<T>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let pivots = rref_field(&mut aug);
    if pivots.contains(&ncols) {
        return None; // pivot in the constant column
    }
    let mut x = vec![sample.zero_elem(); ncols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[ri][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn char_poly_of_diagonal() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        // t^2 - 5t + 6
        assert_eq!(m.char_poly(), RatPoly::from_i64(&[6, -5, 1]));
    }

    #[test]
    fn char_poly_of_jordan_block() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[0, 2]]);
        // (t-2)^2
        assert_eq!(m.char_poly(), RatPoly::from_i64(&[4, -4, 1]));
    }

    #[test]
    fn char_poly_of_companion() {
        // companion of t^2 - t - 1
        let m = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(m.char_poly(), RatPoly::from_i64(&[-1, -1, 1]));
    }

    #[test]
    fn char_poly_multiplicative_on_blocks() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = RationalMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        let mut big = RationalMatrix::zero(4);
        for i in 0..2 {
            for j in 0..2 {
                *big.at_mut(i, j) = a.at(i, j).clone();
                *big.at_mut(i + 2, j + 2) = b.at(i, j).clone();
            }
        }
        assert_eq!(big.char_poly(), a.char_poly().mul(&b.char_poly()));
    }

    #[test]
    fn kernel_and_rank() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // kernel vector satisfies m v = 0
        let v = &k[0];
        for row in m.rows() {
            let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RationalMatrix::identity(2));
        assert_eq!(*inv.at(0, 0), rat(1, 1));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse().is_none());
        assert!(!m.is_invertible());
    }
}
