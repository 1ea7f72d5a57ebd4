//! Interval vectors and matrices with the max-norm, plain float matrices
//! with an LU-based approximate inverse, and a verified matrix inverse.

use crate::round::{add_up, div_up, mul_up, sub_up};
use crate::{Interval, IvpError};
use nalgebra::DMatrix;

/// Column vector of intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct IVector {
    pub elems: Vec<Interval>,
}

impl IVector {
    pub fn zeros(n: usize) -> Self {
        IVector { elems: vec![Interval::ZERO; n] }
    }

    pub fn from_points(xs: &[f64]) -> Self {
        IVector { elems: xs.iter().map(|&x| Interval::point(x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Enclosure of the max-norm over all member vectors.
    pub fn max_norm(&self) -> Interval {
        assert!(!self.elems.is_empty(), "max_norm of empty vector");
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        for e in &self.elems {
            lo = lo.max(e.mig());
            hi = hi.max(e.mag());
        }
        Interval::new(lo, hi).expect("norm endpoints")
    }

    pub fn mids(&self) -> Vec<f64> {
        self.elems.iter().map(|e| e.mid()).collect()
    }

    pub fn inflate(&self, r: f64) -> IVector {
        IVector { elems: self.elems.iter().map(|e| e.inflate(r)).collect() }
    }

    pub fn contains(&self, xs: &[f64]) -> bool {
        self.len() == xs.len() && self.elems.iter().zip(xs).all(|(e, &x)| e.contains(x))
    }
}

impl std::ops::Index<usize> for IVector {
    type Output = Interval;
    fn index(&self, i: usize) -> &Interval {
        &self.elems[i]
    }
}

impl std::ops::IndexMut<usize> for IVector {
    fn index_mut(&mut self, i: usize) -> &mut Interval {
        &mut self.elems[i]
    }
}

impl std::ops::Sub for &IVector {
    type Output = IVector;
    fn sub(self, rhs: &IVector) -> IVector {
        assert_eq!(self.len(), rhs.len());
        IVector {
            elems: self.elems.iter().zip(&rhs.elems).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl std::ops::Add for &IVector {
    type Output = IVector;
    fn add(self, rhs: &IVector) -> IVector {
        assert_eq!(self.len(), rhs.len());
        IVector {
            elems: self.elems.iter().zip(&rhs.elems).map(|(a, b)| *a + *b).collect(),
        }
    }
}

/// Dense row-major interval matrix.
#[derive(Clone, Debug)]
pub struct IMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Interval>,
}

impl IMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMatrix { rows, cols, data: vec![Interval::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Interval::ONE;
        }
        m
    }

    pub fn from_float(m: &FloatMatrix) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(Interval::point(m.get(i, j)));
            }
        }
        IMatrix { rows, cols, data }
    }

    pub fn mul_vec(&self, v: &IVector) -> IVector {
        assert_eq!(self.cols, v.len());
        let mut out = IVector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = Interval::ZERO;
            for j in 0..self.cols {
                acc = acc + self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn mul_mat(&self, rhs: &IMatrix) -> IMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Interval::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &IMatrix) -> IMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = *a - *b;
        }
        out
    }

    pub fn add(&self, rhs: &IMatrix) -> IMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a = *a + *b;
        }
        out
    }

    /// Upper bound of the induced max-norm (maximum row sum of magnitudes),
    /// rounded up.
    pub fn sup_norm_upper(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            let mut s = 0.0f64;
            for j in 0..self.cols {
                s = add_up(s, self[(i, j)].mag());
            }
            worst = worst.max(s);
        }
        worst
    }

    pub fn mids(&self) -> FloatMatrix {
        FloatMatrix {
            inner: DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].mid()),
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMatrix {
    type Output = Interval;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Interval {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Interval {
        &mut self.data[i * self.cols + j]
    }
}

/// Plain floating-point matrix; thin wrapper over nalgebra's `DMatrix`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    pub inner: DMatrix<f64>,
}

impl FloatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FloatMatrix { inner: DMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        FloatMatrix { inner: DMatrix::identity(n, n) }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        FloatMatrix {
            inner: DMatrix::from_fn(r, c, |i, j| rows[i][j]),
        }
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.inner[(i, j)] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.inner.iter().all(|x| x.is_finite())
    }

    /// Plain floating LU-based inverse; no enclosure claimed.
    pub fn approx_inverse(&self) -> Result<FloatMatrix, IvpError> {
        if self.rows() != self.cols() {
            return Err(IvpError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let inv = self
            .inner
            .clone()
            .lu()
            .try_inverse()
            .ok_or(IvpError::SingularToWorkingPrecision)?;
        if !inv.iter().all(|x| x.is_finite()) {
            return Err(IvpError::SingularToWorkingPrecision);
        }
        Ok(FloatMatrix { inner: inv })
    }

    /// Solve `self * x = b` by LU.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, IvpError> {
        let rhs = nalgebra::DVector::from_column_slice(b);
        let sol = self
            .inner
            .clone()
            .lu()
            .solve(&rhs)
            .ok_or(IvpError::SingularToWorkingPrecision)?;
        if !sol.iter().all(|x| x.is_finite()) {
            return Err(IvpError::SingularToWorkingPrecision);
        }
        Ok(sol.iter().copied().collect())
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let out = &self.inner * nalgebra::DVector::from_column_slice(v);
        out.iter().copied().collect()
    }

    /// `self * M` where `M` is an interval matrix, with outward rounding.
    pub fn mul_imat(&self, rhs: &IMatrix) -> IMatrix {
        assert_eq!(self.cols(), rhs.rows);
        let mut out = IMatrix::zeros(self.rows(), rhs.cols);
        for i in 0..self.rows() {
            for k in 0..self.cols() {
                let a = Interval::point(self.get(i, k));
                if a == Interval::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_ivec(&self, v: &IVector) -> IVector {
        IMatrix::from_float(self).mul_vec(v)
    }

    /// Upper bound of the induced max-norm.
    pub fn sup_norm_upper(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows() {
            let mut s = 0.0f64;
            for j in 0..self.cols() {
                s = add_up(s, self.get(i, j).abs());
            }
            worst = worst.max(s);
        }
        worst
    }
}

/// Rigorous enclosure of `m^{-1}` through a Neumann-series residual bound
/// around the floating approximate inverse.
pub fn verified_inverse(m: &FloatMatrix) -> Result<IMatrix, IvpError> {
    let n = m.rows();
    let a0 = m.approx_inverse()?;
    let residual = IMatrix::identity(n).sub(&a0.mul_imat(&IMatrix::from_float(m)));
    let eps = residual.sup_norm_upper();
    if eps >= 1.0 {
        return Err(IvpError::InverseBoundFailure { residual_norm: eps });
    }
    // |m^{-1} - a0|_ij <= |a0| * eps / (1 - eps)
    let delta = div_up(mul_up(a0.sup_norm_upper(), eps), sub_up(1.0, eps).max(f64::MIN_POSITIVE));
    let mut out = IMatrix::from_float(&a0);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = out[(i, j)].inflate(delta);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_norm_examples() {
        let v = IVector {
            elems: vec![Interval::point(1.0), Interval::point(-3.0)],
        };
        assert_eq!(v.max_norm(), Interval::new(3.0, 3.0).unwrap());

        let v = IVector {
            elems: vec![Interval::new(-1.0, 2.0).unwrap(), Interval::new(0.0, 1.0).unwrap()],
        };
        // corner enumeration oracle: max over members of max(|v1|,|v2|)
        // v1 in [-1,2] -> |v1| in [0,2]; v2 in [0,1] -> |v2| in [0,1];
        // the max of the two ranges over the box is [0,2]
        assert_eq!(v.max_norm(), Interval::new(0.0, 2.0).unwrap());

        let v = IVector::zeros(2);
        assert_eq!(v.max_norm(), Interval::new(0.0, 0.0).unwrap());
    }

    #[test]
    fn approx_inverse_identity_and_diag() {
        let id = FloatMatrix::identity(3);
        assert_eq!(id.approx_inverse().unwrap(), FloatMatrix::identity(3));

        let d = FloatMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]);
        let inv = d.approx_inverse().unwrap();
        assert_eq!(inv.get(0, 0), 0.5);
        assert_eq!(inv.get(1, 1), 0.25);
    }

    #[test]
    fn approx_inverse_residual_small() {
        // fixed well-conditioned 4x4
        let m = FloatMatrix::from_rows(&[
            vec![4.0, 1.0, 0.3, -0.2],
            vec![-1.0, 5.0, 0.7, 0.1],
            vec![0.2, -0.4, 3.0, 1.1],
            vec![0.5, 0.3, -0.9, 6.0],
        ]);
        let a = m.approx_inverse().unwrap();
        let resid = IMatrix::identity(4).sub(&a.mul_imat(&IMatrix::from_float(&m)));
        assert!(resid.sup_norm_upper() <= 1e-12);
    }

    #[test]
    fn singular_rejected() {
        let m = FloatMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(m.approx_inverse().is_err());
    }

    #[test]
    fn verified_inverse_contains_truth() {
        let m = FloatMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        // exact inverse = 1/5 * [[3, -1], [-1, 2]]
        let inv = verified_inverse(&m).unwrap();
        assert!(inv[(0, 0)].contains(0.6));
        assert!(inv[(0, 1)].contains(-0.2));
        assert!(inv[(1, 0)].contains(-0.2));
        assert!(inv[(1, 1)].contains(0.4));
    }
}
