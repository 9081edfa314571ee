//! Dense matrices over a [`Ring`], with field-only elimination routines.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::poly::Poly;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// `self * rhs - rhs * self`
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone() - rhs.clone() * self.clone()
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect()
    }

    /// Coefficients of `det(t I - self)`, ascending, via the division-free
    /// Berkowitz recursion. Valid over any commutative ring.
    pub fn char_poly_monic(&self) -> Vec<T> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        // Descending coefficient vector of the leading r x r block.
        let mut v: Vec<T> = vec![T::one()];
        for r in 1..=n {
            let k = r - 1;
            let a = self[(k, k)].clone();
            let row: Vec<T> = (0..k).map(|j| self[(k, j)].clone()).collect();
            let mut col: Vec<T> = (0..k).map(|i| self[(i, k)].clone()).collect();
            let mut q = Vec::with_capacity(r + 1);
            q.push(T::one());
            q.push(-a);
            for _ in 2..=r {
                let dot = row
                    .iter()
                    .zip(&col)
                    .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
                q.push(-dot);
                col = (0..k)
                    .map(|i| {
                        (0..k).fold(T::zero(), |acc, j| {
                            acc + self[(i, j)].clone() * col[j].clone()
                        })
                    })
                    .collect();
            }
            let mut next = vec![T::zero(); r + 1];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        *slot = slot.clone() + q[i - j].clone() * vj.clone();
                    }
                }
            }
            v = next;
        }
        v.reverse();
        v
    }

    /// Determinant over a commutative ring.
    pub fn det_ring(&self) -> T {
        let c = self.char_poly_monic();
        if self.rows % 2 == 0 {
            c[0].clone()
        } else {
            -c[0].clone()
        }
    }

    /// `det(self - eta I)` as a polynomial in `eta`.
    pub fn char_poly(&self) -> Poly<T> {
        let c = self.char_poly_monic();
        let sign = if self.rows % 2 == 0 { T::one() } else { -T::one() };
        Poly::new(c.into_iter().map(|a| a * sign.clone()).collect())
    }
}

impl<F: Field> Matrix<F> {
    /// Row-echelon reduction; returns the reduced matrix, pivot columns and
    /// the parity of row swaps.
    fn echelon(&self) -> (Self, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .map(|i| (i, m[(i, c)].magnitude()))
                .filter(|(_, w)| *w > 0.0)
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
            let Some((p, _)) = best else { continue };
            if !F::is_exact() && m[(p, c)].magnitude() < 1e-300 {
                continue;
            }
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                odd = !odd;
            }
            let inv = m[(r, c)].inv();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..m.cols {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, odd)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let (m, pivots, odd) = self.echelon();
        if pivots.len() < self.rows {
            return F::zero();
        }
        let d = (0..self.rows).fold(F::one(), |acc, i| acc * m[(i, i)].clone());
        if odd {
            -d
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        let (m, pivots, _) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| m[(i, n + j)].clone() / m[(i, i)].clone()))
    }

    /// Basis of the right null space, one column per vector, normalized so the
    /// free variable of each vector equals one.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (m, pivots, _) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -(m[(r, f)].clone() / m[(r, pc)].clone());
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        let n = self.rows;
        if !self.is_square() || b.len() != n {
            return Err(Error::Dimension("solve expects a square system".into()));
        }
        let mut aug = Self::zeros(n, n + 1);
        aug.set_block(0, 0, self);
        for (i, bi) in b.iter().enumerate() {
            aug[(i, n)] = bi.clone();
        }
        let (m, pivots, _) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok((0..n).map(|i| m[(i, n)].clone() / m[(i, i)].clone()).collect())
    }

    /// Solves `A X - X B = C` for `X`.
    ///
    /// The operator is invertible exactly when the spectra of `A` and `B` are
    /// disjoint, i.e. when the resultant of their characteristic polynomials
    /// is nonzero; that resultant is checked first on exact fields.
    pub fn sylvester_solve(a: &Self, b: &Self, c: &Self) -> Result<Self> {
        let (m, k) = (a.rows, b.rows);
        if !a.is_square() || !b.is_square() || c.rows != m || c.cols != k {
            return Err(Error::Dimension(format!(
                "Sylvester shapes A {}x{}, B {}x{}, C {}x{}",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols
            )));
        }
        if F::is_exact() {
            let res = super::resultant::resultant(&a.char_poly(), &b.char_poly());
            if res.is_zero() {
                return Err(Error::ResonantSylvester { order: None });
            }
        }
        // Unknown X[i][j] sits at index i * k + j.
        let size = m * k;
        let mut op = Self::zeros(size, size);
        for i in 0..m {
            for j in 0..k {
                let row = i * k + j;
                for l in 0..m {
                    let v = op[(row, l * k + j)].clone() + a[(i, l)].clone();
                    op[(row, l * k + j)] = v;
                }
                for l in 0..k {
                    let v = op[(row, i * k + l)].clone() - b[(l, j)].clone();
                    op[(row, i * k + l)] = v;
                }
            }
        }
        let rhs: Vec<F> = c.data.clone();
        let x = op
            .solve(&rhs)
            .map_err(|_| Error::ResonantSylvester { order: None })?;
        Ok(Matrix {
            rows: m,
            cols: k,
            data: x,
        })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Add for Matrix<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Ring> Sub for Matrix<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for Matrix<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Ring> Mul for Matrix<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(l, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn berkowitz_matches_elimination() {
        let a = m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        assert_eq!(a.det_ring(), a.det());
        let cp = a.char_poly_monic();
        assert_eq!(cp.len(), 4);
        assert_eq!(cp[3], int(1));
        assert_eq!(cp[2], -a.trace());
    }

    #[test]
    fn inverse_rank_nullspace() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.clone() * inv, Matrix::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_err());
        let ns = s.nullspace();
        assert_eq!(ns, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn sylvester_examples() {
        let x = Matrix::sylvester_solve(&m(&[&[2]]), &m(&[&[0]]), &m(&[&[1]])).unwrap();
        assert_eq!(x, Matrix::from_rows(vec![vec![rat(1, 2)]]));
        let err = Matrix::sylvester_solve(&m(&[&[1]]), &m(&[&[1]]), &m(&[&[1]]));
        assert!(matches!(err, Err(Error::ResonantSylvester { .. })));
        let x = Matrix::sylvester_solve(&m(&[&[2, 0], &[0, 3]]), &m(&[&[1]]), &m(&[&[1], &[1]]))
            .unwrap();
        assert_eq!(x, Matrix::from_rows(vec![vec![int(1)], vec![rat(1, 2)]]));
    }
}
