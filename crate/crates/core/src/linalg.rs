//! Dense linear algebra over a prime field `F_p`.
//!
//! Vectors are plain `Vec<u32>` with entries in `[0, p)`. Matrices act on
//! column vectors from the left. Subspaces are stored by a reduced row echelon
//! basis, which makes structural equality the same as equality of subspaces.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A prime modulus. Construction checks primality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p > 65_521 || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub const TWO: Prime = Prime(2);

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.0);
        let mut result = 1u32;
        let mut base = a;
        let mut exp = self.0 - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    /// `p^n`, or `None` on overflow.
    pub fn checked_pow(self, n: usize) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..n {
            acc = acc.checked_mul(self.0 as u64)?;
        }
        Some(acc)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Every vector of `F_p^n` in lexicographic order (first coordinate most
/// significant). Fails when `p^n` exceeds `cap`.
pub fn enumerate_vectors(p: Prime, n: usize, cap: u64) -> Result<Vec<Vec<u32>>> {
    let count = p
        .checked_pow(n)
        .filter(|&c| c <= cap)
        .ok_or(Error::CapExceeded { what: "vector enumeration", cap })?;
    let mut out = Vec::with_capacity(count as usize);
    let mut v = vec![0u32; n];
    for _ in 0..count {
        out.push(v.clone());
        for i in (0..n).rev() {
            v[i] += 1;
            if v[i] < p.get() {
                break;
            }
            v[i] = 0;
        }
    }
    Ok(out)
}

/// A dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<F_{}>{}x{}{:?}", self.p, self.rows, self.cols, self.to_rows())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Solution set of `a·x = b`: one particular solution plus the kernel of `a`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Matrix,
    pub kernel: Subspace,
}

impl Matrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows; entries are reduced mod `p`. All rows must
    /// have length `cols`.
    pub fn from_rows(p: Prime, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&x| x % p.get()));
        }
        Matrix { p, rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(p: Prime, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix columns");
            for (r, &x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x % p.get();
            }
        }
        m
    }

    pub fn from_fn(p: Prime, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = f(r, c) % p.get();
            }
        }
        m
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p.get();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.p, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.p;
        let mut out = Matrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = p.add(out.data[idx], p.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.p;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| p.add(a, b)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| p.sub(a, b)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.p;
        let s = s % p.get();
        let data = self.data.iter().map(|&a| p.mul(a, s)).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.p, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        })
    }

    /// Reduced row echelon form with rank and pivot columns. Zero rows are
    /// kept at the bottom so the shape is unchanged.
    pub fn rref_full(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = p.inv(m.get(row, col));
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = p.mul(m.data[idx], inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = p.mul(factor, m.data[row * m.cols + c]);
                    let idx = r * m.cols + c;
                    m.data[idx] = p.sub(m.data[idx], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    /// RREF with zero rows removed, and the rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let Rref { matrix, rank, .. } = self.rref_full();
        let data = matrix.data[..rank * matrix.cols].to_vec();
        (Matrix { p: self.p, rows: rank, cols: self.cols, data }, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref_full().rank
    }

    /// `{x : self·x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref_full();
        let p = self.p;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let vectors: Vec<Vec<u32>> = (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; n];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = p.neg(matrix.get(r, free));
                }
                v
            })
            .collect();
        Subspace::span(p, n, &vectors)
    }

    /// Column space, as a subspace of `F_p^rows`.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vec<u32>> = (0..self.cols).map(|c| self.column(c)).collect();
        Subspace::span(self.p, self.rows, &cols)
    }

    /// Solves `self·x = b` for a matrix right-hand side.
    pub fn solve(&self, b: &Matrix) -> Result<Solution> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let p = self.p;
        let aug = self.hstack(b);
        let Rref { matrix, pivots, .. } = aug.rref_full();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut particular = Matrix::zeros(p, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                particular.set(pc, j, matrix.get(r, self.cols + j));
            }
        }
        Ok(Solution { particular, kernel: self.kernel() })
    }

    /// Two-sided inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let sol = self.solve(&Matrix::identity(self.p, self.rows)).ok()?;
        (sol.kernel.dim() == 0).then_some(sol.particular)
    }
}

/// A linear subspace of `F_p^n` held as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis.to_rows())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: ambient dimension, then dimension, then the RREF basis
/// entries lexicographically.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.data.cmp(&other.basis.data))
    }
}

impl Subspace {
    pub fn zero(p: Prime, n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::zeros(p, 0, n), pivots: Vec::new() }
    }

    pub fn full(p: Prime, n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::identity(p, n), pivots: (0..n).collect() }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let Rref { matrix, rank, pivots } = m.rref_full();
        let data = matrix.data[..rank * matrix.cols].to_vec();
        Subspace {
            ambient: m.cols,
            basis: Matrix { p: m.p, rows: rank, cols: m.cols, data },
            pivots,
        }
    }

    pub fn span(p: Prime, n: usize, vectors: &[Vec<u32>]) -> Self {
        Self::row_space(&Matrix::from_rows(p, n, vectors))
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.basis.p
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the span from `v`, leaving a vector supported off the pivot
    /// columns. `v` lies in the subspace iff the result is zero.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "reduce: ambient mismatch");
        let p = self.prime();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = p.sub(*o, p.mul(c, b));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// The vector with the given coordinates in the RREF basis.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim(), "combine: coordinate count mismatch");
        let p = self.prime();
        let mut out = vec![0u32; self.ambient];
        for (r, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = p.add(*o, p.mul(c, b));
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "containment across ambients");
        (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    /// `{y : y·w = 0 for all w in self}`.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn meet(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "meet across ambients");
        let a = Subspace::constraint_matrix(self).vstack(&Subspace::constraint_matrix(other));
        a.kernel()
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "join across ambients");
        Subspace::row_space(&self.basis.vstack(&other.basis))
    }

    /// A matrix whose kernel is exactly `s`.
    fn constraint_matrix(s: &Subspace) -> Matrix {
        let ann = s.annihilator();
        ann.basis.clone()
    }

    /// Image of this subspace under `f`.
    pub fn image_under(&self, f: &Matrix) -> Subspace {
        assert_eq!(f.cols(), self.ambient, "image_under: shape mismatch");
        let vecs: Vec<Vec<u32>> = (0..self.dim()).map(|r| f.mul_vec(self.basis.row(r))).collect();
        Subspace::span(self.prime(), f.rows(), &vecs)
    }

    /// Columns not carrying a pivot; the unit vectors at these positions span
    /// a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// The quotient map `F_p^n -> F_p^n / self`, in coordinates given by the
    /// free columns.
    pub fn quotient_map(&self) -> Matrix {
        let free = self.free_columns();
        let p = self.prime();
        let mut q = Matrix::zeros(p, free.len(), self.ambient);
        for j in 0..self.ambient {
            let mut e = vec![0u32; self.ambient];
            e[j] = 1;
            let red = self.reduce(&e);
            for (i, &fc) in free.iter().enumerate() {
                q.set(i, j, red[fc]);
            }
        }
        q
    }

    /// The section of `quotient_map` sending each quotient coordinate to its
    /// unit vector.
    pub fn quotient_lift(&self) -> Matrix {
        let free = self.free_columns();
        let mut l = Matrix::zeros(self.prime(), self.ambient, free.len());
        for (i, &fc) in free.iter().enumerate() {
            l.set(fc, i, 1);
        }
        l
    }

    /// All elements of the subspace, lexicographic in basis coordinates.
    pub fn elements(&self, cap: u64) -> Result<Vec<Vec<u32>>> {
        Ok(enumerate_vectors(self.prime(), self.dim(), cap)?
            .into_iter()
            .map(|c| self.combine(&c))
            .collect())
    }
}

/// `{x : f·x ∈ w}`.
pub fn preimage(f: &Matrix, w: &Subspace) -> Subspace {
    assert_eq!(f.rows(), w.ambient_dim(), "preimage: shape mismatch");
    let constraints = Subspace::constraint_matrix(w);
    constraints.mul(f).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: Prime = Prime::TWO;

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(7).is_ok());
        assert!(matches!(Prime::new(1), Err(Error::NotPrime(1))));
        assert!(matches!(Prime::new(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn field_inverse() {
        let p = Prime::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
    }

    #[test]
    fn rref_identity_and_duplicates() {
        let id = Matrix::identity(P2, 2);
        assert_eq!(id.rref(), (id.clone(), 2));
        let dup = Matrix::from_rows(P2, 2, &[vec![1, 1], vec![1, 1]]);
        let (r, rank) = dup.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.to_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_identity_and_zero() {
        let b = Matrix::from_rows(P2, 1, &[vec![1], vec![0], vec![1]]);
        let sol = Matrix::identity(P2, 3).solve(&b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_zero());

        let z = Matrix::zeros(P2, 2, 3);
        let sol = z.solve(&Matrix::zeros(P2, 2, 1)).unwrap();
        assert!(sol.kernel.is_full());
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_rows(P2, 2, &[vec![1, 1], vec![1, 1]]);
        let b = Matrix::from_rows(P2, 1, &[vec![0], vec![1]]);
        assert!(matches!(a.solve(&b), Err(Error::Inconsistent)));
    }

    #[test]
    fn meet_join_trivial_cases() {
        let u = Subspace::span(P2, 3, &[vec![1, 1, 0]]);
        let full = Subspace::full(P2, 3);
        let zero = Subspace::zero(P2, 3);
        assert_eq!(u.meet(&full), u);
        assert_eq!(u.meet(&zero), zero);
        assert_eq!(u.join(&zero), u);
        assert_eq!(u.join(&full), full);
    }

    #[test]
    fn preimage_trivial_cases() {
        let f = Matrix::from_rows(P2, 3, &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(preimage(&f, &Subspace::full(P2, 2)).is_full());
        let w = Subspace::span(P2, 3, &[vec![0, 1, 1]]);
        assert_eq!(preimage(&Matrix::identity(P2, 3), &w), w);
        assert!(f.kernel().is_subspace_of(&preimage(&f, &Subspace::zero(P2, 2))));
    }

    #[test]
    fn quotient_map_kills_subspace() {
        let p = Prime::new(3).unwrap();
        let s = Subspace::span(p, 3, &[vec![1, 2, 0]]);
        let q = s.quotient_map();
        assert_eq!(q.rows(), 2);
        assert!(q.mul_vec(&[1, 2, 0]).iter().all(|&x| x == 0));
        assert_eq!(q.mul(&s.quotient_lift()), Matrix::identity(p, 2));
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Prime::new(5).unwrap();
        let m = Matrix::from_rows(p, 2, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(p, 2));
        assert!(Matrix::from_rows(p, 2, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn enumerate_vectors_is_lexicographic_and_capped() {
        let all = enumerate_vectors(P2, 2, 16).unwrap();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(matches!(enumerate_vectors(P2, 5, 16), Err(Error::CapExceeded { .. })));
    }
}
