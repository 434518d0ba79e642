//! Exact dense linear algebra over `Rational`.
//!
//! Matrices act on column vectors. Subspaces are stored as the reduced row
//! echelon form of a row basis, which makes subspace equality plain matrix
//! equality. Elimination is naive rational Gauss–Jordan with the pivot row
//! normalized to 1; the `Rational` fast path keeps the small entries that
//! dominate Hecke-module matrices cheap.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{usage, Result};
use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
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

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(r).iter().zip(v) {
                    acc.add_mul(a, x);
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// Trace of `self * other` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Rational {
        assert!(self.rows == other.cols && self.cols == other.rows);
        let mut t = Rational::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                t.add_mul(&self[(i, k)], &other[(k, i)]);
            }
        }
        t
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.matmul(&sq);
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let (red, _) = rref(&aug);
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            if !red[(r, r)].is_one() {
                return None;
            }
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    /// The square submatrix on the given row/column index set.
    pub fn principal_block(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (a, &r) in idx.iter().enumerate() {
            for (b, &c) in idx.iter().enumerate() {
                m[(a, b)] = self[(r, c)].clone();
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    /// (pivot column, row) with the pivot entry equal to 1 and every other
    /// row zero in that column.
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Echelon { ambient, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` in place against the current basis.
    pub fn reduce(&self, v: &mut [Rational]) {
        debug_assert_eq!(v.len(), self.ambient);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    x.sub_mul(&f, r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rational::is_zero)
    }

    /// Adds `v` to the span; returns false if it was already in it.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    x.sub_mul(&f, r);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn into_subspace(mut self) -> Subspace {
        self.rows.sort_by_key(|(p, _)| *p);
        let basis = self.rows.into_iter().map(|(_, r)| r).collect::<Vec<_>>();
        Subspace {
            ambient: self.ambient,
            basis: if basis.is_empty() { Matrix::zeros(0, self.ambient) } else { Matrix::from_rows(basis) },
        }
    }
}

/// A linear subspace of Q^ambient in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Echelon::new(ambient).into_subspace()
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, Matrix::identity(ambient).row_vectors())
    }

    pub fn from_vectors<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis rows in reduced row echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim()).map(|r| self.basis.row(r).iter().position(|x| !x.is_zero()).unwrap()).collect()
    }

    pub fn to_echelon(&self) -> Echelon {
        Echelon { ambient: self.ambient, rows: self.pivots().into_iter().zip(self.basis_vectors()).collect() }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.to_echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let e = self.to_echelon();
        other.basis_vectors().iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut e = self.to_echelon();
        for v in other.basis_vectors() {
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the RREF basis:
    /// simply the entries at the pivot columns.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.pivots().into_iter().map(|p| v[p].clone()).collect()
    }

    /// The subspace `{ x : <x, b> = 0 for every basis vector b }`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// Reduced row echelon form and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut e = Echelon::new(m.cols());
    for r in 0..m.rows() {
        e.insert(m.row(r).to_vec());
    }
    let rank = e.dim();
    let s = e.into_subspace();
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..rank {
        for c in 0..m.cols() {
            out[(r, c)] = s.basis[(r, c)].clone();
        }
    }
    (out, rank)
}

fn kernel_of_echelon(e: &Echelon) -> Subspace {
    let n = e.ambient();
    let mut pivot_row = vec![None; n];
    for (i, (p, _)) in e.rows.iter().enumerate() {
        pivot_row[*p] = Some(i);
    }
    let mut vecs = Vec::new();
    for f in (0..n).filter(|&c| pivot_row[c].is_none()) {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (p, row) in &e.rows {
            if !row[f].is_zero() {
                v[*p] = -&row[f];
            }
        }
        vecs.push(v);
    }
    Subspace::from_vectors(n, vecs)
}

/// `{ v : m v = 0 }`.
pub fn kernel(m: &Matrix) -> Subspace {
    let mut e = Echelon::new(m.cols());
    for r in 0..m.rows() {
        e.insert(m.row(r).to_vec());
    }
    kernel_of_echelon(&e)
}

/// All `d × e` matrices `X` with `A_k X = X B_k` for every pair, returned as
/// a subspace of Q^(d·e) in row-major flattening.
pub fn solve_hom_system(blocks: &[(Matrix, Matrix)]) -> Result<Subspace> {
    let (d, e) = hom_shape(blocks)?;
    let support: Vec<(usize, usize)> = (0..d).flat_map(|t| (0..e).map(move |s| (t, s))).collect();
    solve_hom_system_on(blocks, d, e, &support)
}

fn hom_shape(blocks: &[(Matrix, Matrix)]) -> Result<(usize, usize)> {
    let Some((a0, b0)) = blocks.first() else {
        return Err(usage!("intertwiner system needs at least one constraint pair"));
    };
    let (d, e) = (a0.rows(), b0.rows());
    for (a, b) in blocks {
        if !a.is_square() || !b.is_square() || a.rows() != d || b.rows() != e {
            return Err(usage!("intertwiner constraint pairs have inconsistent shapes"));
        }
    }
    Ok((d, e))
}

/// As [`solve_hom_system`], but only the entries listed in `support` may be
/// nonzero. Used when the shape of every intertwiner is known in advance
/// (for instance block-diagonal with respect to weight spaces).
pub fn solve_hom_system_on(
    blocks: &[(Matrix, Matrix)],
    d: usize,
    e: usize,
    support: &[(usize, usize)],
) -> Result<Subspace> {
    if !blocks.is_empty() {
        let (bd, be) = hom_shape(blocks)?;
        if (bd, be) != (d, e) {
            return Err(usage!("intertwiner shape does not match the constraint pairs"));
        }
    }
    let mut column = vec![None; d * e];
    for (k, &(t, s)) in support.iter().enumerate() {
        column[t * e + s] = Some(k);
    }
    let nunk = support.len();
    let mut sys = Echelon::new(nunk);
    let mut rows_of_x: Vec<Vec<usize>> = vec![Vec::new(); d];
    for &(t, s) in support {
        rows_of_x[t].push(s);
    }
    for (a, b) in blocks {
        for r in 0..d {
            for s in 0..e {
                if sys.dim() == nunk {
                    break;
                }
                // (A X)[r][s] - (X B)[r][s]
                let mut eq = vec![Rational::zero(); nunk];
                let mut nonzero = false;
                for t in 0..d {
                    if let Some(k) = column[t * e + s] {
                        if !a[(r, t)].is_zero() {
                            eq[k] += &a[(r, t)];
                            nonzero = true;
                        }
                    }
                }
                for &t in &rows_of_x[r] {
                    let k = column[r * e + t].unwrap();
                    if !b[(t, s)].is_zero() {
                        eq[k] -= &b[(t, s)];
                        nonzero = true;
                    }
                }
                if nonzero {
                    sys.insert(eq);
                }
            }
        }
    }
    let sol = kernel_of_echelon(&sys);
    let full = sol.basis_vectors().into_iter().map(|v| {
        let mut x = vec![Rational::zero(); d * e];
        for (k, val) in v.into_iter().enumerate() {
            let (t, s) = support[k];
            x[t * e + s] = val;
        }
        x
    });
    Ok(Subspace::from_vectors(d * e, full))
}

/// Smallest subspace containing `seed` and invariant under every generator.
pub fn spin(generators: &[Matrix], seed: &Subspace) -> Subspace {
    let n = seed.ambient();
    assert!(
        generators.iter().all(|g| g.is_square() && g.rows() == n),
        "generators must be square of the ambient dimension"
    );
    let mut e = seed.to_echelon();
    let mut queue: VecDeque<Vec<Rational>> = seed.basis_vectors().into();
    while let Some(v) = queue.pop_front() {
        for g in generators {
            let w = g.mul_vec(&v);
            if e.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    e.into_subspace()
}

/// Spinning closure of one vector that also records, for every new basis
/// vector, the word of generator indices producing it from the seed (the
/// seed itself has the empty word). Words are applied right-to-left:
/// `[g1, g2]` means `G[g1] · G[g2] · seed`.
pub fn spin_words(generators: &[Matrix], seed: Vec<Rational>) -> Vec<(Vec<usize>, Vec<Rational>)> {
    let n = seed.len();
    let mut e = Echelon::new(n);
    let mut out = Vec::new();
    if !e.insert(seed.clone()) {
        return out;
    }
    out.push((Vec::new(), seed));
    let mut next = 0;
    while next < out.len() {
        let (word, v) = out[next].clone();
        next += 1;
        for (k, g) in generators.iter().enumerate() {
            let w = g.mul_vec(&v);
            if e.insert(w.clone()) {
                let mut word2 = Vec::with_capacity(word.len() + 1);
                word2.push(k);
                word2.extend_from_slice(&word);
                out.push((word2, w));
            }
        }
    }
    out
}
