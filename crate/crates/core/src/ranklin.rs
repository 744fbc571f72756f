//! Vectors and matrices over `F_{q^N}`, rank over the base field, and the
//! random matrices and rank-error vectors the cryptosystem draws.

use std::ops::{Index, IndexMut};

use rand::Rng;
use thiserror::Error;

use crate::gf2m::{ExtElem, FieldCtx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("requested rank {rank} is outside 0..={max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("matrix has entries outside the base field")]
    NotBaseField,
}

/// A row vector over `F_{q^N}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtVector(pub Vec<ExtElem>);

impl ExtVector {
    pub fn zeros(n: usize) -> Self {
        ExtVector(vec![ExtElem::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn as_slice(&self) -> &[ExtElem] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExtElem> {
        self.0.iter()
    }

    pub fn random<R: Rng + ?Sized>(ctx: &FieldCtx, n: usize, rng: &mut R) -> Self {
        ExtVector((0..n).map(|_| ctx.random(rng)).collect())
    }

    /// Unit vector `e_i` of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = ExtElem::ONE;
        v
    }

    pub fn add(&self, ctx: &FieldCtx, other: &ExtVector) -> ExtVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        ExtVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| ctx.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &ExtVector) -> ExtVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        ExtVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| ctx.sub(a, b))
                .collect(),
        )
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> ExtVector {
        ExtVector(self.0[range].to_vec())
    }

    /// Entry-wise `σ^i`.
    pub fn frobenius(&self, ctx: &FieldCtx, i: i64) -> ExtVector {
        ExtVector(self.0.iter().map(|&a| ctx.frobenius(a, i)).collect())
    }
}

impl From<Vec<ExtElem>> for ExtVector {
    fn from(v: Vec<ExtElem>) -> Self {
        ExtVector(v)
    }
}

impl Index<usize> for ExtVector {
    type Output = ExtElem;
    fn index(&self, i: usize) -> &ExtElem {
        &self.0[i]
    }
}

impl IndexMut<usize> for ExtVector {
    fn index_mut(&mut self, i: usize) -> &mut ExtElem {
        &mut self.0[i]
    }
}

/// Rank of `v` over `F_q`: the dimension of the `F_q`-span of its entries.
pub fn rank_over_base(ctx: &FieldCtx, v: &[ExtElem]) -> usize {
    if ctx.is_binary() {
        // Each entry is already a packed row of N ≤ 32 coordinate bits.
        let mut rows: Vec<u64> = v.iter().map(|e| e.value()).collect();
        return gf2_rank_words(&mut rows);
    }
    let rows: Vec<Vec<u32>> = v.iter().map(|&e| ctx.coords(e)).collect();
    FqMatrix::from_rows(ctx.q(), ctx.degree(), rows).rank()
}

/// Rank of single-word GF(2) rows.
fn gf2_rank_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Rank of multi-word bit-packed GF(2) rows.
fn gf2_rank_packed(rows: &mut [Vec<u64>]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let Some((w, bit)) = rows[i]
            .iter()
            .enumerate()
            .find(|(_, &x)| x != 0)
            .map(|(w, &x)| (w, x & x.wrapping_neg()))
        else {
            continue;
        };
        rank += 1;
        let (head, tail) = rows.split_at_mut(i + 1);
        let pivot = &head[i];
        for r in tail.iter_mut() {
            if r[w] & bit != 0 {
                for (a, b) in r.iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
    }
    rank
}

/// A dense matrix over `F_{q^N}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExtElem>,
}

impl ExtMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExtMatrix {
            rows,
            cols,
            data: vec![ExtElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExtElem::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExtElem>>) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExtMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExtElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExtMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[ExtElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> ExtVector {
        ExtVector(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> Vec<ExtElem> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn entries(&self) -> &[ExtElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Whether every entry lies in `F_q`.
    pub fn is_over_base(&self, ctx: &FieldCtx) -> bool {
        self.data.iter().all(|&e| ctx.is_base(e))
    }

    pub fn transpose(&self) -> ExtMatrix {
        ExtMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entry-wise `σ^i`.
    pub fn frobenius(&self, ctx: &FieldCtx, i: i64) -> ExtMatrix {
        ExtMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| ctx.frobenius(a, i)).collect(),
        }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &ExtMatrix) -> Result<ExtMatrix, LinAlgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinAlgError::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExtMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ctx.add(a, b))
                .collect(),
        })
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &ExtMatrix) -> Result<ExtMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExtMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] = ctx.add(out[(i, j)], ctx.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `v · M` for a row vector `v`.
    pub fn vec_mul(&self, ctx: &FieldCtx, v: &[ExtElem]) -> Result<ExtVector, LinAlgError> {
        if v.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![ExtElem::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = ctx.add(*o, ctx.mul(a, b));
            }
        }
        Ok(ExtVector(out))
    }

    /// `[self | other]`.
    pub fn concat_cols(&self, other: &ExtMatrix) -> Result<ExtMatrix, LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        Ok(ExtMatrix::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        }))
    }

    /// Stacks `other` below `self`.
    pub fn concat_rows(&self, other: &ExtMatrix) -> Result<ExtMatrix, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ExtMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Result<ExtMatrix, LinAlgError> {
        if rows.end > self.rows
            || cols.end > self.cols
            || rows.start > rows.end
            || cols.start > cols.end
        {
            return Err(LinAlgError::DimensionMismatch(format!(
                "submatrix {rows:?}x{cols:?} of {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(ExtMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows.start + i, cols.start + j)]
        }))
    }

    /// Rank over `F_{q^N}`.
    pub fn rank_ext(&self, ctx: &FieldCtx) -> usize {
        let mut m = self.clone();
        m.row_echelon(ctx).len()
    }

    /// In-place forward elimination; returns pivot columns.
    fn row_echelon(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = ctx.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = ctx.mul(self[(r, j)], inv);
            }
            for i in r + 1..self.rows {
                let f = self[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = ctx.mul(f, self[(r, j)]);
                    self[(i, j)] = ctx.sub(self[(i, j)], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Basis of the right null space `{x : M xᵀ = 0}` over `F_{q^N}`.
    pub fn right_nullspace(&self, ctx: &FieldCtx) -> Vec<ExtVector> {
        let mut m = self.clone();
        let pivots = m.row_echelon(ctx);
        // Back-substitute to reduced form.
        for (r, &c) in pivots.iter().enumerate().rev() {
            for i in 0..r {
                let f = m[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = ctx.mul(f, m[(r, j)]);
                    m[(i, j)] = ctx.sub(m[(i, j)], v);
                }
            }
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut x = vec![ExtElem::ZERO; self.cols];
                x[f] = ExtElem::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = ctx.neg(m[(r, f)]);
                }
                ExtVector(x)
            })
            .collect()
    }

    /// Inverse of a square nonsingular matrix by Gauss–Jordan elimination.
    pub fn inverse(&self, ctx: &FieldCtx) -> Result<ExtMatrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = self.concat_cols(&ExtMatrix::identity(n))?;
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !aug[(i, c)].is_zero())
                .ok_or(LinAlgError::Singular)?;
            aug.swap_rows(c, p);
            let inv = ctx.inv(aug[(c, c)]).expect("pivot is nonzero");
            for j in 0..2 * n {
                aug[(c, j)] = ctx.mul(aug[(c, j)], inv);
            }
            for i in 0..n {
                let f = aug[(i, c)];
                if i == c || f.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let v = ctx.mul(f, aug[(c, j)]);
                    aug[(i, j)] = ctx.sub(aug[(i, j)], v);
                }
            }
        }
        aug.submatrix(0..n, n..2 * n)
    }

    /// Solves `x · self = b` for `x`, returning one solution if any exists.
    pub fn solve_left(&self, ctx: &FieldCtx, b: &[ExtElem]) -> Option<ExtVector> {
        if b.len() != self.cols {
            return None;
        }
        // x·M = b  ⇔  Mᵀ xᵀ = bᵀ.
        let t = self.transpose();
        let n = t.rows;
        let m = t.cols;
        let mut aug = t
            .concat_cols(&ExtMatrix {
                rows: n,
                cols: 1,
                data: b.to_vec(),
            })
            .ok()?;
        let pivots = aug.row_echelon(ctx);
        if pivots.last() == Some(&m) {
            return None;
        }
        let mut x = vec![ExtElem::ZERO; m];
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = aug[(r, m)];
            for j in c + 1..m {
                acc = ctx.sub(acc, ctx.mul(aug[(r, j)], x[j]));
            }
            x[c] = acc;
        }
        Some(ExtVector(x))
    }

    /// Column rank over `F_q`: the `F_q`-dimension spanned by the columns.
    pub fn column_rank_over_base(&self, ctx: &FieldCtx) -> usize {
        let n = ctx.degree();
        if ctx.is_binary() {
            let bits = self.rows * n;
            let words = bits.div_ceil(64);
            let mut packed: Vec<Vec<u64>> = (0..self.cols)
                .map(|j| {
                    let mut w = vec![0u64; words];
                    for i in 0..self.rows {
                        let v = self[(i, j)].value();
                        for b in 0..n {
                            if v >> b & 1 == 1 {
                                let pos = i * n + b;
                                w[pos / 64] |= 1 << (pos % 64);
                            }
                        }
                    }
                    w
                })
                .collect();
            return gf2_rank_packed(&mut packed);
        }
        let rows: Vec<Vec<u32>> = (0..self.cols)
            .map(|j| {
                self.column(j)
                    .into_iter()
                    .flat_map(|e| ctx.coords(e))
                    .collect()
            })
            .collect();
        FqMatrix::from_rows(ctx.q(), self.rows * n, rows).rank()
    }

    /// Lifts a base-field matrix into the extension field.
    pub fn from_base(ctx: &FieldCtx, m: &FqMatrix) -> ExtMatrix {
        ExtMatrix::from_fn(m.rows(), m.cols(), |i, j| ctx.base(m[(i, j)]))
    }

    pub fn random<R: Rng + ?Sized>(ctx: &FieldCtx, rows: usize, cols: usize, rng: &mut R) -> Self {
        ExtMatrix::from_fn(rows, cols, |_, _| ctx.random(rng))
    }

    pub fn random_base<R: Rng + ?Sized>(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        ExtMatrix::from_fn(rows, cols, |_, _| ctx.base(ctx.random_base(rng)))
    }

    /// A uniformly random invertible matrix by rejection sampling.
    pub fn random_invertible<R: Rng + ?Sized>(
        ctx: &FieldCtx,
        size: usize,
        base_field_only: bool,
        rng: &mut R,
    ) -> Self {
        Self::random_full_row_rank(ctx, size, size, base_field_only, rng)
    }

    /// A random `rows × cols` matrix of rank `rows` (requires `rows ≤ cols`).
    pub fn random_full_row_rank<R: Rng + ?Sized>(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        base_field_only: bool,
        rng: &mut R,
    ) -> Self {
        assert!(rows <= cols, "full row rank needs rows <= cols");
        loop {
            let m = if base_field_only {
                Self::random_base(ctx, rows, cols, rng)
            } else {
                Self::random(ctx, rows, cols, rng)
            };
            if m.rank_ext(ctx) == rows {
                return m;
            }
        }
    }
}

impl Index<(usize, usize)> for ExtMatrix {
    type Output = ExtElem;
    fn index(&self, (i, j): (usize, usize)) -> &ExtElem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExtMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExtElem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// A dense matrix over the prime field `F_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FqMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        FqMatrix {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(q: u32, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        FqMatrix {
            q,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().map(|c| c % q).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(q: u32, rows: usize, cols: usize, rng: &mut R) -> Self {
        FqMatrix {
            q,
            rows,
            cols,
            data: (0..rows * cols).map(|_| rng.gen_range(0..q)).collect(),
        }
    }

    /// Random matrix of rank `min(rows, cols)`, by rejection.
    pub fn random_full_rank<R: Rng + ?Sized>(
        q: u32,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        loop {
            let m = Self::random(q, rows, cols, rng);
            if m.rank() == rows.min(cols) {
                return m;
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn inv_scalar(&self, a: u32) -> u32 {
        let p = u64::from(self.q);
        let (mut base, mut e, mut acc) = (u64::from(a), p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = u64::from(self.q);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = u64::from(self.inv_scalar(self[(r, c)]));
            for j in 0..self.cols {
                self[(r, j)] = (u64::from(self[(r, j)]) * inv % p) as u32;
            }
            for i in 0..self.rows {
                let f = u64::from(self[(i, c)]);
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let sub = f * u64::from(self[(r, j)]) % p;
                    self[(i, j)] = ((u64::from(self[(i, j)]) + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.q == 2 {
            let words = self.cols.div_ceil(64).max(1);
            let mut packed: Vec<Vec<u64>> = (0..self.rows)
                .map(|i| {
                    let mut w = vec![0u64; words];
                    for (j, &c) in self.row(i).iter().enumerate() {
                        if c == 1 {
                            w[j / 64] |= 1 << (j % 64);
                        }
                    }
                    w
                })
                .collect();
            return gf2_rank_packed(&mut packed);
        }
        self.clone().rref().len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u32; self.cols];
                x[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = (self.q - m[(r, f)]) % self.q;
                }
                x
            })
            .collect()
    }

    /// One solution of `M x = b`, if the system is consistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = FqMatrix::zeros(self.q, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i] % self.q;
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)];
        }
        Some(x)
    }
}

impl Index<(usize, usize)> for FqMatrix {
    type Output = u32;
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FqMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        &mut self.data[i * self.cols + j]
    }
}

/// `w_1 … w_r` drawn until `F_q`-independent.
pub fn random_independent<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    count: usize,
    rng: &mut R,
) -> Result<Vec<ExtElem>, LinAlgError> {
    if count > ctx.degree() {
        return Err(LinAlgError::RankOutOfRange {
            rank: count,
            max: ctx.degree(),
        });
    }
    loop {
        let w: Vec<ExtElem> = (0..count).map(|_| ctx.random(rng)).collect();
        if rank_over_base(ctx, &w) == count {
            return Ok(w);
        }
    }
}

/// A rank error `e = w · A` together with its decomposition.
#[derive(Debug, Clone)]
pub struct RankError {
    pub e: ExtVector,
    /// `F_q`-independent span elements.
    pub w: Vec<ExtElem>,
    /// `t × n` base-field coefficient matrix of rank `t`.
    pub a: FqMatrix,
}

/// How the rank of a sampled error is constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorRank {
    Exactly(usize),
    AtMost(usize),
}

impl ErrorRank {
    pub fn bound(self) -> usize {
        match self {
            ErrorRank::Exactly(t) | ErrorRank::AtMost(t) => t,
        }
    }
}

/// Samples a length-`n` vector of rank exactly `t`, returning the `e = w·A`
/// witness.
pub fn sample_error_witness<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    n: usize,
    t: usize,
    rng: &mut R,
) -> Result<RankError, LinAlgError> {
    let max = n.min(ctx.degree());
    if t > max {
        return Err(LinAlgError::RankOutOfRange { rank: t, max });
    }
    let w = random_independent(ctx, t, rng)?;
    let a = FqMatrix::random_full_rank(ctx.q(), t, n, rng);
    let mut e = vec![ExtElem::ZERO; n];
    for (r, &wr) in w.iter().enumerate() {
        for (j, ej) in e.iter_mut().enumerate() {
            *ej = ctx.add(*ej, ctx.scale(a[(r, j)], wr));
        }
    }
    Ok(RankError {
        e: ExtVector(e),
        w,
        a,
    })
}

/// Samples a length-`n` error vector of rank exactly `t`.
pub fn sample_error<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    n: usize,
    t: usize,
    rng: &mut R,
) -> Result<ExtVector, LinAlgError> {
    Ok(sample_error_witness(ctx, n, t, rng)?.e)
}

/// Samples an error under either rank constraint.
///
/// `AtMost(t)` draws `w` and `A` without independence conditions, so every
/// vector of rank `≤ t` has positive probability and rank `t` dominates.
pub fn sample_error_with<R: Rng + ?Sized>(
    ctx: &FieldCtx,
    n: usize,
    rank: ErrorRank,
    rng: &mut R,
) -> Result<ExtVector, LinAlgError> {
    match rank {
        ErrorRank::Exactly(t) => sample_error(ctx, n, t, rng),
        ErrorRank::AtMost(t) => {
            let max = n.min(ctx.degree());
            if t > max {
                return Err(LinAlgError::RankOutOfRange { rank: t, max });
            }
            let w: Vec<ExtElem> = (0..t).map(|_| ctx.random(rng)).collect();
            let a = FqMatrix::random(ctx.q(), t, n, rng);
            Ok(ExtVector(
                (0..n)
                    .map(|j| {
                        w.iter().enumerate().fold(ExtElem::ZERO, |acc, (r, &wr)| {
                            ctx.add(acc, ctx.scale(a[(r, j)], wr))
                        })
                    })
                    .collect(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf16() -> FieldCtx {
        FieldCtx::new(2, 4, &[1, 1, 0, 0, 1]).unwrap()
    }

    fn powers(ctx: &FieldCtx, k: u64) -> Vec<ExtElem> {
        (0..k).map(|i| ctx.pow(ctx.alpha(), i)).collect()
    }

    /// Brute force: the largest subset size with no nontrivial F_q relation.
    fn brute_rank(ctx: &FieldCtx, v: &[ExtElem]) -> usize {
        let q = ctx.q() as usize;
        let n = v.len();
        let total = q.pow(n as u32);
        // Dimension of the span = log_q of the number of distinct combinations.
        let mut span = std::collections::HashSet::new();
        for idx in 0..total {
            let mut x = idx;
            let mut acc = ExtElem::ZERO;
            for &e in v {
                acc = ctx.add(acc, ctx.scale((x % q) as u32, e));
                x /= q;
            }
            span.insert(acc);
        }
        let mut dim = 0;
        while q.pow(dim) < span.len() {
            dim += 1;
        }
        dim as usize
    }

    #[test]
    fn rank_over_base_examples() {
        let f = gf16();
        let a = f.alpha();
        assert_eq!(rank_over_base(&f, &[ExtElem::ZERO; 4]), 0);
        assert_eq!(rank_over_base(&f, &powers(&f, 4)), 4);
        let v = [a, a, f.add(ExtElem::ONE, a), ExtElem::ZERO];
        assert_eq!(rank_over_base(&f, &v), brute_rank(&f, &v));
        assert_eq!(rank_over_base(&f, &v), 2);
    }

    #[test]
    fn rank_over_base_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ctx in [
            FieldCtx::binary(5).unwrap(),
            FieldCtx::with_default_modulus(3, 3).unwrap(),
        ] {
            for n in 1..=6 {
                for _ in 0..30 {
                    // Bias towards dependent vectors by reusing a few elements.
                    let pool: Vec<ExtElem> = (0..3).map(|_| ctx.random(&mut rng)).collect();
                    let v: Vec<ExtElem> = (0..n)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                ctx.add(pool[rng.gen_range(0..3)], pool[rng.gen_range(0..3)])
                            } else {
                                ctx.random(&mut rng)
                            }
                        })
                        .collect();
                    assert_eq!(rank_over_base(&ctx, &v), brute_rank(&ctx, &v));
                }
            }
        }
    }

    #[test]
    fn column_rank_examples() {
        let f = gf16();
        assert_eq!(ExtMatrix::zeros(3, 4).column_rank_over_base(&f), 0);
        assert_eq!(ExtMatrix::identity(4).column_rank_over_base(&f), 4);
        let row = powers(&f, 4);
        let m = ExtMatrix::from_rows(vec![row.clone(), row]).unwrap();
        assert_eq!(m.column_rank_over_base(&f), 4);
        let ctx3 = FieldCtx::with_default_modulus(3, 3).unwrap();
        assert_eq!(ExtMatrix::identity(3).column_rank_over_base(&ctx3), 3);
    }

    #[test]
    fn rank_ext_examples() {
        let f = gf16();
        assert_eq!(ExtMatrix::identity(3).rank_ext(&f), 3);
        let r = powers(&f, 4);
        let s5 = f.pow(f.alpha(), 5);
        let scaled: Vec<ExtElem> = r.iter().map(|&x| f.mul(s5, x)).collect();
        let m = ExtMatrix::from_rows(vec![r.clone(), r.clone(), scaled]).unwrap();
        assert!(m.rank_ext(&f) < 3);
        // Moore matrix with independent entries.
        let g = powers(&f, 4);
        let moore = ExtMatrix::from_fn(2, 4, |i, j| f.frobenius(g[j], i as i64));
        assert_eq!(moore.rank_ext(&f), 2);
    }

    #[test]
    fn inverse_and_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ctx = FieldCtx::binary(12).unwrap();
        let one = ExtMatrix::random_invertible(&ctx, 1, true, &mut rng);
        assert_eq!(one, ExtMatrix::identity(1));
        for base in [true, false] {
            for _ in 0..100 {
                let s = ExtMatrix::random_invertible(&ctx, 6, base, &mut rng);
                assert_eq!(s.rank_ext(&ctx), 6);
                assert_eq!(s.is_over_base(&ctx), base || s.is_over_base(&ctx));
                let inv = s.inverse(&ctx).unwrap();
                assert_eq!(s.mul(&ctx, &inv).unwrap(), ExtMatrix::identity(6));
                assert_eq!(s.mul(&ctx, &ExtMatrix::identity(6)).unwrap(), s);
                let m = ExtVector::random(&ctx, 6, &mut rng);
                let ms = s.vec_mul(&ctx, m.as_slice()).unwrap();
                assert_eq!(inv.vec_mul(&ctx, ms.as_slice()).unwrap(), m);
                assert_eq!(s.solve_left(&ctx, ms.as_slice()).unwrap(), m);
            }
        }
        let singular = ExtMatrix::zeros(2, 2);
        assert_eq!(singular.inverse(&ctx), Err(LinAlgError::Singular));
        assert!(ExtMatrix::zeros(2, 3).inverse(&ctx).is_err());
        assert!(ExtMatrix::zeros(2, 3)
            .mul(&ctx, &ExtMatrix::zeros(2, 3))
            .is_err());
    }

    #[test]
    fn block_helpers() {
        let ctx = gf16();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = ExtMatrix::random(&ctx, 3, 2, &mut rng);
        let b = ExtMatrix::random(&ctx, 3, 4, &mut rng);
        let ab = a.concat_cols(&b).unwrap();
        assert_eq!(ab.submatrix(0..3, 0..2).unwrap(), a);
        assert_eq!(ab.submatrix(0..3, 2..6).unwrap(), b);
        assert!(a.concat_cols(&ExtMatrix::zeros(2, 2)).is_err());
        assert!(ab.submatrix(0..4, 0..1).is_err());
    }

    #[test]
    fn sampled_errors_have_requested_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ctx = FieldCtx::binary(12).unwrap();
        assert!(sample_error(&ctx, 12, 0, &mut rng).unwrap().is_zero());
        for _ in 0..1000 {
            let w = sample_error_witness(&ctx, 12, 3, &mut rng).unwrap();
            assert_eq!(rank_over_base(&ctx, w.e.as_slice()), 3);
            assert_eq!(w.a.rank(), 3);
        }
        let f = gf16();
        for _ in 0..50 {
            let e = sample_error(&f, 4, 1, &mut rng).unwrap();
            assert_eq!(rank_over_base(&f, e.as_slice()), 1);
            let beta = *e.iter().find(|x| !x.is_zero()).unwrap();
            assert!(e.iter().all(|&x| x.is_zero() || x == beta));
        }
        assert!(sample_error(&ctx, 4, 5, &mut rng).is_err());
        for _ in 0..200 {
            let e = sample_error_with(&ctx, 12, ErrorRank::AtMost(2), &mut rng).unwrap();
            assert!(rank_over_base(&ctx, e.as_slice()) <= 2);
        }
    }

    #[test]
    fn fq_nullspace_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [2, 3, 5] {
            for _ in 0..50 {
                let m = FqMatrix::random(q, 4, 7, &mut rng);
                let ns = m.nullspace();
                assert_eq!(ns.len(), 7 - m.rank());
                for x in &ns {
                    for i in 0..4 {
                        let s: u32 = (0..7).map(|j| m[(i, j)] * x[j]).sum::<u32>() % q;
                        assert_eq!(s, 0);
                    }
                }
                let x: Vec<u32> = (0..7).map(|_| rng.gen_range(0..q)).collect();
                let b: Vec<u32> = (0..4)
                    .map(|i| (0..7).map(|j| m[(i, j)] * x[j]).sum::<u32>() % q)
                    .collect();
                let y = m.solve(&b).unwrap();
                let b2: Vec<u32> = (0..4)
                    .map(|i| (0..7).map(|j| m[(i, j)] * y[j]).sum::<u32>() % q)
                    .collect();
                assert_eq!(b, b2);
            }
        }
    }
}
