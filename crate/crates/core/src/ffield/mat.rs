use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// 0 means "use the per-field default".
static GREASE_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// Override the grease depth used by [`Mat::mul`] (`None` restores the
/// defaults: 8 for q = 2, 4 for q = 3, 1 otherwise). Results do not depend
/// on this setting.
pub fn set_grease_depth(depth: Option<usize>) {
    GREASE_OVERRIDE.store(depth.unwrap_or(0).min(16), Ordering::Relaxed);
}

pub fn grease_depth(field: &Field) -> usize {
    match GREASE_OVERRIDE.load(Ordering::Relaxed) {
        0 => match field.q() {
            2 => 8,
            3 => 4,
            _ => 1,
        },
        d => d,
    }
}

/// Dense row-major matrix over a finite field, one byte per entry.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Output of [`Mat::echelonize`]: `transform · m = rref`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub rref: Mat,
    pub transform: Mat,
}

impl Mat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: Elem) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for {rows}x{cols}", data.len())));
        }
        if let Some(&bad) = data.iter().find(|&&x| x as u32 >= field.q()) {
            return Err(Error::Domain(format!("entry {bad} not in {}", field.name())));
        }
        Ok(Mat { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// A single row vector.
    pub fn row_vector(field: &Field, v: &[Elem]) -> Self {
        Mat { field: field.clone(), rows: 1, cols: v.len(), data: v.to_vec() }
    }

    pub fn field(&self) -> &Field {
        &self.field
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
    pub fn data(&self) -> &[Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }
    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.row(i).iter().enumerate().all(|(j, &x)| x == (i == j) as Elem))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Shape(format!("field mismatch {:?} vs {:?}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("add: dimension mismatch".into()));
        }
        let mut out = self.clone();
        self.field.axpy(&mut out.data, 1, &other.data);
        Ok(out)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("sub: dimension mismatch".into()));
        }
        let mut out = self.clone();
        self.field.axpy(&mut out.data, self.field.neg(1), &other.data);
        Ok(out)
    }

    /// `self += c * other` in place.
    pub fn add_scaled(&mut self, c: Elem, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn scaled(&self, c: Elem) -> Mat {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    /// Exact product. Dispatches between a greased row-combination kernel,
    /// a sparse-right-factor kernel and the plain row-combination kernel;
    /// all produce identical output.
    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!("mul: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let size = other.rows * other.cols;
        if size > 0 && other.nnz() * 16 <= size {
            return Ok(self.mul_sparse_right(other));
        }
        let g = grease_depth(&self.field);
        if g > 1 && self.rows >= 16 {
            Ok(self.mul_greased(other, g))
        } else {
            Ok(self.mul_rowcomb(other))
        }
    }

    pub(crate) fn mul_rowcomb(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a != 0 {
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        out
    }

    fn mul_sparse_right(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let nz: Vec<Vec<(usize, Elem)>> = other
            .row_iter()
            .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect())
            .collect();
        let mut out = Mat::zero(f, self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let arow = f.mul_row(a);
                for &(j, b) in &nz[k] {
                    dst[j] = f.add(dst[j], arow[b as usize]);
                }
            }
        }
        out
    }

    /// Greased multiplication: for each block of `depth` rows of `other`,
    /// tabulate all q^depth linear combinations once, then add one table
    /// row per row of `self`.
    fn mul_greased(&self, other: &Mat, depth: usize) -> Mat {
        let f = &self.field;
        let q = f.q() as usize;
        let n = other.cols;
        let mut out = Mat::zero(f, self.rows, n);
        let mut table: Vec<Elem> = Vec::new();
        let mut k0 = 0;
        while k0 < other.rows {
            let d = depth.min(other.rows - k0);
            let entries = q.pow(d as u32);
            table.clear();
            table.resize(entries * n, 0);
            let mut size = 1;
            for t in 0..d {
                let src = other.row(k0 + t);
                for c in 1..q {
                    for j in 0..size {
                        let dst_idx = j + c * size;
                        let (lo, hi) = table.split_at_mut(dst_idx * n);
                        let dst = &mut hi[..n];
                        dst.copy_from_slice(&lo[j * n..(j + 1) * n]);
                        f.axpy(dst, c as Elem, src);
                    }
                }
                size *= q;
            }
            for i in 0..self.rows {
                let arow = &self.row(i)[k0..k0 + d];
                let mut idx = 0;
                for &a in arow.iter().rev() {
                    idx = idx * q + a as usize;
                }
                if idx != 0 {
                    f.axpy(&mut out.data[i * n..(i + 1) * n], 1, &table[idx * n..(idx + 1) * n]);
                }
            }
            k0 += d;
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a != 0 {
                self.field.axpy(&mut out, a, self.row(k));
            }
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("pow of non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// p(self) by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("eval_poly on non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = Mat::zero(&self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let v = acc.get(i, i);
                acc.set(i, i, self.field.add(v, c));
            }
        }
        Ok(acc)
    }

    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zero(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    let dst = &mut out.data[(i * other.rows + k) * c + j * other.cols..][..other.cols];
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn block_diag(blocks: &[&Mat]) -> Result<Mat> {
        let field = blocks.first().ok_or_else(|| Error::Shape("empty block list".into()))?.field.clone();
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(&field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field != field {
                return Err(Error::Shape("block_diag: field mismatch".into()));
            }
            for i in 0..b.rows {
                out.data[(r0 + i) * c + c0..][..b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[&Mat]) -> Result<Mat> {
        let first = blocks.first().ok_or_else(|| Error::Shape("empty stack".into()))?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols || b.field != first.field {
                return Err(Error::Shape("vstack: column mismatch".into()));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(Mat { field: first.field.clone(), rows, cols, data })
    }

    pub fn hstack(blocks: &[&Mat]) -> Result<Mat> {
        let first = blocks.first().ok_or_else(|| Error::Shape("empty stack".into()))?;
        let rows = first.rows;
        if blocks.iter().any(|b| b.rows != rows || b.field != first.field) {
            return Err(Error::Shape("hstack: row mismatch".into()));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend_from_slice(b.row(i));
            }
        }
        Ok(Mat { field: first.field.clone(), rows, cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend(idx.iter().map(|&j| r[j]));
        }
        Mat { field: self.field.clone(), rows: self.rows, cols: idx.len(), data }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            data.extend_from_slice(&self.row(i)[c0..c0 + cols]);
        }
        Mat { field: self.field.clone(), rows, cols, data }
    }

    /// Flatten to a single row (row-major).
    pub fn flatten(&self) -> Vec<Elem> {
        self.data.clone()
    }

    pub fn reshape(&self, rows: usize, cols: usize) -> Result<Mat> {
        if rows * cols != self.data.len() {
            return Err(Error::Shape("reshape: size mismatch".into()));
        }
        Ok(Mat { field: self.field.clone(), rows, cols, data: self.data.clone() })
    }

    /// In-place Gauss–Jordan; applies the same row operations to `aug`
    /// when given. Returns the pivot columns.
    fn rref_in_place(&mut self, mut aug: Option<&mut Mat>) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(r) = (rank..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if r != rank {
                swap_rows(&mut self.data, cols, r, rank);
                if let Some(a) = aug.as_deref_mut() {
                    let ac = a.cols;
                    swap_rows(&mut a.data, ac, r, rank);
                }
            }
            let inv = f.inv(self.data[rank * cols + c]).expect("nonzero pivot");
            f.scale(&mut self.data[rank * cols + c..(rank + 1) * cols], inv);
            if let Some(a) = aug.as_deref_mut() {
                f.scale(a.row_mut(rank), inv);
            }
            for r2 in 0..rows {
                if r2 == rank {
                    continue;
                }
                let x = self.data[r2 * cols + c];
                if x == 0 {
                    continue;
                }
                let m = f.neg(x);
                let (src, dst) = two_rows(&mut self.data, cols, rank, r2);
                f.axpy(&mut dst[c..], m, &src[c..]);
                if let Some(a) = aug.as_deref_mut() {
                    let ac = a.cols;
                    let (src, dst) = two_rows(&mut a.data, ac, rank, r2);
                    f.axpy(dst, m, src);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    /// Reduced row echelon form with pivot columns (no transform).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place(None);
        (m, piv)
    }

    pub fn echelonize(&self) -> Echelon {
        let mut m = self.clone();
        let mut t = Mat::identity(&self.field, self.rows);
        let pivots = m.rref_in_place(Some(&mut t));
        Echelon { rank: pivots.len(), pivots, rref: m, transform: t }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of the row space, in reduced echelon form.
    pub fn row_space(&self) -> (Mat, Vec<usize>) {
        let (m, piv) = self.rref();
        let r = piv.len();
        (m.submatrix(0, 0, r, self.cols), piv)
    }

    /// Rows span the right kernel `{v : self · vᵀ = 0}`.
    pub fn nullspace(&self) -> Mat {
        let (m, piv) = self.rref();
        nullspace_from_rref(&m, &piv)
    }

    /// Rows span the left kernel `{v : v · self = 0}`.
    pub fn left_nullspace(&self) -> Mat {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut t = Mat::identity(&self.field, self.rows);
        let piv = m.rref_in_place(Some(&mut t));
        if piv.len() < self.rows {
            return Err(Error::Singular { rank: piv.len(), dim: self.rows });
        }
        Ok(t)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Right kernel from a reduced echelon form.
pub(crate) fn nullspace_from_rref(m: &Mat, piv: &[usize]) -> Mat {
    let f = m.field();
    let cols = m.cols();
    let mut is_piv = vec![usize::MAX; cols];
    for (r, &c) in piv.iter().enumerate() {
        is_piv[c] = r;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| is_piv[c] == usize::MAX).collect();
    let mut out = Mat::zero(f, free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, 1);
        for (r, &pc) in piv.iter().enumerate() {
            let x = m.get(r, fc);
            if x != 0 {
                out.set(k, pc, f.neg(x));
            }
        }
    }
    out
}

fn swap_rows(data: &mut [Elem], cols: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let (x, y) = data.split_at_mut(hi * cols);
    x[lo * cols..(lo + 1) * cols].swap_with_slice(&mut y[..cols]);
}

/// Borrow row `src` immutably and row `dst` mutably.
fn two_rows(data: &mut [Elem], cols: usize, src: usize, dst: usize) -> (&[Elem], &mut [Elem]) {
    if src < dst {
        let (x, y) = data.split_at_mut(dst * cols);
        (&x[src * cols..(src + 1) * cols], &mut y[..cols])
    } else {
        let (x, y) = data.split_at_mut(src * cols);
        (&y[..cols], &mut x[dst * cols..(dst + 1) * cols])
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field.name())?;
        for i in 0..self.rows.min(12) {
            let r: Vec<String> = self.row(i).iter().take(24).map(|x| x.to_string()).collect();
            writeln!(f, "  {}", r.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prng::Prng;

    fn random_mat(f: &Field, r: usize, c: usize, rng: &mut Prng) -> Mat {
        let data = (0..r * c).map(|_| rng.below(f.q() as u64) as Elem).collect();
        Mat::from_vec(f, r, c, data).unwrap()
    }

    fn naive_mul(a: &Mat, b: &Mat) -> Mat {
        let f = a.field();
        let mut out = Mat::zero(f, a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = 0;
                for k in 0..a.cols() {
                    s = f.add(s, f.mul(a.get(i, k), b.get(k, j)));
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// Rank by counting the row space: |span| = q^rank.
    fn brute_rank(m: &Mat) -> usize {
        let f = m.field();
        let q = f.q() as usize;
        let mut seen = std::collections::HashSet::new();
        let total = q.pow(m.rows() as u32);
        for mut code in 0..total {
            let mut v = vec![0; m.cols()];
            for i in 0..m.rows() {
                f.axpy(&mut v, (code % q) as Elem, m.row(i));
                code /= q;
            }
            seen.insert(v);
        }
        let mut r = 0;
        while q.pow(r as u32) < seen.len() {
            r += 1;
        }
        r
    }

    #[test]
    fn all_kernels_agree_with_schoolbook() {
        let mut rng = Prng::new(7);
        for q in [2, 3, 4, 9, 25, 7] {
            let f = Field::from_order(q).unwrap();
            for &(r, k, c) in &[(1, 1, 1), (17, 9, 5), (20, 33, 18), (40, 13, 40)] {
                let a = random_mat(&f, r, k, &mut rng);
                let mut b = random_mat(&f, k, c, &mut rng);
                let want = naive_mul(&a, &b);
                assert_eq!(a.mul_rowcomb(&b), want);
                for g in 1..=5 {
                    assert_eq!(a.mul_greased(&b, g), want, "q={q} g={g}");
                }
                assert_eq!(a.mul(&b).unwrap(), want);
                for x in b.data.iter_mut() {
                    if rng.below(20) != 0 {
                        *x = 0;
                    }
                }
                assert_eq!(a.mul_sparse_right(&b), naive_mul(&a, &b));
            }
        }
    }

    #[test]
    fn rank_matches_row_space_count() {
        let mut rng = Prng::new(11);
        for q in [2, 3, 4] {
            let f = Field::from_order(q).unwrap();
            for _ in 0..40 {
                let r = 1 + rng.index(5);
                let c = 1 + rng.index(6);
                let mut m = random_mat(&f, r, c, &mut rng);
                if rng.below(2) == 0 && r > 1 {
                    let row = m.row(0).to_vec();
                    m.row_mut(r - 1).copy_from_slice(&row);
                }
                assert_eq!(m.rank(), brute_rank(&m));
            }
        }
    }

    #[test]
    fn echelon_transform_and_nullspaces() {
        let mut rng = Prng::new(3);
        let f = Field::from_order(9).unwrap();
        for _ in 0..30 {
            let (r, c) = (1 + rng.index(12), 1 + rng.index(12));
            let a = random_mat(&f, r, 3.min(c), &mut rng);
            let b = random_mat(&f, 3.min(c), c, &mut rng);
            let m = a.mul(&b).unwrap();
            let e = m.echelonize();
            assert_eq!(e.transform.mul(&m).unwrap(), e.rref);
            assert!(e.transform.is_invertible());
            let ns = m.nullspace();
            assert_eq!(ns.rows() + e.rank, c);
            assert!(m.mul(&ns.transpose()).unwrap().is_zero());
            let ln = m.left_nullspace();
            assert_eq!(ln.rows() + e.rank, r);
            assert!(ln.mul(&m).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let mut rng = Prng::new(5);
        let f = Field::from_order(3).unwrap();
        let mut found = 0;
        while found < 20 {
            let m = random_mat(&f, 8, 8, &mut rng);
            match m.inverse() {
                Ok(inv) => {
                    assert!(m.mul(&inv).unwrap().is_identity());
                    assert!(inv.mul(&m).unwrap().is_identity());
                    found += 1;
                }
                Err(Error::Singular { rank, dim }) => {
                    assert_eq!(rank, m.rank());
                    assert_eq!(dim, 8);
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn kron_mixed_product() {
        let mut rng = Prng::new(9);
        let f = Field::from_order(4).unwrap();
        let (a, b) = (random_mat(&f, 3, 3, &mut rng), random_mat(&f, 2, 2, &mut rng));
        let (c, d) = (random_mat(&f, 3, 3, &mut rng), random_mat(&f, 2, 2, &mut rng));
        let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn stacking_and_blocks() {
        let f = Field::from_order(5).unwrap();
        let a = Mat::from_rows(&f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = Mat::from_rows(&f, &[vec![4]]).unwrap();
        let d = Mat::block_diag(&[&a, &b]).unwrap();
        assert_eq!(d.data(), &[1, 2, 0, 3, 4, 0, 0, 0, 4]);
        assert_eq!(Mat::vstack(&[&a, &a]).unwrap().rows(), 4);
        assert_eq!(Mat::hstack(&[&a, &a]).unwrap().row(1), &[3, 4, 3, 4]);
        assert!(Mat::from_rows(&f, &[vec![5]]).is_err());
        assert!(a.mul(&Mat::zero(&f, 3, 1)).is_err());
    }
}
