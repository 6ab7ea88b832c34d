use super::field::{Elem, Field};
use super::mat::Mat;

/// Incrementally built semi-echelon basis. Each stored row is normalised
/// to 1 at its pivot and has zeros at the pivots of earlier rows, so
/// reduction in insertion order is exact.
///
/// Optionally each row carries a tag vector recording how it was formed;
/// reduction applies the same operations to the caller's tag.
#[derive(Clone, Debug)]
pub struct SemiEchelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    tags: Vec<Vec<Elem>>,
}

impl SemiEchelon {
    pub fn new(field: &Field, dim: usize) -> Self {
        SemiEchelon { field: field.clone(), dim, rows: Vec::new(), pivots: Vec::new(), tags: Vec::new() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Reduce `v` in place; returns the first nonzero column left, if any.
    pub fn reduce(&self, v: &mut [Elem]) -> Option<usize> {
        let f = &self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                f.axpy(&mut v[c..], f.neg(x), &row[c..]);
            }
        }
        v.iter().position(|&x| x != 0)
    }

    /// Reduce `v` and apply the same combination to `tag`.
    pub fn reduce_tagged(&self, v: &mut [Elem], tag: &mut Vec<Elem>) -> Option<usize> {
        let f = &self.field;
        for ((row, &c), t) in self.rows.iter().zip(&self.pivots).zip(&self.tags) {
            let x = v[c];
            if x != 0 {
                let m = f.neg(x);
                f.axpy(&mut v[c..], m, &row[c..]);
                if tag.len() < t.len() {
                    tag.resize(t.len(), 0);
                }
                f.axpy(&mut tag[..t.len()], m, t);
            }
        }
        v.iter().position(|&x| x != 0)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Insert `v` (reducing it first). Returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        match self.reduce(&mut w) {
            None => false,
            Some(c) => {
                let inv = self.field.inv(w[c]).expect("nonzero");
                self.field.scale(&mut w, inv);
                self.rows.push(w);
                self.pivots.push(c);
                self.tags.push(Vec::new());
                true
            }
        }
    }

    pub fn insert_tagged(&mut self, v: &[Elem], tag: Vec<Elem>) -> Result<(), Vec<Elem>> {
        let mut w = v.to_vec();
        let mut t = tag;
        match self.reduce_tagged(&mut w, &mut t) {
            None => Err(t),
            Some(c) => {
                let inv = self.field.inv(w[c]).expect("nonzero");
                self.field.scale(&mut w, inv);
                self.field.scale(&mut t, inv);
                self.rows.push(w);
                self.pivots.push(c);
                self.tags.push(t);
                Ok(())
            }
        }
    }

    /// Stored rows as a matrix (insertion order).
    pub fn to_mat(&self) -> Mat {
        Mat::from_vec(&self.field, self.rows.len(), self.dim, self.rows.concat()).expect("valid rows")
    }

    /// Reduced row echelon basis of the span, with sorted pivots.
    pub fn to_rref(&self) -> (Mat, Vec<usize>) {
        self.to_mat().row_space()
    }
}
