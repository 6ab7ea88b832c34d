use super::module::{unit, Rep};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Mat, SemiEchelon};

/// Basis of `Hom_G(source, target)`: matrices `F` (dim source × dim
/// target) with `A_g F = F B_g` for every generator.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub basis: Vec<Mat>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn maps(&self) -> &[Mat] {
        &self.basis
    }

    /// Each basis map flattened row-major into one row.
    pub fn flattened(&self, field: &crate::ffield::Field) -> Mat {
        let data: Vec<Elem> = self.basis.iter().flat_map(|m| m.data().iter().copied()).collect();
        Mat::from_vec(field, self.basis.len(), self.src_dim * self.tgt_dim, data).expect("consistent shapes")
    }

    /// `Σ c_i basis_i`.
    pub fn combination(&self, coeffs: &[Elem]) -> Mat {
        let f = self.basis[0].field();
        let mut out = Mat::zero(f, self.src_dim, self.tgt_dim);
        for (c, m) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                out.add_scaled(*c, m);
            }
        }
        out
    }
}

/// Intertwining maps by spinning the source. Each spin-basis vector of the
/// source carries its image as a linear function of free parameters
/// (`z ↦ z·M_j`); every relation found while spinning cuts the parameter
/// space down to the left kernel of the discrepancy.
pub fn hom_space(a: &Rep, b: &Rep) -> Result<HomBasis> {
    if !a.is_compatible(b) {
        return Err(Error::Shape("hom_space: representations of different groups or fields".into()));
    }
    let (n, m) = (a.dim(), b.dim());
    let f = a.field().clone();
    let empty = HomBasis { src_dim: n, tgt_dim: m, basis: Vec::new() };
    if n == 0 || m == 0 {
        return Ok(empty);
    }
    let mut ech = SemiEchelon::new(&f, n);
    let mut vecs: Vec<Vec<Elem>> = Vec::new();
    let mut imgs: Vec<Mat> = Vec::new();
    let mut r = 0usize;
    let mut next_seed = 0usize;
    let mut k = 0usize;
    loop {
        if k == vecs.len() {
            if vecs.len() == n {
                break;
            }
            while ech.contains(&unit(n, next_seed)) {
                next_seed += 1;
            }
            let v = unit(n, next_seed);
            ech.insert_tagged(&v, unit(vecs.len() + 1, vecs.len())).expect("seed outside span");
            let pad = Mat::zero(&f, m, m);
            for mj in imgs.iter_mut() {
                *mj = Mat::vstack(&[mj, &pad])?;
            }
            imgs.push(Mat::vstack(&[&Mat::zero(&f, r, m), &Mat::identity(&f, m)])?);
            r += m;
            vecs.push(v);
        }
        for (ag, bg) in a.gens().iter().zip(b.gens()) {
            let w = ag.vec_mul(&vecs[k]);
            let len = vecs.len();
            match ech.insert_tagged(&w, unit(len + 1, len)) {
                Ok(()) => {
                    imgs.push(imgs[k].mul(bg)?);
                    vecs.push(w);
                }
                Err(t) => {
                    let mut d = imgs[k].mul(bg)?;
                    for (j, &c) in t.iter().enumerate().take(len) {
                        if c != 0 {
                            d.add_scaled(c, &imgs[j]);
                        }
                    }
                    if d.is_zero() {
                        continue;
                    }
                    let l = d.left_nullspace();
                    r = l.rows();
                    for mj in imgs.iter_mut() {
                        *mj = l.mul(mj)?;
                    }
                }
            }
        }
        k += 1;
    }
    let s = Mat::from_vec(&f, n, n, vecs.concat())?;
    let sinv = s.inverse()?;
    // Row j of g: images of b_j for every parameter, side by side.
    let mut g = Mat::zero(&f, n, r * m);
    for (j, mj) in imgs.iter().enumerate() {
        g.row_mut(j).copy_from_slice(mj.data());
    }
    let h = sinv.mul(&g)?;
    let basis = (0..r).map(|p| h.submatrix(0, p * m, n, m)).collect();
    Ok(HomBasis { src_dim: n, tgt_dim: m, basis })
}

/// Basis of the endomorphism ring.
pub fn end_space(a: &Rep) -> Result<HomBasis> {
    hom_space(a, a)
}
