use super::module::Rep;
use crate::error::{Error, Result};
use crate::ffield::Mat;
use crate::perm::{right_transversal, Subgroup, Transversal};

/// Cap on the index for induction and coset walks.
pub const INDEX_CAP: u128 = 100_000;

/// An induced module together with the data fixing its basis: block `i`
/// corresponds to the coset `H t_i` of the transversal.
#[derive(Clone, Debug)]
pub struct Induced {
    pub rep: Rep,
    pub sub: Subgroup,
    pub transversal: Transversal,
    pub block: usize,
}

/// `V↑^G`: block `(i, j)` of the matrix of generator `x` is `V(t_i x t_j⁻¹)`
/// where `H t_i x = H t_j`.
pub fn induce(v: &Rep, sub: &Subgroup) -> Result<Induced> {
    if !v.group().same(sub.group()) {
        return Err(Error::NotSubgroup("module is not a module for the given subgroup".into()));
    }
    let tr = right_transversal(sub, INDEX_CAP)?;
    let g = sub.parent();
    let d = v.dim();
    let n = tr.len();
    let mut ev = v.evaluator();
    let mut gens = Vec::with_capacity(g.ngens());
    let invs: Vec<_> = tr.reps.iter().map(|t| t.inv()).collect();
    for (xi, x) in g.gens().iter().enumerate() {
        let mut m = Mat::zero(v.field(), d * n, d * n);
        for i in 0..n {
            let j = tr.action[xi][i] as usize;
            let h = tr.reps[i].mul(x).mul(&invs[j]);
            let vh = ev.matrix(&h)?;
            for r in 0..d {
                m.row_mut(i * d + r)[j * d..(j + 1) * d].copy_from_slice(vh.row(r));
            }
        }
        gens.push(m);
    }
    let mut rep = Rep::new(g, v.field(), d * n, gens)?;
    rep.set_label(v.label().map(|l| format!("{l}^")));
    Ok(Induced { rep, sub: sub.clone(), transversal: tr, block: d })
}

/// Matrices `X(t_i)` and `X(t_i⁻¹)` of a G-module at the transversal
/// representatives, built along the transversal's tree.
pub fn coset_matrices(x: &Rep, tr: &Transversal) -> Result<(Vec<Mat>, Vec<Mat>)> {
    let ginv = x.gens().iter().map(|g| g.inverse()).collect::<Result<Vec<_>>>()?;
    let id = Mat::identity(x.field(), x.dim());
    let mut fwd = vec![id.clone(); tr.len()];
    let mut bwd = vec![id; tr.len()];
    for i in 1..tr.len() {
        let (p, g) = tr.tree[i].expect("non-root has a parent");
        fwd[i] = fwd[p].mul(x.gen(g))?;
        bwd[i] = ginv[g].mul(&bwd[p])?;
    }
    Ok((fwd, bwd))
}

impl Induced {
    /// `Hom_H(V, X↓) → Hom_G(V↑, X)`: block row i of the result is
    /// `ψ · X(t_i)`.
    pub fn hom_from_induced(&self, psi: &Mat, x_fwd: &[Mat]) -> Result<Mat> {
        let d = self.block;
        if psi.rows() != d {
            return Err(Error::Shape("hom_from_induced: wrong source dimension".into()));
        }
        let blocks = x_fwd.iter().map(|xt| psi.mul(xt)).collect::<Result<Vec<_>>>()?;
        Mat::vstack(&blocks.iter().collect::<Vec<_>>())
    }

    /// Inverse of [`Induced::hom_from_induced`]: the first block row.
    pub fn hom_from_induced_inverse(&self, big: &Mat) -> Mat {
        big.submatrix(0, 0, self.block, big.cols())
    }

    /// `Hom_H(X↓, V) → Hom_G(X, V↑)`: block column i of the result is
    /// `X(t_i⁻¹) · φ`.
    pub fn hom_to_induced(&self, phi: &Mat, x_bwd: &[Mat]) -> Result<Mat> {
        let d = self.block;
        if phi.cols() != d {
            return Err(Error::Shape("hom_to_induced: wrong target dimension".into()));
        }
        let blocks = x_bwd.iter().map(|xt| xt.mul(phi)).collect::<Result<Vec<_>>>()?;
        Mat::hstack(&blocks.iter().collect::<Vec<_>>())
    }

    /// Inverse of [`Induced::hom_to_induced`]: the first block column.
    pub fn hom_to_induced_inverse(&self, big: &Mat) -> Mat {
        big.submatrix(0, 0, big.rows(), self.block)
    }
}
