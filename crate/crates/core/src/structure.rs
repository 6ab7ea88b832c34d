//! Endomorphism algebras, Jacobson radicals, Fitting splits,
//! indecomposable decompositions and Loewy series.

use crate::chop::{chop, composition_flag, iso_irr};
use crate::error::{Error, Result};
use crate::ffield::{min_poly, Elem, Field, Mat};
use crate::prng::Prng;
use crate::rep::{end_space, hom_space, Rep};

/// Iteration cap for decomposition (random endomorphisms per module).
pub const DECOMPOSE_CAP: usize = 500;
const RADICAL_SEED: u64 = 0x0072_6164_6963_616c;

/// A subalgebra of n×n matrices given by a basis. The basis is stored in
/// reduced echelon form of the flattened matrices, so the coordinates of an
/// element are its entries at the pivot positions.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    field: Field,
    n: usize,
    basis: Vec<Mat>,
    pivots: Vec<usize>,
    unit: Vec<Elem>,
}

impl AlgebraData {
    /// Algebra spanned by `mats` (assumed closed under multiplication and
    /// containing the identity).
    pub fn from_matrices(field: &Field, n: usize, mats: &[Mat]) -> Result<Self> {
        let data: Vec<Elem> = mats.iter().flat_map(|m| m.data().iter().copied()).collect();
        let flat = Mat::from_vec(field, mats.len(), n * n, data)?;
        let (rref, pivots) = flat.row_space();
        let basis =
            (0..rref.rows()).map(|i| Mat::from_vec(field, n, n, rref.row(i).to_vec())).collect::<Result<Vec<_>>>()?;
        let mut a = AlgebraData { field: field.clone(), n, basis, pivots, unit: Vec::new() };
        let id = Mat::identity(field, n);
        if !a.contains(&id) {
            return Err(Error::Domain("algebra does not contain the identity".into()));
        }
        a.unit = a.coords(&id);
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn matrix_size(&self) -> usize {
        self.n
    }
    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }
    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    /// Coordinates of an element of the algebra.
    pub fn coords(&self, x: &Mat) -> Vec<Elem> {
        self.pivots.iter().map(|&p| x.data()[p]).collect()
    }

    pub fn element(&self, coords: &[Elem]) -> Mat {
        let mut out = Mat::zero(&self.field, self.n, self.n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                out.add_scaled(*c, b);
            }
        }
        out
    }

    pub fn contains(&self, x: &Mat) -> bool {
        x.rows() == self.n && x.cols() == self.n && &self.element(&self.coords(x)) == x
    }

    /// Right multiplication by `x`: row i holds the coordinates of
    /// `basis_i · x`.
    pub fn right_mult(&self, x: &Mat) -> Result<Mat> {
        let d = self.dim();
        let mut out = Mat::zero(&self.field, d, d);
        for (i, b) in self.basis.iter().enumerate() {
            let c = self.coords(&b.mul(x)?);
            out.row_mut(i).copy_from_slice(&c);
        }
        Ok(out)
    }

    /// Check closure on all basis products.
    pub fn is_closed(&self) -> bool {
        self.basis.iter().all(|a| self.basis.iter().all(|b| a.mul(b).map(|p| self.contains(&p)).unwrap_or(false)))
    }
}

pub fn end_algebra(m: &Rep) -> Result<AlgebraData> {
    let hb = end_space(m)?;
    AlgebraData::from_matrices(m.field(), m.dim(), hb.maps())
}

/// Jacobson radical with a local-ness verdict.
#[derive(Clone, Debug)]
pub struct Radical {
    /// Rows are coordinates (in the algebra basis) spanning the radical.
    pub basis: Mat,
    /// Dimensions of the composition factors of the right regular module.
    pub factor_dims: Vec<usize>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Jacobson radical: elements acting as zero on every composition factor
/// of the right regular module, read off a composition flag.
pub fn algebra_radical(a: &AlgebraData) -> Result<Radical> {
    let d = a.dim();
    let f = a.field();
    let regs = a.basis.iter().map(|b| a.right_mult(b)).collect::<Result<Vec<_>>>()?;
    let mut rng = Prng::new(RADICAL_SEED);
    let (t, sizes) = composition_flag(&regs, d, f, &mut rng)?;
    let tinv = t.inverse()?;
    // Row i: block-diagonal entries of T R_i T⁻¹.
    let diag_len: usize = sizes.iter().map(|s| s * s).sum();
    let mut sys = Mat::zero(f, d, diag_len);
    for (i, r) in regs.iter().enumerate() {
        let c = t.mul(r)?.mul(&tinv)?;
        let mut col = 0;
        let mut off = 0;
        for &s in &sizes {
            for x in off..off + s {
                for y in off..off + s {
                    sys.set(i, col, c.get(x, y));
                    col += 1;
                }
            }
            off += s;
        }
    }
    Ok(Radical { basis: sys.left_nullspace(), factor_dims: sizes })
}

/// Evidence that a module is indecomposable: End/J(End) is a division
/// algebra because every composition factor of the regular End-module has
/// dimension `end_dim − rad_dim` (which is 1 over a splitting field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCertificate {
    pub end_dim: usize,
    pub rad_dim: usize,
}

/// Returns the certificate if End(m) is local.
pub fn local_certificate(m: &Rep) -> Result<Option<LocalCertificate>> {
    let a = end_algebra(m)?;
    let j = algebra_radical(&a)?;
    let top = a.dim() - j.dim();
    let local = j.factor_dims.iter().all(|&s| s == top);
    Ok(local.then_some(LocalCertificate { end_dim: a.dim(), rad_dim: j.dim() }))
}

/// Fitting decomposition for an endomorphism `phi`: rows of `ker` span
/// ker φ^∞ (φ nilpotent there), rows of `im` span im φ^∞ (φ invertible).
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub ker: Rep,
    pub ker_basis: Mat,
    pub im: Rep,
    pub im_basis: Mat,
}

impl FittingSplit {
    /// Change of basis `[ker_basis; im_basis]`, invertible.
    pub fn basis(&self) -> Result<Mat> {
        Mat::vstack(&[&self.ker_basis, &self.im_basis])
    }
}

pub fn fitting_split(m: &Rep, phi: &Mat) -> Result<FittingSplit> {
    if !m.is_hom(m, phi) {
        return Err(Error::Domain("fitting_split: not an endomorphism".into()));
    }
    let mut p = phi.clone();
    let mut rank = p.rank();
    loop {
        let p2 = p.mul(&p)?;
        let r2 = p2.rank();
        p = p2;
        if r2 == rank {
            break;
        }
        rank = r2;
    }
    let (im_basis, _) = p.row_space();
    let ker_basis = p.left_nullspace().row_space().0;
    let (ker, ker_basis) = m.submodule(&ker_basis)?;
    let (im, im_basis) = m.submodule(&im_basis)?;
    Ok(FittingSplit { ker, ker_basis, im, im_basis })
}

/// Isomorphism test for indecomposable modules: a ≅ b iff some product
/// `f_i g_j` of basis maps a → b → a is invertible. (The products span an
/// ideal of the local ring End(a), which is proper iff a ≇ b.)
pub fn iso_indec(a: &Rep, b: &Rep) -> Result<bool> {
    if !a.is_compatible(b) {
        return Err(Error::Shape("iso_indec: modules of different groups or fields".into()));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let ab = hom_space(a, b)?;
    if ab.is_empty() {
        return Ok(false);
    }
    let ba = hom_space(b, a)?;
    for f in ab.maps() {
        for g in ba.maps() {
            if f.mul(g)?.is_invertible() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// One isomorphism type of summand, with every copy's basis in the
/// coordinates of the decomposed module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Rep,
    pub multiplicity: usize,
    pub bases: Vec<Mat>,
    pub certificate: LocalCertificate,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    /// Sorted (dimension, multiplicity) pairs.
    pub fn dims(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.summands.iter().map(|s| (s.rep.dim(), s.multiplicity)).collect();
        v.sort();
        v
    }

    /// Concatenated bases of all copies; conjugating the module by this
    /// matrix gives a block-diagonal form.
    pub fn basis(&self) -> Result<Mat> {
        let all: Vec<&Mat> = self.summands.iter().flat_map(|s| s.bases.iter()).collect();
        Mat::vstack(&all)
    }

    /// Independent check: the bases form a basis of the module and each
    /// spans a submodule.
    pub fn verify(&self, m: &Rep) -> Result<bool> {
        let t = self.basis()?;
        if t.rows() != m.dim() || !t.is_invertible() {
            return Ok(false);
        }
        Ok(self.summands.iter().all(|s| s.bases.iter().all(|b| m.is_invariant(b))))
    }
}

/// Try to split `m` using a random endomorphism: for an irreducible factor
/// f of its minimal polynomial, the Fitting split of f(φ) separates the
/// generalised f-eigenspace from the rest.
fn try_split(m: &Rep, end: &AlgebraData, rng: &mut Prng) -> Result<Option<FittingSplit>> {
    let q = m.field().q() as u64;
    let coords: Vec<Elem> = (0..end.dim()).map(|_| rng.below(q) as Elem).collect();
    let phi = end.element(&coords);
    let fac = min_poly(&phi)?.factor();
    if fac.len() < 2 {
        return Ok(None);
    }
    let psi = phi.eval_poly(&fac[0].0)?;
    let split = fitting_split(m, &psi)?;
    Ok((split.ker.dim() > 0 && split.im.dim() > 0).then_some(split))
}

/// Decompose into indecomposables, each certified by a local endomorphism
/// ring, grouped up to isomorphism.
pub fn indec_decompose(m: &Rep, rng: &mut Prng) -> Result<Decomposition> {
    let mut pieces: Vec<(Rep, Mat, LocalCertificate)> = Vec::new();
    let mut stack = vec![(m.clone(), Mat::identity(m.field(), m.dim()))];
    while let Some((x, basis)) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        let end = end_algebra(&x)?;
        let j = algebra_radical(&end)?;
        let top = end.dim() - j.dim();
        if j.factor_dims.iter().all(|&s| s == top) {
            pieces.push((x, basis, LocalCertificate { end_dim: end.dim(), rad_dim: j.dim() }));
            continue;
        }
        let mut split = None;
        for _ in 0..DECOMPOSE_CAP {
            if let Some(s) = try_split(&x, &end, rng)? {
                split = Some(s);
                break;
            }
        }
        let s =
            split.ok_or(Error::IterationLimit { what: "indecomposable decomposition".into(), limit: DECOMPOSE_CAP })?;
        stack.push((s.im, s.im_basis.mul(&basis)?));
        stack.push((s.ker, s.ker_basis.mul(&basis)?));
    }
    let mut summands: Vec<Summand> = Vec::new();
    for (rep, basis, cert) in pieces {
        let mut found = false;
        for s in summands.iter_mut() {
            if iso_indec(&s.rep, &rep)? {
                s.multiplicity += 1;
                s.bases.push(basis.clone());
                found = true;
                break;
            }
        }
        if !found {
            summands.push(Summand { rep, multiplicity: 1, bases: vec![basis], certificate: cert });
        }
    }
    Ok(Decomposition { summands })
}

/// Loewy layers as multiplicity vectors indexed like the simple list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoewyData {
    pub labels: Vec<String>,
    /// Radical layers, top first.
    pub radical_layers: Vec<Vec<usize>>,
    /// Socle layers, bottom (socle) first.
    pub socle_layers: Vec<Vec<usize>>,
}

/// Render a layer as `[1a 1c 2 2]`.
pub fn format_layer(labels: &[String], layer: &[usize]) -> String {
    let mut parts = Vec::new();
    for (l, &k) in labels.iter().zip(layer) {
        for _ in 0..k {
            parts.push(l.as_str());
        }
    }
    format!("[{}]", parts.join(" "))
}

impl LoewyData {
    /// Radical layers rendered top to bottom.
    pub fn radical_strings(&self) -> Vec<String> {
        self.radical_layers.iter().map(|l| format_layer(&self.labels, l)).collect()
    }
    /// Socle layers rendered top to bottom (i.e. reversed).
    pub fn socle_strings(&self) -> Vec<String> {
        self.socle_layers.iter().rev().map(|l| format_layer(&self.labels, l)).collect()
    }
}

fn label_of(s: &Rep, i: usize) -> String {
    s.label().map(str::to_string).unwrap_or_else(|| format!("S{}", i + 1))
}

fn missing(m: &Rep, simples: &[Rep]) -> Error {
    let mut rng = Prng::new(0);
    let dims = match chop(m, &mut rng) {
        Ok(c) => c
            .factors
            .iter()
            .filter(|f| !simples.iter().any(|s| s.dim() == f.irr.rep.dim() && iso_irr(s, &f.irr.rep).unwrap_or(false)))
            .map(|f| f.irr.rep.dim().to_string())
            .collect::<Vec<_>>()
            .join(", "),
        Err(_) => "?".into(),
    };
    Error::MissingSimple(format!("composition factor(s) of dimension {dims} not in the simple list"))
}

/// Socle layer of `m`: multiplicities and a basis of the socle.
fn socle_layer(m: &Rep, simples: &[Rep], end_dims: &[usize]) -> Result<(Vec<usize>, Mat)> {
    let mut layer = Vec::new();
    let mut rows: Vec<Mat> = Vec::new();
    for (s, &e) in simples.iter().zip(end_dims) {
        let hb = hom_space(s, m)?;
        layer.push(hb.dim() / e);
        rows.extend(hb.basis);
    }
    let basis = if rows.is_empty() {
        Mat::zero(m.field(), 0, m.dim())
    } else {
        Mat::vstack(&rows.iter().collect::<Vec<_>>())?.row_space().0
    };
    Ok((layer, basis))
}

/// Radical layer (top) of `m`: multiplicities and a basis of rad(m).
fn radical_layer(m: &Rep, simples: &[Rep], end_dims: &[usize]) -> Result<(Vec<usize>, Mat)> {
    let mut layer = Vec::new();
    let mut cols: Vec<Mat> = Vec::new();
    for (s, &e) in simples.iter().zip(end_dims) {
        let hb = hom_space(m, s)?;
        layer.push(hb.dim() / e);
        cols.extend(hb.basis);
    }
    let basis = if cols.is_empty() {
        Mat::identity(m.field(), m.dim())
    } else {
        Mat::hstack(&cols.iter().collect::<Vec<_>>())?.left_nullspace()
    };
    Ok((layer, basis))
}

fn check_simples(m: &Rep, simples: &[Rep]) -> Result<Vec<usize>> {
    simples
        .iter()
        .map(|s| {
            if !s.is_compatible(m) {
                return Err(Error::Shape("simple module for a different group or field".into()));
            }
            Ok(end_space(s)?.dim())
        })
        .collect()
}

pub fn socle_series(m: &Rep, simples: &[Rep]) -> Result<Vec<Vec<usize>>> {
    let end_dims = check_simples(m, simples)?;
    let mut cur = m.clone();
    let mut layers = Vec::new();
    while cur.dim() > 0 {
        let (layer, basis) = socle_layer(&cur, simples, &end_dims)?;
        if basis.rows() == 0 {
            return Err(missing(&cur, simples));
        }
        layers.push(layer);
        cur = cur.quotient(&basis)?;
    }
    Ok(layers)
}

pub fn radical_series(m: &Rep, simples: &[Rep]) -> Result<Vec<Vec<usize>>> {
    let end_dims = check_simples(m, simples)?;
    let mut cur = m.clone();
    let mut layers = Vec::new();
    while cur.dim() > 0 {
        let (layer, basis) = radical_layer(&cur, simples, &end_dims)?;
        if basis.rows() == cur.dim() {
            return Err(missing(&cur, simples));
        }
        layers.push(layer);
        cur = cur.submodule(&basis)?.0;
    }
    Ok(layers)
}

/// Both series; the layer dimensions are checked against the module.
pub fn loewy(m: &Rep, simples: &[Rep]) -> Result<LoewyData> {
    let radical_layers = radical_series(m, simples)?;
    let socle_layers = socle_series(m, simples)?;
    let dims: Vec<usize> = simples.iter().map(|s| s.dim()).collect();
    for layers in [&radical_layers, &socle_layers] {
        let total: usize = layers.iter().flat_map(|l| l.iter().zip(&dims).map(|(k, d)| k * d)).sum();
        if total != m.dim() {
            return Err(missing(m, simples));
        }
    }
    let labels = simples.iter().enumerate().map(|(i, s)| label_of(s, i)).collect();
    Ok(LoewyData { labels, radical_layers, socle_layers })
}
