use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field, Mat};
use crate::perm::{Group, Monoid, Perm, SlpMemo, Subgroup, Word};

/// A matrix representation: one invertible matrix per group generator,
/// acting on row vectors on the right (`v ↦ v·A_g`, `A_{gh} = A_g A_h`).
#[derive(Clone)]
pub struct Rep {
    group: Group,
    field: Field,
    dim: usize,
    gens: Vec<Mat>,
    label: Option<String>,
}

impl Rep {
    pub fn new(group: &Group, field: &Field, dim: usize, gens: Vec<Mat>) -> Result<Self> {
        if gens.len() != group.ngens() {
            return Err(Error::Shape(format!("{} matrices for {} generators", gens.len(), group.ngens())));
        }
        for m in &gens {
            if m.field() != field {
                return Err(Error::Shape("generator matrix over the wrong field".into()));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!("generator matrix {}x{} in a {dim}-dim rep", m.rows(), m.cols())));
            }
        }
        Ok(Rep { group: group.clone(), field: field.clone(), dim, gens, label: None })
    }

    /// Like [`Rep::new`] but also checks every generator is invertible.
    pub fn new_checked(group: &Group, field: &Field, dim: usize, gens: Vec<Mat>) -> Result<Self> {
        let r = Self::new(group, field, dim, gens)?;
        for m in &r.gens {
            if !m.is_invertible() {
                return Err(Error::Singular { rank: m.rank(), dim: r.dim });
            }
        }
        Ok(r)
    }

    pub fn trivial(group: &Group, field: &Field) -> Self {
        let gens = vec![Mat::identity(field, 1); group.ngens()];
        Rep { group: group.clone(), field: field.clone(), dim: 1, gens, label: None }
    }

    /// Permutation module for an action given by one permutation of the
    /// points per group generator.
    pub fn from_action(group: &Group, field: &Field, n: usize, action: &[Perm]) -> Result<Self> {
        if action.len() != group.ngens() {
            return Err(Error::Shape("one permutation per generator required".into()));
        }
        let gens = action
            .iter()
            .map(|p| {
                if p.degree() != n {
                    return Err(Error::DegreeMismatch { expected: n, got: p.degree() });
                }
                Ok(perm_matrix(field, p))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Rep { group: group.clone(), field: field.clone(), dim: n, gens, label: None })
    }

    /// The natural permutation module.
    pub fn natural(group: &Group, field: &Field) -> Self {
        let gens = group.gens().iter().map(|p| perm_matrix(field, p)).collect();
        Rep { group: group.clone(), field: field.clone(), dim: group.degree(), gens, label: None }
    }

    /// Permutation module on the k-subsets of the points, in
    /// lexicographic order.
    pub fn subsets(group: &Group, field: &Field, k: usize) -> Result<Self> {
        let subs = k_subsets(group.degree(), k);
        if subs.len() > 100_000 {
            return Err(Error::CapExceeded { what: "subset module".into(), cap: 100_000, size: subs.len() as u64 });
        }
        let index: HashMap<&Vec<u32>, u32> = subs.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
        let action = group
            .gens()
            .iter()
            .map(|g| {
                let imgs = subs
                    .iter()
                    .map(|s| {
                        let mut t: Vec<u32> = s.iter().map(|&x| g.apply(x)).collect();
                        t.sort_unstable();
                        index[&t]
                    })
                    .collect();
                Perm::from_images(imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_action(group, field, subs.len(), &action)
    }

    /// Right regular module, basis indexed by the group elements in
    /// enumeration order.
    pub fn regular(group: &Group, field: &Field, cap: u128) -> Result<Self> {
        let elts = group.elements(cap)?;
        let index: HashMap<&Perm, u32> = elts.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
        let action = group
            .gens()
            .iter()
            .map(|g| Perm::from_images(elts.iter().map(|x| index[&x.mul(g)]).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_action(group, field, elts.len(), &action)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }
    pub fn gen(&self, i: usize) -> &Mat {
        &self.gens[i]
    }
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
    pub fn set_label(&mut self, label: Option<String>) {
        self.label = label;
    }

    fn compatible(&self, other: &Rep) -> Result<()> {
        if !self.group.same(&other.group) {
            return Err(Error::Shape("representations of different groups".into()));
        }
        if self.field != other.field {
            return Err(Error::Shape("representations over different fields".into()));
        }
        Ok(())
    }

    /// Same group and field.
    pub fn is_compatible(&self, other: &Rep) -> bool {
        self.compatible(other).is_ok()
    }

    pub fn word_matrix(&self, w: &Word) -> Result<Mat> {
        let mut acc = Mat::identity(&self.field, self.dim);
        let mut invs: HashMap<usize, Mat> = HashMap::new();
        for l in &w.0 {
            let g = self
                .gens
                .get(l.gen)
                .ok_or_else(|| Error::Input(format!("word uses generator {} of {}", l.gen + 1, self.gens.len())))?;
            if l.inverse {
                if let std::collections::hash_map::Entry::Vacant(e) = invs.entry(l.gen) {
                    e.insert(g.inverse()?);
                }
                acc = acc.mul(&invs[&l.gen])?;
            } else {
                acc = acc.mul(g)?;
            }
        }
        Ok(acc)
    }

    /// Evaluator for matrices of arbitrary group elements.
    pub fn evaluator(&self) -> ElementEvaluator<'_> {
        ElementEvaluator { rep: self, inverses: Default::default(), memo: SlpMemo::default() }
    }

    pub fn element_matrix(&self, g: &Perm) -> Result<Mat> {
        self.evaluator().matrix(g)
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Rep> {
        if !h.parent().same(&self.group) {
            return Err(Error::NotSubgroup("restriction to a subgroup of a different group".into()));
        }
        let gens = match h.words() {
            Some(ws) => ws.iter().map(|w| self.word_matrix(w)).collect::<Result<Vec<_>>>()?,
            None => {
                let mut ev = self.evaluator();
                h.group().gens().iter().map(|g| ev.matrix(g)).collect::<Result<Vec<_>>>()?
            }
        };
        let mut r = Rep::new(h.group(), &self.field, self.dim, gens)?;
        r.label = self.label.as_ref().map(|l| format!("{l}|"));
        Ok(r)
    }

    pub fn dual(&self) -> Result<Rep> {
        let gens = self.gens.iter().map(|m| Ok(m.inverse()?.transpose())).collect::<Result<Vec<_>>>()?;
        let mut r = Rep::new(&self.group, &self.field, self.dim, gens)?;
        r.label = self.label.as_ref().map(|l| format!("{l}*"));
        Ok(r)
    }

    pub fn tensor(&self, other: &Rep) -> Result<Rep> {
        self.compatible(other)?;
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kron(b)).collect::<Result<Vec<_>>>()?;
        Rep::new(&self.group, &self.field, self.dim * other.dim, gens)
    }

    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        Rep::direct_sum_all(&[self, other])
    }

    pub fn direct_sum_all(parts: &[&Rep]) -> Result<Rep> {
        let first = parts.first().ok_or_else(|| Error::Shape("empty direct sum".into()))?;
        for p in parts {
            first.compatible(p)?;
        }
        let gens = (0..first.gens.len())
            .map(|i| Mat::block_diag(&parts.iter().map(|p| &p.gens[i]).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        Rep::new(&first.group, &first.field, parts.iter().map(|p| p.dim).sum(), gens)
    }

    /// Is `basis` (rows) an invariant subspace?
    pub fn is_invariant(&self, basis: &Mat) -> bool {
        let (ech, _) = basis.row_space();
        let piv = ech.rref().1;
        self.gens.iter().all(|g| {
            let img = basis.mul(g).expect("shape");
            Mat::vstack(&[&ech, &img]).expect("shape").rank() == piv.len()
        })
    }

    /// Action on the invariant subspace spanned by the rows of `basis`
    /// (any spanning set; it is echelonised first). Returns the submodule
    /// and its echelon basis.
    pub fn submodule(&self, basis: &Mat) -> Result<(Rep, Mat)> {
        let (ech, piv) = basis.row_space();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let img = ech.mul(g)?;
                let coords = img.select_cols(&piv);
                if coords.mul(&ech)? != img {
                    return Err(Error::Domain("subspace is not invariant".into()));
                }
                Ok(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Rep::new(&self.group, &self.field, piv.len(), gens)?, ech))
    }

    /// Action on `self / span(basis)`, in coordinates of the non-pivot
    /// unit vectors.
    pub fn quotient(&self, basis: &Mat) -> Result<Rep> {
        let (ech, piv) = basis.row_space();
        let free: Vec<usize> = (0..self.dim).filter(|c| !piv.contains(c)).collect();
        let f = &self.field;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = g.select_rows(&free);
                for i in 0..m.rows() {
                    let row = m.row_mut(i);
                    for (k, &pc) in piv.iter().enumerate() {
                        let x = row[pc];
                        if x != 0 {
                            f.axpy(row, f.neg(x), ech.row(k));
                        }
                    }
                }
                Ok(m.select_cols(&free))
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::new(&self.group, &self.field, free.len(), gens)
    }

    /// Change of basis: rows of `s` form the new basis; returns the rep
    /// with matrices `S A_g S⁻¹`.
    pub fn conjugate(&self, s: &Mat) -> Result<Rep> {
        let si = s.inverse()?;
        let gens = self.gens.iter().map(|g| s.mul(g)?.mul(&si)).collect::<Result<Vec<_>>>()?;
        let mut r = Rep::new(&self.group, &self.field, self.dim, gens)?;
        r.label = self.label.clone();
        Ok(r)
    }

    /// Does `f` (dim(self) × dim(target)) intertwine?
    pub fn is_hom(&self, target: &Rep, f: &Mat) -> bool {
        f.rows() == self.dim
            && f.cols() == target.dim
            && self.gens.iter().zip(&target.gens).all(|(a, b)| a.mul(f).ok() == f.mul(b).ok())
    }

    /// Multiplicative order of generator `i` (up to `limit`).
    pub fn gen_order(&self, i: usize, limit: u64) -> Option<u64> {
        let g = &self.gens[i];
        let mut acc = g.clone();
        for n in 1..=limit {
            if acc.is_identity() {
                return Some(n);
            }
            acc = acc.mul(g).ok()?;
        }
        None
    }
}

fn perm_matrix(field: &Field, p: &Perm) -> Mat {
    let n = p.degree();
    let mut m = Mat::zero(field, n, n);
    for i in 0..n {
        m.set(i, p.apply(i as u32) as usize, 1);
    }
    m
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n as u32, k, &mut Vec::new(), &mut out);
    out
}

/// Matrices of arbitrary group elements, via factorisation through the
/// group's stabiliser chain. Intermediate products are cached.
pub struct ElementEvaluator<'a> {
    rep: &'a Rep,
    inverses: std::cell::RefCell<HashMap<usize, Mat>>,
    memo: SlpMemo<Mat>,
}

impl Monoid for ElementEvaluator<'_> {
    type T = Mat;
    fn one(&self) -> Mat {
        Mat::identity(&self.rep.field, self.rep.dim)
    }
    fn gen(&self, i: usize, inverse: bool) -> Mat {
        if !inverse {
            return self.rep.gens[i].clone();
        }
        self.inverses
            .borrow_mut()
            .entry(i)
            .or_insert_with(|| self.rep.gens[i].inverse().expect("generator matrices are invertible"))
            .clone()
    }
    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        a.mul(b).expect("square matrices of equal size")
    }
}

impl ElementEvaluator<'_> {
    pub fn matrix(&mut self, g: &Perm) -> Result<Mat> {
        let chain = self.rep.group.chain();
        let lines = chain.factorize(g).ok_or_else(|| Error::NotSubgroup(format!("{g} is not in the group")))?;
        let mut memo = std::mem::take(&mut self.memo);
        let mut acc = self.one();
        for l in lines {
            let m = chain.slp().eval(self, l, false, &mut memo);
            acc = acc.mul(&m)?;
        }
        self.memo = memo;
        Ok(acc)
    }
}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep(dim {} over {}", self.dim, self.field.name())?;
        if let Some(l) = &self.label {
            write!(f, ", {l}")?;
        }
        write!(f, ")")
    }
}

/// Vector helper used by spinning code.
pub(crate) fn unit(dim: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}
