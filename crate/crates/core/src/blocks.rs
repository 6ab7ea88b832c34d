//! Blocks of small group algebras: central primitive idempotents in the
//! class-sum algebra, block membership of modules, PIMs and Cartan matrices.

use crate::chop::{chop, iso_irr, spin};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Field, Mat, Poly, SemiEchelon};
use crate::perm::small::{class_partition, ClassPartition};
use crate::perm::Group;
use crate::prng::Prng;
use crate::rep::{hom_space, Rep};
use crate::structure::{algebra_radical, indec_decompose, iso_indec, AlgebraData};

const BLOCK_SEED: u64 = 0x626c_6f63_6b73;
/// Random elements tried per idempotent after the class sums fail to split it.
const RANDOM_SPLIT_TRIES: usize = 64;

/// The center Z(kG) in the basis of class sums.
#[derive(Clone, Debug)]
pub struct ClassAlgebra {
    field: Field,
    /// `consts[i][j]` = coordinates of C_i·C_j.
    consts: Vec<Vec<Vec<Elem>>>,
    unit: Vec<Elem>,
}

impl ClassAlgebra {
    fn new(field: &Field, part: &ClassPartition) -> Self {
        let r = part.classes.len();
        let mut counts = vec![vec![vec![0u64; r]; r]; r];
        for (k, cls) in part.classes.iter().enumerate() {
            let z = &cls.rep;
            for (x, &i) in part.elements.iter().zip(&part.class_of) {
                let y = x.inv().mul(z);
                let j = part.class_of_perm(&y).expect("closed");
                counts[i][j][k] += 1;
            }
        }
        let consts = counts
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.into_iter().map(|c| field.from_int((c % field.p() as u64) as i64)).collect())
                    .collect()
            })
            .collect();
        let mut unit = vec![0; r];
        unit[part.class_of_perm(&part.elements[0].pow(0)).expect("identity")] = 1;
        ClassAlgebra { field: field.clone(), consts, unit }
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.dim()];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj != 0 {
                    f.axpy(&mut out, f.mul(ai, bj), &self.consts[i][j]);
                }
            }
        }
        out
    }

    fn basis_vec(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    fn eval(&self, p: &Poly, c: &[Elem], unit: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut acc = vec![0; self.dim()];
        for &k in p.coeffs().iter().rev() {
            acc = self.mul(&acc, c);
            f.axpy(&mut acc, k, unit);
        }
        acc
    }

    /// Minimal polynomial of `c` inside the algebra with unit `unit`.
    fn min_poly_in(&self, c: &[Elem], unit: &[Elem]) -> Result<Poly> {
        let f = &self.field;
        let mut rows: Vec<Vec<Elem>> = vec![unit.to_vec()];
        loop {
            let next = self.mul(rows.last().expect("nonempty"), c);
            rows.push(next);
            let m = Mat::from_rows(f, &rows)?;
            if m.rank() < rows.len() {
                let rel = m.left_nullspace();
                let v = rel.row(0);
                let lead = *v.last().expect("nonempty");
                let inv = f.inv(lead)?;
                return Ok(Poly::new(f, v.iter().map(|&x| f.mul(x, inv)).collect()));
            }
        }
    }

    /// Basis (rows) of the ideal e·Z.
    fn ideal_basis(&self, e: &[Elem]) -> Mat {
        let rows: Vec<Vec<Elem>> = (0..self.dim()).map(|j| self.mul(e, &self.basis_vec(j))).collect();
        Mat::from_rows(&self.field, &rows).expect("square").row_space().0
    }

    /// e·Z is local: its regular representation has all composition factors
    /// of dimension dim(eZ/J).
    fn is_local(&self, e: &[Elem]) -> Result<bool> {
        let basis = self.ideal_basis(e);
        let (rref, pivots) = basis.row_space();
        let s = rref.rows();
        let coords = |v: &[Elem]| -> Vec<Elem> { pivots.iter().map(|&p| v[p]).collect() };
        let mut mats = Vec::with_capacity(s);
        for b in rref.row_iter() {
            let rows: Vec<Vec<Elem>> = rref.row_iter().map(|y| coords(&self.mul(b, y))).collect();
            mats.push(Mat::from_rows(&self.field, &rows)?);
        }
        let a = AlgebraData::from_matrices(&self.field, s, &mats)?;
        let j = algebra_radical(&a)?;
        let top = a.dim() - j.dim();
        Ok(j.factor_dims.iter().all(|&d| d == top))
    }

    /// Split `e` along the first irreducible factor of the minimal
    /// polynomial of `c` (taken in eZ), if it has two coprime parts.
    fn split(&self, e: &[Elem], c: &[Elem]) -> Result<Option<(Vec<Elem>, Vec<Elem>)>> {
        let c = self.mul(e, c);
        let m = self.min_poly_in(&c, e)?;
        let facs = m.factor();
        if facs.len() < 2 {
            return Ok(None);
        }
        let mut a = Poly::one(&self.field);
        for _ in 0..facs[0].1 {
            a = a.mul(&facs[0].0);
        }
        let b = m.div_exact(&a)?;
        let (g, _, v) = a.xgcd(&b);
        if !g.is_one() {
            return Err(Error::Theory("coprime factors with nontrivial gcd".into()));
        }
        let e1 = self.eval(&v.mul(&b), &c, e);
        let mut e2 = e.to_vec();
        let f = &self.field;
        f.axpy(&mut e2, f.neg(1), &e1);
        Ok(Some((e1, e2)))
    }
}

/// Block decomposition of kG for a small group G.
#[derive(Clone, Debug)]
pub struct BlockData {
    group: Group,
    field: Field,
    pub partition: ClassPartition,
    pub algebra: ClassAlgebra,
    /// Central primitive idempotents as class-sum coordinates.
    pub idempotents: Vec<Vec<Elem>>,
    pub principal: usize,
    tree: Vec<(usize, usize, usize)>,
}

impl BlockData {
    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }
    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// e² = e, eᵢeⱼ = 0 and Σe = 1, checked in the class-sum algebra.
    pub fn check_axioms(&self) -> bool {
        let z = &self.algebra;
        let f = &self.field;
        let mut sum = vec![0; z.dim()];
        for (i, a) in self.idempotents.iter().enumerate() {
            f.axpy(&mut sum, 1, a);
            for (j, b) in self.idempotents.iter().enumerate() {
                let p = z.mul(a, b);
                let ok = if i == j { &p == a } else { p.iter().all(|&x| x == 0) };
                if !ok {
                    return false;
                }
            }
        }
        sum == z.unit
    }
}

/// Central primitive idempotents of kG by repeatedly splitting along
/// minimal polynomials of class sums (then seeded random central elements),
/// each final idempotent being certified primitive by locality of eZ.
pub fn central_idempotents(g: &Group, field: &Field) -> Result<BlockData> {
    let part = class_partition(g)?;
    let z = ClassAlgebra::new(field, &part);
    let r = z.dim();
    let mut rng = Prng::new(BLOCK_SEED);
    let mut todo = vec![z.unit.clone()];
    let mut done = Vec::new();
    'next: while let Some(e) = todo.pop() {
        for j in 0..r {
            if let Some((a, b)) = z.split(&e, &z.basis_vec(j))? {
                todo.push(a);
                todo.push(b);
                continue 'next;
            }
        }
        if z.is_local(&e)? {
            done.push(e);
            continue;
        }
        for _ in 0..RANDOM_SPLIT_TRIES {
            let c: Vec<Elem> = (0..r).map(|_| rng.below(field.q() as u64) as Elem).collect();
            if let Some((a, b)) = z.split(&e, &c)? {
                todo.push(a);
                todo.push(b);
                continue 'next;
            }
        }
        return Err(Error::IterationLimit { what: "splitting a central idempotent".into(), limit: RANDOM_SPLIT_TRIES });
    }
    // Deterministic order: by the smallest class index in the support.
    done.sort_by_key(|e| e.iter().map(|&x| x == 0).collect::<Vec<_>>());
    // On the trivial module e acts as Σ_j e_j |K_j|.
    let principal = done
        .iter()
        .position(|e| {
            let s = e
                .iter()
                .zip(&part.classes)
                .fold(0, |acc, (&c, k)| field.add(acc, field.mul(c, field.from_int(k.size as i64))));
            s == 1
        })
        .ok_or_else(|| Error::Theory("no idempotent acts on the trivial module".into()))?;
    let tree = cayley_tree(g, &part);
    Ok(BlockData {
        group: g.clone(),
        field: field.clone(),
        partition: part,
        algebra: z,
        idempotents: done,
        principal,
        tree,
    })
}

/// Breadth-first spanning tree of the Cayley graph on the enumerated
/// elements: `(element, parent, generator)` with parents listed first.
fn cayley_tree(g: &Group, part: &ClassPartition) -> Vec<(usize, usize, usize)> {
    let id = part.index[&part.elements[0].pow(0)];
    let mut seen = vec![false; part.elements.len()];
    seen[id] = true;
    let mut order = vec![(id, id, usize::MAX)];
    let mut head = 0;
    while head < order.len() {
        let x = order[head].0;
        head += 1;
        for (k, s) in g.gens().iter().enumerate() {
            let y = part.index[&part.elements[x].mul(s)];
            if !std::mem::replace(&mut seen[y], true) {
                order.push((y, x, k));
            }
        }
    }
    order
}

/// `Σ_{x ∈ K_c} v·A_x` for every class c.
fn class_vector_sums(m: &Rep, bd: &BlockData, v: &[Elem]) -> Vec<Vec<Elem>> {
    let f = m.field();
    let mut images: Vec<Vec<Elem>> = vec![Vec::new(); bd.partition.elements.len()];
    let mut sums = vec![vec![0; m.dim()]; bd.partition.classes.len()];
    for &(x, parent, gen) in &bd.tree {
        let img = if gen == usize::MAX { v.to_vec() } else { m.gen(gen).vec_mul(&images[parent]) };
        f.axpy(&mut sums[bd.partition.class_of[x]], 1, &img);
        images[x] = img;
    }
    sums
}

fn check_module(m: &Rep, bd: &BlockData) -> Result<()> {
    if !m.group().same(&bd.group) || m.field() != &bd.field {
        return Err(Error::Input("module is not over the block data's group and field".into()));
    }
    Ok(())
}

/// Vectors generating `m` as a module.
pub fn module_generators(m: &Rep) -> Vec<Vec<Elem>> {
    let n = m.dim();
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    let mut span = SemiEchelon::new(m.field(), n);
    for i in 0..n {
        if span.len() == n {
            break;
        }
        let mut u = vec![0; n];
        u[i] = 1;
        if span.contains(&u) {
            continue;
        }
        gens.push(u);
        let sp = spin(m, &gens);
        span = SemiEchelon::new(m.field(), n);
        for r in sp.row_iter() {
            span.insert(r);
        }
    }
    gens
}

/// Images of the module generators under each block idempotent.
fn idempotent_images(m: &Rep, bd: &BlockData) -> Result<(Vec<Vec<Elem>>, Vec<Vec<Vec<Elem>>>)> {
    check_module(m, bd)?;
    let f = m.field();
    let gens = module_generators(m);
    let mut out = vec![Vec::new(); bd.len()];
    for v in &gens {
        let sums = class_vector_sums(m, bd, v);
        for (b, e) in bd.idempotents.iter().enumerate() {
            let mut w = vec![0; m.dim()];
            for (&c, s) in e.iter().zip(&sums) {
                if c != 0 {
                    f.axpy(&mut w, c, s);
                }
            }
            out[b].push(w);
        }
    }
    Ok((gens, out))
}

/// Dimension of each block component e·m.
pub fn block_component_dims(m: &Rep, bd: &BlockData) -> Result<Vec<usize>> {
    let (_, imgs) = idempotent_images(m, bd)?;
    Ok(imgs.iter().map(|ws| spin(m, ws).rows()).collect())
}

/// Index of the block whose idempotent acts as the identity on `m`.
pub fn block_of(m: &Rep, bd: &BlockData) -> Result<usize> {
    let (gens, imgs) = idempotent_images(m, bd)?;
    // Central elements are module maps, so agreement on generators suffices.
    if let Some(b) = imgs.iter().position(|ws| ws == &gens) {
        return Ok(b);
    }
    let dims: Vec<usize> = imgs.iter().map(|ws| spin(m, ws).rows()).collect();
    Err(Error::Theory(format!("module lies in several blocks; component dimensions {dims:?}")))
}

/// PIMs found in a projective module, indexed like `simples` (by top).
#[derive(Clone, Debug)]
pub struct PimSet {
    pub pims: Vec<Option<Rep>>,
}

impl PimSet {
    pub fn missing(&self) -> Vec<usize> {
        (0..self.pims.len()).filter(|&i| self.pims[i].is_none()).collect()
    }

    pub fn complete(&self) -> Result<Vec<Rep>> {
        let miss = self.missing();
        if miss.is_empty() {
            return Ok(self.pims.iter().flatten().cloned().collect());
        }
        Err(Error::Input(format!("projective source is missing the PIMs with tops {miss:?}")))
    }
}

/// Decompose a projective module, keep the summands in `block`, and index
/// them by their tops among `simples`.
pub fn pims(bd: &BlockData, block: usize, source: &Rep, simples: &[Rep], rng: &mut Prng) -> Result<PimSet> {
    let mut out: Vec<Option<Rep>> = vec![None; simples.len()];
    for s in indec_decompose(source, rng)?.summands {
        if block_of(&s.rep, bd)? != block {
            continue;
        }
        let tops: Vec<usize> = (0..simples.len())
            .filter_map(|i| hom_space(&s.rep, &simples[i]).map(|h| (h.dim() > 0).then_some(i)).transpose())
            .collect::<Result<_>>()?;
        match tops.as_slice() {
            [t] => {
                if let Some(prev) = &out[*t] {
                    if !iso_indec(prev, &s.rep)? {
                        return Err(Error::Theory(format!("two non-isomorphic summands with top {}", t)));
                    }
                } else {
                    out[*t] = Some(s.rep);
                }
            }
            _ => {
                return Err(Error::Theory(format!(
                    "summand of dimension {} does not have a simple top among the given simples",
                    s.rep.dim()
                )))
            }
        }
    }
    Ok(PimSet { pims: out })
}

/// Cartan matrix with rows indexed by PIM tops: entry (T, S) is the
/// multiplicity of S in P(T), computed as dim Hom(P(S), P(T)) / dim End(S).
pub fn cartan_matrix(pims: &[Rep], simples: &[Rep]) -> Result<Vec<Vec<usize>>> {
    if pims.len() != simples.len() {
        return Err(Error::Shape("one PIM per simple is required".into()));
    }
    let ends = simples.iter().map(|s| hom_space(s, s).map(|h| h.dim())).collect::<Result<Vec<_>>>()?;
    let mut c = vec![vec![0; pims.len()]; pims.len()];
    for (t, pt) in pims.iter().enumerate() {
        for (s, ps) in pims.iter().enumerate() {
            c[t][s] = hom_space(ps, pt)?.dim() / ends[s];
        }
    }
    Ok(c)
}

/// Composition multiplicities of `m` with respect to `simples` (by chop);
/// errors if a factor is not among them.
pub fn composition_multiplicities(m: &Rep, simples: &[Rep], rng: &mut Prng) -> Result<Vec<usize>> {
    let mut out = vec![0; simples.len()];
    for fac in chop(m, rng)?.factors {
        let mut hit = None;
        for (i, s) in simples.iter().enumerate() {
            if s.dim() == fac.irr.rep.dim() && iso_irr(s, &fac.irr.rep)? {
                hit = Some(i);
                break;
            }
        }
        let i = hit.ok_or(Error::MissingSimple(format!(
            "composition factor of dimension {} is not among the given simples",
            fac.irr.rep.dim()
        )))?;
        out[i] += fac.multiplicity;
    }
    Ok(out)
}
