//! Composition factors: spinning, random algebra elements, Norton's
//! irreducibility test with the Holt–Rees refinement, and isomorphism
//! testing of irreducibles via standard bases.

use crate::error::{Error, Result};
use crate::ffield::{char_poly, Elem, Field, Mat, Poly, SemiEchelon};
use crate::prng::Prng;
use crate::rep::{end_space, hom_space, Rep};

/// Attempts per split before giving up.
pub const ATTEMPT_CAP: usize = 200;
/// Initial word length for random algebra elements.
pub const START_WORD_LENGTH: usize = 8;
const MAX_WORD_LENGTH: usize = 64;
/// Only factors of the characteristic polynomial up to this degree are
/// tried as kernels.
const MAX_FACTOR_DEGREE: usize = 12;

/// Closure of the seeds under the matrices, as an echelon basis (rows).
pub fn spin_with(gens: &[Mat], dim: usize, field: &Field, seeds: &[Vec<Elem>]) -> Mat {
    let ech = spin_echelon(gens, dim, field, seeds);
    ech.to_rref().0
}

fn spin_echelon(gens: &[Mat], dim: usize, field: &Field, seeds: &[Vec<Elem>]) -> SemiEchelon {
    let mut ech = SemiEchelon::new(field, dim);
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push(s.clone());
        }
    }
    let mut k = 0;
    while k < queue.len() && !ech.is_full() {
        for g in gens {
            let w = g.vec_mul(&queue[k]);
            if ech.insert(&w) {
                queue.push(w);
            }
        }
        k += 1;
    }
    ech
}

/// Submodule generated by `seeds`, as an echelon basis.
pub fn spin(r: &Rep, seeds: &[Vec<Elem>]) -> Mat {
    spin_with(r.gens(), r.dim(), r.field(), seeds)
}

/// The spin vectors themselves (unreduced) in discovery order.
fn spin_vectors(gens: &[Mat], dim: usize, field: &Field, seed: &[Elem]) -> Vec<Vec<Elem>> {
    let mut ech = SemiEchelon::new(field, dim);
    let mut out = Vec::new();
    if ech.insert(seed) {
        out.push(seed.to_vec());
    }
    let mut k = 0;
    while k < out.len() && !ech.is_full() {
        for g in gens {
            let w = g.vec_mul(&out[k]);
            if ech.insert(&w) {
                out.push(w);
            }
        }
        k += 1;
    }
    out
}

/// `Σ c_i P_i` where `P_i` are the prefix products of a random word of the
/// given length in the generators. Length 0 gives the identity.
pub fn random_algebra_element_with(gens: &[Mat], dim: usize, field: &Field, rng: &mut Prng, len: usize) -> Mat {
    if len == 0 || gens.is_empty() {
        return Mat::identity(field, dim);
    }
    let q = field.q() as u64;
    let mut prefix = Mat::identity(field, dim);
    let mut acc = Mat::zero(field, dim, dim);
    for _ in 0..len {
        let g = &gens[rng.index(gens.len())];
        prefix = prefix.mul(g).expect("square");
        let c = rng.below(q) as Elem;
        if c != 0 {
            acc.add_scaled(c, &prefix);
        }
    }
    acc
}

pub fn random_algebra_element(r: &Rep, rng: &mut Prng, len: usize) -> Mat {
    random_algebra_element_with(r.gens(), r.dim(), r.field(), rng, len)
}

/// Proof of irreducibility: `v` spans `ker f(θ)` over `k[θ]` (the kernel
/// has dimension `deg f`), `v` spins to the whole module, and a kernel
/// vector `w` of `f(θ)ᵀ` spins to everything under the transposed
/// generators.
#[derive(Clone, Debug)]
pub struct IrrCertificate {
    pub element: Mat,
    pub factor: Poly,
    pub vector: Vec<Elem>,
    pub dual_vector: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub enum NortonOutcome {
    Irreducible(IrrCertificate),
    /// Echelon basis of a proper nonzero submodule.
    Submodule(Mat),
    /// Kernel too large to conclude from one vector.
    Inconclusive,
}

fn transposes(gens: &[Mat]) -> Vec<Mat> {
    gens.iter().map(|g| g.transpose()).collect()
}

/// Norton's test for the kernel of `f(θ)`.
pub fn norton_with(gens: &[Mat], dim: usize, field: &Field, theta: &Mat, f: &Poly) -> Result<NortonOutcome> {
    let ft = theta.eval_poly(f)?;
    let kernel = ft.left_nullspace();
    if kernel.rows() == 0 {
        return Err(Error::Domain("witness has zero nullity".into()));
    }
    let v = kernel.row(0).to_vec();
    let s = spin_with(gens, dim, field, std::slice::from_ref(&v));
    if s.rows() < dim {
        return Ok(NortonOutcome::Submodule(s));
    }
    let dual_kernel = ft.nullspace();
    let w = dual_kernel.row(0).to_vec();
    let t = spin_with(&transposes(gens), dim, field, std::slice::from_ref(&w));
    if t.rows() < dim {
        return Ok(NortonOutcome::Submodule(t.nullspace().row_space().0));
    }
    if kernel.rows() == f.degree().unwrap_or(0) {
        return Ok(NortonOutcome::Irreducible(IrrCertificate {
            element: theta.clone(),
            factor: f.clone(),
            vector: v,
            dual_vector: w,
        }));
    }
    Ok(NortonOutcome::Inconclusive)
}

/// Norton's criterion for a witness element with nonzero nullity; the
/// kernel polynomial is `x`.
pub fn norton_irreducible(r: &Rep, theta: &Mat) -> Result<NortonOutcome> {
    norton_with(r.gens(), r.dim(), r.field(), theta, &Poly::x(r.field()))
}

/// Independent re-check of a certificate.
pub fn verify_certificate_with(gens: &[Mat], dim: usize, field: &Field, c: &IrrCertificate) -> bool {
    let Ok(ft) = c.element.eval_poly(&c.factor) else { return false };
    if c.vector.iter().all(|&x| x == 0) || c.dual_vector.iter().all(|&x| x == 0) {
        return false;
    }
    let nullity = dim - ft.rank();
    let in_kernel = ft.vec_mul(&c.vector).iter().all(|&x| x == 0);
    let in_dual_kernel = ft.transpose().vec_mul(&c.dual_vector).iter().all(|&x| x == 0);
    let full = |gs: &[Mat], v: &[Elem]| spin_with(gs, dim, field, &[v.to_vec()]).rows() == dim;
    nullity == c.factor.degree().unwrap_or(0)
        && in_kernel
        && in_dual_kernel
        && full(gens, &c.vector)
        && full(&transposes(gens), &c.dual_vector)
}

pub fn verify_certificate(r: &Rep, c: &IrrCertificate) -> bool {
    verify_certificate_with(r.gens(), r.dim(), r.field(), c)
}

/// Result of one split attempt on an algebra given by generator matrices.
#[derive(Clone, Debug)]
pub enum SplitOutcome {
    Irreducible(IrrCertificate),
    Submodule(Mat),
}

/// Find either a proper submodule or an irreducibility certificate,
/// drawing random algebra elements from `rng`.
pub fn split_or_certify(gens: &[Mat], dim: usize, field: &Field, rng: &mut Prng) -> Result<SplitOutcome> {
    if dim == 0 {
        return Err(Error::Domain("zero module".into()));
    }
    if dim == 1 {
        return Ok(SplitOutcome::Irreducible(IrrCertificate {
            element: Mat::zero(field, 1, 1),
            factor: Poly::x(field),
            vector: vec![1],
            dual_vector: vec![1],
        }));
    }
    let mut len = START_WORD_LENGTH;
    let mut stagnant = 0;
    for _ in 0..ATTEMPT_CAP {
        let theta = random_algebra_element_with(gens, dim, field, rng, len);
        let mut factors = char_poly(&theta)?.factor();
        factors.sort_by_key(|(f, m)| (f.degree().unwrap_or(0) * m, f.degree()));
        for (f, _) in factors.iter().take(3) {
            if f.degree().unwrap_or(0) > MAX_FACTOR_DEGREE {
                continue;
            }
            match norton_with(gens, dim, field, &theta, f)? {
                NortonOutcome::Irreducible(c) => return Ok(SplitOutcome::Irreducible(c)),
                NortonOutcome::Submodule(s) => return Ok(SplitOutcome::Submodule(s)),
                NortonOutcome::Inconclusive => {}
            }
        }
        stagnant += 1;
        if stagnant % 10 == 0 && len < MAX_WORD_LENGTH {
            len *= 2;
        }
    }
    Err(Error::IterationLimit { what: "chop split attempt".into(), limit: ATTEMPT_CAP })
}

/// An irreducible module with proof and splitting information.
#[derive(Clone, Debug)]
pub struct Irreducible {
    pub rep: Rep,
    pub certificate: IrrCertificate,
    pub is_splitting: bool,
}

#[derive(Clone, Debug)]
pub struct ChopFactor {
    pub irr: Irreducible,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct ChopResult {
    pub factors: Vec<ChopFactor>,
    pub warnings: Vec<String>,
}

impl ChopResult {
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity * f.irr.rep.dim()).sum()
    }
    /// Sorted list of (dimension, multiplicity).
    pub fn dims(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.factors.iter().map(|f| (f.irr.rep.dim(), f.multiplicity)).collect();
        v.sort();
        v
    }
}

/// All composition factors (as irreducible subquotients in the order they
/// are found), each with its certificate.
pub fn composition_series_factors(r: &Rep, rng: &mut Prng) -> Result<Vec<(Rep, IrrCertificate)>> {
    let mut out = Vec::new();
    let mut stack = vec![r.clone()];
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        match split_or_certify(m.gens(), m.dim(), m.field(), rng)? {
            SplitOutcome::Irreducible(c) => out.push((m, c)),
            SplitOutcome::Submodule(s) => {
                let q = m.quotient(&s)?;
                let (sub, _) = m.submodule(&s)?;
                stack.push(q);
                stack.push(sub);
            }
        }
    }
    Ok(out)
}

/// Composition factors with multiplicities, grouped up to isomorphism.
pub fn chop(r: &Rep, rng: &mut Prng) -> Result<ChopResult> {
    let pieces = composition_series_factors(r, rng)?;
    let mut factors: Vec<ChopFactor> = Vec::new();
    let mut warnings = Vec::new();
    for (rep, cert) in pieces {
        if let Some(f) = factors.iter_mut().find(|f| iso_irr(&f.irr.rep, &rep).unwrap_or(false)) {
            f.multiplicity += 1;
            continue;
        }
        let is_splitting = end_space(&rep)?.dim() == 1;
        if !is_splitting {
            warnings.push(format!(
                "composition factor of dimension {} is not absolutely irreducible over {}; extend the field before vertex or Green correspondent computations",
                rep.dim(),
                rep.field().name()
            ));
        }
        factors.push(ChopFactor { irr: Irreducible { rep, certificate: cert, is_splitting }, multiplicity: 1 });
    }
    factors.sort_by_key(|f| f.irr.rep.dim());
    Ok(ChopResult { factors, warnings })
}

/// Number of fixed fingerprint elements.
const FINGERPRINT_WORDS: usize = 8;
const FINGERPRINT_WORD_LENGTH: usize = 6;
const FINGERPRINT_SEED: u64 = 0x6669_6e67_6572;

/// One fingerprint entry: element index, kernel polynomial, nullity.
pub type FingerprintEntry = (usize, Poly, usize);

/// Elements θ_i drawn from a fixed public seed (they depend only on the
/// generator matrices), with the nullities of f(θ_i) for the irreducible
/// factors f of degree ≤ 2 of their characteristic polynomials.
/// Isomorphic modules have identical fingerprints.
pub fn fingerprint(r: &Rep) -> Result<Vec<FingerprintEntry>> {
    let mut rng = Prng::new(FINGERPRINT_SEED);
    let mut out = Vec::new();
    for i in 0..FINGERPRINT_WORDS {
        let theta = random_algebra_element_with(r.gens(), r.dim(), r.field(), &mut rng, FINGERPRINT_WORD_LENGTH);
        for (f, _) in char_poly(&theta)?.factor() {
            if f.degree().unwrap_or(0) <= 2 {
                let nullity = r.dim() - theta.eval_poly(&f)?.rank();
                out.push((i, f, nullity));
            }
        }
    }
    Ok(out)
}

fn fingerprint_elements(r: &Rep) -> Vec<Mat> {
    let mut rng = Prng::new(FINGERPRINT_SEED);
    (0..FINGERPRINT_WORDS)
        .map(|_| random_algebra_element_with(r.gens(), r.dim(), r.field(), &mut rng, FINGERPRINT_WORD_LENGTH))
        .collect()
}

/// Canonical form of an irreducible module: the matrices in the basis
/// obtained by spinning the normalised kernel vector of the first
/// fingerprint entry `(x − λ)` with nullity 1. Returns `None` when no such
/// entry exists.
pub fn standard_basis(r: &Rep, fp: &[FingerprintEntry]) -> Result<Option<Rep>> {
    let Some((i, f, _)) = fp.iter().find(|(_, f, n)| f.degree() == Some(1) && *n == 1) else {
        return Ok(None);
    };
    let theta = &fingerprint_elements(r)[*i];
    let k = theta.eval_poly(f)?.left_nullspace();
    let mut v = k.row(0).to_vec();
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero kernel vector");
    r.field().scale(&mut v, r.field().inv(lead)?);
    let vecs = spin_vectors(r.gens(), r.dim(), r.field(), &v);
    if vecs.len() < r.dim() {
        return Err(Error::Domain("standard basis requested for a reducible module".into()));
    }
    let s = Mat::from_vec(r.field(), r.dim(), r.dim(), vecs.concat())?;
    Ok(Some(r.conjugate(&s)?))
}

/// Isomorphism test for irreducible modules.
pub fn iso_irr(a: &Rep, b: &Rep) -> Result<bool> {
    if !a.is_compatible(b) {
        return Err(Error::Shape("iso_irr: modules of different groups or fields".into()));
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let (fa, fb) = (fingerprint(a)?, fingerprint(b)?);
    if fa != fb {
        return Ok(false);
    }
    match (standard_basis(a, &fa)?, standard_basis(b, &fb)?) {
        (Some(sa), Some(sb)) => Ok(sa.gens() == sb.gens()),
        _ => Ok(hom_space(a, b)?.dim() > 0),
    }
}

/// A composition flag for the algebra generated by `gens`: rows of the
/// returned matrix form a basis whose first `sizes[0]` rows span a simple
/// submodule, the first `sizes[0] + sizes[1]` rows the next term, and so on.
pub fn composition_flag(gens: &[Mat], dim: usize, field: &Field, rng: &mut Prng) -> Result<(Mat, Vec<usize>)> {
    if dim == 0 {
        return Ok((Mat::zero(field, 0, 0), Vec::new()));
    }
    match split_or_certify(gens, dim, field, rng)? {
        SplitOutcome::Irreducible(_) => Ok((Mat::identity(field, dim), vec![dim])),
        SplitOutcome::Submodule(sub) => {
            let (sub, piv) = sub.row_space();
            let free: Vec<usize> = (0..dim).filter(|c| !piv.contains(c)).collect();
            let sub_gens = gens.iter().map(|g| sub.mul(g).map(|x| x.select_cols(&piv))).collect::<Result<Vec<_>>>()?;
            let quo_gens = gens
                .iter()
                .map(|g| {
                    let mut m = g.select_rows(&free);
                    for i in 0..m.rows() {
                        let row = m.row_mut(i);
                        for (k, &pc) in piv.iter().enumerate() {
                            let x = row[pc];
                            if x != 0 {
                                field.axpy(row, field.neg(x), sub.row(k));
                            }
                        }
                    }
                    m.select_cols(&free)
                })
                .collect::<Vec<_>>();
            let (ts, mut sizes) = composition_flag(&sub_gens, piv.len(), field, rng)?;
            let (tq, qsizes) = composition_flag(&quo_gens, free.len(), field, rng)?;
            let top = ts.mul(&sub)?;
            let mut lifted = Mat::zero(field, free.len(), dim);
            for i in 0..free.len() {
                for (k, &c) in free.iter().enumerate() {
                    lifted.set(i, c, tq.get(i, k));
                }
            }
            sizes.extend(qsizes);
            Ok((Mat::vstack(&[&top, &lifted])?, sizes))
        }
    }
}
