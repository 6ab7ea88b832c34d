use std::fmt;

use super::echelon::SemiEchelon;
use super::field::{Elem, Field};
use super::mat::Mat;
use crate::error::{Error, Result};

/// Univariate polynomial, coefficients stored low degree first with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }
    pub fn zero(field: &Field) -> Self {
        Self::new(field, vec![])
    }
    pub fn one(field: &Field) -> Self {
        Self::new(field, vec![1])
    }
    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![0, 1])
    }
    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }
    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero lead");
        self.scale(inv)
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let mut v = self.coeffs.clone();
        self.field.scale(&mut v, c);
        Poly::new(&self.field, v)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut v = self.coeffs.clone();
        if v.len() < o.coeffs.len() {
            v.resize(o.coeffs.len(), 0);
        }
        self.field.axpy(&mut v[..o.coeffs.len()], 1, &o.coeffs);
        Poly::new(&self.field, v)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(self.field.neg(1)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut v = vec![0; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                self.field.axpy(&mut v[i..i + o.coeffs.len()], a, &o.coeffs);
            }
        }
        Poly::new(&self.field, v)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::Domain("polynomial division by zero".into()));
        }
        let f = &self.field;
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(d.lead())?;
        let mut q = vec![0; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            if c != 0 {
                q[i] = c;
                f.axpy(&mut r[i..=i + dd], f.neg(c), &d.coeffs);
            }
        }
        r.truncate(dd);
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u·self + v·o = g`, g the monic gcd.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut a, mut b) = (self.clone(), o.clone());
        let (mut ua, mut va) = (Poly::one(f), Poly::zero(f));
        let (mut ub, mut vb) = (Poly::zero(f), Poly::one(f));
        while !b.is_zero() {
            let (q, r) = a.divrem(&b).expect("nonzero divisor");
            let un = ua.sub(&q.mul(&ub));
            let vn = va.sub(&q.mul(&vb));
            a = std::mem::replace(&mut b, r);
            ua = std::mem::replace(&mut ub, un);
            va = std::mem::replace(&mut vb, vn);
        }
        if a.is_zero() {
            return (a, ua, va);
        }
        let c = f.inv(a.lead()).expect("nonzero lead");
        (a.scale(c), ua.scale(c), va.scale(c))
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(o).div_exact(&self.gcd(o)).expect("gcd divides").monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect();
        Poly::new(f, v)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// `self^n mod m`.
    pub fn pow_mod(&self, mut n: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Poly {
        let p = self.field.p() as usize;
        let v = self.coeffs.iter().step_by(p).map(|&c| self.field.pth_root(c)).collect();
        Poly::new(&self.field, v)
    }

    /// Squarefree decomposition of a monic polynomial: pairs (g, m) with
    /// the g pairwise coprime, squarefree, and f = Π g^m.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        let p = self.field.p() as usize;
        let d = f.derivative();
        if d.is_zero() {
            for (g, m) in f.pth_root().squarefree() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = f.gcd(&d);
        let mut w = f.div_exact(&c).expect("gcd divides");
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides");
            if z.deg() > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w).expect("divides");
        }
        if c.deg() > 0 {
            for (g, m) in c.monic().pth_root().squarefree() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Complete factorisation into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients). Deterministic.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        let mut all: Vec<(Poly, usize)> = Vec::new();
        for (g, m) in self.squarefree() {
            for h in berlekamp(&g) {
                all.push((h, m));
            }
        }
        all.sort_by_key(|a| a.0.sort_key());
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (h, m) in all {
            match merged.last_mut() {
                Some(last) if last.0 == h => last.1 += m,
                _ => merged.push((h, m)),
            }
        }
        merged
    }

    pub fn is_irreducible(&self) -> bool {
        let fac = self.factor();
        fac.len() == 1 && fac[0].1 == 1
    }

    fn sort_key(&self) -> (usize, Vec<Elem>) {
        (self.coeffs.len(), self.coeffs.iter().rev().copied().collect())
    }
}

/// Berlekamp factorisation of a monic squarefree polynomial.
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let field = f.field();
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let q = field.q() as u64;
    // Row i of Q holds x^(q i) mod f.
    let xq = Poly::x(field).pow_mod(q, f).expect("nonzero modulus");
    let mut qm = Mat::zero(field, n, n);
    let mut cur = Poly::one(field);
    for i in 0..n {
        for j in 0..n {
            qm.set(i, j, cur.coeff(j));
        }
        cur = cur.mul(&xq).rem(f).expect("nonzero modulus");
    }
    let qmi = qm.sub(&Mat::identity(field, n)).expect("square");
    let kernel = qmi.left_nullspace();
    let r = kernel.rows();
    if r == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    for k in 0..r {
        let v = Poly::new(field, kernel.row(k).to_vec());
        if v.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.deg() <= 1 {
                next.push(u);
                continue;
            }
            let mut rest = u;
            for c in field.elements() {
                if rest.deg() <= 1 {
                    break;
                }
                let g = rest.gcd(&v.sub(&Poly::constant(field, c)));
                if g.deg() > 0 && g.deg() < rest.deg() {
                    rest = rest.div_exact(&g).expect("gcd divides").monic();
                    next.push(g);
                }
            }
            next.push(rest);
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    factors
}

/// Minimal polynomial of a square matrix (row-vector action), as the lcm of
/// the local minimal polynomials of unit vectors chosen to cover the space.
pub fn min_poly(a: &Mat) -> Result<Poly> {
    if !a.is_square() {
        return Err(Error::Shape("min_poly of non-square matrix".into()));
    }
    let field = a.field();
    let n = a.rows();
    let mut global = SemiEchelon::new(field, n);
    let mut acc = Poly::one(field);
    for j in 0..n {
        if global.is_full() {
            break;
        }
        let mut e = vec![0; n];
        e[j] = 1;
        if global.contains(&e) {
            continue;
        }
        let (p, vecs) = krylov(a, &e, &SemiEchelon::new(field, n));
        for v in &vecs {
            global.insert(v);
        }
        acc = acc.lcm(&p);
    }
    Ok(acc)
}

/// Characteristic polynomial as a product of relative Krylov factors.
pub fn char_poly(a: &Mat) -> Result<Poly> {
    Ok(char_poly_factors(a)?.into_iter().fold(Poly::one(a.field()), |acc, p| acc.mul(&p)))
}

/// Relative Krylov polynomials whose product is the characteristic
/// polynomial.
pub fn char_poly_factors(a: &Mat) -> Result<Vec<Poly>> {
    if !a.is_square() {
        return Err(Error::Shape("char_poly of non-square matrix".into()));
    }
    let field = a.field();
    let n = a.rows();
    let mut span = SemiEchelon::new(field, n);
    let mut out = Vec::new();
    for j in 0..n {
        if span.is_full() {
            break;
        }
        let mut e = vec![0; n];
        e[j] = 1;
        if span.contains(&e) {
            continue;
        }
        let (p, vecs) = krylov(a, &e, &span);
        for v in &vecs {
            span.insert(v);
        }
        out.push(p);
    }
    Ok(out)
}

/// Spin `v` under `a` modulo the span of `base`; returns the monic relation
/// polynomial and the Krylov vectors v, vA, ... (up to but excluding the
/// dependent one).
fn krylov(a: &Mat, v: &[Elem], base: &SemiEchelon) -> (Poly, Vec<Vec<Elem>>) {
    let field = a.field();
    let mut ech = base.clone();
    let mut vecs: Vec<Vec<Elem>> = Vec::new();
    let mut cur = v.to_vec();
    loop {
        let k = vecs.len();
        let mut tag = vec![0; k + 1];
        tag[k] = 1;
        match ech.insert_tagged(&cur, tag) {
            Ok(()) => {
                let next = a.vec_mul(&cur);
                vecs.push(std::mem::replace(&mut cur, next));
            }
            Err(tag) => return (Poly::new(field, tag).monic(), vecs),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => cs,
                1 => format!("{cs}x"),
                _ => format!("{cs}x^{i}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {})", self.field.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prng::Prng;

    fn p(f: &Field, c: &[Elem]) -> Poly {
        Poly::new(f, c.to_vec())
    }

    fn companion(f: &Poly) -> Mat {
        let n = f.degree().unwrap();
        let field = f.field();
        let mut m = Mat::zero(field, n, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, 1);
        }
        for j in 0..n {
            m.set(n - 1, j, field.neg(f.coeff(j)));
        }
        m
    }

    fn has_root(f: &Poly) -> bool {
        f.field().elements().any(|x| f.eval(x) == 0)
    }

    #[test]
    fn x4_minus_1_over_gf3_and_gf9() {
        let f3 = Field::prime(3).unwrap();
        let fac = p(&f3, &[2, 0, 0, 0, 1]).factor();
        let got: Vec<(Vec<Elem>, usize)> = fac.iter().map(|(g, m)| (g.coeffs().to_vec(), *m)).collect();
        assert_eq!(got, vec![(vec![1, 1], 1), (vec![2, 1], 1), (vec![1, 0, 1], 1)]);
        let f9 = Field::from_order(9).unwrap();
        let fac = p(&f9, &[f9.neg(1), 0, 0, 0, 1]).factor();
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = Field::prime(3).unwrap();
        // (x+1)^3 (x^2+1)^2 (x+2)
        let a = p(&f, &[1, 1]);
        let b = p(&f, &[1, 0, 1]);
        let c = p(&f, &[2, 1]);
        let g = a.mul(&a).mul(&a).mul(&b).mul(&b).mul(&c);
        let fac = g.factor();
        assert_eq!(fac, vec![(a, 3), (c, 1), (b, 2)]);
    }

    #[test]
    fn random_factorisations_remultiply() {
        let mut rng = Prng::new(1);
        for q in [2, 3, 4, 5, 9] {
            let f = Field::from_order(q).unwrap();
            for _ in 0..200 {
                let d = 1 + rng.index(10);
                let mut c: Vec<Elem> = (0..d).map(|_| rng.below(q as u64) as Elem).collect();
                c.push(1);
                let g = p(&f, &c);
                let fac = g.factor();
                let prod = fac.iter().fold(Poly::one(&f), |acc, (h, m)| (0..*m).fold(acc, |a, _| a.mul(h)));
                assert_eq!(prod, g);
                for (h, _) in &fac {
                    assert_eq!(h.lead(), 1);
                    if h.degree().unwrap() > 1 {
                        assert!(!has_root(h));
                    }
                    if h.degree().unwrap() <= 3 {
                        // degree ≤ 3 with no root is irreducible
                        assert!(h.degree() == Some(1) || !has_root(h));
                    }
                }
            }
        }
    }

    #[test]
    fn companion_matrix_min_and_char_poly() {
        let mut rng = Prng::new(4);
        for q in [2, 3, 9] {
            let f = Field::from_order(q).unwrap();
            for _ in 0..30 {
                let d = 1 + rng.index(8);
                let mut c: Vec<Elem> = (0..d).map(|_| rng.below(q as u64) as Elem).collect();
                c.push(1);
                let g = p(&f, &c);
                let m = companion(&g);
                assert_eq!(min_poly(&m).unwrap(), g);
                assert_eq!(char_poly(&m).unwrap(), g);
                assert!(m.eval_poly(&g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn min_poly_of_block_diagonal() {
        let f = Field::prime(3).unwrap();
        let a = companion(&p(&f, &[1, 1]));
        let b = companion(&p(&f, &[1, 2, 1]));
        let m = Mat::block_diag(&[&a, &b, &a]).unwrap();
        assert_eq!(min_poly(&m).unwrap(), p(&f, &[1, 2, 1]));
        assert_eq!(char_poly(&m).unwrap(), p(&f, &[1, 1]).mul(&p(&f, &[1, 1])).mul(&p(&f, &[1, 2, 1])));
        assert!(Mat::identity(&f, 4).eval_poly(&p(&f, &[2, 1])).unwrap().is_zero());
    }

    #[test]
    fn gcd_lcm_divrem() {
        let f = Field::prime(5).unwrap();
        let a = p(&f, &[1, 2, 3, 4]);
        let b = p(&f, &[3, 0, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
        let g = a.gcd(&b);
        assert!(a.rem(&g).unwrap().is_zero() && b.rem(&g).unwrap().is_zero());
        assert_eq!(a.lcm(&b).mul(&g), a.mul(&b).monic());
        assert!(a.divrem(&Poly::zero(&f)).is_err());
    }
}
