use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Field element, encoded as the integer whose base-p digits are the
/// coefficients (low to high) of its polynomial representative.
pub type Elem = u8;

/// Largest supported field order (byte-per-element storage).
pub const MAX_Q: u32 = 256;

/// Shipped modulus table: `(p, e, coefficients low-to-high)`.
///
/// These are the Conway polynomials for the listed orders. Any order not
/// listed here needs an explicit modulus via [`Field::with_modulus`].
pub const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field GF(p^e) with precomputed arithmetic tables.
///
/// Cloning is cheap (shared tables). Two handles compare equal when they
/// have the same characteristic, degree and modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Multiply two digit vectors modulo `modulus` over GF(p).
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic
    for d in (e..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for k in 0..=e {
            let sub = c * modulus[k] % p;
            prod[d - e + k] = (prod[d - e + k] + p - sub) % p;
        }
    }
    prod.truncate(e);
    prod
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Brute-force irreducibility over GF(p): no monic factor of degree ≤ e/2.
fn is_irreducible_over_prime(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    if e == 1 {
        return true;
    }
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem_is_zero(modulus, &f, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(a: &[u32], b: &[u32], p: u32) -> bool {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for k in 0..=db {
                let sub = c * b[k] % p;
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}

impl Field {
    /// GF(p^e) with the modulus from the shipped table (or `x` for e = 1).
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if e == 1 {
            return Self::with_modulus(p, &[0, 1]);
        }
        let entry = MODULUS_TABLE
            .iter()
            .find(|(pp, ee, _)| *pp == p && *ee == e)
            .ok_or_else(|| Error::Input(format!("no shipped modulus for GF({p}^{e})")))?;
        Self::with_modulus(p, entry.2)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Parses `p`, `p^e` or `q` (prime power).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, e)) = s.split_once('^') {
            let p: u32 = p.trim().parse().map_err(|_| Error::Input(format!("bad field '{s}'")))?;
            let e: u32 = e.trim().parse().map_err(|_| Error::Input(format!("bad field '{s}'")))?;
            return Self::new(p, e);
        }
        let q: u32 = s.parse().map_err(|_| Error::Input(format!("bad field '{s}'")))?;
        Self::from_order(q)
    }

    pub fn from_order(q: u32) -> Result<Self> {
        for p in 2..=q {
            if q % p == 0 {
                let mut e = 0;
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                if r != 1 {
                    return Err(Error::Input(format!("{q} is not a prime power")));
                }
                return Self::new(p, e);
            }
        }
        Err(Error::Input(format!("{q} is not a prime power")))
    }

    /// GF(p^e) where e = deg(modulus). The modulus must be monic and
    /// irreducible over GF(p); this is checked.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Input("modulus must be monic with coefficients < p".into()));
        }
        let e = (modulus.len() - 1) as u32;
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_Q)
            .ok_or_else(|| Error::Input(format!("field order {p}^{e} exceeds {MAX_Q}")))?;
        if !is_irreducible_over_prime(modulus, p) {
            return Err(Error::Input(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        let dig: Vec<Vec<u32>> = (0..q).map(|x| digits(x, p, e)).collect();
        for a in 0..qs {
            let na: Vec<u32> = dig[a].iter().map(|&d| (p - d) % p).collect();
            neg[a] = undigits(&na, p) as Elem;
            for b in 0..qs {
                let s: Vec<u32> = dig[a].iter().zip(&dig[b]).map(|(&x, &y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&s, p) as Elem;
                let m = poly_mulmod(&dig[a], &dig[b], modulus, p);
                mul[a * qs + b] = undigits(&m, p) as Elem;
            }
        }
        for a in 1..qs {
            let b = (1..qs).find(|&b| mul[a * qs + b] == 1).expect("field element without inverse");
            inv[a] = b as Elem;
        }
        Ok(Field(Arc::new(FieldInner { p, e, q, modulus: modulus.to_vec(), add, mul, neg, inv })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.0.inv[a as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Image of an integer under Z → GF(p) ⊆ GF(q).
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    /// Row of the multiplication table for `c`.
    #[inline]
    pub(crate) fn mul_row(&self, c: Elem) -> &[Elem] {
        let q = self.0.q as usize;
        &self.0.mul[c as usize * q..(c as usize + 1) * q]
    }

    /// `dst += c * src`, elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        let inner = &*self.0;
        match (inner.p, inner.e) {
            (2, 1) => {
                for (x, &y) in dst.iter_mut().zip(src) {
                    *x ^= y;
                }
            }
            (3, 1) => {
                // x, y in {0,1,2}; c in {1,2}
                for (x, &y) in dst.iter_mut().zip(src) {
                    let mut s = *x + c * y;
                    s = if s >= 3 { s - 3 } else { s };
                    s = if s >= 3 { s - 3 } else { s };
                    *x = s;
                }
            }
            (2, _) => {
                let mrow = self.mul_row(c);
                for (x, &y) in dst.iter_mut().zip(src) {
                    *x ^= mrow[y as usize];
                }
            }
            _ => {
                let mrow = self.mul_row(c);
                let q = inner.q as usize;
                for (x, &y) in dst.iter_mut().zip(src) {
                    *x = inner.add[*x as usize * q + mrow[y as usize] as usize];
                }
            }
        }
    }

    /// `v *= c`, elementwise.
    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        if c == 1 {
            return;
        }
        let mrow = self.mul_row(c);
        for x in v.iter_mut() {
            *x = mrow[*x as usize];
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|x| x as Elem)
    }

    /// Frobenius a ↦ a^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// The unique p-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self, a: Elem) -> Elem {
        // a^(q/p) is the inverse of Frobenius
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    /// Short description like `GF(3^2)`.
    pub fn name(&self) -> String {
        if self.0.e == 1 {
            format!("GF({})", self.0.p)
        } else {
            format!("GF({}^{})", self.0.p, self.0.e)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_basics() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.inv(2).unwrap(), 2);
        assert!(f.inv(0).is_err());
        assert_eq!(f.neg(1), 2);
    }

    #[test]
    fn gf9_x_squared() {
        // modulus x^2 + 2x + 2: x^2 = -2x - 2 = x + 1, encoded 1 + 1*3 = 4
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 2, 1]);
        let x = 3;
        assert_eq!(f.mul(x, x), 4);
    }

    #[test]
    fn shipped_table_is_irreducible() {
        for &(p, e, _) in MODULUS_TABLE {
            Field::new(p, e).unwrap();
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(Field::with_modulus(2, &[1, 0, 1]).is_err());
        assert!(Field::with_modulus(4, &[0, 1]).is_err());
    }

    #[test]
    fn inverse_of_product_and_additive_frobenius() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1), (2, 3), (3, 3), (7, 1), (3, 4), (2, 6)] {
            let f = Field::new(p, e).unwrap();
            if f.q() > 81 {
                continue;
            }
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    if a != 0 && b != 0 {
                        let lhs = f.inv(f.mul(a, b)).unwrap();
                        let rhs = f.mul(f.inv(b).unwrap(), f.inv(a).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
                assert_eq!(f.frobenius(f.pth_root(a)), a);
            }
        }
    }

    #[test]
    fn axpy_kernels_agree_with_tables() {
        for q in [2, 3, 4, 5, 8, 9, 27] {
            let f = Field::from_order(q).unwrap();
            let src: Vec<Elem> = (0..50).map(|i| (i * 7 % q) as Elem).collect();
            for c in f.elements() {
                let mut dst: Vec<Elem> = (0..50).map(|i| (i * 5 % q) as Elem).collect();
                let expect: Vec<Elem> = dst.iter().zip(&src).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect();
                f.axpy(&mut dst, c, &src);
                assert_eq!(dst, expect);
            }
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Field::parse("3^2").unwrap().q(), 9);
        assert_eq!(Field::parse("9").unwrap().e(), 2);
        assert!(Field::parse("6").is_err());
    }
}
