use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree`, acting on the right: `i^(g*h) = (i^g)^h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::Domain(format!("images are not a permutation of 0..{n}")));
            }
        }
        Ok(Perm(images))
    }

    /// Build from disjoint cycles of 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut img: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let xi = x as usize;
                if xi >= degree || std::mem::replace(&mut used[xi], true) {
                    return Err(Error::Domain(format!("bad cycle point {x} (degree {degree})")));
                }
                img[xi] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
    pub fn images(&self) -> &[u32] {
        &self.0
    }
    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }

    pub fn pow(&self, n: i64) -> Perm {
        let mut base = if n < 0 { self.inv() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `x⁻¹ · self · x`.
    pub fn conj(&self, x: &Perm) -> Perm {
        x.inv().mul(self).mul(x)
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.0.iter().enumerate().position(|(i, &x)| i as u32 != x).map(|i| i as u32)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            if seen[i] || self.0[i] as usize == i {
                continue;
            }
            let mut c = vec![i as u32];
            seen[i] = true;
            let mut j = self.0[i];
            while j as usize != i {
                seen[j as usize] = true;
                c.push(j);
                j = self.0[j as usize];
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Extend to a larger degree, fixing the new points.
    pub fn extend(&self, degree: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        Perm(v)
    }

    /// Shift the points by `offset` inside a larger degree.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut v: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.0.iter().enumerate() {
            v[i + offset] = x + offset as u32;
        }
        Perm(v)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Cycle notation with 0-based points; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}
