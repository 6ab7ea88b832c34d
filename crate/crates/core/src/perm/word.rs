use std::fmt;

use super::perm::Perm;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

/// A word in group generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![Letter { gen: i, inverse: false }])
    }

    /// Parse whitespace/`*`-separated tokens `gN`, `gN^-1`, `gN^k` with
    /// 1-based generator numbers. `1` or an empty string is the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "1" {
                continue;
            }
            let bad = || Error::Input(format!("bad word token '{tok}'"));
            let rest = tok.strip_prefix('g').ok_or_else(bad)?;
            let (num, exp) = match rest.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let g: usize = num.parse().map_err(|_| bad())?;
            if g == 0 {
                return Err(bad());
            }
            for _ in 0..exp.unsigned_abs() {
                out.push(Letter { gen: g - 1, inverse: exp < 0 });
            }
        }
        Ok(Word(out))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| Letter { gen: l.gen, inverse: !l.inverse }).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Evaluate against permutation generators.
    pub fn eval(&self, gens: &[Perm], degree: usize) -> Result<Perm> {
        let mut acc = Perm::identity(degree);
        for l in &self.0 {
            let g = gens.get(l.gen).ok_or_else(|| {
                Error::Input(format!("word uses generator {} but only {} exist", l.gen + 1, gens.len()))
            })?;
            acc = if l.inverse { acc.mul(&g.inv()) } else { acc.mul(g) };
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inverse { format!("g{}^-1", l.gen + 1) } else { format!("g{}", l.gen + 1) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
