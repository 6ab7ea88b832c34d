use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::perm::Perm;
use super::slp::{Line, Monoid, Slp, SlpMemo};
use super::word::Word;
use crate::error::{Error, Result};

/// One level of a stabiliser chain.
#[derive(Clone, Debug)]
pub struct Level {
    pub base: u32,
    /// Strong generators fixing all earlier base points (SLP lines).
    pub gens: Vec<usize>,
    pub gen_perms: Vec<Perm>,
    /// Orbit of the base point in discovery order; `orbit[0] = base`.
    pub orbit: Vec<u32>,
    /// Position of each point in `orbit`, or `u32::MAX`.
    pub pos: Vec<u32>,
    /// `trans[k]` maps `base` to `orbit[k]`.
    pub trans: Vec<Perm>,
    pub trans_line: Vec<usize>,
    /// Schreier tree: `(parent orbit index, index into gens)` for k > 0.
    pub tree: Vec<(u32, u32)>,
}

impl Level {
    fn new(base: u32, degree: usize, id_line: usize) -> Self {
        let mut pos = vec![u32::MAX; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            gen_perms: Vec::new(),
            orbit: vec![base],
            pos,
            trans: vec![Perm::identity(degree)],
            trans_line: vec![id_line],
            tree: vec![(0, 0)],
        }
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    /// Add a strong generator and extend the orbit.
    fn add_gen(&mut self, line: usize, perm: Perm, slp: &mut Slp) {
        self.gens.push(line);
        self.gen_perms.push(perm);
        let new = self.gens.len() - 1;
        let mut queue: VecDeque<(usize, bool)> = (0..self.orbit.len()).map(|k| (k, true)).collect();
        while let Some((k, only_new)) = queue.pop_front() {
            let range = if only_new { new..new + 1 } else { 0..self.gens.len() };
            for s in range {
                let img = self.gen_perms[s].apply(self.orbit[k]);
                if self.pos[img as usize] != u32::MAX {
                    continue;
                }
                let idx = self.orbit.len();
                self.pos[img as usize] = idx as u32;
                self.orbit.push(img);
                self.trans.push(self.trans[k].mul(&self.gen_perms[s]));
                let l = slp.push(Line::Mul(self.trans_line[k], self.gens[s]));
                self.trans_line.push(l);
                self.tree.push((k as u32, s as u32));
                queue.push_back((idx, false));
            }
        }
    }
}

/// Deterministic stabiliser chain. Every strong generator and transversal
/// element is recorded as a line of a straight-line program over the
/// group's generators, so the same factorisations can be evaluated in any
/// representation.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    slp: Slp,
    id_line: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Perm]) -> Self {
        let mut slp = Slp::new();
        let id_line = slp.push(Line::Id);
        let gen_lines: Vec<usize> = (0..gens.len()).map(|i| slp.push(Line::Gen(i))).collect();
        let mut ch = StabChain { degree, slp, id_line, levels: Vec::new() };
        for (g, &l) in gens.iter().zip(&gen_lines) {
            if g.is_identity() {
                continue;
            }
            if ch.levels.iter().all(|lv| g.apply(lv.base) == lv.base) {
                let b = g.smallest_moved_point().expect("nonidentity");
                ch.levels.push(Level::new(b, degree, id_line));
            }
            // Generator belongs to every level whose earlier base points it fixes.
            for i in 0..ch.levels.len() {
                if i > 0 && g.apply(ch.levels[i - 1].base) != ch.levels[i - 1].base {
                    break;
                }
                ch.levels[i].add_gen(l, g.clone(), &mut ch.slp);
            }
        }
        ch.complete();
        ch
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lv = i as usize;
            let mut jumped = None;
            'outer: for k in 0..self.levels[lv].orbit.len() {
                for s in 0..self.levels[lv].gens.len() {
                    let level = &self.levels[lv];
                    let img = level.gen_perms[s].apply(level.orbit[k]);
                    let k2 = level.pos[img as usize] as usize;
                    if k2 != 0 && level.tree[k2] == (k as u32, s as u32) {
                        continue;
                    }
                    let h = level.trans[k].mul(&level.gen_perms[s]).mul(&level.trans[k2].inv());
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, factors, j) = self.sift_from(&h, lv + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    // Record the residue as an SLP line.
                    let level = &self.levels[lv];
                    let (tk, gs, tk2) = (level.trans_line[k], level.gens[s], level.trans_line[k2]);
                    let a = self.slp.push(Line::Mul(tk, gs));
                    let b = self.slp.push(Line::Inv(tk2));
                    let mut line = self.slp.push(Line::Mul(a, b));
                    for (fl, fk) in factors {
                        let inv = self.slp.push(Line::Inv(self.levels[fl].trans_line[fk]));
                        line = self.slp.push(Line::Mul(line, inv));
                    }
                    if j == self.levels.len() {
                        let b = residue.smallest_moved_point().expect("nonidentity");
                        self.levels.push(Level::new(b, self.degree, self.id_line));
                    }
                    for l in lv + 1..=j {
                        self.levels[l].add_gen(line, residue.clone(), &mut self.slp);
                    }
                    jumped = Some(j);
                    break 'outer;
                }
            }
            match jumped {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Sift `g` starting at level `start`. Returns the residue, the
    /// transversal factors used `(level, orbit index)` in order, and the
    /// level where sifting stopped (`levels.len()` if it went through).
    fn sift_from(&self, g: &Perm, start: usize) -> (Perm, Vec<(usize, usize)>, usize) {
        let mut h = g.clone();
        let mut factors = Vec::new();
        for (l, lv) in self.levels.iter().enumerate().skip(start) {
            let k = lv.pos[h.apply(lv.base) as usize];
            if k == u32::MAX {
                return (h, factors, l);
            }
            if k != 0 {
                h = h.mul(&lv.trans[k as usize].inv());
                factors.push((l, k as usize));
            }
        }
        (h, factors, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }
    pub fn slp(&self) -> &Slp {
        &self.slp
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    /// SLP lines whose product (left to right) equals `g`, or `None` if
    /// `g` is not in the group.
    pub fn factorize(&self, g: &Perm) -> Option<Vec<usize>> {
        if g.degree() != self.degree {
            return None;
        }
        let (res, factors, _) = self.sift_from(g, 0);
        if !res.is_identity() {
            return None;
        }
        // g = u_last ... u_first
        Some(factors.iter().rev().map(|&(l, k)| self.levels[l].trans_line[k]).collect())
    }

    /// Canonical representative of the right coset `H g` (H = this group):
    /// the element of the coset whose base images are lexicographically
    /// least in the chain's level order.
    pub fn coset_canonical(&self, g: &Perm) -> Perm {
        let mut x = g.clone();
        for lv in &self.levels {
            let mut best = 0usize;
            let mut best_img = x.apply(lv.orbit[0]);
            for (k, &b) in lv.orbit.iter().enumerate().skip(1) {
                let im = x.apply(b);
                if im < best_img {
                    best_img = im;
                    best = k;
                }
            }
            if best != 0 {
                x = lv.trans[best].mul(&x);
            }
        }
        x
    }

    /// All elements, by walking transversals. Caller checks the size.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for lv in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lv.trans.len());
            for t in &lv.trans {
                for x in &out {
                    next.push(x.mul(t));
                }
            }
            out = next;
        }
        out
    }
}

struct GroupInner {
    degree: usize,
    gens: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

/// A permutation group given by generators. Cheap to clone; the
/// stabiliser chain is built on first use and cached.
#[derive(Clone)]
pub struct Group(Arc<GroupInner>);

impl Group {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        Ok(Group(Arc::new(GroupInner { degree, gens, chain: OnceLock::new() })))
    }

    pub fn trivial(degree: usize) -> Self {
        Group::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }
    pub fn gens(&self) -> &[Perm] {
        &self.0.gens
    }
    pub fn ngens(&self) -> usize {
        self.0.gens.len()
    }
    pub fn chain(&self) -> &StabChain {
        self.0.chain.get_or_init(|| StabChain::build(self.0.degree, &self.0.gens))
    }
    pub fn order(&self) -> u128 {
        self.chain().order()
    }
    /// Same degree and generator list (or literally the same handle).
    pub fn same(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.degree() == other.degree() && self.gens() == other.gens())
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), got: g.degree() });
        }
        Ok(self.chain().contains(g))
    }

    pub fn evaluate_word(&self, w: &Word) -> Result<Perm> {
        w.eval(self.gens(), self.degree())
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    /// Evaluate an SLP line of this group's chain as a permutation.
    pub fn eval_line(&self, line: usize, inverse: bool, memo: &mut SlpMemo<Perm>) -> Perm {
        self.chain().slp().eval(&PermMonoid(self), line, inverse, memo)
    }

    /// Enumerate all elements; fails if the order exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<Vec<Perm>> {
        let n = self.order();
        if n > cap {
            return Err(Error::CapExceeded { what: "group enumeration".into(), cap: cap as u64, size: n as u64 });
        }
        Ok(self.chain().elements())
    }

    /// Orbit of `point` with a Schreier tree: for each orbit point its
    /// parent index and the generator used (`None` for the root).
    pub fn orbit(&self, point: u32) -> Result<Orbit> {
        orbit(self.gens(), self.degree(), point)
    }
}

struct PermMonoid<'a>(&'a Group);

impl Monoid for PermMonoid<'_> {
    type T = Perm;
    fn one(&self) -> Perm {
        self.0.identity()
    }
    fn gen(&self, i: usize, inverse: bool) -> Perm {
        if inverse {
            self.0.gens()[i].inv()
        } else {
            self.0.gens()[i].clone()
        }
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.mul(b)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree {}, gens {:?})", self.degree(), self.gens())
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<u32>,
    pub tree: Vec<Option<(usize, usize)>>,
}

impl Orbit {
    /// Word (generator indices) mapping the root to `points[k]`.
    pub fn word_to(&self, mut k: usize) -> Word {
        let mut letters = Vec::new();
        while let Some((parent, g)) = self.tree[k] {
            letters.push(super::word::Letter { gen: g, inverse: false });
            k = parent;
        }
        letters.reverse();
        Word(letters)
    }
}

pub fn orbit(gens: &[Perm], degree: usize, point: u32) -> Result<Orbit> {
    if point as usize >= degree {
        return Err(Error::Domain(format!("point {point} out of range for degree {degree}")));
    }
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut points = vec![point];
    let mut tree = vec![None];
    let mut k = 0;
    while k < points.len() {
        for (gi, g) in gens.iter().enumerate() {
            let im = g.apply(points[k]);
            if !std::mem::replace(&mut seen[im as usize], true) {
                points.push(im);
                tree.push(Some((k, gi)));
            }
        }
        k += 1;
    }
    Ok(Orbit { points, tree })
}
