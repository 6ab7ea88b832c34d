//! Exhaustive utilities for small groups. Everything here enumerates
//! elements and refuses to run above its cap.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::group::Group;
use super::perm::Perm;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

pub const ENUM_CAP: u128 = 1_000_000;
pub const NORMALIZER_CAP: u128 = 100_000;

fn check_cap(g: &Group, cap: u128, what: &str) -> Result<()> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded {
            what: what.to_string(),
            cap: cap as u64,
            size: n.min(u64::MAX as u128) as u64,
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: Perm,
    pub size: usize,
}

/// Every element of a small group together with its conjugacy class.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub elements: Vec<Perm>,
    /// Class index of each element.
    pub class_of: Vec<usize>,
    pub classes: Vec<ConjClass>,
    pub index: HashMap<Perm, usize>,
}

impl ClassPartition {
    pub fn class_of_perm(&self, x: &Perm) -> Option<usize> {
        self.index.get(x).map(|&i| self.class_of[i])
    }

    /// Element indices of class `c`.
    pub fn members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |&(_, &k)| k == c).map(|(i, _)| i)
    }
}

pub fn class_partition(g: &Group) -> Result<ClassPartition> {
    let elts = g.elements(ENUM_CAP)?;
    let index: HashMap<Perm, usize> = elts.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let mut class_of = vec![usize::MAX; elts.len()];
    let gens: Vec<(Perm, Perm)> = g.gens().iter().map(|s| (s.inv(), s.clone())).collect();
    let mut classes = Vec::new();
    for i in 0..elts.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        class_of[i] = c;
        let mut stack = vec![i];
        let mut size = 0;
        while let Some(k) = stack.pop() {
            size += 1;
            for (si, s) in &gens {
                let j = index[&si.mul(&elts[k]).mul(s)];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    stack.push(j);
                }
            }
        }
        classes.push(ConjClass { rep: elts[i].clone(), size });
    }
    Ok(ClassPartition { elements: elts, class_of, classes, index })
}

/// Conjugacy classes in enumeration order.
pub fn conjugacy_classes_small(g: &Group) -> Result<Vec<ConjClass>> {
    Ok(class_partition(g)?.classes)
}

/// Smallest-first generating set for a set of elements already known to
/// form a group.
fn generators_for(degree: usize, elts: &[Perm]) -> Result<Group> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut cur = Group::new(degree, vec![])?;
    for x in elts {
        if !cur.contains(x)? {
            gens.push(x.clone());
            cur = Group::new(degree, gens.clone())?;
        }
    }
    Ok(cur)
}

/// N_G(S) by testing every element of G.
pub fn normalizer_small(g: &Group, s: &Group) -> Result<Group> {
    check_cap(g, NORMALIZER_CAP, "normalizer")?;
    let elts = g.elements(NORMALIZER_CAP)?;
    let mut norm = Vec::new();
    for x in &elts {
        let mut ok = true;
        for t in s.gens() {
            if !s.contains(&t.conj(x))? {
                ok = false;
                break;
            }
        }
        if ok {
            norm.push(x.clone());
        }
    }
    generators_for(g.degree(), &norm)
}

fn p_part(mut n: u128, p: u128) -> u128 {
    let mut r = 1;
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

/// A Sylow p-subgroup, grown one factor of p at a time inside normalizers.
pub fn sylow_small(g: &Group, p: u32) -> Result<Subgroup> {
    check_cap(g, NORMALIZER_CAP, "sylow subgroup")?;
    let target = p_part(g.order(), p as u128);
    let mut s = Group::trivial(g.degree());
    while s.order() < target {
        let n = normalizer_small(g, &s)?;
        let mut grown = None;
        for x in n.elements(ENUM_CAP)? {
            if !s.contains(&x)? && s.contains(&x.pow(p as i64))? {
                let mut gens = s.gens().to_vec();
                gens.push(x);
                grown = Some(Group::new(g.degree(), gens)?);
                break;
            }
        }
        s = grown.ok_or_else(|| Error::Theory("no p-element in normalizer quotient".into()))?;
    }
    Subgroup::from_perms(g, s.gens().to_vec())
}

type ElementSet = BTreeSet<Perm>;

fn closure(start: &ElementSet, x: &Perm) -> ElementSet {
    let mut set = start.clone();
    let mut gens: Vec<Perm> = start.iter().cloned().collect();
    gens.push(x.clone());
    let mut frontier: Vec<Perm> = set.iter().cloned().collect();
    if set.insert(x.clone()) {
        frontier.push(x.clone());
    }
    while let Some(y) = frontier.pop() {
        for s in &gens {
            let z = y.mul(s);
            if set.insert(z.clone()) {
                frontier.push(z);
            }
        }
    }
    set
}

/// Every subgroup of a small group, as element sets, in order of size.
pub fn all_subgroups(g: &Group, cap: u128) -> Result<Vec<ElementSet>> {
    let elts = g.elements(cap)?;
    let mut found: Vec<ElementSet> = vec![std::iter::once(g.identity()).collect()];
    let mut seen: HashSet<ElementSet> = found.iter().cloned().collect();
    let mut k = 0;
    while k < found.len() {
        for x in &elts {
            if found[k].contains(x) {
                continue;
            }
            let c = closure(&found[k], x);
            if seen.insert(c.clone()) {
                found.push(c);
            }
        }
        k += 1;
    }
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(found)
}

/// Representatives of the subgroups of `sub` (of the given order, if any)
/// up to conjugacy in `ambient`.
pub fn subgroup_class_reps_in(sub: &Subgroup, ambient: &Group, order: Option<usize>) -> Result<Vec<Subgroup>> {
    check_cap(ambient, NORMALIZER_CAP, "subgroup classes")?;
    let amb = ambient.elements(NORMALIZER_CAP)?;
    let mut reps: Vec<Subgroup> = Vec::new();
    let mut covered: HashSet<ElementSet> = HashSet::new();
    for s in all_subgroups(sub.group(), NORMALIZER_CAP)? {
        if order.is_some_and(|o| o != s.len()) || covered.contains(&s) {
            continue;
        }
        for x in &amb {
            covered.insert(s.iter().map(|y| y.conj(x)).collect());
        }
        let grp = generators_for(ambient.degree(), &s.iter().cloned().collect::<Vec<_>>())?;
        reps.push(Subgroup::from_perms(ambient, grp.gens().to_vec())?);
    }
    Ok(reps)
}

/// Subgroup generated by an element set (which must be a subgroup).
pub fn group_from_elements(degree: usize, elts: &ElementSet) -> Result<Group> {
    generators_for(degree, &elts.iter().cloned().collect::<Vec<_>>())
}
