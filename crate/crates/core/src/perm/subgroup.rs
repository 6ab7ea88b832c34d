use std::collections::HashMap;

use super::group::Group;
use super::perm::Perm;
use super::word::Word;
use crate::error::{Error, Result};

/// A subgroup of a parent group, validated by membership. When built from
/// words, the words are kept so representations can be restricted without
/// factorising.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Group,
    group: Group,
    words: Option<Vec<Word>>,
}

impl Subgroup {
    pub fn from_words(parent: &Group, words: Vec<Word>) -> Result<Self> {
        let perms = words.iter().map(|w| parent.evaluate_word(w)).collect::<Result<Vec<_>>>()?;
        Ok(Subgroup { parent: parent.clone(), group: Group::new(parent.degree(), perms)?, words: Some(words) })
    }

    pub fn from_perms(parent: &Group, perms: Vec<Perm>) -> Result<Self> {
        for (i, p) in perms.iter().enumerate() {
            if !parent.contains(p)? {
                return Err(Error::NotSubgroup(format!("generator {} ({p}) is not in the parent group", i + 1)));
            }
        }
        Ok(Subgroup { parent: parent.clone(), group: Group::new(parent.degree(), perms)?, words: None })
    }

    /// The whole parent group, with its own generators as words.
    pub fn whole(parent: &Group) -> Self {
        let words = (0..parent.ngens()).map(Word::gen).collect();
        Subgroup { parent: parent.clone(), group: parent.clone(), words: Some(words) }
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }
    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref()
    }
    pub fn order(&self) -> u128 {
        self.group.order()
    }
    pub fn index(&self) -> u128 {
        self.parent.order() / self.group.order()
    }

    /// Reinterpret as a subgroup of a larger group containing the parent.
    pub fn with_parent(&self, parent: &Group) -> Result<Subgroup> {
        Subgroup::from_perms(parent, self.group.gens().to_vec())
    }
}

/// Right transversal of H in G: `reps[i]` represents the coset `H reps[i]`,
/// with `reps[0]` the identity. `action[g][i] = j` means
/// `H reps[i] gens[g] = H reps[j]`.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub reps: Vec<Perm>,
    /// For i > 0: `reps[i] = reps[parent] * gens[gen]`.
    pub tree: Vec<Option<(usize, usize)>>,
    pub action: Vec<Vec<u32>>,
    index: HashMap<Perm, usize>,
    sub: Group,
}

impl Transversal {
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Perm) -> Option<usize> {
        self.index.get(&self.sub.chain().coset_canonical(x)).copied()
    }
}

/// Right transversal by breadth-first search over cosets, with cosets
/// identified through canonical representatives in H's stabiliser chain.
pub fn right_transversal(h: &Subgroup, cap: u128) -> Result<Transversal> {
    let g = h.parent();
    let idx = h.index();
    if idx > cap {
        return Err(Error::CapExceeded { what: "coset enumeration".into(), cap: cap as u64, size: idx as u64 });
    }
    let chain = h.group().chain();
    let id = g.identity();
    let mut reps = vec![id.clone()];
    let mut tree = vec![None];
    let mut index = HashMap::new();
    index.insert(chain.coset_canonical(&id), 0usize);
    let mut action = vec![Vec::with_capacity(idx as usize); g.ngens()];
    let mut k = 0;
    while k < reps.len() {
        for (gi, gen) in g.gens().iter().enumerate() {
            let y = reps[k].mul(gen);
            let key = chain.coset_canonical(&y);
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    let j = reps.len();
                    index.insert(key, j);
                    reps.push(y);
                    tree.push(Some((k, gi)));
                    j
                }
            };
            action[gi].push(j as u32);
        }
        k += 1;
    }
    if reps.len() as u128 != idx {
        return Err(Error::Theory(format!("found {} cosets, expected index {idx}", reps.len())));
    }
    Ok(Transversal { reps, tree, action, index, sub: h.group().clone() })
}
