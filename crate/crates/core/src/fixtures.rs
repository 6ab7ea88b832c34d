//! Shipped groups and subgroup embeddings: the alternating group A8 on 8
//! points, its Sylow 3-subgroup P = C3 × C3, the normalizer H' = N(P) of
//! order 72, two order-3 subgroups Q and R of P lying in different
//! H'-classes, and the direct product C4 × H' on 12 points.

use crate::error::Result;
use crate::perm::{Group, Perm, Subgroup, Word};

/// Generators of A8 as 0-based cycles: (0 1 2) and (1 2 3 4 5 6 7).
pub fn a8() -> Group {
    let g1 = Perm::from_cycles(8, &[vec![0, 1, 2]]).expect("valid");
    let g2 = Perm::from_cycles(8, &[vec![1, 2, 3, 4, 5, 6, 7]]).expect("valid");
    Group::new(8, vec![g1, g2]).expect("valid")
}

/// Words for P = ⟨(0 1 2), (3 4 5)⟩ in the A8 generators.
pub const P_WORDS: [&str; 2] = ["g1", "g2^-1 g2^-1 g2^-1 g1 g2 g1 g2 g2"];

/// Words for H' = N(P): P's generators followed by (0 1)(6 7),
/// (0 3)(1 4)(2 5)(6 7) and (0 1)(3 4).
pub const H_WORDS: [&str; 5] = [
    P_WORDS[0],
    P_WORDS[1],
    "g2 g1^-1 g2 g1 g2^-1 g2^-1",
    "g2 g1 g2 g1^-1 g2^-1 g2^-1 g1^-1 g2^-1 g1 g2^-1 g2^-1",
    "g1 g2^-1 g1 g2^-1 g1^-1 g2 g2",
];

/// Q = ⟨(0 1 2)⟩.
pub const Q_WORDS: [&str; 1] = ["g1"];
/// R = ⟨(0 1 2)(3 4 5)⟩.
pub const R_WORDS: [&str; 1] = ["g1 g2^-1 g2^-1 g2^-1 g1 g2 g1 g2 g2"];

fn words(ws: &[&str]) -> Vec<Word> {
    ws.iter().map(|w| Word::parse(w).expect("shipped word")).collect()
}

pub fn a8_subgroup(ws: &[&str]) -> Result<Subgroup> {
    Subgroup::from_words(&a8(), words(ws))
}

/// The A8 fixture with its subgroups P, H', Q, R sharing one parent handle.
#[derive(Clone, Debug)]
pub struct A8Fixture {
    pub g: Group,
    pub p: Subgroup,
    pub h: Subgroup,
    pub q: Subgroup,
    pub r: Subgroup,
}

pub fn a8_fixture() -> A8Fixture {
    let g = a8();
    let sub = |ws: &[&str]| Subgroup::from_words(&g, words(ws)).expect("shipped subgroup");
    A8Fixture { p: sub(&P_WORDS), h: sub(&H_WORDS), q: sub(&Q_WORDS), r: sub(&R_WORDS), g }
}

/// H' as a standalone group on 8 points, with P, Q, R as subgroups given by
/// words in its generators (generators 1 and 2 of H' generate P).
#[derive(Clone, Debug)]
pub struct HFixture {
    pub h: Group,
    pub p: Subgroup,
    pub q: Subgroup,
    pub r: Subgroup,
}

pub fn h_fixture() -> HFixture {
    let a = a8_fixture();
    let h = a.h.group().clone();
    let p = Subgroup::from_words(&h, words(&["g1", "g2"])).expect("P in H'");
    let q = Subgroup::from_words(&h, words(&["g1"])).expect("Q in H'");
    let r = Subgroup::from_words(&h, words(&["g1 g2"])).expect("R in H'");
    HFixture { h, p, q, r }
}

/// C4 × H' on 12 points: H' on 0..7 and C4 = ⟨(8 9 10 11)⟩. Generators:
/// H's five generators followed by the 4-cycle.
#[derive(Clone, Debug)]
pub struct C4HFixture {
    pub g: Group,
    pub p: Subgroup,
    pub h: Subgroup,
    pub z: Subgroup,
}

pub fn c4h_fixture() -> C4HFixture {
    let hf = h_fixture();
    let mut gens: Vec<Perm> = hf.h.gens().iter().map(|x| x.extend(12)).collect();
    gens.push(Perm::from_cycles(12, &[vec![8, 9, 10, 11]]).expect("valid"));
    let g = Group::new(12, gens).expect("valid");
    let sub = |ws: &[&str]| Subgroup::from_words(&g, words(ws)).expect("shipped subgroup");
    C4HFixture { p: sub(&["g1", "g2"]), h: sub(&["g1", "g2", "g3", "g4", "g5"]), z: sub(&["g6"]), g }
}

/// Simple modules of H' over a field of characteristic 3, labelled 1a,
/// 1b, 1c, 1d, 2. They are the
/// summands of the permutation module on the cosets of P, which is
/// semisimple because [H':P] = 8 is prime to 3.
///
/// 1a is trivial; 1b is the nontrivial linear module whose kernel contains
/// an element of order 4; 1c and 1d are the other two linear modules, 1d
/// being the one on which `(0 1)(6 7)` (generator 3) acts trivially. With
/// this choice the Green correspondent of the 28-dimensional simple A8
/// module is 1d.
pub fn h_simples(h: &HFixture, field: &crate::ffield::Field) -> Result<Vec<crate::rep::Rep>> {
    use crate::error::Error;
    use crate::rep::{induce, Rep};
    use crate::structure::indec_decompose;
    let kp = Rep::trivial(h.p.group(), field);
    let perm = induce(&kp, &h.p)?.rep;
    let dec = indec_decompose(&perm, &mut crate::prng::Prng::new(0))?;
    let mut linear: Vec<Rep> = Vec::new();
    let mut two = None;
    for s in dec.summands {
        match s.rep.dim() {
            1 => linear.push(s.rep),
            2 => two = Some(s.rep),
            d => return Err(Error::Theory(format!("unexpected simple of dimension {d} for H'"))),
        }
    }
    let two = two.ok_or_else(|| Error::Theory("no 2-dimensional simple for H'".into()))?;
    if linear.len() != 4 {
        return Err(Error::Theory(format!("expected 4 linear simples, found {}", linear.len())));
    }
    let scalar = |r: &Rep, g: &Perm| -> Result<u8> { Ok(r.element_matrix(g)?.get(0, 0)) };
    let elts = h.h.elements(1000)?;
    let order4: Vec<&Perm> = elts.iter().filter(|x| x.order() == 4).collect();
    let is_trivial = |r: &Rep| r.gens().iter().all(|m| m.get(0, 0) == 1);
    let mut a = None;
    let mut b = None;
    let mut rest = Vec::new();
    for r in linear {
        if is_trivial(&r) {
            a = Some(r);
        } else if order4.iter().any(|x| scalar(&r, x).map(|v| v == 1).unwrap_or(false)) {
            b = Some(r);
        } else {
            rest.push(r);
        }
    }
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) if rest.len() == 2 => (a, b),
        _ => return Err(Error::Theory("linear simples of H' do not match the expected pattern".into())),
    };
    let g3 = &h.h.gens()[2];
    rest.sort_by_key(|r| scalar(r, g3).map(|v| v == 1).unwrap_or(true));
    let mut it = rest.into_iter();
    let c = it.next().expect("two remaining");
    let d = it.next().expect("two remaining");
    Ok(vec![a.with_label("1a"), b.with_label("1b"), c.with_label("1c"), d.with_label("1d"), two.with_label("2")])
}

/// Simple modules of A8 in characteristic 3 of dimensions 1, 7, 13, 28, 35,
/// labelled "k", "7", "13", "28", "35". The 7 comes from the natural module,
/// 13 from the 2-subsets, 28 from the 3-subsets and 35 from 7 ⊗ 13.
pub fn a8_simples(g: &Group, field: &crate::ffield::Field) -> Result<Vec<crate::rep::Rep>> {
    use crate::chop::chop;
    use crate::error::Error;
    use crate::rep::Rep;
    let mut rng = crate::prng::Prng::new(0x38);
    let mut pick = |m: &Rep, d: usize| -> Result<Rep> {
        chop(m, &mut rng)?
            .factors
            .into_iter()
            .find(|x| x.irr.rep.dim() == d)
            .map(|x| x.irr.rep)
            .ok_or_else(|| Error::Theory(format!("no simple factor of dimension {d}")))
    };
    let nat = Rep::natural(g, field);
    let seven = pick(&nat, 7)?;
    let thirteen = pick(&Rep::subsets(g, field, 2)?, 13)?;
    let t28 = pick(&Rep::subsets(g, field, 3)?, 28)?;
    let t35 = pick(&seven.tensor(&thirteen)?, 35)?;
    Ok(vec![
        Rep::trivial(g, field).with_label("k"),
        seven.with_label("7"),
        thirteen.with_label("13"),
        t28.with_label("28"),
        t35.with_label("35"),
    ])
}

/// Simple modules of C4 × H' over a field containing the 4th roots of
/// unity: each H' simple with the C4 generator acting as ζ^i, where ζ is the
/// first primitive 4th root of unity in the field's element order. Returned
/// as four groups of five (i = 0..3), labelled like `1a.i`.
pub fn c4h_simples(c: &C4HFixture, h_simples: &[crate::rep::Rep]) -> Result<Vec<Vec<crate::rep::Rep>>> {
    use crate::error::Error;
    use crate::ffield::Mat;
    use crate::rep::Rep;
    let f = h_simples.first().ok_or_else(|| Error::Input("no simples given".into()))?.field().clone();
    let zeta = f
        .elements()
        .find(|&x| f.pow(x, 4) == 1 && f.pow(x, 2) != 1)
        .ok_or_else(|| Error::Domain(format!("{} has no primitive 4th root of unity", f.name())))?;
    let mut out = Vec::new();
    for i in 0..4 {
        let mut row = Vec::new();
        for s in h_simples {
            let mut gens = s.gens().to_vec();
            gens.push(Mat::scalar(&f, s.dim(), f.pow(zeta, i)));
            let label = format!("{}.{}", s.label().unwrap_or("?"), i);
            row.push(Rep::new(&c.g, &f, s.dim(), gens)?.with_label(label));
        }
        out.push(row);
    }
    Ok(out)
}
