use modrep::fixtures::{a8_fixture, c4h_fixture, h_fixture};
use modrep::perm::small::{conjugacy_classes_small, normalizer_small, subgroup_class_reps_in, sylow_small};
use modrep::perm::{orbit, right_transversal, Group, Perm, Subgroup, Word};
use proptest::prelude::*;

fn cyc(n: usize, cs: &[&[u32]]) -> Perm {
    Perm::from_cycles(n, &cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn orbits() {
    let t = Group::trivial(5);
    assert_eq!(t.orbit(3).unwrap().points, vec![3]);
    let a = a8_fixture();
    let o = a.g.orbit(5).unwrap();
    assert_eq!(o.points.len(), 8);
    for (k, &pt) in o.points.iter().enumerate() {
        let w = o.word_to(k);
        assert_eq!(a.g.evaluate_word(&w).unwrap().apply(5), pt);
    }
    let c = [cyc(5, &[&[0, 1, 2]])];
    assert_eq!(orbit(&c, 5, 4).unwrap().points, vec![4]);
}

#[test]
fn shipped_orders() {
    let a = a8_fixture();
    assert_eq!(a.g.order(), 20160);
    assert_eq!(a.h.order(), 72);
    assert_eq!(a.p.order(), 9);
    assert_eq!(a.q.order(), 3);
    assert_eq!(a.r.order(), 3);
    let gens = a.p.group().gens();
    assert_eq!(gens[0], cyc(8, &[&[0, 1, 2]]));
    assert_eq!(gens[1], cyc(8, &[&[3, 4, 5]]));
    assert!(gens.iter().all(|g| g.order() == 3));
    let hg = a.h.group().gens();
    assert_eq!(hg[2], cyc(8, &[&[0, 1], &[6, 7]]));
    assert_eq!(hg[3], cyc(8, &[&[0, 3], &[1, 4], &[2, 5], &[6, 7]]));
    assert_eq!(hg[4], cyc(8, &[&[0, 1], &[3, 4]]));
    let c = c4h_fixture();
    assert_eq!(c.g.order(), 288);
    assert_eq!(c.h.order(), 72);
    let hf = h_fixture();
    assert_eq!(hf.r.group().gens()[0], cyc(8, &[&[0, 1, 2], &[3, 4, 5]]));
}

#[test]
fn membership_sound_and_complete_on_a8() {
    let a = a8_fixture();
    let s8 = Group::new(8, vec![cyc(8, &[&[0, 1]]), cyc(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]])]).unwrap();
    assert_eq!(s8.order(), 40320);
    for x in s8.elements(100_000).unwrap() {
        let even = x.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0;
        assert_eq!(a.g.contains(&x).unwrap(), even);
    }
    assert!(a.g.contains(&Perm::identity(9)).is_err());
}

#[test]
fn factorize_reconstructs_elements() {
    let a = a8_fixture();
    let mut memo = Default::default();
    for x in a.h.group().elements(1000).unwrap() {
        let lines = a.g.chain().factorize(&x).unwrap();
        let mut acc = a.g.identity();
        for l in lines {
            acc = acc.mul(&a.g.eval_line(l, false, &mut memo));
        }
        assert_eq!(acc, x);
    }
}

#[test]
fn words() {
    let a = a8_fixture();
    assert!(a.g.evaluate_word(&Word::empty()).unwrap().is_identity());
    assert!(a.g.evaluate_word(&Word::parse("g1 g1^-1").unwrap()).unwrap().is_identity());
    assert!(a.g.evaluate_word(&Word::parse("g3").unwrap()).is_err());
    assert!(Word::parse("h1").is_err());
    let w = Word::parse("g2^3 g1^-2").unwrap();
    assert_eq!(w.0.len(), 5);
    assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
}

#[test]
fn transversals() {
    let a = a8_fixture();
    let t = right_transversal(&a.h, 1_000_000).unwrap();
    assert_eq!(t.len(), 280);
    assert!(t.reps[0].is_identity());
    let t = right_transversal(&a.p, 1_000_000).unwrap();
    assert_eq!(t.len(), 2240);
    // distinct cosets: x y^-1 not in P
    for i in 1..40 {
        assert!(!a.p.group().contains(&t.reps[i].mul(&t.reps[0].inv())).unwrap());
        assert_eq!(t.coset_of(&a.p.group().gens()[1].mul(&t.reps[i])), Some(i));
    }
    let whole = Subgroup::whole(&a.g);
    assert_eq!(right_transversal(&whole, 10).unwrap().len(), 1);
    assert!(right_transversal(&a.p, 100).is_err());
}

#[test]
fn non_subgroup_rejected() {
    let a = a8_fixture();
    assert!(Subgroup::from_perms(&a.g, vec![cyc(8, &[&[0, 1]])]).is_err());
}

#[test]
fn small_utilities() {
    let a = a8_fixture();
    let syl = sylow_small(&a.g, 3).unwrap();
    assert_eq!(syl.order(), 9);
    let n = normalizer_small(&a.g, a.p.group()).unwrap();
    assert_eq!(n.order(), 72);
    for g in a.p.group().gens() {
        assert!(n.contains(g).unwrap());
        for x in n.gens() {
            assert!(a.p.group().contains(&g.conj(x)).unwrap());
        }
    }
    let nsyl = normalizer_small(&a.g, syl.group()).unwrap();
    assert_eq!(nsyl.order(), 72);
    let reps = subgroup_class_reps_in(&a.p, a.h.group(), Some(3)).unwrap();
    assert_eq!(reps.len(), 2);
    let h = a.h.group();
    assert_eq!(conjugacy_classes_small(h).unwrap().len(), 9);
    let c = c4h_fixture();
    let cls = conjugacy_classes_small(&c.g).unwrap();
    assert_eq!(cls.len(), 36);
    assert_eq!(cls.iter().map(|c| c.size).sum::<usize>(), 288);
    assert!(normalizer_small(
        &Group::new(10, vec![cyc(10, &[&[0, 1]]), cyc(10, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]])]).unwrap(),
        &Group::trivial(10)
    )
    .is_err());
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn chain_invariants(gens in prop::collection::vec(arb_perm(7), 1..3)) {
        let g = Group::new(7, gens.clone()).unwrap();
        let n = g.order();
        prop_assert_eq!(5040 % n, 0);
        for x in &gens {
            prop_assert!(g.contains(x).unwrap());
        }
        let elts = g.elements(10_000).unwrap();
        prop_assert_eq!(elts.len() as u128, n);
        let set: std::collections::HashSet<_> = elts.iter().cloned().collect();
        prop_assert_eq!(set.len() as u128, n);
        let h = Subgroup::from_perms(&g, vec![gens[0].clone()]).unwrap();
        let t = right_transversal(&h, 10_000).unwrap();
        prop_assert_eq!(t.len() as u128 * h.order(), n);
    }
}
