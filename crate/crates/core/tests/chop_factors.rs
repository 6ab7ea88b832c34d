use modrep::chop::{chop, iso_irr, norton_irreducible, random_algebra_element, spin, verify_certificate};
use modrep::ffield::{Field, Mat};
use modrep::fixtures::{a8_fixture, h_fixture};
use modrep::prng::Prng;
use modrep::rep::{end_space, Rep};

fn gf3() -> Field {
    Field::prime(3).unwrap()
}

fn random_invertible(f: &Field, n: usize, rng: &mut Prng) -> Mat {
    loop {
        let d = (0..n * n).map(|_| rng.below(f.q() as u64) as u8).collect();
        let m = Mat::from_vec(f, n, n, d).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

#[test]
fn spin_examples() {
    let a = a8_fixture();
    let nat = Rep::natural(&a.g, &gf3());
    assert_eq!(spin(&nat, &[vec![0; 8]]).rows(), 0);
    assert_eq!(spin(&nat, &[vec![1; 8]]).rows(), 1);
    let mut e = vec![0; 8];
    e[0] = 1;
    assert_eq!(spin(&nat, &[e]).rows(), 8);
}

#[test]
fn random_elements_are_deterministic_and_central_commuting() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let m = Rep::subsets(&hf.h, &f, 2).unwrap();
    let x = random_algebra_element(&m, &mut Prng::new(4), 8);
    let y = random_algebra_element(&m, &mut Prng::new(4), 8);
    assert_eq!(x, y);
    assert!(random_algebra_element(&m, &mut Prng::new(4), 0).is_identity());
    for e in end_space(&m).unwrap().maps() {
        assert_eq!(x.mul(e).unwrap(), e.mul(&x).unwrap());
    }
}

#[test]
fn a8_permutation_modules() {
    let a = a8_fixture();
    let f = gf3();
    let mut rng = Prng::new(1);
    let nat = chop(&Rep::natural(&a.g, &f), &mut rng).unwrap();
    assert_eq!(nat.dims(), vec![(1, 1), (7, 1)]);
    let s2 = chop(&Rep::subsets(&a.g, &f, 2).unwrap(), &mut rng).unwrap();
    assert_eq!(s2.total_dim(), 28);
    assert!(s2.dims().iter().any(|&(d, _)| d == 13));
    let s3 = chop(&Rep::subsets(&a.g, &f, 3).unwrap(), &mut rng).unwrap();
    assert!(s3.dims().iter().any(|&(d, _)| d == 28));
    for fac in s3.factors.iter().chain(&s2.factors) {
        assert!(verify_certificate(&fac.irr.rep, &fac.irr.certificate));
        assert!(fac.irr.is_splitting);
    }
}

#[test]
fn tensor_square_of_seven() {
    let a = a8_fixture();
    let f = gf3();
    let mut rng = Prng::new(2);
    let nat = chop(&Rep::natural(&a.g, &f), &mut rng).unwrap();
    let seven = nat.factors.iter().find(|x| x.irr.rep.dim() == 7).unwrap().irr.rep.clone();
    let t = chop(&seven.tensor(&seven).unwrap(), &mut rng).unwrap();
    assert_eq!(t.total_dim(), 49);
    assert!(t.dims().iter().any(|&(d, _)| d == 13));
    assert!(iso_irr(&seven, &seven.dual().unwrap()).unwrap());
    let c = norton_irreducible(&seven, &Mat::zero(&f, 7, 7));
    assert!(c.is_ok());
}

#[test]
fn regular_module_of_h_over_gf9() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let reg = Rep::regular(&hf.h, &f, 1000).unwrap();
    let res = chop(&reg, &mut Prng::new(3)).unwrap();
    assert_eq!(res.dims(), vec![(1, 9), (1, 9), (1, 9), (1, 9), (2, 18)]);
    assert!(res.warnings.is_empty());
}

#[test]
fn chop_invariant_under_basis_change_and_sums() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let m = Rep::subsets(&hf.h, &f, 2).unwrap();
    let mut rng = Prng::new(5);
    let base = chop(&m, &mut rng).unwrap();
    let s = random_invertible(&f, m.dim(), &mut rng);
    let conj = chop(&m.conjugate(&s).unwrap(), &mut rng).unwrap();
    assert!(same_multiset(&as_multiset(&base), &as_multiset(&conj)));
    let nat = Rep::natural(&hf.h, &f);
    let sum = chop(&m.direct_sum(&nat).unwrap(), &mut rng).unwrap();
    let n = chop(&nat, &mut rng).unwrap();
    let mut both = as_multiset(&base);
    both.extend(as_multiset(&n));
    let mut expect: Vec<(Rep, usize)> = Vec::new();
    for (r, k) in both {
        match expect.iter_mut().find(|(x, _)| iso_irr(x, &r).unwrap()) {
            Some(e) => e.1 += k,
            None => expect.push((r, k)),
        }
    }
    assert!(same_multiset(&as_multiset(&sum), &expect));
    let dual = chop(&m.dual().unwrap(), &mut rng).unwrap();
    let duals: Vec<(Rep, usize)> = as_multiset(&base).into_iter().map(|(r, k)| (r.dual().unwrap(), k)).collect();
    assert!(same_multiset(&as_multiset(&dual), &duals));
}

fn as_multiset(c: &modrep::chop::ChopResult) -> Vec<(Rep, usize)> {
    c.factors.iter().map(|f| (f.irr.rep.clone(), f.multiplicity)).collect()
}

fn same_multiset(a: &[(Rep, usize)], b: &[(Rep, usize)]) -> bool {
    a.len() == b.len() && a.iter().all(|(r, k)| b.iter().any(|(s, l)| k == l && iso_irr(r, s).unwrap()))
}
