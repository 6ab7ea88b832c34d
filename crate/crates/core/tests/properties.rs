use proptest::prelude::*;

use modrep::blocks::central_idempotents;
use modrep::chop::chop;
use modrep::ffield::{min_poly, Elem, Field, Mat, Poly};
use modrep::fixtures::{c4h_fixture, h_fixture, h_simples};
use modrep::green::higman_test;
use modrep::perm::small::{all_subgroups, group_from_elements};
use modrep::perm::Subgroup;
use modrep::prng::Prng;
use modrep::rep::{hom_space, induce, Rep};
use modrep::structure::{iso_indec, loewy};

const ORDERS: [u32; 8] = [2, 3, 4, 5, 8, 9, 25, 27];

fn field_of(i: usize) -> Field {
    Field::from_order(ORDERS[i % ORDERS.len()]).unwrap()
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

/// Schoolbook product of field elements as polynomials modulo the field's modulus.
fn oracle_mul(f: &Field, a: Elem, b: Elem) -> Elem {
    let (p, e) = (f.p(), f.e());
    let (da, db) = (digits(a as u32, p, e), digits(b as u32, p, e));
    let mut prod = vec![0u32; (2 * e) as usize];
    for (i, x) in da.iter().enumerate() {
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let m = f.modulus();
    for k in (e as usize..prod.len()).rev() {
        let c = prod[k];
        if c != 0 {
            for (t, &mt) in m.iter().enumerate() {
                let idx = k - e as usize + t;
                prod[idx] = (prod[idx] + p * p - c * mt % p) % p;
            }
        }
    }
    undigits(&prod[..e as usize], p) as Elem
}

fn oracle_add(f: &Field, a: Elem, b: Elem) -> Elem {
    let (p, e) = (f.p(), f.e());
    let s: Vec<u32> = digits(a as u32, p, e).iter().zip(digits(b as u32, p, e)).map(|(x, y)| (x + y) % p).collect();
    undigits(&s, p) as Elem
}

fn random_mat(f: &Field, rows: usize, cols: usize, rng: &mut Prng) -> Mat {
    let data = (0..rows * cols).map(|_| rng.below(f.q() as u64) as Elem).collect();
    Mat::from_vec(f, rows, cols, data).unwrap()
}

fn random_invertible(f: &Field, n: usize, rng: &mut Prng) -> Mat {
    loop {
        let m = random_mat(f, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn oracle_product(a: &Mat, b: &Mat) -> Mat {
    let f = a.field();
    let mut out = Mat::zero(f, a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = 0;
            for k in 0..a.cols() {
                s = oracle_add(f, s, oracle_mul(f, a.get(i, k), b.get(k, j)));
            }
            out.set(i, j, s);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_tables_match_polynomial_arithmetic(fi in 0usize..8, a in 0u32..256, b in 0u32..256, c in 0u32..256) {
        let f = field_of(fi);
        let q = f.q();
        let (a, b, c) = ((a % q) as Elem, (b % q) as Elem, (c % q) as Elem);
        prop_assert_eq!(f.mul(a, b), oracle_mul(&f, a, b));
        prop_assert_eq!(f.add(a, b), oracle_add(&f, a, b));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn matrix_product_matches_schoolbook(fi in 0usize..8, seed in any::<u64>(), r in 1usize..9, k in 1usize..9, c in 1usize..9) {
        let f = field_of(fi);
        let mut rng = Prng::new(seed);
        let a = random_mat(&f, r, k, &mut rng);
        let b = random_mat(&f, k, c, &mut rng);
        prop_assert_eq!(a.mul(&b).unwrap(), oracle_product(&a, &b));
    }

    #[test]
    fn matrix_product_is_associative(fi in 0usize..8, seed in any::<u64>(), n in 1usize..10) {
        let f = field_of(fi);
        let mut rng = Prng::new(seed);
        let (a, b, c) = (random_mat(&f, n, n, &mut rng), random_mat(&f, n, n, &mut rng), random_mat(&f, n, n, &mut rng));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn echelonize_is_idempotent(fi in 0usize..8, seed in any::<u64>(), r in 1usize..10, c in 1usize..10) {
        let f = field_of(fi);
        let a = random_mat(&f, r, c, &mut Prng::new(seed));
        let (e, piv) = a.rref();
        let (e2, piv2) = e.rref();
        prop_assert_eq!(&e, &e2);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn permutation_matrix_inverse_is_transpose(n in 1usize..12, seed in any::<u64>()) {
        let f = Field::prime(5).unwrap();
        let mut rng = Prng::new(seed);
        let mut img: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            img.swap(i, rng.index(i + 1));
        }
        let mut m = Mat::zero(&f, n, n);
        for (i, &j) in img.iter().enumerate() {
            m.set(i, j, 1);
        }
        prop_assert_eq!(m.inverse().unwrap(), m.transpose());
    }

    #[test]
    fn chop_is_invariant_under_change_of_basis(seed in any::<u64>()) {
        let hf = h_fixture();
        let f = Field::from_order(9).unwrap();
        let m = induce(&Rep::trivial(hf.q.group(), &f), &hf.q).unwrap().rep;
        let mut rng = Prng::new(seed);
        let s = random_invertible(&f, m.dim(), &mut rng);
        let a = chop(&m, &mut Prng::new(seed)).unwrap().dims();
        let b = chop(&m.conjugate(&s).unwrap(), &mut rng).unwrap().dims();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn rank_nullity_on_a_thousand_matrices() {
    let mut rng = Prng::new(1000);
    for i in 0..1000 {
        let f = field_of(i);
        let (r, c) = (1 + rng.index(14), 1 + rng.index(14));
        let m = random_mat(&f, r, c, &mut rng);
        let rank = m.rank();
        assert_eq!(rank + m.nullspace().rows(), c);
        assert_eq!(rank + m.left_nullspace().rows(), r);
        assert!(m.nullspace().rows() == 0 || m.mul(&m.nullspace().transpose()).unwrap().is_zero());
    }
}

#[test]
fn large_product_matches_schoolbook() {
    let f = Field::from_order(9).unwrap();
    let mut rng = Prng::new(100);
    let a = random_mat(&f, 100, 100, &mut rng);
    let b = random_mat(&f, 100, 100, &mut rng);
    assert_eq!(a.mul(&b).unwrap(), oracle_product(&a, &b));
}

#[test]
fn rank_of_matrices_with_known_rank() {
    let f = Field::from_order(9).unwrap();
    let mut rng = Prng::new(50);
    for r in [0, 1, 17, 49, 50] {
        let mut d = Mat::zero(&f, 50, 50);
        for i in 0..r {
            d.set(i, i, 1);
        }
        let p = random_invertible(&f, 50, &mut rng);
        let q = random_invertible(&f, 50, &mut rng);
        let a = p.mul(&d).unwrap().mul(&q).unwrap();
        assert_eq!(a.rank(), r);
    }
}

#[test]
fn factorisations_of_random_polynomials_remultiply() {
    let mut rng = Prng::new(12);
    for i in 0..1000 {
        let f = field_of(i);
        let deg = 1 + rng.index(12);
        let mut c: Vec<Elem> = (0..deg).map(|_| rng.below(f.q() as u64) as Elem).collect();
        c.push(1 + rng.below(f.q() as u64 - 1) as Elem);
        let poly = Poly::new(&f, c);
        let mut prod = Poly::one(&f);
        for (g, k) in poly.factor() {
            assert!(g.is_irreducible(), "factor of {:?} over {}", poly.coeffs(), f.name());
            assert_eq!(g.lead(), 1);
            for _ in 0..k {
                prod = prod.mul(&g);
            }
        }
        assert_eq!(prod, poly.monic());
    }
}

#[test]
fn minimal_polynomials_of_identity_and_jordan_block() {
    let f = Field::prime(7).unwrap();
    let one = min_poly(&Mat::identity(&f, 4)).unwrap();
    assert_eq!(one.coeffs(), &[6, 1]);
    let j = Mat::from_rows(&f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
    assert_eq!(min_poly(&j).unwrap().coeffs(), &[0, 0, 0, 1]);
}

/// dim Hom_G(X, V↑G) = dim Hom_H(X↓H, V) for the H' simples, every subgroup
/// P, Q, R and sources trivial or restricted from the 2-dimensional simple.
#[test]
fn adjunction_on_fixture_triples() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let simples = h_simples(&hf, &f).unwrap();
    for h in [&hf.p, &hf.q, &hf.r] {
        for v in [Rep::trivial(h.group(), &f), simples[4].restrict(h).unwrap()] {
            let up = induce(&v, h).unwrap().rep;
            for x in &simples {
                let left = hom_space(x, &up).unwrap().dim();
                let right = hom_space(&x.restrict(h).unwrap(), &v).unwrap().dim();
                assert_eq!(left, right, "{} over a subgroup of order {}", x.label().unwrap(), h.order());
                let left = hom_space(&up, x).unwrap().dim();
                let right = hom_space(&v, &x.restrict(h).unwrap()).unwrap().dim();
                assert_eq!(left, right);
            }
        }
    }
}

/// The radical series of M* is the socle series of M with every simple
/// replaced by its dual.
#[test]
fn loewy_series_of_the_dual_mirror_the_module() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let simples = h_simples(&hf, &f).unwrap();
    let dual_of: Vec<usize> = simples
        .iter()
        .map(|s| {
            let d = s.dual().unwrap();
            simples.iter().position(|t| t.dim() == d.dim() && iso_indec(t, &d).unwrap()).unwrap()
        })
        .collect();
    let reg = Rep::regular(&hf.h, &f, 1000).unwrap();
    let p1a = modrep::structure::indec_decompose(&reg, &mut Prng::new(3))
        .unwrap()
        .summands
        .into_iter()
        .find(|s| hom_space(&s.rep, &simples[0]).unwrap().dim() > 0)
        .unwrap()
        .rep;
    let soc = hom_space(&simples[0], &p1a).unwrap().maps()[0].clone();
    let mut rng = Prng::new(9);
    let spun = {
        let m = induce(&Rep::trivial(hf.q.group(), &f), &hf.q).unwrap().rep;
        let v: Vec<Elem> = (0..m.dim()).map(|_| rng.below(9) as Elem).collect();
        let basis = modrep::chop::spin(&m, &[v]);
        m.submodule(&basis).unwrap().0
    };
    for m in [p1a.quotient(&soc).unwrap(), spun] {
        let l = loewy(&m, &simples).unwrap();
        let d = loewy(&m.dual().unwrap(), &simples).unwrap();
        let mirrored: Vec<Vec<usize>> = l
            .socle_layers
            .iter()
            .map(|layer| {
                let mut out = vec![0; layer.len()];
                for (i, &k) in layer.iter().enumerate() {
                    out[dual_of[i]] += k;
                }
                out
            })
            .collect();
        assert_eq!(d.radical_layers, mirrored);
    }
}

/// Relative projectivity passes to overgroups along 1 ≤ Q ≤ P.
#[test]
fn higman_monotone_on_subgroups_of_p() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let simples = h_simples(&hf, &f).unwrap();
    let yq = induce(&Rep::trivial(hf.q.group(), &f), &hf.q).unwrap().rep;
    let lattice = all_subgroups(hf.p.group(), 100).unwrap();
    assert_eq!(lattice.len(), 6);
    for x in [&simples[0], &simples[4], &yq] {
        let verdicts: Vec<_> = lattice
            .iter()
            .map(|s| {
                let g = group_from_elements(8, s).unwrap();
                higman_test(x, &Subgroup::from_perms(&hf.h, g.gens().to_vec()).unwrap()).unwrap()
            })
            .collect();
        for (i, a) in lattice.iter().enumerate() {
            for (j, b) in lattice.iter().enumerate() {
                if verdicts[i] && a.is_subset(b) {
                    assert!(verdicts[j]);
                }
            }
        }
        assert!(verdicts[lattice.iter().position(|s| s.len() == 9).unwrap()]);
    }
}

#[test]
fn block_idempotent_axioms_hold_exactly() {
    let f = Field::from_order(9).unwrap();
    for g in [h_fixture().h, c4h_fixture().g] {
        let bd = central_idempotents(&g, &f).unwrap();
        assert!(bd.check_axioms());
        // the idempotents sum to the identity class sum
        let mut total = vec![0; bd.algebra.dim()];
        for e in &bd.idempotents {
            for (t, &x) in total.iter_mut().zip(e) {
                *t = f.add(*t, x);
            }
        }
        assert_eq!(&total, bd.algebra.unit());
    }
}
