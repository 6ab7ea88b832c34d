use modrep::ffield::{Field, Mat};
use modrep::fixtures::{a8_fixture, h_fixture};
use modrep::perm::{Group, Subgroup};
use modrep::rep::{coset_matrices, hom_space, induce, Rep};

fn gf3() -> Field {
    Field::prime(3).unwrap()
}

/// Dimension of Hom by solving the intertwining equations on all n·m
/// unknowns at once.
fn hom_dim_oracle(a: &Rep, b: &Rep) -> usize {
    let f = a.field();
    let (n, m) = (a.dim(), b.dim());
    let ng = a.gens().len();
    let mut e = Mat::zero(f, n * m, n * m * ng);
    for (gi, (ag, bg)) in a.gens().iter().zip(b.gens()).enumerate() {
        for i in 0..n {
            for j in 0..m {
                let col = gi * n * m + i * m + j;
                for k in 0..n {
                    let v = e.get(k * m + j, col);
                    e.set(k * m + j, col, f.add(v, ag.get(i, k)));
                }
                for k in 0..m {
                    let v = e.get(i * m + k, col);
                    e.set(i * m + k, col, f.sub(v, bg.get(k, j)));
                }
            }
        }
    }
    n * m - e.rank()
}

#[test]
fn basic_constructions() {
    let t = Group::trivial(1);
    let r = Rep::trivial(&t, &gf3());
    assert_eq!(r.dim(), 1);
    let a = a8_fixture();
    let nat = Rep::natural(&a.g, &gf3());
    assert_eq!(nat.dim(), 8);
    let s2 = Rep::subsets(&a.g, &gf3(), 2).unwrap();
    assert_eq!(s2.dim(), 28);
    assert_eq!(s2.gen_order(0, 10), Some(3));
    assert_eq!(s2.gen_order(1, 10), Some(7));
    assert_eq!(nat.restrict(&a.p).unwrap().dim(), 8);
    let whole = Subgroup::whole(&a.g);
    assert_eq!(nat.restrict(&whole).unwrap().gens(), nat.gens());
}

#[test]
fn dual_tensor_sum() {
    let a = a8_fixture();
    let f = Field::from_order(9).unwrap();
    let s2 = Rep::subsets(&a.g, &f, 2).unwrap();
    let nat = Rep::natural(&a.g, &f);
    // make a non-permutation module so the dual is not trivially equal
    let m = nat.tensor(&nat).unwrap();
    assert_eq!(m.dim(), 64);
    assert_eq!(m.dual().unwrap().dual().unwrap().gens(), m.gens());
    let triv = Rep::trivial(&a.g, &f);
    assert_eq!(s2.tensor(&triv).unwrap().gens(), s2.gens());
    let sum = nat.direct_sum(&s2).unwrap();
    assert_eq!(sum.dim(), 36);
    assert!(nat.tensor(&Rep::trivial(&Group::trivial(8), &f)).is_err());
}

#[test]
fn hom_space_matches_oracle() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let nat = Rep::natural(&hf.h, &f);
    let s2 = Rep::subsets(&hf.h, &f, 2).unwrap();
    let kp = Rep::trivial(hf.p.group(), &f);
    let ind = induce(&kp, &hf.p).unwrap().rep;
    let triv = Rep::trivial(&hf.h, &f);
    let dual = nat.tensor(&nat).unwrap().dual().unwrap();
    let mods = [&nat, &ind, &triv, &s2];
    for a in mods {
        for b in mods {
            let hb = hom_space(a, b).unwrap();
            assert_eq!(hb.dim(), hom_dim_oracle(a, b));
            for fm in hb.maps() {
                assert!(a.is_hom(b, fm));
            }
            assert_eq!(hb.flattened(&f).rank(), hb.dim());
        }
    }
    assert_eq!(hom_space(&dual, &nat).unwrap().dim(), hom_dim_oracle(&dual, &nat));
}

#[test]
fn induction_dimensions() {
    let a = a8_fixture();
    let f = gf3();
    let kp = Rep::trivial(a.p.group(), &f);
    let ind = induce(&kp, &a.p).unwrap();
    assert_eq!(ind.rep.dim(), 2240);
    let kh = Rep::trivial(a.h.group(), &f);
    assert_eq!(induce(&kh, &a.h).unwrap().rep.dim(), 280);
    let hf = h_fixture();
    let one = Subgroup::from_perms(&hf.h, vec![]).unwrap();
    let reg1 = Rep::regular(one.group(), &f, 10).unwrap();
    let ind = induce(&reg1, &one).unwrap().rep;
    assert_eq!(ind.dim(), 72);
    let reg = Rep::regular(&hf.h, &f, 1000).unwrap();
    assert_eq!(hom_space(&ind, &reg).unwrap().dim(), 72);
}

#[test]
fn frobenius_reciprocity_and_transport() {
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let x = Rep::subsets(&hf.h, &f, 2).unwrap();
    for sub in [&hf.p, &hf.q, &hf.r] {
        let v = Rep::natural(sub.group(), &f);
        let ind = induce(&v, sub).unwrap();
        let xr = x.restrict(sub).unwrap();
        let (fwd, bwd) = coset_matrices(&x, &ind.transversal).unwrap();

        let small = hom_space(&xr, &v).unwrap();
        let big = hom_space(&x, &ind.rep).unwrap();
        assert_eq!(small.dim(), big.dim());
        let moved: Vec<Mat> = small.maps().iter().map(|phi| ind.hom_to_induced(phi, &bwd).unwrap()).collect();
        for (phi, m) in small.maps().iter().zip(&moved) {
            assert!(x.is_hom(&ind.rep, m));
            assert_eq!(&ind.hom_to_induced_inverse(m), phi);
        }

        let small = hom_space(&v, &xr).unwrap();
        let big = hom_space(&ind.rep, &x).unwrap();
        assert_eq!(small.dim(), big.dim());
        for psi in small.maps() {
            let m = ind.hom_from_induced(psi, &fwd).unwrap();
            assert!(ind.rep.is_hom(&x, &m));
            assert_eq!(&ind.hom_from_induced_inverse(&m), psi);
        }
        let zero = Mat::zero(&f, v.dim(), x.dim());
        assert!(ind.hom_from_induced(&zero, &fwd).unwrap().is_zero());
    }
}

#[test]
fn a8_natural_into_induced_from_p() {
    let a = a8_fixture();
    let f = gf3();
    let x = Rep::natural(&a.g, &f);
    let kp = Rep::trivial(a.p.group(), &f);
    let ind = induce(&kp, &a.p).unwrap();
    let small = hom_space(&x.restrict(&a.p).unwrap(), &kp).unwrap();
    let big = hom_space(&x, &ind.rep).unwrap();
    assert_eq!(small.dim(), big.dim());
    // P has 4 orbits on 8 points
    assert_eq!(small.dim(), 4);
}

#[test]
fn hom_space_with_several_seeds() {
    // The first seed's parameters die out before the second seed arrives.
    let hf = h_fixture();
    let f = Field::from_order(9).unwrap();
    let s = modrep::fixtures::h_simples(&hf, &f).unwrap();
    for a in &s {
        for b in &s {
            for c in &s {
                let src = a.direct_sum(b).unwrap();
                let d = hom_space(&src, c).unwrap().dim();
                assert_eq!(d, hom_dim_oracle(&src, c));
                let d = hom_space(c, &src).unwrap().dim();
                assert_eq!(d, hom_dim_oracle(c, &src));
            }
        }
    }
}
