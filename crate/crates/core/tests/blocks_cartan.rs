use modrep::blocks::{
    block_component_dims, block_of, cartan_matrix, central_idempotents, composition_multiplicities, pims,
};
use modrep::ffield::Field;
use modrep::fixtures::{a8_fixture, a8_simples, c4h_fixture, c4h_simples, h_fixture, h_simples};
use modrep::perm::{small::sylow_small, Group, Perm};
use modrep::prng::Prng;
use modrep::rep::{induce, Rep};

fn gf9() -> Field {
    Field::from_order(9).unwrap()
}

#[test]
fn block_counts() {
    let hf = h_fixture();
    let bd = central_idempotents(&hf.h, &gf9()).unwrap();
    assert_eq!(bd.len(), 1);
    assert!(bd.check_axioms());

    let c3 = Group::new(3, vec![Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()]).unwrap();
    let bd = central_idempotents(&c3, &Field::prime(3).unwrap()).unwrap();
    assert_eq!(bd.len(), 1);

    // S3 in characteristic 2: the sign-free block and the defect-zero block of the 2-dim simple
    let s3 = Group::new(
        3,
        vec![Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(), Perm::from_cycles(3, &[vec![0, 1]]).unwrap()],
    )
    .unwrap();
    let bd = central_idempotents(&s3, &Field::prime(2).unwrap()).unwrap();
    assert_eq!(bd.len(), 2);
    assert!(bd.check_axioms());
    let reg = Rep::regular(&s3, &Field::prime(2).unwrap(), 100).unwrap();
    let mut dims = block_component_dims(&reg, &bd).unwrap();
    dims.sort();
    assert_eq!(dims, vec![2, 4]);
}

#[test]
fn c4_times_h_has_four_blocks() {
    let c = c4h_fixture();
    let f = gf9();
    let bd = central_idempotents(&c.g, &f).unwrap();
    assert_eq!(bd.len(), 4);
    assert!(bd.check_axioms());
    let reg = Rep::regular(&c.g, &f, 1000).unwrap();
    let dims = block_component_dims(&reg, &bd).unwrap();
    assert_eq!(dims, vec![72; 4]);
    assert_eq!(block_of(&Rep::trivial(&c.g, &f), &bd).unwrap(), bd.principal);

    let hs = h_simples(&h_fixture(), &f).unwrap();
    let simples = c4h_simples(&c, &hs).unwrap();
    let mut seen = Vec::new();
    for (i, row) in simples.iter().enumerate() {
        let b = block_of(&row[0], &bd).unwrap();
        for s in row {
            assert_eq!(block_of(s, &bd).unwrap(), b);
        }
        let mut d: Vec<usize> = row.iter().map(|s| s.dim()).collect();
        d.sort();
        assert_eq!(d, vec![1, 1, 1, 1, 2]);
        if i == 0 {
            assert_eq!(b, bd.principal);
        }
        seen.push(b);
    }
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 4);
}

#[test]
fn module_in_several_blocks_is_reported() {
    let c = c4h_fixture();
    let f = gf9();
    let bd = central_idempotents(&c.g, &f).unwrap();
    let hs = h_simples(&h_fixture(), &f).unwrap();
    let s = c4h_simples(&c, &hs).unwrap();
    let sum = s[0][0].direct_sum(&s[1][0]).unwrap();
    assert!(block_of(&sum, &bd).is_err());
    let mut d = block_component_dims(&sum, &bd).unwrap();
    d.sort();
    assert_eq!(d, vec![0, 0, 1, 1]);
}

#[test]
fn cartan_matrix_of_h() {
    let hf = h_fixture();
    let f = gf9();
    let bd = central_idempotents(&hf.h, &f).unwrap();
    let simples = h_simples(&hf, &f).unwrap();
    let reg = Rep::regular(&hf.h, &f, 1000).unwrap();
    let ps = pims(&bd, bd.principal, &reg, &simples, &mut Prng::new(4)).unwrap().complete().unwrap();
    let c = cartan_matrix(&ps, &simples).unwrap();
    assert_eq!(
        c,
        vec![vec![3, 0, 1, 1, 2], vec![0, 3, 1, 1, 2], vec![1, 1, 3, 0, 2], vec![1, 1, 0, 3, 2], vec![2, 2, 2, 2, 5],]
    );
    for (p, s) in ps.iter().zip(&simples) {
        let m = composition_multiplicities(p, &simples, &mut Prng::new(5)).unwrap();
        let row: Vec<usize> = c[simples.iter().position(|x| x.label() == s.label()).unwrap()].clone();
        assert_eq!(m, row);
    }
}

#[test]
fn a8_principal_block_pims_from_sylow_two_permutation_module() {
    let a = a8_fixture();
    let f = Field::prime(3).unwrap();
    let simples = a8_simples(&a.g, &f).unwrap();
    let bd = central_idempotents(&a.g, &f).unwrap();
    for s in &simples {
        assert_eq!(block_of(s, &bd).unwrap(), bd.principal);
    }
    let s2 = sylow_small(&a.g, 2).unwrap();
    assert_eq!(s2.order(), 64);
    let src = induce(&Rep::trivial(s2.group(), &f), &s2).unwrap().rep;
    assert_eq!(src.dim(), 315);
    let found = pims(&bd, bd.principal, &src, &simples, &mut Prng::new(6)).unwrap();
    let cartan = [[4, 1, 2, 1, 2], [1, 4, 2, 1, 2], [2, 2, 3, 0, 1], [1, 1, 0, 3, 2], [2, 2, 1, 2, 4]];
    let mut n = 0;
    for (t, p) in found.pims.iter().enumerate() {
        if let Some(p) = p {
            let m = composition_multiplicities(p, &simples, &mut Prng::new(7)).unwrap();
            assert_eq!(m, cartan[t].to_vec(), "P({})", simples[t].label().unwrap());
            n += 1;
        }
    }
    assert!(n > 0);
}
