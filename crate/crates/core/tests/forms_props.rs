use kappa_core::forms_oracle::{abelian_mc_homotopy, abelian_mc_homotopy_stable, apl_forms, mc_simplices_abelian, PolyForms};
use kappa_core::linfty::{mc_homotopy_groups, LInftyAlgebra};
use kappa_core::qlinalg::{q, ChainComplex, GradedVectorSpace, QMatrix, SparseVec};
use kappa_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn forms(cap: u32) -> Vec<PolyForms> {
    (0..=2).map(|n| apl_forms(n, cap).unwrap()).collect()
}

#[test]
fn simplicial_identities() {
    for cap in 1..=3 {
        let f = forms(cap);
        let d = |n: usize, i: usize| f[n].face(i, &f[n - 1]).unwrap();
        let s = |n: usize, j: usize| f[n].degeneracy(j, &f[n + 1]).unwrap();
        let id = |n: usize| QMatrix::identity(f[n].dim());
        // d_i d_j = d_{j−1} d_i for i < j, on Ω_2
        for j in 0..=2 {
            for i in 0..j {
                assert_eq!(d(1, i).mul(&d(2, j)).unwrap(), d(1, j - 1).mul(&d(2, i)).unwrap(), "cap {cap}: d{i} d{j}");
            }
        }
        // s_i s_j = s_{j+1} s_i for i ≤ j, on Ω_0
        assert_eq!(s(1, 0).mul(&s(0, 0)).unwrap(), s(1, 1).mul(&s(0, 0)).unwrap());
        // d_i s_j on Ω_0 and Ω_1
        for n in 0..=1 {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = d(n + 1, i).mul(&s(n, j)).unwrap();
                    let rhs = if i == j || i == j + 1 {
                        id(n)
                    } else if i < j {
                        s(n - 1, j - 1).mul(&d(n, i)).unwrap()
                    } else {
                        s(n - 1, j).mul(&d(n, i - 1)).unwrap()
                    };
                    assert_eq!(lhs, rhs, "cap {cap}: d{i} s{j} on Ω_{n}");
                }
            }
        }
    }
}

#[test]
fn structure_maps_are_chain_maps() {
    let f = forms(3);
    for n in 0..=2 {
        let dd = f[n].differential().mul(f[n].differential()).unwrap();
        assert!(dd.is_zero());
        if n > 0 {
            for i in 0..=n {
                let m = f[n].face(i, &f[n - 1]).unwrap();
                assert_eq!(m.mul(f[n].differential()).unwrap(), f[n - 1].differential().mul(&m).unwrap());
            }
        }
        if n < 2 {
            for j in 0..=n {
                let m = f[n].degeneracy(j, &f[n + 1]).unwrap();
                assert_eq!(m.mul(f[n].differential()).unwrap(), f[n + 1].differential().mul(&m).unwrap());
            }
        }
    }
}

#[test]
fn faces_respect_products() {
    let f = forms(3);
    let (src, dst) = (&f[2], &f[1]);
    for i in 0..=2 {
        let m = src.face(i, dst).unwrap();
        for a in 0..src.dim() {
            for b in 0..src.dim() {
                let Ok(ab) = src.wedge(a, b) else { continue };
                let lhs = m.apply(&ab);
                let (fa, fb) = (m.column(a), m.column(b));
                let mut rhs = SparseVec::new();
                for (x, cx) in &fa {
                    for (y, cy) in &fb {
                        for (z, cz) in dst.wedge(*x, *y).unwrap() {
                            let e = rhs.entry(z).or_insert_with(|| q(0));
                            *e += cx * cy * cz;
                        }
                    }
                }
                rhs.retain(|_, c| *c != q(0));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

/// A direct sum of isolated cycles and contractible pairs in degrees −2..=1,
/// hidden by a random change of basis. Returns the complex and its Betti numbers.
fn random_complex(rng: &mut ChaCha8Rng) -> (ChainComplex, [usize; 4]) {
    let mut basis: Vec<(String, i64)> = Vec::new();
    let mut pairs = Vec::new();
    let mut betti = [0usize; 4];
    for k in -2i64..=1 {
        for _ in 0..rng.gen_range(0..=1) {
            basis.push((format!("z{}", basis.len()), k));
            betti[(k + 2) as usize] += 1;
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let k = rng.gen_range(-1i64..=1);
        let b = basis.len();
        basis.push((format!("b{b}"), k));
        basis.push((format!("c{}", b + 1), k - 1));
        pairs.push((b, b + 1));
    }
    let dim = basis.len();
    let mut d = QMatrix::zeros(dim, dim);
    for (b, c) in &pairs {
        d.set(*c, *b, q(rng.gen_range(1..=3)));
    }
    // T = 1 + N with N strictly lower triangular inside each degree
    let mut n = QMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..r {
            if basis[r].1 == basis[c].1 && rng.gen_bool(0.6) {
                n.set(r, c, q(rng.gen_range(-2..=2)));
            }
        }
    }
    let t = QMatrix::identity(dim).add(&n).unwrap();
    let mut t_inv = QMatrix::identity(dim);
    let mut power = QMatrix::identity(dim);
    let minus_n = n.scale(&q(-1));
    for _ in 0..dim {
        power = power.mul(&minus_n).unwrap();
        t_inv = t_inv.add(&power).unwrap();
    }
    assert_eq!(t.mul(&t_inv).unwrap(), QMatrix::identity(dim));
    let d = t.mul(&d).unwrap().mul(&t_inv).unwrap();
    let space = GradedVectorSpace::new(basis).unwrap();
    (ChainComplex::from_map(space, &d).unwrap(), betti)
}

#[test]
fn simplicial_homotopy_matches_homology_on_random_abelian_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let (c, betti) = random_complex(&mut rng);
        let l = LInftyAlgebra::abelian(&c).unwrap();
        let h = abelian_mc_homotopy_stable(&l, 2, 5).unwrap();
        // π₀ = H₋₁ and π₁ = H₀
        assert_eq!((h.pi0, h.pi1), (betti[1], betti[2]), "{c:?}");
        let table = mc_homotopy_groups(&l, &SparseVec::new()).unwrap();
        assert_eq!((table.pi(0), table.pi(1)), (h.pi0, h.pi1));
    }
}

#[test]
fn homotopy_is_stable_across_caps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..8 {
        let (c, _) = random_complex(&mut rng);
        let l = LInftyAlgebra::abelian(&c).unwrap();
        assert!(abelian_mc_homotopy(&l, 1).is_err());
        let base = abelian_mc_homotopy(&l, 2).unwrap();
        for cap in 3..=5 {
            let h = abelian_mc_homotopy(&l, cap).unwrap();
            assert_eq!((h.pi0, h.pi1), (base.pi0, base.pi1));
            assert_eq!(h.poly_cap, cap);
        }
    }
}

#[test]
fn zero_simplices_are_degree_minus_one_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let (c, _) = random_complex(&mut rng);
        let l = LInftyAlgebra::abelian(&c).unwrap();
        let z = mc_simplices_abelian(&l, &apl_forms(0, 2).unwrap()).unwrap();
        let deg = c.space().indices_in_degree(-1).len();
        let rank_out = c.differential(-1).rank();
        assert_eq!(z.len(), deg - rank_out);
    }
}

#[test]
fn non_abelian_input_is_rejected() {
    let lie = kappa_core::FreeGradedLie::new(&[("a", 0)], 2).unwrap();
    let l = LInftyAlgebra::from_free_lie(&lie, None, 2).unwrap();
    let lie2 = kappa_core::FreeGradedLie::new(&[("a", 1)], 2).unwrap();
    let l2 = LInftyAlgebra::from_free_lie(&lie2, None, 2).unwrap();
    let f = apl_forms(1, 2).unwrap();
    // 𝕃(a) with |a| = 0 is abelian; with |a| odd, [a,a] ≠ 0
    assert!(mc_simplices_abelian(&l, &f).is_ok());
    assert!(matches!(mc_simplices_abelian(&l2, &f), Err(Error::NotAbelian)));
}
