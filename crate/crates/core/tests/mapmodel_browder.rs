mod common;

use common::{right_normed, trace_on_span, Tensor};
use kappa_core::browder::{sigma3_cp2_datum, sphere_datum, wedge_pinch_datum, CoalgebraDatum};
use kappa_core::equivariant::{check_equivariance, FiniteGroup, LieGroupAction};
use kappa_core::freelie::{self, free_product, FreeGradedLie, Lie, DEFAULT_WEIGHT_CAP};
use kappa_core::linfty::{check_generalized_jacobi, LInftyAlgebra};
use kappa_core::mapmodel::{
    cohomology_sphere_cdga, hofixed_homotopy_groups, tensor_action, tensor_linfty, Cdga,
    TensorElement,
};
use kappa_core::qlinalg::q;
use kappa_core::{LieElement, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn doubled(degrees: &[(&str, i64)], cap: usize) -> (Lie, Lie, LieGroupAction) {
    let l = FreeGradedLie::new(degrees, cap).unwrap();
    let ll = free_product(&[&l, &l], &["1", "2"]).unwrap();
    let k = degrees.len();
    let swap: Vec<usize> = (0..2 * k).map(|i| (i + k) % (2 * k)).collect();
    let act = LieGroupAction::by_generator_permutation(&ll, FiniteGroup::symmetric(2), &[(0..2 * k).collect(), swap]).unwrap();
    (l, ll, act)
}

/// Invariant dimension of H^*(S^{n−1}) ⊗ (L∗L) in one degree, by the
/// character formula with traces computed in the tensor algebra.
fn eq10_oracle(gen_degrees: &[i64], n: usize, degree: i64, max_weight: usize) -> usize {
    let k = gen_degrees.len();
    let degs: Vec<i64> = gen_degrees.iter().chain(gen_degrees.iter()).copied().collect();
    let swap: Vec<usize> = (0..2 * k).map(|i| (i + k) % (2 * k)).collect();
    let sign_x = if n % 2 == 0 { Q::one() } else { -Q::one() };
    // (A-degree, trace of σ on that line)
    let a_part = [(0i64, Q::one()), (n as i64 - 1, sign_x)];
    let mut total = Q::zero();
    for (a_deg, a_tr) in a_part {
        let lie_degree = degree + a_deg;
        let mut span: Vec<Tensor> = Vec::new();
        for w in 1..=max_weight {
            for (word, t) in right_normed(w, &degs) {
                if common::degree_of(&word, &degs) == lie_degree && !t.is_empty() {
                    span.push(t);
                }
            }
        }
        if span.is_empty() {
            continue;
        }
        let dim = Q::from_integer(BigInt::from(common::tensor_rank(&span)));
        let tr = trace_on_span(&span, &swap);
        total += dim + a_tr * tr;
    }
    let v = total / Q::from_integer(BigInt::from(2));
    assert!(v.is_integer());
    v.to_integer().try_into().unwrap()
}

#[test]
fn eq10_table_matches_character_oracle() {
    let (_, _, act) = doubled(&[("u", 4), ("v", 6)], DEFAULT_WEIGHT_CAP);
    let s = cohomology_sphere_cdga(3).unwrap();
    let report = hofixed_homotopy_groups(&s, &act, None, 0..=12).unwrap();
    assert!(report.fast_path);
    for d in 0..=12 {
        assert_eq!(report.dims[&d], eq10_oracle(&[4, 6], 3, d, 3), "degree {d}");
    }
    let m = kappa_core::mapmodel::TensorModel::new(s.cdga.clone(), act.lie());
    let g = |x: &str| freelie::generator(act.lie(), x).unwrap();
    let v12 = TensorElement::pure_labeled(&m, "1", &g("v1").add(&g("v2")).unwrap()).unwrap();
    let xu = TensorElement::pure_labeled(&m, "x", &g("u1").bracket(&g("u2")).unwrap()).unwrap();
    assert!(report.contains(&v12));
    assert!(report.contains(&xu));
    assert_eq!(report.dims[&6], 2);
}

#[test]
fn eq10_other_suspension_degrees() {
    for n in [2usize, 4, 5] {
        let (_, _, act) = doubled(&[("a", 2), ("b", 3)], 4);
        let s = cohomology_sphere_cdga(n).unwrap();
        let report = hofixed_homotopy_groups(&s, &act, None, -2..=9).unwrap();
        for d in -2..=9 {
            assert_eq!(report.dims[&d], eq10_oracle(&[2, 3], n, d, 4), "n = {n}, degree {d}");
        }
    }
}

#[test]
fn trivial_group_and_ground_field_give_dims_of_l() {
    let l = FreeGradedLie::new(&[("a", 1), ("b", 2)], 4).unwrap();
    let act = LieGroupAction::by_generator_permutation(&l, FiniteGroup::trivial(), &[vec![0, 1]]).unwrap();
    let a = kappa_core::mapmodel::GCdga::new(
        Cdga::ground_field(),
        kappa_core::GroupAction::trivial(FiniteGroup::trivial(), 1),
    )
    .unwrap();
    let report = hofixed_homotopy_groups(&a, &act, None, 0..=8).unwrap();
    for d in 0..=8 {
        assert_eq!(report.dims[&d], l.basis_in_degree(d).len());
    }
}

#[test]
fn relabeled_tags_give_same_dims() {
    let l = FreeGradedLie::new(&[("u", 4), ("v", 6)], 4).unwrap();
    let s = cohomology_sphere_cdga(3).unwrap();
    let mut tables = Vec::new();
    for tags in [["1", "2"], ["_b", "_a"]] {
        let ll = free_product(&[&l, &l], &tags).unwrap();
        let act = LieGroupAction::by_generator_permutation(&ll, FiniteGroup::symmetric(2), &[vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
        tables.push(hofixed_homotopy_groups(&s, &act, None, 0..=14).unwrap().dims);
    }
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn nonzero_differential_falls_back_to_homology() {
    // A = ℚ{1, e, f} with de = f: quasi-isomorphic to ℚ, so the answer is the
    // invariant part of L itself
    let basis = vec![("1".to_string(), 0), ("e".to_string(), 1), ("f".to_string(), 2)];
    let f: kappa_core::SparseVec = [(2, q(1))].into_iter().collect();
    let a = Cdga::new(basis, "1", vec![], vec![(1, f)]).unwrap();
    let ga = kappa_core::mapmodel::GCdga::new(a, kappa_core::GroupAction::trivial(FiniteGroup::symmetric(2), 3)).unwrap();
    let (_, _, act) = doubled(&[("u", 4)], 3);
    let report = hofixed_homotopy_groups(&ga, &act, None, 0..=10).unwrap();
    assert!(!report.fast_path);
    assert!(report.notes.iter().any(|n| n.contains("homology of the invariant subcomplex")), "{:?}", report.notes);
    let point = kappa_core::mapmodel::GCdga::new(
        Cdga::ground_field(),
        kappa_core::GroupAction::trivial(FiniteGroup::symmetric(2), 1),
    )
    .unwrap();
    let direct = hofixed_homotopy_groups(&point, &act, None, 0..=10).unwrap();
    assert!(direct.fast_path);
    assert_eq!(report.dims, direct.dims);
}

#[test]
fn tensor_model_is_l_infinity_and_equivariant() {
    let (_, ll, act) = doubled(&[("u", 2), ("v", 3)], 3);
    let l = LInftyAlgebra::from_free_lie(&ll, None, 2).unwrap();
    for n in [2usize, 3] {
        let s = cohomology_sphere_cdga(n).unwrap();
        let t = tensor_linfty(&s.cdga, &l).unwrap();
        for k in 1..=3 {
            assert!(check_generalized_jacobi(&t, k).passed(), "n = {n}, arity {k}");
        }
        let diag = tensor_action(&s.action, &act.full_action().unwrap()).unwrap();
        assert!(check_equivariance(&diag, &t).unwrap().passed());
    }
}

/// `[Σ aᵢ⊗ξᵢ, Σ bⱼ⊗ζⱼ]` over `H^*(S^{n−1})`, written out term by term.
fn bilinear_bracket(s: &TensorElement, t: &TensorElement) -> TensorElement {
    let model = s.model().clone();
    let lie = model.lie().clone();
    let cdga = model.cdga().clone();
    let x = cdga.index_of("x").unwrap();
    let unit = cdga.unit();
    let mut out = TensorElement::zero(&model);
    for ((a, xi), c) in s.terms() {
        for ((b, zeta), d) in t.terms() {
            if *a == x && *b == x {
                continue;
            }
            let prod = if *a == unit { *b } else { *a };
            let e_xi = freelie::monomial(&lie, xi.clone());
            let e_zeta = freelie::monomial(&lie, zeta.clone());
            let sign = if (e_xi.degree().unwrap() * cdga.degree(*b)) % 2 == 0 { Q::one() } else { -Q::one() };
            let br = e_xi.bracket(&e_zeta).unwrap().scale(&(sign * c * d));
            out = out.add(&TensorElement::pure(&model, prod, &br).unwrap()).unwrap();
        }
    }
    out
}

fn random_element(l: &Lie, rng: &mut ChaCha8Rng, degree: i64) -> Option<LieElement> {
    let basis = l.basis_in_degree(degree);
    if basis.is_empty() {
        return None;
    }
    let terms = (0..3).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), q(rng.gen_range(-2..=2))));
    Some(LieElement::from_terms(l, terms))
}

fn data() -> Vec<CoalgebraDatum> {
    let mut out = vec![sigma3_cp2_datum(4).unwrap()];
    for n in 1..=4 {
        out.push(sphere_datum(n, 4).unwrap());
    }
    let l = FreeGradedLie::new(&[("u", 4), ("v", 6)], 4).unwrap();
    out.push(wedge_pinch_datum(&l, 5).unwrap());
    out
}

#[test]
fn delta2_is_a_lie_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in data() {
        let src = d.source().clone();
        let gens: Vec<LieElement> = src.generators().iter().map(|g| freelie::generator(&src, &g.name).unwrap()).collect();
        for a in &gens {
            for b in &gens {
                let lhs = d.delta2(&a.bracket(b).unwrap()).unwrap();
                let rhs = bilinear_bracket(&d.delta2(a).unwrap(), &d.delta2(b).unwrap());
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
        let degrees: Vec<i64> = src.basis().iter().filter(|m| m.weight() == 1).map(|m| src.monomial_degree(m)).collect();
        for _ in 0..5 {
            let da = degrees[rng.gen_range(0..degrees.len())];
            let db = degrees[rng.gen_range(0..degrees.len())];
            let (Some(x), Some(y)) = (random_element(&src, &mut rng, da), random_element(&src, &mut rng, db)) else {
                continue;
            };
            let xy = x.bracket(&y).unwrap();
            let lhs = d.delta2(&xy).unwrap();
            let rhs = bilinear_bracket(&d.delta2(&x).unwrap(), &d.delta2(&y).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn kappa_properties_on_all_basis_monomials() {
    for d in data() {
        let src = d.source().clone();
        let shift = d.n() as i64 - 1;
        for m in src.basis() {
            let e = freelie::monomial(&src, m.clone());
            let delta = d.delta2(&e).unwrap();
            // invariance of the output
            assert_eq!(d.sigma(&delta).unwrap().terms(), delta.terms());
            // unit component is the pinch
            assert_eq!(delta.component(d.sphere().cdga.unit()).terms(), d.pinch(&e).unwrap().terms());
            let k = d.kappa(&e).unwrap();
            assert!(d.kappa_twisted_symmetric(&e).unwrap());
            if !k.is_zero() {
                assert_eq!(k.degree(), Some(e.degree().unwrap() + shift));
            }
        }
    }
}

#[test]
fn delta2_of_bracket_in_sigma3_cp2() {
    let d = sigma3_cp2_datum(4).unwrap();
    let src = d.source().clone();
    let u = freelie::generator(&src, "u").unwrap();
    let v = freelie::generator(&src, "v").unwrap();
    let got = d.delta2(&u.bracket(&v).unwrap()).unwrap();
    // [1⊗(u1+u2), x⊗[u1,u2] + 1⊗(v1+v2)] = x⊗[u1+u2,[u1,u2]] + 1⊗[u1+u2, v1+v2]   (|x| odd, |u| even)
    let t = d.target().clone();
    let g = |s: &str| freelie::generator(&t, s).unwrap();
    let pu = g("u1").add(&g("u2")).unwrap();
    let pv = g("v1").add(&g("v2")).unwrap();
    let w = g("u1").bracket(&g("u2")).unwrap();
    let m = d.model().clone();
    let want = TensorElement::pure_labeled(&m, "x", &pu.bracket(&w).unwrap())
        .unwrap()
        .add(&TensorElement::pure_labeled(&m, "1", &pu.bracket(&pv).unwrap()).unwrap())
        .unwrap();
    assert_eq!(got, want);
    assert_eq!(d.kappa(&u.bracket(&v).unwrap()).unwrap(), pu.bracket(&w).unwrap());
}

#[test]
fn delta2_of_zero_is_zero() {
    let d = sigma3_cp2_datum(4).unwrap();
    assert!(d.delta2(&freelie::zero(d.source())).unwrap().is_zero());
}
