//! Shared inputs for the benchmarks.

use kappa_core::equivariant::{FiniteGroup, LieGroupAction};
use kappa_core::freelie::{free_product, FreeGradedLie, Lie};

/// `𝕃(u,v) ∗ 𝕃(u,v)` with |u| = 4, |v| = 6 and the swap of the two factors.
pub fn doubled_uv(weight_cap: usize) -> (Lie, LieGroupAction) {
    let l = FreeGradedLie::new(&[("u", 4), ("v", 6)], weight_cap).expect("generators");
    let ll = free_product(&[&l, &l], &["1", "2"]).expect("free product");
    let swap = LieGroupAction::by_generator_permutation(&ll, FiniteGroup::symmetric(2), &[vec![0, 1, 2, 3], vec![2, 3, 0, 1]])
        .expect("swap action");
    (ll, swap)
}

/// Free Lie algebra on generators of the given degrees, named a, b, c, ….
pub fn free_on(degrees: &[i64], weight_cap: usize) -> Lie {
    let gens: Vec<(String, i64)> = degrees.iter().enumerate().map(|(i, d)| (((b'a' + i as u8) as char).to_string(), *d)).collect();
    FreeGradedLie::new(&gens, weight_cap).expect("generators")
}
