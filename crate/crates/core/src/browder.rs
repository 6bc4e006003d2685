//! Arity-two coalgebra data of `n`-fold suspensions and the cooperation `κₙ`.
//!
//! A datum assigns to each generator `g` of a free model `L` an element of
//! `H^*(S^{n−1}) ⊗ (L ∗ L)`; its unit component is the pinch `g₁ + g₂` and
//! its `x`-component is `κₙ(g)`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_traits::One;

use crate::equivariant::{FiniteGroup, LieGroupAction};
use crate::error::{Error, Result};
use crate::freelie::{self, extend_morphism, free_product, FreeGradedLie, Lie, LieElement, LieMorphism};
use crate::mapmodel::{cohomology_sphere_cdga, GCdga, Model, TensorElement, TensorModel};
use crate::qlinalg::Q;

pub const TAGS: [&str; 2] = ["1", "2"];

#[derive(Clone, Debug)]
pub struct CoalgebraDatum {
    n: usize,
    source: Lie,
    target: Lie,
    sphere: GCdga,
    model: Model,
    swap: LieGroupAction,
    images: Vec<TensorElement>,
    provenance: String,
}

/// The free product `L ∗ L` with tags `1`, `2`.
pub fn doubled(source: &Lie) -> Result<Lie> {
    free_product(&[source, source], &TAGS)
}

/// The tensor model `H^*(S^{n−1}) ⊗ (L ∗ L)` that data over `source` live in.
pub fn target_model(source: &Lie, n: usize) -> Result<Model> {
    let sphere = cohomology_sphere_cdga(n)?;
    Ok(TensorModel::new(sphere.cdga.clone(), &doubled(source)?))
}

fn tag_swap(source: &Lie, target: &Lie) -> Result<LieGroupAction> {
    let k = source.generators().len();
    let perm: Vec<usize> = (0..2 * k).map(|i| (i + k) % (2 * k)).collect();
    LieGroupAction::by_generator_permutation(target, FiniteGroup::symmetric(2), &[(0..2 * k).collect(), perm])
}

impl CoalgebraDatum {
    /// Generators without an image map to zero (and fail validation).
    pub fn new(n: usize, source: &Lie, images: Vec<(String, TensorElement)>, provenance: &str) -> Result<Self> {
        let sphere = cohomology_sphere_cdga(n)?;
        let target = doubled(source)?;
        let model = TensorModel::new(sphere.cdga.clone(), &target);
        let mut imgs = vec![TensorElement::zero(&model); source.generators().len()];
        for (name, img) in images {
            if *img.model() != model {
                return Err(Error::OwnerMismatch);
            }
            imgs[source.generator_index(&name)?] = img;
        }
        let swap = tag_swap(source, &target)?;
        Ok(CoalgebraDatum {
            n,
            source: source.clone(),
            target,
            sphere,
            model,
            swap,
            images: imgs,
            provenance: provenance.to_string(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> &Lie {
        &self.source
    }

    pub fn target(&self) -> &Lie {
        &self.target
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn sphere(&self) -> &GCdga {
        &self.sphere
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn image(&self, generator: &str) -> Result<&TensorElement> {
        Ok(&self.images[self.source.generator_index(generator)?])
    }

    pub fn images(&self) -> impl Iterator<Item = (&str, &TensorElement)> {
        self.source.generators().iter().map(|g| g.name.as_str()).zip(self.images.iter())
    }

    /// `g ↦ g₁ + g₂` in `L ∗ L`.
    pub fn pinch(&self, e: &LieElement) -> Result<LieElement> {
        let images = self
            .source
            .generators()
            .iter()
            .map(|g| {
                let a = freelie::generator(&self.target, &format!("{}{}", g.name, TAGS[0]))?;
                let b = freelie::generator(&self.target, &format!("{}{}", g.name, TAGS[1]))?;
                Ok((g.name.clone(), a.add(&b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        extend_morphism(&self.source, &images, freelie::zero(&self.target))?.apply(e)
    }

    /// The diagonal `Σ₂`-action on the tensor model.
    pub fn sigma(&self, e: &TensorElement) -> Result<TensorElement> {
        e.act(1, &self.sphere.action, &self.swap)
    }

    /// The tag swap on `L ∗ L`.
    pub fn swap(&self, e: &LieElement) -> Result<LieElement> {
        self.swap.apply(1, e)
    }

    pub fn validate(&self) -> DatumReport {
        let mut failures = Vec::new();
        for (g, img) in self.source.generators().iter().zip(&self.images) {
            match img.degree() {
                Some(d) if d == g.degree => {}
                Some(d) => failures.push(format!("{}: image has degree {d}, expected {}", g.name, g.degree)),
                None if img.is_zero() => failures.push(format!("{}: image is zero", g.name)),
                None => failures.push(format!("{}: image is not homogeneous", g.name)),
            }
            match self.sigma(img) {
                Ok(s) if s == *img => {}
                Ok(_) => failures.push(format!("{}: image is not Σ₂-invariant", g.name)),
                Err(e) => failures.push(format!("{}: {e}", g.name)),
            }
            let unit_part = img.component(self.sphere.cdga.unit());
            match freelie::generator(&self.source, &g.name).and_then(|x| self.pinch(&x)) {
                Ok(p) if p == unit_part => {}
                Ok(p) => failures.push(format!(
                    "{}: unit component is {unit_part}, expected pinch {p}",
                    g.name
                )),
                Err(e) => failures.push(format!("{}: {e}", g.name)),
            }
        }
        DatumReport { failures }
    }

    fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDatum(r.failures.join("; ")))
        }
    }

    /// The Lie morphism `L → H^*(S^{n−1}) ⊗ (L ∗ L)` on an element.
    pub fn delta2(&self, e: &LieElement) -> Result<TensorElement> {
        self.require_valid()?;
        self.morphism()?.apply(e)
    }

    fn morphism(&self) -> Result<LieMorphism<TensorElement>> {
        let images: Vec<(String, TensorElement)> = self
            .source
            .generators()
            .iter()
            .map(|g| g.name.clone())
            .zip(self.images.iter().cloned())
            .collect();
        extend_morphism(&self.source, &images, TensorElement::zero(&self.model))
    }

    /// `κₙ(e)`: the coefficient of `x` in `Δ₂(e)`, pairing `⟨x, λ⟩ = +1`.
    pub fn kappa(&self, e: &LieElement) -> Result<LieElement> {
        let d = self.delta2(e)?;
        Ok(d.component(self.x_index()))
    }

    fn x_index(&self) -> usize {
        self.sphere.cdga.index_of("x").expect("sphere class")
    }

    /// `σ·κ(e) = (−1)ⁿ κ(e)`.
    pub fn kappa_twisted_symmetric(&self, e: &LieElement) -> Result<bool> {
        let k = self.kappa(e)?;
        let sign = if self.n % 2 == 0 { Q::one() } else { -Q::one() };
        Ok(self.swap(&k)? == k.scale(&sign))
    }

    /// Scans the source basis monomials of the given homological degrees.
    pub fn obstruction_report(&self, degrees: RangeInclusive<i64>) -> Result<ObstructionReport> {
        self.require_valid()?;
        let delta = self.morphism()?;
        let x = self.x_index();
        let mut witnesses = Vec::new();
        let mut scanned = 0;
        for m in self.source.basis() {
            let d = self.source.monomial_degree(m);
            if !degrees.contains(&d) {
                continue;
            }
            scanned += 1;
            let e = freelie::monomial(&self.source, m.clone());
            let k = delta.apply(&e)?.component(x);
            if !k.is_zero() {
                witnesses.push(Witness { element: e, value: k });
            }
        }
        Ok(ObstructionReport {
            n: self.n,
            weight_cap: self.source.weight_cap(),
            degrees,
            scanned,
            witnesses,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumReport {
    pub failures: Vec<String>,
}

impl DatumReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: LieElement,
    pub value: LieElement,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub n: usize,
    pub weight_cap: usize,
    pub degrees: RangeInclusive<i64>,
    pub scanned: usize,
    pub witnesses: Vec<Witness>,
}

impl ObstructionReport {
    pub fn obstructed(&self) -> bool {
        !self.witnesses.is_empty()
    }

    pub fn verdict(&self) -> String {
        if self.obstructed() {
            let k = self.n + 1;
            let article = if k == 8 || k == 11 || k == 18 || (80..90).contains(&k) { "an" } else { "a" };
            format!("not {article} {k}-fold suspension")
        } else {
            "no obstruction found (inconclusive)".to_string()
        }
    }
}

/// `Sⁿ = Σⁿ S⁰`: one generator `u` of degree `n − 1` with
/// `Δ₂(u) = 1⊗(u₁+u₂) + x⊗[u₁,u₂]`.
pub fn sphere_datum(n: usize, weight_cap: usize) -> Result<CoalgebraDatum> {
    let source = FreeGradedLie::new(&[("u", n as i64 - 1)], weight_cap)?;
    let model = target_model(&source, n)?;
    let target = model.lie().clone();
    let u1 = freelie::generator(&target, "u1")?;
    let u2 = freelie::generator(&target, "u2")?;
    let img = TensorElement::pure_labeled(&model, "1", &u1.add(&u2)?)?
        .add(&TensorElement::pure_labeled(&model, "x", &u1.bracket(&u2)?)?)?;
    CoalgebraDatum::new(n, &source, vec![("u".into(), img)], "sphere: pinch plus the top cell of the co-H structure")
}

/// Every generator goes to its pinch image only.
pub fn wedge_pinch_datum(source: &Lie, n: usize) -> Result<CoalgebraDatum> {
    let model = target_model(source, n)?;
    let target = model.lie().clone();
    let mut images = Vec::new();
    for g in source.generators() {
        let a = freelie::generator(&target, &format!("{}1", g.name))?;
        let b = freelie::generator(&target, &format!("{}2", g.name))?;
        images.push((g.name.clone(), TensorElement::pure_labeled(&model, "1", &a.add(&b)?)?));
    }
    CoalgebraDatum::new(n, source, images, "wedge of spheres: pinch map")
}

/// A map out of a model of `S^{n−1} × ΣⁿY` presented on cells.
#[derive(Clone, Debug)]
pub struct ProductModel {
    /// generators: the `x` cell, the base cells, and the product cells
    pub cells: Lie,
    /// name of the cell of the sphere factor
    pub x_cell: String,
    /// base cell -> its product cell `x × g`
    pub partners: Vec<(String, String)>,
    /// image of every cell in `L ∗ L`
    pub images: Vec<(String, LieElement)>,
}

/// Converts a product-model presentation into the adjoint datum: the base
/// cell `g` contributes `1 ⊗ image(g)` and its partner `x × g` contributes
/// `x ⊗ image(x × g)`.
pub fn from_product_model(source: &Lie, n: usize, p: &ProductModel) -> Result<CoalgebraDatum> {
    let model = target_model(source, n)?;
    let lookup: BTreeMap<&str, &LieElement> = p.images.iter().map(|(k, v)| (k.as_str(), v)).collect();
    for g in p.cells.generators() {
        let img = lookup.get(g.name.as_str()).ok_or_else(|| Error::MissingCellImage(g.name.clone()))?;
        if **img.owner() != **model.lie() {
            return Err(Error::OwnerMismatch);
        }
    }
    if !lookup.contains_key(p.x_cell.as_str()) {
        return Err(Error::MissingCellImage(p.x_cell.clone()));
    }
    let mut images = Vec::new();
    for g in source.generators() {
        let base = lookup.get(g.name.as_str()).ok_or_else(|| Error::MissingCellImage(g.name.clone()))?;
        let mut img = TensorElement::pure_labeled(&model, "1", base)?;
        if let Some((_, cell)) = p.partners.iter().find(|(b, _)| *b == g.name) {
            let top = lookup.get(cell.as_str()).ok_or_else(|| Error::MissingCellImage(cell.clone()))?;
            img = img.add(&TensorElement::pure_labeled(&model, "x", top)?)?;
        }
        images.push((g.name.clone(), img));
    }
    CoalgebraDatum::new(n, source, images, "adjoint of a map out of a product-cell model")
}

/// `Σ³ℂP²`: `𝕃(u, v)` in degrees 4, 6, from the cell map
/// `x, a ↦ 0; u ↦ u₁+u₂; v ↦ v₁+v₂; b ↦ [u₁,u₂]`.
pub fn sigma3_cp2_datum(weight_cap: usize) -> Result<CoalgebraDatum> {
    let source = FreeGradedLie::new(&[("u", 4), ("v", 6)], weight_cap)?;
    let target = doubled(&source)?;
    let cells = FreeGradedLie::new(&[("x", 1), ("u", 4), ("v", 6), ("a", 6), ("b", 8)], weight_cap)?;
    let g = |s: &str| freelie::generator(&target, s);
    let images = vec![
        ("x".to_string(), freelie::zero(&target)),
        ("a".to_string(), freelie::zero(&target)),
        ("u".to_string(), g("u1")?.add(&g("u2")?)?),
        ("v".to_string(), g("v1")?.add(&g("v2")?)?),
        ("b".to_string(), g("u1")?.bracket(&g("u2")?)?),
    ];
    let p = ProductModel {
        cells,
        x_cell: "x".into(),
        partners: vec![("u".into(), "a".into()), ("v".into(), "b".into())],
        images,
    };
    let mut d = from_product_model(&source, 3, &p)?;
    d.provenance = "Σ³ℂP²: cells x, u, v, a = x×u, b = x×v in degrees 1, 4, 6, 6, 8".into();
    Ok(d)
}

/// `S⁵ ∨ S⁷` with the pinch datum, compared against `Σ³ℂP²` at `n = 3`.
pub fn wedge_s5_s7_datum(weight_cap: usize) -> Result<CoalgebraDatum> {
    let source = FreeGradedLie::new(&[("u", 4), ("v", 6)], weight_cap)?;
    let mut d = wedge_pinch_datum(&source, 3)?;
    d.provenance = "S⁵ ∨ S⁷: pinch map on both cells".into();
    Ok(d)
}
