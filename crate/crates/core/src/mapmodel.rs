//! Finite-dimensional CDGAs and tensor models `A ⊗ L`.
//!
//! Gradings: `A` is cohomological, `L` homological, and `a ⊗ ξ` sits in
//! homological degree `deg ξ − deg a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::equivariant::{
    homology_of_invariants_dims, invariants, FiniteGroup, GroupAction, LieGroupAction,
};
use crate::error::{Error, Result};
use crate::freelie::{self, Derivation, Lie, LieElement, LieTarget, Monomial};
use crate::linfty::LInftyAlgebra;
use crate::qlinalg::{
    add_into, axpy, coordinates, homology_dims, ChainComplex, GradedVectorSpace, QMatrix,
    SparseVec, Q,
};

fn parity(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

fn signed(c: Q, negative: bool) -> Q {
    if negative {
        -c
    } else {
        c
    }
}

/// A finite-dimensional commutative differential graded algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdga {
    space: GradedVectorSpace,
    unit: usize,
    products: BTreeMap<(usize, usize), SparseVec>,
    differential: QMatrix,
}

impl Cdga {
    /// Builds and validates a CDGA. Products with the unit are implicit; a
    /// product given for `(i, j)` determines `(j, i)` by graded commutativity.
    pub fn new(
        basis: Vec<(String, i64)>,
        unit: &str,
        products: Vec<((usize, usize), SparseVec)>,
        differential: Vec<(usize, SparseVec)>,
    ) -> Result<Cdga> {
        if let Some((l, d)) = basis.iter().find(|(_, d)| *d < 0) {
            return Err(Error::InvalidStructure(format!("{l} has negative degree {d}")));
        }
        let space = GradedVectorSpace::new(basis)?;
        let n = space.dim();
        let unit = space.index_of(unit).ok_or_else(|| Error::UnknownBasis(unit.to_string()))?;
        if space.degree(unit) != 0 {
            return Err(Error::InvalidStructure("unit must have degree 0".into()));
        }
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for ((i, j), v) in products {
            if i >= n || j >= n || v.keys().any(|k| *k >= n) {
                return Err(Error::Dimension("product index out of range".into()));
            }
            let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let swapped: SparseVec = if parity(space.degree(i)) && parity(space.degree(j)) {
                v.iter().map(|(k, c)| (*k, -c.clone())).collect()
            } else {
                v.clone()
            };
            for (key, val) in [((i, j), v), ((j, i), swapped)] {
                if let Some(old) = table.get(&key) {
                    if *old != val {
                        return Err(Error::InvalidStructure(format!(
                            "product {}·{} is not graded commutative",
                            space.label(i),
                            space.label(j)
                        )));
                    }
                }
                table.insert(key, val);
            }
        }
        for i in 0..n {
            let e: SparseVec = [(i, Q::one())].into_iter().collect();
            for key in [(unit, i), (i, unit)] {
                if let Some(old) = table.get(&key) {
                    if *old != e {
                        return Err(Error::InvalidStructure("unit does not act as identity".into()));
                    }
                }
                table.insert(key, e.clone());
            }
        }
        table.retain(|_, v| !v.is_empty());
        let mut d = QMatrix::zeros(n, n);
        for (c, v) in differential {
            if c >= n || v.keys().any(|k| *k >= n) {
                return Err(Error::Dimension("differential index out of range".into()));
            }
            for (r, x) in v {
                d.set(r, c, x);
            }
        }
        let a = Cdga { space, unit, products: table, differential: d };
        a.validate()?;
        Ok(a)
    }

    /// The ground field as a CDGA.
    pub fn ground_field() -> Cdga {
        Cdga::new(vec![("1".into(), 0)], "1", vec![], vec![]).expect("ground field")
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for ((i, j), v) in &self.products {
            let want = self.degree(*i) + self.degree(*j);
            if v.keys().any(|k| self.degree(*k) != want) {
                return Err(Error::InvalidStructure(format!(
                    "product {}·{} has the wrong degree",
                    self.label(*i),
                    self.label(*j)
                )));
            }
        }
        for ((r, c), _) in self.differential.entries() {
            if self.degree(*r) != self.degree(*c) + 1 {
                return Err(Error::BadDifferentialDegree { row: *r, col: *c });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let left = self.mul_vec(&ab, &self.basis_vec(c));
                    let right = self.mul_vec(&self.basis_vec(a), &self.mul(b, c));
                    if left != right {
                        return Err(Error::InvalidStructure(format!(
                            "product is not associative on ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        )));
                    }
                }
                // d(ab) = da·b + (-1)^{|a|} a·db
                let lhs = self.d(&ab);
                let mut rhs = self.mul_vec(&self.d(&self.basis_vec(a)), &self.basis_vec(b));
                let sign = if parity(self.degree(a)) { -Q::one() } else { Q::one() };
                axpy(&mut rhs, &sign, &self.mul_vec(&self.basis_vec(a), &self.d(&self.basis_vec(b))));
                if lhs != rhs {
                    return Err(Error::InvalidStructure(format!(
                        "Leibniz rule fails on ({}, {})",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        if !self.differential.mul(&self.differential)?.is_zero() {
            return Err(Error::NotSquareZero(0));
        }
        Ok(())
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Cohomological degree.
    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.space.index_of(label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn basis_vec(&self, i: usize) -> SparseVec {
        [(i, Q::one())].into_iter().collect()
    }

    pub fn mul(&self, i: usize, j: usize) -> SparseVec {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a {
            for (j, y) in b {
                if let Some(v) = self.products.get(&(*i, *j)) {
                    axpy(&mut out, &(x * y), v);
                }
            }
        }
        out
    }

    pub fn differential(&self) -> &QMatrix {
        &self.differential
    }

    pub fn d(&self, v: &SparseVec) -> SparseVec {
        self.differential.apply(v)
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.is_zero()
    }

    /// The underlying cochain complex, regraded homologically (`p ↦ −p`).
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let space = GradedVectorSpace::new(
            (0..self.dim()).map(|i| (self.label(i).to_string(), -self.degree(i))),
        )?;
        ChainComplex::from_map(space, &self.differential)
    }

    /// Cohomology dimensions by cohomological degree.
    pub fn cohomology_dims(&self) -> Result<BTreeMap<i64, usize>> {
        Ok(homology_dims(&self.chain_complex()?)
            .into_iter()
            .map(|(k, d)| (-k, d))
            .collect())
    }
}

/// A CDGA with a finite group acting by CDGA automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCdga {
    pub cdga: Arc<Cdga>,
    pub action: GroupAction,
}

impl GCdga {
    pub fn new(cdga: Cdga, action: GroupAction) -> Result<GCdga> {
        if action.dim() != cdga.dim() {
            return Err(Error::Dimension("action and algebra dimensions differ".into()));
        }
        for g in 0..action.group().order() {
            let m = action.matrix(g);
            if m.entries().any(|((r, c), _)| cdga.degree(*r) != cdga.degree(*c)) {
                return Err(Error::BadAction("action does not preserve degrees".into()));
            }
            if m.mul(cdga.differential())? != cdga.differential().mul(m)? {
                return Err(Error::NotEquivariant);
            }
            for a in 0..cdga.dim() {
                for b in 0..cdga.dim() {
                    let lhs = m.apply(&cdga.mul(a, b));
                    let rhs = cdga.mul_vec(&m.apply(&cdga.basis_vec(a)), &m.apply(&cdga.basis_vec(b)));
                    if lhs != rhs {
                        return Err(Error::BadAction(format!(
                            "{} is not multiplicative",
                            action.group().name(g)
                        )));
                    }
                }
            }
        }
        Ok(GCdga { cdga: Arc::new(cdga), action })
    }
}

/// `H^*(S^{n−1})` with the antipodal `Σ₂`-action `σ·x = (−1)ⁿ x`.
pub fn cohomology_sphere_cdga(n: usize) -> Result<GCdga> {
    if n == 0 {
        return Err(Error::Unsupported("sphere dimension n - 1 must be nonnegative".into()));
    }
    let deg = n as i64 - 1;
    // for n = 1 the basis {1, x} spans H^0(S^0); x is the class with x² = 0 in this model
    let cdga = Cdga::new(vec![("1".into(), 0), ("x".into(), deg)], "1", vec![], vec![])?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let s2 = FiniteGroup::symmetric(2);
    let action = GroupAction::new(
        s2,
        vec![QMatrix::identity(2), QMatrix::from_i64(2, 2, &[1, 0, 0, sign])],
    )?;
    GCdga::new(cdga, action)
}

/// The tensor product `A ⊗ L` with `L` free; elements implement [`LieTarget`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModel {
    cdga: Arc<Cdga>,
    lie: Lie,
}

pub type Model = Arc<TensorModel>;

impl TensorModel {
    pub fn new(cdga: Arc<Cdga>, lie: &Lie) -> Model {
        Arc::new(TensorModel { cdga, lie: lie.clone() })
    }

    pub fn cdga(&self) -> &Arc<Cdga> {
        &self.cdga
    }

    pub fn lie(&self) -> &Lie {
        &self.lie
    }

    /// Basis pairs `(a, m)` in a homological degree.
    pub fn basis_in_degree(&self, degree: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for a in 0..self.cdga.dim() {
            for m in self.lie.basis_in_degree(degree + self.cdga.degree(a)) {
                out.push((a, m));
            }
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    model: Model,
    terms: BTreeMap<(usize, Monomial), Q>,
    truncated: bool,
}

impl TensorElement {
    pub fn zero(model: &Model) -> Self {
        TensorElement { model: model.clone(), terms: BTreeMap::new(), truncated: false }
    }

    /// `a ⊗ ξ` for a basis element `a`.
    pub fn pure(model: &Model, a: usize, xi: &LieElement) -> Result<Self> {
        if **xi.owner() != *model.lie {
            return Err(Error::OwnerMismatch);
        }
        let mut out = TensorElement::zero(model);
        out.truncated = xi.truncated();
        for (m, c) in xi.terms() {
            out.add_term((a, m.clone()), c);
        }
        Ok(out)
    }

    /// `a ⊗ ξ` with `a` given by its label.
    pub fn pure_labeled(model: &Model, a: &str, xi: &LieElement) -> Result<Self> {
        let i = model.cdga.index_of(a).ok_or_else(|| Error::UnknownBasis(a.to_string()))?;
        TensorElement::pure(model, i, xi)
    }

    pub fn from_terms(model: &Model, terms: impl IntoIterator<Item = ((usize, Monomial), Q)>) -> Self {
        let mut out = TensorElement::zero(model);
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, key: (usize, Monomial), c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn terms(&self) -> &BTreeMap<(usize, Monomial), Q> {
        &self.terms
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn term_degree(&self, key: &(usize, Monomial)) -> i64 {
        self.model.lie.monomial_degree(&key.1) - self.model.cdga.degree(key.0)
    }

    /// Homological degree; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|k| self.term_degree(k));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The `L`-part paired with the basis element `a`.
    pub fn component(&self, a: usize) -> LieElement {
        LieElement::from_terms(
            &self.model.lie,
            self.terms.iter().filter(|((b, _), _)| *b == a).map(|((_, m), c)| (m.clone(), c.clone())),
        )
    }

    pub fn component_labeled(&self, a: &str) -> Result<LieElement> {
        let i = self.model.cdga.index_of(a).ok_or_else(|| Error::UnknownBasis(a.to_string()))?;
        Ok(self.component(i))
    }

    fn check_model(&self, other: &TensorElement) -> Result<()> {
        if self.model != other.model {
            return Err(Error::OwnerMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_model(other)?;
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> TensorElement {
        let mut out = TensorElement::zero(&self.model);
        out.truncated = self.truncated;
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &(c * s));
        }
        out
    }

    pub fn neg(&self) -> TensorElement {
        self.scale(&-Q::one())
    }

    /// `[a⊗ξ, b⊗ζ] = (−1)^{|ξ||b|} (ab) ⊗ [ξ, ζ]`.
    pub fn bracket(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_model(other)?;
        let lie = &self.model.lie;
        let cdga = &self.model.cdga;
        let mut out = TensorElement::zero(&self.model);
        out.truncated = self.truncated || other.truncated;
        for ((a, xi), c) in &self.terms {
            for ((b, zeta), d) in &other.terms {
                let ab = cdga.mul(*a, *b);
                if ab.is_empty() {
                    continue;
                }
                let br = freelie::monomial(lie, xi.clone()).bracket(&freelie::monomial(lie, zeta.clone()))?;
                out.truncated |= br.truncated();
                let neg = parity(lie.monomial_degree(xi)) && parity(cdga.degree(*b));
                let coef = signed(c * d, neg);
                for (p, x) in &ab {
                    for (m, y) in br.terms() {
                        out.add_term((*p, m.clone()), &(&coef * x * y));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Diagonal action `g(a⊗ξ) = ga ⊗ gξ`.
    pub fn act(&self, g: usize, a_action: &GroupAction, lie_action: &LieGroupAction) -> Result<TensorElement> {
        let mut out = TensorElement::zero(&self.model);
        for ((a, m), c) in &self.terms {
            let ga = a_action.apply(g, &self.model.cdga.basis_vec(*a));
            let gm = lie_action.apply(g, &freelie::monomial(&self.model.lie, m.clone()))?;
            for (b, x) in &ga {
                for (n, y) in gm.terms() {
                    out.add_term((*b, n.clone()), &(c * x * y));
                }
            }
        }
        Ok(out)
    }

    /// Rendering with a chosen tensor symbol; higher-degree `A` factors first.
    pub fn format_with(&self, tensor: &str) -> String {
        let cdga = &self.model.cdga;
        let mut factors: Vec<usize> = self.terms.keys().map(|(a, _)| *a).collect();
        factors.dedup();
        factors.sort_by_key(|a| (-cdga.degree(*a), *a));
        factors.dedup();
        if factors.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for a in factors {
            let part = self.component(a);
            let s = part.to_string();
            let single = part.terms().len() == 1 && part.terms().values().next().unwrap().is_one();
            let piece = if single {
                format!("{}{tensor}{s}", cdga.label(a))
            } else if part.terms().len() == 1 && s.starts_with('-') && part.terms().values().next().unwrap() == &-Q::one() {
                format!("-{}{tensor}{}", cdga.label(a), &s[1..])
            } else {
                format!("{}{tensor}({s})", cdga.label(a))
            };
            if out.is_empty() {
                out = piece;
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("⊗"))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl LieTarget for TensorElement {
    fn add(&self, other: &Self) -> Result<Self> {
        TensorElement::add(self, other)
    }
    fn scale(&self, c: &Q) -> Self {
        TensorElement::scale(self, c)
    }
    fn bracket(&self, other: &Self) -> Result<Self> {
        TensorElement::bracket(self, other)
    }
    fn degree(&self) -> Option<i64> {
        TensorElement::degree(self)
    }
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
}

/// The L∞ structure on `A ⊗ L` for a general finite L∞-algebra:
/// `ℓ_k(a_1⊗x_1,…) = ε (a_1⋯a_k) ⊗ ℓ_k(x_1,…)` with
/// `ε = (−1)^{(k−2)Σ|a_i| + Σ_i |a_i| Σ_{j<i} |x_j|}`, plus `da ⊗ x` in `ℓ_1`.
/// Basis element `(a, i)` has index `a * dim L + i`.
pub fn tensor_linfty(a: &Cdga, l: &LInftyAlgebra) -> Result<LInftyAlgebra> {
    let nl = l.dim();
    let idx = |p: usize, i: usize| p * nl + i;
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for p in 0..a.dim() {
        for i in 0..nl {
            let label = if p == a.unit() {
                l.space().label(i).to_string()
            } else {
                format!("{}⊗{}", a.label(p), l.space().label(i))
            };
            labels.push((label, l.degree(i) - a.degree(p)));
            weights.push(l.weights()[i]);
        }
    }
    let space = GradedVectorSpace::new(labels)?;
    let mut out = LInftyAlgebra::new(space, weights, l.arity_cap())?;
    // ℓ_1
    for p in 0..a.dim() {
        let dp = a.d(&a.basis_vec(p));
        for i in 0..nl {
            let mut v = SparseVec::new();
            for (q, c) in &dp {
                add_into(&mut v, idx(*q, i), c);
            }
            let li = l.eval_basis(&[i]);
            let sign = if parity(a.degree(p)) { -Q::one() } else { Q::one() };
            for (j, c) in &li {
                add_into(&mut v, idx(p, *j), &(&sign * c));
            }
            if !v.is_empty() {
                out.set_bracket(&[idx(p, i)], v)?;
            }
        }
    }
    let mut written: HashMap<Vec<usize>, SparseVec> = HashMap::new();
    for k in 2..=l.arity_cap() {
        for (tuple, value) in l.entries(k) {
            let mut assign = vec![0usize; k];
            loop {
                let mut prod = a.basis_vec(assign[0]);
                for p in &assign[1..] {
                    prod = a.mul_vec(&prod, &a.basis_vec(*p));
                }
                if !prod.is_empty() {
                    let sum_a: i64 = assign.iter().map(|p| a.degree(*p)).sum();
                    let mut neg = (k as i64 - 2) * sum_a;
                    for i in 0..k {
                        let before: i64 = tuple[..i].iter().map(|j| l.degree(*j)).sum();
                        neg += a.degree(assign[i]) * before;
                    }
                    let neg = parity(neg);
                    let mut v = SparseVec::new();
                    for (q, c) in &prod {
                        for (j, x) in value {
                            add_into(&mut v, idx(*q, *j), &signed(c * x, neg));
                        }
                    }
                    let ttuple: Vec<usize> = (0..k).map(|i| idx(assign[i], tuple[i])).collect();
                    out.set_bracket(&ttuple, v)?;
                    let key = {
                        let mut s = ttuple.clone();
                        s.sort();
                        s
                    };
                    if let Some(prev) = written.get(&key) {
                        let now = out.eval_basis(&key);
                        if *prev != now {
                            return Err(Error::InvalidStructure("inconsistent tensor bracket".into()));
                        }
                    }
                    written.insert(key.clone(), out.eval_basis(&key));
                }
                let mut p = k;
                loop {
                    if p == 0 {
                        break;
                    }
                    p -= 1;
                    assign[p] += 1;
                    if assign[p] < a.dim() {
                        break;
                    }
                    assign[p] = 0;
                }
                if assign.iter().all(|x| *x == 0) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Diagonal action on [`tensor_linfty`] coordinates.
pub fn tensor_action(a: &GroupAction, l: &GroupAction) -> Result<GroupAction> {
    if a.group() != l.group() {
        return Err(Error::BadAction("actions of different groups".into()));
    }
    let nl = l.dim();
    let n = a.dim() * nl;
    let mut matrices = Vec::new();
    for g in 0..a.group().order() {
        let mut m = QMatrix::zeros(n, n);
        for ((r1, c1), x) in a.matrix(g).entries() {
            for ((r2, c2), y) in l.matrix(g).entries() {
                m.set(r1 * nl + r2, c1 * nl + c2, x * y);
            }
        }
        matrices.push(m);
    }
    GroupAction::new(a.group().clone(), matrices)
}

#[derive(Clone, Debug)]
pub struct HofixedReport {
    /// homological degree -> dimension
    pub dims: BTreeMap<i64, usize>,
    /// invariant basis per degree (fast path only)
    pub invariant_bases: BTreeMap<i64, Vec<TensorElement>>,
    pub fast_path: bool,
    pub weight_cap: usize,
    pub notes: Vec<String>,
}

impl HofixedReport {
    /// Whether a homogeneous element lies in the span of the reported invariants.
    pub fn contains(&self, e: &TensorElement) -> bool {
        let Some(d) = e.degree() else {
            return e.is_zero();
        };
        let Some(basis) = self.invariant_bases.get(&d) else {
            return false;
        };
        let keys: Vec<&(usize, Monomial)> = {
            let mut ks: Vec<_> = basis.iter().flat_map(|b| b.terms().keys()).chain(e.terms().keys()).collect();
            ks.sort();
            ks.dedup();
            ks
        };
        let pos: HashMap<&(usize, Monomial), usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let to_vec = |t: &TensorElement| -> SparseVec {
            t.terms().iter().map(|(k, c)| (pos[k], c.clone())).collect()
        };
        let vs: Vec<SparseVec> = basis.iter().map(to_vec).collect();
        coordinates(keys.len(), &vs, &to_vec(e)).is_some()
    }
}

fn block_action(
    model: &Model,
    block: &[(usize, Monomial)],
    a_action: &GroupAction,
    lie_action: &LieGroupAction,
) -> Result<GroupAction> {
    let index: HashMap<&(usize, Monomial), usize> = block.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut matrices = Vec::new();
    for g in 0..a_action.group().order() {
        let mut m = QMatrix::zeros(block.len(), block.len());
        for (c, key) in block.iter().enumerate() {
            let e = TensorElement::from_terms(model, [(key.clone(), Q::one())]);
            for (k, x) in e.act(g, a_action, lie_action)?.terms() {
                let r = *index.get(k).ok_or_else(|| Error::BadAction("action leaves a degree block".into()))?;
                m.set(r, c, x.clone());
            }
        }
        matrices.push(m);
    }
    GroupAction::new(a_action.group().clone(), matrices)
}

/// Per-degree dimensions of `(A ⊗ L)^G` for `L` free. With zero differentials
/// this is a direct invariant count; otherwise the homology of the invariant
/// subcomplex is computed and the report says so.
pub fn hofixed_homotopy_groups(
    a: &GCdga,
    lie_action: &LieGroupAction,
    differential: Option<&Derivation>,
    degrees: RangeInclusive<i64>,
) -> Result<HofixedReport> {
    if a.action.group() != lie_action.group() {
        return Err(Error::BadAction("actions of different groups".into()));
    }
    let lie = lie_action.lie();
    let model = TensorModel::new(a.cdga.clone(), lie);
    let l_zero = differential.map_or(true, |d| {
        lie.generators().iter().all(|g| d.apply(&freelie::generator(lie, &g.name).unwrap()).map_or(false, |v| v.is_zero()))
    });
    let mut report = HofixedReport {
        dims: BTreeMap::new(),
        invariant_bases: BTreeMap::new(),
        fast_path: a.cdga.has_zero_differential() && l_zero,
        weight_cap: lie.weight_cap(),
        notes: vec![format!("weight cap {}: monomials of higher weight are not counted", lie.weight_cap())],
    };
    if degrees.is_empty() {
        return Ok(report);
    }
    if report.fast_path {
        for k in degrees {
            let block = model.basis_in_degree(k);
            if block.is_empty() {
                report.dims.insert(k, 0);
                report.invariant_bases.insert(k, vec![]);
                continue;
            }
            let act = block_action(&model, &block, &a.action, lie_action)?;
            let inv: Vec<TensorElement> = invariants(&act)
                .into_iter()
                .map(|v| TensorElement::from_terms(&model, v.into_iter().map(|(i, c)| (block[i].clone(), c))))
                .collect();
            report.dims.insert(k, inv.len());
            report.invariant_bases.insert(k, inv);
        }
        return Ok(report);
    }
    report.notes.push("nonzero differential: reporting homology of the invariant subcomplex".into());
    let (lo, hi) = (*degrees.start(), *degrees.end());
    let mut keys = Vec::new();
    let mut labels = Vec::new();
    for k in lo - 1..=hi + 1 {
        for key in model.basis_in_degree(k) {
            labels.push((format!("{}", TensorElement::from_terms(&model, [(key.clone(), Q::one())])), k));
            keys.push(key);
        }
    }
    let space = GradedVectorSpace::new(labels)?;
    let index: HashMap<&(usize, Monomial), usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut d = QMatrix::zeros(keys.len(), keys.len());
    for (c, (p, m)) in keys.iter().enumerate() {
        if space.degree(c) == lo - 1 {
            continue;
        }
        let x = freelie::monomial(lie, m.clone());
        let mut img = TensorElement::zero(&model);
        for (q, y) in a.cdga.d(&a.cdga.basis_vec(*p)) {
            img = img.add(&TensorElement::pure(&model, q, &x)?.scale(&y))?;
        }
        if let Some(der) = differential {
            let sign = if parity(a.cdga.degree(*p)) { -Q::one() } else { Q::one() };
            img = img.add(&TensorElement::pure(&model, *p, &der.apply(&x)?)?.scale(&sign))?;
        }
        for (key, y) in img.terms() {
            let r = *index.get(key).ok_or_else(|| Error::InvalidStructure("differential leaves the window".into()))?;
            d.set(r, c, y.clone());
        }
    }
    let complex = ChainComplex::from_map(space, &d)?;
    let mut matrices = Vec::new();
    for g in 0..a.action.group().order() {
        let mut m = QMatrix::zeros(keys.len(), keys.len());
        for (c, key) in keys.iter().enumerate() {
            let e = TensorElement::from_terms(&model, [(key.clone(), Q::one())]);
            for (k, x) in e.act(g, &a.action, lie_action)?.terms() {
                m.set(index[k], c, x.clone());
            }
        }
        matrices.push(m);
    }
    let act = GroupAction::new(a.action.group().clone(), matrices)?;
    let dims = homology_of_invariants_dims(&act, &complex)?;
    for k in lo..=hi {
        report.dims.insert(k, dims.get(&k).copied().unwrap_or(0));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::{free_product, FreeGradedLie};
    use crate::linfty::check_generalized_jacobi;
    use crate::qlinalg::q;

    #[test]
    fn sphere_signs() {
        assert_eq!(cohomology_sphere_cdga(3).unwrap().action.matrix(1).get(1, 1), q(-1));
        assert_eq!(cohomology_sphere_cdga(2).unwrap().action.matrix(1).get(1, 1), q(1));
        let s1 = cohomology_sphere_cdga(1).unwrap();
        assert_eq!(s1.cdga.degree(1), 0);
        assert_eq!(s1.action.matrix(1).get(1, 1), q(-1));
    }

    #[test]
    fn broken_cdgas_rejected() {
        let basis = vec![("1".to_string(), 0), ("x".to_string(), 1), ("y".to_string(), 2)];
        // x·x must vanish for odd x
        let bad = Cdga::new(basis.clone(), "1", vec![((1, 1), [(2, q(1))].into_iter().collect())], vec![]);
        assert!(bad.is_err());
        // d of degree 0 is not allowed
        let bad = Cdga::new(basis.clone(), "1", vec![], vec![(1, [(1, q(1))].into_iter().collect())]);
        assert!(matches!(bad, Err(Error::BadDifferentialDegree { .. })));
        // d x = y is fine and acyclic above degree 0
        let ok = Cdga::new(basis, "1", vec![], vec![(1, [(2, q(1))].into_iter().collect())]).unwrap();
        assert_eq!(ok.cohomology_dims().unwrap().get(&0), Some(&1));
        assert_eq!(ok.cohomology_dims().unwrap().get(&1), Some(&0));
    }

    #[test]
    fn nilpotent_square_kills_bracket() {
        let l = FreeGradedLie::new(&[("u", 4), ("v", 6)], 4).unwrap();
        let ll = free_product(&[&l, &l], &["1", "2"]).unwrap();
        let s = cohomology_sphere_cdga(3).unwrap();
        let model = TensorModel::new(s.cdga.clone(), &ll);
        let a = TensorElement::pure_labeled(&model, "x", &freelie::generator(&ll, "u1").unwrap()).unwrap();
        let b = TensorElement::pure_labeled(&model, "x", &freelie::generator(&ll, "u2").unwrap()).unwrap();
        assert!(a.bracket(&b).unwrap().is_zero());
        let br = freelie::generator(&ll, "u1").unwrap().bracket(&freelie::generator(&ll, "u2").unwrap()).unwrap();
        let t = TensorElement::pure_labeled(&model, "x", &br).unwrap();
        assert_eq!(t.degree(), Some(6));
        assert_eq!(t.to_string(), "x⊗[u1,u2]");
    }

    #[test]
    fn ground_field_tensor_is_identity() {
        let lie = FreeGradedLie::new(&[("a", 1), ("b", 2)], 3).unwrap();
        let l = LInftyAlgebra::from_free_lie(&lie, None, 2).unwrap();
        let t = tensor_linfty(&Cdga::ground_field(), &l).unwrap();
        assert_eq!(t, l);
    }

    #[test]
    fn tensor_with_odd_class_satisfies_jacobi() {
        let lie = FreeGradedLie::new(&[("a", 1), ("b", 2)], 3).unwrap();
        let l = LInftyAlgebra::from_free_lie(&lie, None, 2).unwrap();
        let basis = vec![("1".to_string(), 0), ("e".to_string(), 1)];
        let a = Cdga::new(basis, "1", vec![], vec![]).unwrap();
        let t = tensor_linfty(&a, &l).unwrap();
        for n in 1..=3 {
            assert!(check_generalized_jacobi(&t, n).passed(), "arity {n}");
        }
    }
}
