//! Finite group actions on graded spaces, Lie and L∞-algebras.
//!
//! Groups are extensional: an element list with a multiplication table.
//! Invariants are the image of the Reynolds projector `(1/|G|) Σ_g g`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freelie::{self, extend_morphism, Lie, LieElement, LieMorphism, Monomial};
use crate::linfty::{mc_homotopy_groups, HomotopyTable, LInftyAlgebra};
use crate::qlinalg::{
    add_into, axpy, coordinates, homology_data, homology_dims, kernel_image, normalize_leading,
    ChainComplex, GradedVectorSpace, QMatrix, SparseVec, Q,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|x| *x >= n)) {
            return Err(Error::BadAction("multiplication table must be n x n over 0..n".into()));
        }
        let identity = (0..n)
            .find(|e| (0..n).all(|g| table[*e][g] == g && table[g][*e] == g))
            .ok_or_else(|| Error::BadAction("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::BadAction("multiplication is not associative".into()));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|b| table[a][*b] == identity)
                .ok_or_else(|| Error::BadAction(format!("element {} has no inverse", names[a])))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { names, table, identity, inverse, permutations: None })
    }

    /// The symmetric group on `r` letters; `(gh)(i) = g(h(i))`. Element 0 is the identity.
    pub fn symmetric(r: usize) -> Self {
        let mut perms = vec![(0..r).collect::<Vec<usize>>()];
        let mut i = 0;
        // all permutations in lexicographic order, identity first
        while let Some(next) = next_permutation(&perms[i]) {
            perms.push(next);
            i += 1;
        }
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let table = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| index[&h.iter().map(|x| g[*x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        let mut g = FiniteGroup::from_table(names, table).expect("symmetric group table");
        g.permutations = Some(perms);
        g
    }

    pub fn cyclic(m: usize) -> Self {
        let names = (0..m).map(|i| if i == 0 { "e".to_string() } else { format!("g^{i}") }).collect();
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        FiniteGroup::from_table(names, table).expect("cyclic group table")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The permutation of an element of a symmetric group.
    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[a].as_slice())
    }

    /// Element of a symmetric group with the given one-line image.
    pub fn element_of_permutation(&self, p: &[usize]) -> Option<usize> {
        self.permutations.as_ref()?.iter().position(|q| q == p)
    }
}

fn next_permutation(p: &[usize]) -> Option<Vec<usize>> {
    let mut v = p.to_vec();
    let i = (1..v.len()).rev().find(|i| v[i - 1] < v[*i])?;
    let j = (i..v.len()).rev().find(|j| v[*j] > v[i - 1])?;
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cycle = vec![s + 1];
        seen[s] = true;
        let mut c = p[s];
        while c != s {
            seen[c] = true;
            cycle.push(c + 1);
            c = p[c];
        }
        let parts: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

pub fn permutation_matrix(p: &[usize]) -> QMatrix {
    let mut m = QMatrix::zeros(p.len(), p.len());
    for (i, j) in p.iter().enumerate() {
        m.set(*j, i, Q::one());
    }
    m
}

/// A linear action: one invertible matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<QMatrix>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, matrices: Vec<QMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::BadAction("one matrix per group element required".into()));
        }
        let dim = matrices.first().map_or(0, |m| m.rows());
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::BadAction("action matrices must be square of one size".into()));
        }
        if matrices[group.identity()] != QMatrix::identity(dim) {
            return Err(Error::BadAction("identity must act as the identity".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if matrices[a].mul(&matrices[b])? != matrices[group.mul(a, b)] {
                    return Err(Error::BadAction(format!(
                        "matrices violate the table at ({}, {})",
                        group.name(a),
                        group.name(b)
                    )));
                }
            }
        }
        Ok(GroupAction { group, dim, matrices })
    }

    /// Action determined by the images of a generating set; the remaining
    /// matrices are products, and the whole table is then verified.
    pub fn from_generators(group: FiniteGroup, dim: usize, gens: &[(usize, QMatrix)]) -> Result<Self> {
        let n = group.order();
        let mut known: Vec<Option<QMatrix>> = vec![None; n];
        known[group.identity()] = Some(QMatrix::identity(dim));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            for (s, ms) in gens {
                let h = group.mul(g, *s);
                if known[h].is_none() {
                    known[h] = Some(known[g].as_ref().unwrap().mul(ms)?);
                    queue.push_back(h);
                }
            }
        }
        let matrices = known
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::BadAction(format!("{} is not generated", group.name(i)))))
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(group, matrices)
    }

    pub fn trivial(group: FiniteGroup, dim: usize) -> Self {
        let matrices = vec![QMatrix::identity(dim); group.order()];
        GroupAction { group, dim, matrices }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &QMatrix {
        &self.matrices[g]
    }

    pub fn apply(&self, g: usize, v: &SparseVec) -> SparseVec {
        self.matrices[g].apply(v)
    }

    pub fn reynolds(&self) -> QMatrix {
        let mut sum = QMatrix::zeros(self.dim, self.dim);
        for m in &self.matrices {
            sum = sum.add(m).expect("same shape");
        }
        sum.scale(&Q::from_integer(BigInt::from(self.group.order())).recip())
    }

    /// Restriction to a set of basis indices the action preserves.
    pub fn restrict(&self, indices: &[usize]) -> Result<GroupAction> {
        let inside: std::collections::HashSet<usize> = indices.iter().copied().collect();
        for m in &self.matrices {
            if m.entries().any(|((r, c), _)| inside.contains(c) && !inside.contains(r)) {
                return Err(Error::BadAction("action does not preserve the block".into()));
            }
        }
        let matrices = self.matrices.iter().map(|m| m.submatrix(indices, indices)).collect();
        Ok(GroupAction { group: self.group.clone(), dim: indices.len(), matrices })
    }
}

/// Basis of the invariant subspace: pivot columns of the Reynolds projector,
/// scaled to leading coefficient one.
pub fn invariants(act: &GroupAction) -> Vec<SparseVec> {
    kernel_image(&act.reynolds()).image.iter().map(normalize_leading).collect()
}

/// The action of a group on a free Lie algebra, given on generators by
/// degree-preserving matrices and extended as Lie morphisms.
#[derive(Clone, Debug)]
pub struct LieGroupAction {
    lie: Lie,
    group: FiniteGroup,
    generator_action: GroupAction,
    morphisms: Vec<LieMorphism<LieElement>>,
}

impl LieGroupAction {
    pub fn new(lie: &Lie, generator_action: GroupAction) -> Result<Self> {
        let gens = lie.generators();
        if generator_action.dim() != gens.len() {
            return Err(Error::BadAction("action must be given on all generators".into()));
        }
        let mut morphisms = Vec::new();
        for g in 0..generator_action.group().order() {
            let m = generator_action.matrix(g);
            let mut images = Vec::new();
            for (i, gen) in gens.iter().enumerate() {
                let mut img = freelie::zero(lie);
                for (r, c) in m.column(i) {
                    if gens[r].degree != gen.degree {
                        return Err(Error::BadAction(format!(
                            "{} does not preserve the degree of {}",
                            generator_action.group().name(g),
                            gen.name
                        )));
                    }
                    img = img.add(&freelie::monomial(lie, Monomial::letter(r)).scale(&c))?;
                }
                images.push((gen.name.clone(), img));
            }
            morphisms.push(extend_morphism(lie, &images, freelie::zero(lie))?);
        }
        Ok(LieGroupAction {
            lie: lie.clone(),
            group: generator_action.group().clone(),
            generator_action,
            morphisms,
        })
    }

    /// Permutation action of `Σ_r` or any group given by generator permutations.
    pub fn by_generator_permutation(lie: &Lie, group: FiniteGroup, perms: &[Vec<usize>]) -> Result<Self> {
        let matrices = perms.iter().map(|p| permutation_matrix(p)).collect();
        LieGroupAction::new(lie, GroupAction::new(group, matrices)?)
    }

    pub fn lie(&self) -> &Lie {
        &self.lie
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn generator_action(&self) -> &GroupAction {
        &self.generator_action
    }

    pub fn apply(&self, g: usize, e: &LieElement) -> Result<LieElement> {
        self.morphisms[g].apply(e)
    }

    /// Matrices of the action on the span of the given monomials, which must be preserved.
    pub fn action_on(&self, monomials: &[Monomial]) -> Result<GroupAction> {
        let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrices = Vec::new();
        for g in 0..self.group.order() {
            let mut m = QMatrix::zeros(monomials.len(), monomials.len());
            for (c, mono) in monomials.iter().enumerate() {
                let img = self.apply(g, &freelie::monomial(&self.lie, mono.clone()))?;
                for (t, x) in img.terms() {
                    let r = *index.get(t).ok_or_else(|| {
                        Error::BadAction("action leaves the chosen span".into())
                    })?;
                    m.set(r, c, x.clone());
                }
            }
            matrices.push(m);
        }
        GroupAction::new(self.group.clone(), matrices)
    }

    /// The action on the full truncated basis, matching `LInftyAlgebra::from_free_lie`.
    pub fn full_action(&self) -> Result<GroupAction> {
        self.action_on(self.lie.basis())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceViolation {
    pub element: usize,
    pub tuple: Vec<usize>,
    pub residual: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub tuples_checked: usize,
    pub violations: Vec<EquivarianceViolation>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `g·ℓ_n(x_1,…,x_n) = ℓ_n(gx_1,…,gx_n)` on basis tuples up to the caps.
pub fn check_equivariance(act: &GroupAction, l: &LInftyAlgebra) -> Result<EquivarianceReport> {
    if act.dim() != l.dim() {
        return Err(Error::Dimension("action and algebra dimensions differ".into()));
    }
    let mut violations = Vec::new();
    let mut checked = 0;
    let basis: Vec<SparseVec> = (0..l.dim()).map(|i| [(i, Q::one())].into_iter().collect()).collect();
    for g in 0..act.group().order() {
        let moved: Vec<SparseVec> = basis.iter().map(|b| act.apply(g, b)).collect();
        for n in 1..=l.arity_cap() {
            for tuple in multisets(l.dim(), n) {
                let total: usize = tuple.iter().map(|i| l.weights()[*i]).sum();
                if total > l.max_weight() {
                    continue;
                }
                checked += 1;
                let lhs = act.apply(g, &l.eval_basis(&tuple));
                let args: Vec<&SparseVec> = tuple.iter().map(|i| &moved[*i]).collect();
                let mut residual = lhs;
                axpy(&mut residual, &-Q::one(), &l.eval(&args));
                if !residual.is_empty() {
                    violations.push(EquivarianceViolation { element: g, tuple, residual });
                }
            }
        }
    }
    Ok(EquivarianceReport { tuples_checked: checked, violations })
}

fn multisets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Invariant basis computed blockwise over (degree, weight); the action must preserve blocks.
fn block_invariants(act: &GroupAction, space: &GradedVectorSpace, weights: &[usize]) -> Result<Vec<(SparseVec, i64, usize)>> {
    let mut blocks: BTreeMap<(i64, usize), Vec<usize>> = BTreeMap::new();
    for i in 0..space.dim() {
        blocks.entry((space.degree(i), weights[i])).or_default().push(i);
    }
    let mut out = Vec::new();
    for ((deg, w), idx) in blocks {
        let sub = act.restrict(&idx)?;
        for v in invariants(&sub) {
            let global: SparseVec = v.into_iter().map(|(i, c)| (idx[i], c)).collect();
            out.push((global, deg, w));
        }
    }
    Ok(out)
}

/// The sub-L∞-algebra of invariants, on the Reynolds-image basis.
pub fn invariant_subalgebra(act: &GroupAction, l: &LInftyAlgebra) -> Result<LInftyAlgebra> {
    if act.dim() != l.dim() {
        return Err(Error::Dimension("action and algebra dimensions differ".into()));
    }
    let inv = block_invariants(act, l.space(), l.weights())?;
    let mut labels = Vec::new();
    let mut seen = HashMap::new();
    for (v, d, _) in &inv {
        let mut label = l.space().format_vector(v);
        let count = seen.entry(label.clone()).or_insert(0usize);
        *count += 1;
        if *count > 1 {
            label = format!("{label}#{count}");
        }
        labels.push((label, *d));
    }
    let space = GradedVectorSpace::new(labels)?;
    let weights: Vec<usize> = inv.iter().map(|(_, _, w)| *w).collect();
    let mut out = LInftyAlgebra::new(space, weights.clone(), l.arity_cap())?;
    let vectors: Vec<SparseVec> = inv.into_iter().map(|(v, _, _)| v).collect();
    let max_w = weights.iter().copied().max().unwrap_or(0);
    for k in 1..=l.arity_cap() {
        for tuple in multisets(vectors.len(), k) {
            if tuple.iter().map(|i| weights[*i]).sum::<usize>() > max_w {
                continue;
            }
            let args: Vec<&SparseVec> = tuple.iter().map(|i| &vectors[*i]).collect();
            let value = l.eval(&args);
            if value.is_empty() {
                continue;
            }
            let coords = coordinates(l.dim(), &vectors, &value)
                .ok_or_else(|| Error::BadAction("bracket of invariants is not invariant".into()))?;
            out.set_bracket(&tuple, coords)?;
        }
    }
    Ok(out)
}

fn check_degree_preserving(act: &GroupAction, space: &GradedVectorSpace) -> Result<()> {
    for g in 0..act.group().order() {
        if act.matrix(g).entries().any(|((r, c), _)| space.degree(*r) != space.degree(*c)) {
            return Err(Error::BadAction("action does not preserve degrees".into()));
        }
    }
    Ok(())
}

/// Dimension of `(H_k(C))^G` per degree, via the action induced on homology classes.
pub fn invariant_homology_dims(act: &GroupAction, c: &ChainComplex) -> Result<BTreeMap<i64, usize>> {
    let space = c.space();
    if act.dim() != space.dim() {
        return Err(Error::Dimension("action and complex dimensions differ".into()));
    }
    check_degree_preserving(act, space)?;
    let order = Q::from_integer(BigInt::from(act.group().order()));
    let mut out = BTreeMap::new();
    for k in space.degrees() {
        let idx = space.indices_in_degree(k);
        let block = act.restrict(&idx)?;
        let h = homology_data(c, k);
        let m = h.dim();
        let mut avg = QMatrix::zeros(m, m);
        for g in 0..act.group().order() {
            for (j, rep) in h.representatives.iter().enumerate() {
                let moved = block.apply(g, rep);
                let class = h.class_of(&moved).ok_or(Error::NotEquivariant)?;
                for (i, x) in class {
                    avg.add_at(i, j, &(x / &order));
                }
            }
        }
        out.insert(k, avg.rank());
    }
    Ok(out)
}

/// Homology dimensions of the subcomplex of invariants.
pub fn homology_of_invariants_dims(act: &GroupAction, c: &ChainComplex) -> Result<BTreeMap<i64, usize>> {
    let space = c.space();
    check_degree_preserving(act, space)?;
    let d = c.full_matrix();
    let mut blocks: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
    for k in space.degrees() {
        let idx = space.indices_in_degree(k);
        let sub = act.restrict(&idx)?;
        let vs = invariants(&sub)
            .into_iter()
            .map(|v| v.into_iter().map(|(i, x)| (idx[i], x)).collect())
            .collect();
        blocks.insert(k, vs);
    }
    let mut labels = Vec::new();
    for (k, vs) in &blocks {
        for (i, _) in vs.iter().enumerate() {
            labels.push((format!("i{k}_{i}"), *k));
        }
    }
    let inv_space = GradedVectorSpace::new(labels)?;
    let mut diff = BTreeMap::new();
    for (k, vs) in &blocks {
        let lower = blocks.get(&(k - 1)).cloned().unwrap_or_default();
        let mut m = QMatrix::zeros(lower.len(), vs.len());
        for (j, v) in vs.iter().enumerate() {
            let dv = d.apply(v);
            if dv.is_empty() {
                continue;
            }
            let coords = coordinates(space.dim(), &lower, &dv).ok_or(Error::NotEquivariant)?;
            for (i, x) in coords {
                m.set(i, j, x);
            }
        }
        diff.insert(*k, m);
    }
    Ok(homology_dims(&ChainComplex::new(inv_space, diff)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceComparison {
    /// degree -> (dim H(C^G), dim H(C)^G)
    pub per_degree: BTreeMap<i64, (usize, usize)>,
}

impl InvarianceComparison {
    pub fn agree(&self) -> bool {
        self.per_degree.values().all(|(a, b)| a == b)
    }
}

/// Compares `H_*(C^G)` with `H_*(C)^G` degree by degree.
pub fn invariants_commute_with_homology(act: &GroupAction, c: &ChainComplex) -> Result<InvarianceComparison> {
    let d = c.full_matrix();
    for g in 0..act.group().order() {
        let m = act.matrix(g);
        if m.mul(&d)? != d.mul(m)? {
            return Err(Error::NotEquivariant);
        }
    }
    let left = homology_of_invariants_dims(act, c)?;
    let right = invariant_homology_dims(act, c)?;
    let mut per_degree = BTreeMap::new();
    for k in left.keys().chain(right.keys()) {
        per_degree.insert(
            *k,
            (left.get(k).copied().unwrap_or(0), right.get(k).copied().unwrap_or(0)),
        );
    }
    Ok(InvarianceComparison { per_degree })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointComparison {
    /// Homotopy groups of MC of the invariant subalgebra.
    pub of_invariants: HomotopyTable,
    /// degree k -> dim of invariants in H_k(L), i.e. in π_{k+1} MC(L).
    pub invariants_of: BTreeMap<i64, usize>,
}

impl FixedPointComparison {
    pub fn agree(&self) -> bool {
        let degrees: std::collections::BTreeSet<i64> = self
            .of_invariants
            .homology
            .keys()
            .chain(self.invariants_of.keys())
            .copied()
            .collect();
        degrees.into_iter().all(|k| {
            self.of_invariants.homology.get(&k).copied().unwrap_or(0)
                == self.invariants_of.get(&k).copied().unwrap_or(0)
        })
    }
}

/// Homotopy of the invariant subalgebra against invariants of the homotopy, both at τ = 0.
pub fn compare_fixed_point_homotopy(act: &GroupAction, l: &LInftyAlgebra) -> Result<FixedPointComparison> {
    let sub = invariant_subalgebra(act, l)?;
    let of_invariants = mc_homotopy_groups(&sub, &SparseVec::new())?;
    let invariants_of = invariant_homology_dims(act, &l.chain_complex()?)?;
    Ok(FixedPointComparison { of_invariants, invariants_of })
}

/// Reynolds image of a single vector.
pub fn average(act: &GroupAction, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    let inv = Q::from_integer(BigInt::from(act.group().order())).recip();
    for g in 0..act.group().order() {
        for (i, x) in act.apply(g, v) {
            add_into(&mut out, i, &(x * &inv));
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::FreeGradedLie;
    use crate::qlinalg::q;

    #[test]
    fn symmetric_group_tables() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert_eq!(s3.name(0), "e");
        let t = s3.element_of_permutation(&[1, 0, 2]).unwrap();
        assert_eq!(s3.name(t), "(1 2)");
        assert_eq!(s3.mul(t, t), 0);
    }

    #[test]
    fn bad_tables_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroup::from_table(names, vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn sign_action_has_no_invariants() {
        let s2 = FiniteGroup::symmetric(2);
        let act = GroupAction::new(s2, vec![QMatrix::identity(1), QMatrix::from_i64(1, 1, &[-1])]).unwrap();
        assert!(invariants(&act).is_empty());
    }

    #[test]
    fn swap_invariant_is_sum() {
        let s2 = FiniteGroup::symmetric(2);
        let act = GroupAction::new(s2, vec![QMatrix::identity(2), permutation_matrix(&[1, 0])]).unwrap();
        let inv = invariants(&act);
        assert_eq!(inv, vec![[(0, q(1)), (1, q(1))].into_iter().collect::<SparseVec>()]);
        let p = act.reynolds();
        assert_eq!(p.mul(&p).unwrap(), p);
    }

    #[test]
    fn trivial_action_keeps_everything() {
        let act = GroupAction::trivial(FiniteGroup::symmetric(3), 4);
        assert_eq!(invariants(&act).len(), 4);
    }

    #[test]
    fn inconsistent_generator_images_rejected() {
        let s2 = FiniteGroup::symmetric(2);
        // an element of order 2 cannot act by a matrix of order 4
        let rot = QMatrix::from_i64(2, 2, &[0, -1, 1, 0]);
        assert!(GroupAction::from_generators(s2, 2, &[(1, rot)]).is_err());
    }

    #[test]
    fn swap_on_free_product_is_equivariant() {
        let lie = FreeGradedLie::new(&[("u1", 4), ("v1", 6), ("u2", 4), ("v2", 6)], 3).unwrap();
        let act = LieGroupAction::by_generator_permutation(
            &lie,
            FiniteGroup::symmetric(2),
            &[vec![0, 1, 2, 3], vec![2, 3, 0, 1]],
        )
        .unwrap();
        let l = LInftyAlgebra::from_free_lie(&lie, None, 2).unwrap();
        let full = act.full_action().unwrap();
        assert!(check_equivariance(&full, &l).unwrap().passed());
        // a sign flip on one generator only is not an automorphism of this bracket table
        let mut bad = full.matrices.clone();
        let i = l.space().index_of("u1").unwrap();
        let j = l.space().index_of("u2").unwrap();
        bad[1].set(j, i, q(-1));
        let corrupted = GroupAction { group: full.group.clone(), dim: full.dim, matrices: bad };
        assert!(!check_equivariance(&corrupted, &l).unwrap().passed());
    }
}
