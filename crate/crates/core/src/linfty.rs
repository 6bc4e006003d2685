//! Finite L∞-algebras: generalized Jacobi checks, Maurer-Cartan elements,
//! twisting, homotopy groups of MC spaces, and the BCH product.
//!
//! Grading is homological. `ℓ_k` has degree `k - 2`, MC elements live in
//! degree -1, and a Lie-model generator of degree `k` stands for a class in
//! `π_{k+1}`. Brackets are graded skew-symmetric: swapping adjacent inputs
//! `x, y` multiplies by `-(-1)^{|x||y|}`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freelie::{Derivation, Lie, LieTarget};
use crate::qlinalg::{
    add_into, axpy, homology_dims, ChainComplex, GradedVectorSpace, QMatrix, SparseVec, Q,
};

pub const DEFAULT_ARITY_CAP: usize = 3;

fn factorial(n: usize) -> Q {
    Q::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// Sorts a basis tuple into nondecreasing order, returning the skew-symmetry
/// sign, or `None` if the value is forced to vanish (a repeated even input).
pub fn sort_with_sign(tuple: &[usize], degree: impl Fn(usize) -> i64) -> Option<(Vec<usize>, bool)> {
    let mut t = tuple.to_vec();
    let mut negative = false;
    for i in 0..t.len() {
        for j in 0..t.len() - 1 - i {
            if t[j] > t[j + 1] {
                let odd_pair = (degree(t[j]) * degree(t[j + 1])).rem_euclid(2) == 1;
                // -(-1)^{|x||y|}
                if !odd_pair {
                    negative = !negative;
                }
                t.swap(j, j + 1);
            }
        }
    }
    for w in t.windows(2) {
        if w[0] == w[1] && degree(w[0]).rem_euclid(2) == 0 {
            return None;
        }
    }
    Some((t, negative))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInftyAlgebra {
    space: GradedVectorSpace,
    weights: Vec<usize>,
    arity_cap: usize,
    /// `brackets[k-1]`: sorted basis tuple -> value of `ℓ_k`.
    brackets: Vec<BTreeMap<Vec<usize>, SparseVec>>,
}

impl LInftyAlgebra {
    /// An algebra with all brackets zero. Every weight must be at least one.
    pub fn new(space: GradedVectorSpace, weights: Vec<usize>, arity_cap: usize) -> Result<Self> {
        if weights.len() != space.dim() {
            return Err(Error::Dimension("one filtration weight per basis element".into()));
        }
        if weights.iter().any(|w| *w == 0) {
            return Err(Error::InvalidStructure("filtration weights start at 1".into()));
        }
        if arity_cap == 0 {
            return Err(Error::InvalidStructure("arity cap must be positive".into()));
        }
        Ok(LInftyAlgebra { space, weights, arity_cap, brackets: vec![BTreeMap::new(); arity_cap] })
    }

    /// Abelian algebra: weight one everywhere, only `ℓ_1` may be nonzero.
    pub fn abelian(complex: &ChainComplex) -> Result<Self> {
        let space = complex.space().clone();
        let n = space.dim();
        let mut l = LInftyAlgebra::new(space, vec![1; n], 1)?;
        let d = complex.full_matrix();
        for (c, col) in d.columns().into_iter().enumerate() {
            if !col.is_empty() {
                l.set_bracket(&[c], col)?;
            }
        }
        Ok(l)
    }

    /// The truncated free Lie algebra as a DGL (`ℓ_1 = d`, `ℓ_2 = [,]`).
    pub fn from_free_lie(lie: &Lie, differential: Option<&Derivation>, arity_cap: usize) -> Result<Self> {
        let basis = lie.basis().to_vec();
        let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let space = GradedVectorSpace::new(
            basis.iter().map(|m| (lie.format_monomial(m), lie.monomial_degree(m))),
        )?;
        let weights = basis.iter().map(|m| m.weight()).collect();
        let mut l = LInftyAlgebra::new(space, weights, arity_cap.max(2))?;
        let to_vec = |e: &crate::freelie::LieElement| -> SparseVec {
            e.terms().iter().map(|(m, c)| (index[m], c.clone())).collect()
        };
        if let Some(d) = differential {
            if d.degree() != -1 || **d.source() != **lie {
                return Err(Error::InvalidStructure("differential must be a degree -1 derivation of this algebra".into()));
            }
            for (i, m) in basis.iter().enumerate() {
                let v = to_vec(&d.apply(&crate::freelie::monomial(lie, m.clone()))?);
                if !v.is_empty() {
                    l.set_bracket(&[i], v)?;
                }
            }
        }
        for i in 0..basis.len() {
            for j in i..basis.len() {
                if basis[i].weight() + basis[j].weight() > lie.weight_cap() {
                    continue;
                }
                let a = crate::freelie::monomial(lie, basis[i].clone());
                let b = crate::freelie::monomial(lie, basis[j].clone());
                let v = to_vec(&a.bracket(&b)?);
                if !v.is_empty() {
                    l.set_bracket(&[i, j], v)?;
                }
            }
        }
        Ok(l)
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn max_weight(&self) -> usize {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn arity_cap(&self) -> usize {
        self.arity_cap
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    /// Stored entries of `ℓ_k` (sorted tuples).
    pub fn entries(&self, k: usize) -> &BTreeMap<Vec<usize>, SparseVec> {
        &self.brackets[k - 1]
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().skip(1).all(|b| b.is_empty())
    }

    /// Sets `ℓ_k` on a basis tuple (any order); the value is stored for the
    /// sorted tuple with the skew-symmetry sign applied.
    pub fn set_bracket(&mut self, tuple: &[usize], value: SparseVec) -> Result<()> {
        let k = tuple.len();
        if k == 0 || k > self.arity_cap {
            return Err(Error::InvalidStructure(format!("arity {k} outside 1..={}", self.arity_cap)));
        }
        if tuple.iter().any(|i| *i >= self.dim()) || value.keys().any(|i| *i >= self.dim()) {
            return Err(Error::Dimension("basis index out of range".into()));
        }
        let Some((sorted, negative)) = sort_with_sign(tuple, |i| self.degree(i)) else {
            if value.is_empty() {
                return Ok(());
            }
            return Err(Error::InvalidStructure(format!(
                "ℓ_{k} must vanish on {tuple:?} by skew-symmetry"
            )));
        };
        let want = sorted.iter().map(|i| self.degree(*i)).sum::<i64>() + k as i64 - 2;
        if value.keys().any(|i| self.degree(*i) != want) {
            return Err(Error::WrongDegree { expected: want });
        }
        let w: usize = sorted.iter().map(|i| self.weights[*i]).sum();
        if value.keys().any(|i| self.weights[*i] < w) {
            return Err(Error::InvalidStructure(format!(
                "ℓ_{k} on {tuple:?} leaves filtration level {w}"
            )));
        }
        let value: SparseVec = if negative {
            value.into_iter().map(|(i, c)| (i, -c)).collect()
        } else {
            value
        };
        if value.is_empty() {
            self.brackets[k - 1].remove(&sorted);
        } else {
            self.brackets[k - 1].insert(sorted, value);
        }
        Ok(())
    }

    /// `ℓ_k` on a basis tuple.
    pub fn eval_basis(&self, tuple: &[usize]) -> SparseVec {
        let k = tuple.len();
        if k == 0 || k > self.arity_cap {
            return SparseVec::new();
        }
        match sort_with_sign(tuple, |i| self.degree(i)) {
            None => SparseVec::new(),
            Some((sorted, negative)) => match self.brackets[k - 1].get(&sorted) {
                None => SparseVec::new(),
                Some(v) if negative => v.iter().map(|(i, c)| (*i, -c.clone())).collect(),
                Some(v) => v.clone(),
            },
        }
    }

    /// `ℓ_k` on arbitrary vectors, by multilinear expansion.
    pub fn eval(&self, args: &[&SparseVec]) -> SparseVec {
        let k = args.len();
        let mut out = SparseVec::new();
        if k == 0 || k > self.arity_cap || self.brackets[k - 1].is_empty() {
            return out;
        }
        let mut idx = vec![0usize; k];
        let supports: Vec<Vec<(&usize, &Q)>> = args.iter().map(|a| a.iter().collect()).collect();
        if supports.iter().any(|s| s.is_empty()) {
            return out;
        }
        loop {
            let tuple: Vec<usize> = (0..k).map(|p| *supports[p][idx[p]].0).collect();
            let v = self.eval_basis(&tuple);
            if !v.is_empty() {
                let c = (0..k).fold(Q::one(), |acc, p| acc * supports[p][idx[p]].1);
                axpy(&mut out, &c, &v);
            }
            let mut p = k;
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < supports[p].len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    }

    /// The underlying complex `(L, ℓ_1)`.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let n = self.dim();
        let mut d = QMatrix::zeros(n, n);
        for (t, v) in &self.brackets[0] {
            for (r, c) in v {
                d.set(*r, t[0], c.clone());
            }
        }
        ChainComplex::from_map(self.space.clone(), &d)
    }

    /// Filtration level of a vector: the least weight in its support.
    pub fn filtration_level(&self, v: &SparseVec) -> usize {
        v.keys().map(|i| self.weights[*i]).min().unwrap_or(usize::MAX)
    }

    pub fn vector(&self, terms: &[(&str, Q)]) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (label, c) in terms {
            let i = self.space.index_of(label).ok_or_else(|| Error::UnknownBasis(label.to_string()))?;
            add_into(&mut v, i, c);
        }
        Ok(v)
    }
}

/// Nondecreasing tuples of basis indices of length `n` with total weight at most `cap`.
fn weighted_multisets(weights: &[usize], n: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(weights: &[usize], n: usize, cap: usize, start: usize, cur: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..weights.len() {
            if used + weights[i] > cap {
                continue;
            }
            cur.push(i);
            rec(weights, n, cap, i, cur, used + weights[i], out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, n, cap, 0, &mut Vec::new(), 0, &mut out);
    out
}

/// (i, n-i) unshuffles: the first `i` positions, the rest, in increasing order.
fn shuffles(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, i: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            let mut sigma = cur.clone();
            sigma.extend((0..n).filter(|p| !cur.contains(p)));
            out.push(sigma);
            return;
        }
        for p in start..n {
            cur.push(p);
            rec(n, i, p + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, i, 0, &mut Vec::new(), &mut out);
    out
}

/// χ(σ): permutation parity times the Koszul sign of reordering the inputs.
fn chi(sigma: &[usize], degrees: &[i64]) -> bool {
    let mut negative = false;
    for a in 0..sigma.len() {
        for b in a + 1..sigma.len() {
            if sigma[a] > sigma[b] {
                let odd_pair = (degrees[sigma[a]] * degrees[sigma[b]]).rem_euclid(2) == 1;
                if !odd_pair {
                    negative = !negative;
                }
            }
        }
    }
    negative
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub tuple: Vec<usize>,
    pub residual: SparseVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub arity: usize,
    pub tuples_checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Left side of the `n`-th generalized Jacobi identity on a basis tuple.
pub fn jacobiator(l: &LInftyAlgebra, tuple: &[usize]) -> SparseVec {
    let n = tuple.len();
    let degrees: Vec<i64> = tuple.iter().map(|i| l.degree(*i)).collect();
    let mut out = SparseVec::new();
    for i in 1..=n {
        let j = n + 1 - i;
        if i > l.arity_cap() || j > l.arity_cap() {
            continue;
        }
        if l.entries(i).is_empty() || l.entries(j).is_empty() {
            continue;
        }
        let outer_negative = (i * (j - 1)) % 2 == 1;
        for sigma in shuffles(n, i) {
            let inner_args: Vec<usize> = sigma[..i].iter().map(|p| tuple[*p]).collect();
            let inner = l.eval_basis(&inner_args);
            if inner.is_empty() {
                continue;
            }
            let rest: Vec<SparseVec> = sigma[i..]
                .iter()
                .map(|p| [(tuple[*p], Q::one())].into_iter().collect())
                .collect();
            let mut args: Vec<&SparseVec> = vec![&inner];
            args.extend(rest.iter());
            let v = l.eval(&args);
            let negative = chi(&sigma, &degrees) ^ outer_negative;
            let c = if negative { -Q::one() } else { Q::one() };
            axpy(&mut out, &c, &v);
        }
    }
    out
}

/// Evaluates the `n`-th generalized Jacobi identity on every basis multiset
/// whose total filtration weight does not exceed the top weight.
pub fn check_generalized_jacobi(l: &LInftyAlgebra, n: usize) -> JacobiReport {
    let tuples = weighted_multisets(l.weights(), n, l.max_weight());
    let mut violations = Vec::new();
    for t in &tuples {
        let r = jacobiator(l, t);
        if !r.is_empty() {
            violations.push(JacobiViolation { tuple: t.clone(), residual: r });
        }
    }
    JacobiReport { arity: n, tuples_checked: tuples.len(), violations }
}

/// The first failing tuple over identities of arity `1..=max_n`, if any.
pub fn first_jacobi_violation(l: &LInftyAlgebra, max_n: usize) -> Option<JacobiViolation> {
    for n in 1..=max_n {
        for t in weighted_multisets(l.weights(), n, l.max_weight()) {
            let r = jacobiator(l, &t);
            if !r.is_empty() {
                return Some(JacobiViolation { tuple: t, residual: r });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McVerdict {
    pub residual: SparseVec,
}

impl McVerdict {
    pub fn is_maurer_cartan(&self) -> bool {
        self.residual.is_empty()
    }
}

fn check_mc_degree(l: &LInftyAlgebra, z: &SparseVec) -> Result<()> {
    if z.keys().any(|i| *i >= l.dim()) {
        return Err(Error::Dimension("element index out of range".into()));
    }
    if z.keys().any(|i| l.degree(*i) != -1) {
        return Err(Error::WrongDegree { expected: -1 });
    }
    Ok(())
}

/// Curvature `Σ_k (1/k!) ℓ_k(z,…,z)`.
pub fn is_maurer_cartan(l: &LInftyAlgebra, z: &SparseVec) -> Result<McVerdict> {
    check_mc_degree(l, z)?;
    let mut residual = SparseVec::new();
    for k in 1..=l.arity_cap() {
        let args = vec![z; k];
        let v = l.eval(&args);
        axpy(&mut residual, &factorial(k).recip(), &v);
    }
    Ok(McVerdict { residual })
}

/// `ℓ^τ_k(x) = Σ_j (1/j!) ℓ_{k+j}(τ,…,τ,x)`.
pub fn twist(l: &LInftyAlgebra, tau: &SparseVec) -> Result<LInftyAlgebra> {
    if !is_maurer_cartan(l, tau)?.is_maurer_cartan() {
        return Err(Error::NotMaurerCartan);
    }
    let mut out = LInftyAlgebra::new(l.space.clone(), l.weights.clone(), l.arity_cap)?;
    let tau_level = l.filtration_level(tau);
    for k in 1..=l.arity_cap {
        for tuple in weighted_multisets(&l.weights, k, l.max_weight()) {
            let basis_args: Vec<SparseVec> =
                tuple.iter().map(|i| [(*i, Q::one())].into_iter().collect()).collect();
            let mut value = SparseVec::new();
            for j in 0..=(l.arity_cap - k) {
                if j > 0 {
                    let w: usize = tuple.iter().map(|i| l.weights[*i]).sum();
                    if tau.is_empty() || w + j * tau_level > l.max_weight() {
                        break;
                    }
                }
                let mut args: Vec<&SparseVec> = vec![tau; j];
                args.extend(basis_args.iter());
                let v = l.eval(&args);
                axpy(&mut value, &factorial(j).recip(), &v);
            }
            if !value.is_empty() {
                out.set_bracket(&tuple, value)?;
            }
        }
    }
    Ok(out)
}

/// Homology of `(L, ℓ^τ_1)` per degree, read as homotopy groups of `MC(L)` at `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyTable {
    /// degree k -> dim H_k(L^τ)
    pub homology: BTreeMap<i64, usize>,
}

impl HomotopyTable {
    /// `dim π_k(MC(L), τ) = dim H_{k-1}(L^τ)`.
    pub fn pi(&self, k: i64) -> usize {
        self.homology.get(&(k - 1)).copied().unwrap_or(0)
    }

    /// Nonzero homotopy groups as (k, dim π_k).
    pub fn nonzero_pi(&self) -> Vec<(i64, usize)> {
        self.homology.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (k + 1, *d)).collect()
    }
}

pub fn mc_homotopy_groups(l: &LInftyAlgebra, tau: &SparseVec) -> Result<HomotopyTable> {
    let twisted = if tau.is_empty() { l.clone() } else { twist(l, tau)? };
    let c = twisted.chain_complex()?;
    Ok(HomotopyTable { homology: homology_dims(&c) })
}

/// Dynkin's form of `log(e^X e^Y)` up to bracket length `class_cap`:
/// pairs of coefficient and right-nested word in `X` (false) and `Y` (true).
pub fn bch_dynkin_terms(class_cap: usize) -> Vec<(Q, Vec<bool>)> {
    let mut acc: BTreeMap<Vec<bool>, Q> = BTreeMap::new();
    // blocks (r_i, s_i) with r_i + s_i >= 1
    fn rec(
        remaining: usize,
        total: usize,
        blocks: &mut Vec<(usize, usize)>,
        acc: &mut BTreeMap<Vec<bool>, Q>,
    ) {
        if remaining == 0 {
            let k = blocks.len();
            let mut word = Vec::new();
            let mut denom = Q::from_integer(BigInt::from(total * k));
            for (r, s) in blocks.iter() {
                word.extend(std::iter::repeat(false).take(*r));
                word.extend(std::iter::repeat(true).take(*s));
                denom *= factorial(*r) * factorial(*s);
            }
            let mut c = denom.recip();
            if k % 2 == 0 {
                c = -c;
            }
            let e = acc.entry(word).or_insert_with(Q::zero);
            *e += c;
            return;
        }
        for len in 1..=remaining {
            for r in 0..=len {
                blocks.push((r, len - r));
                rec(remaining - len, total, blocks, acc);
                blocks.pop();
            }
        }
    }
    for m in 1..=class_cap {
        rec(m, m, &mut Vec::new(), &mut acc);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
}

fn right_nested<T: LieTarget>(
    word: &[bool],
    x: &T,
    y: &T,
    memo: &mut HashMap<Vec<bool>, T>,
) -> Result<T> {
    if let Some(v) = memo.get(word) {
        return Ok(v.clone());
    }
    let head = if word[0] { y } else { x };
    let v = if word.len() == 1 {
        head.clone()
    } else {
        head.bracket(&right_nested(&word[1..], x, y, memo)?)?
    };
    memo.insert(word.to_vec(), v.clone());
    Ok(v)
}

/// BCH product of two degree-0 elements of a Lie algebra that is nilpotent of
/// class at most `class_cap` on them: every bracket of length `class_cap + 1`
/// in `x` and `y` must vanish.
pub fn bch<T: LieTarget>(x: &T, y: &T, class_cap: usize) -> Result<T> {
    for e in [x, y] {
        if !e.is_zero() && e.degree() != Some(0) {
            return Err(Error::WrongDegree { expected: 0 });
        }
    }
    let mut memo = HashMap::new();
    let len = class_cap + 1;
    for bits in 0..(1u64 << len) {
        let word: Vec<bool> = (0..len).map(|i| bits >> i & 1 == 1).collect();
        if !right_nested(&word, x, y, &mut memo)?.is_zero() {
            return Err(Error::NotNilpotent(class_cap));
        }
    }
    let mut acc = x.scale(&Q::zero());
    for (c, word) in bch_dynkin_terms(class_cap) {
        acc = acc.add(&right_nested(&word, x, y, &mut memo)?.scale(&c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::{self, FreeGradedLie};
    use crate::qlinalg::{q, qr};

    fn e(i: usize) -> SparseVec {
        [(i, Q::one())].into_iter().collect()
    }

    #[test]
    fn sort_sign_rules() {
        let deg = |i: usize| [1i64, 2, 1][i];
        // odd, odd swap: +1
        assert_eq!(sort_with_sign(&[2, 0], deg), Some((vec![0, 2], false)));
        // odd, even swap: -1
        assert_eq!(sort_with_sign(&[1, 0], deg), Some((vec![0, 1], true)));
        assert_eq!(sort_with_sign(&[1, 1], deg), None);
        assert_eq!(sort_with_sign(&[0, 0], deg), Some((vec![0, 0], false)));
    }

    #[test]
    fn abelian_passes_everything() {
        let v = GradedVectorSpace::new([("a", 0), ("b", -1), ("c", 1)]).unwrap();
        let l = LInftyAlgebra::new(v, vec![1, 1, 1], 3).unwrap();
        for n in 1..=3 {
            assert!(check_generalized_jacobi(&l, n).passed());
        }
    }

    #[test]
    fn skew_violation_rejected() {
        let v = GradedVectorSpace::new([("a", 0), ("b", 0)]).unwrap();
        let mut l = LInftyAlgebra::new(v, vec![1, 2], 2).unwrap();
        assert!(l.set_bracket(&[0, 0], e(1)).is_err());
        // [a,b] = a would break the filtration
        assert!(l.set_bracket(&[0, 1], e(0)).is_err());
        l.set_bracket(&[1, 0], e(1)).unwrap_err();
    }

    #[test]
    fn dgl_corruption_is_reported() {
        let lie = FreeGradedLie::new(&[("x", 1), ("y", 2)], 3).unwrap();
        let mut l = LInftyAlgebra::from_free_lie(&lie, None, 3).unwrap();
        assert!(check_generalized_jacobi(&l, 3).passed());
        let x = l.space().index_of("x").unwrap();
        let y = l.space().index_of("y").unwrap();
        let v = l.eval_basis(&[x, y]);
        l.set_bracket(&[x, y], v.iter().map(|(i, c)| (*i, c * q(2))).collect()).unwrap();
        assert!(!check_generalized_jacobi(&l, 3).passed());
    }

    #[test]
    fn zero_is_mc_and_wrong_degree_errors() {
        let lie = FreeGradedLie::new(&[("x", -1)], 2).unwrap();
        let l = LInftyAlgebra::from_free_lie(&lie, None, 2).unwrap();
        assert!(is_maurer_cartan(&l, &SparseVec::new()).unwrap().is_maurer_cartan());
        let xx = l.space().index_of("[x,x]").unwrap();
        assert_eq!(is_maurer_cartan(&l, &e(xx)).unwrap_err(), Error::WrongDegree { expected: -1 });
    }

    #[test]
    fn curvature_of_non_cycle() {
        // L(x)/Γ³, |x| = -1, d x = c [x,x]; residual of z = x is (c + 1/2)[x,x]
        let lie = FreeGradedLie::new(&[("x", -1)], 2).unwrap();
        let x = freelie::generator(&lie, "x").unwrap();
        let xx = x.bracket(&x).unwrap();
        for c in [q(0), q(1), qr(-1, 2), qr(3, 7)] {
            let d = freelie::extend_derivation(&lie, -1, &[("x".into(), xx.scale(&c))]).unwrap();
            let l = LInftyAlgebra::from_free_lie(&lie, Some(&d), 2).unwrap();
            let ix = l.space().index_of("x").unwrap();
            let ixx = l.space().index_of("[x,x]").unwrap();
            let r = is_maurer_cartan(&l, &e(ix)).unwrap();
            let expected: SparseVec =
                [(ixx, c.clone() + qr(1, 2))].into_iter().filter(|(_, v)| !v.is_zero()).collect();
            assert_eq!(r.residual, expected);
        }
    }

    #[test]
    fn twist_requires_mc() {
        let lie = FreeGradedLie::new(&[("x", -1)], 2).unwrap();
        let l = LInftyAlgebra::from_free_lie(&lie, None, 2).unwrap();
        let ix = l.space().index_of("x").unwrap();
        assert_eq!(twist(&l, &e(ix)).unwrap_err(), Error::NotMaurerCartan);
        assert_eq!(twist(&l, &SparseVec::new()).unwrap(), l);
    }

    #[test]
    fn bch_units() {
        let lie = FreeGradedLie::new(&[("x", 0), ("y", 0)], 3).unwrap();
        let x = freelie::generator(&lie, "x").unwrap();
        let y = freelie::generator(&lie, "y").unwrap();
        let z = freelie::zero(&lie);
        assert_eq!(bch(&x, &z, 3).unwrap(), x);
        assert!(bch(&x, &x.neg(), 3).unwrap().is_zero());
        assert_eq!(bch(&x, &y, 2).unwrap_err(), Error::NotNilpotent(2));
        let odd = FreeGradedLie::new(&[("a", 1)], 3).unwrap();
        let a = freelie::generator(&odd, "a").unwrap();
        assert_eq!(bch(&a, &a, 3).unwrap_err(), Error::WrongDegree { expected: 0 });
    }

    #[test]
    fn bch_commuting_is_sum() {
        let lie = FreeGradedLie::new(&[("x", 0), ("y", 0)], 1).unwrap();
        let x = freelie::generator(&lie, "x").unwrap();
        let y = freelie::generator(&lie, "y").unwrap();
        assert_eq!(bch(&x, &y, 4).unwrap(), x.add(&y).unwrap());
    }

    #[test]
    fn dynkin_degree_two() {
        let terms = bch_dynkin_terms(2);
        let xy = terms.iter().find(|(_, w)| *w == vec![false, true]).map(|(c, _)| c.clone());
        let yx = terms.iter().find(|(_, w)| *w == vec![true, false]).map(|(c, _)| c.clone());
        // ½[X,Y] appears split between the words XY and YX
        assert_eq!(xy.unwrap() - yx.unwrap(), qr(1, 2));
    }
}
