//! Free graded Lie algebras over the rationals.
//!
//! Basis: standard bracketings of Lyndon words, plus the squares `[P(w),P(w)]`
//! of odd-degree Lyndon words `w`. Brackets are computed through the
//! commutator embedding into the tensor algebra and read back in the basis
//! by leading-word elimination: the expansion of a basis monomial has a
//! unique minimal word (the Lyndon word `w`, or `ww` for a square).
//!
//! Sign convention: swapping adjacent homogeneous symbols `a`, `b` costs
//! `(-1)^{|a||b|}`, so `[a,b] = ab - (-1)^{|a||b|} ba` in the tensor algebra.
//!
//! Every algebra carries a weight cap `W`: it is `L / Γ^{W+1} L`. Products
//! that would exceed the cap are dropped and the result is flagged truncated.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::{fmt_q, format_combination, Q};

pub const DEFAULT_WEIGHT_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// A canonical basis monomial, identified by its Lyndon word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    word: Vec<usize>,
    square: bool,
}

impl Monomial {
    pub fn letter(i: usize) -> Self {
        Monomial { word: vec![i], square: false }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn is_square(&self) -> bool {
        self.square
    }

    pub fn weight(&self) -> usize {
        if self.square {
            2 * self.word.len()
        } else {
            self.word.len()
        }
    }

    /// Minimal word of the tensor expansion.
    pub fn leading_word(&self) -> Vec<usize> {
        if self.square {
            let mut w = self.word.clone();
            w.extend_from_slice(&self.word);
            w
        } else {
            self.word.clone()
        }
    }

    /// Standard bracketing.
    pub fn tree(&self) -> BracketTree {
        if self.square {
            let inner = Monomial { word: self.word.clone(), square: false }.tree();
            return BracketTree::Node(Box::new(inner.clone()), Box::new(inner));
        }
        if self.word.len() == 1 {
            return BracketTree::Leaf(self.word[0]);
        }
        let (u, v) = standard_factorization(&self.word);
        BracketTree::Node(
            Box::new(Monomial { word: u.to_vec(), square: false }.tree()),
            Box::new(Monomial { word: v.to_vec(), square: false }.tree()),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.square.cmp(&other.square))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

pub fn is_lyndon(w: &[usize]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| w < &w[i..])
}

/// `w = uv` with `v` the longest proper suffix that is a Lyndon word.
pub fn standard_factorization(w: &[usize]) -> (&[usize], &[usize]) {
    assert!(w.len() >= 2);
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (&w[..i], &w[i..]);
        }
    }
    unreachable!("the last letter is always a Lyndon suffix")
}

/// All Lyndon words of length `<= max_len` over `k` letters (Duval), in lexicographic order.
pub fn lyndon_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w = vec![0usize];
    while !w.is_empty() {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// Tensor algebra element: word -> coefficient.
pub type TensorPoly = BTreeMap<Vec<usize>, Q>;

fn tensor_add(t: &mut TensorPoly, w: Vec<usize>, c: Q) {
    if c.is_zero() {
        return;
    }
    match t.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

type Terms = BTreeMap<Monomial, Q>;

pub struct FreeGradedLie {
    generators: Vec<Generator>,
    weight_cap: usize,
    index: HashMap<String, usize>,
    basis: OnceLock<Vec<Monomial>>,
    expansions: Mutex<HashMap<Monomial, Arc<TensorPoly>>>,
    brackets: Mutex<HashMap<(Monomial, Monomial), Arc<Terms>>>,
}

impl fmt::Debug for FreeGradedLie {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> =
            self.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        write!(f, "L({}; W={})", gens.join(", "), self.weight_cap)
    }
}

impl PartialEq for FreeGradedLie {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.weight_cap == other.weight_cap
    }
}

impl Eq for FreeGradedLie {}

pub type Lie = Arc<FreeGradedLie>;

impl FreeGradedLie {
    pub fn new<S: AsRef<str>>(generators: &[(S, i64)], weight_cap: usize) -> Result<Lie> {
        if weight_cap < 1 {
            return Err(Error::InvalidStructure("weight cap must be at least 1".into()));
        }
        let mut index = HashMap::new();
        let mut gens = Vec::new();
        for (i, (name, degree)) in generators.iter().enumerate() {
            let name = name.as_ref().to_string();
            if name.is_empty() {
                return Err(Error::InvalidStructure("empty generator name".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(name));
            }
            gens.push(Generator { name, degree: *degree });
        }
        Ok(Arc::new(FreeGradedLie {
            generators: gens,
            weight_cap,
            index,
            basis: OnceLock::new(),
            expansions: Mutex::new(HashMap::new()),
            brackets: Mutex::new(HashMap::new()),
        }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn weight_cap(&self) -> usize {
        self.weight_cap
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|i| self.generators[*i].degree).sum()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        let d = self.word_degree(&m.word);
        if m.square {
            2 * d
        } else {
            d
        }
    }

    /// All basis monomials up to the weight cap, sorted by weight then word.
    pub fn basis(&self) -> &[Monomial] {
        self.basis.get_or_init(|| {
            let mut out = Vec::new();
            for w in lyndon_words(self.generators.len(), self.weight_cap) {
                if 2 * w.len() <= self.weight_cap && self.word_degree(&w).rem_euclid(2) == 1 {
                    out.push(Monomial { word: w.clone(), square: true });
                }
                out.push(Monomial { word: w, square: false });
            }
            out.sort();
            out
        })
    }

    pub fn basis_in_degree(&self, degree: i64) -> Vec<Monomial> {
        self.basis().iter().filter(|m| self.monomial_degree(m) == degree).cloned().collect()
    }

    pub fn basis_with_weight(&self, weight: usize) -> Vec<Monomial> {
        self.basis().iter().filter(|m| m.weight() == weight).cloned().collect()
    }

    /// Dimension table keyed by (degree, weight).
    pub fn graded_dims(&self) -> BTreeMap<(i64, usize), usize> {
        let mut out = BTreeMap::new();
        for m in self.basis() {
            *out.entry((self.monomial_degree(m), m.weight())).or_insert(0) += 1;
        }
        out
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        self.format_tree(&m.tree())
    }

    pub fn format_tree(&self, t: &BracketTree) -> String {
        match t {
            BracketTree::Leaf(i) => self.generators[*i].name.clone(),
            BracketTree::Node(a, b) => format!("[{},{}]", self.format_tree(a), self.format_tree(b)),
        }
    }

    /// Commutator expansion of a basis monomial in the tensor algebra.
    pub fn expansion(&self, m: &Monomial) -> Arc<TensorPoly> {
        if let Some(e) = self.expansions.lock().unwrap().get(m) {
            return e.clone();
        }
        let e = match m.tree() {
            BracketTree::Leaf(i) => {
                let mut t = TensorPoly::new();
                t.insert(vec![i], Q::one());
                t
            }
            BracketTree::Node(..) => {
                let (a, b) = if m.square {
                    let w = Monomial { word: m.word.clone(), square: false };
                    (w.clone(), w)
                } else {
                    let (u, v) = standard_factorization(&m.word);
                    (
                        Monomial { word: u.to_vec(), square: false },
                        Monomial { word: v.to_vec(), square: false },
                    )
                };
                self.commutator(&self.expansion(&a), &self.expansion(&b))
            }
        };
        let e = Arc::new(e);
        self.expansions.lock().unwrap().insert(m.clone(), e.clone());
        e
    }

    /// Graded commutator in the tensor algebra.
    pub fn commutator(&self, p: &TensorPoly, q: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::new();
        for (a, ca) in p {
            let da = self.word_degree(a);
            for (b, cb) in q {
                let db = self.word_degree(b);
                let c = ca * cb;
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                let mut ba = b.clone();
                ba.extend_from_slice(a);
                tensor_add(&mut out, ab, c.clone());
                if (da * db).rem_euclid(2) == 1 {
                    tensor_add(&mut out, ba, c);
                } else {
                    tensor_add(&mut out, ba, -c);
                }
            }
        }
        out
    }

    /// Reads a tensor polynomial that lies in the image of the Lie algebra back
    /// in the canonical basis.
    pub fn reduce_tensor(&self, t: &TensorPoly) -> Result<BTreeMap<Monomial, Q>> {
        let mut rest = t.clone();
        let mut out = Terms::new();
        while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let m = self.monomial_with_leading_word(&w).ok_or_else(|| {
                Error::InvalidStructure(format!("tensor word {w:?} is not a leading word"))
            })?;
            let e = self.expansion(&m);
            let lead = e.get(&w).cloned().expect("leading word present in expansion");
            let f = c / lead;
            for (word, x) in e.iter() {
                tensor_add(&mut rest, word.clone(), -(&f * x));
            }
            out.insert(m, f);
        }
        Ok(out)
    }

    fn monomial_with_leading_word(&self, w: &[usize]) -> Option<Monomial> {
        if is_lyndon(w) {
            return Some(Monomial { word: w.to_vec(), square: false });
        }
        if w.len() % 2 == 0 {
            let (a, b) = w.split_at(w.len() / 2);
            if a == b && is_lyndon(a) && self.word_degree(a).rem_euclid(2) == 1 {
                return Some(Monomial { word: a.to_vec(), square: true });
            }
        }
        None
    }

    /// Bracket of two basis monomials; `None` when the weight cap is exceeded.
    fn bracket_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Arc<Terms>> {
        if a.weight() + b.weight() > self.weight_cap {
            return None;
        }
        let key = (a.clone(), b.clone());
        if let Some(t) = self.brackets.lock().unwrap().get(&key) {
            return Some(t.clone());
        }
        let t = self.commutator(&self.expansion(a), &self.expansion(b));
        let terms = Arc::new(self.reduce_tensor(&t).expect("brackets of Lie elements are Lie"));
        self.brackets.lock().unwrap().insert(key, terms.clone());
        Some(terms)
    }
}

pub fn zero(owner: &Lie) -> LieElement {
    LieElement { owner: owner.clone(), terms: Terms::new(), truncated: false }
}

pub fn generator(owner: &Lie, name: &str) -> Result<LieElement> {
    let i = owner.generator_index(name)?;
    Ok(monomial(owner, Monomial::letter(i)))
}

pub fn monomial(owner: &Lie, m: Monomial) -> LieElement {
    let mut terms = Terms::new();
    if m.weight() <= owner.weight_cap() {
        terms.insert(m, Q::one());
    }
    LieElement { owner: owner.clone(), terms, truncated: false }
}

#[derive(Clone)]
pub struct LieElement {
    owner: Lie,
    terms: Terms,
    truncated: bool,
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        *self.owner == *other.owner && self.terms == other.terms
    }
}

impl Eq for LieElement {}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_combination(
            self.terms.iter().map(|(m, c)| (c.clone(), self.owner.format_monomial(m))),
        );
        write!(f, "{s}")
    }
}

impl LieElement {
    pub fn from_terms(owner: &Lie, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut out = zero(owner);
        for (m, c) in terms {
            if m.weight() > owner.weight_cap() {
                out.truncated = true;
                continue;
            }
            out.add_term(m, &c);
        }
        out
    }

    pub fn owner(&self) -> &Lie {
        &self.owner
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if some bracket feeding this element exceeded the weight cap.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, m: Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Degree if homogeneous; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| self.owner.monomial_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    pub fn min_weight(&self) -> usize {
        self.terms.keys().map(|m| m.weight()).min().unwrap_or(0)
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: i64) -> LieElement {
        LieElement {
            owner: self.owner.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.owner.monomial_degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            truncated: self.truncated,
        }
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        self.check_owner(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out.truncated |= other.truncated;
        Ok(out)
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> LieElement {
        let mut out = zero(&self.owner);
        out.truncated = self.truncated;
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        out
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&-Q::one())
    }

    fn check_owner(&self, other: &LieElement) -> Result<()> {
        if Arc::ptr_eq(&self.owner, &other.owner) || *self.owner == *other.owner {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        self.check_owner(other)?;
        let mut out = zero(&self.owner);
        out.truncated = self.truncated || other.truncated;
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                match self.owner.bracket_monomials(a, b) {
                    None => out.truncated = true,
                    Some(t) => {
                        let f = ca * cb;
                        for (m, c) in t.iter() {
                            out.add_term(m.clone(), &(&f * c));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutator expansion in the tensor algebra.
    pub fn to_tensor(&self) -> TensorPoly {
        let mut out = TensorPoly::new();
        for (m, c) in &self.terms {
            for (w, x) in self.owner.expansion(m).iter() {
                tensor_add(&mut out, w.clone(), c * x);
            }
        }
        out
    }
}

/// Unreduced bracket expression over named generators.
#[derive(Clone, Debug, PartialEq)]
pub enum LieExpr {
    Gen(String),
    Scale(Q, Box<LieExpr>),
    Sum(Vec<LieExpr>),
    Bracket(Box<LieExpr>, Box<LieExpr>),
}

impl LieExpr {
    pub fn gen(name: &str) -> Self {
        LieExpr::Gen(name.into())
    }

    pub fn br(a: LieExpr, b: LieExpr) -> Self {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn scaled(c: Q, e: LieExpr) -> Self {
        LieExpr::Scale(c, Box::new(e))
    }
}

impl fmt::Display for LieExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieExpr::Gen(n) => write!(f, "{n}"),
            LieExpr::Scale(c, e) => write!(f, "{}*({})", fmt_q(c), e),
            LieExpr::Sum(v) => {
                let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            LieExpr::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Evaluates a raw bracket expression into canonical form.
pub fn canonical_form(owner: &Lie, e: &LieExpr) -> Result<LieElement> {
    match e {
        LieExpr::Gen(n) => generator(owner, n),
        LieExpr::Scale(c, inner) => Ok(canonical_form(owner, inner)?.scale(c)),
        LieExpr::Sum(parts) => {
            let mut acc = zero(owner);
            for p in parts {
                acc = acc.add(&canonical_form(owner, p)?)?;
            }
            Ok(acc)
        }
        LieExpr::Bracket(a, b) => canonical_form(owner, a)?.bracket(&canonical_form(owner, b)?),
    }
}

/// Free product of free algebras: free on the tagged disjoint union of generators.
/// The weight cap of the result is the largest input cap.
pub fn free_product(parts: &[&Lie], tags: &[&str]) -> Result<Lie> {
    if parts.len() != tags.len() {
        return Err(Error::Dimension("one tag per factor required".into()));
    }
    let cap = parts.iter().map(|l| l.weight_cap()).max().unwrap_or(DEFAULT_WEIGHT_CAP);
    free_product_with_cap(parts, tags, cap)
}

pub fn free_product_with_cap(parts: &[&Lie], tags: &[&str], weight_cap: usize) -> Result<Lie> {
    let mut gens: Vec<(String, i64)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (l, tag) in parts.iter().zip(tags) {
        for g in l.generators() {
            let name = format!("{}{}", g.name, tag);
            if !seen.insert(name.clone()) {
                return Err(Error::NameCollision(name));
            }
            gens.push((name, g.degree));
        }
    }
    FreeGradedLie::new(&gens, weight_cap)
}

/// The quotient by the `(N+1)`-st term of the lower central series.
pub fn lcs_quotient(l: &Lie, class: usize) -> Result<Lie> {
    let gens: Vec<(String, i64)> =
        l.generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
    FreeGradedLie::new(&gens, class)
}

/// Target of a Lie morphism out of a free algebra.
pub trait LieTarget: Clone {
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &Q) -> Self;
    fn bracket(&self, other: &Self) -> Result<Self>;
    fn degree(&self) -> Option<i64>;
    fn is_zero(&self) -> bool;
}

impl LieTarget for LieElement {
    fn add(&self, other: &Self) -> Result<Self> {
        LieElement::add(self, other)
    }
    fn scale(&self, c: &Q) -> Self {
        LieElement::scale(self, c)
    }
    fn bracket(&self, other: &Self) -> Result<Self> {
        LieElement::bracket(self, other)
    }
    fn degree(&self) -> Option<i64> {
        LieElement::degree(self)
    }
    fn is_zero(&self) -> bool {
        LieElement::is_zero(self)
    }
}

/// A Lie morphism out of a free algebra, determined by generator images.
#[derive(Clone, Debug)]
pub struct LieMorphism<T: LieTarget> {
    source: Lie,
    images: Vec<T>,
    zero: T,
}

/// Extends generator images to a Lie morphism. Generators without an image go to zero.
pub fn extend_morphism<T: LieTarget>(
    source: &Lie,
    images: &[(String, T)],
    target_zero: T,
) -> Result<LieMorphism<T>> {
    let mut imgs = vec![target_zero.clone(); source.generators().len()];
    let mut bad = Vec::new();
    for (name, img) in images {
        let i = source.generator_index(name)?;
        let d = source.generators()[i].degree;
        if !img.is_zero() && img.degree() != Some(d) {
            bad.push(format!(
                "{name} (degree {d}, image degree {})",
                img.degree().map_or("mixed".to_string(), |x| x.to_string())
            ));
        }
        imgs[i] = img.clone();
    }
    if !bad.is_empty() {
        return Err(Error::DegreeMismatch(bad.join(", ")));
    }
    Ok(LieMorphism { source: source.clone(), images: imgs, zero: target_zero })
}

impl<T: LieTarget> LieMorphism<T> {
    pub fn source(&self) -> &Lie {
        &self.source
    }

    pub fn image_of_generator(&self, i: usize) -> &T {
        &self.images[i]
    }

    pub fn apply(&self, e: &LieElement) -> Result<T> {
        if **e.owner() != *self.source {
            return Err(Error::OwnerMismatch);
        }
        let mut memo = HashMap::new();
        let mut acc = self.zero.clone();
        for (m, c) in e.terms() {
            let img = self.apply_tree(&m.tree(), &mut memo)?;
            acc = acc.add(&img.scale(c))?;
        }
        Ok(acc)
    }

    fn apply_tree(&self, t: &BracketTree, memo: &mut HashMap<String, T>) -> Result<T> {
        match t {
            BracketTree::Leaf(i) => Ok(self.images[*i].clone()),
            BracketTree::Node(a, b) => {
                let key = self.source.format_tree(t);
                if let Some(v) = memo.get(&key) {
                    return Ok(v.clone());
                }
                let v = self.apply_tree(a, memo)?.bracket(&self.apply_tree(b, memo)?)?;
                memo.insert(key, v.clone());
                Ok(v)
            }
        }
    }
}

/// A derivation of a free algebra of the given degree, determined on generators:
/// `D[a,b] = [Da,b] + (-1)^{deg(D)|a|} [a,Db]`.
#[derive(Clone, Debug)]
pub struct Derivation {
    source: Lie,
    degree: i64,
    images: Vec<LieElement>,
}

pub fn extend_derivation(
    source: &Lie,
    degree: i64,
    images: &[(String, LieElement)],
) -> Result<Derivation> {
    let mut imgs = vec![zero(source); source.generators().len()];
    let mut bad = Vec::new();
    for (name, img) in images {
        let i = source.generator_index(name)?;
        if **img.owner() != **source {
            return Err(Error::OwnerMismatch);
        }
        let want = source.generators()[i].degree + degree;
        if !img.is_zero() && img.degree() != Some(want) {
            bad.push(format!("{name} (image must have degree {want})"));
        }
        imgs[i] = img.clone();
    }
    if !bad.is_empty() {
        return Err(Error::DegreeMismatch(bad.join(", ")));
    }
    Ok(Derivation { source: source.clone(), degree, images: imgs })
}

impl Derivation {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn source(&self) -> &Lie {
        &self.source
    }

    pub fn image_of_generator(&self, i: usize) -> &LieElement {
        &self.images[i]
    }

    pub fn apply(&self, e: &LieElement) -> Result<LieElement> {
        let mut acc = zero(&self.source);
        for (m, c) in e.terms() {
            acc = acc.add(&self.apply_tree(&m.tree())?.scale(c))?;
        }
        Ok(acc)
    }

    fn tree_element(&self, t: &BracketTree) -> Result<LieElement> {
        match t {
            BracketTree::Leaf(i) => Ok(monomial(&self.source, Monomial::letter(*i))),
            BracketTree::Node(a, b) => self.tree_element(a)?.bracket(&self.tree_element(b)?),
        }
    }

    fn tree_degree(&self, t: &BracketTree) -> i64 {
        match t {
            BracketTree::Leaf(i) => self.source.generators()[*i].degree,
            BracketTree::Node(a, b) => self.tree_degree(a) + self.tree_degree(b),
        }
    }

    fn apply_tree(&self, t: &BracketTree) -> Result<LieElement> {
        match t {
            BracketTree::Leaf(i) => Ok(self.images[*i].clone()),
            BracketTree::Node(a, b) => {
                let first = self.apply_tree(a)?.bracket(&self.tree_element(b)?)?;
                let second = self.tree_element(a)?.bracket(&self.apply_tree(b)?)?;
                let sign = if (self.degree * self.tree_degree(a)).rem_euclid(2) == 1 {
                    -Q::one()
                } else {
                    Q::one()
                };
                first.add(&second.scale(&sign))
            }
        }
    }
}
