//! Exact rational linear algebra and homology of finite chain complexes.
//!
//! Matrices are stored as sparse triplets with every stored entry nonzero.
//! Elimination always pivots on the lowest available column and, within it,
//! the first available row, so every basis returned here is reproducible.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// Sparse vector: index -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^e` as a rational.
pub fn sign_q(negative: bool) -> Q {
    if negative {
        -Q::one()
    } else {
        Q::one()
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn add_into(target: &mut SparseVec, idx: usize, c: &Q) {
    if c.is_zero() {
        return;
    }
    let entry = target.entry(idx).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        target.remove(&idx);
    }
}

pub fn axpy(target: &mut SparseVec, c: &Q, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, x) in v {
        add_into(target, *i, &(c * x));
    }
}

pub fn dense_to_sparse(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_q(&self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Q::one());
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Q>]) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("expected {rows}x{cols} dense data")));
        }
        let mut m = Self::zeros(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, q(data[r * cols + c]));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col {
                assert!(*r < rows, "column entry out of range");
                m.set(*r, c, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, x: &Q) {
        let v = self.get(r, c) + x;
        self.set(r, c, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Q)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.entries
            .range((0, 0)..)
            .filter(|((_, cc), _)| *cc == c)
            .map(|((r, _), x)| (*r, x.clone()))
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.cols];
        for ((r, c), x) in &self.entries {
            cols[*c].insert(*r, x.clone());
        }
        cols
    }

    pub fn row_vecs(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for ((r, c), x) in &self.entries {
            rows[*r].insert(*c, x.clone());
        }
        rows
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for ((r, c), x) in &self.entries {
            t.entries.insert((*c, *r), x.clone());
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.row_vecs();
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for ((r, k), x) in &self.entries {
            for (c, y) in &other_rows[*k] {
                out.add_at(*r, *c, &(x * y));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((r, c), x) in &self.entries {
            if let Some(y) = v.get(c) {
                add_into(&mut out, *r, &(x * y));
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix sum shape mismatch".into()));
        }
        let mut out = self.clone();
        for ((r, c), x) in &other.entries {
            out.add_at(*r, *c, x);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for ((r, c), x) in &self.entries {
            out.set(*r, *c, x * s);
        }
        out
    }

    /// Restricts to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let rmap: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let cmap: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut out = QMatrix::zeros(rows.len(), cols.len());
        for ((r, c), x) in &self.entries {
            if let (Some(rr), Some(cc)) = (rmap.get(r), cmap.get(c)) {
                out.set(*rr, *cc, x.clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        Echelon::of_rows(self.cols, self.row_vecs()).pivots.len()
    }
}

/// Reduced row echelon form of a list of sparse rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub width: usize,
    /// Reduced nonzero rows, pivot entry equal to one.
    pub rows: Vec<SparseVec>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn of_rows(width: usize, rows: Vec<SparseVec>) -> Self {
        let mut pending: Vec<SparseVec> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let mut reduced: Vec<(usize, SparseVec)> = Vec::new();
        loop {
            // lowest leading column among pending rows; first such row wins
            let mut best: Option<(usize, usize)> = None;
            for (i, r) in pending.iter().enumerate() {
                if let Some((&c, _)) = r.iter().next() {
                    if best.map_or(true, |(bc, _)| c < bc) {
                        best = Some((c, i));
                    }
                }
            }
            let Some((col, idx)) = best else { break };
            let mut pivot_row = pending.swap_remove(idx);
            let inv = pivot_row[&col].recip();
            for x in pivot_row.values_mut() {
                *x *= &inv;
            }
            for r in pending.iter_mut() {
                if let Some(f) = r.get(&col).cloned() {
                    axpy(r, &(-f), &pivot_row);
                }
            }
            pending.retain(|r| !r.is_empty());
            for (_, r) in reduced.iter_mut() {
                if let Some(f) = r.get(&col).cloned() {
                    axpy(r, &(-f), &pivot_row);
                }
            }
            reduced.push((col, pivot_row));
        }
        reduced.sort_by_key(|(c, _)| *c);
        let pivots = reduced.iter().map(|(c, _)| *c).collect();
        let rows = reduced.into_iter().map(|(_, r)| r).collect();
        Echelon { width, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the echelon rows; zero iff `v` lies in their span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (p, r) in self.pivots.iter().zip(&self.rows) {
            if let Some(f) = out.get(p).cloned() {
                axpy(&mut out, &(-f), r);
            }
        }
        out
    }

    /// Null space basis of the row space, one vector per free column.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let pivot_set: BTreeMap<usize, usize> =
            self.pivots.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut basis = Vec::new();
        for free in 0..self.width {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(free, Q::one());
            for (p, r) in self.pivots.iter().zip(&self.rows) {
                if let Some(x) = r.get(&free) {
                    v.insert(*p, -x.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[derive(Clone, Debug)]
pub struct KernelImage {
    /// Basis of the kernel, vectors of length `cols`.
    pub kernel: Vec<SparseVec>,
    /// Basis of the image, vectors of length `rows`: the pivot columns of the matrix.
    pub image: Vec<SparseVec>,
}

pub fn kernel_image(m: &QMatrix) -> KernelImage {
    let ech = Echelon::of_rows(m.cols(), m.row_vecs());
    let kernel = ech.null_space();
    let cols = m.columns();
    let image = ech.pivots.iter().map(|p| cols[*p].clone()).collect();
    KernelImage { kernel, image }
}

/// Rank of a family of vectors.
pub fn span_rank(width: usize, vectors: &[SparseVec]) -> usize {
    Echelon::of_rows(width, vectors.to_vec()).rank()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in order.
pub fn independent_subset(width: usize, vectors: &[SparseVec]) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut acc: Vec<SparseVec> = Vec::new();
    let mut ech = Echelon::of_rows(width, Vec::new());
    for (i, v) in vectors.iter().enumerate() {
        if ech.reduce(v).is_empty() {
            continue;
        }
        acc.push(v.clone());
        ech = Echelon::of_rows(width, acc.clone());
        chosen.push(i);
    }
    chosen
}

/// Solves `m x = b`; `None` when inconsistent. Free variables are set to zero.
pub fn solve(m: &QMatrix, b: &SparseVec) -> Option<SparseVec> {
    // augment columns with b as the last column
    let width = m.cols() + 1;
    let mut rows = m.row_vecs();
    for (r, x) in b {
        if *r >= rows.len() {
            return None;
        }
        rows[*r].insert(m.cols(), x.clone());
    }
    let ech = Echelon::of_rows(width, rows);
    if ech.pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = SparseVec::new();
    for (p, r) in ech.pivots.iter().zip(&ech.rows) {
        if let Some(v) = r.get(&m.cols()) {
            x.insert(*p, v.clone());
        }
    }
    Some(x)
}

/// Coordinates of `v` in terms of an independent family `basis`.
pub fn coordinates(width: usize, basis: &[SparseVec], v: &SparseVec) -> Option<SparseVec> {
    let m = QMatrix::from_columns(width, basis);
    let x = solve(&m, v)?;
    // free variables only exist if the family is dependent
    debug_assert!(m.apply(&x) == *v);
    Some(x)
}

/// Scales a vector so that its first nonzero entry is one.
pub fn normalize_leading(v: &SparseVec) -> SparseVec {
    match v.values().next() {
        None => SparseVec::new(),
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|(i, x)| (*i, x * &inv)).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVectorSpace {
    basis: Vec<BasisElement>,
}

impl GradedVectorSpace {
    pub fn new<S: Into<String>>(basis: impl IntoIterator<Item = (S, i64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (label, degree) in basis {
            let label = label.into();
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            out.push(BasisElement { label, degree });
        }
        Ok(GradedVectorSpace { basis: out })
    }

    pub fn zero() -> Self {
        GradedVectorSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Sorted list of degrees that occur.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.basis.iter().map(|b| b.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn indices_in_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.basis.len()).filter(|i| self.basis[*i].degree == degree).collect()
    }

    pub fn dim_in_degree(&self, degree: i64) -> usize {
        self.basis.iter().filter(|b| b.degree == degree).count()
    }

    /// Degree of a vector if it is homogeneous; `None` for zero or mixed vectors.
    pub fn homogeneous_degree(&self, v: &SparseVec) -> Option<i64> {
        let mut it = v.keys().map(|i| self.degree(*i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn format_vector(&self, v: &SparseVec) -> String {
        format_combination(v.iter().map(|(i, c)| (c.clone(), self.label(*i).to_string())))
    }
}

/// Renders `c1 a + c2 b - ...` with unit coefficients omitted.
pub fn format_combination(terms: impl IntoIterator<Item = (Q, String)>) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs.is_one() {
            out.push_str(&name);
        } else {
            out.push_str(&format!("{}*{}", fmt_q(&abs), name));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// A finite chain complex: `blocks[k]` is the differential `C_k -> C_{k-1}`
/// written in the local bases of the two degrees.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    space: GradedVectorSpace,
    blocks: BTreeMap<i64, QMatrix>,
}

impl ChainComplex {
    pub fn new(space: GradedVectorSpace, blocks: BTreeMap<i64, QMatrix>) -> Result<Self> {
        for (k, m) in &blocks {
            let (r, c) = (space.dim_in_degree(k - 1), space.dim_in_degree(*k));
            if m.rows() != r || m.cols() != c {
                return Err(Error::Dimension(format!(
                    "differential out of degree {k} must be {r}x{c}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let blocks = blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        let c = ChainComplex { space, blocks };
        for k in c.blocks.keys() {
            if let Some(lower) = c.blocks.get(&(k - 1)) {
                let sq = lower.mul(&c.blocks[k])?;
                if !sq.is_zero() {
                    return Err(Error::NotSquareZero(*k));
                }
            }
        }
        Ok(c)
    }

    /// Builds a complex from a differential given on the whole space.
    pub fn from_map(space: GradedVectorSpace, d: &QMatrix) -> Result<Self> {
        if d.rows() != space.dim() || d.cols() != space.dim() {
            return Err(Error::Dimension("differential must be square on the space".into()));
        }
        for ((r, c), _) in d.entries() {
            if space.degree(*r) != space.degree(*c) - 1 {
                return Err(Error::BadDifferentialDegree { row: *r, col: *c });
            }
        }
        let mut blocks = BTreeMap::new();
        for k in space.degrees() {
            let cols = space.indices_in_degree(k);
            let rows = space.indices_in_degree(k - 1);
            blocks.insert(k, d.submatrix(&rows, &cols));
        }
        ChainComplex::new(space, blocks)
    }

    pub fn zero_differential(space: GradedVectorSpace) -> Self {
        ChainComplex { space, blocks: BTreeMap::new() }
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    /// The differential out of degree `k`, in local coordinates.
    pub fn differential(&self, k: i64) -> QMatrix {
        self.blocks.get(&k).cloned().unwrap_or_else(|| {
            QMatrix::zeros(self.space.dim_in_degree(k - 1), self.space.dim_in_degree(k))
        })
    }

    /// The differential as a single matrix on the whole space.
    pub fn full_matrix(&self) -> QMatrix {
        let n = self.space.dim();
        let mut m = QMatrix::zeros(n, n);
        for (k, b) in &self.blocks {
            let cols = self.space.indices_in_degree(*k);
            let rows = self.space.indices_in_degree(k - 1);
            for ((r, c), x) in b.entries() {
                m.set(rows[*r], cols[*c], x.clone());
            }
        }
        m
    }
}

/// Cycles, boundaries and chosen homology representatives in one degree,
/// all in the local coordinates of that degree.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub degree: i64,
    pub dim_chains: usize,
    pub cycles: Vec<SparseVec>,
    pub boundaries: Vec<SparseVec>,
    /// Cycles completing a boundary basis to a cycle basis.
    pub representatives: Vec<SparseVec>,
}

impl HomologyData {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of a cycle's class on the representatives.
    pub fn class_of(&self, cycle: &SparseVec) -> Option<SparseVec> {
        let mut basis = self.boundaries.clone();
        basis.extend(self.representatives.iter().cloned());
        let coords = coordinates(self.dim_chains, &basis, cycle)?;
        let nb = self.boundaries.len();
        Some(coords.into_iter().filter(|(i, _)| *i >= nb).map(|(i, c)| (i - nb, c)).collect())
    }
}

pub fn homology_data(c: &ChainComplex, degree: i64) -> HomologyData {
    let n = c.space().dim_in_degree(degree);
    let cycles = kernel_image(&c.differential(degree)).kernel;
    let boundaries = kernel_image(&c.differential(degree + 1)).image;
    let mut family = boundaries.clone();
    family.extend(cycles.iter().cloned());
    let picked = independent_subset(n, &family);
    let representatives = picked
        .into_iter()
        .filter(|i| *i >= boundaries.len())
        .map(|i| family[i].clone())
        .collect();
    HomologyData { degree, dim_chains: n, cycles, boundaries, representatives }
}

/// A basis of `ker d / im d` in the given degree, labelled by representatives.
pub fn homology(c: &ChainComplex, degree: i64) -> GradedVectorSpace {
    let data = homology_data(c, degree);
    let idx = c.space().indices_in_degree(degree);
    let labels: Vec<(String, i64)> = data
        .representatives
        .iter()
        .map(|r| {
            let global: SparseVec = r.iter().map(|(i, x)| (idx[*i], x.clone())).collect();
            (format!("[{}]", c.space().format_vector(&global)), degree)
        })
        .collect();
    GradedVectorSpace::new(labels).expect("representatives are distinct vectors")
}

/// Homology dimensions in every degree where the complex has chains.
pub fn homology_dims(c: &ChainComplex) -> BTreeMap<i64, usize> {
    c.space()
        .degrees()
        .into_iter()
        .map(|k| {
            let z = c.space().dim_in_degree(k) - c.differential(k).rank();
            let b = c.differential(k + 1).rank();
            (k, z - b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|(i, c)| (*i, q(*c))).collect()
    }

    #[test]
    fn zero_and_identity_kernel_image() {
        let z = kernel_image(&QMatrix::zeros(2, 2));
        assert_eq!((z.kernel.len(), z.image.len()), (2, 0));
        let id = kernel_image(&QMatrix::identity(3));
        assert_eq!((id.kernel.len(), id.image.len()), (0, 3));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = QMatrix::from_i64(2, 4, &[1, 2, 3, 4, 2, 4, 6, 9]);
        let ki = kernel_image(&m);
        assert_eq!(ki.kernel.len() + ki.image.len(), 4);
        for v in &ki.kernel {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(solve(&m, &sv(&[(0, 1), (1, 2)])).is_none());
        let x = solve(&m, &sv(&[(0, 3), (1, 3)])).unwrap();
        assert_eq!(m.apply(&x), sv(&[(0, 3), (1, 3)]));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(
            GradedVectorSpace::new([("a", 0), ("a", 1)]),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn zero_differential_homology() {
        let v = GradedVectorSpace::new([("a", 4), ("b", 4)]).unwrap();
        let c = ChainComplex::zero_differential(v);
        assert_eq!(homology(&c, 4).dim(), 2);
        assert_eq!(homology(&c, 3).dim(), 0);
        assert_eq!(homology(&c, 100).dim(), 0);
    }

    #[test]
    fn acyclic_two_term() {
        let v = GradedVectorSpace::new([("e", 1), ("f", 0)]).unwrap();
        let mut d = QMatrix::zeros(2, 2);
        d.set(1, 0, q(1));
        let c = ChainComplex::from_map(v, &d).unwrap();
        assert!(homology_dims(&c).values().all(|d| *d == 0));
    }

    #[test]
    fn rejects_non_square_zero() {
        let v = GradedVectorSpace::new([("a", 2), ("b", 1), ("c", 0)]).unwrap();
        let mut d = QMatrix::zeros(3, 3);
        d.set(1, 0, q(1));
        d.set(2, 1, q(1));
        assert_eq!(ChainComplex::from_map(v, &d).unwrap_err(), Error::NotSquareZero(2));
    }

    #[test]
    fn rejects_wrong_degree() {
        let v = GradedVectorSpace::new([("a", 2), ("b", 0)]).unwrap();
        let mut d = QMatrix::zeros(2, 2);
        d.set(1, 0, q(1));
        assert!(matches!(
            ChainComplex::from_map(v, &d),
            Err(Error::BadDifferentialDegree { .. })
        ));
    }

    #[test]
    fn homology_class_coordinates() {
        // C_1 = <e1, e2>, C_0 = <f>, d e1 = f, d e2 = f
        let v = GradedVectorSpace::new([("e1", 1), ("e2", 1), ("f", 0)]).unwrap();
        let mut d = QMatrix::zeros(3, 3);
        d.set(2, 0, q(1));
        d.set(2, 1, q(1));
        let c = ChainComplex::from_map(v, &d).unwrap();
        let h1 = homology_data(&c, 1);
        assert_eq!(h1.dim(), 1);
        let cls = h1.class_of(&sv(&[(0, 2), (1, -2)])).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(homology_data(&c, 0).dim(), 0);
    }

    #[test]
    fn formatting() {
        let v = GradedVectorSpace::new([("u1", 4), ("u2", 4)]).unwrap();
        let x: SparseVec = [(0, q(1)), (1, qr(-1, 2))].into_iter().collect();
        assert_eq!(v.format_vector(&x), "u1 - 1/2*u2");
        assert_eq!(v.format_vector(&SparseVec::new()), "0");
    }
}
