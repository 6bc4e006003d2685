//! Polynomial de Rham forms on `Δⁿ` (n ≤ 2) and a direct computation of
//! `π₀`, `π₁` of `MC_•(L)` for abelian `L`.
//!
//! Forms use the coordinates `t₁, …, tₙ` with `t₀ = 1 − Σ tᵢ` eliminated.
//! Truncation bounds the total degree, counting each `tᵢ` and each `dtᵢ`
//! once. The truncated space is closed under `d`, faces and degeneracies
//! (not under products) and stays acyclic above degree 0.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linfty::LInftyAlgebra;
use crate::qlinalg::{
    add_into, coordinates, homology_dims, kernel_image, ChainComplex, Echelon, GradedVectorSpace,
    QMatrix, SparseVec, Q,
};

pub const MAX_SIMPLEX_DIM: usize = 2;

type Poly = BTreeMap<Vec<u32>, Q>;
/// (exponents, mask of `dt_j` for `j = 1..=n` as bits `j − 1`) -> coefficient
type Form = BTreeMap<(Vec<u32>, u32), Q>;

fn add_poly(p: &mut Poly, e: Vec<u32>, c: &Q) {
    let x = p.entry(e.clone()).or_insert_with(Q::zero);
    *x += c;
    if x.is_zero() {
        p.remove(&e);
    }
}

fn add_form(f: &mut Form, k: (Vec<u32>, u32), c: &Q) {
    let x = f.entry(k.clone()).or_insert_with(Q::zero);
    *x += c;
    if x.is_zero() {
        f.remove(&k);
    }
}

fn mul_poly(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, x) in a {
        for (eb, y) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(p, q)| p + q).collect();
            add_poly(&mut out, e, &(x * y));
        }
    }
    out
}

/// `ω_S ∧ dt_k`, or `None` if `k ∈ S`.
fn wedge_right(mask: u32, k: usize) -> Option<(u32, bool)> {
    let bit = 1u32 << k;
    if mask & bit != 0 {
        return None;
    }
    let above = (mask >> (k + 1)).count_ones();
    Some((mask | bit, above % 2 == 1))
}

/// An affine substitution: old variable `j` ↦ `consts[j] + Σ_k coeffs[j][k] s_k`.
struct Affine {
    consts: Vec<Q>,
    coeffs: Vec<Vec<Q>>,
    new_vars: usize,
}

impl Affine {
    /// Pullback along the coface map inserting a zero barycentric coordinate
    /// at position `i` (`m`-simplex into `(m+1)`-simplex) or along a codegeneracy.
    fn from_barycentric(images: &[Vec<(usize, i64)>], new_dim: usize) -> Affine {
        // images[j] lists the new barycentric coordinates whose sum is old coordinate j (j = 1..)
        let mut consts = Vec::new();
        let mut coeffs = Vec::new();
        for img in images {
            let mut c = Q::zero();
            let mut v = vec![Q::zero(); new_dim];
            for (k, s) in img {
                let s = Q::from_integer((*s).into());
                if *k == 0 {
                    // s_0 = 1 − Σ s_k
                    c += &s;
                    for x in v.iter_mut() {
                        *x -= &s;
                    }
                } else {
                    v[k - 1] += &s;
                }
            }
            consts.push(c);
            coeffs.push(v);
        }
        Affine { consts, coeffs, new_vars: new_dim }
    }

    fn pull_poly(&self, e: &[u32]) -> Poly {
        let mut out: Poly = [(vec![0; self.new_vars], Q::one())].into_iter().collect();
        for (j, p) in e.iter().enumerate() {
            let mut lin = Poly::new();
            add_poly(&mut lin, vec![0; self.new_vars], &self.consts[j]);
            for k in 0..self.new_vars {
                let mut ek = vec![0; self.new_vars];
                ek[k] = 1;
                add_poly(&mut lin, ek, &self.coeffs[j][k]);
            }
            for _ in 0..*p {
                out = mul_poly(&out, &lin);
            }
        }
        out
    }

    fn pull(&self, key: &(Vec<u32>, u32)) -> Form {
        let mut out: Form = self.pull_poly(&key.0).into_iter().map(|(e, c)| ((e, 0), c)).collect();
        for j in 0..self.consts.len() {
            if key.1 & (1 << j) == 0 {
                continue;
            }
            let mut next = Form::new();
            for ((e, m), c) in &out {
                for k in 0..self.new_vars {
                    let a = &self.coeffs[j][k];
                    if a.is_zero() {
                        continue;
                    }
                    if let Some((m2, neg)) = wedge_right(*m, k) {
                        let v = if neg { -(c * a) } else { c * a };
                        add_form(&mut next, (e.clone(), m2), &v);
                    }
                }
            }
            out = next;
        }
        out
    }
}

/// Truncated polynomial forms on the standard `n`-simplex.
#[derive(Clone, Debug)]
pub struct PolyForms {
    n: usize,
    cap: u32,
    basis: Vec<(Vec<u32>, u32)>,
    index: HashMap<(Vec<u32>, u32), usize>,
    space: GradedVectorSpace,
    d: QMatrix,
}

/// `Ω_n` spanned by `p·dt_S` with `deg p + |S| ≤ poly_cap`.
pub fn apl_forms(n: usize, poly_cap: u32) -> Result<PolyForms> {
    if n > MAX_SIMPLEX_DIM {
        return Err(Error::Unsupported(format!("simplex dimension {n} above {MAX_SIMPLEX_DIM}")));
    }
    if poly_cap == 0 {
        return Err(Error::Unsupported("polynomial cap must be at least 1".into()));
    }
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        exps = exps
            .into_iter()
            .flat_map(|e| (0..=poly_cap).map(move |p| {
                let mut f = e.clone();
                f.push(p);
                f
            }))
            .filter(|e| e.iter().sum::<u32>() <= poly_cap)
            .collect();
    }
    let mut basis: Vec<(Vec<u32>, u32)> = Vec::new();
    for mask in 0..(1u32 << n) {
        for e in exps.iter().filter(|e| e.iter().sum::<u32>() + mask.count_ones() <= poly_cap) {
            basis.push((e.clone(), mask));
        }
    }
    basis.sort_by(|a, b| {
        (a.1.count_ones(), a.1, a.0.iter().sum::<u32>(), &a.0).cmp(&(b.1.count_ones(), b.1, b.0.iter().sum::<u32>(), &b.0))
    });
    let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let labels = basis.iter().map(|k| (form_label(n, k), -(k.1.count_ones() as i64)));
    let space = GradedVectorSpace::new(labels)?;
    let mut forms = PolyForms { n, cap: poly_cap, basis, index, space, d: QMatrix::zeros(0, 0) };
    let dim = forms.basis.len();
    let mut d = QMatrix::zeros(dim, dim);
    for (c, key) in forms.basis.iter().enumerate() {
        for (k, x) in forms.d_form(key) {
            d.set(forms.index[&k], c, x);
        }
    }
    forms.d = d;
    Ok(forms)
}

fn var_name(n: usize, j: usize) -> String {
    if n == 1 {
        "t".into()
    } else {
        format!("t{}", j + 1)
    }
}

fn form_label(n: usize, key: &(Vec<u32>, u32)) -> String {
    let mut parts = Vec::new();
    for (j, p) in key.0.iter().enumerate() {
        match p {
            0 => {}
            1 => parts.push(var_name(n, j)),
            _ => parts.push(format!("{}^{p}", var_name(n, j))),
        }
    }
    let ds: Vec<String> = (0..n).filter(|j| key.1 & (1 << j) != 0).map(|j| format!("d{}", var_name(n, j))).collect();
    if !ds.is_empty() {
        parts.push(ds.join("∧"));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl PolyForms {
    pub fn simplex_dim(&self) -> usize {
        self.n
    }

    pub fn poly_cap(&self) -> u32 {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis labels with homological degree `−(form degree)`.
    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn labels(&self) -> Vec<&str> {
        (0..self.dim()).map(|i| self.space.label(i)).collect()
    }

    /// Form degree of a basis element.
    pub fn form_degree(&self, i: usize) -> i64 {
        self.basis[i].1.count_ones() as i64
    }

    pub fn differential(&self) -> &QMatrix {
        &self.d
    }

    fn d_form(&self, key: &(Vec<u32>, u32)) -> Form {
        let mut out = Form::new();
        for j in 0..self.n {
            let p = key.0[j];
            if p == 0 || key.1 & (1 << j) != 0 {
                continue;
            }
            let mut e = key.0.clone();
            e[j] -= 1;
            let below = (key.1 & ((1 << j) - 1)).count_ones();
            let c = Q::from_integer(p.into());
            add_form(&mut out, (e, key.1 | (1 << j)), &if below % 2 == 1 { -c } else { c });
        }
        out
    }

    fn to_vec(&self, f: &Form) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (k, c) in f {
            let i = self.index.get(k).ok_or_else(|| Error::Unsupported("form exceeds the polynomial cap".into()))?;
            add_into(&mut v, *i, c);
        }
        Ok(v)
    }

    /// Product of two basis forms, if it stays under the cap.
    pub fn wedge(&self, a: usize, b: usize) -> Result<SparseVec> {
        let (ea, ma) = &self.basis[a];
        let (eb, mb) = &self.basis[b];
        if ma & mb != 0 {
            return Ok(SparseVec::new());
        }
        let mut mask = *ma;
        let mut neg = false;
        for k in 0..self.n {
            if mb & (1 << k) != 0 {
                let (m2, s) = wedge_right(mask, k).expect("disjoint masks");
                mask = m2;
                neg ^= s;
            }
        }
        let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
        let c = if neg { -Q::one() } else { Q::one() };
        self.to_vec(&[((e, mask), c)].into_iter().collect())
    }

    /// The `i`-th face map `Ω_n → Ω_{n−1}`.
    pub fn face(&self, i: usize, target: &PolyForms) -> Result<QMatrix> {
        if self.n == 0 || i > self.n || target.n + 1 != self.n || target.cap != self.cap {
            return Err(Error::Dimension("face map between incompatible form spaces".into()));
        }
        // old coordinate j: j < i -> s_j, j == i -> 0, j > i -> s_{j−1}
        let images: Vec<Vec<(usize, i64)>> = (1..=self.n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => vec![(j, 1)],
                std::cmp::Ordering::Equal => vec![],
                std::cmp::Ordering::Greater => vec![(j - 1, 1)],
            })
            .collect();
        self.pullback(&Affine::from_barycentric(&images, target.n), target)
    }

    /// The `j`-th degeneracy map `Ω_n → Ω_{n+1}`.
    pub fn degeneracy(&self, j: usize, target: &PolyForms) -> Result<QMatrix> {
        if j > self.n || target.n != self.n + 1 || target.cap != self.cap {
            return Err(Error::Dimension("degeneracy map between incompatible form spaces".into()));
        }
        // old coordinate k: k < j -> u_k, k == j -> u_j + u_{j+1}, k > j -> u_{k+1}
        let images: Vec<Vec<(usize, i64)>> = (1..=self.n)
            .map(|k| match k.cmp(&j) {
                std::cmp::Ordering::Less => vec![(k, 1)],
                std::cmp::Ordering::Equal => vec![(k, 1), (k + 1, 1)],
                std::cmp::Ordering::Greater => vec![(k + 1, 1)],
            })
            .collect();
        self.pullback(&Affine::from_barycentric(&images, target.n), target)
    }

    fn pullback(&self, phi: &Affine, target: &PolyForms) -> Result<QMatrix> {
        let mut m = QMatrix::zeros(target.dim(), self.dim());
        for (c, key) in self.basis.iter().enumerate() {
            for (r, x) in target.to_vec(&phi.pull(key))? {
                m.set(r, c, x);
            }
        }
        Ok(m)
    }

    /// Cohomology by form degree.
    pub fn cohomology_dims(&self) -> Result<BTreeMap<i64, usize>> {
        let c = ChainComplex::from_map(self.space.clone(), &self.d)?;
        Ok(homology_dims(&c).into_iter().map(|(k, d)| (-k, d)).collect())
    }
}

/// `L ⊗ Ω_n` in one homological degree with its differential
/// `d(x⊗ω) = ℓ₁x ⊗ ω + (−1)^{|x|} x ⊗ dω`.
struct TensorBlock {
    keys: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

fn tensor_block(l: &LInftyAlgebra, forms: &PolyForms, degree: i64) -> TensorBlock {
    let mut keys = Vec::new();
    for i in 0..l.dim() {
        for f in 0..forms.dim() {
            if l.degree(i) - forms.form_degree(f) == degree {
                keys.push((i, f));
            }
        }
    }
    let index = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    TensorBlock { keys, index }
}

fn tensor_differential(l: &LInftyAlgebra, forms: &PolyForms, from: &TensorBlock, to: &TensorBlock) -> QMatrix {
    let mut m = QMatrix::zeros(to.keys.len(), from.keys.len());
    for (c, (i, f)) in from.keys.iter().enumerate() {
        for (j, x) in l.eval_basis(&[*i]) {
            m.add_at(to.index[&(j, *f)], c, &x);
        }
        let sign = if l.degree(*i).rem_euclid(2) == 1 { -Q::one() } else { Q::one() };
        for (g, y) in forms.differential().column(*f) {
            m.add_at(to.index[&(*i, g)], c, &(&sign * y));
        }
    }
    m
}

/// Basis of `MC(L ⊗ Ω_n)` for abelian `L`: the degree −1 cycles, as
/// coordinate vectors over the pairs `(basis of L, basis of Ω_n)`.
pub fn mc_simplices_abelian(l: &LInftyAlgebra, forms: &PolyForms) -> Result<Vec<Vec<((usize, usize), Q)>>> {
    if !l.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let (block, z) = mc_cycles(l, forms);
    Ok(z.into_iter().map(|v| v.into_iter().map(|(i, c)| (block.keys[i], c)).collect()).collect())
}

fn mc_cycles(l: &LInftyAlgebra, forms: &PolyForms) -> (TensorBlock, Vec<SparseVec>) {
    let b = tensor_block(l, forms, -1);
    let below = tensor_block(l, forms, -2);
    let d = tensor_differential(l, forms, &b, &below);
    let z = kernel_image(&d).kernel;
    (b, z)
}

/// `id ⊗ φ` restricted to cycle bases, in cycle coordinates.
fn induced_on_cycles(
    map: &QMatrix,
    from: (&TensorBlock, &[SparseVec]),
    to: (&TensorBlock, &[SparseVec]),
) -> Result<QMatrix> {
    let mut m = QMatrix::zeros(to.1.len(), from.1.len());
    for (c, z) in from.1.iter().enumerate() {
        let mut img = SparseVec::new();
        for (k, x) in z {
            let (i, f) = from.0.keys[*k];
            for (g, y) in map.column(f) {
                add_into(&mut img, to.0.index[&(i, g)], &(x * &y));
            }
        }
        if img.is_empty() {
            continue;
        }
        let coords = coordinates(to.0.keys.len(), to.1, &img)
            .ok_or_else(|| Error::InvalidStructure("face of a cycle is not a cycle".into()))?;
        for (r, y) in coords {
            m.set(r, c, y);
        }
    }
    Ok(m)
}

fn kernel_of(m: &QMatrix) -> Vec<SparseVec> {
    kernel_image(m).kernel
}

fn intersect(width: usize, a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    // x ∈ span a ∩ span b  <=>  x = Σ α a_i = Σ β b_j
    let mut cols: Vec<SparseVec> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|(i, c)| (*i, -c.clone())).collect()));
    let m = QMatrix::from_columns(width, &cols);
    kernel_of(&m)
        .into_iter()
        .map(|k| {
            let mut x = SparseVec::new();
            for (j, c) in k {
                if j < a.len() {
                    for (i, y) in &a[j] {
                        add_into(&mut x, *i, &(&c * y));
                    }
                }
            }
            x
        })
        .filter(|x| !x.is_empty())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialHomotopy {
    pub pi0: usize,
    pub pi1: usize,
    pub poly_cap: u32,
}

/// `π₀` and `π₁` of the simplicial vector space `MC_•(L)` truncated at a
/// polynomial cap, via its Moore complex (`N_n = ∩_{i≥1} ker dᵢ`, boundary `d₀`).
pub fn abelian_mc_homotopy(l: &LInftyAlgebra, poly_cap: u32) -> Result<SimplicialHomotopy> {
    if !l.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if poly_cap < 2 {
        return Err(Error::Unsupported("π₁ needs 2-forms: polynomial cap must be at least 2".into()));
    }
    let f: Vec<PolyForms> = (0..=2).map(|n| apl_forms(n, poly_cap)).collect::<Result<_>>()?;
    let cyc: Vec<(TensorBlock, Vec<SparseVec>)> = f.iter().map(|fo| mc_cycles(l, fo)).collect();
    let face = |n: usize, i: usize| -> Result<QMatrix> {
        let m = f[n].face(i, &f[n - 1])?;
        induced_on_cycles(&m, (&cyc[n].0, &cyc[n].1), (&cyc[n - 1].0, &cyc[n - 1].1))
    };
    let z0 = cyc[0].1.len();
    let z1 = cyc[1].1.len();
    let z2 = cyc[2].1.len();
    let d10 = face(1, 0)?;
    let d11 = face(1, 1)?;
    let n1 = kernel_of(&d11);
    let d20 = face(2, 0)?;
    let d21 = face(2, 1)?;
    let d22 = face(2, 2)?;
    let n2 = intersect(z2, &kernel_of(&d21), &kernel_of(&d22));
    // ∂₁ = d₀ on N₁
    let boundary1 = QMatrix::from_columns(z0, &n1.iter().map(|v| d10.apply(v)).collect::<Vec<_>>());
    let ker1: Vec<SparseVec> = kernel_of(&boundary1)
        .into_iter()
        .map(|k| {
            let mut x = SparseVec::new();
            for (j, c) in k {
                for (i, y) in &n1[j] {
                    add_into(&mut x, *i, &(&c * y));
                }
            }
            x
        })
        .collect();
    let image2: Vec<SparseVec> = n2.iter().map(|v| d20.apply(v)).collect();
    let pi0 = z0 - boundary1.rank();
    let pi1 = ker1.len() - Echelon::of_rows(z1, image2).rank();
    Ok(SimplicialHomotopy { pi0, pi1, poly_cap })
}

/// Raises the polynomial cap until two consecutive caps agree.
pub fn abelian_mc_homotopy_stable(l: &LInftyAlgebra, start_cap: u32, max_cap: u32) -> Result<SimplicialHomotopy> {
    let mut prev = abelian_mc_homotopy(l, start_cap)?;
    for cap in start_cap + 1..=max_cap {
        let next = abelian_mc_homotopy(l, cap)?;
        if next.pi0 == prev.pi0 && next.pi1 == prev.pi1 {
            return Ok(prev);
        }
        prev = next;
    }
    Err(Error::Unsupported(format!("no stabilization up to polynomial cap {max_cap}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    #[test]
    fn interval_basis() {
        let f = apl_forms(1, 2).unwrap();
        assert_eq!(f.labels(), vec!["1", "t", "t^2", "dt", "t*dt"]);
        let t = f.space().index_of("t").unwrap();
        let dt = f.space().index_of("dt").unwrap();
        assert_eq!(f.differential().column(t), [(dt, q(1))].into_iter().collect::<SparseVec>());
    }

    #[test]
    fn point_and_simplices_are_contractible() {
        for n in 0..=2 {
            let dims = apl_forms(n, 3).unwrap().cohomology_dims().unwrap();
            for (k, d) in dims {
                assert_eq!(d, usize::from(k == 0), "n = {n}, degree {k}");
            }
        }
        assert!(apl_forms(3, 1).is_err());
    }

    #[test]
    fn face_of_interval() {
        let f1 = apl_forms(1, 2).unwrap();
        let f0 = apl_forms(0, 2).unwrap();
        let t = f1.space().index_of("t").unwrap();
        // d_0: t = 1, d_1: t = 0
        assert_eq!(f1.face(0, &f0).unwrap().column(t), [(0, q(1))].into_iter().collect::<SparseVec>());
        assert!(f1.face(1, &f0).unwrap().column(t).is_empty());
    }

    #[test]
    fn squares_of_dt_vanish() {
        let f = apl_forms(2, 2).unwrap();
        let a = f.space().index_of("dt1").unwrap();
        assert!(f.wedge(a, a).unwrap().is_empty());
        let b = f.space().index_of("dt2").unwrap();
        let ab = f.wedge(a, b).unwrap();
        let ba = f.wedge(b, a).unwrap();
        assert_eq!(ab.len(), 1);
        assert_eq!(ab.values().next(), ba.values().next().map(|c| -c.clone()).as_ref());
    }

    #[test]
    fn zero_algebra_has_only_zero_simplex() {
        let space = GradedVectorSpace::new(Vec::<(String, i64)>::new()).unwrap();
        let l = LInftyAlgebra::new(space, vec![], 1).unwrap();
        let f = apl_forms(1, 2).unwrap();
        assert!(mc_simplices_abelian(&l, &f).unwrap().is_empty());
        let h = abelian_mc_homotopy(&l, 2).unwrap();
        assert_eq!((h.pi0, h.pi1), (0, 0));
    }

    #[test]
    fn one_degree_zero_generator() {
        let c = ChainComplex::zero_differential(GradedVectorSpace::new(vec![("y", 0)]).unwrap());
        let l = LInftyAlgebra::abelian(&c).unwrap();
        let f = apl_forms(1, 2).unwrap();
        // degree −1 cycles of L⊗Ω₁: y⊗dt and y⊗t·dt, all closed
        assert_eq!(mc_simplices_abelian(&l, &f).unwrap().len(), 2);
        let h = abelian_mc_homotopy_stable(&l, 2, 5).unwrap();
        assert_eq!((h.pi0, h.pi1), (0, 1));
    }
}
