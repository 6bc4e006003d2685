//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use kappa_core::freelie::BracketTree;
use kappa_core::Q;
use num_traits::{One, Zero};

pub type Tensor = BTreeMap<Vec<usize>, Q>;

fn add(t: &mut Tensor, w: Vec<usize>, c: Q) {
    let e = t.entry(w.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        t.remove(&w);
    }
}

pub fn degree_of(word: &[usize], degrees: &[i64]) -> i64 {
    word.iter().map(|i| degrees[*i]).sum()
}

pub fn letter(i: usize) -> Tensor {
    [(vec![i], Q::one())].into_iter().collect()
}

pub fn product(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add(&mut out, w, x * y);
        }
    }
    out
}

/// `ab − (−1)^{|a||b|} ba` for homogeneous `a`, `b`.
pub fn commutator(a: &Tensor, b: &Tensor, degrees: &[i64]) -> Tensor {
    let (Some(u), Some(v)) = (a.keys().next(), b.keys().next()) else {
        return Tensor::new();
    };
    let odd = (degree_of(u, degrees) * degree_of(v, degrees)).rem_euclid(2) == 1;
    let mut out = product(a, b);
    for (w, c) in product(b, a) {
        add(&mut out, w, if odd { c } else { -c });
    }
    out
}

pub fn expand_tree(t: &BracketTree, degrees: &[i64]) -> Tensor {
    match t {
        BracketTree::Leaf(i) => letter(*i),
        BracketTree::Node(a, b) => commutator(&expand_tree(a, degrees), &expand_tree(b, degrees), degrees),
    }
}

pub fn scale(a: &Tensor, c: &Q) -> Tensor {
    a.iter().map(|(w, x)| (w.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

pub fn sum(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.clone();
    for (w, c) in b {
        add(&mut out, w.clone(), c.clone());
    }
    out
}

/// Rank by plain dense Gaussian elimination.
pub fn dense_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|r| !m[*r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..cols {
                    let delta = &f * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a family of tensors.
pub fn tensor_rank(ts: &[Tensor]) -> usize {
    let mut words: Vec<&Vec<usize>> = ts.iter().flat_map(|t| t.keys()).collect();
    words.sort();
    words.dedup();
    let rows: Vec<Vec<Q>> = ts
        .iter()
        .map(|t| words.iter().map(|w| t.get(*w).cloned().unwrap_or_else(Q::zero)).collect())
        .collect();
    dense_rank(&rows)
}

/// Right-normed brackets `[x_{i1},[x_{i2},…]]` of every word of a given length.
pub fn right_normed(len: usize, degrees: &[i64]) -> Vec<(Vec<usize>, Tensor)> {
    let k = degrees.len();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| (0..k).map(move |i| {
                let mut v = w.clone();
                v.push(i);
                v
            }))
            .collect();
    }
    words
        .into_iter()
        .map(|w| {
            let mut t = letter(*w.last().unwrap());
            for i in w[..w.len() - 1].iter().rev() {
                t = commutator(&letter(*i), &t, degrees);
            }
            (w, t)
        })
        .collect()
}

/// Dimensions of the free Lie (super)algebra by (degree, weight), as ranks of
/// right-normed brackets inside the tensor algebra.
pub fn free_lie_dims_oracle(degrees: &[i64], max_weight: usize) -> BTreeMap<(i64, usize), usize> {
    let mut out = BTreeMap::new();
    for w in 1..=max_weight {
        let mut by_degree: BTreeMap<i64, Vec<Tensor>> = BTreeMap::new();
        for (word, t) in right_normed(w, degrees) {
            by_degree.entry(degree_of(&word, degrees)).or_default().push(t);
        }
        for (d, ts) in by_degree {
            let r = tensor_rank(&ts);
            if r > 0 {
                out.insert((d, w), r);
            }
        }
    }
    out
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Witt's formula for free Lie algebras on `k` even generators.
pub fn witt(k: usize, n: usize) -> usize {
    let s: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(d) * (k as i64).pow((n / d) as u32)).sum();
    (s / n as i64) as usize
}

/// Coordinates of `v` in the span of `basis` (dense columns), by Gaussian
/// elimination on the augmented system.
pub fn dense_coordinates(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = basis.len();
    let rows = v.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| basis.iter().map(|b| b[r].clone()).chain(std::iter::once(v[r].clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows).find(|r| !m[*r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for k in c..=n {
            let x = &m[rank][k] / &piv;
            m[rank][k] = x;
        }
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=n {
                    let delta = &f * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if (rank..rows).any(|r| !m[r][n].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, c) in pivots.iter().enumerate() {
        x[*c] = m[r][n].clone();
    }
    Some(x)
}

/// Trace of a letter permutation on the span of a family of tensors.
pub fn trace_on_span(ts: &[Tensor], perm: &[usize]) -> Q {
    let mut words: Vec<Vec<usize>> = ts.iter().flat_map(|t| t.keys().cloned()).collect();
    let moved: Vec<Tensor> = ts
        .iter()
        .map(|t| t.iter().map(|(w, c)| (w.iter().map(|i| perm[*i]).collect::<Vec<_>>(), c.clone())).collect())
        .collect();
    words.extend(moved.iter().flat_map(|t| t.keys().cloned()));
    words.sort();
    words.dedup();
    let dense = |t: &Tensor| -> Vec<Q> { words.iter().map(|w| t.get(w).cloned().unwrap_or_else(Q::zero)).collect() };
    // pick a basis among the spanning family
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut basis_idx = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        let v = dense(t);
        let mut trial = basis.clone();
        trial.push(v.clone());
        if dense_rank(&trial) > basis.len() {
            basis.push(v);
            basis_idx.push(i);
        }
    }
    let mut tr = Q::zero();
    for (j, i) in basis_idx.iter().enumerate() {
        let c = dense_coordinates(&basis, &dense(&moved[*i])).expect("span is invariant");
        tr += &c[j];
    }
    tr
}
