//! Reference computations in the tensor algebra, independent of the crate
//! under test.

use kappa_core::freelie::BracketTree;
use kappa_core::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Tensor = BTreeMap<Vec<usize>, Q>;

pub fn add_term(t: &mut Tensor, w: Vec<usize>, c: Q) {
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

pub fn sum(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.clone();
    for (w, c) in b {
        add_term(&mut out, w.clone(), c.clone());
    }
    out
}

pub fn scale(a: &Tensor, c: &Q) -> Tensor {
    a.iter().map(|(w, x)| (w.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

/// Product with words longer than `max_len` dropped.
pub fn product(a: &Tensor, b: &Tensor, max_len: usize) -> Tensor {
    let mut out = Tensor::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= max_len {
                let mut w = u.clone();
                w.extend_from_slice(v);
                add_term(&mut out, w, x * y);
            }
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
    let mut out = product(a, b, usize::MAX);
    for (w, c) in product(b, a, usize::MAX) {
        add_term(&mut out, w, if odd { c } else { -c });
    }
    out
}

pub fn expand_tree(t: &BracketTree, degrees: &[i64]) -> Tensor {
    match t {
        BracketTree::Leaf(i) => letter(*i),
        BracketTree::Node(a, b) => commutator(&expand_tree(a, degrees), &expand_tree(b, degrees), degrees),
    }
}

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

/// Right-normed brackets of every word of a given length.
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

/// Free Lie dimensions by (degree, weight) as ranks of right-normed brackets.
pub fn free_lie_dims(degrees: &[i64], max_weight: usize) -> BTreeMap<(i64, usize), usize> {
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

/// `exp(a)` truncated at word length `max_len`, for `a` without constant term.
pub fn exp(a: &Tensor, max_len: usize) -> Tensor {
    let mut out: Tensor = [(vec![], Q::one())].into_iter().collect();
    let mut power = out.clone();
    for k in 1..=max_len {
        power = scale(&product(&power, a, max_len), &Q::from_integer((k as i64).into()).recip());
        out = sum(&out, &power);
    }
    out
}

/// `log(1 + a)` truncated at word length `max_len`, for `a` without constant term.
pub fn log1p(a: &Tensor, max_len: usize) -> Tensor {
    let mut out = Tensor::new();
    let mut power: Tensor = [(vec![], Q::one())].into_iter().collect();
    for k in 1..=max_len {
        power = product(&power, a, max_len);
        let c = Q::from_integer((k as i64).into()).recip();
        out = sum(&out, &scale(&power, &if k % 2 == 1 { c } else { -c }));
    }
    out
}
