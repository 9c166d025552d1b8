//! Brute-force reference computations for the integration tests. Nothing
//! here calls into the library except to read corpus data.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Set = u32;

pub fn bits(xs: &[usize]) -> Set {
    xs.iter().fold(0, |acc, &x| acc | 1 << (x - 1))
}

pub fn elements(s: Set) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn popcount(s: Set) -> usize {
    s.count_ones() as usize
}

/// A matroid given by its circuits, with everything else recomputed from
/// the definition "independent = contains no circuit".
#[derive(Clone, Debug)]
pub struct RefMatroid {
    pub n: usize,
    pub ground: Set,
    pub circuits: Vec<Set>,
}

impl RefMatroid {
    pub fn new(n: usize, ground: Set, circuits: Vec<Set>) -> Self {
        let mut circuits = circuits;
        circuits.sort_by_key(|&c| (popcount(c), elements(c)));
        RefMatroid { n, ground, circuits }
    }

    pub fn from_independence(n: usize, independent: impl Fn(Set) -> bool) -> Self {
        let ground: Set = if n == 0 { 0 } else { (1 << n) - 1 };
        let circuits = (1..=ground)
            .filter(|&s| !independent(s) && elements(s).iter().all(|&x| independent(s & !(1 << (x - 1)))))
            .collect();
        Self::new(n, ground, circuits)
    }

    pub fn is_independent(&self, s: Set) -> bool {
        self.circuits.iter().all(|&c| c & s != c)
    }

    pub fn rank(&self, s: Set) -> usize {
        submasks(s)
            .filter(|&t| self.is_independent(t))
            .map(popcount)
            .max()
            .unwrap_or(0)
    }

    pub fn independent_sets(&self) -> Vec<Set> {
        submasks(self.ground).filter(|&s| self.is_independent(s)).collect()
    }

    pub fn closure(&self, s: Set) -> Set {
        let r = self.rank(s);
        elements(self.ground)
            .into_iter()
            .filter(|&x| self.rank(s | 1 << (x - 1)) == r)
            .fold(0, |acc, x| acc | 1 << (x - 1))
    }

    pub fn circuits_in(&self, s: Set) -> Vec<Set> {
        self.circuits.iter().copied().filter(|&c| c & s == c).collect()
    }

    pub fn delete(&self, x: usize) -> RefMatroid {
        let b = 1 << (x - 1);
        RefMatroid::new(self.n, self.ground & !b, self.circuits.iter().copied().filter(|c| c & b == 0).collect())
    }

    pub fn contract(&self, x: usize) -> RefMatroid {
        let b = 1 << (x - 1);
        let ground = self.ground & !b;
        let removed: Vec<Set> = self.circuits.iter().map(|c| c & !b).filter(|&c| c != 0).collect();
        let minimal = removed
            .iter()
            .copied()
            .filter(|&c| !removed.iter().any(|&d| d != c && d & c == d))
            .collect::<BTreeSet<_>>();
        RefMatroid::new(self.n, ground, minimal.into_iter().collect())
    }

    /// Antichain and strong-enough elimination, checked on every pair.
    pub fn satisfies_circuit_axioms(&self) -> bool {
        if self.circuits.iter().any(|&c| c == 0 || c & !self.ground != 0) {
            return false;
        }
        for &a in &self.circuits {
            for &b in &self.circuits {
                if a == b {
                    continue;
                }
                if a & b == a {
                    return false;
                }
                for x in elements(a & b) {
                    let u = (a | b) & !(1 << (x - 1));
                    if self.circuits.iter().all(|&c| c & u != c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_modular_pair(&self, a: Set, b: Set) -> bool {
        self.rank(a) + self.rank(b) == self.rank(a | b) + self.rank(a & b)
    }

    pub fn is_linear_class(&self, class: &[Set]) -> bool {
        class.iter().all(|&a| {
            class.iter().all(|&b| {
                a == b || !self.is_modular_pair(a, b) || self.circuits_in(a | b).iter().all(|c| class.contains(c))
            })
        })
    }

    /// Every linear class, found by trying every subfamily of circuits.
    pub fn linear_classes(&self) -> Vec<BTreeSet<Set>> {
        let k = self.circuits.len();
        (0u32..1 << k)
            .map(|pick| {
                (0..k)
                    .filter(|i| pick >> i & 1 == 1)
                    .map(|i| self.circuits[i])
                    .collect::<Vec<_>>()
            })
            .filter(|family| self.is_linear_class(family))
            .map(|family| family.into_iter().collect())
            .collect()
    }

    pub fn delete_class(&self, class: &[Set], x: usize) -> Vec<Set> {
        class.iter().copied().filter(|c| c >> (x - 1) & 1 == 0).collect()
    }

    pub fn contract_class(&self, class: &[Set], x: usize) -> Vec<Set> {
        let b: Set = 1 << (x - 1);
        if self.circuits.contains(&b) {
            return self.delete_class(class, x);
        }
        let mut out: Vec<Set> = class.iter().filter(|&&c| c & b != 0).map(|c| c & !b).collect();
        out.extend(class.iter().copied().filter(|&c| self.closure(c) & b == 0));
        out
    }
}

pub fn submasks(s: Set) -> impl Iterator<Item = Set> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == s { None } else { Some(((cur | !s).wrapping_add(1)) & s) };
        Some(cur)
    })
}

pub fn graph_matroid(vertices: usize, edges: &[(usize, usize)]) -> RefMatroid {
    let forest = |s: Set| {
        let mut parent: Vec<usize> = (0..=vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in elements(s) {
            let (a, b) = edges[e - 1];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    };
    RefMatroid::from_independence(edges.len(), forest)
}

/// Sparse exterior algebra element with rational coefficients.
pub type Ext = Vec<(Set, BigRational)>;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Sign of moving the letters of `b` past those of `a` into increasing order.
pub fn merge_sign(a: Set, b: Set) -> i64 {
    let mut swaps = 0;
    for y in elements(b) {
        swaps += elements(a).iter().filter(|&&x| x > y).count();
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn mono(s: Set) -> Ext {
    vec![(s, q(1))]
}

/// `∂e_X = Σ_j (-1)^(j-1) e_{X \ x_j}`.
pub fn boundary_mono(s: Set) -> Ext {
    elements(s)
        .iter()
        .enumerate()
        .map(|(j, &x)| (s & !(1 << (x - 1)), q(if j % 2 == 0 { 1 } else { -1 })))
        .collect()
}

pub fn wedge_mono_left(x: Set, v: &Ext) -> Ext {
    v.iter()
        .filter(|(s, _)| s & x == 0)
        .map(|(s, c)| (s | x, c * q(merge_sign(x, *s))))
        .collect()
}

/// Ranks of the degree pieces of the two-sided ideal generated by the
/// homogeneous elements `gens` inside the exterior algebra on `ground`.
pub fn ideal_graded_ranks(ground: Set, gens: &[Ext]) -> Vec<usize> {
    let n = popcount(ground);
    let mut rows_by_degree: Vec<Vec<Ext>> = vec![Vec::new(); n + 1];
    for g in gens {
        if g.is_empty() {
            continue;
        }
        for x in submasks(ground) {
            let row = wedge_mono_left(x, g);
            if let Some((s, _)) = row.first() {
                rows_by_degree[popcount(*s)].push(row);
            }
        }
    }
    rows_by_degree.iter().map(|rows| dense_rank(ground, rows)).collect()
}

pub fn quotient_graded_dims(ground: Set, gens: &[Ext]) -> Vec<usize> {
    let n = popcount(ground);
    let ranks = ideal_graded_ranks(ground, gens);
    let mut dims: Vec<usize> = (0..=n).map(|k| binom(n, k) - ranks[k]).collect();
    while dims.len() > 1 && dims.last() == Some(&0) {
        dims.pop();
    }
    dims
}

pub fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn dense_rank(ground: Set, rows: &[Ext]) -> usize {
    let cols: Vec<Set> = submasks(ground).collect();
    let index = |s: Set| cols.iter().position(|&c| c == s).expect("monomial over the ground set");
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut dense = vec![BigRational::zero(); cols.len()];
            for (s, c) in r {
                dense[index(*s)] += c;
            }
            dense
        })
        .collect();
    rank_of(&mut m)
}

pub fn rank_of(m: &mut [Vec<BigRational>]) -> usize {
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][col].clone();
        let pivot: Vec<BigRational> = m[rank].iter().map(|v| v * &inv).collect();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// The ideal generated by `gens` as a reduced row echelon matrix.
pub struct IdealSpan {
    cols: Vec<Set>,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl IdealSpan {
    pub fn new(ground: Set, gens: &[Ext]) -> Self {
        let cols: Vec<Set> = submasks(ground).collect();
        let mut span = IdealSpan { cols, rows: Vec::new(), pivots: Vec::new() };
        for g in gens {
            for x in submasks(ground) {
                let r = wedge_mono_left(x, g);
                if !r.is_empty() {
                    span.insert(&r);
                }
            }
        }
        span
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn dense(&self, v: &Ext) -> Vec<BigRational> {
        let mut d = vec![BigRational::zero(); self.cols.len()];
        for (s, c) in v {
            let i = self.cols.iter().position(|c| c == s).expect("monomial over the ground set");
            d[i] += c;
        }
        d
    }

    fn reduce(&self, mut d: Vec<BigRational>) -> Vec<BigRational> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !d[p].is_zero() {
                let f = d[p].clone();
                for (v, r) in d.iter_mut().zip(row) {
                    *v -= &f * r;
                }
            }
        }
        d
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &Ext) -> bool {
        let d = self.reduce(self.dense(v));
        let Some(p) = d.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / d[p].clone();
        let d: Vec<BigRational> = d.iter().map(|v| v * &inv).collect();
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (v, r) in row.iter_mut().zip(&d) {
                    *v -= &f * r;
                }
            }
        }
        self.rows.push(d);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &Ext) -> bool {
        self.reduce(self.dense(v)).iter().all(|v| v.is_zero())
    }
}

/// `{∂e_C : C ∈ class, |C| > 1} ∪ {e_C : C circuit}`.
pub fn bias_ideal(m: &RefMatroid, class: &[Set]) -> Vec<Ext> {
    let mut gens: Vec<Ext> = class.iter().filter(|c| popcount(**c) > 1).map(|&c| boundary_mono(c)).collect();
    gens.extend(m.circuits.iter().map(|&c| mono(c)));
    gens
}

/// `{∂e_C : |C| > 1} ∪ {e_C : |C| = 1}`.
pub fn os_ideal(m: &RefMatroid) -> Vec<Ext> {
    m.circuits
        .iter()
        .map(|&c| if popcount(c) > 1 { boundary_mono(c) } else { mono(c) })
        .collect()
}

pub fn rational(v: i64) -> BigRational {
    q(v)
}
