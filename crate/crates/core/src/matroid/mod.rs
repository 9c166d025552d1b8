//! Matroids given by their circuits, on a ground set of 1-based element ids.
//!
//! Minors keep the original ids, so a matroid carries both a label universe
//! `{1, ..., n}` and its actual ground set inside it.

mod construct;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subset::Subset;

pub use construct::{from_graph, from_matrix};

/// Largest supported label universe for combinatorial operations.
pub const MAX_GROUND: usize = 20;

#[derive(Clone)]
pub struct Matroid {
    n: usize,
    ground: Subset,
    circuits: Vec<Subset>,
    // rank of every subset of `ground`, indexed by mask; built on first use
    ranks: OnceLock<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ground == other.ground && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.ground)
            .field("circuits", &self.circuits)
            .finish()
    }
}

impl Matroid {
    /// Matroid on `{1, ..., n}` with the given circuits, after checking the
    /// circuit axioms.
    pub fn from_circuits<I>(n: usize, circuits: I) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
    {
        Self::on_ground(n, Subset::full(n.min(MAX_GROUND)), circuits)
    }

    /// As [`Matroid::from_circuits`], with element lists.
    pub fn from_circuit_lists(n: usize, circuits: &[Vec<usize>]) -> Result<Self> {
        let mut family = Vec::with_capacity(circuits.len());
        for c in circuits {
            let s = Subset::try_from_elements(c.iter().copied(), n)
                .map_err(|element| Error::OutOfRange { element, n })?;
            family.push(s);
        }
        Self::from_circuits(n, family)
    }

    /// Matroid on an arbitrary ground set inside `{1, ..., n}`.
    pub fn on_ground<I>(n: usize, ground: Subset, circuits: I) -> Result<Self>
    where
        I: IntoIterator<Item = Subset>,
    {
        if n > MAX_GROUND {
            return Err(Error::TooLarge(format!(
                "ground set of size {n} exceeds the limit of {MAX_GROUND}"
            )));
        }
        let mut family: Vec<Subset> = circuits.into_iter().collect();
        for c in &family {
            if c.is_empty() {
                return Err(Error::AxiomViolation {
                    first: *c,
                    second: *c,
                    reason: "the empty set is not a circuit".into(),
                });
            }
            if !c.is_subset_of(ground) {
                let element = c.difference(ground).first().unwrap_or(0);
                return Err(Error::OutOfRange { element, n });
            }
        }
        family.sort();
        family.dedup();
        let m = Matroid::unchecked(n, ground, family);
        m.check_axioms()?;
        Ok(m)
    }

    pub(crate) fn unchecked(n: usize, ground: Subset, mut circuits: Vec<Subset>) -> Self {
        circuits.sort();
        circuits.dedup();
        Matroid {
            n,
            ground,
            circuits,
            ranks: OnceLock::new(),
        }
    }

    /// Matroid whose independent sets are those accepted by `independent`.
    /// The predicate must describe a matroid; the axioms are re-checked.
    pub fn from_independence<F>(n: usize, ground: Subset, independent: F) -> Result<Self>
    where
        F: Fn(Subset) -> bool,
    {
        if n > MAX_GROUND {
            return Err(Error::TooLarge(format!(
                "ground set of size {n} exceeds the limit of {MAX_GROUND}"
            )));
        }
        let mut indep = vec![false; 1usize << n];
        let mut circuits = Vec::new();
        for s in ground.subsets() {
            let ok = independent(s);
            indep[s.mask() as usize] = ok;
            if !ok && s.iter().all(|x| indep[s.without(x).mask() as usize]) {
                circuits.push(s);
            }
        }
        Self::on_ground(n, ground, circuits)
    }

    fn check_axioms(&self) -> Result<()> {
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    return Err(Error::AxiomViolation {
                        first: a,
                        second: b,
                        reason: "one circuit contains the other".into(),
                    });
                }
            }
        }
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                let union = a.union(b);
                for e in a.intersection(b).iter() {
                    if self.is_independent(union.without(e)) {
                        return Err(Error::AxiomViolation {
                            first: a,
                            second: b,
                            reason: format!("no circuit inside the union minus {e}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Size of the label universe `{1, ..., n}`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    /// Circuits in the canonical subset order.
    pub fn circuits(&self) -> &[Subset] {
        &self.circuits
    }

    pub fn is_circuit(&self, c: Subset) -> bool {
        self.circuits.binary_search(&c).is_ok()
    }

    fn rank_table(&self) -> &[u8] {
        self.ranks.get_or_init(|| {
            let size = 1usize << self.n;
            let mut is_circuit = vec![false; size];
            for c in &self.circuits {
                is_circuit[c.mask() as usize] = true;
            }
            let mut rank = vec![0u8; size];
            for s in self.ground.subsets() {
                if s.is_empty() {
                    continue;
                }
                let k = s.len() as u8;
                let mut best = 0u8;
                let mut all_free = true;
                for x in s.iter() {
                    let r = rank[s.without(x).mask() as usize];
                    best = best.max(r);
                    all_free &= r == k - 1;
                }
                rank[s.mask() as usize] = if all_free && !is_circuit[s.mask() as usize] {
                    k
                } else {
                    best
                };
            }
            rank
        })
    }

    /// Rank of `x ∩ ground`.
    pub fn rank(&self, x: Subset) -> usize {
        self.rank_table()[x.intersection(self.ground).mask() as usize] as usize
    }

    /// Rank of the whole matroid.
    pub fn full_rank(&self) -> usize {
        self.rank(self.ground)
    }

    /// Rank in the dual matroid: `|X| + r(E \ X) - r(E)`.
    pub fn dual_rank(&self, x: Subset) -> usize {
        let x = x.intersection(self.ground);
        x.len() + self.rank(self.ground.difference(x)) - self.full_rank()
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        x.is_subset_of(self.ground) && self.rank(x) == x.len()
    }

    pub fn is_loop(&self, x: usize) -> bool {
        self.ground.contains(x) && self.rank(Subset::singleton(x)) == 0
    }

    pub fn loops(&self) -> Subset {
        self.ground.iter().filter(|&x| self.is_loop(x)).collect()
    }

    pub fn closure(&self, x: Subset) -> Subset {
        let r = self.rank(x);
        self.ground
            .iter()
            .filter(|&y| self.rank(x.with(y)) == r)
            .collect()
    }

    /// The unique circuit inside `independent ∪ {x}`.
    pub fn fundamental_circuit(&self, x: usize, independent: Subset) -> Result<Subset> {
        if !self.ground.contains(x) {
            return Err(Error::OutOfRange {
                element: x,
                n: self.n,
            });
        }
        if !self.is_independent(independent) {
            return Err(Error::NotIndependent(independent));
        }
        let k = independent.len();
        if independent.contains(x) || self.rank(independent.with(x)) != k {
            return Err(Error::NotInClosure {
                element: x,
                set: independent,
            });
        }
        let span = independent.with(x);
        // i lies on the circuit exactly when removing it breaks the dependency
        Ok(span
            .iter()
            .filter(|&i| i == x || self.rank(span.without(i)) == k)
            .collect())
    }

    /// Circuits contained in `x`.
    pub fn circuits_within(&self, x: Subset) -> impl Iterator<Item = Subset> + '_ {
        self.circuits.iter().copied().filter(move |c| c.is_subset_of(x))
    }

    pub fn independent_sets(&self) -> Vec<Subset> {
        let mut sets: Vec<Subset> = self
            .ground
            .subsets()
            .filter(|&s| self.is_independent(s))
            .collect();
        sets.sort();
        sets
    }

    /// Cocircuits: minimal sets meeting every basis.
    pub fn cocircuits(&self) -> Vec<Subset> {
        let r = self.full_rank();
        let hits_every_basis = |d: Subset| self.rank(self.ground.difference(d)) < r;
        let mut out: Vec<Subset> = self
            .ground
            .subsets()
            .filter(|&d| {
                !d.is_empty() && hits_every_basis(d) && d.iter().all(|x| !hits_every_basis(d.without(x)))
            })
            .collect();
        out.sort();
        out
    }

    /// Hyperplanes: complements of cocircuits.
    pub fn hyperplanes(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self
            .cocircuits()
            .into_iter()
            .map(|d| self.ground.difference(d))
            .collect();
        out.sort();
        out
    }

    pub fn is_hyperplane(&self, h: Subset) -> bool {
        let r = self.full_rank();
        h.is_subset_of(self.ground) && r > 0 && self.rank(h) == r - 1 && self.closure(h) == h
    }

    pub fn dual(&self) -> Matroid {
        Matroid::unchecked(self.n, self.ground, self.cocircuits())
    }

    /// `M \ delete / contract`, on the surviving original ids.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid> {
        if !delete.is_disjoint(contract) {
            return Err(Error::Overlap { delete, contract });
        }
        for s in [delete, contract] {
            if let Some(element) = s.difference(self.ground).first() {
                return Err(Error::OutOfRange { element, n: self.n });
            }
        }
        let ground = self.ground.difference(delete).difference(contract);
        let mut candidates: Vec<Subset> = self
            .circuits
            .iter()
            .filter(|c| c.is_disjoint(delete))
            .map(|c| c.difference(contract))
            .filter(|c| !c.is_empty())
            .collect();
        candidates.sort();
        candidates.dedup();
        Ok(Matroid::unchecked(self.n, ground, minimal_members(&candidates)))
    }

    pub fn delete(&self, x: usize) -> Result<Matroid> {
        self.minor(Subset::singleton(x), Subset::EMPTY)
    }

    pub fn contract(&self, x: usize) -> Result<Matroid> {
        self.minor(Subset::EMPTY, Subset::singleton(x))
    }

    /// `r(X) + r(Y) = r(X ∪ Y) + r(X ∩ Y)`.
    pub fn is_modular_pair(&self, x: Subset, y: Subset) -> bool {
        let modular =
            self.rank(x) + self.rank(y) == self.rank(x.union(y)) + self.rank(x.intersection(y));
        if cfg!(debug_assertions) && x != y && self.is_circuit(x) && self.is_circuit(y) {
            let criteria = self.modular_pair_criteria(x, y);
            debug_assert!(
                criteria.iter().all(|&c| c == modular),
                "modular pair criteria disagree for {x} and {y}: {criteria:?}"
            );
        }
        modular
    }

    /// The four equivalent tests for two distinct circuits: modular in `M`,
    /// complements modular in `M*`, `r(C1 ∪ C2) = |C1 ∪ C2| - 2`, and
    /// `r*(H1 ∩ H2) = r(M*) - 2`.
    pub fn modular_pair_criteria(&self, c1: Subset, c2: Subset) -> [bool; 4] {
        let union = c1.union(c2);
        let h1 = self.ground.difference(c1);
        let h2 = self.ground.difference(c2);
        let dual_full = self.dual_rank(self.ground);
        [
            self.rank(c1) + self.rank(c2) == self.rank(union) + self.rank(c1.intersection(c2)),
            self.dual_rank(h1) + self.dual_rank(h2)
                == self.dual_rank(h1.union(h2)) + self.dual_rank(h1.intersection(h2)),
            self.rank(union) + 2 == union.len(),
            self.dual_rank(h1.intersection(h2)) + 2 == dual_full,
        ]
    }

    /// `H(C) = E \ C`, a hyperplane of the dual.
    pub fn hyperplane_complement(&self, c: Subset) -> Result<Subset> {
        if !self.is_circuit(c) {
            return Err(Error::NotACircuit(c));
        }
        let h = self.ground.difference(c);
        debug_assert_eq!(self.dual_rank(h) + 1, self.dual_rank(self.ground));
        Ok(h)
    }

    /// Rename elements: `map[x]` is the new id of `x` (index 0 unused).
    pub fn relabel(&self, map: &[usize]) -> Matroid {
        let circuits = self.circuits.iter().map(|c| c.relabel(map)).collect();
        Matroid::unchecked(self.n, self.ground.relabel(map), circuits)
    }

    /// Direct sum, shifting the ids of `other` past `self.n()`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let shift = self.n;
        let map: Vec<usize> = (0..=other.n).map(|x| x + shift).collect();
        let mut circuits = self.circuits.clone();
        circuits.extend(other.circuits.iter().map(|c| c.relabel(&map)));
        Matroid::on_ground(
            self.n + other.n,
            self.ground.union(other.ground.relabel(&map)),
            circuits,
        )
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        let circuits: Vec<Subset> = Subset::full(n.min(MAX_GROUND))
            .subsets()
            .filter(|s| s.len() == r + 1)
            .collect();
        Matroid::from_circuits(n, circuits)
    }
}

/// Inclusion-minimal members of a family.
pub fn minimal_members(family: &[Subset]) -> Vec<Subset> {
    let mut out: Vec<Subset> = family
        .iter()
        .copied()
        .filter(|&c| !family.iter().any(|&d| d != c && d.is_subset_of(c)))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[usize]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    fn u24() -> Matroid {
        Matroid::uniform(2, 4).unwrap()
    }

    #[test]
    fn from_circuits_examples() {
        let m = Matroid::from_circuit_lists(
            4,
            &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
        )
        .unwrap();
        assert_eq!(m, u24());
        let m = Matroid::from_circuit_lists(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
        let err = Matroid::from_circuit_lists(4, &[vec![1, 2], vec![1, 2, 3]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
        let err = Matroid::from_circuit_lists(3, &[vec![1, 4]]).unwrap_err();
        assert_eq!(err, Error::OutOfRange { element: 4, n: 3 });
    }

    #[test]
    fn elimination_failure_is_reported() {
        // {1,2} and {2,3} force a circuit inside {1,3}
        let err = Matroid::from_circuit_lists(3, &[vec![1, 2], vec![2, 3]]).unwrap_err();
        match err {
            Error::AxiomViolation { first, second, .. } => {
                assert_eq!((first, second), (s(&[1, 2]), s(&[2, 3])));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_examples() {
        let m = u24();
        assert_eq!(m.rank(Subset::EMPTY), 0);
        assert_eq!(m.rank(s(&[1, 2])), 2);
        assert_eq!(m.rank(s(&[1, 2, 3, 4])), 2);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(u24().closure(s(&[2, 3])), s(&[1, 2, 3, 4]));
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.closure(s(&[2])), s(&[2]));
        assert_eq!(u23.closure(u23.ground()), u23.ground());
    }

    #[test]
    fn fundamental_circuit_examples() {
        let m = u24();
        assert_eq!(m.fundamental_circuit(1, s(&[2, 3])).unwrap(), s(&[1, 2, 3]));
        assert_eq!(m.fundamental_circuit(4, s(&[2, 3])).unwrap(), s(&[2, 3, 4]));
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert!(matches!(
            u23.fundamental_circuit(1, s(&[2])),
            Err(Error::NotInClosure { .. })
        ));
        assert!(matches!(
            m.fundamental_circuit(1, s(&[2, 3, 4])),
            Err(Error::NotIndependent(_))
        ));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(u24().dual(), u24());
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.dual(), Matroid::uniform(1, 3).unwrap());
        assert_eq!(u23.dual().dual(), u23);
    }

    #[test]
    fn minor_examples() {
        let m = u24();
        let d = m.minor(s(&[4]), Subset::EMPTY).unwrap();
        assert_eq!(d.ground(), s(&[1, 2, 3]));
        assert_eq!(d.circuits(), &[s(&[1, 2, 3])]);
        let c = m.minor(Subset::EMPTY, s(&[4])).unwrap();
        assert_eq!(c.circuits(), &[s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);
        assert_eq!(c.full_rank(), 1);
        assert_eq!(m.minor(Subset::EMPTY, Subset::EMPTY).unwrap(), m);
        assert!(matches!(
            m.minor(s(&[1]), s(&[1, 2])),
            Err(Error::Overlap { .. })
        ));
    }

    #[test]
    fn modular_pair_examples() {
        let m = u24();
        assert!(m.is_modular_pair(s(&[1, 2, 3]), s(&[1, 2, 4])));
        let two_pairs = Matroid::from_circuit_lists(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(two_pairs.is_modular_pair(s(&[1, 2]), s(&[3, 4])));
    }

    #[test]
    fn hyperplane_complement_examples() {
        assert_eq!(u24().hyperplane_complement(s(&[1, 2, 3])).unwrap(), s(&[4]));
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.hyperplane_complement(s(&[1, 2, 3])).unwrap(), Subset::EMPTY);
        assert_eq!(
            u24().hyperplane_complement(s(&[1, 2])),
            Err(Error::NotACircuit(s(&[1, 2])))
        );
    }

    #[test]
    fn loops_are_supported() {
        let m = Matroid::from_circuit_lists(3, &[vec![1], vec![2, 3]]).unwrap();
        assert!(m.is_loop(1));
        assert_eq!(m.full_rank(), 1);
        assert_eq!(m.loops(), s(&[1]));
        let c = m.contract(2).unwrap();
        assert_eq!(c.circuits(), &[s(&[1]), s(&[3])]);
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(
            Matroid::from_circuits(MAX_GROUND + 1, []),
            Err(Error::TooLarge(_))
        ));
    }
}
