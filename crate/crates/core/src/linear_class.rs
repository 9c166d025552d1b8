//! Linear classes of circuits, their hyperplane duals, and their minors.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// A modular pair inside a family whose union holds a circuit (or, for
/// hyperplanes, whose intersection lies in a hyperplane) missing from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: Subset,
    pub second: Subset,
    pub missing: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Linear,
    Violation(Violation),
}

impl Verdict {
    pub fn is_linear(&self) -> bool {
        matches!(self, Verdict::Linear)
    }
}

/// Whether `family` is closed under "every circuit inside the union of a
/// modular pair of members is a member".
pub fn check_linear_class(m: &Matroid, family: &[Subset]) -> Result<Verdict> {
    let members = canonical(family);
    if let Some(c) = members.iter().find(|&&c| !m.is_circuit(c)) {
        return Err(Error::NotACircuit(*c));
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !m.is_modular_pair(a, b) {
                continue;
            }
            if let Some(missing) = m
                .circuits_within(a.union(b))
                .find(|c| members.binary_search(c).is_err())
            {
                return Ok(Verdict::Violation(Violation {
                    first: a,
                    second: b,
                    missing,
                }));
            }
        }
    }
    Ok(Verdict::Linear)
}

/// Hyperplane version: for every modular pair of members, every hyperplane
/// containing their intersection is a member.
pub fn check_hyperplane_class(m: &Matroid, family: &[Subset]) -> Result<Verdict> {
    let members = canonical(family);
    if let Some(h) = members.iter().find(|&&h| !m.is_hyperplane(h)) {
        return Err(Error::NotAHyperplane(*h));
    }
    let hyperplanes = m.hyperplanes();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !m.is_modular_pair(a, b) {
                continue;
            }
            let meet = a.intersection(b);
            if let Some(&missing) = hyperplanes
                .iter()
                .find(|h| meet.is_subset_of(**h) && members.binary_search(h).is_err())
            {
                return Ok(Verdict::Violation(Violation {
                    first: a,
                    second: b,
                    missing,
                }));
            }
        }
    }
    Ok(Verdict::Linear)
}

fn canonical(family: &[Subset]) -> Vec<Subset> {
    let set: BTreeSet<Subset> = family.iter().copied().collect();
    set.into_iter().collect()
}

/// A validated linear class of circuits of some matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct LinearClass {
    members: Vec<Subset>,
}

impl LinearClass {
    pub fn new(m: &Matroid, family: &[Subset]) -> Result<Self> {
        match check_linear_class(m, family)? {
            Verdict::Linear => Ok(LinearClass {
                members: canonical(family),
            }),
            Verdict::Violation(v) => Err(Error::HypothesisViolated(format!(
                "not a linear class: {} and {} are a modular pair but {} is missing",
                v.first, v.second, v.missing
            ))),
        }
    }

    pub(crate) fn unchecked(family: Vec<Subset>) -> Self {
        LinearClass {
            members: canonical(&family),
        }
    }

    pub fn empty() -> Self {
        LinearClass::default()
    }

    /// Every circuit of `m`.
    pub fn all(m: &Matroid) -> Self {
        LinearClass {
            members: m.circuits().to_vec(),
        }
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: Subset) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    pub fn is_everything(&self, m: &Matroid) -> bool {
        self.members == m.circuits()
    }

    /// Union of all members.
    pub fn support(&self) -> Subset {
        self.members
            .iter()
            .fold(Subset::EMPTY, |acc, c| acc.union(*c))
    }

    /// `C_L \ x`: members avoiding `x`, a linear class of `M \ x`.
    pub fn delete(&self, m: &Matroid, x: usize) -> LinearClass {
        let out = LinearClass {
            members: self
                .members
                .iter()
                .copied()
                .filter(|c| !c.contains(x))
                .collect(),
        };
        if cfg!(debug_assertions) {
            let minor = m.delete(x).expect("deletion of a ground element");
            debug_assert!(check_linear_class(&minor, &out.members)
                .map(|v| v.is_linear())
                .unwrap_or(false));
        }
        out
    }

    /// `C_L / x`: for a loop this is the deletion; otherwise the members
    /// through `x` with `x` removed, plus the members whose closure avoids
    /// `x`. A linear class of `M / x`.
    pub fn contract(&self, m: &Matroid, x: usize) -> LinearClass {
        if m.is_loop(x) {
            return self.delete(m, x);
        }
        let through: BTreeSet<Subset> = self
            .members
            .iter()
            .filter(|c| c.contains(x))
            .map(|c| c.without(x))
            .collect();
        let away: BTreeSet<Subset> = self
            .members
            .iter()
            .copied()
            .filter(|&c| !m.closure(c).contains(x))
            .collect();
        if let Some(c) = through.intersection(&away).next() {
            log::warn!("contraction by {x}: {c} arises from both parts of C_L/{x}");
        }
        let out = LinearClass {
            members: through.union(&away).copied().collect(),
        };
        if cfg!(debug_assertions) {
            let minor = m.contract(x).expect("contraction of a ground element");
            debug_assert!(check_linear_class(&minor, &out.members)
                .map(|v| v.is_linear())
                .unwrap_or(false));
        }
        out
    }

    /// The member of `C_L` lying over a circuit `c` of `C_L / x`: `c ∪ {x}`
    /// when `x ∈ cl(c)`, otherwise `c`.
    pub fn hat_circuit(&self, m: &Matroid, c: Subset, x: usize) -> Result<Subset> {
        if m.is_loop(x) {
            return Err(Error::LoopContraction(x));
        }
        if !self.contract(m, x).contains(c) {
            return Err(Error::NotInContraction {
                circuit: c,
                element: x,
            });
        }
        let hat = if m.closure(c).contains(x) { c.with(x) } else { c };
        debug_assert!(self.contains(hat), "{hat} is not a member of C_L");
        Ok(hat)
    }

    pub fn relabel(&self, map: &[usize]) -> LinearClass {
        LinearClass::unchecked(self.members.iter().map(|c| c.relabel(map)).collect())
    }
}

/// Maximum number of circuits for exhaustive class enumeration.
pub const MAX_ENUMERATED_CIRCUITS: usize = 16;

/// Every linear class of `m`, ordered by size and then lexicographically by
/// circuit index.
pub fn enumerate_linear_classes(m: &Matroid) -> Result<Vec<LinearClass>> {
    let circuits = m.circuits();
    if circuits.len() > MAX_ENUMERATED_CIRCUITS {
        return Err(Error::TooLarge(format!(
            "{} circuits; exhaustive enumeration supports at most {MAX_ENUMERATED_CIRCUITS}",
            circuits.len()
        )));
    }
    // index sets over the circuit list reuse the subset order
    let mut picks: Vec<Subset> = Subset::full(circuits.len()).subsets().collect();
    picks.sort();
    let mut out = Vec::new();
    for pick in picks {
        let family: Vec<Subset> = pick.iter().map(|i| circuits[i - 1]).collect();
        if check_linear_class(m, &family)?.is_linear() {
            out.push(LinearClass::unchecked(family));
        }
    }
    Ok(out)
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
    fn linear_class_examples() {
        let m = u24();
        assert!(check_linear_class(&m, &[s(&[1, 2, 3])]).unwrap().is_linear());
        let verdict = check_linear_class(&m, &[s(&[1, 2, 3]), s(&[1, 2, 4])]).unwrap();
        assert_eq!(
            verdict,
            Verdict::Violation(Violation {
                first: s(&[1, 2, 3]),
                second: s(&[1, 2, 4]),
                missing: s(&[1, 3, 4]),
            })
        );
        assert!(check_linear_class(&m, m.circuits()).unwrap().is_linear());
        assert_eq!(
            check_linear_class(&m, &[s(&[1, 2])]),
            Err(Error::NotACircuit(s(&[1, 2])))
        );
    }

    #[test]
    fn hyperplane_class_examples() {
        let dual = u24().dual();
        assert!(check_hyperplane_class(&dual, &[s(&[4])]).unwrap().is_linear());
        assert!(!check_hyperplane_class(&dual, &[s(&[4]), s(&[3])])
            .unwrap()
            .is_linear());
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert!(check_hyperplane_class(&u13, &u13.hyperplanes())
            .unwrap()
            .is_linear());
        assert_eq!(
            check_hyperplane_class(&dual, &[s(&[1, 2])]),
            Err(Error::NotAHyperplane(s(&[1, 2])))
        );
    }

    #[test]
    fn enumeration_examples() {
        let classes = enumerate_linear_classes(&u24()).unwrap();
        assert_eq!(classes.len(), 6);
        assert!(classes[0].is_empty());
        assert_eq!(classes[5].len(), 4);

        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(enumerate_linear_classes(&u23).unwrap().len(), 2);

        let two_pairs = Matroid::from_circuit_lists(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(enumerate_linear_classes(&two_pairs).unwrap().len(), 4);
    }

    #[test]
    fn deletion_examples() {
        let m = u24();
        let cl = LinearClass::new(&m, &[s(&[1, 2, 3])]).unwrap();
        assert_eq!(cl.delete(&m, 4).members(), &[s(&[1, 2, 3])]);
        assert!(cl.delete(&m, 3).is_empty());
        assert!(LinearClass::empty().delete(&m, 1).is_empty());
    }

    #[test]
    fn contraction_examples() {
        let m = u24();
        let cl = LinearClass::new(&m, &[s(&[1, 2, 3])]).unwrap();
        assert_eq!(cl.contract(&m, 3).members(), &[s(&[1, 2])]);
        assert!(cl.contract(&m, 4).is_empty());

        let looped = Matroid::from_circuit_lists(3, &[vec![1], vec![2, 3]]).unwrap();
        let all = LinearClass::all(&looped);
        assert_eq!(all.contract(&looped, 1), all.delete(&looped, 1));
    }

    #[test]
    fn hat_circuit_examples() {
        let m = u24();
        let cl = LinearClass::new(&m, &[s(&[1, 2, 3])]).unwrap();
        assert_eq!(cl.hat_circuit(&m, s(&[1, 2]), 3).unwrap(), s(&[1, 2, 3]));
        assert_eq!(
            cl.hat_circuit(&m, s(&[1, 4]), 3),
            Err(Error::NotInContraction {
                circuit: s(&[1, 4]),
                element: 3
            })
        );
        // U_{2,3} ⊕ U_{1,1}: the coloop 4 lies outside every closure
        let sum = Matroid::from_circuit_lists(4, &[vec![1, 2, 3]]).unwrap();
        let all = LinearClass::all(&sum);
        assert_eq!(all.hat_circuit(&sum, s(&[1, 2, 3]), 4).unwrap(), s(&[1, 2, 3]));
    }

    #[test]
    fn constructor_rejects_nonlinear_family() {
        let m = u24();
        assert!(LinearClass::new(&m, &[s(&[1, 2, 3]), s(&[1, 2, 4])]).is_err());
    }
}
