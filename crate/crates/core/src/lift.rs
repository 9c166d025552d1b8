//! The extended lift `N` of a matroid `M` with a linear class `C_L`: a
//! matroid on `E ∪ {p}`, `p = n + 1`, whose dual is the single-element
//! extension of `M*` putting `p` on exactly the hyperplanes `E \ C`,
//! `C ∈ C_L`.
//!
//! Three routes are provided. [`extended_lift`] evaluates the circuit
//! formula, [`lift_dual_hyperplanes`] the hyperplane family of `N*`, and
//! [`lift_by_modular_cut`] builds `N*` directly from the modular cut of
//! `M*` and dualizes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear_class::LinearClass;
use crate::matroid::{minimal_members, Matroid};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// A member of `C_L`.
    #[serde(rename = "C_L")]
    FromClass,
    /// `C ∪ {p}` for a circuit `C` outside `C_L`.
    #[serde(rename = "C_1")]
    FromUnbalanced,
    /// `C' ∪ C''` for a modular pair outside `C_L`.
    #[serde(rename = "C_2")]
    FromModularPair,
}

#[derive(Clone, Debug)]
pub struct LiftMatroid {
    pub matroid: Matroid,
    pub new_element: usize,
    pub provenance: BTreeMap<Subset, Provenance>,
    /// Whether the modular-pair unions entered the candidate family.
    pub includes_pair_unions: bool,
}

/// Circuits of `C(M) \ C_L` forming modular pairs, in canonical order.
fn outside_modular_pairs(m: &Matroid, cl: &LinearClass) -> Vec<(Subset, Subset)> {
    let outside: Vec<Subset> = m
        .circuits()
        .iter()
        .copied()
        .filter(|&c| !cl.contains(c))
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i + 1..] {
            let u = a.union(b);
            if m.rank(u) + 2 == u.len() {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Whether the lift omits the pair unions: the union `U` of `C_L` has
/// nullity `|E| - r(M) - 1`. The same condition read on the dual side is
/// `r*(∩ H(C)) = 1`; both are evaluated and must agree.
fn omits_pair_unions(m: &Matroid, cl: &LinearClass) -> bool {
    let support = cl.support();
    let primal = support.len() - m.rank(support) + m.full_rank() + 1 == m.ground().len();
    if !cl.is_empty() {
        let meet = m.ground().difference(support);
        let dual = m.dual_rank(meet) == 1;
        debug_assert_eq!(primal, dual, "lift dichotomy disagrees between M and M*");
    }
    primal
}

fn check_lift_size(m: &Matroid) -> Result<usize> {
    let p = m.n() + 1;
    if p > crate::matroid::MAX_GROUND {
        return Err(Error::TooLarge(format!(
            "the lift needs element {p}, beyond the limit of {}",
            crate::matroid::MAX_GROUND
        )));
    }
    Ok(p)
}

/// Extended lift by the circuit formula. When the candidate family is not
/// an antichain its minimal members are taken.
pub fn extended_lift(m: &Matroid, cl: &LinearClass) -> Result<LiftMatroid> {
    let p = check_lift_size(m)?;
    let ground = m.ground().with(p);

    if cl.is_everything(m) {
        let matroid = Matroid::on_ground(p, ground, m.circuits().iter().copied())?;
        let provenance = m
            .circuits()
            .iter()
            .map(|&c| (c, Provenance::FromClass))
            .collect();
        return Ok(LiftMatroid {
            matroid,
            new_element: p,
            provenance,
            includes_pair_unions: false,
        });
    }

    let mut candidates: Vec<Subset> = cl.members().to_vec();
    candidates.extend(
        m.circuits()
            .iter()
            .filter(|&&c| !cl.contains(c))
            .map(|c| c.with(p)),
    );
    let includes_pair_unions = !omits_pair_unions(m, cl);
    if includes_pair_unions {
        candidates.extend(outside_modular_pairs(m, cl).into_iter().map(|(a, b)| a.union(b)));
    }
    candidates.sort();
    candidates.dedup();
    let circuits = minimal_members(&candidates);
    let provenance = circuits
        .iter()
        .map(|&c| {
            let tag = if c.contains(p) {
                Provenance::FromUnbalanced
            } else if cl.contains(c) {
                Provenance::FromClass
            } else {
                Provenance::FromModularPair
            };
            (c, tag)
        })
        .collect();
    let matroid = Matroid::on_ground(p, ground, circuits)?;
    Ok(LiftMatroid {
        matroid,
        new_element: p,
        provenance,
        includes_pair_unions,
    })
}

/// The hyperplane family of `N*` read off the linear class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualHyperplanes {
    pub new_element: usize,
    /// `H(C) ∪ {p}` for `C ∈ C_L`.
    pub through_new: Vec<Subset>,
    /// `H(C)` for circuits outside `C_L`.
    pub unchanged: Vec<Subset>,
    /// `H' ∩ H'' ∪ {p}` for modular pairs outside the class.
    pub pair_meets: Vec<Subset>,
}

impl DualHyperplanes {
    pub fn all(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self
            .through_new
            .iter()
            .chain(&self.unchanged)
            .chain(&self.pair_meets)
            .copied()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Complements in `E ∪ {p}` of the maximal members, i.e. circuits of `N`.
    pub fn circuits_of_lift(&self, ground: Subset) -> Vec<Subset> {
        let full = ground.with(self.new_element);
        let complements: Vec<Subset> = self.all().into_iter().map(|h| full.difference(h)).collect();
        minimal_members(&complements)
    }
}

/// Requires `C_L` to be neither empty nor all of `C(M)`.
pub fn lift_dual_hyperplanes(m: &Matroid, cl: &LinearClass) -> Result<DualHyperplanes> {
    if cl.is_empty() || cl.is_everything(m) {
        return Err(Error::HypothesisViolated(
            "the hyperplane description needs a class other than the empty class and C(M)".into(),
        ));
    }
    let p = check_lift_size(m)?;
    let e = m.ground();
    let dual = m.dual();
    let through_new = cl.members().iter().map(|c| e.difference(*c).with(p)).collect();
    let outside: Vec<Subset> = m
        .circuits()
        .iter()
        .filter(|&&c| !cl.contains(c))
        .map(|c| e.difference(*c))
        .collect();
    let mut pair_meets = Vec::new();
    if !omits_pair_unions(m, cl) {
        for (i, &a) in outside.iter().enumerate() {
            for &b in &outside[i + 1..] {
                if dual.is_modular_pair(a, b) {
                    pair_meets.push(a.intersection(b).with(p));
                }
            }
        }
    }
    pair_meets.sort();
    pair_meets.dedup();
    let mut unchanged = outside;
    unchanged.sort();
    Ok(DualHyperplanes {
        new_element: p,
        through_new,
        unchanged,
        pair_meets,
    })
}

/// Lift through the modular cut of `M*` generated by `{E \ C : C ∈ C_L}`:
/// a flat `F` of `M*` is in the cut when every hyperplane containing it is
/// in the family; `p` joins exactly the closures of cut flats.
pub fn lift_by_modular_cut(m: &Matroid, cl: &LinearClass) -> Result<Matroid> {
    let p = check_lift_size(m)?;
    let e = m.ground();
    let dual = m.dual();
    let hyperplanes = dual.hyperplanes();
    let chosen: Vec<Subset> = cl.members().iter().map(|c| e.difference(*c)).collect();
    let in_cut = |flat: Subset| {
        hyperplanes
            .iter()
            .filter(|h| flat.is_subset_of(**h))
            .all(|h| chosen.contains(h))
    };
    let extension = Matroid::from_independence(p, e.with(p), |s| {
        let base = s.without(p);
        if !dual.is_independent(base) {
            return false;
        }
        !s.contains(p) || !in_cut(dual.closure(base))
    })?;
    Ok(extension.dual())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[usize]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    #[test]
    fn lift_of_u24_with_one_circuit() {
        let m = Matroid::uniform(2, 4).unwrap();
        let cl = LinearClass::new(&m, &[s(&[1, 2, 3])]).unwrap();
        let lift = extended_lift(&m, &cl).unwrap();
        let mut expected = vec![s(&[1, 2, 3]), s(&[1, 2, 4, 5]), s(&[1, 3, 4, 5]), s(&[2, 3, 4, 5])];
        expected.sort();
        assert_eq!(lift.matroid.circuits(), expected.as_slice());
        assert!(!lift.includes_pair_unions);
        assert_eq!(lift.provenance[&s(&[1, 2, 3])], Provenance::FromClass);
        assert_eq!(lift.provenance[&s(&[1, 2, 4, 5])], Provenance::FromUnbalanced);
        assert_eq!(lift_by_modular_cut(&m, &cl).unwrap(), lift.matroid);
    }

    #[test]
    fn lift_special_cases() {
        let m = Matroid::uniform(2, 3).unwrap();
        let full = extended_lift(&m, &LinearClass::all(&m)).unwrap();
        assert_eq!(full.matroid.circuits(), &[s(&[1, 2, 3])]);
        assert_eq!(full.matroid.ground(), s(&[1, 2, 3, 4]));
        assert_eq!(full.matroid.rank(s(&[4])), 1);
        assert_eq!(full.matroid.full_rank(), 3);

        let free = extended_lift(&m, &LinearClass::empty()).unwrap();
        assert_eq!(free.matroid.circuits(), &[s(&[1, 2, 3, 4])]);
        assert_eq!(free.matroid, Matroid::uniform(3, 4).unwrap());
    }

    #[test]
    fn dual_hyperplanes_of_u24() {
        let m = Matroid::uniform(2, 4).unwrap();
        let cl = LinearClass::new(&m, &[s(&[1, 2, 3])]).unwrap();
        let h = lift_dual_hyperplanes(&m, &cl).unwrap();
        assert_eq!(h.through_new, vec![s(&[4, 5])]);
        assert_eq!(h.unchanged, vec![s(&[1]), s(&[2]), s(&[3])]);
        assert!(h.pair_meets.is_empty());
        let lift = extended_lift(&m, &cl).unwrap();
        assert_eq!(h.circuits_of_lift(m.ground()), lift.matroid.circuits());
    }

    #[test]
    fn dual_hyperplanes_reject_trivial_classes() {
        let m = Matroid::uniform(2, 4).unwrap();
        assert!(matches!(
            lift_dual_hyperplanes(&m, &LinearClass::empty()),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            lift_dual_hyperplanes(&m, &LinearClass::all(&m)),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn pair_unions_are_minimalized() {
        // U_{2,5} with one balanced triangle: {1,2,4} ∪ {1,3,4} contains {1,2,3}
        let m = Matroid::uniform(2, 5).unwrap();
        let cl = LinearClass::new(&m, &[s(&[1, 2, 3])]).unwrap();
        let lift = extended_lift(&m, &cl).unwrap();
        assert!(lift.includes_pair_unions);
        assert!(!lift.matroid.is_circuit(s(&[1, 2, 3, 4])));
        assert_eq!(lift_by_modular_cut(&m, &cl).unwrap(), lift.matroid);
    }
}
