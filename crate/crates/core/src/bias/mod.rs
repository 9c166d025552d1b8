//! The bias algebra `Z(M, C_L)` computed combinatorially: activity,
//! unidependent sets, broken circuits, the NBC basis, straightening of
//! arbitrary monomials, and the deletion/contraction maps.
//!
//! Every sign used while rewriting is read off an actual product in the
//! exterior algebra, never tabulated by hand.

mod element;
mod maps;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::ExteriorElement;
use crate::field::{Field, Integers};
use crate::linear_class::LinearClass;
use crate::matroid::Matroid;
use crate::oracle::{self, QuotientOracle, MAX_ORACLE_GROUND};
use crate::subset::Subset;

pub use element::QuotientElement;
pub use maps::SequenceReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Activity {
    Active,
    Inactive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActivityReport {
    pub subject: Subset,
    pub active_elements: Subset,
    /// Smallest active element, present exactly when the set is active.
    pub smallest_active: Option<usize>,
    pub classification: Activity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Unidependence {
    ActiveUni,
    InactiveUni,
    NotUnidependent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnidependentReport {
    pub subject: Subset,
    /// The unique circuit, when the set is unidependent.
    pub circuit: Option<Subset>,
    pub classification: Unidependence,
}

/// Independent sets containing no broken circuit, sorted in the canonical
/// subset order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NbcBasis {
    sets: Vec<Subset>,
}

impl NbcBasis {
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, set: Subset) -> Option<usize> {
        self.sets.binary_search(&set).ok()
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.index_of(set).is_some()
    }

    pub fn of_degree(&self, k: usize) -> impl Iterator<Item = Subset> + '_ {
        self.sets.iter().copied().filter(move |s| s.len() == k)
    }

    /// Number of basis sets of each size, without trailing zeros.
    pub fn graded_dims(&self) -> Vec<usize> {
        let top = self.sets.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut dims = vec![0; top + 1];
        for s in &self.sets {
            dims[s.len()] += 1;
        }
        dims
    }
}

/// A matroid with a linear class, plus caches for straightening and for
/// the contractions reached by the flag functionals. Caches are behind
/// mutexes; every method takes `&self`.
pub struct BiasAlgebra {
    matroid: Matroid,
    class: LinearClass,
    nbc: OnceLock<NbcBasis>,
    expansions: Mutex<HashMap<Subset, QuotientElement>>,
    contractions: Mutex<HashMap<usize, Arc<BiasAlgebra>>>,
}

impl Clone for BiasAlgebra {
    fn clone(&self) -> Self {
        BiasAlgebra::new(self.matroid.clone(), self.class.clone())
    }
}

impl std::fmt::Debug for BiasAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BiasAlgebra")
            .field("matroid", &self.matroid)
            .field("class", &self.class)
            .finish()
    }
}

impl BiasAlgebra {
    /// The class is trusted to be linear for `matroid`; build it with
    /// [`LinearClass::new`] or [`crate::enumerate_linear_classes`].
    pub fn new(matroid: Matroid, class: LinearClass) -> Self {
        BiasAlgebra {
            matroid,
            class,
            nbc: OnceLock::new(),
            expansions: Mutex::new(HashMap::new()),
            contractions: Mutex::new(HashMap::new()),
        }
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn class(&self) -> &LinearClass {
        &self.class
    }

    /// `C \ min(C)` for every member with at least two elements.
    pub fn broken_circuits(&self) -> Vec<Subset> {
        self.class
            .members()
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.without(c.first().expect("nonempty circuit")))
            .collect()
    }

    pub fn activity(&self, set: Subset) -> Result<ActivityReport> {
        let m = &self.matroid;
        if !m.is_independent(set) {
            return Err(Error::NotIndependent(set));
        }
        let span = m.closure(set).difference(set);
        let active_elements: Subset = span
            .iter()
            .filter(|&x| !m.is_loop(x))
            .filter(|&x| {
                let c = m.fundamental_circuit(x, set).expect("x spans with set");
                c.first() == Some(x) && self.class.contains(c)
            })
            .collect();
        let smallest_active = active_elements.first();
        Ok(ActivityReport {
            subject: set,
            active_elements,
            smallest_active,
            classification: if smallest_active.is_some() {
                Activity::Active
            } else {
                Activity::Inactive
            },
        })
    }

    pub fn classify_unidependent(&self, set: Subset) -> UnidependentReport {
        let not = UnidependentReport {
            subject: set,
            circuit: None,
            classification: Unidependence::NotUnidependent,
        };
        let mut inside = self.matroid.circuits_within(set);
        let (Some(c), None) = (inside.next(), inside.next()) else {
            return not;
        };
        if c.len() < 2 || !self.class.contains(c) {
            return not;
        }
        let low = c.first().expect("nonempty circuit");
        let rest = self.activity(set.without(low)).expect("one circuit removed");
        let classification = if rest.smallest_active == Some(low) {
            Unidependence::InactiveUni
        } else {
            Unidependence::ActiveUni
        };
        UnidependentReport {
            subject: set,
            circuit: Some(c),
            classification,
        }
    }

    pub fn is_nbc(&self, set: Subset) -> bool {
        self.matroid.is_independent(set)
            && self
                .broken_circuits()
                .iter()
                .all(|b| !b.is_subset_of(set))
    }

    pub fn nbc_basis(&self) -> &NbcBasis {
        self.nbc.get_or_init(|| {
            let broken = self.broken_circuits();
            let ok = |s: Subset| {
                self.matroid.is_independent(s) && broken.iter().all(|b| !b.is_subset_of(s))
            };
            // the family is closed under subsets, so grow sets by larger elements
            let mut sets = vec![Subset::EMPTY];
            let mut stack = vec![Subset::EMPTY];
            let elements = self.matroid.ground().to_vec();
            while let Some(s) = stack.pop() {
                let floor = s.last().unwrap_or(0);
                for &x in elements.iter().filter(|&&x| x > floor) {
                    let t = s.with(x);
                    if ok(t) {
                        sets.push(t);
                        stack.push(t);
                    }
                }
            }
            sets.sort();
            NbcBasis { sets }
        })
    }

    /// Graded NBC counts, i.e. the Poincaré polynomial coefficients.
    pub fn poincare_polynomial(&self) -> Vec<usize> {
        self.nbc_basis().graded_dims()
    }

    pub fn dim(&self) -> usize {
        self.nbc_basis().len()
    }

    /// `{∂e_U : U inactive unidependent} ∪ {e_D : D dependent}`, a basis of
    /// the ideal.
    pub fn b_basis(&self) -> Result<Vec<ExteriorElement<i64>>> {
        let ground = self.matroid.ground();
        if ground.len() > MAX_ORACLE_GROUND {
            return Err(Error::TooLarge(format!(
                "{} elements; the ideal basis is materialized for at most {MAX_ORACLE_GROUND}",
                ground.len()
            )));
        }
        let z = &Integers;
        let mut sets: Vec<Subset> = ground.subsets().collect();
        sets.sort();
        let mut out = Vec::new();
        for s in sets {
            if !self.matroid.is_independent(s) {
                if self.classify_unidependent(s).classification == Unidependence::InactiveUni {
                    out.push(ExteriorElement::monomial(z, s).boundary(z));
                }
                out.push(ExteriorElement::monomial(z, s));
            }
        }
        Ok(out)
    }

    /// Active independent sets paired with `I ∪ a(I)`.
    pub fn activity_bijection(&self) -> Vec<(Subset, Subset)> {
        self.matroid
            .independent_sets()
            .into_iter()
            .filter_map(|i| {
                let report = self.activity(i).expect("independent");
                report.smallest_active.map(|a| (i, i.with(a)))
            })
            .collect()
    }

    /// Expansion of `e_X` in the NBC basis.
    pub fn straighten(&self, set: Subset) -> QuotientElement {
        if !self.matroid.is_independent(set) {
            return QuotientElement::zero();
        }
        if let Some(hit) = self.expansions.lock().expect("memo lock").get(&set) {
            return hit.clone();
        }
        let report = self.activity(set).expect("independent");
        let result = match report.smallest_active {
            None => QuotientElement::basis(set),
            Some(a) => {
                // ∂e_C ∧ e_R vanishes in Z for C = C(a, X) and R = X \ C;
                // its e_X term is ±1 and all others are lex-smaller
                let z = &Integers;
                let circuit = self
                    .matroid
                    .fundamental_circuit(a, set)
                    .expect("active element spans");
                let rest = set.difference(circuit);
                let relation = ExteriorElement::monomial(z, circuit)
                    .boundary(z)
                    .wedge(z, &ExteriorElement::monomial(z, rest));
                let lead = *relation.coefficient(set).expect("X occurs in the relation");
                debug_assert!(lead == 1 || lead == -1);
                let mut out = QuotientElement::zero();
                for (other, c) in relation.terms() {
                    if other != set {
                        out.add_scaled(-c * lead, &self.straighten(other));
                    }
                }
                out
            }
        };
        self.expansions
            .lock()
            .expect("memo lock")
            .insert(set, result.clone());
        result
    }

    /// Expansion of an arbitrary integer combination of monomials.
    pub fn straighten_element(&self, v: &ExteriorElement<i64>) -> QuotientElement {
        let mut out = QuotientElement::zero();
        for (set, c) in v.terms() {
            out.add_scaled(*c, &self.straighten(set));
        }
        out
    }

    /// `(M \ x, C_L \ x)`.
    pub fn deletion(&self, x: usize) -> Result<BiasAlgebra> {
        let m = self.matroid.delete(x)?;
        let class = self.class.delete(&self.matroid, x);
        Ok(BiasAlgebra::new(m, class))
    }

    /// `(M / x, C_L / x)`, cached.
    pub fn contraction(&self, x: usize) -> Result<Arc<BiasAlgebra>> {
        if let Some(hit) = self.contractions.lock().expect("cache lock").get(&x) {
            return Ok(Arc::clone(hit));
        }
        let m = self.matroid.contract(x)?;
        let class = self.class.contract(&self.matroid, x);
        let out = Arc::new(BiasAlgebra::new(m, class));
        self.contractions
            .lock()
            .expect("cache lock")
            .insert(x, Arc::clone(&out));
        Ok(out)
    }

    /// Rename elements by `map` (index 0 unused).
    pub fn relabel(&self, map: &[usize]) -> BiasAlgebra {
        BiasAlgebra::new(self.matroid.relabel(map), self.class.relabel(map))
    }

    /// The brute-force presentation of the same algebra.
    pub fn oracle<F: Field>(&self, field: F) -> Result<QuotientOracle<F>> {
        oracle::ideal_basis(&self.matroid, &self.class, field)
    }
}
