//! Brute-force linear algebra in the exterior algebra: spans of explicit
//! elements in reduced row-echelon form, the two-sided ideals behind the
//! bias algebra and the Orlik-Solomon algebra, and normal forms modulo them.
//!
//! Nothing here looks at broken circuits or activity. It is the independent
//! check for the combinatorial side in [`crate::bias`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::ExteriorElement;
use crate::field::{Field, Integers};
use crate::linear_class::LinearClass;
use crate::matroid::Matroid;
use crate::subset::Subset;

/// Largest ground set the oracle will materialize (ambient dimension `2^16`).
pub const MAX_ORACLE_GROUND: usize = 16;

/// A subspace spanned by exterior elements, kept in reduced row-echelon
/// form. Each row's pivot is its largest monomial, has coefficient 1, and
/// appears in no other row.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    rows: BTreeMap<Subset, ExteriorElement<F::Elem>>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn new(field: F) -> Self {
        SubspaceBasis {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the part spanned in each degree `0..=max_degree`.
    pub fn graded_dims(&self, max_degree: usize) -> Vec<usize> {
        let mut dims = vec![0; max_degree + 1];
        for pivot in self.rows.keys() {
            dims[pivot.len()] += 1;
        }
        dims
    }

    pub fn pivots(&self) -> impl Iterator<Item = Subset> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &ExteriorElement<F::Elem>> {
        self.rows.values()
    }

    /// Normal form of `v`: no pivot monomial survives.
    pub fn reduce(&self, v: &ExteriorElement<F::Elem>) -> ExteriorElement<F::Elem> {
        let f = &self.field;
        let mut v = v.clone();
        let mut bound: Option<Subset> = None;
        loop {
            let next = {
                let map = v.terms_map();
                let mut candidates: Box<dyn Iterator<Item = &Subset>> = match bound {
                    None => Box::new(map.keys().rev()),
                    Some(b) => Box::new(map.range(..b).map(|(k, _)| k).rev()),
                };
                candidates.find(|k| self.rows.contains_key(k)).copied()
            };
            let Some(pivot) = next else { break };
            let c = v.coefficient(pivot).cloned().expect("pivot term present");
            v = v.sub(f, &self.rows[&pivot].scale(f, &c));
            bound = Some(pivot);
        }
        v
    }

    pub fn contains(&self, v: &ExteriorElement<F::Elem>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Add `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &ExteriorElement<F::Elem>) -> bool {
        let f = self.field.clone();
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let inv = f.inv(lead).expect("nonzero leading coefficient");
        let r = r.scale(&f, &inv);
        // clear the new pivot from the rows above it
        let affected: Vec<Subset> = self
            .rows
            .range(pivot..)
            .filter(|(_, row)| row.coefficient(pivot).is_some())
            .map(|(k, _)| *k)
            .collect();
        for k in affected {
            let row = &self.rows[&k];
            let c = row.coefficient(pivot).cloned().expect("checked above");
            let updated = row.sub(&f, &r.scale(&f, &c));
            self.rows.insert(k, updated);
        }
        self.rows.insert(pivot, r);
        true
    }
}

/// The exterior algebra on a ground set modulo a two-sided ideal given by
/// homogeneous generators.
#[derive(Clone, Debug)]
pub struct QuotientOracle<F: Field> {
    ground: Subset,
    ideal: SubspaceBasis<F>,
}

impl<F: Field> QuotientOracle<F> {
    /// Ideal spanned by `e_X ∧ g` over all monomials `e_X` and generators
    /// `g`. For homogeneous generators these left multiples already span
    /// the two-sided ideal, since `e_X ∧ g ∧ e_Y = ±e_X ∧ e_Y ∧ g`.
    pub fn from_generators(
        field: F,
        ground: Subset,
        generators: &[ExteriorElement<i64>],
    ) -> Result<Self> {
        if ground.len() > MAX_ORACLE_GROUND {
            return Err(Error::TooLarge(format!(
                "the exterior oracle supports at most {MAX_ORACLE_GROUND} generators, got {}",
                ground.len()
            )));
        }
        let mut ideal = SubspaceBasis::new(field.clone());
        let z = &Integers;
        for g in generators {
            debug_assert!(g.is_zero() || g.degree().is_some(), "inhomogeneous generator");
            for x in ground.subsets() {
                let product = ExteriorElement::monomial(z, x).wedge(z, g);
                if !product.is_zero() {
                    ideal.insert(&product.to_ring(&field));
                }
            }
        }
        Ok(QuotientOracle { ground, ideal })
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    pub fn ideal(&self) -> &SubspaceBasis<F> {
        &self.ideal
    }

    pub fn field(&self) -> &F {
        self.ideal.field()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.dim()
    }

    pub fn quotient_dim(&self) -> usize {
        (1usize << self.ground.len()) - self.ideal.dim()
    }

    /// Graded dimensions of the quotient, degrees `0..=|ground|`.
    pub fn quotient_graded_dims(&self) -> Vec<usize> {
        let n = self.ground.len();
        let ideal = self.ideal.graded_dims(n);
        (0..=n)
            .map(|k| binomial(n, k) - ideal[k])
            .collect()
    }

    /// Graded dimensions with trailing zeros removed.
    pub fn quotient_graded_dims_trimmed(&self) -> Vec<usize> {
        trim(self.quotient_graded_dims())
    }

    pub fn reduce(&self, v: &ExteriorElement<F::Elem>) -> ExteriorElement<F::Elem> {
        self.ideal.reduce(v)
    }

    pub fn is_zero(&self, v: &ExteriorElement<F::Elem>) -> bool {
        self.ideal.contains(v)
    }

    /// Whether an integer element vanishes in the quotient.
    pub fn vanishes(&self, v: &ExteriorElement<i64>) -> bool {
        self.is_zero(&v.to_ring(self.field()))
    }
}

pub(crate) fn trim(mut dims: Vec<usize>) -> Vec<usize> {
    while dims.len() > 1 && dims.last() == Some(&0) {
        dims.pop();
    }
    dims
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `{∂e_C : C ∈ C_L, |C| > 1} ∪ {e_C : C ∈ C(M)}`.
pub fn bias_generators(m: &Matroid, cl: &LinearClass) -> Vec<ExteriorElement<i64>> {
    let z = &Integers;
    let mut out: Vec<ExteriorElement<i64>> = cl
        .members()
        .iter()
        .filter(|c| c.len() > 1)
        .map(|&c| ExteriorElement::monomial(z, c).boundary(z))
        .collect();
    out.extend(m.circuits().iter().map(|&c| ExteriorElement::monomial(z, c)));
    out
}

/// Which generating set to use for the Orlik-Solomon ideal. The two are
/// known to span the same ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OsGenerators {
    /// `∂e_C` for `|C| > 1` and `e_C` only for loops.
    LoopsOnly,
    /// `∂e_C` for `|C| > 1` and `e_C` for every circuit.
    AllCircuits,
}

pub fn os_generators(m: &Matroid, which: OsGenerators) -> Vec<ExteriorElement<i64>> {
    let z = &Integers;
    let mut out = Vec::new();
    for &c in m.circuits() {
        if c.len() > 1 {
            out.push(ExteriorElement::monomial(z, c).boundary(z));
        }
        if c.len() == 1 || which == OsGenerators::AllCircuits {
            out.push(ExteriorElement::monomial(z, c));
        }
    }
    out
}

/// `E / ⟨ℑ(C_L)⟩`, the presentation of the bias algebra.
pub fn ideal_basis<F: Field>(m: &Matroid, cl: &LinearClass, field: F) -> Result<QuotientOracle<F>> {
    QuotientOracle::from_generators(field, m.ground(), &bias_generators(m, cl))
}

/// The Orlik-Solomon algebra of `m`.
pub fn os_algebra<F: Field>(m: &Matroid, field: F) -> Result<QuotientOracle<F>> {
    QuotientOracle::from_generators(field, m.ground(), &os_generators(m, OsGenerators::AllCircuits))
}

/// `OS(N) / ⟨e_p⟩` for a point `p` of `N`.
pub fn pointed_os_algebra<F: Field>(n: &Matroid, point: usize, field: F) -> Result<QuotientOracle<F>> {
    let mut gens = os_generators(n, OsGenerators::AllCircuits);
    gens.push(ExteriorElement::monomial(&Integers, Subset::singleton(point)));
    QuotientOracle::from_generators(field, n.ground(), &gens)
}
