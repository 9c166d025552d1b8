use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::exterior::ExteriorElement;
use crate::field::Integers;
use crate::subset::Subset;

/// An element of a bias algebra written in its NBC basis. Coefficients are
/// integers: the NBC monomials form a basis over the integers, and any
/// field receives them through its prime ring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientElement {
    coords: BTreeMap<Subset, i64>,
}

impl QuotientElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `e_I`; the caller guarantees `I` is NBC.
    pub fn basis(nbc_set: Subset) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(nbc_set, 1);
        QuotientElement { coords }
    }

    pub fn from_coords<I: IntoIterator<Item = (Subset, i64)>>(coords: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in coords {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, set: Subset, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coords.entry(set).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.coords.remove(&set);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: i64, other: &QuotientElement) {
        for (k, v) in &other.coords {
            self.add_term(*k, c.checked_mul(*v).expect("coefficient overflow"));
        }
    }

    pub fn scaled(&self, c: i64) -> QuotientElement {
        let mut out = Self::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn coefficient(&self, set: Subset) -> i64 {
        self.coords.get(&set).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, i64)> + '_ {
        self.coords.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The same combination read as an element of the exterior algebra.
    pub fn to_exterior(&self) -> ExteriorElement<i64> {
        ExteriorElement::from_terms(&Integers, self.terms())
    }
}

#[derive(Serialize)]
struct Term {
    set: Subset,
    coefficient: i64,
}

impl Serialize for QuotientElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms().map(|(set, coefficient)| Term { set, coefficient }))
    }
}
