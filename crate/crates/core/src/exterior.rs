//! Elements of the exterior algebra on generators `e_1, ..., e_n`, stored as
//! sparse maps from monomials `e_X` (increasing wedge order) to scalars.

use std::collections::BTreeMap;

use crate::field::Ring;
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorElement<T> {
    terms: BTreeMap<Subset, T>,
}

impl<T> Default for ExteriorElement<T> {
    fn default() -> Self {
        ExteriorElement {
            terms: BTreeMap::new(),
        }
    }
}

/// Sign of `e_X ∧ e_Y` relative to `e_{X ∪ Y}`, or 0 when they overlap.
pub fn wedge_sign(x: Subset, y: Subset) -> i64 {
    if !x.is_disjoint(y) {
        return 0;
    }
    let inversions: usize = y.iter().map(|b| x.count_above(b)).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl<T: Clone + PartialEq> ExteriorElement<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial<R: Ring<Elem = T>>(ring: &R, x: Subset) -> Self {
        Self::term(ring, x, ring.one())
    }

    pub fn term<R: Ring<Elem = T>>(ring: &R, x: Subset, coefficient: T) -> Self {
        let mut out = Self::zero();
        out.add_term(ring, x, coefficient);
        out
    }

    pub fn from_terms<R, I>(ring: &R, terms: I) -> Self
    where
        R: Ring<Elem = T>,
        I: IntoIterator<Item = (Subset, T)>,
    {
        let mut out = Self::zero();
        for (x, c) in terms {
            out.add_term(ring, x, c);
        }
        out
    }

    pub fn add_term<R: Ring<Elem = T>>(&mut self, ring: &R, x: Subset, coefficient: T) {
        if ring.is_zero(&coefficient) {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(c) => {
                let sum = ring.add(c, &coefficient);
                if ring.is_zero(&sum) {
                    self.terms.remove(&x);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(x, coefficient);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: Subset) -> Option<&T> {
        self.terms.get(&x)
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Subset, &T)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub(crate) fn terms_map(&self) -> &BTreeMap<Subset, T> {
        &self.terms
    }

    /// Largest monomial with a nonzero coefficient.
    pub fn leading(&self) -> Option<(Subset, &T)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    /// Common degree of all terms, if the element is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|k| k.len());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn support(&self) -> Subset {
        self.terms
            .keys()
            .fold(Subset::EMPTY, |acc, k| acc.union(*k))
    }

    pub fn add<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(ring, *k, v.clone());
        }
        out
    }

    pub fn scale<R: Ring<Elem = T>>(&self, ring: &R, c: &T) -> Self {
        Self::from_terms(ring, self.terms.iter().map(|(k, v)| (*k, ring.mul(c, v))))
    }

    pub fn neg<R: Ring<Elem = T>>(&self, ring: &R) -> Self {
        self.scale(ring, &ring.from_i64(-1))
    }

    pub fn sub<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    /// Bilinear extension of `e_X ∧ e_Y = sign(X, Y) e_{X ∪ Y}`.
    pub fn wedge<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let sign = wedge_sign(*x, *y);
                if sign != 0 {
                    out.add_term(ring, x.union(*y), ring.mul(&ring.from_i64(sign), &ring.mul(a, b)));
                }
            }
        }
        out
    }

    /// `∂ e_X = Σ_j (-1)^(j-1) e_{X \ x_j}` for `X = {x_1 < ... < x_m}`,
    /// so that `∂ e_i = 1` and `∂` is a graded derivation.
    pub fn boundary<R: Ring<Elem = T>>(&self, ring: &R) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            for (j, xj) in x.iter().enumerate() {
                let c = if j % 2 == 0 { a.clone() } else { ring.neg(a) };
                out.add_term(ring, x.without(xj), c);
            }
        }
        out
    }

    /// Re-express the coefficients in another ring.
    pub fn map_ring<S, F>(&self, target: &S, f: F) -> ExteriorElement<S::Elem>
    where
        S: Ring,
        F: Fn(&T) -> S::Elem,
    {
        ExteriorElement::from_terms(target, self.terms.iter().map(|(k, v)| (*k, f(v))))
    }

    /// Rename generators; `map[x]` is the new id of `x`.
    pub fn relabel<R: Ring<Elem = T>>(&self, ring: &R, map: &[usize]) -> Self {
        Self::from_terms(
            ring,
            self.terms.iter().map(|(k, v)| {
                let image: Vec<usize> = k.iter().map(|x| map[x]).collect();
                let sign = crate::subset::sorting_sign(&image);
                (k.relabel(map), ring.mul(&ring.from_i64(sign), v))
            }),
        )
    }
}

impl ExteriorElement<i64> {
    /// Integer element into any ring.
    pub fn to_ring<R: Ring>(&self, ring: &R) -> ExteriorElement<R::Elem> {
        self.map_ring(ring, |v| ring.from_i64(*v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Integers, Ring};

    fn s(xs: &[usize]) -> Subset {
        Subset::from_elements(xs.iter().copied())
    }

    fn e(xs: &[usize]) -> ExteriorElement<i64> {
        ExteriorElement::monomial(&Integers, s(xs))
    }

    fn poly(terms: &[(&[usize], i64)]) -> ExteriorElement<i64> {
        ExteriorElement::from_terms(&Integers, terms.iter().map(|(x, c)| (s(x), *c)))
    }

    #[test]
    fn wedge_examples() {
        let z = &Integers;
        assert_eq!(e(&[1]).wedge(z, &e(&[2])), e(&[1, 2]));
        assert_eq!(e(&[2]).wedge(z, &e(&[1])), e(&[1, 2]).neg(z));
        assert!(e(&[1]).wedge(z, &e(&[1])).is_zero());
        assert_eq!(e(&[3]).wedge(z, &e(&[1, 2])), e(&[1, 2, 3]));
        assert_eq!(e(&[2]).wedge(z, &e(&[1, 3])), e(&[1, 2, 3]).neg(z));
    }

    #[test]
    fn boundary_examples() {
        let z = &Integers;
        assert_eq!(e(&[1]).boundary(z), e(&[]));
        assert_eq!(e(&[1, 2]).boundary(z), poly(&[(&[2], 1), (&[1], -1)]));
        assert_eq!(
            e(&[1, 2, 3]).boundary(z),
            poly(&[(&[2, 3], 1), (&[1, 3], -1), (&[1, 2], 1)])
        );
        assert!(e(&[]).boundary(z).is_zero());
    }

    #[test]
    fn degree_and_leading_term() {
        let a = poly(&[(&[1, 2], 1), (&[2, 3], -2)]);
        assert_eq!(a.degree(), Some(2));
        assert_eq!(a.leading(), Some((s(&[2, 3]), &-2)));
        assert_eq!(poly(&[(&[1], 1), (&[1, 2], 1)]).degree(), None);
    }

    #[test]
    fn relabel_tracks_signs() {
        let z = &Integers;
        // swap 1 and 2
        let map = [0, 2, 1, 3];
        assert_eq!(e(&[1, 2]).relabel(z, &map), e(&[1, 2]).neg(z));
        assert_eq!(e(&[1, 3]).relabel(z, &map), e(&[2, 3]));
        assert_eq!(z.from_i64(3), 3);
    }
}
