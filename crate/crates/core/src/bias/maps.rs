//! The maps `i_x`, `p_x` and the splitting `p_x^{-1}` between a bias algebra
//! and those of its deletion and contraction, the flag functionals built
//! from iterated contractions, and the permutation formula for expansion
//! coefficients.

use std::sync::Arc;

use serde::Serialize;

use super::{BiasAlgebra, QuotientElement};
use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::oracle::SubspaceBasis;
use crate::subset::{sorting_sign, Subset};

fn parity(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl BiasAlgebra {
    fn require_non_loop(&self, x: usize) -> Result<()> {
        if !self.matroid().ground().contains(x) {
            return Err(Error::OutOfRange {
                element: x,
                n: self.matroid().n(),
            });
        }
        if self.matroid().is_loop(x) {
            return Err(Error::LoopContraction(x));
        }
        Ok(())
    }

    /// `i_x`: an element of `Z(M \ x)` in its NBC basis, mapped by
    /// `e_I ↦ e_I` and rewritten in the NBC basis of `Z(M)`.
    pub fn map_i(&self, v: &QuotientElement) -> QuotientElement {
        let mut out = QuotientElement::zero();
        for (set, c) in v.terms() {
            out.add_scaled(c, &self.straighten(set));
        }
        out
    }

    /// `p_x(e_I)` for a single monomial, in the NBC basis of `Z(M / x)`.
    ///
    /// If `x = i_j` sits in `I` (of size `l`) the image is
    /// `(-1)^(l-j) e_{I \ x}`: `x` is contracted from the right. If instead
    /// some `y ∈ I` forms a two-element member `{x, y}` of `C_L`, then
    /// `e_I = χ e_{I \ y ∪ x}` with `χ` the sign of putting `x` in the
    /// place of `y`, and the first rule applies. Otherwise the image is 0.
    pub fn p_monomial(&self, x: usize, set: Subset) -> Result<QuotientElement> {
        self.require_non_loop(x)?;
        let target = self.contraction(x)?;
        if !self.matroid().is_independent(set) {
            return Ok(QuotientElement::zero());
        }
        let (sign, swapped) = if set.contains(x) {
            (1, set)
        } else {
            let partner = set
                .iter()
                .find(|&y| self.class().contains(Subset::from_elements([x, y])));
            let Some(y) = partner else {
                return Ok(QuotientElement::zero());
            };
            let replaced: Vec<usize> = set.iter().map(|i| if i == y { x } else { i }).collect();
            (sorting_sign(&replaced), set.without(y).with(x))
        };
        let j = swapped.position(x).expect("x placed");
        let sign = sign * parity(swapped.len() - j);
        Ok(target.straighten(swapped.without(x)).scaled(sign))
    }

    /// `p_x` on an element in the NBC basis of `Z(M)`.
    pub fn map_p(&self, x: usize, v: &QuotientElement) -> Result<QuotientElement> {
        self.require_non_loop(x)?;
        let mut out = QuotientElement::zero();
        for (set, c) in v.terms() {
            out.add_scaled(c, &self.p_monomial(x, set)?);
        }
        Ok(out)
    }

    /// The splitting `e_I ↦ e_I ∧ e_x` from `Z(M / x)` back into `Z(M)`.
    pub fn map_p_inverse(&self, x: usize, v: &QuotientElement) -> Result<QuotientElement> {
        self.require_non_loop(x)?;
        let mut out = QuotientElement::zero();
        for (set, c) in v.terms() {
            let sign = parity(set.count_above(x));
            out.add_scaled(c * sign, &self.straighten(set.with(x)));
        }
        Ok(out)
    }

    /// The flag functional `p_{i_1} ∘ ... ∘ p_{i_h}` applied to `v`, with
    /// `p_{i_h}` applied first.
    pub fn flag_functional(&self, flag: Subset, v: &QuotientElement) -> Result<i64> {
        if !self.matroid().is_independent(flag) {
            return Err(Error::NotIndependent(flag));
        }
        if let Some((set, _)) = v.terms().find(|(s, _)| s.len() != flag.len()) {
            return Err(Error::SizeMismatch {
                left: flag.len(),
                right: set.len(),
            });
        }
        let mut algebra: Option<Arc<BiasAlgebra>> = None;
        let mut current = v.clone();
        for x in flag.iter().rev() {
            let here: &BiasAlgebra = algebra.as_deref().unwrap_or(self);
            let next_element = here.map_p(x, &current)?;
            let next_algebra = here.contraction(x)?;
            current = next_element;
            algebra = Some(next_algebra);
        }
        Ok(current.coefficient(Subset::EMPTY))
    }

    /// `flag_functional(I, e_J)` for an independent `J`, which need not be NBC.
    pub fn flag_on_monomial(&self, flag: Subset, set: Subset) -> Result<i64> {
        if flag.len() != set.len() {
            return Err(Error::SizeMismatch {
                left: flag.len(),
                right: set.len(),
            });
        }
        self.flag_functional(flag, &self.straighten(set))
    }

    /// `sgn(τ)` for the unique bijection `τ` matching each position `t` of
    /// `I = (i_1 < ... < i_h)` to an element `j` of `J` with `j ∈ cl(I_t)`
    /// and `C(j, I_t) ∈ C_L`, where `I_t = {i_t, ..., i_h}`; `j = i_t`
    /// always matches. Returns 0 when no such `τ` exists.
    pub fn xi_permutation(&self, flag: Subset, set: Subset) -> Result<i64> {
        let m = self.matroid();
        if flag.len() != set.len() {
            return Err(Error::SizeMismatch {
                left: flag.len(),
                right: set.len(),
            });
        }
        for s in [flag, set] {
            if !m.is_independent(s) {
                return Err(Error::NotIndependent(s));
            }
        }
        let flag_list = flag.to_vec();
        let h = flag_list.len();
        // admissible[t] = members of J that may sit at position t
        let admissible: Vec<Vec<usize>> = (0..h)
            .map(|t| {
                let tail: Subset = flag_list[t..].iter().copied().collect();
                set.iter()
                    .filter(|&j| {
                        if j == flag_list[t] {
                            return true;
                        }
                        if tail.contains(j) || !m.closure(tail).contains(j) {
                            return false;
                        }
                        let c = m.fundamental_circuit(j, tail).expect("j spans with the tail");
                        self.class().contains(c)
                    })
                    .collect()
            })
            .collect();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut chosen = Vec::with_capacity(h);
        search(&admissible, 0, &mut chosen, &mut found);
        debug_assert!(found.len() <= 1, "τ is not unique for {flag}, {set}: {found:?}");
        Ok(found.first().map_or(0, |seq| sorting_sign(seq)))
    }

    /// Check the split exact sequence `0 → Z(M\x) → Z(M) → Z(M/x) → 0`.
    pub fn check_exact_sequence(&self, x: usize) -> Result<SequenceReport> {
        let m = self.matroid();
        if let Some(l) = m.loops().first() {
            return Err(Error::LoopPresent(l));
        }
        self.require_non_loop(x)?;
        let deletion = self.deletion(x)?;
        let contraction = self.contraction(x)?;

        let whole = self.poincare_polynomial();
        let del = deletion.poincare_polynomial();
        let con = contraction.poincare_polynomial();
        let top = whole.len().max(del.len()).max(con.len() + 1);
        let at = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0);
        let dims_additive = (0..top).all(|k| {
            at(&whole, k) == at(&del, k) + if k == 0 { 0 } else { at(&con, k - 1) }
        });

        let mut p_after_i_vanishes = true;
        let mut image_i = SubspaceBasis::new(Rationals);
        for &set in deletion.nbc_basis().sets() {
            let included = self.map_i(&QuotientElement::basis(set));
            image_i.insert(&included.to_exterior().to_ring(&Rationals));
            p_after_i_vanishes &= self.map_p(x, &included)?.is_zero();
        }

        let mut image_p = SubspaceBasis::new(Rationals);
        for &set in self.nbc_basis().sets() {
            let projected = self.p_monomial(x, set)?;
            image_p.insert(&projected.to_exterior().to_ring(&Rationals));
        }

        let mut splitting_is_section = true;
        for &set in contraction.nbc_basis().sets() {
            let e = QuotientElement::basis(set);
            let round_trip = self.map_p(x, &self.map_p_inverse(x, &e)?)?;
            splitting_is_section &= round_trip == e;
        }

        let nbc_recursion = (Some(x) == m.ground().last()).then(|| {
            let mut expected: Vec<Subset> = deletion.nbc_basis().sets().to_vec();
            expected.extend(contraction.nbc_basis().sets().iter().map(|s| s.with(x)));
            expected.sort();
            let lifted_back: Vec<Subset> = self
                .nbc_basis()
                .sets()
                .iter()
                .filter(|s| s.contains(x))
                .map(|s| s.without(x))
                .collect();
            expected == self.nbc_basis().sets() && lifted_back == contraction.nbc_basis().sets()
        });

        let contraction_class_loops = contraction
            .class()
            .members()
            .iter()
            .filter(|c| c.len() == 1)
            .fold(Subset::EMPTY, |acc, c| acc.union(*c));

        Ok(SequenceReport {
            element: x,
            contraction_class_loops,
            graded_dims: whole,
            deletion_dims: del,
            contraction_dims: con,
            dims_additive,
            p_after_i_vanishes,
            rank_i: image_i.dim(),
            dim_deletion: deletion.dim(),
            rank_p: image_p.dim(),
            dim_contraction: contraction.dim(),
            splitting_is_section,
            nbc_recursion,
        })
    }
}

fn search(admissible: &[Vec<usize>], t: usize, chosen: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
    if t == admissible.len() {
        found.push(chosen.clone());
        return;
    }
    for &j in &admissible[t] {
        if !chosen.contains(&j) {
            chosen.push(j);
            search(admissible, t + 1, chosen, found);
            chosen.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub element: usize,
    /// Loops of `M / x` lying in `C_L / x`; these come from two-element
    /// members `{x, y}` of `C_L`. Such loops are not generators, so the
    /// contraction keeps `e_∅ ≠ 0` and the sequence cannot be exact.
    pub contraction_class_loops: Subset,
    pub graded_dims: Vec<usize>,
    pub deletion_dims: Vec<usize>,
    pub contraction_dims: Vec<usize>,
    pub dims_additive: bool,
    pub p_after_i_vanishes: bool,
    pub rank_i: usize,
    pub dim_deletion: usize,
    pub rank_p: usize,
    pub dim_contraction: usize,
    pub splitting_is_section: bool,
    /// Checked only when the element is the largest of the ground set.
    pub nbc_recursion: Option<bool>,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.dims_additive
            && self.p_after_i_vanishes
            && self.rank_i == self.dim_deletion
            && self.rank_p == self.dim_contraction
            && self.splitting_is_section
            && self.nbc_recursion.unwrap_or(true)
    }
}
