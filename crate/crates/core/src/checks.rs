//! Invariant checks on a single `(M, C_L)`, each comparing the combinatorial
//! side against the exterior-algebra oracle or against another route to the
//! same object.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bias::{BiasAlgebra, Unidependence};
use crate::error::Result;
use crate::exterior::ExteriorElement;
use crate::field::{Field, FieldSpec, Integers, PrimeField, Rationals};
use crate::lift::{extended_lift, lift_by_modular_cut, lift_dual_hyperplanes};
use crate::oracle::{self, QuotientOracle, SubspaceBasis};
use crate::subset::{sorting_sign, Subset};

pub const RELABEL_TRIALS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &'static str, failure: Option<String>) -> Self {
        Check {
            name,
            passed: failure.is_none(),
            detail: failure,
        }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Check {
            name,
            passed: true,
            detail: Some(format!("not applicable: {why}")),
        }
    }
}

fn first_failure<T, I: IntoIterator<Item = T>>(
    items: I,
    mut fails: impl FnMut(&T) -> Option<String>,
) -> Option<String> {
    items.into_iter().find_map(|t| fails(&t))
}

/// Run every check over the chosen field.
pub fn all_checks(z: &BiasAlgebra, field: FieldSpec, relabel_seed: u64) -> Result<Vec<Check>> {
    match field {
        FieldSpec::Rationals => checks_over(z, Rationals, relabel_seed),
        FieldSpec::PrimeField(p) => checks_over(z, PrimeField::new(p)?, relabel_seed),
    }
}

fn checks_over<F: Field>(z: &BiasAlgebra, field: F, relabel_seed: u64) -> Result<Vec<Check>> {
    let oracle = z.oracle(field.clone())?;
    Ok(vec![
        oracle_dims(z, &oracle),
        straighten_matches_oracle(z, &oracle),
        vanishing(z, &oracle),
        monomial_relation(z, &oracle),
        counting(z),
        b_basis_spans(z, &oracle)?,
        specialization(z, field.clone())?,
        lift_consistency(z, &oracle, field)?,
        duality(z)?,
        xi_agreement(z)?,
        exact_sequence(z)?,
        order_invariance(z, relabel_seed, RELABEL_TRIALS),
    ])
}

pub fn oracle_dims<F: Field>(z: &BiasAlgebra, oracle: &QuotientOracle<F>) -> Check {
    let nbc = z.poincare_polynomial();
    let quotient = oracle.quotient_graded_dims_trimmed();
    Check::new(
        "oracle_dims",
        (nbc != quotient).then(|| format!("nbc {nbc:?} vs quotient {quotient:?}")),
    )
}

/// `e_X - straighten(X)` lies in the ideal for every subset `X`.
pub fn straighten_matches_oracle<F: Field>(z: &BiasAlgebra, oracle: &QuotientOracle<F>) -> Check {
    let ground = z.matroid().ground();
    let failure = first_failure(ground.subsets(), |&x| {
        let diff = ExteriorElement::monomial(&Integers, x).sub(&Integers, &z.straighten(x).to_exterior());
        (!oracle.vanishes(&diff)).then(|| format!("expansion of e_{x} disagrees with the oracle"))
    });
    Check::new("straighten_matches_oracle", failure)
}

/// `e_X = 0` in the quotient exactly when `X` is dependent.
pub fn vanishing<F: Field>(z: &BiasAlgebra, oracle: &QuotientOracle<F>) -> Check {
    let m = z.matroid();
    let failure = first_failure(m.ground().subsets(), |&x| {
        let zero = oracle.vanishes(&ExteriorElement::monomial(&Integers, x));
        (zero == m.is_independent(x)).then(|| format!("e_{x} vanishing = {zero}"))
    });
    Check::new("dependent_iff_zero", failure)
}

/// `e_I = χ e_{I \ y ∪ x}` for `{x, y} ∈ C_L`, `y ∈ I`, `x ∉ I`.
pub fn monomial_relation<F: Field>(z: &BiasAlgebra, oracle: &QuotientOracle<F>) -> Check {
    let m = z.matroid();
    let pairs: Vec<Subset> = z.class().members().iter().copied().filter(|c| c.len() == 2).collect();
    let mut failure = None;
    'outer: for pair in pairs {
        let (a, b) = (pair.first().unwrap(), pair.last().unwrap());
        for (x, y) in [(a, b), (b, a)] {
            for set in m.independent_sets() {
                if !set.contains(y) || set.contains(x) {
                    continue;
                }
                let replaced: Vec<usize> = set.iter().map(|i| if i == y { x } else { i }).collect();
                let chi = sorting_sign(&replaced);
                let lhs = ExteriorElement::monomial(&Integers, set);
                let rhs = ExteriorElement::term(&Integers, set.without(y).with(x), chi);
                if !oracle.vanishes(&lhs.sub(&Integers, &rhs)) {
                    failure = Some(format!("e_{set} vs e_{} with x = {x}, y = {y}", set.without(y).with(x)));
                    break 'outer;
                }
            }
        }
    }
    Check::new("parallel_monomial_relation", failure)
}

/// `|nbc| + |b| = 2^n`, with `I ↦ I ∪ a(I)` a bijection from active
/// independent sets onto inactive unidependent sets.
pub fn counting(z: &BiasAlgebra) -> Check {
    let m = z.matroid();
    let ground = m.ground();
    let inactive_uni: Vec<Subset> = {
        let mut v: Vec<Subset> = ground
            .subsets()
            .filter(|&s| z.classify_unidependent(s).classification == Unidependence::InactiveUni)
            .collect();
        v.sort();
        v
    };
    let dependent = (1usize << ground.len()) - m.independent_sets().len();
    let total = z.dim() + inactive_uni.len() + dependent;
    if total != 1 << ground.len() {
        return Check::new(
            "counting_identity",
            Some(format!("{} nbc + {} b = {total}", z.dim(), inactive_uni.len() + dependent)),
        );
    }
    let mut images: Vec<Subset> = z.activity_bijection().into_iter().map(|(_, u)| u).collect();
    images.sort();
    let failure = (images != inactive_uni)
        .then(|| format!("images {images:?} vs inactive unidependents {inactive_uni:?}"));
    Check::new("counting_identity", failure)
}

pub fn b_basis_spans<F: Field>(z: &BiasAlgebra, oracle: &QuotientOracle<F>) -> Result<Check> {
    let b = z.b_basis()?;
    let mut span = SubspaceBasis::new(oracle.field().clone());
    let mut failure = None;
    for v in &b {
        if !oracle.vanishes(v) {
            failure = Some(format!("{v:?} is not in the ideal"));
            break;
        }
        if !span.insert(&v.to_ring(oracle.field())) {
            failure = Some(format!("{v:?} is dependent on earlier elements"));
            break;
        }
    }
    if failure.is_none() && span.dim() != oracle.ideal_dim() {
        failure = Some(format!("{} elements span less than the ideal ({})", span.dim(), oracle.ideal_dim()));
    }
    Ok(Check::new("b_basis", failure))
}

pub fn specialization<F: Field>(z: &BiasAlgebra, field: F) -> Result<Check> {
    let m = z.matroid();
    if z.class().is_everything(m) {
        let os = oracle::os_algebra(m, field)?.quotient_graded_dims_trimmed();
        let nbc = z.poincare_polynomial();
        return Ok(Check::new(
            "specialization",
            (os != nbc).then(|| format!("Orlik-Solomon {os:?} vs {nbc:?}")),
        ));
    }
    if z.class().is_empty() {
        let independent = m.independent_sets().len();
        return Ok(Check::new(
            "specialization",
            (independent != z.dim()).then(|| format!("{independent} independent sets vs {}", z.dim())),
        ));
    }
    Ok(Check::skipped("specialization", "class is neither empty nor everything"))
}

pub fn lift_consistency<F: Field>(z: &BiasAlgebra, oracle: &QuotientOracle<F>, field: F) -> Result<Check> {
    let (m, cl) = (z.matroid(), z.class());
    if cl.is_empty() || cl.is_everything(m) {
        return Ok(Check::skipped("lift_consistency", "class is empty or everything"));
    }
    let lift = extended_lift(m, cl)?;
    let by_cut = lift_by_modular_cut(m, cl)?;
    if lift.matroid.circuits() != by_cut.circuits() {
        return Ok(Check::new(
            "lift_consistency",
            Some(format!("circuit formula {:?} vs modular cut {:?}", lift.matroid.circuits(), by_cut.circuits())),
        ));
    }
    let from_dual = lift_dual_hyperplanes(m, cl)?.circuits_of_lift(m.ground());
    if lift.matroid.circuits() != from_dual {
        return Ok(Check::new(
            "lift_consistency",
            Some(format!("circuit formula {:?} vs dual hyperplanes {from_dual:?}", lift.matroid.circuits())),
        ));
    }
    let pointed = oracle::pointed_os_algebra(&lift.matroid, lift.new_element, field)?.quotient_graded_dims_trimmed();
    let direct = oracle.quotient_graded_dims_trimmed();
    Ok(Check::new(
        "lift_consistency",
        (pointed != direct).then(|| format!("OS(N)/<e_p> {pointed:?} vs {direct:?}")),
    ))
}

/// `𝔭_I(e_J) = δ_IJ` over the NBC basis.
pub fn duality(z: &BiasAlgebra) -> Result<Check> {
    let sets = z.nbc_basis().sets();
    for &i in sets {
        for &j in sets.iter().filter(|j| j.len() == i.len()) {
            let value = z.flag_on_monomial(i, j)?;
            if value != i64::from(i == j) {
                return Ok(Check::new("duality", Some(format!("flag {i} on e_{j} = {value}"))));
            }
        }
    }
    Ok(Check::new("duality", None))
}

/// Straightening coefficient, `sgn(τ)` and the flag functional agree.
pub fn xi_agreement(z: &BiasAlgebra) -> Result<Check> {
    let independent = z.matroid().independent_sets();
    for &j in &independent {
        let expansion = z.straighten(j);
        for i in z.nbc_basis().of_degree(j.len()) {
            let a = expansion.coefficient(i);
            let b = z.xi_permutation(i, j)?;
            let c = z.flag_on_monomial(i, j)?;
            if a != b || b != c {
                return Ok(Check::new(
                    "xi_agreement",
                    Some(format!("I = {i}, J = {j}: straighten {a}, tau {b}, flag {c}")),
                ));
            }
        }
    }
    Ok(Check::new("xi_agreement", None))
}

pub fn exact_sequence(z: &BiasAlgebra) -> Result<Check> {
    let m = z.matroid();
    if !m.loops().is_empty() {
        return Ok(Check::skipped("exact_sequence", "the matroid has loops"));
    }
    for x in m.ground().iter() {
        let report = z.check_exact_sequence(x)?;
        if !report.passed() {
            return Ok(Check::new("exact_sequence", Some(format!("{report:?}"))));
        }
    }
    Ok(Check::new("exact_sequence", None))
}

/// Random relabelings of the ground set leave the graded dimensions alone.
pub fn order_invariance(z: &BiasAlgebra, seed: u64, trials: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = z.matroid().n();
    let expected = z.poincare_polynomial();
    for trial in 0..trials {
        let mut image: Vec<usize> = (1..=n).collect();
        image.shuffle(&mut rng);
        let mut map = vec![0];
        map.extend(image);
        let got = z.relabel(&map).poincare_polynomial();
        if got != expected {
            return Check::new(
                "order_invariance",
                Some(format!("trial {trial}, map {map:?}: {got:?} vs {expected:?}")),
            );
        }
    }
    Check::new("order_invariance", None)
}
