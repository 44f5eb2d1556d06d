//! Gröbner bases over F2 for the bigraded polynomial rings, with normal forms,
//! ideal and radical membership, Hilbert series and regular-sequence tests.
//!
//! All computations use the graded reverse-lexicographic order of
//! [`Monomial`]: compare cohomological degree first, then weight, then
//! total exponent, then reverse-lex with `tau` as the last variable.

mod engine;
mod hilbert;
mod radical;
mod regular;

pub(crate) use hilbert::monomial_numerator;
pub use hilbert::{hilbert_series, BiPoly, HilbertSeries};
pub use radical::{radical_member, radical_member_with};
pub use regular::{is_regular_sequence, is_regular_sequence_with, RegularityCertificate, Verdict};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, Polynomial, Ring};

/// Default cap on the number of S-pairs one computation may create.
pub const DEFAULT_PAIR_LIMIT: usize = 5_000_000;

/// Environment variable overriding [`DEFAULT_PAIR_LIMIT`].
pub const RESOURCE_LIMIT_VAR: &str = "SWU_RESOURCE_LIMIT";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("pair limit {limit} exceeded with {basis_size} basis elements")]
    ResourceLimit { limit: usize, basis_size: usize },
    #[error("degree cap {cap} is below the required degree {degree}")]
    DegreeCapExceeded { cap: u32, degree: u32 },
    #[error("{0} is not homogeneous")]
    NonHomogeneous(String),
    #[error("{0} has degree zero")]
    DegreeZero(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Degree (p, then q, then total exponent) then reverse-lex, `tau` last.
    DegRevLex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub pair_limit: usize,
    /// Only S-pairs and generators with p-degree at most this are processed.
    pub degree_cap: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        let pair_limit = std::env::var(RESOURCE_LIMIT_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_PAIR_LIMIT);
        Limits { pair_limit, degree_cap: None }
    }
}

impl Limits {
    pub fn capped(cap: u32) -> Self {
        Limits { degree_cap: Some(cap), ..Limits::default() }
    }

    pub fn with_cap(self, cap: Option<u32>) -> Self {
        Limits { degree_cap: cap, ..self }
    }
}

/// A reduced Gröbner basis, sorted by ascending leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    ring: Ring,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    degree_cap: Option<u32>,
    complete: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn degree_cap(&self) -> Option<u32> {
        self.degree_cap
    }

    /// False when some pair or generator was skipped because of the degree cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.terms()[0]).collect()
    }

    pub fn contains_one(&self) -> bool {
        self.generators.iter().any(Polynomial::is_one)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        normal_form(f, self)
    }
}

pub fn groebner_basis(
    gens: &[Polynomial],
    ring: &Ring,
    order: MonomialOrder,
    limits: Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    for g in gens {
        g.check_ring(ring)?;
        if limits.degree_cap.is_some() && !g.bidegree_of().is_homogeneous() && !g.is_zero() {
            return Err(GroebnerError::NonHomogeneous(g.to_string()));
        }
    }
    let outcome = engine::Buchberger::new(ring, limits).run(gens)?;
    let generators = outcome
        .basis
        .into_iter()
        .map(|terms| Polynomial::from_sorted_unchecked(ring, terms))
        .collect();
    Ok(GroebnerBasis { ring: ring.clone(), generators, order, degree_cap: limits.degree_cap, complete: outcome.complete })
}

/// Full reduction of `f` modulo `gb`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    f.check_ring(&gb.ring)?;
    if let Some(cap) = gb.degree_cap {
        if f.max_p() > cap && !gb.complete {
            return Err(GroebnerError::DegreeCapExceeded { cap, degree: f.max_p() });
        }
    }
    let terms = engine::reduce_against(&gb.generators, f.terms().iter().copied());
    Ok(Polynomial::from_sorted_unchecked(&gb.ring, terms))
}

/// Whether `f` lies in the ideal generated by `gens`. Homogeneous input uses
/// a basis capped at the degree of `f`.
pub fn ideal_member(f: &Polynomial, gens: &[Polynomial], ring: &Ring) -> Result<bool, GroebnerError> {
    ideal_member_with(f, gens, ring, Limits::default())
}

pub fn ideal_member_with(f: &Polynomial, gens: &[Polynomial], ring: &Ring, limits: Limits) -> Result<bool, GroebnerError> {
    f.check_ring(ring)?;
    if f.is_zero() {
        return Ok(true);
    }
    let homogeneous = f.bidegree_of().is_homogeneous() && gens.iter().all(|g| g.is_zero() || g.bidegree_of().is_homogeneous());
    let cap = homogeneous.then(|| f.max_p());
    let gb = groebner_basis(gens, ring, MonomialOrder::DegRevLex, limits.with_cap(cap))?;
    let terms = engine::reduce_against(&gb.generators, f.terms().iter().copied());
    Ok(terms.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_ring, parse_poly, GradingMode, RingContext, RingSpec, Variable};

    pub(crate) fn xy_ring() -> Ring {
        let vars = vec![Variable::x(1), Variable::x(2)];
        RingContext::new("F2[x1,x2]", GradingMode::Motivic, vars).unwrap()
    }

    fn polys(ring: &Ring, list: &[&str]) -> Vec<Polynomial> {
        list.iter().map(|s| parse_poly(s, ring).unwrap()).collect()
    }

    fn basis_strings(gb: &GroebnerBasis) -> Vec<String> {
        gb.generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn trivial_bases() {
        let r = xy_ring();
        let gb = groebner_basis(&polys(&r, &["x1", "x2"]), &r, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        assert_eq!(basis_strings(&gb), ["x2", "x1"]);
        assert!(gb.is_complete());
        let gb = groebner_basis(&polys(&r, &["x1*x2", "x1"]), &r, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        assert_eq!(basis_strings(&gb), ["x1"]);
    }

    #[test]
    fn one_reduction_step() {
        let r = make_ring(RingSpec::BSO(5)).unwrap();
        let gb = groebner_basis(&polys(&r, &["u3", "u2*u3 + u5"]), &r, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        assert_eq!(basis_strings(&gb), ["u3", "u5"]);
    }

    #[test]
    fn normal_forms() {
        let r = make_ring(RingSpec::BSO(5)).unwrap();
        let gb = groebner_basis(&polys(&r, &["u3"]), &r, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        assert!(normal_form(&parse_poly("u2*u3", &r).unwrap(), &gb).unwrap().is_zero());
        let f = parse_poly("u2^2", &r).unwrap();
        assert_eq!(normal_form(&f, &gb).unwrap(), f);
    }

    #[test]
    fn membership() {
        let r3 = make_ring(RingSpec::BSO(3)).unwrap();
        let u3 = polys(&r3, &["u3"]);
        assert!(ideal_member(&parse_poly("u2*u3", &r3).unwrap(), &u3, &r3).unwrap());
        let r5 = make_ring(RingSpec::BSO(5)).unwrap();
        let u3 = polys(&r5, &["u3"]);
        assert!(!ideal_member(&parse_poly("u5", &r5).unwrap(), &u3, &r5).unwrap());
        assert!(ideal_member(&Polynomial::zero(&r5), &u3, &r5).unwrap());
        assert!(ideal_member(&Polynomial::zero(&r5), &[], &r5).unwrap());
    }

    #[test]
    fn nonhomogeneous_membership_uses_full_basis() {
        let r = xy_ring();
        let gens = polys(&r, &["x1^2 + x2", "x1*x2 + 1"]);
        // x1^3 = x1*x2 = 1 modulo the ideal.
        assert!(ideal_member(&parse_poly("x1^3 + 1", &r).unwrap(), &gens, &r).unwrap());
        assert!(!ideal_member(&parse_poly("x1", &r).unwrap(), &gens, &r).unwrap());
    }

    #[test]
    fn cap_limits_the_basis() {
        let r = xy_ring();
        let gens = polys(&r, &["x1^2 + x1*x2", "x2^3"]);
        let full = groebner_basis(&gens, &r, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        let capped = groebner_basis(&gens, &r, MonomialOrder::DegRevLex, Limits::capped(2)).unwrap();
        assert!(full.is_complete());
        assert!(!capped.is_complete());
        assert_eq!(capped.degree_cap(), Some(2));
        assert!(matches!(
            normal_form(&parse_poly("x1^3", &r).unwrap(), &capped),
            Err(GroebnerError::DegreeCapExceeded { cap: 2, degree: 3 })
        ));
    }

    #[test]
    fn pair_limit_is_an_error() {
        let r = make_ring(RingSpec::BSO(6)).unwrap();
        let gens = polys(&r, &["u2^2 + u4", "u2*u3 + u5", "u3^2 + u6", "u2*u4 + u6"]);
        let limits = Limits { pair_limit: 1, degree_cap: None };
        assert!(matches!(
            groebner_basis(&gens, &r, MonomialOrder::DegRevLex, limits),
            Err(GroebnerError::ResourceLimit { limit: 1, .. })
        ));
    }

    #[test]
    fn s_polynomials_reduce_to_zero() {
        let r = make_ring(RingSpec::BSO(6)).unwrap();
        let gens = polys(&r, &["u2^2 + tau*u4", "u2*u3 + u5", "u3^2 + u2*u4", "u4*u2 + u6"]);
        let gb = groebner_basis(&gens, &r, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        let g = gb.generators();
        let w = r.weights();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (a, b) = (g[i].terms()[0], g[j].terms()[0]);
                let l = a.lcm(&b, w);
                let s = &g[i].mul_monomial(&l.div(&a)) + &g[j].mul_monomial(&l.div(&b));
                assert!(normal_form(&s, &gb).unwrap().is_zero());
            }
        }
        for (i, gi) in g.iter().enumerate() {
            for (j, gj) in g.iter().enumerate() {
                if i != j {
                    assert!(gi.terms().iter().all(|t| !gj.terms()[0].divides(t)));
                }
            }
        }
    }
}
