//! Regular-sequence certification by Hilbert series.
//!
//! A homogeneous sequence `f_1, ..., f_r` of positive degree is regular in a
//! graded polynomial ring exactly when the Hilbert series of the quotient
//! equals the series of the ring times `Π (1 - t^{p_i} s^{q_i})`.

use serde::Serialize;

use crate::algebra::{Bidegree, Polynomial, Ring};

use super::hilbert::{monomial_numerator, ring_denominator};
use super::{groebner_basis, BiPoly, GroebnerError, HilbertSeries, Limits, MonomialOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Regular,
    NotRegular,
    /// The degree cap was hit before the series could be compared in full.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    pub verdict: Verdict,
    pub ring: String,
    pub degrees: Vec<Bidegree>,
    /// Hilbert numerator of the quotient over the ring's denominator.
    pub quotient_numerator: BiPoly,
    /// `Π (1 - t^{p_i} s^{q_i})`.
    pub expected_numerator: BiPoly,
    pub basis_size: usize,
    pub degree_cap: Option<u32>,
}

impl RegularityCertificate {
    pub fn is_regular(&self) -> bool {
        self.verdict == Verdict::Regular
    }
}

pub fn is_regular_sequence(seq: &[Polynomial], ring: &Ring) -> Result<RegularityCertificate, GroebnerError> {
    is_regular_sequence_with(seq, ring, Limits::default())
}

/// With a degree cap the two series are compared only up to the cap: a
/// mismatch there still proves the sequence is not regular, agreement leaves
/// the question undecided unless the basis turned out complete.
pub fn is_regular_sequence_with(seq: &[Polynomial], ring: &Ring, limits: Limits) -> Result<RegularityCertificate, GroebnerError> {
    let mut degrees = Vec::with_capacity(seq.len());
    let mut has_zero = false;
    for f in seq {
        f.check_ring(ring)?;
        if f.is_zero() {
            has_zero = true;
            continue;
        }
        let d = f.bidegree_of().bidegree().ok_or_else(|| GroebnerError::NonHomogeneous(f.to_string()))?;
        if d.is_zero() {
            return Err(GroebnerError::DegreeZero(f.to_string()));
        }
        degrees.push(d);
    }
    let expected = BiPoly::product_one_minus(&degrees);
    let gb = groebner_basis(seq, ring, MonomialOrder::DegRevLex, limits)?;
    let quotient = monomial_numerator(&gb.leading_monomials(), ring.weights());

    let verdict = if has_zero {
        Verdict::NotRegular
    } else if gb.is_complete() {
        if quotient == expected {
            Verdict::Regular
        } else {
            Verdict::NotRegular
        }
    } else {
        let cap = limits.degree_cap.unwrap_or(u32::MAX);
        let q_bound = cap.max(1);
        let bound = Bidegree::new(cap, q_bound);
        let denominator = ring_denominator(ring);
        let got = HilbertSeries::from_rational(quotient.clone(), denominator.clone(), bound);
        let want = HilbertSeries::from_rational(expected.clone(), denominator, bound);
        if got.truncated() == want.truncated() {
            Verdict::Undecided
        } else {
            Verdict::NotRegular
        }
    };
    Ok(RegularityCertificate {
        verdict,
        ring: ring.name().to_string(),
        degrees,
        quotient_numerator: quotient,
        expected_numerator: expected,
        basis_size: gb.generators().len(),
        degree_cap: limits.degree_cap,
    })
}
