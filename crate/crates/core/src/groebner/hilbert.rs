//! Bigraded Hilbert series of quotient rings, computed from the leading-term
//! ideal by pivot splitting.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{Bidegree, Monomial, Polynomial, Ring, Weights};

use super::{groebner_basis, GroebnerBasis, GroebnerError, Limits, MonomialOrder};

/// Integer polynomial in `t` (cohomological degree) and `s` (weight).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), i64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::term(Bidegree::ZERO, 1)
    }

    pub fn term(d: Bidegree, c: i64) -> Self {
        let mut out = BiPoly::zero();
        out.add_term(d, c);
        out
    }

    /// `1 - t^p s^q`.
    pub fn one_minus(d: Bidegree) -> Self {
        let mut out = BiPoly::one();
        out.add_term(d, -1);
        out
    }

    /// `Π (1 - t^p s^q)` over the given bidegrees.
    pub fn product_one_minus<'a>(degrees: impl IntoIterator<Item = &'a Bidegree>) -> Self {
        degrees.into_iter().fold(BiPoly::one(), |acc, d| acc.mul(&BiPoly::one_minus(*d)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, d: Bidegree) -> i64 {
        self.coeffs.get(&(d.p, d.q)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Bidegree, i64)> + '_ {
        self.coeffs.iter().map(|(&(p, q), &c)| (Bidegree::new(p, q), c))
    }

    fn add_term(&mut self, d: Bidegree, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry((d.p, d.q)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&(d.p, d.q));
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn shift(&self, d: Bidegree) -> BiPoly {
        BiPoly { coeffs: self.coeffs.iter().map(|(&(p, q), &c)| ((p + d.p, q + d.q), c)).collect() }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.unsigned_abs();
            let mut factors = Vec::new();
            if mag != 1 || d.is_zero() {
                factors.push(mag.to_string());
            }
            match d.p {
                0 => {}
                1 => factors.push("t".into()),
                p => factors.push(format!("t^{p}")),
            }
            match d.q {
                0 => {}
                1 => factors.push("s".into()),
                q => factors.push(format!("s^{q}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `numerator / Π (1 - t^p s^q)` together with its expansion in a box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: BiPoly,
    denominator: Vec<Bidegree>,
    truncation: Bidegree,
    coefficients: BTreeMap<(u32, u32), u64>,
}

impl HilbertSeries {
    /// Series with the given rational form, expanded up to `truncation`.
    pub fn from_rational(numerator: BiPoly, denominator: Vec<Bidegree>, truncation: Bidegree) -> Self {
        let coefficients = expand(&numerator, &denominator, truncation)
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (k, u64::try_from(c).expect("Hilbert coefficients are non-negative")))
            .collect();
        HilbertSeries { numerator, denominator, truncation, coefficients }
    }

    pub fn numerator(&self) -> &BiPoly {
        &self.numerator
    }

    /// Bidegrees `(p, q)` of the factors `1 - t^p s^q` of the denominator.
    pub fn denominator(&self) -> &[Bidegree] {
        &self.denominator
    }

    pub fn truncation(&self) -> Bidegree {
        self.truncation
    }

    /// Dimension of the graded piece at `d`, if `d` lies inside the truncation box.
    pub fn coefficient(&self, d: Bidegree) -> Option<u64> {
        (d.p <= self.truncation.p && d.q <= self.truncation.q)
            .then(|| self.coefficients.get(&(d.p, d.q)).copied().unwrap_or(0))
    }

    /// Non-zero coefficients inside the truncation box.
    pub fn truncated(&self) -> &BTreeMap<(u32, u32), u64> {
        &self.coefficients
    }

    /// Equality of rational functions, by cross-multiplication.
    pub fn same_rational_form(&self, other: &HilbertSeries) -> bool {
        let a = self.numerator.mul(&BiPoly::product_one_minus(&other.denominator));
        let b = other.numerator.mul(&BiPoly::product_one_minus(&self.denominator));
        a == b
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ", self.numerator)?;
        let factors: Vec<String> = self.denominator.iter().map(|d| format!("({})", BiPoly::one_minus(*d))).collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(""))
        }
    }
}

/// Coefficients of `numerator / Π (1 - x_d)` with p ≤ box.p and q ≤ box.q.
fn expand(numerator: &BiPoly, denominator: &[Bidegree], bound: Bidegree) -> BTreeMap<(u32, u32), i64> {
    let (w, h) = (bound.p as usize + 1, bound.q as usize + 1);
    let mut grid = vec![0i64; w * h];
    for (d, c) in numerator.terms() {
        if d.p <= bound.p && d.q <= bound.q {
            grid[d.p as usize * h + d.q as usize] += c;
        }
    }
    for d in denominator {
        assert!(!d.is_zero(), "denominator factor of degree zero");
        let (dp, dq) = (d.p as usize, d.q as usize);
        for p in dp..w {
            for q in dq..h {
                grid[p * h + q] += grid[(p - dp) * h + (q - dq)];
            }
        }
    }
    let mut out = BTreeMap::new();
    for p in 0..w {
        for q in 0..h {
            out.insert((p as u32, q as u32), grid[p * h + q]);
        }
    }
    out
}

/// Hilbert numerator of `R / (gens)` for a monomial ideal.
pub(crate) fn monomial_numerator(gens: &[Monomial], weights: &Weights) -> BiPoly {
    numerator_rec(minimalize(gens.to_vec()), weights)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.total_degree(), *m));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>, weights: &Weights) -> BiPoly {
    if gens.iter().any(Monomial::is_one) {
        return BiPoly::zero();
    }
    // Pairwise coprime generators form a regular sequence.
    let mut seen = 0u32;
    let mut coprime = true;
    for g in &gens {
        if seen & g.support() != 0 {
            coprime = false;
            break;
        }
        seen |= g.support();
    }
    if coprime {
        return BiPoly::product_one_minus(gens.iter().map(|g| g.bidegree()).collect::<Vec<_>>().iter());
    }

    // Pivot on the variable shared by the most generators, at its median exponent.
    let mut counts = [0usize; crate::algebra::MAX_VARS];
    for g in &gens {
        for (slot, c) in counts.iter_mut().enumerate() {
            if g.exponent(slot) > 0 {
                *c += 1;
            }
        }
    }
    let slot = (0..counts.len()).max_by_key(|&s| (counts[s], std::cmp::Reverse(s))).unwrap();
    // Exponents from mixed generators only, so that the pivot is not already in the ideal.
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g.support() != 1 << slot)
        .map(|g| g.exponent(slot))
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let pivot = Monomial::var(slot, exps[exps.len() / 2], weights);

    let mut with = gens.clone();
    with.push(pivot);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.div(&g.gcd(&pivot, weights))).collect();
    numerator_rec(minimalize(with), weights).add(&numerator_rec(minimalize(colon), weights).shift(pivot.bidegree()))
}

/// Hilbert series of `ring / (gens)` for homogeneous generators.
pub fn hilbert_series(gens: &[Polynomial], ring: &Ring, truncation: Bidegree) -> Result<HilbertSeries, GroebnerError> {
    for g in gens {
        if !g.is_zero() && !g.bidegree_of().is_homogeneous() {
            return Err(GroebnerError::NonHomogeneous(g.to_string()));
        }
    }
    let gb = groebner_basis(gens, ring, MonomialOrder::DegRevLex, Limits::default())?;
    Ok(series_of_basis(&gb, truncation))
}

/// The series of the quotient by a basis. For a capped basis the result is
/// only correct in cohomological degrees up to the cap.
pub(crate) fn series_of_basis(gb: &GroebnerBasis, truncation: Bidegree) -> HilbertSeries {
    let ring = gb.ring();
    let numerator = monomial_numerator(&gb.leading_monomials(), ring.weights());
    HilbertSeries::from_rational(numerator, ring_denominator(ring), truncation)
}

pub(crate) fn ring_denominator(ring: &Ring) -> Vec<Bidegree> {
    ring.variables().iter().map(|v| v.bidegree).collect()
}
