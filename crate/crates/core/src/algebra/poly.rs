use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use super::monomial::{Monomial, MAX_VARS};
use super::ring::{Bidegree, Ring};
use super::AlgebraError;

/// A polynomial over F2: a set of monomials, stored sorted in descending
/// monomial order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Monomial>,
}

/// Result of [`Polynomial::bidegree_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial lives in every bidegree.
    AnyDegree,
    Homogeneous(Bidegree),
    NonHomogeneous,
}

impl Homogeneity {
    pub fn bidegree(self) -> Option<Bidegree> {
        match self {
            Homogeneity::Homogeneous(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Homogeneity::NonHomogeneous)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

/// Checked ring arithmetic; the operator impls panic on mismatched rings instead.
pub fn poly_arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, AlgebraError> {
    f.check_same_ring(g)?;
    Ok(match op {
        ArithOp::Add => f.add_unchecked(g),
        ArithOp::Mul => f.mul_unchecked(g),
    })
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: Arc::clone(ring), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::monomial(ring, Monomial::ONE)
    }

    pub fn monomial(ring: &Ring, m: Monomial) -> Self {
        Polynomial { ring: Arc::clone(ring), terms: vec![m] }
    }

    /// The variable at roster position `var`.
    pub fn var(ring: &Ring, var: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.slot(var), 1, ring.weights()))
    }

    /// The variable called `name`.
    pub fn named(ring: &Ring, name: &str) -> Result<Self, AlgebraError> {
        let idx = ring.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable {
            name: name.to_string(),
            ring: ring.name().to_string(),
            position: None,
        })?;
        Ok(Polynomial::var(ring, idx))
    }

    /// Builds a polynomial from arbitrary terms, cancelling pairs.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Monomial>) -> Self {
        terms.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = Vec::with_capacity(terms.len());
        let mut i = 0;
        while i < terms.len() {
            let mut j = i + 1;
            while j < terms.len() && terms[j] == terms[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(terms[i]);
            }
            i = j;
        }
        Polynomial { ring: Arc::clone(ring), terms: out }
    }

    /// Wraps terms already sorted descending without duplicates.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Polynomial { ring: Arc::clone(ring), terms }
    }

    /// Monomial from roster-ordered exponents.
    pub fn monomial_from_exponents(ring: &Ring, exps: &[u16]) -> Monomial {
        assert_eq!(exps.len(), ring.num_vars());
        let mut slots = [0u16; MAX_VARS];
        for (var, &e) in exps.iter().enumerate() {
            slots[ring.slot(var)] = e;
        }
        Monomial::from_slots(slots, ring.weights())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    /// Number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.binary_search_by(|t| m.cmp(t)).is_ok()
    }

    pub fn bidegree_of(&self) -> Homogeneity {
        let Some(first) = self.terms.first() else {
            return Homogeneity::AnyDegree;
        };
        let d = first.bidegree();
        if self.terms.iter().all(|t| t.bidegree() == d) {
            Homogeneity::Homogeneous(d)
        } else {
            Homogeneity::NonHomogeneous
        }
    }

    /// Largest cohomological degree among the terms (0 for the zero polynomial).
    pub fn max_p(&self) -> u32 {
        self.terms.iter().map(Monomial::p).max().unwrap_or(0)
    }

    pub fn check_same_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch { left: self.ring.name().into(), right: other.ring.name().into() })
        }
    }

    /// Errors unless `self` lives in `ring`.
    pub fn check_ring(&self, ring: &Ring) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.ring, ring) || *self.ring == **ring {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch { left: self.ring.name().into(), right: ring.name().into() })
        }
    }

    fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { ring: Arc::clone(&self.ring), terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_monomial(&other.terms[0]);
        }
        if self.terms.len() == 1 {
            return other.mul_monomial(&self.terms[0]);
        }
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            products.extend(other.terms.iter().map(|b| a.mul(b)));
        }
        Polynomial::from_terms(&self.ring, products)
    }

    /// Multiplication by a monomial keeps the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { ring: Arc::clone(&self.ring), terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn square(&self) -> Polynomial {
        // Frobenius: cross terms cancel in characteristic 2.
        Polynomial { ring: Arc::clone(&self.ring), terms: self.terms.iter().map(|t| t.pow(2)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Sum of an iterator of polynomials over `ring`.
    pub fn sum<'a>(ring: &Ring, polys: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        let mut terms = Vec::new();
        for p in polys {
            terms.extend_from_slice(&p.terms);
        }
        Polynomial::from_terms(ring, terms)
    }

    /// Moves the polynomial into another ring by matching variable names.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial, AlgebraError> {
        let src = &self.ring;
        let mut slot_map = [usize::MAX; MAX_VARS];
        let mut used = [false; MAX_VARS];
        for t in &self.terms {
            for (slot, &e) in t.exponents().iter().enumerate() {
                used[slot] |= e != 0;
            }
        }
        for slot in 0..src.num_vars() {
            if !used[slot] {
                continue;
            }
            let name = src.variables()[src.var_at_slot(slot)].name();
            let idx = target.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable {
                name: name.to_string(),
                ring: target.name().to_string(),
                position: None,
            })?;
            slot_map[slot] = target.slot(idx);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exps = [0u16; MAX_VARS];
                for (slot, &e) in t.exponents().iter().enumerate() {
                    if e != 0 {
                        exps[slot_map[slot]] = e;
                    }
                }
                Monomial::from_slots(exps, target.weights())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// The part of `self` with only the terms of bidegree `d`.
    pub fn component(&self, d: Bidegree) -> Polynomial {
        Polynomial { ring: Arc::clone(&self.ring), terms: self.terms.iter().filter(|t| t.bidegree() == d).copied().collect() }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// # Panics
    /// If the operands live in different rings; see [`poly_arith`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_same_ring(rhs).expect("adding polynomials from different rings");
        self.add_unchecked(rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    /// # Panics
    /// If the operands live in different rings; see [`poly_arith`].
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_same_ring(rhs).expect("multiplying polynomials from different rings");
        self.mul_unchecked(rhs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_poly(self))
    }
}
