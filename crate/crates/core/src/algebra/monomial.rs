use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::ring::Bidegree;

/// Largest roster any ring may have.
pub const MAX_VARS: usize = 24;

/// Per-slot bidegrees of a ring, copied out of the context for hot loops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Weights {
    pub p: [u32; MAX_VARS],
    pub q: [u32; MAX_VARS],
}

/// A monomial as a dense exponent vector indexed by ring slot.
///
/// The bidegree and total degree are cached; they are functions of the
/// exponents once the ring is fixed, so equality and hashing only look at the
/// exponents.
#[derive(Clone, Copy, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    p: u32,
    q: u32,
    total: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], p: 0, q: 0, total: 0 };

    pub fn from_slots(exps: [u16; MAX_VARS], weights: &Weights) -> Self {
        let mut m = Monomial { exps, ..Monomial::ONE };
        for (slot, &e) in exps.iter().enumerate() {
            let e = e as u32;
            m.p += e * weights.p[slot];
            m.q += e * weights.q[slot];
            m.total += e;
        }
        m
    }

    pub fn var(slot: usize, exp: u16, weights: &Weights) -> Self {
        let mut exps = [0; MAX_VARS];
        exps[slot] = exp;
        Monomial::from_slots(exps, weights)
    }

    #[inline]
    pub fn exponent(&self, slot: usize) -> u16 {
        self.exps[slot]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.p, self.q)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn is_one(&self) -> bool {
        self.total == 0
    }

    /// Bit `i` set iff slot `i` has positive exponent.
    #[inline]
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            mask |= ((e != 0) as u32) << i;
        }
        mask
    }

    /// # Panics
    /// If an exponent leaves the `u16` range.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(b).expect("monomial exponent overflow");
        }
        Monomial { exps, p: self.p + other.p, q: self.q + other.q, total: self.total + other.total }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.total <= other.total && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`; the caller guarantees `other | self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut exps = self.exps;
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a -= b;
        }
        Monomial { exps, p: self.p - other.p, q: self.q - other.q, total: self.total - other.total }
    }

    pub fn lcm(&self, other: &Monomial, weights: &Weights) -> Monomial {
        let mut exps = self.exps;
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(b);
        }
        Monomial::from_slots(exps, weights)
    }

    pub fn gcd(&self, other: &Monomial, weights: &Weights) -> Monomial {
        let mut exps = self.exps;
        for (a, &b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(b);
        }
        Monomial::from_slots(exps, weights)
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e = e.checked_mul(k).expect("monomial exponent overflow");
        }
        let k = k as u32;
        Monomial { exps, p: self.p * k, q: self.q * k, total: self.total * k }
    }
}

impl PartialEq for Monomial {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

/// Graded reverse lexicographic order: cohomological degree, then weight,
/// then total degree, then reverse lexicographic on slots (the monomial with
/// the smaller exponent in the last differing slot is larger).
impl Ord for Monomial {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.q, self.total).cmp(&(other.p, other.q, other.total)).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
