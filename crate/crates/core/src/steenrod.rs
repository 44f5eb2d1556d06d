//! Steenrod squares on rings of (subtle) Stiefel-Whitney classes.
//!
//! Generators are handled by the Wu formula
//!
//! ```text
//! Sq^a u_b = sum_{t=0}^{a} C(b-a+t-1, t) tau^eps(a,b,t) u_{a-t} u_{b+t}
//! ```
//!
//! where the power of `tau` is whatever makes the term land in the weight
//! `floor(a/2) + floor(b/2)` of `Sq^a u_b`. Products go through the Cartan
//! formula, with an extra `tau` on every odd-odd split. Squares kill `tau`.
//!
//! In topological rings the same formulas run without `tau`.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::algebra::{
    make_ring, AlgebraError, Bidegree, Family, GradingMode, Monomial, Polynomial, Ring, RingMap, RingSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{ring} has no Stiefel-Whitney generators")]
    NoGenerators { ring: String },
    #[error("generator index {index} is not in {ring}")]
    GeneratorOutOfRange { index: u32, ring: String },
    #[error("no Steenrod action defined on variable {0}")]
    UnsupportedVariable(String),
    #[error("Wu formula for Sq^{a} u_{b}: term t={t} needs tau^{epsilon}")]
    WeightImbalance { a: u32, b: u32, t: u32, epsilon: i64 },
    #[error("Sq^{m} of {monomial} produced {term} outside bidegree {expected}")]
    CartanWeight { m: u32, monomial: String, term: String, expected: Bidegree },
    #[error("h is undefined on {0}: negative tau exponent")]
    NegativeTauExponent(String),
}

/// The operation `Sq^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SteenrodOp(pub u32);

impl SteenrodOp {
    /// `Sq^m` raises bidegree by `(m, floor(m/2))`.
    pub fn shift(self) -> Bidegree {
        Bidegree::new(self.0, self.0 / 2)
    }
}

/// `C(top, bottom) mod 2` by Lucas' theorem; `C(-1, 0) = 1` and every other
/// binomial with negative top vanishes.
pub fn binomial_mod2(top: i64, bottom: i64) -> bool {
    if bottom < 0 {
        return false;
    }
    if top < 0 {
        return top == -1 && bottom == 0;
    }
    bottom & !top == 0
}

/// How a factor `tau` is realized in a given ring.
#[derive(Clone, Debug)]
enum TauFactor {
    Tau(Monomial),
    /// Motivic ring with `tau = 0`.
    Zero,
    /// Topological ring, no weights.
    One,
}

/// Memoizing evaluator of Steenrod squares in one ring.
///
/// Not shared between threads; build one per task.
pub struct Steenrod {
    ring: Ring,
    family: Family,
    generators: Vec<Option<usize>>,
    tau: TauFactor,
    cache: FxHashMap<(Monomial, u32), Polynomial>,
}

impl Steenrod {
    pub fn new(ring: &Ring) -> Result<Self, SteenrodError> {
        let family = match ring.mode() {
            GradingMode::Motivic if ring.has_family(Family::U) => Family::U,
            GradingMode::Topological if ring.has_family(Family::W) => Family::W,
            _ => return Err(SteenrodError::NoGenerators { ring: ring.name().to_string() }),
        };
        let top = ring.variables().iter().filter(|v| v.family == family).filter_map(|v| v.index).max().unwrap_or(0);
        let generators = (0..=2 * top + 2).map(|j| ring.find(family, j)).collect();
        let tau = match (ring.mode(), ring.tau()) {
            (GradingMode::Topological, _) => TauFactor::One,
            (GradingMode::Motivic, Some(t)) => TauFactor::Tau(Monomial::var(ring.slot(t), 1, ring.weights())),
            (GradingMode::Motivic, None) => TauFactor::Zero,
        };
        Ok(Steenrod { ring: Arc::clone(ring), family, generators, tau, cache: FxHashMap::default() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `u_j` as a polynomial: 1 for `j = 0`, zero when the ring lacks it.
    fn generator(&self, j: u32) -> Option<Monomial> {
        if j == 0 {
            return Some(Monomial::ONE);
        }
        let var = self.generators.get(j as usize).copied().flatten()?;
        Some(Monomial::var(self.ring.slot(var), 1, self.ring.weights()))
    }

    fn times_tau(&self, m: Monomial) -> Option<Monomial> {
        match &self.tau {
            TauFactor::Tau(t) => Some(m.mul(t)),
            TauFactor::Zero => None,
            TauFactor::One => Some(m),
        }
    }

    /// `Sq^a` of the generator with index `b`.
    pub fn sq_gen(&self, a: u32, b: u32) -> Result<Polynomial, SteenrodError> {
        if self.generators.get(b as usize).copied().flatten().is_none() {
            return Err(SteenrodError::GeneratorOutOfRange { index: b, ring: self.ring.name().to_string() });
        }
        self.wu(a, b)
    }

    fn wu(&self, a: u32, b: u32) -> Result<Polynomial, SteenrodError> {
        if a > b {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::new();
        let target_weight = (a / 2 + b / 2) as i64;
        for t in 0..=a {
            if !binomial_mod2(b as i64 - a as i64 + t as i64 - 1, t as i64) {
                continue;
            }
            let (lo, hi) = (a - t, b + t);
            let (Some(ml), Some(mh)) = (self.generator(lo), self.generator(hi)) else {
                continue;
            };
            let term = ml.mul(&mh);
            if self.ring.is_motivic() {
                let epsilon = target_weight - (lo / 2 + hi / 2) as i64;
                match epsilon {
                    0 => terms.push(term),
                    1 => terms.extend(self.times_tau(term)),
                    _ => return Err(SteenrodError::WeightImbalance { a, b, t, epsilon }),
                }
            } else {
                terms.push(term);
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    fn sq_var(&self, var: usize, k: u32) -> Result<Polynomial, SteenrodError> {
        let v = &self.ring.variables()[var];
        match v.family {
            Family::Tau => Ok(if k == 0 { Polynomial::var(&self.ring, var) } else { Polynomial::zero(&self.ring) }),
            f if f == self.family => self.wu(k, v.index.expect("indexed family")),
            _ => Err(SteenrodError::UnsupportedVariable(v.name().to_string())),
        }
    }

    /// `Sq^k` of a single monomial, by peeling off one variable at a time.
    pub fn sq_monomial(&mut self, m: &Monomial, k: u32) -> Result<Polynomial, SteenrodError> {
        if k == 0 {
            return Ok(Polynomial::monomial(&self.ring, *m));
        }
        if k > m.p() || m.is_one() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if let Some(hit) = self.cache.get(&(*m, k)) {
            return Ok(hit.clone());
        }

        let slot = m.exponents().iter().position(|&e| e != 0).expect("non-unit monomial");
        let var = self.ring.var_at_slot(slot);
        let x = Monomial::var(slot, 1, self.ring.weights());
        let rest = m.div(&x);
        let result = if rest.is_one() {
            self.sq_var(var, k)?
        } else {
            let xp = x.p();
            let mut terms = Vec::new();
            for i in 0..=k.min(xp) {
                let j = k - i;
                if j > rest.p() {
                    continue;
                }
                let left = self.sq_var(var, i)?;
                if left.is_zero() {
                    continue;
                }
                let right = self.sq_monomial(&rest, j)?;
                if right.is_zero() {
                    continue;
                }
                let prod = &left * &right;
                if i % 2 == 1 && j % 2 == 1 {
                    terms.extend(prod.terms().iter().filter_map(|t| self.times_tau(*t)));
                } else {
                    terms.extend_from_slice(prod.terms());
                }
            }
            Polynomial::from_terms(&self.ring, terms)
        };

        self.check_shift(m, k, &result)?;
        self.cache.insert((*m, k), result.clone());
        Ok(result)
    }

    fn check_shift(&self, m: &Monomial, k: u32, result: &Polynomial) -> Result<(), SteenrodError> {
        let expected = m.bidegree() + SteenrodOp(k).shift();
        let motivic = self.ring.is_motivic();
        for t in result.terms() {
            let ok = if motivic { t.bidegree() == expected } else { t.p() == expected.p };
            if !ok {
                return Err(SteenrodError::CartanWeight {
                    m: k,
                    monomial: crate::algebra::format_monomial(&self.ring, m),
                    term: crate::algebra::format_monomial(&self.ring, t),
                    expected,
                });
            }
        }
        Ok(())
    }

    /// `Sq^m f`, termwise.
    pub fn sq(&mut self, m: u32, f: &Polynomial) -> Result<Polynomial, SteenrodError> {
        if **f.ring() != *self.ring {
            return Err(AlgebraError::ContextMismatch { left: f.ring().name().into(), right: self.ring.name().into() }.into());
        }
        let mut terms = Vec::new();
        for t in f.terms() {
            terms.extend_from_slice(self.sq_monomial(t, m)?.terms());
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// The composite `Sq^{ops[0]} Sq^{ops[1]} ... f`, evaluated right to left.
    pub fn composite(&mut self, ops: &[u32], f: &Polynomial) -> Result<Polynomial, SteenrodError> {
        let mut g = f.clone();
        for &m in ops.iter().rev() {
            g = self.sq(m, &g)?;
        }
        Ok(g)
    }

    /// `Sq^{2^{count}} ... Sq^4 Sq^2` style chains: returns `[f, Sq^{2^s} f, Sq^{2^{s+1}} Sq^{2^s} f, ...]`
    /// with `count` squares applied after `f`, starting at exponent `2^start`.
    pub fn doubling_chain(&mut self, f: &Polynomial, start: u32, count: u32) -> Result<Vec<Polynomial>, SteenrodError> {
        let mut out = vec![f.clone()];
        for step in 0..count {
            let next = self.sq(1 << (start + step), out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }
}

/// `Sq^a` on the generator `u_b` (or `w_b` in a topological ring).
pub fn sq_gen(a: u32, b: u32, ring: &Ring) -> Result<Polynomial, SteenrodError> {
    Steenrod::new(ring)?.sq_gen(a, b)
}

/// `Sq^m f`.
pub fn sq(m: u32, f: &Polynomial) -> Result<Polynomial, SteenrodError> {
    Steenrod::new(f.ring())?.sq(m, f)
}

/// `theta_0 = u_2`, `theta_1 = u_3`, ..., `theta_j = Sq^{2^{j-1}} theta_{j-1}` in `H(BSO_n)`.
pub fn thetas(n: u32, upto: u32) -> Result<Vec<Polynomial>, SteenrodError> {
    let ring = make_ring(RingSpec::BSO(n))?;
    Steenrod::new(&ring)?.doubling_chain(&Polynomial::named(&ring, "u2")?, 0, upto)
}

pub fn theta(n: u32, j: u32) -> Result<Polynomial, SteenrodError> {
    Ok(thetas(n, j)?.pop().expect("nonempty chain"))
}

/// `rho_j`, the topological counterpart of `theta_j` in `H_top(BSO_n)`.
pub fn rhos(n: u32, upto: u32) -> Result<Vec<Polynomial>, SteenrodError> {
    let ring = make_ring(RingSpec::TopBSO(n))?;
    Steenrod::new(&ring)?.doubling_chain(&Polynomial::named(&ring, "w2")?, 0, upto)
}

pub fn rho(n: u32, j: u32) -> Result<Polynomial, SteenrodError> {
    Ok(rhos(n, j)?.pop().expect("nonempty chain"))
}

/// The maps between `H(BSO_n)` and `H_top(BSO_n)`:
/// `t(u_i) = w_i, t(tau) = 1`; `i(w_i) = u_i`; and the linear map
/// `h(x) = tau^{floor(p/2) - q} i(x)` on monomials, `(p, q)` the bidegree of `i(x)`.
pub struct ComparisonMaps {
    motivic: Ring,
    topological: Ring,
    t: RingMap,
    i: RingMap,
}

impl ComparisonMaps {
    pub fn new(n: u32) -> Result<Self, SteenrodError> {
        let motivic = make_ring(RingSpec::BSO(n))?;
        let topological = make_ring(RingSpec::TopBSO(n))?;
        let mut t_images = Vec::new();
        for v in motivic.variables() {
            t_images.push(match v.family {
                Family::Tau => Polynomial::one(&topological),
                _ => Polynomial::named(&topological, &format!("w{}", v.index.unwrap()))?,
            });
        }
        let t = RingMap::new(&motivic, &topological, t_images)?;
        let i_images = topological
            .variables()
            .iter()
            .map(|v| Polynomial::named(&motivic, &format!("u{}", v.index.unwrap())))
            .collect::<Result<Vec<_>, _>>()?;
        let i = RingMap::new(&topological, &motivic, i_images)?;
        Ok(ComparisonMaps { motivic, topological, t, i })
    }

    /// Maps for whichever `n` the ring of `f` belongs to.
    fn for_ring(ring: &Ring) -> Result<Self, SteenrodError> {
        let family = if ring.is_motivic() { Family::U } else { Family::W };
        let n = ring.variables().iter().filter(|v| v.family == family).filter_map(|v| v.index).max();
        let maps = ComparisonMaps::new(n.unwrap_or(0).max(2))?;
        if *maps.motivic != **ring && *maps.topological != **ring {
            return Err(AlgebraError::ContextMismatch { left: ring.name().into(), right: maps.motivic.name().into() }.into());
        }
        Ok(maps)
    }

    pub fn motivic(&self) -> &Ring {
        &self.motivic
    }

    pub fn topological(&self) -> &Ring {
        &self.topological
    }

    pub fn t(&self, f: &Polynomial) -> Result<Polynomial, SteenrodError> {
        Ok(self.t.apply(f)?)
    }

    pub fn i(&self, x: &Polynomial) -> Result<Polynomial, SteenrodError> {
        Ok(self.i.apply(x)?)
    }

    pub fn h(&self, x: &Polynomial) -> Result<Polynomial, SteenrodError> {
        if **x.ring() != *self.topological {
            return Err(AlgebraError::ContextMismatch { left: x.ring().name().into(), right: self.topological.name().into() }.into());
        }
        let tau = self.motivic.tau().expect("motivic BSO has tau");
        let tau = Monomial::var(self.motivic.slot(tau), 1, self.motivic.weights());
        let mut terms = Vec::with_capacity(x.len());
        for t in x.terms() {
            let image = self.i.apply(&Polynomial::monomial(&self.topological, *t))?;
            let m = image.terms()[0];
            let e = (m.p() / 2) as i64 - m.q() as i64;
            if e < 0 {
                return Err(SteenrodError::NegativeTauExponent(crate::algebra::format_monomial(&self.motivic, &m)));
            }
            terms.push(m.mul(&tau.pow(e as u16)));
        }
        Ok(Polynomial::from_terms(&self.motivic, terms))
    }
}

pub fn t_map(f: &Polynomial) -> Result<Polynomial, SteenrodError> {
    ComparisonMaps::for_ring(f.ring())?.t(f)
}

pub fn h_map(x: &Polynomial) -> Result<Polynomial, SteenrodError> {
    ComparisonMaps::for_ring(x.ring())?.h(x)
}

pub fn i_map(x: &Polynomial) -> Result<Polynomial, SteenrodError> {
    ComparisonMaps::for_ring(x.ring())?.i(x)
}
