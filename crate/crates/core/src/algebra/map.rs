use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::monomial::Monomial;
use super::poly::{Homogeneity, Polynomial};
use super::ring::Ring;
use super::AlgebraError;

/// A ring homomorphism given by the images of the domain variables.
#[derive(Clone, Debug)]
pub struct RingMap {
    domain: Ring,
    codomain: Ring,
    images: Vec<Polynomial>,
}

impl RingMap {
    /// `images[i]` is the image of roster variable `i` of `domain`.
    ///
    /// Images must be homogeneous (or zero) of the variable's bidegree when both
    /// rings are motivic; otherwise only the cohomological degree is checked.
    pub fn new(domain: &Ring, codomain: &Ring, images: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        if images.len() != domain.num_vars() {
            return Err(AlgebraError::MissingImage {
                map: format!("{} -> {}", domain.name(), codomain.name()),
                variable: domain
                    .variables()
                    .get(images.len())
                    .map(|v| v.name().to_string())
                    .unwrap_or_default(),
            });
        }
        let both_motivic = domain.is_motivic() && codomain.is_motivic();
        for (var, img) in domain.variables().iter().zip(&images) {
            if **img.ring() != **codomain {
                return Err(AlgebraError::ContextMismatch { left: img.ring().name().into(), right: codomain.name().into() });
            }
            let ok = match img.bidegree_of() {
                Homogeneity::AnyDegree => true,
                Homogeneity::NonHomogeneous => img.terms().iter().all(|t| !both_motivic && t.p() == var.bidegree.p),
                Homogeneity::Homogeneous(d) => {
                    if both_motivic {
                        d == var.bidegree
                    } else {
                        d.p == var.bidegree.p
                    }
                }
            };
            if !ok {
                return Err(AlgebraError::DegreeMismatch { variable: var.name().to_string(), image: img.to_string() });
            }
        }
        Ok(RingMap { domain: Arc::clone(domain), codomain: Arc::clone(codomain), images })
    }

    /// Builds a map from `(variable name, image)` pairs; unnamed variables map
    /// to the variable of the same name in the codomain.
    pub fn by_names(domain: &Ring, codomain: &Ring, images: &[(&str, Polynomial)]) -> Result<Self, AlgebraError> {
        let mut out = Vec::with_capacity(domain.num_vars());
        for (i, var) in domain.variables().iter().enumerate() {
            match images.iter().find(|(n, _)| *n == var.name()) {
                Some((_, img)) => out.push(img.clone()),
                None => out.push(Polynomial::named(codomain, var.name()).map_err(|_| AlgebraError::MissingImage {
                    map: format!("{} -> {}", domain.name(), codomain.name()),
                    variable: domain.variables()[i].name().to_string(),
                })?),
            }
        }
        RingMap::new(domain, codomain, out)
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.num_vars()).map(|i| Polynomial::var(ring, i)).collect();
        RingMap { domain: Arc::clone(ring), codomain: Arc::clone(ring), images }
    }

    pub fn domain(&self) -> &Ring {
        &self.domain
    }

    pub fn codomain(&self) -> &Ring {
        &self.codomain
    }

    pub fn image_of(&self, var: usize) -> &Polynomial {
        &self.images[var]
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if **f.ring() != *self.domain {
            return Err(AlgebraError::ContextMismatch { left: f.ring().name().into(), right: self.domain.name().into() });
        }
        let mut powers: FxHashMap<(usize, u16), Polynomial> = FxHashMap::default();
        let mut terms: Vec<Monomial> = Vec::new();
        for t in f.terms() {
            let mut acc = Polynomial::one(&self.codomain);
            for var in 0..self.domain.num_vars() {
                let e = t.exponent(self.domain.slot(var));
                if e == 0 {
                    continue;
                }
                let img = powers.entry((var, e)).or_insert_with(|| self.images[var].pow(e as u32));
                acc = &acc * img;
                if acc.is_zero() {
                    break;
                }
            }
            terms.extend(acc.into_terms());
        }
        Ok(Polynomial::from_terms(&self.codomain, terms))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RingMap) -> Result<RingMap, AlgebraError> {
        let images = self.images.iter().map(|img| next.apply(img)).collect::<Result<Vec<_>, _>>()?;
        RingMap::new(&self.domain, &next.codomain, images)
    }
}

/// Apply `m` to `f`.
pub fn apply_ring_map(m: &RingMap, f: &Polynomial) -> Result<Polynomial, AlgebraError> {
    m.apply(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_ring, parse_poly, RingSpec};

    #[test]
    fn reduction_kills_tau() {
        let bo = make_ring(RingSpec::BO(5)).unwrap();
        let s = make_ring(RingSpec::S(5)).unwrap();
        let gamma = RingMap::by_names(&bo, &s, &[("tau", Polynomial::zero(&s))]).unwrap();
        let f = parse_poly("tau*u3 + u5", &bo).unwrap();
        assert_eq!(gamma.apply(&f).unwrap(), parse_poly("u5", &s).unwrap());
    }

    #[test]
    fn identity_map() {
        let ring = make_ring(RingSpec::BSO(4)).unwrap();
        let f = parse_poly("u2*u4", &ring).unwrap();
        assert_eq!(RingMap::identity(&ring).apply(&f).unwrap(), f);
    }

    #[test]
    fn square_of_sum_image() {
        let s = make_ring(RingSpec::S(4)).unwrap();
        let r = make_ring(RingSpec::R(4)).unwrap();
        let images: Vec<(&str, Polynomial)> = vec![
            ("u1", Polynomial::zero(&r)),
            ("u2", parse_poly("y1 + y2", &r).unwrap()),
            ("u3", Polynomial::zero(&r)),
            ("u4", Polynomial::zero(&r)),
        ];
        let m = RingMap::by_names(&s, &r, &images).unwrap();
        let f = parse_poly("u2^2", &s).unwrap();
        assert_eq!(m.apply(&f).unwrap(), parse_poly("y1^2 + y2^2", &r).unwrap());
    }

    #[test]
    fn rejects_degree_breaking_images() {
        let s = make_ring(RingSpec::S(2)).unwrap();
        let r = make_ring(RingSpec::R(2)).unwrap();
        let images = vec![("u1", parse_poly("y1", &r).unwrap()), ("u2", parse_poly("y1", &r).unwrap())];
        assert!(matches!(RingMap::by_names(&s, &r, &images), Err(AlgebraError::DegreeMismatch { .. })));
    }

    #[test]
    fn truncation_is_a_ring_map() {
        let big = make_ring(RingSpec::BSO(6)).unwrap();
        let small = make_ring(RingSpec::BSO(5)).unwrap();
        let trunc = RingMap::by_names(&big, &small, &[("u6", Polynomial::zero(&small))]).unwrap();
        let f = parse_poly("u2*u6 + u3*u5 + tau*u4^2", &big).unwrap();
        let g = parse_poly("u6 + u2*u4", &big).unwrap();
        assert_eq!(trunc.apply(&(&f * &g)).unwrap(), &trunc.apply(&f).unwrap() * &trunc.apply(&g).unwrap());
    }
}
