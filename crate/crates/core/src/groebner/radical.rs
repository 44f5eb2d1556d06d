use crate::algebra::{Bidegree, Polynomial, Ring, Variable};

use super::{groebner_basis, GroebnerError, Limits, MonomialOrder};

/// Name of the auxiliary variable added for the radical test.
const AUX: &str = "zrad";

/// Whether some power of `f` lies in `(gens)`: `1 ∈ (gens, 1 + z f)` in the
/// ring extended by a variable `z` of degree zero.
pub fn radical_member(f: &Polynomial, gens: &[Polynomial], ring: &Ring) -> Result<bool, GroebnerError> {
    radical_member_with(f, gens, ring, Limits::default())
}

pub fn radical_member_with(f: &Polynomial, gens: &[Polynomial], ring: &Ring, limits: Limits) -> Result<bool, GroebnerError> {
    f.check_ring(ring)?;
    if f.is_zero() {
        return Ok(true);
    }
    let extended = ring.extended(format!("{}[{AUX}]", ring.name()), [Variable::adjoined(AUX, Bidegree::ZERO)])?;
    let mut system = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        g.check_ring(ring)?;
        system.push(g.embed(&extended)?);
    }
    let z = Polynomial::named(&extended, AUX)?;
    system.push(&Polynomial::one(&extended) + &(&z * &f.embed(&extended)?));
    let gb = groebner_basis(&system, &extended, MonomialOrder::DegRevLex, limits.with_cap(None))?;
    Ok(gb.contains_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_ring, parse_poly, RingSpec};

    #[test]
    fn square_roots() {
        let r = super::super::tests::xy_ring();
        let x2 = [parse_poly("x1^2", &r).unwrap()];
        assert!(radical_member(&parse_poly("x1", &r).unwrap(), &x2, &r).unwrap());
        assert!(!radical_member(&parse_poly("x2", &r).unwrap(), &x2, &r).unwrap());
        assert!(radical_member(&Polynomial::zero(&r), &[], &r).unwrap());
    }

    #[test]
    fn chern_sanity() {
        let r = make_ring(RingSpec::Chern(4)).unwrap();
        let gens = [parse_poly("c3^4", &r).unwrap()];
        assert!(radical_member(&parse_poly("c3", &r).unwrap(), &gens, &r).unwrap());
        let gens = [parse_poly("c2^2*c3 + c3^2*c4", &r).unwrap(), parse_poly("c2^3", &r).unwrap()];
        // c2^3 and c3*(c2^2 + c3*c4) vanish, so c2 does; then c3^2*c4 does, so c3*c4 does.
        assert!(radical_member(&parse_poly("c3*c4", &r).unwrap(), &gens, &r).unwrap());
        assert!(!radical_member(&parse_poly("c4", &r).unwrap(), &gens, &r).unwrap());
    }
}
