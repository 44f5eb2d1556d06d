mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swu_core::algebra::{
    format_poly, make_ring, parse_poly, Bidegree, Family, Homogeneity, Monomial, Polynomial, Ring, RingMap, RingSpec,
};
use swu_core::groebner::{groebner_basis, Limits, MonomialOrder};
use swu_core::presentations::{bound_indices, chern_class, chern_inclusion, express_in_chern, present, ChernExpression, Group};
use swu_core::splitting::{beta, gamma, right_radical, twist_sequence, GramForm};
use swu_core::steenrod::{theta, ComparisonMaps, Steenrod};

fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &Ring, max_p: u32) -> Polynomial {
    loop {
        let p = rng.random_range(0..=max_p);
        let q = rng.random_range(0..=p / 2 + 1);
        let ms = common::monomials_in(ring, Bidegree::new(p, q));
        if !ms.is_empty() {
            return common::random_combination(rng, ring, &ms);
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, max_p: u32) -> Polynomial {
    let parts = rng.random_range(0..4);
    (0..parts).fold(Polynomial::zero(ring), |acc, _| &acc + &random_homogeneous(rng, ring, max_p))
}

fn bso(n: u32) -> Ring {
    make_ring(RingSpec::BSO(n)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_of_homogeneous_elements_are_homogeneous(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = bso(6);
        let f = random_homogeneous(&mut rng, &ring, 8);
        let g = random_homogeneous(&mut rng, &ring, 8);
        let (df, dg) = (f.bidegree_of().bidegree().unwrap(), g.bidegree_of().bidegree().unwrap());
        let fg = &f * &g;
        prop_assert_eq!(fg.bidegree_of(), Homogeneity::Homogeneous(Bidegree::new(df.p + dg.p, df.q + dg.q)));
    }

    #[test]
    fn ring_maps_are_multiplicative_and_additive(seed in any::<u64>(), n in 3u32..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps = ComparisonMaps::new(n).unwrap();
        let s = make_ring(RingSpec::S(n)).unwrap();
        let cases: [(RingMap, Ring); 3] = [
            (beta(n).unwrap(), s),
            (gamma(n).unwrap(), make_ring(RingSpec::BO(n)).unwrap()),
            (chern_inclusion(n).unwrap(), make_ring(RingSpec::Chern(n)).unwrap()),
        ];
        for (map, ring) in &cases {
            let f = random_poly(&mut rng, ring, 8);
            let g = random_poly(&mut rng, ring, 8);
            prop_assert_eq!(map.apply(&(&f * &g)).unwrap(), &map.apply(&f).unwrap() * &map.apply(&g).unwrap());
            prop_assert_eq!(map.apply(&(&f + &g)).unwrap(), &map.apply(&f).unwrap() + &map.apply(&g).unwrap());
        }
        let f = random_poly(&mut rng, maps.motivic(), 8);
        let g = random_poly(&mut rng, maps.motivic(), 8);
        prop_assert_eq!(maps.t(&(&f * &g)).unwrap(), &maps.t(&f).unwrap() * &maps.t(&g).unwrap());
    }

    #[test]
    fn format_then_parse_is_identity(seed in any::<u64>(), n in 2u32..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for ring in [bso(n), make_ring(RingSpec::R(n)).unwrap(), make_ring(RingSpec::TopBO(n)).unwrap()] {
            let f = random_poly(&mut rng, &ring, 10);
            prop_assert_eq!(parse_poly(&format_poly(&f), &ring).unwrap(), f);
        }
    }

    #[test]
    fn truncation_after_inclusion_is_identity(seed in any::<u64>(), n in 2u32..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (small, big) = (bso(n), bso(n + 1));
        let last = format!("u{}", n + 1);
        let truncate = RingMap::by_names(&big, &small, &[(last.as_str(), Polynomial::zero(&small))]).unwrap();
        let f = random_poly(&mut rng, &small, 10);
        let g = random_poly(&mut rng, &big, 10);
        let h = random_poly(&mut rng, &big, 10);
        prop_assert_eq!(truncate.apply(&f.embed(&big).unwrap()).unwrap(), f);
        prop_assert_eq!(truncate.apply(&(&g * &h)).unwrap(), &truncate.apply(&g).unwrap() * &truncate.apply(&h).unwrap());
    }

    #[test]
    fn squares_shift_bidegree_and_vanish_above_degree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = bso(7);
        let mut sq = Steenrod::new(&ring).unwrap();
        let f = random_homogeneous(&mut rng, &ring, 14);
        let d = f.bidegree_of().bidegree().unwrap();
        for m in 0..=d.p + 2 {
            let s = sq.sq(m, &f).unwrap();
            if m > d.p {
                prop_assert!(s.is_zero());
            } else if !s.is_zero() {
                prop_assert_eq!(s.bidegree_of(), Homogeneity::Homogeneous(Bidegree::new(d.p + m, d.q + m / 2)));
            }
        }
    }

    #[test]
    fn cartan_grouping_is_consistent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = bso(6);
        let mut sq = Steenrod::new(&ring).unwrap();
        let tau = Polynomial::named(&ring, "tau").unwrap();
        let f = random_homogeneous(&mut rng, &ring, 5);
        let g = random_homogeneous(&mut rng, &ring, 5);
        let h = random_homogeneous(&mut rng, &ring, 5);
        let m = rng.random_range(0..8);
        let mut cartan = |a: &Polynomial, b: &Polynomial| {
            let mut out = Polynomial::zero(&ring);
            for i in 0..=m {
                let mut term = &sq.sq(i, a).unwrap() * &sq.sq(m - i, b).unwrap();
                if i % 2 == 1 && (m - i) % 2 == 1 {
                    term = &term * &tau;
                }
                out = &out + &term;
            }
            out
        };
        let left = cartan(&(&f * &g), &h);
        let right = cartan(&f, &(&g * &h));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, sq.sq(m, &(&(&f * &g) * &h)).unwrap());
    }

    #[test]
    fn realization_inverts_inclusion_and_h(seed in any::<u64>(), n in 2u32..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps = ComparisonMaps::new(n).unwrap();
        let top = maps.topological().clone();
        let x = random_poly(&mut rng, &top, 12);
        prop_assert_eq!(maps.t(&maps.i(&x).unwrap()).unwrap(), x.clone());
        for t in x.terms() {
            let m = Polynomial::monomial(&top, *t);
            prop_assert_eq!(maps.t(&maps.h(&m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn right_radical_is_the_kernel(m in 1usize..7, bits in any::<u64>()) {
        let form = GramForm::from_index(m, bits & ((1u64 << (m * m)) - 1));
        let rad = right_radical(&form);
        prop_assert_eq!(rad.h + rad.basis.len(), m);
        for v in &rad.basis {
            prop_assert_eq!(form.apply(*v), 0);
        }
    }

    #[test]
    fn twists_are_linear_in_the_form(m in 1usize..5, a in any::<u64>(), b in any::<u64>(), count in 0usize..4) {
        let mask = (1u64 << (m * m)) - 1;
        let (fa, fb) = (GramForm::from_index(m, a & mask), GramForm::from_index(m, b & mask));
        let fab = GramForm::from_index(m, (a ^ b) & mask);
        let (ta, tb, tab) = (twist_sequence(&fa, count).unwrap(), twist_sequence(&fb, count).unwrap(), twist_sequence(&fab, count).unwrap());
        for l in 0..count {
            prop_assert_eq!(&tab[l], &(&ta[l] + &tb[l]));
            let d = Bidegree::new(1 + 2 * (1 << l), 1 << l);
            prop_assert!(tab[l].is_zero() || tab[l].bidegree_of() == Homogeneity::Homogeneous(d));
        }
    }

    #[test]
    fn chern_expression_inverts_inclusion(seed in any::<u64>(), n in 2u32..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iota = chern_inclusion(n).unwrap();
        let c = iota.domain().clone();
        let f = random_poly(&mut rng, &c, 16);
        prop_assert_eq!(express_in_chern(&iota.apply(&f).unwrap(), n).unwrap(), ChernExpression::Expressed(f));
    }

    #[test]
    fn reduced_bases_are_canonical(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (ring, gens) = common::random_ideal(&mut rng, 6);
        let gb = groebner_basis(&gens, &ring, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        let leads: Vec<Monomial> = gb.leading_monomials();
        for (i, g) in gb.generators().iter().enumerate() {
            for (j, l) in leads.iter().enumerate() {
                prop_assert!(i == j || g.terms().iter().all(|t| !l.divides(t)));
            }
        }
        let again = groebner_basis(gb.generators(), &ring, MonomialOrder::DegRevLex, Limits::default()).unwrap();
        prop_assert_eq!(gb.generators(), again.generators());
    }
}

#[test]
fn beta_is_symmetric() {
    for n in 4..=7u32 {
        let b = beta(n).unwrap();
        let r = b.codomain().clone();
        let m = n / 2;
        // Swap the first two pairs (x_i, y_i), and separately only y_1, y_2.
        let pair_swap = RingMap::by_names(&r, &r, &[
            ("x1", Polynomial::named(&r, "x2").unwrap()),
            ("x2", Polynomial::named(&r, "x1").unwrap()),
            ("y1", Polynomial::named(&r, "y2").unwrap()),
            ("y2", Polynomial::named(&r, "y1").unwrap()),
        ])
        .unwrap();
        let y_swap = RingMap::by_names(&r, &r, &[
            ("y1", Polynomial::named(&r, &format!("y{m}")).unwrap()),
            (&format!("y{m}"), Polynomial::named(&r, "y1").unwrap()),
        ])
        .unwrap();
        let s = b.domain().clone();
        for j in 1..=n {
            let img = b.apply(&Polynomial::named(&s, &format!("u{j}")).unwrap()).unwrap();
            assert_eq!(pair_swap.apply(&img).unwrap(), img, "u{j}, n = {n}");
            if j % 2 == 0 {
                assert_eq!(y_swap.apply(&img).unwrap(), img, "u{j}, n = {n}");
            }
        }
    }
}

#[test]
fn top_square_is_tau_twisted_square() {
    let ring = bso(7);
    let mut sq = Steenrod::new(&ring).unwrap();
    let tau = ring.tau().unwrap();
    for m in common::monomials_up_to(&ring, 14, 7) {
        if m.exponent(ring.slot(tau)) != 0 || m.is_one() {
            continue;
        }
        let f = Polynomial::monomial(&ring, m);
        let e = (m.p() / 2 - m.q()) as u16;
        let expected = Polynomial::monomial(&ring, m.pow(2).mul(&Monomial::var(ring.slot(tau), e, ring.weights())));
        assert_eq!(sq.sq(m.p(), &f).unwrap(), expected, "{f}");
    }
}

#[test]
fn h_is_twisted_multiplicative() {
    let maps = ComparisonMaps::new(10).unwrap();
    let top = maps.topological().clone();
    let tau = Polynomial::named(maps.motivic(), "tau").unwrap();
    let monos = common::monomials_up_to(&top, 16, 0);
    for a in &monos {
        for b in monos.iter().filter(|b| a.p() + b.p() <= 16) {
            let (x, y) = (Polynomial::monomial(&top, *a), Polynomial::monomial(&top, *b));
            let mut rhs = &maps.h(&x).unwrap() * &maps.h(&y).unwrap();
            if a.p() % 2 == 1 && b.p() % 2 == 1 {
                rhs = &rhs * &tau;
            }
            assert_eq!(maps.h(&(&x * &y)).unwrap(), rhs, "{x} * {y}");
        }
    }
}

#[test]
fn relation_bidegrees_and_u3() {
    for n in 3..=12 {
        let th = swu_core::steenrod::thetas(n, bound_indices(n).unwrap().1).unwrap();
        assert_eq!(th[0].bidegree_of(), Homogeneity::Homogeneous(Bidegree::new(2, 1)));
        for (j, t) in th.iter().enumerate().skip(1) {
            assert_eq!(t.bidegree_of(), Homogeneity::Homogeneous(Bidegree::new((1 << j) + 1, 1 << (j - 1))), "n = {n}");
        }
        assert_eq!(present(Group::GammaPlus, n).unwrap().relations()[0].to_string(), "u3");
        assert_eq!(theta(n, 1).unwrap().to_string(), "u3");
    }
}

#[test]
fn chern_classes_have_their_bidegree() {
    for n in 2..=8 {
        let c = make_ring(RingSpec::Chern(n)).unwrap();
        for i in 2..=n {
            let ci = chern_class(i, n).unwrap();
            assert_eq!(ci.bidegree_of(), Homogeneity::Homogeneous(Bidegree::new(2 * i, i)));
            let idx = c.find(Family::C, i).unwrap();
            assert_eq!(express_in_chern(&ci, n).unwrap(), ChernExpression::Expressed(Polynomial::var(&c, idx)));
        }
    }
}
