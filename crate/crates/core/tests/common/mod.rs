//! Reference implementations used only by the tests. They share the
//! polynomial container with the crate but none of its algorithms.

#![allow(dead_code)]

use std::collections::HashMap;

use swu_core::algebra::{make_ring, Bidegree, Family, GradingMode, Monomial, Polynomial, Ring, RingContext, RingMap, RingSpec, Variable};

/// Exact binomial coefficient with the conventions `C(-1, 0) = 1` and
/// `C(negative, t > 0) = 0`, reduced mod 2.
pub fn binomial_parity(top: i64, bottom: i64) -> bool {
    if bottom < 0 {
        return false;
    }
    if top < 0 {
        return top == -1 && bottom == 0;
    }
    if bottom > top {
        return false;
    }
    let (top, bottom) = (top as u128, bottom.min(top - bottom) as u128);
    let mut c: u128 = 1;
    for i in 0..bottom {
        c = c * (top - i) / (i + 1);
    }
    c % 2 == 1
}

/// `w_j` in a topological ring with Stiefel-Whitney generators; `w_0 = 1`.
fn w(ring: &Ring, j: u32) -> Polynomial {
    if j == 0 {
        return Polynomial::one(ring);
    }
    match ring.find(Family::W, j) {
        Some(v) => Polynomial::var(ring, v),
        None => Polynomial::zero(ring),
    }
}

/// The classical Wu formula `Sq^a w_b = Σ_t C(b - a + t - 1, t) w_{a-t} w_{b+t}`.
pub fn wu_topological(ring: &Ring, a: u32, b: u32) -> Polynomial {
    if a > b {
        return Polynomial::zero(ring);
    }
    let mut out = Polynomial::zero(ring);
    for t in 0..=a {
        if binomial_parity(b as i64 - a as i64 + t as i64 - 1, t as i64) {
            out = &out + &(&w(ring, a - t) * &w(ring, b + t));
        }
    }
    out
}

fn truncate(f: &Polynomial, max_p: u32) -> Polynomial {
    Polynomial::from_terms(f.ring(), f.terms().iter().filter(|t| t.p() <= max_p).copied().collect())
}

/// Topological `Sq^k f` from the total square: `Sq` is multiplicative and
/// `Sq(w_b) = Σ_a Sq^a w_b`.
pub fn sq_topological(k: u32, f: &Polynomial) -> Polynomial {
    let ring = f.ring().clone();
    assert!(!ring.is_motivic());
    let mut out = Polynomial::zero(&ring);
    for term in f.terms() {
        let target = term.p() + k;
        let mut acc = Polynomial::one(&ring);
        for (var, v) in ring.variables().iter().enumerate() {
            assert_eq!(v.family, Family::W, "oracle handles Stiefel-Whitney rings only");
            let b = v.index.unwrap();
            let total = (0..=b).fold(Polynomial::zero(&ring), |s, a| &s + &wu_topological(&ring, a, b));
            for _ in 0..term.exponent(ring.slot(var)) {
                acc = truncate(&(&acc * &total), target);
            }
        }
        out = &out + &acc.component(Bidegree::new(target, 0));
    }
    out
}

/// The topological ring matching a motivic `H(BO_n)` or `H(BSO_n)`.
pub fn topological_partner(ring: &Ring) -> Ring {
    let n = ring.variables().iter().filter_map(|v| v.index).max().unwrap();
    let oriented = ring.find(Family::U, 1).is_none();
    make_ring(if oriented { RingSpec::TopBSO(n) } else { RingSpec::TopBO(n) }).unwrap()
}

/// Realization `tau -> 1, u_i -> w_i`.
pub fn realize(f: &Polynomial) -> Polynomial {
    let ring = f.ring();
    let top = topological_partner(ring);
    let images = ring
        .variables()
        .iter()
        .map(|v| match v.family {
            Family::Tau => Polynomial::one(&top),
            _ => w(&top, v.index.unwrap()),
        })
        .collect();
    RingMap::new(ring, &top, images).unwrap().apply(f).unwrap()
}

/// The unique element of bidegree `d` in the motivic ring whose realization is `x`.
/// Panics if some monomial would need a negative power of `tau`.
pub fn lift(x: &Polynomial, motivic: &Ring, d: Bidegree) -> Polynomial {
    let top = x.ring();
    let tau = motivic.tau().expect("motivic ring with tau");
    let mut terms = Vec::new();
    for t in x.terms() {
        assert_eq!(t.p(), d.p, "lift of an inhomogeneous element");
        let mut exps = vec![0u16; motivic.num_vars()];
        let mut weight = 0u32;
        for (var, v) in top.variables().iter().enumerate() {
            let e = t.exponent(top.slot(var));
            let i = v.index.unwrap();
            exps[motivic.find(Family::U, i).unwrap()] = e;
            weight += u32::from(e) * (i / 2);
        }
        assert!(weight <= d.q, "no lift of {x} into weight {}", d.q);
        exps[tau] = (d.q - weight) as u16;
        terms.push(Polynomial::monomial_from_exponents(motivic, &exps));
    }
    Polynomial::from_terms(motivic, terms)
}

/// Motivic `Sq^k f` for homogeneous `f`: realization is injective on each
/// bidegree, so the square is the lift of the topological square.
pub fn sq_motivic(k: u32, f: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let d = f.bidegree_of().bidegree().expect("homogeneous input");
    let image = sq_topological(k, &realize(f));
    lift(&image, f.ring(), Bidegree::new(d.p + k, d.q + k / 2))
}

/// `θ_j` by the oracle, in `H(BSO_n)`.
pub fn theta(n: u32, j: u32) -> Polynomial {
    let ring = make_ring(RingSpec::BSO(n)).unwrap();
    let mut f = Polynomial::named(&ring, "u2").unwrap();
    for i in 0..j {
        f = sq_motivic(1 << i, &f);
    }
    f
}

pub fn rho(n: u32, j: u32) -> Polynomial {
    let ring = make_ring(RingSpec::TopBSO(n)).unwrap();
    let mut f = Polynomial::named(&ring, "w2").unwrap();
    for i in 0..j {
        f = sq_topological(1 << i, &f);
    }
    f
}

/// `F2[t_1, ..., t_n]` with every `t_i` in degree 1.
pub fn root_ring(n: u32) -> Ring {
    let vars = (1..=n).map(|i| Variable::adjoined(format!("t{i}"), Bidegree::new(1, 0))).collect();
    RingContext::new(format!("roots_{n}"), GradingMode::Topological, vars).unwrap()
}

/// Elementary symmetric polynomials `e_0..e_k` of `values`.
pub fn elementary(ring: &Ring, values: &[Polynomial]) -> Vec<Polynomial> {
    let k = values.len();
    let mut e = vec![Polynomial::zero(ring); k + 1];
    e[0] = Polynomial::one(ring);
    for v in values {
        for j in (1..=k).rev() {
            e[j] = &e[j] + &(v * &e[j - 1]);
        }
    }
    e
}

/// The splitting map `H_top(BO_n) -> F2[t_1..t_n]`, `w_i -> e_i(t)`.
pub fn splitting_map(n: u32) -> RingMap {
    let top = make_ring(RingSpec::TopBO(n)).unwrap();
    let roots = root_ring(n);
    let ts: Vec<Polynomial> = (0..n as usize).map(|i| Polynomial::var(&roots, i)).collect();
    let e = elementary(&roots, &ts);
    RingMap::new(&top, &roots, e[1..].to_vec()).unwrap()
}

/// `Sq^k e_b(t)`, from `Sq(t_i) = t_i + t_i^2`.
pub fn sq_of_elementary(n: u32, k: u32, b: u32) -> Polynomial {
    let roots = root_ring(n);
    let squared: Vec<Polynomial> = (0..n as usize)
        .map(|i| {
            let t = Polynomial::var(&roots, i);
            &t + &t.square()
        })
        .collect();
    elementary(&roots, &squared)[b as usize].component(Bidegree::new(b + k, 0))
}

/// Every monomial of the ring with bidegree `d`.
pub fn monomials_in(ring: &Ring, d: Bidegree) -> Vec<Monomial> {
    fn rec(ring: &Ring, var: usize, p: u32, q: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var == ring.num_vars() {
            if p == 0 && q == 0 {
                out.push(Polynomial::monomial_from_exponents(ring, exps));
            }
            return;
        }
        let b = ring.variables()[var].bidegree;
        let mut e = 0u32;
        loop {
            exps.push(e as u16);
            rec(ring, var + 1, p - e * b.p, q - e * b.q, exps, out);
            exps.pop();
            e += 1;
            if e * b.p > p || e * b.q > q || (b.p == 0 && b.q == 0) {
                break;
            }
        }
    }
    let mut out = Vec::new();
    rec(ring, 0, d.p, d.q, &mut Vec::new(), &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Every monomial with cohomological degree at most `max_p` and weight at most `max_q`.
pub fn monomials_up_to(ring: &Ring, max_p: u32, max_q: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for p in 0..=max_p {
        for q in 0..=max_q {
            out.extend(monomials_in(ring, Bidegree::new(p, q)));
        }
    }
    out
}

/// Row-echelon span over F2 of bit vectors. Each stored row has its pivot
/// (highest set bit) cleared from all later rows.
#[derive(Default)]
pub struct Span {
    rows: Vec<(usize, Vec<u64>)>,
}

fn highest_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().rev().find(|(_, w)| **w != 0).map(|(i, w)| 64 * i + 63 - w.leading_zeros() as usize)
}

impl Span {
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (pivot, row) in &self.rows {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        match highest_bit(&v) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: Vec<u64>) -> bool {
        highest_bit(&self.reduce(v)).is_none()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Linear-algebra model of a homogeneous ideal in one bidegree: the span of
/// all `monomial * generator` products landing there.
pub struct DegreePiece {
    pub index: HashMap<Monomial, usize>,
    pub span: Span,
    words: usize,
}

impl DegreePiece {
    pub fn new(gens: &[Polynomial], ring: &Ring, d: Bidegree) -> Self {
        let basis = monomials_in(ring, d);
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let words = basis.len().div_ceil(64).max(1);
        let mut piece = DegreePiece { index, span: Span::default(), words };
        for g in gens {
            let Some(gd) = g.bidegree_of().bidegree() else { continue };
            if gd.p > d.p || gd.q > d.q {
                continue;
            }
            for m in monomials_in(ring, Bidegree::new(d.p - gd.p, d.q - gd.q)) {
                let v = piece.vector(&g.mul_monomial(&m));
                piece.span.insert(v);
            }
        }
        piece
    }

    pub fn vector(&self, f: &Polynomial) -> Vec<u64> {
        let mut v = vec![0u64; self.words];
        for t in f.terms() {
            let i = self.index[t];
            v[i / 64] ^= 1 << (i % 64);
        }
        v
    }

    pub fn dimension(&self) -> usize {
        self.index.len()
    }

    pub fn quotient_dimension(&self) -> usize {
        self.index.len() - self.span.rank()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.span.contains(self.vector(f))
    }
}

/// Brute-force membership of a (possibly inhomogeneous) element in a homogeneous ideal.
pub fn member_by_linear_algebra(f: &Polynomial, gens: &[Polynomial]) -> bool {
    let mut degrees: Vec<Bidegree> = f.terms().iter().map(Monomial::bidegree).collect();
    degrees.sort_unstable_by_key(|d| (d.p, d.q));
    degrees.dedup();
    degrees.into_iter().all(|d| DegreePiece::new(gens, f.ring(), d).contains(&f.component(d)))
}

/// Direct regularity test up to cohomological degree `max_p`: multiplication
/// by each `f_i` is injective on the truncated quotient by its predecessors.
pub fn regular_up_to(seq: &[Polynomial], ring: &Ring, max_p: u32, max_q: u32) -> bool {
    for (i, f) in seq.iter().enumerate() {
        let prefix = &seq[..i];
        let fd = f.bidegree_of().bidegree().expect("homogeneous");
        for p in 0..=max_p.saturating_sub(fd.p) {
            for q in 0..=max_q.saturating_sub(fd.q) {
                let d = Bidegree::new(p, q);
                let source = DegreePiece::new(prefix, ring, d);
                let target = DegreePiece::new(prefix, ring, Bidegree::new(p + fd.p, q + fd.q));
                // Kernel of (R/I)_d -> (R/I)_{d + deg f}: images of a basis of the
                // quotient must stay independent modulo I in the target.
                let mut image = Span::default();
                for row in &target.span.rows {
                    image.insert(row.1.clone());
                }
                let mut quotient = Span::default();
                for row in &source.span.rows {
                    quotient.insert(row.1.clone());
                }
                for m in source.index.keys() {
                    let v = source.vector(&Polynomial::monomial(ring, *m));
                    if quotient.insert(v) && !image.insert(target.vector(&f.mul_monomial(m))) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A ring with up to four generators of small random bidegree, for kernel tests.
pub fn small_ring(degrees: &[Bidegree]) -> Ring {
    let vars = degrees.iter().enumerate().map(|(i, d)| Variable::adjoined(format!("a{}", i + 1), *d)).collect();
    RingContext::new(format!("A{}", degrees.len()), GradingMode::Motivic, vars).unwrap()
}

/// A random homogeneous ideal: two to four variables of bidegree `p <= 3`,
/// one to four generators of cohomological degree at most `max_gen_p`.
pub fn random_ideal(rng: &mut impl rand::Rng, max_gen_p: u32) -> (Ring, Vec<Polynomial>) {
    let nvars = rng.random_range(2..=4);
    let degrees: Vec<Bidegree> = (0..nvars)
        .map(|_| {
            let p = rng.random_range(1..=3);
            Bidegree::new(p, rng.random_range(0..=p / 2))
        })
        .collect();
    let ring = small_ring(&degrees);
    let mut pieces: Vec<Vec<Monomial>> = Vec::new();
    for p in 1..=max_gen_p {
        for q in 0..=max_gen_p {
            let ms = monomials_in(&ring, Bidegree::new(p, q));
            if !ms.is_empty() {
                pieces.push(ms);
            }
        }
    }
    let ngens = rng.random_range(1..=4);
    let gens = (0..ngens)
        .map(|_| {
            let ms = &pieces[rng.random_range(0..pieces.len())];
            random_combination(rng, &ring, ms)
        })
        .collect();
    (ring, gens)
}

/// A nonzero random F2-combination of `monomials`.
pub fn random_combination(rng: &mut impl rand::Rng, ring: &Ring, monomials: &[Monomial]) -> Polynomial {
    loop {
        let terms: Vec<Monomial> = monomials.iter().filter(|_| rng.random_bool(0.5)).copied().collect();
        if !terms.is_empty() {
            return Polynomial::from_terms(ring, terms);
        }
    }
}

/// Compares `ideal_member` and `hilbert_series` with the linear-algebra model
/// in every bidegree with `p <= max_p`, `q <= max_p`. Returns the number of
/// membership queries made.
pub fn kernel_matches_oracle(rng: &mut impl rand::Rng, ring: &Ring, gens: &[Polynomial], max_p: u32) -> Result<usize, String> {
    use swu_core::groebner::{hilbert_series, ideal_member};
    let series = hilbert_series(gens, ring, Bidegree::new(max_p, max_p)).map_err(|e| e.to_string())?;
    let mut queries = 0;
    for p in 0..=max_p {
        for q in 0..=max_p {
            let d = Bidegree::new(p, q);
            let piece = DegreePiece::new(gens, ring, d);
            let expected = piece.quotient_dimension() as u64;
            if series.coefficient(d) != Some(expected) {
                return Err(format!("Hilbert coefficient at {d}: series {:?}, oracle {expected}", series.coefficient(d)));
            }
            let basis: Vec<Monomial> = piece.index.keys().copied().collect();
            let mut candidates: Vec<Polynomial> = basis.iter().map(|m| Polynomial::monomial(ring, *m)).collect();
            if !basis.is_empty() {
                for _ in 0..4 {
                    candidates.push(random_combination(rng, ring, &basis));
                }
            }
            for f in candidates {
                let got = ideal_member(&f, gens, ring).map_err(|e| e.to_string())?;
                if got != piece.contains(&f) {
                    return Err(format!("membership of {f}: kernel {got}, oracle {}", !got));
                }
                queries += 1;
            }
        }
    }
    Ok(queries)
}
