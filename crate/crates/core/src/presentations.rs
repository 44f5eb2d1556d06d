//! Presentations of `H(BO_n)`, `H(BSO_n)`, `H(BSpin_n)` and `H(BΓ⁺_n)` over
//! `H = F2[tau]`, the checks that certify their relation ideals, and the
//! reduced Chern subring.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::algebra::{make_ring, AlgebraError, Bidegree, Family, Monomial, Polynomial, Ring, RingMap, RingSpec, MAX_VARS};
use crate::groebner::{
    groebner_basis, ideal_member_with, is_regular_sequence_with, normal_form, radical_member_with, BiPoly, GroebnerError,
    HilbertSeries, Limits, MonomialOrder, Verdict,
};
use crate::report::{Check, CheckVerdict};
use crate::steenrod::{rhos, thetas, ComparisonMaps, Steenrod, SteenrodError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("{what} needs n >= {min}, got {n}")]
    OutOfRange { what: &'static str, n: u32, min: u32 },
    #[error("unknown group {0:?} (expected o, so, spin or gamma+)")]
    UnknownGroup(String),
}

/// `(k(n), l(n))`: `k` from the 8-periodic table, `l = floor((n + 1) / 2)`.
pub fn bound_indices(n: u32) -> Result<(u32, u32), PresentationError> {
    if n < 2 {
        return Err(PresentationError::OutOfRange { what: "bound_indices", n, min: 2 });
    }
    let (block, row) = ((n - 1) / 8, (n - 1) % 8 + 1);
    let k = 4 * block
        + match row {
            1 => 0,
            2 => 1,
            3 | 4 => 2,
            _ => 3,
        };
    Ok((k, n.div_ceil(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    O,
    SO,
    Spin,
    GammaPlus,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::O, Group::SO, Group::Spin, Group::GammaPlus];

    pub fn min_n(self) -> u32 {
        match self {
            Group::O => 1,
            _ => 2,
        }
    }

    /// Lower-case spelling used on the command line and in file names.
    pub fn slug(self) -> &'static str {
        match self {
            Group::O => "o",
            Group::SO => "so",
            Group::Spin => "spin",
            Group::GammaPlus => "gamma+",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::O => "O",
            Group::SO => "SO",
            Group::Spin => "Spin",
            Group::GammaPlus => "GammaPlus",
        })
    }
}

impl FromStr for Group {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "o" => Ok(Group::O),
            "so" => Ok(Group::SO),
            "spin" => Ok(Group::Spin),
            "gamma+" | "gammaplus" | "gamma-plus" => Ok(Group::GammaPlus),
            _ => Err(PresentationError::UnknownGroup(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedDegree {
    pub name: String,
    pub p: u32,
    pub q: u32,
}

/// `H[generators] / (relations) ⊗_H H[adjoined]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    group: Group,
    n: u32,
    ring: Ring,
    relations: Vec<Polynomial>,
    adjoined: Vec<NamedDegree>,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    group: String,
    n: u32,
    base: &'static str,
    generators: Vec<NamedDegree>,
    relations: Vec<String>,
    adjoined: &'a [NamedDegree],
}

impl Presentation {
    pub const BASE: &'static str = "F2[tau]";

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The polynomial ring over `F2[tau]` the relations live in.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> Vec<NamedDegree> {
        self.ring
            .variables()
            .iter()
            .filter(|v| v.family != Family::Tau)
            .map(|v| NamedDegree { name: v.name().to_string(), p: v.bidegree.p, q: v.bidegree.q })
            .collect()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn adjoined(&self) -> &[NamedDegree] {
        &self.adjoined
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let doc = PresentationJson {
            group: self.group.to_string(),
            n: self.n,
            base: Self::BASE,
            generators: self.generators(),
            relations: self.relations.iter().map(Polynomial::to_string).collect(),
            adjoined: &self.adjoined,
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("presentation serializes");
        out.push('\n');
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.name.clone()).collect();
        write!(f, "H(B{}_{}) = {}[{}]", self.group, self.n, Self::BASE, gens.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| format!("({r})")).collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        for a in &self.adjoined {
            write!(f, " ⊗ H[{}]", a.name)?;
        }
        Ok(())
    }
}

fn power_generator(prefix: &str, e: u32) -> NamedDegree {
    let p = 1u32 << e;
    NamedDegree { name: format!("{prefix}{p}"), p, q: p / 2 }
}

pub fn present(group: Group, n: u32) -> Result<Presentation, PresentationError> {
    if n < group.min_n() {
        return Err(PresentationError::OutOfRange { what: "present", n, min: group.min_n() });
    }
    let (ring, relations, adjoined) = match group {
        Group::O => (make_ring(RingSpec::BO(n))?, vec![], vec![]),
        Group::SO => (make_ring(RingSpec::BSO(n))?, vec![], vec![]),
        Group::Spin => {
            let (k, _) = bound_indices(n)?;
            let th = thetas(n, k - 1)?;
            (th[0].ring().clone(), th, vec![power_generator("v", k)])
        }
        Group::GammaPlus => {
            let (_, l) = bound_indices(n)?;
            let th = thetas(n, l - 1)?;
            (th[0].ring().clone(), th[1..].to_vec(), vec![power_generator("e", l)])
        }
    };
    Ok(Presentation { group, n, ring, relations, adjoined })
}

/// `I°_j = (theta_1, ..., theta_{j-1})` and `theta_j` in `H(BSO_n)`.
fn circ_ideal(n: u32, j: u32) -> Result<(Vec<Polynomial>, Polynomial), PresentationError> {
    let mut th = thetas(n, j)?;
    let last = th.pop().expect("nonempty chain");
    Ok((th.split_off(1), last))
}

fn membership_check(id: String, f: &Polynomial, gens: &[Polynomial], expected: bool, limits: Limits) -> Check {
    match ideal_member_with(f, gens, f.ring(), limits) {
        Ok(member) => Check::from_bool(
            id,
            member == expected,
            json!({ "element": f.to_string(), "ideal": gens.iter().map(Polynomial::to_string).collect::<Vec<_>>(), "member": member, "expected": expected, "degree_cap": f.max_p() }),
        ),
        Err(e) => Check::unresolved(id, e),
    }
}

fn regularity_check(id: String, seq: &[Polynomial], ring: &Ring, limits: Limits) -> Check {
    match is_regular_sequence_with(seq, ring, limits) {
        Ok(cert) => {
            let verdict = match cert.verdict {
                Verdict::Regular => CheckVerdict::Pass,
                Verdict::NotRegular => CheckVerdict::Fail,
                Verdict::Undecided => CheckVerdict::Unresolved,
            };
            Check::new(id, verdict, serde_json::to_value(&cert).expect("certificate serializes"))
        }
        Err(e) => Check::unresolved(id, e),
    }
}

/// Regularity of `theta_1..theta_{l-1}` in `H(BSO_n)`, membership of `theta_l`
/// in `I°_l`, and the `l = k` / `l = k + 1` dichotomy for `theta_k`.
pub fn verify_mq1(n: u32) -> Result<Vec<Check>, PresentationError> {
    verify_mq1_with(n, Limits::default())
}

pub fn verify_mq1_with(n: u32, limits: Limits) -> Result<Vec<Check>, PresentationError> {
    if n < 3 {
        return Err(PresentationError::OutOfRange { what: "verify_mq1", n, min: 3 });
    }
    let (k, l) = bound_indices(n)?;
    let (seq, theta_l) = circ_ideal(n, l)?;
    let ring = theta_l.ring().clone();
    let mut checks = vec![
        regularity_check(format!("mq1.n={n}.regular"), &seq, &ring, limits),
        membership_check(format!("mq1.n={n}.member"), &theta_l, &seq, true, limits),
    ];
    let (seq_k, theta_k) = circ_ideal(n, k)?;
    let expected = l == k;
    let mut dichotomy = membership_check(format!("mq1.n={n}.dichotomy"), &theta_k, &seq_k, expected, limits);
    if let serde_json::Value::Object(map) = &mut dichotomy.certificate {
        map.insert("k".into(), json!(k));
        map.insert("l".into(), json!(l));
    }
    if l != k && l != k + 1 {
        dichotomy.verdict = CheckVerdict::Fail;
    }
    checks.push(dichotomy);
    Ok(checks)
}

/// Regularity of `tau, theta_1, ..., theta_{l-1}` in `H(BSO_n)`.
pub fn verify_tau_sequence(n: u32, limits: Limits) -> Result<Check, PresentationError> {
    let (_, l) = bound_indices(n)?;
    let (seq, _) = circ_ideal(n, l)?;
    let ring = make_ring(RingSpec::BSO(n))?;
    let mut full = vec![Polynomial::named(&ring, "tau")?];
    full.extend(seq);
    Ok(regularity_check(format!("tauseq.n={n}"), &full, &ring, limits))
}

/// Every `theta_0..theta_{k-1}` lies in `I°_l + (u_2)`.
pub fn verify_spin_containment(n: u32, limits: Limits) -> Result<Check, PresentationError> {
    let (k, l) = bound_indices(n)?;
    let th = thetas(n, k.max(l) - 1)?;
    let mut gens: Vec<Polynomial> = th[1..l as usize].to_vec();
    gens.push(th[0].clone());
    let mut members = Vec::new();
    for t in &th[..k as usize] {
        match ideal_member_with(t, &gens, t.ring(), limits) {
            Ok(b) => members.push(b),
            Err(e) => return Ok(Check::unresolved(format!("spin-containment.n={n}"), e)),
        }
    }
    Ok(Check::from_bool(format!("spin-containment.n={n}"), members.iter().all(|&b| b), json!({ "k": k, "l": l, "members": members })))
}

/// Relations of the topological presentation `H_top(BSO_n) / (rho_1..rho_{l-1}) ⊗ F2[e(Δ_n)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologicalPresentation {
    pub n: u32,
    pub relations: Vec<Polynomial>,
    /// Degree of the Euler class of the complex spin representation.
    pub euler_degree: u32,
}

pub fn topological_presentation(n: u32) -> Result<TopologicalPresentation, PresentationError> {
    if n < 3 {
        return Err(PresentationError::OutOfRange { what: "topological_presentation", n, min: 3 });
    }
    let (_, l) = bound_indices(n)?;
    let relations = rhos(n, l - 1)?.split_off(1);
    // The complex spin representation has dimension 2^{floor((n-1)/2)}.
    let euler_degree = 2 << ((n - 1) / 2);
    Ok(TopologicalPresentation { n, relations, euler_degree })
}

/// `t` carries the Γ⁺ relations onto the topological ones, and the adjoined
/// generator has the degree of the topological Euler class.
pub fn topological_comparison(n: u32) -> Result<Check, PresentationError> {
    let pres = present(Group::GammaPlus, n)?;
    let top = topological_presentation(n)?;
    let maps = ComparisonMaps::new(n)?;
    let images = pres.relations().iter().map(|r| maps.t(r)).collect::<Result<Vec<_>, _>>()?;
    let relations_match = images == top.relations;
    let degree = pres.adjoined()[0].p;
    Ok(Check::from_bool(
        format!("topcmp.n={n}"),
        relations_match && degree == top.euler_degree,
        json!({
            "t_of_relations": images.iter().map(Polynomial::to_string).collect::<Vec<_>>(),
            "topological_relations": top.relations.iter().map(Polynomial::to_string).collect::<Vec<_>>(),
            "adjoined_degree": degree,
            "euler_degree": top.euler_degree,
        }),
    ))
}

/// `c_i = tau^{i mod 2} u_i^2` in `H(BSO_n)`.
pub fn chern_class(i: u32, n: u32) -> Result<Polynomial, PresentationError> {
    if i < 2 || i > n {
        return Err(PresentationError::OutOfRange { what: "chern_class index", n: i, min: 2 });
    }
    let ring = make_ring(RingSpec::BSO(n))?;
    let u = Polynomial::named(&ring, &format!("u{i}"))?.square();
    Ok(if i % 2 == 1 { &u * &Polynomial::named(&ring, "tau")? } else { u })
}

/// The inclusion `F2[c_2..c_n] -> H(BSO_n)`.
pub fn chern_inclusion(n: u32) -> Result<RingMap, PresentationError> {
    let c = make_ring(RingSpec::Chern(n))?;
    let bso = make_ring(RingSpec::BSO(n))?;
    let images = (2..=n).map(|i| chern_class(i, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(RingMap::new(&c, &bso, images)?)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChernExpression {
    Expressed(Polynomial),
    NotInSubring,
}

impl ChernExpression {
    pub fn expressed(&self) -> Option<&Polynomial> {
        match self {
            ChernExpression::Expressed(p) => Some(p),
            ChernExpression::NotInSubring => None,
        }
    }
}

/// Writes `f` in the Chern classes, monomial by monomial: `tau^t Π u_i^{2a_i}`
/// is `Π c_i^{a_i}` exactly when `t = Σ_{i odd} a_i`.
pub fn express_in_chern(f: &Polynomial, n: u32) -> Result<ChernExpression, PresentationError> {
    let bso = make_ring(RingSpec::BSO(n))?;
    f.check_ring(&bso)?;
    let c = make_ring(RingSpec::Chern(n))?;
    let tau_slot = bso.slot(bso.tau().expect("BSO has tau"));
    let mut terms = Vec::with_capacity(f.len());
    for m in f.terms() {
        let mut exps = [0u16; MAX_VARS];
        let mut odd_total = 0u32;
        for i in 2..=n {
            let e = m.exponent(bso.slot(bso.find(Family::U, i).expect("u generator")));
            if e % 2 == 1 {
                return Ok(ChernExpression::NotInSubring);
            }
            if i % 2 == 1 {
                odd_total += u32::from(e / 2);
            }
            exps[c.slot(c.find(Family::C, i).expect("c generator"))] = e / 2;
        }
        if u32::from(m.exponent(tau_slot)) != odd_total {
            return Ok(ChernExpression::NotInSubring);
        }
        terms.push(Monomial::from_slots(exps, c.weights()));
    }
    Ok(ChernExpression::Expressed(Polynomial::from_terms(&c, terms)))
}

/// `tau theta_j^2 = Sq^{2^j} ... Sq^4 Sq^2 c_2`, and the result is a polynomial in the `c_i`.
pub fn verify_chern_relation(n: u32, j: u32) -> Result<Check, PresentationError> {
    if j < 1 {
        return Err(PresentationError::OutOfRange { what: "verify_chern_relation j", n: j, min: 1 });
    }
    let th = thetas(n, j)?.pop().expect("nonempty chain");
    let ring = th.ring().clone();
    let lhs = &Polynomial::named(&ring, "tau")? * &th.square();
    let c2 = chern_class(2, n)?;
    let rhs = Steenrod::new(&ring)?.doubling_chain(&c2, 1, j)?.pop().expect("nonempty chain");
    let expressed = express_in_chern(&rhs, n)?;
    let ok = lhs == rhs && expressed.expressed().is_some();
    Ok(Check::from_bool(
        format!("chern.n={n}.j={j}"),
        ok,
        json!({
            "tau_theta_squared": lhs.to_string(),
            "squares_of_c2": rhs.to_string(),
            "in_chern_classes": expressed.expressed().map(Polynomial::to_string),
        }),
    ))
}

/// All monomials of the ring with cohomological degree exactly `p`, in descending order.
fn monomials_of_degree(ring: &Ring, p: u32) -> Vec<Monomial> {
    fn rec(ring: &Ring, var: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var == ring.num_vars() {
            if left == 0 {
                out.push(Polynomial::monomial_from_exponents(ring, exps));
            }
            return;
        }
        let d = ring.variables()[var].bidegree.p;
        let max = left / d;
        for e in 0..=max {
            exps.push(e as u16);
            rec(ring, var + 1, left - e * d, exps, out);
            exps.pop();
        }
    }
    let mut out = Vec::new();
    rec(ring, 0, p, &mut Vec::new(), &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Kernel of `F2[c] -> H(BSO_n) / I°_l` in cohomological degrees up to `bound`,
/// as a list of elements that generate it there.
fn chern_kernel(n: u32, bound: u32, limits: Limits) -> Result<Vec<Polynomial>, PresentationError> {
    let (_, l) = bound_indices(n)?;
    let (gens, _) = circ_ideal(n, l)?;
    let bso = gens.first().map(|g| g.ring().clone()).unwrap_or(make_ring(RingSpec::BSO(n))?);
    let gb = groebner_basis(&gens, &bso, MonomialOrder::DegRevLex, limits.with_cap(Some(bound)))?;
    let iota = chern_inclusion(n)?;
    let c = iota.domain().clone();
    let mut kernel: Vec<Polynomial> = Vec::new();
    for p in (2..=bound).step_by(2) {
        let monos = monomials_of_degree(&c, p);
        // Row-reduce the normal forms, tracking which c-combination produced each row.
        let mut rows: Vec<(Polynomial, Polynomial)> = Vec::new();
        for m in monos {
            let src = Polynomial::monomial(&c, m);
            let mut nf = normal_form(&iota.apply(&src)?, &gb)?;
            let mut combo = src;
            while let Some(lead) = nf.leading_monomial().copied() {
                let Some((r, cmb)) = rows.iter().find(|(r, _)| r.leading_monomial() == Some(&lead)) else { break };
                nf = &nf + r;
                combo = &combo + cmb;
            }
            if nf.is_zero() {
                let reducible = ideal_member_with(&combo, &kernel, &c, limits)?;
                if !reducible {
                    kernel.push(combo);
                }
            } else {
                rows.push((nf, combo));
            }
        }
    }
    Ok(kernel)
}

/// `√(tau theta_1^2, ..., tau theta_{l-1}^2) = √(ι^{-1}(I°_l))` in `F2[c_2..c_n]`,
/// with the pullback generators found by a scan up to `2 deg theta_{l-1}`.
pub fn radical_equal_on_generators(n: u32) -> Result<Check, PresentationError> {
    radical_equal_on_generators_with(n, Limits::default())
}

pub fn radical_equal_on_generators_with(n: u32, limits: Limits) -> Result<Check, PresentationError> {
    let id = format!("radical.n={n}");
    let (_, l) = bound_indices(n)?;
    let (circ, _) = circ_ideal(n, l)?;
    let bound = 2 * circ.last().map_or(0, Polynomial::max_p);
    let c = make_ring(RingSpec::Chern(n))?;
    let mut relations = Vec::new();
    for t in &circ {
        let f = &Polynomial::named(t.ring(), "tau")? * &t.square();
        match express_in_chern(&f, n)? {
            ChernExpression::Expressed(g) => relations.push(g),
            ChernExpression::NotInSubring => {
                return Ok(Check::from_bool(id, false, json!({ "not_in_chern_subring": f.to_string() })));
            }
        }
    }
    let kernel = match chern_kernel(n, bound, limits) {
        Ok(k) => k,
        Err(e) => return Ok(Check::unresolved(id, e)),
    };
    let mut forward = Vec::new();
    for g in &relations {
        match radical_member_with(g, &kernel, &c, limits) {
            Ok(b) => forward.push(b),
            Err(e) => return Ok(Check::unresolved(id, e)),
        }
    }
    let mut backward = Vec::new();
    for k in &kernel {
        match radical_member_with(k, &relations, &c, limits) {
            Ok(b) => backward.push(b),
            Err(e) => return Ok(Check::unresolved(id, e)),
        }
    }
    let ok = forward.iter().chain(&backward).all(|&b| b);
    Ok(Check::from_bool(
        id,
        ok,
        json!({
            "scan_bound": bound,
            "relations": relations.iter().map(Polynomial::to_string).collect::<Vec<_>>(),
            "pullback_generators": kernel.iter().map(Polynomial::to_string).collect::<Vec<_>>(),
            "relations_in_radical_of_pullback": forward,
            "pullback_in_radical_of_relations": backward,
        }),
    ))
}

/// Hilbert series of the presented algebra. When the relations form a regular
/// sequence the series is read off their degrees; otherwise it comes from a
/// Gröbner basis.
pub fn presentation_hilbert(pres: &Presentation, truncation: Bidegree) -> Result<HilbertSeries, PresentationError> {
    let ring = pres.ring();
    let cert = is_regular_sequence_with(pres.relations(), ring, Limits::default())?;
    let numerator = if cert.is_regular() {
        BiPoly::product_one_minus(&cert.degrees)
    } else {
        let gb = groebner_basis(pres.relations(), ring, MonomialOrder::DegRevLex, Limits::default())?;
        crate::groebner::monomial_numerator(&gb.leading_monomials(), ring.weights())
    };
    let mut denominator: Vec<Bidegree> = ring.variables().iter().map(|v| v.bidegree).collect();
    denominator.extend(pres.adjoined().iter().map(|a| Bidegree::new(a.p, a.q)));
    Ok(HilbertSeries::from_rational(numerator, denominator, truncation))
}
