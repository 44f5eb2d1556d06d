//! Bilinear forms over F2, their Frobenius-twisted sequences, and the
//! splitting maps `beta_n: S_n -> R_n` used to check that the reductions of
//! `u_1, u_3, Sq^2 u_3, Sq^4 Sq^2 u_3, ...` form a regular sequence.
//!
//! `S_n = F2[u_1, ..., u_n]` and `R_n = F2[x_1, y_1, ..., x_m, y_m]` for
//! `n = 2m`, with an extra `x_{m+1}` when `n = 2m + 1`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{make_ring, AlgebraError, Monomial, Polynomial, Ring, RingMap, RingSpec, MAX_VARS};
use crate::groebner::{is_regular_sequence_with, GroebnerError, Limits, RegularityCertificate};
use crate::presentations::bound_indices;
use crate::steenrod::{Steenrod, SteenrodError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplittingError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("bad Gram matrix: {0}")]
    BadGram(String),
    #[error("n = {n} is out of range (need {min} <= n)")]
    OutOfRange { n: u32, min: u32 },
}

/// Largest supported form dimension; `R_{2m}` must fit in the monomial width.
pub const MAX_FORM_DIM: usize = MAX_VARS / 2;

/// Gram matrix of a bilinear form on F2^m: bit `j` of `rows[i]` is `B(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GramForm {
    m: usize,
    rows: Vec<u64>,
}

impl GramForm {
    pub fn new(m: usize, rows: Vec<u64>) -> Result<Self, SplittingError> {
        if m == 0 || m > MAX_FORM_DIM {
            return Err(SplittingError::BadGram(format!("dimension {m} outside 1..={MAX_FORM_DIM}")));
        }
        if rows.len() != m || rows.iter().any(|r| r >> m != 0) {
            return Err(SplittingError::BadGram(format!("expected {m} rows of {m} bits")));
        }
        Ok(GramForm { m, rows })
    }

    pub fn identity(m: usize) -> Self {
        GramForm::new(m, (0..m).map(|i| 1 << i).collect()).expect("valid dimension")
    }

    pub fn zero(m: usize) -> Self {
        GramForm::new(m, vec![0; m]).expect("valid dimension")
    }

    /// The form whose `m^2` entries are the low bits of `bits`, row-major.
    pub fn from_index(m: usize, bits: u64) -> Self {
        let mask = (1u64 << m) - 1;
        GramForm::new(m, (0..m).map(|i| (bits >> (i * m)) & mask).collect()).expect("valid dimension")
    }

    /// `B(x, y) = Σ_{i<m} x_i (y_i + y_m)`, the form obtained modulo `u_1` for even `n`.
    pub fn even_reduction(m: usize) -> Self {
        let last = 1u64 << (m - 1);
        GramForm::new(m, (0..m).map(|i| if i + 1 < m { (1 << i) ^ last } else { 0 }).collect()).expect("valid dimension")
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// `G y` for a column vector `y` given as a bit mask.
    pub fn apply(&self, y: u64) -> u64 {
        self.rows.iter().enumerate().fold(0, |acc, (i, r)| acc | (((r & y).count_ones() as u64) & 1) << i)
    }
}

impl fmt::Display for GramForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            let row: String = (0..self.m).map(|j| if self.entry(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl FromStr for GramForm {
    type Err = SplittingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let m = lines.len();
        let mut rows = Vec::with_capacity(m);
        for (i, line) in lines.iter().enumerate() {
            if line.len() != m {
                return Err(SplittingError::BadGram(format!("row {} has {} entries, expected {m}", i + 1, line.len())));
            }
            let mut row = 0u64;
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => row |= 1 << j,
                    _ => return Err(SplittingError::BadGram(format!("row {} has invalid character {c:?}", i + 1))),
                }
            }
            rows.push(row);
        }
        GramForm::new(m, rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightRadical {
    /// Basis of `{y : B(x, y) = 0 for all x}` as bit masks over `e_1..e_m`.
    pub basis: Vec<u64>,
    /// `m - dim` of the radical, which is the rank of `G`.
    pub h: usize,
}

/// Kernel of `y -> G y`, by Gaussian elimination.
pub fn right_radical(form: &GramForm) -> RightRadical {
    let m = form.m;
    let mut rows = form.rows.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(k) = (r..m).find(|&k| rows[k] >> col & 1 == 1) else { continue };
        rows.swap(r, k);
        for k in 0..m {
            if k != r && rows[k] >> col & 1 == 1 {
                rows[k] ^= rows[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..m).filter(|c| !pivots.contains(c)) {
        let mut v = 1u64 << free;
        for (row, &pc) in pivots.iter().enumerate() {
            if rows[row] >> free & 1 == 1 {
                v |= 1 << pc;
            }
        }
        basis.push(v);
    }
    RightRadical { basis, h: pivots.len() }
}

fn x_slot(ring: &Ring, i: usize) -> usize {
    ring.slot(ring.index_of(&format!("x{}", i + 1)).expect("x variable"))
}

fn y_slot(ring: &Ring, i: usize) -> usize {
    ring.slot(ring.index_of(&format!("y{}", i + 1)).expect("y variable"))
}

/// `[B(x, y), B(x, y^2), ..., B(x, y^{2^{count-1}})]` in `R_{2m}`.
pub fn twist_sequence(form: &GramForm, count: usize) -> Result<Vec<Polynomial>, SplittingError> {
    let ring = make_ring(RingSpec::R(2 * form.m as u32))?;
    twist_sequence_in(form, count, &ring)
}

fn twist_sequence_in(form: &GramForm, count: usize, ring: &Ring) -> Result<Vec<Polynomial>, SplittingError> {
    let w = ring.weights();
    let mut out = Vec::with_capacity(count);
    for l in 0..count {
        let e = u16::try_from(1u32 << l).map_err(|_| SplittingError::BadGram(format!("twist 2^{l} too large")))?;
        let mut terms = Vec::new();
        for i in 0..form.m {
            for j in 0..form.m {
                if form.entry(i, j) {
                    terms.push(Monomial::var(x_slot(ring, i), 1, w).mul(&Monomial::var(y_slot(ring, j), e, w)));
                }
            }
        }
        out.push(Polynomial::from_terms(ring, terms));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinearReport {
    pub form: String,
    pub h: usize,
    pub radical_dim: usize,
    pub certificate: RegularityCertificate,
}

impl BilinearReport {
    pub fn passed(&self) -> bool {
        self.certificate.is_regular()
    }
}

/// Checks that the first `h` twists of the form are a regular sequence.
pub fn verify_bilinear_regularity(form: &GramForm) -> Result<BilinearReport, SplittingError> {
    verify_bilinear_regularity_with(form, Limits::default())
}

pub fn verify_bilinear_regularity_with(form: &GramForm, limits: Limits) -> Result<BilinearReport, SplittingError> {
    let radical = right_radical(form);
    let ring = make_ring(RingSpec::R(2 * form.m as u32))?;
    let seq = twist_sequence_in(form, radical.h, &ring)?;
    let certificate = is_regular_sequence_with(&seq, &ring, limits)?;
    Ok(BilinearReport {
        form: form.to_string().trim_end().replace('\n', "/"),
        h: radical.h,
        radical_dim: radical.basis.len(),
        certificate,
    })
}

/// `count` forms of dimension `m` drawn uniformly with a seeded generator.
pub fn random_forms(m: usize, count: usize, seed: u64) -> Vec<GramForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mask = (1u64 << m) - 1;
    (0..count).map(|_| GramForm::new(m, (0..m).map(|_| rng.random::<u64>() & mask).collect()).expect("valid dimension")).collect()
}

/// Every form of dimension `m` (`2^{m^2}` of them).
pub fn all_forms(m: usize) -> impl Iterator<Item = GramForm> {
    (0..1u64 << (m * m)).map(move |bits| GramForm::from_index(m, bits))
}

/// Elementary symmetric polynomials `σ_0, ..., σ_k` of the given polynomials.
fn elementary_symmetric(ring: &Ring, vars: &[Polynomial]) -> Vec<Polynomial> {
    let mut e = vec![Polynomial::one(ring)];
    for v in vars {
        e.push(Polynomial::zero(ring));
        for k in (1..e.len()).rev() {
            let add = &e[k - 1] * v;
            e[k] = &e[k] + &add;
        }
    }
    e
}

/// The splitting map `S_n -> R_n`.
pub fn beta(n: u32) -> Result<RingMap, SplittingError> {
    if n < 2 {
        return Err(SplittingError::OutOfRange { n, min: 2 });
    }
    let s = make_ring(RingSpec::S(n))?;
    let r = make_ring(RingSpec::R(n))?;
    let m = (n / 2) as usize;
    let odd = n % 2 == 1;
    let x: Vec<Polynomial> = (0..m + odd as usize).map(|i| Polynomial::var(&r, r.var_at_slot(x_slot(&r, i)))).collect();
    let y: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(&r, r.var_at_slot(y_slot(&r, i)))).collect();
    let sigma = elementary_symmetric(&r, &y);
    let sigma_hat: Vec<Vec<Polynomial>> = (0..m)
        .map(|i| {
            let others: Vec<Polynomial> = y.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, p)| p.clone()).collect();
            elementary_symmetric(&r, &others)
        })
        .collect();
    let mut images = Vec::with_capacity(n as usize);
    for k in 1..=n as usize {
        let j = k / 2;
        let img = if k % 2 == 0 {
            sigma[j].clone()
        } else {
            let mut acc = Polynomial::zero(&r);
            for i in 0..m {
                if let Some(s) = sigma_hat[i].get(j) {
                    acc = &acc + &(&x[i] * s);
                }
            }
            if odd {
                acc = &acc + &(&x[m] * &sigma[j]);
            }
            acc
        };
        images.push(img);
    }
    Ok(RingMap::new(&s, &r, images)?)
}

/// The reduction `H(BO_n) -> S_n`, `tau -> 0`.
pub fn gamma(n: u32) -> Result<RingMap, SplittingError> {
    let bo = make_ring(RingSpec::BO(n))?;
    let s = make_ring(RingSpec::S(n))?;
    Ok(RingMap::by_names(&bo, &s, &[("tau", Polynomial::zero(&s))])?)
}

/// `Σ_{i≠j} x_i y_j^{2^l}`, plus `Σ_j x_{m+1} y_j^{2^l}` for odd `n`, in `R_n`.
pub fn closed_form(n: u32, l: u32) -> Result<Polynomial, SplittingError> {
    let r = make_ring(RingSpec::R(n))?;
    let w = r.weights();
    let m = (n / 2) as usize;
    let e = 1u16 << l;
    let mut terms = Vec::new();
    for i in 0..m + (n % 2) as usize {
        for j in (0..m).filter(|&j| j != i) {
            terms.push(Monomial::var(x_slot(&r, i), 1, w).mul(&Monomial::var(y_slot(&r, j), e, w)));
        }
    }
    Ok(Polynomial::from_terms(&r, terms))
}

/// `u_3, Sq^2 u_3, Sq^4 Sq^2 u_3, ...` in `H(BO_n)`, with `count` squares applied.
pub fn u3_chain(n: u32, count: u32) -> Result<Vec<Polynomial>, SplittingError> {
    let bo = make_ring(RingSpec::BO(n))?;
    let u3 = Polynomial::named(&bo, "u3")?;
    Ok(Steenrod::new(&bo)?.doubling_chain(&u3, 1, count)?)
}

/// The substitution `R_n -> R_n` that imposes `β_n(u_1) = 0` by solving for
/// the last `x` variable.
pub fn modulo_u1(n: u32) -> Result<RingMap, SplittingError> {
    let r = make_ring(RingSpec::R(n))?;
    let count = (n / 2 + n % 2) as usize;
    let last = format!("x{count}");
    let sum = Polynomial::sum(&r, &(0..count - 1).map(|i| Polynomial::named(&r, &format!("x{}", i + 1))).collect::<Result<Vec<_>, _>>()?);
    Ok(RingMap::by_names(&r, &r, &[(last.as_str(), sum)])?)
}

/// The form that `β_n γ_n(u_3)` becomes modulo `β_n(u_1)`: `Σ_{i<m} x_i (y_i + y_m)`
/// for even `n` and `Σ x_i y_i` for odd `n`.
pub fn reduced_form(n: u32) -> GramForm {
    let m = (n / 2) as usize;
    if n.is_multiple_of(2) {
        GramForm::even_reduction(m)
    } else {
        GramForm::identity(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeqReport {
    pub n: u32,
    pub length: usize,
    /// Canonical strings of the reduced sequence in `S_n`.
    pub sequence: Vec<String>,
    pub regularity: RegularityCertificate,
    /// For each `l` from 0, whether `β γ` of the `l`-th chain element equals the closed form.
    pub closed_form: Vec<bool>,
    /// Whether, modulo `β(u_1)`, the chain becomes the twists of [`reduced_form`].
    pub modulo_u1: bool,
}

impl SeqReport {
    pub fn passed(&self) -> bool {
        self.regularity.is_regular() && self.closed_form.iter().all(|&b| b) && self.modulo_u1
    }
}

/// Regularity of `γ(u_1), γ(u_3), γ(Sq^2 u_3), ...` (`l(n)` elements) in `S_n`,
/// the closed form of their images in `R_n`, and the reduction modulo `u_1`.
pub fn verify_seq_theorem(n: u32) -> Result<SeqReport, SplittingError> {
    verify_seq_theorem_with(n, Limits::default())
}

pub fn verify_seq_theorem_with(n: u32, limits: Limits) -> Result<SeqReport, SplittingError> {
    if n < 3 {
        return Err(SplittingError::OutOfRange { n, min: 3 });
    }
    let (_, l) = bound_indices(n).map_err(|_| SplittingError::OutOfRange { n, min: 3 })?;
    let bo = make_ring(RingSpec::BO(n))?;
    let g = gamma(n)?;
    let b = beta(n)?;
    let chain = u3_chain(n, l.saturating_sub(2))?;

    let mut seq = vec![g.apply(&Polynomial::named(&bo, "u1")?)?];
    for f in &chain {
        seq.push(g.apply(f)?);
    }
    let regularity = is_regular_sequence_with(&seq, g.codomain(), limits)?;

    let mut closed = Vec::with_capacity(chain.len());
    let mut images = Vec::with_capacity(chain.len());
    for (k, f) in chain.iter().enumerate() {
        let img = b.apply(&g.apply(f)?)?;
        closed.push(img == closed_form(n, k as u32)?);
        images.push(img);
    }

    let sub = modulo_u1(n)?;
    let form = reduced_form(n);
    let twists = twist_sequence(&form, images.len())?;
    let mut modulo = true;
    for (img, tw) in images.iter().zip(&twists) {
        modulo &= sub.apply(img)? == tw.embed(b.codomain())?;
    }

    Ok(SeqReport {
        n,
        length: seq.len(),
        sequence: seq.iter().map(Polynomial::to_string).collect(),
        regularity,
        closed_form: closed,
        modulo_u1: modulo,
    })
}
