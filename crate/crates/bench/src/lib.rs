//! Inputs shared by the criterion benches.

use swu_core::algebra::{make_ring, Polynomial, Ring, RingSpec};
use swu_core::presentations::bound_indices;
use swu_core::splitting::{random_forms, right_radical, twist_sequence, GramForm};
use swu_core::steenrod::thetas;

/// `(theta_1, ..., theta_{j-1})` and `theta_j` in `H(BSO_n)`.
pub fn circ_ideal(n: u32, j: u32) -> (Vec<Polynomial>, Polynomial) {
    let mut th = thetas(n, j).expect("n >= 2");
    let last = th.pop().expect("nonempty chain");
    (th.split_off(1), last)
}

/// The ideal `I°_{l(n)}` together with `theta_{l(n)}`.
pub fn full_circ_ideal(n: u32) -> (Vec<Polynomial>, Polynomial) {
    let (_, l) = bound_indices(n).expect("n >= 2");
    circ_ideal(n, l)
}

/// `theta_{k(n)}` and `I°_{k(n)}`: a non-member whenever `l(n) = k(n) + 1`.
pub fn dichotomy_ideal(n: u32) -> (Vec<Polynomial>, Polynomial) {
    let (k, _) = bound_indices(n).expect("n >= 2");
    circ_ideal(n, k)
}

/// A seeded form of dimension `m` whose twist sequence is nonempty.
pub fn sample_form(m: usize, seed: u64) -> GramForm {
    random_forms(m, 32, seed).into_iter().max_by_key(|f| right_radical(f).h).expect("nonempty sample")
}

/// The twist sequence of `form` and the ring it lives in.
pub fn twists(form: &GramForm) -> (Vec<Polynomial>, Ring) {
    let h = right_radical(form).h;
    let ring = make_ring(RingSpec::R(2 * form.dim() as u32)).expect("valid dimension");
    let seq = twist_sequence(form, h).expect("twists").iter().map(|t| t.embed(&ring).expect("embeds")).collect();
    (seq, ring)
}
