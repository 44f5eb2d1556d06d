//! Buchberger's algorithm over F2 with the Gebauer-Möller update and the
//! normal selection strategy.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use rustc_hash::FxHashSet;

use crate::algebra::{Monomial, Polynomial, Ring, Weights};

use super::{GroebnerError, Limits};

/// A queued unit of work: an S-pair, or an input generator waiting for its degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Task {
    lcm: Monomial,
    kind: TaskKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum TaskKind {
    Input(usize),
    Pair(usize, usize),
}

impl Ord for Task {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lcm.cmp(&other.lcm).then_with(|| self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for Task {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(super) struct Outcome {
    pub basis: Vec<Vec<Monomial>>,
    pub complete: bool,
}

struct Element {
    terms: Vec<Monomial>,
    lead: Monomial,
    support: u32,
    live: bool,
}

/// Reduction scratch space: the polynomial being reduced as a set of
/// monomials with a max-heap over them.
#[derive(Default)]
struct Reducer {
    present: FxHashSet<Monomial>,
    heap: BinaryHeap<Monomial>,
}

impl Reducer {
    fn clear(&mut self) {
        self.present.clear();
        self.heap.clear();
    }

    #[inline]
    fn toggle(&mut self, m: Monomial) {
        if !self.present.remove(&m) {
            self.present.insert(m);
            self.heap.push(m);
        }
    }

    fn pop_max(&mut self) -> Option<Monomial> {
        while let Some(m) = self.heap.pop() {
            if self.present.remove(&m) {
                return Some(m);
            }
        }
        None
    }
}

pub(super) struct Buchberger<'a> {
    weights: &'a Weights,
    limits: Limits,
    elements: Vec<Element>,
    inputs: Vec<Vec<Monomial>>,
    queue: BinaryHeap<Reverse<Task>>,
    pairs_created: usize,
    truncated: bool,
    reducer: Reducer,
}

impl<'a> Buchberger<'a> {
    pub fn new(ring: &'a Ring, limits: Limits) -> Self {
        Buchberger {
            weights: ring.weights(),
            limits,
            elements: Vec::new(),
            inputs: Vec::new(),
            queue: BinaryHeap::new(),
            pairs_created: 0,
            truncated: false,
            reducer: Reducer::default(),
        }
    }

    fn within_cap(&self, m: &Monomial) -> bool {
        self.limits.degree_cap.is_none_or(|cap| m.p() <= cap)
    }

    pub fn run(mut self, gens: &[Polynomial]) -> Result<Outcome, GroebnerError> {
        for g in gens {
            let Some(&lead) = g.leading_monomial() else { continue };
            if !self.within_cap(&lead) {
                self.truncated = true;
                continue;
            }
            let idx = self.inputs.len();
            self.inputs.push(g.terms().to_vec());
            self.queue.push(Reverse(Task { lcm: lead, kind: TaskKind::Input(idx) }));
        }

        while let Some(Reverse(task)) = self.queue.pop() {
            let reduced = match task.kind {
                TaskKind::Input(idx) => {
                    let terms = std::mem::take(&mut self.inputs[idx]);
                    self.reduce(terms.into_iter())
                }
                TaskKind::Pair(i, j) => {
                    let (a, b) = (&self.elements[i], &self.elements[j]);
                    let fa = task.lcm.div(&a.lead);
                    let fb = task.lcm.div(&b.lead);
                    let tail_a: Vec<Monomial> = a.terms[1..].iter().map(|t| t.mul(&fa)).collect();
                    let tail_b: Vec<Monomial> = b.terms[1..].iter().map(|t| t.mul(&fb)).collect();
                    self.reduce(tail_a.into_iter().chain(tail_b))
                }
            };
            if !reduced.is_empty() {
                self.insert(reduced)?;
            }
        }

        let complete = !self.truncated;
        Ok(Outcome { basis: self.interreduce(), complete })
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let support = m.support();
        let mut best: Option<usize> = None;
        for (k, e) in self.elements.iter().enumerate() {
            if e.live && e.support & !support == 0 && e.lead.divides(m) {
                match best {
                    Some(b) if self.elements[b].terms.len() <= e.terms.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Full reduction against the live elements; returns terms in descending order.
    fn reduce(&mut self, terms: impl Iterator<Item = Monomial>) -> Vec<Monomial> {
        let mut state = std::mem::take(&mut self.reducer);
        state.clear();
        for t in terms {
            state.toggle(t);
        }
        let mut out = Vec::new();
        while let Some(m) = state.pop_max() {
            match self.find_reducer(&m) {
                Some(k) => {
                    let e = &self.elements[k];
                    let factor = m.div(&e.lead);
                    for t in &e.terms[1..] {
                        state.toggle(t.mul(&factor));
                    }
                }
                None => out.push(m),
            }
        }
        self.reducer = state;
        out
    }

    /// Adds a reduced element and updates the pair queue (Gebauer-Möller).
    fn insert(&mut self, terms: Vec<Monomial>) -> Result<(), GroebnerError> {
        let lead = terms[0];
        let new = self.elements.len();

        // Drop queued pairs (i, j) whose lcm is divisible by the new lead, unless
        // the lcm is also the lcm with the new element.
        let weights = self.weights;
        let pending: Vec<Reverse<Task>> = std::mem::take(&mut self.queue).into_vec();
        for Reverse(task) in pending {
            let keep = match task.kind {
                TaskKind::Input(_) => true,
                TaskKind::Pair(i, j) => {
                    !lead.divides(&task.lcm)
                        || self.elements[i].lead.lcm(&lead, weights) == task.lcm
                        || self.elements[j].lead.lcm(&lead, weights) == task.lcm
                }
            };
            if keep {
                self.queue.push(Reverse(task));
            }
        }

        // Candidate pairs with the new element.
        let mut candidates: Vec<(Monomial, usize, bool)> = self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, e)| e.live)
            .map(|(i, e)| (e.lead.lcm(&lead, weights), i, e.lead.is_coprime(&lead)))
            .collect();
        candidates.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

        // Chain criterion among the new pairs: drop a pair if some other new
        // pair's lcm properly divides it; among equal lcms keep one, and drop
        // the whole class when any member satisfies the product criterion.
        let mut kept: Vec<(Monomial, usize)> = Vec::new();
        let mut i = 0;
        while i < candidates.len() {
            let mut j = i;
            let mut coprime = false;
            while j < candidates.len() && candidates[j].0 == candidates[i].0 {
                coprime |= candidates[j].2;
                j += 1;
            }
            let lcm = candidates[i].0;
            let dominated = candidates.iter().any(|c| c.0 != lcm && c.0.divides(&lcm));
            if !dominated && !coprime {
                kept.push((lcm, candidates[i].1));
            }
            i = j;
        }

        for e in self.elements.iter_mut() {
            if e.live && lead.divides(&e.lead) {
                e.live = false;
            }
        }
        self.elements.push(Element { support: lead.support(), lead, terms, live: true });

        for (lcm, i) in kept {
            if !self.within_cap(&lcm) {
                self.truncated = true;
                continue;
            }
            self.pairs_created += 1;
            if self.pairs_created > self.limits.pair_limit {
                return Err(GroebnerError::ResourceLimit { limit: self.limits.pair_limit, basis_size: self.elements.len() });
            }
            self.queue.push(Reverse(Task { lcm, kind: TaskKind::Pair(i, new) }));
        }
        Ok(())
    }

    /// Reduced basis sorted by ascending leading monomial.
    fn interreduce(mut self) -> Vec<Vec<Monomial>> {
        let mut live: Vec<usize> = (0..self.elements.len()).filter(|&k| self.elements[k].live).collect();
        live.sort_by(|&a, &b| self.elements[a].lead.cmp(&self.elements[b].lead));
        // Live leads are pairwise non-dividing; tail-reduce each element in turn.
        let mut out = Vec::with_capacity(live.len());
        for &k in &live {
            self.elements[k].live = false;
            let lead = self.elements[k].lead;
            let tail: Vec<Monomial> = self.elements[k].terms[1..].to_vec();
            let mut terms = vec![lead];
            terms.extend(self.reduce(tail.into_iter()));
            self.elements[k].terms = terms.clone();
            self.elements[k].live = true;
            out.push(terms);
        }
        out
    }
}

/// Full reduction of `terms` modulo the basis elements; returns descending terms.
pub(super) fn reduce_against(basis: &[Polynomial], terms: impl Iterator<Item = Monomial>) -> Vec<Monomial> {
    let leads: Vec<(Monomial, u32)> = basis.iter().map(|g| (g.terms()[0], g.terms()[0].support())).collect();
    let mut state = Reducer::default();
    for t in terms {
        state.toggle(t);
    }
    let mut out = Vec::new();
    while let Some(m) = state.pop_max() {
        let support = m.support();
        match leads.iter().position(|(lead, s)| s & !support == 0 && lead.divides(&m)) {
            Some(k) => {
                let factor = m.div(&leads[k].0);
                for t in &basis[k].terms()[1..] {
                    state.toggle(t.mul(&factor));
                }
            }
            None => out.push(m),
        }
    }
    out
}
