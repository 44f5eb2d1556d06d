//! Variable rosters and grading data for the polynomial rings we work in.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::{Weights, MAX_VARS};
use super::AlgebraError;

/// A bidegree `(p, q)`: cohomological degree `p` and weight `q`.
///
/// Written `(q)[p]` in the usual motivic notation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: u32,
    pub q: u32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: u32, q: u32) -> Self {
        Bidegree { p, q }
    }

    pub fn is_zero(self) -> bool {
        self.p == 0 && self.q == 0
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Mul<u32> for Bidegree {
    type Output = Bidegree;
    fn mul(self, k: u32) -> Bidegree {
        Bidegree::new(self.p * k, self.q * k)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Tau,
    /// Subtle Stiefel-Whitney classes.
    U,
    /// Topological Stiefel-Whitney classes.
    W,
    X,
    Y,
    /// Chern classes.
    C,
    /// Freely adjoined generators (`e16`, `v8`, the Rabinowitsch variable...).
    Adjoined,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub family: Family,
    pub index: Option<u32>,
    pub bidegree: Bidegree,
    name: String,
}

impl Variable {
    pub fn tau() -> Self {
        Variable { family: Family::Tau, index: None, bidegree: Bidegree::new(0, 1), name: "tau".into() }
    }

    /// `u_i` in bidegree `(i, floor(i/2))`.
    pub fn u(i: u32) -> Self {
        Variable { family: Family::U, index: Some(i), bidegree: Bidegree::new(i, i / 2), name: format!("u{i}") }
    }

    /// `w_i` in degree `i`; topological classes carry no weight.
    pub fn w(i: u32) -> Self {
        Variable { family: Family::W, index: Some(i), bidegree: Bidegree::new(i, 0), name: format!("w{i}") }
    }

    pub fn x(i: u32) -> Self {
        Variable { family: Family::X, index: Some(i), bidegree: Bidegree::new(1, 0), name: format!("x{i}") }
    }

    pub fn y(i: u32) -> Self {
        Variable { family: Family::Y, index: Some(i), bidegree: Bidegree::new(2, 1), name: format!("y{i}") }
    }

    pub fn c(i: u32) -> Self {
        Variable { family: Family::C, index: Some(i), bidegree: Bidegree::new(2 * i, i), name: format!("c{i}") }
    }

    pub fn adjoined(name: impl Into<String>, bidegree: Bidegree) -> Self {
        Variable { family: Family::Adjoined, index: None, bidegree, name: name.into() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The bidegree forced by the family, if the family forces one.
    fn expected_bidegree(&self, mode: GradingMode) -> Option<Bidegree> {
        let i = self.index.unwrap_or(0);
        match (self.family, mode) {
            (Family::Tau, _) => Some(Bidegree::new(0, 1)),
            (Family::U, GradingMode::Motivic) => Some(Bidegree::new(i, i / 2)),
            (Family::U | Family::W, GradingMode::Topological) => Some(Bidegree::new(i, 0)),
            (Family::X, GradingMode::Motivic) => Some(Bidegree::new(1, 0)),
            (Family::Y, GradingMode::Motivic) => Some(Bidegree::new(2, 1)),
            (Family::C, GradingMode::Motivic) => Some(Bidegree::new(2 * i, i)),
            (Family::Adjoined, _) => None,
            _ => Some(Bidegree::new(u32::MAX, u32::MAX)),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradingMode {
    Motivic,
    Topological,
}

/// A polynomial ring over F2 with a fixed variable roster.
///
/// Exponent vectors are stored by *slot*. Slots follow the roster except that
/// `x` variables are moved after the rest and `tau` to the very last slot, so
/// the reverse-lexicographic tie break sees `tau` as the last variable.
#[derive(Clone, Debug)]
pub struct RingContext {
    name: String,
    mode: GradingMode,
    vars: Vec<Variable>,
    slot_of: Vec<usize>,
    var_at_slot: Vec<usize>,
    weights: Weights,
    by_name: HashMap<String, usize>,
}

pub type Ring = Arc<RingContext>;

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.mode == other.mode && self.vars == other.vars
    }
}

impl Eq for RingContext {}

impl RingContext {
    pub fn new(name: impl Into<String>, mode: GradingMode, vars: Vec<Variable>) -> Result<Ring, AlgebraError> {
        let name = name.into();
        if vars.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables { ring: name, count: vars.len() });
        }
        let mut by_name = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if by_name.insert(v.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(v.name.clone()));
            }
            if mode == GradingMode::Topological && v.family == Family::Tau {
                return Err(AlgebraError::InvalidContext(format!("{name}: tau in a topological ring")));
            }
            if let Some(expected) = v.expected_bidegree(mode) {
                if expected != v.bidegree {
                    return Err(AlgebraError::InvalidContext(format!(
                        "{name}: variable {} has bidegree {}, family requires {expected}",
                        v.name, v.bidegree
                    )));
                }
            }
            if mode == GradingMode::Topological && v.bidegree.q != 0 {
                return Err(AlgebraError::InvalidContext(format!("{name}: weight on topological variable {}", v.name)));
            }
        }

        // Slot rank: x variables after the others and tau last. Forms linear in
        // the x variables get far smaller bases when revlex breaks ties on x.
        let rank = |v: &Variable| match v.family {
            Family::Tau => 2,
            Family::X => 1,
            _ => 0,
        };
        let mut var_at_slot: Vec<usize> = (0..vars.len()).collect();
        var_at_slot.sort_by_key(|&i| rank(&vars[i]));
        let mut slot_of = vec![0; vars.len()];
        let mut weights = Weights::default();
        for (slot, &var) in var_at_slot.iter().enumerate() {
            slot_of[var] = slot;
            weights.p[slot] = vars[var].bidegree.p;
            weights.q[slot] = vars[var].bidegree.q;
        }

        Ok(Arc::new(RingContext { name, mode, vars, slot_of, var_at_slot, weights, by_name }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> GradingMode {
        self.mode
    }

    pub fn is_motivic(&self) -> bool {
        self.mode == GradingMode::Motivic
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn slot(&self, var: usize) -> usize {
        self.slot_of[var]
    }

    pub fn var_at_slot(&self, slot: usize) -> usize {
        self.var_at_slot[slot]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn find(&self, family: Family, index: u32) -> Option<usize> {
        self.vars.iter().position(|v| v.family == family && v.index == Some(index))
    }

    pub fn tau(&self) -> Option<usize> {
        self.vars.iter().position(|v| v.family == Family::Tau)
    }

    pub fn has_family(&self, family: Family) -> bool {
        self.vars.iter().any(|v| v.family == family)
    }

    /// Same roster plus `extra` appended, under a new name.
    pub fn extended(&self, name: impl Into<String>, extra: impl IntoIterator<Item = Variable>) -> Result<Ring, AlgebraError> {
        let mut vars = self.vars.clone();
        vars.extend(extra);
        RingContext::new(name, self.mode, vars)
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name.as_str()).collect();
        write!(f, "{} = F2[{}]", self.name, names.join(", "))
    }
}

/// The ring families that [`make_ring`] knows how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `H(BO_n) = F2[tau, u_1, ..., u_n]`.
    BO(u32),
    /// `H(BSO_n) = F2[tau, u_2, ..., u_n]`.
    BSO(u32),
    /// `H_top(BO_n) = F2[w_1, ..., w_n]`.
    TopBO(u32),
    /// `H_top(BSO_n) = F2[w_2, ..., w_n]`.
    TopBSO(u32),
    /// `S_n = F2[u_1, ..., u_n]`, the reduction of `H(BO_n)` along `tau -> 0`.
    S(u32),
    /// `R_n = F2[x_1, y_1, ..., x_m, y_m (, x_{m+1})]` for `n = 2m (+1)`.
    R(u32),
    /// `F2[c_2, ..., c_n]`.
    Chern(u32),
}

pub fn make_ring(spec: RingSpec) -> Result<Ring, AlgebraError> {
    use RingSpec::*;
    let min_n = match spec {
        BO(_) | TopBO(_) | S(_) | R(_) => 1,
        BSO(_) | TopBSO(_) | Chern(_) => 2,
    };
    let n = match spec {
        BO(n) | BSO(n) | TopBO(n) | TopBSO(n) | S(n) | R(n) | Chern(n) => n,
    };
    if n < min_n {
        return Err(AlgebraError::DimensionTooSmall { spec: spec.to_string(), min: min_n });
    }
    match spec {
        BO(n) => RingContext::new(format!("H(BO_{n})"), GradingMode::Motivic, with_tau((1..=n).map(Variable::u))),
        BSO(n) => RingContext::new(format!("H(BSO_{n})"), GradingMode::Motivic, with_tau((2..=n).map(Variable::u))),
        TopBO(n) => RingContext::new(format!("H_top(BO_{n})"), GradingMode::Topological, (1..=n).map(Variable::w).collect()),
        TopBSO(n) => RingContext::new(format!("H_top(BSO_{n})"), GradingMode::Topological, (2..=n).map(Variable::w).collect()),
        S(n) => RingContext::new(format!("S_{n}"), GradingMode::Motivic, (1..=n).map(Variable::u).collect()),
        R(n) => {
            let m = n / 2;
            let mut vars: Vec<Variable> = (1..=m).flat_map(|i| [Variable::x(i), Variable::y(i)]).collect();
            if n % 2 == 1 {
                vars.push(Variable::x(m + 1));
            }
            RingContext::new(format!("R_{n}"), GradingMode::Motivic, vars)
        }
        Chern(n) => RingContext::new(format!("Chern_{n}"), GradingMode::Motivic, (2..=n).map(Variable::c).collect()),
    }
}

fn with_tau(rest: impl Iterator<Item = Variable>) -> Vec<Variable> {
    std::iter::once(Variable::tau()).chain(rest).collect()
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RingSpec::*;
        let (family, n) = match *self {
            BO(n) => ("BO", n),
            BSO(n) => ("BSO", n),
            TopBO(n) => ("top-BO", n),
            TopBSO(n) => ("top-BSO", n),
            S(n) => ("S", n),
            R(n) => ("R", n),
            Chern(n) => ("Chern", n),
        };
        write!(f, "{family}, n={n}")
    }
}

/// Accepts `"BSO, n=4"`, `"bso:4"`, `"bso 4"`, `"top-bso,n=5"` and similar.
impl FromStr for RingSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
        let split = cleaned.find(|c: char| c == ',' || c == ':' || c.is_ascii_digit()).unwrap_or(cleaned.len());
        let (family, rest) = cleaned.split_at(split);
        let rest = rest.trim_start_matches([',', ':']);
        let rest = rest.strip_prefix("n=").unwrap_or(rest);
        let n: u32 = rest.parse().map_err(|_| AlgebraError::UnsupportedRing(s.to_string()))?;
        let family = family.trim_end_matches('_');
        Ok(match family {
            "bo" => RingSpec::BO(n),
            "bso" => RingSpec::BSO(n),
            "top-bo" | "topbo" => RingSpec::TopBO(n),
            "top-bso" | "topbso" => RingSpec::TopBSO(n),
            "s" => RingSpec::S(n),
            "r" => RingSpec::R(n),
            "chern" | "c" => RingSpec::Chern(n),
            _ => return Err(AlgebraError::UnsupportedRing(s.to_string())),
        })
    }
}
