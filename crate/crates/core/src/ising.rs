//! Ising model pieces for balanced min-cut.
//!
//! A partition is a spin vector `σ ∈ {-1, +1}^N`. Its energy is
//!
//! ```text
//! H(σ) = A (Σ σ_i)^2 + B Σ_{(i,j) ∈ E} w_ij (1 - σ_i σ_j) / 2
//! ```
//!
//! The first term penalizes imbalance, the second counts cut weight.
//! Coefficients are rational; internally both are scaled by a common
//! denominator so every energy is an exact `i64`.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicI64, Ordering};

use num_integer::Integer;
use num_rational::Ratio;
use rand::Rng;
use thiserror::Error;

use crate::graph::Graph;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsingError {
    #[error("node index {index} out of range for {num_nodes} nodes")]
    Index { index: usize, num_nodes: usize },
    #[error("spin vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("spin value {value} at index {index} is not -1 or +1")]
    SpinValue { index: usize, value: i8 },
    #[error("coefficient must be positive, got {0}")]
    NonPositive(Rational),
    #[error("A/B = {ratio} is below the balance rule minimum {minimum}")]
    BalanceRule { ratio: Rational, minimum: Rational },
    #[error("cannot parse coefficient `{0}`")]
    Coefficient(String),
}

/// One candidate partition: every entry is exactly -1 or +1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinState(Vec<i8>);

impl SpinState {
    pub fn new(spins: Vec<i8>) -> Result<Self, IsingError> {
        if let Some((index, &value)) = spins.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(IsingError::SpinValue { index, value });
        }
        Ok(Self(spins))
    }

    pub fn uniform(len: usize, value: i8) -> Self {
        assert!(value == 1 || value == -1);
        Self(vec![value; len])
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self(
            (0..len)
                .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn spins(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, spin: i8) {
        assert!(spin == 1 || spin == -1);
        self.0[i] = spin;
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = -self.0[i];
    }

    /// Signed balance `Σ σ_i`.
    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&s| s as i64).sum()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|&s| -s).collect())
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }
}

/// Hamiltonian coefficients `A = a / scale`, `B = b / scale`, kept in
/// lowest terms so energies stay integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coefficients {
    a: i64,
    b: i64,
    scale: i64,
}

impl Coefficients {
    pub fn new(a: Rational, b: Rational) -> Result<Self, IsingError> {
        for c in [a, b] {
            if c <= Rational::from_integer(0) {
                return Err(IsingError::NonPositive(c));
            }
        }
        let scale = a.denom().lcm(b.denom());
        let sa = a.numer() * (scale / a.denom());
        let sb = b.numer() * (scale / b.denom());
        let g = sa.gcd(&sb).gcd(&scale);
        Ok(Self {
            a: sa / g,
            b: sb / g,
            scale: scale / g,
        })
    }

    pub fn integers(a: i64, b: i64) -> Result<Self, IsingError> {
        Self::new(Rational::from_integer(a), Rational::from_integer(b))
    }

    pub fn a(&self) -> Rational {
        Rational::new(self.a, self.scale)
    }

    pub fn b(&self) -> Rational {
        Rational::new(self.b, self.scale)
    }

    /// `A` in units of `1 / scale`.
    pub fn scaled_a(&self) -> i64 {
        self.a
    }

    /// `B` in units of `1 / scale`.
    pub fn scaled_b(&self) -> i64 {
        self.b
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn ratio(&self) -> Rational {
        Rational::new(self.a, self.b)
    }
}

/// Smallest admissible `A/B` for a graph: `min(2Δ, N) / 8`.
pub fn balance_rule_minimum(graph: &Graph) -> Rational {
    let bound = (2 * graph.max_degree()).min(graph.num_nodes()) as i64;
    Rational::new(bound, 8)
}

/// Coefficients meeting the balance rule with equality: `B = b`,
/// `A = b · min(2Δ, N) / 8`.
///
/// A graph without edges has `min(2Δ, N) = 0`; `A` is then clamped to `b`
/// so the balance term stays strictly positive.
pub fn coefficients_for(graph: &Graph, b: Rational) -> Result<Coefficients, IsingError> {
    let mut ratio = balance_rule_minimum(graph);
    if ratio == Rational::from_integer(0) {
        ratio = Rational::from_integer(1);
    }
    Coefficients::new(b * ratio, b)
}

/// How `A` is derived from `B` when the caller does not pin it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientRule {
    /// `A = B / 4`. Moving one node off perfect balance raises the balance
    /// term by `4A`, so this equals the cost of cutting one unit edge and
    /// local updates still respond to the cut term.
    #[default]
    UnitMove,
    /// `A = B · min(2Δ, N) / 8`, the smallest ratio for which every ground
    /// state is balanced. Dominates local cut preferences on dense graphs.
    GroundState,
}

impl CoefficientRule {
    pub fn name(&self) -> &'static str {
        match self {
            CoefficientRule::UnitMove => "unit-move",
            CoefficientRule::GroundState => "ground-state",
        }
    }

    pub fn coefficients(&self, graph: &Graph, b: Rational) -> Result<Coefficients, IsingError> {
        match self {
            CoefficientRule::UnitMove => Coefficients::new(b / 4, b),
            CoefficientRule::GroundState => coefficients_for(graph, b),
        }
    }
}

impl FromStr for CoefficientRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unit-move" => Ok(CoefficientRule::UnitMove),
            "ground-state" => Ok(CoefficientRule::GroundState),
            _ => Err(format!(
                "unknown coefficient rule `{s}` (unit-move, ground-state)"
            )),
        }
    }
}

/// Parses `3`, `0.125`, or `3/8` into an exact rational.
pub fn parse_coefficient(text: &str) -> Result<Rational, IsingError> {
    let err = || IsingError::Coefficient(text.to_string());
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    if frac_part.len() > 12 || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let negative = int_part.starts_with('-');
    let int_digits = int_part.trim_start_matches(['-', '+']);
    if int_digits.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let whole: i64 = if int_digits.is_empty() {
        0
    } else {
        int_digits.parse().map_err(|_| err())?
    };
    let denom = 10i64.pow(frac_part.len() as u32);
    let frac: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| err())?
    };
    let magnitude = whole
        .checked_mul(denom)
        .and_then(|w| w.checked_add(frac))
        .ok_or_else(err)?;
    Ok(Rational::new(
        if negative { -magnitude } else { magnitude },
        denom,
    ))
}

/// A graph together with its min-cut Hamiltonian coefficients.
///
/// External fields are part of the general Ising form but are identically
/// zero for the min-cut mapping.
#[derive(Debug, Clone)]
pub struct MinCutProblem {
    graph: Graph,
    coefficients: Coefficients,
    external_field: Vec<Rational>,
}

impl MinCutProblem {
    /// Builds a problem, enforcing `A/B ≥ min(2Δ, N)/8`.
    pub fn new(graph: Graph, coefficients: Coefficients) -> Result<Self, IsingError> {
        let minimum = balance_rule_minimum(&graph);
        if coefficients.ratio() < minimum {
            return Err(IsingError::BalanceRule {
                ratio: coefficients.ratio(),
                minimum,
            });
        }
        Ok(Self::new_unchecked(graph, coefficients))
    }

    /// Builds a problem without checking the balance rule.
    pub fn new_unchecked(graph: Graph, coefficients: Coefficients) -> Self {
        let n = graph.num_nodes();
        Self {
            graph,
            coefficients,
            external_field: vec![Rational::from_integer(0); n],
        }
    }

    /// Problem with `B = 1` and `A` from [`CoefficientRule::default`].
    pub fn with_default_coefficients(graph: Graph) -> Self {
        let coefficients = CoefficientRule::default()
            .coefficients(&graph, Rational::from_integer(1))
            .expect("unit B is positive");
        Self::new_unchecked(graph, coefficients)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn external_field(&self) -> &[Rational] {
        &self.external_field
    }

    pub fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    fn check_index(&self, i: usize) -> Result<(), IsingError> {
        if i >= self.num_nodes() {
            return Err(IsingError::Index {
                index: i,
                num_nodes: self.num_nodes(),
            });
        }
        Ok(())
    }

    fn check_state(&self, state: &SpinState) -> Result<(), IsingError> {
        if state.len() != self.num_nodes() {
            return Err(IsingError::Length {
                got: state.len(),
                expected: self.num_nodes(),
            });
        }
        Ok(())
    }
}

/// Local field `S = Σ_j J_ij σ_j + h_i` of the cut term, with couplings
/// `J_ij = (B/2) w_ij`. The balance term is not included.
pub fn local_field(
    problem: &MinCutProblem,
    state: &SpinState,
    i: usize,
) -> Result<Rational, IsingError> {
    problem.check_index(i)?;
    problem.check_state(state)?;
    let (targets, weights) = problem.graph.neighbors(i);
    let aligned: i64 = targets
        .iter()
        .zip(weights)
        .map(|(&j, &w)| w * state.get(j as usize) as i64)
        .sum();
    Ok(problem.coefficients.b() * Rational::new(aligned, 2) + problem.external_field[i])
}

/// Local spin update rule: `Some(+1)` for `S > 0`, `Some(-1)` for `S < 0`,
/// `None` when the field vanishes and either spin is allowed.
pub fn spin_for_field(field: Rational) -> Option<i8> {
    match field.numer().signum() {
        1 => Some(1),
        -1 => Some(-1),
        _ => None,
    }
}

/// Energies of node `i` taking each spin, in units of `1 / scale`.
///
/// Only terms that depend on `σ_i` are included: the balance term over all
/// nodes and the cut contribution of `i`'s edges. Differences between the
/// two equal differences of the global Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateEnergies {
    pub down: i64,
    pub up: i64,
}

impl CandidateEnergies {
    pub fn for_spin(&self, spin: i8) -> i64 {
        if spin > 0 {
            self.up
        } else {
            self.down
        }
    }

    /// Lower-energy spin, or `None` on a tie.
    pub fn preferred(&self) -> Option<i8> {
        match self.up.cmp(&self.down) {
            std::cmp::Ordering::Less => Some(1),
            std::cmp::Ordering::Greater => Some(-1),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// Core evaluation shared by the checked API and the annealer hot loop.
/// `spin_of` reads neighbor spins, which may be concurrently changing.
#[inline]
pub(crate) fn candidate_energies_with<F>(
    coefficients: &Coefficients,
    graph: &Graph,
    i: usize,
    balance_excl: i64,
    spin_of: F,
) -> CandidateEnergies
where
    F: Fn(usize) -> i8,
{
    let (targets, weights) = graph.neighbors(i);
    // Weight of edges cut if i takes +1 (neighbors at -1), and if -1.
    let mut cut_up = 0i64;
    let mut cut_down = 0i64;
    for (&j, &w) in targets.iter().zip(weights) {
        if spin_of(j as usize) > 0 {
            cut_down += w;
        } else {
            cut_up += w;
        }
    }
    let up_bal = balance_excl + 1;
    let down_bal = balance_excl - 1;
    CandidateEnergies {
        up: coefficients.a * up_bal * up_bal + coefficients.b * cut_up,
        down: coefficients.a * down_bal * down_bal + coefficients.b * cut_down,
    }
}

/// Candidate energies for node `i` given the spin sum over all other nodes.
pub fn candidate_energies_mincut(
    problem: &MinCutProblem,
    state: &SpinState,
    balance_excl: i64,
    i: usize,
) -> Result<CandidateEnergies, IsingError> {
    problem.check_index(i)?;
    problem.check_state(state)?;
    Ok(candidate_energies_with(
        &problem.coefficients,
        &problem.graph,
        i,
        balance_excl,
        |j| state.get(j),
    ))
}

/// Picks the argmin spin, breaking ties with an unbiased coin.
#[inline]
pub fn choose_spin<R: Rng + ?Sized>(energies: CandidateEnergies, rng: &mut R) -> i8 {
    energies
        .preferred()
        .unwrap_or_else(|| if rng.gen::<bool>() { 1 } else { -1 })
}

/// Cut weight `Σ w_ij [σ_i ≠ σ_j]` over the graph, each edge once.
pub(crate) fn cut_weight(graph: &Graph, spins: &[i8]) -> i64 {
    graph
        .edges()
        .iter()
        .filter(|e| spins[e.u as usize] != spins[e.v as usize])
        .map(|e| e.weight)
        .sum()
}

/// Global Hamiltonian in units of `1 / scale`.
pub fn global_hamiltonian_scaled(
    problem: &MinCutProblem,
    state: &SpinState,
) -> Result<i64, IsingError> {
    problem.check_state(state)?;
    let balance = state.sum();
    let c = &problem.coefficients;
    Ok(c.a * balance * balance + c.b * cut_weight(&problem.graph, state.spins()))
}

/// `A (Σσ)^2 + B Σ_{edges} w (1 - σ_i σ_j) / 2`, exact.
pub fn global_hamiltonian(
    problem: &MinCutProblem,
    state: &SpinState,
) -> Result<Rational, IsingError> {
    Ok(Rational::new(
        global_hamiltonian_scaled(problem, state)?,
        problem.coefficients.scale,
    ))
}

/// Shared balance `G = Σ σ_i`, read and updated atomically by workers.
#[derive(Debug, Default)]
pub struct BalanceCounter(AtomicI64);

impl BalanceCounter {
    pub fn new(value: i64) -> Self {
        Self(AtomicI64::new(value))
    }

    pub fn from_state(state: &SpinState) -> Self {
        Self::new(state.sum())
    }

    #[inline]
    pub fn load(&self) -> i64 {
        self.0.load(Ordering::Acquire)
    }

    #[inline]
    pub fn add(&self, delta: i64) {
        if delta != 0 {
            self.0.fetch_add(delta, Ordering::AcqRel);
        }
    }

    pub fn value(&self) -> i64 {
        self.load()
    }
}

impl fmt::Display for SpinState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SpinState {
    type Err = IsingError;

    /// Parses a string of `+`/`-` characters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(index, c)| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(IsingError::SpinValue { index, value: 0 }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn problem(n: usize, edges: &[(usize, usize)], a: i64, b: i64) -> MinCutProblem {
        let g = Graph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1))).unwrap();
        MinCutProblem::new_unchecked(g, Coefficients::integers(a, b).unwrap())
    }

    #[test]
    fn spin_state_validation() {
        assert!(SpinState::new(vec![1, -1, 1]).is_ok());
        assert_eq!(
            SpinState::new(vec![1, 0]),
            Err(IsingError::SpinValue { index: 1, value: 0 })
        );
        let s: SpinState = "+-+".parse().unwrap();
        assert_eq!(s.sum(), 1);
        assert_eq!(s.to_string(), "+-+");
    }

    #[test]
    fn local_field_examples() {
        // single edge, neighbor +1, B = 2
        let p = problem(2, &[(0, 1)], 1, 2);
        let s: SpinState = "++".parse().unwrap();
        let field = local_field(&p, &s, 0).unwrap();
        assert_eq!(field, r(1, 1));
        assert_eq!(spin_for_field(field), Some(1));

        // isolated node
        let p = problem(3, &[(0, 1)], 1, 2);
        let s: SpinState = "+++".parse().unwrap();
        let field = local_field(&p, &s, 2).unwrap();
        assert_eq!(field, r(0, 1));
        assert_eq!(spin_for_field(field), None);

        assert!(matches!(
            local_field(&p, &s, 3),
            Err(IsingError::Index { .. })
        ));
    }

    #[test]
    fn local_field_star_matches_enumeration() {
        let p = problem(4, &[(0, 1), (0, 2), (0, 3)], 1, 2);
        let s: SpinState = "+++-".parse().unwrap();
        let field = local_field(&p, &s, 0).unwrap();
        assert_eq!(field, r(1, 1));
        // Cut term only: +1 cuts one edge, -1 cuts two.
        let cut_if = |spin: i8| {
            let mut t = s.clone();
            t.set(0, spin);
            cut_weight(p.graph(), t.spins())
        };
        assert!(cut_if(1) < cut_if(-1));
        assert_eq!(spin_for_field(field), Some(1));
    }

    #[test]
    fn candidate_energy_examples() {
        let p = problem(2, &[(0, 1)], 1, 1);
        let s: SpinState = "++".parse().unwrap();
        let e = candidate_energies_mincut(&p, &s, 1, 0).unwrap();
        assert_eq!(e, CandidateEnergies { up: 4, down: 1 });
        assert_eq!(e.preferred(), Some(-1));

        let p = problem(3, &[(0, 1)], 1, 1);
        let s: SpinState = "+++".parse().unwrap();
        let e = candidate_energies_mincut(&p, &s, 0, 2).unwrap();
        assert_eq!(e, CandidateEnergies { up: 1, down: 1 });
        assert_eq!(e.preferred(), None);
    }

    #[test]
    fn candidate_energy_triangle() {
        let tri = [(0, 1), (1, 2), (0, 2)];
        let s: SpinState = "+++".parse().unwrap();
        // B = 8: -1 cuts both edges, 1 + 8 * 2.
        let p = problem(3, &tri, 1, 8);
        let e = candidate_energies_mincut(&p, &s, 2, 0).unwrap();
        assert_eq!(e, CandidateEnergies { up: 9, down: 17 });
        // B = 4 balances the two terms exactly.
        let p = problem(3, &tri, 1, 4);
        let e = candidate_energies_mincut(&p, &s, 2, 0).unwrap();
        assert_eq!(e, CandidateEnergies { up: 9, down: 9 });
    }

    #[test]
    fn coefficient_rule() {
        let g = Graph::from_edges(2000, (0..4).map(|j| (0, j + 1, 1))).unwrap();
        assert_eq!(g.max_degree(), 4);
        let c = coefficients_for(&g, r(1, 1)).unwrap();
        assert_eq!((c.a(), c.b()), (r(1, 1), r(1, 1)));

        let star = Graph::from_edges(10_000, (1..10_000).map(|j| (0, j, 1))).unwrap();
        let c = coefficients_for(&star, r(1, 1)).unwrap();
        assert_eq!(c.a(), r(1250, 1));

        let pair = Graph::from_edges(2, [(0, 1, 1)]).unwrap();
        let c = coefficients_for(&pair, r(2, 1)).unwrap();
        assert_eq!(c.a(), r(1, 2));
        assert_eq!(c.b(), r(2, 1));
        assert_eq!((c.scaled_a(), c.scaled_b(), c.scale()), (1, 4, 2));
    }

    #[test]
    fn coefficient_rules() {
        let g = Graph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let c = CoefficientRule::UnitMove.coefficients(&g, r(1, 1)).unwrap();
        assert_eq!((c.a(), c.b()), (r(1, 4), r(1, 1)));
        assert_eq!((c.scaled_a(), c.scaled_b(), c.scale()), (1, 4, 4));
        let c = CoefficientRule::GroundState
            .coefficients(&g, r(1, 1))
            .unwrap();
        assert_eq!(c.a(), r(1, 2));
        assert_eq!("ground-state".parse(), Ok(CoefficientRule::GroundState));
        assert!("x".parse::<CoefficientRule>().is_err());
    }

    #[test]
    fn balance_rule_enforced() {
        let g = Graph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        // min(4, 4)/8 = 1/2
        assert!(MinCutProblem::new(g.clone(), Coefficients::integers(1, 2).unwrap()).is_ok());
        assert!(matches!(
            MinCutProblem::new(g, Coefficients::integers(1, 3).unwrap()),
            Err(IsingError::BalanceRule { .. })
        ));
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!(parse_coefficient("3").unwrap(), r(3, 1));
        assert_eq!(parse_coefficient("0.125").unwrap(), r(1, 8));
        assert_eq!(parse_coefficient("3/8").unwrap(), r(3, 8));
        assert_eq!(parse_coefficient(".5").unwrap(), r(1, 2));
        assert!(parse_coefficient("abc").is_err());
        assert!(parse_coefficient("1/0").is_err());
        assert!(parse_coefficient("").is_err());
        assert!(Coefficients::new(r(0, 1), r(1, 1)).is_err());
    }

    #[test]
    fn hamiltonian_examples() {
        let p = problem(4, &[], 1, 1);
        assert_eq!(
            global_hamiltonian(&p, &SpinState::uniform(4, 1)).unwrap(),
            r(16, 1)
        );
        let c4 = problem(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 1, 1);
        assert_eq!(
            global_hamiltonian(&c4, &"++--".parse().unwrap()).unwrap(),
            r(2, 1)
        );
        let pair = problem(2, &[(0, 1)], 1, 1);
        assert_eq!(
            global_hamiltonian(&pair, &"+-".parse().unwrap()).unwrap(),
            r(1, 1)
        );
        assert!(matches!(
            global_hamiltonian(&pair, &"+".parse().unwrap()),
            Err(IsingError::Length { .. })
        ));
    }

    #[test]
    fn c4_balanced_optimum_by_enumeration() {
        let c4 = problem(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 1, 1);
        let best = (0u32..16)
            .map(|mask| {
                let spins = (0..4)
                    .map(|b| if mask >> b & 1 == 1 { 1 } else { -1 })
                    .collect();
                SpinState::new(spins).unwrap()
            })
            .filter(|s| s.sum() == 0)
            .map(|s| global_hamiltonian(&c4, &s).unwrap())
            .min()
            .unwrap();
        assert_eq!(best, r(2, 1));
    }

    #[test]
    fn balance_counter_tracks_deltas() {
        let s: SpinState = "++-".parse().unwrap();
        let g = BalanceCounter::from_state(&s);
        assert_eq!(g.value(), 1);
        g.add(-2);
        assert_eq!(g.load(), -1);
    }
}
