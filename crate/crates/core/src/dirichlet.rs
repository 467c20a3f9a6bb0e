//! Dirichlet forms `Q(ψ) = Σ c_ij (ψ_i − ψ_j)²` over Q(s): the extended power
//! functional of a circuit, exact node elimination, boundary minimization
//! and the (identity-free) composition of forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::Circuit;
use crate::cospan::NodeId;
use crate::field::{Rat, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirichletError {
    #[error("no potential assigned to node {0}")]
    MissingAssignment(String),
    #[error("node {0} is not in the support")]
    NodeNotInSupport(String),
    #[error("boundary node {0} is not in the support")]
    BoundaryNotSubset(String),
    #[error("label {0} occurs on both outer sides of the composite")]
    LabelCollision(String),
    #[error("coefficient on {0} - {1} is not a constant")]
    NonConstantCoefficients(String, String),
    #[error("map is not defined on node {0}")]
    NotTotal(String),
}

/// A Dirichlet form on a finite support. One coefficient per unordered pair,
/// keyed `(min, max)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DirichletForm {
    support: BTreeSet<NodeId>,
    coeffs: BTreeMap<(NodeId, NodeId), RatFunc>,
}

/// A linear functional on potentials, such as `dQ_ψ`: one current per node.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Covector {
    entries: BTreeMap<NodeId, RatFunc>,
}

impl Covector {
    pub fn get(&self, n: &NodeId) -> Option<&RatFunc> {
        self.entries.get(n)
    }

    pub fn entries(&self) -> &BTreeMap<NodeId, RatFunc> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(RatFunc::is_zero)
    }
}

/// One row of the JSON encoding of a form.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FormEntry {
    pub i: String,
    pub j: String,
    pub coeff: String,
}

fn pair(a: &NodeId, b: &NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

impl DirichletForm {
    /// The zero form on `support`.
    pub fn zero(support: BTreeSet<NodeId>) -> Self {
        DirichletForm {
            support,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a form from `(i, j, c)` triples; repeated pairs accumulate and
    /// diagonal terms vanish.
    pub fn from_terms<I>(support: BTreeSet<NodeId>, terms: I) -> Result<Self, DirichletError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, RatFunc)>,
    {
        let mut q = DirichletForm::zero(support);
        for (a, b, c) in terms {
            for n in [&a, &b] {
                if !q.support.contains(n) {
                    return Err(DirichletError::NodeNotInSupport(n.to_string()));
                }
            }
            q.add_term(&a, &b, &c);
        }
        Ok(q)
    }

    fn add_term(&mut self, a: &NodeId, b: &NodeId, c: &RatFunc) {
        if a == b || c.is_zero() {
            return;
        }
        let key = pair(a, b);
        let sum = match self.coeffs.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn support(&self) -> &BTreeSet<NodeId> {
        &self.support
    }

    pub fn coeffs(&self) -> &BTreeMap<(NodeId, NodeId), RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, a: &NodeId, b: &NodeId) -> RatFunc {
        self.coeffs.get(&pair(a, b)).cloned().unwrap_or_default()
    }

    /// Coefficient-wise sum on the union of the supports.
    pub fn sum(&self, other: &DirichletForm) -> DirichletForm {
        let mut out = self.clone();
        out.support.extend(other.support.iter().cloned());
        for ((a, b), c) in &other.coeffs {
            out.add_term(a, b, c);
        }
        out
    }

    /// Weights `c_kn` of the pairs touching `n`.
    fn incident(&self, n: &NodeId) -> BTreeMap<NodeId, RatFunc> {
        self.coeffs
            .iter()
            .filter_map(|((a, b), c)| {
                if a == n {
                    Some((b.clone(), c.clone()))
                } else if b == n {
                    Some((a.clone(), c.clone()))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn to_entries(&self) -> Vec<FormEntry> {
        self.coeffs
            .iter()
            .map(|((a, b), c)| FormEntry {
                i: a.to_string(),
                j: b.to_string(),
                coeff: c.to_string(),
            })
            .collect()
    }

    /// `name = (c)(psi_i - psi_j)^2 + ...`.
    pub fn pretty(&self, name: &str) -> String {
        format!("{name} = {self}")
    }
}

impl fmt::Display for DirichletForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, ((a, b), c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})(psi_{a} - psi_{b})^2")?;
        }
        Ok(())
    }
}

/// `P(φ) = ½ Σ_e (1/Z(e)) (φ(t(e)) − φ(s(e)))²` on all nodes of `g`: every
/// non-loop edge adds `1/(2 Z(e))` to its pair.
pub fn extended_power_functional(g: &Circuit) -> DirichletForm {
    let mut q = DirichletForm::zero(g.nodes().clone());
    let half = RatFunc::from_rat(Rat::new(1.into(), 2.into()));
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let c = &half * &e.impedance.inv().expect("edge impedances are nonzero");
        q.add_term(&e.src, &e.tgt, &c);
    }
    q
}

fn lookup<'a>(
    psi: &'a BTreeMap<NodeId, RatFunc>,
    n: &NodeId,
) -> Result<&'a RatFunc, DirichletError> {
    psi.get(n)
        .ok_or_else(|| DirichletError::MissingAssignment(n.to_string()))
}

pub fn evaluate(
    q: &DirichletForm,
    psi: &BTreeMap<NodeId, RatFunc>,
) -> Result<RatFunc, DirichletError> {
    if let Some(n) = q.support.iter().find(|n| !psi.contains_key(n)) {
        return Err(DirichletError::MissingAssignment(n.to_string()));
    }
    let mut acc = RatFunc::zero();
    for ((a, b), c) in &q.coeffs {
        let d = lookup(psi, a)? - lookup(psi, b)?;
        acc = acc + &(c * &(&d * &d));
    }
    Ok(acc)
}

/// Formal differential `dQ_ψ`: entry `n` is `Σ_j 2 c_nj (ψ_n − ψ_j)`.
pub fn gradient(
    q: &DirichletForm,
    psi: &BTreeMap<NodeId, RatFunc>,
) -> Result<Covector, DirichletError> {
    let mut entries: BTreeMap<NodeId, RatFunc> = BTreeMap::new();
    for n in &q.support {
        lookup(psi, n)?;
        entries.insert(n.clone(), RatFunc::zero());
    }
    let two = RatFunc::from_int(2);
    for ((a, b), c) in &q.coeffs {
        let flow = &(&two * c) * &(lookup(psi, a)? - lookup(psi, b)?);
        let ea = entries.get_mut(a).expect("support node");
        *ea = &*ea + &flow;
        let eb = entries.get_mut(b).expect("support node");
        *eb = &*eb - &flow;
    }
    Ok(Covector { entries })
}

/// Record of one elimination: `φ_node = Σ_k weights[k] φ_k`, the weighted
/// average that zeroes `∂P/∂φ_node`. Empty weights mean an isolated node,
/// whose potential is set to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EliminationStep {
    pub node: NodeId,
    pub weights: BTreeMap<NodeId, RatFunc>,
}

/// Outcome of minimizing over a set of interior nodes, with enough
/// bookkeeping to rebuild realizable extensions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Minimization {
    pub form: DirichletForm,
    pub steps: Vec<EliminationStep>,
}

impl Minimization {
    /// Extends boundary potentials to all eliminated nodes by
    /// back-substitution, last elimination first.
    pub fn realizable_extension(
        &self,
        psi: &BTreeMap<NodeId, RatFunc>,
    ) -> Result<BTreeMap<NodeId, RatFunc>, DirichletError> {
        let mut full = psi.clone();
        for n in self.form.support() {
            lookup(psi, n)?;
        }
        for step in self.steps.iter().rev() {
            let mut v = RatFunc::zero();
            for (k, w) in &step.weights {
                v = v + &(w * lookup(&full, k)?);
            }
            full.insert(step.node.clone(), v);
        }
        Ok(full)
    }
}

fn eliminate_step(
    q: &DirichletForm,
    n: &NodeId,
) -> Result<(DirichletForm, EliminationStep), DirichletError> {
    if !q.support.contains(n) {
        return Err(DirichletError::NodeNotInSupport(n.to_string()));
    }
    let incident = q.incident(n);
    let mut out = DirichletForm {
        support: q.support.iter().filter(|m| *m != n).cloned().collect(),
        coeffs: q
            .coeffs
            .iter()
            .filter(|((a, b), _)| a != n && b != n)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect(),
    };
    let total: RatFunc = incident.values().sum();
    if total.is_zero() {
        let step = EliminationStep {
            node: n.clone(),
            weights: BTreeMap::new(),
        };
        return Ok((out, step));
    }
    let neighbours: Vec<(&NodeId, &RatFunc)> = incident.iter().collect();
    for (x, (i, ci)) in neighbours.iter().enumerate() {
        for (j, cj) in &neighbours[x + 1..] {
            out.add_term(i, j, &(&(*ci * *cj) / &total));
        }
    }
    let weights = incident
        .iter()
        .map(|(k, c)| (k.clone(), c / &total))
        .collect();
    Ok((
        out,
        EliminationStep {
            node: n.clone(),
            weights,
        },
    ))
}

/// Minimizes over the single node `n`: `c'_ij = c_ij + c_in c_jn / Σ_k c_kn`,
/// or simply drops `n` when it has no incident weight.
pub fn eliminate_node(q: &DirichletForm, n: &NodeId) -> Result<DirichletForm, DirichletError> {
    eliminate_step(q, n).map(|(f, _)| f)
}

/// Eliminates `order` one node at a time, in the given order.
pub fn eliminate_in_order(
    p: &DirichletForm,
    order: &[NodeId],
) -> Result<Minimization, DirichletError> {
    let mut form = p.clone();
    let mut steps = Vec::with_capacity(order.len());
    for n in order {
        let (next, step) = eliminate_step(&form, n)?;
        form = next;
        steps.push(step);
    }
    Ok(Minimization { form, steps })
}

/// Minimizes `p` over everything outside `boundary`, eliminating in
/// lexicographic order.
pub fn minimize(
    p: &DirichletForm,
    boundary: &BTreeSet<NodeId>,
) -> Result<Minimization, DirichletError> {
    if let Some(n) = boundary.iter().find(|n| !p.support.contains(n)) {
        return Err(DirichletError::BoundaryNotSubset(n.to_string()));
    }
    let interior: Vec<NodeId> = p.support.difference(boundary).cloned().collect();
    eliminate_in_order(p, &interior)
}

/// The Dirichlet form `min_{S∖R} P` on the boundary `R`.
pub fn power_functional(
    p: &DirichletForm,
    boundary: &BTreeSet<NodeId>,
) -> Result<DirichletForm, DirichletError> {
    minimize(p, boundary).map(|m| m.form)
}

/// Composite of `q ∈ D(S, T)` and `p ∈ D(T, U)`: sum on `S + T + U`, then
/// minimize over the shared interface `T`.
pub fn compose_forms(
    q: &DirichletForm,
    p: &DirichletForm,
    interface: &BTreeSet<NodeId>,
) -> Result<DirichletForm, DirichletError> {
    for t in interface {
        for f in [q, p] {
            if !f.support.contains(t) {
                return Err(DirichletError::NodeNotInSupport(t.to_string()));
            }
        }
    }
    if let Some(clash) = q
        .support
        .intersection(&p.support)
        .find(|n| !interface.contains(n))
    {
        return Err(DirichletError::LabelCollision(clash.to_string()));
    }
    let total = q.sum(p);
    let outer: BTreeSet<NodeId> = total.support.difference(interface).cloned().collect();
    power_functional(&total, &outer)
}

/// `f_* Q (φ) = Q(φ ∘ f)`: coefficients accumulate on image pairs and pairs
/// collapsed by `f` vanish.
pub fn pushforward_form(
    f: &BTreeMap<NodeId, NodeId>,
    codomain: &BTreeSet<NodeId>,
    q: &DirichletForm,
) -> Result<DirichletForm, DirichletError> {
    let image = |n: &NodeId| -> Result<NodeId, DirichletError> {
        match f.get(n) {
            Some(m) if codomain.contains(m) => Ok(m.clone()),
            _ => Err(DirichletError::NotTotal(n.to_string())),
        }
    };
    for n in &q.support {
        image(n)?;
    }
    let mut out = DirichletForm::zero(codomain.clone());
    for ((a, b), c) in &q.coeffs {
        out.add_term(&image(a)?, &image(b)?, c);
    }
    Ok(out)
}

/// A general quadratic form `ψᵀ M ψ` over Q with a symmetric matrix, used to
/// exercise the Markov property on forms that need not be Dirichlet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticForm {
    pub support: Vec<NodeId>,
    pub matrix: Vec<Vec<Rat>>,
}

impl QuadraticForm {
    pub fn evaluate(&self, psi: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                acc += m * &psi[i] * &psi[j];
            }
        }
        acc
    }

    /// Samples `Q(const) = 0` and `Q(min(ψ, 1)) ≤ Q(ψ)` on `trials` random
    /// rational vectors.
    pub fn markov_check(&self, trials: usize, rng: &mut impl Rng) -> bool {
        let n = self.support.len();
        for _ in 0..trials.max(1) {
            let c = random_rat(rng);
            if !self.evaluate(&vec![c; n]).is_zero() {
                return false;
            }
            let psi: Vec<Rat> = (0..n).map(|_| random_rat(rng)).collect();
            let clipped: Vec<Rat> = psi.iter().map(|x| x.clone().min(Rat::one())).collect();
            if self.evaluate(&clipped) > self.evaluate(&psi) {
                return false;
            }
        }
        true
    }
}

fn random_rat(rng: &mut impl Rng) -> Rat {
    Rat::new(
        rng.gen_range(-12i64..=12).into(),
        rng.gen_range(1i64..=4).into(),
    )
}

impl TryFrom<&DirichletForm> for QuadraticForm {
    type Error = DirichletError;

    fn try_from(q: &DirichletForm) -> Result<Self, Self::Error> {
        let support: Vec<NodeId> = q.support.iter().cloned().collect();
        let n = support.len();
        let index: BTreeMap<&NodeId, usize> =
            support.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut matrix = vec![vec![Rat::zero(); n]; n];
        for ((a, b), c) in &q.coeffs {
            let c = c.as_constant().ok_or_else(|| {
                DirichletError::NonConstantCoefficients(a.to_string(), b.to_string())
            })?;
            let (i, j) = (index[a], index[b]);
            matrix[i][i] += &c;
            matrix[j][j] += &c;
            matrix[i][j] -= &c;
            matrix[j][i] -= &c;
        }
        Ok(QuadraticForm { support, matrix })
    }
}

/// Markov-property spot check for a form with constant coefficients.
pub fn markov_check_real(
    q: &DirichletForm,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool, DirichletError> {
    let qf = QuadraticForm::try_from(q)?;
    Ok(qf.markov_check(trials, rng))
}
