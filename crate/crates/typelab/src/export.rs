use nwalk_series::{parse_q, q_to_string, BivariateSeries, LaurentPoly, Q};
use nwalk_sumset::IntSet;
use serde::{Deserialize, Serialize};

use crate::automaton::{BoundaryTransition, Transition};
use crate::core::Variant;
use crate::{TypeAutomaton, TypelabError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub set: Vec<i64>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateEntry {
    pub g: i64,
    pub k: i64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub sigma: i64,
}

/// Everything needed to write down the functional equation of an automaton.
///
/// State `i` is tracked by `x^min y^(max - sigma_i)`. The `ell` tables act on
/// terms `x^ell y^ell` (`minimal`) and `x^ell y^(>ell)` (not minimal).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionSystem {
    pub variant: Variant,
    pub steps: Vec<StepEntry>,
    pub initial: usize,
    pub depth: i64,
    pub states: Vec<StateEntry>,
    pub transitions: Vec<Transition>,
    pub boundary: Vec<BoundaryTransition>,
}

/// `m[to][from]` matrices: generic (`a`), and per `ell` for larger (`b`) and smallest (`c`) members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrices {
    pub a: Vec<Vec<LaurentPoly>>,
    pub b: Vec<Vec<Vec<LaurentPoly>>>,
    pub c: Vec<Vec<Vec<LaurentPoly>>>,
}

pub fn export_transition_system(aut: &TypeAutomaton) -> TransitionSystem {
    let vec = |s: &IntSet| s.iter().collect::<Vec<i64>>();
    TransitionSystem {
        variant: aut.variant,
        steps: aut.steps.iter().map(|(s, w)| StepEntry { set: vec(s), weight: q_to_string(w) }).collect(),
        initial: aut.initial,
        depth: aut.depth,
        states: aut
            .states
            .iter()
            .map(|st| StateEntry { g: st.ty.g, k: st.ty.k, a: vec(&st.ty.a), b: vec(&st.ty.b), c: vec(&st.ty.c), sigma: st.sigma })
            .collect(),
        transitions: aut.transitions(),
        boundary: aut.boundary(),
    }
}

impl TransitionSystem {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, TypelabError> {
        serde_json::from_str(s).map_err(|e| TypelabError::Json(e.to_string()))
    }

    fn weights(&self) -> Result<Vec<Q>, TypelabError> {
        self.steps.iter().map(|s| parse_q(&s.weight).map_err(|e| TypelabError::Json(e.to_string()))).collect()
    }

    pub fn matrices(&self) -> Result<Matrices, TypelabError> {
        let n = self.states.len();
        let w = self.weights()?;
        let zero = || vec![vec![LaurentPoly::zero(); n]; n];
        let mut m = Matrices { a: zero(), b: (0..self.depth).map(|_| zero()).collect(), c: (0..self.depth).map(|_| zero()).collect() };
        let sigma = |i: usize| self.states[i].sigma;
        for t in &self.transitions {
            m.a[t.to][t.from].add_term(t.dmin, t.dmax + sigma(t.from) - sigma(t.to), w[t.step].clone());
        }
        for t in &self.boundary {
            let table = if t.minimal { &mut m.c } else { &mut m.b };
            table[t.ell as usize][t.to][t.from].add_term(t.dmin, t.dmax + sigma(t.from) - sigma(t.to), w[t.step].clone());
        }
        Ok(m)
    }

    /// Iterates the functional equation; returns `Σ_i y^sigma_i M_i`, i.e. the
    /// series of `x^min y^max` over reach sets.
    pub fn iterate(&self, order: usize) -> Result<BivariateSeries, TypelabError> {
        let m = self.matrices()?;
        let n = self.states.len();
        let mut v = vec![LaurentPoly::zero(); n];
        v[self.initial] = LaurentPoly::constant(Q::from_integer(1.into()));
        let mut out = Vec::with_capacity(order);
        for _ in 0..order {
            let mut total = LaurentPoly::zero();
            for (i, p) in v.iter().enumerate() {
                total = total.add(&p.shift(0, self.states[i].sigma));
            }
            out.push(total);
            let mut next = vec![LaurentPoly::zero(); n];
            for (from, p) in v.iter().enumerate() {
                for (e, f, c) in p.terms() {
                    let term = LaurentPoly::monomial(c.clone(), e, f);
                    let table = if self.variant == Variant::Meander && e < self.depth {
                        if f == e {
                            &m.c[e as usize]
                        } else {
                            &m.b[e as usize]
                        }
                    } else {
                        &m.a
                    };
                    for (to, slot) in next.iter_mut().enumerate() {
                        *slot = slot.add(&table[to][from].mul(&term));
                    }
                }
            }
            v = next;
        }
        Ok(BivariateSeries::from_coeffs(out))
    }
}
