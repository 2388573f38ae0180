use nwalk_sumset::{IntSet, SumsetType};
use nwalk_walk::{CompressedModel, NStepSet, StateKey, WalkError};

use crate::core::{explore, indices, outcome, representative, Move, Outcome, Seen, Variant};
use crate::TypelabError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeState {
    pub ty: SumsetType,
    /// Norm of the smallest member.
    pub sigma: i64,
}

impl TypeState {
    /// Member with the given extremes.
    pub fn member_at(&self, min: i64, max: i64) -> IntSet {
        let j = if self.ty.g == 0 { self.ty.k } else { self.ty.k + (max - min - self.sigma) / self.ty.g };
        representative(&self.ty, j, min)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Transition {
    pub from: usize,
    pub step: usize,
    pub to: usize,
    pub dmin: i64,
    pub dmax: i64,
}

impl Transition {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

/// Meander transition for a set with minimum `ell` below the largest drop.
/// `minimal` selects the smallest member of the type; otherwise any larger one.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BoundaryTransition {
    pub ell: i64,
    pub minimal: bool,
    pub from: usize,
    pub step: usize,
    pub to: usize,
    pub dmin: i64,
    pub dmax: i64,
}

/// Table cell. Cells for positions no reachable set occupies may be left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    Open,
    Dies,
    To(Move),
}

impl Entry {
    fn of(o: Outcome) -> Entry {
        match o {
            Outcome::Dies => Entry::Dies,
            Outcome::To(m) => Entry::To(m),
            Outcome::Unmatched(_) => Entry::Open,
        }
    }

    fn to_move(self) -> Option<Move> {
        match self {
            Entry::To(m) => Some(m),
            _ => None,
        }
    }
}

/// Deterministic automaton on reach-set types.
///
/// A reach set is a state plus its minimum and maximum. Sets with minimum at
/// least `depth` use the generic table; smaller minima (meanders only) use
/// the per-`ell` tables. Walk automata are complete; meander tables are
/// complete on every position a reachable set can take.
#[derive(Clone, Debug)]
pub struct TypeAutomaton {
    pub variant: Variant,
    pub steps: NStepSet,
    pub states: Vec<TypeState>,
    pub initial: usize,
    pub depth: i64,
    generic: Vec<Entry>,
    edge: Vec<Vec<Entry>>,
    corner: Vec<Vec<Entry>>,
}

fn describe(ty: &SumsetType) -> String {
    format!("(g={}, k={}, a={}, b={}, c={})", ty.g, ty.k, ty.a, ty.b, ty.c)
}

fn not_closed(ty: &SumsetType, step: &IntSet, witness: &IntSet) -> TypelabError {
    TypelabError::NotClosed { ty: describe(ty), step: step.to_string(), witness: witness.to_string() }
}

/// Outcome shared by every listed member, or the member that breaks ranks.
fn uniform(
    types: &[SumsetType],
    ty: &SumsetType,
    js: &[i64],
    min: i64,
    step: &IntSet,
    variant: Variant,
) -> Result<Outcome, TypelabError> {
    let top = *js.last().expect("at least one index");
    let expect = outcome(types, &representative(ty, top, min), step, variant);
    if let Outcome::Unmatched(w) = &expect {
        return Err(not_closed(ty, step, w));
    }
    for &j in js {
        let rep = representative(ty, j, min);
        if outcome(types, &rep, step, variant) != expect {
            return Err(not_closed(ty, step, &rep));
        }
    }
    Ok(expect)
}

/// Largest norm explored to find the positions each state takes.
fn explore_norm(types: &[SumsetType], steps: &NStepSet, depth: i64) -> i64 {
    let widest = types
        .iter()
        .map(|t| representative(t, crate::core::window(t, types, steps, depth), 0).norm())
        .max()
        .unwrap_or(0);
    widest + 2 * steps.max_norm() + 8
}

/// Builds the automaton over `types`, which are tried in order when classifying a set.
pub fn build_automaton(steps: &NStepSet, types: &[SumsetType], variant: Variant) -> Result<TypeAutomaton, TypelabError> {
    let depth = match variant {
        Variant::Walk => 0,
        Variant::Meander => steps.max_drop(),
    };
    for ty in types {
        if !ty.is_proper() {
            return Err(TypelabError::NotProper(describe(ty)));
        }
    }
    let seen = match variant {
        Variant::Walk => Seen::new(types, &[], variant, depth),
        Variant::Meander => Seen::new(types, &explore(steps, variant, depth, explore_norm(types, steps, depth)), variant, depth),
    };
    let ns = steps.len();
    let mut states = Vec::with_capacity(types.len());
    let mut generic = Vec::with_capacity(types.len() * ns);
    let mut edge = vec![vec![Entry::Open; types.len() * ns]; depth as usize];
    let mut corner = vec![vec![Entry::Open; types.len() * ns]; depth as usize];
    for (i, ty) in types.iter().enumerate() {
        let js = indices(ty, types, steps, depth);
        let sigma = representative(ty, ty.k, 0).norm();
        for &j in &js {
            let rep = representative(ty, j, 0);
            if rep.norm() != sigma + (j - ty.k) * ty.g || crate::core::classify(types, &rep) != Some(i) {
                return Err(TypelabError::Ambiguous { ty: describe(ty), witness: rep.to_string() });
            }
        }
        states.push(TypeState { ty: ty.clone(), sigma });
        for (s, step) in steps.steps().iter().enumerate() {
            let cell = |js: &[i64], min: i64, required: bool| -> Result<Entry, TypelabError> {
                match uniform(types, ty, js, min, step, variant) {
                    Ok(o) => Ok(Entry::of(o)),
                    Err(e) if required => Err(e),
                    Err(_) => Ok(Entry::Open),
                }
            };
            generic.push(cell(&js, depth, seen.generic[i])?);
            for ell in 0..depth as usize {
                corner[ell][i * ns + s] = cell(&js[..1], ell as i64, seen.corner[ell][i])?;
                if ty.g > 0 {
                    edge[ell][i * ns + s] = cell(&js[1..], ell as i64, seen.edge[ell][i])?;
                }
            }
        }
    }
    let origin = IntSet::singleton(0);
    let initial = crate::core::classify(types, &origin)
        .ok_or_else(|| TypelabError::NotClosed { ty: "none".into(), step: "-".into(), witness: origin.to_string() })?;
    let aut = TypeAutomaton { variant, steps: steps.clone(), states, initial, depth, generic, edge, corner };
    if variant == Variant::Walk {
        if let Some(cycle) = aut.non_loop_cycle() {
            return Err(TypelabError::Cyclic(cycle));
        }
    }
    Ok(aut)
}

impl TypeAutomaton {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    fn idx(&self, state: usize, step: usize) -> usize {
        state * self.steps.len() + step
    }

    fn entry(&self, state: usize, min: i64, max: i64, step: usize) -> Entry {
        let i = self.idx(state, step);
        if self.variant == Variant::Walk || min >= self.depth {
            return self.generic[i];
        }
        let ell = min as usize;
        if max - min == self.states[state].sigma {
            self.corner[ell][i]
        } else {
            self.edge[ell][i]
        }
    }

    /// Transition of the set `(state, min, max)` under a step: `Ok(None)` if a
    /// meander dies, an error at a position the automaton never met.
    pub fn next(&self, state: usize, min: i64, max: i64, step: usize) -> Result<Option<Move>, TypelabError> {
        match self.entry(state, min, max, step) {
            Entry::To(m) => Ok(Some(m)),
            Entry::Dies => Ok(None),
            Entry::Open => Err(TypelabError::OpenCell { state, min, max, step: self.steps.step(step).to_string() }),
        }
    }

    /// Runs a walk from the origin: final `(state, min, max)`, or `None` once a meander dies.
    pub fn run(&self, walk: &[IntSet]) -> Result<Option<(usize, i64, i64)>, TypelabError> {
        let mut cur = (self.initial, 0, 0);
        for s in walk {
            let step = self
                .steps
                .steps()
                .iter()
                .position(|t| t == s)
                .ok_or_else(|| TypelabError::UnknownStep(s.to_string()))?;
            match self.next(cur.0, cur.1, cur.2, step)? {
                Some(m) => cur = (m.to, cur.1 + m.dmin, cur.2 + m.dmax),
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    pub fn transitions(&self) -> Vec<Transition> {
        let ns = self.steps.len();
        (0..self.len())
            .flat_map(|from| (0..ns).map(move |step| (from, step)))
            .filter_map(|(from, step)| {
                let m = self.generic[self.idx(from, step)].to_move()?;
                Some(Transition { from, step, to: m.to, dmin: m.dmin, dmax: m.dmax })
            })
            .collect()
    }

    /// Floor tables; transitions that kill the meander are left out.
    pub fn boundary(&self) -> Vec<BoundaryTransition> {
        let ns = self.steps.len();
        let mut out = Vec::new();
        for ell in 0..self.depth as usize {
            for from in 0..self.len() {
                for step in 0..ns {
                    let i = self.idx(from, step);
                    let mut push = |m: Entry, minimal: bool| {
                        let m = m.to_move();
                        if let Some(m) = m {
                            out.push(BoundaryTransition { ell: ell as i64, minimal, from, step, to: m.to, dmin: m.dmin, dmax: m.dmax });
                        }
                    };
                    push(self.corner[ell][i], true);
                    if self.states[from].ty.g > 0 {
                        push(self.edge[ell][i], false);
                    }
                }
            }
        }
        out
    }

    /// A cycle through distinct states, floor tables included, if any.
    pub fn non_loop_cycle(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for t in self.transitions() {
            succ[t.from].push(t.to);
        }
        for t in self.boundary() {
            succ[t.from].push(t.to);
        }
        for (i, v) in succ.iter_mut().enumerate() {
            v.retain(|&t| t != i);
            v.sort_unstable();
            v.dedup();
        }
        // 0 = unseen, 1 = on the stack, 2 = done
        let mut mark = vec![0u8; n];
        let mut path = Vec::new();
        fn dfs(v: usize, succ: &[Vec<usize>], mark: &mut [u8], path: &mut Vec<usize>) -> Option<Vec<usize>> {
            mark[v] = 1;
            path.push(v);
            for &w in &succ[v] {
                if mark[w] == 1 {
                    let at = path.iter().position(|&p| p == w).expect("on stack");
                    return Some(path[at..].to_vec());
                }
                if mark[w] == 0 {
                    if let Some(c) = dfs(w, succ, mark, path) {
                        return Some(c);
                    }
                }
            }
            path.pop();
            mark[v] = 2;
            None
        }
        (0..n).find_map(|v| if mark[v] == 0 { dfs(v, &succ, &mut mark, &mut path) } else { None })
    }
}

impl CompressedModel for TypeAutomaton {
    fn initial(&self) -> StateKey {
        StateKey { state: self.initial as u32, min: 0, max: 0 }
    }

    fn step(&self, key: &StateKey, step: usize, floored: bool) -> Result<Option<StateKey>, WalkError> {
        if floored != (self.variant == Variant::Meander) {
            return Err(WalkError::NotClosed(format!("a {:?} automaton cannot run with floored = {floored}", self.variant)));
        }
        if step >= self.steps.len() {
            return Err(WalkError::NotClosed(format!("unknown step index {step}")));
        }
        let next = self.next(key.state as usize, key.min, key.max, step).map_err(|e| WalkError::NotClosed(e.to_string()))?;
        Ok(next.map(|m| StateKey { state: m.to as u32, min: key.min + m.dmin, max: key.max + m.dmax }))
    }

    fn contains_zero(&self, key: &StateKey) -> bool {
        self.states[key.state as usize].member_at(key.min, key.max).contains(0)
    }
}
