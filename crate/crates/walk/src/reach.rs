use nwalk_sumset::IntSet;

/// Reachable points of a walk prefix, with and without the floor at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachState {
    pub unconstrained: IntSet,
    /// Endpoints of compatible meanders. Empty once every compatible walk has dipped below 0.
    pub floored: IntSet,
    pub length: usize,
}

impl ReachState {
    pub fn initial() -> Self {
        ReachState { unconstrained: IntSet::singleton(0), floored: IntSet::singleton(0), length: 0 }
    }

    pub fn step(&self, s: &IntSet) -> ReachState {
        step_reach(self, s)
    }

    /// States after each prefix, starting with the empty one.
    pub fn trace(walk: &[IntSet]) -> Vec<ReachState> {
        let mut out = vec![ReachState::initial()];
        for s in walk {
            let next = out.last().expect("nonempty").step(s);
            out.push(next);
        }
        out
    }
}

/// The floor is applied once per N-step, after the full sumset.
pub fn step_reach(state: &ReachState, s: &IntSet) -> ReachState {
    ReachState {
        unconstrained: state.unconstrained.sumset(s),
        floored: state.floored.sumset(s).floor_at_zero(),
        length: state.length + 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WalkClass {
    pub is_bridge: bool,
    pub is_meander: bool,
    pub is_excursion: bool,
}

impl WalkClass {
    pub fn of(state: &ReachState) -> WalkClass {
        // An emptied floor stays empty, so checking the last prefix covers all of them.
        let is_meander = !state.floored.is_empty();
        WalkClass {
            is_bridge: state.unconstrained.contains(0),
            is_meander,
            is_excursion: is_meander && state.floored.contains(0),
        }
    }
}

pub fn classify_walk(walk: &[IntSet]) -> WalkClass {
    let end = walk.iter().fold(ReachState::initial(), |st, s| st.step(s));
    WalkClass::of(&end)
}
