use nwalk_sumset::IntSet;

use crate::MotzkinError;

/// Shape of a Motzkin reach set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MotzkinType {
    /// An integer interval with at least two points.
    TypeI,
    /// A step-2 progression, singletons included.
    TypeII,
}

/// The four steps that keep a walk of type II.
fn keeps_type_two(step: &IntSet) -> bool {
    let e = step.elements();
    matches!(e, [-1] | [0] | [1] | [-1, 1])
}

fn check_step(step: &IntSet) -> Result<(), MotzkinError> {
    let ok = !step.is_empty() && step.iter().all(|v| (-1..=1).contains(&v));
    if ok {
        Ok(())
    } else {
        Err(MotzkinError::NotMotzkinStep(format!("{step:?}")))
    }
}

/// Type of an unconstrained walk: type II iff every step is `{-1}`, `{0}`, `{1}` or `{-1,1}`.
pub fn motzkin_type(walk: &[IntSet]) -> Result<MotzkinType, MotzkinError> {
    let mut ty = MotzkinType::TypeII;
    for s in walk {
        check_step(s)?;
        if !keeps_type_two(s) {
            ty = MotzkinType::TypeI;
        }
    }
    Ok(ty)
}

/// Type of a meander, following the meander automaton. `Ok(None)` once the walk dies.
///
/// Two floor edges return to type II: `{0,1}` with `{-1}`, and `{0}` with
/// `{-1,0}` (which stays `{0}`).
pub fn motzkin_meander_type(walk: &[IntSet]) -> Result<Option<MotzkinType>, MotzkinError> {
    let mut reach = IntSet::singleton(0);
    let mut ty = MotzkinType::TypeII;
    for s in walk {
        check_step(s)?;
        let at_floor_pair = ty == MotzkinType::TypeI && reach.max() == Some(1);
        let at_origin = reach.elements() == [0];
        ty = match ty {
            MotzkinType::TypeII if at_origin && s.elements() == [-1, 0] => MotzkinType::TypeII,
            MotzkinType::TypeII if keeps_type_two(s) => MotzkinType::TypeII,
            MotzkinType::TypeII => MotzkinType::TypeI,
            MotzkinType::TypeI if at_floor_pair && s.elements() == [-1] => MotzkinType::TypeII,
            MotzkinType::TypeI => MotzkinType::TypeI,
        };
        reach = reach.sumset(s).floor_at_zero();
        if reach.is_empty() {
            return Ok(None);
        }
    }
    Ok(Some(ty))
}

/// Shape test on an actual reach set; `None` if it is neither an interval nor a step-2 progression.
pub fn shape_type(reach: &IntSet) -> Option<MotzkinType> {
    let e = reach.elements();
    if e.is_empty() {
        return None;
    }
    let gaps: Vec<i64> = e.windows(2).map(|w| w[1] - w[0]).collect();
    if gaps.is_empty() || gaps.iter().all(|g| *g == 2) {
        Some(MotzkinType::TypeII)
    } else if gaps.iter().all(|g| *g == 1) {
        Some(MotzkinType::TypeI)
    } else {
        None
    }
}
