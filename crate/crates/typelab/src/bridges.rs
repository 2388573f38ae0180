use nwalk_series::{BivariateSeries, LaurentPoly, Selector, Series, Q};

use crate::core::Variant;
use crate::{TypeAutomaton, TypelabError};

/// Per-state series `Σ weight · x^min y^max t^n` of walks ending in each state.
pub fn state_series(aut: &TypeAutomaton, order: usize) -> Result<Vec<BivariateSeries>, TypelabError> {
    if aut.variant != Variant::Walk {
        return Err(TypelabError::WrongVariant);
    }
    let n = aut.len();
    let mut layers: Vec<Vec<LaurentPoly>> = vec![Vec::with_capacity(order); n];
    let mut cur = vec![LaurentPoly::zero(); n];
    cur[aut.initial] = LaurentPoly::constant(Q::from_integer(1.into()));
    let moves = aut.transitions();
    for _ in 0..order {
        let mut next = vec![LaurentPoly::zero(); n];
        for t in &moves {
            let w = aut.steps.weight(t.step);
            next[t.to] = next[t.to].add(&cur[t.from].shift(t.dmin, t.dmax).scale(w));
        }
        for (layer, p) in layers.iter_mut().zip(cur) {
            layer.push(p);
        }
        cur = next;
    }
    Ok(layers.into_iter().map(BivariateSeries::from_coeffs).collect())
}

/// Terms of `f` whose `y` exponent lies in `ys`.
fn y_in(f: &BivariateSeries, ys: Vec<i64>) -> BivariateSeries {
    f.sub(&f.extract(&Selector::YNotIn(ys)))
}

/// Bridge series, read off the per-state series through the extremes alone.
pub fn bridge_series_from_automaton(aut: &TypeAutomaton, order: usize) -> Result<Series, TypelabError> {
    let per_state = state_series(aut, order)?;
    let mut total = Series::zero(order as i64);
    for (state, f) in aut.states.iter().zip(&per_state) {
        let ty = &state.ty;
        // a reach set straddling 0
        let straddle = f.extract_all(&[Selector::XLe(0), Selector::YGe(0)]);
        let part = if ty.g == 0 {
            straddle.extract(&Selector::XIn(ty.b.iter().map(|r| -r).collect()))
        } else {
            let smallest = ty.raw_instance(ty.k, 0);
            let alpha = smallest.min().expect("nonempty member");
            let beta = ty.k * ty.g + ty.b.max().expect("nonempty pattern") - smallest.max().expect("nonempty member");
            // 0 on the unpruned progression
            let on_grid =
                straddle.extract(&Selector::XResidue { modulus: ty.g, residues: ty.b.iter().map(|r| alpha - r).collect() });
            let low = on_grid.extract(&Selector::XIn(ty.a.iter().map(|u| alpha - u).collect()));
            let high = y_in(&on_grid, ty.c.iter().map(|u| u - beta).collect());
            on_grid.sub(&low).sub(&high)
        };
        total = &total + &part.totals();
    }
    Ok(total)
}
