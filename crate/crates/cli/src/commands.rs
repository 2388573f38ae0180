use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use nwalk_dyck::{
    bridge_gf_series_unweighted, excursion_prob_asym, maxlaw_discrete_pmf, meander_closed_form, returns_pmf, DyckWeights,
    ExcursionRegime,
};
use nwalk_montecarlo::{estimate_class_probability, statistic_histograms, SimConfig, SimError, Statistic};
use nwalk_netfeas::{feasibility_check, feasible_assignment, random_feasibility_rate, NetworkPath, NodeCapability, Topology};
use nwalk_series::{parse_q, q_to_f64, q_to_string, Series, Q};
use nwalk_typelab::{
    bridge_series_from_automaton, build_automaton, export_transition_system, infer_types, Caps, TypeAutomaton, Variant,
};
use nwalk_walk::{
    classify_walk, count_by_dp, oracle_counts, parse_walk, Class, NStepSet, ProgressionModel, ReachState, StateMode,
    WalkError, DEFAULT_CAP,
};
use serde_json::{json, Value};

use crate::registry::{self, Row, ROWS};
use crate::render::{q_json, q_list, series_text};
use crate::{
    AsymArgs, AutomatonArgs, ClassArg, ClassifyArgs, CliError, CmdResult, CountArgs, DyckArgs, Family, FeasibleArgs, Mode,
    MotzkinArgs, OracleArgs, Report, SeriesArgs, SimulateArgs, Source, StepArgs, VariantArg,
};

const DYCK_STEPS: &str = "{-1};{1};{-1,1}";
const MOTZKIN_STEPS: &str = "{1};{-1};{0};{-1,0};{0,1};{-1,1};{-1,0,1}";

fn class_of(c: ClassArg) -> Class {
    match c {
        ClassArg::Walk => Class::Walk,
        ClassArg::Bridge => Class::Bridge,
        ClassArg::Meander => Class::Meander,
        ClassArg::Excursion => Class::Excursion,
    }
}

fn family_steps(f: Family) -> &'static str {
    match f {
        Family::Dyck => DYCK_STEPS,
        Family::Motzkin => MOTZKIN_STEPS,
    }
}

fn step_set(a: &StepArgs) -> Result<NStepSet, CliError> {
    let steps = match (&a.steps, a.family) {
        (Some(s), _) => s.as_str(),
        (None, f) => family_steps(f.unwrap_or(Family::Dyck)),
    };
    NStepSet::parse(steps, a.weights.as_deref()).map_err(CliError::usage)
}

fn walk_err(e: WalkError) -> CliError {
    match e {
        WalkError::CapExceeded { .. } => CliError::Usage(format!("{e}; lower -n")),
        other => CliError::usage(other),
    }
}

fn variant_for(class: Class) -> Variant {
    match class {
        Class::Walk | Class::Bridge => Variant::Walk,
        Class::Meander | Class::Excursion => Variant::Meander,
    }
}

fn automaton_for(steps: &NStepSet, variant: Variant, caps: Caps) -> Result<TypeAutomaton, CliError> {
    let types = infer_types(steps, variant, caps).map_err(CliError::usage)?;
    build_automaton(steps, &types, variant).map_err(CliError::usage)
}

/// DP counts for lengths `0..=n_max`, with the state representation that was used.
fn dp_counts(steps: &NStepSet, n_max: usize, class: Class, mode: Mode) -> Result<(Vec<Q>, &'static str), CliError> {
    if mode == Mode::Full {
        return Ok((count_by_dp(steps, n_max, class, StateMode::Full).map_err(walk_err)?, "full"));
    }
    if let Ok(m) = ProgressionModel::new(steps) {
        return Ok((count_by_dp(steps, n_max, class, StateMode::Compressed(&m)).map_err(walk_err)?, "progression"));
    }
    match automaton_for(steps, variant_for(class), Caps::default()) {
        Ok(aut) => Ok((count_by_dp(steps, n_max, class, StateMode::Compressed(&aut)).map_err(walk_err)?, "automaton")),
        Err(e) if mode == Mode::Compressed => Err(e),
        Err(_) => Ok((count_by_dp(steps, n_max, class, StateMode::Full).map_err(walk_err)?, "full")),
    }
}

fn indexed_csv(header: &str, values: &[Q]) -> String {
    let mut out = format!("n,{header}\n");
    for (n, v) in values.iter().enumerate() {
        writeln!(out, "{n},{}", q_to_string(v)).expect("string write");
    }
    out
}

fn indexed_text(values: &[Q]) -> String {
    values.iter().enumerate().map(|(n, v)| format!("{n}\t{}\n", q_to_string(v))).collect()
}

pub(crate) fn count(a: &CountArgs) -> CmdResult {
    let steps = step_set(&a.steps)?;
    let class = class_of(a.class);
    let (counts, used) = dp_counts(&steps, a.n, class, a.mode)?;
    let mut report = Report::new(indexed_text(&counts), q_list(&counts));
    report.csv = Some(indexed_csv(class.name(), &counts));
    writeln!(report.note, "{} counts via {used} states", class.name()).expect("string write");
    if a.verify {
        let oracle = oracle_counts(&steps, a.n, DEFAULT_CAP).map_err(walk_err)?;
        let bad: Vec<usize> = (0..=a.n).filter(|&n| oracle.get(class)[n] != counts[n]).collect();
        for &n in &bad {
            writeln!(
                report.note,
                "mismatch at n={n}: dp={} enumeration={}",
                q_to_string(&counts[n]),
                q_to_string(&oracle.get(class)[n])
            )
            .expect("string write");
        }
        if bad.is_empty() {
            writeln!(report.note, "enumeration agrees for n <= {}", a.n).expect("string write");
        }
        report.failed = !bad.is_empty();
    }
    Ok(report)
}

fn series_report(class: Class, source: &str, coeffs: Vec<Q>) -> Report {
    let json = json!({ "class": class.name(), "source": source, "order": coeffs.len(), "coefficients": q_list(&coeffs) });
    let mut r = Report::new(series_text(&coeffs), json);
    r.csv = Some(indexed_csv("coefficient", &coeffs));
    r
}

fn head(s: &Series, order: usize) -> Vec<Q> {
    (0..order as i64).map(|n| s.coeff(n)).collect()
}

fn is_unweighted(steps: &NStepSet) -> bool {
    steps.weights().iter().all(|w| w.is_one())
}

fn closed_form(a: &SeriesArgs, class: Class) -> Result<Vec<Q>, CliError> {
    let none = || CliError::Usage(format!("no closed form for {} with these steps", class.name()));
    let family = match (&a.steps.steps, a.steps.family) {
        (None, Some(f)) => f,
        _ => return Err(CliError::Usage("--source closed-form needs --family".into())),
    };
    let steps = step_set(&a.steps)?;
    let order = a.order;
    let walks = || {
        let total = steps.weights().iter().fold(Q::zero(), |acc, w| acc + w);
        let mut p = Q::one();
        (0..order)
            .map(|_| {
                let c = p.clone();
                p *= &total;
                c
            })
            .collect::<Vec<Q>>()
    };
    match family {
        Family::Dyck => {
            let ws = steps.weights();
            let w = DyckWeights::new(ws[0].clone(), ws[1].clone(), ws[2].clone()).map_err(CliError::usage)?;
            let s = match class {
                Class::Walk => return Ok(walks()),
                Class::Bridge if is_unweighted(&steps) => bridge_gf_series_unweighted(order),
                Class::Bridge => return Err(none()),
                Class::Meander => meander_closed_form(&w, &Q::one(), &Q::one(), order),
                Class::Excursion => meander_closed_form(&w, &Q::zero(), &Q::one(), order),
            };
            Ok(head(&s.map_err(CliError::usage)?, order))
        }
        Family::Motzkin => {
            if !is_unweighted(&steps) {
                return Err(none());
            }
            match class {
                Class::Walk => Ok(walks()),
                Class::Meander => Ok(head(&nwalk_motzkin::meander_closed_form(order).map_err(CliError::usage)?, order)),
                _ => Err(none()),
            }
        }
    }
}

pub(crate) fn series(a: &SeriesArgs) -> CmdResult {
    let class = class_of(a.class);
    let coeffs = match a.source {
        Source::Dp => {
            let steps = step_set(&a.steps)?;
            if a.order == 0 {
                Vec::new()
            } else {
                dp_counts(&steps, a.order - 1, class, Mode::Auto)?.0
            }
        }
        Source::Automaton => {
            let steps = step_set(&a.steps)?;
            let aut = automaton_for(&steps, variant_for(class), Caps::default())?;
            if class == Class::Bridge {
                head(&bridge_series_from_automaton(&aut, a.order).map_err(CliError::usage)?, a.order)
            } else if a.order == 0 {
                Vec::new()
            } else {
                count_by_dp(&steps, a.order - 1, class, StateMode::Compressed(&aut)).map_err(walk_err)?
            }
        }
        Source::ClosedForm => closed_form(a, class)?,
    };
    let source = match a.source {
        Source::Dp => "dp",
        Source::Automaton => "automaton",
        Source::ClosedForm => "closed-form",
    };
    Ok(series_report(class, source, coeffs))
}

pub(crate) fn classify(a: &ClassifyArgs) -> CmdResult {
    let walk = parse_walk(&a.walk).map_err(CliError::usage)?;
    let c = classify_walk(&walk);
    let end = ReachState::trace(&walk).pop().expect("trace starts at the origin");
    let mut text = format!("bridge={} meander={} excursion={}\n", c.is_bridge, c.is_meander, c.is_excursion);
    writeln!(text, "reach={} floored={}", end.unconstrained, end.floored).expect("string write");
    let json = json!({
        "length": walk.len(),
        "bridge": c.is_bridge,
        "meander": c.is_meander,
        "excursion": c.is_excursion,
        "reach": end.unconstrained.to_string(),
        "floored": end.floored.to_string(),
    });
    let mut r = Report::new(text, json);
    r.csv = Some(format!("bridge,meander,excursion\n{},{},{}\n", c.is_bridge, c.is_meander, c.is_excursion));
    Ok(r)
}

fn sim_err(e: SimError) -> CliError {
    match e {
        SimError::NoAccepted { .. } => CliError::Verify(e.to_string()),
        other => CliError::usage(other),
    }
}

/// Dyck weights when the step set is exactly `{-1}, {1}, {-1,1}`.
fn dyck_weights(steps: &NStepSet) -> Option<DyckWeights> {
    let find = |s: &[i64]| steps.steps().iter().position(|t| t.elements() == s);
    if steps.len() != 3 {
        return None;
    }
    let (m, p, b) = (find(&[-1])?, find(&[1])?, find(&[-1, 1])?);
    DyckWeights::new(steps.weight(m).clone(), steps.weight(p).clone(), steps.weight(b).clone()).ok()
}

/// Total variation to the limit law, when one is available.
fn limit_tv(steps: &NStepSet, stat: Statistic, pmf: &BTreeMap<i64, f64>) -> Option<(f64, String)> {
    let w = dyck_weights(steps)?;
    let k_max = 400;
    match stat {
        Statistic::ReturnsToZero => {
            let (case, law) = returns_pmf(&w, k_max).ok()?;
            let law: BTreeMap<i64, f64> = law.into_iter().enumerate().map(|(k, p)| (k as i64, p)).collect();
            Some((nwalk_montecarlo::tv_distance(pmf, &law), format!("{case:?}")))
        }
        Statistic::FinalMax => {
            let law = maxlaw_discrete_pmf(&w, k_max).ok()?;
            let law: BTreeMap<i64, f64> = law.pmf.into_iter().enumerate().map(|(k, p)| (2 * k as i64, p)).collect();
            Some((nwalk_montecarlo::tv_distance(pmf, &law), "negative y-drift".into()))
        }
    }
}

pub(crate) fn simulate(a: &SimulateArgs) -> CmdResult {
    let mut steps = step_set(&a.steps)?;
    if a.steps.weights.is_none() {
        let k = steps.len();
        let uniform = vec![Q::new(1.into(), (k as i64).into()); k];
        steps = NStepSet::new(steps.steps().iter().cloned().zip(uniform)).map_err(CliError::usage)?;
    }
    let cfg = SimConfig::new(steps.clone(), a.n, a.runs, a.seed).map_err(sim_err)?;
    if let Some(class) = Class::parse(&a.stat) {
        let e = estimate_class_probability(&cfg, class);
        let text = format!("{}: {:.6} ± {:.6} ({} of {} runs)\n", class.name(), e.estimate, e.stderr, e.hits, e.runs);
        let json = json!({
            "class": class.name(), "n": a.n, "runs": e.runs, "seed": a.seed,
            "hits": e.hits, "estimate": e.estimate, "stderr": e.stderr,
        });
        let mut r = Report::new(text, json);
        r.csv = Some(format!("class,n,runs,hits,estimate,stderr\n{},{},{},{},{},{}\n", class.name(), a.n, e.runs, e.hits, e.estimate, e.stderr));
        return Ok(r);
    }
    let stat = Statistic::parse(&a.stat)
        .ok_or_else(|| CliError::Usage(format!("unknown statistic {:?}; use returns, final_max or a class name", a.stat)))?;
    let h = statistic_histograms(&cfg, stat, !a.unconditioned).map_err(sim_err)?;
    let limit = if h.conditioned { limit_tv(&steps, stat, &h.pmf()) } else { None };
    let mut text = format!("# {} over {} of {} runs, mean {:.6}\n", stat.name(), h.accepted, h.runs, h.mean());
    for (k, c) in &h.counts {
        writeln!(text, "{k}\t{c}").expect("string write");
    }
    let json = json!({
        "statistic": stat.name(),
        "conditioned": h.conditioned,
        "n": a.n,
        "runs": h.runs,
        "seed": a.seed,
        "accepted": h.accepted,
        "mean": h.mean(),
        "counts": h.counts.iter().map(|(k, c)| json!({ "bin": k, "count": c })).collect::<Vec<_>>(),
        "limit_tv": limit.as_ref().map(|l| l.0),
    });
    let mut r = Report::new(text, json);
    r.csv = Some(h.to_csv());
    writeln!(r.note, "accepted {} of {} runs", h.accepted, h.runs).expect("string write");
    if let Some((tv, case)) = limit {
        writeln!(r.note, "total variation to the limit law ({case}): {tv:.4}").expect("string write");
    }
    Ok(r)
}

pub(crate) fn automaton(a: &AutomatonArgs) -> CmdResult {
    let steps = step_set(&a.steps)?;
    let variant = match a.variant {
        VariantArg::Walk => Variant::Walk,
        VariantArg::Meander => Variant::Meander,
    };
    let mut caps = Caps::default();
    if let Some(n) = a.max_norm {
        caps.max_norm = n;
    }
    if let Some(s) = a.max_states {
        caps.max_states = s;
    }
    let aut = automaton_for(&steps, variant, caps)?;
    let ts = export_transition_system(&aut);
    let json = serde_json::to_value(&ts).expect("transition systems serialize");
    let mut text = format!("{:?} automaton: {} states, initial {}, depth {}\n", ts.variant, ts.states.len(), ts.initial, ts.depth);
    for (i, s) in ts.states.iter().enumerate() {
        writeln!(text, "state {i}: g={} k={} a={:?} b={:?} c={:?} sigma={}", s.g, s.k, s.a, s.b, s.c, s.sigma)
            .expect("string write");
    }
    for t in &ts.transitions {
        writeln!(text, "{} --{}--> {}  min{:+} max{:+}", t.from, steps.step(t.step), t.to, t.dmin, t.dmax).expect("string write");
    }
    let mut csv = String::from("from,step,to,dmin,dmax\n");
    for t in &ts.transitions {
        writeln!(csv, "{},\"{}\",{},{},{}", t.from, steps.step(t.step), t.to, t.dmin, t.dmax).expect("string write");
    }
    let mut r = Report::new(text, json);
    r.csv = Some(csv);
    Ok(r)
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub(crate) fn asym(a: &AsymArgs) -> CmdResult {
    let class = class_of(a.class);
    let (value, steps) = match a.family {
        Family::Dyck => (nwalk_dyck::asymptotic_eval(class, a.n), NStepSet::dyck_unweighted()),
        Family::Motzkin => (nwalk_motzkin::motzkin_asymptotics(class, a.n), NStepSet::motzkin_unweighted()),
    };
    let exact = dp_counts(&steps, a.n as usize, class, Mode::Compressed)?.0.pop().expect("n+1 counts");
    let exact_f = q_to_f64(&exact);
    let ratio = exact_f / value;
    let family = match a.family {
        Family::Dyck => "dyck",
        Family::Motzkin => "motzkin",
    };
    let text = format!("asymptotic {value:.10e}\nexact      {}\nratio      {ratio:.10}\n", q_to_string(&exact));
    let json = json!({
        "family": family, "class": class.name(), "n": a.n,
        "asymptotic": finite(value), "exact": q_json(&exact), "ratio": finite(ratio),
    });
    let mut r = Report::new(text, json);
    r.csv = Some(format!("family,class,n,asymptotic,exact,ratio\n{family},{},{},{value},{},{ratio}\n", class.name(), a.n, q_to_string(&exact)));
    Ok(r)
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect()
}

fn regime_name(r: ExcursionRegime) -> &'static str {
    match r {
        ExcursionRegime::Constant => "constant",
        ExcursionRegime::HalfDecay => "n^-1/2 decay",
        ExcursionRegime::ThreeHalvesDecay => "n^-3/2 decay",
        ExcursionRegime::Exponential => "exponential decay",
    }
}

pub(crate) fn feasible(a: &FeasibleArgs) -> CmdResult {
    if let Some(dist) = &a.dist {
        let mut map = BTreeMap::new();
        for part in split_list(dist) {
            let (k, w) = part.split_once('=').ok_or_else(|| CliError::Usage(format!("expected kind=weight, got {part:?}")))?;
            let kind: NodeCapability = k.trim().parse().map_err(CliError::usage)?;
            map.insert(kind, parse_q(w.trim()).map_err(CliError::usage)?);
        }
        let rate = random_feasibility_rate(&map, a.n, a.runs, a.seed).map_err(CliError::usage)?;
        let mut text = format!("feasible share {:.6} ± {:.6} over {} paths of length {}\n", rate.estimate, rate.stderr, rate.runs, a.n);
        if let Some(t) = &rate.theory {
            writeln!(text, "theory ({}): {:.6}", t.regime, t.value).expect("string write");
        }
        let json = json!({
            "length": a.n, "runs": rate.runs, "seed": a.seed, "estimate": rate.estimate, "stderr": rate.stderr,
            "theory": rate.theory.as_ref().map(|t| json!({ "regime": t.regime, "value": t.value })),
        });
        let mut r = Report::new(text, json);
        r.csv = Some(format!("length,runs,estimate,stderr\n{},{},{},{}\n", a.n, rate.runs, rate.estimate, rate.stderr));
        return Ok(r);
    }
    let path = match (&a.path, &a.kinds, &a.topology, &a.caps) {
        (Some(p), _, Some(t), Some(c)) => {
            let topo = Topology::parse(&read(t)?, &read(c)?).map_err(CliError::usage)?;
            topo.path(&split_list(p)).map_err(CliError::usage)?
        }
        (None, Some(k), _, _) => {
            let kinds = split_list(k).into_iter().map(str::parse).collect::<Result<Vec<NodeCapability>, _>>().map_err(CliError::usage)?;
            NetworkPath::new(kinds).map_err(CliError::usage)?
        }
        _ => return Err(CliError::Usage("give --path with --topology and --caps, --kinds, or --dist".into())),
    };
    let ok = feasibility_check(&path);
    let assignment = feasible_assignment(&path);
    let kinds: Vec<&str> = path.caps().iter().map(|c| c.name()).collect();
    let mut text = format!("feasible={ok}\n");
    if let Some(s) = &assignment {
        let shown: Vec<String> = s.iter().map(|d| format!("{d:+}")).collect();
        writeln!(text, "assignment={}", shown.join(",")).expect("string write");
    }
    let json = json!({
        "feasible": ok, "length": path.len(), "nodes": path.nodes(), "kinds": kinds, "assignment": assignment,
    });
    let mut r = Report::new(text, json);
    r.csv = Some(format!("length,feasible\n{},{ok}\n", path.len()));
    Ok(r)
}

fn row_json(row: &Row) -> Value {
    json!({
        "row": row.id, "class": row.class.name(), "oeis": row.oeis,
        "weights": row.weights, "formula": row.formula.map(|f| f.text()),
    })
}

pub(crate) fn oracle_check(a: &OracleArgs) -> CmdResult {
    let rows: Vec<&Row> = if a.row.eq_ignore_ascii_case("all") {
        ROWS.iter().collect()
    } else {
        vec![registry::find(&a.row).ok_or_else(|| CliError::Usage(format!("unknown row {:?}", a.row)))?]
    };
    let mut text = String::new();
    let mut csv = String::from("row,class,oeis,status\n");
    let mut out = Vec::new();
    let (mut checked, mut failed) = (0, 0);
    for row in rows {
        let formula = row.formula.map_or("-", |f| f.text());
        let mut j = row_json(row);
        if a.list {
            writeln!(text, "{:<4} {:<9} {}  {}", row.id, row.class.name(), row.oeis, formula).expect("string write");
            writeln!(csv, "{},{},{},listed", row.id, row.class.name(), row.oeis).expect("string write");
            out.push(j);
            continue;
        }
        let check = registry::check_row(row, a.n).map_err(walk_err)?;
        let status = match &check {
            None => "dp-only",
            Some(c) if c.passed() => "pass",
            Some(_) => "FAIL",
        };
        write!(text, "{:<4} {:<9} {}  {:<7} {}", row.id, row.class.name(), row.oeis, status, formula).expect("string write");
        if let Some(c) = &check {
            checked += 1;
            if let Some((n, dp, want)) = c.mismatches.first() {
                failed += 1;
                write!(text, "  [n={n}: dp={} formula={want}; {} mismatches]", q_to_string(dp), c.mismatches.len())
                    .expect("string write");
            }
            j["mismatches"] = Value::Array(
                c.mismatches.iter().map(|(n, dp, want)| json!({ "n": n, "dp": q_json(dp), "formula": q_json(&Q::from_integer(want.clone())) })).collect(),
            );
        }
        text.push('\n');
        j["status"] = json!(status);
        if a.dump || check.is_none() {
            let counts = row.counts(a.n).map_err(walk_err)?;
            if a.dump {
                writeln!(text, "     {}", counts.iter().map(q_to_string).collect::<Vec<_>>().join(", ")).expect("string write");
            }
            j["counts"] = q_list(&counts);
        }
        writeln!(csv, "{},{},{},{status}", row.id, row.class.name(), row.oeis).expect("string write");
        out.push(j);
    }
    if !a.list {
        writeln!(text, "{checked} formula rows checked for n <= {}, {failed} failed", a.n).expect("string write");
    }
    let json = json!({ "n_max": a.n, "rows": out, "checked": checked, "failed": failed });
    let mut r = Report::new(text, json);
    r.csv = Some(csv);
    r.failed = failed > 0;
    Ok(r)
}

pub(crate) fn dyck(a: &DyckArgs) -> CmdResult {
    let class = class_of(a.class);
    let w = match &a.weights {
        None => DyckWeights::unweighted(),
        Some(s) => {
            let ws = split_list(s).into_iter().map(parse_q).collect::<Result<Vec<Q>, _>>().map_err(CliError::usage)?;
            let [m, p, b]: [Q; 3] = ws.try_into().map_err(|_| CliError::Usage("--weights needs three values".into()))?;
            DyckWeights::new(m, p, b).map_err(CliError::usage)?
        }
    };
    let order = a.order;
    let (source, coeffs) = match class {
        Class::Meander | Class::Excursion => {
            let x = if class == Class::Meander { Q::one() } else { Q::zero() };
            ("closed-form", head(&meander_closed_form(&w, &x, &Q::one(), order).map_err(CliError::usage)?, order))
        }
        Class::Bridge if w == DyckWeights::unweighted() => {
            ("closed-form", head(&bridge_gf_series_unweighted(order).map_err(CliError::usage)?, order))
        }
        _ if order == 0 => ("dp", Vec::new()),
        _ => ("dp", dp_counts(&w.steps(), order - 1, class, Mode::Compressed)?.0),
    };
    let mut r = series_report(class, source, coeffs);
    r.json["weights"] = q_list(&[w.p_m1.clone(), w.p_p1.clone(), w.p_m1p1.clone()]);
    if w.require_probability().is_ok() && class == Class::Excursion {
        let half = (order / 2).max(1) as u32;
        if let Ok((regime, value)) = excursion_prob_asym(&w, half) {
            r.json["regime"] = json!({ "name": regime_name(regime), "length": 2 * half, "probability": value });
            writeln!(r.note, "excursion regime: {} (P at length {} ≈ {value:.6})", regime_name(regime), 2 * half)
                .expect("string write");
        }
    }
    Ok(r)
}

pub(crate) fn motzkin(a: &MotzkinArgs) -> CmdResult {
    if a.order == 0 {
        return Err(CliError::Usage("--order must be positive".into()));
    }
    let rep = nwalk_motzkin::closed_form_checks(a.order).map_err(CliError::usage)?;
    let line = |name: &str, bad: Option<String>| match bad {
        None => format!("{name}: ok to order {}\n", a.order),
        Some(n) => format!("{name}: first discrepancy at t^{n}\n"),
    };
    let mut text = line("meander closed form", rep.meander_first_mismatch.map(|n| n.to_string()));
    text += &line("excursion quartic residual", rep.quartic_first_nonzero.map(|n| n.to_string()));
    let json = json!({
        "order": rep.order,
        "meander_first_mismatch": rep.meander_first_mismatch,
        "quartic_first_nonzero": rep.quartic_first_nonzero,
        "passed": rep.passed(),
    });
    let mut r = Report::new(text, json);
    r.failed = !rep.passed();
    Ok(r)
}
