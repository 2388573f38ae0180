//! End-to-end acceptance checks, one test per criterion.
//!
//! Each test writes a `criterion N PASS|FAIL ...` line straight to stderr (not
//! captured by the harness). A lock runs them one at a time so the reported
//! runtimes are not inflated by each other.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use nwalk_cli::registry::{Formula, ROWS};
use nwalk_montecarlo::{estimate_class_probability, statistic_histograms, SimConfig, Statistic};
use nwalk_series::{algebraic_residual, q_to_f64, Series, Q};
use nwalk_sumset::{IntSet, SumsetType};
use nwalk_typelab::{bridge_series_from_automaton, build_automaton, export_transition_system, infer_types, Caps, Variant};
use nwalk_walk::{
    count_all, count_by_dp, final_max_distribution, oracle_counts, Class, ClassCounts, NStepSet, ProgressionModel, StateMode,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion(id: u32, name: &str, limit: Option<Duration>, body: impl FnOnce() -> Check) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = body();
    let took = start.elapsed();
    let result = match (result, limit) {
        (Ok(d), Some(l)) if took > l => Err(format!("{d}; took {:.1}s, limit {}s", took.as_secs_f64(), l.as_secs())),
        (r, _) => r,
    };
    let (tag, detail) = match &result {
        Ok(d) => ("PASS", d),
        Err(e) => ("FAIL", e),
    };
    let line = format!("criterion {id} {tag} [{name}] ({:.2}s): {detail}", took.as_secs_f64());
    let _ = writeln!(std::io::stderr(), "{line}");
    assert!(result.is_ok(), "{line}");
}

fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn q(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

fn ints(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| int(x)).collect()
}

fn evens(v: &[Q]) -> Vec<Q> {
    v.iter().step_by(2).cloned().collect()
}

fn head(s: &Series, order: usize) -> Vec<Q> {
    (0..order as i64).map(|n| s.coeff(n)).collect()
}

fn dyck() -> NStepSet {
    NStepSet::parse("{-1};{1};{-1,1}", None).unwrap()
}

fn motzkin() -> NStepSet {
    NStepSet::parse("{1};{-1};{0};{-1,0};{0,1};{-1,1};{-1,0,1}", None).unwrap()
}

fn automaton(steps: &NStepSet, variant: Variant) -> Result<nwalk_typelab::TypeAutomaton, String> {
    let types = infer_types(steps, variant, Caps::default()).map_err(|e| e.to_string())?;
    build_automaton(steps, &types, variant).map_err(|e| e.to_string())
}

#[test]
fn criterion_1_golden_dyck_series() {
    criterion(1, "golden Dyck series", Some(Duration::from_secs(5)), || {
        let d = dyck();
        let bridges = ints(&[1, 0, 7, 0, 63, 0, 583, 0, 5407]);
        let meanders = ints(&[1, 2, 6, 16, 48]);
        let excursions = ints(&[1, 4, 28, 224, 1888]);
        let d00 = ints(&[1, 2, 8, 40, 224]);

        let dp = count_all(&d, 8, StateMode::Full).map_err(|e| e.to_string())?;
        ensure!(dp.bridges == bridges, "DP bridges {:?}", dp.bridges);
        ensure!(dp.meanders[..5] == meanders[..], "DP meanders {:?}", dp.meanders);
        ensure!(evens(&dp.excursions) == excursions, "DP excursions {:?}", dp.excursions);
        let dp00: Vec<Q> = (0..=8)
            .step_by(2)
            .map(|n| final_max_distribution(&d, n, StateMode::Full).unwrap().get(&0).cloned().unwrap_or_else(Q::zero))
            .collect();
        ensure!(dp00 == d00, "DP D+(0,0) {:?}", dp00);

        let cf_bridges = head(&nwalk_dyck::bridge_gf_series_unweighted(9).map_err(|e| e.to_string())?, 9);
        ensure!(cf_bridges == bridges, "closed-form bridges {:?}", cf_bridges);
        let (m, e, z) = nwalk_dyck::unweighted_closed_forms(9).map_err(|e| e.to_string())?;
        ensure!(head(&m, 5) == meanders, "closed-form meanders {:?}", head(&m, 5));
        ensure!(evens(&head(&e, 9)) == excursions, "closed-form excursions {:?}", head(&e, 9));
        ensure!(evens(&head(&z, 9)) == d00, "closed-form D+(0,0) {:?}", head(&z, 9));

        let aut = automaton(&d, Variant::Walk)?;
        let auto_bridges = head(&bridge_series_from_automaton(&aut, 9).map_err(|e| e.to_string())?, 9);
        ensure!(auto_bridges == bridges, "automaton bridges {:?}", auto_bridges);
        Ok("bridges, meanders, excursions and D+(0,0) agree across DP, closed forms and the automaton".into())
    });
}

/// Test-local enumeration: plain set updates along every walk, integer tallies.
fn enumerate(steps: &[Vec<i64>], n_max: usize) -> [Vec<u64>; 4] {
    fn add(a: &BTreeSet<i64>, s: &[i64], floor: bool) -> BTreeSet<i64> {
        a.iter().flat_map(|x| s.iter().map(move |y| x + y)).filter(|&v| !floor || v >= 0).collect()
    }
    fn go(steps: &[Vec<i64>], n_max: usize, n: usize, free: &BTreeSet<i64>, floored: &BTreeSet<i64>, t: &mut [Vec<u64>; 4]) {
        t[0][n] += 1;
        t[1][n] += u64::from(free.contains(&0));
        t[2][n] += u64::from(!floored.is_empty());
        t[3][n] += u64::from(floored.contains(&0));
        if n == n_max {
            return;
        }
        for s in steps {
            go(steps, n_max, n + 1, &add(free, s, false), &add(floored, s, true), t);
        }
    }
    let mut t: [Vec<u64>; 4] = std::array::from_fn(|_| vec![0; n_max + 1]);
    let origin = BTreeSet::from([0]);
    go(steps, n_max, 0, &origin, &origin, &mut t);
    t
}

fn compare_enumeration(name: &str, steps: &NStepSet, raw: &[Vec<i64>], n_max: usize) -> Result<(), String> {
    let dp = count_all(steps, n_max, StateMode::Full).map_err(|e| e.to_string())?;
    let lib = oracle_counts(steps, n_max, u64::MAX).map_err(|e| e.to_string())?;
    ensure!(lib == dp, "{name}: library enumeration differs from DP");
    let mine = enumerate(raw, n_max);
    let as_q = |v: &[u64]| v.iter().map(|&x| Q::from_integer(x.into())).collect::<Vec<Q>>();
    let want = ClassCounts {
        walks: as_q(&mine[0]),
        bridges: as_q(&mine[1]),
        meanders: as_q(&mine[2]),
        excursions: as_q(&mine[3]),
    };
    ensure!(want == dp, "{name}: set-update enumeration differs from DP");
    Ok(())
}

#[test]
fn criterion_2_enumeration_equals_dp() {
    criterion(2, "enumeration equals DP", Some(Duration::from_secs(60)), || {
        compare_enumeration("Dyck", &dyck(), &[vec![-1], vec![1], vec![-1, 1]], 10)?;
        let m = [vec![1], vec![-1], vec![0], vec![-1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0, 1]];
        compare_enumeration("Motzkin", &motzkin(), &m, 8)?;
        Ok("all four classes exact for Dyck n <= 10 and Motzkin n <= 8".into())
    });
}

#[test]
fn criterion_3_motzkin_closed_forms() {
    criterion(3, "Motzkin closed forms", Some(Duration::from_secs(30)), || {
        let m = motzkin();
        let model = ProgressionModel::new(&m).map_err(|e| e.to_string())?;
        let meanders = count_by_dp(&m, 19, Class::Meander, StateMode::Compressed(&model)).map_err(|e| e.to_string())?;
        let closed = head(&nwalk_motzkin::meander_closed_form(20).map_err(|e| e.to_string())?, 20);
        ensure!(closed == meanders, "meander closed form differs from DP");
        ensure!(meanders[..6] == ints(&[1, 6, 40, 272, 1872, 12960])[..], "meanders {:?}", &meanders[..6]);
        let exc = count_by_dp(&m, 14, Class::Excursion, StateMode::Compressed(&model)).map_err(|e| e.to_string())?;
        let e = Series::from_coeffs(0, exc, 15);
        let residual = algebraic_residual(&nwalk_motzkin::excursion_quartic(15), &e).truncate(15);
        ensure!(residual.is_zero(), "quartic residual {:?}", head(&residual, 15));
        let report = nwalk_motzkin::closed_form_checks(20).map_err(|e| e.to_string())?;
        ensure!(report.passed(), "{report:?}");
        Ok("meander closed form exact to order 20, quartic residual 0 mod t^15".into())
    });
}

#[test]
fn criterion_4_asymptotic_table_convergence() {
    criterion(4, "asymptotic table convergence", None, || {
        let mut worst_at_80: f64 = 0.0;
        for (family, steps) in [("dyck", dyck()), ("motzkin", motzkin())] {
            let model = ProgressionModel::new(&steps).map_err(|e| e.to_string())?;
            let counts = count_all(&steps, 80, StateMode::Compressed(&model)).map_err(|e| e.to_string())?;
            for class in Class::ALL {
                let mut prev = f64::INFINITY;
                for n in (20..=80).step_by(2) {
                    let lead = match family {
                        "dyck" => nwalk_dyck::asymptotic_eval(class, n as u32),
                        _ => nwalk_motzkin::motzkin_asymptotics(class, n as u32),
                    };
                    // the walks row is exact, so only rounding separates successive errors there
                    let err = (q_to_f64(&counts.get(class)[n]) / lead - 1.0).abs();
                    ensure!(err <= prev + 4.0 * f64::EPSILON, "{family} {}: error grows at n={n} ({prev:.3e} -> {err:.3e})", class.name());
                    prev = err;
                }
                ensure!(prev < 0.05, "{family} {}: error {prev} at n=80", class.name());
                worst_at_80 = worst_at_80.max(prev);
            }
        }
        let g = nwalk_motzkin::gamma();
        let poly = 1024.0 * g.powi(4) - 8019.0 * g.powi(2) + 2916.0;
        ensure!((g - 0.6183).abs() < 1e-3 && poly.abs() < 1e-6, "gamma {g}, residual {poly}");
        Ok(format!("8 rows monotone over even n in 20..80, worst error at 80 {worst_at_80:.2e}; gamma = {g:.6}"))
    });
}

fn proportion(a: &Q, b: &Q) -> f64 {
    q_to_f64(&(a / b))
}

#[test]
fn criterion_5_limit_proportions() {
    criterion(5, "limit proportions", Some(Duration::from_secs(120)), || {
        let mut out = Vec::new();
        for (family, steps, n, meander, excursion) in [("dyck", dyck(), 200, 0.5, 0.25), ("motzkin", motzkin(), 120, 0.75, 0.5625)] {
            let walk_aut = automaton(&steps, Variant::Walk)?;
            let floor_aut = automaton(&steps, Variant::Meander)?;
            let at = |class: Class| -> Result<Q, String> {
                let aut = if matches!(class, Class::Walk | Class::Bridge) { &walk_aut } else { &floor_aut };
                let v = count_by_dp(&steps, n, class, StateMode::Compressed(aut)).map_err(|e| e.to_string())?;
                Ok(v[n].clone())
            };
            let walks = at(Class::Walk)?;
            for (class, limit) in [(Class::Bridge, 1.0), (Class::Meander, meander), (Class::Excursion, excursion)] {
                let p = proportion(&at(class)?, &walks);
                ensure!((p - limit).abs() < 0.02, "{family} {} share {p} at n={n}, limit {limit}", class.name());
                out.push(format!("{family} {}={p:.4}", class.name()));
            }
        }
        Ok(out.join(", "))
    });
}

#[test]
fn criterion_6_simulation_vs_theory() {
    criterion(6, "simulation vs theory", Some(Duration::from_secs(180)), || {
        let third = q(1, 3);
        let steps = NStepSet::dyck(third.clone(), third.clone(), third).map_err(|e| e.to_string())?;
        let n = 150;
        let cfg = SimConfig::new(steps.clone(), n, 100_000, 2024).map_err(|e| e.to_string())?;
        let est = estimate_class_probability(&cfg, Class::Excursion);
        let model = ProgressionModel::new(&steps).map_err(|e| e.to_string())?;
        let exact = q_to_f64(&count_by_dp(&steps, n, Class::Excursion, StateMode::Compressed(&model)).map_err(|e| e.to_string())?[n]);
        ensure!((est.estimate - exact).abs() <= 4.0 * est.stderr, "estimate {} vs exact {exact}, stderr {}", est.estimate, est.stderr);
        ensure!((est.estimate - 0.25).abs() < 0.01, "estimate {} not within 0.01 of 1/4", est.estimate);

        let half = q(1, 2);
        let steps = NStepSet::dyck(half.clone(), half, Q::zero()).map_err(|e| e.to_string())?;
        let cfg = SimConfig::new(steps, n, 130_000_000, 7).map_err(|e| e.to_string())?;
        let h = statistic_histograms(&cfg, Statistic::ReturnsToZero, true).map_err(|e| e.to_string())?;
        ensure!(h.accepted >= 100_000, "only {} accepted excursions", h.accepted);
        let law: BTreeMap<i64, f64> = (1..=400).map(|k| (k, k as f64 / 2f64.powi(k as i32 + 1))).collect();
        let tv = h.tv_to(&law);
        ensure!(tv < 0.02, "returns TV {tv} with {} accepted", h.accepted);
        Ok(format!(
            "excursion share {:.4} ± {:.4} (exact {exact:.4}); returns TV {tv:.4} over {} accepted",
            est.estimate, est.stderr, h.accepted
        ))
    });
}

/// Seeded step sets, each step inside a window of width 3.
fn random_step_sets(seed: u64, count: usize) -> Vec<NStepSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(2..=4);
        let sets: Vec<IntSet> = (0..k)
            .map(|_| {
                let lo = rng.gen_range(-2..=0);
                let mut s: Vec<i64> = (lo..=lo + 3).filter(|_| rng.gen_bool(0.5)).collect();
                if s.is_empty() {
                    s.push(lo);
                }
                IntSet::new(s)
            })
            .collect();
        if let Ok(set) = NStepSet::unweighted(sets) {
            if set.len() >= 2 && set.max_norm() > 0 {
                out.push(set);
            }
        }
    }
    out
}

#[test]
fn criterion_7_typelab() {
    criterion(7, "typelab", None, || {
        let d = infer_types(&dyck(), Variant::Walk, Caps::default()).map_err(|e| e.to_string())?;
        ensure!(d.len() == 1 && d[0].g == 2, "Dyck walk types {d:?}");

        let m = motzkin();
        let aut = automaton(&m, Variant::Meander)?;
        ensure!(aut.len() == 2, "Motzkin meander automaton has {} states", aut.len());
        let doc = export_transition_system(&aut);
        let got = doc.matrices().map_err(|e| e.to_string())?;
        let two = doc.states.iter().position(|s| s.g == 2).ok_or("no step-2 type")?;
        let one = doc.states.iter().position(|s| s.g == 1).ok_or("no interval type")?;
        let idx = [two, one];
        let want = nwalk_motzkin::transition_matrices();
        ensure!(got.b.len() == 1 && got.c.len() == 1, "expected one floor level");
        for r in 0..2 {
            for c in 0..2 {
                ensure!(got.a[idx[r]][idx[c]] == want.a[r][c], "A[{r}][{c}]");
                ensure!(got.b[0][idx[r]][idx[c]] == want.b[r][c], "B[{r}][{c}]");
                ensure!(got.c[0][idx[r]][idx[c]] == want.c[r][c], "C[{r}][{c}]");
            }
        }
        let walk_types = infer_types(&m, Variant::Walk, Caps::default()).map_err(|e| e.to_string())?;
        ensure!(walk_types.len() == 2, "Motzkin walk types {walk_types:?}");

        let mut sets = vec![dyck(), m];
        sets.extend(random_step_sets(0x5eed, 5));
        for steps in &sets {
            let aut = automaton(steps, Variant::Walk)?;
            let series = head(&bridge_series_from_automaton(&aut, 17).map_err(|e| e.to_string())?, 17);
            let dp = count_by_dp(steps, 16, Class::Bridge, StateMode::Full).map_err(|e| e.to_string())?;
            ensure!(series == dp, "bridges differ for {:?}", steps.steps());
        }
        Ok(format!("Dyck 1 type (g=2), Motzkin 2 types with matching A/B/C, bridges to order 16 on {} sets", sets.len()))
    });
}

fn small_set() -> impl Strategy<Value = IntSet> {
    prop::collection::vec(-8i64..=8, 0..=5).prop_map(IntSet::new)
}

fn weight() -> impl Strategy<Value = Q> {
    (0i64..=4, 1i64..=3).prop_map(|(a, b)| q(a, b))
}

fn weighted_steps(lo: i64, hi: i64) -> impl Strategy<Value = NStepSet> {
    prop::collection::vec((prop::collection::btree_set(lo..=hi, 1..=3), weight()), 1..=4).prop_filter_map(
        "needs positive weight",
        |v| {
            let s = NStepSet::new(v.into_iter().map(|(s, w)| (IntSet::new(s), w))).ok()?;
            (!s.total_weight().is_zero()).then_some(s)
        },
    )
}

/// Weighted classical meander counts over a multiset of single steps.
fn classical_meanders(steps: &[(i64, Q)], n_max: usize) -> Vec<Q> {
    let mut layer: BTreeMap<i64, Q> = BTreeMap::from([(0, Q::one())]);
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.push(layer.values().fold(Q::zero(), |a, b| a + b));
        if n == n_max {
            break;
        }
        let mut next = BTreeMap::new();
        for (x, c) in &layer {
            for (s, w) in steps {
                if x + s >= 0 {
                    *next.entry(x + s).or_insert_with(Q::zero) += c * w;
                }
            }
        }
        layer = next;
    }
    out
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    let cases = 256;
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))?;
    Ok(format!("{name} x{cases}"))
}

#[test]
fn criterion_8_property_suites() {
    criterion(8, "property suites", None, || {
        let mut done = Vec::new();
        done.push(run_property("sumset monoid", (small_set(), small_set(), small_set()), |(a, b, c)| {
            prop_assert_eq!(a.sumset(&b).sumset(&c), a.sumset(&b.sumset(&c)));
            prop_assert_eq!(a.sumset(&b), b.sumset(&a));
            prop_assert_eq!(a.sumset(&IntSet::singleton(0)), a.clone());
            Ok(())
        })?);
        done.push(run_property("pruning/conjugation duality", (1u32..512, 0u32..512), |(sb, tb)| {
            let bits = |b: u32| IntSet::new((0..9i64).filter(|i| b >> i & 1 == 1));
            let (s, t) = (bits(sb), bits(tb));
            let lhs = s.conjugate().prune_bottom(&t);
            let rhs = s.prune_top(&t).conjugate();
            prop_assert!(lhs.equivalent(&rhs), "s={} t={}: {} vs {}", s, t, lhs, rhs);
            Ok(())
        })?);
        let ty = (
            1i64..=4,
            0i64..=3,
            prop::collection::vec(0i64..=5, 0..=2),
            prop::collection::vec(0i64..=6, 0..=3),
            prop::collection::vec(0i64..=5, 0..=2),
        );
        done.push(run_property("type normalization", ty, |(g, k, a, b, c)| {
            let b = IntSet::new(b.into_iter().chain([0]));
            let t = SumsetType::new(g, k, IntSet::new(a), b, IntSet::new(c)).unwrap();
            let (p, threshold) = t.normalize().unwrap();
            prop_assert!(p.is_proper());
            for j in threshold.max(t.k)..threshold.max(t.k) + 10 {
                let inst = t.raw_instance(j, -2);
                if !inst.is_empty() {
                    prop_assert!(p.member(&inst), "index {} of {:?}", j, t);
                }
            }
            Ok(())
        })?);
        done.push(run_property("top-path meanders", weighted_steps(-3, 3), |s| {
            let top: Vec<(i64, Q)> = s.steps().iter().zip(s.weights()).map(|(st, w)| (st.max().unwrap(), w.clone())).collect();
            prop_assert_eq!(count_by_dp(&s, 8, Class::Meander, StateMode::Full).unwrap(), classical_meanders(&top, 8));
            Ok(())
        })?);
        done.push(run_property("reflection symmetry", (weight(), weight(), weight()), |(a, b, c)| {
            let s = NStepSet::dyck(a.clone(), b.clone(), c.clone()).unwrap();
            let r = NStepSet::dyck(b, a, c).unwrap();
            let e = |x: &NStepSet| count_by_dp(x, 10, Class::Excursion, StateMode::Full).unwrap();
            prop_assert_eq!(e(&s), e(&r));
            Ok(())
        })?);
        done.push(run_property("parity vanishing", weighted_steps(-2, 2), |s| {
            let odd = NStepSet::new(s.steps().iter().zip(s.weights()).map(|(st, w)| (IntSet::new(st.iter().map(|x| 2 * x + 1)), w.clone())))
                .unwrap();
            let c = count_all(&odd, 7, StateMode::Full).unwrap();
            for n in (1..=7).step_by(2) {
                prop_assert!(c.bridges[n].is_zero() && c.excursions[n].is_zero());
            }
            Ok(())
        })?);
        Ok(done.join(", "))
    });
}

fn trinomial(n: u64, k: i64) -> BigInt {
    // [x^k] (1 + x + x^2)^n
    if k < 0 {
        return BigInt::zero();
    }
    (0..=k / 2)
        .filter(|&j| (k - 2 * j) as u64 + j as u64 <= n)
        .map(|j| {
            let (j, i) = (j as u64, (k - 2 * j) as u64);
            binomial(BigInt::from(n), BigInt::from(j)) * binomial(BigInt::from(n - j), BigInt::from(i))
        })
        .sum()
}

/// Independent evaluation of each tabulated formula.
fn formula_value(f: Formula, n: u64) -> BigInt {
    let b = BigInt::from;
    let pow = |base: i64, e: u64| num_traits::pow(b(base), e as usize);
    let sign = if n % 2 == 0 { b(1) } else { b(-1) };
    match f {
        Formula::CentralBinomialEven if n % 2 == 1 => b(0),
        Formula::CentralBinomialEven | Formula::CentralBinomialFloor => binomial(b(n as i64), b((n / 2) as i64)),
        Formula::CentralTrinomial => trinomial(n, n as i64),
        Formula::TrinomialPair => trinomial(n, n as i64 - 1) + trinomial(n, n as i64),
        Formula::TwoPowMinusQuarter => pow(2, n) - (b(2 * n as i64 + 1) - sign) / 4,
        Formula::TwoPowMinusParity => pow(2, n) - (b(1) - sign) / 2,
        Formula::ThreePowShifted => pow(3, n + 1) - pow(2, n) - if n == 0 { b(1) } else { b(0) },
        Formula::OddBinomial => binomial(b(2 * n as i64 + 1), b(n as i64 + 1)),
        Formula::ThreePow => pow(3, n),
    }
}

#[test]
fn criterion_9_formula_rows() {
    criterion(9, "formula rows", None, || {
        let mut failures = Vec::new();
        let mut checked = 0;
        for row in ROWS {
            let Some(f) = row.formula else { continue };
            checked += 1;
            let dp = count_by_dp(&row.steps(), 14, row.class, StateMode::Full).map_err(|e| e.to_string())?;
            let bad: Vec<String> = (0..=14u64)
                .filter_map(|n| {
                    let want = Q::from_integer(formula_value(f, n));
                    let got = &dp[n as usize];
                    (got != &want).then(|| format!("n={n} dp={} formula={}", got.to_integer(), want.to_integer()))
                })
                .collect();
            if let Some(first) = bad.first() {
                failures.push(format!("{} ({}): {} of 15 differ, first {first}", row.id, f.text(), bad.len()));
            }
        }
        ensure!(failures.is_empty(), "{} of {checked} rows fail: {}", failures.len(), failures.join("; "));
        Ok(format!("{checked} rows exact for n <= 14"))
    });
}

#[test]
fn formula_values_are_nonnegative_integers() {
    // guards the independent evaluator itself
    for row in ROWS {
        if let Some(f) = row.formula {
            for n in 0..=14 {
                assert!(!formula_value(f, n).is_negative(), "{} n={n}", row.id);
            }
        }
    }
    assert_eq!(trinomial(4, 4).to_u64(), Some(19));
}
