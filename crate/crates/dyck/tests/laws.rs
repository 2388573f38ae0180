use num_traits::ToPrimitive;
use nwalk_dyck::*;
use nwalk_series::Q;
use nwalk_walk::{final_max_distribution, returns_distribution, ProgressionModel, StateMode};

fn normalized(v: &[Q]) -> Vec<f64> {
    let f: Vec<f64> = v.iter().map(|q| q.to_f64().unwrap()).collect();
    let total: f64 = f.iter().sum();
    f.iter().map(|x| x / total).collect()
}

fn tv(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n).map(|i| (a.get(i).unwrap_or(&0.0) - b.get(i).unwrap_or(&0.0)).abs()).sum::<f64>() / 2.0
}

fn weights(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> DyckWeights {
    DyckWeights::from_ratios(a, b, c).unwrap()
}

/// Final maximum of excursions of `length`, indexed by `k` where the maximum is `2k`.
fn dp_max(w: &DyckWeights, length: usize) -> Vec<f64> {
    let steps = w.steps();
    let model = ProgressionModel::new(&steps).unwrap();
    let d = final_max_distribution(&steps, length, StateMode::Compressed(&model)).unwrap();
    assert!(d.keys().all(|m| m % 2 == 0));
    let top = *d.keys().max().unwrap() as usize / 2;
    let v: Vec<Q> = (0..=top).map(|k| d.get(&(2 * k as i64)).cloned().unwrap_or_default()).collect();
    normalized(&v)
}

fn dp_returns(w: &DyckWeights, length: usize) -> Vec<f64> {
    let steps = w.steps();
    let model = ProgressionModel::new(&steps).unwrap();
    normalized(&returns_distribution(&steps, length, StateMode::Compressed(&model)).unwrap())
}

#[test]
fn max_law_matches_dp_at_length_120() {
    let w = weights((4, 5), (1, 10), (1, 10));
    let law = maxlaw_discrete_pmf(&w, 200).unwrap();
    let d = tv(&dp_max(&w, 120), &law.pmf);
    eprintln!("tv {d}");
    assert!(d < 0.05, "tv {d}");
}

#[test]
fn max_law_distance_shrinks_with_length() {
    for w in [weights((7, 10), (1, 10), (1, 5)), weights((3, 5), (1, 5), (1, 5))] {
        let law = maxlaw_discrete_pmf(&w, 300).unwrap();
        let d: Vec<f64> = [40, 80, 160].iter().map(|&n| tv(&dp_max(&w, n), &law.pmf)).collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
    }
}

#[test]
fn max_law_mean_is_in_altitude_units() {
    let w = weights((3, 5), (1, 5), (1, 5));
    let law = maxlaw_discrete_pmf(&w, 200).unwrap();
    assert!((law.mean_formula - law.mean_series).abs() < 1e-8);
    let k_mean: f64 = law.pmf.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
    assert!((2.0 * k_mean - law.mean_formula).abs() < 1e-6);
    assert!((law.mean_formula - (4.0 + 12.5 * 0.12f64.sqrt())).abs() < 1e-12);
}

#[test]
fn zero_drift_moments_match_dp() {
    let w = weights((1, 3), (1, 2), (1, 6));
    for n in [60u32, 120] {
        let d = dp_max(&w, 2 * n as usize);
        let mean: f64 = d.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        let var: f64 = d.iter().enumerate().map(|(k, p)| (k as f64 - mean).powi(2) * p).sum();
        let (m, v) = maxlaw_moments(&w, n).unwrap();
        assert!((mean - m).abs() < 2.0, "mean {mean} vs {m}");
        assert!((var / v - 1.0).abs() < 0.05, "var {var} vs {v}");
    }
}

#[test]
fn returns_laws_match_dp() {
    let cases = [
        (weights((1, 3), (1, 3), (1, 3)), ReturnsCase::BothBelowHalf),
        (weights((1, 5), (2, 5), (2, 5)), ReturnsCase::BothBelowHalf),
        (weights((1, 3), (1, 2), (1, 6)), ReturnsCase::UpHalf),
        (weights((1, 2), (1, 3), (1, 6)), ReturnsCase::DownHalf),
        (weights((1, 2), (1, 2), (0, 1)), ReturnsCase::NoDoubleStep),
        (weights((1, 5), (3, 5), (1, 5)), ReturnsCase::UpHeavy),
        (weights((3, 5), (1, 5), (1, 5)), ReturnsCase::DownHeavy),
        (weights((7, 10), (1, 10), (1, 5)), ReturnsCase::DownHeavy),
    ];
    for (w, case) in cases {
        let (got, pmf) = returns_pmf(&w, 200).unwrap();
        assert_eq!(got, case);
        let d = tv(&dp_returns(&w, 120), &pmf);
        assert!(d < 0.03, "{case:?} tv {d}");
    }
}

#[test]
fn first_stated_down_heavy_law_is_not_normalized() {
    let w = weights((3, 5), (1, 5), (1, 5));
    let total: f64 = down_heavy_first_form(&w, 400).iter().sum();
    assert!((total - 1.0).abs() > 0.5, "{total}");
    let (_, pmf) = returns_pmf(&w, 1000).unwrap();
    assert!((pmf.iter().sum::<f64>() - 1.0).abs() < 1e-9);
}

#[test]
fn returns_cases_need_probability_weights() {
    let w = weights((1, 2), (1, 2), (0, 1));
    assert_eq!(returns_pmf(&w, 5).unwrap().0, ReturnsCase::NoDoubleStep);
    let err = returns_pmf(&DyckWeights::unweighted(), 5).unwrap_err().to_string();
    assert!(err.contains("sum to 3"), "{err}");
}
