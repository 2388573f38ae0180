use serde::{Deserialize, Serialize};

use crate::{IntSet, SumsetError};

/// The family `{ ((j×{0,g} + b) ⊎− a) ⊖ c + {m} : j ≥ k, m ∈ Z }`.
///
/// A member is pinned down by its minimum and maximum, which is what
/// [`SumsetType::locate`] exploits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumsetType {
    pub g: i64,
    pub k: i64,
    pub a: IntSet,
    pub b: IntSet,
    pub c: IntSet,
}

/// A set recognised as instance `j` of `ty`, translated by `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeFit {
    pub ty: SumsetType,
    pub j: i64,
    pub m: i64,
}

fn max_or_minus_one(s: &IntSet) -> i64 {
    s.max().unwrap_or(-1)
}

impl SumsetType {
    pub fn new(g: i64, k: i64, a: IntSet, b: IntSet, c: IntSet) -> Result<Self, SumsetError> {
        if g < 0 || k < 0 {
            return Err(SumsetError::InvalidType(format!("g={g}, k={k} must be nonnegative")));
        }
        if b.is_empty() {
            return Err(SumsetError::InvalidType("pattern b is empty".into()));
        }
        Ok(SumsetType { g, k, a, b, c })
    }

    /// The single set `s`, shifted to minimum 0, as a period-0 type.
    pub fn singleton(s: &IntSet) -> Self {
        SumsetType { g: 0, k: 0, a: IntSet::empty(), b: s.normalized(), c: IntSet::empty() }
    }

    /// Smallest `k` with `k·g > max a + max c`, reading `max ∅` as −1.
    pub fn min_proper_k(g: i64, a: &IntSet, c: &IntSet) -> i64 {
        let bound = max_or_minus_one(a) + max_or_minus_one(c);
        if bound < 0 {
            0
        } else {
            bound / g + 1
        }
    }

    pub fn is_proper(&self) -> bool {
        if self.g == 0 {
            return self.k == 0 && self.a.is_empty() && self.c.is_empty() && self.b.min() == Some(0);
        }
        self.a.min().is_none_or(|x| x >= 0)
            && self.c.min().is_none_or(|x| x >= 0)
            && self.b.min() == Some(0)
            && self.b.max().is_some_and(|x| x < self.g)
            && self.k * self.g > max_or_minus_one(&self.a) + max_or_minus_one(&self.c)
    }

    /// `j×{0,g} + b` before pruning.
    fn base(&self, j: i64) -> IntSet {
        IntSet::progression(0, j * self.g, self.g.max(1)).sumset(&self.b)
    }

    /// Instance `j` shifted by `m`, without the `j ≥ k` check.
    pub fn raw_instance(&self, j: i64, m: i64) -> IntSet {
        let j = if self.g == 0 { 0 } else { j };
        self.base(j).prune_bottom(&self.a).prune_top(&self.c).shift(m)
    }

    pub fn instance(&self, j: i64, m: i64) -> Result<IntSet, SumsetError> {
        if j < self.k {
            return Err(SumsetError::IndexBelowThreshold { j, k: self.k });
        }
        Ok(self.raw_instance(j, m))
    }

    /// First index from which the two prunings can no longer touch the
    /// extreme elements, so norms grow exactly by `g` per index.
    fn stable_index(&self) -> i64 {
        if self.g == 0 {
            return 0;
        }
        let reach = max_or_minus_one(&self.a).max(0) + max_or_minus_one(&self.c).max(0) + self.b.norm() + 2;
        self.k.max(reach / self.g + 2)
    }

    /// Finds `(j, m)` with `instance(j, m) == s`, if any.
    pub fn locate(&self, s: &IntSet) -> Option<(i64, i64)> {
        let lo = s.min()?;
        let check = |j: i64| {
            let inst = self.raw_instance(j, 0);
            let m = lo - inst.min()?;
            (inst.shift(m) == *s).then_some((j, m))
        };
        if self.g == 0 {
            return check(0);
        }
        let stable = self.stable_index();
        let offset = self.raw_instance(stable, 0).norm() - stable * self.g;
        let rest = s.norm() - offset;
        if rest >= 0 && rest % self.g == 0 && rest / self.g >= stable {
            return check(rest / self.g);
        }
        (self.k..stable).find_map(check)
    }

    pub fn member(&self, s: &IntSet) -> bool {
        self.locate(s).is_some()
    }

    /// A proper type agreeing with `self` from some index on, and that index.
    ///
    /// Members are fitted by period detection and the threshold is found by
    /// comparing the two families index by index.
    pub fn normalize(&self) -> Result<(SumsetType, i64), SumsetError> {
        if self.g == 0 {
            let s = self.raw_instance(0, 0);
            if s.is_empty() {
                return Err(SumsetError::InvalidType("family is empty".into()));
            }
            return Ok((SumsetType::singleton(&s), self.k));
        }
        if self.is_proper() {
            return Ok((self.clone(), self.k));
        }
        // Take a member deep enough that both prunings sit far from each other.
        let span = self.b.norm() + max_or_minus_one(&self.a) + max_or_minus_one(&self.c) + 2;
        let j0 = self.k + 4 + span / self.g + 1;
        let sample = self.raw_instance(j0, 0);
        let fit = detect_type(&sample)
            .ok_or_else(|| SumsetError::InvalidType(format!("no periodic structure in {sample}")))?;
        let proper = fit.ty;
        // Index maps are affine: member j of self is member j' of proper.
        let mut threshold = j0;
        while threshold > self.k {
            let s = self.raw_instance(threshold - 1, 0);
            if proper.member(&s) {
                threshold -= 1;
            } else {
                break;
            }
        }
        for j in j0..j0 + 8 {
            if !proper.member(&self.raw_instance(j, 0)) {
                return Err(SumsetError::InvalidType(format!(
                    "fitted type {proper:?} drifts from the family at index {j}"
                )));
            }
        }
        Ok((proper, threshold))
    }
}

/// Tries to read a nonempty set as a member of a proper type with period `g`.
///
/// The residues present in the set fix `b`; anything missing from
/// the periodic hull becomes bottom or top pruning depending on which end is
/// nearer. Sets with fewer than two clean periods are rejected, since their
/// periodicity is not yet visible.
pub fn fit_with_period(set: &IntSet, g: i64) -> Option<TypeFit> {
    let lo = set.min()?;
    let r = set.normalized();
    let n = r.norm();
    if g <= 0 || n < 2 * g {
        return None;
    }
    // Every element lies in the periodic hull, so all residues show up.
    let residues: Vec<i64> = IntSet::new(r.iter().map(|x| x.rem_euclid(g))).iter().collect();
    // Periodic hull starts at the largest admissible point <= 0.
    let start = -residues.iter().map(|&rho| (-rho).rem_euclid(g)).min()?;
    let b = IntSet::new(residues.iter().map(|&rho| (rho - start).rem_euclid(g)));
    let max_b = b.max()?;
    let j = (n - start - max_b + g - 1).div_euclid(g).max(0);
    let hull = IntSet::progression(0, j * g, g).sumset(&b).shift(start);
    let top = hull.max()?;
    if r.iter().any(|x| !hull.contains(x)) {
        return None;
    }
    let mut a = Vec::new();
    let mut c = Vec::new();
    for x in hull.iter().filter(|&x| !r.contains(x)) {
        let below = x - start;
        let above = top - x;
        if below <= above {
            a.push(below);
        } else {
            c.push(above);
        }
    }
    let a = IntSet::new(a);
    let c = IntSet::new(c);
    let k = SumsetType::min_proper_k(g, &a, &c);
    if j < k + 2 {
        return None;
    }
    let ty = SumsetType { g, k, a, b, c };
    let inst = ty.raw_instance(j, start);
    if inst != r {
        return None;
    }
    Some(TypeFit { ty, j, m: start + lo })
}

/// Best reading of `set` as a member of a proper type.
///
/// Among all periods that fit, the one with the least pruning wins; a wrong
/// small period can only fit by pruning most of the set, and that pruning
/// grows with the set.
pub fn detect_type(set: &IntSet) -> Option<TypeFit> {
    let n = set.norm();
    (1..=n / 2)
        .filter_map(|g| fit_with_period(set, g))
        .min_by_key(|f| (max_or_minus_one(&f.ty.a) + max_or_minus_one(&f.ty.c), f.ty.g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> IntSet {
        IntSet::new(v.iter().copied())
    }

    fn worked_type() -> SumsetType {
        SumsetType::new(3, 1, IntSet::empty(), s(&[0, 1]), s(&[1, 2, 3])).unwrap()
    }

    #[test]
    fn worked_type_instances() {
        let t = worked_type();
        assert_eq!(t.instance(1, 0).unwrap(), s(&[0, 4]));
        assert_eq!(t.instance(2, 0).unwrap(), s(&[0, 1, 3, 7]));
        assert_eq!(t.instance(3, 0).unwrap(), s(&[0, 1, 3, 4, 6, 10]));
        assert!(t.member(&s(&[0, 1, 3, 7])));
        assert!(t.member(&s(&[5, 6, 8, 12])));
        assert!(!t.member(&s(&[0, 1, 2])));
        assert!(t.instance(0, 0).is_err());
    }

    #[test]
    fn membership_matches_brute_force() {
        let t = worked_type();
        let mut family = Vec::new();
        for j in t.k..12 {
            for m in -5..5 {
                family.push(t.instance(j, m).unwrap());
            }
        }
        let cands = [s(&[0, 1, 2]), s(&[0, 4, 5]), s(&[0, 3]), s(&[1, 2, 4, 8]), s(&[0])];
        for cand in cands.iter().chain(family.iter()) {
            assert_eq!(t.member(cand), family.contains(cand), "{cand}");
        }
    }

    #[test]
    fn proper_checks() {
        assert!(worked_type().is_proper());
        let loose = SumsetType::new(3, 0, IntSet::empty(), s(&[0, 1]), s(&[1])).unwrap();
        assert!(!loose.is_proper());
        let dyck = SumsetType::new(2, 0, IntSet::empty(), s(&[0]), IntSet::empty()).unwrap();
        assert!(dyck.is_proper());
        assert!(SumsetType::singleton(&s(&[3, 5])).is_proper());
    }

    #[test]
    fn normalize_period_zero() {
        let t = SumsetType::new(0, 3, s(&[1]), s(&[2, 3, 4, 6]), s(&[0])).unwrap();
        let (p, _) = t.normalize().unwrap();
        // {2,3,4,6} ⊎− {1} = {2,4,6}, then ⊖ {0} = {2,4}
        assert_eq!(p, SumsetType::singleton(&s(&[0, 2])));
        assert!(p.is_proper());
    }

    #[test]
    fn normalize_is_idempotent_on_proper() {
        let t = SumsetType::new(2, 1, IntSet::empty(), s(&[0]), IntSet::empty()).unwrap();
        assert_eq!(t.normalize().unwrap(), (t.clone(), 1));
    }

    #[test]
    fn normalize_folds_wide_pattern() {
        let t = SumsetType::new(2, 0, IntSet::empty(), s(&[0, 3]), IntSet::empty()).unwrap();
        let (p, k) = t.normalize().unwrap();
        assert!(p.is_proper());
        assert!(p.b.max().unwrap() < p.g);
        // Oracle: compare the two families by brute force up to norm 40.
        for j in k..20 {
            let inst = t.raw_instance(j, 0);
            if inst.norm() > 40 {
                break;
            }
            assert!(p.member(&inst), "index {j}: {inst}");
        }
    }

    #[test]
    fn detect_progressions_and_intervals() {
        let fit = detect_type(&s(&[-3, -1, 1, 3, 5])).unwrap();
        assert_eq!((fit.ty.g, fit.j, fit.m), (2, 4, -3));
        assert_eq!(fit.ty.b, s(&[0]));
        let fit = detect_type(&IntSet::progression(2, 9, 1)).unwrap();
        assert_eq!((fit.ty.g, fit.j, fit.m), (1, 7, 2));
        assert!(detect_type(&s(&[0, 2])).is_none());
    }

    #[test]
    fn detect_pruned_interval() {
        // {0,2,3,...,10,12}: interval with the second element and second-to-last removed
        let set: IntSet = [0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12].into_iter().collect();
        let fit = detect_type(&set).unwrap();
        assert_eq!(fit.ty.g, 1);
        assert_eq!(fit.ty.a, s(&[1]));
        assert_eq!(fit.ty.c, s(&[1]));
        assert!(fit.ty.is_proper());
        assert_eq!(fit.ty.raw_instance(fit.j, fit.m), set);
    }
}
