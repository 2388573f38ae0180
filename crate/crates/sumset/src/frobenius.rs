use crate::{IntSet, SumsetError};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Largest integer that is not a nonnegative combination of `s`, or −1 when
/// every nonnegative integer is representable.
pub fn frobenius_number(s: &IntSet) -> Result<i64, SumsetError> {
    let lo = s.min().ok_or_else(|| SumsetError::Frobenius("empty set".into()))?;
    if lo <= 0 {
        return Err(SumsetError::Frobenius(format!("{s} has a nonpositive element")));
    }
    if s.iter().fold(0, gcd) != 1 {
        return Err(SumsetError::Frobenius(format!("{s} has gcd > 1")));
    }
    if lo == 1 {
        return Ok(-1);
    }
    // Schur: the answer is below (lo−1)(max−1); a run of `lo` representable
    // values after it means everything beyond is representable too.
    let hi = s.max().unwrap_or(lo);
    let bound = ((lo - 1) * (hi - 1)) as usize + lo as usize + 1;
    let mut rep = vec![false; bound + 1];
    rep[0] = true;
    for v in 1..=bound {
        rep[v] = s.iter().any(|x| x as usize <= v && rep[v - x as usize]);
    }
    Ok(rep.iter().rposition(|&r| !r).map_or(-1, |p| p as i64))
}
