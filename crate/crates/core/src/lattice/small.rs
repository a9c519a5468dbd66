//! Machine-integer fast path for bounded two-variable systems. Every
//! operation is checked; `None` means "fall back to the general solver".

use num_bigint::BigInt;
use num_traits::ToPrimitive;

const MAX_SWEEP: i128 = 1 << 20;

fn div_floor(a: i128, b: i128) -> Option<i128> {
    let q = a.checked_div(b)?;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q.checked_sub(1)
    } else {
        Some(q)
    }
}

fn div_ceil(a: i128, b: i128) -> Option<i128> {
    div_floor(a.checked_neg()?, b)?.checked_neg()
}

/// Integer interval of f1 over the real polygon; Some(None) if empty.
fn projection(rows: &[[i128; 3]]) -> Option<Option<(i128, i128)>> {
    let mut lo: Option<i128> = None;
    let mut hi: Option<i128> = None;
    let mut bound = |p: i128, b: i128| -> Option<bool> {
        // p f1 >= b
        if p == 0 {
            return Some(b <= 0);
        }
        if p > 0 {
            let c = div_ceil(b, p)?;
            lo = Some(lo.map_or(c, |l| l.max(c)));
        } else {
            let c = div_floor(b, p)?;
            hi = Some(hi.map_or(c, |h| h.min(c)));
        }
        Some(true)
    };
    for r in rows {
        if r[1] == 0 && !bound(r[0], r[2])? {
            return Some(None);
        }
    }
    for i in rows.iter().filter(|r| r[1] > 0) {
        for j in rows.iter().filter(|r| r[1] < 0) {
            let nq = -j[1];
            let p = nq.checked_mul(i[0])?.checked_add(i[1].checked_mul(j[0])?)?;
            let b = nq.checked_mul(i[2])?.checked_add(i[1].checked_mul(j[2])?)?;
            if !bound(p, b)? {
                return Some(None);
            }
        }
    }
    let (lo, hi) = (lo?, hi?);
    Some((lo <= hi).then_some((lo, hi)))
}

/// Rows `p f1 + q f2 >= b`. Some(true) iff an integer point exists; None if
/// the polygon is unbounded, too wide, or arithmetic overflows.
pub(crate) fn feasible_2d(rows: &[[i128; 3]]) -> Option<bool> {
    let Some((lo1, hi1)) = projection(rows)? else {
        return Some(false);
    };
    let swapped: Vec<[i128; 3]> = rows.iter().map(|r| [r[1], r[0], r[2]]).collect();
    let Some((lo2, hi2)) = projection(&swapped)? else {
        return Some(false);
    };
    // Sweep the coordinate with the shorter projection.
    let (rows, lo, hi) = if hi2 - lo2 < hi1 - lo1 { (&swapped[..], lo2, hi2) } else { (rows, lo1, hi1) };
    if hi - lo > MAX_SWEEP {
        return None;
    }
    'sweep: for f1 in lo..=hi {
        let mut f2_lo: Option<i128> = None;
        let mut f2_hi: Option<i128> = None;
        for r in rows {
            let rest = r[2].checked_sub(r[0].checked_mul(f1)?)?;
            match r[1].signum() {
                0 => {
                    if rest > 0 {
                        continue 'sweep;
                    }
                }
                1 => {
                    let c = div_ceil(rest, r[1])?;
                    f2_lo = Some(f2_lo.map_or(c, |l| l.max(c)));
                }
                _ => {
                    let c = div_floor(rest, r[1])?;
                    f2_hi = Some(f2_hi.map_or(c, |h| h.min(c)));
                }
            }
        }
        match (f2_lo, f2_hi) {
            (Some(l), Some(h)) if l > h => continue,
            _ => return Some(true),
        }
    }
    Some(false)
}

/// `x` as an i128 if it fits in an i64 (leaving headroom for products).
pub(crate) fn small(x: &BigInt) -> Option<i128> {
    x.to_i64().map(i128::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::feasibility::solve;
    use crate::lattice::fm::HalfSpace;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn agrees_with_general_solver(
            rows in prop::collection::vec((-5i64..=5, -5i64..=5, -20i64..=20), 1..7),
        ) {
            let mut rows: Vec<[i128; 3]> = rows.into_iter().map(|(p, q, b)| [p.into(), q.into(), b.into()]).collect();
            // Box the system so the projection is bounded.
            rows.extend([[1, 0, -30], [-1, 0, -30], [0, 1, -30], [0, -1, -30]]);
            let hs: Vec<HalfSpace> = rows
                .iter()
                .map(|r| HalfSpace::new(vec![BigInt::from(r[0]), BigInt::from(r[1])], BigInt::from(r[2])))
                .collect();
            prop_assert_eq!(feasible_2d(&rows), Some(solve(&hs, 2).is_some()));
        }
    }

    #[test]
    fn unbounded_defers() {
        assert_eq!(feasible_2d(&[[0, 1, 0]]), None);
        assert_eq!(feasible_2d(&[[1, 0, 3], [-1, 0, -2]]), Some(false));
    }
}
