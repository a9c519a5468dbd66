//! Shared proptest strategies for unit tests.

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use crate::fan::{validate_fan, LatticeVector2, StackyFan};

/// Random complete fans: primitive-or-not vectors, deduplicated by ray.
pub fn arb_fan(max_n: usize, coord: i64) -> impl Strategy<Value = StackyFan> {
    proptest::collection::vec((-coord..=coord, -coord..=coord), 3..=max_n * 2).prop_filter_map(
        "not a complete fan",
        move |pts| {
            let mut kept: Vec<LatticeVector2> = Vec::new();
            for (x, y) in pts {
                let v = LatticeVector2::new(x, y);
                if v.is_zero() || kept.iter().any(|w| w.det(&v).is_zero() && w.dot(&v).is_positive()) {
                    continue;
                }
                if kept.len() < max_n {
                    kept.push(v);
                }
            }
            validate_fan(kept).ok()
        },
    )
}
