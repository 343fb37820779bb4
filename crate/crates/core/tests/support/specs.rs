//! proptest strategies for interval specs.
#![allow(dead_code)]

use proptest::prelude::*;
use sortable_core::{IntervalComplexSpec, IntervalPart};

/// Non-nesting parts on `[n]`: strictly increasing `lo` and `hi`, each part given `rank`
/// drawn from `ranks`.
pub fn spec(n: std::ops::RangeInclusive<usize>, max_parts: usize, ranks: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = IntervalComplexSpec> {
    n.prop_flat_map(move |n| {
        let m = 1..=max_parts.min(n);
        (Just(n), m)
    })
    .prop_flat_map(move |(n, m)| {
        let all: Vec<usize> = (1..=n).collect();
        (
            Just(n),
            proptest::sample::subsequence(all.clone(), m),
            proptest::sample::subsequence(all, m),
            proptest::collection::vec(ranks.clone(), m),
        )
    })
    .prop_filter_map("lo must not exceed hi", |(n, los, his, rs)| {
        if los.iter().zip(&his).any(|(l, h)| l > h) {
            return None;
        }
        let parts = los.iter().zip(&his).zip(&rs).map(|((&l, &h), &r)| IntervalPart::new(l, h, r)).collect();
        IntervalComplexSpec::new(n, parts).ok()
    })
}

/// Same, with every part at rank `d-1`, so the built complex is unit-interval of
/// dimension `d-1` once some part has at least `d` vertices.
pub fn unit_spec(n: std::ops::RangeInclusive<usize>, max_parts: usize, d: usize) -> impl Strategy<Value = IntervalComplexSpec> {
    spec(n, max_parts, d - 1..=d - 1).prop_filter("some part contributes", |s| s.parts().iter().any(|p| p.contributes()))
}

/// Consecutive blocks covering `[1, n]`, ranks from `ranks`.
pub fn partition_spec(n: std::ops::RangeInclusive<usize>, ranks: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = IntervalComplexSpec> {
    n.prop_flat_map(move |n| {
        let cuts: Vec<usize> = (1..n).collect();
        (Just(n), proptest::sample::subsequence(cuts, 0..n), proptest::collection::vec(ranks.clone(), n))
    })
    .prop_map(|(n, cuts, rs)| {
        let mut parts = Vec::new();
        let mut lo = 1;
        for (j, &c) in cuts.iter().chain(std::iter::once(&n)).enumerate() {
            parts.push(IntervalPart::new(lo, c, rs[j]));
            lo = c + 1;
        }
        IntervalComplexSpec::new(n, parts).expect("blocks are a valid spec")
    })
}
