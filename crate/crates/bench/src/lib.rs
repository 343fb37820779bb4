//! Instances shared by the benchmarks in `benches/`.

use sortable_core::{IntervalComplexSpec, IntervalPart};

fn spec(n: usize, parts: &[(usize, usize, usize)]) -> IntervalComplexSpec {
    IntervalComplexSpec::new(n, parts.iter().map(|&(lo, hi, r)| IntervalPart::new(lo, hi, r)).collect()).expect("valid spec")
}

/// Unit-interval specs of growing size, named for the report.
pub fn unit_interval_specs() -> Vec<(&'static str, IntervalComplexSpec)> {
    vec![
        ("tet4", spec(4, &[(1, 4, 2)])),
        ("twin3", spec(6, &[(1, 3, 2), (4, 6, 2)])),
        ("overlap7", spec(7, &[(1, 4, 2), (3, 7, 2)])),
        ("overlap9", spec(9, &[(1, 4, 2), (3, 6, 2), (5, 9, 2)])),
    ]
}

/// Non-pure interval specs for the shedding replay.
pub fn mixed_specs() -> Vec<(&'static str, IntervalComplexSpec)> {
    vec![
        ("mixed6", spec(6, &[(1, 4, 1), (3, 6, 2)])),
        ("mixed8", spec(8, &[(1, 3, 1), (2, 6, 3), (5, 8, 2)])),
    ]
}
