//! Unit-interval and interval complexes, and their presentation as unions of
//! pure skeletons of simplices on integer intervals.

use std::fmt;

use crate::complex::{maximal_elements, Face, SimplicialComplex};
use crate::error::{Error, Result};

/// One part `(B, r)`: the `r`-th pure skeleton of the simplex on `B = [lo, hi]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalPart {
    pub lo: usize,
    pub hi: usize,
    pub rank: usize,
}

impl IntervalPart {
    pub fn new(lo: usize, hi: usize, rank: usize) -> Self {
        IntervalPart { lo, hi, rank }
    }

    pub fn face(&self) -> Face {
        Face::interval(self.lo, self.hi)
    }

    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    /// Whether the part has any facets, i.e. `|B| > r`.
    pub fn contributes(&self) -> bool {
        self.len() > self.rank
    }
}

impl fmt::Display for IntervalPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "([{},{}],{})", self.lo, self.hi, self.rank)
    }
}

/// A list of parts with strictly increasing left endpoints and no part nested
/// inside another.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalComplexSpec {
    n: usize,
    parts: Vec<IntervalPart>,
}

impl IntervalComplexSpec {
    pub fn new(n: usize, parts: Vec<IntervalPart>) -> Result<Self> {
        if n == 0 || n > crate::complex::MAX_VERTICES {
            return Err(Error::BadVertexCount(n));
        }
        if parts.is_empty() {
            return Err(Error::EmptySpec);
        }
        for p in &parts {
            if p.lo == 0 || p.lo > p.hi || p.hi > n {
                return Err(Error::BadInterval { lo: p.lo, hi: p.hi, n });
            }
            if p.rank == 0 {
                return Err(Error::ZeroRank);
            }
        }
        if parts.windows(2).any(|w| w[0].lo >= w[1].lo) {
            return Err(Error::UnorderedParts);
        }
        // sorted by lo, so nesting means some later part ends no later
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                if b.hi <= a.hi {
                    return Err(Error::NestedParts(b.lo, b.hi));
                }
            }
        }
        Ok(IntervalComplexSpec { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[IntervalPart] {
        &self.parts
    }

    /// Whether the intervals are pairwise disjoint and cover `[1, n]`.
    pub fn is_partition(&self) -> bool {
        self.parts.first().is_some_and(|p| p.lo == 1)
            && self.parts.last().is_some_and(|p| p.hi == self.n)
            && self.parts.windows(2).all(|w| w[0].hi + 1 == w[1].lo)
    }

    /// The complex `⋃_j Δ_j^{[r_j]}`. Parts with `|B_j| <= r_j` contribute nothing.
    pub fn build(&self) -> SimplicialComplex {
        let gens = self
            .parts
            .iter()
            .filter(|p| p.contributes())
            .flat_map(|p| p.face().k_subsets(p.rank + 1));
        SimplicialComplex::from_faces(self.n, gens)
    }

    /// The spec text form: `n <n>` followed by `interval lo hi rank` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for p in &self.parts {
            s.push_str(&format!("interval {} {} {}\n", p.lo, p.hi, p.rank));
        }
        s
    }
}

impl fmt::Display for IntervalComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        for p in &self.parts {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

/// Why a complex failed recognition.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RecognitionWitness {
    /// Two facets of different sizes.
    NotPure { smaller: Face, larger: Face },
    /// `missing` is a `|facet|`-subset of `[min facet, max facet]` that is not a facet.
    MissingSubset { facet: Face, missing: Face },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionVerdict {
    pub is_unit_interval: bool,
    pub witness: Option<RecognitionWitness>,
    /// Maximal clique intervals, lexicographically ordered, on success.
    pub clique_intervals: Vec<Face>,
}

fn span(f: Face) -> Face {
    match (f.min(), f.max()) {
        (Some(lo), Some(hi)) => Face::interval(lo, hi),
        _ => Face::EMPTY,
    }
}

/// First facet whose spanned interval is not a clique of facets of its size.
fn interval_violation(cx: &SimplicialComplex) -> Option<RecognitionWitness> {
    for &f in cx.facets() {
        let mut subs: Vec<Face> = span(f).k_subsets(f.len()).collect();
        crate::complex::sort_lex(&mut subs);
        if let Some(&missing) = subs.iter().find(|s| !cx.is_facet(**s)) {
            return Some(RecognitionWitness::MissingSubset { facet: f, missing });
        }
    }
    None
}

/// Maximal facet spans, plus singletons for vertices outside every facet when
/// facets have at least two vertices.
fn clique_intervals(cx: &SimplicialComplex) -> Vec<Face> {
    let mut out: Vec<Face> = cx.facets().iter().map(|f| span(*f)).filter(|s| !s.is_empty()).collect();
    if cx.facets().iter().all(|f| f.len() >= 2) {
        let support = cx.vertex_support();
        out.extend((1..=cx.n()).filter(|v| !support.contains(*v)).map(|v| Face::from_vertices([v])));
    }
    maximal_elements(out)
}

/// Pure, and every facet `F` has all `|F|`-subsets of `[min F, max F]` as facets.
pub fn is_unit_interval(cx: &SimplicialComplex) -> RecognitionVerdict {
    let witness = if !cx.is_pure() {
        let smaller = *cx.facets().iter().min_by_key(|f| f.len()).unwrap();
        let larger = *cx.facets().iter().max_by_key(|f| f.len()).unwrap();
        Some(RecognitionWitness::NotPure { smaller, larger })
    } else {
        interval_violation(cx)
    };
    match witness {
        Some(w) => RecognitionVerdict { is_unit_interval: false, witness: Some(w), clique_intervals: Vec::new() },
        None => RecognitionVerdict { is_unit_interval: true, witness: None, clique_intervals: clique_intervals(cx) },
    }
}

/// Whether some spec builds `cx`. The void complex counts (a part with
/// `|B| <= r` builds it); a facet with fewer than two vertices never does.
pub fn is_interval_complex(cx: &SimplicialComplex) -> bool {
    cx.is_void() || interval_decomposition(cx).is_some()
}

/// Some spec whose complex is `cx`, found by covering the facets with
/// pairwise non-nested intervals. Each interval `B` is taken at the largest
/// rank whose skeleton still lies in `cx`, which only ever helps the cover.
pub fn interval_decomposition(cx: &SimplicialComplex) -> Option<IntervalComplexSpec> {
    let order: Vec<usize> = (1..=cx.n()).collect();
    let parts = decompose_in_order(cx, &order)?;
    let parts = parts.into_iter().map(|(lo, hi, r)| IntervalPart::new(lo + 1, hi + 1, r)).collect();
    IntervalComplexSpec::new(cx.n(), parts).ok()
}

/// As [`interval_decomposition`] with intervals taken as runs of `order`, the
/// vertices of `cx` listed in the order to use. Parts are position ranges
/// `(lo, hi, rank)` into `order`, sorted by `lo`.
pub(crate) fn decompose_in_order(cx: &SimplicialComplex, order: &[usize]) -> Option<Vec<(usize, usize, usize)>> {
    let ground = Face::from_vertices(order.iter().copied());
    if cx.is_void() || cx.facets().iter().any(|f| f.len() < 2 || !f.is_subset(ground)) {
        return None;
    }
    let mut candidates = Vec::new();
    for lo in 0..order.len() {
        for hi in lo + 1..order.len() {
            let b = Face::from_vertices(order[lo..=hi].iter().copied());
            let best = (1..b.len()).rev().find(|&r| b.k_subsets(r + 1).all(|s| cx.contains(s)));
            if let Some(r) = best {
                candidates.push(Candidate { lo, hi, face: b, rank: r });
            }
        }
    }
    let mut chosen = Vec::new();
    if !cover(cx.facets(), &candidates, &mut chosen) {
        return None;
    }
    let mut parts: Vec<(usize, usize, usize)> = chosen.iter().map(|c| (c.lo, c.hi, c.rank)).collect();
    parts.sort_unstable();
    Some(parts)
}

#[derive(Clone, Copy)]
struct Candidate {
    lo: usize,
    hi: usize,
    face: Face,
    rank: usize,
}

impl Candidate {
    fn covers(&self, f: Face) -> bool {
        f.is_subset(self.face) && f.len() <= self.rank + 1
    }
}

fn cover(facets: &[Face], candidates: &[Candidate], chosen: &mut Vec<Candidate>) -> bool {
    let Some(&f) = facets.iter().find(|&&f| !chosen.iter().any(|p| p.covers(f))) else {
        return true;
    };
    for c in candidates.iter().filter(|c| c.covers(f)) {
        // runs of one order are nested iff their position ranges are
        if chosen.iter().any(|p| (p.lo <= c.lo && c.hi <= p.hi) || (c.lo <= p.lo && p.hi <= c.hi)) {
            continue;
        }
        chosen.push(*c);
        if cover(facets, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Recovers the decomposition by maximal clique intervals. The result is the
/// canonical presentation: one part per maximal facet span.
pub fn spec_from_complex(cx: &SimplicialComplex) -> Result<IntervalComplexSpec> {
    if let Some(RecognitionWitness::MissingSubset { facet, missing }) = interval_violation(cx) {
        return Err(Error::NotIntervalComplex { facet, missing });
    }
    if cx.is_void() || cx.facets().iter().any(|f| f.is_empty()) {
        return Err(Error::Degenerate);
    }
    let spans = maximal_elements(cx.facets().iter().map(|f| span(*f)));
    let mut parts = Vec::with_capacity(spans.len());
    for b in spans {
        let mut sizes = cx.facets().iter().filter(|f| f.is_subset(b)).map(|f| f.len());
        let size = sizes.next().expect("span of a facet holds that facet");
        if sizes.any(|s| s != size) {
            return Err(Error::MixedRanks(b));
        }
        parts.push(IntervalPart::new(b.min().unwrap(), b.max().unwrap(), size - 1));
    }
    IntervalComplexSpec::new(cx.n(), parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tet4() -> SimplicialComplex {
        IntervalComplexSpec::new(4, vec![IntervalPart::new(1, 4, 2)]).unwrap().build()
    }

    #[test]
    fn recognition_examples() {
        let v = is_unit_interval(&tet4());
        assert!(v.is_unit_interval);
        assert_eq!(v.clique_intervals, vec![Face::interval(1, 4)]);
        assert_eq!(tet4().facet_count(), 4);

        let d = SimplicialComplex::new(3, &[vec![1, 3]]).unwrap();
        let v = is_unit_interval(&d);
        assert!(!v.is_unit_interval);
        assert_eq!(
            v.witness,
            Some(RecognitionWitness::MissingSubset {
                facet: Face::from_vertices([1, 3]),
                missing: Face::from_vertices([1, 2])
            })
        );

        let twin = IntervalComplexSpec::new(6, vec![IntervalPart::new(1, 3, 2), IntervalPart::new(4, 6, 2)])
            .unwrap()
            .build();
        assert_eq!(twin.facet_count(), 2);
        let v = is_unit_interval(&twin);
        assert!(v.is_unit_interval);
        assert_eq!(v.clique_intervals, vec![Face::interval(1, 3), Face::interval(4, 6)]);

        let mixed = SimplicialComplex::new(4, &[vec![1, 2], vec![2, 3, 4]]).unwrap();
        assert!(matches!(is_unit_interval(&mixed).witness, Some(RecognitionWitness::NotPure { .. })));
        assert!(is_interval_complex(&mixed));
    }

    #[test]
    fn build_examples() {
        let spec = IntervalComplexSpec::new(3, vec![IntervalPart::new(1, 3, 5)]).unwrap();
        let d = spec.build();
        assert!(d.is_void());
        assert_eq!(d.independence_complex().facets(), &[Face::full(3)]);
        assert_eq!(IntervalComplexSpec::new(3, vec![]), Err(Error::EmptySpec));
    }

    #[test]
    fn spec_validation() {
        use IntervalPart as P;
        assert_eq!(IntervalComplexSpec::new(4, vec![P::new(1, 5, 1)]), Err(Error::BadInterval { lo: 1, hi: 5, n: 4 }));
        assert_eq!(IntervalComplexSpec::new(4, vec![P::new(2, 3, 1), P::new(1, 4, 1)]), Err(Error::UnorderedParts));
        assert_eq!(IntervalComplexSpec::new(4, vec![P::new(1, 4, 1), P::new(2, 3, 1)]), Err(Error::NestedParts(2, 3)));
        assert_eq!(IntervalComplexSpec::new(4, vec![P::new(1, 4, 0)]), Err(Error::ZeroRank));
        assert!(IntervalComplexSpec::new(5, vec![P::new(1, 3, 2), P::new(3, 5, 2)]).is_ok());
    }

    #[test]
    fn spec_recovery() {
        let spec = spec_from_complex(&tet4()).unwrap();
        assert_eq!(spec.parts(), &[IntervalPart::new(1, 4, 2)]);

        let path = SimplicialComplex::new(3, &[vec![1, 2], vec![2, 3]]).unwrap();
        let spec = spec_from_complex(&path).unwrap();
        assert_eq!(spec.parts(), &[IntervalPart::new(1, 2, 1), IntervalPart::new(2, 3, 1)]);

        let bad = SimplicialComplex::new(3, &[vec![1, 3]]).unwrap();
        assert_eq!(
            spec_from_complex(&bad),
            Err(Error::NotIntervalComplex { facet: Face::from_vertices([1, 3]), missing: Face::from_vertices([1, 2]) })
        );
    }

    #[test]
    fn partition_detection() {
        use IntervalPart as P;
        assert!(IntervalComplexSpec::new(6, vec![P::new(1, 3, 2), P::new(4, 6, 2)]).unwrap().is_partition());
        assert!(!IntervalComplexSpec::new(5, vec![P::new(1, 3, 2), P::new(3, 5, 2)]).unwrap().is_partition());
        assert!(!IntervalComplexSpec::new(6, vec![P::new(1, 3, 2)]).unwrap().is_partition());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Random unit-interval complexes: uniform rank, overlapping intervals.
        pub(super) fn unit_interval_spec() -> impl Strategy<Value = IntervalComplexSpec> {
            (2usize..=8, 1usize..=3, prop::collection::vec((0usize..8, 0usize..8), 1..=4)).prop_filter_map(
                "needs a valid non-nested spec",
                |(n, r, raw)| {
                    let mut parts: Vec<IntervalPart> = raw
                        .into_iter()
                        .map(|(a, len)| {
                            let lo = 1 + a % n;
                            let hi = (lo + r + len % 3).min(n);
                            IntervalPart::new(lo, hi, r)
                        })
                        .filter(|p| p.contributes())
                        .collect();
                    parts.sort_by_key(|p| (p.lo, p.hi));
                    parts.dedup_by_key(|p| p.lo);
                    let mut kept: Vec<IntervalPart> = Vec::new();
                    for p in parts {
                        if kept.last().is_none_or(|q| p.hi > q.hi) {
                            kept.push(p);
                        }
                    }
                    IntervalComplexSpec::new(n, kept).ok()
                },
            )
        }

        proptest! {
            #[test]
            fn round_trip(spec in unit_interval_spec()) {
                let d = spec.build();
                prop_assert!(is_unit_interval(&d).is_unit_interval);
                let back = spec_from_complex(&d).unwrap();
                prop_assert_eq!(back.build(), d.clone());
                let ranks: Vec<usize> = back.parts().iter().map(|p| p.rank).collect();
                prop_assert!(ranks.windows(2).all(|w| w[0] == w[1]));
            }

            #[test]
            fn clique_intervals_match_maximal_cliques(spec in unit_interval_spec()) {
                let d = spec.build();
                let v = is_unit_interval(&d);
                prop_assert!(v.is_unit_interval);
                let mut cliques = d.maximal_cliques().unwrap();
                crate::complex::sort_lex(&mut cliques);
                prop_assert_eq!(&v.clique_intervals, &cliques);
                for c in cliques {
                    prop_assert_eq!(span(c), c);
                }
            }
        }
    }
}
