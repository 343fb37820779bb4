//! Simplicial complexes on `[n]` stored as facet antichains of bitset faces.
//!
//! Vertices are 1-based at every public boundary and 0-based bit positions
//! inside [`Face`]. The void complex (no faces at all) and the complex `{∅}`
//! are distinct values: the former has no facets, the latter has the single
//! facet `∅`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A finite subset of `[n]`, `n <= 64`, stored as a bitmask.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// Builds a face from 1-based vertex labels. Labels must lie in `1..=64`.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Face {
        let mut bits = 0u64;
        for v in vertices {
            assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} outside 1..=64");
            bits |= 1 << (v - 1);
        }
        Face(bits)
    }

    pub const fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The integer interval `[lo, hi]` (1-based, inclusive).
    pub fn interval(lo: usize, hi: usize) -> Face {
        Face::from_vertices(lo..=hi)
    }

    /// All of `[n]`.
    pub fn full(n: usize) -> Face {
        if n == 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `dim F = |F| - 1`.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> Face {
        self.union(Face::from_vertices([v]))
    }

    pub fn without(self, v: usize) -> Face {
        self.difference(Face::from_vertices([v]))
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Increasing 1-based vertex labels.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// Every subset of `self`, including `∅` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = Some(0u64);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(Face(cur))
        })
    }

    /// Every `k`-subset of `self`, in increasing bitmask order.
    pub fn k_subsets(self, k: usize) -> impl Iterator<Item = Face> {
        self.subsets().filter(move |s| s.len() == k)
    }

    /// Lexicographic comparison of the increasing vertex sequences.
    pub fn lex_cmp(self, other: Face) -> std::cmp::Ordering {
        self.vertices().cmp(other.vertices())
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Sorts faces lexicographically by vertex sequence.
pub fn sort_lex(faces: &mut [Face]) {
    faces.sort_by(|a, b| a.lex_cmp(*b));
}

/// Keeps the inclusion-maximal members, sorted lexicographically.
pub fn maximal_elements<I: IntoIterator<Item = Face>>(faces: I) -> Vec<Face> {
    let mut uniq: Vec<Face> = faces.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    // larger sets first so a single pass suffices
    uniq.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut kept: Vec<Face> = Vec::with_capacity(uniq.len());
    for f in uniq {
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    sort_lex(&mut kept);
    kept
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

/// A simplicial complex on `[n]`, given by its facets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, {:?})", self.n, self.facets)
    }
}

impl SimplicialComplex {
    /// Builds the complex generated by `raw_facets`; non-maximal sets are absorbed.
    pub fn new(n: usize, raw_facets: &[Vec<usize>]) -> Result<Self, Error> {
        check_n(n)?;
        let mut faces = Vec::with_capacity(raw_facets.len());
        for raw in raw_facets {
            for &v in raw {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            faces.push(Face::from_vertices(raw.iter().copied()));
        }
        Ok(Self::from_faces(n, faces))
    }

    /// Builds from arbitrary generating faces. Faces must lie in `[n]`.
    pub fn from_faces<I: IntoIterator<Item = Face>>(n: usize, faces: I) -> Self {
        assert!((1..=MAX_VERTICES).contains(&n), "vertex count {n} outside 1..=64");
        let full = Face::full(n);
        let facets = maximal_elements(faces.into_iter().inspect(|f| {
            assert!(f.is_subset(full), "face {f} not contained in [{n}]");
        }));
        SimplicialComplex { n, facets }
    }

    /// The complex with no faces.
    pub fn void(n: usize) -> Self {
        Self::from_faces(n, [])
    }

    /// The complex `{∅}`.
    pub fn empty_face(n: usize) -> Self {
        Self::from_faces(n, [Face::EMPTY])
    }

    /// The full simplex on `face`.
    pub fn simplex(n: usize, face: Face) -> Self {
        Self::from_faces(n, [face])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Facets in lexicographic order.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.dim()).max()
    }

    /// Pure when all facets have one size. The void complex counts as pure.
    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Common facet size of a nonvoid pure complex.
    pub fn pure_facet_size(&self) -> Option<usize> {
        match self.facets.first() {
            Some(f) if self.is_pure() => Some(f.len()),
            _ => None,
        }
    }

    pub fn contains(&self, face: Face) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    pub fn is_facet(&self, face: Face) -> bool {
        self.facets.binary_search_by(|f| f.lex_cmp(face)).is_ok()
    }

    /// Vertices that appear in some face.
    pub fn vertex_support(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    /// All faces, lexicographically ordered (`∅` first when present).
    pub fn faces(&self) -> Vec<Face> {
        let mut all: BTreeSet<Face> = BTreeSet::new();
        for f in &self.facets {
            all.extend(f.subsets());
        }
        let mut v: Vec<Face> = all.into_iter().collect();
        sort_lex(&mut v);
        v
    }

    /// `Γ^{(i)}` when `pure` is false, `Γ^{[i]}` when `pure` is true.
    pub fn skeleton(&self, i: usize, pure: bool) -> SimplicialComplex {
        let size = i + 1;
        let mut gens = Vec::new();
        for &f in &self.facets {
            if f.len() >= size {
                gens.extend(f.k_subsets(size));
            } else if !pure {
                gens.push(f);
            }
        }
        SimplicialComplex::from_faces(self.n, gens)
    }

    /// Faces with exactly `size` vertices, lexicographically ordered.
    pub fn faces_of_size(&self, size: usize) -> Vec<Face> {
        let set: BTreeSet<Face> = self.facets.iter().flat_map(|f| f.k_subsets(size)).collect();
        let mut v: Vec<Face> = set.into_iter().collect();
        sort_lex(&mut v);
        v
    }

    /// `Ind(Δ)`: the sets containing no facet of `self`.
    pub fn independence_complex(&self) -> SimplicialComplex {
        let mut out = Vec::new();
        let mut chosen = Face::EMPTY;
        let mut excluded = Face::EMPTY;
        if !self.facets.iter().any(|f| f.is_empty()) {
            independent_sets(&self.facets, self.n, 1, &mut chosen, &mut excluded, &mut out);
        }
        SimplicialComplex::from_faces(self.n, out)
    }

    /// Inclusion-minimal subsets of `[n]` that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        if self.is_void() {
            return vec![Face::EMPTY];
        }
        let mut found = BTreeSet::new();
        for f in self.faces() {
            for v in 1..=self.n {
                if f.contains(v) {
                    continue;
                }
                let cand = f.with(v);
                if !self.contains(cand) && cand.vertices().all(|w| self.contains(cand.without(w))) {
                    found.insert(cand);
                }
            }
        }
        let mut v: Vec<Face> = found.into_iter().collect();
        sort_lex(&mut v);
        v
    }

    /// `Some(d)` when every minimal non-face has cardinality `d`.
    pub fn flag_degree(&self) -> Option<usize> {
        let mn = self.minimal_nonfaces();
        let d = mn.first()?.len();
        mn.iter().all(|f| f.len() == d).then_some(d)
    }

    /// Maximal cliques of a pure complex with facet size `d`: inclusion-maximal
    /// sets whose `d`-subsets are all facets, among sets of size at least `d`,
    /// together with singletons `{v}` for vertices lying in no facet (when `d > 1`).
    pub fn maximal_cliques(&self) -> Result<Vec<Face>, Error> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let Some(d) = self.pure_facet_size() else {
            return Ok(if self.is_void() {
                (1..=self.n).map(|v| Face::from_vertices([v])).collect()
            } else {
                Vec::new()
            });
        };
        let mut cliques = BTreeSet::new();
        for &f in &self.facets {
            grow_clique(self, d, f, &mut cliques);
        }
        let mut all: Vec<Face> = cliques.into_iter().collect();
        if d > 1 {
            let support = self.vertex_support();
            all.extend((1..=self.n).filter(|v| !support.contains(*v)).map(|v| Face::from_vertices([v])));
        }
        Ok(maximal_elements(all))
    }

    /// `(Del_Γ(v), Lk_Γ(v))`.
    pub fn deletion_link(&self, v: usize) -> (SimplicialComplex, SimplicialComplex) {
        let del = SimplicialComplex::from_faces(self.n, self.facets.iter().map(|f| f.without(v)));
        let link = SimplicialComplex::from_faces(
            self.n,
            self.facets.iter().filter(|f| f.contains(v)).map(|f| f.without(v)),
        );
        (del, link)
    }
}

fn check_n(n: usize) -> Result<(), Error> {
    if n == 0 || n > MAX_VERTICES {
        Err(Error::BadVertexCount(n))
    } else {
        Ok(())
    }
}

/// Backtracking enumeration of maximal independent sets. An excluded vertex
/// must keep at least one facet `H ∋ w` with `H \ {w}` avoiding every excluded
/// vertex, otherwise it could be added back at the end.
fn independent_sets(
    facets: &[Face],
    n: usize,
    v: usize,
    chosen: &mut Face,
    excluded: &mut Face,
    out: &mut Vec<Face>,
) {
    if v > n {
        let maximal = excluded.vertices().all(|w| {
            let with = chosen.with(w);
            facets.iter().any(|h| h.is_subset(with))
        });
        if maximal {
            out.push(*chosen);
        }
        return;
    }
    let with = chosen.with(v);
    if !facets.iter().any(|h| h.contains(v) && h.is_subset(with)) {
        *chosen = with;
        independent_sets(facets, n, v + 1, chosen, excluded, out);
        *chosen = chosen.without(v);
    }
    *excluded = excluded.with(v);
    let viable = excluded.vertices().all(|w| {
        facets.iter().any(|h| h.contains(w) && h.without(w).intersection(*excluded).is_empty())
    });
    if viable {
        independent_sets(facets, n, v + 1, chosen, excluded, out);
    }
    *excluded = excluded.without(v);
}

fn grow_clique(cx: &SimplicialComplex, d: usize, clique: Face, seen: &mut BTreeSet<Face>) {
    if !seen.insert(clique) {
        return;
    }
    for v in 1..=cx.n {
        if clique.contains(v) {
            continue;
        }
        if clique.k_subsets(d - 1).all(|s| cx.is_facet(s.with(v))) {
            grow_clique(cx, d, clique.with(v), seen);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let raw: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::new(n, &raw).unwrap()
    }

    fn faces(list: &[&[usize]]) -> Vec<Face> {
        let mut v: Vec<Face> = list.iter().map(|f| Face::from_vertices(f.iter().copied())).collect();
        sort_lex(&mut v);
        v
    }

    fn tet4() -> SimplicialComplex {
        cx(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
    }

    #[test]
    fn build_absorbs_subsets() {
        let k3 = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(k3.dim(), Some(1));
        assert!(k3.is_pure());
        assert_eq!(k3.facet_count(), 3);

        let c = cx(3, &[&[1, 2], &[1]]);
        assert_eq!(c.facets(), faces(&[&[1, 2]]).as_slice());

        let t = tet4();
        assert_eq!(t.dim(), Some(2));
        assert_eq!(t.facet_count(), 4);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            SimplicialComplex::new(3, &[vec![1, 5]]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 3 })
        );
        assert_eq!(SimplicialComplex::new(0, &[]), Err(Error::BadVertexCount(0)));
        assert!(SimplicialComplex::new(2, &[vec![0]]).is_err());
    }

    #[test]
    fn void_and_empty_face_differ() {
        let void = SimplicialComplex::void(3);
        let e = SimplicialComplex::empty_face(3);
        assert_ne!(void, e);
        assert_eq!(void.dim(), None);
        assert_eq!(e.dim(), Some(-1));
        assert!(!void.contains(Face::EMPTY));
        assert!(e.contains(Face::EMPTY));
    }

    #[test]
    fn skeletons() {
        let t = tet4();
        let one = t.skeleton(1, true);
        assert_eq!(one.facets(), Face::full(4).k_subsets(2).collect::<Vec<_>>().tap_sort().as_slice());

        let k3 = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(k3.skeleton(0, true).facets(), faces(&[&[1], &[2], &[3]]).as_slice());

        let g = cx(4, &[&[1, 2, 3], &[4]]);
        assert_eq!(g.skeleton(2, true).facets(), faces(&[&[1, 2, 3]]).as_slice());
        assert_eq!(g.skeleton(0, false).facet_count(), 4);
        assert_eq!(g.skeleton(1, false).facets(), faces(&[&[1, 2], &[1, 3], &[2, 3], &[4]]).as_slice());
        assert!(g.skeleton(5, true).is_void());
    }

    trait TapSort {
        fn tap_sort(self) -> Self;
    }
    impl TapSort for Vec<Face> {
        fn tap_sort(mut self) -> Self {
            sort_lex(&mut self);
            self
        }
    }

    #[test]
    fn independence_complexes() {
        let k3 = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(k3.independence_complex().facets(), faces(&[&[1], &[2], &[3]]).as_slice());

        let d = cx(3, &[&[1, 3]]);
        assert_eq!(d.independence_complex().facets(), faces(&[&[1, 2], &[2, 3]]).as_slice());

        let want = Face::full(4).k_subsets(2).collect::<Vec<_>>().tap_sort();
        assert_eq!(tet4().independence_complex().facets(), want.as_slice());

        // Δ = {∅} has no independent sets; vertex facets are excluded everywhere
        assert!(SimplicialComplex::empty_face(3).independence_complex().is_void());
        assert_eq!(
            SimplicialComplex::void(3).independence_complex().facets(),
            &[Face::full(3)]
        );
        let v = cx(3, &[&[2], &[1, 3]]);
        assert_eq!(v.independence_complex().facets(), faces(&[&[1], &[3]]).as_slice());
    }

    #[test]
    fn minimal_nonfaces_and_flag_degree() {
        let g = tet4().independence_complex();
        let want = Face::full(4).k_subsets(3).collect::<Vec<_>>().tap_sort();
        assert_eq!(g.minimal_nonfaces(), want);
        assert_eq!(g.flag_degree(), Some(3));

        let simplex = SimplicialComplex::simplex(4, Face::full(4));
        assert!(simplex.minimal_nonfaces().is_empty());
        assert_eq!(simplex.flag_degree(), None);

        let g = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]).independence_complex();
        assert_eq!(g.minimal_nonfaces(), faces(&[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(g.flag_degree(), Some(2));
    }

    #[test]
    fn cliques() {
        assert_eq!(tet4().maximal_cliques().unwrap(), vec![Face::interval(1, 4)]);
        let p = cx(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(p.maximal_cliques().unwrap(), faces(&[&[1, 2], &[2, 3]]));
        let mut raw: Vec<Face> = Face::interval(1, 3).k_subsets(3).collect();
        raw.extend(Face::interval(4, 6).k_subsets(3));
        let twin = SimplicialComplex::from_faces(6, raw);
        assert_eq!(twin.maximal_cliques().unwrap(), vec![Face::interval(1, 3), Face::interval(4, 6)]);
        let iso = cx(3, &[&[1, 2]]);
        assert_eq!(iso.maximal_cliques().unwrap(), faces(&[&[1, 2], &[3]]));
        assert_eq!(cx(3, &[&[1, 2], &[3]]).maximal_cliques(), Err(Error::NotPure));
    }

    #[test]
    fn deletion_and_link() {
        let g = cx(3, &[&[1, 2], &[1, 3], &[2, 3]]).independence_complex();
        let (del, lk) = g.deletion_link(1);
        assert_eq!(del.facets(), faces(&[&[2], &[3]]).as_slice());
        assert_eq!(lk, SimplicialComplex::empty_face(3));

        let s = SimplicialComplex::simplex(3, Face::full(3));
        let (del, lk) = s.deletion_link(2);
        assert_eq!(del.facets(), faces(&[&[1, 3]]).as_slice());
        assert_eq!(lk.facets(), faces(&[&[1, 3]]).as_slice());

        let g = tet4().independence_complex();
        let (del, lk) = g.deletion_link(4);
        assert_eq!(del.facets(), Face::interval(1, 3).k_subsets(2).collect::<Vec<_>>().tap_sort().as_slice());
        assert_eq!(lk.facets(), faces(&[&[1], &[2], &[3]]).as_slice());
    }

    #[test]
    fn face_basics() {
        let f = Face::from_vertices([3, 1, 5]);
        assert_eq!(f.to_vec(), vec![1, 3, 5]);
        assert_eq!(f.min(), Some(1));
        assert_eq!(f.max(), Some(5));
        assert_eq!(f.subsets().count(), 8);
        assert_eq!(f.k_subsets(2).count(), 3);
        assert_eq!(f.to_string(), "{1,3,5}");
        assert_eq!(Face::EMPTY.subsets().collect::<Vec<_>>(), vec![Face::EMPTY]);
        assert_eq!(Face::full(64).len(), 64);
    }
}
