//! The sorting operator on pairs of monomials and sortability of complexes.

use crate::complex::{Face, SimplicialComplex};

/// A monomial `x_1^{e_1} ... x_n^{e_n}` given by its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The squarefree monomial `x_F`.
    pub fn of_face(n: usize, face: Face) -> Self {
        let mut e = vec![0; n];
        for v in face.vertices() {
            e[v - 1] = 1;
        }
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Support as a face, when squarefree.
    pub fn as_face(&self) -> Option<Face> {
        self.is_squarefree()
            .then(|| Face::from_vertices(self.0.iter().enumerate().filter(|(_, &e)| e == 1).map(|(i, _)| i + 1)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len(), "monomials over different rings");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Output of [`sort_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedPair {
    pub first: Monomial,
    pub second: Monomial,
    pub was_sorted: bool,
}

/// Writes `uv = x_{i_1} ... x_{i_r}` with `i_1 <= ... <= i_r` and deals the odd
/// positions to the first factor, the even positions to the second.
pub fn sort_pair(u: &Monomial, v: &Monomial) -> SortedPair {
    let prod = u.mul(v);
    let n = prod.0.len();
    let mut first = vec![0u32; n];
    let mut second = vec![0u32; n];
    let mut pos = 0u64;
    for (i, &e) in prod.0.iter().enumerate() {
        // positions pos+1 ..= pos+e (1-based); odd ones go to `first`
        let odd = (e as u64 + (pos % 2 == 0) as u64) / 2;
        first[i] = odd as u32;
        second[i] = e - odd as u32;
        pos += e as u64;
    }
    let first = Monomial(first);
    let second = Monomial(second);
    let was_sorted = &first == u && &second == v;
    SortedPair { first, second, was_sorted }
}

/// `sort(F, G)` on squarefree monomials, via bit tricks. Vertices in both
/// faces appear twice in the product and so go to each side once.
pub fn sort_faces(f: Face, g: Face) -> (Face, Face) {
    let both = f.intersection(g);
    let once = f.union(g).difference(both);
    let mut first = both.bits();
    let mut second = both.bits();
    // walk the singly-occurring vertices in order; parity advances by one
    // for each, and doubled vertices never change parity
    let mut odd_next = true;
    let mut rest = once.bits();
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        if odd_next {
            first |= bit;
        } else {
            second |= bit;
        }
        odd_next = !odd_next;
        rest &= rest - 1;
    }
    (Face::from_bits(first), Face::from_bits(second))
}

pub fn is_sorted_pair(f: Face, g: Face) -> bool {
    sort_faces(f, g) == (f, g)
}

/// Result of [`is_sortable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortabilityVerdict {
    pub sortable: bool,
    /// First failing ordered pair `(F, G)` in lexicographic order.
    pub witness: Option<(Face, Face)>,
}

/// Checks `sort(F, G) ∈ Γ × Γ` for every ordered pair of faces.
pub fn is_sortable(cx: &SimplicialComplex) -> SortabilityVerdict {
    let faces = cx.faces();
    let set: std::collections::HashSet<Face> = faces.iter().copied().collect();
    first_unsorted_escape(&faces, |f| set.contains(&f))
        .map(|w| SortabilityVerdict { sortable: false, witness: Some(w) })
        .unwrap_or(SortabilityVerdict { sortable: true, witness: None })
}

/// First ordered pair of `faces` (in the given order) whose sort leaves the
/// set described by `member`.
pub(crate) fn first_unsorted_escape(faces: &[Face], member: impl Fn(Face) -> bool) -> Option<(Face, Face)> {
    for &f in faces {
        for &g in faces {
            let (a, b) = sort_faces(f, g);
            if !member(a) || !member(b) {
                return Some((f, g));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, vs: &[usize]) -> Monomial {
        let mut e = vec![0; n];
        for &v in vs {
            e[v - 1] += 1;
        }
        Monomial(e)
    }

    #[test]
    fn sort_pair_examples() {
        let r = sort_pair(&mono(3, &[1, 3]), &mono(3, &[1, 3]));
        assert_eq!((r.first.clone(), r.second.clone()), (mono(3, &[1, 3]), mono(3, &[1, 3])));
        assert!(r.was_sorted);

        let r = sort_pair(&mono(4, &[3, 4]), &mono(4, &[1, 2]));
        assert_eq!(r.first, mono(4, &[1, 3]));
        assert_eq!(r.second, mono(4, &[2, 4]));
        assert!(!r.was_sorted);

        let r = sort_pair(&mono(3, &[3]), &mono(3, &[1, 2]));
        assert_eq!(r.first, mono(3, &[1, 3]));
        assert_eq!(r.second, mono(3, &[2]));
        assert!(!r.was_sorted);
    }

    #[test]
    fn face_sort_matches_monomial_sort() {
        let n = 6;
        for f in Face::full(n).subsets() {
            for g in Face::full(n).subsets() {
                let r = sort_pair(&Monomial::of_face(n, f), &Monomial::of_face(n, g));
                let (a, b) = sort_faces(f, g);
                assert_eq!(r.first.as_face(), Some(a));
                assert_eq!(r.second.as_face(), Some(b));
            }
        }
    }

    #[test]
    fn sortability_examples() {
        let simplex = SimplicialComplex::simplex(4, Face::full(4));
        assert!(is_sortable(&simplex).sortable);

        let ind = SimplicialComplex::new(3, &[vec![1, 3]]).unwrap().independence_complex();
        let v = is_sortable(&ind);
        assert!(!v.sortable);
        let (f, g) = v.witness.unwrap();
        assert_eq!((f, g), (Face::from_vertices([1]), Face::from_vertices([2, 3])));
        assert_eq!(sort_faces(f, g), (Face::from_vertices([1, 3]), Face::from_vertices([2])));
        // the pair ({3},{1,2}) fails the same way
        let (a, _) = sort_faces(Face::from_vertices([3]), Face::from_vertices([1, 2]));
        assert!(!ind.contains(a));

        let tet4: Vec<Vec<usize>> = vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]];
        let ind = SimplicialComplex::new(4, &tet4).unwrap().independence_complex();
        assert!(is_sortable(&ind).sortable);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn monomial_pair() -> impl Strategy<Value = (Monomial, Monomial)> {
            (1usize..=8).prop_flat_map(|n| {
                (
                    prop::collection::vec(0u32..=6, n).prop_map(Monomial),
                    prop::collection::vec(0u32..=6, n).prop_map(Monomial),
                )
            })
        }

        proptest! {
            #[test]
            fn product_preserved((u, v) in monomial_pair()) {
                let r = sort_pair(&u, &v);
                prop_assert_eq!(r.first.mul(&r.second), u.mul(&v));
            }

            #[test]
            fn idempotent((u, v) in monomial_pair()) {
                let r = sort_pair(&u, &v);
                let again = sort_pair(&r.first, &r.second);
                prop_assert!(again.was_sorted);
                prop_assert_eq!(again.first, r.first);
                prop_assert_eq!(again.second, r.second);
            }

            #[test]
            fn balanced_degrees((u, v) in monomial_pair()) {
                let r = sort_pair(&u, &v);
                let (a, b) = (r.first.degree(), r.second.degree());
                prop_assert!(a >= b && a - b <= 1);
            }
        }
    }
}
