//! Bounded-degree checks standing in for quadratic Gröbner bases: sorting
//! binomials, standard-monomial counts, the ℓ-exchange property, and fiber
//! connectivity of the Rees algebra under quadratic moves.

use std::collections::{HashMap, HashSet};

use crate::complex::{Face, SimplicialComplex};
use crate::cone::LatticePoint;
use crate::error::{Error, Result};
use crate::sorting::{first_unsorted_escape, is_sorted_pair, sort_faces};

/// `y_F y_G - y_{F'} y_{G'}` with `(F', G') = sort(F, G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SortingBinomial {
    pub left: (Face, Face),
    pub right: (Face, Face),
}

fn check_sortable(faces: &[Face]) -> Result<HashSet<Face>> {
    let set: HashSet<Face> = faces.iter().copied().collect();
    match first_unsorted_escape(faces, |f| set.contains(&f)) {
        Some((f, g)) => Err(Error::NotSortable(f, g)),
        None => Ok(set),
    }
}

/// One binomial per unordered pair whose sort is a different pair.
pub fn sorting_binomials(faces: &[Face]) -> Result<Vec<SortingBinomial>> {
    check_sortable(faces)?;
    let mut out = Vec::new();
    for (i, &f) in faces.iter().enumerate() {
        for &g in &faces[i + 1..] {
            let (a, b) = sort_faces(f, g);
            if (a, b) != (f, g) && (a, b) != (g, f) {
                out.push(SortingBinomial { left: (f, g), right: (a, b) });
            }
        }
    }
    Ok(out)
}

/// Degree-`r` comparison of sorted multisets with semigroup elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardCount {
    pub r: usize,
    pub sorted_count: usize,
    pub semigroup_count: usize,
}

impl StandardCount {
    pub fn passes(&self) -> bool {
        self.sorted_count == self.semigroup_count
    }
}

pub const MAX_STANDARD_DEGREE: usize = 4;

/// Sorted order of a standard multiset: larger faces first, then lexicographic.
fn canonical(faces: &mut [Face]) {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then(a.lex_cmp(*b)));
}

/// Counts size-`r` multisets of `faces` that are pairwise sorted in canonical
/// order, and the distinct products `Π x_F t` of all size-`r` multisets.
pub fn standard_count_check(faces: &[Face], r: usize) -> Result<StandardCount> {
    if r > MAX_STANDARD_DEGREE {
        return Err(Error::TooLarge { what: "multiset size", bound: MAX_STANDARD_DEGREE });
    }
    check_sortable(faces)?;
    let mut order = faces.to_vec();
    canonical(&mut order);
    order.dedup();
    let mut sorted_count = 0;
    let mut stack = Vec::with_capacity(r);
    count_sorted(&order, 0, r, &mut stack, &mut sorted_count);

    // distinct products, one degree at a time
    let mut products: HashSet<Vec<u8>> = HashSet::from([vec![0u8; 64]]);
    for _ in 0..r {
        let mut next = HashSet::with_capacity(products.len() * order.len());
        for p in &products {
            for f in &order {
                let mut q = p.clone();
                for v in f.vertices() {
                    q[v - 1] += 1;
                }
                next.insert(q);
            }
        }
        products = next;
    }
    Ok(StandardCount { r, sorted_count, semigroup_count: products.len() })
}

fn count_sorted(order: &[Face], start: usize, left: usize, stack: &mut Vec<Face>, count: &mut usize) {
    if left == 0 {
        *count += 1;
        return;
    }
    for (i, &f) in order.iter().enumerate().skip(start) {
        if stack.iter().all(|&g| is_sorted_pair(g, f)) {
            stack.push(f);
            count_sorted(order, i, left - 1, stack, count);
            stack.pop();
        }
    }
}

/// A failing instance of the ℓ-exchange condition at index `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LExchangeWitness {
    pub u: Vec<Face>,
    pub v: Vec<Face>,
    pub q: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LExchangeVerdict {
    pub holds: bool,
    pub witness: Option<LExchangeWitness>,
    /// Standard `N`-tuples examined.
    pub tuples: usize,
}

pub const MAX_EXCHANGE_TUPLE: usize = 3;

/// ℓ-exchange for `I(Γ^{[t]})`, `Γ = Ind(Δ)`.
pub fn l_exchange_check(delta: &SimplicialComplex, t: usize, big_n: usize) -> Result<LExchangeVerdict> {
    let gens = delta.independence_complex().faces_of_size(t + 1);
    if gens.is_empty() {
        return Err(Error::Degenerate);
    }
    l_exchange_check_generators(delta.n(), &gens, big_n)
}

/// ℓ-exchange for the squarefree equigenerated ideal with generators `gens`.
///
/// For every pair of pairwise-sorted `N`-tuples `u, v` whose products agree
/// in `x_1..x_{q-1}` and have `deg_{x_q} u < deg_{x_q} v`, some `u_k` and
/// `j > q` with `j ∈ u_k` must have `x_q u_k / x_j` among the generators.
pub fn l_exchange_check_generators(n: usize, gens: &[Face], big_n: usize) -> Result<LExchangeVerdict> {
    if big_n > MAX_EXCHANGE_TUPLE || big_n == 0 {
        return Err(Error::TooLarge { what: "exchange tuple length", bound: MAX_EXCHANGE_TUPLE });
    }
    if gens.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::Invariant("generators of different degrees".into()));
    }
    let set = check_sortable(gens)?;
    let mut order = gens.to_vec();
    canonical(&mut order);
    order.dedup();

    let mut tuples: Vec<Vec<Face>> = Vec::new();
    collect_sorted(&order, 0, big_n, &mut Vec::new(), &mut tuples);
    let products: Vec<Vec<u8>> = tuples.iter().map(|t| exponent(n, t)).collect();
    let mut distinct: Vec<&Vec<u8>> = products.iter().collect::<HashSet<_>>().into_iter().collect();
    distinct.sort();

    for (u, pu) in tuples.iter().zip(&products) {
        // q values for which an exchange exists in u
        let allowed: Vec<bool> = (1..=n).map(|q| exchange_exists(u, q, n, &set)).collect();
        for pv in &distinct {
            let Some(q) = (0..n).find(|&i| pu[i] != pv[i]) else { continue };
            if pu[q] < pv[q] && !allowed[q] {
                let v = tuples[products.iter().position(|p| &p == pv).expect("product of a tuple")].clone();
                return Ok(LExchangeVerdict {
                    holds: false,
                    witness: Some(LExchangeWitness { u: u.clone(), v, q: q + 1 }),
                    tuples: tuples.len(),
                });
            }
        }
    }
    Ok(LExchangeVerdict { holds: true, witness: None, tuples: tuples.len() })
}

fn exchange_exists(u: &[Face], q: usize, n: usize, set: &HashSet<Face>) -> bool {
    u.iter().any(|&uk| {
        !uk.contains(q) && (q + 1..=n).any(|j| uk.contains(j) && set.contains(&uk.without(j).with(q)))
    })
}

fn exponent(n: usize, faces: &[Face]) -> Vec<u8> {
    let mut e = vec![0u8; n];
    for f in faces {
        for v in f.vertices() {
            e[v - 1] += 1;
        }
    }
    e
}

fn collect_sorted(order: &[Face], start: usize, left: usize, stack: &mut Vec<Face>, out: &mut Vec<Vec<Face>>) {
    if left == 0 {
        out.push(stack.clone());
        return;
    }
    for (i, &f) in order.iter().enumerate().skip(start) {
        if stack.iter().all(|&g| is_sorted_pair(g, f)) {
            stack.push(f);
            collect_sorted(order, i, left - 1, stack, out);
            stack.pop();
        }
    }
}

/// One fiber of the Rees presentation `S[y_u] → R(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberVerdict {
    /// Image exponent in `x`, followed by the `y`-degree.
    pub multidegree: LatticePoint,
    pub fiber_size: usize,
    pub connected: bool,
}

pub const MAX_REES_DEGREE: usize = 5;

/// A monomial `x^b Π y_{u_i}`: `b`, then the generator indices in increasing order.
type ReesMonomial = (Vec<u8>, Vec<usize>);

/// Fibers of total degree `s + r ≤ degree_bound` for `I(Γ^{[t]})`, each tested
/// for connectivity under sorting moves `y_u y_v → y_{u'} y_{v'}` and exchange
/// moves `x_i y_u → x_j y_v` with `x_i u = x_j v`. Fibers follow the
/// lexicographic order of their multidegrees.
pub fn rees_fiber_connectivity(delta: &SimplicialComplex, t: usize, degree_bound: usize) -> Result<Vec<FiberVerdict>> {
    if degree_bound > MAX_REES_DEGREE {
        return Err(Error::TooLarge { what: "Rees degree bound", bound: MAX_REES_DEGREE });
    }
    let n = delta.n();
    let gens = delta.independence_complex().faces_of_size(t + 1);
    if gens.is_empty() {
        return Err(Error::Degenerate);
    }
    rees_fibers_of(n, &gens, degree_bound)
}

pub fn rees_fibers_of(n: usize, gens: &[Face], degree_bound: usize) -> Result<Vec<FiberVerdict>> {
    let index: HashMap<Face, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut fibers: HashMap<Vec<u8>, Vec<ReesMonomial>> = HashMap::new();
    for r in 0..=degree_bound {
        let mut ys = Vec::new();
        let mut y_lists = Vec::new();
        multisets(gens.len(), r, 0, &mut ys, &mut y_lists);
        for s in 0..=degree_bound - r {
            let mut xs = Vec::new();
            let mut x_lists = Vec::new();
            multisets(n, s, 0, &mut xs, &mut x_lists);
            for x in &x_lists {
                let mut b = vec![0u8; n];
                for &i in x {
                    b[i] += 1;
                }
                for y in &y_lists {
                    let mut image = b.clone();
                    for &g in y {
                        for v in gens[g].vertices() {
                            image[v - 1] += 1;
                        }
                    }
                    image.push(r as u8);
                    fibers.entry(image).or_default().push((b.clone(), y.clone()));
                }
            }
        }
    }
    let mut keys: Vec<Vec<u8>> = fibers.keys().cloned().collect();
    keys.sort();
    let mut out = Vec::with_capacity(keys.len());
    for key in keys {
        let members = &fibers[&key];
        let connected = fiber_connected(members, gens, &index);
        out.push(FiberVerdict {
            multidegree: LatticePoint(key.iter().map(|&e| e as i64).collect()),
            fiber_size: members.len(),
            connected,
        });
    }
    Ok(out)
}

fn multisets(m: usize, size: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if size == 0 {
        out.push(stack.clone());
        return;
    }
    for i in start..m {
        stack.push(i);
        multisets(m, size - 1, i, stack, out);
        stack.pop();
    }
}

/// Union-find over the fiber; each move joins a monomial with its image.
fn fiber_connected(members: &[ReesMonomial], gens: &[Face], index: &HashMap<Face, usize>) -> bool {
    if members.len() <= 1 {
        return true;
    }
    let pos: HashMap<&ReesMonomial, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut components = members.len();
    for (idx, (b, y)) in members.iter().enumerate() {
        let mut next: Vec<ReesMonomial> = Vec::new();
        // sorting moves
        for i in 0..y.len() {
            for j in i + 1..y.len() {
                let (a, c) = sort_faces(gens[y[i]], gens[y[j]]);
                if let (Some(&ia), Some(&ic)) = (index.get(&a), index.get(&c)) {
                    let mut ny = y.clone();
                    ny[i] = ia;
                    ny[j] = ic;
                    ny.sort_unstable();
                    next.push((b.clone(), ny));
                }
            }
        }
        // exchange moves: x_i y_u -> x_j y_v, v = u + i - j
        for i in (0..b.len()).filter(|&i| b[i] > 0) {
            for k in 0..y.len() {
                let u = gens[y[k]];
                if u.contains(i + 1) {
                    continue;
                }
                for j in u.vertices() {
                    if let Some(&iv) = index.get(&u.without(j).with(i + 1)) {
                        let mut nb = b.clone();
                        nb[i] -= 1;
                        nb[j - 1] += 1;
                        let mut ny = y.clone();
                        ny[k] = iv;
                        ny.sort_unstable();
                        next.push((nb, ny));
                    }
                }
            }
        }
        for m in next {
            let other = *pos.get(&m).expect("moves preserve the image");
            let (ra, rb) = (root(&mut parent, idx), root(&mut parent, other));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
    }
    components == 1
}
