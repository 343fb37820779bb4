//! The affine semigroup of `R_Γ = K[x_F t : F ∈ Γ]` and its cone.
//!
//! Facets of the cone `ℝ₊A` are found by double description on the dual cone
//! `{f : f·p ≥ 0 for every generator p}`: its extreme rays are exactly the
//! facet normals. Ray vectors are kept as big integers; adjacency of two rays
//! is decided by the rank of the generators on which both vanish.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{self, Echelon};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::interval::IntervalComplexSpec;

/// An integer vector in `Z^{n+1}`; the last coordinate is the `t`-degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    /// `p_F = Σ_{i∈F} e_i + e_{n+1}`.
    pub fn of_face(n: usize, face: Face) -> Self {
        let mut c = vec![0; n + 1];
        for v in face.vertices() {
            c[v - 1] = 1;
        }
        c[n] = 1;
        LatticePoint(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Last coordinate.
    pub fn degree(&self) -> i64 {
        *self.0.last().expect("lattice point has at least one coordinate")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ints(f, &self.0)
    }
}

fn write_ints(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// A primitive linear form `c_1 x_1 + ... + c_{n+1} x_{n+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportForm(pub Vec<i64>);

impl SupportForm {
    pub fn eval(&self, p: &LatticePoint) -> i64 {
        self.0.iter().zip(&p.0).map(|(c, x)| c * x).sum()
    }

    /// Coefficient of `x_{n+1}`.
    pub fn t_coeff(&self) -> i64 {
        *self.0.last().expect("form has at least one coefficient")
    }

    /// `Σ_{j≤n} c_j`.
    pub fn x_coeff_sum(&self) -> i64 {
        self.0[..self.0.len() - 1].iter().sum()
    }

    /// Human-readable `-x1-x2+2x5` rendering.
    pub fn pretty(&self) -> String {
        let mut s = String::new();
        for (i, &c) in self.0.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag == 1 { String::new() } else { mag.to_string() };
            s.push_str(&format!("{sign}{coef}x{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Debug for SupportForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for SupportForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ints(f, &self.0)
    }
}

/// One point per face of `Γ`, in the lexicographic face order (`∅` first, giving `t`).
pub fn lattice_points(cx: &SimplicialComplex) -> Vec<LatticePoint> {
    cx.faces().into_iter().map(|f| LatticePoint::of_face(cx.n(), f)).collect()
}

/// Generators together with the complete facet description of their cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    pub generators: Vec<LatticePoint>,
    pub facet_forms: Vec<SupportForm>,
    pub ambient_dim: usize,
}

impl ConeDescription {
    pub fn new(generators: Vec<LatticePoint>) -> Result<Self> {
        let facet_forms = cone_facets(&generators)?;
        let ambient_dim = generators[0].dim();
        Ok(ConeDescription { generators, facet_forms, ambient_dim })
    }

    /// The cone `ℝ₊A_Γ`.
    pub fn of_complex(cx: &SimplicialComplex) -> Result<Self> {
        Self::new(lattice_points(cx))
    }

    /// Every facet form is `≥ 0` at `p`.
    pub fn contains(&self, p: &LatticePoint) -> Result<bool> {
        self.check_dim(p)?;
        Ok(self.facet_forms.iter().all(|f| f.eval(p) >= 0))
    }

    /// Every facet form is `> 0` at `p`.
    pub fn contains_strictly(&self, p: &LatticePoint) -> Result<bool> {
        self.check_dim(p)?;
        Ok(self.facet_forms.iter().all(|f| f.eval(p) > 0))
    }

    fn check_dim(&self, p: &LatticePoint) -> Result<()> {
        if p.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: p.dim() });
        }
        Ok(())
    }

    /// Checks primitivity, validity on all generators, tightness on a rank
    /// `dim - 1` set of generators, and pairwise distinctness.
    pub fn validate(&self) -> Result<()> {
        for (k, f) in self.facet_forms.iter().enumerate() {
            validate_form(f, &self.generators)?;
            if self.facet_forms[..k].contains(f) {
                return Err(Error::Invariant(format!("duplicate facet form {}", f.pretty())));
            }
        }
        Ok(())
    }
}

/// See [`ConeDescription::contains`].
pub fn cone_contains(cone: &ConeDescription, p: &LatticePoint) -> Result<bool> {
    cone.contains(p)
}

pub(crate) fn validate_form(f: &SupportForm, generators: &[LatticePoint]) -> Result<()> {
    if arith::gcd_i64(&f.0) != 1 {
        return Err(Error::Invariant(format!("form {} is not primitive", f.pretty())));
    }
    if let Some(g) = generators.iter().find(|g| f.eval(g) < 0) {
        return Err(Error::Invariant(format!("form {} negative at {g}", f.pretty())));
    }
    let tight: Vec<&[i64]> = generators.iter().filter(|g| f.eval(g) == 0).map(|g| g.0.as_slice()).collect();
    let dim = f.0.len();
    if arith::rank_of_rows(&tight, dim - 1) != dim - 1 {
        return Err(Error::Invariant(format!("form {} is not tight on a facet", f.pretty())));
    }
    Ok(())
}

/// Fixed-size bitset over generator indices.
#[derive(Clone, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(len: usize) -> Self {
        ZeroSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}

struct Ray {
    vector: Vec<BigInt>,
    zeros: ZeroSet,
}

fn dot(ray: &[BigInt], p: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (r, &x) in ray.iter().zip(p) {
        match x {
            0 => {}
            1 => acc += r,
            -1 => acc -= r,
            _ => acc += r * x,
        }
    }
    acc
}

/// Primitive facet normals of the cone generated by `generators`, sorted
/// lexicographically.
///
/// The cone must be full-dimensional and pointed.
pub fn cone_facets(generators: &[LatticePoint]) -> Result<Vec<SupportForm>> {
    let Some(first) = generators.first() else {
        return Err(Error::NotFullDimensional { rank: 0, dim: 0 });
    };
    let dim = first.dim();
    if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
    }

    // initial simplicial cone from a maximal independent subset
    let mut echelon = Echelon::new();
    let mut basis = Vec::with_capacity(dim);
    for (i, g) in generators.iter().enumerate() {
        if echelon.insert(g.0.iter().map(|&x| BigInt::from(x)).collect()) {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    if basis.len() < dim {
        return Err(Error::NotFullDimensional { rank: basis.len(), dim });
    }
    let matrix: Vec<Vec<BigInt>> =
        basis.iter().map(|&i| generators[i].0.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let det_sign = arith::sign(&arith::determinant(&matrix));
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut vector = arith::signed_cofactor_row(&matrix, j, det_sign);
            arith::make_primitive(&mut vector);
            let mut zeros = ZeroSet::new(generators.len());
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    zeros.insert(b);
                }
            }
            Ray { vector, zeros }
        })
        .collect();

    let in_basis: std::collections::HashSet<usize> = basis.iter().copied().collect();
    for idx in 0..generators.len() {
        if in_basis.contains(&idx) {
            continue;
        }
        rays = insert_constraint(rays, idx, generators, dim);
    }

    let mut forms = Vec::with_capacity(rays.len());
    for r in &rays {
        forms.push(SupportForm(arith::to_i64_vec(&r.vector).ok_or(Error::Overflow)?));
    }
    let rows: Vec<&[i64]> = forms.iter().map(|f| f.0.as_slice()).collect();
    if arith::rank_of_rows(&rows, dim) < dim {
        return Err(Error::NotPointed);
    }
    forms.sort();
    Ok(forms)
}

/// One double-description step: intersect the current cone with `g·f ≥ 0`.
fn insert_constraint(rays: Vec<Ray>, idx: usize, generators: &[LatticePoint], dim: usize) -> Vec<Ray> {
    let g = &generators[idx].0;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut next = Vec::with_capacity(rays.len());
    for mut r in rays {
        let s = dot(&r.vector, g);
        if s.is_zero() {
            r.zeros.insert(idx);
            next.push(r);
        } else if s.is_positive() {
            pos.push((r, s));
        } else {
            neg.push((r, s));
        }
    }
    // on a line two opposite rays have no positive combination but zero
    if neg.is_empty() || dim < 2 {
        next.extend(pos.into_iter().map(|(r, _)| r));
        return next;
    }
    let mut created = Vec::new();
    for (p, sp) in &pos {
        for (q, sq) in &neg {
            let common = p.zeros.and(&q.zeros);
            if common.count() < dim - 2 || !adjacent(&common, generators, dim) {
                continue;
            }
            // sp > 0 > sq, so both coefficients are positive
            let mut vector: Vec<BigInt> = q.vector.iter().zip(&p.vector).map(|(a, b)| sp * a - sq * b).collect();
            arith::make_primitive(&mut vector);
            let mut zeros = common;
            zeros.insert(idx);
            created.push(Ray { vector, zeros });
        }
    }
    next.extend(pos.into_iter().map(|(r, _)| r));
    next.extend(created);
    next
}

fn adjacent(common: &ZeroSet, generators: &[LatticePoint], dim: usize) -> bool {
    let rows: Vec<&[i64]> = common.iter().map(|i| generators[i].0.as_slice()).collect();
    arith::rank_of_rows(&rows, dim - 2) == dim - 2
}

/// How [`semigroup_decompose`] searches.
#[derive(Clone, Copy, Debug)]
pub enum DecomposeMode<'a> {
    /// Complete backtracking over faces.
    Exhaustive,
    /// Peeling one face per `t`-degree, driven by a spec whose intervals
    /// partition `[1, n]` with a uniform rank `d - 1`.
    PartitionGreedy(&'a IntervalComplexSpec),
}

/// Writes `p` as `Σ p_{F_i}` with `F_i ∈ Γ`, or reports that no such multiset exists.
pub fn semigroup_decompose(cx: &SimplicialComplex, p: &LatticePoint, mode: DecomposeMode<'_>) -> Result<Option<Vec<Face>>> {
    let n = cx.n();
    if p.dim() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: p.dim() });
    }
    let k = p.degree();
    if k < 0 || p.0.iter().any(|&a| a < 0 || a > k) {
        return Ok(None);
    }
    match mode {
        DecomposeMode::Exhaustive => {
            let faces = cx.faces();
            let mut residual = p.0[..n].to_vec();
            let mut picked = Vec::with_capacity(k as usize);
            Ok(exhaustive(&faces, 0, &mut residual, k, &mut picked).then_some(picked))
        }
        DecomposeMode::PartitionGreedy(spec) => partition_greedy(cx, spec, p),
    }
}

fn exhaustive(faces: &[Face], start: usize, residual: &mut [i64], left: i64, picked: &mut Vec<Face>) -> bool {
    if left == 0 {
        return residual.iter().all(|&a| a == 0);
    }
    let mut must = Face::EMPTY;
    let mut allowed = Face::EMPTY;
    for (i, &a) in residual.iter().enumerate() {
        if a > left {
            return false;
        }
        if a == left {
            must = must.with(i + 1);
        }
        if a > 0 {
            allowed = allowed.with(i + 1);
        }
    }
    for (j, &f) in faces.iter().enumerate().skip(start) {
        if !must.is_subset(f) || !f.is_subset(allowed) {
            continue;
        }
        for v in f.vertices() {
            residual[v - 1] -= 1;
        }
        picked.push(f);
        if exhaustive(faces, j, residual, left - 1, picked) {
            return true;
        }
        picked.pop();
        for v in f.vertices() {
            residual[v - 1] += 1;
        }
    }
    false
}

/// Whether `(a, k)` satisfies `0 ≤ a_i ≤ k` and `Σ_{B_j} a_i ≤ (d-1) k`.
fn in_template_region(spec: &IntervalComplexSpec, rank: i64, a: &[i64], k: i64) -> bool {
    a.iter().all(|&x| (0..=k).contains(&x))
        && spec.parts().iter().all(|p| a[p.lo - 1..p.hi].iter().sum::<i64>() <= rank * k)
}

fn partition_greedy(cx: &SimplicialComplex, spec: &IntervalComplexSpec, p: &LatticePoint) -> Result<Option<Vec<Face>>> {
    if !spec.is_partition() || spec.n() != cx.n() {
        return Err(Error::NotPartition);
    }
    let rank = spec.parts()[0].rank;
    if spec.parts().iter().any(|q| q.rank != rank) {
        return Err(Error::NotUnitInterval);
    }
    let rank = rank as i64;
    let n = cx.n();
    let mut a = p.0[..n].to_vec();
    let mut k = p.degree();
    if !in_template_region(spec, rank, &a, k) {
        return Ok(None);
    }
    let mut faces = Vec::with_capacity(k as usize);
    while k > 0 {
        let mut face = Face::EMPTY;
        for part in spec.parts() {
            let block = part.lo..=part.hi;
            let d_j: i64 = block.clone().map(|i| a[i - 1]).sum();
            let h_j = (d_j - rank * (k - 1)).max(0) as usize;
            let full: Vec<usize> = block.clone().filter(|&i| a[i - 1] == k).collect();
            let mut chosen = full.clone();
            if chosen.len() < h_j {
                // any positive coordinates will do; take the largest first
                let mut partial: Vec<usize> = block.filter(|&i| a[i - 1] > 0 && a[i - 1] < k).collect();
                partial.sort_by_key(|&i| (std::cmp::Reverse(a[i - 1]), i));
                chosen.extend(partial.into_iter().take(h_j - full.len()));
            }
            if chosen.len() < h_j || chosen.len() > rank as usize {
                return Err(Error::Invariant(format!("greedy peel failed on block {part} at degree {k}")));
            }
            face = face.union(Face::from_vertices(chosen));
        }
        if !cx.contains(face) {
            return Err(Error::Invariant(format!("greedy peel produced non-face {face}")));
        }
        for v in face.vertices() {
            a[v - 1] -= 1;
        }
        k -= 1;
        if !in_template_region(spec, rank, &a, k) {
            return Err(Error::Invariant(format!("greedy residual left the region at degree {k}")));
        }
        faces.push(face);
    }
    Ok(Some(faces))
}
