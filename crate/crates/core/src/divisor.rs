//! Height-one monomial primes of `R_Γ` for `Γ = Ind(Δ)` read off the facet
//! forms of the cone, and the invariants they determine: class group,
//! Gorenstein property, a-invariant, and radicality of `(t)`.

use crate::complex::{Face, SimplicialComplex};
use crate::cone::{ConeDescription, LatticePoint, SupportForm};
use crate::error::{Error, Result};
use crate::interval::is_unit_interval;
use crate::snf;

/// Facet forms sorted by the template they match.
///
/// For `d ≥ 3` the templates are `x_i`, `-x_i + x_{n+1}` and
/// `-Σ_B x + (d-1) x_{n+1}` over maximal clique intervals `B`. For `d = 2`
/// they are `x_i` and the clique forms `-Σ_B x + x_{n+1}`, where `B` runs over
/// maximal cliques of the graph, isolated vertices included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetClassification {
    pub n: usize,
    /// Facet size of `Δ`.
    pub d: usize,
    /// Intervals behind the `l_forms` templates, in order.
    pub cliques: Vec<Face>,
    pub q_forms: Vec<SupportForm>,
    pub p_forms: Vec<SupportForm>,
    pub l_forms: Vec<SupportForm>,
    pub unexpected: Vec<SupportForm>,
    /// Templates with no matching facet form.
    pub missing: Vec<SupportForm>,
}

impl FacetClassification {
    /// Forms with positive `x_{n+1}` coefficient, i.e. primes containing `t`.
    pub fn t_forms(&self) -> Vec<&SupportForm> {
        self.p_forms
            .iter()
            .chain(&self.l_forms)
            .chain(&self.unexpected)
            .filter(|f| f.t_coeff() > 0)
            .collect()
    }

    /// Every form, in list order `q, p, l, unexpected`.
    pub fn all_forms(&self) -> impl Iterator<Item = &SupportForm> {
        self.q_forms.iter().chain(&self.p_forms).chain(&self.l_forms).chain(&self.unexpected)
    }

    /// The largest clique size of `Δ`.
    pub fn clique_number(&self) -> usize {
        self.cliques.iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

fn q_template(n: usize, i: usize) -> SupportForm {
    let mut c = vec![0; n + 1];
    c[i - 1] = 1;
    SupportForm(c)
}

fn p_template(n: usize, i: usize) -> SupportForm {
    let mut c = vec![0; n + 1];
    c[i - 1] = -1;
    c[n] = 1;
    SupportForm(c)
}

fn clique_template(n: usize, b: Face, level: i64) -> SupportForm {
    let mut c = vec![0; n + 1];
    for v in b.vertices() {
        c[v - 1] = -1;
    }
    c[n] = level;
    SupportForm(c)
}

/// `(d, q/p/l templates, clique intervals)` for a unit-interval `Δ`.
fn templates(delta: &SimplicialComplex) -> Result<(usize, Vec<SupportForm>, Vec<SupportForm>, Vec<SupportForm>, Vec<Face>)> {
    if !is_unit_interval(delta).is_unit_interval {
        return Err(Error::NotUnitInterval);
    }
    let n = delta.n();
    let d = match delta.pure_facet_size() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::Degenerate),
    };
    let q: Vec<SupportForm> = (1..=n).map(|i| q_template(n, i)).collect();
    let all_cliques = delta.maximal_cliques()?;
    let (p, cliques) = if d == 2 {
        (Vec::new(), all_cliques)
    } else {
        ((1..=n).map(|i| p_template(n, i)).collect(), all_cliques.into_iter().filter(|c| c.len() >= d).collect())
    };
    let level = d as i64 - 1;
    let l = cliques.iter().map(|&b| clique_template(n, b, level)).collect();
    Ok((d, q, p, l, cliques))
}

/// Matches each facet form of `Ind(Δ)` against the templates built from `Δ`.
pub fn classify_facets(delta: &SimplicialComplex, forms: &[SupportForm]) -> Result<FacetClassification> {
    let (d, q_t, p_t, l_t, cliques) = templates(delta)?;
    let mut cls = FacetClassification {
        n: delta.n(),
        d,
        cliques,
        q_forms: Vec::new(),
        p_forms: Vec::new(),
        l_forms: Vec::new(),
        unexpected: Vec::new(),
        missing: Vec::new(),
    };
    for f in forms {
        if q_t.contains(f) {
            cls.q_forms.push(f.clone());
        } else if p_t.contains(f) {
            cls.p_forms.push(f.clone());
        } else if l_t.contains(f) {
            cls.l_forms.push(f.clone());
        } else {
            cls.unexpected.push(f.clone());
        }
    }
    cls.missing = q_t.into_iter().chain(p_t).chain(l_t).filter(|t| !forms.contains(t)).collect();
    Ok(cls)
}

/// Outcome of comparing the primes containing `t` with `{P_i} ∪ {L_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjectureVerdict {
    Confirmed,
    /// Facet forms containing `t` outside the predicted family.
    Counterexample(Vec<SupportForm>),
}

/// Computes the cone of `Ind(Δ)` and checks whether its `t`-forms are exactly
/// the `P_i` and `L_j` templates. A missing template is an internal error: the
/// templates are always facets.
pub fn conjecture_check(delta: &SimplicialComplex) -> Result<(ConjectureVerdict, FacetClassification)> {
    let dim = delta.dim().unwrap_or(-1);
    if dim <= 1 {
        return Err(Error::DimensionTooSmall(dim));
    }
    let cone = ConeDescription::of_complex(&delta.independence_complex())?;
    let cls = classify_facets(delta, &cone.facet_forms)?;
    verdict_of(&cls).map(|v| (v, cls))
}

/// Verdict from an existing classification of a `dim Δ > 1` instance.
pub fn verdict_of(cls: &FacetClassification) -> Result<ConjectureVerdict> {
    if let Some(m) = cls.missing.first() {
        return Err(Error::Invariant(format!("template {} is not a facet form", m.pretty())));
    }
    if let Some(f) = cls.unexpected.iter().find(|f| f.t_coeff() <= 0) {
        return Err(Error::Invariant(format!("facet form {} avoids t but is not x_i", f.pretty())));
    }
    Ok(if cls.unexpected.is_empty() {
        ConjectureVerdict::Confirmed
    } else {
        ConjectureVerdict::Counterexample(cls.unexpected.clone())
    })
}

/// `Cl(R_Γ) ≅ Z^r / ⟨(c_{1,n+1}, ..., c_{r,n+1})⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassGroup {
    pub free_rank: usize,
    pub torsion: u64,
}

pub fn class_group(cls: &FacetClassification) -> Result<ClassGroup> {
    let coeffs: Vec<i64> = cls.t_forms().iter().map(|f| f.t_coeff()).collect();
    if coeffs.is_empty() {
        return Err(Error::NoTForms);
    }
    let (free_rank, torsion) = snf::abelian_group(std::slice::from_ref(&coeffs), coeffs.len());
    let torsion = match torsion.as_slice() {
        [] => 1,
        [g] => u64::try_from(g).map_err(|_| Error::Overflow)?,
        _ => return Err(Error::Invariant("one relation gave several invariant factors".into())),
    };
    Ok(ClassGroup { free_rank, torsion })
}

/// Gorenstein verdict; `conditional` is set when unexpected forms exist, so
/// the predicted prime family was not the full one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GorensteinVerdict {
    pub scalar: Option<i64>,
    pub conditional: bool,
}

impl GorensteinVerdict {
    pub fn is_gorenstein(&self) -> bool {
        self.scalar.is_some()
    }
}

/// Looks for one integer `a` with `1 - Σ_{j≤n} c_j = a c_{n+1}` on every form
/// containing `t`.
pub fn gorenstein_test(cls: &FacetClassification) -> GorensteinVerdict {
    let mut scalar = None;
    let mut ok = true;
    for f in cls.t_forms() {
        let lhs = 1 - f.x_coeff_sum();
        let c = f.t_coeff();
        if lhs % c != 0 {
            ok = false;
            break;
        }
        match scalar {
            None => scalar = Some(lhs / c),
            Some(a) if a == lhs / c => {}
            Some(_) => {
                ok = false;
                break;
            }
        }
    }
    GorensteinVerdict { scalar: scalar.filter(|_| ok), conditional: !cls.unexpected.is_empty() }
}

/// `a(R_Γ)` and the lexicographically smallest interior point at the minimal level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInvariant {
    pub value: i64,
    pub witness: LatticePoint,
}

/// Smallest level with a lattice point on which every facet form is strictly
/// positive. The all-ones point succeeds at level
/// `max ⌈(1 - Σ_{j≤n} c_j) / c_{n+1}⌉`, which caps the search.
pub fn a_invariant(cone: &ConeDescription) -> Result<AInvariant> {
    let dim = cone.ambient_dim;
    let n = dim - 1;
    let mut cap = 1i64;
    for f in cone.facet_forms.iter().filter(|f| f.t_coeff() > 0) {
        cap = cap.max(div_ceil(1 - f.x_coeff_sum(), f.t_coeff()));
    }
    let mut ones = vec![1; dim];
    ones[n] = cap;
    if !cone.contains_strictly(&LatticePoint(ones))? {
        return Err(Error::Invariant(format!("all-ones point is not interior at level {cap}")));
    }
    for k in 1..=cap {
        if let Some(a) = interior_point_at(&cone.facet_forms, n, k) {
            let mut coords = a;
            coords.push(k);
            return Ok(AInvariant { value: -k, witness: LatticePoint(coords) });
        }
    }
    Err(Error::Invariant("no interior point up to the cap".into()))
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

/// Lex-first `a ∈ [1, k-1]^n` with every form positive at `(a, k)`.
fn interior_point_at(forms: &[SupportForm], n: usize, k: i64) -> Option<Vec<i64>> {
    if k < 2 {
        return None;
    }
    // suffix[f][i] = largest contribution of coordinates i.. to form f
    let suffix: Vec<Vec<i64>> = forms
        .iter()
        .map(|f| {
            let mut s = vec![0; n + 1];
            for i in (0..n).rev() {
                let c = f.0[i];
                s[i] = s[i + 1] + if c > 0 { c * (k - 1) } else { c };
            }
            s
        })
        .collect();
    let mut partial: Vec<i64> = forms.iter().map(|f| f.t_coeff() * k).collect();
    let mut a = Vec::with_capacity(n);
    interior_dfs(forms, &suffix, &mut partial, &mut a, n, k).then_some(a)
}

fn interior_dfs(forms: &[SupportForm], suffix: &[Vec<i64>], partial: &mut [i64], a: &mut Vec<i64>, n: usize, k: i64) -> bool {
    let i = a.len();
    if partial.iter().zip(suffix).any(|(p, s)| p + s[i] <= 0) {
        return false;
    }
    if i == n {
        return true;
    }
    for x in 1..k {
        for (p, f) in partial.iter_mut().zip(forms) {
            *p += f.0[i] * x;
        }
        a.push(x);
        if interior_dfs(forms, suffix, partial, a, n, k) {
            return true;
        }
        a.pop();
        for (p, f) in partial.iter_mut().zip(forms) {
            *p -= f.0[i] * x;
        }
    }
    false
}

/// The value `B` with `a(R_Γ) ≤ -B`: `⌈ω/(d-1)⌉`, plus one when `d-1` divides `ω`.
/// For `d = 2` this is `ω + 1`.
pub fn a_invariant_bound(clique_number: usize, d: usize) -> i64 {
    let w = clique_number as i64;
    let s = d as i64 - 1;
    let base = (w + s - 1) / s;
    if w % s == 0 {
        base + 1
    } else {
        base
    }
}

/// Whether `x^a t^k` lies in the canonical module: every facet form is
/// strictly positive at `p`. False on a dimension mismatch.
pub fn canonical_membership(cone: &ConeDescription, p: &LatticePoint) -> bool {
    cone.contains_strictly(p).unwrap_or(false)
}

/// Result of [`t_radical_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalVerdict {
    pub radical: bool,
    /// Distinct `x_{n+1}` coefficients of the forms containing `t`.
    pub t_coefficients: Vec<i64>,
    /// For `dim Δ = 1`: number of monomials of `∩ P_C` up to the degree bound
    /// that were factored down to `t^k`.
    pub certified: Option<usize>,
}

/// Highest `t`-degree covered by the factorization certificate.
pub const RADICAL_CERTIFICATE_DEGREE: i64 = 4;

/// `(t)` is radical iff all `t`-forms share the `x_{n+1}` coefficient. For a
/// graph `Δ` every monomial in the intersection of the clique primes, up to
/// `t`-degree 4, is additionally factored as `(x_F t) v` step by step.
pub fn t_radical_test(delta: &SimplicialComplex, cls: &FacetClassification) -> Result<RadicalVerdict> {
    let mut coeffs: Vec<i64> = cls.t_forms().iter().map(|f| f.t_coeff()).collect();
    coeffs.sort_unstable();
    coeffs.dedup();
    if coeffs.is_empty() {
        return Err(Error::NoTForms);
    }
    let radical = coeffs.len() == 1;
    let certified = if cls.d == 2 {
        let gamma = delta.independence_complex();
        let mut cliques = cls.cliques.clone();
        cliques.sort_by_key(|c| Face::min(*c));
        Some(radical_certificate(&gamma, &cliques, cls.n, RADICAL_CERTIFICATE_DEGREE)?)
    } else {
        None
    };
    Ok(RadicalVerdict { radical, t_coefficients: coeffs, certified })
}

/// Enumerates `x^a t^k` with `Σ_B a < k` for every clique `B` and `k ≤ max_k`,
/// and factors each one down to a power of `t`.
fn radical_certificate(gamma: &SimplicialComplex, cliques: &[Face], n: usize, max_k: i64) -> Result<usize> {
    let mut count = 0;
    for k in 1..=max_k {
        let mut a = Vec::with_capacity(n);
        let mut err = None;
        enumerate_strict(cliques, n, k, &mut a, &mut |pt| {
            if err.is_none() {
                if let Err(e) = factor_down(gamma, cliques, pt.to_vec(), k) {
                    err = Some(e);
                }
                count += 1;
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(count)
}

fn enumerate_strict(cliques: &[Face], n: usize, k: i64, a: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
    let i = a.len();
    if i == n {
        visit(a);
        return;
    }
    for x in 0..k {
        a.push(x);
        // cliques ending at vertex i+1 are complete now; the others only grow
        let ok = cliques.iter().all(|b| b.vertices().filter(|&v| v <= i + 1).map(|v| a[v - 1]).sum::<i64>() < k);
        if ok {
            enumerate_strict(cliques, n, k, a, visit);
        }
        a.pop();
        if !ok {
            break;
        }
    }
}

/// One peel per level: the independent set hitting every tight clique picked
/// by walking the cliques left to right.
fn factor_down(gamma: &SimplicialComplex, cliques: &[Face], mut a: Vec<i64>, mut k: i64) -> Result<()> {
    let sums = |a: &[i64]| -> Vec<i64> { cliques.iter().map(|b| b.vertices().map(|v| a[v - 1]).sum()).collect() };
    while k > 1 {
        let d = sums(&a);
        let mut face = Face::EMPTY;
        let mut last: Option<usize> = None;
        let mut from = 0;
        while let Some(j) = (from..cliques.len()).find(|&j| d[j] == k - 1 && last.is_none_or(|v| !cliques[j].contains(v))) {
            let v = cliques[j]
                .vertices()
                .filter(|&v| a[v - 1] > 0)
                .max()
                .ok_or_else(|| Error::Invariant(format!("tight clique {} has no support", cliques[j])))?;
            face = face.with(v);
            last = Some(v);
            from = j + 1;
        }
        if !gamma.contains(face) {
            return Err(Error::Invariant(format!("peeled set {face} is not independent")));
        }
        for v in face.vertices() {
            a[v - 1] -= 1;
        }
        k -= 1;
        if sums(&a).iter().any(|&s| s >= k) || a.iter().any(|&x| x < 0) {
            return Err(Error::Invariant(format!("residual after peeling {face} left the intersection")));
        }
    }
    if a.iter().any(|&x| x != 0) {
        return Err(Error::Invariant("level-one residual is not t".into()));
    }
    Ok(())
}

/// Everything divisorial about `R_{Ind(Δ)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorReport {
    pub classification: FacetClassification,
    pub class_group: ClassGroup,
    pub gorenstein: GorensteinVerdict,
    pub a_invariant: AInvariant,
    pub t_radical: RadicalVerdict,
}

pub fn divisor_report(delta: &SimplicialComplex) -> Result<DivisorReport> {
    let cone = ConeDescription::of_complex(&delta.independence_complex())?;
    divisor_report_with(delta, &cone)
}

/// As [`divisor_report`], reusing an already computed cone of `Ind(Δ)`.
pub fn divisor_report_with(delta: &SimplicialComplex, cone: &ConeDescription) -> Result<DivisorReport> {
    let classification = classify_facets(delta, &cone.facet_forms)?;
    Ok(DivisorReport {
        class_group: class_group(&classification)?,
        gorenstein: gorenstein_test(&classification),
        a_invariant: a_invariant(cone)?,
        t_radical: t_radical_test(delta, &classification)?,
        classification,
    })
}
