//! Slow, direct reference implementations used to check the real engines.
#![allow(dead_code)]

use sortable_core::{Face, SimplicialComplex};

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = a * m[i][j] - b * m[r][j];
                }
                let g = m[i].iter().fold(0, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// Next `k`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Facet normals by scanning every `(dim-1)`-subset of generators: the
/// generalized cross product of an independent subset is a facet normal when
/// all generators lie on one side. `Err(rank)` for lower-dimensional input.
pub fn brute_cone_facets(gens: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, usize> {
    let dim = gens[0].len();
    let big: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
    let r = rank(&big);
    if r < dim {
        return Err(r);
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    let k = dim - 1;
    if gens.len() < k {
        return Ok(out);
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<Vec<i128>> = c.iter().map(|&i| big[i].clone()).collect();
        if rank(&rows) == k {
            let mut normal: Vec<i128> = (0..dim)
                .map(|j| {
                    let minor: Vec<Vec<i128>> =
                        rows.iter().map(|r| r.iter().enumerate().filter(|(col, _)| *col != j).map(|(_, &x)| x).collect()).collect();
                    if j % 2 == 0 {
                        det(&minor)
                    } else {
                        -det(&minor)
                    }
                })
                .collect();
            let g = normal.iter().fold(0, |g, &x| gcd(g, x));
            normal.iter_mut().for_each(|x| *x /= g);
            let vals: Vec<i128> = big.iter().map(|p| p.iter().zip(&normal).map(|(a, b)| a * b).sum()).collect();
            let sign = if vals.iter().all(|&v| v >= 0) {
                Some(1)
            } else if vals.iter().all(|&v| v <= 0) {
                Some(-1)
            } else {
                None
            };
            if let Some(s) = sign {
                let f: Vec<i64> = normal.iter().map(|&x| (s * x) as i64).collect();
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        if !next_combination(&mut c, gens.len()) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Facets of `Ind(Δ)` straight from the definition, lexicographically ordered.
pub fn brute_independence_facets(delta: &SimplicialComplex) -> Vec<Face> {
    let n = delta.n();
    let independent: Vec<Face> =
        Face::full(n).subsets().filter(|s| !delta.facets().iter().any(|f| f.is_subset(*s))).collect();
    let mut facets: Vec<Face> =
        independent.iter().copied().filter(|s| !independent.iter().any(|t| t != s && s.is_subset(*t))).collect();
    sortable_core::complex::sort_lex(&mut facets);
    facets
}

/// Smallest level `k ≤ kmax` with a point in `[0,k]^n × {k}` on which every
/// form is strictly positive, by scanning the whole box.
pub fn brute_interior_level(forms: &[Vec<i64>], n: usize, kmax: i64) -> Option<(i64, Vec<i64>)> {
    (1..=kmax).find_map(|k| {
        box_points(n, k).into_iter().find(|p| forms.iter().all(|f| dot(f, p) > 0)).map(|p| (k, p))
    })
}

/// All points `(a, k)` with `0 ≤ a_i ≤ k` on which every form is `≥ 0`.
pub fn cone_points_at(forms: &[Vec<i64>], n: usize, k: i64) -> Vec<Vec<i64>> {
    box_points(n, k).into_iter().filter(|p| forms.iter().all(|f| dot(f, p) >= 0)).collect()
}

fn dot(f: &[i64], p: &[i64]) -> i64 {
    f.iter().zip(p).map(|(c, x)| c * x).sum()
}

// lexicographic, last coordinate fastest
fn box_points(n: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut a = vec![0i64; n];
    loop {
        let mut p = a.clone();
        p.push(k);
        out.push(p);
        let Some(i) = (0..n).rev().find(|&i| a[i] < k) else { break };
        a[i] += 1;
        a[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
    out
}

/// Every pure complex on `[n]` with facets of size `d`, one per facet set.
pub fn all_pure_complexes(n: usize, d: usize) -> Vec<SimplicialComplex> {
    let cand: Vec<Face> = Face::full(n).k_subsets(d).collect();
    let m = cand.len();
    assert!(m < 20, "too many candidate facets");
    (1u32..(1 << m))
        .map(|mask| {
            let facets = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| cand[i]);
            SimplicialComplex::from_faces(n, facets)
        })
        .collect()
}
