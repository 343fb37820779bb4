//! Smith normal form of small integer matrices, enough to present finitely
//! generated abelian groups `Z^c / (row span)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...` of the matrix, all positive.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero magnitude in the remaining block
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..n {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
            }
            dirty |= !a[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..m {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
            }
            dirty |= !a[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t]))) {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// `Z^cols / (row span)` as `(free rank, torsion invariants > 1)`.
pub fn abelian_group(rows: &[Vec<i64>], cols: usize) -> (usize, Vec<BigInt>) {
    let factors = invariant_factors(rows);
    let free = cols - factors.len();
    (free, factors.into_iter().filter(|d| !d.is_one()).collect())
}
