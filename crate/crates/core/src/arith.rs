//! Exact integer linear algebra helpers: rank, cofactors, primitive scaling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Rank of a set of integer rows, stopping early once `stop_at` is reached.
///
/// Runs fraction-free elimination in `i128` and redoes the computation with
/// big integers if any intermediate overflows.
pub fn rank_of_rows(rows: &[&[i64]], stop_at: usize) -> usize {
    rank_i128(rows, stop_at).unwrap_or_else(|| rank_big(rows, stop_at))
}

fn rank_i128(rows: &[&[i64]], stop_at: usize) -> Option<usize> {
    let Some(first) = rows.first() else { return Some(0) };
    let width = first.len();
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
    for row in rows {
        let mut v: Vec<i128> = row.iter().map(|&x| x as i128).collect();
        for (col, b) in &basis {
            let c = v[*col];
            if c == 0 {
                continue;
            }
            let p = b[*col];
            for j in 0..width {
                v[j] = p.checked_mul(v[j])?.checked_sub(c.checked_mul(b[j])?)?;
            }
            let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        if let Some(col) = v.iter().position(|&x| x != 0) {
            basis.push((col, v));
            if basis.len() >= stop_at {
                break;
            }
        }
    }
    Some(basis.len())
}

fn rank_big(rows: &[&[i64]], stop_at: usize) -> usize {
    let mut ech = Echelon::new();
    for row in rows {
        ech.insert(row.iter().map(|&x| BigInt::from(x)).collect());
        if ech.rank() >= stop_at {
            break;
        }
    }
    ech.rank()
}

/// Incremental row echelon form over the integers.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        for (col, b) in &self.rows {
            if v[*col].is_zero() {
                continue;
            }
            let c = v[*col].clone();
            let p = &b[*col];
            for (x, y) in v.iter_mut().zip(b) {
                *x = p * &*x - &c * y;
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                self.rows.push((col, v));
                true
            }
            None => false,
        }
    }
}

/// Divides by the positive gcd of the entries (no-op on the zero vector).
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        v.iter_mut().for_each(|x| *x /= &g);
    }
}

pub fn gcd_i64(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = val;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Row `j` of the cofactor matrix, scaled by the sign of `det(m)`. The result
/// `c` satisfies `m · c = |det m| e_j`.
pub fn signed_cofactor_row(m: &[Vec<BigInt>], j: usize, det_sign: i32) -> Vec<BigInt> {
    let n = m.len();
    (0..n)
        .map(|i| {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let mut c = determinant(&minor);
            if (i + j) % 2 == 1 {
                c = -c;
            }
            if det_sign < 0 {
                c = -c;
            }
            c
        })
        .collect()
}

pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

pub fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        let rows: [&[i64]; 3] = [&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]];
        assert_eq!(rank_of_rows(&rows, usize::MAX), 2);
        assert_eq!(rank_of_rows(&rows, 1), 1);
        let big_rows: [&[i64]; 2] = [&[i64::MAX, 1], &[1, i64::MAX]];
        assert_eq!(rank_of_rows(&big_rows, usize::MAX), 2);
        assert_eq!(rank_of_rows(&[], 3), 0);
    }

    #[test]
    fn determinants_and_cofactors() {
        let m = big(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(determinant(&m), BigInt::from(6));
        let m = big(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), BigInt::from(-1));
        for j in 0..2 {
            let c = signed_cofactor_row(&m, j, -1);
            for (r, row) in m.iter().enumerate() {
                let dot: BigInt = row.iter().zip(&c).map(|(a, b)| a * b).sum();
                assert_eq!(dot, BigInt::from(if r == j { 1 } else { 0 }));
            }
        }
    }
}
