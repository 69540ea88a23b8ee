use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries `s_1 | s_2 | …`.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.elementary_divisors().len()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let (s, u, v, _) = snf_full(m);
    Snf { s, u, v }
}

/// Tracks the row transform `U`, the column transform `V` and `V⁻¹` alongside `S`.
///
/// Pivot rule: smallest nonzero absolute value in the remaining block, ties
/// broken by lowest row index and then lowest column index.
pub(crate) fn snf_full(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                return (a, u, v, v_inv);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = &a[(i, t)] / &a[(t, t)];
                row_sub(&mut a, i, t, &q);
                row_sub(&mut u, i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = &a[(t, j)] / &a[(t, t)];
                col_sub(&mut a, j, t, &q);
                col_sub(&mut v, j, t, &q);
                // V⁻¹ picks up the inverse elementary operation on rows.
                row_add(&mut v_inv, t, j, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row and retry.
            let p = a[(t, t)].clone();
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    row_add(&mut a, t, i, &BigInt::from(1));
                    row_add(&mut u, t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
    }
    (a, u, v, v_inv)
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let e = &a[(i, j)];
            if e.is_zero() {
                continue;
            }
            let mag = e.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                best = Some((i, j, mag));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// row_i -= q·row_k
fn row_sub(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..a.cols() {
        let t = q * &a[(k, j)];
        a[(i, j)] -= t;
    }
}

/// row_i += q·row_k
fn row_add(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..a.cols() {
        let t = q * &a[(k, j)];
        a[(i, j)] += t;
    }
}

/// col_j -= q·col_k
fn col_sub(a: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for i in 0..a.rows() {
        let t = q * &a[(i, k)];
        a[(i, j)] -= t;
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for j in 0..a.cols() {
        a[(i, j)] = -&a[(i, j)];
    }
}

/// Row-style Hermite normal form with zero rows removed: echelon rows with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
/// Two matrices have the same row lattice iff their `hermite_rows` agree.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut c = 0;
    while r < rows && c < cols {
        let pivot = (r..rows)
            .filter(|&i| !a[(i, c)].is_zero())
            .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()));
        let Some(p) = pivot else {
            c += 1;
            continue;
        };
        a.swap_rows(r, p);
        for k in r + 1..rows {
            if !a[(k, c)].is_zero() {
                let q = &a[(k, c)] / &a[(r, c)];
                row_sub(&mut a, k, r, &q);
            }
        }
        if (r + 1..rows).any(|k| !a[(k, c)].is_zero()) {
            continue;
        }
        if a[(r, c)].is_negative() {
            negate_row(&mut a, r);
        }
        for k in 0..r {
            let q = a[(k, c)].div_floor(&a[(r, c)]);
            if !q.is_zero() {
                row_sub(&mut a, k, r, &q);
            }
        }
        r += 1;
        c += 1;
    }
    a.select_rows(0..r)
}
