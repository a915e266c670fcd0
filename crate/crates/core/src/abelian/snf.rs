use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | … | d_r`, all `d_i ≥ 0`.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// `U^{-1}`, tracked alongside `U`.
    pub u_inv: IntMatrix,
    /// `V^{-1}`, tracked alongside `V`.
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        let k = self.d.rows().min(self.d.cols());
        (0..k).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }
}

/// Smith normal form with transformation tracking.
///
/// Pivot rule: smallest nonzero absolute value in the remaining block.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Every row operation on d is applied to u (left) and inversely to u_inv
    // (right, as a column operation); symmetrically for columns.
    let row_swap = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, a, b| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    };
    let col_swap = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, a, b| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        v_inv.swap_rows(a, b);
    };
    // row[dst] += f * row[src]
    let row_add =
        |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst, src, f: &BigInt| {
            d.add_row_multiple(dst, src, f);
            u.add_row_multiple(dst, src, f);
            u_inv.add_col_multiple(src, dst, &-f);
        };
    // col[dst] += f * col[src]
    let col_add =
        |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst, src, f: &BigInt| {
            d.add_col_multiple(dst, src, f);
            v.add_col_multiple(dst, src, f);
            v_inv.add_row_multiple(src, dst, &-f);
        };

    let k = rows.min(cols);
    for t in 0..k {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        row_swap(&mut d, &mut u, &mut u_inv, t, pi);
        col_swap(&mut d, &mut v, &mut v_inv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_add(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_add(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder smaller than the pivot appeared in row or column t.
                let (pi, pj) = smallest_in_cross(&d, t);
                row_swap(&mut d, &mut u, &mut u_inv, t, pi);
                col_swap(&mut d, &mut v, &mut v_inv, t, pj);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    row_add(&mut d, &mut u, &mut u_inv, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            // u_inv column t negates
            for i in 0..rows {
                let val = -core::mem::take(&mut u_inv[(i, t)]);
                u_inv[(i, t)] = val;
            }
        }
    }

    SnfDecomposition {
        u,
        d,
        v,
        u_inv,
        v_inv,
    }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut val = d[(t, t)].abs();
    for i in t + 1..d.rows() {
        let x = d[(i, t)].abs();
        if !x.is_zero() && x < val {
            val = x;
            best = (i, t);
        }
    }
    for j in t + 1..d.cols() {
        let x = d[(t, j)].abs();
        if !x.is_zero() && x < val {
            val = x;
            best = (t, j);
        }
    }
    best
}

/// One integer solution of `A x = b`, if any exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(a), b)
}

/// Same as [`solve_integer`] but reuses a precomputed decomposition of `A`.
pub fn solve_with(snf: &SnfDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b).ok()?;
    let r = snf.rank();
    let mut y: Vec<BigInt> = (0..snf.v.rows()).map(|_| BigInt::zero()).collect();
    for (i, c) in ub.iter().enumerate() {
        if i < r {
            let (q, rem) = c.div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    snf.v.mul_vec(&y).ok()
}

/// Basis (as columns) of the integer kernel `{x : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_cols(&cols)
}

/// Basis (as columns) of the lattice spanned by the columns of `A`.
pub fn column_span_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    // A V = U^{-1} D, so the first r columns of U^{-1} D span the image.
    let mut basis = snf.u_inv.select_cols(&(0..r).collect::<Vec<_>>());
    for j in 0..r {
        let dj = snf.d[(j, j)].clone();
        for i in 0..basis.rows() {
            basis[(i, j)] *= &dj;
        }
    }
    basis
}
