//! Smith normal form with unimodular transforms.
//!
//! Pivot rule: the entry of smallest absolute value in the active block,
//! earliest in row-major order. The output is a deterministic function of
//! the input matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `u * m * v == d`, with `u_inv`, `v_inv` the exact inverses of `u`, `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order; each divides the next.
    pub fn invariants(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }

    /// Columns of `v` spanning the integer kernel of the input.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.v.cols()).map(|j| self.v.column(j)).collect()
    }
}

struct Reducer {
    m: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[target] += factor * row[source]
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.m.add_row_multiple(target, source, factor);
        self.u.add_row_multiple(target, source, factor);
        self.u_inv.add_col_multiple(source, target, &-factor);
    }

    /// col[target] += factor * col[source]
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.m.add_col_multiple(target, source, factor);
        self.v.add_col_multiple(target, source, factor);
        self.v_inv.add_row_multiple(source, target, &-factor);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn pivot_position(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let e = &self.m[(i, j)];
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.m[(bi, bj)].abs() <= e.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn reduce_block(&mut self, t: usize) -> bool {
        let (rows, cols) = (self.m.rows(), self.m.cols());
        loop {
            let Some((pi, pj)) = self.pivot_position(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if self.m[(i, t)].is_zero() {
                    continue;
                }
                let q = self.m[(i, t)].div_floor(&self.m[(t, t)]);
                self.add_row(i, t, &-q);
                dirty |= !self.m[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if self.m[(t, j)].is_zero() {
                    continue;
                }
                let q = self.m[(t, j)].div_floor(&self.m[(t, t)]);
                self.add_col(j, t, &-q);
                dirty |= !self.m[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // Divisibility: fold an offending row into the pivot row and retry.
            let pivot = self.m[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.m[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => self.add_row(t, i, &BigInt::from(1)),
                None => {
                    if self.m[(t, t)].is_negative() {
                        self.negate_row(t);
                    }
                    return true;
                }
            }
        }
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        m: m.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
        v_inv: IntegerMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        if !r.reduce_block(t) {
            break;
        }
    }
    SmithDecomposition { u: r.u, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv, d: r.m }
}
