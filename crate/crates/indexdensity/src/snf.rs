//! Exact integer matrices with Smith and Hermite normal forms.
//!
//! Matrices here are tiny (generators x support primes, at most ~10 each
//! way), so the classic elimination algorithm with exact BigInt entries is
//! the right tool: no pivot growth concerns, no need for LLL preprocessing.
//!
//! `smith_normal_form` returns U, V unimodular with U*M*V = diag(d_1..d_r, 0..)
//! and d_i | d_{i+1}. `hermite_rows` returns a row-echelon basis of the row
//! space, which powers exact lattice-membership tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        debug_assert!(rows.iter().all(|row| row.len() == c));
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`
    pub fn add_row_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] += t;
        }
    }

    pub fn add_col_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self[(i, src)] * q;
            self[(i, dst)] += t;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero elementary divisors d_1 | d_2 | ... | d_r, all positive.
    pub diag: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

/// Smith normal form by pivot-and-eliminate with remainder reduction.
pub fn smith_normal_form(m: &IntMat) -> Smith {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let n = rows.min(cols);

    let mut t = 0;
    while t < n {
        // pick the nonzero entry of least magnitude in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // eliminate the pivot row and column; repeat until clean since
        // remainder steps can refill them
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_mul(i, t, &q);
                u.add_row_mul(i, t, &q);
                if !a[(i, t)].is_zero() {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_mul(j, t, &q);
                v.add_col_mul(j, t, &q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    // enforce d_i | d_{i+1} by gcd-absorbing pairs
    let mut r = 0;
    while r < n && !a[(r, r)].is_zero() {
        r += 1;
    }
    loop {
        let mut fixed = true;
        for i in 0..r.saturating_sub(1) {
            let (di, dj) = (a[(i, i)].clone(), a[(i + 1, i + 1)].clone());
            if (&dj % &di).is_zero() {
                continue;
            }
            fixed = false;
            // col_{i} += col_{i+1}: puts dj into position (i+1, i)
            a.add_col_mul(i, i + 1, &BigInt::one());
            v.add_col_mul(i, i + 1, &BigInt::one());
            // 2x2 block [[di,0],[dj,dj]]: clean it with row/col gcd steps
            loop {
                let mut dirty = false;
                if !a[(i + 1, i)].is_zero() {
                    let q = -a[(i + 1, i)].div_floor(&a[(i, i)]);
                    a.add_row_mul(i + 1, i, &q);
                    u.add_row_mul(i + 1, i, &q);
                    if !a[(i + 1, i)].is_zero() {
                        a.swap_rows(i, i + 1);
                        u.swap_rows(i, i + 1);
                        dirty = true;
                    }
                }
                if !a[(i, i + 1)].is_zero() {
                    let q = -a[(i, i + 1)].div_floor(&a[(i, i)]);
                    a.add_col_mul(i + 1, i, &q);
                    v.add_col_mul(i + 1, i, &q);
                    if !a[(i, i + 1)].is_zero() {
                        a.swap_cols(i, i + 1);
                        v.swap_cols(i, i + 1);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            if a[(i, i)].is_negative() {
                a.negate_row(i);
                u.negate_row(i);
            }
            if a[(i + 1, i + 1)].is_negative() {
                a.negate_row(i + 1);
                u.negate_row(i + 1);
            }
        }
        if fixed {
            break;
        }
    }

    let diag = (0..r).map(|i| a[(i, i)].clone()).collect();
    Smith { diag, u, v }
}

/// Row-style Hermite echelon form: integer row operations only, so the row
/// space is preserved exactly. Pivots are positive; entries below a pivot are
/// zero. Returns the nonzero rows.
pub fn hermite_rows(m: &IntMat) -> IntMat {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // gcd-reduce all rows below `rank` in this column to a single pivot
        loop {
            let mut best: Option<usize> = None;
            for i in rank..rows {
                if !a[(i, col)].is_zero()
                    && best.map_or(true, |b| a[(i, col)].abs() < a[(b, col)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(rank, b);
            let mut again = false;
            for i in rank + 1..rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = -a[(i, col)].div_floor(&a[(rank, col)]);
                a.add_row_mul(i, rank, &q);
                if !a[(i, col)].is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if !a[(rank, col)].is_zero() {
            if a[(rank, col)].is_negative() {
                a.negate_row(rank);
            }
            rank += 1;
        }
    }
    let mut h = IntMat::zero(rank, cols);
    for i in 0..rank {
        for j in 0..cols {
            h[(i, j)] = a[(i, j)].clone();
        }
    }
    h
}

/// Does `v` lie in the integer row space spanned by the Hermite form `h`?
pub fn in_row_space(h: &IntMat, v: &[BigInt]) -> bool {
    debug_assert_eq!(h.cols, v.len());
    let mut v = v.to_vec();
    let mut row = 0;
    for col in 0..h.cols {
        if v[col].is_zero() {
            if row < h.rows && !h[(row, col)].is_zero() {
                row += 1;
            }
            continue;
        }
        if row >= h.rows || h[(row, col)].is_zero() {
            return false;
        }
        let (q, r) = v[col].div_rem(&h[(row, col)]);
        if !r.is_zero() {
            return false;
        }
        for j in col..h.cols {
            let t = &h[(row, j)] * &q;
            v[j] -= t;
        }
        row += 1;
    }
    v.iter().all(|x| x.is_zero())
}
