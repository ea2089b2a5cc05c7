//! Dense integer and rational matrices with exact Smith normal form,
//! integer kernels and saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Row-major dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>], nrows: usize) -> Self {
        let mut m = IMat::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for i in 0..nrows {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].checked_add(a.checked_mul(other[(k, j)]).expect("overflow")).expect("overflow");
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &IMat) -> IMat {
        let mut m = IMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn scale(&self, k: i64) -> IMat {
        IMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IMat {
        let mut m = IMat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square());
        bareiss_det(&to_big(self))
    }

    pub fn rank(&self) -> usize {
        smith(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

pub type BMat = Vec<Vec<BigInt>>;

pub fn to_big(m: &IMat) -> BMat {
    (0..m.rows).map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn from_big(m: &BMat) -> IMat {
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry exceeds i64")).collect()).collect();
    if rows.is_empty() {
        return IMat::zeros(0, 0);
    }
    IMat::from_rows(&rows)
}

fn bareiss_det(m: &BMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Smith normal form `u * m * v = d` with unimodular `u`, `v`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IMat,
    pub v: IMat,
    /// Nonzero invariant factors, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    /// Inverse of `u`.
    pub u_inv: IMat,
    /// Inverse of `v`.
    pub v_inv: IMat,
}

/// Smith normal form with unbounded transforms.
#[derive(Debug, Clone)]
pub struct SmithBig {
    pub u: BMat,
    pub v: BMat,
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub u_inv: BMat,
    pub v_inv: BMat,
}

/// Smith normal form with machine-integer transforms. Panics if a
/// transform entry leaves the `i64` range; use [`smith_big`] otherwise.
pub fn smith(m: &IMat) -> Smith {
    let s = smith_big(m);
    Smith {
        u: from_big_shape(&s.u, m.rows, m.rows),
        v: from_big_shape(&s.v, m.cols, m.cols),
        factors: s.factors,
        rank: s.rank,
        u_inv: from_big_shape(&s.u_inv, m.rows, m.rows),
        v_inv: from_big_shape(&s.v_inv, m.cols, m.cols),
    }
}

fn from_big_shape(m: &BMat, rows: usize, cols: usize) -> IMat {
    let mut out = IMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out[(i, j)] = m[i][j].to_i64().expect("entry exceeds i64");
        }
    }
    out
}

/// Smith normal form with pivoting on the entry of least absolute value.
pub fn smith_big(m: &IMat) -> SmithBig {
    let (r, c) = (m.rows, m.cols);
    let mut a = to_big(m);
    let mut u = to_big(&IMat::identity(r));
    let mut ui = to_big(&IMat::identity(r));
    let mut v = to_big(&IMat::identity(c));
    let mut vi = to_big(&IMat::identity(c));
    let mut t = 0;
    'stage: while t < r.min(c) {
        loop {
            // pivot of least absolute value in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'stage };
            swap_rows(&mut a, &mut u, &mut ui, t, pi);
            swap_cols(&mut a, &mut v, &mut vi, t, pj);
            let mut clear = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = nearest_quotient(&a[i][t], &a[t][t]);
                    add_row(&mut a, &mut u, &mut ui, i, t, &-q);
                    clear &= a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let q = nearest_quotient(&a[t][j], &a[t][t]);
                    add_col(&mut a, &mut v, &mut vi, j, t, &-q);
                    clear &= a[t][j].is_zero();
                }
            }
            if !clear {
                continue;
            }
            // divisibility condition on the rest of the block
            let mut fix = None;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => add_row(&mut a, &mut u, &mut ui, t, i, &BigInt::one()),
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in 0..c {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..r {
                u[t][j] = -u[t][j].clone();
                ui[j][t] = -ui[j][t].clone();
            }
        }
        t += 1;
    }
    let factors: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    SmithBig { u, v, factors, rank: t, u_inv: ui, v_inv: vi }
}

/// LLL reduction (δ = 3/4) of linearly independent integer vectors with
/// respect to the standard inner product.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let dot = |x: &[BigInt], y: &[BigInt]| -> BigInt { x.iter().zip(y).map(|(a, c)| a * c).sum() };
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bn = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut x = BigRational::from_integer(dot(&b[i], &b[j]));
            for l in 0..j {
                x -= &mu[j][l] * &mu[i][l] * &bn[l];
            }
            mu[i][j] = x / &bn[j];
        }
        let mut x = BigRational::from_integer(dot(&b[i], &b[i]));
        for l in 0..i {
            x -= &mu[i][l] * &mu[i][l] * &bn[l];
        }
        assert!(x.is_positive(), "lll_reduce needs independent vectors");
        bn[i] = x;
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let reduce = |b: &mut Vec<Vec<BigInt>>, mu: &mut Vec<Vec<BigRational>>, k: usize, l: usize| {
        if mu[k][l].abs() > half {
            let r = (&mu[k][l] + &half).floor().to_integer();
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &r * y;
            }
            let rq = BigRational::from_integer(r);
            for i in 0..l {
                let d = &rq * &mu[l][i];
                mu[k][i] -= d;
            }
            mu[k][l] -= rq;
        }
    };
    let mut k = 1;
    while k < n {
        reduce(&mut b, &mut mu, k, k - 1);
        let m = mu[k][k - 1].clone();
        if bn[k] < (&delta - &m * &m) * &bn[k - 1] {
            let nb = &bn[k] + &m * &m * &bn[k - 1];
            mu[k][k - 1] = &m * &bn[k - 1] / &nb;
            bn[k] = &bn[k - 1] * &bn[k] / &nb;
            bn[k - 1] = nb;
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = std::mem::replace(&mut mu[k - 1][j], t);
            }
            for i in k + 1..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(&mut b, &mut mu, k, l);
            }
            k += 1;
        }
    }
    b
}

/// Columns `cols` of a big matrix, LLL-reduced, as an `IMat` with `rows` rows.
fn reduced_columns(m: &BMat, rows: usize, cols: &[usize]) -> IMat {
    let vs: Vec<Vec<BigInt>> = cols.iter().map(|&j| (0..rows).map(|i| m[i][j].clone()).collect()).collect();
    let vs = lll_reduce(vs);
    let mut out = IMat::zeros(rows, cols.len());
    for (j, v) in vs.iter().enumerate() {
        for i in 0..rows {
            out[(i, j)] = v[i].to_i64().expect("reduced basis exceeds i64");
        }
    }
    out
}

/// `q` with `|a − q·p| ≤ |p|/2`.
fn nearest_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(p);
    if BigInt::from(2) * r.abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

// Row operations act on `a` and `u` from the left; `ui` receives the inverse column operation.
fn swap_rows(a: &mut BMat, u: &mut BMat, ui: &mut BMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    u.swap(i, j);
    for row in ui.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += k * row_j
fn add_row(a: &mut BMat, u: &mut BMat, ui: &mut BMat, i: usize, j: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for col in 0..a[0].len() {
        let x = &a[j][col] * k;
        a[i][col] += x;
    }
    for col in 0..u[0].len() {
        let x = &u[j][col] * k;
        u[i][col] += x;
    }
    // inverse: col_j -= k * col_i
    for row in ui.iter_mut() {
        let x = &row[i] * k;
        row[j] -= x;
    }
}

fn swap_cols(a: &mut BMat, v: &mut BMat, vi: &mut BMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in v.iter_mut() {
        row.swap(i, j);
    }
    vi.swap(i, j);
}

/// col_i += k * col_j
fn add_col(a: &mut BMat, v: &mut BMat, vi: &mut BMat, i: usize, j: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let x = &row[j] * k;
        row[i] += x;
    }
    for row in v.iter_mut() {
        let x = &row[j] * k;
        row[i] += x;
    }
    // inverse: row_j -= k * row_i
    let n = vi[0].len();
    for col in 0..n {
        let x = &vi[i][col] * k;
        vi[j][col] -= x;
    }
}

/// Basis (as columns) of the integer kernel `{x : m x = 0}`; always primitive.
pub fn kernel(m: &IMat) -> IMat {
    let s = smith_big(m);
    let cols: Vec<usize> = (s.rank..m.cols).collect();
    reduced_columns(&s.v, m.cols, &cols)
}

/// Primitive closure `(span_Q M) ∩ Z^n` of the column span of `m`, as a column basis.
pub fn saturate(m: &IMat) -> IMat {
    let s = smith_big(m);
    reduced_columns(&s.u_inv, m.rows, &(0..s.rank).collect::<Vec<_>>())
}

/// Index of the column span of `m` inside its saturation (product of invariant factors).
pub fn saturation_index(m: &IMat) -> BigInt {
    smith_big(m).factors.iter().fold(BigInt::one(), |a, b| a * b)
}

/// Extend a primitive vector to a unimodular basis; the vector becomes column 0.
pub fn complete_basis(v: &[i64]) -> Option<IMat> {
    let col = IMat::from_cols(&[v.to_vec()], v.len());
    let s = smith(&col);
    if s.rank != 1 || s.factors[0] != BigInt::one() {
        return None;
    }
    // u * col = e0  =>  col = u_inv * e0
    Some(s.u_inv)
}

pub type QMat = Vec<Vec<BigRational>>;

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn to_rat(m: &IMat) -> QMat {
    (0..m.rows).map(|i| m.row(i).iter().map(|&x| q(x)).collect()).collect()
}

/// Solve `m x = b` over the rationals for square invertible `m`.
pub fn solve_rational(m: &IMat, b: &[i64]) -> Option<Vec<BigRational>> {
    assert!(m.is_square());
    let n = m.rows;
    let mut a = to_rat(m);
    for (i, row) in a.iter_mut().enumerate() {
        row.push(q(b[i]));
    }
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        let piv = a[k][k].clone();
        for j in k..=n {
            a[k][j] = &a[k][j] / &piv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let x = &f * &a[k][j];
                    a[i][j] -= x;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square rational matrix.
pub fn inverse_rational(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        let piv = a[k][k].clone();
        for j in 0..2 * n {
            a[k][j] = &a[k][j] / &piv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let x = &f * &a[k][j];
                    a[i][j] -= x;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Indices of a maximal linearly independent subset of the columns, chosen greedily.
pub fn independent_columns(m: &IMat) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut rank = 0;
    for j in 0..m.cols {
        let mut trial = chosen.clone();
        trial.push(j);
        let r = m.select(&(0..m.rows).collect::<Vec<_>>(), &trial).rank();
        if r > rank {
            rank = r;
            chosen = trial;
        }
    }
    chosen
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_all(xs: impl IntoIterator<Item = i64>) -> i64 {
    xs.into_iter().fold(0i64, |g, x| g.gcd(&x))
}

/// Divide a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v.iter().copied());
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        let m = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith(&m);
        let d = s.u.mul(&m).mul(&s.v);
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.factors[i].to_i64().unwrap() } else { 0 };
                assert_eq!(d[(i, j)], want);
            }
        }
        assert_eq!(s.u.mul(&s.u_inv), IMat::identity(3));
        assert_eq!(s.v.mul(&s.v_inv), IMat::identity(3));
    }

    #[test]
    fn kernel_and_saturation() {
        let m = IMat::from_rows(&[vec![1, 1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k).data.iter().all(|&x| x == 0));
        let sat = saturate(&IMat::from_cols(&[vec![2, 0], vec![0, 2]], 2));
        assert_eq!(sat.determinant().abs(), BigInt::one());
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = IMat::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]);
        assert_eq!(m.determinant(), BigInt::from(-2));
    }
}
