//! Exact enumeration of lattice points on ellipsoid shells: LLL reduction of
//! a positive-definite Gram matrix followed by Fincke–Pohst search with
//! rational centers. No floating point is involved.

use crate::linalg::{self, q, IMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// LLL-reduce the basis of a positive-definite Gram matrix. Returns the
/// unimodular change of basis `t` (columns are the new basis vectors).
pub fn lll(a: &IMat) -> IMat {
    let m = a.rows;
    let mut t = IMat::identity(m);
    if m <= 1 {
        return t;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    let mut guard = 0usize;
    while k < m {
        guard += 1;
        assert!(guard < 1_000_000, "LLL failed to converge");
        // size reduction of column k
        for j in (0..k).rev() {
            let g = t.transpose().mul(a).mul(&t);
            let (mu, _) = gram_schmidt(&g);
            let r = round(&mu[k][j]);
            if !r.is_zero() {
                let r = r.to_i64().expect("LLL coefficient overflow");
                for i in 0..m {
                    t[(i, k)] -= r * t[(i, j)];
                }
            }
        }
        let g = t.transpose().mul(a).mul(&t);
        let (mu, bstar) = gram_schmidt(&g);
        let lhs = bstar[k].clone();
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            for i in 0..m {
                let x = t[(i, k)];
                t[(i, k)] = t[(i, k - 1)];
                t[(i, k - 1)] = x;
            }
            k = k.saturating_sub(1).max(1);
        }
    }
    t
}

fn round(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Gram–Schmidt coefficients `μ` and squared lengths `B` from a Gram matrix.
fn gram_schmidt(g: &IMat) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let m = g.rows;
    let mut mu = vec![vec![BigRational::zero(); m]; m];
    let mut b = vec![BigRational::zero(); m];
    for i in 0..m {
        for j in 0..i {
            let mut x = q(g[(i, j)]);
            for l in 0..j {
                x -= &mu[j][l] * &mu[i][l] * &b[l];
            }
            mu[i][j] = x / &b[j];
        }
        let mut x = q(g[(i, i)]);
        for l in 0..i {
            x -= &mu[i][l] * &mu[i][l] * &b[l];
        }
        b[i] = x;
    }
    (mu, b)
}

/// All integer vectors `z` with `(z − c)ᵀ A (z − c) = r` (or `≤ r` when `at_most`).
pub fn shell(a: &IMat, c: &[BigRational], r: &BigRational, at_most: bool) -> Vec<Vec<i64>> {
    let m = a.rows;
    if m == 0 {
        return if r.is_zero() || (at_most && !r.is_negative()) { vec![vec![]] } else { vec![] };
    }
    if r.is_negative() {
        return vec![];
    }
    let t = lll(a);
    let a2 = t.transpose().mul(a).mul(&t);
    // center in the reduced basis: c2 = t⁻¹ c
    let tinv = linalg::inverse_rational(&linalg::to_rat(&t)).expect("unimodular");
    let c2: Vec<BigRational> = (0..m).map(|i| (0..m).fold(BigRational::zero(), |acc, j| acc + &tinv[i][j] * &c[j])).collect();
    let qf = fp_form(&a2);
    let mut out = Vec::new();
    let mut z = vec![0i64; m];
    fp_rec(m - 1, &qf, &c2, r.clone(), at_most, &mut z, &mut out);
    out.into_iter().map(|s| t.mul_vec(&s)).collect()
}

/// All vectors `z` with nonnegative integer entries and `zᵀ A z = r`, where
/// `A` is positive definite. No basis reduction is applied, so the sign
/// constraint stays a coordinate bound.
pub fn shell_nonneg(a: &IMat, r: &BigRational) -> Vec<Vec<i64>> {
    let m = a.rows;
    if m == 0 {
        return if r.is_zero() { vec![vec![]] } else { vec![] };
    }
    if r.is_negative() {
        return vec![];
    }
    let qf = fp_form(a);
    let c = vec![BigRational::zero(); m];
    let mut out = Vec::new();
    let mut z = vec![0i64; m];
    fp_rec_bounded(m - 1, &qf, &c, r.clone(), &mut z, &mut out, Some(0));
    out
}

/// Upper-triangular form: `Q(x) = Σ qᵢᵢ (xᵢ + Σ_{j>i} qᵢⱼ xⱼ)²`.
fn fp_form(a: &IMat) -> Vec<Vec<BigRational>> {
    let m = a.rows;
    let mut qm = linalg::to_rat(a);
    for i in 0..m {
        for j in i + 1..m {
            qm[j][i] = qm[i][j].clone();
            qm[i][j] = &qm[i][j] / &qm[i][i];
        }
        for k in i + 1..m {
            for l in k..m {
                let x = &qm[k][i] * &qm[i][l];
                qm[k][l] -= x;
            }
        }
    }
    qm
}

fn fp_rec(i: usize, qf: &[Vec<BigRational>], c: &[BigRational], budget: BigRational, at_most: bool, z: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    fp_rec_inner(i, qf, c, budget, at_most, z, out, None)
}

fn fp_rec_bounded(i: usize, qf: &[Vec<BigRational>], c: &[BigRational], budget: BigRational, z: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, min: Option<i64>) {
    fp_rec_inner(i, qf, c, budget, false, z, out, min)
}

#[allow(clippy::too_many_arguments)]
fn fp_rec_inner(
    i: usize,
    qf: &[Vec<BigRational>],
    c: &[BigRational],
    budget: BigRational,
    at_most: bool,
    z: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
    min: Option<i64>,
) {
    let m = qf.len();
    let mut s = c[i].clone();
    for j in i + 1..m {
        s -= &qf[i][j] * (q(z[j]) - &c[j]);
    }
    let bound = &budget / &qf[i][i];
    let (mut lo, hi) = int_range(&s, &bound);
    if let Some(mn) = min {
        lo = lo.max(mn);
    }
    let mut x = lo;
    while x <= hi {
        let d = q(x) - &s;
        let rest = &budget - &qf[i][i] * &d * &d;
        if !rest.is_negative() {
            z[i] = x;
            if i == 0 {
                if at_most || rest.is_zero() {
                    out.push(z.clone());
                }
            } else {
                fp_rec_inner(i - 1, qf, c, rest, at_most, z, out, min);
            }
        }
        x += 1;
    }
    z[i] = 0;
}

/// Integers `x` with `(x − s)² ≤ b`.
fn int_range(s: &BigRational, b: &BigRational) -> (i64, i64) {
    let root = isqrt_floor(b);
    let fl = s.floor().to_integer();
    let ce = s.ceil().to_integer();
    let mut hi = &fl + &root + BigInt::one();
    let mut lo = &ce - &root - BigInt::one();
    let ok = |x: &BigInt| {
        let d = BigRational::from_integer(x.clone()) - s;
        &d * &d <= *b
    };
    while !ok(&hi) && hi >= lo {
        hi -= 1;
    }
    while !ok(&lo) && lo <= hi {
        lo += 1;
    }
    (lo.to_i64().expect("range"), hi.to_i64().expect("range"))
}

fn isqrt_floor(b: &BigRational) -> BigInt {
    if b.is_negative() {
        return BigInt::zero();
    }
    b.floor().to_integer().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::parse;

    #[test]
    fn e8_roots() {
        let e8 = parse("E8").unwrap();
        let a = e8.gram.scale(-1);
        let zero = vec![BigRational::zero(); 8];
        assert_eq!(shell(&a, &zero, &q(2), false).len(), 240);
        assert_eq!(shell(&a, &zero, &q(4), false).len(), 2160);
    }

    #[test]
    fn nonneg_matches_filtered_shell() {
        let a = IMat::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let zero = vec![BigRational::zero(); 3];
        for r in 0..12 {
            let mut full: Vec<_> = shell(&a, &zero, &q(r), false).into_iter().filter(|z| z.iter().all(|&x| x >= 0)).collect();
            full.sort();
            let mut got = shell_nonneg(&a, &q(r));
            got.sort();
            assert_eq!(got, full, "r = {r}");
        }
    }

    #[test]
    fn shifted_center() {
        // (x - 1/2)² = 1/4 has solutions 0 and 1
        let a = IMat::from_rows(&[vec![1]]);
        let c = vec![BigRational::new(1.into(), 2.into())];
        let r = BigRational::new(1.into(), 4.into());
        let mut s = shell(&a, &c, &r, false);
        s.sort();
        assert_eq!(s, vec![vec![0], vec![1]]);
    }
}
