//! Vinberg's algorithm for the reflection chamber of a hyperbolic lattice.

use crate::enumerate;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{self, q, IMat};
use crate::roots::{reflect, CoxeterDiagram};
use crate::subdiagram::Analyzer;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VinbergOptions {
    pub v0: Vec<i64>,
    /// Root norms to search (negative).
    pub norms: Vec<i64>,
    pub max_roots: usize,
    /// Largest `α·v0` examined.
    pub max_height: i64,
}

#[derive(Debug, Clone)]
pub struct VinbergOutcome {
    pub diagram: CoxeterDiagram,
    pub complete: bool,
    /// `(α·v0, α²)` for each accepted root, in acceptance order.
    pub heights: Vec<(i64, i64)>,
}

/// Default controlling vector: `e + f` of a leading hyperbolic plane `U(k)`.
pub fn default_v0(l: &Lattice) -> Option<Vec<i64>> {
    let g = &l.gram;
    if l.rank() >= 2 && g[(0, 0)] == 0 && g[(1, 1)] == 0 && g[(0, 1)] > 0 {
        let mut v = vec![0; l.rank()];
        v[0] = 1;
        v[1] = 1;
        return Some(v);
    }
    None
}

/// Root norms of an even 2-elementary lattice: −2, and −4 with divisibility 2.
pub fn two_elementary_norms() -> Vec<i64> {
    vec![-2, -4]
}

/// All roots `α` with `α² = n` and `α·v0 = k` (both signs when `k = 0`).
pub fn roots_at(l: &Lattice, v0: &[i64], n: i64, k: i64) -> Vec<Vec<i64>> {
    let r = l.rank();
    let t = n.abs() / linalg::gcd_all([n.abs(), 2]);
    // M = { x : G x ∈ tZ^r }
    let s = linalg::smith(&l.gram);
    let mut m = s.v.clone();
    for (i, d) in s.factors.iter().enumerate() {
        let d = d.to_string().parse::<i64>().expect("small invariant factor");
        let scale = t / linalg::gcd_all([t, d]);
        for row in 0..r {
            m[(row, i)] *= scale;
        }
    }
    let w: Vec<i64> = m.transpose().mul_vec(&l.gram.mul_vec(v0));
    let wrow = IMat::from_rows(std::slice::from_ref(&w));
    let ws = linalg::smith(&wrow);
    if ws.rank == 0 {
        return vec![];
    }
    let g = ws.factors[0].to_string().parse::<i64>().unwrap();
    if k % g != 0 {
        return vec![];
    }
    let u = ws.u[(0, 0)];
    let zp: Vec<i64> = ws.v.col(0).iter().map(|x| x * (k / g) * u).collect();
    debug_assert_eq!(linalg::dot(&w, &zp), k);
    let kcols: Vec<usize> = (1..r).collect();
    let kern = ws.v.select(&(0..r).collect::<Vec<_>>(), &kcols);
    let b = m.mul(&kern);
    let xp = m.mul_vec(&zp);
    let a = b.transpose().mul(&l.gram).mul(&b).scale(-1);
    let bv = b.transpose().mul_vec(&l.gram.mul_vec(&xp));
    let ainv = linalg::inverse_rational(&linalg::to_rat(&a)).expect("v0 must be timelike");
    let dim = a.rows;
    let c: Vec<BigRational> = (0..dim).map(|i| (0..dim).fold(BigRational::zero(), |acc, j| acc + &ainv[i][j] * q(bv[j]))).collect();
    let mut cac = BigRational::zero();
    for i in 0..dim {
        for j in 0..dim {
            cac += &c[i] * &c[j] * q(a[(i, j)]);
        }
    }
    let rr = q(l.norm(&xp)) - q(n) + cac;
    let sols = enumerate::shell(&a, &c, &rr, false);
    let mut out: Vec<Vec<i64>> = sols
        .into_iter()
        .map(|s| {
            let bs = b.mul_vec(&s);
            xp.iter().zip(&bs).map(|(x, y)| x + y).collect::<Vec<i64>>()
        })
        .filter(|alpha| l.norm(alpha) == n && l.dot(alpha, v0) == k && l.divisibility(alpha).map(|d| (2 * d) % n == 0).unwrap_or(false))
        .collect();
    out.sort();
    out
}

/// Enumerates roots at a level that pair nonnegatively with the height-0
/// simple roots, by searching over the values `y = (α·βᵢ) ≥ 0`. Only
/// available when the height-0 roots span `v0^⊥`, i.e. `v0` is a vertex.
pub struct DominantSearch {
    v0: Vec<i64>,
    v0_norm: i64,
    /// inverse of `[v0 | β]ᵀ G`
    solve: Vec<Vec<BigRational>>,
    /// `−det(G0)·G0⁻¹` for the Gram matrix `G0` of the height-0 simple roots
    form: IMat,
    scale: i64,
}

impl DominantSearch {
    pub fn new(l: &Lattice, v0: &[i64], simple0: &[Vec<i64>]) -> Option<DominantSearch> {
        let r = l.rank();
        if simple0.len() + 1 != r {
            return None;
        }
        let mut cols = vec![v0.to_vec()];
        cols.extend(simple0.iter().cloned());
        let b = IMat::from_cols(&cols, r);
        let m = b.transpose().mul(&l.gram);
        let solve = linalg::inverse_rational(&linalg::to_rat(&m))?;
        let sel: Vec<usize> = (0..simple0.len()).collect();
        let b0 = IMat::from_cols(simple0, r);
        let g0 = b0.transpose().mul(&l.gram).mul(&b0);
        let det = g0.determinant();
        let d = det.abs().to_string().parse::<i64>().ok()?;
        let inv = linalg::inverse_rational(&linalg::to_rat(&g0))?;
        let mut form = IMat::zeros(sel.len(), sel.len());
        for i in 0..sel.len() {
            for j in 0..sel.len() {
                let x = -(&inv[i][j] * q(d));
                if !x.is_integer() {
                    return None;
                }
                form[(i, j)] = x.to_integer().to_string().parse().ok()?;
            }
        }
        Some(DominantSearch { v0: v0.to_vec(), v0_norm: l.norm(v0), solve, form, scale: d })
    }

    /// Roots `α` with `α² = n`, `α·v0 = k` and `α·βᵢ ≥ 0` for every height-0 simple root.
    pub fn roots_at(&self, l: &Lattice, n: i64, k: i64) -> Vec<Vec<i64>> {
        let target = (BigRational::new(BigInt::from(k * k), BigInt::from(self.v0_norm)) - q(n)) * q(self.scale);
        let r = l.rank();
        let mut out: Vec<Vec<i64>> = enumerate::shell_nonneg(&self.form, &target)
            .into_iter()
            .filter_map(|y| {
                let mut rhs = vec![q(k)];
                rhs.extend(y.iter().map(|&v| q(v)));
                let mut alpha = Vec::with_capacity(r);
                for i in 0..r {
                    let x = (0..r).fold(BigRational::zero(), |acc, j| acc + &self.solve[i][j] * &rhs[j]);
                    if !x.is_integer() {
                        return None;
                    }
                    alpha.push(x.to_integer().to_string().parse::<i64>().ok()?);
                }
                Some(alpha)
            })
            .filter(|alpha| l.norm(alpha) == n && l.dot(alpha, &self.v0) == k && l.divisibility(alpha).map(|d| (2 * d) % n == 0).unwrap_or(false))
            .collect();
        out.sort();
        out
    }
}

fn lex_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Simple roots of the finite root system orthogonal to `v0`, for the
/// positive system given by lexicographic order of coordinates.
pub fn stabilizer_simple_roots(l: &Lattice, v0: &[i64], norms: &[i64]) -> Vec<Vec<i64>> {
    let mut pos: Vec<Vec<i64>> = norms.iter().flat_map(|&n| roots_at(l, v0, n, 0)).filter(|v| lex_positive(v)).collect();
    pos.sort();
    pos.dedup();
    let set: std::collections::HashSet<Vec<i64>> = pos.iter().cloned().collect();
    let mut simple: Vec<Vec<i64>> = pos
        .iter()
        .filter(|a| {
            pos.iter().all(|b| {
                if b == *a {
                    return true;
                }
                let img = reflect(l, a, b).expect("root");
                set.contains(&img)
            })
        })
        .cloned()
        .collect();
    simple.sort();
    simple
}

/// Run Vinberg's algorithm from the controlling vector `v0`.
pub fn vinberg(l: &Lattice, opts: &VinbergOptions) -> Result<VinbergOutcome> {
    let sig = l.signature();
    if sig.plus != 1 || sig.zero != 0 {
        return Err(Error::NotHyperbolic);
    }
    let v0 = &opts.v0;
    if l.norm(v0) <= 0 {
        return Err(Error::Invalid("controlling vector must have positive norm".into()));
    }
    let dim = l.rank() - 1;
    let mut accepted = stabilizer_simple_roots(l, v0, &opts.norms);
    if std::env::var_os("VINBERG_TRACE").is_some() {
        eprintln!("height 0: {} simple roots", accepted.len());
    }
    let mut heights: Vec<(i64, i64)> = accepted.iter().map(|a| (0, l.norm(a))).collect();
    let dominant = DominantSearch::new(l, v0, &accepted);
    // next height per norm
    let mut next_k: Vec<i64> = vec![1; opts.norms.len()];
    let mut complete = false;
    let mut last_checked = 0usize;
    loop {
        // smallest distance k²/|n| among the pending levels
        let mut best: Option<BigRational> = None;
        for (i, &n) in opts.norms.iter().enumerate() {
            if next_k[i] > opts.max_height {
                continue;
            }
            let d = BigRational::new(BigInt::from(next_k[i] * next_k[i]), BigInt::from(n.abs()));
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        let Some(dist) = best else { break };
        let mut cands = Vec::new();
        for (i, &n) in opts.norms.iter().enumerate() {
            if next_k[i] > opts.max_height {
                continue;
            }
            let d = BigRational::new(BigInt::from(next_k[i] * next_k[i]), BigInt::from(n.abs()));
            if d == dist {
                let level = match &dominant {
                    Some(ds) => ds.roots_at(l, n, next_k[i]),
                    None => roots_at(l, v0, n, next_k[i]),
                };
                for a in level {
                    cands.push((next_k[i], n, a));
                }
                next_k[i] += 1;
            }
        }
        cands.sort_by(|x, y| x.2.cmp(&y.2));
        if std::env::var_os("VINBERG_TRACE").is_some() {
            eprintln!("level {dist} candidates {} accepted {}", cands.len(), accepted.len());
        }
        for (k, n, a) in cands {
            if accepted.iter().all(|b| l.dot(&a, b) >= 0) {
                accepted.push(a);
                heights.push((k, n));
                if accepted.len() > opts.max_roots {
                    return Err(Error::BoundExhausted(opts.max_roots));
                }
            }
        }
        if accepted.len() > last_checked {
            last_checked = accepted.len();
            let d = CoxeterDiagram::from_roots_unchecked(l, accepted.clone());
            if d.len() > 64 {
                return Err(Error::BoundExhausted(64));
            }
            let mut an = Analyzer::new(&d);
            if an.has_finite_volume(dim) {
                complete = true;
                break;
            }
        }
    }
    let diagram = CoxeterDiagram::from_roots(l, accepted)?;
    Ok(VinbergOutcome { diagram, complete, heights })
}
