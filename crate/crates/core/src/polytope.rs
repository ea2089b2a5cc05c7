//! Lattice points of convex lattice polygons and polytopes, optionally
//! restricted to the even sublattice `{x : Σ xᵢ ∈ 2ℤ}`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointLattice {
    Full,
    Even,
}

impl PointLattice {
    pub fn contains(self, p: &[i64]) -> bool {
        match self {
            PointLattice::Full => true,
            PointLattice::Even => p.iter().sum::<i64>() % 2 == 0,
        }
    }
}

/// A supporting half-space `normal · x ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct HalfSpace {
    normal: Vec<i64>,
    offset: i64,
}

/// Convex hull of integer points in dimension 2 or 3, stored as the list of
/// its supporting half-spaces.
#[derive(Debug, Clone)]
pub struct Polytope {
    pub vertices: Vec<Vec<i64>>,
    dim: usize,
    facets: Vec<HalfSpace>,
}

impl Polytope {
    pub fn new(vertices: Vec<Vec<i64>>) -> Result<Self> {
        let dim = vertices.first().map_or(0, |v| v.len());
        if !(2..=3).contains(&dim) || vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::Invalid("polytope must be 2- or 3-dimensional".into()));
        }
        let mut facets = Vec::new();
        for normal in candidate_normals(&vertices, dim) {
            let values: Vec<i64> = vertices.iter().map(|v| dot(&normal, v)).collect();
            let max = *values.iter().max().expect("nonempty");
            let min = *values.iter().min().expect("nonempty");
            for (n, off) in [(normal.clone(), max), (normal.iter().map(|x| -x).collect(), -min)] {
                let h = HalfSpace { normal: n, offset: off };
                if !facets.contains(&h) {
                    facets.push(h);
                }
            }
        }
        if facets.is_empty() || facets.iter().any(|h| !is_full(h, &facets)) {
            return Err(Error::Invalid("degenerate polytope".into()));
        }
        Ok(Polytope { vertices, dim, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.facets.iter().all(|h| dot(&h.normal, p) <= h.offset)
    }

    /// Lattice points of the polytope in the chosen lattice, in lexicographic order.
    pub fn lattice_points(&self, lattice: PointLattice) -> Vec<Vec<i64>> {
        let lo: Vec<i64> = (0..self.dim).map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..self.dim).map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut p = lo.clone();
        loop {
            if self.contains(&p) && lattice.contains(&p) {
                out.push(p.clone());
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if p[i] < hi[i] {
                    p[i] += 1;
                    break;
                }
                p[i] = lo[i];
            }
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Normals of all hyperplanes through `dim` vertices.
fn candidate_normals(vs: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let n = vs.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = sub(&vs[j], &vs[i]);
            if dim == 2 {
                out.push(vec![-a[1], a[0]]);
                continue;
            }
            for k in j + 1..n {
                let b = sub(&vs[k], &vs[i]);
                out.push(vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]);
            }
        }
    }
    out.retain(|v| v.iter().any(|&x| x != 0));
    out
}

/// A half-space whose opposite is also present describes a flat polytope.
fn is_full(h: &HalfSpace, all: &[HalfSpace]) -> bool {
    let opp: Vec<i64> = h.normal.iter().map(|x| -x).collect();
    !all.iter().any(|g| g.normal == opp && g.offset == -h.offset)
}

/// The square `[0,side]²`; side 4 is the polytope of `O(4,4)` on `P¹×P¹`.
pub fn square(side: i64) -> Polytope {
    Polytope::new(vec![vec![0, 0], vec![side, 0], vec![side, side], vec![0, side]]).expect("square")
}

/// Pyramid over the square `[0,4]²` with apex `(2,2,2)`.
pub fn pyramid() -> Polytope {
    Polytope::new(vec![vec![0, 0, 0], vec![4, 0, 0], vec![4, 4, 0], vec![0, 4, 0], vec![2, 2, 2]]).expect("pyramid")
}

/// Triangle of `O(4)` on `P(1,1,2)`.
pub fn weighted_triangle() -> Polytope {
    Polytope::new(vec![vec![0, 0], vec![8, 0], vec![0, 4]]).expect("triangle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_counts() {
        assert_eq!(square(4).lattice_points(PointLattice::Full).len(), 25);
        assert_eq!(square(4).lattice_points(PointLattice::Even).len(), 13);
    }

    #[test]
    fn half_square_triangle() {
        let t = Polytope::new(vec![vec![0, 0], vec![4, 0], vec![4, 4]]).unwrap();
        assert_eq!(t.lattice_points(PointLattice::Full).len(), 15);
        assert_eq!(t.lattice_points(PointLattice::Even).len(), 9);
    }

    #[test]
    fn weighted_triangle_has_same_even_count() {
        assert_eq!(weighted_triangle().lattice_points(PointLattice::Even).len(), 13);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(Polytope::new(vec![vec![0, 0], vec![1, 1], vec![2, 2]]).is_err());
        assert!(Polytope::new(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).is_err());
        assert!(Polytope::new(vec![vec![0], vec![1]]).is_err());
    }

    #[test]
    fn pyramid_contains_square() {
        let p = pyramid();
        let base = p.lattice_points(PointLattice::Full).into_iter().filter(|x| x[2] == 0).count();
        assert_eq!(base, 25);
        assert!(p.contains(&[2, 2, 2]));
        assert!(!p.contains(&[0, 0, 1]));
    }
}
