//! Roots, reflections and Coxeter diagrams built from lists of roots.

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeJson};
use crate::linalg::{self, IMat};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub vector: Vec<i64>,
    pub norm: i64,
    pub div: i64,
}

impl Root {
    pub fn new(l: &Lattice, v: Vec<i64>) -> Result<Root> {
        if !is_root(l, &v)? {
            return Err(Error::NotRoot);
        }
        let norm = l.norm(&v);
        let div = l.divisibility(&v)?;
        Ok(Root { vector: v, norm, div })
    }
}

/// `v² < 0` and `2·div(v) ∈ v²·ℤ`.
pub fn is_root(l: &Lattice, v: &[i64]) -> Result<bool> {
    if v.len() != l.rank() {
        return Err(Error::Dimension { expected: l.rank(), got: v.len() });
    }
    let n = l.norm(v);
    let d = l.divisibility(v)?;
    Ok(n < 0 && (2 * d) % n == 0)
}

/// `w_α(v) = v − 2(α·v)/(α·α) α`.
pub fn reflect(l: &Lattice, alpha: &[i64], v: &[i64]) -> Result<Vec<i64>> {
    let n = l.norm(alpha);
    if n >= 0 {
        return Err(Error::NotRoot);
    }
    let p = l.dot(alpha, v);
    if (2 * p) % n != 0 {
        return Err(Error::NotRoot);
    }
    let c = 2 * p / n;
    Ok(v.iter().zip(alpha).map(|(x, a)| x - c * a).collect())
}

/// Matrix of the reflection in `alpha` acting on coordinates.
pub fn reflection_matrix(l: &Lattice, alpha: &[i64]) -> Result<IMat> {
    if !is_root(l, alpha)? {
        return Err(Error::NotRoot);
    }
    let r = l.rank();
    let mut m = IMat::zeros(r, r);
    for j in 0..r {
        let mut e = vec![0; r];
        e[j] = 1;
        let img = reflect(l, alpha, &e)?;
        for i in 0..r {
            m[(i, j)] = img[i];
        }
    }
    Ok(m)
}

/// Angle class between two roots, decided from the exact value of
/// `g² = (αᵢ·αⱼ)² / (αᵢ² αⱼ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    None,
    Single,
    Double,
    Triple,
    Thick,
    /// `g² > 1`, stored as the reduced fraction `num/den`.
    Dotted {
        num: i64,
        den: i64,
    },
    /// `0 < g² < 1` but not the cosine of a crystallographic angle.
    Other {
        num: i64,
        den: i64,
    },
}

impl EdgeClass {
    pub fn from_products(p: i64, ni: i64, nj: i64) -> EdgeClass {
        if p == 0 {
            return EdgeClass::None;
        }
        let num = p * p;
        let den = ni * nj;
        if 4 * num == den {
            EdgeClass::Single
        } else if 2 * num == den {
            EdgeClass::Double
        } else if 4 * num == 3 * den {
            EdgeClass::Triple
        } else if num == den {
            EdgeClass::Thick
        } else {
            let g = gcd(num, den);
            if num > den {
                EdgeClass::Dotted { num: num / g, den: den / g }
            } else {
                EdgeClass::Other { num: num / g, den: den / g }
            }
        }
    }

    /// Coxeter exponent `m` of the dihedral angle `π/m`; `None` for infinite order.
    pub fn coxeter_order(&self) -> Option<u32> {
        match self {
            EdgeClass::None => Some(2),
            EdgeClass::Single => Some(3),
            EdgeClass::Double => Some(4),
            EdgeClass::Triple => Some(6),
            _ => None,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            EdgeClass::None => "none".into(),
            EdgeClass::Single => "single".into(),
            EdgeClass::Double => "double".into(),
            EdgeClass::Triple => "triple".into(),
            EdgeClass::Thick => "thick".into(),
            EdgeClass::Dotted { num, den } => format!("dotted:{num}/{den}"),
            EdgeClass::Other { num, den } => format!("other:{num}/{den}"),
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    linalg::gcd_all([a, b])
}

/// Simple roots of a chamber together with their Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterDiagram {
    pub lattice: Lattice,
    pub roots: Vec<Vec<i64>>,
    /// Display index of each vertex (e.g. `α_0..α_21`).
    pub labels: Vec<usize>,
    pub gram: IMat,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub lattice: LatticeJson,
    pub roots: Vec<Vec<i64>>,
    pub edges: Vec<(usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<usize>,
}

impl CoxeterDiagram {
    /// Build a diagram, checking the root condition and the chamber condition `αᵢ·αⱼ ≥ 0`.
    pub fn from_roots(l: &Lattice, roots: Vec<Vec<i64>>) -> Result<CoxeterDiagram> {
        for r in &roots {
            if !is_root(l, r)? {
                return Err(Error::NotRoot);
            }
        }
        let d = CoxeterDiagram::from_roots_unchecked(l, roots);
        for i in 0..d.len() {
            for j in 0..i {
                if d.gram[(i, j)] < 0 {
                    return Err(Error::NotChamber(j, i));
                }
            }
        }
        Ok(d)
    }

    pub fn from_roots_unchecked(l: &Lattice, roots: Vec<Vec<i64>>) -> CoxeterDiagram {
        let n = roots.len();
        let mut gram = IMat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let p = l.dot(&roots[i], &roots[j]);
                gram[(i, j)] = p;
                gram[(j, i)] = p;
            }
        }
        CoxeterDiagram { lattice: l.clone(), labels: (0..n).collect(), roots, gram }
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.roots.len());
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn norm(&self, i: usize) -> i64 {
        self.gram[(i, i)]
    }

    pub fn edge(&self, i: usize, j: usize) -> EdgeClass {
        if i == j {
            return EdgeClass::None;
        }
        EdgeClass::from_products(self.gram[(i, j)], -self.gram[(i, i)], -self.gram[(j, j)])
    }

    pub fn edges(&self) -> Vec<(usize, usize, EdgeClass)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let e = self.edge(i, j);
                if e != EdgeClass::None {
                    out.push((i, j, e));
                }
            }
        }
        out
    }

    /// Vertex index carrying display label `k`.
    pub fn index_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&x| x == label)
    }

    pub fn root_by_label(&self, label: usize) -> &[i64] {
        &self.roots[self.index_of(label).expect("label present")]
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            lattice: self.lattice.to_json(),
            roots: self.roots.clone(),
            edges: self.edges().into_iter().map(|(i, j, e)| (i, j, e.tag())).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<CoxeterDiagram> {
        let l = Lattice::from_json(&j.lattice)?;
        let mut d = CoxeterDiagram::from_roots(&l, j.roots.clone())?;
        if !j.labels.is_empty() {
            d.labels = j.labels.clone();
        }
        for (a, b, tag) in &j.edges {
            if d.edge(*a, *b).tag() != *tag {
                return Err(Error::Invalid(format!("edge ({a},{b}) recorded as {tag}, computed {}", d.edge(*a, *b))));
            }
        }
        if j.edges.len() != d.edges().len() {
            return Err(Error::Invalid("edge list incomplete".into()));
        }
        Ok(d)
    }

    /// Integer linear relations among the roots (basis of the kernel of the root matrix).
    pub fn relations(&self) -> Vec<Vec<i64>> {
        let m = IMat::from_cols(&self.roots, self.lattice.rank());
        linalg::kernel(&m).cols_vec()
    }

    /// Whether `Σ lhs_i α_i = Σ rhs_i α_i` and that vector is isotropic.
    pub fn verify_relation(&self, lhs: &[i64], rhs: &[i64]) -> bool {
        let r = self.lattice.rank();
        let comb = |c: &[i64]| -> Vec<i64> {
            let mut v = vec![0; r];
            for (k, &x) in c.iter().enumerate() {
                for i in 0..r {
                    v[i] += x * self.roots[k][i];
                }
            }
            v
        };
        if lhs.len() != self.len() || rhs.len() != self.len() {
            return false;
        }
        let a = comb(lhs);
        a == comb(rhs) && self.lattice.norm(&a) == 0
    }

    /// Graphviz rendering: white vertices for norm −2, black for norm −4.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n  node [shape=circle, width=0.3, fontsize=10];\n");
        for i in 0..self.len() {
            let fill = if self.norm(i) == -2 { "white" } else { "black" };
            let font = if self.norm(i) == -2 { "black" } else { "white" };
            s.push_str(&format!("  v{i} [label=\"{}\", style=filled, fillcolor={fill}, fontcolor={font}];\n", self.labels[i]));
        }
        for (i, j, e) in self.edges() {
            let attr = match e {
                EdgeClass::Single => "".to_string(),
                EdgeClass::Double => " [color=\"black:invis:black\"]".into(),
                EdgeClass::Triple => " [color=\"black:black:black\"]".into(),
                EdgeClass::Thick => " [penwidth=4]".into(),
                EdgeClass::Dotted { .. } => " [style=dotted]".into(),
                EdgeClass::Other { .. } => " [style=dashed]".into(),
                EdgeClass::None => continue,
            };
            s.push_str(&format!("  v{i} -- v{j}{attr};\n"));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::parse;

    #[test]
    fn reflect_examples() {
        let l = parse("U+<-2>").unwrap();
        assert_eq!(reflect(&l, &[0, 0, 1], &[1, 1, 1]).unwrap(), vec![1, 1, -1]);
        assert_eq!(reflect(&l, &[0, 0, 1], &[0, 0, 1]).unwrap(), vec![0, 0, -1]);
    }

    #[test]
    fn edge_classes() {
        assert_eq!(EdgeClass::from_products(1, 2, 2), EdgeClass::Single);
        assert_eq!(EdgeClass::from_products(2, 2, 4), EdgeClass::Double);
        assert_eq!(EdgeClass::from_products(2, 2, 2), EdgeClass::Thick);
        assert_eq!(EdgeClass::from_products(3, 2, 2), EdgeClass::Dotted { num: 9, den: 4 });
        assert_eq!(EdgeClass::from_products(3, 2, 6), EdgeClass::Triple);
    }

    #[test]
    fn root_condition() {
        let l = parse("U(2)+E8").unwrap();
        // e + f in U(2) has norm 4; e - f has norm -4 and divisibility 2
        assert!(is_root(&l, &[1, -1, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap());
        let m = parse("U+<-4>").unwrap();
        // (1,-1,0): norm -2, root; (0,0,1): norm -4 div 4 -> root; (1,-2,0): norm -4 div 1 -> not a root
        assert!(is_root(&m, &[1, -1, 0]).unwrap());
        assert!(!is_root(&m, &[1, -2, 0]).unwrap());
    }
}
