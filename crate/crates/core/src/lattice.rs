//! Even integral lattices given by Gram matrices: standard lattices,
//! signatures, discriminant groups and 2-elementary invariants, and the
//! sublattice constructions used throughout the crate.

use crate::error::{Error, Result};
use crate::linalg::{self, q, IMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub gram: IMat,
}

/// JSON shape `{"label": string, "gram": [[int]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub label: String,
    pub gram: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoElementaryInvariants {
    pub r: usize,
    pub a: usize,
    pub delta: u8,
    pub sig_plus: usize,
}

impl fmt::Display for TwoElementaryInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})_{}", self.r, self.a, self.delta, self.sig_plus)
    }
}

/// A sublattice with its induced form and inclusion matrix (columns are basis vectors in ambient coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    pub lattice: Lattice,
    pub embedding: IMat,
}

impl Lattice {
    pub fn new(gram: IMat) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Lattice { label: None, gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Lattice::new(IMat::from_rows(rows))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson { label: self.label.clone().unwrap_or_default(), gram: self.gram.to_rows() }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let gram = if j.gram.is_empty() { IMat::zeros(0, 0) } else { IMat::from_rows(&j.gram) };
        let mut l = Lattice::new(gram)?;
        if !j.label.is_empty() {
            l.label = Some(j.label.clone());
        }
        Ok(l)
    }

    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let gb = self.gram.mul_vec(b);
        linalg::dot(a, &gb)
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.dot(a, a)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)] % 2 == 0)
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { label: None, gram: self.gram.direct_sum(&other.gram) }
    }

    pub fn scaled(&self, k: i64) -> Lattice {
        Lattice { label: None, gram: self.gram.scale(k) }
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    /// Sylvester inertia computed by exact rational symmetric elimination.
    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }

    /// gcd of all products `v·w`.
    pub fn divisibility(&self, v: &[i64]) -> Result<i64> {
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        let g = linalg::gcd_all(self.gram.mul_vec(v));
        Ok(g)
    }

    /// Discriminant group invariant factors (those > 1) with generators of the
    /// dual lattice written as rational vectors in the lattice basis.
    pub fn discriminant(&self) -> Result<Discriminant> {
        let n = self.rank();
        let s = linalg::smith_big(&self.gram);
        if s.rank < n {
            return Err(Error::Degenerate);
        }
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        for (i, d) in s.factors.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            // entries reduced mod d: the class in L*/L is unchanged
            let g: Vec<BigRational> = (0..n).map(|r| BigRational::new(s.v[r][i].mod_floor(d), d.clone())).collect();
            orders.push(d.clone());
            gens.push(g);
        }
        Ok(Discriminant { orders, generators: gens })
    }

    /// `q(x) = x·x` for a rational vector.
    pub fn qnorm(&self, x: &[BigRational]) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = self.gram[(i, j)];
                if g != 0 && !x[j].is_zero() {
                    acc += &x[i] * &x[j] * q(g);
                }
            }
        }
        acc
    }

    pub fn qdot(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = self.gram[(i, j)];
                if g != 0 && !y[j].is_zero() {
                    acc += &x[i] * &y[j] * q(g);
                }
            }
        }
        acc
    }

    pub fn two_elementary_invariants(&self) -> Result<TwoElementaryInvariants> {
        if !self.is_even() {
            return Err(Error::NotEven);
        }
        let disc = self.discriminant()?;
        let two = BigInt::from(2);
        for d in &disc.orders {
            if *d != two {
                return Err(Error::NotTwoElementary(d.to_string()));
            }
        }
        let delta = disc.generators.iter().any(|g| !self.qnorm(g).is_integer());
        Ok(TwoElementaryInvariants { r: self.rank(), a: disc.orders.len(), delta: delta as u8, sig_plus: self.signature().plus })
    }

    /// Nikulin's uniqueness criterion for indefinite even 2-elementary lattices.
    pub fn is_isomorphic_2elem(&self, other: &Lattice) -> Result<bool> {
        for l in [self, other] {
            let s = l.signature();
            if s.plus == 0 || s.minus == 0 {
                return Err(Error::Definite);
            }
        }
        let a = self.two_elementary_invariants()?;
        let b = other.two_elementary_invariants()?;
        Ok(a == b && self.signature() == other.signature())
    }

    pub fn is_isometry(&self, g: &IMat) -> bool {
        g.rows == self.rank() && g.cols == self.rank() && g.transpose().mul(&self.gram).mul(g) == self.gram
    }

    pub fn is_involution(&self, g: &IMat) -> bool {
        self.is_isometry(g) && g.mul(g) == IMat::identity(self.rank())
    }

    /// Sublattice spanned by the given columns; induced Gram `Bᵀ G B`.
    pub fn sublattice(&self, basis: IMat) -> Sublattice {
        let gram = basis.transpose().mul(&self.gram).mul(&basis);
        Sublattice { lattice: Lattice { label: None, gram }, embedding: basis }
    }

    /// Saturated eigenlattice `ker(g - sign·id)`.
    pub fn fixed_sublattice(&self, g: &IMat, sign: i64) -> Result<Sublattice> {
        if !self.is_involution(g) {
            return Err(Error::NotInvolution);
        }
        let n = self.rank();
        let mut m = g.clone();
        for i in 0..n {
            m[(i, i)] -= sign;
        }
        Ok(self.sublattice(linalg::kernel(&m)))
    }

    /// Orthogonal complement of the span of the given columns.
    pub fn orthogonal_complement(&self, s: &IMat) -> Sublattice {
        if s.cols == 0 {
            return self.sublattice(IMat::identity(self.rank()));
        }
        let m = s.transpose().mul(&self.gram);
        self.sublattice(linalg::kernel(&m))
    }

    /// `e^⊥ / e` for a primitive isotropic `e`, with a basis of representatives.
    pub fn isotropic_quotient(&self, e: &[i64]) -> Result<Sublattice> {
        if e.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        if self.norm(e) != 0 {
            return Err(Error::NotIsotropic);
        }
        if linalg::gcd_all(e.iter().copied()) != 1 {
            return Err(Error::NotPrimitive);
        }
        let n = self.rank();
        let perp = self.orthogonal_complement(&IMat::from_cols(&[e.to_vec()], n));
        let k = &perp.embedding;
        let coords = coords_in_basis(k, e).ok_or(Error::NotPrimitive)?;
        let basis = linalg::complete_basis(&coords).ok_or(Error::NotPrimitive)?;
        let rest: Vec<usize> = (1..basis.cols).collect();
        let b = k.mul(&basis.select(&(0..basis.rows).collect::<Vec<_>>(), &rest));
        Ok(self.sublattice(b))
    }

    pub fn inverse_gram(&self) -> Option<linalg::QMat> {
        linalg::inverse_rational(&linalg::to_rat(&self.gram))
    }

    /// Whether a rational vector lies in the dual lattice (all products with basis vectors integral).
    pub fn in_dual(&self, x: &[BigRational]) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            let mut acc = BigRational::zero();
            for j in 0..n {
                acc += &x[j] * q(self.gram[(j, i)]);
            }
            acc.is_integer()
        })
    }
}

/// Integer coordinates of `v` in the column basis `b` (which must span a saturated sublattice containing `v`).
pub fn coords_in_basis(b: &IMat, v: &[i64]) -> Option<Vec<i64>> {
    let cols = b.cols;
    if cols == 0 {
        return if v.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
    }
    let rows = linalg::independent_columns(&b.transpose());
    let sq = b.select(&rows, &(0..cols).collect::<Vec<_>>());
    let rhs: Vec<i64> = rows.iter().map(|&i| v[i]).collect();
    let x = linalg::solve_rational(&sq, &rhs)?;
    let xi: Option<Vec<i64>> = x.iter().map(|r| if r.is_integer() { r.to_integer().to_i64() } else { None }).collect();
    let xi = xi?;
    if b.mul_vec(&xi) == v {
        Some(xi)
    } else {
        None
    }
}

#[derive(Debug, Clone)]
pub struct Discriminant {
    pub orders: Vec<BigInt>,
    pub generators: Vec<Vec<BigRational>>,
}

pub fn signature_of(g: &IMat) -> Signature {
    let n = g.rows;
    let mut a = linalg::to_rat(g);
    let mut active: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0, 0);
    loop {
        if active.is_empty() {
            break;
        }
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // all diagonal zero: look for an off-diagonal entry and mix rows
                let mut found = None;
                'o: for &i in &active {
                    for &j in &active {
                        if i != j && !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'o;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                // replace basis vector i by i + j: row/col i += row/col j
                for k in 0..n {
                    let x = a[j][k].clone();
                    a[i][k] += x;
                }
                for k in 0..n {
                    let x = a[k][j].clone();
                    a[k][i] += x;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        active.retain(|&x| x != p);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let x = &f * &a[p][j];
                a[i][j] -= x;
            }
        }
    }
    Signature { plus, minus, zero: n - plus - minus }
}

fn unit_root_gram(adj: &[(usize, usize)], n: usize) -> IMat {
    let mut g = IMat::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = -2;
    }
    for &(i, j) in adj {
        g[(i, j)] = 1;
        g[(j, i)] = 1;
    }
    g
}

/// Negative-definite root lattice `A_n` (chain).
pub fn a_n(n: usize) -> Lattice {
    let adj: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Lattice { label: Some(format!("A{n}")), gram: unit_root_gram(&adj, n) }
}

/// Negative-definite `D_n` (n ≥ 2): chain 0..n-2 with node n-1 attached to n-3.
pub fn d_n(n: usize) -> Lattice {
    assert!(n >= 2);
    if n == 2 {
        return Lattice { label: Some("D2".into()), gram: IMat::from_rows(&[vec![-2, 0], vec![0, -2]]) };
    }
    if n == 3 {
        return Lattice { label: Some("D3".into()), gram: a_n(3).gram };
    }
    let mut adj: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    adj.push((n - 3, n - 1));
    Lattice { label: Some(format!("D{n}")), gram: unit_root_gram(&adj, n) }
}

/// Negative-definite `E_n`, n ∈ {6,7,8}, Bourbaki numbering (node 2 attached to node 4).
pub fn e_n(n: usize) -> Lattice {
    assert!((6..=8).contains(&n));
    // 0-based: 0-2-3-4-..., 1 attached to 3
    let mut adj = vec![(0, 2), (1, 3)];
    for i in 2..n - 1 {
        adj.push((i, i + 1));
    }
    Lattice { label: Some(format!("E{n}")), gram: unit_root_gram(&adj, n) }
}

pub fn hyperbolic_plane(k: i64) -> Lattice {
    Lattice { label: None, gram: IMat::from_rows(&[vec![0, k], vec![k, 0]]) }
}

/// Parse a direct-sum expression such as `U+U(2)+E8(2)`, `U(2)+E8^2`, `<2>+<-2>`,
/// or one of the named lattices `L`, `T_dP`, `T_En`, `S_dP`, `S_En`.
pub fn parse(expr: &str) -> Result<Lattice> {
    let named = match expr.trim() {
        "L" => Some("U+U+U+E8+E8"),
        "T_dP" => Some("U+U(2)+E8+E8"),
        "T_En" => Some("U+U(2)+E8(2)"),
        "S_dP" => Some("U(2)"),
        "S_En" => Some("U(2)+E8(2)"),
        _ => None,
    };
    let src = named.unwrap_or(expr);
    let mut p = Parser { s: src.as_bytes(), pos: 0 };
    let mut gram = IMat::zeros(0, 0);
    loop {
        p.skip_ws();
        let term = p.term()?;
        gram = gram.direct_sum(&term.gram);
        p.skip_ws();
        if p.pos >= p.s.len() {
            break;
        }
        if p.s[p.pos] == b'+' || p.s[p.pos] == b'.' {
            p.pos += 1;
        } else {
            return Err(p.err("expected `+`"));
        }
    }
    Ok(Lattice { label: Some(expr.trim().to_string()), gram })
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| Error::Parse { pos: start, msg: "expected integer".into() })
    }

    fn term(&mut self) -> Result<Lattice> {
        let start = self.pos;
        let base = if self.pos < self.s.len() && self.s[self.pos] == b'<' {
            self.pos += 1;
            let k = self.int()?;
            if self.pos >= self.s.len() || self.s[self.pos] != b'>' {
                return Err(self.err("expected `>`"));
            }
            self.pos += 1;
            Lattice { label: None, gram: IMat::from_rows(&[vec![k]]) }
        } else {
            let c = *self.s.get(self.pos).ok_or_else(|| self.err("expected lattice name"))?;
            self.pos += 1;
            match c {
                b'U' => hyperbolic_plane(1),
                b'A' | b'D' | b'E' => {
                    let n = self.int()?;
                    if n <= 0 || n > 24 {
                        return Err(Error::Parse { pos: start, msg: format!("rank {n} out of range") });
                    }
                    let n = n as usize;
                    match c {
                        b'A' => a_n(n),
                        b'D' if n >= 2 => d_n(n),
                        b'E' if (6..=8).contains(&n) => e_n(n),
                        _ => return Err(Error::UnknownLattice(String::from_utf8_lossy(&self.s[start..self.pos]).into())),
                    }
                }
                _ => return Err(Error::UnknownLattice(String::from_utf8_lossy(&self.s[start..self.pos]).into())),
            }
        };
        let mut l = base;
        if self.pos < self.s.len() && self.s[self.pos] == b'(' {
            self.pos += 1;
            let k = self.int()?;
            if k <= 0 {
                return Err(Error::BadScale(k));
            }
            if self.pos >= self.s.len() || self.s[self.pos] != b')' {
                return Err(self.err("expected `)`"));
            }
            self.pos += 1;
            l = l.scaled(k);
        }
        if self.pos < self.s.len() && self.s[self.pos] == b'^' {
            self.pos += 1;
            let m = self.int()?;
            if m <= 0 {
                return Err(self.err("exponent must be positive"));
            }
            let one = l.clone();
            for _ in 1..m {
                l = l.direct_sum(&one);
            }
        }
        Ok(l)
    }
}

/// Order-2 elements of the discriminant group enumerated as sums of generators.
pub fn discriminant_form_values(l: &Lattice) -> Result<Vec<BigRational>> {
    let d = l.discriminant()?;
    let k = d.generators.len();
    let n = l.rank();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let mut x = vec![BigRational::zero(); n];
        for (b, g) in d.generators.iter().enumerate() {
            if mask >> b & 1 == 1 {
                for i in 0..n {
                    x[i] += &g[i];
                }
            }
        }
        let v = l.qnorm(&x);
        let two = BigRational::from_integer(BigInt::from(2));
        let r = &v - (&v / &two).floor() * &two;
        out.push(r);
    }
    Ok(out)
}

/// Index of `M₁ ⊕ M₂` in `L` for the two eigenlattices of an involution.
pub fn eigen_index(l: &Lattice, g: &IMat) -> Result<BigInt> {
    let p = l.fixed_sublattice(g, 1)?;
    let m = l.fixed_sublattice(g, -1)?;
    let mut cols = p.embedding.cols_vec();
    cols.extend(m.embedding.cols_vec());
    let b = IMat::from_cols(&cols, l.rank());
    Ok(b.determinant().abs())
}
