//! Involutions of the two hyperbolic lattices, folded roots and folded
//! Coxeter diagrams, and the five foldings giving the 0-cusps of the
//! Enriques moduli space.

use crate::diagrams::{self, Chart};
use crate::error::{Error, Result};
use crate::lattice::{coords_in_basis, Lattice, Sublattice, TwoElementaryInvariants};
use crate::linalg::{self, q, IMat};
use crate::roots::{is_root, reflection_matrix, CoxeterDiagram};
use crate::subdiagram::{mask_of, Mask};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// An involution `J` of the lattice of a chart diagram: a diagram symmetry
/// followed by reflections in pairwise orthogonal crossed roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Folding {
    pub cusp: u8,
    pub chart: Chart,
    /// Vertex permutation of the unfolded diagram.
    pub perm: Vec<usize>,
    /// Vertex indices of the roots reflected in.
    pub crossed: Vec<usize>,
    /// `J` acting on ambient coordinates.
    pub matrix: IMat,
}

/// `{"cusp": k, "perm": [labels], "crossed": [labels]}` in display labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoldingJson {
    pub cusp: u8,
    pub perm: Vec<usize>,
    pub crossed: Vec<usize>,
}

/// The case of the root trichotomy a folded vertex falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FoldCase {
    /// `α² = −2`, `J(α) = α`.
    FixedMinus2,
    /// `α² = −4`, `J(α) = α`.
    FixedMinus4,
    /// `α² = −2`, `α·J(α) = 0`, folded norm `−4`.
    OrthogonalPair,
    /// Anything else; never produced by a valid folding.
    Other,
}

#[derive(Debug, Clone)]
pub struct FoldedDiagram {
    pub cusp: u8,
    /// Saturated fixed lattice; folded roots are written in its basis.
    pub fixed: Sublattice,
    pub diagram: CoxeterDiagram,
    /// Unfolded vertex orbit under the diagram permutation, per folded vertex.
    pub origin: Vec<Vec<usize>>,
    /// Folded roots in ambient coordinates.
    pub ambient: Vec<Vec<i64>>,
    pub cases: Vec<FoldCase>,
}

/// `α` if `I(α) = α`, else `α + I(α)`.
pub fn folded_vector(i: &IMat, alpha: &[i64]) -> Vec<i64> {
    let img = i.mul_vec(alpha);
    if img == alpha {
        alpha.to_vec()
    } else {
        alpha.iter().zip(&img).map(|(a, b)| a + b).collect()
    }
}

/// Lattice isometry sending root `i` to root `perm[i]`, if one exists.
pub fn lift_permutation(d: &CoxeterDiagram, perm: &[usize]) -> Result<IMat> {
    let r = d.lattice.rank();
    if perm.len() != d.len() {
        return Err(Error::Dimension { expected: d.len(), got: perm.len() });
    }
    let src = IMat::from_cols(&d.roots, r);
    let dst_cols: Vec<Vec<i64>> = perm.iter().map(|&p| d.roots[p].clone()).collect();
    let dst = IMat::from_cols(&dst_cols, r);
    let sel = linalg::independent_columns(&src);
    if sel.len() != r {
        return Err(Error::Invalid("roots do not span the lattice".into()));
    }
    let rows: Vec<usize> = (0..r).collect();
    let a = src.select(&rows, &sel);
    let b = dst.select(&rows, &sel);
    let ainv = linalg::inverse_rational(&linalg::to_rat(&a)).ok_or(Error::Degenerate)?;
    let mut j = IMat::zeros(r, r);
    for i in 0..r {
        for k in 0..r {
            let x = (0..r).fold(BigRational::zero(), |acc, t| acc + q(b[(i, t)]) * &ainv[t][k]);
            if !x.is_integer() {
                return Err(Error::NotIsometry);
            }
            j[(i, k)] = x.to_integer().to_i64().ok_or(Error::NotIsometry)?;
        }
    }
    if j.mul(&src) != dst || !d.lattice.is_isometry(&j) {
        return Err(Error::NotIsometry);
    }
    Ok(j)
}

/// Product of reflections in the given roots (rightmost applied first).
pub fn reflections_product(l: &Lattice, roots: &[Vec<i64>]) -> Result<IMat> {
    let mut m = IMat::identity(l.rank());
    for r in roots {
        m = reflection_matrix(l, r)?.mul(&m);
    }
    Ok(m)
}

impl Folding {
    /// Build from a vertex permutation and crossed vertices of `d`.
    pub fn new(d: &CoxeterDiagram, chart: Chart, cusp: u8, perm: Vec<usize>, crossed: Vec<usize>) -> Result<Folding> {
        for (a, &i) in crossed.iter().enumerate() {
            if perm[i] != i {
                return Err(Error::Invalid(format!("crossed vertex {} is moved", d.labels[i])));
            }
            for &j in &crossed[..a] {
                if d.gram[(i, j)] != 0 {
                    return Err(Error::Invalid("crossed roots are not orthogonal".into()));
                }
            }
        }
        let p = lift_permutation(d, &perm)?;
        let refl: Vec<Vec<i64>> = crossed.iter().map(|&i| d.roots[i].clone()).collect();
        let matrix = reflections_product(&d.lattice, &refl)?.mul(&p);
        if !d.lattice.is_involution(&matrix) {
            return Err(Error::NotInvolution);
        }
        Ok(Folding { cusp, chart, perm, crossed, matrix })
    }

    /// Build from display labels.
    pub fn from_labels(d: &CoxeterDiagram, chart: Chart, cusp: u8, perm: &dyn Fn(usize) -> usize, crossed: &[usize]) -> Result<Folding> {
        let perm: Vec<usize> = d.labels.iter().map(|&k| chart.index(perm(k))).collect();
        let crossed: Vec<usize> = crossed.iter().map(|&k| chart.index(k)).collect();
        Folding::new(d, chart, cusp, perm, crossed)
    }

    pub fn to_json(&self, d: &CoxeterDiagram) -> FoldingJson {
        FoldingJson { cusp: self.cusp, perm: self.perm.iter().map(|&p| d.labels[p]).collect(), crossed: self.crossed.iter().map(|&c| d.labels[c]).collect() }
    }

    pub fn fixed_lattice(&self, l: &Lattice) -> Result<Sublattice> {
        l.fixed_sublattice(&self.matrix, 1)
    }

    pub fn anti_invariant_lattice(&self, l: &Lattice) -> Result<Sublattice> {
        l.fixed_sublattice(&self.matrix, -1)
    }

    /// Expected fixed-lattice invariants: `(10,10,0)` for cusp 1, `(10,8,0)` otherwise.
    pub fn expected_invariants(&self) -> TwoElementaryInvariants {
        let a = if self.cusp == 1 { 10 } else { 8 };
        TwoElementaryInvariants { r: 10, a, delta: 0, sig_plus: 1 }
    }

    /// Whether a vertex set is mapped to itself and contains every crossed vertex.
    pub fn preserves(&self, m: Mask) -> bool {
        crate::subdiagram::permute_mask(m, &self.perm) == m && self.crossed.iter().all(|&c| m >> c & 1 == 1)
    }
}

/// Label permutation of each of the five foldings.
pub fn cusp_label_map(cusp: u8) -> (Chart, fn(usize) -> usize, Vec<usize>) {
    fn flip(k: usize) -> usize {
        20 - k
    }
    fn rotation(k: usize) -> usize {
        match k {
            0..=15 => (k + 8) % 16,
            16 => 18,
            18 => 16,
            17 => 19,
            19 => 17,
            _ => k,
        }
    }
    fn diagonal(k: usize) -> usize {
        match k {
            0..=15 => (16 - k) % 16,
            17 => 19,
            19 => 17,
            _ => k,
        }
    }
    fn horizontal(k: usize) -> usize {
        match k {
            0..=15 => (28 - k) % 16,
            16 => 19,
            19 => 16,
            17 => 18,
            18 => 17,
            20 => 21,
            21 => 20,
            _ => k,
        }
    }
    fn identity(k: usize) -> usize {
        k
    }
    match cusp {
        1 => (Chart::TwoElementary, rotation, vec![]),
        2 => (Chart::Unimodular, flip, vec![]),
        3 => (Chart::TwoElementary, diagonal, vec![20]),
        4 => (Chart::TwoElementary, horizontal, vec![]),
        5 => (Chart::TwoElementary, identity, (1..16).step_by(2).collect()),
        _ => panic!("cusps are numbered 1..=5"),
    }
}

/// The five foldings, in cusp order 1..=5, on the frozen diagrams.
pub fn build_five_foldings() -> Result<Vec<(Folding, CoxeterDiagram)>> {
    let d1800 = diagrams::load(Chart::Unimodular)?;
    let d1820 = diagrams::load(Chart::TwoElementary)?;
    (1..=5)
        .map(|k| {
            let (chart, map, crossed) = cusp_label_map(k);
            let d = match chart {
                Chart::Unimodular => &d1800,
                Chart::TwoElementary => &d1820,
            };
            Ok((Folding::from_labels(d, chart, k, &map, &crossed)?, d.clone()))
        })
        .collect()
}

/// Fold a diagram: keep the folded vectors of its roots that have negative
/// norm and are roots of the fixed lattice.
pub fn fold_diagram(d: &CoxeterDiagram, f: &Folding) -> Result<FoldedDiagram> {
    let l = &d.lattice;
    let j = &f.matrix;
    let fixed = f.fixed_lattice(l)?;
    let mut found: Vec<(usize, Vec<usize>, Vec<i64>, FoldCase)> = Vec::new();
    for i in 0..d.len() {
        let alpha = &d.roots[i];
        let v = folded_vector(j, alpha);
        if v.iter().all(|&x| x == 0) || l.norm(&v) >= 0 {
            continue;
        }
        if found.iter().any(|(_, _, w, _)| *w == v) {
            continue;
        }
        let coords = coords_in_basis(&fixed.embedding, &v).ok_or(Error::Invalid("folded vector not fixed".into()))?;
        if !is_root(&fixed.lattice, &coords)? {
            continue;
        }
        let img = j.mul_vec(alpha);
        let n = l.norm(alpha);
        let case = if img == *alpha {
            match n {
                -2 => FoldCase::FixedMinus2,
                -4 => FoldCase::FixedMinus4,
                _ => FoldCase::Other,
            }
        } else if n == -2 && l.dot(alpha, &img) == 0 && l.norm(&v) == -4 {
            FoldCase::OrthogonalPair
        } else {
            FoldCase::Other
        };
        let mut orbit = vec![i, f.perm[i]];
        orbit.sort_unstable();
        orbit.dedup();
        found.push((d.labels[i], orbit, v, case));
    }
    found.sort_by_key(|x| x.0);
    let mut coords = Vec::new();
    for (_, _, v, _) in &found {
        coords.push(coords_in_basis(&fixed.embedding, v).expect("checked above"));
    }
    let fl = fixed.lattice.clone().with_label(format!("fixed lattice of cusp {}", f.cusp));
    let diagram = CoxeterDiagram::from_roots(&fl, coords)?.with_labels(found.iter().map(|x| x.0).collect());
    Ok(FoldedDiagram {
        cusp: f.cusp,
        fixed: Sublattice { lattice: fl, embedding: fixed.embedding },
        diagram,
        origin: found.iter().map(|x| x.1.clone()).collect(),
        ambient: found.iter().map(|x| x.2.clone()).collect(),
        cases: found.iter().map(|x| x.3).collect(),
    })
}

impl FoldedDiagram {
    /// Folded vertices whose unfolded orbit lies inside the vertex set `m`.
    pub fn image_of(&self, m: Mask) -> Mask {
        (0..self.diagram.len()).filter(|&i| self.origin[i].iter().all(|&v| m >> v & 1 == 1)).fold(0, |acc, i| acc | (1 << i))
    }

    /// Folded vertices obtained from irrelevant unfolded roots.
    pub fn irrelevant(&self, chart: Chart, unfolded: &CoxeterDiagram) -> Mask {
        let relevant = chart.relevant_labels();
        (0..self.diagram.len()).filter(|&i| self.origin[i].iter().any(|&v| !relevant.contains(&unfolded.labels[v]))).fold(0, |acc, i| acc | (1 << i))
    }
}

/// Candidate family of the involution search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchFamily {
    /// Reflections in 8 orthogonal roots of the 19-root diagram.
    A,
    /// The diagonal symmetry of the 22-root diagram and one reflection in a fixed vertex.
    B,
    /// Reflections in 8 orthogonal roots of the 22-root diagram.
    C,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchCandidate {
    pub family: SearchFamily,
    /// Labels of the roots reflected in.
    pub reflected: Vec<usize>,
    pub fixed_rank: usize,
    /// Invariants of the fixed lattice, or why they are undefined.
    pub invariants: std::result::Result<TwoElementaryInvariants, String>,
}

impl SearchCandidate {
    /// `U⊕E8(2) = (10,8,0)₁`.
    pub fn is_u_e8_2(&self) -> bool {
        matches!(self.invariants, Ok(TwoElementaryInvariants { r: 10, a: 8, delta: 0, sig_plus: 1 }))
    }

    /// `U(2)⊕E8(2) = (10,10,0)₁`.
    pub fn is_u2_e8_2(&self) -> bool {
        matches!(self.invariants, Ok(TwoElementaryInvariants { r: 10, a: 10, delta: 0, sig_plus: 1 }))
    }
}

fn candidate(d: &CoxeterDiagram, family: SearchFamily, base: &IMat, reflected: &[usize]) -> SearchCandidate {
    let l = &d.lattice;
    let roots: Vec<Vec<i64>> = reflected.iter().map(|&i| d.roots[i].clone()).collect();
    let labels = reflected.iter().map(|&i| d.labels[i]).collect();
    let result = reflections_product(l, &roots).map(|r| r.mul(base)).and_then(|m| l.fixed_sublattice(&m, 1));
    match result {
        Ok(fixed) => SearchCandidate {
            family,
            reflected: labels,
            fixed_rank: fixed.lattice.rank(),
            invariants: fixed.lattice.two_elementary_invariants().map_err(|e| e.to_string()),
        },
        Err(e) => SearchCandidate { family, reflected: labels, fixed_rank: 0, invariants: Err(e.to_string()) },
    }
}

/// Pairwise orthogonal vertex subsets of a given size.
pub fn orthogonal_subsets(d: &CoxeterDiagram, size: usize) -> Vec<Vec<usize>> {
    let n = d.len();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(d: &CoxeterDiagram, start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if cur.iter().all(|&u| d.gram[(u, v)] == 0) {
                cur.push(v);
                rec(d, v + 1, n, size, cur, out);
                cur.pop();
            }
        }
    }
    rec(d, 0, n, size, &mut cur, &mut out);
    out
}

/// The candidate involutions of one family, each with its fixed-lattice invariants.
pub fn search_involutions(family: SearchFamily) -> Result<Vec<SearchCandidate>> {
    let chart = match family {
        SearchFamily::A => Chart::Unimodular,
        SearchFamily::B | SearchFamily::C => Chart::TwoElementary,
    };
    let d = diagrams::load(chart)?;
    let id = IMat::identity(d.lattice.rank());
    let mut out: Vec<SearchCandidate> = match family {
        SearchFamily::A | SearchFamily::C => orthogonal_subsets(&d, 8).par_iter().map(|s| candidate(&d, family, &id, s)).collect(),
        SearchFamily::B => {
            let (_, diag, _) = cusp_label_map(3);
            let perm: Vec<usize> = d.labels.iter().map(|&k| chart.index(diag(k))).collect();
            let p = lift_permutation(&d, &perm)?;
            [0, 8, 16, 18, 20, 21].iter().map(|&k| candidate(&d, family, &p, &[chart.index(k)])).collect()
        }
    };
    out.sort_by(|a, b| a.reflected.cmp(&b.reflected));
    Ok(out)
}

/// Type of the orthogonal complement of the twisted section in `U ⊕ T̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplementType {
    U,
    U2,
    /// `⟨2⟩ ⊕ ⟨−2⟩`
    I11Twice,
}

#[derive(Debug, Clone)]
pub struct Extension {
    /// `U ⊕ T̄` with `U = ⟨e, f⟩` in the first two coordinates.
    pub lattice: Lattice,
    pub involution: IMat,
    /// Complement of the lifted copy of `T̄`, for section lifts.
    pub complement: Option<ComplementType>,
}

/// Extend an involution `J` of `T̄` to `U ⊕ T̄`: `J` on the section
/// `x ↦ x + a(x)e` and the identity on its orthogonal complement. `a` is a
/// dual vector written in the basis of `T̄ ⊗ ℚ`.
pub fn extend_over_u(tbar: &Lattice, j: &IMat, a: &[BigRational]) -> Result<Extension> {
    let n = tbar.rank();
    if !tbar.in_dual(a) {
        return Err(Error::NotInDual);
    }
    let g = &tbar.gram;
    // a(x) = aᵀ G x as a row of rationals
    let arow: Vec<BigRational> = (0..n).map(|k| (0..n).fold(BigRational::zero(), |acc, i| acc + &a[i] * q(g[(i, k)]))).collect();
    let ja: Vec<BigRational> = (0..n).map(|i| (0..n).fold(BigRational::zero(), |acc, k| acc + q(j[(i, k)]) * &a[k])).collect();
    let a_of = |x: &[BigRational]| -> BigRational { arow.iter().zip(x).fold(BigRational::zero(), |acc, (r, v)| acc + r * v) };
    let to_i = |x: BigRational| -> Result<i64> {
        if !x.is_integer() {
            return Err(Error::Invalid("involution does not extend integrally for this section".into()));
        }
        x.to_integer().to_i64().ok_or(Error::Invalid("overflow".into()))
    };
    // basis order: e, f, t_1..t_n
    let mut m = IMat::zeros(n + 2, n + 2);
    m[(0, 0)] = 1;
    // I(f) = f − a + J a + (a(Ja) − a(a)) e
    m[(1, 1)] = 1;
    m[(0, 1)] = to_i(a_of(&ja) - a_of(a))?;
    for i in 0..n {
        m[(i + 2, 1)] = to_i(&ja[i] - &a[i])?;
    }
    // I(t_k) = J t_k + (a(J t_k) − a(t_k)) e
    for k in 0..n {
        let jt: Vec<BigRational> = (0..n).map(|i| q(j[(i, k)])).collect();
        m[(0, k + 2)] = to_i(a_of(&jt) - &arow[k])?;
        for i in 0..n {
            m[(i + 2, k + 2)] = j[(i, k)];
        }
    }
    let lattice = crate::lattice::hyperbolic_plane(1).direct_sum(tbar);
    if !lattice.is_involution(&m) {
        return Err(Error::NotInvolution);
    }
    // complement of the section: span of e and f − a, saturated
    let mut sec = Vec::new();
    for k in 0..n {
        let mut col = vec![0i64; n + 2];
        col[0] = to_i(arow[k].clone())?;
        col[k + 2] = 1;
        sec.push(col);
    }
    let comp = lattice.orthogonal_complement(&IMat::from_cols(&sec, n + 2));
    let cg = &comp.lattice.gram;
    let det = comp.lattice.determinant();
    let complement = if det == (-1).into() {
        ComplementType::U
    } else if cg.data.iter().all(|x| x % 2 == 0) && (0..2).all(|i| cg[(i, i)] % 4 == 0) {
        ComplementType::U2
    } else {
        ComplementType::I11Twice
    };
    Ok(Extension { lattice, involution: m, complement: Some(complement) })
}

/// Extend `J` to `U(scale) ⊕ T̄` as the identity on the first summand.
pub fn extend_trivially(tbar: &Lattice, j: &IMat, scale: i64) -> Result<Extension> {
    let lattice = crate::lattice::hyperbolic_plane(scale).direct_sum(tbar);
    let involution = IMat::identity(2).direct_sum(j);
    if !lattice.is_involution(&involution) {
        return Err(Error::NotInvolution);
    }
    let complement = match scale {
        1 => ComplementType::U,
        2 => ComplementType::U2,
        _ => return Err(Error::BadScale(scale)),
    };
    Ok(Extension { lattice, involution, complement: Some(complement) })
}

/// The Eichler transvection `x ↦ x − (x·b)e + (x·e)b − ½b²(x·e)e` of
/// `U ⊕ T̄` for `b ∈ T̄`, in the basis `e, f, t_1, …`.
pub fn eichler_transvection(tbar: &Lattice, b: &[i64]) -> IMat {
    let n = tbar.rank();
    let mut m = IMat::identity(n + 2);
    let gb = tbar.gram.mul_vec(b);
    m[(0, 1)] = -tbar.norm(b) / 2;
    for i in 0..n {
        m[(i + 2, 1)] = b[i];
        m[(0, i + 2)] = -gb[i];
    }
    m
}

/// The lift `E_{e,b} ∘ (id ⊕ J)` of `J` to `U ⊕ T̄`; an involution iff `J b = −b`.
pub fn lift_with_transvection(tbar: &Lattice, j: &IMat, b: &[i64]) -> Result<Extension> {
    let lattice = crate::lattice::hyperbolic_plane(1).direct_sum(tbar);
    let involution = eichler_transvection(tbar, b).mul(&IMat::identity(2).direct_sum(j));
    if !lattice.is_involution(&involution) {
        return Err(Error::NotInvolution);
    }
    Ok(Extension { lattice, involution, complement: None })
}

/// Representatives `b` of `T̄^{J=−1} / (1−J)T̄`. Every lift of `J` to
/// `U ⊕ T̄` fixing `e` is conjugate to the transvection lift of one of them.
pub fn lift_classes(tbar: &Lattice, j: &IMat) -> Result<Vec<Vec<i64>>> {
    let anti = tbar.fixed_sublattice(j, -1)?.embedding;
    let n = tbar.rank();
    let k = anti.cols;
    let mut m = IMat::zeros(k, n);
    for t in 0..n {
        let mut col: Vec<i64> = (0..n).map(|i| -j[(i, t)]).collect();
        col[t] += 1;
        let c = coords_in_basis(&anti, &col).ok_or(Error::Invalid("(1−J)x is not anti-invariant".into()))?;
        for i in 0..k {
            m[(i, t)] = c[i];
        }
    }
    let s = linalg::smith(&m);
    if s.rank < k {
        return Err(Error::Degenerate);
    }
    let orders: Vec<i64> = s.factors.iter().map(|d| d.to_i64().expect("small")).collect();
    let gens = anti.mul(&s.u_inv);
    let mut out = vec![vec![0i64; n]];
    for (i, &d) in orders.iter().enumerate() {
        let g = gens.col(i);
        let prev = std::mem::take(&mut out);
        for v in prev {
            for c in 0..d {
                out.push(v.iter().zip(&g).map(|(x, y)| x + c * y).collect());
            }
        }
    }
    Ok(out)
}

/// Root-trichotomy scan outcome.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TrichotomyReport {
    pub height: i64,
    pub roots_examined: u64,
    pub fixed_minus2: u64,
    pub fixed_minus4: u64,
    pub orthogonal_pair: u64,
    pub violations: Vec<Vec<i64>>,
    /// One example per case, in the order of the three cases.
    pub witnesses: Vec<Option<Vec<i64>>>,
}

/// `T_dP = U ⊕ U(2) ⊕ E8 ⊕ E8` in coordinates `(v, w, e, e')`, where `w`
/// stands for the anti-diagonal `(w, −w)` of `U ⊕ U`.
pub fn t_dp() -> Lattice {
    crate::lattice::parse("U+U(2)+E8+E8").expect("static").with_label("T_dP")
}

/// The involution `(v, w, e, e') ↦ (v, w, −e', −e)` on [`t_dp`]; its fixed lattice is `T_En`.
pub fn i_nik_on_t_dp() -> IMat {
    let mut m = IMat::zeros(20, 20);
    for i in 0..4 {
        m[(i, i)] = 1;
    }
    for k in 0..8 {
        m[(4 + k, 12 + k)] = -1;
        m[(12 + k, 4 + k)] = -1;
    }
    m
}

/// Classify every root `α` of `T_dP` whose folded vector has negative norm,
/// among those with hyperbolic coordinates in `[−h, h]` and E8⊕E8 component
/// of norm at least `−2h`.
pub fn verify_root_trichotomy(h: i64) -> Result<TrichotomyReport> {
    let l = t_dp();
    let inv = i_nik_on_t_dp();
    let fixed = l.fixed_sublattice(&inv, 1)?;
    let solver = CoordSolver::new(&fixed.embedding);
    let e8 = crate::lattice::e_n(8);
    // E8 vectors by norm, down to −2h
    let zero = vec![BigRational::zero(); 8];
    let mut by_norm: Vec<Vec<Vec<i64>>> = Vec::new();
    for m in 0..=h {
        by_norm.push(crate::enumerate::shell(&e8.gram.scale(-1), &zero, &q(2 * m), false));
    }
    // hyperbolic parts, grouped by norm
    let mut hyp: std::collections::BTreeMap<i64, Vec<[i64; 4]>> = Default::default();
    for x in itertools_box(4, h) {
        let p = 2 * x[0] * x[1] + 4 * x[2] * x[3];
        hyp.entry(p).or_default().push([x[0], x[1], x[2], x[3]]);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..=h as usize {
        for b in 0..=(h as usize - a) {
            pairs.push((a, b));
        }
    }
    let partial: Vec<TrichotomyReport> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut rep = TrichotomyReport { witnesses: vec![None, None, None], ..Default::default() };
            let e_norm = -2 * (a + b) as i64;
            for n in [-2i64, -4] {
                let Some(hs) = hyp.get(&(n - e_norm)) else { continue };
                for e in &by_norm[a] {
                    for e2 in &by_norm[b] {
                        // the folded vector has negative norm iff (e + e')² > 2n
                        let sum: Vec<i64> = e.iter().zip(e2).map(|(x, y)| x + y).collect();
                        if e8.norm(&sum) <= 2 * n {
                            continue;
                        }
                        for hv in hs {
                            let mut alpha = Vec::with_capacity(20);
                            alpha.extend_from_slice(hv);
                            alpha.extend_from_slice(e);
                            alpha.extend_from_slice(e2);
                            classify_root(&l, &inv, &fixed, &solver, &alpha, &mut rep);
                        }
                    }
                }
            }
            rep
        })
        .collect();
    let mut out = TrichotomyReport { height: h, witnesses: vec![None, None, None], ..Default::default() };
    for p in partial {
        out.roots_examined += p.roots_examined;
        out.fixed_minus2 += p.fixed_minus2;
        out.fixed_minus4 += p.fixed_minus4;
        out.orthogonal_pair += p.orthogonal_pair;
        out.violations.extend(p.violations);
        for (w, pw) in out.witnesses.iter_mut().zip(p.witnesses) {
            if w.is_none() {
                *w = pw;
            }
        }
    }
    out.violations.sort();
    Ok(out)
}

fn itertools_box(dim: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (-h..=h).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Integer coordinates with respect to a fixed column basis, via a
/// precomputed scaled left inverse.
struct CoordSolver {
    basis: IMat,
    rows: Vec<usize>,
    adj: IMat,
    den: i64,
}

impl CoordSolver {
    fn new(basis: &IMat) -> Self {
        let rows = linalg::independent_columns(&basis.transpose());
        let sq = basis.select(&rows, &(0..basis.cols).collect::<Vec<_>>());
        let inv = linalg::inverse_rational(&linalg::to_rat(&sq)).expect("independent rows");
        let den = inv.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let k = basis.cols;
        let mut adj = IMat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let x = &inv[i][j] * BigRational::from_integer(den.clone());
                adj[(i, j)] = x.to_integer().to_i64().expect("small inverse");
            }
        }
        CoordSolver { basis: basis.clone(), rows, adj, den: den.to_i64().expect("small denominator") }
    }

    fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        let rhs: Vec<i64> = self.rows.iter().map(|&i| v[i]).collect();
        let scaled = self.adj.mul_vec(&rhs);
        if scaled.iter().any(|x| x % self.den != 0) {
            return None;
        }
        let x: Vec<i64> = scaled.iter().map(|x| x / self.den).collect();
        (self.basis.mul_vec(&x) == v).then_some(x)
    }
}

fn classify_root(l: &Lattice, inv: &IMat, fixed: &Sublattice, solver: &CoordSolver, alpha: &[i64], rep: &mut TrichotomyReport) {
    if !matches!(is_root(l, alpha), Ok(true)) {
        return;
    }
    let img = inv.mul_vec(alpha);
    let folded: Vec<i64> = if img == alpha { alpha.to_vec() } else { alpha.iter().zip(&img).map(|(a, b)| a + b).collect() };
    let fnorm = l.norm(&folded);
    if fnorm >= 0 {
        return;
    }
    rep.roots_examined += 1;
    let n = l.norm(alpha);
    let coords = solver.coords(&folded);
    let root_in_fixed = coords.as_ref().is_some_and(|c| matches!(is_root(&fixed.lattice, c), Ok(true)));
    let case = if !root_in_fixed {
        None
    } else if img == alpha && n == -2 {
        Some(0)
    } else if img == alpha && n == -4 {
        Some(1)
    } else if n == -2 && l.dot(alpha, &img) == 0 && fnorm == -4 && !matches!(is_root(l, &folded), Ok(true)) {
        Some(2)
    } else {
        None
    };
    match case {
        Some(c) => {
            match c {
                0 => rep.fixed_minus2 += 1,
                1 => rep.fixed_minus4 += 1,
                _ => rep.orthogonal_pair += 1,
            }
            if rep.witnesses[c].is_none() {
                rep.witnesses[c] = Some(alpha.to_vec());
            }
        }
        None => rep.violations.push(alpha.to_vec()),
    }
}

/// Indices of a mask as labels of a diagram.
pub fn mask_labels(d: &CoxeterDiagram, m: Mask) -> Vec<usize> {
    crate::subdiagram::bits(m).into_iter().map(|i| d.labels[i]).collect()
}

/// Mask of a list of labels.
pub fn labels_mask(d: &CoxeterDiagram, labels: &[usize]) -> Mask {
    mask_of(&labels.iter().map(|&k| d.index_of(k).expect("label")).collect::<Vec<_>>())
}
