//! Cusps of the Enriques moduli space: invariant maximal parabolic
//! subdiagrams (1-cusps), elliptic rank-9 orbits (Type III rays), irrelevant
//! roots, semitoroidal filtering and the 0-cusp/1-cusp incidence graph.

use crate::diagrams::{self, Chart};
use crate::enumerate::shell;
use crate::error::{Error, Result};
use crate::folding::{
    build_five_foldings, extend_over_u, extend_trivially, fold_diagram, lift_classes, lift_with_transvection, mask_labels, Extension, FoldedDiagram, Folding,
};
use crate::lattice::{coords_in_basis, Lattice, Sublattice, TwoElementaryInvariants};
use crate::linalg::{self, q, IMat};
use crate::roots::CoxeterDiagram;
use crate::subdiagram::{automorphisms, bits, canonical_mask, classify_connected, isotropic_vector, orbits, Analyzer, Mask, SubdiagramReport};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// One 0-cusp: its folding, the unfolded chart diagram and the folded diagram.
#[derive(Debug, Clone)]
pub struct CuspData {
    pub folding: Folding,
    pub unfolded: CoxeterDiagram,
    pub folded: FoldedDiagram,
    /// Automorphisms of the folded diagram.
    pub automorphisms: Vec<Vec<usize>>,
}

impl CuspData {
    pub fn id(&self) -> u8 {
        self.folding.cusp
    }

    /// Dimension of the hyperbolic space of the folded lattice.
    pub fn folded_dim(&self) -> usize {
        self.folded.diagram.lattice.rank() - 1
    }
}

/// The five 0-cusps in Sterk's numbering.
pub fn cusp_data() -> Result<Vec<CuspData>> {
    build_five_foldings()?
        .into_iter()
        .map(|(folding, unfolded)| {
            let folded = fold_diagram(&unfolded, &folding)?;
            let automorphisms = automorphisms(&folded.diagram);
            Ok(CuspData { folding, unfolded, folded, automorphisms })
        })
        .collect()
}

/// An orbit of maximal parabolic subdiagrams of a folded diagram with the
/// invariant unfolded subdiagrams folding onto it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvariantParabolic {
    pub cusp: u8,
    pub folded: SubdiagramReport,
    pub unfolded: Vec<SubdiagramReport>,
    #[serde(skip)]
    pub folded_mask: Mask,
}

/// 1-cusps through 0-cusp `c`: orbits of folded maximal parabolic subdiagrams,
/// each paired with the invariant maximal parabolics of the unfolded diagram
/// that fold onto a member of the orbit.
pub fn invariant_maximal_parabolics(c: &CuspData) -> Result<Vec<InvariantParabolic>> {
    let fd = &c.folded.diagram;
    let mut an = Analyzer::new(fd);
    let folded_mp = an.maximal_parabolics(c.folded_dim());
    let reps = orbits(&folded_mp, &c.automorphisms);
    let mut au = Analyzer::new(&c.unfolded);
    let unfolded_mp = au.maximal_parabolics(c.unfolded.lattice.rank() - 1);
    let mut pre: BTreeMap<Mask, Vec<Mask>> = BTreeMap::new();
    for m in unfolded_mp.into_iter().filter(|&m| c.folding.preserves(m)) {
        let img = c.folded.image_of(m);
        if !folded_mp.contains(&img) {
            return Err(Error::Invalid(format!("cusp {}: invariant parabolic {} folds to non-parabolic {}", c.id(), au.label(m), an.label(img))));
        }
        pre.entry(canonical_mask(img, &c.automorphisms)).or_default().push(m);
    }
    let mut out = Vec::new();
    for rep in reps {
        let ms = pre.get(&rep).cloned().unwrap_or_default();
        if ms.is_empty() {
            return Err(Error::Invalid(format!("cusp {}: folded parabolic {} is not a fold", c.id(), an.label(rep))));
        }
        out.push(InvariantParabolic { cusp: c.id(), folded: an.report(rep), unfolded: ms.iter().map(|&m| au.report(m)).collect(), folded_mask: rep });
    }
    Ok(out)
}

/// Orbits of elliptic subdiagrams of full rank (Type III rays) under the
/// automorphisms of the folded diagram.
pub fn type3_ray_orbits(c: &CuspData) -> Vec<SubdiagramReport> {
    let mut an = Analyzer::new(&c.folded.diagram);
    let ell = an.elliptic_subsets(c.folded_dim());
    orbits(&ell, &c.automorphisms).into_iter().map(|m| an.report(m)).collect()
}

/// Folded vertices coming from roots off the boundary of the triangle or square.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelevanceMarking {
    pub cusp: u8,
    pub irrelevant: Vec<usize>,
    pub subdiagram: SubdiagramReport,
    pub elliptic: bool,
    #[serde(skip)]
    pub mask: Mask,
}

pub fn irrelevant_marking(c: &CuspData) -> RelevanceMarking {
    let mask = c.folded.irrelevant(c.folding.chart, &c.unfolded);
    let mut an = Analyzer::new(&c.folded.diagram);
    RelevanceMarking { cusp: c.id(), irrelevant: mask_labels(&c.folded.diagram, mask), subdiagram: an.report(mask), elliptic: an.is_elliptic(mask), mask }
}

/// Whether a subdiagram has a connected component made only of irrelevant vertices.
pub fn has_irrelevant_component(c: &CuspData, marking: &RelevanceMarking, m: Mask) -> bool {
    let an = Analyzer::new(&c.folded.diagram);
    an.components(m).iter().any(|&comp| comp & !marking.mask == 0)
}

/// Toroidal and semitoroidal divisor counts at one 0-cusp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorCounts {
    pub type2: usize,
    pub type3: usize,
}

pub fn toroidal_divisor_counts(c: &CuspData) -> Result<DivisorCounts> {
    let mut an = Analyzer::new(&c.folded.diagram);
    let type2 = orbits(&an.maximal_parabolics(c.folded_dim()), &c.automorphisms).len();
    let type3 = orbits(&an.elliptic_subsets(c.folded_dim()), &c.automorphisms).len();
    Ok(DivisorCounts { type2, type3 })
}

/// Counts after dropping subdiagrams with a component of irrelevant vertices.
pub fn semitoroidal_divisor_counts(c: &CuspData) -> DivisorCounts {
    let marking = irrelevant_marking(c);
    let mut an = Analyzer::new(&c.folded.diagram);
    let keep = |ms: Vec<Mask>| ms.into_iter().filter(|&m| !has_irrelevant_component(c, &marking, m)).count();
    let type2 = keep(orbits(&an.maximal_parabolics(c.folded_dim()), &c.automorphisms));
    let type3 = keep(orbits(&an.elliptic_subsets(c.folded_dim()), &c.automorphisms));
    DivisorCounts { type2, type3 }
}

/// `T_En = U ⊕ U(2) ⊕ E8(2) = (12,10,0)₂`.
pub const T_EN_INVARIANTS: TwoElementaryInvariants = TwoElementaryInvariants { r: 12, a: 10, delta: 0, sig_plus: 2 };

/// `E8(2) = (8,8,0)₀`, the anti-invariant part of `T_dP`.
pub const E8_2_INVARIANTS: TwoElementaryInvariants = TwoElementaryInvariants { r: 8, a: 8, delta: 0, sig_plus: 0 };

/// `T_dP ⊃ T_En` realized as `U(k) ⊕ T̄` with the lifted involution of one cusp.
#[derive(Debug, Clone)]
pub struct EnModel {
    pub cusp: u8,
    pub extension: Extension,
    /// Fixed lattice of the lifted involution.
    pub t_en: Sublattice,
}

/// Lift the involution of cusp `c` to `T_dP = U(k) ⊕ T̄`: trivially over `U`
/// for cusp 1, over `U(2)` for cusp 2, and for cusps 3, 4 and 5 by the first
/// transvection lift over `U` with fixed lattice `T_En` and anti-invariant
/// lattice `E8(2)`.
pub fn en_model(c: &CuspData) -> Result<EnModel> {
    let tbar = &c.unfolded.lattice;
    let j = &c.folding.matrix;
    let extension = match c.id() {
        1 => extend_trivially(tbar, j, 1)?,
        2 => extend_trivially(tbar, j, 2)?,
        _ => {
            // first transvection lift whose fixed lattice is T_En
            let mut found = None;
            for b in lift_classes(tbar, j)? {
                let ext = lift_with_transvection(tbar, j, &b)?;
                let fixed = ext.lattice.fixed_sublattice(&ext.involution, 1)?;
                let anti = ext.lattice.fixed_sublattice(&ext.involution, -1)?;
                if fixed.lattice.two_elementary_invariants().ok() == Some(T_EN_INVARIANTS)
                    && anti.lattice.two_elementary_invariants().ok() == Some(E8_2_INVARIANTS)
                {
                    found = Some(ext);
                    break;
                }
            }
            found.ok_or_else(|| Error::Invalid(format!("cusp {}: no lift has fixed lattice T_En", c.id())))?
        }
    };
    let t_en = extension.lattice.fixed_sublattice(&extension.involution, 1)?;
    if t_en.lattice.two_elementary_invariants()? != T_EN_INVARIANTS {
        return Err(Error::Invalid(format!("cusp {}: lifted fixed lattice is not T_En", c.id())));
    }
    Ok(EnModel { cusp: c.id(), extension, t_en })
}

impl EnModel {
    /// The isotropic vector `e` of the `U(k)` summand: the 0-cusp itself.
    pub fn cusp_vector(&self) -> Vec<i64> {
        let mut v = vec![0; self.extension.lattice.rank()];
        v[0] = 1;
        v
    }

    /// `x ∈ T̄^{J=1}` as a vector of `T_En ⊂ U(k) ⊕ T̄`.
    pub fn lift(&self, x: &[i64]) -> Result<Vec<i64>> {
        let mut v = vec![0, 0];
        v.extend_from_slice(x);
        if self.extension.involution.mul_vec(&v) != v {
            return Err(Error::Invalid("vector is not fixed by the lift".into()));
        }
        Ok(v)
    }
}

/// Conjugacy invariants of a primitive isotropic `v ∈ T_En ⊂ T_dP` with the
/// involution induced on `v^⊥/v ⊂ T_dP`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineInvariant {
    pub div_en: i64,
    pub div_dp: i64,
    pub fixed: String,
    pub anti: String,
    pub anti_norm2: usize,
    pub anti_norm4: usize,
    /// Fixed lattice of the section lift through the unique discriminant
    /// class with `q ≡ 1 mod 2`, when there is one.
    pub odd_section: String,
}

fn invariant_text(l: &Lattice) -> String {
    match l.two_elementary_invariants() {
        Ok(t) => t.to_string(),
        Err(_) => {
            let s = linalg::smith_big(&l.gram);
            format!("snf{:?}", s.factors.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        }
    }
}

/// Invariants of the isotropic line through `v`.
pub fn line_invariant(m: &EnModel, v: &[i64]) -> Result<LineInvariant> {
    let l = &m.extension.lattice;
    let inv = &m.extension.involution;
    if inv.mul_vec(v) != v || l.norm(v) != 0 {
        return Err(Error::NotIsotropic);
    }
    let ven = coords_in_basis(&m.t_en.embedding, v).ok_or(Error::Invalid("vector not in T_En".into()))?;
    let div_en = m.t_en.lattice.divisibility(&ven)?;
    let div_dp = l.divisibility(v)?;
    let quo = l.isotropic_quotient(v)?;
    // basis of v^⊥: v followed by the quotient representatives
    let n = l.rank();
    let mut cols = vec![v.to_vec()];
    cols.extend(quo.embedding.cols_vec());
    let full = IMat::from_cols(&cols, n);
    let k = quo.embedding.cols;
    let mut induced = IMat::zeros(k, k);
    for (i, col) in quo.embedding.cols_vec().iter().enumerate() {
        let img = inv.mul_vec(col);
        let c = coords_in_basis(&full, &img).ok_or(Error::Invalid("involution does not preserve v^⊥".into()))?;
        for t in 0..k {
            induced[(t, i)] = c[t + 1];
        }
    }
    let ql = &quo.lattice;
    let fixed = ql.fixed_sublattice(&induced, 1)?;
    let anti = ql.fixed_sublattice(&induced, -1)?;
    let neg = anti.lattice.gram.scale(-1);
    let zero = vec![BigRational::zero(); anti.lattice.rank()];
    let count = |r: i64| shell(&neg, &zero, &q(r), false).len();
    Ok(LineInvariant {
        div_en,
        div_dp,
        fixed: invariant_text(&fixed.lattice),
        anti: invariant_text(&anti.lattice),
        anti_norm2: count(2),
        anti_norm4: count(4),
        odd_section: odd_section_invariant(ql, &induced)?,
    })
}

fn odd_section_invariant(l: &Lattice, j: &IMat) -> Result<String> {
    let disc = l.discriminant()?;
    let n = l.rank();
    let two = q(2);
    let mut odd = Vec::new();
    for mask in 1u64..(1 << disc.generators.len()) {
        let mut x = vec![BigRational::zero(); n];
        for (b, g) in disc.generators.iter().enumerate() {
            if mask >> b & 1 == 1 {
                x.iter_mut().zip(g).for_each(|(xi, gi)| *xi += gi);
            }
        }
        let v = l.qnorm(&x);
        if !(&v - (&v / &two).floor() * &two - q(1)).is_zero() {
            continue;
        }
        odd.push(x);
    }
    if odd.len() != 1 {
        return Ok(format!("{} odd classes", odd.len()));
    }
    let ext = extend_over_u(l, j, &odd[0])?;
    Ok(invariant_text(&ext.lattice.fixed_sublattice(&ext.involution, 1)?.lattice))
}

/// Invariants of the five cusp vectors, keyed by invariant.
pub fn zero_cusp_table(models: &[EnModel]) -> Result<BTreeMap<LineInvariant, u8>> {
    let mut table = BTreeMap::new();
    for m in models {
        let inv = line_invariant(m, &m.cusp_vector())?;
        if let Some(prev) = table.insert(inv.clone(), m.cusp) {
            return Err(Error::MergeAmbiguity(format!("0-cusps {prev} and {} share invariants {inv:?}", m.cusp)));
        }
    }
    Ok(table)
}

/// Coefficient bound for the isotropic lines `p·e + q·f` examined in a plane.
pub const PLANE_LINE_BOUND: i64 = 4;

/// 0-cusps of the isotropic lines of the plane spanned by the cusp vector and
/// the isotropic vector of a folded parabolic subdiagram.
pub fn plane_zero_cusps(c: &CuspData, m: &EnModel, table: &BTreeMap<LineInvariant, u8>, parabolic: Mask) -> Result<BTreeSet<u8>> {
    let fd = &c.folded.diagram;
    let an = Analyzer::new(fd);
    let comp = an.components(parabolic)[0];
    let f_fixed = isotropic_vector(fd, &bits(comp));
    let f_amb = c.folded.fixed.embedding.mul_vec(&f_fixed);
    let f = m.lift(&linalg::primitive(&f_amb))?;
    let e = m.cusp_vector();
    let mut out = BTreeSet::new();
    let mut seen = HashSet::new();
    for p in 0..=PLANE_LINE_BOUND {
        for qq in -PLANE_LINE_BOUND..=PLANE_LINE_BOUND {
            if p.gcd(&qq) != 1 || (p == 0 && qq != 1) {
                continue;
            }
            let v: Vec<i64> = e.iter().zip(&f).map(|(a, b)| p * a + qq * b).collect();
            let v = linalg::primitive(&v);
            if !seen.insert(v.clone()) {
                continue;
            }
            let inv = line_invariant(m, &v)?;
            let k = table.get(&inv).ok_or_else(|| Error::Invalid(format!("cusp {}: unclassified isotropic line {inv:?}", c.id())))?;
            out.insert(*k);
        }
    }
    Ok(out)
}

/// Where a 1-cusp shows up: a folded parabolic orbit at one of its 0-cusps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Appearance {
    pub cusp: u8,
    /// Figure-style name: this cusp first, then the other incident cusps.
    pub name: String,
    pub folded: String,
    pub unfolded: Vec<String>,
    pub toroidal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OneCusp {
    /// Incident 0-cusps, concatenated in increasing order.
    pub label: String,
    pub zero_cusps: Vec<u8>,
    pub appearances: Vec<Appearance>,
    pub toroidal_over: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZeroCusp {
    pub label: String,
    pub fixed_lattice: TwoElementaryInvariants,
    pub folded_vertices: usize,
    pub irrelevant: String,
    pub toroidal_over: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IncidenceGraph {
    pub zero_cusps: Vec<ZeroCusp>,
    pub one_cusps: Vec<OneCusp>,
}

impl IncidenceGraph {
    pub fn degree_sum(&self) -> usize {
        self.one_cusps.iter().map(|o| o.zero_cusps.len()).sum()
    }

    pub fn one_cusp(&self, label: &str) -> Option<&OneCusp> {
        self.one_cusps.iter().find(|o| o.label == label)
    }

    /// Names `ij…` of the appearances, cusp of the diagram first.
    pub fn diagram_names(&self) -> Vec<String> {
        self.one_cusps.iter().flat_map(|o| o.appearances.iter().map(|a| a.name.clone())).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph cusps {\n");
        for z in &self.zero_cusps {
            let shape = if z.toroidal_over { "doublecircle" } else { "circle" };
            s += &format!("  z{} [label=\"{}\", shape={shape}];\n", z.label, z.label);
        }
        for o in &self.one_cusps {
            let periph = if o.toroidal_over { 2 } else { 1 };
            s += &format!("  o{} [label=\"{}\", shape=rectangle, peripheries={periph}];\n", o.label, o.label);
            for k in &o.zero_cusps {
                s += &format!("  o{} -- z{};\n", o.label, k);
            }
        }
        s + "}\n"
    }
}

/// The bipartite graph of 0- and 1-cusps. Each invariant parabolic orbit is
/// turned into the isotropic plane it spans with its cusp vector; 1-cusps are
/// merged by the 0-cusp classes of the lines in those planes.
pub fn cusp_incidence_graph(cusps: &[CuspData]) -> Result<IncidenceGraph> {
    let models: Vec<EnModel> = cusps.iter().map(en_model).collect::<Result<_>>()?;
    let table = zero_cusp_table(&models)?;
    let mut by_label: BTreeMap<Vec<u8>, Vec<(u8, InvariantParabolic, bool)>> = BTreeMap::new();
    let mut zero = Vec::new();
    for (c, m) in cusps.iter().zip(&models) {
        let marking = irrelevant_marking(c);
        for p in invariant_maximal_parabolics(c)? {
            let set = plane_zero_cusps(c, m, &table, p.folded_mask)?;
            if !set.contains(&c.id()) {
                return Err(Error::Invalid(format!("cusp {} missing from its own plane", c.id())));
            }
            let tor = !has_irrelevant_component(c, &marking, p.folded_mask);
            by_label.entry(set.into_iter().collect()).or_default().push((c.id(), p, tor));
        }
        zero.push(ZeroCusp {
            label: c.id().to_string(),
            fixed_lattice: c.folded.fixed.lattice.two_elementary_invariants()?,
            folded_vertices: c.folded.diagram.len(),
            irrelevant: marking.subdiagram.type_label(),
            toroidal_over: marking.elliptic,
        });
    }
    let mut ones = Vec::new();
    for (set, apps) in by_label {
        let label: String = set.iter().map(|k| k.to_string()).collect();
        for k in &set {
            let n = apps.iter().filter(|a| a.0 == *k).count();
            if n != 1 {
                return Err(Error::MergeAmbiguity(format!("1-cusp {label}: {n} parabolic orbits at 0-cusp {k}")));
            }
        }
        let appearances: Vec<Appearance> = apps
            .iter()
            .map(|(k, p, tor)| Appearance {
                cusp: *k,
                name: std::iter::once(*k).chain(set.iter().copied().filter(|x| x != k)).map(|x| x.to_string()).collect(),
                folded: p.folded.type_label(),
                unfolded: p.unfolded.iter().map(|u| u.type_label()).collect(),
                toroidal: *tor,
            })
            .collect();
        let toroidal_over = appearances.iter().all(|a| a.toroidal);
        ones.push(OneCusp { label, zero_cusps: set, appearances, toroidal_over });
    }
    Ok(IncidenceGraph { zero_cusps: zero, one_cusps: ones })
}

/// A maximal parabolic orbit of a chart diagram with the cusps whose folding
/// preserves some member of the orbit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FhypParabolic {
    pub chart: String,
    pub representative: SubdiagramReport,
    pub orbit_size: usize,
    pub invariant_under: Vec<u8>,
    /// Root sublattice of `Π^⊥/Π`.
    pub label: String,
}

/// Maximal parabolic orbits of both chart diagrams, flagged by the foldings
/// that preserve them.
pub fn fhyp_unfolded_parabolics() -> Result<Vec<FhypParabolic>> {
    let foldings = build_five_foldings()?;
    let mut out = Vec::new();
    for chart in Chart::ALL {
        let d = diagrams::load(chart)?;
        let aut = automorphisms(&d);
        let mut an = Analyzer::new(&d);
        let mps = an.maximal_parabolics(d.lattice.rank() - 1);
        for rep in orbits(&mps, &aut) {
            let members: BTreeSet<Mask> = aut.iter().map(|p| crate::subdiagram::permute_mask(rep, p)).collect();
            let invariant_under = foldings.iter().filter(|(f, _)| f.chart == chart && members.iter().any(|&m| f.preserves(m))).map(|(f, _)| f.cusp).collect();
            let comp = an.components(rep)[0];
            let iso = isotropic_vector(&d, &bits(comp));
            let quo = d.lattice.isotropic_quotient(&iso)?;
            out.push(FhypParabolic {
                chart: chart.to_string(),
                representative: an.report(rep),
                orbit_size: members.len(),
                invariant_under,
                label: root_sublattice_label(&quo.lattice)?,
            });
        }
    }
    Ok(out)
}

/// ADE type of the sublattice generated by the `−2` vectors of a negative
/// definite lattice, e.g. `E8D8`.
pub fn root_sublattice_label(l: &Lattice) -> Result<String> {
    let n = l.rank();
    let roots = shell(&l.gram.scale(-1), &vec![BigRational::zero(); n], &q(2), false);
    let positive: Vec<Vec<i64>> = roots.into_iter().filter(|r| r.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)).collect();
    let set: HashSet<Vec<i64>> = positive.iter().cloned().collect();
    let simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|a| !positive.iter().any(|b| b != *a && set.contains(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())))
        .cloned()
        .collect();
    if simple.is_empty() {
        return Ok("0".into());
    }
    let d = CoxeterDiagram::from_roots_unchecked(l, simple);
    let an = Analyzer::new(&d);
    let mut types = Vec::new();
    for comp in an.components(an.all()) {
        let t = classify_connected(&d, &bits(comp)).ok_or(Error::Invalid("root system is not of finite type".into()))?;
        types.push(t);
    }
    types.sort_by(|a, b| b.family.cmp(&a.family).then(b.rank.cmp(&a.rank)));
    Ok(types.iter().map(|t| format!("{:?}{}", t.family, t.rank)).collect())
}
