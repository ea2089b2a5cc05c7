//! Oracles shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use enriques_cusps::diagrams::Chart;
use enriques_cusps::folding::Folding;
use enriques_cusps::ias::{Glue, Place, SingularityInventory, SymingtonPolygon, Vec2};
use enriques_cusps::lattice::Lattice;
use enriques_cusps::linalg::{dot, kernel, primitive, IMat};
use enriques_cusps::roots::CoxeterDiagram;
use enriques_cusps::subdiagram::{bits, isotropic_vector, Analyzer, Kind, Mask};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

// ---------------------------------------------------------------------------
// brute-force subdiagram classification

/// Connected components of a vertex subset, by flood fill over nonzero products.
pub fn brute_components(g: &IMat, vs: &[usize]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = vs.to_vec();
    let mut out = Vec::new();
    while let Some(v) = left.pop() {
        let mut comp = vec![v];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            let (near, far): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&w| g[(u, w)] != 0);
            comp.extend(near);
            left = far;
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn principal_minors(m: &IMat) -> Vec<BigInt> {
    let n = m.rows;
    (1u32..(1 << n))
        .map(|s| {
            let idx: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
            m.select(&idx, &idx).determinant()
        })
        .collect()
}

/// Kind and rank of a subdiagram from definiteness of `−G` alone.
pub fn brute_kind(g: &IMat, vs: &[usize]) -> (Kind, usize) {
    if vs.is_empty() {
        return (Kind::Elliptic, 0);
    }
    let neg = g.select(vs, vs).scale(-1);
    let minors = principal_minors(&neg);
    if minors.iter().all(|d| d.is_positive()) {
        return (Kind::Elliptic, vs.len());
    }
    let psd = minors.iter().all(|d| !d.is_negative());
    let comps = brute_components(g, vs);
    let all_singular = comps.iter().all(|c| g.select(c, c).determinant().is_zero());
    if psd && all_singular {
        (Kind::Parabolic, vs.len() - comps.len())
    } else {
        (Kind::Indefinite, 0)
    }
}

/// Elliptic subsets with `k` vertices and parabolic subsets of rank `k`, by
/// scanning every subset.
pub fn brute_subsets(g: &IMat, k: usize) -> (BTreeSet<Mask>, BTreeSet<Mask>) {
    let n = g.rows;
    let mut ell = BTreeSet::new();
    let mut par = BTreeSet::new();
    for m in 1u64..(1 << n) {
        let vs = bits(m);
        match brute_kind(g, &vs) {
            (Kind::Elliptic, r) if r == k => {
                ell.insert(m);
            }
            (Kind::Parabolic, r) if r == k => {
                par.insert(m);
            }
            _ => {}
        }
    }
    (ell, par)
}

/// A toy diagram whose roots are the standard basis of its own Gram matrix.
pub fn toy_diagram(g: IMat) -> CoxeterDiagram {
    let n = g.rows;
    let l = Lattice::new(g).expect("symmetric");
    let roots = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    CoxeterDiagram::from_roots_unchecked(&l, roots)
}

/// Gram matrix from root norms and a choice index per pair.
pub fn toy_gram(norms: &[i64], choices: &[usize]) -> IMat {
    let n = norms.len();
    let mut g = IMat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        g[(i, i)] = norms[i];
        for j in 0..i {
            let options: &[i64] = match (norms[i], norms[j]) {
                (-2, -2) => &[0, 1, 2, 3],
                (-4, -4) => &[0, 2, 4],
                _ => &[0, 2],
            };
            let p = options[choices[k] % options.len()];
            g[(i, j)] = p;
            g[(j, i)] = p;
            k += 1;
        }
    }
    g
}

/// Compare the analyzer's enumeration with brute force for every rank.
pub fn enumeration_matches(g: &IMat) -> Result<(), String> {
    let d = toy_diagram(g.clone());
    let mut an = Analyzer::new(&d);
    for m in 1u64..(1 << d.len()) {
        let (bk, _) = brute_kind(g, &bits(m));
        let ak = an.kind(m);
        if ak != bk {
            return Err(format!("subset {:?}: analyzer {ak:?}, brute force {bk:?}", bits(m)));
        }
    }
    for k in 1..=d.len() {
        let (ell, par) = brute_subsets(g, k);
        let got_e: BTreeSet<Mask> = an.elliptic_subsets(k).into_iter().collect();
        let got_p: BTreeSet<Mask> = an.parabolic_subsets(k).into_iter().collect();
        if got_e != ell {
            return Err(format!("elliptic rank {k}: {got_e:?} vs {ell:?}"));
        }
        if got_p != par {
            return Err(format!("parabolic rank {k}: {got_p:?} vs {par:?}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// chamber vectors

/// Isotropic vectors of all maximal parabolic subdiagrams, one per component.
pub fn chamber_isotropic_vectors(d: &CoxeterDiagram) -> Vec<Vec<i64>> {
    let mut an = Analyzer::new(d);
    let mut out = BTreeSet::new();
    for m in an.maximal_parabolics(d.lattice.rank() - 1) {
        for c in an.components(m) {
            out.insert(isotropic_vector(d, &bits(c)));
        }
    }
    out.into_iter().collect()
}

/// Isotropic and finite vertices of the chamber; nonnegative combinations
/// of these fill the whole cone.
pub fn chamber_vertices(d: &CoxeterDiagram) -> Vec<Vec<i64>> {
    let mut out: BTreeSet<Vec<i64>> = chamber_isotropic_vectors(d).into_iter().collect();
    let r = d.lattice.rank();
    let mut an = Analyzer::new(d);
    let dual: Vec<Vec<i64>> = d.roots.iter().map(|a| d.lattice.gram.mul_vec(a)).collect();
    for m in an.elliptic_subsets(r - 1) {
        let rows: Vec<Vec<i64>> = bits(m).into_iter().map(|i| dual[i].clone()).collect();
        let k = kernel(&IMat::from_rows(&rows));
        if k.cols != 1 {
            continue;
        }
        let mut v = primitive(&k.col(0));
        let pairing: Vec<i64> = dual.iter().map(|a| dot(a, &v)).collect();
        if pairing.iter().any(|&x| x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        if dual.iter().all(|a| dot(a, &v) >= 0) {
            out.insert(v);
        }
    }
    out.into_iter().collect()
}

/// `Σ cᵢ vᵢ` for nonnegative coefficients.
pub fn combine(vs: &[Vec<i64>], coeffs: &[u32]) -> Vec<i64> {
    let mut out = vec![0; vs[0].len()];
    for (v, &c) in vs.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += i64::from(c) * x;
        }
    }
    out
}

/// Chart side of the folding test: `J(λ) = λ`.
pub fn lattice_fixed(f: &Folding, lambda: &[i64]) -> bool {
    f.matrix.mul_vec(lambda) == lambda
}

pub fn chart_of(cusp: u8) -> Chart {
    if cusp == 2 {
        Chart::Unimodular
    } else {
        Chart::TwoElementary
    }
}

// ---------------------------------------------------------------------------
// charge oracle

fn det(a: Vec2, b: Vec2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Charges of the doubled sphere recomputed from the polygon's own edges.
///
/// Self-intersections come from determinants of the neighbouring edge
/// directions (`D̄ᵢ² = −det(eᵢ₋₁, eᵢ₊₁)`), internal blow-ups from the node
/// list. Returns the interior charge of one hemisphere (checked against
/// Noether's formula `12 − D² − n` of the blown-up cycle), the equator
/// charges, and the total.
pub struct OracleCharges {
    pub hemisphere: i64,
    pub noether: i64,
    pub corners: Vec<i64>,
    pub total: i64,
}

pub fn charge_oracle(p: &SymingtonPolygon) -> OracleCharges {
    let n = p.edges.len();
    let dirs: Vec<Vec2> = p.edges.iter().map(|e| e.direction).collect();
    let nodes: Vec<i64> = (0..n).map(|i| p.nodes.iter().filter(|x| x.slot == i).count() as i64).collect();
    let d2: Vec<i64> = (0..n).map(|i| -det(dirs[(i + n - 1) % n], dirs[(i + 1) % n]) - nodes[i]).collect();
    // Noether for the pair (Y, D): 12 − (Σ Dᵢ)² − n with (Σ Dᵢ)² = Σ Dᵢ² + 2n
    let self_sq: i64 = d2.iter().sum();
    let noether = 12 - (self_sq + 2 * n as i64) - n as i64;
    let hemisphere: i64 = nodes.iter().sum();
    // equator: each maximal run a, z…, b of zero-length slots between positive edges
    let mut corners = Vec::new();
    let positive: Vec<usize> = (0..n).filter(|&i| p.edges[i].length > 0).collect();
    for (k, &a) in positive.iter().enumerate() {
        let b = positive[(k + 1) % positive.len()];
        let mut zs = Vec::new();
        let mut j = (a + 1) % n;
        while j != b {
            zs.push(j);
            j = (j + 1) % n;
        }
        corners.push(6 * (zs.len() as i64 + 1) + zs.iter().map(|&z| 2 * d2[z]).sum::<i64>() + d2[a] + d2[b]);
    }
    let total = 2 * hemisphere + corners.iter().sum::<i64>();
    OracleCharges { hemisphere, noether, corners, total }
}

/// Compare an inventory's total with the oracle and check every shear item.
pub fn inventory_matches_oracle(p: &SymingtonPolygon, inv: &SingularityInventory) -> Result<i64, String> {
    if inv.glue != Glue::Double {
        return Err("oracle needs the doubled sphere".into());
    }
    let o = charge_oracle(p);
    if o.noether != o.hemisphere {
        return Err(format!("Noether charge {} but {} internal blow-ups", o.noether, o.hemisphere));
    }
    let total: i64 = inv.items.iter().map(|x| x.charge).sum();
    if total != o.total {
        return Err(format!("inventory total {total}, oracle {}", o.total));
    }
    for it in &inv.items {
        if it.tag.starts_with("node") {
            let m = it.monodromy;
            let shear = enriques_cusps::ias::shear_charge(m);
            if shear != Some(it.charge) {
                return Err(format!("{}: charge {} but monodromy {m:?}", it.tag, it.charge));
            }
        }
        if it.place == Place::Equator && it.tag.starts_with("corner") && it.charge <= 0 {
            return Err(format!("{}: non-positive corner charge {}", it.tag, it.charge));
        }
    }
    Ok(o.total)
}

// ---------------------------------------------------------------------------
// property suites, shared with the acceptance harness

use enriques_cusps::diagrams::load;
use enriques_cusps::folding::build_five_foldings;
use enriques_cusps::linalg::{lll_reduce, smith_big};
use enriques_cusps::roots::reflect;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// Reflections in chamber walls are involutive isometries.
pub fn prop_reflections(cases: u32) -> Result<(), String> {
    let diagrams = [load(Chart::TwoElementary).map_err(|e| e.to_string())?, load(Chart::Unimodular).map_err(|e| e.to_string())?];
    let strat = (0usize..2, 0usize..22, prop::collection::vec(-5i64..6, 20), prop::collection::vec(-5i64..6, 20));
    runner(cases)
        .run(&strat, |(c, i, mut v, mut w)| {
            let d = &diagrams[c];
            v.truncate(d.lattice.rank());
            w.truncate(d.lattice.rank());
            let a = &d.roots[i % d.len()];
            let l = &d.lattice;
            let sv = reflect(l, a, &v).map_err(fail)?;
            let sw = reflect(l, a, &w).map_err(fail)?;
            prop_assert_eq!(reflect(l, a, &sv).map_err(fail)?, v.clone());
            let g = &l.gram;
            let form = |x: &[i64], y: &[i64]| dot(x, &g.mul_vec(y));
            prop_assert_eq!(form(&sv, &sw), form(&v, &w));
            prop_assert_eq!(form(&sv, a), -form(&v, a));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Each folding is an involutive isometry permuting the chamber walls up to
/// the crossed reflections.
pub fn prop_foldings(cases: u32) -> Result<(), String> {
    let five = build_five_foldings().map_err(|e| e.to_string())?;
    for (f, d) in &five {
        let g = &d.lattice.gram;
        if f.matrix.mul(&f.matrix) != IMat::identity(d.lattice.rank()) {
            return Err(format!("cusp {}: J² ≠ 1", f.cusp));
        }
        if f.matrix.transpose().mul(g).mul(&f.matrix) != *g {
            return Err(format!("cusp {}: J not an isometry", f.cusp));
        }
    }
    let strat = (0usize..5, prop::collection::vec(-4i64..5, 20));
    runner(cases)
        .run(&strat, |(k, mut v)| {
            let (f, d) = &five[k];
            v.truncate(d.lattice.rank());
            let jv = f.matrix.mul_vec(&v);
            prop_assert_eq!(f.matrix.mul_vec(&jv), v.clone());
            let sum: Vec<i64> = v.iter().zip(&jv).map(|(a, b)| a + b).collect();
            prop_assert!(lattice_fixed(f, &sum));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Random toy diagrams: subset classification and enumeration agree with
/// brute force over all subsets.
pub fn prop_enumeration(cases: u32) -> Result<(), String> {
    let strat = (1usize..=4)
        .prop_flat_map(|n| (prop::collection::vec(prop_oneof![3 => Just(-2i64), 1 => Just(-4i64)], n), prop::collection::vec(0usize..12, n * (n - 1) / 2)));
    runner(cases)
        .run(&strat, |(norms, choices)| {
            let g = toy_gram(&norms, &choices);
            enumeration_matches(&g).map_err(fail)
        })
        .map_err(|e| e.to_string())
}

fn minors_gcd(m: &IMat, k: usize) -> BigInt {
    let rows = enriques_cusps::subdiagram::combinations(m.rows, k);
    let cols = enriques_cusps::subdiagram::combinations(m.cols, k);
    let mut g = BigInt::zero();
    for r in &rows {
        for c in &cols {
            g = g.gcd(&m.select(r, c).determinant());
        }
    }
    g
}

/// Smith invariant factors equal quotients of determinantal divisors; LLL
/// output is a reduced basis of the same lattice.
pub fn prop_linalg(cases: u32) -> Result<(), String> {
    let strat = (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r));
    runner(cases)
        .run(&strat, |rows| {
            let m = IMat::from_rows(&rows);
            let s = smith_big(&m);
            let mut prev = BigInt::from(1);
            for k in 1..=m.rows.min(m.cols) {
                let dk = minors_gcd(&m, k);
                if dk.is_zero() {
                    prop_assert_eq!(s.rank, k - 1);
                    break;
                }
                prop_assert_eq!(&s.factors[k - 1], &(&dk / &prev));
                prev = dk;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let strat = prop::collection::vec(prop::collection::vec(-30i64..31, 3), 3);
    runner(cases)
        .run(&strat, |rows| {
            let m = IMat::from_rows(&rows);
            if m.determinant().is_zero() {
                return Ok(());
            }
            let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let red = lll_reduce(big);
            let red_i: Vec<Vec<i64>> = red.iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
            let rm = IMat::from_rows(&red_i);
            prop_assert_eq!(rm.determinant().abs(), m.determinant().abs());
            // every reduced row lies in the original row lattice
            for r in &red_i {
                let sol = enriques_cusps::linalg::solve_rational(&m.transpose(), r).expect("full rank");
                prop_assert!(sol.iter().all(|q| q.is_integer()));
            }
            // size reduction and Lovász condition via exact Gram–Schmidt
            let n = red_i.len();
            let q = |x: i64| num_rational::BigRational::from_integer(BigInt::from(x));
            let mut bstar: Vec<Vec<num_rational::BigRational>> = Vec::new();
            let qdot = |a: &[num_rational::BigRational], b: &[num_rational::BigRational]| a.iter().zip(b).fold(q(0), |s, (x, y)| s + x * y);
            let mut mu = vec![vec![q(0); n]; n];
            for i in 0..n {
                let bi: Vec<_> = red_i[i].iter().map(|&x| q(x)).collect();
                let mut v = bi.clone();
                for j in 0..i {
                    mu[i][j] = qdot(&bi, &bstar[j]) / qdot(&bstar[j], &bstar[j]);
                    prop_assert!(mu[i][j].abs() <= num_rational::BigRational::new(1.into(), 2.into()));
                    for t in 0..v.len() {
                        v[t] = &v[t] - &mu[i][j] * &bstar[j][t];
                    }
                }
                bstar.push(v);
            }
            for i in 1..n {
                let lhs = qdot(&bstar[i], &bstar[i]);
                let rhs = (num_rational::BigRational::new(3.into(), 4.into()) - &mu[i][i - 1] * &mu[i][i - 1]) * qdot(&bstar[i - 1], &bstar[i - 1]);
                prop_assert!(lhs >= rhs);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Random chamber vectors: the ℓ-side symmetry predicate agrees with
/// `Jλ = λ`, and doubled vectors build spheres of charge 24 confirmed by the
/// charge oracle. Returns the number of vectors compared per outcome.
pub fn prop_ell_lambda(cases_per_cusp: u32) -> Result<[usize; 2], String> {
    use enriques_cusps::ias::*;
    use std::cell::Cell;
    let five = build_five_foldings().map_err(|e| e.to_string())?;
    let mut totals = [0usize; 2];
    for (f, d) in &five {
        let verts = chamber_vertices(d);
        let config = ChartConfig::validated(f.chart).map_err(|e| e.to_string())?;
        let seen = Cell::new([0usize; 2]);
        let strat = (prop::collection::vec(0u32..3, verts.len()), any::<bool>());
        runner(cases_per_cusp)
            .run(&strat, |(coeffs, symmetrize)| {
                let mut lambda = combine(&verts, &coeffs);
                if symmetrize {
                    let j = f.matrix.mul_vec(&lambda);
                    lambda.iter_mut().zip(j).for_each(|(a, b)| *a += b);
                }
                let Ok(ell) = ell_from_lambda(f.chart, d, &lambda) else {
                    return Ok(());
                };
                let fixed = lattice_fixed(f, &lambda);
                let check = symmetry_predicate(f.cusp, &ell).map_err(fail)?;
                prop_assert_eq!(check.holds, fixed, "cusp {} λ {:?}", f.cusp, lambda);
                let mut s = seen.get();
                s[usize::from(fixed)] += 1;
                seen.set(s);
                if ell.is_zero() {
                    return Ok(());
                }
                let doubled = PolarizationVector::new(f.chart, ell.entries.iter().map(|x| 2 * x).collect()).map_err(fail)?;
                let p = build_polygon(&config, &doubled).map_err(fail)?;
                let inv = singularity_inventory(&p, Glue::Double);
                let total = inventory_matches_oracle(&p, &inv).map_err(fail)?;
                prop_assert_eq!(total, 24);
                Ok(())
            })
            .map_err(|e| e.to_string())?;
        let s = seen.get();
        if s[0] == 0 || s[1] == 0 {
            return Err(format!("cusp {}: outcomes {s:?}", f.cusp));
        }
        totals[0] += s[0];
        totals[1] += s[1];
    }
    Ok(totals)
}
