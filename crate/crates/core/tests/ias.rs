mod common;

use common::*;
use enriques_cusps::diagrams::{load, Chart};
use enriques_cusps::folding::build_five_foldings;
use enriques_cusps::ias::*;

#[test]
fn worked_examples_match_charge_oracle() {
    for ex in worked_examples() {
        let b = build_example(&ex).unwrap();
        let total = inventory_matches_oracle(&b.polygon, &b.inventory).unwrap_or_else(|e| panic!("{}: {e}", ex.name));
        assert_eq!(total, 24, "{}", ex.name);
        assert_eq!(b.total, ChargeTotal::Sphere(24));
        assert!(b.symmetry.holds, "{}", ex.name);
        assert!(b.action.is_involution(), "{}", ex.name);
    }
}

#[test]
fn disk_is_one_hemisphere() {
    for ex in worked_examples() {
        let b = build_example(&ex).unwrap();
        let disk = singularity_inventory(&b.polygon, Glue::None);
        let o = charge_oracle(&b.polygon);
        assert_eq!(total_charge(&disk), ChargeTotal::Disk(o.hemisphere));
    }
}

#[test]
fn slot_permutation_agrees_with_folding() {
    let five = build_five_foldings().unwrap();
    for ex in worked_examples().into_iter().filter(|e| e.ell.chart == Chart::TwoElementary) {
        let b = build_example(&ex).unwrap();
        let (f, d) = five.iter().find(|(f, _)| f.cusp == ex.cusp).unwrap();
        for (slot, &img) in b.action.slot_permutation.iter().enumerate().take(16) {
            let v = d.labels.iter().position(|&l| l == slot).unwrap();
            assert_eq!(d.labels[f.perm[v]], img, "cusp {} slot {slot}", ex.cusp);
        }
    }
}

#[test]
fn cusp_three_nodes_collide_exactly_when_ell20_vanishes() {
    let ex = worked_examples().into_iter().find(|e| e.cusp == 3).expect("cusp 3 example");
    let config = ChartConfig::validated(Chart::TwoElementary).unwrap();
    let p = build_polygon(&config, &ex.ell).unwrap();
    let inv = singularity_inventory(&p, Glue::None);
    let merged = inv.items.iter().any(|it| it.tag.contains("alpha16") && it.tag.contains("alpha18"));
    assert_eq!(merged, ex.ell.at(20) == 0);
}

#[test]
fn unsymmetric_ell_reports_witness() {
    let mut ell = worked_examples()[0].ell.clone();
    let cusp = worked_examples()[0].cusp;
    let conds = symmetry_conditions(cusp).unwrap();
    let (Condition::Equal(a, _) | Condition::Zero(a)) = conds[0];
    ell.entries[a] += 2;
    let c = symmetry_predicate(cusp, &ell).unwrap();
    assert!(!c.holds);
    assert!(c.violated.iter().any(|w| w.contains('≠')));
}

#[test]
fn chamber_vectors_agree_with_lattice_folding() {
    let [unfixed, fixed] = prop_ell_lambda(60).unwrap();
    assert!(unfixed + fixed >= 100, "{unfixed} + {fixed}");
}

#[test]
fn perturbed_relation_entry_fails_to_build() {
    for ex in worked_examples() {
        let config = ChartConfig::validated(ex.ell.chart).unwrap();
        let mut ell = ex.ell.clone();
        ell.entries[0] += 2;
        assert!(build_polygon(&config, &ell).is_err(), "{}", ex.name);
    }
}

#[test]
fn svg_and_json_render() {
    let ex = &worked_examples()[0];
    let p = build_example(ex).unwrap().polygon;
    assert!(p.to_svg().starts_with("<svg"));
    let j = serde_json::to_value(p.to_json()).unwrap();
    assert_eq!(j["edges"].as_array().unwrap().len(), p.edge_vectors().len());
    let _ = load(ex.ell.chart);
}
