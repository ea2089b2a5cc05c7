use enriques_cusps::diagrams::vinberg_options;
use enriques_cusps::lattice::parse;
use enriques_cusps::roots::is_root;
use enriques_cusps::vinberg::vinberg;

/// Simple roots pair non-negatively and every one is a lattice root.
fn check_chamber(expr: &str) -> Vec<usize> {
    let l = parse(expr).unwrap();
    let out = vinberg(&l, &vinberg_options(&l).unwrap()).unwrap();
    assert!(out.complete, "{expr}");
    let d = out.diagram;
    for i in 0..d.len() {
        assert!(is_root(&l, &d.roots[i]).unwrap());
        for j in 0..i {
            assert!(d.gram[(i, j)] >= 0, "{expr}: acute pair {i},{j}");
        }
    }
    let mut degrees: Vec<usize> = (0..d.len()).map(|i| (0..d.len()).filter(|&j| j != i && d.gram[(i, j)] != 0).count()).collect();
    degrees.sort_unstable();
    degrees
}

#[test]
fn u_plus_e8_gives_e10() {
    // the T(2,3,7) tree: three leaves, one branch vertex
    assert_eq!(check_chamber("U+E8"), vec![1, 1, 1, 2, 2, 2, 2, 2, 2, 3]);
}

#[test]
fn u_plus_a1_gives_three_roots() {
    assert_eq!(check_chamber("U+A1").len(), 3);
}

#[test]
fn unimodular_chart_has_nineteen_roots() {
    let degrees = check_chamber("U+E8+E8");
    assert_eq!(degrees.len(), 19);
}
