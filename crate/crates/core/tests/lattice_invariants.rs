use enriques_cusps::k3::{i_dp, i_en, i_nik, k3_lattice};
use enriques_cusps::lattice::{parse, TwoElementaryInvariants};

fn inv(r: usize, a: usize, delta: u8, sig_plus: usize) -> TwoElementaryInvariants {
    TwoElementaryInvariants { r, a, delta, sig_plus }
}

#[test]
fn eigenlattice_table() {
    let l = k3_lattice();
    let cases = [
        (i_dp(), 1, inv(2, 2, 0, 1)),
        (i_dp(), -1, inv(20, 2, 0, 2)),
        (i_en(), 1, inv(10, 10, 0, 1)),
        (i_en(), -1, inv(12, 10, 0, 2)),
        (i_nik(), 1, inv(14, 8, 0, 3)),
        (i_nik(), -1, inv(8, 8, 0, 0)),
    ];
    for (g, s, want) in cases {
        let sub = l.fixed_sublattice(&g, s).unwrap();
        assert_eq!(sub.lattice.two_elementary_invariants().unwrap(), want);
    }
}

#[test]
fn standard_expressions() {
    let t = parse("U+U(2)+E8(2)").unwrap();
    assert_eq!(t.two_elementary_invariants().unwrap(), inv(12, 10, 0, 2));
    assert_eq!(parse("U").unwrap().two_elementary_invariants().unwrap(), inv(2, 0, 0, 1));
    assert_eq!(parse("U(2)").unwrap().gram.to_rows(), vec![vec![0, 2], vec![2, 0]]);
    assert_eq!(parse("U+U(2)+E8^2").unwrap().two_elementary_invariants().unwrap(), inv(20, 2, 0, 2));
    assert_eq!(parse("U(2)+E8(2)").unwrap().two_elementary_invariants().unwrap(), inv(10, 10, 0, 1));
    let e8 = parse("E8").unwrap();
    assert_eq!(e8.determinant(), 1.into());
    let s = e8.signature();
    assert_eq!((s.plus, s.minus, s.zero), (0, 8, 0));
    assert_eq!(parse("<2>+<-2>").unwrap().two_elementary_invariants().unwrap().delta, 1);
    assert!(parse("U(0)").is_err());
    assert!(parse("X7").is_err());
}
