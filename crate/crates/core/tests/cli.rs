use enriques_cusps::cli::{main_with_args, run_line};

fn status(line: &str) -> i32 {
    main_with_args(std::iter::once("enrcusp").chain(line.split_whitespace()))
}

#[test]
fn certificates_are_deterministic() {
    for line in ["lattice invariants U+U(2)+E8(2)", "fold five", "ias build --cusp 3 --ell 2,0x15,2,4,6,4,0,4"] {
        let a = run_line(line).unwrap().to_json();
        let b = run_line(line).unwrap().to_json();
        assert_eq!(a, b, "{line}");
    }
}

#[test]
fn lattice_examples() {
    let c = run_line("lattice invariants U+U(2)+E8(2)").unwrap();
    assert!(c.passed());
    let text = c.to_text();
    assert!(text.contains("(12,10,0)_2"), "{text}");
    let c = run_line("lattice quotient --iso e T_dP").unwrap();
    assert!(c.passed());
    assert!(c.to_text().contains("(18,2,0)"));
}

#[test]
fn symmetry_witness() {
    let c = run_line("ias check-symmetry --cusp 5 --ell 0,1,0x20").unwrap();
    assert!(c.to_text().contains("ℓ_1≠0"));
    assert_eq!(c.result["holds"], serde_json::json!(false));
}

#[test]
fn exit_codes() {
    assert_eq!(status("polytope square --side 4"), 0);
    assert_eq!(status("lattice invariants U+Q9"), 2);
    // odd surgery entry cannot be halved
    assert_eq!(status("ias build --cusp 3 --ell 2,0x15,1,4,6,4,0,4"), 2);
    // polygon fails to close
    assert_eq!(status("ias build --cusp 3 --ell 4,0x15,2,4,6,4,0,4"), 2);
    assert_eq!(status("no-such-command"), 2);
}

#[test]
fn small_diagram_commands() {
    for line in ["coxeter validate", "coxeter relations --chart 18,0,0", "fold diagram --cusp 2", "fold search --case b", "cusps irrelevant"] {
        let c = run_line(line).unwrap();
        assert!(c.passed(), "{line}: {}", c.to_text());
    }
}
