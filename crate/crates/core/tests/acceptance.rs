//! Acceptance harness: one line per criterion, nonzero exit on any failure.

mod common;

use enriques_cusps::cli::run_line;
use enriques_cusps::ias::{build_example, worked_examples, ChargeTotal};
use std::time::{Duration, Instant};

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn cli(line: &str) -> Outcome {
    match run_line(line) {
        Ok(c) => {
            let failed: Vec<String> = c.checks.iter().filter(|k| !k.pass).map(|k| format!("{}: expected {} got {}", k.claim, k.expected, k.got)).collect();
            Outcome {
                pass: c.passed() && !c.checks.is_empty(),
                detail: if failed.is_empty() { format!("{} checks", c.checks.len()) } else { failed.join("; ") },
            }
        }
        Err(e) => Outcome { pass: false, detail: format!("error: {e}") },
    }
}

fn ias_with_oracle() -> Outcome {
    let mut o = cli("ias examples");
    if !o.pass {
        return o;
    }
    for ex in worked_examples() {
        let r = build_example(&ex).map_err(|e| e.to_string()).and_then(|b| {
            if b.total != ChargeTotal::Sphere(24) {
                return Err(format!("total {:?}", b.total));
            }
            common::inventory_matches_oracle(&b.polygon, &b.inventory)
        });
        if let Err(e) = r {
            return Outcome { pass: false, detail: format!("{}: {e}", ex.name) };
        }
    }
    o.detail += ", charge oracle agrees";
    o
}

fn properties() -> Outcome {
    let r = (|| {
        common::prop_reflections(256)?;
        common::prop_foldings(256)?;
        common::prop_enumeration(256)?;
        common::prop_linalg(128)?;
        let [a, b] = common::prop_ell_lambda(60)?;
        if a + b < 100 {
            return Err(format!("only {} chamber vectors compared", a + b));
        }
        Ok(format!("{} chamber vectors ({b} symmetric)", a + b))
    })();
    match r {
        Ok(detail) => Outcome { pass: true, detail },
        Err(e) => Outcome { pass: false, detail: e },
    }
}

fn main() {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("lattice invariant table", secs(1), Box::new(|| cli("lattice table"))),
        ("Vinberg regeneration", secs(1200), Box::new(|| cli("coxeter vinberg --regenerate"))),
        ("folding fixed lattices", secs(1), Box::new(|| cli("fold five"))),
        ("involution search", secs(300), Box::new(|| cli("fold search --case all"))),
        ("root trichotomy H=3", secs(300), Box::new(|| cli("fold trichotomy --height 3"))),
        ("toroidal rays", secs(300), Box::new(|| cli("cusps rays --toroidal"))),
        ("semitoroidal divisors", secs(60), Box::new(|| cli("cusps rays --semitoroidal"))),
        ("irrelevant subgroups", secs(1), Box::new(|| cli("cusps irrelevant"))),
        ("cusp incidence", secs(60), Box::new(|| cli("cusps incidence"))),
        ("F_hyp parabolic orbits", secs(300), Box::new(|| cli("cusps fhyp-parabolics"))),
        ("square lattice points", secs(1), Box::new(|| cli("polytope square --side 4"))),
        ("IAS worked examples", secs(10), Box::new(ias_with_oracle)),
        ("property suites", secs(600), Box::new(properties)),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let el = t.elapsed();
        let timing = if el <= *limit { "" } else { " (over time limit)" };
        println!(
            "criterion {:>2} {:<26} {}  {:.1}s / {}s{}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            limit.as_secs(),
            timing,
            o.detail
        );
        if !o.pass {
            failures += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
