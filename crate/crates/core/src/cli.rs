//! Command-line front end. Every command produces a [`Certificate`]: the
//! inputs, a JSON result and a list of checks comparing expected values with
//! computed ones.

use crate::cusps::{self, CuspData};
use crate::diagrams::{self, Chart};
use crate::error::{Error, Result};
use crate::folding::{self, SearchFamily};
use crate::ias::{self, Glue, PolarizationVector};
use crate::k3;
use crate::lattice::{parse, Lattice, LatticeJson, TwoElementaryInvariants};
use crate::linalg::IMat;
use crate::polytope::{self, PointLattice, Polytope};
use crate::roots::CoxeterDiagram;
use crate::subdiagram::{automorphisms, orbits, Analyzer};
use crate::vinberg::{self, VinbergOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    /// Human-readable summary lines.
    #[serde(skip)]
    pub summary: Vec<String>,
    /// Exported text (DOT or SVG) printed instead of the summary.
    #[serde(skip)]
    pub export: Option<String>,
}

impl Certificate {
    fn new(command: &str, inputs: Value) -> Self {
        Certificate { command: command.to_string(), inputs, result: Value::Null, checks: vec![], summary: vec![], export: None }
    }

    fn check(&mut self, claim: &str, expected: impl Serialize, got: impl Serialize) {
        let expected = serde_json::to_value(expected).expect("serializable");
        let got = serde_json::to_value(got).expect("serializable");
        let pass = expected == got;
        self.checks.push(Check { claim: claim.to_string(), expected, got, pass });
    }

    fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.summary {
            s += l;
            s.push('\n');
        }
        for c in &self.checks {
            s += &format!("{} {}: got {}", if c.pass { "PASS" } else { "FAIL" }, c.claim, c.got);
            if !c.pass {
                s += &format!(", expected {}", c.expected);
            }
            s.push('\n');
        }
        s
    }
}

/// Exit status: checks passed, a check failed, or the computation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    CheckFailed = 1,
    Error = 2,
}

#[derive(Debug, Parser)]
#[command(name = "enrcusp", version, about = "Cusp combinatorics and integral-affine spheres for degree 2 Enriques surfaces")]
pub struct Cli {
    /// Print the certificate as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice invariants and sublattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Vinberg's algorithm and Coxeter diagrams.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Foldings of the chart diagrams by involutions.
    #[command(subcommand)]
    Fold(FoldCmd),
    /// 0- and 1-cusps and divisor counts.
    #[command(subcommand)]
    Cusps(CuspsCmd),
    /// Integral-affine spheres from polarization vectors.
    #[command(subcommand)]
    Ias(IasCmd),
    /// Lattice points of polygons.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
}

#[derive(Debug, Args)]
pub struct LatticeInput {
    /// Lattice expression such as `U+U(2)+E8(2)` or a name (`L`, `T_dP`, `T_En`, `S_dP`, `S_En`).
    pub expr: Option<String>,
    /// JSON file `{"label": ..., "gram": [[...]]}`.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// 2-elementary invariants `(r,a,δ)` and signature.
    Invariants(LatticeInput),
    /// Signature `(plus, minus, zero)`.
    Signature(LatticeInput),
    /// Invariants of the six eigenlattices of the three involutions of the K3 lattice.
    Table,
    /// Orthogonal complement of vectors, given as `a,b,...;c,d,...`.
    Complement {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        vectors: String,
    },
    /// `e^⊥/e` for a primitive isotropic `e` (`e`, `f` for the leading plane, or coordinates).
    Quotient {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        iso: String,
    },
    /// Eigenlattice of an involution (`i_dp`, `i_en`, `i_nik` on `L`, or a JSON file `{"matrix": ...}`).
    Fixed {
        #[command(flatten)]
        input: LatticeInput,
        #[arg(long)]
        involution: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    #[value(name = "18,0,0")]
    Unimodular,
    #[value(name = "18,2,0")]
    TwoElementary,
}

impl From<ChartArg> for Chart {
    fn from(c: ChartArg) -> Chart {
        match c {
            ChartArg::Unimodular => Chart::Unimodular,
            ChartArg::TwoElementary => Chart::TwoElementary,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CoxeterCmd {
    /// Run Vinberg's algorithm on a lattice with a leading hyperbolic plane.
    Vinberg {
        /// Lattice expression; omit with `--regenerate`.
        expr: Option<String>,
        #[arg(long, default_value_t = 40)]
        max_roots: usize,
        #[arg(long, default_value_t = 40)]
        max_height: i64,
        /// Recompute both chart diagrams and compare them with the frozen data.
        #[arg(long)]
        regenerate: bool,
        /// With `--regenerate`, write fresh data files and hashes here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Load a frozen chart diagram and verify hash, template and relation.
    Validate {
        #[arg(long, value_enum)]
        chart: Option<ChartArg>,
    },
    /// Enumerate subdiagrams of a chart diagram or of the diagram of a lattice.
    Subdiagrams {
        #[arg(long, value_enum, conflicts_with = "expr")]
        chart: Option<ChartArg>,
        /// Lattice whose Vinberg diagram is used.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        elliptic_rank: Option<usize>,
        #[arg(long)]
        maximal_parabolic: bool,
        #[arg(long)]
        up_to_aut: bool,
    },
    /// Linear relations among the roots of a chart diagram.
    Relations {
        #[arg(long, value_enum)]
        chart: ChartArg,
    },
    /// Graphviz DOT of a chart diagram.
    ExportDot {
        #[arg(long, value_enum)]
        chart: ChartArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    A,
    B,
    C,
    All,
}

#[derive(Debug, Subcommand)]
pub enum FoldCmd {
    /// Build the five foldings and check their fixed lattices.
    Five,
    /// Scan the candidate involutions of the three families.
    Search {
        #[arg(long, value_enum, default_value = "all")]
        case: CaseArg,
    },
    /// The folded diagram of one cusp.
    Diagram {
        #[arg(long)]
        cusp: u8,
        #[arg(long)]
        dot: bool,
    },
    /// Lift each folding to `T_dP` and check the fixed lattice is `T_En`.
    Lift,
    /// Classify the roots of `T_dP` whose folded vector has negative norm.
    Trichotomy {
        #[arg(long, default_value_t = 3)]
        height: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CuspsCmd {
    /// The bipartite incidence graph of 0- and 1-cusps.
    Incidence {
        #[arg(long)]
        dot: bool,
    },
    /// Divisor counts per 0-cusp.
    Rays {
        #[arg(long, conflicts_with = "semitoroidal", required_unless_present = "semitoroidal")]
        toroidal: bool,
        #[arg(long)]
        semitoroidal: bool,
    },
    /// The irrelevant subdiagram of each folded diagram.
    Irrelevant,
    /// Maximal parabolic orbits of the chart diagrams and the foldings preserving them.
    FhypParabolics,
}

#[derive(Debug, Args)]
pub struct EllInput {
    #[arg(long)]
    pub cusp: u8,
    /// Entries of ℓ, e.g. `2,0^15,2,4,6,4,0,4` (`x` also repeats).
    #[arg(long)]
    pub ell: String,
}

#[derive(Debug, Subcommand)]
pub enum IasCmd {
    /// Test the symmetry conditions of a cusp on ℓ.
    CheckSymmetry(EllInput),
    /// Build the Symington polygon of ℓ.
    Build {
        #[command(flatten)]
        input: EllInput,
        /// Also write an SVG drawing.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Singularities and total charge of the doubled sphere.
    Charge {
        #[command(flatten)]
        input: EllInput,
        /// Only one hemisphere.
        #[arg(long)]
        disk: bool,
    },
    /// SVG drawing of the polygon.
    Svg(EllInput),
    /// Build and check the three worked examples.
    Examples,
}

#[derive(Debug, Subcommand)]
pub enum PolytopeCmd {
    /// Count lattice points of `[0,side]²`, all and with even coordinate sum.
    Square {
        #[arg(long, default_value_t = 4)]
        side: i64,
    },
    /// Count lattice points of the polygon with the given vertices `x,y;x,y;...`.
    Points {
        #[arg(long)]
        vertices: String,
        #[arg(long)]
        even: bool,
    },
}

/// Parse arguments, run, print, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Error as i32 } else { 0 };
        }
    };
    match run(&cli.command) {
        Ok(cert) => {
            if cli.json {
                print!("{}", cert.to_json());
            } else if let Some(x) = &cert.export {
                print!("{x}");
            } else {
                print!("{}", cert.to_text());
            }
            if cert.passed() {
                Status::Pass as i32
            } else {
                Status::CheckFailed as i32
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            Status::Error as i32
        }
    }
}

/// Run one command.
pub fn run(cmd: &Command) -> Result<Certificate> {
    match cmd {
        Command::Lattice(c) => lattice_cmd(c),
        Command::Coxeter(c) => coxeter_cmd(c),
        Command::Fold(c) => fold_cmd(c),
        Command::Cusps(c) => cusps_cmd(c),
        Command::Ias(c) => ias_cmd(c),
        Command::Polytope(c) => polytope_cmd(c),
    }
}

/// Parse a command line (without the program name) and run it.
pub fn run_line(line: &str) -> Result<Certificate> {
    let args = std::iter::once("enrcusp").chain(line.split_whitespace());
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Invalid(e.to_string()))?;
    run(&cli.command)
}

fn read_lattice(input: &LatticeInput) -> Result<Lattice> {
    match (&input.expr, &input.file) {
        (Some(e), None) => parse(e),
        (None, Some(f)) => {
            let j: LatticeJson = serde_json::from_str(&std::fs::read_to_string(f)?).map_err(|e| Error::Invalid(e.to_string()))?;
            Lattice::from_json(&j)
        }
        _ => Err(Error::Invalid("give either a lattice expression or --file".into())),
    }
}

fn lattice_inputs(input: &LatticeInput, l: &Lattice) -> Value {
    json!({ "expr": input.expr, "gram": l.gram.to_rows() })
}

fn parse_vectors(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.split(',').map(|x| x.trim().parse::<i64>().map_err(|e| Error::Invalid(format!("`{x}`: {e}")))).collect())
        .collect()
}

fn inv(r: usize, a: usize, delta: u8, sig_plus: usize) -> TwoElementaryInvariants {
    TwoElementaryInvariants { r, a, delta, sig_plus }
}

fn lattice_cmd(c: &LatticeCmd) -> Result<Certificate> {
    match c {
        LatticeCmd::Invariants(input) => {
            let l = read_lattice(input)?;
            let mut cert = Certificate::new("lattice invariants", lattice_inputs(input, &l));
            let sig = l.signature();
            let t = l.two_elementary_invariants()?;
            cert.line(format!("{t}  signature ({},{})", sig.plus, sig.minus));
            cert.result = json!({ "invariants": t, "signature": sig, "even": l.is_even() });
            Ok(cert)
        }
        LatticeCmd::Signature(input) => {
            let l = read_lattice(input)?;
            let mut cert = Certificate::new("lattice signature", lattice_inputs(input, &l));
            let sig = l.signature();
            cert.line(format!("({},{},{})", sig.plus, sig.minus, sig.zero));
            cert.result = serde_json::to_value(sig).expect("serializable");
            Ok(cert)
        }
        LatticeCmd::Table => {
            let mut cert = Certificate::new("lattice table", json!({ "lattice": "U+U+U+E8+E8" }));
            let l = k3::k3_lattice();
            let rows = [
                ("S_dP", k3::i_dp(), 1, inv(2, 2, 0, 1)),
                ("T_dP", k3::i_dp(), -1, inv(20, 2, 0, 2)),
                ("S_En", k3::i_en(), 1, inv(10, 10, 0, 1)),
                ("T_En", k3::i_en(), -1, inv(12, 10, 0, 2)),
                ("L_nik+", k3::i_nik(), 1, inv(14, 8, 0, 3)),
                ("L_nik-", k3::i_nik(), -1, inv(8, 8, 0, 0)),
            ];
            let mut result = Vec::new();
            for (name, g, sign, want) in rows {
                if !l.is_involution(&g) {
                    return Err(Error::NotInvolution);
                }
                let t = l.fixed_sublattice(&g, sign)?.lattice.two_elementary_invariants()?;
                cert.line(format!("{name:7} {t}"));
                cert.check(&format!("{name} invariants"), want.to_string(), t.to_string());
                result.push(json!({ "name": name, "sign": sign, "invariants": t }));
            }
            cert.result = Value::Array(result);
            Ok(cert)
        }
        LatticeCmd::Complement { input, vectors } => {
            let l = read_lattice(input)?;
            let vs = parse_vectors(vectors)?;
            if vs.iter().any(|v| v.len() != l.rank()) {
                return Err(Error::Dimension { expected: l.rank(), got: vs.first().map_or(0, |v| v.len()) });
            }
            let mut cert = Certificate::new("lattice complement", json!({ "lattice": lattice_inputs(input, &l), "vectors": vs }));
            let sub = l.orthogonal_complement(&IMat::from_cols(&vs, l.rank()));
            let t = sub.lattice.two_elementary_invariants();
            cert.line(format!("rank {}  {}", sub.lattice.rank(), t.as_ref().map_or_else(|e| e.to_string(), |t| t.to_string())));
            cert.result = json!({ "gram": sub.lattice.gram.to_rows(), "basis": sub.embedding.cols_vec(), "invariants": t.ok() });
            Ok(cert)
        }
        LatticeCmd::Quotient { input, iso } => {
            let l = read_lattice(input)?;
            let e = match iso.as_str() {
                "e" | "f" => {
                    let mut v = vec![0; l.rank()];
                    v[usize::from(iso == "f")] = 1;
                    v
                }
                s => parse_vectors(s)?.pop().unwrap_or_default(),
            };
            let mut cert = Certificate::new("lattice quotient", json!({ "lattice": lattice_inputs(input, &l), "iso": e }));
            let div = l.divisibility(&e)?;
            let q = l.isotropic_quotient(&e)?;
            let t = q.lattice.two_elementary_invariants()?;
            cert.line(format!("div {div}  e^⊥/e = {t}"));
            cert.result = json!({ "divisibility": div, "invariants": t, "gram": q.lattice.gram.to_rows() });
            Ok(cert)
        }
        LatticeCmd::Fixed { input, involution, sign } => {
            let l = read_lattice(input)?;
            let g = match involution.as_str() {
                "i_dp" => k3::i_dp(),
                "i_en" => k3::i_en(),
                "i_nik" => k3::i_nik(),
                path => {
                    #[derive(Deserialize)]
                    struct Iso {
                        matrix: Vec<Vec<i64>>,
                    }
                    let j: Iso = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(|e| Error::Invalid(e.to_string()))?;
                    IMat::from_rows(&j.matrix)
                }
            };
            if g.rows != l.rank() || g.cols != l.rank() {
                return Err(Error::Dimension { expected: l.rank(), got: g.rows });
            }
            if !l.is_involution(&g) {
                return Err(Error::NotInvolution);
            }
            let mut cert = Certificate::new("lattice fixed", json!({ "lattice": lattice_inputs(input, &l), "involution": involution, "sign": sign }));
            let sub = l.fixed_sublattice(&g, *sign)?;
            let t = sub.lattice.two_elementary_invariants()?;
            cert.line(format!("{t}"));
            cert.result = json!({ "invariants": t, "basis": sub.embedding.cols_vec() });
            Ok(cert)
        }
    }
}

fn diagram_summary(d: &CoxeterDiagram) -> Value {
    json!({ "roots": d.roots, "labels": d.labels, "edges": d.edges().iter().map(|(i, j, e)| (d.labels[*i], d.labels[*j], e.tag())).collect::<Vec<_>>() })
}

fn coxeter_cmd(c: &CoxeterCmd) -> Result<Certificate> {
    match c {
        CoxeterCmd::Vinberg { expr, max_roots, max_height, regenerate, out } => {
            if *regenerate {
                return regenerate_cmd(out.as_ref());
            }
            let expr = expr.as_deref().ok_or_else(|| Error::Invalid("give a lattice expression or --regenerate".into()))?;
            let l = parse(expr)?;
            let v0 = vinberg::default_v0(&l).ok_or(Error::Invalid("lattice has no leading hyperbolic plane".into()))?;
            let opts = VinbergOptions { v0, norms: vinberg::two_elementary_norms(), max_roots: *max_roots, max_height: *max_height };
            let mut cert = Certificate::new("coxeter vinberg", json!({ "expr": expr, "options": opts }));
            let outcome = vinberg::vinberg(&l, &opts)?;
            if !outcome.complete {
                return Err(Error::BoundExhausted(outcome.diagram.len()));
            }
            let d = &outcome.diagram;
            cert.line(format!("{} roots", d.len()));
            let rel = d.relations();
            cert.line(format!("relations: {rel:?}"));
            for chart in Chart::ALL {
                if chart.expr() == expr {
                    cert.check("number of roots", chart.len(), d.len());
                    let canon = diagrams::canonicalize(chart, d)?;
                    let (lhs, rhs) = chart.relation();
                    cert.check("displayed relation holds", true, canon.verify_relation(&lhs, &rhs));
                }
            }
            cert.result = json!({ "diagram": diagram_summary(d), "heights": outcome.heights, "relations": rel });
            Ok(cert)
        }
        CoxeterCmd::Validate { chart } => {
            let charts = chart.map_or(Chart::ALL.to_vec(), |c| vec![c.into()]);
            let mut cert = Certificate::new("coxeter validate", json!({ "charts": charts, "data_dir": diagrams::data_dir_override() }));
            let mut result = Vec::new();
            for chart in charts {
                let d = diagrams::load(chart)?;
                cert.line(format!("{chart}: {} roots, hash and relation verified", d.len()));
                cert.check(&format!("{chart} number of roots"), chart.len(), d.len());
                result.push(json!({ "chart": chart, "roots": d.len() }));
            }
            cert.result = Value::Array(result);
            Ok(cert)
        }
        CoxeterCmd::Subdiagrams { chart, expr, elliptic_rank, maximal_parabolic, up_to_aut } => {
            let d = match (chart, expr) {
                (Some(c), _) => diagrams::load((*c).into())?,
                (None, Some(e)) => {
                    let l = parse(e)?;
                    let opts = crate::diagrams::vinberg_options(&l)?;
                    let out = vinberg::vinberg(&l, &opts)?;
                    if !out.complete {
                        return Err(Error::BoundExhausted(out.diagram.len()));
                    }
                    out.diagram
                }
                (None, None) => return Err(Error::Invalid("give --chart or --expr".into())),
            };
            let mut cert = Certificate::new(
                "coxeter subdiagrams",
                json!({ "chart": chart.map(Chart::from), "expr": expr, "elliptic_rank": elliptic_rank, "maximal_parabolic": maximal_parabolic, "up_to_aut": up_to_aut }),
            );
            let mut an = Analyzer::new(&d);
            let dim = d.lattice.rank() - 1;
            let mut masks = match (elliptic_rank, maximal_parabolic) {
                (Some(k), false) => an.elliptic_subsets(*k),
                (None, true) => an.maximal_parabolics(dim),
                _ => return Err(Error::Invalid("give exactly one of --elliptic-rank and --maximal-parabolic".into())),
            };
            if *up_to_aut {
                masks = orbits(&masks, &automorphisms(&d));
            }
            let reports: Vec<_> = masks.iter().map(|&m| an.report(m)).collect();
            for r in &reports {
                cert.line(format!("{:?} {}", r.vertex_subset, r.type_label()));
            }
            cert.line(format!("{} subdiagrams", reports.len()));
            cert.result = json!({ "count": reports.len(), "subdiagrams": reports });
            Ok(cert)
        }
        CoxeterCmd::Relations { chart } => {
            let chart: Chart = (*chart).into();
            let d = diagrams::load(chart)?;
            let mut cert = Certificate::new("coxeter relations", json!({ "chart": chart }));
            let rel = d.relations();
            cert.check("number of relations", chart.len() - d.lattice.rank(), rel.len());
            let (lhs, rhs) = chart.relation();
            cert.check("displayed relation holds", true, d.verify_relation(&lhs, &rhs));
            for r in &rel {
                cert.line(format!("{r:?}"));
            }
            cert.result = json!({ "labels": d.labels, "relations": rel });
            Ok(cert)
        }
        CoxeterCmd::ExportDot { chart } => {
            let chart: Chart = (*chart).into();
            let d = diagrams::load(chart)?;
            let mut cert = Certificate::new("coxeter export-dot", json!({ "chart": chart }));
            let dot = d.to_dot(&format!("chart_{}", chart.len()));
            cert.result = json!({ "dot": dot });
            cert.export = Some(dot);
            Ok(cert)
        }
    }
}

fn regenerate_cmd(out: Option<&PathBuf>) -> Result<Certificate> {
    let mut cert = Certificate::new("coxeter vinberg --regenerate", json!({ "out": out }));
    let mut files = Vec::new();
    let mut result = Vec::new();
    for chart in Chart::ALL {
        let d = diagrams::regenerate(chart)?;
        let text = diagrams::to_frozen_json(&d);
        let frozen = diagrams::load(chart)?;
        cert.line(format!("{chart} = {}: {} roots", chart.expr(), d.len()));
        cert.check(&format!("{chart} number of roots"), chart.len(), d.len());
        let (lhs, rhs) = chart.relation();
        cert.check(&format!("{chart} displayed relation holds"), true, d.verify_relation(&lhs, &rhs));
        cert.check(&format!("{chart} matches frozen data"), true, frozen == d);
        result.push(json!({ "chart": chart, "roots": d.roots, "hash": diagrams::sha256_hex(&text) }));
        files.push((chart.file_name(), text));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        for (name, text) in &files {
            std::fs::write(dir.join(name), text)?;
        }
        let refs: Vec<(&str, &str)> = files.iter().map(|(n, t)| (*n, t.as_str())).collect();
        std::fs::write(dir.join("SHA256SUMS"), diagrams::sha256sums(&refs))?;
        cert.line(format!("wrote {}", dir.display()));
    }
    cert.result = Value::Array(result);
    Ok(cert)
}

fn family_name(f: SearchFamily) -> &'static str {
    match f {
        SearchFamily::A => "a",
        SearchFamily::B => "b",
        SearchFamily::C => "c",
    }
}

fn fold_cmd(c: &FoldCmd) -> Result<Certificate> {
    match c {
        FoldCmd::Five => {
            let mut cert = Certificate::new("fold five", json!({}));
            let mut result = Vec::new();
            for (f, d) in folding::build_five_foldings()? {
                let fixed = f.fixed_lattice(&d.lattice)?;
                let t = fixed.lattice.two_elementary_invariants()?;
                let involution = d.lattice.is_involution(&f.matrix);
                cert.line(format!("cusp {} on {}: fixed lattice {t}", f.cusp, f.chart));
                cert.check(&format!("cusp {} is an isometric involution", f.cusp), true, involution);
                cert.check(&format!("cusp {} fixed lattice", f.cusp), f.expected_invariants().to_string(), t.to_string());
                result.push(json!({ "folding": f.to_json(&d), "chart": f.chart, "fixed": t }));
            }
            cert.result = Value::Array(result);
            Ok(cert)
        }
        FoldCmd::Search { case } => {
            let families = match case {
                CaseArg::A => vec![SearchFamily::A],
                CaseArg::B => vec![SearchFamily::B],
                CaseArg::C => vec![SearchFamily::C],
                CaseArg::All => vec![SearchFamily::A, SearchFamily::B, SearchFamily::C],
            };
            let mut cert = Certificate::new("fold search", json!({ "families": families }));
            let mut result = Vec::new();
            for fam in families {
                let cands = folding::search_involutions(fam)?;
                let hits: Vec<Vec<usize>> = cands.iter().filter(|x| x.is_u_e8_2() || x.is_u2_e8_2()).map(|x| x.reflected.clone()).collect();
                let expected: Vec<Vec<usize>> = match fam {
                    SearchFamily::A => vec![],
                    SearchFamily::B => vec![vec![20]],
                    SearchFamily::C => vec![(1..16).step_by(2).collect()],
                };
                cert.line(format!("family {}: {} candidates, hits {hits:?}", family_name(fam), cands.len()));
                cert.check(&format!("family {} hits", family_name(fam)), &expected, &hits);
                result.push(json!({ "family": fam, "candidates": cands.len(), "hits": hits }));
            }
            cert.result = Value::Array(result);
            Ok(cert)
        }
        FoldCmd::Diagram { cusp, dot } => {
            let cd = cusp_by_id(*cusp)?;
            let mut cert = Certificate::new("fold diagram", json!({ "cusp": cusp }));
            let fd = &cd.folded;
            let mut an = Analyzer::new(&fd.diagram);
            let dim = cd.folded_dim();
            cert.line(format!("cusp {cusp}: {} folded vertices, labels {:?}", fd.diagram.len(), fd.diagram.labels));
            cert.check("finite volume", true, an.has_finite_volume(dim));
            cert.result = json!({
                "diagram": diagram_summary(&fd.diagram),
                "origin": fd.origin.iter().map(|o| o.iter().map(|&i| cd.unfolded.labels[i]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "cases": fd.cases,
                "fixed_gram": fd.fixed.lattice.gram.to_rows(),
            });
            if *dot {
                cert.export = Some(fd.diagram.to_dot(&format!("folded_{cusp}")));
            }
            Ok(cert)
        }
        FoldCmd::Lift => {
            let mut cert = Certificate::new("fold lift", json!({}));
            let mut result = Vec::new();
            for cd in cusps::cusp_data()? {
                let m = cusps::en_model(&cd)?;
                let fixed = m.t_en.lattice.two_elementary_invariants()?;
                let anti = m.extension.lattice.fixed_sublattice(&m.extension.involution, -1)?.lattice.two_elementary_invariants()?;
                let whole = m.extension.lattice.two_elementary_invariants()?;
                cert.line(format!("cusp {}: {whole} with fixed {fixed}, anti-invariant {anti}", m.cusp));
                cert.check(&format!("cusp {} ambient is T_dP", m.cusp), inv(20, 2, 0, 2).to_string(), whole.to_string());
                cert.check(&format!("cusp {} fixed lattice is T_En", m.cusp), cusps::T_EN_INVARIANTS.to_string(), fixed.to_string());
                cert.check(&format!("cusp {} anti-invariant is E8(2)", m.cusp), cusps::E8_2_INVARIANTS.to_string(), anti.to_string());
                result.push(json!({ "cusp": m.cusp, "fixed": fixed, "anti": anti, "complement": m.extension.complement }));
            }
            cert.result = Value::Array(result);
            Ok(cert)
        }
        FoldCmd::Trichotomy { height } => {
            let mut cert = Certificate::new("fold trichotomy", json!({ "height": height }));
            let r = folding::verify_root_trichotomy(*height)?;
            cert.line(format!(
                "{} roots: {} fixed (-2), {} fixed (-4), {} orthogonal pairs",
                r.roots_examined, r.fixed_minus2, r.fixed_minus4, r.orthogonal_pair
            ));
            cert.check("violations", 0, r.violations.len());
            cert.check("witness per case", vec![true; 3], r.witnesses.iter().map(Option::is_some).collect::<Vec<_>>());
            cert.result = serde_json::to_value(&r).expect("serializable");
            Ok(cert)
        }
    }
}

fn cusp_by_id(k: u8) -> Result<CuspData> {
    cusps::cusp_data()?.into_iter().find(|c| c.id() == k).ok_or_else(|| Error::Invalid(format!("no cusp {k}")))
}

const TOROIDAL: [(usize, usize); 5] = [(4, 4), (2, 8), (3, 15), (4, 12), (5, 17)];
const SEMITOROIDAL: [(usize, usize); 5] = [(2, 0), (2, 7), (2, 7), (4, 7), (3, 0)];

fn cusps_cmd(c: &CuspsCmd) -> Result<Certificate> {
    match c {
        CuspsCmd::Incidence { dot } => {
            let mut cert = Certificate::new("cusps incidence", json!({}));
            let g = cusps::cusp_incidence_graph(&cusps::cusp_data()?)?;
            for o in &g.one_cusps {
                let names: Vec<String> = o.appearances.iter().map(|a| format!("{} {}", a.name, a.folded)).collect();
                cert.line(format!("1-cusp {:4} toroidal {:5}  {}", o.label, o.toroidal_over, names.join(", ")));
            }
            for z in &g.zero_cusps {
                cert.line(format!("0-cusp {} {} toroidal {}", z.label, z.fixed_lattice, z.toroidal_over));
            }
            cert.check("0-cusps", 5, g.zero_cusps.len());
            cert.check("1-cusps", 9, g.one_cusps.len());
            cert.check("incidence degree sum", 18, g.degree_sum());
            let names = g.diagram_names();
            let want = ["12", "31", "35", "41", "51"];
            cert.check("names include 12 31 35 41 51", want.to_vec(), want.iter().filter(|n| names.contains(&n.to_string())).collect::<Vec<_>>());
            let tor_zero: Vec<&str> = g.zero_cusps.iter().filter(|z| z.toroidal_over).map(|z| z.label.as_str()).collect();
            cert.check("toroidal 0-cusps", vec!["2", "4"], tor_zero);
            let expected: Vec<String> =
                g.one_cusps.iter().filter(|o| o.zero_cusps.iter().any(|&k| k == 2 || k == 4) || o.label == "35").map(|o| o.label.clone()).collect();
            let got: Vec<String> = g.one_cusps.iter().filter(|o| o.toroidal_over).map(|o| o.label.clone()).collect();
            cert.check("toroidal 1-cusps: adjacent to 2 or 4, and 35", expected, got);
            if *dot {
                cert.export = Some(g.to_dot());
            }
            cert.result = serde_json::to_value(&g).expect("serializable");
            Ok(cert)
        }
        CuspsCmd::Rays { toroidal, semitoroidal: _ } => {
            let cds = cusps::cusp_data()?;
            let mut cert;
            let mut per = Vec::new();
            if *toroidal {
                cert = Certificate::new("cusps rays --toroidal", json!({}));
                for cd in &cds {
                    per.push(cusps::toroidal_divisor_counts(cd)?);
                }
                let g = cusps::cusp_incidence_graph(&cds)?;
                let t2 = g.one_cusps.len();
                let t3: usize = per.iter().map(|c| c.type3).sum();
                let text = format!("{}; total {t2}+{t3}={}", per.iter().map(|c| format!("{}+{}", c.type2, c.type3)).collect::<Vec<_>>().join(" "), t2 + t3);
                cert.line(text.clone());
                let pairs: Vec<(usize, usize)> = per.iter().map(|c| (c.type2, c.type3)).collect();
                cert.check("per-cusp counts", TOROIDAL.to_vec(), pairs);
                cert.check("Type III total", 56, t3);
                cert.check("merged total", 65, t2 + t3);
                cert.result = json!({ "per_cusp": per, "type2_merged": t2, "type3": t3, "total": t2 + t3, "text": text });
            } else {
                cert = Certificate::new("cusps rays --semitoroidal", json!({}));
                for cd in &cds {
                    per.push(cusps::semitoroidal_divisor_counts(cd));
                }
                // a 1-cusp is kept when none of its appearances has an irrelevant component
                let g = cusps::cusp_incidence_graph(&cds)?;
                let t2 = g.one_cusps.iter().filter(|o| o.toroidal_over).count();
                let t3: usize = per.iter().map(|c| c.type3).sum();
                let text = format!("{}; total {t2}+{t3}={}", per.iter().map(|c| format!("{}+{}", c.type2, c.type3)).collect::<Vec<_>>().join(" "), t2 + t3);
                cert.line(text.clone());
                let pairs: Vec<(usize, usize)> = per.iter().map(|c| (c.type2, c.type3)).collect();
                cert.check("per-cusp counts", SEMITOROIDAL.to_vec(), pairs);
                cert.check("totals", (6, 21), (t2, t3));
                cert.check("sum", 27, t2 + t3);
                cert.result = json!({ "per_cusp": per, "type2_merged": t2, "type3": t3, "total": t2 + t3, "text": text });
            }
            Ok(cert)
        }
        CuspsCmd::Irrelevant => {
            let mut cert = Certificate::new("cusps irrelevant", json!({}));
            let mut result = Vec::new();
            let mut elliptic = Vec::new();
            for cd in cusps::cusp_data()? {
                let m = cusps::irrelevant_marking(&cd);
                cert.line(format!("cusp {}: {:?} {} elliptic {}", m.cusp, m.irrelevant, m.subdiagram.type_label(), m.elliptic));
                if m.elliptic {
                    elliptic.push((m.cusp, m.subdiagram.type_label()));
                }
                result.push(serde_json::to_value(&m).expect("serializable"));
            }
            cert.check("elliptic irrelevant subdiagrams", vec![(2, "A1(2)"), (4, "A1(2) A1(2)")], elliptic);
            cert.result = Value::Array(result);
            Ok(cert)
        }
        CuspsCmd::FhypParabolics => {
            let mut cert = Certificate::new("cusps fhyp-parabolics", json!({}));
            let ps = cusps::fhyp_unfolded_parabolics()?;
            for p in &ps {
                cert.line(format!(
                    "{} {:24} orbit {:2} preserved by {:?}  {}",
                    p.chart,
                    p.representative.type_label(),
                    p.orbit_size,
                    p.invariant_under,
                    p.label
                ));
            }
            let never = ps.iter().filter(|p| p.chart == Chart::TwoElementary.to_string() && p.invariant_under.is_empty()).count();
            cert.check("(18,2,0) orbits preserved by no folding", 2, never);
            cert.result = serde_json::to_value(&ps).expect("serializable");
            Ok(cert)
        }
    }
}

fn read_ell(input: &EllInput) -> Result<PolarizationVector> {
    let chart = ias::cusp_chart(input.cusp)?;
    PolarizationVector::parse(chart, &input.ell.replace('x', "^"))
}

fn ias_cmd(c: &IasCmd) -> Result<Certificate> {
    match c {
        IasCmd::CheckSymmetry(input) => {
            let ell = read_ell(input)?;
            let mut cert = Certificate::new("ias check-symmetry", json!({ "cusp": input.cusp, "ell": ell.entries }));
            let s = ias::symmetry_predicate(input.cusp, &ell)?;
            let fold = ias::fold_invariant(input.cusp, &ell)?;
            cert.line(format!("{}", s.holds));
            for v in &s.violated {
                cert.line(format!("  {v}"));
            }
            cert.check("agrees with the folding's label action", s.holds, fold);
            cert.result = serde_json::to_value(&s).expect("serializable");
            Ok(cert)
        }
        IasCmd::Build { input, svg } => {
            let ell = read_ell(input)?;
            let mut cert = Certificate::new("ias build", json!({ "cusp": input.cusp, "ell": ell.entries }));
            let config = ias::ChartConfig::validated(ell.chart)?;
            let p = ias::build_polygon(&config, &ell)?;
            let j = p.to_json();
            cert.line(format!("edges {:?}", j.edges));
            cert.line(format!("surgeries {:?}", j.surgeries));
            if let Some(c) = &j.closing {
                cert.line(format!("closing {c}"));
            }
            let s = ias::symmetry_predicate(input.cusp, &ell)?;
            cert.check("symmetric for the cusp", true, s.holds);
            if let Some(path) = svg {
                std::fs::write(path, p.to_svg())?;
            }
            cert.result = json!({ "polygon": j, "vertices": p.vertices(), "nodes": p.nodes });
            Ok(cert)
        }
        IasCmd::Charge { input, disk } => {
            let ell = read_ell(input)?;
            let mut cert = Certificate::new("ias charge", json!({ "cusp": input.cusp, "ell": ell.entries, "disk": disk }));
            let config = ias::ChartConfig::validated(ell.chart)?;
            let p = ias::build_polygon(&config, &ell)?;
            let glue = if *disk { Glue::None } else { Glue::Double };
            let inv = ias::singularity_inventory(&p, glue);
            for it in &inv.items {
                cert.line(format!("{:32} {:?} charge {} monodromy {:?}", it.tag, it.place, it.charge, it.monodromy));
            }
            let total = ias::total_charge(&inv);
            cert.line(format!("total {total:?}"));
            if !disk {
                cert.check("total charge", ias::ChargeTotal::Sphere(24), total);
            }
            cert.result = json!({ "inventory": inv, "total": total });
            Ok(cert)
        }
        IasCmd::Svg(input) => {
            let ell = read_ell(input)?;
            let mut cert = Certificate::new("ias svg", json!({ "cusp": input.cusp, "ell": ell.entries }));
            let config = ias::ChartConfig::validated(ell.chart)?;
            let svg = ias::build_polygon(&config, &ell)?.to_svg();
            cert.result = json!({ "svg": svg });
            cert.export = Some(svg);
            Ok(cert)
        }
        IasCmd::Examples => {
            let mut cert = Certificate::new("ias examples", json!({}));
            let mut result = Vec::new();
            for ex in ias::worked_examples() {
                let config = ias::ChartConfig::builtin(ex.ell.chart);
                let p = ias::build_polygon(&config, &ex.ell)?;
                cert.check(&format!("{} edges", ex.name), &ex.edges, rotate(&p.edge_vectors(), &ex.edges));
                cert.check(&format!("{} surgeries", ex.name), &ex.surgeries, p.surgeries());
                cert.check(&format!("{} horizontal base", ex.name), ex.closing, p.closing_slot.is_some());
                let b = ias::build_example(&ex)?;
                cert.check(&format!("{} symmetric for cusp {}", ex.name, ex.cusp), true, b.symmetry.holds);
                cert.check(&format!("{} total charge", ex.name), ias::ChargeTotal::Sphere(24), b.total);
                cert.check(&format!("{} symmetry is an involution", ex.name), true, b.action.is_involution());
                cert.line(format!("{}: edges {:?}", ex.name, p.to_json().edges));
                result.push(json!({ "name": ex.name, "polygon": p.to_json(), "total": b.total, "fixed_locus": b.action.fixed_locus }));
            }
            cert.result = Value::Array(result);
            Ok(cert)
        }
    }
}

fn rotate(v: &[ias::Vec2], like: &[ias::Vec2]) -> Vec<ias::Vec2> {
    match like.first().and_then(|f| v.iter().position(|x| x == f)) {
        Some(k) => v[k..].iter().chain(&v[..k]).cloned().collect(),
        None => v.to_vec(),
    }
}

fn polytope_cmd(c: &PolytopeCmd) -> Result<Certificate> {
    match c {
        PolytopeCmd::Square { side } => {
            let mut cert = Certificate::new("polytope square", json!({ "side": side }));
            if *side <= 0 {
                return Err(Error::DegeneratePolytope);
            }
            let p = polytope::square(*side);
            let full = p.lattice_points(PointLattice::Full).len();
            let even = p.lattice_points(PointLattice::Even).len();
            cert.line(format!("full {full}, even {even}"));
            let n = (*side + 1) as usize;
            cert.check("full count", n * n, full);
            cert.check("even count", n * n / 2 + n * n % 2, even);
            cert.result = json!({ "full": full, "even": even });
            Ok(cert)
        }
        PolytopeCmd::Points { vertices, even } => {
            let vs = parse_vectors(vertices)?;
            let p = Polytope::new(vs.clone())?;
            let lat = if *even { PointLattice::Even } else { PointLattice::Full };
            let mut cert = Certificate::new("polytope points", json!({ "vertices": vs, "lattice": lat }));
            let pts = p.lattice_points(lat);
            cert.line(format!("{} points", pts.len()));
            cert.result = json!({ "count": pts.len(), "points": pts });
            Ok(cert)
        }
    }
}
