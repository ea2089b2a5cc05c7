//! The two Coxeter diagrams of the 0-cusps of the hyperelliptic K3 moduli
//! space: `(18,0,0)₁ = U⊕E8²` with 19 roots and `(18,2,0)₁ = U(2)⊕E8²` with
//! 22 roots, in the standard vertex numbering.
//!
//! The numbering is fixed by a template Gram matrix. Regeneration runs
//! Vinberg's algorithm and matches the output against the template; the
//! frozen JSON files under `data/` store the result together with content
//! hashes.

use crate::error::{Error, Result};
use crate::lattice::{parse, Lattice};
use crate::linalg::IMat;
use crate::roots::{CoxeterDiagram, DiagramJson};
use crate::subdiagram::gram_isomorphisms;
use crate::vinberg::{default_v0, two_elementary_norms, vinberg, VinbergOptions};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::PathBuf;

/// Environment variable overriding the directory holding frozen data.
pub const DATA_DIR_ENV: &str = "ENRCUSP_DATA_DIR";

const FROZEN_1800: &str = include_str!("../data/diagram_18_0_0.json");
const FROZEN_1820: &str = include_str!("../data/diagram_18_2_0.json");
const SHA256SUMS: &str = include_str!("../data/SHA256SUMS");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chart {
    /// `(18,0,0)₁ = U⊕E8²`, roots `α_1..α_19`.
    Unimodular,
    /// `(18,2,0)₁ = U(2)⊕E8²`, roots `α_0..α_21`.
    TwoElementary,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::Unimodular => write!(f, "(18,0,0)"),
            Chart::TwoElementary => write!(f, "(18,2,0)"),
        }
    }
}

impl Chart {
    pub const ALL: [Chart; 2] = [Chart::Unimodular, Chart::TwoElementary];

    pub fn expr(self) -> &'static str {
        match self {
            Chart::Unimodular => "U+E8+E8",
            Chart::TwoElementary => "U(2)+E8+E8",
        }
    }

    pub fn lattice(self) -> Lattice {
        parse(self.expr()).expect("built-in expression").with_label(self.expr())
    }

    /// Display labels in vertex order.
    pub fn labels(self) -> Vec<usize> {
        match self {
            Chart::Unimodular => (1..=19).collect(),
            Chart::TwoElementary => (0..=21).collect(),
        }
    }

    pub fn len(self) -> usize {
        self.labels().len()
    }

    /// Labels of the roots on the boundary of the triangle, resp. square.
    /// The remaining roots are called irrelevant.
    pub fn relevant_labels(self) -> Vec<usize> {
        match self {
            Chart::Unimodular => (2..=18).collect(),
            Chart::TwoElementary => (0..=15).collect(),
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            Chart::Unimodular => "diagram_18_0_0.json",
            Chart::TwoElementary => "diagram_18_2_0.json",
        }
    }

    fn embedded(self) -> &'static str {
        match self {
            Chart::Unimodular => FROZEN_1800,
            Chart::TwoElementary => FROZEN_1820,
        }
    }

    /// Vertex index of display label `k`.
    pub fn index(self, k: usize) -> usize {
        self.labels().iter().position(|&x| x == k).expect("label in range")
    }

    /// Gram matrix of the simple roots in vertex order.
    pub fn template(self) -> IMat {
        let n = self.len();
        let mut g = IMat::zeros(n, n);
        let mut norm = |k: usize, v: i64| g[(self.index(k), self.index(k))] = v;
        match self {
            Chart::Unimodular => (1..=19).for_each(|k| norm(k, -2)),
            Chart::TwoElementary => {
                (0..=19).for_each(|k| norm(k, -2));
                norm(20, -4);
                norm(21, -4);
            }
        }
        let mut edge = |a: usize, b: usize, p: i64| {
            let (i, j) = (self.index(a), self.index(b));
            g[(i, j)] = p;
            g[(j, i)] = p;
        };
        match self {
            Chart::Unimodular => {
                for k in 2..18 {
                    edge(k, k + 1, 1);
                }
                edge(1, 4, 1);
                edge(19, 16, 1);
            }
            Chart::TwoElementary => {
                for k in 0..16 {
                    edge(k, (k + 1) % 16, 1);
                }
                edge(16, 0, 1);
                edge(18, 8, 1);
                edge(17, 4, 1);
                edge(19, 12, 1);
                edge(16, 20, 2);
                edge(18, 20, 2);
                edge(17, 21, 2);
                edge(19, 21, 2);
                edge(20, 21, 4);
            }
        }
        g
    }

    /// The displayed relation, as two coefficient vectors in vertex order.
    pub fn relation(self) -> (Vec<i64>, Vec<i64>) {
        let n = self.len();
        let mut lhs = vec![0; n];
        let mut rhs = vec![0; n];
        let pairs: (&[(usize, i64)], &[(usize, i64)]) = match self {
            Chart::Unimodular => (
                &[(1, 3), (2, 2), (3, 4), (4, 6), (5, 5), (6, 4), (7, 3), (8, 2), (9, 1)],
                &[(19, 3), (18, 2), (17, 4), (16, 6), (15, 5), (14, 4), (13, 3), (12, 2), (11, 1)],
            ),
            Chart::TwoElementary => (&[(16, 1), (20, 1), (18, 1)], &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 3), (6, 2), (7, 1), (17, 2)]),
        };
        for &(k, c) in pairs.0 {
            lhs[self.index(k)] = c;
        }
        for &(k, c) in pairs.1 {
            rhs[self.index(k)] = c;
        }
        (lhs, rhs)
    }
}

/// Reorder a diagram of `chart` so that its Gram matrix equals the template.
/// Among the matching orders the lexicographically first is used.
pub fn canonicalize(chart: Chart, d: &CoxeterDiagram) -> Result<CoxeterDiagram> {
    let t = chart.template();
    let isos = gram_isomorphisms(&d.gram, &t);
    let p = isos.first().ok_or_else(|| Error::Invalid(format!("diagram does not match the {chart} template")))?;
    let mut roots = vec![Vec::new(); d.len()];
    for (i, &pi) in p.iter().enumerate() {
        roots[pi] = d.roots[i].clone();
    }
    let out = CoxeterDiagram::from_roots(&d.lattice, roots)?.with_labels(chart.labels());
    debug_assert_eq!(out.gram, t);
    Ok(out)
}

/// Default Vinberg bounds for the two charts.
pub fn vinberg_options(l: &Lattice) -> Result<VinbergOptions> {
    Ok(VinbergOptions {
        v0: default_v0(l).ok_or(Error::Invalid("lattice has no leading hyperbolic plane".into()))?,
        norms: two_elementary_norms(),
        max_roots: 40,
        max_height: 40,
    })
}

/// Recompute the diagram from scratch with Vinberg's algorithm.
pub fn regenerate(chart: Chart) -> Result<CoxeterDiagram> {
    let l = chart.lattice();
    let out = vinberg(&l, &vinberg_options(&l)?)?;
    if !out.complete {
        return Err(Error::BoundExhausted(out.diagram.len()));
    }
    let d = canonicalize(chart, &out.diagram)?;
    check(chart, &d)?;
    Ok(d)
}

/// Structural checks every copy of the diagram must pass.
pub fn check(chart: Chart, d: &CoxeterDiagram) -> Result<()> {
    if d.gram != chart.template() || d.labels != chart.labels() {
        return Err(Error::Invalid(format!("{chart} diagram does not match its template")));
    }
    let (lhs, rhs) = chart.relation();
    if !d.verify_relation(&lhs, &rhs) {
        return Err(Error::Invalid(format!("{chart} relation fails")));
    }
    Ok(())
}

/// Canonical JSON text of a diagram, as stored in the data directory.
pub fn to_frozen_json(d: &CoxeterDiagram) -> String {
    compact_json(&serde_json::to_string_pretty(&d.to_json()).expect("serializable"))
}

/// Pretty JSON with innermost arrays of scalars kept on one line.
pub fn compact_json(pretty: &str) -> String {
    let mut out = String::new();
    let lines: Vec<&str> = pretty.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        if line.trim_end().ends_with('[') {
            let mut j = i + 1;
            let mut items = Vec::new();
            while j < lines.len() {
                let t = lines[j].trim();
                if t.starts_with(']') {
                    break;
                }
                if t.ends_with('[') || t.ends_with('{') {
                    items.clear();
                    break;
                }
                items.push(t.trim_end_matches(','));
                j += 1;
            }
            if j < lines.len() && !items.is_empty() && lines[j].trim().starts_with(']') {
                let close = lines[j].trim();
                out.push_str(line.trim_end());
                out.push_str(&items.join(", "));
                out.push_str(close);
                out.push('\n');
                i = j + 1;
                continue;
            }
        }
        out.push_str(line);
        out.push('\n');
        i += 1;
    }
    out
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn expected_hash(file: &str) -> Option<String> {
    SHA256SUMS.lines().find_map(|l| {
        let mut it = l.split_whitespace();
        let h = it.next()?;
        (it.next()? == file).then(|| h.to_string())
    })
}

/// Directory used for frozen data when the environment override is set.
pub fn data_dir_override() -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_ENV).map(PathBuf::from)
}

/// Load the frozen diagram, verifying its content hash and structure.
pub fn load(chart: Chart) -> Result<CoxeterDiagram> {
    let text = match data_dir_override() {
        Some(dir) => std::fs::read_to_string(dir.join(chart.file_name()))?,
        None => chart.embedded().to_string(),
    };
    from_frozen(chart, &text)
}

/// Parse and verify frozen diagram text.
pub fn from_frozen(chart: Chart, text: &str) -> Result<CoxeterDiagram> {
    let file = chart.file_name();
    let expected = expected_hash(file).ok_or_else(|| Error::Invalid(format!("no hash recorded for {file}")))?;
    let got = sha256_hex(text);
    if got != expected {
        return Err(Error::Integrity { file: file.to_string(), expected, got });
    }
    let j: DiagramJson = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    let d = CoxeterDiagram::from_json(&j)?;
    check(chart, &d)?;
    Ok(d)
}

/// `SHA256SUMS` text for a set of frozen files.
pub fn sha256sums(files: &[(&str, &str)]) -> String {
    files.iter().map(|(name, text)| format!("{}  {}\n", sha256_hex(text), name)).collect()
}
