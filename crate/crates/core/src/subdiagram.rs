//! Classification and enumeration of elliptic and parabolic subdiagrams,
//! diagram automorphisms, and Vinberg's finite-volume test.
//!
//! Vertex sets are bit masks, so diagrams are limited to 64 vertices.

use crate::linalg::{self, IMat};
use crate::roots::{CoxeterDiagram, EdgeClass};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub type Mask = u64;

pub fn mask_of(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

pub fn bits(m: Mask) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Type of a connected elliptic or parabolic diagram. `rank` is the index of
/// the type (`~E8` has rank 8 and nine vertices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentType {
    pub affine: bool,
    pub family: Family,
    pub rank: usize,
    /// Simply-laced component made of (−4)-roots.
    pub scaled: bool,
}

impl ComponentType {
    pub fn vertices(&self) -> usize {
        if self.affine {
            self.rank + 1
        } else {
            self.rank
        }
    }

    pub fn base_label(&self) -> String {
        format!("{}{:?}{}", if self.affine { "~" } else { "" }, self.family, self.rank)
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base_label(), if self.scaled { "(2)" } else { "" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Elliptic,
    Parabolic,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdiagramReport {
    /// Display labels of the vertices.
    pub vertex_subset: Vec<usize>,
    pub kind: Kind,
    pub components: Vec<String>,
    pub rank: usize,
    /// For parabolic subdiagrams: per affine component, the positive primitive
    /// coefficient vector of its isotropic kernel (indexed like `vertex_subset`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernels: Vec<Vec<i64>>,
}

impl SubdiagramReport {
    pub fn type_label(&self) -> String {
        self.components.join(" ")
    }
}

/// Sorted multiset label of component types, e.g. `~E7 ~E7 ~C2`.
pub fn multiset_label(types: &[ComponentType]) -> String {
    let mut t = types.to_vec();
    t.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.cmp(b)));
    t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Cached combinatorial view of a diagram.
pub struct Analyzer<'a> {
    pub d: &'a CoxeterDiagram,
    pub n: usize,
    adj: Vec<Mask>,
    memo: HashMap<Mask, Option<ComponentType>>,
}

impl<'a> Analyzer<'a> {
    pub fn new(d: &'a CoxeterDiagram) -> Self {
        let n = d.len();
        assert!(n <= 64, "diagram too large for mask representation");
        let mut adj = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && d.gram[(i, j)] != 0 {
                    adj[i] |= 1 << j;
                }
            }
        }
        Analyzer { d, n, adj, memo: HashMap::new() }
    }

    pub fn all(&self) -> Mask {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn neighbors(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn adjacent_masks(&self, a: Mask, b: Mask) -> bool {
        bits(a).iter().any(|&v| self.adj[v] & b != 0)
    }

    /// Connected component of `v` inside `within`.
    pub fn component_of(&self, v: usize, within: Mask) -> Mask {
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.adj[u] & within;
            }
            next &= !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn components(&self, mut m: Mask) -> Vec<Mask> {
        let mut out = Vec::new();
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            let c = self.component_of(v, m);
            out.push(c);
            m &= !c;
        }
        out
    }

    /// Type of a connected vertex set, if it is elliptic or affine.
    pub fn component_type(&mut self, m: Mask) -> Option<ComponentType> {
        if let Some(t) = self.memo.get(&m) {
            return *t;
        }
        let t = classify_connected(self.d, &bits(m));
        self.memo.insert(m, t);
        t
    }

    pub fn types(&mut self, m: Mask) -> Option<Vec<ComponentType>> {
        let comps = self.components(m);
        comps.into_iter().map(|c| self.component_type(c)).collect()
    }

    pub fn is_elliptic(&mut self, m: Mask) -> bool {
        match self.types(m) {
            Some(ts) => ts.iter().all(|t| !t.affine),
            None => false,
        }
    }

    pub fn is_parabolic(&mut self, m: Mask) -> bool {
        m != 0
            && match self.types(m) {
                Some(ts) => ts.iter().all(|t| t.affine),
                None => false,
            }
    }

    pub fn kind(&mut self, m: Mask) -> Kind {
        if self.is_elliptic(m) {
            Kind::Elliptic
        } else if self.is_parabolic(m) {
            Kind::Parabolic
        } else {
            Kind::Indefinite
        }
    }

    pub fn report(&mut self, m: Mask) -> SubdiagramReport {
        let kind = self.kind(m);
        let vs = bits(m);
        let types = self.types(m).unwrap_or_default();
        let rank = match kind {
            Kind::Elliptic => vs.len(),
            Kind::Parabolic => vs.len() - self.components(m).len(),
            Kind::Indefinite => linalg::IMat::rank(&self.d.gram.select(&vs, &vs)),
        };
        let mut kernels = Vec::new();
        if kind == Kind::Parabolic {
            for c in self.components(m) {
                let coeffs = affine_kernel(self.d, &bits(c));
                let mut full = vec![0; vs.len()];
                for (k, v) in bits(c).into_iter().enumerate() {
                    full[vs.iter().position(|&x| x == v).unwrap()] = coeffs[k];
                }
                kernels.push(full);
            }
        }
        let components = if types.is_empty() { vec![] } else { multiset_label(&types).split(' ').map(String::from).collect() };
        SubdiagramReport { vertex_subset: vs.iter().map(|&v| self.d.labels[v]).collect(), kind, components, rank, kernels }
    }

    pub fn label(&mut self, m: Mask) -> String {
        multiset_label(&self.types(m).unwrap_or_default())
    }

    /// All elliptic subsets with exactly `k` vertices.
    pub fn elliptic_subsets(&mut self, k: usize) -> Vec<Mask> {
        let n = self.n;
        if k > n {
            return vec![];
        }
        let mut out = Vec::new();
        if n - k <= 6 {
            let all = self.all();
            for removed in combinations(n, n - k) {
                let m = all & !mask_of(&removed);
                if self.is_elliptic(m) {
                    out.push(m);
                }
            }
            out.sort_unstable();
            return out;
        }
        self.elliptic_dfs(0, 0, 0, k, &mut out);
        out.sort_unstable();
        out
    }

    fn elliptic_dfs(&mut self, start: usize, m: Mask, size: usize, k: usize, out: &mut Vec<Mask>) {
        if size == k {
            out.push(m);
            return;
        }
        if self.n - start < k - size {
            return;
        }
        for v in start..self.n {
            if self.n - v < k - size {
                break;
            }
            let m2 = m | (1 << v);
            let c = self.component_of(v, m2);
            match self.component_type(c) {
                Some(t) if !t.affine => self.elliptic_dfs(v + 1, m2, size + 1, k, out),
                _ => {}
            }
        }
    }

    /// Every connected vertex set of affine type.
    pub fn affine_components(&mut self) -> Vec<Mask> {
        let mut found = BTreeSet::new();
        for r in 0..self.n {
            let ext = self.adj[r] & !((1u64 << (r + 1)) - 1);
            self.esu(1 << r, ext, r, &mut found);
        }
        found.into_iter().collect()
    }

    // Enumerate connected sets with minimum vertex `root`, extending only
    // through elliptic intermediate sets.
    fn esu(&mut self, m: Mask, ext: Mask, root: usize, found: &mut BTreeSet<Mask>) {
        match self.component_type(m) {
            Some(t) if t.affine => {
                found.insert(m);
                return;
            }
            Some(_) => {}
            None => return,
        }
        let mut ext = ext;
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= !(1 << w);
            // exclusive neighborhood of w: neighbors above root, not in m, not adjacent to m
            let mut nbhd_m = 0;
            for u in bits(m) {
                nbhd_m |= self.adj[u];
            }
            let excl = self.adj[w] & !m & !nbhd_m & !((1u64 << (root + 1)) - 1);
            self.esu(m | (1 << w), ext | excl, root, found);
        }
    }

    /// Parabolic subsets of total rank `rank` (unions of pairwise non-adjacent affine components).
    pub fn parabolic_subsets(&mut self, rank: usize) -> Vec<Mask> {
        let comps = self.affine_components();
        let ranks: Vec<usize> = comps.iter().map(|&c| self.component_type(c).unwrap().rank).collect();
        let mut out = Vec::new();
        let adj_closure: Vec<Mask> = comps
            .iter()
            .map(|&c| {
                let mut nb = c;
                for v in bits(c) {
                    nb |= self.adj[v];
                }
                nb
            })
            .collect();
        fn rec(i: usize, used: Mask, blocked: Mask, left: usize, comps: &[Mask], ranks: &[usize], closure: &[Mask], out: &mut Vec<Mask>) {
            if left == 0 {
                out.push(used);
                return;
            }
            for j in i..comps.len() {
                if ranks[j] <= left && comps[j] & blocked == 0 {
                    rec(j + 1, used | comps[j], blocked | closure[j], left - ranks[j], comps, ranks, closure, out);
                }
            }
        }
        if rank == 0 {
            return vec![];
        }
        rec(0, 0, 0, rank, &comps, &ranks, &adj_closure, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of ways an elliptic set of rank `n−1` extends to an elliptic set
    /// of rank `n` or a parabolic set of rank `n−1`.
    pub fn extension_count(&mut self, s: Mask) -> usize {
        let comps = self.components(s);
        let mut count = 0;
        // (vertex, set of component indices it absorbs into an affine diagram)
        let mut affine_ext: Vec<(usize, u64)> = Vec::new();
        for v in 0..self.n {
            if s >> v & 1 == 1 {
                continue;
            }
            let m2 = s | (1 << v);
            let c = self.component_of(v, m2);
            match self.component_type(c) {
                Some(t) if !t.affine => count += 1,
                Some(_) => {
                    let touched = comps.iter().enumerate().filter(|(_, &cm)| cm & c != 0).fold(0u64, |acc, (i, _)| acc | (1 << i));
                    affine_ext.push((v, touched));
                }
                None => {}
            }
        }
        let full: u64 = if comps.len() == 64 { u64::MAX } else { (1u64 << comps.len()) - 1 };
        fn cover(covered: u64, chosen: Mask, full: u64, ext: &[(usize, u64)], adj: &[Mask]) -> usize {
            if covered == full {
                return 1;
            }
            // the lowest uncovered component must be covered by some later candidate
            let need = (!covered & full).trailing_zeros();
            let mut total = 0;
            for &(v, t) in ext {
                if t >> need & 1 == 1 && t & covered == 0 && adj[v] & chosen == 0 {
                    total += cover(covered | t, chosen | (1 << v), full, ext, adj);
                }
            }
            total
        }
        if !affine_ext.is_empty() && !comps.is_empty() {
            count += cover(0, 0, full, &affine_ext, &self.adj);
        }
        count
    }

    /// Vinberg's criterion for a polytope in hyperbolic space of dimension `dim`:
    /// some vertex exists and every edge (elliptic set of rank `dim − 1`) has exactly two ends.
    pub fn has_finite_volume(&mut self, dim: usize) -> bool {
        if dim < 2 {
            return false;
        }
        let edges = self.elliptic_subsets(dim - 1);
        if edges.is_empty() {
            return false;
        }
        for s in edges {
            if self.extension_count(s) != 2 {
                return false;
            }
        }
        true
    }

    /// Maximal parabolic subsets: parabolic of rank `dim − 1`.
    pub fn maximal_parabolics(&mut self, dim: usize) -> Vec<Mask> {
        self.parabolic_subsets(dim - 1)
    }
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Coxeter-graph recognition of a connected vertex set.
pub fn classify_connected(d: &CoxeterDiagram, vs: &[usize]) -> Option<ComponentType> {
    let n = vs.len();
    let norms: Vec<i64> = vs.iter().map(|&v| d.norm(v)).collect();
    let all_scaled = norms.iter().all(|&x| x == -4);
    if n == 1 {
        return Some(ComponentType { affine: false, family: Family::A, rank: 1, scaled: all_scaled });
    }
    let mut edges = Vec::new();
    let mut deg = vec![0usize; n];
    let mut nbr: Vec<Vec<(usize, EdgeClass)>> = vec![vec![]; n];
    for a in 0..n {
        for b in a + 1..n {
            let e = d.edge(vs[a], vs[b]);
            match e {
                EdgeClass::None => {}
                EdgeClass::Dotted { .. } | EdgeClass::Other { .. } => return None,
                _ => {
                    edges.push((a, b, e));
                    deg[a] += 1;
                    deg[b] += 1;
                    nbr[a].push((b, e));
                    nbr[b].push((a, e));
                }
            }
        }
    }
    let thick = edges.iter().filter(|e| e.2 == EdgeClass::Thick).count();
    if thick > 0 {
        return if n == 2 && thick == 1 { Some(ComponentType { affine: true, family: Family::A, rank: 1, scaled: all_scaled }) } else { None };
    }
    let m = edges.len();
    let nd = edges.iter().filter(|e| e.2 == EdgeClass::Double).count();
    let nt = edges.iter().filter(|e| e.2 == EdgeClass::Triple).count();
    let simply = nd == 0 && nt == 0;
    if m == n {
        return if simply && deg.iter().all(|&x| x == 2) {
            Some(ComponentType { affine: true, family: Family::A, rank: n - 1, scaled: all_scaled })
        } else {
            None
        };
    }
    if m != n - 1 {
        return None;
    }
    let max_deg = *deg.iter().max().unwrap();
    let path_order = || -> Vec<usize> {
        let start = (0..n).find(|&i| deg[i] == 1).unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let nx = nbr[cur].iter().map(|x| x.0).find(|&x| x != prev).unwrap();
            prev = cur;
            cur = nx;
            order.push(cur);
        }
        order
    };
    let ct = |affine, family, rank| Some(ComponentType { affine, family, rank, scaled: false });
    if nt > 0 {
        if nt == 1 && nd == 0 {
            if n == 2 {
                return ct(false, Family::G, 2);
            }
            if n == 3 && max_deg == 2 {
                let p = path_order();
                if d.edge(vs[p[1]], vs[p[2]]) == EdgeClass::Triple || d.edge(vs[p[0]], vs[p[1]]) == EdgeClass::Triple {
                    return ct(true, Family::G, 2);
                }
            }
        }
        return None;
    }
    if simply {
        let branches: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
        let sc = |affine, family, rank| Some(ComponentType { affine, family, rank, scaled: all_scaled });
        if branches.is_empty() {
            return sc(false, Family::A, n);
        }
        if branches.len() == 1 {
            let b = branches[0];
            if deg[b] == 4 {
                return if n == 5 { sc(true, Family::D, 4) } else { None };
            }
            if deg[b] != 3 {
                return None;
            }
            let mut arms: Vec<usize> = nbr[b].iter().map(|&(x, _)| arm_length(&nbr, b, x)).collect();
            arms.sort_unstable();
            return match (arms[0], arms[1], arms[2]) {
                (1, 1, c) => sc(false, Family::D, c + 3),
                (1, 2, 2) => sc(false, Family::E, 6),
                (1, 2, 3) => sc(false, Family::E, 7),
                (1, 2, 4) => sc(false, Family::E, 8),
                (2, 2, 2) => sc(true, Family::E, 6),
                (1, 3, 3) => sc(true, Family::E, 7),
                (1, 2, 5) => sc(true, Family::E, 8),
                _ => None,
            };
        }
        if branches.len() == 2 && branches.iter().all(|&b| deg[b] == 3) {
            let ok = branches.iter().all(|&b| nbr[b].iter().filter(|&&(x, _)| deg[x] == 1).count() >= 2);
            if ok && n >= 6 {
                return sc(true, Family::D, n - 1);
            }
        }
        return None;
    }
    if nd == 1 {
        if max_deg <= 2 {
            let p = path_order();
            let pos = (0..n - 1).find(|&i| d.edge(vs[p[i]], vs[p[i + 1]]) == EdgeClass::Double).unwrap();
            if pos == 0 || pos == n - 2 {
                let (leaf, inner) = if pos == 0 { (p[0], p[1]) } else { (p[n - 1], p[n - 2]) };
                let fam = if n == 2 || norms[leaf].abs() < norms[inner].abs() { Family::B } else { Family::C };
                return ct(false, fam, n);
            }
            if n == 4 && pos == 1 {
                return ct(false, Family::F, 4);
            }
            if n == 5 && (pos == 1 || pos == 2) {
                return ct(true, Family::F, 4);
            }
            return None;
        }
        let branches: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
        if branches.len() == 1 && deg[branches[0]] == 3 {
            let b = branches[0];
            let leaves = nbr[b].iter().filter(|&&(x, e)| deg[x] == 1 && e == EdgeClass::Single).count();
            // the remaining arm must end in the double edge
            if leaves >= 2 {
                let far = nbr[b].iter().filter(|&&(x, e)| !(deg[x] == 1 && e == EdgeClass::Single)).map(|&(x, e)| (x, e)).next();
                let arm_start = far;
                if let Some((x, e)) = arm_start {
                    // walk to the end of the arm
                    let mut prev = b;
                    let mut cur = x;
                    let mut last = e;
                    loop {
                        let next: Vec<_> = nbr[cur].iter().filter(|&&(y, _)| y != prev).collect();
                        if next.is_empty() {
                            break;
                        }
                        if last == EdgeClass::Double {
                            return None;
                        }
                        prev = cur;
                        cur = next[0].0;
                        last = next[0].1;
                    }
                    if last == EdgeClass::Double {
                        return ct(true, Family::B, n - 1);
                    }
                }
            }
        }
        return None;
    }
    if nd == 2 && max_deg <= 2 {
        let p = path_order();
        if d.edge(vs[p[0]], vs[p[1]]) == EdgeClass::Double && d.edge(vs[p[n - 2]], vs[p[n - 1]]) == EdgeClass::Double {
            return ct(true, Family::C, n - 1);
        }
    }
    None
}

fn arm_length(nbr: &[Vec<(usize, EdgeClass)>], from: usize, start: usize) -> usize {
    let mut len = 1;
    let mut prev = from;
    let mut cur = start;
    loop {
        let next: Vec<usize> = nbr[cur].iter().map(|x| x.0).filter(|&y| y != prev).collect();
        if next.len() != 1 {
            return if next.is_empty() { len } else { usize::MAX / 4 };
        }
        prev = cur;
        cur = next[0];
        len += 1;
    }
}

/// Positive primitive kernel vector of the Gram matrix of an affine component.
pub fn affine_kernel(d: &CoxeterDiagram, vs: &[usize]) -> Vec<i64> {
    let g = d.gram.select(vs, vs);
    let k = linalg::kernel(&g);
    assert_eq!(k.cols, 1, "affine component must have one-dimensional kernel");
    let mut v = linalg::primitive(&k.col(0));
    if v.iter().any(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Ambient isotropic vector `Σ cᵢ αᵢ` of a parabolic component (made primitive in the lattice).
pub fn isotropic_vector(d: &CoxeterDiagram, vs: &[usize]) -> Vec<i64> {
    let c = affine_kernel(d, vs);
    let r = d.lattice.rank();
    let mut v = vec![0; r];
    for (k, &i) in vs.iter().enumerate() {
        for t in 0..r {
            v[t] += c[k] * d.roots[i][t];
        }
    }
    linalg::primitive(&v)
}

/// All permutations of the vertices preserving the Gram matrix.
pub fn automorphisms(d: &CoxeterDiagram) -> Vec<Vec<usize>> {
    gram_isomorphisms(&d.gram, &d.gram)
}

/// All permutations `p` with `h[p(i), p(j)] = g[i, j]`, sorted lexicographically.
pub fn gram_isomorphisms(g: &IMat, h: &IMat) -> Vec<Vec<usize>> {
    let n = g.rows;
    if h.rows != n {
        return vec![];
    }
    // vertex invariant: norm and sorted row
    let inv = |m: &IMat| -> Vec<(i64, Vec<i64>)> {
        (0..n)
            .map(|i| {
                let mut row: Vec<i64> = (0..n).filter(|&j| j != i).map(|j| m[(i, j)]).collect();
                row.sort_unstable();
                (m[(i, i)], row)
            })
            .collect()
    };
    let (ig, ih) = (inv(g), inv(h));
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        g: &IMat,
        h: &IMat,
        ig: &[(i64, Vec<i64>)],
        ih: &[(i64, Vec<i64>)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.rows;
        if i == n {
            out.push(perm.clone());
            return;
        }
        for t in 0..n {
            if used[t] || ih[t] != ig[i] {
                continue;
            }
            if (0..i).all(|j| g[(i, j)] == h[(t, perm[j])]) {
                perm[i] = t;
                used[t] = true;
                rec(i + 1, g, h, ig, ih, perm, used, out);
                used[t] = false;
            }
        }
        perm[i] = usize::MAX;
    }
    rec(0, g, h, &ig, &ih, &mut perm, &mut used, &mut out);
    out.sort();
    out
}

pub fn permute_mask(m: Mask, perm: &[usize]) -> Mask {
    bits(m).into_iter().fold(0, |acc, v| acc | (1 << perm[v]))
}

/// Canonical (numerically least) image of a mask under a permutation group.
pub fn canonical_mask(m: Mask, group: &[Vec<usize>]) -> Mask {
    group.iter().map(|p| permute_mask(m, p)).min().unwrap_or(m)
}

/// Orbit representatives (canonical masks) in increasing order.
pub fn orbits(masks: &[Mask], group: &[Vec<usize>]) -> Vec<Mask> {
    let set: BTreeSet<Mask> = masks.iter().map(|&m| canonical_mask(m, group)).collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{parse, Lattice};

    fn chain(n: usize) -> CoxeterDiagram {
        let l = parse(&format!("A{n}")).unwrap();
        let roots = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        CoxeterDiagram::from_roots(&l, roots).unwrap()
    }

    #[test]
    fn chain_types() {
        let d = chain(9);
        let mut a = Analyzer::new(&d);
        assert_eq!(a.label(a.all()), "A9");
        assert_eq!(automorphisms(&d).len(), 2);
        let e8 = parse("E8").unwrap();
        let roots = (0..8).map(|i| (0..8).map(|j| (i == j) as i64).collect()).collect();
        let d = CoxeterDiagram::from_roots(&e8, roots).unwrap();
        let mut a = Analyzer::new(&d);
        assert_eq!(a.label(a.all()), "E8");
        let _ = Lattice::from_rows(&[vec![-2]]);
    }

    #[test]
    fn combos() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 0).len(), 1);
    }
}
