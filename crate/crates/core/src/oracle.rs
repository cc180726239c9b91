//! Brute-force cross-check of the closed-form engine on a truncation.
//!
//! Every tail is cut to its first `L` arcs. On the resulting finite
//! quiver all submodules of `Hom(-, M)` are enumerated directly,
//! presentations are recomputed with dense linear algebra, modules are
//! matched to arcs by exhaustive search, and the results are compared
//! with the engine on positions the truncation cannot influence.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::character::{character_of_arc, window};
use crate::error::{Error, Result};
use crate::hom::{composite_nonzero, hom_dim};
use crate::linalg::rank;
use crate::representations::{enumerate_fp_submodules, index, min_projective_presentation, K0Element, Submodule};
use crate::series::{poly_display, LaurentPoly, Monomial};
use crate::surface::{shift, sigma, Acc, Arc, BoundaryPoint};
use crate::tilting::{CtVertex, Side, TailId, Tilting};

pub const DEFAULT_TRUNCATION: u64 = 8;
pub const MIN_TRUNCATION: u64 = 4;

/// Decides whether the structure map `u -> v` of `Hom(-, m)` is nonzero,
/// i.e. whether a submodule containing `v` must contain `u`.
pub type ClosurePredicate = fn(&Tilting, Arc, CtVertex, CtVertex) -> bool;

pub fn default_closure(t: &Tilting, m: Arc, u: CtVertex, v: CtVertex) -> bool {
    let (a, b) = (t.arc(u), t.arc(v));
    u != v && hom_dim(a, b) == 1 && composite_nonzero(a, b, m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub name: String,
    pub passed: bool,
    /// First divergence, or a short summary when the check passed.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub object: Arc,
    pub truncation: u64,
    pub submodules: usize,
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_divergence(&self) -> Option<&OracleCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// The finite quiver `T_L` together with the thin module of one arc.
struct Truncated<'a> {
    t: &'a Tilting,
    m: Arc,
    l: u64,
    verts: Vec<CtVertex>,
    arcs: Vec<Arc>,
    closure: ClosurePredicate,
}

impl<'a> Truncated<'a> {
    fn new(t: &'a Tilting, m: Arc, l: u64, closure: ClosurePredicate) -> Self {
        let verts = t.window_radius(l);
        let arcs = verts.iter().map(|&v| t.arc(v)).collect();
        Truncated { t, m, l, verts, arcs, closure }
    }

    /// Positions unaffected by the truncation.
    fn reliable(&self, v: CtVertex, slack: u64) -> bool {
        v.pos().is_none_or(|n| n + slack <= self.l)
    }

    fn restrict(&self, k: &K0Element, slack: u64) -> K0Element {
        K0Element(k.0.iter().filter(|(&v, _)| self.reliable(v, slack)).map(|(&v, &c)| (v, c)).collect())
    }

    /// All subsets of the support of `Hom(-, m)` closed under the predicate.
    fn submodules(&self) -> Vec<BTreeSet<usize>> {
        let support: Vec<usize> = (0..self.verts.len()).filter(|&i| hom_dim(self.arcs[i], self.m) == 1).collect();
        let n = support.len();
        let forces: Vec<Vec<bool>> = support
            .iter()
            .map(|&i| support.iter().map(|&j| (self.closure)(self.t, self.m, self.verts[i], self.verts[j])).collect())
            .collect();
        let mut out = Vec::new();
        let mut state: Vec<Option<bool>> = vec![None; n];
        fn go(k: usize, forces: &[Vec<bool>], state: &mut Vec<Option<bool>>, support: &[usize], out: &mut Vec<BTreeSet<usize>>) {
            if k == state.len() {
                out.push((0..state.len()).filter(|&i| state[i] == Some(true)).map(|i| support[i]).collect());
                return;
            }
            for choice in [false, true] {
                // v in N and u -> v forces u in N
                let ok = (0..k).all(|i| {
                    let x = state[i] == Some(true);
                    !(x && forces[k][i] && !choice) && !(choice && forces[i][k] && !x)
                });
                if ok {
                    state[k] = Some(choice);
                    go(k + 1, forces, state, support, out);
                    state[k] = None;
                }
            }
        }
        go(0, &forces, &mut state, &support, &mut out);
        out
    }

    fn top(&self, sub: &BTreeSet<usize>) -> Vec<usize> {
        sub.iter()
            .copied()
            .filter(|&i| !sub.iter().any(|&j| (self.closure)(self.t, self.m, self.verts[i], self.verts[j])))
            .collect()
    }

    fn labels(&self, sub: &BTreeSet<usize>) -> String {
        let v: Vec<String> = sub.iter().map(|&i| self.t.label(self.verts[i])).collect();
        format!("{{{}}}", v.join(", "))
    }

    /// `P1 -> P0 -> N -> 0` on `T_L` for a submodule `N` of the thin
    /// module of `amb`, by nullspaces and ranks of dense matrices.
    fn presentation(&self, amb: Arc, sub: &BTreeSet<usize>) -> (K0Element, K0Element) {
        let maps = |i: usize, j: usize| {
            i != j && hom_dim(self.arcs[i], self.arcs[j]) == 1 && composite_nonzero(self.arcs[i], self.arcs[j], amb)
        };
        let top: Vec<usize> = sub.iter().copied().filter(|&i| !sub.iter().any(|&j| maps(i, j))).collect();
        let mut p0 = K0Element::zero();
        for &g in &top {
            p0.add_term(self.verts[g], 1);
        }
        let n = self.verts.len();
        // P0(u) has one coordinate per top vertex g with Hom(u, g) != 0
        let kernels: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|u| {
                let coords: Vec<usize> = (0..top.len()).filter(|&c| hom_dim(self.arcs[u], self.arcs[top[c]]) == 1).collect();
                let row: Vec<i64> = coords
                    .iter()
                    .map(|&c| i64::from(sub.contains(&u) && (u == top[c] || maps(u, top[c]))))
                    .collect();
                nullspace(&[row])
                    .into_iter()
                    .map(|k| {
                        let mut full = vec![0; top.len()];
                        for (x, &c) in k.into_iter().zip(&coords) {
                            full[c] = x;
                        }
                        full
                    })
                    .collect()
            })
            .collect();
        let mut p1 = K0Element::zero();
        for u in 0..n {
            if kernels[u].is_empty() {
                continue;
            }
            let mut images = Vec::new();
            for v in 0..n {
                if v == u || hom_dim(self.arcs[u], self.arcs[v]) == 0 {
                    continue;
                }
                for k in &kernels[v] {
                    let img: Vec<i64> = (0..top.len())
                        .map(|c| if composite_nonzero(self.arcs[u], self.arcs[v], self.arcs[top[c]]) { k[c] } else { 0 })
                        .collect();
                    images.push(img);
                }
            }
            let d = kernels[u].len() - rank(&images);
            if d > 0 {
                p1.add_term(self.verts[u], d as i64);
            }
        }
        (p1, p0)
    }

    fn index(&self, n: Arc) -> K0Element {
        if let Some(v) = self.t.vertex_of_arc(shift(n, -1)) {
            return K0Element::unit(v).neg();
        }
        let full: BTreeSet<usize> = (0..self.verts.len()).filter(|&i| hom_dim(self.arcs[i], n) == 1).collect();
        let (p1, p0) = self.presentation(n, &full);
        p0.sub(&p1)
    }

    fn coindex(&self, n: Arc) -> K0Element {
        self.index(shift(n, -1)).neg()
    }

    /// Candidate arcs with endpoints near anything the truncation sees.
    fn candidate_arcs(&self) -> Vec<Arc> {
        let mut pts: BTreeSet<BoundaryPoint> = (0..self.t.surface().r).map(Acc).collect();
        let mut seeds = vec![self.m];
        for tail in self.t.tails() {
            seeds.extend((1..=self.l + 2).map(|n| self.t.arc(tail.at(n))));
        }
        seeds.extend(self.t.point_vertices().map(|v| self.t.arc(v)));
        for a in seeds {
            let (p, q) = a.endpoints();
            for k in -2..=2 {
                pts.insert(sigma(p, k));
                pts.insert(sigma(q, k));
            }
        }
        let pts: Vec<BoundaryPoint> = pts.into_iter().collect();
        let mut out = Vec::new();
        for (i, &p) in pts.iter().enumerate() {
            for &q in &pts[i + 1..] {
                if let Some(a) = Arc::try_new(p, q) {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Splits `sub` into connected components and finds an arc for each.
    fn realize(&self, sub: &BTreeSet<usize>, table: &HashMap<Vec<usize>, Vec<Arc>>) -> Option<Vec<Arc>> {
        let members: Vec<usize> = sub.iter().copied().collect();
        let mut comp: Vec<usize> = (0..members.len()).collect();
        loop {
            let mut changed = false;
            for a in 0..members.len() {
                for b in 0..members.len() {
                    let linked = (self.closure)(self.t, self.m, self.verts[members[a]], self.verts[members[b]]);
                    if linked && comp[a] != comp[b] {
                        let (x, y) = (comp[a].min(comp[b]), comp[a].max(comp[b]));
                        comp.iter_mut().filter(|c| **c == y).for_each(|c| *c = x);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, &c) in comp.iter().enumerate() {
            groups.entry(c).or_default().push(members[a]);
        }
        let mut out = Vec::new();
        for g in groups.values() {
            let n = table.get(g)?.iter().copied().find(|&n| {
                g.iter().all(|&i| {
                    g.iter().all(|&j| {
                        let (a, b) = (self.arcs[i], self.arcs[j]);
                        i == j || hom_dim(a, b) == 0 || composite_nonzero(a, b, n) == composite_nonzero(a, b, self.m)
                    })
                })
            })?;
            out.push(n);
        }
        out.sort();
        Some(out)
    }
}

/// Basis of the integer nullspace of `rows`.
fn nullspace(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..ncols {
                    m[i][k] = m[i][k] * a - m[r][k] * b;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        // scale so every pivot row divides evenly
        let scale: i128 = pivots.iter().enumerate().fold(1, |acc, (i, &pc)| lcm(acc, m[i][pc]));
        let mut v = vec![0i128; ncols];
        v[free] = scale;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][free] * scale / m[i][pc];
        }
        out.push(v.into_iter().map(|x| x as i64).collect());
    }
    out
}

fn lcm(a: i128, b: i128) -> i128 {
    let (mut x, mut y) = (a.abs(), b.abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a.abs() / x * b.abs()
}

fn check(name: &str, passed: bool, detail: String) -> OracleCheck {
    OracleCheck { name: name.to_string(), passed, detail }
}

/// Runs the oracle with the standard closure predicate.
pub fn run_oracle(t: &Tilting, m: Arc, l: u64) -> Result<OracleReport> {
    run_oracle_with(t, m, l, default_closure)
}

pub fn run_oracle_with(t: &Tilting, m: Arc, l: u64, closure: ClosurePredicate) -> Result<OracleReport> {
    if l < MIN_TRUNCATION {
        return Err(Error::InvalidArgument(format!("truncation length {l} is below {MIN_TRUNCATION}")));
    }
    t.surface().check_arc(m)?;
    let tr = Truncated::new(t, m, l, closure);
    let all = tr.submodules();
    let kept: Vec<&BTreeSet<usize>> =
        all.iter().filter(|s| tr.top(s).iter().all(|&g| tr.reliable(tr.verts[g], 2))).collect();
    let mut checks = Vec::new();

    // submodules
    let fams = enumerate_fp_submodules(t, m)?;
    let mut engine: BTreeMap<BTreeSet<usize>, Submodule> = BTreeMap::new();
    let mut duplicate = None;
    for (_, _, sub) in fams.instances_up_to(t, l - 2) {
        let key: BTreeSet<usize> = (0..tr.verts.len()).filter(|&i| sub.support.get(tr.verts[i]) > 0).collect();
        if let Some(prev) = engine.insert(key.clone(), sub) {
            duplicate.get_or_insert((key, prev));
        }
    }
    let brute: BTreeSet<BTreeSet<usize>> = kept.iter().map(|s| (*s).clone()).collect();
    let engine_keys: BTreeSet<BTreeSet<usize>> = engine.keys().cloned().collect();
    let detail = if let Some((key, _)) = &duplicate {
        format!("engine lists {} twice", tr.labels(key))
    } else if let Some(s) = brute.difference(&engine_keys).next() {
        format!("brute force finds {} which the engine misses", tr.labels(s))
    } else if let Some(s) = engine_keys.difference(&brute).next() {
        format!("engine lists {} which is not a submodule", tr.labels(s))
    } else {
        format!("{} submodules agree", brute.len())
    };
    checks.push(check("submodules", duplicate.is_none() && brute == engine_keys, detail));

    // presentations
    let mut first_bad = None;
    for s in brute.intersection(&engine_keys) {
        let (p1, p0) = tr.presentation(m, s);
        let e = min_projective_presentation(t, &engine[s])?;
        let ok = tr.restrict(&p0, 2) == tr.restrict(&e.p0, 2) && tr.restrict(&p1, 2) == tr.restrict(&e.p1, 2);
        if !ok {
            first_bad = Some(format!(
                "{}: brute P1 {} P0 {}, engine P1 {} P0 {}",
                tr.labels(s),
                tr.restrict(&p1, 2).display(t),
                tr.restrict(&p0, 2).display(t),
                tr.restrict(&e.p1, 2).display(t),
                tr.restrict(&e.p0, 2).display(t)
            ));
            break;
        }
    }
    checks.push(check(
        "presentations",
        first_bad.is_none(),
        first_bad.unwrap_or_else(|| "all presentations agree".to_string()),
    ));

    // index and coindex of the object
    let (bi, ei) = (tr.restrict(&tr.index(m), 2), tr.restrict(&index(t, m)?, 2));
    let (bc, ec) = (tr.restrict(&tr.coindex(m), 2), tr.restrict(&crate::representations::coindex(t, m)?, 2));
    let ok = bi == ei && bc == ec;
    let detail = if ok {
        format!("ind {}, coind {}", ei.display(t), ec.display(t))
    } else {
        format!(
            "brute ind {} coind {}, engine ind {} coind {}",
            bi.display(t),
            bc.display(t),
            ei.display(t),
            ec.display(t)
        )
    };
    checks.push(check("indices", ok, detail));

    // window character
    let w = window(t, l - 3);
    let mut table: HashMap<Vec<usize>, Vec<Arc>> = HashMap::new();
    for n in tr.candidate_arcs() {
        let key: Vec<usize> = (0..tr.verts.len()).filter(|&i| hom_dim(tr.arcs[i], n) == 1).collect();
        table.entry(key).or_default().push(n);
    }
    let pre = Monomial::from_k0(&tr.coindex(m)).inv();
    let mut brute_poly = LaurentPoly::new();
    let mut unrealized = None;
    for s in &kept {
        let Some(arcs) = tr.realize(s, &table) else {
            unrealized.get_or_insert_with(|| tr.labels(s));
            continue;
        };
        let mut k = K0Element::zero();
        for &a in &arcs {
            k = k.add(&tr.coindex(a)).sub(&tr.index(a));
        }
        let x = pre.mul(&Monomial::from_k0(&k));
        if x.vars().all(|v| w.contains(&v)) {
            *brute_poly.entry(x).or_insert(0) += 1;
        }
    }
    brute_poly.retain(|_, c| *c != 0);
    let engine_poly = character_of_arc(t, m)?.expand(t, &w);
    let ok = unrealized.is_none() && brute_poly == engine_poly;
    let detail = match unrealized {
        Some(s) => format!("no arc realizes {s}"),
        None if ok => format!("{} monomials agree", engine_poly.len()),
        None => {
            let only_brute: LaurentPoly = brute_poly
                .iter()
                .filter(|(k, v)| engine_poly.get(*k) != Some(*v))
                .map(|(k, v)| (k.clone(), *v))
                .collect();
            let only_engine: LaurentPoly = engine_poly
                .iter()
                .filter(|(k, v)| brute_poly.get(*k) != Some(*v))
                .map(|(k, v)| (k.clone(), *v))
                .collect();
            format!(
                "brute only: {}; engine only: {}",
                poly_display(&only_brute, t),
                poly_display(&only_engine, t)
            )
        }
    };
    checks.push(check("character", ok, detail));

    Ok(OracleReport { object: m, truncation: l, submodules: all.len(), checks })
}

/// A deliberately wrong closure predicate: drops the structure maps leaving
/// left tails. Used as a negative control.
pub fn perturbed_closure(t: &Tilting, m: Arc, u: CtVertex, v: CtVertex) -> bool {
    let left = |x: CtVertex| x.tail_id().is_some_and(|TailId { side, .. }| side == Side::L);
    default_closure(t, m, u, v) && !(left(u) && !left(v))
}
