//! Cluster-tilting subcategories given by one fountain per accumulation
//! point plus finitely many extra ordinary arcs.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{crosses, sigma, Acc, Arc, ArcKind, BoundaryPoint, Regular, Surface};
use crate::uniform::UniformVector;

/// Extra tail positions kept explicit beyond the last relevant coordinate.
pub const MARGIN: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// One of the two infinite tails of the fountain at `acc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TailId {
    pub acc: usize,
    pub side: Side,
}

impl TailId {
    pub fn at(self, pos: u64) -> CtVertex {
        CtVertex::Tail { acc: self.acc, side: self.side, pos }
    }

    pub fn name(self) -> String {
        format!("f{}{:?}", self.acc, self.side)
    }
}

/// An indecomposable object of the tilting subcategory.
///
/// Tail positions start at 1 next to the base and grow toward the
/// accumulation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CtVertex {
    Tail { acc: usize, side: Side, pos: u64 },
    Limit(usize),
    Extra(usize),
}

impl CtVertex {
    pub fn tail_id(self) -> Option<TailId> {
        match self {
            CtVertex::Tail { acc, side, .. } => Some(TailId { acc, side }),
            _ => None,
        }
    }

    pub fn pos(self) -> Option<u64> {
        match self {
            CtVertex::Tail { pos, .. } => Some(pos),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FountainSpec {
    pub acc: usize,
    pub base: BoundaryPoint,
    /// Left tail: `{base, Regular(acc - 1, j)}` for `j >= left_from`.
    pub left_from: i64,
    /// Right tail: `{base, Regular(acc, j)}` for `j <= right_to`.
    pub right_to: i64,
}

impl FountainSpec {
    pub fn limit_arc(&self) -> Option<Arc> {
        Arc::try_new(self.base, Acc(self.acc))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TiltingSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub surface: Surface,
    pub fountains: Vec<FountainSpec>,
    #[serde(default)]
    pub extra_arcs: Vec<Arc>,
}

impl TiltingSpec {
    /// Parses and checks the schema. Cluster-tilting is checked separately
    /// by [`validate_ct`].
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: TiltingSpec = serde_json::from_str(s).map_err(|e| Error::Schema {
            path: format!("line {} column {}", e.line(), e.column()),
            msg: e.to_string(),
        })?;
        spec.check_schema()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    fn check_schema(&self) -> Result<()> {
        let schema = |path: String, msg: String| Err(Error::Schema { path, msg });
        if let Some(f) = self.format {
            if f != 1 {
                return schema("format".into(), format!("unsupported format {f}"));
            }
        }
        if self.surface.r == 0 {
            return schema("surface.acc".into(), "need at least one accumulation point".into());
        }
        for (k, f) in self.fountains.iter().enumerate() {
            if f.acc >= self.surface.r {
                return schema(format!("fountains[{k}].acc"), format!("no accumulation point {}", f.acc));
            }
            if !self.surface.contains(f.base) {
                return schema(format!("fountains[{k}].base"), format!("{} is not on the surface", f.base));
            }
        }
        for (k, a) in self.extra_arcs.iter().enumerate() {
            if self.surface.check_arc(*a).is_err() {
                return schema(format!("extra_arcs[{k}]"), format!("{a} is not on the surface"));
            }
        }
        Ok(())
    }

    fn tail_point(&self, f: &FountainSpec, side: Side, pos: u64) -> BoundaryPoint {
        let r = self.surface.r;
        match side {
            Side::L => Regular((f.acc + r - 1) % r, f.left_from + pos as i64 - 1),
            Side::R => Regular(f.acc, f.right_to - pos as i64 + 1),
        }
    }

    /// Regular points the structure of the spec depends on.
    fn anchor_points(&self) -> Vec<BoundaryPoint> {
        let mut pts = Vec::new();
        for f in &self.fountains {
            pts.push(f.base);
            pts.push(self.tail_point(f, Side::L, 1));
            pts.push(self.tail_point(f, Side::R, 1));
        }
        for a in &self.extra_arcs {
            let (p, q) = a.endpoints();
            pts.extend([p, q]);
        }
        pts
    }

    /// Number of tail positions that must be kept explicit so that every
    /// further position relates uniformly to `points`.
    fn cut(&self, f: &FountainSpec, side: Side, points: &[BoundaryPoint]) -> u64 {
        let r = self.surface.r;
        let interval = match side {
            Side::L => (f.acc + r - 1) % r,
            Side::R => f.acc,
        };
        let anchors = self.anchor_points();
        let idx = points
            .iter()
            .chain(anchors.iter())
            .filter(|p| p.interval() == Some(interval))
            .filter_map(|p| p.index());
        let furthest = match side {
            Side::L => idx.max().map(|j| j - f.left_from + 1),
            Side::R => idx.min().map(|j| f.right_to - j + 1),
        };
        (furthest.unwrap_or(0).max(0) as u64) + MARGIN
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    MissingFountain,
    TwoLimitArcs,
    DoubleLimitArc,
    InvalidTailArc,
    Duplicate,
    Crossing,
    Untriangulated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
    pub witness: Vec<Arc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, message: String, witness: Vec<Arc>) {
        self.violations.push(Violation { kind, message, witness });
    }
}

/// A face of the finite polygon left after removing the fans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub vertices: Vec<BoundaryPoint>,
    pub missing_diagonal: Option<Arc>,
}

/// Decides whether the spec describes a cluster-tilting subcategory.
pub fn validate_ct(spec: &TiltingSpec) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let r = spec.surface.r;
    let mut by_acc: Vec<Vec<&FountainSpec>> = vec![Vec::new(); r];
    for f in &spec.fountains {
        by_acc[f.acc].push(f);
    }
    for (i, fs) in by_acc.iter().enumerate() {
        match fs.len() {
            0 => rep.push(ViolationKind::MissingFountain, format!("no fountain at acc {i}"), vec![]),
            1 => {}
            _ => rep.push(
                ViolationKind::TwoLimitArcs,
                format!("two limit arcs at acc {i}"),
                fs.iter().filter_map(|f| f.limit_arc()).collect(),
            ),
        }
    }
    for f in &spec.fountains {
        check_fountain(spec, f, &mut rep);
    }
    for &a in &spec.extra_arcs {
        match a.kind() {
            ArcKind::Ordinary => {}
            ArcKind::DoubleLimit => {
                rep.push(ViolationKind::DoubleLimitArc, format!("double limit arc {a}"), vec![a])
            }
            ArcKind::OneSidedLimit => {
                let (p, q) = a.endpoints();
                let z = if p.is_acc() { p } else { q };
                let i = match z {
                    BoundaryPoint::Acc(i) => i,
                    _ => unreachable!(),
                };
                let mut w = vec![a];
                w.extend(by_acc[i].iter().filter_map(|f| f.limit_arc()));
                let kind = if w.len() == 2 && w[0] == w[1] {
                    ViolationKind::Duplicate
                } else {
                    ViolationKind::TwoLimitArcs
                };
                rep.push(kind, format!("two limit arcs at acc {i}"), w);
            }
        }
    }
    if !rep.accepted() {
        return rep;
    }
    check_crossings(spec, &mut rep);
    if !rep.accepted() {
        return rep;
    }
    for region in region_decomposition(spec) {
        if let Some(d) = region.missing_diagonal {
            let pts: Vec<String> = region.vertices.iter().map(|p| p.to_string()).collect();
            rep.push(
                ViolationKind::Untriangulated,
                format!("untriangulated region ({}); missing diagonal {d}", pts.join(", ")),
                vec![d],
            );
        }
    }
    rep
}

fn check_fountain(spec: &TiltingSpec, f: &FountainSpec, rep: &mut ValidationReport) {
    let BoundaryPoint::Regular { interval, index: b } = f.base else {
        rep.push(
            ViolationKind::InvalidTailArc,
            format!("fountain at acc {} has non-regular base {}", f.acc, f.base),
            vec![],
        );
        return;
    };
    for side in [Side::L, Side::R] {
        let first = spec.tail_point(f, side, 1);
        if first.interval() != Some(interval) {
            continue;
        }
        let j = first.index().unwrap();
        let ok = match side {
            Side::L => j >= b + 2,
            Side::R => j <= b - 2,
        };
        if !ok {
            rep.push(
                ViolationKind::InvalidTailArc,
                format!("{side:?} tail of fountain at acc {} runs into its base {}", f.acc, f.base),
                vec![],
            );
        }
    }
}

/// All arcs of the spec with tail positions up to the global cut.
fn finite_arcs(spec: &TiltingSpec, extra: u64) -> Vec<(String, Arc)> {
    let mut out = Vec::new();
    for f in &spec.fountains {
        for side in [Side::L, Side::R] {
            let cut = spec.cut(f, side, &[]);
            for n in 1..=cut + extra {
                let a = Arc::new(f.base, spec.tail_point(f, side, n)).expect("checked tail arc");
                out.push((format!("f{}{:?}{}", f.acc, side, n), a));
            }
        }
        if let Some(a) = f.limit_arc() {
            out.push((format!("z{}", f.acc), a));
        }
    }
    for (k, &a) in spec.extra_arcs.iter().enumerate() {
        out.push((format!("e{}", k + 1), a));
    }
    out
}

fn check_crossings(spec: &TiltingSpec, rep: &mut ValidationReport) {
    let arcs = finite_arcs(spec, 3);
    let mut seen: BTreeMap<Arc, &str> = BTreeMap::new();
    for (name, a) in &arcs {
        if let Some(prev) = seen.insert(*a, name) {
            rep.push(ViolationKind::Duplicate, format!("arc {a} listed twice ({prev}, {name})"), vec![*a]);
        }
    }
    for (k, (n1, a)) in arcs.iter().enumerate() {
        for (n2, b) in &arcs[k + 1..] {
            if crosses(*a, *b) {
                rep.push(ViolationKind::Crossing, format!("{n1} = {a} crosses {n2} = {b}"), vec![*a, *b]);
                return;
            }
        }
    }
}

/// Splits the region between the fans into faces cut out by the finite
/// arcs. Assumes the spec is non-crossing with one fountain per
/// accumulation point.
pub fn region_decomposition(spec: &TiltingSpec) -> Vec<Region> {
    let r = spec.surface.r;
    let mut by_acc: Vec<Option<&FountainSpec>> = vec![None; r];
    for f in &spec.fountains {
        by_acc[f.acc].get_or_insert(f);
    }
    let Some(fs) = by_acc.into_iter().collect::<Option<Vec<_>>>() else {
        return Vec::new();
    };
    let mut cycle = Vec::new();
    for i in 0..r {
        let from = fs[i].right_to;
        let to = fs[(i + 1) % r].left_from;
        cycle.extend((from..=to).map(|j| Regular(i, j)));
    }
    let mut diagonals = Vec::new();
    for f in &fs {
        for side in [Side::L, Side::R] {
            diagonals.push(Arc::new(f.base, spec.tail_point(f, side, 1)).expect("checked tail arc"));
        }
    }
    diagonals.extend(spec.extra_arcs.iter().copied());

    let mut faces = vec![cycle];
    for d in diagonals {
        let (u, v) = d.endpoints();
        let Some(k) = faces.iter().position(|p| p.contains(&u) && p.contains(&v)) else {
            continue;
        };
        let poly = faces.swap_remove(k);
        let i = poly.iter().position(|&x| x == u).unwrap();
        let j = poly.iter().position(|&x| x == v).unwrap();
        let (i, j) = (i.min(j), i.max(j));
        if j - i == 1 || (i == 0 && j == poly.len() - 1) {
            faces.push(poly);
            continue;
        }
        let first = poly[i..=j].to_vec();
        let mut second = poly[j..].to_vec();
        second.extend_from_slice(&poly[..=i]);
        faces.push(first);
        faces.push(second);
    }

    // the face through the gap (xL, xR) is the fan itself, always a triangle
    let mut regions: Vec<Region> = faces
        .into_iter()
        .filter(|p| p.len() > 3)
        .map(|mut vertices| {
            vertices.sort();
            let missing_diagonal =
                Arc::try_new(vertices[0], vertices[2]).or_else(|| Arc::try_new(vertices[1], vertices[3]));
            Region { vertices, missing_diagonal }
        })
        .collect();
    regions.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    regions
}

/// A maximal run of consecutive tilting arcs sharing a base, used to index
/// parametrized families. `Bridge` joins the right tail of one fountain to
/// the left tail of the next when they share a base and leave no gap; it is
/// indexed by the raw coordinate in the common interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Chain {
    Tail(TailId),
    Bridge { right: usize, left: usize },
}

/// A validated cluster-tilting subcategory.
#[derive(Debug, Clone)]
pub struct Tilting {
    spec: TiltingSpec,
    fountains: Vec<FountainSpec>,
    bridges: Vec<(usize, usize)>,
}

impl Tilting {
    pub fn new(spec: TiltingSpec) -> Result<Self> {
        spec.check_schema()?;
        let rep = validate_ct(&spec);
        if let Some(v) = rep.violations.first() {
            return Err(Error::NotClusterTilting(v.message.clone()));
        }
        let mut fountains = spec.fountains.clone();
        fountains.sort_by_key(|f| f.acc);
        let r = spec.surface.r;
        let mut bridges = Vec::new();
        for a in 0..r {
            let b = (a + 1) % r;
            if r > 1 && fountains[a].base == fountains[b].base && fountains[a].right_to + 1 == fountains[b].left_from {
                bridges.push((a, b));
            }
        }
        Ok(Tilting { spec, fountains, bridges })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Tilting::new(TiltingSpec::from_json(s)?)
    }

    pub fn spec(&self) -> &TiltingSpec {
        &self.spec
    }

    pub fn surface(&self) -> Surface {
        self.spec.surface
    }

    pub fn fountain(&self, acc: usize) -> &FountainSpec {
        &self.fountains[acc]
    }

    pub fn tails(&self) -> impl Iterator<Item = TailId> + '_ {
        (0..self.spec.surface.r).flat_map(|acc| [Side::L, Side::R].map(|side| TailId { acc, side }))
    }

    /// Limit and extra vertices.
    pub fn point_vertices(&self) -> impl Iterator<Item = CtVertex> + '_ {
        (0..self.spec.surface.r)
            .map(CtVertex::Limit)
            .chain((0..self.spec.extra_arcs.len()).map(CtVertex::Extra))
    }

    pub fn tail_point(&self, tail: TailId, pos: u64) -> BoundaryPoint {
        self.spec.tail_point(&self.fountains[tail.acc], tail.side, pos)
    }

    pub fn arc(&self, v: CtVertex) -> Arc {
        match v {
            CtVertex::Tail { acc, side, pos } => {
                Arc::new(self.fountains[acc].base, self.tail_point(TailId { acc, side }, pos))
                    .expect("validated tail arc")
            }
            CtVertex::Limit(acc) => self.fountains[acc].limit_arc().expect("validated limit arc"),
            CtVertex::Extra(k) => self.spec.extra_arcs[k],
        }
    }

    /// The vertex whose arc is `a`, if any.
    pub fn vertex_of_arc(&self, a: Arc) -> Option<CtVertex> {
        for (k, &e) in self.spec.extra_arcs.iter().enumerate() {
            if e == a {
                return Some(CtVertex::Extra(k));
            }
        }
        for f in &self.fountains {
            if !a.has_endpoint(f.base) {
                continue;
            }
            let x = a.other(f.base);
            if x == Acc(f.acc) {
                return Some(CtVertex::Limit(f.acc));
            }
            for side in [Side::L, Side::R] {
                let tail = TailId { acc: f.acc, side };
                if let Some(n) = self.tail_pos_of_point(tail, x) {
                    return Some(tail.at(n));
                }
            }
        }
        None
    }

    /// The tail position whose far endpoint is `x`, if `x` lies on the tail.
    pub fn tail_pos_of_point(&self, tail: TailId, x: BoundaryPoint) -> Option<u64> {
        let f = &self.fountains[tail.acc];
        let r = self.spec.surface.r;
        let (interval, n) = match tail.side {
            Side::L => ((f.acc + r - 1) % r, x.index()? - f.left_from + 1),
            Side::R => (f.acc, f.right_to - x.index()? + 1),
        };
        (x.interval() == Some(interval) && n >= 1).then_some(n as u64)
    }

    /// Per-tail cut beyond which every tail arc relates uniformly to the
    /// given arcs and their shifts by up to two steps.
    pub fn cuts_for(&self, arcs: &[Arc]) -> BTreeMap<TailId, u64> {
        let mut pts = Vec::new();
        for a in arcs {
            let (p, q) = a.endpoints();
            for k in -2..=2 {
                pts.push(sigma(p, k));
                pts.push(sigma(q, k));
            }
        }
        self.tails()
            .map(|t| (t, self.spec.cut(&self.fountains[t.acc], t.side, &pts)))
            .collect()
    }

    /// Tail positions `1..=cut + extra` and all limit and extra vertices.
    pub fn window_vertices(&self, cuts: &BTreeMap<TailId, u64>, extra: u64) -> Vec<CtVertex> {
        let mut out: Vec<CtVertex> = self
            .tails()
            .flat_map(|t| {
                let c = cuts.get(&t).copied().unwrap_or(0) + extra;
                (1..=c).map(move |n| t.at(n))
            })
            .collect();
        out.extend(self.point_vertices());
        out
    }

    /// Vertices with tail position at most `radius`, plus all limit and
    /// extra vertices.
    pub fn window_radius(&self, radius: u64) -> Vec<CtVertex> {
        let cuts: BTreeMap<TailId, u64> = self.tails().map(|t| (t, radius)).collect();
        self.window_vertices(&cuts, 0)
    }

    pub fn label(&self, v: CtVertex) -> String {
        let single = self.spec.surface.r == 1;
        match v {
            CtVertex::Tail { side: Side::L, pos, .. } if single => format!("alpha{pos}"),
            CtVertex::Tail { side: Side::R, pos, .. } if single => format!("beta{pos}"),
            CtVertex::Tail { acc, side, pos } => format!("f{acc}{side:?}{pos}"),
            CtVertex::Limit(_) if single => "z".to_string(),
            CtVertex::Limit(acc) => format!("z{acc}"),
            CtVertex::Extra(k) => format!("e{}", k + 1),
        }
    }

    /// Accepts the labels produced by [`Tilting::label`], canonical
    /// `f<acc><L|R><n>` names, and for one accumulation point the short
    /// forms `3` (left tail) and `3'` (right tail).
    pub fn parse_vertex(&self, s: &str) -> Result<CtVertex> {
        let s = s.trim();
        let r = self.spec.surface.r;
        let bad = || Error::Parse(format!("unknown vertex `{s}`"));
        let num = |t: &str| t.parse::<u64>().ok().filter(|&n| n >= 1);
        let v = if s == "z" && r == 1 {
            CtVertex::Limit(0)
        } else if let Some(rest) = s.strip_prefix("alpha").filter(|_| r == 1) {
            CtVertex::Tail { acc: 0, side: Side::L, pos: num(rest).ok_or_else(bad)? }
        } else if let Some(rest) = s.strip_prefix("beta").filter(|_| r == 1) {
            CtVertex::Tail { acc: 0, side: Side::R, pos: num(rest).ok_or_else(bad)? }
        } else if let Some(rest) = s.strip_suffix('\'').filter(|_| r == 1) {
            CtVertex::Tail { acc: 0, side: Side::R, pos: num(rest).ok_or_else(bad)? }
        } else if let (Some(n), true) = (num(s), r == 1) {
            CtVertex::Tail { acc: 0, side: Side::L, pos: n }
        } else if let Some(rest) = s.strip_prefix('z') {
            CtVertex::Limit(rest.parse().map_err(|_| bad())?)
        } else if let Some(rest) = s.strip_prefix('e') {
            let k = num(rest).ok_or_else(bad)?;
            CtVertex::Extra(k as usize - 1)
        } else if let Some(rest) = s.strip_prefix('f') {
            let k = rest.find(['L', 'R']).ok_or_else(bad)?;
            let acc = rest[..k].parse().map_err(|_| bad())?;
            let side = if &rest[k..k + 1] == "L" { Side::L } else { Side::R };
            CtVertex::Tail { acc, side, pos: num(&rest[k + 1..]).ok_or_else(bad)? }
        } else {
            return Err(bad());
        };
        let ok = match v {
            CtVertex::Tail { acc, .. } | CtVertex::Limit(acc) => acc < r,
            CtVertex::Extra(k) => k < self.spec.extra_arcs.len(),
        };
        if ok {
            Ok(v)
        } else {
            Err(bad())
        }
    }

    /// The chain used to index families along `tail`, with the map from
    /// tail positions to chain coordinates: `coord = offset + sign * pos`.
    pub fn chain_of(&self, tail: TailId) -> (Chain, i64, i64) {
        for &(a, b) in &self.bridges {
            if tail == (TailId { acc: a, side: Side::R }) {
                return (Chain::Bridge { right: a, left: b }, self.fountains[a].right_to + 1, -1);
            }
            if tail == (TailId { acc: b, side: Side::L }) {
                return (Chain::Bridge { right: a, left: b }, self.fountains[b].left_from - 1, 1);
            }
        }
        (Chain::Tail(tail), 0, 1)
    }

    pub fn chain_vertex(&self, chain: Chain, coord: i64) -> Option<CtVertex> {
        match chain {
            Chain::Tail(t) => (coord >= 1).then(|| t.at(coord as u64)),
            Chain::Bridge { right, left } => {
                let rt = self.fountains[right].right_to;
                if coord <= rt {
                    Some(CtVertex::Tail { acc: right, side: Side::R, pos: (rt - coord + 1) as u64 })
                } else {
                    let lf = self.fountains[left].left_from;
                    Some(CtVertex::Tail { acc: left, side: Side::L, pos: (coord - lf + 1) as u64 })
                }
            }
        }
    }

    /// Lower bound of valid coordinates on a chain.
    pub fn chain_start(&self, chain: Chain) -> Option<i64> {
        match chain {
            Chain::Tail(_) => Some(1),
            Chain::Bridge { .. } => None,
        }
    }

    pub fn chain_name(&self, chain: Chain) -> String {
        match chain {
            Chain::Tail(t) => t.name(),
            Chain::Bridge { right, left } => format!("f{right}R:f{left}L"),
        }
    }

    pub fn parse_chain(&self, s: &str) -> Result<Chain> {
        let bad = || Error::Parse(format!("unknown chain `{s}`"));
        let tail = |t: &str| -> Result<TailId> {
            let t = t.strip_prefix('f').ok_or_else(bad)?;
            let k = t.len().checked_sub(1).ok_or_else(bad)?;
            let acc: usize = t[..k].parse().map_err(|_| bad())?;
            let side = match &t[k..] {
                "L" => Side::L,
                "R" => Side::R,
                _ => return Err(bad()),
            };
            if acc >= self.spec.surface.r {
                return Err(bad());
            }
            Ok(TailId { acc, side })
        };
        if let Some((a, b)) = s.split_once(':') {
            let (ta, tb) = (tail(a)?, tail(b)?);
            let c = Chain::Bridge { right: ta.acc, left: tb.acc };
            if ta.side == Side::R && tb.side == Side::L && self.bridges.contains(&(ta.acc, tb.acc)) {
                return Ok(c);
            }
            return Err(bad());
        }
        let t = tail(s)?;
        match self.chain_of(t).0 {
            c @ Chain::Tail(_) => Ok(c),
            Chain::Bridge { .. } => Err(Error::Parse(format!("tail `{s}` is part of a bridge chain"))),
        }
    }
}

impl fmt::Display for CtVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CtVertex::Tail { acc, side, pos } => write!(f, "f{acc}{side:?}{pos}"),
            CtVertex::Limit(acc) => write!(f, "z{acc}"),
            CtVertex::Extra(k) => write!(f, "e{}", k + 1),
        }
    }
}

/// The tilting vertices whose arcs cross `a`.
pub fn ct_vertices_crossing(t: &Tilting, a: Arc) -> UniformVector {
    let cuts = t.cuts_for(&[a]);
    UniformVector::from_fn(t, &cuts, |v| u32::from(crosses(t.arc(v), a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn one_acc_json() -> &'static str {
        r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2}],"extra_arcs":[]}"#
    }

    #[test]
    fn example_one_accepted() {
        let spec = TiltingSpec::from_json(one_acc_json()).unwrap();
        assert!(validate_ct(&spec).accepted());
        let t = Tilting::new(spec).unwrap();
        let a2 = t.parse_vertex("alpha2").unwrap();
        assert_eq!(t.arc(a2), "p0:0-p0:3".parse().unwrap());
        assert_eq!(t.arc(t.parse_vertex("2'").unwrap()), "p0:0-p0:-3".parse().unwrap());
        assert_eq!(t.arc(t.parse_vertex("z").unwrap()), "p0:0-a0".parse().unwrap());
        assert_eq!(t.vertex_of_arc("p0:0-p0:3".parse().unwrap()), Some(a2));
        assert_eq!(t.label(a2), "alpha2");
        assert_eq!(t.parse_vertex("f0L2").unwrap(), a2);
    }

    #[test]
    fn gap_gives_untriangulated_region() {
        let spec = TiltingSpec::from_json(
            r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":3,"right_to":-2}]}"#,
        )
        .unwrap();
        let rep = validate_ct(&spec);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].kind, ViolationKind::Untriangulated);
        assert_eq!(rep.violations[0].witness, vec!["p0:0-p0:2".parse().unwrap()]);
    }

    #[test]
    fn extra_arc_fills_the_gap() {
        let spec = TiltingSpec::from_json(
            r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":3,"right_to":-2}],"extra_arcs":["p0:0-p0:2"]}"#,
        )
        .unwrap();
        assert!(validate_ct(&spec).accepted());
    }

    #[test]
    fn limit_violations() {
        let two = TiltingSpec::from_json(
            r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2}],"extra_arcs":["p0:5-a0"]}"#,
        )
        .unwrap();
        let rep = validate_ct(&two);
        assert_eq!(rep.violations[0].kind, ViolationKind::TwoLimitArcs);
        assert_eq!(rep.violations[0].message, "two limit arcs at acc 0");
        let dbl = TiltingSpec::from_json(
            r#"{"surface":{"acc":2},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2},{"acc":1,"base":"p0:0","left_from":2,"right_to":-2}],"extra_arcs":["a0-a1"]}"#,
        )
        .unwrap();
        let rep = validate_ct(&dbl);
        assert!(rep.violations.iter().any(|v| v.kind == ViolationKind::DoubleLimitArc));
    }

    #[test]
    fn crossing_is_reported() {
        let spec = TiltingSpec::from_json(
            r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2}],"extra_arcs":["p0:1-p0:-1"]}"#,
        )
        .unwrap();
        let rep = validate_ct(&spec);
        assert_eq!(rep.violations[0].kind, ViolationKind::Crossing);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(TiltingSpec::from_json("{"), Err(Error::Schema { .. })));
        assert!(matches!(
            TiltingSpec::from_json(r#"{"surface":{"acc":1},"fountains":[{"acc":3,"base":"p0:0","left_from":2,"right_to":-2}]}"#),
            Err(Error::Schema { .. })
        ));
    }
}
