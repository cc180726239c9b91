//! The boundary of the disk as an abstract cyclic order.
//!
//! A surface with `r` accumulation points has boundary blocks
//! `Acc(i), Regular(i, j) (j in Z increasing)` for `i = 0..r`, listed
//! counterclockwise and wrapping around. `Regular(i, j)` converges to
//! `Acc(i)` as `j -> -inf` (from the right) and to `Acc(i + 1 mod r)` as
//! `j -> +inf` (from the left).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    #[serde(rename = "acc")]
    pub r: usize,
}

impl Surface {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::NoAccumulationPoints);
        }
        Ok(Surface { r })
    }

    pub fn contains(&self, p: BoundaryPoint) -> bool {
        match p {
            BoundaryPoint::Acc(i) => i < self.r,
            BoundaryPoint::Regular { interval, .. } => interval < self.r,
        }
    }

    pub fn check_point(&self, p: BoundaryPoint) -> Result<BoundaryPoint> {
        if self.contains(p) {
            Ok(p)
        } else {
            Err(Error::PointOutOfSurface(p, self.r))
        }
    }

    pub fn check_arc(&self, a: Arc) -> Result<Arc> {
        self.check_point(a.p)?;
        self.check_point(a.q)?;
        Ok(a)
    }

    pub fn arc(&self, p: BoundaryPoint, q: BoundaryPoint) -> Result<Arc> {
        self.check_point(p)?;
        self.check_point(q)?;
        Arc::new(p, q)
    }

    /// Checked form of [`cyclic_between`].
    pub fn cyclic_between(
        &self,
        a: BoundaryPoint,
        b: BoundaryPoint,
        c: BoundaryPoint,
    ) -> Result<bool> {
        for p in [a, b, c] {
            self.check_point(p)?;
        }
        if a == b || a == c {
            return Err(Error::RepeatedPoint(a));
        }
        if b == c {
            return Err(Error::RepeatedPoint(b));
        }
        Ok(cyclic_between(a, b, c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryPoint {
    Acc(usize),
    Regular { interval: usize, index: i64 },
}

pub use BoundaryPoint::Acc;

#[allow(non_snake_case)]
pub const fn Regular(interval: usize, index: i64) -> BoundaryPoint {
    BoundaryPoint::Regular { interval, index }
}

impl BoundaryPoint {
    /// Position in the linearized cyclic order (cut just before `Acc(0)`).
    fn key(self) -> (usize, u8, i64) {
        match self {
            BoundaryPoint::Acc(i) => (i, 0, 0),
            BoundaryPoint::Regular { interval, index } => (interval, 1, index),
        }
    }

    pub fn is_acc(self) -> bool {
        matches!(self, BoundaryPoint::Acc(_))
    }

    pub fn interval(self) -> Option<usize> {
        match self {
            BoundaryPoint::Regular { interval, .. } => Some(interval),
            BoundaryPoint::Acc(_) => None,
        }
    }

    pub fn index(self) -> Option<i64> {
        match self {
            BoundaryPoint::Regular { index, .. } => Some(index),
            BoundaryPoint::Acc(_) => None,
        }
    }

    /// Two regular points next to each other on the boundary.
    pub fn adjacent(self, other: BoundaryPoint) -> bool {
        match (self, other) {
            (
                BoundaryPoint::Regular { interval: i, index: j },
                BoundaryPoint::Regular { interval: k, index: l },
            ) => i == k && (j - l).abs() == 1,
            _ => false,
        }
    }
}

impl PartialOrd for BoundaryPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear order obtained by cutting the circle just before `Acc(0)`.
impl Ord for BoundaryPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// `true` iff `b` lies in the open counterclockwise interval `(a, c)`.
/// Distinctness is the caller's responsibility; see [`Surface::cyclic_between`].
pub fn cyclic_between(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint) -> bool {
    (a < b && b < c) || (b < c && c < a) || (c < a && a < b)
}

/// `b` in the closed counterclockwise interval `[a, c]`.
pub fn cyclic_between_closed(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint) -> bool {
    b == a || b == c || (a != c && cyclic_between(a, b, c))
}

/// The clockwise neighbour map applied `k` times; accumulation points are fixed.
pub fn sigma(p: BoundaryPoint, k: i64) -> BoundaryPoint {
    match p {
        BoundaryPoint::Acc(i) => BoundaryPoint::Acc(i),
        BoundaryPoint::Regular { interval, index } => Regular(interval, index - k),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcKind {
    Ordinary,
    OneSidedLimit,
    DoubleLimit,
}

/// An unordered pair of distinct, non-adjacent boundary points.
/// Stored with `p < q` in the linear order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    p: BoundaryPoint,
    q: BoundaryPoint,
}

impl Arc {
    pub fn new(p: BoundaryPoint, q: BoundaryPoint) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidArc(p, q, "endpoints coincide"));
        }
        if p.adjacent(q) {
            return Err(Error::InvalidArc(p, q, "endpoints are boundary-adjacent"));
        }
        Ok(if p < q { Arc { p, q } } else { Arc { p: q, q: p } })
    }

    /// Like [`Arc::new`] but `None` for boundary segments and degenerate pairs.
    pub fn try_new(p: BoundaryPoint, q: BoundaryPoint) -> Option<Self> {
        Arc::new(p, q).ok()
    }

    pub fn endpoints(self) -> (BoundaryPoint, BoundaryPoint) {
        (self.p, self.q)
    }

    pub fn has_endpoint(self, x: BoundaryPoint) -> bool {
        self.p == x || self.q == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: BoundaryPoint) -> BoundaryPoint {
        if self.p == x {
            self.q
        } else {
            self.p
        }
    }

    pub fn kind(self) -> ArcKind {
        match (self.p.is_acc(), self.q.is_acc()) {
            (false, false) => ArcKind::Ordinary,
            (true, true) => ArcKind::DoubleLimit,
            _ => ArcKind::OneSidedLimit,
        }
    }

    pub fn shared_endpoints(self, other: Arc) -> Vec<BoundaryPoint> {
        [self.p, self.q]
            .into_iter()
            .filter(|&x| other.has_endpoint(x))
            .collect()
    }
}

pub fn arc_kind(a: Arc) -> ArcKind {
    a.kind()
}

/// Endpoint sets disjoint and strictly interleaved.
pub fn crosses(a: Arc, b: Arc) -> bool {
    if a.has_endpoint(b.p) || a.has_endpoint(b.q) {
        return false;
    }
    cyclic_between(a.p, b.p, a.q) != cyclic_between(a.p, b.q, a.q)
}

/// The suspension `[k]`: `sigma(., k)` on both endpoints.
pub fn shift(a: Arc, k: i64) -> Arc {
    let (p, q) = (sigma(a.p, k), sigma(a.q, k));
    // simultaneous shifts preserve distinctness and non-adjacency
    if p < q {
        Arc { p, q }
    } else {
        Arc { p: q, q: p }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Acc(i) => write!(f, "a{i}"),
            BoundaryPoint::Regular { interval, index } => write!(f, "p{interval}:{index}"),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.p, self.q)
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

impl FromStr for BoundaryPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('a') {
            return Ok(Acc(parse_usize(rest, "accumulation index")?));
        }
        if let Some(rest) = s.strip_prefix('p') {
            let (i, j) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("point `{s}` lacks `:`")))?;
            let index = j
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad point index `{j}`")))?;
            return Ok(Regular(parse_usize(i, "interval")?, index));
        }
        Err(Error::Parse(format!("point `{s}` must start with `a` or `p`")))
    }
}

impl FromStr for Arc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        // the separator is the first '-' that follows a complete point literal
        let bytes = s.as_bytes();
        for (k, &b) in bytes.iter().enumerate() {
            if b != b'-' || k == 0 {
                continue;
            }
            let (l, r) = (&s[..k], &s[k + 1..]);
            if let (Ok(p), Ok(q)) = (l.parse::<BoundaryPoint>(), r.parse::<BoundaryPoint>()) {
                return Arc::new(p, q);
            }
        }
        Err(Error::Parse(format!("arc `{s}` is not `point-point`")))
    }
}

impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Arc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Arc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
