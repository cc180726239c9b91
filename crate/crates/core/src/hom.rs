//! Hom and Ext dimensions between indecomposables, composition of nonzero
//! maps, and the exact triangles attached to nonzero extensions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{crosses, cyclic_between, cyclic_between_closed, shift, Arc, ArcKind, BoundaryPoint};

/// Which rule produced a nonzero `Hom(X, Y[1])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtCase {
    Crossing,
    Rotation,
    DoubleLimit,
    None,
}

impl ExtCase {
    pub fn name(self) -> &'static str {
        match self {
            ExtCase::Crossing => "crossing",
            ExtCase::Rotation => "rotation",
            ExtCase::DoubleLimit => "double-limit",
            ExtCase::None => "none",
        }
    }
}

pub fn ext1_case(x: Arc, y: Arc) -> ExtCase {
    if crosses(x, y) {
        return ExtCase::Crossing;
    }
    if x == y {
        return if x.kind() == ArcKind::DoubleLimit {
            ExtCase::DoubleLimit
        } else {
            ExtCase::None
        };
    }
    match x.shared_endpoints(y).as_slice() {
        [z] if z.is_acc() => {
            // rotating X counterclockwise about z reaches Y first
            if cyclic_between(x.other(*z), y.other(*z), *z) {
                ExtCase::Rotation
            } else {
                ExtCase::None
            }
        }
        _ => ExtCase::None,
    }
}

/// `dim Hom(X, Y[1])`.
pub fn ext1_dim(x: Arc, y: Arc) -> u8 {
    u8::from(ext1_case(x, y) != ExtCase::None)
}

/// `dim Hom(X, Y) = dim Hom(X, (Y[-1])[1])`.
pub fn hom_dim(x: Arc, y: Arc) -> u8 {
    ext1_dim(x, shift(y, -1))
}

fn half_open(a: BoundaryPoint, p: BoundaryPoint, b: BoundaryPoint) -> bool {
    p == a || (p != b && cyclic_between(a, p, b))
}

/// Whether the composite of the nonzero maps `X -> Y -> Z` is nonzero.
///
/// With `X = {a, b}` and `Z = {c, d}` labelled so that `c` lies in `[a, b)`
/// and `d` in `[b, a)`, the composite survives iff `Y = {e, f}` with `e` in
/// `[a, c]` and `f` in `[b, d]`.
pub fn composite_nonzero(x: Arc, y: Arc, z: Arc) -> bool {
    if hom_dim(x, y) == 0 || hom_dim(y, z) == 0 || hom_dim(x, z) == 0 {
        return false;
    }
    let (xp, xq) = x.endpoints();
    let (zp, zq) = z.endpoints();
    let (yp, yq) = y.endpoints();
    for (a, b) in [(xp, xq), (xq, xp)] {
        for (c, d) in [(zp, zq), (zq, zp)] {
            if !(half_open(a, c, b) && half_open(b, d, a)) {
                continue;
            }
            for (e, f) in [(yp, yq), (yq, yp)] {
                if cyclic_between_closed(a, e, c) && cyclic_between_closed(b, f, d) {
                    return true;
                }
            }
        }
    }
    false
}

/// An exact triangle `start -> middle -> end -> start[1]`; the middle term
/// is a (possibly empty) list of indecomposable summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub start: Arc,
    pub middle: Vec<Arc>,
    pub end: Arc,
}

/// The non-split triangles coming from a nonzero extension between `x` and `y`.
pub fn exchange_triangles(x: Arc, y: Arc) -> Result<Vec<Triangle>> {
    match ext1_case(x, y) {
        ExtCase::Crossing => {
            let (a1, a3) = x.endpoints();
            let (yp, yq) = y.endpoints();
            let (a2, a4) = if cyclic_between(a1, yp, a3) { (yp, yq) } else { (yq, yp) };
            let side = |u, v| Arc::try_new(u, v);
            let mut bd: Vec<Arc> = [side(a2, a3), side(a4, a1)].into_iter().flatten().collect();
            let mut ac: Vec<Arc> = [side(a1, a2), side(a3, a4)].into_iter().flatten().collect();
            bd.sort();
            ac.sort();
            Ok(vec![
                Triangle { start: x, middle: bd, end: y },
                Triangle { start: y, middle: ac, end: x },
            ])
        }
        ExtCase::DoubleLimit => Ok(vec![Triangle { start: x, middle: vec![], end: x }]),
        // Hom(X, Y[1]) != 0 is the connecting map of Y -> B -> X -> Y[1]
        ExtCase::Rotation => Ok(vec![rotation_triangle(y, x)]),
        ExtCase::None => match ext1_case(y, x) {
            ExtCase::Rotation => Ok(vec![rotation_triangle(x, y)]),
            _ => Err(Error::NoExtension(x, y)),
        },
    }
}

fn rotation_triangle(start: Arc, end: Arc) -> Triangle {
    let z = start.shared_endpoints(end)[0];
    let middle = Arc::try_new(start.other(z), end.other(z)).into_iter().collect();
    Triangle { start, middle, end }
}

/// Checks the orientation convention: every sampled arc has `Hom(X, X) = k`.
pub fn orientation_self_test(r: usize) -> Result<()> {
    use crate::surface::{Acc, Regular};
    let mut pts: Vec<BoundaryPoint> = (0..r).map(Acc).collect();
    for i in 0..r {
        pts.extend((-3..=3).map(|j| Regular(i, j)));
    }
    for (k, &p) in pts.iter().enumerate() {
        for &q in &pts[k + 1..] {
            if let Some(a) = Arc::try_new(p, q) {
                if hom_dim(a, a) != 1 {
                    return Err(Error::Inconsistent(format!("Hom({a}, {a}) vanishes")));
                }
            }
        }
    }
    Ok(())
}
