//! Random accepted tilting specs and random arcs, for tests and benchmarks.

use rand::Rng;

use crate::surface::{Arc, BoundaryPoint, Regular, Surface};
use crate::tilting::{FountainSpec, TiltingSpec};

/// A cluster-tilting spec on `r` accumulation points. All fountains share
/// the base `p0:0`; tail starts are random and the finite polygons left
/// between neighbouring tails get random triangulations.
pub fn random_spec(rng: &mut impl Rng, r: usize) -> TiltingSpec {
    assert!(r >= 1, "need an accumulation point");
    let base = Regular(0, 0);
    let mut left_from = vec![0i64; r];
    let mut right_to = vec![0i64; r];
    // the left tail of fountain (i + 1) % r lives on interval i
    right_to[0] = rng.gen_range(-4..=-2);
    left_from[1 % r] = rng.gen_range(2..=4);
    for i in 1..r {
        right_to[i] = rng.gen_range(-2..=1);
        left_from[(i + 1) % r] = right_to[i] + 1 + rng.gen_range(0..=2);
    }
    let fountains = (0..r)
        .map(|acc| FountainSpec { acc, base, left_from: left_from[acc], right_to: right_to[acc] })
        .collect();

    let mut extra_arcs = Vec::new();
    let mut polygons: Vec<Vec<BoundaryPoint>> = vec![
        (0..=left_from[1 % r]).map(|j| Regular(0, j)).collect(),
        (right_to[0]..=0).map(|j| Regular(0, j)).collect(),
    ];
    for i in 1..r {
        let mut p = vec![base];
        p.extend((right_to[i]..=left_from[(i + 1) % r]).map(|j| Regular(i, j)));
        polygons.push(p);
    }
    for p in &polygons {
        triangulate(rng, p, &mut extra_arcs);
    }
    extra_arcs.sort();
    TiltingSpec { format: Some(1), surface: Surface { r }, fountains, extra_arcs }
}

/// Adds the diagonals of a random triangulation of the convex polygon `vs`.
fn triangulate(rng: &mut impl Rng, vs: &[BoundaryPoint], out: &mut Vec<Arc>) {
    let n = vs.len();
    if n < 4 {
        return;
    }
    let k = rng.gen_range(1..n - 1);
    if k > 1 {
        out.push(Arc::new(vs[0], vs[k]).expect("polygon diagonal"));
    }
    if k < n - 2 {
        out.push(Arc::new(vs[k], vs[n - 1]).expect("polygon diagonal"));
    }
    triangulate(rng, &vs[..=k], out);
    triangulate(rng, &vs[k..], out);
}

/// An arc between two regular points with indices in `-radius..=radius`.
pub fn random_ordinary_arc(rng: &mut impl Rng, s: Surface, radius: i64) -> Arc {
    loop {
        let mut pt = || Regular(rng.gen_range(0..s.r), rng.gen_range(-radius..=radius));
        if let Some(a) = Arc::try_new(pt(), pt()) {
            return a;
        }
    }
}

/// An arc with at least one endpoint at an accumulation point.
pub fn random_limit_arc(rng: &mut impl Rng, s: Surface, radius: i64) -> Arc {
    loop {
        let p = BoundaryPoint::Acc(rng.gen_range(0..s.r));
        let q = if rng.gen_bool(0.2) {
            BoundaryPoint::Acc(rng.gen_range(0..s.r))
        } else {
            Regular(rng.gen_range(0..s.r), rng.gen_range(-radius..=radius))
        };
        if let Some(a) = Arc::try_new(p, q) {
            return a;
        }
    }
}

/// Any valid arc.
pub fn random_arc(rng: &mut impl Rng, s: Surface, radius: i64) -> Arc {
    if rng.gen_bool(0.3) {
        random_limit_arc(rng, s, radius)
    } else {
        random_ordinary_arc(rng, s, radius)
    }
}
