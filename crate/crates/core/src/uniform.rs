//! Functions on the tilting vertices that are eventually constant along
//! every fountain tail.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::tilting::{CtVertex, Side, TailId, Tilting};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TailPattern {
    /// `explicit[k]` is the value at tail position `k + 1`.
    pub explicit: Vec<u32>,
    /// Value at every position past `explicit`.
    pub default: u32,
}

impl TailPattern {
    pub fn get(&self, pos: u64) -> u32 {
        debug_assert!(pos >= 1);
        self.explicit
            .get(pos as usize - 1)
            .copied()
            .unwrap_or(self.default)
    }

    fn normalize(&mut self) {
        while self.explicit.last() == Some(&self.default) {
            self.explicit.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.explicit.is_empty() && self.default == 0
    }
}

/// A `u32`-valued function on the vertices of a tilting subcategory with
/// finitely many non-default values.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct UniformVector {
    tails: BTreeMap<TailId, TailPattern>,
    /// Limit and extra vertices; absent means 0.
    points: BTreeMap<CtVertex, u32>,
}

impl UniformVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Evaluates `f` on tail positions `1..=cut(tail)` and takes the value at
    /// `cut + 1` as the tail default.
    pub fn from_fn(t: &Tilting, cuts: &BTreeMap<TailId, u64>, mut f: impl FnMut(CtVertex) -> u32) -> Self {
        let mut v = UniformVector::zero();
        for tail in t.tails() {
            let cut = cuts.get(&tail).copied().unwrap_or(0);
            let explicit = (1..=cut).map(|n| f(tail.at(n))).collect();
            let default = f(tail.at(cut + 1));
            debug_assert_eq!(default, f(tail.at(cut + 2)), "tail {tail:?} not uniform past {cut}");
            let mut p = TailPattern { explicit, default };
            p.normalize();
            if !p.is_zero() {
                v.tails.insert(tail, p);
            }
        }
        for w in t.point_vertices() {
            let x = f(w);
            if x != 0 {
                v.points.insert(w, x);
            }
        }
        v
    }

    pub fn get(&self, v: CtVertex) -> u32 {
        match v {
            CtVertex::Tail { acc, side, pos } => self
                .tails
                .get(&TailId { acc, side })
                .map_or(0, |p| p.get(pos)),
            _ => self.points.get(&v).copied().unwrap_or(0),
        }
    }

    pub fn set(&mut self, v: CtVertex, x: u32) {
        match v {
            CtVertex::Tail { acc, side, pos } => {
                let p = self.tails.entry(TailId { acc, side }).or_default();
                let k = pos as usize;
                if p.explicit.len() < k {
                    let d = p.default;
                    p.explicit.resize(k, d);
                }
                p.explicit[k - 1] = x;
                p.normalize();
                if p.is_zero() {
                    self.tails.remove(&TailId { acc, side });
                }
            }
            _ => {
                if x == 0 {
                    self.points.remove(&v);
                } else {
                    self.points.insert(v, x);
                }
            }
        }
    }

    pub fn tail(&self, id: TailId) -> Option<&TailPattern> {
        self.tails.get(&id)
    }

    pub fn tail_default(&self, id: TailId) -> u32 {
        self.tails.get(&id).map_or(0, |p| p.default)
    }

    /// Length of the explicit part of each tail.
    pub fn explicit_len(&self, id: TailId) -> u64 {
        self.tails.get(&id).map_or(0, |p| p.explicit.len() as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.tails.is_empty() && self.points.is_empty()
    }

    /// Finite support: no tail has a nonzero default.
    pub fn is_finite(&self) -> bool {
        self.tails.values().all(|p| p.default == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let mut out = UniformVector::zero();
        let ids: std::collections::BTreeSet<TailId> =
            self.tails.keys().chain(other.tails.keys()).copied().collect();
        for id in ids {
            let a = self.tails.get(&id).cloned().unwrap_or_default();
            let b = other.tails.get(&id).cloned().unwrap_or_default();
            let len = a.explicit.len().max(b.explicit.len());
            let explicit = (1..=len as u64).map(|n| f(a.get(n), b.get(n))).collect();
            let mut p = TailPattern { explicit, default: f(a.default, b.default) };
            p.normalize();
            if !p.is_zero() {
                out.tails.insert(id, p);
            }
        }
        let keys: std::collections::BTreeSet<CtVertex> =
            self.points.keys().chain(other.points.keys()).copied().collect();
        for k in keys {
            let x = f(self.get(k), other.get(k));
            if x != 0 {
                out.points.insert(k, x);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    /// Pointwise maximum; the union of two supports.
    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.max(b))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.min(b))
    }

    pub fn saturating_sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.saturating_sub(b))
    }

    pub fn le(&self, other: &Self) -> bool {
        self.saturating_sub(other).is_zero()
    }

    /// The 0/1 indicator of the support.
    pub fn support(&self) -> Self {
        self.zip_with(&UniformVector::zero(), |a, _| u32::from(a > 0))
    }

    /// The largest tail position with an explicit value, over all tails.
    pub fn max_explicit(&self) -> u64 {
        self.tails.values().map(|p| p.explicit.len() as u64).max().unwrap_or(0)
    }

    pub fn point_entries(&self) -> impl Iterator<Item = (CtVertex, u32)> + '_ {
        self.points.iter().map(|(&k, &v)| (k, v))
    }

    pub fn tail_entries(&self) -> impl Iterator<Item = (TailId, &TailPattern)> + '_ {
        self.tails.iter().map(|(&k, v)| (k, v))
    }

    /// Renders as `{alpha1:0, alpha2:1, z:1 | tails: L=1, R=0}`.
    pub fn display<'a>(&'a self, t: &'a Tilting) -> impl fmt::Display + 'a {
        DisplayVector { v: self, t }
    }
}

struct DisplayVector<'a> {
    v: &'a UniformVector,
    t: &'a Tilting,
}

impl fmt::Display for DisplayVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries = Vec::new();
        for tail in self.t.tails() {
            if let Some(p) = self.v.tails.get(&tail) {
                for (k, x) in p.explicit.iter().enumerate() {
                    entries.push(format!("{}:{}", self.t.label(tail.at(k as u64 + 1)), x));
                }
            }
        }
        for (k, x) in &self.v.points {
            entries.push(format!("{}:{}", self.t.label(*k), x));
        }
        let tails: Vec<String> = self
            .t
            .tails()
            .map(|id| {
                let name = if self.t.surface().r == 1 {
                    match id.side {
                        Side::L => "L".to_string(),
                        Side::R => "R".to_string(),
                    }
                } else {
                    id.name()
                };
                format!("{}={}", name, self.v.tail_default(id))
            })
            .collect();
        write!(f, "{{{} | tails: {}}}", entries.join(", "), tails.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_acc() -> Tilting {
        Tilting::from_json(r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2}]}"#)
            .unwrap()
    }

    #[test]
    fn from_fn_keeps_only_the_non_default_prefix() {
        let t = one_acc();
        let cuts = t.tails().map(|id| (id, 6)).collect();
        let v = UniformVector::from_fn(&t, &cuts, |u| match (u.tail_id().map(|id| id.side), u.pos()) {
            (Some(Side::L), Some(n)) => u32::from(n >= 3),
            _ => 0,
        });
        let alpha = t.tails().next().unwrap();
        assert_eq!(v.explicit_len(alpha), 2);
        assert_eq!(v.tail_default(alpha), 1);
        assert_eq!(v.get(alpha.at(100)), 1);
        assert!(!v.is_finite());
        assert_eq!(v.display(&t).to_string(), "{alpha1:0, alpha2:0 | tails: L=1, R=0}");
    }

    #[test]
    fn set_and_lattice_operations() {
        let t = one_acc();
        let z = CtVertex::Limit(0);
        let a2 = t.parse_vertex("alpha2").unwrap();
        let mut x = UniformVector::zero();
        x.set(a2, 1);
        let mut y = UniformVector::zero();
        y.set(z, 1);
        let u = x.union(&y);
        assert!(x.le(&u) && y.le(&u));
        assert!(x.intersect(&y).is_zero());
        assert_eq!(u.add(&x).get(a2), 2);
        assert_eq!(u.add(&x).support().get(a2), 1);
        assert_eq!(u.saturating_sub(&x), y);
        x.set(a2, 0);
        assert!(x.is_zero());
    }
}
