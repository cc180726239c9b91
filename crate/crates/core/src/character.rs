//! The cluster character and checks of the multiplication and exchange
//! formulas on finite windows.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{exchange_triangles, ext1_dim, Triangle};
use crate::representations::{
    coindex, enumerate_fp_submodules, index, module_to_arcs, FpFamilyList, K0Element, Submodule,
};
use crate::series::{
    poly_add, poly_mul, series_mul, Domain, FormalSeries, LaurentPoly, Monomial, SeriesExpr, TailSlot, Term,
};
use crate::surface::{Arc, ArcKind};
use crate::tilting::{Chain, CtVertex, Tilting};

/// Distance past a parameter's domain start at which templates are read off.
const PROBE: u64 = 11;

/// The cluster character of a single arc as a formal series.
pub fn character_of_arc(t: &Tilting, m: Arc) -> Result<FormalSeries> {
    t.surface().check_arc(m)?;
    let pre = Monomial::from_k0(&coindex(t, m)?).inv();
    let fams = enumerate_fp_submodules(t, m)?;
    let w = Weights::default();
    let mut terms = Vec::new();
    for k in 0..fams.families.len() {
        terms.extend(family_terms(t, &fams, k, &pre, &w)?);
    }
    Ok(FormalSeries { terms }.canonicalize(t))
}

/// The cluster character of a direct sum of arcs; summands are multiplied.
pub fn cluster_character(t: &Tilting, arcs: &[Arc]) -> Result<SeriesExpr> {
    let mut acc = SeriesExpr::Series(FormalSeries::monomial(1, Monomial::one()));
    for &a in arcs {
        let x = SeriesExpr::Series(character_of_arc(t, a)?);
        acc = series_mul(t, &acc, &x);
    }
    Ok(acc)
}

/// `coind(N) - ind(N)` per arc, memoized across the instances of one
/// character computation.
#[derive(Default)]
struct Weights(RefCell<HashMap<Arc, K0Element>>);

impl Weights {
    fn of_submodule(&self, t: &Tilting, sub: &Submodule) -> Result<K0Element> {
        let mut k = K0Element::zero();
        for a in module_to_arcs(t, sub)? {
            let known = self.0.borrow().get(&a).cloned();
            let w = match known {
                Some(w) => w,
                None => {
                    let w = coindex(t, a)?.sub(&index(t, a)?);
                    self.0.borrow_mut().insert(a, w.clone());
                    w
                }
            };
            k = k.add(&w);
        }
        Ok(k)
    }
}

fn instance_monomial(t: &Tilting, fams: &FpFamilyList, k: usize, values: &[u64], w: &Weights) -> Result<Monomial> {
    Ok(Monomial::from_k0(&w.of_submodule(t, &fams.instance(t, k, values))?))
}

/// Terms contributed by one family: explicit instances where the family
/// does not yet follow its template, then one slot term per parameter.
fn family_terms(t: &Tilting, fams: &FpFamilyList, k: usize, pre: &Monomial, w: &Weights) -> Result<Vec<Term>> {
    let fam = &fams.families[k];
    if fam.params.is_empty() {
        let m = instance_monomial(t, fams, k, &[], w)?;
        return Ok(vec![Term { coeff: 1, fixed: pre.mul(&m), slots: vec![] }]);
    }
    let base: Vec<u64> = fam.params.iter().map(|p| p.from + PROBE).collect();
    let m0 = instance_monomial(t, fams, k, &base, w)?;
    let mut fixed = m0.clone();
    let mut templates = Vec::new();
    for (i, p) in fam.params.iter().enumerate() {
        let mut tmpl = Vec::new();
        for (&v, &e) in &m0.0 {
            if v.tail_id() == Some(p.tail) && v.pos().unwrap() > p.from + 1 {
                tmpl.push((v.pos().unwrap() as i64 - base[i] as i64, e));
                fixed.mul_var(v, -e);
            }
        }
        if tmpl.is_empty() {
            return Err(Error::Inconsistent(format!(
                "family along {} in {} has a constant monomial",
                p.tail.name(),
                fams.ambient
            )));
        }
        templates.push(tmpl);
    }
    let predict = |values: &[u64]| -> Option<Monomial> {
        let mut m = fixed.clone();
        for ((p, tmpl), &n) in fam.params.iter().zip(&templates).zip(values) {
            for &(o, e) in tmpl {
                let pos = n as i64 + o;
                if pos < 1 {
                    return None;
                }
                m.mul_var(p.tail.at(pos as u64), e);
            }
        }
        Some(m)
    };
    let matches = |values: &[u64]| -> Result<bool> {
        Ok(predict(values) == Some(instance_monomial(t, fams, k, values, w)?))
    };
    // far samples must follow the template exactly
    let mut far = vec![base.iter().map(|&b| b + 2).collect::<Vec<_>>()];
    for i in 0..base.len() {
        for d in [1, 3] {
            let mut v = base.clone();
            v[i] += d;
            far.push(v);
        }
    }
    for v in &far {
        if !matches(v)? {
            return Err(Error::Inconsistent(format!(
                "family {k} of {} does not follow a shifted template",
                fams.ambient
            )));
        }
    }
    // lower the start until the template holds from there on
    let mut starts: Vec<u64> = fam.params.iter().map(|p| p.from).collect();
    if fam.params.len() == 1 {
        let mut s = base[0];
        while s > fam.params[0].from && matches(&[s - 1])? {
            s -= 1;
        }
        starts[0] = s;
    } else {
        let from: Vec<u64> = starts.clone();
        let mut probe = from.clone();
        for i in 0..from.len() {
            probe[i] = from[i];
            if !matches(&probe)? {
                return Err(Error::Inconsistent(format!(
                    "multi-parameter family {k} of {} is not uniform from its start",
                    fams.ambient
                )));
            }
            probe[i] = base[i];
        }
    }
    let mut terms = Vec::new();
    if fam.params.len() == 1 {
        for n in fam.params[0].from..starts[0] {
            let m = instance_monomial(t, fams, k, &[n], w)?;
            terms.push(Term { coeff: 1, fixed: pre.mul(&m), slots: vec![] });
        }
    }
    let mut slots: Vec<TailSlot> = fam
        .params
        .iter()
        .zip(&templates)
        .zip(&starts)
        .map(|((p, tmpl), &s)| TailSlot::new(Chain::Tail(p.tail), Domain::from(s as i64), tmpl.clone()))
        .collect();
    slots.sort();
    terms.push(Term { coeff: 1, fixed: pre.mul(&fixed), slots });
    Ok(terms)
}

/// Window of tail radius `radius` as a vertex set.
pub fn window(t: &Tilting, radius: u64) -> BTreeSet<CtVertex> {
    t.window_radius(radius).into_iter().collect()
}

/// All instances of all families of `m` with generators at tail positions
/// up to `radius`, each as a monomial including the prefactor.
fn instance_poly(t: &Tilting, m: Arc, radius: u64) -> Result<LaurentPoly> {
    let pre = Monomial::from_k0(&coindex(t, m)?).inv();
    let fams = enumerate_fp_submodules(t, m)?;
    let w = Weights::default();
    let mut out = LaurentPoly::new();
    for (_, _, sub) in fams.instances_up_to(t, radius) {
        *out.entry(pre.mul(&Monomial::from_k0(&w.of_submodule(t, &sub)?))).or_insert(0) += 1;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicationCheck {
    pub holds: bool,
    /// Whether the product of series was computed exactly rather than
    /// window by window.
    pub exact_product: bool,
    pub direct: LaurentPoly,
    pub product: LaurentPoly,
}

/// Compares the character of `m + n`, summed directly over pairs of
/// submodule instances, with the product of the two series, both restricted
/// to monomials in the window of tail radius `radius`.
pub fn check_multiplication(t: &Tilting, m: &[Arc], n: &[Arc], radius: u64) -> Result<MultiplicationCheck> {
    check_multiplication_on(t, m, n, &window(t, radius))
}

/// [`check_multiplication`] on an arbitrary finite window.
pub fn check_multiplication_on(
    t: &Tilting,
    m: &[Arc],
    n: &[Arc],
    w: &BTreeSet<CtVertex>,
) -> Result<MultiplicationCheck> {
    let reach = w.iter().filter_map(|v| v.pos()).max().unwrap_or(0) + 3;
    let mut direct = LaurentPoly::from([(Monomial::one(), 1)]);
    for &a in m.iter().chain(n) {
        direct = poly_mul(&direct, &instance_poly(t, a, reach)?);
    }
    direct.retain(|mono, _| mono.vars().all(|v| w.contains(&v)));
    let x = cluster_character(t, m)?;
    let y = cluster_character(t, n)?;
    let prod = series_mul(t, &x, &y);
    let product = prod.expand(t, w)?;
    Ok(MultiplicationCheck {
        holds: direct == product,
        exact_product: prod.as_series().is_some(),
        direct,
        product,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeCheck {
    pub holds: bool,
    /// False when a limit arc is involved.
    pub within_hypotheses: bool,
    pub triangles: Vec<Triangle>,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

/// Compares `X(M) X(N)` with the sum of the characters of the middle terms
/// of the exchange triangles on the window of tail radius `radius`.
pub fn check_exchange(t: &Tilting, m: Arc, n: Arc, radius: u64) -> Result<ExchangeCheck> {
    check_exchange_on(t, m, n, &window(t, radius))
}

/// [`check_exchange`] on an arbitrary finite window.
pub fn check_exchange_on(t: &Tilting, m: Arc, n: Arc, w: &BTreeSet<CtVertex>) -> Result<ExchangeCheck> {
    t.surface().check_arc(m)?;
    t.surface().check_arc(n)?;
    if ext1_dim(m, n) == 0 && ext1_dim(n, m) == 0 {
        return Err(Error::NoExtension(m, n));
    }
    let triangles = exchange_triangles(m, n)?;
    let within_hypotheses = m.kind() == ArcKind::Ordinary && n.kind() == ArcKind::Ordinary;
    let lhs = series_mul(t, &cluster_character(t, &[m])?, &cluster_character(t, &[n])?).expand(t, w)?;
    // a self-extension gives the same triangle in both directions
    let middles: Vec<&Vec<Arc>> = if triangles.len() == 1 && m == n {
        vec![&triangles[0].middle, &triangles[0].middle]
    } else {
        triangles.iter().map(|tr| &tr.middle).collect()
    };
    let mut rhs = LaurentPoly::new();
    for mid in middles {
        rhs = poly_add(&rhs, &cluster_character(t, mid)?.expand(t, w)?);
    }
    Ok(ExchangeCheck { holds: lhs == rhs, within_hypotheses, triangles, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_ACC: &str = r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2}]}"#;

    fn arc(s: &str) -> Arc {
        s.parse().unwrap()
    }

    #[test]
    fn limit_arc_character() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        assert_eq!(
            character_of_arc(&t, arc("p0:0-a0")).unwrap().canonical_string(&t),
            "1*x(alpha1)^-1*x(z) + 1*x(z)^-1 + 1*x(z)*sum{n in [1,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1"
        );
    }

    #[test]
    fn shifted_tilting_arc_is_its_variable() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let z = shift_of(&t, "z");
        assert_eq!(character_of_arc(&t, z).unwrap().canonical_string(&t), "1*x(z)");
    }

    fn shift_of(t: &Tilting, v: &str) -> Arc {
        crate::surface::shift(t.arc(t.parse_vertex(v).unwrap()), 1)
    }

    #[test]
    fn finite_arc_character_is_a_polynomial() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let x = character_of_arc(&t, arc("p0:0-p0:4")).unwrap();
        // four submodules along a chain of three vertices
        assert!(x.is_finite());
        let w = window(&t, 8);
        assert_eq!(x.expand(&t, &w).len(), 4);
    }

    #[test]
    fn exchange_of_example_two() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let c = check_exchange(&t, arc("p0:3-p0:-2"), arc("p0:0-p0:4"), 6).unwrap();
        assert!(c.holds && c.within_hypotheses);
        assert_eq!(c.triangles.len(), 2);
    }

    #[test]
    fn exchange_needs_an_extension() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        assert!(matches!(
            check_exchange(&t, arc("p0:0-p0:4"), arc("p0:0-p0:5"), 4),
            Err(Error::NoExtension(..))
        ));
    }

    #[test]
    fn multiplication_for_a_crossing_pair() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let c = check_multiplication(&t, &[arc("p0:3-p0:-2")], &[arc("p0:0-p0:4")], 6).unwrap();
        assert!(c.holds);
    }
}
