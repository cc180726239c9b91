//! Formal Laurent series in the tilting variables: finitely many terms, each
//! a monomial times sums over tail positions of a shifted template.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::representations::K0Element;
use crate::tilting::{Chain, CtVertex, Tilting};

/// A Laurent monomial; exponents are never zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Monomial(pub BTreeMap<CtVertex, i64>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: CtVertex, e: i64) -> Self {
        let mut m = Monomial::one();
        m.mul_var(v, e);
        m
    }

    pub fn from_k0(k: &K0Element) -> Self {
        Monomial(k.0.clone())
    }

    pub fn mul_var(&mut self, v: CtVertex, e: i64) {
        let x = self.0.entry(v).or_insert(0);
        *x += e;
        if *x == 0 {
            self.0.remove(&v);
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.0 {
            out.mul_var(v, e);
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(&v, &e)| (v, -e)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = CtVertex> + '_ {
        self.0.keys().copied()
    }

    pub fn display<'a>(&'a self, t: &'a Tilting) -> impl fmt::Display + 'a {
        DisplayMonomial { m: self, t }
    }
}

struct DisplayMonomial<'a> {
    m: &'a Monomial,
    t: &'a Tilting,
}

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.m.0.iter().map(|(&v, &e)| power(&self.t.label(v), e)).collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn power(name: &str, e: i64) -> String {
    if e == 1 {
        format!("x({name})")
    } else {
        format!("x({name})^{e}")
    }
}

/// An interval of chain coordinates, bounds inclusive, `None` unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Domain {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Domain {
    pub fn from(lo: i64) -> Self {
        Domain { lo: Some(lo), hi: None }
    }

    pub fn all() -> Self {
        Domain { lo: None, hi: None }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo.is_none_or(|l| n >= l) && self.hi.is_none_or(|h| n <= h)
    }

    fn shifted(&self, d: i64) -> Domain {
        Domain { lo: self.lo.map(|l| l + d), hi: self.hi.map(|h| h + d) }
    }

    fn mirrored(&self, c: i64) -> Domain {
        // n -> c - n
        Domain { lo: self.hi.map(|h| c - h), hi: self.lo.map(|l| c - l) }
    }

    fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(l), Some(h)) if l > h)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lo {
            Some(l) => write!(f, "[{l},")?,
            None => write!(f, "(-inf,")?,
        }
        match self.hi {
            Some(h) => write!(f, "{h}]"),
            None => write!(f, "inf)"),
        }
    }
}

/// `sum over n in domain of prod_(o, e) x_{chain(n + o)}^e`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TailSlot {
    pub chain: Chain,
    pub domain: Domain,
    /// `(offset, exponent)` sorted by offset, smallest offset 0.
    pub template: Vec<(i64, i64)>,
}

impl TailSlot {
    pub fn new(chain: Chain, domain: Domain, template: Vec<(i64, i64)>) -> Self {
        let mut s = TailSlot { chain, domain, template };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        self.template.retain(|&(_, e)| e != 0);
        self.template.sort();
        if let Some(&(o, _)) = self.template.first() {
            for x in &mut self.template {
                x.0 -= o;
            }
            self.domain = self.domain.shifted(o);
        }
    }

    pub fn instance(&self, t: &Tilting, n: i64) -> Option<Monomial> {
        let mut m = Monomial::one();
        for &(o, e) in &self.template {
            m.mul_var(t.chain_vertex(self.chain, n + o)?, e);
        }
        Some(m)
    }

    fn span(&self) -> i64 {
        self.template.last().map_or(0, |x| x.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: i64,
    pub fixed: Monomial,
    /// At most one slot per chain, sorted.
    pub slots: Vec<TailSlot>,
}

/// A finite sum of [`Term`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FormalSeries {
    pub terms: Vec<Term>,
}

/// A Laurent polynomial, e.g. a series expanded on a finite window.
pub type LaurentPoly = BTreeMap<Monomial, i64>;

fn add_to(p: &mut LaurentPoly, m: Monomial, c: i64) {
    let x = p.entry(m.clone()).or_insert(0);
    *x += c;
    if *x == 0 {
        p.remove(&m);
    }
}

pub fn poly_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_to(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

pub fn poly_add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = a.clone();
    for (m, c) in b {
        add_to(&mut out, m.clone(), *c);
    }
    out
}

pub fn poly_display(p: &LaurentPoly, t: &Tilting) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, &c)) in p.iter().enumerate() {
        let sep = match (k, c < 0) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let factors = if m.is_one() { vec![] } else { vec![m.display(t).to_string()] };
        s.push_str(sep);
        s.push_str(&with_coeff(c.abs(), factors));
    }
    s
}

fn with_coeff(c: i64, mut factors: Vec<String>) -> String {
    factors.insert(0, c.to_string());
    factors.join("*")
}

/// Chain coordinate of a tail vertex in the chain used for families.
pub fn chain_coord(t: &Tilting, v: CtVertex) -> Option<(Chain, i64)> {
    let tail = v.tail_id()?;
    let (chain, offset, sign) = t.chain_of(tail);
    Some((chain, offset + sign * v.pos()? as i64))
}

impl FormalSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: i64, m: Monomial) -> Self {
        FormalSeries { terms: vec![Term { coeff: c, fixed: m, slots: vec![] }] }
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.slots.iter().all(|s| {
            matches!((s.domain.lo, s.domain.hi), (Some(_), Some(_)))
        }))
    }

    /// Keeps exactly the monomials all of whose variables lie in `window`.
    pub fn expand(&self, t: &Tilting, window: &BTreeSet<CtVertex>) -> LaurentPoly {
        let mut out = LaurentPoly::new();
        for term in &self.terms {
            let slots: Vec<TailSlot> = term.slots.iter().map(|s| to_canonical_chain(t, s)).collect();
            let ranges: Vec<Vec<i64>> = slots.iter().map(|s| slot_range(t, s, &term.fixed, window)).collect();
            for values in cartesian_i64(&ranges) {
                let mut m = term.fixed.clone();
                let mut ok = true;
                for (s, &n) in slots.iter().zip(&values) {
                    match s.instance(t, n) {
                        Some(x) => m = m.mul(&x),
                        None => ok = false,
                    }
                }
                if ok && m.vars().all(|v| window.contains(&v)) {
                    add_to(&mut out, m, term.coeff);
                }
            }
        }
        out
    }

    /// Whether every template exponent is non-positive.
    pub fn templates_nonpositive(&self) -> bool {
        self.terms.iter().all(|t| t.slots.iter().all(|s| s.template.iter().all(|&(_, e)| e <= 0)))
    }

    pub fn fixed_vars(&self) -> BTreeSet<CtVertex> {
        self.terms.iter().flat_map(|t| t.fixed.vars()).collect()
    }

    pub fn display<'a>(&'a self, t: &'a Tilting) -> impl fmt::Display + 'a {
        DisplaySeries { s: self, t }
    }
}

/// Slot values that can give a monomial supported in `window`.
fn slot_range(t: &Tilting, s: &TailSlot, fixed: &Monomial, window: &BTreeSet<CtVertex>) -> Vec<i64> {
    let coords: Vec<i64> = window
        .iter()
        .chain(fixed.0.keys())
        .filter_map(|&v| chain_coord(t, v))
        .filter(|&(c, _)| c == s.chain)
        .map(|(_, n)| n)
        .collect();
    let (Some(&lo), Some(&hi)) = (coords.iter().min(), coords.iter().max()) else {
        return Vec::new();
    };
    (lo - s.span()..=hi).filter(|&n| s.domain.contains(n)).collect()
}

fn cartesian_i64(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for r in ranges {
        let mut next = Vec::new();
        for prefix in &out {
            for &x in r {
                let mut p = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

const VARS: [&str; 6] = ["n", "m", "k", "l", "p", "q"];

struct DisplaySeries<'a> {
    s: &'a FormalSeries,
    t: &'a Tilting,
}

impl fmt::Display for DisplaySeries<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, term) in self.s.terms.iter().enumerate() {
            match (k, term.coeff < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            let mut factors = Vec::new();
            if !term.fixed.is_one() {
                factors.push(term.fixed.display(self.t).to_string());
            }
            for (i, slot) in term.slots.iter().enumerate() {
                let var = VARS.get(i).map_or_else(|| format!("n{i}"), |s| s.to_string());
                let chain = self.t.chain_name(slot.chain);
                let powers: Vec<String> = slot
                    .template
                    .iter()
                    .map(|&(o, e)| {
                        let arg = match o {
                            0 => var.clone(),
                            o if o > 0 => format!("{var}+{o}"),
                            o => format!("{var}{o}"),
                        };
                        power(&format!("{chain}({arg})"), e)
                    })
                    .collect();
                factors.push(format!("sum{{{var} in {}}} {}", slot.domain, powers.join("*")));
            }
            write!(f, "{}", with_coeff(term.coeff.abs(), factors))?;
        }
        Ok(())
    }
}

impl FormalSeries {
    /// Rewrites into the normal form used for printing and comparison:
    /// family slots live on bridge chains where available, explicit terms
    /// adjacent to a slot domain are absorbed into it, touching domains are
    /// merged, like terms are collected and zero terms dropped.
    pub fn canonicalize(&self, t: &Tilting) -> FormalSeries {
        let mut explicit = LaurentPoly::new();
        let mut single: BTreeMap<(i64, Monomial, Chain, Vec<(i64, i64)>), Vec<Domain>> = BTreeMap::new();
        let mut multi: BTreeMap<(Monomial, Vec<TailSlot>), i64> = BTreeMap::new();
        for term in &self.terms {
            if term.coeff == 0 {
                continue;
            }
            let mut slots: Vec<TailSlot> = term.slots.iter().map(|s| to_canonical_chain(t, s)).collect();
            slots.retain(|s| !s.domain.is_empty());
            if slots.len() < term.slots.len() {
                continue;
            }
            // a slot with empty template is a plain count
            let mut coeff = term.coeff;
            let mut kept = Vec::new();
            let mut infinite = false;
            for s in slots {
                if s.template.is_empty() {
                    match (s.domain.lo, s.domain.hi) {
                        (Some(l), Some(h)) => coeff *= h - l + 1,
                        _ => infinite = true,
                    }
                } else {
                    kept.push(s);
                }
            }
            if infinite {
                kept.push(TailSlot { chain: term.slots[0].chain, domain: Domain::all(), template: vec![] });
            }
            kept.sort();
            match kept.len() {
                0 => add_to(&mut explicit, term.fixed.clone(), coeff),
                1 => {
                    let s = kept.pop().unwrap();
                    single.entry((coeff, term.fixed.clone(), s.chain, s.template)).or_default().push(s.domain);
                }
                _ => *multi.entry((term.fixed.clone(), kept)).or_insert(0) += coeff,
            }
        }

        let mut terms = Vec::new();
        for ((coeff, fixed, chain, template), mut domains) in single {
            let probe = TailSlot { chain, domain: Domain::all(), template: template.clone() };
            let inst = |n: i64| probe.instance(t, n).map(|m| fixed.mul(&m));
            loop {
                let mut changed = false;
                domains.sort();
                // merge touching domains
                let mut merged: Vec<Domain> = Vec::new();
                for d in domains.drain(..) {
                    if let Some(last) = merged.last_mut() {
                        if let (Some(h), Some(l)) = (last.hi, d.lo) {
                            if h + 1 == l {
                                last.hi = d.hi;
                                changed = true;
                                continue;
                            }
                        }
                    }
                    merged.push(d);
                }
                for d in merged.iter_mut() {
                    while let Some(l) = d.lo {
                        match inst(l - 1) {
                            Some(m) if explicit.get(&m) == Some(&coeff) => {
                                explicit.remove(&m);
                                d.lo = Some(l - 1);
                                changed = true;
                            }
                            _ => break,
                        }
                    }
                    while let Some(h) = d.hi {
                        match inst(h + 1) {
                            Some(m) if explicit.get(&m) == Some(&coeff) => {
                                explicit.remove(&m);
                                d.hi = Some(h + 1);
                                changed = true;
                            }
                            _ => break,
                        }
                    }
                }
                domains = merged;
                if !changed {
                    break;
                }
            }
            for d in domains {
                terms.push(Term {
                    coeff,
                    fixed: fixed.clone(),
                    slots: vec![TailSlot { chain, domain: d, template: template.clone() }],
                });
            }
        }
        for ((fixed, slots), coeff) in multi {
            if coeff != 0 {
                terms.push(Term { coeff, fixed, slots });
            }
        }
        for (m, c) in explicit {
            terms.push(Term { coeff: c, fixed: m, slots: vec![] });
        }
        terms.sort_by(|a, b| (&a.fixed, &a.slots, a.coeff).cmp(&(&b.fixed, &b.slots, b.coeff)));
        FormalSeries { terms }
    }

    pub fn canonical_string(&self, t: &Tilting) -> String {
        self.canonicalize(t).display(t).to_string()
    }

    /// Exact product; `None` when two terms carry slots on a common chain.
    pub fn mul_exact(&self, other: &FormalSeries) -> Option<FormalSeries> {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                if a.slots.iter().any(|s| b.slots.iter().any(|u| u.chain == s.chain)) {
                    return None;
                }
                let mut slots: Vec<TailSlot> = a.slots.iter().chain(&b.slots).cloned().collect();
                slots.sort();
                terms.push(Term { coeff: a.coeff * b.coeff, fixed: a.fixed.mul(&b.fixed), slots });
            }
        }
        Some(FormalSeries { terms })
    }

    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        FormalSeries { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }

    /// Parses the text form printed by [`FormalSeries::display`].
    pub fn parse(t: &Tilting, s: &str) -> Result<FormalSeries> {
        let mut terms = Vec::new();
        for (sign, text) in split_terms(s)? {
            terms.push(parse_term(t, sign, text)?);
        }
        if terms.len() == 1 && terms[0].coeff == 0 && terms[0].fixed.is_one() && terms[0].slots.is_empty() {
            terms.clear();
        }
        Ok(FormalSeries { terms })
    }
}

fn to_canonical_chain(t: &Tilting, s: &TailSlot) -> TailSlot {
    let Chain::Tail(tail) = s.chain else {
        return s.clone();
    };
    let (chain, offset, sign) = t.chain_of(tail);
    if chain == s.chain {
        return s.clone();
    }
    let template = s.template.iter().map(|&(o, e)| (sign * o, e)).collect();
    let domain = if sign > 0 { s.domain.shifted(offset) } else { s.domain.mirrored(offset) };
    TailSlot::new(chain, domain, template)
}

fn split_terms(s: &str) -> Result<Vec<(i64, &str)>> {
    let s = s.trim();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut sign = 1;
    let bytes = s.as_bytes();
    if s.starts_with('-') {
        sign = -1;
        start = 1;
    }
    let mut i = start;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'{' | b'[' => depth += 1,
            b')' | b'}' | b']' => depth -= 1,
            b' ' if depth == 0 && i + 2 < bytes.len() && (bytes[i + 1] == b'+' || bytes[i + 1] == b'-') && bytes[i + 2] == b' ' => {
                out.push((sign, s[start..i].trim()));
                sign = if bytes[i + 1] == b'+' { 1 } else { -1 };
                start = i + 3;
                i += 3;
                continue;
            }
            _ => {}
        }
        i += 1;
    }
    out.push((sign, s[start..].trim()));
    if out.iter().any(|(_, x)| x.is_empty()) {
        return Err(Error::Parse(format!("empty term in `{s}`")));
    }
    Ok(out)
}

fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_domain(s: &str) -> Result<Domain> {
    let bad = || Error::Parse(format!("bad domain `{s}`"));
    let s = s.trim();
    let (l, h) = s.get(1..s.len().saturating_sub(1)).and_then(|x| x.split_once(',')).ok_or_else(bad)?;
    let lo = match (s.starts_with('['), l.trim()) {
        (false, "-inf") => None,
        (true, x) => Some(x.parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    };
    let hi = match (s.ends_with(']'), h.trim()) {
        (false, "inf") => None,
        (true, x) => Some(x.parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    };
    Ok(Domain { lo, hi })
}

/// `x(name)^e` into `(name, e)`.
fn parse_power(s: &str) -> Result<(&str, i64)> {
    let bad = || Error::Parse(format!("bad factor `{s}`"));
    let (base, e) = match s.rfind(")^") {
        Some(k) => (&s[..k + 1], s[k + 2..].parse().map_err(|_| bad())?),
        None => (s, 1),
    };
    let inner = base.strip_prefix("x(").and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    Ok((inner, e))
}

fn parse_term(t: &Tilting, sign: i64, s: &str) -> Result<Term> {
    let factors = split_factors(s);
    let mut coeff = sign;
    let mut fixed = Monomial::one();
    let mut slots: Vec<(String, TailSlot)> = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        if k == 0 {
            if let Ok(c) = f.parse::<i64>() {
                coeff *= c;
                continue;
            }
        }
        if *f == "1" {
            continue;
        }
        let mut f = *f;
        if let Some(rest) = f.strip_prefix("sum{") {
            let close = rest.find('}').ok_or_else(|| Error::Parse(format!("unclosed sum in `{s}`")))?;
            let head = &rest[..close];
            let (var, dom) = head
                .split_once(" in ")
                .ok_or_else(|| Error::Parse(format!("bad sum header `{head}`")))?;
            slots.push((
                var.trim().to_string(),
                TailSlot { chain: Chain::Tail(crate::tilting::TailId { acc: 0, side: crate::tilting::Side::L }), domain: parse_domain(dom)?, template: vec![] },
            ));
            f = rest[close + 1..].trim();
            if f.is_empty() {
                continue;
            }
        }
        let (inner, e) = parse_power(f)?;
        if let Some(open) = inner.find('(') {
            let chain = t.parse_chain(&inner[..open])?;
            let arg = inner[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("bad factor `{f}`")))?;
            let split = arg.find(['+', '-']).unwrap_or(arg.len());
            let (var, off) = arg.split_at(split);
            let off: i64 = if off.is_empty() {
                0
            } else {
                off.trim_start_matches('+').parse().map_err(|_| Error::Parse(format!("bad offset `{arg}`")))?
            };
            let slot = slots
                .iter_mut()
                .find(|(v, _)| v == var)
                .ok_or_else(|| Error::Parse(format!("unbound variable `{var}`")))?;
            if slot.1.template.is_empty() {
                slot.1.chain = chain;
            } else if slot.1.chain != chain {
                return Err(Error::Parse(format!("variable `{var}` used on two chains")));
            }
            slot.1.template.push((off, e));
        } else {
            fixed.mul_var(t.parse_vertex(inner)?, e);
        }
    }
    let mut out: Vec<TailSlot> = slots
        .into_iter()
        .map(|(_, s)| TailSlot::new(s.chain, s.domain, s.template))
        .collect();
    out.sort();
    Ok(Term { coeff, fixed, slots: out })
}

/// A product or sum of series that is only evaluated on finite windows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SeriesExpr {
    Series(FormalSeries),
    Product(Vec<SeriesExpr>),
    Sum(Vec<SeriesExpr>),
}

impl SeriesExpr {
    pub fn as_series(&self) -> Option<&FormalSeries> {
        match self {
            SeriesExpr::Series(s) => Some(s),
            _ => None,
        }
    }

    fn leaves(&self) -> Vec<&FormalSeries> {
        match self {
            SeriesExpr::Series(s) => vec![s],
            SeriesExpr::Product(v) | SeriesExpr::Sum(v) => v.iter().flat_map(|e| e.leaves()).collect(),
        }
    }

    /// The monomials supported in `window`. For products every factor is
    /// expanded on `window` enlarged by all fixed variables, which is exact
    /// when templates carry only non-positive exponents.
    pub fn expand(&self, t: &Tilting, window: &BTreeSet<CtVertex>) -> Result<LaurentPoly> {
        match self {
            SeriesExpr::Series(s) => Ok(s.expand(t, window)),
            SeriesExpr::Sum(v) => {
                v.iter().try_fold(LaurentPoly::new(), |acc, e| Ok(poly_add(&acc, &e.expand(t, window)?)))
            }
            SeriesExpr::Product(v) => {
                let leaves = self.leaves();
                if !leaves.iter().all(|s| s.templates_nonpositive()) {
                    return Err(Error::Inconsistent(
                        "window product of series with positive template exponents".into(),
                    ));
                }
                let mut wide = window.clone();
                for s in &leaves {
                    wide.extend(s.fixed_vars());
                }
                let mut acc = LaurentPoly::from([(Monomial::one(), 1)]);
                for e in v {
                    acc = poly_mul(&acc, &e.expand(t, &wide)?);
                }
                acc.retain(|m, _| m.vars().all(|x| window.contains(&x)));
                Ok(acc)
            }
        }
    }

    pub fn display<'a>(&'a self, t: &'a Tilting) -> impl fmt::Display + 'a {
        DisplayExpr { e: self, t }
    }
}

struct DisplayExpr<'a> {
    e: &'a SeriesExpr,
    t: &'a Tilting,
}

impl fmt::Display for DisplayExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.e {
            SeriesExpr::Series(s) => write!(f, "{}", s.canonicalize(self.t).display(self.t)),
            SeriesExpr::Product(v) | SeriesExpr::Sum(v) => {
                let sep = if matches!(self.e, SeriesExpr::Product(_)) { " * " } else { " + " };
                let parts: Vec<String> = v.iter().map(|e| format!("({})", e.display(self.t))).collect();
                write!(f, "{}", parts.join(sep))
            }
        }
    }
}

/// Exact product when no two terms share a chain, otherwise a product that
/// is evaluated window by window.
pub fn series_mul(t: &Tilting, a: &SeriesExpr, b: &SeriesExpr) -> SeriesExpr {
    if let (SeriesExpr::Series(x), SeriesExpr::Series(y)) = (a, b) {
        if let Some(p) = x.mul_exact(y) {
            return SeriesExpr::Series(p.canonicalize(t));
        }
    }
    let mut factors = Vec::new();
    for e in [a, b] {
        match e {
            SeriesExpr::Product(v) => factors.extend(v.iter().cloned()),
            other => factors.push(other.clone()),
        }
    }
    SeriesExpr::Product(factors)
}

/// `series` restricted to monomials supported in `window`.
pub fn window_expand(t: &Tilting, series: &FormalSeries, window: &BTreeSet<CtVertex>) -> LaurentPoly {
    series.expand(t, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_ACC: &str = r#"{"surface":{"acc":1},"fountains":[{"acc":0,"base":"p0:0","left_from":2,"right_to":-2}]}"#;
    const ONE_ACC_SERIES: &str =
        "1*x(alpha1)^-1*x(z) + 1*x(z)^-1 + 1*x(z)*sum{n in [1,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1";

    #[test]
    fn parse_display_round_trip() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let s = FormalSeries::parse(&t, ONE_ACC_SERIES).unwrap();
        assert_eq!(s.canonical_string(&t), ONE_ACC_SERIES);
        let again = FormalSeries::parse(&t, &s.canonical_string(&t)).unwrap();
        assert_eq!(again.canonicalize(&t), s.canonicalize(&t));
    }

    #[test]
    fn explicit_terms_merge_into_sums() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let split = FormalSeries::parse(
            &t,
            "x(z)*x(alpha1)^-1*x(alpha2)^-1 + x(z)*sum{n in [2,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1",
        )
        .unwrap();
        let whole = FormalSeries::parse(&t, "x(z)*sum{n in [1,inf)} x(f0L(n))^-1*x(f0L(n+1))^-1").unwrap();
        assert_eq!(split.canonical_string(&t), whole.canonical_string(&t));
    }

    #[test]
    fn like_terms_cancel() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let s = FormalSeries::parse(&t, "x(z) - x(z) + 2*x(alpha3)^-1").unwrap();
        assert_eq!(s.canonical_string(&t), "2*x(alpha3)^-1");
        assert_eq!(FormalSeries::parse(&t, "0").unwrap().canonical_string(&t), "0");
    }

    #[test]
    fn window_expansion() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let s = FormalSeries::parse(&t, ONE_ACC_SERIES).unwrap();
        let w: BTreeSet<CtVertex> = t.window_radius(3).into_iter().collect();
        // x1^-1 xz, xz^-1, and n = 1, 2
        assert_eq!(s.expand(&t, &w).len(), 4);
    }

    #[test]
    fn exact_product_when_chains_are_disjoint() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        let a = FormalSeries::parse(&t, "x(z) + x(alpha2)^-1").unwrap();
        let b = FormalSeries::parse(&t, ONE_ACC_SERIES).unwrap();
        let p = series_mul(&t, &SeriesExpr::Series(a.clone()), &SeriesExpr::Series(b.clone()));
        assert!(p.as_series().is_some());
        let w: BTreeSet<CtVertex> = t.window_radius(6).into_iter().collect();
        let direct = poly_mul(&a.expand(&t, &w), &b.expand(&t, &w));
        assert_eq!(p.expand(&t, &w).unwrap(), direct);
        let q = series_mul(&t, &SeriesExpr::Series(b.clone()), &SeriesExpr::Series(b));
        assert!(q.as_series().is_none());
    }

    #[test]
    fn malformed_series_is_a_parse_error() {
        let t = Tilting::from_json(ONE_ACC).unwrap();
        assert!(FormalSeries::parse(&t, "x(nope)").is_err());
        assert!(FormalSeries::parse(&t, "x(z)*sum{n in [1,inf) x(f0L(n))").is_err());
    }
}
