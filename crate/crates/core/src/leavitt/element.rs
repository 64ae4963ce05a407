use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::quiver::{EdgeId, Quiver, QuiverError, VertexId};
use crate::numeric::{format_rational, Rational};

/// A path: a start vertex followed by composable edges. The empty edge list
/// is the trivial path at `start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path { start: v, edges: Vec::new() }
    }

    pub fn edge(q: &Quiver, e: EdgeId) -> Path {
        Path { start: q.edge(e).src, edges: vec![e] }
    }

    /// Builds a path from edge ids, checking composability.
    pub fn from_edges(q: &Quiver, edges: &[EdgeId]) -> Option<Path> {
        let first = *edges.first()?;
        let p = Path { start: q.edge(first).src, edges: edges.to_vec() };
        p.is_valid(q).then_some(p)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, q: &Quiver) -> VertexId {
        self.edges.last().map_or(self.start, |&e| q.edge(e).rng)
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        if !q.has_vertex(self.start) || !self.edges.iter().all(|&e| q.has_edge(e)) {
            return false;
        }
        let mut at = self.start;
        for &e in &self.edges {
            if q.edge(e).src != at {
                return false;
            }
            at = q.edge(e).rng;
        }
        true
    }

    /// True when `self` is an initial subpath of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// `self` followed by the edge list `tail`.
    pub fn extend(&self, tail: &[EdgeId]) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(tail);
        Path { start: self.start, edges }
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.edges.is_empty() {
            q.vertex_name(self.start)
        } else {
            self.edges.iter().map(|&e| q.edge(e).name.clone()).collect::<Vec<_>>().join("")
        }
    }
}

/// The monomial `real · ghost*`, with both paths ending at the same vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub real: Path,
    pub ghost: Path,
}

impl Monomial {
    pub fn new(q: &Quiver, real: Path, ghost: Path) -> Option<Monomial> {
        (real.is_valid(q) && ghost.is_valid(q) && real.range(q) == ghost.range(q)).then_some(Monomial { real, ghost })
    }

    pub fn vertex(v: VertexId) -> Monomial {
        Monomial { real: Path::vertex(v), ghost: Path::vertex(v) }
    }

    pub fn edge(q: &Quiver, e: EdgeId) -> Monomial {
        Monomial { real: Path::edge(q, e), ghost: Path::vertex(q.edge(e).rng) }
    }

    pub fn ghost_edge(q: &Quiver, e: EdgeId) -> Monomial {
        Monomial { real: Path::vertex(q.edge(e).rng), ghost: Path::edge(q, e) }
    }

    /// `αα*`.
    pub fn projection(alpha: &Path) -> Monomial {
        Monomial { real: alpha.clone(), ghost: alpha.clone() }
    }

    pub fn total_len(&self) -> usize {
        self.real.len() + self.ghost.len()
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        self.real.is_valid(q) && self.ghost.is_valid(q) && self.real.range(q) == self.ghost.range(q)
    }

    /// Normal monomials do not end in `γ γ*` for the distinguished edge `γ`
    /// at a regular vertex.
    pub fn is_normal(&self, q: &Quiver) -> bool {
        match (self.real.edges.last(), self.ghost.edges.last()) {
            (Some(&a), Some(&b)) if a == b => q.distinguished(q.edge(a).src) != Some(a),
            _ => true,
        }
    }

    pub fn involution(&self) -> Monomial {
        Monomial { real: self.ghost.clone(), ghost: self.real.clone() }
    }

    pub fn render(&self, q: &Quiver) -> String {
        match (self.real.is_empty(), self.ghost.is_empty()) {
            (true, true) => q.vertex_name(self.real.start),
            (false, true) => self.real.render(q),
            (true, false) => star(&self.ghost, q),
            (false, false) => format!("{}{}", self.real.render(q), star(&self.ghost, q)),
        }
    }
}

fn star(p: &Path, q: &Quiver) -> String {
    p.edges.iter().rev().map(|&e| format!("{}*", q.edge(e).name)).collect()
}

/// The product of two monomials before normalization:
/// `(γδ*)(λρ*)` is `γκρ*` if `λ = δκ`, `γ(ρσ)*` if `δ = λσ`, and zero
/// otherwise.
pub fn monomial_mul(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let (gamma, delta) = (&a.real, &a.ghost);
    let (lambda, rho) = (&b.real, &b.ghost);
    if delta.is_prefix_of(lambda) {
        let kappa = &lambda.edges[delta.len()..];
        Some(Monomial { real: gamma.extend(kappa), ghost: rho.clone() })
    } else if lambda.is_prefix_of(delta) {
        let sigma = &delta.edges[lambda.len()..];
        Some(Monomial { real: gamma.clone(), ghost: rho.extend(sigma) })
    } else {
        None
    }
}

/// Order in which pending non-normal monomials are rewritten.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewritePolicy {
    /// Always rewrite the smallest pending monomial.
    Ordered,
    /// Rewrite a pseudo-randomly chosen pending monomial.
    Random(u64),
}

/// One rewriting step of a non-normal monomial `(α'γ)(β'γ)*`:
/// `α'β'* - Σ_{f ≠ γ, s(f) = s(γ)} (α'f)(β'f)*`.
fn rewrite_once(q: &Quiver, m: &Monomial) -> Vec<(Monomial, Rational)> {
    let gamma = *m.real.edges.last().expect("non-normal monomial has edges");
    let v = q.edge(gamma).src;
    let a = Path { start: m.real.start, edges: m.real.edges[..m.real.len() - 1].to_vec() };
    let b = Path { start: m.ghost.start, edges: m.ghost.edges[..m.ghost.len() - 1].to_vec() };
    let mut out = vec![(Monomial { real: a.clone(), ghost: b.clone() }, Rational::one())];
    for &f in q.out_edges(v) {
        if f != gamma {
            out.push((Monomial { real: a.extend(&[f]), ghost: b.extend(&[f]) }, -Rational::one()));
        }
    }
    out
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(entry) => {
            *entry += c;
            if entry.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

/// Rewrites a raw combination into normal form. Every step shortens the
/// rewritten monomial, so the loop terminates; the result does not depend
/// on the policy.
pub fn normal_form(
    q: &Quiver,
    raw: impl IntoIterator<Item = (Monomial, Rational)>,
    policy: RewritePolicy,
) -> LpaElement {
    let mut done: BTreeMap<Monomial, Rational> = BTreeMap::new();
    let mut pending: BTreeMap<Monomial, Rational> = BTreeMap::new();
    let mut rng = match policy {
        RewritePolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        RewritePolicy::Ordered => None,
    };
    let push = |done: &mut BTreeMap<Monomial, Rational>, pending: &mut BTreeMap<Monomial, Rational>, m: Monomial, c| {
        if m.is_normal(q) {
            accumulate(done, m, c);
        } else {
            accumulate(pending, m, c);
        }
    };
    for (m, c) in raw {
        push(&mut done, &mut pending, m, c);
    }
    loop {
        let next = match rng.as_mut() {
            None => pending.keys().next().cloned(),
            Some(r) => pending.keys().choose(r).cloned(),
        };
        let Some(m) = next else { break };
        let c = pending.remove(&m).expect("chosen from pending");
        for (n, d) in rewrite_once(q, &m) {
            push(&mut done, &mut pending, n, &c * d);
        }
    }
    LpaElement { terms: done }
}

/// A finite rational combination of normal monomials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LpaElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl LpaElement {
    pub fn zero() -> LpaElement {
        LpaElement::default()
    }

    pub fn from_monomial(q: &Quiver, m: Monomial) -> LpaElement {
        normal_form(q, [(m, Rational::one())], RewritePolicy::Ordered)
    }

    pub fn vertex(v: VertexId) -> LpaElement {
        LpaElement { terms: BTreeMap::from([(Monomial::vertex(v), Rational::one())]) }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn validate(&self, q: &Quiver) -> Result<(), QuiverError> {
        if self.terms.keys().all(|m| m.is_valid(q)) {
            Ok(())
        } else {
            Err(QuiverError::QuiverMismatch)
        }
    }

    pub fn add(&self, other: &LpaElement) -> LpaElement {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        LpaElement { terms }
    }

    pub fn scale(&self, c: &Rational) -> LpaElement {
        if c.is_zero() {
            return LpaElement::zero();
        }
        LpaElement { terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect() }
    }

    pub fn sub(&self, other: &LpaElement) -> LpaElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, q: &Quiver, other: &LpaElement) -> LpaElement {
        self.mul_with(q, other, RewritePolicy::Ordered)
    }

    pub fn mul_with(&self, q: &Quiver, other: &LpaElement, policy: RewritePolicy) -> LpaElement {
        let mut raw = Vec::new();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                if let Some(m) = monomial_mul(a, b) {
                    raw.push((m, c * d));
                }
            }
        }
        normal_form(q, raw, policy)
    }

    pub fn try_mul(&self, q: &Quiver, other: &LpaElement) -> Result<LpaElement, QuiverError> {
        self.validate(q)?;
        other.validate(q)?;
        Ok(self.mul(q, other))
    }

    /// The anti-multiplicative involution fixing vertices and swapping each
    /// edge with its ghost.
    pub fn involution(&self, q: &Quiver) -> LpaElement {
        normal_form(q, self.terms.iter().map(|(m, c)| (m.involution(), c.clone())), RewritePolicy::Ordered)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                let _ = write!(out, "{}·", format_rational(&mag));
            }
            out.push_str(&m.render(q));
        }
        out
    }
}
