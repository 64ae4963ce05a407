use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

use super::{AnalysisError, DegreeWindow, GradedRing};
use crate::groups::{centered_window, Coset, Group, GroupElement, NormalSubgroup, Quotient};
use crate::linalg::Span;

/// The window part of a coset component `S_C`.
#[derive(Debug, Clone)]
pub struct CosetBasis<E> {
    pub coset: Coset,
    pub degrees: Vec<GroupElement>,
    /// Homogeneous spanning elements with their degrees.
    pub elems: Vec<(GroupElement, E)>,
    /// The elements span all of `S_C`.
    pub complete: bool,
}

/// The grading of a ring by `G/N`, with `S_C = ⊕_{g∈C} S_g`. A trivial `N`
/// gives the ring's own grading.
pub struct InducedGrading<'a, R: GradedRing> {
    ring: &'a R,
    quotient: Quotient,
    bound: usize,
    window: DegreeWindow,
    bases: RefCell<BTreeMap<Coset, Rc<CosetBasis<R::Elem>>>>,
    epsilons: RefCell<BTreeMap<GroupElement, Option<R::Elem>>>,
    generators: RefCell<BTreeMap<GroupElement, Rc<Vec<R::Elem>>>>,
    unit_spans: RefCell<BTreeMap<Coset, Rc<Span<R::Coord>>>>,
}

impl<'a, R: GradedRing> InducedGrading<'a, R> {
    pub fn new(ring: &'a R, quotient: Quotient, bound: usize) -> Result<InducedGrading<'a, R>, AnalysisError> {
        if quotient.group() != ring.group() {
            return Err(AnalysisError::NotApplicable("the quotient is taken of a different group".into()));
        }
        Ok(InducedGrading {
            ring,
            window: ring.degree_window(bound),
            quotient,
            bound,
            bases: RefCell::default(),
            epsilons: RefCell::default(),
            generators: RefCell::default(),
            unit_spans: RefCell::default(),
        })
    }

    /// The ring's own grading.
    pub fn parent(ring: &'a R, bound: usize) -> InducedGrading<'a, R> {
        InducedGrading::new(ring, Quotient::trivial(ring.group()), bound).expect("same group")
    }

    pub fn ring(&self) -> &'a R {
        self.ring
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn window(&self) -> &DegreeWindow {
        &self.window
    }

    pub fn group(&self) -> &Group {
        self.ring.group()
    }

    /// A short name for the grading group, e.g. `Z`, `Z/2Z` or `G/N`.
    pub fn label(&self) -> String {
        match (self.group(), self.quotient.subgroup()) {
            (Group::Integers, NormalSubgroup::Multiples(0)) => "Z".into(),
            (Group::Integers, NormalSubgroup::Multiples(m)) => format!("Z/{m}Z"),
            (_, s) if s.is_trivial() => format!("G (order {})", self.group().order().unwrap_or(0)),
            (_, NormalSubgroup::Members(m)) => format!("G/N with |N| = {}", m.len()),
            (_, NormalSubgroup::Multiples(_)) => "G/N".into(),
        }
    }

    pub fn is_parent(&self) -> bool {
        self.quotient.is_trivial()
    }

    /// Cosets meeting the window, outward from the principal coset.
    pub fn cosets(&self) -> Vec<Coset> {
        let mut out: Vec<Coset> = Vec::new();
        for g in centered_window(self.group(), self.bound) {
            let c = self.quotient.coset_of(g);
            if !out.contains(&c) {
                out.push(c);
            }
        }
        for c in self.quotient.window_cosets(self.bound) {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Every coset was enumerated.
    pub fn all_cosets_seen(&self) -> bool {
        self.quotient.is_finite()
    }

    pub fn coset_of(&self, g: GroupElement) -> Coset {
        self.quotient.coset_of(g)
    }

    pub fn inverse(&self, c: &Coset) -> Coset {
        self.quotient.inv(c)
    }

    pub fn principal(&self) -> Coset {
        self.quotient.identity()
    }

    /// Window degrees of the coset, outward from the identity.
    pub fn degrees_in(&self, c: &Coset) -> Vec<GroupElement> {
        centered_window(self.group(), self.bound)
            .into_iter()
            .filter(|g| self.window.degrees.contains(g) && self.quotient.contains(c, *g))
            .collect()
    }

    pub fn basis(&self, c: &Coset) -> Rc<CosetBasis<R::Elem>> {
        if let Some(b) = self.bases.borrow().get(c) {
            return b.clone();
        }
        let degrees = self.degrees_in(c);
        let mut elems = Vec::new();
        let mut complete = self.window.exhaustive || self.quotient.is_trivial() || self.group().is_finite();
        for &g in &degrees {
            let comp = self.ring.component(g, self.bound);
            complete &= comp.complete;
            elems.extend(comp.basis.into_iter().map(|x| (g, x)));
        }
        let b = Rc::new(CosetBasis { coset: *c, degrees, elems, complete });
        self.bases.borrow_mut().insert(*c, b.clone());
        b
    }

    pub fn epsilon(&self, g: GroupElement) -> Option<R::Elem> {
        if let Some(e) = self.epsilons.borrow().get(&g) {
            return e.clone();
        }
        let e = self.ring.epsilon(g, self.bound);
        self.epsilons.borrow_mut().insert(g, e.clone());
        e
    }

    pub fn unit_generators(&self, g: GroupElement) -> Rc<Vec<R::Elem>> {
        if let Some(v) = self.generators.borrow().get(&g) {
            return v.clone();
        }
        let v = Rc::new(self.ring.unit_generators(g, self.bound));
        self.generators.borrow_mut().insert(g, v.clone());
        v
    }

    /// Unit generators of every degree of the coset in window order.
    pub fn coset_generators(&self, c: &Coset) -> Vec<(GroupElement, R::Elem)> {
        self.degrees_in(c)
            .into_iter()
            .flat_map(|g| self.unit_generators(g).iter().cloned().map(move |x| (g, x)).collect::<Vec<_>>())
            .collect()
    }

    /// Span of the degree-`e` part of `S_C S_{C⁻¹}` within the window.
    pub fn unit_span(&self, c: &Coset) -> Rc<Span<R::Coord>> {
        if let Some(s) = self.unit_spans.borrow().get(c) {
            return s.clone();
        }
        let left = self.basis(c);
        let right = self.basis(&self.inverse(c));
        let e = self.group().identity();
        let mut span = Span::new();
        for (g, s) in &left.elems {
            for (h, t) in &right.elems {
                if self.group().op(*g, *h) != e {
                    continue;
                }
                let p = self.ring.mul(s, t);
                if !self.ring.is_zero(&p) {
                    span.insert(&self.ring.coords(&p));
                }
            }
        }
        let span = Rc::new(span);
        self.unit_spans.borrow_mut().insert(*c, span.clone());
        span
    }

    pub fn in_unit_span(&self, c: &Coset, x: &R::Elem) -> bool {
        self.unit_span(c).contains(&self.ring.coords(x))
    }

    /// Span of the part of `S_C S_D` lying in degree `target`.
    pub fn product_span(&self, c: &Coset, d: &Coset, target: GroupElement) -> Span<R::Coord> {
        let left = self.basis(c);
        let right = self.basis(d);
        let mut span = Span::new();
        for (g, s) in &left.elems {
            for (h, t) in &right.elems {
                if self.group().op(*g, *h) != target {
                    continue;
                }
                let p = self.ring.mul(s, t);
                if !self.ring.is_zero(&p) {
                    span.insert(&self.ring.coords(&p));
                }
            }
        }
        span
    }

    pub fn render(&self, x: &R::Elem) -> String {
        self.ring.render(x)
    }
}
