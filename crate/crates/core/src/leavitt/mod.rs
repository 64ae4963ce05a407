//! Leavitt path algebras over the rationals with standard gradings.
//!
//! Elements are kept in a normal form: the Cuntz–Krieger relation at each
//! regular vertex `v` is oriented to eliminate `γγ*` for one distinguished
//! edge `γ` leaving `v`. Homogeneous components are enumerated up to a bound
//! on `len α + len β`.

mod element;
mod quiver;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

pub use element::{monomial_mul, normal_form, LpaElement, Monomial, Path, RewritePolicy};
pub use quiver::{Edge, EdgeId, EdgeSpec, Quiver, QuiverError, QuiverSpec, VertexId};

use crate::groups::{Group, GroupElement, GroupError};
use crate::idempotents::Carrier;
use crate::linalg::{Span, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeavittError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("no degree given for edge '{0}'")]
    MissingDegree(String),
    #[error("unknown builtin quiver '{0}'")]
    UnknownBuiltin(String),
}

/// Edge degrees in `G`; vertices have degree `e` and ghost edges the inverse
/// degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardGrading {
    pub group: Group,
    pub degrees: Vec<GroupElement>,
}

impl StandardGrading {
    pub fn path_degree(&self, p: &Path) -> GroupElement {
        p.edges.iter().fold(self.group.identity(), |acc, &e| self.group.op(acc, self.degrees[e]))
    }

    pub fn degree_of(&self, m: &Monomial) -> GroupElement {
        self.group.op(self.path_degree(&m.real), self.group.inv(self.path_degree(&m.ghost)))
    }
}

/// A bounded slice of a homogeneous component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentBasis {
    pub basis: Vec<Monomial>,
    pub complete: bool,
}

/// The result of computing `ε_g` at a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonReport {
    pub epsilon: Option<LpaElement>,
    pub mset: Vec<Path>,
    pub counterexample: Option<Monomial>,
    pub stable: bool,
}

type MonomialTable = Arc<Vec<(GroupElement, Monomial)>>;

/// A Leavitt path algebra with a standard grading.
#[derive(Debug, Clone)]
pub struct LeavittAlgebra {
    quiver: Arc<Quiver>,
    grading: StandardGrading,
    normal_cache: Arc<Mutex<HashMap<usize, MonomialTable>>>,
}

impl LeavittAlgebra {
    pub fn new(quiver: Quiver, grading: StandardGrading) -> LeavittAlgebra {
        assert_eq!(quiver.edges().len(), grading.degrees.len(), "one degree per edge");
        LeavittAlgebra { quiver: Arc::new(quiver), grading, normal_cache: Arc::default() }
    }

    /// Builds the algebra of a quiver file. Missing `Z` degrees default to 1.
    pub fn from_spec(spec: &QuiverSpec, group: &Group) -> Result<LeavittAlgebra, LeavittError> {
        let quiver = Quiver::from_spec(spec)?;
        for name in spec.degrees.keys() {
            if quiver.edge_id(name).is_none() {
                return Err(QuiverError::UnknownEdge(name.clone()).into());
            }
        }
        let mut degrees = Vec::with_capacity(quiver.edges().len());
        for e in quiver.edges() {
            let d = match (spec.degrees.get(&e.name), group) {
                (Some(&d), _) => group.check(GroupElement(d))?,
                (None, Group::Integers) => GroupElement(1),
                (None, Group::Finite(_)) => return Err(LeavittError::MissingDegree(e.name.clone())),
            };
            degrees.push(d);
        }
        Ok(LeavittAlgebra::new(quiver, StandardGrading { group: group.clone(), degrees }))
    }

    pub fn builtin(name: &str) -> Result<LeavittAlgebra, LeavittError> {
        let z = Group::Integers;
        match name {
            "two_vertex" => {
                let q = Quiver::new(&["v1", "v2"], &[("f", "v1", "v2")])?;
                Ok(LeavittAlgebra::new(q, StandardGrading { group: z, degrees: vec![GroupElement(1)] }))
            }
            "loop" => {
                let q = Quiver::new(&["v"], &[("x", "v", "v")])?;
                Ok(LeavittAlgebra::new(q, StandardGrading { group: z, degrees: vec![GroupElement(1)] }))
            }
            "discrete" => {
                Ok(LeavittAlgebra::new(Quiver::discrete_infinite(), StandardGrading { group: z, degrees: vec![] }))
            }
            other => Err(LeavittError::UnknownBuiltin(other.to_string())),
        }
    }

    pub const BUILTINS: [&'static str; 3] = ["two_vertex", "loop", "discrete"];

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn grading(&self) -> &StandardGrading {
        &self.grading
    }

    pub fn group(&self) -> &Group {
        &self.grading.group
    }

    pub fn degree_of(&self, m: &Monomial) -> GroupElement {
        self.grading.degree_of(m)
    }

    pub fn monomial(&self, m: Monomial) -> LpaElement {
        LpaElement::from_monomial(&self.quiver, m)
    }

    pub fn vertex(&self, name: &str) -> Option<LpaElement> {
        self.quiver.vertex_id(name).map(LpaElement::vertex)
    }

    pub fn edge(&self, name: &str) -> Option<LpaElement> {
        self.quiver.edge_id(name).map(|e| self.monomial(Monomial::edge(&self.quiver, e)))
    }

    pub fn ghost(&self, name: &str) -> Option<LpaElement> {
        self.quiver.edge_id(name).map(|e| self.monomial(Monomial::ghost_edge(&self.quiver, e)))
    }

    pub fn mul(&self, a: &LpaElement, b: &LpaElement) -> LpaElement {
        a.mul(&self.quiver, b)
    }

    pub fn render(&self, a: &LpaElement) -> String {
        a.render(&self.quiver)
    }

    /// True when bounded enumeration sees every monomial of every component.
    pub fn enumeration_complete(&self, bound: usize) -> bool {
        self.quiver.is_finite() && self.quiver.longest_path().is_some_and(|l| bound >= 2 * l)
    }

    /// Paths of length at most `bound` starting at window vertices, grouped
    /// by range.
    fn paths_by_range(&self, bound: usize) -> BTreeMap<VertexId, Vec<Path>> {
        let q = &self.quiver;
        let mut out: BTreeMap<VertexId, Vec<Path>> = BTreeMap::new();
        let mut layer: Vec<Path> = q.window_vertices(bound).into_iter().map(Path::vertex).collect();
        for len in 0..=bound {
            for p in &layer {
                out.entry(p.range(q)).or_default().push(p.clone());
            }
            if len == bound {
                break;
            }
            layer = layer.iter().flat_map(|p| q.out_edges(p.range(q)).iter().map(move |&e| p.extend(&[e]))).collect();
        }
        out
    }

    fn monomials(&self, bound: usize, normal_only: bool) -> Vec<(GroupElement, Monomial)> {
        let mut out = Vec::new();
        for paths in self.paths_by_range(bound).values() {
            for a in paths {
                for b in paths {
                    if a.len() + b.len() > bound {
                        continue;
                    }
                    let m = Monomial { real: a.clone(), ghost: b.clone() };
                    if normal_only && !m.is_normal(&self.quiver) {
                        continue;
                    }
                    out.push((self.degree_of(&m), m));
                }
            }
        }
        out.sort_by(|(_, x), (_, y)| (x.total_len(), x).cmp(&(y.total_len(), y)));
        out
    }

    /// Every normal monomial within the bound, with its degree.
    pub fn normal_monomials(&self, bound: usize) -> MonomialTable {
        let mut cache = self.normal_cache.lock().expect("cache lock");
        cache.entry(bound).or_insert_with(|| Arc::new(self.monomials(bound, true))).clone()
    }

    /// Normal monomials of degree `g` with `len α + len β <= bound`.
    pub fn homogeneous_basis(&self, g: GroupElement, bound: usize) -> ComponentBasis {
        let basis: Vec<Monomial> =
            self.normal_monomials(bound).iter().filter(|(d, _)| *d == g).map(|(_, m)| m.clone()).collect();
        let complete =
            self.enumeration_complete(bound) || (self.quiver.is_discrete_infinite() && g != self.group().identity());
        ComponentBasis { basis, complete }
    }

    /// Row-reduced span of `{ s t : s ∈ S_g, t ∈ S_h }` within the bound,
    /// together with the products that enlarged it.
    pub fn product_span(&self, g: GroupElement, h: GroupElement, bound: usize) -> (Span<Monomial>, Vec<LpaElement>) {
        let left = self.homogeneous_basis(g, bound).basis;
        let right = self.homogeneous_basis(h, bound).basis;
        let mut span = Span::new();
        let mut gens = Vec::new();
        for s in &left {
            for t in &right {
                let Some(raw) = monomial_mul(s, t) else { continue };
                let p = self.monomial(raw);
                if span.insert(&coords(&p)) {
                    gens.push(p);
                }
            }
        }
        (span, gens)
    }

    /// Paths `α` minimal under the initial-subpath order among those with
    /// some `αβ*` in `S_g S_{g⁻¹}`.
    pub fn mset(&self, g: GroupElement, bound: usize) -> Vec<Path> {
        let ginv = self.group().inv(g);
        let (span, _) = self.product_span(g, ginv, bound);
        if span.dim() == 0 {
            return Vec::new();
        }
        let e = self.group().identity();
        let mut a: Vec<Path> = Vec::new();
        for (d, m) in self.monomials(bound, false) {
            if d != e || a.contains(&m.real) {
                continue;
            }
            if span.contains(&coords(&self.monomial(m.clone()))) {
                a.push(m.real);
            }
        }
        let minimal: Vec<Path> =
            a.iter().filter(|p| !a.iter().any(|r| r != *p && r.is_prefix_of(p))).cloned().collect();
        let mut minimal = minimal;
        minimal.sort();
        minimal
    }

    pub fn mset_elements(&self, g: GroupElement, bound: usize) -> Vec<LpaElement> {
        self.mset(g, bound).into_iter().map(|p| self.monomial(Monomial::projection(&p))).collect()
    }

    /// `ε_g` as the sum of the M-set, checked to be a left unit on `S_g`
    /// and `ε_{g⁻¹}` a right unit, with a stability flag comparing against
    /// the next bound.
    pub fn epsilon_of(&self, g: GroupElement, bound: usize) -> EpsilonReport {
        let mset = self.mset(g, bound);
        let sum = |paths: &[Path]| {
            paths.iter().fold(LpaElement::zero(), |acc, p| acc.add(&self.monomial(Monomial::projection(p))))
        };
        let eps = sum(&mset);
        let eps_inv = sum(&self.mset(self.group().inv(g), bound));
        let stable = self.mset(g, bound + 1) == mset;
        for s in self.homogeneous_basis(g, bound).basis {
            let se = self.monomial(s.clone());
            if self.mul(&eps, &se) != se || self.mul(&se, &eps_inv) != se {
                return EpsilonReport { epsilon: None, mset, counterexample: Some(s), stable };
            }
        }
        EpsilonReport { epsilon: Some(eps), mset, counterexample: None, stable }
    }
}

/// Coordinates of an element in the normal-monomial basis.
pub fn coords(a: &LpaElement) -> SparseVec<Monomial> {
    a.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect()
}

impl Carrier for LeavittAlgebra {
    type Elem = LpaElement;

    fn zero(&self) -> LpaElement {
        LpaElement::zero()
    }
    fn add(&self, a: &LpaElement, b: &LpaElement) -> LpaElement {
        a.add(b)
    }
    fn sub(&self, a: &LpaElement, b: &LpaElement) -> LpaElement {
        a.sub(b)
    }
    fn mul(&self, a: &LpaElement, b: &LpaElement) -> LpaElement {
        a.mul(&self.quiver, b)
    }
    fn is_zero(&self, a: &LpaElement) -> bool {
        a.is_zero()
    }
}
