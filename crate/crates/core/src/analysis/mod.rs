//! Graded-ring classification.
//!
//! Both ring engines expose a bounded view of their homogeneous components
//! through [`GradedRing`]. [`InducedGrading`] regroups those components over
//! the cosets of a normal subgroup (the trivial subgroup gives back the
//! original grading) and runs the hierarchy checks. Every check returns a
//! [`Verdict`](crate::verdict::Verdict): `Holds` only with a finiteness
//! source (finite quotient with complete enumeration, or a certificate),
//! `Fails` only with a replayable witness, `UpToBound` otherwise.

mod checks;
mod classify;
mod induced;
mod lpa;
mod skew;

use std::fmt::Debug;

use thiserror::Error;

pub use checks::{CosetUnit, CrossedWitness, EpsilonOutcome, EpsilonWitness, UpperBoundReport};
pub use classify::{canonical_check, classify, reconcile, Classification, HierarchyReport, CHECK_NAMES};
pub use induced::{CosetBasis, InducedGrading};
pub use skew::SeqCoord;

use crate::groups::{Coset, Group, GroupElement, GroupError, Quotient};
use crate::idempotents::Carrier;
use crate::linalg::SparseVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the ring exposes no epsilon family")]
    MissingEpsilonFamily,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
}

/// Degrees considered at a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeWindow {
    pub degrees: Vec<GroupElement>,
    /// Every degree with a nonzero component is listed.
    pub exhaustive: bool,
}

/// A spanning set of a homogeneous component, flagged when it is a basis of
/// the whole component.
#[derive(Debug, Clone, PartialEq)]
pub struct Component<E> {
    pub basis: Vec<E>,
    pub complete: bool,
}

/// Whether a candidate identity `χ` of `S_C S_{C⁻¹}` dominates every `ε_g`
/// with `g ∈ C`, including degrees outside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetLaw {
    Dominated(String),
    /// No idempotent of `S_C S_{C⁻¹}` can dominate the family.
    Unbounded(String),
    Unknown(String),
}

/// The family `{ε_g | g ∈ G}` of a ring.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyLaw<E> {
    /// All nonzero `ε_g`.
    Finite(Vec<E>),
    /// Infinitely many distinct `ε_g`.
    Infinite(String),
    Unknown(String),
}

/// Bounded access to a group-graded ring.
pub trait GradedRing: Carrier {
    /// Linear coordinates of ring elements; homogeneous elements of distinct
    /// degrees have disjoint coordinates.
    type Coord: Ord + Clone + Debug;

    fn group(&self) -> &Group;
    fn describe(&self) -> String;
    fn coords(&self, x: &Self::Elem) -> SparseVec<Self::Coord>;
    /// The multiplicative identity, when the ring has one.
    fn identity(&self) -> Option<Self::Elem>;
    fn degree_window(&self, bound: usize) -> DegreeWindow;
    fn component(&self, g: GroupElement, bound: usize) -> Component<Self::Elem>;
    /// Commuting idempotents of `S_g S_{g⁻¹}` whose join is `ε_g`.
    fn unit_generators(&self, g: GroupElement, bound: usize) -> Vec<Self::Elem>;
    /// `ε_g`, when it was constructed and verified at the bound.
    fn epsilon(&self, g: GroupElement, bound: usize) -> Option<Self::Elem>;
    /// `ε_g` is the identity of `S_g S_{g⁻¹}` for every `g`, not only on
    /// the window.
    fn epsilon_exact(&self) -> bool;
    fn coset_law(&self, q: &Quotient, c: &Coset, chi: &Self::Elem, bound: usize, complete: bool) -> CosetLaw;
    fn family_law(&self, bound: usize) -> FamilyLaw<Self::Elem>;
    fn render(&self, x: &Self::Elem) -> String;

    fn has_epsilon_family(&self) -> bool {
        true
    }

    /// An involution with `(xy)* = y*x*` mapping `S_g` onto `S_{g⁻¹}`.
    fn adjoint(&self, _x: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// A structural guess `(s, t)` for an epsilon-invertible pair of the
    /// component spanned by `degrees`.
    fn crossed_candidate(&self, _degrees: &[GroupElement]) -> Option<(Self::Elem, Self::Elem)> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::NormalSubgroup;
    use crate::leavitt::LeavittAlgebra;
    use crate::partial_skew::SkewRing;
    use crate::verdict::Status;

    fn mod_n(g: &Group, n: u64) -> Quotient {
        Quotient::new(g, NormalSubgroup::Multiples(n)).unwrap()
    }

    #[test]
    fn two_vertex_parent() {
        let a = LeavittAlgebra::builtin("two_vertex").unwrap();
        let gr = InducedGrading::parent(&a, 4);
        let strong = gr.check_strong();
        assert_eq!(strong.status, Status::Fails, "{strong:?}");
        assert!(strong.witness.as_deref().unwrap().starts_with("v2 "), "{strong:?}");
        let (eps, w) = gr.check_epsilon_strong().unwrap();
        assert_eq!(eps.status, Status::Holds, "{eps:?}");
        let find = |k: i64| w.iter().find(|x| x.coset.key == k).map(|x| a.render(&x.candidate)).unwrap();
        assert_eq!(find(1), "v1");
        assert_eq!(find(-1), "v2");
        assert_eq!(find(0), "v1 + v2");
        assert_eq!(gr.check_epsilon_finite().unwrap().status, Status::Holds);
        let report = gr.hierarchy().unwrap();
        assert!(report.defects.is_empty(), "{report:?}");
    }

    #[test]
    fn two_vertex_induced() {
        let a = LeavittAlgebra::builtin("two_vertex").unwrap();
        let gr = InducedGrading::new(&a, mod_n(a.group(), 2), 4).unwrap();
        let (eps, _) = gr.check_epsilon_strong().unwrap();
        assert_eq!(eps.status, Status::Holds, "{eps:?}");
        let rep = gr.hierarchy().unwrap();
        assert!(rep.defects.is_empty(), "{rep:?}");
        let crossed = gr.epsilon_crossed_witness().unwrap();
        assert!(crossed.iter().all(|w| w.pair.is_some()), "{crossed:?}");
    }

    #[test]
    fn discrete_fails() {
        let a = LeavittAlgebra::builtin("discrete").unwrap();
        let gr = InducedGrading::parent(&a, 5);
        let (eps, w) = gr.check_epsilon_strong().unwrap();
        assert_eq!(eps.status, Status::Fails, "{eps:?}");
        let zero = w.iter().find(|x| x.coset.key == 0).unwrap();
        assert_eq!(zero.chain.len(), 5);
        assert_eq!(gr.check_virtually().status, Status::UpToBound);
        assert_eq!(gr.check_strong().status, Status::Fails);
        let rep = gr.hierarchy().unwrap();
        assert!(rep.defects.is_empty(), "{rep:?}");
    }

    #[test]
    fn reflection() {
        let r = SkewRing::builtin("reflection").unwrap();
        let c = classify(&r, Some(mod_n(r.group(), 2)), 8).unwrap();
        assert!(c.defects.is_empty(), "{:?}", c.defects);
        assert_eq!(c.parent.status("epsilon_strong"), Some(Status::Holds), "{c:#?}");
        assert_eq!(c.parent.status("epsilon_finite"), Some(Status::Fails));
        let ind = c.induced.unwrap();
        assert_eq!(ind.status("epsilon_strong"), Some(Status::Fails), "{ind:#?}");
        assert_eq!(ind.status("essentially_epsilon_strong"), Some(Status::UpToBound), "{ind:#?}");
        assert_eq!(ind.status("virtually_epsilon_strong"), Some(Status::UpToBound), "{ind:#?}");
    }

    #[test]
    fn shift() {
        let r = SkewRing::builtin("shift").unwrap();
        let gr = InducedGrading::new(&r, mod_n(r.group(), 2), 8).unwrap();
        assert_eq!(gr.check_strong().status, Status::Holds);
        let (eps, _) = gr.check_epsilon_strong().unwrap();
        assert_eq!(eps.status, Status::Holds, "{eps:?}");
        let v = gr.check_virtually();
        assert_eq!(v.status, Status::Holds, "{v:?}");
        assert!(gr.greatest_idempotent_condition().unwrap().agrees());
    }

    #[test]
    fn cyclic_four() {
        let r = SkewRing::builtin("cyclic4").unwrap();
        let q =
            Quotient::new(r.group(), NormalSubgroup::members(r.group(), &[GroupElement(0), GroupElement(2)]).unwrap())
                .unwrap();
        let gr = InducedGrading::new(&r, q, 4).unwrap();
        let w = gr.epsilon_crossed_witness().unwrap();
        let one = w.iter().find(|x| x.coset.key == 1).unwrap();
        let (s, t) = one.pair.clone().unwrap();
        assert_eq!(r.render(&s), "e_2δ_1 + e_1δ_3");
        assert_eq!(s, t);
        assert_eq!(gr.check_epsilon_crossed().unwrap().status, Status::Holds);
    }
}
