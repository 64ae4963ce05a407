use super::{Component, CosetLaw, DegreeWindow, FamilyLaw, GradedRing};
use crate::groups::{enumerate_window, Coset, Group, GroupElement, Quotient};
use crate::leavitt::{coords, LeavittAlgebra, LpaElement, Monomial};
use crate::linalg::SparseVec;

impl GradedRing for LeavittAlgebra {
    type Coord = Monomial;

    fn group(&self) -> &Group {
        LeavittAlgebra::group(self)
    }

    fn describe(&self) -> String {
        let q = self.quiver();
        if q.is_discrete_infinite() {
            "Leavitt path algebra of the discrete quiver on countably many vertices".into()
        } else {
            let plural = |n: usize, word: &str| format!("{n} {word}{}", if n == 1 { "" } else { "s" });
            format!(
                "Leavitt path algebra of a quiver with {} and {}",
                plural(q.vertex_count().unwrap_or(0), "vertex").replace("vertexs", "vertices"),
                plural(q.edges().len(), "edge")
            )
        }
    }

    fn coords(&self, x: &LpaElement) -> SparseVec<Monomial> {
        coords(x)
    }

    fn identity(&self) -> Option<LpaElement> {
        let n = self.quiver().vertex_count()?;
        Some((0..n).fold(LpaElement::zero(), |acc, v| acc.add(&LpaElement::vertex(v))))
    }

    fn degree_window(&self, bound: usize) -> DegreeWindow {
        let group = LeavittAlgebra::group(self);
        let degrees = enumerate_window(group, bound);
        let exhaustive = group.is_finite()
            || self.quiver().is_discrete_infinite()
            || (self.enumeration_complete(bound)
                && self.normal_monomials(bound).iter().all(|(d, _)| degrees.contains(d)));
        DegreeWindow { degrees, exhaustive }
    }

    fn component(&self, g: GroupElement, bound: usize) -> Component<LpaElement> {
        let b = self.homogeneous_basis(g, bound);
        Component { basis: b.basis.into_iter().map(|m| self.monomial(m)).collect(), complete: b.complete }
    }

    fn unit_generators(&self, g: GroupElement, bound: usize) -> Vec<LpaElement> {
        self.mset_elements(g, bound)
    }

    fn epsilon(&self, g: GroupElement, bound: usize) -> Option<LpaElement> {
        self.epsilon_of(g, bound).epsilon
    }

    fn epsilon_exact(&self) -> bool {
        false
    }

    fn coset_law(&self, q: &Quotient, c: &Coset, _chi: &LpaElement, _bound: usize, complete: bool) -> CosetLaw {
        if complete {
            return CosetLaw::Dominated("every component of the coset is enumerated".into());
        }
        if self.quiver().is_discrete_infinite() {
            if q.contains(c, LeavittAlgebra::group(self).identity()) {
                return CosetLaw::Unbounded(
                    "the degree-e unit generators are the vertices v1, v2, ...; elements of S_e are finite sums \
                     of vertices, so no idempotent of S_e lies above all of them"
                        .into(),
                );
            }
            return CosetLaw::Dominated("all components of the coset vanish".into());
        }
        CosetLaw::Unknown("the quiver has cycles; components are infinite-dimensional".into())
    }

    fn family_law(&self, bound: usize) -> FamilyLaw<LpaElement> {
        let window = GradedRing::degree_window(self, bound);
        if !(window.exhaustive && self.enumeration_complete(bound)) {
            return FamilyLaw::Unknown("components are not enumerated completely".into());
        }
        let mut family: Vec<LpaElement> = Vec::new();
        for g in window.degrees {
            match self.epsilon(g, bound) {
                Some(e) if !e.is_zero() => {
                    if !family.contains(&e) {
                        family.push(e);
                    }
                }
                Some(_) => {}
                None => return FamilyLaw::Unknown(format!("epsilon of degree {} not verified", g.0)),
            }
        }
        FamilyLaw::Finite(family)
    }

    fn adjoint(&self, x: &LpaElement) -> Option<LpaElement> {
        Some(x.involution(self.quiver()))
    }

    fn render(&self, x: &LpaElement) -> String {
        LeavittAlgebra::render(self, x)
    }
}
