use num_traits::Zero;

use super::{Component, CosetLaw, DegreeWindow, FamilyLaw, GradedRing};
use crate::groups::{enumerate_window, Coset, Group, GroupElement, Quotient};
use crate::linalg::SparseVec;
use crate::numeric::FinExSeq;
use crate::partial_skew::{render_seq, ShiftLaw, SkewElement, SkewRing};

/// Linear coordinate of a sequence: its default value, or the deviation from
/// the default at one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeqCoord {
    Default,
    At(i64),
}

fn seq_window(bound: usize) -> std::ops::RangeInclusive<i64> {
    -(bound as i64)..=bound as i64
}

impl SkewRing {
    /// Degrees past which every domain follows the certified shift law.
    fn law_radius(&self, law: &ShiftLaw, chi: &FinExSeq) -> i64 {
        law.generic_radius().max(chi.radius() + law.pattern.radius() + 1)
    }
}

impl GradedRing for SkewRing {
    type Coord = (GroupElement, SeqCoord);

    fn group(&self) -> &Group {
        SkewRing::group(self)
    }

    fn describe(&self) -> String {
        format!("partial skew group ring '{}'", self.action().name())
    }

    fn coords(&self, x: &SkewElement) -> SparseVec<(GroupElement, SeqCoord)> {
        let mut out = SparseVec::new();
        for (g, a) in x.terms() {
            let d = a.default_value();
            if !d.is_zero() {
                out.insert((*g, SeqCoord::Default), d.clone());
            }
            for (j, v) in a.exceptions() {
                out.insert((*g, SeqCoord::At(*j)), v - d);
            }
        }
        out
    }

    fn identity(&self) -> Option<SkewElement> {
        Some(self.one())
    }

    fn degree_window(&self, bound: usize) -> DegreeWindow {
        let group = SkewRing::group(self);
        let degrees = enumerate_window(group, bound);
        let exhaustive = group.is_finite()
            || self.action().certificate().is_some_and(|law| {
                let r = law.generic_radius();
                bound as i64 >= r
                    && law.unit(r + 1).is_some_and(|u| u.is_zero())
                    && law.unit(-r - 1).is_some_and(|u| u.is_zero())
            });
        DegreeWindow { degrees, exhaustive }
    }

    fn component(&self, g: GroupElement, bound: usize) -> Component<SkewElement> {
        let u = self.action().unit(g);
        if let Some(support) = u.finite_support() {
            let basis = support.into_iter().map(|j| self.projected_term(&FinExSeq::kronecker(j), g)).collect();
            return Component { basis, complete: true };
        }
        let mut basis: Vec<SkewElement> = seq_window(bound)
            .filter(|&j| !u.at(j).is_zero())
            .map(|j| self.projected_term(&FinExSeq::kronecker(j), g))
            .collect();
        let tail = &u * &FinExSeq::co_indicator(seq_window(bound));
        let complete = tail.is_zero();
        if !complete {
            basis.push(self.projected_term(&tail, g));
        }
        Component { basis, complete }
    }

    fn unit_generators(&self, g: GroupElement, _bound: usize) -> Vec<SkewElement> {
        let e = SkewRing::epsilon(self, g);
        if e.is_zero() {
            Vec::new()
        } else {
            vec![e]
        }
    }

    fn epsilon(&self, g: GroupElement, _bound: usize) -> Option<SkewElement> {
        Some(SkewRing::epsilon(self, g))
    }

    fn epsilon_exact(&self) -> bool {
        true
    }

    fn coset_law(&self, q: &Quotient, c: &Coset, chi: &SkewElement, _bound: usize, complete: bool) -> CosetLaw {
        let group = SkewRing::group(self);
        if complete || group.is_finite() {
            return CosetLaw::Dominated("every degree of the coset lies in the window".into());
        }
        if q.is_trivial() {
            return CosetLaw::Dominated("the coset is a single degree".into());
        }
        let Some((m, r)) = q.residue_class(c) else {
            return CosetLaw::Unknown("no description of the coset".into());
        };
        let Some(law) = self.action().certificate() else {
            return CosetLaw::Unknown("no shift-law certificate for the domains".into());
        };
        let e = group.identity();
        if chi.support().iter().any(|&g| g != e) {
            return CosetLaw::Unknown("candidate is not concentrated in degree e".into());
        }
        let x = chi.coefficient(e);
        let radius = self.law_radius(law, &x);
        let m = m as i64;
        let first_above = |lo: i64| lo + (r - lo).rem_euclid(m);
        let last_below = |hi: i64| hi - (hi - r).rem_euclid(m);
        let mut probes: Vec<i64> = (-radius..=radius).filter(|g| g.rem_euclid(m) == r).collect();
        let generic_pos = first_above(radius + 1);
        let generic_neg = last_below(-radius - 1);
        probes.push(generic_pos);
        probes.push(generic_neg);
        let failing = probes.iter().copied().find(|&g| {
            let u = self.action().unit(GroupElement(g));
            &x * &u != u
        });
        match failing {
            None => CosetLaw::Dominated(format!(
                "χ = {}δ_e lies above 1_g for every g ≡ {r} mod {m}: checked for |g| ≤ {radius} and at the generic \
                 degrees {generic_neg} and {generic_pos}, beyond which the domains are shifts of one pattern",
                render_seq(&x)
            )),
            Some(g) => {
                let units: Vec<FinExSeq> = probes.iter().map(|&h| self.action().unit(GroupElement(h))).collect();
                let all_finite = units.iter().all(|u| u.default_value().is_zero());
                let generic = self.action().unit(GroupElement(generic_pos));
                if all_finite && !generic.is_zero() {
                    CosetLaw::Unbounded(format!(
                        "every 1_g with g ≡ {r} mod {m} has finite support while the shifted copies 1_{generic_pos}, \
                         1_{}, ... are nonzero at ever larger positions; an element of S_C S_C⁻¹ in degree e has \
                         finite support, so none lies above all of them (first uncovered degree {g})",
                        generic_pos + m
                    ))
                } else {
                    CosetLaw::Unknown(format!("χ does not dominate 1_{g}"))
                }
            }
        }
    }

    fn family_law(&self, bound: usize) -> FamilyLaw<SkewElement> {
        let group = SkewRing::group(self);
        let mut degrees = enumerate_window(group, bound);
        if !group.is_finite() {
            let Some(law) = self.action().certificate() else {
                return FamilyLaw::Unknown("no shift-law certificate for the domains".into());
            };
            let r = law.generic_radius();
            if !law.mask.default_value().is_zero() && !law.pattern.exceptions().is_empty() {
                let a = self.action().unit(GroupElement(r + 1));
                let b = self.action().unit(GroupElement(r + 2));
                return FamilyLaw::Infinite(format!(
                    "for |g| > {r} the unit 1_g carries the pattern's exceptions shifted by g, so the ε_g are pairwise \
                     distinct; e.g. ε_{} = ({})δ_e and ε_{} = ({})δ_e",
                    r + 1,
                    render_seq(&a),
                    r + 2,
                    render_seq(&b)
                ));
            }
            let reach = (bound as i64).max(r + 1);
            degrees = (-reach..=reach).map(GroupElement).collect();
        }
        let mut family: Vec<SkewElement> = Vec::new();
        for g in degrees {
            let e = SkewRing::epsilon(self, g);
            if !e.is_zero() && !family.contains(&e) {
                family.push(e);
            }
        }
        FamilyLaw::Finite(family)
    }

    /// `s = Σ 1_{g_i}δ_{g_i}` and `t = Σ 1_{g_i⁻¹}δ_{g_i⁻¹}` over degrees
    /// with nonzero, pairwise orthogonal domains.
    fn crossed_candidate(&self, degrees: &[GroupElement]) -> Option<(SkewElement, SkewElement)> {
        let group = SkewRing::group(self);
        let mut chosen: Vec<(GroupElement, FinExSeq)> = Vec::new();
        for &g in degrees {
            let u = self.action().unit(g);
            if u.is_zero() || chosen.iter().any(|(_, v)| !(&u * v).is_zero()) {
                continue;
            }
            chosen.push((g, u));
        }
        let mut s = SkewElement::zero();
        let mut t = SkewElement::zero();
        for (g, u) in &chosen {
            let gi = group.inv(*g);
            s = s.add(&self.projected_term(u, *g));
            t = t.add(&self.projected_term(&self.action().unit(gi), gi));
        }
        Some((s, t))
    }

    fn render(&self, x: &SkewElement) -> String {
        SkewRing::render(self, x)
    }
}
