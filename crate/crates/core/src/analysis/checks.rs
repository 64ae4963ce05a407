use std::collections::BTreeMap;

use super::{AnalysisError, CosetLaw, FamilyLaw, GradedRing, InducedGrading};
use crate::groups::{Coset, GroupElement};
use crate::idempotents::{
    are_orthogonal, greatest_element, idem_leq, join, join_closure_capped, maximal_elements, tominaga_left_unit,
    tominaga_right_unit, IdemSet,
};
use crate::linalg::Span;
use crate::verdict::{Status, Verdict};

const CLOSURE_CAP: usize = 256;
const PRODUCT_SAMPLE: usize = 400;
const SEARCH_BASIS: usize = 10;
const SEARCH_TERMS: usize = 3;

/// The epsilon-strong verdict with one witness per coset.
pub type EpsilonOutcome<E> = (Verdict, Vec<EpsilonWitness<E>>);

/// Result of the join-chain analysis of one coset.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonWitness<E> {
    pub coset: Coset,
    /// Candidate identity `ε_C` of `S_C S_{C⁻¹}`: the join of the chain.
    pub candidate: E,
    /// Distinct values taken by the join chain, in order.
    pub chain: Vec<E>,
    pub law: CosetLaw,
    /// How membership of the candidate in `S_C S_{C⁻¹}` was established.
    pub membership: String,
    /// Window basis elements fixed on the correct side by the candidate.
    pub absorbed: usize,
    pub absorption_failures: Vec<String>,
    pub status: Status,
}

/// Per-coset result of the upper-bound search over the join-closure.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetUnit<E> {
    pub coset: Coset,
    pub chi: Option<E>,
    pub closure_size: usize,
    pub closure_complete: bool,
    pub status: Status,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpperBoundReport<E> {
    pub cosets: Vec<CosetUnit<E>>,
    pub discrepancies: Vec<String>,
}

impl<E> UpperBoundReport<E> {
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// A pair `s ∈ S_C`, `t ∈ S_{C⁻¹}` with `st = ε_C` and `ts = ε_{C⁻¹}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedWitness<E> {
    pub coset: Coset,
    pub epsilon: E,
    pub epsilon_inverse: E,
    pub pair: Option<(E, E)>,
    pub method: String,
}

fn combine(parts: &[Status]) -> Status {
    if parts.contains(&Status::Fails) {
        Status::Fails
    } else if parts.iter().all(|s| *s == Status::Holds) {
        Status::Holds
    } else {
        Status::UpToBound
    }
}

impl<'a, R: GradedRing> InducedGrading<'a, R> {
    fn show_list(&self, xs: &[R::Elem]) -> String {
        let shown: Vec<String> = xs.iter().take(6).map(|x| self.render(x)).collect();
        if xs.len() > 6 {
            format!("{{{}, … ({} total)}}", shown.join(", "), xs.len())
        } else {
            format!("{{{}}}", shown.join(", "))
        }
    }

    /// `S_C` and `S_{C⁻¹}` are both enumerated completely.
    fn pair_complete(&self, c: &Coset) -> bool {
        self.basis(c).complete && self.basis(&self.inverse(c)).complete
    }

    /// Cosets outside the window carry nothing that could change a verdict.
    fn cosets_covered(&self) -> bool {
        self.all_cosets_seen() || self.window().exhaustive
    }

    fn finish(&self, check: &str, parts: &[Status], holds: String, bounded: String, fails: Option<String>) -> Verdict {
        match combine(parts) {
            Status::Fails => Verdict::fails(check, self.bound(), fails.unwrap_or_default()),
            Status::Holds if self.cosets_covered() => Verdict::holds(check, self.bound(), holds),
            _ => Verdict::up_to_bound(check, self.bound(), bounded),
        }
    }

    fn require_family(&self) -> Result<(), AnalysisError> {
        if self.ring().has_epsilon_family() {
            Ok(())
        } else {
            Err(AnalysisError::MissingEpsilonFamily)
        }
    }

    /// `S_C S_D = S_{CD}` for all cosets.
    pub fn check_strong(&self) -> Verdict {
        const NAME: &str = "strong";
        let ring = self.ring();
        let e = self.group().identity();
        let target = ring.component(e, self.bound());
        let identity = ring.identity();
        let mut all_unit = identity.is_some();
        for c in self.cosets() {
            let span = self.unit_span(&c);
            if identity.as_ref().is_some_and(|one| span.contains(&ring.coords(one))) {
                continue;
            }
            all_unit = false;
            let uncovered = target.basis.iter().find(|x| !span.contains(&ring.coords(x)));
            if let Some(x) = uncovered {
                if self.pair_complete(&c) {
                    let ci = self.inverse(&c);
                    return Verdict::fails(
                        NAME,
                        self.bound(),
                        format!("{} in degree e is not in span(S_{c}·S_{ci})", self.render(x)),
                    );
                }
            }
        }
        if all_unit {
            let text = "the identity lies in span(S_C·S_C⁻¹) for every coset C, hence S_CS_D ⊇ S_CS_C⁻¹S_CD = S_CD";
            return if self.all_cosets_seen() {
                Verdict::holds(NAME, self.bound(), text)
            } else {
                Verdict::up_to_bound(NAME, self.bound(), format!("{text} (checked on {} cosets)", self.cosets().len()))
            };
        }
        if identity.is_none() {
            return self.strong_by_pairs();
        }
        Verdict::up_to_bound(NAME, self.bound(), "no coset separated the identity from S_C·S_C⁻¹ on complete data")
    }

    fn strong_by_pairs(&self) -> Verdict {
        const NAME: &str = "strong";
        let cosets = self.cosets();
        let mut exact = true;
        for c in &cosets {
            for d in &cosets {
                let cd = self.quotient().mul(c, d);
                for k in self.degrees_in(&cd) {
                    let span = self.product_span(c, d, k);
                    let comp = self.ring().component(k, self.bound());
                    if let Some(x) = comp.basis.iter().find(|x| !span.contains(&self.ring().coords(x))) {
                        if self.basis(c).complete && self.basis(d).complete {
                            return Verdict::fails(
                                NAME,
                                self.bound(),
                                format!("{} in degree {} is not in span(S_{c}·S_{d})", self.render(x), k.0),
                            );
                        }
                        exact = false;
                    }
                    exact &= comp.complete;
                }
            }
        }
        if exact && self.cosets_covered() {
            Verdict::holds(NAME, self.bound(), "S_CD ⊆ span(S_C·S_D) for every pair of cosets")
        } else {
            Verdict::up_to_bound(NAME, self.bound(), "S_CD ⊆ span(S_C·S_D) for every pair of window cosets")
        }
    }

    /// `s ∈ span{x y z : x ∈ S_C, y ∈ S_{C⁻¹}, z ∈ S_C}` for a homogeneous `s`.
    fn in_triple_span(&self, c: &Coset, g: GroupElement, s: &R::Elem) -> bool {
        let ring = self.ring();
        let grp = self.group();
        let left = self.basis(c);
        let mid = self.basis(&self.inverse(c));
        let mut span: Span<R::Coord> = Span::new();
        for (a, x) in &left.elems {
            for (b, y) in &mid.elems {
                let xy = ring.mul(x, y);
                if ring.is_zero(&xy) {
                    continue;
                }
                let ab = grp.op(*a, *b);
                for (d, z) in &left.elems {
                    if grp.op(ab, *d) == g {
                        span.insert(&ring.coords(&ring.mul(&xy, z)));
                    }
                }
            }
        }
        span.contains(&ring.coords(s))
    }

    /// `S_C ⊆ S_C S_{C⁻¹} S_C` for every coset.
    pub fn check_symmetric(&self) -> Verdict {
        const NAME: &str = "symmetric";
        let ring = self.ring();
        let mut parts = Vec::new();
        let mut via_units = 0usize;
        let mut via_span = 0usize;
        for c in self.cosets() {
            let basis = self.basis(&c);
            let mut ok = true;
            for (g, s) in &basis.elems {
                if self.epsilon(*g).is_some_and(|u| ring.mul(&u, s) == *s) {
                    via_units += 1;
                } else if self.in_triple_span(&c, *g, s) {
                    via_span += 1;
                } else if self.pair_complete(&c) {
                    return Verdict::fails(
                        NAME,
                        self.bound(),
                        format!("{} is not in span(S_{c}·S_{}·S_{c})", self.render(s), self.inverse(&c)),
                    );
                } else {
                    ok = false;
                }
            }
            parts.push(if ok && basis.complete { Status::Holds } else { Status::UpToBound });
        }
        let summary = format!(
            "every window basis element s of S_C lies in S_C·S_C⁻¹·S_C ({via_units} as s = ε_g·s with ε_g ∈ S_gS_g⁻¹, \
             {via_span} by row reduction)"
        );
        self.finish(NAME, &parts, summary.clone(), summary, None)
    }

    /// Join chain of the unit generators of a coset and its verdict.
    pub fn coset_epsilon(&self, c: &Coset) -> EpsilonWitness<R::Elem> {
        let ring = self.ring();
        let mut chi = ring.zero();
        let mut chain: Vec<R::Elem> = Vec::new();
        let mut commuting = true;
        for (_, x) in self.coset_generators(c) {
            match join(ring, &chi, &x) {
                Ok(next) => {
                    if next != chi {
                        chain.push(next.clone());
                    }
                    chi = next;
                }
                Err(_) => commuting = false,
            }
        }
        let complete = self.pair_complete(c);
        let law = if commuting {
            ring.coset_law(self.quotient(), c, &chi, self.bound(), complete)
        } else {
            CosetLaw::Unknown("the unit generators do not commute".into())
        };
        let membership = if self.in_unit_span(c, &chi) {
            "row reduction places the candidate in span(S_C·S_C⁻¹)".to_string()
        } else {
            "the candidate is a join of idempotents of S_gS_g⁻¹ ⊆ S_C·S_C⁻¹, a ring closed under joins".to_string()
        };
        let mut absorbed = 0;
        let mut failures = Vec::new();
        for (_, s) in &self.basis(c).elems {
            if ring.mul(&chi, s) == *s {
                absorbed += 1;
            } else {
                failures.push(format!("χ·{} ≠ {}", self.render(s), self.render(s)));
            }
        }
        for (_, t) in &self.basis(&self.inverse(c)).elems {
            if ring.mul(t, &chi) == *t {
                absorbed += 1;
            } else {
                failures.push(format!("{}·χ ≠ {}", self.render(t), self.render(t)));
            }
        }
        let status = match &law {
            CosetLaw::Dominated(_) if failures.is_empty() && (ring.epsilon_exact() || complete) => Status::Holds,
            CosetLaw::Unbounded(_) => Status::Fails,
            _ => Status::UpToBound,
        };
        EpsilonWitness {
            coset: *c,
            candidate: chi,
            chain,
            law,
            membership,
            absorbed,
            absorption_failures: failures,
            status,
        }
    }

    fn chain_trace(&self, w: &EpsilonWitness<R::Elem>) -> String {
        let shown: Vec<String> = w.chain.iter().take(4).map(|x| self.render(x)).collect();
        let more = if w.chain.len() > 4 { ", …" } else { "" };
        format!("{}{more}", shown.join(" < "))
    }

    /// Each `S_C S_{C⁻¹}` is unital.
    pub fn check_epsilon_strong(&self) -> Result<EpsilonOutcome<R::Elem>, AnalysisError> {
        const NAME: &str = "epsilon_strong";
        self.require_family()?;
        let witnesses: Vec<EpsilonWitness<R::Elem>> = self.cosets().iter().map(|c| self.coset_epsilon(c)).collect();
        let parts: Vec<Status> = witnesses.iter().map(|w| w.status).collect();
        let bound = self.bound();
        if let Some(w) = witnesses.iter().find(|w| w.status == Status::Fails) {
            let increments_orthogonal = w.chain.windows(2).all(|p| {
                let ring = self.ring();
                let inc = ring.sub(&p[1], &p[0]);
                are_orthogonal(ring, &inc, &p[0])
            });
            let CosetLaw::Unbounded(why) = &w.law else { unreachable!("Fails comes from an unbounded law") };
            let witness = format!(
                "coset {}: join chain {} is strictly increasing{}; {why}",
                w.coset,
                self.chain_trace(w),
                if increments_orthogonal { " with pairwise orthogonal increments" } else { "" }
            );
            return Ok((Verdict::fails(NAME, bound, witness), witnesses));
        }
        let units: Vec<String> = witnesses
            .iter()
            .filter(|w| !self.ring().is_zero(&w.candidate))
            .take(8)
            .map(|w| format!("ε_{} = {}", w.coset, self.render(&w.candidate)))
            .collect();
        let summary = format!("{}{}", units.join(", "), if witnesses.len() > 8 { ", …" } else { "" });
        let all_holds = combine(&parts) == Status::Holds;
        let singleton_certificate = self.is_parent() && self.ring().epsilon_exact();
        let verdict = if all_holds && (self.cosets_covered() || singleton_certificate) {
            let reason = if singleton_certificate && !self.cosets_covered() {
                "ε_g is the identity of S_gS_g⁻¹ for every g"
            } else {
                "every coset has a verified identity of S_C·S_C⁻¹"
            };
            Verdict::holds(NAME, bound, format!("{reason}: {summary}"))
        } else {
            Verdict::up_to_bound(NAME, bound, format!("identities found on the window: {summary}"))
        };
        Ok((verdict, witnesses))
    }

    /// Upper bounds of the join-closure of each coset's unit generators,
    /// compared against [`InducedGrading::check_epsilon_strong`].
    pub fn greatest_idempotent_condition(&self) -> Result<UpperBoundReport<R::Elem>, AnalysisError> {
        self.require_family()?;
        let ring = self.ring();
        let mut units = Vec::new();
        for c in self.cosets() {
            let gens: Vec<R::Elem> = self.coset_generators(&c).into_iter().map(|(_, x)| x).collect();
            let unit = match IdemSet::new(ring, gens.clone()) {
                Err(e) => CosetUnit {
                    coset: c,
                    chi: None,
                    closure_size: 0,
                    closure_complete: false,
                    status: Status::UpToBound,
                    note: format!("generators rejected: {e}"),
                },
                Ok(set) => {
                    let (closure, closure_complete) =
                        join_closure_capped(ring, &set, CLOSURE_CAP).expect("generators commute");
                    let chi = if closure_complete {
                        greatest_element(ring, &closure).expect("commuting").map(|g| g.element)
                    } else {
                        let top = gens.iter().fold(ring.zero(), |acc, x| join(ring, &acc, x).expect("commuting"));
                        Some(top)
                    };
                    let chi = chi.unwrap_or_else(|| ring.zero());
                    let complete = self.pair_complete(&c);
                    let law = ring.coset_law(self.quotient(), &c, &chi, self.bound(), complete);
                    let (status, note) = match law {
                        CosetLaw::Dominated(why) if ring.epsilon_exact() || complete => (Status::Holds, why),
                        CosetLaw::Dominated(why) => (Status::UpToBound, why),
                        CosetLaw::Unbounded(why) => (Status::Fails, why),
                        CosetLaw::Unknown(why) => (Status::UpToBound, why),
                    };
                    let status_chi = (status != Status::Fails).then_some(chi);
                    CosetUnit { coset: c, chi: status_chi, closure_size: closure.len(), closure_complete, status, note }
                }
            };
            units.push(unit);
        }
        let (_, witnesses) = self.check_epsilon_strong()?;
        let by_coset: BTreeMap<Coset, Status> = witnesses.iter().map(|w| (w.coset, w.status)).collect();
        let mut discrepancies = Vec::new();
        for u in &units {
            let other = by_coset.get(&u.coset).copied();
            if other != Some(u.status) {
                discrepancies.push(format!(
                    "coset {}: upper-bound search gives {}, join chain gives {}",
                    u.coset,
                    u.status,
                    other.map(|s| s.to_string()).unwrap_or_else(|| "nothing".into())
                ));
            }
        }
        Ok(UpperBoundReport { cosets: units, discrepancies })
    }

    /// Per-element one-sided units in `S_C S_{C⁻¹}` combined into a common
    /// left unit and a common right unit per coset.
    pub fn check_nearly(&self) -> Verdict {
        const NAME: &str = "nearly_epsilon_strong";
        let ring = self.ring();
        let grp = self.group();
        let mut parts = Vec::new();
        let mut combined = 0usize;
        for c in self.cosets() {
            let basis = self.basis(&c);
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut ok = true;
            for (g, s) in &basis.elems {
                let l = self.epsilon(*g).filter(|u| ring.mul(u, s) == *s);
                let r = self.epsilon(grp.inv(*g)).filter(|u| ring.mul(s, u) == *s);
                match (l, r) {
                    (Some(l), Some(r)) => {
                        left.push((l, s.clone()));
                        right.push((r, s.clone()));
                    }
                    _ => {
                        if !self.s_unital_by_span(&c, s) {
                            if self.pair_complete(&c) {
                                return Verdict::fails(
                                    NAME,
                                    self.bound(),
                                    format!(
                                        "{} is not in (S_{c}·S_{})·{} ∩ {}·(S_{}·S_{c})",
                                        self.render(s),
                                        self.inverse(&c),
                                        self.render(s),
                                        self.render(s),
                                        self.inverse(&c)
                                    ),
                                );
                            }
                            ok = false;
                        }
                    }
                }
            }
            let lu = tominaga_left_unit(ring, &left);
            let ru = tominaga_right_unit(ring, &right);
            if let (Ok(lu), Ok(ru)) = (lu, ru) {
                if left.iter().all(|(_, s)| ring.mul(&lu, s) == *s) && right.iter().all(|(_, s)| ring.mul(s, &ru) == *s)
                {
                    combined += 1;
                }
            }
            parts.push(if ok && basis.complete { Status::Holds } else { Status::UpToBound });
        }
        let summary = format!(
            "every window basis element s of S_C satisfies ε_g·s = s = s·ε_g⁻¹; common one-sided units built on \
             {combined} of {} cosets",
            parts.len()
        );
        self.finish(NAME, &parts, summary.clone(), summary, None)
    }

    /// `s ∈ span{p s}` and `s ∈ span{s q}` for products `p` of
    /// `S_C S_{C⁻¹}` and `q` of `S_{C⁻¹} S_C`.
    fn s_unital_by_span(&self, c: &Coset, s: &R::Elem) -> bool {
        let ring = self.ring();
        let a = self.basis(c);
        let b = self.basis(&self.inverse(c));
        let mut left: Span<R::Coord> = Span::new();
        let mut right: Span<R::Coord> = Span::new();
        for (_, x) in &a.elems {
            for (_, y) in &b.elems {
                left.insert(&ring.coords(&ring.mul(&ring.mul(x, y), s)));
                right.insert(&ring.coords(&ring.mul(s, &ring.mul(y, x))));
            }
        }
        let v = ring.coords(s);
        left.contains(&v) && right.contains(&v)
    }

    /// Products of `S_C S_{C⁻¹}` are fixed on both sides by joins of the
    /// unit generators.
    pub fn check_essentially(&self) -> Verdict {
        const NAME: &str = "essentially_epsilon_strong";
        let ring = self.ring();
        let grp = self.group();
        let mut parts = Vec::new();
        let mut checked = 0usize;
        for c in self.cosets() {
            let ci = self.inverse(&c);
            let a = self.basis(&c);
            let b = self.basis(&ci);
            let units: Vec<R::Elem> = self.degrees_in(&c).into_iter().filter_map(|g| self.epsilon(g)).collect();
            let commuting = units.iter().enumerate().all(|(i, x)| units[..i].iter().all(|y| ring.commute(x, y)));
            let mut ok = commuting;
            let mut done = 0;
            'outer: for (g, s) in &a.elems {
                for (h, t) in &b.elems {
                    if done >= PRODUCT_SAMPLE {
                        break 'outer;
                    }
                    let p = ring.mul(s, t);
                    if ring.is_zero(&p) {
                        continue;
                    }
                    done += 1;
                    let fixed = match (self.epsilon(*g), self.epsilon(grp.inv(*h))) {
                        (Some(u), Some(w)) if commuting => {
                            join(ring, &u, &w).is_ok_and(|j| ring.mul(&j, &p) == p && ring.mul(&p, &j) == p)
                        }
                        _ => false,
                    };
                    if !fixed {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            checked += done;
            if !ok && !self.closure_fixes_products(&c) {
                if self.pair_complete(&c) && self.closure_is_finite(&c) {
                    return Verdict::fails(
                        NAME,
                        self.bound(),
                        format!("no join of unit generators of {c} fixes every product of S_{c}·S_{ci}"),
                    );
                }
                parts.push(Status::UpToBound);
                continue;
            }
            parts.push(if self.pair_complete(&c) { Status::Holds } else { Status::UpToBound });
        }
        let summary = format!(
            "{checked} products s·t (s ∈ S_g, t ∈ S_h⁻¹) are fixed on both sides by ε_g ∨ ε_h from the join-closure of \
             the coset's ε family"
        );
        self.finish(NAME, &parts, summary.clone(), summary, None)
    }

    fn closure_is_finite(&self, c: &Coset) -> bool {
        let gens: Vec<R::Elem> = self.coset_generators(c).into_iter().map(|(_, x)| x).collect();
        IdemSet::new(self.ring(), gens)
            .ok()
            .and_then(|set| join_closure_capped(self.ring(), &set, CLOSURE_CAP).ok())
            .is_some_and(|(_, complete)| complete)
    }

    /// Searches the capped join-closure for a member fixing each product.
    fn closure_fixes_products(&self, c: &Coset) -> bool {
        let ring = self.ring();
        let gens: Vec<R::Elem> = self.coset_generators(c).into_iter().map(|(_, x)| x).collect();
        let Ok(set) = IdemSet::new(ring, gens) else { return false };
        let Ok((closure, _)) = join_closure_capped(ring, &set, CLOSURE_CAP) else { return false };
        let a = self.basis(c);
        let b = self.basis(&self.inverse(c));
        for (_, s) in a.elems.iter().take(40) {
            for (_, t) in b.elems.iter().take(40) {
                let p = ring.mul(s, t);
                if ring.is_zero(&p) {
                    continue;
                }
                if !closure.elements().iter().any(|u| ring.mul(u, &p) == p && ring.mul(&p, u) == p) {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal unit generators form a pairwise orthogonal family whose
    /// finite joins fix every product.
    pub fn check_virtually(&self) -> Verdict {
        const NAME: &str = "virtually_epsilon_strong";
        let ring = self.ring();
        let mut parts = Vec::new();
        let mut notes = Vec::new();
        for c in self.cosets() {
            let gens: Vec<R::Elem> = self.coset_generators(&c).into_iter().map(|(_, x)| x).collect();
            let mut failed: Vec<&str> = Vec::new();
            let set = IdemSet::new(ring, gens.clone());
            let Ok(set) = set else {
                parts.push(self.virtually_fallback(&c, &mut notes, &["(a) commuting"]));
                continue;
            };
            let maximal = maximal_elements(ring, &set);
            let d = maximal.elements();
            let orthogonal = d.iter().enumerate().all(|(i, x)| d[..i].iter().all(|y| are_orthogonal(ring, x, y)));
            if !orthogonal {
                failed.push("pairwise orthogonality");
            }
            let below = set.elements().iter().all(|x| d.iter().any(|m| idem_leq(ring, x, m).unwrap_or(false)));
            if !below {
                failed.push("domination by maximal elements");
            }
            if failed.is_empty() && !self.covered_by_orthogonal(&c, d) {
                failed.push("covering");
            }
            if !failed.is_empty() {
                parts.push(self.virtually_fallback(&c, &mut notes, &failed));
                continue;
            }
            if notes.len() < 4 {
                notes.push(format!("D_{c} = {}", self.show_list(d)));
            }
            let status = if self.pair_complete(&c) || self.coset_epsilon(&c).status == Status::Holds {
                Status::Holds
            } else {
                Status::UpToBound
            };
            parts.push(status);
        }
        let summary = notes.join("; ");
        let mut v = self.finish(NAME, &parts, summary.clone(), summary, None);
        if v.is_fails() {
            v = Verdict::up_to_bound(NAME, self.bound(), v.witness.unwrap_or_default());
        }
        v
    }

    fn covered_by_orthogonal(&self, c: &Coset, d: &[R::Elem]) -> bool {
        let ring = self.ring();
        let sum = |xs: Vec<&R::Elem>| xs.into_iter().fold(ring.zero(), |acc, x| ring.add(&acc, x));
        let left_ok = self.basis(c).elems.iter().all(|(_, s)| {
            let l = sum(d.iter().filter(|m| !ring.is_zero(&ring.mul(m, s))).collect());
            ring.mul(&l, s) == *s
        });
        let right_ok = self.basis(&self.inverse(c)).elems.iter().all(|(_, t)| {
            let r = sum(d.iter().filter(|m| !ring.is_zero(&ring.mul(t, m))).collect());
            ring.mul(t, &r) == *t
        });
        left_ok && right_ok
    }

    fn virtually_fallback(&self, c: &Coset, notes: &mut Vec<String>, failed: &[&str]) -> Status {
        let w = self.coset_epsilon(c);
        let status = if w.status == Status::Holds { Status::Holds } else { Status::UpToBound };
        let tail = if w.status == Status::Holds {
            format!("D_{c} = {{{}}} from the coset identity", self.render(&w.candidate))
        } else {
            "no replacement family".into()
        };
        notes.push(format!("coset {c}: maximal window generators fail {}; {tail}", failed.join(" and ")));
        status
    }

    /// The join-closure of `{ε_C}` is finite.
    pub fn check_epsilon_finite(&self) -> Result<Verdict, AnalysisError> {
        const NAME: &str = "epsilon_finite";
        self.require_family()?;
        let bound = self.bound();
        let ring = self.ring();
        if !self.is_parent() {
            let (eps, _) = self.check_epsilon_strong()?;
            return Ok(match eps.status {
                Status::Holds if self.all_cosets_seen() => Verdict::holds(
                    NAME,
                    bound,
                    format!("the quotient has {} cosets, so at most that many ε_C", self.cosets().len()),
                ),
                Status::Fails => Verdict::fails(
                    NAME,
                    bound,
                    format!("the grading is not epsilon-strong: {}", eps.witness.unwrap_or_default()),
                ),
                _ => Verdict::up_to_bound(NAME, bound, "epsilon-strongness is open at this bound"),
            });
        }
        match ring.family_law(bound) {
            FamilyLaw::Finite(family) => {
                let set = IdemSet::new(ring, family).map_err(|e| AnalysisError::NotApplicable(e.to_string()))?;
                let (closure, complete) =
                    join_closure_capped(ring, &set, 4096).map_err(|e| AnalysisError::NotApplicable(e.to_string()))?;
                Ok(if complete {
                    Verdict::holds(
                        NAME,
                        bound,
                        format!(
                            "closure of the nonzero ε_g has {} elements: {}",
                            closure.len(),
                            self.show_list(closure.elements())
                        ),
                    )
                } else {
                    Verdict::up_to_bound(NAME, bound, "closure exceeds the enumeration cap")
                })
            }
            FamilyLaw::Infinite(why) => Ok(Verdict::fails(NAME, bound, why)),
            FamilyLaw::Unknown(why) => {
                let gens: Vec<R::Elem> = self.window().degrees.iter().filter_map(|&g| self.epsilon(g)).collect();
                let size = IdemSet::new(ring, gens)
                    .ok()
                    .and_then(|s| join_closure_capped(ring, &s, CLOSURE_CAP).ok())
                    .map(|(c, _)| c.len());
                Ok(Verdict::up_to_bound(
                    NAME,
                    bound,
                    format!("{why}; closure over the window has {} elements", size.unwrap_or(0)),
                ))
            }
        }
    }

    /// For each coset, a pair `(s, t)` with `st = ε_C`, `ts = ε_{C⁻¹}`.
    pub fn epsilon_crossed_witness(&self) -> Result<Vec<CrossedWitness<R::Elem>>, AnalysisError> {
        let (eps, witnesses) = self.check_epsilon_strong()?;
        if eps.is_fails() {
            return Err(AnalysisError::NotApplicable(format!(
                "the grading is not epsilon-strong: {}",
                eps.witness.unwrap_or_default()
            )));
        }
        let by_coset: BTreeMap<Coset, R::Elem> = witnesses.into_iter().map(|w| (w.coset, w.candidate)).collect();
        let ring = self.ring();
        let principal = self.principal();
        let mut out = Vec::new();
        for c in self.cosets() {
            let ci = self.inverse(&c);
            let epsilon = by_coset.get(&c).cloned().unwrap_or_else(|| ring.zero());
            let epsilon_inverse = by_coset.get(&ci).cloned().unwrap_or_else(|| ring.zero());
            let valid = |s: &R::Elem, t: &R::Elem| ring.mul(s, t) == epsilon && ring.mul(t, s) == epsilon_inverse;
            let mut pair = None;
            let mut method = String::new();
            if c == principal && valid(&epsilon, &epsilon) {
                pair = Some((epsilon.clone(), epsilon.clone()));
                method = "the identity of the principal component".into();
            }
            if pair.is_none() {
                if let Some((s, t)) = ring.crossed_candidate(&self.degrees_in(&c)) {
                    if valid(&s, &t) {
                        pair = Some((s, t));
                        method = "sum of domain identities over orthogonal representatives".into();
                    }
                }
            }
            if pair.is_none() {
                if let Some(found) = self.search_crossed(&c, &valid) {
                    pair = Some(found);
                    method = "bounded search over sums of basis elements".into();
                }
            }
            out.push(CrossedWitness { coset: c, epsilon, epsilon_inverse, pair, method });
        }
        Ok(out)
    }

    fn search_crossed(&self, c: &Coset, valid: &dyn Fn(&R::Elem, &R::Elem) -> bool) -> Option<(R::Elem, R::Elem)> {
        let ring = self.ring();
        let sums = |c: &Coset| -> Vec<R::Elem> {
            let elems: Vec<R::Elem> = self.basis(c).elems.iter().take(SEARCH_BASIS).map(|(_, x)| x.clone()).collect();
            let mut out = vec![ring.zero()];
            let mut layer: Vec<(usize, R::Elem)> = vec![(0, ring.zero())];
            for _ in 0..SEARCH_TERMS {
                let mut next = Vec::new();
                for (start, acc) in &layer {
                    for (i, x) in elems.iter().enumerate().skip(*start) {
                        let y = ring.add(acc, x);
                        out.push(y.clone());
                        next.push((i + 1, y));
                    }
                }
                layer = next;
            }
            out
        };
        let left = sums(c);
        for s in &left {
            if let Some(t) = ring.adjoint(s) {
                if valid(s, &t) {
                    return Some((s.clone(), t));
                }
            }
        }
        let right = sums(&self.inverse(c));
        for s in &left {
            for t in &right {
                if valid(s, t) {
                    return Some((s.clone(), t.clone()));
                }
            }
        }
        None
    }

    /// Every component contains an epsilon-invertible element.
    pub fn check_epsilon_crossed(&self) -> Result<Verdict, AnalysisError> {
        const NAME: &str = "epsilon_crossed";
        let bound = self.bound();
        let witnesses = match self.epsilon_crossed_witness() {
            Ok(w) => w,
            Err(AnalysisError::NotApplicable(why)) => return Ok(Verdict::fails(NAME, bound, why)),
            Err(e) => return Err(e),
        };
        let (eps, _) = self.check_epsilon_strong()?;
        let shown: Vec<String> = witnesses
            .iter()
            .filter_map(|w| {
                let (s, t) = w.pair.as_ref()?;
                (!self.ring().is_zero(s))
                    .then(|| format!("{}: s = {}, t = {}", w.coset, self.render(s), self.render(t)))
            })
            .take(6)
            .collect();
        let all = witnesses.iter().all(|w| w.pair.is_some());
        Ok(if all && eps.is_holds() && self.cosets_covered() {
            Verdict::holds(NAME, bound, format!("st = ε_C and ts = ε_C⁻¹ for every coset; {}", shown.join("; ")))
        } else {
            let missing: Vec<String> =
                witnesses.iter().filter(|w| w.pair.is_none()).map(|w| w.coset.to_string()).collect();
            let gap =
                if missing.is_empty() { String::new() } else { format!("; no pair found for {}", missing.join(", ")) };
            Verdict::up_to_bound(NAME, bound, format!("{}{gap}", shown.join("; ")))
        })
    }
}
