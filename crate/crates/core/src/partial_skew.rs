//! Unital partial actions on the sequence ring and their partial skew group
//! rings `⊕ D_g δ_g`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{enumerate_window, Group, GroupElement, GroupError, GroupSpec};
use crate::idempotents::Carrier;
use crate::numeric::{format_rational, FinExSeq, Rational};
use crate::verdict::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unknown builtin partial action '{0}'")]
    UnknownBuiltin(String),
    #[error("coefficient at degree {0} does not lie in its domain ideal")]
    NotInDomain(i64),
    #[error("invalid partial action: {0}")]
    Invalid(String),
}

/// A global action of `G` on sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GlobalAction {
    /// `Z` acting by bilateral shift: `(g·a)(j) = a(j - g)`.
    Shift,
    /// A cyclic group of order `len` rotating positions `start..start+len`.
    CyclicShift { start: i64, len: i64 },
}

impl GlobalAction {
    pub fn apply(&self, g: GroupElement, x: &FinExSeq) -> FinExSeq {
        match self {
            GlobalAction::Shift => x.shift(g.0),
            GlobalAction::CyclicShift { start, len } => x.cyclic_shift(*start, *len, g.0),
        }
    }

    fn check_group(&self, group: &Group) -> Result<(), SkewError> {
        match (self, group.order()) {
            (GlobalAction::Shift, None) => Ok(()),
            (GlobalAction::CyclicShift { len, .. }, Some(n)) if *len as usize == n && *len > 0 => {
                let cyclic = Group::cyclic(n);
                if *group == cyclic {
                    Ok(())
                } else {
                    Err(SkewError::Invalid("cyclic shifts need the addition-mod-n table".into()))
                }
            }
            _ => Err(SkewError::Invalid("global action does not match the group".into())),
        }
    }
}

/// The identities `1_g` of the domain ideals `D_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainLaw {
    /// `1_e = 1` and `1_g = e_g` otherwise (integers only).
    KroneckerOffIdentity,
    /// Restriction of a global action to the unital ideal generated by
    /// `ideal`: `1_g = ideal · (g·ideal)`.
    Restricted { ideal: FinExSeq, global: GlobalAction },
    /// Listed identities; unlisted degrees have zero domain.
    Explicit(BTreeMap<GroupElement, FinExSeq>),
}

type ActionFn = Arc<dyn Fn(GroupElement, &FinExSeq) -> FinExSeq + Send + Sync>;

/// How `α_g: D_{g⁻¹} -> D_g` acts.
#[derive(Clone)]
pub enum ActionLaw {
    /// `α_e` is the identity; every other `α_g` reflects positions `j ↦ -j`.
    Reflect,
    /// Restriction of a global action.
    Global(GlobalAction),
    /// Arbitrary map, applied to `x · 1_{g⁻¹}`.
    Custom(ActionFn),
}

impl fmt::Debug for ActionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionLaw::Reflect => write!(f, "Reflect"),
            ActionLaw::Global(g) => write!(f, "Global({g:?})"),
            ActionLaw::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// For integer groups: `1_g = mask · shift(pattern, g)` for every `g`
/// outside `exceptional`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftLaw {
    pub mask: FinExSeq,
    pub pattern: FinExSeq,
    #[serde(default)]
    pub exceptional: Vec<i64>,
}

impl ShiftLaw {
    pub fn unit(&self, g: i64) -> Option<FinExSeq> {
        (!self.exceptional.contains(&g)).then(|| &self.mask * &self.pattern.shift(g))
    }

    /// Past this radius every `1_g` is a shifted copy of the pattern that no
    /// longer meets the mask exceptions or the exceptional degrees.
    pub fn generic_radius(&self) -> i64 {
        let exc = self.exceptional.iter().map(|g| g.abs()).max().unwrap_or(0);
        self.mask.radius().max(exc) + self.pattern.radius() + 1
    }
}

#[derive(Debug, Clone)]
pub struct PartialAction {
    name: String,
    group: Group,
    domains: DomainLaw,
    action: ActionLaw,
    certificate: Option<ShiftLaw>,
}

impl PartialAction {
    pub fn new(name: &str, group: Group, domains: DomainLaw, action: ActionLaw) -> Result<PartialAction, SkewError> {
        match &domains {
            DomainLaw::KroneckerOffIdentity if group.is_finite() => {
                return Err(SkewError::Invalid("Kronecker domains are indexed by the integers".into()))
            }
            DomainLaw::Restricted { ideal, global } => {
                global.check_group(&group)?;
                if !ideal.is_idempotent() {
                    return Err(SkewError::Invalid("ideal generator is not idempotent".into()));
                }
            }
            DomainLaw::Explicit(map) => {
                for (g, u) in map {
                    group.check(*g)?;
                    if !u.is_idempotent() {
                        return Err(SkewError::Invalid(format!("1_{g} is not idempotent")));
                    }
                }
                if !map.contains_key(&group.identity()) {
                    return Err(SkewError::Invalid("the identity degree needs a domain".into()));
                }
            }
            DomainLaw::KroneckerOffIdentity => {}
        }
        if let ActionLaw::Global(a) = &action {
            a.check_group(&group)?;
        }
        if let ActionLaw::Reflect = &action {
            if group.is_finite() {
                return Err(SkewError::Invalid("reflection actions are indexed by the integers".into()));
            }
        }
        let certificate = match (&domains, &group) {
            (DomainLaw::KroneckerOffIdentity, _) => {
                Some(ShiftLaw { mask: FinExSeq::one(), pattern: FinExSeq::kronecker(0), exceptional: vec![0] })
            }
            (DomainLaw::Restricted { ideal, global: GlobalAction::Shift }, Group::Integers) => {
                Some(ShiftLaw { mask: ideal.clone(), pattern: ideal.clone(), exceptional: vec![] })
            }
            _ => None,
        };
        Ok(PartialAction { name: name.into(), group, domains, action, certificate })
    }

    /// Attaches a domain certificate; it must agree with the domain law on
    /// the window `-radius..=radius`.
    pub fn with_certificate(mut self, law: ShiftLaw, radius: usize) -> Result<PartialAction, SkewError> {
        if self.group.is_finite() {
            return Err(SkewError::Invalid("certificates apply to integer groups".into()));
        }
        for g in enumerate_window(&self.group, radius) {
            if let Some(u) = law.unit(g.0) {
                if u != self.unit(g) {
                    return Err(SkewError::Invalid(format!("certificate disagrees with 1_{g}")));
                }
            }
        }
        self.certificate = Some(law);
        Ok(self)
    }

    pub const BUILTINS: [&'static str; 3] = ["reflection", "shift", "cyclic4"];

    pub fn builtin(name: &str) -> Result<PartialAction, SkewError> {
        match name {
            "reflection" => {
                PartialAction::new(name, Group::Integers, DomainLaw::KroneckerOffIdentity, ActionLaw::Reflect)
            }
            "shift" => PartialAction::new(
                name,
                Group::Integers,
                DomainLaw::Restricted { ideal: FinExSeq::co_indicator([0]), global: GlobalAction::Shift },
                ActionLaw::Global(GlobalAction::Shift),
            ),
            "cyclic4" => {
                let rotate = GlobalAction::CyclicShift { start: 1, len: 4 };
                PartialAction::new(
                    name,
                    Group::cyclic(4),
                    DomainLaw::Restricted { ideal: FinExSeq::indicator([1, 2]), global: rotate.clone() },
                    ActionLaw::Global(rotate),
                )
            }
            other => Err(SkewError::UnknownBuiltin(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn certificate(&self) -> Option<&ShiftLaw> {
        self.certificate.as_ref()
    }

    pub fn domains(&self) -> &DomainLaw {
        &self.domains
    }

    /// The identity `1_g` of `D_g`.
    pub fn unit(&self, g: GroupElement) -> FinExSeq {
        match &self.domains {
            DomainLaw::KroneckerOffIdentity => {
                if g == self.group.identity() {
                    FinExSeq::one()
                } else {
                    FinExSeq::kronecker(g.0)
                }
            }
            DomainLaw::Restricted { ideal, global } => ideal * &global.apply(g, ideal),
            DomainLaw::Explicit(map) => map.get(&g).cloned().unwrap_or_else(FinExSeq::zero),
        }
    }

    pub fn identity_unit(&self) -> FinExSeq {
        self.unit(self.group.identity())
    }

    /// `α_g(y · 1_{g⁻¹})`.
    pub fn alpha(&self, g: GroupElement, y: &FinExSeq) -> FinExSeq {
        let x = y * &self.unit(self.group.inv(g));
        match &self.action {
            ActionLaw::Reflect if g == self.group.identity() => x,
            ActionLaw::Reflect => x.reflect(),
            ActionLaw::Global(a) => a.apply(g, &x),
            ActionLaw::Custom(f) => f(g, &x),
        }
    }

    /// Checks `D_e = R`, `α_e = id`, `α_g(1_{g⁻¹}1_h) = 1_g 1_{gh}` and
    /// `α_g ∘ α_h = α_{gh}` on `D_{h⁻¹} D_{(gh)⁻¹}` over the window. The
    /// composition law is tested on the generator of that ideal and on its
    /// products with Kronecker sequences near the window.
    pub fn axiom_check(&self, bound: usize) -> Verdict {
        const CHECK: &str = "partial-action";
        let grp = &self.group;
        let e = grp.identity();
        let window = enumerate_window(grp, bound);
        let one = self.identity_unit();
        let reach = window.iter().map(|g| self.unit(*g).radius()).max().unwrap_or(0) + bound as i64 + 1;
        let probes: Vec<FinExSeq> = {
            let mut p: Vec<FinExSeq> = (-reach..=reach).map(FinExSeq::kronecker).collect();
            p.push(FinExSeq::co_indicator(-reach..=reach));
            p
        };
        for g in &window {
            let u = self.unit(*g);
            if !u.is_idempotent() || &u * &one != u {
                return Verdict::fails(CHECK, bound, format!("1_{g} is not an idempotent of D_e"));
            }
        }
        for p in &probes {
            let x = p * &one;
            if self.alpha(e, &x) != x {
                return Verdict::fails(CHECK, bound, format!("alpha_e moves {}", render_seq(&x)));
            }
        }
        for &g in &window {
            let gi = grp.inv(g);
            for &h in &window {
                let gh = grp.op(g, h);
                let lhs = self.alpha(g, &(&self.unit(gi) * &self.unit(h)));
                let rhs = &self.unit(g) * &self.unit(gh);
                if lhs != rhs {
                    return Verdict::fails(
                        CHECK,
                        bound,
                        format!(
                            "(g,h)=({g},{h}): alpha_g(1_g^-1 1_h) = {} but 1_g 1_gh = {}",
                            render_seq(&lhs),
                            render_seq(&rhs)
                        ),
                    );
                }
                let x = &self.unit(grp.inv(h)) * &self.unit(grp.inv(gh));
                for y in std::iter::once(x.clone()).chain(probes.iter().map(|p| &x * p)) {
                    if y.is_zero() {
                        continue;
                    }
                    let lhs = self.alpha(g, &self.alpha(h, &y));
                    let rhs = self.alpha(gh, &y);
                    if lhs != rhs {
                        return Verdict::fails(
                            CHECK,
                            bound,
                            format!(
                                "(g,h)=({g},{h}), x={}: alpha_g(alpha_h(x)) = {} but alpha_gh(x) = {}",
                                render_seq(&y),
                                render_seq(&lhs),
                                render_seq(&rhs)
                            ),
                        );
                    }
                }
            }
        }
        match (&self.group, &self.certificate) {
            (Group::Finite(_), _) => Verdict::holds(CHECK, bound, "all group elements checked"),
            (Group::Integers, Some(law)) if bound as i64 >= law.generic_radius().max(4) => Verdict::holds(
                CHECK,
                bound,
                format!(
                    "window -{bound}..{bound} checked; domains follow 1_g = {} * shift({}, g) beyond radius {}",
                    render_seq(&law.mask),
                    render_seq(&law.pattern),
                    law.generic_radius()
                ),
            ),
            _ => Verdict::up_to_bound(CHECK, bound, format!("window -{bound}..{bound} checked")),
        }
    }
}

/// A finite sum `Σ a_g δ_g` with `a_g ∈ D_g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SkewElement {
    terms: BTreeMap<GroupElement, FinExSeq>,
}

impl SkewElement {
    pub fn zero() -> SkewElement {
        SkewElement::default()
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, FinExSeq> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: GroupElement) -> FinExSeq {
        self.terms.get(&g).cloned().unwrap_or_else(FinExSeq::zero)
    }

    pub fn support(&self) -> BTreeSet<GroupElement> {
        self.terms.keys().copied().collect()
    }

    fn insert_add(&mut self, g: GroupElement, a: FinExSeq) {
        let sum = &self.coefficient(g) + &a;
        if sum.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, sum);
        }
    }

    pub fn add(&self, other: &SkewElement) -> SkewElement {
        let mut out = self.clone();
        for (g, a) in &other.terms {
            out.insert_add(*g, a.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SkewElement {
        let mut out = SkewElement::zero();
        for (g, a) in &self.terms {
            out.insert_add(*g, a.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &SkewElement) -> SkewElement {
        self.add(&other.scale(&-Rational::one()))
    }
}

/// The ring `⊕ D_g δ_g` attached to a partial action.
#[derive(Debug, Clone)]
pub struct SkewRing {
    action: Arc<PartialAction>,
}

impl SkewRing {
    pub fn new(action: PartialAction) -> SkewRing {
        SkewRing { action: Arc::new(action) }
    }

    pub fn builtin(name: &str) -> Result<SkewRing, SkewError> {
        PartialAction::builtin(name).map(SkewRing::new)
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn group(&self) -> &Group {
        self.action.group()
    }

    /// `a δ_g`, which must satisfy `a · 1_g = a`.
    pub fn term(&self, a: FinExSeq, g: GroupElement) -> Result<SkewElement, SkewError> {
        self.group().check(g)?;
        if &a * &self.action.unit(g) != a {
            return Err(SkewError::NotInDomain(g.0));
        }
        let mut out = SkewElement::zero();
        out.insert_add(g, a);
        Ok(out)
    }

    /// `(a · 1_g) δ_g`.
    pub fn projected_term(&self, a: &FinExSeq, g: GroupElement) -> SkewElement {
        let mut out = SkewElement::zero();
        out.insert_add(g, a * &self.action.unit(g));
        out
    }

    /// `ε_g = 1_g δ_e`.
    pub fn epsilon(&self, g: GroupElement) -> SkewElement {
        let mut out = SkewElement::zero();
        out.insert_add(self.group().identity(), self.action.unit(g));
        out
    }

    pub fn one(&self) -> SkewElement {
        self.epsilon(self.group().identity())
    }

    /// `(a δ_g)(b δ_h) = a α_g(b 1_{g⁻¹}) δ_{gh}`, extended bilinearly.
    pub fn mul(&self, x: &SkewElement, y: &SkewElement) -> SkewElement {
        let grp = self.group();
        let mut out = SkewElement::zero();
        for (&g, a) in &x.terms {
            for (&h, b) in &y.terms {
                let c = a * &self.action.alpha(g, b);
                if !c.is_zero() {
                    out.insert_add(grp.op(g, h), c);
                }
            }
        }
        out
    }

    pub fn in_domains(&self, x: &SkewElement) -> bool {
        x.terms.iter().all(|(g, a)| a * &self.action.unit(*g) == *a)
    }

    pub fn render(&self, x: &SkewElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms.iter().map(|(g, a)| format!("{}δ_{}", paren(&render_seq(a)), g)).collect::<Vec<_>>().join(" + ")
    }
}

fn paren(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// Renders a sequence as a combination of Kronecker sequences and the
/// constant one, e.g. `e_1 + e_2` or `1 - e_0 - e_3`.
pub fn render_seq(a: &FinExSeq) -> String {
    let d = a.default_value();
    let mut parts: Vec<(bool, String)> = Vec::new();
    if !d.is_zero() {
        parts.push((d < &Rational::zero(), coeff_text(d, None)));
    }
    for (j, v) in a.exceptions() {
        let c = v - d;
        parts.push((c < Rational::zero(), coeff_text(&c, Some(*j))));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn coeff_text(c: &Rational, pos: Option<i64>) -> String {
    let mag = if c < &Rational::zero() { -c.clone() } else { c.clone() };
    match pos {
        None => format_rational(&mag),
        Some(j) if mag.is_one() => format!("e_{j}"),
        Some(j) => format!("{}·e_{j}", format_rational(&mag)),
    }
}

impl Carrier for SkewRing {
    type Elem = SkewElement;

    fn zero(&self) -> SkewElement {
        SkewElement::zero()
    }
    fn add(&self, a: &SkewElement, b: &SkewElement) -> SkewElement {
        a.add(b)
    }
    fn sub(&self, a: &SkewElement, b: &SkewElement) -> SkewElement {
        a.sub(b)
    }
    fn mul(&self, a: &SkewElement, b: &SkewElement) -> SkewElement {
        SkewRing::mul(self, a, b)
    }
    fn is_zero(&self, a: &SkewElement) -> bool {
        a.is_zero()
    }
}

/// Scenario description of a partial action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialActionSpec {
    pub group: GroupSpec,
    /// Restrict a global action to this ideal generator.
    #[serde(default)]
    pub ideal: Option<FinExSeq>,
    /// Explicit domain identities keyed by group element.
    #[serde(default)]
    pub domains: BTreeMap<String, FinExSeq>,
    pub action: ActionSpec,
    #[serde(default)]
    pub certificate: Option<ShiftLaw>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionSpec {
    Shift,
    CyclicShift { start: i64, len: i64 },
    Reflect,
}

impl PartialActionSpec {
    pub fn build(&self, name: &str) -> Result<PartialAction, SkewError> {
        let group = Group::from_spec(&self.group)?;
        let action = match &self.action {
            ActionSpec::Shift => ActionLaw::Global(GlobalAction::Shift),
            ActionSpec::CyclicShift { start, len } => {
                ActionLaw::Global(GlobalAction::CyclicShift { start: *start, len: *len })
            }
            ActionSpec::Reflect => ActionLaw::Reflect,
        };
        let domains = match (&self.ideal, self.domains.is_empty()) {
            (Some(ideal), true) => {
                let ActionLaw::Global(global) = &action else {
                    return Err(SkewError::Invalid("an ideal restricts a shift action".into()));
                };
                DomainLaw::Restricted { ideal: ideal.clone(), global: global.clone() }
            }
            (None, false) => {
                let mut map = BTreeMap::new();
                for (k, v) in &self.domains {
                    let g: i64 =
                        k.trim().parse().map_err(|_| SkewError::Invalid(format!("bad group element '{k}'")))?;
                    map.insert(GroupElement(g), v.clone());
                }
                DomainLaw::Explicit(map)
            }
            _ => return Err(SkewError::Invalid("give exactly one of 'ideal' or 'domains'".into())),
        };
        let pa = PartialAction::new(name, group, domains, action)?;
        match &self.certificate {
            Some(law) => pa.with_certificate(law.clone(), 16),
            None => Ok(pa),
        }
    }
}
