//! JSON scenario files and the reports produced from them.
//!
//! ```json
//! {
//!   "name": "two-vertex quiver",
//!   "ring": "builtin:two_vertex",
//!   "quotient": {"multiples": 2},
//!   "checks": ["strong", "epsilon-strong", "classify"],
//!   "bound": 4,
//!   "expect": {"strong": "Fails", "parent.epsilon_strong": "Holds"}
//! }
//! ```
//!
//! Checks without a prefix run on the induced grading when a quotient is
//! given and on the ring's own grading otherwise. `classify` reports both,
//! with keys `parent.<check>` and `induced.<check>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{canonical_check, classify, AnalysisError, GradedRing, InducedGrading};
use crate::groups::{Group, GroupElement, GroupError, GroupSpec, NormalSubgroup, Quotient};
use crate::leavitt::{LeavittAlgebra, LeavittError, QuiverSpec};
use crate::partial_skew::{PartialAction, PartialActionSpec, SkewError, SkewRing};
use crate::verdict::{Status, Verdict};

pub const CLASSIFY: &str = "classify";
pub const AXIOMS: &str = "partial_action_axioms";

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
    #[error("unknown builtin '{0}'")]
    UnknownBuiltin(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<AnalysisError> for ScenarioError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::UnknownCheck(c) => ScenarioError::UnknownCheck(c),
            other => ScenarioError::Invalid(other.to_string()),
        }
    }
}

impl From<LeavittError> for ScenarioError {
    fn from(e: LeavittError) -> Self {
        match e {
            LeavittError::UnknownBuiltin(b) => ScenarioError::UnknownBuiltin(b),
            other => ScenarioError::Invalid(other.to_string()),
        }
    }
}

impl From<SkewError> for ScenarioError {
    fn from(e: SkewError) -> Self {
        match e {
            SkewError::UnknownBuiltin(b) => ScenarioError::UnknownBuiltin(b),
            other => ScenarioError::Invalid(other.to_string()),
        }
    }
}

impl From<GroupError> for ScenarioError {
    fn from(e: GroupError) -> Self {
        ScenarioError::Invalid(e.to_string())
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ScenarioError> {
    serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Where the ring comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    /// `builtin:<name>`.
    Builtin(String),
    Leavitt {
        quiver: Box<QuiverSpec>,
        #[serde(default)]
        group: Option<GroupSpec>,
    },
    LeavittFile {
        quiver_file: String,
        #[serde(default)]
        group: Option<GroupSpec>,
    },
    PartialAction {
        partial_action: Box<PartialActionSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum QuotientSpec {
    /// `mZ` inside the integers.
    Multiples(u64),
    /// An explicit normal subgroup of a finite group.
    Members(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "structured" | "json" => Ok(OutputFormat::Structured),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

fn default_bound() -> usize {
    4
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: Option<String>,
    pub ring: RingSpec,
    #[serde(default)]
    pub quotient: Option<QuotientSpec>,
    pub checks: Vec<String>,
    #[serde(default = "default_bound")]
    pub bound: usize,
    #[serde(default)]
    pub expect: BTreeMap<String, Status>,
    #[serde(default)]
    pub output: OutputFormat,
    /// Directory against which relative file references resolve.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        let s: Scenario = parse_json(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Scenario, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::Io { path: path.display().to_string(), message: e.to_string() })?;
        let mut s = Scenario::parse(&text)?;
        s.base_dir = path.parent().map(Path::to_path_buf);
        Ok(s)
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        if self.checks.is_empty() {
            return Err(ScenarioError::Invalid("no checks requested".into()));
        }
        for c in &self.checks {
            normalize_check(c)?;
        }
        for key in self.expect.keys() {
            let bare = key.strip_prefix("parent.").or_else(|| key.strip_prefix("induced.")).unwrap_or(key);
            normalize_check(bare)?;
        }
        Ok(())
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".into())
    }
}

fn normalize_check(name: &str) -> Result<&'static str, ScenarioError> {
    let n = name.trim().to_ascii_lowercase().replace('-', "_");
    match n.as_str() {
        CLASSIFY => Ok(CLASSIFY),
        AXIOMS | "axioms" => Ok(AXIOMS),
        _ => Ok(canonical_check(name)?),
    }
}

/// Which grading a verdict belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradingRole {
    Parent,
    Induced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub grading: GradingRole,
    pub group: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub key: String,
    pub expected: Status,
    pub actual: Option<Status>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: String,
    pub ring: String,
    pub bound: usize,
    pub results: Vec<ResultEntry>,
    #[serde(default)]
    pub defects: Vec<String>,
    #[serde(default)]
    pub mismatches: Vec<Mismatch>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.defects.is_empty()
    }

    /// Status of a check; `key` may carry a `parent.` or `induced.` prefix.
    pub fn status(&self, key: &str, default_role: GradingRole) -> Option<Status> {
        let (role, bare) = match key.split_once('.') {
            Some(("parent", b)) => (GradingRole::Parent, b),
            Some(("induced", b)) => (GradingRole::Induced, b),
            _ => (default_role, key),
        };
        let bare = normalize_check(bare).ok()?;
        self.results.iter().find(|r| r.grading == role && r.verdict.check == bare).map(|r| r.verdict.status)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<RunReport, ScenarioError> {
        parse_json(text)
    }
}

/// A short description of what each check establishes.
pub fn anchor(check: &str) -> &'static str {
    match check {
        "strong" => "products of components fill the target component",
        "symmetric" => "S_C ⊆ S_C·S_C⁻¹·S_C",
        "nearly_epsilon_strong" => "one-sided units in S_C·S_C⁻¹, combined by Tominaga's construction",
        "essentially_epsilon_strong" => "local units from joins of the epsilon family",
        "virtually_epsilon_strong" => "pairwise orthogonal maximal idempotents covering S_C·S_C⁻¹",
        "epsilon_strong" => "upper bound of the joined epsilon family is the identity of S_C·S_C⁻¹",
        "epsilon_finite" => "finite join-closure of the epsilon family",
        "epsilon_crossed" => "epsilon-invertible element in every component",
        AXIOMS => "domains, identity map, domain compatibility and composition law of the partial action",
        _ => "",
    }
}

enum LoadedRing {
    Leavitt(LeavittAlgebra),
    Skew(SkewRing),
}

fn load_ring(spec: &RingSpec, base: Option<&Path>) -> Result<LoadedRing, ScenarioError> {
    let group_of = |g: &Option<GroupSpec>| -> Result<Group, ScenarioError> {
        Ok(match g {
            Some(spec) => Group::from_spec(spec)?,
            None => Group::Integers,
        })
    };
    match spec {
        RingSpec::Builtin(s) => {
            let name = s.strip_prefix("builtin:").ok_or_else(|| ScenarioError::UnknownBuiltin(s.clone()))?;
            if LeavittAlgebra::BUILTINS.contains(&name) {
                Ok(LoadedRing::Leavitt(LeavittAlgebra::builtin(name)?))
            } else if PartialAction::BUILTINS.contains(&name) {
                Ok(LoadedRing::Skew(SkewRing::builtin(name)?))
            } else {
                Err(ScenarioError::UnknownBuiltin(s.clone()))
            }
        }
        RingSpec::Leavitt { quiver, group } => {
            Ok(LoadedRing::Leavitt(LeavittAlgebra::from_spec(quiver, &group_of(group)?)?))
        }
        RingSpec::LeavittFile { quiver_file, group } => {
            let path = match base {
                Some(dir) => dir.join(quiver_file),
                None => PathBuf::from(quiver_file),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| ScenarioError::Io { path: path.display().to_string(), message: e.to_string() })?;
            let quiver: QuiverSpec = parse_json(&text)?;
            Ok(LoadedRing::Leavitt(LeavittAlgebra::from_spec(&quiver, &group_of(group)?)?))
        }
        RingSpec::PartialAction { partial_action } => {
            Ok(LoadedRing::Skew(SkewRing::new(partial_action.build("custom")?)))
        }
    }
}

fn quotient_of(group: &Group, spec: &Option<QuotientSpec>) -> Result<Option<Quotient>, ScenarioError> {
    let Some(spec) = spec else { return Ok(None) };
    let n = match spec {
        QuotientSpec::Multiples(m) => NormalSubgroup::multiples(*m),
        QuotientSpec::Members(ms) => {
            let ms: Vec<GroupElement> = ms.iter().map(|&g| GroupElement(g)).collect();
            NormalSubgroup::members(group, &ms)?
        }
    };
    Ok(Some(Quotient::new(group, n)?))
}

fn run_checks<R: GradedRing>(
    ring: &R,
    scenario: &Scenario,
    bound: usize,
    axioms: Option<Verdict>,
) -> Result<(Vec<ResultEntry>, Vec<String>), ScenarioError> {
    let quotient = quotient_of(ring.group(), &scenario.quotient)?;
    let target_role =
        if quotient.as_ref().is_some_and(|q| !q.is_trivial()) { GradingRole::Induced } else { GradingRole::Parent };
    let target = match &quotient {
        Some(q) => InducedGrading::new(ring, q.clone(), bound)?,
        None => InducedGrading::parent(ring, bound),
    };
    let parent_label = InducedGrading::parent(ring, bound).label();
    let target_label = target.label();
    let mut results: Vec<ResultEntry> = Vec::new();
    let mut defects = Vec::new();
    let push = |results: &mut Vec<ResultEntry>, role: GradingRole, group: &str, v: Verdict| {
        results.retain(|r| !(r.grading == role && r.verdict.check == v.check));
        results.push(ResultEntry { grading: role, group: group.to_string(), verdict: v });
    };
    for check in &scenario.checks {
        match normalize_check(check)? {
            CLASSIFY => {
                let c = classify(ring, quotient.clone(), bound)?;
                for v in c.parent.verdicts {
                    push(&mut results, GradingRole::Parent, &c.parent.grading, v);
                }
                if let Some(ind) = c.induced {
                    for v in ind.verdicts {
                        push(&mut results, GradingRole::Induced, &ind.grading, v);
                    }
                }
                defects.extend(c.defects);
            }
            AXIOMS => {
                let v = axioms.clone().ok_or_else(|| {
                    ScenarioError::Invalid("partial action axioms need a partial skew group ring".into())
                })?;
                push(&mut results, GradingRole::Parent, &parent_label, v);
            }
            name => {
                let v = target.run_check(name)?;
                push(&mut results, target_role, &target_label, v);
            }
        }
    }
    Ok((results, defects))
}

/// Runs a scenario. `bound` overrides the scenario's bound.
pub fn run(scenario: &Scenario, bound: Option<usize>) -> Result<RunReport, ScenarioError> {
    let bound = bound.unwrap_or(scenario.bound);
    let ring = load_ring(&scenario.ring, scenario.base_dir.as_deref())?;
    let (description, (results, defects)) = match &ring {
        LoadedRing::Leavitt(a) => (a.describe(), run_checks(a, scenario, bound, None)?),
        LoadedRing::Skew(r) => {
            let axioms = r.action().axiom_check(bound).renamed(AXIOMS);
            (r.describe(), run_checks(r, scenario, bound, Some(axioms))?)
        }
    };
    let default_role = if scenario.quotient.is_some() { GradingRole::Induced } else { GradingRole::Parent };
    let mut report = RunReport {
        scenario: scenario.display_name(),
        ring: description,
        bound,
        results,
        defects,
        mismatches: Vec::new(),
    };
    let mut mismatches = Vec::new();
    for (key, expected) in &scenario.expect {
        let actual = report.status(key, default_role);
        if actual != Some(*expected) {
            mismatches.push(Mismatch { key: key.clone(), expected: *expected, actual });
        }
    }
    report.mismatches = mismatches;
    Ok(report)
}

/// Human-readable report.
pub fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", report.scenario);
    let _ = writeln!(out, "ring: {}", report.ring);
    let _ = writeln!(out, "bound: {}", report.bound);
    for r in &report.results {
        let role = match r.grading {
            GradingRole::Parent => "parent",
            GradingRole::Induced => "induced",
        };
        let v = &r.verdict;
        let _ = writeln!(out);
        let _ = writeln!(out, "[{role} grading by {}] {}: {}", r.group, v.check, v.status);
        let _ = writeln!(out, "  establishes: {}", anchor(&v.check));
        if let Some(w) = &v.witness {
            let _ = writeln!(out, "  witness: {w}");
        }
        if let Some(c) = &v.certificate {
            let label = if v.status == Status::Holds { "certificate" } else { "evidence" };
            let _ = writeln!(out, "  {label}: {c}");
        }
    }
    for d in &report.defects {
        let _ = writeln!(out, "\ndefect: {d}");
    }
    if !report.mismatches.is_empty() {
        let _ = writeln!(out);
        for m in &report.mismatches {
            let actual = m.actual.map(|s| s.to_string()).unwrap_or_else(|| "not run".into());
            let _ = writeln!(out, "expectation mismatch: {} expected {}, got {}", m.key, m.expected, actual);
        }
    }
    out
}

/// Every built-in ring name, prefixed for use in scenarios.
pub fn builtin_names() -> Vec<String> {
    LeavittAlgebra::BUILTINS.iter().chain(PartialAction::BUILTINS.iter()).map(|n| format!("builtin:{n}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_position() {
        let err = Scenario::parse("{\n  \"ring\": \"builtin:loop\",\n  \"checks\": [strong]\n}").unwrap_err();
        match err {
            ScenarioError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        let e = Scenario::parse(r#"{"ring":"builtin:loop","checks":["sturdy"]}"#).unwrap_err();
        assert!(matches!(e, ScenarioError::UnknownCheck(ref c) if c == "sturdy"), "{e:?}");
        let s = Scenario::parse(r#"{"ring":"builtin:nowhere","checks":["strong"]}"#).unwrap();
        assert!(matches!(run(&s, None), Err(ScenarioError::UnknownBuiltin(_))));
    }

    #[test]
    fn expectations_and_round_trip() {
        let s = Scenario::parse(
            r#"{"ring":"builtin:two_vertex","checks":["strong","epsilon-strong"],"bound":4,
                "expect":{"strong":"Fails","epsilon_strong":"Holds"}}"#,
        )
        .unwrap();
        let r = run(&s, None).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
        assert_eq!(render_text(&r), render_text(&run(&s, None).unwrap()));
    }

    #[test]
    fn mismatch_is_reported() {
        let s = Scenario::parse(r#"{"ring":"builtin:loop","checks":["strong"],"bound":3,"expect":{"strong":"Fails"}}"#)
            .unwrap();
        let r = run(&s, None).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert!(render_text(&r).contains("expectation mismatch: strong expected Fails, got UpToBound"));
    }
}
