use serde::{Deserialize, Serialize};

use super::{AnalysisError, GradedRing, InducedGrading};
use crate::groups::Quotient;
use crate::verdict::{Status, Verdict};

/// Canonical check names, from strongest-looking to weakest.
pub const CHECK_NAMES: [&str; 8] = [
    "strong",
    "epsilon_crossed",
    "epsilon_finite",
    "epsilon_strong",
    "virtually_epsilon_strong",
    "essentially_epsilon_strong",
    "nearly_epsilon_strong",
    "symmetric",
];

/// `(stronger, weaker)` pairs valid for every graded ring.
const IMPLICATIONS: [(&str, &str); 7] = [
    ("epsilon_crossed", "epsilon_strong"),
    ("epsilon_finite", "epsilon_strong"),
    ("epsilon_strong", "virtually_epsilon_strong"),
    ("virtually_epsilon_strong", "essentially_epsilon_strong"),
    ("essentially_epsilon_strong", "nearly_epsilon_strong"),
    ("nearly_epsilon_strong", "symmetric"),
    ("strong", "symmetric"),
];

/// Valid for unital rings only.
const UNITAL_IMPLICATION: (&str, &str) = ("strong", "epsilon_strong");

/// Properties passed from a grading to every induced quotient grading.
const INHERITED: [&str; 3] = ["strong", "symmetric", "nearly_epsilon_strong"];

fn implications_for<R: GradedRing>(ring: &R) -> Vec<(&'static str, &'static str)> {
    let mut out = IMPLICATIONS.to_vec();
    if ring.identity().is_some() {
        out.push(UNITAL_IMPLICATION);
    }
    out
}

/// Maps user spellings (`epsilon-strong`, `virtually`, ...) to a canonical
/// check name.
pub fn canonical_check(name: &str) -> Result<&'static str, AnalysisError> {
    let n = name.trim().to_ascii_lowercase().replace(['-', ' '], "_");
    let n = match n.as_str() {
        "nearly" => "nearly_epsilon_strong",
        "essentially" => "essentially_epsilon_strong",
        "virtually" => "virtually_epsilon_strong",
        "crossed" | "epsilon_crossed_product" => "epsilon_crossed",
        other => other,
    };
    CHECK_NAMES.iter().copied().find(|c| *c == n).ok_or_else(|| AnalysisError::UnknownCheck(name.to_string()))
}

/// All checks on one grading after reconciliation along the implications.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyReport {
    pub grading: String,
    pub verdicts: Vec<Verdict>,
    pub defects: Vec<String>,
}

impl HierarchyReport {
    pub fn get(&self, check: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.check == check)
    }

    pub fn status(&self, check: &str) -> Option<Status> {
        self.get(check).map(|v| v.status)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub ring: String,
    pub parent: HierarchyReport,
    pub induced: Option<HierarchyReport>,
    pub defects: Vec<String>,
}

impl<'a, R: GradedRing> InducedGrading<'a, R> {
    pub fn run_check(&self, name: &str) -> Result<Verdict, AnalysisError> {
        Ok(match canonical_check(name)? {
            "strong" => self.check_strong(),
            "symmetric" => self.check_symmetric(),
            "nearly_epsilon_strong" => self.check_nearly(),
            "essentially_epsilon_strong" => self.check_essentially(),
            "virtually_epsilon_strong" => self.check_virtually(),
            "epsilon_strong" => self.check_epsilon_strong()?.0,
            "epsilon_finite" => self.check_epsilon_finite()?,
            "epsilon_crossed" => self.check_epsilon_crossed()?,
            other => unreachable!("canonical name {other}"),
        })
    }

    /// Runs every check and reconciles the results along the hierarchy.
    pub fn hierarchy(&self) -> Result<HierarchyReport, AnalysisError> {
        let mut verdicts = Vec::new();
        for name in CHECK_NAMES {
            verdicts.push(self.run_check(name)?);
        }
        let implications = implications_for(self.ring());
        let mut defects = reconcile(&mut verdicts, &implications);
        let upper = self.greatest_idempotent_condition()?;
        defects.extend(upper.discrepancies);
        Ok(HierarchyReport { grading: self.label(), verdicts, defects })
    }
}

/// Propagates `Holds` down and `Fails` up the implications; a stronger class
/// holding while a weaker one fails is a defect.
pub fn reconcile(verdicts: &mut [Verdict], implications: &[(&str, &str)]) -> Vec<String> {
    let mut defects = Vec::new();
    let index = |vs: &[Verdict], name: &str| vs.iter().position(|v| v.check == name);
    loop {
        let mut changed = false;
        for &(strong, weak) in implications {
            let (Some(i), Some(j)) = (index(verdicts, strong), index(verdicts, weak)) else { continue };
            let (a, b) = (verdicts[i].status, verdicts[j].status);
            match (a, b) {
                (Status::Holds, Status::UpToBound) => {
                    let bound = verdicts[j].bound;
                    verdicts[j] = Verdict::holds(weak, bound, format!("implied by {strong}"));
                    changed = true;
                }
                (Status::UpToBound, Status::Fails) => {
                    let bound = verdicts[i].bound;
                    let why = verdicts[j].witness.clone().unwrap_or_default();
                    verdicts[i] = Verdict::fails(strong, bound, format!("{weak} fails: {why}"));
                    changed = true;
                }
                (Status::Holds, Status::Fails) => {
                    let d = format!("{strong} holds but {weak} fails");
                    if !defects.contains(&d) {
                        defects.push(d);
                    }
                }
                _ => {}
            }
        }
        if !changed {
            return defects;
        }
    }
}

/// Classifies the ring's own grading and, when `quotient` is given, the
/// induced grading. Strongness, symmetry and near epsilon-strongness of the
/// parent pass to the induced grading; a failed induced check contradicting
/// this is reported as a defect.
pub fn classify<R: GradedRing>(
    ring: &R,
    quotient: Option<Quotient>,
    bound: usize,
) -> Result<Classification, AnalysisError> {
    let parent = InducedGrading::parent(ring, bound).hierarchy()?;
    let mut defects: Vec<String> = parent.defects.iter().map(|d| format!("parent: {d}")).collect();
    let induced = match quotient {
        Some(q) if !q.is_trivial() => {
            let mut report = InducedGrading::new(ring, q, bound)?.hierarchy()?;
            defects.extend(report.defects.iter().map(|d| format!("induced: {d}")));
            let mut inherited = false;
            for check in INHERITED {
                if parent.status(check) != Some(Status::Holds) {
                    continue;
                }
                let Some(v) = report.verdicts.iter_mut().find(|v| v.check == check) else { continue };
                match v.status {
                    Status::Fails => {
                        defects.push(format!("{check} holds for the parent grading but fails for the induced grading"))
                    }
                    Status::UpToBound => {
                        *v = Verdict::holds(check, bound, "inherited from the parent grading");
                        inherited = true;
                    }
                    Status::Holds => {}
                }
            }
            if inherited {
                let implications = implications_for(ring);
                for d in reconcile(&mut report.verdicts, &implications) {
                    defects.push(format!("induced: {d}"));
                }
            }
            Some(report)
        }
        _ => None,
    };
    Ok(Classification { ring: ring.describe(), parent, induced, defects })
}
