//! Cross-checks of the classifier against the brute-force oracle and
//! against the greatest-idempotent criterion.

use grada::analysis::{GradedRing, InducedGrading};
use grada::groups::{Group, NormalSubgroup, Quotient};
use grada::leavitt::LpaElement;
use grada::verdict::Status;

use super::oracle::{Elem, Oracle};
use super::quivers::SmallQuiver;

pub fn oracle_of(sq: &SmallQuiver) -> Oracle {
    Oracle::new(sq.vertices, &sq.edges)
}

pub fn import(oracle: &Oracle, x: &LpaElement) -> Elem {
    oracle.import(
        x.terms()
            .iter()
            .map(|(m, c)| ((m.real.start, m.real.edges.clone()), (m.ghost.start, m.ghost.edges.clone()), c.clone())),
    )
}

fn quotient(m: u64) -> Quotient {
    Quotient::new(&Group::Integers, NormalSubgroup::multiples(m)).expect("subgroup of Z")
}

fn exact(s: Status) -> Option<bool> {
    match s {
        Status::Holds => Some(true),
        Status::Fails => Some(false),
        Status::UpToBound => None,
    }
}

/// Strongness and epsilon-strongness of the grading by `Z/mZ` (`m = 0`
/// for `Z` itself) agree with the oracle, coset by coset, including the
/// identity elements.
pub fn oracle_agrees(sq: &SmallQuiver, m: u64) -> Result<(), String> {
    let alg = sq.algebra();
    let oracle = oracle_of(sq);
    let g = InducedGrading::new(&alg, quotient(m), sq.exhaustive_bound()).map_err(|e| e.to_string())?;
    let strong = exact(g.check_strong().status).ok_or_else(|| format!("strong not decided on {sq:?}, m = {m}"))?;
    if strong != oracle.strong(m as i64) {
        return Err(format!("strong: classifier {strong}, oracle {} on {sq:?}, m = {m}", !strong));
    }
    let (verdict, witnesses) = g.check_epsilon_strong().map_err(|e| e.to_string())?;
    let eps = exact(verdict.status).ok_or_else(|| format!("epsilon_strong not decided on {sq:?}, m = {m}"))?;
    if eps != oracle.epsilon_strong(m as i64) {
        return Err(format!("epsilon_strong: classifier {eps}, oracle {} on {sq:?}, m = {m}", !eps));
    }
    for w in &witnesses {
        let c = w.coset.representative.0;
        let expected = oracle.ideal_identity(c, m as i64);
        match (w.status, expected) {
            (Status::Holds, Some(id)) => {
                if import(&oracle, &w.candidate) != id {
                    return Err(format!(
                        "coset {}: identity {} differs from the oracle on {sq:?}",
                        w.coset,
                        alg.render(&w.candidate)
                    ));
                }
            }
            (Status::Fails, None) => {}
            (s, e) => {
                return Err(format!(
                    "coset {}: classifier {s}, oracle unital = {} on {sq:?}, m = {m}",
                    w.coset,
                    e.is_some()
                ))
            }
        }
    }
    Ok(())
}

/// The greatest-idempotent criterion and the direct check reach the same
/// per-coset conclusions.
pub fn upper_bound_agrees<R: GradedRing>(ring: &R, q: Quotient, bound: usize) -> Result<(), String> {
    let g = InducedGrading::new(ring, q, bound).map_err(|e| e.to_string())?;
    let report = g.greatest_idempotent_condition().map_err(|e| e.to_string())?;
    let (_, witnesses) = g.check_epsilon_strong().map_err(|e| e.to_string())?;
    if !report.agrees() {
        return Err(format!("{}: {:?}", ring.describe(), report.discrepancies));
    }
    for unit in &report.cosets {
        let w = witnesses.iter().find(|w| w.coset == unit.coset).ok_or("coset sets differ")?;
        if unit.status != w.status {
            return Err(format!("{} coset {}: {} versus {}", ring.describe(), unit.coset, unit.status, w.status));
        }
    }
    Ok(())
}

pub fn upper_bound_agrees_on_quiver(sq: &SmallQuiver, m: u64) -> Result<(), String> {
    upper_bound_agrees(&sq.algebra(), quotient(m), sq.exhaustive_bound())
}

/// Every simple acyclic quiver on at most `max` vertices, edges running
/// from lower to higher vertices, all of degree 1.
pub fn simple_dags(max: usize) -> Vec<SmallQuiver> {
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &(i, j))| (i, j, 1)).collect();
            out.push(SmallQuiver { vertices: n, edges });
        }
    }
    out
}
