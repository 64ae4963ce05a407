//! Grading groups: the integers and finite Cayley-table groups, their normal
//! subgroups, quotients and bounded enumeration windows.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),
    #[error("element {0} is outside the group")]
    OutOfRange(i64),
}

/// An element of a grading group: an integer for `Z`, or a table index for a
/// finite group. Elements carry no group handle; operations go through
/// [`Group`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement(pub i64);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// The grading group `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    Integers,
    Finite(Arc<FiniteGroup>),
}

/// Serialized group description, as it appears in scenario files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Integers,
    Finite { cayley: Vec<Vec<usize>> },
}

impl Group {
    pub fn integers() -> Group {
        Group::Integers
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Group, GroupError> {
        match spec {
            GroupSpec::Integers => Ok(Group::Integers),
            GroupSpec::Finite { cayley } => Group::from_cayley(cayley.clone()),
        }
    }

    pub fn to_spec(&self) -> GroupSpec {
        match self {
            Group::Integers => GroupSpec::Integers,
            Group::Finite(fg) => GroupSpec::Finite { cayley: fg.table.clone() },
        }
    }

    /// Validates a Cayley table: square, Latin, with a two-sided identity,
    /// inverses, and associative.
    pub fn from_cayley(table: Vec<Vec<usize>>) -> Result<Group, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::MalformedTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable(format!("row {i} has length {} (expected {n})", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::MalformedTable(format!("entry {bad} out of range in row {i}")));
            }
            let distinct: BTreeSet<_> = row.iter().collect();
            if distinct.len() != n {
                return Err(GroupError::MalformedTable(format!("row {i} repeats an entry (not a Latin square)")));
            }
        }
        for j in 0..n {
            let distinct: BTreeSet<_> = table.iter().map(|row| row[j]).collect();
            if distinct.len() != n {
                return Err(GroupError::MalformedTable(format!("column {j} repeats an entry (not a Latin square)")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::MalformedTable("no two-sided identity".into()))?;
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or_else(|| GroupError::MalformedTable(format!("element {x} has no two-sided inverse")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::MalformedTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(Group::Finite(Arc::new(FiniteGroup { table, identity, inverses })))
    }

    /// The cyclic group of order `n` with elements `0..n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Group {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Group::from_cayley(table).expect("addition table is a group")
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Group::Finite(_))
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Integers => None,
            Group::Finite(fg) => Some(fg.order()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Integers => GroupElement(0),
            Group::Finite(fg) => GroupElement(fg.identity as i64),
        }
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        match self {
            Group::Integers => true,
            Group::Finite(fg) => g.0 >= 0 && (g.0 as usize) < fg.order(),
        }
    }

    pub fn check(&self, g: GroupElement) -> Result<GroupElement, GroupError> {
        if self.contains(g) {
            Ok(g)
        } else {
            Err(GroupError::OutOfRange(g.0))
        }
    }

    pub fn op(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        match self {
            Group::Integers => GroupElement(a.0 + b.0),
            Group::Finite(fg) => GroupElement(fg.table[a.0 as usize][b.0 as usize] as i64),
        }
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        match self {
            Group::Integers => GroupElement(-a.0),
            Group::Finite(fg) => GroupElement(fg.inverses[a.0 as usize] as i64),
        }
    }

    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            Group::Integers => None,
            Group::Finite(fg) => Some((0..fg.order() as i64).map(GroupElement).collect()),
        }
    }
}

/// For `Z` returns `-bound..=bound`; finite groups ignore the bound and
/// return every element.
pub fn enumerate_window(group: &Group, bound: usize) -> Vec<GroupElement> {
    match group {
        Group::Integers => {
            let b = bound as i64;
            (-b..=b).map(GroupElement).collect()
        }
        Group::Finite(fg) => (0..fg.order() as i64).map(GroupElement).collect(),
    }
}

/// The window reordered outward from the identity: `0, 1, -1, 2, -2, ...`
/// for `Z`, table order for finite groups.
pub fn centered_window(group: &Group, bound: usize) -> Vec<GroupElement> {
    let mut w = enumerate_window(group, bound);
    if let Group::Integers = group {
        w.sort_by_key(|g| (g.0.abs(), g.0 < 0));
    }
    w
}

/// A normal subgroup: `mZ` for the integers, an explicit member set for
/// finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalSubgroup {
    Multiples(u64),
    Members(Vec<GroupElement>),
}

impl NormalSubgroup {
    pub fn trivial(group: &Group) -> NormalSubgroup {
        match group {
            Group::Integers => NormalSubgroup::Multiples(0),
            Group::Finite(_) => NormalSubgroup::Members(vec![group.identity()]),
        }
    }

    pub fn multiples(m: u64) -> NormalSubgroup {
        NormalSubgroup::Multiples(m)
    }

    /// Validates a finite member set: contains the identity, closed under the
    /// operation and inverses, and stable under conjugation.
    pub fn members(group: &Group, members: &[GroupElement]) -> Result<NormalSubgroup, GroupError> {
        let Group::Finite(_) = group else {
            return Err(GroupError::NotSubgroup("subgroups of Z are given as multiples mZ".into()));
        };
        let set: BTreeSet<GroupElement> = members.iter().copied().collect();
        for &g in &set {
            group.check(g)?;
        }
        if !set.contains(&group.identity()) {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&group.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !set.contains(&group.op(a, b)) {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} not in the set")));
                }
            }
        }
        for g in group.elements().unwrap_or_default() {
            for &n in &set {
                let conj = group.op(group.op(g, n), group.inv(g));
                if !set.contains(&conj) {
                    return Err(GroupError::NotNormal(format!("{g}*{n}*{g}^-1 = {conj} leaves the subgroup")));
                }
            }
        }
        Ok(NormalSubgroup::Members(set.into_iter().collect()))
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            NormalSubgroup::Multiples(m) => *m == 0,
            NormalSubgroup::Members(m) => m.len() == 1,
        }
    }
}

/// A coset `gN`. Equality, ordering and hashing use only the canonical key.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Coset {
    pub key: i64,
    pub representative: GroupElement,
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for Coset {}
impl PartialOrd for Coset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Coset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}
impl Hash for Coset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.key)
    }
}

/// The quotient `G/N` together with the projection `coset_of`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    group: Group,
    subgroup: NormalSubgroup,
}

impl Quotient {
    pub fn new(group: &Group, subgroup: NormalSubgroup) -> Result<Quotient, GroupError> {
        let subgroup = match (&group, subgroup) {
            (Group::Integers, NormalSubgroup::Multiples(m)) => NormalSubgroup::Multiples(m),
            (Group::Integers, NormalSubgroup::Members(_)) => {
                return Err(GroupError::NotSubgroup("subgroups of Z are given as multiples mZ".into()))
            }
            (Group::Finite(_), NormalSubgroup::Members(m)) => NormalSubgroup::members(group, &m)?,
            (Group::Finite(_), NormalSubgroup::Multiples(_)) => {
                return Err(GroupError::NotSubgroup("finite groups take explicit member sets".into()))
            }
        };
        Ok(Quotient { group: group.clone(), subgroup })
    }

    pub fn trivial(group: &Group) -> Quotient {
        Quotient { group: group.clone(), subgroup: NormalSubgroup::trivial(group) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroup(&self) -> &NormalSubgroup {
        &self.subgroup
    }

    pub fn is_trivial(&self) -> bool {
        self.subgroup.is_trivial()
    }

    pub fn coset_of(&self, g: GroupElement) -> Coset {
        let key = match (&self.group, &self.subgroup) {
            (Group::Integers, NormalSubgroup::Multiples(0)) => g.0,
            (Group::Integers, NormalSubgroup::Multiples(m)) => g.0.rem_euclid(*m as i64),
            (_, NormalSubgroup::Members(members)) => {
                members.iter().map(|&n| self.group.op(g, n).0).min().expect("subgroup contains the identity")
            }
            (Group::Finite(_), NormalSubgroup::Multiples(_)) => unreachable!("rejected in Quotient::new"),
        };
        Coset { key, representative: g }
    }

    pub fn contains(&self, coset: &Coset, g: GroupElement) -> bool {
        self.coset_of(g) == *coset
    }

    pub fn mul(&self, a: &Coset, b: &Coset) -> Coset {
        self.coset_of(self.group.op(a.representative, b.representative))
    }

    pub fn inv(&self, a: &Coset) -> Coset {
        self.coset_of(self.group.inv(a.representative))
    }

    pub fn identity(&self) -> Coset {
        self.coset_of(self.group.identity())
    }

    pub fn is_finite(&self) -> bool {
        match &self.subgroup {
            NormalSubgroup::Multiples(m) => *m > 0,
            NormalSubgroup::Members(_) => true,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.all_cosets().map(|c| c.len())
    }

    /// Every coset, when the quotient is finite; sorted by key.
    pub fn all_cosets(&self) -> Option<Vec<Coset>> {
        match (&self.group, &self.subgroup) {
            (Group::Integers, NormalSubgroup::Multiples(0)) => None,
            (Group::Integers, NormalSubgroup::Multiples(m)) => {
                Some((0..*m as i64).map(|r| Coset { key: r, representative: GroupElement(r) }).collect())
            }
            _ => {
                let mut seen = BTreeSet::new();
                for g in self.group.elements().unwrap_or_default() {
                    seen.insert(self.coset_of(g));
                }
                Some(seen.into_iter().collect())
            }
        }
    }

    /// Cosets meeting the enumeration window, sorted by key.
    pub fn window_cosets(&self, bound: usize) -> Vec<Coset> {
        if let Some(all) = self.all_cosets() {
            return all;
        }
        let set: BTreeSet<Coset> = enumerate_window(&self.group, bound).into_iter().map(|g| self.coset_of(g)).collect();
        set.into_iter().collect()
    }

    /// The quotient as a group in its own right. Finite quotients are indexed
    /// by position in [`Quotient::all_cosets`].
    pub fn as_group(&self) -> Group {
        match self.all_cosets() {
            None => Group::Integers,
            Some(cosets) => {
                let index = |c: &Coset| cosets.iter().position(|d| d == c).expect("closed");
                let table = cosets.iter().map(|a| cosets.iter().map(|b| index(&self.mul(a, b))).collect()).collect();
                Group::from_cayley(table).expect("quotient of a group is a group")
            }
        }
    }

    /// For `Z/mZ`, the (modulus, residue) pair describing an infinite coset.
    pub fn residue_class(&self, coset: &Coset) -> Option<(u64, i64)> {
        match (&self.group, &self.subgroup) {
            (Group::Integers, NormalSubgroup::Multiples(m)) if *m > 0 => Some((*m, coset.key)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        // permutations of {0,1,2} in lexicographic order
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms.iter().map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect();
        Group::from_cayley(table).unwrap()
    }

    #[test]
    fn integers_identity() {
        let g = Group::from_spec(&GroupSpec::Integers).unwrap();
        assert_eq!(g.identity(), GroupElement(0));
        assert_eq!(g.op(GroupElement(3), GroupElement(-5)), GroupElement(-2));
    }

    #[test]
    fn cyclic_four_from_table() {
        let table = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let g = Group::from_cayley(table).unwrap();
        assert_eq!(g.order(), Some(4));
        assert_eq!(g.identity(), GroupElement(0));
        assert_eq!(g.inv(GroupElement(1)), GroupElement(3));
    }

    #[test]
    fn equal_rows_rejected() {
        let err = Group::from_cayley(vec![vec![0, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::MalformedTable(_)));
    }

    #[test]
    fn latin_square_without_associativity_rejected() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(Group::from_cayley(t), Err(GroupError::MalformedTable(_))));
    }

    #[test]
    fn quotient_integers_mod_two() {
        let q = Quotient::new(&Group::Integers, NormalSubgroup::multiples(2)).unwrap();
        let cosets = q.all_cosets().unwrap();
        assert_eq!(cosets.iter().map(|c| c.key).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(q.coset_of(GroupElement(-3)).key, 1);
        assert_eq!(q.as_group().order(), Some(2));
    }

    #[test]
    fn quotient_c4_by_order_two() {
        let c4 = Group::cyclic(4);
        let q = Quotient::new(&c4, NormalSubgroup::Members(vec![GroupElement(0), GroupElement(2)])).unwrap();
        assert_eq!(q.order(), Some(2));
        assert_eq!(q.coset_of(GroupElement(3)), q.coset_of(GroupElement(1)));
    }

    #[test]
    fn s3_transposition_not_normal() {
        let g = s3();
        // {e, (12)}: index 1 swaps the last two points
        let err = Quotient::new(&g, NormalSubgroup::Members(vec![GroupElement(0), GroupElement(1)])).unwrap_err();
        assert!(matches!(err, GroupError::NotNormal(_)));
        // A3 = {e, (123), (132)} is normal
        assert!(
            Quotient::new(&g, NormalSubgroup::Members(vec![GroupElement(0), GroupElement(3), GroupElement(4)])).is_ok()
        );
    }

    #[test]
    fn non_subgroup_rejected() {
        let c4 = Group::cyclic(4);
        let err = Quotient::new(&c4, NormalSubgroup::Members(vec![GroupElement(0), GroupElement(1)])).unwrap_err();
        assert!(matches!(err, GroupError::NotSubgroup(_)));
    }

    #[test]
    fn windows() {
        let z = Group::Integers;
        assert_eq!(enumerate_window(&z, 2), [-2, -1, 0, 1, 2].map(GroupElement).to_vec());
        assert_eq!(enumerate_window(&z, 0), vec![GroupElement(0)]);
        assert_eq!(enumerate_window(&Group::cyclic(4), 1).len(), 4);
        assert_eq!(centered_window(&z, 1), [0, 1, -1].map(GroupElement).to_vec());
    }

    #[test]
    fn coset_homomorphism_and_partition() {
        for m in 1..6u64 {
            let q = Quotient::new(&Group::Integers, NormalSubgroup::multiples(m)).unwrap();
            assert_eq!(q.order(), Some(m as usize));
            let w = enumerate_window(&Group::Integers, 7);
            for &a in &w {
                for &b in &w {
                    let lhs = q.coset_of(Group::Integers.op(a, b));
                    let rhs = q.mul(&q.coset_of(a), &q.coset_of(b));
                    assert_eq!(lhs, rhs);
                }
                let owners = q.all_cosets().unwrap().into_iter().filter(|c| q.contains(c, a)).count();
                assert_eq!(owners, 1);
            }
        }
        let g = s3();
        let q = Quotient::new(&g, NormalSubgroup::Members(vec![GroupElement(0), GroupElement(3), GroupElement(4)]))
            .unwrap();
        for a in g.elements().unwrap() {
            for b in g.elements().unwrap() {
                assert_eq!(q.coset_of(g.op(a, b)), q.mul(&q.coset_of(a), &q.coset_of(b)));
            }
        }
    }
}
