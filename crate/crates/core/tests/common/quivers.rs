//! Random quivers and elements for property tests.

use std::collections::BTreeMap;

use grada::groups::Group;
use grada::leavitt::{EdgeSpec, LeavittAlgebra, LpaElement, Monomial, Path, Quiver, QuiverSpec};
use grada::numeric::rat;
use proptest::prelude::*;

/// A finite quiver given by `(src, rng, degree)` triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallQuiver {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl SmallQuiver {
    pub fn spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: (0..self.vertices).map(|v| format!("v{}", v + 1)).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, (s, r, _))| EdgeSpec {
                    id: format!("e{}", i + 1),
                    src: format!("v{}", s + 1),
                    rng: format!("v{}", r + 1),
                })
                .collect(),
            degrees: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, (_, _, d))| (format!("e{}", i + 1), *d))
                .collect::<BTreeMap<_, _>>(),
        }
    }

    pub fn algebra(&self) -> LeavittAlgebra {
        LeavittAlgebra::from_spec(&self.spec(), &Group::Integers).expect("valid quiver")
    }

    pub fn longest_path(&self) -> usize {
        let mut best = vec![0usize; self.vertices];
        for _ in 0..=self.vertices {
            for &(s, r, _) in &self.edges {
                best[s] = best[s].max(best[r] + 1);
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// A bound at which every normal monomial and every nonzero degree of
    /// an acyclic quiver is enumerated.
    pub fn exhaustive_bound(&self) -> usize {
        let l = self.longest_path();
        let d = self.edges.iter().map(|e| e.2.unsigned_abs() as usize).max().unwrap_or(1).max(1);
        (2 * l * d).max(1)
    }
}

/// Acyclic quivers: every edge runs from a lower to a higher vertex.
pub fn acyclic_quiver(
    max_vertices: usize,
    max_edges: usize,
    degrees: std::ops::RangeInclusive<i64>,
) -> impl Strategy<Value = SmallQuiver> {
    (1..=max_vertices).prop_flat_map(move |n| {
        let pair = (0..n, 0..n, degrees.clone());
        prop::collection::vec(pair, 0..=max_edges).prop_map(move |raw| SmallQuiver {
            vertices: n,
            edges: raw.into_iter().filter(|(a, b, _)| a != b).map(|(a, b, d)| (a.min(b), a.max(b), d)).collect(),
        })
    })
}

/// Finite quivers with cycles and loops allowed.
pub fn any_quiver() -> impl Strategy<Value = SmallQuiver> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 1..=4)
            .prop_map(move |raw| SmallQuiver { vertices: n, edges: raw.into_iter().map(|(a, b)| (a, b, 1)).collect() })
    })
}

/// A random walk forward from `start` following `choices`.
pub fn walk_forward(q: &Quiver, start: usize, choices: &[u8]) -> Path {
    let mut p = Path::vertex(start);
    for &c in choices {
        let v = p.range(q);
        let out = q.out_edges(v);
        if out.is_empty() {
            break;
        }
        p = p.extend(&[out[c as usize % out.len()]]);
    }
    p
}

/// A random path ending at `end`, built backwards along in-edges.
pub fn walk_backward(q: &Quiver, end: usize, choices: &[u8]) -> Path {
    let mut edges: Vec<usize> = Vec::new();
    let mut v = end;
    for &c in choices {
        let incoming: Vec<usize> = (0..q.edges().len()).filter(|&e| q.edge(e).rng == v).collect();
        if incoming.is_empty() {
            break;
        }
        let e = incoming[c as usize % incoming.len()];
        edges.push(e);
        v = q.edge(e).src;
    }
    edges.reverse();
    Path { start: v, edges }
}

/// Raw (possibly non-normal) monomial data: start vertex and two walks.
pub type MonoSeed = (u8, Vec<u8>, Vec<u8>);

pub fn mono_seed() -> impl Strategy<Value = MonoSeed> {
    (any::<u8>(), prop::collection::vec(any::<u8>(), 0..=3), prop::collection::vec(any::<u8>(), 0..=3))
}

pub fn monomial_from(q: &Quiver, n: usize, seed: &MonoSeed) -> Monomial {
    let real = walk_forward(q, seed.0 as usize % n, &seed.1);
    let ghost = walk_backward(q, real.range(q), &seed.2);
    Monomial::new(q, real, ghost).expect("walks share their range")
}

pub type ElemSeed = Vec<(MonoSeed, i8)>;

pub fn elem_seed() -> impl Strategy<Value = ElemSeed> {
    prop::collection::vec((mono_seed(), -3i8..=3), 1..=3)
}

pub fn raw_terms(q: &Quiver, n: usize, seed: &ElemSeed) -> Vec<(Monomial, grada::numeric::Rational)> {
    seed.iter().map(|(m, c)| (monomial_from(q, n, m), rat(*c as i64))).collect()
}

pub fn element_from(q: &Quiver, n: usize, seed: &ElemSeed) -> LpaElement {
    raw_terms(q, n, seed)
        .into_iter()
        .fold(LpaElement::zero(), |acc, (m, c)| acc.add(&LpaElement::from_monomial(q, m).scale(&c)))
}
