//! Property bodies shared by the proptest suites and the acceptance target.

use grada::analysis::{classify, InducedGrading};
use grada::groups::{Group, NormalSubgroup, Quotient};
use grada::idempotents::{idem_leq, join, tominaga_left_unit, tominaga_right_unit, SeqRing};
use grada::leavitt::{monomial_mul, normal_form, LpaElement, Monomial, Quiver, RewritePolicy};
use grada::numeric::{rat, FinExSeq};
use grada::verdict::Status;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use super::quivers::{
    acyclic_quiver, any_quiver, elem_seed, element_from, mono_seed, monomial_from, raw_terms, walk_backward,
    walk_forward, ElemSeed, MonoSeed, SmallQuiver,
};

pub const CASES: u32 = 200;

pub fn config() -> Config {
    Config { cases: CASES, failure_persistence: None, ..Config::default() }
}

fn quiver_of(sq: &SmallQuiver) -> Quiver {
    sq.algebra().quiver().clone()
}

pub fn confluence(sq: &SmallQuiver, seed: &ElemSeed, other: &ElemSeed, rseed: u64) -> Result<(), TestCaseError> {
    let q = quiver_of(sq);
    let raw = raw_terms(&q, sq.vertices, seed);
    let ordered = normal_form(&q, raw.clone(), RewritePolicy::Ordered);
    let shuffled = normal_form(&q, raw, RewritePolicy::Random(rseed));
    prop_assert_eq!(&ordered, &shuffled);
    for m in ordered.terms().keys() {
        prop_assert!(m.is_normal(&q));
    }
    let x = element_from(&q, sq.vertices, seed);
    let y = element_from(&q, sq.vertices, other);
    prop_assert_eq!(x.mul(&q, &y), x.mul_with(&q, &y, RewritePolicy::Random(rseed)));
    Ok(())
}

pub fn associativity(sq: &SmallQuiver, a: &ElemSeed, b: &ElemSeed, c: &ElemSeed) -> Result<(), TestCaseError> {
    let q = quiver_of(sq);
    let (x, y, z) =
        (element_from(&q, sq.vertices, a), element_from(&q, sq.vertices, b), element_from(&q, sq.vertices, c));
    prop_assert_eq!(x.mul(&q, &y).mul(&q, &z), x.mul(&q, &y.mul(&q, &z)));
    Ok(())
}

/// Which of the four product cases a pair of monomials falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductCase {
    Extends,
    Retracts,
    Equal,
    Zero,
}

/// `(γδ*)(λρ*)` by cancelling `δ*λ` letter by letter, `e*f = [e = f] r(e)`.
pub fn cancel_product(q: &Quiver, a: &Monomial, b: &Monomial) -> (ProductCase, Option<Monomial>) {
    if a.ghost.start != b.real.start {
        return (ProductCase::Zero, None);
    }
    let (d, l) = (&a.ghost.edges, &b.real.edges);
    let common = d.len().min(l.len());
    for i in 0..common {
        if d[i] != l[i] {
            return (ProductCase::Zero, None);
        }
    }
    let case = match d.len().cmp(&l.len()) {
        std::cmp::Ordering::Less => ProductCase::Extends,
        std::cmp::Ordering::Greater => ProductCase::Retracts,
        std::cmp::Ordering::Equal => ProductCase::Equal,
    };
    let mut real = a.real.clone();
    let mut ghost = b.ghost.clone();
    for &e in &l[common..] {
        real = real.extend(&[e]);
    }
    for &e in &d[common..] {
        ghost = ghost.extend(&[e]);
    }
    (case, Some(Monomial::new(q, real, ghost).expect("cancellation keeps ranges equal")))
}

pub fn four_cases(sq: &SmallQuiver, a: &MonoSeed, b: &MonoSeed, force_equal: bool) -> Result<(), TestCaseError> {
    let q = quiver_of(sq);
    let x = monomial_from(&q, sq.vertices, a);
    let mut y = monomial_from(&q, sq.vertices, b);
    if force_equal {
        // Let the second real path extend the first ghost path, so the
        // extending and equal cases occur often.
        let tail = walk_forward(&q, x.ghost.range(&q), &b.1);
        let real = x.ghost.extend(&tail.edges);
        let ghost = walk_backward(&q, real.range(&q), &b.2);
        y = Monomial::new(&q, real, ghost).expect("walks share their range");
    }
    let (_, expected) = cancel_product(&q, &x, &y);
    prop_assert_eq!(monomial_mul(&x, &y), expected.clone());
    let lhs = LpaElement::from_monomial(&q, x.clone()).mul(&q, &LpaElement::from_monomial(&q, y.clone()));
    let rhs = expected.map_or_else(LpaElement::zero, |m| LpaElement::from_monomial(&q, m));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn involution(sq: &SmallQuiver, a: &ElemSeed, b: &ElemSeed) -> Result<(), TestCaseError> {
    let q = quiver_of(sq);
    let (x, y) = (element_from(&q, sq.vertices, a), element_from(&q, sq.vertices, b));
    prop_assert_eq!(x.mul(&q, &y).involution(&q), y.involution(&q).mul(&q, &x.involution(&q)));
    prop_assert_eq!(x.involution(&q).involution(&q), x);
    Ok(())
}

/// A 0/1 sequence with finitely many exceptions.
pub fn idempotent_seq() -> impl Strategy<Value = FinExSeq> {
    (any::<bool>(), prop::collection::btree_map(-6i64..=6, any::<bool>(), 0..5))
        .prop_map(|(d, ex)| FinExSeq::new(rat(d as i64), ex.into_iter().map(|(i, b)| (i, rat(b as i64)))))
}

pub fn any_seq() -> impl Strategy<Value = FinExSeq> {
    (-2i64..=2, prop::collection::btree_map(-6i64..=6, -3i64..=3, 0..5))
        .prop_map(|(d, ex)| FinExSeq::new(rat(d), ex.into_iter().map(|(i, v)| (i, rat(v)))))
}

pub fn absorption(e: &FinExSeq, g: &FinExSeq, y: &FinExSeq) -> Result<(), TestCaseError> {
    let ring = SeqRing;
    let f = join(&ring, e, g).expect("commuting idempotents");
    prop_assert!(idem_leq(&ring, e, &f).unwrap());
    let x = e * y;
    prop_assert_eq!(&x, &(e * &x));
    prop_assert_eq!(&x, &(&f * &x));
    prop_assert_eq!(&x, &(&x * &f));
    Ok(())
}

/// Absorption inside a Leavitt path algebra, with vertex-sum idempotents.
pub fn absorption_lpa(sq: &SmallQuiver, small: &[bool], extra: &[bool], y: &ElemSeed) -> Result<(), TestCaseError> {
    let alg = sq.algebra();
    let q = alg.quiver();
    let pick = |mask: &dyn Fn(usize) -> bool| {
        (0..sq.vertices).filter(|&v| mask(v)).fold(LpaElement::zero(), |acc, v| acc.add(&LpaElement::vertex(v)))
    };
    let e = pick(&|v| small.get(v).copied().unwrap_or(false));
    let f = pick(&|v| small.get(v).copied().unwrap_or(false) || extra.get(v).copied().unwrap_or(false));
    prop_assert!(idem_leq(&alg, &e, &f).unwrap());
    let y = element_from(q, sq.vertices, y);
    let left = e.mul(q, &y);
    prop_assert_eq!(&left, &f.mul(q, &left));
    let right = y.mul(q, &e);
    prop_assert_eq!(&right, &right.mul(q, &f));
    Ok(())
}

pub fn tominaga(pairs: &[(FinExSeq, FinExSeq)]) -> Result<(), TestCaseError> {
    let ring = SeqRing;
    let left: Vec<(FinExSeq, FinExSeq)> = pairs.iter().map(|(u, y)| (u.clone(), u * y)).collect();
    let e = tominaga_left_unit(&ring, &left).expect("every x_i has a left unit");
    for (_, x) in &left {
        prop_assert_eq!(&(&e * x), x);
    }
    let e = tominaga_right_unit(&ring, &left).expect("every x_i has a right unit");
    for (_, x) in &left {
        prop_assert_eq!(&(x * &e), x);
    }
    Ok(())
}

/// Implications between the classes for unital graded rings.
pub const IMPLIED: [(&str, &str); 8] = [
    ("epsilon_crossed", "epsilon_strong"),
    ("epsilon_finite", "epsilon_strong"),
    ("epsilon_strong", "virtually_epsilon_strong"),
    ("virtually_epsilon_strong", "essentially_epsilon_strong"),
    ("essentially_epsilon_strong", "nearly_epsilon_strong"),
    ("nearly_epsilon_strong", "symmetric"),
    ("strong", "symmetric"),
    ("strong", "epsilon_strong"),
];

/// Passed from a grading to the induced quotient grading.
pub const PRESERVED: [&str; 3] = ["strong", "symmetric", "nearly_epsilon_strong"];

pub fn hierarchy(sq: &SmallQuiver, m: u64) -> Result<(), TestCaseError> {
    let alg = sq.algebra();
    let quotient = Quotient::new(&Group::Integers, NormalSubgroup::multiples(m)).unwrap();
    let c = classify(&alg, Some(quotient), sq.exhaustive_bound()).unwrap();
    prop_assert!(c.defects.is_empty(), "{:?}", c.defects);
    let induced = c.induced.expect("nontrivial quotient");
    for report in [&c.parent, &induced] {
        for (strong, weak) in IMPLIED {
            if report.status(strong) == Some(Status::Holds) {
                prop_assert_ne!(report.status(weak), Some(Status::Fails), "{} ⇒ {} on {:?}", strong, weak, sq);
            }
        }
    }
    // The induced grading checked on its own, without inheritance.
    let quotient = Quotient::new(&Group::Integers, NormalSubgroup::multiples(m)).unwrap();
    let standalone = InducedGrading::new(&alg, quotient, sq.exhaustive_bound()).unwrap().hierarchy().unwrap();
    for check in PRESERVED {
        if c.parent.status(check) == Some(Status::Holds) {
            prop_assert_eq!(induced.status(check), Some(Status::Holds), "{} on {:?}", check, sq);
            prop_assert_eq!(standalone.status(check), Some(Status::Holds), "standalone {} on {:?}", check, sq);
        }
    }
    Ok(())
}

pub type Runner = fn(&mut TestRunner) -> Result<(), String>;

fn run<S: Strategy>(
    runner: &mut TestRunner,
    s: S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner.run(&s, f).map_err(|e| e.to_string())
}

/// Every property suite, for use outside the proptest macro.
pub fn suites() -> Vec<(&'static str, Runner)> {
    vec![
        ("normal-form confluence", |r| {
            run(r, (any_quiver(), elem_seed(), elem_seed(), any::<u64>()), |(q, a, b, s)| confluence(&q, &a, &b, s))
        }),
        ("associativity", |r| {
            run(r, (any_quiver(), elem_seed(), elem_seed(), elem_seed()), |(q, a, b, c)| associativity(&q, &a, &b, &c))
        }),
        ("four-case product table", |r| {
            run(r, (any_quiver(), mono_seed(), mono_seed(), any::<bool>()), |(q, a, b, f)| four_cases(&q, &a, &b, f))
        }),
        ("involution", |r| run(r, (any_quiver(), elem_seed(), elem_seed()), |(q, a, b)| involution(&q, &a, &b))),
        ("absorption transfer", |r| {
            run(r, (idempotent_seq(), idempotent_seq(), any_seq()), |(e, g, y)| absorption(&e, &g, &y))?;
            run(
                r,
                (
                    any_quiver(),
                    prop::collection::vec(any::<bool>(), 3),
                    prop::collection::vec(any::<bool>(), 3),
                    elem_seed(),
                ),
                |(q, s, x, y)| absorption_lpa(&q, &s, &x, &y),
            )
        }),
        ("tominaga unit", |r| run(r, prop::collection::vec((idempotent_seq(), any_seq()), 1..=6), |p| tominaga(&p))),
        ("hierarchy and preservation", |r| {
            run(r, (acyclic_quiver(6, 8, 1..=2), prop_oneof![Just(2u64), Just(3u64)]), |(q, m)| hierarchy(&q, m))
        }),
    ]
}
