//! Idempotent order, joins and meets of commuting idempotents, join-closure,
//! and Tominaga's construction of a common one-sided unit.

use std::fmt::Debug;

use thiserror::Error;

use crate::numeric::FinExSeq;

/// A ring whose elements can be compared exactly.
pub trait Carrier {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_idempotent(&self, a: &Self::Elem) -> bool {
        self.mul(a, a) == *a
    }

    fn commute(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

/// The ring of finite-exception sequences.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeqRing;

impl Carrier for SeqRing {
    type Elem = FinExSeq;

    fn zero(&self) -> FinExSeq {
        FinExSeq::zero()
    }
    fn add(&self, a: &FinExSeq, b: &FinExSeq) -> FinExSeq {
        a + b
    }
    fn sub(&self, a: &FinExSeq, b: &FinExSeq) -> FinExSeq {
        a - b
    }
    fn mul(&self, a: &FinExSeq, b: &FinExSeq) -> FinExSeq {
        a * b
    }
    fn is_zero(&self, a: &FinExSeq) -> bool {
        a.is_zero()
    }
    fn is_idempotent(&self, a: &FinExSeq) -> bool {
        a.is_idempotent()
    }
    fn commute(&self, _: &FinExSeq, _: &FinExSeq) -> bool {
        true
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdemError {
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("idempotents do not commute: {0} and {1}")]
    NonCommuting(String, String),
    #[error("unit {index} does not fix its element")]
    BadWitness { index: usize },
    #[error("unit {index} does not fix the residual element at induction step {step}")]
    ResidualNotFixed { index: usize, step: usize },
}

fn require_idempotent<C: Carrier>(c: &C, a: &C::Elem) -> Result<(), IdemError> {
    if c.is_idempotent(a) {
        Ok(())
    } else {
        Err(IdemError::NotIdempotent(format!("{a:?}")))
    }
}

fn require_commuting<C: Carrier>(c: &C, a: &C::Elem, b: &C::Elem) -> Result<(), IdemError> {
    if c.commute(a, b) {
        Ok(())
    } else {
        Err(IdemError::NonCommuting(format!("{a:?}"), format!("{b:?}")))
    }
}

/// A duplicate-free list of idempotents.
#[derive(Debug, Clone, PartialEq)]
pub struct IdemSet<E> {
    elements: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> IdemSet<E> {
    pub fn new<C: Carrier<Elem = E>>(c: &C, items: impl IntoIterator<Item = E>) -> Result<IdemSet<E>, IdemError> {
        let mut elements: Vec<E> = Vec::new();
        for x in items {
            require_idempotent(c, &x)?;
            if !elements.contains(&x) {
                elements.push(x);
            }
        }
        Ok(IdemSet { elements })
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.elements.contains(x)
    }

    pub fn into_vec(self) -> Vec<E> {
        self.elements
    }

    /// Same elements regardless of order.
    pub fn same_set(&self, other: &IdemSet<E>) -> bool {
        self.len() == other.len() && self.elements.iter().all(|x| other.contains(x))
    }
}

/// `a <= b` iff `a = ab = ba`.
pub fn idem_leq<C: Carrier>(c: &C, a: &C::Elem, b: &C::Elem) -> Result<bool, IdemError> {
    require_idempotent(c, a)?;
    require_idempotent(c, b)?;
    Ok(leq_unchecked(c, a, b))
}

pub(crate) fn leq_unchecked<C: Carrier>(c: &C, a: &C::Elem, b: &C::Elem) -> bool {
    c.mul(a, b) == *a && c.mul(b, a) == *a
}

/// `a + b - ab` for commuting `a`, `b`.
pub fn join<C: Carrier>(c: &C, a: &C::Elem, b: &C::Elem) -> Result<C::Elem, IdemError> {
    require_commuting(c, a, b)?;
    Ok(join_unchecked(c, a, b))
}

pub(crate) fn join_unchecked<C: Carrier>(c: &C, a: &C::Elem, b: &C::Elem) -> C::Elem {
    c.sub(&c.add(a, b), &c.mul(a, b))
}

pub fn meet<C: Carrier>(c: &C, a: &C::Elem, b: &C::Elem) -> Result<C::Elem, IdemError> {
    require_commuting(c, a, b)?;
    Ok(c.mul(a, b))
}

pub fn are_orthogonal<C: Carrier>(c: &C, a: &C::Elem, b: &C::Elem) -> bool {
    c.is_zero(&c.mul(a, b)) && c.is_zero(&c.mul(b, a))
}

fn require_pairwise_commuting<C: Carrier>(c: &C, xs: &[C::Elem]) -> Result<(), IdemError> {
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            require_commuting(c, a, b)?;
        }
    }
    Ok(())
}

/// Smallest join-closed superset.
pub fn join_closure<C: Carrier>(c: &C, s: &IdemSet<C::Elem>) -> Result<IdemSet<C::Elem>, IdemError> {
    let (closed, _) = join_closure_capped(c, s, usize::MAX)?;
    Ok(closed)
}

/// Join-closure that stops once `cap` elements exist; the flag reports
/// whether the fixpoint was reached.
pub fn join_closure_capped<C: Carrier>(
    c: &C,
    s: &IdemSet<C::Elem>,
    cap: usize,
) -> Result<(IdemSet<C::Elem>, bool), IdemError> {
    require_pairwise_commuting(c, s.elements())?;
    let mut elems = s.elements.clone();
    let mut frontier_start = 0;
    while frontier_start < elems.len() {
        let frontier_end = elems.len();
        for i in frontier_start..frontier_end {
            for j in 0..i {
                let x = join_unchecked(c, &elems[i], &elems[j]);
                if !elems.contains(&x) {
                    if elems.len() >= cap {
                        return Ok((IdemSet { elements: elems }, false));
                    }
                    elems.push(x);
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok((IdemSet { elements: elems }, true))
}

/// The join of a finite commuting family together with the idem_leq checks
/// showing that it dominates every member.
#[derive(Debug, Clone, PartialEq)]
pub struct Greatest<E> {
    pub element: E,
    pub dominated: Vec<usize>,
}

pub fn greatest_element<C: Carrier>(c: &C, s: &IdemSet<C::Elem>) -> Result<Option<Greatest<C::Elem>>, IdemError> {
    require_pairwise_commuting(c, s.elements())?;
    let Some(first) = s.elements.first() else {
        return Ok(None);
    };
    let top = s.elements[1..].iter().fold(first.clone(), |acc, x| join_unchecked(c, &acc, x));
    let mut dominated = Vec::with_capacity(s.len());
    for (i, x) in s.elements.iter().enumerate() {
        if !leq_unchecked(c, x, &top) {
            return Ok(None);
        }
        dominated.push(i);
    }
    Ok(Some(Greatest { element: top, dominated }))
}

/// Members with no strictly larger member.
pub fn maximal_elements<C: Carrier>(c: &C, s: &IdemSet<C::Elem>) -> IdemSet<C::Elem> {
    let xs = s.elements();
    let elements = xs.iter().filter(|a| !xs.iter().any(|b| b != *a && leq_unchecked(c, a, b))).cloned().collect();
    IdemSet { elements }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn fixes<C: Carrier>(c: &C, side: Side, u: &C::Elem, x: &C::Elem) -> bool {
    match side {
        Side::Left => c.mul(u, x) == *x,
        Side::Right => c.mul(x, u) == *x,
    }
}

fn tominaga<C: Carrier>(c: &C, side: Side, pairs: &[(C::Elem, C::Elem)]) -> Result<C::Elem, IdemError> {
    for (i, (u, x)) in pairs.iter().enumerate() {
        if !fixes(c, side, u, x) {
            return Err(IdemError::BadWitness { index: i });
        }
    }
    tominaga_step(c, side, pairs.to_vec(), 0)
}

fn tominaga_step<C: Carrier>(
    c: &C,
    side: Side,
    mut pairs: Vec<(C::Elem, C::Elem)>,
    step: usize,
) -> Result<C::Elem, IdemError> {
    let Some((un, _)) = pairs.pop() else {
        return Ok(c.zero());
    };
    if pairs.is_empty() {
        return Ok(un);
    }
    let residual: Vec<(C::Elem, C::Elem)> = pairs
        .into_iter()
        .map(|(u, x)| {
            let v = match side {
                Side::Left => c.sub(&x, &c.mul(&un, &x)),
                Side::Right => c.sub(&x, &c.mul(&x, &un)),
            };
            (u, v)
        })
        .collect();
    for (i, (u, v)) in residual.iter().enumerate() {
        if !fixes(c, side, u, v) {
            return Err(IdemError::ResidualNotFixed { index: i, step });
        }
    }
    let inner = tominaga_step(c, side, residual, step + 1)?;
    let cross = match side {
        Side::Left => c.mul(&inner, &un),
        Side::Right => c.mul(&un, &inner),
    };
    Ok(c.sub(&c.add(&inner, &un), &cross))
}

/// An element `e` with `e * x_i = x_i` for every pair `(u_i, x_i)`, built by
/// induction: `e = e' + u_n - e' u_n`, where `e'` fixes the residuals
/// `x_i - u_n x_i`.
pub fn tominaga_left_unit<C: Carrier>(c: &C, pairs: &[(C::Elem, C::Elem)]) -> Result<C::Elem, IdemError> {
    tominaga(c, Side::Left, pairs)
}

/// Mirror of [`tominaga_left_unit`]: `x_i * e = x_i`.
pub fn tominaga_right_unit<C: Carrier>(c: &C, pairs: &[(C::Elem, C::Elem)]) -> Result<C::Elem, IdemError> {
    tominaga(c, Side::Right, pairs)
}
