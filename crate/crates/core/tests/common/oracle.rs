//! Brute-force model of the Leavitt path algebra of a finite acyclic quiver.
//!
//! Written without the library's rewriting or linear algebra: normal
//! monomials use the *last* out-edge of each vertex as the special edge,
//! products are reduced by direct recursion, and unitality of
//! `S_C S_{C⁻¹}` is decided by solving the identity-element equations with
//! a separate Gaussian elimination.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OPath {
    pub start: usize,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OMono {
    pub real: OPath,
    pub ghost: OPath,
}

pub type Elem = BTreeMap<usize, Q>;

pub struct Oracle {
    vertices: usize,
    edges: Vec<(usize, usize, i64)>,
    special: Vec<Option<usize>>,
    pub basis: Vec<OMono>,
    index: BTreeMap<OMono, usize>,
}

fn add_into(acc: &mut Elem, i: usize, c: &Q) {
    let entry = acc.entry(i).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&i);
    }
}

fn axpy(acc: &mut Elem, c: &Q, x: &Elem) {
    for (i, v) in x {
        add_into(acc, *i, &(c * v));
    }
}

impl Oracle {
    pub fn new(vertices: usize, edges: &[(usize, usize, i64)]) -> Oracle {
        let special = (0..vertices).map(|v| (0..edges.len()).rfind(|&e| edges[e].0 == v)).collect();
        let mut o = Oracle { vertices, edges: edges.to_vec(), special, basis: Vec::new(), index: BTreeMap::new() };
        let paths = o.all_paths();
        for a in &paths {
            for b in &paths {
                let m = OMono { real: a.clone(), ghost: b.clone() };
                if o.range(a) == o.range(b) && o.is_normal(&m) {
                    o.index.insert(m.clone(), o.basis.len());
                    o.basis.push(m);
                }
            }
        }
        o
    }

    fn all_paths(&self) -> Vec<OPath> {
        let mut out: Vec<OPath> = (0..self.vertices).map(|v| OPath { start: v, edges: vec![] }).collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let r = self.range(p);
                for e in 0..self.edges.len() {
                    if self.edges[e].0 == r {
                        let mut q = p.clone();
                        q.edges.push(e);
                        next.push(q);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn range(&self, p: &OPath) -> usize {
        p.edges.last().map_or(p.start, |&e| self.edges[e].1)
    }

    fn is_normal(&self, m: &OMono) -> bool {
        match (m.real.edges.last(), m.ghost.edges.last()) {
            (Some(&a), Some(&b)) => !(a == b && self.special[self.edges[a].0] == Some(a)),
            _ => true,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, m: &OMono) -> i64 {
        let d = |p: &OPath| p.edges.iter().map(|&e| self.edges[e].2).sum::<i64>();
        d(&m.real) - d(&m.ghost)
    }

    /// Normal form of any monomial `αβ*` with `r(α) = r(β)`.
    pub fn reduce(&self, m: &OMono) -> Elem {
        if let Some(&i) = self.index.get(m) {
            return BTreeMap::from([(i, Q::one())]);
        }
        let e = *m.real.edges.last().expect("non-normal monomials end in an edge");
        let v = self.edges[e].0;
        let mut a = m.real.clone();
        let mut b = m.ghost.clone();
        a.edges.pop();
        b.edges.pop();
        let mut out = self.reduce(&OMono { real: a.clone(), ghost: b.clone() });
        for f in 0..self.edges.len() {
            if f != e && self.edges[f].0 == v {
                let (mut af, mut bf) = (a.clone(), b.clone());
                af.edges.push(f);
                bf.edges.push(f);
                axpy(&mut out, &-Q::one(), &self.reduce(&OMono { real: af, ghost: bf }));
            }
        }
        out
    }

    fn mul_mono(&self, x: &OMono, y: &OMono) -> Elem {
        let (alpha, beta) = (&x.real, &x.ghost);
        let (gamma, delta) = (&y.real, &y.ghost);
        if beta.start != gamma.start {
            return Elem::new();
        }
        let m = if gamma.edges.starts_with(&beta.edges) {
            let mut real = alpha.clone();
            real.edges.extend_from_slice(&gamma.edges[beta.edges.len()..]);
            OMono { real, ghost: delta.clone() }
        } else if beta.edges.starts_with(&gamma.edges) {
            let mut ghost = delta.clone();
            ghost.edges.extend_from_slice(&beta.edges[gamma.edges.len()..]);
            OMono { real: alpha.clone(), ghost }
        } else {
            return Elem::new();
        };
        self.reduce(&m)
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, a) in x {
            for (j, b) in y {
                let p = self.mul_mono(&self.basis[*i], &self.basis[*j]);
                axpy(&mut out, &(a * b), &p);
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Elem {
        BTreeMap::from([(i, Q::one())])
    }

    pub fn one(&self) -> Elem {
        (0..self.vertices)
            .map(|v| {
                (
                    self.index
                        [&OMono { real: OPath { start: v, edges: vec![] }, ghost: OPath { start: v, edges: vec![] } }],
                    Q::one(),
                )
            })
            .collect()
    }

    fn coset(d: i64, m: i64) -> i64 {
        if m == 0 {
            d
        } else {
            d.rem_euclid(m)
        }
    }

    /// Spanning products of `S_C S_{C⁻¹}` for the coset of `c` in `Z/mZ`.
    pub fn ideal_products(&self, c: i64, m: i64) -> Vec<Elem> {
        let left: Vec<usize> =
            (0..self.dim()).filter(|&i| Self::coset(self.degree(&self.basis[i]), m) == Self::coset(c, m)).collect();
        let right: Vec<usize> =
            (0..self.dim()).filter(|&i| Self::coset(self.degree(&self.basis[i]), m) == Self::coset(-c, m)).collect();
        let mut out = Vec::new();
        for &i in &left {
            for &j in &right {
                let p = self.mul_mono(&self.basis[i], &self.basis[j]);
                if !p.is_empty() {
                    out.push(p);
                }
            }
        }
        out
    }

    /// The identity of `S_C S_{C⁻¹}` if it exists (zero for the zero ideal).
    pub fn ideal_identity(&self, c: i64, m: i64) -> Option<Elem> {
        let basis = independent(&self.ideal_products(c, m));
        let k = basis.len();
        // Unknowns c_0..c_{k-1}; x = Σ c_i b_i. Rows are equations over
        // (coefficient vector, right-hand side).
        let mut system = Echelon::new(k);
        for y in &basis {
            let mut left: BTreeMap<usize, Elem> = BTreeMap::new();
            let mut right: BTreeMap<usize, Elem> = BTreeMap::new();
            for (i, b) in basis.iter().enumerate() {
                for (coord, v) in self.mul(b, y) {
                    add_into(left.entry(coord).or_default(), i, &v);
                }
                for (coord, v) in self.mul(y, b) {
                    add_into(right.entry(coord).or_default(), i, &v);
                }
            }
            for rows in [left, right] {
                let coords: Vec<usize> = rows.keys().copied().chain(y.keys().copied()).collect();
                for coord in coords {
                    let lhs = rows.get(&coord).cloned().unwrap_or_default();
                    let rhs = y.get(&coord).cloned().unwrap_or_else(Q::zero);
                    if !system.add(lhs, rhs) {
                        return None;
                    }
                }
            }
        }
        let coeffs = system.solve();
        let mut x = Elem::new();
        for (i, b) in basis.iter().enumerate() {
            axpy(&mut x, &coeffs[i], b);
        }
        Some(x)
    }

    pub fn contains_one(&self, c: i64, m: i64) -> bool {
        let basis = independent(&self.ideal_products(c, m));
        let mut e = Echelon::new(self.dim());
        for b in &basis {
            e.add(b.clone(), Q::zero());
        }
        e.reduce(self.one()).0.is_empty()
    }

    /// Degrees of the nonzero components.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.basis.iter().map(|m| self.degree(m)).collect();
        d.sort();
        d.dedup();
        d
    }

    /// The cosets that need checking; zero components are trivially unital.
    pub fn cosets(&self, m: i64) -> Vec<i64> {
        if m == 0 {
            let mut d = self.degrees();
            d.push(d.iter().map(|x| x.abs()).max().unwrap_or(0) + 1);
            d
        } else {
            (0..m).collect()
        }
    }

    pub fn epsilon_strong(&self, m: i64) -> bool {
        self.cosets(m).into_iter().all(|c| self.ideal_identity(c, m).is_some())
    }

    pub fn strong(&self, m: i64) -> bool {
        self.cosets(m).into_iter().all(|c| self.contains_one(c, m))
    }

    /// Maps a library monomial, given as edge-index paths, into this basis.
    pub fn import(&self, terms: impl IntoIterator<Item = ((usize, Vec<usize>), (usize, Vec<usize>), Q)>) -> Elem {
        let mut out = Elem::new();
        for ((rs, re), (gs, ge), c) in terms {
            let m = OMono { real: OPath { start: rs, edges: re }, ghost: OPath { start: gs, edges: ge } };
            axpy(&mut out, &c, &self.reduce(&m));
        }
        out
    }
}

/// Row echelon form over sparse rows with a right-hand side.
struct Echelon {
    rows: BTreeMap<usize, (Elem, Q)>,
    width: usize,
}

impl Echelon {
    fn new(width: usize) -> Echelon {
        Echelon { rows: BTreeMap::new(), width }
    }

    fn reduce(&self, mut v: Elem) -> (Elem, Q) {
        let mut rhs = Q::zero();
        self.reduce_with(&mut v, &mut rhs);
        (v, rhs)
    }

    fn reduce_with(&self, v: &mut Elem, rhs: &mut Q) {
        loop {
            let Some((&p, c)) = v.iter().find(|(p, _)| self.rows.contains_key(p)) else { return };
            let c = c.clone();
            let (row, r) = &self.rows[&p];
            axpy(v, &-c.clone(), row);
            *rhs -= &c * r;
        }
    }

    /// Adds an equation; false when it is inconsistent.
    fn add(&mut self, mut v: Elem, mut rhs: Q) -> bool {
        self.reduce_with(&mut v, &mut rhs);
        let Some((&p, lead)) = v.iter().next() else { return rhs.is_zero() };
        let inv = lead.recip();
        let v: Elem = v.iter().map(|(i, c)| (*i, c * &inv)).collect();
        let rhs = rhs * &inv;
        for (row, r) in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c.clone(), &v);
                *r -= &c * &rhs;
            }
        }
        self.rows.insert(p, (v, rhs));
        true
    }

    /// A solution with free variables set to zero.
    fn solve(&self) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.width];
        for (p, (_, r)) in &self.rows {
            x[*p] = r.clone();
        }
        x
    }
}

fn independent(vs: &[Elem]) -> Vec<Elem> {
    let mut e = Echelon { rows: BTreeMap::new(), width: 0 };
    let mut out = Vec::new();
    for v in vs {
        let (r, _) = e.reduce(v.clone());
        if !r.is_empty() {
            e.add(v.clone(), Q::zero());
            out.push(v.clone());
        }
    }
    out
}
