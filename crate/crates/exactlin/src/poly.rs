//! H-polyhedra with strict and non-strict constraints, decided exactly by
//! Fourier–Motzkin elimination.

use crate::{BigInt, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// `normal · x REL offset`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub normal: Vec<Rat>,
    pub offset: Rat,
    pub rel: Relation,
}

impl Constraint {
    pub fn holds(&self, x: &[Rat]) -> bool {
        let lhs: Rat = dot(&self.normal, x);
        match self.rel {
            Relation::Le => lhs <= self.offset,
            Relation::Lt => lhs < self.offset,
            Relation::Eq => lhs == self.offset,
        }
    }

    /// Holds after relaxing `<` to `<=`.
    pub fn holds_closed(&self, x: &[Rat]) -> bool {
        let lhs: Rat = dot(&self.normal, x);
        match self.rel {
            Relation::Le | Relation::Lt => lhs <= self.offset,
            Relation::Eq => lhs == self.offset,
        }
    }

    pub fn is_tight(&self, x: &[Rat]) -> bool {
        dot(&self.normal, x) == self.offset
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(p) = self.normal.iter().find(|x| !x.is_zero()) {
            let s = p.abs().recip();
            for x in self.normal.iter_mut() {
                *x *= &s;
            }
            self.offset *= &s;
            if self.rel == Relation::Eq && self.normal.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
                for x in self.normal.iter_mut() {
                    *x = -x.clone();
                }
                self.offset = -self.offset.clone();
            }
        }
        self
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polyhedron is unbounded along coordinate {0}")]
    Unbounded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn new(dim: usize) -> Self {
        HPolyhedron { dim, constraints: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, normal: Vec<Rat>, rel: Relation, offset: Rat) -> &mut Self {
        assert_eq!(normal.len(), self.dim, "constraint dimension mismatch");
        self.constraints.push(Constraint { normal, offset, rel });
        self
    }

    pub fn le(&mut self, normal: Vec<Rat>, offset: Rat) -> &mut Self {
        self.push(normal, Relation::Le, offset)
    }

    pub fn lt(&mut self, normal: Vec<Rat>, offset: Rat) -> &mut Self {
        self.push(normal, Relation::Lt, offset)
    }

    pub fn equal(&mut self, normal: Vec<Rat>, offset: Rat) -> &mut Self {
        self.push(normal, Relation::Eq, offset)
    }

    /// `normal · x >= offset`
    pub fn ge(&mut self, normal: Vec<Rat>, offset: Rat) -> &mut Self {
        self.push(normal.into_iter().map(|x| -x).collect(), Relation::Le, -offset)
    }

    /// `normal · x > offset`
    pub fn gt(&mut self, normal: Vec<Rat>, offset: Rat) -> &mut Self {
        self.push(normal.into_iter().map(|x| -x).collect(), Relation::Lt, -offset)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.constraints.iter().all(|c| c.holds(x))
    }

    /// Topological closure of the constraint system (`<` becomes `<=`).
    pub fn closure(&self) -> HPolyhedron {
        let mut out = self.clone();
        for c in out.constraints.iter_mut() {
            if c.rel == Relation::Lt {
                c.rel = Relation::Le;
            }
        }
        out
    }

    pub fn is_open(&self) -> bool {
        self.constraints.iter().all(|c| c.rel == Relation::Lt)
    }

    pub fn is_closed(&self) -> bool {
        self.constraints.iter().all(|c| c.rel != Relation::Lt)
    }

    /// Intersection with another polyhedron of the same dimension.
    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        out.constraints.extend(other.constraints.iter().cloned());
        out
    }

    pub fn feasible(&self) -> bool {
        match eliminate_all_but(&self.constraints, self.dim, None) {
            Some(rest) => rest.iter().all(|c| c.holds(&vec![Rat::zero(); self.dim])),
            None => false,
        }
    }

    /// Exact range of coordinate `j` over the polyhedron. `None` if empty;
    /// otherwise lower and upper bounds, each `(value, strict)` or unbounded.
    pub fn coordinate_range(&self, j: usize) -> Option<(Option<(Rat, bool)>, Option<(Rat, bool)>)> {
        let rest = eliminate_all_but(&self.constraints, self.dim, Some(j))?;
        let mut lo: Option<(Rat, bool)> = None;
        let mut hi: Option<(Rat, bool)> = None;
        let mut eqs: Vec<Rat> = Vec::new();
        for c in &rest {
            let a = &c.normal[j];
            if a.is_zero() {
                if !c.holds(&vec![Rat::zero(); self.dim]) {
                    return None;
                }
                continue;
            }
            let v = &c.offset / a;
            match c.rel {
                Relation::Eq => eqs.push(v),
                rel => {
                    let strict = rel == Relation::Lt;
                    if a.is_positive() {
                        tighten_upper(&mut hi, v, strict);
                    } else {
                        tighten_lower(&mut lo, v, strict);
                    }
                }
            }
        }
        for v in eqs {
            tighten_upper(&mut hi, v.clone(), false);
            tighten_lower(&mut lo, v, false);
        }
        if let (Some((l, ls)), Some((h, hs))) = (&lo, &hi) {
            if l > h || (l == h && (*ls || *hs)) {
                return None;
            }
        }
        Some((lo, hi))
    }

    /// Fixes coordinate `j` to `value` and drops it.
    pub fn substitute(&self, j: usize, value: &Rat) -> HPolyhedron {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let mut normal = c.normal.clone();
                let a = normal.remove(j);
                Constraint { normal, offset: &c.offset - a * value, rel: c.rel }
            })
            .collect();
        HPolyhedron { dim: self.dim - 1, constraints }
    }

    /// Integer points, lexicographically sorted.
    pub fn lattice_points(&self) -> Result<Vec<Vec<BigInt>>, PolyError> {
        self.lattice_points_from(0)
    }

    fn lattice_points_from(&self, offset: usize) -> Result<Vec<Vec<BigInt>>, PolyError> {
        if self.dim == 0 {
            let origin: Vec<Rat> = Vec::new();
            return Ok(if self.constraints.iter().all(|c| c.holds(&origin)) {
                vec![Vec::new()]
            } else {
                Vec::new()
            });
        }
        let Some((lo, hi)) = self.coordinate_range(0) else {
            return Ok(Vec::new());
        };
        let (Some((l, ls)), Some((h, hs))) = (lo, hi) else {
            return Err(PolyError::Unbounded(offset));
        };
        let mut start = l.ceil().to_integer();
        if ls && l.is_integer() {
            start += 1;
        }
        let mut end = h.floor().to_integer();
        if hs && h.is_integer() {
            end -= 1;
        }
        let mut out = Vec::new();
        let mut v = start;
        while v <= end {
            let sub = self.substitute(0, &Rat::from_integer(v.clone()));
            for mut tail in sub.lattice_points_from(offset + 1)? {
                tail.insert(0, v.clone());
                out.push(tail);
            }
            v += 1;
        }
        Ok(out)
    }
}

fn tighten_upper(hi: &mut Option<(Rat, bool)>, v: Rat, strict: bool) {
    match hi {
        Some((h, s)) if *h < v || (*h == v && *s) => {}
        Some((h, s)) if *h == v => *s = strict,
        _ => *hi = Some((v, strict)),
    }
}

fn tighten_lower(lo: &mut Option<(Rat, bool)>, v: Rat, strict: bool) {
    match lo {
        Some((l, s)) if *l > v || (*l == v && *s) => {}
        Some((l, s)) if *l == v => *s = strict,
        _ => *lo = Some((v, strict)),
    }
}

/// Eliminates every coordinate except `keep`. Returns `None` as soon as a
/// constant constraint is violated.
fn eliminate_all_but(cs: &[Constraint], dim: usize, keep: Option<usize>) -> Option<Vec<Constraint>> {
    let mut cur: Vec<Constraint> = Vec::new();
    for c in cs {
        push_unique(&mut cur, c.clone().normalized(), dim)?;
    }
    for j in 0..dim {
        if Some(j) == keep {
            continue;
        }
        cur = eliminate(cur, j, dim)?;
    }
    Some(cur)
}

fn push_unique(out: &mut Vec<Constraint>, c: Constraint, dim: usize) -> Option<()> {
    if c.normal.iter().all(|x| x.is_zero()) {
        return c.holds(&vec![Rat::zero(); dim]).then_some(());
    }
    if !out.contains(&c) {
        out.push(c);
    }
    Some(())
}

fn eliminate(cs: Vec<Constraint>, j: usize, dim: usize) -> Option<Vec<Constraint>> {
    if let Some(pos) = cs.iter().position(|c| c.rel == Relation::Eq && !c.normal[j].is_zero()) {
        let e = cs[pos].clone();
        let mut out = Vec::new();
        for (i, c) in cs.into_iter().enumerate() {
            if i == pos {
                continue;
            }
            let f = &c.normal[j] / &e.normal[j];
            let normal: Vec<Rat> = c.normal.iter().zip(&e.normal).map(|(a, b)| a - &f * b).collect();
            let offset = &c.offset - &f * &e.offset;
            push_unique(&mut out, Constraint { normal, offset, rel: c.rel }.normalized(), dim)?;
        }
        return Some(out);
    }
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for c in cs {
        if c.normal[j].is_zero() {
            push_unique(&mut out, c, dim)?;
        } else if c.normal[j].is_positive() {
            pos.push(c);
        } else {
            neg.push(c);
        }
    }
    for p in &pos {
        for q in &neg {
            let a = -q.normal[j].clone();
            let b = p.normal[j].clone();
            let normal: Vec<Rat> = p.normal.iter().zip(&q.normal).map(|(x, y)| x * &a + y * &b).collect();
            let offset = &p.offset * &a + &q.offset * &b;
            let rel = if p.rel == Relation::Lt || q.rel == Relation::Lt { Relation::Lt } else { Relation::Le };
            push_unique(&mut out, Constraint { normal, offset, rel }.normalized(), dim)?;
        }
    }
    prune(&mut out);
    Some(out)
}

/// Drops constraints dominated by a parallel, tighter one.
fn prune(cs: &mut Vec<Constraint>) {
    let mut keep = vec![true; cs.len()];
    for i in 0..cs.len() {
        if cs[i].rel == Relation::Eq {
            continue;
        }
        for k in 0..cs.len() {
            if i == k || !keep[k] || cs[k].rel == Relation::Eq || cs[i].normal != cs[k].normal {
                continue;
            }
            // Same normal: the smaller offset wins; at a tie, strict wins.
            let dominated = cs[k].offset < cs[i].offset
                || (cs[k].offset == cs[i].offset && cs[k].rel == Relation::Lt && cs[i].rel == Relation::Le);
            if dominated {
                keep[i] = false;
                break;
            }
        }
    }
    let mut it = keep.iter();
    cs.retain(|_| *it.next().unwrap());
}

pub fn feasible(p: &HPolyhedron) -> bool {
    p.feasible()
}

pub fn lattice_points(p: &HPolyhedron) -> Result<Vec<Vec<BigInt>>, PolyError> {
    p.lattice_points()
}

/// Convenience: `Rat` one.
pub fn one() -> Rat {
    Rat::one()
}
