//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the crate's counting, unranking or typing code.
#![allow(dead_code)]

use std::collections::HashMap;

/// Parses one term from `bits[pos..]` with `depth` enclosing binders.
/// Returns the position after the term and the largest free index seen
/// (relative to depth 0), or `None` on truncation.
fn parse(bits: &[u8], pos: usize, depth: usize) -> Option<(usize, usize)> {
    match (bits.get(pos)?, bits.get(pos + 1)) {
        (0, Some(0)) => parse(bits, pos + 2, depth + 1),
        (0, Some(1)) => {
            let (mid, a) = parse(bits, pos + 2, depth)?;
            let (end, b) = parse(bits, mid, depth)?;
            Some((end, a.max(b)))
        }
        (0, None) => None,
        _ => {
            let mut i = 0;
            while *bits.get(pos + i)? == 1 {
                i += 1;
            }
            Some((pos + i + 1, i.saturating_sub(depth)))
        }
    }
}

/// Every valid code of exactly `n` bits, as a `0`/`1` string, with the
/// largest free index of the term it encodes.
pub fn brute_force(n: usize) -> Vec<(String, usize)> {
    assert!(n < 64);
    let mut out = Vec::new();
    for v in 0u64..(1u64 << n) {
        let bits: Vec<u8> = (0..n).map(|i| ((v >> (n - 1 - i)) & 1) as u8).collect();
        if let Some((end, free)) = parse(&bits, 0, 0) {
            if end == n {
                out.push((bits.iter().map(|b| (b'0' + b) as char).collect(), free));
            }
        }
    }
    out
}

pub fn brute_count(n: usize, bound: Option<usize>) -> u64 {
    brute_force(n)
        .into_iter()
        .filter(|(_, free)| bound.is_none_or(|m| *free <= m))
        .count() as u64
}

/// Lambda terms as a plain tree, for the reference type checker.
#[derive(Clone, Debug)]
pub enum Lam {
    Var(usize),
    Abs(Box<Lam>),
    App(Box<Lam>, Box<Lam>),
}

pub fn parse_lam(code: &str) -> Lam {
    fn go(b: &[u8], pos: &mut usize) -> Lam {
        if b[*pos] == b'1' {
            let mut i = 0;
            while b[*pos] == b'1' {
                i += 1;
                *pos += 1;
            }
            *pos += 1;
            Lam::Var(i)
        } else if b[*pos + 1] == b'0' {
            *pos += 2;
            Lam::Abs(Box::new(go(b, pos)))
        } else {
            *pos += 2;
            let f = go(b, pos);
            let a = go(b, pos);
            Lam::App(Box::new(f), Box::new(a))
        }
    }
    let mut pos = 0;
    go(code.as_bytes(), &mut pos)
}

#[derive(Clone, Debug, PartialEq)]
enum Ty {
    Var(usize),
    Fun(Box<Ty>, Box<Ty>),
}

/// Substitution-based unification with an occurs check.
struct Subst {
    map: HashMap<usize, Ty>,
    fresh: usize,
}

impl Subst {
    fn fresh(&mut self) -> Ty {
        self.fresh += 1;
        Ty::Var(self.fresh)
    }

    fn resolve(&self, t: &Ty) -> Ty {
        match t {
            Ty::Var(v) => match self.map.get(v) {
                Some(u) => self.resolve(u),
                None => t.clone(),
            },
            Ty::Fun(a, b) => Ty::Fun(Box::new(self.resolve(a)), Box::new(self.resolve(b))),
        }
    }

    fn occurs(v: usize, t: &Ty) -> bool {
        match t {
            Ty::Var(w) => *w == v,
            Ty::Fun(a, b) => Self::occurs(v, a) || Self::occurs(v, b),
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> bool {
        let (a, b) = (self.resolve(a), self.resolve(b));
        match (a, b) {
            (Ty::Var(x), Ty::Var(y)) if x == y => true,
            (Ty::Var(x), t) | (t, Ty::Var(x)) => {
                if Self::occurs(x, &t) {
                    return false;
                }
                self.map.insert(x, t);
                true
            }
            (Ty::Fun(a1, b1), Ty::Fun(a2, b2)) => self.unify(&a1, &a2) && self.unify(&b1, &b2),
        }
    }
}

/// Whether `t` has a simple type when its free indices get the context
/// slots `1..=free`.
pub fn reference_typable(t: &Lam, free: usize) -> bool {
    fn walk(t: &Lam, env: &mut Vec<Ty>, s: &mut Subst) -> Option<Ty> {
        match t {
            Lam::Var(i) => env.len().checked_sub(*i).map(|j| env[j].clone()),
            Lam::Abs(body) => {
                let x = s.fresh();
                env.push(x.clone());
                let b = walk(body, env, s);
                env.pop();
                Some(Ty::Fun(Box::new(x), Box::new(b?)))
            }
            Lam::App(f, a) => {
                let tf = walk(f, env, s)?;
                let ta = walk(a, env, s)?;
                let r = s.fresh();
                s.unify(&tf, &Ty::Fun(Box::new(ta), Box::new(r.clone()))).then_some(r)
            }
        }
    }
    let mut s = Subst { map: HashMap::new(), fresh: 0 };
    let mut env: Vec<Ty> = (0..free).map(|_| s.fresh()).collect();
    walk(t, &mut env, &mut s).is_some()
}
