//! Simple types for de Bruijn terms.
//!
//! Inference walks the term once, generating type variables for binders and
//! application results, and solves the application constraints with
//! first-order unification: union-find merging of type graphs, then a single
//! acyclicity check in place of per-binding occurs checks. The result is the
//! principal typing, up to renaming of type variables.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::count::{CountTable, FreeBound};
use crate::par::Strategy;
use crate::term::Term;
use crate::unrank;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimpleType {
    Var(u32),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(domain: SimpleType, codomain: SimpleType) -> SimpleType {
        SimpleType::Arrow(Box::new(domain), Box::new(codomain))
    }

    fn rename(&self, names: &mut HashMap<u32, u32>) -> SimpleType {
        match self {
            SimpleType::Var(v) => {
                let next = names.len() as u32;
                SimpleType::Var(*names.entry(*v).or_insert(next))
            }
            SimpleType::Arrow(a, b) => {
                let a = a.rename(names);
                SimpleType::arrow(a, b.rename(names))
            }
        }
    }

    /// Renames variables to `0, 1, ...` in order of first occurrence.
    pub fn canonical(&self) -> SimpleType {
        self.rename(&mut HashMap::new())
    }
}

fn var_name(f: &mut fmt::Formatter<'_>, v: u32) -> fmt::Result {
    let letter = (b'a' + (v % 26) as u8) as char;
    match v / 26 {
        0 => write!(f, "{letter}"),
        k => write!(f, "{letter}{k}"),
    }
}

/// Canonical text: variables as given (`0 -> a`, `1 -> b`, ...), arrows
/// right-associative, parentheses only around arrow domains. Use
/// [`SimpleType::canonical`] first for first-use naming.
impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::Var(v) => var_name(f, *v),
            SimpleType::Arrow(a, b) => {
                if matches!(**a, SimpleType::Arrow(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypingError {
    #[error("term has free index {found} but only {free_count} context slots were given")]
    FreeIndexExceeded { found: usize, free_count: usize },
}

/// A term with the type of every node, as produced by successful inference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypedTerm {
    Index(usize, SimpleType),
    Abs(Box<TypedTerm>, SimpleType),
    App(Box<TypedTerm>, Box<TypedTerm>, SimpleType),
}

impl TypedTerm {
    pub fn ty(&self) -> &SimpleType {
        match self {
            TypedTerm::Index(_, t) | TypedTerm::Abs(_, t) | TypedTerm::App(_, _, t) => t,
        }
    }
}

/// Principal typing `Γ ⊢ t : ty`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typing {
    pub ty: SimpleType,
    /// `context[0]` is the type of index 1 (innermost free slot).
    pub context: Vec<SimpleType>,
    pub derivation: TypedTerm,
}

type Id = usize;

#[derive(Clone, Copy)]
enum Node {
    Var,
    Arrow(Id, Id),
}

#[derive(Default)]
struct Unifier {
    nodes: Vec<Node>,
    parent: Vec<Id>,
}

impl Unifier {
    fn fresh(&mut self) -> Id {
        self.push(Node::Var)
    }

    fn push(&mut self, node: Node) -> Id {
        let id = self.nodes.len();
        self.nodes.push(node);
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: Id) -> Id {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`. Never fails on cycles; those are
    /// rejected afterwards by [`Unifier::is_acyclic`].
    fn unify(&mut self, a: Id, b: Id) {
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            match (self.nodes[a], self.nodes[b]) {
                (Node::Var, _) => self.parent[a] = b,
                (_, Node::Var) => self.parent[b] = a,
                (Node::Arrow(a1, a2), Node::Arrow(b1, b2)) => {
                    self.parent[a] = b;
                    work.push((a2, b2));
                    work.push((a1, b1));
                }
            }
        }
    }

    /// Whether the graph of class representatives has no cycle, i.e. every
    /// class denotes a finite type.
    fn is_acyclic(&mut self) -> bool {
        const OPEN: u8 = 1;
        const DONE: u8 = 2;
        let mut state = vec![0u8; self.nodes.len()];
        for root in 0..self.nodes.len() {
            let root = self.find(root);
            if state[root] != 0 {
                continue;
            }
            state[root] = OPEN;
            // Frames are the current path: (node, children visited).
            let mut path = vec![(root, 0usize)];
            while let Some(&(x, visited)) = path.last() {
                let child = match self.nodes[x] {
                    Node::Arrow(l, _) if visited == 0 => Some(l),
                    Node::Arrow(_, r) if visited == 1 => Some(r),
                    _ => None,
                };
                let Some(c) = child else {
                    state[x] = DONE;
                    path.pop();
                    continue;
                };
                path.last_mut().unwrap().1 += 1;
                let c = self.find(c);
                match state[c] {
                    OPEN => return false,
                    DONE => {}
                    _ => {
                        state[c] = OPEN;
                        path.push((c, 0));
                    }
                }
            }
        }
        true
    }

    fn resolve(&mut self, id: Id) -> SimpleType {
        let id = self.find(id);
        match self.nodes[id] {
            Node::Var => SimpleType::Var(id as u32),
            Node::Arrow(a, b) => {
                let a = self.resolve(a);
                SimpleType::arrow(a, self.resolve(b))
            }
        }
    }
}

enum Annotated {
    Index(usize, Id),
    Abs(Box<Annotated>, Id),
    App(Box<Annotated>, Box<Annotated>, Id),
}

impl Annotated {
    fn id(&self) -> Id {
        match self {
            Annotated::Index(_, id) | Annotated::Abs(_, id) | Annotated::App(_, _, id) => *id,
        }
    }
}

fn infer_node(u: &mut Unifier, env: &mut Vec<Id>, t: &Term) -> Annotated {
    match t {
        Term::Index(i) => Annotated::Index(i.get(), env[env.len() - i.get()]),
        Term::Abs(body) => {
            let bound = u.fresh();
            env.push(bound);
            let body = infer_node(u, env, body);
            env.pop();
            let ty = u.push(Node::Arrow(bound, body.id()));
            Annotated::Abs(Box::new(body), ty)
        }
        Term::App(f, a) => {
            let f = infer_node(u, env, f);
            let a = infer_node(u, env, a);
            let result = u.fresh();
            let expected = u.push(Node::Arrow(a.id(), result));
            u.unify(f.id(), expected);
            Annotated::App(Box::new(f), Box::new(a), result)
        }
    }
}

fn resolve_tree(u: &mut Unifier, names: &mut HashMap<u32, u32>, a: &Annotated) -> TypedTerm {
    match a {
        Annotated::Index(i, id) => TypedTerm::Index(*i, u.resolve(*id).rename(names)),
        Annotated::Abs(body, id) => {
            let ty = u.resolve(*id).rename(names);
            TypedTerm::Abs(Box::new(resolve_tree(u, names, body)), ty)
        }
        Annotated::App(f, x, id) => {
            let ty = u.resolve(*id).rename(names);
            let f = resolve_tree(u, names, f);
            TypedTerm::App(Box::new(f), Box::new(resolve_tree(u, names, x)), ty)
        }
    }
}

fn check_free(t: &Term, free_count: usize) -> Result<(), TypingError> {
    let found = t.max_free_index();
    if found > free_count {
        return Err(TypingError::FreeIndexExceeded { found, free_count });
    }
    Ok(())
}

fn solve(t: &Term, free_count: usize) -> Result<Option<(Unifier, Vec<Id>, Annotated)>, TypingError> {
    check_free(t, free_count)?;
    let mut u = Unifier::default();
    // env[len - i] is the type of index i; the free slots sit at the bottom.
    let mut env: Vec<Id> = (0..free_count).map(|_| u.fresh()).collect();
    let free_slots: Vec<Id> = env.iter().rev().copied().collect();
    let annotated = infer_node(&mut u, &mut env, t);
    Ok(u.is_acyclic().then_some((u, free_slots, annotated)))
}

/// Principal type and context of `t` in a context of `free_count` fresh
/// slots, or `None` when `t` is untypable. Variables are numbered by first
/// use: the type first, then the context, then the rest of the derivation.
pub fn infer(t: &Term, free_count: usize) -> Result<Option<Typing>, TypingError> {
    let Some((mut u, free_slots, annotated)) = solve(t, free_count)? else {
        return Ok(None);
    };
    let mut names = HashMap::new();
    let ty = u.resolve(annotated.id()).rename(&mut names);
    let context = free_slots.iter().map(|&s| u.resolve(s).rename(&mut names)).collect();
    let derivation = resolve_tree(&mut u, &mut names, &annotated);
    Ok(Some(Typing { ty, context, derivation }))
}

pub fn is_typable(t: &Term, free_count: usize) -> Result<bool, TypingError> {
    Ok(solve(t, free_count)?.is_some())
}

/// Number of typable terms of size `n`: closed ones when `closed`, otherwise
/// all terms. Visits every rank of the class through [`unrank::unrank`].
///
/// Panics if the class has more than `u64::MAX` members.
pub fn count_typable(table: &CountTable, n: usize, closed: bool, strategy: Strategy) -> BigUint {
    let bound = if closed { FreeBound::AtMost(0) } else { FreeBound::Unbounded };
    let m = bound.clamp(n);
    let total: u64 = table
        .get(bound, n)
        .expect("count table too small for census")
        .try_into()
        .expect("census class too large");
    let bound = FreeBound::AtMost(m);
    let hits = strategy.install(|| {
        strategy.count_range(1..total + 1, |k| {
            let t = unrank::unrank(table, bound, n, &BigUint::from(k)).expect("rank in range");
            is_typable(&t, m).expect("free indices within saturation bound")
        })
    });
    BigUint::from(hits)
}
