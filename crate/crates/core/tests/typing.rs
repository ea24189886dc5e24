mod common;

use blc_census::typing::{count_typable, infer, SimpleType, TypedTerm, Typing};
use blc_census::unrank::enumerate;
use blc_census::{CountTable, FreeBound, Strategy, Term};
use num_bigint::BigUint;

fn arrow_parts(t: &SimpleType) -> Option<(&SimpleType, &SimpleType)> {
    match t {
        SimpleType::Arrow(a, b) => Some((a, b)),
        SimpleType::Var(_) => None,
    }
}

/// Checks every rule application of the derivation against the term.
fn check_derivation(term: &Term, typing: &Typing) {
    fn go(term: &Term, d: &TypedTerm, env: &mut Vec<SimpleType>, ctx: &[SimpleType]) {
        match (term, d) {
            (Term::Index(i), TypedTerm::Index(j, ty)) => {
                let i = i.get();
                assert_eq!(i, *j);
                let expected = if i <= env.len() { &env[env.len() - i] } else { &ctx[i - env.len() - 1] };
                assert_eq!(ty, expected, "index {i}");
            }
            (Term::Abs(body), TypedTerm::Abs(db, ty)) => {
                let (dom, cod) = arrow_parts(ty).expect("abstraction has an arrow type");
                assert_eq!(cod, db.ty());
                env.push(dom.clone());
                go(body, db, env, ctx);
                env.pop();
            }
            (Term::App(f, a), TypedTerm::App(df, da, ty)) => {
                let (dom, cod) = arrow_parts(df.ty()).expect("function part has an arrow type");
                assert_eq!(dom, da.ty());
                assert_eq!(cod, ty);
                go(f, df, env, ctx);
                go(a, da, env, ctx);
            }
            _ => panic!("derivation does not follow the term"),
        }
    }
    assert_eq!(&typing.ty, typing.derivation.ty());
    go(term, &typing.derivation, &mut Vec::new(), &typing.context);
}

#[test]
fn inference_agrees_with_reference_checker() {
    let table = CountTable::new(15);
    for n in 0..=15 {
        for bound in [FreeBound::AtMost(0), FreeBound::AtMost(2)] {
            let free = bound.clamp(n);
            for t in enumerate(&table, bound, n).unwrap() {
                let code = t.encode().to_string();
                let expected = common::reference_typable(&common::parse_lam(&code), free);
                let got = infer(&t, free).unwrap();
                assert_eq!(got.is_some(), expected, "{}", t.render());
                if let Some(typing) = got {
                    assert_eq!(typing.context.len(), free);
                    check_derivation(&t, &typing);
                }
            }
        }
    }
}

#[test]
fn census_matches_brute_force() {
    let table = CountTable::new(12);
    for n in 0..=12 {
        let all = common::brute_force(n);
        let closed = all
            .iter()
            .filter(|(code, free)| *free == 0 && common::reference_typable(&common::parse_lam(code), 0))
            .count();
        let open = all
            .iter()
            .filter(|(code, _)| common::reference_typable(&common::parse_lam(code), n))
            .count();
        assert_eq!(count_typable(&table, n, true, Strategy::Sequential), BigUint::from(closed), "closed n = {n}");
        assert_eq!(count_typable(&table, n, false, Strategy::Sequential), BigUint::from(open), "all n = {n}");
    }
}

#[test]
fn census_is_independent_of_strategy() {
    let table = CountTable::new(18);
    for closed in [true, false] {
        let seq = count_typable(&table, 18, closed, Strategy::Sequential);
        for jobs in [0, 2, 4] {
            assert_eq!(count_typable(&table, 18, closed, Strategy::with_jobs(jobs)), seq);
        }
    }
}

#[test]
fn principal_types_are_canonical() {
    let cases = [
        (r"\1", "a -> a"),
        (r"\\2", "a -> b -> a"),
        (r"\\\((3 1) (2 1))", "(a -> b -> c) -> (a -> b) -> a -> c"),
    ];
    for (text, expected) in cases {
        let typing = infer(&Term::parse_text(text).unwrap(), 0).unwrap().unwrap();
        assert_eq!(typing.ty.to_string(), expected);
        assert_eq!(typing.ty.canonical(), typing.ty);
    }
}
