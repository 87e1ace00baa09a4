mod common;

use proptest::prelude::*;

use nashdcf::cli::Engine;
use nashdcf::diffclosure::DiffField;
use nashdcf::exactnum::parse::{parse_expr, Expr};
use nashdcf::exactnum::sturm::{count_roots, Bound};
use nashdcf::exactnum::{gcd, rat, resultant, DyadicInterval, MPoly, Rational, UPoly, Var};
use nashdcf::nashfield::{Element, Sign};

use common::*;

fn small() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

/// Polynomial in `Z`, `L0`, `L1` with up to five terms of degree ≤ 2 per variable.
fn mpoly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((-6i64..=6, 0u32..=2, 0u32..=2, 0u32..=1), 1..5).prop_map(|ts| {
        ts.into_iter().fold(MPoly::zero(), |acc, (c, ez, e0, e1)| {
            let m = MPoly::monomial(rat(c, 1), &[(Var::Z, ez), (Var::tag(0), e0), (Var::tag(1), e1)]);
            acc.add_ref(&m)
        })
    })
}

fn in_z(p: MPoly) -> bool {
    p.degree_in(Var::Z) > 0
}

/// Rational function of the first two tags.
fn tag_element() -> impl Strategy<Value = Element> {
    (mpoly(), mpoly()).prop_filter_map("zero denominator", |(n, d)| {
        let n = n.substitute(Var::Z, &MPoly::from_int(2));
        let d = d.substitute(Var::Z, &MPoly::from_int(3));
        Element::from_rational_function(n, d).ok()
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..30).prop_map(|n| Expr::Num(rat(n, 1))),
        (0u32..4).prop_map(Expr::Tag),
        Just(Expr::Z),
        (0u32..3).prop_map(Expr::Y),
        prop::sample::select(vec!["a", "b", "xs"]).prop_map(|s| Expr::Ident(s.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), 0i64..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            inner.prop_map(|a| Expr::Call("conj".into(), vec![a])),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interval_ops_enclose_exact_results(a in small(), b in small(), prec in 4u32..80) {
        let (ia, ib) = (DyadicInterval::from_rational(&a, prec), DyadicInterval::from_rational(&b, prec));
        prop_assert!(ia.add(&ib, prec).contains_rational(&(&a + &b)));
        prop_assert!(ia.sub(&ib, prec).contains_rational(&(&a - &b)));
        prop_assert!(ia.mul(&ib, prec).contains_rational(&(&a * &b)));
        if let Some(q) = ia.div(&ib, prec) {
            prop_assert!(q.contains_rational(&(&a / &b)));
        }
    }

    #[test]
    fn polynomial_ring_laws(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        if !b.is_zero() {
            prop_assert_eq!(a.mul_ref(&b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn resultant_is_antisymmetric(a in mpoly().prop_filter("Z", |p| in_z(p.clone())), b in mpoly().prop_filter("Z", |p| in_z(p.clone()))) {
        let (da, db) = (a.degree_in(Var::Z), b.degree_in(Var::Z));
        let ab = resultant(&a, &b, Var::Z).unwrap();
        let ba = resultant(&b, &a, Var::Z).unwrap();
        prop_assert_eq!(ab, if da * db % 2 == 1 { ba.neg_ref() } else { ba });
    }

    #[test]
    fn resultant_is_multiplicative(
        a in mpoly().prop_filter("Z", |p| in_z(p.clone())),
        b in mpoly().prop_filter("Z", |p| in_z(p.clone())),
        c in mpoly().prop_filter("Z", |p| in_z(p.clone())),
    ) {
        let whole = resultant(&a.mul_ref(&b), &c, Var::Z).unwrap();
        let parts = resultant(&a, &c, Var::Z).unwrap().mul_ref(&resultant(&b, &c, Var::Z).unwrap());
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn gcd_divides_and_keeps_common_factors(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let (ac, bc) = (a.mul_ref(&c), b.mul_ref(&c));
        let g = gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c.integer_primitive()).is_some());
    }

    #[test]
    fn sturm_counts_distinct_rational_roots(
        roots in prop::collection::btree_set(-20i64..=20, 1..6),
        lo in -25i64..=25,
        width in 0i64..=30,
    ) {
        let p = roots.iter().fold(UPoly::new(vec![rat(1, 1)]), |acc, r| acc.mul(&UPoly::new(vec![rat(-r, 1), rat(1, 1)])));
        let hi = lo + width;
        let want = roots.iter().filter(|r| **r >= lo && **r <= hi).count();
        let got = count_roots(&p.mul(&p), &Bound::At(rat(lo, 1)), &Bound::At(rat(hi, 1))).unwrap();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn tag_field_axioms_and_order(a in tag_element(), b in tag_element()) {
        prop_assert!(a.sub(&a).is_zero().unwrap());
        if !b.is_zero().unwrap() {
            prop_assert!(a.div(&b).unwrap().mul(&b).equals(&a).unwrap());
        }
        let (sa, sb) = (a.sign().unwrap(), b.sign().unwrap());
        prop_assert_eq!(a.mul(&b).sign().unwrap().as_i32(), sa.as_i32() * sb.as_i32());
        let d = a.sub(&b).sign().unwrap();
        prop_assert_eq!(b.sub(&a).sign().unwrap().as_i32(), -d.as_i32());
    }

    #[test]
    fn conjugate_norm_identity(x in small(), y in small()) {
        let s = root_of(2, &q(2, 1), nashdcf::nashfield::Selector::RealIndex(2));
        let (x, y) = (Element::from_rational(x), Element::from_rational(y));
        let lhs = x.add(&y.mul(&s)).mul(&x.sub(&y.mul(&s)));
        let rhs = x.mul(&x).sub(&y.mul(&y).scale(&rat(2, 1)));
        prop_assert!(lhs.equals(&rhs).unwrap());
        prop_assert_eq!(lhs.sign().unwrap() == Sign::Zero, x.is_zero().unwrap() && y.is_zero().unwrap());
    }

    #[test]
    fn derivation_obeys_leibniz_on_pinned_tags(a in tag_element(), b in tag_element(), g0 in small(), g1 in small()) {
        let mut f = DiffField::new();
        let t = f.fresh_tags(2).unwrap();
        f.table.pin(t[0], Element::from_rational(g0)).unwrap();
        f.table.pin(t[1], Element::from_tag(t[0]).scale(&g1)).unwrap();
        let (da, db) = (f.apply_delta(&a).unwrap(), f.apply_delta(&b).unwrap());
        let prod = f.apply_delta(&a.mul(&b)).unwrap();
        prop_assert!(prod.equals(&a.mul(&db).add(&b.mul(&da))).unwrap());
        let sum = f.apply_delta(&a.add(&b)).unwrap();
        prop_assert!(sum.equals(&da.add(&db)).unwrap());
    }

    #[test]
    fn expressions_print_and_reparse(e in expr()) {
        let s = e.to_string();
        let back = parse_expr(&s).unwrap();
        prop_assert_eq!(back.to_string(), s.clone());
        prop_assert_eq!(back, e, "{}", s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sessions_replay_byte_identically(steps in prop::collection::vec(0usize..7, 1..8), k in 1i64..9) {
        let mut script = String::from("let a = var\n");
        for (n, s) in steps.iter().enumerate() {
            let line = match s {
                0 => format!("let v{} = var", n),
                1 => format!("let r{} = adjoin Z^2 - {} real 2", n, k + n as i64),
                2 => format!("sign a - {}", k),
                3 => format!("dp p{} = y' - {}*y", n, k),
                4 => format!("let w{} = witness (y' - y) (y - {})", n, k),
                5 => format!("iszero a*{} - {}*a", k, k),
                _ => format!("let e{} = extend 1 with {}*$1", n, k),
            };
            script.push_str(&line);
            script.push('\n');
        }
        let mut eng = Engine::new();
        let out = eng.run(&script);
        prop_assert_eq!(out.errors, 0, "{}", out.text());
        let saved = eng.save_string().unwrap();
        let back = Engine::load_str(&saved).unwrap();
        prop_assert_eq!(back.save_string().unwrap(), saved);
        for (name, a) in eng.elements() {
            prop_assert!(a.equals(back.element(name).unwrap()).unwrap());
        }
    }
}
