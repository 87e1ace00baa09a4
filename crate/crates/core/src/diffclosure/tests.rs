use super::*;
use crate::exactnum::parse::{parse_expr, Expr};
use crate::exactnum::rat;

fn dp(s: &str) -> DiffPoly {
    let mut leaf = |e: &Expr| match e {
        Expr::Num(q) => Ok(Element::from_rational(q.clone())),
        Expr::Tag(t) => Ok(Element::from_tag(*t)),
        _ => Err(Error::Precondition("unsupported leaf".into())),
    };
    DiffPoly::from_expr(&parse_expr(s).unwrap(), &mut leaf).unwrap()
}

#[test]
fn blum_examples() {
    let mut f = DiffField::new();
    let a = f.blum_witness(&dp("y'"), &dp("y")).unwrap();
    assert!(f.apply_delta(&a).unwrap().is_zero().unwrap());
    assert!(!a.is_zero().unwrap());

    let b = f.blum_witness(&dp("y' - y"), &dp("y - 1")).unwrap();
    assert!(f.apply_delta(&b).unwrap().equals(&b).unwrap());
    assert!(f.diff_eval(&dp("y' - y"), &b).unwrap().is_zero().unwrap());
    assert!(!f.diff_eval(&dp("y - 1"), &b).unwrap().is_zero().unwrap());

    let c = f.blum_witness(&dp("y^2 - 2"), &dp("1")).unwrap();
    assert!(c.mul(&c).equals(&Element::from_int(2)).unwrap());

    assert!(f.blum_witness(&dp("y'"), &dp("y'")).is_err());
}

#[test]
fn blum_higher_order() {
    let mut f = DiffField::new();
    let p = dp("y''^2 + y*y' - 3");
    let q = dp("y' + y");
    let w = f.blum_witness(&p, &q).unwrap();
    assert!(f.diff_eval(&p, &w).unwrap().is_zero().unwrap());
    assert!(!f.diff_eval(&q, &w).unwrap().is_zero().unwrap());
    let ds = f.table.derivatives(&w, 1).unwrap();
    assert!(ds[1].equals(&Element::from_tag(w.support()[0] + 1)).unwrap());
}

#[test]
fn ordered_examples() {
    let mut f = DiffField::new();
    let one = Element::one();
    let w = f
        .ordered_witness(&dp("y' - y"), &[dp("y")], &[one.clone(), one.clone()])
        .unwrap();
    assert!(f.apply_delta(&w).unwrap().equals(&w).unwrap());
    assert_eq!(w.sign().unwrap(), Sign::Positive);
    let b = w.enclose_width(20).unwrap();
    assert!(b.re.contains_rational(&rat(1, 1)) || b.re.lo.to_rational() > rat(9, 10));
    assert!(b.re.hi.to_rational() < rat(11, 10));

    let z = Element::zero();
    let v = f
        .ordered_witness(&dp("y'"), &[dp("1 - y^2")], &[z.clone(), z.clone()])
        .unwrap();
    assert!(f.apply_delta(&v).unwrap().is_zero().unwrap());
    assert_eq!(v.add(&one).sign().unwrap(), Sign::Positive);
    assert_eq!(one.sub(&v).sign().unwrap(), Sign::Positive);

    // ∂p*/∂x1 = 2·x1 vanishes at x1 = 0
    let e = f.ordered_witness(&dp("y'^2 - y^2"), &[], &[z.clone(), z.clone()]);
    assert!(matches!(e, Err(Error::NotSingerConfiguration(_))));
}

#[test]
fn distinct() {
    let mut f = DiffField::new();
    let s = f.distinct_solutions(3).unwrap();
    let p0 = dp("(1 + y)*y' - y");
    for (i, a) in s.iter().enumerate() {
        assert!(!a.is_zero().unwrap());
        assert!(f.diff_eval(&p0, a).unwrap().is_zero().unwrap());
        for b in &s[i + 1..] {
            assert!(!a.equals(b).unwrap());
        }
    }
}

#[test]
fn root_between_examples() {
    let mut f = DiffField::new();
    let c = f
        .root_between(&dp("y' + y - 1"), &Element::zero(), &Element::from_int(2))
        .unwrap();
    let dc = f.apply_delta(&c).unwrap();
    assert!(dc.equals(&Element::one().sub(&c)).unwrap());
    assert_eq!(c.sign().unwrap(), Sign::Positive);
    assert_eq!(Element::from_int(2).sub(&c).sign().unwrap(), Sign::Positive);

    let s = f
        .root_between(&dp("y^2 - 2"), &Element::one(), &Element::from_int(2))
        .unwrap();
    assert!(s.mul(&s).equals(&Element::from_int(2)).unwrap());

    assert!(f
        .root_between(&dp("y' + y - 1"), &Element::from_int(2), &Element::from_int(3))
        .is_err());
}

#[test]
fn generators() {
    let mut f = DiffField::new();
    let x = f
        .adjoin_differential_generators(1, |_, _| Ok(vec![Element::one()]))
        .unwrap();
    assert!(f.apply_delta(&x[0]).unwrap().equals(&Element::one()).unwrap());
    let e = f
        .adjoin_differential_generators(1, |_, g| Ok(vec![g[0].clone()]))
        .unwrap();
    assert!(f.apply_delta(&e[0]).unwrap().equals(&e[0]).unwrap());
    let sc = f
        .adjoin_differential_generators(2, |_, g| Ok(vec![g[1].clone(), g[0].neg()]))
        .unwrap();
    let d2 = f.table.derivatives(&sc[0], 2).unwrap();
    assert!(d2[2].equals(&sc[0].neg()).unwrap());
    let bad = f.adjoin_differential_generators(1, |_, _| Ok(vec![Element::from_tag(999)]));
    assert_eq!(bad.unwrap_err(), Error::UnallocatedTag(999));
}

#[test]
fn complexify() {
    let mut f = DiffField::new();
    let g = f
        .adjoin_differential_generators(2, |_, g| Ok(vec![g[1].clone(), Element::one()]))
        .unwrap();
    let (d, ok) = f.complexify_delta(&g[0], &Element::zero()).unwrap();
    assert!(ok && d.equals(&g[1]).unwrap());
    let (d, ok) = f.complexify_delta(&Element::zero(), &Element::one()).unwrap();
    assert!(ok && d.is_zero().unwrap());
    let (_, ok) = f.complexify_delta(&g[0].mul(&g[1]), &g[1].add(&Element::from_int(3))).unwrap();
    assert!(ok);
}
