#![allow(dead_code)]

use std::collections::HashMap;

use nashdcf::diffclosure::DiffPoly;
use nashdcf::exactnum::parse::{parse_expr, Expr};
use nashdcf::exactnum::{rat, Rational};
use nashdcf::nashfield::{adjoin_root, ElemPoly, Element, Selector};
use nashdcf::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Differential polynomial from text; identifiers resolve through `names`.
pub fn dp_with(s: &str, names: &HashMap<String, Element>) -> DiffPoly {
    let mut leaf = |e: &Expr| -> Result<Element> {
        match e {
            Expr::Num(q) => Ok(Element::from_rational(q.clone())),
            Expr::Tag(t) => Ok(Element::from_tag(*t)),
            Expr::Ident(n) => names.get(n).cloned().ok_or_else(|| Error::UnknownName(n.clone())),
            _ => Err(Error::Precondition("unsupported leaf".into())),
        }
    };
    DiffPoly::from_expr(&parse_expr(s).unwrap(), &mut leaf).unwrap()
}

pub fn dp(s: &str) -> DiffPoly {
    dp_with(s, &HashMap::new())
}

pub fn q(n: i64, d: i64) -> Element {
    Element::from_rational(rat(n, d))
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

pub fn poly(c: &[Element]) -> ElemPoly {
    ElemPoly::new(c.to_vec()).unwrap()
}

/// The real root of `Z^k - a` picked by `sel`.
pub fn root_of(k: usize, a: &Element, sel: Selector) -> Element {
    let mut c = vec![a.neg()];
    c.extend(std::iter::repeat_n(Element::zero(), k - 1));
    c.push(Element::one());
    adjoin_root(&poly(&c), &sel).unwrap()
}

/// √2, √Λ₀ and ∛Λ₁ alongside their defining polynomials.
pub fn algebraic_pool() -> Vec<(Element, ElemPoly)> {
    let z = Element::zero();
    let one = Element::one();
    let mk = |c: Vec<Element>, sel: Selector| {
        let p = poly(&c);
        (adjoin_root(&p, &sel).unwrap(), p)
    };
    vec![
        mk(vec![q(-2, 1), z.clone(), one.clone()], Selector::RealIndex(2)),
        mk(vec![Element::from_tag(0).neg(), z.clone(), one.clone()], Selector::RealIndex(2)),
        mk(vec![Element::from_tag(1).neg(), z.clone(), z.clone(), one.clone()], Selector::RealIndex(1)),
    ]
}

/// Random real element: a rational, a tag, or a pool entry, combined once
/// with another such leaf.
pub fn random_real(rng: &mut ChaCha8Rng, pool: &[Element]) -> Element {
    random_real_in(rng, pool, 3)
}

/// As [`random_real`], drawing tags from the first `tags` only.
pub fn random_real_in(rng: &mut ChaCha8Rng, pool: &[Element], tags: u32) -> Element {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => Element::from_rational(small_rational(rng)),
        1 => Element::from_tag(rng.gen_range(0..tags)),
        _ => pool[rng.gen_range(0..pool.len())].clone(),
    };
    let (a, b) = (leaf(rng), leaf(rng));
    match rng.gen_range(0..4) {
        0 => a.add(&b),
        1 => a.sub(&b),
        2 => a.mul(&b),
        _ => {
            if b.is_zero().unwrap() {
                a
            } else {
                a.div(&b).unwrap()
            }
        }
    }
}
