//! Conjugation, real/imaginary parts and partial derivatives.

use std::sync::Arc;

use num_rational::BigRational;

use super::atom::Atom;
use super::element::Element;
use crate::error::Result;
use crate::exactnum::{MPoly, Var};

/// Complex conjugate: real atoms stay, `i ↦ −i`, other atoms move to the
/// atom pinned at the conjugate root of the same polynomial.
pub fn conjugate(a: &Element) -> Result<Element> {
    if a.is_real() {
        return Ok(a.clone());
    }
    let mut images: Vec<(Var, MPoly)> = Vec::new();
    let mut atoms: Vec<Arc<Atom>> = Vec::new();
    for x in a.atoms() {
        if x.id() == 0 {
            images.push((x.var(), MPoly::var(x.var()).neg_ref()));
            atoms.push(x.clone());
        } else if x.is_real() {
            atoms.push(x.clone());
        } else {
            let c = x.conjugate();
            images.push((x.var(), MPoly::var(c.var())));
            atoms.push(c);
        }
    }
    atoms.sort_by_key(|x| x.id());
    a.map_vars(
        |v| images.iter().find(|(w, _)| *w == v).map(|(_, p)| p.clone()),
        atoms,
        false,
    )
}

/// `(re, im)` with `a = re + i·im`, both flagged real.
pub fn split_re_im(a: &Element) -> Result<(Element, Element)> {
    if a.is_real() {
        return Ok((a.clone(), Element::zero()));
    }
    let c = conjugate(a)?;
    let half = BigRational::new(1.into(), 2.into());
    let re = a.add(&c).scale(&half).assert_real();
    // 1/(2i) = −i/2
    let im = a.sub(&c).mul(&Element::i()).scale(&-half).assert_real();
    Ok((re, im))
}

/// `∂a/∂Λ_t` by the chain rule through the atoms, with
/// `∂α/∂Λ_t = −A_t(α)/A_Y(α)` from the atom's defining polynomial `A`.
pub fn partial_derivative(a: &Element, t: u32) -> Result<Element> {
    let tv = Var::tag(t);
    let (n, d) = (a.num(), a.den());
    // atoms whose polynomial depends on Λ_t: (var, −A_t, A_Y)
    let moving: Vec<(Var, MPoly, MPoly)> = a
        .atoms()
        .iter()
        .filter(|x| x.poly().contains_var(tv))
        .map(|x| {
            let v = x.var();
            (v, x.poly().derivative(tv).neg_ref(), x.poly().derivative(v))
        })
        .collect();
    if !n.contains_var(tv) && !d.contains_var(tv) && moving.is_empty() {
        return Ok(Element::zero());
    }
    let q_all = moving.iter().fold(MPoly::one(), |acc, (_, _, q)| acc.mul_ref(q));
    // total derivative of a polynomial, multiplied by q_all
    let total = |p: &MPoly| -> MPoly {
        let mut acc = p.derivative(tv).mul_ref(&q_all);
        for (k, (v, num, _)) in moving.iter().enumerate() {
            let dp = p.derivative(*v);
            if dp.is_zero() {
                continue;
            }
            let others = moving
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(MPoly::one(), |acc, (_, (_, _, q))| acc.mul_ref(q));
            acc = acc.add_ref(&dp.mul_ref(num).mul_ref(&others));
        }
        acc
    };
    let top = total(n).mul_ref(d).sub_ref(&n.mul_ref(&total(d)));
    let bottom = d.mul_ref(d).mul_ref(&q_all);
    Element::build(top, bottom, a.atoms().to_vec(), a.is_real())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::nashfield::adjoin::{adjoin_root, Selector};
    use crate::nashfield::poly::ElemPoly;

    #[test]
    fn conjugation() {
        let i = Element::i();
        let ci = conjugate(&i).unwrap();
        assert!(ci.add(&i).is_zero().unwrap());
        let (re, im) = split_re_im(&i).unwrap();
        assert!(re.is_zero().unwrap());
        assert!(im.equals(&Element::one()).unwrap());
        let s = adjoin_root(
            &ElemPoly::from_rationals(&[rat(-2, 1), rat(0, 1), rat(1, 1)]).unwrap(),
            &Selector::RealIndex(2),
        )
        .unwrap();
        let t = Element::from_tag(0);
        let a = s.add(&i.mul(&t));
        let (re, im) = split_re_im(&a).unwrap();
        assert!(re.equals(&s).unwrap());
        assert!(im.equals(&t).unwrap());
        assert!(re.add(&i.mul(&im)).equals(&a).unwrap());
        assert!(conjugate(&conjugate(&a).unwrap()).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn conjugate_of_generic_complex_atom() {
        // root of Z^3 - 2 in the upper half-plane
        let c = ElemPoly::from_rationals(&[rat(-2, 1), rat(0, 1), rat(0, 1), rat(1, 1)]).unwrap();
        let w = adjoin_root(&c, &Selector::Hint(crate::exactnum::DyadicBox::new(
            crate::exactnum::DyadicInterval::from_rational(&rat(-1, 1), 8).hull(&crate::exactnum::DyadicInterval::from_rational(&rat(0, 1), 8)),
            crate::exactnum::DyadicInterval::from_rational(&rat(1, 2), 8).hull(&crate::exactnum::DyadicInterval::from_rational(&rat(2, 1), 8)),
        )))
        .unwrap();
        assert!(!w.is_real());
        let cw = conjugate(&w).unwrap();
        assert!(!cw.equals(&w).unwrap());
        assert!(cw.pow(3).unwrap().equals(&Element::from_int(2)).unwrap());
        let (re, im) = split_re_im(&w).unwrap();
        assert_eq!(re.sign().unwrap(), crate::nashfield::Sign::Negative);
        assert_eq!(im.sign().unwrap(), crate::nashfield::Sign::Positive);
    }

    #[test]
    fn derivatives() {
        let t = Element::from_tag(0);
        assert!(partial_derivative(&t, 0).unwrap().equals(&Element::one()).unwrap());
        assert!(partial_derivative(&t, 1).unwrap().is_zero().unwrap());
        let c = ElemPoly::new(vec![t.neg(), Element::zero(), Element::one()]).unwrap();
        let a = adjoin_root(&c, &Selector::RealIndex(2)).unwrap();
        let da = partial_derivative(&a, 0).unwrap();
        let chk = a.scale(&rat(2, 1)).mul(&da).sub(&Element::one());
        assert!(chk.is_zero().unwrap());
        // quotient rule through a denominator
        let q = Element::one().div(&a).unwrap();
        let dq = partial_derivative(&q, 0).unwrap();
        assert!(dq.equals(&da.neg().div(&a.mul(&a)).unwrap()).unwrap());
    }
}
