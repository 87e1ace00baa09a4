//! Univariate polynomials with field-element coefficients.

use num_rational::BigRational;

use super::element::{discriminant_nonzero, Element, Sign};
use crate::error::{Error, Result};
use crate::exactnum::DyadicBox;

/// Coefficients lowest degree first; the leading one is nonzero.
#[derive(Clone, Debug)]
pub struct ElemPoly(Vec<Element>);

impl ElemPoly {
    /// Drops leading coefficients that are zero in the field.
    pub fn new(mut coeffs: Vec<Element>) -> Result<ElemPoly> {
        while let Some(c) = coeffs.last() {
            if c.is_trivially_zero() || c.is_zero()? {
                coeffs.pop();
            } else {
                break;
            }
        }
        Ok(ElemPoly(coeffs))
    }

    pub fn from_rationals(c: &[BigRational]) -> Result<ElemPoly> {
        ElemPoly::new(c.iter().cloned().map(Element::from_rational).collect())
    }

    pub fn zero() -> ElemPoly {
        ElemPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Element> {
        self.0.last()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|c| c.is_real())
    }

    pub fn constant(c: Element) -> Result<ElemPoly> {
        ElemPoly::new(vec![c])
    }

    /// `c0 + c1·X`.
    pub fn linear(c0: Element, c1: Element) -> Result<ElemPoly> {
        ElemPoly::new(vec![c0, c1])
    }

    pub fn add(&self, o: &ElemPoly) -> Result<ElemPoly> {
        let n = self.0.len().max(o.0.len());
        let z = Element::zero();
        ElemPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&z).add(o.0.get(k).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &ElemPoly) -> Result<ElemPoly> {
        if self.is_zero() || o.is_zero() {
            return Ok(ElemPoly::zero());
        }
        let mut out = vec![Element::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        ElemPoly::new(out)
    }

    pub fn scale(&self, c: &Element) -> Result<ElemPoly> {
        ElemPoly::new(self.0.iter().map(|x| x.mul(c)).collect())
    }

    pub fn eval(&self, x: &Element) -> Element {
        let mut acc = Element::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Interval Horner evaluation with coefficient enclosures at `prec`.
    pub fn eval_box(&self, z: &DyadicBox, prec: u32) -> Result<DyadicBox> {
        let mut acc = DyadicBox::point_rational(&BigRational::from_integer(0.into()), prec);
        for c in self.0.iter().rev() {
            acc = acc.mul(z, prec + 16).add(&c.enclose(prec)?, prec + 16);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Result<ElemPoly> {
        ElemPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&Element::from_int(k as i64)))
                .collect(),
        )
    }

    pub fn neg(&self) -> ElemPoly {
        ElemPoly(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn monic(&self) -> Result<ElemPoly> {
        let Some(l) = self.leading() else {
            return Ok(ElemPoly::zero());
        };
        let inv = l.inv()?;
        let mut c: Vec<Element> = self.0.iter().map(|x| x.mul(&inv)).collect();
        *c.last_mut().unwrap() = Element::one();
        Ok(ElemPoly(c))
    }

    pub fn div_rem(&self, d: &ElemPoly) -> Result<(ElemPoly, ElemPoly)> {
        let dd = d.degree().ok_or(Error::ZeroDivisor)?;
        if self.0.len() <= dd {
            return Ok((ElemPoly::zero(), self.clone()));
        }
        let inv = d.leading().unwrap().inv()?;
        let mut r = self.0.clone();
        let mut q = vec![Element::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = r[k + dd].mul(&inv);
            if !t.is_trivially_zero() {
                for (j, c) in d.0.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&t.mul(c));
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        Ok((ElemPoly::new(q)?, ElemPoly::new(r)?))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &ElemPoly) -> Result<ElemPoly> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> Result<ElemPoly> {
        let g = self.gcd(&self.derivative()?)?;
        if g.degree().unwrap_or(0) == 0 {
            return Ok(self.clone());
        }
        Ok(self.div_rem(&g)?.0)
    }

    /// Number of distinct roots in the algebraic closure.
    pub fn distinct_root_count(&self) -> Result<usize> {
        let d = self.degree().ok_or(Error::IdenticallyZero)?;
        if d <= 1 || discriminant_nonzero(&self.0)? {
            return Ok(d);
        }
        let g = self.gcd(&self.derivative()?)?;
        Ok(d - g.degree().unwrap_or(0))
    }

    fn sturm_sequence(&self) -> Result<Vec<ElemPoly>> {
        let mut seq = vec![self.clone(), self.derivative()?];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1])?.1.neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        Ok(seq)
    }

    /// Distinct real roots in `[0, ∞)` by a Sturm sequence whose signs are
    /// decided exactly in the field. Coefficients must be real.
    pub fn count_nonnegative_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::IdenticallyZero);
        }
        if !self.is_real() {
            return Err(Error::SignOfNonreal);
        }
        let f = self.squarefree()?;
        if f.degree() == Some(0) {
            return Ok(0);
        }
        let seq = f.sturm_sequence()?;
        let at_zero = seq
            .iter()
            .map(|p| p.0[0].sign())
            .collect::<Result<Vec<Sign>>>()?;
        let at_inf = seq
            .iter()
            .map(|p| p.leading().unwrap().sign())
            .collect::<Result<Vec<Sign>>>()?;
        let root_at_zero = usize::from(at_zero[0] == Sign::Zero);
        Ok(variations(&at_zero).saturating_sub(variations(&at_inf)) + root_at_zero)
    }
}

fn variations(signs: &[Sign]) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.iter().map(|s| s.as_i32()).filter(|s| *s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(c: &[i64]) -> ElemPoly {
        ElemPoly::from_rationals(&c.iter().map(|x| rat(*x, 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn euclid_and_squarefree() {
        // (Z - 1)^2 (Z + 2)
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(f.distinct_root_count().unwrap(), 2);
        assert_eq!(f.squarefree().unwrap().degree(), Some(2));
        let g = f.gcd(&p(&[-1, 1])).unwrap();
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn sturm_with_tag_coefficients() {
        // Z^2 - Λ0 has one nonnegative root; Z^2 + Λ0 none; (Z - Λ0)(Z + 1) one
        let t = Element::from_tag(0);
        let a = ElemPoly::new(vec![t.neg(), Element::zero(), Element::one()]).unwrap();
        assert_eq!(a.count_nonnegative_roots().unwrap(), 1);
        let b = ElemPoly::new(vec![t.clone(), Element::zero(), Element::one()]).unwrap();
        assert_eq!(b.count_nonnegative_roots().unwrap(), 0);
        let c = ElemPoly::new(vec![t.neg(), Element::one().sub(&t), Element::one()]).unwrap();
        assert_eq!(c.count_nonnegative_roots().unwrap(), 1);
        let d = p(&[0, -1, 1]);
        assert_eq!(d.count_nonnegative_roots().unwrap(), 2);
    }
}
