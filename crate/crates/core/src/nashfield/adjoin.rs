//! Root adjunction and real root enumeration.
//!
//! The coefficients' atoms are eliminated from `C` by resultants, giving a
//! polynomial `R ∈ ℚ[Λ][Z]` whose roots include those of `C`. `R`'s roots
//! are isolated at the anchor; roots of `R` that are not roots of `C` are
//! weeded out by interval evaluation of `C` (they have `C ≠ 0` there, so
//! the enclosure of `C` eventually excludes zero).

use std::cmp::Ordering;
use std::sync::Arc;

use super::atom::{anchor_coeffs, Atom};
use super::degree_budget;
use super::element::{eliminate_atoms, normalize_defining, Element, ELIM};
use super::poly::ElemPoly;
use crate::error::{Error, Result};
use crate::exactnum::roots::{follow, isolate, Isolation, Isolator, MAX_PREC, START_PREC};
use crate::exactnum::{constant_factor_in, gcd, resultant, squarefree_part, DyadicBox, MPoly, Var};

/// Which root to pin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    /// k-th real root in increasing order, 1-based.
    RealIndex(usize),
    /// Smallest modulus; ties go to the smaller argument in `[0, 2π)`.
    Smallest,
    /// The unique root inside the given box.
    Hint(DyadicBox),
}

impl std::fmt::Display for Selector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Selector::RealIndex(k) => write!(f, "real {}", k),
            Selector::Smallest => write!(f, "smallest"),
            Selector::Hint(b) => write!(f, "hint {:?}", b),
        }
    }
}

/// Extra ladder rungs spent trying to separate moduli before declaring a tie.
const TIE_RUNGS: usize = 4;

struct RootSet {
    c: ElemPoly,
    r: MPoly,
    coeffs: Vec<MPoly>,
    iso: Isolator,
    level: Isolation,
    cands: Vec<usize>,
}

impl RootSet {
    fn build(c: &ElemPoly) -> Result<RootSet> {
        let d = match c.degree() {
            None => return Err(Error::IdenticallyZero),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        let mut atoms: Vec<Arc<Atom>> = Vec::new();
        for e in c.coeffs() {
            for a in e.atoms() {
                if !atoms.iter().any(|b| b.id() == a.id()) {
                    atoms.push(a.clone());
                }
            }
        }
        atoms.sort_by_key(|a| a.id());
        let budget = degree_budget();
        let bound = d * atoms.iter().map(|a| a.degree()).product::<usize>();
        if bound > budget {
            return Err(Error::DegreeBudget { degree: bound, budget });
        }
        // clear denominators
        let mut l = MPoly::one();
        for e in c.coeffs() {
            let g = gcd(&l, e.den());
            l = l.mul_ref(&e.den().div_exact(&g).expect("gcd divides"));
        }
        let terms: Vec<MPoly> = c
            .coeffs()
            .iter()
            .map(|e| e.num().mul_ref(&l.div_exact(e.den()).expect("denominator divides lcm")))
            .collect();
        let p = MPoly::from_coeffs(Var::Z, &terms);
        let r = match eliminate_atoms(&p, &atoms)? {
            Some(r) => r,
            None => eliminate_by_coefficients(c)?,
        };
        let r = squarefree_part(&r, Var::Z)?;
        let dr = r.degree_in(Var::Z);
        if dr > budget {
            return Err(Error::DegreeBudget { degree: dr, budget });
        }
        let r = normalize_defining(&r);
        let want = if atoms.is_empty() { dr } else { c.distinct_root_count()? };
        let coeffs = r.coeffs_in(Var::Z);
        let (level, iso) = isolate(|p| anchor_coeffs(&coeffs, p), START_PREC)?;
        let mut set = RootSet {
            c: c.clone(),
            r,
            coeffs,
            iso,
            level,
            cands: Vec::new(),
        };
        set.cands = set.filter_roots_of_c(atoms.is_empty())?;
        while set.cands.len() > want {
            set.advance()?;
            set.cands = set.filter_roots_of_c(atoms.is_empty())?;
        }
        Ok(set)
    }

    fn filter_roots_of_c(&self, all: bool) -> Result<Vec<usize>> {
        let n = self.level.boxes.len();
        if all {
            return Ok((0..n).collect());
        }
        let mut out = Vec::new();
        for k in 0..n {
            if self.c.eval_box(&self.level.boxes[k], self.level.prec)?.contains_zero() {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Move to the next certified rung, tracking the candidate roots.
    fn advance(&mut self) -> Result<()> {
        let mut prec = self.level.prec;
        loop {
            prec *= 2;
            if prec > MAX_PREC {
                return Err(Error::PrecisionBudget);
            }
            let c = anchor_coeffs(&self.coeffs, prec)?;
            let Some(level) = self.iso.isolate_at(&c, prec) else {
                continue;
            };
            let moved: Option<Vec<usize>> = self
                .cands
                .iter()
                .map(|k| follow(&self.level.boxes[*k], &level))
                .collect();
            let Some(moved) = moved else {
                continue;
            };
            self.level = level;
            self.cands = moved;
            return Ok(());
        }
    }

    fn classified(&self) -> bool {
        self.cands
            .iter()
            .all(|k| self.level.real[*k] || !self.level.boxes[*k].im.contains_zero())
    }

    /// Candidate roots certified real, in increasing order.
    fn real_candidates(&mut self) -> Result<Vec<usize>> {
        while !self.classified() {
            self.advance()?;
        }
        let mut v: Vec<usize> = self
            .cands
            .iter()
            .copied()
            .filter(|k| self.level.real[*k])
            .collect();
        v.sort_by(|a, b| self.level.boxes[*a].re.lo.cmp(&self.level.boxes[*b].re.lo));
        Ok(v)
    }

    fn smallest(&mut self) -> Result<usize> {
        let mut rung = 0;
        loop {
            let w = self.level.prec + 16;
            let norms: Vec<_> = self
                .cands
                .iter()
                .map(|k| self.level.boxes[*k].norm_sqr(w))
                .collect();
            let min_hi = norms.iter().map(|n| n.hi.clone()).min().unwrap();
            let tied: Vec<usize> = (0..self.cands.len())
                .filter(|i| norms[*i].lo <= min_hi)
                .collect();
            if tied.len() == 1 || rung == TIE_RUNGS {
                let boxes = &self.level.boxes;
                let best = tied
                    .into_iter()
                    .map(|i| self.cands[i])
                    .min_by(|a, b| arg_cmp(&boxes[*a], &boxes[*b]))
                    .unwrap();
                return Ok(best);
            }
            self.advance()?;
            rung += 1;
        }
    }

    fn by_hint(&mut self, hint: &DyadicBox) -> Result<usize> {
        for _ in 0..=TIE_RUNGS {
            let hits: Vec<usize> = self
                .cands
                .iter()
                .copied()
                .filter(|k| self.level.boxes[*k].intersects(hint))
                .collect();
            match hits.len() {
                0 => return Err(Error::SelectorOutOfRange("no root in the hint box".into())),
                1 => return Ok(hits[0]),
                _ => self.advance()?,
            }
        }
        Err(Error::SelectorOutOfRange("hint box holds several roots".into()))
    }

    fn select(&mut self, sel: &Selector) -> Result<usize> {
        match sel {
            Selector::Smallest => self.smallest(),
            Selector::Hint(h) => self.by_hint(h),
            Selector::RealIndex(k) => {
                let reals = self.real_candidates()?;
                if *k == 0 || *k > reals.len() {
                    return Err(Error::SelectorOutOfRange(format!(
                        "real root {} requested, {} available",
                        k,
                        reals.len()
                    )));
                }
                Ok(reals[k - 1])
            }
        }
    }

    /// Pin root `k` as an atom, then shrink its polynomial if `R` splits.
    fn finalize(&self, k: usize) -> Result<Element> {
        let atom = Atom::from_isolation(&self.r, self.iso.clone(), &self.level, k);
        let e = Element::from_atom(atom);
        if !splittable(&self.r) {
            return Ok(e);
        }
        let r2 = e.defining()?;
        let d2 = r2.degree_in(Var::Z);
        if d2 == 1 {
            let c = r2.coeffs_in(Var::Z);
            return Element::from_rational_function(c[0].neg_ref(), c[1].clone());
        }
        if d2 == self.r.degree_in(Var::Z) {
            return Ok(e);
        }
        let coeffs = r2.coeffs_in(Var::Z);
        let (level, iso) = isolate(|p| anchor_coeffs(&coeffs, p), START_PREC)?;
        let k2 = e.locate(&level)?;
        Ok(Element::from_atom(Atom::from_isolation(&r2, iso, &level, k2)))
    }
}

fn splittable(r: &MPoly) -> bool {
    let cs = r.coeffs_in(Var::Z);
    cs[0].is_zero() || r.vars() == [Var::Z] || constant_factor_in(r, Var::Z).degree_in(Var::Z) > 0
}

/// Elimination through the coefficients' own certificates; used when the
/// atom route degenerates. Each coefficient becomes a variable `y_k`
/// constrained by its defining polynomial; with `0` removed from the
/// leading coefficient's candidates the product never vanishes identically.
fn eliminate_by_coefficients(c: &ElemPoly) -> Result<MPoly> {
    let d = c.degree().unwrap();
    let mut p = MPoly::zero();
    let mut constraints = Vec::new();
    for (k, e) in c.coeffs().iter().enumerate() {
        if e.is_trivially_zero() {
            continue;
        }
        let y = Var::aux(ELIM + 64 + k as u32);
        p = p.add_ref(&MPoly::var(y).mul_ref(&MPoly::var(Var::Z).pow(k as u32)));
        let mut r = e.defining()?;
        if k == d && r.coeffs_in(Var::Z)[0].is_zero() && r.degree_in(Var::Z) > 1 {
            r = r.div_exact(&MPoly::var(Var::Z)).expect("Z divides");
        }
        constraints.push((y, r.rename(|v| if v == Var::Z { y } else { v })));
    }
    for (y, r) in constraints {
        p = resultant(&p, &r, y)?;
    }
    Ok(p)
}

/// Order by argument in `[0, 2π)`, using box centres.
fn arg_cmp(a: &DyadicBox, b: &DyadicBox) -> Ordering {
    let (ax, ay) = a.center();
    let (bx, by) = b.center();
    let half = |x: &crate::exactnum::Dyadic, y: &crate::exactnum::Dyadic| {
        if y.signum() > 0 || (y.is_zero() && x.signum() >= 0) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(&ax, &ay), half(&bx, &by));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // counter-clockwise from a to b means a comes first
    let cross = ax.mul(&by).sub(&ay.mul(&bx));
    0.cmp(&cross.signum())
}

/// Adjoin one root of `C` chosen by `sel`.
pub fn adjoin_root(c: &ElemPoly, sel: &Selector) -> Result<Element> {
    if c.degree() == Some(1) && (c.is_real() || !matches!(sel, Selector::RealIndex(_))) {
        let co = c.coeffs();
        let root = co[0].neg().div(&co[1])?;
        return match sel {
            Selector::RealIndex(k) if *k != 1 => Err(Error::SelectorOutOfRange(format!(
                "real root {} requested, 1 available",
                k
            ))),
            Selector::Hint(h) if !root.enclose(64)?.intersects(h) => {
                Err(Error::SelectorOutOfRange("no root in the hint box".into()))
            }
            _ => Ok(root),
        };
    }
    let mut set = RootSet::build(c)?;
    let k = set.select(sel)?;
    set.finalize(k)
}

/// All real roots of `C` (real coefficients), increasing.
pub fn real_roots(c: &ElemPoly) -> Result<Vec<Element>> {
    if c.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    if !c.is_real() {
        return Err(Error::Precondition("real_roots needs real coefficients".into()));
    }
    if c.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if c.degree() == Some(1) {
        return Ok(vec![adjoin_root(c, &Selector::Smallest)?]);
    }
    let mut set = RootSet::build(c)?;
    let ks = set.real_candidates()?;
    ks.into_iter().map(|k| set.finalize(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::nashfield::element::Sign;

    fn p(c: &[i64]) -> ElemPoly {
        ElemPoly::from_rationals(&c.iter().map(|x| rat(*x, 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sqrt_two_by_index() {
        let s = adjoin_root(&p(&[-2, 0, 1]), &Selector::RealIndex(2)).unwrap();
        assert!(s.is_real());
        assert_eq!(s.sign().unwrap(), Sign::Positive);
        let lo = adjoin_root(&p(&[-2, 0, 1]), &Selector::RealIndex(1)).unwrap();
        assert_eq!(lo.sign().unwrap(), Sign::Negative);
        assert!(adjoin_root(&p(&[-2, 0, 1]), &Selector::RealIndex(3)).is_err());
        assert_eq!(adjoin_root(&p(&[5]), &Selector::Smallest).unwrap_err(), Error::ConstantPolynomial);
    }

    #[test]
    fn i_is_the_upper_root() {
        let i = adjoin_root(&p(&[1, 0, 1]), &Selector::Smallest).unwrap();
        assert!(!i.is_real());
        assert!(i.mul(&i).add(&Element::one()).is_zero().unwrap());
        assert!(i.enclose(32).unwrap().im.lo.signum() > 0);
        assert!(i.equals(&Element::i()).unwrap());
        // ties on the real axis go to the positive root
        let s = adjoin_root(&p(&[-2, 0, 1]), &Selector::Smallest).unwrap();
        assert_eq!(s.sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn linear_in_a_tag() {
        let t = Element::from_tag(0);
        let c = ElemPoly::new(vec![t.neg(), Element::one()]).unwrap();
        let e = adjoin_root(&c, &Selector::Smallest).unwrap();
        assert!(e.equals(&t).unwrap());
        assert!(e.atoms().is_empty());
    }

    #[test]
    fn real_root_lists() {
        let r = real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].sign().unwrap(), Sign::Negative);
        assert!(r[0].add(&r[1]).is_zero().unwrap());
        assert!(real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        let t = Element::from_tag(0);
        let cube = ElemPoly::new(vec![t.neg(), Element::zero(), Element::zero(), Element::one()]).unwrap();
        let r = real_roots(&cube).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].pow(3).unwrap().equals(&t).unwrap());
        // cube root of e^sqrt2 = 1.6022429972035601...
        let b = r[0].enclose_width(50).unwrap();
        assert!(b.re.lo.to_rational() > rat(1602242997203, 1_000_000_000_000));
        assert!(b.re.hi.to_rational() < rat(1602242997204, 1_000_000_000_000));
    }

    #[test]
    fn rational_roots_collapse() {
        // (Z - 1)(Z + 1)(Z^2 + 1): real roots are plain rationals
        let r = real_roots(&p(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].as_rational(), Some(rat(1, 1)));
        assert_eq!(r[0].as_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn coefficients_with_atoms() {
        // Z^2 - √2·Z - 1 has roots (√2 ± √6)/2
        let s = adjoin_root(&p(&[-2, 0, 1]), &Selector::RealIndex(2)).unwrap();
        let c = ElemPoly::new(vec![Element::from_int(-1), s.neg(), Element::one()]).unwrap();
        let rs = real_roots(&c).unwrap();
        assert_eq!(rs.len(), 2);
        for x in &rs {
            assert!(c.eval(x).is_zero().unwrap());
        }
        assert!(rs[0].add(&rs[1]).equals(&s).unwrap());
    }
}
