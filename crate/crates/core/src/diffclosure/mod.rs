//! Differential polynomials, the derivation, and witness constructions.
//!
//! Witnesses consume fresh tags: a fresh tag has never been read, so its
//! derivative is still free and can be pinned to whatever the construction
//! needs. Pins never change afterwards, which keeps every earlier element's
//! derivatives valid.

mod derivation;
mod diffpoly;

pub use derivation::DerivationTable;
pub use diffpoly::DiffPoly;

use std::fmt;

use num_rational::BigRational;

use crate::anchor::{self, Anchor};
use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, Round};
use crate::nashfield::{adjoin_root, real_roots, ElemPoly, Element, Selector, Sign};

pub const DEFAULT_RETRIES: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Blum,
    Ordered,
    Adjoin,
    Distinct,
    RootBetween,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Blum => "blum",
            WitnessKind::Ordered => "ordered",
            WitnessKind::Adjoin => "adjoin",
            WitnessKind::Distinct => "distinct",
            WitnessKind::RootBetween => "root_between",
        })
    }
}

#[derive(Clone, Debug)]
pub struct WitnessRecord {
    pub kind: WitnessKind,
    pub inputs: Vec<String>,
    pub tags: Vec<u32>,
    pub selections: Vec<String>,
    pub result: Vec<Element>,
}

/// Tag registry plus derivation: the mutable state of a differential session.
pub struct DiffField {
    pub anchor: Anchor,
    pub table: DerivationTable,
    pub max_retries: u32,
}

impl Default for DiffField {
    fn default() -> Self {
        DiffField::new()
    }
}

fn singer(msg: impl Into<String>) -> Error {
    Error::NotSingerConfiguration(msg.into())
}

impl DiffField {
    pub fn new() -> DiffField {
        DiffField {
            anchor: Anchor::new(),
            table: DerivationTable::new(),
            max_retries: DEFAULT_RETRIES,
        }
    }

    pub fn fresh_tags(&mut self, n: usize) -> Result<Vec<u32>> {
        self.anchor.fresh_tags(n)
    }

    /// `Λ_t` for an allocated tag.
    pub fn tag(&self, t: u32) -> Result<Element> {
        if !self.anchor.is_allocated(t) {
            return Err(Error::UnallocatedTag(t));
        }
        Ok(Element::from_tag(t))
    }

    pub fn check_allocated(&self, e: &Element) -> Result<()> {
        match e.support().into_iter().find(|t| !self.anchor.is_allocated(*t)) {
            Some(t) => Err(Error::UnallocatedTag(t)),
            None => Ok(()),
        }
    }

    pub fn apply_delta(&mut self, a: &Element) -> Result<Element> {
        self.check_allocated(a)?;
        self.table.apply_delta(a)
    }

    pub fn diff_eval(&mut self, p: &DiffPoly, a: &Element) -> Result<Element> {
        self.check_allocated(a)?;
        self.table.diff_eval(p, a)
    }

    /// Differentiating `C(e) = 0` must give zero:
    /// `Σ δ(c_k)·e^k + C'(e)·δe`.
    pub fn relation_holds(&mut self, c: &ElemPoly, e: &Element) -> Result<bool> {
        let mut acc = Element::zero();
        let mut pw = Element::one();
        for ck in c.coeffs() {
            acc = acc.add(&self.table.apply_delta(ck)?.mul(&pw));
            pw = pw.mul(e);
        }
        let de = self.table.apply_delta(e)?;
        acc = acc.add(&c.derivative()?.eval(e).mul(&de));
        acc.is_zero()
    }

    /// `f` with `p(f) = 0` and `q(f) ≠ 0`, for `ord q < ord p`.
    pub fn blum_witness(&mut self, p: &DiffPoly, q: &DiffPoly) -> Result<Element> {
        if q.is_zero() {
            return Err(Error::Precondition("q must be nonzero".into()));
        }
        let n = p.ord();
        if n < 0 {
            return Err(Error::Precondition("p must have order at least 0".into()));
        }
        if q.ord() >= n {
            return Err(Error::Precondition(format!(
                "ord q = {} must be below ord p = {}",
                q.ord(),
                n
            )));
        }
        let n = n as usize;
        let inputs = vec![p.to_string(), q.to_string()];
        if n == 0 {
            let c = p.top_poly(&[])?;
            let f = adjoin_root(&c, &Selector::Smallest)?;
            self.table.record(WitnessRecord {
                kind: WitnessKind::Blum,
                inputs,
                tags: Vec::new(),
                selections: vec![Selector::Smallest.to_string()],
                result: vec![f.clone()],
            });
            return Ok(f);
        }
        let tags = self.fresh_tags(n)?;
        let lams: Vec<Element> = tags.iter().map(|t| Element::from_tag(*t)).collect();
        let c = p.top_poly(&lams)?;
        if c.degree().unwrap_or(0) == 0 {
            return Err(Error::DegenerateLeadingCoefficient(format!(
                "p*({}, Z) is constant in Z",
                lams.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
        for i in 0..n - 1 {
            self.table.pin(tags[i], lams[i + 1].clone())?;
        }
        let root = adjoin_root(&c, &Selector::Smallest)?;
        self.table.pin(tags[n - 1], root.clone())?;
        if !self.relation_holds(&c, &root)? {
            return Err(Error::Precondition("derivation does not respect the adjoined relation".into()));
        }
        let f = lams[0].clone();
        self.table.record(WitnessRecord {
            kind: WitnessKind::Blum,
            inputs,
            tags,
            selections: vec![Selector::Smallest.to_string()],
            result: vec![f.clone()],
        });
        Ok(f)
    }

    /// Rational `r ≈ a/x₀(t)` with relative error about `2^-bits`; `2^-bits`
    /// itself when `a = 0`.
    fn ratio(&self, a: &Element, t: u32, bits: u32) -> Result<BigRational> {
        if a.is_zero()? {
            return Ok(Dyadic::pow2(-(bits as i64)).to_rational());
        }
        let mut w = bits + 8;
        let av = loop {
            let b = a.enclose(w)?;
            if b.re.strict_sign().is_some() {
                break b.re;
            }
            w *= 2;
        };
        let x = anchor::coordinate(t, w + 8).midpoint().to_rational();
        let q = av.midpoint().to_rational() / x;
        Ok(Dyadic::from_rational(&q, bits + 4, Round::Floor).to_rational())
    }

    /// Real `f` with `p(f) = 0` and `q_j(f) > 0`, from a point where the
    /// Singer conditions hold.
    pub fn ordered_witness(&mut self, p: &DiffPoly, qs: &[DiffPoly], point: &[Element]) -> Result<Element> {
        let k = p.ord();
        if k < 0 {
            return Err(singer("p must have order at least 0"));
        }
        let k = k as usize;
        if point.len() != k + 1 {
            return Err(singer(format!("point needs {} coordinates, got {}", k + 1, point.len())));
        }
        if !p.is_real() || qs.iter().any(|q| !q.is_real()) || point.iter().any(|a| !a.is_real()) {
            return Err(singer("all inputs must be real"));
        }
        if qs.iter().any(|q| q.ord() > k as i64) {
            return Err(singer("ord q_j must not exceed ord p"));
        }
        for a in point {
            self.check_allocated(a)?;
        }
        if !p.eval_star(point)?.is_zero()? {
            return Err(singer("p* does not vanish at the point"));
        }
        if p.partial(k)?.eval_star(point)?.sign()? == Sign::Zero {
            return Err(singer("the partial derivative in the top variable vanishes"));
        }
        for q in qs {
            if q.eval_star(point)?.sign()? != Sign::Positive {
                return Err(singer(format!("q = {} is not positive at the point", q)));
            }
        }
        let mut inputs = vec![p.to_string()];
        inputs.extend(qs.iter().map(|q| q.to_string()));
        inputs.extend(point.iter().map(|a| a.to_string()));
        if k == 0 {
            let f = point[0].clone();
            self.table.record(WitnessRecord {
                kind: WitnessKind::Ordered,
                inputs,
                tags: Vec::new(),
                selections: Vec::new(),
                result: vec![f.clone()],
            });
            return Ok(f);
        }
        for attempt in 0..=self.max_retries {
            let bits = 8 + attempt;
            let tags = self.fresh_tags(k)?;
            let lams: Vec<Element> = tags.iter().map(|t| Element::from_tag(*t)).collect();
            let r = (0..k)
                .map(|i| self.ratio(&point[i], tags[i], bits))
                .collect::<Result<Vec<_>>>()?;
            let scaled: Vec<Element> = (0..k)
                .map(|i| lams[i].scale(&r[i]))
                .collect();
            let h = p.top_poly(&scaled)?;
            if h.degree().unwrap_or(0) == 0 {
                continue;
            }
            let roots = real_roots(&h)?;
            let Some(fz) = nearest(&roots, &point[k])? else {
                continue;
            };
            for i in 0..k - 1 {
                self.table.pin(tags[i], lams[i + 1].scale(&(&r[i + 1] / &r[i])))?;
            }
            self.table.pin(tags[k - 1], fz.scale(&r[k - 1].recip()))?;
            let f = scaled[0].clone();
            if !self.table.diff_eval(p, &f)?.is_zero()? {
                continue;
            }
            let mut ok = true;
            for q in qs {
                if self.table.diff_eval(q, &f)?.sign()? != Sign::Positive {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let mut selections = vec![format!("eps 2^-{}", bits)];
            selections.extend(r.iter().map(|x| format!("r {}", x)));
            self.table.record(WitnessRecord {
                kind: WitnessKind::Ordered,
                inputs,
                tags,
                selections,
                result: vec![f.clone()],
            });
            return Ok(f);
        }
        Err(Error::RetryBudgetExhausted(self.max_retries))
    }

    /// `n` distinct nonzero solutions of `(1 + y)y' − y = 0`.
    pub fn distinct_solutions(&mut self, n: usize) -> Result<Vec<Element>> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        let y = DiffPoly::y(0);
        let one = DiffPoly::constant(Element::one())?;
        let p0 = one.add(&y)?.mul(&DiffPoly::y(1))?.sub(&y)?;
        let mut q = y.clone();
        let mut out = Vec::with_capacity(n);
        let first = self.table.log().len();
        for _ in 0..n {
            let phi = self.blum_witness(&p0, &q)?;
            q = q.mul(&y.sub(&DiffPoly::constant(phi.clone())?)?)?;
            out.push(phi);
        }
        let tags: Vec<u32> = self.table.log()[first..].iter().flat_map(|r| r.tags.clone()).collect();
        self.table.record(WitnessRecord {
            kind: WitnessKind::Distinct,
            inputs: vec![n.to_string()],
            tags,
            selections: Vec::new(),
            result: out.clone(),
        });
        Ok(out)
    }

    /// Real `c` strictly between `a` and `b` with `p(c) = 0`, given that
    /// `p(a)` and `p(b)` have opposite signs.
    pub fn root_between(&mut self, p: &DiffPoly, a: &Element, b: &Element) -> Result<Element> {
        if !a.is_real() || !b.is_real() || !p.is_real() {
            return Err(Error::Precondition("root_between needs real inputs".into()));
        }
        if b.sub(a).sign()? != Sign::Positive {
            return Err(Error::Precondition("need a < b".into()));
        }
        let pa = self.diff_eval(p, a)?;
        let pb = self.diff_eval(p, b)?;
        if pa.mul(&pb).sign()? != Sign::Negative {
            return Err(Error::Precondition("p(a) and p(b) must have opposite signs".into()));
        }
        let inputs = vec![p.to_string(), a.to_string(), b.to_string()];
        let n = p.ord().max(0) as usize;
        let between = |c: &Element| -> Result<bool> {
            Ok(c.sub(a).sign()? == Sign::Positive && b.sub(c).sign()? == Sign::Positive)
        };
        if p.ord() == 0 {
            let c = p.top_poly(&[])?;
            for r in real_roots(&c.squarefree()?)? {
                if between(&r)? {
                    self.table.record(WitnessRecord {
                        kind: WitnessKind::RootBetween,
                        inputs,
                        tags: Vec::new(),
                        selections: vec!["order 0".into()],
                        result: vec![r.clone()],
                    });
                    return Ok(r);
                }
            }
            return Err(Error::Precondition("no root strictly between a and b".into()));
        }
        let da = self.table.derivatives(a, n)?;
        let db = self.table.derivatives(b, n)?;
        let lines = (0..=n)
            .map(|i| ElemPoly::linear(db[i].clone(), da[i].sub(&db[i])))
            .collect::<Result<Vec<_>>>()?;
        let rt = p.eval_star_poly(&lines)?;
        let zero = Element::zero();
        let one = Element::one();
        let mut t0 = None;
        for t in real_roots(&rt.squarefree()?)? {
            if t.sub(&zero).sign()? == Sign::Positive && one.sub(&t).sign()? == Sign::Positive {
                t0 = Some(t);
                break;
            }
        }
        let t0 = t0.ok_or_else(|| Error::Precondition("no interpolation root in (0, 1)".into()))?;
        let s0 = Element::one().sub(&t0);
        let point: Vec<Element> = (0..=n).map(|i| t0.mul(&da[i]).add(&s0.mul(&db[i]))).collect();
        if p.partial(n)?.eval_star(&point)?.is_zero()? {
            return Err(Error::NondegeneracyFailure(
                "the partial derivative in the top variable vanishes at the interpolated point".into(),
            ));
        }
        let y = DiffPoly::y(0);
        let q = y
            .sub(&DiffPoly::constant(a.clone())?)?
            .mul(&DiffPoly::constant(b.clone())?.sub(&y)?)?;
        let before = self.anchor.high_water();
        let c = self.ordered_witness(p, &[q], &point)?;
        self.table.record(WitnessRecord {
            kind: WitnessKind::RootBetween,
            inputs,
            tags: (before..self.anchor.high_water()).collect(),
            selections: vec![format!("t0 {}", t0.serialize()?)],
            result: vec![c.clone()],
        });
        Ok(c)
    }

    /// Fresh generators `e_j = Λ_{t_j}` with `δe_j = h_j(e)`.
    pub fn adjoin_differential_generators<F>(&mut self, n: usize, h: F) -> Result<Vec<Element>>
    where
        F: FnOnce(&mut DiffField, &[Element]) -> Result<Vec<Element>>,
    {
        let tags = self.fresh_tags(n)?;
        let gens: Vec<Element> = tags.iter().map(|t| Element::from_tag(*t)).collect();
        let hs = h(self, &gens)?;
        if hs.len() != n {
            return Err(Error::Precondition(format!("expected {} derivatives, got {}", n, hs.len())));
        }
        for g in &hs {
            self.check_allocated(g)?;
        }
        for (t, g) in tags.iter().zip(&hs) {
            self.table.pin(*t, g.clone())?;
        }
        self.table.record(WitnessRecord {
            kind: WitnessKind::Adjoin,
            inputs: hs.iter().map(|g| g.to_string()).collect(),
            tags,
            selections: Vec::new(),
            result: gens.clone(),
        });
        Ok(gens)
    }

    /// Check `δ(f₁ + i·f₂) = δf₁ + i·δf₂`; returns `δ(f₁ + i·f₂)`.
    pub fn complexify_delta(&mut self, f1: &Element, f2: &Element) -> Result<(Element, bool)> {
        if !f1.is_real() || !f2.is_real() {
            return Err(Error::Precondition("complexify_delta needs real parts".into()));
        }
        let i = Element::i();
        let whole = self.apply_delta(&f1.add(&i.mul(f2)))?;
        let parts = self.apply_delta(f1)?.add(&i.mul(&self.apply_delta(f2)?));
        let ok = whole.equals(&parts)?;
        Ok((whole, ok))
    }
}

/// The root closest to `target`.
fn nearest(roots: &[Element], target: &Element) -> Result<Option<Element>> {
    let mut best: Option<(BigRational, &Element)> = None;
    for r in roots {
        let d = r.sub(target).enclose(64)?.re.mag().to_rational();
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, r));
        }
    }
    Ok(best.map(|(_, r)| r.clone()))
}

#[cfg(test)]
mod tests;
