//! Elements of the field: quotients `N/D` of polynomials in tags and atoms.
//!
//! The representation is reduced modulo every atom's defining polynomial,
//! so identities that follow from the field axioms and the atoms' relations
//! collapse syntactically. Anything subtler is decided by the defining
//! polynomial (the certificate) together with interval enclosures at the
//! anchor.
//!
//! Termination of every refinement loop below rests on one fact: a nonzero
//! polynomial in tags does not vanish at the anchor, because the anchor
//! coordinates are algebraically independent. Leading coefficients and
//! discriminants of square-free defining polynomials are such polynomials,
//! so distinct roots stay distinct at the anchor and a nonzero element has a
//! nonzero value there. Shrinking enclosures therefore eventually separate
//! whatever needs separating.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::atom::{anchor_coeffs, imaginary_unit, Atom};
use super::degree_budget;
use crate::anchor;
use crate::error::{Error, Result};
use crate::exactnum::roots::{isolate, Isolation, MAX_PREC, START_PREC};
use crate::exactnum::{
    constant_factor_in, gcd, resultant, squarefree_part, Dyadic, DyadicBox, MPoly, Round, Var,
};

static NEXT_ELEMENT: AtomicU64 = AtomicU64::new(1);

/// Scratch variable for eliminations; never an atom.
pub(crate) const ELIM: u32 = 0x7FFF_FF00;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i32(s: i32) -> Sign {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

struct Inner {
    id: u64,
    num: MPoly,
    den: MPoly,
    atoms: Vec<Arc<Atom>>,
    real: bool,
    defining: OnceLock<Result<MPoly>>,
    canonical: OnceLock<Result<DyadicBox>>,
}

/// Immutable, cheaply clonable field element.
#[derive(Clone)]
pub struct Element(Arc<Inner>);

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.expr_string())
    }
}

/// `lc^k · p ≡ r (mod a)` in `v` with `deg_v r < deg_v a`; returns `(r, k)`.
fn prem_mod(p: &MPoly, a: &[MPoly], v: Var) -> (MPoly, u32) {
    let n = a.len() - 1;
    if p.degree_in(v) < n {
        return (p.clone(), 0);
    }
    let mut pc = p.coeffs_in(v);
    let lc = &a[n];
    let mut k = 0;
    if let Some(c) = lc.as_constant() {
        let inv = c.recip();
        for top in (n..pc.len()).rev() {
            if pc[top].is_zero() {
                continue;
            }
            let t = pc[top].scale(&inv);
            for (j, aj) in a.iter().enumerate() {
                let idx = top - n + j;
                pc[idx] = pc[idx].sub_ref(&t.mul_ref(aj));
            }
        }
    } else {
        for top in (n..pc.len()).rev() {
            if pc[top].is_zero() {
                continue;
            }
            let t = pc[top].clone();
            for c in pc[..top].iter_mut() {
                *c = c.mul_ref(lc);
            }
            for (j, aj) in a.iter().enumerate().take(n) {
                let idx = top - n + j;
                pc[idx] = pc[idx].sub_ref(&t.mul_ref(aj));
            }
            pc[top] = MPoly::zero();
            k += 1;
        }
    }
    pc.truncate(n);
    (MPoly::from_coeffs(v, &pc), k)
}

fn merge_atoms(a: &[Arc<Atom>], b: &[Arc<Atom>]) -> Vec<Arc<Atom>> {
    let mut out: Vec<Arc<Atom>> = a.to_vec();
    for x in b {
        if !out.iter().any(|y| y.id() == x.id()) {
            out.push(x.clone());
        }
    }
    out.sort_by_key(|x| x.id());
    out
}

fn tag_box(v: Var, prec: u32) -> Option<DyadicBox> {
    v.tag_index()
        .map(|t| DyadicBox::real(anchor::coordinate(t, prec)))
}

/// Scale so the leading coefficient in `Z` is 1 when it is a rational
/// constant; otherwise integer-primitive with positive lex-leading coefficient.
pub(crate) fn normalize_defining(r: &MPoly) -> MPoly {
    let lc = r.leading_coeff_in(Var::Z);
    match lc.as_constant() {
        Some(c) => r.scale(&c.recip()),
        None => r.integer_primitive(),
    }
}

impl Element {
    /// Assemble and reduce `num/den` over the given atoms.
    pub(crate) fn build(num: MPoly, den: MPoly, atoms: Vec<Arc<Atom>>, real: bool) -> Result<Element> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let (mut num, mut den) = (num, den);
        for atom in &atoms {
            let v = atom.var();
            if !num.contains_var(v) && !den.contains_var(v) {
                continue;
            }
            let coeffs = atom.poly().coeffs_in(v);
            let lc = &coeffs[coeffs.len() - 1];
            let (rn, kn) = prem_mod(&num, &coeffs, v);
            let (rd, kd) = prem_mod(&den, &coeffs, v);
            if kd > kn {
                num = rn.mul_ref(&lc.pow(kd - kn));
                den = rd;
            } else {
                num = rn;
                den = rd.mul_ref(&lc.pow(kn - kd));
            }
            if den.is_zero() {
                return Err(Error::ZeroDivisor);
            }
        }
        if num.is_zero() {
            return Ok(Element::raw(MPoly::zero(), MPoly::one(), Vec::new(), true));
        }
        if !den.is_constant() {
            let g = gcd(&num, &den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let c = den.rational_content();
        if !c.is_one() {
            let inv = c.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let atoms: Vec<Arc<Atom>> = atoms
            .into_iter()
            .filter(|a| num.contains_var(a.var()) || den.contains_var(a.var()))
            .collect();
        Ok(Element::raw(num, den, atoms, real))
    }

    fn raw(num: MPoly, den: MPoly, atoms: Vec<Arc<Atom>>, real: bool) -> Element {
        Element(Arc::new(Inner {
            id: NEXT_ELEMENT.fetch_add(1, Ordering::Relaxed),
            num,
            den,
            atoms,
            real,
            defining: OnceLock::new(),
            canonical: OnceLock::new(),
        }))
    }

    pub fn from_rational(q: BigRational) -> Element {
        Element::raw(MPoly::constant(q), MPoly::one(), Vec::new(), true)
    }

    pub fn from_int(n: i64) -> Element {
        Element::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Element {
        Element::from_int(0)
    }

    pub fn one() -> Element {
        Element::from_int(1)
    }

    /// The element `Λ_t`. Allocation is checked by the caller's registry.
    pub fn from_tag(t: u32) -> Element {
        Element::raw(MPoly::var(Var::tag(t)), MPoly::one(), Vec::new(), true)
    }

    /// A rational function of tags.
    pub fn from_rational_function(num: MPoly, den: MPoly) -> Result<Element> {
        if num.vars().iter().chain(den.vars()).any(|v| !v.is_tag()) {
            return Err(Error::Precondition("rational function must use tags only".into()));
        }
        Element::build(num, den, Vec::new(), true)
    }

    pub fn from_atom(atom: Arc<Atom>) -> Element {
        let real = atom.is_real();
        Element::raw(MPoly::var(atom.var()), MPoly::one(), vec![atom], real)
    }

    pub fn i() -> Element {
        Element::from_atom(imaginary_unit())
    }

    /// Process-unique identity (used as a cache key).
    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn num(&self) -> &MPoly {
        &self.0.num
    }

    pub fn den(&self) -> &MPoly {
        &self.0.den
    }

    pub fn atoms(&self) -> &[Arc<Atom>] {
        &self.0.atoms
    }

    pub fn is_real(&self) -> bool {
        self.0.real
    }

    /// Same value, flagged real. The caller vouches for realness.
    pub(crate) fn assert_real(&self) -> Element {
        if self.0.real {
            return self.clone();
        }
        Element::raw(self.0.num.clone(), self.0.den.clone(), self.0.atoms.clone(), true)
    }

    /// Syntactically zero after reduction.
    pub fn is_trivially_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.0.den.is_one() {
            return None;
        }
        self.0.num.as_constant()
    }

    /// Tags the element depends on, ascending.
    pub fn support(&self) -> Vec<u32> {
        let mut t = self.0.num.tags();
        t.extend(self.0.den.tags());
        for a in &self.0.atoms {
            t.extend(a.poly().tags());
        }
        t.sort_unstable();
        t.dedup();
        t
    }

    /// `N/D` in the polynomial syntax, atoms written `Y<id>`.
    pub fn expr_string(&self) -> String {
        if self.0.den.is_one() {
            format!("{}", self.0.num)
        } else {
            format!("({})/({})", self.0.num, self.0.den)
        }
    }

    fn combine(a: &Element, b: &Element, num: MPoly, den: MPoly) -> Element {
        let atoms = merge_atoms(&a.0.atoms, &b.0.atoms);
        Element::build(num, den, atoms, a.0.real && b.0.real)
            .expect("product of nonvanishing denominators is nonzero")
    }

    pub fn add(&self, o: &Element) -> Element {
        if self.is_trivially_zero() {
            return o.clone();
        }
        if o.is_trivially_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &o.0);
        if a.den == b.den {
            return Element::combine(self, o, a.num.add_ref(&b.num), a.den.clone());
        }
        let num = a.num.mul_ref(&b.den).add_ref(&b.num.mul_ref(&a.den));
        Element::combine(self, o, num, a.den.mul_ref(&b.den))
    }

    pub fn neg(&self) -> Element {
        Element::raw(self.0.num.neg_ref(), self.0.den.clone(), self.0.atoms.clone(), self.0.real)
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Element) -> Element {
        let (a, b) = (&self.0, &o.0);
        Element::combine(self, o, a.num.mul_ref(&b.num), a.den.mul_ref(&b.den))
    }

    pub fn scale(&self, q: &BigRational) -> Element {
        self.mul(&Element::from_rational(q.clone()))
    }

    /// `1/self`; errors with "zero divisor" when `self` is zero.
    pub fn inv(&self) -> Result<Element> {
        if self.is_zero()? {
            return Err(Error::ZeroDivisor);
        }
        Element::build(self.0.den.clone(), self.0.num.clone(), self.0.atoms.clone(), self.0.real)
    }

    pub fn div(&self, o: &Element) -> Result<Element> {
        if o.is_zero()? {
            return Err(Error::ZeroDivisor);
        }
        let (a, b) = (&self.0, &o.0);
        let atoms = merge_atoms(&a.atoms, &b.atoms);
        Element::build(a.num.mul_ref(&b.den), a.den.mul_ref(&b.num), atoms, a.real && b.real)
    }

    pub fn pow(&self, n: i64) -> Result<Element> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Element::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Whether `self − o` is zero.
    pub fn equals(&self, o: &Element) -> Result<bool> {
        self.sub(o).is_zero()
    }

    /// Enclosure of the value at the anchor with all inputs at `prec` bits.
    /// The result usually has width near `2^-prec` but is not guaranteed to.
    pub fn enclose(&self, prec: u32) -> Result<DyadicBox> {
        let mut w = prec.max(8);
        loop {
            let boxes = self
                .0
                .atoms
                .iter()
                .map(|a| Ok((a.var(), a.enclosure(w)?)))
                .collect::<Result<Vec<_>>>()?;
            let assign = |v: Var| {
                tag_box(v, w).or_else(|| boxes.iter().find(|(x, _)| *x == v).map(|(_, b)| b.clone()))
            };
            let n = self.0.num.interval_eval(w + 16, assign)?;
            let d = self.0.den.interval_eval(w + 16, assign)?;
            if let Some(q) = n.div(&d, w + 16) {
                return Ok(if self.0.real { DyadicBox::real(q.re) } else { q });
            }
            w *= 2;
            if w > MAX_PREC {
                return Err(Error::PrecisionBudget);
            }
        }
    }

    /// Enclosure of width at most `2^-bits`.
    pub fn enclose_width(&self, bits: u32) -> Result<DyadicBox> {
        let goal = Dyadic::pow2(-(bits as i64));
        let mut w = bits + 8;
        loop {
            let e = self.enclose(w)?;
            if e.width() <= goal {
                return Ok(e);
            }
            w *= 2;
            if w > MAX_PREC {
                return Err(Error::PrecisionBudget);
            }
        }
    }

    /// Zero test. Never inspects floating values alone: a "zero" answer
    /// always comes from an exact identity or from the certificate.
    pub fn is_zero(&self) -> Result<bool> {
        if self.0.num.is_zero() {
            return Ok(true);
        }
        if self.0.atoms.is_empty() {
            // a nonzero rational function of tags is nonzero at the anchor
            return Ok(false);
        }
        for w in [32, 64] {
            if !self.enclose(w)?.contains_zero() {
                return Ok(false);
            }
        }
        if let Some(z) = self.zero_by_separation()? {
            return Ok(z);
        }
        let r = self.defining()?;
        Ok(r.coeffs_in(Var::Z)[0].is_zero() && r.degree_in(Var::Z) == 1)
    }

    /// Zero test through a polynomial `Z^k r(Z)` vanishing at the numerator,
    /// with `r(0) ≠ 0`: every root of `r` has modulus at least
    /// `|r_0| / (|r_0| + max |r_i|)` at the anchor, so a smaller enclosure of
    /// the numerator pins it to zero. Skips the square-free pass.
    fn zero_by_separation(&self) -> Result<Option<bool>> {
        let z = MPoly::var(Var::Z);
        let Some(r) = eliminate_atoms(&z.sub_ref(&self.0.num), &self.0.atoms)? else {
            return Ok(None);
        };
        let cs = r.coeffs_in(Var::Z);
        let Some(k) = cs.iter().position(|c| !c.is_zero()) else {
            return Ok(None);
        };
        if k == 0 {
            return Ok(Some(false));
        }
        let cs = &cs[k..];
        let n = Element::raw(self.0.num.clone(), MPoly::one(), self.0.atoms.clone(), false);
        let mag = |b: &DyadicBox| b.re.mag().add(&b.im.mag());
        let mut w = 64;
        while w <= MAX_PREC {
            let bs = anchor_coeffs(cs, w)?;
            let lo = Dyadic::max(&bs[0].re.mig(), &bs[0].im.mig());
            if !lo.is_zero() {
                let m = bs[1..].iter().map(mag).fold(Dyadic::zero(), |a, b| Dyadic::max(&a, &b));
                let top = mag(&bs[0]).add(&m);
                let bound = lo.div(&top, w, Round::Floor);
                let e = n.enclose(w)?;
                if mag(&e) < bound {
                    return Ok(Some(true));
                }
                if !e.contains_zero() {
                    return Ok(Some(false));
                }
            }
            w *= 2;
        }
        Ok(None)
    }

    pub fn sign(&self) -> Result<Sign> {
        if !self.0.real {
            return Err(Error::SignOfNonreal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Sign::from_i32(if q.is_positive() { 1 } else if q.is_negative() { -1 } else { 0 }));
        }
        if self.is_zero()? {
            return Ok(Sign::Zero);
        }
        let mut w = 32;
        loop {
            if let Some(s) = self.enclose(w)?.re.strict_sign() {
                return Ok(Sign::from_i32(s));
            }
            w *= 2;
            if w > MAX_PREC {
                return Err(Error::PrecisionBudget);
            }
        }
    }

    /// Defining polynomial: square-free in `Z`, vanishing at the value, and
    /// reduced by the factor-splitting pass (so a zero element has `Z`).
    pub fn defining(&self) -> Result<MPoly> {
        self.0
            .defining
            .get_or_init(|| self.compute_defining())
            .clone()
    }

    fn compute_defining(&self) -> Result<MPoly> {
        let (num, den) = (&self.0.num, &self.0.den);
        let z = MPoly::var(Var::Z);
        if self.0.atoms.is_empty() {
            return Ok(normalize_defining(&den.mul_ref(&z).sub_ref(num)));
        }
        let bound: usize = self.0.atoms.iter().map(|a| a.degree()).product();
        let budget = degree_budget();
        if bound > budget {
            return Err(Error::DegreeBudget { degree: bound, budget });
        }
        let p = den.mul_ref(&z).sub_ref(num);
        let r = match eliminate_atoms(&p, &self.0.atoms)? {
            Some(r) => r,
            None => self.defining_by_parts()?,
        };
        let r = squarefree_part(&r, Var::Z)?;
        let r = self.split_factors(r)?;
        let d = r.degree_in(Var::Z);
        if d > budget {
            return Err(Error::DegreeBudget { degree: d, budget });
        }
        Ok(normalize_defining(&r))
    }

    /// Route for degenerate eliminations: combine the certificates of `N`
    /// and `D` (with `D ≠ 0`, so `0` is not a root that matters for it).
    fn defining_by_parts(&self) -> Result<MPoly> {
        let atoms = self.0.atoms.clone();
        let n = Element::raw(self.0.num.clone(), MPoly::one(), atoms.clone(), false);
        let d = Element::raw(self.0.den.clone(), MPoly::one(), atoms, false);
        let rn = n.defining()?;
        let mut rd = d.defining()?;
        if rd.coeffs_in(Var::Z)[0].is_zero() {
            rd = rd.div_exact(&MPoly::var(Var::Z)).expect("Z divides");
        }
        let w = Var::aux(ELIM);
        let zw = MPoly::var(Var::Z).mul_ref(&MPoly::var(w));
        let a = rn.substitute(Var::Z, &zw);
        let b = rd.rename(|v| if v == Var::Z { w } else { v });
        resultant(&a, &b, w)
    }

    /// Among coprime factors of a square-free polynomial, keep the one that
    /// vanishes at the value. At most one does, so the other factors'
    /// enclosures eventually exclude zero.
    fn pick_factor(&self, factors: &[MPoly]) -> Result<usize> {
        let mut w = 32;
        loop {
            let e = self.enclose(w)?;
            let mut alive = Vec::new();
            for (k, f) in factors.iter().enumerate() {
                let v = f.interval_eval(w + 16, |v| {
                    if v == Var::Z {
                        Some(e.clone())
                    } else {
                        tag_box(v, w + 16)
                    }
                })?;
                if v.contains_zero() {
                    alive.push(k);
                }
            }
            if alive.len() == 1 {
                return Ok(alive[0]);
            }
            w *= 2;
            if w > MAX_PREC {
                return Err(Error::PrecisionBudget);
            }
        }
    }

    fn split_factors(&self, mut r: MPoly) -> Result<MPoly> {
        let z = MPoly::var(Var::Z);
        if r.degree_in(Var::Z) > 1 && r.coeffs_in(Var::Z)[0].is_zero() {
            let r1 = r.div_exact(&z).expect("Z divides");
            r = if self.pick_factor(&[z.clone(), r1.clone()])? == 0 { z.clone() } else { r1 };
        }
        if r.degree_in(Var::Z) <= 1 {
            return Ok(r);
        }
        let g = constant_factor_in(&r, Var::Z);
        let dg = g.degree_in(Var::Z);
        if dg >= 1 && dg < r.degree_in(Var::Z) {
            let h = r.div_exact(&g).expect("factor divides");
            r = if self.pick_factor(&[g.clone(), h.clone()])? == 0 { g } else { h };
        }
        if r.degree_in(Var::Z) >= 2 && r.vars() == [Var::Z] {
            if let Some(q) = self.rational_root_of(&r)? {
                let lin = z.sub_ref(&MPoly::constant(q));
                let h = r.div_exact(&lin).expect("rational root divides");
                r = if self.pick_factor(&[lin.clone(), h.clone()])? == 0 { lin } else { h };
            }
        }
        Ok(r)
    }

    /// The only rational root of `r ∈ ℚ[Z]` the value could be, if any.
    fn rational_root_of(&self, r: &MPoly) -> Result<Option<BigRational>> {
        let p = r.integer_primitive();
        let lc = p.leading_coeff_in(Var::Z).as_constant().expect("univariate");
        let lc = lc.to_integer().abs();
        let e = self.enclose_width(lc.bits() as u32 + 2)?;
        if !e.im.contains_zero() {
            return Ok(None);
        }
        let mid = e.re.midpoint().to_rational() * BigRational::from_integer(lc.clone());
        let k = (mid + BigRational::new(1.into(), 2.into())).floor();
        let q = k / BigRational::from_integer(lc);
        let hit = p.eval_rational(&[(Var::Z, q.clone())]).is_zero();
        Ok(hit.then_some(q))
    }

    /// Box isolating the value among the roots of [`Element::defining`] at
    /// the first certified rung of the precision ladder.
    pub fn canonical_box(&self) -> Result<DyadicBox> {
        self.0
            .canonical
            .get_or_init(|| {
                let r = self.defining()?;
                let coeffs = r.coeffs_in(Var::Z);
                let (level, _) = isolate(|p| super::atom::anchor_coeffs(&coeffs, p), START_PREC)?;
                let k = self.locate(&level)?;
                Ok(level.boxes[k].clone())
            })
            .clone()
    }

    /// Index of the box in `level` that contains the value.
    pub(crate) fn locate(&self, level: &Isolation) -> Result<usize> {
        let mut w = 32;
        loop {
            let e = self.enclose(w)?;
            let hits: Vec<usize> = (0..level.boxes.len())
                .filter(|k| level.boxes[*k].intersects(&e))
                .collect();
            if hits.len() == 1 {
                return Ok(hits[0]);
            }
            w *= 2;
            if w > MAX_PREC {
                return Err(Error::PrecisionBudget);
            }
        }
    }

    /// Canonical text form `defining | box | real-flag`.
    pub fn serialize(&self) -> Result<String> {
        let r = self.defining()?;
        let b = self.canonical_box()?;
        Ok(format!(
            "{} | [{}, {}] + [{}, {}]i | {}",
            r,
            b.re.lo,
            b.re.hi,
            b.im.lo,
            b.im.hi,
            if self.0.real { "real" } else { "complex" }
        ))
    }

    /// Replace atoms and tags by polynomial images, keeping the reduced form.
    pub(crate) fn map_vars(&self, f: impl Fn(Var) -> Option<MPoly>, atoms: Vec<Arc<Atom>>, real: bool) -> Result<Element> {
        let mut num = self.0.num.clone();
        let mut den = self.0.den.clone();
        let vars: Vec<Var> = num.vars().iter().chain(den.vars()).copied().collect();
        // substitute through fresh scratch names so images never collide
        let mut staged = Vec::new();
        for (k, v) in vars.iter().enumerate() {
            if staged.iter().any(|(w, _)| w == v) {
                continue;
            }
            if let Some(img) = f(*v) {
                let tmp = Var::aux(ELIM + 1 + k as u32);
                num = num.rename(|x| if x == *v { tmp } else { x });
                den = den.rename(|x| if x == *v { tmp } else { x });
                staged.push((*v, (tmp, img)));
            }
        }
        for (_, (tmp, img)) in staged {
            num = num.substitute(tmp, &img);
            den = den.substitute(tmp, &img);
        }
        Element::build(num, den, atoms, real)
    }
}

/// Iterated resultants eliminating every atom variable from `p`. `None`
/// when a stage vanishes identically.
/// Whether the polynomial with these coefficients (lowest first, leading
/// one nonzero) has a nonzero discriminant. Atoms stay symbolic through the
/// resultant and are reduced once at the end.
pub(crate) fn discriminant_nonzero(coeffs: &[Element]) -> Result<bool> {
    let mut atoms = Vec::new();
    let mut l = MPoly::one();
    for e in coeffs {
        atoms = merge_atoms(&atoms, &e.0.atoms);
        let g = gcd(&l, &e.0.den);
        l = l.mul_ref(&e.0.den.div_exact(&g).expect("gcd divides"));
    }
    let terms: Vec<MPoly> = coeffs
        .iter()
        .map(|e| e.0.num.mul_ref(&l.div_exact(&e.0.den).expect("denominator divides lcm")))
        .collect();
    let p = MPoly::from_coeffs(Var::Z, &terms);
    let disc = resultant(&p, &p.derivative(Var::Z), Var::Z)?;
    Ok(!Element::build(disc, MPoly::one(), atoms, false)?.is_zero()?)
}

pub(crate) fn eliminate_atoms(p: &MPoly, atoms: &[Arc<Atom>]) -> Result<Option<MPoly>> {
    let mut r = p.clone();
    for a in atoms.iter().rev() {
        let v = a.var();
        if !r.contains_var(v) {
            continue;
        }
        r = resultant(&r, a.poly(), v)?;
        if r.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(r))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expr_string())
    }
}

impl From<i64> for Element {
    fn from(n: i64) -> Element {
        Element::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::nashfield::adjoin::{adjoin_root, Selector};
    use crate::nashfield::poly::ElemPoly;

    fn sqrt2() -> Element {
        let c = ElemPoly::new(vec![Element::from_int(-2), Element::zero(), Element::one()]).unwrap();
        adjoin_root(&c, &Selector::RealIndex(2)).unwrap()
    }

    #[test]
    fn rationals_and_tags() {
        assert_eq!(Element::zero().defining().unwrap().to_string(), "Z");
        assert_eq!(Element::one().defining().unwrap().to_string(), "Z - 1");
        let m = Element::from_rational(rat(-3, 2));
        assert_eq!(m.defining().unwrap().to_string(), "Z + 3/2");
        assert_eq!(m.canonical_box().unwrap().re.lo.to_rational(), rat(-3, 2));
        assert_eq!(m.sign().unwrap(), Sign::Negative);
        let t0 = Element::from_tag(0);
        let b = t0.enclose_width(60).unwrap();
        assert!(b.re.lo.to_rational() > rat(411325037878292, 100_000_000_000_000));
        assert!(b.re.hi.to_rational() < rat(411325037878293, 100_000_000_000_000));
        assert!(t0.equals(&Element::from_tag(0)).unwrap());
        let d = Element::from_tag(1).sub(&t0);
        assert_eq!(d.sign().unwrap(), Sign::Positive);
        assert!(!d.is_zero().unwrap());
        assert_eq!(t0.sub(&Element::from_int(4)).sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn field_examples() {
        let s = sqrt2();
        assert!(s.add(&s.neg()).is_zero().unwrap());
        assert!(s.mul(&s).equals(&Element::from_int(2)).unwrap());
        let t = Element::from_tag(0);
        assert!(t.mul(&t.inv().unwrap()).equals(&Element::one()).unwrap());
        assert_eq!(s.sub(&Element::from_rational(rat(3, 2))).sign().unwrap(), Sign::Negative);
        assert_eq!(Element::zero().inv().unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn nontrivial_zero_uses_certificate() {
        // a = √2 pinned via a second, independent atom for the same number
        let s = sqrt2();
        let c = ElemPoly::new(vec![Element::from_int(-8), Element::zero(), Element::one()]).unwrap();
        let r8 = adjoin_root(&c, &Selector::RealIndex(2)).unwrap();
        let diff = r8.sub(&s.scale(&rat(2, 1)));
        assert!(!diff.is_trivially_zero());
        assert!(diff.is_zero().unwrap());
        let other = r8.add(&s.scale(&rat(2, 1)));
        assert!(!other.is_zero().unwrap());
        assert_eq!(other.sign().unwrap(), Sign::Positive);
    }

    #[test]
    fn serialization_is_stable() {
        let s = sqrt2();
        let a = s.serialize().unwrap();
        let b = s.mul(&Element::one()).serialize().unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("Z^2 - 2 | "));
        assert!(a.ends_with("| real"));
    }
}
