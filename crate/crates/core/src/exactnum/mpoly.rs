//! Sparse multivariate polynomials over ℚ.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::{Dyadic, DyadicBox, DyadicInterval};
use crate::error::{Error, Result};

/// Variable identifier. Transcendental tags occupy `[0, 2^31)`; the root
/// symbol `Z` and the shift symbol `g` (γ) sit at the top of the range;
/// auxiliary elimination variables live in between.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

const AUX_BASE: u32 = 1 << 31;

impl Var {
    pub const Z: Var = Var(u32::MAX);
    pub const GAMMA: Var = Var(u32::MAX - 1);

    pub fn tag(index: u32) -> Var {
        assert!(index < AUX_BASE, "tag index out of range");
        Var(index)
    }

    pub fn aux(index: u32) -> Var {
        assert!(index < u32::MAX - 1 - AUX_BASE, "aux index out of range");
        Var(AUX_BASE + index)
    }

    pub fn tag_index(self) -> Option<u32> {
        (self.0 < AUX_BASE).then_some(self.0)
    }

    pub fn aux_index(self) -> Option<u32> {
        (self.0 >= AUX_BASE && self.0 < u32::MAX - 1).then(|| self.0 - AUX_BASE)
    }

    pub fn is_tag(self) -> bool {
        self.0 < AUX_BASE
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Var::Z {
            write!(f, "Z")
        } else if *self == Var::GAMMA {
            write!(f, "g")
        } else if let Some(i) = self.aux_index() {
            write!(f, "Y{}", i)
        } else {
            write!(f, "L{}", self.0)
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Polynomial in finitely many [`Var`]s with rational coefficients.
///
/// `vars` is strictly descending, so comparing exponent vectors
/// lexicographically compares the highest variable first; the lex-leading
/// term is the last entry of `terms`. Only variables that actually occur are
/// listed, and zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] > b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] > a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

impl Default for MPoly {
    fn default() -> Self {
        MPoly::zero()
    }
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(q: BigRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Vec::new(), q);
        }
        MPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(n: i64) -> MPoly {
        MPoly::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::monomial(BigRational::one(), &[(v, 1)])
    }

    /// `coef · ∏ v^e`. Repeated variables multiply.
    pub fn monomial(coef: BigRational, powers: &[(Var, u32)]) -> MPoly {
        if coef.is_zero() {
            return MPoly::zero();
        }
        let mut vars: Vec<Var> = powers.iter().filter(|p| p.1 > 0).map(|p| p.0).collect();
        vars.sort_unstable_by(|a, b| b.cmp(a));
        vars.dedup();
        let mut exps = vec![0u32; vars.len()];
        for &(v, e) in powers {
            if e > 0 {
                let k = vars.iter().position(|w| *w == v).expect("var listed");
                exps[k] += e;
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(exps, coef);
        MPoly { vars, terms }
    }

    /// Build from `(powers, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Vec<(Var, u32)>, BigRational)>,
    {
        let mut acc = MPoly::zero();
        for (powers, c) in terms {
            acc = &acc + &MPoly::monomial(c, &powers);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Variables occurring, highest first.
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.vars.contains(&v)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(powers, coefficient)` with powers listed per variable.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(Var, u32)>, &BigRational)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let powers = self
                .vars
                .iter()
                .zip(e.iter())
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (*v, k))
                .collect();
            (powers, c)
        })
    }

    pub fn degree_in(&self, v: Var) -> usize {
        match self.vars.iter().position(|w| *w == v) {
            None => 0,
            Some(k) => self.terms.keys().map(|e| e[k] as usize).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
    }

    /// Lex-leading coefficient (highest variable first).
    pub fn lex_leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    fn remap(&self, target: &[Var]) -> BTreeMap<Vec<u32>, BigRational> {
        if self.vars.as_slice() == target {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v).expect("target is a superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; target.len()];
                for (k, &p) in pos.iter().enumerate() {
                    ne[p] = e[k];
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn from_raw(vars: Vec<Var>, terms: BTreeMap<Vec<u32>, BigRational>) -> MPoly {
        let mut p = MPoly { vars, terms };
        p.trim_vars();
        p
    }

    fn trim_vars(&mut self) {
        let n = self.vars.len();
        let used: Vec<bool> = (0..n)
            .map(|k| self.terms.keys().any(|e| e[k] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let vars: Vec<Var> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| *v)
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| {
                let ne: Vec<u32> = e
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&k, _)| k)
                    .collect();
                (ne, c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    pub fn add_ref(&self, other: &MPoly) -> MPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let vars = union_vars(&self.vars, &other.vars);
        let mut terms = self.remap(&vars);
        for (e, c) in other.remap(&vars) {
            match terms.get_mut(&e) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        terms.remove(&e);
                    }
                }
                None => {
                    terms.insert(e, c);
                }
            }
        }
        MPoly::from_raw(vars, terms)
    }

    pub fn neg_ref(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub_ref(&self, other: &MPoly) -> MPoly {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let vars = union_vars(&self.vars, &other.vars);
        let a = self.remap(&vars);
        let b = other.remap(&vars);
        let mut acc: HashMap<Vec<u32>, BigRational> = HashMap::with_capacity(a.len() * b.len());
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MPoly::from_raw(vars, terms)
    }

    pub fn scale(&self, q: &BigRational) -> MPoly {
        if q.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// View as a univariate polynomial in `v`; entry `k` is the coefficient of `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let Some(k) = self.vars.iter().position(|w| *w == v) else {
            return if self.is_zero() { Vec::new() } else { vec![self.clone()] };
        };
        let deg = self.degree_in(v);
        let rest: Vec<Var> = self.vars.iter().copied().filter(|w| *w != v).collect();
        let mut parts: Vec<BTreeMap<Vec<u32>, BigRational>> = vec![BTreeMap::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let d = ne.remove(k) as usize;
            parts[d].insert(ne, c.clone());
        }
        parts
            .into_iter()
            .map(|t| MPoly::from_raw(rest.clone(), t))
            .collect()
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero();
        let x = MPoly::var(v);
        for c in coeffs.iter().rev() {
            acc = acc.mul_ref(&x).add_ref(c);
        }
        acc
    }

    pub fn leading_coeff_in(&self, v: Var) -> MPoly {
        self.coeffs_in(v).pop().unwrap_or_default()
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let Some(k) = self.vars.iter().position(|w| *w == v) else {
            return MPoly::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[k] > 0)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[k] -= 1;
                (ne, c * BigRational::from_integer(e[k].into()))
            })
            .collect();
        MPoly::from_raw(self.vars.clone(), terms)
    }

    /// Replace `v` by the polynomial `s`.
    pub fn substitute(&self, v: Var, s: &MPoly) -> MPoly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul_ref(s).add_ref(c);
        }
        acc
    }

    /// `self` with `v` set to the rational `q`.
    pub fn eval_var(&self, v: Var, q: &BigRational) -> MPoly {
        let Some(i) = self.vars.iter().position(|w| *w == v) else {
            return self.clone();
        };
        let mut pows = vec![BigRational::one()];
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while pows.len() <= k {
                let next = pows.last().unwrap() * q;
                pows.push(next);
            }
            let mut rest = e.clone();
            rest.remove(i);
            *acc.entry(rest).or_insert_with(BigRational::zero) += c * &pows[k];
        }
        acc.retain(|_, c| !c.is_zero());
        let mut vars = self.vars.clone();
        vars.remove(i);
        MPoly::from_raw(vars, acc)
    }

    /// Rename variables through `f`; `f` must be injective on `self.vars()`.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> MPoly {
        let new_vars: Vec<Var> = self.vars.iter().map(|v| f(*v)).collect();
        let mut order: Vec<usize> = (0..new_vars.len()).collect();
        order.sort_by(|&a, &b| new_vars[b].cmp(&new_vars[a]));
        let vars: Vec<Var> = order.iter().map(|&k| new_vars[k]).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (order.iter().map(|&k| e[k]).collect(), c.clone()))
            .collect();
        MPoly { vars, terms }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if d.vars.iter().any(|v| !self.vars.contains(v)) {
            return None;
        }
        let vars = self.vars.clone();
        let dt = d.remap(&vars);
        let (dle, dlc) = dt.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        while let Some((re, rc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&dle).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&dle).map(|(a, b)| a - b).collect();
            let qc = rc / &dlc;
            for (e, c) in &dt {
                let te: Vec<u32> = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let tc = c * &qc;
                match rem.get_mut(&te) {
                    Some(x) => {
                        *x -= tc;
                        if x.is_zero() {
                            rem.remove(&te);
                        }
                    }
                    None => {
                        rem.insert(te, -tc);
                    }
                }
            }
            quot.insert(qe, qc);
        }
        Some(MPoly::from_raw(vars, quot))
    }

    /// Positive rational `c` with `self / c` integral, primitive over ℤ and with
    /// a positive lex-leading coefficient (the sign is folded into `c`).
    pub fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut content = BigRational::new(g, l);
        if self.lex_leading_coeff().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        content
    }

    /// Integer-primitive representative with positive lex-leading coefficient.
    pub fn integer_primitive(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        self.scale(&self.rational_content().recip())
    }

    /// Make `coeffs_in(v)`'s leading coefficient have positive lex-leading
    /// coefficient and clear rational denominators.
    pub fn normalize_in(&self, v: Var) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let p = self.integer_primitive();
        let lc = p.leading_coeff_in(v);
        if lc.lex_leading_coeff().is_some_and(|c| c.is_negative()) {
            p.neg_ref()
        } else {
            p
        }
    }

    /// Evaluate every variable; `assign` supplies an enclosure for each one.
    pub fn interval_eval<F>(&self, prec: u32, mut assign: F) -> Result<DyadicBox>
    where
        F: FnMut(Var) -> Option<DyadicBox>,
    {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            values.push(assign(*v).ok_or_else(|| Error::UnassignedVariable(v.to_string()))?);
        }
        let mut pow_cache: HashMap<(usize, u32), DyadicBox> = HashMap::new();
        let mut acc = DyadicBox::real(DyadicInterval::zero());
        for (e, c) in &self.terms {
            let mut t = DyadicBox::point_rational(c, prec);
            for (k, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let p = pow_cache
                    .entry((k, d))
                    .or_insert_with(|| values[k].pow(d, prec))
                    .clone();
                t = t.mul(&p, prec);
            }
            acc = acc.add(&t, prec);
        }
        Ok(acc)
    }

    /// Exact evaluation at rational values for the listed variables.
    pub fn eval_rational(&self, assign: &[(Var, BigRational)]) -> MPoly {
        let mut p = self.clone();
        for (v, q) in assign {
            p = p.substitute(*v, &MPoly::constant(q.clone()));
        }
        p
    }

    /// For a polynomial in at most the single variable `v`: dense coefficients over ℚ.
    pub fn to_dense(&self, v: Var) -> Option<Vec<BigRational>> {
        if self.vars.iter().any(|w| *w != v) {
            return None;
        }
        Some(
            self.coeffs_in(v)
                .into_iter()
                .map(|c| c.as_constant().unwrap_or_else(BigRational::zero))
                .collect(),
        )
    }

    pub fn from_dense(v: Var, coeffs: &[BigRational]) -> MPoly {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (vec![(v, k as u32)], c.clone()));
        MPoly::from_terms(terms)
    }

    /// Tag indices occurring, ascending.
    pub fn tags(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.vars.iter().filter_map(|v| v.tag_index()).collect();
        t.sort_unstable();
        t
    }

    pub fn max_abs_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Bound `B` (power of two) with every complex root of the univariate
    /// rational polynomial below `B` in modulus (Cauchy bound).
    pub fn cauchy_bound(coeffs: &[BigRational]) -> Dyadic {
        let n = coeffs.len() - 1;
        let lc = coeffs[n].abs();
        let mut m = BigRational::zero();
        for c in &coeffs[..n] {
            let r = c.abs() / &lc;
            if r > m {
                m = r;
            }
        }
        let b = m + BigRational::one();
        let mut e = 0i64;
        while BigRational::from_integer(BigInt::one() << e as usize) < b {
            e += 1;
        }
        Dyadic::pow2(e)
    }
}

impl fmt::Display for MPoly {
    /// Canonical text: terms in descending lex order (highest variable first),
    /// variables inside a monomial in ascending order, e.g. `L3^2*Z - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in self.vars.iter().zip(e.iter()).rev() {
                match k {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{}^{}", v, k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl std::ops::$tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                self.$imp(rhs)
            }
        }
        impl std::ops::$tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$imp(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(i: u32) -> MPoly {
        MPoly::var(Var::tag(i))
    }

    fn z() -> MPoly {
        MPoly::var(Var::Z)
    }

    fn c(n: i64) -> MPoly {
        MPoly::from_int(n)
    }

    #[test]
    fn cancellation_normalizes() {
        let s = &(&l(1) + &c(1)) + &(&l(1) - &c(1));
        assert_eq!(s, l(1).scale(&rat(2, 1)));
        let d = &l(1) - &l(1);
        assert!(d.is_zero());
        assert!(d.vars().is_empty());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z() - &c(1)) * &(&z() + &c(1));
        assert_eq!(p, &z().pow(2) - &c(1));
    }

    #[test]
    fn display_canonical_form() {
        let p = &(&l(3).pow(2) * &z()) - &MPoly::constant(rat(1, 2));
        assert_eq!(p.to_string(), "L3^2*Z - 1/2");
        let q = &(&z().pow(2).scale(&rat(-3, 2)) + &l(0)) + &c(7);
        assert_eq!(q.to_string(), "-3/2*Z^2 + L0 + 7");
    }

    #[test]
    fn exact_division() {
        let a = &(&l(0) + &z()) * &(&l(1) - &c(2));
        assert_eq!(a.div_exact(&(&l(1) - &c(2))).unwrap(), &l(0) + &z());
        assert!(a.div_exact(&(&l(1) + &c(2))).is_none());
    }

    #[test]
    fn coefficient_view_round_trip() {
        let p = &(&(&l(1).pow(2) - &c(2)) * &l(2).pow(3)) + &(&l(1) * &l(2));
        let cs = p.coeffs_in(Var::tag(2));
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[3], &l(1).pow(2) - &c(2));
        assert_eq!(MPoly::from_coeffs(Var::tag(2), &cs), p);
    }

    #[test]
    fn interval_eval_examples() {
        let one_two = DyadicBox::real(DyadicInterval::new(Dyadic::from_int(1), Dyadic::from_int(2)));
        let sq = l(1).pow(2).interval_eval(64, |_| Some(one_two.clone())).unwrap();
        assert_eq!(sq.re, DyadicInterval::new(Dyadic::from_int(1), Dyadic::from_int(4)));
        let three = c(3).interval_eval(64, |_| None).unwrap();
        assert_eq!(three.re, DyadicInterval::point(Dyadic::from_int(3)));
        assert!(matches!(
            l(1).interval_eval(64, |_| None),
            Err(Error::UnassignedVariable(_))
        ));
    }
}
