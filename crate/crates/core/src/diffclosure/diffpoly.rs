//! Differential polynomials in one indeterminate `y`, stored through their
//! star form `p*(x₀, …, x_n)` with `x_i` standing for `δ^i y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactnum::parse::Expr;
use crate::nashfield::{ElemPoly, Element};

/// Exponent vectors have no trailing zeros; coefficients are nonzero.
#[derive(Clone, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Vec<u32>, Element>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl DiffPoly {
    pub fn zero() -> DiffPoly {
        DiffPoly::default()
    }

    pub fn constant(c: Element) -> Result<DiffPoly> {
        let mut p = DiffPoly::zero();
        p.insert(Vec::new(), c)?;
        Ok(p)
    }

    /// `δ^k y`.
    pub fn y(k: u32) -> DiffPoly {
        let mut e = vec![0; k as usize + 1];
        e[k as usize] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Element::one());
        DiffPoly { terms }
    }

    fn insert(&mut self, e: Vec<u32>, c: Element) -> Result<()> {
        let e = trim(e);
        let sum = match self.terms.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !(sum.is_trivially_zero() || sum.is_zero()?) {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Element)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Highest `i` with `x_i` present; −1 for constants (and for zero).
    pub fn ord(&self) -> i64 {
        self.terms.keys().map(|e| e.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Total degree of the star form; `None` stands for −∞ (the zero polynomial).
    pub fn deg(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|k| *k as usize).sum())
            .max()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn add(&self, o: &DiffPoly) -> Result<DiffPoly> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &DiffPoly) -> Result<DiffPoly> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &DiffPoly) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let n = ea.len().max(eb.len());
                let e: Vec<u32> = (0..n)
                    .map(|k| ea.get(k).unwrap_or(&0) + eb.get(k).unwrap_or(&0))
                    .collect();
                out.insert(e, ca.mul(cb))?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<DiffPoly> {
        let mut acc = DiffPoly::constant(Element::one())?;
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Element) -> Result<DiffPoly> {
        self.mul(&DiffPoly::constant(c.clone())?)
    }

    /// `∂p*/∂x_i`.
    pub fn partial(&self, i: usize) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.insert(ne, c.mul(&Element::from_int(k as i64)))?;
        }
        Ok(out)
    }

    /// `p*(v₀, …, v_n)`; `vals` must cover `0..=ord`.
    pub fn eval_star(&self, vals: &[Element]) -> Result<Element> {
        if (self.ord() + 1) as usize > vals.len() {
            return Err(Error::Precondition("too few values for the order".into()));
        }
        let mut acc = Element::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, d) in e.iter().enumerate() {
                if *d > 0 {
                    t = t.mul(&vals[k].pow(*d as i64)?);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// `p*` with polynomial values substituted (one shared variable).
    pub fn eval_star_poly(&self, vals: &[ElemPoly]) -> Result<ElemPoly> {
        let mut acc = ElemPoly::zero();
        for (e, c) in &self.terms {
            let mut t = ElemPoly::constant(c.clone())?;
            for (k, d) in e.iter().enumerate() {
                for _ in 0..*d {
                    t = t.mul(&vals[k])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// `p*(v₀, …, v_{n−1}, Z)` as a polynomial in `Z = x_n`, `n = ord p`.
    pub fn top_poly(&self, lower: &[Element]) -> Result<ElemPoly> {
        let n = self.ord();
        if n < 0 {
            return Err(Error::ConstantPolynomial);
        }
        let n = n as usize;
        let mut coeffs: Vec<Element> = vec![Element::zero(); self.deg().unwrap_or(0) + 1];
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, d) in e.iter().enumerate().take(n) {
                if *d > 0 {
                    t = t.mul(&lower[k].pow(*d as i64)?);
                }
            }
            let top = e.get(n).copied().unwrap_or(0) as usize;
            coeffs[top] = coeffs[top].add(&t);
        }
        ElemPoly::new(coeffs)
    }

    /// Build from a parsed expression. `y`, `y'`, `y[k]` become indeterminates;
    /// the other leaves (numbers, tags, names, calls) are handed to `leaf`.
    pub fn from_expr(e: &Expr, leaf: &mut dyn FnMut(&Expr) -> Result<Element>) -> Result<DiffPoly> {
        match e {
            Expr::Y(k) => Ok(DiffPoly::y(*k)),
            Expr::Neg(a) => Ok(DiffPoly::from_expr(a, leaf)?.neg()),
            Expr::Add(a, b) => DiffPoly::from_expr(a, leaf)?.add(&DiffPoly::from_expr(b, leaf)?),
            Expr::Sub(a, b) => DiffPoly::from_expr(a, leaf)?.sub(&DiffPoly::from_expr(b, leaf)?),
            Expr::Mul(a, b) => DiffPoly::from_expr(a, leaf)?.mul(&DiffPoly::from_expr(b, leaf)?),
            Expr::Div(a, b) => {
                let d = DiffPoly::from_expr(b, leaf)?.as_constant()?;
                DiffPoly::from_expr(a, leaf)?.scale(&d.inv()?)
            }
            Expr::Pow(a, n) if *n >= 0 => DiffPoly::from_expr(a, leaf)?.pow(*n as u32),
            Expr::Pow(a, n) => {
                let c = DiffPoly::from_expr(a, leaf)?.as_constant()?;
                DiffPoly::constant(c.pow(*n)?)
            }
            _ => DiffPoly::constant(leaf(e)?),
        }
    }

    fn as_constant(&self) -> Result<Element> {
        if self.ord() >= 0 {
            return Err(Error::Precondition("division by a differential polynomial".into()));
        }
        Ok(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Element::zero))
    }
}

fn y_name(k: usize) -> String {
    match k {
        0 => "y".into(),
        1 => "y'".into(),
        2 => "y''".into(),
        _ => format!("y[{}]", k),
    }
}

impl DiffPoly {
    fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let ra: Vec<u32> = a.iter().rev().copied().collect();
            let rb: Vec<u32> = b.iter().rev().copied().collect();
            (b.len(), rb).cmp(&(a.len(), ra))
        });
        let mut out = String::new();
        for (i, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, d)| **d > 0)
                .map(|(k, d)| if *d == 1 { name(k) } else { format!("{}^{}", name(k), d) })
                .collect();
            let (neg, coef) = match c.as_rational() {
                Some(q) => (q.is_negative(), Some(q.abs())),
                None => (false, None),
            };
            let body = match (coef, mono.is_empty()) {
                (Some(q), true) => q.to_string(),
                (Some(q), false) if q.is_one() => mono.join("*"),
                (Some(q), false) => format!("{}*{}", q, mono.join("*")),
                (None, true) => format!("({})", c),
                (None, false) => format!("({})*{}", c, mono.join("*")),
            };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    /// The star form with `x0, x1, …`.
    pub fn star_string(&self) -> String {
        self.render(|k| format!("x{}", k))
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(y_name))
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly({})", self)
    }
}
