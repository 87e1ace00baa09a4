//! The inductive semialgebraic sets `Γ_P`, `ω(P)` and `W_P` over ℝ and ℂ.
//!
//! Coordinates are `Λ₁ … Λ_m`, written `L1 … Lm`. `W_P` for `m = 1` is the
//! complement of `Γ_P = {x : P(x + γ) = 0 for some γ ≥ 0}`; for larger `m`
//! it is cut down further to the cylinder over `W_{ω(P)}`.

mod axioms;

pub use axioms::{check_r_axioms, density_probe, AxiomLine, AxiomReport, SampleConfig};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::sturm::{count_roots, Bound};
use crate::exactnum::{MPoly, UPoly, Var};
use crate::nashfield::{split_re_im, ElemPoly, Element};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Real,
    Complex,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Real => "real",
            Mode::Complex => "complex",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "real" => Ok(Mode::Real),
            "complex" => Ok(Mode::Complex),
            _ => Err(Error::Precondition(format!("mode must be `real` or `complex`, got `{}`", s))),
        }
    }
}

/// A polynomial over ℚ in `Λ₁ … Λ_m`.
#[derive(Clone, Debug)]
pub struct RegionPoly {
    poly: MPoly,
    m: usize,
    mode: Mode,
}

impl RegionPoly {
    pub fn new(poly: MPoly, m: usize, mode: Mode) -> Result<RegionPoly> {
        if m == 0 {
            return Err(Error::Precondition("dimension must be at least 1".into()));
        }
        for v in poly.vars() {
            match v.tag_index() {
                Some(k) if k >= 1 && k as usize <= m => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "variable {} is outside L1..L{}",
                        v, m
                    )))
                }
            }
        }
        Ok(RegionPoly { poly, m, mode })
    }

    /// Parse `L1^2 - 1` style text; `m` defaults to the largest index used.
    pub fn parse(src: &str, m: Option<usize>, mode: Mode) -> Result<RegionPoly> {
        let poly = crate::exactnum::parse::parse_mpoly(src)?;
        let used = poly.vars().iter().filter_map(|v| v.tag_index()).max().unwrap_or(1) as usize;
        RegionPoly::new(poly, m.unwrap_or(used.max(1)), mode)
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn mul(&self, o: &RegionPoly) -> Result<RegionPoly> {
        if self.m != o.m || self.mode != o.mode {
            return Err(Error::Precondition("dimension or mode mismatch".into()));
        }
        RegionPoly::new(self.poly.mul_ref(&o.poly), self.m, self.mode)
    }

    /// `Q(x₁, …, x_n) = P(x_{i₁}, …, x_{i_m})` for 1-based `positions`
    /// `i₁ < … < i_m ≤ n`.
    pub fn lift(&self, positions: &[usize], n: usize) -> Result<RegionPoly> {
        if positions.len() != self.m
            || positions.windows(2).any(|w| w[0] >= w[1])
            || positions.first().is_some_and(|p| *p == 0)
            || positions.last().is_some_and(|p| *p > n)
        {
            return Err(Error::Precondition("positions must increase within 1..n".into()));
        }
        let poly = self.poly.rename(|v| Var::tag(positions[v.tag_index().unwrap() as usize - 1] as u32));
        RegionPoly::new(poly, n, self.mode)
    }
}

impl fmt::Display for RegionPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// `ω(P)`: the leading coefficient of `P` in `Λ_m`, a polynomial in
/// `Λ₁ … Λ_{m−1}`. For `m = 1` the result is a constant, kept at dimension 1.
pub fn omega(p: &RegionPoly) -> RegionPoly {
    let lead = p.poly.leading_coeff_in(Var::tag(p.m as u32));
    RegionPoly {
        poly: lead,
        m: (p.m - 1).max(1),
        mode: p.mode,
    }
}

/// A point of `𝕂^m`. Gaussian rational coordinates take an exact fast path.
#[derive(Clone, Debug)]
pub enum RegionPoint {
    Gaussian(Vec<(BigRational, BigRational)>),
    Elements(Vec<Element>),
}

impl RegionPoint {
    pub fn rational(xs: Vec<BigRational>) -> RegionPoint {
        RegionPoint::Gaussian(xs.into_iter().map(|x| (x, BigRational::zero())).collect())
    }

    pub fn gaussian(xs: Vec<(BigRational, BigRational)>) -> RegionPoint {
        RegionPoint::Gaussian(xs)
    }

    /// Falls back to the Gaussian form when every coordinate is rational.
    pub fn elements(xs: Vec<Element>) -> RegionPoint {
        let qs: Option<Vec<BigRational>> = xs.iter().map(|x| x.as_rational()).collect();
        match qs {
            Some(qs) => RegionPoint::rational(qs),
            None => RegionPoint::Elements(xs),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            RegionPoint::Gaussian(v) => v.len(),
            RegionPoint::Elements(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_real(&self) -> bool {
        match self {
            RegionPoint::Gaussian(v) => v.iter().all(|(_, b)| b.is_zero()),
            RegionPoint::Elements(v) => v.iter().all(|x| x.is_real()),
        }
    }

    pub fn prefix(&self, n: usize) -> RegionPoint {
        match self {
            RegionPoint::Gaussian(v) => RegionPoint::Gaussian(v[..n].to_vec()),
            RegionPoint::Elements(v) => RegionPoint::Elements(v[..n].to_vec()),
        }
    }

    pub fn to_elements(&self) -> Vec<Element> {
        match self {
            RegionPoint::Gaussian(v) => v.iter().map(|(a, b)| gaussian_element(a, b)).collect(),
            RegionPoint::Elements(v) => v.clone(),
        }
    }
}

fn gaussian_element(a: &BigRational, b: &BigRational) -> Element {
    let re = Element::from_rational(a.clone());
    if b.is_zero() {
        re
    } else {
        re.add(&Element::i().scale(b))
    }
}

fn fmt_q(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RegionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self {
            RegionPoint::Gaussian(v) => v
                .iter()
                .map(|(a, b)| {
                    if b.is_zero() {
                        fmt_q(a)
                    } else if a.is_zero() {
                        format!("{}i", fmt_q(b))
                    } else if b < &BigRational::zero() {
                        format!("{}-{}i", fmt_q(a), fmt_q(&-b))
                    } else {
                        format!("{}+{}i", fmt_q(a), fmt_q(b))
                    }
                })
                .collect(),
            RegionPoint::Elements(v) => v.iter().map(|x| x.to_string()).collect(),
        };
        write!(f, "({})", parts.join(", "))
    }
}

fn check_point(p: &RegionPoly, x: &RegionPoint) -> Result<()> {
    if x.len() != p.m {
        return Err(Error::Precondition(format!(
            "point has {} coordinates, expected {}",
            x.len(),
            p.m
        )));
    }
    if p.mode == Mode::Real && !x.is_real() {
        return Err(Error::Precondition("real mode needs real coordinates".into()));
    }
    Ok(())
}

type G = (BigRational, BigRational);

fn gmul(a: &G, b: &G) -> G {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gone() -> G {
    (BigRational::one(), BigRational::zero())
}

/// Polynomials in `γ` with Gaussian rational coefficients.
fn gpoly_mul(a: &[G], b: &[G]) -> Vec<G> {
    let mut out = vec![(BigRational::zero(), BigRational::zero()); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = gmul(x, y);
            out[i + j].0 += t.0;
            out[i + j].1 += t.1;
        }
    }
    out
}

/// `u(γ) = P(x₁, …, x_{m−1}, x_m + γ)` split into real and imaginary parts.
fn shifted_gaussian(p: &RegionPoly, x: &[G]) -> (UPoly, UPoly) {
    let m = p.m;
    let dm = p.poly.degree_in(Var::tag(m as u32));
    let mut shift_pows: Vec<Vec<G>> = vec![vec![gone()]];
    let lin = vec![x[m - 1].clone(), gone()];
    for k in 1..=dm {
        let next = gpoly_mul(&shift_pows[k - 1], &lin);
        shift_pows.push(next);
    }
    let zero = (BigRational::zero(), BigRational::zero());
    let mut acc: Vec<G> = vec![zero; dm + 1];
    for (mono, c) in p.poly.terms() {
        let mut coef = (c.clone(), BigRational::zero());
        let mut em = 0usize;
        for (v, e) in mono {
            let j = v.tag_index().unwrap() as usize;
            if j == m {
                em = e as usize;
            } else {
                for _ in 0..e {
                    coef = gmul(&coef, &x[j - 1]);
                }
            }
        }
        for (k, s) in shift_pows[em].iter().enumerate() {
            let t = gmul(&coef, s);
            acc[k].0 += t.0;
            acc[k].1 += t.1;
        }
    }
    let re = UPoly::new(acc.iter().map(|g| g.0.clone()).collect());
    let im = UPoly::new(acc.into_iter().map(|g| g.1).collect());
    (re, im)
}

fn has_nonnegative_root(u: &UPoly) -> Result<bool> {
    if u.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    Ok(count_roots(u, &Bound::At(BigRational::zero()), &Bound::PosInf)? > 0)
}

/// `u(γ)` with element coefficients.
fn shifted_elements(p: &RegionPoly, x: &[Element]) -> Result<ElemPoly> {
    let m = p.m;
    let dm = p.poly.degree_in(Var::tag(m as u32));
    let lin = ElemPoly::linear(x[m - 1].clone(), Element::one())?;
    let mut shift_pows = vec![ElemPoly::constant(Element::one())?];
    for k in 1..=dm {
        let next = shift_pows[k - 1].mul(&lin)?;
        shift_pows.push(next);
    }
    let mut acc = ElemPoly::zero();
    for (mono, c) in p.poly.terms() {
        let mut coef = Element::from_rational(c.clone());
        let mut em = 0usize;
        for (v, e) in mono {
            let j = v.tag_index().unwrap() as usize;
            if j == m {
                em = e as usize;
            } else {
                coef = coef.mul(&x[j - 1].pow(e as i64)?);
            }
        }
        acc = acc.add(&shift_pows[em].scale(&coef)?)?;
    }
    Ok(acc)
}

/// `x ∈ Γ_P`: some `γ ≥ 0` has `P(x₁, …, x_{m−1}, x_m + γ) = 0`. An
/// identically vanishing `u` counts as membership.
pub fn gamma_member(p: &RegionPoly, x: &RegionPoint) -> Result<bool> {
    check_point(p, x)?;
    match x {
        RegionPoint::Gaussian(g) => {
            let (re, im) = shifted_gaussian(p, g);
            let u = match (re.is_zero(), im.is_zero()) {
                (true, true) => return Ok(true),
                (false, true) => re,
                (true, false) => im,
                (false, false) => re.gcd(&im),
            };
            has_nonnegative_root(&u)
        }
        RegionPoint::Elements(xs) => {
            let u = shifted_elements(p, xs)?;
            if u.is_zero() {
                return Ok(true);
            }
            let g = match p.mode {
                Mode::Real => u,
                Mode::Complex => {
                    let mut re = Vec::new();
                    let mut im = Vec::new();
                    for c in u.coeffs() {
                        let (a, b) = split_re_im(c)?;
                        re.push(a);
                        im.push(b);
                    }
                    let (re, im) = (ElemPoly::new(re)?, ElemPoly::new(im)?);
                    match (re.is_zero(), im.is_zero()) {
                        (true, true) => return Ok(true),
                        (false, true) => re,
                        (true, false) => im,
                        (false, false) => re.gcd(&im)?,
                    }
                }
            };
            if g.degree().unwrap_or(0) == 0 {
                return Ok(false);
            }
            Ok(g.count_nonnegative_roots()? > 0)
        }
    }
}

/// `x ∈ W_P`.
pub fn wp_member(p: &RegionPoly, x: &RegionPoint) -> Result<bool> {
    check_point(p, x)?;
    if gamma_member(p, x)? {
        return Ok(false);
    }
    if p.m == 1 {
        return Ok(true);
    }
    wp_member(&omega(p), &x.prefix(p.m - 1))
}

/// Membership in the cylinder over `W_P`, where `P` is written in the tags
/// `t₁ < … < t_m` and `x` assigns an element to each of them.
pub fn cylinder_member(poly: &MPoly, tags: &[u32], mode: Mode, x: &HashMap<u32, Element>) -> Result<bool> {
    if tags.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("tags must be strictly increasing".into()));
    }
    let local = poly.rename(|v| match v.tag_index().and_then(|t| tags.iter().position(|s| *s == t)) {
        Some(k) => Var::tag(k as u32 + 1),
        None => v,
    });
    let p = RegionPoly::new(local, tags.len(), mode)?;
    let coords = tags
        .iter()
        .map(|t| x.get(t).cloned().ok_or(Error::UnassignedVariable(format!("L{}", t))))
        .collect::<Result<Vec<_>>>()?;
    wp_member(&p, &RegionPoint::elements(coords))
}

/// Exact `P(x)`, as real and imaginary parts, at a Gaussian rational point.
pub fn eval_gaussian(p: &RegionPoly, x: &[G]) -> G {
    let mut acc = (BigRational::zero(), BigRational::zero());
    for (mono, c) in p.poly.terms() {
        let mut t = (c.clone(), BigRational::zero());
        for (v, e) in mono {
            let j = v.tag_index().unwrap() as usize;
            for _ in 0..e {
                t = gmul(&t, &x[j - 1]);
            }
        }
        acc.0 += t.0;
        acc.1 += t.1;
    }
    acc
}
