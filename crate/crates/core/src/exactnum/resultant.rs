//! Resultants, gcds and square-free parts via subresultant remainder sequences.
//!
//! Polynomials are viewed as univariate in one variable with [`MPoly`]
//! coefficients; every division inside the sequence is exact.

use num_rational::BigRational;

use super::mpoly::{MPoly, Var};
use super::sturm::UPoly;
use crate::error::{Error, Result};

type Coeffs = Vec<MPoly>;

fn trim(v: &mut Coeffs) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn deg(v: &Coeffs) -> usize {
    v.len().saturating_sub(1)
}

fn lc(v: &Coeffs) -> &MPoly {
    v.last().expect("nonzero polynomial")
}

/// Pseudo-remainder: `lc(b)^(deg a − deg b + 1) · a = q·b + r`.
fn prem(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let db = deg(b);
    let mut r = a.clone();
    if r.len() < b.len() {
        return r;
    }
    let lb = lc(b).clone();
    let mut e = deg(a) - db + 1;
    while !r.is_empty() && deg(&r) >= db {
        let t = lc(&r).clone();
        let shift = deg(&r) - db;
        for c in r.iter_mut() {
            *c = c.mul_ref(&lb);
        }
        for (k, bc) in b.iter().enumerate() {
            let idx = k + shift;
            r[idx] = r[idx].sub_ref(&t.mul_ref(bc));
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = c.mul_ref(&f);
        }
    }
    r
}

fn div_all(v: &Coeffs, d: &MPoly) -> Coeffs {
    if d.is_one() {
        return v.clone();
    }
    v.iter()
        .map(|c| {
            c.div_exact(d)
                .expect("subresultant sequence division is exact")
        })
        .collect()
}

fn res_coeffs(a: Coeffs, b: Coeffs) -> MPoly {
    let (mut a, mut b) = (a, b);
    if a.is_empty() || b.is_empty() {
        return MPoly::zero();
    }
    let mut s = 1i32;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -1;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        let r = lc(&b).pow(deg(&a) as u32);
        return if s < 0 { r.neg_ref() } else { r };
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return MPoly::zero();
        }
        a = b;
        b = div_all(&r, &g.mul_ref(&h.pow(delta as u32)));
        g = lc(&a).clone();
        if delta > 0 {
            h = g
                .pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant h update is exact");
        }
        if deg(&b) == 0 {
            let da = deg(&a) as u32;
            let r = lc(&b)
                .pow(da)
                .div_exact(&h.pow(da - 1))
                .expect("subresultant final step is exact");
            return if s < 0 { r.neg_ref() } else { r };
        }
    }
}

/// Sylvester resultant of `a` and `b` with respect to `v`.
pub fn resultant(a: &MPoly, b: &MPoly, v: Var) -> Result<MPoly> {
    if a.degree_in(v) == 0 && b.degree_in(v) == 0 {
        return Err(Error::NoEliminationVariable);
    }
    if let Some(r) = res_interpolated(a, b, v) {
        return Ok(r);
    }
    Ok(res_coeffs(a.coeffs_in(v), b.coeffs_in(v)))
}

/// Largest number of univariate resultants the interpolation route may spend.
const INTERP_BUDGET: usize = 50_000;

/// Resultant by evaluating the other variables at points where neither
/// leading coefficient in `v` vanishes (so the Sylvester matrix specializes
/// exactly) and interpolating up to the degree bound
/// `deg_w res ≤ deg_v a · deg_w b + deg_v b · deg_w a`.
/// `None` when the evaluation count would exceed the budget.
fn res_interpolated(a: &MPoly, b: &MPoly, v: Var) -> Option<MPoly> {
    let mut others: Vec<Var> = a.vars().iter().chain(b.vars()).copied().filter(|w| *w != v).collect();
    others.sort();
    others.dedup();
    if others.is_empty() {
        return None;
    }
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    let bounds: Vec<usize> = others.iter().map(|w| da * b.degree_in(*w) + db * a.degree_in(*w)).collect();
    let mut count = 1usize;
    for d in &bounds {
        count = count.checked_mul(d + 1)?;
        if count > INTERP_BUDGET {
            return None;
        }
    }
    Some(interp_rec(a, b, v, &others, &bounds))
}

fn interp_rec(a: &MPoly, b: &MPoly, v: Var, others: &[Var], bounds: &[usize]) -> MPoly {
    let Some((&w, rest)) = others.split_first() else {
        return res_coeffs(a.coeffs_in(v), b.coeffs_in(v));
    };
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    let need = bounds[0] + 1;
    let mut xs: Vec<BigRational> = Vec::with_capacity(need);
    let mut ys: Vec<MPoly> = Vec::with_capacity(need);
    let mut k: i64 = 0;
    while xs.len() < need {
        let x = BigRational::from_integer(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }.into());
        k += 1;
        let (sa, sb) = (a.eval_var(w, &x), b.eval_var(w, &x));
        if sa.degree_in(v) != da || sb.degree_in(v) != db || sa.is_zero() || sb.is_zero() {
            continue;
        }
        ys.push(interp_rec(&sa, &sb, v, rest, &bounds[1..]));
        xs.push(x);
    }
    newton(w, &xs, ys)
}

/// The polynomial in `w` of degree `< xs.len()` through the points `(xs, ys)`.
fn newton(w: Var, xs: &[BigRational], mut c: Vec<MPoly>) -> MPoly {
    let n = xs.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let step = c[i].sub_ref(&c[i - 1]);
            c[i] = step.scale(&(&xs[i] - &xs[i - j]).recip());
        }
    }
    let mut acc = c[n - 1].clone();
    for i in (0..n - 1).rev() {
        let lin = MPoly::var(w).sub_ref(&MPoly::constant(xs[i].clone()));
        acc = acc.mul_ref(&lin).add_ref(&c[i]);
    }
    acc
}

/// Deterministic evaluation points used for specialization shortcuts.
fn spec_value(v: Var, attempt: u32) -> BigRational {
    let seed = match v.tag_index() {
        Some(i) => i as i64,
        None => v.aux_index().map(|i| i as i64 + 1000).unwrap_or(2000),
    };
    let vals = [3i64, 7, 13, 19, 29, 37, 43, 53, 61, 71, 79, 89];
    let k = ((seed * 5 + attempt as i64 * 3) as usize) % vals.len();
    BigRational::from_integer((vals[k] + seed % 11 + 17 * attempt as i64).into())
}

/// Specialize every variable except `v` to a small integer.
fn specialize(p: &MPoly, v: Var, attempt: u32) -> UPoly {
    let mut q = p.clone();
    for w in p.vars().to_vec() {
        if w != v {
            q = q.substitute(w, &MPoly::constant(spec_value(w, attempt)));
        }
    }
    UPoly::new(q.to_dense(v).expect("only v remains"))
}

/// True when a specialization certifies that `a` and `b` have no common
/// factor of positive degree in `v`.
fn certified_coprime_in(a: &MPoly, b: &MPoly, v: Var) -> bool {
    for attempt in 0..3 {
        let sa = specialize(a, v, attempt);
        let sb = specialize(b, v, attempt);
        if sa.degree() != Some(a.degree_in(v)) || sb.degree() != Some(b.degree_in(v)) {
            continue;
        }
        return sa.gcd(&sb).degree() == Some(0);
    }
    false
}

/// Content of `a` as a polynomial in `v` (gcd of its coefficients), normalized.
pub fn content_in(a: &MPoly, v: Var) -> MPoly {
    let cs = a.coeffs_in(v);
    if cs.iter().any(|c| c.is_constant() && !c.is_zero()) {
        return MPoly::one();
    }
    let mut g = MPoly::zero();
    for c in cs.iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, c);
        if g.is_constant() {
            return MPoly::one();
        }
    }
    g
}

/// `a` divided by its content in `v`, normalized in `v`.
pub fn primitive_part_in(a: &MPoly, v: Var) -> MPoly {
    if a.is_zero() {
        return MPoly::zero();
    }
    let c = content_in(a, v);
    let p = if c.is_one() {
        a.clone()
    } else {
        a.div_exact(&c).expect("content divides")
    };
    p.normalize_in(v)
}

fn prs_gcd(a: Coeffs, b: Coeffs, v: Var) -> MPoly {
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return primitive_part_in(&MPoly::from_coeffs(v, &b), v);
        }
        if deg(&r) == 0 {
            return MPoly::one();
        }
        a = b;
        b = div_all(&r, &g.mul_ref(&h.pow(delta as u32)));
        g = lc(&a).clone();
        if delta > 0 {
            h = g
                .pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant h update is exact");
        }
    }
}

/// Greatest common divisor over ℚ, integer-primitive with positive leading coefficient.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.integer_primitive();
    }
    if b.is_zero() {
        return a.integer_primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return a.integer_primitive();
    }
    let v = a.vars()[0].max(b.vars()[0]);
    if !a.contains_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.contains_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = if ca.is_one() || cb.is_one() {
        MPoly::one()
    } else {
        gcd(&ca, &cb)
    };
    let pa = if ca.is_one() { a.clone() } else { a.div_exact(&ca).expect("content divides") };
    let pb = if cb.is_one() { b.clone() } else { b.div_exact(&cb).expect("content divides") };
    let g = if certified_coprime_in(&pa, &pb, v) {
        MPoly::one()
    } else if pb.div_exact(&pa).is_some() {
        pa.normalize_in(v)
    } else if pa.div_exact(&pb).is_some() {
        pb.normalize_in(v)
    } else {
        prs_gcd(pa.coeffs_in(v), pb.coeffs_in(v), v)
    };
    c.mul_ref(&g).integer_primitive()
}

/// `a / gcd(a, ∂a/∂v)`, made primitive in `v`.
pub fn squarefree_part(a: &MPoly, v: Var) -> Result<MPoly> {
    if a.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let p = primitive_part_in(a, v);
    if p.degree_in(v) <= 1 {
        return Ok(p);
    }
    let d = p.derivative(v);
    if certified_coprime_in(&p, &d, v) {
        return Ok(p);
    }
    let g = prs_gcd(p.coeffs_in(v), d.coeffs_in(v), v);
    if g.degree_in(v) == 0 {
        return Ok(p);
    }
    let q = p.div_exact(&g).expect("gcd divides");
    Ok(primitive_part_in(&q, v))
}

/// Λ-free factor of `a ∈ ℚ[Λ][v]`: the gcd over ℚ[v] of the coefficients of
/// `a` viewed as a polynomial in the remaining variables. Monic-free, integer primitive.
pub fn constant_factor_in(a: &MPoly, v: Var) -> MPoly {
    let others: Vec<Var> = a.vars().iter().copied().filter(|w| *w != v).collect();
    if others.is_empty() {
        return a.integer_primitive();
    }
    // collect coefficients as polynomials in v only
    let mut parts: Vec<MPoly> = vec![a.clone()];
    for w in others {
        parts = parts.iter().flat_map(|p| p.coeffs_in(w)).filter(|c| !c.is_zero()).collect();
    }
    let mut g: Option<UPoly> = None;
    for p in &parts {
        let u = UPoly::new(p.to_dense(v).expect("only v remains"));
        g = Some(match g {
            None => u,
            Some(h) => h.gcd(&u),
        });
        if g.as_ref().and_then(|h| h.degree()) == Some(0) {
            return MPoly::one();
        }
    }
    match g {
        Some(u) if u.degree().unwrap_or(0) > 0 => MPoly::from_dense(v, u.coeffs()).integer_primitive(),
        _ => MPoly::one(),
    }
}

/// Discriminant-free check used in tests: gcd with the derivative is constant in `v`.
pub fn is_squarefree_in(a: &MPoly, v: Var) -> bool {
    let d = a.derivative(v);
    if d.is_zero() {
        return a.degree_in(v) == 0;
    }
    gcd(a, &d).degree_in(v) == 0
}
