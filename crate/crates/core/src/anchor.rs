//! Transcendental tags and the anchor point.
//!
//! Tag `k` is the variable `Λ_k`; its anchor coordinate is `exp(√p_k)` with
//! `p_k` the k-th prime (tag 0 ↦ 2). The `√p_k` are ℚ-linearly independent,
//! so by Lindemann–Weierstrass the coordinates are algebraically independent
//! over ℚ: no nonzero rational polynomial in the tags vanishes at the anchor.
//! Every refinement loop in the crate relies on this for termination.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, DyadicBox, DyadicInterval, MPoly, Round};

fn primes() -> &'static Mutex<Vec<u64>> {
    static P: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    P.get_or_init(|| Mutex::new(vec![2, 3]))
}

/// The k-th prime, 0-based.
pub fn nth_prime(k: usize) -> u64 {
    let mut ps = primes().lock().unwrap();
    let mut c = *ps.last().unwrap();
    while ps.len() <= k {
        c += 2;
        if ps.iter().take_while(|p| *p * *p <= c).all(|p| !c.is_multiple_of(*p)) {
            ps.push(c);
        }
    }
    ps[k]
}

/// `exp(y)` enclosure for a point `y`, evaluated in interval arithmetic with
/// `w` bits: argument reduction to `y/2^r < 2^-8`, Taylor sum with remainder
/// bound `2·u^{N+1}/(N+1)!`, then `r` squarings.
fn exp_point(y: &Dyadic, w: u32) -> DyadicInterval {
    assert!(y.signum() >= 0);
    let r = if y.is_zero() { 0 } else { (y.msb() + 9).max(0) };
    let wp = w + r as u32 + 16;
    let u = DyadicInterval::point(y.mul_pow2(-r));
    let n_terms = (wp as i64 / 8 + 2) as u32;
    let mut term = DyadicInterval::point(Dyadic::one());
    let mut sum = term.clone();
    for k in 1..=n_terms {
        term = term
            .mul(&u, wp)
            .div(&DyadicInterval::point(Dyadic::from_int(k as i64)), wp)
            .unwrap();
        sum = sum.add(&term, wp);
    }
    // u < 2^-8, so the tail is below 2·2^{-8(N+1)}
    let tail = Dyadic::pow2(1 - 8 * (n_terms as i64 + 1));
    sum = DyadicInterval::new(sum.lo, sum.hi.add(&tail));
    for _ in 0..r {
        sum = sum.sqr(wp);
    }
    sum
}

/// Enclosure of `exp(√p)` computed with `w` working bits.
fn exp_sqrt_prime(p: u64, w: u32) -> DyadicInterval {
    let scaled = BigInt::from(p) << (2 * w as usize);
    let s = scaled.sqrt();
    let lo = Dyadic::new(s.clone(), -(w as i64));
    let hi = Dyadic::new(s + 1, -(w as i64));
    DyadicInterval::new(exp_point(&lo, w).lo, exp_point(&hi, w).hi)
}

fn cache() -> &'static Mutex<HashMap<u32, DyadicInterval>> {
    static C: OnceLock<Mutex<HashMap<u32, DyadicInterval>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn tight_enclosure(tag: u32, bits: u32) -> DyadicInterval {
    let goal = Dyadic::pow2(-(bits as i64));
    if let Some(iv) = cache().lock().unwrap().get(&tag) {
        if iv.width() <= goal {
            return iv.clone();
        }
    }
    let p = nth_prime(tag as usize);
    let mut w = bits + 16;
    let iv = loop {
        let iv = exp_sqrt_prime(p, w);
        if iv.width() <= goal {
            break iv;
        }
        w *= 2;
    };
    let mut c = cache().lock().unwrap();
    let merged = match c.get(&tag) {
        Some(old) => old.intersection(&iv).expect("anchor enclosures must overlap"),
        None => iv,
    };
    c.insert(tag, merged.clone());
    merged
}

/// `[⌊x·2^p⌋, ⌊x·2^p⌋ + 1] / 2^p` for `x = x₀(t)`: width exactly `2^-p`,
/// nested in `p`, and independent of what has been computed before.
pub fn coordinate(tag: u32, prec: u32) -> DyadicInterval {
    let mut bits = prec + 8;
    loop {
        let iv = tight_enclosure(tag, bits);
        let lo = iv.lo.round_abs(prec as i64, Round::Floor);
        let hi = iv.hi.round_abs(prec as i64, Round::Floor);
        if lo == hi {
            let up = lo.add(&Dyadic::pow2(-(prec as i64)));
            return DyadicInterval::new(lo, up);
        }
        // x is transcendental, so it is never a grid point
        bits *= 2;
    }
}

/// Append-only tag registry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Anchor {
    next: u32,
}

impl Anchor {
    pub fn new() -> Anchor {
        Anchor::default()
    }

    pub fn with_high_water(next: u32) -> Anchor {
        Anchor { next }
    }

    /// Number of tags allocated so far; tags are `0..high_water()`.
    pub fn high_water(&self) -> u32 {
        self.next
    }

    pub fn is_allocated(&self, tag: u32) -> bool {
        tag < self.next
    }

    pub fn fresh_tags(&mut self, n: usize) -> Result<Vec<u32>> {
        if n == 0 {
            return Err(Error::Precondition("fresh_tags needs n >= 1".into()));
        }
        let start = self.next;
        self.next = start
            .checked_add(n as u32)
            .filter(|v| *v < (1 << 31))
            .ok_or_else(|| Error::Precondition("tag space exhausted".into()))?;
        Ok((start..self.next).collect())
    }

    pub fn coordinate(&self, tag: u32, prec: u32) -> Result<DyadicInterval> {
        if !self.is_allocated(tag) {
            return Err(Error::UnallocatedTag(tag));
        }
        Ok(coordinate(tag, prec))
    }

    pub fn check_allocated(&self, p: &MPoly) -> Result<()> {
        match p.tags().into_iter().find(|t| !self.is_allocated(*t)) {
            Some(t) => Err(Error::UnallocatedTag(t)),
            None => Ok(()),
        }
    }

    /// Enclosure of `P(x₀)` for a polynomial in allocated tags.
    pub fn eval_poly(&self, p: &MPoly, prec: u32) -> Result<DyadicBox> {
        self.check_allocated(p)?;
        eval_at_anchor(p, prec)
    }
}

/// Enclosure of `P(x₀)`; every variable must be a tag.
pub fn eval_at_anchor(p: &MPoly, prec: u32) -> Result<DyadicBox> {
    p.interval_eval(prec + 8, |v| {
        v.tag_index()
            .map(|t| DyadicBox::real(coordinate(t, prec + 8)))
    })
}
