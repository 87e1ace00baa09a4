//! Dense univariate polynomials over ℚ and Sturm-sequence root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dyadic::{Dyadic, DyadicInterval};
use super::mpoly::{MPoly, Var};
use crate::error::{Error, Result};

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<BigRational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, q: &BigRational) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * q).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        UPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn monic(&self) -> UPoly {
        match self.leading() {
            None => UPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Quotient and remainder of field division.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] / &lc;
            if !t.is_zero() {
                for (j, c) in d.0.iter().enumerate() {
                    r[k + j] -= &t * c;
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn squarefree(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Standard Sturm sequence `f, f', −rem(f, f'), …`.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    /// Cauchy bound: every root has modulus below the returned power of two.
    pub fn root_bound(&self) -> BigRational {
        MPoly::cauchy_bound(&self.0).to_rational()
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// End point of a counting interval.
#[derive(Clone, Debug)]
pub enum Bound {
    At(BigRational),
    PosInf,
    NegInf,
}

fn variations_at(seq: &[UPoly], b: &Bound) -> usize {
    match b {
        Bound::At(x) => variations(seq.iter().map(|p| sign_of(&p.eval(x)))),
        Bound::PosInf => variations(seq.iter().map(|p| sign_of(p.leading().unwrap()))),
        Bound::NegInf => variations(seq.iter().map(|p| {
            let s = sign_of(p.leading().unwrap());
            if p.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        })),
    }
}

/// Number of distinct real roots in the closed interval between `lo` and
/// `hi` (infinite ends are open). Uses `V(lo) − V(hi)`, which counts roots in
/// `(lo, hi]` even when an end point is a root; a root at a finite `lo` is
/// added separately.
pub fn count_roots(p: &UPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let f = p.squarefree();
    if f.degree() == Some(0) {
        return Ok(0);
    }
    let seq = f.sturm_sequence();
    let v_lo = variations_at(&seq, lo);
    let v_hi = variations_at(&seq, hi);
    let at_lo = match lo {
        Bound::At(x) => usize::from(f.eval(x).is_zero()),
        _ => 0,
    };
    Ok(v_lo.saturating_sub(v_hi) + at_lo)
}

/// Exact number of real roots of a univariate rational polynomial inside a
/// closed dyadic interval. `hi = None` means the half-line `[lo, ∞)`, which
/// is cut at the Cauchy root bound.
pub fn sturm_count(a: &MPoly, lo: &Dyadic, hi: Option<&Dyadic>) -> Result<usize> {
    let v = a.vars().first().copied().unwrap_or(Var::Z);
    let dense = a
        .to_dense(v)
        .ok_or_else(|| Error::Precondition("sturm_count needs a univariate polynomial".into()))?;
    let p = UPoly::new(dense);
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let hi = match hi {
        Some(h) => h.to_rational(),
        None => {
            let b = p.root_bound();
            if b > lo.to_rational() {
                b
            } else {
                lo.to_rational()
            }
        }
    };
    count_roots(&p, &Bound::At(lo.to_rational()), &Bound::At(hi))
}

/// Convenience: count over a [`DyadicInterval`].
pub fn sturm_count_interval(a: &MPoly, iv: &DyadicInterval) -> Result<usize> {
    sturm_count(a, &iv.lo, Some(&iv.hi))
}

/// Real roots of a square-free rational polynomial as disjoint isolating
/// intervals with rational end points, in increasing order.
pub fn isolate_real_roots(p: &UPoly) -> Vec<(BigRational, BigRational)> {
    let f = p.squarefree();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = f.sturm_sequence();
    let b = f.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = variations_at(&seq, &Bound::At(lo.clone()))
            - variations_at(&seq, &Bound::At(hi.clone()));
        let n = n + usize::from(f.eval(&lo).is_zero());
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
