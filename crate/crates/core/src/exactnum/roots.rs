//! Certified complex root isolation for square-free polynomials whose
//! coefficients are only known through refinable enclosures.
//!
//! Approximations come from Aberth–Ehrlich iteration in [`CDyadic`]
//! arithmetic. They are certified with the column Gerschgorin discs of the
//! rank-one companion matrix `diag(z) − 1·Wᵀ`, whose characteristic
//! polynomial is `f / lc`: every root lies in the union of the discs
//! `|ζ − (z_i − W_i)| ≤ (n−1)|W_i|` with `W_i = f(z_i) / (lc · ∏_{j≠i}(z_i − z_j))`,
//! and a connected union of `k` discs holds exactly `k` roots. Pairwise
//! disjoint discs therefore isolate all roots, and since `W_i` is evaluated
//! with interval coefficients the certificate holds for every polynomial in
//! the coefficient family, in particular the true one.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{CDyadic, Dyadic, DyadicBox, DyadicInterval, Round};
use crate::error::{Error, Result};

/// First rung of the precision ladder.
pub const START_PREC: u32 = 32;
/// Give up beyond this working precision.
pub const MAX_PREC: u32 = 1 << 16;

/// Result of one certified isolation pass.
#[derive(Clone, Debug)]
pub struct Isolation {
    pub prec: u32,
    /// Pairwise disjoint, one root each.
    pub boxes: Vec<DyadicBox>,
    /// Root certified real (its box was snapped onto the real line).
    pub real: Vec<bool>,
}

/// Warm-startable isolator: keeps the Aberth approximations between rungs.
#[derive(Clone, Debug, Default)]
pub struct Isolator {
    approx: Vec<CDyadic>,
}

fn cpoint(b: &DyadicBox, prec: u32) -> CDyadic {
    let (re, im) = b.center();
    CDyadic::new(re, im).round(prec)
}

fn horner(c: &[CDyadic], z: &CDyadic, prec: u32) -> (CDyadic, CDyadic) {
    let n = c.len() - 1;
    let mut f = c[n].clone();
    let mut df = CDyadic::zero();
    for k in (0..n).rev() {
        df = df.mul(z).add(&f).round(prec);
        f = f.mul(z).add(&c[k]).round(prec);
    }
    (f, df)
}

fn box_horner(c: &[DyadicBox], z: &DyadicBox, prec: u32) -> DyadicBox {
    let n = c.len() - 1;
    let mut f = c[n].clone();
    for k in (0..n).rev() {
        f = f.mul(z, prec).add(&c[k], prec);
    }
    f
}

/// `tan(π/(2n))` to a few digits, from a short odd series at `π ≈ 355/113`.
fn tan_step(n: usize) -> BigRational {
    let x = BigRational::new(BigInt::from(355), BigInt::from(226 * n as i64));
    let x2 = &x * &x;
    let c3 = BigRational::new(1.into(), 3.into());
    let c5 = BigRational::new(2.into(), 15.into());
    let c7 = BigRational::new(17.into(), 315.into());
    &x * (BigRational::from_integer(1.into()) + &x2 * (c3 + &x2 * (c5 + &x2 * c7)))
}

/// Unit complex number `((1−t²) + 2ti)/(1+t²)`, rotation by `2·atan t`.
fn rotation(t: &BigRational, prec: u32) -> CDyadic {
    let one = BigRational::from_integer(1.into());
    let d = &one + t * t;
    let re = (&one - t * t) / &d;
    let im = (BigRational::from_integer(2.into()) * t) / &d;
    CDyadic::new(
        Dyadic::from_rational(&re, prec, Round::Floor),
        Dyadic::from_rational(&im, prec, Round::Floor),
    )
}

fn start_points(c: &[CDyadic], prec: u32) -> Vec<CDyadic> {
    let n = c.len() - 1;
    let en = c[n].mag_exp();
    let mut e = 0i64;
    for ck in &c[..n] {
        if !ck.is_zero() {
            e = e.max((ck.mag_exp() - en) / (n as i64).max(1) + 2);
        }
    }
    let radius = Dyadic::pow2(e);
    let offset = rotation(&BigRational::new(1.into(), 3.into()), prec);
    let step = if n == 1 {
        CDyadic::one()
    } else {
        let half = rotation(&tan_step(n), prec);
        half.mul(&half).round(prec)
    };
    let mut z = offset.scale(&radius);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(z.clone());
        z = z.mul(&step).round(prec);
    }
    out
}

fn small_enough(w: &CDyadic, z: &CDyadic, prec: u32) -> bool {
    if w.is_zero() {
        return true;
    }
    let scale = z.mag_exp().max(0);
    w.mag_exp() < scale - prec as i64 + 4
}

impl Isolator {
    pub fn new() -> Isolator {
        Isolator::default()
    }

    /// Aberth–Ehrlich sweeps (Gauss–Seidel order) at working precision `prec`.
    fn iterate(&mut self, c: &[CDyadic], prec: u32) {
        let n = c.len() - 1;
        if self.approx.len() != n {
            self.approx = start_points(c, prec);
        }
        if n == 1 {
            if let Some(z) = c[0].div(&c[1], prec) {
                self.approx[0] = CDyadic::new(z.re.neg(), z.im.neg());
            }
            return;
        }
        let max_sweeps = 200 + 4 * n;
        let mut nudge = 1i64;
        for _ in 0..max_sweeps {
            let mut done = true;
            for i in 0..n {
                let zi = self.approx[i].clone();
                let (f, df) = horner(c, &zi, prec);
                if f.is_zero() {
                    continue;
                }
                let Some(ratio) = f.div(&df, prec) else {
                    // stationary point: push off deterministically
                    let eps = Dyadic::pow2(zi.mag_exp().max(0) - prec as i64 / 2 + nudge);
                    nudge += 1;
                    self.approx[i] = zi.add(&CDyadic::new(eps.clone(), eps));
                    done = false;
                    continue;
                };
                let mut s = CDyadic::zero();
                let mut clash = false;
                for (j, zj) in self.approx.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    match CDyadic::one().div(&zi.sub(zj), prec) {
                        Some(q) => s = s.add(&q),
                        None => clash = true,
                    }
                }
                if clash {
                    let eps = Dyadic::pow2(zi.mag_exp().max(0) - prec as i64 / 2 + nudge);
                    nudge += 1;
                    self.approx[i] = zi.add(&CDyadic::new(eps.neg(), eps));
                    done = false;
                    continue;
                }
                let den = CDyadic::one().sub(&ratio.mul(&s).round(prec));
                let w = ratio.div(&den, prec).unwrap_or(ratio);
                if !small_enough(&w, &zi, prec) {
                    done = false;
                }
                self.approx[i] = zi.sub(&w).round(prec);
            }
            if done {
                break;
            }
        }
    }

    /// Try to certify at working precision `prec` given coefficient
    /// enclosures (low degree first). `None` means "go higher".
    pub fn isolate_at(&mut self, coeffs: &[DyadicBox], prec: u32) -> Option<Isolation> {
        let n = coeffs.len() - 1;
        assert!(n >= 1, "isolation of a constant polynomial");
        let mids: Vec<CDyadic> = coeffs.iter().map(|b| cpoint(b, prec)).collect();
        if mids[n].is_zero() {
            return None;
        }
        self.iterate(&mids, prec);
        let wp = prec + 16;
        let lc = &coeffs[n];
        let mut boxes = Vec::with_capacity(n);
        for i in 0..n {
            let zi = self.approx[i].to_box();
            let f = box_horner(coeffs, &zi, wp);
            let mut den = lc.clone();
            for (j, zj) in self.approx.iter().enumerate() {
                if j != i {
                    den = den.mul(&zi.sub(&zj.to_box(), wp), wp);
                }
            }
            let w = f.div(&den, wp)?;
            let centre = zi.sub(&w, wp);
            let r = w.abs_upper().mul(&Dyadic::from_int(n as i64 - 1));
            let r = r.round(wp, Round::Ceil);
            boxes.push(DyadicBox::new(centre.re.widen(&r), centre.im.widen(&r)));
        }
        for i in 0..n {
            for j in i + 1..n {
                if boxes[i].intersects(&boxes[j]) {
                    return None;
                }
            }
        }
        let real_coeffs = coeffs.iter().all(|c| c.is_real_line());
        let mut real = vec![false; n];
        if real_coeffs {
            // Roots of a real polynomial come in conjugate pairs; if the
            // mirror image of box i meets no other box, the conjugate of its
            // root is back in box i, hence equals it.
            for i in 0..n {
                let m = boxes[i].conj();
                if m.intersects(&boxes[i])
                    && (0..n).all(|j| j == i || !m.intersects(&boxes[j]))
                {
                    real[i] = true;
                }
            }
            for i in 0..n {
                if real[i] {
                    boxes[i] = DyadicBox::real(boxes[i].re.clone());
                }
            }
        }
        Some(Isolation { prec, boxes, real })
    }
}

/// Run the precision ladder from `start` until all roots are isolated.
pub fn isolate<F>(mut coeffs: F, start: u32) -> Result<(Isolation, Isolator)>
where
    F: FnMut(u32) -> Result<Vec<DyadicBox>>,
{
    let mut iso = Isolator::new();
    let mut prec = start.max(8);
    while prec <= MAX_PREC {
        let c = coeffs(prec)?;
        if let Some(res) = iso.isolate_at(&c, prec) {
            return Ok((res, iso));
        }
        prec *= 2;
    }
    Err(Error::PrecisionBudget)
}

/// The unique new box meeting `old`, if there is exactly one.
pub fn follow(old: &DyadicBox, new: &Isolation) -> Option<usize> {
    let mut hit = None;
    for (k, b) in new.boxes.iter().enumerate() {
        if b.intersects(old) {
            if hit.is_some() {
                return None;
            }
            hit = Some(k);
        }
    }
    hit
}

/// Convenience for rational coefficients.
pub fn rational_coeffs(c: &[BigRational], prec: u32) -> Vec<DyadicBox> {
    c.iter()
        .map(|q| DyadicBox::real(DyadicInterval::from_rational(q, prec)))
        .collect()
}
