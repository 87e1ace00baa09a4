//! Dyadic rationals `m·2^e` and outward-rounded interval arithmetic over them.
//!
//! Every interval operation takes a working precision `prec` (significant
//! bits kept per endpoint). Lower endpoints round toward −∞ and upper
//! endpoints toward +∞, so each result encloses the exact result of the
//! operation applied to any points of the inputs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

/// `mant · 2^exp`, normalized so that `mant` is odd (or the value is zero
/// with `exp == 0`). Structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn bitlen(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Dyadic {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    /// Exponent of the leading bit: `2^msb ≤ |x| < 2^(msb+1)`. Zero maps to `i64::MIN`.
    pub fn msb(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + bitlen(&self.mant) as i64 - 1
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = bitlen(&self.mant);
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        // BigInt >> rounds toward -inf
        let floor = &self.mant >> shift;
        let mant = match dir {
            Round::Floor => floor,
            Round::Ceil => {
                if (&floor << shift) == self.mant {
                    floor
                } else {
                    floor + 1
                }
            }
        };
        Dyadic::new(mant, self.exp + shift as i64)
    }

    /// Round to a multiple of `2^-frac_bits`.
    pub fn round_abs(&self, frac_bits: i64, dir: Round) -> Dyadic {
        if self.exp >= -frac_bits {
            return self.clone();
        }
        let shift = (-frac_bits - self.exp) as usize;
        let floor = &self.mant >> shift;
        let mant = match dir {
            Round::Floor => floor,
            Round::Ceil => {
                if (&floor << shift) == self.mant {
                    floor
                } else {
                    floor + 1
                }
            }
        };
        Dyadic::new(mant, -frac_bits)
    }

    /// Quotient rounded to `prec` significant bits in direction `dir`.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + bitlen(&other.mant) as i64 - bitlen(&self.mant) as i64 + 2).max(0);
        let num = &self.mant << k as usize;
        let (q, r) = num.div_mod_floor(&other.mant);
        let q = match dir {
            Round::Floor => q,
            Round::Ceil => {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
        };
        Dyadic::new(q, self.exp - other.exp - k).round(prec, dir)
    }

    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        let n = Dyadic::from_bigint(q.numer().clone());
        let d = Dyadic::from_bigint(q.denom().clone());
        if d.mant.is_one() {
            return n.mul_pow2(d.exp).round(prec, dir);
        }
        n.div(&d, prec, dir)
    }

    /// Exact conversion when the rational has a power-of-two denominator.
    pub fn try_from_rational(q: &BigRational) -> Option<Dyadic> {
        let d = q.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz as usize).is_one() {
            Some(Dyadic::new(q.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn floor_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            &self.mant >> (-self.exp) as usize
        }
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.add(b).mul_pow2(-1)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.signum().cmp(&other.signum());
        if s != Ordering::Equal {
            return s;
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    /// Exact rational form: an integer or `n/2^k` written out, e.g. `1053/256`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp >= 0 {
            write!(f, "{}", &self.mant << self.exp as usize)
        } else {
            write!(f, "{}/{}", self.mant, BigInt::one() << (-self.exp) as usize)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Closed real interval with dyadic endpoints, `lo ≤ hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> DyadicInterval {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        DyadicInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> DyadicInterval {
        DyadicInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> DyadicInterval {
        DyadicInterval::point(Dyadic::zero())
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> DyadicInterval {
        if let Some(d) = Dyadic::try_from_rational(q) {
            return DyadicInterval::point(d);
        }
        DyadicInterval {
            lo: Dyadic::from_rational(q, prec, Round::Floor),
            hi: Dyadic::from_rational(q, prec, Round::Ceil),
        }
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &DyadicInterval) -> Option<DyadicInterval> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then_some(DyadicInterval { lo, hi })
    }

    pub fn hull(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: Dyadic::min(&self.lo, &other.lo),
            hi: Dyadic::max(&self.hi, &other.hi),
        }
    }

    /// Sign of every point of the interval, if uniform and nonzero.
    pub fn strict_sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, other: &DyadicInterval, prec: u32) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.add(&other.lo).round(prec, Round::Floor),
            hi: self.hi.add(&other.hi).round(prec, Round::Ceil),
        }
    }

    pub fn sub(&self, other: &DyadicInterval, prec: u32) -> DyadicInterval {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &DyadicInterval, prec: u32) -> DyadicInterval {
        let p = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = p[0].clone();
        let mut hi = p[0].clone();
        for x in &p[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        DyadicInterval {
            lo: lo.round(prec, Round::Floor),
            hi: hi.round(prec, Round::Ceil),
        }
    }

    pub fn sqr(&self, prec: u32) -> DyadicInterval {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        let hi = Dyadic::max(&a, &b).round(prec, Round::Ceil);
        let lo = if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&a, &b).round(prec, Round::Floor)
        };
        DyadicInterval { lo, hi }
    }

    pub fn scale_rational(&self, q: &BigRational, prec: u32) -> DyadicInterval {
        self.mul(&DyadicInterval::from_rational(q, prec), prec)
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, other: &DyadicInterval, prec: u32) -> Option<DyadicInterval> {
        if other.contains_zero() {
            return None;
        }
        let inv = DyadicInterval {
            lo: Dyadic::one().div(&other.hi, prec, Round::Floor),
            hi: Dyadic::one().div(&other.lo, prec, Round::Ceil),
        };
        Some(self.mul(&inv, prec))
    }

    pub fn pow(&self, n: u32, prec: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::point(Dyadic::one());
        let mut base = self.clone();
        let mut e = n;
        // even powers of a sign-straddling interval are tightened by sqr()
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(prec);
            }
        }
        acc
    }

    /// Upper bound on `max |x|`.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    /// Lower bound on `min |x|` (zero if the interval straddles zero).
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&self.lo.abs(), &self.hi.abs())
        }
    }

    /// Symmetric widening by `r ≥ 0`.
    pub fn widen(&self, r: &Dyadic) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.sub(r),
            hi: self.hi.add(r),
        }
    }
}

/// Axis-aligned complex rectangle `re × i·im`. A real value has `im = [0,0]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicBox {
    pub re: DyadicInterval,
    pub im: DyadicInterval,
}

impl fmt::Debug for DyadicBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}i", self.re, self.im)
    }
}

impl DyadicBox {
    pub fn real(re: DyadicInterval) -> DyadicBox {
        DyadicBox {
            re,
            im: DyadicInterval::zero(),
        }
    }

    pub fn new(re: DyadicInterval, im: DyadicInterval) -> DyadicBox {
        DyadicBox { re, im }
    }

    pub fn point_rational(q: &BigRational, prec: u32) -> DyadicBox {
        DyadicBox::real(DyadicInterval::from_rational(q, prec))
    }

    pub fn is_real_line(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn intersects(&self, other: &DyadicBox) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn intersection(&self, other: &DyadicBox) -> Option<DyadicBox> {
        Some(DyadicBox {
            re: self.re.intersection(&other.re)?,
            im: self.im.intersection(&other.im)?,
        })
    }

    pub fn is_subset_of(&self, other: &DyadicBox) -> bool {
        self.re.is_subset_of(&other.re) && self.im.is_subset_of(&other.im)
    }

    pub fn width(&self) -> Dyadic {
        Dyadic::max(&self.re.width(), &self.im.width())
    }

    pub fn conj(&self) -> DyadicBox {
        DyadicBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn neg(&self) -> DyadicBox {
        DyadicBox {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, o: &DyadicBox, prec: u32) -> DyadicBox {
        DyadicBox {
            re: self.re.add(&o.re, prec),
            im: self.im.add(&o.im, prec),
        }
    }

    pub fn sub(&self, o: &DyadicBox, prec: u32) -> DyadicBox {
        DyadicBox {
            re: self.re.sub(&o.re, prec),
            im: self.im.sub(&o.im, prec),
        }
    }

    pub fn mul(&self, o: &DyadicBox, prec: u32) -> DyadicBox {
        if self.is_real_line() && o.is_real_line() {
            return DyadicBox::real(self.re.mul(&o.re, prec));
        }
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        DyadicBox { re, im }
    }

    pub fn sqr(&self, prec: u32) -> DyadicBox {
        if self.is_real_line() {
            return DyadicBox::real(self.re.sqr(prec));
        }
        let re = self.re.sqr(prec).sub(&self.im.sqr(prec), prec);
        let im = self.re.mul(&self.im, prec);
        let im = im.add(&im, prec);
        DyadicBox { re, im }
    }

    pub fn pow(&self, n: u32, prec: u32) -> DyadicBox {
        if self.is_real_line() {
            return DyadicBox::real(self.re.pow(n, prec));
        }
        let mut acc = DyadicBox::real(DyadicInterval::point(Dyadic::one()));
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(prec);
            }
        }
        acc
    }

    /// Enclosure of `|z|²`.
    pub fn norm_sqr(&self, prec: u32) -> DyadicInterval {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    /// `None` when the divisor box may contain zero.
    pub fn div(&self, o: &DyadicBox, prec: u32) -> Option<DyadicBox> {
        if o.is_real_line() {
            let re = self.re.div(&o.re, prec)?;
            let im = if self.is_real_line() {
                DyadicInterval::zero()
            } else {
                self.im.div(&o.re, prec)?
            };
            return Some(DyadicBox { re, im });
        }
        let den = o.norm_sqr(prec);
        if den.contains_zero() {
            return None;
        }
        let num = self.mul(&o.conj(), prec);
        Some(DyadicBox {
            re: num.re.div(&den, prec)?,
            im: num.im.div(&den, prec)?,
        })
    }

    /// Upper bound on `|z|` (via the max-norm times √2, rounded up to 3/2).
    pub fn abs_upper(&self) -> Dyadic {
        let m = Dyadic::max(&self.re.mag(), &self.im.mag());
        m.mul(&Dyadic::new(BigInt::from(3), -1))
    }

    /// Lower bound on `|z|`.
    pub fn abs_lower(&self) -> Dyadic {
        Dyadic::max(&self.re.mig(), &self.im.mig())
    }

    pub fn center(&self) -> (Dyadic, Dyadic) {
        (self.re.midpoint(), self.im.midpoint())
    }
}

/// Complex number with dyadic parts, used for floating approximations at a
/// fixed working precision (root finding). Never used to decide anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CDyadic {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl CDyadic {
    pub fn new(re: Dyadic, im: Dyadic) -> CDyadic {
        CDyadic { re, im }
    }

    pub fn zero() -> CDyadic {
        CDyadic::new(Dyadic::zero(), Dyadic::zero())
    }

    pub fn one() -> CDyadic {
        CDyadic::new(Dyadic::one(), Dyadic::zero())
    }

    pub fn round(&self, prec: u32) -> CDyadic {
        // keep precision relative to the larger component
        let m = self.re.msb().max(self.im.msb());
        if m == i64::MIN {
            return CDyadic::zero();
        }
        let frac = prec as i64 - m;
        CDyadic::new(
            self.re.round_abs(frac, Round::Floor),
            self.im.round_abs(frac, Round::Floor),
        )
    }

    pub fn add(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &CDyadic) -> CDyadic {
        CDyadic::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn scale(&self, d: &Dyadic) -> CDyadic {
        CDyadic::new(self.re.mul(d), self.im.mul(d))
    }

    pub fn norm_sqr(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Quotient at `prec` bits; `None` for a zero divisor.
    pub fn div(&self, o: &CDyadic, prec: u32) -> Option<CDyadic> {
        if o.is_zero() {
            return None;
        }
        let den = o.norm_sqr();
        let num = self.mul(&CDyadic::new(o.re.clone(), o.im.neg()));
        Some(CDyadic::new(
            num.re.div(&den, prec, Round::Floor),
            num.im.div(&den, prec, Round::Floor),
        ))
    }

    /// Crude magnitude exponent: `max(msb(re), msb(im))`.
    pub fn mag_exp(&self) -> i64 {
        self.re.msb().max(self.im.msb())
    }

    pub fn to_box(&self) -> DyadicBox {
        DyadicBox::new(
            DyadicInterval::point(self.re.clone()),
            DyadicInterval::point(self.im.clone()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn shift_rounds_toward_negative_infinity() {
        let m = BigInt::from(-5);
        assert_eq!(&m >> 1usize, BigInt::from(-3));
    }

    #[test]
    fn rounding_directions() {
        let x = Dyadic::from_int(-13); // -1101b
        assert_eq!(x.round(2, Round::Floor), Dyadic::from_int(-16));
        assert_eq!(x.round(2, Round::Ceil), Dyadic::from_int(-12));
        let y = Dyadic::from_int(13);
        assert_eq!(y.round(2, Round::Floor), Dyadic::from_int(12));
        assert_eq!(y.round(2, Round::Ceil), Dyadic::from_int(16));
    }

    #[test]
    fn rational_enclosure() {
        let third = q(1, 3);
        let iv = DyadicInterval::from_rational(&third, 20);
        assert!(iv.contains_rational(&third));
        assert!(iv.width() <= Dyadic::pow2(-19));
        let exact = DyadicInterval::from_rational(&q(3, 8), 4);
        assert_eq!(exact.lo, exact.hi);
    }

    #[test]
    fn interval_square_of_straddling_interval() {
        let iv = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(2));
        let s = iv.sqr(64);
        assert_eq!(s.lo, Dyadic::zero());
        assert_eq!(s.hi, Dyadic::from_int(4));
    }

    #[test]
    fn display_is_exact_rational() {
        assert_eq!(Dyadic::new(BigInt::from(1053), -8).to_string(), "1053/256");
        assert_eq!(Dyadic::from_int(-6).to_string(), "-6");
    }

    #[test]
    fn division_brackets_quotient() {
        let a = Dyadic::from_int(1);
        let b = Dyadic::from_int(3);
        let lo = a.div(&b, 30, Round::Floor);
        let hi = a.div(&b, 30, Round::Ceil);
        assert!(lo.to_rational() < q(1, 3));
        assert!(hi.to_rational() > q(1, 3));
    }

    #[test]
    fn complex_box_division() {
        let i = DyadicBox::new(DyadicInterval::zero(), DyadicInterval::point(Dyadic::one()));
        let one = DyadicBox::real(DyadicInterval::point(Dyadic::one()));
        let inv = one.div(&i, 32).unwrap();
        assert!(inv.im.contains(&Dyadic::from_int(-1)));
        assert!(inv.re.contains_zero());
    }
}
