//! Sampled verification of the filter axioms for `W_P`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{eval_gaussian, shifted_gaussian, wp_member, Mode, RegionPoint, RegionPoly, G};
use crate::error::{Error, Result};
use crate::exactnum::sturm::isolate_real_roots;

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    /// Norm bound for the unboundedness search.
    pub bound: BigRational,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            samples: 1000,
            seed: 0,
            bound: BigRational::from_integer(1_000_000.into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxiomLine {
    pub name: &'static str,
    pub ok: bool,
    pub passed: usize,
    pub total: usize,
    /// Counterexample on failure, the found point for `R2`.
    pub point: Option<String>,
}

impl fmt::Display for AxiomLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ok, &self.point, self.name) {
            (true, Some(p), "R2") => write!(f, "R2 OK at {}", p),
            (false, None, "R2") => write!(f, "R2 FAIL no member found"),
            (true, _, _) => write!(f, "{} OK {}/{}", self.name, self.passed, self.total),
            (false, Some(p), _) => write!(f, "{} FAIL at {}", self.name, p),
            (false, None, _) => write!(f, "{} FAIL", self.name),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub seed: u64,
    pub lines: Vec<AxiomLine>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.lines.iter().all(|l| l.ok)
    }

    pub fn line(&self, name: &str) -> Option<&AxiomLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for (k, l) in self.lines.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n: i64 = rng.gen_range(-100..=100);
    let d: i64 = rng.gen_range(1..=100);
    BigRational::new(n.into(), d.into())
}

fn zero() -> BigRational {
    BigRational::zero()
}

/// A random point, or with probability 1/4 a point on or next to the zero
/// set of one of `polys` along the last axis.
fn sample_point(rng: &mut ChaCha8Rng, polys: &[&RegionPoly], m: usize, mode: Mode) -> Vec<G> {
    let coord = |rng: &mut ChaCha8Rng| match mode {
        Mode::Real => (small_rational(rng), zero()),
        Mode::Complex => (small_rational(rng), small_rational(rng)),
    };
    let mut x: Vec<G> = (0..m).map(|_| coord(rng)).collect();
    if rng.gen_range(0..4) == 0 {
        let p = polys[rng.gen_range(0..polys.len())];
        let mut real_prefix = x.clone();
        for c in real_prefix.iter_mut() {
            c.1 = zero();
        }
        real_prefix[m - 1] = (zero(), zero());
        let (u, _) = shifted_gaussian(p, &real_prefix);
        let roots = isolate_real_roots(&u);
        if !roots.is_empty() {
            let (lo, hi) = &roots[rng.gen_range(0..roots.len())];
            let t = match rng.gen_range(0..3) {
                0 => lo.clone(),
                1 => hi.clone(),
                _ => (lo + hi) / BigRational::from_integer(2.into()),
            };
            x = real_prefix;
            let im = match mode {
                Mode::Complex if rng.gen_bool(0.5) => BigRational::new(rng.gen_range(-1i64..=1).into(), 1000.into()),
                _ => zero(),
            };
            x[m - 1] = (t, im);
        }
    }
    x
}

fn sample_points(cfg: &SampleConfig, polys: &[&RegionPoly], m: usize, mode: Mode) -> Vec<Vec<G>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.samples).map(|_| sample_point(&mut rng, polys, m, mode)).collect()
}

fn norm_exceeds(x: &[G], bound: &BigRational) -> bool {
    x.iter().any(|(a, b)| a.abs() > *bound || b.abs() > *bound)
}

/// Rays `(s, …, s)` and `(s, s², …, s^m)` with `s` doubling from `bound + 1`.
fn unbounded_member(p: &RegionPoly, bound: &BigRational) -> Result<Option<RegionPoint>> {
    let mut s = bound.abs() + BigRational::one();
    for _ in 0..64 {
        let flat = vec![s.clone(); p.dim()];
        let mut pw = BigRational::one();
        let steep: Vec<BigRational> = (0..p.dim())
            .map(|_| {
                pw = &pw * &s;
                pw.clone()
            })
            .collect();
        for xs in [flat, steep] {
            let x = RegionPoint::rational(xs);
            if wp_member(p, &x)? {
                return Ok(Some(x));
            }
        }
        s = &s * BigRational::from_integer(BigInt::from(2));
    }
    Ok(None)
}

/// Exact checks at sampled points:
/// `R0` no member of `W_P` is a zero of `P`;
/// `R1` `x ∈ W_P ∩ W_Q` iff `x ∈ W_{PQ}`;
/// `R2` some member of `W_P` has a coordinate beyond `cfg.bound`.
pub fn check_r_axioms(p: &RegionPoly, q: &RegionPoly, cfg: &SampleConfig) -> Result<AxiomReport> {
    if p.dim() != q.dim() || p.mode() != q.mode() {
        return Err(Error::Precondition("P and Q need the same dimension and mode".into()));
    }
    let pq = p.mul(q)?;
    let points = sample_points(cfg, &[p, q], p.dim(), p.mode());
    let verdicts: Vec<(bool, bool, bool, bool)> = points
        .par_iter()
        .map(|x| -> Result<(bool, bool, bool, bool)> {
            let pt = RegionPoint::gaussian(x.clone());
            let in_p = wp_member(p, &pt)?;
            let in_q = wp_member(q, &pt)?;
            let in_pq = wp_member(&pq, &pt)?;
            let v = eval_gaussian(p, x);
            let p_nonzero = !(v.0.is_zero() && v.1.is_zero());
            Ok((in_p, in_q, in_pq, p_nonzero))
        })
        .collect::<Result<Vec<_>>>()?;

    let members: Vec<usize> = (0..points.len()).filter(|k| verdicts[*k].0).collect();
    let r0_bad = members.iter().find(|k| !verdicts[**k].3);
    let r0 = AxiomLine {
        name: "R0",
        ok: r0_bad.is_none(),
        passed: members.iter().filter(|k| verdicts[**k].3).count(),
        total: members.len(),
        point: r0_bad.map(|k| RegionPoint::gaussian(points[*k].clone()).to_string()),
    };

    let r1_ok = |v: &(bool, bool, bool, bool)| (v.0 && v.1) == v.2;
    let r1_bad = (0..points.len()).find(|k| !r1_ok(&verdicts[*k]));
    let r1 = AxiomLine {
        name: "R1",
        ok: r1_bad.is_none(),
        passed: verdicts.iter().filter(|v| r1_ok(v)).count(),
        total: points.len(),
        point: r1_bad.map(|k| RegionPoint::gaussian(points[k].clone()).to_string()),
    };

    let far = unbounded_member(p, &cfg.bound)?;
    let far_ok = match &far {
        Some(RegionPoint::Gaussian(x)) => norm_exceeds(x, &cfg.bound),
        _ => false,
    };
    let r2 = AxiomLine {
        name: "R2",
        ok: far_ok,
        passed: usize::from(far_ok),
        total: 1,
        point: far.map(|x| x.to_string()),
    };

    Ok(AxiomReport {
        seed: cfg.seed,
        lines: vec![r0, r1, r2],
    })
}

/// A member of `W_P` inside the box of radius `2^-10` around `center`,
/// searched on a seeded random grid of dyadic offsets.
pub fn density_probe(p: &RegionPoly, center: &[G], seed: u64, tries: usize) -> Result<Option<RegionPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = RegionPoint::gaussian(center.to_vec());
    if wp_member(p, &c)? {
        return Ok(Some(c));
    }
    let scale = BigRational::new(1.into(), BigInt::from(1u64 << 20));
    for _ in 0..tries {
        let mut off = || BigRational::from_integer(rng.gen_range(-1024i64..=1024).into()) * &scale;
        let x: Vec<G> = center
            .iter()
            .map(|(a, b)| match p.mode() {
                Mode::Real => (a + off(), b.clone()),
                Mode::Complex => (a + off(), b + off()),
            })
            .collect();
        let pt = RegionPoint::gaussian(x);
        if wp_member(p, &pt)? {
            return Ok(Some(pt));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(s: &str, mode: Mode) -> RegionPoly {
        RegionPoly::parse(s, Some(1), mode).unwrap()
    }

    #[test]
    fn r1_on_line_and_shift() {
        let cfg = SampleConfig {
            samples: 100,
            seed: 7,
            ..SampleConfig::default()
        };
        let rep = check_r_axioms(&rp("L1", Mode::Real), &rp("L1 - 1", Mode::Real), &cfg).unwrap();
        assert!(rep.all_ok(), "{}", rep);
        assert_eq!(rep.line("R1").unwrap().to_string(), "R1 OK 100/100");
        assert_eq!(rep.line("R2").unwrap().to_string(), "R2 OK at (1000001)");
    }

    #[test]
    fn r0_avoids_zeros() {
        let cfg = SampleConfig {
            samples: 200,
            seed: 3,
            ..SampleConfig::default()
        };
        let p = rp("L1^2 - 1", Mode::Complex);
        let rep = check_r_axioms(&p, &rp("L1 + 2", Mode::Complex), &cfg).unwrap();
        assert!(rep.line("R0").unwrap().ok, "{}", rep);
        assert!(rep.all_ok(), "{}", rep);
    }

    #[test]
    fn failure_line_format() {
        let l = AxiomLine {
            name: "R1",
            ok: false,
            passed: 0,
            total: 1,
            point: Some("(3/7, -2/5)".into()),
        };
        assert_eq!(l.to_string(), "R1 FAIL at (3/7, -2/5)");
    }

    #[test]
    fn density_near_boundary() {
        // 0 is on the boundary of W_{L1} = ℂ minus (−∞, 0]
        let p = rp("L1", Mode::Complex);
        let hit = density_probe(&p, &[(zero(), zero())], 1, 64).unwrap();
        assert!(hit.is_some());
    }
}
