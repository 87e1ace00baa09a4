//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nashdcf::cli::Engine;
use nashdcf::diffclosure::{DiffField, DiffPoly, WitnessKind};
use nashdcf::exactnum::{rat, Dyadic};
use nashdcf::nashfield::{real_roots, ElemPoly, Element, Selector, Sign};
use nashdcf::regions::{check_r_axioms, wp_member, Mode, RegionPoint, RegionPoly, SampleConfig};
use nashdcf::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: nashdcf::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{}: {}", what, e))
}

fn field_and_closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pool: Vec<Element> = algebraic_pool().into_iter().map(|(e, _)| e).collect();
    for k in 0..200 {
        let (a, b, c) = (random_real(&mut rng, &pool), random_real(&mut rng, &pool), random_real(&mut rng, &pool));
        let eq = |x: Element, y: Element, law: &str| -> Result<(), String> {
            ensure!(ok(x.equals(&y), law)?, "triple {}: {} fails", k, law);
            Ok(())
        };
        eq(a.add(&b).add(&c), a.add(&b.add(&c)), "additive associativity")?;
        eq(a.mul(&b).mul(&c), a.mul(&b.mul(&c)), "multiplicative associativity")?;
        eq(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)), "distributivity")?;
        eq(a.add(&b), b.add(&a), "additive commutativity")?;
        eq(a.mul(&b), b.mul(&a), "multiplicative commutativity")?;
        ensure!(ok(a.sub(&a).is_zero(), "inverse")?, "triple {}: a - a is not zero", k);
        if !ok(a.is_zero(), "zero test")? {
            eq(a.mul(&ok(a.inv(), "inverse")?), Element::one(), "multiplicative inverse")?;
        }
    }

    let sqrt2 = vec![pool[0].clone()];
    for k in 0..30 {
        let deg = [1usize, 3, 5][k % 3];
        let tags = if deg == 5 { 1 } else { 3 };
        let mut coeffs: Vec<Element> = (0..deg).map(|_| random_real_in(&mut rng, &sqrt2, tags)).collect();
        let mut lead = random_real_in(&mut rng, &sqrt2, tags);
        while ok(lead.is_zero(), "lead")? {
            lead = random_real_in(&mut rng, &sqrt2, tags);
        }
        coeffs.push(lead);
        let c = poly(&coeffs);
        let roots = ok(real_roots(&c), "real roots")?;
        ensure!(!roots.is_empty(), "odd-degree polynomial {} has no real root", k);
        for r in &roots {
            ensure!(ok(c.eval(r).is_zero(), "root check")?, "polynomial {}: C(root) is not zero", k);
        }
    }

    let mut made = 0;
    while made < 30 {
        let mut a = random_real(&mut rng, &pool);
        match ok(a.sign(), "sign")? {
            Sign::Zero => continue,
            Sign::Negative => a = a.neg(),
            Sign::Positive => {}
        }
        let r = root_of(2, &a, Selector::RealIndex(2));
        ensure!(ok(r.mul(&r).equals(&a), "square")?, "sqrt {} does not square back", made);
        ensure!(ok(r.sign(), "sign")? == Sign::Positive, "sqrt {} is not positive", made);
        made += 1;
    }
    Ok("200 triples, 30 odd-degree roots, 30 square roots".into())
}

fn ordering() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pool: Vec<Element> = algebraic_pool().into_iter().map(|(e, _)| e).collect();
    let mut zeros = 0;
    for k in 0..100 {
        let a = random_real(&mut rng, &pool);
        let b = if k % 10 == 0 {
            a.mul(&q(3, 1)).div(&q(3, 1)).unwrap()
        } else {
            random_real(&mut rng, &pool)
        };
        let (sa, sb) = (ok(a.sign(), "sign")?, ok(b.sign(), "sign")?);
        let sab = ok(a.mul(&b).sign(), "sign")?;
        ensure!(sab.as_i32() == sa.as_i32() * sb.as_i32(), "pair {}: sign is not multiplicative", k);
        let d = a.sub(&b);
        let sd = ok(d.sign(), "sign")?;
        ensure!((sd == Sign::Zero) == ok(d.is_zero(), "zero")?, "pair {}: trichotomy disagrees with zero test", k);
        ensure!(ok(b.sub(&a).sign(), "sign")?.as_i32() == -sd.as_i32(), "pair {}: order is not antisymmetric", k);
        zeros += usize::from(sd == Sign::Zero);
    }

    let goal = Dyadic::pow2(-64);
    let mut worst = 0;
    for k in 0..50 {
        let a = random_real(&mut rng, &pool);
        let mut boxes = Vec::new();
        let mut hit = None;
        for step in 1..=20u32 {
            let b = ok(a.enclose(8 * step), "enclose")?;
            let small = b.width() < goal;
            boxes.push(b);
            if small {
                hit = Some(step);
                break;
            }
        }
        let Some(step) = hit else {
            return Err(format!("element {}: box still wider than 2^-64 after 20 steps", k));
        };
        let finest = boxes.last().unwrap();
        ensure!(boxes.iter().all(|b| b.intersects(finest)), "element {}: nested boxes disagree", k);
        worst = worst.max(step);
    }
    Ok(format!("100 pairs ({} equal), 50 elements below 2^-64 by step {}", zeros, worst))
}

/// A differential field with exponential and trigonometric generators plus a
/// few algebraic elements over them.
type Setup = (DiffField, Vec<Element>, Vec<(Element, ElemPoly)>);

fn derivation_setup() -> Result<Setup, String> {
    let mut f = DiffField::new();
    let e = ok(f.adjoin_differential_generators(1, |_, g| Ok(vec![g[0].clone()])), "exp")?;
    let sc = ok(f.adjoin_differential_generators(2, |_, g| Ok(vec![g[1].clone(), g[0].neg()])), "trig")?;
    let t = ok(f.fresh_tags(1), "tag")?;
    let free = Element::from_tag(t[0]);
    let mut roots = Vec::new();
    for (k, a) in [e[0].clone(), sc[0].add(&q(3, 1)), free.add(&e[0])].iter().enumerate() {
        let r = root_of(2 + k % 2, a, Selector::RealIndex(if k % 2 == 0 { 2 } else { 1 }));
        let mut c = vec![a.neg()];
        c.extend(std::iter::repeat_n(Element::zero(), 1 + k % 2));
        c.push(Element::one());
        roots.push((r, poly(&c)));
    }
    let mut leaves = vec![e[0].clone(), sc[0].clone(), sc[1].clone(), free];
    leaves.extend(roots.iter().map(|(r, _)| r.clone()));
    Ok((f, leaves, roots))
}

fn derivation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut f, leaves, roots) = derivation_setup()?;
    let pick = |rng: &mut ChaCha8Rng| -> Element {
        let a = leaves[rng.gen_range(0..leaves.len())].clone();
        let b = Element::from_rational(small_rational(rng));
        if rng.gen_bool(0.5) {
            a.add(&b)
        } else {
            a.mul(&b)
        }
    };
    for k in 0..100 {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let (da, db) = (ok(f.apply_delta(&a), "delta")?, ok(f.apply_delta(&b), "delta")?);
        let sum = ok(f.apply_delta(&a.add(&b)), "delta")?;
        ensure!(ok(sum.equals(&da.add(&db)), "additivity")?, "pair {}: additivity fails", k);
        let prod = ok(f.apply_delta(&a.mul(&b)), "delta")?;
        ensure!(ok(prod.equals(&a.mul(&db).add(&b.mul(&da))), "Leibniz")?, "pair {}: Leibniz rule fails", k);
        let c = Element::from_rational(small_rational(&mut rng));
        ensure!(ok(f.apply_delta(&c), "delta")?.is_trivially_zero(), "pair {}: derivative of a rational", k);
    }
    for (k, (r, c)) in roots.iter().enumerate() {
        ensure!(ok(f.relation_holds(c, r), "relation")?, "root {}: differentiated relation does not vanish", k);
    }
    Ok(format!("100 pairs, {} adjoined relations", roots.len()))
}

/// Random differential polynomial of order exactly `n` (or any order below
/// `n` when `top` is false), total degree at most 3.
fn random_dp(rng: &mut ChaCha8Rng, n: usize, top: bool, coeffs: &[Element]) -> DiffPoly {
    let coef = |rng: &mut ChaCha8Rng| -> Element {
        if !coeffs.is_empty() && rng.gen_bool(0.5) {
            coeffs[rng.gen_range(0..coeffs.len())].clone()
        } else {
            let mut c = Element::from_rational(small_rational(rng));
            while c.is_trivially_zero() {
                c = Element::from_rational(small_rational(rng));
            }
            c
        }
    };
    let mono = |rng: &mut ChaCha8Rng, hi: usize, deg: u32| -> DiffPoly {
        let mut m = DiffPoly::constant(Element::one()).unwrap();
        for _ in 0..deg {
            m = m.mul(&DiffPoly::y(rng.gen_range(0..=hi) as u32)).unwrap();
        }
        m
    };
    loop {
        let mut p = DiffPoly::zero();
        if top {
            let d = rng.gen_range(1..=3u32);
            let lead = DiffPoly::y(n as u32).pow(d).unwrap();
            let rd = rng.gen_range(0..=3 - d);
            let rest = mono(rng, n.saturating_sub(1), rd);
            p = p.add(&lead.mul(&rest).unwrap().scale(&coef(rng)).unwrap()).unwrap();
        }
        let hi = if top { n } else { n.saturating_sub(1) };
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(0..=3);
            let t = mono(rng, hi, d).scale(&coef(rng)).unwrap();
            p = p.add(&t).unwrap();
        }
        let ord_ok = if top { p.ord() == n as i64 } else { p.ord() < n as i64 };
        if !p.is_zero() && ord_ok && p.deg().unwrap_or(0) <= 3 {
            return p;
        }
    }
}

fn blum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut f = DiffField::new();
    let mut earlier: Vec<Element> = Vec::new();
    for k in 0..50 {
        let n = 1 + k % 3;
        let p = random_dp(&mut rng, n, true, &earlier);
        let q = random_dp(&mut rng, n, false, &earlier);
        let w = ok(f.blum_witness(&p, &q), &format!("witness {} for p = {}, q = {}", k, p, q))?;
        ensure!(ok(f.diff_eval(&p, &w), "p(f)")?.is_zero().unwrap(), "witness {}: p(f) is not zero", k);
        ensure!(!ok(f.diff_eval(&q, &w), "q(f)")?.is_zero().unwrap(), "witness {}: q(f) is zero", k);
        let rec = f.table.log().last().unwrap().clone();
        ensure!(rec.kind == WitnessKind::Blum && rec.tags.len() == n, "witness {}: unexpected record", k);
        let ds = ok(f.table.derivatives(&w, n - 1), "derivatives")?;
        for (i, t) in rec.tags.iter().enumerate() {
            ensure!(ok(ds[i].equals(&Element::from_tag(*t)), "invariant")?, "witness {}: δ^{} f is not the tag", k, i);
        }
        earlier.push(w);
    }
    Ok("50 witnesses, orders 1..3".into())
}

fn distinct() -> Outcome {
    let mut f = DiffField::new();
    let s = ok(f.distinct_solutions(5), "distinct_solutions")?;
    let p0 = dp("(1 + y)*y' - y");
    ensure!(s.len() == 5, "got {} solutions", s.len());
    for (i, a) in s.iter().enumerate() {
        ensure!(!a.is_zero().unwrap(), "solution {} is zero", i);
        ensure!(ok(f.diff_eval(&p0, a), "p0")?.is_zero().unwrap(), "solution {} does not solve p0", i);
        for (j, b) in s.iter().enumerate().skip(i + 1) {
            ensure!(!a.equals(b).unwrap(), "solutions {} and {} coincide", i, j);
        }
    }
    Ok("5 pairwise distinct nonzero solutions".into())
}

struct Singer {
    p: &'static str,
    point: Vec<Element>,
    qs: Vec<DiffPoly>,
}

fn singer_configs() -> Vec<Singer> {
    let half = q(1, 2);
    let window = |a: &Element| {
        vec![
            DiffPoly::y(0).sub(&DiffPoly::constant(a.sub(&half)).unwrap()).unwrap(),
            DiffPoly::constant(a.add(&half)).unwrap().sub(&DiffPoly::y(0)).unwrap(),
        ]
    };
    let mut out = vec![
        Singer { p: "y' - y", point: vec![q(1, 1), q(1, 1)], qs: vec![dp("y")] },
        Singer { p: "y'", point: vec![q(0, 1), q(0, 1)], qs: window(&q(0, 1)) },
    ];
    let points = [q(1, 3), q(-2, 1), q(5, 2), q(-1, 4), q(7, 5), q(3, 1), q(-3, 7), q(9, 4)];
    for (k, a) in points.iter().enumerate() {
        let a2 = a.mul(a);
        match k % 4 {
            0 => {
                out.push(Singer { p: "y' - y^2", point: vec![a.clone(), a2.clone()], qs: window(a) });
                out.push(Singer { p: "y' + y - 1", point: vec![a.clone(), q(1, 1).sub(a)], qs: window(a) });
                out.push(Singer { p: "y'' + y", point: vec![a.clone(), q(1, 2), a.neg()], qs: window(a) });
            }
            1 => {
                let v = q(1, 1).div(&q(1, 1).add(&a2)).unwrap();
                out.push(Singer { p: "y'*(1 + y^2) - 1", point: vec![a.clone(), v], qs: window(a) });
                out.push(Singer { p: "y' - y", point: vec![a.clone(), a.clone()], qs: window(a) });
                out.push(Singer { p: "y'' - y'", point: vec![a.clone(), q(2, 1), q(2, 1)], qs: window(a) });
            }
            2 => {
                out.push(Singer { p: "y'", point: vec![a.clone(), q(0, 1)], qs: window(a) });
                let mut qs = window(a);
                qs.push(dp("y' + 1/2"));
                out.push(Singer { p: "y' - y^2", point: vec![a.clone(), a2.clone()], qs });
                out.push(Singer { p: "y'' + y", point: vec![a.clone(), q(-1, 3), a.neg()], qs: window(a) });
            }
            _ => {
                out.push(Singer { p: "y' + y - 1", point: vec![a.clone(), q(1, 1).sub(a)], qs: window(a) });
                out.push(Singer { p: "y' - y", point: vec![a.clone(), a.clone()], qs: window(a) });
                out.push(Singer { p: "y'' - y'", point: vec![a.clone(), q(-1, 1), q(-1, 1)], qs: window(a) });
            }
        }
    }
    out.truncate(25);
    out
}

fn ordered() -> Outcome {
    let configs = singer_configs();
    ensure!(configs.len() == 25, "only {} configurations", configs.len());
    let mut f = DiffField::new();
    let mut worst = 0;
    for (k, c) in configs.iter().enumerate() {
        let p = dp(c.p);
        let w = ok(f.ordered_witness(&p, &c.qs, &c.point), &format!("configuration {} ({})", k, c.p))?;
        ensure!(ok(f.diff_eval(&p, &w), "p(f)")?.is_zero().unwrap(), "configuration {}: p(f) is not zero", k);
        for (j, qj) in c.qs.iter().enumerate() {
            let s = ok(ok(f.diff_eval(qj, &w), "q(f)")?.sign(), "sign")?;
            ensure!(s == Sign::Positive, "configuration {}: q_{} (f) is not positive", k, j);
        }
        let rec = f.table.log().last().unwrap();
        if let Some(eps) = rec.selections.iter().find_map(|s| s.strip_prefix("eps 2^-")) {
            worst = worst.max(eps.parse::<u32>().unwrap() - 8);
        }
    }
    Ok(format!("25 configurations, at most {} halvings", worst))
}

fn ivt() -> Outcome {
    let mut f = DiffField::new();
    let e = ok(f.adjoin_differential_generators(1, |_, g| Ok(vec![g[0].clone()])), "exp")?[0].clone();
    let mut names = std::collections::HashMap::new();
    names.insert("e".to_string(), e.clone());
    let configs: Vec<(&str, Element, Element)> = vec![
        ("y' + y - 1/2", q(0, 1), q(1, 1)),
        ("y' + y - 1/3", q(0, 1), q(1, 1)),
        ("y' + 2*y - 1", q(0, 1), q(1, 1)),
        ("y'' + y - 1/2", q(0, 1), q(1, 1)),
        ("y'^2 + y - 1/2", q(0, 1), q(1, 1)),
        ("y - 1/2", q(0, 1), q(1, 1)),
        ("y^3 - 2", q(1, 1), q(2, 1)),
        ("y' + y - 2*e - 1/2", e.clone(), e.add(&q(1, 1))),
        ("y' + y^2 - 2", q(1, 1), q(2, 1)),
        ("y'^3 + y - 1/2", q(0, 1), q(1, 1)),
    ];
    let mut solved = 0;
    let mut degenerate = 0;
    for (k, (src, a, b)) in configs.iter().enumerate() {
        let p = dp_with(src, &names);
        let (pa, pb) = (ok(f.diff_eval(&p, a), "p(a)")?, ok(f.diff_eval(&p, b), "p(b)")?);
        ensure!(ok(pa.mul(&pb).sign(), "sign")? == Sign::Negative, "configuration {}: no sign change", k);
        match f.root_between(&p, a, b) {
            Ok(c) => {
                ensure!(ok(c.sub(a).sign(), "sign")? == Sign::Positive, "configuration {}: c is not above a", k);
                ensure!(ok(b.sub(&c).sign(), "sign")? == Sign::Positive, "configuration {}: c is not below b", k);
                ensure!(ok(f.diff_eval(&p, &c), "p(c)")?.is_zero().unwrap(), "configuration {}: p(c) is not zero", k);
                solved += 1;
            }
            Err(Error::NondegeneracyFailure(_)) => degenerate += 1,
            Err(e) => return Err(format!("configuration {} ({}): {}", k, src, e)),
        }
    }
    Ok(format!("{} solved, {} nondegeneracy errors out of 10", solved, degenerate))
}

const EXTENSION_SCRIPT: &str = "\
let e = extend 1 with $1
let s, c = extend 2 with $2, -$1
iszero d(e) - e
iszero d(d(s)) + s
iszero d(d(c)) + c
";

fn extension() -> Outcome {
    let mut eng = Engine::new();
    let out = eng.run(EXTENSION_SCRIPT);
    ensure!(out.errors == 0, "script failed:\n{}", out.text());
    ensure!(out.lines[3..] == ["true", "true", "true"], "identities fail:\n{}", out.text());
    let (e, s) = (eng.element("e").unwrap().clone(), eng.element("s").unwrap().clone());
    let fld = eng.field_mut();
    ensure!(ok(fld.apply_delta(&e), "delta")?.equals(&e).unwrap(), "δe ≠ e");
    let d2 = ok(fld.table.derivatives(&s, 2), "delta")?;
    ensure!(d2[2].equals(&s.neg()).unwrap(), "δ²s ≠ -s");
    let saved = ok(eng.save_string(), "save")?;
    let back = ok(Engine::load_str(&saved), "load")?;
    ensure!(ok(back.save_string(), "save")? == saved, "replay is not byte-identical");
    Ok(format!("δe = e, δ²s = -s, δ²c = -c; {} byte session replays identically", saved.len()))
}

fn random_region_poly(rng: &mut ChaCha8Rng, m: usize, mode: Mode) -> RegionPoly {
    loop {
        let mut src = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let c: i64 = rng.gen_range(-5..=5);
            if c == 0 {
                continue;
            }
            let mut mono = vec![c.to_string()];
            let deg = rng.gen_range(0..=4);
            for _ in 0..deg {
                mono.push(format!("L{}", rng.gen_range(1..=m)));
            }
            src.push(format!("({})", mono.join("*")));
        }
        if src.is_empty() {
            continue;
        }
        let p = RegionPoly::parse(&src.join(" + "), Some(m), mode).unwrap();
        if !p.poly().is_zero() && p.poly().total_degree().unwrap_or(0) <= 4 {
            return p;
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<nashdcf::exactnum::Rational> {
    (0..m).map(|_| rat(rng.gen_range(-100..=100), rng.gen_range(1..=100))).collect()
}

fn regions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for mode in [Mode::Real, Mode::Complex] {
        for k in 0..20 {
            let m = 1 + k % 3;
            let p = random_region_poly(&mut rng, m, mode);
            let qq = random_region_poly(&mut rng, m, mode);
            let cfg = SampleConfig {
                samples: 1000,
                seed: 100 + k as u64,
                ..SampleConfig::default()
            };
            let rep = ok(check_r_axioms(&p, &qq, &cfg), "axioms")?;
            for name in ["R0", "R1"] {
                let l = rep.line(name).unwrap();
                ensure!(l.ok, "{} mode, P = {}, Q = {}: {}", mode, p, qq, l);
            }
            ensure!(rep.line("R1").unwrap().total == 1000, "R1 did not cover 1000 points");
        }
    }

    for mode in [Mode::Real, Mode::Complex] {
        for m in 1..=3 {
            let five = RegionPoly::parse("5", Some(m), mode).unwrap();
            let zero = RegionPoly::parse("0", Some(m), mode).unwrap();
            for _ in 0..30 {
                let x = RegionPoint::rational(random_point(&mut rng, m));
                ensure!(ok(wp_member(&five, &x), "R5")?, "constant polynomial misses {}", x);
                ensure!(!ok(wp_member(&zero, &x), "zero")?, "zero polynomial contains {}", x);
            }
        }
    }

    let mut lifted = 0;
    let layouts: [&[usize]; 3] = [&[1, 3], &[2, 3], &[1, 2]];
    for k in 0..40 {
        if lifted == 100 {
            break;
        }
        let p = random_region_poly(&mut rng, 2, Mode::Real);
        let pos = layouts[k % 3];
        let lq = p.lift(pos, 3).unwrap();
        let mut found = 0;
        for _ in 0..2000 {
            if found == 10 || lifted + found == 100 {
                break;
            }
            let x = random_point(&mut rng, 3);
            if !ok(wp_member(&lq, &RegionPoint::rational(x.clone())), "lift")? {
                continue;
            }
            let proj = RegionPoint::rational(pos.iter().map(|i| x[i - 1].clone()).collect());
            ensure!(ok(wp_member(&p, &proj), "lift")?, "P = {}: lifted member projects outside W_P", p);
            found += 1;
        }
        lifted += found;
    }
    ensure!(lifted == 100, "only {} lifted members sampled", lifted);

    for k in 0..100 {
        let m = 1 + k % 3;
        let pr = random_region_poly(&mut rng, m, Mode::Real);
        let pc = RegionPoly::new(pr.poly().clone(), m, Mode::Complex).unwrap();
        let x = RegionPoint::rational(random_point(&mut rng, m));
        ensure!(
            ok(wp_member(&pr, &x), "real")? == ok(wp_member(&pc, &x), "complex")?,
            "P = {} at {}: real and complex membership differ",
            pr,
            x
        );
    }
    Ok("R0/R1 on 40 x 1000 points, R5 exact, 100 lifted and 100 restricted samples".into())
}

const SESSION_SCRIPT: &str = "\
let a = var
let r = adjoin Z^2 - a real 2
let k = adjoin Z^3 - 2*Z - 1 smallest
dp p = y' - y
let f = witness p (y - 1)
dp h = y'' + y
let w = witness h y
let o = owitness p y at 1 1
let u1, u2 = solutions 2
let e = extend 1 with $1
dp m = y' + y - 1/2
let c = rootbetween m 0 1
let t = d(r*e) + conj(k)
";

fn determinism() -> Outcome {
    let mut eng = Engine::new();
    let out = eng.run(SESSION_SCRIPT);
    ensure!(out.errors == 0, "session failed:\n{}", out.text());
    let saved = ok(eng.save_string(), "save")?;
    let back = ok(Engine::load_str(&saved), "load")?;
    let mut count = 0;
    for (name, a) in eng.elements() {
        let b = back.element(name).ok_or(format!("{} missing after replay", name))?;
        ensure!(ok(a.sub(b).is_zero(), "compare")?, "{} differs after replay", name);
        count += 1;
    }
    ensure!(ok(back.save_string(), "save")? == saved, "re-save is not byte-identical");
    let mut again = Engine::new();
    again.run(SESSION_SCRIPT);
    ensure!(ok(again.save_string(), "save")? == saved, "rerunning the script changes the session");
    Ok(format!("{} elements equal after replay, {} byte file stable", count, saved.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("field and closure", field_and_closure),
        ("ordering", ordering),
        ("derivation", derivation),
        ("blum witnesses", blum),
        ("distinct solutions", distinct),
        ("ordered witnesses", ordered),
        ("differential intermediate values", ivt),
        ("universal extension", extension),
        ("regions", regions),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {}", msg))
        });
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {:2} {:<34} PASS  {:7.2}s  {}", k + 1, name, secs, detail),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} {:<34} FAIL  {:7.2}s  {}", k + 1, name, secs, why);
            }
        }
    }
    if failed > 0 {
        println!("{} criteria failed", failed);
        std::process::exit(1);
    }
}
