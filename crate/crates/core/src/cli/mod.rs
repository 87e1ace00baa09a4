//! Command engine behind the `nashdcf` binary and the C interface.

mod command;
mod session;

pub use command::{parse_command, Arg, Command, Producer, Sel};
pub use session::FORMAT_VERSION;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::diffclosure::{DiffField, DiffPoly};
use crate::error::{Error, Result};
use crate::exactnum::parse::{expr_to_mpoly, Expr};
use crate::exactnum::DyadicInterval;
use crate::nashfield::{adjoin_root, conjugate, split_re_im, ElemPoly, Element, Selector};
use crate::regions::{check_r_axioms, wp_member, RegionPoint, RegionPoly, SampleConfig};

/// A replayable command as it appears in a session file.
#[derive(Clone, Debug)]
struct Entry {
    text: String,
    ok: bool,
}

/// One engine instance: the differential field plus named elements and
/// differential polynomials.
#[derive(Default)]
pub struct Engine {
    field: DiffField,
    elements: IndexMap<String, Element>,
    dps: IndexMap<String, DiffPoly>,
    history: Vec<Entry>,
}

/// Output of a batch run.
#[derive(Clone, Debug, Default)]
pub struct RunOutput {
    pub lines: Vec<String>,
    pub errors: usize,
}

impl RunOutput {
    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (k, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..k],
            _ => {}
        }
    }
    line
}

fn decimal(q: &BigRational, digits: usize) -> String {
    let neg = q.is_negative();
    let a = q.abs();
    let int = a.numer() / a.denom();
    let mut frac = a - BigRational::from_integer(int.clone());
    let mut s = format!("{}{}.", if neg { "-" } else { "" }, int);
    let ten = BigRational::from_integer(BigInt::from(10));
    for _ in 0..digits {
        frac *= &ten;
        let d = frac.numer() / frac.denom();
        s.push_str(&d.to_string());
        frac -= BigRational::from_integer(d);
    }
    s
}

fn interval(iv: &DyadicInterval) -> String {
    format!("[{}, {}]", iv.lo, iv.hi)
}

impl Engine {
    pub fn new() -> Engine {
        Engine::default()
    }

    pub fn field(&self) -> &DiffField {
        &self.field
    }

    pub fn field_mut(&mut self) -> &mut DiffField {
        &mut self.field
    }

    pub fn element(&self, name: &str) -> Option<&Element> {
        self.elements.get(name)
    }

    pub fn elements(&self) -> impl Iterator<Item = (&str, &Element)> {
        self.elements.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn diff_poly(&self, name: &str) -> Option<&DiffPoly> {
        self.dps.get(name)
    }

    /// Run every line of `src`; errors are reported inline and counted.
    pub fn run(&mut self, src: &str) -> RunOutput {
        let mut out = RunOutput::default();
        for (k, raw) in src.lines().enumerate() {
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            match self.execute_line(line, k + 1) {
                Ok(lines) => out.lines.extend(lines),
                Err(e @ Error::Parse { .. }) => {
                    out.errors += 1;
                    out.lines.push(format!("error: {}", e));
                }
                Err(e) => {
                    out.errors += 1;
                    out.lines.push(format!("error: line {}: {}", k + 1, e));
                }
            }
        }
        out
    }

    /// Parse and execute one command line.
    pub fn execute_line(&mut self, line: &str, lineno: usize) -> Result<Vec<String>> {
        let cmd = parse_command(line, lineno)?;
        self.execute(&cmd)
    }

    /// Execute a parsed command. Replayable commands enter the history when
    /// they succeed, or when they fail after changing state.
    pub fn execute(&mut self, cmd: &Command) -> Result<Vec<String>> {
        let before = self.fingerprint();
        let r = self.dispatch(cmd);
        if cmd.is_replayed() && (r.is_ok() || self.fingerprint() != before) {
            self.history.push(Entry {
                text: cmd.to_string(),
                ok: r.is_ok(),
            });
        }
        r
    }

    fn fingerprint(&self) -> (u32, usize, usize) {
        (
            self.field.anchor.high_water(),
            self.field.table.pins().count(),
            self.field.table.log().len(),
        )
    }

    fn dispatch(&mut self, cmd: &Command) -> Result<Vec<String>> {
        Ok(match cmd {
            Command::Var => {
                let t = self.field.fresh_tags(1)?[0];
                vec![format!("L{}", t)]
            }
            Command::Let(names, p) => {
                let vals = self.produce(p)?;
                if vals.len() != names.len() {
                    return Err(Error::Precondition(format!(
                        "{} names for {} values",
                        names.len(),
                        vals.len()
                    )));
                }
                names
                    .iter()
                    .zip(vals)
                    .map(|(n, v)| {
                        let line = format!("{} = {}", n, v);
                        self.elements.insert(n.clone(), v);
                        line
                    })
                    .collect()
            }
            Command::Run(p) => self.produce(p)?.iter().map(|v| v.to_string()).collect(),
            Command::Dp(name, e) => {
                let p = self.diff_poly_of(e)?;
                let line = format!("{} = {}", name, p);
                self.dps.insert(name.clone(), p);
                vec![line]
            }
            Command::Sign(e) => vec![self.element_of(e, &[])?.sign()?.to_string()],
            Command::IsZero(e) => vec![self.element_of(e, &[])?.is_zero()?.to_string()],
            Command::Check(p, e) => {
                let p = self.resolve_dp(p)?;
                let f = self.element_of(e, &[])?;
                let v = self.field.diff_eval(&p, &f)?;
                vec![if v.is_zero()? { "zero" } else { "nonzero" }.to_string()]
            }
            Command::Eval(e, prec) => {
                let a = self.element_of(e, &[])?;
                let b = a.enclose_width(*prec)?;
                let digits = (*prec as usize * 3) / 10;
                let mid = decimal(&b.re.midpoint().to_rational(), digits);
                if a.is_real() {
                    vec![format!("{} ~ {}", interval(&b.re), mid)]
                } else {
                    let im = decimal(&b.im.midpoint().to_rational(), digits);
                    vec![format!("{} + {}i ~ {} + {}i", interval(&b.re), interval(&b.im), mid, im)]
                }
            }
            Command::WpMember(mode, p, xs) => {
                let poly = expr_to_mpoly(p).map_err(Error::Precondition)?;
                let rp = RegionPoly::new(poly, xs.len(), *mode)?;
                let coords = xs
                    .iter()
                    .map(|x| eval(x, &[], &self.elements, None))
                    .collect::<Result<Vec<_>>>()?;
                vec![wp_member(&rp, &RegionPoint::elements(coords))?.to_string()]
            }
            Command::RAxioms { p, q, mode, samples, seed } => {
                let pp = expr_to_mpoly(p).map_err(Error::Precondition)?;
                let qq = expr_to_mpoly(q).map_err(Error::Precondition)?;
                let m = pp
                    .vars()
                    .iter()
                    .chain(qq.vars())
                    .filter_map(|v| v.tag_index())
                    .max()
                    .unwrap_or(1)
                    .max(1) as usize;
                let cfg = SampleConfig {
                    samples: *samples,
                    seed: *seed,
                    ..SampleConfig::default()
                };
                let rep = check_r_axioms(&RegionPoly::new(pp, m, *mode)?, &RegionPoly::new(qq, m, *mode)?, &cfg)?;
                rep.to_string().lines().map(String::from).collect()
            }
            Command::Save(path) => {
                self.save(path)?;
                vec![format!("saved {}", path)]
            }
            Command::Load(path) => {
                *self = Engine::load(path)?;
                vec![format!("loaded {} ({} commands)", path, self.history.len())]
            }
        })
    }

    fn produce(&mut self, p: &Producer) -> Result<Vec<Element>> {
        Ok(match p {
            Producer::Expr(e) => vec![self.element_of(e, &[])?],
            Producer::Adjoin(e, sel) => {
                let c = self.zpoly_of(e)?;
                let sel = match sel {
                    Sel::Smallest => Selector::Smallest,
                    Sel::Real(k) => Selector::RealIndex(*k),
                };
                vec![adjoin_root(&c, &sel)?]
            }
            Producer::Witness(p, q) => {
                let (p, q) = (self.resolve_dp(p)?, self.resolve_dp(q)?);
                vec![self.field.blum_witness(&p, &q)?]
            }
            Producer::OWitness { p, qs, at } => {
                let p = self.resolve_dp(p)?;
                let qs = qs.iter().map(|q| self.resolve_dp(q)).collect::<Result<Vec<_>>>()?;
                let point = at.iter().map(|a| self.element_of(a, &[])).collect::<Result<Vec<_>>>()?;
                vec![self.field.ordered_witness(&p, &qs, &point)?]
            }
            Producer::Solutions(n) => self.field.distinct_solutions(*n)?,
            Producer::RootBetween(p, a, b) => {
                let p = self.resolve_dp(p)?;
                let (a, b) = (self.element_of(a, &[])?, self.element_of(b, &[])?);
                vec![self.field.root_between(&p, &a, &b)?]
            }
            Producer::Extend(n, exprs) => {
                if exprs.len() != *n {
                    return Err(Error::Precondition(format!("extend {} needs {} derivatives", n, n)));
                }
                let names = &self.elements;
                self.field.adjoin_differential_generators(*n, |_, gens| {
                    exprs.iter().map(|e| eval(e, gens, names, None)).collect()
                })?
            }
            Producer::Delta(e) => {
                let a = self.element_of(e, &[])?;
                vec![self.field.apply_delta(&a)?]
            }
        })
    }

    fn resolve_dp(&mut self, a: &Arg) -> Result<DiffPoly> {
        match a {
            Arg::Name(n) => match self.dps.get(n) {
                Some(p) => Ok(p.clone()),
                None => self.diff_poly_of(&Expr::Ident(n.clone())),
            },
            Arg::Inline(e) => self.diff_poly_of(e),
        }
    }

    fn diff_poly_of(&mut self, e: &Expr) -> Result<DiffPoly> {
        let mut leaf = |x: &Expr| self.element_of(x, &[]);
        DiffPoly::from_expr(e, &mut leaf)
    }

    /// A polynomial in `Z` with element coefficients.
    fn zpoly_of(&mut self, e: &Expr) -> Result<ElemPoly> {
        Ok(match e {
            Expr::Z => ElemPoly::linear(Element::zero(), Element::one())?,
            Expr::Neg(a) => self.zpoly_of(a)?.neg(),
            Expr::Add(a, b) => self.zpoly_of(a)?.add(&self.zpoly_of(b)?)?,
            Expr::Sub(a, b) => self.zpoly_of(a)?.add(&self.zpoly_of(b)?.neg())?,
            Expr::Mul(a, b) => self.zpoly_of(a)?.mul(&self.zpoly_of(b)?)?,
            Expr::Div(a, b) => {
                let d = self.element_of(b, &[])?;
                self.zpoly_of(a)?.scale(&d.inv()?)?
            }
            Expr::Pow(a, n) if *n >= 0 => {
                let base = self.zpoly_of(a)?;
                let mut acc = ElemPoly::constant(Element::one())?;
                for _ in 0..*n {
                    acc = acc.mul(&base)?;
                }
                acc
            }
            e => ElemPoly::constant(self.element_of(e, &[])?)?,
        })
    }

    /// Evaluate an element expression; `var` allocates a fresh tag and
    /// `d(a)` applies the derivation.
    fn element_of(&mut self, e: &Expr, slots: &[Element]) -> Result<Element> {
        let v = eval(e, slots, &self.elements, Some(&mut self.field))?;
        self.field.check_allocated(&v)?;
        Ok(v)
    }
}

fn eval(
    e: &Expr,
    slots: &[Element],
    names: &IndexMap<String, Element>,
    mut field: Option<&mut DiffField>,
) -> Result<Element> {
    let mut rec = |x: &Expr| eval(x, slots, names, field.as_deref_mut());
    Ok(match e {
        Expr::Num(q) => Element::from_rational(q.clone()),
        Expr::Tag(k) => Element::from_tag(*k),
        Expr::Ident(n) if n == "i" => Element::i(),
        Expr::Ident(n) if n == "var" => match field {
            Some(f) => Element::from_tag(f.fresh_tags(1)?[0]),
            None => return Err(Error::Precondition("`var` is not allowed here".into())),
        },
        Expr::Ident(n) => names.get(n).cloned().ok_or_else(|| Error::UnknownName(n.clone()))?,
        Expr::Slot(k) => slots
            .get(*k as usize - 1)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("placeholder ${} is out of range", k)))?,
        Expr::Z | Expr::Gamma => return Err(Error::Precondition("`Z` and `g` are not elements".into())),
        Expr::Y(_) => return Err(Error::Precondition("`y` is not an element".into())),
        Expr::Neg(a) => rec(a)?.neg(),
        Expr::Add(a, b) => rec(a)?.add(&rec(b)?),
        Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?),
        Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?),
        Expr::Div(a, b) => {
            let (x, d) = (rec(a)?, rec(b)?);
            x.div(&d)?
        }
        Expr::Pow(a, n) => rec(a)?.pow(*n)?,
        Expr::Call(f, args) => {
            if args.len() != 1 {
                return Err(Error::Precondition(format!("`{}` takes one argument", f)));
            }
            let a = rec(&args[0])?;
            match f.as_str() {
                "d" | "delta" => match field {
                    Some(df) => df.apply_delta(&a)?,
                    None => return Err(Error::Precondition("`d` is not allowed here".into())),
                },
                "conj" => conjugate(&a)?,
                "re" => split_re_im(&a)?.0,
                "im" => split_re_im(&a)?.1,
                _ => return Err(Error::UnknownName(format!("{}()", f))),
            }
        }
    })
}
