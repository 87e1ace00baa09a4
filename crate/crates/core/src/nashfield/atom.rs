//! Adjoined algebraic roots.
//!
//! An atom is one root of a square-free polynomial `A(Λ, Y)` over ℚ, pinned
//! by an isolating box at the anchor. Elements are rational expressions in
//! tags and atoms, so every algebraic relation between them reduces to
//! polynomial identities modulo the atoms' defining polynomials.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::anchor;
use crate::error::{Error, Result};
use crate::exactnum::roots::{follow, Isolation, Isolator, MAX_PREC};
use crate::exactnum::{Dyadic, DyadicBox, MPoly, Var};

static NEXT_ATOM: AtomicU32 = AtomicU32::new(1);

struct State {
    iso: Isolator,
    prec: u32,
    current: DyadicBox,
}

pub struct Atom {
    id: u32,
    poly: MPoly,
    coeffs: Vec<MPoly>,
    real: bool,
    first: DyadicBox,
    state: Mutex<State>,
}

impl std::fmt::Debug for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Y{}: {} @ {:?}", self.id, self.poly, self.first)
    }
}

/// Enclosures of the coefficients (in the atom variable, or `Z`) at the anchor.
pub fn anchor_coeffs(coeffs: &[MPoly], prec: u32) -> Result<Vec<DyadicBox>> {
    coeffs.iter().map(|c| anchor::eval_at_anchor(c, prec)).collect()
}

impl Atom {
    /// Build an atom for root `index` of `poly` (a polynomial in tags and
    /// `Z`), given a certified isolation of its roots at the anchor.
    pub fn from_isolation(poly_z: &MPoly, iso: Isolator, level: &Isolation, index: usize) -> Arc<Atom> {
        let id = NEXT_ATOM.fetch_add(1, Ordering::Relaxed);
        Atom::with_id(id, poly_z, iso, level, index)
    }

    fn with_id(id: u32, poly_z: &MPoly, iso: Isolator, level: &Isolation, index: usize) -> Arc<Atom> {
        let var = Var::aux(id);
        let poly = poly_z.rename(|v| if v == Var::Z { var } else { v });
        let coeffs = poly.coeffs_in(var);
        let b = level.boxes[index].clone();
        Arc::new(Atom {
            id,
            poly,
            coeffs,
            real: level.real[index],
            first: b.clone(),
            state: Mutex::new(State {
                iso,
                prec: level.prec,
                current: b,
            }),
        })
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn var(&self) -> Var {
        Var::aux(self.id)
    }

    /// Defining polynomial in tags and [`Atom::var`].
    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Isolating box at the first certified rung of the ladder.
    pub fn canonical_box(&self) -> &DyadicBox {
        &self.first
    }

    /// Defining polynomial with the atom variable renamed to `Z`.
    pub fn poly_z(&self) -> MPoly {
        let var = self.var();
        self.poly.rename(|v| if v == var { Var::Z } else { v })
    }

    /// An enclosure of width at most `2^-bits`, nested in all earlier ones.
    pub fn enclosure(&self, bits: u32) -> Result<DyadicBox> {
        let goal = Dyadic::pow2(-(bits as i64));
        let mut st = self.state.lock().unwrap();
        while st.current.width() > goal {
            let prec = st.prec * 2;
            if prec > MAX_PREC {
                return Err(Error::PrecisionBudget);
            }
            st.prec = prec;
            let c = anchor_coeffs(&self.coeffs, prec)?;
            let Some(level) = st.iso.isolate_at(&c, prec) else {
                continue;
            };
            let Some(k) = follow(&st.current, &level) else {
                continue;
            };
            let mut b = level.boxes[k].clone();
            if self.real {
                b = DyadicBox::real(b.re);
            }
            st.current = st
                .current
                .intersection(&b)
                .expect("refined box must meet its predecessor");
        }
        Ok(st.current.clone())
    }

    /// The atom pinned at the complex-conjugate root (itself when real).
    pub fn conjugate(self: &Arc<Atom>) -> Arc<Atom> {
        if self.real {
            return self.clone();
        }
        let mut map = conj_table().lock().unwrap();
        if let Some(a) = map.get(&self.id) {
            return a.clone();
        }
        let st = self.state.lock().unwrap();
        let id = NEXT_ATOM.fetch_add(1, Ordering::Relaxed);
        let var = Var::aux(id);
        let poly = self.poly.rename(|v| if v == self.var() { var } else { v });
        let coeffs = poly.coeffs_in(var);
        let c = Arc::new(Atom {
            id,
            poly,
            coeffs,
            real: false,
            first: self.first.conj(),
            state: Mutex::new(State {
                iso: st.iso.clone(),
                prec: st.prec,
                current: st.current.conj(),
            }),
        });
        map.insert(self.id, c.clone());
        map.insert(id, self.clone());
        c
    }
}

fn conj_table() -> &'static Mutex<HashMap<u32, Arc<Atom>>> {
    static T: OnceLock<Mutex<HashMap<u32, Arc<Atom>>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The shared atom `i`: the root of `Z² + 1` in the upper half-plane. It
/// always has id 0.
pub fn imaginary_unit() -> Arc<Atom> {
    static I: OnceLock<Arc<Atom>> = OnceLock::new();
    I.get_or_init(|| {
        let z = MPoly::var(Var::Z);
        let p = &(&z * &z) + &MPoly::one();
        let coeffs = p.coeffs_in(Var::Z);
        let (level, iso) = crate::exactnum::roots::isolate(
            |prec| anchor_coeffs(&coeffs, prec),
            crate::exactnum::roots::START_PREC,
        )
        .expect("Z^2 + 1 isolates");
        let k = (0..2)
            .find(|k| level.boxes[*k].im.lo.signum() > 0)
            .expect("one root in the upper half-plane");
        Atom::with_id(0, &p, iso, &level, k)
    })
    .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_is_upper_and_refines() {
        let i = imaginary_unit();
        assert_eq!(i.id(), 0);
        assert!(!i.is_real());
        let b = i.enclosure(100).unwrap();
        assert!(b.im.contains(&Dyadic::one()));
        assert!(b.re.contains(&Dyadic::zero()));
        assert!(b.width() <= Dyadic::pow2(-100));
        let c = i.conjugate();
        assert!(c.enclosure(40).unwrap().im.contains(&Dyadic::from_int(-1)));
        assert_eq!(c.conjugate().id(), 0);
    }
}
