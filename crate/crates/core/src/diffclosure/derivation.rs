//! The lazily grown derivation `δ = Σ_t g_t ∂/∂Λ_t`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::nashfield::{partial_derivative, Element};

use super::diffpoly::DiffPoly;
use super::WitnessRecord;

/// Pinned derivative values of the tags plus the witness log. Pins are
/// permanent; reading an unpinned tag pins it to 0.
#[derive(Default)]
pub struct DerivationTable {
    pins: BTreeMap<u32, Element>,
    log: Vec<WitnessRecord>,
    cache: HashMap<(u64, u32), Element>,
}

impl DerivationTable {
    pub fn new() -> DerivationTable {
        DerivationTable::default()
    }

    pub fn pin(&mut self, t: u32, g: Element) -> Result<()> {
        if self.pins.contains_key(&t) {
            return Err(Error::Precondition(format!("tag #{} is already pinned", t)));
        }
        self.pins.insert(t, g);
        Ok(())
    }

    pub fn pinned(&self, t: u32) -> Option<&Element> {
        self.pins.get(&t)
    }

    pub fn pins(&self) -> impl Iterator<Item = (u32, &Element)> {
        self.pins.iter().map(|(t, e)| (*t, e))
    }

    fn read(&mut self, t: u32) -> Element {
        self.pins.entry(t).or_insert_with(Element::zero).clone()
    }

    pub fn log(&self) -> &[WitnessRecord] {
        &self.log
    }

    pub(crate) fn record(&mut self, r: WitnessRecord) {
        self.log.push(r);
    }

    /// `δa = Σ_t g_t ∂a/∂Λ_t` over the support of `a`.
    pub fn apply_delta(&mut self, a: &Element) -> Result<Element> {
        if let Some(d) = self.cache.get(&(a.id(), 1)) {
            return Ok(d.clone());
        }
        let mut acc = Element::zero();
        for t in a.support() {
            let g = self.read(t);
            if g.is_trivially_zero() {
                continue;
            }
            acc = acc.add(&g.mul(&partial_derivative(a, t)?));
        }
        self.cache.insert((a.id(), 1), acc.clone());
        Ok(acc)
    }

    /// `[a, δa, …, δⁿa]`.
    pub fn derivatives(&mut self, a: &Element, n: usize) -> Result<Vec<Element>> {
        let mut out = vec![a.clone()];
        for i in 1..=n {
            let key = (a.id(), i as u32);
            let next = match self.cache.get(&key) {
                Some(d) => d.clone(),
                None => {
                    let d = self.apply_delta(&out[i - 1])?;
                    self.cache.insert(key, d.clone());
                    d
                }
            };
            out.push(next);
        }
        Ok(out)
    }

    /// `p(a) = p*(a, δa, …, δⁿa)`.
    pub fn diff_eval(&mut self, p: &DiffPoly, a: &Element) -> Result<Element> {
        let n = p.ord().max(0) as usize;
        let vals = self.derivatives(a, n)?;
        p.eval_star(&vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_example() {
        let mut d = DerivationTable::new();
        let (l0, l1) = (Element::from_tag(0), Element::from_tag(1));
        d.pin(0, l1.clone()).unwrap();
        d.pin(1, Element::one()).unwrap();
        let got = d.apply_delta(&l0.mul(&l1)).unwrap();
        assert!(got.equals(&l1.mul(&l1).add(&l0)).unwrap());
        assert!(d.apply_delta(&Element::from_int(7)).unwrap().is_zero().unwrap());
        assert!(d.pin(0, Element::zero()).is_err());
    }

    #[test]
    fn reads_pin_zero() {
        let mut d = DerivationTable::new();
        let l = Element::from_tag(3);
        assert!(d.apply_delta(&l).unwrap().is_zero().unwrap());
        assert!(d.pinned(3).unwrap().is_trivially_zero());
        assert!(d.pin(3, Element::one()).is_err());
    }
}
