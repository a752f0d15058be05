//! Sparse polynomials in one named indeterminate with coefficients in K.

use std::collections::BTreeMap;

use super::field::Field;
use super::ratfunc::{RatFunc, RatFuncField};

/// `sum_k c_k var^k` with every stored `c_k` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    var: String,
    terms: BTreeMap<u64, RatFunc>,
}

impl SeriesPoly {
    pub fn zero(var: &str) -> SeriesPoly {
        SeriesPoly {
            var: var.to_string(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(var: &str, c: RatFunc) -> SeriesPoly {
        SeriesPoly::monomial(var, c, 0)
    }

    pub fn monomial(var: &str, c: RatFunc, k: u64) -> SeriesPoly {
        let mut s = SeriesPoly::zero(var);
        if !c.is_zero() {
            s.terms.insert(k, c);
        }
        s
    }

    pub fn from_terms(var: &str, terms: impl IntoIterator<Item = (u64, RatFunc)>) -> SeriesPoly {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SeriesPoly {
            var: var.to_string(),
            terms,
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: &str) -> SeriesPoly {
        self.var = var.to_string();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: u64) -> Option<&RatFunc> {
        self.terms.get(&k)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u64, &RatFunc)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.terms.values().next_back()
    }

    pub fn add_term(&mut self, k: &RatFuncField, e: u64, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let s = k.add(slot, c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, k: &RatFuncField, other: &SeriesPoly) -> SeriesPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(k, *e, c);
        }
        out
    }

    pub fn neg(&self, k: &RatFuncField) -> SeriesPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, k.neg(c))).collect();
        SeriesPoly {
            var: self.var.clone(),
            terms,
        }
    }

    pub fn sub(&self, k: &RatFuncField, other: &SeriesPoly) -> SeriesPoly {
        self.add(k, &other.neg(k))
    }

    pub fn scale(&self, k: &RatFuncField, c: &RatFunc) -> SeriesPoly {
        if c.is_zero() {
            return SeriesPoly::zero(&self.var);
        }
        let terms = self.terms.iter().map(|(e, a)| (*e, k.mul(a, c))).collect();
        SeriesPoly {
            var: self.var.clone(),
            terms,
        }
    }

    /// Multiply by `var^s`.
    pub fn shift(&self, s: u64) -> SeriesPoly {
        let terms = self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect();
        SeriesPoly {
            var: self.var.clone(),
            terms,
        }
    }

    pub fn mul(&self, k: &RatFuncField, other: &SeriesPoly) -> SeriesPoly {
        let mut out = SeriesPoly::zero(&self.var);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                out.add_term(k, ea + eb, &k.mul(a, b));
            }
        }
        out
    }

    /// `f(-var)`: the coefficient of `var^k` picks up `(-1)^k`.
    pub fn negate_var(&self, k: &RatFuncField) -> SeriesPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, if e % 2 == 1 { k.neg(c) } else { c.clone() }))
            .collect();
        SeriesPoly {
            var: self.var.clone(),
            terms,
        }
    }

    /// Evaluate at an element of K.
    pub fn substitute(&self, k: &RatFuncField, value: &RatFunc) -> RatFunc {
        let mut acc = k.zero();
        let mut pw = k.one();
        let mut at = 0u64;
        for (e, c) in &self.terms {
            pw = k.mul(&pw, &k.pow(value, e - at));
            at = *e;
            acc = k.add(&acc, &k.mul(c, &pw));
        }
        acc
    }
}
