//! The twisted polynomial ring L{tau} with `tau * l = l^q * tau`.

use crate::algebra::ext::{Embedding, ExtField};
use crate::algebra::field::Field;
use crate::error::{Error, Result};

/// `sum_i c_i tau^i` over the field `F`, without trailing zero coefficients.
#[derive(Clone, Debug)]
pub struct SkewPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for SkewPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coeffs == other.coeffs
    }
}

impl<F: Field> SkewPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> SkewPoly<F> {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &F) -> SkewPoly<F> {
        SkewPoly::new(field, Vec::new())
    }

    pub fn constant(field: &F, c: F::Elem) -> SkewPoly<F> {
        SkewPoly::new(field, vec![c])
    }

    pub fn one(field: &F) -> SkewPoly<F> {
        SkewPoly::constant(field, field.one())
    }

    /// `tau^k`.
    pub fn tau_pow(field: &F, k: usize) -> SkewPoly<F> {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        SkewPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in tau; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Least i with `c_i != 0`; `None` stands for +infinity (f = 0).
    pub fn tau_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    fn check_field(&self, other: &SkewPoly<F>) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::pre(
                "skew polynomials over different coefficient fields",
            ))
        }
    }

    pub fn add(&self, other: &SkewPoly<F>) -> Result<SkewPoly<F>> {
        self.check_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(SkewPoly::new(f, coeffs))
    }

    pub fn neg(&self) -> SkewPoly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        SkewPoly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &SkewPoly<F>) -> Result<SkewPoly<F>> {
        self.add(&other.neg())
    }

    /// `c * self`, with c on the left.
    pub fn scale_left(&self, c: &F::Elem) -> SkewPoly<F> {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(c, a)).collect();
        SkewPoly::new(&self.field, coeffs)
    }

    /// `(sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^(q^i) tau^(i+j)`.
    pub fn mul(&self, other: &SkewPoly<F>) -> Result<SkewPoly<F>> {
        self.check_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(SkewPoly::zero(f));
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let t = f.mul(a, &f.frobenius(b, i as u32));
                out[i + j] = f.add(&out[i + j], &t);
            }
        }
        Ok(SkewPoly::new(f, out))
    }

    /// `f(x) = sum c_i x^(q^i)` for x in the coefficient field.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        let mut pw = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pw = f.frobenius(&pw, 1);
            }
            acc = f.add(&acc, &f.mul(c, &pw));
        }
        acc
    }

    /// F_q-dimension of the kernel in an algebraic closure:
    /// `deg - tau_valuation`, the number of tau-steps in the separable part.
    pub fn kernel_dim_closure(&self) -> Result<usize> {
        match (self.degree(), self.tau_valuation()) {
            (Some(d), Some(v)) => Ok(d - v),
            _ => Err(Error::pre("kernel dimension of the zero polynomial")),
        }
    }

    /// Render as `c2*t^2+c1*t+c0` with the given coefficient printer.
    pub fn to_text(&self, show: impl Fn(&F::Elem) -> String) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| (show(c), i as i64));
        crate::algebra::text::join_terms("t", terms)
    }
}

impl SkewPoly<ExtField> {
    /// Number of roots in `embedding.target()`, with coefficients carried
    /// over by the embedding.
    pub fn count_roots_in(&self, embedding: &Embedding) -> Result<u64> {
        if !embedding.source().same_field(&self.field) {
            return Err(Error::pre("embedding source is not the coefficient field"));
        }
        let m = embedding.target();
        let image = SkewPoly::new(m, self.coeffs.iter().map(|c| embedding.apply(*c)).collect());
        Ok(m.elements().filter(|x| m.is_zero(&image.eval(x))).count() as u64)
    }
}
