//! Truncated Laurent series in 1/T: elements of the completion K_inf known
//! up to a certified absolute precision.

use super::field::{FieldContext, FqElem};
use super::poly::FqPoly;
use super::ratfunc::Valuation;

/// `sum_i coeffs[i] T^-(vmin + i) + O(T^-prec)`: every term of valuation
/// below `prec` is exact, nothing is known at or beyond it.
#[derive(Clone, Debug)]
pub struct Laurent {
    vmin: i64,
    coeffs: Vec<FqElem>,
    prec: i64,
}

impl Laurent {
    pub fn zero(prec: i64) -> Laurent {
        Laurent {
            vmin: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    /// An exact polynomial, kept to valuation `prec`.
    pub fn from_poly(p: &FqPoly, prec: i64) -> Laurent {
        let Some(d) = p.degree() else {
            return Laurent::zero(prec);
        };
        let vmin = -(d as i64);
        let len = (prec - vmin).max(0) as usize;
        let coeffs = (0..len.min(d + 1)).map(|i| p.coeff(d - i)).collect();
        Laurent { vmin, coeffs, prec }.trimmed()
    }

    /// `T^k` to valuation `prec`.
    pub fn t_pow(k: i64, prec: i64) -> Laurent {
        if -k >= prec {
            return Laurent::zero(prec);
        }
        Laurent {
            vmin: -k,
            coeffs: vec![FqElem::ONE],
            prec,
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    fn get(&self, v: i64) -> FqElem {
        if v < self.vmin {
            return FqElem::ZERO;
        }
        self.coeffs
            .get((v - self.vmin) as usize)
            .copied()
            .unwrap_or(FqElem::ZERO)
    }

    /// Drop leading zeros and anything at or beyond `prec`.
    fn trimmed(mut self) -> Laurent {
        let keep = (self.prec - self.vmin).max(0) as usize;
        self.coeffs.truncate(keep);
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => {
                self.coeffs.drain(..i);
                self.vmin += i as i64;
            }
            None => {
                self.coeffs.clear();
                self.vmin = self.prec;
            }
        }
        self
    }

    /// Lower the precision to at most `cap`.
    pub fn truncate(mut self, cap: i64) -> Laurent {
        if cap < self.prec {
            self.prec = cap;
        }
        self.trimmed()
    }

    /// The valuation, if a nonzero term is known; `Infinite` means the
    /// series vanishes to its precision, so only `v >= prec` is known.
    pub fn valuation(&self) -> Valuation {
        if self.coeffs.is_empty() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.vmin)
        }
    }

    /// A lower bound for the true valuation.
    fn valuation_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.vmin
        }
    }

    pub fn add(&self, fq: &FieldContext, other: &Laurent) -> Laurent {
        let prec = self.prec.min(other.prec);
        let vmin = self.vmin.min(other.vmin).min(prec);
        let coeffs = (vmin..prec)
            .map(|v| fq.add(self.get(v), other.get(v)))
            .collect();
        Laurent { vmin, coeffs, prec }.trimmed()
    }

    pub fn neg(&self, fq: &FieldContext) -> Laurent {
        let coeffs = self.coeffs.iter().map(|&c| fq.neg(c)).collect();
        Laurent {
            vmin: self.vmin,
            coeffs,
            prec: self.prec,
        }
    }

    pub fn sub(&self, fq: &FieldContext, other: &Laurent) -> Laurent {
        self.add(fq, &other.neg(fq))
    }

    pub fn scale(&self, fq: &FieldContext, c: FqElem) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(self.prec);
        }
        let coeffs = self.coeffs.iter().map(|&x| fq.mul(x, c)).collect();
        Laurent {
            vmin: self.vmin,
            coeffs,
            prec: self.prec,
        }
    }

    /// Product, with precision `min(prec_a + v(b), prec_b + v(a))`, capped.
    pub fn mul(&self, fq: &FieldContext, other: &Laurent, cap: i64) -> Laurent {
        let prec = (self.prec + other.valuation_bound())
            .min(other.prec + self.valuation_bound())
            .min(cap);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Laurent::zero(prec);
        }
        let nnz = |s: &Laurent| s.coeffs.iter().filter(|c| !c.is_zero()).count();
        let (sparse, dense) = if nnz(self) <= nnz(other) {
            (self, other)
        } else {
            (other, self)
        };
        let vmin = self.vmin + other.vmin;
        let len = (prec - vmin).max(0) as usize;
        let mut out = vec![FqElem::ZERO; len];
        for (i, &c) in sparse.coeffs.iter().enumerate() {
            if c.is_zero() || i >= len {
                continue;
            }
            let room = (len - i).min(dense.coeffs.len());
            fq.axpy(&mut out[i..i + room], c, &dense.coeffs[..room]);
        }
        Laurent {
            vmin,
            coeffs: out,
            prec,
        }
        .trimmed()
    }

    /// Multiply by an exact polynomial.
    pub fn mul_poly(&self, fq: &FieldContext, p: &FqPoly, cap: i64) -> Laurent {
        let Some(d) = p.degree() else {
            return Laurent::zero(cap);
        };
        let prec = (self.prec - d as i64).min(cap);
        if self.coeffs.is_empty() {
            return Laurent::zero(prec);
        }
        let vmin = self.vmin - d as i64;
        let len = (prec - vmin).max(0) as usize;
        let mut out = vec![FqElem::ZERO; len];
        for (j, c) in p.terms() {
            // T^j shifts valuations by -j; offset into `out` is d - j.
            let off = d - j;
            if off >= len {
                continue;
            }
            let room = (len - off).min(self.coeffs.len());
            fq.axpy(&mut out[off..off + room], c, &self.coeffs[..room]);
        }
        Laurent {
            vmin,
            coeffs: out,
            prec,
        }
        .trimmed()
    }

    /// Divide by a nonzero exact polynomial.
    pub fn div_poly(&self, fq: &FieldContext, p: &FqPoly, cap: i64) -> Laurent {
        let d = p.degree().expect("division by the zero polynomial");
        let prec = (self.prec + d as i64).min(cap);
        if self.coeffs.is_empty() {
            return Laurent::zero(prec);
        }
        let vmin = self.vmin + d as i64;
        let len = (prec - vmin).max(0) as usize;
        let lc_inv = fq.inv(p.leading().unwrap()).unwrap();
        // Lower terms of p as (valuation offset above the leading term, coefficient).
        let tail: Vec<(usize, FqElem)> = p
            .terms()
            .filter(|&(j, _)| j < d)
            .map(|(j, c)| (d - j, c))
            .collect();
        let mut rem: Vec<FqElem> = self.coeffs.clone();
        rem.resize(len.max(rem.len()), FqElem::ZERO);
        let mut out = vec![FqElem::ZERO; len];
        for i in 0..len {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let y = fq.mul(c, lc_inv);
            out[i] = y;
            for &(off, t) in &tail {
                if i + off < len {
                    rem[i + off] = fq.sub(rem[i + off], fq.mul(y, t));
                }
            }
        }
        Laurent {
            vmin,
            coeffs: out,
            prec,
        }
        .trimmed()
    }

    /// `T -> T^m`; equals the m-th power when m is a power of q.
    pub fn inflate(&self, m: u64, cap: i64) -> Laurent {
        let m = m as i64;
        let prec = self.prec.saturating_mul(m).min(cap);
        if self.coeffs.is_empty() {
            return Laurent::zero(prec);
        }
        let vmin = self.vmin * m;
        let len = (prec - vmin).max(0) as usize;
        let mut out = vec![FqElem::ZERO; len];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let at = i * m as usize;
            if at >= len {
                break;
            }
            out[at] = c;
        }
        Laurent {
            vmin,
            coeffs: out,
            prec,
        }
        .trimmed()
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            vmin: self.vmin - k,
            coeffs: self.coeffs.clone(),
            prec: self.prec - k,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_context;
    use crate::algebra::poly::PolyRing;

    #[test]
    fn division_inverts_multiplication() {
        let fq = make_context(3, 1).unwrap();
        let r = PolyRing::new(fq.clone());
        let a = r.from_ints(&[1, 2, 0, 1]);
        let d = r.from_ints(&[2, 1, 1]);
        let s = Laurent::from_poly(&a, 40).div_poly(&fq, &d, 40);
        assert_eq!(s.prec(), 40);
        let back = s.mul_poly(&fq, &d, 40);
        let exact = Laurent::from_poly(&a, back.prec());
        assert!(back.sub(&fq, &exact).valuation() == Valuation::Infinite);
        assert_eq!(s.valuation(), Valuation::Finite(-1));
    }

    #[test]
    fn geometric_series() {
        // 1/(1 - T^-1) = 1 + T^-1 + T^-2 + ...
        let fq = make_context(2, 1).unwrap();
        let r = PolyRing::new(fq.clone());
        let s =
            Laurent::from_poly(&r.from_ints(&[0, 1]), 10).div_poly(&fq, &r.from_ints(&[1, 1]), 10);
        assert_eq!(s.coeffs.len(), 10);
        assert!(s.coeffs.iter().all(|&c| c == FqElem::ONE));
        let sq = s.mul(&fq, &s, 10);
        // Squaring in characteristic 2 is inflation by 2.
        let infl = s.inflate(2, 10);
        assert!(sq.sub(&fq, &infl).valuation() == Valuation::Infinite);
    }

    #[test]
    fn precision_tracking() {
        let fq = make_context(2, 1).unwrap();
        let a = Laurent::t_pow(3, 5);
        let b = Laurent::t_pow(-2, 5);
        let p = a.mul(&fq, &b, 100);
        assert_eq!(p.valuation(), Valuation::Finite(-1));
        // prec = min(5 + 2, 5 - 3)
        assert_eq!(p.prec(), 2);
        assert_eq!(a.shift(-3).valuation(), Valuation::Finite(0));
    }
}
