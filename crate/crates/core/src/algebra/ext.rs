//! Finite extensions F_q[u]/(f) of F_q, including residue fields A/p.
//!
//! Fields here are small (at most `Limits::max_field_size` elements), so
//! arithmetic runs on exponent/logarithm tables with Zech logarithms for
//! addition.

use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldContext, FqElem};
use super::poly::{FqPoly, PolyRing};
use crate::error::{Error, Result};

/// An element of an [`ExtField`], stored as the packed code
/// `sum_i code(c_i) q^i` of its coordinates in the basis `1, u, ..., u^(d-1)`.
/// Code order is the element enumeration order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub(crate) u32);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem(0);
    pub const ONE: ExtElem = ExtElem(1);

    pub fn code(self) -> u32 {
        self.0
    }
}

const NONE: u32 = u32::MAX;

struct Inner {
    ring: PolyRing,
    modulus: FqPoly,
    degree: usize,
    size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.ring.q(), self.0.degree)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl ExtField {
    /// The degree-d extension defined by the canonical (smallest) monic
    /// irreducible of degree d.
    pub fn new(fq: &FieldContext, d: usize) -> Result<ExtField> {
        if d == 0 {
            return Err(Error::pre("extension degree must be at least 1"));
        }
        let size = (fq.q() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        fq.limits().check_field_size("extension field size", size)?;
        let ring = PolyRing::new(fq.clone());
        let modulus = ring.canonical_irreducible(d)?;
        Self::with_modulus(fq, modulus)
    }

    /// `F_q[u]/(modulus)`; for a prime p of A this is the residue field A/p
    /// with u the class of T.
    pub fn with_modulus(fq: &FieldContext, modulus: FqPoly) -> Result<ExtField> {
        let ring = PolyRing::new(fq.clone());
        let d = match modulus.degree() {
            None | Some(0) => return Err(Error::ConstantInput),
            Some(d) => d,
        };
        let size = (fq.q() as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        fq.limits().check_field_size("extension field size", size)?;
        if !modulus.is_monic() {
            return Err(Error::pre("modulus must be monic"));
        }
        if !ring.is_irreducible(&modulus)? {
            return Err(Error::pre("modulus must be irreducible"));
        }
        let size = size as u32;
        let q = fq.q() as u32;
        let to_poly = |code: u32| -> FqPoly {
            let mut c = code;
            let mut v = Vec::with_capacity(d);
            for _ in 0..d {
                v.push(FqElem((c % q) as u8));
                c /= q;
            }
            FqPoly::new(v)
        };
        let to_code = |p: &FqPoly| -> u32 {
            (0..d)
                .rev()
                .fold(0u32, |acc, i| acc * q + p.coeff(i).code())
        };
        let mulmod = |a: &FqPoly, b: &FqPoly| ring.rem(&ring.mul(a, b), &modulus).unwrap();

        let order = size as u64 - 1;
        let factors = prime_factors(order);
        let powmod = |g: &FqPoly, mut e: u64| {
            let mut acc = FqPoly::one();
            let mut base = g.clone();
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base);
                }
                base = mulmod(&base, &base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..size)
            .map(to_poly)
            .find(|g| factors.iter().all(|&r| !powmod(g, order / r).is_one()))
            .ok_or_else(|| Error::internal("no primitive element"))?;

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NONE; size as usize];
        let mut cur = FqPoly::one();
        for (i, slot) in exp.iter_mut().enumerate() {
            let c = to_code(&cur);
            *slot = c;
            log[c as usize] = i as u32;
            cur = mulmod(&cur, &generator);
        }
        let mut zech = vec![NONE; order as usize];
        for (i, z) in zech.iter_mut().enumerate() {
            let x = ring.add(&to_poly(exp[i]), &FqPoly::one());
            let c = to_code(&x);
            if c != 0 {
                *z = log[c as usize];
            }
        }
        Ok(ExtField(Arc::new(Inner {
            ring,
            modulus,
            degree: d,
            size,
            exp,
            log,
            zech,
        })))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.0.ring
    }

    pub fn modulus(&self) -> &FqPoly {
        &self.0.modulus
    }

    /// Degree over F_q.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn size(&self) -> u64 {
        self.0.size as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> {
        (0..self.0.size).map(ExtElem)
    }

    /// The class of u.
    pub fn generator(&self) -> ExtElem {
        self.from_poly(&FqPoly::t_pow(1))
    }

    pub fn to_poly(&self, a: ExtElem) -> FqPoly {
        let q = self.0.ring.q() as u32;
        let mut c = a.0;
        let mut v = Vec::with_capacity(self.0.degree);
        for _ in 0..self.0.degree {
            v.push(FqElem((c % q) as u8));
            c /= q;
        }
        FqPoly::new(v)
    }

    pub fn from_poly(&self, p: &FqPoly) -> ExtElem {
        let r = if p.degree().is_some_and(|d| d >= self.0.degree) {
            self.0.ring.rem(p, &self.0.modulus).unwrap()
        } else {
            p.clone()
        };
        let q = self.0.ring.q() as u32;
        ExtElem(
            (0..self.0.degree)
                .rev()
                .fold(0u32, |acc, i| acc * q + r.coeff(i).code()),
        )
    }

    /// Evaluate a polynomial with F_q coefficients at x.
    pub fn eval_poly(&self, f: &FqPoly, x: ExtElem) -> ExtElem {
        f.coeffs().iter().rev().fold(ExtElem::ZERO, |acc, &c| {
            self.add(&self.mul(&acc, &x), &self.from_base(c))
        })
    }

    /// First root of f in element enumeration order.
    pub fn find_root(&self, f: &FqPoly) -> Option<ExtElem> {
        self.elements()
            .find(|&x| self.eval_poly(f, x) == ExtElem::ZERO)
    }

    fn order(&self) -> u64 {
        self.0.size as u64 - 1
    }

    pub fn log(&self, a: ExtElem) -> Option<u32> {
        let l = self.0.log[a.0 as usize];
        (l != NONE).then_some(l)
    }

    fn q_pow_mod_order(&self, k: u32) -> u64 {
        let m = self.order();
        let mut acc = 1u64 % m.max(1);
        for _ in 0..k {
            acc = acc * self.0.ring.q() % m;
        }
        acc
    }

    /// Whether `a^(q^k) = a`, i.e. a lies in the subfield of size q^k.
    pub fn is_fixed_by(&self, a: ExtElem, k: u32) -> bool {
        self.frobenius(&a, k) == a
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn base(&self) -> &FieldContext {
        self.0.ring.fq()
    }

    fn zero(&self) -> ExtElem {
        ExtElem::ZERO
    }

    fn one(&self) -> ExtElem {
        ExtElem::ONE
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if a.0 == 0 {
            return *b;
        }
        if b.0 == 0 {
            return *a;
        }
        let m = self.order() as u32;
        let la = self.0.log[a.0 as usize];
        let lb = self.0.log[b.0 as usize];
        let k = (lb + m - la) % m;
        let z = self.0.zech[k as usize];
        if z == NONE {
            return ExtElem::ZERO;
        }
        ExtElem(self.0.exp[((la as u64 + z as u64) % m as u64) as usize])
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        if a.0 == 0 || self.0.ring.fq().is_char_two() {
            return *a;
        }
        // -1 = g^((Q-1)/2) in odd characteristic.
        let m = self.order();
        let la = self.0.log[a.0 as usize] as u64;
        ExtElem(self.0.exp[((la + m / 2) % m) as usize])
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if a.0 == 0 || b.0 == 0 {
            return ExtElem::ZERO;
        }
        let m = self.order();
        let s = self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64;
        ExtElem(self.0.exp[(s % m) as usize])
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if a.0 == 0 {
            return None;
        }
        let m = self.order();
        let la = self.0.log[a.0 as usize] as u64;
        Some(ExtElem(self.0.exp[((m - la) % m) as usize]))
    }

    fn from_base(&self, c: FqElem) -> ExtElem {
        ExtElem(c.code())
    }

    fn frobenius(&self, a: &ExtElem, k: u32) -> ExtElem {
        if a.0 == 0 {
            return *a;
        }
        let m = self.order();
        let la = self.0.log[a.0 as usize] as u64;
        ExtElem(self.0.exp[(la * self.q_pow_mod_order(k) % m) as usize])
    }

    fn pow(&self, a: &ExtElem, e: u64) -> ExtElem {
        if e == 0 {
            return ExtElem::ONE;
        }
        if a.0 == 0 {
            return ExtElem::ZERO;
        }
        let m = self.order();
        let la = self.0.log[a.0 as usize] as u64;
        ExtElem(self.0.exp[((la as u128 * e as u128) % m as u128) as usize])
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.modulus == other.0.modulus)
    }
}

/// Field embedding `source -> target` determined by the image of the
/// source generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: ExtField,
    target: ExtField,
    image: ExtElem,
}

impl Embedding {
    /// Embed `source` into `target`, sending u to the first root of the
    /// source modulus in target enumeration order.
    pub fn new(source: &ExtField, target: &ExtField) -> Result<Embedding> {
        let image = embed_prime_root(source.modulus(), target)?;
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            image,
        })
    }

    pub fn source(&self) -> &ExtField {
        &self.source
    }

    pub fn target(&self) -> &ExtField {
        &self.target
    }

    /// Image of u.
    pub fn image_of_generator(&self) -> ExtElem {
        self.image
    }

    pub fn apply(&self, x: ExtElem) -> ExtElem {
        self.target.eval_poly(&self.source.to_poly(x), self.image)
    }
}

/// A root t0 of the degree-n prime p in L (n must divide [L : F_q]):
/// the first root in element enumeration order. It defines the map
/// A -> L, T -> t0.
pub fn embed_prime_root(p: &FqPoly, field: &ExtField) -> Result<ExtElem> {
    let n = p.degree().ok_or(Error::ConstantInput)?;
    if n == 0 {
        return Err(Error::ConstantInput);
    }
    if !field.degree().is_multiple_of(n) {
        return Err(Error::pre(format!(
            "prime degree {n} does not divide extension degree {}",
            field.degree()
        )));
    }
    field.find_root(p).ok_or_else(|| {
        Error::internal("irreducible polynomial has no root in an extension of divisible degree")
    })
}

/// Express x, an element of the subfield F_q(t0) = A/p inside L, as c(t0)
/// with deg c < deg p, by solving the F_q-linear system in the basis
/// `1, t0, ..., t0^(n-1)`.
pub fn subfield_express(field: &ExtField, x: ExtElem, t0: ExtElem, p: &FqPoly) -> Result<FqPoly> {
    let n = p.degree().ok_or(Error::ConstantInput)?;
    if field.eval_poly(p, t0) != ExtElem::ZERO {
        return Err(Error::pre("t0 is not a root of p"));
    }
    if !field.is_fixed_by(x, n as u32) {
        return Err(Error::pre(
            "element is not fixed by the q^n-power Frobenius",
        ));
    }
    let fq = field.base().clone();
    let d = field.degree();
    // Columns: coordinates of t0^j; augmented with x.
    let mut cols: Vec<FqPoly> = Vec::with_capacity(n);
    let mut pw = ExtElem::ONE;
    for _ in 0..n {
        cols.push(field.to_poly(pw));
        pw = field.mul(&pw, &t0);
    }
    let rhs = field.to_poly(x);
    let mut rows: Vec<Vec<FqElem>> = (0..d)
        .map(|i| {
            let mut row: Vec<FqElem> = cols.iter().map(|c| c.coeff(i)).collect();
            row.push(rhs.coeff(i));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(r) = (pivot_row..d).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::internal("singular basis for A/p inside L"));
        };
        rows.swap(pivot_row, r);
        let inv = fq.inv(rows[pivot_row][col]).unwrap();
        for v in rows[pivot_row].iter_mut() {
            *v = fq.mul(*v, inv);
        }
        for r in 0..d {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col];
                let pr = rows[pivot_row].clone();
                for (v, pv) in rows[r].iter_mut().zip(pr) {
                    *v = fq.sub(*v, fq.mul(f, pv));
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::internal("inconsistent subfield system"));
    }
    let coeffs: Vec<FqElem> = pivots.iter().map(|&r| rows[r][n]).collect();
    Ok(FqPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_context;

    #[test]
    fn build_extension_sizes() {
        let f2 = make_context(2, 1).unwrap();
        assert_eq!(ExtField::new(&f2, 2).unwrap().size(), 4);
        assert_eq!(ExtField::new(&f2, 6).unwrap().size(), 64);
        let f3 = make_context(3, 1).unwrap();
        assert_eq!(ExtField::new(&f3, 4).unwrap().size(), 81);
        assert!(ExtField::new(&f2, 13).unwrap_err().is_resource_bound());
    }

    #[test]
    fn field_axioms_on_tables() {
        let f4 = make_context(2, 2).unwrap();
        for l in [
            ExtField::new(&f4, 2).unwrap(),
            ExtField::new(&make_context(3, 1).unwrap(), 3).unwrap(),
        ] {
            let els: Vec<_> = l.elements().collect();
            for &a in &els {
                assert_eq!(l.add(&a, &l.neg(&a)), ExtElem::ZERO);
                if a != ExtElem::ZERO {
                    assert_eq!(l.mul(&a, &l.inv(&a).unwrap()), ExtElem::ONE);
                }
                // Frobenius agrees with repeated multiplication.
                let q = l.base().q();
                let mut pw = ExtElem::ONE;
                for _ in 0..q {
                    pw = l.mul(&pw, &a);
                }
                assert_eq!(l.frobenius(&a, 1), pw);
                for &b in els.iter().step_by(3) {
                    // Table addition agrees with coordinate addition.
                    let s = l.ring().add(&l.to_poly(a), &l.to_poly(b));
                    assert_eq!(l.add(&a, &b), l.from_poly(&s));
                    let m = l
                        .ring()
                        .rem(&l.ring().mul(&l.to_poly(a), &l.to_poly(b)), l.modulus())
                        .unwrap();
                    assert_eq!(l.mul(&a, &b), l.from_poly(&m));
                }
            }
        }
    }

    #[test]
    fn prime_roots() {
        let f2 = make_context(2, 1).unwrap();
        let r = PolyRing::new(f2.clone());
        let l = ExtField::new(&f2, 2).unwrap();
        assert_eq!(embed_prime_root(&r.t(), &l).unwrap(), ExtElem::ZERO);
        assert_eq!(
            embed_prime_root(&r.from_ints(&[1, 1]), &l).unwrap(),
            ExtElem::ONE
        );
        let p = r.from_ints(&[1, 1, 1]);
        let t0 = embed_prime_root(&p, &l).unwrap();
        assert_eq!(l.eval_poly(&p, t0), ExtElem::ZERO);
        // t0 generates the 3-element multiplicative group.
        assert_ne!(t0, ExtElem::ONE);
        assert_eq!(l.pow(&t0, 3), ExtElem::ONE);
        let l3 = ExtField::new(&f2, 3).unwrap();
        assert!(embed_prime_root(&p, &l3).is_err());
    }

    #[test]
    fn subfield_examples() {
        let f2 = make_context(2, 1).unwrap();
        let r = PolyRing::new(f2.clone());
        let l = ExtField::new(&f2, 4).unwrap();
        let p = r.from_ints(&[1, 1, 1]);
        let t0 = embed_prime_root(&p, &l).unwrap();
        assert_eq!(
            subfield_express(&l, ExtElem::ZERO, t0, &p).unwrap(),
            FqPoly::zero()
        );
        assert_eq!(
            subfield_express(&l, ExtElem::ONE, t0, &p).unwrap(),
            FqPoly::one()
        );
        let t0sq = l.mul(&t0, &t0);
        assert_eq!(
            subfield_express(&l, t0sq, t0, &p).unwrap(),
            r.from_ints(&[1, 1])
        );
        // An element outside F_4 is rejected.
        let outside = l.elements().find(|&x| !l.is_fixed_by(x, 2)).unwrap();
        assert!(subfield_express(&l, outside, t0, &p).is_err());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let f3 = make_context(3, 1).unwrap();
        let r = PolyRing::new(f3.clone());
        let src = ExtField::with_modulus(&f3, r.from_ints(&[1, 0, 1])).unwrap();
        let dst = ExtField::new(&f3, 4).unwrap();
        let e = Embedding::new(&src, &dst).unwrap();
        for a in src.elements() {
            for b in src.elements() {
                assert_eq!(e.apply(src.mul(&a, &b)), dst.mul(&e.apply(a), &e.apply(b)));
                assert_eq!(e.apply(src.add(&a, &b)), dst.add(&e.apply(a), &e.apply(b)));
            }
        }
    }
}
