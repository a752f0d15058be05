//! Rank-2 Drinfeld modules `phi_T = i(T) + g tau + Delta tau^2`.

use num_rational::Ratio;

use crate::algebra::ext::{embed_prime_root, ExtField};
use crate::algebra::field::Field;
use crate::algebra::poly::FqPoly;
use crate::algebra::ratfunc::{RatFunc, RatFuncField, Valuation};
use crate::algebra::text::poly_to_string;
use crate::error::{Error, Result};
use crate::skew::SkewPoly;

/// A ring map `A -> L` fixed by the image of T. `prime` is the kernel when
/// L has finite characteristic.
#[derive(Clone, Debug)]
pub struct AFieldMap<F: Field> {
    field: F,
    t_image: F::Elem,
    prime: Option<FqPoly>,
}

impl AFieldMap<RatFuncField> {
    /// The inclusion A -> K.
    pub fn generic(k: &RatFuncField) -> AFieldMap<RatFuncField> {
        AFieldMap {
            field: k.clone(),
            t_image: k.t(),
            prime: None,
        }
    }
}

impl AFieldMap<ExtField> {
    /// The reduction A -> A/p.
    pub fn residue(k: &RatFuncField, p: &FqPoly) -> Result<AFieldMap<ExtField>> {
        let field = ExtField::with_modulus(k.base(), k.ring().make_monic(p))?;
        let t_image = field.generator();
        Ok(AFieldMap {
            field,
            t_image,
            prime: Some(p.clone()),
        })
    }

    /// A -> L sending T to the first root of p in L.
    pub fn into_extension(p: &FqPoly, l: &ExtField) -> Result<AFieldMap<ExtField>> {
        let t0 = embed_prime_root(p, l)?;
        Ok(AFieldMap {
            field: l.clone(),
            t_image: t0,
            prime: Some(p.clone()),
        })
    }
}

impl<F: Field> AFieldMap<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn t_image(&self) -> &F::Elem {
        &self.t_image
    }

    pub fn prime(&self) -> Option<&FqPoly> {
        self.prime.as_ref()
    }

    /// `i(a)`.
    pub fn apply(&self, a: &FqPoly) -> F::Elem {
        let f = &self.field;
        a.coeffs().iter().rev().fold(f.zero(), |acc, &c| {
            f.add(&f.mul(&acc, &self.t_image), &f.from_base(c))
        })
    }
}

#[derive(Clone, Debug)]
pub struct DrinfeldModule<F: Field> {
    map: AFieldMap<F>,
    g: F::Elem,
    delta: F::Elem,
}

impl<F: Field> DrinfeldModule<F> {
    pub fn new(map: AFieldMap<F>, g: F::Elem, delta: F::Elem) -> Result<DrinfeldModule<F>> {
        if map.field.is_zero(&delta) {
            return Err(Error::pre("Delta must be nonzero for a rank-2 module"));
        }
        Ok(DrinfeldModule { map, g, delta })
    }

    /// The Legendre module `phi_T = T - (T + Delta) tau + Delta tau^2`,
    /// which has 1 in the kernel of `phi_T`.
    pub fn legendre(map: AFieldMap<F>, delta: F::Elem) -> Result<DrinfeldModule<F>> {
        let f = map.field.clone();
        let g = f.neg(&f.add(&map.t_image, &delta));
        DrinfeldModule::new(map, g, delta)
    }

    pub fn map(&self) -> &AFieldMap<F> {
        &self.map
    }

    pub fn field(&self) -> &F {
        &self.map.field
    }

    pub fn g(&self) -> &F::Elem {
        &self.g
    }

    pub fn delta(&self) -> &F::Elem {
        &self.delta
    }

    pub fn phi_t(&self) -> SkewPoly<F> {
        SkewPoly::new(
            &self.map.field,
            vec![self.map.t_image.clone(), self.g.clone(), self.delta.clone()],
        )
    }

    /// `phi_a = sum a_i phi_T^i`, by Horner's rule in L{tau}.
    pub fn phi_of(&self, a: &FqPoly) -> SkewPoly<F> {
        let f = &self.map.field;
        let phi_t = self.phi_t();
        let mut acc = SkewPoly::zero(f);
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(&phi_t).expect("same field");
            acc = acc
                .add(&SkewPoly::constant(f, f.from_base(c)))
                .expect("same field");
        }
        acc
    }

    /// `g^(q+1) / Delta`.
    pub fn j_invariant(&self) -> F::Elem {
        let f = &self.map.field;
        let q = f.base().q();
        f.div(&f.pow(&self.g, q + 1), &self.delta)
            .expect("Delta is nonzero")
    }
}

impl DrinfeldModule<RatFuncField> {
    /// Reduce a module with g, Delta in A modulo the prime p.
    pub fn reduce_at(&self, p: &FqPoly) -> Result<DrinfeldModule<ExtField>> {
        if !self.g.is_integral() || !self.delta.is_integral() {
            return Err(Error::pre("reduction needs g and Delta in A"));
        }
        let k = &self.map.field;
        let map = AFieldMap::residue(k, p)?;
        let l = map.field.clone();
        let delta = l.from_poly(self.delta.num());
        if l.is_zero(&delta) {
            return Err(Error::BadReduction {
                prime: poly_to_string(k.base(), p),
            });
        }
        let g = l.from_poly(self.g.num());
        DrinfeldModule::new(map, g, delta)
    }

    /// Membership in F*_delta: `v(j) < -q` and
    /// `v(delta) (q^2 - q) = v(g) - v(Delta)`.
    pub fn f_star_check(&self, delta_root: &RatFunc) -> bool {
        let q = self.map.field.q() as i64;
        let vj = self.j_invariant().valuation();
        if vj >= Valuation::Finite(-q) {
            return false;
        }
        match (
            self.g.valuation(),
            self.delta.valuation(),
            delta_root.valuation(),
        ) {
            (Valuation::Finite(vg), Valuation::Finite(vd), Valuation::Finite(v)) => {
                Ratio::from_integer(v) == Ratio::new(vg - vd, q * q - q)
            }
            _ => false,
        }
    }
}

impl DrinfeldModule<ExtField> {
    /// Whether `ker phi_p = 0` over the closure, i.e. `phi_p` is purely
    /// inseparable: tau-valuation `2 deg p` (height 2) rather than
    /// `deg p` (height 1).
    pub fn is_supersingular(&self) -> Result<bool> {
        let p = self
            .map
            .prime
            .as_ref()
            .ok_or_else(|| Error::pre("module has generic characteristic"))?;
        let f = &self.map.field;
        if !f.is_zero(&self.map.apply(p)) {
            return Err(Error::pre("the A-field map does not kill the prime"));
        }
        let n = p.degree().unwrap_or(0);
        match self.phi_of(p).tau_valuation() {
            Some(v) if v == 2 * n => Ok(true),
            Some(v) if v == n => Ok(false),
            other => Err(Error::internal(format!(
                "tau-valuation {other:?} of phi_p is neither {n} nor {}",
                2 * n
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ext::Embedding;
    use crate::algebra::field::make_context;

    fn k(p: u64) -> RatFuncField {
        RatFuncField::new(make_context(p, 1).unwrap())
    }

    #[test]
    fn phi_of_generator_and_constants() {
        let k = k(2);
        let dm = DrinfeldModule::new(AFieldMap::generic(&k), k.t(), k.one()).unwrap();
        assert_eq!(dm.phi_of(&k.ring().t()), dm.phi_t());
        let c = FqPoly::one();
        assert_eq!(dm.phi_of(&c), SkewPoly::one(&k));
        let t2 = dm.phi_of(&FqPoly::t_pow(2));
        assert_eq!(t2.degree(), Some(4));
        assert_eq!(t2.coeff(0), k.pow(&k.t(), 2));
        assert_eq!(t2, dm.phi_t().mul(&dm.phi_t()).unwrap());
    }

    #[test]
    fn j_invariants() {
        let k = k(2);
        let zero_g = DrinfeldModule::new(AFieldMap::generic(&k), k.zero(), k.one()).unwrap();
        assert_eq!(zero_g.j_invariant(), k.zero());
        let leg = DrinfeldModule::legendre(AFieldMap::generic(&k), k.one()).unwrap();
        let t1 = k.add(&k.t(), &k.one());
        assert_eq!(leg.j_invariant(), k.pow(&t1, 3));
        assert_eq!(leg.phi_t().eval(&k.one()), k.zero());
        let j0 = k.add(&k.t(), &k.one());
        let m = DrinfeldModule::new(AFieldMap::generic(&k), k.one(), k.inv(&j0).unwrap()).unwrap();
        assert_eq!(m.j_invariant(), j0);
        assert!(DrinfeldModule::new(AFieldMap::generic(&k), k.one(), k.zero()).is_err());
    }

    #[test]
    fn reductions() {
        let k = k(2);
        let r = k.ring();
        let p = r.from_ints(&[1, 1, 1]);
        let m = DrinfeldModule::new(
            AFieldMap::generic(&k),
            k.from_poly(FqPoly::t_pow(3)),
            k.from_poly(r.from_ints(&[1, 1])),
        )
        .unwrap();
        let red = m.reduce_at(&p).unwrap();
        let l = red.field();
        assert_eq!(*red.g(), l.one());
        // T + 1 is already reduced modulo T^2 + T + 1.
        assert_eq!(*red.delta(), l.add(&l.generator(), &l.one()));
        let leg_t = DrinfeldModule::legendre(AFieldMap::generic(&k), k.t()).unwrap();
        assert!(matches!(
            leg_t.reduce_at(&r.t()),
            Err(Error::BadReduction { .. })
        ));
    }

    #[test]
    fn supersingularity_examples() {
        let k = k(2);
        let r = k.ring();
        let p = r.from_ints(&[1, 1, 1]);
        let leg = DrinfeldModule::legendre(AFieldMap::generic(&k), k.one()).unwrap();
        assert!(leg.reduce_at(&p).unwrap().is_supersingular().unwrap());
        let j0 = DrinfeldModule::new(AFieldMap::generic(&k), k.zero(), k.one()).unwrap();
        assert!(j0.reduce_at(&r.t()).unwrap().is_supersingular().unwrap());
        let map = AFieldMap::residue(&k, &p).unwrap();
        let l = map.field().clone();
        // j = 1 is the supersingular value here; 1/u is not.
        let ordinary = DrinfeldModule::new(map, l.one(), l.generator()).unwrap();
        assert!(!ordinary.is_supersingular().unwrap());
    }

    #[test]
    fn kernel_counts_match_supersingularity() {
        let k = k(2);
        let r = k.ring();
        for p in [r.t(), r.from_ints(&[1, 1]), r.from_ints(&[1, 1, 1])] {
            let m_field = ExtField::new(k.base(), 6).unwrap();
            let map = AFieldMap::residue(&k, &p).unwrap();
            let l = map.field().clone();
            let emb = Embedding::new(&l, &m_field).unwrap();
            for delta in l.elements().skip(1) {
                for g in l.elements() {
                    let dm = DrinfeldModule::new(map.clone(), g, delta).unwrap();
                    let phi_p = dm.phi_of(&p);
                    let roots = phi_p.count_roots_in(&emb).unwrap();
                    let dim = phi_p.kernel_dim_closure().unwrap();
                    assert_eq!(roots, 2u64.pow(dim as u32));
                    assert_eq!(roots == 1, dm.is_supersingular().unwrap());
                }
            }
        }
    }

    #[test]
    fn f_star_examples() {
        let k = k(2);
        let r = k.ring();
        let t2 = k.from_poly(FqPoly::t_pow(2));
        let a = DrinfeldModule::legendre(AFieldMap::generic(&k), t2).unwrap();
        assert!(a.f_star_check(&k.one()));
        let b = DrinfeldModule::legendre(AFieldMap::generic(&k), k.t()).unwrap();
        assert!(!b.f_star_check(&k.one()));
        let c = DrinfeldModule::legendre(AFieldMap::generic(&k), k.one()).unwrap();
        assert!(!c.f_star_check(&k.one()));
        let _ = r;
    }
}
