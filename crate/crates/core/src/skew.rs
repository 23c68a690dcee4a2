//! Skew polynomials `S[X; sigma]` with `X a = sigma(a) X`, acting on `S`
//! by `f(x) = a_0 x + a_1 sigma(x) + ...`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extension::GaloisExtension;
use crate::rings::Elem;

/// Coefficients low to high, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    pub coeffs: Vec<Elem>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> SkewPoly {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> SkewPoly {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one(ext: &GaloisExtension) -> SkewPoly {
        SkewPoly::new(vec![ext.ring().one()])
    }

    /// `X`.
    pub fn x(ext: &GaloisExtension) -> SkewPoly {
        SkewPoly::new(vec![ext.ring().zero(), ext.ring().one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self, ext: &GaloisExtension) -> bool {
        self.coeffs.last() == Some(&ext.ring().one())
    }

    pub fn add(&self, ext: &GaloisExtension, other: &SkewPoly) -> SkewPoly {
        let s = ext.ring();
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Elem], i: usize| v.get(i).copied().unwrap_or_else(|| s.zero());
        SkewPoly::new((0..n).map(|i| s.add(&get(&self.coeffs, i), &get(&other.coeffs, i))).collect())
    }

    pub fn mul(&self, ext: &GaloisExtension, other: &SkewPoly) -> SkewPoly {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero();
        }
        let s = ext.ring();
        let mut out = vec![s.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = s.add(&out[i + j], &s.mul(a, &ext.frobenius(b, i as i64)));
            }
        }
        SkewPoly::new(out)
    }

    pub fn evaluate(&self, ext: &GaloisExtension, x: &Elem) -> Elem {
        let s = ext.ring();
        self.coeffs.iter().enumerate().fold(s.zero(), |acc, (i, a)| s.add(&acc, &s.mul(a, &ext.frobenius(x, i as i64))))
    }

    pub fn evaluate_vec(&self, ext: &GaloisExtension, u: &[Elem]) -> Vec<Elem> {
        u.iter().map(|x| self.evaluate(ext, x)).collect()
    }
}

/// A monic skew polynomial of degree `r` vanishing on `u`, built from the
/// canonical free envelope of the support.
pub fn annihilator(ext: &GaloisExtension, u: &[Elem], r: usize) -> Result<SkewPoly> {
    if ext.vector_rank(u) > r {
        return Err(Error::RankExceeds);
    }
    let s = ext.ring();
    let m = ext.degree();
    if r >= m {
        // sigma^m is the identity, so X^r - X^(r - m) kills everything
        let mut c = vec![s.zero(); r + 1];
        c[r] = s.one();
        c[r - m] = s.sub(&c[r - m], &s.one());
        return Ok(SkewPoly::new(c));
    }
    let envelope = ext.support_envelope(u, r)?;
    let mut f = SkewPoly::one(ext);
    for b in &envelope {
        let v = f.evaluate(ext, b);
        let inv = s.invert_unit(&v).map_err(|_| Error::Inconclusive)?;
        let shift = s.mul(&ext.frobenius(&v, 1), &inv);
        let factor = SkewPoly::new(vec![s.neg(&shift), s.one()]);
        f = factor.mul(ext, &f);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::ChainRing;
    use proptest::prelude::*;

    fn z8_ext() -> GaloisExtension {
        GaloisExtension::build(&ChainRing::zpk(2, 3).unwrap(), 3).unwrap()
    }

    fn z4_ext() -> GaloisExtension {
        GaloisExtension::build(&ChainRing::zpk(2, 2).unwrap(), 2).unwrap()
    }

    fn worked_u(ext: &GaloisExtension) -> Vec<Elem> {
        vec![ext.from_ints(&[2, 0, 6]).unwrap(), ext.ring().zero(), ext.from_ints(&[4, 0, 4]).unwrap()]
    }

    #[test]
    fn multiplication_rule() {
        let ext = z8_ext();
        let a = ext.from_ints(&[3, 5, 1]).unwrap();
        let x = SkewPoly::x(&ext);
        let left = x.mul(&ext, &SkewPoly::new(vec![a]));
        let right = SkewPoly::new(vec![ext.frobenius(&a, 1)]).mul(&ext, &x);
        assert_eq!(left, right);
        let f = SkewPoly::new(vec![a, ext.alpha()]);
        assert_eq!(f.mul(&ext, &SkewPoly::one(&ext)), f);
        assert_eq!(x.evaluate(&ext, &a), ext.frobenius(&a, 1));
    }

    #[test]
    fn eight_monic_annihilators_include_ours() {
        let ext = z8_ext();
        let u = worked_u(&ext);
        let f = annihilator(&ext, &u, 1).unwrap();
        assert_eq!(f.degree(), Some(1));
        assert!(f.is_monic(&ext));
        assert!(f.evaluate_vec(&ext, &u).iter().all(Elem::is_zero));
        let w = ext.coords(&f.coeffs[0]);
        let w: Vec<u32> = w.iter().map(|c| c.coeff(0)).collect();
        assert!([3, 7].contains(&w[0]) && [0, 4].contains(&w[1]) && [3, 7].contains(&w[2]), "{w:?}");
        // the fixed example w = 3 + 3a^2
        let g = SkewPoly::new(vec![ext.from_ints(&[3, 0, 3]).unwrap(), ext.ring().one()]);
        assert!(g.evaluate_vec(&ext, &u).iter().all(Elem::is_zero));
    }

    #[test]
    fn trivial_annihilators() {
        let ext = z8_ext();
        let zero = vec![ext.ring().zero(); 2];
        assert_eq!(annihilator(&ext, &zero, 0).unwrap(), SkewPoly::one(&ext));
        let u = [ext.ring().one(), ext.alpha()];
        assert_eq!(annihilator(&ext, &u, 1), Err(Error::RankExceeds));
        let f = annihilator(&ext, &u, 4).unwrap();
        assert!(f.is_monic(&ext) && f.degree() == Some(4));
        assert!(f.evaluate_vec(&ext, &u).iter().all(Elem::is_zero));
    }

    #[test]
    fn free_support_annihilator_is_unique() {
        let ext = z4_ext();
        let s = ext.ring();
        // support spanned by 1 and alpha is free of rank 2 = m; use rank-1 free supports
        for x in s.elements().filter(|x| s.is_unit(x)) {
            let u = [x, s.mul(&x, &s.from_int(3)), s.zero()];
            let f = annihilator(&ext, &u, 1).unwrap();
            let all: Vec<Elem> = s
                .elements()
                .filter(|w| {
                    let g = SkewPoly::new(vec![*w, s.one()]);
                    g.evaluate_vec(&ext, &u).iter().all(Elem::is_zero)
                })
                .collect();
            assert_eq!(all, vec![f.coeffs[0]]);
        }
    }

    fn elem3() -> impl Strategy<Value = [i64; 3]> {
        [0i64..8, 0i64..8, 0i64..8]
    }

    proptest! {
        #[test]
        fn associativity_and_composition(a in proptest::collection::vec(elem3(), 9), x in elem3()) {
            let ext = z8_ext();
            let e: Vec<Elem> = a.iter().map(|c| ext.from_ints(c).unwrap()).collect();
            let f = SkewPoly::new(e[0..3].to_vec());
            let g = SkewPoly::new(e[3..6].to_vec());
            let h = SkewPoly::new(e[6..9].to_vec());
            prop_assert_eq!(f.mul(&ext, &g).mul(&ext, &h), f.mul(&ext, &g.mul(&ext, &h)));
            let x = ext.from_ints(&x).unwrap();
            prop_assert_eq!(f.mul(&ext, &g).evaluate(&ext, &x), f.evaluate(&ext, &g.evaluate(&ext, &x)));
        }

        #[test]
        fn annihilator_vanishes(u in proptest::collection::vec(elem3(), 1..4), r in 0usize..4) {
            let ext = z8_ext();
            let u: Vec<Elem> = u.iter().map(|c| ext.from_ints(c).unwrap()).collect();
            match annihilator(&ext, &u, r) {
                Ok(f) => {
                    prop_assert!(f.is_monic(&ext) && f.degree() == Some(r));
                    prop_assert!(f.evaluate_vec(&ext, &u).iter().all(Elem::is_zero));
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::RankExceeds);
                    prop_assert!(ext.vector_rank(&u) > r);
                }
            }
        }
    }
}
