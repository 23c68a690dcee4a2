//! Galois extensions `S = R[X]/(h)` of `R = Z/p^k`, the Frobenius generator
//! `sigma: a -> a^q`, and vector rank over `R`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, combinations, Matrix};
use crate::rings::{ChainRing, Elem, RingKind};

#[derive(Clone, Debug)]
pub struct GaloisExtension {
    base: ChainRing,
    ring: ChainRing,
    m: usize,
    modulus: Vec<Elem>,
    alpha: Elem,
    /// `frob[l][i]` = `sigma^l(alpha^i)`.
    frob: Vec<Vec<Elem>>,
}

/// The smallest primitive polynomial of degree `m` over `F_p`, comparing
/// coefficients from the top degree down.
pub fn primitive_polynomial(p: u64, m: usize) -> Result<Vec<u64>> {
    let count = p.checked_pow(m as u32).ok_or(Error::TooLarge)?;
    let order = count - 1;
    let factors = prime_factors(order);
    for idx in 0..count {
        let mut f = vec![0u64; m + 1];
        let mut t = idx;
        for i in 0..m {
            f[i] = t % p;
            t /= p;
        }
        f[m] = 1;
        if f[0] == 0 && m > 1 {
            continue;
        }
        if m == 1 {
            // X + c with -c a generator of F_p^*
            let root = (p - f[0]) % p;
            if root != 0 && factors.iter().all(|&l| powmod_int(root, order / l, p) != 1) {
                return Ok(f);
            }
            continue;
        }
        let x = vec![0, 1];
        if poly_powmod(&x, order, &f, p) == [1] && factors.iter().all(|&l| poly_powmod(&x, order / l, &f, p) != [1]) {
            return Ok(f);
        }
    }
    Err(Error::InvalidRing("no primitive polynomial".into()))
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

fn powmod_int(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let d = f.len() - 1;
    for i in (d..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        for j in 0..=d {
            prod[i - d + j] = (prod[i - d + j] + (p - c) * f[j]) % p;
        }
    }
    prod.truncate(d.max(1));
    poly_trim(prod)
}

fn poly_powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

impl GaloisExtension {
    /// Degree-`m` extension built from the smallest primitive polynomial,
    /// lifted to a divisor of `X^(q^m - 1) - 1`.
    pub fn build(base: &ChainRing, m: usize) -> Result<GaloisExtension> {
        check_base(base, m)?;
        let (p, k) = (base.p(), base.k());
        let g = primitive_polynomial(p, m)?;
        if m == 1 {
            let root = base.teichmuller(&base.from_int(-(g[0] as i64)));
            return GaloisExtension::assemble(base, base.clone(), vec![base.neg(&root), base.one()], root);
        }
        // roots of the lift are the Teichmuller lifts of the roots of g
        let residue_lift = ChainRing::galois(p, k, &g)?;
        let big_q = residue_lift.q();
        let mut beta = residue_lift.alpha();
        for _ in 1..k {
            beta = residue_lift.pow(&beta, big_q);
        }
        let mut h = vec![residue_lift.one()];
        let mut root = beta;
        for _ in 0..m {
            let mut next = vec![residue_lift.zero(); h.len() + 1];
            for (i, c) in h.iter().enumerate() {
                next[i + 1] = residue_lift.add(&next[i + 1], c);
                next[i] = residue_lift.sub(&next[i], &residue_lift.mul(c, &root));
            }
            h = next;
            root = residue_lift.pow(&root, p);
        }
        let mut coeffs = Vec::with_capacity(m + 1);
        for c in &h {
            if (1..m).any(|i| c.coeff(i) != 0) {
                return Err(Error::InvalidRing("lifted modulus left the base ring".into()));
            }
            coeffs.push(c.coeff(0) as u64);
        }
        let ring = ChainRing::galois(p, k, &coeffs)?;
        let alpha = ring.alpha();
        let modulus = coeffs.iter().map(|&c| base.from_int(c as i64)).collect();
        GaloisExtension::assemble(base, ring, modulus, alpha)
    }

    /// Extension presented by an explicit monic modulus (low to high) that
    /// must divide `X^(q^m - 1) - 1` and be irreducible mod `p`.
    pub fn with_modulus(base: &ChainRing, modulus: &[i64]) -> Result<GaloisExtension> {
        let m = modulus.len().checked_sub(1).ok_or(Error::DimensionMismatch)?;
        check_base(base, m)?;
        let (p, k) = (base.p(), base.k());
        let h: Vec<Elem> = modulus.iter().map(|&c| base.from_int(c)).collect();
        let (ring, alpha) = if m == 1 {
            if h[1] != base.one() {
                return Err(Error::InvalidRing("modulus must be monic".into()));
            }
            (base.clone(), base.neg(&h[0]))
        } else {
            let coeffs: Vec<u64> = h.iter().map(|c| c.coeff(0) as u64).collect();
            let ring = ChainRing::galois(p, k, &coeffs)?;
            let alpha = ring.alpha();
            (ring, alpha)
        };
        let order = ring.q() - 1;
        if ring.pow(&alpha, order) != ring.one() || prime_factors(order).iter().any(|&l| ring.pow(&alpha, order / l) == ring.one()) {
            return Err(Error::InvalidRing("modulus root is not a primitive (q^m - 1)-th root of unity".into()));
        }
        GaloisExtension::assemble(base, ring, h, alpha)
    }

    fn assemble(base: &ChainRing, ring: ChainRing, modulus: Vec<Elem>, alpha: Elem) -> Result<GaloisExtension> {
        let m = modulus.len() - 1;
        let q = base.q();
        let mut frob = Vec::with_capacity(m);
        let mut images: Vec<Elem> = (0..m).map(|i| ring.pow(&alpha, i as u64)).collect();
        for _ in 0..m {
            frob.push(images.clone());
            images = images.iter().map(|x| ring.pow(x, q)).collect();
        }
        Ok(GaloisExtension { base: base.clone(), ring, m, modulus, alpha, frob })
    }

    pub fn base(&self) -> &ChainRing {
        &self.base
    }

    /// `S` itself, as a chain ring.
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// `h`, low to high.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn embed(&self, c: &Elem) -> Elem {
        if self.m == 1 {
            *c
        } else {
            self.ring.from_int(c.coeff(0) as i64)
        }
    }

    /// Coordinates in the basis `1, alpha, ..., alpha^(m-1)`.
    pub fn coords(&self, x: &Elem) -> Vec<Elem> {
        if self.m == 1 {
            return vec![*x];
        }
        (0..self.m).map(|i| self.base.from_int(x.coeff(i) as i64)).collect()
    }

    pub fn from_coords(&self, c: &[Elem]) -> Result<Elem> {
        if c.len() != self.m {
            return Err(Error::DimensionMismatch);
        }
        Ok(c.iter().enumerate().fold(self.ring.zero(), |acc, (i, x)| self.ring.add(&acc, &self.ring.mul(&self.embed(x), &self.frob[0][i]))))
    }

    pub fn from_ints(&self, c: &[i64]) -> Result<Elem> {
        self.from_coords(&c.iter().map(|&v| self.base.from_int(v)).collect::<Vec<_>>())
    }

    /// `sigma^l(x)`; negative `l` gives inverse powers.
    pub fn frobenius(&self, x: &Elem, l: i64) -> Elem {
        let l = l.rem_euclid(self.m as i64) as usize;
        self.coords(x)
            .iter()
            .zip(&self.frob[l])
            .fold(self.ring.zero(), |acc, (c, img)| self.ring.add(&acc, &self.ring.mul(&self.embed(c), img)))
    }

    /// `m x n`; column `j` holds the coordinates of `u_j`.
    pub fn matrix_representation(&self, u: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = u.iter().map(|x| self.coords(x)).collect();
        let rows = (0..self.m).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zero(self.m, 0))
    }

    /// Minimal number of generators of the `R`-span of the entries.
    pub fn vector_rank(&self, u: &[Elem]) -> usize {
        linalg::rank(&self.base, &self.matrix_representation(u))
    }

    /// Smith-canonical generators of the support.
    pub fn vector_support(&self, u: &[Elem]) -> Vec<Elem> {
        let a = self.matrix_representation(u);
        let s = linalg::smith_normal_form(&self.base, &a);
        (0..s.rank())
            .map(|i| {
                let d = s.d[(i, i)];
                let col: Vec<Elem> = s.u.col(i).iter().map(|x| self.base.mul(x, &d)).collect();
                self.from_coords(&col).expect("m coordinates")
            })
            .collect()
    }

    /// Free envelope of rank `r` of the support, as elements of `S`.
    pub fn support_envelope(&self, u: &[Elem], r: usize) -> Result<Vec<Elem>> {
        let rows = self.matrix_representation(u).transpose();
        let env = linalg::free_envelope(&self.base, &rows, r)?;
        Ok((0..r).map(|i| self.from_coords(env.row(i)).expect("m coordinates")).collect())
    }
}

fn check_base(base: &ChainRing, m: usize) -> Result<()> {
    if base.kind() != RingKind::IntegerModulus {
        return Err(Error::InvalidRing("extensions are built over Z/p^k".into()));
    }
    if m == 0 {
        return Err(Error::InvalidRing("degree must be positive".into()));
    }
    Ok(())
}

/// All `r x r` minors of `b`, keyed by column subset, scaled so the first
/// unit minor is 1.
pub fn plucker_coordinates(r: &ChainRing, b: &Matrix) -> Result<Vec<(Vec<usize>, Elem)>> {
    if !linalg::rows_are_free(r, b) {
        return Err(Error::NotFree);
    }
    let rows: Vec<usize> = (0..b.rows()).collect();
    let mut coords: Vec<(Vec<usize>, Elem)> = combinations(b.cols(), b.rows()).into_iter().map(|cols| {
        let v = linalg::minor(r, b, &rows, &cols);
        (cols, v)
    }).collect();
    if let Some((_, u)) = coords.iter().find(|(_, v)| r.is_unit(v)) {
        let inv = r.invert_unit(u)?;
        for (_, v) in coords.iter_mut() {
            *v = r.mul(v, &inv);
        }
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z8_ext() -> GaloisExtension {
        GaloisExtension::build(&ChainRing::zpk(2, 3).unwrap(), 3).unwrap()
    }

    #[test]
    fn cubic_extension_of_z8() {
        assert_eq!(primitive_polynomial(2, 3).unwrap(), vec![1, 1, 0, 1]);
        let ext = z8_ext();
        let r = ext.base();
        assert_eq!(ext.modulus(), &[r.from_int(7), r.from_int(5), r.from_int(6), r.one()]);
        let s = ext.ring();
        let a = ext.alpha();
        assert_eq!(s.pow(&a, 7), s.one());
        assert!((1..7).all(|i| s.pow(&a, i) != s.one()));
        assert_eq!(ext.frobenius(&a, 1), s.pow(&a, 2));
        assert_eq!(s.pow(&a, 3), ext.from_ints(&[1, 3, 2]).unwrap());
        let same = GaloisExtension::with_modulus(r, &[7, 5, 6, 1]).unwrap();
        assert_eq!(same.modulus(), ext.modulus());
        assert!(GaloisExtension::with_modulus(r, &[1, 1, 0, 1]).is_err());
    }

    #[test]
    fn degree_one_is_base() {
        let z8 = ChainRing::zpk(2, 3).unwrap();
        let ext = GaloisExtension::build(&z8, 1).unwrap();
        assert_eq!(ext.ring(), &z8);
        for x in z8.elements() {
            assert_eq!(ext.frobenius(&x, 1), x);
        }
        let z9 = ChainRing::zpk(3, 2).unwrap();
        let ext = GaloisExtension::build(&z9, 1).unwrap();
        let s = ext.ring();
        assert_eq!(s.pow(&ext.alpha(), 2), s.one());
        assert_ne!(ext.alpha(), s.one());
    }

    #[test]
    fn quadratic_extension_of_z4() {
        let ext = GaloisExtension::build(&ChainRing::zpk(2, 2).unwrap(), 2).unwrap();
        let s = ext.ring();
        let a = ext.alpha();
        assert_eq!(s.pow(&a, 3), s.one());
        assert_ne!(a, s.one());
        // h reduces to the chosen g and its root order is exhaustively 3
        let g = primitive_polynomial(2, 2).unwrap();
        for (h, g) in ext.modulus().iter().zip(&g) {
            assert_eq!(h.coeff(0) as u64 % 2, *g);
        }
        let order = (1..=15).find(|&i| s.pow(&a, i) == s.one()).unwrap();
        assert_eq!(order, 3);
    }

    #[test]
    fn rank_examples() {
        let ext = z8_ext();
        let u = [ext.from_ints(&[2, 0, 6]).unwrap(), ext.ring().zero(), ext.from_ints(&[4, 0, 4]).unwrap()];
        assert_eq!(ext.vector_rank(&u), 1);
        let a = ext.alpha();
        let s = ext.ring();
        assert_eq!(ext.vector_rank(&[s.one(), a, s.mul(&a, &a)]), 3);
        assert_eq!(ext.vector_rank(&[s.zero(), s.zero()]), 0);
        assert!(ext.matrix_representation(&[s.zero(); 2]).is_zero());
        let support = ext.vector_support(&u);
        assert_eq!(support.len(), 1);
        let env = ext.support_envelope(&u, 1).unwrap();
        assert_eq!(ext.vector_rank(&[env[0]]), 1);
    }

    #[test]
    fn plucker_examples() {
        let z8 = ChainRing::zpk(2, 3).unwrap();
        let b = Matrix::from_ints(&z8, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let c = plucker_coordinates(&z8, &b).unwrap();
        assert_eq!(c.iter().map(|(_, v)| *v).collect::<Vec<_>>(), vec![z8.one(), z8.zero(), z8.zero()]);
        let b = Matrix::from_ints(&z8, &[&[1, 0, 2]]).unwrap();
        let c = plucker_coordinates(&z8, &b).unwrap();
        assert_eq!(c.iter().map(|(_, v)| *v).collect::<Vec<_>>(), vec![z8.one(), z8.zero(), z8.from_int(2)]);
        let b = Matrix::from_ints(&z8, &[&[2, 0, 4]]).unwrap();
        assert_eq!(plucker_coordinates(&z8, &b), Err(Error::NotFree));
    }

    fn ext_elem() -> impl Strategy<Value = [i64; 3]> {
        [0i64..8, 0i64..8, 0i64..8]
    }

    proptest! {
        #[test]
        fn frobenius_is_an_automorphism(a in ext_elem(), b in ext_elem(), c in 0i64..8) {
            let ext = z8_ext();
            let s = ext.ring();
            let (x, y) = (ext.from_ints(&a).unwrap(), ext.from_ints(&b).unwrap());
            prop_assert_eq!(ext.frobenius(&s.add(&x, &y), 1), s.add(&ext.frobenius(&x, 1), &ext.frobenius(&y, 1)));
            prop_assert_eq!(ext.frobenius(&s.mul(&x, &y), 1), s.mul(&ext.frobenius(&x, 1), &ext.frobenius(&y, 1)));
            prop_assert_eq!(ext.frobenius(&x, 3), x);
            prop_assert_eq!(ext.frobenius(&ext.frobenius(&x, 2), -2), x);
            let base = ext.embed(&ext.base().from_int(c));
            prop_assert_eq!(ext.frobenius(&base, 1), base);
        }

        #[test]
        fn plucker_unique_up_to_unit(rows in proptest::collection::vec(0i64..8, 6), q in prop::sample::select(vec![1i64, 3, 5, 7]), t in 0i64..8) {
            let z8 = ChainRing::zpk(2, 3).unwrap();
            let b = Matrix::from_ints(&z8, &[&rows[0..3], &rows[3..6]]).unwrap();
            prop_assume!(linalg::rows_are_free(&z8, &b));
            let change = Matrix::from_ints(&z8, &[&[q, t], &[0, 1]]).unwrap();
            let b2 = linalg::mul(&z8, &change, &b).unwrap();
            let c1 = plucker_coordinates(&z8, &b).unwrap();
            let c2 = plucker_coordinates(&z8, &b2).unwrap();
            prop_assert!(c1.iter().any(|(_, v)| z8.is_unit(v)));
            prop_assert_eq!(c1, c2);
        }

        #[test]
        fn rank_bound_matches_envelope(a in ext_elem(), b in ext_elem(), c in ext_elem(), r in 0usize..4) {
            let ext = z8_ext();
            let u = [ext.from_ints(&a).unwrap(), ext.from_ints(&b).unwrap(), ext.from_ints(&c).unwrap()];
            let rk = ext.vector_rank(&u);
            prop_assert_eq!(rk <= r, ext.support_envelope(&u, r).is_ok());
        }
    }
}
