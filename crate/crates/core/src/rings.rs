//! Finite chain rings `Z/p^k` and Galois rings `GR(p^k, r)`, plus explicit
//! products of chain rings (finite principal ideal rings).
//!
//! Elements are plain values ([`Elem`]); all arithmetic goes through the ring
//! descriptor, which owns the modulus and the cached Teichmüller set.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported Galois rank.
pub const MAX_RANK: usize = 8;

const MAX_CHAR: u64 = 1 << 31;
const MAX_RESIDUE_FIELD: u64 = 1 << 20;

/// An element of a chain ring: its coordinate vector in the basis
/// `1, a, ..., a^(r-1)`, each coordinate in `[0, p^k)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    c: [u32; MAX_RANK],
}

impl Elem {
    pub const ZERO: Elem = Elem { c: [0; MAX_RANK] };

    pub fn coeff(&self, i: usize) -> u32 {
        self.c[i]
    }

    pub fn coeffs(&self) -> &[u32; MAX_RANK] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn scalar(v: u64) -> Elem {
        let mut c = [0; MAX_RANK];
        c[0] = v as u32;
        Elem { c }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.c.iter().rposition(|&x| x != 0).unwrap_or(0);
        if last == 0 {
            write!(f, "{}", self.c[0])
        } else {
            f.debug_list().entries(&self.c[..=last]).finish()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    /// `Z/p^k`.
    IntegerModulus,
    /// `Z/p^k [X] / (h)` with `h` monic and irreducible mod `p`.
    Galois,
}

/// Descriptor of a finite chain ring.
///
/// The maximal ideal is generated by `p` in both kinds, so the nilpotency
/// index equals `k`.
#[derive(Clone, Debug)]
pub struct ChainRing {
    kind: RingKind,
    p: u64,
    k: u32,
    r: usize,
    pk: u64,
    modulus: Vec<u64>,
    q: u64,
    teich: Vec<Elem>,
    teich_by_residue: Vec<u32>,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for ChainRing {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Remainder of `a` modulo the monic `m` over `F_p`, coefficients low to high.
fn poly_rem_mod_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a: Vec<u64> = a.iter().map(|&x| x % p).collect();
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.pop().unwrap_or(0);
        if top != 0 {
            let off = a.len() - dm;
            for i in 0..dm {
                a[off + i] = (a[off + i] + p - (top * (m[i] % p)) % p) % p;
            }
        }
    }
    a
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree at most `deg/2`.
pub(crate) fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push(t % p);
                t /= p;
            }
            g.push(1);
            if poly_rem_mod_p(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl ChainRing {
    /// `Z/p^k`.
    pub fn zpk(p: u64, k: u32) -> Result<ChainRing> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(alloc::format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidRing("exponent must be positive".into()));
        }
        let pk = checked_pow(p, k).filter(|&v| v <= MAX_CHAR).ok_or(Error::TooLarge)?;
        let mut ring = ChainRing {
            kind: RingKind::IntegerModulus,
            p,
            k,
            r: 1,
            pk,
            modulus: vec![0, 1],
            q: p,
            teich: Vec::new(),
            teich_by_residue: Vec::new(),
        };
        ring.build_teichmuller();
        Ok(ring)
    }

    /// `GR(p^k, r)` presented by a monic modulus (coefficients low to high,
    /// length `r + 1`) that is irreducible modulo `p`.
    pub fn galois(p: u64, k: u32, modulus: &[u64]) -> Result<ChainRing> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(alloc::format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidRing("exponent must be positive".into()));
        }
        let pk = checked_pow(p, k).filter(|&v| v <= MAX_CHAR).ok_or(Error::TooLarge)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidRing("modulus must have degree at least 1".into()));
        }
        let r = modulus.len() - 1;
        if r > MAX_RANK {
            return Err(Error::InvalidRing(alloc::format!("rank {r} exceeds {MAX_RANK}")));
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % pk).collect();
        if modulus[r] != 1 {
            return Err(Error::InvalidRing("modulus must be monic".into()));
        }
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(Error::InvalidRing("modulus is reducible modulo p".into()));
        }
        let q = checked_pow(p, r as u32).filter(|&v| v <= MAX_RESIDUE_FIELD).ok_or(Error::TooLarge)?;
        let mut ring = ChainRing {
            kind: RingKind::Galois,
            p,
            k,
            r,
            pk,
            modulus,
            q,
            teich: Vec::new(),
            teich_by_residue: Vec::new(),
        };
        ring.build_teichmuller();
        Ok(ring)
    }

    /// `GR(p^k, r)` with the smallest monic modulus irreducible mod `p`
    /// (coefficients compared from the top degree down).
    pub fn galois_default(p: u64, k: u32, r: usize) -> Result<ChainRing> {
        if r == 1 {
            return ChainRing::zpk(p, k);
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(alloc::format!("{p} is not prime")));
        }
        let count = checked_pow(p, r as u32).ok_or(Error::TooLarge)?;
        for idx in 0..count {
            let mut f = vec![0u64; r + 1];
            let mut t = idx;
            for i in 0..r {
                f[i] = t % p;
                t /= p;
            }
            f[r] = 1;
            if is_irreducible_mod_p(&f, p) {
                return ChainRing::galois(p, k, &f);
            }
        }
        Err(Error::InvalidRing("no irreducible polynomial found".into()))
    }

    fn build_teichmuller(&mut self) {
        // a^(q^(k-1)) depends only on a mod p and is fixed by x -> x^q.
        let q = self.q;
        let mut by_residue = Vec::with_capacity(q as usize);
        for idx in 0..q {
            let mut a = self.residue_representative(idx);
            for _ in 1..self.k {
                a = self.pow(&a, q);
            }
            by_residue.push(a);
        }
        let mut sorted = by_residue.clone();
        sorted.sort();
        self.teich_by_residue = by_residue
            .iter()
            .map(|a| sorted.binary_search(a).expect("teichmuller element present") as u32)
            .collect();
        self.teich = sorted;
    }

    fn residue_representative(&self, mut idx: u64) -> Elem {
        let mut c = [0u32; MAX_RANK];
        for slot in c.iter_mut().take(self.r) {
            *slot = (idx % self.p) as u32;
            idx /= self.p;
        }
        Elem { c }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Nilpotency index of the maximal ideal.
    pub fn nu(&self) -> u32 {
        self.k
    }

    /// Galois rank (1 for `Z/p^k`).
    pub fn rank(&self) -> usize {
        self.r
    }

    /// Characteristic `p^k`.
    pub fn characteristic(&self) -> u64 {
        self.pk
    }

    /// Residue field size.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, low to high. `[0, 1]` for `Z/p^k`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        checked_pow(self.pk, self.r as u32)
    }

    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::scalar(1 % self.pk)
    }

    /// The canonical generator `p` of the maximal ideal.
    pub fn pi(&self) -> Elem {
        self.from_int(self.p as i64)
    }

    pub fn pi_pow(&self, l: u32) -> Elem {
        if l >= self.k {
            Elem::ZERO
        } else {
            Elem::scalar(checked_pow(self.p, l).unwrap_or(0))
        }
    }

    pub fn from_int(&self, v: i64) -> Elem {
        let m = self.pk as i64;
        Elem::scalar(v.rem_euclid(m) as u64)
    }

    /// Element with the given coordinates (reduced mod `p^k`).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() > self.r {
            return Err(Error::DimensionMismatch);
        }
        let m = self.pk as i64;
        let mut c = [0u32; MAX_RANK];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v.rem_euclid(m) as u32;
        }
        Ok(Elem { c })
    }

    /// Coordinates of `a` as a slice of length `r`.
    pub fn coords<'a>(&self, a: &'a Elem) -> &'a [u32] {
        &a.c[..self.r]
    }

    /// The generator `a = X mod h` of a Galois ring (`1` position for `Z/p^k`).
    pub fn alpha(&self) -> Elem {
        if self.r == 1 {
            return self.from_int(-(self.modulus[0] as i64));
        }
        let mut c = [0u32; MAX_RANK];
        c[1] = 1;
        Elem { c }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let mut c = [0u32; MAX_RANK];
        for (i, slot) in c.iter_mut().enumerate().take(self.r) {
            let s = a.c[i] as u64 + b.c[i] as u64;
            *slot = (if s >= self.pk { s - self.pk } else { s }) as u32;
        }
        Elem { c }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let mut c = [0u32; MAX_RANK];
        for (i, slot) in c.iter_mut().enumerate().take(self.r) {
            *slot = if a.c[i] == 0 { 0 } else { (self.pk - a.c[i] as u64) as u32 };
        }
        Elem { c }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let pk = self.pk;
        if self.r == 1 {
            return Elem::scalar((a.c[0] as u64 * b.c[0] as u64) % pk);
        }
        let r = self.r;
        let mut prod = [0u64; 2 * MAX_RANK];
        for i in 0..r {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + a.c[i] as u64 * b.c[j] as u64) % pk;
            }
        }
        for d in (r..2 * r - 1).rev() {
            let t = prod[d];
            if t == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..r {
                let sub = (t * self.modulus[i]) % pk;
                prod[d - r + i] = (prod[d - r + i] + pk - sub) % pk;
            }
        }
        let mut c = [0u32; MAX_RANK];
        for i in 0..r {
            c[i] = prod[i] as u32;
        }
        Elem { c }
    }

    pub fn scale_int(&self, a: &Elem, s: u64) -> Elem {
        let s = s % self.pk;
        let mut c = [0u32; MAX_RANK];
        for (i, slot) in c.iter_mut().enumerate().take(self.r) {
            *slot = ((a.c[i] as u64 * s) % self.pk) as u32;
        }
        Elem { c }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn int_valuation(&self, mut v: u64) -> u32 {
        if v == 0 {
            return self.k;
        }
        let mut l = 0;
        while v.is_multiple_of(self.p) {
            v /= self.p;
            l += 1;
        }
        l
    }

    /// The unique `l` in `[0, nu]` with `c = p^l * unit`; `nu` for zero.
    pub fn valuation(&self, c: &Elem) -> u32 {
        (0..self.r).map(|i| self.int_valuation(c.c[i] as u64)).min().unwrap_or(self.k)
    }

    pub fn is_unit(&self, c: &Elem) -> bool {
        (0..self.r).any(|i| !(c.c[i] as u64).is_multiple_of(self.p))
    }

    /// `u` with `c = p^val(c) * u`; the coordinates of `u` are the exact
    /// quotients `c_i / p^l`, the lexicographically smallest choice.
    pub fn unit_part(&self, c: &Elem) -> Result<Elem> {
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        let l = self.valuation(c);
        Ok(self.div_pi_pow_exact(c, l))
    }

    /// Coordinatewise exact division by `p^l`. Callers guarantee divisibility.
    pub(crate) fn div_pi_pow_exact(&self, c: &Elem, l: u32) -> Elem {
        let d = checked_pow(self.p, l).unwrap_or(1);
        let mut out = [0u32; MAX_RANK];
        for i in 0..self.r {
            debug_assert_eq!(c.c[i] as u64 % d, 0);
            out[i] = (c.c[i] as u64 / d) as u32;
        }
        Elem { c: out }
    }

    /// Coordinatewise reduction into `[0, p^l)`.
    pub fn reduce_mod_pi_pow(&self, c: &Elem, l: u32) -> Elem {
        if l >= self.k {
            return *c;
        }
        let d = checked_pow(self.p, l).unwrap_or(1);
        let mut out = [0u32; MAX_RANK];
        for i in 0..self.r {
            out[i] = (c.c[i] as u64 % d) as u32;
        }
        Elem { c: out }
    }

    /// Multiplicative inverse of a unit.
    pub fn invert_unit(&self, c: &Elem) -> Result<Elem> {
        if !self.is_unit(c) {
            return Err(Error::NotAUnit);
        }
        if self.r == 1 {
            let inv = mod_inverse(c.c[0] as u64, self.pk).ok_or(Error::NotAUnit)?;
            return Ok(Elem::scalar(inv));
        }
        // Inverse modulo p from the residue field, then Newton steps x <- x(2 - cx).
        let mut x = self.pow(c, self.q - 2);
        let two = self.from_int(2);
        for _ in 0..=32 {
            let cx = self.mul(c, &x);
            if cx == self.one() {
                return Ok(x);
            }
            x = self.mul(&x, &self.sub(&two, &cx));
        }
        Err(Error::NotAUnit)
    }

    /// A quotient `a / b` when `b` divides `a`: `unit(a) * unit(b)^-1 * p^(val a - val b)`.
    pub fn divide(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if a.is_zero() {
            return Some(Elem::ZERO);
        }
        if b.is_zero() {
            return None;
        }
        let va = self.valuation(a);
        let vb = self.valuation(b);
        if vb > va {
            return None;
        }
        let ua = self.div_pi_pow_exact(a, va);
        let ub = self.div_pi_pow_exact(b, vb);
        let inv = self.invert_unit(&ub).ok()?;
        Some(self.mul(&self.mul(&ua, &inv), &self.pi_pow(va - vb)))
    }

    /// `true` when `b` divides `a`.
    pub fn divides(&self, b: &Elem, a: &Elem) -> bool {
        a.is_zero() || (!b.is_zero() && self.valuation(b) <= self.valuation(a))
    }

    /// A generator of `Ann(c)`, namely `p^(nu - val c)`.
    pub fn annihilator(&self, c: &Elem) -> Elem {
        self.pi_pow(self.k - self.valuation(c))
    }

    /// Index of the residue class of `c` in `[0, q)`.
    pub fn residue_index(&self, c: &Elem) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.r).rev() {
            idx = idx * self.p + (c.c[i] as u64 % self.p);
        }
        idx
    }

    /// The Teichmüller set, sorted.
    pub fn teichmuller_set(&self) -> &[Elem] {
        &self.teich
    }

    /// The element of the Teichmüller set congruent to `c` modulo `p`.
    pub fn teichmuller(&self, c: &Elem) -> Elem {
        self.teich[self.teich_by_residue[self.residue_index(c) as usize] as usize]
    }

    /// Digits `(c_0, ..., c_(nu-1))` in the Teichmüller set with
    /// `c = sum c_j * pi^j`, for any generator `pi` of valuation 1.
    pub fn pi_adic_decompose(&self, c: &Elem, pi: &Elem) -> Result<Vec<Elem>> {
        if self.valuation(pi) != 1 {
            return Err(Error::BadGenerator);
        }
        let pi_unit = self.div_pi_pow_exact(pi, 1);
        let pi_unit_inv = self.invert_unit(&pi_unit)?;
        let mut digits = Vec::with_capacity(self.k as usize);
        let mut rest = *c;
        for _ in 0..self.k {
            let d = self.teichmuller(&rest);
            digits.push(d);
            let diff = self.sub(&rest, &d);
            // diff = p * w; solve pi * x = diff with x = w * unit(pi)^-1.
            let w = self.div_pi_pow_exact(&diff, 1);
            rest = self.mul(&w, &pi_unit_inv);
        }
        Ok(digits)
    }

    /// `sum digits[j] * pi^j`.
    pub fn pi_adic_compose(&self, digits: &[Elem], pi: &Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut pw = self.one();
        for d in digits {
            acc = self.add(&acc, &self.mul(d, &pw));
            pw = self.mul(&pw, pi);
        }
        acc
    }

    /// `gamma_j(c)` for the canonical generator `p`.
    pub fn digit(&self, c: &Elem, j: u32) -> Elem {
        let mut rest = *c;
        for _ in 0..j {
            let d = self.teichmuller(&rest);
            rest = self.div_pi_pow_exact(&self.sub(&rest, &d), 1);
        }
        self.teichmuller(&rest)
    }

    /// The element with enumeration index `idx` (base `p^k` digits of the coordinates).
    pub fn element_at(&self, mut idx: u64) -> Elem {
        let mut c = [0u32; MAX_RANK];
        for slot in c.iter_mut().take(self.r) {
            *slot = (idx % self.pk) as u32;
            idx /= self.pk;
        }
        Elem { c }
    }

    pub fn index_of(&self, a: &Elem) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.r).rev() {
            idx = idx * self.pk + a.c[i] as u64;
        }
        idx
    }

    /// All elements in enumeration order. Panics if the ring size overflows `u64`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let n = self.size().expect("ring too large to enumerate");
        (0..n).map(move |i| self.element_at(i))
    }

    /// The residue field `R / pR` as a chain ring with nilpotency index 1.
    pub fn residue_field(&self) -> ChainRing {
        match self.kind {
            RingKind::IntegerModulus => ChainRing::zpk(self.p, 1).expect("prime field"),
            RingKind::Galois => {
                let m: Vec<u64> = self.modulus.iter().map(|&c| c % self.p).collect();
                ChainRing::galois(self.p, 1, &m).expect("residue field of a Galois ring")
            }
        }
    }

    /// Image of `c` in the residue field.
    pub fn to_residue(&self, c: &Elem) -> Elem {
        let mut out = [0u32; MAX_RANK];
        for i in 0..self.r {
            out[i] = (c.c[i] as u64 % self.p) as u32;
        }
        Elem { c: out }
    }

    /// Teichmüller lift of a residue-field element.
    pub fn lift_residue(&self, c: &Elem) -> Elem {
        self.teichmuller(c)
    }

    /// Human-readable form: an integer for `Z/p^k`, a polynomial in `a` otherwise.
    pub fn format(&self, c: &Elem) -> String {
        use core::fmt::Write;
        if self.r == 1 {
            return alloc::format!("{}", c.c[0]);
        }
        let mut s = String::new();
        for i in (0..self.r).rev() {
            let v = c.c[i];
            if v == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            match (i, v) {
                (0, _) => write!(s, "{v}").unwrap(),
                (1, 1) => s.push('a'),
                (1, _) => write!(s, "{v}*a").unwrap(),
                (_, 1) => write!(s, "a^{i}").unwrap(),
                _ => write!(s, "{v}*a^{i}").unwrap(),
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Explicit product of chain rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PirRing {
    components: Vec<ChainRing>,
}

/// Element of a [`PirRing`]: one chain-ring element per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PirElem(pub Vec<Elem>);

impl PirRing {
    pub fn new(components: Vec<ChainRing>) -> Result<PirRing> {
        if components.is_empty() {
            return Err(Error::InvalidRing("product ring needs at least one component".into()));
        }
        Ok(PirRing { components })
    }

    /// `Z/n` split into its prime-power components.
    pub fn integers_mod(n: u64) -> Result<PirRing> {
        if n < 2 {
            return Err(Error::InvalidRing("modulus must be at least 2".into()));
        }
        let mut comps = Vec::new();
        let mut rest = n;
        let mut d = 2;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                let mut k = 0;
                while rest.is_multiple_of(d) {
                    rest /= d;
                    k += 1;
                }
                comps.push(ChainRing::zpk(d, k)?);
            }
            d += 1;
        }
        if rest > 1 {
            comps.push(ChainRing::zpk(rest, 1)?);
        }
        PirRing::new(comps)
    }

    pub fn components(&self) -> &[ChainRing] {
        &self.components
    }

    pub fn is_chain_ring(&self) -> bool {
        self.components.len() == 1
    }

    pub fn from_int(&self, v: i64) -> PirElem {
        PirElem(self.components.iter().map(|c| c.from_int(v)).collect())
    }

    pub fn crt_split(&self, x: &PirElem) -> Vec<Elem> {
        x.0.clone()
    }

    pub fn crt_join(&self, parts: Vec<Elem>) -> Result<PirElem> {
        if parts.len() != self.components.len() {
            return Err(Error::ComponentMismatch);
        }
        for (ring, e) in self.components.iter().zip(&parts) {
            for i in 0..MAX_RANK {
                let v = e.coeff(i) as u64;
                if (i >= ring.rank() && v != 0) || v >= ring.characteristic() {
                    return Err(Error::ComponentMismatch);
                }
            }
        }
        Ok(PirElem(parts))
    }

    pub fn add(&self, a: &PirElem, b: &PirElem) -> PirElem {
        PirElem(self.components.iter().zip(a.0.iter().zip(&b.0)).map(|(r, (x, y))| r.add(x, y)).collect())
    }

    pub fn sub(&self, a: &PirElem, b: &PirElem) -> PirElem {
        PirElem(self.components.iter().zip(a.0.iter().zip(&b.0)).map(|(r, (x, y))| r.sub(x, y)).collect())
    }

    pub fn mul(&self, a: &PirElem, b: &PirElem) -> PirElem {
        PirElem(self.components.iter().zip(a.0.iter().zip(&b.0)).map(|(r, (x, y))| r.mul(x, y)).collect())
    }

    pub fn neg(&self, a: &PirElem) -> PirElem {
        PirElem(self.components.iter().zip(&a.0).map(|(r, x)| r.neg(x)).collect())
    }

    pub fn is_zero(&self, a: &PirElem) -> bool {
        a.0.iter().all(Elem::is_zero)
    }

    /// Integer representative via the Chinese remainder theorem, when every
    /// component is `Z/p^k`.
    pub fn to_integer(&self, x: &PirElem) -> Option<u64> {
        let mut acc: u128 = 0;
        let mut modulus: u128 = 1;
        for (ring, e) in self.components.iter().zip(&x.0) {
            if ring.kind() != RingKind::IntegerModulus {
                return None;
            }
            let m = ring.characteristic() as u128;
            let v = e.coeff(0) as u128;
            // acc + modulus * t = v (mod m)
            let inv = mod_inverse((modulus % m) as u64, m as u64)? as u128;
            let t = ((v + m - acc % m) % m) * inv % m;
            acc += modulus * t;
            modulus *= m;
        }
        u64::try_from(acc).ok()
    }
}
