//! Finite commutative local rings presented as `R0 t_1 + ... + R0 t_g` over a
//! Galois subring `R0`, where `Ann(t_j) = p^(s_j) R0`.
//!
//! Polynomial systems over such a ring expand into systems over `R0` with
//! one unknown per (variable, basis element) pair.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::polys::{Monomial, MonomialOrder, MultiPoly, PolyRing};
use crate::rings::{ChainRing, Elem};
use crate::solve::SolutionSet;

/// Coordinates in the basis, each reduced modulo `p^(s_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalElement(pub Vec<Elem>);

#[derive(Clone, Debug)]
pub struct LocalRing {
    base: ChainRing,
    ann: Vec<u32>,
    /// `table[i][j]` = coordinates of `t_i * t_j`.
    table: Vec<Vec<Vec<Elem>>>,
    one: Vec<Elem>,
}

impl LocalRing {
    /// Builds and validates a presentation.
    pub fn new(base: ChainRing, ann: Vec<u32>, table: Vec<Vec<Vec<Elem>>>, one: Vec<Elem>) -> Result<LocalRing> {
        let g = ann.len();
        if g == 0 || table.len() != g || table.iter().any(|row| row.len() != g || row.iter().any(|v| v.len() != g)) || one.len() != g {
            return Err(Error::DimensionMismatch);
        }
        let lr = LocalRing { base, ann, table, one };
        lr.validate()?;
        Ok(lr)
    }

    /// `Z/p^k [X] / (f(X), p^t X)` with basis `1, X, ..., X^(d-1)`, `f` monic
    /// of degree `d` (coefficients low to high).
    pub fn truncated_quotient(p: u64, k: u32, f: &[i64], t: u32) -> Result<LocalRing> {
        let base = ChainRing::zpk(p, k)?;
        let d = f.len().checked_sub(1).filter(|&d| d >= 1).ok_or(Error::DimensionMismatch)?;
        if base.from_int(f[d]) != base.one() {
            return Err(Error::InvalidRing("modulus must be monic".into()));
        }
        let mut ann = vec![t; d];
        ann[0] = k;
        // powers X^0 .. X^(2d-2) in the basis
        let mut powers: Vec<Vec<Elem>> = Vec::new();
        let mut cur = vec![base.zero(); d];
        cur[0] = base.one();
        for _ in 0..2 * d - 1 {
            powers.push(cur.clone());
            let mut next = vec![base.zero(); d];
            for i in 0..d - 1 {
                next[i + 1] = cur[i];
            }
            let top = cur[d - 1];
            for (i, slot) in next.iter_mut().enumerate() {
                *slot = base.sub(slot, &base.mul(&top, &base.from_int(f[i])));
            }
            cur = next;
        }
        let reduce = |v: &[Elem]| -> Vec<Elem> { v.iter().zip(&ann).map(|(x, &s)| base.reduce_mod_pi_pow(x, s)).collect() };
        let table = (0..d).map(|i| (0..d).map(|j| reduce(&powers[i + j])).collect()).collect();
        let mut one = vec![base.zero(); d];
        one[0] = base.one();
        LocalRing::new(base, ann, table, one)
    }

    pub fn base(&self) -> &ChainRing {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.ann.len()
    }

    pub fn ann_exponents(&self) -> &[u32] {
        &self.ann
    }

    pub fn table(&self) -> &[Vec<Vec<Elem>>] {
        &self.table
    }

    pub fn one(&self) -> LocalElement {
        self.reduce(&self.one)
    }

    pub fn zero(&self) -> LocalElement {
        LocalElement(vec![self.base.zero(); self.dim()])
    }

    /// The basis element `t_j`.
    pub fn basis(&self, j: usize) -> LocalElement {
        let mut v = vec![self.base.zero(); self.dim()];
        v[j] = self.base.one();
        self.reduce(&v)
    }

    pub fn reduce(&self, coords: &[Elem]) -> LocalElement {
        LocalElement(coords.iter().zip(&self.ann).map(|(x, &s)| self.base.reduce_mod_pi_pow(x, s)).collect())
    }

    pub fn from_coords(&self, coords: &[Elem]) -> Result<LocalElement> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch);
        }
        Ok(self.reduce(coords))
    }

    /// `p^(s - s_j) u_j = 0` for every `j`.
    pub fn is_zero(&self, u: &LocalElement) -> bool {
        let s = self.base.nu();
        u.0.iter().zip(&self.ann).all(|(x, &sj)| self.base.mul(&self.base.pi_pow(s - sj), x).is_zero())
    }

    pub fn add(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        self.reduce(&a.0.iter().zip(&b.0).map(|(x, y)| self.base.add(x, y)).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: &LocalElement) -> LocalElement {
        self.reduce(&a.0.iter().map(|x| self.base.neg(x)).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        self.add(a, &self.neg(b))
    }

    fn mul_raw(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let r = &self.base;
        let mut out = vec![r.zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = r.mul(x, y);
                for (s, c) in self.table[i][j].iter().enumerate() {
                    out[s] = r.add(&out[s], &r.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        self.reduce(&self.mul_raw(&a.0, &b.0))
    }

    pub fn scale(&self, c: &Elem, a: &LocalElement) -> LocalElement {
        self.reduce(&a.0.iter().map(|x| self.base.mul(c, x)).collect::<Vec<_>>())
    }

    pub fn pow(&self, a: &LocalElement, e: u32) -> LocalElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Every element, in coordinate order. Panics when the ring is too large.
    pub fn elements(&self) -> Vec<LocalElement> {
        let r = &self.base;
        let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
        for &s in &self.ann {
            let count = r.p().pow(s).pow(r.rank() as u32);
            let choices: Vec<Elem> = (0..count)
                .map(|mut idx| {
                    let coords: Vec<i64> = (0..r.rank())
                        .map(|_| {
                            let m = r.p().pow(s);
                            let v = idx % m;
                            idx /= m;
                            v as i64
                        })
                        .collect();
                    r.from_coeffs(&coords).expect("rank-sized")
                })
                .collect();
            out = out
                .into_iter()
                .flat_map(|v| choices.iter().map(move |c| {
                    let mut v = v.clone();
                    v.push(*c);
                    v
                }))
                .collect();
        }
        out.into_iter().map(LocalElement).collect()
    }

    /// Number of elements.
    pub fn size(&self) -> Option<u64> {
        let r = &self.base;
        self.ann.iter().try_fold(1u64, |acc, &s| acc.checked_mul(r.p().checked_pow(s * r.rank() as u32)?))
    }

    /// Checks commutativity, associativity, the identity and annihilator
    /// consistency on basis elements.
    pub fn validate(&self) -> Result<()> {
        let g = self.dim();
        let s = self.base.nu();
        let r = &self.base;
        if self.ann.iter().any(|&a| a == 0 || a > s) {
            return Err(Error::NotARing("annihilator exponent out of range".into()));
        }
        let basis: Vec<Vec<Elem>> = (0..g)
            .map(|j| {
                let mut v = vec![r.zero(); g];
                v[j] = r.one();
                v
            })
            .collect();
        let equal = |a: &[Elem], b: &[Elem]| self.is_zero(&LocalElement(a.iter().zip(b).map(|(x, y)| r.sub(x, y)).collect()));
        for i in 0..g {
            for j in 0..g {
                let ij = &self.table[i][j];
                if !equal(ij, &self.table[j][i]) {
                    return Err(Error::NotARing(alloc::format!("t{i}*t{j} != t{j}*t{i}")));
                }
                let annihilated: Vec<Elem> = ij.iter().map(|x| r.mul(&r.pi_pow(self.ann[i]), x)).collect();
                if !self.is_zero(&LocalElement(annihilated)) {
                    return Err(Error::NotARing(alloc::format!("p^{} t{i}*t{j} != 0", self.ann[i])));
                }
                for k in 0..g {
                    let left = self.mul_raw(ij, &basis[k]);
                    let right = self.mul_raw(&basis[i], &self.table[j][k]);
                    if !equal(&left, &right) {
                        return Err(Error::NotARing(alloc::format!("(t{i}*t{j})*t{k} != t{i}*(t{j}*t{k})")));
                    }
                }
            }
            if !equal(&self.mul_raw(&self.one, &basis[i]), &basis[i]) {
                return Err(Error::NotARing(alloc::format!("one*t{i} != t{i}")));
            }
        }
        Ok(())
    }
}

/// Polynomial with coefficients in a [`LocalRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPoly {
    pub nvars: usize,
    pub terms: Vec<(LocalElement, Monomial)>,
}

impl LocalPoly {
    pub fn eval(&self, ring: &LocalRing, point: &[LocalElement]) -> LocalElement {
        let mut acc = ring.zero();
        for (c, m) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                v = ring.mul(&v, &ring.pow(x, e));
            }
            acc = ring.add(&acc, &v);
        }
        acc
    }
}

/// Parses text in the variables `vars` and basis symbols `basis_names`
/// (one per basis element; products of symbols use the multiplication table).
pub fn parse_local(ring: &LocalRing, vars: &[&str], basis_names: &[&str], text: &str) -> Result<LocalPoly> {
    if basis_names.len() != ring.dim() {
        return Err(Error::DimensionMismatch);
    }
    let names: Vec<&str> = vars.iter().chain(basis_names).copied().collect();
    let pr = PolyRing::new(ring.base().clone(), &names, MonomialOrder::Lex);
    let f = pr.parse(text)?;
    let n = vars.len();
    let mut terms: Vec<(LocalElement, Monomial)> = Vec::new();
    for t in f.terms() {
        let mut c = ring.scale(&t.coeff, &ring.one());
        for (j, &e) in t.mono.0[n..].iter().enumerate() {
            c = ring.mul(&c, &ring.pow(&ring.basis(j), e));
        }
        let mono = Monomial(t.mono.0[..n].to_vec());
        match terms.iter_mut().find(|(_, m)| *m == mono) {
            Some(slot) => slot.0 = ring.add(&slot.0, &c),
            None => terms.push((c, mono)),
        }
    }
    terms.retain(|(c, _)| !ring.is_zero(c));
    Ok(LocalPoly { nvars: n, terms })
}

/// The expanded system over the base ring: variable `x_i` becomes
/// `x_(i,0) t_0 + ... + x_(i,g-1) t_(g-1)` (index `i * g + j`), and each
/// input equation yields `p^(s - s_j) F_j = 0` for every basis index `j`.
pub fn expand_system(ring: &LocalRing, var_names: &[&str], system: &[LocalPoly]) -> Result<(PolyRing, Vec<MultiPoly>)> {
    let g = ring.dim();
    let n = var_names.len();
    if system.iter().any(|f| f.nvars != n) {
        return Err(Error::DimensionMismatch);
    }
    let names: Vec<String> = if g == 1 {
        var_names.iter().map(|v| String::from(*v)).collect()
    } else {
        var_names.iter().flat_map(|v| (1..=g).map(move |j| alloc::format!("{v}{j}"))).collect()
    };
    let pr = PolyRing::with_names(ring.base().clone(), names, MonomialOrder::Lex);
    let base = ring.base();
    let vec_mul = |a: &[MultiPoly], b: &[MultiPoly]| -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); g];
        for i in 0..g {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..g {
                if b[j].is_zero() {
                    continue;
                }
                let prod = pr.mul(&a[i], &b[j]);
                for (s, c) in ring.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[s] = pr.add(&out[s], &pr.scale(&prod, c));
                    }
                }
            }
        }
        out
    };
    let var_vec: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..g).map(|j| pr.var(i * g + j)).collect()).collect();
    let mut out = Vec::new();
    for f in system {
        let mut acc = vec![MultiPoly::zero(); g];
        for (c, m) in &f.terms {
            let mut v: Vec<MultiPoly> = c.0.iter().map(|x| pr.constant(*x)).collect();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = vec_mul(&v, &var_vec[i]);
                }
            }
            for s in 0..g {
                acc[s] = pr.add(&acc[s], &v[s]);
            }
        }
        for (s, comp) in acc.iter().enumerate() {
            let scaled = pr.scale(comp, &base.pi_pow(base.nu() - ring.ann[s]));
            if !scaled.is_zero() {
                out.push(scaled);
            }
        }
    }
    Ok((pr, out))
}

/// Maps solutions of the expanded system back to the local ring,
/// reducing and deduplicating. Free coordinates range over `[0, p^(s_j))`.
pub fn contract_solutions(ring: &LocalRing, nvars: usize, sols: &SolutionSet) -> Result<Vec<Vec<LocalElement>>> {
    let g = ring.dim();
    if sols.nvars != nvars * g {
        return Err(Error::DimensionMismatch);
    }
    let r = ring.base();
    let mut out = BTreeSet::new();
    for pattern in &sols.patterns {
        let mut partial: Vec<Vec<Elem>> = vec![Vec::new()];
        for (idx, x) in pattern.iter().enumerate() {
            let s = ring.ann[idx % g];
            let choices: Vec<Elem> = match x {
                Some(v) => vec![r.reduce_mod_pi_pow(v, s)],
                None => {
                    let mut all: Vec<Elem> = r.elements().map(|e| r.reduce_mod_pi_pow(&e, s)).collect();
                    all.sort();
                    all.dedup();
                    all
                }
            };
            partial = partial
                .into_iter()
                .flat_map(|t| choices.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(*c);
                    t
                }))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
        }
        for flat in partial {
            out.insert(flat.chunks(g).map(|c| ring.reduce(c)).collect::<Vec<_>>());
        }
    }
    Ok(out.into_iter().collect())
}

/// Convenience: terms with integer coefficients in the base ring.
pub fn local_poly_from_terms(ring: &LocalRing, nvars: usize, terms: &[(Vec<i64>, Vec<u32>)]) -> Result<LocalPoly> {
    let base = ring.base();
    let mut out = Vec::new();
    for (c, e) in terms {
        if e.len() != nvars {
            return Err(Error::DimensionMismatch);
        }
        let coords: Vec<Elem> = c.iter().map(|&v| base.from_int(v)).collect();
        out.push((ring.from_coords(&coords)?, Monomial(e.clone())));
    }
    Ok(LocalPoly { nvars, terms: out })
}
