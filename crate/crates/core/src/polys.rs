//! Multivariate polynomials over a chain ring under an admissible monomial
//! order, with strong (valuation-aware) term reduction.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rings::{ChainRing, Elem};

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut m = vec![0; nvars];
        m[i] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other / self`; callers check divisibility first.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial orders. Variables are ranked by position: `x0 > x1 > ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Elem,
    pub mono: Monomial,
}

/// A polynomial as a strictly descending list of nonzero terms. Only
/// meaningful together with the [`PolyRing`] that built it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<Term>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// `(lt, lm, lc)`.
    pub fn leading_data(&self) -> Result<(&Term, &Monomial, Elem)> {
        let t = self.terms.first().ok_or(Error::ZeroPolynomial)?;
        Ok((t, &t.mono, t.coeff))
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn lc(&self) -> Option<Elem> {
        self.terms.first().map(|t| t.coeff)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.mono.0[var]).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    /// `true` when no variable outside `vars` occurs.
    pub fn only_uses(&self, keep: impl Fn(usize) -> bool) -> bool {
        self.terms
            .iter()
            .all(|t| t.mono.0.iter().enumerate().all(|(i, &e)| e == 0 || keep(i)))
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.0[var] > 0)
    }
}

/// Polynomial ring context: coefficient ring, variable names and order.
#[derive(Clone, Debug)]
pub struct PolyRing {
    ring: ChainRing,
    names: Vec<String>,
    order: MonomialOrder,
}

const REDUCTION_STEP_CAP: usize = 1 << 22;

impl PolyRing {
    pub fn new(ring: ChainRing, names: &[&str], order: MonomialOrder) -> PolyRing {
        PolyRing { ring, names: names.iter().map(|s| s.to_string()).collect(), order }
    }

    pub fn with_names(ring: ChainRing, names: Vec<String>, order: MonomialOrder) -> PolyRing {
        PolyRing { ring, names, order }
    }

    /// Variables named `x0, x1, ...`.
    pub fn with_vars(ring: ChainRing, nvars: usize, order: MonomialOrder) -> PolyRing {
        let names = (0..nvars).map(|i| alloc::format!("x{i}")).collect();
        PolyRing { ring, names, order }
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same ring and variables under another order; `f` must be re-sorted with [`PolyRing::sort`].
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { ring: self.ring.clone(), names: self.names.clone(), order }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Builds a canonical polynomial from arbitrary terms (merging duplicates
    /// and dropping zeros).
    pub fn from_terms(&self, mut terms: Vec<Term>) -> MultiPoly {
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = self.ring.add(&last.coeff, &t.coeff),
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        MultiPoly { terms: out }
    }

    /// Re-sorts a polynomial built under another order.
    pub fn sort(&self, f: &MultiPoly) -> MultiPoly {
        self.from_terms(f.terms.clone())
    }

    pub fn from_int_terms(&self, terms: &[(i64, &[u32])]) -> MultiPoly {
        self.from_terms(
            terms
                .iter()
                .map(|(c, e)| Term { coeff: self.ring.from_int(*c), mono: Monomial(e.to_vec()) })
                .collect(),
        )
    }

    pub fn constant(&self, c: Elem) -> MultiPoly {
        self.monomial(c, Monomial::one(self.nvars()))
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(self.ring.one())
    }

    pub fn var(&self, i: usize) -> MultiPoly {
        self.monomial(self.ring.one(), Monomial::var(self.nvars(), i, 1))
    }

    pub fn monomial(&self, c: Elem, mono: Monomial) -> MultiPoly {
        if c.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly { terms: vec![Term { coeff: c, mono }] }
        }
    }

    pub fn add(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            let (a, b) = (&f.terms[i], &g.terms[j]);
            match self.cmp(&a.mono, &b.mono) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.ring.add(&a.coeff, &b.coeff);
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: a.mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&g.terms[j..]);
        MultiPoly { terms: out }
    }

    pub fn neg(&self, f: &MultiPoly) -> MultiPoly {
        MultiPoly {
            terms: f.terms.iter().map(|t| Term { coeff: self.ring.neg(&t.coeff), mono: t.mono.clone() }).collect(),
        }
    }

    pub fn sub(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &MultiPoly, c: &Elem) -> MultiPoly {
        MultiPoly {
            terms: f
                .terms
                .iter()
                .filter_map(|t| {
                    let v = self.ring.mul(&t.coeff, c);
                    (!v.is_zero()).then(|| Term { coeff: v, mono: t.mono.clone() })
                })
                .collect(),
        }
    }

    /// `c * x^mono * f`. Multiplying by a monomial preserves the order.
    pub fn mul_term(&self, f: &MultiPoly, c: &Elem, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: f
                .terms
                .iter()
                .filter_map(|t| {
                    let v = self.ring.mul(&t.coeff, c);
                    (!v.is_zero()).then(|| Term { coeff: v, mono: t.mono.mul(mono) })
                })
                .collect(),
        }
    }

    pub fn mul(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
        for a in &f.terms {
            for b in &g.terms {
                let c = self.ring.mul(&a.coeff, &b.coeff);
                if !c.is_zero() {
                    terms.push(Term { coeff: c, mono: a.mono.mul(&b.mono) });
                }
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, f: &MultiPoly, e: u32) -> MultiPoly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn eval(&self, f: &MultiPoly, point: &[Elem]) -> Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for t in &f.terms {
            let mut v = t.coeff;
            for (x, &e) in point.iter().zip(&t.mono.0) {
                if e > 0 {
                    v = r.mul(&v, &r.pow(x, e as u64));
                }
            }
            acc = r.add(&acc, &v);
        }
        acc
    }

    /// Replaces `x_var` by the constant `value`.
    pub fn substitute(&self, f: &MultiPoly, var: usize, value: &Elem) -> MultiPoly {
        let r = &self.ring;
        let terms = f
            .terms
            .iter()
            .map(|t| {
                let mut mono = t.mono.clone();
                let e = core::mem::take(&mut mono.0[var]);
                Term { coeff: r.mul(&t.coeff, &r.pow(value, e as u64)), mono }
            })
            .collect();
        self.from_terms(terms)
    }

    /// Replaces `x_var` by the polynomial `g`.
    pub fn compose(&self, f: &MultiPoly, var: usize, g: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for t in &f.terms {
            let mut mono = t.mono.clone();
            let e = core::mem::take(&mut mono.0[var]);
            let base = self.monomial(t.coeff, mono);
            acc = self.add(&acc, &self.mul(&base, &self.pow(g, e)));
        }
        acc
    }

    pub fn derivative(&self, f: &MultiPoly, var: usize) -> MultiPoly {
        let terms = f
            .terms
            .iter()
            .filter(|t| t.mono.0[var] > 0)
            .map(|t| {
                let mut mono = t.mono.clone();
                let e = mono.0[var];
                mono.0[var] -= 1;
                Term { coeff: self.ring.scale_int(&t.coeff, e as u64), mono }
            })
            .collect();
        self.from_terms(terms)
    }

    /// Coefficientwise reduction modulo `p` into the residue field, with the
    /// same variables and order.
    pub fn to_residue(&self, residue: &PolyRing, f: &MultiPoly) -> MultiPoly {
        residue.from_terms(
            f.terms.iter().map(|t| Term { coeff: self.ring.to_residue(&t.coeff), mono: t.mono.clone() }).collect(),
        )
    }

    /// Cofactor `c * x^a` with `t2 = c * x^a * t1`, when `t1` strongly divides `t2`.
    pub fn term_divides(&self, t1: &Term, t2: &Term) -> Option<Term> {
        if !t1.mono.divides(&t2.mono) {
            return None;
        }
        if self.ring.valuation(&t1.coeff) > self.ring.valuation(&t2.coeff) {
            return None;
        }
        let c = self.ring.divide(&t2.coeff, &t1.coeff)?;
        Some(Term { coeff: c, mono: t1.mono.div(&t2.mono) })
    }

    /// Strong head reduction: returns `h` with `f ->* h` and no leading term of
    /// `divisors` dividing `lt(h)`.
    pub fn strong_reduce(&self, f: &MultiPoly, divisors: &[MultiPoly]) -> Result<MultiPoly> {
        self.reduce_impl(f, divisors, false, None)
    }

    /// Full reduction: every term of the result is irreducible.
    pub fn full_reduce(&self, f: &MultiPoly, divisors: &[MultiPoly]) -> Result<MultiPoly> {
        self.reduce_impl(f, divisors, true, None)
    }

    /// Full reduction recording quotients with `f = sum q_i * divisors[i] + h`.
    pub fn reduce_with_quotients(&self, f: &MultiPoly, divisors: &[MultiPoly]) -> Result<(MultiPoly, Vec<MultiPoly>)> {
        let mut q = vec![MultiPoly::zero(); divisors.len()];
        let h = self.reduce_impl(f, divisors, true, Some(&mut q))?;
        Ok((h, q))
    }

    fn reduce_impl(
        &self,
        f: &MultiPoly,
        divisors: &[MultiPoly],
        full: bool,
        mut quotients: Option<&mut Vec<MultiPoly>>,
    ) -> Result<MultiPoly> {
        let mut rest = f.clone();
        let mut done: Vec<Term> = Vec::new();
        let mut steps = 0usize;
        while let Some(lead) = rest.terms.first().cloned() {
            steps += 1;
            if steps > REDUCTION_STEP_CAP {
                return Err(Error::ResourceExceeded("reduction step cap".into()));
            }
            let mut reduced = false;
            for (i, g) in divisors.iter().enumerate() {
                let Some(gl) = g.terms.first() else { continue };
                if let Some(cof) = self.term_divides(gl, &lead) {
                    let next = self.sub(&rest, &self.mul_term(g, &cof.coeff, &cof.mono));
                    debug_assert!(next.terms.first().is_none_or(|t| self.cmp(&t.mono, &lead.mono) != Ordering::Greater));
                    rest = next;
                    if let Some(q) = quotients.as_deref_mut() {
                        q[i] = self.add(&q[i], &self.monomial(cof.coeff, cof.mono));
                    }
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                if !full {
                    break;
                }
                // No leading term divides; shrink the coefficient modulo the
                // smallest leading coefficient whose monomial divides.
                let best = divisors
                    .iter()
                    .enumerate()
                    .filter_map(|(i, g)| g.terms.first().map(|t| (i, t)))
                    .filter(|(_, t)| t.mono.divides(&lead.mono))
                    .min_by_key(|(_, t)| self.ring.valuation(&t.coeff));
                if let Some((i, gl)) = best {
                    let v = self.ring.valuation(&gl.coeff);
                    let kept = self.ring.reduce_mod_pi_pow(&lead.coeff, v);
                    if kept != lead.coeff {
                        let delta = self.ring.sub(&lead.coeff, &kept);
                        let cof = self.ring.divide(&delta, &gl.coeff).expect("valuation checked");
                        let mono = gl.mono.div(&lead.mono);
                        rest = self.sub(&rest, &self.mul_term(&divisors[i], &cof, &mono));
                        if let Some(q) = quotients.as_deref_mut() {
                            q[i] = self.add(&q[i], &self.monomial(cof, mono));
                        }
                    }
                }
                if rest.terms.first().map(|t| &t.mono) == Some(&lead.mono) {
                    done.push(rest.terms.remove(0));
                }
            }
        }
        done.extend(rest.terms);
        Ok(MultiPoly { terms: done })
    }

    /// Parses text such as `4*x^2*y + y^3 - (x+1)^2`. When the coefficient
    /// ring is a Galois ring, the symbol `a` (if not a variable) denotes its
    /// generator.
    pub fn parse(&self, text: &str) -> Result<MultiPoly> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, ring: self };
        let f = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(alloc::format!("unexpected input at offset {}", p.pos)));
        }
        Ok(f)
    }

    pub fn format(&self, f: &MultiPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, t) in f.terms.iter().enumerate() {
            if idx > 0 {
                s.push_str(" + ");
            }
            let c = self.ring.format(&t.coeff);
            let c_is_one = t.coeff == self.ring.one();
            let compound = c.contains('+');
            let mut parts: Vec<String> = Vec::new();
            if !c_is_one || t.mono.is_one() {
                parts.push(if compound && !t.mono.is_one() { alloc::format!("({c})") } else { c });
            }
            for (i, &e) in t.mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.names[i].clone()),
                    _ => parts.push(alloc::format!("{}^{}", self.names[i], e)),
                }
            }
            s.push_str(&parts.join("*"));
        }
        s
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let pr = self.ring;
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            pr.neg(&self.term()?)
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = pr.add(&acc, &self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = pr.sub(&acc, &self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = self.ring.mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(alloc::format!("expected a number at offset {start}")))
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        let pr = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse(alloc::format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let m = pr.ring().characteristic();
                Ok(pr.constant(pr.ring().from_int((n % m) as i64)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                if let Some(i) = pr.names.iter().position(|n| n == name) {
                    Ok(pr.var(i))
                } else if name == "a" && pr.ring().rank() > 1 {
                    Ok(pr.constant(pr.ring().alpha()))
                } else {
                    Err(Error::Parse(alloc::format!("unknown symbol '{name}'")))
                }
            }
            _ => Err(Error::Parse(alloc::format!("unexpected input at offset {}", self.pos))),
        }
    }
}
