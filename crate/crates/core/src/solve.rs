//! Solution sets of polynomial systems over chain rings: digit-by-digit
//! lifting of univariate ladders, elimination with back substitution, and
//! direct multivariate lifting.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, ladder_from_basis, UnivariateLadder};
use crate::linalg::{self, Matrix};
use crate::polys::{Monomial, MonomialOrder, MultiPoly, PolyRing, Term};
use crate::rings::{ChainRing, Elem, PirElem, PirRing};

/// Default cap on explicitly listed tuples.
pub const DEFAULT_SOLUTION_CAP: usize = 1 << 16;

const EXHAUSTIVE_LEVEL0: u64 = 1 << 16;

/// Solutions as patterns: `None` in a coordinate means every ring element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub nvars: usize,
    pub patterns: Vec<Vec<Option<Elem>>>,
    pub truncated: bool,
    pub cap: usize,
}

impl SolutionSet {
    pub fn empty(nvars: usize) -> SolutionSet {
        SolutionSet { nvars, patterns: Vec::new(), truncated: false, cap: DEFAULT_SOLUTION_CAP }
    }

    pub fn everything(nvars: usize) -> SolutionSet {
        SolutionSet { nvars, patterns: vec![vec![None; nvars]], truncated: false, cap: DEFAULT_SOLUTION_CAP }
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Number of tuples described, if it fits.
    pub fn count(&self, ring: &ChainRing) -> Option<u128> {
        let n = ring.size()? as u128;
        let mut total: u128 = 0;
        for p in &self.patterns {
            let free = p.iter().filter(|x| x.is_none()).count() as u32;
            total = total.checked_add(n.checked_pow(free)?)?;
        }
        Some(total)
    }

    /// All tuples, sorted; `None` when more than `limit` would be produced.
    pub fn expand(&self, ring: &ChainRing, limit: usize) -> Option<Vec<Vec<Elem>>> {
        if self.count(ring)? > limit as u128 {
            return None;
        }
        let mut out = BTreeSet::new();
        for p in &self.patterns {
            let mut partial: Vec<Vec<Elem>> = vec![Vec::new()];
            for x in p {
                partial = match x {
                    Some(v) => partial.into_iter().map(|mut t| {
                        t.push(*v);
                        t
                    }).collect(),
                    None => partial
                        .into_iter()
                        .flat_map(|t| ring.elements().map(move |e| {
                            let mut t = t.clone();
                            t.push(e);
                            t
                        }))
                        .collect(),
                };
            }
            out.extend(partial);
        }
        Some(out.into_iter().collect())
    }

    pub fn contains(&self, point: &[Elem]) -> bool {
        self.patterns.iter().any(|p| p.iter().zip(point).all(|(x, y)| x.is_none_or(|v| v == *y)))
    }

    fn sort(&mut self) {
        self.patterns.sort();
        self.patterns.dedup();
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub field_equations: bool,
    pub cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { field_equations: false, cap: DEFAULT_SOLUTION_CAP }
    }
}

/// Evaluates a polynomial that only involves `var`.
fn eval_at(pr: &PolyRing, f: &MultiPoly, var: usize, c: &Elem) -> Elem {
    let r = pr.ring();
    f.terms().iter().fold(r.zero(), |acc, t| r.add(&acc, &r.mul(&t.coeff, &r.pow(c, t.mono.0[var] as u64))))
}

/// All roots of a ladder by digit-wise lifting.
pub fn roots_of_ladder(pr: &PolyRing, ladder: &UnivariateLadder) -> Vec<Elem> {
    let r = pr.ring();
    let nu = r.nu();
    let var = ladder.var;
    let residue = r.residue_field();
    let gamma = r.teichmuller_set();
    // Level 0: h_(nu-1)(c) = 0 mod p.
    let mut partial: Vec<(Elem, Elem)> = match ladder.h(nu - 1) {
        None => gamma.iter().map(|g| (*g, *g)).collect(),
        Some(h) => gamma
            .iter()
            .filter(|g| r.valuation(&eval_at(pr, h, var, g)) >= 1)
            .map(|g| (*g, *g))
            .collect(),
    };
    for j in 1..nu {
        let Some(h) = ladder.h(nu - j - 1) else {
            let pj = r.pi_pow(j);
            partial = partial
                .into_iter()
                .flat_map(|(c, g0)| gamma.iter().map(move |z| (c, g0, *z)))
                .map(|(c, g0, z)| (r.add(&c, &r.mul(&z, &pj)), g0))
                .collect();
            continue;
        };
        let dh = pr.derivative(h, var);
        let pj = r.pi_pow(j);
        let mut next = Vec::new();
        for (c, g0) in partial {
            let v = eval_at(pr, h, var, &c);
            if r.valuation(&v) < j {
                continue;
            }
            let rhs = r.to_residue(&r.neg(&r.digit(&v, j)));
            let slope = r.to_residue(&eval_at(pr, &dh, var, &g0));
            if slope.is_zero() {
                if rhs.is_zero() {
                    next.extend(gamma.iter().map(|z| (r.add(&c, &r.mul(z, &pj)), g0)));
                }
                continue;
            }
            let z = residue.mul(&rhs, &residue.invert_unit(&slope).expect("nonzero in a field"));
            next.push((r.add(&c, &r.mul(&r.lift_residue(&z), &pj)), g0));
        }
        partial = next;
    }
    let mut roots: Vec<Elem> = partial.into_iter().map(|(c, _)| c).collect();
    roots.sort();
    roots.dedup();
    roots
}

/// Roots of a univariate system in `var`.
pub fn solve_univariate(pr: &PolyRing, system: &[MultiPoly], var: usize) -> Result<SolutionSet> {
    let lex = pr.with_order(MonomialOrder::Lex);
    let sorted: Vec<MultiPoly> = system.iter().map(|f| lex.sort(f)).collect();
    if sorted.iter().any(|f| !f.only_uses(|v| v == var)) {
        return Err(Error::Parse("system is not univariate".into()));
    }
    let gb = buchberger(&lex, &sorted)?;
    let mut set = SolutionSet::empty(1);
    if gb.generators.iter().any(|g| g.is_constant()) {
        return Ok(set);
    }
    match ladder_from_basis(&lex, &gb.generators, var) {
        Err(Error::ZeroIdeal) => Ok(SolutionSet::everything(1)),
        Err(e) => Err(e),
        Ok(ladder) => {
            set.patterns = roots_of_ladder(&lex, &ladder).into_iter().map(|c| vec![Some(c)]).collect();
            Ok(set)
        }
    }
}

/// The monic vanishing polynomial of least degree, as a polynomial in
/// `x_var` of `pr`.
///
/// With `phi = x^q - x` (values in `pR`) the product of `phi - p e_j` over
/// `j < s` vanishes on `R` when the `e_j` cover residues densely enough;
/// `e_j` is the base-`q` expansion of `j` with Teichmüller digits and `s` is
/// the least integer with `s + sum_i floor(s / q^i) >= nu`.
pub fn ring_vanishing_polynomial(pr: &PolyRing, var: usize) -> Result<MultiPoly> {
    let r = pr.ring();
    let size = r.size().ok_or(Error::TooLarge)?;
    if size > 1 << 20 {
        return Err(Error::TooLarge);
    }
    let q = r.q();
    let nu = r.nu() as u64;
    let weight = |s: u64| {
        let mut total = s;
        let mut qi = q;
        while qi <= s {
            total += s / qi;
            qi = qi.saturating_mul(q);
        }
        total
    };
    let s = (1..).find(|&s| weight(s) >= nu).expect("weight is unbounded");
    let n = pr.nvars();
    let x = pr.var(var);
    let phi = pr.sub(&pr.monomial(r.one(), Monomial::var(n, var, q as u32)), &x);
    let residue = r.residue_field();
    let mut f = pr.one();
    for j in 0..s {
        let mut e = r.zero();
        let mut rest = j;
        let mut place = r.one();
        while rest > 0 {
            let digit = r.lift_residue(&residue.element_at(rest % q));
            e = r.add(&e, &r.mul(&digit, &place));
            place = r.mul(&place, &r.pi());
            rest /= q;
        }
        let shift = pr.constant(r.mul(&r.pi(), &e));
        f = pr.mul(&f, &pr.sub(&phi, &shift));
    }
    if r.elements().any(|c| !eval_at(pr, &f, var, &c).is_zero()) {
        return Err(Error::ResourceExceeded("vanishing polynomial check failed".into()));
    }
    Ok(f)
}

fn with_field_equations(pr: &PolyRing, system: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let mut out = system.to_vec();
    for v in 0..pr.nvars() {
        out.push(ring_vanishing_polynomial(pr, v)?);
    }
    Ok(out)
}

/// Exact solution set by lexicographic elimination: solve the last variable
/// from the elimination ideal, substitute every root and recurse.
pub fn solve_system(pr: &PolyRing, system: &[MultiPoly], opts: SolveOptions) -> Result<SolutionSet> {
    let lex = pr.with_order(MonomialOrder::Lex);
    let mut sys: Vec<MultiPoly> = system.iter().map(|f| lex.sort(f)).collect();
    if opts.field_equations {
        sys = with_field_equations(&lex, &sys)?;
    }
    let n = lex.nvars();
    let mut out = SolutionSet { nvars: n, patterns: Vec::new(), truncated: false, cap: opts.cap };
    let mut suffix: Vec<Option<Elem>> = Vec::new();
    let mut explicit = 0usize;
    eliminate(&lex, sys, n, &mut suffix, &mut out, &mut explicit)?;
    out.sort();
    verify_set(&lex, system, &out)?;
    Ok(out)
}

fn eliminate(
    pr: &PolyRing,
    system: Vec<MultiPoly>,
    remaining: usize,
    suffix: &mut Vec<Option<Elem>>,
    out: &mut SolutionSet,
    explicit: &mut usize,
) -> Result<()> {
    if out.truncated {
        return Ok(());
    }
    let gb = buchberger(pr, &system)?;
    if gb.generators.iter().any(|g| g.is_constant()) {
        return Ok(());
    }
    if remaining == 0 {
        let mut pattern: Vec<Option<Elem>> = suffix.clone();
        pattern.reverse();
        if pattern.iter().all(Option::is_some) {
            *explicit += 1;
        }
        if *explicit > out.cap {
            out.truncated = true;
            return Ok(());
        }
        out.patterns.push(pattern);
        return Ok(());
    }
    let var = remaining - 1;
    if !gb.generators.iter().any(|g| g.uses_var(var)) {
        suffix.push(None);
        eliminate(pr, gb.generators, remaining - 1, suffix, out, explicit)?;
        suffix.pop();
        return Ok(());
    }
    let univariate: Vec<MultiPoly> = gb.generators.iter().filter(|g| g.only_uses(|v| v == var)).cloned().collect();
    let roots: Vec<Elem> = if univariate.is_empty() {
        pr.ring().elements().collect()
    } else {
        let ladder = ladder_from_basis(pr, &univariate, var)?;
        roots_of_ladder(pr, &ladder)
    };
    for c in roots {
        let specialized: Vec<MultiPoly> = gb.generators.iter().map(|g| pr.substitute(g, var, &c)).filter(|g| !g.is_zero()).collect();
        suffix.push(Some(c));
        eliminate(pr, specialized, remaining - 1, suffix, out, explicit)?;
        suffix.pop();
        if out.truncated {
            break;
        }
    }
    Ok(())
}

const VERIFY_LIMIT: usize = 1 << 12;

fn verify_set(pr: &PolyRing, system: &[MultiPoly], set: &SolutionSet) -> Result<()> {
    let r = pr.ring();
    for p in &set.patterns {
        let single = SolutionSet { nvars: set.nvars, patterns: vec![p.clone()], truncated: false, cap: set.cap };
        let Some(points) = single.expand(r, VERIFY_LIMIT) else { continue };
        for pt in points {
            if system.iter().any(|f| !pr.eval(f, &pt).is_zero()) {
                return Err(Error::ResourceExceeded("emitted tuple fails verification".into()));
            }
        }
    }
    Ok(())
}

/// Exact solution set by lifting residue-field solutions one `p`-adic digit
/// at a time through the Jacobian.
pub fn solve_system_lifting(pr: &PolyRing, system: &[MultiPoly], cap: usize) -> Result<SolutionSet> {
    let r = pr.ring();
    let n = pr.nvars();
    let residue = r.residue_field();
    let res_pr = PolyRing::with_names(residue.clone(), pr.names().to_vec(), MonomialOrder::Lex);
    let projected: Vec<MultiPoly> = system.iter().map(|f| pr.to_residue(&res_pr, f)).filter(|f| !f.is_zero()).collect();
    let gamma = r.teichmuller_set();
    let level0: Vec<Vec<Elem>> = if projected.is_empty() {
        cartesian(gamma, n, cap)?
    } else if (r.q() as u128).pow(n as u32) <= EXHAUSTIVE_LEVEL0 as u128 {
        cartesian(gamma, n, usize::MAX)?
            .into_iter()
            .filter(|pt| {
                let bar: Vec<Elem> = pt.iter().map(|c| r.to_residue(c)).collect();
                projected.iter().all(|f| res_pr.eval(f, &bar).is_zero())
            })
            .collect()
    } else {
        let set = solve_system(&res_pr, &projected, SolveOptions { field_equations: true, cap })?;
        set.expand(&residue, cap)
            .ok_or_else(|| Error::ResourceExceeded("too many residue solutions".into()))?
            .into_iter()
            .map(|pt| pt.iter().map(|c| r.lift_residue(c)).collect())
            .collect()
    };
    let jac: Vec<Vec<MultiPoly>> = system.iter().map(|f| (0..n).map(|v| pr.derivative(f, v)).collect()).collect();
    let mut partial: Vec<(Vec<Elem>, Vec<Elem>)> = level0.into_iter().map(|p| (p.clone(), p)).collect();
    for j in 1..r.nu() {
        let pj = r.pi_pow(j);
        let mut next = Vec::new();
        for (c, g0) in partial {
            let values: Vec<Elem> = system.iter().map(|f| pr.eval(f, &c)).collect();
            if values.iter().any(|v| r.valuation(v) < j) {
                continue;
            }
            let mut a = Matrix::zero(system.len(), n);
            for (i, row) in jac.iter().enumerate() {
                for (v, d) in row.iter().enumerate() {
                    a[(i, v)] = r.to_residue(&pr.eval(d, &g0));
                }
            }
            let b: Vec<Elem> = values.iter().map(|v| r.to_residue(&r.neg(&r.digit(v, j)))).collect();
            let Some((particular, kernel)) = linalg::solve_linear(&residue, &a, &b)? else { continue };
            for z in span_over_field(&residue, &particular, &kernel, cap)? {
                let lifted: Vec<Elem> = c.iter().zip(&z).map(|(ci, zi)| r.add(ci, &r.mul(&r.lift_residue(zi), &pj))).collect();
                next.push((lifted, g0.clone()));
                if next.len() > cap {
                    return Err(Error::ResourceExceeded("lifting produced too many partial solutions".into()));
                }
            }
        }
        partial = next;
    }
    let mut patterns: Vec<Vec<Option<Elem>>> = partial
        .into_iter()
        .filter(|(c, _)| system.iter().all(|f| pr.eval(f, c).is_zero()))
        .map(|(c, _)| c.into_iter().map(Some).collect())
        .collect();
    patterns.sort();
    patterns.dedup();
    Ok(SolutionSet { nvars: n, patterns, truncated: false, cap })
}

fn cartesian(values: &[Elem], n: usize, cap: usize) -> Result<Vec<Vec<Elem>>> {
    let total = (values.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::ResourceExceeded("enumeration exceeds cap".into()));
    }
    let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| values.iter().map(move |v| {
                let mut t = t.clone();
                t.push(*v);
                t
            }))
            .collect();
    }
    Ok(out)
}

/// `particular + span(kernel)` over a field.
fn span_over_field(field: &ChainRing, particular: &[Elem], kernel: &[Vec<Elem>], cap: usize) -> Result<Vec<Vec<Elem>>> {
    let mut out = vec![particular.to_vec()];
    for g in kernel {
        if g.iter().all(Elem::is_zero) {
            continue;
        }
        if out.len().saturating_mul(field.q() as usize) > cap {
            return Err(Error::ResourceExceeded("too many linear lift solutions".into()));
        }
        let mut next = Vec::with_capacity(out.len() * field.q() as usize);
        for v in &out {
            for s in field.elements() {
                next.push(v.iter().zip(g).map(|(x, y)| field.add(x, &field.mul(&s, y))).collect());
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    Ok(out)
}

/// Solutions over a product of chain rings: one system per component, each
/// solved independently. The solution set is the product of the parts.
#[derive(Clone, Debug)]
pub struct PirSolutionSet {
    pub components: Vec<SolutionSet>,
}

impl PirSolutionSet {
    pub fn expand(&self, ring: &PirRing, limit: usize) -> Option<Vec<Vec<PirElem>>> {
        let parts: Vec<Vec<Vec<Elem>>> = ring
            .components()
            .iter()
            .zip(&self.components)
            .map(|(r, s)| s.expand(r, limit))
            .collect::<Option<_>>()?;
        let total: u128 = parts.iter().map(|p| p.len() as u128).product();
        if total > limit as u128 {
            return None;
        }
        let nvars = self.components.first().map_or(0, |s| s.nvars);
        let mut out: Vec<Vec<Vec<Elem>>> = vec![Vec::new()];
        for part in &parts {
            out = out
                .into_iter()
                .flat_map(|acc| part.iter().map(move |t| {
                    let mut acc = acc.clone();
                    acc.push(t.clone());
                    acc
                }))
                .collect();
        }
        Some(
            out.into_iter()
                .map(|comps| (0..nvars).map(|v| PirElem(comps.iter().map(|t| t[v]).collect())).collect())
                .collect(),
        )
    }
}

pub fn solve_system_pir(rings: &[PolyRing], systems: &[Vec<MultiPoly>], opts: SolveOptions) -> Result<PirSolutionSet> {
    if rings.len() != systems.len() {
        return Err(Error::ComponentMismatch);
    }
    let components = rings.iter().zip(systems).map(|(pr, s)| solve_system(pr, s, opts)).collect::<Result<Vec<_>>>()?;
    Ok(PirSolutionSet { components })
}

/// Maps integer-coefficient terms into each component of a product ring.
pub fn split_integer_system(ring: &PirRing, names: &[&str], terms: &[Vec<(i64, Vec<u32>)>]) -> (Vec<PolyRing>, Vec<Vec<MultiPoly>>) {
    let rings: Vec<PolyRing> = ring.components().iter().map(|c| PolyRing::new(c.clone(), names, MonomialOrder::Lex)).collect();
    let systems = rings
        .iter()
        .map(|pr| {
            terms
                .iter()
                .map(|f| pr.from_terms(f.iter().map(|(c, e)| Term { coeff: pr.ring().from_int(*c), mono: Monomial(e.clone()) }).collect()))
                .collect()
        })
        .collect();
    (rings, systems)
}
