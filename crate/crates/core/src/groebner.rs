//! Strong Gröbner bases over chain rings.
//!
//! Buchberger's algorithm extended with annihilator polynomials: a set is a
//! strong basis exactly when every S-polynomial and every A-polynomial
//! strongly reduces to zero.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::polys::{Monomial, MonomialOrder, MultiPoly, PolyRing, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub generators: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub minimal: bool,
}

impl GroebnerBasis {
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant() && self.generators[0].lc().map(|c| c.coeff(0)) == Some(1)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Chain and product criteria for discarding pairs.
    pub criteria: bool,
    /// Maximum number of processed S- and A-polynomials.
    pub step_cap: usize,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { criteria: false, step_cap: 200_000 }
    }
}

/// `c1 x^a1 g1 - c2 x^a2 g2` cancelling the leading terms, with
/// `c_i = b_i^-1 p^(l - l_i)` where `lc(g_i) = b_i p^(l_i)` and `l = max l_i`.
pub fn s_polynomial(pr: &PolyRing, g1: &MultiPoly, g2: &MultiPoly) -> Result<MultiPoly> {
    if g1 == g2 {
        return Err(Error::EqualInputs);
    }
    let (_, m1, lc1) = g1.leading_data()?;
    let (_, m2, lc2) = g2.leading_data()?;
    let r = pr.ring();
    let l1 = r.valuation(&lc1);
    let l2 = r.valuation(&lc2);
    let l = l1.max(l2);
    let c1 = r.mul(&r.invert_unit(&r.unit_part(&lc1)?)?, &r.pi_pow(l - l1));
    let c2 = r.mul(&r.invert_unit(&r.unit_part(&lc2)?)?, &r.pi_pow(l - l2));
    let lcm = m1.lcm(m2);
    let a = pr.mul_term(g1, &c1, &m1.div(&lcm));
    let b = pr.mul_term(g2, &c2, &m2.div(&lcm));
    Ok(pr.sub(&a, &b))
}

/// `p^(nu - val(lc g)) * g`.
pub fn a_polynomial(pr: &PolyRing, g: &MultiPoly) -> Result<MultiPoly> {
    let (_, _, lc) = g.leading_data()?;
    let r = pr.ring();
    Ok(pr.scale(g, &r.annihilator(&lc)))
}

#[derive(Clone, Debug)]
enum Task {
    Pair(usize, usize, Monomial),
    Annihilator(usize, Monomial),
}

impl Task {
    fn key(&self) -> &Monomial {
        match self {
            Task::Pair(_, _, m) | Task::Annihilator(_, m) => m,
        }
    }
}

pub fn buchberger(pr: &PolyRing, input: &[MultiPoly]) -> Result<GroebnerBasis> {
    buchberger_with(pr, input, GbOptions::default())
}

pub fn buchberger_with(pr: &PolyRing, input: &[MultiPoly], opts: GbOptions) -> Result<GroebnerBasis> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut queue: Vec<Task> = Vec::new();
    let mut done_pairs: Vec<(usize, usize)> = Vec::new();
    for f in input {
        let h = pr.strong_reduce(f, &active_members(&basis, &active))?;
        if !h.is_zero() {
            push_member(pr, &mut basis, &mut active, &mut queue, h);
        }
    }
    let mut steps = 0usize;
    while !queue.is_empty() {
        steps += 1;
        if steps > opts.step_cap {
            return Err(Error::ResourceExceeded(alloc::format!("Gröbner basis exceeded {} steps", opts.step_cap)));
        }
        let pos = (0..queue.len())
            .min_by(|&a, &b| pr.cmp(queue[a].key(), queue[b].key()).then(a.cmp(&b)))
            .expect("queue not empty");
        let task = queue.remove(pos);
        let candidate = match &task {
            Task::Annihilator(i, _) => a_polynomial(pr, &basis[*i])?,
            Task::Pair(i, j, _) => {
                if opts.criteria && skip_pair(pr, &basis, &queue, &done_pairs, *i, *j) {
                    done_pairs.push((*i, *j));
                    continue;
                }
                done_pairs.push((*i, *j));
                s_polynomial(pr, &basis[*i], &basis[*j])?
            }
        };
        let divisors = active_members(&basis, &active);
        let mut h = pr.strong_reduce(&candidate, &divisors)?;
        if !h.is_zero() {
            h = pr.full_reduce(&h, &divisors)?;
        }
        if !h.is_zero() {
            push_member(pr, &mut basis, &mut active, &mut queue, h);
        }
    }
    Ok(GroebnerBasis { generators: canonicalize(pr, basis)?, order: pr.order(), minimal: true })
}

fn active_members(basis: &[MultiPoly], active: &[bool]) -> Vec<MultiPoly> {
    basis.iter().zip(active).filter(|(_, &a)| a).map(|(g, _)| g.clone()).collect()
}

/// Adds `h`; older members whose leading term `h` strongly divides stop
/// pairing with later members (their pairs are covered through `h`).
fn push_member(pr: &PolyRing, basis: &mut Vec<MultiPoly>, active: &mut Vec<bool>, queue: &mut Vec<Task>, h: MultiPoly) {
    let idx = basis.len();
    let lt = h.leading_term().expect("nonzero").clone();
    for (i, g) in basis.iter().enumerate() {
        if !active[i] || g == &h {
            continue;
        }
        queue.push(Task::Pair(i, idx, g.lm().expect("nonzero").lcm(&lt.mono)));
    }
    for (i, g) in basis.iter().enumerate() {
        if active[i] && pr.term_divides(&lt, g.leading_term().expect("nonzero")).is_some() {
            active[i] = false;
        }
    }
    let annihilates_lead = pr.ring().annihilator(&lt.coeff);
    if !annihilates_lead.is_zero() {
        queue.push(Task::Annihilator(idx, lt.mono.clone()));
    }
    basis.push(h);
    active.push(true);
}

fn lead_lcm_term(pr: &PolyRing, a: &MultiPoly, b: &MultiPoly) -> Term {
    let r = pr.ring();
    let (ta, tb) = (a.leading_term().expect("nonzero"), b.leading_term().expect("nonzero"));
    let v = r.valuation(&ta.coeff).max(r.valuation(&tb.coeff));
    Term { coeff: r.pi_pow(v), mono: ta.mono.lcm(&tb.mono) }
}

fn skip_pair(
    pr: &PolyRing,
    basis: &[MultiPoly],
    queue: &[Task],
    done: &[(usize, usize)],
    i: usize,
    j: usize,
) -> bool {
    let r = pr.ring();
    let (li, lj) = (basis[i].leading_term().expect("nonzero"), basis[j].leading_term().expect("nonzero"));
    if r.is_unit(&li.coeff) && r.is_unit(&lj.coeff) && li.mono.is_coprime(&lj.mono) {
        return true;
    }
    let target = lead_lcm_term(pr, &basis[i], &basis[j]);
    let pending = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        queue.iter().any(|t| matches!(t, Task::Pair(x, y, _) if *x == a && *y == b))
    };
    let processed = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        done.contains(&(a, b))
    };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && pr.term_divides(basis[k].leading_term().expect("nonzero"), &target).is_some()
            && processed(i, k)
            && processed(j, k)
            && !pending(i, k)
            && !pending(j, k)
    })
}

/// Minimalizes, normalizes leading coefficients to `p^v`, fully interreduces
/// and sorts (descending leading monomial, then ascending valuation).
fn canonicalize(pr: &PolyRing, basis: Vec<MultiPoly>) -> Result<Vec<MultiPoly>> {
    let r = pr.ring();
    let mut gens: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let lc = g.lc().expect("nonzero");
        let unit_inv = r.invert_unit(&r.unit_part(&lc)?)?;
        gens.push(pr.scale(&g, &unit_inv));
    }
    // Drop members whose leading term is divisible by another's.
    let mut keep = alloc::vec![true; gens.len()];
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (ti, tj) = (gens[i].leading_term().expect("nonzero"), gens[j].leading_term().expect("nonzero"));
            if pr.term_divides(tj, ti).is_some() {
                let mutual = pr.term_divides(ti, tj).is_some();
                if !mutual || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let gens: Vec<MultiPoly> = gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect();
    let mut out = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let lead = pr.monomial(g.lc().expect("nonzero"), g.lm().expect("nonzero").clone());
        let tail = pr.sub(g, &lead);
        let others: Vec<MultiPoly> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let tail = pr.full_reduce(&tail, &others)?;
        out.push(pr.add(&lead, &tail));
    }
    out.sort_by(|a, b| {
        let (ta, tb) = (a.leading_term().expect("nonzero"), b.leading_term().expect("nonzero"));
        pr.cmp(&tb.mono, &ta.mono).then_with(|| r.valuation(&ta.coeff).cmp(&r.valuation(&tb.coeff)))
    });
    Ok(out)
}

/// Checks that every S-polynomial and A-polynomial strongly reduces to zero.
pub fn verify_groebner(pr: &PolyRing, gens: &[MultiPoly]) -> Result<bool> {
    for (i, g) in gens.iter().enumerate() {
        if !pr.strong_reduce(&a_polynomial(pr, g)?, gens)?.is_zero() {
            return Ok(false);
        }
        for h in &gens[i + 1..] {
            if g == h {
                continue;
            }
            if !pr.strong_reduce(&s_polynomial(pr, g, h)?, gens)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Members of a lexicographic basis involving only `x_keep_from, x_(keep_from+1), ...`.
pub fn elimination_subbasis(g: &GroebnerBasis, keep_from: usize) -> Result<GroebnerBasis> {
    if g.order != MonomialOrder::Lex {
        return Err(Error::WrongOrder);
    }
    Ok(GroebnerBasis {
        generators: g.generators.iter().filter(|f| f.only_uses(|v| v >= keep_from)).cloned().collect(),
        order: g.order,
        minimal: g.minimal,
    })
}

/// The minimal univariate basis `{p^(a_i) g_i}` with `a_0 < a_1 < ...`,
/// `g_i` monic of strictly decreasing degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateLadder {
    pub var: usize,
    pub nu: u32,
    pub members: Vec<(u32, MultiPoly)>,
}

impl UnivariateLadder {
    /// `h_j`: the monic `g_i` with `a_i <= j < a_(i+1)`, or `None` (the zero
    /// polynomial) when `j < a_0`.
    pub fn h(&self, j: u32) -> Option<&MultiPoly> {
        self.members.iter().rev().find(|(a, _)| *a <= j).map(|(_, g)| g)
    }

    /// The generators `p^(a_i) g_i`.
    pub fn generators(&self, pr: &PolyRing) -> Vec<MultiPoly> {
        self.members.iter().map(|(a, g)| pr.scale(g, &pr.ring().pi_pow(*a))).collect()
    }
}

pub fn minimal_univariate_basis(pr: &PolyRing, input: &[MultiPoly], var: usize) -> Result<UnivariateLadder> {
    if input.iter().any(|f| !f.only_uses(|v| v == var)) {
        return Err(Error::Parse("polynomials must be univariate".to_string()));
    }
    let lex = pr.with_order(MonomialOrder::Lex);
    let sorted: Vec<MultiPoly> = input.iter().map(|f| lex.sort(f)).collect();
    let gb = buchberger(&lex, &sorted)?;
    ladder_from_basis(&lex, &gb.generators, var)
}

/// Reads a ladder off a canonical univariate strong basis.
pub fn ladder_from_basis(pr: &PolyRing, gens: &[MultiPoly], var: usize) -> Result<UnivariateLadder> {
    let r = pr.ring();
    if gens.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let mut members: Vec<(u32, MultiPoly)> = Vec::new();
    for f in gens {
        let a = r.valuation(&f.lc().expect("nonzero"));
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                if r.valuation(&t.coeff) < a {
                    Err(Error::ResourceExceeded("ladder member not divisible by its leading valuation".into()))
                } else {
                    Ok(Term { coeff: r.div_pi_pow_exact(&t.coeff, a), mono: t.mono.clone() })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        members.push((a, pr.from_terms(terms)));
    }
    members.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.degree_in(var).cmp(&x.1.degree_in(var))));
    debug_assert!(members.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1.degree_in(var) > w[1].1.degree_in(var)));
    Ok(UnivariateLadder { var, nu: r.nu(), members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::ChainRing;
    use alloc::vec;

    fn z8xy() -> PolyRing {
        PolyRing::new(ChainRing::zpk(2, 3).unwrap(), &["x", "y"], MonomialOrder::Lex)
    }

    #[test]
    fn s_and_a_polynomials() {
        let pr = z8xy();
        let g1 = pr.parse("4*x^2*y+y^3+2*y+4").unwrap();
        let g2 = pr.parse("4*x*y^2").unwrap();
        let g3 = pr.parse("y^4+2*y^2+4*y").unwrap();
        assert_eq!(s_polynomial(&pr, &g1, &g2).unwrap(), g3);
        assert_eq!(s_polynomial(&pr, &g1, &g3).unwrap(), pr.parse("y^6+2*y^4+4*y^3").unwrap());
        let x = pr.parse("x").unwrap();
        let y = pr.parse("y").unwrap();
        assert!(s_polynomial(&pr, &x, &y).unwrap().is_zero());
        assert_eq!(s_polynomial(&pr, &x, &x), Err(Error::EqualInputs));
        assert_eq!(a_polynomial(&pr, &g1).unwrap(), pr.parse("2*y^3+4*y").unwrap());
        assert!(a_polynomial(&pr, &g3).unwrap().is_zero());
        assert!(a_polynomial(&pr, &g2).unwrap().is_zero());
        assert_eq!(a_polynomial(&pr, &MultiPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn basis_of_the_worked_system() {
        let pr = z8xy();
        let f = vec![pr.parse("4*x^2*y+y^3+2*y+4").unwrap(), pr.parse("4*x*y^2").unwrap()];
        let gb = buchberger(&pr, &f).unwrap();
        let expected: Vec<MultiPoly> =
            ["4*x^2*y+y^3+2*y+4", "4*x*y^2", "y^4+2*y^2+4*y", "2*y^3+4*y"].iter().map(|s| pr.parse(s).unwrap()).collect();
        assert_eq!(gb.generators, expected);
        assert!(verify_groebner(&pr, &gb.generators).unwrap());
        let elim = elimination_subbasis(&gb, 1).unwrap();
        assert_eq!(elim.generators, expected[2..].to_vec());
        assert_eq!(elimination_subbasis(&gb, 0).unwrap(), gb);
        let grevlex = pr.with_order(MonomialOrder::DegRevLex);
        let g2 = buchberger(&grevlex, &f.iter().map(|p| grevlex.sort(p)).collect::<Vec<_>>()).unwrap();
        assert_eq!(elimination_subbasis(&g2, 1), Err(Error::WrongOrder));
    }

    #[test]
    fn unit_ideal_and_zero_ideal() {
        let pr = z8xy();
        let gb = buchberger(&pr, &[pr.one()]).unwrap();
        assert_eq!(gb.generators, vec![pr.one()]);
        assert!(gb.is_unit_ideal());
        assert!(buchberger(&pr, &[MultiPoly::zero()]).unwrap().generators.is_empty());
        let gb = buchberger(&pr, &[pr.parse("3*x+1").unwrap(), pr.parse("x").unwrap()]).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn ladder_of_the_worked_system() {
        let pr = PolyRing::new(ChainRing::zpk(2, 3).unwrap(), &["y"], MonomialOrder::Lex);
        let f = vec![pr.parse("y^4+2*y^2+4*y").unwrap(), pr.parse("2*y^3+4*y").unwrap()];
        let ladder = minimal_univariate_basis(&pr, &f, 0).unwrap();
        assert_eq!(ladder.h(0), Some(&pr.parse("y^4+2*y^2+4*y").unwrap()));
        assert_eq!(ladder.h(1), Some(&pr.parse("y^3+2*y").unwrap()));
        assert_eq!(ladder.h(2), Some(&pr.parse("y^3+2*y").unwrap()));
        let x = minimal_univariate_basis(&pr, &[pr.parse("y").unwrap()], 0).unwrap();
        for j in 0..3 {
            assert_eq!(x.h(j), Some(&pr.parse("y").unwrap()));
        }
        assert_eq!(minimal_univariate_basis(&pr, &[MultiPoly::zero()], 0), Err(Error::ZeroIdeal));
    }

    fn check_ladder(pr: &PolyRing, ladder: &UnivariateLadder) {
        let r = pr.ring();
        let m = &ladder.members;
        for w in m.windows(2) {
            assert!(w[0].0 < w[1].0);
            assert!(w[0].1.degree_in(0) > w[1].1.degree_in(0));
        }
        for (i, (a, g)) in m.iter().enumerate() {
            assert_eq!(g.lc(), Some(r.one()));
            assert!(*a < r.nu());
            if i + 1 < m.len() {
                let lifted = pr.scale(g, &r.pi_pow(m[i + 1].0));
                let later: Vec<MultiPoly> = m[i + 1..].iter().map(|(b, h)| pr.scale(h, &r.pi_pow(*b))).collect();
                let gb = buchberger(pr, &later).unwrap();
                assert!(pr.strong_reduce(&lifted, &gb.generators).unwrap().is_zero());
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly_strategy(nvars: usize, maxdeg: u32, nterms: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
            proptest::collection::vec((any::<i64>(), proptest::collection::vec(0..=maxdeg, nvars)), 1..=nterms)
        }

        fn build(pr: &PolyRing, raw: &[(i64, Vec<u32>)]) -> MultiPoly {
            pr.from_terms(raw.iter().map(|(c, e)| Term { coeff: pr.ring().from_int(*c), mono: Monomial(e.clone()) }).collect())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]

            #[test]
            fn univariate_ladder_conditions(raw in proptest::collection::vec(poly_strategy(1, 4, 4), 1..3)) {
                let pr = PolyRing::new(ChainRing::zpk(3, 2).unwrap(), &["x"], MonomialOrder::Lex);
                let f: Vec<MultiPoly> = raw.iter().map(|r| build(&pr, r)).collect();
                match minimal_univariate_basis(&pr, &f, 0) {
                    Ok(ladder) => check_ladder(&pr, &ladder),
                    Err(Error::ZeroIdeal) => prop_assert!(f.iter().all(|p| p.is_zero())),
                    Err(e) => prop_assert!(false, "unexpected error {e}"),
                }
            }

            #[test]
            fn bases_verify_and_criteria_agree(which in 0usize..3, raw in proptest::collection::vec(poly_strategy(2, 2, 3), 1..4)) {
                let ring = [ChainRing::zpk(2, 2).unwrap(), ChainRing::zpk(2, 3).unwrap(), ChainRing::zpk(3, 2).unwrap()][which].clone();
                for order in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
                    let pr = PolyRing::new(ring.clone(), &["x", "y"], order);
                    let f: Vec<MultiPoly> = raw.iter().map(|r| build(&pr, r)).collect();
                    let plain = buchberger(&pr, &f).unwrap();
                    prop_assert!(verify_groebner(&pr, &plain.generators).unwrap());
                    let fast = buchberger_with(&pr, &f, GbOptions { criteria: true, ..GbOptions::default() }).unwrap();
                    prop_assert_eq!(&plain.generators, &fast.generators);
                    for p in &f {
                        prop_assert!(pr.full_reduce(p, &plain.generators).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
