//! Brute-force references for small instances.
//!
//! Everything here enumerates. Only ring arithmetic and the Frobenius map are
//! borrowed from the rest of the crate; polynomial evaluation, spans and ranks
//! are recomputed from scratch.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extension::GaloisExtension;
use crate::linalg::Matrix;
use crate::minrank::MinRankInstance;
use crate::polys::{MultiPoly, PolyRing};
use crate::rings::{ChainRing, Elem};

/// Largest number of candidates an oracle will look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_evaluations: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_evaluations: 1 << 20 }
    }
}

impl OracleBudget {
    pub fn new(max_evaluations: u64) -> OracleBudget {
        OracleBudget { max_evaluations }
    }

    fn admit(&self, base: u64, exp: usize) -> Result<u64> {
        let count = base.checked_pow(exp as u32).ok_or(Error::BudgetExceeded)?;
        if count > self.max_evaluations {
            return Err(Error::BudgetExceeded);
        }
        Ok(count)
    }
}

fn ring_size(ring: &ChainRing) -> Result<u64> {
    ring.size().ok_or(Error::BudgetExceeded)
}

/// The `idx`-th tuple of `R^len`, last coordinate fastest.
fn tuple_at(ring: &ChainRing, size: u64, mut idx: u64, len: usize) -> Vec<Elem> {
    let mut t = vec![ring.zero(); len];
    for slot in t.iter_mut().rev() {
        *slot = ring.element_at(idx % size);
        idx /= size;
    }
    t
}

fn eval_poly(ring: &ChainRing, f: &MultiPoly, point: &[Elem]) -> Elem {
    let mut acc = ring.zero();
    for t in f.terms() {
        let mut v = t.coeff;
        for (x, &e) in point.iter().zip(&t.mono.0) {
            for _ in 0..e {
                v = ring.mul(&v, x);
            }
        }
        acc = ring.add(&acc, &v);
    }
    acc
}

/// Every common zero in `R^n`, in enumeration order.
pub fn brute_solve(pr: &PolyRing, system: &[MultiPoly], budget: OracleBudget) -> Result<Vec<Vec<Elem>>> {
    let ring = pr.ring();
    let size = ring_size(ring)?;
    let count = budget.admit(size, pr.nvars())?;
    Ok((0..count)
        .map(|i| tuple_at(ring, size, i, pr.nvars()))
        .filter(|p| system.iter().all(|f| eval_poly(ring, f, p).is_zero()))
        .collect())
}

/// The `R`-span of some vectors, as a set.
fn span(ring: &ChainRing, gens: &[Vec<Elem>], width: usize, budget: OracleBudget) -> Result<BTreeSet<Vec<Elem>>> {
    let mut out = BTreeSet::new();
    out.insert(vec![ring.zero(); width]);
    for g in gens {
        let mut next = BTreeSet::new();
        for v in &out {
            for c in ring.elements() {
                next.insert(v.iter().zip(g).map(|(a, b)| ring.add(a, &ring.mul(&c, b))).collect::<Vec<_>>());
            }
        }
        if next.len() as u64 > budget.max_evaluations {
            return Err(Error::BudgetExceeded);
        }
        out = next;
    }
    Ok(out)
}

/// Minimal number of generators of the row span, read off as
/// `log_q |N / pN|`.
pub fn brute_rank(ring: &ChainRing, a: &Matrix, budget: OracleBudget) -> Result<usize> {
    let rows = a.to_rows();
    let module = span(ring, &rows, a.cols(), budget)?;
    let pi = ring.pi_pow(1);
    let shrunk: BTreeSet<Vec<Elem>> = module.iter().map(|v| v.iter().map(|x| ring.mul(&pi, x)).collect()).collect();
    let mut quotient = (module.len() / shrunk.len()) as u64;
    let mut rank = 0;
    while quotient > 1 {
        quotient /= ring.q();
        rank += 1;
    }
    Ok(rank)
}

/// Every `x` in `R^k` with `rk(M_x) <= r`, in enumeration order.
pub fn brute_minrank(inst: &MinRankInstance, budget: OracleBudget) -> Result<Vec<Vec<Elem>>> {
    let ring = inst.ring();
    let size = ring_size(ring)?;
    let count = budget.admit(size, inst.k())?;
    let mut out = Vec::new();
    for i in 0..count {
        let x = tuple_at(ring, size, i, inst.k());
        let mut rows = inst.constant().to_rows();
        for (c, m) in x.iter().zip(inst.generators()) {
            for (row, mrow) in rows.iter_mut().zip(m.to_rows()) {
                for (e, v) in row.iter_mut().zip(&mrow) {
                    *e = ring.add(e, &ring.mul(c, v));
                }
            }
        }
        let combined = Matrix::from_rows(rows).map_err(|_| Error::DimensionMismatch)?;
        if brute_rank(ring, &combined, budget)? <= inst.target_rank() {
            out.push(x);
        }
    }
    Ok(out)
}

/// Lowest-to-highest coefficients `w` of every monic `w_0 + ... + w_(r-1) X^(r-1) + X^r`
/// with `f(u_j) = 0` for all `j`.
pub fn brute_annihilators(ext: &GaloisExtension, u: &[Elem], r: usize, budget: OracleBudget) -> Result<Vec<Vec<Elem>>> {
    let s = ext.ring();
    let size = ring_size(s)?;
    let count = budget.admit(size, r)?;
    let twisted: Vec<Vec<Elem>> = (0..=r).map(|l| u.iter().map(|x| ext.frobenius(x, l as i64)).collect()).collect();
    let mut out = Vec::new();
    for i in 0..count {
        let mut w = tuple_at(s, size, i, r);
        w.reverse();
        let vanishes = (0..u.len()).all(|j| {
            let mut acc = twisted[r][j];
            for (l, c) in w.iter().enumerate() {
                acc = s.add(&acc, &s.mul(c, &twisted[l][j]));
            }
            acc.is_zero()
        });
        if vanishes {
            out.push(w);
        }
    }
    Ok(out)
}

/// Every monic polynomial of least degree vanishing on all of `R`, as
/// coefficient lists low to high (leading 1 included).
pub fn brute_vanishing_poly(ring: &ChainRing, budget: OracleBudget) -> Result<Vec<Vec<Elem>>> {
    let size = ring_size(ring)?;
    let points: Vec<Elem> = ring.elements().collect();
    for d in 1.. {
        let count = budget.admit(size, d)?;
        let mut found = Vec::new();
        for i in 0..count {
            let mut coeffs = tuple_at(ring, size, i, d);
            coeffs.reverse();
            coeffs.push(ring.one());
            let vanishes = points.iter().all(|x| {
                coeffs.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c)).is_zero()
            });
            if vanishes {
                found.push(coeffs);
            }
        }
        if !found.is_empty() {
            return Ok(found);
        }
    }
    unreachable!("the budget check ends the search")
}

/// One generator matrix per free rank-`r` module containing the rows of `a`:
/// the first `r`-tuple, in enumeration order, that spans it.
pub fn brute_envelopes(ring: &ChainRing, a: &Matrix, r: usize, budget: OracleBudget) -> Result<Vec<Matrix>> {
    let n = a.cols();
    let size = ring_size(ring)?;
    let count = budget.admit(size, n * r)?;
    let full = budget.admit(size, r)?;
    let rows = a.to_rows();
    let mut seen: BTreeSet<BTreeSet<Vec<Elem>>> = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..count {
        let flat = tuple_at(ring, size, i, n * r);
        let gens: Vec<Vec<Elem>> = flat.chunks(n).map(<[Elem]>::to_vec).collect();
        let module = span(ring, &gens, n, budget)?;
        // free of rank r exactly when the r generators produce |R|^r points
        if module.len() as u64 != full || !rows.iter().all(|v| module.contains(v)) {
            continue;
        }
        if seen.insert(module) {
            out.push(Matrix::from_rows(gens).map_err(|_| Error::DimensionMismatch)?);
        }
    }
    Ok(out)
}

/// Every `x` in `S^k` with `rk(y - xG) <= r`, in enumeration order.
pub fn brute_decode(ext: &GaloisExtension, g: &[Vec<Elem>], y: &[Elem], r: usize, budget: OracleBudget) -> Result<Vec<Vec<Elem>>> {
    let s = ext.ring();
    let size = ring_size(s)?;
    let count = budget.admit(size, g.len())?;
    let mut out = Vec::new();
    for i in 0..count {
        let x = tuple_at(s, size, i, g.len());
        let e: Vec<Elem> = (0..y.len())
            .map(|j| x.iter().zip(g).fold(y[j], |acc, (c, row)| s.sub(&acc, &s.mul(c, &row[j]))))
            .collect();
        if brute_rank(ext.base(), &ext.matrix_representation(&e), budget)? <= r {
            out.push(x);
        }
    }
    Ok(out)
}
