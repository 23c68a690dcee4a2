//! MinRank over chain rings: find `x` with `rk(M_0 + x_1 M_1 + ... + x_k M_k) <= r`.
//!
//! Three solvers: the Kipnis-Shamir kernel modeling, and the Support-Minors
//! modeling solved either by Gröbner bases or by linearization.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, elimination_subbasis};
use crate::linalg::{self, combinations, Matrix};
use crate::polys::{MonomialOrder, MultiPoly, PolyRing};
use crate::rings::{ChainRing, Elem};
use crate::solve::{ring_vanishing_polynomial, solve_system, SolveOptions};

/// Largest candidate set a solver will enumerate.
pub const CANDIDATE_CAP: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinRankInstance {
    ring: ChainRing,
    /// `M_0, M_1, ..., M_k`.
    matrices: Vec<Matrix>,
    r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    KipnisShamir,
    SmGroebner,
    SmLinearization,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct MinRankOptions {
    pub field_equations: bool,
    pub transpose: bool,
}

impl MinRankInstance {
    /// `m0 = None` for a homogeneous instance.
    pub fn new(ring: ChainRing, m0: Option<Matrix>, generators: Vec<Matrix>, r: usize) -> Result<MinRankInstance> {
        let shape = match (&m0, generators.first()) {
            (Some(m), _) | (None, Some(m)) => (m.rows(), m.cols()),
            (None, None) => return Err(Error::DimensionMismatch),
        };
        if generators.iter().chain(m0.iter()).any(|m| (m.rows(), m.cols()) != shape) {
            return Err(Error::DimensionMismatch);
        }
        let mut matrices = vec![m0.unwrap_or_else(|| Matrix::zero(shape.0, shape.1))];
        matrices.extend(generators);
        Ok(MinRankInstance { ring, matrices, r })
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn target_rank(&self) -> usize {
        self.r
    }

    /// Number of unknowns.
    pub fn k(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn cols(&self) -> usize {
        self.matrices[0].cols()
    }

    pub fn constant(&self) -> &Matrix {
        &self.matrices[0]
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.matrices[1..]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.matrices[0].is_zero()
    }

    /// `M_x`.
    pub fn combine(&self, x: &[Elem]) -> Result<Matrix> {
        if x.len() != self.k() {
            return Err(Error::DimensionMismatch);
        }
        let r = &self.ring;
        let mut acc = self.matrices[0].clone();
        for (c, m) in x.iter().zip(self.generators()) {
            acc = linalg::add(r, &acc, &linalg::scale(r, m, c))?;
        }
        Ok(acc)
    }

    pub fn is_solution(&self, x: &[Elem]) -> Result<bool> {
        Ok(linalg::rank(&self.ring, &self.combine(x)?) <= self.r)
    }

    /// Same solutions, transposed matrices.
    pub fn transpose(&self) -> MinRankInstance {
        MinRankInstance { ring: self.ring.clone(), matrices: self.matrices.iter().map(Matrix::transpose).collect(), r: self.r }
    }

    /// Entry `(i, j)` of `M_x` as a linear polynomial; `x_l` is variable
    /// `offset + l`.
    fn entry(&self, pr: &PolyRing, offset: usize, i: usize, j: usize) -> MultiPoly {
        let mut f = pr.constant(self.matrices[0][(i, j)]);
        for (l, m) in self.generators().iter().enumerate() {
            f = pr.add(&f, &pr.scale(&pr.var(offset + l), &m[(i, j)]));
        }
        f
    }
}

fn x_names(k: usize) -> impl Iterator<Item = String> {
    (1..=k).map(|l| alloc::format!("x{l}"))
}

fn with_field_equations(pr: &PolyRing, mut system: Vec<MultiPoly>) -> Result<Vec<MultiPoly>> {
    for v in 0..pr.nvars() {
        system.push(ring_vanishing_polynomial(pr, v)?);
    }
    Ok(system)
}

/// `M_x P (I; Z') = 0` where the columns in `z_block` (ascending) are matched
/// with the rows of `Z'` and the remaining columns with `I`. Variables are
/// `z1 .. z_(r(n-r))` (row-major in `Z'`) followed by `x1 .. xk`, lex.
pub fn ks_model(inst: &MinRankInstance, z_block: &[usize], field_equations: bool) -> Result<(PolyRing, Vec<MultiPoly>)> {
    let (n, r, k) = (inst.cols(), inst.r, inst.k());
    if z_block.len() != r || z_block.iter().any(|&c| c >= n) || r > n {
        return Err(Error::DimensionMismatch);
    }
    let free_cols = n - r;
    let names: Vec<String> = (1..=r * free_cols).map(|i| alloc::format!("z{i}")).chain(x_names(k)).collect();
    let pr = PolyRing::with_names(inst.ring.clone(), names, MonomialOrder::Lex);
    let offset = r * free_cols;
    let identity_cols: Vec<usize> = (0..n).filter(|c| !z_block.contains(c)).collect();
    let mut system = Vec::new();
    for i in 0..inst.rows() {
        for c in 0..free_cols {
            let mut f = inst.entry(&pr, offset, i, identity_cols[c]);
            for (a, &col) in z_block.iter().enumerate() {
                f = pr.add(&f, &pr.mul(&inst.entry(&pr, offset, i, col), &pr.var(a * free_cols + c)));
            }
            if !f.is_zero() {
                system.push(f);
            }
        }
    }
    let system = if field_equations { with_field_equations(&pr, system)? } else { system };
    Ok((pr, system))
}

/// Support-Minors equations: for every row `i` and `(r+1)`-subset `J`,
/// `sum_a (-1)^a M_x[i, j_a] z_(J - j_a) = 0`. Variables are `z1 .. zN`
/// (one per `r`-subset, lex) followed by `x1 .. xk`; `unit` fixes that
/// Plücker variable to 1.
pub fn sm_model(inst: &MinRankInstance, unit: Option<usize>, field_equations: bool) -> Result<(PolyRing, Vec<MultiPoly>)> {
    let (n, r, k) = (inst.cols(), inst.r, inst.k());
    let subsets = combinations(n, r);
    let names: Vec<String> = (1..=subsets.len()).map(|i| alloc::format!("z{i}")).chain(x_names(k)).collect();
    let pr = PolyRing::with_names(inst.ring.clone(), names, MonomialOrder::Lex);
    let offset = subsets.len();
    let mut system = Vec::new();
    for i in 0..inst.rows() {
        for big in combinations(n, r + 1) {
            let mut f = MultiPoly::zero();
            for a in 0..=r {
                let rest: Vec<usize> = big.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &c)| c).collect();
                let z = subsets.binary_search(&rest).expect("subset present");
                let term = pr.mul(&inst.entry(&pr, offset, i, big[a]), &pr.var(z));
                f = if a % 2 == 0 { pr.add(&f, &term) } else { pr.sub(&f, &term) };
            }
            if let Some(u) = unit {
                f = pr.substitute(&f, u, &inst.ring.one());
            }
            if !f.is_zero() {
                system.push(f);
            }
        }
    }
    let system = if field_equations { with_field_equations(&pr, system)? } else { system };
    Ok((pr, system))
}

/// Coefficient matrix of the Support-Minors equations in the monomials
/// `x_l z_J`, grouped by `J` then `l` (plus a `z_J` column per group when
/// `M_0 != 0`), with the groups listed in `group_order`.
fn sm_linear_system(inst: &MinRankInstance, group_order: &[usize]) -> Matrix {
    let (n, r, k) = (inst.cols(), inst.r, inst.k());
    let subsets = combinations(n, r);
    let width = if inst.is_homogeneous() { k } else { k + 1 };
    let mut position = vec![0usize; subsets.len()];
    for (slot, &g) in group_order.iter().enumerate() {
        position[g] = slot;
    }
    let ring = &inst.ring;
    let mut rows = Vec::new();
    for i in 0..inst.rows() {
        for big in combinations(n, r + 1) {
            let mut row = vec![ring.zero(); width * subsets.len()];
            for a in 0..=r {
                let rest: Vec<usize> = big.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &c)| c).collect();
                let z = subsets.binary_search(&rest).expect("subset present");
                let base = position[z] * width;
                let sign = |c: Elem| if a % 2 == 0 { c } else { ring.neg(&c) };
                for (l, m) in inst.generators().iter().enumerate() {
                    row[base + l] = ring.add(&row[base + l], &sign(m[(i, big[a])]));
                }
                if width > k {
                    row[base + k] = ring.add(&row[base + k], &sign(inst.constant()[(i, big[a])]));
                }
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zero(0, width * subsets.len()))
}

/// The linearized Support-Minors matrix in the natural group order.
pub fn sm_linearization_matrix(inst: &MinRankInstance) -> Matrix {
    let groups: Vec<usize> = (0..combinations(inst.cols(), inst.r).len()).collect();
    sm_linear_system(inst, &groups)
}

/// Nonzero rows of the echelon form of [`sm_linearization_matrix`].
pub fn sm_linearization_echelon(inst: &MinRankInstance) -> Matrix {
    let h = linalg::hermite_form(&inst.ring, &sm_linearization_matrix(inst));
    nonzero_rows(&h.t)
}

fn nonzero_rows(t: &Matrix) -> Matrix {
    let keep: Vec<usize> = (0..t.rows()).filter(|&i| t.row(i).iter().any(|x| !x.is_zero())).collect();
    t.select_rows(&keep)
}

/// Every element of `R^k`, refusing beyond [`CANDIDATE_CAP`].
fn all_tuples(ring: &ChainRing, k: usize) -> Result<Vec<Vec<Elem>>> {
    let size = ring.size().and_then(|s| s.checked_pow(k as u32)).filter(|&c| c <= CANDIDATE_CAP).ok_or(Error::Inconclusive)?;
    Ok((0..size)
        .map(|mut idx| {
            let mut t = vec![ring.zero(); k];
            for slot in t.iter_mut().rev() {
                *slot = ring.element_at(idx % ring.size().unwrap());
                idx /= ring.size().unwrap();
            }
            t
        })
        .collect())
}

/// Points of the `R`-span `base + <gens>`.
pub(crate) fn affine_span(ring: &ChainRing, base: &[Elem], gens: &[Vec<Elem>]) -> Result<BTreeSet<Vec<Elem>>> {
    let mut out = BTreeSet::new();
    out.insert(base.to_vec());
    for g in gens {
        let mut next = BTreeSet::new();
        for v in &out {
            for c in ring.elements() {
                next.insert(v.iter().zip(g).map(|(a, b)| ring.add(a, &ring.mul(&c, b))).collect::<Vec<_>>());
            }
            if next.len() as u64 > CANDIDATE_CAP {
                return Err(Error::Inconclusive);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Solves a model, projects onto the trailing `k` variables and keeps the
/// points that satisfy the rank bound.
fn solve_projected(inst: &MinRankInstance, pr: &PolyRing, system: &[MultiPoly]) -> Result<BTreeSet<Vec<Elem>>> {
    let k = inst.k();
    let offset = pr.nvars() - k;
    let gb = buchberger(pr, system)?;
    if gb.is_unit_ideal() {
        return Ok(BTreeSet::new());
    }
    let elim = elimination_subbasis(&gb, offset)?;
    let sols = solve_system(pr, &elim.generators, SolveOptions::default())?;
    let mut out = BTreeSet::new();
    let patterns: BTreeSet<Vec<Option<Elem>>> = sols.patterns.iter().map(|p| p[offset..].to_vec()).collect();
    for pattern in patterns {
        let mut partial: Vec<Vec<Elem>> = vec![Vec::new()];
        for x in pattern {
            let choices: Vec<Elem> = match x {
                Some(v) => vec![v],
                None => inst.ring.elements().collect(),
            };
            partial = partial.into_iter().flat_map(|p| choices.iter().map(move |c| {
                let mut p = p.clone();
                p.push(*c);
                p
            })).collect();
            if partial.len() as u64 > CANDIDATE_CAP {
                return Err(Error::Inconclusive);
            }
        }
        for x in partial {
            if inst.is_solution(&x)? {
                out.insert(x);
            }
        }
    }
    Ok(out)
}

/// All `x` with `rk(M_x) <= r`, sorted.
pub fn solve_minrank(inst: &MinRankInstance, strategy: Strategy, opts: MinRankOptions) -> Result<Vec<Vec<Elem>>> {
    let transposed;
    let inst = if opts.transpose {
        transposed = inst.transpose();
        &transposed
    } else {
        inst
    };
    let (n, r) = (inst.cols(), inst.r);
    if r >= n.min(inst.rows()) {
        return all_tuples(&inst.ring, inst.k());
    }
    let mut found = BTreeSet::new();
    match strategy {
        Strategy::KipnisShamir => {
            for z_block in combinations(n, r) {
                let (pr, system) = ks_model(inst, &z_block, opts.field_equations)?;
                found.extend(solve_projected(inst, &pr, &system)?);
            }
        }
        Strategy::SmGroebner => {
            for unit in 0..combinations(n, r).len() {
                let (pr, system) = sm_model(inst, Some(unit), opts.field_equations)?;
                found.extend(solve_projected(inst, &pr, &system)?);
            }
        }
        Strategy::SmLinearization => {
            found = solve_sm_linearization(inst)?;
        }
    }
    Ok(found.into_iter().collect())
}

fn solve_sm_linearization(inst: &MinRankInstance) -> Result<BTreeSet<Vec<Elem>>> {
    let ring = &inst.ring;
    let k = inst.k();
    let groups = combinations(inst.cols(), inst.r).len();
    let width = if inst.is_homogeneous() { k } else { k + 1 };
    let mut found = BTreeSet::new();
    for unit in 0..groups {
        let order: Vec<usize> = (0..groups).filter(|&g| g != unit).chain([unit]).collect();
        let t = linalg::hermite_form(ring, &sm_linear_system(inst, &order)).t;
        let last = (groups - 1) * width;
        let isolated: Vec<usize> = (0..t.rows())
            .filter(|&i| t.row(i)[..last].iter().all(Elem::is_zero) && t.row(i)[last..].iter().any(|x| !x.is_zero()))
            .collect();
        // with z_J a unit, each isolated row reads sum_l c_l x_l + c_0 = 0
        let lhs = t.select_rows(&isolated).col_slice(last, last + k);
        let rhs: Vec<Elem> = isolated
            .iter()
            .map(|&i| if width > k { ring.neg(&t[(i, last + k)]) } else { ring.zero() })
            .collect();
        let candidates = if isolated.is_empty() {
            all_tuples(ring, k)?.into_iter().collect()
        } else {
            match linalg::solve_linear(ring, &lhs, &rhs)? {
                Some((particular, gens)) => affine_span(ring, &particular, &gens)?,
                None => BTreeSet::new(),
            }
        };
        for x in candidates {
            if inst.is_solution(&x)? {
                found.insert(x);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8() -> ChainRing {
        ChainRing::zpk(2, 3).unwrap()
    }

    fn example_homogeneous() -> MinRankInstance {
        let r = z8();
        let m1 = Matrix::from_ints(&r, &[&[0, 0, 0, 7], &[1, 0, 0, 5], &[0, 1, 0, 2], &[0, 0, 1, 4]]).unwrap();
        let m2 = Matrix::from_ints(&r, &[&[0, 0, 7, 4], &[0, 0, 5, 3], &[1, 0, 2, 5], &[0, 1, 4, 2]]).unwrap();
        let m3 = Matrix::from_ints(&r, &[&[2, 2, 0, 4], &[4, 2, 0, 6], &[0, 4, 2, 4], &[0, 6, 6, 0]]).unwrap();
        MinRankInstance::new(r, None, vec![m1, m2, m3], 1).unwrap()
    }

    fn example_affine() -> MinRankInstance {
        let r = z8();
        let m0 = Matrix::from_ints(&r, &[&[5, 2, 3], &[5, 1, 4], &[4, 3, 6]]).unwrap();
        let m1 = Matrix::from_ints(&r, &[&[1, 2, 0], &[0, 1, 3], &[0, 2, 1]]).unwrap();
        let m2 = Matrix::from_ints(&r, &[&[0, 2, 1], &[1, 0, 3], &[0, 5, 5]]).unwrap();
        let m3 = Matrix::from_ints(&r, &[&[0, 5, 5], &[0, 1, 0], &[1, 2, 5]]).unwrap();
        MinRankInstance::new(r, Some(m0), vec![m1, m2, m3], 1).unwrap()
    }

    fn tuples(r: &ChainRing, v: &[[i64; 3]]) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = v.iter().map(|t| t.iter().map(|&c| r.from_int(c)).collect()).collect();
        out.sort();
        out
    }

    #[test]
    fn homogeneous_example_all_strategies() {
        let inst = example_homogeneous();
        let expected = tuples(inst.ring(), &[[0, 0, 0], [4, 4, 2], [0, 0, 4], [4, 4, 6]]);
        for strategy in [Strategy::KipnisShamir, Strategy::SmGroebner, Strategy::SmLinearization] {
            assert_eq!(solve_minrank(&inst, strategy, MinRankOptions::default()).unwrap(), expected, "{strategy:?}");
        }
        let opts = MinRankOptions { transpose: true, ..Default::default() };
        assert_eq!(solve_minrank(&inst, Strategy::SmLinearization, opts).unwrap(), expected);
    }

    #[test]
    fn ks_identity_model_matches_printed_system() {
        let inst = example_homogeneous();
        let (pr, system) = ks_model(&inst, &[3], false).unwrap();
        assert_eq!(pr.names(), &["z1", "z2", "z3", "x1", "x2", "x3"]);
        assert_eq!(system.len(), 12);
        // row 1, column 1 of M_x Z: M_x[1,1] + M_x[1,4] z1
        assert_eq!(system[0], pr.parse("2*x3 + 7*x1*z1 + 4*x2*z1 + 4*x3*z1").unwrap());
        let gb = buchberger(&pr, &system).unwrap();
        let expected: Vec<MultiPoly> = ["2*z1*x3 + 6*x3", "2*z2*x3 + 6*x3", "2*z3*x3 + 6*x3", "x1 + 2*x3", "x2 + 2*x3", "4*x3"]
            .iter()
            .map(|s| pr.parse(s).unwrap())
            .collect();
        // same ideal; the printed tails are not reduced modulo 4*x3
        for f in &expected {
            assert!(pr.full_reduce(f, &gb.generators).unwrap().is_zero());
        }
        for g in &gb.generators {
            assert!(pr.full_reduce(g, &expected).unwrap().is_zero());
        }
        assert_eq!(gb.generators.iter().map(|g| g.lm().cloned()).collect::<Vec<_>>(), expected.iter().map(|g| g.lm().cloned()).collect::<Vec<_>>());
    }

    #[test]
    fn printed_echelon_matrix() {
        let inst = example_homogeneous();
        let a = sm_linearization_matrix(&inst);
        assert_eq!((a.rows(), a.cols()), (24, 12));
        let e = sm_linearization_echelon(&inst);
        let r = inst.ring();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for i in 0..12 {
            let mut row = vec![0i64; 12];
            row[i] = if i % 3 == 2 { 2 } else { 1 };
            row[11] = 2;
            rows.push(row);
        }
        rows[11][11] = 4;
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        assert_eq!(e, Matrix::from_ints(r, &refs).unwrap());
    }

    #[test]
    fn affine_example() {
        let inst = example_affine();
        let expected = tuples(inst.ring(), &[[1, 3, 6]]);
        let fe = MinRankOptions { field_equations: true, ..Default::default() };
        assert_eq!(solve_minrank(&inst, Strategy::KipnisShamir, fe).unwrap(), expected);
        assert_eq!(solve_minrank(&inst, Strategy::SmGroebner, fe).unwrap(), expected);
        assert_eq!(solve_minrank(&inst, Strategy::SmLinearization, MinRankOptions::default()).unwrap(), expected);
        // the identity placement of Z' misses the solution; the z-row-first one finds it
        let (pr, system) = ks_model(&inst, &[2], true).unwrap();
        assert!(solve_projected(&inst, &pr, &system).unwrap().is_empty());
        let (pr, system) = ks_model(&inst, &[0], true).unwrap();
        assert_eq!(solve_projected(&inst, &pr, &system).unwrap().into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn degenerate_instances() {
        let r = ChainRing::zpk(2, 2).unwrap();
        let zero = Matrix::zero(2, 2);
        let inst = MinRankInstance::new(r.clone(), None, vec![zero.clone(), zero], 1).unwrap();
        for s in [Strategy::KipnisShamir, Strategy::SmGroebner, Strategy::SmLinearization] {
            assert_eq!(solve_minrank(&inst, s, MinRankOptions::default()).unwrap().len(), 16);
        }
        let (_, system) = ks_model(&inst, &[1], false).unwrap();
        assert!(system.is_empty());
        let full = MinRankInstance::new(r.clone(), None, vec![Matrix::identity(&r, 2)], 2).unwrap();
        let (_, system) = sm_model(&full, None, false).unwrap();
        assert!(system.is_empty());
        // M_1 = I_2, r = 1: 2 I still needs two generators
        let id = MinRankInstance::new(r.clone(), None, vec![Matrix::identity(&r, 2)], 1).unwrap();
        let got = solve_minrank(&id, Strategy::SmGroebner, MinRankOptions::default()).unwrap();
        assert_eq!(got, vec![vec![r.zero()]]);
        let sym = MinRankInstance::new(r.clone(), None, vec![Matrix::identity(&r, 2)], 1).unwrap();
        assert_eq!(sym.transpose(), sym);
    }
}
