//! Rank-metric decoding: given a code `C = row_S(G)` over a Galois extension
//! `S` of `R`, a received word `y` and a radius `r`, find `c = xG` with
//! `rk(y - c) <= r`.
//!
//! Solvers: reduction to MinRank, Support-Minors equations over `S` expanded
//! to `R`, and the skew key equation `sum_l z_l sigma^l(y - xG) = 0`
//! (`z_r = 1`), either linearized and put in Hermite form or expanded to `R`
//! and handed to a Gröbner basis.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extension::GaloisExtension;
use crate::groebner::{buchberger, elimination_subbasis};
use crate::linalg::{self, combinations, Matrix};
use crate::minrank::{self, MinRankInstance, MinRankOptions, CANDIDATE_CAP};
use crate::polys::{MonomialOrder, MultiPoly, PolyRing};
use crate::rings::Elem;
use crate::solve::{ring_vanishing_polynomial, solve_system, SolveOptions};

#[derive(Clone, Debug)]
pub struct RankDecodingInstance {
    ext: GaloisExtension,
    /// `k` rows of length `n` over `S`.
    g: Vec<Vec<Elem>>,
    y: Vec<Elem>,
    r: usize,
}

impl RankDecodingInstance {
    pub fn new(ext: GaloisExtension, g: Vec<Vec<Elem>>, y: Vec<Elem>, r: usize) -> Result<RankDecodingInstance> {
        if g.iter().any(|row| row.len() != y.len()) {
            return Err(Error::DimensionMismatch);
        }
        Ok(RankDecodingInstance { ext, g, y, r })
    }

    pub fn extension(&self) -> &GaloisExtension {
        &self.ext
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.g
    }

    pub fn received(&self) -> &[Elem] {
        &self.y
    }

    pub fn radius(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.g.len()
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    /// `xG`.
    pub fn codeword(&self, x: &[Elem]) -> Vec<Elem> {
        let s = self.ext.ring();
        (0..self.n()).map(|j| x.iter().zip(&self.g).fold(s.zero(), |acc, (c, row)| s.add(&acc, &s.mul(c, &row[j])))).collect()
    }

    /// `y - xG`.
    pub fn error_of(&self, x: &[Elem]) -> Vec<Elem> {
        let s = self.ext.ring();
        self.codeword(x).iter().zip(&self.y).map(|(c, y)| s.sub(y, c)).collect()
    }

    pub fn is_decoding(&self, x: &[Elem]) -> bool {
        x.len() == self.k() && self.ext.vector_rank(&self.error_of(x)) <= self.r
    }

    /// `x_i = sum_u coords[i m + u] alpha^u`.
    pub fn recombine(&self, coords: &[Elem]) -> Result<Vec<Elem>> {
        let m = self.ext.degree();
        if coords.len() != self.k() * m {
            return Err(Error::DimensionMismatch);
        }
        coords.chunks(m).map(|c| self.ext.from_coords(c)).collect()
    }
}

/// `M_0 = rep(-y)`, then `rep(alpha^u g_i)` for `i = 1..k`, `u = 0..m-1`.
/// MinRank solutions are the coordinates taken by [`RankDecodingInstance::recombine`].
pub fn to_minrank(rd: &RankDecodingInstance) -> Result<MinRankInstance> {
    let ext = &rd.ext;
    let s = ext.ring();
    let neg_y: Vec<Elem> = rd.y.iter().map(|v| s.neg(v)).collect();
    let mut gens = Vec::new();
    for row in &rd.g {
        let mut power = s.one();
        for _ in 0..ext.degree() {
            gens.push(ext.matrix_representation(&row.iter().map(|c| s.mul(&power, c)).collect::<Vec<_>>()));
            power = s.mul(&power, &ext.alpha());
        }
    }
    if gens.is_empty() {
        gens.push(Matrix::zero(ext.degree(), rd.n()));
    }
    MinRankInstance::new(ext.base().clone(), Some(ext.matrix_representation(&neg_y)), gens, rd.r)
}

/// Polynomials over `S` in unknowns ranging over `R`, stored as their `m`
/// coordinates in the basis `1, alpha, ..., alpha^(m-1)`.
struct Expander<'a> {
    ext: &'a GaloisExtension,
    pr: &'a PolyRing,
    /// `coords(alpha^u alpha^v)`.
    products: Vec<Vec<Vec<Elem>>>,
}

type SPoly = Vec<MultiPoly>;

impl<'a> Expander<'a> {
    fn new(ext: &'a GaloisExtension, pr: &'a PolyRing) -> Expander<'a> {
        let s = ext.ring();
        let m = ext.degree();
        let powers: Vec<Elem> = (0..m).scan(s.one(), |acc, _| {
            let cur = *acc;
            *acc = s.mul(acc, &ext.alpha());
            Some(cur)
        }).collect();
        let products = (0..m).map(|u| (0..m).map(|v| ext.coords(&s.mul(&powers[u], &powers[v]))).collect()).collect();
        Expander { ext, pr, products }
    }

    fn m(&self) -> usize {
        self.ext.degree()
    }

    fn zero(&self) -> SPoly {
        vec![MultiPoly::zero(); self.m()]
    }

    /// `sum_u v_(first + u) alpha^u`.
    fn unknown(&self, first: usize) -> SPoly {
        (0..self.m()).map(|u| self.pr.var(first + u)).collect()
    }

    /// An unknown of `R` itself.
    fn base_unknown(&self, var: usize) -> SPoly {
        let mut f = self.zero();
        f[0] = self.pr.var(var);
        f
    }

    fn constant(&self, c: &Elem) -> SPoly {
        self.ext.coords(c).into_iter().map(|x| self.pr.constant(x)).collect()
    }

    fn add(&self, a: &SPoly, b: &SPoly) -> SPoly {
        a.iter().zip(b).map(|(x, y)| self.pr.add(x, y)).collect()
    }

    fn sub(&self, a: &SPoly, b: &SPoly) -> SPoly {
        a.iter().zip(b).map(|(x, y)| self.pr.sub(x, y)).collect()
    }

    fn mul(&self, a: &SPoly, b: &SPoly) -> SPoly {
        let mut out = self.zero();
        for (u, au) in a.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            for (v, bv) in b.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
                let prod = self.pr.mul(au, bv);
                for (w, c) in self.products[u][v].iter().enumerate() {
                    if !c.is_zero() {
                        out[w] = self.pr.add(&out[w], &self.pr.scale(&prod, c));
                    }
                }
            }
        }
        out
    }

    /// `sigma^l`, which fixes the `R`-valued unknowns.
    fn frobenius(&self, a: &SPoly, l: i64) -> SPoly {
        let s = self.ext.ring();
        let mut out = self.zero();
        for (u, au) in a.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
            let image = self.ext.coords(&self.ext.frobenius(&s.pow(&self.ext.alpha(), u as u64), l));
            for (w, c) in image.iter().enumerate() {
                if !c.is_zero() {
                    out[w] = self.pr.add(&out[w], &self.pr.scale(au, c));
                }
            }
        }
        out
    }

    /// `xG - y` at column `j`, with `x_i` the unknown starting at `first + i m`.
    fn residual(&self, rd: &RankDecodingInstance, first: usize, j: usize) -> SPoly {
        let mut f = self.constant(&self.ext.ring().neg(&rd.y[j]));
        for (i, row) in rd.g.iter().enumerate() {
            f = self.add(&f, &self.mul(&self.unknown(first + i * self.m()), &self.constant(&row[j])));
        }
        f
    }
}

fn coordinate_names(prefix: &str, blocks: usize, m: usize, first_block: usize) -> Vec<String> {
    let mut names = Vec::new();
    for b in 0..blocks {
        for u in 0..m {
            names.push(if blocks == 1 { alloc::format!("{prefix}{u}") } else { alloc::format!("{prefix}{}_{u}", b + first_block) });
        }
    }
    names
}

fn with_field_equations(pr: &PolyRing, mut system: Vec<MultiPoly>) -> Result<Vec<MultiPoly>> {
    for v in 0..pr.nvars() {
        system.push(ring_vanishing_polynomial(pr, v)?);
    }
    Ok(system)
}

/// Support-Minors equations over `S`: for every `(r+1)`-subset `J`,
/// `sum_s (-1)^s (c_(j_s) - y_(j_s)) z_(J - j_s) = 0` with `c = xG`, expanded
/// to `R` (`J`-major, coordinates inside). Variables: `z1 .. zN` (one per
/// `r`-subset of columns, lex) then the coordinates of `x`; `unit` fixes one
/// `z` to 1.
pub fn sm_rd_model(rd: &RankDecodingInstance, unit: Option<usize>, field_equations: bool) -> Result<(PolyRing, Vec<MultiPoly>)> {
    let (n, r, k, m) = (rd.n(), rd.r, rd.k(), rd.ext.degree());
    let subsets = combinations(n, r);
    let mut names: Vec<String> = (1..=subsets.len()).map(|i| alloc::format!("z{i}")).collect();
    names.extend(coordinate_names("x", k, m, 1));
    let pr = PolyRing::with_names(rd.ext.base().clone(), names, MonomialOrder::Lex);
    let ex = Expander::new(&rd.ext, &pr);
    let first_x = subsets.len();
    let mut system = Vec::new();
    if r < n {
        let residuals: Vec<SPoly> = (0..n).map(|j| ex.residual(rd, first_x, j)).collect();
        for big in combinations(n, r + 1) {
            let mut f = ex.zero();
            for s in 0..=r {
                let rest: Vec<usize> = big.iter().enumerate().filter(|&(b, _)| b != s).map(|(_, &c)| c).collect();
                let z = subsets.binary_search(&rest).expect("subset present");
                let term = ex.mul(&residuals[big[s]], &ex.base_unknown(z));
                f = if s % 2 == 0 { ex.add(&f, &term) } else { ex.sub(&f, &term) };
            }
            for coord in f {
                let coord = match unit {
                    Some(u) => pr.substitute(&coord, u, &pr.ring().one()),
                    None => coord,
                };
                if !coord.is_zero() {
                    system.push(coord);
                }
            }
        }
    }
    let system = if field_equations { with_field_equations(&pr, system)? } else { system };
    Ok((pr, system))
}

/// The key equation `sum_l z_l sigma^l(xG - y) = 0` with `z_r = 1`, expanded
/// to `R`. Variables: the coordinates of `z_0 .. z_(r-1)` (named `t..`) then
/// those of `x`, lex in that order; equation `j m + w` is coordinate `w` of
/// column `j`.
#[derive(Clone, Debug)]
pub struct KeyEquationSystem {
    pub ring: PolyRing,
    pub equations: Vec<MultiPoly>,
    r: usize,
    k: usize,
    m: usize,
}

/// The expansion written as `(x ⊗ z) A + x B + z C + D = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
}

pub fn key_equation_model(rd: &RankDecodingInstance) -> KeyEquationSystem {
    let (n, r, k, m) = (rd.n(), rd.r, rd.k(), rd.ext.degree());
    let mut names = coordinate_names("t", r, m, 0);
    names.extend(coordinate_names("x", k, m, 1));
    let pr = PolyRing::with_names(rd.ext.base().clone(), names, MonomialOrder::Lex);
    let ex = Expander::new(&rd.ext, &pr);
    let mut equations = Vec::with_capacity(n * m);
    for j in 0..n {
        let res = ex.residual(rd, r * m, j);
        let mut f = ex.frobenius(&res, r as i64);
        for l in 0..r {
            f = ex.add(&f, &ex.mul(&ex.unknown(l * m), &ex.frobenius(&res, l as i64)));
        }
        equations.extend(f);
    }
    KeyEquationSystem { ring: pr, equations, r, k, m }
}

impl KeyEquationSystem {
    /// Index of the first `x` coordinate.
    pub fn x_offset(&self) -> usize {
        self.r * self.m
    }

    pub fn bilinear_form(&self) -> Result<BilinearForm> {
        let (zn, xn, cols) = (self.r * self.m, self.k * self.m, self.equations.len());
        let base = self.ring.ring();
        let mut a = vec![vec![base.zero(); cols]; xn * zn];
        let mut b = vec![vec![base.zero(); cols]; xn];
        let mut c = vec![vec![base.zero(); cols]; zn];
        let mut d = vec![vec![base.zero(); cols]; 1];
        for (e, f) in self.equations.iter().enumerate() {
            for t in f.terms() {
                let vars: Vec<(usize, u32)> = t.mono.0.iter().copied().enumerate().filter(|&(_, d)| d > 0).collect();
                let slot = match vars.as_slice() {
                    [] => &mut d[0][e],
                    [(v, 1)] if *v < zn => &mut c[*v][e],
                    [(v, 1)] => &mut b[*v - zn][e],
                    [(z, 1), (x, 1)] if *z < zn && *x >= zn => &mut a[(*x - zn) * zn + *z][e],
                    _ => return Err(Error::DimensionMismatch),
                };
                *slot = base.add(slot, &t.coeff);
            }
        }
        let build = |rows: Vec<Vec<Elem>>| Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zero(0, cols));
        Ok(BilinearForm { a: build(a), b: build(b), c: build(c), d: build(d) })
    }
}

/// `sum_l z_l sigma^l(xG - y)` over `S`, with `z_r = 1` appended to `z`.
pub fn key_equation_residual(rd: &RankDecodingInstance, x: &[Elem], z: &[Elem]) -> Vec<Elem> {
    let ext = &rd.ext;
    let s = ext.ring();
    rd.error_of(x)
        .iter()
        .map(|e| {
            let minus = s.neg(e);
            let top = ext.frobenius(&minus, rd.r as i64);
            z.iter().enumerate().fold(top, |acc, (l, zl)| s.add(&acc, &s.mul(zl, &ext.frobenius(&minus, l as i64))))
        })
        .collect()
}

/// `(-sigma^0(y) .. -sigma^(r-1)(y) | sigma^0(G^T) .. sigma^r(G^T) | -sigma^r(y))`,
/// an `n x (k+1)(r+1)` matrix over `S`.
pub fn key_linearization_matrix(rd: &RankDecodingInstance) -> Matrix {
    let ext = &rd.ext;
    let s = ext.ring();
    let rows = (0..rd.n())
        .map(|j| {
            let neg_y = |l: usize| s.neg(&ext.frobenius(&rd.y[j], l as i64));
            let mut row: Vec<Elem> = (0..rd.r).map(neg_y).collect();
            for l in 0..=rd.r {
                row.extend(rd.g.iter().map(|g| ext.frobenius(&g[j], l as i64)));
            }
            row.push(neg_y(rd.r));
            row
        })
        .collect();
    Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zero(0, (rd.k() + 1) * (rd.r + 1)))
}

/// Reads `x = -sigma^(-r)(b)` off a Hermite form whose rows `r(k+1) ..
/// r(k+1)+k` are `(0 | I_k | b)` with nothing below; `Inconclusive` otherwise
/// or when the result fails the rank check.
pub fn solve_key_linearization(rd: &RankDecodingInstance) -> Result<Vec<Elem>> {
    let ext = &rd.ext;
    let s = ext.ring();
    let (k, r) = (rd.k(), rd.r);
    let top = r * (k + 1);
    let t = linalg::hermite_form(s, &key_linearization_matrix(rd)).t;
    if t.rows() < top + k {
        return Err(Error::Inconclusive);
    }
    let mut b = Vec::with_capacity(k);
    for i in 0..k {
        let row = t.row(top + i);
        let shaped = row[..top].iter().all(Elem::is_zero)
            && (0..k).all(|c| row[top + c] == if c == i { s.one() } else { s.zero() });
        if !shaped {
            return Err(Error::Inconclusive);
        }
        b.push(row[top + k]);
    }
    if (top + k..t.rows()).any(|i| t.row(i).iter().any(|v| !v.is_zero())) {
        return Err(Error::Inconclusive);
    }
    let x: Vec<Elem> = b.iter().map(|v| s.neg(&ext.frobenius(v, -(r as i64)))).collect();
    if rd.is_decoding(&x) {
        Ok(x)
    } else {
        Err(Error::Inconclusive)
    }
}

/// Lex Gröbner basis of a model whose last `k m` variables are the
/// coordinates of `x`; every point of the elimination variety is recombined
/// and kept when it decodes.
fn solve_projected(rd: &RankDecodingInstance, pr: &PolyRing, system: &[MultiPoly]) -> Result<BTreeSet<Vec<Elem>>> {
    let offset = pr.nvars() - rd.k() * rd.ext.degree();
    let gb = buchberger(pr, system)?;
    if gb.is_unit_ideal() {
        return Ok(BTreeSet::new());
    }
    let elim = elimination_subbasis(&gb, offset)?;
    let sols = solve_system(pr, &elim.generators, SolveOptions::default())?;
    let base = pr.ring();
    let patterns: BTreeSet<Vec<Option<Elem>>> = sols.patterns.iter().map(|p| p[offset..].to_vec()).collect();
    let mut out = BTreeSet::new();
    for pattern in patterns {
        let mut points: Vec<Vec<Elem>> = vec![Vec::new()];
        for slot in pattern {
            let choices: Vec<Elem> = match slot {
                Some(v) => vec![v],
                None => base.elements().collect(),
            };
            points = points
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut p = p.clone();
                        p.push(*c);
                        p
                    })
                })
                .collect();
            if points.len() as u64 > CANDIDATE_CAP {
                return Err(Error::Inconclusive);
            }
        }
        for coords in points {
            let x = rd.recombine(&coords)?;
            if rd.is_decoding(&x) {
                out.insert(x);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GroebnerDecodeOptions {
    pub field_equations: bool,
}

/// Every `x` admitted by the expanded key equation, rank-checked.
pub fn solve_key_groebner(rd: &RankDecodingInstance, opts: GroebnerDecodeOptions) -> Result<Vec<Vec<Elem>>> {
    let sys = key_equation_model(rd);
    let eqs: Vec<MultiPoly> = sys.equations.iter().filter(|f| !f.is_zero()).cloned().collect();
    let eqs = if opts.field_equations { with_field_equations(&sys.ring, eqs)? } else { eqs };
    Ok(solve_projected(rd, &sys.ring, &eqs)?.into_iter().collect())
}

/// Every `x` admitted by the Support-Minors equations, one Plücker
/// coordinate set to 1 at a time.
pub fn solve_sm_rd(rd: &RankDecodingInstance, opts: GroebnerDecodeOptions) -> Result<Vec<Vec<Elem>>> {
    let mut found = BTreeSet::new();
    for unit in 0..combinations(rd.n(), rd.r).len() {
        let (pr, system) = sm_rd_model(rd, Some(unit), opts.field_equations)?;
        found.extend(solve_projected(rd, &pr, &system)?);
    }
    Ok(found.into_iter().collect())
}

/// Every `x` found through the MinRank reduction.
pub fn solve_via_minrank(rd: &RankDecodingInstance, strategy: minrank::Strategy, opts: MinRankOptions) -> Result<Vec<Vec<Elem>>> {
    let inst = to_minrank(rd)?;
    let coords = minrank::solve_minrank(&inst, strategy, opts)?;
    if rd.k() == 0 {
        return Ok(if coords.is_empty() { Vec::new() } else { vec![Vec::new()] });
    }
    let found: BTreeSet<Vec<Elem>> = coords.iter().map(|c| rd.recombine(c)).collect::<Result<_>>()?;
    Ok(found.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStrategy {
    /// Key-equation linearization, then Support-Minors linearization of the
    /// MinRank instance, then the key equation by Gröbner bases, then
    /// Kipnis-Shamir.
    Auto,
    KeyLinearization,
    SmLinearization,
    KeyGroebner,
    SupportMinors,
    MinRankKs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedWord {
    pub x: Vec<Elem>,
    pub c: Vec<Elem>,
    pub e: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoding {
    /// The strategy that produced the answer (never `Auto`).
    pub strategy: DecodeStrategy,
    /// All decodings found, sorted by `x`.
    pub words: Vec<DecodedWord>,
}

fn run_strategy(rd: &RankDecodingInstance, strategy: DecodeStrategy) -> Result<Vec<Vec<Elem>>> {
    let gb = GroebnerDecodeOptions::default();
    match strategy {
        DecodeStrategy::KeyLinearization => solve_key_linearization(rd).map(|x| vec![x]),
        DecodeStrategy::SmLinearization => solve_via_minrank(rd, minrank::Strategy::SmLinearization, MinRankOptions::default()),
        DecodeStrategy::KeyGroebner => solve_key_groebner(rd, gb),
        DecodeStrategy::SupportMinors => solve_sm_rd(rd, gb),
        DecodeStrategy::MinRankKs => solve_via_minrank(rd, minrank::Strategy::KipnisShamir, MinRankOptions::default()),
        DecodeStrategy::Auto => unreachable!("expanded by decode"),
    }
}

/// Decodes with one strategy or the automatic cascade. Every returned word
/// satisfies `c = xG` and `rk(e) <= r`; `NoSolution` when a complete
/// strategy finds nothing.
pub fn decode(rd: &RankDecodingInstance, strategy: DecodeStrategy) -> Result<Decoding> {
    let order: &[DecodeStrategy] = match strategy {
        DecodeStrategy::Auto => &[
            DecodeStrategy::KeyLinearization,
            DecodeStrategy::SmLinearization,
            DecodeStrategy::KeyGroebner,
            DecodeStrategy::MinRankKs,
        ],
        _ => core::slice::from_ref(&strategy),
    };
    let mut last = Error::Inconclusive;
    for &s in order {
        match run_strategy(rd, s) {
            Ok(xs) if xs.is_empty() => return Err(Error::NoSolution),
            Ok(xs) => {
                let words = xs
                    .into_iter()
                    .map(|x| {
                        let c = rd.codeword(&x);
                        let e = rd.error_of(&x);
                        debug_assert!(rd.ext.vector_rank(&e) <= rd.r);
                        DecodedWord { x, c, e }
                    })
                    .collect();
                return Ok(Decoding { strategy: s, words });
            }
            Err(e @ (Error::Inconclusive | Error::ResourceExceeded(_))) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}
