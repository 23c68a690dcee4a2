//! Dense matrices over chain rings and products of chain rings: Smith and
//! echelon forms with transforms, rank, kernels, free envelopes, parity
//! checks and the standard form of a kernel basis.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rings::{ChainRing, Elem, PirRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(ring: &ChainRing, n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch);
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(ring: &ChainRing, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ring.from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Elem::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Rows `start..end`.
    pub fn row_slice(&self, start: usize, end: usize) -> Matrix {
        Matrix { rows: end - start, cols: self.cols, data: self.data[start * self.cols..end * self.cols].to_vec() }
    }

    /// Columns `start..end`.
    pub fn col_slice(&self, start: usize, end: usize) -> Matrix {
        let mut m = Matrix::zero(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                m[(i, j - start)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zero(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix { rows: rows.len(), cols: self.cols, data: rows.iter().flat_map(|&i| self.row(i).to_vec()).collect() }
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch);
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_dst += c * row_src`.
    fn add_row(&mut self, r: &ChainRing, dst: usize, src: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = r.mul(c, &self[(src, j)]);
            self[(dst, j)] = r.add(&self[(dst, j)], &v);
        }
    }

    fn add_col(&mut self, r: &ChainRing, dst: usize, src: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = r.mul(c, &self[(i, src)]);
            self[(i, dst)] = r.add(&self[(i, dst)], &v);
        }
    }

    fn scale_row(&mut self, r: &ChainRing, i: usize, c: &Elem) {
        for j in 0..self.cols {
            self[(i, j)] = r.mul(c, &self[(i, j)]);
        }
    }

    fn scale_col(&mut self, r: &ChainRing, j: usize, c: &Elem) {
        for i in 0..self.rows {
            self[(i, j)] = r.mul(c, &self[(i, j)]);
        }
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

pub fn mul(r: &ChainRing, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch);
    }
    let mut c = Matrix::zero(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a[(i, k)];
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                c[(i, j)] = r.add(&c[(i, j)], &r.mul(&x, &b[(k, j)]));
            }
        }
    }
    Ok(c)
}

pub fn add(r: &ChainRing, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch);
    }
    Ok(Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| r.add(x, y)).collect() })
}

pub fn sub(r: &ChainRing, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch);
    }
    Ok(Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| r.sub(x, y)).collect() })
}

pub fn scale(r: &ChainRing, a: &Matrix, c: &Elem) -> Matrix {
    Matrix { rows: a.rows, cols: a.cols, data: a.data.iter().map(|x| r.mul(x, c)).collect() }
}

/// Row vector times matrix.
pub fn vec_mul(r: &ChainRing, v: &[Elem], a: &Matrix) -> Result<Vec<Elem>> {
    if v.len() != a.rows {
        return Err(Error::DimensionMismatch);
    }
    Ok((0..a.cols).map(|j| (0..a.rows).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(&v[i], &a[(i, j)])))).collect())
}

/// Matrix times column vector.
pub fn mul_vec(r: &ChainRing, a: &Matrix, v: &[Elem]) -> Result<Vec<Elem>> {
    if v.len() != a.cols {
        return Err(Error::DimensionMismatch);
    }
    Ok((0..a.rows).map(|i| (0..a.cols).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&a[(i, j)], &v[j])))).collect())
}

/// `A = U * D * V` with `D` diagonal `p^(e_0), p^(e_1), ...`, `e_i` nondecreasing.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Smith {
    /// Exponents `e_i` of the nonzero diagonal entries.
    pub fn exponents(&self, r: &ChainRing) -> Vec<u32> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)]).take_while(|x| !x.is_zero()).map(|x| r.valuation(&x)).collect()
    }

    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols)).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }
}

fn pivot_search(r: &ChainRing, a: &Matrix, rows: core::ops::Range<usize>, cols: core::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(u32, usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let v = r.valuation(&x);
            if best.is_none_or(|(bv, _, _)| v < bv) {
                best = Some((v, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(r: &ChainRing, a: &Matrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = Matrix::identity(r, m);
    let mut left_inv = Matrix::identity(r, m);
    let mut right = Matrix::identity(r, n);
    let mut right_inv = Matrix::identity(r, n);
    for t in 0..m.min(n) {
        let Some((pi, pj)) = pivot_search(r, &d, t..m, t..n) else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        left_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        right_inv.swap_rows(t, pj);
        let piv = d[(t, t)];
        let v = r.valuation(&piv);
        let unit = r.div_pi_pow_exact(&piv, v);
        let unit_inv = r.invert_unit(&unit).expect("unit part is a unit");
        d.scale_row(r, t, &unit_inv);
        left.scale_row(r, t, &unit_inv);
        left_inv.scale_col(r, t, &unit);
        let piv = d[(t, t)];
        for i in t + 1..m {
            let x = d[(i, t)];
            if x.is_zero() {
                continue;
            }
            let c = r.neg(&r.divide(&x, &piv).expect("pivot has minimal valuation"));
            d.add_row(r, i, t, &c);
            left.add_row(r, i, t, &c);
            left_inv.add_col(r, t, i, &r.neg(&c));
        }
        for j in t + 1..n {
            let x = d[(t, j)];
            if x.is_zero() {
                continue;
            }
            let c = r.neg(&r.divide(&x, &piv).expect("pivot has minimal valuation"));
            d.add_col(r, j, t, &c);
            right.add_col(r, j, t, &c);
            right_inv.add_row(r, t, j, &r.neg(&c));
        }
    }
    // d = left * a * right, so a = left_inv * d * right_inv.
    Smith { u: left_inv, u_inv: left, d, v: right_inv, v_inv: right }
}

/// Minimal number of generators of the row span.
pub fn rank(r: &ChainRing, a: &Matrix) -> usize {
    smith_normal_form(r, a).rank()
}

/// `A = P * T` with `T` in row echelon form: each pivot is `p^v`, entries
/// above a pivot are reduced coordinatewise into `[0, p^v)`, zero rows last.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub p: Matrix,
    pub p_inv: Matrix,
    pub t: Matrix,
    /// `(row, col)` of each pivot.
    pub pivots: Vec<(usize, usize)>,
}

pub fn hermite_form(r: &ChainRing, a: &Matrix) -> Hermite {
    let m = a.rows;
    let mut t = a.clone();
    let mut left = Matrix::identity(r, m);
    let mut left_inv = Matrix::identity(r, m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == m {
            break;
        }
        let Some((pi, _)) = pivot_search(r, &t, row..m, col..col + 1) else { continue };
        t.swap_rows(row, pi);
        left.swap_rows(row, pi);
        left_inv.swap_cols(row, pi);
        let piv = t[(row, col)];
        let v = r.valuation(&piv);
        let unit = r.div_pi_pow_exact(&piv, v);
        let unit_inv = r.invert_unit(&unit).expect("unit part is a unit");
        t.scale_row(r, row, &unit_inv);
        left.scale_row(r, row, &unit_inv);
        left_inv.scale_col(r, row, &unit);
        let piv = t[(row, col)];
        for i in 0..m {
            if i == row {
                continue;
            }
            let x = t[(i, col)];
            if x.is_zero() {
                continue;
            }
            let target = if i < row { r.reduce_mod_pi_pow(&x, v) } else { Elem::ZERO };
            if target == x {
                continue;
            }
            let c = r.neg(&r.divide(&r.sub(&x, &target), &piv).expect("pivot divides"));
            t.add_row(r, i, row, &c);
            left.add_row(r, i, row, &c);
            left_inv.add_col(r, row, i, &r.neg(&c));
        }
        pivots.push((row, col));
        row += 1;
    }
    Hermite { p: left_inv, p_inv: left, t, pivots }
}

/// Generators (as vectors) of `{u : A u = 0}`.
pub fn kernel(r: &ChainRing, a: &Matrix) -> Vec<Vec<Elem>> {
    let s = smith_normal_form(r, a);
    let exps = s.exponents(r);
    let mut gens = Vec::new();
    for i in 0..a.cols {
        let scale = match exps.get(i) {
            Some(&e) => r.pi_pow(r.nu() - e),
            None => r.one(),
        };
        if scale.is_zero() {
            continue;
        }
        gens.push(s.v_inv.col(i).iter().map(|x| r.mul(x, &scale)).collect());
    }
    gens
}

/// All solutions of `A u = b`: a particular solution and kernel generators.
pub fn solve_linear(r: &ChainRing, a: &Matrix, b: &[Elem]) -> Result<Option<(Vec<Elem>, Vec<Vec<Elem>>)>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch);
    }
    let s = smith_normal_form(r, a);
    let bp = mul_vec(r, &s.u_inv, b)?;
    let exps = s.exponents(r);
    let mut w = vec![r.zero(); a.cols];
    for (i, x) in bp.iter().enumerate() {
        match exps.get(i) {
            Some(&e) => match r.divide(x, &r.pi_pow(e)) {
                Some(q) => w[i] = q,
                None => return Ok(None),
            },
            None => {
                if !x.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    let particular = mul_vec(r, &s.v_inv, &w)?;
    Ok(Some((particular, kernel(r, a))))
}

pub fn inverse(r: &ChainRing, a: &Matrix) -> Option<Matrix> {
    if a.rows != a.cols {
        return None;
    }
    let s = smith_normal_form(r, a);
    if s.exponents(r).iter().filter(|&&e| e == 0).count() != a.rows {
        return None;
    }
    // d = I, so a^-1 = v^-1 u^-1
    mul(r, &s.v_inv, &s.u_inv).ok()
}

/// Basis (as rows) of a free rank-`k` module containing the row span of `a`.
pub fn free_envelope(r: &ChainRing, a: &Matrix, k: usize) -> Result<Matrix> {
    let s = smith_normal_form(r, a);
    if s.rank() > k || k > a.cols {
        return Err(Error::RankTooLarge);
    }
    let basis = s.v.row_slice(0, k);
    Ok(hermite_form(r, &basis).t)
}

/// `true` when the rows are linearly independent.
pub fn rows_are_free(r: &ChainRing, b: &Matrix) -> bool {
    let s = smith_normal_form(r, b);
    s.rank() == b.rows && s.exponents(r).iter().all(|&e| e == 0)
}

/// `Z` (`n x (n - k)`) with independent columns and `y Z = 0` exactly when
/// `y` lies in the row span of the free basis `b`.
pub fn parity_check(r: &ChainRing, b: &Matrix) -> Result<Matrix> {
    let s = smith_normal_form(r, b);
    if s.rank() != b.rows || s.exponents(r).iter().any(|&e| e != 0) {
        return Err(Error::NotFree);
    }
    Ok(s.v_inv.col_slice(b.rows, b.cols))
}

/// `Z = P * (I ; Z') * Q` with `P` a permutation matrix and `Q` invertible.
#[derive(Clone, Debug)]
pub struct StandardForm {
    pub p: Matrix,
    /// Column `j` of the identity block sits at row `perm[j]` of `Z`.
    pub perm: Vec<usize>,
    pub z_prime: Matrix,
    pub q: Matrix,
}

pub fn standard_form(r: &ChainRing, z: &Matrix) -> Result<StandardForm> {
    let (n, c) = (z.rows, z.cols);
    let h = hermite_form(r, &z.transpose());
    if h.pivots.len() != c || h.pivots.iter().any(|&(i, j)| !r.is_unit(&h.t[(i, j)])) {
        return Err(Error::NotFree);
    }
    let pivot_cols: Vec<usize> = h.pivots.iter().map(|&(_, j)| j).collect();
    let mut perm = pivot_cols.clone();
    perm.extend((0..n).filter(|j| !pivot_cols.contains(j)));
    let mut p = Matrix::zero(n, n);
    for (k, &j) in perm.iter().enumerate() {
        p[(j, k)] = r.one();
    }
    // t * p = (I | z'^T)
    let tp = mul(r, &h.t, &p)?;
    let z_prime = tp.col_slice(c, n).transpose();
    Ok(StandardForm { p, perm, z_prime, q: h.p.transpose() })
}

pub fn standard_form_pir(ring: &PirRing, z: &[Matrix]) -> Result<StandardForm> {
    if !ring.is_chain_ring() {
        return Err(Error::NotChainRing);
    }
    let comp = z.first().ok_or(Error::ComponentMismatch)?;
    standard_form(&ring.components()[0], comp)
}

/// Rank over a product of chain rings: the maximum component rank, together
/// with the per-component ranks.
pub fn pir_rank(ring: &PirRing, components: &[Matrix]) -> Result<(usize, Vec<usize>)> {
    if components.len() != ring.components().len() {
        return Err(Error::ComponentMismatch);
    }
    let ranks: Vec<usize> = ring.components().iter().zip(components).map(|(r, m)| rank(r, m)).collect();
    Ok((ranks.iter().copied().max().unwrap_or(0), ranks))
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(r: &ChainRing, a: &Matrix) -> Result<Elem> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch);
    }
    Ok(det_rec(r, a, &(0..a.rows).collect::<Vec<_>>(), &(0..a.cols).collect::<Vec<_>>()))
}

/// The minor on the given rows and columns.
pub fn minor(r: &ChainRing, a: &Matrix, rows: &[usize], cols: &[usize]) -> Elem {
    det_rec(r, a, rows, cols)
}

fn det_rec(r: &ChainRing, a: &Matrix, rows: &[usize], cols: &[usize]) -> Elem {
    match rows.len() {
        0 => r.one(),
        1 => a[(rows[0], cols[0])],
        _ => {
            let mut acc = r.zero();
            for (k, &c) in cols.iter().enumerate() {
                let x = a[(rows[0], c)];
                if x.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
                let sub = r.mul(&x, &det_rec(r, a, &rows[1..], &rest));
                acc = if k % 2 == 0 { r.add(&acc, &sub) } else { r.sub(&acc, &sub) };
            }
            acc
        }
    }
}

/// All `r`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] != i + n - r) else { break };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8() -> ChainRing {
        ChainRing::zpk(2, 3).unwrap()
    }

    fn random_matrix(r: &ChainRing, rows: usize, cols: usize, seed: &mut u64) -> Matrix {
        let n = r.size().unwrap();
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                m[(i, j)] = r.element_at((*seed >> 33) % n);
            }
        }
        m
    }

    #[test]
    fn smith_examples() {
        let r = z8();
        let a = Matrix::from_ints(&r, &[&[2, 0], &[0, 4]]).unwrap();
        let s = smith_normal_form(&r, &a);
        assert_eq!(s.d, a);
        assert_eq!(s.u, Matrix::identity(&r, 2));
        assert_eq!(s.v, Matrix::identity(&r, 2));
        assert_eq!(rank(&r, &a), 2);
        assert_eq!(rank(&r, &scale(&r, &a, &r.from_int(6))), 1);
        assert_eq!(rank(&r, &Matrix::zero(3, 2)), 0);
        assert_eq!(rank(&r, &Matrix::identity(&r, 4)), 4);
    }

    #[test]
    fn smith_reconstructs() {
        let z9 = ChainRing::zpk(3, 2).unwrap();
        let mut seed = 7;
        for _ in 0..30 {
            let a = random_matrix(&z9, 3, 4, &mut seed);
            let s = smith_normal_form(&z9, &a);
            let back = mul(&z9, &mul(&z9, &s.u, &s.d).unwrap(), &s.v).unwrap();
            assert_eq!(back, a);
            assert_eq!(mul(&z9, &s.u, &s.u_inv).unwrap(), Matrix::identity(&z9, 3));
            assert_eq!(mul(&z9, &s.v, &s.v_inv).unwrap(), Matrix::identity(&z9, 4));
            let e = s.exponents(&z9);
            assert!(e.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn hermite_identity_and_reconstruction() {
        let r = z8();
        let h = hermite_form(&r, &Matrix::identity(&r, 3));
        assert_eq!(h.p, Matrix::identity(&r, 3));
        assert_eq!(h.t, Matrix::identity(&r, 3));
        let mut seed = 3;
        for _ in 0..30 {
            let a = random_matrix(&r, 4, 3, &mut seed);
            let h = hermite_form(&r, &a);
            assert_eq!(mul(&r, &h.p, &h.t).unwrap(), a);
            assert_eq!(mul(&r, &h.p, &h.p_inv).unwrap(), Matrix::identity(&r, 4));
            for i in 0..4 {
                for j in 0..3 {
                    if i > j {
                        assert!(h.t[(i, j)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let r = z8();
        let a = Matrix::from_ints(&r, &[&[2]]).unwrap();
        assert_eq!(kernel(&r, &a), vec![vec![r.from_int(4)]]);
        assert!(kernel(&r, &Matrix::identity(&r, 3)).is_empty());
    }

    #[test]
    fn envelope_and_parity_check_examples() {
        let r = z8();
        let e = Matrix::from_ints(&r, &[&[2, 0, 4]]).unwrap();
        let b = free_envelope(&r, &e, 1).unwrap();
        assert_eq!(b, Matrix::from_ints(&r, &[&[1, 0, 2]]).unwrap());
        assert_eq!(free_envelope(&r, &Matrix::identity(&r, 2), 1), Err(Error::RankTooLarge));
        let z = parity_check(&r, &b).unwrap();
        assert_eq!(z, Matrix::from_ints(&r, &[&[0, 6], &[1, 0], &[0, 1]]).unwrap());
        assert_eq!(parity_check(&r, &e), Err(Error::NotFree));
        let ir = Matrix::from_ints(&r, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(parity_check(&r, &ir).unwrap(), Matrix::from_ints(&r, &[&[0], &[0], &[1]]).unwrap());
        let free = Matrix::from_ints(&r, &[&[1, 3, 2], &[0, 1, 5]]).unwrap();
        let env = free_envelope(&r, &free, 2).unwrap();
        assert_eq!(hermite_form(&r, &free).t, env);
    }

    #[test]
    fn standard_form_examples() {
        let r = z8();
        let z = Matrix::from_ints(&r, &[&[1, 0], &[0, 1], &[3, 6]]).unwrap();
        let sf = standard_form(&r, &z).unwrap();
        assert_eq!(sf.p, Matrix::identity(&r, 3));
        assert_eq!(sf.q, Matrix::identity(&r, 2));
        assert_eq!(sf.z_prime, Matrix::from_ints(&r, &[&[3, 6]]).unwrap());
        let z6 = PirRing::integers_mod(6).unwrap();
        let comps: Vec<Matrix> = z6
            .components()
            .iter()
            .map(|c| Matrix::from_ints(c, &[&[2], &[3]]).unwrap())
            .collect();
        assert_eq!(standard_form_pir(&z6, &comps).err(), Some(Error::NotChainRing));
        let mut seed = 11;
        let mut tested = 0;
        while tested < 20 {
            let zr = random_matrix(&r, 4, 2, &mut seed);
            let Ok(sf) = standard_form(&r, &zr) else { continue };
            let block = Matrix::identity(&r, 2).vstack(&sf.z_prime).unwrap();
            assert_eq!(mul(&r, &mul(&r, &sf.p, &block).unwrap(), &sf.q).unwrap(), zr);
            tested += 1;
        }
    }

    #[test]
    fn pir_rank_is_max_over_components() {
        let z6 = PirRing::integers_mod(12).unwrap();
        let comps: Vec<Matrix> = z6
            .components()
            .iter()
            .map(|c| Matrix::from_ints(c, &[&[2, 0], &[0, 3]]).unwrap())
            .collect();
        assert_eq!(pir_rank(&z6, &comps).unwrap(), (2, vec![2, 1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mat(r: &ChainRing, rows: usize, cols: usize, raw: &[u64]) -> Matrix {
            let n = r.size().unwrap();
            let mut m = Matrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = r.element_at(raw[i * cols + j] % n);
                }
            }
            m
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn rank_metric_axioms(a in proptest::collection::vec(any::<u64>(), 6), b in proptest::collection::vec(any::<u64>(), 6), c in proptest::collection::vec(any::<u64>(), 6)) {
                let r = ChainRing::zpk(2, 3).unwrap();
                let (a, b, c) = (mat(&r, 2, 3, &a), mat(&r, 2, 3, &b), mat(&r, 2, 3, &c));
                let d = |x: &Matrix, y: &Matrix| rank(&r, &sub(&r, x, y).unwrap());
                prop_assert_eq!(d(&a, &a), 0);
                prop_assert_eq!(d(&a, &b) == 0, a == b);
                prop_assert_eq!(d(&a, &b), d(&b, &a));
                prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
                prop_assert_eq!(rank(&r, &a), rank(&r, &a.transpose()));
            }

            #[test]
            fn kernel_and_solve_match_enumeration(raw in proptest::collection::vec(any::<u64>(), 6), rhs in proptest::collection::vec(any::<u64>(), 2)) {
                let r = ChainRing::zpk(2, 2).unwrap();
                let a = mat(&r, 2, 3, &raw);
                let b: Vec<Elem> = rhs.iter().map(|x| r.element_at(x % 4)).collect();
                let gens = kernel(&r, &a);
                let mut span = std::collections::BTreeSet::new();
                span.insert(vec![r.zero(); 3]);
                loop {
                    let before = span.len();
                    let cur: Vec<Vec<Elem>> = span.iter().cloned().collect();
                    for v in &cur {
                        for g in &gens {
                            span.insert(v.iter().zip(g).map(|(x, y)| r.add(x, y)).collect());
                        }
                    }
                    if span.len() == before { break; }
                }
                let all: Vec<Vec<Elem>> = (0..64u64).map(|i| (0..3).map(|k| r.element_at((i >> (2 * k)) & 3)).collect()).collect();
                let brute_kernel: std::collections::BTreeSet<Vec<Elem>> = all.iter().filter(|u| mul_vec(&r, &a, u).unwrap().iter().all(Elem::is_zero)).cloned().collect();
                prop_assert_eq!(&span, &brute_kernel);
                let brute_sol: Vec<&Vec<Elem>> = all.iter().filter(|u| mul_vec(&r, &a, u).unwrap() == b).collect();
                match solve_linear(&r, &a, &b).unwrap() {
                    Some((x, _)) => {
                        prop_assert_eq!(mul_vec(&r, &a, &x).unwrap(), b.clone());
                        prop_assert_eq!(brute_sol.len(), span.len());
                    }
                    None => prop_assert!(brute_sol.is_empty()),
                }
            }

            #[test]
            fn parity_check_characterizes_row_span(raw in proptest::collection::vec(any::<u64>(), 6)) {
                let r = ChainRing::zpk(3, 2).unwrap();
                let b = mat(&r, 2, 3, &raw);
                prop_assume!(rows_are_free(&r, &b));
                let z = parity_check(&r, &b).unwrap();
                let mut span = std::collections::BTreeSet::new();
                for i in 0..81u64 {
                    let x = [r.element_at(i % 9), r.element_at(i / 9)];
                    span.insert(vec_mul(&r, &x, &b).unwrap());
                }
                for i in 0..729u64 {
                    let y: Vec<Elem> = (0..3).map(|k| r.element_at((i / 9u64.pow(k)) % 9)).collect();
                    let in_kernel = vec_mul(&r, &y, &z).unwrap().iter().all(Elem::is_zero);
                    prop_assert_eq!(in_kernel, span.contains(&y));
                }
            }

            #[test]
            fn envelope_contains_rows(raw in proptest::collection::vec(any::<u64>(), 6)) {
                let r = ChainRing::zpk(2, 2).unwrap();
                let a = mat(&r, 2, 3, &raw);
                let k = rank(&r, &a);
                let b = free_envelope(&r, &a, k.max(1).min(3)).unwrap();
                prop_assert!(rows_are_free(&r, &b));
                for i in 0..2 {
                    let sol = solve_linear(&r, &b.transpose(), a.row(i)).unwrap();
                    prop_assert!(sol.is_some());
                }
            }
        }
    }
}
