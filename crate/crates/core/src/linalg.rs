//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: row-style Hermite
//! normal form, Smith normal form with both transforms, integer lattices given
//! by generating rows, and kernel counting for maps between finite abelian
//! groups presented as `Z^r / D -> Z^c / T`.
//!
//! Vectors are rows and matrices act on the right (`x -> x * M`), matching the
//! convention `u -> uG` used for arrangements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o += x * m;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Block diagonal matrix with `blocks` along the diagonal.
    pub fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[r * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            if !s.is_zero() {
                self.data[target * self.cols + j] -= q * s;
            }
        }
    }

    /// col[target] -= q * col[source]
    fn sub_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            if !s.is_zero() {
                self.data[i * self.cols + target] -= q * s;
            }
        }
    }

    /// Replaces rows (a, b) by (s*a + t*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, coeffs: [&BigInt; 4]) {
        let [s, t, u, v] = coeffs;
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self.data[a * self.cols + j] = s * &x + t * &y;
            self.data[b * self.cols + j] = u * &x + v * &y;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (h, _) = hnf_impl(self, false);
        (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn hnf_impl(m: &IntMatrix, track: bool) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = if track { IntMatrix::identity(m.rows) } else { IntMatrix::zeros(0, 0) };
    let mut pr = 0;
    for col in 0..h.cols {
        if pr == h.rows {
            break;
        }
        for r in pr + 1..h.rows {
            if h.get(r, col).is_zero() {
                continue;
            }
            let a = h.get(pr, col).clone();
            let b = h.get(r, col).clone();
            let (g, s, t) = extended_gcd(&a, &b);
            let u1 = -(&b / &g);
            let v1 = &a / &g;
            h.combine_rows(pr, r, [&s, &t, &u1, &v1]);
            if track {
                u.combine_rows(pr, r, [&s, &t, &u1, &v1]);
            }
        }
        if h.get(pr, col).is_zero() {
            continue;
        }
        if h.get(pr, col).is_negative() {
            h.negate_row(pr);
            if track {
                u.negate_row(pr);
            }
        }
        let p = h.get(pr, col).clone();
        for r in 0..pr {
            let q = h.get(r, col).div_floor(&p);
            h.sub_row_multiple(r, pr, &q);
            if track {
                u.sub_row_multiple(r, pr, &q);
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * M = H`. Pivots are positive, entries above a pivot lie in `[0, pivot)`,
/// zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    hnf_impl(m, true)
}

/// Smith normal form `U * M * V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// `d_1 | d_2 | ...`, length `min(rows, cols)`, zeros trailing.
    pub elementary_divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.elementary_divisors.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn nonzero_divisors(&self) -> impl Iterator<Item = &BigInt> {
        self.elementary_divisors.iter().filter(|d| !d.is_zero())
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    'outer: for k in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..d.rows {
                for j in k..d.cols {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'outer };
            d.swap_rows(k, bi);
            u.swap_rows(k, bi);
            d.swap_cols(k, bj);
            v.swap_cols(k, bj);

            let p = d.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..d.rows {
                let q = d.get(i, k).div_floor(&p);
                d.sub_row_multiple(i, k, &q);
                u.sub_row_multiple(i, k, &q);
                clean &= d.get(i, k).is_zero();
            }
            for j in k + 1..d.cols {
                let q = d.get(k, j).div_floor(&p);
                d.sub_col_multiple(j, k, &q);
                v.sub_col_multiple(j, k, &q);
                clean &= d.get(k, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (k + 1..d.rows)
                .find(|&i| (k + 1..d.cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    // row k += row i; the next pass produces a smaller remainder
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(k, i, &minus_one);
                    u.sub_row_multiple(k, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    let elementary_divisors = (0..n).map(|k| d.get(k, k).clone()).collect();
    SnfResult { u, d, v, elementary_divisors }
}

/// An integer lattice inside `Z^ambient_rank`, stored as the nonzero rows of
/// its Hermite normal form. Two lattices are equal iff their stored bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// Lattice spanned by the rows of `generators`.
    pub fn from_generators(generators: &IntMatrix) -> Lattice {
        let (h, _) = hnf_impl(generators, false);
        let rows: Vec<Vec<BigInt>> =
            h.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let n = rows.len();
        let data = rows.into_iter().flatten().collect();
        Lattice { ambient_rank: generators.cols, basis: IntMatrix { rows: n, cols: generators.cols, data } }
    }

    pub fn from_rows(ambient_rank: usize, rows: Vec<Vec<BigInt>>) -> Result<Lattice> {
        Ok(Self::from_generators(&IntMatrix::from_rows(ambient_rank, rows)?))
    }

    pub fn zero(ambient_rank: usize) -> Lattice {
        Lattice { ambient_rank, basis: IntMatrix::zeros(0, ambient_rank) }
    }

    pub fn full(ambient_rank: usize) -> Lattice {
        Lattice { ambient_rank, basis: IntMatrix::identity(ambient_rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn is_full_rank(&self) -> bool {
        self.basis.rows == self.ambient_rank
    }

    /// Index in `Z^n` for full-rank lattices.
    pub fn determinant(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some((0..self.ambient_rank).map(|i| self.basis.get(i, i).clone()).product())
    }

    fn pivot_columns(&self) -> Vec<usize> {
        (0..self.basis.rows)
            .map(|i| self.basis.row(i).iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
            .collect()
    }

    /// Canonical representative of `v + L`.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, got: v.len() });
        }
        let mut out = v.to_vec();
        for (i, p) in self.pivot_columns().into_iter().enumerate() {
            let q = out[p].div_floor(self.basis.get(i, p));
            if q.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o -= &q * b;
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.ambient_rank == self.ambient_rank
            && (0..other.basis.rows).all(|i| self.contains(other.basis.row(i)).unwrap_or(false))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        Ok(Self::from_generators(&self.basis.vstack(&other.basis)?))
    }

    pub fn scaled(&self, k: &BigInt) -> Lattice {
        Self::from_generators(&self.basis.scaled(k))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, got: other.ambient_rank });
        }
        let n = self.ambient_rank;
        let mut rows = Vec::new();
        for i in 0..self.basis.rows {
            let r = self.basis.row(i);
            rows.push(r.iter().chain(r.iter()).cloned().collect::<Vec<_>>());
        }
        for i in 0..other.basis.rows {
            let r = other.basis.row(i);
            rows.push(r.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), n)).collect());
        }
        let stacked = IntMatrix::from_rows(2 * n, rows)?;
        Ok(Self::tail_block(&stacked, n))
    }

    /// HNF of `m`, keeping the rows whose first `split` entries vanish, restricted
    /// to the remaining columns.
    fn tail_block(m: &IntMatrix, split: usize) -> Lattice {
        let (h, _) = hnf_impl(m, false);
        let width = m.cols - split;
        let mut rows = Vec::new();
        for i in 0..h.rows {
            let r = h.row(i);
            if r[..split].iter().all(Zero::is_zero) && r[split..].iter().any(|x| !x.is_zero()) {
                rows.push(r[split..].to_vec());
            }
        }
        let n = rows.len();
        Lattice { ambient_rank: width, basis: IntMatrix { rows: n, cols: width, data: rows.into_iter().flatten().collect() } }
    }

    /// `{x in Z^rows(m) : x * m in target}`.
    pub fn preimage(m: &IntMatrix, target: &Lattice) -> Result<Lattice> {
        if m.cols != target.ambient_rank {
            return Err(Error::DimensionMismatch { expected: target.ambient_rank, got: m.cols });
        }
        let r = m.rows;
        let c = m.cols;
        let mut rows = Vec::with_capacity(r + target.basis.rows);
        for i in 0..r {
            let mut row = m.row(i).to_vec();
            row.extend((0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            rows.push(row);
        }
        for i in 0..target.basis.rows {
            let mut row = target.basis.row(i).to_vec();
            row.extend(std::iter::repeat_n(BigInt::zero(), r));
            rows.push(row);
        }
        let stacked = IntMatrix::from_rows(c + r, rows)?;
        Ok(Self::tail_block(&stacked, c))
    }

    /// `(L tensor Q) intersect Z^n`.
    pub fn saturation(&self) -> Lattice {
        let n = self.ambient_rank;
        if self.rank() == 0 {
            return Lattice::zero(n);
        }
        if self.is_full_rank() {
            return Lattice::full(n);
        }
        // x with B x = 0, then everything orthogonal to those
        let right_kernel = Self::preimage(&self.basis.transpose(), &Lattice::zero(self.basis.rows))
            .expect("dimensions agree");
        let k = right_kernel.basis.transpose();
        Self::preimage(&k, &Lattice::zero(k.cols)).expect("dimensions agree")
    }
}

/// True iff `v` lies in the integer row span of `lattice`.
pub fn lattice_membership(v: &[BigInt], lattice: &Lattice) -> Result<bool> {
    lattice.contains(v)
}

/// `#{x in Z^r / domain : x * m in target}` for a map that is well defined on
/// the quotients.
pub fn count_kernel(m: &IntMatrix, target: &Lattice, domain: &Lattice) -> Result<BigInt> {
    if m.rows != domain.ambient_rank {
        return Err(Error::DimensionMismatch { expected: domain.ambient_rank, got: m.rows });
    }
    if !domain.is_full_rank() {
        return Err(Error::InfiniteQuotient);
    }
    let kernel = Lattice::preimage(m, target)?;
    if !kernel.contains_lattice(domain) {
        return Err(Error::IllDefinedMap);
    }
    let d = domain.determinant().expect("full rank");
    let k = kernel.determinant().expect("contains a full-rank lattice");
    Ok(d / k)
}

#[cfg(test)]
pub(crate) fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

#[cfg(test)]
pub(crate) fn bigs(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) || !h.get(i, p).is_positive() {
                        return false;
                    }
                    for r in 0..i {
                        if h.get(r, p).is_negative() || h.get(r, p) >= h.get(i, p) {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_two_by_two() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m).unwrap(), h);
        assert!(is_hnf(&h));
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(u.determinant().unwrap().abs(), big(1));
        // same row span, by mutual membership
        let a = Lattice::from_generators(&m);
        let b = Lattice::from_generators(&h);
        assert!(a.contains_lattice(&b) && b.contains_lattice(&a));
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let z = IntMatrix::zeros(2, 2);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn snf_examples() {
        let s = smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]]));
        assert_eq!(s.elementary_divisors, bigs(&[1, 2]));
        let m = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.elementary_divisors, bigs(&[2, 4]));
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        let braid = IntMatrix::from_i64(&[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]);
        let s = smith_normal_form(&braid);
        assert_eq!(s.elementary_divisors, bigs(&[1, 1, 0]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn snf_empty_matrices() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert!(s.elementary_divisors.is_empty());
        let s = smith_normal_form(&IntMatrix::zeros(2, 0));
        assert!(s.elementary_divisors.is_empty());
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn membership_examples() {
        let l = Lattice::from_rows(2, vec![bigs(&[2, 0]), bigs(&[0, 1])]).unwrap();
        assert!(lattice_membership(&bigs(&[2, 0]), &l).unwrap());
        assert!(!lattice_membership(&bigs(&[1, 0]), &l).unwrap());
        let l = Lattice::from_rows(2, vec![bigs(&[2, 0]), bigs(&[1, -1])]).unwrap();
        assert!(lattice_membership(&bigs(&[1, 1]), &l).unwrap());
        // exact witness: (2,0) - 1*(1,-1) = (1,1)
        assert_eq!(
            [big(2) - big(1), big(0) - big(-1)],
            [big(1), big(1)]
        );
        assert_eq!(
            lattice_membership(&bigs(&[1]), &l),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn count_kernel_examples() {
        let m = IntMatrix::from_i64(&[&[2]]);
        let four = Lattice::from_rows(1, vec![bigs(&[4])]).unwrap();
        assert_eq!(count_kernel(&m, &four, &four).unwrap(), big(2));
        let three = Lattice::from_rows(1, vec![bigs(&[3])]).unwrap();
        assert_eq!(count_kernel(&m, &three, &three).unwrap(), big(1));
        assert_eq!(count_kernel(&m, &four, &Lattice::zero(1)), Err(Error::InfiniteQuotient));
        // x -> x sends 3Z outside 4Z
        let id = IntMatrix::from_i64(&[&[1]]);
        assert_eq!(count_kernel(&id, &four, &three), Err(Error::IllDefinedMap));
    }

    #[test]
    fn intersection_and_saturation() {
        let a = Lattice::from_rows(1, vec![bigs(&[4])]).unwrap();
        let b = Lattice::from_rows(1, vec![bigs(&[6])]).unwrap();
        assert_eq!(a.intersection(&b).unwrap(), Lattice::from_rows(1, vec![bigs(&[12])]).unwrap());
        assert_eq!(a.sum(&b).unwrap(), Lattice::from_rows(1, vec![bigs(&[2])]).unwrap());
        let l = Lattice::from_rows(3, vec![bigs(&[2, 4, 6])]).unwrap();
        assert_eq!(l.saturation(), Lattice::from_rows(3, vec![bigs(&[1, 2, 3])]).unwrap());
        let l = Lattice::from_rows(2, vec![bigs(&[2, 0]), bigs(&[0, 3])]).unwrap();
        assert_eq!(l.saturation(), Lattice::full(2));
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 1]]);
        // expansion along the second row: -1 * (2*1 - 1*1) = -1
        assert_eq!(m.determinant().unwrap(), big(-1));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), big(1));
    }
}
