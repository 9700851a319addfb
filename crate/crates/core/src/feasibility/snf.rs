//! Integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
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

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Largest bit length among the entries.
    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(|v| v.bits()).max().unwrap_or(0)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal, each non-zero
/// diagonal entry positive and dividing the next.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }

    /// Non-zero invariant factors.
    pub fn invariants(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    /// Bit length of the largest invariant factor.
    pub fn max_diag_bits(&self) -> u64 {
        self.invariants().iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    /// Recomputes `U A V` and checks every structural property.
    pub fn check(&self, a: &IntegerMatrix) -> Result<()> {
        let fail = |m: &str| Err(Error::Verification(format!("Smith form: {m}")));
        if self.u.mul(a)?.mul(&self.v)? != self.d {
            return fail("U A V differs from D");
        }
        if !self.d.is_diagonal() {
            return fail("D is not diagonal");
        }
        if !self.u.determinant()?.abs().is_one() || !self.v.determinant()?.abs().is_one() {
            return fail("transform is not unimodular");
        }
        let diag = self.d.diagonal();
        let r = self.rank();
        if diag[r..].iter().any(|x| !x.is_zero()) || diag[..r].iter().any(|x| !x.is_positive()) {
            return fail("diagonal is not positive then zero");
        }
        if diag[..r].windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return fail("divisibility chain broken");
        }
        Ok(())
    }
}

/// A working row together with the transform row that produced it.
#[derive(Clone)]
struct TrackedRow {
    v: Vec<BigInt>,
    t: Vec<BigInt>,
}

impl TrackedRow {
    fn unit(v: Vec<BigInt>, i: usize, m: usize) -> Self {
        let mut t = vec![BigInt::zero(); m];
        t[i] = BigInt::one();
        TrackedRow { v, t }
    }

    /// `self -= q * other`.
    fn sub_mul(&mut self, other: &TrackedRow, q: &BigInt) {
        let pairs = self.v.iter_mut().zip(&other.v).chain(self.t.iter_mut().zip(&other.t));
        for (a, b) in pairs {
            if !b.is_zero() {
                *a -= q * b;
            }
        }
    }

    /// `(p x + q y, r x + s y)`.
    fn combine(x: &TrackedRow, y: &TrackedRow, [p, q, r, s]: [&BigInt; 4]) -> (TrackedRow, TrackedRow) {
        let mix = |a: &[BigInt], b: &[BigInt], c: &BigInt, d: &BigInt| -> Vec<BigInt> {
            a.iter().zip(b).map(|(a, b)| c * a + d * b).collect()
        };
        (
            TrackedRow { v: mix(&x.v, &y.v, p, q), t: mix(&x.t, &y.t, p, q) },
            TrackedRow { v: mix(&x.v, &y.v, r, s), t: mix(&x.t, &y.t, r, s) },
        )
    }

    fn negate(&mut self) {
        for a in self.v.iter_mut().chain(self.t.iter_mut()) {
            *a = -std::mem::take(a);
        }
    }
}

/// `x a + y b = g` with `g > 0`.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row Hermite form built one input row at a time. Finished rows are kept
/// reduced (entries above a pivot lie in `[0, pivot)`), which bounds every
/// entry by the pivots instead of letting it grow with each elimination.
struct Hermite {
    rows: Vec<TrackedRow>,
    pivots: Vec<usize>,
    /// Transform rows sending the input to zero.
    kernel: Vec<Vec<BigInt>>,
}

impl Hermite {
    fn of(a: &[Vec<BigInt>]) -> Self {
        let mut h = Hermite { rows: Vec::new(), pivots: Vec::new(), kernel: Vec::new() };
        for (i, row) in a.iter().enumerate() {
            h.insert(TrackedRow::unit(row.clone(), i, a.len()));
        }
        h
    }

    fn transform(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.t.clone()).chain(self.kernel.iter().cloned()).collect()
    }

    fn values(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.v.clone()).collect()
    }

    fn insert(&mut self, mut r: TrackedRow) {
        for k in 0..self.rows.len() {
            let c = self.pivots[k];
            match r.v.iter().position(|x| !x.is_zero()) {
                None => break,
                Some(lead) if lead < c => break,
                Some(lead) if lead > c => continue,
                _ => {}
            }
            let a = self.rows[k].v[c].clone();
            let b = r.v[c].clone();
            if b.is_multiple_of(&a) {
                r.sub_mul(&self.rows[k], &(&b / &a));
                continue;
            }
            let (g, x, y) = xgcd(&a, &b);
            let (h, rest) = TrackedRow::combine(&self.rows[k], &r, [&x, &y, &-(&b / &g), &(&a / &g)]);
            self.rows[k] = h;
            r = rest;
            self.reduce_upto(k);
        }
        let Some(c) = r.v.iter().position(|x| !x.is_zero()) else {
            self.kernel.push(r.t);
            return;
        };
        if r.v[c].is_negative() {
            r.negate();
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.rows.insert(pos, r);
        self.pivots.insert(pos, c);
        self.reduce_upto(pos);
    }

    /// Reduces rows `0..=top` against every later pivot.
    fn reduce_upto(&mut self, top: usize) {
        for j in (0..=top).rev() {
            for l in j + 1..self.rows.len() {
                let c = self.pivots[l];
                let q = self.rows[j].v[c].div_floor(&self.rows[l].v[c]);
                if !q.is_zero() {
                    let (head, tail) = self.rows.split_at_mut(l);
                    head[j].sub_mul(&tail[0], &q);
                }
            }
        }
    }
}

fn transpose(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

fn is_diagonal(rows: &[Vec<BigInt>]) -> bool {
    rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

fn square(rows: Vec<Vec<BigInt>>, n: usize) -> IntegerMatrix {
    IntegerMatrix { rows: n, cols: n, data: rows.into_iter().flatten().collect() }
}

/// `diag(block, I)` of size `n`.
fn embed(block: &IntegerMatrix, n: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    for i in 0..block.rows {
        for j in 0..block.cols {
            m.set(i, j, block.get(i, j).clone());
        }
    }
    m
}

/// Smith normal form via Hermite forms: a row form, a column form of the
/// result, then alternating row and column forms on the non-singular block
/// until it is diagonal, and finally a gcd/lcm pass for divisibility.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows, a.cols);
    let input: Vec<Vec<BigInt>> = (0..m).map(|i| a.row(i).to_vec()).collect();
    let h = Hermite::of(&input);
    let r = h.rows.len();
    let u0 = square(h.transform(), m);
    // Z H^T = [T; 0], so H Z^T = [T^T 0].
    let c = Hermite::of(&transpose(&h.values(), n));
    let z = square(c.transform(), n);
    let mut b = transpose(&c.values(), r);
    let mut ur = IntegerMatrix::identity(r);
    let mut vr = IntegerMatrix::identity(r);
    while !is_diagonal(&b) {
        let h = Hermite::of(&b);
        ur = square(h.transform(), r).mul(&ur).expect("square");
        b = h.values();
        if is_diagonal(&b) {
            break;
        }
        let c = Hermite::of(&transpose(&b, r));
        vr = vr.mul(&square(transpose(&c.transform(), r), r)).expect("square");
        b = transpose(&c.values(), r);
    }
    let mut diag: Vec<BigInt> = (0..r).map(|i| b[i][i].clone()).collect();
    for i in 0..r {
        for j in i + 1..r {
            if diag[j].is_multiple_of(&diag[i]) {
                continue;
            }
            let (p, q) = (diag[i].clone(), diag[j].clone());
            let (g, x, y) = xgcd(&p, &q);
            let (pg, qg) = (&p / &g, &q / &g);
            let nq = -&qg;
            for col in 0..r {
                let (ui, uj) = (ur.get(i, col).clone(), ur.get(j, col).clone());
                ur.set(i, col, &x * &ui + &y * &uj);
                ur.set(j, col, &nq * &ui + &pg * &uj);
            }
            let (s, t) = (-(&y * &qg), &x * &pg);
            for row in 0..r {
                let (vi, vj) = (vr.get(row, i).clone(), vr.get(row, j).clone());
                vr.set(row, i, &vi + &vj);
                vr.set(row, j, &s * &vi + &t * &vj);
            }
            diag[j] = &diag[i] * &qg;
            diag[i] = g;
        }
    }
    let u = embed(&ur, m).mul(&u0).expect("conformable");
    let mut zt = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            zt.set(i, j, z.get(j, i).clone());
        }
    }
    let v = zt.mul(&embed(&vr, n)).expect("conformable");
    let mut d = IntegerMatrix::zeros(m, n);
    for (i, x) in diag.into_iter().enumerate() {
        d.set(i, i, x);
    }
    SnfDecomposition { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_fixed() {
        let i = IntegerMatrix::identity(4);
        let s = smith_normal_form(&i);
        assert_eq!(s.d, i);
        assert_eq!(s.u, i);
        assert_eq!(s.v, i);
        s.check(&i).unwrap();
    }

    #[test]
    fn small_example() {
        let a = IntegerMatrix::from_i64(&[vec![2, 4], vec![6, 8]]).unwrap();
        let s = smith_normal_form(&a);
        s.check(&a).unwrap();
        assert_eq!(s.invariants(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let a = IntegerMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let s = smith_normal_form(&a);
        s.check(&a).unwrap();
        assert_eq!(s.rank(), 1);
        let z = IntegerMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        s.check(&z).unwrap();
        assert_eq!(s.rank(), 0);
        let a = IntegerMatrix::from_i64(&[vec![4], vec![6], vec![10]]).unwrap();
        let s = smith_normal_form(&a);
        s.check(&a).unwrap();
        assert_eq!(s.invariants(), vec![BigInt::from(2)]);
    }

    #[test]
    fn divisibility_fixup() {
        let a = IntegerMatrix::from_i64(&[vec![2, 0], vec![0, 3]]).unwrap();
        let s = smith_normal_form(&a);
        s.check(&a).unwrap();
        assert_eq!(s.invariants(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn determinants() {
        let a = IntegerMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]).unwrap();
        assert_eq!(a.determinant().unwrap(), BigInt::from(18));
        let b = IntegerMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(b.determinant().unwrap(), BigInt::from(-1));
    }
}
