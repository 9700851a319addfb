//! Boolean functions as truth tables, algebraic normal forms and symmetric
//! value vectors.
//!
//! Input strings are packed little-endian: bit `i` of a truth-table index is
//! the variable `x_{i+1}`.

mod anf;
mod parse;
mod symmetric;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{pack_bits, Subset, MAX_VARS};

pub use anf::{anf_from_truth, truth_from_anf};
pub use parse::{parse_function, FunctionInput};
pub use symmetric::{
    and_n, almost_csf, complement_tilde, complement_tilde_anf, count_fn, csf, decompose_csf,
    is_symmetric, parity_fn, zeta_c,
};

/// Largest arity for which dense truth tables are built.
pub const MAX_TABLE_ARITY: usize = 24;

/// Dense truth table of `f: {0,1}^n -> {0,1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        check_table_arity(n)?;
        if table.len() != 1usize << n {
            return Err(Error::InvalidArgument(format!(
                "truth table of length {} for arity {n}",
                table.len()
            )));
        }
        Ok(BooleanFunction { n, table })
    }

    /// Tabulates `f` on every packed input `0..2^n`.
    pub fn from_fn(n: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        check_table_arity(n)?;
        let table = (0..1u64 << n).map(f).collect();
        Ok(BooleanFunction { n, table })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Evaluates at a bit string, `x[0]` being `x_1`.
    pub fn eval(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.table[pack_bits(x) as usize])
    }

    pub fn eval_index(&self, x: u64) -> bool {
        self.table[x as usize]
    }

    pub fn not(&self) -> Self {
        BooleanFunction {
            n: self.n,
            table: self.table.iter().map(|b| !b).collect(),
        }
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a | b)
    }

    fn zip(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(BooleanFunction {
            n: self.n,
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn anf(&self) -> AnfForm {
        anf_from_truth(self)
    }

    pub fn degree(&self) -> usize {
        self.anf().degree()
    }

    /// Hex digits, low index first: digit `d` holds entries `4d..4d+3`, with
    /// entry `4d` in its least significant bit.
    pub fn to_hex(&self) -> String {
        self.table
            .chunks(4)
            .map(|c| {
                let v = c
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i));
                std::char::from_digit(v, 16).expect("nibble")
            })
            .collect()
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, tt={})", self.n, self.to_hex())
    }
}

fn check_table_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    if n > MAX_TABLE_ARITY {
        return Err(Error::ArityCap {
            n,
            cap: MAX_TABLE_ARITY,
        });
    }
    Ok(())
}

/// Algebraic normal form: XOR of monomials, each a subset of `{1..n}`.
/// The empty subset is the constant-1 term.
#[derive(Clone, PartialEq, Eq)]
pub struct AnfForm {
    n: usize,
    monomials: BTreeSet<Subset>,
}

impl AnfForm {
    /// Builds the XOR of `monomials`; repeated monomials cancel in pairs.
    pub fn new(n: usize, monomials: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if n == 0 || n > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "arity {n} outside 1..={MAX_VARS}"
            )));
        }
        let mut set = BTreeSet::new();
        for m in monomials {
            if m.max_index() > n {
                return Err(Error::InvalidArgument(format!(
                    "monomial {m} mentions a variable beyond x{n}"
                )));
            }
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Ok(AnfForm { n, monomials: set })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Monomials in canonical order (size, then lexicographic).
    pub fn monomials(&self) -> impl Iterator<Item = Subset> + '_ {
        self.monomials.iter().copied()
    }

    pub fn contains(&self, m: Subset) -> bool {
        self.monomials.contains(&m)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Evaluates at a packed input.
    pub fn eval_mask(&self, x: u128) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, m| acc ^ m.is_subset_of(Subset::from_mask(x)))
    }

    pub fn eval(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.eval_mask(pack_bits(x)))
    }

    pub fn xor(&self, other: &AnfForm) -> Result<AnfForm> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        AnfForm::new(
            self.n,
            self.monomials.iter().chain(other.monomials.iter()).copied(),
        )
    }

    pub fn to_truth(&self) -> Result<BooleanFunction> {
        truth_from_anf(self)
    }
}

impl fmt::Debug for AnfForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfForm(n={}, ", self.n)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for AnfForm {
    /// Same syntax as the `anf:` input grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.monomials.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_empty() {
                write!(f, "1")?;
            } else {
                let parts: Vec<String> = m.iter().map(|i| format!("x{i}")).collect();
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Symmetric function stored as its value vector `v(w)`, `w = 0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SymmetricFunction {
    n: usize,
    values: Vec<bool>,
}

impl SymmetricFunction {
    /// Value vector of length `n + 1`, `n >= 1`.
    pub fn new(values: Vec<bool>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument(
                "value vector needs at least two entries".into(),
            ));
        }
        Ok(SymmetricFunction {
            n: values.len() - 1,
            values,
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        Self::new((0..=n).map(f).collect())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, weight: usize) -> bool {
        self.values[weight]
    }

    pub fn eval_mask(&self, x: u128) -> bool {
        self.values[x.count_ones() as usize]
    }

    pub fn to_boolean_function(&self) -> Result<BooleanFunction> {
        BooleanFunction::from_fn(self.n, |x| self.values[x.count_ones() as usize])
    }

    pub fn not(&self) -> Self {
        SymmetricFunction {
            n: self.n,
            values: self.values.iter().map(|b| !b).collect(),
        }
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & b)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a ^ b)
    }

    fn zip(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(SymmetricFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    /// Coefficients `c_k` of the expansion `f = XOR_k c_k C^k`.
    ///
    /// `C^k` vanishes below weight `k` and is 1 at weight `k`, so the
    /// coefficients peel off one weight at a time.
    pub fn csf_coefficients(&self) -> Vec<bool> {
        let mut c = vec![false; self.n + 1];
        for w in 0..=self.n {
            let mut r = self.values[w];
            for (k, &ck) in c.iter().enumerate().take(w) {
                if ck && crate::rational::binomial_is_odd(w as u64, k as u64) {
                    r ^= true;
                }
            }
            c[w] = r;
        }
        c
    }

    /// Algebraic degree: the largest `k` with `c_k = 1`.
    pub fn degree(&self) -> usize {
        self.csf_coefficients()
            .iter()
            .rposition(|&b| b)
            .unwrap_or(0)
    }

    /// ANF as the XOR of every monomial of each size `k` with `c_k = 1`.
    /// Fails when more than `cap` monomials would be produced.
    pub fn to_anf(&self, cap: usize) -> Result<AnfForm> {
        let c = self.csf_coefficients();
        let mut total = num_bigint::BigInt::from(0);
        for (k, &ck) in c.iter().enumerate() {
            if ck {
                total += crate::rational::binomial(self.n as i64, k as i64);
            }
        }
        if total > num_bigint::BigInt::from(cap) {
            return Err(Error::ResourceCap(format!(
                "ANF of this symmetric function has {total} monomials (cap {cap})"
            )));
        }
        let monomials = c
            .iter()
            .enumerate()
            .filter(|(_, &ck)| ck)
            .flat_map(|(k, _)| crate::subset::subsets_of_size(self.n, k));
        AnfForm::new(self.n, monomials)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v).unwrap()
    }

    #[test]
    fn eval_examples() {
        let and2 = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
        assert!(and2.eval(&[true, true]).unwrap());
        assert!(!and2.eval(&[false, false]).unwrap());
        assert!(and2.eval(&[true]).is_err());
        let h = AnfForm::new(3, [s(&[1, 2]), s(&[2, 3])]).unwrap();
        assert!(!h.eval(&[true, true, true]).unwrap());
        assert!(h.eval(&[true, true, false]).unwrap());
    }

    #[test]
    fn table_validation() {
        assert!(BooleanFunction::new(2, vec![false; 3]).is_err());
        assert!(BooleanFunction::new(0, vec![false]).is_err());
        assert!(matches!(
            BooleanFunction::from_fn(25, |_| false),
            Err(Error::ArityCap { .. })
        ));
    }

    #[test]
    fn anf_duplicates_cancel() {
        let a = AnfForm::new(3, [s(&[1]), s(&[1]), s(&[2])]).unwrap();
        assert_eq!(a.monomials().collect::<Vec<_>>(), vec![s(&[2])]);
        assert!(AnfForm::new(2, [s(&[3])]).is_err());
    }

    #[test]
    fn anf_display() {
        let a = AnfForm::new(3, [s(&[2, 3]), s(&[]), s(&[1, 2])]).unwrap();
        assert_eq!(a.to_string(), "1 + x1*x2 + x2*x3");
        assert_eq!(AnfForm::zero(2).unwrap().to_string(), "0");
    }

    #[test]
    fn hex_digits_low_first() {
        let and2 = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
        assert_eq!(and2.to_hex(), "8");
        let x1 = BooleanFunction::from_fn(3, |x| x & 1 == 1).unwrap();
        assert_eq!(x1.to_hex(), "aa");
    }

    #[test]
    fn csf_coefficient_peeling() {
        let f = SymmetricFunction::new(vec![false, false, true, true]).unwrap();
        assert_eq!(f.csf_coefficients(), vec![false, false, true, false]);
        assert_eq!(f.degree(), 2);
        let one = SymmetricFunction::new(vec![true; 4]).unwrap();
        assert_eq!(one.csf_coefficients(), vec![true, false, false, false]);
        assert_eq!(one.degree(), 0);
    }

    #[test]
    fn symmetric_to_anf_and_cap() {
        let c2 = SymmetricFunction::new(vec![false, false, true, true]).unwrap();
        let a = c2.to_anf(100).unwrap();
        assert_eq!(a.len(), 3);
        assert!(c2.to_anf(2).is_err());
    }
}
