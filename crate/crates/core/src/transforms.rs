//! Exact Walsh-Hadamard and Krawtchouk transforms.
//!
//! Characters are `chi_S(x) = (-1)^{XOR_{i in S} x_i}` on the `{0,1}` domain
//! and the Fourier coefficient is `f^(S) = 2^{-n} sum_x f(x) chi_S(x)`, so
//! `f(x) = sum_S f^(S) chi_S(x)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::boolfn::{BooleanFunction, SymmetricFunction, MAX_TABLE_ARITY};
use crate::error::{Error, Result};
use crate::rational::{binomial, pow2, Rational};

/// In-place unnormalized butterfly: `a[S] <- sum_x a[x] (-1)^{|S & x|}`.
/// Applying it twice multiplies by `len`.
pub fn fwht_in_place<T>(a: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = a.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let u = a[i];
                let v = a[i + h];
                a[i] = u + v;
                a[i + h] = u - v;
            }
        }
        h <<= 1;
    }
}

/// Integer spectrum `sum_x f(x) chi_S(x)` indexed by the subset mask of `S`.
pub fn walsh_hadamard_numerators(f: &BooleanFunction) -> Vec<i64> {
    let mut a: Vec<i64> = f.table().iter().map(|&b| b as i64).collect();
    fwht_in_place(&mut a);
    a
}

/// Fourier coefficients `f^(S)`, indexed by the subset mask of `S`.
pub fn walsh_hadamard(f: &BooleanFunction) -> Result<Vec<Rational>> {
    let n = f.arity();
    if n > MAX_TABLE_ARITY {
        return Err(Error::ArityCap {
            n,
            cap: MAX_TABLE_ARITY,
        });
    }
    let den = pow2(n as u32);
    Ok(walsh_hadamard_numerators(f)
        .into_iter()
        .map(|v| Rational::new(BigInt::from(v), den.clone()))
        .collect())
}

/// The `(n+1) x (n+1)` integer matrix taking a value vector (indexed by
/// Hamming weight `j`) to `2^n` times the shared Fourier coefficient of the
/// subsets of size `i`:
///
/// `K[i][j] = sum_k (-1)^k binom(i, k) binom(n - i, j - k)`.
///
/// Row 0 is the binomial row `binom(n, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawtchoukMatrix {
    n: usize,
    entries: Vec<Vec<BigInt>>,
}

impl KrawtchoukMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// `K * v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Builds the matrix from the single alternating sum; terms with
/// out-of-range binomials vanish.
pub fn krawtchouk_matrix(n: usize) -> KrawtchoukMatrix {
    let n_i = n as i64;
    let entries = (0..=n_i)
        .map(|i| {
            (0..=n_i)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for k in 0..=i.min(j) {
                        let term = binomial(i, k) * binomial(n_i - i, j - k);
                        if k % 2 == 0 {
                            acc += term;
                        } else {
                            acc -= term;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    KrawtchoukMatrix { n, entries }
}

/// Shared Fourier coefficient of each subset size `0..=n` for an
/// integer-valued symmetric function given by its value vector.
pub fn krawtchouk_coefficients(values: &[BigInt]) -> Result<Vec<Rational>> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("empty value vector".into()));
    }
    let n = values.len() - 1;
    let k = krawtchouk_matrix(n);
    let den = pow2(n as u32);
    Ok(k.apply(values)
        .into_iter()
        .map(|v| Rational::new(v, den.clone()))
        .collect())
}

/// [`krawtchouk_coefficients`] for a Boolean symmetric function.
pub fn symmetric_coefficients(f: &SymmetricFunction) -> Vec<Rational> {
    let v: Vec<BigInt> = f.values().iter().map(|&b| BigInt::from(b as u8)).collect();
    krawtchouk_coefficients(&v).expect("non-empty value vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::csf;
    use crate::rational::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn and2_spectrum() {
        let and2 = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
        let c = walsh_hadamard(&and2).unwrap();
        assert_eq!(c, vec![rat(1, 4), rat(-1, 4), rat(-1, 4), rat(1, 4)]);
    }

    #[test]
    fn zero_and_parity_spectrum() {
        let z = BooleanFunction::constant(3, false).unwrap();
        assert!(walsh_hadamard(&z).unwrap().iter().all(|c| c.is_zero()));
        let p = BooleanFunction::from_fn(3, |x| x.count_ones() % 2 == 1).unwrap();
        let c = walsh_hadamard(&p).unwrap();
        assert_eq!(c[0], rat(1, 2));
        assert_eq!(c[7], rat(-1, 2));
        assert!(c[1..7].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn reconstruction_small() {
        for code in 0..256u64 {
            let f = BooleanFunction::from_fn(3, |x| (code >> x) & 1 == 1).unwrap();
            let c = walsh_hadamard(&f).unwrap();
            for x in 0..8u128 {
                let mut v = Rational::zero();
                for (s, cs) in c.iter().enumerate() {
                    if (s as u128 & x).count_ones() % 2 == 1 {
                        v -= cs;
                    } else {
                        v += cs;
                    }
                }
                assert_eq!(v, Rational::from_integer(BigInt::from(f.eval_index(x as u64) as u8)));
            }
        }
    }

    #[test]
    fn krawtchouk_small_matrices() {
        let k2 = krawtchouk_matrix(2);
        assert_eq!(k2.rows(), &[big(&[1, 2, 1]), big(&[1, 0, -1]), big(&[1, -2, 1])]);
        assert_eq!(krawtchouk_matrix(0).rows(), &[big(&[1])]);
        assert_eq!(krawtchouk_matrix(4).row(0), big(&[1, 4, 6, 4, 1]).as_slice());
    }

    /// Entry of the transposed orientation, evaluated with the summation
    /// limits of each of the four index regions separately.
    fn four_branch(n: i64, i: i64, j: i64) -> BigInt {
        let term = |k: i64| -> BigInt {
            let t = binomial(j, k) * binomial(n - j, i - k);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        };
        if i < j && i + j <= n {
            (0..=i).map(term).sum()
        } else if i >= j && i + j < n {
            (0..=j).map(term).sum()
        } else if i >= j && i + j >= n {
            (j + i - n..=j).map(term).sum()
        } else {
            (0..=n - j)
                .map(|k| {
                    let t = binomial(j, i - k) * binomial(n - j, k);
                    if (i - k) % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        }
    }

    #[test]
    fn matches_four_branch_form() {
        for n in 0..=14usize {
            let k = krawtchouk_matrix(n);
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(
                        k.entry(i, j),
                        &four_branch(n as i64, j as i64, i as i64),
                        "n={n} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn example_monomial_coefficients() {
        let c = krawtchouk_coefficients(&big(&[0, 0, 1])).unwrap();
        assert_eq!(c, vec![rat(1, 4), rat(-1, 4), rat(1, 4)]);
        let z = krawtchouk_coefficients(&big(&[0, 0, 0, 0])).unwrap();
        assert!(z.iter().all(|c| c.is_zero()));
        assert!(krawtchouk_coefficients(&[]).is_err());
    }

    #[test]
    fn agrees_with_walsh_hadamard_for_c2() {
        let f = csf(2, 4).unwrap();
        let by_size = symmetric_coefficients(&f);
        let wh = walsh_hadamard(&f.to_boolean_function().unwrap()).unwrap();
        for (s, c) in wh.iter().enumerate() {
            assert_eq!(c, &by_size[s.count_ones() as usize]);
        }
    }
}
