//! Multilinear polynomials over parity characters.
//!
//! A polynomial `p(x) = c_0 + sum_{S != {}} c_S chi_S(x)` stands for the
//! phase `pi * p(x)`; it represents `f` when `p(x)` is an integer congruent
//! to `f(x)` mod 2 at every input.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boolfn::{BooleanFunction, FunctionInput, SymmetricFunction, MAX_TABLE_ARITY};
use crate::error::{Error, Result};
use crate::rational::{
    binomial, format_rational, granularity_of, parse_rational, pow2, Rational,
};
use crate::subset::{pack_bits, subsets_of_size, Subset, MAX_VARS};
use crate::transforms::{fwht_in_place, krawtchouk_matrix};

/// Default cap on the number of terms an expansion may materialize.
pub const EXPAND_CAP: usize = 1 << 24;

/// Number of random inputs used when exhaustive checking is out of reach.
pub const SPOT_CHECKS: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    terms: BTreeMap<Subset, Rational>,
}

fn check_arity(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::ArityCap { n, cap: MAX_VARS });
    }
    Ok(())
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Result<Self> {
        check_arity(n)?;
        Ok(MultilinearPoly {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self> {
        Self::from_terms(n, [(Subset::EMPTY, c)])
    }

    /// Sums the given terms; repeated subsets accumulate and zeros are dropped.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Self> {
        check_arity(n)?;
        let mut map: BTreeMap<Subset, Rational> = BTreeMap::new();
        for (s, c) in terms {
            if s.max_index() > n {
                return Err(Error::InvalidArgument(format!(
                    "term {s} mentions a variable beyond x{n}"
                )));
            }
            *map.entry(s).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultilinearPoly { n, terms: map })
    }

    /// Converts `constant + sum_S a_S XOR_S(x)` using `XOR_S = (1 - chi_S)/2`.
    pub fn from_xor_basis(
        n: usize,
        constant: Rational,
        terms: impl IntoIterator<Item = (Subset, Rational)>,
    ) -> Result<Self> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut out = vec![(Subset::EMPTY, constant)];
        for (s, a) in terms {
            if s.is_empty() {
                return Err(Error::InvalidArgument(
                    "the empty parity has no XOR-basis term".into(),
                ));
            }
            let h = &a * &half;
            out.push((Subset::EMPTY, h.clone()));
            out.push((s, -h));
        }
        Self::from_terms(n, out)
    }

    /// Inverse of [`from_xor_basis`](Self::from_xor_basis): the constant and
    /// the XOR-basis coefficient of every non-constant term.
    pub fn to_xor_basis(&self) -> (Rational, Vec<(Subset, Rational)>) {
        let mut constant = self.constant_term();
        let mut out = Vec::new();
        for (s, c) in self.non_constant_terms() {
            constant += c;
            out.push((s, -(c * BigInt::from(2))));
        }
        (constant, out)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    /// All stored terms in canonical order, constant first.
    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn non_constant_terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.terms().filter(|(s, _)| !s.is_empty())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Subset::EMPTY)
    }

    /// Non-zero non-constant coefficients: the GHZ qubit count.
    pub fn sparsity(&self) -> usize {
        self.terms.len() - self.terms.contains_key(&Subset::EMPTY) as usize
    }

    /// Non-zero coefficients including the constant term.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Largest 2-adic denominator exponent over all coefficients.
    pub fn granularity(&self) -> Result<u32> {
        self.terms
            .values()
            .try_fold(0, |g, c| Ok(g.max(granularity_of(c)?)))
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut terms = self.terms.clone();
        for (s, c) in &other.terms {
            *terms.entry(*s).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(MultilinearPoly { n: self.n, terms })
    }

    pub fn negate(&self) -> Self {
        MultilinearPoly {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return MultilinearPoly {
                n: self.n,
                terms: BTreeMap::new(),
            };
        }
        MultilinearPoly {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (*s, c * k)).collect(),
        }
    }

    /// Common denominator and integer numerators of every term.
    pub fn scaled_numerators(&self) -> (BigInt, Vec<(Subset, BigInt)>) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let nums = self
            .terms
            .iter()
            .map(|(s, c)| (*s, c.numer() * (&den / c.denom())))
            .collect();
        (den, nums)
    }

    /// Product in the character algebra, `chi_S chi_T = chi_{S xor T}`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let (dp, np) = self.scaled_numerators();
        let (dq, nq) = other.scaled_numerators();
        let mut acc: HashMap<Subset, BigInt> = HashMap::with_capacity(np.len() * nq.len());
        for (s, a) in &np {
            for (t, b) in &nq {
                *acc.entry(s.sym_diff(*t)).or_insert_with(BigInt::zero) += a * b;
            }
        }
        let den = dp * dq;
        Self::from_terms(
            self.n,
            acc.into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(s, v)| (s, Rational::new(v, den.clone()))),
        )
    }

    pub fn evaluate_mask(&self, x: u128) -> Rational {
        let mut acc = Rational::zero();
        for (s, c) in &self.terms {
            if s.parity(x) {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }

    /// Exact value of `p/pi` at `x` (`x[0]` is `x_1`).
    pub fn evaluate(&self, x: &[bool]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.evaluate_mask(pack_bits(x)))
    }

    /// True iff `p(x)` is an integer congruent to `f(x)` mod 2 for every `x`.
    pub fn verify_mod2(&self, f: &BooleanFunction) -> bool {
        verify_mod2(self, f)
    }

    /// Groups coefficients by subset size when every size class is either
    /// fully present with one shared value or absent.
    pub fn to_profile(&self) -> Option<SymmetricProfile> {
        let n = self.n;
        let mut coeffs: Vec<Option<Rational>> = vec![None; n + 1];
        let mut counts = vec![0u128; n + 1];
        for (s, c) in &self.terms {
            let i = s.len();
            match &coeffs[i] {
                None => coeffs[i] = Some(c.clone()),
                Some(v) if v != c => return None,
                _ => {}
            }
            counts[i] += 1;
        }
        for i in 0..=n {
            if coeffs[i].is_some() && BigInt::from(counts[i]) != binomial(n as i64, i as i64) {
                return None;
            }
        }
        Some(SymmetricProfile {
            n,
            coeffs: coeffs
                .into_iter()
                .map(|c| c.unwrap_or_else(Rational::zero))
                .collect(),
        })
    }

    /// Checks the polynomial against a symmetric function. Symmetric
    /// polynomials are checked per weight class for any arity; other
    /// polynomials exhaustively up to the truth-table cap and by
    /// [`SPOT_CHECKS`] seeded random inputs beyond it.
    pub fn verify_symmetric(&self, f: &SymmetricFunction) -> bool {
        if self.n != f.arity() {
            return false;
        }
        if let Some(profile) = self.to_profile() {
            return profile
                .values_by_weight()
                .iter()
                .zip(f.values())
                .all(|(v, &b)| v.is_integer() && v.numer().is_odd() == b);
        }
        if self.n <= MAX_TABLE_ARITY {
            return match f.to_boolean_function() {
                Ok(t) => verify_mod2(self, &t),
                Err(_) => false,
            };
        }
        self.spot_check(|x| f.eval_mask(x), 0x5eed)
    }

    /// Checks against any parsed function, picking the cheapest exact route
    /// available and falling back to seeded spot checks.
    pub fn verify_against(&self, f: &FunctionInput) -> bool {
        if self.n != f.arity() {
            return false;
        }
        match f {
            FunctionInput::Symmetric(s) => self.verify_symmetric(s),
            _ if self.n <= MAX_TABLE_ARITY => match f.truth() {
                Ok(t) => verify_mod2(self, &t),
                Err(_) => false,
            },
            _ => self.spot_check(|x| f.eval_mask(x), 0x5eed),
        }
    }

    /// Random-input check; inputs are drawn by first choosing a weight
    /// uniformly so that every weight class is exercised.
    pub fn spot_check(&self, f: impl Fn(u128) -> bool, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n;
        for _ in 0..SPOT_CHECKS {
            let w = rng.random_range(0..=n);
            let mut idx: Vec<usize> = (0..n).collect();
            for i in 0..w {
                let j = rng.random_range(i..n);
                idx.swap(i, j);
            }
            let x = idx[..w].iter().fold(0u128, |m, &i| m | (1u128 << i));
            let v = self.evaluate_mask(x);
            if !v.is_integer() || v.numer().is_odd() != f(x) {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermJson {
                    s: s.indices(),
                    c: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((Subset::from_indices(&t.s)?, parse_rational(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.n, terms)
    }
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearPoly(n={}, {})", self.n, self)
    }
}

impl fmt::Display for MultilinearPoly {
    /// `c0 + c1 chi{1} + ...` in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if s.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag} chi{s}")?;
            }
        }
        Ok(())
    }
}

/// Serialized form `{"n": .., "terms": [{"S": [..], "c": "num/den"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub c: String,
}

/// Exhaustive mod-2 oracle: every `p(x)` must be an integer with parity
/// `f(x)`.
///
/// Runs one inverse butterfly over integer numerators scaled by the common
/// denominator, in `i64`, `i128` or arbitrary precision as the magnitudes
/// require.
pub fn verify_mod2(p: &MultilinearPoly, f: &BooleanFunction) -> bool {
    let n = f.arity();
    if p.arity() != n {
        return false;
    }
    let (den, nums) = p.scaled_numerators();
    let bound: BigInt = nums.iter().map(|(_, v)| v.abs()).sum();
    let len = 1usize << n;
    let table = f.table();
    if bound.bits() < 62 {
        let d = den.to_i64().expect("denominator below bound");
        let mut a = vec![0i64; len];
        for (s, v) in &nums {
            a[s.mask() as usize] = v.to_i64().expect("fits");
        }
        fwht_in_place(&mut a);
        a.iter()
            .zip(table)
            .all(|(&v, &b)| v % d == 0 && ((v / d).rem_euclid(2) == 1) == b)
    } else if bound.bits() < 126 {
        let d = den.to_i128().expect("denominator below bound");
        let mut a = vec![0i128; len];
        for (s, v) in &nums {
            a[s.mask() as usize] = v.to_i128().expect("fits");
        }
        fwht_in_place(&mut a);
        a.iter()
            .zip(table)
            .all(|(&v, &b)| v % d == 0 && ((v / d).rem_euclid(2) == 1) == b)
    } else {
        let mut a = vec![BigInt::zero(); len];
        for (s, v) in nums {
            a[s.mask() as usize] = v;
        }
        let mut h = 1;
        while h < len {
            for block in (0..len).step_by(2 * h) {
                for i in block..block + h {
                    let u = a[i].clone();
                    let v = std::mem::take(&mut a[i + h]);
                    a[i + h] = &u - &v;
                    a[i] = u + v;
                }
            }
            h <<= 1;
        }
        let two = &den * BigInt::from(2);
        a.iter().zip(table).all(|(v, &b)| {
            let r = v.mod_floor(&two);
            if b {
                r == den
            } else {
                r.is_zero()
            }
        })
    }
}

/// Coefficients shared by every subset of a given size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricProfile {
    n: usize,
    coeffs: Vec<Rational>,
}

impl SymmetricProfile {
    /// `coeffs[i]` applies to every subset of size `i`; length `n + 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("empty profile".into()));
        }
        Ok(SymmetricProfile {
            n: coeffs.len() - 1,
            coeffs,
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, size: usize) -> &Rational {
        &self.coeffs[size]
    }

    /// Sizes `i >= 1` with a non-zero coefficient.
    pub fn support_sizes(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Non-constant term count of the expansion.
    pub fn sparsity(&self) -> BigInt {
        self.support_sizes()
            .into_iter()
            .map(|i| binomial(self.n as i64, i as i64))
            .sum()
    }

    pub fn granularity(&self) -> Result<u32> {
        self.coeffs
            .iter()
            .try_fold(0, |g, c| Ok(g.max(granularity_of(c)?)))
    }

    /// Value of the expanded polynomial at any input of weight `w`, for
    /// `w = 0..=n`.
    pub fn values_by_weight(&self) -> Vec<Rational> {
        let k = krawtchouk_matrix(self.n);
        (0..=self.n)
            .map(|w| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| c * k.entry(w, i))
                    .sum()
            })
            .collect()
    }

    /// Expands to one term per subset; fails above `cap` terms.
    pub fn expand_capped(&self, cap: usize) -> Result<MultilinearPoly> {
        check_arity(self.n)?;
        let total: BigInt = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| binomial(self.n as i64, i as i64))
            .sum();
        if total > BigInt::from(cap) {
            return Err(Error::ResourceCap(format!(
                "expansion has {total} terms (cap {cap})"
            )));
        }
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .flat_map(|(i, c)| subsets_of_size(self.n, i).map(move |s| (s, c.clone())));
        MultilinearPoly::from_terms(self.n, terms)
    }

    pub fn expand(&self) -> Result<MultilinearPoly> {
        self.expand_capped(EXPAND_CAP)
    }
}

/// Exponents `k` for which the closed-form polynomial is available.
pub const CSF_POWER2_DEGREES: [usize; 6] = [2, 4, 8, 16, 32, 64];

/// Per-size coefficients of the closed-form polynomial for `C^k`,
/// `k in {2, 4, ..., 64}`, `k <= n`.
///
/// In the XOR basis the polynomial is
/// `2^{1-k} sum_{j=1}^{k/2} (-1)^{j+1} binom(n-k/2-j, k/2-j) (XOR_{|S|=j} - XOR_{|S|=n-j+1})`
/// summed over all subsets of the given sizes. For `n >= k` the two size
/// families never overlap. At Hamming weight `w` it takes the value
/// `binom(floor(w/2), k/2)`; the opposite overall sign represents the same
/// function.
pub fn csf_power2_profile(k: usize, n: usize) -> Result<SymmetricProfile> {
    if !CSF_POWER2_DEGREES.contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "closed form only for k in {CSF_POWER2_DEGREES:?}, got {k}"
        )));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "degree {k} exceeds arity {n}"
        )));
    }
    let h = (k / 2) as i64;
    let ni = n as i64;
    let den = pow2(k as u32);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for j in 1..=h {
        let mut b = binomial(ni - h - j, h - j);
        if j % 2 == 0 {
            b = -b;
        }
        // XOR coefficient a = b / 2^{k-1}; character coefficient is -a/2 on
        // size j and +a/2 on size n-j+1, each shifting the constant.
        let half_a = Rational::new(b, den.clone());
        let low = j as usize;
        let high = (ni - j + 1) as usize;
        coeffs[low] -= &half_a;
        coeffs[high] += &half_a;
        coeffs[0] += &half_a * (binomial(ni, j) - binomial(ni, ni - j + 1));
    }
    SymmetricProfile::new(coeffs)
}

/// Closed-form polynomial for `C^k` (see [`csf_power2_profile`]).
pub fn csf_power2_poly(k: usize, n: usize) -> Result<MultilinearPoly> {
    csf_power2_profile(k, n)?.expand()
}
