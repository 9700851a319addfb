//! Deciding whether a symmetric function has a representing polynomial
//! whose non-zero coefficients sit only on allowed subset sizes.
//!
//! Any symmetric representing polynomial is the Fourier expansion of
//! `g = f + 2h` for an integer symmetric `h`. Forbidding the sizes in `E`
//! gives the integer system `2 K_E v_h = -K_E v_f`, solved with the Smith
//! form of `2 K_E`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::snf::{smith_normal_form, IntegerMatrix};
use crate::boolfn::SymmetricFunction;
use crate::error::{Error, Result};
use crate::polynomial::SymmetricProfile;
use crate::rational::{pow2, Rational};
use crate::transforms::{fwht_in_place, krawtchouk_matrix};

/// Largest arity certified by exhaustive truth-table checks.
pub const CERTIFY_MAX_ARITY: usize = 14;

/// Sizes `{0} u {1..t} u {n-t..n}`.
pub fn profile_sizes(n: usize, t: usize) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> = (0..=t.min(n)).collect();
    s.extend(n.saturating_sub(t)..=n);
    s
}

/// How the sizes forced to zero are chosen for a growth rate `n^t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowRule {
    /// Everything outside [`profile_sizes`].
    #[default]
    Profile,
    /// Sizes `i > max(d/2 + 1 + t, n - 1 - t)`, `d` the degree of `f`.
    Literal,
}

impl RowRule {
    pub fn forbidden(self, n: usize, t: usize, degree: usize) -> BTreeSet<usize> {
        match self {
            RowRule::Profile => {
                let allowed = profile_sizes(n, t);
                (0..=n).filter(|i| !allowed.contains(i)).collect()
            }
            RowRule::Literal => {
                let lo = (degree / 2 + 1 + t).max((n + 1).saturating_sub(2 + t));
                (lo + 1..=n).collect()
            }
        }
    }
}

impl FromStr for RowRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "profile" => Ok(RowRule::Profile),
            "literal" => Ok(RowRule::Literal),
            _ => Err(Error::Parse(format!("unknown row rule {s:?}"))),
        }
    }
}

impl fmt::Display for RowRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowRule::Profile => "profile",
            RowRule::Literal => "literal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityQuery {
    pub f: SymmetricFunction,
    allowed: BTreeSet<usize>,
}

impl FeasibilityQuery {
    /// Size 0 is always allowed: the constant term costs no qubit.
    pub fn new(f: SymmetricFunction, allowed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = f.arity();
        let mut allowed: BTreeSet<usize> = allowed.into_iter().collect();
        if let Some(&bad) = allowed.iter().find(|&&i| i > n) {
            return Err(Error::InvalidArgument(format!("size {bad} exceeds n = {n}")));
        }
        allowed.insert(0);
        Ok(FeasibilityQuery { f, allowed })
    }

    pub fn with_profile(f: SymmetricFunction, t: usize) -> Result<Self> {
        let n = f.arity();
        Self::new(f, profile_sizes(n, t))
    }

    pub fn with_forbidden(f: SymmetricFunction, forbidden: &BTreeSet<usize>) -> Result<Self> {
        let n = f.arity();
        Self::new(f, (0..=n).filter(|i| !forbidden.contains(i)))
    }

    pub fn allowed(&self) -> &BTreeSet<usize> {
        &self.allowed
    }

    pub fn forbidden(&self) -> Vec<usize> {
        (0..=self.f.arity()).filter(|i| !self.allowed.contains(i)).collect()
    }
}

/// A symmetric integer function `g = f + 2h` whose spectrum vanishes on the
/// forbidden sizes.
#[derive(Clone, Debug)]
pub struct Witness {
    pub v_h: Vec<BigInt>,
    pub g: Vec<BigInt>,
    pub profile: SymmetricProfile,
}

impl Witness {
    /// Number of qubits the witness polynomial needs.
    pub fn sparsity(&self) -> BigInt {
        self.profile.sparsity()
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub feasible: bool,
    pub forbidden: Vec<usize>,
    pub witness: Option<Witness>,
    pub rank: usize,
    pub snf_max_diag_bits: u64,
    /// Whether the witness was also checked on the full truth table.
    pub certified_exhaustively: bool,
    pub elapsed: Duration,
}

fn values_of(f: &SymmetricFunction) -> Vec<BigInt> {
    f.values().iter().map(|&b| BigInt::from(b as u8)).collect()
}

/// Solves `2 K_E w = -K_E v_f` through `U (2 K_E) V = D`; a solution
/// exists iff `d_i | (U b)_i` on the rank rows and `(U b)_i = 0` below.
pub fn decide_symmetric_support(q: &FeasibilityQuery) -> Result<Decision> {
    let start = Instant::now();
    let n = q.f.arity();
    let forbidden = q.forbidden();
    let v_f = values_of(&q.f);
    if forbidden.is_empty() {
        let witness = make_witness(q, vec![BigInt::zero(); n + 1])?;
        let certified = certify_if_small(q, &witness)?;
        return Ok(Decision {
            feasible: true,
            forbidden,
            witness: Some(witness),
            rank: 0,
            snf_max_diag_bits: 0,
            certified_exhaustively: certified,
            elapsed: start.elapsed(),
        });
    }
    let k = krawtchouk_matrix(n);
    let k_e = IntegerMatrix::from_rows(forbidden.iter().map(|&i| k.row(i).to_vec()).collect())?;
    let a = IntegerMatrix::from_rows(
        forbidden
            .iter()
            .map(|&i| k.row(i).iter().map(|x| x * 2).collect())
            .collect(),
    )?;
    let b: Vec<BigInt> = k_e.mul_vec(&v_f).into_iter().map(|x| -x).collect();
    let snf = smith_normal_form(&a);
    let ub = snf.u.mul_vec(&b);
    let rank = snf.rank();
    let diag = snf.d.diagonal();
    let mut y = vec![BigInt::zero(); n + 1];
    let mut feasible = ub[rank..].iter().all(|x| x.is_zero());
    for i in 0..rank {
        if !feasible {
            break;
        }
        let (quot, rem) = ub[i].div_rem(&diag[i]);
        if rem.is_zero() {
            y[i] = quot;
        } else {
            feasible = false;
        }
    }
    let mut decision = Decision {
        feasible,
        forbidden,
        witness: None,
        rank,
        snf_max_diag_bits: snf.max_diag_bits(),
        certified_exhaustively: false,
        elapsed: Duration::ZERO,
    };
    if feasible {
        let w = snf.v.mul_vec(&y);
        let witness = make_witness(q, w)?;
        decision.certified_exhaustively = certify_if_small(q, &witness)?;
        decision.witness = Some(witness);
    }
    decision.elapsed = start.elapsed();
    Ok(decision)
}

fn make_witness(q: &FeasibilityQuery, v_h: Vec<BigInt>) -> Result<Witness> {
    let n = q.f.arity();
    let g: Vec<BigInt> = values_of(&q.f)
        .into_iter()
        .zip(&v_h)
        .map(|(f, h)| f + h * 2)
        .collect();
    let k = krawtchouk_matrix(n);
    let den = pow2(n as u32);
    let coeffs: Vec<Rational> = k
        .apply(&g)
        .into_iter()
        .map(|c| Rational::new(c, den.clone()))
        .collect();
    for i in q.forbidden() {
        if !coeffs[i].is_zero() {
            return Err(Error::Verification(format!(
                "witness has a non-zero coefficient at forbidden size {i}"
            )));
        }
    }
    Ok(Witness {
        v_h,
        g,
        profile: SymmetricProfile::new(coeffs)?,
    })
}

fn certify_if_small(q: &FeasibilityQuery, w: &Witness) -> Result<bool> {
    if q.f.arity() > CERTIFY_MAX_ARITY {
        return Ok(false);
    }
    if certify_exhaustive(&q.f, q.allowed(), &w.g)? {
        Ok(true)
    } else {
        Err(Error::Verification("witness failed the exhaustive check".into()))
    }
}

/// Expands `g` to its truth table and checks `g = f (mod 2)` at every
/// input and that every subset whose size is not allowed has a zero
/// Walsh-Hadamard coefficient.
pub fn certify_exhaustive(f: &SymmetricFunction, allowed: &BTreeSet<usize>, g: &[BigInt]) -> Result<bool> {
    let n = f.arity();
    if n > CERTIFY_MAX_ARITY {
        return Err(Error::ArityCap {
            n,
            cap: CERTIFY_MAX_ARITY,
        });
    }
    if g.len() != n + 1 {
        return Err(Error::ArityMismatch {
            expected: n + 1,
            got: g.len(),
        });
    }
    let mut table = Vec::with_capacity(1 << n);
    for x in 0u32..(1 << n) {
        let w = x.count_ones() as usize;
        let v = &g[w];
        if v.is_odd() != f.value(w) {
            return Ok(false);
        }
        table.push(v.clone());
    }
    // The butterfly grows entries by at most 2^n; fall back to BigInt for
    // large witnesses.
    match table.iter().map(|v| v.to_i128()).collect::<Option<Vec<i128>>>() {
        Some(mut t) if t.iter().all(|v| v.unsigned_abs() < 1u128 << 100) => {
            fwht_in_place(&mut t);
            Ok(t.iter().enumerate().all(|(s, &c)| {
                c == 0 || allowed.contains(&(s.count_ones() as usize))
            }))
        }
        _ => {
            let mut t = table;
            let len = t.len();
            let mut h = 1;
            while h < len {
                for block in (0..len).step_by(2 * h) {
                    for i in block..block + h {
                        let u = t[i].clone();
                        let v = t[i + h].clone();
                        t[i] = &u + &v;
                        t[i + h] = u - v;
                    }
                }
                h <<= 1;
            }
            Ok(t.iter().enumerate().all(|(s, c)| {
                c.is_zero() || allowed.contains(&(s.count_ones() as usize))
            }))
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimalProfile {
    pub t: usize,
    pub decision: Decision,
    /// Decisions made before finding `t`.
    pub tested: usize,
}

/// Smallest `t` for which the sizes `{0} u {1..t} u {n-t..n}` suffice.
/// At most `n/2 + 1` decisions; `t = n/2` always succeeds.
pub fn minimal_profile(f: &SymmetricFunction) -> Result<MinimalProfile> {
    let n = f.arity();
    for t in 0..=n / 2 {
        let d = decide_symmetric_support(&FeasibilityQuery::with_profile(f.clone(), t)?)?;
        if d.feasible {
            return Ok(MinimalProfile {
                t,
                decision: d,
                tested: t + 1,
            });
        }
    }
    Err(Error::Verification(format!(
        "no profile feasible up to t = {} for n = {n}",
        n / 2
    )))
}

/// Exhaustive search over `v_h in [-bound, bound]^{n+1}` for a witness.
/// A one-sided oracle: finding one proves feasibility.
pub fn brute_force_witness(q: &FeasibilityQuery, bound: i64) -> Result<Option<Vec<i64>>> {
    let n = q.f.arity();
    let forbidden = q.forbidden();
    let side = (2 * bound + 1) as u128;
    if side.checked_pow(n as u32 + 1).is_none_or(|c| c > 50_000_000) {
        return Err(Error::ResourceCap(format!(
            "box [-{bound}, {bound}]^{} is too large",
            n + 1
        )));
    }
    let k = krawtchouk_matrix(n);
    let rows: Vec<Vec<i128>> = forbidden
        .iter()
        .map(|&i| k.row(i).iter().map(|v| v.to_i128().expect("small n")).collect())
        .collect();
    let v_f: Vec<i128> = q.f.values().iter().map(|&b| b as i128).collect();
    let mut h = vec![-(bound as i128); n + 1];
    let mut r: Vec<i128> = rows
        .iter()
        .map(|row| row.iter().zip(v_f.iter().zip(&h)).map(|(k, (f, h))| k * (f + 2 * h)).sum())
        .collect();
    loop {
        if r.iter().all(|&x| x == 0) {
            return Ok(Some(h.iter().map(|&v| v as i64).collect()));
        }
        let mut j = 0;
        loop {
            if j > n {
                return Ok(None);
            }
            if h[j] < bound as i128 {
                h[j] += 1;
                for (ri, row) in r.iter_mut().zip(&rows) {
                    *ri += 2 * row[j];
                }
                break;
            }
            let span = 2 * bound as i128;
            h[j] = -(bound as i128);
            for (ri, row) in r.iter_mut().zip(&rows) {
                *ri -= 2 * span * row[j];
            }
            j += 1;
        }
    }
}

/// Box radius keeping [`brute_force_witness`] within a few million points.
pub fn brute_force_bound(n: usize) -> i64 {
    match n {
        0..=6 => 4,
        7 => 3,
        8 => 2,
        _ => 1,
    }
}
