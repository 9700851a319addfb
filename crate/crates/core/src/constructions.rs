//! Compilers from Boolean functions to representing polynomials.
//!
//! - FR: full Walsh-Hadamard spectrum of the truth table.
//! - EF: per-monomial spectra of the ANF, summed.
//! - CSF: symmetric functions as XORs of products of closed-form `C^{2^r}`
//!   polynomials.
//! - KR: per-monomial Krawtchouk coefficients with a greedy sign choice
//!   that cancels terms.
//! - SC: the sparser of KR(f) and KR(f xor zeta(f)) + CSF(zeta(f)).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::boolfn::{
    complement_tilde_anf, decompose_csf, zeta_c, AnfForm, BooleanFunction, FunctionInput,
    SymmetricFunction, MAX_TABLE_ARITY,
};
use crate::error::{Error, Result};
use crate::polynomial::{csf_power2_poly, MultilinearPoly, PolyJson};
use crate::rational::{binomial, pow2, Rational};
use crate::subset::Subset;
use crate::transforms::{krawtchouk_coefficients, walsh_hadamard_numerators};

/// Largest monomial degree EF will expand.
pub const EF_MAX_DEGREE: usize = 24;
/// Largest monomial degree KR accepts.
pub const KR_MAX_DEGREE: usize = 64;
/// Cap on `sum_m 2^{|m|}`, the number of subset visits KR performs per pass.
pub const KR_MAX_VISITS: u128 = 1 << 28;
/// Default per-method time budget of [`compare_all`].
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(30);
/// Environment variable overriding the time budget, in milliseconds.
pub const TIME_BUDGET_ENV: &str = "NMQC_TIME_BUDGET_MS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fr,
    Ef,
    Csf,
    Kr,
    Sc,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Fr, Method::Ef, Method::Csf, Method::Kr, Method::Sc];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fr => "fr",
            Method::Ef => "ef",
            Method::Csf => "csf",
            Method::Kr => "kr",
            Method::Sc => "sc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

/// Symmetrization used by SC.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Symmetrization {
    /// XOR of `C^k` over every monomial size present.
    #[default]
    ZetaC,
}

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub method: Method,
    pub poly: MultilinearPoly,
    /// Non-zero non-constant coefficients (qubits).
    pub sparsity: usize,
    /// Non-zero coefficients including the constant term.
    pub support: usize,
    pub granularity: u32,
    pub elapsed: Duration,
    /// Basic operations counted by the construction, where tracked.
    pub operations: Option<u64>,
    pub notes: Vec<String>,
}

impl ConstructionReport {
    /// JSON form; timings are left out unless asked for so that output is
    /// reproducible.
    pub fn to_json(&self, with_poly: bool, with_timing: bool) -> ReportJson {
        ReportJson {
            method: self.method,
            sparsity: self.sparsity,
            support: self.support,
            granularity: self.granularity,
            elapsed_ms: with_timing.then_some(self.elapsed.as_secs_f64() * 1e3),
            operations: self.operations,
            notes: self.notes.clone(),
            poly: with_poly.then(|| self.poly.to_json()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub method: Method,
    pub sparsity: usize,
    pub support: usize,
    pub granularity: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operations: Option<u64>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolyJson>,
}

fn finish(
    method: Method,
    poly: MultilinearPoly,
    verified: bool,
    start: Instant,
    operations: Option<u64>,
    notes: Vec<String>,
) -> Result<ConstructionReport> {
    if !verified {
        return Err(Error::Verification(format!(
            "{method} polynomial does not represent the input"
        )));
    }
    let granularity = poly.granularity()?;
    Ok(ConstructionReport {
        method,
        sparsity: poly.sparsity(),
        support: poly.support_size(),
        granularity,
        poly,
        elapsed: start.elapsed(),
        operations,
        notes,
    })
}

/// FR: the Fourier spectrum of the whole truth table.
pub fn construct_fr(f: &BooleanFunction) -> Result<ConstructionReport> {
    let start = Instant::now();
    let n = f.arity();
    if n > MAX_TABLE_ARITY {
        return Err(Error::ArityCap {
            n,
            cap: MAX_TABLE_ARITY,
        });
    }
    let den = pow2(n as u32);
    let spectrum = walsh_hadamard_numerators(f);
    let poly = MultilinearPoly::from_terms(
        n,
        spectrum
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(s, &v)| (Subset::from_mask(s as u128), Rational::new(BigInt::from(v), den.clone()))),
    )?;
    let ok = poly.verify_mod2(f);
    let ops = (n as u64) << n;
    finish(Method::Fr, poly, ok, start, Some(ops), vec![])
}

fn check_visits(a: &AnfForm, max_degree: usize) -> Result<u128> {
    let deg = a.degree();
    if deg > max_degree {
        return Err(Error::ResourceCap(format!(
            "degree {deg} exceeds the cap of {max_degree}"
        )));
    }
    let visits: u128 = a.monomials().map(|m| 1u128 << m.len()).sum();
    if visits > KR_MAX_VISITS {
        return Err(Error::ResourceCap(format!(
            "{visits} subset visits exceed the cap of {KR_MAX_VISITS}"
        )));
    }
    Ok(visits)
}

/// Integer accumulator over subsets, dense for small arity.
enum Acc {
    Dense(Vec<i128>),
    Sparse(HashMap<u128, i128>),
}

impl Acc {
    fn new(n: usize) -> Self {
        if n <= 20 {
            Acc::Dense(vec![0; 1 << n])
        } else {
            Acc::Sparse(HashMap::new())
        }
    }

    fn get(&self, s: u128) -> i128 {
        match self {
            Acc::Dense(v) => v[s as usize],
            Acc::Sparse(m) => m.get(&s).copied().unwrap_or(0),
        }
    }

    fn add(&mut self, s: u128, d: i128) {
        match self {
            Acc::Dense(v) => v[s as usize] += d,
            Acc::Sparse(m) => {
                let e = m.entry(s).or_insert(0);
                *e += d;
                if *e == 0 {
                    m.remove(&s);
                }
            }
        }
    }

    fn into_terms(self) -> Vec<(u128, i128)> {
        match self {
            Acc::Dense(v) => v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(s, c)| (s as u128, c))
                .collect(),
            Acc::Sparse(m) => m.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    fn sparsity(&self) -> usize {
        match self {
            Acc::Dense(v) => v.iter().skip(1).filter(|&&c| c != 0).count(),
            Acc::Sparse(m) => m.iter().filter(|(&s, &c)| s != 0 && c != 0).count(),
        }
    }
}

fn acc_to_poly(n: usize, acc: Acc, scale_exp: u32) -> Result<MultilinearPoly> {
    let den = pow2(scale_exp);
    MultilinearPoly::from_terms(
        n,
        acc.into_terms()
            .into_iter()
            .map(|(s, c)| (Subset::from_mask(s), Rational::new(BigInt::from(c), den.clone()))),
    )
}

/// EF: each monomial `prod_{i in S} x_i` contributes
/// `2^{-|S|} sum_{T subset S} (-1)^{|T|} chi_T`.
pub fn construct_ef(a: &AnfForm) -> Result<ConstructionReport> {
    let start = Instant::now();
    check_visits(a, EF_MAX_DEGREE)?;
    let n = a.arity();
    let deg = a.degree() as u32;
    let mut acc = Acc::new(n);
    let mut ops = 0u64;
    for m in a.monomials() {
        let w = 1i128 << (deg - m.len() as u32);
        for t in m.subsets() {
            let v = if t.len() % 2 == 0 { w } else { -w };
            acc.add(t.mask(), v);
            ops += 1;
        }
    }
    let poly = acc_to_poly(n, acc, deg)?;
    let ok = poly.verify_against(&FunctionInput::Anf(a.clone()));
    finish(Method::Ef, poly, ok, start, Some(ops), vec![])
}

/// Per-size coefficients of a single degree-`s` monomial over its own `s`
/// variables, scaled by `2^s`: the last column of the Krawtchouk matrix.
fn monomial_profile(s: usize) -> Vec<i128> {
    let mut delta = vec![BigInt::zero(); s + 1];
    delta[s] = BigInt::one();
    let den = pow2(s as u32);
    krawtchouk_coefficients(&delta)
        .expect("non-empty")
        .into_iter()
        .map(|c| {
            (c * Rational::from_integer(den.clone()))
                .to_integer()
                .to_i128()
                .expect("entries are +-1")
        })
        .collect()
}

/// KR with the greedy sign heuristic.
///
/// Monomials are visited by decreasing size (canonical order within a
/// size). Each is added with the sign that exactly cancels more of the
/// accumulated non-constant coefficients; ties take `+`. The result is
/// compared against all-positive signs and the sparser one is kept.
pub fn construct_kr(a: &AnfForm) -> Result<ConstructionReport> {
    let start = Instant::now();
    let visits = check_visits(a, KR_MAX_DEGREE)?;
    let n = a.arity();
    let deg = a.degree();
    let mut profiles: HashMap<usize, Vec<i128>> = HashMap::new();
    let mut ops = 0u64;
    for m in a.monomials() {
        profiles.entry(m.len()).or_insert_with(|| {
            ops += ((m.len() + 1) as u64).pow(3);
            monomial_profile(m.len())
        });
    }
    let mut order: Vec<Subset> = a.monomials().collect();
    order.sort_by(|x, y| y.len().cmp(&x.len()).then(x.cmp(y)));

    // Coefficients are scaled by 2^deg so every entry is an integer.
    let term = |m: Subset, t: Subset| -> i128 {
        let base = profiles[&m.len()][t.len()];
        base << (deg - m.len())
    };

    let mut greedy = Acc::new(n);
    let mut negatives = 0usize;
    for &m in &order {
        let (mut plus, mut minus) = (0usize, 0usize);
        for t in m.subsets().filter(|t| !t.is_empty()) {
            let cur = greedy.get(t.mask());
            if cur != 0 {
                let c = term(m, t);
                if cur + c == 0 {
                    plus += 1;
                }
                if cur - c == 0 {
                    minus += 1;
                }
            }
        }
        let sign = if minus > plus {
            negatives += 1;
            -1
        } else {
            1
        };
        for t in m.subsets() {
            greedy.add(t.mask(), sign * term(m, t));
        }
        ops += 2u64 << m.len();
    }

    let mut positive = Acc::new(n);
    for &m in &order {
        for t in m.subsets() {
            positive.add(t.mask(), term(m, t));
        }
    }
    ops += visits as u64;

    let mut notes = vec![format!(
        "signs: {} positive, {} negative",
        order.len() - negatives,
        negatives
    )];
    let (g, p) = (greedy.sparsity(), positive.sparsity());
    let acc = if g <= p {
        greedy
    } else {
        notes.push(format!(
            "greedy signs gave sparsity {g}, all-positive {p}; using all-positive"
        ));
        positive
    };
    let poly = acc_to_poly(n, acc, deg as u32)?;
    let ok = poly.verify_against(&FunctionInput::Anf(a.clone()));
    finish(Method::Kr, poly, ok, start, Some(ops), notes)
}

/// Parity `C^1 = 1/2 - 1/2 chi_[n]`.
fn parity_poly(n: usize) -> Result<MultilinearPoly> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    MultilinearPoly::from_terms(n, [(Subset::EMPTY, half.clone()), (Subset::full(n), -half)])
}

/// Polynomial for `C^{2^r}` on `n` bits: closed form up to 64, EF beyond.
fn power2_factor(r: u32, n: usize, notes: &mut Vec<String>) -> Result<MultilinearPoly> {
    let k = 1usize << r;
    match k {
        1 => parity_poly(n),
        2..=64 => csf_power2_poly(k, n),
        _ => {
            notes.push(format!("C^{k} factor built by EF"));
            let anf = crate::boolfn::csf(k, n)?.to_anf(1 << 22)?;
            Ok(construct_ef(&anf)?.poly)
        }
    }
}

/// CSF: `f = XOR_k c_k C^k`, each `C^k` the product of its power-of-two
/// factors, the XOR realized as a sum.
pub fn construct_csf(f: &SymmetricFunction) -> Result<ConstructionReport> {
    let start = Instant::now();
    let n = f.arity();
    let mut poly = MultilinearPoly::zero(n)?;
    let mut notes = Vec::new();
    let mut used = Vec::new();
    let mut factor_cache: HashMap<u32, MultilinearPoly> = HashMap::new();
    for (k, _) in f.csf_coefficients().iter().enumerate().filter(|(_, &c)| c) {
        used.push(k);
        let mut term = MultilinearPoly::constant(n, Rational::one())?;
        for r in decompose_csf(k) {
            if let std::collections::hash_map::Entry::Vacant(e) = factor_cache.entry(r) {
                let p = power2_factor(r, n, &mut notes)?;
                e.insert(p);
            }
            term = term.multiply(&factor_cache[&r])?;
        }
        poly = poly.add(&term)?;
    }
    notes.insert(
        0,
        format!(
            "C^k terms: {}",
            if used.is_empty() {
                "none".to_string()
            } else {
                used.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
            }
        ),
    );
    let ok = poly.verify_symmetric(f);
    finish(Method::Csf, poly, ok, start, None, notes)
}

/// SC: the sparser of `KR(f)` and `KR(f xor zeta(f)) + CSF(zeta(f))`; both
/// candidates are verified, ties go to `KR(f)`.
pub fn construct_sc(a: &AnfForm, zeta: Symmetrization) -> Result<ConstructionReport> {
    let start = Instant::now();
    let Symmetrization::ZetaC = zeta;
    let direct = construct_kr(a)?;
    let sym = zeta_c(a);
    let tilde = complement_tilde_anf(a, &sym)?;
    let kr_tilde = construct_kr(&tilde)?;
    let csf_sym = construct_csf(&sym)?;
    let split = kr_tilde.poly.add(&csf_sym.poly)?;
    let ok_split = split.verify_against(&FunctionInput::Anf(a.clone()));
    if !ok_split {
        return Err(Error::Verification(
            "symmetrized candidate does not represent the input".into(),
        ));
    }
    let mut notes = vec![
        format!("kr(f) sparsity {}", direct.sparsity),
        format!(
            "kr(f~) + csf(zeta) sparsity {} (f~ has {} monomials)",
            split.sparsity(),
            tilde.len()
        ),
    ];
    let (poly, ok) = if split.sparsity() < direct.sparsity {
        notes.push("chose the symmetrized candidate".into());
        (split, ok_split)
    } else {
        notes.push("chose kr(f)".into());
        (direct.poly, true)
    };
    finish(Method::Sc, poly, ok, start, None, notes)
}

/// Runs one construction on a parsed input.
pub fn construct(method: Method, f: &FunctionInput) -> Result<ConstructionReport> {
    match method {
        Method::Fr => construct_fr(&f.truth()?),
        Method::Ef => construct_ef(&f.anf()?),
        Method::Kr => construct_kr(&f.anf()?),
        Method::Sc => construct_sc(&f.anf()?, Symmetrization::ZetaC),
        Method::Csf => match f.symmetric() {
            Some(s) => construct_csf(&s),
            None => Err(Error::InvalidArgument(
                "csf needs a symmetric function".into(),
            )),
        },
    }
}

/// Sparsity of the polynomial used for `C^{2^r}` on `n` bits.
pub fn factor_sparsity(r: u32, n: usize) -> BigInt {
    let k = 1i64 << r;
    let n = n as i64;
    match k {
        1 => BigInt::one(),
        2..=64 => (1..=k / 2)
            .map(|j| binomial(n, j) + binomial(n, n - j + 1))
            .sum(),
        _ => (0..k).map(|i| binomial(n, i)).sum(),
    }
}

/// Growth exponent of the product bound for `C^k`: each factor `C^{2^r}`
/// contributes `2^{r-1}` for `1 <= r <= 6`, `2^r - 1` for `r > 6`, and
/// nothing for `r = 0`.
pub fn sparsity_exponent(k: usize) -> u64 {
    decompose_csf(k)
        .into_iter()
        .map(|r| match r {
            0 => 0,
            1..=6 => 1u64 << (r - 1),
            _ => (1u64 << r) - 1,
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityBound {
    /// Upper bound on the CSF polynomial's sparsity.
    pub bound: BigInt,
    /// Largest growth exponent over the `C^k` terms of `f`.
    pub exponent: u64,
}

/// Product bound: each `C^k` term costs at most `prod_r (s_r + 1) - 1`
/// non-constant terms, `s_r` the sparsity of its factor `C^{2^r}`.
pub fn sparsity_bound(f: &SymmetricFunction) -> SparsityBound {
    let n = f.arity();
    let mut bound = BigInt::zero();
    let mut exponent = 0;
    for (k, _) in f.csf_coefficients().iter().enumerate().filter(|(_, &c)| c) {
        let prod = decompose_csf(k)
            .into_iter()
            .fold(BigInt::one(), |acc, r| acc * (factor_sparsity(r, n) + 1));
        bound += prod - 1;
        exponent = exponent.max(sparsity_exponent(k));
    }
    SparsityBound { bound, exponent }
}

/// A method that did not produce a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub method: Method,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Comparison {
    /// Successful reports, sparsest first.
    pub rows: Vec<ConstructionReport>,
    pub skipped: Vec<Skipped>,
}

impl Comparison {
    pub fn get(&self, m: Method) -> Option<&ConstructionReport> {
        self.rows.iter().find(|r| r.method == m)
    }

    /// CSV with header `method,sparsity,support,granularity`, plus
    /// `elapsed_ms` when `timings` is set. Skipped methods get empty cells.
    pub fn to_csv(&self, timings: bool) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["method", "sparsity", "support", "granularity"];
        if timings {
            header.push("elapsed_ms");
        }
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![
                r.method.name().to_string(),
                r.sparsity.to_string(),
                r.support.to_string(),
                r.granularity.to_string(),
            ];
            if timings {
                rec.push(format!("{:.3}", r.elapsed.as_secs_f64() * 1e3));
            }
            w.write_record(&rec)?;
        }
        for s in &self.skipped {
            let mut rec = vec![s.method.name(); header.len()];
            rec[1..].fill("");
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("ascii"))
    }
}

/// Time budget from [`TIME_BUDGET_ENV`], or the default.
pub fn budget_from_env() -> Duration {
    std::env::var(TIME_BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .map(Duration::from_millis)
        .unwrap_or(DEFAULT_TIME_BUDGET)
}

/// Runs every applicable construction concurrently, each allowed `budget`
/// from the common start. Methods that fail, do not apply or run out of
/// time are listed in `skipped`.
pub fn compare_all(f: &FunctionInput, budget: Duration) -> Comparison {
    let f = Arc::new(f.clone());
    let symmetric = f.symmetric().is_some();
    let mut pending = Vec::new();
    let mut skipped = Vec::new();
    for m in Method::ALL {
        if m == Method::Csf && !symmetric {
            skipped.push(Skipped {
                method: m,
                reason: "not symmetric".into(),
            });
            continue;
        }
        if m == Method::Fr && f.arity() > MAX_TABLE_ARITY {
            skipped.push(Skipped {
                method: m,
                reason: format!("arity above {MAX_TABLE_ARITY}"),
            });
            continue;
        }
        let (tx, rx) = mpsc::channel();
        let g = Arc::clone(&f);
        std::thread::spawn(move || {
            let _ = tx.send(construct(m, &g));
        });
        pending.push((m, rx));
    }
    let deadline = Instant::now() + budget;
    let mut rows = Vec::new();
    for (m, rx) in pending {
        let left = deadline.saturating_duration_since(Instant::now());
        match rx.recv_timeout(left) {
            Ok(Ok(r)) => rows.push(r),
            Ok(Err(e)) => skipped.push(Skipped {
                method: m,
                reason: e.to_string(),
            }),
            Err(_) => skipped.push(Skipped {
                method: m,
                reason: format!("exceeded {} ms", budget.as_millis()),
            }),
        }
    }
    rows.sort_by_key(|r| (r.sparsity, r.method));
    skipped.sort_by_key(|s| s.method);
    Comparison { rows, skipped }
}
