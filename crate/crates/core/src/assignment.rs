//! Measurement assignments on a GHZ state.
//!
//! Qubit `i` is measured with the equatorial operator at angle
//! `alpha_i = pi (theta_i + phi_i s_i(x))`, `s_i` an affine parity of the
//! input. The product of the `+-1` outcomes has expectation
//! `cos(sum_i alpha_i)`, so the output is deterministic exactly when the
//! total angle is an integer multiple of `pi`.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::MultilinearPoly;
use crate::rational::{format_rational, granularity_of, parse_rational, reduce_mod, to_f64, Rational};
use crate::subset::{pack_bits, Subset, MAX_VARS};

/// Largest qubit count accepted by [`dense_expectation`].
pub const DENSE_MAX_QUBITS: usize = 12;

/// `a0 xor (xor_{j in S} x_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub constant: bool,
    pub support: Subset,
}

impl LinearForm {
    pub fn parity(support: Subset) -> Self {
        LinearForm {
            constant: false,
            support,
        }
    }

    pub fn eval_mask(&self, x: u128) -> bool {
        self.constant ^ self.support.parity(x)
    }
}

/// An angle `pi * t`, stored as `t` reduced into `[0, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AngleRational(Rational);

impl AngleRational {
    pub fn new(t: Rational) -> Self {
        AngleRational(reduce_mod(&t, 2))
    }

    pub fn zero() -> Self {
        AngleRational(Rational::zero())
    }

    /// The multiple of `pi`.
    pub fn turns(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn granularity(&self) -> Result<u32> {
        granularity_of(&self.0)
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * to_f64(&self.0)
    }

    pub fn add(&self, other: &AngleRational) -> AngleRational {
        AngleRational::new(&self.0 + &other.0)
    }
}

impl fmt::Debug for AngleRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}pi", format_rational(&self.0))
    }
}

impl fmt::Display for AngleRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitMeasurement {
    pub selector: LinearForm,
    pub theta: AngleRational,
    pub phi: AngleRational,
}

impl QubitMeasurement {
    /// `theta + phi s` at input `x`, as a multiple of `pi`.
    pub fn angle_at(&self, x: u128) -> Rational {
        if self.selector.eval_mask(x) {
            self.theta.turns() + self.phi.turns()
        } else {
            self.theta.turns().clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementAssignment {
    n: usize,
    qubits: Vec<QubitMeasurement>,
    final_constant: bool,
}

impl MeasurementAssignment {
    pub fn new(n: usize, qubits: Vec<QubitMeasurement>, final_constant: bool) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::ArityCap {
                n,
                cap: MAX_VARS,
            });
        }
        for q in &qubits {
            if q.selector.support.max_index() > n {
                return Err(Error::InvalidArgument(format!(
                    "selector {} outside {n} inputs",
                    q.selector.support
                )));
            }
        }
        Ok(MeasurementAssignment {
            n,
            qubits,
            final_constant,
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Number of qubits.
    pub fn k(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[QubitMeasurement] {
        &self.qubits
    }

    pub fn final_constant(&self) -> bool {
        self.final_constant
    }

    /// Total angle at `x` as a multiple of `pi`.
    pub fn total_angle(&self, x: u128) -> Rational {
        self.qubits.iter().map(|q| q.angle_at(x)).sum()
    }

    fn check_point(&self, x: u128) -> Result<()> {
        if self.n < 128 && x >> self.n != 0 {
            return Err(Error::InvalidArgument(format!(
                "input {x:#x} has bits beyond {} variables",
                self.n
            )));
        }
        Ok(())
    }

    /// Output bit at the packed input `x` (`x_1` is bit 0), using exact
    /// rational arithmetic.
    pub fn evaluate_mask(&self, x: u128) -> Result<bool> {
        self.check_point(x)?;
        let total = self.total_angle(x);
        if !total.is_integer() {
            return Err(Error::NondeterministicPoint {
                input: format!("{x:#b}"),
            });
        }
        Ok(total.to_integer().is_odd() ^ self.final_constant)
    }

    pub fn evaluate_deterministic(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        self.evaluate_mask(pack_bits(x))
    }

    /// Moves the common angle into the post-processing bit: every `theta`
    /// becomes 0 and `final_constant` absorbs `sum theta mod 2`, which must
    /// be an integer.
    pub fn normalize(&self) -> Result<MeasurementAssignment> {
        let shift: Rational = self.qubits.iter().map(|q| q.theta.turns().clone()).sum();
        if !shift.is_integer() {
            return Err(Error::NondeterministicPoint {
                input: "0".into(),
            });
        }
        let qubits = self
            .qubits
            .iter()
            .map(|q| QubitMeasurement {
                selector: q.selector,
                theta: AngleRational::zero(),
                phi: q.phi.clone(),
            })
            .collect();
        Ok(MeasurementAssignment {
            n: self.n,
            qubits,
            final_constant: self.final_constant ^ shift.to_integer().is_odd(),
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.qubits.iter().all(|q| q.theta.is_zero())
    }

    pub fn to_json(&self) -> AssignmentJson {
        AssignmentJson {
            n: self.n,
            k: self.k(),
            qubits: self
                .qubits
                .iter()
                .map(|q| QubitJson {
                    s: q.selector.support.indices(),
                    a0: q.selector.constant as u8,
                    theta: q.theta.to_string(),
                    phi: q.phi.to_string(),
                })
                .collect(),
            final_constant: self.final_constant as u8,
        }
    }

    pub fn from_json(j: &AssignmentJson) -> Result<Self> {
        if j.k != j.qubits.len() {
            return Err(Error::Parse(format!(
                "k = {} but {} qubits listed",
                j.k,
                j.qubits.len()
            )));
        }
        let bit = |v: u8| match v {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::Parse(format!("bit expected, got {v}"))),
        };
        let qubits = j
            .qubits
            .iter()
            .map(|q| {
                Ok(QubitMeasurement {
                    selector: LinearForm {
                        constant: bit(q.a0)?,
                        support: Subset::from_indices(&q.s)?,
                    },
                    theta: AngleRational::new(parse_rational(&q.theta)?),
                    phi: AngleRational::new(parse_rational(&q.phi)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MeasurementAssignment::new(j.n, qubits, bit(j.final_constant)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub n: usize,
    pub k: usize,
    pub qubits: Vec<QubitJson>,
    pub final_constant: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitJson {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    pub a0: u8,
    pub theta: String,
    pub phi: String,
}

/// One qubit per non-constant term: selector `s_S = xor_{i in S} x_i`,
/// `phi = -2 c_S` and a common `theta = (1/k) sum_S c_S` including the
/// constant. A constant polynomial gives a zero-qubit assignment.
pub fn assignment_from_poly(p: &MultilinearPoly) -> Result<MeasurementAssignment> {
    p.granularity()?;
    let k = p.sparsity();
    let total: Rational = p.terms().map(|(_, c)| c.clone()).sum();
    if k == 0 {
        if !total.is_integer() {
            return Err(Error::InvalidArgument(format!(
                "constant {} is not an integer",
                format_rational(&total)
            )));
        }
        return MeasurementAssignment::new(p.arity(), vec![], total.to_integer().is_odd());
    }
    let theta = AngleRational::new(total / Rational::from_integer(k.into()));
    let qubits = p
        .non_constant_terms()
        .map(|(s, c)| QubitMeasurement {
            selector: LinearForm::parity(s),
            theta: theta.clone(),
            phi: AngleRational::new(-(c * Rational::from_integer(2.into()))),
        })
        .collect();
    MeasurementAssignment::new(p.arity(), qubits, false)
}

/// Highest Clifford-hierarchy level among the measurement operators after
/// normalization: `max_i gran(theta_i + phi_i s) + 1` over both selector
/// values.
pub fn clifford_level(a: &MeasurementAssignment) -> Result<u32> {
    let a = if a.is_normalized() {
        a.clone()
    } else {
        a.normalize()?
    };
    let mut level = 0;
    for q in a.qubits() {
        level = level
            .max(q.theta.granularity()?)
            .max(q.theta.add(&q.phi).granularity()?);
    }
    Ok(level + 1)
}

/// `<GHZ| (x)_i M(alpha_i) |GHZ>` computed on the explicit `2^k` state,
/// with `M(alpha) = [[0, e^{-i alpha}], [e^{i alpha}, 0]]`.
pub fn dense_expectation(a: &MeasurementAssignment, x: u128) -> Result<f64> {
    let k = a.k();
    if k > DENSE_MAX_QUBITS {
        return Err(Error::ResourceCap(format!(
            "{k} qubits exceed the dense cap of {DENSE_MAX_QUBITS}"
        )));
    }
    a.check_point(x)?;
    if k == 0 {
        return Ok(1.0);
    }
    let angles: Vec<f64> = a
        .qubits()
        .iter()
        .map(|q| std::f64::consts::PI * to_f64(&reduce_mod(&q.angle_at(x), 2)))
        .collect();
    let psi = ghz_state(k);
    let mut phi = psi.clone();
    for (i, &alpha) in angles.iter().enumerate() {
        phi = apply_single(&phi, i, equatorial(alpha));
    }
    let inner: Complex64 = psi.iter().zip(&phi).map(|(a, b)| a.conj() * b).sum();
    Ok(inner.re)
}

/// `(|0..0> + |1..1>) / sqrt 2` on `k` qubits, qubit `i` at bit `i`.
pub fn ghz_state(k: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::zero(); 1 << k];
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[0] = amp;
    v[(1 << k) - 1] += amp;
    v
}

/// `cos(a) X + sin(a) Y`.
pub fn equatorial(alpha: f64) -> [[Complex64; 2]; 2] {
    let e = Complex64::from_polar(1.0, alpha);
    [[Complex64::zero(), e.conj()], [e, Complex64::zero()]]
}

/// Applies a 2x2 matrix to qubit `q` of a state vector.
pub fn apply_single(state: &[Complex64], q: usize, m: [[Complex64; 2]; 2]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); state.len()];
    let bit = 1usize << q;
    for (idx, amp) in state.iter().enumerate() {
        if amp.is_zero() {
            continue;
        }
        let b = (idx & bit != 0) as usize;
        let base = idx & !bit;
        out[base] += m[0][b] * amp;
        out[base | bit] += m[1][b] * amp;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutcomeStats {
    pub shots: u64,
    /// Shots whose decoded parity `xor_i g(m_i)` was 1.
    pub parity_ones: u64,
    /// Shots whose output bit (parity xor final constant) was 1.
    pub output_ones: u64,
    /// `(1 - cos alpha) / 2`, the exact probability of parity 1.
    pub expected_parity_rate: f64,
    /// Histogram of the first few qubits' outcomes, low qubit at bit 0.
    pub first_outcomes: Vec<u128>,
}

impl OutcomeStats {
    pub fn parity_rate(&self) -> f64 {
        self.parity_ones as f64 / self.shots as f64
    }

    /// Binomial standard deviation of the parity rate.
    pub fn sigma(&self) -> f64 {
        let p = self.expected_parity_rate;
        (p * (1.0 - p) / self.shots as f64).sqrt()
    }
}

const CHUNK: u64 = 1 << 14;
const RECORDED: usize = 16;

/// Samples `shots` outcome strings `g(m) in {0,1}^k`: the first `k - 1`
/// bits uniform, the last fixing the parity, which is 1 with probability
/// `(1 - cos alpha) / 2`. Chunks run in parallel, chunk `c` seeded from
/// `seed` on stream `c`.
pub fn sample_outcomes(
    a: &MeasurementAssignment,
    x: u128,
    shots: u64,
    seed: u64,
) -> Result<OutcomeStats> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    a.check_point(x)?;
    let total = reduce_mod(&a.total_angle(x), 2);
    let cos = if total.is_integer() {
        if total.is_zero() {
            1.0
        } else {
            -1.0
        }
    } else {
        (std::f64::consts::PI * to_f64(&total)).cos()
    };
    let p_one = ((1.0 - cos) / 2.0).clamp(0.0, 1.0);
    let k = a.k();
    let chunks = shots.div_ceil(CHUNK);
    let per_chunk: Vec<(u64, Vec<u128>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(shots - c * CHUNK);
            let mut ones = 0;
            let mut recorded = Vec::new();
            for _ in 0..count {
                let parity = if k == 0 { false } else { rng.random_bool(p_one) };
                ones += parity as u64;
                if recorded.len() < RECORDED && c == 0 {
                    recorded.push(outcome_string(&mut rng, k, parity));
                }
            }
            (ones, recorded)
        })
        .collect();
    let parity_ones: u64 = per_chunk.iter().map(|(o, _)| o).sum();
    let first_outcomes = per_chunk
        .into_iter()
        .flat_map(|(_, r)| r)
        .take(RECORDED)
        .collect();
    let output_ones = if a.final_constant() {
        shots - parity_ones
    } else {
        parity_ones
    };
    Ok(OutcomeStats {
        shots,
        parity_ones,
        output_ones,
        expected_parity_rate: p_one,
        first_outcomes,
    })
}

fn outcome_string(rng: &mut ChaCha8Rng, k: usize, parity: bool) -> u128 {
    if k == 0 {
        return 0;
    }
    let mut bits = 0u128;
    for i in 0..k - 1 {
        if rng.random::<bool>() {
            bits |= 1 << i;
        }
    }
    if (bits.count_ones() % 2 == 1) != parity {
        bits |= 1 << (k - 1);
    }
    bits
}

/// `(1 - cos(pi t)) / 2` for the total angle at `x`, the probability that
/// the decoded outcome parity is 1.
pub fn parity_one_probability(a: &MeasurementAssignment, x: u128) -> f64 {
    let t = reduce_mod(&a.total_angle(x), 2);
    (1.0 - (std::f64::consts::PI * t.to_f64().unwrap_or(f64::NAN)).cos()) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{csf, BooleanFunction, SymmetricFunction};
    use crate::constructions::{construct_csf, construct_fr};
    use crate::rational::{rat, rat_int};

    fn and2() -> MeasurementAssignment {
        let f = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
        assignment_from_poly(&construct_fr(&f).unwrap().poly).unwrap()
    }

    #[test]
    fn and2_assignment() {
        let a = and2();
        assert_eq!(a.k(), 3);
        let phis: Vec<_> = a.qubits().iter().map(|q| q.phi.turns().clone()).collect();
        assert_eq!(phis, vec![rat(1, 2), rat(1, 2), rat(3, 2)]);
        for x in 0..4u128 {
            assert_eq!(a.evaluate_mask(x).unwrap(), x == 3);
        }
        assert_eq!(clifford_level(&a).unwrap(), 2);
        assert!((dense_expectation(&a, 3).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalization_preserves_outputs() {
        let f = csf(3, 5).unwrap();
        let a = assignment_from_poly(&construct_csf(&f).unwrap().poly).unwrap();
        let b = a.normalize().unwrap();
        assert!(b.is_normalized());
        for x in 0..32u128 {
            assert_eq!(a.evaluate_mask(x).unwrap(), b.evaluate_mask(x).unwrap());
            assert_eq!(a.evaluate_mask(x).unwrap(), f.eval_mask(x));
        }
    }

    #[test]
    fn constant_polys() {
        let one = MultilinearPoly::constant(3, rat_int(1)).unwrap();
        let a = assignment_from_poly(&one).unwrap();
        assert_eq!(a.k(), 0);
        assert!(a.evaluate_mask(5).unwrap());
        assert_eq!(clifford_level(&a).unwrap(), 1);
        let half = MultilinearPoly::constant(3, rat(1, 2)).unwrap();
        assert!(assignment_from_poly(&half).is_err());
    }

    #[test]
    fn c5_exhaustive_and_level() {
        let f = csf(5, 6).unwrap();
        let a = assignment_from_poly(&construct_csf(&f).unwrap().poly).unwrap();
        assert_eq!(a.k(), 43);
        for x in 0..64u128 {
            assert_eq!(a.evaluate_mask(x).unwrap(), f.eval_mask(x));
        }
        assert_eq!(clifford_level(&a).unwrap(), 5);
    }

    #[test]
    fn nondeterministic_point_is_reported() {
        let q = QubitMeasurement {
            selector: LinearForm::parity(Subset::singleton(1)),
            theta: AngleRational::zero(),
            phi: AngleRational::new(rat(1, 2)),
        };
        let a = MeasurementAssignment::new(1, vec![q], false).unwrap();
        assert!(!a.evaluate_mask(0).unwrap());
        assert!(matches!(
            a.evaluate_mask(1),
            Err(Error::NondeterministicPoint { .. })
        ));
        assert!(dense_expectation(&a, 1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let a = and2();
        let j = serde_json::to_string(&a.to_json()).unwrap();
        assert!(j.contains("\"phi\":\"1/2\""));
        let back: AssignmentJson = serde_json::from_str(&j).unwrap();
        assert_eq!(MeasurementAssignment::from_json(&back).unwrap(), a);
    }

    #[test]
    fn sampler_is_seeded_and_calibrated() {
        let a = and2();
        let s1 = sample_outcomes(&a, 3, 20_000, 7).unwrap();
        let s2 = sample_outcomes(&a, 3, 20_000, 7).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.parity_ones, 20_000);
        for o in &s1.first_outcomes {
            assert_eq!(o.count_ones() % 2, 1);
        }
        assert!(sample_outcomes(&a, 0, 0, 1).is_err());
        let sym = SymmetricFunction::new(vec![false, true]).unwrap();
        let p = construct_csf(&sym).unwrap().poly;
        let b = assignment_from_poly(&p).unwrap();
        assert_eq!(sample_outcomes(&b, 1, 100, 0).unwrap().output_ones, 100);
    }
}
