//! Gate-level realizations of measurement assignments.
//!
//! A program runs four stages: classical XOR trees computing the selector
//! bits (in parallel with GHZ preparation), selector-controlled basis
//! changes, measurement, and a classical XOR tree over the outcomes.
//! Costs are reported as `(depth, width, gates)`; fractional values appear
//! only for the approximate-synthesis bounds of non-Clifford layers.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::assignment::{clifford_level, MeasurementAssignment};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, rat, to_f64, Rational};

/// Largest qubit count the netlist executor will simulate.
pub const EXEC_MAX_QUBITS: usize = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CircuitCost {
    pub depth: f64,
    pub width: f64,
    pub gates: f64,
}

impl CircuitCost {
    pub const ZERO: CircuitCost = CircuitCost {
        depth: 0.0,
        width: 0.0,
        gates: 0.0,
    };

    pub fn new(depth: u64, width: u64, gates: u64) -> Self {
        CircuitCost {
            depth: depth as f64,
            width: width as f64,
            gates: gates as f64,
        }
    }
}

impl fmt::Display for CircuitCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "depth {} width {} gates {}",
            trim(self.depth),
            trim(self.width),
            trim(self.gates)
        )
    }
}

fn trim(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

/// `ceil(log2 v)`, 0 for `v <= 1`.
pub fn ceil_log2(v: u64) -> u64 {
    if v <= 1 {
        0
    } else {
        (64 - (v - 1).leading_zeros()) as u64
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GhzVariant {
    /// CNOT cascade of logarithmic depth.
    #[default]
    Log,
    /// Constant quantum depth with mid-circuit measurement; cost model only.
    Const,
}

impl fmt::Display for GhzVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GhzVariant::Log => "log",
            GhzVariant::Const => "const",
        })
    }
}

impl FromStr for GhzVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "log" => Ok(GhzVariant::Log),
            "const" | "constant" => Ok(GhzVariant::Const),
            _ => Err(Error::Parse(format!("unknown GHZ variant {s:?}"))),
        }
    }
}

/// Parameters of the approximate-synthesis bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostConfig {
    /// Target accuracy, `0 < epsilon <= 1`.
    pub epsilon: f64,
    /// Gate-overhead constant of single-qubit synthesis.
    pub c: f64,
}

impl Default for CostConfig {
    fn default() -> Self {
        CostConfig {
            epsilon: 0.01,
            c: 2.5,
        }
    }
}

fn selector_sizes(a: &MeasurementAssignment) -> Vec<u64> {
    a.qubits()
        .iter()
        .map(|q| q.selector.support.len() as u64)
        .collect()
}

/// XOR trees for all selectors: depth `max ceil(log2 |S|)`, width
/// `sum |S|`, gates `sum (|S| - 1)`.
pub fn linear_stage_cost(sizes: &[u64]) -> CircuitCost {
    CircuitCost::new(
        sizes.iter().map(|&s| ceil_log2(s)).max().unwrap_or(0),
        sizes.iter().sum(),
        sizes.iter().map(|&s| s.saturating_sub(1)).sum(),
    )
}

/// XOR tree over `k` outcomes: `(ceil(log2 k), k, k - 1)`.
pub fn post_stage_cost(k: u64) -> CircuitCost {
    if k == 0 {
        return CircuitCost::ZERO;
    }
    CircuitCost::new(ceil_log2(k), k, k - 1)
}

/// One H layer plus the doubling CNOT cascade: `(ceil(log2 k) + 1, k, k)`.
pub fn ghz_log_cost(k: u64) -> CircuitCost {
    if k == 0 {
        return CircuitCost::ZERO;
    }
    CircuitCost::new(ceil_log2(k) + 1, k, k)
}

/// Constant-depth GHZ preparation bounds for even `k >= 4`:
/// depth `6 + ceil(log2(k/2 - 1))`, gates `floor(k^2/8 + 11k/4 - 4)`.
pub fn ghz_const_depth_cost(k: u64) -> Result<CircuitCost> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "constant-depth GHZ needs an even k >= 4, got {k}"
        )));
    }
    let gates = (k * k + 22 * k - 32) / 8;
    Ok(CircuitCost::new(6 + ceil_log2(k / 2 - 1), k, gates))
}

/// GHZ preparation on `k` qubits.
pub fn ghz_log_netlist(k: usize) -> Netlist {
    let mut n = Netlist::new(k, 0, 0);
    for layer in ghz_layers(k) {
        n.layers.push(layer);
    }
    n
}

fn ghz_layers(k: usize) -> Vec<Vec<Gate>> {
    if k == 0 {
        return vec![];
    }
    let mut layers = vec![vec![Gate::quantum(GateKind::H, vec![0])]];
    let mut span = 1;
    while span < k {
        let layer: Vec<Gate> = (0..span)
            .filter(|i| i + span < k)
            .map(|i| Gate::quantum(GateKind::Cnot, vec![i, i + span]))
            .collect();
        layers.push(layer);
        span *= 2;
    }
    layers
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasurementCost {
    pub cost: CircuitCost,
    /// True when every operator is realized exactly with Clifford gates.
    pub exact: bool,
    pub level: u32,
}

fn synthesis_term(k: f64, cfg: &CostConfig) -> f64 {
    4.0 * cfg.c * (2.0 + k.log2() + (1.0 / cfg.epsilon).log2())
}

fn check_epsilon(cfg: &CostConfig) -> Result<()> {
    if !(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie in (0, 1], got {}",
            cfg.epsilon
        )));
    }
    Ok(())
}

/// Basis changes before measurement. Up to level 2 each qubit needs H and
/// at most one phase gate per angle; beyond that the layer is bounded by
/// approximate synthesis to accuracy `epsilon`.
pub fn measurement_layer(a: &MeasurementAssignment, cfg: &CostConfig) -> Result<MeasurementCost> {
    let level = clifford_level(a)?;
    let a = a.normalize().unwrap_or_else(|_| a.clone());
    let k = a.k() as u64;
    if level <= 2 {
        let mut gates = 0;
        let mut max_phases = 0;
        for q in a.qubits() {
            let phases = (!q.theta.is_zero()) as u64 + (!q.phi.is_zero()) as u64;
            max_phases = max_phases.max(phases);
            gates += 1 + phases;
        }
        let depth = if k == 0 { 0 } else { 1 + max_phases };
        return Ok(MeasurementCost {
            cost: CircuitCost::new(depth, k, gates),
            exact: true,
            level,
        });
    }
    check_epsilon(cfg)?;
    let kf = k as f64;
    Ok(MeasurementCost {
        cost: CircuitCost {
            depth: synthesis_term(kf, cfg),
            width: kf,
            gates: 4.0 * cfg.c * kf * (4.0 * kf / cfg.epsilon).log2(),
        },
        exact: false,
        level,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TotalCost {
    pub total: CircuitCost,
    pub exact: bool,
    pub level: u32,
    pub variant: GhzVariant,
    pub linear: CircuitCost,
    pub ghz: CircuitCost,
    pub measurement: CircuitCost,
    pub post: CircuitCost,
}

/// Whole-program cost. Non-Clifford assignments use the closed-form bound
/// `depth 2 log2 k + T`, `width k + sum(|S| - 1)`,
/// `gates sum(|S| - 1) + k (2 + T)` with `T = 4c(2 + log2 k + log2(1/eps))`;
/// Clifford ones add up the exact stage counts.
pub fn total_cost(a: &MeasurementAssignment, cfg: &CostConfig, variant: GhzVariant) -> Result<TotalCost> {
    let sizes = selector_sizes(a);
    let k = a.k() as u64;
    let linear = linear_stage_cost(&sizes);
    let ghz = match variant {
        GhzVariant::Log => ghz_log_cost(k),
        GhzVariant::Const => ghz_const_depth_cost(k)?,
    };
    let meas = measurement_layer(a, cfg)?;
    let post = post_stage_cost(k);
    let xor_gates: f64 = sizes.iter().map(|&s| s.saturating_sub(1) as f64).sum();
    let width = k as f64 + xor_gates;
    let total = if meas.exact {
        CircuitCost {
            depth: linear.depth.max(ghz.depth) + meas.cost.depth + post.depth,
            width,
            gates: linear.gates + ghz.gates + meas.cost.gates + post.gates,
        }
    } else {
        let kf = k as f64;
        let t = synthesis_term(kf, cfg);
        match variant {
            GhzVariant::Log => CircuitCost {
                depth: 2.0 * kf.log2() + t,
                width,
                gates: xor_gates + kf * (2.0 + t),
            },
            GhzVariant::Const => CircuitCost {
                depth: kf.log2() + ghz.depth + t,
                width,
                gates: xor_gates + kf * (1.0 + t) + ghz.gates,
            },
        }
    };
    Ok(TotalCost {
        total,
        exact: meas.exact,
        level: meas.level,
        variant,
        linear,
        ghz,
        measurement: meas.cost,
        post,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    H,
    Cnot,
    X,
    S,
    Sdg,
    Z,
    /// `diag(1, e^{-i pi t})`.
    Rz,
    Measure,
    /// Classical `c[0] = c[1] xor c[2]`.
    Xor,
    /// Classical `c[0] = not c[0]`.
    Not,
}

impl GateKind {
    fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::Cnot => "cnot",
            GateKind::X => "x",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Z => "z",
            GateKind::Rz => "rz",
            GateKind::Measure => "measure",
            GateKind::Xor => "xor",
            GateKind::Not => "not",
        }
    }

    fn is_quantum(self) -> bool {
        !matches!(self, GateKind::Xor | GateKind::Not)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub g: GateKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c: Vec<usize>,
    /// Rotation angle as a multiple of `pi`, `"num/den"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    /// Apply only when classical bit `[0]` equals `[1]`.
    #[serde(default, rename = "if", skip_serializing_if = "Option::is_none")]
    pub condition: Option<[usize; 2]>,
}

impl Gate {
    pub fn quantum(g: GateKind, q: Vec<usize>) -> Self {
        Gate {
            g,
            q,
            c: vec![],
            t: None,
            condition: None,
        }
    }

    pub fn classical(g: GateKind, c: Vec<usize>) -> Self {
        Gate {
            g,
            q: vec![],
            c,
            t: None,
            condition: None,
        }
    }

    fn writes(&self) -> Vec<usize> {
        match self.g {
            GateKind::Measure | GateKind::Xor | GateKind::Not => self.c.first().copied().into_iter().collect(),
            _ => vec![],
        }
    }

    fn reads(&self) -> Vec<usize> {
        let mut r: Vec<usize> = match self.g {
            GateKind::Xor => self.c[1..].to_vec(),
            _ => vec![],
        };
        r.extend(self.condition.map(|c| c[0]));
        r
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.g.name())?;
        if let Some(t) = &self.t {
            write!(f, "({t})")?;
        }
        for q in &self.q {
            write!(f, " q{q}")?;
        }
        for c in &self.c {
            write!(f, " c{c}")?;
        }
        if let Some([b, v]) = self.condition {
            write!(f, " if c{b}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Netlist {
    pub qregs: usize,
    pub cregs: usize,
    /// Input bits occupy classical registers `0..inputs`.
    #[serde(default)]
    pub inputs: usize,
    /// Classical register holding the result.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<usize>,
    pub layers: Vec<Vec<Gate>>,
}

impl Netlist {
    pub fn new(qregs: usize, cregs: usize, inputs: usize) -> Self {
        Netlist {
            qregs,
            cregs,
            inputs,
            output: None,
            layers: vec![],
        }
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flatten()
    }

    pub fn count(&self, g: GateKind) -> usize {
        self.gates().filter(|x| x.g == g).count()
    }

    /// Layers, largest layer and gate count of the emitted program.
    pub fn cost(&self) -> CircuitCost {
        CircuitCost::new(
            self.layers.len() as u64,
            self.layers.iter().map(|l| l.len()).max().unwrap_or(0) as u64,
            self.gates().count() as u64,
        )
    }

    /// Operands in range; within a layer, qubits and written bits are
    /// disjoint and no written bit is also read.
    pub fn validate(&self) -> Result<()> {
        for (i, layer) in self.layers.iter().enumerate() {
            let mut qs = HashSet::new();
            let mut written = HashSet::new();
            let mut read = HashSet::new();
            for g in layer {
                let bad = |m: String| Error::Verification(format!("layer {i}, {g}: {m}"));
                let arity_ok = match g.g {
                    GateKind::Cnot => g.q.len() == 2 && g.c.is_empty(),
                    GateKind::Measure => g.q.len() == 1 && g.c.len() == 1,
                    GateKind::Xor => g.q.is_empty() && g.c.len() == 3,
                    GateKind::Not => g.q.is_empty() && g.c.len() == 1,
                    _ => g.q.len() == 1 && g.c.is_empty(),
                };
                if !arity_ok {
                    return Err(bad("wrong operand count".into()));
                }
                if (g.g == GateKind::Rz) != g.t.is_some() {
                    return Err(bad("angle must accompany rz only".into()));
                }
                if let Some(t) = &g.t {
                    parse_rational(t)?;
                }
                for &q in &g.q {
                    if q >= self.qregs || !qs.insert(q) {
                        return Err(bad(format!("qubit {q} out of range or reused")));
                    }
                }
                for c in g.c.iter().chain(g.condition.iter().map(|c| &c[0])) {
                    if *c >= self.cregs {
                        return Err(bad(format!("bit {c} out of range")));
                    }
                }
                if let Some([_, v]) = g.condition {
                    if v > 1 {
                        return Err(bad("condition value must be 0 or 1".into()));
                    }
                }
                for w in g.writes() {
                    if !written.insert(w) {
                        return Err(bad(format!("bit {w} written twice")));
                    }
                }
                read.extend(g.reads());
            }
            if let Some(b) = written.intersection(&read).next() {
                return Err(Error::Verification(format!(
                    "layer {i}: bit {b} both read and written"
                )));
            }
        }
        if let Some(o) = self.output {
            if o >= self.cregs {
                return Err(Error::Verification(format!("output bit {o} out of range")));
            }
        }
        Ok(())
    }

    /// One gate per line, prefixed by its layer.
    pub fn to_text(&self) -> String {
        let mut s = format!("qregs {} cregs {} inputs {}\n", self.qregs, self.cregs, self.inputs);
        for (i, layer) in self.layers.iter().enumerate() {
            for g in layer {
                s.push_str(&format!("L{i} {g}\n"));
            }
        }
        if let Some(o) = self.output {
            s.push_str(&format!("output c{o}\n"));
        }
        s
    }
}

/// Appends XOR-tree layers computing the parity of `bits` into fresh
/// registers; returns the bit holding the result.
fn xor_tree(bits: &[usize], next: &mut usize, layers: &mut Vec<Vec<Gate>>) -> Option<usize> {
    let mut level: Vec<usize> = bits.to_vec();
    let mut depth = 0;
    while level.len() > 1 {
        if layers.len() <= depth {
            layers.push(vec![]);
        }
        let mut up = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            if let [a, b] = *pair {
                let dst = *next;
                *next += 1;
                layers[depth].push(Gate::classical(GateKind::Xor, vec![dst, a, b]));
                up.push(dst);
            } else {
                up.push(pair[0]);
            }
        }
        level = up;
        depth += 1;
    }
    level.first().copied()
}

/// Phase gate turning a measurement at angle `pi t` into an X measurement.
fn phase_gate(q: usize, t: &Rational) -> Gate {
    let g = if *t == rat(1, 2) {
        GateKind::Sdg
    } else if t.is_one() {
        GateKind::Z
    } else if *t == rat(3, 2) {
        GateKind::S
    } else {
        GateKind::Rz
    };
    let mut gate = Gate::quantum(g, vec![q]);
    if g == GateKind::Rz {
        gate.t = Some(format_rational(t));
    }
    gate
}

/// Full program for an assignment. Assignments above level 2 get `rz`
/// placeholders instead of synthesized rotations.
pub fn emit_netlist(a: &MeasurementAssignment, variant: GhzVariant) -> Result<Netlist> {
    if variant != GhzVariant::Log {
        return Err(Error::Unsupported(
            "only the log-depth GHZ preparation has a netlist".into(),
        ));
    }
    let a = a.normalize().unwrap_or_else(|_| a.clone());
    let n = a.arity();
    let k = a.k();
    let mut next = n;

    let mut linear: Vec<Vec<Gate>> = vec![];
    let mut selectors = Vec::with_capacity(k);
    for q in a.qubits() {
        let bits: Vec<usize> = q.selector.support.iter().map(|i| i - 1).collect();
        selectors.push(xor_tree(&bits, &mut next, &mut linear));
    }
    let ghz = ghz_layers(k);
    let mut layers: Vec<Vec<Gate>> = (0..linear.len().max(ghz.len()))
        .map(|i| {
            let mut l = linear.get(i).cloned().unwrap_or_default();
            l.extend(ghz.get(i).cloned().unwrap_or_default());
            l
        })
        .collect();

    let thetas: Vec<Gate> = a
        .qubits()
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.theta.is_zero())
        .map(|(i, q)| phase_gate(i, q.theta.turns()))
        .collect();
    if !thetas.is_empty() {
        layers.push(thetas);
    }
    let mut phis = vec![];
    for (i, q) in a.qubits().iter().enumerate() {
        if q.phi.is_zero() {
            continue;
        }
        let mut g = phase_gate(i, q.phi.turns());
        g.condition = match selectors[i] {
            Some(b) => Some([b, (!q.selector.constant) as usize]),
            // Empty support: the selector is the constant a0.
            None if q.selector.constant => None,
            None => continue,
        };
        phis.push(g);
    }
    if !phis.is_empty() {
        layers.push(phis);
    }
    let meas_bits: Vec<usize> = (next..next + k).collect();
    next += k;
    if k > 0 {
        layers.push((0..k).map(|i| Gate::quantum(GateKind::H, vec![i])).collect());
        layers.push(
            (0..k)
                .map(|i| Gate {
                    c: vec![meas_bits[i]],
                    ..Gate::quantum(GateKind::Measure, vec![i])
                })
                .collect(),
        );
    }
    let mut post = vec![];
    let out = match xor_tree(&meas_bits, &mut next, &mut post) {
        Some(b) => b,
        None => {
            next += 1;
            next - 1
        }
    };
    layers.extend(post);
    if a.final_constant() {
        layers.push(vec![Gate::classical(GateKind::Not, vec![out])]);
    }
    let netlist = Netlist {
        qregs: k,
        cregs: next,
        inputs: n,
        output: Some(out),
        layers,
    };
    netlist.validate()?;
    Ok(netlist)
}

/// Result of executing a netlist on one input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Execution {
    /// Probability that the output bit is 1.
    pub p_one: f64,
    /// Measurement branches with non-negligible probability.
    pub branches: usize,
}

impl Execution {
    /// The output bit when it is deterministic to within `tol`.
    pub fn deterministic(&self, tol: f64) -> Option<bool> {
        if self.p_one < tol {
            Some(false)
        } else if self.p_one > 1.0 - tol {
            Some(true)
        } else {
            None
        }
    }
}

fn gate_matrix(g: &Gate) -> Result<[[Complex64; 2]; 2]> {
    let o = Complex64::zero();
    let l = Complex64::one();
    let i = Complex64::i();
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok(match g.g {
        GateKind::H => [[s, s], [s, -s]],
        GateKind::X => [[o, l], [l, o]],
        GateKind::S => [[l, o], [o, i]],
        GateKind::Sdg => [[l, o], [o, -i]],
        GateKind::Z => [[l, o], [o, -l]],
        GateKind::Rz => {
            let t = parse_rational(g.t.as_deref().unwrap_or("0"))?;
            [[l, o], [o, Complex64::from_polar(1.0, -std::f64::consts::PI * to_f64(&t))]]
        }
        _ => unreachable!("not a single-qubit gate"),
    })
}

fn run_classical(g: &Gate, bits: &mut [bool]) {
    match g.g {
        GateKind::Xor => bits[g.c[0]] = bits[g.c[1]] ^ bits[g.c[2]],
        GateKind::Not => bits[g.c[0]] = !bits[g.c[0]],
        _ => {}
    }
}

/// Simulates the netlist on the packed input `x` (`x_1` at bit 0) with a
/// dense state vector. All measurements must come after the last
/// quantum gate.
pub fn execute(net: &Netlist, x: u128) -> Result<Execution> {
    net.validate()?;
    if net.qregs > EXEC_MAX_QUBITS {
        return Err(Error::ResourceCap(format!(
            "{} qubits exceed the executor cap of {EXEC_MAX_QUBITS}",
            net.qregs
        )));
    }
    let output = net
        .output
        .ok_or_else(|| Error::InvalidArgument("netlist has no output bit".into()))?;
    let mut bits = vec![false; net.cregs];
    for (i, b) in bits.iter_mut().enumerate().take(net.inputs.min(128)) {
        *b = (x >> i) & 1 == 1;
    }
    let mut state = vec![Complex64::zero(); 1 << net.qregs];
    state[0] = Complex64::one();
    let mut branches: Option<Vec<(f64, Vec<bool>)>> = None;

    for layer in &net.layers {
        if let Some(br) = branches.as_mut() {
            if layer.iter().any(|g| g.g.is_quantum()) {
                return Err(Error::Unsupported(
                    "quantum gate after measurement".into(),
                ));
            }
            for (_, b) in br.iter_mut() {
                for g in layer {
                    if cond_holds(g, b) {
                        run_classical(g, b);
                    }
                }
            }
            continue;
        }
        let measures: Vec<&Gate> = layer.iter().filter(|g| g.g == GateKind::Measure).collect();
        if !measures.is_empty() {
            branches = Some(measure_all(&state, &measures, &bits));
            continue;
        }
        let snapshot = bits.clone();
        for g in layer {
            if !cond_holds(g, &snapshot) {
                continue;
            }
            match g.g {
                GateKind::Cnot => {
                    let (c, t) = (1usize << g.q[0], 1usize << g.q[1]);
                    for idx in 0..state.len() {
                        if idx & c != 0 && idx & t == 0 {
                            state.swap(idx, idx | t);
                        }
                    }
                }
                GateKind::Xor | GateKind::Not => run_classical(g, &mut bits),
                _ => state = crate::assignment::apply_single(&state, g.q[0], gate_matrix(g)?),
            }
        }
    }
    let branches = branches.unwrap_or_else(|| vec![(1.0, bits)]);
    let p_one = branches
        .iter()
        .filter(|(_, b)| b[output])
        .fold(0.0, |acc, (p, _)| acc + p);
    Ok(Execution {
        p_one,
        branches: branches.len(),
    })
}

fn cond_holds(g: &Gate, bits: &[bool]) -> bool {
    g.condition.is_none_or(|[b, v]| bits[b] == (v == 1))
}

fn measure_all(state: &[Complex64], measures: &[&Gate], bits: &[bool]) -> Vec<(f64, Vec<bool>)> {
    let mut out: std::collections::HashMap<Vec<bool>, f64> = std::collections::HashMap::new();
    for (idx, amp) in state.iter().enumerate() {
        let p = amp.norm_sqr();
        if p < 1e-15 {
            continue;
        }
        let mut b = bits.to_vec();
        for g in measures {
            if cond_holds(g, bits) {
                b[g.c[0]] = (idx >> g.q[0]) & 1 == 1;
            }
        }
        *out.entry(b).or_insert(0.0) += p;
    }
    out.into_iter().map(|(b, p)| (p, b)).collect()
}
