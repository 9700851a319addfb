//! Function specifications accepted on the command line.
//!
//! ```text
//! anf: x1*x2 + x2*x3 [+ 1] [/n]
//! tt:<hex digits, low index first>[/n]
//! sym:<v_0,v_1,...,v_n>
//! AND:n  PARITY:n  C:k:n  COUNT:m:n  AC:k:n:t      (optionally prefixed by builtin:)
//! ```

use super::{
    almost_csf, and_n, count_fn, csf, is_symmetric, parity_fn, AnfForm, BooleanFunction,
    SymmetricFunction, MAX_TABLE_ARITY,
};
use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_VARS};

/// Cap on ANF size when expanding a symmetric function for EF or KR.
const ANF_CAP: usize = 1 << 22;

/// A parsed function in whichever representation the spec produced.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionInput {
    Table(BooleanFunction),
    Anf(AnfForm),
    Symmetric(SymmetricFunction),
}

impl FunctionInput {
    pub fn arity(&self) -> usize {
        match self {
            FunctionInput::Table(f) => f.arity(),
            FunctionInput::Anf(a) => a.arity(),
            FunctionInput::Symmetric(s) => s.arity(),
        }
    }

    pub fn truth(&self) -> Result<BooleanFunction> {
        match self {
            FunctionInput::Table(f) => Ok(f.clone()),
            FunctionInput::Anf(a) => a.to_truth(),
            FunctionInput::Symmetric(s) => s.to_boolean_function(),
        }
    }

    pub fn anf(&self) -> Result<AnfForm> {
        match self {
            FunctionInput::Table(f) => Ok(f.anf()),
            FunctionInput::Anf(a) => Ok(a.clone()),
            FunctionInput::Symmetric(s) => s.to_anf(ANF_CAP),
        }
    }

    /// Value vector, if the function is symmetric. ANF inputs above the
    /// truth-table cap are not inspected.
    pub fn symmetric(&self) -> Option<SymmetricFunction> {
        match self {
            FunctionInput::Table(f) => is_symmetric(f),
            FunctionInput::Anf(a) if a.arity() <= MAX_TABLE_ARITY => {
                a.to_truth().ok().and_then(|t| is_symmetric(&t))
            }
            FunctionInput::Anf(_) => None,
            FunctionInput::Symmetric(s) => Some(s.clone()),
        }
    }

    /// Evaluates at a packed input without building a truth table.
    pub fn eval_mask(&self, x: u128) -> bool {
        match self {
            FunctionInput::Table(f) => f.eval_index(x as u64),
            FunctionInput::Anf(a) => a.eval_mask(x),
            FunctionInput::Symmetric(s) => s.eval_mask(x),
        }
    }
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| perr(format!("expected an integer for {what}, got {s:?}")))
}

/// Parses a function specification.
pub fn parse_function(spec: &str) -> Result<FunctionInput> {
    let spec = spec.trim();
    let spec = spec.strip_prefix("builtin:").unwrap_or(spec);
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| perr(format!("missing ':' in function spec {spec:?}")))?;
    match head.trim().to_ascii_lowercase().as_str() {
        "anf" => parse_anf(rest).map(FunctionInput::Anf),
        "tt" => parse_tt(rest).map(FunctionInput::Table),
        "sym" => parse_sym(rest).map(FunctionInput::Symmetric),
        name => parse_builtin(name, rest),
    }
}

fn split_arity_suffix(s: &str) -> Result<(&str, Option<usize>)> {
    match s.rsplit_once('/') {
        Some((body, n)) => Ok((body, Some(parse_usize(n, "arity")?))),
        None => Ok((s, None)),
    }
}

fn parse_anf(s: &str) -> Result<AnfForm> {
    let (body, arity) = split_arity_suffix(s)?;
    let mut monomials = Vec::new();
    let mut max_var = 0;
    for term in body.split(['+', '^']) {
        let term = term.trim();
        if term.is_empty() || term == "0" {
            continue;
        }
        if term == "1" {
            monomials.push(Subset::EMPTY);
            continue;
        }
        let mut vars = Vec::new();
        for factor in term.split('*') {
            let factor = factor.trim();
            let idx = factor
                .strip_prefix('x')
                .ok_or_else(|| perr(format!("bad factor {factor:?} in term {term:?}")))?;
            let i = parse_usize(idx, "variable index")?;
            if i == 0 || i > MAX_VARS {
                return Err(perr(format!("variable x{i} outside x1..x{MAX_VARS}")));
            }
            max_var = max_var.max(i);
            vars.push(i);
        }
        monomials.push(Subset::from_indices(&vars)?);
    }
    let n = match arity {
        Some(n) if n < max_var => {
            return Err(perr(format!("arity {n} smaller than variable x{max_var}")))
        }
        Some(n) => n,
        None => max_var.max(1),
    };
    AnfForm::new(n, monomials).map_err(|e| perr(e.to_string()))
}

fn parse_tt(s: &str) -> Result<BooleanFunction> {
    let (body, arity) = split_arity_suffix(s)?;
    let digits: Vec<u32> = body
        .trim()
        .chars()
        .map(|c| c.to_digit(16).ok_or_else(|| perr(format!("bad hex digit {c:?}"))))
        .collect::<Result<_>>()?;
    if digits.is_empty() {
        return Err(perr("empty truth table"));
    }
    let bits: Vec<bool> = digits
        .iter()
        .flat_map(|d| (0..4).map(move |i| (d >> i) & 1 == 1))
        .collect();
    let n = match arity {
        Some(n) => n,
        None => {
            let len = bits.len();
            if !len.is_power_of_two() || len < 2 {
                return Err(perr(format!(
                    "{} hex digits do not give a power-of-two table; add /n",
                    digits.len()
                )));
            }
            len.trailing_zeros() as usize
        }
    };
    if n == 0 || n > MAX_TABLE_ARITY {
        return Err(perr(format!("truth-table arity {n} outside 1..={MAX_TABLE_ARITY}")));
    }
    let size = 1usize << n;
    if bits.len() < size || bits.len() >= size + 4 && size >= 4 {
        return Err(perr(format!(
            "{} hex digits do not match arity {n}",
            digits.len()
        )));
    }
    if bits[size..].iter().any(|&b| b) {
        return Err(perr("bits set beyond the truth table"));
    }
    BooleanFunction::new(n, bits[..size].to_vec())
}

fn parse_sym(s: &str) -> Result<SymmetricFunction> {
    let s = s.trim();
    let items: Vec<&str> = if s.contains(',') {
        s.split(',').map(str::trim).collect()
    } else {
        s.split("").filter(|c| !c.trim().is_empty()).collect()
    };
    let values = items
        .iter()
        .map(|&b| match b {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(perr(format!("value vector entry {b:?} is not 0 or 1"))),
        })
        .collect::<Result<Vec<_>>>()?;
    SymmetricFunction::new(values).map_err(|e| perr(e.to_string()))
}

fn parse_builtin(name: &str, rest: &str) -> Result<FunctionInput> {
    let args: Vec<usize> = rest
        .split(':')
        .map(|a| parse_usize(a, name))
        .collect::<Result<_>>()?;
    let want = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(perr(format!(
                "builtin {name} takes {k} argument(s), got {}",
                args.len()
            )))
        }
    };
    let wrap = |r: Result<SymmetricFunction>| r.map(FunctionInput::Symmetric).map_err(|e| perr(e.to_string()));
    match name {
        "and" => {
            want(1)?;
            wrap(and_n(args[0]))
        }
        "parity" => {
            want(1)?;
            wrap(parity_fn(args[0]))
        }
        "c" => {
            want(2)?;
            wrap(csf(args[0], args[1]))
        }
        "count" => {
            want(2)?;
            wrap(count_fn(args[0], args[1]))
        }
        "ac" => {
            want(3)?;
            almost_csf(args[0], args[1], args[2])
                .map(FunctionInput::Anf)
                .map_err(|e| perr(e.to_string()))
        }
        _ => Err(perr(format!("unknown function kind {name:?}"))),
    }
}
