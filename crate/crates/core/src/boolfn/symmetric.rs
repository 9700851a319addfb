use super::{AnfForm, BooleanFunction, SymmetricFunction};
use crate::error::{Error, Result};
use crate::rational::binomial_is_odd;
use crate::subset::subsets_of_size;

/// Cap on monomials materialized when a symmetric function is expanded.
const ANF_CAP: usize = 1 << 22;

/// Value vector of `f` if every weight class is constant.
pub fn is_symmetric(f: &BooleanFunction) -> Option<SymmetricFunction> {
    let n = f.arity();
    let mut seen: Vec<Option<bool>> = vec![None; n + 1];
    for (x, &v) in f.table().iter().enumerate() {
        let w = x.count_ones() as usize;
        match seen[w] {
            None => seen[w] = Some(v),
            Some(u) if u != v => return None,
            _ => {}
        }
    }
    SymmetricFunction::new(seen.into_iter().map(|v| v.unwrap_or(false)).collect()).ok()
}

/// Complete symmetric function `C^k` on `n` bits: `v(w) = binom(w, k) mod 2`.
pub fn csf(k: usize, n: usize) -> Result<SymmetricFunction> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "degree {k} exceeds arity {n}"
        )));
    }
    SymmetricFunction::from_fn(n, |w| binomial_is_odd(w as u64, k as u64))
}

pub fn and_n(n: usize) -> Result<SymmetricFunction> {
    SymmetricFunction::from_fn(n, |w| w == n)
}

pub fn parity_fn(n: usize) -> Result<SymmetricFunction> {
    SymmetricFunction::from_fn(n, |w| w % 2 == 1)
}

/// `Count(x, m)`: 1 iff the Hamming weight is divisible by `m`.
pub fn count_fn(m: usize, n: usize) -> Result<SymmetricFunction> {
    if m < 2 || !m.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "modulus {m} is not a power of two >= 2"
        )));
    }
    SymmetricFunction::from_fn(n, |w| w % m == 0)
}

/// Exponents `r` with `2^r` in the binary expansion of `k`, ascending.
/// `C^k` is the AND of the `C^{2^r}`; for `k = 0` the list is empty.
pub fn decompose_csf(k: usize) -> Vec<u32> {
    (0..usize::BITS).filter(|r| (k >> r) & 1 == 1).collect()
}

/// XOR of `C^k` over every monomial size `k` present in `f`.
pub fn zeta_c(f: &AnfForm) -> SymmetricFunction {
    let n = f.arity();
    let mut sizes = vec![false; n + 1];
    for m in f.monomials() {
        sizes[m.len()] = true;
    }
    let mut values = vec![false; n + 1];
    for (k, _) in sizes.iter().enumerate().filter(|(_, &b)| b) {
        for (w, v) in values.iter_mut().enumerate() {
            *v ^= binomial_is_odd(w as u64, k as u64);
        }
    }
    SymmetricFunction::new(values).expect("arity >= 1")
}

/// `f XOR sym` as a truth table.
pub fn complement_tilde(f: &AnfForm, sym: &SymmetricFunction) -> Result<BooleanFunction> {
    if f.arity() != sym.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: sym.arity(),
        });
    }
    f.to_truth()?.xor(&sym.to_boolean_function()?)
}

/// `f XOR sym` in algebraic normal form.
pub fn complement_tilde_anf(f: &AnfForm, sym: &SymmetricFunction) -> Result<AnfForm> {
    if f.arity() != sym.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: sym.arity(),
        });
    }
    f.xor(&sym.to_anf(ANF_CAP)?)
}

/// `C^k` on `n` bits with its `t` lexicographically first degree-`k`
/// monomials removed.
pub fn almost_csf(k: usize, n: usize, t: usize) -> Result<AnfForm> {
    let full = csf(k, n)?.to_anf(ANF_CAP)?;
    let missing: Vec<_> = subsets_of_size(n, k).take(t).collect();
    if missing.len() < t {
        return Err(Error::InvalidArgument(format!(
            "C^{k} on {n} bits has fewer than {t} monomials"
        )));
    }
    full.xor(&AnfForm::new(n, missing)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Subset;

    fn bits(v: &[u8]) -> Vec<bool> {
        v.iter().map(|&b| b == 1).collect()
    }

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v).unwrap()
    }

    #[test]
    fn csf_examples() {
        assert_eq!(csf(2, 3).unwrap().values(), bits(&[0, 0, 1, 1]));
        assert_eq!(csf(1, 5).unwrap().values(), bits(&[0, 1, 0, 1, 0, 1]));
        assert_eq!(csf(5, 6).unwrap().values(), bits(&[0, 0, 0, 0, 0, 1, 0]));
        assert!(csf(4, 3).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_fn(4, 5).unwrap().values(), bits(&[1, 0, 0, 0, 1, 0]));
        assert_eq!(count_fn(2, 4).unwrap(), parity_fn(4).unwrap().not());
        assert!(count_fn(3, 4).is_err());
        assert!(count_fn(1, 4).is_err());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose_csf(5), vec![0, 2]);
        assert_eq!(decompose_csf(8), vec![3]);
        assert_eq!(decompose_csf(7), vec![0, 1, 2]);
    }

    #[test]
    fn symmetry_detection() {
        let c2 = csf(2, 3).unwrap().to_boolean_function().unwrap();
        assert_eq!(is_symmetric(&c2).unwrap(), csf(2, 3).unwrap());
        let x1 = BooleanFunction::from_fn(2, |x| x & 1 == 1).unwrap();
        assert!(is_symmetric(&x1).is_none());
        let and2 = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
        assert_eq!(is_symmetric(&and2).unwrap().values(), bits(&[0, 0, 1]));
    }

    #[test]
    fn zeta_and_complement() {
        let h = AnfForm::new(3, [s(&[1, 2]), s(&[2, 3])]).unwrap();
        let z = zeta_c(&h);
        assert_eq!(z, csf(2, 3).unwrap());
        let tilde = complement_tilde_anf(&h, &z).unwrap();
        assert_eq!(tilde.monomials().collect::<Vec<_>>(), vec![s(&[1, 3])]);

        let c4 = csf(4, 6).unwrap().to_anf(1000).unwrap();
        let f = c4.xor(&AnfForm::new(6, [s(&[1, 2, 3, 4])]).unwrap()).unwrap();
        let z = zeta_c(&f);
        assert_eq!(z, csf(4, 6).unwrap());
        let tilde = complement_tilde(&f, &z).unwrap();
        assert_eq!(
            tilde.anf().monomials().collect::<Vec<_>>(),
            vec![s(&[1, 2, 3, 4])]
        );

        let c2 = csf(2, 4).unwrap().to_anf(100).unwrap();
        let t = complement_tilde(&c2, &zeta_c(&c2)).unwrap();
        assert!(t.table().iter().all(|&v| !v));
    }

    #[test]
    fn almost_csf_drops_first_monomials() {
        let a = almost_csf(2, 4, 2).unwrap();
        assert_eq!(a.len(), 4);
        assert!(!a.contains(s(&[1, 2])));
        assert!(!a.contains(s(&[1, 3])));
        assert!(a.contains(s(&[1, 4])));
        assert!(almost_csf(2, 3, 4).is_err());
    }
}
