use super::{AnfForm, BooleanFunction};
use crate::error::Result;
use crate::subset::Subset;

/// In-place binary Moebius transform; it is its own inverse over GF(2).
fn moebius(t: &mut [bool]) {
    let len = t.len();
    let mut step = 1;
    while step < len {
        for x in 0..len {
            if x & step != 0 {
                t[x] ^= t[x ^ step];
            }
        }
        step <<= 1;
    }
}

/// ANF of a truth table.
pub fn anf_from_truth(f: &BooleanFunction) -> AnfForm {
    let mut t = f.table().to_vec();
    moebius(&mut t);
    let monomials = t
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(m, _)| Subset::from_mask(m as u128));
    AnfForm::new(f.arity(), monomials).expect("monomials within arity")
}

/// Truth table of an ANF (`n <= 24`).
pub fn truth_from_anf(a: &AnfForm) -> Result<BooleanFunction> {
    let n = a.arity();
    let mut t = BooleanFunction::constant(n, false)?.table().to_vec();
    for m in a.monomials() {
        t[m.mask() as usize] = true;
    }
    moebius(&mut t);
    BooleanFunction::new(n, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v).unwrap()
    }

    #[test]
    fn examples() {
        let and2 = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
        assert_eq!(and2.anf().monomials().collect::<Vec<_>>(), vec![s(&[1, 2])]);
        let zero = BooleanFunction::constant(3, false).unwrap();
        assert!(zero.anf().is_empty());
        let par = BooleanFunction::from_fn(2, |x| x.count_ones() % 2 == 1).unwrap();
        assert_eq!(
            par.anf().monomials().collect::<Vec<_>>(),
            vec![s(&[1]), s(&[2])]
        );
    }

    #[test]
    fn truth_of_h() {
        let h = AnfForm::new(3, [s(&[1, 2]), s(&[2, 3])]).unwrap();
        let t = truth_from_anf(&h).unwrap();
        for x in 0..8u64 {
            let b = |i: u32| (x >> i) & 1 == 1;
            assert_eq!(t.eval_index(x), (b(0) & b(1)) ^ (b(1) & b(2)));
        }
        let one = AnfForm::new(2, [Subset::EMPTY]).unwrap();
        assert!(truth_from_anf(&one).unwrap().table().iter().all(|&v| v));
        let zero = AnfForm::zero(2).unwrap();
        assert!(truth_from_anf(&zero).unwrap().table().iter().all(|&v| !v));
    }

    #[test]
    fn round_trip_exhaustive_small() {
        for n in 1..=4usize {
            for code in 0..1u64 << (1 << n) {
                let f = BooleanFunction::from_fn(n, |x| (code >> x) & 1 == 1).unwrap();
                assert_eq!(truth_from_anf(&anf_from_truth(&f)).unwrap(), f);
            }
        }
    }

    #[test]
    fn and_has_full_degree() {
        for n in 1..=6usize {
            let f = BooleanFunction::from_fn(n, |x| x == (1 << n) - 1).unwrap();
            assert_eq!(f.degree(), n);
        }
    }
}
