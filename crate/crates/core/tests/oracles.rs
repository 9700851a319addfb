//! Frozen values computed by hand or with an independent script.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use nmqc::assignment::{assignment_from_poly, clifford_level};
use nmqc::boolfn::{and_n, csf, decompose_csf, BooleanFunction};
use nmqc::circuits::{
    ghz_const_depth_cost, ghz_log_cost, total_cost, CostConfig, GhzVariant,
};
use nmqc::constructions::{construct_csf, construct_ef, construct_fr, construct_kr, factor_sparsity};
use nmqc::feasibility::{smith_normal_form, IntegerMatrix};
use nmqc::polynomial::csf_power2_poly;
use nmqc::rational::{format_rational, rat};
use nmqc::transforms::{krawtchouk_matrix, walsh_hadamard};
use nmqc::Subset;

fn s(v: &[usize]) -> Subset {
    Subset::from_indices(v).unwrap()
}

#[test]
fn and2_fourier_coefficients() {
    let f = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
    let c = walsh_hadamard(&f).unwrap();
    assert_eq!(c, vec![rat(1, 4), rat(-1, 4), rat(-1, 4), rat(1, 4)]);
    let p = construct_fr(&f).unwrap().poly;
    assert_eq!(p.coeff(s(&[1, 2])), rat(1, 4));
    assert_eq!(p.coeff(s(&[1])), rat(-1, 4));
}

#[test]
fn and2_assignment_angles() {
    let f = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
    let a = assignment_from_poly(&construct_fr(&f).unwrap().poly).unwrap();
    let phis: Vec<String> = a.qubits().iter().map(|q| q.phi.to_string()).collect();
    assert_eq!(phis, ["1/2", "1/2", "3/2"]);
    assert_eq!(clifford_level(&a).unwrap(), 2);
}

#[test]
fn krawtchouk_small_tables() {
    let want2 = [[1, 2, 1], [1, 0, -1], [1, -2, 1]];
    let want3 = [[1, 3, 3, 1], [1, 1, -1, -1], [1, -1, -1, 1], [1, -3, 3, -1]];
    let m2 = krawtchouk_matrix(2);
    for (i, row) in want2.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            assert_eq!(m2.entry(i, j), &BigInt::from(v), "n=2 ({i},{j})");
        }
    }
    let m3 = krawtchouk_matrix(3);
    for (i, row) in want3.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            assert_eq!(m3.entry(i, j), &BigInt::from(v), "n=3 ({i},{j})");
        }
    }
}

#[test]
fn snf_of_small_matrix() {
    let a = IntegerMatrix::from_i64(&[vec![2, 4], vec![6, 8]]).unwrap();
    let d = smith_normal_form(&a);
    d.check(&a).unwrap();
    assert_eq!(d.invariants(), vec![BigInt::from(2), BigInt::from(4)]);
}

#[test]
fn kr_two_monomials() {
    let anf = nmqc::boolfn::AnfForm::new(3, [s(&[1, 2]), s(&[2, 3])]).unwrap();
    let r = construct_kr(&anf).unwrap();
    assert_eq!(r.sparsity, 4);
    let (c0, terms) = r.poly.to_xor_basis();
    assert_eq!(c0, rat(0, 1));
    let got: BTreeMap<Vec<usize>, String> = terms
        .into_iter()
        .map(|(t, c)| (t.indices(), format_rational(&c)))
        .collect();
    let want: BTreeMap<Vec<usize>, String> = [
        (vec![1], "1/2"),
        (vec![3], "-1/2"),
        (vec![1, 2], "-1/2"),
        (vec![2, 3], "1/2"),
    ]
    .into_iter()
    .map(|(k, v)| (k, v.to_string()))
    .collect();
    assert_eq!(got, want);
}

/// Selector census of the C^5 assignment on six bits, with each qubit's
/// angle `phi` written in `(-1, 1]`.
#[test]
fn c5_on_six_bits() {
    let f = csf(5, 6).unwrap();
    let r = construct_csf(&f).unwrap();
    assert_eq!(r.sparsity, 43);
    let a = assignment_from_poly(&r.poly).unwrap();
    let mut census: BTreeMap<usize, BTreeMap<String, usize>> = BTreeMap::new();
    for q in a.qubits() {
        assert!(!q.selector.constant);
        let mut phi = q.phi.turns().clone();
        if phi > rat(1, 1) {
            phi -= rat(2, 1);
        }
        *census
            .entry(q.selector.support.len())
            .or_default()
            .entry(format_rational(&phi))
            .or_default() += 1;
    }
    let want: BTreeMap<usize, BTreeMap<String, usize>> = [
        (1, "1/8", 6),
        (2, "-1/16", 15),
        (4, "1/16", 15),
        (5, "-1/8", 6),
        (6, "3/16", 1),
    ]
    .into_iter()
    .map(|(size, c, n)| (size, [(c.to_string(), n)].into_iter().collect()))
    .collect();
    assert_eq!(census, want);
    let anf = f.to_anf(1 << 20).unwrap();
    let ef = construct_ef(&anf).unwrap();
    assert_eq!(ef.support, 63);
    assert_eq!(ef.sparsity, 62);
}

#[test]
fn csf_power2_sparsities() {
    // C^2: singletons plus the full parity; C^4: sizes 1, 2, n-1, n.
    assert_eq!(csf_power2_poly(2, 6).unwrap().sparsity(), 7);
    assert_eq!(csf_power2_poly(4, 6).unwrap().sparsity(), 28);
    assert_eq!(csf_power2_poly(4, 10).unwrap().sparsity(), 66);
    assert_eq!(factor_sparsity(2, 10), BigInt::from(66));
}

#[test]
fn csf_decomposition_bits() {
    assert_eq!(decompose_csf(5), vec![0, 2]);
    assert_eq!(decompose_csf(12), vec![2, 3]);
    assert_eq!(decompose_csf(8), vec![3]);
}

#[test]
fn fr_sparsity_of_and() {
    for n in 2..=5 {
        let f = and_n(n).unwrap().to_boolean_function().unwrap();
        assert_eq!(construct_fr(&f).unwrap().sparsity, (1 << n) - 1);
    }
}

#[test]
fn ghz_cost_plug_ins() {
    assert_eq!(ghz_const_depth_cost(8).unwrap().depth, 8.0);
    assert_eq!(ghz_const_depth_cost(4).unwrap().depth, 6.0);
    assert_eq!(ghz_const_depth_cost(16).unwrap().gates, 72.0);
    assert!(ghz_const_depth_cost(5).is_err());
    let g = ghz_log_cost(8);
    assert_eq!((g.depth, g.width, g.gates), (4.0, 8.0, 8.0));
}

/// C^5 on six bits: k = 43, selector sizes sum to 132 with 89 XOR gates.
#[test]
fn approximate_totals_for_c5() {
    let f = csf(5, 6).unwrap();
    let a = assignment_from_poly(&construct_csf(&f).unwrap().poly).unwrap();
    assert_eq!(a.k(), 43);
    let t = total_cost(&a, &CostConfig::default(), GhzVariant::Log).unwrap();
    assert!(!t.exact);
    assert_eq!(t.level, 5);
    assert!((t.total.depth - 151.55373895417245).abs() < 1e-9);
    assert_eq!(t.total.width, 132.0);
    assert!((t.total.gates - 6225.152006125034).abs() < 1e-9);
    assert!((t.measurement.depth - 140.70120944476824).abs() < 1e-9);
    assert!((t.measurement.gates - 6050.152006125034).abs() < 1e-9);
}

#[test]
fn exact_totals_for_c2() {
    for n in [8usize, 16] {
        let p = csf_power2_poly(2, n).unwrap();
        let a = assignment_from_poly(&p).unwrap();
        let t = total_cost(&a, &CostConfig::default(), GhzVariant::Log).unwrap();
        assert!(t.exact);
        assert_eq!(t.level, 2);
        assert_eq!(t.total.gates, (5 * n + 2) as f64);
        assert_eq!(t.total.width, (2 * n) as f64);
    }
}
