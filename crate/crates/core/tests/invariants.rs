use num_complex::Complex64;
use proptest::prelude::*;

use zetaquant::opmodel::{DiagonalOperator, SetKind, TailModel, ZeroMultiset};
use zetaquant::recon::{gamma_operator, gamma_reconstruct_with, hadamard_reconstruct, rational_reconstruct, HadamardData};
use zetaquant::regdet::{det_fredholm, det_p, RegDetRequest};
use zetaquant::report::{Report, Row};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b))
}

fn nonzero_points(max: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(point(4.0).prop_filter("nonzero", |z| z.norm() > 1e-3), 1..max)
}

proptest! {
    #[test]
    fn determinant_is_one_at_origin(zs in nonzero_points(12), p in 1u32..5) {
        let op = DiagonalOperator::from_zeros(&ZeroMultiset::zeros(zs).unwrap());
        let d = det_p(&op, &RegDetRequest::new(p, c(0.0, 0.0), op.len())).unwrap();
        prop_assert_eq!(d.value, c(1.0, 0.0));
    }

    #[test]
    fn order_one_is_fredholm(zs in nonzero_points(12), z in point(2.0)) {
        let op = DiagonalOperator::from_zeros(&ZeroMultiset::zeros(zs).unwrap());
        let a = det_p(&op, &RegDetRequest::new(1, z, op.len())).unwrap();
        let b = det_fredholm(&op, z, op.len()).unwrap();
        prop_assert_eq!(a.value, b.value);
    }

    #[test]
    fn every_stored_zero_annihilates(zs in nonzero_points(10), p in 1u32..4, pick in 0usize..10) {
        let zeros = ZeroMultiset::zeros(zs.clone()).unwrap();
        let op = DiagonalOperator::from_zeros(&zeros);
        let a = zs[pick % zs.len()];
        let d = det_p(&op, &RegDetRequest::new(p, a, op.len())).unwrap();
        prop_assert_eq!(d.value, c(0.0, 0.0));
        prop_assert!(d.annihilator.is_some());
    }

    #[test]
    fn genus_zero_hadamard_is_rational(zs in nonzero_points(8), m in 0u32..3, g0 in point(1.0), z in point(3.0)) {
        let zeros = ZeroMultiset::zeros(zs).unwrap();
        let data = HadamardData::new(zeros.clone(), m, vec![g0], 0.0, TailModel::Finite).unwrap();
        let h = hadamard_reconstruct(&data, z, zeros.expanded_len()).unwrap().value;
        let r = rational_reconstruct(&zeros, &ZeroMultiset::empty(SetKind::Poles), m as i32, g0.exp(), z).unwrap();
        prop_assert_eq!(h, r);
    }

    #[test]
    fn report_json_round_trips(vals in prop::collection::vec((any::<f64>(), any::<f64>(), 0.0f64..1.0), 0..8)) {
        let mut rep = Report::new("prop");
        rep.input("count", vals.len());
        for (i, (a, b, t)) in vals.iter().enumerate() {
            rep.push(Row::check(format!("row {i}"), c(*a, *b), Some(c(*b, *a).into()), (a - b).abs(), *t));
        }
        let text = rep.to_json();
        prop_assert_eq!(Report::from_json(&text).unwrap().to_json(), text);
    }
}

#[test]
fn gamma_at_integers_is_factorial() {
    let op = gamma_operator(100_000).unwrap();
    let mut fact = 1.0;
    for n in 1..=6u32 {
        let rec = gamma_reconstruct_with(&op, c(n as f64, 0.0)).unwrap();
        let err = (rec.value - fact).norm() / fact;
        assert!(err <= rec.tail_estimate, "Gamma({n}): {err} vs tail {}", rec.tail_estimate);
        fact *= n as f64;
    }
}

#[test]
fn gamma_functional_equation_within_tail() {
    let op = gamma_operator(100_000).unwrap();
    for z in [c(0.5, 0.0), c(1.5, 0.0), c(2.0, 1.0)] {
        let a = gamma_reconstruct_with(&op, z).unwrap();
        let b = gamma_reconstruct_with(&op, z + 1.0).unwrap();
        let err = (b.value / a.value - z).norm() / z.norm();
        assert!(err <= a.tail_estimate + b.tail_estimate, "z = {z}: {err}");
    }
}
