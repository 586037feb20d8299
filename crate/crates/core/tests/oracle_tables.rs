use nfduality::oracles::*;
use nfduality::specfun::{bessel_j_zeros, BesselTable};
use proptest::prelude::*;

// m = 0 transmission eigenvalues of the unit disk with n = 4, from an
// independent 30-digit root solve of d_0.
const ITE_N4_M0: [f64; 3] = [11.452774711970342, 42.62538892596124, 93.53318344659118];

fn lambdas(v: &[OracleEigenvalue]) -> Vec<f64> {
    v.iter().map(|e| e.lambda).collect()
}

#[test]
fn dirichlet_table() {
    let d = dirichlet_disk_eigs(1.0, [2.0, 16.0]).unwrap();
    assert_eq!(d.len(), 2);
    assert!((d[0].lambda - 5.783186).abs() <= 1e-5 && d[0].m == 0 && d[0].multiplicity == 1);
    assert!((d[1].lambda - 14.681971).abs() <= 1e-5 && d[1].m == 1 && d[1].multiplicity == 2);
    assert!(dirichlet_disk_eigs(1.0, [6.5, 13.5]).unwrap().is_empty());
}

#[test]
fn neumann_table() {
    let n = neumann_disk_eigs(1.0, [2.0, 12.0]).unwrap();
    assert_eq!(lambdas(&n).len(), 2);
    assert!((n[0].lambda - 3.389958).abs() <= 1e-5 && n[0].m == 1);
    assert!((n[1].lambda - 9.328362).abs() <= 1e-5 && n[1].m == 2);
    let z = neumann_disk_eigs(1.0, [0.0, 3.0]).unwrap();
    assert!(z.is_empty(), "{:?}", lambdas(&z));
    let j = neumann_disk_eigs(1.0, [13.0, 16.0]).unwrap();
    assert_eq!(j.len(), 1);
    assert!((j[0].lambda - 14.681971).abs() <= 1e-5 && j[0].m == 0);
}

#[test]
fn radius_scaling_is_exact_up_to_rounding() {
    let one = dirichlet_disk_eigs(1.0, [1.0, 60.0]).unwrap();
    let two = dirichlet_disk_eigs(2.0, [0.25, 15.0]).unwrap();
    assert_eq!(one.len(), two.len());
    for (a, b) in one.iter().zip(&two) {
        assert!((a.lambda / 4.0 - b.lambda).abs() <= 1e-13 * b.lambda);
    }
    let one = ite_disk_eigs(1.0, 4.0, [5.0, 45.0]).unwrap();
    let half = ite_disk_eigs(0.5, 4.0, [20.0, 180.0]).unwrap();
    assert_eq!(one.len(), half.len());
    for (a, b) in one.iter().zip(&half) {
        assert_eq!(a.m, b.m);
        assert!((a.lambda * 4.0 - b.lambda).abs() <= 1e-10 * b.lambda);
    }
}

#[test]
fn ite_m0_roots_match_frozen_values() {
    let all = ite_disk_eigs(1.0, 4.0, [1.0, 100.0]).unwrap();
    let m0: Vec<f64> = all.iter().filter(|e| e.m == 0 && !e.uncertified).map(|e| e.lambda).collect();
    assert_eq!(m0.len(), 3, "{m0:?}");
    for (got, want) in m0.iter().zip(ITE_N4_M0) {
        assert!((got - want).abs() <= 1e-9 * want, "{got} vs {want}");
    }
    assert!(all.iter().all(|e| e.possibly_invisible == (e.multiplicity == 2)));
}

#[test]
fn ite_roots_are_sign_changes() {
    for n in [4.0, 0.25, 2.5] {
        for e in ite_disk_eigs(1.0, n, [1.0, 60.0]).unwrap().iter().filter(|e| !e.uncertified) {
            let k = e.lambda.sqrt();
            let (a, b) = (ite_determinant(e.m, n, k - 1e-8).unwrap(), ite_determinant(e.m, n, k + 1e-8).unwrap());
            assert!(a * b < 0.0, "n={n} m={} k={k}: {a} {b}", e.m);
            assert!(ite_determinant(e.m, n, k).unwrap().abs() <= 1e-10);
        }
    }
}

#[test]
fn ite_m0_roots_survive_a_fine_scan() {
    let roots: Vec<f64> = ite_disk_eigs(1.0, 4.0, [1.0, 16.0]).unwrap().iter().filter(|e| e.m == 0).map(|e| e.lambda.sqrt()).collect();
    assert!(!roots.is_empty());
    let step = 1e-4;
    let mut scanned = Vec::new();
    let mut prev = ite_determinant(0, 4.0, 1.0).unwrap();
    for i in 1..=30_000 {
        let k = 1.0 + step * i as f64;
        let d = ite_determinant(0, 4.0, k).unwrap();
        if prev * d < 0.0 {
            scanned.push(k - step / 2.0);
        }
        prev = d;
    }
    assert_eq!(scanned.len(), roots.len(), "{scanned:?} vs {roots:?}");
    for (s, r) in scanned.iter().zip(&roots) {
        assert!((s - r).abs() <= step, "{s} vs {r}");
    }
}

#[test]
fn residuals_vanish() {
    for e in dirichlet_disk_eigs(1.3, [0.5, 80.0]).unwrap() {
        let t = BesselTable::j_only(e.m, e.lambda.sqrt() * 1.3).unwrap();
        assert!(t.j(e.m as i32).abs() <= 1e-10);
    }
    for e in neumann_disk_eigs(1.3, [0.5, 80.0]).unwrap() {
        let t = BesselTable::j_only(e.m, e.lambda.sqrt() * 1.3).unwrap();
        assert!(t.dj(e.m as i32).abs() <= 1e-10);
    }
}

// No zeros of J_m below x for m beyond the scanned orders.
#[test]
fn order_margin_is_enough() {
    for x_hi in [3.0f64, 10.0, 25.0] {
        let m_max = x_hi.ceil() as u32 + 8;
        for m in [m_max + 1, m_max + 2] {
            assert!(bessel_j_zeros(m, 0.0, x_hi).unwrap().is_empty());
        }
    }
}

#[test]
fn invalid_inputs() {
    assert!(ite_disk_eigs(1.0, 1.0, [1.0, 10.0]).is_err());
    assert!(ite_disk_eigs(1.0, -2.0, [1.0, 10.0]).is_err());
    assert!(dirichlet_disk_eigs(0.0, [1.0, 10.0]).is_err());
    assert!(neumann_disk_eigs(1.0, [5.0, 2.0]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn splitting_the_interval_preserves_the_list(split in 3.0f64..45.0) {
        let whole = dirichlet_disk_eigs(1.0, [2.0, 50.0]).unwrap();
        let mut parts = dirichlet_disk_eigs(1.0, [2.0, split]).unwrap();
        parts.extend(dirichlet_disk_eigs(1.0, [split, 50.0]).unwrap());
        parts.dedup_by(|a, b| a.lambda == b.lambda && a.m == b.m);
        prop_assert_eq!(lambdas(&whole), lambdas(&parts));

        let whole = ite_disk_eigs(1.0, 4.0, [2.0, 50.0]).unwrap();
        let mut parts = ite_disk_eigs(1.0, 4.0, [2.0, split]).unwrap();
        parts.extend(ite_disk_eigs(1.0, 4.0, [split, 50.0]).unwrap());
        parts.dedup_by(|a, b| a.lambda == b.lambda && a.m == b.m);
        prop_assert_eq!(lambdas(&whole), lambdas(&parts));
    }
}
