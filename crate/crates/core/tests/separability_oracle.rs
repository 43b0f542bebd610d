mod common;

use common::partial_trace_product_deviation;
use fano_geom::separability::{classify, is_product, DEFAULT_TOLERANCE};
use fano_geom::state_factory::{named_state, product_state, random_density, rng_for, NamedState};
use fano_geom::{decompose, set_partitions, BlochVector, DensityMatrix};
use rand::Rng;

fn random_bloch(levels: usize, seed: u64, index: u64) -> BlochVector {
    // Qubit ball for N = 2; for larger N a short vector keeps the state positive.
    let mut rng = rng_for(seed, index);
    let k = levels * levels - 1;
    let radius = if levels == 2 { 1.0 } else { 1.0 / (levels as f64 - 1.0) };
    loop {
        let v: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n <= 1.0 {
            return BlochVector::new(levels, v.iter().map(|x| x * radius).collect()).unwrap();
        }
    }
}

fn fixtures() -> Vec<(String, DensityMatrix)> {
    let mut out = vec![
        ("bell".to_string(), named_state(&NamedState::BellPhiPlus).unwrap()),
        ("ghz3".into(), named_state(&NamedState::Ghz { qudits: 3 }).unwrap()),
        ("w3".into(), named_state(&NamedState::W { qudits: 3 }).unwrap()),
        ("werner".into(), named_state(&NamedState::Werner { p: 0.5 }).unwrap()),
    ];
    let bell = named_state(&NamedState::BellPhiPlus).unwrap();
    let q = random_bloch(2, 9, 0).to_density().unwrap();
    out.push(("bell_x_qubit".into(), bell.tensor(&q).unwrap()));
    out.push(("qubit_x_bell".into(), q.tensor(&bell).unwrap()));
    for i in 0..5 {
        let bl: Vec<BlochVector> = (0..3).map(|k| random_bloch(2, 100 + i, k)).collect();
        out.push((format!("product3_{i}"), product_state(&bl, 2).unwrap()));
        let bl: Vec<BlochVector> = (0..2).map(|k| random_bloch(3, 200 + i, k)).collect();
        out.push((format!("qutrit_product_{i}"), product_state(&bl, 3).unwrap()));
        out.push((format!("ginibre3_{i}"), random_density(2, 3, 300 + i).unwrap()));
    }
    out
}

#[test]
fn fano_condition_agrees_with_partial_trace_test() {
    for (name, rho) in fixtures() {
        let d = decompose(&rho).unwrap();
        for p in set_partitions(rho.qudits()) {
            let fano = is_product(&d, &p, DEFAULT_TOLERANCE).unwrap().is_product;
            let oracle = partial_trace_product_deviation(&rho, &p) < DEFAULT_TOLERANCE;
            assert_eq!(fano, oracle, "{name} across {p}");
        }
    }
}

#[test]
fn entangled_fixtures_violate_strongly() {
    for spec in [NamedState::BellPhiPlus, NamedState::Ghz { qudits: 3 }, NamedState::W { qudits: 3 }] {
        let d = decompose(&named_state(&spec).unwrap()).unwrap();
        let finest = set_partitions(spec.qudits()).pop().unwrap();
        let r = is_product(&d, &finest, DEFAULT_TOLERANCE).unwrap();
        assert!(r.max_violation >= 0.5, "{spec:?}: {}", r.max_violation);
    }
}

#[test]
fn qubit_pair_position_is_detected() {
    let bell = named_state(&NamedState::BellPhiPlus).unwrap();
    let q = random_bloch(2, 3, 0).to_density().unwrap();
    let d = decompose(&q.tensor(&bell).unwrap()).unwrap();
    let passing: Vec<String> = classify(&d, DEFAULT_TOLERANCE)
        .unwrap()
        .into_iter()
        .filter(|r| r.is_product)
        .map(|r| r.partition.to_string())
        .collect();
    assert_eq!(passing, vec!["1,2,3", "1|2,3"]);
}

#[test]
fn four_qubit_classification_count() {
    let bl: Vec<BlochVector> = (0..4).map(|k| random_bloch(2, 77, k)).collect();
    let d = decompose(&product_state(&bl, 2).unwrap()).unwrap();
    let reports = classify(&d, DEFAULT_TOLERANCE).unwrap();
    assert_eq!(reports.len(), 15);
    assert!(reports.iter().all(|r| r.is_product));
}
