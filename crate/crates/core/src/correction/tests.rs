use super::*;
use crate::compiler::{compile_net, OrderingChoice};
use crate::net::tests::load;
use crate::net::{apply_reduction, find_redexes, ProofStructure};

const TOL: f64 = 1e-9;

fn step(net: &ProofStructure, which: usize) -> (Reduction, CompiledNet, CompiledNet) {
    let red = apply_reduction(net, &find_redexes(net)[which]).unwrap();
    let a = compile_net(&red.before, &OrderingChoice::Linear).unwrap();
    let b = compile_net(&red.after, &OrderingChoice::Linear).unwrap();
    (red, a, b)
}

fn label_set(corr: &Correction, idx: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = idx.iter().map(|&i| corr.source_labels[i].clone()).collect();
    v.sort();
    v
}

#[test]
fn multiplicative_step_of_example() {
    let (red, a, b) = step(&load("ex52.net"), 0);
    let corr = reduction_correction(&red, &a, &b).unwrap();
    assert_eq!((corr.isometry.rows, corr.isometry.cols), (9, 5));
    assert_eq!(label_set(&corr, &corr.c), ["f7/0", "f7/1", "f8/0", "f8/1"]);
    let report = verify_correction(&corr, TOL);
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.expected_dimension, 32);
    let shift = hamiltonian_shift(&corr);
    assert_eq!(shift.shift, -4.0);
    assert!(shift.deviation < TOL);
    assert!(shift.unshifted_deviation > 1.0);
    // the generator on l1 -> l4 lands on the one on l1 -> l6_a
    let f2 = corr.source_labels.iter().position(|l| l == "f2/0").unwrap();
    let k = corr.d.iter().position(|&g| g == f2).unwrap();
    assert_eq!(corr.target_labels[corr.nu[k]], "f2/0");
    assert!(code_fidelity(&corr) >= 1.0 - TOL);
}

#[test]
fn axiom_steps() {
    for (name, which) in [("wire3.net", 0), ("wire3.net", 1), ("wire4.net", 0), ("wire4.net", 1), ("ex52.net", 0)] {
        let net = if name == "ex52.net" {
            apply_reduction(&load(name), &find_redexes(&load(name))[0]).unwrap().after
        } else {
            load(name)
        };
        let (red, a, b) = step(&net, which);
        assert!(matches!(red.redex, Redex::Axiom { .. }));
        let corr = reduction_correction(&red, &a, &b).unwrap();
        assert_eq!(corr.isometry.rows, corr.isometry.cols + 2);
        let report = verify_correction(&corr, TOL);
        assert!(report.passed(), "{name} {which}: {report:?}");
        let shift = hamiltonian_shift(&corr);
        assert_eq!(shift.shift, -2.0);
        assert!(shift.deviation < TOL);
        let dim_ratio = (1u64 << a.code.n) / (1u64 << b.code.n);
        assert_eq!(dim_ratio, 4);
    }
}

#[test]
fn compound_axiom_step() {
    let (red, a, b) = step(&load("chain3.net"), 0);
    let corr = reduction_correction(&red, &a, &b).unwrap();
    assert_eq!((corr.isometry.rows, corr.isometry.cols), (14, 10));
    assert_eq!(corr.c.len(), 4);
    assert!(verify_correction(&corr, TOL).passed());
    assert!(hamiltonian_shift(&corr).deviation < TOL);
}

#[test]
fn corrupted_nu_fails_intertwining() {
    let (red, a, b) = step(&load("ex52.net"), 0);
    let mut corr = reduction_correction(&red, &a, &b).unwrap();
    corr.nu.swap(0, 1);
    let report = verify_correction(&corr, TOL);
    assert!(report.nu_bijective);
    assert!(report.intertwine_deviation >= 1.0);
    assert!(!report.passed());
    corr.nu[0] = corr.nu[1];
    assert!(!verify_correction(&corr, TOL).nu_bijective);
}

#[test]
fn wrong_structures_are_rejected() {
    let (red, a, _) = step(&load("ex52.net"), 0);
    assert!(reduction_correction(&red, &a, &a).is_err());
}

#[test]
fn two_steps_compose() {
    let net = load("chain3.net");
    let (r1, a, b) = step(&net, 0);
    let (r2, b2, c) = step(&r1.after, 0);
    let t1 = reduction_correction(&r1, &a, &b).unwrap();
    let t2 = reduction_correction(&r2, &b2, &c).unwrap();
    let both = t1.compose(&t2).unwrap();
    assert_eq!((both.isometry.rows, both.isometry.cols), (14, 6));
    assert_eq!(both.c.len(), 8);
    assert_eq!(both.d.len(), 4);
    let report = verify_correction(&both, TOL);
    assert!(report.passed(), "{report:?}");
    assert!(hamiltonian_shift(&both).deviation < TOL);
    let comp = composite_report(&both, &t1);
    assert!(comp.spans_agree);
    assert!(comp.nested_image_deviation < TOL);
    assert!(comp.code_fidelity >= 1.0 - TOL);
    // composing in the wrong order is an interface error
    assert!(matches!(t2.compose(&t1), Err(CorrectionError::Interface(_))));
}

#[test]
fn identity_is_neutral() {
    let (red, a, b) = step(&load("ex52.net"), 0);
    let t = reduction_correction(&red, &a, &b).unwrap();
    let left = Correction::identity(&a).compose(&t).unwrap();
    let right = t.compose(&Correction::identity(&b)).unwrap();
    for x in [&left, &right] {
        assert_eq!(x.isometry, t.isometry);
        assert_eq!(x.c, t.c);
        assert_eq!(x.d, t.d);
        assert_eq!(x.nu, t.nu);
    }
    let id = verify_correction(&Correction::identity(&a), TOL);
    assert!(id.passed());
    assert_eq!(id.c_size, 0);
}

#[test]
fn dense_form_is_an_isometry() {
    let (red, a, b) = step(&load("wire3.net"), 0);
    let t = reduction_correction(&red, &a, &b).unwrap().isometry.to_dense(10).unwrap();
    let gram = t.adjoint() * &t;
    assert!(crate::linalg::max_abs_diff(&gram, &CMatrix::identity(2, 2)) < 1e-12);
}

#[test]
fn declaration_orderings_are_carried_over() {
    for (name, which) in [("ex52.net", 0), ("chain3.net", 1), ("wire4.net", 0)] {
        let net = load(name);
        let red = apply_reduction(&net, &find_redexes(&net)[which]).unwrap();
        let a = compile_net(&red.before, &OrderingChoice::Declaration).unwrap();
        let b = compile_net(&red.after, &OrderingChoice::Declaration).unwrap();
        let corr = reduction_correction(&red, &a, &b).unwrap();
        let report = verify_correction(&corr, TOL);
        assert!(report.passed(), "{name}: {report:?}");
        assert!(hamiltonian_shift(&corr).deviation < TOL);
        assert!(code_fidelity(&corr) >= 1.0 - TOL);
    }
}
