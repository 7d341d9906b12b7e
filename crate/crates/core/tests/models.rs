use std::f64::consts::PI;

use subharm::indicator::{indicator_closed, ratio_limits};
use subharm::potential::{
    ratio_probe, scaled_limit, u_canonical, u_poisson, Epsilon, Extrapolation, GeometricGrid, MassModel,
    SlowFactor, SweepSpec,
};
use subharm::quad::QuadratureSpec;
use subharm::ProblemParams;

fn p3() -> ProblemParams {
    ProblemParams::new(3, 0.5, 1.0).unwrap()
}

fn spec(start: f64, end: f64, points: usize, extrapolation: Extrapolation) -> SweepSpec {
    let mut s = SweepSpec::new(GeometricGrid::new(start, end, points).unwrap());
    s.extrapolation = extrapolation;
    s
}

#[test]
fn perturbed_power_law_converges_slowly() {
    let quad = QuadratureSpec::default();
    let h = indicator_closed(&p3(), 0.0).unwrap();
    let m = MassModel::perturbed(1.0, 0.5, Epsilon::InvLog).unwrap();
    let aitken = scaled_limit(&m, &p3(), 0.0, &spec(1e2, 1e6, 5, Extrapolation::Aitken), &quad).unwrap();
    // not yet converged at 1% on a decade grid, but moving monotonically down to H
    assert!(!aitken.convergence_flag());
    assert!(aitken.samples.windows(2).all(|w| w[1].scaled < w[0].scaled && w[1].scaled > h));
    let fit = scaled_limit(&m, &p3(), 0.0, &spec(1e2, 1e6, 5, Extrapolation::InverseLog), &quad).unwrap();
    assert!((fit.extrapolated_limit() / h - 1.0).abs() < 1e-2);
    // u/n carries no ε-bias and settles fast
    assert!((aitken.per_n.unwrap().extrapolated / h - 1.0).abs() < 1e-3);
}

#[test]
fn slowly_varying_ratio_reaches_the_corollary_constant() {
    let quad = QuadratureSpec::default();
    let m = MassModel::slowly_varying(0.5, SlowFactor::Log).unwrap();
    let expected = ratio_limits(&p3(), 0.0).unwrap().per_big_n;
    assert!((expected - 0.75 * PI).abs() < 1e-12);
    let s = ratio_probe(&m, &p3(), 0.0, &spec(1e6, 1e40, 18, Extrapolation::InverseLog), &quad).unwrap();
    let col = s.per_big_n.unwrap();
    assert!(col.converged);
    assert!((col.extrapolated / expected - 1.0).abs() < 5e-3, "{}", col.extrapolated);
    // r^{-ρ}u itself grows like ln r
    assert!(s.samples.windows(2).all(|w| w[1].scaled > w[0].scaled));
}

#[test]
fn ratios_do_not_depend_on_delta() {
    let quad = QuadratureSpec::default();
    let sp = spec(1e2, 1e6, 9, Extrapolation::Aitken);
    let one = ratio_probe(&MassModel::power_law(1.0, 0.5).unwrap(), &p3(), 0.0, &sp, &quad).unwrap();
    let two = ratio_probe(&MassModel::power_law(2.0, 0.5).unwrap(), &p3(), 0.0, &sp, &quad).unwrap();
    for (a, b) in one.samples.iter().zip(&two.samples) {
        assert!((a.per_n.unwrap() - b.per_n.unwrap()).abs() < 1e-12 * a.per_n.unwrap());
        assert!((a.per_big_n.unwrap() - b.per_big_n.unwrap()).abs() < 1e-12 * a.per_big_n.unwrap());
    }
}

#[test]
fn zero_and_doubled_models() {
    let quad = QuadratureSpec::default();
    let zero = MassModel::power_law(0.0, 0.5).unwrap();
    assert_eq!(u_poisson(&zero, 3, 1e3, 0.0, &quad).unwrap().value, 0.0);
    let one = u_poisson(&MassModel::power_law(1.0, 0.5).unwrap(), 3, 1e3, 0.3, &quad).unwrap().value;
    let two = u_poisson(&MassModel::power_law(2.0, 0.5).unwrap(), 3, 1e3, 0.3, &quad).unwrap().value;
    assert!((two - 2.0 * one).abs() < 1e-12 * two.abs());
}

#[test]
fn model_order_must_match_params() {
    let quad = QuadratureSpec::default();
    let m = MassModel::power_law(1.0, 0.7).unwrap();
    assert!(u_canonical(&m, &p3(), 10.0, 0.0, &quad).is_err());
}
