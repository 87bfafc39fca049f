use resonant::dynamics::{integrate, rhs_resonant, ResonantRhs};
use resonant::experiments::random_state;
use resonant::io::{resolve_state, state_from_json, state_to_json};
use resonant::multilinear::ResonantConfig;
use resonant::propagators::{harmonic_flow, mehler_eval};
use resonant::{Grid, State};

fn final_state(k: usize, u0: &State, dt: f64) -> State {
    let rhs = ResonantRhs::<f64>::new(ResonantConfig::new(k, u0.n_modes()).unwrap()).unwrap();
    integrate(&rhs, u0, 1.0, dt, usize::MAX).unwrap().final_state().clone()
}

#[test]
fn rk4_error_shrinks_sixteenfold_when_dt_halves() {
    for k in [1, 2] {
        let u0 = random_state(9, 4).padded(8);
        let reference = final_state(k, &u0, 0.1 / 16.0);
        let coarse = final_state(k, &u0, 0.1).l2_distance(&reference);
        let fine = final_state(k, &u0, 0.05).l2_distance(&reference);
        let ratio = coarse / fine;
        assert!((12.0..=20.0).contains(&ratio), "k={k}: ratio {ratio}");
    }
}

#[test]
fn resonant_rhs_preserves_mass_infinitesimally() {
    for k in [1, 2] {
        let u = random_state(4, 10);
        let du = rhs_resonant(&ResonantConfig::new(k, 10).unwrap(), &u).unwrap();
        // d/dt ‖u‖² = 2 Re⟨u', u⟩
        assert!(du.inner(&u).re.abs() < 1e-14);
    }
}

#[test]
fn mehler_propagator_is_unitary() {
    let f = random_state(17, 10);
    let grid = Grid::for_states(10).unwrap();
    for t in [0.3, 1.1, -0.7, 2.5] {
        let values = mehler_eval(&f, t, &grid).unwrap();
        let density: Vec<_> = values.iter().map(|v| num_complex::Complex::new(v.norm_sqr(), 0.0)).collect();
        let mass = grid.integrate(&density).re;
        assert!((mass - f.mass()).abs() < 1e-9, "t={t}: {mass}");
        let spectral = harmonic_flow(&f, t);
        let back = grid.analyze(&values).unwrap().truncated(10);
        assert!(back.max_abs_diff(&spectral) < 1e-9, "t={t}");
    }
}

#[test]
fn state_json_round_trip_and_tokens() {
    let f = random_state(3, 7);
    let back = state_from_json(&state_to_json(&f)).unwrap();
    assert_eq!(back, f);
    assert_eq!(resolve_state("phi2", 4).unwrap(), State::basis(2, 4));
    assert_eq!(resolve_state("zero", 5).unwrap().mass(), 0.0);
    assert_eq!(resolve_state("random:3", 7).unwrap(), f);
    assert!(state_from_json(r#"{"n_modes": 2, "coeffs": [[1, 0]]}"#).is_err());
    assert!(resolve_state("no/such/file.json", 3).is_err());
}
