use approx::assert_abs_diff_eq;
use twisted_trap::dynamics::*;
use twisted_trap::model::*;
use twisted_trap::spectral::{cm_spectrum, internal_spectrum};
use twisted_trap::Error;

fn setup(omega0: f64, half_width: f64, n: usize, scheme: KineticScheme) -> Hamiltonian2D {
    let p = TrapParams::new(omega0, 1.0).unwrap();
    let g = Grid2D::new(build_grid(half_width, n).unwrap());
    build_hamiltonian_2d(&p, &g, scheme).unwrap()
}

fn ground(h: &Hamiltonian2D) -> (WaveFunction2D, f64) {
    ground_state_2d(h, 1e-10).unwrap()
}

fn fidelity(a: &WaveFunction2D, b: &WaveFunction2D) -> f64 {
    a.inner(b).norm_sqr() / (a.norm_sqr() * b.norm_sqr())
}

#[test]
fn ground_energy_separates() {
    let h = setup(0.5, 12.0, 121, KineticScheme::Spectral);
    let (psi, e2d) = ground(&h);
    assert!(psi.symmetry_residual() < 1e-12);
    assert_abs_diff_eq!(psi.norm_sqr(), 1.0, epsilon = 1e-12);
    let mut previous = f64::INFINITY;
    for n in [121, 241, 481] {
        let axis = build_grid(12.0, n).unwrap();
        let e1d = cm_spectrum(&h.params, &axis, 1).unwrap().eigenvalues[0]
            + internal_spectrum(&h.params, &axis, 1).unwrap().eigenvalues[0];
        let rel = (e2d - e1d).abs() / e2d;
        assert!(rel < 1e-3, "n = {n}: {rel}");
        assert!(rel < previous, "no improvement at n = {n}");
        previous = rel;
    }
}

#[test]
fn non_interacting_ground_energy_is_omega0() {
    let p = TrapParams::new(0.5, 1.0).unwrap().non_interacting();
    let g = Grid2D::new(build_grid(12.0, 121).unwrap());
    let h = build_hamiltonian_2d(&p, &g, KineticScheme::Spectral).unwrap();
    let (_, e) = ground(&h);
    assert_abs_diff_eq!(e, 0.5, epsilon = 1e-8);

    // finite differences converge at O(h²)
    let mut errors = Vec::new();
    for n in [61, 121] {
        let g = Grid2D::new(build_grid(12.0, n).unwrap());
        let h = build_hamiltonian_2d(&p, &g, KineticScheme::FiniteDifference).unwrap();
        let (_, e) = ground(&h);
        errors.push((e - 0.5).abs());
    }
    assert!(errors[0] < 5e-3);
    let ratio = errors[0] / errors[1];
    assert!((ratio - 4.0).abs() < 0.5, "error ratio {ratio}");
}

#[test]
fn kick_energy_shifts_are_analytic() {
    let h = setup(0.5, 12.0, 121, KineticScheme::Spectral);
    let (psi, e0) = ground(&h);
    let x2 = psi.expectation(&h.grid.sample(|a, b| a * a + b * b));
    let x4 = psi.expectation(&h.grid.sample(|a, b| a.powi(4) + b.powi(4)));
    let k = 1e-2;
    // p → p − κ d/dx(x^{l+1}); the cross term vanishes for a real state
    let expected = [k * k, 2.0 * k * k * x2, 4.5 * k * k * x4];
    for l in 0..3u8 {
        let kicked = apply_kick(&psi, &ProbeSpec::new(l, k).unwrap());
        assert_abs_diff_eq!(kicked.norm_sqr(), psi.norm_sqr(), epsilon = 1e-14);
        assert!(kicked.symmetry_residual() < 1e-14);
        let de = h.energy(&kicked).unwrap() - e0;
        assert!(
            (de - expected[l as usize]).abs() < 1e-6 * expected[l as usize],
            "l = {l}: {de} vs {}",
            expected[l as usize]
        );
    }
}

#[test]
fn kohn_dipole_trajectory() {
    // after a homogeneous kick only the centre of mass moves, and for a
    // quadratic CM Hamiltonian the Strang step maps ⟨X⟩, ⟨P⟩ exactly like
    // velocity Verlet: D_n = (2E₀ dt / sin θ) sin nθ, cos θ = 1 − (ω₀dt)²/2,
    // whatever the interaction
    for interaction in [true, false] {
        let p = TrapParams::new(0.5, 1.0)
            .unwrap()
            .with_interaction(interaction);
        let g = Grid2D::new(build_grid(12.0, 121).unwrap());
        let h = build_hamiltonian_2d(&p, &g, KineticScheme::Spectral).unwrap();
        let (psi, _) = ground(&h);
        let e0 = 1e-2;
        let kicked = apply_kick(&psi, &ProbeSpec::new(0, e0).unwrap());
        let cfg = PropagationConfig {
            dt: 0.01,
            total_time: 30.0,
            method: Method::SplitOperator,
            record_stride: 10,
        };
        let s = propagate(&kicked, &h, &cfg).unwrap();
        let theta = (1.0 - 0.5 * (0.5 * cfg.dt).powi(2)).acos();
        let amp = 2.0 * e0 * cfg.dt / theta.sin();
        for (t, d) in s.times.iter().zip(&s.dipole) {
            let n = (t / cfg.dt).round();
            assert!((d - amp * (n * theta).sin()).abs() < 1e-6 * amp, "t = {t}");
        }
        // the continuum trajectory differs only by the O(dt²) phase error
        let d_end = *s.dipole.last().unwrap();
        let t_end = *s.times.last().unwrap();
        assert!((d_end - 2.0 * e0 / 0.5 * (0.5 * t_end).sin()).abs() < 1e-4 * amp);
    }
}

#[test]
fn norm_energy_and_symmetry_are_conserved() {
    let h = setup(0.5, 12.0, 121, KineticScheme::Spectral);
    let (psi, _) = ground(&h);
    let kicked = apply_kick(&psi, &ProbeSpec::new(2, 1e-3).unwrap());
    let cfg = PropagationConfig {
        dt: 0.01,
        total_time: 40.0,
        method: Method::SplitOperator,
        record_stride: 20,
    };
    let (s, last) = propagate_with_state(&kicked, &h, &cfg).unwrap();
    assert!(s.norm_drift() < 1e-8);
    assert!(s.energy_drift() < 1e-6);
    assert!(last.symmetry_residual() < 1e-8);
    assert_eq!(s.times.len(), 201);
    assert_abs_diff_eq!(*s.times.last().unwrap(), 40.0, epsilon = 1e-9);
}

#[test]
fn time_reversal_returns_initial_state() {
    for (scheme, method) in [
        (KineticScheme::Spectral, Method::SplitOperator),
        (KineticScheme::FiniteDifference, Method::CrankNicolson),
    ] {
        let h = setup(0.5, 12.0, 121, scheme);
        let (psi, _) = ground(&h);
        let kicked = apply_kick(&psi, &ProbeSpec::new(1, 1e-2).unwrap());
        let forward = evolve(&kicked, &h, method, 0.01, 2000).unwrap();
        assert!(fidelity(&forward, &kicked) < 1.0 - 1e-6);
        let back = evolve(&forward, &h, method, -0.01, 2000).unwrap();
        let f = fidelity(&back, &kicked);
        assert!(f > 1.0 - 1e-6, "{method}: {f}");
    }
}

#[test]
fn crank_nicolson_agrees_with_split_operator() {
    let probe = ProbeSpec::new(1, 1e-2).unwrap();
    let cfg = |method| PropagationConfig {
        dt: 0.005,
        total_time: 20.0,
        method,
        record_stride: 20,
    };
    let run = |scheme, method| {
        let h = setup(0.5, 12.0, 241, scheme);
        let (psi, _) = ground(&h);
        propagate(&apply_kick(&psi, &probe), &h, &cfg(method)).unwrap()
    };
    let a = run(KineticScheme::Spectral, Method::SplitOperator);
    let b = run(KineticScheme::FiniteDifference, Method::CrankNicolson);
    assert!(b.norm_drift() < 1e-8);
    let q0a = a.quadrupole[0];
    let q0b = b.quadrupole[0];
    let amp = a
        .quadrupole
        .iter()
        .map(|q| (q - q0a).abs())
        .fold(0.0, f64::max);
    let worst = a
        .quadrupole
        .iter()
        .zip(&b.quadrupole)
        .map(|(x, y)| ((x - q0a) - (y - q0b)).abs())
        .fold(0.0, f64::max);
    assert!(worst < 0.02 * amp, "{worst} vs amplitude {amp}");
}

#[test]
fn stationary_state_observables_are_constant() {
    let h = setup(0.5, 12.0, 121, KineticScheme::Spectral);
    let (psi, _) = ground(&h);
    let dt = 0.01;
    let stationary = stationary_projection(&psi, &h, Method::SplitOperator, dt, 10.0, 5.0).unwrap();
    assert!(fidelity(&stationary, &psi) > 1.0 - 1e-6);
    let cfg = PropagationConfig {
        dt,
        total_time: 50.0,
        method: Method::SplitOperator,
        record_stride: 10,
    };
    let s = propagate(&stationary, &h, &cfg).unwrap();
    for obs in [&s.dipole, &s.quadrupole] {
        let spread = obs.iter().fold(f64::MIN, |m, v| m.max(*v))
            - obs.iter().fold(f64::MAX, |m, v| m.min(*v));
        assert!(spread < 1e-8, "spread {spread}");
    }
}

#[test]
fn series_csv_round_trip() {
    let h = setup(0.5, 8.0, 81, KineticScheme::Spectral);
    let (psi, _) = ground(&h);
    let cfg = PropagationConfig {
        dt: 0.05,
        total_time: 5.0,
        method: Method::SplitOperator,
        record_stride: 1,
    };
    let s = propagate(
        &apply_kick(&psi, &ProbeSpec::new(1, 1e-2).unwrap()),
        &h,
        &cfg,
    )
    .unwrap();
    let csv = s.to_csv(&[("omega0".into(), "0.5".into())]);
    assert!(csv.starts_with("# omega0: 0.5\nt,D,Q,norm,energy\n"));
    assert_eq!(ObservableSeries::from_csv(&csv).unwrap(), s);
}

#[test]
fn density_at_the_wall_aborts() {
    let h = setup(0.5, 3.0, 31, KineticScheme::Spectral);
    let (psi, _) = ground(&h);
    let cfg = PropagationConfig {
        dt: 0.01,
        total_time: 2.0,
        method: Method::SplitOperator,
        record_stride: 10,
    };
    let err = propagate(&psi, &h, &cfg).unwrap_err();
    assert!(matches!(err, Error::Invariant(_)), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn unconverged_ground_state_reports() {
    let h = setup(0.5, 8.0, 81, KineticScheme::Spectral);
    let opts = GroundStateOptions {
        taus: vec![0.01],
        tol: 1e-12,
        check_every: 10,
        max_steps: 20,
    };
    let err = ground_state_2d_with(&h, &opts).unwrap_err();
    assert!(matches!(err, Error::Convergence { .. }));
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn method_requires_matching_scheme() {
    let h = setup(0.5, 8.0, 81, KineticScheme::FiniteDifference);
    assert!(Propagator::new(&h, Method::SplitOperator, 0.01).is_err());
    let cfg = PropagationConfig {
        dt: 0.1,
        total_time: 5.0,
        method: Method::CrankNicolson,
        record_stride: 1,
    };
    assert!(cfg.validate().is_err());
}
