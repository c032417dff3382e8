use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use twisted_trap::model::*;
use twisted_trap::spectral::*;

/// Dense symmetric eigenvalues of the same 3-point operator.
fn dense_oracle(grid: &Grid1D, mass: f64, v: impl Fn(f64) -> f64, k: usize) -> Vec<f64> {
    let n = grid.n_points();
    let h = grid.spacing();
    let t = 1.0 / (2.0 * mass * h * h);
    let xs = grid.points();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * t + v(xs[i])
        } else if i.abs_diff(j) == 1 {
            -t
        } else {
            0.0
        }
    });
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.truncate(k);
    ev
}

fn params(omega0: f64) -> TrapParams {
    TrapParams::new(omega0, 1.0).unwrap()
}

#[test]
fn free_particle_stencil() {
    let grid = build_grid(2.0, 5).unwrap();
    let op = discretize_1d(&grid, 1.0, &[0.0; 5]).unwrap();
    assert!(op.diagonal.iter().all(|d| *d == 1.0));
    assert!(op.off_diagonal.iter().all(|d| *d == -0.5));
    assert!(discretize_1d(&grid, 1.0, &[0.0; 4]).is_err());
}

#[test]
fn internal_matches_dense_oracle_with_richardson() {
    let p = params(0.5);
    let mut ground = Vec::new();
    for n in [201, 401, 801] {
        let grid = build_grid(20.0, n).unwrap();
        let spec = internal_spectrum(&p, &grid, 8).unwrap();
        let oracle = dense_oracle(&grid, 1.0, |q| internal_potential(q, &p), 8);
        for (a, b) in spec.eigenvalues.iter().zip(&oracle) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-9);
        }
        assert!(spec.max_residual < RESIDUAL_TOL);
        ground.push(spec.eigenvalues[0]);
    }
    // h, h/2, h/4: successive differences shrink by 4 for a second-order scheme
    let ratio = (ground[1] - ground[0]) / (ground[2] - ground[1]);
    assert!((ratio - 4.0).abs() < 0.05, "Richardson ratio {ratio}");
    let extrapolated = (4.0 * ground[2] - ground[1]) / 3.0;
    assert!((extrapolated - ground[2]).abs() < 1e-4);
    assert_abs_diff_eq!(extrapolated, 0.9095, epsilon = 5e-4);
}

#[test]
fn refinement_approaches_from_below() {
    // 3-point kinetic energy underestimates, so eigenvalues rise with refinement
    let p = params(0.2);
    let coarse = internal_spectrum(&p, &build_grid(25.0, 251).unwrap(), 8).unwrap();
    let fine = internal_spectrum(&p, &build_grid(25.0, 501).unwrap(), 8).unwrap();
    for (c, f) in coarse.eigenvalues.iter().zip(&fine.eigenvalues) {
        assert!(f > c && f - c < 5e-3, "{c} -> {f}");
    }
}

/// Harmonic level of mass `m` including the leading 3-point stencil shift
/// −(h²/24m)⟨p⁴⟩ from first-order perturbation theory.
fn stencil_oscillator(k: usize, omega: f64, mass: f64, h: f64) -> (f64, f64) {
    let k = k as f64;
    let shift = -h * h / 32.0 * mass * omega * omega * (2.0 * k * k + 2.0 * k + 1.0);
    (omega * (k + 0.5) + shift, shift)
}

#[test]
fn cm_is_the_analytic_oscillator() {
    let p = params(0.5);
    for n in [201, 401] {
        let grid = build_grid(20.0, n).unwrap();
        let spec = cm_spectrum(&p, &grid, 8).unwrap();
        for (k, e) in spec.eigenvalues.iter().enumerate() {
            let (exact, shift) = stencil_oscillator(k, 0.5, 2.0, grid.spacing());
            assert!((e - exact).abs() < 0.1 * shift.abs(), "{k}: {e} vs {exact}");
        }
    }
    let a = cm_spectrum(&p, &build_grid(20.0, 401).unwrap(), 3).unwrap();
    let b = cm_spectrum(&p.non_interacting(), &build_grid(20.0, 401).unwrap(), 3).unwrap();
    assert_eq!(a.eigenvalues, b.eigenvalues);
}

#[test]
fn non_interacting_internal_is_harmonic() {
    let p = params(0.5).non_interacting();
    let grid = build_grid(20.0, 401).unwrap();
    let spec = internal_spectrum(&p, &grid, 8).unwrap();
    for (k, e) in spec.eigenvalues.iter().enumerate() {
        let (exact, shift) = stencil_oscillator(k, 0.5, 1.0, grid.spacing());
        assert!((e - exact).abs() < 0.1 * shift.abs(), "{k}: {e} vs {exact}");
    }
    let level = |k| stencil_oscillator(k, 0.5, 1.0, grid.spacing()).0;
    let t = transition_table(&spec).unwrap();
    assert_abs_diff_eq!(t.omega(0, 2).unwrap(), level(2) - level(0), epsilon = 1e-4);
    for (j, gap) in degeneracy_diagnostic(&spec).into_iter().enumerate() {
        assert_abs_diff_eq!(gap, level(2 * j + 1) - level(2 * j), epsilon = 1e-4);
    }
    let report = equispacing_diagnostic(&t, 0.5);
    let unit = 0.5 * 3f64.sqrt() * 0.5;
    for (k, r) in report.adjacent_ratios.iter().enumerate() {
        assert_abs_diff_eq!(*r, (level(k + 1) - level(k)) / unit, epsilon = 1e-4);
    }
}

#[test]
fn parity_labels_and_overlaps() {
    for omega0 in [0.5, 0.1] {
        let grid = build_grid(30.0, 301).unwrap();
        let spec = internal_spectrum(&params(omega0), &grid, 8).unwrap();
        let vecs = spec.eigenvectors.as_ref().unwrap();
        for (k, psi) in vecs.iter().enumerate() {
            assert_eq!(spec.parity[k], Parity::of_index(k));
            let o = psi.parity_overlap();
            match spec.parity[k] {
                Parity::Even => assert!(o > 0.999, "{omega0} {k}: {o}"),
                Parity::Odd => assert!(o < -0.999, "{omega0} {k}: {o}"),
            }
        }
        for w in spec.eigenvalues.windows(2) {
            assert!(w[1] > w[0] - DEGENERACY_TOL);
        }
    }
}

#[test]
fn double_well_minimum_matches_fine_scan() {
    let p = params(0.1);
    let grid = build_grid(10.0, 200_001).unwrap();
    let (q_scan, _) = grid
        .points()
        .into_iter()
        .filter(|q| *q > 0.0)
        .map(|q| (q, internal_potential(q, &p)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let q_star = double_well_minimum(&p).unwrap();
    assert!(
        (q_star - q_scan).abs() < 2.0 * grid.spacing(),
        "{q_star} vs {q_scan}"
    );
    assert!(internal_potential(0.0, &p) > internal_potential(q_star, &p));
    assert!(double_well_minimum(&params(2.0)).is_none());
    assert!(double_well_minimum(&params(0.1).non_interacting()).is_none());
}

#[test]
fn strong_correlation_diagnostics() {
    let grid = build_grid(30.0, 301).unwrap();
    let spectra: Vec<_> = [0.5, 0.2, 0.1]
        .iter()
        .map(|&w| (w, internal_spectrum(&params(w), &grid, 8).unwrap()))
        .collect();
    let tables: Vec<_> = spectra
        .iter()
        .map(|(_, s)| transition_table(s).unwrap())
        .collect();

    // near-degenerate pair at ω₀ = 0.1
    let s = &spectra[2].1.eigenvalues;
    assert!((s[1] - s[0]) / (s[2] - s[0]) < 0.1);
    let gaps: Vec<f64> = spectra
        .iter()
        .map(|(w, s)| degeneracy_diagnostic(s)[0] / w)
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);
    assert!(gaps[2] < 0.1);

    // even ladder at ω₀ = 0.1 within 10% of √3ω₀, double steps of 2√3ω₀
    let t = &tables[2];
    let unit = 3f64.sqrt() * 0.1;
    for (m, n) in [(0, 2), (2, 4), (4, 6)] {
        assert!((t.omega(m, n).unwrap() / unit - 1.0).abs() < 0.1);
    }
    for (m, n) in [(0, 4), (2, 6)] {
        assert!((t.omega(m, n).unwrap() / (2.0 * unit) - 1.0).abs() < 0.1);
    }

    let spreads: Vec<f64> = tables
        .iter()
        .map(|t| even_ladder_spread(t).unwrap())
        .collect();
    assert!(
        spreads[0] > spreads[1] && spreads[1] > spreads[2],
        "{spreads:?}"
    );

    let dev: Vec<f64> = tables
        .iter()
        .zip([0.5, 0.2, 0.1])
        .map(|(t, w)| equispacing_diagnostic(t, w).max_deviation)
        .collect();
    assert!(dev[2] < 0.1 && dev[0] > dev[2], "{dev:?}");
}

#[test]
fn sturm_count_brackets_spectrum() {
    let p = params(0.2);
    let grid = build_grid(20.0, 201).unwrap();
    let v: Vec<f64> = grid
        .points()
        .iter()
        .map(|&q| internal_potential(q, &p))
        .collect();
    let op = discretize_1d(&grid, 1.0, &v).unwrap();
    let ev = op.lowest_eigenvalues(6);
    for (k, e) in ev.iter().enumerate() {
        assert_eq!(op.sturm_count(e - 1e-9), k);
        assert_eq!(op.sturm_count(e + 1e-9), k + 1);
    }
}
