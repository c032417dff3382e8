use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use twisted_trap::analysis::*;
use twisted_trap::dynamics::{Observable, ObservableSeries};
use twisted_trap::model::{build_grid, ExchangeSymmetry, Grid2D, WaveFunction2D};
use twisted_trap::spectral::{transition_table, EigenSpectrum, Parity, Subsystem};

fn series(total: f64, dt: f64, f: impl Fn(f64) -> f64) -> ObservableSeries {
    let n = (total / dt).round() as usize + 1;
    let times: Vec<f64> = (0..n).map(|i| i as f64 * dt).collect();
    let q: Vec<f64> = times.iter().map(|&t| f(t)).collect();
    ObservableSeries {
        dipole: q.clone(),
        quadrupole: q,
        norm: vec![1.0; n],
        energy: vec![1.0; n],
        times,
    }
}

fn table(levels: &[f64], subsystem: Subsystem) -> twisted_trap::spectral::TransitionTable {
    transition_table(&EigenSpectrum {
        eigenvalues: levels.to_vec(),
        eigenvectors: None,
        parity: (0..levels.len()).map(Parity::of_index).collect(),
        subsystem,
        max_residual: 0.0,
    })
    .unwrap()
}

#[test]
fn single_cosine_peak() {
    let s = series(1500.0, 0.1, |t| (0.5 * t).cos());
    for window in [
        Window::Hann,
        Window::ExpDamp,
        Window::BlackmanHarris,
        Window::None,
    ] {
        let spec = compute_spectrum(&s, Observable::Quadrupole, window).unwrap();
        assert_abs_diff_eq!(spec.resolution, 2.0 * PI / 1500.1, epsilon = 1e-6);
        let peaks = find_peaks(&spec, 1e-3).unwrap();
        let top = peaks
            .peaks
            .iter()
            .max_by(|a, b| a.height.total_cmp(&b.height))
            .unwrap();
        assert!((top.omega - 0.5).abs() < 0.005, "{window}: {}", top.omega);
    }
}

#[test]
fn two_tones_sub_bin_accuracy() {
    let s = series(1500.0, 0.1, |t| (0.3 * t).cos() + (0.9 * t + 0.4).cos());
    let spec = compute_spectrum(&s, Observable::Quadrupole, Window::BlackmanHarris).unwrap();
    let peaks = find_peaks(&spec, 1e-3).unwrap();
    assert_eq!(peaks.len(), 2, "{:?}", peaks.peaks);
    let tol = spec.resolution / 4.0;
    assert!((peaks.peaks[0].omega - 0.3).abs() < tol);
    assert!((peaks.peaks[1].omega - 0.9).abs() < tol);
    assert!((peaks.peaks[0].relative_height - peaks.peaks[1].relative_height).abs() < 0.02);
}

#[test]
fn noise_below_floor_gives_no_peaks() {
    let s = series(1500.0, 0.1, |t| 1e-14 * ((t * 7.3).sin() * 1e3).sin());
    let spec = compute_spectrum(&s, Observable::Dipole, Window::BlackmanHarris).unwrap();
    assert!(find_peaks(&spec, 1e-3).unwrap().is_empty());
}

#[test]
fn constant_signal_has_no_peaks() {
    let s = series(200.0, 0.1, |_| 3.25);
    let spec = compute_spectrum(&s, Observable::Dipole, Window::Hann).unwrap();
    assert!(spec.magnitude.iter().all(|m| *m < 1e-9));
    assert!(find_peaks(&spec, 1e-3).unwrap().is_empty());
}

#[test]
fn short_series_rejected() {
    let s = series(99.0, 0.1, |t| t.sin());
    assert!(compute_spectrum(&s, Observable::Dipole, Window::Hann).is_err());
}

#[test]
fn bad_threshold_and_empty_spectrum_rejected() {
    let s = series(200.0, 0.1, |t| (0.5 * t).cos());
    let spec = compute_spectrum(&s, Observable::Dipole, Window::Hann).unwrap();
    assert!(find_peaks(&spec, 0.0).is_err());
    assert!(find_peaks(&spec, 1.0).is_err());
    let mut empty = spec.clone();
    empty.magnitude.clear();
    empty.frequencies.clear();
    assert!(find_peaks(&empty, 1e-3).is_err());
}

#[test]
fn frequency_axis_uniform_to_nyquist() {
    let s = series(150.0, 0.1, |t| (0.5 * t).cos());
    let spec = compute_spectrum(&s, Observable::Dipole, Window::Hann).unwrap();
    let dw = spec.bin_width();
    for (k, w) in spec.frequencies.iter().enumerate() {
        assert_abs_diff_eq!(*w, k as f64 * dw, epsilon = 1e-12);
    }
    assert_abs_diff_eq!(*spec.frequencies.last().unwrap(), PI / 0.1, epsilon = 1e-9);
    assert!(spec.magnitude.iter().all(|m| *m >= 0.0));
}

#[test]
fn window_invariance_of_positions() {
    let s = series(1500.0, 0.1, |t| {
        (0.3005 * t).sin() + 0.2 * (0.4 * t).cos() + 0.05 * (0.6262 * t).sin()
    });
    let reference = find_peaks(
        &compute_spectrum(&s, Observable::Quadrupole, Window::BlackmanHarris).unwrap(),
        1e-3,
    )
    .unwrap();
    for window in [Window::Hann, Window::ExpDamp] {
        let spec = compute_spectrum(&s, Observable::Quadrupole, window).unwrap();
        let peaks = find_peaks(&spec, 1e-2).unwrap();
        for target in [0.3005, 0.4, 0.6262] {
            let a = reference.near(target, spec.resolution).unwrap();
            let b = peaks.near(target, spec.resolution).unwrap();
            assert!(
                (a.omega - b.omega).abs() < spec.resolution / 2.0,
                "{window} {target}: {} vs {}",
                a.omega,
                b.omega
            );
        }
    }
}

#[test]
fn spectrum_csv_layout() {
    let s = series(150.0, 0.1, |t| (0.5 * t).cos());
    let spec = compute_spectrum(&s, Observable::Dipole, Window::Hann).unwrap();
    let csv = spec
        .truncated(1.0)
        .to_csv(&[("omega0".into(), "0.5".into())]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# omega0: 0.5"));
    let body: Vec<&str> = lines.skip_while(|l| l.starts_with('#')).collect();
    assert_eq!(body[0], "omega,magnitude");
    assert!(body[1..]
        .iter()
        .all(|l| l.split(',').count() == 2 && !l.contains(';')));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval(seed in 0u64..1000, window_idx in 0usize..4) {
        let window = [Window::Hann, Window::ExpDamp, Window::BlackmanHarris, Window::None][window_idx];
        let w1 = 0.1 + (seed % 17) as f64 * 0.05;
        let w2 = 0.2 + (seed % 11) as f64 * 0.09;
        let s = series(150.0, 0.1, |t| (w1 * t).sin() + 0.3 * (w2 * t + seed as f64).cos() + 0.1);
        let spec = compute_spectrum(&s, Observable::Dipole, window).unwrap();
        let rel = (spec.spectral_power() - spec.windowed_power).abs() / spec.windowed_power;
        prop_assert!(rel < 1e-6, "relative Parseval defect {}", rel);
    }

    #[test]
    fn power_law_exponent_recovered(c in 0.1f64..10.0, p in 0.5f64..3.0) {
        let pts: Vec<(f64, f64)> = [1e-3f64, 3e-3, 1e-2, 3e-2].iter().map(|&e| (e, c * e.powf(p))).collect();
        let fit = fit_power_law(&pts).unwrap();
        prop_assert!((fit.exponent - p).abs() < 1e-9);
        prop_assert!(fit.rms_residual < 1e-9);
    }
}

#[test]
fn quadratic_heights_give_second_order() {
    let pts: Vec<(f64, f64)> = [1e-4, 1e-3, 1e-2]
        .iter()
        .map(|&e| (e, 7.0 * e * e))
        .collect();
    let fit = fit_power_law(&pts).unwrap();
    assert_abs_diff_eq!(fit.exponent, 2.0, epsilon = 1e-12);
    assert_eq!(fit.order, Some(2));
    assert_eq!(classify_order(1.05), Some(1));
    assert_eq!(classify_order(1.5), None);
}

#[test]
fn scaling_needs_three_strengths_over_a_decade() {
    assert!(fit_power_law(&[(1e-3, 1.0), (1e-2, 10.0)]).is_err());
    assert!(fit_power_law(&[(1e-3, 1.0), (2e-3, 2.0), (5e-3, 5.0)]).is_err());
    assert!(fit_power_law(&[(1e-3, 1.0), (1e-2, 0.0), (1e-1, 5.0)]).is_err());
}

fn peak(omega: f64, height: f64) -> Peak {
    Peak {
        omega,
        height,
        relative_height: 1.0,
        label: None,
        alternatives: vec![],
        degenerate: false,
        anomaly: false,
        order: None,
    }
}

#[test]
fn labels_prefer_cm_and_flag_degeneracy() {
    // harmonic CM ladder with ω₀ = 0.2; internal levels chosen so that
    // ω^q_{02} = 0.4 coincides with 2ω₀
    let cm = table(&[0.2, 0.4, 0.6, 0.8], Subsystem::CenterOfMass);
    let q = table(&[0.5, 0.55, 0.9, 0.95, 1.6], Subsystem::Internal);
    let mut list = PeakList {
        peaks: vec![
            peak(0.4001, 1.0),
            peak(0.7, 0.1),
            peak(1.1, 0.1),
            peak(0.05, 0.1),
        ],
        tolerance: None,
    };
    label_peaks(&mut list, &cm, &q, 0.004);
    let p = &list.peaks[0];
    let l = p.label.as_ref().unwrap();
    assert_eq!((l.subsystem, l.m, l.n), (Subsystem::CenterOfMass, 0, 2));
    assert!(p.degenerate);
    assert!(p
        .alternatives
        .iter()
        .any(|a| a.subsystem == Subsystem::Internal && a.m == 0 && a.n == 2));
    // ω^q_{24} = 0.7
    let l = list.peaks[1].label.as_ref().unwrap();
    assert_eq!((l.subsystem, l.m, l.n), (Subsystem::Internal, 2, 4));
    assert!(!list.peaks[1].degenerate);
    // ω^q_{04} = 1.1
    assert_eq!(list.peaks[2].label.as_ref().unwrap().text, "ω^q_{0,4}");
    // 0.05 is the odd-level gap ω^q_{01}, excluded for symmetric states
    assert!(list.peaks[3].anomaly);
    assert!(list.peaks[3].label.is_none());
    assert_eq!(list.tolerance, Some(0.004));
}

#[test]
fn order_scaling_matches_labels_across_runs() {
    let cm = table(&[0.2, 0.4, 0.6], Subsystem::CenterOfMass);
    let q = table(&[0.5, 0.55, 0.8], Subsystem::Internal);
    let run = |e0: f64, with_extra: bool| {
        let mut list = PeakList {
            peaks: vec![peak(0.3, 3.0 * e0), peak(0.4, 5.0 * e0 * e0)],
            tolerance: None,
        };
        if with_extra {
            list.peaks.push(peak(1.3, 1.0));
        }
        label_peaks(&mut list, &cm, &q, 0.004);
        (e0, list)
    };
    let runs = vec![run(1e-3, false), run(3e-3, true), run(1e-2, false)];
    let report = order_scaling(&runs, 0.004).unwrap();
    assert_eq!(report.get("ω^q_{0,2}").unwrap().fit.order, Some(1));
    assert_eq!(report.get("ω^CM_{0,2}").unwrap().fit.order, Some(2));
    assert_eq!(report.warnings.len(), 1, "{:?}", report.warnings);
}

fn hermite_pair(grid: Grid2D) -> WaveFunction2D {
    let phi0 = |x: f64| (-0.5 * x * x).exp();
    let phi1 = |x: f64| x * (-0.5 * x * x).exp();
    WaveFunction2D::from_fn(grid, ExchangeSymmetry::Symmetric, |a, b| {
        phi0(a) * phi1(b) + phi1(a) * phi0(b)
    })
}

#[test]
fn entropy_of_product_state_is_zero() {
    let grid = Grid2D::new(build_grid(8.0, 81).unwrap());
    let mut psi = WaveFunction2D::from_fn(grid, ExchangeSymmetry::Symmetric, |a, b| {
        (-0.5 * (a * a + b * b)).exp()
    });
    psi.normalize();
    let r = entanglement_entropy(&psi).unwrap();
    assert!(r.entropy.abs() < 1e-10);
    assert_abs_diff_eq!(r.occupations[0], 1.0, epsilon = 1e-10);
}

#[test]
fn entropy_of_two_orbital_state() {
    let grid = Grid2D::new(build_grid(8.0, 81).unwrap());
    let mut psi = hermite_pair(grid);
    psi.normalize();
    let r = entanglement_entropy(&psi).unwrap();
    assert_abs_diff_eq!(r.occupations[0], 0.5, epsilon = 1e-9);
    assert_abs_diff_eq!(r.occupations[1], 0.5, epsilon = 1e-9);
    assert_abs_diff_eq!(r.raw_entropy, 2f64.ln(), epsilon = 1e-8);
    assert_abs_diff_eq!(r.entropy, 0.5 * 2f64.ln(), epsilon = 1e-8);
    let total: f64 = r.occupations.iter().sum();
    assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
    assert!(r
        .occupations
        .iter()
        .all(|l| *l >= -1e-8 && *l <= 1.0 + 1e-12));
}

#[test]
fn entropy_ignores_global_phase() {
    let grid = Grid2D::new(build_grid(8.0, 61).unwrap());
    let mut psi = hermite_pair(grid);
    psi.normalize();
    let a = entanglement_entropy(&psi).unwrap().entropy;
    psi.amplitudes
        .iter_mut()
        .for_each(|z| *z *= Complex64::from_polar(1.0, 0.7));
    let b = entanglement_entropy(&psi).unwrap().entropy;
    assert_abs_diff_eq!(a, b, epsilon = 1e-12);
}
