use crate::error::{Error, Result};
use crate::model::Grid1D;

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diagonal: Vec<f64>,
    /// `off_diagonal[i]` couples rows i and i + 1.
    pub off_diagonal: Vec<f64>,
}

/// Three-point finite-difference Hamiltonian `−(1/2m) d²/dx² + V`.
pub fn discretize_1d(grid: &Grid1D, mass: f64, potential: &[f64]) -> Result<SymTridiagonal> {
    if potential.len() != grid.n_points() {
        return Err(Error::LengthMismatch {
            expected: grid.n_points(),
            got: potential.len(),
        });
    }
    if !(mass > 0.0) {
        return Err(Error::config(format!("mass must be positive, got {mass}")));
    }
    let h = grid.spacing();
    let kin = 1.0 / (2.0 * mass * h * h);
    Ok(SymTridiagonal {
        diagonal: potential.iter().map(|v| 2.0 * kin + v).collect(),
        off_diagonal: vec![-kin; grid.n_points() - 1],
    })
}

impl SymTridiagonal {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::LengthMismatch {
                expected: diagonal.len().saturating_sub(1),
                got: off_diagonal.len(),
            });
        }
        Ok(SymTridiagonal {
            diagonal,
            off_diagonal,
        })
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut s = self.diagonal[i] * v[i];
            if i > 0 {
                s += self.off_diagonal[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                s += self.off_diagonal[i] * v[i + 1];
            }
            out[i] = s;
        }
        out
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            } + if i + 1 < n {
                self.off_diagonal[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn sturm_count(&self, x: f64) -> usize {
        let tiny = f64::EPSILON * self.scale() * 1e-3;
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.len() {
            let b2 = if i > 0 {
                self.off_diagonal[i - 1].powi(2)
            } else {
                0.0
            };
            d = self.diagonal[i] - x - if i > 0 { b2 / d } else { 0.0 };
            if d == 0.0 {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues by bisection, ascending.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<f64> {
        let k = k.min(self.len());
        let (lo0, hi0) = self.gershgorin();
        let eps = f64::EPSILON * self.scale();
        (0..k)
            .map(|j| {
                let (mut lo, mut hi) = (lo0 - eps, hi0 + eps);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi || hi - lo <= 2.0 * eps {
                        break;
                    }
                    if self.sturm_count(mid) > j {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    /// Solves `(T − σ) y = rhs` by Gaussian elimination with partial pivoting.
    fn solve_shifted(&self, sigma: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let guard = f64::EPSILON * self.scale();
        // rows hold [diag, super, super-super] after pivoting
        let mut d: Vec<f64> = self.diagonal.iter().map(|a| a - sigma).collect();
        let mut u1: Vec<f64> = self.off_diagonal.clone();
        u1.push(0.0);
        let mut u2 = vec![0.0; n];
        let mut low: Vec<f64> = self.off_diagonal.clone();
        let mut b = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if low[i].abs() > d[i].abs() {
                // swap rows i and i+1
                std::mem::swap(&mut d[i], &mut low[i]);
                let (a1, a2) = (u1[i], u2[i]);
                let next_d = d[i + 1];
                let next_u1 = u1[i + 1];
                u1[i] = next_d;
                u2[i] = next_u1;
                d[i + 1] = a1;
                u1[i + 1] = a2;
                b.swap(i, i + 1);
            }
            if d[i] == 0.0 {
                d[i] = guard;
            }
            let f = low[i] / d[i];
            d[i + 1] -= f * u1[i];
            u1[i + 1] -= f * u2[i];
            b[i + 1] -= f * b[i];
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = guard;
        }
        let mut y = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= u1[i] * y[i + 1];
            }
            if i + 2 < n {
                s -= u2[i] * y[i + 2];
            }
            y[i] = s / d[i];
        }
        y
    }

    /// Eigenvector for a (converged) eigenvalue by inverse iteration,
    /// orthogonalized against `previous`. Returns the unit vector and
    /// the residual ‖Tv − λv‖.
    pub fn eigenvector(&self, lambda: f64, previous: &[Vec<f64>]) -> Result<(Vec<f64>, f64)> {
        const MAX_ITER: usize = 8;
        let n = self.len();
        let sigma = lambda + 16.0 * f64::EPSILON * self.scale();
        // deterministic, non-symmetric start vector
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64 * 0.7548776662).fract() - 0.5))
            .collect();
        let mut residual = f64::INFINITY;
        for _ in 0..MAX_ITER {
            let mut y = self.solve_shifted(sigma, &v);
            for p in previous {
                let c: f64 = y.iter().zip(p).map(|(a, b)| a * b).sum();
                y.iter_mut().zip(p).for_each(|(a, b)| *a -= c * b);
            }
            let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                break;
            }
            y.iter_mut().for_each(|a| *a /= norm);
            v = y;
            let tv = self.apply(&v);
            residual = tv
                .iter()
                .zip(&v)
                .map(|(t, x)| (t - lambda * x).powi(2))
                .sum::<f64>()
                .sqrt();
            if residual < 1e-12 * self.scale() {
                break;
            }
        }
        if residual.is_finite() {
            Ok((v, residual))
        } else {
            Err(Error::Convergence {
                what: "inverse iteration",
                iterations: MAX_ITER,
                residual,
            })
        }
    }

    /// True when the matrix commutes with the reflection i ↦ n−1−i.
    pub fn is_reflection_symmetric(&self) -> bool {
        let n = self.len();
        if n.is_multiple_of(2) {
            return false;
        }
        let tol = 1e-13 * self.scale();
        (0..n).all(|i| (self.diagonal[i] - self.diagonal[n - 1 - i]).abs() <= tol)
            && (0..n - 1)
                .all(|i| (self.off_diagonal[i] - self.off_diagonal[n - 2 - i]).abs() <= tol)
    }

    /// Restrictions to the even and odd subspaces of a reflection-symmetric
    /// matrix of odd size. The even block acts on `(ψ_c/√2·√2 … )`; see
    /// [`expand_even`] and [`expand_odd`] for the embedding back.
    pub fn parity_blocks(&self) -> (SymTridiagonal, SymTridiagonal) {
        let n = self.len();
        let c = (n - 1) / 2;
        let even_diag = self.diagonal[c..].to_vec();
        let mut even_off = self.off_diagonal[c..].to_vec();
        if let Some(first) = even_off.first_mut() {
            *first *= std::f64::consts::SQRT_2;
        }
        let odd_diag = self.diagonal[c + 1..].to_vec();
        let odd_off = if c >= 1 {
            self.off_diagonal[c + 1..].to_vec()
        } else {
            Vec::new()
        };
        (
            SymTridiagonal {
                diagonal: even_diag,
                off_diagonal: even_off,
            },
            SymTridiagonal {
                diagonal: odd_diag,
                off_diagonal: odd_off,
            },
        )
    }
}

/// Maps a unit eigenvector of the even block onto a unit vector of the
/// full reflection-symmetric problem.
pub fn expand_even(w: &[f64]) -> Vec<f64> {
    let c = w.len() - 1;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = vec![0.0; 2 * c + 1];
    out[c] = w[0] * std::f64::consts::SQRT_2 * s;
    for j in 1..=c {
        out[c + j] = w[j] * s;
        out[c - j] = w[j] * s;
    }
    out
}

/// Maps a unit eigenvector of the odd block onto the full problem.
pub fn expand_odd(w: &[f64]) -> Vec<f64> {
    let c = w.len();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = vec![0.0; 2 * c + 1];
    for j in 1..=c {
        out[c + j] = w[j - 1] * s;
        out[c - j] = -w[j - 1] * s;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_grid;

    #[test]
    fn free_particle_stencil() {
        let g = build_grid(2.0, 5).unwrap();
        let t = discretize_1d(&g, 1.0, &[0.0; 5]).unwrap();
        assert!(t.diagonal.iter().all(|&d| d == 1.0));
        assert!(t.off_diagonal.iter().all(|&o| o == -0.5));
    }

    #[test]
    fn mismatched_potential() {
        let g = build_grid(2.0, 5).unwrap();
        assert!(discretize_1d(&g, 1.0, &[0.0; 4]).is_err());
        assert!(discretize_1d(&g, 0.0, &[0.0; 5]).is_err());
    }

    #[test]
    fn sturm_count_on_diagonal_matrix() {
        let t = SymTridiagonal::new(vec![3.0, 1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(t.sturm_count(0.5), 0);
        assert_eq!(t.sturm_count(1.5), 1);
        assert_eq!(t.sturm_count(2.5), 2);
        assert_eq!(t.sturm_count(3.5), 3);
        let ev = t.lowest_eigenvalues(3);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // eigenvalues of tridiag(-1, 2, -1) of size n are 2 - 2cos(jπ/(n+1))
        let n = 41;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let ev = t.lowest_eigenvalues(6);
        for (j, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-13, "{j}: {e} vs {exact}");
            let (v, r) = t.eigenvector(*e, &[]).unwrap();
            assert!(r < 1e-12 * t.scale(), "{j}: residual {r}");
            assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parity_blocks_reproduce_full_spectrum() {
        let n = 21;
        let diag: Vec<f64> = (0..n)
            .map(|i| 2.0 + ((i as f64) - 10.0).powi(2) * 0.05)
            .collect();
        let t = SymTridiagonal::new(diag, vec![-1.0; n - 1]).unwrap();
        assert!(t.is_reflection_symmetric());
        let (even, odd) = t.parity_blocks();
        let mut merged: Vec<f64> = even.lowest_eigenvalues(5);
        merged.extend(odd.lowest_eigenvalues(5));
        merged.sort_by(f64::total_cmp);
        let full = t.lowest_eigenvalues(10);
        for (a, b) in merged.iter().zip(&full) {
            assert!((a - b).abs() < 1e-13);
        }
        let (w, _) = even
            .eigenvector(even.lowest_eigenvalues(1)[0], &[])
            .unwrap();
        let v = expand_even(&w);
        let r: f64 = t
            .apply(&v)
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - full[0] * b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(r < 1e-12);
        assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
