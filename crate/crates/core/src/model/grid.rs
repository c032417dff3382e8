use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid symmetric about the origin with an odd number of points,
/// so that x = 0 is the central node and reflection maps nodes onto nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridSpec", into = "GridSpec")]
pub struct Grid1D {
    x_max: f64,
    n_points: usize,
    spacing: f64,
}

#[derive(Serialize, Deserialize)]
struct GridSpec {
    x_max: f64,
    n_points: usize,
}

impl TryFrom<GridSpec> for Grid1D {
    type Error = Error;

    fn try_from(s: GridSpec) -> Result<Self> {
        build_grid(s.x_max, s.n_points)
    }
}

impl From<Grid1D> for GridSpec {
    fn from(g: Grid1D) -> Self {
        GridSpec {
            x_max: g.x_max,
            n_points: g.n_points,
        }
    }
}

/// Builds the grid `[-x_max, x_max]` with `n_points` nodes.
pub fn build_grid(x_max: f64, n_points: usize) -> Result<Grid1D> {
    if !(x_max > 0.0 && x_max.is_finite()) {
        return Err(Error::config(format!(
            "grid extent must be positive, got {x_max}"
        )));
    }
    if n_points < 3 {
        return Err(Error::config(format!(
            "grid needs at least 3 points, got {n_points}"
        )));
    }
    if n_points.is_multiple_of(2) {
        return Err(Error::config(format!(
            "grid point count must be odd so that x = 0 is a node, got {n_points}"
        )));
    }
    Ok(Grid1D {
        x_max,
        n_points,
        spacing: 2.0 * x_max / (n_points - 1) as f64,
    })
}

impl Grid1D {
    /// Grid with the given half-width and (approximate) spacing; the point
    /// count is rounded so the spacing divides the box exactly.
    pub fn with_spacing(x_max: f64, spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::config(format!(
                "spacing must be positive, got {spacing}"
            )));
        }
        let intervals = (2.0 * x_max / spacing).round() as usize;
        build_grid(x_max, intervals + 1)
    }

    pub fn x_min(&self) -> f64 {
        -self.x_max
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn center_index(&self) -> usize {
        (self.n_points - 1) / 2
    }

    /// Coordinate of node `i`. Computed from the centre outward so that
    /// `x(i) == -x(n - 1 - i)` holds bit-exactly.
    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - self.center_index() as f64) * self.spacing
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Index of the node mirrored through the origin.
    pub fn mirror(&self, i: usize) -> usize {
        self.n_points - 1 - i
    }

    /// Trapezoid weight of node `i`.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.n_points {
            0.5 * self.spacing
        } else {
            self.spacing
        }
    }

    /// Angular wavenumbers of the discrete Fourier modes, in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n_points;
        let dk = 2.0 * std::f64::consts::PI / (n as f64 * self.spacing);
        (0..n)
            .map(|j| {
                let m = if j <= n / 2 {
                    j as i64
                } else {
                    j as i64 - n as i64
                };
                m as f64 * dk
            })
            .collect()
    }
}

/// Square tensor grid; both particle coordinates share one axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub axis: Grid1D,
}

impl Grid2D {
    pub fn new(axis: Grid1D) -> Self {
        Grid2D { axis }
    }

    pub fn n(&self) -> usize {
        self.axis.n_points()
    }

    pub fn len(&self) -> usize {
        self.n() * self.n()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major index of (x₁ node, x₂ node).
    #[inline]
    pub fn index(&self, i1: usize, i2: usize) -> usize {
        i1 * self.n() + i2
    }

    pub fn area_element(&self) -> f64 {
        self.axis.spacing() * self.axis.spacing()
    }

    /// Samples `f(x₁, x₂)` over the grid in row-major order.
    pub fn sample<F: Fn(f64, f64) -> f64>(&self, f: F) -> Vec<f64> {
        let xs = self.axis.points();
        let mut out = Vec::with_capacity(self.len());
        for &x1 in &xs {
            for &x2 in &xs {
                out.push(f(x1, x2));
            }
        }
        out
    }
}
