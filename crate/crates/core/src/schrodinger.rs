//! Finite-difference eigenvalues of one-dimensional Schrödinger operators
//! (`hbar = 1`, mass one) and the separable Q5 spectrum built from them.
//!
//! The inverse-square barriers at `x = ±a` are impenetrable, so the
//! x-problem splits into a middle well on `(-a, a)` and two mirror-image
//! outer wells; the outer one is truncated at `x = L` with a Dirichlet wall.

use thiserror::Error;

use crate::exactnum::rational::to_f64;
use crate::spectrum::Level;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchrodingerError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("potential is not finite at grid point x = {x}")]
    SingularPotential { x: f64 },
}

/// Interior points of a uniform grid with Dirichlet walls at both ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub left: f64,
    pub right: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(left: f64, right: f64, n: usize) -> Result<Grid1D, SchrodingerError> {
        if !(left < right) {
            return Err(SchrodingerError::InvalidGrid(format!("left {left} must be below right {right}")));
        }
        if n < 3 {
            return Err(SchrodingerError::InvalidGrid(format!("need at least 3 interior points, got {n}")));
        }
        Ok(Grid1D { left, right, n })
    }

    pub fn spacing(&self) -> f64 {
        (self.right - self.left) / (self.n + 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.left + (i + 1) as f64 * self.spacing()
    }

    /// The grid with half the spacing.
    pub fn refined(&self) -> Grid1D {
        Grid1D { n: 2 * self.n + 1, ..*self }
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagMatrix {
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
}

/// Three-point Laplacian plus potential: diagonal `1/h^2 + V`, off-diagonal
/// `-1/(2 h^2)`.
pub fn discretize(potential: impl Fn(f64) -> f64, grid: &Grid1D) -> Result<TridiagMatrix, SchrodingerError> {
    let h2 = grid.spacing().powi(2);
    let diagonal = (0..grid.n)
        .map(|i| {
            let x = grid.point(i);
            let v = potential(x);
            if v.is_finite() {
                Ok(1.0 / h2 + v)
            } else {
                Err(SchrodingerError::SingularPotential { x })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TridiagMatrix { diagonal, offdiagonal: vec![-0.5 / h2; grid.n - 1] })
}

/// Number of eigenvalues strictly below `lambda` (Sturm sequence / LDLᵀ
/// inertia).
pub fn count_below(t: &TridiagMatrix, lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, d) in t.diagonal.iter().enumerate() {
        let e2 = if i == 0 { 0.0 } else { t.offdiagonal[i - 1].powi(2) };
        q = d - lambda - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + lambda.abs()).max(1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(t: &TridiagMatrix) -> (f64, f64) {
    let n = t.diagonal.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { t.offdiagonal[i - 1].abs() } else { 0.0 } + if i + 1 < n { t.offdiagonal[i].abs() } else { 0.0 };
        lo = lo.min(t.diagonal[i] - r);
        hi = hi.max(t.diagonal[i] + r);
    }
    (lo, hi)
}

/// The `k`-th smallest eigenvalue (0-based) by bisection to width `tol`.
pub fn kth_eigenvalue(t: &TridiagMatrix, k: usize, tol: f64) -> f64 {
    let (mut lo, mut hi) = gershgorin(t);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(t, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `m` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues(t: &TridiagMatrix, m: usize, tol: f64) -> Vec<f64> {
    let m = m.min(t.diagonal.len());
    (0..m).map(|k| kth_eigenvalue(t, k, tol)).collect()
}

/// Every eigenvalue below `cutoff`.
pub fn eigenvalues_below(t: &TridiagMatrix, cutoff: f64, tol: f64) -> Vec<f64> {
    lowest_eigenvalues(t, count_below(t, cutoff), tol)
}

/// Removes the leading `h^2` error from results on grids `h` and `h/2`.
pub fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

/// Lowest `m` levels of `potential` on `grid`, extrapolated from `grid` and
/// its refinement.
pub fn extrapolated_levels(potential: impl Fn(f64) -> f64 + Copy, grid: &Grid1D, m: usize, tol: f64) -> Result<Vec<f64>, SchrodingerError> {
    let coarse = lowest_eigenvalues(&discretize(potential, grid)?, m, tol);
    let fine = lowest_eigenvalues(&discretize(potential, &grid.refined())?, m, tol);
    Ok(coarse.iter().zip(&fine).map(|(c, f)| richardson(*c, *f)).collect())
}

/// Numerical options for the Q5 spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericOptions {
    pub a: f64,
    /// Interior points of the middle well; the outer well uses the same spacing.
    pub grid: usize,
    /// Outer wall position in units of `a` (at least 8).
    pub wall: f64,
    pub cutoff: f64,
    /// Bisection width.
    pub tol: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { a: 1.0, grid: 1000, wall: 8.0, cutoff: 6.0, tol: 1e-10 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Well {
    Middle,
    /// One of the two mirror-image outer wells.
    Outer,
}

/// One combined level `Ex + Ey`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericLevel {
    pub energy: f64,
    pub well: Well,
    /// Index of `Ex` within its well.
    pub nx: usize,
    /// Oscillator quantum number of `Ey`.
    pub ny: usize,
}

pub fn q5_x_potential(a: f64) -> impl Fn(f64) -> f64 + Copy {
    move |x: f64| x * x / (8.0 * a.powi(4)) + 1.0 / (x - a).powi(2) + 1.0 / (x + a).powi(2)
}

/// `Ey = (j + 1/2) / (2 a^2)`.
pub fn y_level(a: f64, j: usize) -> f64 {
    (j as f64 + 0.5) / (2.0 * a * a)
}

/// The x-levels of one well below `cutoff`, extrapolated.
pub fn well_levels(opts: &NumericOptions, well: Well) -> Result<Vec<f64>, SchrodingerError> {
    let a = opts.a;
    let grid = match well {
        Well::Middle => Grid1D::new(-a, a, opts.grid)?,
        Well::Outer => {
            let wall = opts.wall.max(8.0) * a;
            let n = ((opts.grid + 1) as f64 * (wall - a) / (2.0 * a)).round() as usize - 1;
            Grid1D::new(a, wall, n)?
        }
    };
    let v = q5_x_potential(a);
    let count = count_below(&discretize(v, &grid.refined())?, opts.cutoff);
    let mut levels = extrapolated_levels(v, &grid, count + 1, opts.tol)?;
    levels.retain(|e| *e < opts.cutoff);
    Ok(levels)
}

/// Combined levels `Ex + Ey` below the cutoff, ascending; each outer-well
/// level appears twice.
pub fn q5_levels(opts: &NumericOptions) -> Result<Vec<NumericLevel>, SchrodingerError> {
    let mut out = Vec::new();
    for well in [Well::Middle, Well::Outer] {
        let copies = if well == Well::Outer { 2 } else { 1 };
        for (nx, ex) in well_levels(opts, well)?.into_iter().enumerate() {
            let mut ny = 0;
            while ex + y_level(opts.a, ny) < opts.cutoff {
                for _ in 0..copies {
                    out.push(NumericLevel { energy: ex + y_level(opts.a, ny), well, nx, ny });
                }
                ny += 1;
            }
        }
    }
    out.sort_by(|x, y| x.energy.total_cmp(&y.energy).then(x.well.cmp(&y.well)).then(x.nx.cmp(&y.nx)));
    Ok(out)
}

/// One algebraic prediction and its nearest numeric level.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub family: usize,
    pub p: u32,
    pub predicted: f64,
    pub nearest: Option<f64>,
    pub deviation: Option<f64>,
    /// Negative energies cannot occur: H is a sum of squares plus a
    /// nonnegative potential.
    pub representable: bool,
    pub matched: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub rows: Vec<Comparison>,
    /// Numeric levels no prediction landed on (informational).
    pub unmatched_numeric: Vec<f64>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().filter(|r| r.representable).all(|r| r.matched)
    }
}

/// Matches every predicted level up to `cutoff` against the numeric levels.
pub fn compare(predictions: &[Level], numeric: &[NumericLevel], tol: f64, cutoff: f64) -> CompareReport {
    let mut rows = Vec::new();
    let mut used = vec![false; numeric.len()];
    for lv in predictions {
        let predicted = to_f64(&lv.energy);
        if predicted > cutoff {
            continue;
        }
        if predicted < 0.0 {
            rows.push(Comparison { family: lv.family, p: lv.p, predicted, nearest: None, deviation: None, representable: false, matched: false });
            continue;
        }
        let nearest = numeric
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| (x.energy - predicted).abs().total_cmp(&(y.energy - predicted).abs()));
        let (nearest, deviation, matched) = match nearest {
            Some((i, n)) => {
                let dev = n.energy - predicted;
                let ok = dev.abs() <= tol;
                if ok {
                    used[i] = true;
                }
                (Some(n.energy), Some(dev), ok)
            }
            None => (None, None, false),
        };
        rows.push(Comparison { family: lv.family, p: lv.p, predicted, nearest, deviation, representable: true, matched });
    }
    let unmatched_numeric = numeric.iter().zip(&used).filter(|(_, u)| !**u).map(|(n, _)| n.energy).collect();
    CompareReport { rows, unmatched_numeric }
}

/// A solver run on a problem with a known lowest eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    pub name: &'static str,
    pub computed: f64,
    pub exact: f64,
    pub tolerance: f64,
}

impl Calibration {
    pub fn deviation(&self) -> f64 {
        self.computed - self.exact
    }

    pub fn passed(&self) -> bool {
        self.deviation().abs() <= self.tolerance
    }
}

/// Unit box (lowest level `pi^2/2`, 2000 interior points) and the oscillator
/// `y^2/8` (lowest level `1/4`, 4000 points on `[-12, 12]`).
pub fn calibrations(tol: f64) -> Result<Vec<Calibration>, SchrodingerError> {
    let boxed = lowest_eigenvalues(&discretize(|_| 0.0, &Grid1D::new(0.0, 1.0, 2000)?)?, 1, tol)[0];
    let osc = lowest_eigenvalues(&discretize(|y| y * y / 8.0, &Grid1D::new(-12.0, 12.0, 4000)?)?, 1, tol)[0];
    Ok(vec![
        Calibration { name: "box", computed: boxed, exact: std::f64::consts::PI.powi(2) / 2.0, tolerance: 1e-3 },
        Calibration { name: "harmonic", computed: osc, exact: 0.25, tolerance: 1e-4 },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_matrix_entries() {
        let t = discretize(|_| 0.0, &Grid1D::new(0.0, 1.0, 3).unwrap()).unwrap();
        assert_eq!(t.diagonal, vec![16.0; 3]);
        assert_eq!(t.offdiagonal, vec![-8.0; 2]);
    }

    #[test]
    fn node_on_barrier_is_an_error() {
        // spacing 1/2 puts a node at x = 1
        let g = Grid1D::new(-1.0, 2.0, 5).unwrap();
        assert_eq!(discretize(q5_x_potential(1.0), &g), Err(SchrodingerError::SingularPotential { x: 1.0 }));
    }

    #[test]
    fn invalid_grids() {
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
        assert!(Grid1D::new(0.0, 1.0, 2).is_err());
    }

    #[test]
    fn calibrations_pass() {
        assert!(calibrations(1e-12).unwrap().iter().all(Calibration::passed));
    }

    #[test]
    fn y_ladder() {
        assert_eq!((0..3).map(|j| y_level(1.0, j)).collect::<Vec<_>>(), vec![0.25, 0.75, 1.25]);
    }
}
