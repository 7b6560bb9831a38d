//! Uniform Cartesian grid geometry, cell-centered field storage and
//! elementwise/stencil field algebra.
//!
//! Storage order is axis-major with the x index fastest: in 2-D
//! `flat = j*n + i`, in 3-D `flat = (k*n + j)*n + i`. This matches the
//! ordering of VTK structured-points output and is fixed so that repeated
//! runs produce bit-identical files.
//!
//! Derivatives use second-order central differences at interior cells and
//! one-sided second-order stencils in the single boundary cell layer, so
//! curvature stays evaluable everywhere without ghost values.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_DIM: usize = 3;

/// Uniform Cartesian grid over an axis-aligned box with the same number of
/// cells and the same extent along every axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    n: usize,
    origin: [f64; MAX_DIM],
    extent: f64,
}

impl GridSpec {
    /// Build a grid with `n` cells per axis over the box `[lo, hi]^dim`.
    ///
    /// Rejects `dim` outside {2, 3}, non-positive or unequal extents and
    /// `n < 8`.
    pub fn new(dim: usize, n: usize, lo: &[f64], hi: &[f64]) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::Grid(format!("dim must be 2 or 3, got {dim}")));
        }
        if n < 8 {
            return Err(Error::Grid(format!("need at least 8 cells per axis, got {n}")));
        }
        if lo.len() < dim || hi.len() < dim {
            return Err(Error::Grid("box bounds shorter than dim".into()));
        }
        let extent = hi[0] - lo[0];
        if extent <= 0.0 {
            return Err(Error::Grid(format!("non-positive extent {extent}")));
        }
        let mut origin = [0.0; MAX_DIM];
        for a in 0..dim {
            if hi[a] - lo[a] != extent {
                return Err(Error::Grid("extent must be equal on all axes".into()));
            }
            origin[a] = lo[a];
        }
        // n^dim must be addressable
        let cells = (n as u128).pow(dim as u32);
        if cells > usize::MAX as u128 {
            return Err(Error::Grid("cell count overflows".into()));
        }
        Ok(Self { dim, n, origin, extent })
    }

    /// The paper-style domain `[-0.5, 0.5]^dim`.
    pub fn unit_centered(dim: usize, n: usize) -> Result<Self> {
        Self::new(dim, n, &[-0.5; MAX_DIM], &[0.5; MAX_DIM])
    }

    /// Unchecked constructor for internal coarse levels (multigrid).
    pub(crate) fn with_cells(dim: usize, n: usize, origin: [f64; MAX_DIM], extent: f64) -> Self {
        Self { dim, n, origin, extent }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells_per_axis(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> [f64; MAX_DIM] {
        self.origin
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Cell width, `extent / n` exactly.
    pub fn h(&self) -> f64 {
        self.extent / self.n as f64
    }

    pub fn cell_count(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Measure of the whole domain.
    pub fn volume(&self) -> f64 {
        self.extent.powi(self.dim as i32)
    }

    /// Measure of one cell, `h^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.h().powi(self.dim as i32)
    }

    /// Linear stride of `axis` in the flat layout.
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow(axis as u32)
    }

    /// Multi-index of a flat cell index (unused axes are 0).
    pub fn coords(&self, flat: usize) -> [usize; MAX_DIM] {
        let mut c = [0usize; MAX_DIM];
        let mut rest = flat;
        for a in 0..self.dim {
            c[a] = rest % self.n;
            rest /= self.n;
        }
        c
    }

    pub fn flat(&self, coords: &[usize]) -> usize {
        let mut idx = 0usize;
        for a in (0..self.dim).rev() {
            idx = idx * self.n + coords[a];
        }
        idx
    }

    /// Physical coordinates of a cell center.
    pub fn center(&self, flat: usize) -> [f64; MAX_DIM] {
        let c = self.coords(flat);
        let h = self.h();
        let mut x = [0.0; MAX_DIM];
        for a in 0..self.dim {
            x[a] = self.origin[a] + (c[a] as f64 + 0.5) * h;
        }
        x
    }

    /// True when the cell touches the domain boundary along any axis.
    pub fn is_boundary_cell(&self, flat: usize) -> bool {
        let c = self.coords(flat);
        (0..self.dim).any(|a| c[a] == 0 || c[a] == self.n - 1)
    }

    /// Grid with half the cells per axis over the same box.
    pub(crate) fn coarsened(&self) -> GridSpec {
        debug_assert!(self.n % 2 == 0);
        GridSpec::with_cells(self.dim, self.n / 2, self.origin, self.extent)
    }
}

/// Cell-centered scalar field.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    data: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, data: vec![0.0; grid.cell_count()] }
    }

    pub fn constant(grid: GridSpec, value: f64) -> Self {
        Self { grid, data: vec![value; grid.cell_count()] }
    }

    /// Sample a function of the cell-center coordinates.
    pub fn from_fn(grid: GridSpec, f: impl Fn(&[f64]) -> f64) -> Self {
        let mut data = Vec::with_capacity(grid.cell_count());
        for i in 0..grid.cell_count() {
            let x = grid.center(i);
            data.push(f(&x[..grid.dim()]));
        }
        Self { grid, data }
    }

    pub fn from_vec(grid: GridSpec, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), grid.cell_count(), "field length does not match grid");
        Self { grid, data }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        ScalarField { grid: self.grid, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_map(&self, other: &ScalarField, f: impl Fn(f64, f64) -> f64) -> ScalarField {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        ScalarField { grid: self.grid, data }
    }

    /// `self += alpha * other`
    pub fn axpy(&mut self, alpha: f64, other: &ScalarField) {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    pub fn scale(&mut self, alpha: f64) {
        for a in self.data.iter_mut() {
            *a *= alpha;
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Plain Euclidean norm of the coefficient vector.
    pub fn norm_l2(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Duality pairing `h^dim * sum(self * other)`.
    pub fn inner_h(&self, other: &ScalarField) -> f64 {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let s: f64 = self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum();
        s * self.grid.cell_volume()
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Cell-centered vector field stored as one component array per axis.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    grid: GridSpec,
    comps: Vec<Vec<f64>>,
}

impl VectorField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, comps: vec![vec![0.0; grid.cell_count()]; grid.dim()] }
    }

    pub fn from_components(grid: GridSpec, comps: Vec<Vec<f64>>) -> Self {
        assert_eq!(comps.len(), grid.dim(), "component count must equal dim");
        for c in &comps {
            assert_eq!(c.len(), grid.cell_count(), "component length mismatch");
        }
        Self { grid, comps }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, axis: usize) -> &[f64] {
        &self.comps[axis]
    }

    pub fn comp_mut(&mut self, axis: usize) -> &mut [f64] {
        &mut self.comps[axis]
    }

    /// Vector value at one cell (unused axes 0).
    pub fn at(&self, flat: usize) -> [f64; MAX_DIM] {
        let mut v = [0.0; MAX_DIM];
        for (a, c) in self.comps.iter().enumerate() {
            v[a] = c[flat];
        }
        v
    }

    /// Pointwise dot product with another vector field.
    pub fn dot(&self, other: &VectorField) -> ScalarField {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        let mut out = ScalarField::zeros(self.grid);
        for a in 0..self.dim() {
            for (o, (x, y)) in out.data_mut().iter_mut().zip(self.comps[a].iter().zip(&other.comps[a])) {
                *o += x * y;
            }
        }
        out
    }

    /// Multiply every component by a scalar field.
    pub fn scaled_by(&self, s: &ScalarField) -> VectorField {
        assert_eq!(self.grid, s.grid(), "grid mismatch");
        let comps = self
            .comps
            .iter()
            .map(|c| c.iter().zip(s.data()).map(|(v, w)| v * w).collect())
            .collect();
        VectorField { grid: self.grid, comps }
    }

    pub fn all_finite(&self) -> bool {
        self.comps.iter().all(|c| c.iter().all(|v| v.is_finite()))
    }
}

/// Symmetric per-cell d x d matrix field (the Hessian). Components are stored
/// in lexicographic upper-triangle order: 2-D `[xx, xy, yy]`,
/// 3-D `[xx, xy, xz, yy, yz, zz]`.
#[derive(Debug, Clone)]
pub struct SymTensorField {
    grid: GridSpec,
    comps: Vec<Vec<f64>>,
}

impl SymTensorField {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    fn comp_index(dim: usize, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        // offset of row a in the packed upper triangle
        let offset: usize = (0..a).map(|r| dim - r).sum();
        offset + (b - a)
    }

    /// Component `(a, b)` of the symmetric matrix at every cell.
    pub fn comp(&self, a: usize, b: usize) -> &[f64] {
        &self.comps[Self::comp_index(self.grid.dim(), a, b)]
    }
}

/// First derivative along `axis`: central in the interior, one-sided
/// 3-point second-order stencils in the boundary layer.
pub fn axis_derivative(f: &ScalarField, axis: usize) -> ScalarField {
    let grid = f.grid();
    let n = grid.cells_per_axis();
    let s = grid.stride(axis);
    let inv2h = 1.0 / (2.0 * grid.h());
    let v = f.data();
    let mut out = vec![0.0; v.len()];
    for i in 0..v.len() {
        let p = (i / s) % n;
        out[i] = if p == 0 {
            (-3.0 * v[i] + 4.0 * v[i + s] - v[i + 2 * s]) * inv2h
        } else if p == n - 1 {
            (3.0 * v[i] - 4.0 * v[i - s] + v[i - 2 * s]) * inv2h
        } else {
            (v[i + s] - v[i - s]) * inv2h
        };
    }
    ScalarField::from_vec(grid, out)
}

/// Exact transpose of [`axis_derivative`] as a linear map: for all fields
/// `u, v`: `sum(axis_derivative(u) * v) == sum(u * axis_derivative_adjoint(v))`.
pub fn axis_derivative_adjoint(f: &ScalarField, axis: usize) -> ScalarField {
    let grid = f.grid();
    let n = grid.cells_per_axis();
    let s = grid.stride(axis);
    let inv2h = 1.0 / (2.0 * grid.h());
    let v = f.data();
    let mut out = vec![0.0; v.len()];
    for i in 0..v.len() {
        let w = v[i] * inv2h;
        if w == 0.0 {
            continue;
        }
        let p = (i / s) % n;
        if p == 0 {
            out[i] += -3.0 * w;
            out[i + s] += 4.0 * w;
            out[i + 2 * s] += -w;
        } else if p == n - 1 {
            out[i] += 3.0 * w;
            out[i - s] += -4.0 * w;
            out[i - 2 * s] += w;
        } else {
            out[i + s] += w;
            out[i - s] += -w;
        }
    }
    ScalarField::from_vec(grid, out)
}

/// Second derivative along `axis` (central; 4-point one-sided second-order
/// closure at the boundary layer).
pub fn axis_second_derivative(f: &ScalarField, axis: usize) -> ScalarField {
    let grid = f.grid();
    let n = grid.cells_per_axis();
    let s = grid.stride(axis);
    let invh2 = 1.0 / (grid.h() * grid.h());
    let v = f.data();
    let mut out = vec![0.0; v.len()];
    for i in 0..v.len() {
        let p = (i / s) % n;
        out[i] = if p == 0 {
            (2.0 * v[i] - 5.0 * v[i + s] + 4.0 * v[i + 2 * s] - v[i + 3 * s]) * invh2
        } else if p == n - 1 {
            (2.0 * v[i] - 5.0 * v[i - s] + 4.0 * v[i - 2 * s] - v[i - 3 * s]) * invh2
        } else {
            (v[i - s] - 2.0 * v[i] + v[i + s]) * invh2
        };
    }
    ScalarField::from_vec(grid, out)
}

/// Cell-centered gradient.
pub fn gradient(u: &ScalarField) -> VectorField {
    let grid = u.grid();
    let comps = (0..grid.dim()).map(|a| axis_derivative(u, a).data().to_vec()).collect();
    VectorField::from_components(grid, comps)
}

/// Divergence built from the same per-axis stencils as [`gradient`].
pub fn divergence(v: &VectorField) -> ScalarField {
    let grid = v.grid();
    let mut out = ScalarField::zeros(grid);
    for a in 0..grid.dim() {
        let f = ScalarField::from_vec(grid, v.comp(a).to_vec());
        out.axpy(1.0, &axis_derivative(&f, a));
    }
    out
}

/// Adjoint of [`gradient`]: `sum_a D_a^T v_a`. Satisfies
/// `sum(gradient(u).v) == sum(u * gradient_adjoint(v))` exactly.
pub fn gradient_adjoint(v: &VectorField) -> ScalarField {
    let grid = v.grid();
    let mut out = ScalarField::zeros(grid);
    for a in 0..grid.dim() {
        let f = ScalarField::from_vec(grid, v.comp(a).to_vec());
        out.axpy(1.0, &axis_derivative_adjoint(&f, a));
    }
    out
}

/// Adjoint of [`divergence`]: component `a` is `D_a^T f`.
pub fn divergence_adjoint(f: &ScalarField) -> VectorField {
    let grid = f.grid();
    let comps = (0..grid.dim()).map(|a| axis_derivative_adjoint(f, a).data().to_vec()).collect();
    VectorField::from_components(grid, comps)
}

/// Per-cell symmetric Hessian; mixed derivatives by composing the first
/// derivative stencils, which commute across axes, so the result is
/// symmetric by construction.
pub fn hessian(u: &ScalarField) -> SymTensorField {
    let grid = u.grid();
    let dim = grid.dim();
    let first: Vec<ScalarField> = (0..dim).map(|a| axis_derivative(u, a)).collect();
    let mut comps = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            let c = if a == b {
                axis_second_derivative(u, a)
            } else {
                axis_derivative(&first[a], b)
            };
            comps.push(c.data().to_vec());
        }
    }
    SymTensorField { grid, comps }
}

/// Midpoint-rule volume integral, optionally restricted by a {0,1} indicator.
pub fn integrate(f: &ScalarField, region: Option<&ScalarField>) -> f64 {
    let sum: f64 = match region {
        Some(ind) => {
            assert_eq!(f.grid(), ind.grid(), "grid mismatch");
            debug_assert!(ind.data().iter().all(|&v| v == 0.0 || v == 1.0), "indicator must be 0/1");
            f.data().iter().zip(ind.data()).map(|(a, b)| a * b).sum()
        }
        None => f.data().iter().sum(),
    };
    sum * f.grid().cell_volume()
}

/// Smooth deterministic pseudo-random field: a few low-frequency cosine
/// modes with seeded coefficients, normalized to unit max-norm. Used as a
/// perturbation direction in gradient checks.
pub fn smooth_random_field(grid: GridSpec, seed: u64, max_freq: u32) -> ScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = grid.dim();
    let nmodes = 6;
    let mut modes = Vec::new();
    for _ in 0..nmodes {
        let k: Vec<f64> = (0..dim).map(|_| rng.gen_range(1..=max_freq.max(1)) as f64).collect();
        let phase: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        let ksq: f64 = k.iter().map(|v| v * v).sum();
        let amp = rng.gen_range(-1.0..1.0) / (1.0 + ksq);
        modes.push((k, phase, amp));
    }
    let lo = grid.origin();
    let ext = grid.extent();
    let mut f = ScalarField::from_fn(grid, |x| {
        let mut v = 0.0;
        for (k, phase, amp) in &modes {
            let mut term = *amp;
            for a in 0..dim {
                let xi = (x[a] - lo[a]) / ext;
                term *= (std::f64::consts::PI * k[a] * xi + phase[a]).cos();
            }
            v += term;
        }
        v
    });
    let m = f.norm_inf();
    if m > 0.0 {
        f.scale(1.0 / m);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn grid_construction_matches_presets() {
        let g = GridSpec::new(2, 256, &[-0.5, -0.5], &[0.5, 0.5]).unwrap();
        assert_eq!(g.h(), 1.0 / 256.0);
        let g = GridSpec::new(2, 8, &[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(g.h(), 0.125);
        let g = GridSpec::new(3, 32, &[-0.5; 3], &[0.5; 3]).unwrap();
        assert_eq!(g.cell_count(), 32768);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(GridSpec::new(1, 64, &[0.0], &[1.0]).is_err());
        assert!(GridSpec::new(4, 64, &[0.0; 4], &[1.0; 4]).is_err());
        assert!(GridSpec::new(2, 64, &[0.0, 0.0], &[-1.0, -1.0]).is_err());
        assert!(GridSpec::new(2, 64, &[0.0, 0.0], &[1.0, 2.0]).is_err());
        assert!(GridSpec::new(2, 4, &[0.0, 0.0], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn indexing_round_trips() {
        let g = GridSpec::unit_centered(3, 8).unwrap();
        for flat in [0usize, 1, 7, 8, 63, 64, 511] {
            let c = g.coords(flat);
            assert_eq!(g.flat(&c[..3]), flat);
        }
        assert_eq!(g.stride(0), 1);
        assert_eq!(g.stride(1), 8);
        assert_eq!(g.stride(2), 64);
    }

    #[test]
    fn gradient_of_linear_field_is_exact_everywhere() {
        let g = GridSpec::unit_centered(2, 64).unwrap();
        let u = ScalarField::from_fn(g, |x| x[0]);
        let grad = gradient(&u);
        for i in 0..g.cell_count() {
            assert_relative_eq!(grad.comp(0)[i], 1.0, max_relative = 1e-12);
            assert!(grad.comp(1)[i].abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_of_quadratic_matches_analytic() {
        let g = GridSpec::unit_centered(2, 64).unwrap();
        let u = ScalarField::from_fn(g, |x| x[0] * x[0] + x[1] * x[1]);
        let grad = gradient(&u);
        for i in 0..g.cell_count() {
            let x = g.center(i);
            assert_relative_eq!(grad.comp(0)[i], 2.0 * x[0], epsilon = 1e-10);
            assert_relative_eq!(grad.comp(1)[i], 2.0 * x[1], epsilon = 1e-10);
        }
    }

    #[test]
    fn gradient_of_constant_is_zero() {
        let g = GridSpec::unit_centered(3, 8).unwrap();
        let u = ScalarField::constant(g, 4.2);
        let grad = gradient(&u);
        for a in 0..3 {
            assert!(grad.comp(a).iter().all(|&v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn gradient_second_order_on_smooth_field() {
        let pi = std::f64::consts::PI;
        let err = |n: usize| {
            let g = GridSpec::unit_centered(2, n).unwrap();
            let u = ScalarField::from_fn(g, |x| (pi * x[0]).sin() * (pi * x[1]).sin());
            let grad = gradient(&u);
            let mut emax: f64 = 0.0;
            for i in 0..g.cell_count() {
                if g.is_boundary_cell(i) {
                    continue;
                }
                let x = g.center(i);
                let exact = pi * (pi * x[0]).cos() * (pi * x[1]).sin();
                emax = emax.max((grad.comp(0)[i] - exact).abs());
            }
            emax
        };
        let e64 = err(64);
        let e128 = err(128);
        let ratio = e64 / e128;
        assert!(ratio > 3.4 && ratio < 4.6, "expected O(h^2), got ratio {ratio}");
    }

    #[test]
    fn hessian_of_quadratics_is_exact() {
        let g = GridSpec::unit_centered(2, 32).unwrap();
        let u = ScalarField::from_fn(g, |x| x[0] * x[0]);
        let h = hessian(&u);
        for i in 0..g.cell_count() {
            assert_relative_eq!(h.comp(0, 0)[i], 2.0, epsilon = 1e-9);
            assert!(h.comp(0, 1)[i].abs() < 1e-9);
            assert!(h.comp(1, 1)[i].abs() < 1e-9);
        }
        let u = ScalarField::from_fn(g, |x| x[0] * x[1]);
        let h = hessian(&u);
        for i in 0..g.cell_count() {
            assert_relative_eq!(h.comp(0, 1)[i], 1.0, epsilon = 1e-9);
            assert_relative_eq!(h.comp(1, 0)[i], 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn hessian_second_order_on_smooth_field() {
        let pi = std::f64::consts::PI;
        let err = |n: usize| {
            let g = GridSpec::unit_centered(2, n).unwrap();
            let u = ScalarField::from_fn(g, |x| (pi * x[0]).sin() * (pi * x[1]).sin());
            let h = hessian(&u);
            let mut emax: f64 = 0.0;
            for i in 0..g.cell_count() {
                if g.is_boundary_cell(i) {
                    continue;
                }
                let x = g.center(i);
                let exact = -pi * pi * (pi * x[0]).sin() * (pi * x[1]).sin();
                emax = emax.max((h.comp(0, 0)[i] - exact).abs());
            }
            emax
        };
        let ratio = err(64) / err(128);
        assert!(ratio > 3.3 && ratio < 4.8, "expected O(h^2), got ratio {ratio}");
    }

    #[test]
    fn integrate_examples() {
        let g = GridSpec::unit_centered(2, 256).unwrap();
        assert_eq!(integrate(&ScalarField::constant(g, 1.0), None), 1.0);
        assert_relative_eq!(integrate(&ScalarField::constant(g, 0.5), None), 0.5, epsilon = 1e-14);
        let f = ScalarField::from_fn(g, |x| x[0]);
        assert!(integrate(&f, None).abs() < 1e-13);
    }

    #[test]
    fn integrate_with_indicator_is_monotone() {
        let g = GridSpec::unit_centered(2, 32).unwrap();
        let f = ScalarField::constant(g, 1.0);
        let small = ScalarField::from_fn(g, |x| if x[0].abs() < 0.1 { 1.0 } else { 0.0 });
        let big = ScalarField::from_fn(g, |x| if x[0].abs() < 0.3 { 1.0 } else { 0.0 });
        assert!(integrate(&f, Some(&small)) <= integrate(&f, Some(&big)));
    }

    #[test]
    fn derivative_adjoint_is_exact_transpose() {
        let g = GridSpec::unit_centered(2, 16).unwrap();
        for axis in 0..2 {
            let u = smooth_random_field(g, 7 + axis as u64, 3);
            let v = smooth_random_field(g, 99 + axis as u64, 3);
            let lhs: f64 =
                axis_derivative(&u, axis).data().iter().zip(v.data()).map(|(a, b)| a * b).sum();
            let rhs: f64 =
                u.data().iter().zip(axis_derivative_adjoint(&v, axis).data()).map(|(a, b)| a * b).sum();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn gradient_divergence_adjoint_pairs() {
        let g = GridSpec::unit_centered(3, 8).unwrap();
        let u = smooth_random_field(g, 3, 2);
        let mut v = VectorField::zeros(g);
        for a in 0..3 {
            let c = smooth_random_field(g, 40 + a as u64, 2);
            v.comp_mut(a).copy_from_slice(c.data());
        }
        let lhs: f64 = (0..3)
            .map(|a| {
                gradient(&u).comp(a).iter().zip(v.comp(a)).map(|(x, y)| x * y).sum::<f64>()
            })
            .sum();
        let rhs: f64 = u.data().iter().zip(gradient_adjoint(&v).data()).map(|(a, b)| a * b).sum();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);

        let f = smooth_random_field(g, 11, 2);
        let lhs2: f64 = divergence(&v).data().iter().zip(f.data()).map(|(a, b)| a * b).sum();
        let rhs2: f64 = (0..3)
            .map(|a| {
                v.comp(a).iter().zip(divergence_adjoint(&f).comp(a)).map(|(x, y)| x * y).sum::<f64>()
            })
            .sum();
        assert_relative_eq!(lhs2, rhs2, max_relative = 1e-12);
    }

    proptest! {
        #[test]
        fn gradient_is_linear(seed_a in 0u64..1000, seed_b in 1000u64..2000,
                              alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
            let g = GridSpec::unit_centered(2, 16).unwrap();
            let u = smooth_random_field(g, seed_a, 3);
            let v = smooth_random_field(g, seed_b, 3);
            let mut combo = u.clone();
            combo.scale(alpha);
            combo.axpy(beta, &v);
            let lhs = gradient(&combo);
            let gu = gradient(&u);
            let gv = gradient(&v);
            for a in 0..2 {
                for i in 0..g.cell_count() {
                    let rhs = alpha * gu.comp(a)[i] + beta * gv.comp(a)[i];
                    prop_assert!((lhs.comp(a)[i] - rhs).abs() <= 1e-11 * (1.0 + rhs.abs()));
                }
            }
        }

        #[test]
        fn integrate_is_linear(seed in 0u64..500, alpha in -2.0f64..2.0) {
            let g = GridSpec::unit_centered(2, 16).unwrap();
            let u = smooth_random_field(g, seed, 3);
            let mut au = u.clone();
            au.scale(alpha);
            let lhs = integrate(&au, None);
            let rhs = alpha * integrate(&u, None);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
        }
    }
}
