//! Grid functions, cube geometry, and cube families.
//!
//! A [`GridFunction`] is a real-valued sample per cell of a uniform 1D or 2D
//! grid; the value is treated as constant on the cell, so every integral in
//! the crate is an `h^n`-weighted cell sum. A [`Cube`] is a grid-aligned axis
//! cube addressed by anchor cell and side length in cells; a [`CubeFamily`]
//! is the set of cubes (scales × positions) over which all suprema run.
//!
//! Containment is by cell membership: a cube contains cell `x` iff `x` is
//! among its cells. This removes geometric boundary ambiguity.

mod io;
mod prefix;

pub use io::{format_grid, load_grid, parse_grid, save_grid, save_report};
pub use prefix::{build_prefix, window_average, window_sum, PrefixTable};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// How cubes interact with the grid boundary.
///
/// `InteriorOnly` (the default everywhere) admits only cubes that lie fully
/// inside the grid; `Clipped` admits any cube intersecting the grid and
/// weights it by the measure of the intersection. The clipped variant exists
/// for boundary-sensitivity studies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPolicy {
    InteriorOnly,
    Clipped,
}

impl BoundaryPolicy {
    pub fn label(self) -> &'static str {
        match self {
            BoundaryPolicy::InteriorOnly => "interior",
            BoundaryPolicy::Clipped => "clipped",
        }
    }
}

/// Real-valued samples on a uniform grid of dimension 1 or 2.
///
/// Internally the shape is always two-axis, with the second axis of extent 1
/// when `dim == 1`, so window arithmetic has a single code path. Samples are
/// row-major: flat index = `i0 * shape[1] + i1`. Immutable after
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    dim: usize,
    shape: [usize; 2],
    h: f64,
    origin: [f64; 2],
    samples: Vec<f64>,
}

impl GridFunction {
    /// 1D grid with cell size `h` and origin 0.
    pub fn new_1d(samples: Vec<f64>, h: f64) -> Result<Self> {
        let n = samples.len();
        Self::new(1, [n, 1], h, [0.0, 0.0], samples)
    }

    /// 2D grid of `n0` rows by `n1` columns, row-major samples, origin (0,0).
    pub fn new_2d(n0: usize, n1: usize, samples: Vec<f64>, h: f64) -> Result<Self> {
        Self::new(2, [n0, n1], h, [0.0, 0.0], samples)
    }

    pub fn new(
        dim: usize,
        shape: [usize; 2],
        h: f64,
        origin: [f64; 2],
        samples: Vec<f64>,
    ) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::validation(format!("dimension must be 1 or 2, got {dim}")));
        }
        if dim == 1 && shape[1] != 1 {
            return Err(Error::validation("1D grid must have second-axis extent 1"));
        }
        if shape[0] == 0 || shape[1] == 0 {
            return Err(Error::validation("grid shape entries must be >= 1"));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::validation(format!("cell size must be finite and > 0, got {h}")));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::validation("grid origin must be finite"));
        }
        if samples.len() != shape[0] * shape[1] {
            return Err(Error::validation(format!(
                "sample count {} does not match shape {:?}",
                samples.len(),
                &shape[..dim]
            )));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::validation(format!(
                "non-finite sample {} at flat index {i}",
                samples[i]
            )));
        }
        Ok(GridFunction { dim, shape, h, origin, samples })
    }

    /// Build from a function of the cell-center coordinate.
    pub fn from_fn(
        dim: usize,
        shape: &[usize],
        h: f64,
        origin: &[f64],
        mut f: impl FnMut(&[f64]) -> f64,
    ) -> Result<Self> {
        let (shape2, origin2) = pack_axes(dim, shape, origin)?;
        let mut samples = Vec::with_capacity(shape2[0] * shape2[1]);
        for i0 in 0..shape2[0] {
            for i1 in 0..shape2[1] {
                let x = [
                    origin2[0] + (i0 as f64 + 0.5) * h,
                    origin2[1] + (i1 as f64 + 0.5) * h,
                ];
                samples.push(f(&x[..dim]));
            }
        }
        Self::new(dim, shape2, h, origin2, samples)
    }

    pub fn with_origin(mut self, origin: &[f64]) -> Result<Self> {
        if origin.len() != self.dim {
            return Err(Error::validation("origin length must equal dimension"));
        }
        let mut o2 = [0.0, 0.0];
        o2[..self.dim].copy_from_slice(origin);
        if o2.iter().any(|o| !o.is_finite()) {
            return Err(Error::validation("grid origin must be finite"));
        }
        self.origin = o2;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cells per axis, `dim` entries.
    pub fn shape(&self) -> &[usize] {
        &self.shape[..self.dim]
    }

    /// Internal two-axis shape (second extent 1 in 1D).
    pub fn shape2(&self) -> [usize; 2] {
        self.shape
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin[..self.dim]
    }

    /// Internal two-axis origin (second entry 0 in 1D).
    pub fn origin2(&self) -> [f64; 2] {
        self.origin
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn flat(&self, cell: [usize; 2]) -> usize {
        cell[0] * self.shape[1] + cell[1]
    }

    pub fn cell_of(&self, flat: usize) -> [usize; 2] {
        [flat / self.shape[1], flat % self.shape[1]]
    }

    /// Coordinate of the center of a cell.
    pub fn cell_center(&self, cell: [usize; 2]) -> [f64; 2] {
        [
            self.origin[0] + (cell[0] as f64 + 0.5) * self.h,
            self.origin[1] + (cell[1] as f64 + 0.5) * self.h,
        ]
    }

    /// `h^dim`, the measure of one cell.
    pub fn cell_measure(&self) -> f64 {
        self.h.powi(self.dim as i32)
    }

    /// Measure of the whole grid domain.
    pub fn domain_measure(&self) -> f64 {
        self.cell_measure() * self.len() as f64
    }

    pub fn same_geometry(&self, other: &GridFunction) -> bool {
        self.dim == other.dim
            && self.shape == other.shape
            && self.h == other.h
            && self.origin == other.origin
    }

    fn check_same_geometry(&self, other: &GridFunction) -> Result<()> {
        if !self.same_geometry(other) {
            return Err(Error::validation(format!(
                "grid mismatch: {:?} (h={}) vs {:?} (h={})",
                self.shape(),
                self.h,
                other.shape(),
                other.h
            )));
        }
        Ok(())
    }

    /// Same geometry, transformed samples. The closure must produce finite
    /// values; construction re-validates.
    pub fn map(&self, f: impl FnMut(f64) -> f64) -> Result<GridFunction> {
        let samples = self.samples.iter().copied().map(f).collect();
        Self::new(self.dim, self.shape, self.h, self.origin, samples)
    }

    pub fn zip_with(&self, other: &GridFunction, mut f: impl FnMut(f64, f64) -> f64) -> Result<GridFunction> {
        self.check_same_geometry(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::new(self.dim, self.shape, self.h, self.origin, samples)
    }

    pub fn abs(&self) -> GridFunction {
        self.map(f64::abs).expect("abs preserves finiteness")
    }

    /// `f · χ_Q`: samples kept on the cube's cells, zero elsewhere.
    pub fn masked(&self, cube: &Cube) -> GridFunction {
        let mut samples = vec![0.0; self.samples.len()];
        if let Some(b) = cube.clipped_bounds(self) {
            for i0 in b[0].0..b[0].1 {
                for i1 in b[1].0..b[1].1 {
                    let ix = i0 * self.shape[1] + i1;
                    samples[ix] = self.samples[ix];
                }
            }
        }
        GridFunction { samples, ..self.clone() }
    }

    /// Indicator function of a cube (clipped to the grid).
    pub fn indicator(dim: usize, shape: &[usize], h: f64, cube: &Cube) -> Result<GridFunction> {
        let (shape2, origin2) = pack_axes(dim, shape, &vec![0.0; dim])?;
        let ones = GridFunction::new(dim, shape2, h, origin2, vec![1.0; shape2[0] * shape2[1]])?;
        Ok(ones.masked(cube))
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn pack_axes(dim: usize, shape: &[usize], origin: &[f64]) -> Result<([usize; 2], [f64; 2])> {
    if dim != 1 && dim != 2 {
        return Err(Error::validation(format!("dimension must be 1 or 2, got {dim}")));
    }
    if shape.len() != dim || origin.len() != dim {
        return Err(Error::validation(format!(
            "expected {dim} shape/origin entries, got {}/{}",
            shape.len(),
            origin.len()
        )));
    }
    let shape2 = if dim == 1 { [shape[0], 1] } else { [shape[0], shape[1]] };
    let origin2 = if dim == 1 { [origin[0], 0.0] } else { [origin[0], origin[1]] };
    Ok((shape2, origin2))
}

/// A grid-aligned axis cube: anchor cell plus side length in cells.
///
/// The anchor may be negative (a cube overhanging the boundary); whether such
/// a cube is usable depends on the [`BoundaryPolicy`] in force. In 1D the
/// second anchor entry is 0 and the cube spans one cell on the phantom axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cube {
    anchor: [i64; 2],
    side: usize,
}

impl Cube {
    pub fn new_1d(anchor: i64, side: usize) -> Cube {
        Cube { anchor: [anchor, 0], side }
    }

    pub fn new_2d(anchor: [i64; 2], side: usize) -> Cube {
        Cube { anchor, side }
    }

    pub fn anchor(&self) -> [i64; 2] {
        self.anchor
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Cells spanned along `axis` for a grid of dimension `dim`.
    pub fn extent(&self, axis: usize, dim: usize) -> usize {
        if axis < dim {
            self.side
        } else {
            1
        }
    }

    /// Nominal cell count `side^dim`.
    pub fn cell_count(&self, dim: usize) -> usize {
        self.side.pow(dim as u32)
    }

    /// Nominal measure `(side·h)^dim`.
    pub fn measure(&self, h: f64, dim: usize) -> f64 {
        (self.side as f64 * h).powi(dim as i32)
    }

    /// True iff the cube lies fully inside the grid.
    pub fn is_interior(&self, grid: &GridFunction) -> bool {
        let shape = grid.shape2();
        (0..2).all(|a| {
            let ext = self.extent(a, grid.dim()) as i64;
            self.anchor[a] >= 0 && self.anchor[a] + ext <= shape[a] as i64
        })
    }

    /// Half-open per-axis bounds of the intersection with a grid of the
    /// given two-axis shape, or `None` when the intersection is empty.
    pub fn clip(&self, shape: [usize; 2], dim: usize) -> Option<[(usize, usize); 2]> {
        let mut out = [(0usize, 0usize); 2];
        for a in 0..2 {
            let lo = self.anchor[a].max(0);
            let hi = (self.anchor[a] + self.extent(a, dim) as i64).min(shape[a] as i64);
            if lo >= hi {
                return None;
            }
            out[a] = (lo as usize, hi as usize);
        }
        Some(out)
    }

    /// Half-open per-axis bounds of the intersection with the grid, or `None`
    /// when the intersection is empty.
    pub fn clipped_bounds(&self, grid: &GridFunction) -> Option<[(usize, usize); 2]> {
        self.clip(grid.shape2(), grid.dim())
    }

    /// Cells of the intersection with the grid.
    pub fn clipped_cell_count(&self, grid: &GridFunction) -> usize {
        match self.clipped_bounds(grid) {
            Some(b) => (b[0].1 - b[0].0) * (b[1].1 - b[1].0),
            None => 0,
        }
    }

    /// Measure used in averages under the given policy: the nominal measure
    /// for interior cubes, the intersection measure under clipping.
    pub fn effective_measure(&self, grid: &GridFunction, policy: BoundaryPolicy) -> Result<f64> {
        match policy {
            BoundaryPolicy::InteriorOnly => {
                if !self.is_interior(grid) {
                    return Err(Error::validation(format!(
                        "cube {:?} is not interior to grid {:?}",
                        self,
                        grid.shape()
                    )));
                }
                Ok(self.measure(grid.h(), grid.dim()))
            }
            BoundaryPolicy::Clipped => {
                let cells = self.clipped_cell_count(grid);
                if cells == 0 {
                    return Err(Error::validation(format!(
                        "cube {:?} does not intersect grid {:?}",
                        self,
                        grid.shape()
                    )));
                }
                Ok(grid.cell_measure() * cells as f64)
            }
        }
    }

    /// Whether the cube's cell set includes `cell`.
    pub fn contains(&self, cell: [usize; 2], dim: usize) -> bool {
        (0..2).all(|a| {
            let c = cell[a] as i64;
            c >= self.anchor[a] && c < self.anchor[a] + self.extent(a, dim) as i64
        })
    }

    /// Flat indices of the intersection cells, row-major.
    pub fn cells<'g>(&self, grid: &'g GridFunction) -> impl Iterator<Item = usize> + 'g {
        let bounds = self.clipped_bounds(grid);
        let n1 = grid.shape2()[1];
        bounds
            .into_iter()
            .flat_map(move |b| (b[0].0..b[0].1).flat_map(move |i0| (b[1].0..b[1].1).map(move |i1| i0 * n1 + i1)))
    }

    /// Anchor truncated to the grid dimension, for descriptors.
    pub fn anchor_vec(&self, dim: usize) -> Vec<i64> {
        self.anchor[..dim].to_vec()
    }
}

/// The set of cubes over which suprema run: a list of side lengths (scales)
/// at every admissible position under a boundary policy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubeFamily {
    scales: Vec<usize>,
    boundary: BoundaryPolicy,
}

impl CubeFamily {
    /// Scales are sorted and deduplicated; each must be ≥ 1.
    pub fn new(mut scales: Vec<usize>, boundary: BoundaryPolicy) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::validation("cube family needs at least one scale"));
        }
        if scales.contains(&0) {
            return Err(Error::validation("cube scales must be >= 1"));
        }
        scales.sort_unstable();
        scales.dedup();
        Ok(CubeFamily { scales, boundary })
    }

    /// The default family: every scale `1..=max_scale`.
    pub fn up_to(max_scale: usize, boundary: BoundaryPolicy) -> Result<Self> {
        Self::new((1..=max_scale).collect(), boundary)
    }

    pub fn scales(&self) -> &[usize] {
        &self.scales
    }

    pub fn max_scale(&self) -> usize {
        *self.scales.last().expect("family is never empty")
    }

    pub fn boundary(&self) -> BoundaryPolicy {
        self.boundary
    }

    /// Valid anchor range (inclusive) along one axis for side `k`, or `None`
    /// if no position exists.
    pub(crate) fn anchor_span(&self, k: usize, extent: usize) -> Option<(i64, i64)> {
        match self.boundary {
            BoundaryPolicy::InteriorOnly => {
                if k > extent {
                    None
                } else {
                    Some((0, (extent - k) as i64))
                }
            }
            // Any anchor whose cube intersects [0, extent).
            BoundaryPolicy::Clipped => Some((1 - k as i64, extent as i64 - 1)),
        }
    }

    /// Anchor range (inclusive) along one axis for cubes of side `k`
    /// containing coordinate `x`, or `None` if there is none.
    fn anchor_span_containing(&self, k: usize, x: usize, extent: usize) -> Option<(i64, i64)> {
        let (lo, hi) = self.anchor_span(k, extent)?;
        let lo = lo.max(x as i64 - k as i64 + 1);
        let hi = hi.min(x as i64);
        if lo <= hi {
            Some((lo, hi))
        } else {
            None
        }
    }

    /// Every family cube on the grid, scales ascending then anchors
    /// lexicographic — a deterministic order suprema and argmaxes rely on.
    pub fn cubes(&self, grid: &GridFunction) -> Vec<Cube> {
        let dim = grid.dim();
        let shape = grid.shape2();
        let mut out = Vec::new();
        for &k in &self.scales {
            let span0 = match self.anchor_span(k, shape[0]) {
                Some(s) => s,
                None => continue,
            };
            let span1 = if dim == 2 {
                match self.anchor_span(k, shape[1]) {
                    Some(s) => s,
                    None => continue,
                }
            } else {
                (0, 0)
            };
            for a0 in span0.0..=span0.1 {
                for a1 in span1.0..=span1.1 {
                    out.push(Cube { anchor: [a0, a1], side: k });
                }
            }
        }
        out
    }

    /// Visit every family cube whose cell set includes `cell`, in the same
    /// deterministic order as [`CubeFamily::cubes`] (scales ascending,
    /// anchors lexicographic). Allocation-free inner loop for the reference
    /// operator paths.
    pub fn for_each_containing(
        &self,
        cell: [usize; 2],
        grid: &GridFunction,
        mut visit: impl FnMut(Cube),
    ) -> Result<()> {
        let dim = grid.dim();
        let shape = grid.shape2();
        if cell[0] >= shape[0] || cell[1] >= shape[1] {
            return Err(Error::validation(format!(
                "cell {:?} outside grid {:?}",
                &cell[..dim],
                grid.shape()
            )));
        }
        for &k in &self.scales {
            let span0 = match self.anchor_span_containing(k, cell[0], shape[0]) {
                Some(s) => s,
                None => continue,
            };
            let span1 = if dim == 2 {
                match self.anchor_span_containing(k, cell[1], shape[1]) {
                    Some(s) => s,
                    None => continue,
                }
            } else {
                (0, 0)
            };
            for a0 in span0.0..=span0.1 {
                for a1 in span1.0..=span1.1 {
                    visit(Cube { anchor: [a0, a1], side: k });
                }
            }
        }
        Ok(())
    }

    /// Every family cube whose cell set includes `cell`, in the same
    /// deterministic order as [`CubeFamily::cubes`].
    pub fn cubes_containing(&self, cell: [usize; 2], grid: &GridFunction) -> Result<Vec<Cube>> {
        let mut out = Vec::new();
        self.for_each_containing(cell, grid, |q| out.push(q))?;
        Ok(out)
    }
}
