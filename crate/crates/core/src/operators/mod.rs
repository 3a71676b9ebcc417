//! Maximal-type operators and their commutators.
//!
//! All operators share one convention: suprema run over the cubes of a
//! [`CubeFamily`] containing the evaluation cell, integrals are `h^n`-weighted
//! cell sums read from compensated prefix tables, and the fractional weight
//! of a cube is `|Q|^{α/n−1}`. Each operator exists in a brute-force
//! reference form ([`maximal`]) and, where the kernel allows it, an
//! accelerated form ([`maximal_fast`], [`sharp_maximal`]) that computes one
//! value per window and distributes per-cell maxima with sliding-window
//! passes. Reference and fast paths evaluate the identical expression per
//! cube — same prefix table, same weight helper — so they agree bitwise, not
//! just approximately.
//!
//! The commutator with kernel `|b(x)−b(y)|` has no separable structure and
//! ships brute-force only; see [`maximal_commutator`].

mod sliding;

use crate::error::{Error, Result};
use crate::grid::{build_prefix, BoundaryPolicy, Cube, CubeFamily, GridFunction};
use rayon::prelude::*;
use sliding::cover_max_into;

/// Fractional order α together with the cube family of the supremum.
///
/// α is validated against the grid dimension at call time (`0 ≤ α < n`), not
/// at construction, so one params value can serve grids of either dimension
/// when α permits.
#[derive(Clone, Debug)]
pub struct OperatorParams {
    pub alpha: f64,
    pub family: CubeFamily,
}

impl OperatorParams {
    pub fn new(alpha: f64, family: CubeFamily) -> Result<Self> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::validation(format!(
                "fractional order must be finite and >= 0, got {alpha}"
            )));
        }
        Ok(OperatorParams { alpha, family })
    }

    fn validate_for(&self, grid: &GridFunction) -> Result<()> {
        if self.alpha >= grid.dim() as f64 {
            return Err(Error::validation(format!(
                "fractional order {} must be < grid dimension {}",
                self.alpha,
                grid.dim()
            )));
        }
        Ok(())
    }
}

/// The nonnegative parts of a symbol: `b = b_plus − b_minus`,
/// `|b| = b_plus + b_minus`, both exactly, cellwise.
#[derive(Clone, Debug)]
pub struct SignedDecomposition {
    pub b_minus: GridFunction,
    pub b_plus: GridFunction,
}

/// `b_minus(x) = |b(x)|` where `b(x) < 0`, else `0`; `b_plus = |b| − b_minus`.
pub fn decompose_sign(b: &GridFunction) -> SignedDecomposition {
    let b_minus = b
        .map(|v| if v < 0.0 { -v } else { 0.0 })
        .expect("negation preserves finiteness");
    let b_plus = b
        .map(|v| if v < 0.0 { 0.0 } else { v })
        .expect("truncation preserves finiteness");
    SignedDecomposition { b_minus, b_plus }
}

/// `|Q|^{α/n−1} · h^n`: the factor turning a window cell sum into the
/// fractional average. α = 0 avoids `powf` so plain averages divide exactly.
/// Every operator path computes per-cube values through this one helper, with
/// the same measure expression per boundary policy, which is what makes the
/// reference and fast implementations agree bitwise.
#[inline]
fn scale_weight(measure: f64, hn: f64, dim: usize, alpha: f64) -> f64 {
    if alpha == 0.0 {
        hn / measure
    } else {
        measure.powf(alpha / dim as f64 - 1.0) * hn
    }
}

/// Nominal measure of a side-`k` cube, shared expression for weight caching.
#[inline]
fn nominal_measure(k: usize, h: f64, dim: usize) -> f64 {
    (k as f64 * h).powi(dim as i32)
}

fn cube_at(a0: i64, a1: i64, k: usize, dim: usize) -> Cube {
    if dim == 1 {
        Cube::new_1d(a0, k)
    } else {
        Cube::new_2d([a0, a1], k)
    }
}

/// Inclusive anchor coordinate spans of scale `k` on the grid, per axis
/// (`None` when the scale admits no position, e.g. larger than an
/// interior-only grid axis).
fn scale_spans(family: &CubeFamily, grid: &GridFunction, k: usize) -> Option<[(i64, i64); 2]> {
    let dim = grid.dim();
    let shape = grid.shape2();
    let s0 = family.anchor_span(k, shape[0])?;
    let ext1 = if dim == 2 { k } else { 1 };
    let s1 = family.anchor_span(ext1, shape[1])?;
    Some([s0, s1])
}

fn span_len(span: (i64, i64)) -> usize {
    (span.1 - span.0 + 1) as usize
}

/// Distribute per-anchor window values to the cells they cover and fold the
/// maximum into `acc`. `v` is row-major over the anchor spans; `x_bounds` are
/// half-open cell ranges, and `acc` is row-major over exactly those ranges.
/// One clamped sliding-max pass per axis.
fn fold_cover_max(
    v: &[f64],
    span: [(i64, i64); 2],
    ext: [usize; 2],
    x_bounds: [(usize, usize); 2],
    acc: &mut [f64],
) {
    let a0n = span_len(span[0]);
    let a1n = span_len(span[1]);
    let nx0 = x_bounds[0].1 - x_bounds[0].0;
    let nx1 = x_bounds[1].1 - x_bounds[1].0;
    debug_assert_eq!(v.len(), a0n * a1n);
    debug_assert_eq!(acc.len(), nx0 * nx1);

    // Pass 1: per anchor row, maximum over the second-axis window.
    let mut rows = vec![0.0; a0n * nx1];
    for a0 in 0..a0n {
        cover_max_into(
            &v[a0 * a1n..(a0 + 1) * a1n],
            ext[1],
            x_bounds[1].0 as i64,
            span[1].0,
            &mut rows[a0 * nx1..(a0 + 1) * nx1],
        );
    }
    // Pass 2: per output column, maximum over the first-axis window; the
    // transpose gives contiguous columns.
    let mut cols = vec![0.0; nx1 * a0n];
    for a0 in 0..a0n {
        for x1 in 0..nx1 {
            cols[x1 * a0n + a0] = rows[a0 * nx1 + x1];
        }
    }
    let mut tmp = vec![0.0; nx0];
    for x1 in 0..nx1 {
        cover_max_into(
            &cols[x1 * a0n..(x1 + 1) * a0n],
            ext[0],
            x_bounds[0].0 as i64,
            span[0].0,
            &mut tmp,
        );
        for x0 in 0..nx0 {
            let slot = &mut acc[x0 * nx1 + x1];
            if tmp[x0] > *slot {
                *slot = tmp[x0];
            }
        }
    }
}

/// Turn an accumulator into a grid function, erroring with the first
/// uncovered cell if some cell saw no family cube.
fn finalize_coverage(
    acc: Vec<f64>,
    f: &GridFunction,
    family: &CubeFamily,
) -> Result<GridFunction> {
    if let Some(i) = acc.iter().position(|v| *v == f64::NEG_INFINITY) {
        let cell = f.cell_of(i);
        return Err(Error::EmptyCubeSet {
            cell: cell[..f.dim()].to_vec(),
            shape: f.shape().to_vec(),
            scales: family.scales().to_vec(),
        });
    }
    GridFunction::new(f.dim(), f.shape2(), f.h(), f.origin2(), acc)
}

/// Fractional maximal function, brute-force reference:
/// `output(x) = max over family cubes Q ∋ x of |Q|^{α/n−1} ∫_Q |f|`.
///
/// Enumerates every containing cube per cell (window sums are O(1) prefix
/// lookups); cells are processed in parallel. This is the oracle the fast
/// path is tested against.
pub fn maximal(f: &GridFunction, params: &OperatorParams) -> Result<GridFunction> {
    params.validate_for(f)?;
    let prefix = build_prefix(f, 1.0, true)?;
    let values = brute_max_per_cell(f, params, |bounds, _cell| prefix.cell_sum_bounds(bounds))?;
    finalize_coverage(values, f, &params.family)
}

/// Shared reference-path skeleton: per cell, maximum over containing cubes of
/// `weight(Q) · window_term(Q, cell)`. `NEG_INFINITY` marks uncovered cells.
fn brute_max_per_cell(
    f: &GridFunction,
    params: &OperatorParams,
    window_term: impl Fn([(usize, usize); 2], usize) -> f64 + Sync,
) -> Result<Vec<f64>> {
    let dim = f.dim();
    let shape = f.shape2();
    let h = f.h();
    let hn = f.cell_measure();
    let alpha = params.alpha;
    let family = &params.family;
    let policy = family.boundary();
    let scales = family.scales();
    let interior_weight: Vec<f64> = scales
        .iter()
        .map(|&k| scale_weight(nominal_measure(k, h, dim), hn, dim, alpha))
        .collect();

    (0..f.len())
        .into_par_iter()
        .map(|flat| {
            let cell = f.cell_of(flat);
            let mut best = f64::NEG_INFINITY;
            family.for_each_containing(cell, f, |q| {
                let bounds = q.clip(shape, dim).expect("containing cube intersects grid");
                let weight = match policy {
                    BoundaryPolicy::InteriorOnly => {
                        let idx = scales.binary_search(&q.side()).expect("family scale");
                        interior_weight[idx]
                    }
                    BoundaryPolicy::Clipped => {
                        let cnt = (bounds[0].1 - bounds[0].0) * (bounds[1].1 - bounds[1].0);
                        scale_weight(hn * cnt as f64, hn, dim, alpha)
                    }
                };
                let val = weight * window_term(bounds, flat);
                if val > best {
                    best = val;
                }
            })?;
            Ok(best)
        })
        .collect()
}

/// Fractional maximal function, accelerated: identical output to [`maximal`].
///
/// Per scale, one weighted window sum per anchor position (O(1) each from the
/// prefix table), then the per-cell maximum over covering positions via
/// clamped sliding-max passes — O(cells × scales) in total.
pub fn maximal_fast(f: &GridFunction, params: &OperatorParams) -> Result<GridFunction> {
    params.validate_for(f)?;
    let prefix = build_prefix(f, 1.0, true)?;
    let dim = f.dim();
    let shape = f.shape2();
    let h = f.h();
    let hn = f.cell_measure();
    let alpha = params.alpha;
    let policy = params.family.boundary();

    let mut acc = vec![f64::NEG_INFINITY; f.len()];
    for &k in params.family.scales() {
        let Some(span) = scale_spans(&params.family, f, k) else {
            continue;
        };
        let w_interior = scale_weight(nominal_measure(k, h, dim), hn, dim, alpha);
        let a1n = span_len(span[1]);
        let mut v = vec![0.0; span_len(span[0]) * a1n];
        for (i0, chunk) in v.chunks_mut(a1n).enumerate() {
            let a0 = span[0].0 + i0 as i64;
            for (i1, slot) in chunk.iter_mut().enumerate() {
                let a1 = span[1].0 + i1 as i64;
                let q = cube_at(a0, a1, k, dim);
                let bounds = q.clip(shape, dim).expect("anchor span intersects grid");
                let weight = match policy {
                    BoundaryPolicy::InteriorOnly => w_interior,
                    BoundaryPolicy::Clipped => {
                        let cnt = (bounds[0].1 - bounds[0].0) * (bounds[1].1 - bounds[1].0);
                        scale_weight(hn * cnt as f64, hn, dim, alpha)
                    }
                };
                *slot = weight * prefix.cell_sum_bounds(bounds);
            }
        }
        let ext1 = if dim == 2 { k } else { 1 };
        fold_cover_max(&v, span, [k, ext1], [(0, shape[0]), (0, shape[1])], &mut acc);
    }
    finalize_coverage(acc, f, &params.family)
}

/// Values of a cube-restricted operator on the cube's cells.
#[derive(Clone, Debug)]
pub struct RestrictedField {
    cube: Cube,
    bounds: [(usize, usize); 2],
    values: Vec<f64>,
}

impl RestrictedField {
    pub fn cube(&self) -> Cube {
        self.cube
    }

    /// Half-open cell bounds of the cube's intersection with the grid.
    pub fn bounds(&self) -> [(usize, usize); 2] {
        self.bounds
    }

    /// Values row-major over [`RestrictedField::bounds`].
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at a global grid cell, `None` outside the field.
    pub fn value_at(&self, cell: [usize; 2]) -> Option<f64> {
        let b = self.bounds;
        if cell[0] < b[0].0 || cell[0] >= b[0].1 || cell[1] < b[1].0 || cell[1] >= b[1].1 {
            return None;
        }
        let n1 = b[1].1 - b[1].0;
        Some(self.values[(cell[0] - b[0].0) * n1 + (cell[1] - b[1].0)])
    }

    /// Global cell coordinates in the same row-major order as
    /// [`RestrictedField::values`].
    pub fn cells(&self) -> impl Iterator<Item = [usize; 2]> + '_ {
        let b = self.bounds;
        (b[0].0..b[0].1).flat_map(move |i0| (b[1].0..b[1].1).map(move |i1| [i0, i1]))
    }
}

/// Cube-restricted fractional maximal function: for `x ∈ Q*`,
/// `max over family cubes Q with x ∈ Q ⊆ Q* of |Q|^{α/n−1} ∫_Q |f|`.
///
/// The restriction `Q ⊆ Q*` makes every candidate interior to `Q*`, so this
/// runs the fast path on the extracted subgrid with the family's scales that
/// fit (the boundary policy of the family plays no role inside `Q*`). When
/// `Q*` overhangs the grid, the field covers `Q* ∩ grid`.
pub fn maximal_restricted(
    f: &GridFunction,
    qstar: &Cube,
    params: &OperatorParams,
) -> Result<RestrictedField> {
    params.validate_for(f)?;
    let bounds = qstar
        .clipped_bounds(f)
        .ok_or_else(|| Error::validation(format!("cube {qstar:?} does not intersect the grid")))?;
    let dim = f.dim();
    let n0 = bounds[0].1 - bounds[0].0;
    let n1 = bounds[1].1 - bounds[1].0;
    let gn1 = f.shape2()[1];
    let mut samples = Vec::with_capacity(n0 * n1);
    for i0 in bounds[0].0..bounds[0].1 {
        samples.extend_from_slice(&f.samples()[i0 * gn1 + bounds[1].0..i0 * gn1 + bounds[1].1]);
    }
    let sub = GridFunction::new(dim, [n0, n1], f.h(), [0.0, 0.0], samples)?;

    let max_fit = if dim == 2 { n0.min(n1) } else { n0 };
    let scales: Vec<usize> = params
        .family
        .scales()
        .iter()
        .copied()
        .filter(|&k| k <= max_fit)
        .collect();
    if scales.is_empty() {
        return Err(Error::EmptyCubeSet {
            cell: (0..dim).map(|a| bounds[a].0).collect(),
            shape: f.shape().to_vec(),
            scales: params.family.scales().to_vec(),
        });
    }
    let sub_params = OperatorParams {
        alpha: params.alpha,
        family: CubeFamily::new(scales, BoundaryPolicy::InteriorOnly)?,
    };
    let out = maximal_fast(&sub, &sub_params)?;
    Ok(RestrictedField { cube: *qstar, bounds, values: out.samples().to_vec() })
}

/// Sublinear maximal commutator:
/// `output(x) = max over Q ∋ x of |Q|^{α/n−1} ∫_Q |b(x)−b(y)|·|f(y)| dy`.
///
/// The kernel couples `x` to every `y`, so window sums cannot come from a
/// prefix table; each window is summed directly (cells in parallel). A
/// level-set split of the kernel against the threshold `b(x)` would
/// accelerate this; it is left as future work since desk-scale grids tolerate
/// the direct form.
pub fn maximal_commutator(
    b: &GridFunction,
    f: &GridFunction,
    params: &OperatorParams,
) -> Result<GridFunction> {
    if !b.same_geometry(f) {
        return Err(Error::validation(format!(
            "symbol grid {:?} and argument grid {:?} differ",
            b.shape(),
            f.shape()
        )));
    }
    params.validate_for(f)?;
    let bs = b.samples();
    let fs = f.samples();
    let n1 = f.shape2()[1];
    let values = brute_max_per_cell(f, params, |bounds, flat| {
        let bx = bs[flat];
        let mut sum = 0.0;
        for y0 in bounds[0].0..bounds[0].1 {
            let row = y0 * n1;
            for y1 in bounds[1].0..bounds[1].1 {
                let y = row + y1;
                sum += (bx - bs[y]).abs() * fs[y].abs();
            }
        }
        sum
    })?;
    finalize_coverage(values, f, &params.family)
}

/// Nonlinear commutator of the fractional maximal function:
/// `[b, M_α]f = b·M_α(f) − M_α(b·f)` cellwise. Signed output.
pub fn commutator_maximal(
    b: &GridFunction,
    f: &GridFunction,
    params: &OperatorParams,
) -> Result<GridFunction> {
    let mf = maximal_fast(f, params)?;
    let bf = b.zip_with(f, |x, y| x * y)?;
    let mbf = maximal_fast(&bf, params)?;
    b.zip_with(&mf, |bv, m| bv * m)?.zip_with(&mbf, |lhs, rhs| lhs - rhs)
}

/// Per-anchor window values for oscillation-type operators, row-major over
/// the anchor spans, computed in parallel by anchor row.
fn anchor_values(span: [(i64, i64); 2], value: impl Fn(i64, i64) -> f64 + Sync) -> Vec<f64> {
    let a1n = span_len(span[1]);
    let mut v = vec![0.0; span_len(span[0]) * a1n];
    v.par_chunks_mut(a1n).enumerate().for_each(|(i0, row)| {
        let a0 = span[0].0 + i0 as i64;
        for (i1, slot) in row.iter_mut().enumerate() {
            let a1 = span[1].0 + i1 as i64;
            *slot = value(a0, a1);
        }
    });
    v
}

/// Sharp maximal function (mean oscillation form):
/// `output(x) = max over Q ∋ x of (1/|Q|) ∫_Q |f − f_Q|`.
///
/// The window mean changes per window, so each window's oscillation is summed
/// directly — but only once per window, not once per (cell, window) pair; the
/// per-cell maximum is then distributed with the same sliding passes as
/// [`maximal_fast`]. Under the clipped policy both the mean and the
/// oscillation run over the intersection with the grid.
pub fn sharp_maximal(f: &GridFunction, family: &CubeFamily) -> Result<GridFunction> {
    let signed = build_prefix(f, 1.0, false)?;
    let dim = f.dim();
    let shape = f.shape2();
    let fs = f.samples();
    let n1 = shape[1];

    let mut acc = vec![f64::NEG_INFINITY; f.len()];
    for &k in family.scales() {
        let Some(span) = scale_spans(family, f, k) else {
            continue;
        };
        let v = anchor_values(span, |a0, a1| {
            let q = cube_at(a0, a1, k, dim);
            let bounds = q.clip(shape, dim).expect("anchor span intersects grid");
            let cnt = ((bounds[0].1 - bounds[0].0) * (bounds[1].1 - bounds[1].0)) as f64;
            let mean = signed.cell_sum_bounds(bounds) / cnt;
            let mut dev = 0.0;
            for y0 in bounds[0].0..bounds[0].1 {
                let row = y0 * n1;
                for y1 in bounds[1].0..bounds[1].1 {
                    dev += (fs[row + y1] - mean).abs();
                }
            }
            dev / cnt
        });
        let ext1 = if dim == 2 { k } else { 1 };
        fold_cover_max(&v, span, [k, ext1], [(0, shape[0]), (0, shape[1])], &mut acc);
    }
    finalize_coverage(acc, f, family)
}

/// Root-mean-square oscillation `sup_Q sqrt(mean(f²) − f_Q²)`: an
/// O(1)-per-window upper-bound surrogate for [`sharp_maximal`], provided for
/// profiling and exploration only — the verification layer never asserts
/// against it, since the operators differ by instance-dependent constants.
pub fn sharp_l2_proxy(f: &GridFunction, family: &CubeFamily) -> Result<GridFunction> {
    let signed = build_prefix(f, 1.0, false)?;
    let squared = build_prefix(f, 2.0, false)?;
    let dim = f.dim();
    let shape = f.shape2();

    let mut acc = vec![f64::NEG_INFINITY; f.len()];
    for &k in family.scales() {
        let Some(span) = scale_spans(family, f, k) else {
            continue;
        };
        let v = anchor_values(span, |a0, a1| {
            let q = cube_at(a0, a1, k, dim);
            let bounds = q.clip(shape, dim).expect("anchor span intersects grid");
            let cnt = ((bounds[0].1 - bounds[0].0) * (bounds[1].1 - bounds[1].0)) as f64;
            let mean = signed.cell_sum_bounds(bounds) / cnt;
            let meansq = squared.cell_sum_bounds(bounds) / cnt;
            (meansq - mean * mean).max(0.0).sqrt()
        });
        let ext1 = if dim == 2 { k } else { 1 };
        fold_cover_max(&v, span, [k, ext1], [(0, shape[0]), (0, shape[1])], &mut acc);
    }
    finalize_coverage(acc, f, family)
}

/// Nonlinear commutator of the sharp maximal function:
/// `[b, M^♯]f = b·M^♯(f) − M^♯(b·f)` cellwise. Signed output.
pub fn commutator_sharp(
    b: &GridFunction,
    f: &GridFunction,
    family: &CubeFamily,
) -> Result<GridFunction> {
    let sf = sharp_maximal(f, family)?;
    let bf = b.zip_with(f, |x, y| x * y)?;
    let sbf = sharp_maximal(&bf, family)?;
    b.zip_with(&sf, |bv, m| bv * m)?.zip_with(&sbf, |lhs, rhs| lhs - rhs)
}

/// `M^♯(b·χ_Q)` evaluated on the cells of `Q` only.
///
/// Equals `sharp_maximal(b.masked(Q), family)` restricted to `Q`, but without
/// touching cells outside `Q`: for `x ∈ Q` every covering window meets `Q`,
/// so anchors are restricted to the cube's neighborhood, window sums of the
/// masked symbol come from the overlap with `Q` against `b`'s own prefix
/// table, and cells of the window outside `Q` contribute `|0 − mean|` in
/// closed form. This is what makes suprema of masked-sharp quantities over
/// every family cube affordable.
pub fn sharp_masked_on_cube(
    b: &GridFunction,
    q: &Cube,
    family: &CubeFamily,
) -> Result<RestrictedField> {
    let qb = q
        .clipped_bounds(b)
        .ok_or_else(|| Error::validation(format!("cube {q:?} does not intersect the grid")))?;
    let signed = build_prefix(b, 1.0, false)?;
    let dim = b.dim();
    let shape = b.shape2();
    let bs = b.samples();
    let n1 = shape[1];
    let nq0 = qb[0].1 - qb[0].0;
    let nq1 = qb[1].1 - qb[1].0;

    let mut acc = vec![f64::NEG_INFINITY; nq0 * nq1];
    for &k in family.scales() {
        let Some(full) = scale_spans(family, b, k) else {
            continue;
        };
        // Only windows meeting Q can cover a cell of Q.
        let span0 = (
            full[0].0.max(qb[0].0 as i64 - k as i64 + 1),
            full[0].1.min(qb[0].1 as i64 - 1),
        );
        let ext1 = if dim == 2 { k } else { 1 };
        let span1 = (
            full[1].0.max(qb[1].0 as i64 - ext1 as i64 + 1),
            full[1].1.min(qb[1].1 as i64 - 1),
        );
        if span0.0 > span0.1 || span1.0 > span1.1 {
            continue;
        }
        let span = [span0, span1];
        let v = anchor_values(span, |a0, a1| {
            let w = cube_at(a0, a1, k, dim);
            let wb = w.clip(shape, dim).expect("anchor span intersects grid");
            let cnt = ((wb[0].1 - wb[0].0) * (wb[1].1 - wb[1].0)) as f64;
            let o0 = (wb[0].0.max(qb[0].0), wb[0].1.min(qb[0].1));
            let o1 = (wb[1].0.max(qb[1].0), wb[1].1.min(qb[1].1));
            if o0.0 >= o0.1 || o1.0 >= o1.1 {
                return 0.0; // window misses Q: the masked symbol vanishes
            }
            let overlap = [(o0.0, o0.1), (o1.0, o1.1)];
            let ocnt = ((o0.1 - o0.0) * (o1.1 - o1.0)) as f64;
            let mean = signed.cell_sum_bounds(overlap) / cnt;
            let mut dev = 0.0;
            for y0 in o0.0..o0.1 {
                let row = y0 * n1;
                for y1 in o1.0..o1.1 {
                    dev += (bs[row + y1] - mean).abs();
                }
            }
            dev += (cnt - ocnt) * mean.abs();
            dev / cnt
        });
        fold_cover_max(&v, span, [k, ext1], qb, &mut acc);
    }
    if let Some(i) = acc.iter().position(|v| *v == f64::NEG_INFINITY) {
        let cell = [qb[0].0 + i / nq1, qb[1].0 + i % nq1];
        return Err(Error::EmptyCubeSet {
            cell: cell[..dim].to_vec(),
            shape: b.shape().to_vec(),
            scales: family.scales().to_vec(),
        });
    }
    Ok(RestrictedField { cube: *q, bounds: qb, values: acc })
}
