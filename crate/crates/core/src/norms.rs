//! Norms, exponent bookkeeping, and the symbol characterization functionals.
//!
//! Three norms appear: the plain `L^p` norm, the mixed slice norm (an outer
//! `L^p` norm in `x` of inner local `L^r` averages over moving windows of
//! side `t`), and the mean-oscillation (BMO) norm, a supremum over the cube
//! family. On top of them sit eight cube-supremum functionals of a symbol
//! `b` ([`CharKind`]): each combines a per-cube deficit — `b` minus its cube
//! mean, minus its restricted maximal average, or minus twice the masked
//! sharp function — with one of the printed normalizations (plain slice norm
//! scaled by `|Q|^{−1/s}`, or the q-th power of a slice norm scaled by
//! `|Q|^{−1}`, or a plain mean). Both normalizations are implemented exactly
//! as they appear; no attempt is made to reconcile them.

use crate::error::{Error, Result};
use crate::grid::{build_prefix, BoundaryPolicy, Cube, CubeFamily, GridFunction};
use crate::operators::{maximal_restricted, sharp_masked_on_cube, OperatorParams};
use crate::tolerances::{ARGMAX_TIE_REL, EXPONENT_BALANCE, HOLDER_SLACK};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `e′ = e/(e−1)`, the Hölder conjugate; requires `e > 1`.
pub fn conjugate_exponent(e: f64) -> Result<f64> {
    if !(e.is_finite() && e > 1.0) {
        return Err(Error::validation(format!("conjugate exponent needs e in (1, ∞), got {e}")));
    }
    Ok(e / (e - 1.0))
}

/// The exponent quadruple `(p, q, r, s)` tied to a fractional order by the
/// balance `α/n = 1/p − 1/r = 1/q − 1/s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentSet {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub alpha: f64,
    pub n: usize,
}

impl ExponentSet {
    pub fn new(p: f64, q: f64, r: f64, s: f64, alpha: f64, n: usize) -> Result<Self> {
        for (name, e) in [("p", p), ("q", q), ("r", r), ("s", s)] {
            if !(e.is_finite() && e > 1.0) {
                return Err(Error::validation(format!(
                    "exponent {name} must lie in (1, ∞), got {e}"
                )));
            }
        }
        if n != 1 && n != 2 {
            return Err(Error::validation(format!("dimension must be 1 or 2, got {n}")));
        }
        if !(alpha.is_finite() && alpha >= 0.0 && alpha < n as f64) {
            return Err(Error::validation(format!(
                "fractional order must satisfy 0 ≤ α < {n}, got {alpha}"
            )));
        }
        let an = alpha / n as f64;
        for (lo, hi, names) in [(p, r, "1/p − 1/r"), (q, s, "1/q − 1/s")] {
            let gap = 1.0 / lo - 1.0 / hi;
            if (gap - an).abs() > EXPONENT_BALANCE {
                return Err(Error::validation(format!(
                    "exponents inconsistent: α/n = {an} but {names} = {gap}"
                )));
            }
            if alpha > 0.0 && lo >= hi {
                return Err(Error::validation(format!(
                    "α > 0 requires strictly increasing pairs, got {lo} ≥ {hi}"
                )));
            }
        }
        Ok(ExponentSet { p, q, r, s, alpha, n })
    }

    /// Solve `r` and `s` from `(p, q, α, n)` via the balance; with α = 0 this
    /// collapses to `r = p`, `s = q` exactly.
    pub fn from_source(p: f64, q: f64, alpha: f64, n: usize) -> Result<Self> {
        if alpha == 0.0 {
            return Self::new(p, q, p, q, 0.0, n);
        }
        let an = alpha / n as f64;
        let (ir, is) = (1.0 / p - an, 1.0 / q - an);
        if ir <= 0.0 || is <= 0.0 {
            return Err(Error::validation(format!(
                "no admissible target exponents: need 1/p and 1/q above α/n = {an}, got p={p}, q={q}"
            )));
        }
        Self::new(p, q, 1.0 / ir, 1.0 / is, alpha, n)
    }
}

/// Slice-norm parameters: window side `t` in length units, inner exponent
/// (the local integrability order), outer exponent (the global one).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceParams {
    pub t: f64,
    pub inner: f64,
    pub outer: f64,
}

impl SliceParams {
    pub fn new(t: f64, inner: f64, outer: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::validation(format!("window scale must be > 0, got {t}")));
        }
        for (name, e) in [("inner", inner), ("outer", outer)] {
            if !(e.is_finite() && e > 1.0) {
                return Err(Error::validation(format!(
                    "{name} exponent must lie in (1, ∞), got {e}"
                )));
            }
        }
        Ok(SliceParams { t, inner, outer })
    }
}

/// `x^{1/p}` with the exact special cases `p = 1` and `p = 2`.
fn root(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x.sqrt()
    } else {
        x.powf(1.0 / p)
    }
}

/// `(h^n Σ |f|^p)^{1/p}`; requires `p ≥ 1`.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::validation(format!("Lebesgue exponent must be ≥ 1, got {p}")));
    }
    let total = build_prefix(f, p, true)?.total();
    Ok(root(total * f.cell_measure(), p))
}

/// Window side in cells for scale `t`: `round(t/h)`, at least one cell. A
/// `t` below the resolution degrades to the single-cell window by design.
pub fn slice_window_cells(t: f64, h: f64) -> usize {
    ((t / h).round() as usize).max(1)
}

/// Per-axis half-open window of side `w` centered at cell `x` (anchored at
/// `x − ⌊w/2⌋`, so even windows lean toward the origin), before clipping.
#[inline]
fn centered_window(x: usize, w: usize) -> (i64, i64) {
    let a = x as i64 - (w / 2) as i64;
    (a, a + w as i64)
}

/// Mixed slice norm
/// `( h^n Σ_x ( (1/|Q(x,t)|) ∫_{Q(x,t)} |f|^r )^{p/r} )^{1/p}`
/// with `r` the inner and `p` the outer exponent. Windows are clipped to the
/// grid and averaged over their intersection measure. At the single-cell
/// window scale this collapses to [`lp_norm`] exactly (same code path).
pub fn slice_norm(f: &GridFunction, sp: &SliceParams) -> Result<f64> {
    let w = slice_window_cells(sp.t, f.h());
    if w == 1 {
        return lp_norm(f, sp.outer);
    }
    let prefix = build_prefix(f, sp.inner, true)?;
    let dim = f.dim();
    let [n0, n1] = f.shape2();
    let ratio = sp.outer / sp.inner;
    let mut sum = 0.0;
    for x0 in 0..n0 {
        let (w0lo, w0hi) = centered_window(x0, w);
        let b0 = (w0lo.max(0) as usize, w0hi.min(n0 as i64) as usize);
        for x1 in 0..n1 {
            let b1 = if dim == 2 {
                let (lo, hi) = centered_window(x1, w);
                (lo.max(0) as usize, hi.min(n1 as i64) as usize)
            } else {
                (0, 1)
            };
            let cnt = ((b0.1 - b0.0) * (b1.1 - b1.0)) as f64;
            let avg = prefix.cell_sum_bounds([b0, b1]) / cnt;
            sum += if ratio == 1.0 { avg } else { avg.powf(ratio) };
        }
    }
    Ok(root(sum * f.cell_measure(), sp.outer))
}

/// Slice norm of a function supported on (the grid part of) a cube, given
/// only its values there. Identical to [`slice_norm`] of the zero-extended
/// function, but touches only windows meeting the cube.
fn masked_slice_norm(
    dvals: &[f64],
    qb: [(usize, usize); 2],
    shape: [usize; 2],
    dim: usize,
    h: f64,
    sp: &SliceParams,
) -> Result<f64> {
    let w = slice_window_cells(sp.t, h);
    let nq = [qb[0].1 - qb[0].0, qb[1].1 - qb[1].0];
    let local = GridFunction::new(dim, nq, h, [0.0, 0.0], dvals.to_vec())?;
    let prefix = build_prefix(&local, sp.inner, true)?;
    let ratio = sp.outer / sp.inner;

    // x-range per axis: cells whose window meets the cube, within the grid.
    let ext = |axis: usize| if axis < dim { w } else { 1 };
    let off = |axis: usize| (ext(axis) / 2) as i64;
    let xr = |axis: usize| {
        let lo = (qb[axis].0 as i64 - ext(axis) as i64 + 1 + off(axis)).max(0) as usize;
        let hi = ((qb[axis].1 as i64 - 1 + off(axis)).min(shape[axis] as i64 - 1)) as usize;
        (lo, hi)
    };
    let (x0lo, x0hi) = xr(0);
    let (x1lo, x1hi) = xr(1);

    let mut sum = 0.0;
    for x0 in x0lo..=x0hi {
        let (w0lo, w0hi) = centered_window(x0, ext(0));
        let g0 = (w0lo.max(0) as usize, w0hi.min(shape[0] as i64) as usize);
        let o0 = (g0.0.max(qb[0].0), g0.1.min(qb[0].1));
        for x1 in x1lo..=x1hi {
            let (w1lo, w1hi) = centered_window(x1, ext(1));
            let g1 = (w1lo.max(0) as usize, w1hi.min(shape[1] as i64) as usize);
            let o1 = (g1.0.max(qb[1].0), g1.1.min(qb[1].1));
            let cnt = ((g0.1 - g0.0) * (g1.1 - g1.0)) as f64;
            let cellsum = if o0.0 < o0.1 && o1.0 < o1.1 {
                prefix.cell_sum_bounds([
                    (o0.0 - qb[0].0, o0.1 - qb[0].0),
                    (o1.0 - qb[1].0, o1.1 - qb[1].0),
                ])
            } else {
                0.0
            };
            let avg = cellsum / cnt;
            sum += if ratio == 1.0 { avg } else { avg.powf(ratio) };
        }
    }
    let hn = h.powi(dim as i32);
    Ok(root(sum * hn, sp.outer))
}

/// Deterministic supremum of a nonnegative per-cube functional over the
/// family (optionally capped at `max_side`), with a shift-stable argmax: a
/// later cube replaces the argmax only when it wins by a relative margin.
fn sup_over_cubes(
    grid: &GridFunction,
    family: &CubeFamily,
    max_side: Option<usize>,
    label: &str,
    per_cube: impl Fn(Cube) -> Result<f64> + Sync,
) -> Result<(f64, Cube)> {
    let cubes: Vec<Cube> = family
        .cubes(grid)
        .into_iter()
        .filter(|q| max_side.map_or(true, |m| q.side() <= m))
        .collect();
    if cubes.is_empty() {
        return Err(Error::validation(format!(
            "no admissible cube for {label}: scales {:?}{} on grid {:?}",
            family.scales(),
            max_side.map_or(String::new(), |m| format!(" capped at side {m}")),
            grid.shape()
        )));
    }
    let values = cubes
        .par_iter()
        .map(|q| per_cube(*q))
        .collect::<Result<Vec<f64>>>()?;
    let mut best = f64::NEG_INFINITY;
    let mut arg = cubes[0];
    let mut arg_val = f64::NEG_INFINITY;
    for (q, v) in cubes.iter().zip(&values) {
        if *v > best {
            best = *v;
        }
        if *v > arg_val * (1.0 + ARGMAX_TIE_REL) {
            arg_val = *v;
            arg = *q;
        }
    }
    Ok((best, arg))
}

/// Mean oscillation of `b` over one cube (intersection with the grid):
/// cell mean, then mean absolute deviation. The `h^n` factors cancel.
fn cube_oscillation(
    signed: &crate::grid::PrefixTable,
    samples: &[f64],
    n1: usize,
    bounds: [(usize, usize); 2],
) -> f64 {
    let cnt = ((bounds[0].1 - bounds[0].0) * (bounds[1].1 - bounds[1].0)) as f64;
    let mean = signed.cell_sum_bounds(bounds) / cnt;
    let mut dev = 0.0;
    for y0 in bounds[0].0..bounds[0].1 {
        let row = y0 * n1;
        for y1 in bounds[1].0..bounds[1].1 {
            dev += (samples[row + y1] - mean).abs();
        }
    }
    dev / cnt
}

/// BMO norm: `max over family cubes Q of (1/|Q|) ∫_Q |b − b_Q|`.
pub fn bmo_norm(b: &GridFunction, family: &CubeFamily) -> Result<f64> {
    bmo_norm_argmax(b, family).map(|(v, _)| v)
}

/// BMO norm together with the maximizing cube (shift-stable; see
/// [`crate::tolerances::ARGMAX_TIE_REL`]).
pub fn bmo_norm_argmax(b: &GridFunction, family: &CubeFamily) -> Result<(f64, Cube)> {
    let signed = build_prefix(b, 1.0, false)?;
    let shape = b.shape2();
    let dim = b.dim();
    let samples = b.samples();
    sup_over_cubes(b, family, None, "mean oscillation", |q| {
        let bounds = q.clip(shape, dim).expect("family cube intersects grid");
        Ok(cube_oscillation(&signed, samples, shape[1], bounds))
    })
}

/// The eight cube-supremum functionals of a symbol. `Slice` forms use the
/// `(r, s)` exponents with the `|Q|^{−1/s}` normalization; `SlicePow` forms
/// use the `(p, q)` exponents with the q-th power and `|Q|^{−1}`; `Mean`
/// forms are plain cube means. The deficit inside is either the restricted
/// maximal average (`MaximalDeficit*`, fractional for the plain-slice form
/// and order-zero otherwise), the cube mean (`Oscillation*`), or twice the
/// masked sharp function (`SharpDeficit*`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharKind {
    MaximalDeficitSlice,
    MaximalDeficitMean,
    MaximalDeficitSlicePow,
    OscillationSlice,
    OscillationMean,
    OscillationSlicePow,
    SharpDeficitSlicePow,
    SharpDeficitMean,
}

impl CharKind {
    pub const ALL: [CharKind; 8] = [
        CharKind::MaximalDeficitSlice,
        CharKind::MaximalDeficitMean,
        CharKind::MaximalDeficitSlicePow,
        CharKind::OscillationSlice,
        CharKind::OscillationMean,
        CharKind::OscillationSlicePow,
        CharKind::SharpDeficitSlicePow,
        CharKind::SharpDeficitMean,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CharKind::MaximalDeficitSlice => "maximal-deficit-slice",
            CharKind::MaximalDeficitMean => "maximal-deficit-mean",
            CharKind::MaximalDeficitSlicePow => "maximal-deficit-slice-pow",
            CharKind::OscillationSlice => "oscillation-slice",
            CharKind::OscillationMean => "oscillation-mean",
            CharKind::OscillationSlicePow => "oscillation-slice-pow",
            CharKind::SharpDeficitSlicePow => "sharp-deficit-slice-pow",
            CharKind::SharpDeficitMean => "sharp-deficit-mean",
        }
    }

    fn uses_masked_sharp(self) -> bool {
        matches!(self, CharKind::SharpDeficitSlicePow | CharKind::SharpDeficitMean)
    }
}

/// Supremum over family cubes of the chosen symbol functional. See
/// [`characterization_argmax`] for the cube attaining it.
pub fn characterization(
    b: &GridFunction,
    which: CharKind,
    exps: &ExponentSet,
    t: f64,
    family: &CubeFamily,
) -> Result<f64> {
    characterization_argmax(b, which, exps, t, family).map(|(v, _)| v)
}

/// As [`characterization`], also returning the maximizing cube.
///
/// The masked-sharp forms cap the outer supremum at cubes of side at most
/// half the largest family scale: the sharp function of a masked symbol is
/// only family-resolved when windows twice the cube's size exist, and
/// without the cap the functional reports boundary artifacts of the finite
/// domain rather than properties of `b`.
pub fn characterization_argmax(
    b: &GridFunction,
    which: CharKind,
    exps: &ExponentSet,
    t: f64,
    family: &CubeFamily,
) -> Result<(f64, Cube)> {
    if exps.n != b.dim() {
        return Err(Error::validation(format!(
            "exponent set is for dimension {} but the grid has dimension {}",
            exps.n,
            b.dim()
        )));
    }
    if which == CharKind::OscillationMean {
        // Same formula as the BMO norm; share the code path exactly.
        return bmo_norm_argmax(b, family);
    }

    let dim = b.dim();
    let shape = b.shape2();
    let h = b.h();
    let hn = b.cell_measure();
    let samples = b.samples();
    let signed = build_prefix(b, 1.0, false)?;
    let policy = family.boundary();

    let slice_sp = SliceParams::new(t, exps.r, exps.s)?;
    let pow_sp = SliceParams::new(t, exps.p, exps.q)?;
    let frac_params = OperatorParams::new(exps.alpha, family.clone())?;
    let zero_params = OperatorParams::new(0.0, family.clone())?;
    let max_side = if which.uses_masked_sharp() {
        Some((family.max_scale() / 2).max(0))
    } else {
        None
    };

    sup_over_cubes(b, family, max_side, which.label(), |q| {
        let bounds = q.clip(shape, dim).expect("family cube intersects grid");
        let cnt = (bounds[0].1 - bounds[0].0) * (bounds[1].1 - bounds[1].0);
        let measure = match policy {
            BoundaryPolicy::InteriorOnly => q.measure(h, dim),
            BoundaryPolicy::Clipped => hn * cnt as f64,
        };

        // Deficit values on the cube's cells, row-major over `bounds`.
        let deficit: Vec<f64> = match which {
            CharKind::MaximalDeficitSlice => {
                let rf = maximal_restricted(b, &q, &frac_params)?;
                let factor = if exps.alpha == 0.0 {
                    1.0
                } else {
                    measure.powf(-exps.alpha / dim as f64)
                };
                rf.cells()
                    .zip(rf.values())
                    .map(|(cell, m)| samples[cell[0] * shape[1] + cell[1]] - factor * m)
                    .collect()
            }
            CharKind::MaximalDeficitMean | CharKind::MaximalDeficitSlicePow => {
                let rf = maximal_restricted(b, &q, &zero_params)?;
                rf.cells()
                    .zip(rf.values())
                    .map(|(cell, m)| samples[cell[0] * shape[1] + cell[1]] - m)
                    .collect()
            }
            CharKind::OscillationSlice | CharKind::OscillationSlicePow => {
                let mean = signed.cell_sum_bounds(bounds) / cnt as f64;
                let mut d = Vec::with_capacity(cnt);
                for y0 in bounds[0].0..bounds[0].1 {
                    let row = y0 * shape[1];
                    for y1 in bounds[1].0..bounds[1].1 {
                        d.push(samples[row + y1] - mean);
                    }
                }
                d
            }
            CharKind::SharpDeficitSlicePow | CharKind::SharpDeficitMean => {
                let rf = sharp_masked_on_cube(b, &q, family)?;
                rf.cells()
                    .zip(rf.values())
                    .map(|(cell, m)| samples[cell[0] * shape[1] + cell[1]] - 2.0 * m)
                    .collect()
            }
            CharKind::OscillationMean => unreachable!("handled above"),
        };

        // Normalization.
        let value = match which {
            CharKind::MaximalDeficitSlice | CharKind::OscillationSlice => {
                let norm = masked_slice_norm(&deficit, bounds, shape, dim, h, &slice_sp)?;
                norm * root(measure, exps.s).recip()
            }
            CharKind::MaximalDeficitSlicePow
            | CharKind::OscillationSlicePow
            | CharKind::SharpDeficitSlicePow => {
                let norm = masked_slice_norm(&deficit, bounds, shape, dim, h, &pow_sp)?;
                norm.powf(exps.q) / measure
            }
            CharKind::MaximalDeficitMean | CharKind::SharpDeficitMean => {
                deficit.iter().map(|d| d.abs()).sum::<f64>() / cnt as f64
            }
            CharKind::OscillationMean => unreachable!("handled above"),
        };
        Ok(value)
    })
}

/// One Hölder evaluation: `∫|fg|` against `‖f‖_p · ‖g‖_{p′}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HolderReport {
    pub product_integral: f64,
    pub f_norm: f64,
    pub g_norm: f64,
    /// `None` when a factor norm vanishes (the inequality is vacuous).
    pub ratio: Option<f64>,
    /// `ratio ≤ 1 + HOLDER_SLACK`, vacuously true without a ratio.
    pub within_bound: bool,
}

/// Evaluate the Hölder inequality for the pair `(p, p′)`; requires `p > 1`
/// and a shared grid.
pub fn holder_check(f: &GridFunction, g: &GridFunction, p: f64) -> Result<HolderReport> {
    let pc = conjugate_exponent(p)?;
    let fg = f.zip_with(g, |a, b| a * b)?;
    let product_integral = build_prefix(&fg, 1.0, true)?.total() * f.cell_measure();
    let f_norm = lp_norm(f, p)?;
    let g_norm = lp_norm(g, pc)?;
    let denom = f_norm * g_norm;
    let ratio = if denom > 0.0 { Some(product_integral / denom) } else { None };
    let within_bound = ratio.map_or(true, |r| r <= 1.0 + HOLDER_SLACK);
    Ok(HolderReport { product_integral, f_norm, g_norm, ratio, within_bound })
}
