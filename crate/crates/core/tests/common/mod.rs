//! Independent reference implementations used as oracles by the integration
//! tests.
//!
//! Everything here is written from the definitions alone: explicit window
//! enumeration, direct compensated summation, one generic power formula per
//! weight. No prefix tables, no sliding-window passes, no code shared with
//! the crate's operator or norm paths — so agreement is evidence, not
//! tautology.
//!
//! Each test binary compiles its own copy, so helpers one binary skips are
//! not dead code.
#![allow(dead_code)]

use maxosc::grid::{BoundaryPolicy, GridFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Compensated (Kahan) sum, so oracle values carry no accumulation error of
/// their own at the sizes the tests use.
pub fn kahan<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in xs {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Inclusive anchor range of side-`k` windows along one axis of `extent`
/// cells, or `None` when the policy admits none.
fn anchor_range(k: usize, extent: usize, boundary: BoundaryPolicy) -> Option<(i64, i64)> {
    match boundary {
        BoundaryPolicy::InteriorOnly => {
            if k <= extent {
                Some((0, (extent - k) as i64))
            } else {
                None
            }
        }
        BoundaryPolicy::Clipped => Some((1 - k as i64, extent as i64 - 1)),
    }
}

/// Half-open intersection of `[a, a+k)` with `[0, extent)`.
fn clip_axis(a: i64, k: usize, extent: usize) -> Option<(usize, usize)> {
    let lo = a.max(0);
    let hi = (a + k as i64).min(extent as i64);
    if lo < hi {
        Some((lo as usize, hi as usize))
    } else {
        None
    }
}

struct Window {
    b0: (usize, usize),
    b1: (usize, usize),
    /// Cells of the intersection with the grid.
    cnt: usize,
}

/// Every admissible window of side `k`, clipped to the grid.
fn windows(f: &GridFunction, k: usize, boundary: BoundaryPolicy) -> Vec<Window> {
    let dim = f.dim();
    let [n0, n1] = f.shape2();
    let Some((a0lo, a0hi)) = anchor_range(k, n0, boundary) else {
        return Vec::new();
    };
    let ext1 = if dim == 2 { k } else { 1 };
    let Some((a1lo, a1hi)) = anchor_range(ext1, n1, boundary) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for a0 in a0lo..=a0hi {
        let Some(b0) = clip_axis(a0, k, n0) else { continue };
        for a1 in a1lo..=a1hi {
            let Some(b1) = clip_axis(a1, ext1, n1) else { continue };
            out.push(Window { b0, b1, cnt: (b0.1 - b0.0) * (b1.1 - b1.0) });
        }
    }
    out
}

/// `|Q|^{α/n−1} h^n` from the definition, one `powf` for every case.
fn weight(w: &Window, k: usize, f: &GridFunction, alpha: f64, boundary: BoundaryPolicy) -> f64 {
    let dim = f.dim() as f64;
    let hn = f.h().powi(f.dim() as i32);
    let measure = match boundary {
        BoundaryPolicy::InteriorOnly => (k as f64 * f.h()).powi(f.dim() as i32),
        BoundaryPolicy::Clipped => hn * w.cnt as f64,
    };
    measure.powf(alpha / dim - 1.0) * hn
}

fn window_values<'a>(f: &'a GridFunction, w: &Window) -> impl Iterator<Item = f64> + 'a {
    let n1 = f.shape2()[1];
    let (b0, b1) = (w.b0, w.b1);
    (b0.0..b0.1).flat_map(move |y0| (b1.0..b1.1).map(move |y1| f.samples()[y0 * n1 + y1]))
}

/// Fold `value` into every cell the window covers.
fn fold_max(acc: &mut [f64], n1: usize, w: &Window, value: f64) {
    for x0 in w.b0.0..w.b0.1 {
        for x1 in w.b1.0..w.b1.1 {
            let slot = &mut acc[x0 * n1 + x1];
            if value > *slot {
                *slot = value;
            }
        }
    }
}

/// Fractional maximal function from the definition. Cells no window covers
/// stay at `NEG_INFINITY`; callers pick families that cover the grid.
pub fn naive_maximal(
    f: &GridFunction,
    alpha: f64,
    scales: &[usize],
    boundary: BoundaryPolicy,
) -> Vec<f64> {
    let n1 = f.shape2()[1];
    let mut acc = vec![f64::NEG_INFINITY; f.len()];
    for &k in scales {
        for w in windows(f, k, boundary) {
            let v = weight(&w, k, f, alpha, boundary) * kahan(window_values(f, &w).map(f64::abs));
            fold_max(&mut acc, n1, &w, v);
        }
    }
    acc
}

/// Sharp maximal function from the definition: per window, the mean absolute
/// deviation from the window mean (both over the intersection with the grid).
pub fn naive_sharp(f: &GridFunction, scales: &[usize], boundary: BoundaryPolicy) -> Vec<f64> {
    let n1 = f.shape2()[1];
    let mut acc = vec![f64::NEG_INFINITY; f.len()];
    for &k in scales {
        for w in windows(f, k, boundary) {
            let mean = kahan(window_values(f, &w)) / w.cnt as f64;
            let dev = kahan(window_values(f, &w).map(|v| (v - mean).abs())) / w.cnt as f64;
            fold_max(&mut acc, n1, &w, dev);
        }
    }
    acc
}

/// Maximal commutator from the definition:
/// `sup_{Q ∋ x} |Q|^{α/n−1} ∫_Q |b(x)−b(y)| |f(y)| dy`, evaluated per cell.
pub fn naive_maximal_commutator(
    b: &GridFunction,
    f: &GridFunction,
    alpha: f64,
    scales: &[usize],
    boundary: BoundaryPolicy,
) -> Vec<f64> {
    let n1 = f.shape2()[1];
    let mut out = vec![f64::NEG_INFINITY; f.len()];
    for &k in scales {
        for w in windows(f, k, boundary) {
            let wt = weight(&w, k, f, alpha, boundary);
            for x0 in w.b0.0..w.b0.1 {
                for x1 in w.b1.0..w.b1.1 {
                    let x = x0 * n1 + x1;
                    let bx = b.samples()[x];
                    let ker = kahan(
                        (w.b0.0..w.b0.1).flat_map(|y0| {
                            (w.b1.0..w.b1.1).map(move |y1| {
                                let y = y0 * n1 + y1;
                                (bx - b.samples()[y]).abs() * f.samples()[y].abs()
                            })
                        }),
                    );
                    let v = wt * ker;
                    if v > out[x] {
                        out[x] = v;
                    }
                }
            }
        }
    }
    out
}

/// `L^p` norm from the definition.
pub fn naive_lp(f: &GridFunction, p: f64) -> f64 {
    let hn = f.h().powi(f.dim() as i32);
    (hn * kahan(f.samples().iter().map(|v| v.abs().powf(p)))).powf(1.0 / p)
}

/// Slice norm from the definition: centered windows of `round(t/h)` cells
/// (at least one), clipped; inner power mean per window, outer `L^p` sum.
pub fn naive_slice(f: &GridFunction, t: f64, inner: f64, outer: f64) -> f64 {
    let w = ((t / f.h()).round() as usize).max(1);
    let dim = f.dim();
    let [n0, n1] = f.shape2();
    let hn = f.h().powi(dim as i32);
    let centered = |x: usize, ext: usize, n: usize| {
        let a = x as i64 - (ext / 2) as i64;
        (a.max(0) as usize, (a + ext as i64).min(n as i64) as usize)
    };
    let mut terms = Vec::with_capacity(f.len());
    for x0 in 0..n0 {
        let b0 = centered(x0, w, n0);
        for x1 in 0..n1 {
            let b1 = if dim == 2 { centered(x1, w, n1) } else { (0, 1) };
            let cnt = ((b0.1 - b0.0) * (b1.1 - b1.0)) as f64;
            let avg = kahan((b0.0..b0.1).flat_map(|y0| {
                (b1.0..b1.1).map(move |y1| f.samples()[y0 * n1 + y1].abs().powf(inner))
            })) / cnt;
            terms.push(avg.powf(outer / inner));
        }
    }
    (hn * kahan(terms)).powf(1.0 / outer)
}

/// BMO norm from the definition: supremum of window mean oscillations.
pub fn naive_bmo(b: &GridFunction, scales: &[usize], boundary: BoundaryPolicy) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for &k in scales {
        for w in windows(b, k, boundary) {
            let mean = kahan(window_values(b, &w)) / w.cnt as f64;
            let dev = kahan(window_values(b, &w).map(|v| (v - mean).abs())) / w.cnt as f64;
            if dev > best {
                best = dev;
            }
        }
    }
    best
}

/// Uniform random grid on `[lo, hi)`; 2D grids may be non-square.
pub fn random_grid(seed: u64, dim: usize, shape: [usize; 2], h: f64, lo: f64, hi: f64) -> GridFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = if dim == 1 { shape[0] } else { shape[0] * shape[1] };
    let samples: Vec<f64> = (0..cells).map(|_| rng.gen_range(lo..hi)).collect();
    if dim == 1 {
        GridFunction::new_1d(samples, h).unwrap()
    } else {
        GridFunction::new_2d(shape[0], shape[1], samples, h).unwrap()
    }
}

/// Largest absolute difference between a grid function and an oracle vector.
pub fn max_abs_diff(got: &GridFunction, want: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    got.samples()
        .iter()
        .zip(want)
        .map(|(a, b)| {
            assert!(b.is_finite(), "oracle left a cell uncovered");
            (a - b).abs()
        })
        .fold(0.0, f64::max)
}
