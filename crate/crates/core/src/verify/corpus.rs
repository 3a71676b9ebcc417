//! Seeded generator corpus: named, parameterized grid functions that realize
//! the same underlying instance at any resolution, bit-identically for a
//! given `(spec, dim, shape, h)`.
//!
//! Analytic generators (everything except [`GeneratorSpec::Uniform`]) are
//! functions of the continuum coordinate, so refining the grid re-samples
//! the *same* instance — the property the refinement-stability checks rely
//! on. `Uniform` draws one value per cell and is tied to the shape.

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A named, fully-parameterized grid-function generator.
///
/// Text form (accepted by [`FromStr`] and the CLI): `name` or
/// `name:key=value,key=value`, e.g. `log-singularity:center0=0.375,eps=0.5`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// `f ≡ value`.
    Constant { value: f64 },
    /// Indicator of the axis-aligned cube `[lo, lo+side)^dim` in length
    /// units, sampled at cell centers.
    Indicator { lo: f64, side: f64 },
    /// `low` where the first coordinate is below `threshold`, else `high`.
    Step { threshold: f64, low: f64, high: f64 },
    /// Band-limited trigonometric polynomial: per axis, `modes` cosine and
    /// sine terms at 1..=modes cycles per unit length with seeded
    /// coefficients decaying like `1/m`. Smooth, resolution-independent.
    SmoothRandom { seed: u64, modes: u32 },
    /// `ln(|x − x₀| + eps·h)`: the canonical unbounded mean-oscillation
    /// symbol, regularized at the fraction `eps ∈ (0,1]` of a cell so the
    /// singular cell stays finite at every resolution.
    LogSingularity { center0: f64, center1: f64, eps: f64 },
    /// `slope · x₀`: bounded on any fixed domain but of ever-growing mean
    /// oscillation as the domain grows — the canonical non-example.
    LinearRamp { slope: f64 },
    /// Independent uniform draws in `[low, high)`, one per cell.
    Uniform { seed: u64, low: f64, high: f64 },
}

impl GeneratorSpec {
    /// A short canonical label, stable across runs, used in reports.
    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::Constant { value } => format!("constant(value={value})"),
            GeneratorSpec::Indicator { lo, side } => format!("indicator(lo={lo},side={side})"),
            GeneratorSpec::Step { threshold, low, high } => {
                format!("step(threshold={threshold},low={low},high={high})")
            }
            GeneratorSpec::SmoothRandom { seed, modes } => {
                format!("smooth-random(seed={seed},modes={modes})")
            }
            GeneratorSpec::LogSingularity { center0, center1, eps } => {
                format!("log-singularity(center0={center0},center1={center1},eps={eps})")
            }
            GeneratorSpec::LinearRamp { slope } => format!("linear-ramp(slope={slope})"),
            GeneratorSpec::Uniform { seed, low, high } => {
                format!("uniform(seed={seed},low={low},high={high})")
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let check = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::validation(format!("generator parameter {name} must be finite")))
            }
        };
        match self {
            GeneratorSpec::Constant { value } => check("value", *value),
            GeneratorSpec::Indicator { lo, side } => {
                check("lo", *lo)?;
                check("side", *side)?;
                if *side <= 0.0 {
                    return Err(Error::validation("indicator side must be > 0"));
                }
                Ok(())
            }
            GeneratorSpec::Step { threshold, low, high } => {
                check("threshold", *threshold)?;
                check("low", *low)?;
                check("high", *high)
            }
            GeneratorSpec::SmoothRandom { modes, .. } => {
                if *modes == 0 {
                    return Err(Error::validation("smooth-random needs modes >= 1"));
                }
                Ok(())
            }
            GeneratorSpec::LogSingularity { center0, center1, eps } => {
                check("center0", *center0)?;
                check("center1", *center1)?;
                check("eps", *eps)?;
                if !(*eps > 0.0 && *eps <= 1.0) {
                    return Err(Error::validation(format!(
                        "log-singularity eps must lie in (0, 1], got {eps}"
                    )));
                }
                Ok(())
            }
            GeneratorSpec::LinearRamp { slope } => check("slope", *slope),
            GeneratorSpec::Uniform { low, high, .. } => {
                check("low", *low)?;
                check("high", *high)?;
                if low >= high {
                    return Err(Error::validation("uniform needs low < high"));
                }
                Ok(())
            }
        }
    }

    /// Sample the generator on a `dim`-dimensional grid of `n` cells per
    /// axis with cell size `h` anchored at the origin.
    pub fn realize(&self, dim: usize, n: usize, h: f64) -> Result<GridFunction> {
        self.validate()?;
        let shape = vec![n; dim];
        let origin = vec![0.0; dim];
        match self {
            GeneratorSpec::Constant { value } => {
                GridFunction::from_fn(dim, &shape, h, &origin, |_| *value)
            }
            GeneratorSpec::Indicator { lo, side } => {
                GridFunction::from_fn(dim, &shape, h, &origin, |x| {
                    if x.iter().all(|&c| c >= *lo && c < lo + side) {
                        1.0
                    } else {
                        0.0
                    }
                })
            }
            GeneratorSpec::Step { threshold, low, high } => {
                GridFunction::from_fn(
                    dim,
                    &shape,
                    h,
                    &origin,
                    |x| if x[0] < *threshold { *low } else { *high },
                )
            }
            GeneratorSpec::SmoothRandom { seed, modes } => {
                // One coefficient quadruple per (axis, mode), drawn in a fixed
                // order from the seed alone: the continuum function does not
                // depend on the grid.
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut coeffs = Vec::with_capacity(2 * *modes as usize);
                for _axis in 0..2 {
                    for m in 1..=*modes {
                        let a: f64 = rng.gen_range(-1.0..1.0);
                        let b: f64 = rng.gen_range(-1.0..1.0);
                        coeffs.push((m as f64, a / m as f64, b / m as f64));
                    }
                }
                let per_axis = *modes as usize;
                GridFunction::from_fn(dim, &shape, h, &origin, |x| {
                    let mut v = 0.0;
                    for (axis, &c) in x.iter().enumerate() {
                        for &(m, a, b) in &coeffs[axis * per_axis..(axis + 1) * per_axis] {
                            let phase = std::f64::consts::TAU * m * c;
                            v += a * phase.cos() + b * phase.sin();
                        }
                    }
                    v
                })
            }
            GeneratorSpec::LogSingularity { center0, center1, eps } => {
                let c = [*center0, *center1];
                let reg = eps * h;
                GridFunction::from_fn(dim, &shape, h, &origin, |x| {
                    let dist = if x.len() == 1 {
                        (x[0] - c[0]).abs()
                    } else {
                        (x[0] - c[0]).hypot(x[1] - c[1])
                    };
                    (dist + reg).ln()
                })
            }
            GeneratorSpec::LinearRamp { slope } => {
                GridFunction::from_fn(dim, &shape, h, &origin, |x| slope * x[0])
            }
            GeneratorSpec::Uniform { seed, low, high } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let count = shape.iter().product();
                let samples = (0..count).map(|_| rng.gen_range(*low..*high)).collect();
                let shape2 = if dim == 1 { [n, 1] } else { [n, n] };
                GridFunction::new(dim, shape2, h, [0.0, 0.0], samples)
            }
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Parse `name` or `name:key=value,...`; unknown names and keys error.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n.trim(), r),
            None => (s.trim(), ""),
        };
        let mut kv = std::collections::BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                Error::validation(format!("generator parameter `{part}` is not key=value"))
            })?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let f = |kv: &std::collections::BTreeMap<String, String>, key: &str, default: f64| {
            kv.get(key).map_or(Ok(default), |v| {
                v.parse::<f64>().map_err(|_| {
                    Error::validation(format!("generator parameter {key}={v} is not a number"))
                })
            })
        };
        let u = |kv: &std::collections::BTreeMap<String, String>, key: &str, default: u64| {
            kv.get(key).map_or(Ok(default), |v| {
                v.parse::<u64>().map_err(|_| {
                    Error::validation(format!("generator parameter {key}={v} is not an integer"))
                })
            })
        };
        let known = |kv: &std::collections::BTreeMap<String, String>, keys: &[&str]| {
            for k in kv.keys() {
                if !keys.contains(&k.as_str()) {
                    return Err(Error::validation(format!(
                        "unknown generator parameter `{k}` (expected one of {keys:?})"
                    )));
                }
            }
            Ok(())
        };
        let spec = match name {
            "constant" => {
                known(&kv, &["value"])?;
                GeneratorSpec::Constant { value: f(&kv, "value", 1.0)? }
            }
            "indicator" => {
                known(&kv, &["lo", "side"])?;
                GeneratorSpec::Indicator { lo: f(&kv, "lo", 0.25)?, side: f(&kv, "side", 0.5)? }
            }
            "step" => {
                known(&kv, &["threshold", "low", "high"])?;
                GeneratorSpec::Step {
                    threshold: f(&kv, "threshold", 0.5)?,
                    low: f(&kv, "low", 0.0)?,
                    high: f(&kv, "high", 1.0)?,
                }
            }
            "smooth-random" => {
                known(&kv, &["seed", "modes"])?;
                GeneratorSpec::SmoothRandom {
                    seed: u(&kv, "seed", 0)?,
                    modes: u(&kv, "modes", 4)? as u32,
                }
            }
            "log-singularity" => {
                known(&kv, &["center0", "center1", "eps"])?;
                GeneratorSpec::LogSingularity {
                    center0: f(&kv, "center0", 0.375)?,
                    center1: f(&kv, "center1", 0.375)?,
                    eps: f(&kv, "eps", 0.5)?,
                }
            }
            "linear-ramp" => {
                known(&kv, &["slope"])?;
                GeneratorSpec::LinearRamp { slope: f(&kv, "slope", 1.0)? }
            }
            "uniform" => {
                known(&kv, &["seed", "low", "high"])?;
                GeneratorSpec::Uniform {
                    seed: u(&kv, "seed", 0)?,
                    low: f(&kv, "low", -1.0)?,
                    high: f(&kv, "high", 1.0)?,
                }
            }
            other => {
                return Err(Error::validation(format!(
                    "unknown generator `{other}` (expected constant, indicator, step, \
                     smooth-random, log-singularity, linear-ramp, or uniform)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}
