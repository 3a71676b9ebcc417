//! Operator implementations against the independent oracles in `common`.
//!
//! Each case compares a production path (prefix tables, sliding-window maxima,
//! restricted/masked shortcuts) with a from-the-definition reimplementation on
//! seeded random grids, across dimensions, boundary policies, and fractional
//! orders. Non-square 2D grids are included to catch axis-order mistakes.

mod common;

use common::{
    max_abs_diff, naive_maximal, naive_maximal_commutator, naive_sharp, random_grid,
};
use maxosc::grid::{BoundaryPolicy, Cube, CubeFamily, GridFunction};
use maxosc::operators::{
    commutator_maximal, commutator_sharp, maximal, maximal_commutator, maximal_fast,
    maximal_restricted, sharp_masked_on_cube, sharp_maximal, OperatorParams,
};

const POLICIES: [BoundaryPolicy; 2] = [BoundaryPolicy::InteriorOnly, BoundaryPolicy::Clipped];
const ORACLE_TOL: f64 = 1e-12;

fn family(scales: &[usize], boundary: BoundaryPolicy) -> CubeFamily {
    CubeFamily::new(scales.to_vec(), boundary).unwrap()
}

fn params(alpha: f64, scales: &[usize], boundary: BoundaryPolicy) -> OperatorParams {
    OperatorParams::new(alpha, family(scales, boundary)).unwrap()
}

/// Grids the oracle sweeps run over: 1D, square 2D, non-square 2D.
fn corpus(seed: u64) -> Vec<(GridFunction, Vec<usize>)> {
    vec![
        (random_grid(seed, 1, [48, 1], 1.0 / 48.0, -2.0, 2.0), vec![1, 2, 3, 5, 8, 13]),
        (random_grid(seed + 1, 1, [33, 1], 0.4, 0.0, 3.0), vec![1, 4, 9, 33]),
        (random_grid(seed + 2, 2, [14, 14], 0.25, -2.0, 2.0), vec![1, 2, 3, 5]),
        (random_grid(seed + 3, 2, [9, 17], 0.5, -1.0, 4.0), vec![1, 2, 4, 7]),
    ]
}

fn alphas(dim: usize) -> [f64; 3] {
    [0.0, 0.25, 0.5 * dim as f64]
}

#[test]
fn maximal_paths_match_definition() {
    for (f, scales) in corpus(101) {
        for boundary in POLICIES {
            for alpha in alphas(f.dim()) {
                let p = params(alpha, &scales, boundary);
                let want = naive_maximal(&f, alpha, &scales, boundary);
                let brute = maximal(&f, &p).unwrap();
                let fast = maximal_fast(&f, &p).unwrap();
                let ctx = format!("shape {:?} {boundary:?} α={alpha}", f.shape());
                assert!(max_abs_diff(&brute, &want) <= ORACLE_TOL, "reference vs oracle: {ctx}");
                assert!(max_abs_diff(&fast, &want) <= ORACLE_TOL, "fast vs oracle: {ctx}");
                assert_eq!(brute.samples(), fast.samples(), "reference vs fast: {ctx}");
            }
        }
    }
}

#[test]
fn sharp_maximal_matches_definition() {
    for (f, scales) in corpus(202) {
        for boundary in POLICIES {
            let fam = family(&scales, boundary);
            let want = naive_sharp(&f, &scales, boundary);
            let got = sharp_maximal(&f, &fam).unwrap();
            assert!(
                max_abs_diff(&got, &want) <= ORACLE_TOL,
                "shape {:?} {boundary:?}",
                f.shape()
            );
        }
    }
}

#[test]
fn maximal_commutator_matches_definition() {
    // Smaller grids: the oracle is quartic in the window side.
    let cases = vec![
        (
            random_grid(301, 1, [40, 1], 1.0 / 40.0, -2.0, 2.0),
            random_grid(302, 1, [40, 1], 1.0 / 40.0, -2.0, 2.0),
            vec![1, 2, 3, 5, 10],
        ),
        (
            random_grid(303, 2, [10, 13], 0.3, -1.5, 1.5),
            random_grid(304, 2, [10, 13], 0.3, -2.0, 2.0),
            vec![1, 2, 4],
        ),
    ];
    for (b, f, scales) in cases {
        for boundary in POLICIES {
            for alpha in alphas(f.dim()) {
                let p = params(alpha, &scales, boundary);
                let want = naive_maximal_commutator(&b, &f, alpha, &scales, boundary);
                let got = maximal_commutator(&b, &f, &p).unwrap();
                assert!(
                    max_abs_diff(&got, &want) <= ORACLE_TOL,
                    "shape {:?} {boundary:?} α={alpha}",
                    f.shape()
                );
            }
        }
    }
}

#[test]
fn nonlinear_commutators_match_composed_definition() {
    // [b, T]f = b·Tf − T(bf) for T the maximal and sharp operators, with T
    // evaluated by the oracles.
    let b = random_grid(401, 2, [11, 11], 0.2, -2.0, 2.0);
    let f = random_grid(402, 2, [11, 11], 0.2, -2.0, 2.0);
    let bf = b.zip_with(&f, |x, y| x * y).unwrap();
    let scales = vec![1, 2, 3, 4];
    for boundary in POLICIES {
        let p = params(0.5, &scales, boundary);
        let got = commutator_maximal(&b, &f, &p).unwrap();
        let mf = naive_maximal(&f, 0.5, &scales, boundary);
        let mbf = naive_maximal(&bf, 0.5, &scales, boundary);
        for i in 0..f.len() {
            let want = b.samples()[i] * mf[i] - mbf[i];
            assert!(
                (got.samples()[i] - want).abs() <= ORACLE_TOL,
                "{boundary:?} maximal cell {i}: {} vs {want}",
                got.samples()[i]
            );
        }

        let fam = family(&scales, boundary);
        let got = commutator_sharp(&b, &f, &fam).unwrap();
        let sf = naive_sharp(&f, &scales, boundary);
        let sbf = naive_sharp(&bf, &scales, boundary);
        for i in 0..f.len() {
            let want = b.samples()[i] * sf[i] - sbf[i];
            assert!(
                (got.samples()[i] - want).abs() <= ORACLE_TOL,
                "{boundary:?} sharp cell {i}: {} vs {want}",
                got.samples()[i]
            );
        }
    }
}

#[test]
fn restricted_maximal_matches_subgrid_definition() {
    // Restricting the supremum to cubes inside Q* is, by definition, the
    // unrestricted operator on the extracted subgrid with interior windows.
    for dim in [1usize, 2] {
        let f = random_grid(501 + dim as u64, dim, [18, 18], 0.25, -2.0, 2.0);
        let q = if dim == 1 { Cube::new_1d(4, 9) } else { Cube::new_2d([3, 6], 9) };
        for boundary in POLICIES {
            for alpha in alphas(dim) {
                let p = params(alpha, &[1, 2, 3, 5, 9], boundary);
                let got = maximal_restricted(&f, &q, &p).unwrap();

                let qb = q.clipped_bounds(&f).unwrap();
                let n1 = f.shape2()[1];
                let mut sub = Vec::new();
                for i0 in qb[0].0..qb[0].1 {
                    for i1 in qb[1].0..qb[1].1 {
                        sub.push(f.samples()[i0 * n1 + i1]);
                    }
                }
                let subgrid = if dim == 1 {
                    GridFunction::new_1d(sub, f.h()).unwrap()
                } else {
                    GridFunction::new_2d(qb[0].1 - qb[0].0, qb[1].1 - qb[1].0, sub, f.h())
                        .unwrap()
                };
                let want = naive_maximal(
                    &subgrid,
                    alpha,
                    &[1, 2, 3, 5, 9],
                    BoundaryPolicy::InteriorOnly,
                );
                for (i, v) in got.values().iter().enumerate() {
                    assert!(
                        (v - want[i]).abs() <= ORACLE_TOL,
                        "dim {dim} {boundary:?} α={alpha} slot {i}"
                    );
                }
            }
        }
    }
}

#[test]
fn masked_sharp_matches_masked_definition() {
    // The cube-local shortcut must equal the plain sharp function of b·χ_Q.
    for dim in [1usize, 2] {
        let b = random_grid(601 + dim as u64, dim, [16, 16], 0.5, -2.0, 2.0);
        let q = if dim == 1 { Cube::new_1d(5, 6) } else { Cube::new_2d([4, 7], 6) };
        for boundary in POLICIES {
            let scales = vec![1, 2, 3, 4, 6, 8];
            let fam = family(&scales, boundary);
            let got = sharp_masked_on_cube(&b, &q, &fam).unwrap();
            let want = naive_sharp(&b.masked(&q), &scales, boundary);
            let n1 = b.shape2()[1];
            for (cell, v) in got.cells().zip(got.values()) {
                let w = want[cell[0] * n1 + cell[1]];
                assert!(
                    (v - w).abs() <= ORACLE_TOL,
                    "dim {dim} {boundary:?} cell {cell:?}: {v} vs {w}"
                );
            }
        }
    }
}

#[test]
fn uncovered_cells_are_reported_not_fabricated() {
    // A family whose only scale exceeds the grid must error under the
    // interior policy, naming an uncovered cell — never return values.
    let f = random_grid(701, 1, [6, 1], 1.0, -1.0, 1.0);
    let p = params(0.0, &[9], BoundaryPolicy::InteriorOnly);
    assert!(maximal(&f, &p).is_err());
    assert!(maximal_fast(&f, &p).is_err());
    assert!(sharp_maximal(&f, &p.family).is_err());
    // The clipped policy admits overhanging windows and must agree with the
    // oracle on them.
    let p = params(0.0, &[9], BoundaryPolicy::Clipped);
    let want = naive_maximal(&f, 0.0, &[9], BoundaryPolicy::Clipped);
    let got = maximal_fast(&f, &p).unwrap();
    assert!(max_abs_diff(&got, &want) <= ORACLE_TOL);
}
