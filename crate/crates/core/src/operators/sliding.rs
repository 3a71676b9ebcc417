//! Sliding-window maximum over anchor arrays.
//!
//! Every fast operator path reduces to the same distribution step: each
//! window (cube) of a fixed scale has one value per anchor position, and each
//! cell takes the maximum over the windows covering it. Covering windows form
//! a contiguous anchor range per axis, so the distribution is a clamped
//! sliding maximum — one monotone-deque pass per axis, O(1) amortized per
//! output.

use std::collections::VecDeque;

/// Clamped sliding maximum.
///
/// Anchor array entry `s[j]` sits at coordinate `off + j`. For each output
/// slot `i`, with cell coordinate `x = x_lo + i`, writes the maximum of
/// `s[j]` over the anchors whose width-`k` window covers `x`:
/// `off + j ∈ [x − k + 1, x]`, clamped to the array. Panics if some output
/// has no admissible anchor — callers enumerate spans so that every cell is
/// covered.
pub fn cover_max_into(s: &[f64], k: usize, x_lo: i64, off: i64, out: &mut [f64]) {
    debug_assert!(k >= 1);
    debug_assert!(!s.is_empty());
    let slen = s.len() as i64;
    let kk = k as i64;
    let mut dq: VecDeque<i64> = VecDeque::new();
    let mut next = (x_lo - off - kk + 1).max(0);
    for (i, slot) in out.iter_mut().enumerate() {
        let x = x_lo + i as i64;
        let hi = (x - off).min(slen - 1);
        let lo = (x - off - kk + 1).max(0);
        while next <= hi {
            let v = s[next as usize];
            while let Some(&back) = dq.back() {
                if s[back as usize] <= v {
                    dq.pop_back();
                } else {
                    break;
                }
            }
            dq.push_back(next);
            next += 1;
        }
        while let Some(&front) = dq.front() {
            if front < lo {
                dq.pop_front();
            } else {
                break;
            }
        }
        let j = *dq
            .front()
            .unwrap_or_else(|| panic!("no anchor covers cell coordinate {x} (k={k}, off={off})"));
        *slot = s[j as usize];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive(s: &[f64], k: usize, x_lo: i64, off: i64, n_out: usize) -> Vec<f64> {
        (0..n_out)
            .map(|i| {
                let x = x_lo + i as i64;
                let lo = (x - off - k as i64 + 1).max(0);
                let hi = (x - off).min(s.len() as i64 - 1);
                assert!(lo <= hi, "test setup must cover every output");
                (lo..=hi).map(|j| s[j as usize]).fold(f64::NEG_INFINITY, f64::max)
            })
            .collect()
    }

    #[test]
    fn width_one_is_identity() {
        let s = [3.0, 1.0, 4.0, 1.0, 5.0];
        let mut out = [0.0; 5];
        cover_max_into(&s, 1, 0, 0, &mut out);
        assert_eq!(out, s);
    }

    #[test]
    fn full_width_single_anchor_broadcasts_value() {
        // One anchor (window = whole axis): every cell sees that value.
        let s = [7.5];
        let mut out = [0.0; 4];
        cover_max_into(&s, 4, 0, 0, &mut out);
        assert_eq!(out, [7.5; 4]);
    }

    #[test]
    fn interior_anchor_layout() {
        // 6 cells, width 3: anchors at 0..=3; edge cells clamp.
        let s = [1.0, 9.0, 2.0, 3.0];
        let mut out = [0.0; 6];
        cover_max_into(&s, 3, 0, 0, &mut out);
        assert_eq!(out, naive(&s, 3, 0, 0, 6).as_slice());
        assert_eq!(out[0], 1.0); // only anchor 0 covers cell 0
        assert_eq!(out[5], 3.0); // only anchor 3 covers cell 5
        assert_eq!(out[2], 9.0);
    }

    #[test]
    fn negative_offset_models_overhanging_anchors() {
        // Width 2, anchors at coordinates -1..=3 (clipped policy on 4 cells):
        // every cell is covered by exactly two anchors.
        let s = [5.0, 1.0, 2.0, 8.0, 3.0];
        let mut out = [0.0; 4];
        cover_max_into(&s, 2, 0, -1, &mut out);
        assert_eq!(out, naive(&s, 2, 0, -1, 4).as_slice());
        assert_eq!(out, [5.0, 2.0, 8.0, 8.0]);
    }

    #[test]
    fn offset_window_restriction() {
        // Outputs start at x=4 with anchors at coordinates 2..=6 — the
        // masked-cube case where both ranges are interior sub-spans.
        let s = [4.0, 6.0, 1.0, 1.0, 9.0];
        let mut out = [0.0; 3];
        cover_max_into(&s, 3, 4, 2, &mut out);
        assert_eq!(out, naive(&s, 3, 4, 2, 3).as_slice());
    }

    #[test]
    fn matches_naive_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let slen = rng.gen_range(1..40);
            let k = rng.gen_range(1..=12usize);
            let off = rng.gen_range(-8i64..8);
            let s: Vec<f64> = (0..slen).map(|_| rng.gen_range(-100.0..100.0)).collect();
            // Valid output coordinates x: lo window nonempty needs
            // off <= x <= off + slen - 1 + k - 1.
            let x_min = off;
            let x_max = off + slen as i64 - 1 + k as i64 - 1;
            let x_lo = rng.gen_range(x_min..=x_max);
            let n_out = rng.gen_range(1..=(x_max - x_lo + 1) as usize);
            let mut out = vec![0.0; n_out];
            cover_max_into(&s, k, x_lo, off, &mut out);
            assert_eq!(out, naive(&s, k, x_lo, off, n_out), "slen={slen} k={k} off={off} x_lo={x_lo}");
        }
    }

    #[test]
    #[should_panic(expected = "no anchor covers")]
    fn uncovered_cell_panics() {
        let s = [1.0, 2.0];
        let mut out = [0.0; 1];
        // x = 10 is beyond the last anchor's window.
        cover_max_into(&s, 2, 10, 0, &mut out);
    }
}
