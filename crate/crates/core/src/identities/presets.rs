//! Deterministic (seeded) matrix presets. The identities hold for every
//! input, so each run pins concrete matrices derived from its seed and
//! echoes them in full into the report.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{sample_ginibre, SeededRng};
use crate::linalg::{operator_norm, CMat};

/// Stream index offset reserved for preset generation; estimation streams
/// stay in lower blocks.
const PRESET_STREAM_BASE: u64 = 1_000_000;

/// Full echo of a preset matrix: row-major `[re, im]` entry pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixEcho {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&CMat> for MatrixEcho {
    fn from(m: &CMat) -> Self {
        let mut entries = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                entries.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        MatrixEcho {
            rows: m.nrows(),
            cols: m.ncols(),
            entries,
        }
    }
}

/// Dense pseudo-random preset scaled to operator norm `norm`.
pub fn preset_full_matrix(rows: usize, cols: usize, seed: u64, tag: u64, norm: f64) -> CMat {
    let mut rng = SeededRng::new(seed, PRESET_STREAM_BASE + tag);
    let g = sample_ginibre(rows, cols, &mut rng);
    let op = operator_norm(&g);
    g * Complex64::new(norm / op, 0.0)
}

/// Real diagonal preset with distinct entries `scale * (n-j+1)/n`,
/// j = 1..n; all entries lie in (0, scale].
pub fn preset_contraction_diag(n: usize, scale: f64) -> CMat {
    CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(scale * ((n - i) as f64) / n as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_deterministic_and_scaled() {
        let a = preset_full_matrix(4, 2, 7, 1, 1.0);
        let b = preset_full_matrix(4, 2, 7, 1, 1.0);
        assert_eq!(a, b);
        assert!((operator_norm(&a) - 1.0).abs() < 1e-12);
        let c = preset_full_matrix(4, 2, 8, 1, 1.0);
        assert_ne!(a, c);
    }

    #[test]
    fn diag_preset_entries() {
        let d = preset_contraction_diag(3, 0.6);
        assert!((d[(0, 0)].re - 0.6).abs() < 1e-15);
        assert!((d[(1, 1)].re - 0.4).abs() < 1e-15);
        assert!((d[(2, 2)].re - 0.2).abs() < 1e-15);
    }
}
