//! Minimal and maximal genera of `K_n` and the best/worst surface classes
//! for the walker.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    Orientable,
    NonOrientable,
    /// Both orientable and non-orientable minimal-genus embeddings.
    Either,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnGenera {
    pub n: usize,
    /// Minimal orientable genus `ceil((n-3)(n-4)/12)`.
    pub orientable_min: usize,
    /// Minimal non-orientable genus `ceil((n-3)(n-4)/6)`, or 3 for `n = 7`.
    pub nonorientable_min: usize,
    /// Maximal orientable genus `floor((n-1)(n-2)/4)`.
    pub orientable_max: usize,
    /// Maximal non-orientable genus, the Betti number `|E| - |V| + 1`.
    pub nonorientable_max: usize,
    /// Surface of the best embeddings (minimal genus).
    pub best: SurfaceKind,
    /// Surface of the worst embeddings (maximal genus).
    pub worst: SurfaceKind,
}

pub fn kn_best_worst(n: usize) -> Result<KnGenera> {
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    let prod = if n <= 4 { 0 } else { (n - 3) * (n - 4) };
    let nonorientable_min = if n == 7 { 3 } else { prod.div_ceil(6) };
    let edges = n * (n - 1) / 2;
    let (best, worst) = match n % 4 {
        1 | 2 => (SurfaceKind::NonOrientable, SurfaceKind::Orientable),
        _ if matches!(n, 3 | 4 | 7) => (SurfaceKind::Orientable, SurfaceKind::NonOrientable),
        _ => (SurfaceKind::Either, SurfaceKind::NonOrientable),
    };
    Ok(KnGenera {
        n,
        orientable_min: prod.div_ceil(12),
        nonorientable_min,
        orientable_max: (n - 1) * (n - 2) / 4,
        nonorientable_max: edges + 1 - n,
        best,
        worst,
    })
}
