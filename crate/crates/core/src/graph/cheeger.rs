//! Exhaustive Cheeger constants for small graphs.

use super::MultiGraph;
use crate::error::{Error, Result};
use crate::par;

pub const CHEEGER_MAX_VERTICES: usize = 24;

// Masks enumerated per parallel chunk (low bits, walked in Gray-code order).
const CHUNK_BITS: usize = 14;

fn check_size(g: &MultiGraph) -> Result<()> {
    let n = g.num_vertices();
    if n > CHEEGER_MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "brute-force Cheeger limited to {CHEEGER_MAX_VERTICES} vertices, got {n}"
        )));
    }
    if n < 2 {
        return Err(Error::param("Cheeger constant needs at least 2 vertices"));
    }
    Ok(())
}

/// Walks every subset `U` with the last vertex outside (each cut once) and
/// folds `score(|delta U|, U)` with `min`. `U = {}` is included.
fn min_over_cuts(g: &MultiGraph, score: impl Fn(usize, u32) -> f64 + Sync + Send) -> f64 {
    let n = g.num_vertices();
    let free = n - 1;
    let low = free.min(CHUNK_BITS);
    let chunks = 1usize << (free - low);
    par::map_reduce(
        chunks,
        f64::INFINITY,
        |chunk| {
            let mut mask: u32 = (chunk as u32) << low;
            let inside = |m: u32, v: usize| v < free && (m >> v) & 1 == 1;
            let mut boundary = g
                .edges()
                .iter()
                .filter(|&&(u, v)| inside(mask, u) != inside(mask, v))
                .count() as i64;
            let mut best = score(boundary as usize, mask);
            for i in 1u32..(1u32 << low) {
                let v = i.trailing_zeros() as usize;
                // Flip v: edges to the same side become cut, cut edges heal.
                let was_in = inside(mask, v);
                for &(w, _) in g.neighbors(v) {
                    if inside(mask, w) == was_in {
                        boundary += 1;
                    } else {
                        boundary -= 1;
                    }
                }
                mask ^= 1 << v;
                best = best.min(score(boundary as usize, mask));
            }
            best
        },
        f64::min,
    )
}

/// `min |delta(U)| / min(|U|, |V \ U|)` over nonempty proper subsets.
pub fn cheeger_bruteforce(g: &MultiGraph) -> Result<f64> {
    check_size(g)?;
    let n = g.num_vertices() as u32;
    Ok(min_over_cuts(g, |boundary, mask| {
        let size = mask.count_ones();
        if size == 0 {
            f64::INFINITY
        } else {
            boundary as f64 / size.min(n - size) as f64
        }
    }))
}

/// Relative Cheeger constant: `min |delta(U)| / min(t, |U & P|, |P \ U|)`
/// over subsets with a positive denominator. Infinite when none qualifies.
pub fn relative_cheeger_bruteforce(g: &MultiGraph, ports: &[usize], t: usize) -> Result<f64> {
    check_size(g)?;
    if ports.is_empty() {
        return Err(Error::param("relative Cheeger constant needs ports"));
    }
    let mut port_mask: u32 = 0;
    for &p in ports {
        if p >= g.num_vertices() {
            return Err(Error::param(format!("port {p} out of range")));
        }
        port_mask |= 1 << p;
    }
    let total = port_mask.count_ones();
    Ok(min_over_cuts(g, |boundary, mask| {
        let inside = (mask & port_mask).count_ones();
        let denom = (t as u32).min(inside).min(total - inside);
        if denom == 0 {
            f64::INFINITY
        } else {
            boundary as f64 / denom as f64
        }
    }))
}
