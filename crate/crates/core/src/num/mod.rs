//! Floating-point dynamics: ray tracing, parameter solvers, the candidate
//! rational-map family, Siegel geometry, rendering, and the pullback probes.

pub mod drops;
pub mod matching;
pub mod probe;
pub mod ray;
pub mod render;
pub mod solve;

use num_complex::Complex64;

/// Chordal (spherical) distance 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)).
pub fn chordal(z: Complex64, w: Complex64) -> f64 {
    2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
}

/// Chordal distance from a finite point to the point at infinity.
pub fn chordal_to_infinity(z: Complex64) -> f64 {
    2.0 / (1.0 + z.norm_sqr()).sqrt()
}

/// Max chordal diameter of a point set, with a cheap upper-bound short cut.
pub fn chordal_diameter(points: &[Complex64]) -> f64 {
    let mut best = 0.0f64;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let d = chordal(p, q);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Quick upper bound for the chordal diameter via the Euclidean bounding box.
pub fn chordal_diameter_upper_bound(points: &[Complex64]) -> f64 {
    let (mut re_lo, mut re_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut im_lo, mut im_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut min_norm2 = f64::INFINITY;
    for p in points {
        re_lo = re_lo.min(p.re);
        re_hi = re_hi.max(p.re);
        im_lo = im_lo.min(p.im);
        im_hi = im_hi.max(p.im);
        min_norm2 = min_norm2.min(p.norm_sqr());
    }
    let diag = ((re_hi - re_lo).powi(2) + (im_hi - im_lo).powi(2)).sqrt();
    // chordal(z, w) <= 2|z-w| / (1 + min |.|^2), crude but safe
    2.0 * diag / (1.0 + min_norm2).max(1.0)
}

/// Worker-thread count from the environment (MATING_WORKBENCH_THREADS).
pub fn thread_count() -> usize {
    std::env::var("MATING_WORKBENCH_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Order-preserving parallel map over an item slice; the merge is by index,
/// so the result is independent of the thread count.
pub fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let n = thread_count().min(items.len().max(1));
    if n <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(n);
    let mut out: Vec<Option<U>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    std::thread::scope(|s| {
        for (slot_chunk, item_chunk) in out.chunks_mut(chunk).zip(items.chunks(chunk)) {
            let f = &f;
            s.spawn(move || {
                for (slot, item) in slot_chunk.iter_mut().zip(item_chunk) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    out.into_iter().map(|x| x.unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordal_metric_basics() {
        let z = Complex64::new(0.0, 0.0);
        let w = Complex64::new(1.0, 0.0);
        assert!((chordal(z, w) - 2.0 / 2f64.sqrt()).abs() < 1e-14);
        assert!((chordal_to_infinity(z) - 2.0).abs() < 1e-14);
        assert!(chordal(z, w) <= chordal_diameter_upper_bound(&[z, w]) + 1e-12);
    }

    #[test]
    fn parallel_map_is_order_preserving() {
        let items: Vec<i64> = (0..100).collect();
        let out = parallel_map(&items, |x| x * x);
        assert_eq!(out, items.iter().map(|x| x * x).collect::<Vec<_>>());
    }
}
