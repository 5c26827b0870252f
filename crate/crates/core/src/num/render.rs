//! Rasters: escape-time renders for polynomial Julia sets and inverse
//! iteration point clouds for the candidate rational maps. Output is binary
//! PPM (P6) with optional PNG.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::solve::RationalMapParams;

#[derive(Clone, Debug, Serialize)]
pub struct ImageSpec {
    pub width: usize,
    pub height: usize,
    pub center_re: f64,
    pub center_im: f64,
    /// Half-width of the view in the complex plane.
    pub span: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for ImageSpec {
    fn default() -> Self {
        ImageSpec {
            width: 512,
            height: 512,
            center_re: 0.0,
            center_im: 0.0,
            span: 2.2,
            max_iter: 256,
            seed: 7,
        }
    }
}

pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[u8; 3]>,
}

impl Raster {
    pub fn new(width: usize, height: usize) -> Raster {
        Raster {
            width,
            height,
            pixels: vec![[0, 0, 0]; width * height],
        }
    }

    pub fn put(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        if x < self.width && y < self.height {
            self.pixels[y * self.width + x] = rgb;
        }
    }

    pub fn write_ppm(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::with_capacity(self.pixels.len() * 3 + 32);
        write!(buf, "P6\n{} {}\n255\n", self.width, self.height)?;
        for p in &self.pixels {
            buf.extend_from_slice(p);
        }
        std::fs::write(path, buf)?;
        Ok(())
    }

    pub fn write_png(&self, path: &Path) -> Result<()> {
        let mut img = image::RgbImage::new(self.width as u32, self.height as u32);
        for (i, p) in self.pixels.iter().enumerate() {
            let x = (i % self.width) as u32;
            let y = (i / self.width) as u32;
            img.put_pixel(x, y, image::Rgb(*p));
        }
        img.save(path)
            .map_err(|e| Error::numeric(format!("png encode failed: {e}")))?;
        Ok(())
    }
}

fn pixel_to_plane(spec: &ImageSpec, x: usize, y: usize) -> Complex64 {
    let step = 2.0 * spec.span / spec.width as f64;
    Complex64::new(
        spec.center_re - spec.span + (x as f64 + 0.5) * step,
        spec.center_im + spec.span * (spec.height as f64 / spec.width as f64)
            - (y as f64 + 0.5) * step,
    )
}

fn plane_to_pixel(spec: &ImageSpec, z: Complex64) -> Option<(usize, usize)> {
    let step = 2.0 * spec.span / spec.width as f64;
    let fx = (z.re - (spec.center_re - spec.span)) / step;
    let fy = ((spec.center_im + spec.span * (spec.height as f64 / spec.width as f64)) - z.im)
        / step;
    if fx < 0.0 || fy < 0.0 {
        return None;
    }
    let (x, y) = (fx as usize, fy as usize);
    if x < spec.width && y < spec.height {
        Some((x, y))
    } else {
        None
    }
}

/// Escape iterations of z^2 + c from each pixel; None = bounded.
pub fn escape_grid(c: Complex64, spec: &ImageSpec) -> Vec<Option<usize>> {
    let mut grid = Vec::with_capacity(spec.width * spec.height);
    for y in 0..spec.height {
        for x in 0..spec.width {
            let mut z = pixel_to_plane(spec, x, y);
            let mut esc = None;
            for i in 0..spec.max_iter {
                if z.norm_sqr() > 4.0 {
                    esc = Some(i);
                    break;
                }
                z = z * z + c;
            }
            grid.push(esc);
        }
    }
    grid
}

/// Pixels marking the Julia set: bounded pixels with an escaping
/// 4-neighbour, plus the slowest escapers (within one step of the grid
/// maximum), which carry dendrites of zero area.
pub fn julia_boundary_pixels(grid: &[Option<usize>], spec: &ImageSpec) -> Vec<(usize, usize)> {
    let at = |x: usize, y: usize| grid[y * spec.width + x].is_none();
    let mut out = Vec::new();
    for y in 0..spec.height {
        for x in 0..spec.width {
            if !at(x, y) {
                continue;
            }
            let escaped_neighbor = (x > 0 && !at(x - 1, y))
                || (x + 1 < spec.width && !at(x + 1, y))
                || (y > 0 && !at(x, y - 1))
                || (y + 1 < spec.height && !at(x, y + 1));
            if escaped_neighbor {
                out.push((x, y));
            }
        }
    }
    let max_time = grid.iter().flatten().copied().max();
    if let Some(mt) = max_time {
        if mt >= 6 {
            for y in 0..spec.height {
                for x in 0..spec.width {
                    if grid[y * spec.width + x] == Some(mt) {
                        out.push((x, y));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Escape-time raster of J(z^2 + c), with the boundary marked white.
pub fn render_polynomial_julia(c: Complex64, spec: &ImageSpec) -> Raster {
    let grid = escape_grid(c, spec);
    let mut raster = Raster::new(spec.width, spec.height);
    for y in 0..spec.height {
        for x in 0..spec.width {
            let rgb = match grid[y * spec.width + x] {
                None => [20, 20, 30],
                Some(i) => {
                    let t = (i as f64 / spec.max_iter as f64).powf(0.35);
                    let v = (t * 255.0) as u8;
                    [v / 2, v, 160u8.saturating_add(v / 4)]
                }
            };
            raster.put(x, y, rgb);
        }
    }
    for (x, y) in julia_boundary_pixels(&grid, spec) {
        raster.put(x, y, [255, 255, 255]);
    }
    raster
}

/// Inverse-iteration cloud of J(G), deterministic for a fixed seed.
pub fn inverse_iteration_cloud(
    g: &RationalMapParams,
    spec: &ImageSpec,
    points: usize,
) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // start at a repelling fixed point: z* = (1 - lambda) / (lambda - a)
    let z_star = (Complex64::new(1.0, 0.0) - g.lambda()) / (g.lambda() - g.a());
    let mut z = z_star;
    let mut out = Vec::with_capacity(points);
    for i in 0..points + 64 {
        let (p, q) = g.preimages(z);
        z = if rng.random::<bool>() { p } else { q };
        if !z.is_finite() {
            z = z_star;
            continue;
        }
        if i >= 64 {
            out.push(z);
        }
    }
    out
}

/// Raster of the inverse-iteration cloud.
pub fn render_rational_julia(g: &RationalMapParams, spec: &ImageSpec, points: usize) -> Raster {
    let mut raster = Raster::new(spec.width, spec.height);
    for y in 0..spec.height {
        for x in 0..spec.width {
            raster.put(x, y, [12, 12, 20]);
        }
    }
    for z in inverse_iteration_cloud(g, spec, points) {
        if let Some((x, y)) = plane_to_pixel(spec, z) {
            raster.put(x, y, [240, 240, 250]);
        }
    }
    raster
}

/// Count of distinct pixels hit by the cloud (regression fixture quantity).
pub fn cloud_pixel_count(g: &RationalMapParams, spec: &ImageSpec, points: usize) -> usize {
    let mut hit = vec![false; spec.width * spec.height];
    let mut count = 0;
    for z in inverse_iteration_cloud(g, spec, points) {
        if let Some((x, y)) = plane_to_pixel(spec, z) {
            if !std::mem::replace(&mut hit[y * spec.width + x], true) {
                count += 1;
            }
        }
    }
    count
}

/// Overlay a polyline on a raster (for ray/chain illustrations).
pub fn draw_polyline(raster: &mut Raster, spec: &ImageSpec, pts: &[Complex64], rgb: [u8; 3]) {
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let steps = 64;
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let z = a + (b - a) * t;
            if let Some((x, y)) = plane_to_pixel(spec, z) {
                raster.put(x, y, rgb);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_boundary_hugs_the_segment() {
        let spec = ImageSpec {
            width: 512,
            height: 512,
            span: 2.2,
            max_iter: 200,
            ..Default::default()
        };
        let grid = escape_grid(Complex64::new(-2.0, 0.0), &spec);
        let boundary = julia_boundary_pixels(&grid, &spec);
        assert!(!boundary.is_empty());
        let close = boundary
            .iter()
            .filter(|&&(x, y)| {
                let z = pixel_to_plane(&spec, x, y);
                let seg_dist = if z.re.abs() <= 2.0 {
                    z.im.abs()
                } else {
                    ((z.re.abs() - 2.0).powi(2) + z.im * z.im).sqrt()
                };
                seg_dist < 1e-2
            })
            .count();
        assert!(
            close as f64 >= 0.99 * boundary.len() as f64,
            "{close}/{}",
            boundary.len()
        );
    }

    #[test]
    fn unit_circle_boundary_for_c_zero() {
        let spec = ImageSpec {
            width: 400,
            height: 400,
            span: 1.6,
            max_iter: 200,
            ..Default::default()
        };
        let grid = escape_grid(Complex64::new(0.0, 0.0), &spec);
        let boundary = julia_boundary_pixels(&grid, &spec);
        assert!(!boundary.is_empty());
        for &(x, y) in &boundary {
            let z = pixel_to_plane(&spec, x, y);
            assert!((z.norm() - 1.0).abs() < 1e-2, "boundary pixel at {z}");
        }
    }
}
