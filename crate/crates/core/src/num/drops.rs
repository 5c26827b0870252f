//! Siegel-side numerics: the disk boundary as the critical orbit, iterated
//! preimage drops with their attach points, and drop chains converging to
//! ray landing points.

use num_complex::Complex64;
use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::num::chordal;
use crate::num::ray::{lambda_of, trace_ray_siegel};
use crate::theta::Theta;

/// Numeric context for one Siegel polynomial.
#[derive(Clone, Debug)]
pub struct SiegelNumerics {
    pub theta_name: String,
    pub theta_f: f64,
    pub lambda: Complex64,
    pub x_theta: Complex64,
    /// Boundary samples in circular order around the disk.
    pub boundary: Vec<Complex64>,
}

/// Forward orbit of the critical point, in orbit order.
pub fn siegel_disk_boundary(theta: &Theta, samples: usize) -> Result<Vec<Complex64>> {
    let lambda = lambda_of(theta);
    let x_theta = -lambda / 2.0;
    let mut orbit = Vec::with_capacity(samples);
    let mut z = x_theta;
    for n in 0..samples {
        if n > 0 {
            z = lambda * z + z * z;
        }
        if !z.is_finite() || z.norm() > 4.0 {
            return Err(Error::numeric(format!(
                "critical orbit of P_theta escaped at iterate {n}; theta precision is wrong"
            )));
        }
        orbit.push(z);
    }
    Ok(orbit)
}

/// Combinatorial rotation number of the sampled boundary orbit: the position
/// shift of the successor map in circular (argument) order.
pub fn boundary_rotation_number(orbit: &[Complex64]) -> f64 {
    let m = orbit.len();
    let mut idx: Vec<usize> = (0..m).collect();
    idx.sort_by(|&i, &j| {
        orbit[i]
            .arg()
            .partial_cmp(&orbit[j].arg())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut rank = vec![0usize; m];
    for (pos, &i) in idx.iter().enumerate() {
        rank[i] = pos;
    }
    // successor in orbit order advances the circular rank by a fixed shift
    let mut shifts = vec![0usize; m];
    for i in 0..m - 1 {
        shifts[i] = (rank[i + 1] + m - rank[i]) % m;
    }
    // majority vote (boundary points near the cut can be off by one)
    shifts.truncate(m - 1);
    shifts.sort_unstable();
    let shift = shifts[shifts.len() / 2];
    shift as f64 / m as f64
}

impl SiegelNumerics {
    pub fn new(theta: &Theta, boundary_samples: usize) -> Result<SiegelNumerics> {
        let lambda = lambda_of(theta);
        let x_theta = -lambda / 2.0;
        let orbit = siegel_disk_boundary(theta, boundary_samples)?;
        // spatial order around the disk = order of the internal angle n*theta
        let tf = theta.to_f64();
        let mut idx: Vec<usize> = (0..orbit.len()).collect();
        idx.sort_by(|&i, &j| {
            let ai = (i as f64 * tf).fract();
            let aj = (j as f64 * tf).fract();
            ai.partial_cmp(&aj).unwrap_or(std::cmp::Ordering::Equal)
        });
        let boundary = idx.into_iter().map(|i| orbit[i]).collect();
        Ok(SiegelNumerics {
            theta_name: theta.name().to_string(),
            theta_f: tf,
            lambda,
            x_theta,
            boundary,
        })
    }

    /// The two preimages of w under P_theta; they sum to -lambda.
    pub fn preimages(&self, w: Complex64) -> (Complex64, Complex64) {
        let disc = (self.lambda * self.lambda + 4.0 * w).sqrt();
        let r = (-self.lambda + disc) / 2.0;
        (r, -self.lambda - r)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DropNode {
    /// Dynamical address: branch choices from U_1; length equals depth.
    pub address: Vec<usize>,
    pub depth: usize,
    pub center_re: f64,
    pub center_im: f64,
    pub attach_re: f64,
    pub attach_im: f64,
    /// Address of the drop whose closure this drop touches (the paper's
    /// parent); None when attached to the Siegel disk itself.
    pub chain_parent: Option<Vec<usize>>,
    #[serde(skip)]
    pub boundary: Vec<Complex64>,
}

impl DropNode {
    pub fn center(&self) -> Complex64 {
        Complex64::new(self.center_re, self.center_im)
    }

    pub fn attach(&self) -> Complex64 {
        Complex64::new(self.attach_re, self.attach_im)
    }

    /// Spherical distance from the closure (sampled) to a point.
    pub fn closure_distance(&self, z: Complex64) -> f64 {
        let mut best = chordal(self.center(), z);
        for &b in &self.boundary {
            let d = chordal(b, z);
            if d < best {
                best = d;
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
pub struct DropTree {
    pub ctx: SiegelNumerics,
    pub max_depth: usize,
    pub drops: Vec<DropNode>,
}

/// All drops of depth <= max_depth with centers, attach points, boundary
/// samples, and chain parents.
pub fn drop_tree(ctx: &SiegelNumerics, max_depth: usize) -> Result<DropTree> {
    let mut drops: Vec<DropNode> = Vec::new();
    if max_depth == 0 {
        return Ok(DropTree {
            ctx: ctx.clone(),
            max_depth,
            drops,
        });
    }
    // U_1: boundary is the reflection z -> -lambda - z of the disk boundary
    let u1_boundary: Vec<Complex64> = ctx.boundary.iter().map(|z| -ctx.lambda - z).collect();
    drops.push(DropNode {
        address: vec![1],
        depth: 1,
        center_re: -ctx.lambda.re,
        center_im: -ctx.lambda.im,
        attach_re: ctx.x_theta.re,
        attach_im: ctx.x_theta.im,
        chain_parent: None,
        boundary: u1_boundary,
    });
    let mut level_start = 0usize;
    for _depth in 2..=max_depth {
        let level_end = drops.len();
        for vi in level_start..level_end {
            let children = pull_back_drop(ctx, &drops[vi])?;
            for child in children {
                drops.push(child);
            }
        }
        level_start = level_end;
    }
    // chain parents: the shallower drop (or the disk) whose boundary carries
    // the attach point
    let tol = 64.0 * boundary_spacing(&ctx.boundary);
    for i in 0..drops.len() {
        let attach = drops[i].attach();
        let d_disk = ctx
            .boundary
            .iter()
            .map(|&b| chordal(b, attach))
            .fold(f64::INFINITY, f64::min);
        let mut best: Option<(f64, Option<Vec<usize>>)> = Some((d_disk, None));
        for j in 0..drops.len() {
            if drops[j].depth >= drops[i].depth {
                continue;
            }
            let d = drops[j]
                .boundary
                .iter()
                .map(|&b| chordal(b, attach))
                .fold(f64::INFINITY, f64::min);
            if d < best.as_ref().unwrap().0 {
                best = Some((d, Some(drops[j].address.clone())));
            }
        }
        let (d, parent) = best.unwrap();
        if d > tol {
            return Err(Error::numeric(format!(
                "attach point of drop {:?} is {d:.2e} from every candidate parent",
                drops[i].address
            )));
        }
        drops[i].chain_parent = parent;
    }
    Ok(DropTree {
        ctx: ctx.clone(),
        max_depth,
        drops,
    })
}

fn boundary_spacing(boundary: &[Complex64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..boundary.len() {
        let j = (i + 1) % boundary.len();
        worst = worst.max((boundary[i] - boundary[j]).norm());
    }
    worst
}

fn pull_back_drop(ctx: &SiegelNumerics, v: &DropNode) -> Result<Vec<DropNode>> {
    let b = &v.boundary;
    if b.is_empty() {
        return Err(Error::numeric("drop with empty boundary sample"));
    }
    let (r0, s0) = ctx.preimages(b[0]);
    let mut poly1 = vec![r0];
    let mut poly2 = vec![s0];
    for &w in &b[1..] {
        let (p, q) = ctx.preimages(w);
        let last1 = *poly1.last().unwrap();
        if (p - last1).norm() <= (q - last1).norm() {
            poly1.push(p);
            poly2.push(q);
        } else {
            poly1.push(q);
            poly2.push(p);
        }
    }
    let (ca, cb) = ctx.preimages(v.center());
    let (aa, ab) = ctx.preimages(v.attach());
    let assign = |target: Complex64, poly: &[Complex64]| -> f64 {
        poly.iter()
            .map(|&p| (p - target).norm())
            .fold(f64::INFINITY, f64::min)
    };
    let mut children = Vec::with_capacity(2);
    for (poly, other) in [(&poly1, &poly2), (&poly2, &poly1)] {
        let center = if assign(ca, poly) < assign(ca, other) {
            ca
        } else {
            cb
        };
        let attach = if assign(aa, poly) < assign(aa, other) {
            aa
        } else {
            ab
        };
        children.push(DropNode {
            address: Vec::new(),
            depth: v.depth + 1,
            center_re: center.re,
            center_im: center.im,
            attach_re: attach.re,
            attach_im: attach.im,
            chain_parent: None,
            boundary: poly.clone(),
        });
    }
    // deterministic sibling indices by lexicographic center
    children.sort_by(|x, y| {
        (x.center_re, x.center_im)
            .partial_cmp(&(y.center_re, y.center_im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for (i, child) in children.iter_mut().enumerate() {
        let mut addr = v.address.clone();
        addr.push(i + 1);
        child.address = addr;
    }
    Ok(children)
}

#[derive(Clone, Debug, Serialize)]
pub struct DropChainNode {
    pub address: Vec<usize>,
    pub depth: usize,
    pub distance_to_target: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DropChain {
    pub angle: Angle,
    pub landing_re: f64,
    pub landing_im: f64,
    pub nodes: Vec<DropChainNode>,
}

/// The finite prefix of the drop chain whose closures approach the landing
/// point of the ray at angle t.
pub fn drop_chain_of_angle(
    tree: &DropTree,
    theta: &Theta,
    t: &Angle,
    trace_levels: usize,
) -> Result<DropChain> {
    let trace = trace_ray_siegel(theta, t, trace_levels);
    if !trace.landed {
        return Err(Error::numeric(format!(
            "ray {t} did not land; cannot build its drop chain"
        )));
    }
    let target = trace.landing_estimate();
    let mut nodes: Vec<DropChainNode> = Vec::new();
    let mut current: Option<Vec<usize>> = None; // None = the Siegel disk
    let mut current_dist = tree
        .ctx
        .boundary
        .iter()
        .map(|&b| chordal(b, target))
        .fold(f64::INFINITY, f64::min);
    loop {
        let mut candidates: Vec<(f64, usize)> = tree
            .drops
            .iter()
            .enumerate()
            .filter(|(_, d)| d.chain_parent == current)
            .map(|(i, d)| (d.closure_distance(target), i))
            .collect();
        candidates.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
        match candidates.first() {
            None => break,
            Some(&(dist, idx)) => {
                if dist >= current_dist {
                    break;
                }
                if let Some(&(d2, _)) = candidates.get(1) {
                    if (d2 - dist).abs() < 1e-9 * (1.0 + dist) {
                        return Err(Error::numeric(format!(
                            "two sibling drops are equidistant from the landing point of {t}"
                        )));
                    }
                }
                nodes.push(DropChainNode {
                    address: tree.drops[idx].address.clone(),
                    depth: tree.drops[idx].depth,
                    distance_to_target: dist,
                });
                current = Some(tree.drops[idx].address.clone());
                current_dist = dist;
            }
        }
    }
    Ok(DropChain {
        angle: t.clone(),
        landing_re: target.re,
        landing_im: target.im,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_orbit_bounded_and_rotates() {
        let theta = Theta::golden();
        let orbit = siegel_disk_boundary(&theta, 10_000).unwrap();
        assert!(orbit.iter().all(|z| z.norm() < 2.0));
        let rot = boundary_rotation_number(&orbit);
        assert!((rot - theta.to_f64()).abs() < 1e-3, "rot = {rot}");
    }

    #[test]
    fn single_sample_is_critical_value() {
        let theta = Theta::golden();
        let orbit = siegel_disk_boundary(&theta, 1).unwrap();
        let lambda = lambda_of(&theta);
        assert_eq!(orbit.len(), 1);
        assert!((orbit[0] - (-lambda / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn drop_counts_are_powers_of_two() {
        let theta = Theta::golden();
        let ctx = SiegelNumerics::new(&theta, 512).unwrap();
        let tree = drop_tree(&ctx, 5).unwrap();
        for depth in 1..=5usize {
            let count = tree.drops.iter().filter(|d| d.depth == depth).count();
            assert_eq!(count, 1 << (depth - 1), "depth {depth}");
        }
        // distinct centers at depth 5
        let centers: Vec<Complex64> = tree
            .drops
            .iter()
            .filter(|d| d.depth == 5)
            .map(|d| d.center())
            .collect();
        for (i, a) in centers.iter().enumerate() {
            for b in &centers[i + 1..] {
                assert!((a - b).norm() > 1e-8);
            }
        }
    }

    #[test]
    fn depth_one_drop_attaches_at_critical_point() {
        let theta = Theta::golden();
        let ctx = SiegelNumerics::new(&theta, 256).unwrap();
        let tree = drop_tree(&ctx, 1).unwrap();
        assert_eq!(tree.drops.len(), 1);
        assert!((tree.drops[0].attach() - ctx.x_theta).norm() < 1e-14);
        assert!((tree.drops[0].center() - (-ctx.lambda)).norm() < 1e-14);
    }

    #[test]
    fn chain_for_angle_zero_approaches_beta() {
        let theta = Theta::golden();
        let ctx = SiegelNumerics::new(&theta, 1024).unwrap();
        let tree = drop_tree(&ctx, 7).unwrap();
        let chain = drop_chain_of_angle(&tree, &theta, &Angle::zero(), 48).unwrap();
        assert!(!chain.nodes.is_empty());
        for w in chain.nodes.windows(2) {
            assert!(w[1].distance_to_target < w[0].distance_to_target);
            assert!(w[1].depth > w[0].depth);
        }
    }
}
