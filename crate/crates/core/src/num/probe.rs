//! Pullback diameter probe: pull a disk boundary back through all inverse
//! branches of the candidate map and record the maximal spherical component
//! diameter per level. A depth-first walk keeps memory at O(depth) polylines.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::solve::RationalMapParams;
use crate::num::{chordal, chordal_diameter, chordal_diameter_upper_bound};

#[derive(Clone, Debug, Serialize)]
pub struct DiameterProbe {
    pub base_center_re: f64,
    pub base_center_im: f64,
    pub base_radius: f64,
    pub depth: usize,
    pub base_diameter: f64,
    /// Max spherical component diameter at each pullback level 1..=depth.
    pub max_diameters: Vec<f64>,
    /// Number of components tracked at each level.
    pub component_counts: Vec<usize>,
}

pub struct ProbeGuards<'a> {
    /// Sampled postcritical set away from the Siegel boundary.
    pub postcritical: &'a [Complex64],
    /// Sampled Siegel disk boundary of the candidate map.
    pub siegel_boundary: &'a [Complex64],
    /// Required clearance between the base circle and the postcritical set.
    pub margin: f64,
}

/// Pull the base circle back `depth` times, tracking components depth-first.
pub fn pullback_diameter_probe(
    g: &RationalMapParams,
    center: Complex64,
    radius: f64,
    depth: usize,
    samples: usize,
    guards: &ProbeGuards<'_>,
) -> Result<DiameterProbe> {
    if radius <= 0.0 || samples < 8 {
        return Err(Error::validation("probe needs a positive radius and >= 8 samples"));
    }
    let base: Vec<Complex64> = (0..samples)
        .map(|i| {
            let phi = std::f64::consts::TAU * i as f64 / samples as f64;
            center + Complex64::from_polar(radius, phi)
        })
        .collect();
    // hypothesis guard: the disk must keep clear of the postcritical set
    // except along the Siegel boundary
    for p in guards.postcritical {
        let to_center = (p - center).norm();
        if to_center < radius + guards.margin {
            let on_siegel = guards
                .siegel_boundary
                .iter()
                .any(|s| (s - p).norm() < guards.margin);
            if !on_siegel {
                return Err(Error::validation(format!(
                    "base disk violates the probe hypothesis: postcritical point {p} within margin"
                )));
            }
        }
    }
    // rotation-domain guard: a base whose center orbit stays inside the
    // largest round disk contained in the Siegel disk is refused
    let inradius = guards
        .siegel_boundary
        .iter()
        .map(|s| s.norm())
        .fold(f64::INFINITY, f64::min);
    if inradius.is_finite() {
        let mut z = center;
        let mut inside = center.norm() + radius < inradius;
        for _ in 0..256 {
            z = g.apply(z);
            if z.norm() >= inradius {
                inside = false;
                break;
            }
        }
        if inside {
            return Err(Error::validation(
                "base disk lies in the rotation domain; the contraction hypothesis fails there",
            ));
        }
    }

    let base_diameter = chordal_diameter(&base);
    let mut max_diameters = vec![0.0f64; depth + 1];
    let mut component_counts = vec![0usize; depth + 1];
    max_diameters[0] = base_diameter;
    component_counts[0] = 1;
    // depth-first over branch choices
    let mut stack: Vec<(usize, Vec<Complex64>)> = vec![(0, base)];
    while let Some((level, poly)) = stack.pop() {
        if level == depth {
            continue;
        }
        let children = pull_back_polyline(g, &poly)?;
        for child in children {
            let ub = chordal_diameter_upper_bound(&child);
            let d = if ub > max_diameters[level + 1] {
                chordal_diameter(&child)
            } else {
                ub // cannot beat the current max; the bound is enough
            };
            if d > max_diameters[level + 1] {
                max_diameters[level + 1] = d;
            }
            component_counts[level + 1] += 1;
            stack.push((level + 1, child));
        }
    }
    max_diameters.remove(0);
    component_counts.remove(0);
    Ok(DiameterProbe {
        base_center_re: center.re,
        base_center_im: center.im,
        base_radius: radius,
        depth,
        base_diameter,
        max_diameters,
        component_counts,
    })
}

/// The preimage of a closed polyline: two components, or one when the curve
/// surrounds a critical value and the lifted path joins the branches.
fn pull_back_polyline(
    g: &RationalMapParams,
    poly: &[Complex64],
) -> Result<Vec<Vec<Complex64>>> {
    let (r0, s0) = g.preimages(poly[0]);
    if !r0.is_finite() || !s0.is_finite() {
        return Err(Error::numeric("inverse branch returned a non-finite point"));
    }
    let mut p1 = vec![r0];
    let mut p2 = vec![s0];
    for &w in &poly[1..] {
        let (a, b) = g.preimages(w);
        let last1 = *p1.last().unwrap();
        let last2 = *p2.last().unwrap();
        // branch continuity: assign by proximity to the running polylines
        if chordal(a, last1) + chordal(b, last2) <= chordal(b, last1) + chordal(a, last2) {
            p1.push(a);
            p2.push(b);
        } else {
            p1.push(b);
            p2.push(a);
        }
    }
    // closure test: either each lift closes up (two components) or the lifts
    // swap ends (one component through a critical point)
    let close11 = chordal(*p1.last().unwrap(), p1[0]);
    let close12 = chordal(*p1.last().unwrap(), p2[0]);
    if close12 < close11 {
        let mut joined = p1;
        joined.extend(p2);
        Ok(vec![joined])
    } else {
        Ok(vec![p1, p2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::solve::{default_seed_grid, solve_candidate_g};
    use crate::pcf::PcfSpec;
    use crate::theta::Theta;

    fn golden_basilica_g() -> RationalMapParams {
        let theta = Theta::golden();
        let spec = PcfSpec::named("basilica").unwrap();
        solve_candidate_g(&theta, &spec, &default_seed_grid())
            .unwrap()
            .accepted
            .remove(0)
    }

    #[test]
    fn depth_zero_probe_returns_base_only() {
        let g = golden_basilica_g();
        let guards = ProbeGuards {
            postcritical: &[],
            siegel_boundary: &[],
            margin: 0.05,
        };
        let probe = pullback_diameter_probe(
            &g,
            Complex64::new(3.0, 3.0),
            0.05,
            0,
            64,
            &guards,
        )
        .unwrap();
        assert!(probe.max_diameters.is_empty());
        assert!(probe.base_diameter > 0.0);
    }

    #[test]
    fn rotation_domain_base_refused() {
        let g = golden_basilica_g();
        // synthesize a round Siegel boundary of radius 0.3 for the guard
        let fake_boundary: Vec<Complex64> = (0..64)
            .map(|i| Complex64::from_polar(0.3, std::f64::consts::TAU * i as f64 / 64.0))
            .collect();
        let guards = ProbeGuards {
            postcritical: &[],
            siegel_boundary: &fake_boundary,
            margin: 0.01,
        };
        // a disk deep inside the rotation domain: iterates stay inside
        let err = pullback_diameter_probe(&g, Complex64::new(0.01, 0.0), 0.02, 3, 32, &guards);
        assert!(err.is_err());
    }
}
