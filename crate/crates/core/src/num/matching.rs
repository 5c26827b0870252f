//! Periodic-point counting for the candidate map versus periodic ray-class
//! cycles of the formal mating.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::solve::RationalMapParams;

/// Coefficients of a polynomial, lowest degree first.
type Poly = Vec<Complex64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn poly_scale(a: &Poly, s: Complex64) -> Poly {
    a.iter().map(|&x| x * s).collect()
}

fn poly_trim(mut a: Poly) -> Poly {
    while a.len() > 1 && a.last().unwrap().norm() < 1e-12 {
        a.pop();
    }
    a
}

fn poly_eval(a: &Poly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Durand-Kerner root finder; fine for the small degrees used here.
fn poly_roots(poly: &Poly) -> Result<Vec<Complex64>> {
    let p = poly_trim(poly.clone());
    let deg = p.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = *p.last().unwrap();
    let monic: Poly = p.iter().map(|&c| c / lead).collect();
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(0.4 + 0.9_f64, 0.9 * k as f64 + 0.3))
        .collect();
    for _ in 0..256 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm_sqr() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let delta = poly_eval(&monic, zi) / denom;
            roots[i] = zi - delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-13 {
            break;
        }
    }
    for &r in &roots {
        if !r.is_finite() || poly_eval(&monic, r).norm() > 1e-6 {
            return Err(Error::numeric(format!(
                "root finder failed to converge (residual at {r})"
            )));
        }
    }
    Ok(roots)
}

/// Numerator and denominator polynomials of g^q for g = lambda z(1+z)/(1+az).
fn iterate_rational(g: &RationalMapParams, q: usize) -> (Poly, Poly) {
    let l = g.lambda();
    let a = g.a();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut num: Poly = vec![zero, l, l]; // lambda z + lambda z^2
    let mut den: Poly = vec![one, a];
    for _ in 1..q {
        // g(N/D) = lambda (N/D)(1 + N/D) / (1 + a N/D)
        //        = lambda N (D + N) / (D (D + a N))
        let dn = poly_add(&den, &num);
        let dan = poly_add(&den, &poly_scale(&num, a));
        num = poly_scale(&poly_mul(&num, &dn), l);
        den = poly_mul(&den, &dan);
    }
    (num, den)
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicPoint {
    pub re: f64,
    pub im: f64,
    pub at_infinity: bool,
    pub multiplier_abs: f64,
}

/// All cycles of exact period q, classified by multiplier modulus.
pub fn periodic_cycles(g: &RationalMapParams, q: usize) -> Result<Vec<Vec<PeriodicPoint>>> {
    let (num, den) = iterate_rational(g, q);
    // finite periodic points: roots of N_q(z) - z D_q(z)
    let mut shifted = poly_scale(&den, Complex64::new(-1.0, 0.0));
    shifted.insert(0, Complex64::new(0.0, 0.0)); // -z D_q(z)
    let eqn = poly_trim(poly_add(&num, &shifted));
    let mut roots = poly_roots(&eqn)?;
    // infinity is a fixed point of the family (multiplier a / lambda)
    let mut points: Vec<(Complex64, bool)> = Vec::new();
    if (g.a().norm() - 0.0).abs() > 1e-9 {
        points.push((Complex64::new(f64::INFINITY, f64::INFINITY), true));
    }
    roots.retain(|r| r.is_finite());
    // deduplicate
    let mut uniq: Vec<Complex64> = Vec::new();
    for r in roots {
        if uniq.iter().all(|u| (u - r).norm() > 1e-7) {
            uniq.push(r);
        }
    }
    points.extend(uniq.into_iter().map(|r| (r, false)));
    // drop points of strictly lower exact period
    let exact: Vec<(Complex64, bool)> = points
        .into_iter()
        .filter(|&(z, inf)| {
            if inf {
                return q == 1; // infinity is fixed
            }
            for d in 1..q {
                if q % d == 0 {
                    let mut w = z;
                    for _ in 0..d {
                        w = g.apply(w);
                    }
                    if (w - z).norm() < 1e-7 {
                        return false;
                    }
                }
            }
            true
        })
        .collect();
    // group into cycles
    let mut cycles: Vec<Vec<PeriodicPoint>> = Vec::new();
    let mut used = vec![false; exact.len()];
    for i in 0..exact.len() {
        if used[i] {
            continue;
        }
        let (z0, inf) = exact[i];
        used[i] = true;
        if inf {
            cycles.push(vec![PeriodicPoint {
                re: f64::INFINITY,
                im: f64::INFINITY,
                at_infinity: true,
                multiplier_abs: (g.a() / g.lambda()).norm(),
            }]);
            continue;
        }
        let mut cycle_pts = vec![z0];
        let mut w = g.apply(z0);
        while (w - z0).norm() > 1e-7 && cycle_pts.len() <= q {
            cycle_pts.push(w);
            for (j, &(zj, infj)) in exact.iter().enumerate() {
                if !infj && !used[j] && (zj - w).norm() < 1e-7 {
                    used[j] = true;
                }
            }
            w = g.apply(w);
        }
        let mult: Complex64 = cycle_pts.iter().map(|&p| g.derivative(p)).product();
        cycles.push(
            cycle_pts
                .into_iter()
                .map(|p| PeriodicPoint {
                    re: p.re,
                    im: p.im,
                    at_infinity: false,
                    multiplier_abs: mult.norm(),
                })
                .collect(),
        );
    }
    Ok(cycles)
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodMatchEntry {
    pub period: usize,
    pub repelling_cycles: usize,
    pub ray_class_cycles: usize,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicMatchReport {
    pub entries: Vec<PeriodMatchEntry>,
    pub all_matched: bool,
}

/// Compare repelling cycle counts of G with periodic ray-class cycle counts.
pub fn periodic_point_match(
    g: &RationalMapParams,
    ray_class_cycles_by_period: &[(usize, usize)],
    q_max: usize,
) -> Result<PeriodicMatchReport> {
    let mut entries = Vec::new();
    for q in 1..=q_max {
        let cycles = periodic_cycles(g, q)?;
        let repelling = cycles
            .iter()
            .filter(|c| c[0].multiplier_abs > 1.0 + 1e-6)
            .count();
        let class_cycles = ray_class_cycles_by_period
            .iter()
            .find(|(p, _)| *p == q)
            .map(|(_, n)| *n)
            .unwrap_or(0);
        entries.push(PeriodMatchEntry {
            period: q,
            repelling_cycles: repelling,
            ray_class_cycles: class_cycles,
            matched: repelling == class_cycles,
        });
    }
    let all_matched = entries.iter().all(|e| e.matched);
    Ok(PeriodicMatchReport {
        entries,
        all_matched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::solve::{default_seed_grid, solve_candidate_g};
    use crate::pcf::PcfSpec;
    use crate::theta::Theta;

    #[test]
    fn golden_basilica_fixed_points() {
        let theta = Theta::golden();
        let spec = PcfSpec::named("basilica").unwrap();
        let g = solve_candidate_g(&theta, &spec, &default_seed_grid())
            .unwrap()
            .accepted
            .remove(0);
        let cycles = periodic_cycles(&g, 1).unwrap();
        // three fixed points: Siegel 0, one finite repelling, infinity
        assert_eq!(cycles.len(), 3);
        let repelling = cycles
            .iter()
            .filter(|c| c[0].multiplier_abs > 1.0 + 1e-6)
            .count();
        assert_eq!(repelling, 2);
        let siegel = cycles
            .iter()
            .filter(|c| (c[0].multiplier_abs - 1.0).abs() < 1e-6)
            .count();
        assert_eq!(siegel, 1);
    }
}
