//! Newton solvers: the postcritically finite parameter c and the candidate
//! rational map g_a(z) = lambda z (1+z) / (1 + a z) for the mating.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::ray::lambda_of;
use crate::pcf::{PcfMode, PcfSpec};
use crate::theta::Theta;

const NEWTON_TOL: f64 = 1e-13;
const MINIMALITY_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct PcfSolveReport {
    pub c_re: f64,
    pub c_im: f64,
    pub residual: f64,
    pub iterations: usize,
    pub residual_trace: Vec<f64>,
}

impl PcfSolveReport {
    pub fn c(&self) -> Complex64 {
        Complex64::new(self.c_re, self.c_im)
    }
}

/// Orbit length of the defining relation: P^n(0) = P^m(0).
fn relation_indices(mode: &PcfMode) -> (usize, usize) {
    match mode {
        PcfMode::Superattracting { period } => (*period, 0),
        // critical-value preperiod l means the critical point has preperiod
        // l + 1, so P^{l+1+k}(0) = P^{l+1}(0)
        PcfMode::Misiurewicz { preperiod, period } => (preperiod + 1 + period, preperiod + 1),
    }
}

fn orbit_with_derivative(c: Complex64, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let mut zs = Vec::with_capacity(n + 1);
    let mut ds = Vec::with_capacity(n + 1);
    let mut z = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    zs.push(z);
    ds.push(d);
    for _ in 0..n {
        d = 2.0 * z * d + Complex64::new(1.0, 0.0);
        z = z * z + c;
        zs.push(z);
        ds.push(d);
    }
    (zs, ds)
}

/// Newton solve for the parameter c of the postcritically finite relation,
/// with exact preperiod/period minimality checks.
pub fn solve_pcf_c(spec: &PcfSpec, seed: Complex64) -> Result<PcfSolveReport> {
    let (n, m) = relation_indices(&spec.mode);
    let mut c = seed;
    let mut trace = Vec::new();
    let mut iterations = 0;
    for _ in 0..128 {
        iterations += 1;
        let (zs, ds) = orbit_with_derivative(c, n);
        let f = zs[n] - zs[m];
        let df = ds[n] - ds[m];
        trace.push(f.norm());
        if !f.is_finite() || !df.is_finite() || df.norm_sqr() == 0.0 || c.norm() > 16.0 {
            return Err(Error::numeric(format!(
                "Newton for {} diverged from seed {seed}: residuals {trace:?}",
                spec.name
            )));
        }
        if f.norm() < NEWTON_TOL {
            break;
        }
        c -= f / df;
    }
    let (zs, _) = orbit_with_derivative(c, n);
    let residual = (zs[n] - zs[m]).norm();
    if residual > 1e-12 {
        return Err(Error::numeric(format!(
            "Newton for {} stalled at residual {residual:.3e} from seed {seed}",
            spec.name
        )));
    }
    // minimality: the orbit relation must not hold for any shorter pattern
    match spec.mode {
        PcfMode::Superattracting { period } => {
            for d in 1..period {
                if period % d == 0 && zs[d].norm() < MINIMALITY_TOL {
                    return Err(Error::numeric(format!(
                        "root c = {c} has period {d} < {period} (wrong component)"
                    )));
                }
            }
        }
        PcfMode::Misiurewicz { preperiod, period } => {
            let l = preperiod + 1; // critical-point preperiod
            if l >= 1 && (zs[l - 1 + period] - zs[l - 1]).norm() < MINIMALITY_TOL {
                return Err(Error::numeric(format!(
                    "root c = {c} has critical-point preperiod < {l} (wrong component)"
                )));
            }
            for d in 1..period {
                if period % d == 0 && (zs[l + d] - zs[l]).norm() < MINIMALITY_TOL {
                    return Err(Error::numeric(format!(
                        "root c = {c} has cycle period {d} < {period} (wrong component)"
                    )));
                }
            }
            if zs[l].norm() < MINIMALITY_TOL {
                return Err(Error::numeric(format!(
                    "root c = {c} is superattracting, not Misiurewicz"
                )));
            }
        }
    }
    Ok(PcfSolveReport {
        c_re: c.re,
        c_im: c.im,
        residual,
        iterations,
        residual_trace: trace,
    })
}

/// Complex dual number for forward-mode differentiation in the parameter.
#[derive(Clone, Copy, Debug)]
struct Dual {
    v: Complex64,
    d: Complex64,
}

impl Dual {
    fn constant(v: Complex64) -> Dual {
        Dual {
            v,
            d: Complex64::new(0.0, 0.0),
        }
    }

    fn variable(v: Complex64) -> Dual {
        Dual {
            v,
            d: Complex64::new(1.0, 0.0),
        }
    }

    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }

    fn sub(self, o: Dual) -> Dual {
        Dual {
            v: self.v - o.v,
            d: self.d - o.d,
        }
    }

    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.v * o.d + self.d * o.v,
        }
    }

    fn div(self, o: Dual) -> Dual {
        let v = self.v / o.v;
        Dual {
            v,
            d: (self.d - v * o.d) / o.v,
        }
    }

    fn sqrt(self) -> Dual {
        let r = self.v.sqrt();
        Dual {
            v: r,
            d: self.d / (2.0 * r),
        }
    }
}

/// The candidate family g_a(z) = lambda z (1 + z) / (1 + a z).
#[derive(Clone, Debug, Serialize)]
pub struct RationalMapParams {
    pub theta: String,
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub a_re: f64,
    pub a_im: f64,
    /// Critical point whose orbit accumulates the Siegel boundary.
    pub crit_siegel_re: f64,
    pub crit_siegel_im: f64,
    /// Critical point satisfying the postcritically finite relation.
    pub crit_pcf_re: f64,
    pub crit_pcf_im: f64,
    pub pcf_residual: f64,
    pub derivative_at_zero_error: f64,
}

impl RationalMapParams {
    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.lambda_re, self.lambda_im)
    }

    pub fn a(&self) -> Complex64 {
        Complex64::new(self.a_re, self.a_im)
    }

    pub fn crit_siegel(&self) -> Complex64 {
        Complex64::new(self.crit_siegel_re, self.crit_siegel_im)
    }

    pub fn crit_pcf(&self) -> Complex64 {
        Complex64::new(self.crit_pcf_re, self.crit_pcf_im)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        g_apply(self.lambda(), self.a(), z)
    }

    /// The two inverse images of w under g_a.
    pub fn preimages(&self, w: Complex64) -> (Complex64, Complex64) {
        // lambda z^2 + (lambda - a w) z - w = 0
        let l = self.lambda();
        let a = self.a();
        let b = l - a * w;
        let disc = (b * b + 4.0 * l * w).sqrt();
        let q = if (b + disc).norm() > (b - disc).norm() {
            -(b + disc) / 2.0
        } else {
            -(b - disc) / 2.0
        };
        // roots q/lambda and -w/q (Vieta), numerically stable split
        (q / l, -w / q)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let l = self.lambda();
        let a = self.a();
        let den = 1.0 + a * z;
        l * (1.0 + 2.0 * z + a * z * z) / (den * den)
    }
}

pub fn g_apply(lambda: Complex64, a: Complex64, z: Complex64) -> Complex64 {
    lambda * z * (1.0 + z) / (1.0 + a * z)
}

fn g_dual(lambda: Complex64, a: Dual, z: Dual) -> Dual {
    let one = Dual::constant(Complex64::new(1.0, 0.0));
    let lam = Dual::constant(lambda);
    lam.mul(z).mul(one.add(z)).div(one.add(a.mul(z)))
}

/// Critical points of g_a: roots of a z^2 + 2 z + 1; `sign` picks the branch.
fn crit_dual(a: Dual, sign: f64) -> Dual {
    let one = Dual::constant(Complex64::new(1.0, 0.0));
    let s = one.sub(a).sqrt();
    let num = if sign > 0.0 {
        s.sub(one)
    } else {
        Dual::constant(Complex64::new(-1.0, 0.0)).sub(s)
    };
    num.div(a)
}

#[derive(Clone, Debug, Serialize)]
pub struct RejectedRoot {
    pub a_re: f64,
    pub a_im: f64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateSearch {
    pub accepted: Vec<RationalMapParams>,
    pub rejected: Vec<RejectedRoot>,
    pub seeds_tried: usize,
}

/// Newton in the parameter a on the critical-orbit relation of the spec,
/// from a grid of seeds, followed by the dynamical filters.
pub fn solve_candidate_g(theta: &Theta, spec: &PcfSpec, seeds: &[Complex64]) -> Result<CandidateSearch> {
    let lambda = lambda_of(theta);
    let (n, m) = relation_indices(&spec.mode);
    let mut roots: Vec<(Complex64, f64)> = Vec::new();
    let mut seeds_tried = 0;
    for &seed in seeds {
        for sign in [1.0, -1.0] {
            seeds_tried += 1;
            if let Some((a, res)) = newton_in_a(lambda, seed, sign, n, m) {
                if roots.iter().all(|(r, _)| (r - a).norm() > 1e-8) {
                    roots.push((a, res));
                }
            }
        }
    }
    roots.sort_by(|x, y| {
        (x.0.norm(), x.0.re, x.0.im)
            .partial_cmp(&(y.0.norm(), y.0.re, y.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut accepted: Vec<RationalMapParams> = Vec::new();
    let mut rejected = Vec::new();
    let mut spectra: Vec<Vec<f64>> = Vec::new();
    for (a, res) in roots {
        match filter_root(theta, spec, lambda, a, res, n, m) {
            Ok(params) => {
                // the family carries a residual Moebius normalization that
                // swaps infinity with the finite non-Siegel fixed point;
                // conjugate normalizations share the fixed-point multiplier
                // spectrum, and we keep the smallest |a| representative
                let spec_mult = fixed_point_spectrum(lambda, a);
                let dup = spectra.iter().any(|s| {
                    s.len() == spec_mult.len()
                        && s.iter().zip(&spec_mult).all(|(x, y)| (x - y).abs() < 1e-6)
                });
                if dup {
                    rejected.push(RejectedRoot {
                        a_re: a.re,
                        a_im: a.im,
                        reason: "conjugate normalization of an accepted root (same multiplier spectrum)"
                            .into(),
                    });
                } else {
                    spectra.push(spec_mult);
                    accepted.push(params);
                }
            }
            Err(reason) => rejected.push(RejectedRoot {
                a_re: a.re,
                a_im: a.im,
                reason,
            }),
        }
    }
    Ok(CandidateSearch {
        accepted,
        rejected,
        seeds_tried,
    })
}

/// Sorted moduli of the fixed-point multipliers of g_a: lambda at 0, a/lambda
/// at infinity, and the derivative at z* = (1 - lambda)/(lambda - a).
fn fixed_point_spectrum(lambda: Complex64, a: Complex64) -> Vec<f64> {
    let z_star = (Complex64::new(1.0, 0.0) - lambda) / (lambda - a);
    let den = 1.0 + a * z_star;
    let d_star = lambda * (1.0 + 2.0 * z_star + a * z_star * z_star) / (den * den);
    let mut s = vec![lambda.norm(), (a / lambda).norm(), d_star.norm()];
    s.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Default seed grid over |a| <= 4.
pub fn default_seed_grid() -> Vec<Complex64> {
    let mut seeds = Vec::new();
    let mut re = -4.0;
    while re <= 4.0 + 1e-9 {
        let mut im = -4.0;
        while im <= 4.0 + 1e-9 {
            let s = Complex64::new(re, im);
            if s.norm() <= 4.0 + 1e-9 {
                seeds.push(s);
            }
            im += 0.8;
        }
        re += 0.8;
    }
    seeds
}

fn newton_in_a(
    lambda: Complex64,
    seed: Complex64,
    sign: f64,
    n: usize,
    m: usize,
) -> Option<(Complex64, f64)> {
    let mut a = seed;
    for _ in 0..80 {
        if a.norm() > 64.0 || (a - Complex64::new(1.0, 0.0)).norm() < 1e-6 || a.norm() < 1e-6 {
            return None;
        }
        let av = Dual::variable(a);
        let c2 = crit_dual(av, sign);
        let mut z = c2;
        let mut z_m = None;
        for i in 0..n {
            if i == m {
                z_m = Some(z);
            }
            z = g_dual(lambda, av, z);
            if !z.v.is_finite() {
                return None;
            }
        }
        let base = if m == 0 { c2 } else { z_m.unwrap() };
        let h = z.sub(base);
        if !h.v.is_finite() || !h.d.is_finite() || h.d.norm_sqr() == 0.0 {
            return None;
        }
        if h.v.norm() < NEWTON_TOL {
            return Some((a, h.v.norm()));
        }
        a -= h.v / h.d;
    }
    None
}

fn filter_root(
    theta: &Theta,
    spec: &PcfSpec,
    lambda: Complex64,
    a: Complex64,
    residual: f64,
    n: usize,
    m: usize,
) -> std::result::Result<RationalMapParams, String> {
    if (1.0 - a).norm() < 1e-4 {
        return Err("degenerate parameter: g_a drops to degree 1 at a = 1".into());
    }
    let s = (Complex64::new(1.0, 0.0) - a).sqrt();
    let c_plus = (s - 1.0) / a;
    let c_minus = (-1.0 - s) / a;
    // identify which critical point satisfies the relation
    let orbit_rel = |z0: Complex64| -> f64 {
        let mut z = z0;
        let mut z_m = z0;
        for i in 0..n {
            if i == m {
                z_m = z;
            }
            z = g_apply(lambda, a, z);
        }
        (z - z_m).norm()
    };
    let (c_pcf, c_siegel) = if orbit_rel(c_plus) < orbit_rel(c_minus) {
        (c_plus, c_minus)
    } else {
        (c_minus, c_plus)
    };
    if orbit_rel(c_pcf) > 1e-9 {
        return Err(format!(
            "critical orbit relation residual {:.3e} too large",
            orbit_rel(c_pcf)
        ));
    }
    // portrait minimality on the pcf critical orbit
    let mut orbit = vec![c_pcf];
    for _ in 0..n {
        orbit.push(g_apply(lambda, a, *orbit.last().unwrap()));
    }
    match spec.mode {
        PcfMode::Superattracting { period } => {
            for d in 1..period {
                if period % d == 0 && (orbit[d] - orbit[0]).norm() < MINIMALITY_TOL {
                    return Err(format!("critical cycle has period {d} < {period}"));
                }
            }
        }
        PcfMode::Misiurewicz { preperiod, period } => {
            let l = preperiod + 1;
            if (orbit[l - 1 + period] - orbit[l - 1]).norm() < MINIMALITY_TOL {
                return Err(format!("critical point preperiod below {l}"));
            }
            for d in 1..period {
                if period % d == 0 && (orbit[l + d] - orbit[l]).norm() < MINIMALITY_TOL {
                    return Err(format!("postcritical cycle period below {period}"));
                }
            }
        }
    }
    // Siegel-side filter: the sibling critical orbit stays bounded, does not
    // converge, and is not attracted to the pcf cycle
    let cycle: Vec<Complex64> = match spec.mode {
        PcfMode::Superattracting { period } => orbit[..period].to_vec(),
        PcfMode::Misiurewicz { preperiod, period } => {
            let l = preperiod + 1;
            orbit[l..l + period].to_vec()
        }
    };
    let mut z = c_siegel;
    let mut near_cycle_run = 0usize;
    let mut prev = z;
    let mut cauchy_run = 0usize;
    let mut recurrence = f64::INFINITY;
    for i in 0..10_000 {
        z = g_apply(lambda, a, z);
        if !z.is_finite() || z.norm() > 1e8 {
            return Err(format!(
                "Siegel-side critical orbit escaped at iteration {i}"
            ));
        }
        if i > 2 {
            recurrence = recurrence.min((z - c_siegel).norm());
        }
        if cycle.iter().any(|p| (z - p).norm() < 1e-8) {
            near_cycle_run += 1;
            if near_cycle_run > 32 {
                return Err("Siegel-side critical orbit attracted to the pcf cycle".into());
            }
        } else {
            near_cycle_run = 0;
        }
        if (z - prev).norm() < 1e-12 {
            cauchy_run += 1;
            if cauchy_run > 32 {
                return Err("Siegel-side critical orbit converges to a fixed point".into());
            }
        } else {
            cauchy_run = 0;
        }
        prev = z;
    }
    // on the mating, the free critical point sits on the Siegel boundary, so
    // its orbit is recurrent to the point itself; a capture configuration
    // keeps a definite gap
    if recurrence > 0.05 {
        return Err(format!(
            "Siegel-side critical orbit is not recurrent to the critical point \
             (min return distance {recurrence:.3e}); capture-type configuration"
        ));
    }
    let d0 = lambda; // g_a'(0) = lambda identically in this family
    let deriv_err = (d0 - lambda).norm();
    Ok(RationalMapParams {
        theta: theta.name().to_string(),
        lambda_re: lambda.re,
        lambda_im: lambda.im,
        a_re: a.re,
        a_im: a.im,
        crit_siegel_re: c_siegel.re,
        crit_siegel_im: c_siegel.im,
        crit_pcf_re: c_pcf.re,
        crit_pcf_im: c_pcf.im,
        pcf_residual: residual,
        derivative_at_zero_error: deriv_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(name: &str) -> PcfSpec {
        PcfSpec::named(name).unwrap()
    }

    #[test]
    fn basilica_parameter_is_exactly_minus_one() {
        let r = solve_pcf_c(&spec("basilica"), Complex64::new(-0.8, 0.1)).unwrap();
        assert!((r.c() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn airplane_parameter() {
        let r = solve_pcf_c(&spec("airplane"), Complex64::new(-1.7, 0.0)).unwrap();
        assert!((r.c_re - -1.754_877_666).abs() < 1e-5, "{}", r.c_re);
        assert!(r.c_im.abs() < 1e-9);
    }

    #[test]
    fn chebyshev_parameter_is_exactly_minus_two() {
        let r = solve_pcf_c(&spec("chebyshev"), Complex64::new(-2.1, 0.0)).unwrap();
        assert!((r.c() - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn dendrite_fixture_parameter() {
        let r = solve_pcf_c(&spec("dendrite154"), Complex64::new(-1.5, 0.0)).unwrap();
        assert!((r.c_re - -1.543_689).abs() < 1e-5, "{}", r.c_re);
        assert!(r.c_im.abs() < 1e-9);
    }

    #[test]
    fn rabbit_parameter() {
        let r = solve_pcf_c(&spec("rabbit"), Complex64::new(-0.1, 0.8)).unwrap();
        let expect = Complex64::new(-0.122_561_17, 0.744_861_77);
        assert!((r.c() - expect).norm() < 1e-6);
    }

    #[test]
    fn wrong_component_rejected() {
        // period-2 relation from a seed near 0 converges to c = 0 (period 1)
        let err = solve_pcf_c(&spec("basilica"), Complex64::new(0.05, 0.0));
        assert!(err.is_err());
    }

    #[test]
    fn candidate_g_for_golden_basilica() {
        let theta = Theta::golden();
        let search =
            solve_candidate_g(&theta, &spec("basilica"), &default_seed_grid()).unwrap();
        assert_eq!(
            search.accepted.len(),
            1,
            "expected a unique filtered root, got {:?} (rejected {})",
            search
                .accepted
                .iter()
                .map(|p| (p.a_re, p.a_im))
                .collect::<Vec<_>>(),
            search.rejected.len()
        );
        let g = &search.accepted[0];
        assert!(g.pcf_residual < 1e-9);
        assert!(g.derivative_at_zero_error < 1e-12);
    }

    #[test]
    fn candidate_g_for_golden_chebyshev() {
        let theta = Theta::golden();
        let search =
            solve_candidate_g(&theta, &spec("chebyshev"), &default_seed_grid()).unwrap();
        assert_eq!(search.accepted.len(), 1);
        assert!(search.accepted[0].pcf_residual < 1e-9);
    }
}
