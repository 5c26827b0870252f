//! End-to-end mating pipeline: parameter solves, the candidate map, rasters,
//! the contraction probe, periodic matching, and the aggregated verdict.

use num_complex::Complex64;
use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::lamination::sorted_class;
use crate::mating::{
    build_t_graph, class_of_x1_guard, detect_loops, ray_class, MatingPair,
    TGraph,
};
use crate::num::drops::{drop_chain_of_angle, drop_tree, DropChain, SiegelNumerics};
use crate::num::matching::{periodic_cycles, periodic_point_match, PeriodicMatchReport};
use crate::num::probe::{pullback_diameter_probe, DiameterProbe, ProbeGuards};
use crate::num::ray::{trace_ray_poly, trace_ray_siegel};
use crate::num::render::{cloud_pixel_count, render_rational_julia, ImageSpec, Raster};
use crate::num::solve::{
    default_seed_grid, g_apply, solve_candidate_g, solve_pcf_c, CandidateSearch, PcfSolveReport,
    RationalMapParams,
};
use crate::pcf::{build_hubbard_tree, HubbardTree, PcfMode};
use crate::report::{default_c_seed, JobConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic sample of rational angles with bounded denominator.
pub fn sample_rational_angles(count: usize, max_den: u64, seed: u64) -> Vec<Angle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Angle> = Vec::new();
    while out.len() < count {
        let den = rng.random_range(3..=max_den);
        let num = rng.random_range(1..den);
        let a = Angle::new(num, den);
        if !a.is_zero() && !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassLawsReport {
    pub sampled: usize,
    pub idempotent: bool,
    pub all_trees: bool,
    pub within_2m: bool,
    pub x1_at_most_one: bool,
    pub failures: Vec<String>,
}

/// Ray-class laws over a deterministic angle sample.
pub fn class_laws_sample(pair: &MatingPair, count: usize, seed: u64) -> Result<ClassLawsReport> {
    let angles = sample_rational_angles(count, 255, seed);
    let mut failures = Vec::new();
    let mut idempotent = true;
    let mut all_trees = true;
    let mut within_2m = true;
    let mut x1_ok = true;
    for t in &angles {
        let class = match ray_class(pair, t) {
            Ok(c) => c,
            Err(e) => {
                within_2m = false;
                failures.push(format!("class of {t}: {e}"));
                continue;
            }
        };
        if class.rays.len() > 2 * class.m {
            within_2m = false;
            failures.push(format!("class of {t} exceeds 2m"));
        }
        if !detect_loops(&class).is_tree {
            all_trees = false;
            failures.push(format!("class of {t} has a loop"));
        }
        if !class_of_x1_guard(&class).ok {
            x1_ok = false;
            failures.push(format!("class of {t} has more than one X1 node"));
        }
        for member in &class.rays {
            let again = ray_class(pair, member)?;
            if again.rays != class.rays {
                idempotent = false;
                failures.push(format!("class of {t} not closed at member {member}"));
                break;
            }
        }
    }
    Ok(ClassLawsReport {
        sampled: angles.len(),
        idempotent,
        all_trees,
        within_2m,
        x1_at_most_one: x1_ok,
        failures,
    })
}

/// Distinct ray-class cycles counted by their set-period, for comparison
/// with the repelling cycles of G. Angle enumeration goes beyond q_max so
/// that classes of set-period q containing only longer angles are found.
pub fn periodic_class_cycles(pair: &MatingPair, q_max: usize) -> Result<Vec<(usize, usize)>> {
    let mut classes: Vec<Vec<Angle>> = Vec::new();
    let angle_period_cap = (q_max * 4).max(4);
    for p in 1..=angle_period_cap {
        let modulus = (num_bigint::BigUint::from(1u32) << p) - 1u32;
        let mut num = num_bigint::BigUint::from(0u32);
        while num < modulus || (p == 1 && num == modulus) {
            let t = Angle::new(num.clone(), modulus.clone().max(1u32.into()));
            num += 1u32;
            if t.orbit_info().period != p || t.orbit_info().preperiod != 0 {
                continue;
            }
            let class = ray_class(pair, &t)?;
            let rays = class.rays;
            if !classes.contains(&rays) {
                classes.push(rays);
            }
        }
        if p == 1 {
            // the fixed angle 0
            let class = ray_class(pair, &Angle::zero())?;
            if !classes.contains(&class.rays) {
                classes.push(class.rays);
            }
        }
    }
    // group classes into doubling orbits and record exact set-periods
    let mut counts: Vec<(usize, usize)> = (1..=q_max).map(|q| (q, 0)).collect();
    let mut seen: Vec<Vec<Angle>> = Vec::new();
    for class in &classes {
        if seen.contains(class) {
            continue;
        }
        let mut orbit = vec![class.clone()];
        let mut cur = sorted_class(class.iter().map(Angle::double).collect());
        while &cur != class && !orbit.contains(&cur) {
            orbit.push(cur.clone());
            cur = sorted_class(cur.iter().map(Angle::double).collect());
        }
        let set_period = orbit.len();
        let closes = cur == *class;
        seen.extend(orbit);
        if closes {
            if let Some(entry) = counts.iter_mut().find(|(q, _)| *q == set_period) {
                entry.1 += 1;
            }
        }
    }
    Ok(counts)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeOutcome {
    pub probe: DiameterProbe,
    pub base_kind: String,
    pub final_ratio: f64,
    pub ratio_ok: bool,
    pub tail_ok: bool,
}

/// Runs the contraction probe on a repelling periodic base disk.
pub fn run_probe(
    g: &RationalMapParams,
    config: &JobConfig,
) -> Result<ProbeOutcome> {
    // postcritical sample: the pcf critical orbit plus the Siegel-side orbit
    let mut postcritical: Vec<Complex64> = Vec::new();
    let mut z = g.crit_pcf();
    for _ in 0..64 {
        z = g.apply(z);
        postcritical.push(z);
    }
    let mut siegel_boundary = Vec::with_capacity(2048);
    let mut w = g.crit_siegel();
    for _ in 0..2048 {
        siegel_boundary.push(w);
        w = g.apply(w);
    }
    postcritical.extend(&siegel_boundary);
    // base: a finite repelling periodic point of period <= 2, as far from
    // the postcritical set as possible
    let mut best: Option<(f64, Complex64, String)> = None;
    for q in 1..=2usize {
        for cycle in periodic_cycles(g, q)? {
            for pt in &cycle {
                if pt.at_infinity || pt.multiplier_abs <= 1.0 + 1e-6 {
                    continue;
                }
                let z = Complex64::new(pt.re, pt.im);
                let dist = postcritical
                    .iter()
                    .map(|p| (p - z).norm())
                    .fold(f64::INFINITY, f64::min);
                if best.as_ref().map(|(d, _, _)| dist > *d).unwrap_or(true) {
                    best = Some((dist, z, format!("repelling period-{q} point")));
                }
            }
        }
    }
    let (dist, center, base_kind) =
        best.ok_or_else(|| Error::numeric("no admissible repelling base point for the probe"))?;
    if dist < 1e-3 {
        return Err(Error::numeric(format!(
            "repelling base point is only {dist:.2e} from the postcritical sample"
        )));
    }
    let radius = (0.4 * dist).min(0.1);
    let margin = 0.4 * (dist - radius);
    let guards = ProbeGuards {
        postcritical: &postcritical,
        siegel_boundary: &siegel_boundary,
        margin,
    };
    let probe = pullback_diameter_probe(
        g,
        center,
        radius,
        config.probe_depth,
        config.probe_samples,
        &guards,
    )?;
    let final_ratio = probe
        .max_diameters
        .last()
        .map(|d| d / probe.base_diameter)
        .unwrap_or(f64::INFINITY);
    let ratio_ok = final_ratio < config.tolerances.probe_ratio;
    // tail monotone within the jitter allowance from the midpoint on
    let tail_start = config.probe_depth / 2;
    let tail = &probe.max_diameters[tail_start.saturating_sub(1)..];
    let tail_ok = tail
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + config.tolerances.probe_tail_jitter));
    Ok(ProbeOutcome {
        probe,
        base_kind,
        final_ratio,
        ratio_ok,
        tail_ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MateChecks {
    pub unique_candidate: bool,
    pub pcf_residual_ok: bool,
    pub derivative_ok: bool,
    pub probe_ratio_ok: bool,
    pub probe_tail_ok: bool,
    pub periodic_match_ok: bool,
    pub class_laws_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MateOutcome {
    pub c_solve: PcfSolveReport,
    pub candidate_search: CandidateSearch,
    pub t_regions: Vec<String>,
    pub probe: Option<ProbeOutcome>,
    pub probe_error: Option<String>,
    pub matching: Option<PeriodicMatchReport>,
    pub class_cycle_counts: Vec<(usize, usize)>,
    pub class_laws: ClassLawsReport,
    pub cloud_pixels: usize,
    pub checks: MateChecks,
    pub mating_consistent: bool,
}

/// The full mate pipeline; a failing check yields verdict "no", not an error.
pub fn run_mate(config: &JobConfig) -> Result<(MateOutcome, Option<Raster>)> {
    let theta = config.theta_value()?;
    let spec = config.pcf_spec()?;
    let c_solve = solve_pcf_c(&spec, default_c_seed(&spec))?;
    let pair = MatingPair::new(theta.clone(), spec.clone(), config.resolution_bits)?;
    let tree = build_hubbard_tree(&spec)?;
    let t_graph = build_t_graph(&pair, &tree)?;
    let t_regions: Vec<String> = t_graph.regions.iter().map(|r| r.label.clone()).collect();
    let candidate_search = solve_candidate_g(&theta, &spec, &default_seed_grid())?;
    let unique_candidate = candidate_search.accepted.len() == 1;
    let class_laws = class_laws_sample(&pair, 24, config.seed)?;
    let class_laws_ok = class_laws.idempotent
        && class_laws.all_trees
        && class_laws.within_2m
        && class_laws.x1_at_most_one;
    let class_cycle_counts = periodic_class_cycles(&pair, config.match_period_max)?;
    let (probe, probe_error, matching, cloud_pixels, raster);
    if let Some(g) = candidate_search.accepted.first() {
        let image = ImageSpec {
            seed: config.seed,
            ..Default::default()
        };
        raster = Some(render_rational_julia(g, &image, 200_000));
        cloud_pixels = cloud_pixel_count(g, &image, 200_000);
        match run_probe(g, config) {
            Ok(p) => {
                probe = Some(p);
                probe_error = None;
            }
            Err(e) => {
                probe = None;
                probe_error = Some(e.to_string());
            }
        }
        matching = Some(periodic_point_match(
            g,
            &class_cycle_counts,
            config.match_period_max,
        )?);
    } else {
        probe = None;
        probe_error = Some("no unique candidate root".into());
        matching = None;
        cloud_pixels = 0;
        raster = None;
    }
    let checks = MateChecks {
        unique_candidate,
        pcf_residual_ok: candidate_search
            .accepted
            .first()
            .map(|g| g.pcf_residual < config.tolerances.g_residual)
            .unwrap_or(false),
        derivative_ok: candidate_search
            .accepted
            .first()
            .map(|g| g.derivative_at_zero_error < config.tolerances.derivative_at_zero)
            .unwrap_or(false),
        probe_ratio_ok: probe.as_ref().map(|p| p.ratio_ok).unwrap_or(false),
        probe_tail_ok: probe.as_ref().map(|p| p.tail_ok).unwrap_or(false),
        periodic_match_ok: matching.as_ref().map(|m| m.all_matched).unwrap_or(false),
        class_laws_ok,
    };
    let mating_consistent = checks.unique_candidate
        && checks.pcf_residual_ok
        && checks.derivative_ok
        && checks.probe_ratio_ok
        && checks.probe_tail_ok
        && checks.periodic_match_ok
        && checks.class_laws_ok;
    Ok((
        MateOutcome {
            c_solve,
            candidate_search,
            t_regions,
            probe,
            probe_error,
            matching,
            class_cycle_counts,
            class_laws,
            cloud_pixels,
            checks,
            mating_consistent,
        },
        raster,
    ))
}

/// Drop chains for all spokes of a T-graph (report decoration).
pub fn t_graph_chains(
    pair: &MatingPair,
    t: &TGraph,
    config: &JobConfig,
) -> Result<Vec<DropChain>> {
    let ctx = SiegelNumerics::new(&pair.theta, config.boundary_samples)?;
    let tree = drop_tree(&ctx, config.drop_depth)?;
    t.spokes
        .iter()
        .map(|s| drop_chain_of_angle(&tree, &pair.theta, &s.theta_angle, config.ray_levels))
        .collect()
}

/// Co-landing coherence: numeric landing coincidence must equal class
/// membership over a sampled angle set, on both sides of the mating.
#[derive(Clone, Debug, Serialize)]
pub struct CoherenceReport {
    pub angles_checked: usize,
    pub disagreements: Vec<String>,
}

pub fn landing_coherence(
    pair: &MatingPair,
    c: Complex64,
    count: usize,
    seed: u64,
    levels: usize,
    tol: f64,
) -> Result<CoherenceReport> {
    let mut angles = sample_rational_angles(count, 127, seed);
    // include combinatorial partners so each class is fully represented
    let mut with_partners = angles.clone();
    for t in &angles {
        for p in pair.pcf_lam.colanding_partner(t)? {
            if !with_partners.contains(&p) {
                with_partners.push(p);
            }
        }
    }
    angles = with_partners;
    let traces: Vec<_> = crate::num::parallel_map(&angles, |t| trace_ray_poly(c, t, levels));
    let mut disagreements = Vec::new();
    let mut landings = Vec::new();
    for tr in &traces {
        if !tr.landed {
            disagreements.push(format!("ray {} did not land", tr.angle));
            landings.push(None);
        } else {
            landings.push(Some(tr.landing_estimate()));
        }
    }
    for i in 0..angles.len() {
        let Some(zi) = landings[i] else { continue };
        let class_i = pair.pcf_lam.class_of(&angles[i])?;
        for j in (i + 1)..angles.len() {
            let Some(zj) = landings[j] else { continue };
            let together = (zi - zj).norm() < tol;
            let same_class = class_i.binary_search(&angles[j]).is_ok();
            if together != same_class {
                disagreements.push(format!(
                    "angles {} and {}: numeric {} vs combinatorial {}",
                    angles[i],
                    angles[j],
                    if together { "coincide" } else { "apart" },
                    if same_class { "partners" } else { "separate" },
                ));
            }
        }
    }
    Ok(CoherenceReport {
        angles_checked: angles.len(),
        disagreements,
    })
}

/// Siegel-side coherence: lamination leaves at a given depth land together.
pub fn siegel_leaf_coherence(
    pair: &MatingPair,
    depth: usize,
    sample: usize,
    levels: usize,
    tol: f64,
) -> Result<CoherenceReport> {
    let mut lam = pair.siegel_lam.clone();
    lam.pullback(depth)?;
    let mut leaves = lam.leaves();
    leaves.truncate(sample);
    let mut disagreements = Vec::new();
    for leaf in &leaves {
        let ta = trace_ray_siegel(&pair.theta, leaf.a(), levels);
        let tb = trace_ray_siegel(&pair.theta, leaf.b(), levels);
        if !ta.landed || !tb.landed {
            disagreements.push(format!("leaf {leaf:?}: a ray failed to land"));
            continue;
        }
        let d = (ta.landing_estimate() - tb.landing_estimate()).norm();
        if d > tol {
            disagreements.push(format!("leaf {leaf:?}: endpoints land {d:.2e} apart"));
        }
    }
    Ok(CoherenceReport {
        angles_checked: leaves.len(),
        disagreements,
    })
}

/// The candidate map is sane: re-runs the boundedness filter for reports.
pub fn siegel_orbit_bounded(g: &RationalMapParams, iterations: usize) -> bool {
    let mut z = g.crit_siegel();
    for _ in 0..iterations {
        z = g_apply(g.lambda(), g.a(), z);
        if !z.is_finite() || z.norm() > 1e8 {
            return false;
        }
    }
    true
}

/// Summary of a Hubbard tree for reports.
#[derive(Clone, Debug, Serialize)]
pub struct TreeSummary {
    pub vertices: usize,
    pub nus: Vec<usize>,
    pub mode: PcfMode,
}

pub fn tree_summary(tree: &HubbardTree) -> TreeSummary {
    TreeSummary {
        vertices: tree.vertices.len(),
        nus: tree.vertices.iter().map(|v| v.nu).collect(),
        mode: tree.mode.clone(),
    }
}
