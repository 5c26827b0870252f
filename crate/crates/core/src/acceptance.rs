//! Acceptance criteria, one function per criterion, each returning a
//! pass/fail result with details. The `verify` subcommand and the
//! integration suite both run these.

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::Result;
use crate::mating::{
    build_t_graph, class_of_x1_guard, detect_loops, ray_class, MatingPair, RegionKind,
};
use crate::num::drops::{drop_chain_of_angle, drop_tree, SiegelNumerics};
use crate::num::ray::trace_ray_poly;
use crate::num::solve::{default_seed_grid, solve_candidate_g, solve_pcf_c};
use crate::num::parallel_map;
use crate::pcf::{build_hubbard_tree, PcfSpec};
use crate::pipeline::{
    landing_coherence, periodic_class_cycles, run_mate, run_probe, sample_rational_angles,
    siegel_leaf_coherence, siegel_orbit_bounded,
};
use crate::report::{default_c_seed, JobConfig, Report};
use crate::rotation::{check_order_isomorphic, critical_angle_pair};
use crate::theta::Theta;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    fn new(id: usize, name: &'static str, passed: bool, details: String) -> Self {
        CriterionResult {
            id,
            name,
            passed,
            details,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} criterion {:2} ({}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.details
        )
    }
}

pub mod oracles {
    //! Independent oracles; these never call the implementation paths they
    //! check.

    use super::*;

    /// Minimal rotation set for rotation number p/q by brute force: the
    /// unique period-q doubling orbit whose circular order advances by p.
    pub fn brute_force_minimal_rotation_set(p: u64, q: u64) -> Option<Vec<Angle>> {
        let modulus = (1u64 << q) - 1;
        let mut seen = vec![false; modulus as usize];
        for num in 1..modulus {
            if seen[num as usize] {
                continue;
            }
            // collect the doubling orbit of num/modulus
            let mut orbit_nums = vec![num];
            let mut cur = (num * 2) % modulus;
            while cur != num {
                orbit_nums.push(cur);
                cur = (cur * 2) % modulus;
            }
            for &o in &orbit_nums {
                seen[o as usize] = true;
            }
            if orbit_nums.len() != q as usize {
                continue;
            }
            // circular order: position of the successor must advance by p
            let mut sorted = orbit_nums.clone();
            sorted.sort_unstable();
            let rank =
                |x: u64| sorted.iter().position(|&s| s == x).unwrap() as u64;
            let ok = orbit_nums
                .iter()
                .zip(orbit_nums.iter().cycle().skip(1))
                .all(|(&a, &b)| (rank(b) + q - rank(a)) % q == p % q);
            if ok {
                let mut angles: Vec<Angle> = sorted
                    .into_iter()
                    .map(|n| Angle::new(n, modulus))
                    .collect();
                angles.sort();
                return Some(angles);
            }
        }
        None
    }

    /// Chebyshev landing point of the ray at angle t under z -> w + 1/w.
    pub fn chebyshev_landing(t: &Angle) -> Complex64 {
        Complex64::new(2.0 * (std::f64::consts::TAU * t.to_f64()).cos(), 0.0)
    }
}

fn golden_pair(pcf: &str) -> Result<MatingPair> {
    MatingPair::new(Theta::golden(), PcfSpec::named(pcf)?, 64)
}

/// Criterion 1: the parameter fixtures of the paper's figures.
pub fn criterion_1() -> Result<CriterionResult> {
    let checks: [(&str, Complex64, f64); 4] = [
        ("basilica", Complex64::new(-1.0, 0.0), 1e-12),
        ("airplane", Complex64::new(-1.754_877_666_246_69, 0.0), 1e-5),
        ("dendrite154", Complex64::new(-1.543_689_012_692_08, 0.0), 1e-5),
        ("chebyshev", Complex64::new(-2.0, 0.0), 1e-12),
    ];
    let mut details = Vec::new();
    let mut passed = true;
    for (name, expect, tol) in checks {
        let spec = PcfSpec::named(name)?;
        match solve_pcf_c(&spec, default_c_seed(&spec)) {
            Ok(r) => {
                let err = (r.c() - expect).norm();
                if err > tol {
                    passed = false;
                }
                details.push(format!("{name}: c = {:.12}, err {err:.2e}", r.c()));
            }
            Err(e) => {
                passed = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    Ok(CriterionResult::new(
        1,
        "parameter fixtures",
        passed,
        details.join("; "),
    ))
}

/// Criterion 2: Chebyshev landing oracle for 50 rational angles.
pub fn criterion_2() -> Result<CriterionResult> {
    let c = Complex64::new(-2.0, 0.0);
    let angles = sample_rational_angles(50, 255, 2026);
    let traces = parallel_map(&angles, |t| trace_ray_poly(c, t, 96));
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for tr in &traces {
        let expect = oracles::chebyshev_landing(&tr.angle);
        let err = (tr.landing_estimate() - expect).norm();
        if !tr.landed || err > 1e-6 {
            failures += 1;
        }
        worst = worst.max(err);
    }
    Ok(CriterionResult::new(
        2,
        "Chebyshev landing oracle",
        failures == 0,
        format!("50 angles, worst landing error {worst:.2e}, failures {failures}"),
    ))
}

/// Criterion 3: combinatorial co-landing matches numeric coincidence.
pub fn criterion_3() -> Result<CriterionResult> {
    let fixtures = [
        ("basilica", Complex64::new(-1.0, 0.0)),
        ("chebyshev", Complex64::new(-2.0, 0.0)),
        ("airplane", Complex64::new(-1.754_877_666_246_69, 0.0)),
        ("dendrite154", Complex64::new(-1.543_689_012_692_08, 0.0)),
    ];
    let mut details = Vec::new();
    let mut passed = true;
    for (idx, (name, c)) in fixtures.into_iter().enumerate() {
        let pair = golden_pair(name)?;
        let rep = landing_coherence(&pair, c, 100, 31 + idx as u64, 96, 1e-4)?;
        if !rep.disagreements.is_empty() {
            passed = false;
            details.push(format!(
                "{name}: {} disagreements ({})",
                rep.disagreements.len(),
                rep.disagreements[0]
            ));
        } else {
            details.push(format!("{name}: {} angles coherent", rep.angles_checked));
        }
        // Siegel side: lamination leaves land together numerically
        let srep = siegel_leaf_coherence(&pair, 8, 10, 96, 1e-4)?;
        if !srep.disagreements.is_empty() {
            passed = false;
            details.push(format!("{name} siegel: {}", srep.disagreements[0]));
        }
    }
    Ok(CriterionResult::new(
        3,
        "lamination/landing coherence",
        passed,
        details.join("; "),
    ))
}

/// Criterion 4: ray-class laws plus the paper's 4-ray example class.
pub fn criterion_4() -> Result<CriterionResult> {
    let mut details = Vec::new();
    let mut passed = true;
    for theta in [Theta::golden(), Theta::silver()] {
        for pcf in ["basilica", "chebyshev", "airplane", "dendrite154"] {
            let pair = MatingPair::new(theta.clone(), PcfSpec::named(pcf)?, 64)?;
            let laws = crate::pipeline::class_laws_sample(&pair, 100, 11)?;
            if !(laws.idempotent && laws.all_trees && laws.within_2m && laws.x1_at_most_one) {
                passed = false;
                details.push(format!(
                    "({}, {pcf}): {}",
                    theta.name(),
                    laws.failures.first().cloned().unwrap_or_default()
                ));
            }
        }
    }
    // the paper's example: theta = cbrt(1/4), c = -2, the critical pair class
    let pair = MatingPair::new(Theta::cbrt_quarter(), PcfSpec::named("chebyshev")?, 64)?;
    let class = ray_class(&pair, &pair.rotation.t_plus.clone())?;
    let guard = class_of_x1_guard(&class);
    let pattern_ok = class.rays.len() == 4
        && guard.x1_nodes == 1
        && class.c_nodes.len() == 2
        && class.c_nodes.iter().all(|n| n.len() == 2)
        && class.theta_nodes.len() == 3
        && detect_loops(&class).is_tree;
    if !pattern_ok {
        passed = false;
        details.push(format!(
            "4-ray example: rays {} x1 {} c-nodes {}",
            class.rays.len(),
            guard.x1_nodes,
            class.c_nodes.len()
        ));
    } else {
        details.push("4-ray example class reproduced".into());
    }
    Ok(CriterionResult::new(
        4,
        "ray-class laws",
        passed,
        details.join("; "),
    ))
}

/// Criterion 5: drop counts and strictly decreasing chain distances.
pub fn criterion_5() -> Result<CriterionResult> {
    let theta = Theta::golden();
    let ctx = SiegelNumerics::new(&theta, 2048)?;
    let tree = drop_tree(&ctx, 8)?;
    let mut passed = true;
    let mut details = Vec::new();
    for depth in 1..=8usize {
        let count = tree.drops.iter().filter(|d| d.depth == depth).count();
        if count != 1 << (depth - 1) {
            passed = false;
            details.push(format!("depth {depth}: {count} drops"));
        }
    }
    if details.is_empty() {
        details.push("drop counts 2^(n-1) for n <= 8".into());
    }
    let angles = sample_rational_angles(20, 63, 5);
    let mut chains_checked = 0;
    for t in &angles {
        match drop_chain_of_angle(&tree, &theta, t, 96) {
            Ok(chain) => {
                chains_checked += 1;
                for w in chain.nodes.windows(2) {
                    if w[1].distance_to_target >= w[0].distance_to_target {
                        passed = false;
                        details.push(format!("chain of {t}: distance not decreasing"));
                    }
                }
            }
            Err(e) => {
                passed = false;
                details.push(format!("chain of {t}: {e}"));
            }
        }
    }
    details.push(format!("{chains_checked} chains with decreasing distances"));
    Ok(CriterionResult::new(
        5,
        "drop combinatorics",
        passed,
        details.join("; "),
    ))
}

/// Criterion 6: rotation-set unit tests against the brute-force oracle.
pub fn criterion_6() -> Result<CriterionResult> {
    let mut passed = true;
    let mut details = Vec::new();
    for (p, q, expect) in [(1u64, 2u64, vec!["1/3", "2/3"]), (1, 3, vec!["1/7", "2/7", "4/7"])] {
        let oracle = oracles::brute_force_minimal_rotation_set(p, q)
            .expect("oracle found no rotation set");
        let expect: Vec<Angle> = expect.iter().map(|s| s.parse().unwrap()).collect();
        if oracle != expect {
            passed = false;
            details.push(format!("oracle for {p}/{q} gave {oracle:?}"));
        }
        let theta = Theta::rational(p, q)?;
        let set = crate::rotation::minimal_rotation_set_rational(&theta)?;
        if set != oracle {
            passed = false;
            details.push(format!("digit machinery for {p}/{q} gave {set:?}"));
        }
    }
    // golden digit certification to 64 bits plus order isomorphism
    let theta = Theta::golden();
    let pair = critical_angle_pair(&theta, 64)?;
    if pair.t_minus != pair.t_plus.antipode() {
        passed = false;
        details.push("golden critical pair is not a diameter".into());
    }
    if !check_order_isomorphic(&theta, 128, 64)? {
        passed = false;
        details.push("golden sample not order-isomorphic".into());
    }
    if details.is_empty() {
        details.push("rotation sets 1/2, 1/3 match; golden certified to 64 bits".into());
    }
    Ok(CriterionResult::new(
        6,
        "rotation-set unit tests",
        passed,
        details.join("; "),
    ))
}

/// Criterion 7: T-graph structure of the airplane and Chebyshev fixtures.
pub fn criterion_7() -> Result<CriterionResult> {
    let mut passed = true;
    let mut details = Vec::new();
    {
        let pair = golden_pair("airplane")?;
        let tree = build_hubbard_tree(&pair.pcf)?;
        let t = build_t_graph(&pair, &tree)?;
        let outer = t
            .regions
            .iter()
            .filter(|r| r.kind == RegionKind::Outer)
            .count();
        if t.regions.len() != 6 || outer != 2 {
            passed = false;
        }
        details.push(format!(
            "airplane: {} regions ({} Jordan outer)",
            t.regions.len(),
            outer
        ));
    }
    {
        let pair = golden_pair("chebyshev")?;
        let tree = build_hubbard_tree(&pair.pcf)?;
        let t = build_t_graph(&pair, &tree)?;
        let beta = t
            .landing_points
            .iter()
            .find(|lp| lp.c_angles == vec![Angle::zero()]);
        let single_ray_at_fixed = beta
            .map(|lp| t.spokes.iter().filter(|s| s.landing == lp.id).count() == 1)
            .unwrap_or(false);
        if t.regions.len() != 1 || !single_ray_at_fixed {
            passed = false;
        }
        details.push(format!(
            "chebyshev: {} region, single ray at the fixed vertex: {}",
            t.regions.len(),
            single_ray_at_fixed
        ));
    }
    Ok(CriterionResult::new(
        7,
        "T-graph structure",
        passed,
        details.join("; "),
    ))
}

/// Criterion 8: the candidate G for (golden, basilica) and (golden, chebyshev).
pub fn criterion_8() -> Result<CriterionResult> {
    let theta = Theta::golden();
    let mut passed = true;
    let mut details = Vec::new();
    for pcf in ["basilica", "chebyshev"] {
        let spec = PcfSpec::named(pcf)?;
        let search = solve_candidate_g(&theta, &spec, &default_seed_grid())?;
        let unique = search.accepted.len() == 1;
        if !unique {
            passed = false;
            details.push(format!("{pcf}: {} filtered roots", search.accepted.len()));
            continue;
        }
        let g = &search.accepted[0];
        let bounded = siegel_orbit_bounded(g, 10_000);
        let ok = g.pcf_residual < 1e-9 && g.derivative_at_zero_error < 1e-12 && bounded;
        if !ok {
            passed = false;
        }
        details.push(format!(
            "{pcf}: a = {:.9}+{:.9}i, residual {:.2e}, |g'(0)-lambda| {:.2e}, bounded {bounded}",
            g.a_re, g.a_im, g.pcf_residual, g.derivative_at_zero_error
        ));
    }
    Ok(CriterionResult::new(
        8,
        "candidate G",
        passed,
        details.join("; "),
    ))
}

/// Criterion 9: the slow-mating proxy probe at depth 20.
pub fn criterion_9() -> Result<CriterionResult> {
    let theta = Theta::golden();
    let spec = PcfSpec::named("basilica")?;
    let search = solve_candidate_g(&theta, &spec, &default_seed_grid())?;
    let g = search
        .accepted
        .first()
        .ok_or_else(|| crate::error::Error::numeric("no candidate root for the probe"))?;
    let config = JobConfig::default();
    let outcome = run_probe(g, &config)?;
    let passed = outcome.ratio_ok && outcome.tail_ok;
    Ok(CriterionResult::new(
        9,
        "slow-mating proxy",
        passed,
        format!(
            "base {} radius {:.4}: depth-20 ratio {:.4} (< 0.1), tail monotone within 5%: {}",
            outcome.base_kind, outcome.probe.base_radius, outcome.final_ratio, outcome.tail_ok
        ),
    ))
}

/// Criterion 10: repelling cycle counts match ray-class cycle counts.
pub fn criterion_10() -> Result<CriterionResult> {
    let theta = Theta::golden();
    let mut passed = true;
    let mut details = Vec::new();
    for (pcf, q_max) in [("basilica", 2usize), ("chebyshev", 1)] {
        let spec = PcfSpec::named(pcf)?;
        let pair = MatingPair::new(theta.clone(), spec.clone(), 64)?;
        let search = solve_candidate_g(&theta, &spec, &default_seed_grid())?;
        let Some(g) = search.accepted.first() else {
            passed = false;
            details.push(format!("{pcf}: no candidate root"));
            continue;
        };
        let class_counts = periodic_class_cycles(&pair, q_max)?;
        let report = crate::num::matching::periodic_point_match(g, &class_counts, q_max)?;
        if !report.all_matched {
            passed = false;
        }
        for entry in &report.entries {
            details.push(format!(
                "{pcf} q={}: {} repelling vs {} classes",
                entry.period, entry.repelling_cycles, entry.ray_class_cycles
            ));
        }
    }
    Ok(CriterionResult::new(
        10,
        "periodic matching",
        passed,
        details.join("; "),
    ))
}

/// Criterion 11: byte-identical mate reports for identical configurations.
pub fn criterion_11() -> Result<CriterionResult> {
    let config = JobConfig::default();
    let (outcome1, _) = run_mate(&config)?;
    let (outcome2, _) = run_mate(&config)?;
    let bytes1 = Report::new(&config, &outcome1).to_json_bytes()?;
    let bytes2 = Report::new(&config, &outcome2).to_json_bytes()?;
    let passed = bytes1 == bytes2;
    Ok(CriterionResult::new(
        11,
        "determinism",
        passed,
        format!(
            "two mate runs: {} bytes each, identical: {passed}, verdict {}",
            bytes1.len(),
            outcome1.mating_consistent
        ),
    ))
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    let runners: Vec<(usize, fn() -> Result<CriterionResult>)> = vec![
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    runners
        .into_iter()
        .map(|(id, f)| match f() {
            Ok(r) => r,
            Err(e) => CriterionResult::new(id, "criterion errored", false, e.to_string()),
        })
        .collect()
}
