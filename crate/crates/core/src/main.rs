//! Command-line surface of the mating workbench.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use mating_core::acceptance;
use mating_core::angle::Angle;
use mating_core::error::{Error, Result};
use mating_core::mating::{
    build_t_graph, class_of_x1_guard, detect_loops, ray_class, t_graph_dot, MatingPair,
};
use mating_core::num::drops::{drop_tree, SiegelNumerics};
use mating_core::num::ray::trace_ray_siegel;
use mating_core::num::render::{render_polynomial_julia, render_rational_julia, ImageSpec};
use mating_core::num::solve::{default_seed_grid, solve_candidate_g, solve_pcf_c};
use mating_core::pcf::{build_hubbard_tree, kneading};
use mating_core::pipeline::{run_mate, t_graph_chains, tree_summary};
use mating_core::report::{default_c_seed, JobConfig, Report};
use mating_core::rotation::{
    check_order_isomorphic, critical_angle_pair, major_gap_check, minimal_rotation_set_rational,
    rotation_orbit_sample,
};

#[derive(Parser)]
#[command(
    name = "mating-workbench",
    about = "Combinatorics and numerics for mating a bounded-type Siegel quadratic with a postcritically finite quadratic",
    version
)]
struct Cli {
    /// TOML config file; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Rotation number: golden, silver, cbrt(1/4), p/q, or 0.ddd.
    #[arg(long, global = true)]
    theta: Option<String>,
    /// PCF polynomial: basilica, airplane, rabbit, chebyshev, dendrite154,
    /// super:<angle>, or mis:<angle>.
    #[arg(long, global = true)]
    pcf: Option<String>,
    /// Output directory for reports and rasters.
    #[arg(long, global = true)]
    out_dir: Option<String>,
    /// Seed for all stochastic sampling.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Siegel angle resolution in bits.
    #[arg(long, global = true)]
    resolution_bits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AngleArg {
    /// Angle as num/den.
    #[arg(long)]
    t: String,
}

#[derive(Subcommand)]
enum Command {
    /// Exact angle arithmetic: doubling, halves, conjugate, orbit.
    Angles(AngleArg),
    /// Kneading sequence of an angle.
    Kneading(AngleArg),
    /// Abstract Hubbard tree of the PCF polynomial.
    Hubbard,
    /// Rotation-set digits and certification for theta.
    RotationSet {
        #[arg(long, default_value_t = 64)]
        bits: u32,
        #[arg(long, default_value_t = 128)]
        samples: usize,
    },
    /// Siegel drop tree.
    Drops {
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Ray-equivalence class of an angle under the formal mating.
    Rayclass(AngleArg),
    /// T-graph with complementary regions, DOT export, and overlay raster.
    TGraph,
    /// Newton solve for the PCF parameter c.
    SolveC {
        #[arg(long)]
        seed_re: Option<f64>,
        #[arg(long)]
        seed_im: Option<f64>,
    },
    /// Newton solve for the candidate rational map parameter a.
    SolveG,
    /// Render a Julia set raster.
    Render {
        /// Map: "c:-1", "c:-0.12+0.75i", or "g" for the candidate map.
        #[arg(long, default_value = "c:-1")]
        map: String,
        #[arg(long, default_value = "julia.ppm")]
        out: String,
        #[arg(long, default_value = "ppm")]
        format: String,
    },
    /// Full mating pipeline with the aggregated verdict.
    Mate,
    /// Run every acceptance criterion and print one line per criterion.
    Verify,
}

fn merged_config(cli: &Cli) -> Result<JobConfig> {
    let mut cfg = match &cli.config {
        Some(path) => JobConfig::from_toml_file(path)?,
        None => JobConfig::default(),
    };
    if let Some(theta) = &cli.theta {
        cfg.theta = theta.clone();
    }
    if let Some(pcf) = &cli.pcf {
        cfg.pcf = pcf.clone();
    }
    if let Some(out) = &cli.out_dir {
        cfg.out_dir = out.clone();
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(bits) = cli.resolution_bits {
        cfg.resolution_bits = bits;
    }
    Ok(cfg)
}

fn write_report<T: Serialize>(cfg: &JobConfig, name: &str, payload: T, started: Instant) -> Result<PathBuf> {
    let path = PathBuf::from(&cfg.out_dir).join(name);
    let report = Report::new(cfg, payload);
    report.write(&path)?;
    mating_core::report::write_timing_sidecar(&path, started.elapsed().as_millis())?;
    println!("wrote {}", path.display());
    Ok(path)
}

fn run(cli: Cli) -> Result<()> {
    let started = Instant::now();
    let cfg = merged_config(&cli)?;
    match cli.command {
        Command::Angles(arg) => {
            let t: Angle = arg.t.parse()?;
            #[derive(Serialize)]
            struct AngleReport {
                t: Angle,
                double: Angle,
                halves: (Angle, Angle),
                conjugate: Angle,
                orbit: mating_core::angle::OrbitInfo,
            }
            let payload = AngleReport {
                double: t.double(),
                halves: t.halves(),
                conjugate: t.conjugate(),
                orbit: t.orbit_info(),
                t,
            };
            write_report(&cfg, "angles.json", payload, started)?;
        }
        Command::Kneading(arg) => {
            let t: Angle = arg.t.parse()?;
            let k = kneading(&t)?;
            #[derive(Serialize)]
            struct KneadingReport {
                t: Angle,
                symbols: String,
                preperiod: usize,
                period: usize,
            }
            let payload = KneadingReport {
                symbols: k.to_string_compact(),
                preperiod: k.preperiod,
                period: k.period,
                t,
            };
            write_report(&cfg, "kneading.json", payload, started)?;
        }
        Command::Hubbard => {
            let spec = cfg.pcf_spec()?;
            let tree = build_hubbard_tree(&spec)?;
            write_report(&cfg, "hubbard.json", tree, started)?;
        }
        Command::RotationSet { bits, samples } => {
            let theta = cfg.theta_value()?;
            let pair = critical_angle_pair(&theta, bits)?;
            #[derive(Serialize)]
            struct RotationReport {
                pair: mating_core::rotation::RotationSetDigits,
                order_isomorphic: bool,
                gap: mating_core::rotation::GapCheck,
                minimal_set: Option<Vec<Angle>>,
            }
            let sample = if theta.is_rational() {
                minimal_rotation_set_rational(&theta)?
            } else {
                rotation_orbit_sample(&theta, samples, bits)?
            };
            let payload = RotationReport {
                order_isomorphic: check_order_isomorphic(&theta, samples.min(128), bits)?,
                gap: major_gap_check(&pair, &sample),
                minimal_set: theta.is_rational().then_some(sample),
                pair,
            };
            write_report(&cfg, "rotation-set.json", payload, started)?;
        }
        Command::Drops { depth } => {
            let theta = cfg.theta_value()?;
            let ctx = SiegelNumerics::new(&theta, cfg.boundary_samples)?;
            let tree = drop_tree(&ctx, depth)?;
            #[derive(Serialize)]
            struct DropReport {
                theta: String,
                depth: usize,
                drops: Vec<mating_core::num::drops::DropNode>,
            }
            let payload = DropReport {
                theta: theta.name().to_string(),
                depth,
                drops: tree.drops,
            };
            write_report(&cfg, "drops.json", payload, started)?;
        }
        Command::Rayclass(arg) => {
            let t: Angle = arg.t.parse()?;
            let theta = cfg.theta_value()?;
            let pair = MatingPair::new(theta, cfg.pcf_spec()?, cfg.resolution_bits)?;
            let class = ray_class(&pair, &t)?;
            let loops = detect_loops(&class);
            let guard = class_of_x1_guard(&class);
            #[derive(Serialize)]
            struct RayClassReport {
                class: mating_core::mating::RayClass,
                loops: mating_core::mating::LoopReport,
                x1_guard: mating_core::mating::X1Report,
            }
            let payload = RayClassReport {
                class,
                loops,
                x1_guard: guard,
            };
            write_report(&cfg, "rayclass.json", payload, started)?;
        }
        Command::TGraph => {
            let theta = cfg.theta_value()?;
            let pair = MatingPair::new(theta.clone(), cfg.pcf_spec()?, cfg.resolution_bits)?;
            let tree = build_hubbard_tree(&pair.pcf)?;
            let t = build_t_graph(&pair, &tree)?;
            let dot = t_graph_dot(&t);
            let dot_path = PathBuf::from(&cfg.out_dir).join("t-graph.dot");
            std::fs::create_dir_all(&cfg.out_dir)?;
            std::fs::write(&dot_path, dot)?;
            // overlay raster: Siegel-side Julia set with the spoke rays
            let c_prime = mating_core::num::ray::siegel_conjugate_c(&theta);
            let image = ImageSpec {
                center_re: -mating_core::num::ray::lambda_of(&theta).re / 2.0,
                center_im: -mating_core::num::ray::lambda_of(&theta).im / 2.0,
                span: 1.8,
                seed: cfg.seed,
                ..Default::default()
            };
            let mut raster = render_polynomial_julia(c_prime, &image);
            for spoke in &t.spokes {
                let tr = trace_ray_siegel(&theta, &spoke.theta_angle, cfg.ray_levels);
                mating_core::num::render::draw_polyline(
                    &mut raster,
                    &image,
                    &tr.points,
                    [255, 120, 40],
                );
            }
            let ppm = PathBuf::from(&cfg.out_dir).join("t-graph.ppm");
            raster.write_ppm(&ppm)?;
            let chains = t_graph_chains(&pair, &t, &cfg)?;
            #[derive(Serialize)]
            struct TReport {
                tree: mating_core::pipeline::TreeSummary,
                t_graph: mating_core::mating::TGraph,
                chains: Vec<mating_core::num::drops::DropChain>,
            }
            let payload = TReport {
                tree: tree_summary(&tree),
                t_graph: t,
                chains,
            };
            write_report(&cfg, "t-graph.json", payload, started)?;
            println!("wrote {} and {}", dot_path.display(), ppm.display());
        }
        Command::SolveC { seed_re, seed_im } => {
            let spec = cfg.pcf_spec()?;
            let default = default_c_seed(&spec);
            let seed = Complex64::new(
                seed_re.unwrap_or(default.re),
                seed_im.unwrap_or(default.im),
            );
            let report = solve_pcf_c(&spec, seed)?;
            write_report(&cfg, "solve-c.json", report, started)?;
        }
        Command::SolveG => {
            let theta = cfg.theta_value()?;
            let spec = cfg.pcf_spec()?;
            let search = solve_candidate_g(&theta, &spec, &default_seed_grid())?;
            if search.accepted.is_empty() {
                let payload = search;
                write_report(&cfg, "solve-g.json", payload, started)?;
                return Err(Error::numeric(
                    "no candidate root passed the dynamical filters",
                ));
            }
            write_report(&cfg, "solve-g.json", search, started)?;
        }
        Command::Render { map, out, format } => {
            let image = ImageSpec {
                seed: cfg.seed,
                ..Default::default()
            };
            let raster = if let Some(cspec) = map.strip_prefix("c:") {
                let c = parse_complex(cspec)?;
                render_polynomial_julia(c, &image)
            } else if map == "g" {
                let theta = cfg.theta_value()?;
                let spec = cfg.pcf_spec()?;
                let search = solve_candidate_g(&theta, &spec, &default_seed_grid())?;
                let g = search
                    .accepted
                    .first()
                    .ok_or_else(|| Error::numeric("no candidate root to render"))?;
                render_rational_julia(g, &image, 200_000)
            } else {
                return Err(Error::validation(format!(
                    "unknown map `{map}`; use c:<re>[+<im>i] or g"
                )));
            };
            std::fs::create_dir_all(&cfg.out_dir)?;
            let path = PathBuf::from(&cfg.out_dir).join(&out);
            match format.as_str() {
                "ppm" => raster.write_ppm(&path)?,
                "png" => raster.write_png(&path)?,
                other => {
                    return Err(Error::validation(format!(
                        "unknown format `{other}`; use ppm or png"
                    )))
                }
            }
            println!("wrote {}", path.display());
        }
        Command::Mate => {
            let (outcome, raster) = run_mate(&cfg)?;
            if let Some(r) = raster {
                std::fs::create_dir_all(&cfg.out_dir)?;
                r.write_ppm(&PathBuf::from(&cfg.out_dir).join("mate-julia.ppm"))?;
            }
            println!(
                "mating-consistent: {}",
                if outcome.mating_consistent { "yes" } else { "no" }
            );
            write_report(&cfg, "mate.json", outcome, started)?;
        }
        Command::Verify => {
            let results = acceptance::run_all();
            let mut all_ok = true;
            for r in &results {
                println!("{}", r.line());
                all_ok &= r.passed;
            }
            if !all_ok {
                return Err(Error::combinatorial("acceptance criteria failed"));
            }
        }
    }
    Ok(())
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim().trim_end_matches('i');
    if let Some(pos) = s[1..].find(['+', '-']).map(|p| p + 1) {
        let re: f64 = s[..pos]
            .parse()
            .map_err(|_| Error::validation(format!("bad complex `{s}`")))?;
        let im: f64 = s[pos..]
            .parse()
            .map_err(|_| Error::validation(format!("bad complex `{s}`")))?;
        Ok(Complex64::new(re, im))
    } else {
        let re: f64 = s
            .parse()
            .map_err(|_| Error::validation(format!("bad complex `{s}`")))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

