use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use octacover::attractor::{chaos_game, sample_attractor, PointCloud, SamplingConfig, DEFAULT_POINT_CAP};
use octacover::bench::{bench_selection, format_table};
use octacover::composition::{compose_system, ConstantRule, DEFAULT_MAP_CAP};
use octacover::cover::build_cover;
use octacover::io::grid_file::parse_grid;
use octacover::io::mesh::{write_obj, write_xyz};
use octacover::io::pipeline::{run_pipeline, PipelineOptions, MESH_FILE, REPORT_FILE};
use octacover::io::report::CoverReport;
use octacover::io::write_atomic;
use octacover::{Error, IfsSystem};

const EXIT_INPUT: u8 = 1;
const EXIT_CONTAINMENT: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Octahedron covers of fractal interpolation surfaces.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a grid file.
    Validate { grid: PathBuf },
    /// Print map coefficients, contraction constants and fixed points.
    Coeffs { grid: PathBuf },
    /// Build the cover of the order-P system; writes report.json and cover.obj.
    Cover {
        grid: PathBuf,
        #[command(flatten)]
        system: SystemArgs,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Sample the surface into an XYZ point cloud.
    Sample {
        grid: PathBuf,
        /// Hutchinson iterations from the data points.
        #[arg(long, default_value_t = 8)]
        iters: usize,
        /// Use the chaos game instead of deterministic iteration.
        #[arg(long)]
        chaos: bool,
        /// Chaos-game steps.
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        /// Chaos-game steps discarded before recording.
        #[arg(long, default_value_t = 0)]
        burn_in: usize,
        /// Chaos-game RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of points kept per Hutchinson step.
        #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
        point_cap: usize,
        #[arg(long, default_value = "surface.xyz")]
        output: PathBuf,
    },
    /// Full pipeline: cover, samples, containment check (exit 2 on failure).
    Check {
        grid: PathBuf,
        #[command(flatten)]
        system: SystemArgs,
        /// Hutchinson iterations from the data points.
        #[arg(long, default_value_t = 8)]
        iters: usize,
        /// Maximum number of points kept per Hutchinson step.
        #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
        point_cap: usize,
        /// Extra chaos-game samples (0 disables).
        #[arg(long, default_value_t = 100_000)]
        chaos_steps: usize,
        /// Chaos-game RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Containment slack relative to the data scale.
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Time top-two selection against sorting.
    Bench {
        /// Array sizes.
        #[arg(long, value_delimiter = ',', default_values_t = vec![10usize, 1_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        /// Repetitions per size.
        #[arg(long, default_value_t = 11)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct SystemArgs {
    /// Composition order p.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    order: u32,
    /// Maximum number of maps in the composed system.
    #[arg(long, default_value_t = DEFAULT_MAP_CAP)]
    map_cap: usize,
    /// Also bound composed constants with the closed-form formula.
    #[arg(long)]
    tighten: bool,
}

impl SystemArgs {
    fn rule(&self) -> ConstantRule {
        if self.tighten {
            ConstantRule::Tightened
        } else {
            ConstantRule::Product
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // keep exit code 2 reserved for containment failures
            return if err.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::SystemTooLarge { .. } => EXIT_CAP,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn run(cli: Cli) -> octacover::Result<ExitCode> {
    match cli.command {
        Command::Validate { grid } => {
            let g = parse_grid(&grid)?;
            println!(
                "{}: valid, {}x{} nodes, {} maps, delta {}",
                grid.display(),
                g.n() + 1,
                g.m() + 1,
                g.map_count(),
                g.delta()
            );
        }
        Command::Coeffs { grid } => {
            let system = IfsSystem::from_grid(&parse_grid(&grid)?)?;
            let m = system.metric;
            println!("delta {}  theta {}  (theta1 {}, theta2 {})", m.delta, m.theta, m.theta1, m.theta2);
            for map in &system.maps {
                let (k, l) = map.factors[0];
                let c = map.coeffs;
                println!(
                    "F[{k},{l}] a={} b={} c={} d={} e={} f={} g={} alpha={} beta={}",
                    c.a, c.b, c.c, c.d, c.e, c.f, c.g, c.alpha, c.beta
                );
                let p = map.fixed_point;
                println!("        C={} gamma=({}, {}, {})", map.contraction, p.x, p.y, p.z);
            }
        }
        Command::Cover { grid, system, out } => {
            let base = IfsSystem::from_grid(&parse_grid(&grid)?)?;
            let composed = compose_system(&base, system.order, system.map_cap, system.rule())?;
            let cover = build_cover(&composed)?;
            let report = CoverReport::new(&composed, &cover, None);
            write_atomic(&out.join(REPORT_FILE), |w| report.write_json(w).map_err(std::io::Error::other))?;
            write_atomic(&out.join(MESH_FILE), |w| write_obj(&cover, w))?;
            println!(
                "order {}: {} octahedra, M = {}, max radius = {}",
                cover.order,
                cover.len(),
                cover.solution.diameter,
                cover.max_radius()
            );
            println!("wrote {} and {}", out.join(REPORT_FILE).display(), out.join(MESH_FILE).display());
        }
        Command::Sample {
            grid,
            iters,
            chaos,
            steps,
            burn_in,
            seed,
            point_cap,
            output,
        } => {
            let g = parse_grid(&grid)?;
            let system = IfsSystem::from_grid(&g)?;
            let cloud = if chaos {
                if steps <= burn_in {
                    eprintln!("error: --steps must exceed --burn-in");
                    return Ok(ExitCode::from(EXIT_INPUT));
                }
                chaos_game(&system.maps, g.node(0, 0), steps, burn_in, seed)
            } else {
                let config = SamplingConfig::for_grid(&g).with_cap(point_cap);
                sample_attractor(&system.maps, iters, PointCloud::from_grid(&g), &config)
            };
            write_atomic(&output, |w| write_xyz(&cloud.points, w))?;
            println!(
                "{} points{} -> {}",
                cloud.len(),
                if cloud.truncated { " (truncated at cap)" } else { "" },
                output.display()
            );
        }
        Command::Check {
            grid,
            system,
            iters,
            point_cap,
            chaos_steps,
            seed,
            slack,
            out,
        } => {
            let g = parse_grid(&grid)?;
            let options = PipelineOptions {
                order: system.order,
                iterations: iters,
                map_cap: system.map_cap,
                point_cap,
                chaos_steps,
                chaos_burn_in: 0,
                chaos_seed: seed,
                relative_slack: slack,
                rule: system.rule(),
            };
            let outcome = run_pipeline(&g, &options, &out)?;
            let s = outcome.containment;
            println!(
                "order {}: {} octahedra, max radius {}; {} points tested, {} outside (max excess {:e})",
                outcome.report.order,
                outcome.report.map_count,
                outcome.report.max_radius,
                s.points_tested,
                s.failures,
                s.max_slack_used
            );
            print_paths(&[
                &outcome.report_path,
                &outcome.mesh_path,
                &outcome.cloud_path,
                &outcome.summary_path,
            ]);
            if !outcome.passed() {
                eprintln!("containment FAILED");
                return Ok(ExitCode::from(EXIT_CONTAINMENT));
            }
            println!("containment passed");
        }
        Command::Bench { sizes, reps, seed } => {
            print!("{}", format_table(&bench_selection(&sizes, reps, seed)));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_paths(paths: &[&Path]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}
