//! Command-line driver: load weighted complexes, minimize classes, cut,
//! profile, sweep, and report.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use homcmc::complex::WeightedComplex;
use homcmc::cut::{build_cut, emit_cut_json, Barrier};
use homcmc::profile::{girth_and_bound, peak_curvature, profile_exact};
use homcmc::rational::{decimal_string, format_rational, parse_rational, Rational};
use homcmc::report::{
    barrier_region_for_surface, full_report, profile_csv, report_json, spectrum_csv,
    witness_sweep, CheckStatus, ReportOptions,
};
use homcmc::spectrum::breakpoints;
use homcmc::width::width_dp;
use homcmc::{generate, minsurf};

#[derive(Parser)]
#[command(name = "homcmc", version, about = "Exact surface machinery in homology classes of weighted cellulations")]
struct Cli {
    /// Worker threads (0 = all cores). Outputs are identical for any value.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Instance {
    /// Complex file (homcmc-complex/1 JSON).
    file: PathBuf,
    /// Named surface in the file.
    #[arg(long)]
    surface: String,
    /// Cell fixing the plus side of the cut (defaults to the first cell).
    #[arg(long)]
    seed_cell: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Find the area-minimizing representative of the class.
    Minimize {
        #[command(flatten)]
        instance: Instance,
        /// Exhaustive enumeration (default).
        #[arg(long, conflicts_with = "local_search")]
        exact: bool,
        /// Greedy descent with random restarts instead of enumeration.
        #[arg(long)]
        local_search: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        /// Cell cap for exhaustive enumeration.
        #[arg(long, default_value_t = minsurf::DEFAULT_ENUM_CAP)]
        cap: usize,
    },
    /// Cut along the named surface and emit the terminal network.
    Cut {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exact isoperimetric profile of the class.
    Profile {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = homcmc::profile::DEFAULT_PROFILE_CAP)]
        cap: usize,
    },
    /// Parametric sweep of the restricted slab; emits breakpoints as CSV.
    Spectrum {
        #[command(flatten)]
        instance: Instance,
        /// Barrier surface name (default: the mean-value witness).
        #[arg(long, conflicts_with = "barrier_volume")]
        barrier: Option<String>,
        /// Barrier at the profile witness of this exact volume.
        #[arg(long)]
        barrier_volume: Option<String>,
        /// Sweep range LO:HI (default [0, |witness slope|/2]).
        #[arg(long)]
        h_range: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweepout width, its cardinality floor, and the width bound.
    Width {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, default_value_t = homcmc::width::DEFAULT_WIDTH_CAP)]
        cap: usize,
    },
    /// Generate a test instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Full pipeline report with verification checks, as JSON.
    Report {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        json: PathBuf,
    },
    /// Run the check suite; exit nonzero on any failed check.
    Verify {
        #[command(flatten)]
        instance: Instance,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Cycle of unit-volume cells with the given face areas.
    Ring {
        /// Comma-separated areas, e.g. 1,2,3.
        #[arg(long)]
        areas: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Periodic grid with unit weights.
    Grid3 {
        /// Dimensions AxBxC, each at least 2.
        #[arg(long)]
        dims: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Flat-profile ring: constant area and volume.
    Product {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        area: String,
        #[arg(long)]
        volume: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Glue copies of a cut complex end to end and cap with handlebodies.
    Stack {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        surface: String,
        #[arg(long)]
        seed_cell: String,
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Connected random dual multigraph with rational weights.
    Random {
        #[arg(long)]
        cells: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Weight numerator range LO:HI.
        #[arg(long, default_value = "1:100")]
        weights: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_instance(inst: &Instance) -> Result<(WeightedComplex, String, String)> {
    let text = fs::read_to_string(&inst.file)
        .with_context(|| format!("reading {}", inst.file.display()))?;
    let m = WeightedComplex::from_json_str(&text)?;
    let seed = match &inst.seed_cell {
        Some(s) => s.clone(),
        None => m.cell_id(0).to_string(),
    };
    Ok((m, inst.surface.clone(), seed))
}

fn parse_rat(text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| anyhow::anyhow!("bad rational {text:?}: {e}"))
}

fn parse_range(text: &str) -> Result<(Rational, Rational)> {
    let (lo, hi) = text
        .split_once(':')
        .context("range must look like LO:HI")?;
    Ok((parse_rat(lo)?, parse_rat(hi)?))
}

fn show(r: &Rational) -> String {
    format!("{} ({})", format_rational(r), decimal_string(r, 15))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Minimize {
            instance,
            local_search,
            seed,
            restarts,
            cap,
            ..
        } => {
            let (m, surface, _) = load_instance(&instance)?;
            let s = m.surface(&surface)?.clone();
            let result = if local_search {
                minsurf::minimize_local(&m, &s, seed, restarts)
            } else {
                minsurf::minimize_exact(&m, &s, cap)?
            };
            println!("area = {}", show(&result.area));
            println!("faces = {}", m.face_ids(&result.surface).join(" "));
            println!("witness = {}", m.cell_ids(&result.witness).join(" "));
            println!(
                "certified = {} ({})",
                result.certified,
                match result.method {
                    minsurf::MinimizeMethod::ExactEnumeration => "exact enumeration",
                    minsurf::MinimizeMethod::LocalSearch => "local search",
                }
            );
            if result.trivial_class() {
                println!("note: the class is trivial; class operations are refused downstream");
            }
        }
        Command::Cut { instance, out } => {
            let (m, surface, seed) = load_instance(&instance)?;
            let s = m.surface(&surface)?.clone();
            let cut = build_cut(&m, &s, &seed)?;
            fs::write(&out, emit_cut_json(&cut, Some(&m)))
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "cut network: {} cells, {} arcs, boundary area {}",
                cut.cell_count(),
                cut.arcs().len(),
                show(&cut.source_area())
            );
        }
        Command::Profile { instance, out, cap } => {
            let (m, surface, seed) = load_instance(&instance)?;
            let s = m.surface(&surface)?.clone();
            let sigma = minsurf::minimize_exact(&m, &s, cap)?;
            if sigma.trivial_class() {
                bail!("homology class of {surface} is trivial");
            }
            let cut = build_cut(&m, &sigma.surface, &seed)?;
            let profile = profile_exact(&cut, cap)?;
            fs::write(&out, profile_csv(&profile))
                .with_context(|| format!("writing {}", out.display()))?;
            let g = girth_and_bound(&profile)?;
            println!("points = {}", profile.len());
            println!("girth = {}", show(&g.girth));
            println!("curvature bound = {}", show(&g.curvature_bound));
            println!("peak curvature = {}", show(&peak_curvature(&profile)?));
        }
        Command::Spectrum {
            instance,
            barrier,
            barrier_volume,
            h_range,
            out,
        } => {
            let (m, surface, seed) = load_instance(&instance)?;
            let s = m.surface(&surface)?.clone();
            let sigma = minsurf::minimize_exact(&m, &s, minsurf::DEFAULT_ENUM_CAP)?;
            if sigma.trivial_class() {
                bail!("homology class of {surface} is trivial");
            }
            let cut = build_cut(&m, &sigma.surface, &seed)?;
            let profile = profile_exact(&cut, homcmc::profile::DEFAULT_PROFILE_CAP)?;
            let girth = girth_and_bound(&profile)?;

            let (slab, default_hi) = if let Some(name) = barrier {
                let chain = m.surface(&name)?.clone();
                let region = barrier_region_for_surface(&m, &cut, &chain)?;
                let barrier = Barrier::new(&cut, region)?;
                (cut.restrict(&barrier)?, None)
            } else if let Some(vol_text) = barrier_volume {
                let vol = parse_rat(&vol_text)?;
                let idx = profile
                    .index_of_volume(&vol)
                    .with_context(|| format!("volume {vol_text} not achieved by the profile"))?;
                let barrier = Barrier::new(&cut, profile.witness_region(idx))?;
                (cut.restrict(&barrier)?, None)
            } else {
                let (slab, hi, _) = witness_sweep(&cut, &profile, &girth)?;
                (slab, Some(hi))
            };

            let (lo, hi) = match (h_range, default_hi) {
                (Some(text), _) => parse_range(&text)?,
                (None, Some(hi)) => (Rational::from_integer(0.into()), hi),
                (None, None) => bail!("--h-range is required with an explicit barrier"),
            };
            if lo >= hi {
                bail!(
                    "sweep range [{}, {}] is empty",
                    format_rational(&lo),
                    format_rational(&hi)
                );
            }
            let spectrum = breakpoints(&slab, &lo, &hi)?;
            fs::write(&out, spectrum_csv(&spectrum))
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "swept [{}, {}]: {} breakpoints, jump total {}",
                format_rational(&lo),
                format_rational(&hi),
                spectrum.breakpoints.len(),
                format_rational(&spectrum.thickness())
            );
        }
        Command::Width { instance, cap } => {
            let (m, surface, seed) = load_instance(&instance)?;
            let s = m.surface(&surface)?.clone();
            let sigma = minsurf::minimize_exact(&m, &s, minsurf::DEFAULT_ENUM_CAP)?;
            if sigma.trivial_class() {
                bail!("homology class of {surface} is trivial");
            }
            let cut = build_cut(&m, &sigma.surface, &seed)?;
            let w = width_dp(&cut, cap)?;
            println!("width = {}", show(&w.width));
            println!("size floor = {}", show(&w.size_floor));
            println!("width curvature bound = {}", show(&w.width_curvature_bound));
            println!("ordering = {}", w.ordering.join(" "));
        }
        Command::Gen { kind } => {
            let (out, text) = match kind {
                GenKind::Ring { areas, out } => {
                    let areas = areas
                        .split(',')
                        .map(parse_rat)
                        .collect::<Result<Vec<_>>>()?;
                    (out, generate::ring(&areas)?)
                }
                GenKind::Grid3 { dims, out } => {
                    let parts: Vec<usize> = dims
                        .split('x')
                        .map(|p| p.parse().context("bad grid dimension"))
                        .collect::<Result<Vec<_>>>()?;
                    if parts.len() != 3 {
                        bail!("dims must look like AxBxC");
                    }
                    (out, generate::grid3(parts[0], parts[1], parts[2])?)
                }
                GenKind::Product {
                    count,
                    area,
                    volume,
                    out,
                } => (
                    out,
                    generate::product(count, &parse_rat(&area)?, &parse_rat(&volume)?)?,
                ),
                GenKind::Stack {
                    base,
                    surface,
                    seed_cell,
                    copies,
                    out,
                } => {
                    let text = fs::read_to_string(&base)
                        .with_context(|| format!("reading {}", base.display()))?;
                    let m = WeightedComplex::from_json_str(&text)?;
                    let chain = m.surface(&surface)?.clone();
                    (out, generate::stack(&m, &chain, &seed_cell, copies)?)
                }
                GenKind::Random {
                    cells,
                    degree,
                    weights,
                    seed,
                    out,
                } => {
                    let (lo, hi) = weights
                        .split_once(':')
                        .context("weights must look like LO:HI")?;
                    let lo: i64 = lo.parse().context("bad weight bound")?;
                    let hi: i64 = hi.parse().context("bad weight bound")?;
                    (out, generate::random(cells, degree, lo, hi, seed)?)
                }
            };
            fs::write(&out, &text).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
        }
        Command::Report { instance, json } => {
            let (m, surface, seed) = load_instance(&instance)?;
            let report = full_report(&m, &surface, &seed, &ReportOptions::default())?;
            fs::write(&json, report_json(&m, &report))
                .with_context(|| format!("writing {}", json.display()))?;
            for c in &report.checks {
                println!("{:<28} {:<10} {}", c.name, status_word(c.status), c.details);
            }
            if report.failed() {
                bail!("one or more checks failed");
            }
        }
        Command::Verify { instance } => {
            let (m, surface, seed) = load_instance(&instance)?;
            let report = full_report(&m, &surface, &seed, &ReportOptions::default())?;
            for c in &report.checks {
                println!("{:<28} {:<10} {}", c.name, status_word(c.status), c.details);
            }
            if report.failed() {
                bail!("one or more checks failed");
            }
            println!("all checks passed");
        }
    }
    Ok(())
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Diagnostic => "diagnostic",
        CheckStatus::Skipped => "skipped",
    }
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool configured once at startup");
    }
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
