//! End-to-end pipeline: minimize the class, cut along the minimizer,
//! profile the cut, locate the mean-value witness, sweep the restricted
//! slab over the certified curvature interval, compute the sweepout
//! width, and run the verification checks. Also owns the CSV and JSON
//! renderings; both are deterministic functions of the inputs for any
//! thread count.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use crate::complex::{Region, WeightedComplex};
use crate::cut::{build_cut, Barrier, CutComplex};
use crate::error::{Error, Result};
use crate::minsurf::{minimize_exact, minimize_local, MinimizerResult};
use crate::profile::{girth_and_bound, peak_curvature, profile_exact, GirthReport, Profile};
use crate::rational::{decimal_string, format_rational, Rational};
use crate::spectrum::{breakpoints, solve_offset, HSolve, Spectrum};
use crate::width::{width_dp, SweepoutResult};

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub exact_cap: usize,
    pub profile_cap: usize,
    pub width_cap: usize,
    pub local_seed: u64,
    pub local_restarts: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            exact_cap: crate::minsurf::DEFAULT_ENUM_CAP,
            profile_cap: crate::profile::DEFAULT_PROFILE_CAP,
            width_cap: crate::width::DEFAULT_WIDTH_CAP,
            local_seed: 0,
            local_restarts: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Diagnostic,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
}

/// Which boundary the restricted sweep grows from: the witness slope's
/// sign selects the side the mean curvature points to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepSide {
    FromSource,
    FromSink,
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub surface_name: String,
    pub seed_cell: String,
    pub minimizer: MinimizerResult,
    pub heuristic_minimizer: bool,
    pub sigma_area: Rational,
    pub total_volume: Rational,
    pub profile: Option<Profile>,
    pub girth: Option<GirthReport>,
    pub peak_curvature: Option<Rational>,
    pub sweep_side: Option<SweepSide>,
    pub spectrum: Option<Spectrum>,
    pub sweepout: Option<SweepoutResult>,
    pub checks: Vec<Check>,
}

impl ClassReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

/// Restrict the cut complex along the mean-value witness. A nonnegative
/// witness slope sweeps the region between the SOURCE boundary and the
/// witness; a negative slope mirrors the complex and sweeps from the
/// other side with the complementary region. Returns the slab, the sweep
/// upper end |slope|/2, and the side.
pub fn witness_sweep(
    cut: &CutComplex,
    profile: &Profile,
    girth: &GirthReport,
) -> Result<(CutComplex, Rational, SweepSide)> {
    let region = profile.witness_region(girth.witness_index);
    let hi = girth.witness_slope.clone().abs() / Rational::from_integer(2.into());
    if girth.witness_slope >= Rational::from_integer(0.into()) {
        let barrier = Barrier::new(cut, region)?;
        Ok((cut.restrict(&barrier)?, hi, SweepSide::FromSource))
    } else {
        let mirrored = cut.mirrored();
        let barrier = Barrier::new(&mirrored, mirrored.complement(&region))?;
        Ok((mirrored.restrict(&barrier)?, hi, SweepSide::FromSink))
    }
}

/// Sweep [0, hi]; a zero-length interval degenerates to the single solve
/// at 0, reported as a breakpoint only when the extremal optima differ.
fn sweep_spectrum(slab: &CutComplex, hi: &Rational) -> Result<Spectrum> {
    let zero = Rational::from_integer(0.into());
    if *hi > zero {
        return breakpoints(slab, &zero, hi);
    }
    let s = solve_offset(slab, &zero);
    let vb = s.volume_minus(slab);
    let va = s.volume_plus(slab);
    let mut bps = Vec::new();
    if vb != va {
        bps.push(crate::spectrum::Breakpoint {
            h: zero.clone(),
            vol_before: vb.clone(),
            vol_after: va,
            area_before: s.area_minus(slab),
            area_after: s.area_plus(slab),
        });
    }
    Ok(Spectrum {
        domain: (zero, hi.clone()),
        breakpoints: bps,
        initial_volume: vb,
    })
}

/// Sample parameters for the nesting checks: interval ends, breakpoints,
/// and segment midpoints.
fn sample_parameters(spectrum: &Spectrum) -> Vec<Rational> {
    let (lo, hi) = spectrum.domain.clone();
    let mut marks = vec![lo.clone()];
    for bp in &spectrum.breakpoints {
        marks.push(bp.h.clone());
    }
    marks.push(hi.clone());
    marks.sort();
    marks.dedup();
    let mut samples = marks.clone();
    let half = Rational::from_integer(2.into());
    for pair in marks.windows(2) {
        samples.push((pair[0].clone() + pair[1].clone()) / half.clone());
    }
    samples.sort();
    samples.dedup();
    samples
}

fn push(checks: &mut Vec<Check>, name: &str, status: CheckStatus, details: String) {
    checks.push(Check {
        name: name.to_string(),
        status,
        details,
    });
}

fn pass_fail(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Run the whole pipeline on a named surface.
pub fn full_report(
    m: &WeightedComplex,
    surface_name: &str,
    seed_cell: &str,
    opts: &ReportOptions,
) -> Result<ClassReport> {
    let s = m.surface(surface_name)?.clone();
    if m.bounding_region(&s).is_some() {
        return Err(Error::TrivialClass);
    }

    let (minimizer, heuristic) = if m.cell_count() <= opts.exact_cap {
        (minimize_exact(m, &s, opts.exact_cap)?, false)
    } else {
        (
            minimize_local(m, &s, opts.local_seed, opts.local_restarts),
            true,
        )
    };
    if minimizer.trivial_class() {
        return Err(Error::TrivialClass);
    }
    let cut = build_cut(m, &minimizer.surface, seed_cell)?;
    let sigma_area = cut.source_area();
    let total_volume = cut.total_volume().clone();

    let mut checks = Vec::new();
    let profile = match profile_exact(&cut, opts.profile_cap) {
        Ok(p) => Some(p),
        Err(Error::CapExceeded { cells, cap }) => {
            push(
                &mut checks,
                "profile",
                CheckStatus::Skipped,
                format!("{cells} cells exceed profile cap {cap}"),
            );
            None
        }
        Err(e) => return Err(e),
    };

    let girth = match &profile {
        Some(p) => Some(girth_and_bound(p)?),
        None => None,
    };
    let peak = match &profile {
        Some(p) => Some(peak_curvature(p)?),
        None => None,
    };

    // Restricted sweep along the witness barrier.
    let mut sweep: Option<(CutComplex, Spectrum, SweepSide)> = None;
    if let (Some(p), Some(g)) = (&profile, &girth) {
        let (slab, hi, side) = witness_sweep(&cut, p, g)?;
        let spectrum = sweep_spectrum(&slab, &hi)?;
        sweep = Some((slab, spectrum, side));
    }

    let sweepout = match width_dp(&cut, opts.width_cap) {
        Ok(w) => Some(w),
        Err(Error::CapExceeded { cells, cap }) => {
            push(
                &mut checks,
                "width",
                CheckStatus::Skipped,
                format!("{cells} cells exceed width cap {cap}"),
            );
            None
        }
        Err(e) => return Err(e),
    };

    // --- checks ---
    if heuristic {
        push(
            &mut checks,
            "heuristic-minimizer",
            CheckStatus::Diagnostic,
            "minimum from local search; downstream quantities are upper bounds".into(),
        );
    }

    match &profile {
        Some(p) => {
            let first = &p.points()[0].area;
            let last = &p.points()[p.len() - 1].area;
            let ok = *first == sigma_area && *last == sigma_area;
            push(
                &mut checks,
                "endpoint-identity",
                pass_fail(ok),
                format!(
                    "profile(0) = {}, profile(total) = {}, boundary = {}",
                    format_rational(first),
                    format_rational(last),
                    format_rational(&sigma_area)
                ),
            );
        }
        None => push(
            &mut checks,
            "endpoint-identity",
            CheckStatus::Skipped,
            "no profile".into(),
        ),
    }

    match &girth {
        Some(g) => {
            let two_bound = Rational::from_integer(2.into()) * g.curvature_bound.clone();
            let ok = g.witness_slope.clone().abs() >= two_bound;
            push(
                &mut checks,
                "mean-value-witness",
                pass_fail(ok),
                format!(
                    "witness at volume {} with slope {}, bound {}",
                    format_rational(&g.witness_volume),
                    format_rational(&g.witness_slope),
                    format_rational(&g.curvature_bound)
                ),
            );
        }
        None => push(
            &mut checks,
            "mean-value-witness",
            CheckStatus::Skipped,
            "no profile".into(),
        ),
    }

    match (&peak, &girth) {
        (Some(h), Some(g)) => {
            push(
                &mut checks,
                "peak-curvature-bound",
                pass_fail(*h >= g.curvature_bound),
                format!(
                    "peak curvature {} vs bound {}",
                    format_rational(h),
                    format_rational(&g.curvature_bound)
                ),
            );
        }
        _ => push(
            &mut checks,
            "peak-curvature-bound",
            CheckStatus::Skipped,
            "no profile".into(),
        ),
    }

    if let Some((slab, spectrum, _)) = &sweep {
        // Nesting of extremal optima across every sampled pair.
        let samples = sample_parameters(spectrum);
        let solves: BTreeMap<Rational, HSolve> = samples
            .iter()
            .map(|h| (h.clone(), solve_offset(slab, h)))
            .collect();
        let mut violations = Vec::new();
        for (h1, s1) in &solves {
            for (h2, s2) in solves.range(h1.clone()..).skip(1) {
                if !s1.region_plus.is_subset(&s2.region_minus) {
                    violations.push(format!(
                        "{} vs {}",
                        format_rational(h1),
                        format_rational(h2)
                    ));
                }
            }
        }
        push(
            &mut checks,
            "nesting",
            pass_fail(violations.is_empty()),
            if violations.is_empty() {
                format!("{} sampled parameters", solves.len())
            } else {
                format!("violated at {}", violations.join(", "))
            },
        );

        // Volumes nondecreasing, jumps positive, segments chained.
        let mut ok = true;
        let mut details = String::new();
        for bp in &spectrum.breakpoints {
            if bp.vol_before >= bp.vol_after {
                ok = false;
                details = format!("non-increasing jump at H = {}", format_rational(&bp.h));
            }
        }
        for pair in spectrum.breakpoints.windows(2) {
            if pair[0].h >= pair[1].h || pair[0].vol_after != pair[1].vol_before {
                ok = false;
                details = format!(
                    "segment mismatch between H = {} and H = {}",
                    format_rational(&pair[0].h),
                    format_rational(&pair[1].h)
                );
            }
        }
        let mut last_vol = spectrum.initial_volume.clone();
        for h in &samples {
            match spectrum.volume_at(h).expect("sample in domain") {
                crate::spectrum::VolumeAt::Single(v) => {
                    if v < last_vol {
                        ok = false;
                        details = format!("volume decreased at H = {}", format_rational(h));
                    }
                    last_vol = v;
                }
                crate::spectrum::VolumeAt::Jump(b, a) => {
                    if b < last_vol || a < b {
                        ok = false;
                        details = format!("volume decreased at H = {}", format_rational(h));
                    }
                    last_vol = a;
                }
            }
        }
        if ok {
            details = format!("{} breakpoints", spectrum.breakpoints.len());
        }
        push(&mut checks, "volume-monotone", pass_fail(ok), details);

        // Every sweep optimum is isoperimetric in the slab.
        if slab.cell_count() <= 16 {
            let slab_profile = profile_exact(slab, 16)?;
            let mut ok = true;
            let mut details = String::new();
            for s in solves.values() {
                for (vol, area) in [
                    (s.volume_minus(slab), s.area_minus(slab)),
                    (s.volume_plus(slab), s.area_plus(slab)),
                ] {
                    match slab_profile.area_at(&vol) {
                        Some(best) if *best == area => {}
                        Some(best) => {
                            ok = false;
                            details = format!(
                                "optimum at H = {} has area {} but the profile gives {}",
                                format_rational(&s.h),
                                format_rational(&area),
                                format_rational(best)
                            );
                        }
                        None => {
                            ok = false;
                            details =
                                format!("volume {} missing from profile", format_rational(&vol));
                        }
                    }
                }
            }
            if ok {
                details = format!("{} solves against the slab profile", solves.len());
            }
            push(&mut checks, "minimizing-isoperimetric", pass_fail(ok), details);
        } else {
            push(
                &mut checks,
                "minimizing-isoperimetric",
                CheckStatus::Skipped,
                "slab too large for the exhaustive profile".into(),
            );
        }

        // Thickness budget.
        let thickness = spectrum.thickness();
        let budget = slab.total_volume().clone();
        push(
            &mut checks,
            "thickness-budget",
            pass_fail(thickness <= budget),
            format!(
                "jump total {} within slab volume {}",
                format_rational(&thickness),
                format_rational(&budget)
            ),
        );

        // Boundary hugging at the interval ends, recorded not judged.
        let ends = [&spectrum.domain.0, &spectrum.domain.1];
        let mut hugs = Vec::new();
        for h in ends {
            let s = &solves[h];
            if s.hugs.source_hug {
                hugs.push(format!("source hug at H = {}", format_rational(h)));
            }
            if s.hugs.barrier_hug {
                hugs.push(format!("barrier hug at H = {}", format_rational(h)));
            }
        }
        push(
            &mut checks,
            "barrier-hugs",
            CheckStatus::Diagnostic,
            if hugs.is_empty() {
                "optima stay interior at the sweep ends".into()
            } else {
                hugs.join("; ")
            },
        );
    } else {
        for name in ["nesting", "volume-monotone", "minimizing-isoperimetric", "thickness-budget"] {
            push(&mut checks, name, CheckStatus::Skipped, "no sweep".into());
        }
    }

    match &sweepout {
        Some(w) => {
            push(
                &mut checks,
                "width-floor",
                pass_fail(w.width >= w.size_floor),
                format!(
                    "width {} vs size floor {}",
                    format_rational(&w.width),
                    format_rational(&w.size_floor)
                ),
            );
            if let Some(g) = &girth {
                push(
                    &mut checks,
                    "width-curvature-bound",
                    CheckStatus::Diagnostic,
                    format!(
                        "width bound {} vs profile bound {} ({})",
                        format_rational(&w.width_curvature_bound),
                        format_rational(&g.curvature_bound),
                        if w.width_curvature_bound >= g.curvature_bound {
                            "width bound is at least the profile bound"
                        } else {
                            "width bound fell below the profile bound"
                        }
                    ),
                );
            }
        }
        None => push(&mut checks, "width-floor", CheckStatus::Skipped, "no width".into()),
    }

    let (sweep_side, spectrum) = match sweep {
        Some((_, spectrum, side)) => (Some(side), Some(spectrum)),
        None => (None, None),
    };
    Ok(ClassReport {
        surface_name: surface_name.to_string(),
        seed_cell: seed_cell.to_string(),
        minimizer,
        heuristic_minimizer: heuristic,
        sigma_area,
        total_volume,
        profile,
        girth,
        peak_curvature: peak,
        sweep_side,
        spectrum,
        sweepout,
        checks,
    })
}

// --- renderings ---

#[derive(Serialize)]
struct RatOut {
    exact: String,
    decimal: String,
}

fn rat_out(r: &Rational) -> RatOut {
    RatOut {
        exact: format_rational(r),
        decimal: decimal_string(r, 15),
    }
}

#[derive(Serialize)]
struct MinimizerOut {
    area: RatOut,
    faces: Vec<String>,
    witness_cells: Vec<String>,
    method: String,
    certified: bool,
}

#[derive(Serialize)]
struct GirthOut {
    girth: RatOut,
    argmax_volume: RatOut,
    curvature_bound: RatOut,
    witness_volume: RatOut,
    witness_slope: RatOut,
}

#[derive(Serialize)]
struct BreakpointOut {
    h: RatOut,
    vol_before: RatOut,
    vol_after: RatOut,
    area_before: RatOut,
    area_after: RatOut,
}

#[derive(Serialize)]
struct SpectrumOut {
    domain: [RatOut; 2],
    side: String,
    breakpoints: Vec<BreakpointOut>,
    thickness: RatOut,
}

#[derive(Serialize)]
struct WidthOut {
    width: RatOut,
    size_floor: RatOut,
    width_curvature_bound: RatOut,
    ordering: Vec<String>,
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    status: String,
    details: String,
}

#[derive(Serialize)]
struct ReportDoc {
    format: &'static str,
    surface: String,
    seed_cell: String,
    total_volume: RatOut,
    boundary_area: RatOut,
    heuristic_minimizer: bool,
    minimizer: MinimizerOut,
    profile_points: Option<usize>,
    girth: Option<GirthOut>,
    peak_curvature: Option<RatOut>,
    spectrum: Option<SpectrumOut>,
    width: Option<WidthOut>,
    checks: Vec<CheckOut>,
}

/// Deterministic JSON rendering with exact rationals and 15 significant
/// decimal digits side by side.
pub fn report_json(m: &WeightedComplex, report: &ClassReport) -> String {
    let doc = ReportDoc {
        format: "homcmc-report/1",
        surface: report.surface_name.clone(),
        seed_cell: report.seed_cell.clone(),
        total_volume: rat_out(&report.total_volume),
        boundary_area: rat_out(&report.sigma_area),
        heuristic_minimizer: report.heuristic_minimizer,
        minimizer: MinimizerOut {
            area: rat_out(&report.minimizer.area),
            faces: m.face_ids(&report.minimizer.surface),
            witness_cells: m.cell_ids(&report.minimizer.witness),
            method: match report.minimizer.method {
                crate::minsurf::MinimizeMethod::ExactEnumeration => "exact-enumeration".into(),
                crate::minsurf::MinimizeMethod::LocalSearch => "local-search".into(),
            },
            certified: report.minimizer.certified,
        },
        profile_points: report.profile.as_ref().map(|p| p.len()),
        girth: report.girth.as_ref().map(|g| GirthOut {
            girth: rat_out(&g.girth),
            argmax_volume: rat_out(&g.argmax_volume),
            curvature_bound: rat_out(&g.curvature_bound),
            witness_volume: rat_out(&g.witness_volume),
            witness_slope: rat_out(&g.witness_slope),
        }),
        peak_curvature: report.peak_curvature.as_ref().map(rat_out),
        spectrum: report.spectrum.as_ref().map(|sp| SpectrumOut {
            domain: [rat_out(&sp.domain.0), rat_out(&sp.domain.1)],
            side: match report.sweep_side {
                Some(SweepSide::FromSink) => "from-sink".into(),
                _ => "from-source".into(),
            },
            breakpoints: sp
                .breakpoints
                .iter()
                .map(|b| BreakpointOut {
                    h: rat_out(&b.h),
                    vol_before: rat_out(&b.vol_before),
                    vol_after: rat_out(&b.vol_after),
                    area_before: rat_out(&b.area_before),
                    area_after: rat_out(&b.area_after),
                })
                .collect(),
            thickness: rat_out(&sp.thickness()),
        }),
        width: report.sweepout.as_ref().map(|w| WidthOut {
            width: rat_out(&w.width),
            size_floor: rat_out(&w.size_floor),
            width_curvature_bound: rat_out(&w.width_curvature_bound),
            ordering: w.ordering.clone(),
        }),
        checks: report
            .checks
            .iter()
            .map(|c| CheckOut {
                name: c.name.clone(),
                status: match c.status {
                    CheckStatus::Pass => "pass".into(),
                    CheckStatus::Fail => "fail".into(),
                    CheckStatus::Diagnostic => "diagnostic".into(),
                    CheckStatus::Skipped => "skipped".into(),
                },
                details: c.details.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

/// CSV rendering of a profile: K,area,left_slope,right_slope,on_envelope,witness.
/// Rationals as p/q, witness as semicolon-joined cell ids.
pub fn profile_csv(profile: &Profile) -> String {
    let mut out = String::from("K,area,left_slope,right_slope,on_envelope,witness\n");
    for i in 0..profile.len() {
        let p = profile.point(i);
        let slope = |s: Option<Rational>| s.map(|r| format_rational(&r)).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_rational(&p.volume),
            format_rational(&p.area),
            slope(profile.left_slope(i)),
            slope(profile.right_slope(i)),
            p.on_envelope,
            profile.witness_cell_ids(i).join(";"),
        ));
    }
    out
}

/// CSV rendering of a spectrum: H_star,vol_before,vol_after,area_before,area_after.
pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut out = String::from("H_star,vol_before,vol_after,area_before,area_after\n");
    for b in &spectrum.breakpoints {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_rational(&b.h),
            format_rational(&b.vol_before),
            format_rational(&b.vol_after),
            format_rational(&b.area_before),
            format_rational(&b.area_after),
        ));
    }
    out
}

/// Pick the barrier region for an explicitly named barrier surface: of
/// the two homology witnesses, prefer the side that contains the most
/// SOURCE-arc cells, then the fewest SINK-arc cells, then the
/// lexicographically smaller cell set.
pub fn barrier_region_for_surface(
    m: &WeightedComplex,
    cut: &CutComplex,
    barrier_chain: &crate::complex::SurfaceChain,
) -> Result<Region> {
    let sigma = cut.cut_surface().ok_or(Error::BarrierNotProper)?;
    let witness = m
        .homology_witness(sigma, barrier_chain)
        .ok_or_else(|| Error::TerminalsNotSeparated("barrier is not homologous to the cut surface".into()))?;
    let complement = m.complement(&witness);
    let mut plus_cells = Vec::new();
    let mut minus_cells = Vec::new();
    for s in cut.side_assignment() {
        plus_cells.push(s.plus);
        minus_cells.push(s.minus);
    }
    let score = |r: &Region| {
        let plus_in = plus_cells.iter().filter(|c| r.contains(**c)).count();
        let minus_in = minus_cells.iter().filter(|c| r.contains(**c)).count();
        (plus_in, minus_cells.len() - minus_in)
    };
    let (sw, sc) = (score(&witness), score(&complement));
    let region = if sw > sc {
        witness
    } else if sc > sw {
        complement
    } else if m.compare_regions(&witness, &complement) == std::cmp::Ordering::Less {
        witness
    } else {
        complement
    };
    Ok(region)
}
