//! Exact computational machinery for surfaces in homology classes of
//! weighted cellulations of closed 3-manifolds: area-minimizing
//! representatives, cut manifolds as terminal networks, isoperimetric
//! profiles, parametric spectra of the offset area functional, and
//! sweepout width — all over exact rational arithmetic.

pub mod complex;
pub mod cut;
pub mod error;
pub mod flow;
pub mod generate;
pub mod gf2;
pub mod minsurf;
pub mod profile;
pub mod rational;
pub mod report;
pub mod spectrum;
pub mod width;

mod scan;

pub use complex::{Region, ResolvedSurface, SurfaceChain, WeightedComplex};
pub use cut::{build_cut, make_slab, path_slab, Barrier, CutComplex, SlabArc, SlabSpec};
pub use error::{Error, Result};
pub use flow::{mincut, mincut_with_bonus, CutResult};
pub use minsurf::{
    certify_minimal_in_cut, minimize_exact, minimize_local, MinimizeMethod, MinimizerResult,
    DEFAULT_ENUM_CAP,
};
pub use profile::{
    girth_and_bound, peak_curvature, profile_exact, GirthReport, Profile, ProfilePoint,
    DEFAULT_PROFILE_CAP,
};
pub use rational::{decimal_string, format_rational, parse_rational, Rational};
pub use report::{
    full_report, profile_csv, report_json, spectrum_csv, Check, CheckStatus, ClassReport,
    ReportOptions, SweepSide,
};
pub use spectrum::{breakpoints, solve_offset, Breakpoint, HSolve, HugFlags, Spectrum, VolumeAt};
pub use width::{size_floor, width_dp, SweepoutResult, DEFAULT_WIDTH_CAP};
