//! Parametric minimization of the offset area functional and its
//! breakpoint structure.
//!
//! For a signed parameter H the functional cut(R) - 2H*vol(R) is
//! minimized exactly as a terminal min-cut with per-cell capacity
//! boosts: positive H adds 2H*vol(c) to the SOURCE side of every cell
//! (penalizing exclusion), negative H adds 2|H|*vol(c) to the SINK side,
//! and the reported value is corrected by the constant offset so it
//! equals the stated objective. Extremal optima come from the min-cut
//! lattice; since every volume is strictly positive they nest strictly
//! across parameters, which drives both the monotone volume function and
//! the recursive envelope search for breakpoints.

use num_traits::{Signed, Zero};

use crate::complex::Region;
use crate::cut::CutComplex;
use crate::error::{Error, Result};
use crate::flow::mincut_with_bonus;
use crate::rational::{format_rational, Rational};

/// An exact solve at one parameter value. `region_minus` and
/// `region_plus` are the smallest and largest optimal regions; both
/// achieve `value`.
#[derive(Debug, Clone)]
pub struct HSolve {
    pub h: Rational,
    pub value: Rational,
    pub region_minus: Region,
    pub region_plus: Region,
    pub hugs: HugFlags,
}

/// Boundary-coincidence flags for the extremal optima. The smooth
/// maximum principle has no discrete counterpart; instead the solve
/// reports when an optimum lies on the SOURCE boundary or on the far
/// boundary (the barrier, in a restricted slab).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HugFlags {
    pub source_hug: bool,
    pub sink_hug: bool,
    pub barrier_hug: bool,
}

impl HSolve {
    pub fn volume_minus(&self, cut: &CutComplex) -> Rational {
        cut.volume(&self.region_minus)
    }
    pub fn volume_plus(&self, cut: &CutComplex) -> Rational {
        cut.volume(&self.region_plus)
    }
    /// Cut value (area) of the minimal optimum: value + 2H*vol.
    pub fn area_minus(&self, cut: &CutComplex) -> Rational {
        self.value.clone()
            + Rational::from_integer(2.into()) * self.h.clone() * self.volume_minus(cut)
    }
    pub fn area_plus(&self, cut: &CutComplex) -> Rational {
        self.value.clone()
            + Rational::from_integer(2.into()) * self.h.clone() * self.volume_plus(cut)
    }
}

/// One parameter value where the optimal region jumps, with the volumes
/// and areas of the extremal optima on each side.
#[derive(Debug, Clone)]
pub struct Breakpoint {
    pub h: Rational,
    pub vol_before: Rational,
    pub vol_after: Rational,
    pub area_before: Rational,
    pub area_after: Rational,
}

/// The breakpoint structure of a swept interval. Between breakpoints the
/// optimal (volume, area) pair is constant; volumes are nondecreasing in
/// H and jump exactly at the breakpoints.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub domain: (Rational, Rational),
    pub breakpoints: Vec<Breakpoint>,
    /// Optimal volume on the first segment (before any breakpoint).
    pub initial_volume: Rational,
}

/// A volume query against the spectrum: single on a segment, a pair at a
/// breakpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VolumeAt {
    Single(Rational),
    Jump(Rational, Rational),
}

/// Minimize cut(R) - 2H*vol(R) exactly.
pub fn solve_offset(cut: &CutComplex, h: &Rational) -> HSolve {
    let n = cut.cell_count();
    let two_h = Rational::from_integer(2.into()) * h.clone();
    let result = if h.is_zero() {
        mincut_with_bonus(cut, None, None)
    } else if h.is_positive() {
        let bonus: Vec<Rational> = (0..n)
            .map(|c| two_h.clone() * cut.cell(c).volume.clone())
            .collect();
        mincut_with_bonus(cut, Some(&bonus), None)
    } else {
        let bonus: Vec<Rational> = (0..n)
            .map(|c| -two_h.clone() * cut.cell(c).volume.clone())
            .collect();
        mincut_with_bonus(cut, None, Some(&bonus))
    };
    // For H > 0 the network pays 2H*vol(c) for every excluded cell, an
    // offset of 2H * total volume above the objective.
    let value = if h.is_positive() {
        result.value - two_h * cut.total_volume().clone()
    } else {
        result.value
    };
    let hugs = HugFlags {
        source_hug: result.min_region.is_empty(),
        sink_hug: result.max_region.len() == n,
        barrier_hug: cut.is_slab() && result.max_region.len() == n,
    };
    HSolve {
        h: h.clone(),
        value,
        region_minus: result.min_region,
        region_plus: result.max_region,
        hugs,
    }
}

/// (volume, area) of the optimum a solve exposes on one side; the line
/// area - 2H*vol supports the value envelope there.
fn line_minus(cut: &CutComplex, s: &HSolve) -> (Rational, Rational) {
    (s.volume_minus(cut), s.area_minus(cut))
}

fn line_plus(cut: &CutComplex, s: &HSolve) -> (Rational, Rational) {
    (s.volume_plus(cut), s.area_plus(cut))
}

fn breakpoint_at(cut: &CutComplex, s: &HSolve) -> Option<Breakpoint> {
    let (vb, ab) = line_minus(cut, s);
    let (va, aa) = line_plus(cut, s);
    (vb != va).then_some(Breakpoint {
        h: s.h.clone(),
        vol_before: vb,
        vol_after: va,
        area_before: ab,
        area_after: aa,
    })
}

fn search(
    cut: &CutComplex,
    lo: &Rational,
    left: (Rational, Rational),
    hi: &Rational,
    right: (Rational, Rational),
) -> Vec<Breakpoint> {
    // left/right are the (vol, area) lines supporting the envelope just
    // right of lo and just left of hi. Equal lines mean no interior
    // breakpoint.
    if left == right {
        return Vec::new();
    }
    let (v1, a1) = left;
    let (v2, a2) = right;
    debug_assert!(v2 > v1);
    let h = (a2.clone() - a1.clone())
        / (Rational::from_integer(2.into()) * (v2.clone() - v1.clone()));
    debug_assert!(&h > lo && &h < hi);
    let mid = solve_offset(cut, &h);
    let (left_results, right_results) = rayon::join(
        || search(cut, lo, (v1.clone(), a1.clone()), &h, line_minus(cut, &mid)),
        || search(cut, &h, line_plus(cut, &mid), hi, (v2.clone(), a2.clone())),
    );
    let mut out = left_results;
    out.extend(breakpoint_at(cut, &mid));
    out.extend(right_results);
    out
}

/// Exact recursive envelope search over [lo, hi]. Breakpoints at the
/// interval ends are reported when the extremal optima there disagree.
pub fn breakpoints(cut: &CutComplex, lo: &Rational, hi: &Rational) -> Result<Spectrum> {
    if lo >= hi {
        return Err(Error::EmptySweepRange(format!(
            "[{}, {}]",
            format_rational(lo),
            format_rational(hi)
        )));
    }
    let first = solve_offset(cut, lo);
    let last = solve_offset(cut, hi);
    let mut bps = Vec::new();
    bps.extend(breakpoint_at(cut, &first));
    bps.extend(search(
        cut,
        lo,
        line_plus(cut, &first),
        hi,
        line_minus(cut, &last),
    ));
    bps.extend(breakpoint_at(cut, &last));
    Ok(Spectrum {
        domain: (lo.clone(), hi.clone()),
        initial_volume: first.volume_minus(cut),
        breakpoints: bps,
    })
}

impl Spectrum {
    /// Optimal volume at a swept parameter; a pair at breakpoints.
    pub fn volume_at(&self, h: &Rational) -> Result<VolumeAt> {
        if h < &self.domain.0 || h > &self.domain.1 {
            return Err(Error::OutOfDomain(format_rational(h)));
        }
        let mut current = self.initial_volume.clone();
        for bp in &self.breakpoints {
            if h == &bp.h {
                return Ok(VolumeAt::Jump(bp.vol_before.clone(), bp.vol_after.clone()));
            }
            if h < &bp.h {
                break;
            }
            current = bp.vol_after.clone();
        }
        Ok(VolumeAt::Single(current))
    }

    /// Sum of breakpoint volume jumps; bounded by the total volume of
    /// the swept complex.
    pub fn thickness(&self) -> Rational {
        self.breakpoints
            .iter()
            .map(|b| b.vol_after.clone() - b.vol_before.clone())
            .fold(Rational::from_integer(0.into()), |a, b| a + b)
    }
}
