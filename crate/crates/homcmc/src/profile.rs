//! The exact isoperimetric profile of a cut complex.
//!
//! For each achievable region volume K the profile records the minimum
//! cut value over regions of that exact volume, together with one
//! witness region (ties to the lexicographically smallest cell-id set).
//! Volumes are grouped by exact rational equality; there is no
//! interpolation and no point between achieved volumes. One-sided slopes
//! are finite differences of consecutive points, and a point is on the
//! envelope when it lies on the lower convex hull of the point set —
//! exactly the points some multiplier H exposes as an unconstrained
//! optimum of cut - 2H*vol.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::complex::Region;
use crate::cut::CutComplex;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scan::{
    choose_scales, compare_masks_by_rank, gray_scan, scan_chunks, unscale, NetScan, ScanInt,
};

pub const DEFAULT_PROFILE_CAP: usize = 22;

#[derive(Debug, Clone)]
pub struct ProfilePoint {
    pub volume: Rational,
    pub area: Rational,
    witness_mask: u64,
    pub on_envelope: bool,
}

/// The profile: points ordered by strictly increasing volume from 0 to
/// the total volume. In class mode the first and last areas both equal
/// the cut-surface area and no point lies below it.
#[derive(Debug, Clone)]
pub struct Profile {
    points: Vec<ProfilePoint>,
    total_volume: Rational,
    sigma_area: Rational,
    cell_ids: Vec<String>,
}

/// The profile peak, the curvature lower bound it certifies, and an
/// interior mean-value witness achieving that bound through one of its
/// one-sided slopes.
#[derive(Debug, Clone)]
pub struct GirthReport {
    pub girth: Rational,
    pub argmax_volume: Rational,
    /// (girth - boundary area) / total volume.
    pub curvature_bound: Rational,
    pub witness_volume: Rational,
    pub witness_slope: Rational,
    pub witness_index: usize,
}

struct VolEntry<T> {
    cut: T,
    mask: u64,
}

fn scan_profile<T: ScanInt>(
    cut: &CutComplex,
    net: &NetScan<T>,
) -> BTreeMap<T, VolEntry<T>> {
    let n = net.n;
    let rank_of_bit: Vec<usize> = (0..n).map(|c| cut.cell_rank(c)).collect();
    let update = |map: &mut BTreeMap<T, VolEntry<T>>, mask: u64, vol: &T, value: &T| {
        match map.get_mut(vol) {
            None => {
                map.insert(
                    vol.clone(),
                    VolEntry {
                        cut: value.clone(),
                        mask,
                    },
                );
            }
            Some(entry) => {
                let replace = match value.cmp(&entry.cut) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => {
                        compare_masks_by_rank(mask, entry.mask, &rank_of_bit)
                            == std::cmp::Ordering::Less
                    }
                };
                if replace {
                    entry.cut = value.clone();
                    entry.mask = mask;
                }
            }
        }
    };

    let (low, prefixes) = scan_chunks(n);
    let chunk_map = |prefix: u64| {
        let mut map: BTreeMap<T, VolEntry<T>> = BTreeMap::new();
        gray_scan(net, prefix, low, |mask, vol, value| {
            update(&mut map, mask, vol, value);
        });
        map
    };
    let maps: Vec<BTreeMap<T, VolEntry<T>>> = if prefixes.len() > 1 {
        prefixes.par_iter().map(|&p| chunk_map(p)).collect()
    } else {
        prefixes.iter().map(|&p| chunk_map(p)).collect()
    };
    maps.into_iter()
        .reduce(|mut acc, map| {
            for (vol, entry) in map {
                update(&mut acc, entry.mask, &vol, &entry.cut);
            }
            acc
        })
        .expect("at least one chunk")
}

/// Lower-hull membership flags for points sorted by volume: true when
/// the point lies on the hull polyline, including interiors of hull
/// edges.
fn envelope_flags(points: &[(BigInt, BigInt)]) -> Vec<bool> {
    // Monotone chain over exact integers; strictly convex turns only.
    let cross = |o: &(BigInt, BigInt), a: &(BigInt, BigInt), b: &(BigInt, BigInt)| -> BigInt {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..points.len() {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            if cross(&points[o], &points[a], &points[i]) <= BigInt::from(0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut flags = vec![false; points.len()];
    let mut h = 0usize;
    for (i, p) in points.iter().enumerate() {
        while h + 1 < hull.len() && points[hull[h + 1]].0 <= p.0 {
            h += 1;
        }
        if hull[h] == i {
            flags[i] = true;
            continue;
        }
        if h + 1 < hull.len() {
            let a = &points[hull[h]];
            let b = &points[hull[h + 1]];
            // On the segment iff collinear (volumes already bracket p).
            flags[i] = (&p.0 - &a.0) * (&b.1 - &a.1) == (&p.1 - &a.1) * (&b.0 - &a.0);
        }
    }
    flags
}

fn build_profile<T: ScanInt>(cut: &CutComplex, net: &NetScan<T>) -> Profile {
    let map = scan_profile(cut, net);
    let scaled: Vec<(BigInt, BigInt)> = map
        .iter()
        .map(|(vol, e)| (vol.to_big(), e.cut.to_big()))
        .collect();
    let flags = envelope_flags(&scaled);
    let points: Vec<ProfilePoint> = map
        .into_iter()
        .zip(flags)
        .map(|((vol, entry), on_envelope)| ProfilePoint {
            volume: unscale(&vol.to_big(), &net.vol_scale),
            area: unscale(&entry.cut.to_big(), &net.cap_scale),
            witness_mask: entry.mask,
            on_envelope,
        })
        .collect();
    let sigma_area = points.first().expect("empty region always present").area.clone();
    Profile {
        total_volume: cut.total_volume().clone(),
        sigma_area,
        cell_ids: (0..cut.cell_count())
            .map(|c| cut.cell_id(c).to_string())
            .collect(),
        points,
    }
}

/// Exhaustive exact profile; `cap` bounds the cell count.
pub fn profile_exact(cut: &CutComplex, cap: usize) -> Result<Profile> {
    let n = cut.cell_count();
    if n > cap || n > 62 {
        return Err(Error::CapExceeded {
            cells: n,
            cap: cap.min(62),
        });
    }
    let (vol_scale, cap_scale, fast) = choose_scales(cut);
    if fast {
        let net: NetScan<i128> = NetScan::build(cut, vol_scale, cap_scale);
        Ok(build_profile(cut, &net))
    } else {
        let net: NetScan<BigInt> = NetScan::build(cut, vol_scale, cap_scale);
        Ok(build_profile(cut, &net))
    }
}

impl Profile {
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn point(&self, i: usize) -> &ProfilePoint {
        &self.points[i]
    }
    pub fn points(&self) -> &[ProfilePoint] {
        &self.points
    }
    pub fn total_volume(&self) -> &Rational {
        &self.total_volume
    }
    /// Area of the SOURCE boundary (the first profile point).
    pub fn sigma_area(&self) -> &Rational {
        &self.sigma_area
    }

    pub fn witness_region(&self, i: usize) -> Region {
        let mask = self.points[i].witness_mask;
        Region::from_indices((0..self.cell_ids.len()).filter(|&c| mask >> c & 1 == 1))
    }

    pub fn witness_cell_ids(&self, i: usize) -> Vec<String> {
        let mut ids: Vec<&str> = self
            .witness_region(i)
            .iter()
            .map(|c| self.cell_ids[c].as_str())
            .collect();
        ids.sort_unstable();
        ids.into_iter().map(String::from).collect()
    }

    pub fn left_slope(&self, i: usize) -> Option<Rational> {
        (i > 0).then(|| {
            let a = &self.points[i - 1];
            let b = &self.points[i];
            (b.area.clone() - a.area.clone()) / (b.volume.clone() - a.volume.clone())
        })
    }

    pub fn right_slope(&self, i: usize) -> Option<Rational> {
        (i + 1 < self.points.len()).then(|| {
            let a = &self.points[i];
            let b = &self.points[i + 1];
            (b.area.clone() - a.area.clone()) / (b.volume.clone() - a.volume.clone())
        })
    }

    pub fn index_of_volume(&self, volume: &Rational) -> Option<usize> {
        self.points
            .binary_search_by(|p| p.volume.cmp(volume))
            .ok()
    }

    /// Minimum area at an exact achieved volume.
    pub fn area_at(&self, volume: &Rational) -> Option<&Rational> {
        self.index_of_volume(volume).map(|i| &self.points[i].area)
    }

    /// One-sided mean curvatures (slope/2) at an achieved volume;
    /// endpoints have a single defined side.
    pub fn curvatures_at(&self, volume: &Rational) -> Result<(Option<Rational>, Option<Rational>)> {
        let i = self
            .index_of_volume(volume)
            .ok_or_else(|| Error::VolumeNotAchieved(crate::rational::format_rational(volume)))?;
        let half = |s: Rational| s / Rational::from_integer(2.into());
        Ok((
            self.left_slope(i).map(half),
            self.right_slope(i).map(half),
        ))
    }

    /// Indices split into envelope points (reachable as unconstrained
    /// optima of cut - 2H*vol for some H) and constrained-only points.
    pub fn envelope_partition(&self) -> (Vec<usize>, Vec<usize>) {
        let mut on = Vec::new();
        let mut off = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            if p.on_envelope {
                on.push(i);
            } else {
                off.push(i);
            }
        }
        (on, off)
    }
}

/// Girth, the curvature bound it certifies, and the interior mean-value
/// witness. Requires a closed-class profile: equal endpoint areas and at
/// least one interior point.
pub fn girth_and_bound(profile: &Profile) -> Result<GirthReport> {
    let pts = profile.points();
    if pts.len() < 3 {
        return Err(Error::ProfileTooSmall(3));
    }
    if pts.first().unwrap().area != pts.last().unwrap().area {
        return Err(Error::NotClassProfile);
    }
    let sigma = profile.sigma_area().clone();
    let (girth, argmax_idx) = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.area.clone(), i))
        .fold(None::<(Rational, usize)>, |best, (a, i)| match best {
            None => Some((a, i)),
            Some((ba, bi)) => {
                if a > ba {
                    Some((a, i))
                } else {
                    Some((ba, bi))
                }
            }
        })
        .expect("nonempty profile");
    let bound = (girth.clone() - sigma) / profile.total_volume().clone();
    let two_bound = Rational::from_integer(2.into()) * &bound;

    // First interior point carrying a one-sided slope of magnitude at
    // least twice the bound; the telescoping argument over the steeper
    // side of the peak guarantees one exists.
    for i in 1..pts.len() - 1 {
        let left = profile.left_slope(i).expect("interior point");
        let right = profile.right_slope(i).expect("interior point");
        let pick = if left.clone().abs() >= right.clone().abs() {
            left.clone()
        } else {
            right.clone()
        };
        if pick.clone().abs() >= two_bound {
            return Ok(GirthReport {
                girth,
                argmax_volume: pts[argmax_idx].volume.clone(),
                curvature_bound: bound,
                witness_volume: pts[i].volume.clone(),
                witness_slope: pick,
                witness_index: i,
            });
        }
    }
    unreachable!("mean-value witness exists for every closed-class profile")
}

/// Largest mean curvature carried by any profile slope: max |slope| / 2
/// over consecutive points.
pub fn peak_curvature(profile: &Profile) -> Result<Rational> {
    if profile.len() < 2 {
        return Err(Error::ProfileTooSmall(2));
    }
    let mut best = Rational::from_integer(0.into());
    for i in 1..profile.len() {
        let s = profile.left_slope(i).unwrap().abs();
        if s > best {
            best = s;
        }
    }
    Ok(best / Rational::from_integer(2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::WeightedComplex;
    use crate::cut::{build_cut, path_slab};
    use crate::rational::{rat, rat_int};

    fn bump1_cut() -> CutComplex {
        let m = WeightedComplex::from_json_str(
            r#"{
                "format": "homcmc-complex/1",
                "cells": [{"id": "c1", "volume": "1"}, {"id": "c2", "volume": "1"}],
                "faces": [
                    {"id": "f0", "area": "1", "cells": ["c1", "c2"]},
                    {"id": "f12", "area": "3", "cells": ["c1", "c2"]}
                ],
                "surfaces": {"S": ["f0"]}
            }"#,
        )
        .unwrap();
        build_cut(&m, m.surface("S").unwrap(), "c1").unwrap()
    }

    fn product_ring_cut(area: i64, vol: i64) -> CutComplex {
        let text = format!(
            r#"{{
                "format": "homcmc-complex/1",
                "cells": [
                    {{"id": "c1", "volume": "{vol}"}},
                    {{"id": "c2", "volume": "{vol}"}},
                    {{"id": "c3", "volume": "{vol}"}}
                ],
                "faces": [
                    {{"id": "f12", "area": "{area}", "cells": ["c1", "c2"]}},
                    {{"id": "f23", "area": "{area}", "cells": ["c2", "c3"]}},
                    {{"id": "f31", "area": "{area}", "cells": ["c3", "c1"]}}
                ],
                "surfaces": {{"S": ["f12"]}}
            }}"#
        );
        let m = WeightedComplex::from_json_str(&text).unwrap();
        build_cut(&m, m.surface("S").unwrap(), "c2").unwrap()
    }

    #[test]
    fn bump1_profile_points() {
        let p = profile_exact(&bump1_cut(), DEFAULT_PROFILE_CAP).unwrap();
        let got: Vec<(Rational, Rational)> = p
            .points()
            .iter()
            .map(|q| (q.volume.clone(), q.area.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (rat_int(0), rat_int(1)),
                (rat_int(1), rat_int(3)),
                (rat_int(2), rat_int(1)),
            ]
        );
        assert_eq!(p.left_slope(1), Some(rat_int(2)));
        assert_eq!(p.right_slope(1), Some(rat_int(-2)));
        assert_eq!(p.witness_cell_ids(1), vec!["c1"]);
    }

    #[test]
    fn product_ring_flat() {
        let p = profile_exact(&product_ring_cut(2, 1), DEFAULT_PROFILE_CAP).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.points().iter().all(|q| q.area == rat_int(2)));
    }

    #[test]
    fn single_cell_slab_profile() {
        let slab = path_slab(&[rat_int(1), rat_int(1)], &[rat(3, 2)]).unwrap();
        let p = profile_exact(&slab, DEFAULT_PROFILE_CAP).unwrap();
        let got: Vec<(Rational, Rational)> = p
            .points()
            .iter()
            .map(|q| (q.volume.clone(), q.area.clone()))
            .collect();
        assert_eq!(got, vec![(rat_int(0), rat_int(1)), (rat(3, 2), rat_int(1))]);
    }

    #[test]
    fn bump1_girth_and_witness() {
        let p = profile_exact(&bump1_cut(), DEFAULT_PROFILE_CAP).unwrap();
        let g = girth_and_bound(&p).unwrap();
        assert_eq!(g.girth, rat_int(3));
        assert_eq!(g.curvature_bound, rat_int(1));
        assert_eq!(g.witness_volume, rat_int(1));
        assert_eq!(g.witness_slope, rat_int(2));
        assert_eq!(peak_curvature(&p).unwrap(), rat_int(1));
    }

    #[test]
    fn flat_profiles_have_zero_bound() {
        let p = profile_exact(&product_ring_cut(2, 1), DEFAULT_PROFILE_CAP).unwrap();
        let g = girth_and_bound(&p).unwrap();
        assert_eq!(g.girth, rat_int(2));
        assert_eq!(g.curvature_bound, rat_int(0));
        assert_eq!(g.witness_slope, rat_int(0));
        assert_eq!(peak_curvature(&p).unwrap(), rat_int(0));

        // Symmetric two-cell slab: girth 1, bound 0.
        let slab = path_slab(
            &[rat_int(1), rat_int(1), rat_int(1)],
            &[rat_int(1), rat_int(1)],
        )
        .unwrap();
        let p = profile_exact(&slab, DEFAULT_PROFILE_CAP).unwrap();
        let g = girth_and_bound(&p).unwrap();
        assert_eq!(g.girth, rat_int(1));
        assert_eq!(g.curvature_bound, rat_int(0));

        // A single-cell slab has two equal points: peak curvature zero,
        // but no interior mean-value point.
        let single = path_slab(&[rat_int(1), rat_int(1)], &[rat_int(1)]).unwrap();
        let p = profile_exact(&single, DEFAULT_PROFILE_CAP).unwrap();
        assert_eq!(peak_curvature(&p).unwrap(), rat_int(0));
        assert!(matches!(girth_and_bound(&p), Err(Error::ProfileTooSmall(3))));
    }

    #[test]
    fn curvature_pairs() {
        let p = profile_exact(&bump1_cut(), DEFAULT_PROFILE_CAP).unwrap();
        assert_eq!(
            p.curvatures_at(&rat_int(1)).unwrap(),
            (Some(rat_int(1)), Some(rat_int(-1)))
        );
        assert_eq!(
            p.curvatures_at(&rat_int(0)).unwrap(),
            (None, Some(rat_int(1)))
        );
        assert!(p.curvatures_at(&rat(1, 2)).is_err());

        // Flat interior points carry curvature zero on both sides.
        let flat = profile_exact(&product_ring_cut(2, 1), DEFAULT_PROFILE_CAP).unwrap();
        assert_eq!(
            flat.curvatures_at(&rat_int(1)).unwrap(),
            (Some(rat_int(0)), Some(rat_int(0)))
        );
    }

    #[test]
    fn envelope_classification() {
        // The peak of the bump is constrained-only.
        let p = profile_exact(&bump1_cut(), DEFAULT_PROFILE_CAP).unwrap();
        let (on, off) = p.envelope_partition();
        assert_eq!(on, vec![0, 2]);
        assert_eq!(off, vec![1]);

        // Flat profiles put everything on the envelope.
        let p = profile_exact(&product_ring_cut(2, 1), DEFAULT_PROFILE_CAP).unwrap();
        let (on, off) = p.envelope_partition();
        assert_eq!(on.len(), 4);
        assert!(off.is_empty());

        // Path slab 1-2-4: all three points on the hull.
        let slab = path_slab(
            &[rat_int(1), rat_int(2), rat_int(4)],
            &[rat_int(1), rat_int(1)],
        )
        .unwrap();
        let p = profile_exact(&slab, DEFAULT_PROFILE_CAP).unwrap();
        let (on, off) = p.envelope_partition();
        assert_eq!(on.len(), 3);
        assert!(off.is_empty());
    }

    #[test]
    fn profile_cap() {
        assert!(matches!(
            profile_exact(&bump1_cut(), 1),
            Err(Error::CapExceeded { .. })
        ));
    }
}
