//! Sweepout width by subset dynamic programming.
//!
//! A discrete sweepout grows a region one cell per step from empty to
//! full; its width is the largest prefix cut value along the way, and
//! the width of the complex is the minimum over all n! orderings. The
//! DP is W(X) = min over c in X of max(W(X \ c), cut(X)) with
//! W(empty) = cut(empty); one optimal ordering is recovered backwards
//! with ties to the smallest cell id. The floor max over sizes k of the
//! minimum cut among regions of size k holds for every ordering, since
//! every chain passes through every cardinality.

use num_bigint::BigInt;

use crate::cut::CutComplex;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scan::{choose_scales, unscale, NetScan, ScanInt};

pub const DEFAULT_WIDTH_CAP: usize = 20;

#[derive(Debug, Clone)]
pub struct SweepoutResult {
    pub width: Rational,
    /// One optimal ordering, as cell ids in insertion order.
    pub ordering: Vec<String>,
    /// max over sizes of the min cut value at that size.
    pub size_floor: Rational,
    /// (width - SOURCE boundary area) / total volume.
    pub width_curvature_bound: Rational,
}

/// Cut values of every mask via the low-bit recurrence.
fn cut_table<T: ScanInt>(net: &NetScan<T>) -> Vec<T> {
    let n = net.n;
    let mut table = Vec::with_capacity(1usize << n);
    table.push(net.cut_of_mask(0));
    for mask in 1u64..(1u64 << n) {
        let cell = mask.trailing_zeros() as usize;
        let prev = mask ^ (1 << cell);
        let mut value = table[prev as usize].clone();
        net.apply_toggle(cell, prev, &mut value);
        table.push(value);
    }
    table
}

fn sweep<T: ScanInt>(cut: &CutComplex, net: &NetScan<T>) -> SweepoutResult {
    let n = net.n;
    let cuts = cut_table(net);
    let full = (1u64 << n) - 1;

    // W over all masks, in increasing numeric order: every proper
    // submask of m is smaller than m, so dependencies are ready.
    let mut w: Vec<T> = Vec::with_capacity(1usize << n);
    w.push(cuts[0].clone());
    for mask in 1u64..=full {
        let mut best: Option<T> = None;
        let mut bits = mask;
        while bits != 0 {
            let cell = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = (mask ^ (1 << cell)) as usize;
            let cand = w[prev].clone().max(cuts[mask as usize].clone());
            best = Some(match best {
                None => cand,
                Some(b) => b.min(cand),
            });
        }
        w.push(best.expect("nonempty mask"));
    }

    // Backtrack one optimal ordering, ties to the smallest cell id.
    let mut ordering_rev = Vec::with_capacity(n);
    let mut mask = full;
    while mask != 0 {
        let target = &w[mask as usize];
        let mut pick: Option<usize> = None;
        let mut bits = mask;
        while bits != 0 {
            let cell = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let prev = (mask ^ (1 << cell)) as usize;
            let cand = w[prev].clone().max(cuts[mask as usize].clone());
            if &cand == target {
                pick = Some(match pick {
                    None => cell,
                    Some(p) => {
                        if cut.cell_rank(cell) < cut.cell_rank(p) {
                            cell
                        } else {
                            p
                        }
                    }
                });
            }
        }
        let cell = pick.expect("every optimal value is witnessed");
        ordering_rev.push(cell);
        mask ^= 1 << cell;
    }
    ordering_rev.reverse();

    // Size floor: max over cardinalities of the minimum cut at that size.
    let mut per_size: Vec<Option<T>> = vec![None; n + 1];
    for mask in 0u64..=full {
        let k = mask.count_ones() as usize;
        let v = &cuts[mask as usize];
        per_size[k] = Some(match per_size[k].take() {
            None => v.clone(),
            Some(b) => b.min(v.clone()),
        });
    }
    let size_floor_scaled = per_size
        .into_iter()
        .map(|o| o.expect("every size achieved"))
        .max()
        .expect("at least one size");

    let width = unscale(&w[full as usize].to_big(), &net.cap_scale);
    let size_floor = unscale(&size_floor_scaled.to_big(), &net.cap_scale);
    let source_area = cut.source_area();
    let width_curvature_bound =
        (width.clone() - source_area) / cut.total_volume().clone();
    SweepoutResult {
        width,
        ordering: ordering_rev
            .into_iter()
            .map(|c| cut.cell_id(c).to_string())
            .collect(),
        size_floor,
        width_curvature_bound,
    }
}

/// Optimal sweepout width over all orderings; exact subset DP.
pub fn width_dp(cut: &CutComplex, cap: usize) -> Result<SweepoutResult> {
    let n = cut.cell_count();
    if n > cap || n > 25 {
        return Err(Error::CapExceeded {
            cells: n,
            cap: cap.min(25),
        });
    }
    let (vol_scale, cap_scale, fast) = choose_scales(cut);
    if fast {
        let net: NetScan<i128> = NetScan::build(cut, vol_scale, cap_scale);
        Ok(sweep(cut, &net))
    } else {
        let net: NetScan<BigInt> = NetScan::build(cut, vol_scale, cap_scale);
        Ok(sweep(cut, &net))
    }
}

/// The cardinality floor alone (same table, no DP).
pub fn size_floor(cut: &CutComplex, cap: usize) -> Result<Rational> {
    Ok(width_dp(cut, cap)?.size_floor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::WeightedComplex;
    use crate::cut::{build_cut, path_slab};
    use crate::rational::rat_int;

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

    #[test]
    fn bump1_width() {
        let r = width_dp(&bump1_cut(), DEFAULT_WIDTH_CAP).unwrap();
        assert_eq!(r.width, rat_int(3));
        assert_eq!(r.ordering, vec!["c1", "c2"]);
        assert_eq!(r.size_floor, rat_int(3));
        assert_eq!(r.width_curvature_bound, rat_int(1));
    }

    #[test]
    fn single_cell_slab_width() {
        let slab = path_slab(&[rat_int(1), rat_int(1)], &[rat_int(1)]).unwrap();
        let r = width_dp(&slab, DEFAULT_WIDTH_CAP).unwrap();
        assert_eq!(r.width, rat_int(1));
        assert_eq!(r.size_floor, rat_int(1));
    }

    #[test]
    fn product_ring_width_is_boundary_area() {
        let m = WeightedComplex::from_json_str(
            r#"{
                "format": "homcmc-complex/1",
                "cells": [
                    {"id": "c1", "volume": "1"},
                    {"id": "c2", "volume": "1"},
                    {"id": "c3", "volume": "1"}
                ],
                "faces": [
                    {"id": "f12", "area": "2", "cells": ["c1", "c2"]},
                    {"id": "f23", "area": "2", "cells": ["c2", "c3"]},
                    {"id": "f31", "area": "2", "cells": ["c3", "c1"]}
                ],
                "surfaces": {"S": ["f12"]}
            }"#,
        )
        .unwrap();
        let cut = build_cut(&m, m.surface("S").unwrap(), "c2").unwrap();
        let r = width_dp(&cut, DEFAULT_WIDTH_CAP).unwrap();
        assert_eq!(r.width, rat_int(2));
        assert_eq!(r.size_floor, rat_int(2));
        assert_eq!(r.width_curvature_bound, rat_int(0));
    }

    #[test]
    fn dp_matches_permutations_small() {
        use crate::complex::Region;
        // Exhaustive minimax over orderings for a 4-cell slab.
        let slab = path_slab(
            &[rat_int(2), rat_int(7), rat_int(3), rat_int(5), rat_int(4)],
            &[rat_int(1), rat_int(1), rat_int(1), rat_int(1)],
        )
        .unwrap();
        let r = width_dp(&slab, DEFAULT_WIDTH_CAP).unwrap();

        let n = slab.cell_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Rational> = None;
        // Heap's algorithm, iterative.
        let mut c = vec![0usize; n];
        let eval = |p: &[usize], best: &mut Option<Rational>| {
            let mut region = Region::default();
            let mut worst = slab.cut_value(&region);
            for &cell in p {
                region.insert(cell);
                let v = slab.cut_value(&region);
                if v > worst {
                    worst = v;
                }
            }
            match best {
                None => *best = Some(worst),
                Some(b) => {
                    if worst < *b {
                        *best = Some(worst);
                    }
                }
            }
        };
        eval(&perm, &mut best);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                eval(&perm, &mut best);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        assert_eq!(r.width, best.unwrap());
    }

    #[test]
    fn width_cap() {
        assert!(matches!(
            width_dp(&bump1_cut(), 1),
            Err(Error::CapExceeded { .. })
        ));
    }
}
