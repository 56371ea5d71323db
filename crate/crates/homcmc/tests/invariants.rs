//! Cross-module invariants on randomized instances. Oracles here are
//! deliberately naive re-computations, independent of the library's
//! scaled scan and flow paths.

use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use homcmc::complex::{Region, SurfaceChain, WeightedComplex};
use homcmc::cut::{build_cut, make_slab, Barrier, CutComplex, EndPoint, SlabArc, SlabSpec};
use homcmc::profile::profile_exact;
use homcmc::rational::{rat, rat_int, Rational};
use homcmc::spectrum::{breakpoints, solve_offset};
use homcmc::{flow, generate, minsurf};

fn load(text: &str) -> WeightedComplex {
    WeightedComplex::from_json_str(text).unwrap()
}

fn random_complex(rng: &mut StdRng) -> WeightedComplex {
    let n = rng.gen_range(4..=10);
    let seed = rng.gen::<u64>();
    load(&generate::random(n, 3, 1, 20, seed).unwrap())
}

fn random_region(rng: &mut StdRng, n: usize) -> Region {
    Region::from_indices((0..n).filter(|_| rng.gen_bool(0.5)))
}

#[test]
fn boundary_symmetry_and_linearity() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..40 {
        let m = random_complex(&mut rng);
        let r1 = random_region(&mut rng, m.cell_count());
        let r2 = random_region(&mut rng, m.cell_count());
        assert_eq!(m.boundary(&r1), m.boundary(&m.complement(&r1)));
        assert_eq!(
            m.boundary(&r1.symmetric_difference(&r2)),
            m.boundary(&r1).symmetric_difference(&m.boundary(&r2))
        );
    }
}

#[test]
fn boundaries_are_null_homologous_with_valid_witness() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..40 {
        let m = random_complex(&mut rng);
        let r = random_region(&mut rng, m.cell_count());
        let b = m.boundary(&r);
        let w = m.bounding_region(&b).expect("a boundary is a boundary");
        assert_eq!(m.boundary(&w), b);
    }
}

#[test]
fn exact_minimum_bounds_local_search() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..15 {
        let m = random_complex(&mut rng);
        let s = m.surface(generate::SURFACE_NAME).unwrap().clone();
        let exact = minsurf::minimize_exact(&m, &s, 22).unwrap();
        let local = minsurf::minimize_local(&m, &s, rng.gen(), 4);
        assert!(exact.area <= local.area);
        assert!(m.homology_witness(&exact.surface, &s).is_some());
        if !exact.trivial_class() {
            assert!(minsurf::certify_minimal_in_cut(&m, &exact.surface).unwrap());
        }
    }
}

/// Naive cut value: interior crossings plus boundary copies counted once
/// per copy, straight off the arc list.
fn naive_cut_value(cut: &CutComplex, region: &Region) -> Rational {
    let mut total = Rational::zero();
    for arc in cut.arcs() {
        let side = |e: EndPoint| match e {
            EndPoint::Cell(i) => region.contains(i),
            EndPoint::Source => true,
            EndPoint::Sink => false,
        };
        if side(arc.a) != side(arc.b) {
            total += arc.capacity.clone();
        }
    }
    total
}

#[test]
fn cut_value_counts_boundary_copies() {
    let mut rng = StdRng::seed_from_u64(14);
    for _ in 0..25 {
        let m = random_complex(&mut rng);
        let s = m.surface(generate::SURFACE_NAME).unwrap().clone();
        let sigma = minsurf::minimize_exact(&m, &s, 22).unwrap();
        let cut = build_cut(&m, &sigma.surface, m.cell_id(0)).unwrap();
        assert_eq!(cut.source_area(), m.area(&sigma.surface));
        assert_eq!(cut.sink_area(), m.area(&sigma.surface));
        for _ in 0..10 {
            let region = random_region(&mut rng, cut.cell_count());
            // The region's class member plus double-paid copies accounts
            // for the full cut value.
            let member = cut.class_member(&region).unwrap();
            let mut double_pay = Rational::zero();
            for sa in cut.side_assignment() {
                if !region.contains(sa.plus) && region.contains(sa.minus) {
                    double_pay += m.face_area(sa.face).clone();
                }
            }
            let expect = m.area(&member) + Rational::from_integer(2.into()) * double_pay;
            assert_eq!(cut.cut_value(&region), expect);
            assert_eq!(cut.cut_value(&region), naive_cut_value(&cut, &region));
        }
    }
}

#[test]
fn mincut_never_exceeds_class_minimum_and_agrees_on_it() {
    let mut rng = StdRng::seed_from_u64(15);
    for _ in 0..20 {
        let m = random_complex(&mut rng);
        let s = m.surface(generate::SURFACE_NAME).unwrap().clone();
        let sigma = minsurf::minimize_exact(&m, &s, 22).unwrap();
        let cut = build_cut(&m, &sigma.surface, m.cell_id(0)).unwrap();
        let mc = flow::mincut(&cut);
        assert_eq!(mc.value, sigma.area);
        assert_eq!(mc.value, cut.cut_value(&mc.min_region));
        assert_eq!(mc.value, cut.cut_value(&mc.max_region));
        assert!(mc.min_region.is_subset(&mc.max_region));
    }
}

fn random_slab_spec(rng: &mut StdRng, max_cells: usize) -> SlabSpec {
    let n = rng.gen_range(2..=max_cells);
    let draw = |rng: &mut StdRng| rat(rng.gen_range(1..=20), rng.gen_range(1..=4));
    let cells: Vec<(String, Rational)> =
        (0..n).map(|i| (format!("c{i}"), draw(rng))).collect();
    let mut arcs = Vec::new();
    let mut push = |a: String, b: String, cap: Rational| {
        arcs.push(SlabArc {
            a,
            b,
            capacity: cap,
            label: None,
        })
    };
    push("SOURCE".into(), "c0".into(), draw(rng));
    for i in 1..n {
        push(format!("c{}", i - 1), format!("c{i}"), draw(rng));
    }
    push(format!("c{}", n - 1), "SINK".into(), draw(rng));
    for _ in 0..rng.gen_range(0..=n) {
        let kind = rng.gen_range(0..10);
        let u = rng.gen_range(0..n);
        if kind < 7 {
            let mut v = rng.gen_range(0..n.max(2) - 1);
            if v >= u {
                v += 1;
            }
            if v < n {
                push(format!("c{u}"), format!("c{v}"), draw(rng));
            }
        } else if kind < 9 {
            push("SOURCE".into(), format!("c{u}"), draw(rng));
        } else {
            push(format!("c{u}"), "SINK".into(), draw(rng));
        }
    }
    SlabSpec { cells, arcs }
}

#[test]
fn raising_source_capacity_grows_value_and_min_region() {
    let mut rng = StdRng::seed_from_u64(19);
    for _ in 0..30 {
        let spec = random_slab_spec(&mut rng, 8);
        let slab = make_slab(&spec).unwrap();
        let base = flow::mincut(&slab);
        // Boost one SOURCE arc.
        let mut boosted = spec.clone();
        let sources: Vec<usize> = boosted
            .arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.a == "SOURCE" || a.b == "SOURCE")
            .map(|(i, _)| i)
            .collect();
        let pick = sources[rng.gen_range(0..sources.len())];
        boosted.arcs[pick].capacity += rat(rng.gen_range(1..=10), 1);
        let after = flow::mincut(&make_slab(&boosted).unwrap());
        assert!(after.value >= base.value);
        assert!(base.min_region.is_subset(&after.min_region));
    }
}

#[test]
fn restriction_preserves_cut_values() {
    let mut rng = StdRng::seed_from_u64(16);
    for _ in 0..40 {
        let slab = make_slab(&random_slab_spec(&mut rng, 8)).unwrap();
        let n = slab.cell_count();
        if n < 2 {
            continue;
        }
        let region = loop {
            let r = random_region(&mut rng, n);
            if !r.is_empty() && r.len() < n {
                break r;
            }
        };
        let barrier = Barrier::new(&slab, region.clone()).unwrap();
        let restricted = slab.restrict(&barrier).unwrap();
        let ordered: Vec<usize> = region.iter().collect();
        for _ in 0..12 {
            let sub_bits: Vec<usize> = (0..ordered.len()).filter(|_| rng.gen_bool(0.5)).collect();
            let parent = Region::from_indices(sub_bits.iter().map(|&i| ordered[i]));
            let child = Region::from_indices(sub_bits.iter().copied());
            assert_eq!(slab.cut_value(&parent), restricted.cut_value(&child));
        }
    }
}

#[test]
fn chunked_profile_matches_naive_enumeration() {
    // 16 cells forces the prefix-chunked parallel scan; integer weights
    // keep the naive oracle in machine arithmetic.
    let mut rng = StdRng::seed_from_u64(20);
    let n = 16usize;
    let cells: Vec<(String, Rational)> = (0..n)
        .map(|i| (format!("c{i}"), rat_int(rng.gen_range(1..=9))))
        .collect();
    let mut arcs = Vec::new();
    let mut push = |a: String, b: String, cap: i64| {
        arcs.push(SlabArc {
            a,
            b,
            capacity: rat_int(cap),
            label: None,
        })
    };
    push("SOURCE".into(), "c0".into(), rng.gen_range(1..=30));
    for i in 1..n {
        push(format!("c{}", i - 1), format!("c{i}"), rng.gen_range(1..=30));
    }
    push(format!("c{}", n - 1), "SINK".into(), rng.gen_range(1..=30));
    for _ in 0..10 {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        push(format!("c{u}"), format!("c{v}"), rng.gen_range(1..=30));
    }
    let slab = make_slab(&SlabSpec { cells: cells.clone(), arcs: arcs.clone() }).unwrap();

    // Naive oracle straight off the arc list.
    let vol_i: Vec<i64> = (0..n)
        .map(|c| {
            use num_traits::ToPrimitive;
            slab.cell(c).volume.numer().to_i64().unwrap()
        })
        .collect();
    let arc_codes: Vec<(usize, usize, i64)> = arcs
        .iter()
        .map(|a| {
            use num_traits::ToPrimitive;
            let code = |s: &str| match s {
                "SOURCE" => n,
                "SINK" => n + 1,
                other => other[1..].parse::<usize>().unwrap(),
            };
            (code(&a.a), code(&a.b), a.capacity.numer().to_i64().unwrap())
        })
        .collect();
    let mut naive: std::collections::BTreeMap<i64, i64> = std::collections::BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let inside = |c: usize| c == n || (c < n && mask >> c & 1 == 1);
        let cut: i64 = arc_codes
            .iter()
            .filter(|(a, b, _)| inside(*a) != inside(*b))
            .map(|(_, _, cap)| cap)
            .sum();
        let vol: i64 = (0..n).filter(|&c| mask >> c & 1 == 1).map(|c| vol_i[c]).sum();
        naive.entry(vol).and_modify(|b| *b = (*b).min(cut)).or_insert(cut);
    }

    let profile = profile_exact(&slab, 16).unwrap();
    assert_eq!(profile.len(), naive.len());
    for (i, (vol, cut)) in naive.iter().enumerate() {
        let p = profile.point(i);
        assert_eq!(p.volume, rat_int(*vol));
        assert_eq!(p.area, rat_int(*cut));
        // The stored witness really achieves the point.
        let w = profile.witness_region(i);
        assert_eq!(slab.volume(&w), p.volume);
        assert_eq!(slab.cut_value(&w), p.area);
    }
}

#[test]
fn non_breakpoints_have_unique_optima() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..20 {
        let slab = make_slab(&random_slab_spec(&mut rng, 7)).unwrap();
        let lo = rat_int(-3);
        let hi = rat_int(6);
        let sp = breakpoints(&slab, &lo, &hi).unwrap();
        // At breakpoints the extremal optima split.
        for bp in &sp.breakpoints {
            let s = solve_offset(&slab, &bp.h);
            assert_ne!(s.region_minus, s.region_plus);
        }
        // Between them the optimum is unique.
        let mut marks = vec![lo.clone()];
        marks.extend(sp.breakpoints.iter().map(|b| b.h.clone()));
        marks.push(hi.clone());
        for pair in marks.windows(2) {
            if pair[0] == pair[1] {
                continue;
            }
            let mid = (pair[0].clone() + pair[1].clone()) / rat_int(2);
            if sp.breakpoints.iter().any(|b| b.h == mid) {
                continue;
            }
            let s = solve_offset(&slab, &mid);
            assert_eq!(
                s.region_minus, s.region_plus,
                "non-breakpoint H = {mid} should have a unique optimum"
            );
        }
    }
}

#[test]
fn profile_dominates_mincut_and_carries_sweep_lines() {
    let mut rng = StdRng::seed_from_u64(18);
    for _ in 0..15 {
        let m = random_complex(&mut rng);
        let s = m.surface(generate::SURFACE_NAME).unwrap().clone();
        let sigma = minsurf::minimize_exact(&m, &s, 22).unwrap();
        let cut = build_cut(&m, &sigma.surface, m.cell_id(0)).unwrap();
        let profile = profile_exact(&cut, 16).unwrap();
        let mc = flow::mincut(&cut).value;
        for p in profile.points() {
            assert!(p.area >= mc);
        }
        // Unconstrained sweep breakpoints land on envelope points.
        let sp = breakpoints(&cut, &rat_int(-4), &rat_int(8)).unwrap();
        for bp in &sp.breakpoints {
            for (vol, area) in [
                (&bp.vol_before, &bp.area_before),
                (&bp.vol_after, &bp.area_after),
            ] {
                let i = profile.index_of_volume(vol).expect("achieved volume");
                assert_eq!(&profile.point(i).area, area);
                assert!(profile.point(i).on_envelope, "sweep line off the hull");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_area_is_permutation_invariant(seed in 0u64..1000) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random_complex(&mut rng);
        let faces: Vec<usize> = (0..m.face_count()).filter(|_| rng.gen_bool(0.4)).collect();
        let chain = SurfaceChain::from_indices(faces.iter().copied());
        let mut shuffled = faces.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let direct: Rational = shuffled
            .iter()
            .map(|&f| m.face_area(f).clone())
            .fold(Rational::zero(), |a, b| a + b);
        prop_assert_eq!(m.area(&chain), direct);
    }

    #[test]
    fn witnesses_are_two_sided(seed in 0u64..1000) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random_complex(&mut rng);
        let r = random_region(&mut rng, m.cell_count());
        let b = m.boundary(&r);
        let w = m.bounding_region(&b).unwrap();
        // The witness is the region or its complement.
        prop_assert!(w == r || w == m.complement(&r));
    }
}
