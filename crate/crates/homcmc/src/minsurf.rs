//! Area-minimizing representatives of a homology class.
//!
//! The class of a surface S consists exactly of the chains S xor
//! boundary(x) over all cell sets x, and complementary x give the same
//! chain, so the exact minimizer enumerates the 2^(n-1) flip-sets that
//! fix one reference cell. Ties break to the lexicographically smallest
//! face-id set, which makes results identical across platforms and
//! thread counts. The local-search fallback is greedy single-cell-flip
//! descent with random restarts; it never certifies.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{Region, SurfaceChain, WeightedComplex};
use crate::cut::build_cut;
use crate::error::{Error, Result};
use crate::flow;
use crate::rational::Rational;
use crate::scan::{common_denominator, fits_i128, scale_value, unscale, ScanInt};

pub const DEFAULT_ENUM_CAP: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimizeMethod {
    ExactEnumeration,
    LocalSearch,
}

#[derive(Debug, Clone)]
pub struct MinimizerResult {
    pub surface: SurfaceChain,
    pub area: Rational,
    /// Flip-set x with surface = S xor boundary(x).
    pub witness: Region,
    pub method: MinimizeMethod,
    pub certified: bool,
}

impl MinimizerResult {
    /// True when the minimum is the empty chain, i.e. the class is
    /// trivial and downstream class operations must be refused.
    pub fn trivial_class(&self) -> bool {
        self.surface.is_empty()
    }
}

/// Per-cell toggle lists over faces: flipping a cell flips the chain
/// membership of each incident non-self-adjacent face.
struct FlipScan<T> {
    n_cells: usize,
    face_areas: Vec<T>,
    incident: Vec<Vec<usize>>,
    start_chain: Vec<u64>,
    start_area: T,
    scale: BigInt,
}

fn chain_words(faces: usize) -> usize {
    faces.div_ceil(64).max(1)
}

impl<T: ScanInt> FlipScan<T> {
    fn build(m: &WeightedComplex, s: &SurfaceChain, scale: BigInt) -> FlipScan<T> {
        let face_areas: Vec<T> = (0..m.face_count())
            .map(|f| T::from_big(&scale_value(m.face_area(f), &scale)))
            .collect();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); m.cell_count()];
        for f in 0..m.face_count() {
            let (a, b) = m.face_cells(f);
            if a != b {
                incident[a].push(f);
                incident[b].push(f);
            }
        }
        let mut start_chain = vec![0u64; chain_words(m.face_count())];
        let mut start_area = T::zero();
        for f in s.iter() {
            start_chain[f / 64] |= 1 << (f % 64);
            start_area += &face_areas[f];
        }
        FlipScan {
            n_cells: m.cell_count(),
            face_areas,
            incident,
            start_chain,
            start_area,
            scale,
        }
    }

    /// Chain and area after flipping every cell of `flip_mask`
    /// (bit b = cell b+1; cell 0 is the fixed reference).
    fn state_of_flip(&self, flip_mask: u64) -> (Vec<u64>, T) {
        let mut chain = self.start_chain.clone();
        let mut area = self.start_area.clone();
        for b in 0..self.n_cells.saturating_sub(1) {
            if flip_mask >> b & 1 == 1 {
                self.toggle_cell(b + 1, &mut chain, &mut area);
            }
        }
        (chain, area)
    }

    fn toggle_cell(&self, cell: usize, chain: &mut [u64], area: &mut T) {
        for &f in &self.incident[cell] {
            let word = f / 64;
            let bit = 1u64 << (f % 64);
            if chain[word] & bit != 0 {
                *area -= &self.face_areas[f];
            } else {
                *area += &self.face_areas[f];
            }
            chain[word] ^= bit;
        }
    }
}

struct Best<T> {
    area: T,
    chain: Vec<u64>,
    flip_mask: u64,
}

fn chain_rank_key(chain: &[u64], face_rank: impl Fn(usize) -> usize, faces: usize) -> Vec<usize> {
    let mut key: Vec<usize> = (0..faces)
        .filter(|&f| chain[f / 64] >> (f % 64) & 1 == 1)
        .map(face_rank)
        .collect();
    key.sort_unstable();
    key
}

fn scan_flips<T: ScanInt>(m: &WeightedComplex, scan: &FlipScan<T>) -> Best<T> {
    let free_bits = m.cell_count() - 1;
    let low = free_bits.min(14);
    let high = free_bits - low;
    let faces = m.face_count();
    let better = |cand: &Best<T>, best: &Best<T>| -> bool {
        match cand.area.cmp(&best.area) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => {
                chain_rank_key(&cand.chain, |f| m.face_rank(f), faces)
                    < chain_rank_key(&best.chain, |f| m.face_rank(f), faces)
            }
        }
    };

    let chunk_best = |prefix: u64| -> Best<T> {
        let (mut chain, mut area) = scan.state_of_flip(prefix);
        let mut best = Best {
            area: area.clone(),
            chain: chain.clone(),
            flip_mask: prefix,
        };
        let mut mask = prefix;
        for i in 1u64..(1u64 << low) {
            let bit = i.trailing_zeros() as usize;
            scan.toggle_cell(bit + 1, &mut chain, &mut area);
            mask ^= 1 << bit;
            if area < best.area {
                best = Best {
                    area: area.clone(),
                    chain: chain.clone(),
                    flip_mask: mask,
                };
            } else if area == best.area {
                let cand = Best {
                    area: area.clone(),
                    chain: chain.clone(),
                    flip_mask: mask,
                };
                if better(&cand, &best) {
                    best = cand;
                }
            }
        }
        best
    };

    let prefixes: Vec<u64> = (0..(1u64 << high)).map(|p| p << low).collect();
    let chunk_results: Vec<Best<T>> = if prefixes.len() > 1 {
        prefixes.par_iter().map(|&p| chunk_best(p)).collect()
    } else {
        prefixes.iter().map(|&p| chunk_best(p)).collect()
    };
    // Ordered fold keeps the reduction deterministic for any schedule.
    chunk_results
        .into_iter()
        .reduce(|best, cand| if better(&cand, &best) { cand } else { best })
        .expect("at least one chunk")
}

fn result_from_best<T: ScanInt>(
    m: &WeightedComplex,
    scan: &FlipScan<T>,
    best: Best<T>,
    method: MinimizeMethod,
    certified: bool,
) -> MinimizerResult {
    let faces: Vec<usize> = (0..m.face_count())
        .filter(|&f| best.chain[f / 64] >> (f % 64) & 1 == 1)
        .collect();
    let witness = Region::from_indices(
        (0..m.cell_count().saturating_sub(1)).filter_map(|b| {
            (best.flip_mask >> b & 1 == 1).then_some(b + 1)
        }),
    );
    MinimizerResult {
        surface: SurfaceChain::from_indices(faces),
        area: unscale(&best.area.to_big(), &scan.scale),
        witness,
        method,
        certified,
    }
}

/// Exact minimum over the whole class by flip-set enumeration.
pub fn minimize_exact(
    m: &WeightedComplex,
    s: &SurfaceChain,
    cap: usize,
) -> Result<MinimizerResult> {
    let n = m.cell_count();
    if n > cap || n > 63 {
        return Err(Error::CapExceeded {
            cells: n,
            cap: cap.min(63),
        });
    }
    let scale = common_denominator((0..m.face_count()).map(|f| m.face_area(f)));
    let scaled: Vec<BigInt> = (0..m.face_count())
        .map(|f| scale_value(m.face_area(f), &scale))
        .collect();
    if fits_i128(&scaled) {
        let scan: FlipScan<i128> = FlipScan::build(m, s, scale);
        let best = scan_flips(m, &scan);
        Ok(result_from_best(m, &scan, best, MinimizeMethod::ExactEnumeration, true))
    } else {
        let scan: FlipScan<BigInt> = FlipScan::build(m, s, scale);
        let best = scan_flips(m, &scan);
        Ok(result_from_best(m, &scan, best, MinimizeMethod::ExactEnumeration, true))
    }
}

/// Greedy descent with random restarts. Restart 0 starts from the empty
/// flip-set, so the result never exceeds the input area; restart i uses
/// seed + i. Not certified.
pub fn minimize_local(
    m: &WeightedComplex,
    s: &SurfaceChain,
    seed: u64,
    restarts: usize,
) -> MinimizerResult {
    let scale = common_denominator((0..m.face_count()).map(|f| m.face_area(f)));
    let scan: FlipScan<BigInt> = FlipScan::build(m, s, scale);
    let n = m.cell_count();

    let descend = |restart: usize| -> (BigInt, Vec<u64>, Vec<bool>) {
        let mut flips = vec![false; n];
        if restart > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart as u64));
            for flag in flips.iter_mut() {
                *flag = rng.gen_bool(0.5);
            }
        }
        let mut chain = scan.start_chain.clone();
        let mut area = scan.start_area.clone();
        for (cell, &on) in flips.iter().enumerate() {
            if on {
                scan.toggle_cell(cell, &mut chain, &mut area);
            }
        }
        loop {
            // Best single-cell flip, ties to the smallest cell rank.
            let mut best: Option<(BigInt, usize)> = None;
            for cell in 0..n {
                let mut delta = BigInt::from(0);
                for &f in &scan.incident[cell] {
                    if chain[f / 64] >> (f % 64) & 1 == 1 {
                        delta -= &scan.face_areas[f];
                    } else {
                        delta += &scan.face_areas[f];
                    }
                }
                let better = match &best {
                    None => delta < BigInt::from(0),
                    Some((d, c)) => {
                        delta < *d || (delta == *d && m.cell_rank(cell) < m.cell_rank(*c))
                    }
                };
                if better && delta < BigInt::from(0) {
                    best = Some((delta, cell));
                }
            }
            match best {
                Some((_, cell)) => {
                    scan.toggle_cell(cell, &mut chain, &mut area);
                    flips[cell] = !flips[cell];
                }
                None => break,
            }
        }
        (area, chain, flips)
    };

    let runs: Vec<(BigInt, Vec<u64>, Vec<bool>)> =
        (0..=restarts).into_par_iter().map(descend).collect();
    let faces = m.face_count();
    let (_, chain, flips) = runs
        .into_iter()
        .reduce(|best, cand| {
            let take = match cand.0.cmp(&best.0) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => {
                    chain_rank_key(&cand.1, |f| m.face_rank(f), faces)
                        < chain_rank_key(&best.1, |f| m.face_rank(f), faces)
                }
            };
            if take {
                cand
            } else {
                best
            }
        })
        .expect("at least one descent");

    let surface = SurfaceChain::from_indices(
        (0..faces).filter(|&f| chain[f / 64] >> (f % 64) & 1 == 1),
    );
    // Normalize the flip-set so the reference cell stays fixed.
    let witness = if flips[0] {
        Region::from_indices((0..n).filter(|&c| !flips[c]))
    } else {
        Region::from_indices((0..n).filter(|&c| flips[c]))
    };
    let area = m.area(&surface);
    MinimizerResult {
        surface,
        area,
        witness,
        method: MinimizeMethod::LocalSearch,
        certified: false,
    }
}

/// Cut-based minimality certificate: cut along the candidate and compare
/// the terminal min-cut value with the candidate's area. Equality is
/// necessary for minimality in the class; a smaller min cut exhibits a
/// cheaper homologous surface.
pub fn certify_minimal_in_cut(m: &WeightedComplex, candidate: &SurfaceChain) -> Result<bool> {
    if candidate.is_empty() {
        return Err(Error::EmptyCutSurface);
    }
    // Deterministic seed: smallest-rank cell incident to the candidate.
    let seed = candidate
        .iter()
        .flat_map(|f| {
            let (a, b) = m.face_cells(f);
            [a, b]
        })
        .min_by_key(|&c| m.cell_rank(c))
        .expect("nonempty candidate");
    let cut = build_cut(m, candidate, m.cell_id(seed))?;
    let result = flow::mincut(&cut);
    Ok(result.value == m.area(candidate))
}
