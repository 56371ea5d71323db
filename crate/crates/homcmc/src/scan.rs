//! Scaled integer arithmetic and Gray-code subset enumeration.
//!
//! Exhaustive region scans keep a running (volume, cut value) pair and
//! update it per single-cell toggle. Weights are scaled to a common
//! denominator first; when the scaled totals fit comfortably in i128 the
//! scan runs on machine integers, otherwise on big integers. Parallel
//! scans split the subset space by high-bit prefix and merge chunk
//! results in chunk order, so outputs are identical for any thread count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cut::{CutComplex, EndPoint};
use crate::rational::Rational;

pub(crate) trait ScanInt:
    Clone
    + Ord
    + Send
    + Sync
    + std::ops::AddAssign
    + std::ops::SubAssign
    + for<'a> std::ops::AddAssign<&'a Self>
    + for<'a> std::ops::SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl ScanInt for i128 {
    fn zero() -> Self {
        0
    }
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("scaled weight fits i128 on the fast path")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ScanInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(vals: I) -> BigInt {
    let mut scale = BigInt::one();
    for v in vals {
        scale = scale.lcm(v.denom());
    }
    scale
}

pub(crate) fn scale_value(r: &Rational, scale: &BigInt) -> BigInt {
    r.numer() * (scale / r.denom())
}

pub(crate) fn unscale(v: &BigInt, scale: &BigInt) -> Rational {
    Rational::new(v.clone(), scale.clone())
}

/// Sum of absolute scaled values; used to decide whether i128 headroom
/// is sufficient for any partial sum the scan can produce.
pub(crate) fn fits_i128(values: &[BigInt]) -> bool {
    let budget = BigInt::from(i128::MAX >> 8);
    let mut total = <BigInt as num_traits::Zero>::zero();
    for v in values {
        total += v.abs();
        if total > budget {
            return false;
        }
    }
    true
}

/// What a toggled cell touches: the other endpoint and the scaled
/// capacity. Terminal sides are fixed (SOURCE is always inside the cut's
/// source side, SINK never).
#[derive(Clone)]
pub(crate) enum Touch<T> {
    Cell(usize, T),
    Source(T),
    Sink(T),
}

/// A cut network prepared for scaled subset scans.
pub(crate) struct NetScan<T> {
    pub n: usize,
    pub vols: Vec<T>,
    pub touch: Vec<Vec<Touch<T>>>,
    /// (a, b, cap) with usize::MAX for SOURCE and usize::MAX-1 for SINK.
    arcs: Vec<(usize, usize, T)>,
    pub vol_scale: BigInt,
    pub cap_scale: BigInt,
}

const SRC: usize = usize::MAX;
const SNK: usize = usize::MAX - 1;

impl<T: ScanInt> NetScan<T> {
    fn endpoint_code(e: EndPoint) -> usize {
        match e {
            EndPoint::Cell(i) => i,
            EndPoint::Source => SRC,
            EndPoint::Sink => SNK,
        }
    }

    pub fn build(cut: &CutComplex, vol_scale: BigInt, cap_scale: BigInt) -> NetScan<T> {
        let n = cut.cell_count();
        let vols: Vec<T> = (0..n)
            .map(|c| T::from_big(&scale_value(&cut.cell(c).volume, &vol_scale)))
            .collect();
        let mut touch: Vec<Vec<Touch<T>>> = (0..n).map(|_| Vec::new()).collect();
        let mut arcs = Vec::new();
        for arc in cut.arcs() {
            let cap = T::from_big(&scale_value(&arc.capacity, &cap_scale));
            let (a, b) = (Self::endpoint_code(arc.a), Self::endpoint_code(arc.b));
            if a == b {
                continue; // self-arc, inert
            }
            arcs.push((a, b, cap.clone()));
            for (this, other) in [(a, b), (b, a)] {
                if this < n {
                    touch[this].push(match other {
                        SRC => Touch::Source(cap.clone()),
                        SNK => Touch::Sink(cap.clone()),
                        cell => Touch::Cell(cell, cap.clone()),
                    });
                }
            }
        }
        NetScan {
            n,
            vols,
            touch,
            arcs,
            vol_scale,
            cap_scale,
        }
    }

    /// Scaled cut value of an explicit mask, from scratch.
    pub fn cut_of_mask(&self, mask: u64) -> T {
        let inside = |code: usize| match code {
            SRC => true,
            SNK => false,
            c => mask >> c & 1 == 1,
        };
        let mut total = T::zero();
        for (a, b, cap) in &self.arcs {
            if inside(*a) != inside(*b) {
                total += cap;
            }
        }
        total
    }

    pub fn vol_of_mask(&self, mask: u64) -> T {
        let mut total = T::zero();
        for (c, v) in self.vols.iter().enumerate() {
            if mask >> c & 1 == 1 {
                total += v;
            }
        }
        total
    }

    /// Apply the cut-value delta of toggling `cell`, given the mask
    /// before the toggle.
    pub fn apply_toggle(&self, cell: usize, mask_before: u64, cut: &mut T) {
        let was_in = mask_before >> cell & 1 == 1;
        for t in &self.touch[cell] {
            let (other_in, cap) = match t {
                Touch::Cell(j, cap) => (mask_before >> *j & 1 == 1, cap),
                Touch::Source(cap) => (true, cap),
                Touch::Sink(cap) => (false, cap),
            };
            let before = was_in != other_in;
            let after = !was_in != other_in;
            if before && !after {
                *cut -= cap;
            } else if !before && after {
                *cut += cap;
            }
        }
    }

    pub fn apply_vol_toggle(&self, cell: usize, mask_before: u64, vol: &mut T) {
        if mask_before >> cell & 1 == 1 {
            *vol -= &self.vols[cell];
        } else {
            *vol += &self.vols[cell];
        }
    }
}

/// Decide the scaled representation of a cut complex. Returns the two
/// scales and whether the i128 fast path is safe.
pub(crate) fn choose_scales(cut: &CutComplex) -> (BigInt, BigInt, bool) {
    let vol_scale = common_denominator((0..cut.cell_count()).map(|c| &cut.cell(c).volume));
    let cap_scale = common_denominator(cut.arcs().iter().map(|a| &a.capacity));
    let mut scaled: Vec<BigInt> = (0..cut.cell_count())
        .map(|c| scale_value(&cut.cell(c).volume, &vol_scale))
        .collect();
    scaled.extend(cut.arcs().iter().map(|a| scale_value(&a.capacity, &cap_scale)));
    let fast = fits_i128(&scaled);
    (vol_scale, cap_scale, fast)
}

/// Iterate every mask of `bits` low bits on top of a fixed prefix mask,
/// in Gray-code order, invoking `visit(mask, vol, cut)` for each subset
/// including the prefix itself.
pub(crate) fn gray_scan<T: ScanInt>(
    net: &NetScan<T>,
    prefix: u64,
    bits: usize,
    mut visit: impl FnMut(u64, &T, &T),
) {
    let mut mask = prefix;
    let mut vol = net.vol_of_mask(mask);
    let mut cut = net.cut_of_mask(mask);
    visit(mask, &vol, &cut);
    for i in 1u64..(1u64 << bits) {
        let cell = i.trailing_zeros() as usize;
        net.apply_toggle(cell, mask, &mut cut);
        net.apply_vol_toggle(cell, mask, &mut vol);
        mask ^= 1 << cell;
        visit(mask, &vol, &cut);
    }
}

/// Split an n-bit scan into prefix chunks for parallel processing. The
/// low `bits` are Gray-scanned per chunk; prefixes enumerate the high
/// bits. Chunk count and order are functions of n alone.
pub(crate) fn scan_chunks(n: usize) -> (usize, Vec<u64>) {
    let low = n.min(14);
    let high = n - low;
    let prefixes: Vec<u64> = (0..(1u64 << high)).map(|p| p << low).collect();
    (low, prefixes)
}

/// Rank-lexicographic order on cell-set masks: masks are compared as the
/// sorted lists of ranks they contain.
pub(crate) fn compare_masks_by_rank(a: u64, b: u64, rank_of_bit: &[usize]) -> std::cmp::Ordering {
    let key = |mask: u64| -> Vec<usize> {
        let mut ranks: Vec<usize> = (0..rank_of_bit.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| rank_of_bit[i])
            .collect();
        ranks.sort_unstable();
        ranks
    };
    key(a).cmp(&key(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::path_slab;
    use crate::rational::rat_int;

    #[test]
    fn gray_scan_matches_direct_evaluation() {
        let slab = path_slab(
            &[rat_int(1), rat_int(2), rat_int(4), rat_int(3)],
            &[rat_int(2), rat_int(5), rat_int(7)],
        )
        .unwrap();
        let (vs, cs, fast) = choose_scales(&slab);
        assert!(fast);
        let net: NetScan<i128> = NetScan::build(&slab, vs, cs);
        let mut seen = std::collections::BTreeMap::new();
        gray_scan(&net, 0, 3, |mask, vol, cut| {
            seen.insert(mask, (*vol, *cut));
        });
        assert_eq!(seen.len(), 8);
        for (mask, (vol, cut)) in seen {
            assert_eq!(vol, net.vol_of_mask(mask));
            assert_eq!(cut, net.cut_of_mask(mask));
        }
    }

    #[test]
    fn mask_rank_order() {
        // Bits 0,1,2 carry ranks 2,0,1: {bit1} < {bit1,bit2} < {bit2} < {bit0}.
        let ranks = [2usize, 0, 1];
        let mask_of = |bits: &[usize]| bits.iter().fold(0u64, |m, b| m | 1 << b);
        let order = [
            mask_of(&[1]),
            mask_of(&[1, 2]),
            mask_of(&[2]),
            mask_of(&[0]),
        ];
        for w in order.windows(2) {
            assert_eq!(
                compare_masks_by_rank(w[0], w[1], &ranks),
                std::cmp::Ordering::Less
            );
        }
        assert_eq!(
            compare_masks_by_rank(mask_of(&[1]), mask_of(&[1]), &ranks),
            std::cmp::Ordering::Equal
        );
    }
}
