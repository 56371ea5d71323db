//! Instance generators. Every generator emits the standard complex file
//! format (so generated cases always exercise the parser) together with
//! a distinguished surface named "S", and is a pure function of its
//! parameters and seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::complex::{SurfaceChain, WeightedComplex, COMPLEX_FORMAT};
use crate::cut::{build_cut, EndPoint};
use crate::error::{Error, Result};
use crate::rational::{format_rational, rat_int, Rational};

pub const SURFACE_NAME: &str = "S";

#[derive(Serialize)]
struct Doc {
    format: &'static str,
    cells: Vec<CellOut>,
    faces: Vec<FaceOut>,
    surfaces: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
struct CellOut {
    id: String,
    volume: String,
}

#[derive(Serialize)]
struct FaceOut {
    id: String,
    area: String,
    cells: [String; 2],
}

struct Builder {
    cells: Vec<CellOut>,
    faces: Vec<FaceOut>,
    surface: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            cells: Vec::new(),
            faces: Vec::new(),
            surface: Vec::new(),
        }
    }
    fn cell(&mut self, id: impl Into<String>, volume: &Rational) {
        self.cells.push(CellOut {
            id: id.into(),
            volume: format_rational(volume),
        });
    }
    fn face(&mut self, id: impl Into<String>, area: &Rational, a: impl Into<String>, b: impl Into<String>) {
        self.faces.push(FaceOut {
            id: id.into(),
            area: format_rational(area),
            cells: [a.into(), b.into()],
        });
    }
    fn finish(self) -> String {
        let mut surfaces = BTreeMap::new();
        surfaces.insert(SURFACE_NAME.to_string(), self.surface);
        let doc = Doc {
            format: COMPLEX_FORMAT,
            cells: self.cells,
            faces: self.faces,
            surfaces,
        };
        serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
    }
}

/// k unit-volume cells in a dual cycle; consecutive faces carry the
/// given areas. The distinguished surface is the first face.
pub fn ring(areas: &[Rational]) -> Result<String> {
    let k = areas.len();
    if k < 2 {
        return Err(Error::InvalidGenParams(
            "ring needs at least 2 faces".into(),
        ));
    }
    let mut b = Builder::new();
    let one = rat_int(1);
    for i in 1..=k {
        b.cell(format!("c{i}"), &one);
    }
    for (i, area) in areas.iter().enumerate() {
        let from = i + 1;
        let to = if from == k { 1 } else { from + 1 };
        b.face(format!("f{from}{to}"), area, format!("c{from}"), format!("c{to}"));
    }
    b.surface = vec!["f12".to_string()];
    Ok(b.finish())
}

/// Ring with constant area and volume: the flat-profile product metric.
pub fn product(count: usize, area: &Rational, volume: &Rational) -> Result<String> {
    if count < 2 {
        return Err(Error::InvalidGenParams(
            "product needs at least 2 cells".into(),
        ));
    }
    let mut b = Builder::new();
    for i in 1..=count {
        b.cell(format!("c{i}"), volume);
    }
    for i in 1..=count {
        let to = if i == count { 1 } else { i + 1 };
        b.face(format!("f{i}{to}"), area, format!("c{i}"), format!("c{to}"));
    }
    b.surface = vec!["f12".to_string()];
    Ok(b.finish())
}

/// Periodic a x b x c grid with unit weights; the distinguished surface
/// is the wrap slice perpendicular to the largest axis, so its class
/// minimum is the product of the two smaller dimensions.
pub fn grid3(a: usize, b: usize, c: usize) -> Result<String> {
    if a < 2 || b < 2 || c < 2 {
        return Err(Error::InvalidGenParams(
            "grid3 dimensions must all be at least 2".into(),
        ));
    }
    let dims = [a, b, c];
    let slice_axis = (0..3).max_by_key(|&i| dims[i]).unwrap();
    let mut builder = Builder::new();
    let one = rat_int(1);
    let cell_id = |x: usize, y: usize, z: usize| format!("c_{x}_{y}_{z}");
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                builder.cell(cell_id(x, y, z), &one);
            }
        }
    }
    let axis_names = ["fx", "fy", "fz"];
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                for (axis, neighbor) in [
                    ((x + 1) % a, y, z),
                    (x, (y + 1) % b, z),
                    (x, y, (z + 1) % c),
                ]
                .into_iter()
                .enumerate()
                {
                    let id = format!("{}_{x}_{y}_{z}", axis_names[axis]);
                    builder.face(&id, &one, cell_id(x, y, z), cell_id(neighbor.0, neighbor.1, neighbor.2));
                    let coord = [x, y, z][axis];
                    if axis == slice_axis && coord == dims[axis] - 1 {
                        builder.surface.push(id);
                    }
                }
            }
        }
    }
    Ok(builder.finish())
}

/// Connected random dual multigraph: a random spanning tree plus random
/// extra faces up to roughly degree * cells / 2 in total, with rational
/// weights drawn as integers over small random denominators. The
/// distinguished surface is the first non-tree face, which is never a
/// bridge, so its class is nontrivial.
pub fn random(cells: usize, degree: usize, weight_lo: i64, weight_hi: i64, seed: u64) -> Result<String> {
    if cells < 2 {
        return Err(Error::InvalidGenParams("random needs at least 2 cells".into()));
    }
    if weight_lo < 1 || weight_hi < weight_lo {
        return Err(Error::InvalidGenParams(
            "weight range must satisfy 1 <= lo <= hi".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Rational {
        let numer = rng.gen_range(weight_lo..=weight_hi);
        let denom = rng.gen_range(1..=4i64);
        Rational::new(numer.into(), denom.into())
    };
    let mut b = Builder::new();
    for i in 0..cells {
        let v = draw(&mut rng);
        b.cell(format!("c{i}"), &v);
    }
    let mut face_no = 0usize;
    let mut add_face = |b: &mut Builder, rng: &mut ChaCha8Rng, u: usize, v: usize| -> String {
        let area = draw(rng);
        let id = format!("f{face_no}");
        b.face(&id, &area, format!("c{u}"), format!("c{v}"));
        face_no += 1;
        id
    };
    for i in 1..cells {
        let j = rng.gen_range(0..i);
        add_face(&mut b, &mut rng, j, i);
    }
    let target = cells.max((cells * degree).div_ceil(2));
    let extras = target.saturating_sub(cells - 1).max(1);
    let mut surface_face = None;
    for _ in 0..extras {
        let u = rng.gen_range(0..cells);
        let mut v = rng.gen_range(0..cells - 1);
        if v >= u {
            v += 1;
        }
        let id = add_face(&mut b, &mut rng, u, v);
        surface_face.get_or_insert(id);
    }
    b.surface = vec![surface_face.expect("at least one extra face")];
    Ok(b.finish())
}

/// Stack n copies of the cut manifold end to end, cap both ends with a
/// handlebody cell whose boundary mirrors the cut surface area for area,
/// and re-close with a face joining the two handlebodies whose area
/// equals the whole cut surface. The distinguished surface is the top
/// cap layer; its class runs through the stack, so the class minimum of
/// the stacked complex equals the min cut of the base cut complex.
pub fn stack(
    base: &WeightedComplex,
    surface: &SurfaceChain,
    seed_cell: &str,
    copies: usize,
) -> Result<String> {
    if copies < 1 {
        return Err(Error::InvalidGenParams("stack needs at least 1 copy".into()));
    }
    let cut = build_cut(base, surface, seed_cell)?;
    let sigma_area = cut.source_area();
    let handle_volume = (0..base.cell_count())
        .map(|c| base.cell_volume(c).clone())
        .min()
        .expect("nonempty complex");

    let mut b = Builder::new();
    b.cell("hplus", &handle_volume);
    for i in 1..=copies {
        for c in 0..base.cell_count() {
            b.cell(format!("{}@{i}", base.cell_id(c)), base.cell_volume(c));
        }
    }
    b.cell("hminus", &handle_volume);

    // Interior faces per copy.
    for i in 1..=copies {
        for arc in cut.arcs() {
            if let (EndPoint::Cell(u), EndPoint::Cell(v)) = (arc.a, arc.b) {
                let fid = arc
                    .label
                    .clone()
                    .unwrap_or_else(|| format!("f{u}_{v}"));
                b.face(
                    format!("{fid}@{i}"),
                    &arc.capacity,
                    format!("{}@{i}", cut.cell_id(u)),
                    format!("{}@{i}", cut.cell_id(v)),
                );
            }
        }
    }
    // Boundary copies: caps mirror the cut faces area for area, and the
    // glue layers join SINK side of one copy to SOURCE side of the next.
    for s in cut.side_assignment() {
        let fid = base.face_id(s.face);
        let area = base.face_area(s.face);
        b.face(
            format!("{fid}@top"),
            area,
            "hplus".to_string(),
            format!("{}@1", base.cell_id(s.plus)),
        );
        for i in 1..copies {
            b.face(
                format!("{fid}@g{i}"),
                area,
                format!("{}@{i}", base.cell_id(s.minus)),
                format!("{}@{}", base.cell_id(s.plus), i + 1),
            );
        }
        b.face(
            format!("{fid}@bot"),
            area,
            format!("{}@{copies}", base.cell_id(s.minus)),
            "hminus".to_string(),
        );
    }
    b.face("w", &sigma_area, "hminus".to_string(), "hplus".to_string());
    b.surface = cut
        .side_assignment()
        .iter()
        .map(|s| format!("{}@top", base.face_id(s.face)))
        .collect();
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::mincut;
    use crate::minsurf::{minimize_exact, DEFAULT_ENUM_CAP};
    use crate::rational::rat;

    fn load(text: &str) -> WeightedComplex {
        WeightedComplex::from_json_str(text).unwrap()
    }

    #[test]
    fn ring_matches_hand_instance() {
        let text = ring(&[rat_int(1), rat_int(2), rat_int(3)]).unwrap();
        let m = load(&text);
        assert_eq!(m.cell_count(), 3);
        assert_eq!(*m.total_volume(), rat_int(3));
        let s = m.resolve_surface(["f23"]).unwrap().chain;
        let r = minimize_exact(&m, &s, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.area, rat_int(1));
    }

    #[test]
    fn product_is_flat() {
        let text = product(3, &rat_int(2), &rat_int(1)).unwrap();
        let m = load(&text);
        let s = m.surface(SURFACE_NAME).unwrap().clone();
        let cut = build_cut(&m, &s, "c2").unwrap();
        let p = crate::profile::profile_exact(&cut, 22).unwrap();
        assert!(p.points().iter().all(|q| q.area == rat_int(2)));
    }

    #[test]
    fn grid_slice_minimum_is_smallest_slice_class() {
        for (a, b, c) in [(2usize, 2usize, 2usize), (2, 2, 3), (2, 3, 3)] {
            let text = grid3(a, b, c).unwrap();
            let m = load(&text);
            let s = m.surface(SURFACE_NAME).unwrap().clone();
            let r = minimize_exact(&m, &s, 22).unwrap();
            let expected = [a * b, b * c, a * c].into_iter().min().unwrap();
            assert_eq!(r.area, rat_int(expected as i64), "grid {a}x{b}x{c}");
        }
    }

    #[test]
    fn grid_3x3x3_slice_minimum() {
        // 27 cells; the enumeration needs the cap raised.
        let m = load(&grid3(3, 3, 3).unwrap());
        let s = m.surface(SURFACE_NAME).unwrap().clone();
        let r = minimize_exact(&m, &s, 27).unwrap();
        assert_eq!(r.area, rat_int(9));
    }

    #[test]
    fn grid_local_search_never_worsens() {
        let m = load(&grid3(3, 3, 3).unwrap());
        let s = m.surface(SURFACE_NAME).unwrap().clone();
        let r = crate::minsurf::minimize_local(&m, &s, 42, 4);
        assert!(r.area <= m.area(&s));
        assert!(!r.certified);
    }

    #[test]
    fn random_is_valid_and_nontrivial() {
        for seed in [7u64, 8, 9] {
            let text = random(10, 3, 1, 100, seed).unwrap();
            let m = load(&text);
            let s = m.surface(SURFACE_NAME).unwrap().clone();
            assert!(m.bounding_region(&s).is_none(), "class must be nontrivial");
        }
    }

    #[test]
    fn generation_is_pure() {
        let a = random(12, 3, 1, 50, 41).unwrap();
        let b = random(12, 3, 1, 50, 41).unwrap();
        assert_eq!(a, b);
        let c = random(12, 3, 1, 50, 42).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn stack_preserves_min_cut() {
        let base_text = ring(&[rat_int(1), rat_int(2), rat_int(3)]).unwrap();
        let base = load(&base_text);
        let s = base.surface(SURFACE_NAME).unwrap().clone();
        for copies in [1usize, 2, 3] {
            let text = stack(&base, &s, "c1", copies).unwrap();
            let m = load(&text);
            let stacked_s = m.surface(SURFACE_NAME).unwrap().clone();
            let r = minimize_exact(&m, &stacked_s, DEFAULT_ENUM_CAP).unwrap();
            // Base min cut along S = {f12}:
            let base_cut = build_cut(&base, &s, "c1").unwrap();
            let base_min = mincut(&base_cut).value;
            assert_eq!(r.area, base_min, "copies = {copies}");
            // And the cut complex of the stack agrees.
            let cut = build_cut(&m, &minimize_exact(&m, &stacked_s, DEFAULT_ENUM_CAP)
                .unwrap()
                .surface, "hplus")
            .unwrap();
            assert_eq!(mincut(&cut).value, base_min);
        }
    }

    #[test]
    fn stack_on_multiface_cut() {
        // Grid slice cut has four boundary faces; two copies glue into a
        // valid class-mode complex with the same class minimum.
        let base = load(&grid3(2, 2, 2).unwrap());
        let s = base.surface(SURFACE_NAME).unwrap().clone();
        let text = stack(&base, &s, "c_0_0_0", 2).unwrap();
        let m = load(&text);
        let stacked_s = m.surface(SURFACE_NAME).unwrap().clone();
        let r = minimize_exact(&m, &stacked_s, 22).unwrap();
        assert_eq!(r.area, rat_int(4));
    }

    #[test]
    fn invalid_parameters() {
        assert!(ring(&[rat_int(1)]).is_err());
        assert!(grid3(1, 2, 2).is_err());
        assert!(random(1, 3, 1, 10, 0).is_err());
        assert!(random(5, 3, 5, 1, 0).is_err());
        assert!(product(1, &rat(1, 2), &rat_int(1)).is_err());
    }
}
