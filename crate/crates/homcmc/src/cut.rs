//! The cut manifold as a two-terminal capacity network.
//!
//! Cutting the complex along a nonseparating surface yields a manifold
//! with two boundary copies of that surface. Surfaces separating the two
//! copies are in bijection with terminal cuts of a network whose nodes
//! are the cells plus SOURCE (beyond the plus copy) and SINK (beyond the
//! minus copy): every non-cut face becomes an undirected capacity arc
//! between its incident cells, and every cut face becomes a SOURCE arc to
//! its plus-side cell and a SINK arc to its minus-side cell, each with
//! capacity equal to the face area.
//!
//! Side assignment is seeded: the plus side of each cut face is its
//! incident cell that is closer to the seed cell in the complement of the
//! cut (breadth-first distance, ties by discovery order), which makes the
//! plus/minus labelling an explicit input rather than an internal choice.
//! A self-adjacent cut face is one-sided and rejected.
//!
//! Regions of the network may be arbitrary cell sets; a region whose cut
//! uses both copies of the same cut face pays that face twice. Such
//! configurations are costed faithfully and are never optimal.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{Region, SurfaceChain, WeightedComplex};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

pub const CUT_FORMAT: &str = "homcmc-cut/1";
pub const SOURCE_NAME: &str = "SOURCE";
pub const SINK_NAME: &str = "SINK";

/// One endpoint of a capacity arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndPoint {
    Cell(usize),
    Source,
    Sink,
}

impl EndPoint {
    /// Which side of a cut this endpoint falls on for a given region.
    fn source_side(&self, region: &Region) -> bool {
        match self {
            EndPoint::Cell(i) => region.contains(*i),
            EndPoint::Source => true,
            EndPoint::Sink => false,
        }
    }
}

/// An undirected capacity arc. `base_face` points into the originating
/// complex when the arc descends from one of its faces.
#[derive(Debug, Clone)]
pub struct CutArc {
    pub a: EndPoint,
    pub b: EndPoint,
    pub capacity: Rational,
    pub label: Option<String>,
    pub base_face: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CutCell {
    pub id: String,
    pub volume: Rational,
    /// Index of this cell in the originating complex, when applicable.
    pub parent: Option<usize>,
}

/// Plus/minus cell assignment of one cut face (base-complex indices).
#[derive(Debug, Clone)]
pub struct SideAssignment {
    pub face: usize,
    pub plus: usize,
    pub minus: usize,
}

/// The cut manifold: a terminal network over the cells. In class mode the
/// cells coincide (index for index) with the originating complex and the
/// SOURCE/SINK arc totals both equal the cut surface area; slab mode
/// relaxes that balance for standalone two-boundary pieces.
#[derive(Debug, Clone)]
pub struct CutComplex {
    cells: Vec<CutCell>,
    arcs: Vec<CutArc>,
    slab: bool,
    side: Vec<SideAssignment>,
    cut_surface: Option<SurfaceChain>,
    cell_index: BTreeMap<String, usize>,
    cell_rank: Vec<usize>,
    total_volume: Rational,
}

/// A standalone slab description: cells plus arcs whose endpoints name
/// cells or the terminals "SOURCE"/"SINK".
#[derive(Debug, Clone)]
pub struct SlabSpec {
    pub cells: Vec<(String, Rational)>,
    pub arcs: Vec<SlabArc>,
}

#[derive(Debug, Clone)]
pub struct SlabArc {
    pub a: String,
    pub b: String,
    pub capacity: Rational,
    pub label: Option<String>,
}

/// An interior separating cut of a cut complex, given by the region of
/// cells between the SOURCE boundary and the barrier surface.
#[derive(Debug, Clone)]
pub struct Barrier {
    pub region: Region,
}

impl Barrier {
    pub fn new(cut: &CutComplex, region: Region) -> Result<Barrier> {
        if region.is_empty() || region.len() >= cut.cell_count() {
            return Err(Error::BarrierNotProper);
        }
        Ok(Barrier { region })
    }
}

fn rank_by_id(cells: &[CutCell]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&a, &b| cells[a].id.cmp(&cells[b].id));
    let mut rank = vec![0; cells.len()];
    for (pos, idx) in order.iter().enumerate() {
        rank[*idx] = pos;
    }
    rank
}

fn sum_volumes(cells: &[CutCell]) -> Rational {
    cells
        .iter()
        .map(|c| c.volume.clone())
        .fold(Rational::from_integer(0.into()), |a, b| a + b)
}

/// Cut the complex along `sigma0`. Fails when the cut surface is empty,
/// separating, or contains a self-adjacent (one-sided) face.
pub fn build_cut(
    m: &WeightedComplex,
    sigma0: &SurfaceChain,
    seed_cell: &str,
) -> Result<CutComplex> {
    if sigma0.is_empty() {
        return Err(Error::EmptyCutSurface);
    }
    for f in sigma0.iter() {
        if m.is_self_adjacent(f) {
            return Err(Error::OneSidedCutFace(m.face_id(f).to_string()));
        }
    }
    let seed = m.cell_index(seed_cell)?;

    // Breadth-first labelling of the complement of the cut. Adjacency in
    // face index order keeps discovery order deterministic.
    let n = m.cell_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for f in 0..m.face_count() {
        if sigma0.contains(f) || m.is_self_adjacent(f) {
            continue;
        }
        let (a, b) = m.face_cells(f);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![usize::MAX; n];
    let mut order = vec![usize::MAX; n];
    let mut next_order = 0usize;
    let mut queue = VecDeque::from([seed]);
    dist[seed] = 0;
    order[seed] = 0;
    next_order += 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                order[v] = next_order;
                next_order += 1;
                queue.push_back(v);
            }
        }
    }
    if let Some(i) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(Error::SeparatingCut(m.cell_id(i).to_string()));
    }

    let mut arcs = Vec::new();
    let mut side = Vec::new();
    for f in 0..m.face_count() {
        if m.is_self_adjacent(f) {
            continue; // zero boundary coefficient, inert in every cut
        }
        let (a, b) = m.face_cells(f);
        if sigma0.contains(f) {
            let (plus, minus) = if (dist[a], order[a]) < (dist[b], order[b]) {
                (a, b)
            } else {
                (b, a)
            };
            arcs.push(CutArc {
                a: EndPoint::Source,
                b: EndPoint::Cell(plus),
                capacity: m.face_area(f).clone(),
                label: Some(format!("{}+", m.face_id(f))),
                base_face: Some(f),
            });
            arcs.push(CutArc {
                a: EndPoint::Cell(minus),
                b: EndPoint::Sink,
                capacity: m.face_area(f).clone(),
                label: Some(format!("{}-", m.face_id(f))),
                base_face: Some(f),
            });
            side.push(SideAssignment {
                face: f,
                plus,
                minus,
            });
        } else {
            arcs.push(CutArc {
                a: EndPoint::Cell(a),
                b: EndPoint::Cell(b),
                capacity: m.face_area(f).clone(),
                label: Some(m.face_id(f).to_string()),
                base_face: Some(f),
            });
        }
    }

    let cells: Vec<CutCell> = (0..n)
        .map(|i| CutCell {
            id: m.cell_id(i).to_string(),
            volume: m.cell_volume(i).clone(),
            parent: Some(i),
        })
        .collect();
    let cell_index = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.clone(), i))
        .collect();
    let cell_rank = rank_by_id(&cells);
    let total_volume = sum_volumes(&cells);
    Ok(CutComplex {
        cells,
        arcs,
        slab: false,
        side,
        cut_surface: Some(sigma0.clone()),
        cell_index,
        cell_rank,
        total_volume,
    })
}

/// Build a standalone slab-mode cut complex. Boundary areas need not
/// balance; both terminals must carry at least one arc.
pub fn make_slab(spec: &SlabSpec) -> Result<CutComplex> {
    let mut cells = Vec::new();
    let mut cell_index = BTreeMap::new();
    for (id, volume) in &spec.cells {
        if id == SOURCE_NAME || id == SINK_NAME {
            return Err(Error::ReservedId(id.clone()));
        }
        if *volume <= Rational::from_integer(0.into()) {
            return Err(Error::NonPositiveWeight {
                locus: format!("cell {id}"),
                value: format_rational(volume),
            });
        }
        if cell_index.insert(id.clone(), cells.len()).is_some() {
            return Err(Error::DuplicateId(id.clone()));
        }
        cells.push(CutCell {
            id: id.clone(),
            volume: volume.clone(),
            parent: None,
        });
    }
    if cells.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let endpoint = |name: &str| -> Result<EndPoint> {
        match name {
            SOURCE_NAME => Ok(EndPoint::Source),
            SINK_NAME => Ok(EndPoint::Sink),
            other => cell_index
                .get(other)
                .copied()
                .map(EndPoint::Cell)
                .ok_or_else(|| Error::DanglingId(other.to_string())),
        }
    };
    let mut arcs = Vec::new();
    let (mut has_source, mut has_sink) = (false, false);
    for arc in &spec.arcs {
        if arc.capacity <= Rational::from_integer(0.into()) {
            return Err(Error::NonPositiveWeight {
                locus: format!("arc {}-{}", arc.a, arc.b),
                value: format_rational(&arc.capacity),
            });
        }
        let a = endpoint(&arc.a)?;
        let b = endpoint(&arc.b)?;
        has_source |= a == EndPoint::Source || b == EndPoint::Source;
        has_sink |= a == EndPoint::Sink || b == EndPoint::Sink;
        arcs.push(CutArc {
            a,
            b,
            capacity: arc.capacity.clone(),
            label: arc.label.clone(),
            base_face: None,
        });
    }
    if !has_source {
        return Err(Error::TerminalsNotSeparated(
            "no SOURCE arcs (SOURCE unreachable)".into(),
        ));
    }
    if !has_sink {
        return Err(Error::TerminalsNotSeparated(
            "no SINK arcs (SINK unreachable)".into(),
        ));
    }
    let cell_rank = rank_by_id(&cells);
    let total_volume = sum_volumes(&cells);
    Ok(CutComplex {
        cells,
        arcs,
        slab: true,
        side: Vec::new(),
        cut_surface: None,
        cell_index,
        cell_rank,
        total_volume,
    })
}

/// Convenience: a path slab SOURCE -(c0)- x1 -(c1)- x2 ... -(ck)- SINK.
/// `caps` has one more entry than `volumes`.
pub fn path_slab(caps: &[Rational], volumes: &[Rational]) -> Result<CutComplex> {
    assert_eq!(caps.len(), volumes.len() + 1, "caps must bracket the cells");
    let cells: Vec<(String, Rational)> = volumes
        .iter()
        .enumerate()
        .map(|(i, v)| (format!("x{}", i + 1), v.clone()))
        .collect();
    let mut arcs = Vec::new();
    for (i, cap) in caps.iter().enumerate() {
        let a = if i == 0 {
            SOURCE_NAME.to_string()
        } else {
            format!("x{i}")
        };
        let b = if i == volumes.len() {
            SINK_NAME.to_string()
        } else {
            format!("x{}", i + 1)
        };
        arcs.push(SlabArc {
            a,
            b,
            capacity: cap.clone(),
            label: None,
        });
    }
    make_slab(&SlabSpec { cells, arcs })
}

impl CutComplex {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }
    pub fn cell(&self, i: usize) -> &CutCell {
        &self.cells[i]
    }
    pub fn cell_id(&self, i: usize) -> &str {
        &self.cells[i].id
    }
    pub fn cell_rank(&self, i: usize) -> usize {
        self.cell_rank[i]
    }
    pub fn cell_index(&self, id: &str) -> Result<usize> {
        self.cell_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownCell(id.to_string()))
    }
    pub fn arcs(&self) -> &[CutArc] {
        &self.arcs
    }
    pub fn is_slab(&self) -> bool {
        self.slab
    }
    pub fn side_assignment(&self) -> &[SideAssignment] {
        &self.side
    }
    pub fn cut_surface(&self) -> Option<&SurfaceChain> {
        self.cut_surface.as_ref()
    }
    pub fn total_volume(&self) -> &Rational {
        &self.total_volume
    }

    pub fn volume(&self, region: &Region) -> Rational {
        region
            .iter()
            .map(|c| self.cells[c].volume.clone())
            .fold(Rational::from_integer(0.into()), |a, b| a + b)
    }

    pub fn all_cells(&self) -> Region {
        Region::from_indices(0..self.cells.len())
    }

    pub fn complement(&self, region: &Region) -> Region {
        Region::from_indices((0..self.cells.len()).filter(|c| !region.contains(*c)))
    }

    pub fn region_from_ids<I, S>(&self, ids: I) -> Result<Region>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut cells = Vec::new();
        for id in ids {
            cells.push(self.cell_index(id.as_ref())?);
        }
        Ok(Region::from_indices(cells))
    }

    pub fn cell_ids(&self, region: &Region) -> Vec<String> {
        let mut ids: Vec<&str> = region.iter().map(|c| self.cells[c].id.as_str()).collect();
        ids.sort_unstable();
        ids.into_iter().map(String::from).collect()
    }

    pub fn compare_regions(&self, a: &Region, b: &Region) -> std::cmp::Ordering {
        let mut ka: Vec<usize> = a.iter().map(|c| self.cell_rank[c]).collect();
        let mut kb: Vec<usize> = b.iter().map(|c| self.cell_rank[c]).collect();
        ka.sort_unstable();
        kb.sort_unstable();
        ka.cmp(&kb)
    }

    /// Total capacity of arcs with exactly one endpoint on the SOURCE
    /// side of the region. Boundary copies count once per copy: the plus
    /// copy when its cell lies outside, the minus copy when its cell lies
    /// inside.
    pub fn cut_value(&self, region: &Region) -> Rational {
        let mut total = Rational::from_integer(0.into());
        for arc in &self.arcs {
            if arc.a.source_side(region) != arc.b.source_side(region) {
                total += arc.capacity.clone();
            }
        }
        total
    }

    /// Area of the SOURCE boundary: the cut value of the empty region.
    pub fn source_area(&self) -> Rational {
        self.cut_value(&Region::default())
    }

    /// Area of the SINK boundary: the cut value of the full region.
    pub fn sink_area(&self) -> Rational {
        self.cut_value(&self.all_cells())
    }

    /// Labels of the arcs crossed by a region's cut, sorted.
    pub fn surface_labels(&self, region: &Region) -> Vec<String> {
        let mut labels = Vec::new();
        for (i, arc) in self.arcs.iter().enumerate() {
            if arc.a.source_side(region) != arc.b.source_side(region) {
                labels.push(arc.label.clone().unwrap_or_else(|| format!("arc{i}")));
            }
        }
        labels.sort_unstable();
        labels
    }

    /// The class member carried by a region of a class-mode complex:
    /// the chain of base faces consisting of interior crossings plus the
    /// cut faces whose incident cells lie on the same side. Its area is
    /// `cut_value` minus twice any double-paid copies.
    pub fn class_member(&self, region: &Region) -> Option<SurfaceChain> {
        let sigma0 = self.cut_surface.as_ref()?;
        let mut faces = Vec::new();
        for arc in &self.arcs {
            if let (EndPoint::Cell(u), EndPoint::Cell(v), Some(f)) = (arc.a, arc.b, arc.base_face)
            {
                if region.contains(u) != region.contains(v) {
                    faces.push(f);
                }
            }
        }
        for s in &self.side {
            if region.contains(s.plus) == region.contains(s.minus) {
                faces.push(s.face);
            }
        }
        let _ = sigma0;
        Some(SurfaceChain::from_indices(faces))
    }

    /// Swap the roles of the terminals (and of plus/minus sides).
    pub fn mirrored(&self) -> CutComplex {
        let flip = |e: EndPoint| match e {
            EndPoint::Source => EndPoint::Sink,
            EndPoint::Sink => EndPoint::Source,
            cell => cell,
        };
        CutComplex {
            cells: self.cells.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| CutArc {
                    a: flip(a.a),
                    b: flip(a.b),
                    capacity: a.capacity.clone(),
                    label: a.label.clone(),
                    base_face: a.base_face,
                })
                .collect(),
            slab: self.slab,
            side: self
                .side
                .iter()
                .map(|s| SideAssignment {
                    face: s.face,
                    plus: s.minus,
                    minus: s.plus,
                })
                .collect(),
            cut_surface: self.cut_surface.clone(),
            cell_index: self.cell_index.clone(),
            cell_rank: self.cell_rank.clone(),
            total_volume: self.total_volume.clone(),
        }
    }

    /// Restrict to the cells between the SOURCE boundary and a barrier.
    /// Arcs crossing the barrier become SINK arcs with the same
    /// capacities; SOURCE arcs are unchanged. A SOURCE arc whose cell
    /// lies outside the region hugs the barrier and is carried as a
    /// SOURCE-SINK arc paid by every cut, so cut values of regions inside
    /// the barrier are preserved exactly.
    pub fn restrict(&self, barrier: &Barrier) -> Result<CutComplex> {
        let region = &barrier.region;
        if region.is_empty() || region.len() >= self.cells.len() {
            return Err(Error::BarrierNotProper);
        }
        let mut new_index = vec![usize::MAX; self.cells.len()];
        let mut cells = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            if region.contains(c) {
                new_index[c] = cells.len();
                cells.push(cell.clone());
            }
        }
        let mut arcs = Vec::new();
        for arc in &self.arcs {
            let mapped = match (arc.a, arc.b) {
                (EndPoint::Cell(u), EndPoint::Cell(v)) => {
                    match (region.contains(u), region.contains(v)) {
                        (true, true) => {
                            Some((EndPoint::Cell(new_index[u]), EndPoint::Cell(new_index[v])))
                        }
                        (true, false) => Some((EndPoint::Cell(new_index[u]), EndPoint::Sink)),
                        (false, true) => Some((EndPoint::Cell(new_index[v]), EndPoint::Sink)),
                        (false, false) => None,
                    }
                }
                (EndPoint::Source, EndPoint::Cell(p)) | (EndPoint::Cell(p), EndPoint::Source) => {
                    if region.contains(p) {
                        Some((EndPoint::Source, EndPoint::Cell(new_index[p])))
                    } else {
                        // Barrier hugs the SOURCE boundary here.
                        Some((EndPoint::Source, EndPoint::Sink))
                    }
                }
                (EndPoint::Sink, EndPoint::Cell(m)) | (EndPoint::Cell(m), EndPoint::Sink) => {
                    if region.contains(m) {
                        Some((EndPoint::Cell(new_index[m]), EndPoint::Sink))
                    } else {
                        None
                    }
                }
                (EndPoint::Source, EndPoint::Sink) | (EndPoint::Sink, EndPoint::Source) => {
                    Some((EndPoint::Source, EndPoint::Sink))
                }
                (EndPoint::Source, EndPoint::Source) | (EndPoint::Sink, EndPoint::Sink) => {
                    Some((arc.a, arc.b))
                }
            };
            if let Some((a, b)) = mapped {
                arcs.push(CutArc {
                    a,
                    b,
                    capacity: arc.capacity.clone(),
                    label: arc.label.clone(),
                    base_face: arc.base_face,
                });
            }
        }
        let cell_index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.clone(), i))
            .collect();
        let cell_rank = rank_by_id(&cells);
        let total_volume = sum_volumes(&cells);
        Ok(CutComplex {
            cells,
            arcs,
            slab: true,
            side: Vec::new(),
            cut_surface: None,
            cell_index,
            cell_rank,
            total_volume,
        })
    }

    /// Map a region of a restricted slab back into this complex's cells.
    pub fn lift_region(&self, barrier: &Barrier, slab_region: &Region) -> Region {
        let ordered: Vec<usize> = barrier.region.iter().collect();
        Region::from_indices(slab_region.iter().map(|i| ordered[i]))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CutDoc {
    format: String,
    mode: String,
    cells: Vec<CutCellDoc>,
    arcs: Vec<CutArcDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    cut_surface: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    side_assignment: Vec<SideDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CutCellDoc {
    id: String,
    volume: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CutArcDoc {
    a: String,
    b: String,
    capacity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    face: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SideDoc {
    face: String,
    plus: String,
    minus: String,
}

/// Emit a `homcmc-cut/1` document. Class-mode complexes record their cut
/// surface and side assignment for inspection; reloading always yields a
/// slab-mode complex.
pub fn emit_cut_json(cut: &CutComplex, base: Option<&WeightedComplex>) -> String {
    let name = |e: EndPoint| match e {
        EndPoint::Source => SOURCE_NAME.to_string(),
        EndPoint::Sink => SINK_NAME.to_string(),
        EndPoint::Cell(i) => cut.cells[i].id.clone(),
    };
    let doc = CutDoc {
        format: CUT_FORMAT.to_string(),
        mode: if cut.slab { "slab" } else { "class" }.to_string(),
        cells: cut
            .cells
            .iter()
            .map(|c| CutCellDoc {
                id: c.id.clone(),
                volume: format_rational(&c.volume),
            })
            .collect(),
        arcs: cut
            .arcs
            .iter()
            .map(|a| CutArcDoc {
                a: name(a.a),
                b: name(a.b),
                capacity: format_rational(&a.capacity),
                face: a.label.clone(),
            })
            .collect(),
        cut_surface: match (base, &cut.cut_surface) {
            (Some(m), Some(chain)) => m.face_ids(chain),
            _ => Vec::new(),
        },
        side_assignment: match base {
            Some(m) => cut
                .side
                .iter()
                .map(|s| SideDoc {
                    face: m.face_id(s.face).to_string(),
                    plus: m.cell_id(s.plus).to_string(),
                    minus: m.cell_id(s.minus).to_string(),
                })
                .collect(),
            None => Vec::new(),
        },
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

/// Reload a cut document as a slab-mode complex.
pub fn load_cut_json(text: &str) -> Result<CutComplex> {
    let doc: CutDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        locus: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if doc.format != CUT_FORMAT {
        return Err(Error::UnsupportedFormat(doc.format));
    }
    let cells = doc
        .cells
        .iter()
        .map(|c| {
            let v = parse_rational(&c.volume).map_err(|reason| Error::BadWeight {
                locus: format!("cell {}", c.id),
                value: c.volume.clone(),
                reason,
            })?;
            Ok((c.id.clone(), v))
        })
        .collect::<Result<Vec<_>>>()?;
    let arcs = doc
        .arcs
        .iter()
        .map(|a| {
            let cap = parse_rational(&a.capacity).map_err(|reason| Error::BadWeight {
                locus: format!("arc {}-{}", a.a, a.b),
                value: a.capacity.clone(),
                reason,
            })?;
            Ok(SlabArc {
                a: a.a.clone(),
                b: a.b.clone(),
                capacity: cap,
                label: a.face.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    make_slab(&SlabSpec { cells, arcs })
}
