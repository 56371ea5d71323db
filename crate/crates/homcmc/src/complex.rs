//! Weighted cellulations of closed 3-manifolds and their mod-2 homology.
//!
//! The model is purely combinatorial: cells carry exact rational volumes,
//! faces carry exact rational areas together with the unordered pair of
//! incident cells (the pair may coincide: a self-adjacent face). Surfaces
//! are face sets (2-chains over GF(2)), regions are cell sets (3-chains).
//! The boundary of a region consists of the faces with exactly one
//! incident cell inside it; self-adjacent faces have zero boundary
//! coefficient and never appear in any boundary.
//!
//! A complex is immutable after loading and safe to share across threads;
//! every operation here is a pure function of its inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;
use crate::rational::{format_rational, parse_rational, Rational};

pub const COMPLEX_FORMAT: &str = "homcmc-complex/1";

/// A set of faces: a 2-chain over GF(2), indexed into a complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurfaceChain {
    faces: BTreeSet<usize>,
}

impl SurfaceChain {
    pub fn from_indices<I: IntoIterator<Item = usize>>(faces: I) -> Self {
        SurfaceChain {
            faces: faces.into_iter().collect(),
        }
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces.iter().copied()
    }
    pub fn len(&self) -> usize {
        self.faces.len()
    }
    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
    pub fn contains(&self, face: usize) -> bool {
        self.faces.contains(&face)
    }
    pub fn symmetric_difference(&self, other: &SurfaceChain) -> SurfaceChain {
        SurfaceChain {
            faces: self.faces.symmetric_difference(&other.faces).copied().collect(),
        }
    }
}

/// A set of cells: a 3-chain, indexed into a complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Region {
    cells: BTreeSet<usize>,
}

impl Region {
    pub fn from_indices<I: IntoIterator<Item = usize>>(cells: I) -> Self {
        Region {
            cells: cells.into_iter().collect(),
        }
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().copied()
    }
    pub fn len(&self) -> usize {
        self.cells.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
    pub fn contains(&self, cell: usize) -> bool {
        self.cells.contains(&cell)
    }
    pub fn insert(&mut self, cell: usize) {
        self.cells.insert(cell);
    }
    pub fn symmetric_difference(&self, other: &Region) -> Region {
        Region {
            cells: self.cells.symmetric_difference(&other.cells).copied().collect(),
        }
    }
    pub fn is_subset(&self, other: &Region) -> bool {
        self.cells.is_subset(&other.cells)
    }
}

/// A user surface resolved against a complex, with warnings for
/// self-adjacent members (legal but homologically inert).
#[derive(Debug, Clone)]
pub struct ResolvedSurface {
    pub chain: SurfaceChain,
    pub self_adjacent: Vec<String>,
}

#[derive(Debug, Clone)]
struct Cell {
    id: String,
    volume: Rational,
}

#[derive(Debug, Clone)]
struct Face {
    id: String,
    area: Rational,
    cells: (usize, usize),
}

/// The discrete closed 3-manifold.
#[derive(Debug, Clone)]
pub struct WeightedComplex {
    cells: Vec<Cell>,
    faces: Vec<Face>,
    surfaces: BTreeMap<String, SurfaceChain>,
    cell_index: BTreeMap<String, usize>,
    face_index: BTreeMap<String, usize>,
    /// cell_rank[i] = position of cell i when cells are sorted by id.
    cell_rank: Vec<usize>,
    face_rank: Vec<usize>,
    total_volume: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    format: String,
    cells: Vec<CellDoc>,
    faces: Vec<FaceDoc>,
    #[serde(default)]
    surfaces: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    id: String,
    volume: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceDoc {
    id: String,
    area: String,
    cells: [String; 2],
}

#[derive(Serialize)]
struct ComplexDocOut<'a> {
    format: &'a str,
    cells: Vec<CellDocOut>,
    faces: Vec<FaceDocOut>,
    surfaces: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
struct CellDocOut {
    id: String,
    volume: String,
}

#[derive(Serialize)]
struct FaceDocOut {
    id: String,
    area: String,
    cells: [String; 2],
}

fn parse_weight(locus: &str, value: &str) -> Result<Rational> {
    let r = parse_rational(value).map_err(|reason| Error::BadWeight {
        locus: locus.to_string(),
        value: value.to_string(),
        reason,
    })?;
    if r <= Rational::from_integer(0.into()) {
        return Err(Error::NonPositiveWeight {
            locus: locus.to_string(),
            value: value.to_string(),
        });
    }
    Ok(r)
}

fn rank_by_id<T, F: Fn(&T) -> &str>(items: &[T], id: F) -> Vec<usize> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| id(&items[a]).cmp(id(&items[b])));
    let mut rank = vec![0usize; items.len()];
    for (pos, idx) in order.iter().enumerate() {
        rank[*idx] = pos;
    }
    rank
}

impl WeightedComplex {
    /// Load and validate a complex from `homcmc-complex/1` JSON text.
    pub fn from_json_str(text: &str) -> Result<WeightedComplex> {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
            locus: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_doc(doc)
    }

    pub fn load<R: Read>(mut reader: R) -> Result<WeightedComplex> {
        let mut text = String::new();
        reader.read_to_string(&mut text).map_err(|e| Error::Parse {
            locus: "input".into(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }

    fn from_doc(doc: ComplexDoc) -> Result<WeightedComplex> {
        if doc.format != COMPLEX_FORMAT {
            return Err(Error::UnsupportedFormat(doc.format));
        }
        if doc.cells.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut cells = Vec::with_capacity(doc.cells.len());
        let mut cell_index = BTreeMap::new();
        for c in &doc.cells {
            let volume = parse_weight(&format!("cell {}", c.id), &c.volume)?;
            if cell_index.insert(c.id.clone(), cells.len()).is_some() {
                return Err(Error::DuplicateId(c.id.clone()));
            }
            cells.push(Cell {
                id: c.id.clone(),
                volume,
            });
        }
        let mut faces = Vec::with_capacity(doc.faces.len());
        let mut face_index = BTreeMap::new();
        for f in &doc.faces {
            let area = parse_weight(&format!("face {}", f.id), &f.area)?;
            let a = *cell_index
                .get(&f.cells[0])
                .ok_or_else(|| Error::DanglingId(f.cells[0].clone()))?;
            let b = *cell_index
                .get(&f.cells[1])
                .ok_or_else(|| Error::DanglingId(f.cells[1].clone()))?;
            if face_index.insert(f.id.clone(), faces.len()).is_some() {
                return Err(Error::DuplicateId(f.id.clone()));
            }
            faces.push(Face {
                id: f.id.clone(),
                area,
                cells: (a, b),
            });
        }

        // Dual-graph connectivity over non-self-adjacent faces.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        for f in &faces {
            let (a, b) = f.cells;
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; cells.len()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Disconnected(cells[i].id.clone()));
        }

        let mut surfaces = BTreeMap::new();
        for (name, ids) in &doc.surfaces {
            let mut set = BTreeSet::new();
            for id in ids {
                let idx = *face_index
                    .get(id)
                    .ok_or_else(|| Error::DanglingId(id.clone()))?;
                set.insert(idx);
            }
            surfaces.insert(name.clone(), SurfaceChain { faces: set });
        }

        let total_volume = cells
            .iter()
            .map(|c| c.volume.clone())
            .fold(Rational::from_integer(0.into()), |a, b| a + b);
        let cell_rank = rank_by_id(&cells, |c| &c.id);
        let face_rank = rank_by_id(&faces, |f| &f.id);
        Ok(WeightedComplex {
            cells,
            faces,
            surfaces,
            cell_index,
            face_index,
            cell_rank,
            face_rank,
            total_volume,
        })
    }

    pub fn to_json_string(&self) -> String {
        let doc = ComplexDocOut {
            format: COMPLEX_FORMAT,
            cells: self
                .cells
                .iter()
                .map(|c| CellDocOut {
                    id: c.id.clone(),
                    volume: format_rational(&c.volume),
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| FaceDocOut {
                    id: f.id.clone(),
                    area: format_rational(&f.area),
                    cells: [
                        self.cells[f.cells.0].id.clone(),
                        self.cells[f.cells.1].id.clone(),
                    ],
                })
                .collect(),
            surfaces: self
                .surfaces
                .iter()
                .map(|(name, chain)| (name.clone(), self.face_ids(chain)))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
    pub fn cell_id(&self, i: usize) -> &str {
        &self.cells[i].id
    }
    pub fn face_id(&self, i: usize) -> &str {
        &self.faces[i].id
    }
    pub fn cell_volume(&self, i: usize) -> &Rational {
        &self.cells[i].volume
    }
    pub fn face_area(&self, i: usize) -> &Rational {
        &self.faces[i].area
    }
    pub fn face_cells(&self, i: usize) -> (usize, usize) {
        self.faces[i].cells
    }
    pub fn is_self_adjacent(&self, face: usize) -> bool {
        self.faces[face].cells.0 == self.faces[face].cells.1
    }
    pub fn total_volume(&self) -> &Rational {
        &self.total_volume
    }
    pub fn cell_rank(&self, i: usize) -> usize {
        self.cell_rank[i]
    }
    pub fn face_rank(&self, i: usize) -> usize {
        self.face_rank[i]
    }

    pub fn cell_index(&self, id: &str) -> Result<usize> {
        self.cell_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownCell(id.to_string()))
    }
    pub fn face_index(&self, id: &str) -> Result<usize> {
        self.face_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownFace(id.to_string()))
    }

    pub fn surface(&self, name: &str) -> Result<&SurfaceChain> {
        self.surfaces
            .get(name)
            .ok_or_else(|| Error::UnknownSurface(name.to_string()))
    }
    pub fn surface_names(&self) -> impl Iterator<Item = &str> {
        self.surfaces.keys().map(|s| s.as_str())
    }

    /// Resolve face ids into a chain, flagging self-adjacent members.
    /// Every existing face set is a valid 2-chain; the only hard failure
    /// is an unknown id.
    pub fn resolve_surface<I, S>(&self, ids: I) -> Result<ResolvedSurface>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        let mut warnings = Vec::new();
        for id in ids {
            let idx = self.face_index(id.as_ref())?;
            if self.is_self_adjacent(idx) && set.insert(idx) {
                warnings.push(self.faces[idx].id.clone());
            } else {
                set.insert(idx);
            }
        }
        Ok(ResolvedSurface {
            chain: SurfaceChain { faces: set },
            self_adjacent: warnings,
        })
    }

    pub fn area(&self, chain: &SurfaceChain) -> Rational {
        chain
            .iter()
            .map(|f| self.faces[f].area.clone())
            .fold(Rational::from_integer(0.into()), |a, b| a + b)
    }

    pub fn volume(&self, region: &Region) -> Rational {
        region
            .iter()
            .map(|c| self.cells[c].volume.clone())
            .fold(Rational::from_integer(0.into()), |a, b| a + b)
    }

    /// The GF(2) boundary of a region: faces with exactly one incident
    /// cell inside. Self-adjacent faces never appear.
    pub fn boundary(&self, region: &Region) -> SurfaceChain {
        let mut set = BTreeSet::new();
        for (i, f) in self.faces.iter().enumerate() {
            let (a, b) = f.cells;
            if region.contains(a) != region.contains(b) {
                set.insert(i);
            }
        }
        SurfaceChain { faces: set }
    }

    pub fn complement(&self, region: &Region) -> Region {
        Region {
            cells: (0..self.cells.len())
                .filter(|c| !region.contains(*c))
                .collect(),
        }
    }

    /// Witness region `x` with `boundary(x) = chain`, if the chain is a
    /// boundary (null-homologous). Solved by GF(2) elimination over the
    /// face-cell incidence matrix; the free variable is fixed to zero, so
    /// in a connected complex the witness is the side not containing the
    /// eliminated reference cell.
    pub fn bounding_region(&self, chain: &SurfaceChain) -> Option<Region> {
        let equations: Vec<(Vec<usize>, bool)> = self
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let (a, b) = f.cells;
                let cols = if a == b { vec![] } else { vec![a, b] };
                (cols, chain.contains(i))
            })
            .collect();
        let solution = gf2::solve(&equations, self.cells.len())?;
        let cells: BTreeSet<usize> = solution
            .iter()
            .enumerate()
            .filter_map(|(i, &on)| on.then_some(i))
            .collect();
        Some(Region { cells })
    }

    /// Witness region for `[a] = [b]`: a region whose boundary is the
    /// symmetric difference, when one exists.
    pub fn homology_witness(&self, a: &SurfaceChain, b: &SurfaceChain) -> Option<Region> {
        self.bounding_region(&a.symmetric_difference(b))
    }

    /// Face ids of a chain, sorted by id.
    pub fn face_ids(&self, chain: &SurfaceChain) -> Vec<String> {
        let mut ids: Vec<&str> = chain.iter().map(|f| self.faces[f].id.as_str()).collect();
        ids.sort_unstable();
        ids.into_iter().map(String::from).collect()
    }

    /// Cell ids of a region, sorted by id.
    pub fn cell_ids(&self, region: &Region) -> Vec<String> {
        let mut ids: Vec<&str> = region.iter().map(|c| self.cells[c].id.as_str()).collect();
        ids.sort_unstable();
        ids.into_iter().map(String::from).collect()
    }

    /// Lexicographic order on chains viewed as sorted id lists.
    pub fn compare_chains(&self, a: &SurfaceChain, b: &SurfaceChain) -> std::cmp::Ordering {
        let mut ka: Vec<usize> = a.iter().map(|f| self.face_rank[f]).collect();
        let mut kb: Vec<usize> = b.iter().map(|f| self.face_rank[f]).collect();
        ka.sort_unstable();
        kb.sort_unstable();
        ka.cmp(&kb)
    }

    pub fn compare_regions(&self, a: &Region, b: &Region) -> std::cmp::Ordering {
        let mut ka: Vec<usize> = a.iter().map(|c| self.cell_rank[c]).collect();
        let mut kb: Vec<usize> = b.iter().map(|c| self.cell_rank[c]).collect();
        ka.sort_unstable();
        kb.sort_unstable();
        ka.cmp(&kb)
    }
}
