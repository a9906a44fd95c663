//! Band surfaces of long diagrams as ribbon graphs.
//!
//! Vertex 0 is the end annulus `V`; vertex `k` (for `k >= 1`) is the crossing
//! disc of chord `k` of the canonical diagram. Half-edges are band
//! attachments. Band `j` runs from the exit of passage `j - 1` (or the start
//! attachment of `V`) to the entry of passage `j` (or the end attachment of
//! `V`), so bands are numbered in traversal order.
//!
//! Disc rotations are stored counterclockwise starting at an over slot, so
//! slots 0 and 2 always carry the over strand:
//!
//! | sign | rotation                                    |
//! |------|---------------------------------------------|
//! | `+`  | over-in, under-in, over-out, under-out      |
//! | `-`  | over-in, under-out, over-out, under-in      |

use serde::Serialize;
use thiserror::Error;

use crate::gauss::{canonical_endpoints, Endpoint, GaussDiagram, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("2 - chi - boundary = {0} is not a non-negative even number")]
    NonIntegralGenus(i64),
    #[error("invalid traversal: {0}")]
    InvalidTraversal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    /// The end annulus; its outer circle is the distinguished boundary.
    Annulus,
    /// A crossing disc.
    Disc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Half-edges in counterclockwise order.
    pub rotation: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfEdge {
    pub vertex: usize,
    /// Index into the vertex rotation.
    pub slot: usize,
    pub band: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RibbonGraph {
    pub vertices: Vec<Vertex>,
    pub half_edges: Vec<HalfEdge>,
    /// Each band joins two half-edges; all bands are untwisted.
    pub bands: Vec<[usize; 2]>,
}

/// Euler characteristic, boundary counts and genus of one band surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub chi: i64,
    pub boundary_total: usize,
    pub boundary_distinguished: usize,
    pub genus: usize,
}

const V: usize = 0;
const V_START: usize = 0;
const V_END: usize = 1;

/// Rotation slot of each passage at a disc of the given sign:
/// `(over_in, over_out, under_in, under_out)`.
fn slots(sign: Sign) -> [usize; 4] {
    match sign {
        Sign::Pos => [0, 2, 1, 3],
        Sign::Neg => [0, 2, 3, 1],
    }
}

pub fn build_band_surface(d: &GaussDiagram) -> RibbonGraph {
    let d = d.canonicalize();
    let n = d.crossings();
    let mut vertices = Vec::with_capacity(n + 1);
    vertices.push(Vertex { kind: VertexKind::Annulus, rotation: vec![V_START, V_END] });
    let mut half_edges = vec![
        HalfEdge { vertex: V, slot: 0, band: 0 },
        HalfEdge { vertex: V, slot: 1, band: 2 * n },
    ];
    for vertex in 1..=n {
        let base = half_edges.len();
        vertices.push(Vertex { kind: VertexKind::Disc, rotation: (base..base + 4).collect() });
        for slot in 0..4 {
            half_edges.push(HalfEdge { vertex, slot, band: usize::MAX });
        }
    }
    let attach = |label: u32, slot: usize| 2 + 4 * (label as usize - 1) + slot;

    let mut bands = Vec::with_capacity(2 * n + 1);
    let mut from = V_START;
    for (j, e) in d.endpoints().iter().enumerate() {
        let s = slots(e.sign);
        let (slot_in, slot_out) = match e.role {
            Role::Over => (s[0], s[1]),
            Role::Under => (s[2], s[3]),
        };
        let to = attach(e.label, slot_in);
        bands.push([from, to]);
        half_edges[from].band = j;
        half_edges[to].band = j;
        from = attach(e.label, slot_out);
    }
    bands.push([from, V_END]);
    half_edges[from].band = 2 * n;
    RibbonGraph { vertices, half_edges, bands }
}

impl RibbonGraph {
    pub fn crossing_discs(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Disc).count()
    }

    fn band_partner(&self, h: usize) -> usize {
        let [a, b] = self.bands[self.half_edges[h].band];
        if a == h {
            b
        } else {
            a
        }
    }

    fn rotation_next(&self, h: usize) -> usize {
        let he = self.half_edges[h];
        let rot = &self.vertices[he.vertex].rotation;
        rot[(he.slot + 1) % rot.len()]
    }

    /// The traversal that reads bands in index order.
    pub fn natural_traversal(&self) -> Vec<usize> {
        (0..self.bands.len()).collect()
    }
}

pub fn euler_characteristic(rg: &RibbonGraph) -> i64 {
    rg.crossing_discs() as i64 - rg.bands.len() as i64
}

/// `(total, distinguished)` boundary circles.
///
/// Traced cycles are orbits of `h -> rotation_next(band_partner(h))`; the
/// outer circle of `V` is one more component, and the only distinguished one.
pub fn boundary_components(rg: &RibbonGraph) -> (usize, usize) {
    let mut seen = vec![false; rg.half_edges.len()];
    let mut cycles = 0;
    for start in 0..rg.half_edges.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = rg.rotation_next(rg.band_partner(h));
        }
    }
    let annuli = rg.vertices.iter().filter(|v| v.kind == VertexKind::Annulus).count();
    (cycles + annuli, annuli)
}

pub fn summarize(rg: &RibbonGraph) -> Result<SurfaceSummary, SurfaceError> {
    let chi = euler_characteristic(rg);
    let (total, distinguished) = boundary_components(rg);
    let twice = 2 - chi - total as i64;
    if twice < 0 || twice % 2 != 0 {
        return Err(SurfaceError::NonIntegralGenus(twice));
    }
    Ok(SurfaceSummary {
        chi,
        boundary_total: total,
        boundary_distinguished: distinguished,
        genus: (twice / 2) as usize,
    })
}

/// Genus of this diagram's band surface (not the minimum over its class).
pub fn supporting_genus(d: &GaussDiagram) -> Result<usize, SurfaceError> {
    summarize(&build_band_surface(d)).map(|s| s.genus)
}

/// Reads the diagram off a band walk from `V` back to `V`.
///
/// A strand entering a disc at slot `s` leaves at slot `s + 2`. Slots 0 and 2
/// are the over strand; the sign is `+` exactly when the under strand enters
/// one step counterclockwise after the over strand.
pub fn gauss_from_surface(rg: &RibbonGraph, traversal: &[usize]) -> Result<GaussDiagram, SurfaceError> {
    let bad = |msg: String| Err(SurfaceError::InvalidTraversal(msg));
    if traversal.len() != rg.bands.len() {
        return bad(format!("walk has {} bands, surface has {}", traversal.len(), rg.bands.len()));
    }
    let mut used = vec![false; rg.bands.len()];
    // per disc: (over entry slot, under entry slot, first-seen order)
    let mut entries: Vec<[Option<usize>; 2]> = vec![[None, None]; rg.vertices.len()];
    let mut passages: Vec<(usize, Role)> = Vec::new();
    let mut at = V_START;
    for (step, &band) in traversal.iter().enumerate() {
        if band >= rg.bands.len() || used[band] {
            return bad(format!("band {band} at step {step} is missing or repeated"));
        }
        used[band] = true;
        let [a, b] = rg.bands[band];
        let far = if a == at {
            b
        } else if b == at {
            a
        } else {
            return bad(format!("band {band} at step {step} does not continue the walk"));
        };
        let he = rg.half_edges[far];
        if he.vertex == V {
            if step + 1 != traversal.len() || far != V_END {
                return bad(format!("walk reaches the end annulus early at step {step}"));
            }
            at = far;
            break;
        }
        let role = if he.slot % 2 == 0 { Role::Over } else { Role::Under };
        let idx = usize::from(role == Role::Under);
        if entries[he.vertex][idx].is_some() {
            return bad(format!("disc {} entered twice along one strand", he.vertex));
        }
        entries[he.vertex][idx] = Some(he.slot);
        passages.push((he.vertex, role));
        at = rg.vertices[he.vertex].rotation[(he.slot + 2) % 4];
    }
    if at != V_END {
        return bad("walk does not end at the end annulus".into());
    }
    let mut endpoints = Vec::with_capacity(passages.len());
    for (vertex, role) in passages {
        let (Some(o), Some(u)) = (entries[vertex][0], entries[vertex][1]) else {
            return bad(format!("disc {vertex} is passed only once"));
        };
        let sign = if u == (o + 1) % 4 { Sign::Pos } else { Sign::Neg };
        endpoints.push(Endpoint::new(vertex as u32, role, sign));
    }
    Ok(GaussDiagram::from_valid(canonical_endpoints(&endpoints)))
}
