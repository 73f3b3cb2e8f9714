//! Serializable reports. Complex numbers are written as `"re,im"` strings
//! that parse back bit for bit.

use std::fmt;

use ewalk_core::rotation::{Face, RotationSystem, Surface};
use ewalk_core::walk::{Coin, C64};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx(pub C64);

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cx {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Cx;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a complex number as \"re,im\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Cx, E> {
                crate::input::parse_complex(v).map(Cx).map_err(E::custom)
            }
        }
        d.deserialize_str(V)
    }
}

pub fn cx(v: &[C64]) -> Vec<Cx> {
    v.iter().copied().map(Cx).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoinReport {
    pub a: Cx,
    pub b: Cx,
    pub c: Cx,
    pub d: Cx,
    pub omega: Cx,
}

impl From<&Coin> for CoinReport {
    fn from(c: &Coin) -> Self {
        Self {
            a: Cx(c.a),
            b: Cx(c.b),
            c: Cx(c.c),
            d: Cx(c.d),
            omega: Cx(c.omega()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub orientable: bool,
    /// Genus for orientable surfaces, crosscap number otherwise.
    pub genus: usize,
    pub euler_genus: usize,
    pub label: String,
}

impl From<Surface> for SurfaceReport {
    fn from(s: Surface) -> Self {
        let euler_genus = if s.is_orientable() { 2 * s.genus() } else { s.genus() };
        Self {
            orientable: s.is_orientable(),
            genus: s.genus(),
            euler_genus,
            label: s.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceReport {
    pub length: usize,
    /// The facial walk as `[tail, head]` vertex pairs.
    pub walk: Vec<[usize; 2]>,
    /// Edges traversed in both directions, as vertex pairs.
    pub self_intersections: Vec<[usize; 2]>,
}

impl FaceReport {
    pub fn new(rs: &RotationSystem, f: &Face) -> Self {
        let g = rs.graph();
        Self {
            length: f.len(),
            walk: f.arcs().map(|e| [g.origin(e), g.terminus(e)]).collect(),
            self_intersections: f
                .self_intersections()
                .iter()
                .map(|si| {
                    let (u, v) = g.edge_ends(si.edge);
                    [u, v]
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacesReport {
    /// The system in canonical file form.
    pub system: String,
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub surface: SurfaceReport,
    /// Face lengths, descending.
    pub lengths: Vec<usize>,
    pub faces: Vec<FaceReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenusReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub surface: SurfaceReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrientableReport {
    pub orientable: bool,
    /// Spanning-tree flips remove every twist.
    pub spanning_tree: bool,
    /// The twisted double cover is disconnected.
    pub double_cover: bool,
    /// Sign pattern of the scattering matrix; absent when the coin does not
    /// have a real positive `a`.
    pub scattering: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailLabel {
    pub tail: usize,
    /// Base arc `[u, v]` of the island arc carrying the tail.
    pub arc: [usize; 2],
    pub sheet: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockReport {
    /// Face of the base embedding.
    pub face: usize,
    /// The reversed copy of the face.
    pub chiral: bool,
    pub tails: Vec<usize>,
    /// Row-major.
    pub matrix: Vec<Vec<Cx>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterReport {
    pub coin: CoinReport,
    pub dim: usize,
    pub unitarity_defect: f64,
    pub tails: Vec<TailLabel>,
    pub blocks: Vec<BlockReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComfortSplit {
    pub total: f64,
    pub island: f64,
    pub bridge: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceTermReport {
    pub face: usize,
    pub length: usize,
    pub self_intersections: usize,
    pub length_term: f64,
    pub self_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageReport {
    pub value: f64,
    pub per_tail_mean: f64,
    pub trace_form: f64,
    pub face_form: f64,
    pub positive_form: Option<f64>,
    pub faces: Vec<FaceTermReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComfortReport {
    pub coin: CoinReport,
    pub inflow: String,
    /// Set for a single inflow vector.
    pub comfort: Option<ComfortSplit>,
    /// Set for the average over single-tail inflows.
    pub average: Option<AverageReport>,
    /// `lim delta^2 E[E]` as `a -> 1`, with `--limit`.
    pub limit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub outflow_vs_scattering: f64,
    pub state_vs_closed_form: f64,
    pub comfort_vs_formula: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub coin: CoinReport,
    pub inflow: String,
    pub steps: usize,
    pub residual: f64,
    pub minus: Vec<Cx>,
    pub plus: Vec<Cx>,
    pub bridge: Vec<Cx>,
    pub outflow: Vec<Cx>,
    /// Half the squared norm of the internal state.
    pub comfort: f64,
    /// Largest gaps against the closed forms, when they apply.
    pub comparison: Option<Comparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class: usize,
    pub index: u64,
    pub orbit_size: usize,
    pub orientable: bool,
    pub genus: usize,
    pub surface: String,
    pub faces: Vec<usize>,
    pub self_intersections: Vec<usize>,
    /// `E[E]` for each requested `a`, aligned with `EnumerateReport::a`.
    pub comfort: Vec<f64>,
    pub limit: f64,
    pub rank: Option<usize>,
    pub tie_group: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub vertices: usize,
    pub edges: usize,
    pub a: Vec<f64>,
    pub ranked_at: Option<f64>,
    pub rows: Vec<ClassRow>,
}
