//! Orientable fatgraphs from plane permutations.
//!
//! [`hat`] inserts a barred companion `x_v` after every element `v` of the
//! `s` sequence. The new `pi` agrees with the old one on originals and sends
//! `x_v` to `x_{pi⁻¹(s(v))}`, which makes the new diagonal the fixed-point-free
//! involution pairing `x_v` with `pi(v)`. Reading the result as
//! `(alpha, beta, gamma) = (diagonal, pi, s)` gives a fatgraph with
//! `gamma = alpha ∘ beta`, and its genus follows from Euler's formula
//! `V - E + F = 2 - 2g`.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm_core::{GroundSet, PermError, Permutation};
use crate::plane_perm::{skew_symmetric, PlaneError, PlanePermutation};
use crate::signed_perm::SignedPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FatgraphError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error("alpha is not a fixed-point-free involution")]
    AlphaNotMatching,
    #[error("gamma differs from alpha ∘ beta")]
    GammaMismatch,
    #[error("fatgraph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("Euler characteristic {0} does not give a nonnegative integral genus")]
    BadEuler(i64),
    #[error("unknown export format {0:?} (expected json or dot)")]
    UnknownFormat(String),
    #[error("malformed fatgraph json: {0}")]
    Json(String),
}

/// Offset used to encode the barred companion `x_v` as `v + offset`.
pub fn bar_offset(ground: &GroundSet) -> i32 {
    let max_abs = ground
        .elements()
        .iter()
        .map(|x| x.unsigned_abs())
        .max()
        .unwrap_or(0) as i32;
    10 * (max_abs + 1)
}

/// Doubles the ground set so that the diagonal becomes a fixed-point-free involution.
pub fn hat(pp: &PlanePermutation) -> Result<PlanePermutation, FatgraphError> {
    let ground = pp.ground();
    let off = bar_offset(ground);
    let originals = ground.elements();
    let elements: Vec<i32> = originals
        .iter()
        .copied()
        .chain(originals.iter().map(|&v| v + off))
        .collect();
    let doubled = Arc::new(GroundSet::new(elements)?.with_bar_offset(off));

    let seq = pp.s_sequence();
    let hat_seq: Vec<i32> = seq.iter().flat_map(|&v| [v, v + off]).collect();
    let s_hat = Permutation::long_cycle(Arc::clone(&doubled), &hat_seq)?;

    let pi = pp.pi();
    let pi_inv = pi.inverse();
    let s = pp.s();
    let pi_hat = Permutation::from_fn(Arc::clone(&doubled), |x| {
        if ground.contains(x) {
            pi.image(x).expect("original element")
        } else {
            let v = x - off;
            let next = s.image(v).expect("original element");
            pi_inv.image(next).expect("original element") + off
        }
    })?;
    Ok(PlanePermutation::new(s_hat, pi_hat, pp.anchor())?)
}

/// `(alpha, beta, gamma)` on an even set of half-edges with `gamma = alpha ∘ beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fatgraph {
    alpha: Permutation,
    beta: Permutation,
    gamma: Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatgraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
}

impl Fatgraph {
    pub fn new(
        alpha: Permutation,
        beta: Permutation,
        gamma: Permutation,
    ) -> Result<Self, FatgraphError> {
        if !alpha.is_fixed_point_free_involution() {
            return Err(FatgraphError::AlphaNotMatching);
        }
        if alpha.compose(&beta)? != gamma {
            return Err(FatgraphError::GammaMismatch);
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// Edges and vertices only; faces are derived as `alpha ∘ beta`.
    pub fn from_alpha_beta(alpha: Permutation, beta: Permutation) -> Result<Self, FatgraphError> {
        let gamma = alpha.compose(&beta)?;
        Self::new(alpha, beta, gamma)
    }

    pub fn half_edges(&self) -> &Arc<GroundSet> {
        self.alpha.ground()
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn gamma(&self) -> &Permutation {
        &self.gamma
    }

    /// Number of connected components of the underlying graph.
    pub fn components(&self) -> usize {
        let n = self.alpha.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for x in 0..n {
            for y in [self.alpha.apply_index(x), self.beta.apply_index(x)] {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    pub fn stats(&self) -> Result<FatgraphStats, FatgraphError> {
        genus(self)
    }
}

pub fn genus(fg: &Fatgraph) -> Result<FatgraphStats, FatgraphError> {
    let components = fg.components();
    if components != 1 {
        return Err(FatgraphError::Disconnected(components));
    }
    let vertices = fg.beta.cycle_count();
    let edges = fg.alpha.cycle_count();
    let faces = fg.gamma.cycle_count();
    let euler = vertices as i64 - edges as i64 + faces as i64;
    let twice_genus = 2 - euler;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(FatgraphError::BadEuler(euler));
    }
    Ok(FatgraphStats {
        vertices,
        edges,
        faces,
        genus: (twice_genus / 2) as usize,
    })
}

/// Fatgraph `(diagonal, pi, s)` of the hat of `pp`.
pub fn fatgraph_from_plane(pp: &PlanePermutation) -> Result<Fatgraph, FatgraphError> {
    let h = hat(pp)?;
    Fatgraph::new(h.diagonal(), h.pi().clone(), h.s().clone())
}

pub fn fatgraph_from_signed(a: &SignedPermutation) -> Fatgraph {
    fatgraph_from_plane(skew_symmetric(a).plane())
        .expect("hat of a skew-symmetric plane permutation is a fatgraph")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = FatgraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "dot" => Ok(Self::Dot),
            _ => Err(FatgraphError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct FatgraphJson {
    half_edges: Vec<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bar_offset: Option<i32>,
    alpha: Vec<Vec<i32>>,
    beta: Vec<Vec<i32>>,
    gamma: Vec<Vec<i32>>,
    vertices: usize,
    edges: usize,
    faces: usize,
    genus: usize,
}

pub fn export(fg: &Fatgraph, format: ExportFormat) -> Result<String, FatgraphError> {
    let stats = genus(fg)?;
    match format {
        ExportFormat::Json => {
            let doc = FatgraphJson {
                half_edges: fg.half_edges().elements().to_vec(),
                bar_offset: fg.half_edges().bar_offset(),
                alpha: fg.alpha.cycles(),
                beta: fg.beta.cycles(),
                gamma: fg.gamma.cycles(),
                vertices: stats.vertices,
                edges: stats.edges,
                faces: stats.faces,
                genus: stats.genus,
            };
            serde_json::to_string_pretty(&doc).map_err(|e| FatgraphError::Json(e.to_string()))
        }
        ExportFormat::Dot => Ok(to_dot(fg, &stats)),
    }
}

fn to_dot(fg: &Fatgraph, stats: &FatgraphStats) -> String {
    let g = fg.half_edges();
    let vertices = fg.beta.cycles();
    let mut vertex_of = vec![0usize; g.len()];
    for (v, cycle) in vertices.iter().enumerate() {
        for &h in cycle {
            vertex_of[g.index_of(h).expect("half-edge")] = v;
        }
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph fatgraph {{\n  // vertices={} edges={} faces={} genus={}",
        stats.vertices, stats.edges, stats.faces, stats.genus
    );
    for (v, cycle) in vertices.iter().enumerate() {
        let label: Vec<String> = cycle.iter().map(|&h| g.label(h)).collect();
        let _ = writeln!(out, "  v{v} [label=\"({})\"];", label.join(" "));
    }
    for edge in fg.alpha.cycles() {
        let (h1, h2) = (edge[0], edge[1]);
        let u = vertex_of[g.index_of(h1).expect("half-edge")];
        let w = vertex_of[g.index_of(h2).expect("half-edge")];
        let _ = writeln!(
            out,
            "  v{u} -- v{w} [label=\"{}/{}\"];",
            g.label(h1),
            g.label(h2)
        );
    }
    out.push_str("}\n");
    out
}

/// Reads the JSON export back. Faces are recomputed and must match the stored cycles.
pub fn from_json(text: &str) -> Result<Fatgraph, FatgraphError> {
    let doc: FatgraphJson =
        serde_json::from_str(text).map_err(|e| FatgraphError::Json(e.to_string()))?;
    let mut ground = GroundSet::new(doc.half_edges)?;
    if let Some(off) = doc.bar_offset {
        ground = ground.with_bar_offset(off);
    }
    let ground = Arc::new(ground);
    let alpha = Permutation::from_cycles(Arc::clone(&ground), &doc.alpha)?;
    let beta = Permutation::from_cycles(Arc::clone(&ground), &doc.beta)?;
    let gamma = Permutation::from_cycles(ground, &doc.gamma)?;
    Fatgraph::new(alpha, beta, gamma)
}
