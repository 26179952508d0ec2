//! Simplicial maps, Koopman matrices, fixed points and Lefschetz numbers.

mod attractor;
mod lefschetz;
mod matrices;

pub use attractor::{attractor, random_map, Attractor};
pub use lefschetz::{
    dynamical_zeta, heat_deformation_check, koopman_supertrace_check, lefschetz_number, verify_lefschetz,
    Cohomology, DynamicalZeta, LefschetzReport,
};
pub use matrices::{dynamical_dirac_check, DynamicalMatrices};
pub(crate) use lefschetz::{heat_deformation_check_with, verify_lefschetz_with};

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Simplex};
use crate::error::{invalid, Error, Result};
use crate::matrix::IntegerMatrix;
use crate::operators::sorting_sign;

/// Default vertex cap for the brute-force automorphism search.
pub const AUTOMORPHISM_VERTEX_CAP: usize = 10;

/// A vertex map of a complex into itself that sends simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap<'g> {
    complex: &'g Complex,
    map: BTreeMap<u32, u32>,
}

/// File format: parallel arrays `{vertices, image}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub vertices: Vec<u32>,
    pub image: Vec<u32>,
}

impl<'g> SimplicialMap<'g> {
    pub fn validate(complex: &'g Complex, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let map: BTreeMap<u32, u32> = pairs.into_iter().collect();
        let vertices = complex.vertices();
        if let Some(v) = vertices.iter().find(|v| !map.contains_key(v)) {
            return invalid(format!("vertex {v} has no image"));
        }
        if let Some(v) = map.keys().find(|v| vertices.binary_search(v).is_err()) {
            return invalid(format!("{v} is not a vertex of the complex"));
        }
        let t = SimplicialMap { complex, map };
        for x in complex.simplices() {
            let image = t.image_tuple(x);
            let set = Simplex::new(image.iter().copied()).expect("images are positive vertices");
            if !complex.contains(&set) {
                return Err(Error::InvalidMap { simplex: x.vertices().to_vec(), image: set.vertices().to_vec() });
            }
        }
        Ok(t)
    }

    pub fn identity(complex: &'g Complex) -> Self {
        let map = complex.vertices().into_iter().map(|v| (v, v)).collect();
        SimplicialMap { complex, map }
    }

    pub fn constant(complex: &'g Complex, v: u32) -> Result<Self> {
        Self::validate(complex, complex.vertices().into_iter().map(|u| (u, v)))
    }

    pub fn complex(&self) -> &'g Complex {
        self.complex
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.map[&v]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    /// Images of the vertices of `x` in their original order.
    pub fn image_tuple(&self, x: &Simplex) -> Vec<u32> {
        x.vertices().iter().map(|v| self.map[v]).collect()
    }

    /// `T(x)` as a set.
    pub fn image(&self, x: &Simplex) -> Simplex {
        Simplex::new(self.image_tuple(x)).expect("images are positive vertices")
    }

    /// Basis position of `T(x)` for every basis position `x`.
    pub fn basis_image(&self) -> Vec<usize> {
        self.complex
            .simplices()
            .iter()
            .map(|x| self.complex.position(&self.image(x)).expect("validated map"))
            .collect()
    }

    pub fn is_automorphism(&self) -> bool {
        let images: HashSet<u32> = self.map.values().copied().collect();
        images.len() == self.map.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SimplicialMap<'g>) -> SimplicialMap<'g> {
        let map = other.map.iter().map(|(&v, &w)| (v, self.map[&w])).collect();
        SimplicialMap { complex: self.complex, map }
    }

    /// `T^k`, with `T^0` the identity.
    pub fn power(&self, k: usize) -> SimplicialMap<'g> {
        (0..k).fold(SimplicialMap::identity(self.complex), |acc, _| self.compose(&acc))
    }

    pub fn to_file(&self) -> MapFile {
        MapFile { vertices: self.map.keys().copied().collect(), image: self.map.values().copied().collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("integer arrays serialize")
    }

    pub fn from_file(complex: &'g Complex, file: &MapFile) -> Result<Self> {
        if file.vertices.len() != file.image.len() {
            return Err(Error::SizeMismatch { expected: file.vertices.len(), found: file.image.len() });
        }
        Self::validate(complex, file.vertices.iter().copied().zip(file.image.iter().copied()))
    }

    pub fn from_json(complex: &'g Complex, text: &str) -> Result<Self> {
        Self::from_file(complex, &serde_json::from_str(text)?)
    }
}

/// All vertex bijections preserving the complex, up to `limit` of them.
pub fn find_automorphisms(g: &Complex, limit: Option<usize>) -> Result<Vec<SimplicialMap<'_>>> {
    find_automorphisms_with_cap(g, limit, AUTOMORPHISM_VERTEX_CAP)
}

pub fn find_automorphisms_with_cap(g: &Complex, limit: Option<usize>, cap: usize) -> Result<Vec<SimplicialMap<'_>>> {
    let vertices = g.vertices();
    if vertices.len() > cap {
        return Err(Error::TooLarge { size: vertices.len(), cap });
    }
    let graph = g.skeleton_graph();
    let degree = vertices.iter().map(|&v| graph.neighbors(v).count()).collect();
    let mut search = AutomorphismSearch {
        g,
        used: vec![false; vertices.len()],
        vertices,
        degree,
        graph,
        assignment: Vec::new(),
        found: Vec::new(),
        limit: limit.unwrap_or(usize::MAX),
    };
    search.extend();
    Ok(search.found)
}

struct AutomorphismSearch<'g> {
    g: &'g Complex,
    vertices: Vec<u32>,
    degree: Vec<usize>,
    graph: crate::complex::Graph,
    assignment: Vec<usize>,
    used: Vec<bool>,
    found: Vec<SimplicialMap<'g>>,
    limit: usize,
}

impl AutomorphismSearch<'_> {
    fn extend(&mut self) {
        if self.found.len() >= self.limit {
            return;
        }
        let i = self.assignment.len();
        let vs = &self.vertices;
        if i == vs.len() {
            let pairs = vs.iter().zip(&self.assignment).map(|(&v, &j)| (v, vs[j]));
            if let Ok(t) = SimplicialMap::validate(self.g, pairs) {
                self.found.push(t);
            }
            return;
        }
        for j in 0..vs.len() {
            if self.used[j] || self.degree[i] != self.degree[j] {
                continue;
            }
            let (vs, graph, assignment) = (&self.vertices, &self.graph, &self.assignment);
            let consistent =
                (0..i).all(|u| graph.has_edge(vs[i], vs[u]) == graph.has_edge(vs[j], vs[assignment[u]]));
            if consistent {
                self.used[j] = true;
                self.assignment.push(j);
                self.extend();
                self.assignment.pop();
                self.used[j] = false;
            }
        }
    }
}

/// `U(x, y)` is the sign of the permutation sorting the image tuple of `y`
/// when that image has full cardinality and equals `x`; all other entries
/// vanish.
pub fn koopman(t: &SimplicialMap<'_>) -> IntegerMatrix {
    let g = t.complex();
    let mut u = IntegerMatrix::zeros(g.len(), g.len());
    for (j, y) in g.simplices().iter().enumerate() {
        let tuple = t.image_tuple(y);
        let sign = sorting_sign(&tuple);
        if sign != 0 {
            let i = g.position(&t.image(y)).expect("validated map");
            u[(i, j)] = sign;
        }
    }
    u
}

/// Simplices with `T(x) = x` as sets, with indices `w(x) sign(T|x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub fixed: Vec<Simplex>,
    pub indices: Vec<i64>,
}

impl FixedPointReport {
    pub fn index_sum(&self) -> i64 {
        self.indices.iter().sum()
    }
}

pub fn fixed_points(t: &SimplicialMap<'_>) -> FixedPointReport {
    let mut fixed = Vec::new();
    let mut indices = Vec::new();
    for x in t.complex().simplices() {
        let tuple = t.image_tuple(x);
        if t.image(x) == *x {
            indices.push(x.omega() * sorting_sign(&tuple));
            fixed.push(x.clone());
        }
    }
    FixedPointReport { fixed, indices }
}

/// Supertrace `sum_x w(x) M(x, x)` over the basis of `g`.
pub fn supertrace(g: &Complex, m: &IntegerMatrix) -> i64 {
    g.simplices().iter().enumerate().map(|(i, x)| x.omega() * m[(i, i)]).sum()
}
