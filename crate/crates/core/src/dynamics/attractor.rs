use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Simplex};
use crate::error::{invalid, Result};
use crate::report::Verdict;

use super::{fixed_points, lefschetz_number, SimplicialMap};

/// The attractor `K = ∩ T^k(G)` with the checks run on it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Attractor {
    pub complex: Complex,
    /// `T` restricted to the vertices of `K`.
    pub vertex_map: Vec<(u32, u32)>,
    /// Number of image steps until stabilization.
    pub steps: usize,
    pub invariant: bool,
    pub bijective: bool,
    pub index_sum: i64,
    pub restricted_index_sum: i64,
    pub lefschetz: i64,
    pub restricted_lefschetz: i64,
}

impl Attractor {
    pub fn restricted_map(&self) -> Result<SimplicialMap<'_>> {
        SimplicialMap::validate(&self.complex, self.vertex_map.iter().copied())
    }

    pub fn verdict(&self) -> Verdict {
        let pass = self.invariant
            && self.bijective
            && self.index_sum == self.restricted_index_sum
            && self.lefschetz == self.restricted_lefschetz
            && self.index_sum == self.lefschetz;
        Verdict::exact("attractor", pass).with_witness(serde_json::json!({
            "attractor": self.complex.simplices(),
            "index_sum": [self.index_sum, self.restricted_index_sum],
            "lefschetz": [self.lefschetz, self.restricted_lefschetz],
        }))
    }
}

pub fn attractor(t: &SimplicialMap<'_>) -> Result<Attractor> {
    let g = t.complex();
    let mut current: BTreeSet<Simplex> = g.simplices().iter().cloned().collect();
    let mut steps = 0;
    loop {
        let next: BTreeSet<Simplex> = current.iter().map(|x| t.image(x)).collect();
        if next == current {
            break;
        }
        current = next;
        steps += 1;
    }
    let simplices: Vec<Simplex> = current.iter().cloned().collect();
    if !g.is_closed(&simplices)? {
        return invalid("attractor is not closed");
    }
    let complex = Complex::from_closed(simplices, usize::MAX)?;
    let images: BTreeSet<Simplex> = complex.simplices().iter().map(|x| t.image(x)).collect();
    let invariant = images == current;
    let bijective = images.len() == complex.len();
    let vertex_map: Vec<(u32, u32)> = complex.vertices().into_iter().map(|v| (v, t.apply(v))).collect();

    let restricted = SimplicialMap::validate(&complex, vertex_map.iter().copied())?;
    let restricted_index_sum = fixed_points(&restricted).index_sum();
    let restricted_lefschetz = lefschetz_number(&restricted);
    Ok(Attractor {
        vertex_map,
        steps,
        invariant,
        bijective,
        index_sum: fixed_points(t).index_sum(),
        restricted_index_sum,
        lefschetz: lefschetz_number(t),
        restricted_lefschetz,
        complex,
    })
}

const SEARCH_BUDGET: usize = 10_000;

/// A random simplicial map that is not a bijection, or `None` when the
/// search budget runs out (for example on a single vertex).
///
/// Vertices receive images one at a time in random order; every edge
/// between assigned vertices must land on an edge or collapse to a vertex.
/// Complete assignments are validated on all simplices.
pub fn random_map<'g, R: Rng + ?Sized>(g: &'g Complex, rng: &mut R) -> Option<SimplicialMap<'g>> {
    let vertices = g.vertices();
    let graph = g.skeleton_graph();
    let mut budget = SEARCH_BUDGET;
    let mut image = vec![0u32; vertices.len()];

    fn assign<'g, R: Rng + ?Sized>(
        i: usize,
        g: &'g Complex,
        vertices: &[u32],
        graph: &crate::complex::Graph,
        image: &mut [u32],
        budget: &mut usize,
        rng: &mut R,
    ) -> Option<SimplicialMap<'g>> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if i == vertices.len() {
            let distinct: BTreeSet<u32> = image.iter().copied().collect();
            if distinct.len() == vertices.len() {
                return None;
            }
            return SimplicialMap::validate(g, vertices.iter().copied().zip(image.iter().copied())).ok();
        }
        let mut candidates = vertices.to_vec();
        candidates.shuffle(rng);
        for c in candidates {
            let ok = (0..i).all(|u| {
                !graph.has_edge(vertices[i], vertices[u]) || image[u] == c || graph.has_edge(image[u], c)
            });
            if ok {
                image[i] = c;
                if let Some(t) = assign(i + 1, g, vertices, graph, image, budget, rng) {
                    return Some(t);
                }
            }
        }
        None
    }

    assign(0, g, &vertices, &graph, &mut image, &mut budget, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{random_complex, whitney, Graph};
    use crate::dynamics::find_automorphisms;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn automorphism_attractor_is_everything() {
        let g = whitney(&Graph::cycle(5)).unwrap();
        for t in find_automorphisms(&g, None).unwrap() {
            let a = attractor(&t).unwrap();
            assert_eq!(a.complex.len(), g.len());
            assert_eq!(a.steps, 0);
            assert!(a.verdict().pass);
        }
    }

    #[test]
    fn constant_map_collapses_to_a_vertex() {
        let g = whitney(&Graph::complete(3)).unwrap();
        let a = attractor(&SimplicialMap::constant(&g, 2).unwrap()).unwrap();
        assert_eq!(a.complex.simplices(), &[Simplex::new([2]).unwrap()]);
        assert_eq!(a.steps, 1);
        assert!(a.verdict().pass);
    }

    #[test]
    fn path_collapse() {
        let g = whitney(&Graph::path(4)).unwrap();
        let t = SimplicialMap::validate(&g, [(1, 2), (2, 2), (3, 3), (4, 4)]).unwrap();
        let a = attractor(&t).unwrap();
        assert_eq!(a.complex.len(), g.len() - 2);
        assert!(a.verdict().pass);
        assert_eq!(a.restricted_map().unwrap().pairs().count(), 3);
    }

    #[test]
    fn random_maps_are_valid_and_not_bijective() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..30 {
            let g = random_complex(6, 9, seed).unwrap();
            let t = random_map(&g, &mut rng).unwrap();
            assert!(!t.is_automorphism());
            let a = attractor(&t).unwrap();
            assert!(a.verdict().pass, "{:?} on {}", t.to_file(), g.to_json());
        }
        let single = crate::complex::closure(&[[1]]).unwrap();
        assert!(random_map(&single, &mut rng).is_none());
    }
}
