//! Finite abstract simplicial complexes.
//!
//! A [`Complex`] stores its simplices in a fixed basis order: dimension first,
//! then lexicographic on the sorted vertex lists. Every dimension block is
//! therefore contiguous, and every prefix of the basis is itself a complex.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Default upper bound on the number of simplices of a complex.
pub const DEFAULT_MAX_SIMPLICES: usize = 4096;

/// A nonempty set of positive vertex ids, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Builds a simplex from any vertex list; duplicates are merged.
    pub fn new(vertices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut v: Vec<u32> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return invalid("a simplex must have at least one vertex");
        }
        if v[0] == 0 {
            return invalid("vertex ids must be positive");
        }
        Ok(Simplex(v))
    }

    pub(crate) fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        Simplex(v)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// `(-1)^dim`.
    pub fn omega(&self) -> i64 {
        if self.dim().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.len() <= other.len() && is_sorted_subset(&self.0, &other.0)
    }

    pub fn intersects(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(_), Some(&b)) => {
                    j += 1;
                    b
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (None, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            v.push(next);
        }
        Simplex(v)
    }

    /// All nonempty subsets, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let k = self.len();
        (1u64..(1u64 << k)).map(move |mask| {
            Simplex((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())
        })
    }

    /// Faces of codimension one, in order of the removed position.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let k = self.len();
        (0..if k > 1 { k } else { 0 }).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }
}

fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut j = 0;
    for &a in small {
        while j < big.len() && big[j] < a {
            j += 1;
        }
        if j == big.len() || big[j] != a {
            return false;
        }
        j += 1;
    }
    true
}

impl TryFrom<Vec<u32>> for Simplex {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<u32> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Basis order: dimension, then lexicographic.
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Simplex counts per dimension, `f_0, f_1, ..., f_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Alternating sum `f_0 - f_1 + f_2 - ...`.
    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// A finite abstract simplicial complex in canonical basis order.
/// Serializes as the array of its simplices; deserializing requires closure.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Simplex>", into = "Vec<Simplex>")]
pub struct Complex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// `offsets[k]..offsets[k+1]` is the block of k-dimensional simplices.
    offsets: Vec<usize>,
}

impl TryFrom<Vec<Simplex>> for Complex {
    type Error = Error;
    fn try_from(simplices: Vec<Simplex>) -> Result<Self> {
        Complex::from_closed(simplices, DEFAULT_MAX_SIMPLICES)
    }
}

impl From<Complex> for Vec<Simplex> {
    fn from(g: Complex) -> Self {
        g.simplices
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.simplices).finish()
    }
}

impl Complex {
    pub fn empty() -> Self {
        Complex { simplices: Vec::new(), index: HashMap::new(), offsets: vec![0] }
    }

    /// Builds a complex from a set of simplices that is already closed.
    pub fn from_closed(simplices: impl IntoIterator<Item = Simplex>, cap: usize) -> Result<Self> {
        let set: BTreeSet<Simplex> = simplices.into_iter().collect();
        if set.len() > cap {
            return Err(Error::TooLarge { size: set.len(), cap });
        }
        for s in &set {
            if let Some(face) = s.facets().find(|f| !set.contains(f)) {
                return invalid(format!("{s:?} is present but its face {face:?} is not"));
            }
        }
        Ok(Self::from_sorted_unchecked(set.into_iter().collect()))
    }

    fn from_sorted_unchecked(simplices: Vec<Simplex>) -> Self {
        let index = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut offsets = vec![0];
        for (i, s) in simplices.iter().enumerate() {
            while offsets.len() < s.len() {
                offsets.push(i);
            }
        }
        if !simplices.is_empty() {
            offsets.push(simplices.len());
        }
        Complex { simplices, index, offsets }
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn get(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Maximal dimension `q`, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    /// Index range of the k-dimensional block.
    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        if k + 1 < self.offsets.len() {
            self.offsets[k]..self.offsets[k + 1]
        } else {
            self.len()..self.len()
        }
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.offsets.windows(2).map(|w| w[1] - w[0]).collect())
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.simplices[self.block(0)].iter().map(|s| s.0[0]).collect()
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.simplices[self.block(1)].iter().map(|s| (s.0[0], s.0[1])).collect()
    }

    /// Simplices not strictly contained in another simplex.
    pub fn facets(&self) -> Vec<usize> {
        let mut maximal = vec![true; self.len()];
        for s in &self.simplices {
            for f in s.facets() {
                maximal[self.index[&f]] = false;
            }
        }
        (0..self.len()).filter(|&i| maximal[i]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(Simplex::omega).sum()
    }

    /// Product of `(-1)^dim(x)`; equals the determinant of the connection matrix.
    pub fn fermi_characteristic(&self) -> i64 {
        let odd = self.simplices.iter().filter(|s| s.dim() % 2 == 1).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn require(&self, x: &Simplex) -> Result<usize> {
        self.position(x)
            .ok_or_else(|| Error::InvalidInput(format!("{x:?} is not a simplex of the complex")))
    }

    /// Open star `U(x)`: all simplices containing `x`.
    pub fn star(&self, x: &Simplex) -> Result<Vec<Simplex>> {
        self.require(x)?;
        Ok(self.simplices.iter().filter(|y| x.is_face_of(y)).cloned().collect())
    }

    /// Closed core `C(x)`: all faces of `x`.
    pub fn core(&self, x: &Simplex) -> Result<Vec<Simplex>> {
        self.require(x)?;
        let mut faces: Vec<Simplex> = x.faces().collect();
        faces.sort();
        Ok(faces)
    }

    /// Euler characteristic of every open star, indexed by basis position.
    pub fn star_euler_characteristics(&self) -> Vec<i64> {
        let mut chi = vec![0i64; self.len()];
        for y in &self.simplices {
            let w = y.omega();
            for z in y.faces() {
                chi[self.index[&z]] += w;
            }
        }
        chi
    }

    fn check_subset(&self, s: &[Simplex]) -> Result<BTreeSet<Simplex>> {
        let set: BTreeSet<Simplex> = s.iter().cloned().collect();
        for x in &set {
            self.require(x)?;
        }
        Ok(set)
    }

    /// Whether `s` is closed under taking nonempty subsets.
    pub fn is_closed(&self, s: &[Simplex]) -> Result<bool> {
        let set = self.check_subset(s)?;
        Ok(set.iter().all(|x| x.facets().all(|f| set.contains(&f))))
    }

    /// Whether the complement of `s` in the complex is closed.
    pub fn is_open(&self, s: &[Simplex]) -> Result<bool> {
        let set = self.check_subset(s)?;
        let complement: Vec<Simplex> =
            self.simplices.iter().filter(|x| !set.contains(x)).cloned().collect();
        self.is_closed(&complement)
    }

    /// Subcomplex obtained by dropping the given basis positions. The result
    /// must be closed.
    pub fn without(&self, positions: &[usize]) -> Result<Complex> {
        let drop: BTreeSet<usize> = positions.iter().copied().collect();
        if let Some(&bad) = drop.iter().find(|&&p| p >= self.len()) {
            return invalid(format!("basis position {bad} out of range"));
        }
        let kept = self
            .simplices
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, s)| s.clone());
        Complex::from_closed(kept, usize::MAX)
    }

    /// The 1-skeleton as a graph.
    pub fn skeleton_graph(&self) -> Graph {
        Graph::new(self.vertices(), self.edges()).expect("skeleton edges use complex vertices")
    }

    pub fn is_connected(&self) -> bool {
        self.skeleton_graph().components().len() <= 1
    }

    pub fn to_json(&self) -> String {
        let sets: Vec<&[u32]> = self.simplices.iter().map(|s| s.vertices()).collect();
        serde_json::to_string(&sets).expect("vectors of integers serialize")
    }

    /// Parses the text file format: one JSON array of integer arrays.
    /// Without `auto_close`, a set whose faces are missing is rejected.
    pub fn from_json(text: &str, auto_close: bool) -> Result<Complex> {
        let sets: Vec<Vec<u32>> = serde_json::from_str(text)?;
        if auto_close {
            closure(&sets)
        } else {
            let simplices = sets.into_iter().map(Simplex::new).collect::<Result<Vec<_>>>()?;
            Complex::from_closed(simplices, DEFAULT_MAX_SIMPLICES)
        }
    }
}

/// Smallest complex containing every given vertex set.
pub fn closure<S: AsRef<[u32]>>(sets: &[S]) -> Result<Complex> {
    closure_with_cap(sets, DEFAULT_MAX_SIMPLICES)
}

pub fn closure_with_cap<S: AsRef<[u32]>>(sets: &[S], cap: usize) -> Result<Complex> {
    let mut all = BTreeSet::new();
    for set in sets {
        let s = Simplex::new(set.as_ref().iter().copied())?;
        if s.len() >= 63 || (1usize << s.len()) > cap.saturating_add(1) {
            return Err(Error::TooLarge { size: usize::MAX, cap });
        }
        all.extend(s.faces());
        if all.len() > cap {
            return Err(Error::TooLarge { size: all.len(), cap });
        }
    }
    Ok(Complex::from_sorted_unchecked(all.into_iter().collect()))
}

/// A simple undirected graph on positive vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<u32>,
    adjacency: HashMap<u32, BTreeSet<u32>>,
}

impl Graph {
    pub fn new(vertices: impl IntoIterator<Item = u32>, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Graph> {
        let mut vs: BTreeSet<u32> = vertices.into_iter().collect();
        let edges: Vec<(u32, u32)> = edges.into_iter().collect();
        for &(a, b) in &edges {
            if a == b {
                return invalid(format!("self loop at vertex {a}"));
            }
            vs.insert(a);
            vs.insert(b);
        }
        if vs.contains(&0) {
            return invalid("vertex ids must be positive");
        }
        let mut adjacency: HashMap<u32, BTreeSet<u32>> = vs.iter().map(|&v| (v, BTreeSet::new())).collect();
        for (a, b) in edges {
            adjacency.get_mut(&a).unwrap().insert(b);
            adjacency.get_mut(&b).unwrap().insert(a);
        }
        Ok(Graph { vertices: vs.into_iter().collect(), adjacency })
    }

    pub fn cycle(n: u32) -> Graph {
        let edges = (1..=n).map(|i| (i, i % n + 1));
        Graph::new(1..=n, edges).expect("cycle is simple for n >= 3")
    }

    pub fn complete(n: u32) -> Graph {
        Self::complete_multipartite(&vec![1; n as usize])
    }

    pub fn path(n: u32) -> Graph {
        Graph::new(1..=n, (1..n).map(|i| (i, i + 1))).expect("path is simple")
    }

    /// Vertices split into consecutive parts; edges join different parts.
    pub fn complete_multipartite(parts: &[u32]) -> Graph {
        let mut part_of = Vec::new();
        for (p, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(p, size as usize));
        }
        let n = part_of.len() as u32;
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if part_of[a as usize - 1] != part_of[b as usize - 1] {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(1..=n, edges).expect("multipartite graph is simple")
    }

    /// Octahedron: complete tripartite graph with parts of size two.
    pub fn octahedron() -> Graph {
        Self::complete_multipartite(&[2, 2, 2])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adjacency.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for &a in &self.vertices {
            out.extend(self.adjacency[&a].range(a + 1..).map(|&b| (a, b)));
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// Clique complex of a graph.
pub fn whitney(graph: &Graph) -> Result<Complex> {
    whitney_with_cap(graph, DEFAULT_MAX_SIMPLICES)
}

pub fn whitney_with_cap(graph: &Graph, cap: usize) -> Result<Complex> {
    let mut out = Vec::new();
    let mut clique = Vec::new();
    for &v in graph.vertices() {
        let candidates: Vec<u32> = graph.neighbors(v).filter(|&w| w > v).collect();
        clique.push(v);
        extend_cliques(graph, &mut clique, &candidates, &mut out, cap)?;
        clique.pop();
    }
    out.sort();
    Ok(Complex::from_sorted_unchecked(out))
}

fn extend_cliques(
    graph: &Graph,
    clique: &mut Vec<u32>,
    candidates: &[u32],
    out: &mut Vec<Simplex>,
    cap: usize,
) -> Result<()> {
    out.push(Simplex::from_sorted(clique.clone()));
    if out.len() > cap {
        return Err(Error::TooLarge { size: out.len(), cap });
    }
    for (i, &w) in candidates.iter().enumerate() {
        let next: Vec<u32> = candidates[i + 1..].iter().copied().filter(|&u| graph.has_edge(w, u)).collect();
        clique.push(w);
        extend_cliques(graph, clique, &next, out, cap)?;
        clique.pop();
    }
    Ok(())
}

/// Graph on vertices `1..=n` with `m` edges drawn uniformly without
/// replacement, deterministic in `seed`.
pub fn random_graph(n: u32, m: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(n, m, &mut rng)
}

pub(crate) fn random_graph_with<R: rand::Rng + ?Sized>(n: u32, m: usize, rng: &mut R) -> Result<Graph> {
    let pairs: Vec<(u32, u32)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    if m > pairs.len() {
        return invalid(format!("{m} edges requested but a graph on {n} vertices has at most {}", pairs.len()));
    }
    let chosen = sample(rng, pairs.len(), m);
    Graph::new(1..=n, chosen.into_iter().map(|i| pairs[i]))
}

/// Whitney complex of a uniformly sampled graph with `n` vertices and `m` edges.
pub fn random_complex(n: u32, m: usize, seed: u64) -> Result<Complex> {
    whitney(&random_graph(n, m, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn closure_of_edge() {
        let g = closure(&[[1, 2]]).unwrap();
        assert_eq!(g.simplices(), &[s(&[1]), s(&[2]), s(&[1, 2])]);
        assert_eq!(g.fermi_characteristic(), -1);
        assert_eq!(g.euler_characteristic(), 1);
    }

    #[test]
    fn closure_edge_cases() {
        let none: [[u32; 1]; 0] = [];
        assert!(closure(&none).unwrap().is_empty());
        assert_eq!(closure(&[[1, 2, 3]]).unwrap().len(), 7);
        let empty: Vec<Vec<u32>> = vec![vec![]];
        assert!(matches!(closure(&empty), Err(Error::InvalidInput(_))));
        assert!(matches!(closure(&[[0u32]]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let big: Vec<u32> = (1..=13).collect();
        assert!(matches!(closure(&[big]), Err(Error::TooLarge { .. })));
        assert!(matches!(whitney(&Graph::complete(13)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn whitney_examples() {
        let c4 = whitney(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.len(), 8);
        assert_eq!(c4.euler_characteristic(), 0);
        assert_eq!(c4.fermi_characteristic(), 1);
        let k3 = whitney(&Graph::complete(3)).unwrap();
        assert_eq!(k3.len(), 7);
        assert_eq!(k3.euler_characteristic(), 1);
        let isolated = whitney(&Graph::new([1, 2, 3], []).unwrap()).unwrap();
        assert_eq!(isolated.len(), 3);
        assert!(whitney(&Graph::new([], []).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn random_complex_examples() {
        assert_eq!(random_complex(6, 0, 7).unwrap().len(), 6);
        assert_eq!(random_complex(4, 6, 99).unwrap().len(), 15);
        assert_eq!(random_complex(9, 20, 5).unwrap(), random_complex(9, 20, 5).unwrap());
        assert!(matches!(random_complex(4, 7, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn single_vertex() {
        let g = closure(&[[5]]).unwrap();
        assert_eq!(g.euler_characteristic(), 1);
        assert_eq!(g.fermi_characteristic(), 1);
    }

    #[test]
    fn star_and_core() {
        let g = closure(&[[1, 2]]).unwrap();
        assert_eq!(g.star(&s(&[1])).unwrap(), vec![s(&[1]), s(&[1, 2])]);
        assert_eq!(g.core(&s(&[1, 2])).unwrap(), g.simplices().to_vec());
        assert_eq!(g.star(&s(&[1, 2])).unwrap(), vec![s(&[1, 2])]);
        assert!(g.star(&s(&[3])).is_err());
    }

    #[test]
    fn open_and_closed() {
        let g = closure(&[[1, 2]]).unwrap();
        let u = [s(&[1]), s(&[1, 2])];
        assert!(g.is_open(&u).unwrap());
        assert!(!g.is_closed(&u).unwrap());
        assert!(g.is_open(g.simplices()).unwrap());
        assert!(g.is_closed(g.simplices()).unwrap());
        assert!(g.is_open(&[s(&[1, 2])]).unwrap());
        assert!(g.is_closed(&[s(&[3])]).is_err());
    }

    #[test]
    fn file_format() {
        let g = Complex::from_json("[[2,1],[1],[2]]", false).unwrap();
        assert_eq!(g.to_json(), "[[1],[2],[1,2]]");
        assert!(Complex::from_json("[[1,2]]", false).is_err());
        assert_eq!(Complex::from_json("[[1,2]]", true).unwrap(), g);
    }

    #[test]
    fn blocks_are_contiguous() {
        let g = whitney(&Graph::complete(4)).unwrap();
        assert_eq!(g.f_vector(), FVector(vec![4, 6, 4, 1]));
        assert_eq!(g.block(2), 10..14);
        assert_eq!(g.block(7), 15..15);
        assert_eq!(g.facets(), vec![14]);
    }

    #[test]
    fn multipartite_counts() {
        let g = whitney(&Graph::complete_multipartite(&[3, 4, 2])).unwrap();
        assert_eq!(g.f_vector(), FVector(vec![9, 26, 24]));
        let oct = whitney(&Graph::octahedron()).unwrap();
        assert_eq!(oct.f_vector(), FVector(vec![6, 12, 8]));
        assert_eq!(oct.euler_characteristic(), 2);
    }
}
