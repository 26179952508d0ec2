//! Exact integer operators of a complex: exterior derivative, Dirac and
//! Hodge matrices, connection matrix and its Green-function inverse.

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Simplex};
use crate::error::{invalid, Result};
use crate::matrix::IntegerMatrix;

/// Incidence sign of `y` as a facet of `x`: `(-1)^i` where `i` is the
/// position of the vertex of `x` missing from `y`, zero if `y` is not a facet.
pub fn boundary_sign(x: &Simplex, y: &Simplex) -> i64 {
    if x.len() != y.len() + 1 || !y.is_face_of(x) {
        return 0;
    }
    let xs = x.vertices();
    let missing = xs.iter().zip(y.vertices()).position(|(a, b)| a != b).unwrap_or(xs.len() - 1);
    if missing % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the permutation sorting `tuple`, or 0 if it has repeated entries.
pub fn sorting_sign(tuple: &[u32]) -> i64 {
    let mut sign = 1;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            match tuple[i].cmp(&tuple[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// `d(x, y) = boundary_sign(x, y)`.
pub fn exterior_derivative(g: &Complex) -> IntegerMatrix {
    let mut d = IntegerMatrix::zeros(g.len(), g.len());
    for (i, x) in g.simplices().iter().enumerate() {
        for (pos, face) in x.facets().enumerate() {
            let j = g.position(&face).expect("complex is closed");
            d[(i, j)] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    d
}

/// The block of `d` mapping k-forms to (k+1)-forms, of shape `f_{k+1} x f_k`.
pub fn coboundary_block(g: &Complex, k: usize) -> IntegerMatrix {
    let (rows, cols) = (g.block(k + 1), g.block(k));
    let mut d = IntegerMatrix::zeros(rows.len(), cols.len());
    for (i, x) in g.simplices()[rows.clone()].iter().enumerate() {
        for (pos, face) in x.facets().enumerate() {
            let j = g.position(&face).expect("complex is closed") - cols.start;
            d[(i, j)] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    d
}

/// `D = d + d^T`.
pub fn dirac(g: &Complex) -> IntegerMatrix {
    let d = exterior_derivative(g);
    d.add(&d.transpose())
}

/// `H = D^2`, computed as a full product.
pub fn hodge(g: &Complex) -> IntegerMatrix {
    let d = dirac(g);
    d.mul(&d)
}

/// Diagonal block `H_k` of the Hodge Laplacian on k-dimensional simplices.
pub fn hodge_block(g: &Complex, k: usize) -> Result<IntegerMatrix> {
    let q = g.dimension();
    if q.is_none_or(|q| k > q) {
        return invalid(format!("no block of dimension {k}; complex dimension is {q:?}"));
    }
    let up = coboundary_block(g, k);
    let mut h = up.transpose().mul(&up);
    if k > 0 {
        let down = coboundary_block(g, k - 1);
        h = h.add(&down.mul(&down.transpose()));
    }
    Ok(h)
}

/// Kirchhoff matrix of the 1-skeleton in vertex order.
pub fn kirchhoff(g: &Complex) -> IntegerMatrix {
    let vertices = g.vertices();
    let mut k = IntegerMatrix::zeros(vertices.len(), vertices.len());
    let pos = |v: u32| vertices.binary_search(&v).expect("edge endpoints are vertices");
    for (a, b) in g.edges() {
        let (i, j) = (pos(a), pos(b));
        k[(i, j)] -= 1;
        k[(j, i)] -= 1;
        k[(i, i)] += 1;
        k[(j, j)] += 1;
    }
    k
}

/// `L(x, y) = 1` if `x` and `y` intersect.
pub fn connection_matrix(g: &Complex) -> IntegerMatrix {
    let s = g.simplices();
    IntegerMatrix::from_fn(g.len(), g.len(), |i, j| s[i].intersects(&s[j]) as i64)
}

/// Green function matrix from the star formula
/// `g(x, y) = w(x) w(y) chi(U(x) ∩ U(y))`. The intersection of two stars is
/// the star of `x ∪ y`, or empty when `x ∪ y` is not a simplex.
pub fn green_matrix(g: &Complex) -> IntegerMatrix {
    let s = g.simplices();
    let star_chi = g.star_euler_characteristics();
    let mut out = IntegerMatrix::zeros(g.len(), g.len());
    for i in 0..g.len() {
        for j in i..g.len() {
            if let Some(p) = g.position(&s[i].union(&s[j])) {
                let v = s[i].omega() * s[j].omega() * star_chi[p];
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
    }
    out
}

/// Nonnegative integers sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence(pub Vec<i64>);

impl DegreeSequence {
    pub fn from_unsorted(mut v: Vec<i64>) -> Self {
        v.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(v)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// Row sums of `L`: the number of simplices meeting `x`, `x` included.
pub fn connection_degrees(g: &Complex) -> DegreeSequence {
    DegreeSequence::from_unsorted(connection_matrix(g).row_sums())
}

/// Row sums of `|D|`.
pub fn dirac_degrees(g: &Complex) -> DegreeSequence {
    DegreeSequence::from_unsorted(dirac(g).abs().row_sums())
}

/// Entrywise absolute value.
pub fn signless(m: &IntegerMatrix) -> IntegerMatrix {
    m.abs()
}

pub fn submatrix_delete(m: &IntegerMatrix, positions: &[usize]) -> Result<IntegerMatrix> {
    m.delete(positions)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperatorKind {
    #[serde(rename = "L")]
    Connection,
    #[serde(rename = "g")]
    Green,
    #[serde(rename = "D")]
    Dirac,
    #[serde(rename = "H")]
    Hodge,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Connection => "L",
            OperatorKind::Green => "g",
            OperatorKind::Dirac => "D",
            OperatorKind::Hodge => "H",
        }
    }

    pub fn build(self, g: &Complex) -> IntegerMatrix {
        match self {
            OperatorKind::Connection => connection_matrix(g),
            OperatorKind::Green => green_matrix(g),
            OperatorKind::Dirac => dirac(g),
            OperatorKind::Hodge => hodge(g),
        }
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(OperatorKind::Connection),
            "g" => Ok(OperatorKind::Green),
            "D" => Ok(OperatorKind::Dirac),
            "H" => Ok(OperatorKind::Hodge),
            other => invalid(format!("unknown operator {other:?}; expected one of L, g, D, H")),
        }
    }
}

/// JSON matrix dump: `{basis, name, entries}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub basis: Vec<Vec<u32>>,
    pub name: String,
    pub entries: Vec<Vec<i64>>,
}

impl MatrixDump {
    pub fn new(g: &Complex, kind: OperatorKind, m: &IntegerMatrix) -> Self {
        MatrixDump {
            basis: g.simplices().iter().map(|s| s.vertices().to_vec()).collect(),
            name: kind.name().to_string(),
            entries: m.to_rows(),
        }
    }

    /// One CSV line per matrix row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{closure, whitney, Graph};
    use crate::exact::determinant;
    use num_bigint::BigInt;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn boundary_sign_examples() {
        assert_eq!(boundary_sign(&s(&[1, 2, 3]), &s(&[2, 3])), 1);
        assert_eq!(boundary_sign(&s(&[1, 2, 3]), &s(&[1, 3])), -1);
        assert_eq!(boundary_sign(&s(&[1, 2, 3]), &s(&[1, 2])), 1);
        assert_eq!(boundary_sign(&s(&[1, 2]), &s(&[3])), 0);
        assert_eq!(boundary_sign(&s(&[1, 2, 3]), &s(&[1])), 0);
    }

    #[test]
    fn sorting_signs() {
        assert_eq!(sorting_sign(&[1, 2, 3]), 1);
        assert_eq!(sorting_sign(&[2, 1]), -1);
        assert_eq!(sorting_sign(&[2, 3, 1]), 1);
        assert_eq!(sorting_sign(&[2, 2]), 0);
    }

    #[test]
    fn edge_operators() {
        let g = closure(&[[1, 2]]).unwrap();
        let d = exterior_derivative(&g);
        assert_eq!(d.to_rows(), vec![vec![0, 0, 0], vec![0, 0, 0], vec![-1, 1, 0]]);
        assert_eq!(connection_matrix(&g).to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
        let l = connection_matrix(&g);
        let green = green_matrix(&g);
        assert_eq!(green.mul(&l), IntegerMatrix::identity(3));
        assert_eq!(connection_degrees(&g).values(), &[3, 2, 2]);
        assert_eq!(dirac_degrees(&g).values(), &[2, 1, 1]);
        assert_eq!(signless(&dirac(&g)).row(2), &[1, 1, 0]);
    }

    #[test]
    fn single_vertex_and_isolated() {
        let v = closure(&[[1]]).unwrap();
        assert_eq!(connection_matrix(&v).to_rows(), vec![vec![1]]);
        assert_eq!(green_matrix(&v).to_rows(), vec![vec![1]]);
        let iso = whitney(&Graph::new([1, 2, 3], []).unwrap()).unwrap();
        assert!(exterior_derivative(&iso).is_zero());
        assert!(dirac(&iso).is_zero());
        assert!(hodge(&iso).is_zero());
        assert_eq!(dirac_degrees(&iso).values(), &[0, 0, 0]);
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let g = whitney(&Graph::complete(4)).unwrap();
        let d = exterior_derivative(&g);
        assert!(d.mul(&d).is_zero());
        let dd = dirac(&g);
        assert_eq!(dd.mul(&dd), d.mul(&d.transpose()).add(&d.transpose().mul(&d)));
    }

    #[test]
    fn hodge_is_block_diagonal() {
        let g = whitney(&Graph::complete(4)).unwrap();
        let h = hodge(&g);
        for i in 0..g.len() {
            for j in 0..g.len() {
                if g.get(i).dim() != g.get(j).dim() {
                    assert_eq!(h[(i, j)], 0);
                }
            }
        }
        for k in 0..=3 {
            let r = g.block(k);
            assert_eq!(hodge_block(&g, k).unwrap(), h.slice(r.clone(), r));
        }
        assert!(hodge_block(&g, 4).is_err());
    }

    #[test]
    fn h0_is_kirchhoff() {
        let g = whitney(&Graph::cycle(4)).unwrap();
        let h0 = hodge_block(&g, 0).unwrap();
        assert_eq!(h0, kirchhoff(&g));
        assert_eq!(h0.to_rows(), vec![vec![2, -1, 0, -1], vec![-1, 2, -1, 0], vec![0, -1, 2, -1], vec![-1, 0, -1, 2]]);
    }

    #[test]
    fn green_star_trace_and_energy() {
        let g = whitney(&Graph::complete(3)).unwrap();
        let green = green_matrix(&g);
        assert_eq!(green.trace(), g.star_euler_characteristics().iter().sum::<i64>());
        assert_eq!(green.sum(), g.euler_characteristic());
        assert_eq!(connection_matrix(&g).mul(&green), IntegerMatrix::identity(7));
        assert_eq!(determinant(&connection_matrix(&g)), BigInt::from(g.fermi_characteristic()));
    }

    #[test]
    fn hydrogen_identity_on_cycle() {
        let g = whitney(&Graph::cycle(5)).unwrap();
        let abs_d = signless(&dirac(&g));
        assert_eq!(connection_matrix(&g).sub(&green_matrix(&g)), abs_d.mul(&abs_d));
    }

    #[test]
    fn hydrogen_identity_fails_in_dimension_two() {
        let g = whitney(&Graph::complete(3)).unwrap();
        let d = dirac(&g);
        let abs_d = signless(&d);
        assert_ne!(abs_d.mul(&abs_d), d.mul(&d));
        assert_ne!(connection_matrix(&g).sub(&green_matrix(&g)), abs_d.mul(&abs_d));
    }

    #[test]
    fn cycle_edge_degree_counts_shared_edge_once() {
        let g = whitney(&Graph::cycle(6)).unwrap();
        let rows = connection_matrix(&g).row_sums();
        for e in g.block(1) {
            let x = g.get(e).vertices();
            let a = g.position(&s(&[x[0]])).unwrap();
            let b = g.position(&s(&[x[1]])).unwrap();
            assert_eq!(rows[e], rows[a] + rows[b] - 1);
        }
    }

    #[test]
    fn deletion_gives_subcomplex_matrix() {
        let g = closure(&[[1, 2]]).unwrap();
        let l = connection_matrix(&g);
        assert_eq!(submatrix_delete(&l, &[2]).unwrap(), IntegerMatrix::identity(2));
        assert_eq!(submatrix_delete(&l, &[]).unwrap(), l);

        // C_4 inside K_4 minus the edge {1,3}
        let big = whitney(&Graph::new(1..=4, [(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)]).unwrap()).unwrap();
        let small = whitney(&Graph::cycle(4)).unwrap();
        let drop: Vec<usize> =
            (0..big.len()).filter(|&i| !small.contains(big.get(i))).collect();
        assert_eq!(submatrix_delete(&connection_matrix(&big), &drop).unwrap(), connection_matrix(&small));
        assert_eq!(submatrix_delete(&dirac(&big), &drop).unwrap(), dirac(&small));
    }

    #[test]
    fn dump_formats() {
        let g = closure(&[[1, 2]]).unwrap();
        let dump = MatrixDump::new(&g, OperatorKind::Connection, &connection_matrix(&g));
        assert_eq!(dump.to_csv(), "1,0,1\n0,1,1\n1,1,1\n");
        let json = serde_json::to_string(&dump).unwrap();
        assert_eq!(json, r#"{"basis":[[1],[2],[1,2]],"name":"L","entries":[[1,0,1],[0,1,1],[1,1,1]]}"#);
        assert_eq!("g".parse::<OperatorKind>().unwrap(), OperatorKind::Green);
        assert!("X".parse::<OperatorKind>().is_err());
    }
}
