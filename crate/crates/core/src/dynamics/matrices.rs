use crate::complex::Complex;
use crate::error::{invalid, Result};
use crate::matrix::IntegerMatrix;
use crate::operators::{connection_matrix, exterior_derivative, green_matrix, hodge};
use crate::report::Verdict;

use super::{koopman, SimplicialMap};

/// `L_T = L P`, `g_T = g P`, `d_T` and `D_T = d_T + d_T^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicalMatrices {
    pub connection: IntegerMatrix,
    pub green: IntegerMatrix,
    pub derivative: IntegerMatrix,
    pub dirac: IntegerMatrix,
}

/// `P(x, y) = 1` if `x = perm[y]`.
fn permutation_matrix(perm: &[usize]) -> IntegerMatrix {
    let mut p = IntegerMatrix::zeros(perm.len(), perm.len());
    for (y, &x) in perm.iter().enumerate() {
        p[(x, y)] = 1;
    }
    p
}

impl DynamicalMatrices {
    /// From an automorphism. `d_T(x, y) = s(x, T(y))` takes the orientation
    /// of the image `T(y)` into account, so `d_T = d U_T`.
    pub fn for_automorphism(t: &SimplicialMap<'_>) -> Result<Self> {
        if !t.is_automorphism() {
            return invalid("dynamical matrices need an automorphism or an explicit basis permutation");
        }
        let g = t.complex();
        let p = permutation_matrix(&t.basis_image());
        let derivative = exterior_derivative(g).mul(&koopman(t));
        Ok(Self::assemble(g, &p, derivative))
    }

    /// From an arbitrary permutation of the basis, with `d_T = d P`.
    pub fn for_permutation(g: &Complex, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; g.len()];
        if perm.len() != g.len() || !perm.iter().all(|&i| i < g.len() && !std::mem::replace(&mut seen[i], true)) {
            return invalid("basis permutation expected");
        }
        let p = permutation_matrix(perm);
        let derivative = exterior_derivative(g).mul(&p);
        Ok(Self::assemble(g, &p, derivative))
    }

    fn assemble(g: &Complex, p: &IntegerMatrix, derivative: IntegerMatrix) -> Self {
        let dirac = derivative.add(&derivative.transpose());
        DynamicalMatrices { connection: connection_matrix(g).mul(p), green: green_matrix(g).mul(p), derivative, dirac }
    }

    /// `L_T g_T^T = I` and `sum g_T = chi(G)`.
    pub fn inverse_and_energy(&self, g: &Complex) -> Verdict {
        let id = self.connection.mul(&self.green.transpose()) == IntegerMatrix::identity(g.len());
        let energy = self.green.sum();
        Verdict::exact("dynamical-inverse-energy", id && energy == g.euler_characteristic())
            .with_witness(serde_json::json!({ "identity": id, "energy": energy }))
    }
}

/// `(d_T + d_T^T)^2 = D^2`, exact.
pub fn dynamical_dirac_check(g: &Complex, m: &DynamicalMatrices) -> Verdict {
    Verdict::exact("dynamical-dirac", m.dirac.mul(&m.dirac) == hodge(g))
}
