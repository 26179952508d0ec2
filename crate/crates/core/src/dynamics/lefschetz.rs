use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Complex, Simplex};
use crate::error::{invalid, Result};
use crate::exact::{self, RationalMatrix};
use crate::matrix::IntegerMatrix;
use crate::operators::coboundary_block;
use crate::report::Verdict;
use crate::spectra::eigen;

use super::{fixed_points, koopman, supertrace, SimplicialMap};

/// Exact harmonic forms of each Hodge block: a kernel basis `Q_k` and the
/// coordinate map `(Q_k^T Q_k)^{-1} Q_k^T` onto it.
#[derive(Clone, Debug)]
pub struct Cohomology {
    blocks: Vec<HarmonicBlock>,
}

#[derive(Clone, Debug)]
struct HarmonicBlock {
    range: std::ops::Range<usize>,
    basis: RationalMatrix,
    coords: RationalMatrix,
}

impl Cohomology {
    pub fn new(g: &Complex) -> Self {
        let q = g.dimension().map_or(0, |q| q + 1);
        let blocks = (0..q)
            .map(|k| {
                let h = harmonic_constraints(g, k);
                let vectors = exact::kernel_basis(&h);
                let basis = exact::rational_transpose(&vectors);
                let basis = if vectors.is_empty() { vec![Vec::new(); h.cols()] } else { basis };
                let gram = exact::rational_mul(&vectors, &basis);
                let coords = if vectors.is_empty() {
                    Vec::new()
                } else {
                    exact::rational_mul(&exact::rational_inverse(&gram).expect("kernel basis is independent"), &vectors)
                };
                HarmonicBlock { range: g.block(k), basis, coords }
            })
            .collect();
        Cohomology { blocks }
    }

    pub fn betti(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.coords.len()).collect()
    }

    /// Matrix of the map induced by `u` on the k-th harmonic space.
    pub fn induced(&self, k: usize, u: &IntegerMatrix) -> RationalMatrix {
        let b = &self.blocks[k];
        let r = b.range.clone();
        let uq: RationalMatrix = r
            .clone()
            .map(|i| {
                let cols = b.basis.first().map_or(0, Vec::len);
                (0..cols)
                    .map(|j| {
                        r.clone()
                            .filter(|&y| u[(i, y)] != 0)
                            .fold(BigRational::zero(), |s, y| s + &b.basis[y - r.start][j] * exact::rational(u[(i, y)]))
                    })
                    .collect()
            })
            .collect();
        exact::rational_mul(&b.coords, &uq)
    }

    /// `sum_k (-1)^k tr(U | H^k)`.
    pub fn lefschetz(&self, u: &IntegerMatrix) -> i64 {
        let total = (0..self.blocks.len()).fold(BigRational::zero(), |s, k| {
            let t = exact::rational_trace(&self.induced(k, u));
            if k % 2 == 0 {
                s + t
            } else {
                s - t
            }
        });
        assert!(total.is_integer(), "Lefschetz number {total} is not an integer");
        total.to_integer().to_i64().expect("Lefschetz number fits in i64")
    }
}

/// `[d_k; d_{k-1}^T]`, whose kernel is the kernel of `H_k`.
fn harmonic_constraints(g: &Complex, k: usize) -> IntegerMatrix {
    let up = coboundary_block(g, k);
    let mut rows = up.to_rows();
    if k > 0 {
        rows.extend(coboundary_block(g, k - 1).transpose().to_rows());
    }
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, g.block(k).len());
    }
    IntegerMatrix::from_rows(&rows).expect("blocks share the column count")
}

/// Exact `chi_T(G)`, the supertrace of the map induced on harmonic forms.
pub fn lefschetz_number(t: &SimplicialMap<'_>) -> i64 {
    Cohomology::new(t.complex()).lefschetz(&koopman(t))
}

/// JSON shape `{fixed, indices, sum, lefschetz, pass}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub fixed: Vec<Simplex>,
    pub indices: Vec<i64>,
    pub sum: i64,
    pub lefschetz: i64,
    pub pass: bool,
}

impl LefschetzReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::exact("lefschetz", self.pass)
            .with_witness(serde_json::json!({ "sum": self.sum, "lefschetz": self.lefschetz }))
    }
}

pub fn verify_lefschetz(t: &SimplicialMap<'_>) -> LefschetzReport {
    verify_lefschetz_with(t, &Cohomology::new(t.complex()))
}

pub(crate) fn verify_lefschetz_with(t: &SimplicialMap<'_>, cohomology: &Cohomology) -> LefschetzReport {
    let fp = fixed_points(t);
    let sum = fp.index_sum();
    let lefschetz = cohomology.lefschetz(&koopman(t));
    LefschetzReport { fixed: fp.fixed, indices: fp.indices, sum, lefschetz, pass: sum == lefschetz }
}

/// `str(U_T)` against the fixed-point index sum.
pub fn koopman_supertrace_check(t: &SimplicialMap<'_>) -> Verdict {
    let st = supertrace(t.complex(), &koopman(t));
    let sum = fixed_points(t).index_sum();
    Verdict::exact("koopman-supertrace", st == sum).with_witness(serde_json::json!({ "supertrace": st, "sum": sum }))
}

/// `|str(exp(-tH) U_T) - chi_T| <= tol` for each time.
pub fn heat_deformation_check(t: &SimplicialMap<'_>, times: &[f64], tol: f64) -> Result<Verdict> {
    heat_deformation_check_with(t, times, tol, &Cohomology::new(t.complex()))
}

pub(crate) fn heat_deformation_check_with(
    t: &SimplicialMap<'_>,
    times: &[f64],
    tol: f64,
    cohomology: &Cohomology,
) -> Result<Verdict> {
    if !t.is_automorphism() {
        return invalid("heat deformation needs an automorphism");
    }
    let g = t.complex();
    let u = koopman(t);
    let chi = cohomology.lefschetz(&u);
    let e = eigen(&crate::operators::hodge(g).to_real())?;
    let mut worst = 0.0f64;
    let mut values = Vec::new();
    for &time in times {
        let heat = e.apply_fn(|x| (-time * x).exp());
        let st: f64 = (0..g.len())
            .map(|i| {
                let diag: f64 = (0..g.len()).filter(|&y| u[(y, i)] != 0).map(|y| heat[(i, y)] * u[(y, i)] as f64).sum();
                g.get(i).omega() as f64 * diag
            })
            .sum();
        worst = worst.max((st - chi as f64).abs());
        values.push(st);
    }
    Ok(Verdict::margin("heat-deformation", tol - worst, 0.0)
        .with_witness(serde_json::json!({ "lefschetz": chi, "times": times, "supertraces": values })))
}

/// Power series of the dynamical zeta function computed two ways.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicalZeta {
    /// `chi_{T^k}` for `k = 1..=order`.
    pub lefschetz: Vec<i64>,
    /// Coefficients of `exp(sum chi_{T^k} s^k / k)` through `s^order`.
    pub series: Vec<BigRational>,
    /// `prod_k det(I - s U_k)^{(-1)^(k+1)}` as numerator and denominator.
    pub numerator: Vec<BigRational>,
    pub denominator: Vec<BigRational>,
    /// Expansion of `numerator / denominator` through `s^order`.
    pub closed_form_series: Vec<BigRational>,
}

impl DynamicalZeta {
    pub fn matches(&self) -> bool {
        self.series == self.closed_form_series
    }
}

pub fn dynamical_zeta(t: &SimplicialMap<'_>, order: usize) -> Result<DynamicalZeta> {
    if !t.is_automorphism() {
        return invalid("dynamical zeta needs an automorphism");
    }
    let cohomology = Cohomology::new(t.complex());
    let lefschetz: Vec<i64> = (1..=order).map(|k| cohomology.lefschetz(&koopman(&t.power(k)))).collect();

    let mut series = vec![BigRational::zero(); order + 1];
    series[0] = BigRational::one();
    for n in 1..=order {
        let acc = (1..=n).fold(BigRational::zero(), |s, k| s + exact::rational(lefschetz[k - 1]) * &series[n - k]);
        series[n] = acc / BigRational::from_integer(BigInt::from(n));
    }

    let u = koopman(t);
    let mut numerator = vec![BigRational::one()];
    let mut denominator = vec![BigRational::one()];
    for k in 0..cohomology.blocks.len() {
        let p = exact::rational_reverse_charpoly(&cohomology.induced(k, &u));
        if k % 2 == 1 {
            numerator = poly_mul(&numerator, &p);
        } else {
            denominator = poly_mul(&denominator, &p);
        }
    }
    let closed_form_series = series_divide(&numerator, &denominator, order);
    Ok(DynamicalZeta { lefschetz, series, numerator, denominator, closed_form_series })
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Power series of `a / b` through `s^order`; `b(0)` must be nonzero.
fn series_divide(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<BigRational> {
    let zero = BigRational::zero();
    let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = a.get(n).cloned().unwrap_or_else(BigRational::zero);
        for k in 1..=n.min(b.len() - 1) {
            c -= b.get(k).unwrap_or(&zero) * &out[n - k];
        }
        out.push(c / &b[0]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{closure, whitney, Graph};
    use crate::dynamics::find_automorphisms;

    fn rotation(g: &Complex, n: u32) -> SimplicialMap<'_> {
        SimplicialMap::validate(g, (1..=n).map(|v| (v, v % n + 1))).unwrap()
    }

    fn r(n: i64) -> BigRational {
        exact::rational(n)
    }

    /// Oracle: Lefschetz number as the supertrace of the map induced on the
    /// homology quotient `ker d^T / im d^T`, with representatives chosen by
    /// extending a basis of boundaries to a basis of cycles.
    fn homology_trace_oracle(t: &SimplicialMap<'_>) -> i64 {
        let g = t.complex();
        let n = g.len();
        let u = koopman(t);
        let boundary = crate::operators::exterior_derivative(g).transpose();
        let mut span: Vec<Vec<BigRational>> = Vec::new();
        for j in 0..n {
            let v: Vec<BigRational> = (0..n).map(|i| r(boundary[(i, j)])).collect();
            if independent(&span, &v) {
                span.push(v);
            }
        }
        let boundaries = span.len();
        for z in exact::kernel_basis(&boundary) {
            if independent(&span, &z) {
                span.push(z);
            }
        }
        let m = exact::rational_transpose(&span);
        let mut total = BigRational::zero();
        for idx in boundaries..span.len() {
            let h = &span[idx];
            let uh: Vec<BigRational> =
                (0..n).map(|i| (0..n).fold(BigRational::zero(), |s, y| s + r(u[(i, y)]) * &h[y])).collect();
            let c = solve(&m, &uh).swap_remove(idx);
            let dim = h.iter().position(|x| !x.is_zero()).map(|i| g.get(i).dim()).unwrap();
            total += if dim % 2 == 0 { c } else { -c };
        }
        total.to_integer().to_i64().unwrap()
    }

    fn independent(span: &[Vec<BigRational>], v: &[BigRational]) -> bool {
        let mut m: Vec<Vec<BigRational>> = span.to_vec();
        m.push(v.to_vec());
        let cols = v.len();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            for i in rank + 1..m.len() {
                let f = &m[i][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
            rank += 1;
        }
        rank > span.len()
    }

    /// Coordinates of `b` in the independent columns of `m`.
    fn solve(m: &RationalMatrix, b: &[BigRational]) -> Vec<BigRational> {
        let normal = exact::rational_mul(&exact::rational_transpose(m), m);
        let rhs: Vec<BigRational> =
            (0..m[0].len()).map(|j| (0..m.len()).fold(BigRational::zero(), |s, i| s + &m[i][j] * &b[i])).collect();
        let inv = exact::rational_inverse(&normal).unwrap();
        inv.iter().map(|row| row.iter().zip(&rhs).fold(BigRational::zero(), |s, (a, c)| s + a * c)).collect()
    }

    #[test]
    fn lefschetz_examples() {
        let k3 = whitney(&Graph::complete(3)).unwrap();
        assert_eq!(lefschetz_number(&SimplicialMap::identity(&k3)), 1);
        for t in find_automorphisms(&k3, None).unwrap() {
            assert_eq!(lefschetz_number(&t), 1);
        }
        let c4 = whitney(&Graph::cycle(4)).unwrap();
        assert_eq!(lefschetz_number(&SimplicialMap::identity(&c4)), 0);
        assert_eq!(lefschetz_number(&rotation(&c4, 4)), 0);
        let oct = whitney(&Graph::octahedron()).unwrap();
        assert_eq!(lefschetz_number(&SimplicialMap::identity(&oct)), 2);
    }

    #[test]
    fn lefschetz_matches_homology_oracle() {
        let c4 = whitney(&Graph::cycle(4)).unwrap();
        let hollow = closure(&[[1, 2], [2, 3], [1, 3], [3, 4]]).unwrap();
        for g in [&c4, &hollow] {
            for t in find_automorphisms(g, None).unwrap() {
                assert_eq!(lefschetz_number(&t), homology_trace_oracle(&t));
            }
        }
        let reflection = SimplicialMap::validate(&c4, [(1, 1), (2, 4), (3, 3), (4, 2)]).unwrap();
        assert_eq!(homology_trace_oracle(&reflection), 2);
        assert_eq!(lefschetz_number(&reflection), 2);
    }

    #[test]
    fn verification_examples() {
        let c4 = whitney(&Graph::cycle(4)).unwrap();
        let rep = verify_lefschetz(&rotation(&c4, 4));
        assert!(rep.pass && rep.fixed.is_empty());
        assert_eq!((rep.sum, rep.lefschetz), (0, 0));
        let k4 = whitney(&Graph::complete(4)).unwrap();
        // two 2-cycles: the fixed simplices are {1,2}, {3,4} and the tetrahedron
        let t = SimplicialMap::validate(&k4, [(1, 2), (2, 1), (3, 4), (4, 3)]).unwrap();
        let rep = verify_lefschetz(&t);
        assert_eq!((rep.sum, rep.lefschetz), (1, 1));
        assert_eq!(rep.fixed.len(), 3);
        assert!(koopman_supertrace_check(&t).pass);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["fixed"][0], serde_json::json!([1, 2]));
    }

    #[test]
    fn heat_examples() {
        let c4 = whitney(&Graph::cycle(4)).unwrap();
        let v = heat_deformation_check(&rotation(&c4, 4), &[0.0, 1.0], 1e-8).unwrap();
        assert!(v.pass);
        let id = heat_deformation_check(&SimplicialMap::identity(&c4), &[0.1, 1.0, 10.0], 1e-8).unwrap();
        assert!(id.pass);
        assert!(heat_deformation_check(&SimplicialMap::constant(&c4, 1).unwrap(), &[1.0], 1e-8).is_err());
    }

    #[test]
    fn zeta_examples() {
        let k3 = whitney(&Graph::complete(3)).unwrap();
        let z = dynamical_zeta(&SimplicialMap::identity(&k3), 6).unwrap();
        assert_eq!(z.series, vec![r(1); 7]);
        assert!(z.matches());
        assert_eq!(z.denominator, vec![r(1), r(-1)]);
        let empty = dynamical_zeta(&SimplicialMap::identity(&k3), 0).unwrap();
        assert_eq!(empty.series, vec![r(1)]);
        assert!(empty.matches());

        let c4 = whitney(&Graph::cycle(4)).unwrap();
        for t in find_automorphisms(&c4, None).unwrap() {
            let z = dynamical_zeta(&t, 8).unwrap();
            assert!(z.matches(), "{:?}", t.to_file());
        }
        let reflection = SimplicialMap::validate(&c4, [(1, 1), (2, 4), (3, 3), (4, 2)]).unwrap();
        // H^0 fixed, H^1 reversed: zeta = (1 + s) / (1 - s)
        let z = dynamical_zeta(&reflection, 3).unwrap();
        assert_eq!(z.series, vec![r(1), r(2), r(2), r(2)]);
    }
}
