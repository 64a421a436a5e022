//! Coherence quantifiers in the computational basis.
//!
//! Each quantifier has a pure-state fast path working directly on amplitudes
//! and, where one exists in closed form, a density-matrix implementation for
//! small dimensions. The density-matrix versions are the oracles the fast
//! paths are tested against; the pipeline states only ever use the fast paths.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerances;

/// Largest dimension accepted by the density-matrix routines.
pub const MAX_DENSITY_DIM: usize = 256;

/// Compensated summation (Neumaier), evaluated in slice order.
pub(crate) fn stable_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Order parameter of the Tsallis relative entropy of coherence.
///
/// Valid values are `(0, 1) U (1, 2]`; `alpha = 1` is also accepted and
/// denotes the limit, which equals `ln 2` times the relative entropy of coherence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Domain(format!(
                "alpha must lie in (0, 1) U (1, 2], got {alpha}"
            )));
        }
        Ok(AlphaParam(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Whether the `alpha -> 1` limit is used instead of the direct formula.
    pub fn is_limit(self) -> bool {
        (self.0 - 1.0).abs() <= tolerances::ALPHA_LIMIT
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [1, 2], got {p}")));
    }
    Ok(())
}

/// `x ln x` with `0 ln 0 = 0`.
fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Tsallis relative `alpha`-entropy of coherence of a pure state:
/// `(sum_i |c_i|^(2/alpha) - 1) / (alpha - 1)`, or the Shannon entropy of
/// `|c_i|^2` in nats at the limit point.
pub fn tsallis_coherence_pure(amplitudes: &[Complex64], alpha: AlphaParam) -> f64 {
    if alpha.is_limit() {
        return -stable_sum(amplitudes.iter().map(|c| xlnx(c.norm_sqr())));
    }
    let a = alpha.value();
    let exponent = 1.0 / a;
    let total = stable_sum(
        amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .filter(|&p| p > 0.0)
            .map(|p| p.powf(exponent)),
    );
    (total - 1.0) / (a - 1.0)
}

/// `l_{1,p}` norm of coherence of a pure state, `sum_j |c_j| (sum_{i != j} |c_i|^p)^(1/p)`.
pub fn l1p_coherence_pure(amplitudes: &[Complex64], p: f64) -> Result<f64> {
    check_p(p)?;
    let moduli: Vec<f64> = amplitudes
        .iter()
        .map(|c| c.norm())
        .filter(|&m| m > 0.0)
        .collect();
    let powered: Vec<f64> = moduli.iter().map(|m| m.powf(p)).collect();
    let total = stable_sum(powered.iter().copied());
    Ok(stable_sum(
        moduli
            .iter()
            .zip(&powered)
            .map(|(m, mp)| m * (total - mp).max(0.0).powf(1.0 / p)),
    ))
}

/// Geometric coherence of a pure state, `1 - max_i |c_i|^2`.
pub fn geometric_coherence_pure(amplitudes: &[Complex64]) -> f64 {
    1.0 - amplitudes.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max)
}

/// Density operator of dimension at most [`MAX_DENSITY_DIM`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (within `1e-10`).
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = entries.nrows();
        if entries.ncols() != dim || dim == 0 {
            return Err(Error::Domain(format!(
                "matrix is {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if dim > MAX_DENSITY_DIM {
            return Err(Error::Scale(format!(
                "dimension {dim} exceeds {MAX_DENSITY_DIM}"
            )));
        }
        let tol = tolerances::DENSITY_VALIDATION;
        for i in 0..dim {
            for j in i..dim {
                if (entries[(i, j)] - entries[(j, i)].conj()).norm() > tol {
                    return Err(Error::Domain(format!(
                        "matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::Domain(format!("trace is {trace}, expected 1")));
        }
        let rho = DensityMatrix { entries };
        let min_eig = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -tol {
            return Err(Error::Domain(format!(
                "matrix has negative eigenvalue {min_eig}"
            )));
        }
        Ok(rho)
    }

    /// `|psi><psi|` for a normalized amplitude vector.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let dim = amplitudes.len();
        if dim > MAX_DENSITY_DIM {
            return Err(Error::Scale(format!(
                "dimension {dim} exceeds {MAX_DENSITY_DIM}"
            )));
        }
        let entries = DMatrix::from_fn(dim, dim, |i, j| amplitudes[i] * amplitudes[j].conj());
        Self::new(entries)
    }

    /// Diagonal density matrix from a probability vector.
    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        let dim = probabilities.len();
        let entries = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                Complex64::new(probabilities[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    fn eigen(&self) -> nalgebra::SymmetricEigen<Complex64, nalgebra::Dyn> {
        self.entries.clone().symmetric_eigen()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen().eigenvalues.iter().copied().collect()
    }

    /// Diagonal of `f(rho)` for a scalar function applied to clamped eigenvalues.
    fn diagonal_of_function<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        let eig = self.eigen();
        let dim = self.dim();
        let values: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&l| if l < tolerances::EIGEN_CLAMP { 0.0 } else { l })
            .map(&f)
            .collect();
        (0..dim)
            .map(|i| stable_sum((0..dim).map(|k| eig.eigenvectors[(i, k)].norm_sqr() * values[k])))
            .collect()
    }

    fn diag_probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).collect()
    }
}

/// Relative entropy of coherence in bits, `S(rho_diag) - S(rho)`.
pub fn relative_entropy_coherence(rho: &DensityMatrix) -> f64 {
    let s_rho = -stable_sum(
        rho.eigenvalues()
            .into_iter()
            .map(|l| if l < tolerances::EIGEN_CLAMP { 0.0 } else { l })
            .map(xlnx),
    );
    let s_diag = -stable_sum(rho.diag_probabilities().into_iter().map(xlnx));
    ((s_diag - s_rho) / std::f64::consts::LN_2).max(0.0)
}

/// Tsallis relative `alpha`-entropy of coherence,
/// `(sum_i <i|rho^alpha|i>^(1/alpha) - 1) / (alpha - 1)`.
///
/// `rho^alpha` is formed from the Hermitian eigendecomposition with
/// eigenvalues below `1e-12` clamped to zero.
pub fn tsallis_coherence_density(rho: &DensityMatrix, alpha: AlphaParam) -> f64 {
    if alpha.is_limit() {
        return std::f64::consts::LN_2 * relative_entropy_coherence(rho);
    }
    let a = alpha.value();
    let diag = rho.diagonal_of_function(|l| if l > 0.0 { l.powf(a) } else { 0.0 });
    let total = stable_sum(diag.into_iter().map(|d| d.max(0.0).powf(1.0 / a)));
    (total - 1.0) / (a - 1.0)
}

/// `l_{q,p}` matrix norm: the `l_q` norm of the column-wise `l_p` norms.
///
/// A raw matrix norm; only `q = 1`, `p` in `[1, 2]` yields a coherence measure.
pub fn lqp_norm(matrix: &DMatrix<Complex64>, q: f64, p: f64) -> Result<f64> {
    if q < 1.0 || p < 1.0 || q.is_nan() || p.is_nan() {
        return Err(Error::Domain(format!(
            "norm orders must be >= 1, got q={q}, p={p}"
        )));
    }
    let column_norm = |j: usize| -> f64 {
        let col = matrix.column(j);
        if p.is_infinite() {
            col.iter().map(|z| z.norm()).fold(0.0, f64::max)
        } else {
            stable_sum(col.iter().map(|z| z.norm().powf(p))).powf(1.0 / p)
        }
    };
    let norms: Vec<f64> = (0..matrix.ncols()).map(column_norm).collect();
    Ok(if q.is_infinite() {
        norms.into_iter().fold(0.0, f64::max)
    } else {
        stable_sum(norms.into_iter().map(|v| v.powf(q))).powf(1.0 / q)
    })
}

/// `l_{1,p}` norm of coherence: `l_{1,p}(rho - rho_diag)`.
pub fn l1p_coherence_density(rho: &DensityMatrix, p: f64) -> Result<f64> {
    check_p(p)?;
    let mut off = rho.entries.clone();
    for i in 0..rho.dim() {
        off[(i, i)] = Complex64::new(0.0, 0.0);
    }
    lqp_norm(&off, 1.0, p)
}

/// Skew-information coherence `1 - sum_j <j|sqrt(rho)|j>^2`.
pub fn skew_info_coherence(rho: &DensityMatrix) -> f64 {
    let diag = rho.diagonal_of_function(f64::sqrt);
    1.0 - stable_sum(diag.into_iter().map(|d| d * d))
}
