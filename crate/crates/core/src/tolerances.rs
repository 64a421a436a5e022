//! Numerical tolerances shared by the verification harness and the tests.
//!
//! Every threshold used to gate a check lives here so that the gates stay
//! consistent between the library, the CLI and the acceptance suite.

/// Analytic identities evaluated two ways in double precision.
pub const ANALYTIC: f64 = 1e-9;

/// Agreement with values printed to four significant digits.
pub const PRINTED_VALUE: f64 = 1e-3;

/// Agreement of the geometric coherence of the uniform register with `0.9995`.
pub const PRINTED_CG_PSI1: f64 = 5e-5;

/// Exact rational values such as `1 - 1/16`.
pub const EXACT: f64 = 1e-12;

/// Norm preservation of gate applications.
pub const NORM: f64 = 1e-10;

/// Amplitudes below this modulus are treated as exact zeros when reading supports.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

/// Distance from `alpha = 1` below which the Tsallis quantifier uses its limit.
pub const ALPHA_LIMIT: f64 = 1e-6;

/// Eigenvalues below this value are clamped to zero before fractional powers.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Hermiticity and trace checks on density matrices.
pub const DENSITY_VALIDATION: f64 = 1e-10;

/// Continuity of the Tsallis quantifier towards `ln 2 * C_r` at `alpha = 1 +/- 1e-4`.
pub const ALPHA_CONTINUITY: f64 = 1e-3;

/// Grid step used when locating the interior peak of `C_alpha(rho_3)`.
pub const ALPHA_PEAK_STEP: f64 = 1e-4;

/// Agreement of the located peak with the reported `1.629`.
pub const ALPHA_PEAK: f64 = 5e-3;

/// Gates applied by [`crate::theorems::verify_stage`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum numeric-vs-closed-form gap for the coherence rows.
    pub coherence_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            coherence_gap: ANALYTIC,
        }
    }
}
