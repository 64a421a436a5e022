//! Geometric entanglement under the symmetric product ansatz `|eta(alpha)>^{(x) n}`
//! with `|eta> = cos(alpha/2)|0> + sin(alpha/2)|1>`.
//!
//! The overlap of a state with the ansatz depends on each basis label only
//! through its Hamming weight, so a state is first folded into per-weight
//! amplitude sums ([`SymmetricProfile`]) and the 1-D maximization over the
//! angle runs on that profile.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::ShorInstance;
use crate::optimize::{grid_then_golden, Maximum};
use crate::statevec::PureState;

/// Grid size used to seed the angle search.
pub const ANSATZ_GRID_POINTS: usize = 2048;

/// Final bracket width of the golden-section refinement.
pub const ANSATZ_REFINE_WIDTH: f64 = 1e-10;

/// Popcounts of the composite basis labels of the modular-exponentiation
/// output and of the idealized post-transform state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HammingTable {
    /// Total qubits.
    pub n: u32,
    pub r: u64,
    pub q: u64,
    /// `n_{a,b}`: weight of `|a + b r>|x^a mod N>`. Row `a` holds every `b` with
    /// `a + b r < Q`, so rows are ragged when `r` does not divide `Q`.
    pub weights_ab: Vec<Vec<u32>>,
    /// `m_{a,s}`: weight of `|s Q/r>|x^a mod N>`; absent unless `r | Q`.
    pub weights_as: Option<Vec<Vec<u32>>>,
}

/// Builds the Hamming-weight tables for an instance whose order is known.
pub fn build_hamming_table(instance: &ShorInstance) -> Result<HammingTable> {
    let r = instance.require_order()?;
    let q = instance.q();
    let l = instance.l;
    let residues: Vec<u64> = (0..r)
        .scan(1 % instance.modulus, |acc, _| {
            let cur = *acc;
            *acc = (*acc as u128 * instance.base as u128 % instance.modulus as u128) as u64;
            Some(cur)
        })
        .collect();
    let weights_ab = (0..r)
        .map(|a| {
            (0..)
                .map(|b| a + b * r)
                .take_while(|&j| j < q)
                .map(|j| ((j << l) | residues[a as usize]).count_ones())
                .collect()
        })
        .collect();
    let weights_as = instance.quotient().map(|m| {
        (0..r)
            .map(|a| {
                (0..r)
                    .map(|s| (((s * m) << l) | residues[a as usize]).count_ones())
                    .collect()
            })
            .collect()
    });
    Ok(HammingTable {
        n: instance.n_qubits(),
        r,
        q,
        weights_ab,
        weights_as,
    })
}

/// Single-term maximum `max_alpha cos^{n-w}(alpha/2) sin^w(alpha/2)`
/// `= ((n-w)/n)^{(n-w)/2} (w/n)^{w/2}`, with `0^0 = 1`.
pub fn max_term_weight(n: u32, w: u32) -> f64 {
    let nf = n as f64;
    let zero_safe = |num: u32| {
        if num == 0 {
            1.0
        } else {
            (num as f64 / nf).powf(num as f64 / 2.0)
        }
    };
    zero_safe(n - w) * zero_safe(w)
}

/// Angle at which the single-term maximum is attained, `2 arccos sqrt((n-w)/n)`.
pub fn max_term_angle(n: u32, w: u32) -> f64 {
    2.0 * ((n - w) as f64 / n as f64).sqrt().acos()
}

/// Per-Hamming-weight sums of conjugated amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricProfile {
    n: u32,
    by_weight: Vec<Complex64>,
}

impl SymmetricProfile {
    /// Folds an amplitude vector over `n` qubits; sums run in index order.
    pub fn from_amplitudes(amplitudes: &[Complex64], n: u32) -> Self {
        let mut by_weight = vec![Complex64::new(0.0, 0.0); n as usize + 1];
        for (i, a) in amplitudes.iter().enumerate() {
            if a.re != 0.0 || a.im != 0.0 {
                by_weight[(i as u64).count_ones() as usize] += a.conj();
            }
        }
        SymmetricProfile { n, by_weight }
    }

    pub fn from_state(state: &PureState) -> Self {
        Self::from_amplitudes(state.amplitudes(), state.layout().n())
    }

    /// `<psi|eta(angle)^{(x) n}>`.
    pub fn overlap(&self, angle: f64) -> Complex64 {
        let (s, c) = (angle / 2.0).sin_cos();
        let n = self.n as i32;
        self.by_weight
            .iter()
            .enumerate()
            .filter(|(_, b)| b.re != 0.0 || b.im != 0.0)
            .map(|(w, b)| b * (c.powi(n - w as i32) * s.powi(w as i32)))
            .sum()
    }
}

/// `<psi|eta(angle)^{(x) n}>` for a simulated state.
pub fn symmetric_overlap(state: &PureState, angle: f64) -> Complex64 {
    SymmetricProfile::from_state(state).overlap(angle)
}

/// Best symmetric product state found for a given state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricOptimum {
    /// `1 - max |overlap|^2`.
    pub entanglement: f64,
    /// Maximizing angle in `[0, pi]`.
    pub angle: f64,
    pub overlap_sqr: f64,
}

/// Geometric entanglement restricted to the symmetric ansatz with a grid of `points`.
pub fn symmetric_optimum_with_grid(profile: &SymmetricProfile, points: usize) -> SymmetricOptimum {
    let Maximum { arg, value } = grid_then_golden(
        |a| profile.overlap(a).norm_sqr(),
        0.0,
        PI,
        points,
        ANSATZ_REFINE_WIDTH,
    );
    SymmetricOptimum {
        entanglement: 1.0 - value,
        angle: arg,
        overlap_sqr: value,
    }
}

/// `1 - max_alpha |<psi|eta(alpha)^{(x) n}>|^2` over a 2048-point grid plus
/// golden-section refinement.
pub fn geometric_entanglement_symmetric(state: &PureState) -> SymmetricOptimum {
    symmetric_optimum_with_grid(&SymmetricProfile::from_state(state), ANSATZ_GRID_POINTS)
}

/// A closed-form entanglement value with its physical-range flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormEg {
    pub value: f64,
    /// False when the value falls outside `[0, 1]`; the value is never clamped.
    pub in_range: bool,
}

impl ClosedFormEg {
    fn new(value: f64) -> Self {
        ClosedFormEg {
            value,
            in_range: (-1e-12..=1.0 + 1e-12).contains(&value),
        }
    }
}

fn weight_sum_ab(table: &HammingTable) -> f64 {
    table
        .weights_ab
        .iter()
        .flatten()
        .map(|&w| max_term_weight(table.n, w))
        .sum()
}

/// `E_g(rho_2) = 1 - (1/Q) (sum_{a,b} A_max(n_{a,b}))^2`.
pub fn closed_form_eg_psi2(table: &HammingTable) -> ClosedFormEg {
    let s = weight_sum_ab(table);
    ClosedFormEg::new(1.0 - s * s / table.q as f64)
}

/// Both readings of the squared phase-weighted sum for `E_g(rho_3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Psi3ClosedForm {
    /// `S = sum_{a,s} exp(-2 pi i s a / r) B_max(m_{a,s})`.
    pub sum: Complex64,
    /// `1 - Re(S^2) / r^2`.
    pub literal: ClosedFormEg,
    /// `1 - |S|^2 / r^2`; the canonical reading.
    pub modulus_squared: ClosedFormEg,
}

impl Psi3ClosedForm {
    pub fn canonical(&self) -> ClosedFormEg {
        self.modulus_squared
    }
}

fn weight_sum_as(table: &HammingTable) -> Result<Complex64> {
    let weights = table.weights_as.as_ref().ok_or_else(|| {
        Error::Precondition(format!("r = {} does not divide Q = {}", table.r, table.q))
    })?;
    let r = table.r;
    let mut sum = Complex64::new(0.0, 0.0);
    for (a, row) in weights.iter().enumerate() {
        for (s, &w) in row.iter().enumerate() {
            let phase = -2.0 * PI * ((a as u64 * s as u64) % r) as f64 / r as f64;
            sum += Complex64::from_polar(max_term_weight(table.n, w), phase);
        }
    }
    Ok(sum)
}

/// `E_g(rho_3) = 1 - (1/r^2) (sum_{a,s} exp(-2 pi i s a / r) B_max(m_{a,s}))^2`,
/// evaluated under both readings of the square of a complex sum.
pub fn closed_form_eg_psi3(table: &HammingTable) -> Result<Psi3ClosedForm> {
    let sum = weight_sum_as(table)?;
    let r2 = (table.r * table.r) as f64;
    Ok(Psi3ClosedForm {
        sum,
        literal: ClosedFormEg::new(1.0 - (sum * sum).re / r2),
        modulus_squared: ClosedFormEg::new(1.0 - sum.norm_sqr() / r2),
    })
}

/// Which table a gamma factor is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaKind {
    /// `n_{a,b}`, the modular-exponentiation output.
    Psi2,
    /// `m_{a,s}`, the idealized post-transform state.
    Psi3,
}

/// Ordering of geometric coherence against geometric entanglement implied by gamma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoherenceVsEntanglement {
    CoherenceGreater,
    EntanglementGreater,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaFactor {
    pub kind: GammaKind,
    pub gamma: f64,
    /// Upper bound `Q` (psi2) or `r^2` (psi3).
    pub bound: f64,
}

impl GammaFactor {
    pub fn within_bounds(&self) -> bool {
        self.gamma > 0.0 && self.gamma < self.bound
    }

    pub fn classify(&self) -> CoherenceVsEntanglement {
        if (self.gamma - 1.0).abs() < 1e-12 {
            CoherenceVsEntanglement::Equal
        } else if self.gamma > 1.0 {
            CoherenceVsEntanglement::CoherenceGreater
        } else {
            CoherenceVsEntanglement::EntanglementGreater
        }
    }

    /// `C_g + (1 - E_g) / gamma - 1`, which vanishes for consistent inputs.
    pub fn identity_residual(&self, cg: f64, eg: f64) -> f64 {
        cg + (1.0 - eg) / self.gamma - 1.0
    }
}

/// Squared weight sum linking `C_g` and `E_g`; the psi3 factor uses `|S|^2`.
pub fn gamma_factor(table: &HammingTable, kind: GammaKind) -> Result<GammaFactor> {
    let (gamma, bound) = match kind {
        GammaKind::Psi2 => {
            let s = weight_sum_ab(table);
            (s * s, table.q as f64)
        }
        GammaKind::Psi3 => (weight_sum_as(table)?.norm_sqr(), (table.r * table.r) as f64),
    };
    if gamma == 0.0 {
        return Err(Error::Degenerate("gamma factor vanishes".into()));
    }
    Ok(GammaFactor { kind, gamma, bound })
}

/// Largest system handled by [`bruteforce_geometric_entanglement`].
pub const BRUTEFORCE_MAX_QUBITS: u32 = 3;

const BLOCH_GRID: usize = 64;

type Qubit = [Complex64; 2];

fn bloch(theta: f64, phi: f64) -> Qubit {
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// `<(x)_s eta_s | psi>`; qubit 0 is the most significant bit of the index.
fn product_overlap(psi: &[Complex64], n: usize, etas: &[Qubit]) -> Complex64 {
    psi.iter()
        .enumerate()
        .map(|(x, amp)| {
            let coeff: Complex64 = (0..n)
                .map(|s| etas[s][(x >> (n - 1 - s)) & 1].conj())
                .product();
            coeff * amp
        })
        .sum()
}

/// Contracts qubit 0 with `<eta|`, leaving `n - 1` qubits.
fn contract_first(psi: &[Complex64], n: usize, eta: &Qubit) -> Vec<Complex64> {
    let half = 1 << (n - 1);
    (0..half)
        .map(|x| eta[0].conj() * psi[x] + eta[1].conj() * psi[half + x])
        .collect()
}

fn normalized(v: [Complex64; 2]) -> Qubit {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if norm == 0.0 {
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        [v[0] / norm, v[1] / norm]
    }
}

/// Exact best product overlap (squared) of a state on at most two qubits,
/// together with a maximizing product.
fn best_small_product(w: &[Complex64]) -> (f64, Vec<Qubit>) {
    match w.len() {
        1 => (w[0].norm_sqr(), vec![]),
        2 => {
            let eta = normalized([w[0], w[1]]);
            (w[0].norm_sqr() + w[1].norm_sqr(), vec![eta])
        }
        4 => {
            // W[i][j] = w[2i + j]; largest singular value via the 2x2 Gram matrix W^H W
            let g00 = w[0].norm_sqr() + w[2].norm_sqr();
            let g11 = w[1].norm_sqr() + w[3].norm_sqr();
            let g01 = w[0].conj() * w[1] + w[2].conj() * w[3];
            let tr = g00 + g11;
            let det = g00 * g11 - g01.norm_sqr();
            let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
            let top = tr / 2.0 + disc;
            // eigenvector of [[g00, g01], [g01*, g11]] for eigenvalue `top`
            let v = if g01.norm() > 1e-300 {
                normalized([g01, Complex64::new(top - g00, 0.0)])
            } else if g00 >= g11 {
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
            } else {
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
            };
            let u = normalized([w[0] * v[0] + w[1] * v[1], w[2] * v[0] + w[3] * v[1]]);
            (top, vec![u, [v[0].conj(), v[1].conj()]])
        }
        _ => unreachable!("at most two remaining qubits"),
    }
}

/// Alternating single-qubit updates; never decreases the overlap.
fn polish(psi: &[Complex64], n: usize, mut etas: Vec<Qubit>) -> (f64, Vec<Qubit>) {
    let mut best = product_overlap(psi, n, &etas).norm_sqr();
    for _ in 0..1000 {
        for s in 0..n {
            let mut v = [Complex64::new(0.0, 0.0); 2];
            for (x, amp) in psi.iter().enumerate() {
                let coeff: Complex64 = (0..n)
                    .filter(|&t| t != s)
                    .map(|t| etas[t][(x >> (n - 1 - t)) & 1].conj())
                    .product();
                v[(x >> (n - 1 - s)) & 1] += coeff * amp;
            }
            etas[s] = normalized(v);
        }
        let value = product_overlap(psi, n, &etas).norm_sqr();
        let improved = value - best;
        best = best.max(value);
        if improved <= 1e-16 {
            break;
        }
    }
    (best, etas)
}

/// General geometric entanglement of a state on at most three qubits.
///
/// Qubit 0 scans a 64x64 grid of Bloch angles; for every grid point the
/// remaining qubits are optimized exactly (largest singular value), and the
/// best point is polished by alternating single-qubit updates.
pub fn bruteforce_geometric_entanglement(amplitudes: &[Complex64], n: u32) -> Result<f64> {
    if n == 0 || n > BRUTEFORCE_MAX_QUBITS {
        return Err(Error::Scale(format!(
            "brute-force search handles 1..={BRUTEFORCE_MAX_QUBITS} qubits, got {n}"
        )));
    }
    if amplitudes.len() != 1 << n {
        return Err(Error::Domain(format!("expected {} amplitudes", 1 << n)));
    }
    let n = n as usize;
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for ti in 0..BLOCH_GRID {
        let theta = PI * ti as f64 / (BLOCH_GRID - 1) as f64;
        for pi in 0..BLOCH_GRID {
            let phi = 2.0 * PI * pi as f64 / BLOCH_GRID as f64;
            let eta0 = bloch(theta, phi);
            let (value, rest) = best_small_product(&contract_first(amplitudes, n, &eta0));
            if value > best.0 {
                let mut etas = vec![eta0];
                etas.extend(rest);
                best = (value, etas);
            }
        }
    }
    let (value, _) = polish(amplitudes, n, best.1);
    Ok((1.0 - value).max(0.0))
}
