//! Dense pure-state simulation of the order-finding circuit.
//!
//! Joint basis index is `j * 2^L + y` for register-A value `j` and register-B
//! value `y`, so the binary string of a joint index is the concatenation of
//! the two register labels (A first). The Hamming weights used by the
//! entanglement module are popcounts of this index.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::ShorInstance;
use crate::tolerances;

/// Largest total qubit count the dense simulator accepts.
pub const MAX_QUBITS: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegisterLayout {
    /// Qubits in register A.
    pub t: u32,
    /// Qubits in register B.
    pub l: u32,
}

impl RegisterLayout {
    pub fn new(t: u32, l: u32) -> Result<Self> {
        if t == 0 || t + l > MAX_QUBITS {
            return Err(Error::Scale(format!(
                "layout t={t}, L={l} is outside 1 <= t, t + L <= {MAX_QUBITS}"
            )));
        }
        Ok(RegisterLayout { t, l })
    }

    pub fn for_instance(instance: &ShorInstance) -> Result<Self> {
        Self::new(instance.t, instance.l)
    }

    /// Total qubits `n = t + L`.
    pub fn n(&self) -> u32 {
        self.t + self.l
    }

    /// Dimension of register A, `Q = 2^t`.
    pub fn q(&self) -> usize {
        1 << self.t
    }

    /// Dimension of register B, `2^L`.
    pub fn b_dim(&self) -> usize {
        1 << self.l
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn index(&self, j: usize, y: usize) -> usize {
        (j << self.l) | y
    }
}

/// Normalized amplitude vector over the joint basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    layout: RegisterLayout,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector, checking its length and norm.
    pub fn from_amplitudes(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::Domain(format!(
                "expected {} amplitudes, got {}",
                layout.dim(),
                amplitudes.len()
            )));
        }
        let state = PureState { layout, amplitudes };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > tolerances::NORM {
            return Err(Error::Domain(format!(
                "state is not normalized (norm^2 = {norm})"
            )));
        }
        Ok(state)
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, j: usize, y: usize) -> Complex64 {
        self.amplitudes[self.layout.index(j, y)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Joint indices whose amplitude modulus exceeds the roundoff cutoff.
    pub fn support(&self) -> Vec<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tolerances::SUPPORT_CUTOFF)
            .map(|(i, _)| i)
            .collect()
    }

    /// Register-B values carrying nonzero weight.
    pub fn b_support(&self) -> Vec<usize> {
        let mut ys: Vec<usize> = self
            .support()
            .into_iter()
            .map(|i| i & (self.layout.b_dim() - 1))
            .collect();
        ys.sort_unstable();
        ys.dedup();
        ys
    }

    /// Debug dump: `[[index, re, im], ...]` for nonzero amplitudes, sorted by index.
    pub fn to_json_dump(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .support()
            .into_iter()
            .map(|i| {
                let a = self.amplitudes[i];
                serde_json::json!([i, a.re, a.im])
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    /// Copy with `delta` added to one amplitude and the result renormalized.
    ///
    /// Used to self-test the verification harness.
    pub fn perturbed(&self, index: usize, delta: f64) -> PureState {
        let mut amplitudes = self.amplitudes.clone();
        amplitudes[index] += Complex64::new(delta, 0.0);
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amplitudes {
            *a /= norm;
        }
        PureState {
            layout: self.layout,
            amplitudes,
        }
    }
}

/// `|0...0>_A |1>_B`.
pub fn init_state(layout: RegisterLayout) -> PureState {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
    amplitudes[layout.index(0, 1 % layout.b_dim())] = Complex64::new(1.0, 0.0);
    PureState { layout, amplitudes }
}

/// Hadamard on every register-A qubit (a Walsh-Hadamard transform of the A index).
pub fn apply_hadamard_layer(state: &PureState) -> PureState {
    let layout = state.layout;
    let mut amps = state.amplitudes.clone();
    let b_dim = layout.b_dim();
    let q = layout.q();
    let mut half = 1;
    while half < q {
        let stride = half * b_dim;
        for block in (0..amps.len()).step_by(2 * stride) {
            for i in block..block + stride {
                let u = amps[i];
                let v = amps[i + stride];
                amps[i] = u + v;
                amps[i + stride] = u - v;
            }
        }
        half <<= 1;
    }
    let scale = 1.0 / (q as f64).sqrt();
    for a in &mut amps {
        *a *= scale;
    }
    PureState {
        layout,
        amplitudes: amps,
    }
}

/// `U |j>|y> = |j>|x^j y mod N>` for `y < N`, identity for `N <= y < 2^L`.
pub fn apply_modexp_unitary(state: &PureState, instance: &ShorInstance) -> Result<PureState> {
    let layout = state.layout;
    let modulus = instance.modulus as usize;
    if layout.b_dim() < modulus + 1 {
        return Err(Error::Domain(format!(
            "register B ({} qubits) cannot hold residues mod {modulus}",
            layout.l
        )));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); layout.dim()];
    let base = instance.base as u128;
    let m = modulus as u128;
    let mut power: u128 = 1 % m;
    for j in 0..layout.q() {
        for y in 0..layout.b_dim() {
            let a = state.amplitude(j, y);
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let target = if y < modulus {
                (power * y as u128 % m) as usize
            } else {
                y
            };
            let slot = &mut out[layout.index(j, target)];
            if slot.re != 0.0 || slot.im != 0.0 {
                return Err(Error::Internal(format!(
                    "modular multiplication collided at j={j}, y={y}"
                )));
            }
            *slot = a;
        }
        power = power * base % m;
    }
    Ok(PureState {
        layout,
        amplitudes: out,
    })
}

/// In-place radix-2 DFT with kernel `exp(sign * 2 pi i j k / len) / sqrt(len)`.
fn fft_in_place(buf: &mut [Complex64], twiddles: &[Complex64]) {
    let len = buf.len();
    if len <= 1 {
        return;
    }
    let bits = len.trailing_zeros();
    for i in 0..len {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            buf.swap(i, j);
        }
    }
    let mut size = 2;
    while size <= len {
        let half = size / 2;
        let step = len / size;
        for start in (0..len).step_by(size) {
            for k in 0..half {
                let w = twiddles[k * step];
                let u = buf[start + k];
                let v = buf[start + k + half] * w;
                buf[start + k] = u + v;
                buf[start + k + half] = u - v;
            }
        }
        size <<= 1;
    }
    let scale = 1.0 / (len as f64).sqrt();
    for a in buf.iter_mut() {
        *a *= scale;
    }
}

fn transform_register_a(state: &PureState, sign: f64) -> PureState {
    let layout = state.layout;
    let q = layout.q();
    let twiddles: Vec<Complex64> = (0..q / 2)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 / q as f64))
        .collect();
    let mut out = state.amplitudes.clone();
    let mut column = vec![Complex64::new(0.0, 0.0); q];
    for y in 0..layout.b_dim() {
        let mut any = false;
        for (j, slot) in column.iter_mut().enumerate() {
            *slot = state.amplitudes[layout.index(j, y)];
            any |= slot.re != 0.0 || slot.im != 0.0;
        }
        if !any {
            continue;
        }
        fft_in_place(&mut column, &twiddles);
        for (j, v) in column.iter().enumerate() {
            out[layout.index(j, y)] = *v;
        }
    }
    PureState {
        layout,
        amplitudes: out,
    }
}

/// Inverse Fourier transform on register A, kernel `exp(-2 pi i j k / Q) / sqrt(Q)`,
/// applied to each register-B block.
pub fn apply_inverse_qft_a(state: &PureState) -> PureState {
    transform_register_a(state, -1.0)
}

/// Forward Fourier transform on register A, kernel `exp(+2 pi i j k / Q) / sqrt(Q)`.
pub fn apply_qft_a(state: &PureState) -> PureState {
    transform_register_a(state, 1.0)
}

/// The idealized post-transform state for `r | Q`:
/// `(1/r) sum_{s,a} exp(-2 pi i a s / r) |s m>|x^a mod N>`.
pub fn ideal_psi3(instance: &ShorInstance) -> Result<PureState> {
    let r = instance.require_order()?;
    let m = instance.quotient().ok_or_else(|| {
        Error::Precondition(format!(
            "the ideal post-transform state requires r | Q (r = {r}, Q = {})",
            instance.q()
        ))
    })?;
    let layout = RegisterLayout::for_instance(instance)?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
    let inv_r = 1.0 / r as f64;
    let mut residue = 1 % instance.modulus;
    for a in 0..r {
        for s in 0..r {
            let phase = -2.0 * PI * ((a * s) % r) as f64 / r as f64;
            let k = (s * m) as usize;
            amplitudes[layout.index(k, residue as usize)] = Complex64::from_polar(inv_r, phase);
        }
        residue = (residue as u128 * instance.base as u128 % instance.modulus as u128) as u64;
    }
    Ok(PureState { layout, amplitudes })
}

/// Probabilities `p_k` of the register-A outcomes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    pub probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.iter().any(|&p| p < -1e-12 || !p.is_finite()) {
            return Err(Error::Domain("probabilities must be non-negative".into()));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("probabilities sum to {total}")));
        }
        Ok(OutcomeDistribution { probabilities })
    }

    /// Outcomes with probability above `cutoff`.
    pub fn support(&self, cutoff: f64) -> Vec<usize> {
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > cutoff)
            .map(|(k, _)| k)
            .collect()
    }
}

/// `p_k = sum_y |amplitude(k, y)|^2`.
pub fn measurement_distribution_a(state: &PureState) -> OutcomeDistribution {
    let layout = state.layout;
    let b_dim = layout.b_dim();
    let probabilities = state
        .amplitudes
        .chunks(b_dim)
        .map(|block| block.iter().map(|a| a.norm_sqr()).sum())
        .collect();
    OutcomeDistribution { probabilities }
}

/// `delta = s/r - k/Q` as the exact rational `num / (r Q)`.
fn delta_numerator(s: u64, k: u64, r: u64, q: u64) -> i128 {
    s as i128 * q as i128 - k as i128 * r as i128
}

/// Outcome probability with the inner sum evaluated term by term, `O(r Q)`.
///
/// Phases are reduced modulo `r Q` in integer arithmetic before the
/// trigonometric call.
pub fn eq6_probability_direct(k: u64, r: u64, q: u64) -> f64 {
    let period = r as i128 * q as i128;
    let mut total = 0.0;
    for s in 0..r {
        let num = delta_numerator(s, k, r, q).rem_euclid(period);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..q as i128 {
            let idx = (j * num) % period;
            acc += Complex64::from_polar(1.0, 2.0 * PI * idx as f64 / period as f64);
        }
        total += (acc / q as f64).norm_sqr();
    }
    total / r as f64
}

/// Outcome probability via the geometric series `|sin(pi Q delta) / (Q sin(pi delta))|^2`.
pub fn eq6_probability_closed(k: u64, r: u64, q: u64) -> f64 {
    let period = r as i128 * q as i128;
    let mut total = 0.0;
    for s in 0..r {
        let num = delta_numerator(s, k, r, q).rem_euclid(period);
        if num == 0 {
            total += 1.0;
            continue;
        }
        // Q delta = num / r, reduced mod r (only |sin| matters)
        let top = (PI * (num % r as i128) as f64 / r as f64).sin();
        let bottom = q as f64 * (PI * num as f64 / period as f64).sin();
        total += (top / bottom).powi(2);
    }
    total / r as f64
}

/// Outcome probability of the idealized analysis; evaluates both routes and
/// panics if they disagree beyond `1e-9`.
pub fn eq6_probability(k: u64, r: u64, q: u64) -> f64 {
    let closed = eq6_probability_closed(k, r, q);
    let direct = eq6_probability_direct(k, r, q);
    assert!(
        (closed - direct).abs() <= tolerances::ANALYTIC,
        "outcome probability routes disagree at k={k}, r={r}, Q={q}: {closed} vs {direct}"
    );
    closed
}

/// Full outcome distribution from the closed form, without statevector evolution.
pub fn eq6_distribution(r: u64, q: u64) -> Result<OutcomeDistribution> {
    if r == 0 || q == 0 {
        return Err(Error::Domain("r and Q must be positive".into()));
    }
    OutcomeDistribution::new((0..q).map(|k| eq6_probability_closed(k, r, q)).collect())
}

/// Deterministic inverse-CDF sampler over register-A outcomes.
pub struct OutcomeSampler {
    cdf: Vec<f64>,
    rng: ChaCha8Rng,
}

impl OutcomeSampler {
    pub fn new(distribution: &OutcomeDistribution, seed: u64) -> Self {
        let mut acc = 0.0;
        let cdf = distribution
            .probabilities
            .iter()
            .map(|&p| {
                acc += p.max(0.0);
                acc
            })
            .collect();
        OutcomeSampler {
            cdf,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_outcome(&mut self) -> usize {
        let total = *self.cdf.last().unwrap_or(&0.0);
        let u: f64 = self.rng.random::<f64>() * total;
        let idx = self.cdf.partition_point(|&c| c <= u);
        // guard against landing past the end or on a zero-width bin
        let mut idx = idx.min(self.cdf.len() - 1);
        while idx > 0 && self.cdf[idx] == self.cdf[idx - 1] {
            idx -= 1;
        }
        idx
    }
}

/// First outcome drawn with `seed`.
pub fn sample_outcome(distribution: &OutcomeDistribution, seed: u64) -> usize {
    OutcomeSampler::new(distribution, seed).next_outcome()
}

/// `count` outcomes drawn with `seed`.
pub fn sample_outcomes(distribution: &OutcomeDistribution, seed: u64, count: usize) -> Vec<usize> {
    let mut sampler = OutcomeSampler::new(distribution, seed);
    (0..count).map(|_| sampler.next_outcome()).collect()
}

/// States after each circuit stage.
#[derive(Debug, Clone)]
pub struct PipelineStates {
    pub initial: PureState,
    /// After the Hadamard layer.
    pub psi1: PureState,
    /// After modular exponentiation.
    pub psi2: PureState,
    /// After the inverse Fourier transform.
    pub psi3: PureState,
}

impl PipelineStates {
    pub fn run(instance: &ShorInstance) -> Result<Self> {
        let layout = RegisterLayout::for_instance(instance)?;
        let initial = init_state(layout);
        let psi1 = apply_hadamard_layer(&initial);
        let psi2 = apply_modexp_unitary(&psi1, instance)?;
        let psi3 = apply_inverse_qft_a(&psi2);
        Ok(PipelineStates {
            initial,
            psi1,
            psi2,
            psi3,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_diff(a: &PureState, b: &PureState) -> f64 {
        a.amplitudes
            .iter()
            .zip(&b.amplitudes)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn example() -> ShorInstance {
        ShorInstance::new(15, 7, 11)
            .unwrap()
            .with_oracle_order()
            .unwrap()
    }

    #[test]
    fn init_places_single_amplitude() {
        let s = init_state(RegisterLayout::new(1, 1).unwrap());
        assert_eq!(
            s.amplitudes,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
        let s = init_state(RegisterLayout::new(11, 4).unwrap());
        assert_eq!(s.support(), vec![1]);
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn hadamard_layer() {
        let layout = RegisterLayout::new(11, 4).unwrap();
        let psi1 = apply_hadamard_layer(&init_state(layout));
        let expected = 1.0 / 2048f64.sqrt();
        for j in 0..2048 {
            for y in 0..16 {
                let a = psi1.amplitude(j, y);
                if y == 1 {
                    assert!((a.re - expected).abs() < 1e-15 && a.im == 0.0);
                } else {
                    assert_eq!(a, c(0.0, 0.0));
                }
            }
        }
        let back = apply_hadamard_layer(&psi1);
        assert!(max_diff(&back, &init_state(layout)) < 1e-12);

        let small = apply_hadamard_layer(&init_state(RegisterLayout::new(1, 1).unwrap()));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((small.amplitude(0, 1).re - h).abs() < 1e-15);
        assert!((small.amplitude(1, 1).re - h).abs() < 1e-15);
    }

    #[test]
    fn modexp_orbit_support() {
        let inst = example();
        let states = PipelineStates::run(&inst).unwrap();
        assert_eq!(states.psi2.b_support(), vec![1, 4, 7, 13]);
        assert!((states.psi2.norm_sqr() - 1.0).abs() < 1e-12);
        for j in 0..inst.q() as usize {
            let y = mod_pow_usize(7, j, 15);
            assert!((states.psi2.amplitude(j, y).re - 1.0 / 2048f64.sqrt()).abs() < 1e-15);
        }
    }

    fn mod_pow_usize(x: usize, e: usize, n: usize) -> usize {
        (0..e).fold(1, |acc, _| acc * x % n)
    }

    #[test]
    fn modexp_with_trivial_base_is_identity() {
        let inst = ShorInstance::new(15, 1, 4).unwrap();
        let layout = RegisterLayout::for_instance(&inst).unwrap();
        let psi1 = apply_hadamard_layer(&init_state(layout));
        let psi2 = apply_modexp_unitary(&psi1, &inst).unwrap();
        assert_eq!(psi1, psi2);
    }

    #[test]
    fn modexp_fixes_out_of_range_residues() {
        // L = 4 holds 15; y = 15 is left alone
        let inst = ShorInstance::new(15, 7, 2).unwrap();
        let layout = RegisterLayout::for_instance(&inst).unwrap();
        let mut amps = vec![c(0.0, 0.0); layout.dim()];
        amps[layout.index(3, 15)] = c(0.6, 0.0);
        amps[layout.index(3, 2)] = c(0.0, 0.8);
        let s = PureState::from_amplitudes(layout, amps).unwrap();
        let out = apply_modexp_unitary(&s, &inst).unwrap();
        assert_eq!(out.amplitude(3, 15), c(0.6, 0.0));
        // 7^3 * 2 = 686 = 11 mod 15
        assert_eq!(out.amplitude(3, 11), c(0.0, 0.8));
    }

    #[test]
    fn inverse_qft_of_uniform_block_is_delta() {
        let layout = RegisterLayout::new(5, 1).unwrap();
        let psi1 = apply_hadamard_layer(&init_state(layout));
        let out = apply_inverse_qft_a(&psi1);
        assert!((out.amplitude(0, 1) - c(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(out.support(), vec![layout.index(0, 1)]);
    }

    #[test]
    fn inverse_qft_matches_naive_dft() {
        let layout = RegisterLayout::new(4, 1).unwrap();
        let amps: Vec<Complex64> = (0..layout.dim())
            .map(|i| c((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let state =
            PureState::from_amplitudes(layout, amps.iter().map(|a| a / norm).collect()).unwrap();
        let fast = apply_inverse_qft_a(&state);
        let q = layout.q();
        for y in 0..layout.b_dim() {
            for k in 0..q {
                let mut acc = c(0.0, 0.0);
                for j in 0..q {
                    let phase = -2.0 * PI * (j * k) as f64 / q as f64;
                    acc += state.amplitude(j, y) * Complex64::from_polar(1.0, phase);
                }
                acc /= (q as f64).sqrt();
                assert!((acc - fast.amplitude(k, y)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn pipeline_measurement_support() {
        let states = PipelineStates::run(&example()).unwrap();
        let dist = measurement_distribution_a(&states.psi3);
        assert_eq!(dist.support(1e-12), vec![0, 512, 1024, 1536]);
        for k in [0, 512, 1024, 1536] {
            assert!((dist.probabilities[k] - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn ideal_psi3_examples() {
        let inst = example();
        let ideal = ideal_psi3(&inst).unwrap();
        let support = ideal.support();
        assert_eq!(support.len(), 16);
        for i in support {
            assert!((ideal.amplitudes[i].norm() - 0.25).abs() < 1e-15);
        }
        let states = PipelineStates::run(&inst).unwrap();
        assert!(max_diff(&ideal, &states.psi3) < 1e-9);

        let trivial = ShorInstance::new(15, 1, 3)
            .unwrap()
            .with_oracle_order()
            .unwrap();
        let s = ideal_psi3(&trivial).unwrap();
        assert_eq!(s.support(), vec![1]);

        let no_divide = ShorInstance::new(21, 2, 5)
            .unwrap()
            .with_oracle_order()
            .unwrap();
        match ideal_psi3(&no_divide) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("r | Q")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ideal_psi3(&ShorInstance::new(15, 7, 11).unwrap()).is_err());
    }

    #[test]
    fn eq6_examples() {
        assert!((eq6_probability(512, 4, 2048) - 0.25).abs() < 1e-12);
        let p1 = eq6_probability(1, 4, 2048);
        assert!((p1 - eq6_probability_direct(1, 4, 2048)).abs() < 1e-9);
        for k in 0..16 {
            let expected = if k == 0 { 1.0 } else { 0.0 };
            assert!((eq6_probability(k, 1, 16) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn eq6_non_dividing_order_sums_to_one() {
        let dist = eq6_distribution(3, 64).unwrap();
        let total: f64 = dist.probabilities.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        for k in 0..64 {
            assert!(
                (eq6_probability_closed(k, 3, 64) - eq6_probability_direct(k, 3, 64)).abs() < 1e-9
            );
        }
    }

    #[test]
    fn sampling_delta_and_replay() {
        let mut p = vec![0.0; 8];
        p[5] = 1.0;
        let delta = OutcomeDistribution::new(p).unwrap();
        for seed in 0..20 {
            assert_eq!(sample_outcome(&delta, seed), 5);
        }
        let dist = eq6_distribution(4, 2048).unwrap();
        assert_eq!(sample_outcomes(&dist, 9, 50), sample_outcomes(&dist, 9, 50));
        assert_ne!(
            sample_outcomes(&dist, 9, 50),
            sample_outcomes(&dist, 10, 50)
        );
    }

    #[test]
    fn sampling_frequencies() {
        let dist = measurement_distribution_a(&ideal_psi3(&example()).unwrap());
        let samples = sample_outcomes(&dist, 2024, 4096);
        for peak in [0, 512, 1024, 1536] {
            let freq = samples.iter().filter(|&&k| k == peak).count() as f64 / 4096.0;
            assert!((freq - 0.25).abs() <= 0.03, "peak {peak}: {freq}");
        }
        assert!(samples.iter().all(|k| [0, 512, 1024, 1536].contains(k)));
    }

    #[test]
    fn state_dump_is_sorted_triples() {
        let dump = init_state(RegisterLayout::new(2, 2).unwrap()).to_json_dump();
        assert_eq!(dump, serde_json::json!([[1, 1.0, 0.0]]));
        let ideal = ideal_psi3(&example()).unwrap().to_json_dump();
        let idx: Vec<u64> = ideal
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r[0].as_u64().unwrap())
            .collect();
        assert_eq!(idx.len(), 16);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_amplitude_vectors() {
        let layout = RegisterLayout::new(1, 1).unwrap();
        assert!(PureState::from_amplitudes(layout, vec![c(1.0, 0.0); 3]).is_err());
        assert!(PureState::from_amplitudes(layout, vec![c(1.0, 0.0); 4]).is_err());
        assert!(RegisterLayout::new(0, 3).is_err());
        assert!(RegisterLayout::new(20, 10).is_err());
    }

    fn arb_state(t: u32, l: u32) -> impl Strategy<Value = PureState> {
        let dim = 1usize << (t + l);
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map(
            "zero vector",
            move |v| {
                let amps: Vec<Complex64> = v.into_iter().map(|(re, im)| c(re, im)).collect();
                let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    return None;
                }
                let layout = RegisterLayout::new(t, l).unwrap();
                PureState::from_amplitudes(layout, amps.into_iter().map(|a| a / norm).collect())
                    .ok()
            },
        )
    }

    proptest! {
        #[test]
        fn qft_round_trip(state in (1u32..=4, 0u32..=2).prop_flat_map(|(t, l)| arb_state(t, l))) {
            let back = apply_qft_a(&apply_inverse_qft_a(&state));
            prop_assert!(max_diff(&back, &state) < 1e-10);
        }

        #[test]
        fn gates_preserve_norm(state in (1u32..=4, 3u32..=3).prop_flat_map(|(t, l)| arb_state(t, l))) {
            let inst = ShorInstance::new(5, 2, state.layout().t).unwrap();
            let h = apply_hadamard_layer(&state);
            let u = apply_modexp_unitary(&h, &inst).unwrap();
            let f = apply_inverse_qft_a(&u);
            for s in [&h, &u, &f] {
                prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
            }
        }
    }
}
