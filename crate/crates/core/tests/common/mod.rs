#![allow(dead_code)]

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use shor_coherence::ShorInstance;

/// Haar-random pure state: normalized vector of complex Gaussians.
pub fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut v {
        *a /= norm;
    }
    v
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example() -> ShorInstance {
    ShorInstance::new(15, 7, 11)
        .unwrap()
        .with_oracle_order()
        .unwrap()
}

/// Instances with `r | Q` and `Q >= r^2`.
pub fn instance_matrix() -> Vec<ShorInstance> {
    let mut out = Vec::new();
    for (n, xs, ts) in [
        (15u64, vec![2u64, 4, 7, 8, 11, 13, 14], vec![4u32, 6, 8, 11]),
        (5, vec![2, 3, 4], vec![4, 6, 9]),
        (17, vec![2, 4, 16], vec![6, 8, 10]),
    ] {
        for &x in &xs {
            for &t in &ts {
                let inst = ShorInstance::new(n, x, t)
                    .unwrap()
                    .with_oracle_order()
                    .unwrap();
                let r = inst.order().unwrap();
                if inst.quotient().is_some() && inst.q() >= r * r {
                    out.push(inst);
                }
            }
        }
    }
    out
}

/// `((n-w)/n)^{(n-w)/2} (w/n)^{w/2}` by direct numerical maximization of
/// `cos^{n-w}(a/2) sin^w(a/2)` on a dense grid followed by bisection on the derivative sign.
pub fn numeric_term_max(n: u32, w: u32) -> f64 {
    let f = |a: f64| (a / 2.0).cos().powi((n - w) as i32) * (a / 2.0).sin().powi(w as i32);
    let steps = 20_000;
    let pi = std::f64::consts::PI;
    let mut best = (0.0, f(0.0));
    for i in 1..=steps {
        let a = pi * i as f64 / steps as f64;
        let v = f(a);
        if v > best.1 {
            best = (a, v);
        }
    }
    let h = pi / steps as f64;
    let (mut lo, mut hi) = ((best.0 - h).max(0.0), (best.0 + h).min(pi));
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    f((lo + hi) / 2.0).max(best.1)
}

pub fn term_maxima(n: u32) -> Vec<f64> {
    (0..=n).map(|w| numeric_term_max(n, w)).collect()
}

pub fn popcount(v: u64) -> u32 {
    v.count_ones()
}

/// `1 - (sum_j A_max(w_j))^2 / Q` built straight from the orbit `x^j mod N`.
pub fn oracle_eg_psi2(inst: &ShorInstance) -> f64 {
    let maxima = term_maxima(inst.n_qubits());
    let mut y = 1u64;
    let mut sum = 0.0;
    for j in 0..inst.q() {
        let label = (j << inst.l) | y;
        sum += maxima[popcount(label) as usize];
        y = y * inst.base % inst.modulus;
    }
    1.0 - sum * sum / inst.q() as f64
}

/// `|S|^2` and `Re(S^2)` for `S = sum_{a<r, s<r} exp(-2 pi i s a / r) A_max(w(sQ/r, x^a))`.
pub fn oracle_psi3_sum(inst: &ShorInstance) -> Complex64 {
    let maxima = term_maxima(inst.n_qubits());
    let r = inst.order().unwrap();
    let m = inst.quotient().unwrap();
    let mut s_total = Complex64::new(0.0, 0.0);
    let mut y = 1u64;
    for a in 0..r {
        for s in 0..r {
            let label = ((s * m) << inst.l) | y;
            let phase = -2.0 * std::f64::consts::PI * (s * a) as f64 / r as f64;
            s_total += Complex64::from_polar(maxima[popcount(label) as usize], phase);
        }
        y = y * inst.base % inst.modulus;
    }
    s_total
}
