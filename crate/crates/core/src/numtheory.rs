//! Exact integer arithmetic for the classical side of order finding.
//!
//! Everything here works on `u64` values with `u128` intermediates, so any
//! modulus up to [`MAX_MODULUS`] is handled without overflow.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported modulus: `N^2` must fit comfortably in 64 bits.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Largest register-A width accepted by [`ShorInstance`].
pub const MAX_T: u32 = 40;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `x^e mod modulus` by square-and-multiply.
pub fn mod_pow(x: u64, mut e: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::Domain(format!(
            "modulus must be at least 2, got {modulus}"
        )));
    }
    let m = modulus as u128;
    let mut base = (x as u128) % m;
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    Ok(acc as u64)
}

/// Multiplicative order of `x` modulo `modulus` by walking successive powers.
///
/// This is the ground truth every order-dependent closed form is checked against.
pub fn find_order_bruteforce(x: u64, modulus: u64) -> Result<u64> {
    if modulus < 3 {
        return Err(Error::Domain(format!(
            "modulus must be at least 3, got {modulus}"
        )));
    }
    let x = x % modulus;
    if gcd(x, modulus) != 1 {
        return Err(Error::Domain(format!("{x} is not coprime to {modulus}")));
    }
    let m = modulus as u128;
    let mut power = x as u128;
    let mut r = 1u64;
    while power != 1 {
        power = power * x as u128 % m;
        r += 1;
    }
    Ok(r)
}

/// Register widths derived from the modulus and the error budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegisterSizes {
    pub t: u32,
    pub l: u32,
    pub q: u64,
    /// Whether `N^2 <= Q < 2 N^2` holds. Reported only; the `t` formula wins.
    pub window_ok: bool,
}

/// Number of bits needed to hold `0..=n`, i.e. `ceil(log2(n + 1))`.
fn bit_length(n: u64) -> u32 {
    64 - n.leading_zeros()
}

fn ceil_log2(value: f64) -> u32 {
    let raw = value.log2();
    let nearest = raw.round();
    if (raw - nearest).abs() < 1e-12 {
        nearest.max(0.0) as u32
    } else {
        raw.ceil().max(0.0) as u32
    }
}

/// `L = ceil(log2(N + 1))` and `t = 2L + 1 + ceil(log2(2 + 1/(2 epsilon)))`.
pub fn register_sizes(modulus: u64, epsilon: f64) -> Result<RegisterSizes> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    if !(3..=MAX_MODULUS).contains(&modulus) {
        return Err(Error::Domain(format!(
            "modulus must lie in [3, {MAX_MODULUS}], got {modulus}"
        )));
    }
    let l = bit_length(modulus);
    let t = 2 * l + 1 + ceil_log2(2.0 + 1.0 / (2.0 * epsilon));
    if t > 63 {
        return Err(Error::Scale(format!("register A would need {t} qubits")));
    }
    let q = 1u64 << t;
    Ok(RegisterSizes {
        t,
        l,
        q,
        window_ok: window_holds(modulus, q),
    })
}

/// `N^2 <= Q < 2 N^2`.
pub fn window_holds(modulus: u64, q: u64) -> bool {
    let n2 = modulus as u128 * modulus as u128;
    let q = q as u128;
    n2 <= q && q < 2 * n2
}

/// Problem tuple for one order-finding run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShorInstance {
    /// The number to factor, `N`.
    pub modulus: u64,
    /// The base `x`, coprime to `N`.
    pub base: u64,
    /// Qubits in register A.
    pub t: u32,
    /// Qubits in register B.
    pub l: u32,
    order: Option<u64>,
}

impl ShorInstance {
    /// Instance with an explicit register-A width; register B gets `ceil(log2(N + 1))` qubits.
    ///
    /// `base = 1` is admitted as the trivial-order case.
    pub fn new(modulus: u64, base: u64, t: u32) -> Result<Self> {
        if !(3..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::Domain(format!(
                "modulus must lie in [3, {MAX_MODULUS}], got {modulus}"
            )));
        }
        if base == 0 || base >= modulus {
            return Err(Error::Domain(format!(
                "base must lie in [1, {modulus}), got {base}"
            )));
        }
        if gcd(base, modulus) != 1 {
            return Err(Error::Domain(format!(
                "base {base} shares a factor with {modulus}"
            )));
        }
        if t == 0 || t > MAX_T {
            return Err(Error::Domain(format!(
                "t must lie in [1, {MAX_T}], got {t}"
            )));
        }
        Ok(ShorInstance {
            modulus,
            base,
            t,
            l: bit_length(modulus),
            order: None,
        })
    }

    /// Instance sized from the error budget.
    pub fn from_epsilon(modulus: u64, base: u64, epsilon: f64) -> Result<Self> {
        let sizes = register_sizes(modulus, epsilon)?;
        Self::new(modulus, base, sizes.t)
    }

    /// Fills in the order by brute force.
    pub fn with_oracle_order(self) -> Result<Self> {
        let r = find_order_bruteforce(self.base, self.modulus)?;
        Ok(ShorInstance {
            order: Some(r),
            ..self
        })
    }

    /// Fills in a known order after checking that it is the multiplicative order.
    pub fn with_order(self, r: u64) -> Result<Self> {
        let truth = find_order_bruteforce(self.base, self.modulus)?;
        if truth != r {
            return Err(Error::Domain(format!(
                "{r} is not the order of {} mod {} (order is {truth})",
                self.base, self.modulus
            )));
        }
        Ok(ShorInstance {
            order: Some(r),
            ..self
        })
    }

    /// `Q = 2^t`.
    pub fn q(&self) -> u64 {
        1u64 << self.t
    }

    /// Total qubit count `n = t + L`.
    pub fn n_qubits(&self) -> u32 {
        self.t + self.l
    }

    pub fn order(&self) -> Option<u64> {
        self.order
    }

    /// Order, or a precondition error if it has not been filled in.
    pub fn require_order(&self) -> Result<u64> {
        self.order
            .ok_or_else(|| Error::Precondition("the order r of the instance is not known".into()))
    }

    /// `m = Q / r` when `r` divides `Q`.
    pub fn quotient(&self) -> Option<u64> {
        let r = self.order?;
        self.q().is_multiple_of(r).then(|| self.q() / r)
    }

    pub fn window_ok(&self) -> bool {
        window_holds(self.modulus, self.q())
    }
}

/// One convergent `numerator / denominator` of a continued-fraction expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub numerator: u64,
    pub denominator: u64,
}

/// All convergents of `k / q`, ending with `k / q` in lowest terms.
///
/// The first two convergents share denominator 1 when the first partial
/// quotient after the integer part is 1 (e.g. `3/4 = [0; 1, 3]`); from there on
/// denominators increase strictly.
pub fn continued_fraction_convergents(k: u64, q: u64) -> Result<Vec<Convergent>> {
    if q == 0 {
        return Err(Error::Domain("denominator must be positive".into()));
    }
    if k >= q {
        return Err(Error::Domain(format!("numerator {k} must be below {q}")));
    }
    let (mut num, mut den) = (k, q);
    // h_{-2}, h_{-1} and k_{-2}, k_{-1}
    let (mut h_prev, mut h) = (0u128, 1u128);
    let (mut k_prev, mut k_cur) = (1u128, 0u128);
    let mut out = Vec::new();
    loop {
        let a = (num / den) as u128;
        let h_next = a * h + h_prev;
        let k_next = a * k_cur + k_prev;
        out.push(Convergent {
            numerator: h_next as u64,
            denominator: k_next as u64,
        });
        h_prev = h;
        h = h_next;
        k_prev = k_cur;
        k_cur = k_next;
        let rem = num % den;
        if rem == 0 {
            break;
        }
        num = den;
        den = rem;
    }
    Ok(out)
}

/// Smallest `d | v` with `x^d = 1 (mod N)`, given `x^v = 1 (mod N)`. This is the order of `x`.
fn reduce_to_order(x: u64, mut v: u64, modulus: u64) -> Result<u64> {
    let mut p = 2;
    let mut rest = v;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            while v.is_multiple_of(p) && mod_pow(x, v / p, modulus)? == 1 {
                v /= p;
            }
        }
        p += 1;
    }
    if rest > 1 && v.is_multiple_of(rest) && mod_pow(x, v / rest, modulus)? == 1 {
        v /= rest;
    }
    Ok(v)
}

/// Recovers the order from a measured register-A outcome `k`.
///
/// Convergents of `k/Q` with denominator below `N` are scanned in order; each
/// denominator `q` and its multiples up to `floor(N/q) * q` are tested against
/// `x^v = 1 (mod N)`, covering outcomes where `gcd(s, r) > 1`. A verified `v`
/// is reduced to the true order before it is returned.
pub fn recover_order(k: u64, instance: &ShorInstance) -> Option<u64> {
    let q = instance.q();
    let modulus = instance.modulus;
    if k >= q {
        return None;
    }
    let convergents = continued_fraction_convergents(k, q).ok()?;
    for c in convergents {
        let d = c.denominator;
        if d == 0 || d >= modulus || c.numerator == 0 {
            continue;
        }
        for mult in 1..=(modulus / d) {
            let v = d * mult;
            if mod_pow(instance.base, v, modulus).ok()? == 1 {
                return reduce_to_order(instance.base, v, modulus).ok();
            }
        }
    }
    None
}

/// Nontrivial factors from an even order with `x^{r/2} != -1 (mod N)`.
///
/// Returns `Ok(None)` when the method does not apply to this base.
pub fn extract_factors(x: u64, r: u64, modulus: u64) -> Result<Option<(u64, u64)>> {
    if r == 0 || mod_pow(x, r, modulus)? != 1 {
        return Err(Error::Domain(format!("{x}^{r} is not 1 mod {modulus}")));
    }
    if r % 2 == 1 {
        return Ok(None);
    }
    let half = mod_pow(x, r / 2, modulus)?;
    if half == 1 || half == modulus - 1 {
        return Ok(None);
    }
    let lo = gcd(half - 1, modulus);
    let hi = gcd(half + 1, modulus);
    Ok(Some((lo, hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(48, 18), 6);
        assert_eq!(gcd(7, 15), 1);
        assert_eq!(gcd(48, 15), 3);
        assert_eq!(gcd(0, 9), 9);
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(7, 2, 15).unwrap(), 4);
        assert_eq!(mod_pow(7, 4, 15).unwrap(), 1);
        assert_eq!(mod_pow(7, 0, 15).unwrap(), 1);
        assert_eq!(mod_pow(123, 0, 2).unwrap(), 1);
        assert!(matches!(mod_pow(3, 2, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn mod_pow_large_modulus() {
        let m = MAX_MODULUS - 1;
        // (m-1)^2 = 1 mod m
        assert_eq!(mod_pow(m - 1, 2, m).unwrap(), 1);
        assert_eq!(mod_pow(m - 1, 3, m).unwrap(), m - 1);
    }

    #[test]
    fn order_examples() {
        assert_eq!(find_order_bruteforce(7, 15).unwrap(), 4);
        assert_eq!(find_order_bruteforce(1, 15).unwrap(), 1);
        assert_eq!(find_order_bruteforce(2, 15).unwrap(), 4);
        assert_eq!(find_order_bruteforce(2, 21).unwrap(), 6);
        assert_eq!(find_order_bruteforce(14, 15).unwrap(), 2);
        assert!(matches!(
            find_order_bruteforce(5, 15),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn register_sizes_examples() {
        let s = register_sizes(15, 0.25).unwrap();
        assert_eq!((s.l, s.t, s.q), (4, 11, 2048));
        // 2048 > 2 * 225, so the window is violated but only reported
        assert!(!s.window_ok);

        let s = register_sizes(21, 0.25).unwrap();
        assert_eq!((s.l, s.t, s.q), (5, 13, 8192));

        assert!(register_sizes(15, 0.0).is_err());
        assert!(register_sizes(15, 1.0).is_err());
        assert!(register_sizes(15, -0.5).is_err());
    }

    #[test]
    fn window_check() {
        assert!(window_holds(15, 256));
        assert!(window_holds(15, 225));
        assert!(!window_holds(15, 450));
        assert!(!window_holds(15, 2048));
    }

    #[test]
    fn instance_validation() {
        let inst = ShorInstance::new(15, 7, 11).unwrap();
        assert_eq!((inst.l, inst.q(), inst.n_qubits()), (4, 2048, 15));
        assert_eq!(inst.order(), None);
        assert_eq!(inst.quotient(), None);
        let inst = inst.with_oracle_order().unwrap();
        assert_eq!(inst.order(), Some(4));
        assert_eq!(inst.quotient(), Some(512));

        assert!(ShorInstance::new(15, 5, 11).is_err());
        assert!(ShorInstance::new(15, 15, 11).is_err());
        assert!(ShorInstance::new(15, 7, 0).is_err());
        assert!(ShorInstance::new(15, 7, 11).unwrap().with_order(2).is_err());

        let inst = ShorInstance::new(21, 2, 13)
            .unwrap()
            .with_oracle_order()
            .unwrap();
        assert_eq!(inst.order(), Some(6));
        assert_eq!(inst.quotient(), None);
    }

    #[test]
    fn convergent_examples() {
        let c = continued_fraction_convergents(1536, 2048).unwrap();
        assert_eq!(
            *c.last().unwrap(),
            Convergent {
                numerator: 3,
                denominator: 4
            }
        );
        assert_eq!(
            continued_fraction_convergents(0, 2048).unwrap(),
            vec![Convergent {
                numerator: 0,
                denominator: 1
            }]
        );
        assert_eq!(
            continued_fraction_convergents(512, 2048).unwrap(),
            vec![
                Convergent {
                    numerator: 0,
                    denominator: 1
                },
                Convergent {
                    numerator: 1,
                    denominator: 4
                }
            ]
        );
        assert!(continued_fraction_convergents(1, 0).is_err());
        assert!(continued_fraction_convergents(5, 4).is_err());
    }

    #[test]
    fn recover_order_examples() {
        let inst = ShorInstance::new(15, 7, 11).unwrap();
        assert_eq!(recover_order(1536, &inst), Some(4));
        assert_eq!(recover_order(0, &inst), None);
        assert_eq!(recover_order(512, &inst), Some(4));
        // 1024/2048 = 1/2: denominator 2 fails, its multiple 4 verifies
        assert_eq!(recover_order(1024, &inst), Some(4));
    }

    #[test]
    fn recover_order_never_returns_a_multiple() {
        // 3/4 style outcome for x=2 mod 15; a lcm-sized multiple would be 12
        let inst = ShorInstance::new(15, 2, 11).unwrap();
        for k in 0..inst.q() {
            if let Some(r) = recover_order(k, &inst) {
                assert_eq!(r, 4, "k = {k}");
            }
        }
    }

    #[test]
    fn extract_factor_examples() {
        assert_eq!(extract_factors(7, 4, 15).unwrap(), Some((3, 5)));
        assert_eq!(extract_factors(4, 2, 15).unwrap(), Some((3, 5)));
        // 14 = -1 mod 15
        assert_eq!(extract_factors(14, 2, 15).unwrap(), None);
        // odd order: 4 mod 21 has order 3
        assert_eq!(extract_factors(4, 3, 21).unwrap(), None);
        assert!(extract_factors(7, 3, 15).is_err());
    }

    proptest! {
        #[test]
        fn mod_pow_is_multiplicative(x in 0u64..100_000, a in 0u64..10_000, b in 0u64..10_000, n in 2u64..MAX_MODULUS) {
            let lhs = mod_pow(x, a + b, n).unwrap();
            let rhs = (mod_pow(x, a, n).unwrap() as u128 * mod_pow(x, b, n).unwrap() as u128 % n as u128) as u64;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn convergents_lowest_terms_and_increasing(q_bits in 1u32..20, k_seed in any::<u64>()) {
            let q = 1u64 << q_bits;
            let k = k_seed % q;
            let c = continued_fraction_convergents(k, q).unwrap();
            for conv in &c {
                prop_assert_eq!(gcd(conv.numerator, conv.denominator), 1);
            }
            for (i, w) in c.windows(2).enumerate() {
                if i == 0 {
                    prop_assert!(w[1].denominator >= w[0].denominator);
                } else {
                    prop_assert!(w[1].denominator > w[0].denominator);
                }
            }
            let last = c.last().unwrap();
            let g = gcd(k, q);
            prop_assert_eq!((last.numerator, last.denominator), (k / g, q / g));
        }

        #[test]
        fn convergents_alternate_around_target(q_bits in 2u32..20, k_seed in any::<u64>()) {
            let q = 1u64 << q_bits;
            let k = k_seed % q;
            let c = continued_fraction_convergents(k, q).unwrap();
            // sign of h/d - k/q alternates (ignoring the exact final convergent)
            let signs: Vec<i128> = c
                .iter()
                .map(|cv| (cv.numerator as i128 * q as i128 - k as i128 * cv.denominator as i128).signum())
                .collect();
            for w in signs[..signs.len() - 1].windows(2) {
                prop_assert!(w[0] * w[1] < 0);
            }
        }
    }
}
