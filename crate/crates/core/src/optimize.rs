//! One-dimensional maximization: grid seeding followed by golden-section refinement.

/// `1 / phi`, the interval contraction factor of golden-section search.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `width`. The returned point is the
/// best one evaluated, bracket ends included.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, width: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = [
        Maximum {
            arg: lo,
            value: f(lo),
        },
        Maximum {
            arg: hi,
            value: f(hi),
        },
        Maximum { arg: d, value: fd },
    ]
    .into_iter()
    .fold(Maximum { arg: c, value: fc }, |acc, m| {
        if m.value > acc.value {
            m
        } else {
            acc
        }
    });
    let mut iterations = 0;
    while (b - a) > width && iterations < 200 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best.value {
                best = Maximum { arg: c, value: fc };
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best.value {
                best = Maximum { arg: d, value: fd };
            }
        }
        iterations += 1;
    }
    best
}

/// Maximizes `f` over `[lo, hi]`: evaluates `points` equally spaced samples
/// (ends included), then refines around the best sample with golden-section
/// search down to `width`.
///
/// Samples are compared in index order, so ties resolve to the lowest argument
/// and the result does not depend on evaluation scheduling.
pub fn grid_then_golden<F>(f: F, lo: f64, hi: f64, points: usize, width: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    assert!(points >= 2, "grid needs at least two points");
    let step = (hi - lo) / (points - 1) as f64;
    let at = |i: usize| {
        if i == points - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..points {
        let v = f(at(i));
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let left = at(best_i.saturating_sub(1));
    let right = at((best_i + 1).min(points - 1));
    let refined = golden_section_max(&f, left, right, width);
    if refined.value >= best_v {
        refined
    } else {
        Maximum {
            arg: at(best_i),
            value: best_v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let m = golden_section_max(|x| -(x - 0.3).powi(2), -1.0, 2.0, 1e-10);
        assert!((m.arg - 0.3).abs() < 1e-8);
        assert!(m.value.abs() < 1e-15);
    }

    #[test]
    fn endpoint_maximum() {
        let m = golden_section_max(|x| x, 0.0, 1.0, 1e-10);
        assert!((m.arg - 1.0).abs() < 1e-9);
        let m = grid_then_golden(|x| -x, 0.0, 1.0, 16, 1e-10);
        assert_eq!(m.arg, 0.0);
    }

    #[test]
    fn grid_avoids_local_maximum() {
        // local bump at 0.2, global peak at 2.5
        let f =
            |x: f64| (-(x - 0.2).powi(2) * 50.0).exp() * 0.5 + (-(x - 2.5).powi(2) * 50.0).exp();
        let m = grid_then_golden(f, 0.0, std::f64::consts::PI, 2048, 1e-10);
        assert!((m.arg - 2.5).abs() < 1e-6);
    }
}
