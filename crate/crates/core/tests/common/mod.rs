//! Independent numerical oracles for the integration tests: double
//! exponential quadrature, bisection, golden-section search, central
//! differences, and the EGL density written directly from its formula.
//! Only parameter access and the hazard being scanned come from the library.

#![allow(dead_code)]

use egl::{Egl, HazardShape};
use std::f64::consts::FRAC_PI_2;

/// Tanh-sinh quadrature over the finite interval `[a, b]`.
///
/// `f` receives `(x, distance_to_nearest_endpoint)` so integrands with
/// endpoint singularities can be evaluated without cancellation.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel: f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let node = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cu * cu);
        // distance from the nearer endpoint, r(1 − tanh|u|)
        let d = r / (u.abs().exp() * cu);
        let (xl, xr) = (a + d, b - d);
        let fx = if u < 0.0 {
            f(xl)
        } else if u > 0.0 {
            f(xr)
        } else {
            f(c)
        };
        if fx.is_finite() {
            fx * w * r
        } else {
            0.0
        }
    };
    double_exponential_sum(node, rel)
}

/// Exp-sinh quadrature over `[a, ∞)` with the map `x = a + s·e^{π/2·sinh t}`.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F, a: f64, s: f64, rel: f64) -> f64 {
    let node = |t: f64| -> f64 {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let x = a + s * e;
        if !x.is_finite() {
            return 0.0;
        }
        let fx = f(x);
        let w = FRAC_PI_2 * t.cosh() * e * s;
        let v = fx * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    double_exponential_sum(node, rel)
}

/// Trapezoid sums of `node` over `t ∈ [−T, T]`, halving the step until two
/// consecutive levels agree.
fn double_exponential_sum<G: Fn(f64) -> f64>(node: G, rel: f64) -> f64 {
    const T: f64 = 4.5;
    let mut h = 0.5;
    let mut sum = node(0.0);
    let mut k = 1;
    while k as f64 * h <= T {
        let t = k as f64 * h;
        sum += node(t) + node(-t);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..10 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= T {
            let t = k as f64 * h;
            sum += node(t) + node(-t);
            k += 2;
        }
        let next = sum * h;
        if (next - estimate).abs() <= rel * next.abs() {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Root of `f` on `[lo, hi]` given a sign change.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximizer of a unimodal `f` on `[lo, hi]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..300 {
        if hi - lo < 1e-14 * (1.0 + lo.abs()) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Central difference of `f` at `x` with step `h`.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Sample mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// One-sample K-S distance, written independently of the library.
pub fn ks_one_sample<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic one-sample K-S critical value at the 1% level.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.6276 / (n as f64).sqrt()
}

/// The 27-point (λ, θ, α) grid used for the distribution checks.
pub fn grid() -> Vec<Egl> {
    let mut v = Vec::new();
    for a in [0.3, 1.0, 3.0] {
        for t in [0.2, 1.0, 5.0] {
            for l in [0.5, 1.0, 2.0] {
                v.push(Egl::new(l, t, a).unwrap());
            }
        }
    }
    v
}

/// Oracle density written from the formula, independent of the library's
/// log-space evaluation.
pub fn pdf_direct(l: f64, t: f64, a: f64, x: f64) -> f64 {
    let z = 1.0 + l * x;
    a * t * t * l * z.powf(2.0 * a - 1.0) * (t - t * z.powf(a)).exp() / (1.0 + t)
}

pub fn lindley_cdf(t: f64, x: f64) -> f64 {
    1.0 - (-t * x).exp() * (1.0 + t + t * x) / (1.0 + t)
}

/// `∫₀^∞ h(x) g(x) dx`, split at the median so both pieces are smooth.
pub fn expect<F: Fn(f64) -> f64>(d: &Egl, h: F) -> f64 {
    let m = d.median();
    let g = |x: f64| h(x) * pdf_direct(d.lambda(), d.theta(), d.alpha(), x);
    tanh_sinh(g, 0.0, m, 1e-14) + exp_sinh(g, m, m, 1e-14)
}

/// Classifies a hazard by scanning successive differences on a log grid.
pub fn scan_shape(d: &Egl) -> Option<HazardShape> {
    let xs: Vec<f64> = (0..1000)
        .map(|i| 10f64.powf(-4.0 + 8.0 * i as f64 / 999.0) / d.lambda())
        .collect();
    let h: Vec<f64> = xs.iter().map(|&x| d.hazard(x).unwrap()).collect();
    let signs: Vec<i8> = h
        .windows(2)
        .filter_map(|w| {
            let rel = (w[1] - w[0]) / w[0].abs();
            if rel > 1e-12 {
                Some(1)
            } else if rel < -1e-12 {
                Some(-1)
            } else {
                None
            }
        })
        .collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    match (changes, signs.first()) {
        (0, Some(-1)) | (0, None) => Some(HazardShape::Decreasing),
        (0, Some(1)) => Some(HazardShape::Increasing),
        (1, Some(1)) => Some(HazardShape::UpsideDown),
        _ => None,
    }
}

#[cfg(test)]
mod self_checks {
    #[test]
    fn oracles_work() {
        use super::{exp_sinh, tanh_sinh};
        let v = tanh_sinh(|x| x.powf(-0.5), 0.0, 1.0, 1e-14);
        assert!((v - 2.0).abs() < 1e-12);
        let v = exp_sinh(|x| (-x).exp(), 0.0, 1.0, 1e-14);
        assert!((v - 1.0).abs() < 1e-12);
    }
}
