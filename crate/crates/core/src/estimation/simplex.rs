//! Nelder–Mead downhill simplex minimizer.

/// Why the search stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Largest vertex distance from the best vertex fell below `x_tol`.
    SimplexSize,
    /// Spread of objective values across the simplex fell below `f_tol`.
    FunctionSpread,
    IterationLimit,
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub termination: Termination,
}

impl Minimum {
    pub fn tolerance_met(&self) -> bool {
        self.termination != Termination::IterationLimit
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub max_iter: usize,
    pub x_tol: f64,
    /// Relative to `1 + |f_best|`.
    pub f_tol: f64,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimizes `f` from an initial simplex of `x0` plus one vertex per
/// coordinate displaced by `steps[i]`.
pub fn minimize<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    steps: &[f64],
    opts: SimplexOptions,
) -> Minimum {
    let d = x0.len();
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    pts.push(x0.to_vec());
    for (i, &s) in steps.iter().enumerate().take(d) {
        let mut p = x0.to_vec();
        p[i] += s;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();

    let mut iterations = 0;
    let termination = loop {
        // Order vertices best to worst; ties keep index order.
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let size = pts[1..]
            .iter()
            .flat_map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if size < opts.x_tol {
            break Termination::SimplexSize;
        }
        if (vals[d] - vals[0]).abs() <= opts.f_tol * (1.0 + vals[0].abs()) {
            break Termination::FunctionSpread;
        }
        if iterations >= opts.max_iter {
            break Termination::IterationLimit;
        }
        iterations += 1;

        let mut centroid = vec![0.0; d];
        for p in &pts[..d] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / d as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[d])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(REFLECT);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(EXPAND);
            let fe = f(&xe);
            if fe < fr {
                pts[d] = xe;
                vals[d] = fe;
            } else {
                pts[d] = xr;
                vals[d] = fr;
            }
            continue;
        }
        if fr < vals[d - 1] {
            pts[d] = xr;
            vals[d] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[d] {
            let xc = along(CONTRACT * REFLECT);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-CONTRACT);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < vals[d].min(fr) {
            pts[d] = xc;
            vals[d] = fc;
            continue;
        }
        let best = pts[0].clone();
        for i in 1..=d {
            for (v, b) in pts[i].iter_mut().zip(&best) {
                *v = b + SHRINK * (*v - b);
            }
            vals[i] = f(&pts[i]);
        }
    };

    Minimum {
        x: pts[0].clone(),
        f: vals[0],
        iterations,
        termination,
    }
}
