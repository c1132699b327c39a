//! Finite-difference stencils and quadrature on uniform 1-D grids.
//!
//! Interior nodes use 4th-order centered differences. At an endpoint the
//! caller states how the sampled function continues past the grid:
//!
//! * [`Boundary::Even`]: mirror symmetric, `f(-x) = f(x)`.
//! * [`Boundary::Odd`]: point symmetric about the endpoint value,
//!   `f(-x) = 2 f(0) - f(x)`.
//! * [`Boundary::OneSided`]: no continuation; off-centered 4th-order
//!   stencils are used on the two nodes nearest the end.
//!
//! Functions on a sphere of revolution are smooth in the pole chart, so
//! every profile quantity is either even or odd about each pole and the
//! ghost-point continuation keeps the full 4th-order stencil up to the
//! pole node itself.

/// Continuation rule at one end of a sampled grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Even,
    Odd,
    OneSided,
}

#[inline]
fn ghost(values: &[f64], j: isize, left: Boundary, right: Boundary) -> Option<f64> {
    let n = values.len() as isize;
    if j < 0 {
        let k = (-j) as usize;
        match left {
            Boundary::Even => values.get(k).copied(),
            Boundary::Odd => values.get(k).map(|v| 2.0 * values[0] - v),
            Boundary::OneSided => None,
        }
    } else if j >= n {
        let k = 2 * (n - 1) - j;
        if k < 0 {
            return None;
        }
        let last = values[(n - 1) as usize];
        match right {
            Boundary::Even => Some(values[k as usize]),
            Boundary::Odd => Some(2.0 * last - values[k as usize]),
            Boundary::OneSided => None,
        }
    } else {
        Some(values[j as usize])
    }
}

fn window(values: &[f64], i: usize, left: Boundary, right: Boundary) -> Option<[f64; 5]> {
    let i = i as isize;
    Some([
        ghost(values, i - 2, left, right)?,
        ghost(values, i - 1, left, right)?,
        values[i as usize],
        ghost(values, i + 1, left, right)?,
        ghost(values, i + 2, left, right)?,
    ])
}

/// First derivative of uniformly spaced samples.
///
/// Panics if fewer than 6 samples are given.
pub fn derivative(values: &[f64], h: f64, left: Boundary, right: Boundary) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 6, "derivative stencil needs at least 6 samples");
    let f = values;
    (0..n)
        .map(|i| {
            if let Some(w) = window(f, i, left, right) {
                return (8.0 * (w[3] - w[1]) + (w[0] - w[4])) / (12.0 * h);
            }
            match i {
                0 => {
                    (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4])
                        / (12.0 * h)
                }
                1 => (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h),
                _ if i == n - 1 => {
                    (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
                        + 3.0 * f[n - 5])
                        / (12.0 * h)
                }
                _ => {
                    (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5])
                        / (12.0 * h)
                }
            }
        })
        .collect()
}

/// Second derivative of uniformly spaced samples.
pub fn second_derivative(values: &[f64], h: f64, left: Boundary, right: Boundary) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 6, "second-derivative stencil needs at least 6 samples");
    let f = values;
    let h2 = 12.0 * h * h;
    (0..n)
        .map(|i| {
            if let Some(w) = window(f, i, left, right) {
                return (-w[0] + 16.0 * w[1] - 30.0 * w[2] + 16.0 * w[3] - w[4]) / h2;
            }
            // Off-centered 6-point stencils, exact through degree 5.
            let (a, b) = if i <= 1 {
                (0usize, false)
            } else {
                (n - 1, true)
            };
            let at = |k: usize| if b { f[a - k] } else { f[a + k] };
            if i == 0 || i == n - 1 {
                (45.0 * at(0) - 154.0 * at(1) + 214.0 * at(2) - 156.0 * at(3) + 61.0 * at(4)
                    - 10.0 * at(5))
                    / h2
            } else {
                (10.0 * at(0) - 15.0 * at(1) - 4.0 * at(2) + 14.0 * at(3) - 6.0 * at(4) + at(5))
                    / h2
            }
        })
        .collect()
}

/// Composite Simpson rule; an odd interval count closes with the 3/8 rule
/// on the last three intervals.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        4 => 3.0 * h / 8.0 * (values[0] + 3.0 * values[1] + 3.0 * values[2] + values[3]),
        _ => {
            let intervals = n - 1;
            let simpson_end = if intervals.is_multiple_of(2) {
                n - 1
            } else {
                n - 4
            };
            let mut odd = 0.0;
            let mut even = 0.0;
            for (k, v) in values[1..simpson_end].iter().enumerate() {
                if k % 2 == 0 {
                    odd += v;
                } else {
                    even += v;
                }
            }
            let mut total = h / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[simpson_end]);
            if simpson_end != n - 1 {
                let t = &values[simpson_end..];
                total += 3.0 * h / 8.0 * (t[0] + 3.0 * t[1] + 3.0 * t[2] + t[3]);
            }
            total
        }
    }
}

/// Running integral `F(t_i) = ∫_{t_0}^{t_i} f`, 4th order per interval.
pub fn cumulative(values: &[f64], h: f64, left: Boundary, right: Boundary) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 4, "cumulative quadrature needs at least 4 samples");
    let f = values;
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    out.push(acc);
    for i in 0..n - 1 {
        let before = ghost(f, i as isize - 1, left, right);
        let after = ghost(f, i as isize + 2, left, right);
        let piece = match (before, after) {
            (Some(a), Some(d)) => h / 24.0 * (-a + 13.0 * f[i] + 13.0 * f[i + 1] - d),
            (None, _) => h / 24.0 * (9.0 * f[i] + 19.0 * f[i + 1] - 5.0 * f[i + 2] + f[i + 3]),
            (_, None) => h / 24.0 * (9.0 * f[i + 1] + 19.0 * f[i] - 5.0 * f[i - 1] + f[i - 2]),
        };
        acc += piece;
        out.push(acc);
    }
    out
}

/// `n` evenly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    // Each half is measured from its own end so that spacings near `b` are
    // as clean as those near `a`.
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            if 2 * i < n {
                a + (b - a) * (i as f64 / last)
            } else {
                b - (b - a) * ((n - 1 - i) as f64 / last)
            }
        })
        .collect()
}

/// `(sin t, cos t)` on `linspace(0, π, n)`, evaluated from the distance to
/// the nearer pole so that both ends carry the same rounding.
pub fn polar_trig(n: usize) -> (Vec<f64>, Vec<f64>) {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let m = i.min(n - 1 - i);
            let (s, c) = (std::f64::consts::PI * (m as f64 / last)).sin_cos();
            if m == i {
                (s, c)
            } else {
                (s, -c)
            }
        })
        .unzip()
}

pub fn is_uniform(grid: &[f64]) -> bool {
    if grid.len() < 2 {
        return true;
    }
    let span = grid[grid.len() - 1] - grid[0];
    let h = span / (grid.len() - 1) as f64;
    grid.iter()
        .enumerate()
        .all(|(i, t)| (t - grid[0] - h * i as f64).abs() <= 1e-10 * span.abs())
}

/// Monotone piecewise-cubic (Fritsch–Carlson) interpolation of `(x, y)`
/// evaluated on `targets`. `x` must be strictly increasing.
pub fn pchip(x: &[f64], y: &[f64], targets: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    let end_slope = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s.signum() != d0.signum() {
            0.0
        } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    if n > 2 {
        d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    } else {
        d[0] = delta[0];
        d[1] = delta[0];
    }
    targets
        .iter()
        .map(|&t| {
            let k = match x.partition_point(|&xi| xi <= t) {
                0 => 0,
                p if p >= n => n - 2,
                p => p - 1,
            };
            let s = (t - x[k]) / h[k];
            let (s2, s3) = (s * s, s * s * s);
            let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
            let h10 = s3 - 2.0 * s2 + s;
            let h01 = -2.0 * s3 + 3.0 * s2;
            let h11 = s3 - s2;
            h00 * y[k] + h10 * h[k] * d[k] + h01 * y[k + 1] + h11 * h[k] * d[k + 1]
        })
        .collect()
}
