//! Reference computations written independently of the library: the closed
//! two-layer dispersion relation evaluated straight from the ratio vector, a
//! brute-force band-edge scan refined by Illinois regula falsi, and
//! Gauss-Legendre quadrature.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Wave speed and impedance of a layer with relative modulus `e`, density
/// `rho` and Poisson's ratio `nu`.
fn speed_impedance(e: f64, rho: f64, nu: f64, p_wave: bool) -> (f64, f64) {
    let m = if p_wave {
        e * (1.0 - nu) / ((1.0 + nu) * (1.0 - 2.0 * nu))
    } else {
        e / (2.0 * (1.0 + nu))
    };
    let c = (m / rho).sqrt();
    (c, rho * c)
}

struct TwoLayer {
    h: [f64; 2],
    c: [f64; 2],
    mix: f64,
}

impl TwoLayer {
    /// `params = (E2/E1, rho2/rho1, h2/h1, nu1, nu2)`, scaled so that layer 1
    /// has unit density and modulus and the cell has unit thickness.
    fn new(params: [f64; 5], p_wave: bool) -> Self {
        let [re, rr, rh, nu1, nu2] = params;
        let (c1, z1) = speed_impedance(1.0, 1.0, nu1, p_wave);
        let (c2, z2) = speed_impedance(re, rr, nu2, p_wave);
        let z = z1 / z2;
        TwoLayer {
            h: [1.0 / (1.0 + rh), rh / (1.0 + rh)],
            c: [c1, c2],
            mix: 0.5 * (z + 1.0 / z),
        }
    }

    fn half_trace(&self, w: f64) -> f64 {
        let a = w * self.h[0] / self.c[0];
        let b = w * self.h[1] / self.c[1];
        a.cos() * b.cos() - self.mix * a.sin() * b.sin()
    }

    fn transit(&self) -> f64 {
        self.h[0] / self.c[0] + self.h[1] / self.c[1]
    }
}

/// `cos(a) cos(b) - (z + 1/z)/2 sin(a) sin(b)` for the two-layer cell.
pub fn half_trace(params: [f64; 5], omega_hat: f64, p_wave: bool) -> f64 {
    TwoLayer::new(params, p_wave).half_trace(omega_hat)
}

/// Illinois-modified regula falsi on a bracket with `f(a) f(b) <= 0`.
pub fn illinois(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    assert!(fa * fb < 0.0, "not a bracket: f({a}) = {fa}, f({b}) = {fb}");
    let mut last = 0i8;
    for _ in 0..500 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = f(c);
        if fc == 0.0 || (b - a).abs() < tol {
            return c;
        }
        if fc * fb > 0.0 {
            b = c;
            fb = fc;
            if last == -1 {
                fa *= 0.5;
            }
            last = -1;
        } else {
            a = c;
            fa = fc;
            if last == 1 {
                fb *= 0.5;
            }
            last = 1;
        }
    }
    0.5 * (a + b)
}

/// First gap `(start, end)` found by scanning with step `pi / (200 refine tau)`
/// and refining each edge. Returns `None` if no gap starts below `8 pi / tau`.
pub fn brute_force_gap(params: [f64; 5], p_wave: bool, refine: f64) -> Option<(f64, f64)> {
    let cell = TwoLayer::new(params, p_wave);
    let tau = cell.transit();
    let step = PI / (200.0 * refine * tau);
    let ht = |w: f64| cell.half_trace(w);
    let excess = |w: f64| ht(w).abs() - 1.0;
    let tol = 1e-13;

    let mut k = 1u64;
    let mut prev = (0.0_f64, 1.0_f64);
    let mut start = None;
    loop {
        let w = k as f64 * step;
        k += 1;
        let h = ht(w);
        match start {
            None => {
                if w > 8.0 * PI / tau {
                    return None;
                }
                if h.abs() > 1.0 {
                    start = Some(illinois(excess, prev.0.max(step * 1e-3), w, tol));
                }
            }
            Some(s) => {
                if h.abs() <= 1.0 {
                    return Some((s, illinois(excess, prev.0, w, tol)));
                }
                if h.signum() != prev.1.signum() {
                    let side = prev.1.signum();
                    return Some((s, illinois(|x| side * ht(x) - 1.0, prev.0, w, tol)));
                }
                if w > 32.0 * PI / tau {
                    return None;
                }
            }
        }
        prev = (w, h);
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Mean of `f` over the box `[lo, hi]^dims` with an `n`-point tensor rule.
pub fn box_mean(f: impl Fn(&[f64]) -> f64, dims: usize, lo: f64, hi: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let mut idx = vec![0usize; dims];
    let mut point = vec![0.0; dims];
    let mut total = 0.0;
    loop {
        let mut weight = 1.0;
        for d in 0..dims {
            point[d] = lo + (hi - lo) * 0.5 * (x[idx[d]] + 1.0);
            weight *= 0.5 * w[idx[d]];
        }
        total += weight * f(&point);
        let mut d = 0;
        loop {
            if d == dims {
                return total;
            }
            idx[d] += 1;
            if idx[d] < n {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
