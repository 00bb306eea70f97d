//! Closed-form Werner-qubit speed-limit oracle, independent of the library's
//! matrix code, trajectory sampling and quadrature.

#![allow(dead_code)]

use num_complex::Complex64;

#[derive(Clone, Copy, Debug)]
pub struct Model {
    pub r: f64,
    pub gamma0: f64,
    pub lambda: f64,
}

impl Model {
    /// `(G, Ġ)` via complex `d = √(λ² - 2γ0λ)`.
    pub fn amplitude(&self, t: f64) -> (f64, f64) {
        let l = self.lambda;
        let d = Complex64::new(l * l - 2.0 * self.gamma0 * l, 0.0).sqrt();
        let e = (-l * t / 2.0).exp();
        let half = d * (t / 2.0);
        // sinh(dt/2) / d, with its limit t/2 at critical damping.
        let shc = if d.norm() < 1e-9 {
            Complex64::new(t / 2.0, 0.0)
        } else {
            half.sinh() / d
        };
        let g = e * (half.cosh() + shc * l);
        let gd = -e * self.gamma0 * l * shc;
        (g.re, gd.re)
    }

    fn purities(&self, g: f64) -> (f64, f64) {
        let r2 = self.r * self.r;
        let a = (1.0 + r2) / 2.0;
        let p = g * g / 2.0;
        let b = p * p + (1.0 - p) * (1.0 - p) + r2 * g * g / 2.0;
        (a, b)
    }

    pub fn overlap(&self, g: f64) -> f64 {
        0.5 + self.r * self.r * g / 2.0
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        let (g, _) = self.amplitude(t);
        let (a, b) = self.purities(g);
        let gap_b = g * g * (1.0 - self.r * self.r / 2.0 - g * g / 2.0);
        (1.0 + ((1.0 - a) / a).sqrt() * (gap_b / b).sqrt()) * self.overlap(g)
    }

    /// `Tr(ρ̇ρ_t)` without the absolute value; its sign changes are the integrand's kinks.
    pub fn overlap_rate(&self, t: f64) -> f64 {
        let (g, gd) = self.amplitude(t);
        g * gd * (g * g - 1.0) + self.r * self.r * g * gd / 2.0
    }

    pub fn speed_sq(&self, t: f64) -> f64 {
        let (g, gd) = self.amplitude(t);
        2.0 * g * g * gd * gd + self.r * self.r * gd * gd / 2.0
    }

    pub fn integrand(&self, t: f64) -> f64 {
        let (g, _) = self.amplitude(t);
        let (a, b) = self.purities(g);
        let v2 = self.speed_sq(t);
        let term2 = (a * v2).sqrt();
        if self.r == 1.0 {
            return term2;
        }
        // |Tr(ρ̇ρ_t)| / √(1 - b) with the common factor |G| cancelled.
        let (_, gd) = self.amplitude(t);
        let r2 = self.r * self.r;
        let rate_over_gap = gd.abs() * (g * g - 1.0 + r2 / 2.0).abs() / (1.0 - r2 / 2.0 - g * g / 2.0).sqrt();
        let term1 = ((1.0 - a) / a).sqrt() * b.sqrt() * rate_over_gap * self.overlap(g) / (b * b);
        let gap_b = g * g * (1.0 - r2 / 2.0 - g * g / 2.0);
        let term3 = (gap_b / b).sqrt() * (1.0 - a).sqrt() * v2.sqrt();
        term1 + term2 + term3
    }

    /// Points in `(0, tau)` where the integrand is not smooth.
    pub fn kinks(&self, tau: f64) -> Vec<f64> {
        let scan = 20_000;
        let parts: [&dyn Fn(f64) -> f64; 3] = [&|t| self.amplitude(t).0, &|t| self.amplitude(t).1, &|t| {
            let g = self.amplitude(t).0;
            g * g - 1.0 + self.r * self.r / 2.0
        }];
        let mut roots = Vec::new();
        for f in parts {
            for i in 1..scan {
                let (lo, hi) = (tau * i as f64 / scan as f64, tau * (i + 1) as f64 / scan as f64);
                if f(lo) * f(hi) < 0.0 {
                    roots.push(bisect(f, lo, hi));
                }
            }
        }
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// Piecewise Simpson between kinks, extrapolated from `n` and `2n` panels.
    /// Returns `(coarse, fine)` Richardson estimates (`n` and `2n` base panels).
    pub fn speed_integral(&self, tau: f64, n: usize) -> (f64, f64) {
        let mut edges = vec![0.0];
        edges.extend(self.kinks(tau));
        edges.push(tau);
        let f = |t: f64| self.integrand(t);
        let mut coarse = 0.0;
        let mut fine = 0.0;
        for w in edges.windows(2) {
            let s1 = simpson(&f, w[0], w[1], n);
            let s2 = simpson(&f, w[0], w[1], 2 * n);
            let s4 = simpson(&f, w[0], w[1], 4 * n);
            coarse += s2 + (s2 - s1) / 15.0;
            fine += s4 + (s4 - s2) / 15.0;
        }
        (coarse, fine)
    }

    /// `(F_τ, X_τ, τ_QSL)` from the finer estimate, and the gap between levels.
    pub fn bound(&self, tau: f64) -> (f64, f64, f64, f64) {
        let (coarse, fine) = self.speed_integral(tau, 4000);
        let x = fine / tau;
        let f = self.fidelity(tau);
        (f, x, (1.0 - f).abs() / x, (fine - coarse).abs() / tau)
    }
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}
