//! Riemann-Siegel Z function for the critical-line fast path.
//!
//! Z(t) = 2 sum_{n<=m} cos(theta - t ln n)/sqrt(n)
//!        + (-1)^{m-1} (t/2pi)^{-1/4} [ C0(p) + C1(p) (t/2pi)^{-1/2} ] + ...
//! with m = floor(sqrt(t/2pi)), p the fractional part, C0 = Psi and
//! C1 = -Psi'''/(96 pi^2).
//!
//! Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p) has removable
//! singularities at p = 1/4, 3/4; it is evaluated through the identity
//! Psi = -sin(2pi a b)/sin(2pi a), a = p - 1/4, b = p - 3/4, in a
//! degree-3 Taylor arithmetic so the third derivative comes out with it.

use crate::scalar::Real;

/// theta(t) ~ (t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3).
pub fn theta<R: Real>(t: R) -> R {
    let two = R::of(2.0);
    let half_t = t / two;
    let ln_term = (t / (two * R::PI())).ln();
    half_t * ln_term - half_t - R::PI() / R::of(8.0)
        + (R::of(48.0) * t).recip()
        + R::of(7.0) / (R::of(5760.0) * t * t * t)
}

/// Truncated Taylor series sum_k c[k] eps^k, degree 3.
#[derive(Clone, Copy)]
struct Series<R>([R; 4]);

impl<R: Real> Series<R> {
    fn mul(&self, o: &Series<R>) -> Series<R> {
        let a = &self.0;
        let b = &o.0;
        Series([
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
            a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
        ])
    }

    fn div(&self, o: &Series<R>) -> Series<R> {
        let a = &self.0;
        let b = &o.0;
        let q0 = a[0] / b[0];
        let q1 = (a[1] - q0 * b[1]) / b[0];
        let q2 = (a[2] - q0 * b[2] - q1 * b[1]) / b[0];
        let q3 = (a[3] - q0 * b[3] - q1 * b[2] - q2 * b[1]) / b[0];
        Series([q0, q1, q2, q3])
    }

    fn scale(&self, c: R) -> Series<R> {
        Series([self.0[0] * c, self.0[1] * c, self.0[2] * c, self.0[3] * c])
    }
}

/// sinc(x) = sin(x)/x and its first three derivatives.
fn sinc_derivs<R: Real>(x: R) -> [R; 4] {
    if x.abs() >= R::of(0.5) {
        let (s, c) = x.sin_cos();
        let ix = x.recip();
        let ix2 = ix * ix;
        let ix3 = ix2 * ix;
        let ix4 = ix2 * ix2;
        let two = R::of(2.0);
        let three = R::of(3.0);
        let six = R::of(6.0);
        [
            s * ix,
            c * ix - s * ix2,
            -s * ix - two * c * ix2 + two * s * ix3,
            -c * ix + three * s * ix2 + six * c * ix3 - six * s * ix4,
        ]
    } else {
        // termwise-differentiated Maclaurin series of sin(x)/x; powers are
        // built up explicitly so x = 0 stays exact
        let mut out = [R::zero(); 4];
        let mut pw = [R::one(); 24]; // pw[j] = x^j
        for j in 1..24 {
            pw[j] = pw[j - 1] * x;
        }
        for k in 0..10usize {
            // term x^{2k} / (2k+1)!, with sign (-1)^k
            let mut coeff = R::one();
            for j in 1..=(2 * k + 1) {
                coeff = coeff / R::of(j as f64);
            }
            if k % 2 == 1 {
                coeff = -coeff;
            }
            let e = 2 * k;
            out[0] += coeff * pw[e];
            if e >= 1 {
                out[1] += coeff * R::of(e as f64) * pw[e - 1];
            }
            if e >= 2 {
                out[2] += coeff * R::of((e * (e - 1)) as f64) * pw[e - 2];
            }
            if e >= 3 {
                out[3] += coeff * R::of((e * (e - 1) * (e - 2)) as f64) * pw[e - 3];
            }
        }
        out
    }
}

/// Compose g (given by derivatives at x0) with a series X whose constant
/// term is x0.
fn compose<R: Real>(g: [R; 4], x: &Series<R>) -> Series<R> {
    let v = Series([R::zero(), x.0[1], x.0[2], x.0[3]]);
    let v2 = v.mul(&v);
    let v3 = v2.mul(&v);
    let half = R::of(0.5);
    let sixth = R::of(1.0 / 6.0);
    let mut out = v.scale(g[1]);
    out.0[0] += g[0];
    let q = v2.scale(g[2] * half);
    let c = v3.scale(g[3] * sixth);
    Series([
        out.0[0] + q.0[0] + c.0[0],
        out.0[1] + q.0[1] + c.0[1],
        out.0[2] + q.0[2] + c.0[2],
        out.0[3] + q.0[3] + c.0[3],
    ])
}

/// Psi(p) and Psi'''(p) for p in [0, 1).
fn psi_and_third<R: Real>(p: R) -> (R, R) {
    let quarter = R::of(0.25);
    let three_q = R::of(0.75);
    let two_pi = R::of(2.0) * R::PI();
    let a = p - quarter;
    let b = p - three_q;
    // W = 2pi (a+eps)(b+eps)
    let w = Series([two_pi * a * b, two_pi * (a + b), two_pi, R::zero()]);
    let num = compose(sinc_derivs(w.0[0]), &w);
    let psi = if p < R::of(0.5) {
        // -(b+eps) sinc(W) / sinc(2pi(a+eps))
        let u = Series([two_pi * a, two_pi, R::zero(), R::zero()]);
        let den = compose(sinc_derivs(u.0[0]), &u);
        let bfac = Series([-b, -R::one(), R::zero(), R::zero()]);
        bfac.mul(&num).div(&den)
    } else {
        // (a+eps) sinc(W) / sinc(2pi(b+eps))
        let v = Series([two_pi * b, two_pi, R::zero(), R::zero()]);
        let den = compose(sinc_derivs(v.0[0]), &v);
        let afac = Series([a, R::one(), R::zero(), R::zero()]);
        afac.mul(&num).div(&den)
    };
    (psi.0[0], R::of(6.0) * psi.0[3])
}

/// Z(t) with the C0 and C1 remainder terms.
/// Returns (Z, theta(t), err_bound, main-sum terms).
pub fn z_function<R: Real>(t: R) -> (R, R, R, u32) {
    let two_pi = R::of(2.0) * R::PI();
    let tau = t / two_pi;
    let sqrt_tau = tau.sqrt();
    let m = sqrt_tau.floor();
    let m_int = m.as_f64() as u32;
    let th = theta(t);

    let mut z = R::zero();
    for n in 1..=m_int {
        let nf = R::of(n as f64);
        z += (th - t * nf.ln()).cos() / nf.sqrt();
    }
    z = z + z;

    let p = sqrt_tau - m;
    let (c0, psi3) = psi_and_third(p);
    let c1 = -psi3 / (R::of(96.0) * R::PI() * R::PI());
    let tau_q = sqrt_tau.sqrt(); // tau^{1/4}
    let rem = (c0 + c1 / sqrt_tau) / tau_q;
    let sign = if m_int % 2 == 0 { -R::one() } else { R::one() };
    z += sign * rem;

    // truncation ~ C2 tau^{-5/4}; round-off from the large phase arguments
    let eps = R::epsilon();
    let trunc = R::of(0.05) / (tau * tau_q);
    let phase = eps * t * (R::one() + m.max(R::one()).ln()) * (m.sqrt() + R::one());
    let err = trunc + phase;
    (z, th, err, m_int + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_matches_direct_formula_away_from_singularities() {
        for &p in &[0.05, 0.1, 0.2, 0.35, 0.45, 0.55, 0.6, 0.9_f64] {
            let direct = (2.0 * std::f64::consts::PI * (p * p - p - 1.0 / 16.0)).cos()
                / (2.0 * std::f64::consts::PI * p).cos();
            let (psi, _) = psi_and_third(p);
            assert!(
                (psi - direct).abs() < 1e-12,
                "p={p}: {psi} vs {direct}"
            );
        }
    }

    #[test]
    fn psi_finite_at_removable_points() {
        for &p in &[0.25, 0.75, 0.2499999999, 0.7500000001_f64] {
            let (psi, psi3) = psi_and_third(p);
            assert!(psi.is_finite() && psi3.is_finite(), "p={p}");
            assert!(psi.abs() < 2.0, "p={p}: {psi}");
        }
    }

    #[test]
    fn psi_third_matches_finite_differences() {
        let h = 1e-3;
        for &p in &[0.1, 0.4, 0.6, 0.85_f64] {
            let f = |x: f64| psi_and_third(x).0;
            // central stencil for the third derivative
            let fd = (f(p + 2.0 * h) - 2.0 * f(p + h) + 2.0 * f(p - h) - f(p - 2.0 * h))
                / (2.0 * h * h * h);
            let (_, psi3) = psi_and_third(p);
            assert!(
                (psi3 - fd).abs() < 2e-3 * (1.0 + psi3.abs()),
                "p={p}: {psi3} vs fd {fd}"
            );
        }
    }

    #[test]
    fn theta_asymptotic_value() {
        // theta(100) known to ~1e-9 from the asymptotic series itself;
        // sanity-check the leading shape only
        let t = 100.0_f64;
        let th = theta(t);
        let lead = t / 2.0 * (t / (2.0 * std::f64::consts::PI)).ln()
            - t / 2.0
            - std::f64::consts::PI / 8.0;
        assert!((th - lead).abs() < 1e-3);
    }
}
