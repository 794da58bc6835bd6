//! Fixed-step f64 reference quadrature with a deliberately over-provisioned
//! zeta sum. No adaptivity, no fast paths: the point is predictability.

use std::sync::OnceLock;

use num_traits::ToPrimitive;

use crate::bernoulli::bernoulli_over_factorial;

fn bern_f64() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        bernoulli_over_factorial(32)
            .iter()
            .map(|r| r.to_f64().unwrap())
            .collect()
    })
}

/// zeta(sigma + i t) by Euler-Maclaurin with N = t/2 + 24 terms.
pub fn zeta_brute(sigma: f64, t: f64) -> (f64, f64) {
    assert!(sigma > 0.0 && !(sigma == 1.0 && t == 0.0));
    let t = t.abs();
    let n_main = (0.5 * t) as usize + 24;
    let mut re = 0.0;
    let mut im = 0.0;
    for n in 1..n_main {
        let ln_n = (n as f64).ln();
        let mag = (-sigma * ln_n).exp();
        let (s, c) = (t * ln_n).sin_cos();
        re += mag * c;
        im -= mag * s;
    }
    let nf = n_main as f64;
    let ln_n = nf.ln();
    let mag = (-sigma * ln_n).exp();
    let (s, c) = (t * ln_n).sin_cos();
    let (nre, nim) = (mag * c, -mag * s); // N^{-s}
    // N^{1-s}/(s-1)
    let (p1re, p1im) = (nre * nf, nim * nf);
    let (dre, dim) = (sigma - 1.0, t);
    let den = dre * dre + dim * dim;
    re += (p1re * dre + p1im * dim) / den;
    im += (p1im * dre - p1re * dim) / den;
    re += 0.5 * nre;
    im += 0.5 * nim;
    // corrections
    let bern = bern_f64();
    let inv_n2 = 1.0 / (nf * nf);
    let (mut pwre, mut pwim) = (p1re * inv_n2, p1im * inv_n2);
    let (mut prre, mut prim) = (sigma, t);
    for (k, b) in bern.iter().enumerate() {
        let k = k + 1;
        let tre = b * (pwre * prre - pwim * prim);
        let tim = b * (pwre * prim + pwim * prre);
        re += tre;
        im += tim;
        if tre.abs() + tim.abs() < 1e-19 * (re.abs() + im.abs() + 1.0) {
            break;
        }
        pwre *= inv_n2;
        pwim *= inv_n2;
        let (f1re, f1im) = (sigma + (2 * k - 1) as f64, t);
        let (f2re, f2im) = (sigma + (2 * k) as f64, t);
        let (are, aim) = (prre * f1re - prim * f1im, prre * f1im + prim * f1re);
        prre = are * f2re - aim * f2im;
        prim = are * f2im + aim * f2re;
    }
    (re, im)
}

/// |zeta(sigma + i t)|^power for power in {2, 4}.
pub fn abs_pow_brute(sigma: f64, t: f64, power: u32) -> f64 {
    let (re, im) = zeta_brute(sigma, t);
    let sq = re * re + im * im;
    match power {
        2 => sq,
        4 => sq * sq,
        _ => panic!("power must be 2 or 4"),
    }
}

/// Composite Simpson rule with step <= max_step.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, max_step: f64) -> f64 {
    assert!(b >= a && max_step > 0.0);
    if a == b {
        return 0.0;
    }
    let mut n = ((b - a) / max_step).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let n = n.max(2);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Fixed-step reference moment integral of |zeta(sigma+it)|^power over [a, b].
pub fn moment_brute(sigma: f64, power: u32, a: f64, b: f64, step: f64) -> f64 {
    simpson(|t| abs_pow_brute(sigma, t, power), a, b, step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_agrees_with_hiprec() {
        let mut hp = crate::hiprec::HighPrecZeta::new(50);
        for &(sigma, t) in &[(0.5, 14.0), (0.5, 250.3), (0.75, 77.7), (2.0, 500.0)] {
            let (re, im) = zeta_brute(sigma, t);
            let (hre, him) = hp.zeta_f64(sigma, t);
            assert!(
                (re - hre).abs() < 1e-10 && (im - him).abs() < 1e-10,
                "mismatch at ({sigma}, {t}): ({re}, {im}) vs ({hre}, {him})"
            );
        }
    }

    #[test]
    fn simpson_polynomial_exact() {
        let v = simpson(|x| x * x * x, 0.0, 2.0, 0.25);
        assert!((v - 4.0).abs() < 1e-12);
    }
}
