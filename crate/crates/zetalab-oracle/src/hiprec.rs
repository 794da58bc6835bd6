//! Arbitrary-precision zeta evaluator (Euler-Maclaurin, big floats).
//!
//! Deliberately simple: a plain truncated sum with N of order t, plus the
//! Euler-Maclaurin tail, all in >= 50 decimal digits. Slow and obvious by
//! construction; used only to check the fast f64 kernels.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

use crate::bernoulli::bernoulli_over_factorial;

const RM: RoundingMode = RoundingMode::ToEven;

/// Complex number over BigFloat. Only the operations the evaluator needs.
#[derive(Clone, Debug)]
pub struct Cx {
    pub re: BigFloat,
    pub im: BigFloat,
}

pub struct HighPrecZeta {
    p: usize,
    cc: Consts,
    bern: Vec<BigFloat>, // B_{2k}/(2k)!, k = 1..
}

/// Lossy conversion to f64 through the raw mantissa words.
pub fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (words, _n, sign, exp, _) = x.as_raw_parts().expect("finite number");
    // words are little-endian; value = sign * 0.mantissa * 2^exp
    let k = words.len();
    let hi = words[k - 1] as f64;
    let lo = if k >= 2 { words[k - 2] as f64 } else { 0.0 };
    let m = hi + lo / 18446744073709551616.0; // 2^64
    let v = m * (exp as f64 - 64.0).exp2();
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

impl HighPrecZeta {
    /// `digits`: target decimal accuracy (>= 50 for oracle use).
    pub fn new(digits: usize) -> Self {
        let bits = ((digits as f64) * 3.322).ceil() as usize + 40;
        let p = bits.div_ceil(64) * 64;
        let cc = Consts::new().expect("constants cache");
        HighPrecZeta {
            p,
            cc,
            bern: Vec::new(),
        }
    }

    pub fn precision_bits(&self) -> usize {
        self.p
    }

    fn bern(&mut self, k: usize) -> BigFloat {
        if self.bern.len() < k {
            let exact = bernoulli_over_factorial(k + 8);
            self.bern = exact
                .iter()
                .map(|r| {
                    let n = BigFloat::parse(
                        &r.numer().to_string(),
                        Radix::Dec,
                        self.p,
                        RM,
                        &mut self.cc,
                    );
                    let d = BigFloat::parse(
                        &r.denom().to_string(),
                        Radix::Dec,
                        self.p,
                        RM,
                        &mut self.cc,
                    );
                    n.div(&d, self.p, RM)
                })
                .collect();
        }
        self.bern[k - 1].clone()
    }

    fn cx_mul(&self, a: &Cx, b: &Cx) -> Cx {
        let p = self.p;
        Cx {
            re: a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM),
            im: a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM),
        }
    }

    fn cx_div(&self, a: &Cx, b: &Cx) -> Cx {
        let p = self.p;
        let d = b
            .re
            .mul(&b.re, p, RM)
            .add(&b.im.mul(&b.im, p, RM), p, RM);
        let re = a
            .re
            .mul(&b.re, p, RM)
            .add(&a.im.mul(&b.im, p, RM), p, RM)
            .div(&d, p, RM);
        let im = a
            .im
            .mul(&b.re, p, RM)
            .sub(&a.re.mul(&b.im, p, RM), p, RM)
            .div(&d, p, RM);
        Cx { re, im }
    }

    /// n^{-s} for s = sigma + i t, n given by its big-float logarithm.
    fn n_pow_minus_s(&mut self, ln_n: &BigFloat, sigma: &BigFloat, t: &BigFloat) -> Cx {
        let p = self.p;
        let mag = ln_n
            .mul(sigma, p, RM)
            .neg()
            .exp(p, RM, &mut self.cc);
        let arg = t.mul(ln_n, p, RM);
        let c = arg.cos(p, RM, &mut self.cc);
        let s = arg.sin(p, RM, &mut self.cc);
        Cx {
            re: mag.mul(&c, p, RM),
            im: mag.mul(&s, p, RM).neg(),
        }
    }

    /// zeta(sigma + i t), valid for sigma > 0, (sigma, t) != (1, 0).
    pub fn zeta(&mut self, sigma: f64, t: f64) -> Cx {
        assert!(sigma > 0.0 && t >= 0.0, "oracle domain: sigma > 0, t >= 0");
        assert!(!(sigma == 1.0 && t == 0.0), "pole at s = 1");
        let p = self.p;
        let n_main = (t.ceil() as usize).max(32) + 16;
        let sig = BigFloat::from_f64(sigma, p);
        let tt = BigFloat::from_f64(t, p);

        let mut sum = Cx {
            re: BigFloat::from_f64(1.0, p), // n = 1 term
            im: BigFloat::from_f64(0.0, p),
        };
        for n in 2..n_main {
            let ln_n = BigFloat::from_u32(n as u32, p).ln(p, RM, &mut self.cc);
            let term = self.n_pow_minus_s(&ln_n, &sig, &tt);
            sum.re = sum.re.add(&term.re, p, RM);
            sum.im = sum.im.add(&term.im, p, RM);
        }

        let nf = BigFloat::from_u32(n_main as u32, p);
        let ln_n = nf.ln(p, RM, &mut self.cc);
        let n_minus_s = self.n_pow_minus_s(&ln_n, &sig, &tt);
        // N^{1-s} / (s-1)
        let n_pow_1ms = Cx {
            re: n_minus_s.re.mul(&nf, p, RM),
            im: n_minus_s.im.mul(&nf, p, RM),
        };
        let one = BigFloat::from_f64(1.0, p);
        let s_minus_1 = Cx {
            re: sig.sub(&one, p, RM),
            im: tt.clone(),
        };
        let tail1 = self.cx_div(&n_pow_1ms, &s_minus_1);
        sum.re = sum.re.add(&tail1.re, p, RM);
        sum.im = sum.im.add(&tail1.im, p, RM);
        // + N^{-s} / 2
        let half = BigFloat::from_f64(0.5, p);
        sum.re = sum.re.add(&n_minus_s.re.mul(&half, p, RM), p, RM);
        sum.im = sum.im.add(&n_minus_s.im.mul(&half, p, RM), p, RM);

        // Euler-Maclaurin corrections:
        //   T_k = B_{2k}/(2k)! * N^{1-s-2k} * prod_{j=0}^{2k-2} (s+j)
        let n_sq_inv = nf.mul(&nf, p, RM).reciprocal(p, RM);
        let mut pw = Cx {
            re: n_pow_1ms.re.mul(&n_sq_inv, p, RM),
            im: n_pow_1ms.im.mul(&n_sq_inv, p, RM),
        };
        let mut prod = Cx {
            re: sig.clone(),
            im: tt.clone(),
        };
        let cutoff = -((self.p as i64) + 8);
        for k in 1..=80usize {
            let b = self.bern(k);
            let term = Cx {
                re: pw.re.mul(&prod.re, p, RM).sub(&pw.im.mul(&prod.im, p, RM), p, RM),
                im: pw.re.mul(&prod.im, p, RM).add(&pw.im.mul(&prod.re, p, RM), p, RM),
            };
            let term = Cx {
                re: term.re.mul(&b, p, RM),
                im: term.im.mul(&b, p, RM),
            };
            sum.re = sum.re.add(&term.re, p, RM);
            sum.im = sum.im.add(&term.im, p, RM);
            let mag = term.re.abs().max(&term.im.abs());
            let done = match (mag.exponent(), sum.re.abs().max(&sum.im.abs()).exponent()) {
                (Some(e), Some(es)) => (e as i64) < (es as i64) + cutoff,
                _ => true,
            };
            if done {
                break;
            }
            // advance: pw /= N^2, prod *= (s+2k-1)(s+2k)
            pw = Cx {
                re: pw.re.mul(&n_sq_inv, p, RM),
                im: pw.im.mul(&n_sq_inv, p, RM),
            };
            let f1 = Cx {
                re: sig.add(&BigFloat::from_u32((2 * k - 1) as u32, p), p, RM),
                im: tt.clone(),
            };
            let f2 = Cx {
                re: sig.add(&BigFloat::from_u32((2 * k) as u32, p), p, RM),
                im: tt.clone(),
            };
            prod = self.cx_mul(&self.cx_mul(&prod, &f1), &f2);
        }
        sum
    }

    pub fn zeta_f64(&mut self, sigma: f64, t: f64) -> (f64, f64) {
        let z = self.zeta(sigma, t);
        (big_to_f64(&z.re), big_to_f64(&z.im))
    }

    /// |zeta(sigma + i t)|^2 rounded to f64 at the end.
    pub fn abs_sq_f64(&mut self, sigma: f64, t: f64) -> f64 {
        let z = self.zeta(sigma, t);
        let p = self.p;
        let sq = z
            .re
            .mul(&z.re, p, RM)
            .add(&z.im.mul(&z.im, p, RM), p, RM);
        big_to_f64(&sq)
    }

    /// zeta at a real argument x > 0, x != 1.
    pub fn zeta_real_f64(&mut self, x: f64) -> f64 {
        self.zeta_f64(x, 0.0).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two_matches_pi_sq_over_six() {
        let mut hp = HighPrecZeta::new(50);
        let v = hp.zeta_real_f64(2.0);
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    }

    #[test]
    fn zeta_half_known_value() {
        let mut hp = HighPrecZeta::new(50);
        let v = hp.zeta_real_f64(0.5);
        assert!((v - (-1.4603545088095868)).abs() < 1e-13, "got {v}");
    }

    #[test]
    fn first_critical_zero() {
        let mut hp = HighPrecZeta::new(50);
        let a = hp.abs_sq_f64(0.5, 14.134725141734694);
        assert!(a < 1e-20, "got {a}");
    }

    #[test]
    fn moderate_height_reference_point() {
        // cross-checked against an external multiprecision package
        let mut hp = HighPrecZeta::new(50);
        let (re, im) = hp.zeta_f64(0.5, 100.0);
        assert!((re - 2.692619885681324).abs() < 1e-12, "re {re}");
        assert!((im - (-0.020386029602598161)).abs() < 1e-12, "im {im}");
    }

    #[test]
    fn strip_reference_point() {
        let mut hp = HighPrecZeta::new(50);
        let (re, im) = hp.zeta_f64(0.75, 1234.5);
        assert!((re - 1.1733042692299836).abs() < 1e-12, "re {re}");
        assert!((im - (-0.37174204023410456)).abs() < 1e-12, "im {im}");
    }
}
