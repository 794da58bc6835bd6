//! Exact Bernoulli numbers via the defining recurrence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient C(n, k) as a big integer.
fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers B_0 .. B_m (B_1 = -1/2 convention).
///
/// Uses sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
pub fn bernoulli_upto(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for n in 1..=m {
        if n > 1 && n % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            acc += BigRational::from(binomial(n + 1, j)) * bj;
        }
        b.push(-acc / BigRational::from(BigInt::from(n + 1)));
    }
    b
}

/// B_{2k} / (2k)! for k = 1..=kmax, exact.
pub fn bernoulli_over_factorial(kmax: usize) -> Vec<BigRational> {
    let b = bernoulli_upto(2 * kmax);
    let mut fact = BigInt::from(2); // 2!
    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        if k > 1 {
            // (2k)! from (2k-2)!
            fact *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
        }
        out.push(&b[2 * k] / BigRational::from(fact.clone()));
    }
    out
}
