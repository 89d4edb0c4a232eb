//! Exact combinatorial quantities: binomials, Stirling numbers of the second kind,
//! factorials and elementary symmetric sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(k, mu)`, zero when `mu > k`.
pub fn binom(k: usize, mu: usize) -> BigInt {
    if mu > k {
        return BigInt::zero();
    }
    let mu = mu.min(k - mu);
    let mut acc = BigInt::one();
    for i in 0..mu {
        acc = acc * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    acc
}

/// Stirling number of the second kind `S(k, mu)`, zero when `mu > k`.
pub fn stirling2(k: usize, mu: usize) -> BigInt {
    if mu > k {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); mu + 1];
    row[0] = BigInt::one();
    for i in 1..=k {
        for j in (1..=mu.min(i)).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = BigInt::from(j) * prev + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[mu].clone()
}

/// `k!`.
pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Elementary symmetric sum `e_mu(lambda)`: the sum over all `mu`-subsets of the
/// product of the chosen entries.
pub fn elementary_symmetric(lambda: &[usize], mu: usize) -> BigInt {
    let mut e = vec![BigInt::zero(); mu + 1];
    e[0] = BigInt::one();
    for &l in lambda {
        for j in (1..=mu).rev() {
            let add = &e[j - 1] * BigInt::from(l);
            e[j] += add;
        }
    }
    e[mu].clone()
}

/// Product of the entries.
pub fn product(lambda: &[usize]) -> BigInt {
    lambda
        .iter()
        .fold(BigInt::one(), |acc, &l| acc * BigInt::from(l))
}
