//! Counting labelled graphs without isolated vertices, and the fraction of
//! digraphs that arise as NB graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn binomial(n: &BigInt, k: usize) -> BigInt {
    let kb = BigInt::from(k);
    if *n < kb {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// Labelled simple graphs on `n` vertices with `m` edges and no isolated
/// vertex, by inclusion-exclusion over the set of isolated vertices:
/// `sum_k (-1)^k C(n,k) C(C(n-k,2), m)`.
pub fn count_min_degree_graphs(n: usize, m: usize) -> BigInt {
    let mut total = BigInt::zero();
    for k in 0..=n {
        let rest = n - k;
        let pairs = BigInt::from(rest * rest.saturating_sub(1) / 2);
        let term = binomial(&BigInt::from(n), k) * binomial(&pairs, m);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `F(N)`: zero for odd `N`, otherwise
/// `sum_{n <= N} count_min_degree_graphs(n, N/2) / 2^(N(N-1))`.
pub fn nb_fraction(big_n: usize) -> BigRational {
    if big_n % 2 == 1 {
        return BigRational::zero();
    }
    let m = big_n / 2;
    let numer: BigInt = (0..=big_n).map(|n| count_min_degree_graphs(n, m)).sum();
    let denom = BigInt::one() << (big_n * big_n.saturating_sub(1));
    BigRational::new(numer, denom)
}
