//! Rank modulo large primes drawn from a fixed seeded stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::echelon::Echelon;
use super::field::PrimeField;
use super::sparse::{SparseMatrix, SparseVec};

const PRIME_SEED: u64 = 0x5eed_f1a1;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for n < 3.4e14.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `k` primes of the seeded stream, all in `(2^30, 2^31)`.
pub fn prime_stream(k: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(PRIME_SEED);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let candidate = rng.gen_range((1u64 << 30) + 1..1u64 << 31) | 1;
        if is_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// Rank modulo `p`, or `None` if `p` divides some denominator.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> Option<usize> {
    let field = PrimeField::new(p);
    let vectors: Vec<SparseVec<u64>> = if m.rows() <= m.cols() {
        (0..m.cols())
            .map(|c| m.column_in(&field, c))
            .collect::<Option<_>>()?
    } else {
        let t = m.transpose();
        (0..t.cols())
            .map(|c| t.column_in(&field, c))
            .collect::<Option<_>>()?
    };
    let dim = m.rows().min(m.cols());
    let mut ech = Echelon::new(field, dim);
    for v in &vectors {
        if ech.rank() == dim {
            break;
        }
        ech.insert(v);
    }
    Some(ech.rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularRank {
    pub rank: usize,
    /// `(prime, rank mod prime)` for every prime tried.
    pub trials: Vec<(u64, usize)>,
    /// Two primes produced the same rank.
    pub certified: bool,
}

/// Rank over two primes, escalating while they disagree. Modular ranks are
/// lower bounds for the rational rank, so the maximum seen is reported.
pub fn modular_rank(m: &SparseMatrix) -> ModularRank {
    const MAX_PRIMES: usize = 8;
    let mut trials: Vec<(u64, usize)> = Vec::new();
    for p in prime_stream(MAX_PRIMES + 8) {
        let Some(r) = rank_mod_p(m, p) else { continue };
        let agreed = trials.iter().any(|&(_, s)| s == r);
        trials.push((p, r));
        let best = trials.iter().map(|t| t.1).max().unwrap_or(0);
        if (agreed && r == best) || trials.len() >= MAX_PRIMES {
            let certified = trials.iter().filter(|t| t.1 == best).count() >= 2;
            return ModularRank {
                rank: best,
                trials,
                certified,
            };
        }
    }
    let best = trials.iter().map(|t| t.1).max().unwrap_or(0);
    ModularRank {
        rank: best,
        certified: trials.iter().filter(|t| t.1 == best).count() >= 2,
        trials,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_reproducible() {
        let ps = prime_stream(5);
        assert_eq!(ps, prime_stream(5));
        for &p in &ps {
            assert!(is_prime(p));
            assert!(p > 1 << 30 && p < 1 << 31);
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn modular_rank_small() {
        let m = SparseMatrix::from_dense(&[vec![1, 1], vec![1, 1], vec![0, 2]]);
        let r = modular_rank(&m);
        assert_eq!(r.rank, 2);
        assert!(r.certified);
        assert_eq!(r.trials.len(), 2);
    }
}
