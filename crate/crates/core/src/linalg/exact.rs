//! Fraction-free rank over the integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sparse::{SparseMatrix, SparseVec};

type IntVec = SparseVec<BigInt>;

fn content_free(mut v: IntVec) -> IntVec {
    let mut g = BigInt::zero();
    for (_, x) in &v {
        g = g.gcd(x);
        if g.is_one() {
            return v;
        }
    }
    if !g.is_zero() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Column `c` scaled by the lcm of its denominators, then made primitive.
fn integral_column(m: &SparseMatrix, c: usize) -> IntVec {
    let col = m.column(c);
    let l = col
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let v = col
        .iter()
        .map(|(r, q)| (*r, q.numer() * (&l / q.denom())))
        .collect();
    content_free(v)
}

/// `p_lead * w - w_lead * p`, both leads cancelled after dividing by their gcd.
fn eliminate(w: &IntVec, p: &IntVec) -> IntVec {
    let (wl, pl) = (&w[0].1, &p[0].1);
    let g = wl.gcd(pl);
    let sw = pl / &g;
    let sp = wl / &g;
    let mut out = Vec::with_capacity(w.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < w.len() || j < p.len() {
        let ki = w.get(i).map_or(usize::MAX, |e| e.0);
        let kj = p.get(j).map_or(usize::MAX, |e| e.0);
        let (k, x) = if ki < kj {
            i += 1;
            (ki, &sw * &w[i - 1].1)
        } else if kj < ki {
            j += 1;
            (kj, -(&sp * &p[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ki, &sw * &w[i - 1].1 - &sp * &p[j - 1].1)
        };
        if !x.is_zero() {
            out.push((k, x));
        }
    }
    content_free(out)
}

/// Rank by sparse fraction-free elimination. Vectors are bucketed by leading
/// index; in each bucket the pivot has the smallest leading magnitude (ties:
/// fewest nonzeros) and clears the others.
pub fn exact_rank(m: &SparseMatrix) -> usize {
    let mut buckets: BTreeMap<usize, Vec<IntVec>> = BTreeMap::new();
    for c in 0..m.cols() {
        let v = integral_column(m, c);
        if let Some(&(lead, _)) = v.first() {
            buckets.entry(lead).or_default().push(v);
        }
    }
    let mut rank = 0;
    while let Some((_, mut bucket)) = buckets.pop_first() {
        let best = bucket
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| {
                x[0].1
                    .abs()
                    .cmp(&y[0].1.abs())
                    .then(x.len().cmp(&y.len()))
            })
            .map(|(i, _)| i)
            .expect("bucket nonempty");
        let pivot = bucket.swap_remove(best);
        rank += 1;
        for w in bucket {
            let r = eliminate(&w, &pivot);
            if let Some(&(lead, _)) = r.first() {
                buckets.entry(lead).or_default().push(r);
            }
        }
    }
    rank
}
