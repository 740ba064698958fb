//! Permutations of `{0, .., n-1}` in one-line notation.

use std::fmt;

use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Panics if `images` is not a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm(images)
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Perm(v)
    }

    /// Coxeter generator `s_i = (i, i+1)` with 1-based `i`, on `n` points.
    pub fn coxeter(n: usize, i: usize) -> Self {
        Self::transposition(n, i - 1, i)
    }

    /// A representative of the class with the given cycle type: consecutive cycles.
    pub fn from_cycle_type(cycle_type: &Partition) -> Self {
        let n = cycle_type.size();
        let mut v = vec![0; n];
        let mut start = 0;
        for &len in cycle_type.parts() {
            for k in 0..len {
                v[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Perm(v)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(lens).expect("sorted cycle lengths")
    }

    pub fn sign(&self) -> i8 {
        let ct = self.cycle_type();
        if (ct.size() - ct.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// Sign of the permutation that sorts `seq` (distinct entries).
pub fn sorting_sign(seq: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All injections `{0..a} -> {0..b}` as arrays of targets, lexicographic order.
pub fn injections(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn rec(a: usize, b: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for t in 0..b {
            if !used[t] {
                used[t] = true;
                cur.push(t);
                rec(a, b, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a <= b {
        rec(a, b, &mut vec![false; b], &mut Vec::new(), &mut out);
    }
    out
}

/// `n! / (n-k)!`, zero when `k > n`.
pub fn falling_factorial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    ((n - k + 1)..=n).map(|x| x as u128).product()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n).map(|x| x as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    falling_factorial(n, k) / factorial(k)
}
