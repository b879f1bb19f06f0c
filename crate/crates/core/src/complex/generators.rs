//! Grid states: permutations `perm[col] = row`, enumerated in lexicographic
//! order and addressed by their Lehmer rank.

use crate::error::ComputeError;

/// Default ceiling on the grid size for generator enumeration.
pub const DEFAULT_CAP: usize = 9;

/// All `n!` permutations of `0..n`, stored flat in lexicographic order.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    n: usize,
    perms: Vec<u8>,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl GeneratorSet {
    pub fn enumerate(n: usize, cap: usize) -> Result<Self, ComputeError> {
        if n > cap {
            return Err(ComputeError::CapExceeded { n, cap });
        }
        let count = factorial(n);
        let mut perms = Vec::with_capacity(count * n);
        let mut p: Vec<u8> = (0..n as u8).collect();
        loop {
            perms.extend_from_slice(&p);
            if !next_permutation(&mut p) {
                break;
            }
        }
        debug_assert_eq!(perms.len(), count * n);
        Ok(GeneratorSet { n, perms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn get(&self, id: usize) -> &[u8] {
        &self.perms[id * self.n..(id + 1) * self.n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.perms.chunks_exact(self.n)
    }

    /// Position of `perm` in lexicographic order.
    pub fn rank(perm: &[u8]) -> usize {
        let n = perm.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
