//! Bigraded homology over the two-element field.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::complex::BigradedComplex;
use crate::error::ComputeError;

/// `(M, A) -> rank`, with zero ranks omitted.
pub type BigradedRanks = BTreeMap<(i64, i64), usize>;

/// Blocks with at most this many matrix entries use dense bit-packed elimination.
pub const DENSE_THRESHOLD: usize = 1 << 14;

/// Rank of a sparse matrix over the two-element field given as columns of
/// row indices. Each column is reduced against earlier pivots, the pivot
/// being the lowest row index.
pub fn sparse_rank(columns: &[Vec<u32>]) -> usize {
    let mut owner: HashMap<u32, Vec<u32>> = HashMap::new();
    for col in columns {
        let mut v = reduce_mod2(col.clone());
        while let Some(&low) = v.first() {
            match owner.get(&low) {
                Some(p) => v = xor_sorted(&v, p),
                None => {
                    owner.insert(low, v);
                    break;
                }
            }
        }
    }
    owner.len()
}

/// Sorts and cancels repeated entries in pairs.
pub fn reduce_mod2(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Same pivot rule as [`sparse_rank`], with columns packed into machine words.
pub fn dense_rank(columns: &[Vec<u32>], rows: usize) -> usize {
    let words = rows.div_ceil(64).max(1);
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut bits = vec![0u64; words];
        for &r in col {
            bits[r as usize / 64] ^= 1 << (r % 64);
        }
        loop {
            let Some(w) = bits.iter().position(|&b| b != 0) else { break };
            let low = w * 64 + bits[w].trailing_zeros() as usize;
            match &pivots[low] {
                Some(p) => bits.iter_mut().zip(p).for_each(|(a, b)| *a ^= b),
                None => {
                    pivots[low] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn block_rank(columns: &[Vec<u32>], rows: usize) -> usize {
    if rows.saturating_mul(columns.len()) <= DENSE_THRESHOLD {
        dense_rank(columns, rows)
    } else {
        sparse_rank(columns)
    }
}

/// Counts the nonzero terms of `d o d`.
pub fn square_defect(boundary: &[Vec<u32>]) -> usize {
    boundary
        .par_iter()
        .map(|targets| {
            reduce_mod2(targets.iter().flat_map(|&y| boundary[y as usize].iter().copied()).collect()).len()
        })
        .sum()
}

/// Homology ranks per `(M, A)`. The differential must drop `M` by one and
/// preserve `A`.
pub fn f2_homology(c: &BigradedComplex) -> Result<BigradedRanks, ComputeError> {
    for (x, targets) in c.boundary.iter().enumerate() {
        let (m, a) = c.gradings[x];
        if let Some(&y) = targets.iter().find(|&&y| c.gradings[y as usize] != (m - 1, a)) {
            return Err(ComputeError::Invalid(format!("arrow {x} -> {y} does not have bidegree (-1, 0)")));
        }
    }
    if square_defect(&c.boundary) != 0 {
        return Err(ComputeError::NotAComplex);
    }
    let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (x, &gr) in c.gradings.iter().enumerate() {
        blocks.entry(gr).or_default().push(x);
    }
    let mut local = vec![0u32; c.gradings.len()];
    for members in blocks.values() {
        for (i, &x) in members.iter().enumerate() {
            local[x] = i as u32;
        }
    }
    let keys: Vec<(i64, i64)> = blocks.keys().copied().collect();
    let ranks: BTreeMap<(i64, i64), usize> = keys
        .par_iter()
        .map(|&(m, a)| {
            let rows = blocks.get(&(m - 1, a)).map_or(0, Vec::len);
            let columns: Vec<Vec<u32>> =
                blocks[&(m, a)].iter().map(|&x| c.boundary[x].iter().map(|&y| local[y as usize]).collect()).collect();
            ((m, a), if rows == 0 { 0 } else { block_rank(&columns, rows) })
        })
        .collect();
    let mut out = BigradedRanks::new();
    for (&(m, a), members) in &blocks {
        let h = members.len() - ranks[&(m, a)] - ranks.get(&(m + 1, a)).copied().unwrap_or(0);
        if h > 0 {
            out.insert((m, a), h);
        }
    }
    Ok(out)
}

/// Total rank.
pub fn total_rank(r: &BigradedRanks) -> usize {
    r.values().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(gradings: Vec<(i64, i64)>, boundary: Vec<Vec<u32>>) -> BigradedComplex {
        BigradedComplex { gradings, boundary }
    }

    #[test]
    fn zero_differential() {
        let c = complex(vec![(0, 0), (1, 0), (2, 1)], vec![vec![], vec![], vec![]]);
        let r = f2_homology(&c).unwrap();
        assert_eq!(r, BigradedRanks::from([((0, 0), 1), ((1, 0), 1), ((2, 1), 1)]));
    }

    #[test]
    fn single_arrow_kills_both() {
        let c = complex(vec![(1, 0), (0, 0)], vec![vec![1], vec![]]);
        assert!(f2_homology(&c).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_complexes() {
        // a -> b -> c with a single path: d^2 != 0
        let c = complex(vec![(2, 0), (1, 0), (0, 0)], vec![vec![1], vec![2], vec![]]);
        assert_eq!(f2_homology(&c), Err(ComputeError::NotAComplex));
        let c = complex(vec![(2, 0), (0, 0)], vec![vec![1], vec![]]);
        assert!(matches!(f2_homology(&c), Err(ComputeError::Invalid(_))));
    }

    #[test]
    fn dense_and_sparse_ranks_agree() {
        let cols = vec![vec![0, 2], vec![1, 2], vec![0, 1], vec![3], vec![0, 3]];
        assert_eq!(sparse_rank(&cols), 4);
        assert_eq!(dense_rank(&cols, 4), sparse_rank(&cols));
        let cols: Vec<Vec<u32>> = (0..200).map(|i| vec![i % 97, (i * 7) % 97, 96]).collect();
        assert_eq!(dense_rank(&cols, 97), sparse_rank(&cols));
    }
}
