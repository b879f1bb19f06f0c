//! Removing the `V^(n-1)` factor, where `V` has generators in bidegrees
//! (0, 0) and (-1, -1).
//!
//! Division by `1 + m^-1 a^-1` only mixes terms on a line `M - A = const`,
//! so each line is divided separately by synthetic division from the top.

use std::collections::BTreeMap;

use super::f2::BigradedRanks;
use super::umodule::UModuleSummary;
use crate::error::ComputeError;

/// Two-variable Laurent polynomial `sum c m^M a^A`, keyed by `(M, A)`.
pub type Poincare = BTreeMap<(i64, i64), i64>;

pub fn poincare(r: &BigradedRanks) -> Poincare {
    r.iter().map(|(&k, &v)| (k, v as i64)).collect()
}

fn divide_once(p: &Poincare) -> Result<Poincare, ComputeError> {
    let mut lines: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    for (&(m, a), &c) in p {
        if c != 0 {
            lines.entry(m - a).or_default().insert(m, c);
        }
    }
    let mut out = Poincare::new();
    for (d, line) in lines {
        let (&low, _) = line.first_key_value().expect("nonempty line");
        let (&high, _) = line.last_key_value().expect("nonempty line");
        // p[M] = q[M] + q[M + 1]
        let mut carry = 0;
        for m in (low + 1..=high).rev() {
            let q = line.get(&m).copied().unwrap_or(0) - carry;
            if q != 0 {
                out.insert((m, m - d), q);
            }
            carry = q;
        }
        if line[&low] != carry {
            return Err(ComputeError::InexactDivision(format!("remainder on the line M - A = {d}")));
        }
    }
    Ok(out)
}

/// Divides by `(1 + m^-1 a^-1)^power`, requiring an exact quotient.
pub fn v_divide_poly(p: &Poincare, power: usize) -> Result<Poincare, ComputeError> {
    let mut q = p.clone();
    for _ in 0..power {
        q = divide_once(&q)?;
    }
    Ok(q)
}

/// Divides ranks by `V^power`; the quotient must have non-negative coefficients.
pub fn v_divide_ranks(r: &BigradedRanks, power: usize) -> Result<BigradedRanks, ComputeError> {
    to_ranks(v_divide_poly(&poincare(r), power)?)
}

fn to_ranks(p: Poincare) -> Result<BigradedRanks, ComputeError> {
    let mut out = BigradedRanks::new();
    for (k, c) in p {
        if c < 0 {
            return Err(ComputeError::InexactDivision(format!("negative coefficient at {k:?}")));
        }
        out.insert(k, c as usize);
    }
    Ok(out)
}

fn multiset(points: impl Iterator<Item = (i64, i64)>) -> BigradedRanks {
    let mut out = BigradedRanks::new();
    for p in points {
        *out.entry(p).or_default() += 1;
    }
    out
}

fn expand(r: &BigradedRanks) -> Vec<(i64, i64)> {
    r.iter().flat_map(|(&k, &c)| std::iter::repeat(k).take(c)).collect()
}

/// Deconvolves towers and each torsion order separately.
pub fn v_divide_summary(s: &UModuleSummary, power: usize) -> Result<UModuleSummary, ComputeError> {
    let towers = expand(&v_divide_ranks(&multiset(s.towers.iter().copied()), power)?);
    let mut by_order: BTreeMap<u32, Vec<(i64, i64)>> = BTreeMap::new();
    for &(g, k) in &s.torsions {
        by_order.entry(k).or_default().push(g);
    }
    let mut torsions = Vec::new();
    for (k, gs) in by_order {
        torsions.extend(expand(&v_divide_ranks(&multiset(gs.into_iter()), power)?).into_iter().map(|g| (g, k)));
    }
    torsions.sort_unstable();
    Ok(UModuleSummary { towers, torsions })
}

/// Multiplies ranks by `V^power`.
pub fn v_multiply_ranks(r: &BigradedRanks, power: usize) -> BigradedRanks {
    let mut cur = r.clone();
    for _ in 0..power {
        let mut next = BigradedRanks::new();
        for (&(m, a), &c) in &cur {
            *next.entry((m, a)).or_default() += c;
            *next.entry((m - 1, a - 1)).or_default() += c;
        }
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divides_pure_powers() {
        let one = BigradedRanks::from([((0, 0), 1)]);
        let v4 = v_multiply_ranks(&one, 4);
        assert_eq!(v4.values().sum::<usize>(), 16);
        assert_eq!(v_divide_ranks(&v4, 4).unwrap(), one);
    }

    #[test]
    fn trefoil_pattern() {
        let hat = BigradedRanks::from([((2, 1), 1), ((1, 0), 1), ((0, -1), 1)]);
        let tilde = v_multiply_ranks(&hat, 4);
        assert_eq!(tilde.values().sum::<usize>(), 48);
        assert_eq!(v_divide_ranks(&tilde, 4).unwrap(), hat);
    }

    #[test]
    fn inexact_division_is_reported() {
        let r = BigradedRanks::from([((0, 0), 1), ((-1, -1), 2)]);
        assert!(v_divide_ranks(&r, 1).is_err());
        let r = BigradedRanks::from([((0, 0), 1)]);
        assert!(v_divide_ranks(&r, 1).is_err());
    }

    #[test]
    fn summary_division() {
        let towers = expand(&v_multiply_ranks(&BigradedRanks::from([((0, 0), 1)]), 4));
        assert_eq!(towers.len(), 16);
        let torsions =
            expand(&v_multiply_ranks(&BigradedRanks::from([((1, 0), 1)]), 2)).into_iter().map(|g| (g, 1)).collect();
        let s = UModuleSummary { towers, torsions };
        let t = v_divide_summary(&UModuleSummary { towers: s.towers.clone(), torsions: vec![] }, 4).unwrap();
        assert_eq!(t.towers, vec![(0, 0)]);
        let only_torsion = UModuleSummary { towers: vec![], torsions: s.torsions };
        assert_eq!(v_divide_summary(&only_torsion, 2).unwrap().torsions, vec![((1, 0), 1)]);
    }
}
