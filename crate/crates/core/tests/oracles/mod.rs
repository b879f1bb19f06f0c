//! Reference computations that share no code with the library: closed-form
//! grid gradings and Smith normal form over F2[U].

#![allow(dead_code)]

use std::collections::BTreeMap;

use gridfloer::complex::UModuleComplex;
use gridfloer::GridDiagram;
use rand::seq::SliceRandom;
use rand::Rng;

/// Twice `I(P, Q)`, points given in doubled coordinates.
fn count_below_left(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    p.iter().map(|a| q.iter().filter(|b| a.0 < b.0 && a.1 < b.1).count() as i64).sum()
}

/// `2 J(P, Q) = I(P, Q) + I(Q, P)`.
fn j2(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    count_below_left(p, q) + count_below_left(q, p)
}

/// `M_S(x) = J(x, x) - 2 J(x, S) + J(S, S) + 1` with markings at cell centres.
fn maslov_against(state: &[u8], marks: &[(i64, i64)]) -> i64 {
    let x: Vec<(i64, i64)> = state.iter().enumerate().map(|(c, &r)| (2 * c as i64, 2 * r as i64)).collect();
    let twice = j2(&x, &x) - 2 * j2(&x, marks) + j2(marks, marks);
    assert_eq!(twice % 2, 0);
    twice / 2 + 1
}

/// `(M, A)` of a state from the closed formulas.
pub fn closed_form_gradings(g: &GridDiagram, state: &[u8]) -> (i64, i64) {
    let centre = |cols: &[usize]| cols.iter().enumerate().map(|(r, &c)| (2 * c as i64 + 1, 2 * r as i64 + 1)).collect::<Vec<_>>();
    let (o, x) = (centre(g.o_cols()), centre(g.x_cols()));
    let m_o = maslov_against(state, &o);
    let m_x = maslov_against(state, &x);
    let n = g.n() as i64;
    let twice_a = m_o - m_x - (n - 1);
    assert_eq!(twice_a % 2, 0, "knot grids have integral Alexander gradings");
    (m_o, twice_a / 2)
}

/// Polynomials over F2 as bit masks.
fn deg(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn pmul(a: u128, b: u128) -> u128 {
    let mut out = 0;
    for i in 0..128 {
        if b >> i & 1 == 1 {
            out ^= a << i;
        }
    }
    out
}

fn pdivmod(mut a: u128, b: u128) -> (u128, u128) {
    let mut q = 0;
    while a != 0 && deg(a) >= deg(b) {
        let s = deg(a) - deg(b);
        q ^= 1 << s;
        a ^= b << s;
    }
    (q, a)
}

/// Diagonal of a Smith form of `m` (rows x cols) over F2[U].
pub fn smith_diagonal(mut m: Vec<Vec<u128>>) -> Vec<u128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows).flat_map(|r| (t..cols).map(move |c| (r, c))).filter(|&(r, c)| m[r][c] != 0).min_by_key(|&(r, c)| deg(m[r][c]));
            let Some((pr, pc)) = pivot else { return diag };
            m.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
            let p = m[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let (q, rem) = pdivmod(m[r][t], p);
                for c in t..cols {
                    let sub = pmul(q, m[t][c]);
                    m[r][c] ^= sub;
                }
                clean &= rem == 0;
            }
            for c in t + 1..cols {
                let (q, rem) = pdivmod(m[t][c], p);
                for r in t..rows {
                    let sub = pmul(q, m[r][t]);
                    m[r][c] ^= sub;
                }
                clean &= rem == 0;
            }
            if clean {
                // pivot must divide the rest for a true Smith form
                let bad = (t + 1..rows).flat_map(|r| (t + 1..cols).map(move |c| (r, c))).find(|&(r, c)| pdivmod(m[r][c], p).1 != 0);
                match bad {
                    Some((r, _)) => {
                        let row = m[r].clone();
                        for c in t..cols {
                            m[t][c] ^= row[c];
                        }
                    }
                    None => {
                        diag.push(p);
                        break;
                    }
                }
            }
        }
    }
    diag
}

/// Towers and torsion orders of a free F2[U] complex via Smith form.
pub fn smith_homology(c: &UModuleComplex) -> (usize, Vec<u32>) {
    let n = c.gradings.len();
    let mut m = vec![vec![0u128; n]; n];
    for (x, targets) in c.boundary.iter().enumerate() {
        for &(y, k) in targets {
            m[y as usize][x] ^= 1u128 << k;
        }
    }
    let diag = smith_diagonal(m);
    let mut torsion: Vec<u32> = diag
        .iter()
        .filter(|&&d| d != 1)
        .map(|&d| {
            assert_eq!(d.count_ones(), 1, "graded invariant factors are powers of U");
            d.trailing_zeros()
        })
        .collect();
    torsion.sort_unstable();
    (n - 2 * diag.len(), torsion)
}

/// A random graded complex with known answer: towers at the listed gradings,
/// pairs `x -> U^k y`, then conjugated by random graded basis changes.
pub struct PlantedComplex {
    pub complex: UModuleComplex,
    pub towers: Vec<i64>,
    pub torsion: Vec<(i64, u32)>,
}

pub fn planted_complex<R: Rng>(rng: &mut R, max_gens: usize) -> PlantedComplex {
    let mut maslov = Vec::new();
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut towers = Vec::new();
    let mut torsion = Vec::new();
    while maslov.len() + 2 <= max_gens && rng.gen_bool(0.8) {
        if rng.gen_bool(0.3) {
            let m = rng.gen_range(-4..=4);
            maslov.push(m);
            towers.push(m);
        } else {
            let k: u32 = rng.gen_range(0..=3);
            let my = rng.gen_range(-4..=4);
            // x -> U^k y drops M by one: M(x) = M(y) - 2k + 1
            let mx = my - 2 * k as i64 + 1;
            maslov.push(mx);
            maslov.push(my);
            arrows.push((maslov.len() - 2, maslov.len() - 1));
            if k > 0 {
                torsion.push((my, k));
            }
        }
    }
    let n = maslov.len();
    let mut d = vec![vec![false; n]; n];
    for &(x, y) in &arrows {
        d[y][x] = true;
    }
    for _ in 0..40 {
        if n < 2 {
            break;
        }
        let pair: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(rng, 2).copied().collect();
        let (a, b) = (pair[0], pair[1]);
        // e_a <- e_a + U^m e_b needs M(b) - M(a) = 2m >= 0
        let diff = maslov[b] - maslov[a];
        if diff < 0 || diff % 2 != 0 {
            continue;
        }
        // D' = P D P with P = I + E_ba
        let mut dp = d.clone();
        for row in dp.iter_mut() {
            row[a] ^= row[b];
        }
        let mut next = dp.clone();
        for c in 0..n {
            next[b][c] ^= dp[a][c];
        }
        d = next;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut boundary = vec![Vec::new(); n];
    for x in 0..n {
        for y in 0..n {
            if d[y][x] {
                let k = (1 - (maslov[x] - maslov[y])) / 2;
                assert!(k >= 0);
                boundary[perm[x]].push((perm[y] as u32, k as u32));
            }
        }
    }
    for b in &mut boundary {
        b.sort_unstable();
    }
    let mut gradings = vec![(0, 0); n];
    for x in 0..n {
        gradings[perm[x]] = (maslov[x], 0);
    }
    towers.sort_unstable();
    torsion.sort_unstable();
    PlantedComplex { complex: UModuleComplex { gradings, boundary }, towers, torsion }
}

/// Random grid with `n` rows.
pub fn random_grid<R: Rng>(rng: &mut R, n: usize) -> GridDiagram {
    loop {
        let mut o: Vec<usize> = (0..n).collect();
        let mut x: Vec<usize> = (0..n).collect();
        o.shuffle(rng);
        x.shuffle(rng);
        if let Ok(g) = GridDiagram::new(o, x) {
            return g;
        }
    }
}

/// `sum_j binom(n-1, j)` profile, top first.
pub fn binomial_profile(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 1..n {
        let mut next = vec![1usize; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

pub fn by_maslov(r: &BTreeMap<(i64, i64), usize>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (&(m, _), &v) in r {
        *out.entry(m).or_default() += v;
    }
    out
}
