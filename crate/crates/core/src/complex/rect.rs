//! Rectangles on the grid torus.

use serde::Serialize;

use super::generators::GeneratorSet;
use crate::grid::GridDiagram;

/// A rectangle from `from` to `to`. Its lower-left corner is at column
/// `cols.0`, row `rows.0`; it extends right by `width` and up by `height`,
/// wrapping around the torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rect {
    pub from: usize,
    pub to: usize,
    pub cols: (usize, usize),
    pub rows: (usize, usize),
    pub width: usize,
    pub height: usize,
    pub o_count: usize,
    pub x_count: usize,
    pub interior_count: usize,
}

impl Rect {
    pub fn is_empty(&self) -> bool {
        self.interior_count == 0
    }
}

fn wrap(v: usize, base: usize, n: usize) -> usize {
    (v + n - base) % n
}

/// Whether the cell with lower-left lattice point `(col, row)` lies in the
/// rectangle anchored at `(a, ra)` with the given width and height.
fn contains_cell(col: usize, row: usize, a: usize, ra: usize, w: usize, h: usize, n: usize) -> bool {
    wrap(col, a, n) < w && wrap(row, ra, n) < h
}

/// The `n(n-1)` rectangles leaving the state `x` (`x[col] = row`), or only
/// the empty ones.
pub fn rectangles(g: &GridDiagram, x: &[u8], empty_only: bool) -> Vec<Rect> {
    let n = g.n();
    let from = GeneratorSet::rank(x);
    let mut out = Vec::with_capacity(n * (n - 1));
    let mut y = x.to_vec();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let (ra, rb) = (x[a] as usize, x[b] as usize);
            let w = wrap(b, a, n);
            let h = wrap(rb, ra, n);
            let interior_count =
                (1..w).map(|d| (a + d) % n).filter(|&c| (1..h).contains(&wrap(x[c] as usize, ra, n))).count();
            if empty_only && interior_count > 0 {
                continue;
            }
            let mut o_count = 0;
            let mut x_count = 0;
            for r in 0..n {
                if contains_cell(g.o_cols()[r], r, a, ra, w, h, n) {
                    o_count += 1;
                }
                if contains_cell(g.x_cols()[r], r, a, ra, w, h, n) {
                    x_count += 1;
                }
            }
            y.swap(a, b);
            let to = GeneratorSet::rank(&y);
            y.swap(a, b);
            out.push(Rect { from, to, cols: (a, b), rows: (ra, rb), width: w, height: h, o_count, x_count, interior_count });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_state_has_n_times_n_minus_one_rectangles() {
        for g in [GridDiagram::unknot(), GridDiagram::trefoil()] {
            let set = GeneratorSet::enumerate(g.n(), 9).unwrap();
            for x in set.iter() {
                let rs = rectangles(&g, x, false);
                assert_eq!(rs.len(), g.n() * (g.n() - 1));
                for r in &rs {
                    let y = set.get(r.to);
                    assert_eq!((0..g.n()).filter(|&c| x[c] != y[c]).count(), 2);
                }
            }
        }
    }

    #[test]
    fn unknot_rectangles_carry_one_marking() {
        // Both rectangles leaving the identity state hold an O; both leaving
        // the other state hold an X.
        let g = GridDiagram::unknot();
        let labels = |x: &[u8]| rectangles(&g, x, true).iter().map(|r| (r.o_count, r.x_count, r.to)).collect::<Vec<_>>();
        assert_eq!(labels(&[0, 1]), vec![(1, 0, 1), (1, 0, 1)]);
        assert_eq!(labels(&[1, 0]), vec![(0, 1, 0), (0, 1, 0)]);
    }

    #[test]
    fn interior_points_make_rectangles_non_empty() {
        // identity state on a 3x3 grid: the rectangle from column 0 to
        // column 2 contains the point (1, 1)
        let g = GridDiagram::new(vec![0, 1, 2], vec![1, 2, 0]).unwrap();
        let rs = rectangles(&g, &[0, 1, 2], false);
        let big = rs.iter().find(|r| r.cols == (0, 2)).unwrap();
        assert_eq!(big.interior_count, 1);
        assert!(!big.is_empty());
        let small = rs.iter().find(|r| r.cols == (0, 1)).unwrap();
        assert!(small.is_empty());
        assert_eq!(rectangles(&g, &[0, 1, 2], true).len(), rs.iter().filter(|r| r.is_empty()).count());
    }
}
