//! The planar link diagram drawn by a grid: vertical segments pass over
//! horizontal ones, so every crossing has a vertical over-strand.

use serde::Serialize;

use crate::grid::GridDiagram;

/// A crossing between the horizontal segment of `row` and the vertical
/// segment of `col`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub row: usize,
    pub col: usize,
    /// Arc containing the vertical over-strand.
    pub over: usize,
    /// Arc running into the crossing underneath.
    pub under_in: usize,
    /// Arc leaving the crossing underneath.
    pub under_out: usize,
    /// +1 when the over-strand crosses the under-strand from right to left.
    pub sign: i8,
}

/// An over-strand arc, running between two consecutive undercrossings of
/// its component (or the whole component when it has none).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<Arc>,
    pub components: usize,
}

impl PlanarDiagram {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }
}

fn strictly_between(v: usize, a: usize, b: usize) -> bool {
    a.min(b) < v && v < a.max(b)
}

fn signum(a: usize, b: usize) -> i8 {
    if b > a {
        1
    } else {
        -1
    }
}

/// Derives crossings, arcs and signs from a grid.
pub fn planar_diagram(g: &GridDiagram) -> PlanarDiagram {
    let n = g.n();
    let (o_cols, x_cols) = (g.o_cols(), g.x_cols());
    let (o_rows, x_rows) = (g.o_rows(), g.x_rows());

    let mut crossings = Vec::new();
    let mut arcs = Vec::new();
    let mut visited = vec![false; n];
    let mut col_arc = vec![usize::MAX; n];
    let mut component = 0;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        // Undercrossings in travel order, and the count passed before each
        // vertical segment of this component.
        let mut events: Vec<(usize, usize)> = Vec::new();
        let mut passed_before_col: Vec<(usize, usize)> = Vec::new();
        let mut r = start;
        while !visited[r] {
            visited[r] = true;
            let (from, to) = (o_cols[r], x_cols[r]);
            let mut cols: Vec<usize> =
                (0..n).filter(|&c| strictly_between(c, from, to) && strictly_between(r, x_rows[c], o_rows[c])).collect();
            if to < from {
                cols.reverse();
            }
            events.extend(cols.into_iter().map(|c| (r, c)));
            let c = to;
            passed_before_col.push((c, events.len()));
            r = o_rows[c];
        }
        let base = arcs.len();
        let m = events.len();
        let arc_count = m.max(1);
        arcs.extend((0..arc_count).map(|_| Arc { component }));
        let local = |k: usize| base + k % arc_count;
        for &(c, k) in &passed_before_col {
            col_arc[c] = local(k);
        }
        for (t, &(row, col)) in events.iter().enumerate() {
            let hx = signum(o_cols[row], x_cols[row]);
            let vy = signum(x_rows[col], o_rows[col]);
            crossings.push(Crossing { row, col, over: usize::MAX, under_in: local(t), under_out: local(t + 1), sign: -vy * hx });
        }
        component += 1;
    }
    // The over arc may belong to a component traced later.
    for x in &mut crossings {
        x.over = col_arc[x.col];
    }
    PlanarDiagram { crossings, arcs, components: component }
}
