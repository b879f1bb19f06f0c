//! Cromwell moves on grid diagrams: cyclic translation, commutation of
//! adjacent columns or rows, stabilization and destabilization.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::grid::{GridDiagram, Marking};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Column,
    Row,
}

/// The cell of a 2x2 stabilization block left without a marking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    SouthWest,
    SouthEast,
    NorthWest,
    NorthEast,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::SouthWest, Corner::SouthEast, Corner::NorthWest, Corner::NorthEast];

    fn is_north(self) -> bool {
        matches!(self, Corner::NorthWest | Corner::NorthEast)
    }

    fn is_east(self) -> bool {
        matches!(self, Corner::SouthEast | Corner::NorthEast)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridMove {
    /// Cyclic shift by `shift` along the axis (columns move right, rows move up).
    Translation { axis: Axis, shift: isize },
    /// Exchange of columns (or rows) `index` and `index + 1`.
    Commutation { axis: Axis, index: usize },
    /// Replace the marking in `row` of the given kind by a 2x2 block whose
    /// empty cell is `corner`.
    Stabilization { kind: Marking, row: usize, corner: Corner },
    /// Collapse the 2x2 block with lower-left cell `(col, row)`.
    Destabilization { col: usize, row: usize },
}

/// Applies a move, failing if it is not legal for this diagram.
pub fn apply_move(g: &GridDiagram, m: &GridMove) -> Result<GridDiagram, GridError> {
    match *m {
        GridMove::Translation { axis: Axis::Column, shift } => Ok(g.translate_columns(shift)),
        GridMove::Translation { axis: Axis::Row, shift } => Ok(g.translate_rows(shift)),
        GridMove::Commutation { axis, index } => commute(g, axis, index),
        GridMove::Stabilization { kind, row, corner } => stabilize(g, kind, row, corner),
        GridMove::Destabilization { col, row } => destabilize(g, col, row),
    }
}

fn span(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Two closed intervals with four distinct endpoints that are disjoint or nested.
fn non_interleaved(p: (usize, usize), q: (usize, usize)) -> bool {
    let ends = [p.0, p.1, q.0, q.1];
    let distinct = ends.iter().collect::<HashSet<_>>().len() == 4;
    let disjoint = p.1 < q.0 || q.1 < p.0;
    let nested = (p.0 < q.0 && q.1 < p.1) || (q.0 < p.0 && p.1 < q.1);
    distinct && (disjoint || nested)
}

fn commute(g: &GridDiagram, axis: Axis, index: usize) -> Result<GridDiagram, GridError> {
    let n = g.n();
    if index + 1 >= n {
        return Err(GridError::IllegalMove(format!("commutation index {index} out of range for n = {n}")));
    }
    match axis {
        Axis::Column => {
            let (o_rows, x_rows) = (g.o_rows(), g.x_rows());
            let a = span(o_rows[index], x_rows[index]);
            let b = span(o_rows[index + 1], x_rows[index + 1]);
            if !non_interleaved(a, b) {
                return Err(GridError::IllegalMove(format!("columns {index} and {} interleave", index + 1)));
            }
            let swap = |c: usize| {
                if c == index {
                    index + 1
                } else if c == index + 1 {
                    index
                } else {
                    c
                }
            };
            GridDiagram::new(g.o_cols().iter().map(|&c| swap(c)).collect(), g.x_cols().iter().map(|&c| swap(c)).collect())
        }
        Axis::Row => {
            let a = span(g.o_cols()[index], g.x_cols()[index]);
            let b = span(g.o_cols()[index + 1], g.x_cols()[index + 1]);
            if !non_interleaved(a, b) {
                return Err(GridError::IllegalMove(format!("rows {index} and {} interleave", index + 1)));
            }
            let mut o = g.o_cols().to_vec();
            let mut x = g.x_cols().to_vec();
            o.swap(index, index + 1);
            x.swap(index, index + 1);
            GridDiagram::new(o, x)
        }
    }
}

type Cells = Vec<(usize, usize, Marking)>;

fn cells(g: &GridDiagram) -> Cells {
    let mut out = Vec::with_capacity(2 * g.n());
    for r in 0..g.n() {
        out.push((g.o_cols()[r], r, Marking::O));
        out.push((g.x_cols()[r], r, Marking::X));
    }
    out
}

fn from_cells(n: usize, cells: &Cells) -> Result<GridDiagram, GridError> {
    let mut o = vec![usize::MAX; n];
    let mut x = vec![usize::MAX; n];
    for &(c, r, k) in cells {
        let slot = match k {
            Marking::O => &mut o[r],
            Marking::X => &mut x[r],
        };
        if *slot != usize::MAX {
            return Err(GridError::IllegalMove(format!("row {r} would carry two {k:?} markings")));
        }
        *slot = c;
    }
    if o.contains(&usize::MAX) || x.contains(&usize::MAX) {
        return Err(GridError::IllegalMove("a row lost a marking".into()));
    }
    GridDiagram::new(o, x)
}

/// The three block markings of a stabilization with the given empty corner,
/// as offsets from the lower-left block cell.
fn block_pattern(kind: Marking, corner: Corner) -> [(usize, usize, Marking); 3] {
    let (ec, er) = (corner.is_east() as usize, corner.is_north() as usize);
    let (oc, or) = (1 - ec, 1 - er);
    [(oc, or, kind.other()), (ec, or, kind), (oc, er, kind)]
}

fn stabilize(g: &GridDiagram, kind: Marking, row: usize, corner: Corner) -> Result<GridDiagram, GridError> {
    let n = g.n();
    if row >= n {
        return Err(GridError::IllegalMove(format!("row {row} out of range")));
    }
    let col = match kind {
        Marking::O => g.o_cols()[row],
        Marking::X => g.x_cols()[row],
    };
    // The original marking's row and column survive as the block row and
    // column containing the empty corner; the new ones are inserted beside them.
    let new_row = if corner.is_north() { row } else { row + 1 };
    let new_col = if corner.is_east() { col } else { col + 1 };
    let bump = |v: usize, at: usize| if v >= at { v + 1 } else { v };
    let mut out: Cells = cells(g)
        .into_iter()
        .filter(|&(c, r, k)| !(c == col && r == row && k == kind))
        .map(|(c, r, k)| (bump(c, new_col), bump(r, new_row), k))
        .collect();
    let (c0, r0) = (col, row);
    for (dc, dr, k) in block_pattern(kind, corner) {
        out.push((c0 + dc, r0 + dr, k));
    }
    from_cells(n + 1, &out)
}

/// Matches the 2x2 block at `(col, row)` against the stabilization patterns.
fn destabilization_pattern(g: &GridDiagram, col: usize, row: usize) -> Option<(Marking, Corner)> {
    let n = g.n();
    if n < 3 || col + 1 >= n || row + 1 >= n {
        return None;
    }
    let at = |dc: usize, dr: usize| g.marking_at(col + dc, row + dr);
    for kind in [Marking::O, Marking::X] {
        for corner in Corner::ALL {
            let (ec, er) = (corner.is_east() as usize, corner.is_north() as usize);
            if at(ec, er).is_none() && block_pattern(kind, corner).iter().all(|&(dc, dr, k)| at(dc, dr) == Some(k)) {
                return Some((kind, corner));
            }
        }
    }
    None
}

fn destabilize(g: &GridDiagram, col: usize, row: usize) -> Result<GridDiagram, GridError> {
    let (kind, corner) = destabilization_pattern(g, col, row)
        .ok_or_else(|| GridError::IllegalMove(format!("no destabilization block at ({col}, {row})")))?;
    let (ec, er) = (corner.is_east() as usize, corner.is_north() as usize);
    let keep = (col + ec, row + er);
    let drop_col = col + 1 - ec;
    let drop_row = row + 1 - er;
    let block: Vec<(usize, usize)> = block_pattern(kind, corner).iter().map(|&(dc, dr, _)| (col + dc, row + dr)).collect();
    let shrink = |v: usize, at: usize| if v > at { v - 1 } else { v };
    let mut out: Cells = cells(g)
        .into_iter()
        .filter(|&(c, r, _)| !block.contains(&(c, r)))
        .map(|(c, r, k)| (shrink(c, drop_col), shrink(r, drop_row), k))
        .collect();
    out.push((shrink(keep.0, drop_col), shrink(keep.1, drop_row), kind));
    from_cells(g.n() - 1, &out)
}

/// All legal commutations, in a fixed order.
pub fn legal_commutations(g: &GridDiagram) -> Vec<GridMove> {
    let mut out = Vec::new();
    for axis in [Axis::Column, Axis::Row] {
        for index in 0..g.n() - 1 {
            let m = GridMove::Commutation { axis, index };
            if apply_move(g, &m).is_ok() {
                out.push(m);
            }
        }
    }
    out
}

/// All legal destabilizations, in a fixed order.
pub fn legal_destabilizations(g: &GridDiagram) -> Vec<GridMove> {
    let mut out = Vec::new();
    for row in 0..g.n().saturating_sub(1) {
        for col in 0..g.n() - 1 {
            if destabilization_pattern(g, col, row).is_some() {
                out.push(GridMove::Destabilization { col, row });
            }
        }
    }
    out
}

/// Applies `count` randomly sampled legal moves. The sequence is a pure
/// function of the seed; grids never grow beyond `max_n`.
pub fn random_move_sequence(g: &GridDiagram, count: usize, seed: u64, max_n: usize) -> GridDiagram {
    random_move_trace(g, count, seed, max_n).0
}

/// Like [`random_move_sequence`] but also returns the moves applied.
pub fn random_move_trace(g: &GridDiagram, count: usize, seed: u64, max_n: usize) -> (GridDiagram, Vec<GridMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = g.clone();
    let mut trace = Vec::with_capacity(count);
    while trace.len() < count {
        let n = current.n();
        let candidate = match rng.gen_range(0..4) {
            0 => {
                let axis = if rng.gen() { Axis::Column } else { Axis::Row };
                Some(GridMove::Translation { axis, shift: rng.gen_range(1..n as isize) })
            }
            1 => legal_commutations(&current).choose(&mut rng).copied(),
            2 if n < max_n => {
                let kind = if rng.gen() { Marking::O } else { Marking::X };
                let corner = *Corner::ALL.choose(&mut rng).expect("four corners");
                Some(GridMove::Stabilization { kind, row: rng.gen_range(0..n), corner })
            }
            3 => legal_destabilizations(&current).choose(&mut rng).copied(),
            _ => None,
        };
        let Some(m) = candidate else { continue };
        if let Ok(next) = apply_move(&current, &m) {
            current = next;
            trace.push(m);
        }
    }
    (current, trace)
}

/// Breadth-first search over translations and commutations for a
/// destabilization; repeats until no destabilization is found within
/// `depth` moves. Returns the smallest grid reached.
pub fn simplify(g: &GridDiagram, depth: usize) -> GridDiagram {
    let mut current = g.clone();
    'outer: loop {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(current.clone());
        queue.push_back((current.clone(), 0usize));
        while let Some((h, d)) = queue.pop_front() {
            if let Some(m) = legal_destabilizations(&h).first() {
                current = apply_move(&h, m).expect("legal destabilization");
                continue 'outer;
            }
            if d == depth {
                continue;
            }
            let mut next: Vec<GridMove> = legal_commutations(&h);
            next.push(GridMove::Translation { axis: Axis::Column, shift: 1 });
            next.push(GridMove::Translation { axis: Axis::Row, shift: 1 });
            for m in next {
                let k = apply_move(&h, &m).expect("legal move");
                if seen.insert(k.clone()) {
                    queue.push_back((k, d + 1));
                }
            }
        }
        return current;
    }
}
