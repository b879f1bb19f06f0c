//! Grid diagrams: an `n x n` toroidal grid with one O and one X marking in
//! every row and every column.
//!
//! Rows are indexed bottom-to-top and columns left-to-right, both from 0.
//! Row `r` carries its O in column `o_cols[r]` and its X in column `x_cols[r]`.
//! The link is traced O -> X along rows and X -> O along columns, with
//! vertical strands passing over horizontal ones.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GridError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    o_cols: Vec<usize>,
    x_cols: Vec<usize>,
}

/// Marking type in a grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Marking {
    O,
    X,
}

impl Marking {
    pub fn other(self) -> Marking {
        match self {
            Marking::O => Marking::X,
            Marking::X => Marking::O,
        }
    }
}

/// Component decomposition of the link drawn by a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// Component id of the O and X markings of each row (they share a
    /// horizontal segment, hence a component).
    pub of_row: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GridDocument {
    n: usize,
    #[serde(rename = "O")]
    o: Vec<usize>,
    #[serde(rename = "X")]
    x: Vec<usize>,
}

impl GridDiagram {
    pub fn new(o_cols: Vec<usize>, x_cols: Vec<usize>) -> Result<Self, GridError> {
        let n = o_cols.len();
        if x_cols.len() != n {
            return Err(GridError::LengthMismatch { which: "X", got: x_cols.len(), n });
        }
        if n < 2 {
            return Err(GridError::TooSmall(n));
        }
        check_permutation(&o_cols, "O")?;
        check_permutation(&x_cols, "X")?;
        if let Some(row) = (0..n).find(|&r| o_cols[r] == x_cols[r]) {
            return Err(GridError::CoincidentMarkings { row, col: o_cols[row] });
        }
        Ok(GridDiagram { o_cols, x_cols })
    }

    /// The canonical 2x2 unknot.
    pub fn unknot() -> Self {
        GridDiagram { o_cols: vec![0, 1], x_cols: vec![1, 0] }
    }

    /// The 5x5 grid with O on the diagonal and X shifted two columns right.
    pub fn trefoil() -> Self {
        GridDiagram { o_cols: vec![0, 1, 2, 3, 4], x_cols: vec![2, 3, 4, 0, 1] }
    }

    /// A 6x6 figure-eight grid (four crossings, signs + - + -).
    pub fn figure_eight() -> Self {
        GridDiagram { o_cols: vec![0, 2, 1, 4, 3, 5], x_cols: vec![4, 5, 3, 2, 0, 1] }
    }

    pub fn n(&self) -> usize {
        self.o_cols.len()
    }

    pub fn o_cols(&self) -> &[usize] {
        &self.o_cols
    }

    pub fn x_cols(&self) -> &[usize] {
        &self.x_cols
    }

    /// Row of the O marking in each column.
    pub fn o_rows(&self) -> Vec<usize> {
        invert(&self.o_cols)
    }

    /// Row of the X marking in each column.
    pub fn x_rows(&self) -> Vec<usize> {
        invert(&self.x_cols)
    }

    pub fn marking_at(&self, col: usize, row: usize) -> Option<Marking> {
        if self.o_cols[row] == col {
            Some(Marking::O)
        } else if self.x_cols[row] == col {
            Some(Marking::X)
        } else {
            None
        }
    }

    /// Traces O -> X row segments and X -> O column segments into cycles.
    pub fn link_components(&self) -> Components {
        let n = self.n();
        let o_rows = self.o_rows();
        let mut of_row = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if of_row[start] != usize::MAX {
                continue;
            }
            let mut r = start;
            while of_row[r] == usize::MAX {
                of_row[r] = count;
                r = o_rows[self.x_cols[r]];
            }
            count += 1;
        }
        Components { count, of_row }
    }

    pub fn is_knot(&self) -> bool {
        self.link_components().count == 1
    }

    pub fn require_knot(&self) -> Result<(), GridError> {
        match self.link_components().count {
            1 => Ok(()),
            l => Err(GridError::NotAKnot(l)),
        }
    }

    /// Reflection in a vertical line: column `c` goes to `n - 1 - c`.
    pub fn mirror(&self) -> GridDiagram {
        let n = self.n();
        GridDiagram {
            o_cols: self.o_cols.iter().map(|&c| n - 1 - c).collect(),
            x_cols: self.x_cols.iter().map(|&c| n - 1 - c).collect(),
        }
    }

    /// Cyclic shift of all columns by `k` to the right.
    pub fn translate_columns(&self, k: isize) -> GridDiagram {
        let n = self.n() as isize;
        let shift = |c: usize| (c as isize + k).rem_euclid(n) as usize;
        GridDiagram {
            o_cols: self.o_cols.iter().map(|&c| shift(c)).collect(),
            x_cols: self.x_cols.iter().map(|&c| shift(c)).collect(),
        }
    }

    /// Cyclic shift of all rows by `k` upwards.
    pub fn translate_rows(&self, k: isize) -> GridDiagram {
        let n = self.n() as isize;
        let mut o_cols = vec![0; self.n()];
        let mut x_cols = vec![0; self.n()];
        for r in 0..self.n() {
            let to = (r as isize + k).rem_euclid(n) as usize;
            o_cols[to] = self.o_cols[r];
            x_cols[to] = self.x_cols[r];
        }
        GridDiagram { o_cols, x_cols }
    }

    /// Connected sum: `other` is placed to the upper right of `self` and the
    /// X markings of the two rows meeting at the junction trade columns.
    /// That swap is a band move along a band no other strand crosses.
    pub fn connected_sum(&self, other: &GridDiagram) -> Result<GridDiagram, GridError> {
        self.require_knot()?;
        other.require_knot()?;
        let n1 = self.n();
        let mut o_cols = self.o_cols.clone();
        let mut x_cols = self.x_cols.clone();
        o_cols.extend(other.o_cols.iter().map(|&c| c + n1));
        x_cols.extend(other.x_cols.iter().map(|&c| c + n1));
        x_cols.swap(n1 - 1, n1);
        GridDiagram::new(o_cols, x_cols)
    }

    pub fn to_text(&self) -> String {
        format!("n={}; O={}; X={}", self.n(), list(&self.o_cols), list(&self.x_cols))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GridDocument { n: self.n(), o: self.o_cols.clone(), x: self.x_cols.clone() })
            .expect("grid serializes")
    }

    /// Reads either the text form `n=..; O=[..]; X=[..]` or the structured
    /// form `{"n": .., "O": [..], "X": [..]}`.
    pub fn parse(input: &str) -> Result<GridDiagram, GridError> {
        let trimmed = strip_comments(input);
        let trimmed = trimmed.trim();
        if trimmed.starts_with('{') {
            let doc: GridDocument =
                serde_json::from_str(trimmed).map_err(|e| GridError::Syntax(e.to_string()))?;
            return from_parts(Some(doc.n), Some(doc.o), Some(doc.x));
        }
        let mut n = None;
        let mut o = None;
        let mut x = None;
        for field in trimmed.split(|c| c == ';' || c == '\n').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| GridError::Syntax(format!("expected key=value, got {field:?}")))?;
            match key.trim() {
                "n" => {
                    n = Some(value.trim().parse().map_err(|_| GridError::Syntax(format!("bad size {value:?}")))?)
                }
                "O" | "o" => o = Some(parse_list(value)?),
                "X" | "x" => x = Some(parse_list(value)?),
                other => return Err(GridError::Syntax(format!("unknown key {other:?}"))),
            }
        }
        from_parts(n, o, x)
    }
}

impl FromStr for GridDiagram {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GridDiagram::parse(s)
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn from_parts(n: Option<usize>, o: Option<Vec<usize>>, x: Option<Vec<usize>>) -> Result<GridDiagram, GridError> {
    let o = o.ok_or_else(|| GridError::Syntax("missing O".into()))?;
    let x = x.ok_or_else(|| GridError::Syntax("missing X".into()))?;
    let n = n.unwrap_or(o.len());
    if n < 2 {
        return Err(GridError::TooSmall(n));
    }
    if o.len() != n {
        return Err(GridError::LengthMismatch { which: "O", got: o.len(), n });
    }
    if x.len() != n {
        return Err(GridError::LengthMismatch { which: "X", got: x.len(), n });
    }
    GridDiagram::new(o, x)
}

fn strip_comments(input: &str) -> String {
    input.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n")
}

fn parse_list(value: &str) -> Result<Vec<usize>, GridError> {
    let v = value.trim();
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| GridError::Syntax(format!("expected [..], got {v:?}")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| GridError::Syntax(format!("bad column {s:?}"))))
        .collect()
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn check_permutation(cols: &[usize], which: &'static str) -> Result<(), GridError> {
    let n = cols.len();
    let mut seen = vec![false; n];
    for &c in cols {
        if c >= n || seen[c] {
            return Err(GridError::NotPermutation { which, n });
        }
        seen[c] = true;
    }
    Ok(())
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}
