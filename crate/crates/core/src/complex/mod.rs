//! Grid chain complexes over the two-element field.
//!
//! States are permutations `perm[col] = row`, identified with their rank in
//! lexicographic order. Arrows are empty rectangles; the flavor decides which
//! markings a rectangle may cover:
//!
//! | flavor  | allowed rectangles           | coefficient      |
//! |---------|------------------------------|------------------|
//! | tilde   | no O, no X                   | 1                |
//! | no-O    | no O                         | 1                |
//! | minus   | no X                         | `U^o_count`      |
//! | full    | any                          | `(o_count, x_count)` label |

pub mod build;
pub mod generators;
pub mod gradings;
pub mod rect;

use serde::{Deserialize, Serialize};

pub use generators::{GeneratorSet, DEFAULT_CAP};
pub use gradings::{assign_gradings, euler_polynomial, euler_target, relative_gradings, Gradings};
pub use rect::{rectangles, Rect};

use crate::alexander::grid_alexander;
use crate::error::ComputeError;
use crate::grid::GridDiagram;
use crate::laurent::LaurentPoly;

/// Generators with bigradings `(M, A)` and a differential over F2 given as
/// sorted target lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedComplex {
    pub gradings: Vec<(i64, i64)>,
    pub boundary: Vec<Vec<u32>>,
}

/// Free complex over F2[U]; arrows are `(target, U-exponent)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UModuleComplex {
    pub gradings: Vec<(i64, i64)>,
    pub boundary: Vec<Vec<(u32, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGenerator {
    pub id: usize,
    pub perm: Vec<u8>,
    #[serde(rename = "M")]
    pub maslov: i64,
    #[serde(rename = "A")]
    pub alexander: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledArrow {
    pub from: usize,
    pub to: usize,
    pub o_count: u8,
    pub x_count: u8,
}

/// Export form of the full complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledComplex {
    pub n: usize,
    pub generators: Vec<LabeledGenerator>,
    pub arrows: Vec<LabeledArrow>,
}

impl LabeledComplex {
    /// Nonzero terms of `d o d` with labels added, reduced mod 2.
    pub fn square_defect(&self) -> usize {
        let mut out: Vec<Vec<(usize, u8, u8)>> = vec![Vec::new(); self.generators.len()];
        for a in &self.arrows {
            out[a.from].push((a.to, a.o_count, a.x_count));
        }
        let mut defect = 0;
        for x in 0..out.len() {
            let mut terms: Vec<(usize, u8, u8)> = out[x]
                .iter()
                .flat_map(|&(y, o1, x1)| out[y].iter().map(move |&(z, o2, x2)| (z, o1 + o2, x1 + x2)))
                .collect();
            terms.sort_unstable();
            let mut i = 0;
            while i < terms.len() {
                let j = terms[i..].iter().position(|t| *t != terms[i]).map_or(terms.len(), |k| i + k);
                defect += (j - i) % 2;
                i = j;
            }
        }
        defect
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// A grid together with its states and their gradings.
#[derive(Debug, Clone)]
pub struct GridComplex {
    pub grid: GridDiagram,
    pub generators: GeneratorSet,
    pub gradings: Gradings,
    /// Alexander polynomial used for the normalization; `None` for links,
    /// whose gradings are relative to the first state.
    pub delta: Option<LaurentPoly>,
}

impl GridComplex {
    /// Absolutely graded complex of a knot grid.
    pub fn new(grid: &GridDiagram, cap: usize) -> Result<Self, ComputeError> {
        let comps = grid.link_components().count;
        if comps != 1 {
            return Err(ComputeError::LinkNotSupported(comps));
        }
        let delta = grid_alexander(grid)?;
        let generators = GeneratorSet::enumerate(grid.n(), cap)?;
        let gradings = assign_gradings(grid, &generators, &delta)?;
        Ok(GridComplex { grid: grid.clone(), generators, gradings, delta: Some(delta) })
    }

    /// Relatively graded complex of any grid, knot or link.
    pub fn relative(grid: &GridDiagram, cap: usize) -> Result<Self, ComputeError> {
        let generators = GeneratorSet::enumerate(grid.n(), cap)?;
        let gradings = relative_gradings(grid, &generators)?;
        Ok(GridComplex { grid: grid.clone(), generators, gradings, delta: None })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn bigradings(&self) -> Vec<(i64, i64)> {
        (0..self.len()).map(|i| self.gradings.get(i)).collect()
    }

    /// Empty rectangles avoiding every marking.
    pub fn tilde(&self) -> BigradedComplex {
        BigradedComplex { gradings: self.bigradings(), boundary: build::boundary(&self.grid, &self.generators, |o, x| o == 0 && x == 0) }
    }

    /// Empty rectangles avoiding the O markings, graded by `M` only (`A` is
    /// reported as 0).
    pub fn no_o(&self) -> BigradedComplex {
        BigradedComplex {
            gradings: self.gradings.maslov.iter().map(|&m| (m, 0)).collect(),
            boundary: build::boundary(&self.grid, &self.generators, |o, _| o == 0),
        }
    }

    /// Empty rectangles avoiding the X markings, weighted by `U^o_count`.
    pub fn minus(&self) -> UModuleComplex {
        let boundary = build::labeled_boundary(&self.grid, &self.generators, |_, x| x == 0)
            .into_iter()
            .map(|v| v.into_iter().map(|(y, o, _)| (y, o as u32)).collect())
            .collect();
        UModuleComplex { gradings: self.bigradings(), boundary }
    }

    /// All empty rectangles with their marking counts.
    pub fn full(&self) -> LabeledComplex {
        let boundary = build::labeled_boundary(&self.grid, &self.generators, |_, _| true);
        let generators = (0..self.len())
            .map(|id| LabeledGenerator {
                id,
                perm: self.generators.get(id).to_vec(),
                maslov: self.gradings.maslov[id],
                alexander: self.gradings.alexander[id],
            })
            .collect();
        let arrows = boundary
            .into_iter()
            .enumerate()
            .flat_map(|(from, v)| v.into_iter().map(move |(to, o, x)| LabeledArrow { from, to: to as usize, o_count: o, x_count: x }))
            .collect();
        LabeledComplex { n: self.grid.n(), generators, arrows }
    }
}
