//! Maslov and Alexander gradings of grid states.

use std::collections::VecDeque;

use super::generators::GeneratorSet;
use super::rect::rectangles;
use super::BigradedComplex;
use crate::error::ComputeError;
use crate::grid::GridDiagram;
use crate::homology::f2_homology;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gradings {
    pub maslov: Vec<i64>,
    pub alexander: Vec<i64>,
}

impl Gradings {
    pub fn get(&self, id: usize) -> (i64, i64) {
        (self.maslov[id], self.alexander[id])
    }

    fn shifted(&self, dm: i64, da: i64) -> Gradings {
        Gradings {
            maslov: self.maslov.iter().map(|m| m + dm).collect(),
            alexander: self.alexander.iter().map(|a| a + da).collect(),
        }
    }
}

/// Gradings relative to the first state, propagated over all rectangles:
/// `M(x) - M(y) = 1 + 2 interior - 2 o_count`, `A(x) - A(y) = x_count - o_count`.
/// Every rectangle is checked against the propagated values.
pub fn relative_gradings(g: &GridDiagram, set: &GeneratorSet) -> Result<Gradings, ComputeError> {
    const UNSET: i64 = i64::MIN;
    let size = set.len();
    let mut maslov = vec![UNSET; size];
    let mut alexander = vec![UNSET; size];
    maslov[0] = 0;
    alexander[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for r in rectangles(g, set.get(x), false) {
            let m = maslov[x] - (1 + 2 * r.interior_count as i64 - 2 * r.o_count as i64);
            let a = alexander[x] - (r.x_count as i64 - r.o_count as i64);
            if maslov[r.to] == UNSET {
                maslov[r.to] = m;
                alexander[r.to] = a;
                queue.push_back(r.to);
            } else if maslov[r.to] != m || alexander[r.to] != a {
                return Err(ComputeError::InconsistentGradings);
            }
        }
    }
    if maslov.contains(&UNSET) {
        return Err(ComputeError::Invalid("rectangle graph is disconnected".into()));
    }
    Ok(Gradings { maslov, alexander })
}

/// Checks the rank profile `binom(n-1, j)` descending from the top degree and
/// returns that top degree.
fn torus_top_degree(ranks: &std::collections::BTreeMap<i64, usize>, n: usize) -> Result<i64, ComputeError> {
    let total: usize = ranks.values().sum();
    let expected = 1usize << (n - 1);
    if total != expected {
        return Err(ComputeError::TorusRankMismatch { got: total, expected });
    }
    let top = *ranks.keys().next_back().expect("nonzero total");
    let mut binom = 1usize;
    for j in 0..n {
        if ranks.get(&(top - j as i64)).copied().unwrap_or(0) != binom {
            return Err(ComputeError::TorusRankMismatch { got: total, expected });
        }
        binom = binom * (n - 1 - j) / (j + 1);
    }
    Ok(top)
}

/// Shift that puts the top of the no-O homology in degree 0.
pub fn maslov_shift(g: &GridDiagram, set: &GeneratorSet, rel: &Gradings) -> Result<i64, ComputeError> {
    let c = BigradedComplex {
        gradings: rel.maslov.iter().map(|&m| (m, 0)).collect(),
        boundary: super::build::boundary(g, set, |o, _| o == 0),
    };
    let h = f2_homology(&c)?;
    let by_degree = h.iter().map(|(&(m, _), &r)| (m, r)).collect();
    Ok(-torus_top_degree(&by_degree, g.n())?)
}

/// `sum (-1)^M q^A` over all states.
pub fn euler_polynomial(gr: &Gradings) -> LaurentPoly {
    LaurentPoly::from_terms(gr.maslov.iter().zip(&gr.alexander).map(|(&m, &a)| (a, if m.rem_euclid(2) == 0 { 1 } else { -1 })))
}

/// `(1 - q^-1)^(n-1) * delta`.
pub fn euler_target(n: usize, delta: &LaurentPoly) -> LaurentPoly {
    &LaurentPoly::from_coeffs(-1, &[-1, 1]).pow(n as u32 - 1) * delta
}

/// Absolute gradings of a knot grid, given its Alexander polynomial.
pub fn assign_gradings(g: &GridDiagram, set: &GeneratorSet, delta: &LaurentPoly) -> Result<Gradings, ComputeError> {
    let comps = g.link_components().count;
    if comps != 1 {
        return Err(ComputeError::LinkNotSupported(comps));
    }
    let rel = relative_gradings(g, set)?;
    let dm = maslov_shift(g, set, &rel)?;
    let with_m = rel.shifted(dm, 0);
    let chain = euler_polynomial(&with_m);
    let target = euler_target(g.n(), delta);
    let (Some(lo), Some(t_lo)) = (chain.min_exp(), target.min_exp()) else {
        return Err(ComputeError::NoAlexanderShift);
    };
    let da = t_lo - lo;
    if chain.shift(da) != target {
        return Err(ComputeError::NoAlexanderShift);
    }
    Ok(with_m.shifted(0, da))
}
