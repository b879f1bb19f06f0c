//! Differentials counting empty rectangles, reduced mod 2 per label.

use rayon::prelude::*;

use super::generators::GeneratorSet;
use super::rect::rectangles;
use crate::grid::GridDiagram;
use crate::homology::f2::reduce_mod2;

/// Arrows `(target, o_count, x_count)` from each state, keeping the empty
/// rectangles whose `(o_count, x_count)` passes `keep`. Rectangles with the
/// same target and label cancel in pairs.
pub fn labeled_boundary<F>(g: &GridDiagram, set: &GeneratorSet, keep: F) -> Vec<Vec<(u32, u8, u8)>>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    (0..set.len())
        .into_par_iter()
        .map(|x| {
            let mut arrows: Vec<(u32, u8, u8)> = rectangles(g, set.get(x), true)
                .into_iter()
                .filter(|r| keep(r.o_count, r.x_count))
                .map(|r| (r.to as u32, r.o_count as u8, r.x_count as u8))
                .collect();
            arrows.sort_unstable();
            let mut out: Vec<(u32, u8, u8)> = Vec::with_capacity(arrows.len());
            for a in arrows {
                if out.last() == Some(&a) {
                    out.pop();
                } else {
                    out.push(a);
                }
            }
            out
        })
        .collect()
}

/// Unlabeled version of [`labeled_boundary`]; arrows to the same target
/// cancel in pairs regardless of label.
pub fn boundary<F>(g: &GridDiagram, set: &GeneratorSet, keep: F) -> Vec<Vec<u32>>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    labeled_boundary(g, set, keep).into_iter().map(|v| reduce_mod2(v.into_iter().map(|(y, _, _)| y).collect())).collect()
}
