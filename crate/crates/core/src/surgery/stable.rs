//! Stable complexes `A_s`, the quotient `B`, and their homology.
//!
//! An element `[x, i]` of the full complex has `j = i + A(x)`; an arrow with
//! labels `(nw, nz)` sends it to `[y, i - nw]`. Each piece assigns a level:
//! `max(i, j - s)` on `A_s` and `i` on `B`. The differential never raises the
//! level and `U` lowers it by one, so a piece is the free `F2[U]` complex on
//! its level-0 elements, and the plus flavor truncated at `N` is spanned by
//! the elements of level `0..=N`.

use serde::Serialize;

use super::model::ModelComplex;
use crate::complex::{BigradedComplex, UModuleComplex};
use crate::error::{ComputeError, ModelError};
use crate::homology::f2::reduce_mod2;
use crate::homology::{f2_homology, fu_module_homology, total_rank, UModuleSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Hat,
    Plus,
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hat" => Ok(Flavor::Hat),
            "plus" => Ok(Flavor::Plus),
            other => Err(format!("unknown flavor {other:?}; expected hat or plus")),
        }
    }
}

/// Default bound on the truncation level searched for stabilization.
pub const DEFAULT_CUTOFF: i64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PieceKind {
    A,
    B,
}

/// One copy of `A_s` or `B_s` with a Maslov shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub s: i64,
    pub shift: i64,
}

impl Piece {
    fn level(&self, m: &ModelComplex, x: usize, i: i64) -> i64 {
        match self.kind {
            PieceKind::A => i.max(i + m.alexander[x] - self.s),
            PieceKind::B => i,
        }
    }

    /// `i` of the level-0 element over `x`.
    fn base(&self, m: &ModelComplex, x: usize) -> i64 {
        match self.kind {
            PieceKind::A => -(m.alexander[x] - self.s).max(0),
            PieceKind::B => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    /// `[x, i] -> [x, i]`.
    V,
    /// `[x, i, j] -> [flip x, j - s]`.
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConeMap {
    pub kind: MapKind,
    pub from: usize,
    pub to: usize,
}

/// Free `F2[U]` complex on `(piece, x)`, plus the `i` of each generator.
pub(crate) struct FreeComplex {
    pub gens: Vec<(usize, usize, i64)>,
    pub complex: UModuleComplex,
}

pub(crate) fn free_complex(m: &ModelComplex, pieces: &[Piece], maps: &[ConeMap]) -> FreeComplex {
    let size = m.len();
    let index = |piece: usize, x: usize| (piece * size + x) as u32;
    let mut gens = Vec::with_capacity(pieces.len() * size);
    let mut gradings = Vec::with_capacity(pieces.len() * size);
    for (p, piece) in pieces.iter().enumerate() {
        for x in 0..size {
            let i = piece.base(m, x);
            gens.push((p, x, i));
            gradings.push((m.maslov[x] + 2 * i + piece.shift, 0));
        }
    }
    let from = m.arrows_from();
    let mut boundary: Vec<Vec<(u32, u32)>> = vec![Vec::new(); gens.len()];
    for (p, piece) in pieces.iter().enumerate() {
        for x in 0..size {
            let i = piece.base(m, x);
            let out = &mut boundary[index(p, x) as usize];
            for a in &from[x] {
                let level = piece.level(m, a.to, i - a.nw as i64);
                out.push((index(p, a.to), (-level) as u32));
            }
        }
    }
    for map in maps {
        let src = &pieces[map.from];
        for x in 0..size {
            let i = src.base(m, x);
            let (y, level) = match map.kind {
                MapKind::V => (x, i),
                MapKind::H => (m.flip[x], i + m.alexander[x] - src.s),
            };
            boundary[index(map.from, x) as usize].push((index(map.to, y), (-level) as u32));
        }
    }
    for out in &mut boundary {
        out.sort_unstable();
        let mut kept: Vec<(u32, u32)> = Vec::with_capacity(out.len());
        for &a in out.iter() {
            if kept.last() == Some(&a) {
                kept.pop();
            } else {
                kept.push(a);
            }
        }
        *out = kept;
    }
    FreeComplex { gens, complex: UModuleComplex { gradings, boundary } }
}

/// Elements `U^-t g` for `t = 0..=n`, graded by Maslov only.
pub(crate) fn truncate(free: &UModuleComplex, n: i64) -> BigradedComplex {
    let levels = (n + 1) as usize;
    let mut gradings = Vec::with_capacity(free.gradings.len() * levels);
    let mut boundary = Vec::with_capacity(free.gradings.len() * levels);
    for (g, targets) in free.boundary.iter().enumerate() {
        for t in 0..levels {
            gradings.push((free.gradings[g].0 + 2 * t as i64, 0));
            let row = targets
                .iter()
                .filter(|&&(_, k)| k as usize <= t)
                .map(|&(h, k)| (h as usize * levels + t - k as usize) as u32)
                .collect();
            boundary.push(reduce_mod2(row));
        }
    }
    BigradedComplex { gradings, boundary }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlusSummary {
    pub towers: usize,
    /// Total rank of the finite part.
    pub finite_rank: u64,
    /// Orders `k` of the summands `F2[U]/U^k`, sorted.
    pub torsion_orders: Vec<u32>,
    /// Truncation level at which the ranks were read off.
    pub cutoff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub hat_rank: usize,
    pub plus: Option<PlusSummary>,
}

impl HomologySummary {
    pub fn is_acyclic(&self) -> bool {
        self.hat_rank == 0 && self.plus.as_ref().is_none_or(|p| p.towers == 0 && p.finite_rank == 0)
    }
}

fn truncated_total(free: &UModuleComplex, n: i64) -> Result<usize, ComputeError> {
    Ok(total_rank(&f2_homology(&truncate(free, n))?))
}

/// Reads towers and finite rank from truncations at growing `N`:
/// `total(N) = towers (N + 1) + 2 sum_k min(k, N + 1)`. Stops once the estimates
/// agree over `window` consecutive levels.
pub(crate) fn stabilize(free: &UModuleComplex, window: i64, cutoff: i64) -> Result<(usize, u64, i64), ModelError> {
    let mut totals = vec![truncated_total(free, 0)?, truncated_total(free, 1)?];
    let mut history: Vec<(usize, u64)> = Vec::new();
    let mut n = 0i64;
    loop {
        let (cur, next) = (totals[n as usize], totals[n as usize + 1]);
        let towers = next.checked_sub(cur).ok_or_else(|| ComputeError::Invalid("truncated ranks decreased".into()))?;
        let finite = cur
            .checked_sub(towers * (n as usize + 1))
            .filter(|f| f % 2 == 0)
            .ok_or_else(|| ComputeError::Invalid("truncated ranks are inconsistent".into()))?;
        history.push((towers, (finite / 2) as u64));
        let tail = &history[history.len().saturating_sub(window as usize + 1)..];
        if tail.len() as i64 == window + 1 && tail.iter().all(|e| *e == tail[0]) {
            return Ok((towers, (finite / 2) as u64, n));
        }
        n += 1;
        if n > cutoff {
            return Err(ModelError::NoStabilization(cutoff));
        }
        totals.push(truncated_total(free, n + 1)?);
    }
}

/// Hat rank, and for the plus flavor the stabilized truncation cross-checked
/// against the exact `F2[U]` module structure.
pub(crate) fn summarize(free: &UModuleComplex, flavor: Flavor, window: i64, cutoff: i64) -> Result<HomologySummary, ModelError> {
    let hat_rank = truncated_total(free, 0)?;
    if flavor == Flavor::Hat {
        return Ok(HomologySummary { hat_rank, plus: None });
    }
    let exact: UModuleSummary = fu_module_homology(free)?;
    let (towers, finite_rank, n) = stabilize(free, window, cutoff)?;
    let torsion_orders: Vec<u32> = {
        let mut v: Vec<u32> = exact.torsions.iter().map(|&(_, k)| k).collect();
        v.sort_unstable();
        v
    };
    let exact_finite: u64 = torsion_orders.iter().map(|&k| k as u64).sum();
    if towers != exact.towers.len() || finite_rank != exact_finite || hat_rank != towers + 2 * torsion_orders.len() {
        return Err(ComputeError::Invalid(format!(
            "truncated ranks ({towers} towers, finite {finite_rank}, hat {hat_rank}) disagree with the module structure ({} towers, {:?})",
            exact.towers.len(),
            torsion_orders
        ))
        .into());
    }
    Ok(HomologySummary { hat_rank, plus: Some(PlusSummary { towers, finite_rank, torsion_orders, cutoff: n }) })
}

pub(crate) fn window(m: &ModelComplex) -> i64 {
    (2 * m.maslov_spread()).max(1)
}

/// Element `[x, i, j]` of a stable complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StableElement {
    pub generator: usize,
    pub i: i64,
    pub j: i64,
}

/// `A_s` restricted to levels `0..=cutoff` (hat: level 0 only).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableComplex {
    pub s: i64,
    pub flavor: Flavor,
    pub cutoff: i64,
    pub elements: Vec<StableElement>,
    pub maslov: Vec<i64>,
    pub boundary: Vec<Vec<u32>>,
}

impl StableComplex {
    pub fn homology_rank(&self) -> Result<usize, ComputeError> {
        let c = BigradedComplex { gradings: self.maslov.iter().map(|&m| (m, 0)).collect(), boundary: self.boundary.clone() };
        Ok(total_rank(&f2_homology(&c)?))
    }
}

fn stable_piece(s: i64) -> Piece {
    Piece { kind: PieceKind::A, s, shift: 0 }
}

pub fn stable_complex(m: &ModelComplex, s: i64, flavor: Flavor, cutoff: i64) -> StableComplex {
    let n = if flavor == Flavor::Hat { 0 } else { cutoff.max(0) };
    let free = free_complex(m, &[stable_piece(s)], &[]);
    let t = truncate(&free.complex, n);
    let levels = (n + 1) as usize;
    let elements = (0..t.gradings.len())
        .map(|e| {
            let (_, x, i0) = free.gens[e / levels];
            let i = i0 + (e % levels) as i64;
            StableElement { generator: x, i, j: i + m.alexander[x] }
        })
        .collect();
    StableComplex { s, flavor, cutoff: n, elements, maslov: t.gradings.iter().map(|g| g.0).collect(), boundary: t.boundary }
}

/// Homology of `A_s`, which computes the large surgery in class `[s]`.
pub fn large_surgery(m: &ModelComplex, s: i64, flavor: Flavor, cutoff: i64) -> Result<HomologySummary, ModelError> {
    let free = free_complex(m, &[stable_piece(s)], &[]);
    summarize(&free.complex, flavor, window(m), cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::model::{trefoil_left_model, unknot_model};

    #[test]
    fn trefoil_stable_complexes() {
        let m = trefoil_left_model();
        let a0 = large_surgery(&m, 0, Flavor::Plus, DEFAULT_CUTOFF).unwrap();
        assert_eq!(a0.hat_rank, 3);
        let plus = a0.plus.unwrap();
        assert_eq!((plus.towers, plus.finite_rank, plus.torsion_orders), (1, 1, vec![1]));
        for s in [-3, -2, -1, 1, 2, 3] {
            let a = large_surgery(&m, s, Flavor::Plus, DEFAULT_CUTOFF).unwrap();
            assert_eq!(a.hat_rank, 1, "s = {s}");
            assert_eq!(a.plus.unwrap().towers, 1);
        }
        assert_eq!(large_surgery(&m, 1, Flavor::Hat, 0).unwrap().plus, None);
    }

    #[test]
    fn region_of_a1() {
        let m = trefoil_left_model();
        let c = stable_complex(&m, 1, Flavor::Plus, 2);
        for e in &c.elements {
            let level = e.i.max(e.j - 1);
            assert!((0..=2).contains(&level));
        }
        // levels 0..=2 over three generators
        assert_eq!(c.elements.len(), 9);
        assert_eq!(c.homology_rank().unwrap(), 3);
        let hat = stable_complex(&unknot_model(), 5, Flavor::Hat, 10);
        assert_eq!(hat.elements, vec![StableElement { generator: 0, i: 0, j: 0 }]);
    }

    #[test]
    fn unknot_is_one_tower() {
        for s in -2..=2 {
            let a = large_surgery(&unknot_model(), s, Flavor::Plus, DEFAULT_CUTOFF).unwrap();
            assert_eq!(a.plus.unwrap().towers, 1);
            assert_eq!(a.hat_rank, 1);
        }
    }

    #[test]
    fn cutoff_too_small_is_reported() {
        let m = trefoil_left_model();
        assert!(matches!(large_surgery(&m, 0, Flavor::Plus, 1), Err(ModelError::NoStabilization(1))));
    }
}
