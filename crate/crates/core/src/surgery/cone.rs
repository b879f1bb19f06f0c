//! The integer surgery mapping cone: `A_s` maps to `B_s` by `v` and to
//! `B_(s+p)` by `h`, truncated to a finite window and split by Spin^c class
//! `s mod |p|`.

use rayon::prelude::*;
use serde::Serialize;

use super::model::ModelComplex;
use super::stable::{free_complex, summarize, window, ConeMap, Flavor, HomologySummary, MapKind, Piece, PieceKind};
use crate::error::ModelError;

/// Pieces and maps of one Spin^c class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeClass {
    pub class: i64,
    pub pieces: Vec<Piece>,
    pub maps: Vec<ConeMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryCone {
    pub p: i64,
    pub flavor: Flavor,
    pub s_max: i64,
    pub cutoff: i64,
    pub classes: Vec<ConeClass>,
    #[serde(skip)]
    pub model: ModelComplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassHomology {
    pub class: i64,
    #[serde(flatten)]
    pub summary: HomologySummary,
}

/// Maslov shift of `A_s` relative to the lowest `A` in the class; `B_s`
/// sits one below `A_s`, making `v` and `h` both of degree `-1`.
fn a_shifts(p: i64, lo: i64, hi: i64, class: i64) -> Vec<(i64, i64)> {
    let step = p.abs();
    let first = lo + (class - lo).rem_euclid(step);
    let mut out = Vec::new();
    let mut c = 0i64;
    let mut s = first;
    while s <= hi {
        out.push((s, c));
        c += if p > 0 { 2 * s } else { -2 * (s + step) };
        s += step;
    }
    out
}

fn build_class(p: i64, b: i64, class: i64) -> ConeClass {
    let lo = (-b).min(-b + p);
    let shifts = a_shifts(p, lo, b, class);
    let mut pieces = Vec::new();
    let mut a_index = std::collections::BTreeMap::new();
    let mut b_index = std::collections::BTreeMap::new();
    for &(s, c) in &shifts {
        if (-b..=b).contains(&s) {
            a_index.insert(s, pieces.len());
            pieces.push(Piece { kind: PieceKind::A, s, shift: c });
        }
    }
    for &(s, c) in &shifts {
        if (-b + p..=b).contains(&s) {
            b_index.insert(s, pieces.len());
            pieces.push(Piece { kind: PieceKind::B, s, shift: c - 1 });
        }
    }
    let mut maps = Vec::new();
    for (&s, &from) in &a_index {
        if let Some(&to) = b_index.get(&s) {
            maps.push(ConeMap { kind: MapKind::V, from, to });
        }
        if let Some(&to) = b_index.get(&(s + p)) {
            maps.push(ConeMap { kind: MapKind::H, from, to });
        }
    }
    ConeClass { class, pieces, maps }
}

/// Cone restricted to `A_s`, `|s| <= s_max`, and `B_s`, `-s_max + p <= s <= s_max`.
/// Requires `s_max >= max|A| + |p|` and checks that the first omitted `v` and
/// `h` are quasi-isomorphisms.
pub fn surgery_cone(m: &ModelComplex, p: i64, flavor: Flavor, s_max: i64, cutoff: i64) -> Result<SurgeryCone, ModelError> {
    if p == 0 {
        return Err(ModelError::ZeroFraming);
    }
    let required = m.max_abs_alexander() + p.abs();
    if s_max < required {
        return Err(ModelError::RadiusTooSmall { got: s_max, required });
    }
    for (kind, s) in [(MapKind::V, s_max + 1), (MapKind::H, -s_max - 1)] {
        if !map_cone_homology(m, kind, s, p, cutoff)?.is_acyclic() {
            return Err(ModelError::TruncationCheck(format!("{kind:?} from A_{s} is not a quasi-isomorphism")));
        }
    }
    Ok(unchecked_cone(m, p, flavor, s_max, cutoff))
}

/// Homology of the cone of `v_s: A_s -> B_s` or `h_s: A_s -> B_(s+p)`; it
/// vanishes exactly when the map is a quasi-isomorphism.
pub fn map_cone_homology(m: &ModelComplex, kind: MapKind, s: i64, p: i64, cutoff: i64) -> Result<HomologySummary, ModelError> {
    let (t, shift) = match kind {
        MapKind::V => (s, -1),
        MapKind::H => (s + p, 2 * s - 1),
    };
    let pieces = [Piece { kind: PieceKind::A, s, shift: 0 }, Piece { kind: PieceKind::B, s: t, shift }];
    let free = free_complex(m, &pieces, &[ConeMap { kind, from: 0, to: 1 }]);
    summarize(&free.complex, Flavor::Plus, window(m), cutoff)
}

pub(crate) fn unchecked_cone(m: &ModelComplex, p: i64, flavor: Flavor, s_max: i64, cutoff: i64) -> SurgeryCone {
    let classes = (0..p.abs()).map(|i| build_class(p, s_max, i)).collect();
    SurgeryCone { p, flavor, s_max, cutoff, classes, model: m.clone() }
}

/// Homology of each Spin^c class, in class order.
pub fn surgery_homology(cone: &SurgeryCone) -> Result<Vec<ClassHomology>, ModelError> {
    let w = window(&cone.model);
    cone.classes
        .par_iter()
        .map(|c| {
            let free = free_complex(&cone.model, &c.pieces, &c.maps);
            Ok(ClassHomology { class: c.class, summary: summarize(&free.complex, cone.flavor, w, cone.cutoff)? })
        })
        .collect()
}

/// Index of the class containing `s`.
pub fn class_of(s: i64, p: i64) -> i64 {
    s.rem_euclid(p.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::model::{trefoil_left_model, trefoil_right_model, unknot_model};
    use crate::surgery::stable::{large_surgery, DEFAULT_CUTOFF};

    fn plus(m: &ModelComplex, p: i64, s_max: i64) -> Vec<ClassHomology> {
        surgery_homology(&surgery_cone(m, p, Flavor::Plus, s_max, DEFAULT_CUTOFF).unwrap()).unwrap()
    }

    fn shape(h: &ClassHomology) -> (usize, u64) {
        let p = h.summary.plus.as_ref().unwrap();
        (p.towers, p.finite_rank)
    }

    #[test]
    fn plus_and_minus_one_on_left_trefoil() {
        let m = trefoil_left_model();
        let one = plus(&m, 1, 2);
        assert_eq!(one.len(), 1);
        assert_eq!(shape(&one[0]), (1, 1));
        assert_eq!(one[0].summary.hat_rank, 3);
        let minus = plus(&m, -1, 2);
        assert_eq!(shape(&minus[0]), (1, 0));
        assert_eq!(minus[0].summary.hat_rank, 1);
        assert_eq!(plus(&m, 1, 3), one);
        assert_eq!(plus(&m, -1, 3), minus);
    }

    #[test]
    fn minus_one_middle_pieces_suffice() {
        let m = trefoil_left_model();
        let cone = unchecked_cone(&m, -1, Flavor::Plus, 0, DEFAULT_CUTOFF);
        let kinds: Vec<(PieceKind, i64)> = cone.classes[0].pieces.iter().map(|p| (p.kind, p.s)).collect();
        assert_eq!(kinds, vec![(PieceKind::A, 0), (PieceKind::B, -1), (PieceKind::B, 0)]);
        assert_eq!(surgery_homology(&cone).unwrap(), plus(&m, -1, 2));
    }

    #[test]
    fn right_trefoil_mirrors() {
        let m = trefoil_right_model();
        assert_eq!(shape(&plus(&m, 1, 2)[0]), (1, 0));
        assert_eq!(shape(&plus(&m, -1, 2)[0]), (1, 1));
    }

    #[test]
    fn lens_spaces() {
        for p in [2i64, 5, -3] {
            let h = plus(&unknot_model(), p, p.abs());
            assert_eq!(h.len(), p.unsigned_abs() as usize);
            assert!(h.iter().all(|c| shape(c) == (1, 0) && c.summary.hat_rank == 1));
        }
    }

    #[test]
    fn large_surgery_matches_stable_complexes() {
        let m = trefoil_left_model();
        let h = plus(&m, 7, 8);
        for s in -3..=3i64 {
            let a = large_surgery(&m, s, Flavor::Plus, DEFAULT_CUTOFF).unwrap();
            let c = &h[class_of(s, 7) as usize].summary;
            assert_eq!(c.hat_rank, a.hat_rank, "s = {s}");
            let (cp, ap) = (c.plus.as_ref().unwrap(), a.plus.as_ref().unwrap());
            assert_eq!((cp.towers, cp.finite_rank, &cp.torsion_orders), (ap.towers, ap.finite_rank, &ap.torsion_orders));
        }
    }

    #[test]
    fn far_maps_are_quasi_isomorphisms() {
        let m = trefoil_left_model();
        for p in [-2i64, 1, 3] {
            assert!(map_cone_homology(&m, MapKind::V, 2, p, DEFAULT_CUTOFF).unwrap().is_acyclic());
            assert!(map_cone_homology(&m, MapKind::H, -2, p, DEFAULT_CUTOFF).unwrap().is_acyclic());
        }
        assert!(!map_cone_homology(&m, MapKind::V, 0, 1, DEFAULT_CUTOFF).unwrap().is_acyclic());
    }

    #[test]
    fn rejects_bad_parameters() {
        let m = trefoil_left_model();
        assert!(matches!(surgery_cone(&m, 0, Flavor::Hat, 5, 10), Err(ModelError::ZeroFraming)));
        assert!(matches!(surgery_cone(&m, 2, Flavor::Hat, 2, 10), Err(ModelError::RadiusTooSmall { got: 2, required: 3 })));
    }
}
