//! Large surgeries and the integer surgery mapping cone on model complexes.

pub mod cone;
pub mod model;
pub mod stable;

pub use cone::{class_of, map_cone_homology, surgery_cone, surgery_homology, ClassHomology, ConeClass, SurgeryCone};
pub use model::{bundled_model, load_model, staircase_model, trefoil_left_model, trefoil_right_model, unknot_model, ModelArrow, ModelComplex};
pub use stable::{large_surgery, stable_complex, Flavor, HomologySummary, MapKind, Piece, PieceKind, PlusSummary, StableComplex, StableElement, DEFAULT_CUTOFF};
