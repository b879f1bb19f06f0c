//! Exact homology: bigraded ranks over F2 and module structure over F2[U].

pub mod f2;
pub mod umodule;
pub mod vdivide;

pub use f2::{f2_homology, total_rank, BigradedRanks};
pub use umodule::{fu_module_homology, UModuleSummary};
pub use vdivide::{poincare, v_divide_poly, v_divide_ranks, v_divide_summary, v_multiply_ranks, Poincare};
