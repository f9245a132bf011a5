//! The cosimplicial standard simplex and its multicosimplicial product,
//! the left Kan extension along the diagonal, homotopy cotensors and
//! mapping complexes for the standard frame, total objects, homotopy
//! limits and the Bousfield-Kan maps.

mod bk;
mod cotensor;
mod kan;
mod tot;

pub use kan::{
    adjunction_bijection, check_kan_extension_of_standard, cosimplicial_standard, left_kan_extend, multi_standard, transpose,
    unit_alpha, unit_transformation, AdjunctionVerdict, KanComparison, KanExtension, KanStandardVerdict,
};
pub use cotensor::{
    cotensor_adjunction, end_adjunction, homotopy_cotensor, mapping_complex, mapping_diagram, Cotensor, CotensorAdjunctionVerdict,
    EndAdjunctionVerdict, MappingComplex, StandardFrame,
};
pub use tot::{tot, tot_iso_diagonal, TotDiagonalVerdict};
pub use bk::{
    bk_data, bk_map, bk_vertices, check_bk_square, check_holimdiag_square, hom_square_commutes, holim, holim_restriction_map,
    power_overcategory, tot_to_holim, BkData, BkNerve, BkSquareDegree, BkSquareVerdict, HolimSquareVerdict,
};
