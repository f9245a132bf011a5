//! Finite categories, diagrams of truncated simplicial sets over them,
//! and their limits, colimits, ends and nerves.

mod diagram;
mod end;
mod fincat;
mod limits;
mod nerve;
mod simplices;

pub use fincat::{is_elementary, shapes, FinCat, FinCatJson, Generators, MorId, MorphismJson, ObjId};
pub use diagram::{Diagram, NatTrans};
pub use limits::{colimit, limit, pullback, set_limit, Colimit, Limit, Pullback};
pub use end::{end_hom, end_hom_via_products, ends_agree, natural_maps, End};
pub use nerve::{
    chain_vertex, is_homotopy_left_cofinal_proxy, is_left_cofinal, nerve, nerve_report, nerve_with_chains, overcategory, overcategory_product_iso, terminal_object,
    Chain, CofinalityVerdict, Functor, HomotopyCofinalityVerdict, HomotopyReport, OverReport, Overcategory, ProductOverVerdict,
};
pub use simplices::{category_of_simplices, reconstruct, simplex_diagram, simplex_object, Reconstruction};
