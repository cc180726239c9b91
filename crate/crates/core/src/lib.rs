//! Cluster categories of infinity-gons with several accumulation points:
//! geometric Hom/Ext calculus, fountain cluster-tilting subcategories,
//! finitely presented modules over them, and cluster characters written
//! as formal Laurent series.

pub mod character;
pub mod error;
pub mod hom;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod representations;
pub mod series;
pub mod surface;
pub mod tilting;
pub mod uniform;

pub use error::{Error, Result};
pub use hom::{composite_nonzero, exchange_triangles, ext1_case, ext1_dim, hom_dim, ExtCase, Triangle};
pub use surface::{arc_kind, crosses, cyclic_between, shift, sigma, Acc, Arc, ArcKind, BoundaryPoint, Regular, Surface};
pub use tilting::{
    ct_vertices_crossing, region_decomposition, validate_ct, Chain, CtVertex, FountainSpec, Side, TailId, Tilting,
    TiltingSpec, ValidationReport, Violation, ViolationKind,
};
pub use uniform::UniformVector;
