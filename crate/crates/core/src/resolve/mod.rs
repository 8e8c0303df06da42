pub mod derived;
pub mod free;
pub mod linear;
pub mod minimal;

pub use derived::{
    direct_sum, dual, ext_module, hom_module, homology, subquotient, tensor_module, tor_dims,
    tor_module, ModuleComplex, TorDims,
};
pub use free::{FreeModule, GradedMap, PresentedModule};
pub use linear::{linear_resolution, LinearResolution};
pub use minimal::{betti, min_free_resolution, minimal_presentation, BettiTable, Resolution};
