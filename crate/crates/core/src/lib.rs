pub mod amplitude;
pub mod error;
pub mod field;
pub mod functors;
pub mod fuzz;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod resolve;
pub mod sheafcoh;

pub use error::{Error, Result};
pub use field::Fp;
pub use fuzz::{fuzz_instance, fuzz_stream, FuzzConfig, FuzzInstance, FuzzShape};
pub use groebner::{buchberger, normal_form, GroebnerBasis, HilbertData, ModVec};
pub use io::{parse_module, print_module, ModuleFile};
pub use poly::{parse_polynomial, GradedRing, Monomial, Polynomial};
pub use resolve::{FreeModule, GradedMap, PresentedModule};
pub use sheafcoh::{h_dim, Reg, Sheaf};
