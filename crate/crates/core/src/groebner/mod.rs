pub mod buchberger;
pub mod hilbert;
pub mod ideal;
pub mod saturate;
pub mod syzygy;
pub mod vector;

pub use buchberger::{module_groebner, ModuleGb};
pub use hilbert::{hilbert, hilbert_from_series, support_dim, HilbertData, HilbertSeries};
pub use ideal::{buchberger, buchberger_in, normal_form, GroebnerBasis};
pub use saturate::{saturate, saturate_from, saturate_ideal, Saturation};
pub use syzygy::{syzygies, Syzygies};
pub use vector::{ModVec, Term};
