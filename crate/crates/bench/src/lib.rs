//! Fixtures shared by the benchmarks.

use ample_forge_core::functors::{make_bundle, BundleCatalog};
use ample_forge_core::io::parse_module;
use ample_forge_core::{parse_polynomial, GradedRing, Polynomial, PresentedModule};

/// The 2x2 minors of a generic 2x3 matrix of linear forms on P^3: a twisted cubic.
pub fn twisted_cubic_ideal(p: u64) -> Vec<Polynomial> {
    let ring = GradedRing::projective(p, 3).expect("prime");
    let names = ring.default_names();
    ["x*z - y^2", "x*w - y*z", "y*w - z^2"]
        .iter()
        .map(|g| parse_polynomial(ring, &names, g).expect("valid"))
        .collect()
}

/// Cyclic 4-roots, homogenized with a fifth variable.
pub fn cyclic4(p: u64) -> Vec<Polynomial> {
    let ring = GradedRing::projective(p, 4).expect("prime");
    let names: Vec<String> = ["a", "b", "c", "d", "h"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    [
        "a + b + c + d",
        "a*b + b*c + c*d + d*a",
        "a*b*c + b*c*d + c*d*a + d*a*b",
        "a*b*c*d - h^4",
    ]
    .iter()
    .map(|g| parse_polynomial(ring, &names, g).expect("valid"))
    .collect()
}

pub fn tangent(p: u64, n: usize) -> PresentedModule {
    make_bundle(
        BundleCatalog::Tangent,
        GradedRing::projective(p, n).expect("prime"),
    )
}

/// A rank two cokernel on P^2 with relations in two degrees.
pub fn mixed_cokernel() -> PresentedModule {
    parse_module("ring p=3 n=2 vars=x,y,z\ngens [0, 1]\nrels [[x^2, y*z, z^3], [x, y, 0]]\n")
        .expect("valid")
        .module
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(twisted_cubic_ideal(2).len(), 3);
        assert_eq!(cyclic4(7).len(), 4);
        assert_eq!(tangent(2, 2).generators().rank(), 3);
        assert_eq!(mixed_cokernel().relation_twists().len(), 3);
    }
}
