//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use tachikawa::{quotient_algebra_from_text, Fp, LocalAlgebra};

pub const ALGEBRAS: &[(&str, u32, &str)] = &[
    ("k[x]/x^4", 2, "x^4"),
    ("ci(2,2)", 3, "x^2, y^2"),
    ("m^2=0,e=2", 2, "x^2, x*y, y^2"),
    ("loewy3,e=3", 2, "x^2, y^2, z^2, x*y*z"),
    ("monomial,dim7", 3, "x^3, x*y, y^4"),
];

pub fn algebra(p: u32, ideal: &str) -> Arc<LocalAlgebra> {
    quotient_algebra_from_text(Fp::new(p).expect("prime"), ideal, None).expect("valid ideal")
}
