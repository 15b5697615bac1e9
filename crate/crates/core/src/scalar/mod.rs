//! Exact coefficient fields and polynomials in the loop parameters.

mod delta;
mod field;
mod poly_fp;
mod ring;

pub use delta::{DeltaPolynomial, Exponents};
pub use field::{
    cyclotomic_polynomial, euler_phi, format_rational, make_field, parse_rational, prod_one_minus_roots, Field,
    FieldSpec, Scalar,
};
pub use ring::{FieldElem, Ring};
