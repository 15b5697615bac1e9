//! Exact computations in the cyclotomic Brauer algebra B_{m,n}(delta): the
//! dotted diagram calculus, the wreath group G(m,1,n), multipartition
//! combinatorics, Gram matrices of the relevant bilinear forms, the
//! closed-form semisimplicity criterion, and an independent trace-form
//! oracle with a concordance harness.

pub mod criterion;
pub mod diagram;
pub mod error;
pub mod gram;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod scalar;
pub mod wreath;

pub use error::{Error, Result};
