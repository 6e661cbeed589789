//! Exact algebra: fields, polynomials, Gröbner bases and ideal operations.

pub mod f4;
pub mod field;
pub mod graded;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod minors;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod ring;
pub mod text;

pub use field::{Field, FieldSpec, PrimeField, RationalField};
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use ring::{Ring, RingSpec};
pub use ideal::Ideal;
pub use f4::{default_step_budget, set_default_step_budget, GbOptions, GroebnerBasis};
pub use hilbert::HilbertData;
