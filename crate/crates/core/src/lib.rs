//! Quivers, cyclically ordered quivers (COQs) and their mutation invariants.
//!
//! Everything is generic over an exact integer [`Scalar`]; the `Big*` aliases
//! below fix it to [`num_bigint::BigInt`], which is what the CLI and service use.
//! Vertex indices are 0-based in the API and 1-based in JSON and messages.

pub mod catalog;
pub mod certify;
pub mod companions;
pub mod coq;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod matrix;
pub mod polynomial;
pub mod quiver;
pub mod scalar;
pub mod seed;

pub use coq::{Coq, CyclicOrder, UnipotentCompanion};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use polynomial::IntPolynomial;
pub use quiver::{Quiver, Sign};
pub use scalar::Scalar;
pub use seed::{Seed, VertexColor};

pub type Int = num_bigint::BigInt;

pub type BigQuiver = Quiver<Int>;
pub type BigSeed = Seed<Int>;
pub type BigCoq = Coq<Int>;
pub type BigMatrix = Matrix<Int>;
pub type BigPolynomial = IntPolynomial<Int>;
pub type BigUnipotent = UnipotentCompanion<Int>;

pub type Quiver64 = Quiver<i64>;
pub type Coq64 = Coq<i64>;
pub type Matrix64 = Matrix<i64>;
pub type Polynomial64 = IntPolynomial<i64>;
