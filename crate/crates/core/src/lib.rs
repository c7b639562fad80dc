//! Exact and truncated arithmetic for the Carlitz module over A = F_q[θ]:
//! finite fields, polynomials, Laurent and power series, twisted (Ore)
//! series, Carlitz objects, u-expansions of Drinfeld modular forms, the
//! χ_t-twisted Eisenstein series, and a model of the Drinfeld upper half-plane.

pub mod carlitz;
pub mod error;
pub mod field;
pub mod geometry;
mod kernel;
pub mod laurent;
pub mod newton;
pub mod ore;
pub mod perkins;
pub mod poly;
pub mod power;
#[cfg(test)]
mod properties;
pub mod ratfunc;
pub mod ring;
pub mod serial;
pub mod uexp;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FqElem, FqField};
pub use laurent::{LaurentSeries, Var};
pub use ore::TwistedSeries;
pub use poly::{AbsValue, Degree, FqPoly};
pub use power::{OuterVar, PowerSeries};
pub use ratfunc::RatFunc;
pub use ring::CoeffRing;
