pub mod algebra;
pub mod bracket;
pub mod chart;
pub mod coeff;
pub mod error;
pub mod inner;
pub mod io;
pub mod linalg;
pub mod modified;
pub mod poly;
pub mod presets;
pub mod rational;
pub mod rep;
pub mod solver;

pub use coeff::{Coeff, LinExpr, RingCoeff};
pub use error::{Error, Result};
pub use linalg::{QMatrix, SparseEchelon};
pub use num_traits::{One, Zero};
pub use poly::{Monomial, MultiPoly, RelationSet};
pub use rational::Rational;
