//! Operator algebra over truncated Fock spaces, the (S, L, H) circuit algebra,
//! primitive photonic components and symbolic circuit expressions.
//!
//! All numeric types are generic over [`Real`]; the aliases at the crate root
//! fix the scalar to `f64`.

pub mod circuit;
pub mod components;
pub mod dense;
pub mod error;
pub mod evaluate;
pub mod model_io;
pub mod operator;
pub mod param;
pub mod render;
pub mod scalar;
pub mod simplify;
pub mod slh;
pub mod space;
pub mod sparse;

pub use circuit::{CircuitExpression, ComponentRef, ParamBinding};
pub use error::{Error, Result};
pub use evaluate::{evaluate, evaluate_with};
pub use model_io::ModelFile;
pub use param::{BinOp, ParamEnv, ParamExpr};
pub use render::render_text;
pub use scalar::Real;
pub use simplify::simplify;
pub use slh::{Residuals, SlhTriplet};
pub use space::{HilbertSpace, Mode};

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type Operator = operator::Operator<f64>;
pub type Slh = SlhTriplet<f64>;
pub type Bindings = evaluate::Bindings<f64>;
pub type SparseMatrix = sparse::SparseMatrix<f64>;
pub type DenseMatrix = dense::DenseMatrix<f64>;
