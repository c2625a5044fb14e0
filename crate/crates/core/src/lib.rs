pub mod autgroup;
pub mod error;
pub mod exactnum;
pub mod isotropy;
pub mod linalg;
pub mod oracle;
pub mod pfister;
pub mod poly;
pub mod qform;
pub mod ruledness;
pub mod suites;
pub mod trace;

pub use error::{Error, Result};
pub use exactnum::{Place, Rational, SquareClass};
pub use poly::{PolyMap, Polynomial};
pub use qform::{Field, FormInvariants, FormSpec, QuadraticForm};
