//! Binary shadow codes over odd finite fields, the RS-RM concatenation they are
//! compared against, and the bound formulas used for the rate/distance plots.

pub mod binary;
pub mod bounds;
pub mod concat;
pub mod descriptor;
pub mod field;
pub mod figures;
pub mod poly;
pub mod shadow;
pub mod surd;
pub mod verify;
pub mod weil;

pub use binary::{BinaryCode, BitMatrix};
pub use field::{Field, FieldElement};
pub use poly::Poly;
pub use shadow::{Delta, ShadowCode};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
