pub mod bounds;
pub mod cli;
pub mod clique;
pub mod codes;
pub mod comb;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod solver;

pub use codes::{
    hamming_distance, verify_code, Codeset, LpeccCode, LpeccParams, Mode, QaryCodeword,
    VerificationReport,
};
pub use error::{Error, Result};
