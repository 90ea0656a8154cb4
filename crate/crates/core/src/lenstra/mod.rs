//! Punctured Lenstra codes over quadratic fields: embedding, shift search, lattice
//! enumeration, the residue map ψ, and brute-force verification.

mod code;
mod embedding;
mod export;

pub use code::{
    build_code, build_code_with_tau, norm_gap_check, norm_gap_check_sampled, residue_symbol,
    verify_code, CodeReport, LenstraCode, NormGapReport, VERIFY_CAP,
};
pub use embedding::{enumerate_omega, find_tau, make_embedding, BoxSpec, LatticeEmbedding};
pub use export::{
    header_line, parse_code, verify_code_text, write_code, CodeFile, CodeHeader, FileReport,
};
