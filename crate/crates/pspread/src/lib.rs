//! Partial spread subspace codes over finite fields.
//!
//! The crate builds constant-dimension network codes whose codewords are the
//! row spaces of block-structured matrices over F_q: a partial spread of
//! k-dimensional subspaces of F_q^n attaining the classical lower bound on
//! partial spread sizes, with minimum subspace distance 2k. On top of the
//! construction it provides:
//!
//! - exact finite-field linear algebra (`ffcore`): table-backed F_{p^e},
//!   extensions F_{q^m}, companion-matrix algebras and RREF;
//! - canonical subspaces, the subspace metric and Grassmannian enumeration
//!   (`subspace`);
//! - code construction, message indexing, cardinality and size bounds
//!   (`code`);
//! - the block-localization decoder with an interpolation fast path and an
//!   exhaustive minimum-distance oracle (`decoder`);
//! - operator-channel simulation with seeded, replayable trials (`channel`);
//! - the text formats used by the command-line tools (`io`).

pub mod channel;
pub mod code;
pub mod decoder;
pub mod error;
pub mod ffcore;
pub mod io;
pub mod rng;
pub mod subspace;

pub use channel::{correction_guaranteed, run_trials, ChannelSpec, CollectionPolicy, TrialStats};
pub use code::{
    beutelspacher_lower_bound, is_maximal_partial_spread, is_partial_spread,
    partial_spread_upper_bound, singleton_bound, Code, Codeword, CodewordKind,
};
pub use decoder::{
    decode, decode_2k, decode_2kr, decode_mindist_oracle, decode_mindist_subspace,
    decode_spread_interpolation, decode_spread_oracle, embed_tail, locate_pivot_block,
    project_tail, project_two_blocks, DecodeOutcome, DecodeStatus, Received, SpreadFragment,
};
pub use error::{Error, Result};
pub use ffcore::{algebra_element, ExtElem, FieldCtx, Fq, MatF, Poly};
pub use rng::Rng;
pub use subspace::{
    enumerate_grassmannian, gaussian_binomial, random_disjoint_extension, random_subspace_of,
    Subspace,
};
