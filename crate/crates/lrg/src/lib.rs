//! Linear Ramsey graph toolkit.
//!
//! A linear colouring of the complete graph `K_m` assigns a colour to every
//! edge-length `1..m-1`; the colour classes form the length sets `L_s`.
//! Monochromatic cliques correspond to difference-closed subsets of a length
//! set, which makes verification of Ramsey (clique-bound) properties a search
//! over small integer sets instead of vertex subsets.
//!
//! The crate provides:
//!
//! - the colouring data model, structural predicates and a text file format
//!   ([`colouring`]);
//! - clique-number computation via difference sets, an explicit-graph oracle,
//!   and full verification reports ([`clique`]);
//! - triangle-free template detection ([`template`]);
//! - the compounding construction that joins two prototype colourings into a
//!   larger one, with restricted verification and cyclicity prediction
//!   ([`compound`]);
//! - exhaustive / randomised prototype search and residue-class generators
//!   ([`search`]);
//! - growth-factor and lower-bound arithmetic with catalog reporting
//!   ([`growth`]).

pub mod clique;
pub mod colouring;
pub mod compound;
pub mod growth;
pub mod search;
pub mod template;

mod bitset;

pub use clique::{BoundsVector, CliqueWitness, Method, VerificationReport};
pub use colouring::{ColourId, ExplicitColouredGraph, Length, LengthSet, LinearColouring};
pub use compound::{CompoundRecipe, CompoundResult, Provenance};
pub use template::TfTemplate;

/// Errors produced by the library. Parse errors are kept distinct per failure
/// mode so callers (and the CLI exit-code mapping) can tell usage problems
/// from domain failures.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    // --- colouring file format ---
    #[error("line {line}: expected magic header `lrg 1`")]
    BadMagic { line: usize },
    #[error("line {line}: malformed header, expected `order <m> colours <q>`: {detail}")]
    BadHeader { line: usize, detail: String },
    #[error("colour id {value} out of range 1..={max} (entry for length {length})")]
    ColourOutOfRange { value: i64, max: u32, length: usize },
    #[error("expected {expected} colour entries, found {got}")]
    WrongEntryCount { expected: usize, got: usize },
    #[error("trailing data after the {expected} colour entries")]
    TrailingData { expected: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },

    // --- structural validation ---
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("invalid length set: {0}")]
    InvalidLengthSet(String),
    #[error("period {period} out of range 1..={max}")]
    InvalidPeriod { period: u32, max: u32 },
    #[error("order {order} exceeds the explicit-expansion guard ({guard})")]
    ExpansionGuard { order: u32, guard: u32 },
    #[error("order {order} exceeds the explicit clique-oracle guard ({guard})")]
    OracleGuard { order: u32, guard: u32 },
    #[error("colour {colour} out of range 1..={max}")]
    NoSuchColour { colour: u32, max: u32 },
    #[error("invalid colour permutation: {0}")]
    InvalidPermutation(String),
    #[error("bounds vector has {got} entries, colouring has {expected} colours")]
    BoundsArity { expected: usize, got: usize },
    #[error("invalid bounds vector: {0}")]
    InvalidBounds(String),

    // --- templates ---
    #[error("colour {colour}: template must contain longest edge-length {longest}")]
    TemplateMissingLongest { colour: u32, longest: u32 },
    #[error("colour {colour}: lengths {a} and {b} sum to {sum}, giving a monochromatic triangle")]
    TemplateTriangle { colour: u32, a: u32, b: u32, sum: u32 },
    #[error("cannot compute tail length of an empty length set")]
    EmptyTemplate,

    // --- compounding ---
    #[error("invalid compound recipe: {0}")]
    InvalidRecipe(String),
    #[error("argument out of range: {0}")]
    ArgumentRange(String),

    // --- search ---
    #[error("enumeration of {candidates} candidate colourings exceeds the guard ({guard}); pass force to override")]
    EnumerationGuard { candidates: u128, guard: u128 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid residue-class assignment: {0}")]
    InvalidAssignment(String),

    // --- provenance / io ---
    #[error("invalid provenance record: {0}")]
    InvalidProvenance(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
