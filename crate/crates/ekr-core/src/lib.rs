//! Exact analysis of derangement graphs of finite 2-transitive permutation
//! groups: group enumeration, spectra of the derangement class sum,
//! connectivity structure, maximum-coclique search, and the module and
//! distribution identities satisfied by maximum intersecting sets.
//!
//! Everything that certifies a structural claim runs in exact arithmetic;
//! floating point appears only in the numeric eigenvalue scan, which is
//! cross-checked against exact certification.

pub mod bitset;
pub mod catalog;
pub mod cocliques;
pub mod complements;
pub mod corpus;
pub mod dergraph;
pub mod ekr_module;
pub mod field;
pub mod group;
pub mod linalg;
pub mod perm;
pub mod spectra;

pub use group::GroupTable;
pub use perm::Permutation;
