//! Library surface of the CLI crate: the JSON document layer and the claim
//! registry, shared by the binary and the acceptance suite.

pub mod docs;
pub mod registry;
