pub mod answering;
pub mod benchmark;
pub mod corpus;
pub mod error;
mod http;
pub mod evaluation;
pub mod pipeline;
pub mod qu;
pub mod retrieval;
pub mod session;
pub mod source;
pub mod supervision;
pub mod text;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
