//! Library surface of the command line crate: the bundle file format and
//! report rendering, shared by the binary and its integration tests.

pub mod bundle;
pub mod reportdoc;
