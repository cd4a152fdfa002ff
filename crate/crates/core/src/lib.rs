pub mod diagram;
pub mod cli;
pub mod error;
pub mod jones;
pub mod ohtsuki;
pub mod oracle;
pub mod qarith;

pub use error::{Error, Result};
