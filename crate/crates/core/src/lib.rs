pub mod compiler;
pub mod dataset;
pub mod engine;
pub mod fol;
pub mod label;
pub mod narsese;
pub mod oracle;

pub use label::Label;
