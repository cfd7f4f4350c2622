pub mod diagram;
pub mod error;
pub mod invariants;
pub mod poly;
pub mod root;
pub mod weyl;
