pub mod cli;
pub mod corpus;
pub mod duality;
pub mod exterior;
pub mod golden;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod matrix;
pub mod resolution;
pub mod syzscheme;
pub mod textio;
pub mod ring;
