pub mod gen;
pub mod laws;
pub mod oracles;
