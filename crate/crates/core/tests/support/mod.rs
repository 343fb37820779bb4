pub mod oracles;
pub mod specs;
