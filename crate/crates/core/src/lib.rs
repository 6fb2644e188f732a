pub mod linalg;
pub mod models;
pub mod checks;
pub mod cli;
