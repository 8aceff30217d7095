pub mod bcb;
pub mod circle;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod matrix;
pub mod pwlmap;
pub mod tol;
pub mod tongues;
pub mod words;
