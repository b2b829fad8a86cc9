pub mod chain;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod f2linalg;
pub mod grading;
pub mod strands;
pub mod osz;
pub mod phi;
pub mod report;
pub mod groups;
pub mod splitting;
pub mod homology;
pub mod text;
pub mod render;
pub mod verify;
pub mod cli;
