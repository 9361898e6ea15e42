pub mod campaign;
pub mod commands;
pub mod expr;
pub mod report;
pub mod sample;
