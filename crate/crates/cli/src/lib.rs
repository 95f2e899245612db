pub mod commands;
pub mod spec;
