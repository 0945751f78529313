pub mod config;
pub mod sim;
pub mod render;
pub mod games;
pub mod curriculum;
pub mod env;
