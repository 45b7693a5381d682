//! File formats, configuration and charts.

pub mod config;
pub mod edgelist;
pub mod plot;
pub mod results;
